"""JSON persistence for instances, congruence systems and reports."""

from __future__ import annotations

import hashlib
import json
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any, Optional, Union

import jsonschema

from .exactnum import as_phase, format_phase
from .lhv import CongruenceSystem, Variable, parse_text, var_name
from .paradox import InstanceError, ParadoxInstance, instance_from_composites

SCHEMA_VERSION = 1


class FileFormatError(ValueError):
    pass


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    text = resources.files("ghzparadox").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def validate(doc: Any, name: str) -> None:
    """Raise FileFormatError naming the offending field."""
    validator = jsonschema.Draft202012Validator(load_schema(name))
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        where = "/".join(str(p) for p in err.absolute_path) or "<root>"
        raise FileFormatError(f"field {where}: {err.message}")


def digest(doc: Any) -> str:
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()
    return "sha256:" + hashlib.sha256(blob).hexdigest()


# ---------------------------------------------------------------- instances


def instance_to_dict(p: ParadoxInstance) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "ghz-paradox-instance",
        "parameters": {
            "N": p.n_parties,
            "M": p.n_settings,
            "d": p.dim_factor,
            "D": p.dim,
            "pair": [format_phase(x) for x in p.pair],
        },
        "settings": [[format_phase(x) for x in s] for s in p.settings],
        "composites": [
            {
                "label": c.label,
                "group": c.group,
                "phases": [format_phase(x) for x in c.phases],
                "gamma": c.gamma,
            }
            for c in p.composites
        ],
        "t_sequence": None if p.t_sequence is None else list(p.t_sequence),
        "provenance": {"generator": p.generator, "flags": dict(p.flags)},
    }


def instance_from_dict(doc: dict) -> ParadoxInstance:
    """Validate, rebuild and re-verify every gamma."""
    validate(doc, "instance")
    par = doc["parameters"]
    if par["D"] != par["M"] * par["d"]:
        raise FileFormatError(f"field parameters/D: D={par['D']} violates D = M*d = {par['M'] * par['d']}")
    n = par["N"]
    rows = []
    for i, c in enumerate(doc["composites"]):
        if len(c["phases"]) != n:
            raise FileFormatError(f"field composites/{i}/phases: expected {n} phases, got {len(c['phases'])}")
        rows.append((c["label"], c["group"], [as_phase(x) for x in c["phases"]]))
    try:
        p = instance_from_composites(
            n,
            par["M"],
            par["d"],
            rows,
            generator=doc["provenance"]["generator"],
            pair=tuple(as_phase(x) for x in par["pair"]),
            t_seq=doc.get("t_sequence"),
            flags=doc["provenance"].get("flags", {}),
        )
    except InstanceError as exc:
        raise FileFormatError(f"field composites: {exc}") from exc
    for i, (c, stored) in enumerate(zip(p.composites, doc["composites"])):
        if c.gamma != stored["gamma"]:
            raise FileFormatError(
                f"field composites/{i}/gamma: stored {stored['gamma']}, recomputed {c.gamma}"
            )
    settings = [[format_phase(x) for x in s] for s in p.settings]
    if [sorted(s, key=as_phase) for s in doc["settings"]] != settings:
        raise FileFormatError("field settings: does not match the phases used by the composites")
    return p


# ------------------------------------------------------------------ systems


def system_to_dict(s: CongruenceSystem) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "congruence-system",
        "modulus": s.modulus,
        "variables": [[p, lab] for p, lab in s.variables],
        "equations": [
            {"label": lab, "coeffs": list(row), "rhs": r}
            for lab, row, r in zip(s.labels, s.coeffs, s.rhs)
        ],
    }


def system_from_dict(doc: dict) -> CongruenceSystem:
    validate(doc, "system")
    n = len(doc["variables"])
    for i, eq in enumerate(doc["equations"]):
        if len(eq["coeffs"]) != n:
            raise FileFormatError(f"field equations/{i}/coeffs: expected {n} entries")
    eqs = doc["equations"]
    return CongruenceSystem(
        doc["modulus"],
        tuple((p, lab) for p, lab in doc["variables"]),
        tuple(tuple(eq["coeffs"]) for eq in eqs),
        tuple(eq["rhs"] for eq in eqs),
        tuple(eq.get("label", f"E{i + 1}") for i, eq in enumerate(eqs)),
    )


def witness_to_dict(w: Optional[dict[Variable, int]]) -> Optional[dict[str, int]]:
    return None if w is None else {var_name(v): int(x) for v, x in w.items()}


# -------------------------------------------------------------------- files


def read_json(path: Union[str, Path]) -> Any:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def load_instance(path: Union[str, Path]) -> ParadoxInstance:
    return instance_from_dict(read_json(path))


def save_instance(p: ParadoxInstance, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(instance_to_dict(p), indent=2) + "\n")


def load_any(path: Union[str, Path]) -> Union[ParadoxInstance, CongruenceSystem]:
    """Instance JSON, system JSON, or the plain-text equation format."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        doc = read_json(path)
        kind = doc.get("kind") if isinstance(doc, dict) else None
        if kind == "ghz-paradox-instance":
            return instance_from_dict(doc)
        if kind == "congruence-system":
            return system_from_dict(doc)
        raise FileFormatError(f"field kind: unrecognised value {kind!r}")
    return parse_text(text)
