""" Parsing and writing group specification documents, e.g.
    {"kind": "dihedral", "n": 12} or
    {"kind": "matrix", "family": "PSL", "d": 2, "q": {"p": 2, "e": 2, "modulus": [1, 1, 1]}}.
"""

from __future__ import annotations
from pathlib import Path
from typing import Any, Callable, Dict, Mapping
import json
import logging

from .finite_field import FieldError
from .finite_group import CayleyGroup, CyclicGroup, DihedralGroup, FiniteGroup, InvalidGroupSpec, ProductGroup
from .matrix_groups import make_matrix_group
from .permutation_groups import AlternatingGroup, PermutationGroup, SignedPermutationGroup, SymmetricGroup

log = logging.getLogger("groups.group_spec")


def _require(spec: Mapping[str, Any], key: str) -> Any:
    if key not in spec:
        raise InvalidGroupSpec(f"Group specification of kind {spec.get('kind')!r} lacks {key!r}")
    return spec[key]


def _int(spec: Mapping[str, Any], key: str) -> int:
    value = _require(spec, key)
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidGroupSpec(f"{key!r} must be an integer, got {value!r}")
    return value


def _matrix(spec: Mapping[str, Any]) -> FiniteGroup:
    try:
        return make_matrix_group(str(_require(spec, "family")), _int(spec, "d"), _require(spec, "q"))
    except FieldError as err:
        raise InvalidGroupSpec(f"Bad field in matrix group specification: {err}")


def _cayley(spec: Mapping[str, Any]) -> FiniteGroup:
    group = CayleyGroup(_require(spec, "table"))
    if "order" in spec and spec["order"] != group.order:
        raise InvalidGroupSpec(f"Declared order {spec['order']} but the table has {group.order} rows")
    return group


_PARSERS: Dict[str, Callable[[Mapping[str, Any]], FiniteGroup]] = {
    "cyclic": lambda s: CyclicGroup(_int(s, "n")),
    "dihedral": lambda s: DihedralGroup(_int(s, "n")),
    "symmetric": lambda s: SymmetricGroup(_int(s, "n")),
    "alternating": lambda s: AlternatingGroup(_int(s, "n")),
    "signed_permutation": lambda s: SignedPermutationGroup(_int(s, "n"), bool(s.get("even_only", False))),
    "permutation": lambda s: PermutationGroup(_int(s, "n"), _require(s, "generators")),
    "matrix": _matrix,
    "cayley": _cayley,
    "product": lambda s: ProductGroup([group_from_spec(f) for f in _require(s, "factors")]),
}


def group_from_spec(spec: Any) -> FiniteGroup:
    if not isinstance(spec, Mapping) or "kind" not in spec:
        raise InvalidGroupSpec(f"A group specification must be an object with a 'kind', got {spec!r}")
    parser = _PARSERS.get(spec["kind"])
    if parser is None:
        raise InvalidGroupSpec(f"Unknown group kind {spec['kind']!r}, expected one of {sorted(_PARSERS)}")
    return parser(spec)


def load_group(path: Path) -> FiniteGroup:
    with open(path, 'r', encoding='utf-8') as spec_file:
        try:
            spec = json.load(spec_file)
        except json.JSONDecodeError as err:
            raise InvalidGroupSpec(f"{path} is not valid JSON: {err}")
    group = group_from_spec(spec)
    log.debug(f"loaded {group.name} from {path}")
    return group


def save_group(group: FiniteGroup, path: Path):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as spec_file:
        json.dump(group.spec(), spec_file)
