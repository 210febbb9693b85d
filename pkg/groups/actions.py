""" Group actions on finite sets: the natural action of permutation-type groups, the
    induced action on ordered pairs of distinct points, the action of matrix groups on the
    projective space, and the left-multiplication action on the cosets of a subgroup.

    Every action has a JSON-compatible description (its `spec`) which is embedded in
    sequence documents as the `claim` of an action mixing sequence.
"""

from __future__ import annotations
from abc import ABC, abstractmethod
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple
import logging

from .finite_field import FieldError
from .finite_group import DihedralGroup, Element, FiniteGroup, GroupError
from .matrix_groups import MatrixGroup, normalize_point, projective_points
from .permutation_groups import SignedPermutationGroup, _PermutationFamily
from .subgroups import CosetIndex, left_cosets, orbit, subgroup_closure

log = logging.getLogger("groups.actions")

Point = Any


class ActionError(GroupError):
    pass


class PointOutsideAction(ActionError):
    pass


class GroupAction(ABC):
    """ A left action of `group` on a finite set of hashable points. """
    action_id: str

    def __init__(self, group: FiniteGroup):
        self.group = group
        self._points: Optional[List[Point]] = None
        self._point_set: Optional[frozenset] = None

    @abstractmethod
    def size(self) -> int:
        ...

    @abstractmethod
    def act(self, g: Element, x: Point) -> Point:
        ...

    @abstractmethod
    def _generate_points(self) -> List[Point]:
        ...

    def points(self) -> List[Point]:
        if self._points is None:
            self._points = self._generate_points()
            assert len(self._points) == self.size()
        return self._points

    def validate_point(self, x: Point) -> Point:
        if self._point_set is None:
            self._point_set = frozenset(self.points())
        if x not in self._point_set:
            raise PointOutsideAction(f"{x!r} is not a point of the {self.action_id} action of {self.group.name}")
        return x

    def encode_point(self, x: Point) -> Any:
        return x

    def decode_point(self, obj: Any) -> Point:
        return self.validate_point(obj)

    def spec(self) -> Dict[str, Any]:
        return {"action": self.action_id}

    def orbit(self, x: Point) -> List[Point]:
        return orbit(self.group.generators(), self.act, x)

    def is_transitive(self) -> bool:
        return len(self.orbit(self.points()[0])) == self.size()

    def is_2transitive(self) -> bool:
        """ Transitivity on ordered pairs of distinct points, by a single orbit computation. """
        n = self.size()
        if n < 2:
            return n == 1
        if not self.is_transitive():
            return False
        pts = self.points()
        pairs = PairAction(self)
        return len(pairs.orbit((pts[0], pts[1]))) == n * (n - 1)

    def stabilizer(self, x: Point) -> List[Element]:
        return [g for g in self.group.enumerate() if self.act(g, x) == x]

    def __repr__(self) -> str:
        return f"{self.action_id} action of {self.group.name}"


class NaturalAction(GroupAction):
    """ Permutation-type groups on 1..n, signed permutations on the signed points ±1..±n,
        dihedral groups on the vertices 0..n-1 of the n-gon.
    """
    action_id = "natural"

    def __init__(self, group: FiniteGroup):
        super().__init__(group)
        if not isinstance(group, (_PermutationFamily, SignedPermutationGroup, DihedralGroup)):
            raise ActionError(f"{group.name} has no natural action")

    def size(self) -> int:
        if isinstance(self.group, SignedPermutationGroup):
            return 2 * self.group.n
        return self.group.n

    def act(self, g: Element, x: int) -> int:
        group = self.group
        if isinstance(group, SignedPermutationGroup):
            return group.act(g, x)
        if isinstance(group, DihedralGroup):
            rot, ref = g
            return (rot - x if ref else rot + x) % group.n
        return g[x - 1]

    def _generate_points(self) -> List[int]:
        group = self.group
        if isinstance(group, SignedPermutationGroup):
            return [i for k in range(1, group.n + 1) for i in (k, -k)]
        if isinstance(group, DihedralGroup):
            return list(range(group.n))
        return list(range(1, group.n + 1))

    def validate_point(self, x: Point) -> int:
        if isinstance(x, bool) or not isinstance(x, int):
            raise PointOutsideAction(f"Natural action points are integers, got {x!r}")
        return super().validate_point(x)


class PairAction(GroupAction):
    """ The diagonal action on ordered pairs of distinct points of a base action. """
    action_id = "pairs"

    def __init__(self, base: GroupAction):
        super().__init__(base.group)
        self.base = base

    def size(self) -> int:
        n = self.base.size()
        return n * (n - 1)

    def act(self, g: Element, x: Tuple[Point, Point]) -> Tuple[Point, Point]:
        return (self.base.act(g, x[0]), self.base.act(g, x[1]))

    def _generate_points(self) -> List[Tuple[Point, Point]]:
        pts = self.base.points()
        return [(a, b) for a in pts for b in pts if a != b]

    def validate_point(self, x: Point) -> Tuple[Point, Point]:
        if not isinstance(x, (list, tuple)) or len(x) != 2:
            raise PointOutsideAction(f"A point of the pairs action is a pair, got {x!r}")
        a, b = self.base.validate_point(x[0]), self.base.validate_point(x[1])
        if a == b:
            raise PointOutsideAction(f"Pair {x!r} does not consist of distinct points")
        return (a, b)

    def encode_point(self, x: Tuple[Point, Point]) -> Any:
        return [self.base.encode_point(x[0]), self.base.encode_point(x[1])]

    def decode_point(self, obj: Any) -> Tuple[Point, Point]:
        if not isinstance(obj, (list, tuple)) or len(obj) != 2:
            raise PointOutsideAction(f"A point of the pairs action is a pair, got {obj!r}")
        return self.validate_point((self.base.decode_point(obj[0]), self.base.decode_point(obj[1])))

    def spec(self) -> Dict[str, Any]:
        return {"action": self.action_id, "of": self.base.spec()}


class ProjectiveAction(GroupAction):
    """ A matrix group acting on P^{d-1}(F_q); points are normalized coordinate tuples. """
    action_id = "projective-line"

    def __init__(self, group: FiniteGroup):
        super().__init__(group)
        if not isinstance(group, MatrixGroup):
            raise ActionError(f"{group.name} is not a matrix group")
        self.matrix_group: MatrixGroup = group

    def size(self) -> int:
        q, d = self.matrix_group.field.q, self.matrix_group.d
        return (q ** d - 1) // (q - 1)

    def act(self, g: Element, x: Tuple[int, ...]) -> Tuple[int, ...]:
        return self.matrix_group.act(g, x)

    def _generate_points(self) -> List[Tuple[int, ...]]:
        return projective_points(self.matrix_group.field, self.matrix_group.d)

    def validate_point(self, x: Point) -> Tuple[int, ...]:
        field, d = self.matrix_group.field, self.matrix_group.d
        if not isinstance(x, (list, tuple)) or len(x) != d:
            raise PointOutsideAction(f"Projective point must have {d} coordinates, got {x!r}")
        try:
            coords = tuple(field.validate(c) for c in x)
            point = normalize_point(field, coords)
        except (GroupError, FieldError) as err:
            raise PointOutsideAction(f"{x!r} is not a projective point: {err}")
        if point != coords:
            raise PointOutsideAction(f"Projective point {x!r} is not normalized, expected {list(point)}")
        return point

    def encode_point(self, x: Tuple[int, ...]) -> Any:
        return [self.matrix_group.field.encode(c) for c in x]


class CosetAction(GroupAction):
    """ Left multiplication on the left cosets gH. Coset 0 is H itself; points are coset
        indices, and they are written to documents as a representative element.
    """
    action_id = "cosets"

    def __init__(self, group: FiniteGroup, subgroup: Iterable[Element]):
        super().__init__(group)
        self.subgroup = frozenset(subgroup)
        self.cosets: CosetIndex = left_cosets(group, self.subgroup)
        log.debug(f"coset action of {group.name} on {len(self.cosets)} cosets")

    @staticmethod
    def from_generators(group: FiniteGroup, generators: Iterable[Element]) -> CosetAction:
        return CosetAction(group, subgroup_closure(group, generators))

    def size(self) -> int:
        return len(self.cosets)

    def act(self, g: Element, x: int) -> int:
        return self.cosets.coset_of[self.group.multiply(g, self.cosets.representatives[x])]

    def _generate_points(self) -> List[int]:
        return list(range(len(self.cosets)))

    def validate_point(self, x: Point) -> int:
        if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < len(self.cosets):
            raise PointOutsideAction(f"{x!r} is not a coset index below {len(self.cosets)}")
        return x

    def coset_of(self, g: Element) -> int:
        return self.cosets.coset_of[g]

    def encode_point(self, x: int) -> Any:
        return self.group.encode(self.cosets.representatives[x])

    def decode_point(self, obj: Any) -> int:
        return self.cosets.coset_of[self.group.decode(obj)]

    def spec(self) -> Dict[str, Any]:
        members = sorted(self.subgroup, key=self.group.index_of)
        return {"action": self.action_id, "subgroup": [self.group.encode(h) for h in members]}


def default_point_action(group: FiniteGroup) -> GroupAction:
    if isinstance(group, MatrixGroup):
        return ProjectiveAction(group)
    return NaturalAction(group)


def action_from_spec(group: FiniteGroup, spec: Any) -> GroupAction:
    """ Parses an action description: the string "natural", "pairs", "projective-line",
        or a mapping such as {"action": "cosets", "subgroup": [...]} or
        {"action": "cosets", "generators": [...]}.
    """
    if isinstance(spec, str):
        spec = {"action": spec}
    if not isinstance(spec, Mapping) or "action" not in spec:
        raise ActionError(f"Cannot parse action description {spec!r}")
    kind = spec["action"]
    if kind == "natural":
        return NaturalAction(group)
    if kind == "projective-line":
        return ProjectiveAction(group)
    if kind == "pairs":
        base = action_from_spec(group, spec["of"]) if "of" in spec else default_point_action(group)
        return PairAction(base)
    if kind == "cosets":
        if "subgroup" in spec:
            return CosetAction(group, [group.decode(h) for h in spec["subgroup"]])
        if "generators" in spec:
            return CosetAction.from_generators(group, [group.decode(h) for h in spec["generators"]])
        raise ActionError("A cosets action needs a 'subgroup' or 'generators' list")
    raise ActionError(f"Unknown action {kind!r}")
