""" d×d matrix groups over F_q: GL, SL, PGL and PSL.

    Matrices are row-major tuples of field-element encodings. For the projective families
    an element is the canonical representative of its scalar class: the least matrix, by
    row-major integer encoding, among {λM : λ ∈ μ_d(F_q)} for PSL and {λM : λ ∈ F_q^×} for
    PGL. Elements are enumerated in increasing row-major order.
"""

from __future__ import annotations
from enum import IntEnum, auto
from itertools import product
from math import gcd
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple
import logging

from .finite_field import FiniteField, FieldError, field_from_spec
from .finite_group import (FiniteGroup, GroupKind, GroupError, InvalidElement, InvalidGroupSpec,
                           EnumerationBoundExceeded)

log = logging.getLogger("groups.matrix_groups")

# enumeration scans all q^(d*d) matrices and refuses beyond this many
MAX_CANDIDATES = 10 ** 8

Matrix = Tuple[int, ...]
Vector = Tuple[int, ...]


class MatrixError(GroupError):
    pass


class SingularMatrix(MatrixError):
    pass


class WrongDeterminant(MatrixError):
    pass


class MatrixFamily(IntEnum):
    GL = auto()
    SL = auto()
    PGL = auto()
    PSL = auto()

    def special(self) -> bool:
        return self in (MatrixFamily.SL, MatrixFamily.PSL)

    def projective(self) -> bool:
        return self in (MatrixFamily.PGL, MatrixFamily.PSL)


def mat_identity(field: FiniteField, d: int) -> Matrix:
    return tuple(1 if i == j else 0 for i in range(d) for j in range(d))


def mat_mul(field: FiniteField, d: int, a: Matrix, b: Matrix) -> Matrix:
    add, mul = field.add, field.mul
    out = []
    for i in range(d):
        row = a[i * d:(i + 1) * d]
        for j in range(d):
            acc = 0
            for k in range(d):
                x = row[k]
                if x:
                    y = b[k * d + j]
                    if y:
                        acc = add(acc, mul(x, y))
            out.append(acc)
    return tuple(out)


def mat_scale(field: FiniteField, lam: int, a: Matrix) -> Matrix:
    return tuple(field.mul(lam, x) for x in a)


def mat_apply(field: FiniteField, d: int, a: Matrix, v: Sequence[int]) -> Vector:
    out = []
    for i in range(d):
        acc = 0
        for k in range(d):
            acc = field.add(acc, field.mul(a[i * d + k], v[k]))
        out.append(acc)
    return tuple(out)


def _eliminate(field: FiniteField, d: int, a: Matrix, with_inverse: bool) -> Tuple[int, Optional[Matrix]]:
    """ Gauss-Jordan elimination returning (determinant, inverse or None). """
    rows = [list(a[i * d:(i + 1) * d]) + ([1 if i == j else 0 for j in range(d)] if with_inverse else [])
            for i in range(d)]
    det = 1
    for col in range(d):
        pivot = next((r for r in range(col, d) if rows[r][col]), None)
        if pivot is None:
            return 0, None
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = field.neg(det)
        pv = rows[col][col]
        det = field.mul(det, pv)
        inv_pv = field.inv(pv)
        rows[col] = [field.mul(inv_pv, x) for x in rows[col]]
        for r in range(d):
            if r != col and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [field.sub(x, field.mul(factor, y)) for x, y in zip(rows[r], rows[col])]
    if not with_inverse:
        return det, None
    return det, tuple(x for row in rows for x in row[d:])


def mat_det(field: FiniteField, d: int, a: Matrix) -> int:
    return _eliminate(field, d, a, with_inverse=False)[0]


def mat_inverse(field: FiniteField, d: int, a: Matrix) -> Matrix:
    det, inv = _eliminate(field, d, a, with_inverse=True)
    if inv is None:
        raise SingularMatrix(f"Matrix {list(a)} is singular")
    return inv


def normalize_point(field: FiniteField, v: Sequence[int]) -> Vector:
    """ Scales a nonzero vector so that its first nonzero coordinate is 1. """
    lead = next((x for x in v if x), None)
    if lead is None:
        raise MatrixError("The zero vector is not a projective point")
    if lead == 1:
        return tuple(v)
    inv = field.inv(lead)
    return tuple(field.mul(inv, x) for x in v)


def projective_points(field: FiniteField, d: int) -> List[Vector]:
    """ All points of P^{d-1}(F_q) as normalized vectors, in increasing coordinate order. """
    points = []
    for v in product(range(field.q), repeat=d):
        lead = next((x for x in v if x), None)
        if lead == 1:
            points.append(tuple(v))
    return points


def matrix_group_order(family: MatrixFamily, d: int, q: int) -> int:
    gl = 1
    for i in range(d):
        gl *= q ** d - q ** i
    if family == MatrixFamily.GL:
        return gl
    if family in (MatrixFamily.SL, MatrixFamily.PGL):
        return gl // (q - 1)
    return gl // (q - 1) // gcd(d, q - 1)


class MatrixGroup(FiniteGroup):
    """ One of GL_d(F_q), SL_d(F_q), PGL_d(F_q), PSL_d(F_q). """
    kind = GroupKind.matrix
    __slots__ = ['family', 'd', 'field', '_scalars']

    def __init__(self, family: MatrixFamily, d: int, field: FiniteField):
        super().__init__()
        if d < 1:
            raise InvalidGroupSpec(f"Matrix dimension must be positive, got {d}")
        self.family = family
        self.d = d
        self.field = field
        if family == MatrixFamily.PSL:
            self._scalars = field.roots_of_unity(d)
        elif family == MatrixFamily.PGL:
            self._scalars = list(field.nonzero())
        else:
            self._scalars = [1]

    @property
    def order(self) -> int:
        return matrix_group_order(self.family, self.d, self.field.q)

    @property
    def identity(self) -> Matrix:
        return mat_identity(self.field, self.d)

    @property
    def scalars(self) -> List[int]:
        """ The scalars identified with 1 in this family. """
        return list(self._scalars)

    def canonical(self, m: Matrix) -> Matrix:
        if len(self._scalars) == 1:
            return m
        return min(mat_scale(self.field, lam, m) for lam in self._scalars)

    def multiply(self, a: Matrix, b: Matrix) -> Matrix:
        return self.canonical(mat_mul(self.field, self.d, a, b))

    def inverse(self, a: Matrix) -> Matrix:
        return self.canonical(mat_inverse(self.field, self.d, a))

    def determinant(self, a: Matrix) -> int:
        return mat_det(self.field, self.d, a)

    def validate(self, g: Any) -> Matrix:
        return self.element(g)

    def element(self, entries: Any) -> Matrix:
        """ Canonical element from entries given row-major, flat or nested, as integer
            encodings or coefficient arrays.
        """
        d = self.d
        if isinstance(entries, (list, tuple)) and len(entries) == d \
                and all(isinstance(r, (list, tuple)) and len(r) == d for r in entries):
            flat = [x for row in entries for x in row]
        else:
            flat = list(entries) if isinstance(entries, (list, tuple)) else None
        if flat is None or len(flat) != d * d:
            raise InvalidElement(f"Expected a {d}x{d} matrix, got {entries!r}")
        try:
            m = tuple(self.field.validate(x) for x in flat)
        except FieldError as err:
            raise InvalidElement(str(err))
        det = self.determinant(m)
        if det == 0:
            raise SingularMatrix(f"Matrix {list(m)} is singular")
        if self.family.special() and det != 1:
            raise WrongDeterminant(f"Matrix {list(m)} has determinant {det}, expected 1")
        return self.canonical(m)

    def encode(self, g: Matrix) -> Any:
        d = self.d
        return [[self.field.encode(g[i * d + j]) for j in range(d)] for i in range(d)]

    def act(self, g: Matrix, v: Sequence[int]) -> Vector:
        """ Action on projective points: matrix times vector, then normalization. """
        return normalize_point(self.field, mat_apply(self.field, self.d, g, v))

    def fixes_last_line(self, g: Matrix) -> bool:
        """ Membership in the stabilizer of the line F_q·e_d: the last column of g is a
            multiple of e_d.
        """
        d = self.d
        return all(g[i * d + d - 1] == 0 for i in range(d - 1))

    def unipotent(self, alpha: int) -> Matrix:
        """ [[1, alpha], [0, 1]] for d = 2 """
        if self.d != 2:
            raise MatrixError("unipotent() is defined for 2x2 matrices")
        return self.validate((1, alpha, 0, 1))

    def diagonal(self, *entries: int) -> Matrix:
        d = self.d
        return self.validate(tuple(entries[i] if i == j else 0 for i in range(d) for j in range(d)))

    def _generate(self) -> Iterator[Matrix]:
        d, field = self.d, self.field
        candidates = field.q ** (d * d)
        if candidates > MAX_CANDIDATES:
            raise EnumerationBoundExceeded(f"{self.name} needs {candidates} candidate matrices to enumerate")
        log.debug(f"enumerating {self.name} from {candidates} candidate matrices")
        seen = set()
        special = self.family.special()
        for m in product(range(field.q), repeat=d * d):
            det = mat_det(field, d, m)
            if det == 0 or special and det != 1:
                continue
            c = self.canonical(m)
            seen.add(c)
        return iter(sorted(seen))

    def spec(self) -> Dict[str, Any]:
        return {"kind": "matrix", "family": self.family.name, "d": self.d, "q": self.field.spec()}


def matrix_group_element(family: MatrixFamily, d: int, field: FiniteField, entries: Any) -> Matrix:
    return MatrixGroup(family, d, field).element(entries)


def projective_action(group: MatrixGroup, g: Matrix, v: Sequence[int]) -> Vector:
    if len(v) != group.d:
        raise MatrixError(f"Point {list(v)} does not have {group.d} coordinates")
    return group.act(g, v)


def make_matrix_group(family: str, d: int, q: Any) -> MatrixGroup:
    try:
        fam = MatrixFamily[family]
    except KeyError:
        raise InvalidGroupSpec(f"Unknown matrix family {family!r}, expected one of {[f.name for f in MatrixFamily]}")
    return MatrixGroup(fam, d, field_from_spec(q))
