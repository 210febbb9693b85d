""" Explicit matrix representations of enumerable groups in extended precision.

    A representation stores one `mpmath.matrix` per group element. All arithmetic happens
    at the numeric precision of `mixing.probability`, and representations are required to
    be unitary, which every representation of a finite group can be made.
"""

from __future__ import annotations
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Sequence, Tuple
import logging

import mpmath
import numpy as np

from groups import DihedralGroup, Element, FiniteGroup, SymmetricGroup, group_from_spec, perm_parity
from mixing import DocumentError, numeric_context, read_json, write_json

log = logging.getLogger("reps.matrix_rep")

# eigenvalue and homomorphism checks
EIGEN_TOLERANCE = 1e-20

# groups up to this order have their homomorphism property checked on every pair
EXHAUSTIVE_PAIRS_ORDER = 64
SAMPLED_PAIRS = 2000


class RepError(Exception):
    pass


class NotARepresentation(RepError):
    pass


class MatrixRep:
    """ A unitary representation ρ: G -> U(d), given by its image of every element. """
    __slots__ = ['group', 'dim', '_images', 'tolerance']

    @numeric_context()
    def __init__(self, group: FiniteGroup, images: Mapping[Element, mpmath.matrix],
                 tolerance: float = EIGEN_TOLERANCE):
        self.group = group
        self.tolerance = tolerance
        self._images: Dict[Element, mpmath.matrix] = dict(images)
        missing = [g for g in group.enumerate() if g not in self._images]
        if missing:
            raise NotARepresentation(f"No image given for {len(missing)} elements, e.g. {group.encode(missing[0])}")
        self.dim = self._images[group.identity].rows
        self._check()

    def _close(self, a: mpmath.matrix, b: mpmath.matrix) -> bool:
        return mpmath.mnorm(a - b, 'f') < self.tolerance

    def _check(self):
        group, d = self.group, self.dim
        eye = mpmath.eye(d)
        if not self._close(self._images[group.identity], eye):
            raise NotARepresentation("The identity is not sent to the identity matrix")
        elements = group.enumerate()
        for g in elements:
            m = self._images[g]
            if m.rows != d or m.cols != d:
                raise NotARepresentation(f"Image of {group.encode(g)} is not {d}x{d}")
            if not self._close(m * m.H, eye):
                raise NotARepresentation(f"Image of {group.encode(g)} is not unitary")
        if group.order <= EXHAUSTIVE_PAIRS_ORDER:
            pairs: Iterable[Tuple[Element, Element]] = ((a, b) for a in elements for b in elements)
        else:
            rng = np.random.default_rng(0)
            picks = rng.integers(0, len(elements), size=(SAMPLED_PAIRS, 2))
            pairs = ((elements[i], elements[j]) for i, j in picks)
        for a, b in pairs:
            if not self._close(self._images[a] * self._images[b], self._images[group.multiply(a, b)]):
                raise NotARepresentation(f"ρ({group.encode(a)})ρ({group.encode(b)}) differs from the image "
                                         f"of their product")

    @staticmethod
    @numeric_context()
    def from_generators(group: FiniteGroup, images: Mapping[Element, mpmath.matrix],
                        tolerance: float = EIGEN_TOLERANCE) -> MatrixRep:
        """ Extends generator images to the whole group by walking its Cayley graph. """
        gens = list(images)
        d = images[gens[0]].rows
        rho = {group.identity: mpmath.eye(d)}
        frontier = [group.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = group.multiply(x, s)
                    if y not in rho:
                        rho[y] = rho[x] * images[s]
                        nxt.append(y)
            frontier = nxt
        if len(rho) != group.order:
            raise NotARepresentation(f"The given elements generate only {len(rho)} of {group.order} elements")
        return MatrixRep(group, rho, tolerance)

    def __call__(self, g: Element) -> mpmath.matrix:
        return self._images[g]

    @numeric_context()
    def is_real(self) -> bool:
        return all(abs(mpmath.im(m[i, j])) < self.tolerance
                   for m in self._images.values() for i in range(m.rows) for j in range(m.cols))

    @numeric_context()
    def is_trivial(self) -> bool:
        eye = mpmath.eye(self.dim)
        return all(self._close(m, eye) for m in self._images.values())

    @numeric_context()
    def step_matrix(self, g: Element, p: Any) -> mpmath.matrix:
        """ (1 - p) I + p ρ(g) """
        p = mpmath.mpf(p.numerator) / p.denominator if hasattr(p, "denominator") else mpmath.mpf(p)
        return (1 - p) * mpmath.eye(self.dim) + p * self._images[g]

    @numeric_context()
    def is_singular_step(self, g: Element, p: Any) -> bool:
        return abs(mpmath.det(self.step_matrix(g, p))) < self.tolerance

    @numeric_context()
    def to_document(self) -> Dict[str, Any]:
        def entry(x) -> List[str]:
            return [mpmath.nstr(mpmath.re(x), 45), mpmath.nstr(mpmath.im(x), 45)]

        return {
            "group": self.group.spec(),
            "dim": self.dim,
            "images": [{"g": self.group.encode(g),
                        "matrix": [[entry(m[i, j]) for j in range(self.dim)] for i in range(self.dim)]}
                       for g, m in ((g, self._images[g]) for g in self.group.enumerate())],
        }

    @staticmethod
    @numeric_context()
    def from_document(doc: Any) -> MatrixRep:
        try:
            group = group_from_spec(doc["group"])
            images = {}
            for item in doc["images"]:
                rows = [[mpmath.mpc(mpmath.mpf(re), mpmath.mpf(im)) for re, im in row] for row in item["matrix"]]
                images[group.decode(item["g"])] = mpmath.matrix(rows)
        except (KeyError, TypeError, ValueError) as err:
            raise DocumentError(f"Malformed representation document: {err}")
        return MatrixRep(group, images)

    @staticmethod
    def from_file(path: Path) -> MatrixRep:
        return MatrixRep.from_document(read_json(path))

    def to_file(self, path: Path):
        write_json(self.to_document(), path)

    def __repr__(self) -> str:
        return f"MatrixRep({self.group.name}, dim={self.dim})"


def _rotation(theta) -> mpmath.matrix:
    c, s = mpmath.cos(theta), mpmath.sin(theta)
    return mpmath.matrix([[c, -s], [s, c]])


@numeric_context()
def dihedral_irreps(n: int) -> List[MatrixRep]:
    """ The nontrivial irreducible representations of D_n: the nontrivial characters (one
        for odd n, three for even n) and for j = 1..(n-1)/2 the plane representation
        sending σ to the rotation by 2πj/n and τ to diag(1, -1).
    """
    group = DihedralGroup(n)
    reps = []
    signs = [(1, -1)] if n % 2 else [(1, -1), (-1, 1), (-1, -1)]
    for on_sigma, on_tau in signs:
        reps.append(MatrixRep(group, {(r, f): mpmath.matrix([[on_sigma ** r * on_tau ** f]])
                                      for r, f in group.enumerate()}))
    flip = mpmath.diag([1, -1])
    for j in range(1, (n - 1) // 2 + 1):
        theta = 2 * mpmath.pi * j / n
        images = {(r, f): _rotation(theta * r) * (flip if f else mpmath.eye(2)) for r, f in group.enumerate()}
        reps.append(MatrixRep(group, images))
    log.debug(f"D_{n} has {len(reps)} nontrivial irreducible representations")
    return reps


def sign_rep(n: int) -> MatrixRep:
    group = SymmetricGroup(n)
    return MatrixRep(group, {g: mpmath.matrix([[-1 if perm_parity(g) else 1]]) for g in group.enumerate()})


def _helmert_basis(n: int) -> mpmath.matrix:
    """ n x (n-1) matrix whose orthonormal columns span the vectors with zero coordinate sum. """
    basis = mpmath.matrix(n, n - 1)
    for k in range(1, n):
        scale = 1 / mpmath.sqrt(k * (k + 1))
        for i in range(k):
            basis[i, k - 1] = scale
        basis[k, k - 1] = -k * scale
    return basis


@numeric_context()
def standard_rep(n: int) -> MatrixRep:
    """ The (n-1)-dimensional real orthogonal representation of S_n on the vectors of R^n
        with zero coordinate sum.
    """
    if n < 2:
        raise ValueError(f"The standard representation needs n >= 2, got {n}")
    group = SymmetricGroup(n)
    basis = _helmert_basis(n)

    def permutation_matrix(g: Sequence[int]) -> mpmath.matrix:
        m = mpmath.matrix(n, n)
        for i, image in enumerate(g):
            m[image - 1, i] = 1
        return m

    images = {s: basis.T * permutation_matrix(s) * basis for s in group.generators()}
    return MatrixRep.from_generators(group, images)
