""" A small catalogue of groups given by explicit product laws, turned into Cayley tables:
    all groups of order 8 and 16, a few odd-order groups and the affine groups of prime
    fields. Elements of each law are tuples of residues; the identity is the all-zero
    tuple and is listed first.
"""

from __future__ import annotations
from itertools import product
from typing import Callable, Dict, List, Sequence, Tuple

from sympy.ntheory import primitive_root

from .finite_group import CayleyGroup, InvalidGroupSpec
from .permutation_groups import PermutationGroup
from .subgroups import cayley_from_law

Law = Callable[[Tuple[int, ...], Tuple[int, ...]], Tuple[int, ...]]


def _elements(moduli: Sequence[int]) -> List[Tuple[int, ...]]:
    return list(product(*(range(m) for m in moduli)))


def abelian(*moduli: int) -> CayleyGroup:
    """ Z/m_1 × ... × Z/m_r """
    def law(a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, moduli))
    return cayley_from_law(_elements(moduli), law)


def _dicyclic_law(m: int) -> Law:
    def law(a, b):
        i, r = a
        j, s = b
        return ((i + (-j if r else j) + (m if r and s else 0)) % (2 * m), r ^ s)
    return law


def dicyclic(m: int) -> CayleyGroup:
    """ Dic_m = <x, y | x^2m = 1, y^2 = x^m, y x y^-1 = x^-1> of order 4m; Q8 for m = 2. """
    return cayley_from_law(_elements((2 * m, 2)), _dicyclic_law(m))


def metacyclic(n: int, k: int, r: int) -> CayleyGroup:
    """ Z/n ⋊ Z/k where the generator of Z/k acts by multiplication with r. """
    if pow(r, k, n) != 1:
        raise InvalidGroupSpec(f"{r} has no order dividing {k} modulo {n}")

    def law(a, b):
        i, j = a
        u, v = b
        return ((i + pow(r, j, n) * u) % n, (j + v) % k)
    return cayley_from_law(_elements((n, k)), law)


def direct(left: Law, left_moduli: Sequence[int], right_moduli: Sequence[int]) -> CayleyGroup:
    """ Direct product of a law on `left_moduli` tuples with an abelian group. """
    split = len(left_moduli)

    def law(a, b):
        head = left(a[:split], b[:split])
        tail = tuple((x + y) % m for x, y, m in zip(a[split:], b[split:], right_moduli))
        return head + tail
    return cayley_from_law(_elements(list(left_moduli) + list(right_moduli)), law)


def _dihedral_law(n: int) -> Law:
    def law(a, b):
        i, r = a
        j, s = b
        return ((i - j if r else i + j) % n, r ^ s)
    return law


def _z4_z2_semidirect_z2(a, b):
    i, j, k = a
    u, v, w = b
    return ((i + u) % 4, (j + v + k * u) % 2, (k + w) % 2)


def _pauli(a, b):
    c, x, z = a
    d, y, w = b
    return ((c + d + 2 * z * y) % 4, x ^ y, z ^ w)


ORDER_8: Dict[str, Callable[[], CayleyGroup]] = {
    "Z8": lambda: abelian(8),
    "Z4xZ2": lambda: abelian(4, 2),
    "Z2^3": lambda: abelian(2, 2, 2),
    "D4": lambda: metacyclic(4, 2, 3),
    "Q8": lambda: dicyclic(2),
}

ORDER_16: Dict[str, Callable[[], CayleyGroup]] = {
    "Z16": lambda: abelian(16),
    "Z8xZ2": lambda: abelian(8, 2),
    "Z4xZ4": lambda: abelian(4, 4),
    "Z4xZ2^2": lambda: abelian(4, 2, 2),
    "Z2^4": lambda: abelian(2, 2, 2, 2),
    "D8": lambda: metacyclic(8, 2, 7),
    "SD16": lambda: metacyclic(8, 2, 3),
    "M16": lambda: metacyclic(8, 2, 5),
    "Q16": lambda: dicyclic(4),
    "D4xZ2": lambda: direct(_dihedral_law(4), (4, 2), (2,)),
    "Q8xZ2": lambda: direct(_dicyclic_law(2), (4, 2), (2,)),
    "Z4:Z4": lambda: metacyclic(4, 4, 3),
    "(Z4xZ2):Z2": lambda: cayley_from_law(_elements((4, 2, 2)), _z4_z2_semidirect_z2),
    "Pauli": lambda: cayley_from_law(_elements((4, 2, 2)), _pauli),
}


def nonabelian_21() -> CayleyGroup:
    """ Z/7 ⋊ Z/3 """
    return metacyclic(7, 3, 2)


def affine_group(p: int) -> PermutationGroup:
    """ F_p ⋊ F_p^× acting on F_p, with the residue x written as the point x + 1. The
        translations form the normal subgroup and the point 1 (residue 0) has the
        multiplications as its stabilizer.
    """
    g = primitive_root(p)
    translation = tuple((x + 1) % p + 1 for x in range(p))
    scaling = tuple((g * x) % p + 1 for x in range(p))
    return PermutationGroup(p, [translation, scaling])
