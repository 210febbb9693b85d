""" Permutation families: S_n, A_n, groups generated by explicit permutations and the
    signed permutation groups (Coxeter B_n and D_n).

    Permutations are one-line image tuples over 1..n, so `g[x - 1]` is the image of x.
    They act on the left: (f·g)(x) = f(g(x)).
"""

from __future__ import annotations
from itertools import permutations, product
from math import factorial, gcd
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

from .finite_group import (FiniteGroup, GroupKind, InvalidElement, InvalidGroupSpec, EnumerationBoundExceeded,
                           get_enumeration_bound)

Perm = Tuple[int, ...]
SignedPerm = Tuple[Perm, Tuple[int, ...]]


def perm_identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def perm_multiply(f: Perm, g: Perm) -> Perm:
    return tuple([f[x - 1] for x in g])


def perm_inverse(f: Perm) -> Perm:
    inv = [0] * len(f)
    for x, y in enumerate(f, start=1):
        inv[y - 1] = x
    return tuple(inv)


def perm_from_cycles(n: int, *cycles: Sequence[int]) -> Perm:
    """ Builds the permutation of 1..n with the given disjoint cycles, e.g.
        `perm_from_cycles(4, (1, 2), (3, 4))`.
    """
    images = list(range(1, n + 1))
    for cycle in cycles:
        for i, x in enumerate(cycle):
            images[x - 1] = cycle[(i + 1) % len(cycle)]
    result = tuple(images)
    if sorted(result) != list(range(1, n + 1)):
        raise InvalidElement(f"Cycles {cycles} do not describe a permutation of 1..{n}")
    return result


def perm_cycles(f: Perm) -> List[Tuple[int, ...]]:
    """ Nontrivial cycles of `f`, each starting at its least point. """
    seen = set()
    cycles = []
    for start in range(1, len(f) + 1):
        if start in seen or f[start - 1] == start:
            continue
        cycle = [start]
        seen.add(start)
        x = f[start - 1]
        while x != start:
            cycle.append(x)
            seen.add(x)
            x = f[x - 1]
        cycles.append(tuple(cycle))
    return cycles


def perm_str(f: Perm) -> str:
    cycles = perm_cycles(f)
    if not cycles:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def perm_parity(f: Perm) -> int:
    """ 0 for even permutations, 1 for odd ones. """
    return sum(len(c) - 1 for c in perm_cycles(f)) % 2


def perm_shift(f: Perm, offset: int, n: int) -> Perm:
    """ Embeds a permutation of 1..k into S_n, acting on offset+1..offset+k and fixing
        everything else.
    """
    images = list(range(1, n + 1))
    for x, y in enumerate(f, start=1):
        images[offset + x - 1] = offset + y
    return tuple(images)


def perm_relabel(f: Perm, relabel: Mapping[int, int]) -> Perm:
    """ Conjugates `f` by the bijection `relabel` of its points: the result maps
        relabel(x) to relabel(f(x)).
    """
    images = list(range(1, len(f) + 1))
    for x, y in enumerate(f, start=1):
        images[relabel[x] - 1] = relabel[y]
    return tuple(images)


def _validate_perm(g: Any, n: int) -> Perm:
    if not isinstance(g, (tuple, list)) or len(g) != n:
        raise InvalidElement(f"Expected an image array of length {n}, got {g!r}")
    try:
        images = tuple(int(x) for x in g)
    except (TypeError, ValueError):
        raise InvalidElement(f"Image array {g!r} has non-integer entries")
    if sorted(images) != list(range(1, n + 1)):
        raise InvalidElement(f"{list(images)} is not a bijection of 1..{n}")
    return images


class _PermutationFamily(FiniteGroup):
    """ Shared arithmetic of the groups of permutations of 1..n """
    __slots__ = ['n']

    def __init__(self, n: int):
        super().__init__()
        if n < 1:
            raise InvalidGroupSpec(f"Permutation degree must be positive, got {n}")
        self.n = n

    @property
    def degree(self) -> int:
        return self.n

    @property
    def identity(self) -> Perm:
        return perm_identity(self.n)

    def multiply(self, a: Perm, b: Perm) -> Perm:
        return tuple([a[x - 1] for x in b])

    def inverse(self, a: Perm) -> Perm:
        return perm_inverse(a)

    def element_order(self, g: Perm) -> int:
        result = 1
        for cycle in perm_cycles(g):
            k = len(cycle)
            result = result * k // gcd(result, k)
        return result

    def validate(self, g: Any) -> Perm:
        return _validate_perm(g, self.n)

    def encode(self, g: Perm) -> Any:
        return list(g)

    def transposition(self, i: int, j: int) -> Perm:
        return perm_from_cycles(self.n, (i, j))


class SymmetricGroup(_PermutationFamily):
    """ S_n, enumerated in lexicographic order of image arrays (identity first). """
    kind = GroupKind.symmetric

    @property
    def order(self) -> int:
        return factorial(self.n)

    def _generate(self) -> Iterator[Perm]:
        return permutations(range(1, self.n + 1))

    def generators(self) -> List[Perm]:
        if self.n == 1:
            return []
        if self.n == 2:
            return [(2, 1)]
        return [self.transposition(1, 2), perm_from_cycles(self.n, tuple(range(1, self.n + 1)))]

    def spec(self) -> Dict[str, Any]:
        return {"kind": "symmetric", "n": self.n}


class AlternatingGroup(_PermutationFamily):
    """ A_n, the even permutations of S_n in the same lexicographic order. """
    kind = GroupKind.alternating

    @property
    def order(self) -> int:
        return max(1, factorial(self.n) // 2)

    def validate(self, g: Any) -> Perm:
        images = _validate_perm(g, self.n)
        if perm_parity(images):
            raise InvalidElement(f"{perm_str(images)} is odd, not an element of A_{self.n}")
        return images

    def _generate(self) -> Iterator[Perm]:
        return (p for p in permutations(range(1, self.n + 1)) if perm_parity(p) == 0)

    def generators(self) -> List[Perm]:
        if self.n < 3:
            return []
        three_cycle = perm_from_cycles(self.n, (1, 2, 3))
        if self.n == 3:
            return [three_cycle]
        # (1 2 3) with (1 2 ... n) for odd n, (2 3 ... n) for even n
        long_cycle = tuple(range(1, self.n + 1)) if self.n % 2 else tuple(range(2, self.n + 1))
        return [three_cycle, perm_from_cycles(self.n, long_cycle)]

    def spec(self) -> Dict[str, Any]:
        return {"kind": "alternating", "n": self.n}


class PermutationGroup(_PermutationFamily):
    """ The subgroup of S_n generated by explicit permutations. The elements are computed
        by closure and enumerated in lexicographic order of image arrays.
    """
    kind = GroupKind.permutation
    __slots__ = ['_generators', '_members']

    def __init__(self, n: int, generators: Iterable[Sequence[int]]):
        super().__init__(n)
        self._generators: List[Perm] = [_validate_perm(g, n) for g in generators]
        self._members = self._close()

    def _close(self) -> frozenset:
        identity = self.identity
        members = {identity}
        frontier = [identity]
        bound = get_enumeration_bound()
        while frontier:
            nxt = []
            for x in frontier:
                for s in self._generators:
                    y = self.multiply(x, s)
                    if y not in members:
                        members.add(y)
                        nxt.append(y)
            if len(members) > bound:
                raise EnumerationBoundExceeded(f"Permutation group closure exceeded {bound} elements")
            frontier = nxt
        return frozenset(members)

    @property
    def order(self) -> int:
        return len(self._members)

    def validate(self, g: Any) -> Perm:
        images = _validate_perm(g, self.n)
        if images not in self._members:
            raise InvalidElement(f"{perm_str(images)} is not in the group generated by "
                                 f"{[perm_str(s) for s in self._generators]}")
        return images

    def _generate(self) -> Iterator[Perm]:
        return iter(sorted(self._members))

    def generators(self) -> List[Perm]:
        return [g for g in self._generators if g != self.identity]

    def spec(self) -> Dict[str, Any]:
        return {"kind": "permutation", "n": self.n, "generators": [list(g) for g in self._generators]}


class SignedPermutationGroup(FiniteGroup):
    """ Signed permutations of 1..n: the Coxeter group B_n, or its index-2 subgroup D_n
        (`even_only`) where the number of sign flips is even.

        An element (images, signs) sends the point i to (-1)^signs[i-1]·images[i-1], and
        the product is (π, s)·(π', s') = (π∘π', s'') with s''_i = s'_i XOR s_{π'(i)}.
        Enumeration runs over permutations in lexicographic order, and within each over
        sign vectors in lexicographic order.
    """
    kind = GroupKind.signed_permutation
    __slots__ = ['n', 'even_only']

    def __init__(self, n: int, even_only: bool = False):
        super().__init__()
        if n < 1:
            raise InvalidGroupSpec(f"Signed permutation degree must be positive, got {n}")
        self.n = n
        self.even_only = even_only

    @property
    def order(self) -> int:
        flips = self.n - 1 if self.even_only else self.n
        return factorial(self.n) * 2 ** flips

    @property
    def identity(self) -> SignedPerm:
        return (perm_identity(self.n), (0,) * self.n)

    def multiply(self, a: SignedPerm, b: SignedPerm) -> SignedPerm:
        pi, s = a
        pi2, s2 = b
        return (tuple([pi[x - 1] for x in pi2]), tuple([t ^ s[y - 1] for t, y in zip(s2, pi2)]))

    def inverse(self, a: SignedPerm) -> SignedPerm:
        pi, s = a
        inv = perm_inverse(pi)
        return (inv, tuple(s[y - 1] for y in inv))

    def act(self, g: SignedPerm, point: int) -> int:
        """ Image of a signed point ±i. """
        pi, s = g
        i = abs(point)
        image = -pi[i - 1] if s[i - 1] else pi[i - 1]
        return image if point > 0 else -image

    def validate(self, g: Any) -> SignedPerm:
        if isinstance(g, Mapping):
            g = (g.get("images"), g.get("signs"))
        if not isinstance(g, (tuple, list)) or len(g) != 2:
            raise InvalidElement(f"Signed permutation must be an (images, signs) pair, got {g!r}")
        images = _validate_perm(g[0], self.n)
        signs = g[1]
        if not isinstance(signs, (tuple, list)) or len(signs) != self.n or any(b not in (0, 1) for b in signs):
            raise InvalidElement(f"Sign bits must be {self.n} values in {{0, 1}}, got {signs!r}")
        signs = tuple(int(b) for b in signs)
        if self.even_only and sum(signs) % 2:
            raise InvalidElement(f"Sign vector {list(signs)} has an odd number of flips")
        return (images, signs)

    def encode(self, g: SignedPerm) -> Any:
        return {"images": list(g[0]), "signs": list(g[1])}

    def flip(self, *positions: int) -> SignedPerm:
        """ The sign change of the given coordinates, with trivial permutation part. """
        signs = [0] * self.n
        for i in positions:
            signs[i - 1] ^= 1
        return self.validate((perm_identity(self.n), signs))

    def lift(self, pi: Perm) -> SignedPerm:
        return (pi, (0,) * self.n)

    def _generate(self) -> Iterator[SignedPerm]:
        for pi in permutations(range(1, self.n + 1)):
            for signs in product((0, 1), repeat=self.n):
                if self.even_only and sum(signs) % 2:
                    continue
                yield (pi, signs)

    def generators(self) -> List[SignedPerm]:
        gens = [self.lift(g) for g in SymmetricGroup(self.n).generators()]
        if self.even_only:
            if self.n >= 2:
                gens.append(self.flip(1, 2))
        else:
            gens.append(self.flip(1))
        return gens

    def spec(self) -> Dict[str, Any]:
        return {"kind": "signed_permutation", "n": self.n, "even_only": self.even_only}
