""" This module defines the uniform finite-group interface used throughout the project,
    along with the simplest concrete families: cyclic, dihedral, Cayley-table and direct
    product groups.

    Group elements are plain hashable values (ints and tuples), so distributions, closures
    and memo tables can key on them directly. Each family documents its payload and its
    canonical enumeration order.
"""

from __future__ import annotations
from abc import ABC, abstractmethod
from enum import IntEnum, auto
from itertools import product
from math import gcd
from typing import Any, Dict, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple
import json
import logging

import numpy as np

log = logging.getLogger("groups.finite_group")

Element = Hashable

# Operations that need a full element list refuse groups larger than this.
ENUMERATION_BOUND = 10 ** 7

# Cayley tables up to this order are checked for associativity exhaustively, above it on
# a fixed pseudo-random sample of triples.
EXHAUSTIVE_ASSOCIATIVITY_ORDER = 64
SAMPLED_ASSOCIATIVITY_TRIPLES = 20000


def set_enumeration_bound(bound: int):
    global ENUMERATION_BOUND
    if bound < 1:
        raise ValueError(f"Enumeration bound must be positive, got {bound}")
    log.debug(f"enumeration bound set to {bound}")
    ENUMERATION_BOUND = bound


def get_enumeration_bound() -> int:
    return ENUMERATION_BOUND


class GroupError(Exception):
    pass


class InvalidElement(GroupError):
    pass


class EnumerationBoundExceeded(GroupError):
    pass


class NotASubgroup(GroupError):
    pass


class NotNormal(GroupError):
    pass


class InvalidGroupSpec(GroupError):
    pass


class GroupKind(IntEnum):
    cyclic = auto()
    dihedral = auto()
    symmetric = auto()
    alternating = auto()
    signed_permutation = auto()
    matrix = auto()
    cayley = auto()
    product = auto()
    # subgroup of S_n given by generating permutations
    permutation = auto()


class FiniteGroup(ABC):
    """ A finite group with canonical, hashable element payloads.

        Subclasses implement the arithmetic (`multiply`, `inverse`), validation of
        payloads, JSON encoding of elements and `_generate`, which yields every element
        exactly once in the family's canonical order. Enumeration is cached, and refused
        above the configured enumeration bound.
    """
    kind: GroupKind

    def __init__(self):
        self._elements: Optional[List[Element]] = None
        self._index: Optional[Dict[Element, int]] = None
        self._hash: Optional[int] = None

    @property
    @abstractmethod
    def order(self) -> int:
        ...

    @property
    @abstractmethod
    def identity(self) -> Element:
        ...

    @abstractmethod
    def multiply(self, a: Element, b: Element) -> Element:
        ...

    @abstractmethod
    def inverse(self, a: Element) -> Element:
        ...

    @abstractmethod
    def validate(self, g: Any) -> Element:
        """ Returns the canonical payload of `g`, raising `InvalidElement` when `g` is not
            an element of this group. """
        ...

    @abstractmethod
    def _generate(self) -> Iterator[Element]:
        ...

    @abstractmethod
    def spec(self) -> Dict[str, Any]:
        """ The JSON-compatible group specification document of this group. """
        ...

    def encode(self, g: Element) -> Any:
        return g

    def decode(self, obj: Any) -> Element:
        return self.validate(obj)

    def generators(self) -> List[Element]:
        """ A generating set; families override this with a small one. """
        return [g for g in self.enumerate() if g != self.identity]

    def is_enumerable(self) -> bool:
        return self.order <= ENUMERATION_BOUND

    def enumerate(self) -> List[Element]:
        if self._elements is None:
            if not self.is_enumerable():
                raise EnumerationBoundExceeded(
                    f"{self.name} has {self.order} elements, above the enumeration bound {ENUMERATION_BOUND}")
            self._elements = list(self._generate())
            assert len(self._elements) == self.order, f"{self.name} enumerated {len(self._elements)} elements"
        return self._elements

    def index_of(self, g: Element) -> int:
        """ Position of `g` in the canonical enumeration. """
        if self._index is None:
            self._index = {h: i for i, h in enumerate(self.enumerate())}
        return self._index[g]

    def contains(self, g: Any) -> bool:
        try:
            self.validate(g)
            return True
        except InvalidElement:
            return False

    def power(self, g: Element, k: int) -> Element:
        if k < 0:
            g, k = self.inverse(g), -k
        result = self.identity
        base = g
        while k:
            if k & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            k >>= 1
        return result

    def element_order(self, g: Element) -> int:
        k, cur = 1, g
        while cur != self.identity:
            cur = self.multiply(cur, g)
            k += 1
        return k

    def conjugate(self, g: Element, h: Element) -> Element:
        """ Returns h g h^-1 """
        return self.multiply(self.multiply(h, g), self.inverse(h))

    def commutator(self, a: Element, b: Element) -> Element:
        return self.multiply(self.multiply(a, b), self.multiply(self.inverse(a), self.inverse(b)))

    @property
    def name(self) -> str:
        return f"{self.kind.name}{json.dumps(self.spec(), sort_keys=True)}"

    def __repr__(self) -> str:
        return self.name

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self is other or self.spec() == other.spec()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(json.dumps(self.spec(), sort_keys=True))
        return self._hash


def multiply(group: FiniteGroup, a: Any, b: Any) -> Element:
    """ Validated product a·b in `group`. """
    return group.multiply(group.validate(a), group.validate(b))


def element_order(group: FiniteGroup, g: Any) -> int:
    return group.element_order(group.validate(g))


def _as_int(g: Any) -> int:
    if isinstance(g, bool) or not isinstance(g, (int, np.integer)):
        raise InvalidElement(f"Expected an integer payload, got {g!r}")
    return int(g)


class CyclicGroup(FiniteGroup):
    """ Z/n in additive notation, elements are residues 0..n-1 enumerated in increasing order. """
    kind = GroupKind.cyclic
    __slots__ = ['n']

    def __init__(self, n: int):
        super().__init__()
        if n < 1:
            raise InvalidGroupSpec(f"Cyclic group order must be positive, got {n}")
        self.n = n

    @property
    def order(self) -> int:
        return self.n

    @property
    def identity(self) -> int:
        return 0

    def multiply(self, a: int, b: int) -> int:
        return (a + b) % self.n

    def inverse(self, a: int) -> int:
        return (-a) % self.n

    def element_order(self, g: int) -> int:
        return self.n // gcd(self.n, g)

    def power(self, g: int, k: int) -> int:
        return (g * k) % self.n

    def validate(self, g: Any) -> int:
        g = _as_int(g)
        if not 0 <= g < self.n:
            raise InvalidElement(f"{g} is not a residue modulo {self.n}")
        return g

    def _generate(self) -> Iterator[int]:
        return iter(range(self.n))

    def generators(self) -> List[int]:
        return [1] if self.n > 1 else []

    def spec(self) -> Dict[str, Any]:
        return {"kind": "cyclic", "n": self.n}


DihedralElement = Tuple[int, int]


class DihedralGroup(FiniteGroup):
    """ D_n = <σ, τ | σ^n = τ^2 = (τσ)^2 = 1> of order 2n.

        An element (rot, ref) stands for σ^rot·τ^ref, so that
        (i, r)·(j, s) = (i + (-1)^r j mod n, r + s mod 2).
        Enumeration lists the rotations first, then the reflections, each by increasing rot.
    """
    kind = GroupKind.dihedral
    __slots__ = ['n']

    def __init__(self, n: int):
        super().__init__()
        if n < 1:
            raise InvalidGroupSpec(f"Dihedral group parameter must be positive, got {n}")
        self.n = n

    @property
    def order(self) -> int:
        return 2 * self.n

    @property
    def identity(self) -> DihedralElement:
        return (0, 0)

    @property
    def sigma(self) -> DihedralElement:
        return (1 % self.n, 0)

    @property
    def tau(self) -> DihedralElement:
        return (0, 1)

    def multiply(self, a: DihedralElement, b: DihedralElement) -> DihedralElement:
        i, r = a
        j, s = b
        return ((i - j if r else i + j) % self.n, r ^ s)

    def inverse(self, a: DihedralElement) -> DihedralElement:
        i, r = a
        return a if r else ((-i) % self.n, 0)

    def element_order(self, g: DihedralElement) -> int:
        i, r = g
        if r:
            return 2
        return self.n // gcd(self.n, i)

    def validate(self, g: Any) -> DihedralElement:
        if isinstance(g, Mapping):
            g = (g.get("rot"), g.get("ref"))
        if not isinstance(g, (tuple, list)) or len(g) != 2:
            raise InvalidElement(f"Dihedral element must be a (rot, ref) pair, got {g!r}")
        rot, ref = _as_int(g[0]), _as_int(g[1])
        if not 0 <= rot < self.n or ref not in (0, 1):
            raise InvalidElement(f"({rot}, {ref}) is not an element of D_{self.n}")
        return (rot, ref)

    def encode(self, g: DihedralElement) -> Any:
        return [g[0], g[1]]

    def _generate(self) -> Iterator[DihedralElement]:
        for ref in (0, 1):
            for rot in range(self.n):
                yield (rot, ref)

    def generators(self) -> List[DihedralElement]:
        return [self.sigma, self.tau] if self.n > 1 else [self.tau]

    def spec(self) -> Dict[str, Any]:
        return {"kind": "dihedral", "n": self.n}


class CayleyGroup(FiniteGroup):
    """ A group given by its full multiplication table over indices 0..order-1, where
        index 0 is the identity and table[a][b] is the index of a·b.
    """
    kind = GroupKind.cayley
    __slots__ = ['table', '_inverses']

    def __init__(self, table: Sequence[Sequence[int]]):
        super().__init__()
        self.table: Tuple[Tuple[int, ...], ...] = tuple(tuple(int(x) for x in row) for row in table)
        self._check_table()
        self._inverses = tuple(row.index(0) for row in self.table)

    def _check_table(self):
        n = len(self.table)
        if n == 0:
            raise InvalidGroupSpec("Cayley table is empty")
        full = set(range(n))
        for a, row in enumerate(self.table):
            if len(row) != n:
                raise InvalidGroupSpec(f"Row {a} of the Cayley table has {len(row)} entries, expected {n}")
            if set(row) != full:
                raise InvalidGroupSpec(f"Row {a} of the Cayley table is not a permutation of 0..{n - 1}")
        for b in range(n):
            if set(self.table[a][b] for a in range(n)) != full:
                raise InvalidGroupSpec(f"Column {b} of the Cayley table is not a permutation of 0..{n - 1}")
        if self.table[0] != tuple(range(n)) or any(self.table[a][0] != a for a in range(n)):
            raise InvalidGroupSpec("Index 0 of a Cayley table must be the identity")
        t = self.table
        if n <= EXHAUSTIVE_ASSOCIATIVITY_ORDER:
            triples: Iterable[Tuple[int, int, int]] = product(range(n), repeat=3)
        else:
            rng = np.random.default_rng(n)
            triples = (tuple(int(x) for x in row)
                       for row in rng.integers(0, n, size=(SAMPLED_ASSOCIATIVITY_TRIPLES, 3)))
        for a, b, c in triples:
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise InvalidGroupSpec(f"Cayley table is not associative at ({a}, {b}, {c})")

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def identity(self) -> int:
        return 0

    def multiply(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return self._inverses[a]

    def validate(self, g: Any) -> int:
        g = _as_int(g)
        if not 0 <= g < self.order:
            raise InvalidElement(f"{g} is not an index of a Cayley table of order {self.order}")
        return g

    def _generate(self) -> Iterator[int]:
        return iter(range(self.order))

    def spec(self) -> Dict[str, Any]:
        return {"kind": "cayley", "order": self.order, "table": [list(row) for row in self.table]}


class ProductGroup(FiniteGroup):
    """ Direct product of factor groups; elements are tuples of factor payloads, enumerated
        lexicographically with the first factor varying slowest.
    """
    kind = GroupKind.product
    __slots__ = ['factors']

    def __init__(self, factors: Sequence[FiniteGroup]):
        super().__init__()
        if len(factors) == 0:
            raise InvalidGroupSpec("A product group needs at least one factor")
        self.factors: Tuple[FiniteGroup, ...] = tuple(factors)

    @property
    def order(self) -> int:
        result = 1
        for f in self.factors:
            result *= f.order
        return result

    @property
    def identity(self) -> Tuple[Element, ...]:
        return tuple(f.identity for f in self.factors)

    def multiply(self, a: Tuple[Element, ...], b: Tuple[Element, ...]) -> Tuple[Element, ...]:
        return tuple(f.multiply(x, y) for f, x, y in zip(self.factors, a, b))

    def inverse(self, a: Tuple[Element, ...]) -> Tuple[Element, ...]:
        return tuple(f.inverse(x) for f, x in zip(self.factors, a))

    def validate(self, g: Any) -> Tuple[Element, ...]:
        if not isinstance(g, (tuple, list)) or len(g) != len(self.factors):
            raise InvalidElement(f"Product element must have {len(self.factors)} components, got {g!r}")
        return tuple(f.validate(x) for f, x in zip(self.factors, g))

    def encode(self, g: Tuple[Element, ...]) -> Any:
        return [f.encode(x) for f, x in zip(self.factors, g)]

    def decode(self, obj: Any) -> Tuple[Element, ...]:
        if not isinstance(obj, (tuple, list)) or len(obj) != len(self.factors):
            raise InvalidElement(f"Product element must have {len(self.factors)} components, got {obj!r}")
        return tuple(f.decode(x) for f, x in zip(self.factors, obj))

    def embedding(self, position: int):
        """ The inclusion homomorphism of factor `position` into the product. """
        identity = self.identity

        def embed(g: Element) -> Tuple[Element, ...]:
            return identity[:position] + (g,) + identity[position + 1:]
        return embed

    def _generate(self) -> Iterator[Tuple[Element, ...]]:
        return product(*(f.enumerate() for f in self.factors))

    def generators(self) -> List[Tuple[Element, ...]]:
        return [self.embedding(i)(g) for i, f in enumerate(self.factors) for g in f.generators()]

    def spec(self) -> Dict[str, Any]:
        return {"kind": "product", "factors": [f.spec() for f in self.factors]}
