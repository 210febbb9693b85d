""" Arithmetic in F_q, q = p^e, realized as F_p[x]/(modulus).

    A field element is the integer encoding sum(c_i * p^i) of its coefficient vector
    (c_0, ..., c_{e-1}); this encoding is also the canonical total order on F_q. Addition
    works digit-wise, multiplication through exponent/logarithm tables over a primitive
    element, built once per field.
"""

from __future__ import annotations
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple
import logging

import sympy

from .finite_field_tables import DEFAULT_MODULI

log = logging.getLogger("groups.finite_field")

# irreducibility is checked by exhaustive trial division up to this degree
MAX_EXTENSION_DEGREE = 12


class FieldError(Exception):
    pass


class NotIrreducible(FieldError):
    pass


class ZeroInverse(FieldError):
    pass


Poly = List[int]


def _poly_trim(a: Poly) -> Poly:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> Poly:
    """ Remainder of a modulo the monic polynomial m, coefficients low to high. """
    r = [x % p for x in a]
    dm = len(m) - 1
    for i in range(len(r) - 1, dm - 1, -1):
        c = r[i]
        if c:
            shift = i - dm
            for j, mc in enumerate(m):
                r[shift + j] = (r[shift + j] - c * mc) % p
    return _poly_trim(r[:dm] if dm > 0 else [])


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """ Exhaustive test: no monic factor of degree 1..deg/2 divides `modulus`. """
    degree = len(modulus) - 1
    if degree < 1 or modulus[-1] % p != 1:
        return False
    if degree == 1:
        return True
    if degree > MAX_EXTENSION_DEGREE:
        raise FieldError(f"Irreducibility is only checked up to degree {MAX_EXTENSION_DEGREE}, got {degree}")
    for d in range(1, degree // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _poly_mod(modulus, list(low) + [1], p):
                return False
    return True


def _least_irreducible(p: int, e: int) -> Tuple[int, ...]:
    for high_first in product(range(p), repeat=e):
        candidate = list(reversed(high_first)) + [1]
        if is_irreducible(candidate, p):
            return tuple(candidate)
    raise FieldError(f"No irreducible polynomial of degree {e} over F_{p}")


class FiniteField:
    """ The field F_{p^e} with a fixed monic irreducible modulus.

        Elements are ints in 0..q-1. The multiplicative group is handled with exp/log
        tables relative to `generator`, the least primitive element in the integer order.
    """
    __slots__ = ['p', 'e', 'q', 'modulus', '_exp', '_log', 'generator', '_add']

    def __init__(self, p: int, e: int = 1, modulus: Optional[Sequence[int]] = None):
        if not sympy.isprime(p):
            raise FieldError(f"Characteristic {p} is not prime")
        if e < 1:
            raise FieldError(f"Extension degree must be at least 1, got {e}")
        self.p = p
        self.e = e
        self.q = p ** e
        if modulus is None:
            modulus = DEFAULT_MODULI.get((p, e))
            if modulus is None:
                modulus = _least_irreducible(p, e)
                log.warning(f"No default modulus for F_{p}^{e}, using least irreducible {list(modulus)}")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise NotIrreducible(f"Modulus {list(modulus)} is not a monic polynomial of degree {e}")
        if not is_irreducible(modulus, p):
            raise NotIrreducible(f"Modulus {list(modulus)} is reducible over F_{p}")
        self.modulus = modulus
        self._add: Optional[List[List[int]]] = None
        self._build_tables()

    def _slow_mul(self, a: int, b: int) -> int:
        return self.from_coeffs(_poly_mod(_poly_mul(self.to_coeffs(a), self.to_coeffs(b), self.p),
                                          self.modulus, self.p))

    def _build_tables(self):
        q = self.q
        order = q - 1
        primes = list(sympy.factorint(order).keys()) if order > 1 else []

        def slow_pow(a: int, k: int) -> int:
            result, base = 1, a
            while k:
                if k & 1:
                    result = self._slow_mul(result, base)
                base = self._slow_mul(base, base)
                k >>= 1
            return result

        generator = next(g for g in range(1, q) if all(slow_pow(g, order // r) != 1 for r in primes))
        exp = [1] * order
        for i in range(1, order):
            exp[i] = self._slow_mul(exp[i - 1], generator)
        self.generator = generator
        self._exp = exp
        self._log = {x: i for i, x in enumerate(exp)}
        if self.p != 2 and q <= 1024:
            self._add = [[self._digit_add(a, b) for b in range(q)] for a in range(q)]

    def to_coeffs(self, a: int) -> List[int]:
        coeffs = []
        for _ in range(self.e):
            a, c = divmod(a, self.p)
            coeffs.append(c)
        return coeffs

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        result = 0
        for c in reversed(list(coeffs)):
            result = result * self.p + (int(c) % self.p)
        return result

    def _digit_add(self, a: int, b: int) -> int:
        p = self.p
        result, place = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            result += ((x + y) % p) * place
            place *= p
        return result

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self._add is not None:
            return self._add[a][b]
        return self._digit_add(a, b)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return self.from_coeffs([(-c) % self.p for c in self.to_coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse("Zero has no multiplicative inverse")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroInverse("Zero has no multiplicative inverse")
            return 1 if k == 0 else 0
        return self._exp[(self._log[a] * k) % (self.q - 1)]

    def log(self, a: int) -> int:
        """ Discrete logarithm to the base `generator`. """
        if a == 0:
            raise ZeroInverse("Zero has no logarithm")
        return self._log[a]

    def exp(self, k: int) -> int:
        return self._exp[k % (self.q - 1)]

    def roots_of_unity(self, d: int) -> List[int]:
        """ mu_d(F_q) = {a : a^d = 1}, a cyclic subgroup of order gcd(q-1, d), sorted. """
        step = (self.q - 1) // gcd(self.q - 1, d)
        return sorted(self._exp[k] for k in range(0, self.q - 1, step))

    def validate(self, a: Any) -> int:
        """ Accepts an integer encoding or a coefficient array. """
        if isinstance(a, (list, tuple)):
            if len(a) != self.e or any(isinstance(c, bool) or not isinstance(c, int) or not 0 <= c < self.p
                                       for c in a):
                raise FieldError(f"{a!r} is not a coefficient vector of length {self.e} over F_{self.p}")
            return self.from_coeffs(a)
        if isinstance(a, bool) or not isinstance(a, int) or not 0 <= a < self.q:
            raise FieldError(f"{a!r} is not an element of F_{self.q}")
        return a

    def encode(self, a: int) -> Any:
        return a if self.e == 1 else self.to_coeffs(a)

    def element_str(self, a: int) -> str:
        if self.e == 1:
            return str(a)
        terms = []
        for i, c in enumerate(self.to_coeffs(a)):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "x" if i == 1 else f"x^{i}"
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(reversed(terms)) or "0"

    def spec(self) -> Dict[str, Any]:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    def __repr__(self) -> str:
        return f"F_{self.q}[{self.spec()}]"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))


@lru_cache(maxsize=None)
def get_field(p: int, e: int = 1, modulus: Optional[Tuple[int, ...]] = None) -> FiniteField:
    return FiniteField(p, e, modulus)


def prime_power(q: int) -> Tuple[int, int]:
    """ Returns (p, e) with q = p^e, or raises FieldError. """
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    factors = sympy.factorint(q)
    if len(factors) != 1:
        raise FieldError(f"{q} is not a prime power")
    (p, e), = factors.items()
    return int(p), int(e)


def field_from_spec(obj: Any) -> FiniteField:
    """ Parses a field specification: a bare prime power q (default modulus) or a
        mapping {"p": ..., "e": ..., "modulus": [...]}.
    """
    if isinstance(obj, int) and not isinstance(obj, bool):
        p, e = prime_power(obj)
        return get_field(p, e)
    if isinstance(obj, Mapping):
        if "p" not in obj:
            raise FieldError(f"Field specification {obj!r} has no characteristic 'p'")
        p = int(obj["p"])
        e = int(obj.get("e", 1))
        modulus = obj.get("modulus")
        return get_field(p, e, None if modulus is None else tuple(int(c) for c in modulus))
    raise FieldError(f"Cannot parse field specification {obj!r}")
