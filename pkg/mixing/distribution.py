""" Sparse probability mass functions over group elements or action points. """

from __future__ import annotations
from contextlib import nullcontext
from typing import Dict, Hashable, Iterator, Mapping

import mpmath

from .probability import ArithmeticMode, Probability, numeric_context, one, zero


class Distribution:
    """ A mass function over a carrier of known size (the group, or the point set of an
        action). Only points of positive mass are stored.
    """
    __slots__ = ['masses', 'carrier_size', 'mode']

    def __init__(self, masses: Mapping[Hashable, Probability], carrier_size: int, mode: ArithmeticMode):
        self.masses: Dict[Hashable, Probability] = dict(masses)
        self.carrier_size = carrier_size
        self.mode = mode

    @staticmethod
    def delta(point: Hashable, carrier_size: int, mode: ArithmeticMode = ArithmeticMode.exact) -> Distribution:
        return Distribution({point: one(mode)}, carrier_size, mode)

    @staticmethod
    def uniform(points, mode: ArithmeticMode = ArithmeticMode.exact) -> Distribution:
        points = list(points)
        mass = one(mode) / len(points)
        return Distribution({x: mass for x in points}, len(points), mode)

    def __getitem__(self, point: Hashable) -> Probability:
        return self.masses.get(point, zero(self.mode))

    def __iter__(self) -> Iterator[Hashable]:
        return iter(self.masses)

    def __len__(self) -> int:
        return len(self.masses)

    def items(self):
        return self.masses.items()

    @property
    def support_size(self) -> int:
        return len(self.masses)

    def total_mass(self) -> Probability:
        if self.mode == ArithmeticMode.exact:
            return sum(self.masses.values(), zero(self.mode))
        with numeric_context():
            return mpmath.fsum(self.masses.values())

    def max_mass(self) -> Probability:
        return max(self.masses.values(), default=zero(self.mode))

    def pushforward(self, fn) -> Distribution:
        """ Image of this law under a map into another carrier; the carrier size is kept
            and should be replaced by the caller when the target differs. """
        out: Dict[Hashable, Probability] = {}
        with numeric_context() if self.mode == ArithmeticMode.numeric else nullcontext():
            for x, m in self.masses.items():
                y = fn(x)
                out[y] = out[y] + m if y in out else m
        return Distribution(out, self.carrier_size, self.mode)

    def with_carrier(self, carrier_size: int) -> Distribution:
        return Distribution(self.masses, carrier_size, self.mode)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Distribution):
            return NotImplemented
        return self.carrier_size == other.carrier_size and self.masses == other.masses

    def __repr__(self) -> str:
        return f"Distribution(support={self.support_size}/{self.carrier_size}, mode={self.mode.name})"
