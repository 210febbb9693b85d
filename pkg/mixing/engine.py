""" This module contains the exact verification core: laws of random subproducts over
    groups and over action point sets, uniformity checks and the entropy lower bound.

    A law is folded step by step. For a group claim the fold runs left to right from the
    point mass at the identity, each step multiplying on the right:
        mu'(x) = (1 - p) mu(x) + p mu(x g^-1).
    For an action claim the fold runs right to left from the point mass at the base point,
    since the rightmost factor acts first:
        nu'(y) = (1 - p) nu(y) + p nu(g^-1 y).
"""

from __future__ import annotations
from contextlib import nullcontext
from fractions import Fraction
from typing import Any, Dict, Hashable, Iterable, NamedTuple, Optional, Tuple
import logging

import mpmath
from tqdm import tqdm

from groups import FiniteGroup, GroupAction

from .distribution import Distribution
from .probability import (DEFAULT_TOLERANCE, ArithmeticMode, ModeMismatch, Probability, format_probability,
                          numeric_context, to_mode, zero)
from .sequence import ClaimKind, MixingSequence, MixingStep

log = logging.getLogger("mixing.engine")

SHOW_PROGRESS = False


def set_progress(enabled: bool):
    global SHOW_PROGRESS
    SHOW_PROGRESS = enabled


def progress_bar(iterable: Iterable, **kwargs) -> Iterable:
    return tqdm(iterable, disable=not SHOW_PROGRESS, **kwargs)


def _arith(mode: ArithmeticMode):
    return numeric_context() if mode == ArithmeticMode.numeric else nullcontext()


def _push(mu: Distribution, p: Probability, move) -> Distribution:
    """ Keeps mass (1 - p) in place and moves mass p along `move`. """
    if p == 0:
        return mu
    out: Dict[Hashable, Probability] = {}
    if p == 1:
        for x, m in mu.masses.items():
            y = move(x)
            out[y] = out[y] + m if y in out else m
        return Distribution(out, mu.carrier_size, mu.mode)
    q = 1 - p
    for x, m in mu.masses.items():
        stay = q * m
        out[x] = out[x] + stay if x in out else stay
        y = move(x)
        go = p * m
        out[y] = out[y] + go if y in out else go
    return Distribution(out, mu.carrier_size, mu.mode)


def convolve_step(group: FiniteGroup, mu: Distribution, step: MixingStep) -> Distribution:
    """ The law of X·g^e for X ~ mu and e ~ Ber(p) independent. """
    g, p = step
    p = to_mode(p, mu.mode)
    if g == group.identity:
        return mu
    mul = group.multiply
    with _arith(mu.mode):
        return _push(mu, p, lambda x: mul(x, g))


def act_step(action: GroupAction, nu: Distribution, step: MixingStep) -> Distribution:
    """ The law of g^e·Y for Y ~ nu. """
    g, p = step
    p = to_mode(p, nu.mode)
    if g == action.group.identity:
        return nu
    act = action.act
    with _arith(nu.mode):
        return _push(nu, p, lambda y: act(g, y))


def sequence_law(seq: MixingSequence, mode: Optional[ArithmeticMode] = None) -> Distribution:
    """ Law of g_1^e_1 ... g_k^e_k over the group. """
    mode = seq.mode if mode is None else mode
    group = seq.group
    mu = Distribution.delta(group.identity, group.order, mode)
    for step in progress_bar(seq.steps, desc="Folding steps", leave=False):
        mu = convolve_step(group, mu, step)
    return mu


def action_law(seq: MixingSequence, action: GroupAction, base: Any,
               mode: Optional[ArithmeticMode] = None) -> Distribution:
    """ Law of g_1^e_1 ... g_k^e_k · base over the points of `action`. """
    mode = seq.mode if mode is None else mode
    base = action.validate_point(base)
    nu = Distribution.delta(base, action.size(), mode)
    for step in progress_bar(list(reversed(seq.steps)), desc="Folding steps", leave=False):
        nu = act_step(action, nu, step)
    return nu


def is_uniform(mu: Distribution, tolerance: float = DEFAULT_TOLERANCE) -> Tuple[bool, Probability]:
    """ (uniform?, max over the carrier of |mu(x) - 1/N|). Exact laws must be uniform
        exactly, numeric laws within `tolerance`.
    """
    n = mu.carrier_size
    with _arith(mu.mode):
        target = Fraction(1, n) if mu.mode == ArithmeticMode.exact else mpmath.mpf(1) / n
        dev = zero(mu.mode)
        for m in mu.masses.values():
            d = abs(m - target)
            if d > dev:
                dev = d
        if mu.support_size < n and target > dev:
            dev = target
        if mu.mode == ArithmeticMode.exact:
            return dev == 0, dev
        return bool(dev <= tolerance), dev


def entropy_bound(order: int) -> int:
    """ ceil(log2 |G|): a subproduct of length k takes at most 2^k values. """
    return (order - 1).bit_length()


def carrier_size(seq: MixingSequence) -> int:
    if seq.claim.kind == ClaimKind.action:
        assert seq.claim.action is not None
        return seq.claim.action.size()
    return seq.group.order


def entropy_bound_ok(seq: MixingSequence) -> Tuple[bool, int]:
    """ Whether `seq` is long enough to mix its claimed carrier at all, with the bound. """
    bound = entropy_bound(carrier_size(seq))
    return seq.length >= bound, bound


class VerificationReport(NamedTuple):
    uniform: bool
    max_dev: Probability
    support: int
    length: int
    entropy_lb: int
    mode: ArithmeticMode

    def to_document(self) -> Dict[str, Any]:
        return {
            "uniform": self.uniform,
            "max_dev": format_probability(self.max_dev),
            "support": self.support,
            "length": self.length,
            "entropy_lb": self.entropy_lb,
            "mode": self.mode.name,
        }


def claim_law(seq: MixingSequence, mode: Optional[ArithmeticMode] = None) -> Distribution:
    """ The law the claim of `seq` is about: over the group, or over the claimed action. """
    if seq.claim.kind == ClaimKind.action:
        assert seq.claim.action is not None
        return action_law(seq, seq.claim.action, seq.claim.base, mode)
    return sequence_law(seq, mode)


def verify(seq: MixingSequence, mode: Optional[ArithmeticMode] = None,
           tolerance: float = DEFAULT_TOLERANCE) -> VerificationReport:
    """ Checks the claim of `seq` by an exact (or extended precision) fold.

        The mode defaults to the sequence's natural mode: exact when every probability is
        rational. Asking for exact mode on a sequence with decimal probabilities raises
        `ModeMismatch`.
    """
    natural = seq.mode
    mode = natural if mode is None else mode
    if mode == ArithmeticMode.exact and natural != ArithmeticMode.exact:
        raise ModeMismatch("The sequence has decimal probabilities, it can only be verified in numeric mode")
    law = claim_law(seq, mode)
    uniform, dev = is_uniform(law, tolerance)
    carrier = law.carrier_size
    report = VerificationReport(uniform=uniform, max_dev=dev, support=law.support_size, length=seq.length,
                                entropy_lb=entropy_bound(carrier), mode=mode)
    log.debug(f"verified {seq.length} steps over {seq.group.name}: uniform={uniform}, "
              f"max_dev={format_probability(dev)}")
    return report
