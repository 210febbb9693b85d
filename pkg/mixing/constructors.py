""" Constructions of mixing sequences for families of groups.

    Every `construct_*` function certifies its output before returning it: the sequence is
    folded exactly (or in numeric mode when some probability is irrational) and checked
    against its claim and its closed-form length bound. Passing `certify=False` skips the
    folds, which is how length-only tables are produced for groups too large to fold.
"""

from __future__ import annotations
from fractions import Fraction
from math import factorial
from typing import Any, Callable, Dict, List, NamedTuple, Optional, Tuple
import logging

import mpmath

from groups import (AlternatingGroup, CosetAction, CyclicGroup, DihedralGroup, Element, FiniteGroup, MatrixFamily,
                    MatrixGroup, NaturalAction, PairAction, ProjectiveAction, SignedPermutationGroup, Subgroup,
                    SymmetricGroup, get_field, perm_from_cycles, perm_multiply, perm_parity, perm_relabel, perm_shift,
                    subgroup_closure)

from .composers import coarsen_coset_claim, compose_extension
from .engine import VerificationReport, entropy_bound_ok, verify
from .probability import DEFAULT_TOLERANCE, ArithmeticMode, MixingError, Probability, format_probability, \
    numeric_context
from .sequence import Claim, ClaimKind, MixingSequence

log = logging.getLogger("mixing.constructors")

Bound = Fraction


class CertificationFailed(MixingError):
    pass


class ConstructionReport(NamedTuple):
    sequence: MixingSequence
    family: str
    bound: Bound
    bound_ok: bool
    mode: ArithmeticMode
    verification: Optional[VerificationReport] = None

    def to_document(self) -> Dict[str, Any]:
        return {
            "family": self.family,
            "length": self.sequence.length,
            "bound": format_probability(self.bound),
            "bound_ok": self.bound_ok,
            "mode": self.mode.name,
            "verification": None if self.verification is None else self.verification.to_document(),
        }


def floor_log2(n: int) -> int:
    return n.bit_length() - 1


def weight(n: int) -> int:
    return bin(n).count("1")


def certify_sequence(seq: MixingSequence, family: str, bound: Bound,
                     tolerance: float = DEFAULT_TOLERANCE) -> VerificationReport:
    """ Verifies a freshly built sequence against its claim, its length bound and the
        entropy bound, raising `CertificationFailed` on any violation. """
    report = verify(seq, tolerance=tolerance)
    if not report.uniform:
        raise CertificationFailed(f"{family} sequence over {seq.group.name} is not uniform, "
                                  f"max deviation {format_probability(report.max_dev)}")
    if seq.length > bound:
        raise CertificationFailed(f"{family} sequence has length {seq.length} above its bound {bound}")
    entropy_ok, entropy_lb = entropy_bound_ok(seq)
    assert entropy_ok, f"{family} sequence of length {seq.length} beats the entropy bound {entropy_lb}"
    log.info(f"certified {family} sequence of length {seq.length} over {seq.group.name} ({report.mode.name})")
    return report


def _finish(seq: MixingSequence, family: str, bound: Bound, check: bool) -> MixingSequence:
    if check:
        certify_sequence(seq, family, bound)
    return seq


def _check_positive(name: str, value: int, least: int = 1):
    if value < least:
        raise ValueError(f"{name} must be at least {least}, got {value}")


# -- cyclic and 2-groups

def cyclic_2group_bound(d: int) -> Bound:
    return Fraction(d)


def construct_cyclic_2group(d: int, certify: bool = True) -> MixingSequence:
    """ (1, 1/2), (2, 1/2), ..., (2^(d-1), 1/2) over Z/2^d """
    _check_positive("d", d, 0)
    group = CyclicGroup(2 ** d)
    seq = MixingSequence(group, [(2 ** j, Fraction(1, 2)) for j in range(d)])
    return _finish(seq, "cyclic-2group", cyclic_2group_bound(d), certify)


def _frattini(group: FiniteGroup, members: List[Element]) -> frozenset:
    gens = {group.multiply(g, g) for g in members}
    gens.update(group.commutator(a, b) for a in members for b in members)
    return subgroup_closure(group, sorted(gens, key=group.index_of))


def construct_2group_chain(group: FiniteGroup, certify: bool = True) -> MixingSequence:
    """ Walks down a chain of index-2 subgroups G = G_0 > G_1 > ... > G_t = 1 and picks a
        representative t_i of the non-trivial coset of G_{i+1} in G_i; the sequence is
        (t_0, 1/2), ..., (t_{t-1}, 1/2).

        Each G_{i+1} is found by taking K, the closure of squares and commutators of G_i,
        choosing elements of G_i that are independent modulo K, and closing K with all of
        them but the first.
    """
    order = group.order
    if order & (order - 1):
        raise ValueError(f"{group.name} has order {order}, not a power of 2")
    steps = []
    members = list(group.enumerate())
    while len(members) > 1:
        kernel = _frattini(group, members)
        basis: List[Element] = []
        span = kernel
        for g in members:
            if g not in span:
                basis.append(g)
                span = subgroup_closure(group, list(span) + [g])
        below = subgroup_closure(group, list(kernel) + basis[1:])
        assert 2 * len(below) == len(members)
        steps.append((basis[0], Fraction(1, 2)))
        members = sorted(below, key=group.index_of)
    seq = MixingSequence(group, steps)
    return _finish(seq, "2group-chain", Fraction(floor_log2(order)), certify)


# -- symmetric and alternating groups

def sym_adjacent_bound(n: int) -> Bound:
    return Fraction(n * (n - 1), 2)


def construct_sym_adjacent(n: int, certify: bool = True) -> MixingSequence:
    """ seq(n) = seq(n-1) ++ [((n-1 n), (n-1)/n), ((n-2 n-1), (n-2)/(n-1)), ..., ((1 2), 1/2)] """
    _check_positive("n", n)
    steps = []
    for k in range(2, n + 1):
        steps.extend((perm_from_cycles(n, (i, i + 1)), Fraction(i, i + 1)) for i in range(k - 1, 0, -1))
    seq = MixingSequence(SymmetricGroup(n), steps)
    return _finish(seq, "sym-adjacent", sym_adjacent_bound(n), certify)


def _binary_blocks(n: int) -> List[Tuple[int, int]]:
    """ (first point, size) of consecutive blocks of 1..n, one per binary digit of n, smallest first """
    blocks = []
    start = 1
    for bit in range(n.bit_length()):
        if n >> bit & 1:
            blocks.append((start, 1 << bit))
            start += 1 << bit
    return blocks


def _point_mixer_steps(n: int, even: bool) -> List[Tuple[Element, Fraction]]:
    """ Steps moving the point 1 uniformly over 1..n, in product order.

        Acting first (listed last), stage I sends the point to the first point of block
        B_k with probability |B_k|/n, one transposition (1, first(B_k)) per block after the
        first. Stage II then spreads the point within its block bit by bit: the step for
        bit j swaps the offsets o and o + 2^j in every block of size above 2^j.

        With `even` all steps are even permutations: stage I transpositions are multiplied
        by (n-1 n), the block of size 2 (if any) leaves the bit 0 step and gets its own
        step (a b)(n-1 n) acting last. Requires the largest block to have size at least 4.
    """
    blocks = _binary_blocks(n)
    tail = (n - 1, n)
    stage_one = []
    moved = 0
    for start, size in blocks[1:]:
        cycles = [(1, start), tail] if even else [(1, start)]
        stage_one.append((perm_from_cycles(n, *cycles), Fraction(size, n - moved)))
        moved += size

    stage_two = []
    small = None
    for bit in range(floor_log2(n) if n > 0 else 0):
        shift = 1 << bit
        pairs = []
        for start, size in blocks:
            if size <= shift:
                continue
            if even and size == 2:
                small = (start, start + 1)
                continue
            pairs.extend((start + o, start + o + shift) for o in range(size) if not o & shift)
        stage_two.append((perm_from_cycles(n, *pairs), Fraction(1, 2)))

    steps = []
    if small is not None:
        steps.append((perm_from_cycles(n, small, tail), Fraction(1, 2)))
    steps.extend(reversed(stage_two))
    steps.extend(reversed(stage_one))
    return steps


def sym_action_bound(n: int) -> Bound:
    return Fraction(floor_log2(n) + weight(n) - 1)


def construct_sym_action(n: int, certify: bool = True) -> MixingSequence:
    """ Mixes the natural action of S_n on 1..n from the point 1. """
    _check_positive("n", n)
    group = SymmetricGroup(n)
    claim = Claim.on_action(NaturalAction(group), 1)
    seq = MixingSequence(group, _point_mixer_steps(n, even=False), claim)
    return _finish(seq, "sym-action", sym_action_bound(n), certify)


def sym_fast_bound(n: int) -> Bound:
    return Fraction(3, 2) * floor_log2(factorial(n)) + Fraction(n, 2)


def construct_sym_fast(n: int, certify: bool = True) -> MixingSequence:
    """ Mixes S_n by composing the point mixer of S_n with a copy of the S_{n-1} mixer
        on the points 2..n, the stabilizer of 1.
    """
    _check_positive("n", n)
    group = SymmetricGroup(n)
    if n == 1:
        return MixingSequence(group, [])
    sigma_t = MixingSequence(group, _point_mixer_steps(n, even=False))
    sub = construct_sym_fast(n - 1, certify=False)
    sigma_h = sub.mapped(group, lambda g: perm_shift(g, 1, n))
    if certify:
        stabilizer = Subgroup.from_predicate(factorial(n - 1), lambda g: g[0] == 1)
        seq = compose_extension(group, stabilizer, sigma_t, sigma_h, NaturalAction(group), 1)
    else:
        seq = sigma_t.concatenated(sigma_h)
    return _finish(seq, "sym-fast", sym_fast_bound(n), certify)


def alt_action_bound(n: int) -> Bound:
    return Fraction(floor_log2(n) + weight(n))


def construct_alt_action(n: int, certify: bool = True) -> MixingSequence:
    """ Mixes the natural action of A_n from the point 1 using even permutations only. """
    if n < 5:
        raise ValueError(f"The even point mixer needs n >= 5, got {n}")
    return _alt_action(n, certify)


def _alt_action(n: int, certify: bool) -> MixingSequence:
    group = AlternatingGroup(n)
    claim = Claim.on_action(NaturalAction(group), 1)
    seq = MixingSequence(group, _point_mixer_steps(n, even=True), claim)
    return _finish(seq, "alt-action", alt_action_bound(n), certify)


def alt_full_bound(n: int) -> Bound:
    return sym_fast_bound(n)


def construct_alt_full(n: int, certify: bool = True) -> MixingSequence:
    """ Mixes A_n for n >= 5.

        u mixes the point n over 1..n, v mixes the point n-1 over 1..n-1 while fixing n, so
        u ++ v mixes the ordered pairs from (n, n-1), and with them the cosets of
        H = {s·(n-1 n)^parity(s) : s in S_{n-2}}, the stabilizer of the set {n-1, n}. A copy
        of the S_{n-2} mixer inside H completes the sequence.
    """
    if n < 5:
        raise ValueError(f"A_n is mixable only for n >= 5, got {n}")
    group = AlternatingGroup(n)
    flip_top = {i: n + 1 - i for i in range(1, n + 1)}
    flip_rest = {i: (n - i if i < n else n) for i in range(1, n + 1)}
    u = [(perm_relabel(g, flip_top), p) for g, p in _alt_action(n, certify=False)]
    v = [(perm_relabel(perm_shift(g, 0, n), flip_rest), p) for g, p in _alt_action(n - 1, certify=False)]
    sigma_t = MixingSequence(group, u + v)

    swap = perm_from_cycles(n, (n - 1, n))

    def embed(s: Element) -> Element:
        lifted = perm_shift(s, 0, n)
        return perm_multiply(lifted, swap) if perm_parity(s) else lifted

    sub = construct_sym_fast(n - 2, certify=False)
    sigma_h = sub.mapped(group, embed)
    if certify:
        stabilizer = [embed(s) for s in SymmetricGroup(n - 2).enumerate()]
        seq = compose_extension(group, stabilizer, sigma_t, sigma_h)
    else:
        seq = sigma_t.concatenated(sigma_h)
    return _finish(seq, "alt-full", alt_full_bound(n), certify)


# -- dihedral, Coxeter and PSL_2 groups

def _odd_part(n: int) -> Tuple[int, int]:
    t = 0
    while n % 2 == 0:
        n //= 2
        t += 1
    return t, n


def dihedral_bound(n: int) -> Bound:
    t, m = _odd_part(n)
    return Fraction(t + m)


def _reflection_probability(j: int, s: int, m: int) -> Probability:
    """ 1/(1 - cos(4 pi j s / m)), exact when the cosine is -1/2 """
    r = Fraction(2 * j * s, m) % 1
    if r in (Fraction(1, 3), Fraction(2, 3)):
        return Fraction(2, 3)
    with numeric_context():
        alpha = mpmath.cos(2 * mpmath.pi * mpmath.mpf(r.numerator) / r.denominator)
        return 1 / (1 - alpha)


def dihedral_steps(n: int) -> List[Tuple[Element, Probability]]:
    """ Steps of the D_n mixer for n = 2^t·m with m odd.

        The first 2k+1 steps, k = (m-1)/2, mix the quotient D_m: τ, g_1, τ, ..., g_k, τ,
        where g_j = σ^s τ σ^-s = σ^2s τ for the least s with cos(4πjs/m) < 0. The triple
        τ, g_j, τ annihilates the j-th rotation representation of D_m, and τ alone the
        sign character. The last t steps (σ^(m·2^i), 1/2) mix the kernel <σ^m>.
    """
    t, m = _odd_part(n)
    half = Fraction(1, 2)
    tau = (0, 1)
    steps: List[Tuple[Element, Probability]] = [(tau, half)]
    for j in range(1, (m - 1) // 2 + 1):
        s = next(s for s in range(1, m) if Fraction(1, 4) < Fraction(2 * j * s, m) % 1 < Fraction(3, 4))
        steps.append((((2 * s) % n, 1), _reflection_probability(j, s, m)))
        steps.append((tau, half))
    steps.extend((((m << i) % n, 0), half) for i in range(t))
    return steps


def construct_dihedral(n: int, certify: bool = True) -> MixingSequence:
    _check_positive("n", n)
    seq = MixingSequence(DihedralGroup(n), dihedral_steps(n))
    if seq.mode == ArithmeticMode.numeric:
        log.warning(f"D_{n} mixer has irrational probabilities, it is verified in numeric mode")
    return _finish(seq, "dihedral", dihedral_bound(n), certify)


def signed_perm_bound(n: int, even_only: bool) -> Bound:
    return sym_fast_bound(n) + (n - 1 if even_only else n)


def construct_signed_perm(n: int, even_only: bool = False, certify: bool = True) -> MixingSequence:
    """ Mixes B_n (or D_n with `even_only`): a lifted S_n mixer for the quotient by the
        sign changes, then the sign changes themselves, single flips for B_n and adjacent
        double flips for D_n, each with probability 1/2.
    """
    _check_positive("n", n, 2)
    group = SignedPermutationGroup(n, even_only)
    lifted = construct_sym_fast(n, certify=False).mapped(group, group.lift)
    if even_only:
        flips = [group.flip(i, i + 1) for i in range(1, n)]
    else:
        flips = [group.flip(i) for i in range(1, n + 1)]
    seq = lifted.concatenated(MixingSequence(group, [(f, Fraction(1, 2)) for f in flips]))
    return _finish(seq, "coxeter-d" if even_only else "coxeter-b", signed_perm_bound(n, even_only), certify)


def psl2_bound(e: int) -> Bound:
    return Fraction(2 * e + 2 ** e)


def psl2_pairs_mixer(e: int) -> MixingSequence:
    """ h, (w, 1 - 1/(q+1)), h' where h and h' are the unipotent mixers
        [[1, x^i], [0, 1]] @ 1/2 over the basis of F_q, q = 2^e, and w is the antidiagonal
        involution. It mixes the ordered pairs of distinct points of the projective line
        from ([1:0], [0:1]).
    """
    group = MatrixGroup(MatrixFamily.PSL, 2, get_field(2, e))
    q = group.field.q
    unipotent = [(group.unipotent(1 << i), Fraction(1, 2)) for i in range(e)]
    w = group.validate((0, 1, 1, 0))
    pairs = PairAction(ProjectiveAction(group))
    claim = Claim.on_action(pairs, ((1, 0), (0, 1)))
    return MixingSequence(group, unipotent + [(w, 1 - Fraction(1, q + 1))] + unipotent, claim)


def construct_psl2_char2(e: int, certify: bool = True) -> MixingSequence:
    """ Mixes PSL_2(F_2^e).

        The pairs mixer mixes the cosets of the diagonal subgroup H, the stabilizer of
        ([1:0], [0:1]), hence the cosets of K = <H, w>, which is dihedral of order
        2(q-1). The D_{q-1} mixer sent into K by σ^r τ^f -> diag(β^r, β^-r) w^f, with β the
        primitive element of the field, completes the sequence.
    """
    _check_positive("e", e)
    pairs_mixer = psl2_pairs_mixer(e)
    group: MatrixGroup = pairs_mixer.group  # type: ignore
    field = group.field
    beta = field.generator
    w = group.validate((0, 1, 1, 0))

    def embed(g: Tuple[int, int]) -> Element:
        r, f = g
        diagonal = group.diagonal(field.pow(beta, r), field.pow(beta, -r))
        return group.multiply(diagonal, w) if f else diagonal

    dihedral = MixingSequence(DihedralGroup(field.q - 1), dihedral_steps(field.q - 1))
    sigma_k = dihedral.mapped(group, embed)
    if certify:
        report = verify(pairs_mixer)
        if not report.uniform:
            raise CertificationFailed(f"PSL_2(F_{field.q}) pairs mixer is not uniform")
        diagonal = [group.diagonal(a, field.inv(a)) for a in field.nonzero()]
        k = subgroup_closure(group, diagonal + [w])
        coset_mixer = coarsen_coset_claim(pairs_mixer.with_claim(
            Claim(ClaimKind.action, CosetAction(group, diagonal), 0)), k)
        seq = compose_extension(group, k, coset_mixer.with_claim(Claim.on_group()), sigma_k)
    else:
        seq = pairs_mixer.with_claim(Claim.on_group()).concatenated(sigma_k)
    return _finish(seq, "psl2", psl2_bound(e), certify)


# -- registry

class Family(NamedTuple):
    """ A constructor together with its closed-form length bound and its group. """
    build: Callable[..., MixingSequence]
    bound: Callable[..., Bound]
    group: Callable[..., FiniteGroup]
    params: Tuple[str, ...]


FAMILIES: Dict[str, Family] = {
    "cyclic-2group": Family(construct_cyclic_2group, cyclic_2group_bound, lambda d: CyclicGroup(2 ** d), ("d",)),
    "sym-adjacent": Family(construct_sym_adjacent, sym_adjacent_bound, SymmetricGroup, ("n",)),
    "sym-action": Family(construct_sym_action, sym_action_bound, SymmetricGroup, ("n",)),
    "sym-fast": Family(construct_sym_fast, sym_fast_bound, SymmetricGroup, ("n",)),
    "alt-action": Family(construct_alt_action, alt_action_bound, AlternatingGroup, ("n",)),
    "alt-full": Family(construct_alt_full, alt_full_bound, AlternatingGroup, ("n",)),
    "dihedral": Family(construct_dihedral, dihedral_bound, DihedralGroup, ("n",)),
    "coxeter-b": Family(lambda n, certify=True: construct_signed_perm(n, False, certify),
                        lambda n: signed_perm_bound(n, False), lambda n: SignedPermutationGroup(n, False), ("n",)),
    "coxeter-d": Family(lambda n, certify=True: construct_signed_perm(n, True, certify),
                        lambda n: signed_perm_bound(n, True), lambda n: SignedPermutationGroup(n, True), ("n",)),
    "psl2": Family(construct_psl2_char2, psl2_bound,
                   lambda e: MatrixGroup(MatrixFamily.PSL, 2, get_field(2, e)), ("e",)),
}


def construct(family: str, certify: bool = True, tolerance: float = DEFAULT_TOLERANCE,
              **params: int) -> ConstructionReport:
    """ Builds the sequence of a registered family and reports it against its bound. """
    if family not in FAMILIES:
        raise ValueError(f"Unknown family {family!r}, expected one of {sorted(FAMILIES)}")
    spec = FAMILIES[family]
    missing = [p for p in spec.params if p not in params]
    if missing:
        raise ValueError(f"Family {family} needs parameters {missing}")
    args = [params[p] for p in spec.params]
    seq = spec.build(*args, certify=False)
    bound = spec.bound(*args)
    report = certify_sequence(seq, family, bound, tolerance) if certify else None
    return ConstructionReport(sequence=seq, family=family, bound=bound, bound_ok=seq.length <= bound,
                              mode=seq.mode, verification=report)
