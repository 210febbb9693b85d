""" Mixing sequences of single representations.

    A sequence (g_1, p_1), ..., (g_k, p_k) mixes a representation ρ when the product
    ((1-p_1) I + p_1 ρ(g_1)) ... ((1-p_k) I + p_k ρ(g_k)) vanishes. Concatenating mixers of
    all nontrivial irreducible representations of a group mixes the group itself.

    The constructions here cover:
        - an element acting as -I: one step (a, 1/2)
        - an element whose -1 eigenspace has codimension 1: three steps
        - real 3-dimensional representations: at most seven steps
"""

from __future__ import annotations
from fractions import Fraction
from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Tuple
import logging

import mpmath

from groups import DihedralGroup, Element, subgroup_closure
from mixing import (DEFAULT_TOLERANCE, CertificationFailed, Claim, MixingSequence, Probability, format_probability,
                    numeric_context, verify)

from .matrix_rep import MatrixRep, RepError, dihedral_irreps

log = logging.getLogger("reps.rep_mixer")

Steps = List[Tuple[Element, Probability]]

HALF = Fraction(1, 2)


class NoWitness(RepError):
    pass


class UnsupportedShape(RepError):
    pass


class RepMixingSequence(NamedTuple):
    steps: Steps
    residual: Any

    @property
    def length(self) -> int:
        return len(self.steps)

    def mixed(self, tolerance: float = DEFAULT_TOLERANCE) -> bool:
        return self.residual < tolerance

    def to_document(self, rep: MatrixRep) -> Dict[str, Any]:
        return {
            "steps": [{"g": rep.group.encode(g), "p": format_probability(p)} for g, p in self.steps],
            "residual": format_probability(self.residual),
        }


@numeric_context()
def verify_rep_sequence(rep: MatrixRep, steps: Iterable[Tuple[Element, Probability]]):
    """ Frobenius norm of the ordered product of the step matrices. """
    product = mpmath.eye(rep.dim)
    for g, p in steps:
        product = product * rep.step_matrix(g, p)
    return mpmath.mnorm(product, 'f')


@numeric_context()
def potential_mixability_witness(rep: MatrixRep) -> Optional[Element]:
    """ An element of 2-power order whose image has -1 as an eigenvalue, if there is one. """
    group = rep.group
    for g in group.enumerate():
        if abs(mpmath.det(mpmath.eye(rep.dim) + rep(g))) < rep.tolerance:
            order = group.element_order(g)
            while order % 2 == 0:
                order //= 2
            return group.power(g, order)
    return None


def _minus_one_multiplicity(rep: MatrixRep, g: Element) -> int:
    """ Multiplicity of -1 for an involutive image: the trace of (I - ρ(g))/2. """
    return int(mpmath.nint(mpmath.re(rep.dim - sum(rep(g)[i, i] for i in range(rep.dim))) / 2))


def _involutive_witnesses(rep: MatrixRep) -> List[Tuple[int, Element]]:
    eye = mpmath.eye(rep.dim)
    found = []
    for g in rep.group.enumerate():
        m = rep(g)
        if mpmath.mnorm(m * m - eye, 'f') < rep.tolerance and mpmath.mnorm(m - eye, 'f') > rep.tolerance:
            found.append((_minus_one_multiplicity(rep, g), g))
    return found


def _unit(v: mpmath.matrix) -> mpmath.matrix:
    return v / mpmath.norm(v)


def _inner(u: mpmath.matrix, v: mpmath.matrix):
    """ <u, v> = v^H u """
    return (v.H * u)[0, 0]


def _fixed_vector(rep: MatrixRep, a: Element) -> mpmath.matrix:
    """ A unit vector of the fixed space of ρ(a), ρ(a) involutive. """
    projector = (mpmath.eye(rep.dim) + rep(a)) / 2
    columns = [projector[:, j] for j in range(rep.dim)]
    return _unit(max(columns, key=mpmath.norm))


def _probability(alpha) -> Probability:
    """ 1/(1 - alpha), exactly 1/2 when alpha is -1 """
    if abs(alpha + 1) < 1e-30:
        return HALF
    return 1 / (1 - alpha)


def _corank_one_steps(rep: MatrixRep, a: Element, u: mpmath.matrix, members: Iterable[Element]) -> Steps:
    """ (a, 1/2), (h a h^-1, 1/(1 - α)), (a, 1/2) where u spans the fixed space of ρ(a)
        (within the subspace of interest) and α = <ρ(h a h^-1) u, u> is the least value
        over h in `members`, which is negative for irreducible representations.
    """
    group = rep.group
    best = None
    for h in members:
        c = group.conjugate(a, h)
        alpha = mpmath.re(_inner(rep(c) * u, u))
        if best is None or alpha < best[0] - rep.tolerance:
            best = (alpha, c)
    if best is None or best[0] >= 0:
        raise UnsupportedShape("No conjugate of the witness moves its fixed vector to a negative angle; "
                               "the representation is reducible")
    alpha, c = best
    return [(a, HALF), (c, _probability(alpha)), (a, HALF)]


@numeric_context()
def kill_vector_step(rep: MatrixRep, v: mpmath.matrix) -> Tuple[Element, Probability]:
    """ (g, p) such that (1 - p) I + p ρ(g) maps v into its orthogonal complement. The
        element minimizes α = <ρ(g) v, v> for the unit vector v, so α <= 0 for any
        nontrivial irreducible representation, and p = 1/(1 - α).
    """
    if mpmath.norm(v) < rep.tolerance:
        raise ValueError("Cannot send the zero vector to its orthogonal complement")
    v = _unit(v)
    best = None
    for g in rep.group.enumerate():
        alpha = mpmath.re(_inner(rep(g) * v, v))
        if best is None or alpha < best[0] - rep.tolerance:
            best = (alpha, g)
    assert best is not None
    alpha, g = best
    if alpha > rep.tolerance:
        raise UnsupportedShape("Every image keeps the vector at an acute angle; the representation is reducible "
                               "or trivial")
    return g, _probability(alpha)


def _cross(u: mpmath.matrix, v: mpmath.matrix) -> mpmath.matrix:
    return mpmath.matrix([u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]])


@numeric_context()
def mix_real_3dim(rep: MatrixRep, a: Element) -> Steps:
    """ Mixes a real irreducible 3-dimensional representation from an element a with
        ρ(a) a reflection: fixed plane U, normal n.

        For g with gU != U the line U_0 = U ∩ gU is fixed by H = <a, g a g^-1>, which acts
        irreducibly on the plane U_0^⊥; three steps in H annihilate U_0^⊥ and fix U_0, one
        step sends U_0 into U_0^⊥, and the same three steps finish.
    """
    if rep.dim != 3 or not rep.is_real():
        raise UnsupportedShape("mix_real_3dim needs a real 3-dimensional representation")
    group = rep.group
    if _minus_one_multiplicity(rep, a) != 1:
        raise UnsupportedShape(f"ρ({group.encode(a)}) is not a reflection")
    normal = _unit(mpmath.matrix([mpmath.re(x) for x in _fixed_vector_of_minus(rep, a)]))
    g = next((g for g in group.enumerate()
              if abs(_inner(rep(g) * normal, normal)) < 1 - rep.tolerance), None)
    if g is None:
        raise UnsupportedShape("Every image preserves the reflection plane; the representation is reducible")
    moved = rep(g) * normal
    moved = mpmath.matrix([mpmath.re(x) for x in moved])
    line = _unit(_cross(normal, moved))
    inside = _unit(_cross(line, normal))

    subgroup = subgroup_closure(group, [a, group.conjugate(a, g)])
    annihilator = _corank_one_steps(rep, a, inside, sorted(subgroup, key=group.index_of))
    kill = kill_vector_step(rep, line)
    return annihilator + [kill] + annihilator


def _fixed_vector_of_minus(rep: MatrixRep, a: Element) -> mpmath.matrix:
    """ A column of (I - ρ(a))/2 of maximal norm, a nonzero vector of the -1 eigenspace up to scaling. """
    projector = (mpmath.eye(rep.dim) - rep(a)) / 2
    columns = [projector[:, j] for j in range(rep.dim)]
    return max(columns, key=mpmath.norm)


@numeric_context()
def mix_rep(rep: MatrixRep, tolerance: float = DEFAULT_TOLERANCE) -> RepMixingSequence:
    """ Mixes a nontrivial irreducible representation, picking the involutive image with
        the largest -1 eigenspace:
            ρ(a) = -I: [(a, 1/2)]
            -1 of multiplicity d - 1: three steps
            real, d = 3, ρ(a) a reflection: seven steps
    """
    witnesses = _involutive_witnesses(rep)
    if not witnesses:
        raise NoWitness(f"No element of {rep.group.name} has -1 as an eigenvalue in this representation")
    mult, a = max(witnesses, key=lambda w: w[0])
    d = rep.dim
    if mult == d:
        steps: Steps = [(a, HALF)]
    elif mult == d - 1:
        steps = _corank_one_steps(rep, a, _fixed_vector(rep, a), rep.group.enumerate())
    elif d == 3 and rep.is_real():
        steps = mix_real_3dim(rep, a)
    else:
        raise UnsupportedShape(f"No construction for dimension {d} with a -1 eigenspace of dimension {mult}")
    residual = verify_rep_sequence(rep, steps)
    if residual >= tolerance:
        raise RepError(f"The {len(steps)}-step product has residual norm {mpmath.nstr(residual, 5)}")
    log.debug(f"mixed a {d}-dimensional representation of {rep.group.name} in {len(steps)} steps")
    return RepMixingSequence(steps, residual)


def construct_dihedral_from_irreps(m: int, tolerance: float = DEFAULT_TOLERANCE) -> MixingSequence:
    """ Mixes D_m, m odd, by concatenating mixers of all its nontrivial irreducible
        representations; the group-level fold certifies the result.
    """
    if m < 1 or m % 2 == 0:
        raise ValueError(f"The irreducible route is built for odd m, got {m}")
    steps: Steps = []
    for rep in dihedral_irreps(m):
        steps.extend(mix_rep(rep, tolerance).steps)
    seq = MixingSequence(DihedralGroup(m), steps, Claim.on_group())
    report = verify(seq, tolerance=tolerance)
    if not report.uniform:
        raise CertificationFailed(f"Irreducible mixers of D_{m} do not mix the group, "
                                  f"max deviation {format_probability(report.max_dev)}")
    return seq
