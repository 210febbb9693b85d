""" Monte Carlo sampling of random subproducts, for demonstration next to the exact fold. """

from __future__ import annotations
from collections import Counter
from typing import Any, Dict, Hashable, NamedTuple
import logging

import numpy as np
from scipy.stats import chisquare

from .sequence import ClaimKind, MixingSequence

log = logging.getLogger("mixing.sampler")


class SampleReport(NamedTuple):
    counts: Dict[Hashable, int]
    chi_square: float
    p_value: float
    trials: int

    def to_document(self, encode) -> Dict[str, Any]:
        return {
            "trials": self.trials,
            "chi_square": self.chi_square,
            "p_value": self.p_value,
            "counts": [[encode(x), c] for x, c in self.counts.items()],
        }


def sample(seq: MixingSequence, trials: int, seed: int) -> SampleReport:
    """ Draws `trials` independent subproducts (or images of the base point, for an action
        claim) and tests the counts against the uniform law with a chi-square test over
        the whole carrier.
    """
    if trials < 1:
        raise ValueError(f"Number of trials must be positive, got {trials}")
    rng = np.random.default_rng(seed)
    probs = np.array([float(p) for p in seq.probabilities()], dtype=float)
    coins = rng.random((trials, len(seq.steps))) < probs
    group = seq.group
    elements = seq.elements()
    claim = seq.claim

    counts: Counter = Counter()
    for row in coins:
        if claim.kind == ClaimKind.action:
            assert claim.action is not None
            y = claim.base
            for i in range(len(elements) - 1, -1, -1):
                if row[i]:
                    y = claim.action.act(elements[i], y)
            counts[y] += 1
        else:
            x = group.identity
            for i, g in enumerate(elements):
                if row[i]:
                    x = group.multiply(x, g)
            counts[x] += 1

    carrier = claim.action.size() if claim.kind == ClaimKind.action and claim.action is not None else group.order
    if carrier == 1:
        statistic, p_value = 0.0, 1.0
    else:
        observed = np.zeros(carrier)
        observed[:len(counts)] = list(counts.values())
        statistic, p_value = chisquare(observed)
    log.debug(f"sampled {trials} subproducts over {group.name}: {len(counts)} distinct values, "
              f"chi-square {statistic:.3f}")
    return SampleReport(counts=dict(counts), chi_square=float(statistic), p_value=float(p_value), trials=trials)
