""" Exhaustive search for mixing sequences whose probabilities come from a finite grid.

    Lengths are deepened from the entropy bound ceil(log2 |G|) up to the configured
    maximum. At each length a depth first search walks (element, probability) choices
    while folding the exact law of the prefix, and prunes a prefix when
        - its support can no longer double up to |G| in the remaining steps,
        - its largest mass cannot drop to 1/|G|: every step keeps at least a factor
          c = min over the grid of max(p, 1 - p) of the largest mass,
        - a left translate of the same law with the same number of remaining steps
          already failed (h·X completes to uniform exactly when X does).
    Identity steps are never tried, and the first element ranges over conjugacy class
    representatives only, since conjugating a mixing sequence keeps it mixing.

    Two structural rules settle many groups before the walk. A step (g, p) is singular on
    a nontrivial irreducible representation only when p = 1/2 and g has even order, and
    a uniform law needs a singular factor on each of them: without 1/2 in the grid or an
    element of even order nothing mixes. A mixing sequence also maps onto a mixing
    sequence, no longer, of every quotient G/N, so the quotients by the normal closures of
    the conjugacy classes are searched first: one exhausted quotient exhausts G, and the
    longest shortest length among them raises the starting length.

    A search that finds nothing at length L certifies that no sequence of length <= L
    with probabilities in the grid mixes the group. It says nothing about other
    probabilities.
"""

from __future__ import annotations
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from threading import Lock
from typing import Any, Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Set, Tuple
import logging

from groups import (Element, EnumerationBoundExceeded, FiniteGroup, conjugacy_classes, quotient_group,
                    subgroup_closure)
from mixing import (Claim, Distribution, MixingSequence, MixingStep, convolve_step, entropy_bound, format_probability,
                    is_uniform, progress_bar, verify)
from structure import odd_quotient_witness

log = logging.getLogger("search.grid_search")

# failed (law, remaining length) pairs kept in memory
MEMO_CAPACITY = 2 ** 20

DEFAULT_MAX_ORDER = 10 ** 4

HALF = Fraction(1, 2)


class SearchError(Exception):
    pass


class EmptyGrid(SearchError):
    pass


class InvalidGrid(SearchError):
    pass


class SequenceFound(SearchError):
    """ Raised by `certify_no_mixing` when the grid does allow a mixing sequence. """

    def __init__(self, msg: str, sequence: MixingSequence):
        super().__init__(msg)
        self.sequence = sequence


def validate_grid(grid: Iterable[Any]) -> Tuple[Fraction, ...]:
    """ Sorted distinct grid values; each must be an exact rational strictly between 0 and 1. """
    values = set()
    for p in grid:
        if isinstance(p, bool) or not isinstance(p, (Fraction, int)):
            raise InvalidGrid(f"Grid value {p!r} is not an exact rational")
        p = Fraction(p)
        if not 0 < p < 1:
            raise InvalidGrid(f"Grid value {format_probability(p)} is not strictly between 0 and 1")
        values.add(p)
    if not values:
        raise EmptyGrid("The probability grid is empty")
    return tuple(sorted(values))


def parse_grid(text: str) -> Tuple[Fraction, ...]:
    """ "1/2,1/3,2/3" -> (1/3, 1/2, 2/3) """
    values = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            values.append(Fraction(item))
        except (ValueError, ZeroDivisionError):
            raise InvalidGrid(f"Cannot read grid value {item!r}")
    return validate_grid(values)


class SearchConfig(NamedTuple):
    grid: Tuple[Fraction, ...]
    max_length: int
    first_step_classes: bool = True
    threads: int = 1
    endpoint_rule: bool = False
    max_order: int = DEFAULT_MAX_ORDER
    structural_pruning: bool = True


class SearchResult(NamedTuple):
    sequence: Optional[MixingSequence]
    length: Optional[int]
    grid: Tuple[Fraction, ...]
    max_length: int
    nodes: int
    support_pruned: int
    mass_pruned: int
    memo_hits: int
    singular_pruned: int = 0
    quotient_floor: int = 0
    exhausted_quotient: Optional[int] = None

    @property
    def exhausted(self) -> bool:
        return self.sequence is None

    def to_document(self) -> Dict[str, Any]:
        return {
            "outcome": "exhausted" if self.exhausted else "found",
            "length": self.length,
            "grid": [format_probability(p) for p in self.grid],
            "max_length": self.max_length,
            "sequence": None if self.sequence is None else self.sequence.to_document(),
            "nodes": self.nodes,
            "pruned": {"support": self.support_pruned, "mass": self.mass_pruned, "memo": self.memo_hits,
                       "singular": self.singular_pruned},
            "quotient_floor": self.quotient_floor,
            "exhausted_quotient": self.exhausted_quotient,
        }


class NoMixingCertificate(NamedTuple):
    group: str
    grid: Tuple[Fraction, ...]
    max_length: int
    nodes: int
    odd_quotient: Optional[int]

    def to_document(self) -> Dict[str, Any]:
        return {
            "group": self.group,
            "grid": [format_probability(p) for p in self.grid],
            "max_length": self.max_length,
            "nodes": self.nodes,
            "odd_quotient": self.odd_quotient,
        }


Fingerprint = Tuple[Tuple[Tuple[int, Fraction], ...], int]


class _Search:
    """ State shared by the branches of one search: the memo of failed prefixes, the
        counters, and the index of the leftmost root branch that found a sequence.
    """

    def __init__(self, group: FiniteGroup, config: SearchConfig):
        self.group = group
        self.config = config
        self.order = group.order
        self.target = Fraction(1, group.order)
        self.shrink = min(max(p, 1 - p) for p in config.grid)
        self.elements = [g for g in group.enumerate() if g != group.identity]
        self.even = [g for g in self.elements if group.element_order(g) % 2 == 0]
        if config.first_step_classes:
            reps = {cls[0] for cls in conjugacy_classes(group)}
            self.first = [g for g in self.elements if g in reps]
        else:
            self.first = self.elements
        self.can_vanish = not config.structural_pruning or (HALF in config.grid and bool(self.even))
        self.memo: Set[Fingerprint] = set()
        self.lock = Lock()
        self.nodes = 0
        self.support_pruned = 0
        self.mass_pruned = 0
        self.memo_hits = 0
        self.singular_pruned = 0
        self.cutoff = 0

    def _count(self, counter: str):
        with self.lock:
            setattr(self, counter, getattr(self, counter) + 1)

    def candidates(self, position: int, length: int) -> List[MixingStep]:
        endpoint = self.config.endpoint_rule and (position == 0 or position == length - 1)
        pool = self.first if position == 0 else self.elements
        if endpoint:
            if HALF not in self.config.grid:
                return []
            return [MixingStep(g, HALF) for g in pool if g in self.even]
        return [MixingStep(g, p) for g in pool for p in self.config.grid]

    def _pruned(self, mu: Distribution, remaining: int) -> bool:
        if mu.support_size << remaining < self.order:
            self._count("support_pruned")
            return True
        if mu.max_mass() * self.shrink ** remaining > self.target:
            self._count("mass_pruned")
            return True
        return False

    def fingerprint(self, mu: Distribution, remaining: int) -> Fingerprint:
        """ The least left translate x^-1·mu over the heaviest points x, as sorted
            (element index, mass) pairs, so that all translates of a law share one key.
        """
        group = self.group
        top = mu.max_mass()
        best: Optional[Tuple[Tuple[int, Fraction], ...]] = None
        for x, m in mu.items():
            if m != top:
                continue
            shift = group.inverse(x)
            translate = tuple(sorted((group.index_of(group.multiply(shift, y)), my) for y, my in mu.items()))
            if best is None or translate < best:
                best = translate
        assert best is not None
        return best, remaining

    def extend(self, mu: Distribution, steps: List[MixingStep], length: int, branch: int) \
            -> Optional[List[MixingStep]]:
        """ Completes `steps` to a mixing sequence of `length` steps, or returns None. """
        if branch > self.cutoff > 0:
            return None
        self._count("nodes")
        remaining = length - len(steps)
        if remaining == 0:
            return steps if is_uniform(mu)[0] else None
        if not self.can_vanish:
            self._count("singular_pruned")
            return None
        if self._pruned(mu, remaining):
            return None
        key = self.fingerprint(mu, remaining)
        with self.lock:
            if key in self.memo:
                self.memo_hits += 1
                return None
        for step in self.candidates(len(steps), length):
            found = self.extend(convolve_step(self.group, mu, step), steps + [step], length, branch)
            if found is not None:
                return found
        if branch <= self.cutoff or self.cutoff == 0:
            with self.lock:
                if len(self.memo) < MEMO_CAPACITY:
                    self.memo.add(key)
        return None

    def _root_branch(self, index: int, step: MixingStep, length: int) -> Optional[List[MixingStep]]:
        start = Distribution.delta(self.group.identity, self.order)
        found = self.extend(convolve_step(self.group, start, step), [step], length, index + 1)
        if found is not None:
            with self.lock:
                if self.cutoff == 0 or index + 1 < self.cutoff:
                    self.cutoff = index + 1
        return found

    def at_length(self, length: int) -> Optional[List[MixingStep]]:
        """ The first mixing sequence of exactly `length` steps in search order, if any. """
        if length == 0:
            return [] if self.order == 1 else None
        self.cutoff = 0
        roots = self.candidates(0, length)
        results: List[Optional[List[MixingStep]]]
        if self.config.threads > 1:
            with ThreadPoolExecutor(max_workers=self.config.threads) as pool:
                futures = [pool.submit(self._root_branch, i, step, length) for i, step in enumerate(roots)]
                results = [f.result() for f in progress_bar(futures, desc=f"Length {length}", leave=False)]
        else:
            results = []
            for i, step in enumerate(progress_bar(roots, desc=f"Length {length}", leave=False)):
                results.append(self._root_branch(i, step, length))
                if results[-1] is not None:
                    break
        return next((r for r in results if r is not None), None)


def search_min_length(group: FiniteGroup, config: SearchConfig) -> SearchResult:
    """ Deepens from the entropy bound to `config.max_length` and stops at the first
        length that admits a grid-restricted mixing sequence.
    """
    grid = validate_grid(config.grid)
    config = config._replace(grid=grid)
    if config.max_length < 0:
        raise ValueError(f"Maximal length must be non-negative, got {config.max_length}")
    if config.threads < 1:
        raise ValueError(f"Thread count must be positive, got {config.threads}")
    if group.order > config.max_order:
        raise EnumerationBoundExceeded(f"{group.name} has order {group.order}, the search is limited to "
                                       f"{config.max_order}")
    state = _Search(group, config)
    found: Optional[List[MixingStep]] = None
    floor, exhausted_by, quotient_nodes = 0, None, 0
    if config.structural_pruning and state.can_vanish:
        floor, exhausted_by, quotient_nodes = _quotient_floor(group, config)
    length = max(entropy_bound(group.order), floor)
    if exhausted_by is not None:
        log.info(f"the quotient of order {exhausted_by} has no mixing sequence of length <= "
                 f"{config.max_length} on the grid, neither has {group.name}")
        length = config.max_length + 1
    while length <= config.max_length:
        found = state.at_length(length)
        if found is not None:
            break
        log.info(f"no mixing sequence of length {length} over {group.name} on the grid, "
                 f"{state.nodes} nodes so far")
        length += 1

    sequence = None
    if found is not None:
        sequence = MixingSequence(group, found, Claim.on_group())
        assert verify(sequence).uniform, "search accepted a sequence that does not verify"
        log.info(f"found a mixing sequence of length {length} over {group.name}")
    return SearchResult(sequence=sequence, length=length if found is not None else None, grid=grid,
                        max_length=config.max_length, nodes=state.nodes + quotient_nodes,
                        support_pruned=state.support_pruned, mass_pruned=state.mass_pruned,
                        memo_hits=state.memo_hits, singular_pruned=state.singular_pruned, quotient_floor=floor,
                        exhausted_quotient=exhausted_by)


def proper_quotients(group: FiniteGroup) -> List[FiniteGroup]:
    """ G/N for the distinct proper nontrivial normal closures N of the conjugacy classes,
        smallest quotient first.
    """
    seen: Set[FrozenSet[Element]] = set()
    quotients: List[FiniteGroup] = []
    for cls in conjugacy_classes(group):
        normal = subgroup_closure(group, cls)
        if len(normal) in (1, group.order) or normal in seen:
            continue
        seen.add(normal)
        quotients.append(quotient_group(group, normal)[0])
    quotients.sort(key=lambda q: q.order)
    return quotients


def _quotient_floor(group: FiniteGroup, config: SearchConfig) -> Tuple[int, Optional[int], int]:
    """ (largest shortest length over the quotients, order of an exhausted quotient or
        None, nodes spent on the quotients). """
    sub_config = config._replace(endpoint_rule=False)
    floor, nodes = 0, 0
    for quotient in proper_quotients(group):
        result = search_min_length(quotient, sub_config)
        nodes += result.nodes
        if result.exhausted:
            return floor, quotient.order, nodes
        assert result.length is not None
        floor = max(floor, result.length)
        log.debug(f"quotient of order {quotient.order} of {group.name} needs {result.length} steps")
    return floor, None, nodes


def certify_no_mixing(group: FiniteGroup, config: SearchConfig) -> NoMixingCertificate:
    """ Exhausts the grid up to `config.max_length`. When G has a nontrivial odd quotient
        no mixing sequence exists at all, and the search must agree.
    """
    witness = odd_quotient_witness(group)
    result = search_min_length(group, config)
    if result.sequence is not None:
        assert witness is None, f"{group.name} has an odd quotient yet the search found a mixing sequence"
        raise SequenceFound(f"{group.name} has a mixing sequence of length {result.length} on the grid",
                            result.sequence)
    odd = witness[0].order if witness is not None else None
    if odd is not None:
        log.info(f"exhaustion of {group.name} agrees with its odd quotient of order {odd}")
    return NoMixingCertificate(group=group.name, grid=result.grid, max_length=config.max_length,
                               nodes=result.nodes, odd_quotient=odd)
