""" Mixing sequences: ordered (element, probability) steps together with the claim they
    are meant to satisfy.

    The listing order is the product order: step 1 is the leftmost factor of
    g_1^e_1 ... g_k^e_k. For an action claim the rightmost factor acts first on the base
    point.
"""

from __future__ import annotations
from enum import IntEnum, auto
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple
import logging

from groups import Element, FiniteGroup, GroupAction, GroupError, action_from_spec, group_from_spec

from .documents import DocumentError, read_json, write_json
from .probability import ArithmeticMode, MixingError, Probability, format_probability, mode_of, parse_probability

log = logging.getLogger("mixing.sequence")


class MixingStep(NamedTuple):
    g: Element
    p: Probability


class ClaimKind(IntEnum):
    group = auto()
    action = auto()


class Claim(NamedTuple):
    """ What a sequence claims to mix: the whole group, or an action from a base point. """
    kind: ClaimKind
    action: Optional[GroupAction] = None
    base: Any = None

    @staticmethod
    def on_group() -> Claim:
        return Claim(ClaimKind.group)

    @staticmethod
    def on_action(action: GroupAction, base: Any) -> Claim:
        return Claim(ClaimKind.action, action, action.validate_point(base))

    def to_document(self) -> Any:
        if self.kind == ClaimKind.group:
            return "group"
        assert self.action is not None
        doc = dict(self.action.spec())
        doc["base"] = self.action.encode_point(self.base)
        return doc

    @staticmethod
    def from_document(group: FiniteGroup, doc: Any) -> Claim:
        if doc is None or doc == "group":
            return Claim.on_group()
        if not isinstance(doc, Mapping) or "base" not in doc:
            raise DocumentError(f"An action claim needs an action and a base point, got {doc!r}")
        action = action_from_spec(group, {k: v for k, v in doc.items() if k != "base"})
        return Claim(ClaimKind.action, action, action.decode_point(doc["base"]))


class MixingSequence:
    """ A candidate mixing sequence over `group`. Steps are validated on construction. """
    __slots__ = ['group', 'steps', 'claim']

    def __init__(self, group: FiniteGroup, steps: Iterable[Tuple[Element, Probability]],
                 claim: Optional[Claim] = None):
        self.group = group
        self.steps: Tuple[MixingStep, ...] = tuple(MixingStep(g, parse_probability(p)) for g, p in steps)
        self.claim = claim if claim is not None else Claim.on_group()

    @property
    def mode(self) -> ArithmeticMode:
        return mode_of(s.p for s in self.steps)

    @property
    def length(self) -> int:
        return len(self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[MixingStep]:
        return iter(self.steps)

    def __getitem__(self, i):
        return self.steps[i]

    def elements(self) -> List[Element]:
        return [s.g for s in self.steps]

    def probabilities(self) -> List[Probability]:
        return [s.p for s in self.steps]

    def with_claim(self, claim: Claim) -> MixingSequence:
        return MixingSequence(self.group, self.steps, claim)

    def conjugated(self, h: Element) -> MixingSequence:
        """ Every element replaced by h g h^-1; an action claim moves its base point to h·x. """
        claim = self.claim
        if claim.kind == ClaimKind.action:
            assert claim.action is not None
            claim = Claim(ClaimKind.action, claim.action, claim.action.act(h, claim.base))
        return MixingSequence(self.group, [(self.group.conjugate(g, h), p) for g, p in self.steps], claim)

    def inverted(self) -> MixingSequence:
        """ (g_k^-1, p_k), ..., (g_1^-1, p_1): the law of the inverse random product. """
        if self.claim.kind != ClaimKind.group:
            raise MixingError("Only group claims are preserved by inversion")
        return MixingSequence(self.group, [(self.group.inverse(g), p) for g, p in reversed(self.steps)])

    def mapped(self, target: FiniteGroup, hom: Callable[[Element], Element],
               claim: Optional[Claim] = None) -> MixingSequence:
        """ The image of this sequence under a homomorphism into `target`. """
        return MixingSequence(target, [(hom(g), p) for g, p in self.steps], claim)

    def concatenated(self, *others: MixingSequence, claim: Optional[Claim] = None) -> MixingSequence:
        steps = list(self.steps)
        for other in others:
            if other.group != self.group:
                raise MixingError(f"Cannot concatenate a sequence over {other.group.name} "
                                  f"to one over {self.group.name}")
            steps.extend(other.steps)
        return MixingSequence(self.group, steps, claim)

    def without_identity_steps(self) -> MixingSequence:
        """ Drops steps that cannot change the law: p = 0 or the identity element. """
        identity = self.group.identity
        return MixingSequence(self.group, [(g, p) for g, p in self.steps if g != identity and p != 0], self.claim)

    def to_document(self) -> Dict[str, Any]:
        return {
            "group": self.group.spec(),
            "claim": self.claim.to_document(),
            "steps": [{"g": self.group.encode(g), "p": format_probability(p)} for g, p in self.steps],
        }

    @staticmethod
    def from_document(doc: Any, group: Optional[FiniteGroup] = None) -> MixingSequence:
        """ Parses a sequence document. When `group` is given it replaces the document's
            own group specification, which must then be absent or equal. """
        if not isinstance(doc, Mapping) or "steps" not in doc:
            raise DocumentError("A sequence document is an object with 'steps'")
        try:
            doc_group = group_from_spec(doc["group"]) if "group" in doc else None
            if group is None:
                if doc_group is None:
                    raise DocumentError("The sequence document names no group")
                group = doc_group
            elif doc_group is not None and doc_group != group:
                raise DocumentError(f"Sequence is over {doc_group.name}, expected {group.name}")
            steps = []
            for i, step in enumerate(doc["steps"]):
                if not isinstance(step, Mapping) or "g" not in step or "p" not in step:
                    raise DocumentError(f"Step {i + 1} must be an object with 'g' and 'p'")
                steps.append((group.decode(step["g"]), parse_probability(step["p"])))
            claim = Claim.from_document(group, doc.get("claim"))
        except GroupError as err:
            raise DocumentError(f"Bad sequence document: {err}")
        return MixingSequence(group, steps, claim)

    @staticmethod
    def from_file(path: Path, group: Optional[FiniteGroup] = None) -> MixingSequence:
        return MixingSequence.from_document(read_json(path), group)

    def to_file(self, path: Path):
        write_json(self.to_document(), path)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MixingSequence):
            return NotImplemented
        return self.group == other.group and self.steps == other.steps and \
            self.claim.to_document() == other.claim.to_document()

    def __repr__(self) -> str:
        steps = ", ".join(f"{self.group.encode(g)}@{format_probability(p)}" for g, p in self.steps)
        return f"MixingSequence({self.group.name}: [{steps}])"


def pairs_to_subproduct(group: FiniteGroup, pairs: Sequence[Tuple[Element, Element, Probability]]) \
        -> Tuple[MixingSequence, Element]:
    """ Rewrites a product of independent choices x_i in {a_i, b_i} (b_i with probability
        p_i) as a random subproduct times a constant: the steps are
        c_i = (a_1...a_{i-1}) b_i a_i^-1 (a_1...a_{i-1})^-1 and the constant is a_1...a_n.
    """
    prefix = group.identity
    steps = []
    for a, b, p in pairs:
        c = group.conjugate(group.multiply(b, group.inverse(a)), prefix)
        steps.append((c, p))
        prefix = group.multiply(prefix, a)
    return MixingSequence(group, steps), prefix
