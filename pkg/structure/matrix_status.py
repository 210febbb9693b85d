""" What is known about the mixability of GL_d, SL_d, PGL_d and PSL_d over F_q, from the
    arithmetic of q - 1 and d alone.
"""

from __future__ import annotations
from math import gcd
from typing import Any, Dict, List, NamedTuple

from groups import prime_power

from .analysis import is_power_of_two


class FamilyStatus(NamedTuple):
    q: int
    d: int
    q_minus_1_pow2: bool
    gcd_pow2: bool
    quotient_pow2: bool
    char2_constructive: bool
    statements: List[str]

    def to_document(self) -> Dict[str, Any]:
        return self._asdict()


def matrix_family_status(q: int, d: int) -> FamilyStatus:
    p, _ = prime_power(q)
    if d < 1:
        raise ValueError(f"Dimension must be at least 1, got {d}")
    g = gcd(q - 1, d)
    q_pow2 = is_power_of_two(q - 1)
    gcd_pow2 = is_power_of_two(g)
    quotient_pow2 = is_power_of_two((q - 1) // g)
    char2 = p == 2 and d == 2

    fq = f"F_{q}"
    statements = []
    if q_pow2:
        statements.append(f"GL_{d}({fq}), SL_{d}({fq}), PGL_{d}({fq}) and PSL_{d}({fq}) are mixable")
    else:
        statements.append(f"GL_{d}({fq}) is not mixable: {q - 1} is not a power of 2")
    if not gcd_pow2:
        statements.append(f"PGL_{d}({fq}) is not mixable: gcd(q-1, d) = {g} is not a power of 2")
    elif not q_pow2:
        statements.append(f"if PSL_{d}({fq}) is mixable then so are SL_{d}({fq}) and PGL_{d}({fq})")
    if quotient_pow2 and d >= 2 and not q_pow2:
        statements.append(f"if PSL_{d - 1}({fq}) is mixable then so is PSL_{d}({fq})")
    if char2:
        statements.append(f"PSL_2({fq}) = SL_2({fq}) = PGL_2({fq}) is mixable by an explicit construction")
    return FamilyStatus(q=q, d=d, q_minus_1_pow2=q_pow2, gcd_pow2=gcd_pow2, quotient_pow2=quotient_pow2,
                        char2_constructive=char2, statements=statements)
