""" Length tables: constructed lengths of a family next to its closed-form bound and the
    entropy bound, verified by an exact (or numeric) fold while the group is small enough.
"""

from __future__ import annotations
from typing import List, Tuple
import logging

import pandas as pd

from mixing import DEFAULT_TOLERANCE, FAMILIES, certify_sequence, entropy_bound, format_probability, progress_bar

log = logging.getLogger("cli.table")

# rows of larger groups report lengths only
VERIFY_ORDER_LIMIT = 50_000

COLUMNS = ["param", "order", "entropy_bound", "length", "bound", "bound_ok", "verified"]


def parse_range(text: str) -> Tuple[int, int]:
    """ "2..8" -> (2, 8), "5" -> (5, 5) """
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            first, last = int(lo), int(hi)
        else:
            first = last = int(text)
    except ValueError:
        raise ValueError(f"Cannot read range {text!r}, expected A..B")
    if first > last:
        raise ValueError(f"Empty range {text!r}")
    return first, last


def length_table(family: str, first: int, last: int, tolerance: float = DEFAULT_TOLERANCE) -> pd.DataFrame:
    if family not in FAMILIES:
        raise ValueError(f"Unknown family {family!r}, expected one of {sorted(FAMILIES)}")
    spec = FAMILIES[family]
    rows: List[dict] = []
    for k in progress_bar(range(first, last + 1), desc=family):
        group = spec.group(k)
        seq = spec.build(k, certify=False)
        bound = spec.bound(k)
        verified = False
        if group.order <= VERIFY_ORDER_LIMIT:
            certify_sequence(seq, family, bound, tolerance)
            verified = True
        rows.append({"param": k, "order": group.order, "entropy_bound": entropy_bound(group.order),
                     "length": seq.length, "bound": format_probability(bound), "bound_ok": seq.length <= bound,
                     "verified": verified})
        log.info(f"{family} row {k}: length {seq.length}, bound {format_probability(bound)}")
    return pd.DataFrame(rows, columns=COLUMNS).rename(columns={"param": spec.params[0]})


def render_table(df: pd.DataFrame) -> str:
    return df.to_markdown(index=False)
