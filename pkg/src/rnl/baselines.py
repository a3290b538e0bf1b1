"""Published resource figures used as comparison rows in reports.

These are stored reference constants from the cited works, never
recomputed here; only the "proposed" rows of a report are measured from
generated circuits.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class BaselineRow:
    """One cited design: its source key and (quantum cost, delay, garbage)."""

    citation: str
    quantum_cost: int
    delay: int
    garbage: int


#: design family -> (table title, measured-subject builder key, cited rows)
CLOCKED_T_FF = (
    "clocked T flip-flop",
    [
        BaselineRow("Chuang 2008", 6, 6, 2),
        BaselineRow("Thapliyal 2010", 6, 6, 2),
    ],
)

MASTER_SLAVE_T_FF = (
    "master-slave T flip-flop",
    [
        BaselineRow("Thapliyal 2010", 11, 11, 3),
        BaselineRow("Thapliyal 2007", 17, 17, 4),
    ],
)

ASYNC_COUNTER_4BIT = (
    "4-bit asynchronous counter",
    [
        BaselineRow("Rajmohan 2011", 55, 55, 12),
    ],
)

SYNC_COUNTER_4BIT = (
    "4-bit synchronous counter",
    [
        BaselineRow("Khan 2011", 35, 35, 4),
    ],
)
