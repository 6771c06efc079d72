"""Published reference figures for the 17 challenge instances with n divisible by 4.

Instance files are not shipped. ``find_instance`` locates a user-supplied
file whose stem matches the instance name case-insensitively (any suffix).
"""

from __future__ import annotations

from pathlib import Path
from typing import NamedTuple, Optional


class Reference(NamedTuple):
    name: str
    n: int
    ilb: int
    previous: int
    before: int
    after: int
    gap_pct: float
    improvement_pct: float


REFERENCE = {
    r.name: r
    for r in (
        Reference("Galaxy40", 40, 298484, 307469, 306230, 305714, 2.42, 0.57),
        Reference("Galaxy36", 36, 205280, 212821, 211382, 210845, 2.71, 0.93),
        Reference("Galaxy32", 32, 139922, 145445, 144173, 144050, 2.95, 0.96),
        Reference("Galaxy28", 28, 89242, 93235, 92408, 92291, 3.42, 1.01),
        Reference("Galaxy24", 24, 53282, 55883, 55486, 55418, 4.01, 0.83),
        Reference("Galaxy20", 20, 30508, 32530, 32082, 32067, 5.11, 1.42),
        Reference("Galaxy16", 16, 17562, 19040, 18614, 18599, 5.90, 2.32),
        Reference("Galaxy12", 12, 8374, 9490, 9108, 9045, 8.01, 4.69),
        Reference("NFL32", 32, 1162798, 1211239, 1199619, 1198091, 3.04, 1.09),
        Reference("NFL28", 28, 771442, 810310, 798208, 798168, 3.46, 1.50),
        Reference("NFL24", 24, 573618, 611441, 598437, 596872, 4.05, 2.38),
        Reference("NFL20", 20, 423958, 456563, 444426, 442950, 4.48, 2.98),
        Reference("NFL16", 16, 294866, 321357, 310416, 309580, 4.99, 3.66),
        Reference("NL16", 16, 334940, 359720, 351647, 350727, 4.71, 2.50),
        Reference("NL12", 12, 132720, 144744, 140686, 140686, 6.00, 2.80),
        Reference("Super12", 12, 551580, 612583, 590773, 587387, 6.49, 4.11),
        Reference("Brazil24", 24, 620574, 655235, 643783, 642530, 3.54, 1.94),
    )
}


def find_instance(directory: Path, name: str) -> Optional[Path]:
    directory = Path(directory)
    if not directory.is_dir():
        return None
    for p in sorted(directory.iterdir()):
        if p.is_file() and p.name.split(".")[0].lower() == name.lower():
            return p
    return None


def reference_for(stem: str) -> Optional[Reference]:
    for name, ref in REFERENCE.items():
        if name.lower() == stem.lower():
            return ref
    return None
