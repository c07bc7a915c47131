"""Flat covers of polyomino stains by congruent stickers."""

import os
from pathlib import Path

_packaged = Path(__file__).with_name("catalog")
if "FLATCOVER_CATALOG" not in os.environ and _packaged.is_dir():
    os.environ["FLATCOVER_CATALOG"] = str(_packaged)

from ._flatcover import (  # noqa: E402
    CatalogError,
    Outcome,
    PolyError,
    Polyomino,
    anneal,
    brute_force_oracle,
    catalog_dir,
    classify,
    decide,
    free_polyominoes,
    gadget_q0,
    gadget_sticker,
    golomb_ruler,
    minimal_covers,
    partition_check,
    reduce_1d,
    reduce_2d,
    roundtrip_2d,
    solve_1d,
)

__all__ = [
    "CatalogError",
    "Outcome",
    "PolyError",
    "Polyomino",
    "anneal",
    "brute_force_oracle",
    "catalog_dir",
    "classify",
    "decide",
    "free_polyominoes",
    "gadget_q0",
    "gadget_sticker",
    "golomb_ruler",
    "minimal_covers",
    "partition_check",
    "reduce_1d",
    "reduce_2d",
    "roundtrip_2d",
    "solve_1d",
]
