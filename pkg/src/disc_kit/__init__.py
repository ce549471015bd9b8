"""Local-structure toolkit for bounded-degree labelled graphs."""

from .freq import FreqVector, cnt_k, freq_k, freq_rel, l1_dist
from .sgraph import InformationSet, RootedDisc, SGraph, disc_k, underlying

__all__ = [
    "FreqVector",
    "InformationSet",
    "RootedDisc",
    "SGraph",
    "cnt_k",
    "disc_k",
    "freq_k",
    "freq_rel",
    "l1_dist",
    "underlying",
]
