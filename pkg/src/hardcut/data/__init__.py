"""Bundled graph6 files of known q3t strongly-regular graphs (see scripts/make_srg_data.py)."""
from __future__ import annotations

from importlib import resources

from hardcut.io import parse_graph6

SRG_FILES = {
    1: "srg16_6_2_2.g6",
    3: "srg40_12_2_4.g6",
    5: "srg64_18_2_6.g6",
    9: "srg112_30_2_10.g6",
}


def srg_path(t: int):
    return resources.files(__name__) / SRG_FILES[t]


def load_srgs(t: int):
    text = srg_path(t).read_bytes()
    return [parse_graph6(line) for line in text.splitlines() if line.strip()]
