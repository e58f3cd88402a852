"""Frozen expected values the pipeline is verified against.

Everything the verifier diffs against lives in one JSON file
(data/expectations.json) instead of being scattered through code, so the
provenance of every expected number is auditable in one place. The env var
WEYL27_EXPECTATIONS overrides the file path.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from importlib import resources

ENV_VAR = "WEYL27_EXPECTATIONS"


@dataclass(frozen=True)
class PairExpectation:
    """One expected fiber of size two, with the invariant values that split it.

    Fields holding None mean the file states no expectation for that
    invariant on this pair.
    """

    members: tuple[tuple[int, ...], ...]
    orbit_sizes: tuple[int, ...]
    perp_parity: tuple[str, ...] | None
    h1_torsion: tuple[tuple[int, ...], ...] | None
    h1_free_rank: tuple[int, ...] | None


@dataclass(frozen=True)
class Expectations:
    group_order: int
    generator_cycles: tuple[str, ...]
    orbit_counts: tuple[int, ...]
    total_orbits: int
    power_set_size: int
    zariski_pairs: tuple[PairExpectation, ...]
    disjoint_five_orbit_sizes: tuple[int, ...]


def _parse(raw: dict) -> Expectations:
    pairs = []
    for entry in raw["zariski_pairs"]:
        pairs.append(
            PairExpectation(
                members=tuple(tuple(m) for m in entry["members"]),
                orbit_sizes=tuple(entry["orbit_sizes"]),
                perp_parity=(
                    tuple(entry["perp_parity"]) if entry.get("perp_parity") else None
                ),
                h1_torsion=(
                    tuple(tuple(t) for t in entry["h1_torsion"])
                    if entry.get("h1_torsion") is not None
                    else None
                ),
                h1_free_rank=(
                    tuple(entry["h1_free_rank"])
                    if entry.get("h1_free_rank") is not None
                    else None
                ),
            )
        )
    return Expectations(
        group_order=int(raw["group_order"]),
        generator_cycles=tuple(raw["generator_cycles"]),
        orbit_counts=tuple(raw["orbit_counts"]),
        total_orbits=int(raw["total_orbits"]),
        power_set_size=int(raw["power_set_size"]),
        zariski_pairs=tuple(pairs),
        disjoint_five_orbit_sizes=tuple(raw["disjoint_five_orbit_sizes"]),
    )


def load_expectations(path: str | None = None) -> Expectations:
    """Load expectations from an explicit path, $WEYL27_EXPECTATIONS, or the
    file shipped with the package, in that precedence order."""
    path = path or os.environ.get(ENV_VAR)
    if path:
        with open(path, encoding="utf-8") as fh:
            return _parse(json.load(fh))
    text = resources.files("weyl27").joinpath("data/expectations.json").read_text("utf-8")
    return _parse(json.loads(text))
