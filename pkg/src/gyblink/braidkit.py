"""Braid words as presentations of oriented links via their closures.

A word on ``n`` strands is a tuple of nonzero integers; ``+i`` stands for the
generator sigma_i (a positive crossing between strands ``i`` and ``i+1``) and
``-i`` for its inverse.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable

__all__ = [
    "BraidError",
    "BraidWord",
    "LinkSpec",
    "parse_braid",
    "format_braid",
    "writhe",
    "closure_permutation",
    "closure_components",
    "markov_conjugate",
    "markov_stabilize",
    "disjoint_union",
    "random_word",
    "default_catalog",
    "load_catalog",
    "dump_catalog",
]


class BraidError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise BraidError(f"strand count must be >= 1, got {self.strands}")
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        for x in self.letters:
            if x == 0 or abs(x) > self.strands - 1:
                raise BraidError(f"letter {x} out of range for {self.strands} strands")

    def __len__(self):
        return len(self.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-x for x in reversed(self.letters)))

    def __str__(self):
        return format_braid(self)


@dataclass(frozen=True)
class LinkSpec:
    word: BraidWord
    name: str | None = None


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    """Parse whitespace-separated signed generator indices, e.g. ``"1 -2 1 -2"``.

    Without ``strands`` the strand count is ``max |letter| + 1`` (one strand for
    the empty word).
    """
    letters = []
    for token in text.split():
        try:
            x = int(token)
        except ValueError:
            raise BraidError(f"not an integer: {token!r}") from None
        if x == 0:
            raise BraidError("0 is not a braid generator")
        letters.append(x)
    if strands is None:
        strands = max((abs(x) for x in letters), default=0) + 1
    return BraidWord(strands, tuple(letters))


def format_braid(w: BraidWord) -> str:
    return " ".join(str(x) for x in w.letters)


def writhe(w: BraidWord) -> int:
    return sum(1 if x > 0 else -1 for x in w.letters)


def closure_permutation(w: BraidWord) -> list[int]:
    """Permutation of strand positions ``0..n-1`` induced by the word."""
    perm = list(range(w.strands))
    for x in w.letters:
        i = abs(x) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    return perm


def closure_components(w: BraidWord) -> int:
    perm = closure_permutation(w)
    seen = [False] * w.strands
    cycles = 0
    for start in range(w.strands):
        if seen[start]:
            continue
        cycles += 1
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
    return cycles


def markov_conjugate(w: BraidWord, g: BraidWord) -> BraidWord:
    """Return ``g^-1 w g``."""
    if w.strands != g.strands:
        raise BraidError(f"strand mismatch: {w.strands} vs {g.strands}")
    return BraidWord(w.strands, g.inverse().letters + w.letters + g.letters)


def markov_stabilize(w: BraidWord, sign: int) -> BraidWord:
    if sign not in (1, -1):
        raise BraidError(f"sign must be +1 or -1, got {sign}")
    return BraidWord(w.strands + 1, w.letters + (sign * w.strands,))


def disjoint_union(a: BraidWord, b: BraidWord) -> BraidWord:
    shift = a.strands
    return BraidWord(
        a.strands + b.strands,
        a.letters + tuple(x + shift if x > 0 else x - shift for x in b.letters),
    )


def random_word(strands: int, length: int, seed: int) -> BraidWord:
    if length < 0:
        raise BraidError("length must be non-negative")
    if length > 0 and strands < 2:
        raise BraidError("a nonempty word needs at least 2 strands")
    rng = random.Random(seed)
    letters = tuple(rng.choice((1, -1)) * rng.randint(1, strands - 1) for _ in range(length))
    return BraidWord(max(strands, 1), letters)


# Catalog file format (JSON, UTF-8):
#   {"format": "gyblink-catalog", "version": 1,
#    "links": [{"name": str, "strands": int, "letters": [int, ...]}, ...]}
# Names are unique; entries keep file order.

CATALOG_FORMAT = "gyblink-catalog"


def _catalog_from_obj(obj) -> dict[str, LinkSpec]:
    if obj.get("format") != CATALOG_FORMAT or obj.get("version") != 1:
        raise BraidError("not a version-1 gyblink catalog")
    out: dict[str, LinkSpec] = {}
    for entry in obj["links"]:
        name = entry["name"]
        if name in out:
            raise BraidError(f"duplicate catalog name {name!r}")
        out[name] = LinkSpec(BraidWord(int(entry["strands"]), tuple(entry["letters"])), name)
    return out


def load_catalog(path: str | Path | None = None) -> dict[str, LinkSpec]:
    """Load a catalog file; the bundled one when ``path`` is None."""
    if path is None:
        text = resources.files("gyblink").joinpath("data/catalog.json").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return _catalog_from_obj(json.loads(text))


def dump_catalog(links: Iterable[LinkSpec]) -> str:
    entries = []
    names = set()
    for spec in links:
        if spec.name is None or spec.name in names:
            raise BraidError(f"catalog entries need unique names, got {spec.name!r}")
        names.add(spec.name)
        entries.append({"name": spec.name, "strands": spec.word.strands, "letters": list(spec.word.letters)})
    return json.dumps({"format": CATALOG_FORMAT, "version": 1, "links": entries}, indent=2) + "\n"


def default_catalog() -> dict[str, LinkSpec]:
    return load_catalog(None)
