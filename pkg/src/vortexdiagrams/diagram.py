"""Two-colored diagrams on labeled vertices and their combinatorial rules.

A diagram is two stroke graphs (z and w) plus two circle sets on n labeled
vertices, 1-based to mirror the usual figures.  This module derives edge
kinds, the closeness relation, connected components, the C-number
(maximal stroke count at a bicolored vertex), validates the structural
rules, and canonicalizes up to vertex relabeling and the z/w color swap.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache


class EdgeKind(Enum):
    Z = "z"
    W = "w"
    ZW = "zw"


def _normalize_pairs(pairs, n: int) -> frozenset:
    out = set()
    for p in pairs:
        a, b = p
        if a == b:
            raise ValueError(f"self-loop at vertex {a}")
        if not (1 <= a <= n and 1 <= b <= n):
            raise ValueError(f"vertex pair {p} outside 1..{n}")
        out.add((min(a, b), max(a, b)))
    return frozenset(out)


@dataclass(frozen=True)
class Diagram:
    n: int
    z_strokes: frozenset
    w_strokes: frozenset
    z_circles: frozenset
    w_circles: frozenset

    def __init__(self, n, z_strokes=(), w_strokes=(), z_circles=(), w_circles=()):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "z_strokes", _normalize_pairs(z_strokes, n))
        object.__setattr__(self, "w_strokes", _normalize_pairs(w_strokes, n))
        for v in itertools.chain(z_circles, w_circles):
            if not 1 <= v <= n:
                raise ValueError(f"circled vertex {v} outside 1..{n}")
        object.__setattr__(self, "z_circles", frozenset(z_circles))
        object.__setattr__(self, "w_circles", frozenset(w_circles))

    # -- per-color access ------------------------------------------------

    def strokes(self, color: str) -> frozenset:
        return self.z_strokes if color == "z" else self.w_strokes

    def circles(self, color: str) -> frozenset:
        return self.z_circles if color == "z" else self.w_circles

    def color_swapped(self) -> "Diagram":
        return Diagram(self.n, self.w_strokes, self.z_strokes, self.w_circles, self.z_circles)

    def relabeled(self, mapping: dict) -> "Diagram":
        m = lambda p: (mapping[p[0]], mapping[p[1]])
        return Diagram(
            self.n,
            [m(p) for p in self.z_strokes],
            [m(p) for p in self.w_strokes],
            [mapping[v] for v in self.z_circles],
            [mapping[v] for v in self.w_circles],
        )

    def degree(self, color: str, v: int) -> int:
        return sum(1 for p in self.strokes(color) if v in p)

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "z_strokes": [list(p) for p in sorted(self.z_strokes)],
            "w_strokes": [list(p) for p in sorted(self.w_strokes)],
            "z_circles": sorted(self.z_circles),
            "w_circles": sorted(self.w_circles),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Diagram":
        return cls(
            data["n"],
            [tuple(p) for p in data.get("z_strokes", [])],
            [tuple(p) for p in data.get("w_strokes", [])],
            data.get("z_circles", []),
            data.get("w_circles", []),
        )

    def __repr__(self):
        j = self.to_json()
        return (
            f"Diagram(n={self.n}, z={j['z_strokes']}, w={j['w_strokes']}, "
            f"zc={j['z_circles']}, wc={j['w_circles']})"
        )


def classify_edges(d: Diagram) -> dict:
    """Map each stroked pair to its edge kind (z only, w only, or both)."""
    out = {}
    for p in d.z_strokes | d.w_strokes:
        if p in d.z_strokes and p in d.w_strokes:
            out[p] = EdgeKind.ZW
        elif p in d.z_strokes:
            out[p] = EdgeKind.Z
        else:
            out[p] = EdgeKind.W
    return out


def components(pairs, n: int) -> list[frozenset]:
    """Connected components of a stroke graph, singletons included."""
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: dict = {}
    for v in range(1, n + 1):
        groups.setdefault(find(v), set()).add(v)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def stroke_count_C(d: Diagram) -> int:
    """Maximal number of strokes at a bicolored vertex; 0 when none exists."""
    best = 0
    for v in range(1, d.n + 1):
        zd, wd = d.degree("z", v), d.degree("w", v)
        if zd and wd:
            best = max(best, zd + wd)
    return best


@dataclass(frozen=True)
class ClosenessRelation:
    """Positive (Close) and negative (Far) facts per color.

    Close facts are the transitive closure of opposite-color strokes;
    Far facts come from mixed circle status in the color (the Rule II
    contrapositive).  Everything else is Unknown.
    """

    n: int
    close: dict  # color -> frozenset of pairs
    far: dict  # color -> frozenset of pairs

    def status(self, color: str, j: int, k: int) -> str:
        p = (min(j, k), max(j, k))
        is_close = p in self.close[color]
        is_far = p in self.far[color]
        if is_close and is_far:
            return "Inconsistent"
        if is_close:
            return "Close"
        if is_far:
            return "Far"
        return "Unknown"

    def inconsistent_pairs(self) -> list:
        out = []
        for color in ("z", "w"):
            for p in sorted(self.close[color] & self.far[color]):
                out.append((color, p))
        return out

    @property
    def consistent(self) -> bool:
        return all(not (self.close[c] & self.far[c]) for c in ("z", "w"))


def closeness(d: Diagram) -> ClosenessRelation:
    close = {}
    far = {}
    for color, other in (("z", "w"), ("w", "z")):
        pairs = set()
        for comp in components(d.strokes(other), d.n):
            if len(comp) >= 2:
                pairs.update(itertools.combinations(sorted(comp), 2))
        close[color] = frozenset(pairs)
        circ = d.circles(color)
        far[color] = frozenset(
            (j, k)
            for j, k in itertools.combinations(range(1, d.n + 1), 2)
            if (j in circ) != (k in circ)
        )
    return ClosenessRelation(d.n, close, far)


@dataclass(frozen=True)
class RuleReport:
    r1a: bool  # every stroke end has another same-color stroke or a circle
    r1b: bool  # every circle has a same-color stroke
    r1c: bool  # at least one stroke of each color
    r2: bool  # closeness facts consistent
    r4: bool  # no isolated component with exactly one circled vertex
    r6: bool  # stroke components are cliques
    failures: tuple = ()

    @property
    def valid(self) -> bool:
        return self.r1a and self.r1b and self.r1c and self.r2 and self.r4 and self.r6


def validate(d: Diagram) -> RuleReport:
    failures = []
    r1a = r1b = r1c = r4 = r6 = True
    for color in ("z", "w"):
        strokes = d.strokes(color)
        circ = d.circles(color)
        if not strokes:
            r1c = False
            failures.append(f"R1c: no {color}-stroke")
        for a, b in sorted(strokes):
            for v in (a, b):
                if d.degree(color, v) < 2 and v not in circ:
                    r1a = False
                    failures.append(f"R1a: bare end {v} of {color}-stroke {a}{b}")
        for v in sorted(circ):
            if d.degree(color, v) == 0:
                r1b = False
                failures.append(f"R1b: isolated {color}-circle at {v}")
        for comp in components(strokes, d.n):
            if len(comp) >= 2:
                missing = [
                    p for p in itertools.combinations(sorted(comp), 2) if p not in strokes
                ]
                if missing:
                    r6 = False
                    failures.append(f"R6: {color}-component {sorted(comp)} is not a clique")
            count = len(comp & circ)
            if count == 1:
                r4 = False
                failures.append(f"R4: lone {color}-circle in component {sorted(comp)}")
    rel = closeness(d)
    r2 = rel.consistent
    for color, pair in rel.inconsistent_pairs():
        failures.append(f"R2: pair {pair} both {color}-close and {color}-far")
    return RuleReport(r1a, r1b, r1c, r2, r4, r6, tuple(failures))


# -- canonicalization ---------------------------------------------------
#
# Diagrams are counted up to vertex relabeling and the color transposition.
# Strokes and circles pack into bitmasks; the canonical form is the
# lexicographic minimum of (z, w, zc, wc) masks over all permutations and
# the swap.


@lru_cache(maxsize=8)
def _pair_index(n: int) -> dict:
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    return {p: i for i, p in enumerate(pairs)}


@lru_cache(maxsize=8)
def _perm_actions(n: int):
    """For each permutation: pair-index map and vertex map (1-based)."""
    index = _pair_index(n)
    pairs = sorted(index, key=index.get)
    actions = []
    for perm in itertools.permutations(range(1, n + 1)):
        mapping = {i + 1: perm[i] for i in range(n)}
        pair_map = tuple(
            index[(min(mapping[a], mapping[b]), max(mapping[a], mapping[b]))] for a, b in pairs
        )
        vert_map = tuple(mapping[v] - 1 for v in range(1, n + 1))
        actions.append((pair_map, vert_map))
    return tuple(actions)


def _bit_table(bit_targets, offset: int, width: int) -> list:
    """Lookup table: mask chunk of `width` bits at `offset` -> mapped mask."""
    table = [0] * (1 << width)
    for mask in range(1, 1 << width):
        low = mask & (mask - 1)
        if low:
            table[mask] = table[low] | table[mask ^ low]
        else:
            table[mask] = 1 << bit_targets[offset + mask.bit_length() - 1]
    return table


@lru_cache(maxsize=4)
def _mask_tables(n: int):
    """Split-byte lookup tables mask -> permuted mask, per permutation."""
    npairs = n * (n - 1) // 2
    lo_width = min(npairs, 8)
    hi_width = npairs - lo_width
    tables = []
    for pair_map, vert_map in _perm_actions(n):
        plo = _bit_table(pair_map, 0, lo_width)
        phi = _bit_table(pair_map, lo_width, hi_width) if hi_width else [0]
        vtab = _bit_table(vert_map, 0, n)
        tables.append((plo, phi, vtab))
    return tuple(tables)


def _masks(d: Diagram):
    index = _pair_index(d.n)
    zm = sum(1 << index[p] for p in d.z_strokes)
    wm = sum(1 << index[p] for p in d.w_strokes)
    zc = sum(1 << (v - 1) for v in d.z_circles)
    wc = sum(1 << (v - 1) for v in d.w_circles)
    return zm, wm, zc, wc


def canonical_masks(n: int, zm: int, wm: int, zc: int, wc: int):
    """Lexicographically minimal (z, w, zc, wc) over relabeling and swap."""
    if n <= 6:
        best = None
        zlo, zhi = zm & 255, zm >> 8
        wlo, whi = wm & 255, wm >> 8
        for plo, phi, vtab in _mask_tables(n):
            z2 = plo[zlo] | phi[zhi]
            w2 = plo[wlo] | phi[whi]
            zc2, wc2 = vtab[zc], vtab[wc]
            for cand in ((z2, w2, zc2, wc2), (w2, z2, wc2, zc2)):
                if best is None or cand < best:
                    best = cand
        return best
    best = None
    for pair_map, vert_map in _perm_actions(n):
        z2 = w2 = zc2 = wc2 = 0
        m = zm
        while m:
            low = m & (-m)
            z2 |= 1 << pair_map[low.bit_length() - 1]
            m ^= low
        m = wm
        while m:
            low = m & (-m)
            w2 |= 1 << pair_map[low.bit_length() - 1]
            m ^= low
        m = zc
        while m:
            low = m & (-m)
            zc2 |= 1 << vert_map[low.bit_length() - 1]
            m ^= low
        m = wc
        while m:
            low = m & (-m)
            wc2 |= 1 << vert_map[low.bit_length() - 1]
            m ^= low
        for cand in ((z2, w2, zc2, wc2), (w2, z2, wc2, zc2)):
            if best is None or cand < best:
                best = cand
    return best


def canonical_key(d: Diagram) -> bytes:
    """Byte key equal for two diagrams iff they agree up to relabeling
    and the z/w swap."""
    if d.n > 8:
        raise ValueError("canonicalization supported for n <= 8")
    zm, wm, zc, wc = _masks(d)
    best = canonical_masks(d.n, zm, wm, zc, wc)
    return f"{d.n}:{best[0]:x}:{best[1]:x}:{best[2]:x}:{best[3]:x}".encode()


def from_canonical_masks(n: int, masks) -> Diagram:
    index = _pair_index(n)
    pairs = sorted(index, key=index.get)
    zm, wm, zc, wc = masks
    return Diagram(
        n,
        [pairs[i] for i in range(len(pairs)) if zm >> i & 1],
        [pairs[i] for i in range(len(pairs)) if wm >> i & 1],
        [v for v in range(1, n + 1) if zc >> (v - 1) & 1],
        [v for v in range(1, n + 1) if wc >> (v - 1) & 1],
    )


def canonical_form(d: Diagram) -> Diagram:
    """The representative diagram encoded by the canonical key."""
    return from_canonical_masks(d.n, canonical_masks(d.n, *_masks(d)))
