"""Exhaustive diagram enumeration, the curated catalog, and rendering.

The enumeration walks every pair of set partitions of the vertices (clique
components per color, honoring the triangle-closure rule by construction)
crossed with every circle subset per color, validates the structural
rules, deduplicates up to relabeling and color swap, then pushes each
distinct class through the lemma matchers and the constraint decision
procedure.  Survivors are compared against the curated catalog.
"""

from __future__ import annotations

import itertools
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources

from . import lemmas
from .diagram import (
    Diagram,
    canonical_key,
    canonical_masks,
    from_canonical_masks,
    stroke_count_C,
    validate,
    _pair_index,
)
from .vorticity import ConstraintLedger, Verdict, decide

LEDGER_SEED = 11


class EnumerationBudgetError(RuntimeError):
    """The raw candidate space exceeds the configured budget."""


# -- enumeration ----------------------------------------------------------


def set_partitions(n: int) -> list:
    """All partitions of {1..n} as tuples of vertex bitmasks."""
    out = []

    def grow(v: int, parts: list):
        if v > n:
            out.append(tuple(parts))
            return
        bit = 1 << (v - 1)
        for i in range(len(parts)):
            parts[i] |= bit
            grow(v + 1, parts)
            parts[i] ^= bit
        parts.append(bit)
        grow(v + 1, parts)
        parts.pop()

    grow(1, [])
    return out


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _pairs_mask(part: int, n: int, index: dict) -> int:
    verts = [v + 1 for v in range(n) if part >> v & 1]
    mask = 0
    for a, b in itertools.combinations(verts, 2):
        mask |= 1 << index[(a, b)]
    return mask


def _partition_data(n: int):
    """Per partition: (stroke mask, parts, support, forced, big parts)."""
    index = _pair_index(n)
    data = []
    for parts in set_partitions(n):
        stroke_mask = 0
        support = forced = 0
        r4_parts = []
        for p in parts:
            size = _popcount(p)
            if size >= 2:
                stroke_mask |= _pairs_mask(p, n, index)
                support |= p
                if size == 2:
                    forced |= p
                else:
                    r4_parts.append(p)
        data.append((stroke_mask, parts, support, forced, tuple(r4_parts)))
    return data


def _valid_circle_masks(self_data, other_parts, n: int) -> list:
    """Circle masks consistent with the structural rules for one color.

    Rules enforced: circles only on stroked vertices, both ends of a lone
    stroke circled, circle status constant on each closeness class, and no
    component with exactly one circle.
    """
    _, _, support, forced, r4_parts = self_data
    classes = [p for p in other_parts if _popcount(p) >= 2]
    out = []
    for mask in range(1 << n):
        if mask & ~support:
            continue
        if mask & forced != forced:
            continue
        ok = True
        for cl in classes:
            x = mask & cl
            if x and x != cl:
                ok = False
                break
        if ok:
            for p in r4_parts:
                if _popcount(mask & p) == 1:
                    ok = False
                    break
        if ok:
            out.append(mask)
    return out


def _scan_chunk(args):
    """Enumerate one slice of partition pairs; return canonical classes."""
    n, lo, hi = args
    data = _partition_data(n)
    stroked = [d for d in data if d[0]]
    classes = set()
    raw = 0
    valid = 0
    pairs = [(i, j) for i in range(len(data)) for j in range(len(data))]
    for i, j in pairs[lo:hi]:
        raw += 1 << (2 * n)
        zd, wd = data[i], data[j]
        if not zd[0] or not wd[0]:
            continue
        zmasks = _valid_circle_masks(zd, wd[1], n)
        wmasks = _valid_circle_masks(wd, zd[1], n)
        for zc in zmasks:
            for wc in wmasks:
                valid += 1
                classes.add(canonical_masks(n, zd[0], wd[0], zc, wc))
    return classes, raw, valid


@dataclass
class SurvivorEntry:
    key: str
    diagram: Diagram
    c_class: int
    ledger: ConstraintLedger
    verdict: Verdict
    branches: dict  # lambda class -> (ConstraintLedger, Verdict)
    findings: tuple

    def to_json(self) -> dict:
        out = {
            "key": self.key,
            "diagram": self.diagram.to_json(),
            "c_class": self.c_class,
            "ledger": self.ledger.to_json(),
            "verdict": self.verdict.to_json(),
        }
        if self.branches:
            out["branches"] = {
                cls: {"ledger": led.to_json(), "verdict": ver.to_json()}
                for cls, (led, ver) in sorted(self.branches.items())
            }
        return out


@dataclass
class EnumerationReport:
    n: int
    survivors: list  # SurvivorEntry, sorted by key
    rejected: list  # dicts {key, stage, reason}
    histogram: dict
    candidates_raw: int
    candidates_valid: int
    unique_classes: int
    workers: int
    diff_vs_catalog: dict | None = None

    def survivor_keys(self) -> list:
        return [s.key for s in self.survivors]

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "workers": self.workers,
            "candidates_raw": self.candidates_raw,
            "candidates_valid": self.candidates_valid,
            "unique_classes": self.unique_classes,
            "survivor_count": len(self.survivors),
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "survivors": [s.to_json() for s in self.survivors],
            "rejected": self.rejected,
        }
        if self.diff_vs_catalog is not None:
            out["diff_vs_catalog"] = self.diff_vs_catalog
        return out


_VERDICT_MEMO: dict = {}


def _decide_memo(ledger: ConstraintLedger) -> Verdict:
    """Many classes share a ledger; reuse verdicts across them."""
    verdict = _VERDICT_MEMO.get(ledger)
    if verdict is None:
        verdict = decide(ledger, seed=LEDGER_SEED)
        _VERDICT_MEMO[ledger] = verdict
    return verdict


def _judge_class(n: int, masks) -> tuple:
    """Run validate, lemmas and ledger decisions on one canonical class."""
    d = from_canonical_masks(n, masks)
    key = canonical_key(d).decode()
    report = validate(d)
    if not report.valid:
        return ("rejected", {"key": key, "stage": "validate", "reason": "; ".join(report.failures)})
    analysis = lemmas.analyze(d)
    if analysis.exclusion is not None:
        f = analysis.exclusion
        return (
            "rejected",
            {
                "key": key,
                "stage": "lemma",
                "reason": f.lemma,
                "detail": f.reason,
                "color": f.color,
                "binding": list(f.binding),
            },
        )
    verdict = _decide_memo(analysis.base_ledger)
    if verdict.infeasible:
        return (
            "rejected",
            {
                "key": key,
                "stage": "ledger",
                "reason": "constraint-infeasibility",
                "certificate": verdict.certificate.to_json(),
                "ledger": analysis.base_ledger.to_json(),
            },
        )
    branches = {}
    if analysis.branch_ledgers:
        for cls, led in sorted(analysis.branch_ledgers.items()):
            branches[cls] = (led, _decide_memo(led))
        if all(ver.infeasible for _, ver in branches.values()):
            return (
                "rejected",
                {
                    "key": key,
                    "stage": "ledger",
                    "reason": "branch-infeasibility",
                    "ledger": analysis.base_ledger.to_json(),
                },
            )
    entry = SurvivorEntry(
        key, d, stroke_count_C(d), analysis.base_ledger, verdict, branches, analysis.findings
    )
    return ("survivor", entry)


def enumerate_diagrams(
    n: int = 5,
    workers: int = 1,
    with_catalog_diff: bool | None = None,
    max_raw_candidates: int | None = None,
) -> EnumerationReport:
    """Exhaustively enumerate valid diagram classes for n vertices.

    Deterministic: the survivor set, histogram and rejection list do not
    depend on the worker count.  When a budget is given and the raw
    candidate space exceeds it, the run refuses up front rather than
    truncating silently.
    """
    if not 3 <= n <= 6:
        raise ValueError("enumeration supported for 3 <= n <= 6")
    bell = len(set_partitions(n))
    space = bell * bell * (1 << (2 * n))
    if max_raw_candidates is not None and space > max_raw_candidates:
        raise EnumerationBudgetError(
            f"{space} raw candidates exceed the budget of {max_raw_candidates}"
        )
    data_len = bell**2
    classes: set = set()
    raw = valid = 0
    if workers <= 1:
        got, raw, valid = _scan_chunk((n, 0, data_len))
        classes |= got
    else:
        step = math.ceil(data_len / workers)
        chunks = [(n, lo, min(lo + step, data_len)) for lo in range(0, data_len, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for got, r, v in pool.map(_scan_chunk, chunks):
                classes |= got
                raw += r
                valid += v
    survivors = []
    rejected = []
    for masks in sorted(classes):
        kind, payload = _judge_class(n, masks)
        if kind == "survivor":
            survivors.append(payload)
        else:
            rejected.append(payload)
    survivors.sort(key=lambda s: s.key)
    rejected.sort(key=lambda r: r["key"])
    histogram = {c: 0 for c in [0] + list(range(2, 2 * n - 1))}
    for s in survivors:
        histogram[s.c_class] = histogram.get(s.c_class, 0) + 1
    report = EnumerationReport(
        n,
        survivors,
        rejected,
        histogram,
        candidates_raw=raw,
        candidates_valid=valid,
        unique_classes=len(classes),
        workers=workers,
    )
    if with_catalog_diff or (with_catalog_diff is None and n == 5):
        report.diff_vs_catalog = diff_report(report, load_catalog())
    return report


# -- curated catalog ------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    diagram: Diagram
    c_class: int
    status: str  # "possible" | "excluded"
    excluding_lemma: str | None
    figure_ref: str
    notes: str = ""
    future_list: str = "unknown"

    @property
    def key(self) -> str:
        return canonical_key(self.diagram).decode()

    @property
    def ledger(self) -> ConstraintLedger:
        return lemmas.analyze(self.diagram).base_ledger

    @property
    def branches(self) -> dict:
        return lemmas.analyze(self.diagram).branch_ledgers

    def to_json(self) -> dict:
        out = {
            "figure_ref": self.figure_ref,
            "c_class": self.c_class,
            "status": self.status,
            "diagram": self.diagram.to_json(),
            "future_list": self.future_list,
        }
        if self.excluding_lemma:
            out["excluding_lemma"] = self.excluding_lemma
        if self.notes:
            out["notes"] = self.notes
        return out


def load_catalog() -> list:
    """The 39 curated diagram entries (31 possible, 8 excluded)."""
    text = resources.files("vortexdiagrams.data").joinpath("catalog.jsonl").read_text()
    entries = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        data = json.loads(line)
        entries.append(
            CatalogEntry(
                Diagram.from_json(data["diagram"]),
                data["c_class"],
                data["status"],
                data.get("excluding_lemma"),
                data["figure_ref"],
                data.get("notes", ""),
                data.get("future_list", "unknown"),
            )
        )
    if len(entries) != 39:
        raise ValueError(f"corrupt catalog: expected 39 entries, found {len(entries)}")
    return entries


def diff_report(report: EnumerationReport, catalog) -> dict:
    """Canonical-key set difference between survivors and catalog possibles."""
    enumerated = set(report.survivor_keys())
    curated = {e.key for e in catalog if e.status == "possible"}
    return {
        "missing": sorted(curated - enumerated),
        "extra": sorted(enumerated - curated),
    }


# -- rendering ------------------------------------------------------------

_Z_COLOR = "#cc0000"
_W_COLOR = "#0000cc"


def _positions(n: int, radius: float = 1.0):
    pts = []
    for k in range(n):
        angle = 2 * math.pi * k / n
        pts.append((radius * math.cos(angle), radius * math.sin(angle)))
    return pts


def render(d: Diagram, fmt: str = "svg") -> str:
    """Render a diagram with vertices at roots of unity, counterclockwise.

    Solid red for z, dashed blue for w; mutual strokes draw both, slightly
    offset.  Circles are rings around the vertex: solid for z, dashed for
    w.  Output is byte-stable.
    """
    if d.n > 8:
        raise ValueError("rendering supported for n <= 8")
    if fmt == "dot":
        return _render_dot(d)
    if fmt == "svg":
        return _render_svg(d)
    if fmt == "tikz":
        return _render_tikz(d)
    raise ValueError(f"unsupported format {fmt!r}")


def _edge_lines(d: Diagram):
    """(pair, color, offset) triples in deterministic order."""
    out = []
    for p in sorted(d.z_strokes | d.w_strokes):
        both = p in d.z_strokes and p in d.w_strokes
        if p in d.z_strokes:
            out.append((p, "z", 0.035 if both else 0.0))
        if p in d.w_strokes:
            out.append((p, "w", -0.035 if both else 0.0))
    return out


def _render_dot(d: Diagram) -> str:
    pts = _positions(d.n, 1.5)
    lines = [
        "graph diagram {",
        "  layout=neato;",
        '  node [shape=point width=0.08 color="black"];',
    ]
    for v in range(1, d.n + 1):
        x, y = pts[v - 1]
        ring = []
        if v in d.z_circles:
            ring.append(f'zring{v} [shape=circle label="" width=0.30 color="{_Z_COLOR}" style=solid pos="{x:.4f},{y:.4f}!"]')
        if v in d.w_circles:
            ring.append(f'wring{v} [shape=circle label="" width=0.42 color="{_W_COLOR}" style=dashed pos="{x:.4f},{y:.4f}!"]')
        lines.append(f'  v{v} [pos="{x:.4f},{y:.4f}!" xlabel="{v}"];')
        for r in ring:
            lines.append("  " + r + ";")
    for (a, b), color, _off in _edge_lines(d):
        if color == "z":
            lines.append(f'  v{a} -- v{b} [color="{_Z_COLOR}" style=solid];')
        else:
            lines.append(f'  v{a} -- v{b} [color="{_W_COLOR}" style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _render_svg(d: Diagram) -> str:
    size = 360
    scale = 120.0
    cx = cy = size / 2

    def sx(x):
        return cx + scale * x

    def sy(y):
        return cy - scale * y

    pts = _positions(d.n)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for (a, b), color, off in _edge_lines(d):
        x1, y1 = pts[a - 1]
        x2, y2 = pts[b - 1]
        dx, dy = x2 - x1, y2 - y1
        norm = math.hypot(dx, dy) or 1.0
        ox, oy = -dy / norm * off, dx / norm * off
        stroke = _Z_COLOR if color == "z" else _W_COLOR
        dash = "" if color == "z" else ' stroke-dasharray="7,4"'
        parts.append(
            f'<line x1="{sx(x1+ox):.2f}" y1="{sy(y1+oy):.2f}" x2="{sx(x2+ox):.2f}" '
            f'y2="{sy(y2+oy):.2f}" stroke="{stroke}" stroke-width="2"{dash}/>'
        )
    for v in range(1, d.n + 1):
        x, y = pts[v - 1]
        if v in d.z_circles:
            parts.append(
                f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="14" fill="none" stroke="{_Z_COLOR}" stroke-width="2"/>'
            )
        if v in d.w_circles:
            parts.append(
                f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="20" fill="none" stroke="{_W_COLOR}" stroke-width="2" stroke-dasharray="5,3"/>'
            )
        parts.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="4" fill="black"/>')
        lx, ly = sx(x * 1.28), sy(y * 1.28)
        parts.append(
            f'<text x="{lx:.2f}" y="{ly:.2f}" font-family="serif" font-size="16" '
            f'text-anchor="middle" dominant-baseline="middle">{v}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _render_tikz(d: Diagram) -> str:
    pts = _positions(d.n, 2.0)
    lines = ["\\begin{tikzpicture}"]
    for (a, b), color, off in _edge_lines(d):
        x1, y1 = pts[a - 1]
        x2, y2 = pts[b - 1]
        dx, dy = x2 - x1, y2 - y1
        norm = math.hypot(dx, dy) or 1.0
        ox, oy = -dy / norm * off * 2, dx / norm * off * 2
        style = "red,thick" if color == "z" else "blue,thick,dashed"
        lines.append(
            f"  \\draw[{style}] ({x1+ox:.4f},{y1+oy:.4f}) -- ({x2+ox:.4f},{y2+oy:.4f});"
        )
    for v in range(1, d.n + 1):
        x, y = pts[v - 1]
        lines.append(f"  \\fill ({x:.4f},{y:.4f}) circle (0.05);")
        lines.append(f"  \\node at ({x*1.25:.4f},{y*1.25:.4f}) {{{v}}};")
        if v in d.z_circles:
            lines.append(f"  \\draw[red,thick] ({x:.4f},{y:.4f}) circle (0.22);")
        if v in d.w_circles:
            lines.append(f"  \\draw[blue,thick,dashed] ({x:.4f},{y:.4f}) circle (0.32);")
    lines.append("\\end{tikzpicture}")
    return "\n".join(lines) + "\n"
