"""Finite-window evidence for aperiodicity and limit aperiodicity.

None of these scans proves anything about the infinite group. A scan that
runs out of room is reported as INCONCLUSIVE-AT-CAP, never as a refutation.
Case order, witness choice and minimal radii are all taken in
(norm, serialization) order, so reports are reproducible.
"""
from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from . import groups
from .colorings import TERNARY_RULE, THUE_MORSE_RULE, Coloring
from .groups import DEFAULT_MAX_ELEMENTS, Free, TreeVertex, WordMetric

PASS = "PASS"
FAIL = "FAIL"
INCONCLUSIVE = "INCONCLUSIVE-AT-CAP"

LAMBDA_GRID = tuple(k / 2 for k in range(1, 33))  # 0.5, 1.0, ..., 16.0


@dataclass
class Window:
    """Points on which a coloring is inspected.

    For group colorings the points are ball(radius); G-set colorings pass an
    explicit ``points`` list.
    """

    radius: int
    points: Optional[List[Any]] = None
    max_elements: int = DEFAULT_MAX_ELEMENTS

    def to_dict(self) -> Dict[str, Any]:
        d: Dict[str, Any] = {"radius": self.radius, "max_elements": self.max_elements}
        if self.points is not None:
            d["explicit_points"] = len(self.points)
        return d


@dataclass
class Pattern:
    """Restriction of a translated coloring to a finite window."""

    shift: Any
    points: Tuple[Any, ...]
    colors: Tuple[Any, ...]

    def __getitem__(self, a):
        return self.colors[self.points.index(a)]

    def __eq__(self, other) -> bool:
        return isinstance(other, Pattern) and self.points == other.points and self.colors == other.colors

    def __hash__(self) -> int:
        return hash((self.points, self.colors))


@dataclass
class ScanReport:
    kind: str
    params: Dict[str, Any]
    cases: List[Dict[str, Any]]
    verdict: str
    result: Any = None
    seed: int = 0
    wall_time: Optional[float] = None

    def to_dict(self, timing: bool = False) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "params": self.params,
            "cases": self.cases,
            "verdict": self.verdict,
            "result": self.result,
            "seed": self.seed,
            "wall_time": round(self.wall_time, 6) if timing and self.wall_time is not None else None,
        }

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# --------------------------------------------------------------------------
# helpers


def point_text(f: Coloring, x) -> str:
    if isinstance(x, TreeVertex):
        return f"{x.kind}:{groups.format_element(f.spec, x.word)}"
    return groups.format_element(f.spec, x)


def _pmap(fn: Callable, items: Sequence, threads: int) -> List:
    if threads <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def tree_window(spec: Free, radius: int) -> List[TreeVertex]:
    """Tree vertices within ``radius`` of the root, using generator letters."""
    letters = {
        "L": [g for g in groups.generators(spec.left)],
        "R": [g for g in groups.generators(spec.right)],
    }
    o = groups.ops(spec)
    verts = groups.tree_ball(spec, radius, letters)
    return sorted(verts, key=lambda v: (verts[v], v.kind, o.serialize(v.word)))


def window_points(f: Coloring, window: Window, metric: Optional[WordMetric] = None) -> List[Any]:
    if window.points is not None:
        return list(window.points)
    metric = metric or WordMetric(f.spec, window.max_elements)
    return list(metric.ball(window.radius))


def _base_params(f: Coloring) -> Dict[str, Any]:
    return {
        "spec": str(f.spec),
        "coloring": f.describe(),
        "sequences": [THUE_MORSE_RULE, TERNARY_RULE],
        "palette_size": len(f.palette),
    }


def _fixes_all(f: Coloring, b, points: Iterable) -> bool:
    return all(f.act_point(b, x) == x for x in points)


def _candidate_periods(f: Coloring, metric: WordMetric, b_radius: int, points: List) -> Tuple[List, List]:
    """Nonidentity elements of ball(b_radius), split into (tested, skipped-as-Fix)."""
    e = metric.ops.e
    tested, skipped = [], []
    for b in metric.ball(b_radius):
        if b == e:
            continue
        if f.is_gset and _fixes_all(f, b, points):
            skipped.append(b)
        else:
            tested.append(b)
    return tested, skipped


# --------------------------------------------------------------------------
# the action and periods


def act(g, f: Coloring) -> Coloring:
    """(g * f)(a) = f(g^-1 a)."""
    ginv = groups.ops(f.spec).inv(g)
    fn, move = f.fn, f.act_point
    return Coloring(
        f.spec, lambda a: fn(move(ginv, a)), f.palette,
        ("act", groups.format_element(f.spec, g), f.provenance),
        action=f._action, notes=f.notes,
    )


def period_violation(f: Coloring, b, window: Window, points: Optional[List] = None):
    """First window point a with f(b^-1 a) != f(a), or None if b is a period
    of f on the whole window."""
    if points is None:
        points = window_points(f, window)
    binv = groups.ops(f.spec).inv(b)
    fn, move = f.fn, f.act_point
    for a in points:
        if fn(move(binv, a)) != fn(a):
            return a
    return None


def aperiodicity_scan(
    f: Coloring, b_radius: int, window: Window, threads: int = 1, seed: int = 0
) -> ScanReport:
    start = time.perf_counter()
    metric = WordMetric(f.spec, window.max_elements)
    points = window_points(f, window, metric)
    tested, skipped = _candidate_periods(f, metric, b_radius, points)
    witnesses = _pmap(lambda b: period_violation(f, b, window, points), tested, threads)
    cases = []
    for b, a in zip(tested, witnesses):
        cases.append({
            "b": point_text(f, b),
            "witness": None if a is None else point_text(f, a),
        })
    verdict = PASS if all(a is not None for a in witnesses) else FAIL
    params = _base_params(f)
    params.update({"b_radius": b_radius, "window": window.to_dict(), "skipped_fix": len(skipped)})
    return ScanReport(
        "aperiodic", params, cases, verdict,
        result={"tested": len(tested), "periods": sum(a is None for a in witnesses)},
        seed=seed, wall_time=time.perf_counter() - start,
    )


# --------------------------------------------------------------------------
# LA2 and uniform aperiodicity


def _first_witness_radius(fn, mul, x, y, metric: WordMetric, cap: float) -> Optional[int]:
    """Smallest |c| <= cap with fn(x c) != fn(y c)."""
    k = 0
    while k <= cap:
        for c in metric.sphere(k):
            if fn(mul(x, c)) != fn(mul(y, c)):
                return k
        k += 1
    return None


def la2_scan(
    f: Coloring,
    g,
    h_radius: int,
    s_radius_cap: int,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
    threads: int = 1,
    seed: int = 0,
) -> ScanReport:
    """Smallest r <= cap such that every h in ball(h_radius) has some c in
    ball(r) with f(hc) != f(hgc)."""
    start = time.perf_counter()
    metric = WordMetric(f.spec, max_elements)
    o = metric.ops
    if g == o.e:
        raise ValueError("la2_scan needs g != e")
    hs = list(metric.ball(h_radius))
    metric.grow_to(s_radius_cap)
    fn, mul = f.fn, o.mul
    radii = _pmap(
        lambda h: _first_witness_radius(fn, mul, h, mul(h, g), metric, s_radius_cap), hs, threads
    )
    params = _base_params(f)
    params.update({"g": point_text(f, g), "h_radius": h_radius, "s_radius_cap": s_radius_cap})
    missing = [h for h, r in zip(hs, radii) if r is None]
    if missing:
        cases = [{"h": point_text(f, missing[0]), "radius": None}]
        verdict, result = INCONCLUSIVE, None
    else:
        result = max(radii)
        worst = hs[radii.index(result)]
        cases = [{"h": point_text(f, worst), "radius": result}]
        verdict = PASS
    return ScanReport("la2", params, cases, verdict, result, seed, time.perf_counter() - start)


def la2_radius(f: Coloring, g, h_radius: int, s_radius_cap: int, **kw) -> Optional[int]:
    return la2_scan(f, g, h_radius, s_radius_cap, **kw).result


def _grid_at_least(x: float, grid: Sequence[float]) -> Optional[float]:
    for lam in grid:
        if lam >= x:
            return lam
    return None


def ua_lambda_scan(
    f: Coloring,
    g_radius: int,
    h_radius: int,
    grid: Sequence[float] = LAMBDA_GRID,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
    threads: int = 1,
    seed: int = 0,
) -> ScanReport:
    """Smallest grid value lambda such that every tested g != e and h have a
    b in B_{lambda d_g(h)}(h) with f(gb) != f(b)."""
    start = time.perf_counter()
    metric = WordMetric(f.spec, max_elements)
    o = metric.ops
    fn, mul = f.fn, o.mul
    gs = [g for g in metric.ball(g_radius) if g != o.e]
    hs = list(metric.ball(h_radius))
    lam_max = max(grid)

    def needed(g):
        worst = (0.0, None)
        for h in hs:
            d = metric.displacement(g, h)
            rho = _first_witness_radius(fn, mul, mul(g, h), h, metric, lam_max * d)
            if rho is None:
                return (None, h)
            lam = _grid_at_least(rho / d, grid)
            if lam > worst[0]:
                worst = (lam, h)
        return worst

    per_g = _pmap(needed, gs, threads)
    cases = [
        {"g": point_text(f, g), "lambda": lam, "h": None if h is None else point_text(f, h)}
        for g, (lam, h) in zip(gs, per_g)
    ]
    params = _base_params(f)
    params.update({"g_radius": g_radius, "h_radius": h_radius, "grid": [min(grid), lam_max, len(grid)]})
    if any(lam is None for lam, _ in per_g):
        verdict, result = INCONCLUSIVE, None
    else:
        verdict, result = PASS, max((lam for lam, _ in per_g), default=min(grid))
    return ScanReport("ua", params, cases, verdict, result, seed, time.perf_counter() - start)


# --------------------------------------------------------------------------
# orbit closure sampling


def pattern(f: Coloring, h, points: Sequence) -> Pattern:
    """Pattern of h * f on ``points``."""
    hinv = groups.ops(f.spec).inv(h)
    fn, move = f.fn, f.act_point
    return Pattern(h, tuple(points), tuple(fn(move(hinv, a)) for a in points))


def distinct_patterns(f: Coloring, schedule: Iterable, points: Sequence) -> Dict[Tuple, Any]:
    """Distinct color tuples of h * f on ``points``, each mapped to the first
    shift h producing it."""
    seen: Dict[Tuple, Any] = {}
    for h in schedule:
        p = pattern(f, h, points)
        seen.setdefault(p.colors, h)
    return seen


def window_period(f: Coloring, colors: Sequence, points: Sequence, b) -> bool:
    """Whether b is a period of the pattern wherever both a and b^-1 a lie in
    the window."""
    index = {a: i for i, a in enumerate(points)}
    binv = groups.ops(f.spec).inv(b)
    for i, a in enumerate(points):
        j = index.get(f.act_point(binv, a))
        if j is not None and colors[j] != colors[i]:
            return False
    return True


def orbit_pattern_scan(
    f: Coloring,
    shift_schedule: Sequence,
    window: Window,
    b_radius: int,
    threads: int = 1,
    seed: int = 0,
) -> ScanReport:
    start = time.perf_counter()
    metric = WordMetric(f.spec, window.max_elements)
    points = window_points(f, window, metric)
    tested, skipped = _candidate_periods(f, metric, b_radius, points)
    found = distinct_patterns(f, shift_schedule, points)

    def first_period(colors):
        for b in tested:
            if window_period(f, colors, points, b):
                return b
        return None

    periods = _pmap(first_period, list(found), threads)
    cases = [
        {"shift": point_text(f, h), "period": None if b is None else point_text(f, b)}
        for h, b in zip(found.values(), periods)
    ]
    verdict = PASS if all(b is None for b in periods) else FAIL
    params = _base_params(f)
    params.update({
        "schedule_length": len(shift_schedule),
        "window": window.to_dict(),
        "b_radius": b_radius,
        "skipped_fix": len(skipped),
    })
    return ScanReport(
        "orbit", params, cases, verdict,
        result={"distinct_patterns": len(found), "periodic_patterns": sum(b is not None for b in periods)},
        seed=seed, wall_time=time.perf_counter() - start,
    )


def z_factor_counts(f: Coloring, length_range: Iterable[int], positions: int) -> List[int]:
    """Number of distinct length-L patterns of a Z-coloring read on
    [s, s + L) for 0 <= s <= positions - L."""
    out = []
    for L in length_range:
        schedule = [-s for s in range(positions - L + 1)]
        out.append(len(distinct_patterns(f, schedule, list(range(L)))))
    return out
