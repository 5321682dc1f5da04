"""The natural numbers under finitary permutations carry no limit aperiodic
coloring: pulling any finite coloring back along products of transpositions
h_n = (1, a_1)(2, a_2)...(n, a_n) through a monochromatic sequence a_i
converges to a constant coloring.

Points are 0-based naturals; the transpositions only ever touch points >= 1.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Sequence, Tuple

from .colorings import color_key


class FinPerm:
    """Finitely supported permutation of the naturals."""

    __slots__ = ("_map",)

    def __init__(self, mapping: Dict[int, int] = None):
        m = {x: y for x, y in (mapping or {}).items() if x != y}
        if sorted(m) != sorted(m.values()):
            raise ValueError(f"not a permutation of its support: {mapping!r}")
        if any(x < 0 for x in m):
            raise ValueError("points must be natural numbers")
        self._map = m

    @classmethod
    def transposition(cls, i: int, j: int) -> "FinPerm":
        return cls({i: j, j: i})

    @property
    def support(self) -> frozenset:
        return frozenset(self._map)

    def __call__(self, x: int) -> int:
        return self._map.get(x, x)

    def __mul__(self, other: "FinPerm") -> "FinPerm":
        """(p * q)(x) = p(q(x))."""
        pts = self.support | other.support
        return FinPerm({x: self(other(x)) for x in pts})

    def inverse(self) -> "FinPerm":
        return FinPerm({y: x for x, y in self._map.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, FinPerm) and self._map == other._map

    def __hash__(self) -> int:
        return hash(frozenset(self._map.items()))

    def cycles(self) -> List[Tuple[int, ...]]:
        seen, out = set(), []
        for start in sorted(self._map):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self(x)
            out.append(tuple(cyc))
        return out

    def cycle_text(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"FinPerm{self.cycle_text()}"


class WindowTooSmall(ValueError):
    pass


class DomainEscape(ValueError):
    pass


def find_monochromatic(f: Sequence[Hashable], count: int) -> Tuple[Hashable, List[int]]:
    """Most frequent color on [1..N] and its ``count`` smallest positions.

    ``f`` colors [0..N]; position 0 is never used since the transpositions
    start at 1. Frequency ties go to the smallest color.
    """
    palette = set(f)
    n = len(f) - 1
    if n < count * len(palette):
        raise WindowTooSmall(
            f"domain [0..{n}] is smaller than count * |palette| = {count} * {len(palette)}; "
            "the pigeonhole bound needs N >= count * |palette|"
        )
    freq = Counter(f[1:])
    best = min(freq, key=lambda c: (-freq[c], color_key(c)))
    seq = [i for i in range(1, n + 1) if f[i] == best][:count]
    return best, seq


def build_hn(seq: Sequence[int], n: int) -> FinPerm:
    """(1, a_1)(2, a_2)...(n, a_n), composed right to left."""
    if n > len(seq):
        raise ValueError(f"need n <= len(seq), got {n} > {len(seq)}")
    h = FinPerm()
    for i in range(1, n + 1):
        h = h * FinPerm.transposition(i, seq[i - 1])
    for k in range(1, n + 1):
        if h(k) != seq[k - 1]:
            raise ValueError(f"h_{n}({k}) = {h(k)} != a_{k} = {seq[k - 1]}; sequence must be strictly increasing and >= 1")
    return h


def pullback_pattern(f: Sequence[Hashable], h: FinPerm, width: int) -> List[Hashable]:
    """(h^-1 * f)(k) = f(h(k)) for k in [1..width]."""
    out = []
    for k in range(1, width + 1):
        x = h(k)
        if x >= len(f):
            raise DomainEscape(f"h({k}) = {x} lies outside the colored domain [0..{len(f) - 1}]")
        out.append(f[x])
    return out


def is_window_period(pattern: Sequence[Hashable], shift: int) -> bool:
    return all(pattern[i] == pattern[i + shift] for i in range(len(pattern) - shift))


# --------------------------------------------------------------------------
# words in s (n -> n + 1) and t (swap 0 and 1)

Word = Tuple[Tuple[str, int], ...]


def _push(word: List[Tuple[str, int]], gen: str, exp: int) -> None:
    if exp == 0:
        return
    if word and word[-1][0] == gen:
        e = word[-1][1] + exp
        if gen == "t":
            e %= 2
        word.pop()
        if e:
            word.append((gen, e))
    else:
        word.append((gen, exp % 2 if gen == "t" else exp))


def _adjacent(i: int) -> List[Tuple[str, int]]:
    # s^i t s^-i swaps i and i + 1
    return [("s", i), ("t", 1), ("s", -i)]


def transposition_word(i: int, j: int) -> Word:
    """Word in s, t whose permutation of Z (hence of N) is the transposition (i j).

    Built as (j-1 j)(i j-1)(j-1 j) down to an adjacent swap.
    """
    if not 0 <= i < j:
        raise ValueError(f"need 0 <= i < j, got ({i}, {j})")
    if j == i + 1:
        parts = _adjacent(i)
    else:
        outer = _adjacent(j - 1)
        parts = outer + list(transposition_word(i, j - 1)) + outer
    word: List[Tuple[str, int]] = []
    for gen, exp in parts:
        _push(word, gen, exp)
    return tuple(word)


def word_text(word: Word) -> str:
    if not word:
        return "e"
    return " ".join(g if e == 1 else f"{g}^{e}" for g, e in word)


def apply_word(word: Word, x: int) -> int:
    """Apply the word as a composition of maps, rightmost first."""
    for gen, exp in reversed(word):
        if gen == "s":
            x += exp
        elif exp % 2:
            x = {0: 1, 1: 0}.get(x, x)
    return x


@dataclass
class DemoResult:
    color: Hashable
    sequence: List[int]
    hn: FinPerm
    pattern: List[Hashable]
    constant: bool
    periods: List[int] = field(default_factory=list)


def demo(f: Sequence[Hashable], window: int) -> DemoResult:
    """find_monochromatic -> build_hn(window) -> pullback on [1..window]."""
    color, seq = find_monochromatic(f, window)
    h = build_hn(seq, window)
    pat = pullback_pattern(f, h, window)
    constant = all(c == color for c in pat)
    periods = [s for s in range(1, window) if is_window_period(pat, s)]
    return DemoResult(color, seq, h, pat, constant, periods)
