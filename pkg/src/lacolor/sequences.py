"""Thue-Morse and square-free ternary sequences.

Both evaluators are pure functions of the index. The ternary word keeps an
append-only memo of Thue-Morse zero positions, guarded by a lock so scans may
read it from several threads.
"""
from __future__ import annotations

import threading
from typing import Hashable, Iterable, List, Sequence, Set, Tuple

import numpy as np


def thue_morse(n: int) -> int:
    """Parity of the number of ones in the binary expansion of ``n``."""
    if n < 0:
        raise ValueError(f"thue_morse is defined on n >= 0, got {n}")
    return bin(n).count("1") & 1


def thue_morse_prefix(length: int) -> List[int]:
    return [thue_morse(i) for i in range(length)]


def substitution_prefix(k: int) -> List[int]:
    """The k-fold image of 0 under 0 -> 01, 1 -> 10 (length 2**k)."""
    word = [0]
    for _ in range(k):
        word = [b for a in word for b in (a, 1 - a)]
    return word


class BinarySeq:
    """Thue-Morse sequence with a memoised prefix."""

    def __init__(self) -> None:
        self._cache: List[int] = []
        self._lock = threading.Lock()

    def __getitem__(self, n: int) -> int:
        if n < 0:
            raise ValueError(f"index must be >= 0, got {n}")
        cache = self._cache
        if n < len(cache):
            return cache[n]
        with self._lock:
            start = len(self._cache)
            self._cache.extend(thue_morse(i) for i in range(start, max(n + 1, 2 * start)))
        return self._cache[n]

    def prefix(self, length: int) -> List[int]:
        if length:
            self[length - 1]
        return self._cache[:length]


class TernarySeq:
    """Square-free ternary word: number of ones between consecutive zeros of
    the Thue-Morse sequence."""

    def __init__(self) -> None:
        # positions of zeros of the Thue-Morse sequence, extended on demand
        self._zeros: List[int] = [0]
        self._scanned = 1
        self._lock = threading.Lock()

    def _extend(self, count: int) -> None:
        with self._lock:
            zeros = self._zeros
            pos = self._scanned
            while len(zeros) < count:
                if not bin(pos).count("1") & 1:
                    zeros.append(pos)
                pos += 1
            self._scanned = pos

    def __getitem__(self, n: int) -> int:
        if n < 0:
            raise ValueError(f"index must be >= 0, got {n}")
        zeros = self._zeros
        if n + 1 >= len(zeros):
            self._extend(max(n + 2, 2 * len(zeros)))
            zeros = self._zeros
        return zeros[n + 1] - zeros[n] - 1

    def prefix(self, length: int) -> List[int]:
        return [self[i] for i in range(length)]


_TERNARY = TernarySeq()


def squarefree_ternary(n: int) -> int:
    return _TERNARY[n]


def squarefree_ternary_prefix(length: int) -> List[int]:
    return _TERNARY.prefix(length)


def has_square_naive(word: Sequence[Hashable]) -> bool:
    """Direct check over every (start, half-length) pair. Cubic; small inputs."""
    word = list(word)
    n = len(word)
    for half in range(1, n // 2 + 1):
        for i in range(n - 2 * half + 1):
            if word[i:i + half] == word[i + half:i + 2 * half]:
                return True
    return False


def has_square(word: Sequence[Hashable]) -> bool:
    """True iff ``word`` has a factor WW with W nonempty.

    For every half-length L, a square exists iff there is a run of at least L
    consecutive positions i with word[i] == word[i + L].
    """
    symbols = {}
    codes = np.fromiter((symbols.setdefault(s, len(symbols)) for s in word), dtype=np.int64)
    n = len(codes)
    for half in range(1, n // 2 + 1):
        eq = (codes[:-half] == codes[half:]).astype(np.int64)
        if len(eq) < half:
            break
        run = np.concatenate(([0], np.cumsum(eq)))
        if np.any(run[half:] - run[:-half] == half):
            return True
    return False


def factors(word: Sequence[Hashable], length: int) -> Set[Tuple]:
    """Distinct contiguous factors of the given length."""
    word = tuple(word)
    return {word[i:i + length] for i in range(len(word) - length + 1)}


def factor_counts(word: Iterable[Hashable], lengths: Iterable[int]) -> List[int]:
    word = tuple(word)
    return [len(factors(word, L)) for L in lengths]
