"""Binary PGM/PPM output for colorings of Z x Z."""
from __future__ import annotations

from typing import Dict, List, Sequence

from .colorings import Coloring
from .groups import Prod, Z


def gray_levels(n: int) -> List[int]:
    """n evenly spaced gray values in [0, 255]."""
    if n == 1:
        return [0]
    return [round(i * 255 / (n - 1)) for i in range(n)]


def rgb_table(n: int) -> List[bytes]:
    """Fixed color table: index i -> 24-bit value i spread over RGB."""
    step = max(1, (1 << 24) // n)
    return [((i * step) & 0xFFFFFF).to_bytes(3, "big") for i in range(n)]


def grid_indices(f: Coloring, n: int) -> List[List[int]]:
    """Palette indices over [-n, n]^2; rows run from y = n down to y = -n."""
    if f.spec != Prod(Z(), Z()):
        raise ValueError(f"grid rendering needs a prod(Z,Z) coloring, got {f.spec}")
    index = f.palette_index()
    return [[index[f((x, y))] for x in range(-n, n + 1)] for y in range(n, -n - 1, -1)]


def encode(rows: Sequence[Sequence[int]], palette_size: int) -> bytes:
    height, width = len(rows), len(rows[0])
    if palette_size <= 256:
        levels = gray_levels(palette_size)
        header = f"P5\n{width} {height}\n255\n".encode("ascii")
        return header + bytes(levels[i] for row in rows for i in row)
    table = rgb_table(palette_size)
    header = f"P6\n{width} {height}\n255\n".encode("ascii")
    return header + b"".join(table[i] for row in rows for i in row)


def render_grid(f: Coloring, n: int) -> bytes:
    return encode(grid_indices(f, n), len(f.palette))


def read_netpbm(data: bytes) -> Dict:
    """Parse a P5/P6 image produced by :func:`encode` (no comments)."""
    parts = data.split(maxsplit=4)
    magic, width, height, maxval = parts[0].decode(), int(parts[1]), int(parts[2]), int(parts[3])
    # header is followed by exactly one whitespace byte
    header_len = len(b" ".join(parts[:4])) + 1
    pixels = data[header_len:]
    return {"magic": magic, "width": width, "height": height, "maxval": maxval, "pixels": pixels}
