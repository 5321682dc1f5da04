"""Groups built from Z by direct products, free products and HNN extensions.

Elements are plain hashable values in normal form:

* ``Z``: an ``int``
* ``Prod(A, B)``: a pair ``(a, b)``
* ``Free(A, B)``: a tuple of :class:`Letter`, alternating sides, no identity letters
* ``Hnn(Z, auto)``: a pair ``(i, h)`` standing for ``t**i * h``

HNN multiplication follows from ``t^-1 x t = auto(x)``:
``(t^i h)(t^j k) = t^(i+j) auto^j(h) k``.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, Iterable, List, NamedTuple, Tuple, Union

DEFAULT_MAX_ELEMENTS = 10**6


class StructuralError(ValueError):
    """An element does not have the shape its group spec requires."""


class UnsupportedSpec(ValueError):
    """A spec uses a construction outside the supported grammar."""


class BallOverflow(RuntimeError):
    def __init__(self, radius: int, count: int, cap: int):
        super().__init__(
            f"ball enumeration exceeded {cap} elements at radius {radius} ({count} found)"
        )
        self.radius = radius
        self.count = count
        self.cap = cap


# --------------------------------------------------------------------------
# specs


@dataclass(frozen=True)
class Z:
    def __str__(self) -> str:
        return "Z"


@dataclass(frozen=True)
class Prod:
    left: "GroupSpec"
    right: "GroupSpec"

    def __str__(self) -> str:
        return f"prod({self.left},{self.right})"


@dataclass(frozen=True)
class Free:
    left: "GroupSpec"
    right: "GroupSpec"

    def __str__(self) -> str:
        return f"free({self.left},{self.right})"


@dataclass(frozen=True)
class Hnn:
    base: "GroupSpec"
    auto: str = "id"

    def __post_init__(self):
        if self.auto not in ("id", "inv"):
            raise ValueError(f"automorphism must be 'id' or 'inv', got {self.auto!r}")

    def __str__(self) -> str:
        return f"hnn({self.base},{self.auto})"


GroupSpec = Union[Z, Prod, Free, Hnn]


class Letter(NamedTuple):
    side: str  # "L" or "R"
    value: Any


# --------------------------------------------------------------------------
# per-constructor operations


class _Ops:
    spec: GroupSpec
    e: Any

    def mul(self, x, y):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def generators(self) -> List[Any]:
        raise NotImplementedError

    def validate(self, x) -> None:
        raise NotImplementedError

    def serialize(self, x) -> str:
        raise NotImplementedError

    def format(self, x) -> str:
        raise NotImplementedError

    def parse_at(self, text: str, pos: int) -> Tuple[Any, int]:
        raise NotImplementedError


_INT = re.compile(r"-?\d+")


def _expect(text: str, pos: int, token: str) -> int:
    if not text.startswith(token, pos):
        raise ValueError(f"expected {token!r} at offset {pos} in {text!r}")
    return pos + len(token)


class _ZOps(_Ops):
    e = 0

    def __init__(self, spec: Z):
        self.spec = spec

    def mul(self, x, y):
        return x + y

    def inv(self, x):
        return -x

    def generators(self):
        return [1, -1]

    def validate(self, x):
        if type(x) is not int:
            raise StructuralError(f"Z element must be an int, got {x!r}")

    def serialize(self, x):
        return f"z{x};"

    def format(self, x):
        return str(x)

    def parse_at(self, text, pos):
        m = _INT.match(text, pos)
        if not m:
            raise ValueError(f"expected an integer at offset {pos} in {text!r}")
        return int(m.group()), m.end()


class _ProdOps(_Ops):
    def __init__(self, spec: Prod):
        self.spec = spec
        self.a = ops(spec.left)
        self.b = ops(spec.right)
        self.e = (self.a.e, self.b.e)

    def mul(self, x, y):
        return (self.a.mul(x[0], y[0]), self.b.mul(x[1], y[1]))

    def inv(self, x):
        return (self.a.inv(x[0]), self.b.inv(x[1]))

    def generators(self):
        return [(g, self.b.e) for g in self.a.generators()] + [
            (self.a.e, g) for g in self.b.generators()
        ]

    def validate(self, x):
        if not isinstance(x, tuple) or len(x) != 2 or isinstance(x, Letter):
            raise StructuralError(f"product element must be a pair, got {x!r}")
        self.a.validate(x[0])
        self.b.validate(x[1])

    def serialize(self, x):
        return "p" + self.a.serialize(x[0]) + self.b.serialize(x[1])

    def format(self, x):
        return f"({self.a.format(x[0])},{self.b.format(x[1])})"

    def parse_at(self, text, pos):
        pos = _expect(text, pos, "(")
        x, pos = self.a.parse_at(text, pos)
        pos = _expect(text, pos, ",")
        y, pos = self.b.parse_at(text, pos)
        pos = _expect(text, pos, ")")
        return (x, y), pos


def _bracketed(spec: GroupSpec) -> bool:
    return isinstance(spec, (Free, Hnn))


class _FreeOps(_Ops):
    e: Tuple = ()

    def __init__(self, spec: Free):
        self.spec = spec
        self.sides = {"L": ops(spec.left), "R": ops(spec.right)}

    def mul(self, x, y):
        if not x:
            return y
        if not y:
            return x
        out = list(x)
        j = 0
        while out and j < len(y) and out[-1].side == y[j].side:
            side = y[j].side
            f = self.sides[side]
            v = f.mul(out.pop().value, y[j].value)
            j += 1
            if v != f.e:
                out.append(Letter(side, v))
                break
        out.extend(y[j:])
        return tuple(out)

    def inv(self, x):
        return tuple(Letter(l.side, self.sides[l.side].inv(l.value)) for l in reversed(x))

    def generators(self):
        return [(Letter("L", g),) for g in self.sides["L"].generators()] + [
            (Letter("R", g),) for g in self.sides["R"].generators()
        ]

    def validate(self, x):
        if not isinstance(x, tuple):
            raise StructuralError(f"free product element must be a tuple of letters, got {x!r}")
        prev = None
        for letter in x:
            if not isinstance(letter, Letter) or letter.side not in self.sides:
                raise StructuralError(f"bad letter {letter!r}")
            if letter.side == prev:
                raise StructuralError(f"adjacent letters from the same factor in {x!r}")
            f = self.sides[letter.side]
            f.validate(letter.value)
            if letter.value == f.e:
                raise StructuralError(f"identity letter in {x!r}")
            prev = letter.side
        return None

    def serialize(self, x):
        parts = [f"f{len(x)}:"]
        for letter in x:
            parts.append(letter.side + self.sides[letter.side].serialize(letter.value))
        return "".join(parts)

    def format(self, x):
        if not x:
            return "e"
        out = []
        for letter in x:
            f = self.sides[letter.side]
            body = f.format(letter.value)
            if _bracketed(f.spec):
                body = f"[{body}]"
            out.append(letter.side + body)
        return ".".join(out)

    def parse_at(self, text, pos):
        if text.startswith("e", pos):
            return (), pos + 1
        letters = []
        while True:
            side = text[pos:pos + 1]
            if side not in self.sides:
                raise ValueError(f"expected 'L' or 'R' at offset {pos} in {text!r}")
            f = self.sides[side]
            pos += 1
            if _bracketed(f.spec):
                pos = _expect(text, pos, "[")
                v, pos = f.parse_at(text, pos)
                pos = _expect(text, pos, "]")
            else:
                v, pos = f.parse_at(text, pos)
            letters.append(Letter(side, v))
            if text.startswith(".", pos):
                pos += 1
                continue
            break
        word = tuple(letters)
        self.validate(word)
        return word, pos


class _HnnOps(_Ops):
    e = (0, 0)

    def __init__(self, spec: Hnn):
        if not isinstance(spec.base, Z):
            raise UnsupportedSpec(f"HNN extensions are supported over Z only, got base {spec.base}")
        self.spec = spec
        self.flip = spec.auto == "inv"

    def twist(self, h: int, j: int) -> int:
        """auto**j applied to a base element."""
        return -h if self.flip and j % 2 else h

    def mul(self, x, y):
        return (x[0] + y[0], self.twist(x[1], y[0]) + y[1])

    def inv(self, x):
        return (-x[0], -self.twist(x[1], -x[0]))

    def generators(self):
        return [(0, 1), (0, -1), (1, 0), (-1, 0)]

    def validate(self, x):
        if (
            not isinstance(x, tuple)
            or len(x) != 2
            or isinstance(x, Letter)
            or type(x[0]) is not int
            or type(x[1]) is not int
        ):
            raise StructuralError(f"HNN element must be a pair of ints (i, h), got {x!r}")

    def serialize(self, x):
        return f"h{x[0]},z{x[1]};"

    def format(self, x):
        return f"t^{x[0]}.h{x[1]}"

    def parse_at(self, text, pos):
        pos = _expect(text, pos, "t^")
        m = _INT.match(text, pos)
        if not m:
            raise ValueError(f"expected an integer at offset {pos} in {text!r}")
        pos = _expect(text, m.end(), ".h")
        m2 = _INT.match(text, pos)
        if not m2:
            raise ValueError(f"expected an integer at offset {pos} in {text!r}")
        return (int(m.group()), int(m2.group())), m2.end()


@lru_cache(maxsize=None)
def ops(spec: GroupSpec) -> _Ops:
    """Operations table for a spec (cached; specs are immutable values)."""
    if isinstance(spec, Z):
        return _ZOps(spec)
    if isinstance(spec, Prod):
        return _ProdOps(spec)
    if isinstance(spec, Free):
        return _FreeOps(spec)
    if isinstance(spec, Hnn):
        return _HnnOps(spec)
    raise UnsupportedSpec(f"not a group spec: {spec!r}")


# --------------------------------------------------------------------------
# public element operations


def identity(spec: GroupSpec):
    return ops(spec).e


def validate(spec: GroupSpec, x) -> None:
    ops(spec).validate(x)


def multiply(spec: GroupSpec, x, y):
    o = ops(spec)
    o.validate(x)
    o.validate(y)
    return o.mul(x, y)


def inverse(spec: GroupSpec, x):
    o = ops(spec)
    o.validate(x)
    return o.inv(x)


def generators(spec: GroupSpec) -> List[Any]:
    """Symmetric generating set; fixes the word metric."""
    return ops(spec).generators()


def serialize(spec: GroupSpec, x) -> bytes:
    """Length-prefixed, factor-tagged encoding; stable across runs."""
    return ops(spec).serialize(x).encode("ascii")


def format_element(spec: GroupSpec, x) -> str:
    return ops(spec).format(x)


def parse_element(spec: GroupSpec, text: str):
    text = "".join(text.split()).replace("−", "-")
    value, pos = ops(spec).parse_at(text, 0)
    if pos != len(text):
        raise ValueError(f"trailing input at offset {pos} in {text!r}")
    return value


def free_word(*letters: Tuple[str, Any]) -> Tuple[Letter, ...]:
    """Build a free-product word from (side, value) pairs, e.g. free_word(("L", 1))."""
    return tuple(Letter(s, v) for s, v in letters)


def hnn_decompose(spec: Hnn, g) -> Tuple[int, int]:
    """(i, h) with g = t**i h; the HNN normal form already is this pair."""
    ops(spec).validate(g)
    return g[0], g[1]


def pi_retract(spec: Free, w):
    """Product of the left-factor letters of ``w``, in order."""
    a = ops(spec.left)
    out = a.e
    for letter in w:
        if letter.side == "L":
            out = a.mul(out, letter.value)
    return out


def theta_retract(spec: Free, w):
    """Product of the right-factor letters of ``w``, in order."""
    b = ops(spec.right)
    out = b.e
    for letter in w:
        if letter.side == "R":
            out = b.mul(out, letter.value)
    return out


# --------------------------------------------------------------------------
# word metric


class WordMetric:
    """Breadth-first enumeration of the Cayley graph for ``generators(spec)``.

    Layers are grown on demand and kept, so repeated norm queries are cheap.
    Growing past ``max_elements`` raises :class:`BallOverflow`.
    """

    def __init__(self, spec: GroupSpec, max_elements: int = DEFAULT_MAX_ELEMENTS):
        self.spec = spec
        self.ops = ops(spec)
        self.max_elements = max_elements
        self.norms: Dict[Any, int] = {self.ops.e: 0}
        self.layers: List[List[Any]] = [[self.ops.e]]
        self._gens = self.ops.generators()

    @property
    def radius(self) -> int:
        return len(self.layers) - 1

    def _grow(self) -> None:
        mul, norms = self.ops.mul, self.norms
        r = len(self.layers)
        layer = []
        for x in self.layers[-1]:
            for s in self._gens:
                y = mul(x, s)
                if y not in norms:
                    norms[y] = r
                    layer.append(y)
                    if len(norms) > self.max_elements:
                        # leave the metric consistent: drop the partial layer
                        for z in layer:
                            del norms[z]
                        raise BallOverflow(r, len(norms) + len(layer), self.max_elements)
        layer.sort(key=self.ops.serialize)
        self.layers.append(layer)

    def grow_to(self, r: int) -> None:
        if r < 0:
            raise ValueError(f"radius must be >= 0, got {r}")
        while self.radius < r:
            self._grow()

    def ball(self, r: int) -> Dict[Any, int]:
        """Elements at distance <= r from e mapped to their norms, ordered by
        (norm, serialization)."""
        self.grow_to(r)
        return {x: k for k in range(r + 1) for x in self.layers[k]}

    def sphere(self, r: int) -> List[Any]:
        self.grow_to(r)
        return list(self.layers[r])

    def norm(self, g) -> int:
        norms = self.norms
        while g not in norms:
            self._grow()
        return norms[g]

    def distance(self, x, y) -> int:
        return self.norm(self.ops.mul(self.ops.inv(x), y))

    def displacement(self, g, h) -> int:
        """d(gh, h) = |h^-1 g h|."""
        o = self.ops
        return self.norm(o.mul(o.mul(o.inv(h), g), h))

    def sort_key(self, g) -> Tuple[int, str]:
        return (self.norm(g), self.ops.serialize(g))


def ball(spec: GroupSpec, r: int, max_elements: int = DEFAULT_MAX_ELEMENTS) -> Dict[Any, int]:
    return WordMetric(spec, max_elements).ball(r)


def word_norm(spec: GroupSpec, g, max_elements: int = DEFAULT_MAX_ELEMENTS) -> int:
    ops(spec).validate(g)
    return WordMetric(spec, max_elements).norm(g)


def displacement(spec: GroupSpec, g, h, max_elements: int = DEFAULT_MAX_ELEMENTS) -> int:
    o = ops(spec)
    o.validate(g)
    o.validate(h)
    return WordMetric(spec, max_elements).displacement(g, h)


# --------------------------------------------------------------------------
# Bass-Serre tree of a free product (barycentric subdivision)


@dataclass(frozen=True, order=True)
class TreeVertex:
    """``kind`` is "X" for an edge barycenter w, "A" for the coset wA, "B" for wB.

    Coset words are canonical: an A-coset word never ends in a left letter and
    a B-coset word never ends in a right letter. Use the module constructors.
    """

    kind: str
    word: Tuple[Letter, ...]


def barycenter(w) -> TreeVertex:
    return TreeVertex("X", tuple(w))


def coset_a(w) -> TreeVertex:
    w = tuple(w)
    if w and w[-1].side == "L":
        w = w[:-1]
    return TreeVertex("A", w)


def coset_b(w) -> TreeVertex:
    w = tuple(w)
    if w and w[-1].side == "R":
        w = w[:-1]
    return TreeVertex("B", w)


ROOT = TreeVertex("X", ())


def tree_norm(v: TreeVertex) -> int:
    """Distance to the root barycenter."""
    return 2 * len(v.word) + (v.kind != "X")


def pred(v: TreeVertex) -> TreeVertex:
    """The neighbour of ``v`` one step closer to the root."""
    if v == ROOT:
        raise ValueError("the root has no predecessor")
    if v.kind == "X":
        return coset_a(v.word) if v.word[-1].side == "L" else coset_b(v.word)
    return barycenter(v.word)


def act_on_tree(spec: Free, g, v: TreeVertex) -> TreeVertex:
    w = ops(spec).mul(g, v.word)
    if v.kind == "X":
        return barycenter(w)
    return coset_a(w) if v.kind == "A" else coset_b(w)


def tree_neighbours(spec: Free, v: TreeVertex, letters: Dict[str, Iterable[Any]]) -> List[TreeVertex]:
    """Neighbours of ``v`` whose new letters (if any) come from ``letters``.

    Coset vertices have one neighbour per element of their factor; ``letters``
    picks a finite subset of nonidentity values per side.
    """
    if v.kind == "X":
        return [coset_a(v.word), coset_b(v.word)]
    mul = ops(spec).mul
    side = "L" if v.kind == "A" else "R"
    out = [barycenter(v.word)]
    out.extend(barycenter(mul(v.word, (Letter(side, a),))) for a in letters[side])
    return out


def tree_ball(spec: Free, radius: int, letters: Dict[str, Iterable[Any]]) -> Dict[TreeVertex, int]:
    """Vertices within ``radius`` of the root in the subtree spanned by
    ``letters``, with their distances."""
    letters = {k: list(v) for k, v in letters.items()}
    dist = {ROOT: 0}
    queue = deque([ROOT])
    while queue:
        v = queue.popleft()
        d = dist[v]
        if d == radius:
            continue
        for u in tree_neighbours(spec, v, letters):
            if u not in dist:
                dist[u] = d + 1
                queue.append(u)
    return dist
