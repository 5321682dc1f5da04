"""Finite-palette colorings compiled from group specs.

``compile_coloring`` follows the spec tree:

* Z: n -> thue_morse(|n|)
* prod(A, B): (a, b) -> (f_B(b), f_A(a)), the transitive-action composite for
  the action on the right factor with stabilizer A
* hnn(Z, auto): t^i h -> (thue_morse(|i|), f_base(h))
* free(A, B): the barycenter coloring (tree color of w, tree color of pred(w))
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Optional, Tuple

from . import groups
from .groups import Free, GroupSpec, Hnn, Prod, TreeVertex, UnsupportedSpec, Z
from .sequences import BinarySeq, squarefree_ternary

THUE_MORSE_RULE = "thue-morse: parity of binary digit sum"
TERNARY_RULE = "square-free ternary: ones between consecutive zeros of thue-morse"


@dataclass(frozen=True)
class Sentinel:
    name: str

    def __repr__(self) -> str:
        return self.name


ALPHA = Sentinel("alpha")
BETA = Sentinel("beta")
ROOT_SENTINEL = Sentinel("root")


def color_key(c) -> Tuple:
    """Total order on colors: ints < sentinels < tuples."""
    if isinstance(c, tuple):
        return (2, tuple(color_key(x) for x in c))
    if isinstance(c, Sentinel):
        return (1, c.name)
    return (0, c)


def color_text(c) -> str:
    if isinstance(c, tuple):
        return "(" + ",".join(color_text(x) for x in c) + ")"
    if isinstance(c, Sentinel):
        return c.name
    return str(c)


class CompileError(UnsupportedSpec):
    def __init__(self, message: str, location: str):
        super().__init__(f"{message} (at {location})")
        self.location = location


class DecompositionError(ValueError):
    """A coset decomposition oracle returned an inconsistent answer."""


class Coloring:
    """A pure map from points to a finite palette.

    For group colorings the points are group elements and the acting group
    acts by left multiplication. G-set colorings (``action`` given) color other
    points, such as vertices of a Bass-Serre tree.
    """

    def __init__(
        self,
        spec: GroupSpec,
        fn: Callable[[Any], Any],
        palette: Iterable,
        provenance: Tuple,
        action: Optional[Callable[[Any, Any], Any]] = None,
        notes: Tuple[str, ...] = (),
    ):
        self.spec = spec
        self.fn = fn
        self.palette: FrozenSet = frozenset(palette)
        self.provenance = provenance
        self.notes = notes
        self._action = action

    @property
    def is_gset(self) -> bool:
        return self._action is not None

    def __call__(self, x):
        return self.fn(x)

    def act_point(self, g, x):
        if self._action is not None:
            return self._action(g, x)
        return groups.ops(self.spec).mul(g, x)

    def sorted_palette(self) -> List:
        return sorted(self.palette, key=color_key)

    def palette_index(self) -> Dict[Any, int]:
        return {c: i for i, c in enumerate(self.sorted_palette())}

    def describe(self) -> str:
        return provenance_text(self.provenance)

    def __repr__(self) -> str:
        return f"Coloring({self.spec}, {self.describe()})"


def provenance_text(p) -> str:
    name, *args = p
    if not args:
        return name
    inner = ", ".join(provenance_text(a) if isinstance(a, tuple) else str(a) for a in args)
    return f"{name}({inner})"


_TM = BinarySeq()


def _tm_abs(n: int) -> int:
    return _TM[-n if n < 0 else n]


def base_z_coloring() -> Coloring:
    return Coloring(Z(), _tm_abs, (0, 1), ("base_z_coloring",))


def constant_coloring(spec: GroupSpec, color=0) -> Coloring:
    return Coloring(spec, lambda g: color, (color,), ("constant", color))


def compose_transitive(
    spec: GroupSpec,
    phi: Coloring,
    orbit: Callable[[Any], Any],
    psi: Coloring,
    decomp: Callable[[Any], Tuple[Any, Any]],
    embed: Callable[[Any], Any],
) -> Coloring:
    """Composite coloring g -> (phi(g x0), psi(a_j^-1 g)) for a transitive action.

    ``orbit(g)`` is the point g x0, ``decomp(g)`` returns ``(a_j, h)`` with
    ``h`` an element of the stabilizer's own spec and ``g = a_j * embed(h)``.
    The oracle is checked on every evaluation.
    """
    o = groups.ops(spec)
    x0 = orbit(o.e)

    def fn(g):
        rep, h = decomp(g)
        inside = embed(h)
        if o.mul(rep, inside) != g:
            raise DecompositionError(f"decomposition of {g!r} gives {rep!r} * {inside!r}")
        if orbit(inside) != x0:
            raise DecompositionError(f"{inside!r} does not stabilize the base point")
        return (phi(orbit(g)), psi(h))

    palette = itertools.product(phi.sorted_palette(), psi.sorted_palette())
    return Coloring(spec, fn, palette, ("compose_transitive", phi.provenance, psi.provenance))


def product_coloring(left: Coloring, right: Coloring) -> Coloring:
    lf, rf = left.fn, right.fn

    def fn(g):
        return (rf(g[1]), lf(g[0]))

    palette = itertools.product(right.sorted_palette(), left.sorted_palette())
    return Coloring(
        Prod(left.spec, right.spec), fn, palette,
        ("product_coloring", left.provenance, right.provenance),
    )


def hnn_coloring(base: Coloring, auto: str) -> Coloring:
    if not isinstance(base.spec, Z):
        raise CompileError(f"HNN base must be Z, got {base.spec}", "hnn.base")
    bf = base.fn

    def fn(g):
        return (_tm_abs(g[0]), bf(g[1]))

    palette = itertools.product((0, 1), base.sorted_palette())
    return Coloring(Hnn(base.spec, auto), fn, palette, ("hnn_coloring", base.provenance, auto))


def tree_coloring(spec: Free, col_a: Coloring, col_b: Coloring) -> Coloring:
    """Coloring of the barycentric Bass-Serre tree vertices of ``spec``:
    (nu(|x|), |x| mod 3, f_A(pi(w)) or alpha, f_B(theta(w)) or beta)."""
    fa, fb = col_a.fn, col_b.fn

    def fn(v: TreeVertex):
        n = groups.tree_norm(v)
        if v.kind == "X":
            return (
                squarefree_ternary(n), n % 3,
                fa(groups.pi_retract(spec, v.word)), fb(groups.theta_retract(spec, v.word)),
            )
        return (squarefree_ternary(n), n % 3, ALPHA, BETA)

    palette = itertools.product(
        (0, 1, 2), (0, 1, 2),
        col_a.sorted_palette() + [ALPHA], col_b.sorted_palette() + [BETA],
    )
    return Coloring(
        spec, fn, palette, ("tree_coloring", col_a.provenance, col_b.provenance),
        action=lambda g, v: groups.act_on_tree(spec, g, v),
    )


def free_product_coloring(col_a: Coloring, col_b: Coloring) -> Coloring:
    spec = Free(col_a.spec, col_b.spec)
    tree = tree_coloring(spec, col_a, col_b)
    tf = tree.fn

    def fn(w):
        v = groups.barycenter(w)
        if not w:
            return (tf(v), ROOT_SENTINEL)
        return (tf(v), tf(groups.pred(v)))

    on_x = [(a, b, c, d) for a, b, c, d in tree.sorted_palette() if c != ALPHA and d != BETA]
    at_cosets = [(a, b, ALPHA, BETA) for a in (0, 1, 2) for b in (0, 1, 2)]
    palette = [(x, y) for x in on_x for y in at_cosets + [ROOT_SENTINEL]]
    notes = ("second component evaluates coset vertices only; its last two entries are always (alpha, beta)",)
    return Coloring(
        spec, fn, palette,
        ("free_product_coloring", col_a.provenance, col_b.provenance),
        notes=notes,
    )


def compile_coloring(spec: GroupSpec, location: str = "root") -> Coloring:
    if isinstance(spec, Z):
        return base_z_coloring()
    if isinstance(spec, Prod):
        return product_coloring(
            compile_coloring(spec.left, location + ".prod.left"),
            compile_coloring(spec.right, location + ".prod.right"),
        )
    if isinstance(spec, Hnn):
        if not isinstance(spec.base, Z):
            raise CompileError(f"HNN extensions are supported over Z only, got {spec.base}", location + ".hnn.base")
        return hnn_coloring(compile_coloring(spec.base, location + ".hnn.base"), spec.auto)
    if isinstance(spec, Free):
        return free_product_coloring(
            compile_coloring(spec.left, location + ".free.left"),
            compile_coloring(spec.right, location + ".free.right"),
        )
    raise CompileError(f"unsupported node {spec!r}", location)


def reachable_palette(f: Coloring, radius: int, max_elements: int = groups.DEFAULT_MAX_ELEMENTS) -> FrozenSet:
    """Colors actually taken on ball(radius)."""
    return frozenset(f(g) for g in groups.ball(f.spec, radius, max_elements))
