import pytest

from lacolor import groups
from lacolor.colorings import (
    ALPHA, BETA, ROOT_SENTINEL, CompileError, DecompositionError, base_z_coloring, color_key,
    color_text, compile_coloring, compose_transitive, constant_coloring, free_product_coloring,
    hnn_coloring, product_coloring, reachable_palette, tree_coloring,
)
from lacolor.groups import Free, Hnn, Prod, Z, barycenter, coset_a, free_word

F = Free(Z(), Z())


def m(n):
    # digit-sum parity of |n|
    return bin(abs(n)).count("1") % 2


def nu(n):
    tm = [m(i) for i in range(8 * n + 64)]
    zeros = [i for i, b in enumerate(tm) if b == 0]
    return zeros[n + 1] - zeros[n] - 1


@pytest.mark.parametrize("n, bit", [(0, 0), (-3, 0), (6, 0), (4, 1), (-7, 1)])
def test_base_z(n, bit):
    f = base_z_coloring()
    assert f(n) == bit == m(n)
    assert f.palette == {0, 1}


def test_product_coloring():
    f = product_coloring(base_z_coloring(), base_z_coloring())
    assert f((0, 0)) == (0, 0)
    assert f((3, 5)) == (m(5), m(3)) == (0, 0)
    assert f((1, 2)) == (1, 1)
    assert len(f.palette) == 4


def test_hnn_coloring():
    f = hnn_coloring(base_z_coloring(), "inv")
    assert f((0, 0)) == (0, 0)
    assert f((1, 4)) == (1, 1)
    assert f((-2, -1)) == (1, 1)


def test_compose_transitive_examples():
    spec = Hnn(Z(), "id")
    f = compose_transitive(
        spec, base_z_coloring(), lambda g: g[0], base_z_coloring(),
        lambda g: ((g[0], 0), g[1]), lambda h: (0, h),
    )
    assert f((0, 0)) == (0, 0)
    assert f((2, 5)) == (1, 0)
    p = Prod(Z(), Z())
    fp = compose_transitive(
        p, base_z_coloring(), lambda g: g[1], base_z_coloring(),
        lambda g: ((0, g[1]), g[0]), lambda h: (h, 0),
    )
    assert fp((0, 1)) == (m(1), m(0))


def test_compose_transitive_rejects_bad_oracle():
    p = Prod(Z(), Z())
    f = compose_transitive(
        p, base_z_coloring(), lambda g: g[1], base_z_coloring(),
        lambda g: ((0, g[1]), g[0] + 1), lambda h: (h, 0),
    )
    with pytest.raises(DecompositionError):
        f((2, 3))
    # remainder outside the stabilizer
    g = compose_transitive(
        p, base_z_coloring(), lambda g: g[1], base_z_coloring(),
        lambda g: ((0, 0), g[0]), lambda h: (h, 0),
    )
    with pytest.raises(DecompositionError):
        g((2, 3))


@pytest.mark.parametrize("auto", ["id", "inv"])
def test_hnn_agrees_with_compose_transitive(auto):
    spec = Hnn(Z(), auto)
    direct = compile_coloring(spec)
    generic = compose_transitive(
        spec, base_z_coloring(), lambda g: g[0], base_z_coloring(),
        lambda g: ((g[0], 0), g[1]), lambda h: (0, h),
    )
    for g in groups.ball(spec, 6):
        assert direct(g) == generic(g)


def test_product_agrees_with_compose_transitive():
    spec = Prod(Z(), Z())
    direct = compile_coloring(spec)
    generic = compose_transitive(
        spec, base_z_coloring(), lambda g: g[1], base_z_coloring(),
        lambda g: ((0, g[1]), g[0]), lambda h: (h, 0),
    )
    for g in groups.ball(spec, 6):
        assert direct(g) == generic(g)


def test_tree_coloring_examples():
    t = tree_coloring(F, base_z_coloring(), base_z_coloring())
    assert t(barycenter(())) == (nu(0), 0, 0, 0)
    assert t(coset_a(())) == (nu(1), 1, ALPHA, BETA)
    assert t(barycenter(free_word(("L", 1), ("R", 1)))) == (nu(4), 1, m(1), m(1))


def test_free_product_coloring_examples():
    f = free_product_coloring(base_z_coloring(), base_z_coloring())
    first, second = f(())
    assert second is ROOT_SENTINEL
    first, second = f(free_word(("L", 1)))
    assert first[:2] == (nu(2), 2)
    assert second == (nu(1), 1, ALPHA, BETA)


def test_free_product_palette_bound():
    f = compile_coloring(F)
    reached = reachable_palette(f, 8)
    assert reached <= f.palette
    fa = fb = 2
    assert len(f.palette) <= 9 * (fa + 1) * (fb + 1) * 9 + 9 * (fa + 1) * (fb + 1)


def test_compile_examples():
    assert compile_coloring(Z())(5) == m(5) == 0
    assert len(compile_coloring(Prod(Z(), Z())).palette) == 4
    f = compile_coloring(F)
    for g in groups.ball(F, 6):
        assert f(g) in f.palette


def test_compile_rejects_unsupported():
    with pytest.raises(CompileError) as exc:
        compile_coloring(Prod(Z(), Hnn(F, "id")))
    assert "root.prod.right.hnn.base" in str(exc.value)


SPECS = [Z(), Prod(Z(), Z()), F, Hnn(Z(), "inv"), Hnn(Z(), "id"), Free(Prod(Z(), Z()), Z()),
         Prod(F, Z()), Free(Hnn(Z(), "inv"), F)]


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_palette_soundness_and_purity(spec):
    f = compile_coloring(spec)
    e = groups.identity(spec)
    radius = 8 if not isinstance(spec, Free) else 5
    for g in groups.ball(spec, radius):
        c = f(g)
        assert c in f.palette
        assert f(groups.multiply(spec, e, g)) == c


def test_free_norm_components_depend_only_on_length():
    for spec in (F, Free(Prod(Z(), Z()), Z())):
        f = compile_coloring(spec)
        seen = {}
        for g in groups.ball(spec, 6):
            first = f(g)[0]
            assert seen.setdefault(len(g), first[:2]) == first[:2]


def test_provenance():
    f = compile_coloring(Free(Prod(Z(), Z()), Hnn(Z(), "inv")))
    assert f.describe() == (
        "free_product_coloring(product_coloring(base_z_coloring, base_z_coloring), "
        "hnn_coloring(base_z_coloring, inv))"
    )
    assert f.notes


def test_color_text_and_order():
    c = ((1, 2, 0, ALPHA), ROOT_SENTINEL)
    assert color_text(c) == "((1,2,0,alpha),root)"
    assert sorted([(0, BETA), 3, ALPHA, (0, 1)], key=color_key) == [3, ALPHA, (0, 1), (0, BETA)]
    assert constant_coloring(Z(), 7)(123) == 7
