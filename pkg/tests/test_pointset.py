import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ffsalem import (
    EmptySet,
    FieldContext,
    PointSet,
    PointSetParseError,
    SalemParams,
    SingularMatrix,
    dump_points,
    fourier_spectrum,
    load_points,
    paraboloid,
    poly_graph,
    salem_bound,
    salem_report,
    sphere,
)
from oracles import direct_dft

F5 = FieldContext(5, 2)
F11 = FieldContext(11, 2)


def random_set(ctx, rng, size):
    idx = rng.choice(ctx.order, size=size, replace=False)
    return PointSet.from_indices(ctx, idx)


def test_constructors_and_membership():
    S = PointSet.from_points(F5, [(1, 2), (-1, 7)])
    assert len(S) == 2
    assert (1, 2) in S and (4, 2) in S
    assert (0, 0) not in S
    assert sorted(S.points()) == [(1, 2), (4, 2)]
    assert PointSet.empty(F5).size == 0
    assert PointSet.full(F5).size == 25


def test_pointset_is_immutable():
    S = PointSet.from_points(F5, [(1, 2)])
    with pytest.raises(AttributeError):
        S.size = 3


def test_size_matches_population_count():
    S = PointSet.from_indices(F5, [0, 3, 17])
    assert S.size == int(S.membership.sum()) == 3


def test_negate_translate_semantics():
    S = PointSet.from_points(F5, [(1, 2), (0, 3)])
    assert sorted(S.negate().points()) == [(0, 2), (4, 3)]
    assert sorted(S.translate((1, 1)).points()) == [(1, 4), (2, 3)]
    assert S.translate((2, 3)).size == S.size


def test_linear_image_and_singular_rejection():
    S = PointSet.from_points(F5, [(1, 0), (0, 1)])
    T = S.linear_image([[0, 1], [1, 0]])
    assert sorted(T.points()) == [(0, 1), (1, 0)]
    with pytest.raises(SingularMatrix):
        S.linear_image([[1, 2], [2, 4]])


def test_symmetry_checks():
    assert sphere(F5, 1).points.is_symmetric()
    graph = poly_graph(F5, [0, 0, 1]).points
    assert (1, 1) in graph and (4, 4) not in graph
    assert not graph.is_symmetric()


def test_set_algebra():
    A = PointSet.from_points(F5, [(0, 0), (1, 1)])
    B = PointSet.from_points(F5, [(1, 1), (2, 2)])
    assert sorted(A.union(B).points()) == [(0, 0), (1, 1), (2, 2)]
    assert A.intersect(B).points() == [(1, 1)]
    assert A.difference(B).points() == [(0, 0)]


@settings(max_examples=25, deadline=None)
@given(
    idx=st.lists(st.integers(min_value=0, max_value=24), min_size=0, max_size=12),
    v=st.tuples(st.integers(min_value=0, max_value=4), st.integers(min_value=0, max_value=4)),
)
def test_translate_preserves_size(idx, v):
    S = PointSet.from_indices(F5, list(set(idx)))
    assert S.translate(v).size == S.size


@pytest.mark.parametrize("p,d", [(3, 1), (3, 2), (5, 2)])
def test_spectrum_matches_direct_dft(p, d):
    ctx = FieldContext(p, d)
    rng = np.random.Generator(np.random.Philox(p * 10 + d))
    S = random_set(ctx, rng, ctx.order // 3 + 1)
    spec = fourier_spectrum(S)
    want = direct_dft(S)
    for m, val in want.items():
        assert spec.value_at(m) == pytest.approx(val, abs=1e-9)


def test_spectrum_trivial_cases():
    spec = fourier_spectrum(PointSet.empty(F5))
    assert spec.max_nontrivial == 0
    assert spec.value_at((0, 0)) == 0
    full = fourier_spectrum(PointSet.full(F5))
    assert full.value_at((0, 0)) == pytest.approx(1)
    assert full.max_nontrivial < 1e-12
    S = PointSet.from_points(F5, [(1, 2), (3, 3), (0, 4)])
    assert fourier_spectrum(S).value_at((0, 0)) == pytest.approx(3 / 25, abs=1e-12)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_plancherel_and_inversion(p):
    ctx = FieldContext(p, 2)
    rng = np.random.Generator(np.random.Philox(p))
    for _ in range(10):
        S = random_set(ctx, rng, int(rng.integers(1, ctx.order)))
        spec = fourier_spectrum(S)
        energy = ctx.order * float(np.sum(np.abs(spec.values) ** 2))
        assert energy == pytest.approx(S.size, rel=1e-9)
        # inversion: S(x) = sum_m chi(m.x) S^(m) recovers the indicator
        back = np.fft.ifftn(spec.values.reshape(ctx.grid_shape)) * ctx.order
        grid = S.grid().astype(float)
        assert np.max(np.abs(back - grid)) < 1e-9


def test_salem_invariance_under_translation_and_linear_maps():
    S = sphere(F11, 1).points
    base = np.sort(np.abs(fourier_spectrum(S).values))[:-1]
    moved = S.translate((3, 7))
    mapped = S.linear_image([[2, 1], [1, 1]])
    for other in (moved, mapped):
        vals = np.sort(np.abs(fourier_spectrum(other).values))[:-1]
        assert np.max(np.abs(vals - base)) < 1e-9
    assert fourier_spectrum(moved).max_nontrivial == pytest.approx(
        fourier_spectrum(S).max_nontrivial, abs=1e-9
    )


def test_salem_params_validation():
    with pytest.raises(ValueError):
        SalemParams(gamma=-0.5)
    with pytest.raises(ValueError):
        SalemParams(constant=0)


def test_salem_bound_log_convention():
    ctx = FieldContext(7, 2)
    assert salem_bound(ctx, 8, SalemParams()) == pytest.approx(2 * math.sqrt(8) / 49)
    with_log = salem_bound(ctx, 8, SalemParams(gamma=1.0))
    assert with_log == pytest.approx(2 * math.log(7) * math.sqrt(8) / 49)


def test_salem_report_examples():
    for curve in (sphere(FieldContext(7, 2), 1), paraboloid(FieldContext(7, 2))):
        rep = salem_report(curve.points, SalemParams())
        assert rep.passed and rep.ratio <= 1
    full = salem_report(PointSet.full(F5), SalemParams())
    assert full.passed and full.max_nontrivial < 1e-12
    with pytest.raises(EmptySet):
        salem_report(PointSet.empty(F5), SalemParams())


def test_salem_report_json_keys():
    rep = salem_report(sphere(F11, 1).points, SalemParams())
    data = rep.to_json()
    assert set(data) == {
        "max_nontrivial", "bound", "ratio", "pass", "gamma", "constant", "set_size",
    }
    assert data["pass"] is True


def test_dump_load_round_trip():
    S = sphere(F5, 2).points
    buf = io.StringIO()
    dump_points(S, buf)
    back = load_points(io.StringIO(buf.getvalue()))
    assert back == S


def test_load_points_format():
    text = "# circle sample\n5 2\n1 2\n\n# interior comment\n3 4\n"
    S = load_points(io.StringIO(text))
    assert sorted(S.points()) == [(1, 2), (3, 4)]


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("5\n1 2\n", "header"),
        ("4 2\n1 2\n", "prime"),
        ("5 2\n1 2\n1 2\n", "line 3"),
        ("5 2\n1 7\n", "line 2"),
        ("5 2\n1 x\n", "line 2"),
        ("5 2\n1\n", "line 2"),
    ],
)
def test_load_points_errors(text, fragment):
    with pytest.raises(PointSetParseError) as err:
        load_points(io.StringIO(text))
    assert fragment in str(err.value)


def test_equality_and_hash():
    A = PointSet.from_points(F5, [(1, 2)])
    B = PointSet.from_points(F5, [(1, 2)])
    assert A == B and hash(A) == hash(B)
    assert A != PointSet.from_points(F5, [(2, 1)])
