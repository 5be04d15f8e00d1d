import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gapcorr.gaps import (BatchDecomposition, batch_decomposition, classify_gaps,
                          divergence_witness, gap_spectrum, three_gap_check)
from gapcorr.generators import (GOLDEN, Kronecker, RootSequence, UniformRandom, VanDerCorput,
                                generate)
from gapcorr.paircorr import pair_count_fast
from gapcorr.torus import PointSet


def exact_kronecker_spectrum(alpha, n):
    """Gap spectrum in rational arithmetic (alpha taken as its exact binary value)."""
    a = Fraction(alpha)
    xs = sorted((i * a) % 1 for i in range(1, n + 1))
    gaps = [b - x for x, b in zip(xs, xs[1:])] + [1 - xs[-1] + xs[0]]
    out = {}
    for g in gaps:
        out[g] = out.get(g, 0) + 1
    return sorted(out.items())


def equally_spaced(n):
    return PointSet(np.arange(n) / n, f"grid{n}")


def doubled(n):
    base = generate(UniformRandom(99), max(1, n // 2)).points
    return PointSet(np.repeat(base, 2), "doubled")


def test_spectrum_equally_spaced():
    sp = gap_spectrum(PointSet([0.0, 0.25, 0.5, 0.75]), 0.0)
    assert sp.gaps == (0.25,) and sp.counts == (4,)


def test_spectrum_with_wrap_gap():
    sp = gap_spectrum(PointSet([0.0, 0.1, 0.5]), 0.0)
    assert sp.gaps == pytest.approx((0.1, 0.4, 0.5), abs=1e-15)
    assert sp.counts == (1, 1, 1)


def test_single_point_has_one_full_gap():
    sp = gap_spectrum(PointSet([0.3]))
    assert sp.gaps == (1.0,) and sp.counts == (1,)


def test_negative_tolerance_rejected():
    with pytest.raises(ValueError):
        gap_spectrum(PointSet([0.1]), -1e-3)


def test_merge_keeps_group_minimum():
    sp = gap_spectrum(PointSet([0.0, 0.3, 0.6 + 1e-13]), 1e-12)
    assert sp.k == 2
    assert sp.gaps[0] == pytest.approx(0.3, abs=1e-15)
    assert sp.counts == (2, 1)


@pytest.mark.parametrize("alpha", [GOLDEN, math.sqrt(2) - 1, math.pi - 3, 0.377, 0.5, 0.375])
@pytest.mark.parametrize("n", [1, 2, 10, 97, 500])
def test_kronecker_spectrum_matches_rational_oracle(alpha, n):
    sp = gap_spectrum(generate(Kronecker(alpha), n))
    exact = exact_kronecker_spectrum(alpha, n)
    assert sp.k == len(exact)
    assert list(sp.counts) == [c for _, c in exact]
    assert sp.gaps == pytest.approx([float(g) for g, _ in exact], abs=1e-15)


def test_kronecker_golden_three_gaps():
    assert gap_spectrum(generate(Kronecker(GOLDEN), 100), 1e-12).k <= 3
    report = three_gap_check(GOLDEN, [10, 100, 1000])
    assert report["violations"] == []
    assert all(r["k"] <= 3 for r in report["rows"])


def test_three_gap_rational_degenerate():
    assert list(generate(Kronecker(0.5), 4).points) == [0.5, 0.0, 0.5, 0.0]
    row = three_gap_check(0.5, [4])["rows"][0]
    assert row["k"] == 2 and row["gaps"] == [0.0, 0.5] and row["counts"] == [2, 2]


def test_three_gap_check_flags_violation():
    with pytest.raises(ValueError):
        three_gap_check(GOLDEN, [])


@settings(max_examples=60, deadline=None)
@given(st.floats(-10, 10, allow_nan=False), st.integers(1, 3000))
def test_three_gap_property(alpha, n):
    assert gap_spectrum(generate(Kronecker(alpha), n)).k <= 3


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 10000))
def test_van_der_corput_finite_gaps(n):
    assert gap_spectrum(generate(VanDerCorput(2), n)).k <= 3


@settings(max_examples=80, deadline=None)
@given(st.lists(st.one_of(st.floats(0, 1, exclude_max=True),
                          st.integers(0, 15).map(lambda k: k / 16)), min_size=1, max_size=200))
def test_spectrum_consistency(values):
    ps = PointSet(values)
    sp = gap_spectrum(ps)
    assert sum(sp.counts) == ps.n
    assert abs(sp.total_length() - 1.0) <= max(sp.k, 1) * 1e-12 + ps.n * 2e-16
    assert sp.k <= ps.n
    assert all(b > a for a, b in zip(sp.gaps, sp.gaps[1:]))
    has_dup = len(set(values)) < len(values)
    assert (sp.gaps[0] == 0.0) == has_dup
    b = batch_decomposition(ps)
    assert has_dup == any(size >= 2 for size in b.batch_sizes)


# -- classification ---------------------------------------------------------


def test_classify_equally_spaced_is_medium():
    traj = classify_gaps(equally_spaced, [100, 1000, 10000])
    assert traj.labels == ("Medium",)
    assert traj.scaled[0] == pytest.approx((1.0, 1.0, 1.0), abs=1e-9)
    assert traj.bounds[0] == pytest.approx(1.0)


def test_classify_duplicates_is_zero():
    traj = classify_gaps(doubled, [50, 200, 1000])
    assert traj.labels[0] == "Zero"
    assert all(d == 0.0 for d in traj.gaps[0])


def test_classify_large_gap():
    # one point cluster near 0 plus a fixed macroscopic gap
    def source(n):
        return PointSet(np.append(np.arange(n - 1) / (4 * n), 0.5), "cluster")

    traj = classify_gaps(source, [100, 1000, 10000], large_threshold=100)
    assert traj.labels[-1] == "Large"
    assert traj.labels[0] == "Medium"


def test_classify_kronecker_reproducible():
    a = classify_gaps(Kronecker(GOLDEN), [100, 1000, 10000], large_threshold=100)
    b = classify_gaps(Kronecker(GOLDEN), [100, 1000, 10000], large_threshold=100)
    assert a == b
    assert set(a.labels) <= {"Medium", "Large"}


def test_classify_changing_k_is_undetermined():
    traj = classify_gaps(Kronecker(0.5), [1, 4])  # k = 1 then k = 2
    assert traj.labels[-1] == "Undetermined"
    assert traj.gaps[-1][0] is None


def test_classify_argument_errors():
    with pytest.raises(ValueError):
        classify_gaps(RootSequence(), [])
    with pytest.raises(ValueError):
        classify_gaps(RootSequence(), [10, 5])


def test_trajectory_csv():
    traj = classify_gaps(equally_spaced, [10, 20])
    lines = traj.to_csv().splitlines()
    assert lines[0] == "N,rank,d,N_times_d,label"
    assert len(lines) == 3
    assert lines[1].startswith("10,1,") and lines[1].endswith(",Medium")


# -- batches ----------------------------------------------------------------


def test_batch_examples():
    b = batch_decomposition(PointSet([0.2, 0.2, 0.5]))
    assert sorted(b.batch_sizes) == [1, 2]
    assert b.lower_bound == pytest.approx(2 / 3)
    b = batch_decomposition(generate(UniformRandom(1), 100))
    assert set(b.batch_sizes) == {1} and b.lower_bound == 0.0
    b = batch_decomposition(PointSet([0.7] * 9))
    assert b.batch_sizes == (9,) and b.lower_bound == 8.0


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 20).map(lambda k: k / 21), min_size=1, max_size=150),
       st.floats(0, 50))
def test_batch_bound_holds(values, s):
    ps = PointSet(values)
    b = batch_decomposition(ps)
    assert sum(b.batch_sizes) == ps.n
    assert b.lower_bound >= 0
    assert pair_count_fast(ps, s) >= b.pair_floor


def test_divergence_witness_doubled():
    rows = divergence_witness(doubled, [10, 100, 1000], 1.0)
    for r in rows:
        assert r["holds"]
        assert r["lower_bound"] == 1.0
        assert r["R_over_N"] >= 1.0


def test_divergence_witness_distinct():
    rows = divergence_witness(UniformRandom(4), [100, 1000], 1.0)
    assert all(r["lower_bound"] == 0.0 and r["holds"] for r in rows)


def sqrt_batches(n):
    k = math.isqrt(n)
    return PointSet(np.repeat(np.arange(k) / k, n // k), f"sqrt-batches({n})")


def test_sqrt_batch_family_grows():
    rows = divergence_witness(sqrt_batches, [100, 10000], 1.0)
    for r in rows:
        assert r["lower_bound"] == pytest.approx(math.sqrt(r["n"]) - 1, rel=1e-9)
        assert r["R_over_N"] >= r["lower_bound"]
    assert rows[1]["lower_bound"] > rows[0]["lower_bound"]


def test_batch_decomposition_dict():
    d = batch_decomposition(PointSet([0.1, 0.1])).to_dict()
    assert d == {"n": 2, "batches": 1, "batch_sizes": [2], "lower_bound": 1.0}
    assert BatchDecomposition((1, 1), 2).pair_floor == 0
