import pytest

from conftest import unit_chars
from localperiods import (CharValue, euler_factor, inert_place, split_place,
                          zeta_base_split_closed, zeta_base_split_series,
                          zeta_closed, zeta_closed_inert, zeta_closed_split,
                          zeta_recursive)
from localperiods.identity import localize_zeta_mismatch, rel_err, sample_datum, sample_pair
from localperiods.zetarec import series_truncation_bound


def test_inert_base_case_is_one(rng):
    field = inert_place(2)
    for _ in range(20):
        small = sample_datum(1, field, rng)
        big = sample_datum(2, field, rng)
        assert zeta_closed_inert(small, big) == pytest.approx(1.0)
        assert zeta_recursive(small, big) == pytest.approx(1.0)


def test_base_split_series_expected_values():
    field = split_place(2)
    one = CharValue.one()
    # closed form at trivial characters: (1 - q^{-1}) / (1 - q^{-1/2})^2
    expected = (1 - 0.5) / (1 - 2 ** -0.5) ** 2
    assert expected == pytest.approx(5.82842712474619)
    got = zeta_base_split_series(one, one, one, field, 100)
    assert got == pytest.approx(expected, abs=1e-12)
    assert zeta_base_split_closed(one, one, one, field) == pytest.approx(expected)
    # one-term truncation at q = 4
    got = zeta_base_split_series(one, one, one, split_place(4), 1)
    assert got == pytest.approx(2.0)


def test_base_split_series_vs_closed_random(rng):
    for q in (2, 3):
        field = split_place(q)
        bound = series_truncation_bound(field, 200)
        for _ in range(20):
            theta, phi, xi0 = unit_chars(rng, 3)
            series = zeta_base_split_series(theta, phi, xi0, field, 200)
            closed = zeta_base_split_closed(theta, phi, xi0, field)
            assert abs(series - closed) <= bound + 1e-12


def test_base_split_series_geometric_convergence(rng):
    # truncation error shrinks like q^{-1/2} per extra term; the per-step ratio
    # oscillates with the character phases, so measure the geometric-mean rate
    # over a long window (still well above the float noise floor)
    for q in (2, 3):
        field = split_place(q)
        theta, phi, xi0 = unit_chars(rng, 3)
        closed = zeta_base_split_closed(theta, phi, xi0, field)
        t1, t2 = 10, 50
        e1 = abs(zeta_base_split_series(theta, phi, xi0, field, t1) - closed)
        e2 = abs(zeta_base_split_series(theta, phi, xi0, field, t2) - closed)
        rate = (e2 / e1) ** (1.0 / (t2 - t1))
        target = q ** -0.5
        assert abs(rate - target) < 0.1 * target


def test_base_split_swap_symmetry(rng):
    field = split_place(3)
    theta, phi, xi0 = unit_chars(rng, 3)
    a = zeta_base_split_closed(theta, phi, xi0, field)
    b = zeta_base_split_closed(phi, theta, xi0.inv(), field)
    assert a == pytest.approx(b)


def test_base_split_zero_factor_not_pole():
    # theta*phi at the pole of L_F(1, .): the reciprocal factor vanishes
    field = split_place(2)
    theta = CharValue(2.0)
    phi = CharValue(1.0)
    assert zeta_base_split_closed(theta, phi, CharValue.one(), field) == pytest.approx(0.0)


def test_base_split_series_requires_unitary():
    field = split_place(2)
    with pytest.raises(ValueError):
        zeta_base_split_series(CharValue(2.0), CharValue.one(), CharValue.one(), field, 10)
    with pytest.raises(ValueError):
        zeta_base_split_series(CharValue.one(), CharValue.one(), CharValue.one(), field, 0)


def test_split_base_cases_of_both_routes(rng):
    field = split_place(2)
    small = sample_datum(1, field, rng)
    big = sample_datum(2, field, rng)
    expected = zeta_base_split_closed(big.theta(1), big.phi(1), small.chars[0], field)
    assert zeta_recursive(small, big) == pytest.approx(expected)
    assert zeta_closed_split(small, big) == pytest.approx(expected)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_recursion_matches_closed_inert(n, q, rng):
    field = inert_place(q)
    for _ in range(50):
        small, big = sample_pair(n, field, rng)
        assert rel_err(zeta_closed_inert(small, big), zeta_recursive(small, big)) < 1e-9


@pytest.mark.parametrize("n", [1, 2, 4])
def test_recursion_matches_closed_split(n, q, rng):
    field = split_place(q)
    for _ in range(50):
        small, big = sample_pair(n, field, rng)
        assert rel_err(zeta_closed_split(small, big), zeta_recursive(small, big)) < 1e-9


def test_recursion_split_n3_localizes_single_factor(rng):
    # the odd-case split display carries one mismatched index pairing; the
    # factor-level comparison must name exactly that factor and nothing else
    field = split_place(2)
    for _ in range(10):
        small, big = sample_pair(3, field, rng)
        assert rel_err(zeta_closed_split(small, big), zeta_recursive(small, big)) > 1e-6
        diffs = localize_zeta_mismatch(small, big)
        assert len(diffs) == 1
        assert diffs[0].factor.startswith("L_F(1/2, nu1*th2)")


def test_recursion_convention_error_at_twist_pole():
    # mu_1 * nu_1 = q_F puts the convention-sensitive quadratic-twist factor on
    # its pole: the cross-check must stop with the factor named, not guess
    from localperiods import ConventionError, split_datum
    big = split_datum(2, [2.0, 1.0, 1.0])
    small = split_datum(2, [1.0, 1.0])
    with pytest.raises(ConventionError) as exc:
        zeta_recursive(small, big)
    assert "chi^1*mu1*nu1" in exc.value.factor


def test_zeta_conjugation_symmetry(rng):
    for field in (inert_place(2), split_place(3)):
        for n in (1, 2):
            small, big = sample_pair(n, field, rng)
            lhs = zeta_closed(small.conjugated(), big.conjugated())
            rhs = zeta_closed(small, big).conjugate()
            assert rel_err(lhs, rhs) < 1e-12
            lhs = zeta_recursive(small.conjugated(), big.conjugated())
            rhs = zeta_recursive(small, big).conjugate()
            assert rel_err(lhs, rhs) < 1e-12


def test_closed_inert_n1_explicit_display(rng):
    # n = 1: L(1/2, x X) L(1/2, X/x) / (L_E(1/2, chi X) L_E(1, X))
    from localperiods import inert_datum
    field = inert_place(2)
    (x,) = unit_chars(rng, 1)
    (X,) = unit_chars(rng, 1)
    small = inert_datum(2, 2, [x])
    big = inert_datum(2, 3, [X])
    qe = field.q_E
    expected = (euler_factor(0.5, qe, x.value * X.value)
                * euler_factor(0.5, qe, X.value / x.value)
                * (1 - qe ** -0.5 * -X.value)
                * (1 - qe ** -1.0 * X.value))
    assert zeta_closed_inert(small, big) == pytest.approx(expected)
