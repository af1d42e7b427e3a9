from fractions import Fraction

import pytest

from twistedn2.algebra import BasisVector, Element, rank2, twisted
from twistedn2.derivations import (
    DerivationTable,
    GammaHom,
    WindowError,
    ad_table,
    delta_phi,
    derivation_residuals,
    inner_oracle,
    solve_derivation_space,
    valid_pairs,
)
from twistedn2.scalars import THETA, as_scalar

A = twisted()
R = rank2()
h = Fraction(1, 2)


def bv(kind, value, alg=A):
    return alg.basis(kind, value)


def all_zero(res):
    return all(not r.value for r in res)


def test_ad_is_derivation_on_window():
    big = A.window_basis(6)
    d = ad_table(A, A.G(h), big, 1, h)
    assert all_zero(derivation_residuals(d, valid_pairs(A, A.window_basis(4))))


def test_zero_table():
    basis = A.window_basis(3)
    d = DerivationTable(A, 0, (2,), {b: Element() for b in basis})
    assert all_zero(derivation_residuals(d, valid_pairs(A, basis)))


def test_perturbed_table_fails_with_witness():
    big = A.window_basis(6)
    d = ad_table(A, -A.G(h), big, 1, h)
    images = dict(d.images)
    images[bv("L", 1)] = images[bv("L", 1)] + A.G(Fraction(3, 2))
    bad = DerivationTable(A, 1, (1,), images)
    res = [r for r in derivation_residuals(bad, valid_pairs(A, A.window_basis(4))) if r.value]
    assert res
    assert any({r.x, r.y} == {bv("L", 1), bv("L", -1)} for r in res)


def test_escape_is_reported():
    basis = A.window_basis(2)
    d = ad_table(A, A.L(1), basis, 0, 1)
    with pytest.raises(WindowError, match="pair"):
        derivation_residuals(d, [(bv("L", 2), bv("L", 1))])


def test_inner_oracle_odd():
    d = inner_oracle(A, "odd", h, A.window_basis(3))
    assert d.image(bv("L", 2)) == h * A.G(Fraction(5, 2))


def test_inner_oracle_even_zero():
    d = inner_oracle(A, "even", 0, A.window_basis(3))
    for i in range(-3, 4):
        assert d.image(bv("L", i)) == i * A.L(i)
    assert d.image(bv("G", Fraction(3, 2))) == Fraction(3, 2) * A.G(Fraction(3, 2))
    assert not d.image(A.C)


def test_inner_oracle_even_half_integer():
    # ad(T_{3/2}) is proportional to ad((a_p/p) T_p) for any a_p
    d = inner_oracle(A, "even", Fraction(3, 2), A.window_basis(3))
    assert d.image(bv("G", 0)) == A.G(Fraction(3, 2))


@pytest.mark.parametrize("parity, degree", [
    ("even", 0), ("even", 1), ("even", -h), ("odd", 0), ("odd", Fraction(3, 2)),
])
def test_oracles_pass_identity(parity, degree):
    big = A.window_basis(5)
    d = inner_oracle(A, parity, degree, big)
    d.check_homogeneous()
    assert all_zero(derivation_residuals(d, valid_pairs(A, A.window_basis(3))))


def test_delta_phi_values():
    phi = GammaHom((1, 0))
    basis = R.window_basis(2)
    d = delta_phi(R, phi, basis)
    assert d.image(bv("L", 1 + THETA, R)) == R.L(1 + THETA)
    assert d.image(bv("T", h, R)) == h * R.T(h)
    zero = delta_phi(R, GammaHom((0, 0)), basis)
    assert all(not v for v in zero.images.values())


@pytest.mark.parametrize("phi", [(1, 0), (0, 1), (3, Fraction(-1, 2))])
def test_delta_phi_is_derivation(phi):
    d = delta_phi(R, GammaHom(phi), R.window_basis(2))
    assert all_zero(derivation_residuals(d, valid_pairs(R, R.window_basis(2))))


def test_delta_phi_not_a_single_ad_l0():
    # ad(x L_0) scales L_γ by -x·γ; no x fits γ = 1 and γ = θ at once
    d = delta_phi(R, GammaHom((1, 0)), R.window_basis(1))
    l1, lt = bv("L", 1, R), bv("L", THETA, R)
    x = -d.image(l1).coeff(l1)
    assert d.image(lt).coeff(lt) != -x * THETA


def test_window_too_small():
    with pytest.raises(WindowError):
        solve_derivation_space(A, "odd", h, 3, 3)
    with pytest.raises(WindowError):
        solve_derivation_space(A, "odd", h, 1, h)


def test_solver_report_text():
    rep = solve_derivation_space(A, "odd", h, 8, 3)
    text = rep.to_text()
    assert "dim=1, match=ad(G(1/2))" in text
    assert rep.to_text() == solve_derivation_space(A, "odd", h, 8, 3).to_text()


@pytest.mark.parametrize("parity, degree", [
    (p, Fraction(k, 2)) for p in ("even", "odd") for k in (-6, -5, 5, 6)
])
def test_larger_degrees(parity, degree):
    rep = solve_derivation_space(A, parity, degree, 8, 2)
    assert rep.dimension == 1 and rep.all_matched


def test_solver_kernel_restricts_to_oracle():
    rep = solve_derivation_space(A, "even", 1, 6, 2)
    (table,) = rep.tables
    (m,) = rep.matches
    oracle = inner_oracle(A, "even", 1, list(table.images))
    c = m.coefficients[0]
    for b, im in table.images.items():
        assert im == oracle.images[b] * c
