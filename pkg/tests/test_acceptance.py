"""Acceptance suite, one test per criterion.

Each test records a one-line detail; tests/conftest.py prints a PASS/FAIL
line per criterion at the end of the run.  Run standalone with
``python tests/test_acceptance.py``.
"""
import itertools
import time
from fractions import Fraction

from twistedn2.algebra import BasisVector, Element, rank2, twisted
from twistedn2.automorphisms import (
    AutoSpec,
    AutoTable,
    GeneralizedAutoSpec,
    classify,
    epsilon_auto,
    generalized_auto,
    homomorphism_residuals,
    identity_auto,
    inner_auto,
    varpi,
)
from twistedn2.bialgebra import (
    Tensor,
    cocycle_residual,
    cybe,
    graded_cocycle_residual,
    skew_check,
    skew_residual,
    tau,
    tensor,
    xi,
)
from twistedn2.derivations import (
    DerivationTable,
    GammaHom,
    ad_table,
    delta_phi,
    derivation_residuals,
    solve_derivation_space,
    valid_pairs,
)
from twistedn2.linalg import solve_in_span
from twistedn2.scalars import I, THETA, as_scalar

A = twisted()
R = rank2()
h = Fraction(1, 2)
BETAS = (as_scalar(2), as_scalar(3), I)


def nonzero(residuals):
    return [r for r in residuals if r.value]


# -- 1 ----------------------------------------------------------------------------


def test_criterion_1(record_property):
    t0 = time.perf_counter()
    lines, bad_total = [], 0
    for alg, bound in ((A, 3), (R, 2)):
        bad, n_pairs, n_triples = alg.identity_sweep(bound, ordered=True)
        bad_total += len(bad)
        lines.append(f"{alg.name} bound {bound}: {n_pairs} pairs, {n_triples} triples, "
                     f"{len(bad)} nonzero")
    elapsed = time.perf_counter() - t0
    record_property("detail", "; ".join(lines) + f"; {elapsed:.1f}s")
    assert bad_total == 0
    assert elapsed < 60


# -- 2 ----------------------------------------------------------------------------

DEGREES = [Fraction(k, 2) for k in range(-4, 5)]


def test_criterion_2(record_property):
    failures, slowest = [], 0.0
    for parity in ("even", "odd"):
        for p in DEGREES:
            t0 = time.perf_counter()
            rep = solve_derivation_space(A, parity, p, 8, 3)
            dt = time.perf_counter() - t0
            slowest = max(slowest, dt)
            ok = (rep.dimension == 1 and rep.all_matched and len(rep.references) == 1
                  and rep.matches[0].coefficients[0] != 0 and dt < 30)
            if not ok:
                failures.append(f"({parity}, {p}): dim={rep.dimension} {rep.match_summary()} {dt:.1f}s")
    record_property("detail", f"18 cases, {18 - len(failures)} matched, slowest {slowest:.2f}s"
                    + (f"; failing {failures}" if failures else ""))
    assert not failures


# -- 3 ----------------------------------------------------------------------------


def test_criterion_3(record_property):
    rep = solve_derivation_space(A, "even", 0, 8, 3)
    L0, C = BasisVector("L", (0,)), A.C
    # the images of C and L_0 carry these unknowns; nothing pins them in advance
    alpha0 = rep.kernel_column(C, C)
    m0 = rep.kernel_column(L0, C)
    record_property("detail", f"kernel dim {len(rep.kernel)}; alpha_0 column {[str(v) for v in alpha0]}, "
                    f"m_0 column {[str(v) for v in m0]}")
    assert (C, C) in rep.unknowns and (L0, C) in rep.unknowns
    assert rep.kernel
    assert all(v == 0 for v in alpha0) and all(v == 0 for v in m0)


# -- 4 ----------------------------------------------------------------------------


def _table_vector(table, unknowns):
    return [table.image(src).coeff(tgt) for src, tgt in unknowns]


def test_criterion_4(record_property):
    rep = solve_derivation_space(R, "even", 0, 3, 3)
    basis = sorted({src for src, _ in rep.unknowns}, key=lambda b: (b.kind, b.index))
    phi1 = delta_phi(R, GammaHom((1, 0)), basis)
    phi2 = delta_phi(R, GammaHom((0, 1)), basis)
    pairs = valid_pairs(R, R.window_basis(2))
    res = nonzero(derivation_residuals(phi1, pairs)) + nonzero(derivation_residuals(phi2, pairs))

    # both δ_φ lie in the solved space
    kernel = rep.kernel
    in_span = [solve_in_span(_table_vector(d, rep.unknowns), kernel) is not None for d in (phi1, phi2)]

    # δ_φ1 against ad(L_0) on the coordinates (L_1, L_θ)
    adl0 = ad_table(R, R.L(0), basis, 0, 0)
    l1, lt = R.basis("L", 1), R.basis("L", THETA)
    (a, b), (c, d) = ((phi1.image(l1).coeff(l1), phi1.image(lt).coeff(lt)),
                      (adl0.image(l1).coeff(l1), adl0.image(lt).coeff(lt)))
    det = a * d - b * c
    record_property("detail", f"dim={rep.dimension}, delta_phi residuals nonzero={len(res)}, "
                    f"in span={in_span}, det={det}")
    assert rep.dimension == 2
    assert not res
    assert all(in_span)
    assert det != 0


# -- 5 ----------------------------------------------------------------------------


def test_criterion_5(record_property):
    w, e, idt = varpi(), epsilon_auto(), identity_auto()
    checks = {
        "varpi^4 = id": w.power(4) == idt,
        "varpi^2 = eps": w.power(2) == e,
    }
    for b1, b2 in itertools.product(BETAS, repeat=2):
        checks[f"inner({b1})inner({b2})"] = inner_auto(b1).compose(inner_auto(b2)) == inner_auto(b1 * b2)
    for b in BETAS:
        checks[f"conj inner({b})"] = w.compose(inner_auto(b)).compose(w.power(3)) == inner_auto(b.inverse())
    family = [w, e, inner_auto(2)]
    family += [w.power(k).compose(inner_auto(b)) if k else inner_auto(b)
               for k in range(4) for b in BETAS]
    bad_tables = [t.label for t in family if nonzero(homomorphism_residuals(t))]
    specs = [AutoSpec(k, b) for k in range(4) for b in BETAS]
    round_trip = sum(classify(s.table()) == s for s in specs)
    failed = [k for k, v in checks.items() if not v]
    record_property("detail", f"{len(checks)} relations ({len(failed)} failed), "
                    f"{len(family)} tables with residuals {len(bad_tables)}, "
                    f"classify {round_trip}/{len(specs)}")
    assert not failed
    assert not bad_tables
    assert round_trip == 12


# -- 6 ----------------------------------------------------------------------------

GENERALIZED = [
    (A, GeneralizedAutoSpec(1, (4,), 2, 1)),
    (A, GeneralizedAutoSpec(1, (Fraction(1, 9),), Fraction(-1, 3), -1)),
    (A, GeneralizedAutoSpec(-1, (-9,), 3, I)),
    (A, GeneralizedAutoSpec(-1, (1,), I, -I)),
    (R, GeneralizedAutoSpec(1, (4, 3), 2, 1)),
    (R, GeneralizedAutoSpec(1, (-1, I), I, -1)),
    (R, GeneralizedAutoSpec(-1, (-4, 5), 2, I)),
    (R, GeneralizedAutoSpec(-1, (-9, Fraction(1, 3)), 3, -I)),
]


def test_criterion_6(record_property):
    failing = []
    for alg, spec in GENERALIZED:
        table = generalized_auto(spec, alg, 3 if alg.rank == 1 else 2)
        if nonzero(homomorphism_residuals(table)):
            failing.append(f"{alg.name} {spec}")
    mismatches = []
    for beta in BETAS:
        g = generalized_auto(GeneralizedAutoSpec(-1, (-beta * beta,), beta, I), A, 4)
        for i in range(-4, 5):
            if g(A.L(i)) != -(beta ** (2 * i)) * A.L(-i):
                mismatches.append((str(beta), i))
    record_property("detail", f"{len(GENERALIZED)} specs, {len(failing)} with residuals; "
                    f"sigma(L_i) = -beta^(2i) L_(-i) mismatches {len(mismatches)}")
    assert not failing
    assert not mismatches


# -- 7 ----------------------------------------------------------------------------


def test_criterion_7(record_property):
    W = A.window_basis(2)
    twist_bad = sum(tau(tau(Tensor(2, {k: 1}))) != Tensor(2, {k: 1})
                    for k in itertools.product(W, repeat=2))
    cycle_bad = sum(xi(xi(xi(Tensor(3, {k: 1})))) != Tensor(3, {k: 1})
                    for k in itertools.product(W, repeat=3))

    # skew homogeneous r on window 2 are spanned, parity by parity, by a⊗b - τ(a⊗b)
    gens = []
    for a, b in itertools.combinations_with_replacement(W, 2):
        t = Tensor(2, {(a, b): 1})
        s = t - tau(t)
        if s:
            gens.append(s)
    assert all(skew_check(r) for r in gens)
    els = [Element.basis(b) for b in W]
    total, lit_bad, odd_r_bad, graded_bad, witness = 0, 0, 0, 0, None
    for r in gens:
        for x in els:
            for y in els:
                total += 1
                if cocycle_residual(A, r, x, y):
                    lit_bad += 1
                    odd_r_bad += r.parity() == 1
                    witness = witness or (str(r), str(x), str(y))
                if graded_cocycle_residual(A, r, x, y):
                    graded_bad += 1

    L, C = A.L, A.c()
    c1 = cybe(A, tensor(L(0), L(1)) - tensor(L(1), L(0)))
    c2 = cybe(A, tensor(L(0), C) - tensor(C, L(0)))
    record_property("detail", f"tau^2 bad {twist_bad}, xi^3 bad {cycle_bad}; cocycle_residual nonzero "
                    f"{lit_bad}/{total} ({odd_r_bad} with odd r, first {witness}); "
                    f"Koszul-signed residual nonzero {graded_bad}; cybe examples zero: "
                    f"{not c1 and not c2}")
    assert twist_bad == 0 and cycle_bad == 0
    assert not c1 and not c2
    assert graded_bad == 0
    assert lit_bad == 0


# -- 8 ----------------------------------------------------------------------------


def test_criterion_8(record_property):
    # derivation table with one image nudged
    big = A.window_basis(6)
    d = ad_table(A, A.G(h), big, 1, h)
    images = dict(d.images)
    images[A.basis("L", 1)] = images[A.basis("L", 1)] + A.G(Fraction(3, 2))
    nudged = DerivationTable(A, 1, (1,), images, "nudged")
    der_bad = nonzero(derivation_residuals(nudged, valid_pairs(A, A.window_basis(4))))

    # automorphism with σ(C) sign flipped
    images = dict(varpi().images)
    images[A.C] = A.c()
    auto_bad = nonzero(homomorphism_residuals(AutoTable(A, images, "flipped")))

    # non-skew r
    r = tensor(A.L(0), A.L(1))
    skew_bad = skew_residual(r)
    skew_witness = "⊗".join(map(str, next(iter(skew_bad.terms)))) if skew_bad else None

    record_property("detail", f"derivation: {len(der_bad)} nonzero, first {der_bad[0] if der_bad else None}; "
                    f"automorphism: {len(auto_bad)} nonzero, first {auto_bad[0] if auto_bad else None}; "
                    f"r: r+tau(r) = {skew_bad}, witness {skew_witness}")
    assert der_bad and der_bad[0].x and der_bad[0].y and der_bad[0].value
    assert auto_bad and auto_bad[0].x and auto_bad[0].y and auto_bad[0].value
    assert not skew_check(r) and skew_witness is not None


if __name__ == "__main__":
    import sys

    import pytest

    sys.exit(pytest.main([__file__, "-v"]))
