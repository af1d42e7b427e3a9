from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistedn2.algebra import BasisVector, Element, rank2, twisted
from twistedn2.automorphisms import (
    AutoSpec,
    AutoTable,
    ClassificationError,
    ConstraintViolation,
    GeneralizedAutoSpec,
    auto_from_spec,
    classify,
    epsilon_auto,
    generalized_auto,
    homomorphism_residuals,
    identity_auto,
    inner_auto,
    varpi,
)
from twistedn2.derivations import WindowError
from twistedn2.scalars import I, as_scalar

A = twisted()
R = rank2()
L, T, G, C = A.L, A.T, A.G, A.c()
h = Fraction(1, 2)
CV = BasisVector("C", ())


def clean(table):
    return all(not r.value for r in homomorphism_residuals(table))


def test_inner_examples():
    a = inner_auto(2)
    assert a(T(h)) == 2 * T(h)
    assert a(L(-1)) == Fraction(1, 4) * L(-1)
    assert inner_auto(1) == identity_auto()
    with pytest.raises(ValueError):
        inner_auto(0)
    with pytest.raises(ValueError):
        inner_auto(2, R)


def test_varpi_examples():
    w = varpi()
    assert w(G(h)) == I * G(-h)
    assert w(C) == -C
    assert epsilon_auto(window=5)(L(5)) == L(5)
    assert w(2 * L(1) + C) == -2 * L(-1) - C


def test_group_relations():
    w, e, idt = varpi(), epsilon_auto(), identity_auto()
    assert idt.compose(w) == w
    assert w.compose(w) == e
    assert w.power(4) == idt
    for b in (2, 3, I):
        b = as_scalar(b)
        assert w.compose(inner_auto(b)).compose(w.power(3)) == inner_auto(b.inverse())
    assert inner_auto(2).compose(inner_auto(3)) == inner_auto(6)


def test_compose_escapes_window():
    shift = AutoTable(A, {b: Element.basis(BasisVector(b.kind, tuple(v + 2 for v in b.index)))
                          if b.kind != "C" else Element.basis(b) for b in A.window_basis(1)})
    with pytest.raises(WindowError):
        shift.compose(shift)


def test_homomorphisms():
    for t in (varpi(), epsilon_auto(), inner_auto(3), varpi().compose(inner_auto(2))):
        assert clean(t)


def test_flipped_central_sign_detected():
    w = varpi()
    images = dict(w.images)
    images[CV] = C
    bad = [r for r in homomorphism_residuals(AutoTable(A, images)) if r.value]
    # the (m^3 - m)/12 term exposes the sign at (L_2, L_-2)
    hit = [r for r in bad if {r.x, r.y} == {BasisVector("L", (4,)), BasisVector("L", (-4,))}]
    assert hit and hit[0].value == -C


def test_classify_examples():
    assert classify(inner_auto(2)) == AutoSpec(0, 2)
    assert classify(varpi()) == AutoSpec(1, 1)
    t = epsilon_auto().compose(inner_auto(2))
    assert t(G(h)) == -2 * G(h)
    assert classify(t) == AutoSpec(2, 2)


def test_classify_rejects():
    images = dict(inner_auto(2).images)
    images[BasisVector("L", (4,))] = 3 * L(2)
    with pytest.raises(ClassificationError, match="classified form"):
        classify(AutoTable(A, images))
    with pytest.raises(ClassificationError):
        classify(inner_auto(2, window=h))


betas = st.sampled_from([as_scalar(2), as_scalar(3), I, as_scalar(Fraction(-1, 2)), 1 + I])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), betas)
def test_classify_round_trip(k, beta):
    spec = AutoSpec(k, beta)
    assert classify(spec.table()) == spec


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), betas, st.integers(0, 3), betas)
def test_spec_composition_law(k1, b1, k2, b2):
    s1, s2 = AutoSpec(k1, b1), AutoSpec(k2, b2)
    assert s1.table(window=2).compose(s2.table(window=2)) == s1.compose(s2).table(window=2)


def test_table_text_round_trip():
    t = auto_from_spec(AutoSpec(3, Fraction(1, 2)), window=2)
    back = AutoTable.from_text(A, t.to_text())
    assert back == t
    assert "L(1) -> -1/4*L(-1)" in t.to_text()


def test_table_parse_format():
    t = AutoTable.from_text(A, "L(1) -> -1*L(-1)\n# comment\n\nC -> -C\n")
    assert t.images[BasisVector("L", (2,))] == -L(-1)


# -- generalized algebra --------------------------------------------------------


def test_generalized_identity():
    g = generalized_auto(GeneralizedAutoSpec(1, (1, 1), 1, 1), R, 1)
    assert g == identity_auto(R, 1)


def test_generalized_reproduces_twisted():
    beta = as_scalar(3)
    g = generalized_auto(GeneralizedAutoSpec(-1, (-beta * beta,), beta, I), A, 3)
    for i in range(-3, 4):
        assert g(L(i)) == -(beta ** (2 * i)) * L(-i)
    assert g == AutoSpec(1, 3).table(window=3)


def test_a0_equals_epsilon():
    for eps in (1, -1):
        spec = GeneralizedAutoSpec(eps, (5, 7), 1, 1 if eps == 1 else I)
        assert spec.a_at((0, 0)) == eps


@pytest.mark.parametrize("spec", [
    GeneralizedAutoSpec(1, (4, 3), 2, 1),
    GeneralizedAutoSpec(1, (-1, I), I, -1),
    GeneralizedAutoSpec(-1, (-4, 5), 2, I),
    GeneralizedAutoSpec(-1, (-9, Fraction(1, 3)), 3, -I),
])
def test_generalized_rank2_homomorphism(spec):
    assert clean(generalized_auto(spec, R, 2))


def test_generalized_constraint_errors():
    with pytest.raises(ConstraintViolation, match=r"e_μ\^2") as e:
        generalized_auto(GeneralizedAutoSpec(1, (4, 3), 3, 1), R, 2)
    assert e.value.witness
    with pytest.raises(ConstraintViolation, match="root"):
        generalized_auto(GeneralizedAutoSpec(-1, (-4, 3), 2, 1), R, 2)
    with pytest.raises(ConstraintViolation, match="epsilon"):
        generalized_auto(GeneralizedAutoSpec(2, (4, 3), 2, 1), R, 2)
