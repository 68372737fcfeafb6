import json
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diagcat.diagram import classify, compose, compose_permutations, identity, parse_diagram
from diagcat.family import (
    AlgebraContext,
    ClosureError,
    Family,
    FamilyError,
    augmentation,
    canonical_retract,
    filtration_basis,
    matchings,
    multiply,
    quotient_context,
    rho,
)
from diagcat.ring import POLY, ZZ, Poly, prime_field


def _double_factorial(k: int) -> int:
    out = 1
    for j in range(k, 0, -2):
        out *= j
    return out


def _catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


# closed forms, independent of the enumerators
COUNTS = {
    Family.ROOK_BRAUER: lambda n: sum(comb(2 * n, 2 * k) * _double_factorial(2 * k - 1) for k in range(n + 1)),
    Family.ROOK: lambda n: sum(comb(n, k) ** 2 * factorial(k) for k in range(n + 1)),
    Family.BRAUER: lambda n: _double_factorial(2 * n - 1),
    Family.TEMPERLEY_LIEB: _catalan,
    Family.ROOK_TEMPERLEY_LIEB: lambda n: sum(comb(2 * n, 2 * k) * _catalan(k) for k in range(n + 1)),
}


@pytest.mark.parametrize("family", list(Family), ids=lambda f: f.value)
def test_basis_counts(family):
    for n in range(1, 6):
        basis = matchings(family, n)
        assert len(basis) == COUNTS[family](n)
        assert len(set(basis)) == len(basis)
        assert basis == sorted(basis)
        assert all(family.contains(d) for d in basis)


def test_frozen_counts():
    assert len(matchings(Family.TEMPERLEY_LIEB, 5)) == 42
    assert len(matchings(Family.BRAUER, 3)) == 15
    assert len(matchings(Family.ROOK, 1)) == 2
    assert [len(matchings(Family.ROOK_BRAUER, n)) for n in range(1, 6)] == [2, 10, 76, 764, 9496]


def test_membership_rules():
    assert Family.ROOK.contains(rho(3, 2))
    assert not Family.BRAUER.contains(rho(3, 2))
    cup = parse_diagram("L1-L2,R1-R2", 2)
    assert Family.TEMPERLEY_LIEB.contains(cup)
    assert not Family.ROOK.contains(cup)
    cross = parse_diagram("L1-R2,L2-R1", 2)
    assert Family.BRAUER.contains(cross) and not Family.TEMPERLEY_LIEB.contains(cross)
    assert Family.parse("TL") is Family.TEMPERLEY_LIEB
    assert Family.parse("rook-brauer") is Family.ROOK_BRAUER
    with pytest.raises(FamilyError):
        Family.parse("partition")


@pytest.mark.parametrize("family", [Family.ROOK, Family.BRAUER, Family.TEMPERLEY_LIEB, Family.ROOK_BRAUER])
def test_closure_exhaustive(family):
    for n in range(1, 4):
        ctx = AlgebraContext.formal(family, n)
        for i in range(ctx.dim):
            for j in range(ctx.dim):
                ctx.product_index(i, j)  # raises ClosureError on escape


def test_closure_error_is_raised():
    ctx = AlgebraContext.formal(Family.BRAUER, 2)
    with pytest.raises(ClosureError):
        ctx.compose_checked(rho(2, 1), rho(2, 1))


def test_rook_brauer_worked_product_in_algebra():
    ctx = AlgebraContext.formal(Family.ROOK_BRAUER, 5)
    x = ctx.element({parse_diagram("L2-L3,L1-R5,L4-R2,R1-R4", 5): 1})
    y = ctx.element({parse_diagram("L5-R4,L1-L4,R1-R3", 5): 1})
    assert x * y == ctx.element({parse_diagram("L2-L3,L1-R4,R1-R3", 5): Poly.monomial(1, 1)})


def test_specialised_parameters():
    ctx = AlgebraContext(Family.ROOK_BRAUER, 2, prime_field(5), 2, 3)
    r = ctx.element({rho(2, 1): 1})
    assert r * r == r.scale(3)
    cup = ctx.element({parse_diagram("L1-L2,R1-R2", 2): 1})
    assert cup * cup == cup.scale(2)
    zero_loop = AlgebraContext(Family.TEMPERLEY_LIEB, 2, ZZ, 0, 1)
    c = zero_loop.element({parse_diagram("L1-L2,R1-R2", 2): 1})
    assert (c * c).is_zero()


@st.composite
def elements(draw, ctx):
    size = draw(st.integers(0, 4))
    terms = [(ctx.basis[draw(st.integers(0, ctx.dim - 1))], draw(st.integers(-3, 3))) for _ in range(size)]
    return ctx.element(terms)


ASSOC_CONTEXTS = [
    AlgebraContext.formal(f, n)
    for f, n in ((Family.ROOK_BRAUER, 3), (Family.ROOK, 3), (Family.BRAUER, 4), (Family.TEMPERLEY_LIEB, 5))
] + [AlgebraContext.formal(Family.BRAUER, 4, floor=1), AlgebraContext(Family.ROOK_BRAUER, 3, prime_field(3), 2, 0)]


@pytest.mark.parametrize("ctx", ASSOC_CONTEXTS, ids=lambda c: f"{c.family.value}{c.n}f{c.floor}")
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_algebra_axioms(ctx, data):
    a, b, c = (data.draw(elements(ctx)) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    if ctx.floor is None:
        assert ctx.one() * a == a == a * ctx.one()


def test_filtration_examples():
    tl4 = AlgebraContext.formal(Family.TEMPERLEY_LIEB, 4)
    assert len(filtration_basis(tl4, 0)) == 4
    assert len(filtration_basis(tl4, 4)) == 14
    br3 = AlgebraContext.formal(Family.BRAUER, 3)
    assert filtration_basis(br3, 0) == []
    assert len(filtration_basis(br3, 1)) == 9


def test_filtration_is_an_ideal():
    ctx = AlgebraContext.formal(Family.ROOK_BRAUER, 3)
    for i in range(4):
        keep = set(filtration_basis(ctx, i))
        for x in keep:
            for y in ctx.basis:
                assert compose(x, y).diagram in keep
                assert compose(y, x).diagram in keep


def test_quotient_examples():
    tl4 = AlgebraContext.formal(Family.TEMPERLEY_LIEB, 4)
    assert quotient_context(tl4, 0).dim == 10
    br3 = AlgebraContext.formal(Family.BRAUER, 3)
    assert quotient_context(br3, 0).dim == 15
    top = quotient_context(br3, 2)
    assert top.dim == 6
    assert all(d.through_count == 3 for d in top.basis)
    with pytest.raises(FamilyError):
        quotient_context(br3, 3)
    with pytest.raises(FamilyError):
        quotient_context(top, 1)


def test_quotient_kills_low_products():
    q = quotient_context(AlgebraContext.formal(Family.TEMPERLEY_LIEB, 3), 1)
    e1 = q.element({parse_diagram("L1-L2,L3-R3,R1-R2", 3): 1})
    assert q.dim == 1
    assert e1.is_zero()


def test_augmentation():
    ctx = AlgebraContext.formal(Family.ROOK_BRAUER, 3)
    for d in ctx.basis:
        assert augmentation(ctx, d) == (POLY.one if d.through_count == 3 else POLY.zero)
    assert augmentation(ctx, identity(3)) == POLY.one


def test_augmentation_is_multiplicative_on_diagrams():
    ctx = AlgebraContext(Family.ROOK_BRAUER, 3, ZZ, 1, 1)
    for x in ctx.basis:
        for y in ctx.basis:
            prod = compose(x, y)
            assert augmentation(ctx, prod.diagram) == augmentation(ctx, x) * augmentation(ctx, y)


def test_canonical_retract_groups():
    for fam, n, size in ((Family.BRAUER, 3, 6), (Family.ROOK_BRAUER, 3, 6), (Family.ROOK, 4, 24), (Family.TEMPERLEY_LIEB, 4, 1)):
        group, report = canonical_retract(AlgebraContext.formal(fam, n))
        assert len(group) == size
        assert all(report.values()), report
    group, _ = canonical_retract(AlgebraContext.formal(Family.TEMPERLEY_LIEB, 3))
    assert group == [(1, 2, 3)]


def test_compose_permutations_convention():
    # (tau o sigma)(k) = tau(sigma(k))
    assert compose_permutations((2, 3, 1), (2, 1, 3)) == (3, 2, 1)


def test_rho():
    assert rho(3, 1) == parse_diagram("L2-R2,L3-R3", 3)
    assert classify(rho(3, 1)).has_missing
    with pytest.raises(Exception):
        rho(3, 4)


def test_context_validation_and_json():
    with pytest.raises(FamilyError):
        AlgebraContext.formal(Family.BRAUER, 0)
    with pytest.raises(FamilyError):
        AlgebraContext.formal(Family.BRAUER, 3, floor=3)
    ctx = AlgebraContext(Family.TEMPERLEY_LIEB, 4, prime_field(3), 2, 1, 0)
    again = AlgebraContext.from_json(json.loads(json.dumps(ctx.to_json())))
    assert again == ctx
    a = ctx.element({ctx.basis[1]: 2, ctx.basis[3]: 1})
    assert type(a).from_json(ctx, json.loads(json.dumps(a.to_json()))) == a
    other = AlgebraContext(Family.TEMPERLEY_LIEB, 4, prime_field(3), 1, 1, 0)
    with pytest.raises(FamilyError):
        multiply(a, other.one())
    with pytest.raises(FamilyError):
        ctx.element({rho(4, 1): 1})
