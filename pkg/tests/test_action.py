import random

import pytest
from gmpy2 import mpq

from ratinv.action import (GroupAction, GroupSpec, group_dimension, infinitesimal_matrix,
                           random_group_point, random_group_points, tangent_basis, validate_action)
from ratinv.errors import ActionError, ContextError
from ratinv.parser import parse_poly, parse_problem
from ratinv.poly import PolyRing
from ratinv.ratfunc import RatFunc

from helpers import FIXTURE_DIR, FIXTURES, graph, problem, rf


def fixture_text(name):
    return (FIXTURE_DIR / f"{name}.toml").read_text()


def rank(rows):
    A = [list(r) for r in rows]
    rk = 0
    ncol = len(A[0]) if A else 0
    for c in range(ncol):
        piv = next((i for i in range(rk, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[rk], A[piv] = A[piv], A[rk]
        for i in range(len(A)):
            if i != rk and A[i][c]:
                f = A[i][c] / A[rk][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[rk])]
        rk += 1
    return rk


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_actions_validate(name):
    a = problem(name).action
    rep = validate_action(a)
    assert rep.identity
    assert rep.composition == ("ok" if a.group.product is not None else "skipped")


def test_bad_neutral_element_is_rejected():
    text = fixture_text("scaling").replace('neutral = ["1", "1"]', 'neutral = ["2", "1/2"]')
    p = parse_problem(text)
    with pytest.raises(ActionError, match="identity"):
        validate_action(p.action)


def test_neutral_off_the_group_is_rejected():
    text = fixture_text("scaling").replace('neutral = ["1", "1"]', 'neutral = ["2", "1"]')
    with pytest.raises(ActionError):
        parse_problem(text)


def test_wrong_product_fails_composition():
    text = fixture_text("scaling").replace('product = ["m1*l1", "m2*l2"]',
                                           'product = ["m1*l1*l1", "m2*l2*l2"]')
    with pytest.raises(ActionError, match="composition"):
        validate_action(parse_problem(text).action)


def test_missing_product_only_warns():
    text = "\n".join(line for line in fixture_text("rotation").splitlines()
                     if not line.startswith(("product", "inverse")))
    rep = validate_action(parse_problem(text).action)
    assert rep.composition == "skipped"
    assert any("composition" in w for w in rep.warnings)


def test_denominator_vanishing_on_group_points():
    # a two-point "group" {0, 1} where h = 1 - l1 vanishes at the second point
    grp = GroupSpec(("l1",), [parse_poly("l1^2 - l1", PolyRing(("l1",)))], (0,))
    A = PolyRing(("l1", "z1"))
    act = GroupAction(grp, ("z1",), [parse_poly("z1*(1 - l1)", A)], parse_poly("1 - l1", A))
    assert any("vanishes" in w for w in validate_action(act).warnings)
    with pytest.raises(ActionError, match="vanishes"):
        validate_action(act, strict=True)


def test_denominator_vanishing_at_neutral_is_fatal():
    grp = GroupSpec(("l1",), [], (1,))
    A = PolyRing(("l1", "z1"))
    act = GroupAction(grp, ("z1",), [parse_poly("z1*(l1 - 1)", A)], parse_poly("l1 - 1", A))
    with pytest.raises(ActionError, match="neutral"):
        validate_action(act)


def test_arity_and_context_checks():
    with pytest.raises(ContextError):
        GroupSpec(("l1",), [], (1, 2))
    grp = GroupSpec(("l1",), [], (0,))
    A = PolyRing(("l1", "z1"))
    with pytest.raises(ContextError):
        GroupAction(grp, ("z1",), [], A.one)
    with pytest.raises(ContextError):
        GroupAction(grp, ("z1",), [parse_poly("z1 + l1", PolyRing(("l1", "z1", "x")))], A.one)


@pytest.mark.parametrize("name,dim", [("scaling", 1), ("translation", 1), ("rotation", 1),
                                      ("sl2", 3), ("euclidean", 3), ("trivial", 1)])
def test_group_dimension(name, dim):
    assert group_dimension(problem(name).action.group) == dim


@pytest.mark.parametrize("name,cols", [
    ("scaling", [["z1", "z2"]]),
    ("rotation", [["-z2", "z1"]]),
    ("translation", [["1", "0"]]),
])
def test_infinitesimal_generators(name, cols):
    a = problem(name).action
    m = infinitesimal_matrix(a)
    assert m.kappa == len(cols)
    for j, col in enumerate(cols):
        got = m.column(j)
        want = [rf(t, a.vring) for t in col]
        # generators are defined up to a nonzero constant multiple
        ratio = next(g / w for g, w in zip(got, want) if w)
        assert ratio.is_constant()
        assert [g for g in got] == [w * ratio for w in want]


@pytest.mark.parametrize("name", FIXTURES)
def test_infinitesimal_rank_is_orbit_dimension(name):
    a = problem(name).action
    m = infinitesimal_matrix(a)
    rng = random.Random(3)
    pt = {n: mpq(rng.randint(2, 30), rng.randint(1, 7)) for n in a.vars}
    rows = [[e.evaluate(pt) for e in row] for row in m.entries]
    assert rank(rows) == graph(name).orbit_dim
    assert m.kappa == len(tangent_basis(a.group)) == group_dimension(a.group)


@pytest.mark.parametrize("name", [n for n in FIXTURES if problem(n).action.group.product])
def test_action_composes_on_random_points(name):
    a = problem(name).action
    grp = a.group
    rng = random.Random(11)
    for _ in range(5):
        lam = random_group_point(grp, rng)
        mu = random_group_point(grp, rng)
        z = {n: mpq(rng.randint(1, 20), rng.randint(1, 4)) for n in a.vars}
        try:
            inner = [f.evaluate({**lam, **z}) for f in a.fractions]
            outer = [f.evaluate({**mu, **dict(zip(a.vars, inner))}) for f in a.fractions]
        except ZeroDivisionError:
            continue
        env = {**dict(zip(grp.product_left, mu.values())), **lam}
        prod = {p: q.evaluate(env).constant_coeff() for p, q in zip(grp.params, grp.product)}
        assert all(r.evaluate(prod) == 0 for r in grp.relations)
        direct = [f.evaluate({**prod, **z}) for f in a.fractions]
        assert outer == direct
        if grp.inverse:
            inv = {p: q.evaluate(lam).constant_coeff() for p, q in zip(grp.params, grp.inverse)}
            back = [f.evaluate({**inv, **dict(zip(a.vars, inner))}) for f in a.fractions]
            assert back == [z[n] for n in a.vars]


@pytest.mark.parametrize("name", FIXTURES)
def test_random_group_points_satisfy_relations(name):
    grp = problem(name).action.group
    for pt in random_group_points(grp, 8, seed=5):
        assert all(r.evaluate(pt) == 0 for r in grp.relations)
    assert random_group_points(grp, 3, seed=5) == random_group_points(grp, 3, seed=5)


def test_apply_specializes_parameters():
    a = problem("scaling").action
    img = a.apply({"l1": 3, "l2": mpq(1, 3)})
    assert img == [rf("3*z1", a.vring), rf("3*z2", a.vring)]
    assert isinstance(img[0], RatFunc)
