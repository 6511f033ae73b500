import pytest

from ratinv.errors import ContextError, ExcludedLocusError, NotExpressible
from ratinv.graph import (extract_invariants, fresh_names, generating_invariants, normalize_invariant,
                          orbit_ideal_at, rewrite_with_graph, verify_invariant)
from ratinv.groebner import s_polynomial_audit
from ratinv.poly import PolyRing
from ratinv.ratfunc import substitute

import properties
from helpers import SMALL, basis_set, expected_basis, graph, problem, rf, sl2_bindings

GRAPH_IDEALS = {
    "scaling": ["z1*Z2 - z2*Z1"],
    "translation": ["Z2^2 - z2^2"],
    "rotation": ["Z1^2 + Z2^2 - z1^2 - z2^2"],
    "euclidean": ["(1+y1^2)^3*Y2^2 - (1+Y1^2)^3*y2^2"],
}


@pytest.mark.parametrize("name", sorted(GRAPH_IDEALS))
def test_graph_ideal(name):
    O = graph(name).O
    assert basis_set(O) == expected_basis(O, GRAPH_IDEALS[name])
    assert s_polynomial_audit(O) == []


def test_graph_ideal_renders_canonically():
    assert graph("scaling").O.render() == ["Z2*z1-Z1*z2"]
    assert graph("translation").O.render() == ["Z2^2-z2^2"]
    assert graph("rotation").O.render() == ["Z1^2+Z2^2-z1^2-z2^2"]


@pytest.mark.parametrize("name,s", [("scaling", 1), ("translation", 1), ("rotation", 1),
                                    ("sl2", 3), ("euclidean", 3), ("trivial", 0)])
def test_orbit_dimension(name, s):
    assert graph(name).orbit_dim == s


def test_extension_examples():
    gi = graph("scaling")
    assert basis_set(gi.O_ext) == expected_basis(gi.O_ext, ["Z2 - (z2/z1)*Z1"])
    gi = graph("translation")
    assert basis_set(gi.O_ext) == expected_basis(gi.O_ext, ["Z2^2 - z2^2"])
    gi = graph("euclidean")
    assert basis_set(gi.O_ext) == expected_basis(
        gi.O_ext, ["Y2^2 - (1+Y1^2)^3/(1+y1^2)^3*y2^2"])


def test_sl2_extension_matches_displayed_basis():
    gi = graph("sl2")
    texts = ["Z6^2-Z7*Z5+r1*r3-r4^2", "Z6*Z4+r3*r2*Z2-r4*Z4-Z3*Z7",
             "Z5*Z4-Z3*Z6+r3*r2*Z1-r4*Z3", "Z3*Z2-Z1*Z4-r2", "Z2*Z6-Z1*Z7+r4*Z2-r1/r2*Z4",
             "Z2*Z5+Z1*r4-Z6*Z1-r1/r2*Z3", "Z2^2+r1/(r3*r2^2)*Z4^2-Z7/r3-2*r4/(r3*r2)*Z4*Z2",
             "Z1^2-Z5/r3-2*r4/(r3*r2)*Z3*Z1+r1/(r3*r2^2)*Z3^2",
             "Z2*Z1-r4/r3-Z6/r3+r1/(r3*r2^2)*Z4*Z3-2*r4/(r3*r2)*Z4*Z1"]
    assert len(gi.O_ext) == 9
    assert basis_set(gi.O_ext) == expected_basis(gi.O_ext, texts, sl2_bindings())


@pytest.mark.parametrize("name,want", [("scaling", ["z2/z1"]), ("translation", ["z2^2"]),
                                       ("rotation", ["z1^2+z2^2"])])
def test_generating_invariants_small(name, want):
    inv = generating_invariants(graph(name))
    assert inv.render() == want
    assert inv.names == ("y1",)


def test_generating_invariants_euclidean_avoid_name_clash():
    inv = generating_invariants(graph("euclidean"))
    assert inv.render() == ["y2^2/(y1^6+3*y1^4+3*y1^2+1)"]
    assert inv.values == [rf("y2^2/(1+y1^2)^3", graph("euclidean").action.vring)]
    assert inv.names == ("w1",)


def test_generating_invariants_sl2_generate_r_field():
    gi = graph("sl2")
    inv = generating_invariants(gi)
    r = sl2_bindings()
    for name in ("r1", "r2", "r3", "r4"):
        res = rewrite_with_graph(r[name], gi, inv)
        assert res.verified
    # r1 and r3 only occur inside products and quotients of the basis coefficients
    assert {normalize_invariant(r[k])[0] for k in ("r2", "r4")} <= set(inv.values)


def test_invariant_provenance_points_into_basis():
    gi = graph("rotation")
    inv = generating_invariants(gi)
    (value, (i, m)), = inv.entries
    assert -gi.O_ext.polys[i].terms[m] == value


def test_verify_invariant_examples():
    a = problem("scaling").action
    assert verify_invariant(rf("z2/z1", a.vring), a)
    assert not verify_invariant(rf("z1", a.vring), a)
    assert verify_invariant(rf("(z1^2+4*z1*z2+z2^2)/(z1^2-3*z2^2)", a.vring), a)
    with pytest.raises(ContextError):
        verify_invariant(rf("x", graph("euclidean").action.vring), a)


def test_rewrite_scaling_example():
    gi = graph("scaling")
    target = rf("(z1^2+4*z1*z2+z2^2)/(z1^2-3*z2^2)", gi.action.vring)
    res = rewrite_with_graph(target, gi)
    y = res.formula.ring
    assert res.formula == rf("(1+4*y1+y1^2)/(1-3*y1^2)", y)
    assert res.verified and res.names == ("y1",)


def test_rewrite_rejects_non_invariants():
    gi = graph("scaling")
    with pytest.raises(NotExpressible):
        rewrite_with_graph(rf("z1", gi.action.vring), gi)


@pytest.mark.parametrize("target,want", [
    ("z2^2*z5-2*z2*z6*z1+z7*z1^2", "r1"),
    ("z3*z2-z1*z4", "r2"),
    ("z3^2*z7-2*z6*z4*z3+z5*z4^2", "r3*r2^2"),
    ("z1*z3*z7-z3*z2*z6+z2*z5*z4-z1*z6*z4", "r4*r2"),
    ("z6^2-z7*z5", "r4^2-r1*r3"),
])
def test_rewrite_polynomial_invariants_sl2(target, want):
    gi = graph("sl2")
    z = gi.action.vring
    res = rewrite_with_graph(rf(target, z), gi)
    assert res.verified
    binds = generating_invariants(gi).bindings()
    r = sl2_bindings()
    assert substitute(res.formula, binds, z) == substitute(rf(want, PolyRing(tuple(r))), r, z)


@pytest.mark.parametrize("name,point,want", [
    ("scaling", (1, 2), ["Z2 - 2*Z1"]),
    ("rotation", (0, 1), ["Z1^2 + Z2^2 - 1"]),
    ("rotation", (3, 4), ["Z1^2 + Z2^2 - 25"]),
    ("translation", (5, 0), ["Z2^2"]),
])
def test_orbit_ideal_at(name, point, want):
    gb = orbit_ideal_at(graph(name), point)
    assert basis_set(gb) == expected_basis(gb, want)


def test_orbit_at_origin_is_excluded():
    with pytest.raises(ExcludedLocusError):
        orbit_ideal_at(graph("scaling"), (0, 0))
    with pytest.raises(ContextError):
        orbit_ideal_at(graph("scaling"), (1,))


def test_fresh_names():
    assert fresh_names(2, {"z1"}) == ("y1", "y2")
    assert fresh_names(1, {"y1"}) == ("w1",)
    with pytest.raises(ContextError):
        fresh_names(1, {"y1", "w1", "u1", "v1"})


def test_extract_invariants_deduplicates():
    gi = graph("rotation")
    inv = extract_invariants(gi.O_ext)
    assert len(inv) == 1


@pytest.mark.parametrize("name", SMALL + ("scaling_circle",))
def test_graph_properties(name):
    gi = graph(name)
    inv = generating_invariants(gi)
    properties.coefficient_invariance(gi)
    properties.cross_multiplication(gi, inv)
    properties.rewrite_round_trip(gi, inv)


def test_graph_ideal_is_symmetric():
    for name in SMALL + ("sl2",):
        gi = graph(name)
        a = gi.action
        swap = {**dict(zip(a.targets, a.vars)), **dict(zip(a.vars, a.targets))}
        for p in gi.O:
            assert gi.O.contains(p.to_ring(gi.O.ring, swap))
