import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from towerlift import (
    combined_automorphism,
    euler_trivial_witness,
    find_unimodular,
    height_at_level,
    ideal,
    make_tower,
    settheoretic_generators,
    unimodular_certify,
    verify_certificate,
)
from towerlift.errors import NotEulerDatum, NotInModule, RankTooSmall, Unsupported
from towerlift.groebner import radical_member
from towerlift.tower import IdealHandle

from .instances import SETTHEORETIC_CASES
from .strategies import elements


def test_settheoretic_n1():
    T = make_tower(0, 0, 0, "t")
    c = settheoretic_generators(ideal(T, "A", ["t-2"]), ["t-2"])
    assert c.exponent == 1
    assert c.generators == [T.parse("t-2")]
    assert c.verify()


def test_settheoretic_n2_worked_example():
    T = make_tower(0, 1, 0, "t")
    I = ideal(T, "A", ["x1", "t-2"])
    c = settheoretic_generators(I, ["x1+(t-2)^2", "t-2+x1^2"])
    assert len(c.generators) == 2 and c.check()
    J = c.J()
    assert J.equals(IdealHandle(T, "A", ["x1+(t-2)^2"] + list(I.generators)))
    cert = c.certificate()
    assert verify_certificate(cert)["ok"]
    ids = {t["id"] for t in cert["transcripts"]}
    assert {"final.J", "final.rad.f.0", "final.rad.f.1", "final.rad.h.0", "final.rad.h.1"} <= ids


def test_settheoretic_n3():
    T = make_tower(0, 2, 0, "t")
    I = ideal(T, "A", ["x1", "x2", "t-2"])
    c = settheoretic_generators(I, ["x1+(t-2)^2", "x2+x1^2", "t-2+x1*x2"])
    assert c.exponent == 2 and len(c.generators) == 3
    assert c.check() and c.verify()


def test_settheoretic_refuses_large_n():
    T = make_tower(0, 4, 0, "t")
    I = ideal(T, "A", ["x1", "x2", "x3", "x4", "t-2"])
    with pytest.raises(Unsupported):
        settheoretic_generators(I, ["x1", "x2", "x3", "x4", "t-2"])


@pytest.mark.parametrize("case", SETTHEORETIC_CASES[:6], ids=lambda c: "-".join(c[1]))
def test_settheoretic_radicals_agree(case):
    (d, m, n, f), gens_I, gens = case
    T = make_tower(d, m, n, f)
    I = ideal(T, "A", gens_I)
    c = settheoretic_generators(I, gens)
    pre_I = I.preimage()
    pre_H = IdealHandle(T, "A", c.generators).preimage()
    for h in pre_H:
        assert radical_member(h, pre_I)
    for g in pre_I:
        assert radical_member(g, pre_H)


def test_euler_witness():
    T = make_tower(0, 2, 0, "t")
    I = ideal(T, "A", ["x1", "x2", "t-2"])
    gens = ["x1+(t-2)^2", "x2+x1^2", "t-2+x1*x2"]
    c = euler_trivial_witness(I, gens)
    assert c.check() and c.verify()
    assert c.params["purpose"] == "euler-class-triviality"
    assert all(I.square().contains(g - T.parse(f)) for g, f in zip(c.lifted, gens))


def test_euler_bounds():
    T = make_tower(0, 1, 0, "t")
    I = ideal(T, "A", ["x1", "t-2"])
    assert height_at_level(I) == 2
    with pytest.raises(RankTooSmall):
        euler_trivial_witness(I, ["x1", "t-2"])
    with pytest.raises(NotEulerDatum):
        euler_trivial_witness(I, ["x1", "t-2", "x1^2"])


def test_unimodular_examples():
    T = make_tower(0, 1, 0, "t")
    assert unimodular_certify(["1", "0", "0"], T)
    assert not unimodular_certify(["x1", "t-2", "0"], T)
    T0 = make_tower(0, 0, 0, "t")
    r = unimodular_certify(["t"], T0)
    assert r and r.functional[0] * T0.var("t") == 1


def test_unimodular_certificate_and_idempotent():
    T = make_tower(0, 1, 0, "t")
    r = unimodular_certify(["x1+1", "x1"], T)
    assert verify_certificate(r.certificate(T))["ok"]
    E = [["1", "0"], ["0", "0"]]
    r = unimodular_certify(["1", "0"], T, E)
    assert r and verify_certificate(r.certificate(T))["ok"]
    with pytest.raises(NotInModule):
        unimodular_certify(["0", "1"], T, E)
    with pytest.raises(NotInModule):
        unimodular_certify(["2", "0"], T, [["2", "0"], ["0", "0"]])


def test_find_unimodular():
    T = make_tower(0, 1, 0, "t")
    r = find_unimodular(T, rank=2)
    assert r is not None and r.unimodular
    E = [["1", "x1"], ["0", "0"]]
    r = find_unimodular(T, idempotent=E)
    assert r is not None and r.unimodular


TU = make_tower(0, 1, 1, "t")


@settings(max_examples=30)
@given(st.data())
def test_unimodular_invariances(data):
    T = TU
    v = [data.draw(elements(T, max_deg=1, max_terms=2, max_den=1)) for _ in range(2)]
    if all(x.is_zero() for x in v):
        return
    base = bool(unimodular_certify(v, T))
    k = data.draw(st.integers(-2, 2))
    j = data.draw(st.integers(-2, 2))
    unit = T.parse("3") * T.var("y1") ** k * T.var("t") ** j
    assert bool(unimodular_certify([unit * x for x in v], T)) == base
    th = combined_automorphism(T, [data.draw(st.integers(0, 2))], [data.draw(st.integers(0, 2))], [1])
    assert bool(unimodular_certify([th(x) for x in v], T)) == base
