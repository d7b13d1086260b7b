import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from towerlift import (
    LocalizedMatrix,
    check_surjection_mod_sq,
    fiber_glue,
    ideal,
    lift_T2,
    lift_T3,
    make_tower,
    mandal_lift,
    verify_certificate,
)
from towerlift.errors import (
    BudgetExceeded,
    ImproperIdeal,
    IncompatibleBoundary,
    LevelMismatch,
    LocalizationMismatch,
    NotComaximal,
    NotInIdeal,
    PreconditionError,
    RankTooSmall,
    Unsupported,
)
from towerlift.tower import IdealHandle

from .instances import T2_CASES, T3_CASES

KT = make_tower(0, 1, 0, "1")


def strs(xs):
    return [str(x) for x in xs]


# -- surjection modulo I^2 ---------------------------------------------------------


def test_surjection_mod_square():
    T = make_tower(0, 0, 0, "t")
    I = ideal(T, "A", ["t-2"])
    assert check_surjection_mod_sq(I, ["t-2", "(t-2)^2"])
    bad = check_surjection_mod_sq(I, ["(t-2)^2", "(t-2)^3"])
    assert not bad and bad.witness == T.parse("t-2")
    T = make_tower(0, 1, 0, "t")
    I = ideal(T, "A", ["x1", "t-2"])
    assert check_surjection_mod_sq(I, ["x1+(t-2)^2", "t-2+x1^2"])
    with pytest.raises(NotInIdeal):
        check_surjection_mod_sq(I, ["x1+1", "t-2"])


# -- patching ----------------------------------------------------------------------------


def test_glue_identity():
    T = make_tower(0, 0, 0, "1")
    t = T.var("t")
    one, zero = T.element(1), T.element(0)
    eye = [[one, zero], [zero, one]]
    out = fiber_glue(LocalizedMatrix(eye, t), LocalizedMatrix(eye, 1 - t), level="B[Y]")
    assert out.xi == eye
    assert out.a * 1 + out.b * 1 == 1


def test_glue_unit_cancellation():
    T = make_tower(0, 0, 0, "1")
    t = T.var("t")
    out = fiber_glue(LocalizedMatrix([[t]], t, 1), LocalizedMatrix([[T.element(1)]], 1 - t), level="B[Y]")
    assert out.xi == [[1]]


def test_glue_detects_global_map():
    T = make_tower(0, 1, 0, "1")
    t = T.var("t")
    g = 1 + T.parse("x1") * t
    out = fiber_glue(LocalizedMatrix([[g]], t), LocalizedMatrix([[g]], 1 - t), level="B[Y]")
    assert out.xi == [[g]]


def test_glue_surjectivity_flag():
    T = make_tower(0, 1, 0, "1")
    t = T.var("t")
    x = T.parse("x1")
    target = IdealHandle(T, "B[Y]", [x, t])
    row = [[x, t]]
    out = fiber_glue(LocalizedMatrix(row, t), LocalizedMatrix(row, 1 - t), target=target, level="B[Y]")
    assert out.surjective is True


def test_glue_errors():
    T = make_tower(0, 0, 0, "1")
    t = T.var("t")
    one = T.element(1)
    with pytest.raises(NotComaximal):
        fiber_glue(LocalizedMatrix([[one]], t), LocalizedMatrix([[one]], t * t), level="B[Y]")
    with pytest.raises(LocalizationMismatch):
        fiber_glue(LocalizedMatrix([[one]], t), LocalizedMatrix([[t]], 1 - t), level="B[Y]")
    with pytest.raises(LocalizationMismatch):
        fiber_glue(LocalizedMatrix([[one, one]], t), LocalizedMatrix([[one]], 1 - t), level="B[Y]")


# -- the polynomial-ring lift ------------------------------------------------------------------


def test_mandal_lift_reduces_perturbation():
    K = IdealHandle(KT, "B[Y]", ["t", "x1"])
    c = mandal_lift(K, ["t+x1^2", "x1+t^2"])
    assert strs(c.lifted) == ["x1^2 + t", "x1"]
    assert c.deltas[1] == KT.parse("-t^2")
    assert c.check() and c.verify()


def test_mandal_lift_accepts_generators_first():
    K = IdealHandle(KT, "B[Y]", ["t", "x1"])
    c = mandal_lift(K, ["t", "x1"])
    assert c.stages[0]["how"] == "unperturbed"
    assert all(d.is_zero() for d in c.deltas)


def test_mandal_lift_with_boundary():
    K = IdealHandle(KT, "B[Y]", ["t-2", "x1"])
    c = mandal_lift(K, ["t-2", "x1+(t-2)^2"], boundary=["-1", "x1"])
    assert [g.evaluate_at_one() for g in c.lifted] == [-1, KT.parse("x1")]
    assert c.check() and c.verify()


def test_mandal_lift_preconditions():
    K = IdealHandle(KT, "B[Y]", ["t", "x1"])
    with pytest.raises(PreconditionError):
        mandal_lift(K, ["t^2", "x1"])
    with pytest.raises(RankTooSmall):
        mandal_lift(IdealHandle(KT, "B[Y]", ["t"]), ["t"])
    with pytest.raises(ImproperIdeal):
        mandal_lift(IdealHandle(KT, "B[Y]", ["1"]), ["1", "0"])
    T = make_tower(0, 1, 0, "t")
    with pytest.raises(LevelMismatch):
        mandal_lift(ideal(T, "A", ["x1", "t-2"]), ["x1", "t-2"])
    with pytest.raises(PreconditionError):
        mandal_lift(IdealHandle(KT, "B[Y]", ["x1*t-1"]), ["x1*t-1", "0"], monic_var="t")


# -- pipelines -------------------------------------------------------------------------------------


def test_T2_trivial_case():
    T = make_tower(0, 0, 0, "t")
    c = lift_T2(ideal(T, "A", ["t-2"]), ["t-2", "(t-2)^2"])
    assert c.lifted == [T.parse("t-2"), T.parse("(t-2)^2")]
    assert c.verify()


def test_T2_worked_example():
    T = make_tower(0, 1, 0, "t")
    I = ideal(T, "A", ["x1", "t-2"])
    c = lift_T2(I, ["x1+(t-2)^2", "t-2+x1^2"])
    assert c.check()
    assert all(I.square().contains(d) for d in c.deltas)
    assert verify_certificate(c.certificate())["ok"]


def test_T2_rank_bound():
    T = make_tower(0, 1, 0, "t")
    with pytest.raises(RankTooSmall):
        lift_T2(ideal(T, "A", ["x1", "t-2"]), ["x1+(t-2)^2"])


def test_T2_budget():
    T = make_tower(0, 1, 0, "t")
    with pytest.raises(BudgetExceeded) as exc:
        lift_T2(ideal(T, "A", ["x1"]), ["x1", "x1^2"], max_exponent=0)
    assert exc.value.stage == "combined_normalize"


@pytest.mark.parametrize("case", T2_CASES[:8], ids=lambda c: "-".join(c[1]))
def test_T2_corpus(case):
    (d, m, n, f), gens_I, gens = case
    T = make_tower(d, m, n, f)
    c = lift_T2(ideal(T, "A", gens_I), gens)
    assert c.check()
    assert verify_certificate(c.certificate())["ok"]


def test_T3_example():
    T = make_tower(0, 0, 0, "t")
    c = lift_T3(ideal(T, "A", ["t-2"]), ["t-2", "(t-2)^2"], ["-1", "1"])
    assert [g.evaluate_at_one() for g in c.lifted] == [-1, 1]
    assert c.verify()


def test_T3_preconditions():
    T = make_tower(0, 1, 0, "t")
    I = ideal(T, "A", ["x1", "t-2"])
    with pytest.raises(PreconditionError):
        lift_T3(I, ["x1+(t-2)^2", "t-2+x1^2"], ["x1+1", "x1^2-1"])
    T = make_tower(0, 1, 1, "t")
    I = ideal(T, "A", ["x1", "y1-2"])
    with pytest.raises(IncompatibleBoundary):
        lift_T3(I, ["x1+(y1-2)^2", "y1-2+x1^2", "x1*(y1-2)"], ["x1+(y1-2)^2", "y1-2", "x1*y1"])
    T = make_tower(1, 1, 0, "t^2+z1+1")
    with pytest.raises(Unsupported):
        lift_T3(ideal(T, "A", ["x1", "t-2"]), ["x1+(t-2)^2", "t-2+x1^2", "x1*(t-2)"], ["1", "0", "x1"])


@pytest.mark.parametrize("case", T3_CASES[:6], ids=lambda c: "-".join(c[1]))
def test_T3_corpus(case):
    (d, m, n, f), gens_I, gens, delta = case
    T = make_tower(d, m, n, f)
    c = lift_T3(ideal(T, "A", gens_I), gens, delta)
    assert c.check()
    assert [g.evaluate_at_one() for g in c.lifted] == [T.parse(x) for x in delta]
    assert verify_certificate(c.certificate())["ok"]


def test_certificate_replays_without_shared_state():
    T = make_tower(0, 1, 1, "t")
    c = lift_T2(ideal(T, "A", ["x1", "t-2"]), ["x1+(t-2)^2", "t-2+x1^2", "x1*(t-2)"])
    cert = c.certificate()
    again = make_tower(0, 1, 1, "t")
    assert again is not T
    assert verify_certificate(cert)["ok"]
    assert verify_certificate(cert) == verify_certificate(cert)


@settings(max_examples=15)
@given(
    st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2), st.integers(0, 1000)
)
def test_mandal_lift_random_square_perturbations(a, b, c, seed):
    K = IdealHandle(KT, "B[Y]", ["t", "x1"])
    f1 = KT.parse(f"t + ({a})*x1^2 + ({b})*x1*t")
    f2 = KT.parse(f"x1 + ({c})*t^2 + ({a})*x1*t")
    cert = mandal_lift(K, [f1, f2], seed=seed)
    assert cert.check()
