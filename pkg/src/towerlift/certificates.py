"""Machine-checkable certificates: building, canonical bytes, replay.

A certificate is a JSON object.  Its ``transcripts`` are self-contained
claims (membership with cofactors, ideal equality, boundary values, radical
membership, ...) that ``verify`` replays with a freshly built engine.  The
``final.*`` transcripts are additionally bound to the ``result`` section:
verify recomputes their key fields from the result and the input ideal, so a
transcript cannot vouch for something other than what the result states.
The digest is a SHA-256 over the canonical serialization of everything else.
"""

from __future__ import annotations

import hashlib
import json
from itertools import combinations_with_replacement
from typing import Callable, Mapping

from .errors import TowerliftError
from .groebner.ideals import radical_member
from .polycore.element import Element
from .tower import Automorphism, IdealHandle, RingTower

SCHEMA = "towerlift-certificate/1"
KINDS = ("lift", "settheoretic", "unimodular", "normalize")
LEVELS = ("S", "R", "B", "B[Y]", "A", "Ln", "Bn")


def canonical_bytes(obj) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True).encode()


def digest_of(cert: Mapping) -> str:
    body = {k: v for k, v in cert.items() if k != "digest"}
    return hashlib.sha256(canonical_bytes(body)).hexdigest()


def dumps(cert: Mapping) -> str:
    return json.dumps(cert, sort_keys=True, indent=1, ensure_ascii=True) + "\n"


def strs(xs) -> list[str]:
    return [str(x) for x in xs]


def power_generators(gens, k: int, tower: RingTower) -> list[Element]:
    """Products of k generators (with repetition), in a fixed order."""
    gens = [tower.element(g) for g in gens]
    out = []
    for combo in combinations_with_replacement(range(len(gens)), k):
        p = Element.constant(tower, 1)
        for i in combo:
            p = p * gens[i]
        out.append(p)
    return out


class CertificateBuilder:
    def __init__(self, kind: str, tower: RingTower, ideal: IdealHandle | None, params: Mapping):
        if kind not in KINDS:
            raise ValueError(f"unknown certificate kind {kind!r}")
        self.kind = kind
        self.tower = tower
        self.ideal = ideal
        self.params = dict(params)
        self.stages: list[dict] = []
        self.transcripts: list[dict] = []
        self._ids: set[str] = set()

    def stage(self, name: str, **data):
        self.stages.append({"stage": name, **data})

    def add(self, tid: str, ttype: str, **payload) -> str:
        if tid in self._ids:
            raise ValueError(f"duplicate transcript id {tid}")
        self._ids.add(tid)
        self.transcripts.append({"id": tid, "type": ttype, **payload})
        return tid

    # convenience constructors --------------------------------------------------
    def membership(self, tid, ideal: IdealHandle, element, cofactors=None):
        return self.add(
            tid, "membership",
            level=ideal.level.name,
            generators=strs(ideal.generators),
            element=str(element),
            cofactors=None if cofactors is None else strs(cofactors),
        )

    def ideal_equal(self, tid, level: str, left, right):
        return self.add(tid, "ideal_equal", level=level, left=strs(left), right=strs(right))

    def build(self, result: Mapping) -> dict:
        cert = {
            "schema": SCHEMA,
            "kind": self.kind,
            "tower": self.tower.to_json(),
            "ideal": None
            if self.ideal is None
            else {"level": self.ideal.level.name, "generators": strs(self.ideal.generators)},
            "params": self.params,
            "stages": self.stages,
            "result": dict(result),
            "transcripts": self.transcripts,
        }
        cert = json.loads(canonical_bytes(cert))
        cert["digest"] = digest_of(cert)
        return cert


# -- replay ------------------------------------------------------------------------


class _Fail(Exception):
    pass


def _need(cond, msg):
    if not cond:
        raise _Fail(msg)


def _ideal(T, payload, key="generators"):
    return IdealHandle(T, payload["level"], [T.parse(g) for g in payload[key]])


def _check_membership(T, t):
    I = _ideal(T, t)
    e = T.parse(t["element"])
    cof = t.get("cofactors")
    if cof is not None:
        _need(len(cof) == len(I.generators), "cofactor count differs from generator count")
        total = Element.constant(T, 0)
        for c, g in zip(cof, I.generators):
            total = total + T.parse(c) * g
        _need(total == e, "cofactor identity does not hold")
    _need(I.contains(e), "normal form is nonzero")


def _check_ideal_equal(T, t):
    L = IdealHandle(T, t["level"], [T.parse(g) for g in t["left"]])
    R = IdealHandle(T, t["level"], [T.parse(g) for g in t["right"]])
    _need(all(R.contains(g) for g in L.generators), "left not contained in right")
    _need(all(L.contains(g) for g in R.generators), "right not contained in left")


def _check_boundary(T, t):
    e = T.parse(t["element"]).evaluate_at_one()
    _need(e == T.parse(t["expected"]), "value at t = 1 differs")


def _check_radical(T, t):
    I = _ideal(T, t)
    e = T.parse(t["element"])
    k = t.get("exponent")
    if k is not None:
        _need(isinstance(k, int) and k >= 1, "bad exponent")
        _need(I.contains(e**k), f"the {k}-th power is not in the ideal")
        _need(k == 1 or not I.contains(e ** (k - 1)), f"exponent {k} is not the least one")
    _need(radical_member(e.num, I.preimage()), "not in the radical")


def _check_source(T, t):
    """Stage witnesses may name the ideal they came from and the map applied to it."""
    if "source" not in t:
        return
    theta = Automorphism.from_json(T, t["automorphism"])
    img = [theta(T.parse(g)) for g in t["source"]]
    _need(_same(T, "generators", img, t["generators"]), "generators are not the image of the source")


def _check_monic(T, t):
    from .transforms import leading_coefficient

    _check_source(T, t)
    _check_membership(T, t)
    e = T.parse(t["element"])
    _need(e.degree_in(t["var"]) > 0, "witness is constant in the variable")
    _need(leading_coefficient(e, t["var"]) == 1, "leading coefficient is not 1")


def _check_unit_shift(T, t):
    _check_source(T, t)
    I = _ideal(T, t)
    h = T.parse(t["h"])
    _need(h.b == 0, "h has f in its denominator")
    _need(t["v"] == "f" or t["v"] in [T.ring.names[i] for i in T.y_idx], "v must be f or a Laurent variable")
    v = T.f_element if t["v"] == "f" else T.parse(t["v"])
    _need(I.contains(1 + v * h), "1 + v*h is not in the ideal")


def _check_equal(T, t):
    _need(T.parse(t["left"]) == T.parse(t["right"]), "elements differ")


def _check_automorphism(T, t):
    theta = Automorphism.from_json(T, t["automorphism"])
    _need(theta.fixes_generators(), "inverse does not undo the map")


def _check_unimodular(T, t):
    v = [T.parse(x) for x in t["vector"]]
    psi = [T.parse(x) for x in t["functional"]]
    _need(len(v) == len(psi), "length mismatch")
    total = Element.constant(T, 0)
    for a, b in zip(psi, v):
        total = total + a * b
    _need(total == 1, "functional does not send the vector to 1")
    e = t.get("idempotent")
    if e is not None:
        E = [[T.parse(x) for x in row] for row in e]
        _need(_is_idempotent(E), "matrix is not idempotent")
        _need(_matvec(E, v) == v, "vector is not in the image of the idempotent")
        _need(_matvec_t(E, psi) == psi, "functional does not factor through the image")


def _matvec(E, v):
    out = []
    for row in E:
        s = Element.constant(row[0].tower, 0)
        for a, b in zip(row, v):
            s = s + a * b
        out.append(s)
    return out


def _matvec_t(E, v):
    cols = list(zip(*E))
    return _matvec([list(c) for c in cols], v)


def _is_idempotent(E):
    n = len(E)
    cols = list(zip(*E))
    for i in range(n):
        for j in range(n):
            s = Element.constant(E[0][0].tower, 0)
            for k in range(n):
                s = s + E[i][k] * cols[j][k]
            if s != E[i][j]:
                return False
    return True


CHECKS: dict[str, Callable] = {
    "membership": _check_membership,
    "ideal_equal": _check_ideal_equal,
    "boundary": _check_boundary,
    "radical": _check_radical,
    "monic": _check_monic,
    "unit_shift": _check_unit_shift,
    "equal": _check_equal,
    "automorphism_inverse": _check_automorphism,
    "unimodular": _check_unimodular,
}


# -- bindings between result and final transcripts -----------------------------------


def _required(cert, T) -> list[tuple[str, dict]]:
    """(id, expected fields) for the final transcripts implied by the result."""
    kind = cert["kind"]
    res = cert["result"]
    I = cert.get("ideal")
    out = []
    if kind == "lift":
        gens = [T.parse(x) for x in res["gens"]]
        lifted = [T.parse(x) for x in res["lifted"]]
        _need(len(gens) == len(lifted), "lifted and original generator counts differ")
        ig = [T.parse(x) for x in I["generators"]]
        sq = strs(power_generators(ig, 2, T))
        for i, (f, g) in enumerate(zip(gens, lifted)):
            out.append((f"final.member.{i}", {"type": "membership", "level": I["level"],
                                              "generators": ig, "element": g}))
            out.append((f"final.delta.{i}", {"type": "membership", "level": I["level"],
                                             "generators": [T.parse(s) for s in sq], "element": g - f}))
        out.append(("final.generation", {"type": "ideal_equal", "level": I["level"], "left": lifted, "right": ig}))
        if res.get("boundary") is not None:
            bd = [T.parse(x) for x in res["boundary"]]
            _need(len(bd) == len(lifted), "boundary length differs")
            for i, (g, d) in enumerate(zip(lifted, bd)):
                out.append((f"final.boundary.{i}", {"type": "boundary", "element": g, "expected": d}))
    elif kind == "settheoretic":
        gens = [T.parse(x) for x in res["gens"]]
        H = [T.parse(x) for x in res["generators"]]
        n = len(gens)
        _need(len(H) == n, "number of generators differs from n")
        _need(res["exponent"] == _factorial(n - 1), "exponent is not (n-1)!")
        ig = [T.parse(x) for x in I["generators"]]
        Jgens = gens[: n - 1] + power_generators(ig, res["exponent"], T)
        out.append(("final.J", {"type": "ideal_equal", "level": I["level"], "left": H, "right": Jgens}))
        for i, f in enumerate(gens):
            out.append((f"final.rad.f.{i}", {"type": "radical", "level": I["level"], "generators": H, "element": f}))
        for j, h in enumerate(H):
            out.append((f"final.rad.h.{j}", {"type": "radical", "level": I["level"], "generators": ig, "element": h}))
    if kind in ("lift", "settheoretic"):
        by_id = {t["id"]: t for t in cert["transcripts"]}
        shift = by_id.get("normalize.unit_shift")
        if shift is not None:
            out.append(("normalize.unit_shift", {"source": [T.parse(x) for x in I["generators"]]}))
            out.append(("normalize.automorphism", {"automorphism": shift.get("automorphism")}))
    if kind == "unimodular":
        out.append(("final.unimodular", {"type": "unimodular", "vector": [T.parse(x) for x in res["vector"]]}))
    elif kind == "normalize":
        theta = res["automorphism"]
        out.append(("final.automorphism", {"type": "automorphism_inverse", "automorphism": theta}))
        th = Automorphism.from_json(T, theta)
        ig = [T.parse(x) for x in I["generators"]]
        img = [th(g) for g in ig]
        if res.get("monic") is not None:
            out.append(("final.monic", {"type": "monic", "level": I["level"], "generators": img,
                                        "element": T.parse(res["monic"]), "var": res["monic_var"]}))
        if res.get("unit_shift") is not None:
            out.append(("final.unit_shift", {"type": "unit_shift", "level": I["level"], "generators": img,
                                             "h": T.parse(res["unit_shift"]["h"]), "v": res["unit_shift"]["v"]}))
    return out


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def _same(T, field, want, got) -> bool:
    if isinstance(want, list):
        if not isinstance(got, list) or len(want) != len(got):
            return False
        return all(_same(T, field, a, b) for a, b in zip(want, got))
    if isinstance(want, Element):
        try:
            return isinstance(got, str) and T.parse(got) == want
        except TowerliftError:
            return False
    return want == got


def verify_certificate(cert: Mapping) -> dict:
    """Replay every transcript; report the first failure and the digest status."""
    report = {"ok": False, "first_failure": None, "reason": None, "digest_ok": False, "checked": 0}
    try:
        _need(cert.get("schema") == SCHEMA, "unknown schema")
        _need(cert.get("kind") in KINDS, "unknown kind")
        T = RingTower.from_json(cert["tower"])
        transcripts = cert["transcripts"]
        by_id = {}
        for t in transcripts:
            _need(t["id"] not in by_id, f"duplicate transcript id {t['id']}")
            by_id[t["id"]] = t
    except (_Fail, KeyError, TypeError, TowerliftError) as exc:
        report["first_failure"] = "header"
        report["reason"] = str(exc)
        return report
    for t in transcripts:
        try:
            check = CHECKS.get(t.get("type"))
            _need(check is not None, f"unknown transcript type {t.get('type')!r}")
            _need("level" not in t or t["level"] in LEVELS, f"non-canonical level {t.get('level')!r}")
            check(T, t)
        except (_Fail, KeyError, TypeError, ValueError, ArithmeticError, TowerliftError) as exc:
            report["first_failure"] = t.get("id")
            report["reason"] = str(exc) or type(exc).__name__
            return report
        report["checked"] += 1
    try:
        for tid, want in _required(cert, T):
            _need(tid in by_id, f"missing transcript {tid}")
            got = by_id[tid]
            for field, value in want.items():
                _need(field in got and _same(T, field, value, got[field]), f"{tid}: field {field} does not match the result")
    except (_Fail, KeyError, TypeError, ValueError, ArithmeticError, TowerliftError) as exc:
        report["first_failure"] = "result-binding"
        report["reason"] = str(exc) or type(exc).__name__
        return report
    report["digest_ok"] = cert.get("digest") == digest_of(cert)
    if not report["digest_ok"]:
        report["first_failure"] = "digest"
        report["reason"] = "digest does not match the certificate body"
        return report
    report["ok"] = True
    return report


def normalization_certificate(W, params: Mapping | None = None) -> dict:
    """Certificate for a normalization witness (automorphism, monic, 1 + v h)."""
    I = W.ideal
    T = I.tower
    b = CertificateBuilder("normalize", T, I, params or {})
    theta = W.automorphism
    b.add("final.automorphism", "automorphism_inverse", automorphism=theta.to_json())
    img = [theta(g) for g in I.generators]
    result = {"automorphism": theta.to_json(), "attempts": W.attempts, "monic": None, "monic_var": None,
              "unit_shift": None}
    if W.monic is not None:
        b.add("final.monic", "monic", level=I.level.name, generators=strs(img), element=str(W.monic), var=W.monic_var)
        result["monic"], result["monic_var"] = str(W.monic), W.monic_var
    if W.unit_shift_h is not None:
        b.add("final.unit_shift", "unit_shift", level=I.level.name, generators=strs(img),
              v=W.unit_shift_v, h=str(W.unit_shift_h))
        result["unit_shift"] = {"v": W.unit_shift_v, "h": str(W.unit_shift_h), "element": str(W.unit_shift)}
    if W.flags:
        result["flags"] = dict(W.flags)
    return b.build(result)
