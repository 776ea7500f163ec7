"""Re-verifiable reduction certificates.

A ``ReductionCert`` records a theorem kind, the ambient ring and
modulus, echoed inputs, produced outputs, and the membership witnesses
needed to re-check the claim.  ``verify`` rebuilds every check from the
stored data alone: exact cofactor identities, radical memberships, and
script/matrix replays.  Nothing from the construction phase is trusted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import Budget, InputError, KrullError
from .groebner import IdealRep, MembershipWitness, ideal_member
from .matrices import (ElementaryOp, PolyMatrix, minor_ideal_gens,
                       replay_script)
from .poly import Poly, Ring
from .zariski import DimCert, RadQuotientRing, verify_complementary

GCD_TRICK = "gcd-trick"
KRONECKER_STEP = "kronecker-step"
KRONECKER_REDUCE = "kronecker-reduce"
BASS_STABLE_RANGE = "bass-stable-range"
UNIMOD_TO_E1 = "unimod-to-e1"
MATRIX_COMBINE = "matrix-combine"
SERRE_SPLIT = "serre-split"
FORSTER_SWAN = "forster-swan"
SWAN_MAINLEMMA = "swan-mainlemma"
MINOR_STEP = "minor-step"
BASS_CANCEL = "bass-cancel"
DIM_CERT = "dim-cert"

_SCHEMAS: dict[str, dict[str, dict[str, str]]] = {
    GCD_TRICK: {
        "inputs": {"u": "poly", "v": "poly"},
        "outputs": {"sum": "poly"},
        "witnesses": {"product_nilpotent": "witness", "u_in_sum": "witness",
                      "v_in_sum": "witness"},
    },
    KRONECKER_STEP: {
        "inputs": {"a": "poly", "bs": "polylist", "xs": "polylist"},
        "outputs": {"new_gens": "polylist"},
        "witnesses": {"a_forward": "witness", "bs_forward": "witnesslist",
                      "backward": "witnesslist"},
    },
    KRONECKER_REDUCE: {
        "inputs": {"gens": "polylist"},
        "outputs": {"new_gens": "polylist", "corrections": "polylist"},
        "witnesses": {"old_in_new": "witnesslist", "new_in_old": "witnesslist",
                      "corrections_in_dropped": "witnesslist"},
    },
    BASS_STABLE_RANGE: {
        "inputs": {"a": "poly", "bs": "polylist"},
        "outputs": {"xs": "polylist"},
        "witnesses": {"hypothesis": "witness", "conclusion": "witness"},
    },
    UNIMOD_TO_E1: {
        "inputs": {"vector": "polylist"},
        "outputs": {"script": "script", "final": "polylist"},
        "witnesses": {"hypothesis": "witness"},
    },
    MATRIX_COMBINE: {
        "inputs": {"matrix": "matrix", "k": "int", "mode": "str"},
        "outputs": {"ts": "polylist"},
        "witnesses": {"delta_unit": "witness?", "conclusion": "witness?",
                      "minor_radicals": "witnesslist?", "c0_radicals": "witnesslist?"},
    },
    SERRE_SPLIT: {
        "inputs": {"matrix": "matrix", "k": "int"},
        "outputs": {"ts": "polylist", "column": "polylist", "functional": "polylist"},
        "witnesses": {"delta_unit": "witness", "unimodular": "witness"},
    },
    FORSTER_SWAN: {
        "inputs": {"presentation": "matrix", "target": "int"},
        "outputs": {"new_gens": "matrix"},
        "witnesses": {"fitting_unit": "witness", "span": "spanlist"},
    },
    SWAN_MAINLEMMA: {
        "inputs": {"a": "poly", "bs": "polylist", "carrier": "polylist",
                   "carriers": "matrix"},
        "outputs": {"xs": "polylist", "ys": "polylist"},
        "witnesses": {"hypothesis": "witness", "conclusion": "witness"},
    },
    MINOR_STEP: {
        "inputs": {"column": "polylist", "cols": "matrix", "rows": "intlist",
                   "k": "int"},
        "outputs": {"xs": "polylist"},
        "witnesses": {"hypothesis": "witness", "conclusion": "witness"},
    },
    BASS_CANCEL: {
        "inputs": {"projector": "matrix", "column": "polylist", "scalar": "poly",
                   "k": "int"},
        "outputs": {"ts": "polylist", "functional": "polylist",
                    "autos": "matrixlist", "inverses": "matrixlist"},
        "witnesses": {"hypothesis": "witness", "unimodular": "witness"},
    },
}


@dataclass
class ReductionCert:
    kind: str
    ring: Ring
    modulus: list[Poly]
    inputs: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in _SCHEMAS:
            raise InputError(f"unknown certificate kind {self.kind!r}")

    def modulus_ideal(self) -> IdealRep:
        return IdealRep(self.ring, list(self.modulus))

    def verify(self, budget: Budget | None = None) -> bool:
        budget = budget or Budget()
        return _VERIFIERS[self.kind](self, budget)

    # --- JSON ---

    def to_json(self) -> dict:
        schema = _SCHEMAS[self.kind]
        out = {
            "kind": self.kind,
            "ring": self.ring.to_json(),
            "modulus": [g.text() for g in self.modulus],
        }
        for section in ("inputs", "outputs", "witnesses"):
            data = getattr(self, section)
            enc = {}
            for name, typ in schema[section].items():
                if typ.endswith("?") and name not in data:
                    continue
                enc[name] = _encode(data[name], typ.rstrip("?"))
            out[section] = enc
        return out

    @classmethod
    def from_json(cls, data: dict) -> "ReductionCert":
        try:
            kind = data["kind"]
            ring = Ring.from_json(data["ring"])
            modulus = [ring.parse(t) for t in data.get("modulus", [])]
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed certificate: {exc}") from exc
        if kind not in _SCHEMAS:
            raise InputError(f"unknown certificate kind {kind!r}")
        schema = _SCHEMAS[kind]
        sections = {}
        for section in ("inputs", "outputs", "witnesses"):
            enc = data.get(section, {})
            dec = {}
            for name, typ in schema[section].items():
                opt = typ.endswith("?")
                if name not in enc:
                    if opt:
                        continue
                    raise InputError(f"certificate missing {section}.{name}")
                dec[name] = _decode(enc[name], typ.rstrip("?"), ring)
            sections[section] = dec
        return cls(kind, ring, modulus, sections["inputs"],
                   sections["outputs"], sections["witnesses"])


def _encode(value, typ: str):
    if typ == "poly":
        return value.text()
    if typ == "polylist":
        return [v.text() for v in value]
    if typ == "matrix":
        return value.to_texts()
    if typ == "matrixlist":
        return [m.to_texts() for m in value]
    if typ in ("int", "str"):
        return value
    if typ == "intlist":
        return list(value)
    if typ == "witness":
        return {"cofactors": [c.text() for c in value["cofactors"]],
                "exponent": value.get("exponent", 1)}
    if typ == "witnesslist":
        return [_encode(v, "witness") for v in value]
    if typ == "script":
        return [{"target": op.target, "source": op.source, "coeff": op.coeff.text()}
                for op in value]
    if typ == "spanlist":
        return [{"new_cofs": [c.text() for c in row["new_cofs"]],
                 "rel_cofs": [c.text() for c in row["rel_cofs"]]}
                for row in value]
    raise KrullError(f"unknown field type {typ!r}")


def _decode(value, typ: str, ring: Ring):
    try:
        if typ == "poly":
            return ring.parse(value)
        if typ == "polylist":
            return [ring.parse(v) for v in value]
        if typ == "matrix":
            return PolyMatrix.from_texts(ring, value)
        if typ == "matrixlist":
            return [PolyMatrix.from_texts(ring, m) for m in value]
        if typ == "int":
            return int(value)
        if typ == "str":
            return str(value)
        if typ == "intlist":
            return [int(v) for v in value]
        if typ == "witness":
            return {"cofactors": [ring.parse(c) for c in value["cofactors"]],
                    "exponent": int(value.get("exponent", 1))}
        if typ == "witnesslist":
            return [_decode(v, "witness", ring) for v in value]
        if typ == "script":
            return [ElementaryOp(int(op["target"]), int(op["source"]),
                                 ring.parse(op["coeff"])) for op in value]
        if typ == "spanlist":
            return [{"new_cofs": [ring.parse(c) for c in row["new_cofs"]],
                     "rel_cofs": [ring.parse(c) for c in row["rel_cofs"]]}
                    for row in value]
    except (TypeError, KeyError) as exc:
        raise InputError(f"malformed certificate field: {exc}") from exc
    raise KrullError(f"unknown field type {typ!r}")


def witness_payload(w: MembershipWitness) -> dict:
    return {"cofactors": list(w.cofactors), "exponent": w.exponent}


def _check_witness(gens: list[Poly], target: Poly, payload: dict) -> bool:
    if len(payload["cofactors"]) != len(gens):
        return False
    try:
        MembershipWitness(tuple(gens), target, tuple(payload["cofactors"]),
                          payload.get("exponent", 1))
        return True
    except KrullError:
        return False


def _nf_zero(cert: ReductionCert, p: Poly, budget: Budget) -> bool:
    if p.is_zero():
        return True
    if not cert.modulus:
        return False
    return cert.modulus_ideal().normal_form(p, budget).is_zero()


# --- per-kind verification, from stored data only ---


def _verify_gcd_trick(c: ReductionCert, budget: Budget) -> bool:
    u, v = c.inputs["u"], c.inputs["v"]
    s = c.outputs["sum"]
    if s != u + v:
        return False
    I = list(c.modulus)
    return (_check_witness(I, u * v, c.witnesses["product_nilpotent"])
            and _check_witness(I + [s], u, c.witnesses["u_in_sum"])
            and _check_witness(I + [s], v, c.witnesses["v_in_sum"]))


def _verify_kronecker_step(c: ReductionCert, budget: Budget) -> bool:
    a, bs, xs = c.inputs["a"], c.inputs["bs"], c.inputs["xs"]
    new = c.outputs["new_gens"]
    if len(new) != len(bs) or any(new[i] != bs[i] + a * xs[i] for i in range(len(bs))):
        return False
    R = RadQuotientRing(c.ring, c.modulus_ideal())
    if not verify_complementary(R, bs, xs, budget).ok:
        return False
    I = list(c.modulus)
    if not _check_witness(I + new, a, c.witnesses["a_forward"]):
        return False
    fw = c.witnesses["bs_forward"]
    if len(fw) != len(bs) or not all(
            _check_witness(I + new, b, w) for b, w in zip(bs, fw)):
        return False
    back = c.witnesses["backward"]
    old = I + [a] + list(bs)
    return len(back) == len(new) and all(
        _check_witness(old, g, w) for g, w in zip(new, back))


def _verify_kronecker_reduce(c: ReductionCert, budget: Budget) -> bool:
    gens = c.inputs["gens"]
    new = c.outputs["new_gens"]
    corrections = c.outputs["corrections"]
    nkeep = len(new)
    if len(corrections) != nkeep:
        return False
    if any(new[i] != gens[i] + corrections[i] for i in range(nkeep)):
        return False
    I = list(c.modulus)
    old_in_new = c.witnesses["old_in_new"]
    if len(old_in_new) != len(gens) or not all(
            _check_witness(I + list(new), g, w) for g, w in zip(gens, old_in_new)):
        return False
    new_in_old = c.witnesses["new_in_old"]
    if len(new_in_old) != nkeep or not all(
            _check_witness(I + list(gens), g, w) for g, w in zip(new, new_in_old)):
        return False
    dropped = list(gens[nkeep:])
    cw = c.witnesses["corrections_in_dropped"]
    return len(cw) == nkeep and all(
        _check_witness(dropped, corr, w) for corr, w in zip(corrections, cw))


def _verify_bass(c: ReductionCert, budget: Budget) -> bool:
    a, bs, xs = c.inputs["a"], c.inputs["bs"], c.outputs["xs"]
    if len(xs) != len(bs):
        return False
    I = list(c.modulus)
    one = c.ring.one()
    if not _check_witness(I + [a] + list(bs), one, c.witnesses["hypothesis"]):
        return False
    new = [b + a * x for b, x in zip(bs, xs)]
    return _check_witness(I + new, one, c.witnesses["conclusion"])


def _verify_unimod_to_e1(c: ReductionCert, budget: Budget) -> bool:
    v = c.inputs["vector"]
    script = c.outputs["script"]
    final = c.outputs["final"]
    I = list(c.modulus)
    one = c.ring.one()
    if not _check_witness(I + list(v), one, c.witnesses["hypothesis"]):
        return False
    replayed = replay_script(list(v), script)
    if replayed != list(final):
        return False
    want = [one] + [c.ring.zero()] * (len(v) - 1)
    return all(_nf_zero(c, got - w, budget) for got, w in zip(replayed, want))


def _combined_column(F: PolyMatrix, ts: list[Poly]) -> list[Poly]:
    col = list(F.col(0))
    for i, t in enumerate(ts):
        ci = F.col(i + 1)
        col = [e + t * x for e, x in zip(col, ci)]
    return col


def _verify_matrix_combine(c: ReductionCert, budget: Budget) -> bool:
    F, k, mode = c.inputs["matrix"], c.inputs["k"], c.inputs["mode"]
    ts = c.outputs["ts"]
    if len(ts) != F.ncols - 1:
        return False
    col = _combined_column(F, ts)
    I = list(c.modulus)
    one = c.ring.one()
    if mode == "hdim":
        mins = minor_ideal_gens(F, k)
        return (_check_witness(I + mins, one, c.witnesses["delta_unit"])
                and _check_witness(I + col, one, c.witnesses["conclusion"]))
    if mode == "krull-localized":
        mins = minor_ideal_gens(F, k)
        mrs = c.witnesses["minor_radicals"]
        if len(mrs) != len(mins) or not all(
                _check_witness(I + col, m, w) for m, w in zip(mins, mrs)):
            return False
        crs = c.witnesses["c0_radicals"]
        c0 = F.col(0)
        return len(crs) == len(c0) and all(
            _check_witness(I + col, e, w) for e, w in zip(c0, crs))
    return False


def _verify_serre_split(c: ReductionCert, budget: Budget) -> bool:
    F, k = c.inputs["matrix"], c.inputs["k"]
    ts, C, lam = c.outputs["ts"], c.outputs["column"], c.outputs["functional"]
    if F.nrows != F.ncols or len(C) != F.nrows or len(lam) != F.nrows:
        return False
    if not F.mul(F).sub(F).is_zero():
        sq = F.mul(F).sub(F)
        if not all(_nf_zero(c, e, budget) for r in sq.rows for e in r):
            return False
    # C is the image under F of the combined column
    u = [c.ring.one()] + list(ts)
    if len(u) != F.ncols:
        return False
    base = F.apply(u)
    if any(x != y for x, y in zip(base, C)):
        return False
    # F C = C exactly up to the modulus
    fc = F.apply(list(C))
    if not all(_nf_zero(c, x - y, budget) for x, y in zip(fc, C)):
        return False
    I = list(c.modulus)
    one = c.ring.one()
    mins = minor_ideal_gens(F, k)
    if not _check_witness(I + mins, one, c.witnesses["delta_unit"]):
        return False
    w = c.witnesses["unimodular"]
    # lambda is the column part of the unimodularity cofactors
    if list(w["cofactors"][len(I):len(I) + len(C)]) != list(lam):
        return False
    return _check_witness(I + list(C), one, w)


def _verify_forster_swan(c: ReductionCert, budget: Budget) -> bool:
    F, m = c.inputs["presentation"], c.inputs["target"]
    U = c.outputs["new_gens"]
    if U.nrows != m or (m > 0 and U.ncols != F.nrows):
        return False
    n0 = F.nrows
    fitting = minor_ideal_gens(F, n0 - m)
    I = list(c.modulus)
    one = c.ring.one()
    if not _check_witness(I + fitting, one, c.witnesses["fitting_unit"]):
        return False
    span = c.witnesses["span"]
    if len(span) != n0:
        return False
    zero = c.ring.zero()
    for i, row in enumerate(span):
        new_cofs, rel_cofs = row["new_cofs"], row["rel_cofs"]
        if len(new_cofs) != m or len(rel_cofs) != F.ncols:
            return False
        for coord in range(n0):
            acc = zero
            for cof, t in zip(new_cofs, range(m)):
                acc = acc + cof * U.rows[t][coord]
            for cof, j in zip(rel_cofs, range(F.ncols)):
                acc = acc + cof * F.rows[coord][j]
            want = one if coord == i else zero
            if not _nf_zero(c, acc - want, budget):
                return False
    return True


def _verify_swan_mainlemma(c: ReductionCert, budget: Budget) -> bool:
    a, bs = c.inputs["a"], c.inputs["bs"]
    L, Ls = c.inputs["carrier"], c.inputs["carriers"]
    xs, ys = c.outputs["xs"], c.outputs["ys"]
    if len(xs) != len(bs) or len(ys) != len(bs) or Ls.nrows != len(bs):
        return False
    if any(x != a * y for x, y in zip(xs, ys)):
        return False
    I = list(c.modulus)
    one = c.ring.one()
    if not _check_witness(I + [a] + list(bs) + list(L), one,
                          c.witnesses["hypothesis"]):
        return False
    new_scals = [b + a * x for b, x in zip(bs, xs)]
    newL = list(L)
    for x, row in zip(xs, Ls.rows):
        newL = [e + x * l for e, l in zip(newL, row)]
    return _check_witness(I + new_scals + newL, one, c.witnesses["conclusion"])


def _verify_minor_step(c: ReductionCert, budget: Budget) -> bool:
    C, cols, rows, k = (c.inputs["column"], c.inputs["cols"],
                        c.inputs["rows"], c.inputs["k"])
    xs = c.outputs["xs"]
    if len(xs) != cols.ncols or k != cols.ncols or len(rows) != k:
        return False
    from .matrices import minor as _minor
    nu = _minor(cols, tuple(rows), tuple(range(cols.ncols)))
    I = list(c.modulus)
    one = c.ring.one()
    if not _check_witness(I + [nu] + list(C), one, c.witnesses["hypothesis"]):
        return False
    newC = list(C)
    for x, j in zip(xs, range(cols.ncols)):
        newC = [e + x * col_e for e, col_e in zip(newC, cols.col(j))]
    return _check_witness(I + newC, one, c.witnesses["conclusion"])


def _verify_bass_cancel(c: ReductionCert, budget: Budget) -> bool:
    F, C, a, k = (c.inputs["projector"], c.inputs["column"],
                  c.inputs["scalar"], c.inputs["k"])
    ts, lam = c.outputs["ts"], c.outputs["functional"]
    autos, invs = c.outputs["autos"], c.outputs["inverses"]
    m = F.nrows
    if F.ncols != m or len(C) != m or len(ts) != m or len(lam) != m:
        return False
    sq = F.mul(F).sub(F)
    if not all(_nf_zero(c, e, budget) for r in sq.rows for e in r):
        return False
    I = list(c.modulus)
    one = c.ring.one()
    zero = c.ring.zero()
    if not _check_witness(I + list(C) + [a], one, c.witnesses["hypothesis"]):
        return False
    Cp = [zero] * m
    for t, j in zip(ts, range(m)):
        Cp = [e + t * x for e, x in zip(Cp, F.col(j))]
    target = [ci + a * cpi for ci, cpi in zip(C, Cp)]
    w = c.witnesses["unimodular"]
    if list(w["cofactors"][len(I):len(I) + m]) != list(lam):
        return False
    if not _check_witness(I + target, one, w):
        return False
    if len(autos) != 3 or len(invs) != 3:
        return False
    eye = PolyMatrix.identity(c.ring, m + 1)
    for A, B in zip(autos, invs):
        if A.nrows != m + 1 or A.ncols != m + 1:
            return False
        for prod in (A.mul(B), B.mul(A)):
            diff = prod.sub(eye)
            if not all(_nf_zero(c, e, budget) for r in diff.rows for e in r):
                return False
    vec = list(C) + [a]
    for A in autos:
        vec = A.apply(vec)
    want = [zero] * m + [one]
    if not all(_nf_zero(c, x - y, budget) for x, y in zip(vec, want)):
        return False
    # each automorphism preserves the submodule N + A
    proj = PolyMatrix(c.ring, [row + [zero] for row in F.rows]
                      + [[zero] * m + [one]])
    for A in autos + invs:
        ap = A.mul(proj)
        off = proj.mul(ap).sub(ap)
        if not all(_nf_zero(c, e, budget) for r in off.rows for e in r):
            return False
    return True


_VERIFIERS = {
    GCD_TRICK: _verify_gcd_trick,
    KRONECKER_STEP: _verify_kronecker_step,
    KRONECKER_REDUCE: _verify_kronecker_reduce,
    BASS_STABLE_RANGE: _verify_bass,
    UNIMOD_TO_E1: _verify_unimod_to_e1,
    MATRIX_COMBINE: _verify_matrix_combine,
    SERRE_SPLIT: _verify_serre_split,
    FORSTER_SWAN: _verify_forster_swan,
    SWAN_MAINLEMMA: _verify_swan_mainlemma,
    MINOR_STEP: _verify_minor_step,
    BASS_CANCEL: _verify_bass_cancel,
}


def dim_cert_json(ring: Ring, modulus: list[Poly], cert: DimCert,
                  budget: Budget | None = None) -> dict:
    """The flat collapse-certificate schema used by the CLI.

    The verification block is recomputed here, not copied."""
    budget = budget or Budget()
    from .groebner import radical_member
    I = IdealRep(ring, modulus)
    identity = cert.identity_poly()
    if modulus:
        holds = ideal_member(identity, I, budget) is not None
    else:
        holds = identity.is_zero()
    ineqs = []
    bs, xs = cert.complements, cert.xs
    ineqs.append(radical_member(bs[0] * xs[0], I, budget) is not None)
    for k in range(1, len(xs)):
        J = I.plus([bs[k - 1], xs[k - 1]])
        ineqs.append(radical_member(bs[k] * xs[k], J, budget) is not None)
    ineqs.append(ideal_member(ring.one(), I.plus([bs[-1], xs[-1]]), budget)
                 is not None)
    verification = {"identityHolds": holds, "inequalities": ineqs}
    return {"kind": DIM_CERT,
            "ring": ring.to_json(),
            "modulus": [g.text() for g in modulus],
            "xs": [p.text() for p in cert.xs],
            "ms": list(cert.ms),
            "as": [p.text() for p in cert.cofactors],
            "bs": [p.text() for p in cert.complements],
            "verification": verification}


def dim_cert_from_json(data: dict) -> tuple[Ring, list[Poly], DimCert]:
    try:
        ring = Ring.from_json(data["ring"])
        modulus = [ring.parse(t) for t in data.get("modulus", [])]
        cert = DimCert([ring.parse(t) for t in data["xs"]],
                       [int(m) for m in data["ms"]],
                       [ring.parse(t) for t in data["as"]],
                       [ring.parse(t) for t in data["bs"]])
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed collapse certificate: {exc}") from exc
    return ring, modulus, cert


def verify_any(data: dict, budget: Budget | None = None) -> bool:
    """Verify a certificate JSON of any kind, from the stored data only."""
    budget = budget or Budget()
    kind = data.get("kind")
    if kind == DIM_CERT:
        from .zariski import verify_dim_cert
        ring, modulus, cert = dim_cert_from_json(data)
        R = RadQuotientRing(ring, IdealRep(ring, modulus))
        return verify_dim_cert(R, cert, budget)
    return ReductionCert.from_json(data).verify(budget)
