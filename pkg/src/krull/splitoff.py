"""Column-manipulation theorems: unimodular combinations in the image of
a matrix, Serre splitting-off, Forster-Swan generator bounds, and Bass
cancellation, all with replayable certificates.

The global route works through Heitmann boundaries of quotient rings;
the localized route (per-minor inverted rings) backs the Krull-flavored
combination theorem and is gated behind an explicit opt-in.
"""

from __future__ import annotations

import itertools

from .certs import (BASS_CANCEL, FORSTER_SWAN, MATRIX_COMBINE, MINOR_STEP,
                    SERRE_SPLIT, SWAN_MAINLEMMA, ReductionCert,
                    witness_payload)
from .errors import Budget, InputError, KrullError, Refusal
from .groebner import ideal_member
from .matrices import (PolyMatrix, adjugate, minor, minor_ideal_gens,
                       module_member)
from .poly import Poly
from .zariski import RadQuotientRing, krull_boundary_step

from .genred import heitmann_correction


def swan_mainlemma(R: RadQuotientRing, a: Poly, bs: list[Poly],
                   L: list[Poly], Ls: list[list[Poly]],
                   budget: Budget | None = None) -> ReductionCert:
    """From 1 = D(a, bs) v D(L), correct by multiples of a:
    1 = D(b_i + a x_i) v D(L + sum x_i L_i), with each x_i in aA."""
    budget = budget or Budget()
    if len(Ls) != len(bs) or any(len(l) != len(L) for l in Ls):
        raise InputError("carrier vectors have mismatched shapes")
    hyp = R.unit_witness([a] + list(bs) + list(L), budget)
    if hyp is None:
        raise Refusal("mainlemma: 1 = D(a, bs) v D(L) fails")
    ys = _mainlemma_rec(R, a, list(bs), list(L), list(Ls), budget)
    xs = [a * y for y in ys]
    new_scals = [b + a * x for b, x in zip(bs, xs)]
    newL = list(L)
    for x, row in zip(xs, Ls):
        newL = [e + x * l for e, l in zip(newL, row)]
    conc = R.unit_witness(new_scals + newL, budget)
    if conc is None:
        raise KrullError("mainlemma: conclusion failed to certify")
    cert = ReductionCert(
        SWAN_MAINLEMMA, R.ring, list(R.modulus.gens),
        inputs={"a": a, "bs": list(bs), "carrier": list(L),
                "carriers": PolyMatrix(R.ring, Ls)},
        outputs={"xs": xs, "ys": ys},
        witnesses={"hypothesis": witness_payload(hyp),
                   "conclusion": witness_payload(conc)})
    if not cert.verify(budget):
        raise KrullError("mainlemma certificate failed verification")
    return cert


def _mainlemma_rec(R: RadQuotientRing, a: Poly, bs: list[Poly],
                   L: list[Poly], Ls: list[list[Poly]],
                   budget: Budget) -> list[Poly]:
    k = len(bs)
    if k == 0:
        if not R.is_trivial(budget):
            raise Refusal("mainlemma: Heitmann dimension hypothesis fails "
                          "(recursion reached a nontrivial ring)")
        return []
    ring = R.ring
    b_k = bs[-1]
    step = krull_boundary_step(R, b_k, budget)
    ys_rest = _mainlemma_rec(step.result, a, bs[:-1], L, Ls[:-1], budget)
    X = [b + a * a * y for b, y in zip(bs[:-1], ys_rest)]
    L_prime = list(L)
    for y, row in zip(ys_rest, Ls[:-1]):
        L_prime = [e + a * y * l for e, l in zip(L_prime, row)]
    w = ideal_member(ring.one(), step.result.modulus.plus(X + L_prime), budget)
    if w is None:
        raise KrullError("mainlemma: recursive conclusion is missing")
    nb = len(step.base_gens)
    sat_cofs = w.cofactors[nb + 1:nb + 1 + len(step.sat.ideal.gens)]
    y_k = ring.zero()
    for c_r, s_r in zip(sat_cofs, step.sat.ideal.gens):
        y_k = y_k + c_r * s_r
    return ys_rest + [y_k]


def minor_step(R: RadQuotientRing, C: list[Poly], cols: list[list[Poly]],
               rows: list[int], budget: Budget | None = None) -> ReductionCert:
    """From 1 = D(nu) v D(C) for the minor nu of ``cols`` on ``rows``,
    make C + sum x_i cols_i unimodular."""
    budget = budget or Budget()
    k = len(cols)
    if len(rows) != k:
        raise InputError("minor needs as many rows as columns")
    M = PolyMatrix(R.ring, [list(col) for col in zip(*cols)]) if cols else \
        PolyMatrix(R.ring, [])
    nu = minor(M, tuple(rows), tuple(range(k))) if k else R.ring.one()
    hyp = R.unit_witness([nu] + list(C), budget)
    if hyp is None:
        raise Refusal("minor step: 1 = D(nu) v D(C) fails")
    # b_i: the minor with column i replaced by (the rows of) C
    bs = []
    for i in range(k):
        repl = [list(c) for c in cols]
        repl[i] = list(C)
        Mi = PolyMatrix(R.ring, [list(col) for col in zip(*repl)])
        bs.append(minor(Mi, tuple(rows), tuple(range(k))))
    lemma = swan_mainlemma(R, nu, bs, list(C), [list(c) for c in cols], budget)
    xs = lemma.outputs["xs"]
    newC = list(C)
    for x, col in zip(xs, cols):
        newC = [e + x * ce for e, ce in zip(newC, col)]
    conc = R.unit_witness(newC, budget)
    if conc is None:
        raise KrullError("minor step: combined column is not unimodular")
    cert = ReductionCert(
        MINOR_STEP, R.ring, list(R.modulus.gens),
        inputs={"column": list(C), "cols": M, "rows": list(rows), "k": k},
        outputs={"xs": xs},
        witnesses={"hypothesis": witness_payload(hyp),
                   "conclusion": witness_payload(conc)})
    if not cert.verify(budget):
        raise KrullError("minor step certificate failed verification")
    return cert


def _unimodular_combination(R: RadQuotientRing, C: list[Poly],
                            cols: list[list[Poly]], k: int,
                            budget: Budget) -> tuple[list[Poly], list[Poly]]:
    """Realize 1 = D(C + sum t_i cols_i) from 1 = D(C) v Delta_k(cols).

    Processes the k-minors one at a time, each modulo the ideal of the
    still-unprocessed ones (the Heitmann-boundary recursion runs inside
    the minor step).  Returns (ts, new column).
    """
    ring = R.ring
    p = len(cols)
    ts = [ring.zero()] * p
    cur = list(C)
    if p == 0 or k > len(C) or k > p:
        conc = R.unit_witness(cur, budget)
        if conc is None:
            raise Refusal("no columns to combine and C is not unimodular")
        return ts, cur
    if R.unit_witness(cur, budget) is not None:
        return ts, cur
    G = PolyMatrix(R.ring, [list(col) for col in zip(*cols)])
    all_minors = [(ri, ci, m) for ri, ci, m in _minors_of(G, k)]
    # a minor invertible in the ambient ring finishes in one Cramer move
    for ri, ci, nu in all_minors:
        unit = R.unit_witness([nu], budget)
        if unit is None:
            continue
        xs = _unit_minor_update(R, cur, [cols[j] for j in ci], list(ri), nu,
                                unit.cofactors[len(R.modulus.gens)])
        for x, j in zip(xs, ci):
            ts[j] = ts[j] + x
            cur = [e + x * ce for e, ce in zip(cur, cols[j])]
        if R.unit_witness(cur, budget) is None:
            raise KrullError("unit-minor Cramer update failed to land")
        return ts, cur
    for idx, (ri, ci, nu) in enumerate(all_minors):
        later = [m for _, _, m in all_minors[idx + 1:]]
        ring_now = R.plus(later)
        if ring_now.unit_witness(cur, budget) is not None:
            continue  # already unimodular at this stage
        sub_cols = [cols[j] for j in ci]
        unit = ring_now.unit_witness([nu], budget)
        if unit is not None:
            # invertible minor: Cramer lands the subvector on e_1 directly
            xs = _unit_minor_update(ring_now, cur, sub_cols, list(ri), nu,
                                    unit.cofactors[len(ring_now.modulus.gens)])
        else:
            step = minor_step(ring_now, cur, sub_cols, list(ri), budget)
            xs = step.outputs["xs"]
        for x, j in zip(xs, ci):
            ts[j] = ts[j] + x
            cur = [e + x * ce for e, ce in zip(cur, cols[j])]
    if R.unit_witness(cur, budget) is None:
        raise KrullError("unimodular combination failed to land")
    return ts, cur


def _unit_minor_update(R: RadQuotientRing, cur: list[Poly],
                       sub_cols: list[list[Poly]], rows: list[int],
                       nu: Poly, nu_inv: Poly) -> list[Poly]:
    """With u nu = 1 mod the modulus, solve M t = e_1 - cur|rows by Cramer."""
    ring = R.ring
    k = len(sub_cols)
    M_rows = [[sub_cols[j][i] for j in range(k)] for i in rows]
    adj = adjugate(ring, M_rows)
    target = [ (ring.one() if t == 0 else ring.zero()) - cur[i]
               for t, i in enumerate(rows)]
    xs = []
    for r in range(k):
        acc = ring.zero()
        for t in range(k):
            acc = acc + adj[r][t] * target[t]
        xs.append(nu_inv * acc)
    return xs


def _minors_of(M: PolyMatrix, k: int):
    for ri in itertools.combinations(range(M.nrows), k):
        for ci in itertools.combinations(range(M.ncols), k):
            yield ri, ci, minor(M, ri, ci)


def matrix_combine(R: RadQuotientRing, F: PolyMatrix, k: int,
                   mode: str = "hdim",
                   budget: Budget | None = None) -> ReductionCert:
    """Combine columns of F into C_0 so the result absorbs D(C_0, Delta_k).

    mode "hdim": the global route; needs Delta_k(F) = <1> and the
    Heitmann-dimension bound; conclusion is a unimodular column.
    mode "krull-localized": per-minor Cramer corrections inside inverted
    rings; conclusion D(C_0, Delta_k(F)) <= D(combined column).
    """
    budget = budget or Budget()
    if not (0 < k <= F.ncols - 1):
        raise InputError("need 0 < k <= number of correction columns")
    C0 = F.col(0)
    cols = [F.col(j) for j in range(1, F.ncols)]
    if mode == "hdim":
        delta = R.unit_witness(minor_ideal_gens(F, k), budget)
        if delta is None:
            raise Refusal("matrix combine: Delta_k(F) is not the unit ideal")
        ts, cur = _unimodular_combination(R, C0, cols, k, budget)
        conc = R.unit_witness(cur, budget)
        cert = ReductionCert(
            MATRIX_COMBINE, R.ring, list(R.modulus.gens),
            inputs={"matrix": F, "k": k, "mode": mode},
            outputs={"ts": ts},
            witnesses={"delta_unit": witness_payload(delta),
                       "conclusion": witness_payload(conc)})
    elif mode == "krull-localized":
        ts, cur = _localized_combination(R, C0, cols, k, budget)
        from .groebner import radical_member
        I_cur = R.modulus.plus(cur)
        mrs, crs = [], []
        for m in minor_ideal_gens(F, k):
            w = radical_member(m, I_cur, budget)
            if w is None:
                raise KrullError("localized combine: minor escaped the column")
            mrs.append(w)
        for e in C0:
            w = radical_member(e, I_cur, budget)
            if w is None:
                raise KrullError("localized combine: C_0 entry escaped")
            crs.append(w)
        cert = ReductionCert(
            MATRIX_COMBINE, R.ring, list(R.modulus.gens),
            inputs={"matrix": F, "k": k, "mode": mode},
            outputs={"ts": ts},
            witnesses={"minor_radicals": [witness_payload(w) for w in mrs],
                       "c0_radicals": [witness_payload(w) for w in crs]})
    else:
        raise InputError(f"unknown matrix-combine mode {mode!r}")
    if not cert.verify(budget):
        raise KrullError("matrix combine certificate failed verification")
    return cert


def _localized_combination(R: RadQuotientRing, C0: list[Poly],
                           cols: list[list[Poly]], k: int,
                           budget: Budget) -> tuple[list[Poly], list[Poly]]:
    """Per-minor Cramer corrections: after each minor nu, nu lies in the
    radical of the combined column; corrections are multiples of nu."""
    ring = R.ring
    p = len(cols)
    ts = [ring.zero()] * p
    cur = list(C0)
    if p == 0 or k > len(C0) or k > p:
        return ts, cur
    G = PolyMatrix(ring, [list(col) for col in zip(*cols)])
    for ri, ci, nu in _minors_of(G, k):
        if nu.is_zero():
            continue
        M_rows = [[cols[j][i] for j in ci] for i in ri]
        W = [cur[i] for i in ri]
        adj = adjugate(ring, M_rows)
        L = [sum((adj_row[t] * W[t] for t in range(k)), ring.zero())
             for adj_row in adj]
        # find X with nu in D(L + nu^2 X); corrections nu*X are in nu*A
        X = heitmann_correction(R, nu, nu * nu, L, budget)
        for x, j in zip(X, ci):
            t_inc = nu * x
            ts[j] = ts[j] + t_inc
            cur = [e + t_inc * ce for e, ce in zip(cur, cols[j])]
    return ts, cur


def serre_split(R: RadQuotientRing, F: PolyMatrix, k: int,
                budget: Budget | None = None) -> ReductionCert:
    """Split a rank-one free summand off the image of an idempotent F.

    Produces a unimodular column C in the image together with a linear
    form evaluating to 1 on it.
    """
    budget = budget or Budget()
    if F.nrows != F.ncols:
        raise InputError("projection matrix must be square")
    sq = F.mul(F).sub(F)
    for row in sq.rows:
        for e in row:
            if not e.is_zero() and (not R.modulus.gens
                                    or not R.modulus.normal_form(e, budget).is_zero()):
                raise Refusal("matrix is not idempotent")
    delta = R.unit_witness(minor_ideal_gens(F, k), budget)
    if delta is None:
        raise Refusal("serre split: Delta_k(F) is not the unit ideal")
    C0 = F.col(0)
    cols = [F.col(j) for j in range(1, F.ncols)]
    ts, cur = _unimodular_combination(R, C0, cols, k, budget)
    u = [R.ring.one()] + ts
    C = F.apply(u)
    if C != cur:
        raise KrullError("serre split: column bookkeeping failed")
    unimod = R.unit_witness(C, budget)
    if unimod is None:
        raise KrullError("serre split: combined column not unimodular")
    lam = list(unimod.cofactors[len(R.modulus.gens):])
    cert = ReductionCert(
        SERRE_SPLIT, R.ring, list(R.modulus.gens),
        inputs={"matrix": F, "k": k},
        outputs={"ts": ts, "column": C, "functional": lam},
        witnesses={"delta_unit": witness_payload(delta),
                   "unimodular": witness_payload(unimod)})
    if not cert.verify(budget):
        raise KrullError("serre split certificate failed verification")
    return cert


def forster_swan_generate(R: RadQuotientRing, F: PolyMatrix, target: int,
                          budget: Budget | None = None) -> ReductionCert:
    """Regenerate the module presented by F (rows = generators) with
    ``target`` elements, Fitting hypotheses permitting.

    Iterates the one-generator drop of the general Swan argument: make
    the top row's relation coefficients unimodular through minor steps
    in Fitting quotients, then eliminate that generator.
    """
    budget = budget or Budget()
    ring = R.ring
    n0 = F.nrows
    if target < 0:
        raise InputError("target must be nonnegative")
    fitting_m = minor_ideal_gens(F, n0 - target)
    fit_w = R.unit_witness(fitting_m, budget)
    if fit_w is None:
        raise Refusal("forster-swan: Fitting ideal f_target is not <1>")
    pres = PolyMatrix(ring, [list(r) for r in F.rows])
    U = PolyMatrix.identity(ring, n0)
    while pres.nrows > target:
        pres, U = _drop_one_generator(R, pres, U, budget)
    span = []
    new_rows = [list(r) for r in U.rows]
    rel_cols = [F.col(j) for j in range(F.ncols)]
    for i in range(n0):
        e_i = [ring.one() if t == i else ring.zero() for t in range(n0)]
        w = module_member(e_i, new_rows + rel_cols, ring, R.modulus, budget)
        if w is None:
            raise KrullError("forster-swan: an old generator escaped the new span")
        span.append({"new_cofs": list(w.col_cofactors[:len(new_rows)]),
                     "rel_cofs": list(w.col_cofactors[len(new_rows):])})
    cert = ReductionCert(
        FORSTER_SWAN, ring, list(R.modulus.gens),
        inputs={"presentation": F, "target": target},
        outputs={"new_gens": U},
        witnesses={"fitting_unit": witness_payload(fit_w), "span": span})
    if not cert.verify(budget):
        raise KrullError("forster-swan certificate failed verification")
    return cert


def _drop_one_generator(R: RadQuotientRing, pres: PolyMatrix, U: PolyMatrix,
                        budget: Budget) -> tuple[PolyMatrix, PolyMatrix]:
    ring = R.ring
    p = pres.nrows - 1  # correction rows available
    q = pres.ncols
    rows = [list(r) for r in pres.rows]
    # stage k: in A / Delta_{k+1}(pres), combine rows below into row 0
    trans_cols = [list(rows[i]) for i in range(1, p + 1)]
    ts, _ = _staged_row_combination(R, rows[0], trans_cols, pres, budget)
    new_row0 = list(rows[0])
    for t, extra in zip(ts, trans_cols):
        new_row0 = [e + t * x for e, x in zip(new_row0, extra)]
    # unimodularity of the new top row modulo f_0 = Delta_{p+1}
    f0 = minor_ideal_gens(pres, p + 1)
    w = ideal_member(ring.one(), R.modulus.plus(new_row0 + f0), budget)
    if w is None:
        raise KrullError("generator drop: top row not unimodular mod f_0")
    nmod = len(R.modulus.gens)
    row_cofs = w.cofactors[nmod:nmod + q]
    f0_cofs = w.cofactors[nmod + q:]
    phi = ring.zero()
    for c, g in zip(f0_cofs, f0):
        phi = phi + c * g
    # relation column with top entry 1 (up to the modulus)
    pres_rows = [new_row0] + [rows[i] for i in range(1, p + 1)]
    rel = [ring.zero()] * (p + 1)
    for j in range(q):
        for i in range(p + 1):
            rel[i] = rel[i] + pres_rows[i][j] * row_cofs[j]
    if not phi.is_zero():
        # phi annihilates the module: phi*e_0 is itself a relation
        cols = [ [pres_rows[i][j] for i in range(p + 1)] for j in range(q)]
        phi_vec = [phi] + [ring.zero()] * p
        mw = module_member(phi_vec, cols, ring, R.modulus, budget)
        if mw is None:
            raise KrullError("generator drop: f_0 multiple is not a relation")
        for c, j in zip(mw.col_cofactors, range(q)):
            for i in range(p + 1):
                rel[i] = rel[i] + pres_rows[i][j] * c
    head = rel[0]
    if not (head - ring.one()).is_zero():
        diff = head - ring.one()
        if not R.modulus.gens or not R.modulus.normal_form(diff, budget).is_zero():
            raise KrullError("generator drop: pivot is not 1")
    # change of generators: h'_j = g_j - t_j g_0, presentation columns
    # gain the pivot relation, then row 0 and that column are removed
    new_cols = []
    for j in range(q):
        col = [pres_rows[i][j] for i in range(p + 1)]
        top = col[0]
        col = [c - top * r for c, r in zip(col, rel)]
        new_cols.append(col[1:])
    new_pres = PolyMatrix(ring, [[new_cols[j][i] for j in range(q)]
                                 for i in range(p)])
    # U update: row 0 of E^{-1} U is dropped; others pick up -t_j * row0
    new_U_rows = []
    for i in range(1, p + 1):
        row = [U.rows[i][c] - ts[i - 1] * U.rows[0][c] for c in range(U.ncols)]
        new_U_rows.append(row)
    return new_pres, PolyMatrix(ring, new_U_rows)


def _staged_row_combination(R: RadQuotientRing, C: list[Poly],
                            cols: list[list[Poly]], pres: PolyMatrix,
                            budget: Budget) -> tuple[list[Poly], list[Poly]]:
    """Staged combination: for k = 1..p work modulo Delta_{k+1}(pres)."""
    ring = R.ring
    p = len(cols)
    ts = [ring.zero()] * p
    cur = list(C)
    for k in range(1, p + 1):
        ring_k = R.plus(minor_ideal_gens(pres, k + 1))
        if ring_k.unit_witness(cur, budget) is not None:
            continue
        inc, cur = _unimodular_combination(ring_k, cur, cols, k, budget)
        ts = [t + i for t, i in zip(ts, inc)]
    return ts, cur


def bass_cancel(R: RadQuotientRing, F: PolyMatrix, C: list[Poly], a: Poly,
                k: int, budget: Budget | None = None) -> ReductionCert:
    """Three explicit automorphisms of N + A sending (C, a) to (0, 1).

    N is the image of the idempotent F; needs 1 = D(C) v D(a) and the
    Heitmann dimension bound behind Delta_k(F) = <1>.
    """
    budget = budget or Budget()
    ring = R.ring
    m = F.nrows
    if F.ncols != m or len(C) != m:
        raise InputError("projector and column sizes disagree")
    sq = F.mul(F).sub(F)
    for row in sq.rows:
        for e in row:
            if not e.is_zero() and (not R.modulus.gens
                                    or not R.modulus.normal_form(e, budget).is_zero()):
                raise Refusal("matrix is not idempotent")
    hyp = R.unit_witness(list(C) + [a], budget)
    if hyp is None:
        raise Refusal("bass cancel: 1 = D(C) v D(a) fails")
    delta = R.unit_witness(minor_ideal_gens(F, k), budget)
    if delta is None:
        raise Refusal("bass cancel: Delta_k(F) is not the unit ideal")
    # C' = sum t_i col_i(F) with 1 = D(C + a C'); scale columns by a
    scaled = [[a * e for e in F.col(j)] for j in range(m)]
    ts, _ = _unimodular_combination(R, list(C), scaled, k, budget)
    Cp = [ring.zero()] * m
    for t, j in zip(ts, range(m)):
        Cp = [e + t * x for e, x in zip(Cp, F.col(j))]
    targetv = [ci + a * cpi for ci, cpi in zip(C, Cp)]
    unimod = R.unit_witness(targetv, budget)
    if unimod is None:
        raise KrullError("bass cancel: C + aC' is not unimodular")
    lam = list(unimod.cofactors[len(R.modulus.gens):])
    zero, one = ring.zero(), ring.one()
    lam_of_C = sum((l * c for l, c in zip(lam, C)), zero)
    # psi1: (V, x) -> (V + x C', lambda(x C - a V))
    psi1 = PolyMatrix(ring, [
        [one if i == j else zero for j in range(m)] + [Cp[i]] for i in range(m)
    ] + [[-a * lam[j] for j in range(m)] + [lam_of_C]])
    inv1 = PolyMatrix(ring, [
        [(one if i == j else zero) - a * Cp[i] * lam[j] for j in range(m)]
        + [-Cp[i]] for i in range(m)
    ] + [[a * lam[j] for j in range(m)] + [one]])
    # psi2: (V, x) -> (V, x + lambda(V))
    psi2 = PolyMatrix(ring, [
        [one if i == j else zero for j in range(m)] + [zero] for i in range(m)
    ] + [[lam[j] for j in range(m)] + [one]])
    inv2 = PolyMatrix(ring, [
        [one if i == j else zero for j in range(m)] + [zero] for i in range(m)
    ] + [[-lam[j] for j in range(m)] + [one]])
    # psi3: (V, x) -> (V - x (C + a C'), x)
    psi3 = PolyMatrix(ring, [
        [one if i == j else zero for j in range(m)] + [-targetv[i]]
        for i in range(m)
    ] + [[zero] * m + [one]])
    inv3 = PolyMatrix(ring, [
        [one if i == j else zero for j in range(m)] + [targetv[i]]
        for i in range(m)
    ] + [[zero] * m + [one]])
    cert = ReductionCert(
        BASS_CANCEL, ring, list(R.modulus.gens),
        inputs={"projector": F, "column": list(C), "scalar": a, "k": k},
        outputs={"ts": ts, "functional": lam,
                 "autos": [psi1, psi2, psi3],
                 "inverses": [inv1, inv2, inv3]},
        witnesses={"hypothesis": witness_payload(hyp),
                   "unimodular": witness_payload(unimod)})
    if not cert.verify(budget):
        raise KrullError("bass cancel certificate failed verification")
    return cert
