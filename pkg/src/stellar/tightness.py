"""Sigma/mu-vectors, Morse-inequality reports and tightness verdicts.

The sigma-vector averages reduced Betti numbers of induced subcomplexes
over all vertex subsets (cost 2^m homology runs, guarded by a cap); the
mu-vector averages link sigmas.  Everything is exact rational arithmetic.
Subset loops run in fixed ascending-mask blocks so multi-process runs
reduce deterministically.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .core import Complex, ComplexError, bits, is_closed_pseudomanifold, \
    is_connected, link, neighbourliness, popcount
from .homology import BettiTable, FieldSpec, betti, inclusion_injective, \
    orientable, reduced_betti_of_faces
from .vectors import f_vector, g_vector

SIGMA_CAP = 16
DIRECT_CAP = 12


class BudgetError(ComplexError):
    """A subset-enumeration cap was exceeded (override with cap=None)."""


def _faces_by_dim(X: Complex) -> list[list[int]]:
    return [sorted(X.faces_of_dim(t)) for t in range(X.dim + 1)]


def _sigma_chunk(args) -> list[list[int]]:
    """Integer sums S[i][j] = sum of reduced beta_i over induced
    subcomplexes on the j-subsets with masks in [lo, hi)."""
    faces_by_dim, m, dim, field, lo, hi = args
    sums = [[0] * (m + 1) for _ in range(dim + 1)]
    for amask in range(lo, hi):
        j = popcount(amask)
        nota = ~amask
        filtered = [[f for f in lst if not f & nota] for lst in faces_by_dim]
        rb = reduced_betti_of_faces(filtered, field, dim)
        for i, v in enumerate(rb):
            if v:
                sums[i][j] += v
    return sums


def sigma_vector(X: Complex, field: FieldSpec, cap: int | None = SIGMA_CAP,
                 jobs: int = 1) -> tuple[Fraction, ...]:
    """sigma_i = sum_j C(m,j)^-1 sum_{|A|=j} reduced beta_i(X[A]), the
    average running over all vertex subsets including the empty one."""
    if X.dim < 0:
        return ()
    m, dim = X.m, X.dim
    if cap is not None and m > cap:
        raise BudgetError(
            f"sigma on {m} vertices needs 2^{m} homology runs; cap is {cap}")
    faces_by_dim = _faces_by_dim(X)
    total = 1 << m
    if jobs > 1 and total >= 1 << 12:
        from multiprocessing import Pool
        nchunks = jobs * 4
        step = (total + nchunks - 1) // nchunks
        tasks = [(faces_by_dim, m, dim, field, lo, min(lo + step, total))
                 for lo in range(0, total, step)]
        with Pool(jobs) as pool:
            partials = pool.map(_sigma_chunk, tasks)
    else:
        partials = [_sigma_chunk((faces_by_dim, m, dim, field, 0, total))]
    sums = [[0] * (m + 1) for _ in range(dim + 1)]
    for part in partials:
        for i in range(dim + 1):
            row = part[i]
            srow = sums[i]
            for j in range(m + 1):
                srow[j] += row[j]
    return tuple(
        sum((Fraction(sums[i][j], comb(m, j)) for j in range(m + 1)),
            Fraction(0))
        for i in range(dim + 1))


def mu_vector(X: Complex, field: FieldSpec, cap: int | None = SIGMA_CAP,
              jobs: int = 1) -> tuple[Fraction, ...]:
    """mu_0 = 1; mu_i = [i==1] + (1/m) sum_x sigma_{i-1}(link of x)."""
    d = X.dim
    mu = [Fraction(1)] + [Fraction(0)] * d
    if d >= 1:
        mu[1] = Fraction(1)
    for v in range(X.m):
        lk = link(X, (v,))
        sig = sigma_vector(lk, field, cap, jobs)
        for i in range(1, d + 1):
            if i - 1 < len(sig):
                mu[i] += Fraction(sig[i - 1], X.m)
    return tuple(mu)


def mu_via_pairs(X: Complex, field: FieldSpec,
                 cap: int | None = SIGMA_CAP) -> tuple[Fraction, ...]:
    """The covering-pair form of the mu-vector, valid for 2-neighbourly
    complexes: an average of relative Betti numbers beta_i(X[B], X[B-x])
    over all pairs B, x in B.  Independent of mu_vector's code path."""
    if neighbourliness(X) < 2:
        raise ComplexError("mu_via_pairs needs a 2-neighbourly complex")
    m, d = X.m, X.dim
    if cap is not None and m > cap:
        raise BudgetError(f"pair enumeration on {m} vertices exceeds cap {cap}")
    faces_by_dim = _faces_by_dim(X)
    from .exactlinalg import rank_gf2, rank_int, rank_modp
    is_q = field.kind == "rationals"
    p = field.p
    sums = [[0] * (m + 1) for _ in range(d + 1)]  # over |B| = j
    for bmask in range(1, 1 << m):
        j = popcount(bmask)
        notb = ~bmask
        rel = []
        for lst in faces_by_dim:
            rel.append([f for f in lst if not f & notb])
        for x in bits(bmask):
            xbit = 1 << x
            ns = []
            ranks = [0] * (d + 3)
            per_dim = []
            for i in range(d + 1):
                per_dim.append([f for f in rel[i] if f & xbit])
                ns.append(len(per_dim[i]))
            for i in range(1, d + 1):
                if not per_dim[i]:
                    continue
                if is_q or p != 2:
                    cols = []
                    for f in per_dim[i]:
                        col = {}
                        sign = 1
                        for b in bits(f):
                            if b != x:
                                col[f ^ (1 << b)] = sign
                            sign = -sign
                        cols.append(col)
                    ranks[i] = rank_int(cols) if is_q else rank_modp(cols, p)
                else:
                    cols = [{f ^ (1 << b) for b in bits(f) if b != x}
                            for f in per_dim[i]]
                    ranks[i] = rank_gf2(cols)
            for i in range(d + 1):
                v = ns[i] - ranks[i] - ranks[i + 1]
                if v:
                    sums[i][j] += v
    return tuple(
        sum((Fraction(sums[i][j], m * comb(m - 1, j - 1))
             for j in range(1, m + 1)), Fraction(0))
        for i in range(d + 1))


@dataclass
class MuReport:
    """Sigma/mu-vectors with the Morse-inequality bookkeeping."""

    field: FieldSpec
    sigma: tuple[Fraction, ...]
    mu: tuple[Fraction, ...]
    beta: BettiTable
    morse_slack: tuple[Fraction, ...]  # sum_{i<=j} (-1)^(j-i) (mu_i - beta_i)
    weak_ok: bool                      # mu_j >= beta_j componentwise
    duality_ok: bool | None            # mu_{d-j} == mu_j (orientable closed)
    verdict: str                       # tight | not-tight | not-applicable
    witness: tuple | None = None

    def to_json_dict(self) -> dict:
        return {
            "field": str(self.field),
            "sigma": [str(s) for s in self.sigma],
            "mu": [str(v) for v in self.mu],
            "beta": list(self.beta.beta),
            "slack": [str(s) for s in self.morse_slack],
            "verdict": self.verdict,
            "witnesses": list(self.witness) if self.witness else [],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def morse_report(X: Complex, field: FieldSpec, cap: int | None = SIGMA_CAP,
                 jobs: int = 1) -> MuReport:
    """Strong/weak Morse-inequality report.  The inequalities are only
    guaranteed for 2-neighbourly complexes; other inputs get the verdict
    "not-applicable" with the numbers still computed."""
    d = X.dim
    bt = betti(X, field)
    sig = sigma_vector(X, field, cap, jobs)
    mu = mu_vector(X, field, cap, jobs)
    slack = []
    for j in range(d + 1):
        s = Fraction(0)
        for i in range(j + 1):
            s += (-1) ** (j - i) * (mu[i] - bt.beta[i])
        slack.append(s)
    weak_ok = all(mu[j] >= bt.beta[j] for j in range(d + 1))
    duality = None
    if is_closed_pseudomanifold(X) and orientable(X, field):
        duality = all(mu[d - j] == mu[j] for j in range(d + 1))
    if neighbourliness(X) >= 2:
        verdict = "tight" if list(mu) == list(map(Fraction, bt.beta)) else "not-tight"
    else:
        verdict = "not-applicable"
    return MuReport(field, sig, mu, bt, tuple(slack), weak_ok, duality, verdict)


@dataclass
class TightnessResult:
    tight: bool
    mode: str
    witness: tuple | None = None   # (vertex names, j) refuting injectivity
    mu: tuple | None = None
    beta: tuple | None = None


def is_tight(X: Complex, field: FieldSpec, mode: str = "p18",
             cap: int | None = None, jobs: int = 1) -> TightnessResult:
    """Tightness verdict.

    mode "direct" checks injectivity of every induced inclusion in every
    degree (cost 2^m, cap 12 by default) and returns a violating
    (subset, degree) witness; mode "p18" uses the mu = beta criterion for
    2-neighbourly complexes.
    """
    if mode == "direct":
        if cap is None:
            cap = DIRECT_CAP
        if X.m > cap:
            raise BudgetError(f"direct tightness on {X.m} vertices exceeds cap {cap}")
        if not is_connected(X):
            return TightnessResult(False, mode, ((), 0))
        for amask in range(1 << X.m):
            for j in range(X.dim + 1):
                if not inclusion_injective(X, ids_of_mask(amask), j, field):
                    return TightnessResult(False, mode,
                                           (tuple(X.name_of(v) for v in bits(amask)), j))
        return TightnessResult(True, mode)
    if mode == "p18":
        if cap is None:
            cap = SIGMA_CAP
        if not is_connected(X):
            return TightnessResult(False, mode)
        if neighbourliness(X) < 2:
            return TightnessResult(False, mode)
        mu = mu_vector(X, field, cap, jobs)
        bt = betti(X, field)
        ok = list(mu) == list(map(Fraction, bt.beta))
        return TightnessResult(ok, mode, None, mu, bt.beta)
    raise ComplexError(f"unknown tightness mode {mode!r}")


def ids_of_mask(mask: int) -> tuple[int, ...]:
    return tuple(bits(mask))


# -- criterion battery --------------------------------------------------------


@dataclass
class CheckLine:
    prop: str
    status: str   # "holds" | "equality" | "fails" | "not-applicable"
    detail: str = ""

    def __str__(self) -> str:
        text = f"{self.prop}: {self.status}"
        return f"{text} ({self.detail})" if self.detail else text


def sigma_g_report(S: Complex, k: int, field: FieldSpec, certified: bool,
                   cap: int | None = SIGMA_CAP, jobs: int = 1) -> list[CheckLine]:
    """Sigma-vector/g-vector comparison for a k-stellated sphere of
    dimension >= 2k-1: vanishing middle sigmas, alternating-sum upper
    bounds below index k-1 and equalities from k-1 up.  Without a
    stellatedness certificate the verdict is not-applicable (the paper
    gives no guidance for uncertified inputs)."""
    lines: list[CheckLine] = []
    d = S.dim
    if not certified or d < 2 * k - 1:
        return [CheckLine("P19", "not-applicable",
                          "needs a certified k-stellated sphere, d >= 2k-1")]
    sig = sigma_vector(S, field, cap, jobs)
    g = g_vector(S)
    m = S.m
    ok = all(sig[i] == 0 for i in range(k, d - k))
    lines.append(CheckLine("P19a", "holds" if ok else "fails",
                           f"sigma_i = 0 for {k}..{d - k - 1}"))
    ineq_ok, eq_ok = True, True
    for l in range(0, d - k):
        lhs = sum((-1) ** (l - i) * sig[i] for i in range(l + 1))
        rhs = Fraction(m + 1, d + 3) * sum(
            (-1) ** (l + 1 - i) * Fraction(g[i], comb(d + 2, i))
            for i in range(l + 2))
        if l <= k - 2 and lhs > rhs:
            ineq_ok = False
        if l >= k - 1 and lhs != rhs:
            eq_ok = False
    lines.append(CheckLine("P19b", "holds" if ineq_ok else "fails",
                           "alternating sigma sums bounded"))
    lines.append(CheckLine("P19c", "holds" if eq_ok else "fails",
                           f"equalities for l = {k - 1}..{d - k - 1}"))
    return lines


def p23_bounds(M: Complex, beta1: int) -> list[tuple[int, int, int]]:
    """Lower bounds on the face vector of a closed d-manifold in terms of
    f_0 and the first Z_2 Betti number: rows (j, f_j, bound)."""
    d = M.dim
    f = f_vector(M)
    rows = []
    for j in range(1, d):
        bound = comb(d + 1, j) * f[0] + j * comb(d + 2, j + 1) * (beta1 - 1)
        rows.append((j, f[j], bound))
    rows.append((d, f[d], d * f[0] + (d - 1) * (d + 2) * (beta1 - 1)))
    return rows


def criterion_battery(M: Complex, k: int, field: FieldSpec,
                      wk_certified: bool = False,
                      cap: int | None = SIGMA_CAP, jobs: int = 1) -> list[CheckLine]:
    """Evaluate the tightness/lower-bound criterion family on M.

    ``wk_certified`` is the caller's assertion (e.g. from a move-engine
    membership run) that every vertex link is k-stellated; the battery
    never decides that itself.  Each line reports whether the hypothesis
    applies and whether the conclusion holds, with exact arithmetic.
    """
    lines: list[CheckLine] = []
    d = M.dim
    n = M.m
    f = f_vector(M)
    g = g_vector(M)
    nb = neighbourliness(M)
    closed = is_closed_pseudomanifold(M)
    beta_f = betti(M, field).beta
    orient = orientable(M, field) if closed else None
    mu = None

    def get_mu():
        nonlocal mu
        if mu is None:
            mu = mu_vector(M, field, cap, jobs)
        return mu

    # -- mu/g relations for 2-neighbourly W_k members
    if wk_certified and nb >= 2 and d >= 2 * k >= 2:
        mv = get_mu()
        bad = [i for i in range(k + 1, d - k) if mv[i] != 0]
        lines.append(CheckLine("P20a", "holds" if not bad else "fails",
                               f"mu_i = 0 for {k + 1}..{d - k - 1}"))
        ineq_ok, eq_ok = True, True
        for l in range(1, d - k):
            s = sum((-1) ** (l - i) * mv[i] for i in range(1, l + 1))
            target = Fraction(g[l + 1], comb(d + 2, l + 1))
            if l <= k - 1 and s > target:
                ineq_ok = False
            if k <= l and s != target:
                eq_ok = False
        lines.append(CheckLine("P20b", "holds" if ineq_ok else "fails",
                               "alternating mu sums bounded by g ratios"))
        lines.append(CheckLine("P20c", "holds" if eq_ok else "fails",
                               f"equality for l = {k}..{d - k - 1}"))
    else:
        lines.append(CheckLine("P20", "not-applicable",
                               "needs certified 2-neighbourly W_k, d >= 2k >= 2"))

    if wk_certified and nb >= 2:
        ok = True
        upper = (k - 1 if d == 2 * k else k) if d >= 2 * k else -1
        for l in range(1, upper + 1):
            s = sum((-1) ** (l - i) * beta_f[i] for i in range(1, l + 1))
            if g[l + 1] < comb(d + 2, l + 1) * s:
                ok = False
        lines.append(CheckLine("P21ab", "holds" if ok else "fails",
                               "g lower bounds from Betti numbers"))
        if d >= 2 * k + 2:
            eq = all(
                g[l + 1] == comb(d + 2, l + 1)
                * sum((-1) ** (l - i) * beta_f[i] for i in range(1, l + 1))
                for l in range(k, d - k))
            vanish = all(beta_f[i] == 0 for i in range(k + 1, d - k))
            lines.append(CheckLine("P21c", "equality" if eq else "fails"))
            lines.append(CheckLine("P21d", "holds" if vanish else "fails",
                                   f"beta_i = 0 for {k + 1}..{d - k - 1}"))
    else:
        lines.append(CheckLine("P21", "not-applicable",
                               "needs certified 2-neighbourly W_k"))

    # -- W_1 tightness characterization
    if wk_certified and k == 1:
        t = is_tight(M, field, "p18", cap, jobs).tight
        rhs = nb >= 2 and bool(orient)
        if d != 3:
            ok = t == rhs
            lines.append(CheckLine("P22a", "holds" if ok else "fails",
                                   f"tight={t}, 2-neighbourly and orientable={rhs}"))
        else:
            rhs = rhs and betti(M, field).beta[1] == Fraction((n - 4) * (n - 5), 20)
            lines.append(CheckLine("P22b", "holds" if t == rhs else "fails",
                                   f"tight={t}, criterion={rhs}"))
    # -- general lower bound theorem
    if closed and d >= 3:
        beta1 = betti(M, FieldSpec.prime(2)).beta[1]
        rows = p23_bounds(M, beta1)
        ok = all(fj >= b for _, fj, b in rows)
        eqall = all(fj == b for _, fj, b in rows)
        lines.append(CheckLine(
            "P23a", "equality" if eqall else ("holds" if ok else "fails"),
            f"beta_1(Z2)={beta1}"))
        lhs = comb(f[0] - d - 1, 2)
        rhs = comb(d + 2, 2) * beta1
        lines.append(CheckLine(
            "P23b", "equality" if lhs == rhs else ("holds" if lhs >= rhs else "fails"),
            f"{lhs} >= {rhs}"))
    else:
        lines.append(CheckLine("P23", "not-applicable", "needs a closed manifold, d >= 3"))

    # -- W*_k tightness criterion
    if wk_certified and k >= 2 and nb >= k + 1:
        if d != 2 * k + 1:
            t = is_tight(M, field, "p18", cap, jobs).tight
            lines.append(CheckLine("P25a", "holds" if t else "fails",
                                   f"tight over {field}"))
        else:
            t = is_tight(M, field, "p18", cap, jobs).tight
            needed = Fraction(comb(n - k - 3, k + 1), comb(2 * k + 3, k + 1))
            crit = Fraction(beta_f[k]) == needed
            lines.append(CheckLine("P25b", "holds" if t == crit else "fails",
                                   f"tight={t}, beta_k criterion={crit}"))
    # -- the questioned criterion
    if (k >= 2 and wk_certified and nb >= k and (d == 2 * k or d >= 2 * k + 2)
            and closed and orient):
        hyp = Fraction(beta_f[k - 1]) == Fraction(comb(n + k - d - 3, k), comb(d + 2, k))
        if hyp:
            t = is_tight(M, field, "p18", cap, jobs).tight
            lines.append(CheckLine(
                "P26", "holds" if t else "fails",
                "criterion, paper marks as question"))
        else:
            lines.append(CheckLine("P26", "not-applicable",
                                   "beta_{k-1} hypothesis not met; "
                                   "criterion, paper marks as question"))

    # -- neighbourliness consequences
    if nb >= 2:
        mv = get_mu()
        l = nb - 1
        ok = all(beta_f[i] == 0 and mv[i] == 0 for i in range(1, l))
        lines.append(CheckLine("L9", "holds" if ok else "fails",
                               f"{nb}-neighbourly: beta_i = 0 = mu_i for i < {l}"))
    if closed and d % 2 == 0 and d >= 2 and nb >= d // 2 + 1 and orient:
        t = is_tight(M, field, "p18", cap, jobs).tight
        lines.append(CheckLine("L10", "holds" if t else "fails",
                               f"({d // 2 + 1})-neighbourly orientable {d}-manifold"))
    return lines
