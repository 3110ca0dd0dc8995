"""Bistellar- and shelling-move engine with replayable certificates.

Moves are recorded by vertex *names* so a certificate survives the vertex
relabellings that happen when moves add or delete vertices.  Certificates
carry order-insensitive SHA-256 digests of their start and end facet sets
(see ``core.facet_hash`` for the byte layout) and are replayed before
being returned by any search.
"""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from math import comb

from .core import (Complex, ComplexError, InputError, RangeError,
                   StructureError, bits, boundary, dual_graph, facet_hash,
                   is_connected, is_closed_pseudomanifold, link, mask_of,
                   popcount, submasks)
from .vectors import g_vector, h_vector


class MoveError(ComplexError, ValueError):
    """An inadmissible move was applied or a certificate failed to replay."""


class HypothesisViolation(ComplexError):
    """A canonical construction failed its validation pass: the input did
    not satisfy the hypothesis under which the formula is guaranteed."""


@dataclass(frozen=True)
class BistellarMove:
    """Replace the induced alpha-star by the beta-star: alpha is removed,
    beta inserted; index = dim(beta).  A 0-move's beta is a new vertex."""

    alpha: tuple[str, ...]
    beta: tuple[str, ...]
    index: int

    def reversed(self, d: int) -> "BistellarMove":
        return BistellarMove(self.beta, self.alpha, d - self.index)


@dataclass(frozen=True)
class ShellingMove:
    """Adjoin the facet alpha + beta to a pure complex meeting it in
    closure(alpha) * boundary(beta); index = dim(beta)."""

    alpha: tuple[str, ...]
    beta: tuple[str, ...]
    index: int


@dataclass(frozen=True)
class MoveCertificate:
    kind: str  # "bistellar" | "shelling"
    steps: tuple
    start_hash: str
    end_hash: str

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def k_bound(self) -> int:
        return max((s.index for s in self.steps), default=-1) + 1

    def index_counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for s in self.steps:
            out[s.index] = out.get(s.index, 0) + 1
        return out

    def to_json(self) -> str:
        return json.dumps({
            "kind": self.kind,
            "start_hash": self.start_hash,
            "steps": [{"alpha": list(s.alpha), "beta": list(s.beta),
                       "index": s.index} for s in self.steps],
            "end_hash": self.end_hash,
        })

    @staticmethod
    def from_json(text: str) -> "MoveCertificate":
        data = json.loads(text)
        cls = BistellarMove if data["kind"] == "bistellar" else ShellingMove
        steps = tuple(cls(tuple(s["alpha"]), tuple(s["beta"]), s["index"])
                      for s in data["steps"])
        return MoveCertificate(data["kind"], steps, data["start_hash"],
                               data["end_hash"])


# -- bistellar moves ---------------------------------------------------------


def _facet_star(X: Complex) -> dict[int, list[int]]:
    """Map each face mask to the facet masks containing it."""
    star: dict[int, list[int]] = {}
    for fm in X.facet_masks:
        for sub in submasks(fm):
            star.setdefault(sub, []).append(fm)
    return star


def enumerate_bistellar(X: Complex) -> list[BistellarMove]:
    """All admissible bistellar moves of index >= 1.

    Index-0 moves are available at every facet (with a fresh vertex) and
    are not listed.  A pair (alpha, beta) is admissible iff the link of
    alpha is exactly the boundary of the missing simplex beta.
    """
    if not X.is_pure():
        raise StructureError("bistellar moves need a pure complex")
    d = X.dim
    star = _facet_star(X)
    out = []
    for alpha, owners in star.items():
        na = popcount(alpha)
        i = d + 1 - na  # candidate index
        if i < 1 or i > d:
            continue
        if len(owners) != i + 1:
            continue
        w = 0
        for fm in owners:
            w |= fm
        w &= ~alpha
        if popcount(w) != i + 1 or X.has_face(w):
            continue
        out.append(BistellarMove(X.names_of_mask(alpha), X.names_of_mask(w), i))
    out.sort(key=lambda mv: (mv.index, mv.alpha, mv.beta))
    return out


def _check_bistellar(X: Complex, mv: BistellarMove) -> tuple[int, int]:
    """Admissibility; returns (alpha_mask, beta_mask), beta_mask == 0 for
    0-moves (the new vertex does not exist yet)."""
    d = X.dim
    if len(mv.alpha) + len(mv.beta) != d + 2:
        raise MoveError(f"move {mv} has wrong size for dimension {d}")
    if mv.index != len(mv.beta) - 1:
        raise MoveError(f"move {mv} has inconsistent index")
    am = X.mask_from_names(mv.alpha)
    if mv.index == 0:
        new = mv.beta[0]
        if new in X.names:
            raise MoveError(f"0-move vertex {new!r} already present")
        if am not in X.facet_masks:
            raise MoveError(f"0-move core {mv.alpha} is not a facet")
        return am, 0
    try:
        bm = X.mask_from_names(mv.beta)
    except InputError:
        raise MoveError(f"move {mv}: beta vertices must exist for index >= 1") from None
    if am & bm:
        raise MoveError(f"move {mv}: alpha and beta overlap")
    if X.has_face(bm):
        raise MoveError(f"move {mv}: beta is already a face")
    owners = [fm for fm in X.facet_masks if fm & am == am]
    expect = {am | (bm ^ (1 << b)) for b in bits(bm)}
    if set(owners) != expect:
        raise MoveError(
            f"move {mv} inadmissible: the induced subcomplex on alpha+beta "
            "is not closure(alpha) * boundary(beta)")
    return am, bm


def apply_bistellar(X: Complex, mv: BistellarMove) -> Complex:
    """Apply a checked bistellar move, returning the new complex."""
    am, _ = _check_bistellar(X, mv)
    alpha = set(mv.alpha)
    removed = {fm for fm in X.facet_masks if fm & am == am}
    new_facets = [X.names_of_mask(fm) for fm in X.facet_masks if fm not in removed]
    for a in mv.alpha:
        new_facets.append(tuple(sorted((alpha - {a}) | set(mv.beta))))
    return Complex.from_facets(new_facets)


def apply_reverse(Y: Complex, mv: BistellarMove) -> Complex:
    """Undo ``mv``: apply the reverse (d-i)-move beta -> alpha."""
    return apply_bistellar(Y, mv.reversed(Y.dim))


def bistellar_face_delta(d: int, index: int) -> tuple[int, ...]:
    """f_i(Y) - f_i(X) for an index move on a d-complex, i = 0..d."""
    lo = index

    def c(n, k):
        return comb(n, k) if 0 <= k <= n else 0

    return tuple(c(d + 1 - lo, i - lo) - c(lo + 1, d - i + 1) for i in range(d + 1))


def replay_bistellar(start: Complex, steps) -> Complex:
    cur = start
    for mv in steps:
        cur = apply_bistellar(cur, mv)
    return cur


# -- shelling ---------------------------------------------------------------


class ShellingOrderError(MoveError):
    def __init__(self, position: int, facet, reason: str):
        self.position = position
        self.facet = facet
        super().__init__(f"shelling fails at position {position} "
                         f"(facet {facet}): {reason}")


def verify_shelling(B_target: Complex, order) -> MoveCertificate:
    """Check that ``order`` (a permutation of the facets, given by vertex
    names) is a shelling of ``B_target`` and return its certificate.

    The per-step index is dim(beta) where the new facet meets the old
    complex in closure(alpha) * boundary(beta).  A cross-check against the
    h-vector (exactly h_j steps of index j-1) is always performed.
    """
    masks = [B_target.mask_from_names(f) for f in order]
    if sorted(masks) != sorted(B_target.facet_masks):
        raise InputError("order is not a permutation of the facets")
    d = B_target.dim
    first = masks[0]
    yfaces = set(submasks(first))
    steps = []
    for pos, sigma in enumerate(masks[1:], start=1):
        tmask = 0
        for b in bits(sigma):
            if sigma ^ (1 << b) in yfaces:
                tmask |= 1 << b
        if tmask == 0:
            raise ShellingOrderError(pos, B_target.names_of_mask(sigma),
                                     "facet meets the previous complex in no ridge")
        if tmask in yfaces:
            raise ShellingOrderError(
                pos, B_target.names_of_mask(sigma),
                "the would-be free face is already present")
        steps.append(ShellingMove(B_target.names_of_mask(sigma & ~tmask),
                                  B_target.names_of_mask(tmask),
                                  popcount(tmask) - 1))
        yfaces.update(submasks(sigma))
    h = h_vector(B_target)
    counts = [0] * (d + 2)
    for s in steps:
        counts[s.index + 1] += 1
    if counts[1:] != list(h[1:]):
        raise MoveError(f"h-vector cross-check failed: {counts[1:]} vs {h[1:]}")
    start = Complex.from_facets([B_target.names_of_mask(first)])
    return MoveCertificate("shelling", tuple(steps), facet_hash(start),
                           facet_hash(B_target))


def replay_shelling(start: Complex, steps) -> Complex:
    cur = start
    for mv in steps:
        sigma = tuple(mv.alpha) + tuple(mv.beta)
        cur_facets = cur.facets_as_names()
        new = Complex.from_facets(cur_facets + [sigma])
        # admissibility re-check against the old complex
        am = new.mask_from_names(mv.alpha)
        bm = new.mask_from_names(mv.beta)
        old_faces = set()
        for f in cur_facets:
            old_faces.update(submasks(new.mask_from_names(f)))
        for b in bits(bm):
            if (am | bm) ^ (1 << b) not in old_faces:
                raise MoveError(f"invalid shelling step {mv}")
        if bm in old_faces:
            raise MoveError(f"invalid shelling step {mv}")
        cur = new
    return cur


def ears(B: Complex) -> list[tuple[str, ...]]:
    """Facets whose removal leaves a ball, by the boundary-restriction
    test: the induced subcomplex of the boundary on the facet's vertices
    is pure of codimension one with a nonempty proper subset of the
    simplex-boundary facets.  A single-facet ball reports its facet."""
    if len(B.facet_masks) == 1:
        return [B.facets_as_names()[0]]
    ridge_count: dict[int, int] = {}
    for fm in B.facet_masks:
        for v in bits(fm):
            r = fm ^ (1 << v)
            ridge_count[r] = ridge_count.get(r, 0) + 1
    if any(c > 2 for c in ridge_count.values()):
        raise StructureError("ears need a weak pseudomanifold")
    bd_ridges = [r for r, c in ridge_count.items() if c == 1]
    out = []
    for fm in B.facet_masks:
        emask = 0
        for v in bits(fm):
            if ridge_count.get(fm ^ (1 << v), 0) == 1:
                emask |= 1 << v
        if emask == 0 or emask == fm:
            continue
        # purity of the induced boundary subcomplex <=> the complement
        # core is not itself a boundary face
        if any(r & emask == emask for r in bd_ridges):
            continue
        out.append(tuple(sorted(B.names_of_mask(fm))))
    return out


@dataclass
class SearchOutcome:
    status: str  # "found" | "none" | "exhausted"
    certificate: MoveCertificate | None = None
    nodes: int = 0
    start: Complex | None = None

    @property
    def found(self) -> bool:
        return self.status == "found"


def find_shelling(B: Complex, budget: int = 10 ** 6) -> SearchOutcome:
    """Backtracking search for a shelling order of the ball ``B``.

    The search peels facets in reverse (last shelled first).  A facet is
    peelable only if re-adding it to the remainder is a valid shelling
    move and it is an ear of the current complex; on any completed branch
    every intermediate complex is a shellable ball, where both conditions
    are necessary, so the pruning preserves completeness and "none" means
    the full tree was exhausted.
    """
    if not B.is_pure():
        raise StructureError("find_shelling needs a pure complex")
    nodes = 0
    budget_hit = False
    reversed_order: list[int] = []

    def candidates(current: list[int]) -> list[int]:
        ridge_count: dict[int, int] = {}
        for fm in current:
            for v in bits(fm):
                r = fm ^ (1 << v)
                ridge_count[r] = ridge_count.get(r, 0) + 1
        bd_ridges = [r for r, c in ridge_count.items() if c == 1]
        cands = []
        for fm in current:
            emask = 0
            for v in bits(fm):
                if ridge_count.get(fm ^ (1 << v), 0) == 1:
                    emask |= 1 << v
            if emask == 0 or emask == fm:
                continue
            if any(r & emask == emask for r in bd_ridges):
                continue  # not an ear
            tmask = fm & ~emask
            if any(f != fm and f & tmask == tmask for f in current):
                continue  # free face still covered: unshelling invalid
            cands.append(fm)
        return cands

    def recurse(current: list[int]) -> bool:
        nonlocal nodes, budget_hit
        if len(current) == 1:
            return True
        for fm in candidates(current):
            nodes += 1
            if nodes > budget:
                budget_hit = True
                return False
            reversed_order.append(fm)
            if recurse([f for f in current if f != fm]):
                return True
            reversed_order.pop()
            if budget_hit:
                return False
        return False

    found = recurse(list(B.facet_masks))
    if found:
        remaining = [f for f in B.facet_masks if f not in reversed_order]
        order = [B.names_of_mask(f) for f in remaining + list(reversed(reversed_order))]
        cert = verify_shelling(B, order)
        start = Complex.from_facets([order[0]])
        return SearchOutcome("found", cert, nodes, start)
    if budget_hit:
        return SearchOutcome("exhausted", None, nodes)
    return SearchOutcome("none", None, nodes)


# -- stackedness -------------------------------------------------------------


def is_k_stacked_ball(B: Complex, k: int) -> bool:
    """All faces of codimension >= k+1 lie in the boundary."""
    if k < 0:
        raise RangeError("k must be >= 0")
    bd = boundary(B)
    top = B.dim - k - 1
    for t in range(top + 1):
        if B.n_faces(t) != bd.n_faces(t):
            return False
    return True


def is_1_stacked_via_tree(B: Complex) -> bool:
    """1-stackedness through the dual-graph characterization."""
    return dual_graph(B).is_tree()


# -- canonical ball / manifold ----------------------------------------------


def _closure_complex(S: Complex, depth: int) -> Complex:
    """The complex of all vertex sets whose subsets of size <= depth are
    faces of S (facets = the maximal such sets)."""
    from itertools import combinations

    cliques: list[int] = []

    def extend(alpha: list[int], amask: int, start: int):
        cliques.append(amask)
        for v in range(start, S.m):
            ok = True
            vm = 1 << v
            for r in range(min(depth - 1, len(alpha)) + 1):
                for sub in combinations(alpha, r):
                    if not S.has_face(mask_of(sub) | vm):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                alpha.append(v)
                extend(alpha, amask | vm, v + 1)
                alpha.pop()

    extend([], 0, 0)
    maximal = [c for c in cliques
               if not any(c != o and c & o == c for o in cliques)]
    facets = [S.names_of_mask(c) for c in maximal]
    return Complex.from_facets(facets)


def canonical_ball(S: Complex, k: int) -> Complex:
    """The unique k-stacked (d+1)-ball bounded by a k-stellated d-sphere,
    built as the sets all of whose <= (k+1)-subsets are faces.

    Requires dim(S) >= 2k.  The output is validated (boundary equals S and
    it is k-stacked); failure raises HypothesisViolation rather than
    returning an unverified complex.
    """
    d = S.dim
    if d < 2 * k:
        raise RangeError(f"canonical ball needs dim >= 2k (got d={d}, k={k})")
    cand = _closure_complex(S, k + 1)
    try:
        ok = (cand.dim == d + 1 and boundary(cand) == S
              and is_k_stacked_ball(cand, k))
    except StructureError:
        ok = False
    if not ok:
        raise HypothesisViolation(
            "closure complex failed validation: the input sphere is not "
            f"{k}-stellated/{k}-stacked with a recoverable ball")
    return cand


def canonical_manifold(M: Complex, k: int) -> Complex:
    """The unique (d+1)-manifold bounded by a W_k(d) member for
    d >= 2k+2, built as the sets all of whose <= (k+2)-subsets are faces;
    validated against its defining properties."""
    d = M.dim
    if d < 2 * k + 2:
        raise RangeError(f"canonical manifold needs dim >= 2k+2 (got d={d}, k={k})")
    cand = _closure_complex(M, k + 2)
    try:
        ok = cand.dim == d + 1 and boundary(cand) == M
        if ok:
            for t in range(d - k + 1):
                if cand.n_faces(t) != M.n_faces(t):
                    ok = False
                    break
    except StructureError:
        ok = False
    if not ok:
        raise HypothesisViolation(
            "closure complex failed validation: the input is not a "
            f"W_{k} member with a recoverable manifold")
    return cand


# -- stellation search -------------------------------------------------------


def _is_standard_sphere(X: Complex) -> bool:
    return X.m == X.dim + 2 and len(X.facet_masks) == X.dim + 2


def stellation_search(S: Complex, k: int, budget: int = 10 ** 6,
                      seed: int = 0) -> SearchOutcome:
    """Search for a certificate that ``S`` is k-stellated.

    Reduces S by bistellar moves of index >= d-k+1 (the reverses of
    building moves of index < k), greedy on the face-count change with
    seeded random tie-breaking and simulated-annealing acceptance of
    worsening moves; restarts on dead ends.  The returned certificate is
    replayed independently before being returned.  Exhaustion refutes
    nothing.
    """
    d = S.dim
    if k < 0 or k > d + 1:
        raise RangeError(f"k={k} out of range for dimension {d}")
    if _is_standard_sphere(S):
        cert = MoveCertificate("bistellar", (), facet_hash(S), facet_hash(S))
        return SearchOutcome("found", cert, 0, S)
    if k == 0:
        return SearchOutcome("exhausted", None, 0)
    min_index = d - k + 1
    rng = random.Random(seed)
    deltas = {i: sum(bistellar_face_delta(d, i)) for i in range(min_index, d + 1)}
    nodes = 0
    while nodes < budget:
        current = S
        trail: list[BistellarMove] = []
        temp = 2.0
        while nodes < budget:
            if _is_standard_sphere(current):
                return _finish_stellation(S, current, trail, k, nodes)
            pool = [mv for mv in enumerate_bistellar(current)
                    if mv.index >= min_index]
            if not pool:
                if not trail:
                    # deterministic dead end at the root: nothing to try
                    return SearchOutcome("exhausted", None, nodes)
                break  # restart
            best = min(deltas[mv.index] for mv in pool)
            if rng.random() < 0.1:
                mv = rng.choice(pool)
            else:
                mv = rng.choice([m for m in pool if deltas[m.index] == best])
            delta = deltas[mv.index]
            nodes += 1
            if delta > 0 and rng.random() >= math.exp(-delta / temp):
                continue  # reject this proposal, costs a node
            current = apply_bistellar(current, mv)
            trail.append(mv)
            temp = max(temp * 0.99, 0.05)
        nodes += 1  # restart overhead
    return SearchOutcome("exhausted", None, nodes)


def _finish_stellation(S: Complex, reduced: Complex,
                       trail: list[BistellarMove], k: int,
                       nodes: int) -> SearchOutcome:
    d = S.dim
    steps = tuple(mv.reversed(d) for mv in reversed(trail))
    end = replay_bistellar(reduced, steps)
    if end != S:
        raise MoveError("internal error: certificate replay mismatch")
    cert = MoveCertificate("bistellar", steps, facet_hash(reduced), facet_hash(S))
    if cert.k_bound > k:
        raise MoveError("internal error: certificate exceeds index bound")
    if d >= 2 * k - 1:
        # any index-<k build sequence realizes the g-vector move counts
        g = g_vector(S)
        counts = cert.index_counts()
        for j in range(k):
            if counts.get(j, 0) != g[j + 1]:
                raise MoveError("internal error: move counts disagree with g-vector")
    return SearchOutcome("found", cert, nodes, reduced)


@dataclass
class WkMembershipReport:
    k: int
    per_vertex: dict[str, SearchOutcome]
    verdict: str  # "member" | "undetermined"

    @property
    def certified(self) -> bool:
        return self.verdict == "member"


def _wk_task(args):
    facets, k, budget, seed = args
    lk = Complex.from_facets(facets)
    return stellation_search(lk, k, budget, seed)


def w_k_membership(M: Complex, k: int, budget: int = 10 ** 6, seed: int = 0,
                   jobs: int = 1) -> WkMembershipReport:
    """Run a stellation search on every vertex link; "member" only when
    every link is certified."""
    if not is_connected(M):
        raise StructureError("W_k membership needs a connected complex")
    links = []
    for v in range(M.m):
        lk = link(M, (v,))
        if not is_closed_pseudomanifold(lk):
            raise StructureError(
                f"link of vertex {M.name_of(v)} is not a closed pseudomanifold")
        links.append(lk)
    tasks = [(lk.facets_as_names(), k, budget, seed + v)
             for v, lk in enumerate(links)]
    if jobs > 1:
        from multiprocessing import Pool
        with Pool(jobs) as pool:
            outcomes = pool.map(_wk_task, tasks)
    else:
        outcomes = [_wk_task(t) for t in tasks]
    per_vertex = {M.name_of(v): out for v, out in enumerate(outcomes)}
    verdict = "member" if all(o.found for o in outcomes) else "undetermined"
    return WkMembershipReport(k, per_vertex, verdict)
