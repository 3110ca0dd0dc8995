"""Exact simplicial homology over Q and Z_p.

Absolute, reduced, and relative Betti numbers via boundary-map ranks; the
inclusion-injectivity test used by the tightness machinery; orientability.
Chain bases are faces as bitmasks, so chain spaces of an induced
subcomplex embed in those of the ambient complex with no reindexing.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import (Complex, InputError, StructureError, bits,
                   is_closed_pseudomanifold, mask_of)
from .exactlinalg import kernel_basis, rank_cols, rank_gf2, rank_int, rank_modp


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: the rationals or a prime field Z_p."""

    kind: str  # "rationals" | "prime"
    p: int | None = None

    def __post_init__(self):
        if self.kind == "prime":
            if self.p is None or not _is_prime(self.p):
                raise InputError(f"{self.p} is not prime")
        elif self.kind != "rationals":
            raise InputError(f"unknown field kind {self.kind!r}")

    @staticmethod
    def rationals() -> "FieldSpec":
        return FieldSpec("rationals")

    @staticmethod
    def prime(p: int) -> "FieldSpec":
        return FieldSpec("prime", p)

    @staticmethod
    def parse(token: str) -> "FieldSpec":
        token = token.strip().lower()
        if token in ("q", "qq", "rationals"):
            return FieldSpec.rationals()
        if token.startswith("z"):
            return FieldSpec.prime(int(token[1:]))
        raise InputError(f"cannot parse field {token!r}")

    def __str__(self) -> str:
        return "Q" if self.kind == "rationals" else f"Z{self.p}"


QQ = FieldSpec.rationals()
GF2 = FieldSpec.prime(2)


@dataclass(frozen=True)
class BettiTable:
    field: FieldSpec
    beta: tuple[int, ...]      # beta_0 .. beta_d
    reduced: tuple[int, ...]   # reduced beta_0 .. beta_d

    def euler(self) -> int:
        return sum((-1) ** i * b for i, b in enumerate(self.beta))


def _boundary_col_signed(face: int) -> dict[int, int]:
    col = {}
    sign = 1
    for v in bits(face):
        col[face ^ (1 << v)] = sign
        sign = -sign
    return col


def _boundary_col_gf2(face: int) -> set[int]:
    return {face ^ (1 << v) for v in bits(face)}


def _components(vert_masks, edge_masks) -> int:
    """Number of connected components of a graph given as bitmasks."""
    parent = {v: v for v in vert_masks}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    n = len(parent)
    for e in edge_masks:
        lo = e & -e
        ra, rb = find(lo), find(e ^ lo)
        if ra != rb:
            parent[ra] = rb
            n -= 1
    return n


def reduced_betti_of_faces(faces_by_dim: list[list[int]], field: FieldSpec,
                           top: int) -> list[int]:
    """Reduced Betti numbers beta~_0..beta~_top of the complex whose faces
    (grouped by dimension, bitmasks) are given.  Empty complex convention:
    beta~_0 = -1."""
    out = [0] * (top + 1)
    verts = faces_by_dim[0] if faces_by_dim else []
    if not verts:
        out[0] = -1
        return out
    edges = faces_by_dim[1] if len(faces_by_dim) > 1 else []
    comp = _components(verts, edges)
    out[0] = comp - 1
    ranks = [0] * (top + 3)  # ranks[i] = rank of boundary_i
    ranks[1] = len(verts) - comp
    if field.kind == "prime" and field.p == 2:
        for i in range(2, min(top + 2, len(faces_by_dim))):
            ranks[i] = rank_gf2([_boundary_col_gf2(f) for f in faces_by_dim[i]])
    elif field.kind == "prime":
        for i in range(2, min(top + 2, len(faces_by_dim))):
            ranks[i] = rank_modp([_boundary_col_signed(f) for f in faces_by_dim[i]], field.p)
    else:
        for i in range(2, min(top + 2, len(faces_by_dim))):
            ranks[i] = rank_int([_boundary_col_signed(f) for f in faces_by_dim[i]])
    for i in range(1, top + 1):
        ni = len(faces_by_dim[i]) if i < len(faces_by_dim) else 0
        out[i] = ni - ranks[i] - ranks[i + 1]
    return out


def _faces_by_dim(X: Complex) -> list[list[int]]:
    return [sorted(X.faces_of_dim(t)) for t in range(X.dim + 1)]


def _induced_faces(faces_by_dim: list[list[int]], amask: int) -> list[list[int]]:
    nota = ~amask
    return [[f for f in lst if not f & nota] for lst in faces_by_dim]


def betti(X: Complex, field: FieldSpec) -> BettiTable:
    """Betti numbers over ``field`` via exact boundary-map ranks."""
    if X.dim < 0:
        # the empty complex: reduced beta_0 = -1 by convention
        return BettiTable(field, (0,), (-1,))
    d = X.dim
    reduced = reduced_betti_of_faces(_faces_by_dim(X), field, d)
    beta = list(reduced)
    beta[0] += 1
    return BettiTable(field, tuple(beta), tuple(reduced))


def reduced_betti(X: Complex, field: FieldSpec) -> tuple[int, ...]:
    if X.dim < 0:
        return (-1,)
    return tuple(reduced_betti_of_faces(_faces_by_dim(X), field, X.dim))


def relative_betti(X: Complex, A, B, field: FieldSpec) -> list[int]:
    """Betti numbers of the pair (X[B], X[A]) for vertex-id sets A <= B."""
    amask = mask_of(A)
    bmask = mask_of(B)
    if amask & ~bmask:
        raise InputError("relative_betti needs A to be a subset of B")
    d = X.dim
    rel: list[list[int]] = []
    for t in range(d + 1):
        nota = ~bmask
        rel.append([f for f in X.faces_of_dim(t)
                    if not f & nota and f & ~amask])
    ranks = [0] * (d + 3)
    in_rel = [set(lst) for lst in rel]

    def col(face: int, i: int):
        full = _boundary_col_signed(face)
        return {r: v for r, v in full.items() if r in in_rel[i - 1]}

    for i in range(1, d + 1):
        if rel[i]:
            cols = [col(f, i) for f in rel[i]]
            ranks[i] = rank_cols(cols, field)
    out = []
    for i in range(d + 1):
        out.append(len(rel[i]) - ranks[i] - ranks[i + 1])
    return out


def relative_betti_pair(X: Complex, Y: Complex, field: FieldSpec) -> list[int]:
    """Betti numbers of the pair (X, Y) for an arbitrary subcomplex Y of X
    (matched by vertex names); used where the subcomplex is not induced,
    e.g. a ball modulo its boundary."""
    yfaces = {frozenset(f) for ft in Y.facets_as_names()
              for f in _name_subsets(ft)}
    for ft in Y.facets_as_names():
        try:
            if not X.has_face(X.mask_from_names(ft)):
                raise InputError(f"{ft} is not a face of the ambient complex")
        except InputError:
            raise InputError(f"pair subcomplex facet {ft} is not in the "
                             "ambient complex") from None
    d = X.dim
    rel: list[list[int]] = []
    for t in range(d + 1):
        rel.append([f for f in X.faces_of_dim(t)
                    if frozenset(X.names_of_mask(f)) not in yfaces])
    in_rel = [set(lst) for lst in rel]
    ranks = [0] * (d + 3)
    for i in range(1, d + 1):
        if not rel[i]:
            continue
        cols = []
        for f in rel[i]:
            full = _boundary_col_signed(f)
            cols.append({r: v for r, v in full.items() if r in in_rel[i - 1]})
        ranks[i] = rank_cols(cols, field)
    return [len(rel[i]) - ranks[i] - ranks[i + 1] for i in range(d + 1)]


def _name_subsets(names):
    from itertools import combinations
    for r in range(len(names) + 1):
        yield from combinations(names, r)


def inclusion_injective(X: Complex, A, j: int, field: FieldSpec) -> bool:
    """Is H_j(X[A]) -> H_j(X) injective?  Decided by comparing
    dim(Z_j(X[A]) ∩ B_j(X)) with dim B_j(X[A])."""
    amask = mask_of(A)
    d = X.dim
    if j < 0 or j > d:
        raise InputError(f"index {j} out of range")
    nota = ~amask
    faces_j_A = [f for f in X.faces_of_dim(j) if not f & nota]
    if not faces_j_A:
        return True
    faces_j1_A = [f for f in X.faces_of_dim(j + 1) if not f & nota]
    faces_j1_X = sorted(X.faces_of_dim(j + 1))

    if j == 0:
        # every 0-chain is a cycle
        z_basis = [{f: 1} for f in faces_j_A]
    else:
        keyed = [(f, _boundary_col_signed(f)) for f in faces_j_A]
        z_basis = kernel_basis(keyed, field)
    dim_z = len(z_basis)
    if dim_z == 0:
        return True
    bx_cols = [_boundary_col_signed(f) for f in faces_j1_X]
    dim_bx = rank_cols(bx_cols, field)
    dim_ba = rank_cols([_boundary_col_signed(f) for f in faces_j1_A], field)
    # dim(Z + B) via one elimination over the concatenation
    dim_sum = rank_cols(z_basis + bx_cols, field)
    dim_meet = dim_z + dim_bx - dim_sum
    return dim_meet == dim_ba


def orientable(X: Complex, field: FieldSpec) -> bool:
    """F-orientability of a closed connected pseudomanifold: beta_d = 1."""
    if not is_closed_pseudomanifold(X):
        raise StructureError("orientability needs a closed connected pseudomanifold")
    return betti(X, field).beta[X.dim] == 1
