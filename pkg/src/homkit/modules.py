"""Right modules over a split basic Algebra.

A :class:`Module` stores one dim x dim matrix per algebra basis element
(the right action on row vectors, so ``action(x*y) = action(x) @ action(y)``)
together with a weight per basis vector: basis vector v has weight i when
``v * e_i == v``.  Every constructor here produces weight-adapted bases,
which keeps Hom systems block diagonal and makes semisimple data (tops,
simple multiplicities) readable off the weights.

Left modules are represented as right modules over the opposite algebra,
and injective dimension is projective dimension of the dual on the other
side.  Projective-dimension results carry certificates: Finite means a
literal zero syzygy, InfiniteCertified means an explicitly verified
isomorphism between two syzygies.
"""

from __future__ import annotations

import random
import weakref
from dataclasses import dataclass, field as dc_field
from itertools import product as iter_product

from .algebra import Algebra, algebra_from_json, algebra_to_json, opposite
from .linalg import Field, Matrix, RowSpace

_ISO_SEARCH_SEED = 0x5EED
_ISO_RETRIES = 8
_EXHAUSTIVE_LIMIT = 4096

# Resolutions abort (soundly, to Unknown / aborted) when a cover source
# would exceed this dimension; syzygies of wild input can grow
# exponentially and the guard keeps worst cases at desk scale.
DIM_GUARD = 512


def _matmul(F: Field, A: list[list], B: list[list]) -> list[list]:
    n, k = len(A), len(B)
    m = len(B[0]) if B else 0
    out = [[F.zero] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        Oi = out[i]
        for t in range(k):
            a = Ai[t]
            if a == 0:
                continue
            Bt = B[t]
            for j in range(m):
                b = Bt[j]
                if b != 0:
                    Oi[j] = F.add(Oi[j], F.mul(a, b))
    return out


def _vecmat(F: Field, v: list, A: list[list]) -> list:
    m = len(A[0]) if A else 0
    out = [F.zero] * m
    for i, a in enumerate(v):
        if a == 0:
            continue
        Ai = A[i]
        for j in range(m):
            b = Ai[j]
            if b != 0:
                out[j] = F.add(out[j], F.mul(a, b))
    return out


class Module:
    """A right module with per-basis-element action matrices."""

    __slots__ = ("algebra", "dim", "action", "weights")

    def __init__(self, algebra: Algebra, dim: int, action: list[list[list]],
                 weights: list[int]):
        self.algebra = algebra
        self.dim = dim
        self.action = action
        self.weights = list(weights)
        if len(action) != algebra.dim:
            raise ValueError("need one action matrix per algebra basis element")
        if len(weights) != dim:
            raise ValueError("need one weight per module basis vector")
        for mat in action:
            if len(mat) != dim or any(len(row) != dim for row in mat):
                raise ValueError("action matrices must be dim x dim")

    @property
    def field(self) -> Field:
        return self.algebra.field

    def is_zero(self) -> bool:
        return self.dim == 0

    def weight_counts(self) -> list[int]:
        counts = [0] * self.algebra.r
        for w in self.weights:
            counts[w] += 1
        return counts

    def act(self, v: list, x: int) -> list:
        return _vecmat(self.field, v, self.action[x])

    def act_coords(self, v: list, coords: dict[int, object]) -> list:
        """Apply a general algebra element given by its coordinate dict."""
        F = self.field
        out = [F.zero] * self.dim
        for x, c in coords.items():
            if c == 0:
                continue
            w = self.act(v, x)
            out = [F.add(o, F.mul(c, t)) for o, t in zip(out, w)]
        return out

    def validate(self) -> list[str]:
        """Exhaustive action checks; returns a list of failure messages."""
        F = self.field
        a = self.algebra
        fails = []
        one = [[F.one if i == j else F.zero for j in range(self.dim)]
               for i in range(self.dim)]
        total = [[F.zero] * self.dim for _ in range(self.dim)]
        for i in range(a.r):
            for s in range(self.dim):
                for t in range(self.dim):
                    total[s][t] = F.add(total[s][t], self.action[i][s][t])
        if total != one:
            fails.append("action of 1 is not the identity")
        for i in range(a.r):
            mat = self.action[i]
            for s in range(self.dim):
                for t in range(self.dim):
                    expect = (F.one if (s == t and self.weights[s] == i) else F.zero)
                    if mat[s][t] != expect:
                        fails.append(f"action of e_{i} not the weight projector")
                        break
                else:
                    continue
                break
        for x in range(a.dim):
            Ax = self.action[x]
            for y in range(a.dim):
                lhs = _matmul(F, Ax, self.action[y])
                rhs = [[F.zero] * self.dim for _ in range(self.dim)]
                for z, c in a.mult[x][y].items():
                    Az = self.action[z]
                    for s in range(self.dim):
                        for t in range(self.dim):
                            if Az[s][t] != 0:
                                rhs[s][t] = F.add(rhs[s][t], F.mul(c, Az[s][t]))
                if lhs != rhs:
                    fails.append(f"action not multiplicative at basis pair ({x},{y})")
                    return fails
        return fails

    def __eq__(self, other):
        return (isinstance(other, Module) and self.algebra == other.algebra
                and self.dim == other.dim and self.action == other.action
                and self.weights == other.weights)

    def __repr__(self):
        return f"Module(dim {self.dim} over {self.algebra!r})"


def zero_module(a: Algebra) -> Module:
    return Module(a, 0, [[] for _ in range(a.dim)], [])


def projective(a: Algebra, i: int) -> Module:
    """P_i = e_i A: basis elements with left tag i, right multiplication."""
    if not 0 <= i < a.r:
        raise ValueError(f"vertex {i} out of range")
    idx = [k for k in range(a.dim) if a.left[k] == i]
    pos = {k: s for s, k in enumerate(idx)}
    F = a.field
    d = len(idx)
    action = []
    for x in range(a.dim):
        mat = [[F.zero] * d for _ in range(d)]
        for s, k in enumerate(idx):
            for z, c in a.mult[k][x].items():
                mat[s][pos[z]] = c
        action.append(mat)
    return Module(a, d, action, [a.right[k] for k in idx])


def simple(a: Algebra, i: int) -> Module:
    """S_i: one-dimensional, e_i acts as 1, everything else as 0."""
    if not 0 <= i < a.r:
        raise ValueError(f"vertex {i} out of range")
    F = a.field
    action = [[[F.one]] if x == i else [[F.zero]] for x in range(a.dim)]
    return Module(a, 1, action, [i])


def regular(a: Algebra) -> Module:
    """The right regular module A_A (which is the direct sum of the P_i)."""
    F = a.field
    d = a.dim
    action = []
    for x in range(d):
        mat = [[F.zero] * d for _ in range(d)]
        for s in range(d):
            for z, c in a.mult[s][x].items():
                mat[s][z] = c
        action.append(mat)
    return Module(a, d, action, list(a.right))


def dual(m: Module) -> Module:
    """D(M) = Hom_k(M, k) as a right module over the opposite algebra."""
    op = opposite(m.algebra)
    action = [[[mat[s][t] for s in range(m.dim)] for t in range(m.dim)]
              for mat in m.action]
    return Module(op, m.dim, action, list(m.weights))


def injective(a: Algebra, i: int) -> Module:
    """I_i = D(e_i A^op), the injective envelope of S_i, as a module over a."""
    inj = dual(projective(opposite(a), i))
    # opposite(opposite(a)) equals a structurally; rebind for identity hygiene
    return Module(a, inj.dim, inj.action, inj.weights)


def direct_sum(a: Algebra, parts: list[Module]) -> Module:
    F = a.field
    dim = sum(p.dim for p in parts)
    weights: list[int] = []
    for p in parts:
        weights.extend(p.weights)
    action = []
    for x in range(a.dim):
        mat = [[F.zero] * dim for _ in range(dim)]
        off = 0
        for p in parts:
            pm = p.action[x]
            for s in range(p.dim):
                row = mat[off + s]
                prow = pm[s]
                for t in range(p.dim):
                    row[off + t] = prow[t]
            off += p.dim
        action.append(mat)
    return Module(a, dim, action, weights)


# --------------------------------------------------------------------------
# subspaces, submodules, quotients
# --------------------------------------------------------------------------


class SubspaceBasis:
    """An RREF basis of a subspace of k^n with coordinate extraction."""

    def __init__(self, field: Field, ncols: int, vectors: list[list]):
        self.field = field
        self.ncols = ncols
        rs = RowSpace(field)
        for v in vectors:
            rs.add({i: x for i, x in enumerate(v) if x != 0})
        self.pivots = list(rs.pivot_cols)
        self.rows = []
        for row in rs.rows:
            dense = [field.zero] * ncols
            for c, x in row.items():
                dense[c] = x
            self.rows.append(dense)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def coords(self, v: list) -> list:
        # valid because the rows are in full RREF with unit pivots; callers
        # only pass vectors that lie in the span
        return [v[p] for p in self.pivots]

    def contains(self, v: list) -> bool:
        F = self.field
        resid = list(v)
        for c, row in zip(self.pivots, self.rows):
            x = resid[c]
            if x != 0:
                resid = [F.sub(rv, F.mul(x, rw)) for rv, rw in zip(resid, row)]
        return all(x == 0 for x in resid)


def submodule(parent: Module, vectors: list[list]) -> tuple[Module, list[list]]:
    """The submodule spanned by the given (weight-homogeneous) vectors.

    Returns the submodule together with its inclusion matrix (sub basis
    written in parent coordinates).  The input vectors must already span a
    submodule; closure under the action is the caller's responsibility.
    """
    F = parent.field
    basis = SubspaceBasis(F, parent.dim, vectors)
    d = basis.rank
    weights = []
    for row, piv in zip(basis.rows, basis.pivots):
        w = parent.weights[piv]
        for c, x in enumerate(row):
            if x != 0 and parent.weights[c] != w:
                raise ValueError("submodule basis vector mixes weights")
        weights.append(w)
    action = []
    for x in range(parent.algebra.dim):
        mat = []
        for row in basis.rows:
            img = _vecmat(F, row, parent.action[x])
            mat.append(basis.coords(img))
        action.append(mat)
    return Module(parent.algebra, d, action, weights), [r[:] for r in basis.rows]


def spanned_submodule(parent: Module, generators: list[list]) -> tuple[Module, list[list]]:
    """Close the generators under the algebra action, then take the span."""
    F = parent.field
    rs = RowSpace(F)
    queue = []
    for g in generators:
        if rs.add({i: x for i, x in enumerate(g) if x != 0}):
            queue.append(g)
    while queue:
        v = queue.pop()
        for x in range(parent.algebra.dim):
            w = _vecmat(F, v, parent.action[x])
            if rs.add({i: t for i, t in enumerate(w) if t != 0}):
                queue.append(w)
    dense = []
    for row in rs.rows:
        vec = [F.zero] * parent.dim
        for c, x in row.items():
            vec[c] = x
        dense.append(vec)
    return submodule(parent, dense)


def quotient_module(parent: Module, vectors: list[list]) -> Module:
    """Quotient of the parent by the submodule spanned by the vectors.

    The vectors must span a submodule; the quotient basis is the set of
    non-pivot parent coordinates.
    """
    F = parent.field
    rs = RowSpace(F)
    for v in vectors:
        rs.add({i: x for i, x in enumerate(v) if x != 0})
    pivots = set(rs.pivot_of_col)
    free = [i for i in range(parent.dim) if i not in pivots]
    pos = {i: s for s, i in enumerate(free)}
    d = len(free)

    def reduce_vec(v: list) -> list:
        res = rs.reduce({i: x for i, x in enumerate(v) if x != 0})
        out = [F.zero] * d
        for c, x in res.items():
            out[pos[c]] = x
        return out

    action = []
    for x in range(parent.algebra.dim):
        mat = [reduce_vec(parent.action[x][i]) for i in free]
        action.append(mat)
    return Module(parent.algebra, d, action, [parent.weights[i] for i in free])


# --------------------------------------------------------------------------
# radical, top, covers, syzygies
# --------------------------------------------------------------------------


def _radical_rowspace(m: Module) -> RowSpace:
    rs = RowSpace(m.field)
    a = m.algebra
    for x in range(a.r, a.dim):
        mat = m.action[x]
        for row in mat:
            d = {i: v for i, v in enumerate(row) if v != 0}
            if d:
                rs.add(d)
    return rs


def radical_submodule(m: Module) -> Module:
    """rad M = M * rad A."""
    F = m.field
    rs = _radical_rowspace(m)
    dense = []
    for row in rs.rows:
        vec = [F.zero] * m.dim
        for c, x in row.items():
            vec[c] = x
        dense.append(vec)
    return submodule(m, dense)[0]


def top(m: Module) -> Module:
    """top M = M / rad M, semisimple; its weights list the simple factors."""
    F = m.field
    rs = _radical_rowspace(m)
    dense = []
    for row in rs.rows:
        vec = [F.zero] * m.dim
        for c, x in row.items():
            vec[c] = x
        dense.append(vec)
    return quotient_module(m, dense)


def top_multiplicities(m: Module) -> list[int]:
    """Multiplicity of each simple S_i in top(M)."""
    rs = _radical_rowspace(m)
    counts = m.weight_counts()
    for piv in rs.pivot_of_col:
        counts[m.weights[piv]] -= 1
    return counts


_projective_cache: "weakref.WeakKeyDictionary[Algebra, dict]" = weakref.WeakKeyDictionary()


def cached_projective(a: Algebra, i: int) -> Module:
    per = _projective_cache.setdefault(a, {})
    mod = per.get(i)
    if mod is None:
        mod = per[i] = projective(a, i)
    return mod


class Cover:
    """A minimal projective cover presented without block matrices.

    ``summands`` lists one vertex per projective copy (in vertex order);
    the block-diagonal source action is applied summand by summand, so the
    full source Module is only materialised on demand.
    """

    def __init__(self, algebra: Algebra, summands: list[int],
                 multiplicities: list[int], matrix: list[list]):
        self.algebra = algebra
        self.summands = summands
        self.multiplicities = multiplicities
        self.matrix = matrix
        self._parts = [cached_projective(algebra, i) for i in summands]
        self._offsets = []
        off = 0
        for p in self._parts:
            self._offsets.append(off)
            off += p.dim
        self.source_dim = off
        self._source: Module | None = None

    @property
    def source(self) -> Module:
        if self._source is None:
            self._source = direct_sum(self.algebra, self._parts)
        return self._source

    def source_weights(self) -> list[int]:
        out: list[int] = []
        for p in self._parts:
            out.extend(p.weights)
        return out

    def act_source(self, v: list, x: int) -> list:
        """Apply basis element x to a source vector, blockwise."""
        F = self.algebra.field
        out = [F.zero] * self.source_dim
        for part, off in zip(self._parts, self._offsets):
            mat = part.action[x]
            for i in range(part.dim):
                a = v[off + i]
                if a == 0:
                    continue
                row = mat[i]
                for j in range(part.dim):
                    b = row[j]
                    if b != 0:
                        out[off + j] = F.add(out[off + j], F.mul(a, b))
        return out


def projective_cover(m: Module) -> Cover:
    """Minimal projective cover of a nonzero module.

    The lifts are non-pivot standard coordinates modulo rad M, so the cover
    matrix rows are plain action-matrix rows.
    """
    if m.is_zero():
        raise ValueError("projective cover of the zero module")
    a = m.algebra
    rs = _radical_rowspace(m)
    pivots = set(rs.pivot_of_col)
    lifts_by_vertex: dict[int, list[int]] = {}
    for t in range(m.dim):
        if t not in pivots:
            lifts_by_vertex.setdefault(m.weights[t], []).append(t)
    mults = [len(lifts_by_vertex.get(i, ())) for i in range(a.r)]
    summands: list[int] = []
    rows: list[list] = []
    for i in range(a.r):
        if mults[i] == 0:
            continue
        pidx = [k for k in range(a.dim) if a.left[k] == i]
        for t in lifts_by_vertex[i]:
            summands.append(i)
            for k in pidx:
                rows.append(list(m.action[k][t]))
    return Cover(a, summands, mults, rows)


def syzygy(m: Module) -> Module:
    """Kernel of the projective cover (zero for the zero module)."""
    if m.is_zero():
        return zero_module(m.algebra)
    return _syzygy_with_inclusion(m)[0]


def _syzygy_with_inclusion(m: Module, cov: Cover | None = None) -> tuple[Module, Cover, list[list]]:
    """Syzygy as a Module, the cover, and the inclusion into the source.

    The syzygy's action matrices are computed by blockwise application of
    the source projectives to the kernel basis, so the (possibly large)
    block-diagonal source action is never materialised.
    """
    if cov is None:
        cov = projective_cover(m)
    F = m.field
    kern = Matrix(F, cov.matrix).transpose().kernel_basis() if cov.matrix else []
    if not kern:
        return zero_module(m.algebra), cov, []
    basis = SubspaceBasis(F, cov.source_dim, kern)
    src_weights = cov.source_weights()
    weights = []
    for row, piv in zip(basis.rows, basis.pivots):
        w = src_weights[piv]
        if any(x != 0 and src_weights[c] != w for c, x in enumerate(row)):
            raise AssertionError("kernel basis vector mixes weights")
        weights.append(w)
    action = []
    for x in range(m.algebra.dim):
        mat = [basis.coords(cov.act_source(row, x)) for row in basis.rows]
        action.append(mat)
    sub = Module(m.algebra, basis.rank, action, weights)
    return sub, cov, [r[:] for r in basis.rows]


@dataclass
class ResolutionStep:
    multiplicities: list[int]
    module: Module
    differential: list[list]  # matrix into the previous term (or onto the base)


@dataclass
class Resolution:
    base: Module
    steps: list[ResolutionStep]
    syzygies: list[Module]
    terminated: bool
    aborted: bool = False  # a cover source exceeded the dimension guard

    @property
    def length(self) -> int:
        return len(self.steps) - 1

    def multiplicity_vectors(self) -> list[list[int]]:
        return [s.multiplicities for s in self.steps]


def min_resolution(m: Module, cutoff: int,
                   dim_guard: int | None = DIM_GUARD) -> Resolution:
    """Minimal projective resolution out to at most ``cutoff`` terms.

    ``terminated`` is True iff some syzygy vanished within the cutoff; in
    that case the last stored step covers the final nonzero syzygy.  When a
    cover source would exceed ``dim_guard`` the resolution stops early with
    ``aborted`` set (pass None to lift the guard).
    """
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    steps: list[ResolutionStep] = []
    syzygies: list[Module] = []
    if m.is_zero():
        return Resolution(m, steps, syzygies, True)
    cur = m
    incl_prev: list[list] | None = None
    for k in range(cutoff + 1):
        cov = projective_cover(cur)
        if dim_guard is not None and cov.source_dim > dim_guard:
            return Resolution(m, steps, syzygies, False, aborted=True)
        sub, cov, incl = _syzygy_with_inclusion(cur, cov)
        if k == 0:
            differential = cov.matrix
        else:
            differential = _matmul(m.field, cov.matrix, incl_prev)
        steps.append(ResolutionStep(cov.multiplicities, cov.source, differential))
        syzygies.append(sub)
        if sub.is_zero():
            return Resolution(m, steps, syzygies, True)
        cur = sub
        incl_prev = incl
    return Resolution(m, steps, syzygies, False)


# --------------------------------------------------------------------------
# Hom, iso testing, pd certificates
# --------------------------------------------------------------------------


def hom_space(m: Module, n: Module) -> list[list[list]]:
    """Basis of Hom_A(M, N) as matrices F with v |-> v @ F.

    Solves ``action_M(x) @ F == F @ action_N(x)`` for every algebra basis
    element x.  The idempotent constraints are imposed structurally: F is
    block diagonal over the common weights, which is exactly what the e_i
    equations say.
    """
    if m.algebra != n.algebra:
        raise ValueError("hom_space needs modules over the same algebra")
    a = m.algebra
    F = m.field
    r = a.r
    mb = [[s for s in range(m.dim) if m.weights[s] == i] for i in range(r)]
    nb = [[t for t in range(n.dim) if n.weights[t] == i] for i in range(r)]
    off = [0] * r
    total = 0
    for i in range(r):
        off[i] = total
        total += len(mb[i]) * len(nb[i])

    def unknown(i: int, si: int, ti: int) -> int:
        return off[i] + si * len(nb[i]) + ti

    rows = RowSpace(F)
    for x in range(r, a.dim):
        i, j = a.left[x], a.right[x]
        Am = m.action[x]
        An = n.action[x]
        if not mb[i] or not nb[j]:
            continue
        for si, s in enumerate(mb[i]):
            for tj, t in enumerate(nb[j]):
                vec: dict[int, object] = {}
                # sum_c Am[s][c] F_j[c][t]  (c of weight j in M)
                for cj, c in enumerate(mb[j]):
                    v = Am[s][c]
                    if v != 0:
                        k = unknown(j, cj, tj)
                        nv = F.add(vec.get(k, F.zero), v)
                        if nv == 0:
                            vec.pop(k, None)
                        else:
                            vec[k] = nv
                # - sum_d F_i[s][d] An[d][t]  (d of weight i in N)
                for di, d in enumerate(nb[i]):
                    v = An[d][t]
                    if v != 0:
                        k = unknown(i, si, di)
                        nv = F.sub(vec.get(k, F.zero), v)
                        if nv == 0:
                            vec.pop(k, None)
                        else:
                            vec[k] = nv
                if vec:
                    rows.add(vec)
    kern = rows.kernel_basis(total)
    out = []
    for kv in kern:
        mat = [[F.zero] * n.dim for _ in range(m.dim)]
        for i in range(r):
            for si, s in enumerate(mb[i]):
                for ti, t in enumerate(nb[i]):
                    x = kv.get(unknown(i, si, ti))
                    if x is not None and x != 0:
                        mat[s][t] = x
        out.append(mat)
    return out


def hom_dim(m: Module, n: Module) -> int:
    return len(hom_space(m, n))


@dataclass
class IsoWitness:
    matrix: list[list]
    inverse: list[list]


@dataclass
class IsoResult:
    kind: str  # "iso" | "not_iso" | "undetermined"
    witness: IsoWitness | None = None
    reason: str = ""

    def __bool__(self):
        return self.kind == "iso"


def _invert_square(F: Field, mat: list[list]) -> list[list] | None:
    n = len(mat)
    if n == 0:
        return []
    aug = Matrix(F, [row[:] + [F.one if i == j else F.zero for j in range(n)]
                     for i, row in enumerate(mat)])
    res = aug.rref()
    if res.pivot_columns[:n] != list(range(n)) or res.rank != n:
        return None
    return [row[n:] for row in res.reduced.data]


def _verify_intertwiner(m: Module, n: Module, mat: list[list]) -> bool:
    F = m.field
    for x in range(m.algebra.dim):
        if _matmul(F, m.action[x], mat) != _matmul(F, mat, n.action[x]):
            return False
    return True


def is_iso(m: Module, n: Module) -> IsoResult:
    """Decide isomorphism with one-sided error.

    NotIso verdicts are certified (dimension/weight/top mismatch, zero Hom
    space, or exhausted search over a small prime-field Hom space); a failed
    randomized search never downgrades to NotIso, only to Undetermined.
    """
    if m.algebra != n.algebra:
        raise ValueError("is_iso needs modules over the same algebra")
    F = m.field
    if m.dim != n.dim:
        return IsoResult("not_iso", reason="dimension mismatch")
    if m.weight_counts() != n.weight_counts():
        return IsoResult("not_iso", reason="e_i-eigenspace dimensions differ")
    if m.dim == 0:
        return IsoResult("iso", IsoWitness([], []))
    if top_multiplicities(m) != top_multiplicities(n):
        return IsoResult("not_iso", reason="top multiplicities differ")
    homs = hom_space(m, n)
    if not homs:
        return IsoResult("not_iso", reason="Hom space is zero")
    h = len(homs)

    def candidate(coeffs) -> list[list]:
        mat = [[F.zero] * n.dim for _ in range(m.dim)]
        for c, hm in zip(coeffs, homs):
            if c == 0:
                continue
            for s in range(m.dim):
                hs = hm[s]
                ms = mat[s]
                for t in range(n.dim):
                    if hs[t] != 0:
                        ms[t] = F.add(ms[t], F.mul(c, hs[t]))
        return mat

    p = F.p
    if p is not None and p ** h <= _EXHAUSTIVE_LIMIT:
        for coeffs in iter_product(range(p), repeat=h):
            if all(c == 0 for c in coeffs):
                continue
            mat = candidate(coeffs)
            inv = _invert_square(F, mat)
            if inv is not None:
                return IsoResult("iso", IsoWitness(mat, inv))
        return IsoResult("not_iso", reason="no invertible element of Hom (exhaustive search)")
    rng = random.Random(_ISO_SEARCH_SEED + 31 * m.dim + h)
    for _ in range(_ISO_RETRIES):
        if p is None:
            coeffs = [F.of_int(rng.randint(-9, 9)) for _ in range(h)]
        else:
            coeffs = [rng.randrange(p) for _ in range(h)]
        mat = candidate(coeffs)
        inv = _invert_square(F, mat)
        if inv is not None:
            return IsoResult("iso", IsoWitness(mat, inv))
    return IsoResult("undetermined", reason="randomized search found no invertible hom")


@dataclass
class PdResult:
    """Projective dimension with a certificate.

    Finite(d): the (d+1)-st syzygy is literally zero and the d-th is not.
    InfiniteCertified(first_repeat, period): syzygy number ``first_repeat``
    is isomorphic (verified witness) to the earlier nonzero syzygy
    ``first_repeat - period``.  Unknown(cutoff): neither event within the
    cutoff.
    """

    kind: str  # "finite" | "infinite" | "unknown"
    d: int | None = None
    first_repeat: int | None = None
    period: int | None = None
    cutoff: int | None = None
    syzygy_dims: list[int] = dc_field(default_factory=list)
    witness: IsoWitness | None = None
    witness_modules: tuple[Module, Module] | None = None

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def is_infinite(self) -> bool:
        return self.kind == "infinite"

    def describe(self) -> str:
        if self.kind == "finite":
            return f"Finite({self.d})"
        if self.kind == "infinite":
            return f"InfiniteCertified(repeat at {self.first_repeat}, period {self.period})"
        return f"Unknown(cutoff {self.cutoff})"


def _signature(m: Module) -> tuple:
    return (m.dim, tuple(m.weight_counts()), tuple(top_multiplicities(m)) if m.dim else ())


def pd(m: Module, cutoff: int, dim_guard: int | None = DIM_GUARD) -> PdResult:
    """Projective dimension of m, certified as documented on PdResult.

    A cover source exceeding ``dim_guard`` aborts the resolution and yields
    Unknown (never a wrong certificate); pass None to lift the guard.
    """
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    if m.is_zero():
        return PdResult("finite", d=0, syzygy_dims=[0])
    chain = [m]
    sigs = [_signature(m)]
    dims = [m.dim]
    for j in range(1, cutoff + 1):
        cov = projective_cover(chain[-1])
        if dim_guard is not None and cov.source_dim > dim_guard:
            return PdResult("unknown", cutoff=cutoff, syzygy_dims=dims)
        nxt = _syzygy_with_inclusion(chain[-1], cov)[0]
        dims.append(nxt.dim)
        if nxt.is_zero():
            return PdResult("finite", d=j - 1, syzygy_dims=dims)
        sig = _signature(nxt)
        for i, old in enumerate(sigs):
            if old == sig:
                res = is_iso(chain[i], nxt)
                if res.kind == "iso":
                    return PdResult("infinite", first_repeat=j, period=j - i,
                                    syzygy_dims=dims, witness=res.witness,
                                    witness_modules=(chain[i], nxt))
        chain.append(nxt)
        sigs.append(sig)
    return PdResult("unknown", cutoff=cutoff, syzygy_dims=dims)


def injective_dimension(m: Module, cutoff: int) -> PdResult:
    """id(M) := pd of D(M) over the opposite algebra."""
    return pd(dual(m), cutoff)


# --------------------------------------------------------------------------
# Ext and Tor
# --------------------------------------------------------------------------


def ext_dims(m: Module, n: Module, cutoff: int,
             dim_guard: int | None = DIM_GUARD) -> list[int]:
    """dim Ext^l(M, N) for 0 <= l <= cutoff, from a minimal resolution of M."""
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    if m.is_zero() or n.is_zero():
        return [0] * (cutoff + 1)
    F = m.field
    res = min_resolution(m, cutoff + 1, dim_guard)
    if res.aborted:
        raise ValueError("resolution exceeded the dimension guard; Ext "
                         "dimensions cannot be certified (raise dim_guard)")
    terms = [s.module for s in res.steps]
    while len(terms) < cutoff + 2:
        terms.append(zero_module(m.algebra))
    hom_bases = [hom_space(P, n) if P.dim else [] for P in terms]
    h = [len(b) for b in hom_bases]
    # rank of delta_l : Hom(P_l, n) -> Hom(P_{l+1}, n), phi |-> d_{l+1} o phi
    ranks = [0] * (cutoff + 2)
    for l in range(cutoff + 1):
        if not hom_bases[l] or terms[l + 1].dim == 0:
            continue
        D = res.steps[l + 1].differential if l + 1 < len(res.steps) else None
        if D is None:
            continue
        rs = RowSpace(F)
        for phi in hom_bases[l]:
            img = _matmul(F, D, phi)
            vec = {}
            k = 0
            for row in img:
                for x in row:
                    if x != 0:
                        vec[k] = x
                    k += 1
            if vec:
                rs.add(vec)
        ranks[l] = rs.rank
    out = []
    for l in range(cutoff + 1):
        prev = ranks[l - 1] if l >= 1 else 0
        out.append(h[l] - ranks[l] - prev)
    return out


class TensorProduct:
    """M (x)_R N for M a right R-module and N a left R-module.

    N is handed over as a right module over opposite(R).  The product is the
    quotient of the pure-tensor space k^(dim M * dim N) by the balancing
    relations m*x (x) n - m (x) x*n over the basis of R.
    """

    def __init__(self, m: Module, n: Module):
        R = m.algebra
        if n.algebra != opposite(R):
            raise ValueError("second factor must be a right module over opposite(R)")
        self.m = m
        self.n = n
        F = m.field
        self.field = F
        self.rows = RowSpace(F)
        md, nd = m.dim, n.dim
        for x in range(R.dim):
            Am = m.action[x]
            An = n.action[x]  # right action of x^op = left action of x on N
            for a in range(md):
                Ama = Am[a]
                for b in range(nd):
                    vec: dict[int, object] = {}
                    for c in range(md):
                        v = Ama[c]
                        if v != 0:
                            vec[c * nd + b] = v
                    Anb = An[b]
                    for d2 in range(nd):
                        v = Anb[d2]
                        if v != 0:
                            k = a * nd + d2
                            nv = F.sub(vec.get(k, F.zero), v)
                            if nv == 0:
                                vec.pop(k, None)
                            else:
                                vec[k] = nv
                    if vec:
                        self.rows.add(vec)
        pomm = set(self.rows.pivot_of_col)
        self.free = [k for k in range(md * nd) if k not in pomm]
        self.pos = {k: s for s, k in enumerate(self.free)}

    @property
    def dim(self) -> int:
        return len(self.free)

    def reduce_pure(self, vec: dict[int, object]) -> list:
        """Reduce a vector in pure-tensor coordinates to quotient coordinates."""
        F = self.field
        res = self.rows.reduce(dict(vec))
        out = [F.zero] * self.dim
        for c, x in res.items():
            out[self.pos[c]] = x
        return out


def tensor_over(m: Module, n: Module) -> TensorProduct:
    """See :class:`TensorProduct`; ``.dim`` is the exact k-dimension."""
    return TensorProduct(m, n)


def tor_dims(m: Module, n: Module, cutoff: int,
             dim_guard: int | None = DIM_GUARD) -> list[int]:
    """dim Tor_l^R(M, N) for 0 <= l <= cutoff via a minimal resolution of M.

    When the resolution hits the dimension guard the list is truncated to
    the degrees that are still certain (possibly fewer than cutoff + 1).
    """
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    if m.is_zero() or n.is_zero():
        return [0] * (cutoff + 1)
    F = m.field
    res = min_resolution(m, cutoff + 1, dim_guard)
    terms = [s.module for s in res.steps]
    if res.terminated:
        while len(terms) < cutoff + 2:
            terms.append(zero_module(m.algebra))
        limit = cutoff
    elif res.aborted:
        limit = min(cutoff, len(terms) - 2)
        if limit < 0:
            return []
    else:
        limit = cutoff
    tens = [TensorProduct(P, n) if P.dim else None for P in terms[:limit + 2]]
    dims = [t.dim if t else 0 for t in tens]
    nd = n.dim
    # rank of the induced boundary C_l -> C_{l-1}
    ranks = [0] * (limit + 2)
    for l in range(1, limit + 2):
        if tens[l] is None or tens[l - 1] is None or dims[l] == 0 or dims[l - 1] == 0:
            continue
        D = res.steps[l].differential if l < len(res.steps) else None
        if D is None:
            continue
        rs = RowSpace(F)
        for k in tens[l].free:
            a, b = divmod(k, nd)
            vec: dict[int, object] = {}
            for c, v in enumerate(D[a]):
                if v != 0:
                    vec[c * nd + b] = v
            red = tens[l - 1].rows.reduce(vec)
            if red:
                rs.add({tens[l - 1].pos[c]: x for c, x in red.items()})
        ranks[l] = rs.rank
    out = []
    for l in range(limit + 1):
        out.append(dims[l] - ranks[l] - ranks[l + 1])
    return out


# --------------------------------------------------------------------------
# restriction along algebra maps, weight adaptation
# --------------------------------------------------------------------------


@dataclass
class AlgebraMap:
    """An algebra homomorphism given by images of basis elements."""

    source: Algebra
    target: Algebra
    images: list[dict[int, object]]

    def check(self):
        s, t = self.source, self.target
        if len(self.images) != s.dim:
            raise ValueError("need one image per source basis element")
        F = t.field
        one: dict[int, object] = {}
        for i in range(s.r):
            for z, c in self.images[i].items():
                nv = F.add(one.get(z, F.zero), c)
                if nv == 0:
                    one.pop(z, None)
                else:
                    one[z] = nv
        if one != t.unit_coords():
            raise ValueError("map does not send 1 to 1")
        for x in range(s.dim):
            for y in range(s.dim):
                lhs = t.mul_coords(self.images[x], self.images[y])
                rhs: dict[int, object] = {}
                for z, c in s.mult[x][y].items():
                    for w, cw in self.images[z].items():
                        nv = F.add(rhs.get(w, F.zero), F.mul(c, cw))
                        if nv == 0:
                            rhs.pop(w, None)
                        else:
                            rhs[w] = nv
                if lhs != rhs:
                    raise ValueError(f"map not multiplicative at basis pair ({x},{y})")


def adapt_weights(algebra: Algebra, dim: int, action: list[list[list]]) -> Module:
    """Build a Module from raw action matrices by choosing a basis adapted
    to the idempotent projectors (which commute and sum to the identity)."""
    F = algebra.field
    # fast path: projectors already diagonal 0/1
    diagonal = True
    weights = [None] * dim
    for i in range(algebra.r):
        mat = action[i]
        for s in range(dim):
            for t in range(dim):
                v = mat[s][t]
                if s == t:
                    if v == F.one:
                        if weights[s] is not None:
                            diagonal = False
                        weights[s] = i
                    elif v != 0:
                        diagonal = False
                elif v != 0:
                    diagonal = False
            if not diagonal:
                break
        if not diagonal:
            break
    if diagonal and all(w is not None for w in weights):
        return Module(algebra, dim, action, weights)
    # general path: rows of each projector image give the adapted basis
    rows = []
    weights2: list[int] = []
    for i in range(algebra.r):
        rs = RowSpace(F)
        for row in action[i]:
            rs.add({c: x for c, x in enumerate(row) if x != 0})
        for row in rs.rows:
            vec = [F.zero] * dim
            for c, x in row.items():
                vec[c] = x
            rows.append(vec)
            weights2.append(i)
    if len(rows) != dim:
        raise ValueError("idempotent projector images do not fill the space")
    T = Matrix(F, rows)
    Tinv_rows = _invert_square(F, rows)
    if Tinv_rows is None:
        raise ValueError("adapted basis is not a basis")
    Tinv = Matrix(F, Tinv_rows)
    new_action = []
    for x in range(algebra.dim):
        new_action.append(T.mul(Matrix(F, action[x])).mul(Tinv).data)
    return Module(algebra, dim, new_action, weights2)


def restrict_along(f: AlgebraMap, m: Module) -> Module:
    """Pull back the module structure along an algebra map (checked)."""
    if m.algebra != f.target:
        raise ValueError("module is not over the map's target")
    f.check()
    F = m.field
    action = []
    for x in range(f.source.dim):
        mat = [[F.zero] * m.dim for _ in range(m.dim)]
        for z, c in f.images[x].items():
            Az = m.action[z]
            for s in range(m.dim):
                row = Az[s]
                ms = mat[s]
                for t in range(m.dim):
                    if row[t] != 0:
                        ms[t] = F.add(ms[t], F.mul(c, row[t]))
        action.append(mat)
    return adapt_weights(f.source, m.dim, action)


# --------------------------------------------------------------------------
# bimodule helpers and serialisation (homkit-module/1)
# --------------------------------------------------------------------------


def bimodule_restrict_right(b: Algebra, c: Algebra, m: Module) -> Module:
    """M_B: restrict a C-B-bimodule (module over tensor(op(c), b)) to B."""
    from .algebra import tensor, _tensor_pair_order
    T = tensor(opposite(c), b)
    if m.algebra != T:
        raise ValueError("not a module over tensor(opposite(c), b)")
    pairs = _tensor_pair_order(opposite(c), b)
    pidx = {p: k for k, p in enumerate(pairs)}
    images = []
    for y in range(b.dim):
        img: dict[int, object] = {}
        for i in range(c.r):
            img[pidx[(i, y)]] = b.field.one
        images.append(img)
    f = AlgebraMap(b, T, images)
    return restrict_along(f, m)


def bimodule_restrict_left(b: Algebra, c: Algebra, m: Module) -> Module:
    """_CM as a right module over opposite(C)."""
    from .algebra import tensor, _tensor_pair_order
    T = tensor(opposite(c), b)
    if m.algebra != T:
        raise ValueError("not a module over tensor(opposite(c), b)")
    pairs = _tensor_pair_order(opposite(c), b)
    pidx = {p: k for k, p in enumerate(pairs)}
    cop = opposite(c)
    images = []
    for x in range(c.dim):
        img: dict[int, object] = {}
        for j in range(b.r):
            img[pidx[(x, j)]] = b.field.one
        images.append(img)
    f = AlgebraMap(cop, T, images)
    return restrict_along(f, m)


def module_to_json(m: Module, algebra_ref: str | None = None) -> dict:
    """homkit-module/1 document; the algebra is inline unless a reference
    string (file path) is supplied."""
    F = m.field
    return {
        "format": "homkit-module/1",
        "algebra": algebra_ref if algebra_ref is not None else algebra_to_json(m.algebra),
        "dim": m.dim,
        "action": {m.algebra.labels[x]: [[F.format(v) for v in row] for row in m.action[x]]
                   for x in range(m.algebra.dim)},
    }


def module_from_json(doc: dict, algebra: Algebra | None = None) -> Module:
    if doc.get("format") != "homkit-module/1":
        raise ValueError(f"unsupported module format {doc.get('format')!r}")
    if algebra is None:
        ref = doc["algebra"]
        if not isinstance(ref, dict):
            raise ValueError("module document references an external algebra; "
                             "pass it explicitly")
        algebra = algebra_from_json(ref)
    F = algebra.field
    dim = int(doc["dim"])
    action = []
    act = doc["action"]
    for x in range(algebra.dim):
        label = algebra.labels[x]
        if label not in act:
            raise ValueError(f"missing action matrix for basis element {label!r}")
        mat = [[F.parse(v) for v in row] for row in act[label]]
        if len(mat) != dim or any(len(row) != dim for row in mat):
            raise ValueError(f"action matrix for {label!r} has wrong shape")
        action.append(mat)
    return adapt_weights(algebra, dim, action)
