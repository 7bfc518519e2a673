"""Eagon-Northcott complex of the 2 x r matrix [[X_1 .. X_r], [a_1 .. a_r]].

The complex lives over S = R[X_1..X_r].  C_0 = S and for 1 <= n <= r-1

    C_n = K_{n+1} (x) U_{n-1},   basis  T_I (x) Y1^v1 Y2^v2,  |I| = n+1, v1+v2 = n-1,

with X-degree v1 + 1.  The differential sends Y_j-exponents down by one
through the Koszul differential on X (j = 1) or on a (j = 2).

Matrices are stored with rows indexed by the target basis and columns by
the source basis, so d_n o d_{n+1} is the plain matrix product.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Sequence

from .errors import HypothesisError, InputError, InternalInconsistency
from .polyring import Polynomial, RingDescriptor, det_exact

Matrix = list  # list[list[Polynomial]]


@dataclass(frozen=True)
class GradedFreeModule:
    shifts: tuple
    basis_labels: tuple  # (subset, (v1, v2)); C_0 uses ((), ())

    @property
    def rank(self) -> int:
        return len(self.basis_labels)


@dataclass
class GradedMap:
    matrix: Matrix
    source: GradedFreeModule
    target: GradedFreeModule

    @property
    def shape(self) -> tuple:
        return (len(self.matrix), len(self.matrix[0]) if self.matrix else 0)


@dataclass
class ENComplex:
    r: int
    a: tuple          # the parameters, embedded in S
    ring: RingDescriptor  # S
    base_ring: RingDescriptor
    modules: list     # C_0 .. C_{r-1}
    maps: list        # d_1 .. d_{r-1}
    tM: Matrix = field(default_factory=list)

    def X(self, j: int) -> Polynomial:
        return self.ring.var(self.base_ring.d + j)


def x_ring(base: RingDescriptor, r: int) -> RingDescriptor:
    return base.extend([f"X{j}" for j in range(1, r + 1)])


def _validate(r: int, a: Sequence[Polynomial]) -> RingDescriptor:
    if r < 2:
        raise InputError("the Eagon-Northcott construction needs r >= 2")
    if len(a) != r:
        raise InputError(f"expected {r} parameters, got {len(a)}")
    base = a[0].ring
    if any(p.ring != base for p in a):
        raise InputError("parameters from different rings")
    return base


def _module(r: int, n: int) -> GradedFreeModule:
    if n == 0:
        return GradedFreeModule((0,), (((), ()),))
    # Y1-exponent outer; subsets ordered by their complements, so that in
    # C_{r-2} the omitted index j runs upward inside each Y1-block
    full = set(range(1, r + 1))
    subsets = sorted(combinations(range(1, r + 1), n + 1), key=lambda s: tuple(sorted(full - set(s))))
    labels = [(subset, (v1, n - 1 - v1)) for v1 in range(n) for subset in subsets]
    return GradedFreeModule(tuple(v1 + 1 for _, (v1, _) in labels), tuple(labels))


def _koszul(subset: tuple, coeffs: Sequence[Polynomial]):
    """Terms (sign * c_{i_k}, subset without i_k) of the Koszul boundary of T_subset."""
    for k, i in enumerate(subset):
        c = coeffs[i - 1]
        yield (c if k % 2 == 0 else -c), subset[:k] + subset[k + 1:]


def build_en_complex(r: int, a: Sequence[Polynomial]) -> ENComplex:
    base = _validate(r, a)
    S = x_ring(base, r)
    a_S = tuple(p.embed(S) for p in a)
    X = tuple(S.var(base.d + j) for j in range(r))
    modules = [_module(r, n) for n in range(r)]
    zero = S.zero()
    maps = []
    # d_1: T_i T_j -> X_i a_j - X_j a_i
    src = modules[1]
    d1 = [[det_exact([[X[i - 1], X[j - 1]], [a_S[i - 1], a_S[j - 1]]]) for (i, j), _ in src.basis_labels]]
    maps.append(GradedMap(d1, src, modules[0]))
    for n in range(2, r):
        src, tgt = modules[n], modules[n - 1]
        pos = {lab: k for k, lab in enumerate(tgt.basis_labels)}
        mat = [[zero] * src.rank for _ in range(tgt.rank)]
        for col, (subset, (v1, v2)) in enumerate(src.basis_labels):
            for which, coeffs, nv in ((1, X, (v1 - 1, v2)), (2, a_S, (v1, v2 - 1))):
                if nv[which - 1] < 0:
                    continue
                for c, face in _koszul(subset, coeffs):
                    row = pos[(face, nv)]
                    mat[row][col] = mat[row][col] + c
        maps.append(GradedMap(mat, src, tgt))
    cx = ENComplex(r, a_S, S, base, modules, maps)
    if r >= 3:
        cx.tM = transpose(maps[-1].matrix)
    return cx


def transpose(M: Matrix) -> Matrix:
    return [list(col) for col in zip(*M)] if M else []


def matmul(A: Matrix, B: Matrix, ring: RingDescriptor) -> Matrix:
    if A and B and len(A[0]) != len(B):
        raise InputError("matrix shapes do not compose")
    out = []
    for row in A:
        nz = [(k, e) for k, e in enumerate(row) if e]
        out_row = []
        for j in range(len(B[0]) if B else 0):
            acc = ring.zero()
            for k, e in nz:
                b = B[k][j]
                if b:
                    acc = acc + e * b
            out_row.append(acc)
        out.append(out_row)
    return out


def last_differential(r: int, a: Sequence[Polynomial]) -> Matrix:
    """The transposed last differential, written down directly as a band matrix.

    Row i (0 <= i <= r-2) carries the alternating a-band in column block i
    and the alternating X-band in block i-1; each block has r columns.
    """
    if r < 3:
        raise InputError("the last differential band matrix needs r >= 3")
    base = _validate(r, a)
    S = x_ring(base, r)
    a_band = [p.embed(S) if j % 2 == 0 else -p.embed(S) for j, p in enumerate(a)]
    x_band = [S.var(base.d + j) if j % 2 == 0 else -S.var(base.d + j) for j in range(r)]
    zero = S.zero()
    rows = []
    for i in range(r - 1):
        row = [zero] * (r * (r - 2))
        if i <= r - 3:
            row[i * r:(i + 1) * r] = a_band
        if i >= 1:
            row[(i - 1) * r:i * r] = x_band
        rows.append(row)
    return rows


@dataclass(frozen=True)
class CanonicalPresentation:
    generator_shifts: tuple   # S(-(r-1)) + ... + S(-1)
    relation_shifts: tuple    # S(-(r-1))^r + ... + S(-2)^r
    relations: tuple          # the (r-1) x r(r-2) relation matrix
    type: int


def _is_nonunit(p: Polynomial) -> bool:
    return not p.constant_term()


def canonical_presentation(r: int, a: Sequence[Polynomial]) -> CanonicalPresentation:
    if r < 3:
        raise InputError("canonical module presentation is tabulated for r >= 3")
    cx = build_en_complex(r, a)
    tM = cx.tM
    for row in tM:
        for e in row:
            if e and not _is_nonunit(e):
                raise HypothesisError(f"presentation is not minimal: unit entry {e}")
    gen_shifts = tuple(range(r - 1, 0, -1))
    rel_shifts = tuple(s for s in range(r - 1, 1, -1) for _ in range(r))
    # degree of entry (i, col) = relation shift - generator shift; check against X-degree
    xs = range(cx.base_ring.d, cx.ring.d)
    for i, row in enumerate(tM):
        for col, e in enumerate(row):
            if e and e.partial_degree(xs) != {rel_shifts[col] - gen_shifts[i]}:
                raise InternalInconsistency(f"entry ({i}, {col}) of the presentation is not homogeneous")
    return CanonicalPresentation(gen_shifts, rel_shifts, tuple(tuple(row) for row in tM), len(gen_shifts))


@dataclass
class ComplexReport:
    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks[name] = passed
        if not passed:
            self.failures.append(f"{name}: {detail}" if detail else name)


def verify_complex(c: ENComplex) -> ComplexReport:
    rep = ComplexReport()
    S = c.ring
    xs = range(c.base_ring.d, S.d)
    for n, M in enumerate(c.maps, start=1):
        rows, cols = M.shape
        if (rows, cols) != (M.target.rank, M.source.rank):
            rep.record(f"shape d{n}", False, f"{(rows, cols)}")
        want = comb(c.r, n + 1) * n
        rep.record(f"rank C{n}", M.source.rank == want, f"{M.source.rank} != {want}")
        bad = [(i, j) for i in range(rows) for j in range(cols)
               if M.matrix[i][j] and M.matrix[i][j].partial_degree(xs) != {M.source.shifts[j] - M.target.shifts[i]}]
        rep.record(f"homogeneous d{n}", not bad, f"entries {bad[:3]}")
    for n in range(1, len(c.maps)):
        prod = matmul(c.maps[n - 1].matrix, c.maps[n].matrix, S)
        nz = [(i, j) for i, row in enumerate(prod) for j, e in enumerate(row) if e]
        rep.record(f"d{n} o d{n + 1} = 0", not nz, f"nonzero at {nz[:3]}")
    X = [c.X(j) for j in range(c.r)]
    minors = {det_exact([[X[i], X[j]], [c.a[i], c.a[j]]]) for i, j in combinations(range(c.r), 2)}
    entries = {e for e in c.maps[0].matrix[0]}
    up_to_sign = {e for e in entries} | {-e for e in entries}
    rep.record("d1 image = 2x2 minors", all(m in up_to_sign for m in minors) and
               all(e in minors or -e in minors for e in entries))
    if c.r >= 3:
        band = last_differential(c.r, [p for p in _unembed(c)])
        rep.record("band matrix matches last differential", band == c.tM)
    return rep


def _unembed(c: ENComplex) -> list:
    n = c.base_ring.d
    return [Polynomial(c.base_ring, {m[:n]: v for m, v in p.terms.items()}, _clean=True) for p in c.a]


def specialize_d1(c: ENComplex) -> list:
    """d_1 with X_j replaced by a_j; all entries vanish."""
    images = {c.base_ring.d + j: c.a[j] for j in range(c.r)}
    return [e.substitute(images) for e in c.maps[0].matrix[0]]
