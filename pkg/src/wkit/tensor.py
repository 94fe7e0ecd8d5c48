"""Dense labeled tensor-space engine.

A LabeledTensor is a dense complex operator on an ordered list of labeled
N-dimensional spaces.  Composition auto-embeds operands on the union of
their labels, so multi-space identities can be written the way they are
stated: products of two-space R-factors, projectors on subsets of spaces,
partial traces and transposes over named spaces.

All operations allocate fresh results; nothing here mutates shared state.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .errors import DimensionGuardExceeded, LabelMismatch

_DEFAULT_MAX_DIM = 10_000


def _max_dim() -> int:
    return int(os.environ.get("WKIT_MAX_DIM", _DEFAULT_MAX_DIM))


def _guard(dim: int):
    if dim > _max_dim():
        raise DimensionGuardExceeded(
            f"dense product of dimension {dim} exceeds guard {_max_dim()} "
            f"(override with WKIT_MAX_DIM)"
        )


@dataclass(frozen=True)
class LabeledTensor:
    """Dense operator on ordered labeled spaces, each of dimension N."""

    labels: tuple
    N: int
    data: np.ndarray  # shape (N^k, N^k)

    def __post_init__(self):
        k = len(self.labels)
        if len(set(self.labels)) != k:
            raise LabelMismatch(f"duplicate labels in {self.labels}")
        if self.data.shape != (self.N**k, self.N**k):
            raise LabelMismatch(
                f"data shape {self.data.shape} does not match {k} spaces of dim {self.N}"
            )

    # -- constructors -------------------------------------------------------

    @classmethod
    def identity(cls, labels, N: int) -> "LabeledTensor":
        labels = tuple(labels)
        return cls(labels, N, np.eye(N ** len(labels), dtype=complex))

    @classmethod
    def from_matrix(cls, matrix, labels, N: int) -> "LabeledTensor":
        return cls(tuple(labels), N, np.asarray(matrix, dtype=complex))

    # -- label plumbing -----------------------------------------------------

    def reorder(self, new_labels) -> "LabeledTensor":
        """Same operator with spaces listed in a different order."""
        new_labels = tuple(new_labels)
        if set(new_labels) != set(self.labels):
            raise LabelMismatch(f"cannot reorder {self.labels} as {new_labels}")
        if new_labels == self.labels:
            return self
        k = len(self.labels)
        perm = [self.labels.index(l) for l in new_labels]
        t = self.data.reshape([self.N] * (2 * k))
        t = t.transpose(perm + [k + p for p in perm])
        return LabeledTensor(new_labels, self.N, t.reshape(self.data.shape))

    def embed(self, target_labels) -> "LabeledTensor":
        """Tensor with the identity on every target space not already present."""
        target_labels = tuple(target_labels)
        if not set(self.labels) <= set(target_labels):
            raise LabelMismatch(f"labels {self.labels} not a subset of {target_labels}")
        extra = [l for l in target_labels if l not in self.labels]
        if not extra:
            return self.reorder(target_labels)
        _guard(self.N ** len(target_labels))
        big = np.kron(self.data, np.eye(self.N ** len(extra), dtype=complex))
        return LabeledTensor(self.labels + tuple(extra), self.N, big).reorder(target_labels)

    def _aligned(self, other: "LabeledTensor"):
        if self.N != other.N:
            raise LabelMismatch("operands have different space dimensions")
        union = self.labels + tuple(l for l in other.labels if l not in self.labels)
        return self.embed(union), other.embed(union)

    # -- algebra ------------------------------------------------------------

    def __matmul__(self, other: "LabeledTensor") -> "LabeledTensor":
        if self.N != other.N:
            raise LabelMismatch("operands have different space dimensions")
        # products with a factor supported on a few spaces contract far
        # cheaper through tensordot than through embed-to-union matmul
        if set(other.labels) < set(self.labels):
            return self._mul_small_right(other)
        if set(self.labels) < set(other.labels):
            return other._mul_small_left(self)
        a, b = self._aligned(other)
        return LabeledTensor(a.labels, a.N, a.data @ b.data)

    def _mul_small_right(self, other: "LabeledTensor") -> "LabeledTensor":
        """self @ other where other's labels are a strict subset of self's."""
        N = self.N
        k, m = len(self.labels), len(other.labels)
        t = self.data.reshape([N] * (2 * k))
        o = other.data.reshape([N] * (2 * m))
        pos = [self.labels.index(l) for l in other.labels]
        res = np.tensordot(t, o, axes=([k + p for p in pos], list(range(m))))
        rem = [i for i in range(k) if i not in pos]
        perm = list(range(k))
        for i in range(k):
            if i in pos:
                perm.append(k + len(rem) + pos.index(i))
            else:
                perm.append(k + rem.index(i))
        return LabeledTensor(self.labels, N, res.transpose(perm).reshape(self.data.shape))

    def _mul_small_left(self, other: "LabeledTensor") -> "LabeledTensor":
        """other @ self where other's labels are a strict subset of self's."""
        N = self.N
        k, m = len(self.labels), len(other.labels)
        t = self.data.reshape([N] * (2 * k))
        o = other.data.reshape([N] * (2 * m))
        pos = [self.labels.index(l) for l in other.labels]
        res = np.tensordot(o, t, axes=(list(range(m, 2 * m)), pos))
        rem = [i for i in range(k) if i not in pos]
        perm = []
        for i in range(k):
            if i in pos:
                perm.append(pos.index(i))
            else:
                perm.append(m + rem.index(i))
        perm += [m + len(rem) + j for j in range(k)]
        return LabeledTensor(self.labels, N, res.transpose(perm).reshape(self.data.shape))

    def __add__(self, other: "LabeledTensor") -> "LabeledTensor":
        a, b = self._aligned(other)
        return LabeledTensor(a.labels, a.N, a.data + b.data)

    def __sub__(self, other: "LabeledTensor") -> "LabeledTensor":
        a, b = self._aligned(other)
        return LabeledTensor(a.labels, a.N, a.data - b.data)

    def __mul__(self, scalar) -> "LabeledTensor":
        return LabeledTensor(self.labels, self.N, self.data * complex(scalar))

    __rmul__ = __mul__

    def inv(self) -> "LabeledTensor":
        return LabeledTensor(self.labels, self.N, np.linalg.inv(self.data))

    def norm(self) -> float:
        return float(np.linalg.norm(self.data))

    def cond(self) -> float:
        return float(np.linalg.cond(self.data))

    # -- contractions -------------------------------------------------------

    def partial_trace(self, traced_labels) -> "LabeledTensor":
        traced = tuple(traced_labels)
        for l in traced:
            if l not in self.labels:
                raise LabelMismatch(f"label {l!r} not present in {self.labels}")
        keep = tuple(l for l in self.labels if l not in traced)
        src = self.reorder(keep + traced)
        nk, nt = len(keep), len(traced)
        Dk, Dt = self.N**nk, self.N**nt
        t = src.data.reshape(Dk, Dt, Dk, Dt)
        return LabeledTensor(keep, self.N, np.einsum("aibi->ab", t))

    def trace(self) -> complex:
        return complex(np.trace(self.data))

    def partial_transpose(self, labels) -> "LabeledTensor":
        """Transpose on the named space(s), identity on the rest."""
        if not isinstance(labels, (list, tuple)):
            labels = (labels,)
        for l in labels:
            if l not in self.labels:
                raise LabelMismatch(f"label {l!r} not present in {self.labels}")
        k = len(self.labels)
        t = self.data.reshape([self.N] * (2 * k))
        axes = list(range(2 * k))
        for l in labels:
            i = self.labels.index(l)
            axes[i], axes[k + i] = axes[k + i], axes[i]
        t = t.transpose(axes)
        return LabeledTensor(self.labels, self.N, t.reshape(self.data.shape))


# ---------------------------------------------------------------------------
# Antisymmetrizers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Antisymmetrizer:
    """Projector A_k onto the fully antisymmetric subspace of (C^N)^{x k}."""

    k: int
    N: int
    matrix: np.ndarray

    @property
    def rank(self) -> int:
        return math.comb(self.N, self.k)

    def on(self, labels) -> LabeledTensor:
        labels = tuple(labels)
        if len(labels) != self.k:
            raise LabelMismatch(f"A_{self.k} needs {self.k} labels, got {labels}")
        return LabeledTensor(labels, self.N, self.matrix)


def _perm_sign(perm) -> int:
    inv = sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])
    return -1 if inv % 2 else 1


def permutation_operator(perm, N: int) -> np.ndarray:
    """Operator permuting k tensor factors: factor j of the output is
    factor perm[j] of the input."""
    k = len(perm)
    dims = [N] * k
    size = N**k
    src = np.arange(size)
    multi = np.array(np.unravel_index(src, dims))  # (k, size)
    dst = np.ravel_multi_index([multi[p] for p in perm], dims)
    P = np.zeros((size, size))
    P[dst, src] = 1.0
    return P


def antisymmetrizer(k: int, N: int) -> Antisymmetrizer:
    """A_k = (1/k!) sum_{sigma in S_k} sign(sigma) P_sigma; A_1 = identity."""
    if not 1 <= k <= N:
        raise ValueError(f"antisymmetrizer needs 1 <= k <= N, got k={k}, N={N}")
    size = N**k
    A = np.zeros((size, size))
    for perm in permutations(range(k)):
        A += _perm_sign(perm) * permutation_operator(perm, N)
    return Antisymmetrizer(k, N, A / math.factorial(k))


# ---------------------------------------------------------------------------
# Fused R-products and the identities they satisfy
# ---------------------------------------------------------------------------

def row_labels(k: int):
    return tuple(("r", i) for i in range(1, k + 1))


def col_labels(k: int):
    return tuple(("c", j) for j in range(1, k + 1))


def fused_R(x: complex, k: int, kprime: int, params, policy=None,
            inverse: bool = False, c_shift: complex = 0.0,
            rows=None, cols=None) -> LabeledTensor:
    """Ordered fused product of R-hat factors coupling a k-block of row
    spaces to a k'-block of column spaces:

        prod_{j=1..k'} [ prod_{i=k..1} Rhat_{r_i, c_j}(q^{e_i - e_j'} x) ]

    with e_i, e_j' the centered half-integer ladders and the j = 1 block
    leftmost.  `c_shift` multiplies the argument by q^{c_shift} through the
    additive spectral variable (used for the critical-level sweeps).
    Custom space labels may be passed as `rows` / `cols`.
    """
    from .rmatrix import RMatrixFactory

    fac = RMatrixFactory(params, policy)
    rows = tuple(rows) if rows is not None else row_labels(k)
    cols = tuple(cols) if cols is not None else col_labels(kprime)
    if len(rows) != k or len(cols) != kprime:
        raise LabelMismatch(f"need {k} row and {kprime} column labels")
    all_labels = rows + cols
    _guard(params.N ** len(all_labels))
    xi_x = fac.xi_of(x) + c_shift * params.zeta
    out = LabeledTensor.identity(all_labels, params.N)
    for j in range(1, kprime + 1):
        ej = (2 * j - kprime - 1) / 2.0
        for i in range(k, 0, -1):
            ei = (2 * i - k - 1) / 2.0
            out = out @ fac.rhat_tensor(xi_x + (ei - ej) * params.zeta,
                                        (rows[i - 1], cols[j - 1]))
    if inverse:
        return out.inv()
    return out


def check_fusion_identities(k: int, params, x: complex, policy=None,
                            kprime: int | None = None,
                            tolerance: float = 1e-8, suite: str = "fusion-identities"):
    """Residuals of the one-sided projector identities X A = A X A for the
    R-hat chain, its t0-transposed-inverse chain, its inverse chain, and the
    fused block product with the row and column antisymmetrizers."""
    import time

    from .rmatrix import RMatrixFactory
    from .reports import CheckReport

    if kprime is None:
        kprime = k
    N = params.N
    if not (2 <= k <= N):
        raise ValueError(f"need 2 <= k <= N, got k={k}")
    fac = RMatrixFactory(params, policy)
    zeta = params.zeta
    xi_x = fac.xi_of(x)
    reports = []

    def report(name, identity, X: LabeledTensor, A: LabeledTensor):
        t0 = time.perf_counter()
        lhs = X @ A
        rhs = A @ lhs
        res = (lhs - rhs).norm() / max(lhs.norm(), 1e-300)
        reports.append(CheckReport(
            suite=suite, check=name, identity=identity,
            inputs={"N": N, "k": k, "kprime": kprime, "x": x,
                    "q": params.q, "p": params.p},
            residual=res, tolerance=tolerance,
            wall_ms=(time.perf_counter() - t0) * 1e3,
        ))

    # chains on aux spaces 1..k against a common space 0
    chain_labels = tuple(range(1, k + 1)) + ("0",)
    Ak_chain = antisymmetrizer(k, N).on(tuple(range(1, k + 1)))

    X = LabeledTensor.identity(chain_labels, N)
    for i in range(1, k + 1):
        X = X @ fac.rhat_tensor(xi_x - (i - 1) * zeta, (i, "0"))
    report("chain", "Rhat_{1,0}(x)...Rhat_{k,0}(x q^{1-k}) A_k = A_k (...) A_k", X, Ak_chain)

    X = LabeledTensor.identity(chain_labels, N)
    for i in range(1, k + 1):
        X = X @ fac.rhat_tensor(xi_x - (i - 1) * zeta, (i, "0")).inv().partial_transpose("0")
    report("chain_t0_inv",
           "(Rhat^{-1})^{t0} descending-argument chain, one-sided projector", X, Ak_chain)

    X = LabeledTensor.identity(chain_labels, N)
    for i in range(1, k + 1):
        X = X @ fac.rhat_tensor(xi_x + (i - 1) * zeta, (i, "0")).inv()
    report("chain_inv",
           "Rhat^{-1}_{1,0}(x)...Rhat^{-1}_{k,0}(x q^{k-1}) A_k = A_k (...) A_k", X, Ak_chain)

    RR = fused_R(x, k, kprime, params, policy)
    rows, cols = row_labels(k), col_labels(kprime)
    Ar = antisymmetrizer(k, N).on(rows)
    Ac = antisymmetrizer(kprime, N).on(cols)
    report("fused_rows", "fused R block with row antisymmetrizer", RR, Ar)
    report("fused_cols", "fused R block with column antisymmetrizer", RR, Ac)
    if RR.data.shape[0] <= 1536:  # dense inversion budget
        RRi = RR.inv()
        report("fused_inv_rows", "inverse fused R block with row antisymmetrizer", RRi, Ar)
        report("fused_inv_cols", "inverse fused R block with column antisymmetrizer", RRi, Ac)
    return reports


def monodromy_M(x: complex, k: int, kprime: int, params, c: complex,
                policy=None) -> LabeledTensor:
    """The combination M(x) = (R(q^c x)^T (R(x)^{-1} R(q^{-c-N} x) R(x)^{-1})^T)^T
    of fused blocks, T transposing the k row spaces.  Equals the identity at
    the critical value c = -N by fused crossing-unitarity."""
    N = params.N
    rows = row_labels(k)
    R0i = fused_R(x, k, kprime, params, policy).inv()
    Rc = fused_R(x, k, kprime, params, policy, c_shift=c)
    Rm = fused_R(x, k, kprime, params, policy, c_shift=-c - N)
    inner = (R0i @ Rm @ R0i).partial_transpose(rows)
    return (Rc.partial_transpose(rows) @ inner).partial_transpose(rows)


def check_M_derivative(x: complex, k: int, kprime: int, params, step: float = 1e-4,
                       policy=None, tolerance: float = 1e-5,
                       suite: str = "fusion-identities"):
    """Central difference of M(x) in the central charge at c = -N.

    Both dM/dc = 0 and M|_{c=-N} = identity are asserted; the second enters
    the returned inputs so a wrong critical value cannot silently pass."""
    import time

    from .reports import CheckReport

    t0 = time.perf_counter()
    N = params.N
    Mc = monodromy_M(x, k, kprime, params, c=-N, policy=policy)
    ident_res = (Mc - LabeledTensor.identity(Mc.labels, params.N)).norm() / max(Mc.norm(), 1e-300)
    Mp = monodromy_M(x, k, kprime, params, c=-N + step, policy=policy)
    Mm = monodromy_M(x, k, kprime, params, c=-N - step, policy=policy)
    deriv = (Mp - Mm).norm() / (2 * step) / max(Mc.norm(), 1e-300)
    return CheckReport(
        suite=suite, check=f"M_derivative(k={k},k'={kprime})",
        identity="d/dc M(x) = 0 and M(x) = 1 at the critical level c = -N",
        inputs={"N": N, "k": k, "kprime": kprime, "x": x, "q": params.q,
                "p": params.p, "step": step, "identity_residual": ident_res},
        residual=max(deriv, ident_res),
        tolerance=tolerance,
        wall_ms=(time.perf_counter() - t0) * 1e3,
    )
