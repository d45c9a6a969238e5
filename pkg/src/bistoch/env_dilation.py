"""Environmental dilations of stochastic matrices.

An environmental dilation represents an N x N stochastic matrix T by a
bi-stochastic matrix R acting on the product of the system with an
environment of size M: the first marginal of ``R (p (x) rho)`` equals
``T p`` for every distribution p.  Composite states (m, i) with system index
m and environment index i are flattened environment-major, ``flat(m, i) =
i*N + m``.

Two constructions are provided: a closed-form "noisy" dilation that works in
exact arithmetic, and a uni-stochastic dilation built from a unitary
completion of the isometry induced by a Kraus representation of T.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import core
from .coarse_grain import Partition, RightInverse, product_right_inverse
from .core import EXACT, FLOAT, ProbVec, StochMatrix
from .errors import (
    CompletionFailure,
    DimensionMismatch,
    DimensionTooSmall,
    IncompleteKrausSet,
    IndexOutOfRange,
    NotBiStochastic,
    NotSquare,
)

ORTHOGONALITY_TOL = 1e-12
GS_RESIDUAL_TOL = 1e-8


def flat_index(m, i, n):
    """Environment-major flat index of composite state (m, i)."""
    return i * n + m


@dataclass
class EnvDilation:
    """Environment triple (M, rho, R) dilating a stochastic matrix."""

    env_size: int
    rho: ProbVec
    matrix: StochMatrix

    @property
    def system_size(self):
        return self.matrix.rows // self.env_size


@dataclass
class KrausSet:
    """Real non-negative Kraus operators A_i with sum_i A_i^T A_i = 1."""

    n: int
    operators: list

    def completeness_defect(self):
        total = sum(a.T @ a for a in self.operators)
        return float(np.max(np.abs(total - np.eye(self.n))))


@dataclass
class UnitaryDilation:
    """Real orthogonal U on the composite space and its entrywise square R."""

    unitary: np.ndarray
    matrix: StochMatrix

    def orthogonality_defect(self):
        u = self.unitary
        return float(np.max(np.abs(u.T @ u - np.eye(u.shape[0]))))


def noisy_dilation(T):
    """The closed-form standard dilation with a maximally mixed off-block.

    With environment a copy of the system (M = N) and initial environment
    state delta_0, the dilating matrix is

        R[(m,i),(n,j)] = T[m,i] * delta(i,n)        if j == 0,
                         (1 - T[m,i]) / (N(N-1))    otherwise,

    which is bi-stochastic and satisfies sum_i R[(m,i),(n,0)] = T[m,n].
    Preserves the numeric mode of T.
    """
    core._require_left_stochastic(T)
    n = T.rows
    if n < 2:
        raise DimensionTooSmall("the noisy construction needs N >= 2")
    if T.mode == EXACT:
        noise = lambda v: (1 - Fraction(v)) / (n * (n - 1))
        one, zero = Fraction(1), Fraction(0)
    else:
        noise = lambda v: (1.0 - v) / (n * (n - 1))
        one, zero = 1.0, 0.0
    d = n * n
    data = [[zero] * d for _ in range(d)]
    for m in range(n):
        for i in range(n):
            row = flat_index(m, i, n)
            for k in range(n):
                for j in range(n):
                    col = flat_index(k, j, n)
                    if j == 0:
                        data[row][col] = T.a[m, i] * one if i == k else zero
                    else:
                        data[row][col] = noise(T.a[m, i])
    rho = ProbVec.point_mass(n, 0, mode=T.mode)
    return EnvDilation(env_size=n, rho=rho, matrix=StochMatrix(data, mode=T.mode))


def extract_dilated(R, zero_index, system_size=None, tol=core.DEFAULT_TOL):
    """Recover T[m,n] = sum_i R[(m,i),(n,zero_index)] from a dilation matrix.

    ``system_size`` defaults to sqrt(dim), the standard-dilation case of an
    environment the same size as the system.
    """
    if not R.is_square:
        raise NotSquare(f"{R.rows}x{R.cols}")
    report = core.validate(R, tol)
    if not report.bi:
        raise NotBiStochastic(
            f"column defect {report.max_column_defect}, row defect {report.max_row_defect}"
        )
    if system_size is None:
        system_size = math.isqrt(R.rows)
        if system_size * system_size != R.rows:
            raise DimensionMismatch("matrix size is not a perfect square; pass system_size")
    n = system_size
    if R.rows % n != 0:
        raise DimensionMismatch(f"size {R.rows} is not a multiple of system size {n}")
    m_env = R.rows // n
    if not 0 <= zero_index < m_env:
        raise IndexOutOfRange(f"zero_index {zero_index} outside environment of size {m_env}")
    data = [
        [sum(R.a[flat_index(m, i, n), flat_index(k, zero_index, n)] for i in range(m_env)) for k in range(n)]
        for m in range(n)
    ]
    return StochMatrix(data, mode=R.mode)


def verify_env_dilation(T, dilation, trials=20, tol=core.RESIDUAL_TOL, seed=0):
    """Check the defining marginal identity of an environmental dilation.

    Exact mode verifies sum_{ij} R[(m,i),(n,j)] rho[j] = T[m,n] symbolically,
    which is equivalent to the identity holding for every p.  Float mode
    checks all simplex vertices plus ``trials`` seeded pseudorandom points.
    """
    n = T.rows
    R, rho = dilation.matrix, dilation.rho
    m_env = dilation.env_size
    if R.rows != n * m_env or rho.n != m_env:
        raise DimensionMismatch("dilation dimensions disagree with T")
    if T.mode == EXACT and R.mode == EXACT:
        for m in range(n):
            for k in range(n):
                total = sum(
                    R.a[flat_index(m, i, n), flat_index(k, j, n)] * rho.a[j]
                    for i in range(m_env)
                    for j in range(m_env)
                )
                if total != T.a[m, k]:
                    return False
        return True
    Rf = R.to_float().a
    rho_f = rho.to_float().a
    Tf = T.to_float().a
    rng = np.random.default_rng(seed)
    points = [np.eye(n)[k] for k in range(n)]
    for _ in range(trials):
        raw = rng.random(n)
        points.append(raw / raw.sum())
    for p in points:
        lifted = np.outer(rho_f, p).reshape(-1)  # flat (m,i) = i*n + m
        evolved = Rf @ lifted
        marginal = evolved.reshape(m_env, n).sum(axis=0)
        if np.max(np.abs(marginal - Tf @ p)) > tol:
            return False
    return True


def as_coarse_graining(dilation):
    """View an environmental dilation as a dilation by coarse graining.

    Returns the first-marginal partition (class n holds the composite states
    (n, i)) together with the product right inverse built from rho, so that
    ``coarse_grain(R, partition, Y)`` recovers the dilated matrix.
    """
    n = dilation.system_size
    y = product_right_inverse(n, dilation.rho)
    return y.partition, y


def kraus_from_stochastic(T):
    """Kraus operators realizing T, one per source state.

    Operator A_i has single non-zero column i holding the entrywise square
    roots of column i of T; completeness follows from the column sums of T.
    The result is always float-mode (square roots are irrational in general).
    """
    core._require_left_stochastic(T)
    Tf = T.to_float().a
    n = T.rows
    operators = []
    for i in range(n):
        a = np.zeros((n, n))
        a[:, i] = np.sqrt(Tf[:, i])
        operators.append(a)
    return KrausSet(n=n, operators=operators)


def stochastic_from_kraus(kraus, tol=1e-10):
    """The stochastic matrix T[m,n] = sum_i A_i[m,n]^2 of a complete Kraus set."""
    defect = kraus.completeness_defect()
    if defect > tol:
        raise IncompleteKrausSet(defect)
    total = sum(a**2 for a in kraus.operators)
    return StochMatrix(np.clip(total, 0.0, None), mode=FLOAT)


def _orthonormal_completion(columns, dim):
    """Complete the given orthonormal columns to a basis by Gram-Schmidt.

    Candidates are the standard basis vectors in index order; each is
    orthogonalized twice against the accepted columns and kept when the
    residual norm stays above ``GS_RESIDUAL_TOL``.
    """
    basis = list(columns)
    for k in range(dim):
        if len(basis) == dim:
            break
        v = np.eye(dim)[k]
        for _ in range(2):
            for b in basis:
                v = v - (b @ v) * b
        norm = np.linalg.norm(v)
        if norm < GS_RESIDUAL_TOL:
            continue
        basis.append(v / norm)
    if len(basis) != dim:
        raise CompletionFailure(f"found only {len(basis)} of {dim} orthonormal columns")
    return basis


def unistochastic_dilation(T):
    """Standard dilation whose matrix is the entrywise square of an orthogonal U.

    Builds the N^2 x N isometry whose column n holds sqrt(T[m,n]) at the
    composite states (m, n), completes it to a real orthogonal matrix and
    squares the entries.  Float mode only.
    """
    core._require_left_stochastic(T)
    Tf = T.to_float().a
    n = T.rows
    d = n * n
    iso_columns = []
    for k in range(n):
        v = np.zeros(d)
        for m in range(n):
            v[flat_index(m, k, n)] = np.sqrt(Tf[m, k])
        iso_columns.append(v)
    basis = _orthonormal_completion(iso_columns, d)
    # column flat(n, 0) = n carries the isometry; the completed columns fill
    # the remaining environment states in flat order.
    u = np.column_stack(basis)
    r = StochMatrix(u**2, mode=FLOAT)
    return UnitaryDilation(unitary=u, matrix=r)


def unistochastic_env_dilation(T):
    """The unistochastic dilation packaged as an environment triple."""
    dil = unistochastic_dilation(T)
    n = T.rows
    return EnvDilation(env_size=n, rho=ProbVec.point_mass(n, 0, mode=FLOAT), matrix=dil.matrix)
