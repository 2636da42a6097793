"""Finite matrix representations of the deformed oscillator algebras.

Single-mode families (VPJC, PVC, CKN) are represented on a truncated ladder
basis |0>, ..., |dim-1> with

    c |n> = sqrt(g_n) |n-1>,      c* |n> = sqrt(g_{n+1}) |n+1>,

where g is the model's closed-form spectrum.  Whenever some g_n is negative
(VPJC with q > 1) the transition amplitude is set to zero and the level is
recorded as a norm violation, so the pathology stays observable as data and
the matrices stay real.

The multimode FN family lives on the full 2**d occupation basis.  No unique
construction is forced by the defining relations, so this module picks the
minimal one: annihilating mode i of a state with total occupation N carries
the fermionic sign (-1)**(number of occupied modes before i) and the
amplitude q**((N-1)/2); creation is the transpose, i.e. it carries
q**(N/2) onto a state of occupation N.  The convention is not claimed to be
canonical -- `check_algebra` audits every defining relation against it.

Truncation policy: on a truncated single-mode ladder the relation involving
c c* cannot hold on the top state, so that relation is evaluated only on
input states n <= dim - 2 and the evaluated boundary is reported.  The CKN
ladder (dim = 2) is exact because its level-2 spectrum value vanishes, and
the multimode FN representation is exact as built.

CKN rescaling: the weighted operator f = q**(N/2) c (weight applied after
annihilation) satisfies the undeformed relations f f* + f* f = 1 and
f**2 = 0 on the two-state space, which exhibits the isomorphism between the
q-deformed two-level algebra and an ordinary fermion mode.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .models import Model, NonNormalizableStateError, require_positive_q
from .spectra import basic_number

_SINGLE_MODE = (Model.VPJC, Model.PVC, Model.CKN)

MAX_FN_MODES = 12  # 2**12 basis states; dense matrices stay manageable


@dataclass(frozen=True)
class OperatorSet:
    """Dense matrices for the ladder operators of one representation.

    `annihilators` holds one matrix per mode (a single entry for the
    one-mode families); `creators` are their exact transposes.  `number_op`
    is the diagonal (total) occupation counter, not the deformed one.
    """

    model: Model
    q: float
    dim: int
    annihilators: tuple
    creators: tuple
    number_op: np.ndarray
    basis_labels: tuple
    norm_violations: tuple = ()

    @property
    def n_modes(self) -> int:
        return len(self.annihilators)

    @property
    def annihilator(self) -> np.ndarray:
        if self.n_modes != 1:
            raise ValueError("annihilator is only defined for single-mode sets")
        return self.annihilators[0]

    @property
    def creator(self) -> np.ndarray:
        if self.n_modes != 1:
            raise ValueError("creator is only defined for single-mode sets")
        return self.creators[0]


@dataclass(frozen=True)
class AlgebraReport:
    """Max-norm residuals of the defining relations plus the norm audit."""

    relation_residuals: dict
    norm_violations: tuple
    truncation_boundary: int

    @property
    def max_residual(self) -> float:
        return max(self.relation_residuals.values())


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _maxabs(m: np.ndarray) -> float:
    return float(np.max(np.abs(m))) if m.size else 0.0


def build_single_mode(model: Model, q: float, dim: int) -> OperatorSet:
    """Truncated ladder representation for the VPJC, PVC or CKN family."""
    if model not in _SINGLE_MODE:
        raise ValueError(f"single-mode construction applies to {_SINGLE_MODE}")
    require_positive_q(q)
    if dim != int(dim) or dim < 2:
        raise ValueError(f"dim must be an integer >= 2, got {dim!r}")
    dim = int(dim)
    if model is Model.CKN and dim != 2:
        raise ValueError("the CKN Fock space has exactly two states (dim = 2)")

    g = [basic_number(model, n, q) for n in range(dim)]
    violations = tuple((n, g[n]) for n in range(dim) if g[n] < 0.0)
    c = np.zeros((dim, dim))
    for n in range(1, dim):
        if g[n] >= 0.0:
            c[n - 1, n] = math.sqrt(g[n])
    cdag = c.T.copy()
    number_op = np.diag(np.arange(dim, dtype=float))
    return OperatorSet(
        model=model,
        q=float(q),
        dim=dim,
        annihilators=(_freeze(c),),
        creators=(_freeze(cdag),),
        number_op=_freeze(number_op),
        basis_labels=tuple(range(dim)),
        norm_violations=violations,
    )


def build_fn_multimode(d: int, q: float) -> OperatorSet:
    """FN representation on the 2**d occupation basis |n_1 ... n_d>, n_i in {0,1}."""
    require_positive_q(q)
    if d != int(d) or not 1 <= d <= MAX_FN_MODES:
        raise ValueError(f"mode count must lie in 1..{MAX_FN_MODES}, got {d!r}")
    d = int(d)
    states = list(itertools.product((0, 1), repeat=d))
    index = {s: k for k, s in enumerate(states)}
    dim = len(states)

    annihilators = []
    for i in range(d):
        c = np.zeros((dim, dim))
        for k, s in enumerate(states):
            if s[i] == 0:
                continue
            total = sum(s)
            sign = -1.0 if sum(s[:i]) % 2 else 1.0
            target = list(s)
            target[i] = 0
            c[index[tuple(target)], k] = sign * q ** ((total - 1) / 2.0)
        annihilators.append(_freeze(c))
    creators = tuple(_freeze(c.T.copy()) for c in annihilators)
    number_op = np.diag(np.array([float(sum(s)) for s in states]))
    return OperatorSet(
        model=Model.FN,
        q=float(q),
        dim=dim,
        annihilators=tuple(annihilators),
        creators=creators,
        number_op=_freeze(number_op),
        basis_labels=tuple(states),
        norm_violations=(),
    )


def spectrum_of_number_operator(ops: OperatorSet) -> np.ndarray:
    """Diagonal of c*c (single mode) or of the summed c_i* c_i (multimode)."""
    total = np.zeros((ops.dim, ops.dim))
    for c, cdag in zip(ops.annihilators, ops.creators):
        total += cdag @ c
    return np.diag(total).copy()


def _scaled(residual: float, *terms) -> float:
    """Residual divided by the largest term magnitude entering the relation,
    floored at 1.  Order-unity spectra keep absolute semantics; the growing
    PVC/CKN spectra (entries up to q**-(dim-1)) are judged at their own scale."""
    return residual / max(1.0, *(_maxabs(t) for t in terms))


def check_algebra(ops: OperatorSet) -> AlgebraReport:
    """Evaluate every defining relation of the model as a max-norm residual.

    Residuals are scale-normalized via `_scaled`.  Single-mode relations
    involving c c* are evaluated only on input states below the truncation
    boundary (except CKN, whose two states close exactly); the commutation
    relations with the number operator hold on the full space.
    """
    if ops.model is Model.FN:
        residuals = _fn_relation_residuals(
            ops.annihilators, ops.creators, ops.q, np.diag(ops.number_op)
        )
        boundary = ops.dim - 1
        return AlgebraReport(residuals, ops.norm_violations, boundary)

    c = ops.annihilator
    cdag = ops.creator
    q = ops.q
    dim = ops.dim
    n_op = ops.number_op
    eye = np.eye(dim)
    levels = np.arange(dim, dtype=float)

    lower = c @ cdag
    raise_term = cdag @ c
    if ops.model is Model.VPJC:
        rhs = eye
        coeff = q
        cols = dim - 1
    elif ops.model is Model.PVC:
        rhs = np.diag(q**-levels)
        coeff = q
        cols = dim - 1
    else:  # CKN: exact on its two states because the level-2 value vanishes
        rhs = np.diag(q**-levels)
        coeff = 1.0 / q
        cols = dim
    defining = lower + coeff * raise_term - rhs

    residuals = {
        "deformed_anticommutation": _scaled(
            _maxabs(defining[:, :cols]), lower, coeff * raise_term, rhs
        ),
        "number_shift_c": _scaled(_maxabs(n_op @ c - c @ n_op + c), n_op @ c, c),
        "number_shift_cdag": _scaled(
            _maxabs(n_op @ cdag - cdag @ n_op - cdag), n_op @ cdag, cdag
        ),
    }
    if ops.model is Model.CKN:
        residuals["c_squared"] = _maxabs(c @ c)
        residuals["cdag_squared"] = _maxabs(cdag @ cdag)
    return AlgebraReport(residuals, ops.norm_violations, cols - 1)


def _fn_relation_residuals(cs, cdags, q, number_diag) -> dict:
    dim = cs[0].shape[0]
    q_pow = np.diag(q**number_diag)
    n_op = np.diag(number_diag)
    eye = np.eye(dim)
    worst_cross = 0.0
    worst_pair = 0.0
    for i, ci in enumerate(cs):
        for j, cdj in enumerate(cdags):
            rel = ci @ cdj + q * (cdj @ ci)
            if i == j:
                rel = rel - q_pow
            worst_cross = max(
                worst_cross, _scaled(_maxabs(rel), ci @ cdj, q * (cdj @ ci), q_pow)
            )
            cj = cs[j]
            worst_pair = max(
                worst_pair, _scaled(_maxabs(ci @ cj + cj @ ci), ci @ cj)
            )
    worst_shift = max(
        _scaled(_maxabs(cj @ n_op - (n_op + eye) @ cj), cj @ n_op, cj) for cj in cs
    )
    return {
        "deformed_anticommutation": worst_cross,
        "double_annihilation": worst_pair,
        "number_shift": worst_shift,
    }


def covariance_check(d: int, q: float, transform, unitary_tol: float = 1e-12) -> float:
    """Residual of the FN relations after the mode mixing c'_i = sum_j T_ij c_j.

    `transform` must be a d x d unitary matrix (complex entries allowed here
    and only here); non-unitary input is rejected.
    """
    T = np.asarray(transform, dtype=complex)
    if T.shape != (d, d):
        raise ValueError(f"transform must be {d} x {d}, got shape {T.shape}")
    if _maxabs(T @ T.conj().T - np.eye(d)) > unitary_tol:
        raise ValueError("transform is not unitary within tolerance")

    ops = build_fn_multimode(d, q)
    mixed = [
        sum(T[i, j] * ops.annihilators[j].astype(complex) for j in range(d))
        for i in range(d)
    ]
    mixed_dag = [m.conj().T for m in mixed]
    residuals = _fn_relation_residuals(mixed, mixed_dag, q, np.diag(ops.number_op))
    return max(residuals.values())


def haar_unitary(dim: int, seed: int = 0) -> np.ndarray:
    """Haar-distributed random unitary (QR of a complex Gaussian, phase-fixed)."""
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    qmat, rmat = np.linalg.qr(a)
    phases = np.diag(rmat).copy()
    phases /= np.abs(phases)
    return qmat @ np.diag(phases)


def build_state(ops: OperatorSet, n: int) -> np.ndarray:
    """Normalized ladder state (c*)**n |0> / sqrt([n]!) on a single-mode set.

    Raises NonNormalizableStateError when the squared norm [n]! is zero or
    negative (e.g. VPJC at q = 1 for n >= 2, where the ladder terminates).
    """
    if ops.n_modes != 1:
        raise ValueError("build_state applies to single-mode representations")
    if n != int(n) or not 0 <= n < ops.dim:
        raise ValueError(f"level must lie in 0..{ops.dim - 1}, got {n!r}")
    n = int(n)
    norm_sq = 1.0
    for k in range(1, n + 1):
        norm_sq *= basic_number(ops.model, k, ops.q)
    if norm_sq <= 0.0:
        raise NonNormalizableStateError(
            f"state {n} has squared norm [n]! = {norm_sq}; not normalizable"
        )
    vec = np.zeros(ops.dim)
    vec[0] = 1.0
    for _ in range(n):
        vec = ops.creator @ vec
    vec = vec / math.sqrt(norm_sq)
    expected = np.zeros(ops.dim)
    expected[n] = 1.0
    if _maxabs(vec - expected) > 1e-12:
        raise RuntimeError("ladder construction deviated from the basis vector")
    return vec


def ckn_undeformed_residuals(ops: OperatorSet) -> dict:
    """Residuals of the plain fermion relations for the rescaled f = q**(N/2) c."""
    if ops.model is not Model.CKN:
        raise ValueError("the rescaling map is defined for the CKN family")
    weight = np.diag(ops.q ** (np.arange(ops.dim) / 2.0))
    f = weight @ ops.annihilator
    fdag = f.T
    return {
        "anticommutator": _maxabs(f @ fdag + fdag @ f - np.eye(ops.dim)),
        "c_squared": _maxabs(f @ f),
        "cdag_squared": _maxabs(fdag @ fdag),
    }
