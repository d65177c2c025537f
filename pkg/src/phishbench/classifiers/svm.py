"""Soft-margin SVM trained with simplified SMO; one-vs-rest for multiclass.

Inputs are z-scored inside fit. The default RBF gamma is
1 / (n_features * mean feature variance) computed on the scaled matrix.
"""

from __future__ import annotations

import warnings
from typing import Optional

import numpy as np

from .._util import ConvergenceWarning, rng_from
from ..data import FeatureMatrix
from .base import (
    Hyperparams,
    PredictionVector,
    Standardizer,
    TrainedClassifier,
    constant_fallback,
)

_SWEEP_CAP = 1000  # guards pathological no-progress loops
_ALPHA_TOL = 1e-12


def kernel_matrix(
    kind: str, a: np.ndarray, b: np.ndarray, gamma: float, degree: int, coef0: float
) -> np.ndarray:
    """Gram block K(a_i, b_j) for the configured kernel."""
    if kind == "linear":
        return a @ b.T
    if kind == "rbf":
        an = np.einsum("ij,ij->i", a, a)
        bn = np.einsum("ij,ij->i", b, b)
        d2 = an[:, None] - 2.0 * (a @ b.T) + bn[None, :]
        np.maximum(d2, 0.0, out=d2)
        return np.exp(-gamma * d2)
    if kind == "poly":
        return (gamma * (a @ b.T) + coef0) ** degree
    if kind == "sigmoid":
        return np.tanh(gamma * (a @ b.T) + coef0)
    raise ValueError(f"unknown kernel {kind!r}")


class _BinarySMO:
    """One binary machine: dual coefficients over its support vectors."""

    __slots__ = ("support_vectors", "dual_coef", "bias", "converged")

    def __init__(self, support_vectors, dual_coef, bias, converged):
        self.support_vectors = np.asarray(support_vectors, dtype=np.float64)
        self.dual_coef = np.asarray(dual_coef, dtype=np.float64)
        self.bias = float(bias)
        self.converged = bool(converged)

    def decision(self, x: np.ndarray, kind, gamma, degree, coef0) -> np.ndarray:
        if self.support_vectors.shape[0] == 0:
            return np.full(x.shape[0], self.bias)
        k = kernel_matrix(kind, x, self.support_vectors, gamma, degree, coef0)
        return k @ self.dual_coef + self.bias

    def to_state(self) -> dict:
        return {
            "support_vectors": self.support_vectors.tolist(),
            "dual_coef": self.dual_coef.tolist(),
            "bias": self.bias,
            "converged": self.converged,
        }

    @classmethod
    def from_state(cls, state: dict) -> "_BinarySMO":
        return cls(
            state["support_vectors"], state["dual_coef"], state["bias"],
            state["converged"],
        )


def _train_smo(
    x: np.ndarray,
    y: np.ndarray,
    params: Hyperparams,
    gamma: float,
    rng: np.random.Generator,
) -> _BinarySMO:
    """Simplified SMO (random second index, pairwise updates).

    Maintains the decision values f incrementally; kernel rows are computed
    lazily and cached in float32. Stops after max_passes consecutive clean
    sweeps, or at the pair-update cap (best-so-far with a warning).
    """
    n = x.shape[0]
    c_reg = params.svm_c
    tol = params.svm_tol
    kind, degree, coef0 = params.svm_kernel, params.svm_degree, params.svm_coef0
    max_updates = params.svm_iter_factor * n
    alphas = np.zeros(n)
    f = np.zeros(n)  # current decision values including bias
    bias = 0.0
    cache: dict[int, np.ndarray] = {}

    def row(i: int) -> np.ndarray:
        hit = cache.get(i)
        if hit is None:
            hit = kernel_matrix(
                kind, x[i : i + 1], x, gamma, degree, coef0
            )[0].astype(np.float32)
            cache[i] = hit
        return hit

    updates = 0
    passes = 0
    sweeps = 0
    converged = True
    while passes < params.svm_max_passes:
        sweeps += 1
        if sweeps > _SWEEP_CAP:
            converged = False
            break
        changed = 0
        for i in range(n):
            e_i = f[i] - y[i]
            r = y[i] * e_i
            if not ((r < -tol and alphas[i] < c_reg) or (r > tol and alphas[i] > 0)):
                continue
            j = int(rng.integers(0, n - 1))
            if j >= i:
                j += 1
            e_j = f[j] - y[j]
            k_i, k_j = row(i), row(j)
            k_ii = float(k_i[i])
            k_jj = float(k_j[j])
            k_ij = float(k_i[j])
            eta = 2.0 * k_ij - k_ii - k_jj
            if eta >= 0:
                continue
            a_i_old, a_j_old = alphas[i], alphas[j]
            if y[i] != y[j]:
                low = max(0.0, a_j_old - a_i_old)
                high = min(c_reg, c_reg + a_j_old - a_i_old)
            else:
                low = max(0.0, a_i_old + a_j_old - c_reg)
                high = min(c_reg, a_i_old + a_j_old)
            if low == high:
                continue
            a_j = a_j_old - y[j] * (e_i - e_j) / eta
            a_j = min(max(a_j, low), high)
            if abs(a_j - a_j_old) < 1e-5:
                continue
            a_i = a_i_old + y[i] * y[j] * (a_j_old - a_j)
            b1 = (bias - e_i - y[i] * (a_i - a_i_old) * k_ii
                  - y[j] * (a_j - a_j_old) * k_ij)
            b2 = (bias - e_j - y[i] * (a_i - a_i_old) * k_ij
                  - y[j] * (a_j - a_j_old) * k_jj)
            if 0.0 < a_i < c_reg:
                new_bias = b1
            elif 0.0 < a_j < c_reg:
                new_bias = b2
            else:
                new_bias = (b1 + b2) / 2.0
            f += (y[i] * (a_i - a_i_old)) * k_i
            f += (y[j] * (a_j - a_j_old)) * k_j
            f += new_bias - bias
            alphas[i], alphas[j] = a_i, a_j
            bias = new_bias
            changed += 1
            updates += 1
            if updates >= max_updates:
                break
        if updates >= max_updates and passes < params.svm_max_passes:
            converged = False
            break
        passes = passes + 1 if changed == 0 else 0
    if not converged:
        warnings.warn(
            "SMO hit its iteration cap before converging; "
            "returning the best solution so far",
            ConvergenceWarning,
            stacklevel=4,
        )
    keep = alphas > _ALPHA_TOL
    return _BinarySMO(x[keep], alphas[keep] * y[keep], bias, converged)


class SVMClassifier(TrainedClassifier):
    """Binary SMO machine, or one machine per class (one-vs-rest)."""

    algorithm = "svm"

    def __init__(self, params: Hyperparams, class_list,
                 machines: list[_BinarySMO], scaler: Standardizer,
                 gamma: float, n_features: int):
        super().__init__(params, class_list)
        self.machines = machines
        self.scaler = scaler
        self.gamma = gamma
        self.n_features = n_features

    @property
    def converged(self) -> bool:
        return all(m.converged for m in self.machines)

    @classmethod
    def fit(cls, train: FeatureMatrix, params: Hyperparams) -> TrainedClassifier:
        params.validate()
        if train.n_rows == 0:
            raise ValueError("cannot fit on an empty training set")
        fallback = constant_fallback(cls.algorithm, train, params)
        if fallback is not None:
            return fallback
        class_list = tuple(int(c) for c in np.unique(train.labels))
        scaler = Standardizer.fit(train.values)
        x = scaler.apply(train.values)
        if params.svm_gamma is not None:
            gamma = params.svm_gamma
        else:
            mean_var = float(x.var(axis=0).mean())
            gamma = 1.0 / (x.shape[1] * mean_var) if mean_var > 0 else 1.0 / x.shape[1]
        machines = []
        if len(class_list) == 2:
            y = np.where(train.labels == class_list[1], 1.0, -1.0)
            machines.append(
                _train_smo(x, y, params, gamma, rng_from(params.seed, "smo", 0))
            )
        else:
            for idx, code in enumerate(class_list):
                y = np.where(train.labels == code, 1.0, -1.0)
                machines.append(
                    _train_smo(x, y, params, gamma, rng_from(params.seed, "smo", idx))
                )
        return cls(params, class_list, machines, scaler, gamma, train.n_features)

    def decision_function(self, test: FeatureMatrix) -> np.ndarray:
        """Margins: one column for the binary machine, one per class for OvR."""
        self._check_width(test, self.n_features)
        x = self.scaler.apply(test.values)
        p = self.params
        columns = [
            m.decision(x, p.svm_kernel, self.gamma, p.svm_degree, p.svm_coef0)
            for m in self.machines
        ]
        return np.column_stack(columns)

    def predict(self, test: FeatureMatrix) -> PredictionVector:
        decisions = self.decision_function(test)
        if len(self.machines) == 1:
            margins = np.column_stack([-decisions[:, 0], decisions[:, 0]])
        else:
            margins = decisions
        codes = np.argmax(margins, axis=1)  # ties: earliest class
        return PredictionVector(self._labels_from(codes), margins)

    def state_dict(self) -> dict:
        return {
            "n_features": self.n_features,
            "gamma": self.gamma,
            "scaler": self.scaler.to_state(),
            "machines": [m.to_state() for m in self.machines],
        }

    @classmethod
    def from_state(cls, params, class_list, state) -> "SVMClassifier":
        machines = [_BinarySMO.from_state(s) for s in state["machines"]]
        return cls(
            params, class_list, machines, Standardizer.from_state(state["scaler"]),
            state["gamma"], state["n_features"],
        )
