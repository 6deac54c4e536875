"""scikit-learn style wrapper: fit data counts, predict the MLE distribution."""

from __future__ import annotations

import numbers
from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .likelihood import FORMULATIONS, DataVector, select_mle
from .modelfile import ModelFile
from .varieties import Model

__all__ = ["DualMLE", "check_data_vector", "check_model"]


def check_model(model) -> Model:
    """Accept a Model, a ModelFile, a zoo name or a model-file path."""
    if isinstance(model, Model):
        return model
    if isinstance(model, ModelFile):
        return model.to_model()
    if isinstance(model, str):
        from .zoo import resolve_model

        return resolve_model(model).to_model()
    raise TypeError(f"cannot interpret {type(model).__name__} as a model")


def check_data_vector(u, n_cells=None) -> DataVector:
    """Validate one data vector: 1-D (or a single row), finite, nonzero entries, nonzero sum.

    Integers, Fractions and ``"a/b"`` strings are kept exact; floats are
    converted exactly from their binary value.
    """
    if isinstance(u, DataVector):
        vals = list(u)
    else:
        arr = np.asarray(u, dtype=object)
        if arr.ndim == 2 and arr.shape[0] == 1:
            arr = arr[0]
        if arr.ndim != 1:
            raise ValueError(f"expected a single data vector, got shape {arr.shape}")
        vals = []
        for x in arr:
            if isinstance(x, (numbers.Integral, Fraction, str)):
                vals.append(x)
            elif isinstance(x, numbers.Real):
                if not np.isfinite(float(x)):
                    raise ValueError("data contains NaN or infinity")
                vals.append(Fraction(float(x)))
            else:
                vals.append(x)
    if n_cells is not None and len(vals) != n_cells:
        raise ValueError(f"data has {len(vals)} entries, the model has {n_cells} coordinates")
    return DataVector(vals)


class DualMLE(BaseEstimator):
    """Maximum likelihood estimation on an algebraic model given by X or by X*.

    Parameters
    ----------
    model : Model, ModelFile or str
        The model (a zoo name or a model-file path also works).
    formulation : {"auto", "standard", "conormal", "dual", "lagrange"}
    seed : int
        Seed for the random linear form used in point recovery.

    After ``fit(u)``: ``critical_points_``, ``ml_degree_`` (the number of
    complex critical points for this data), ``mle_`` and ``loglik_``.
    """

    def __init__(self, model=None, formulation="auto", seed=0):
        self.model = model
        self.formulation = formulation
        self.seed = seed

    def _validate_params(self):
        if self.formulation not in ("auto",) + FORMULATIONS:
            raise ValueError(f"unknown formulation {self.formulation!r}")
        return check_model(self.model)

    def fit(self, X, y=None):
        from .pipeline import critical_points

        model = self._validate_params()
        u = check_data_vector(X, len(model.variables))
        cps = critical_points(model, u, self.formulation, seed=self.seed, exact_eliminants=False)
        self.model_ = model
        self.data_ = u
        self.n_features_in_ = len(u)
        self.critical_points_ = cps
        self.ml_degree_ = cps.count
        if u.is_positive():
            try:
                p, ll = select_mle([cp.p[: len(u)] for cp in cps if cp.positive], u)
                self.mle_, self.loglik_ = np.asarray(p, dtype=float), ll
            except ValueError:
                self.mle_, self.loglik_ = None, None
        else:
            self.mle_, self.loglik_ = None, None
        return self

    def _check_fitted(self):
        if not hasattr(self, "critical_points_"):
            raise NotFittedError("DualMLE is not fitted yet; call fit(u) first")

    def predict(self, X=None):
        """MLE distribution for the fitted data, or one row per data vector in ``X``."""
        self._check_fitted()
        if X is None:
            if self.mle_ is None:
                raise ValueError("no positive critical point")
            return self.mle_
        rows = np.asarray(X, dtype=object)
        if rows.ndim == 1:
            rows = rows[None, :]
        out = []
        for row in rows:
            est = DualMLE(self.model_, self.formulation, self.seed).fit(row)
            if est.mle_ is None:
                raise ValueError("no positive critical point")
            out.append(est.mle_)
        return np.vstack(out)

    def transform(self, X):
        return self.predict(X)

    def score(self, X=None, y=None):
        """Log-likelihood of the fitted MLE (``X`` defaults to the fitted data)."""
        self._check_fitted()
        if X is None:
            return self.loglik_
        from .likelihood import likelihood_value

        u = check_data_vector(X, self.n_features_in_)
        return likelihood_value(list(self.predict(X)[0]), u)
