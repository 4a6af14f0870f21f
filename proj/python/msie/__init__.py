"""Multi-source information embedding pipeline (C++ core bindings)."""

from msie._core import (
    MsieConfigError,
    MsieDataError,
    MsieNumericError,
    NbModel,
    haversine_km,
    lasso_fit,
    mae,
    mse,
    r2,
    rmse,
    run_ablation,
    synth_generate,
    tokenize,
    train_cbow,
    train_nb,
)

__all__ = [
    "MsieConfigError",
    "MsieDataError",
    "MsieNumericError",
    "NbModel",
    "haversine_km",
    "lasso_fit",
    "mae",
    "mse",
    "r2",
    "rmse",
    "run_ablation",
    "synth_generate",
    "tokenize",
    "train_cbow",
    "train_nb",
]
