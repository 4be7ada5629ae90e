"""Survival forests with exact and constant-time log-rank splitting."""

from ._core import (
    ForestModel,
    StepCurve,
    SurvivalDataset,
    concordance_error,
    gen_ph,
    gen_poisson_bench,
    kaplan_meier,
    load_csv,
    load_model,
    nelson_aalen,
    rmse_at_horizon,
    train,
    write_csv,
)

__all__ = [
    "ForestModel",
    "StepCurve",
    "SurvivalDataset",
    "concordance_error",
    "gen_ph",
    "gen_poisson_bench",
    "kaplan_meier",
    "load_csv",
    "load_model",
    "nelson_aalen",
    "rmse_at_horizon",
    "train",
    "write_csv",
]
