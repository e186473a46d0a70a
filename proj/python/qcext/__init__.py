from ._core import (
    Error,
    Expr,
    Extension,
    HarmonicMap,
    Weight,
    __version__,
    build_extension,
    check,
    k_condition,
    k_formula,
    make_weight,
    rho_bound,
    run_cli,
)

__all__ = [
    "Error",
    "Expr",
    "Extension",
    "HarmonicMap",
    "Weight",
    "build_extension",
    "check",
    "k_condition",
    "k_formula",
    "make_weight",
    "rho_bound",
    "run_cli",
]
