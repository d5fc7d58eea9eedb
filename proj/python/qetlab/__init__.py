"""Python bindings for the qetlab C++ core."""

from ._qetlab import (
    ModelParams,
    NumericFailure,
    ProtocolError,
    audit_ion,
    audit_minimal,
    e_a,
    e_b,
    extract,
    f_alpha,
    ground_energy,
    hb_expected,
    ion_maximize,
    run_once,
    scan_alpha,
    spectrum,
    sweep,
)

__all__ = [
    "ModelParams",
    "NumericFailure",
    "ProtocolError",
    "audit_ion",
    "audit_minimal",
    "e_a",
    "e_b",
    "extract",
    "f_alpha",
    "ground_energy",
    "hb_expected",
    "ion_maximize",
    "run_once",
    "scan_alpha",
    "spectrum",
    "sweep",
]
