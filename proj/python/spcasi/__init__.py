"""Sparse-PCA process monitoring with continual mode updates."""

from ._spcasi import (  # noqa: F401
    DataError,
    DetectionScore,
    ModeModel,
    ModelArchive,
    MonitoringResult,
    NumericalError,
    RunReport,
    Scaler,
    SituationResult,
    SolverConfig,
    StoreError,
    ValidationError,
    __version__,
    fit_projection,
    generate_mode,
    inject_fault,
    kde_threshold,
    load_chain,
    mixing_matrix,
    reproduce_table,
    run_monitoring,
    save_chain,
    score_detection,
    soft_threshold,
    train_first_mode,
    update_model,
)
