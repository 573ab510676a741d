from ._ffvc import (
    FfvcError,
    __version__,
    construct3,
    edge_count,
    gauss_sum,
    hayes_check,
    intersection_profile,
    kloosterman,
    points,
    random_trials,
    reproduce_f11_table,
    reproduce_x_tuple,
    run_cli,
    salem_check,
    sample_subset,
    shatter,
    spectrum,
    vc_bounds,
    verify_witness,
)

__all__ = [
    "FfvcError",
    "__version__",
    "construct3",
    "edge_count",
    "gauss_sum",
    "hayes_check",
    "intersection_profile",
    "kloosterman",
    "points",
    "random_trials",
    "reproduce_f11_table",
    "reproduce_x_tuple",
    "run_cli",
    "salem_check",
    "sample_subset",
    "shatter",
    "spectrum",
    "vc_bounds",
    "verify_witness",
]
