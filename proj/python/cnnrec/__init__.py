"""Training-free CNN recommendation toolkit.

Scores the difficulty of an image-classification dataset (complexity score),
the capacity of rule-generated CNN architectures (ability score), and
recommends the architecture that matches the task, including the two-anchor
accuracy-vs-speed performance curve.
"""

from ._core import (
    DESCRIPTOR_VARIANT,
    AbilityParams,
    CnnSpec,
    Dataset,
    DownsampleKind,
    MatchingFunction,
    PerformanceCurve,
    __version__,
    ability_ceiling,
    ability_score,
    calibrate,
    calibrate_table1,
    count_macs,
    count_params,
    dataset_complexity,
    enumerate_candidates,
    estimate_forward_time,
    expand_layers,
    extract_descriptor,
    fit_matching,
    fit_performance_curve,
    import_ability_params,
    import_matching,
    import_spec,
    load_cifar_binary,
    load_idx,
    load_image_dir,
    make_spec,
    recommend,
    simulate_multiclass_error,
    synth_blob_task,
    table1_anchors,
    write_idx,
)

__all__ = [
    "DESCRIPTOR_VARIANT",
    "AbilityParams",
    "CnnSpec",
    "Dataset",
    "DownsampleKind",
    "MatchingFunction",
    "PerformanceCurve",
    "__version__",
    "ability_ceiling",
    "ability_score",
    "calibrate",
    "calibrate_table1",
    "count_macs",
    "count_params",
    "dataset_complexity",
    "enumerate_candidates",
    "estimate_forward_time",
    "expand_layers",
    "extract_descriptor",
    "fit_matching",
    "fit_performance_curve",
    "import_ability_params",
    "import_matching",
    "import_spec",
    "load_cifar_binary",
    "load_idx",
    "load_image_dir",
    "make_spec",
    "recommend",
    "simulate_multiclass_error",
    "synth_blob_task",
    "table1_anchors",
    "write_idx",
]
