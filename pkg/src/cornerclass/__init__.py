"""Corner-classification networks (CC4/CC1) and their experiment harnesses.

CC4 trains in a single assignment pass with a global radius of
generalization; CC1 adds a second pass that adapts the radius per stored
sample and switches between nearest-covering-sample and k-nearest-neighbor
inference. Real inputs reach the networks through thermometer codes, class
labels through k-bit binary codes.
"""

__version__ = "0.1.0"

from .bitvec import as_bit_matrix, as_bits, hamming, hamming_matrix
from .encoding import (
    UnaryCoder,
    decode_class,
    decode_class_rows,
    encode_class,
)
from .cc4 import (
    CC4Model,
    TrainingSample,
    coverage_count,
    hidden_activations,
    predict_cc4,
    stack_samples,
    train_cc4,
)
from .cc1 import (
    CC1Model,
    membership_vector,
    predict_cc1,
    refine_from_cc4,
    regress_cc1,
    train_cc1,
)
from .datasets import (
    Disk,
    Rect,
    SeriesConfig,
    ShapeScene,
    cell_inputs,
    default_scene,
    denormalize,
    eight_class_scene,
    generate_mg,
    grid_coders,
    make_windows,
    normalize_minmax,
    render_scene,
    scene_from_dict,
    scene_to_dict,
    scene_to_samples,
    write_grid_csv,
    write_series_csv,
)
from .experiments import (
    SplitSpec,
    SweepReport,
    aggregate_fraction,
    aggregate_radius,
    classification_error,
    nrmse,
    persistence_predictions,
    radius_study,
    run_fraction_sweep,
    run_mg_prediction,
    run_radius_sweep,
    seeded_split,
)
from .model_io import ModelFormatError, load_model, read_model_meta, save_model
from .rng import SplitMix64

__all__ = [
    "__version__",
    "as_bits",
    "as_bit_matrix",
    "hamming",
    "hamming_matrix",
    "UnaryCoder",
    "encode_class",
    "decode_class",
    "decode_class_rows",
    "TrainingSample",
    "CC4Model",
    "train_cc4",
    "hidden_activations",
    "predict_cc4",
    "coverage_count",
    "stack_samples",
    "CC1Model",
    "train_cc1",
    "refine_from_cc4",
    "predict_cc1",
    "regress_cc1",
    "membership_vector",
    "Disk",
    "Rect",
    "ShapeScene",
    "default_scene",
    "eight_class_scene",
    "render_scene",
    "grid_coders",
    "cell_inputs",
    "scene_to_samples",
    "scene_to_dict",
    "scene_from_dict",
    "SeriesConfig",
    "generate_mg",
    "make_windows",
    "normalize_minmax",
    "denormalize",
    "write_series_csv",
    "write_grid_csv",
    "SplitSpec",
    "SweepReport",
    "classification_error",
    "nrmse",
    "seeded_split",
    "run_radius_sweep",
    "radius_study",
    "run_fraction_sweep",
    "run_mg_prediction",
    "persistence_predictions",
    "aggregate_radius",
    "aggregate_fraction",
    "save_model",
    "load_model",
    "read_model_meta",
    "ModelFormatError",
    "SplitMix64",
]
