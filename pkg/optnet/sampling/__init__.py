"""Latin hypercube sampling and labelled dataset construction."""

from optnet.sampling.dataset import (
    build_dataset,
    derive_test_seed,
    split_dataset,
    train_validation_split,
)
from optnet.sampling.io import read_dataset, write_dataset
from optnet.sampling.lhs import lhs_sample
from optnet.sampling.types import BOXES, BS_BOX, HESTON_BOX, Box, ProblemKind, SampleGrid

__all__ = [
    "BOXES",
    "BS_BOX",
    "HESTON_BOX",
    "Box",
    "ProblemKind",
    "SampleGrid",
    "build_dataset",
    "derive_test_seed",
    "lhs_sample",
    "read_dataset",
    "split_dataset",
    "train_validation_split",
    "write_dataset",
]
