"""Counting and sampling difficult rotation-distance instances between binary trees."""

from .classify import (
    OneOffWitness,
    PairClass,
    TreePairProblem,
    classify_pair,
    common_diagonals,
    one_off_diagonals,
    reduce_fully,
    split_common,
)
from .census import CensusRow, SampleRow, exact_census, exact_census_naive, sample_census
from .combinatorics import catalan, catalan_asymptotic, count_instances, dihedral_class_count
from .distance import DistanceResult, exact_distance, flip_neighbors
from .stats import FitResult, FractionPoint, fit_exponential, fit_power_cube, predict
from .tree import (
    BinaryTree,
    enumerate_trees,
    parse_tree,
    remy_sample,
    render_tree,
    rotate_left,
    rotate_right,
    triangulation_to_tree,
    tree_to_triangulation,
)
from .triangulation import (
    DihedralElement,
    Triangulation,
    apply_dihedral,
    canonical_form,
    diagonals_cross,
    enumerate_class_representatives,
    enumerate_triangulations,
    flip,
    parse_triangulation,
    validate,
)

__version__ = "0.1.0"
