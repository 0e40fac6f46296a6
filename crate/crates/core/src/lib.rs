//! Exact counting of integer order-preserving extensions of marked posets,
//! with cell-wise symbolic polynomials and reciprocity, plus two
//! applications: monotone-triangle enumeration and partial graph-coloring
//! extension polynomials.
//!
//! All arithmetic is exact (arbitrary-precision integers and rationals), all
//! outputs are deterministic functions of the inputs, and every nontrivial
//! counting path has an independent brute-force counterpart used as an
//! oracle by the test suite.

pub mod coloring;
pub mod corpus;
pub mod json;
pub mod marked;
pub mod poly;
pub mod poset;
pub mod triangles;

pub use coloring::{
    chi_polynomial, chromatic_polynomial, constrained_acyclic_count, contract_equal_colors,
    count_proper_extensions, eval_chi, orientation_sum_count, reciprocity_pairs, ColoringError,
    Graph, PartialColoring,
};
pub use marked::{
    check_compatible_face_partition, mu_degree_formula, mu_degrees, symbolic_polynomial,
    CellSignature, Marking, MarkingError, MuCoords,
};
pub use poly::{
    binomial, format_rat, interpolate_univariate, rising_binomial, rising_binomial_int, Int,
    LinForm, MultiPoly, PolyError, Rat,
};
pub use poset::{FacePartition, IdealChain, Mask, OrderIdeal, Poset, PosetBuild, PosetError};
pub use triangles::{
    alpha_polynomial, alpha_via_moebius, collect_mt, count_mt_direct, enumerate_dmt,
    enumerate_qess, eval_alpha, gt_marked_labels, gt_marking, gt_poset, signed_dmt_sum, DiamondSet,
    Triangle, TriangleError,
};
