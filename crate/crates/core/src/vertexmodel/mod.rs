//! Higher spin six vertex model: weight tables, row transfer weights, the
//! lattice evaluator for `F_λ`, and the exact Yang–Baxter and row-relation
//! checks.

mod checks;
mod lattice;
mod params;
mod row;
mod weights;

pub use checks::{
    check_lattice_vs_symmetrization, check_lattice_vs_symmetrization_with, check_lemma_plus, check_ybe_rll, check_ybe_rll_with, lemma_plus_sides, ybe_sides};
pub use lattice::{lattice_f, lattice_f_refined, lattice_f_with, LatticeEvaluator};
pub use params::{InhomogeneitySequence, ParamSet};
pub use row::{
    row_weight, row_weight_refined, row_weight_star, row_weight_star_closed, row_weight_star_refined,
    row_weight_star_with, row_weight_with, Column0,
};
pub use weights::{weight_cross, weight_w, weight_w0gamma, weight_wstar, TableShift, WeightTables};
