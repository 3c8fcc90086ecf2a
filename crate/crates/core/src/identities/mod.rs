//! Both sides of every identity: the truncated Littlewood-type sums, their
//! exact Pfaffian sides, the `Z_{2n}` property suite and the frozen
//! specialization.

mod frozen;
mod littlewood;
mod truncation;
mod zfunction;

pub use frozen::{
    check_frozen_corollary, check_frozen_corollary_with, frozen_closed_product, frozen_middle, frozen_pfaffian,
    frozen_point, FrozenEntries,
};
pub use littlewood::{
    check_class_specialization, check_convention_audit, check_littlewood, check_partition_p, check_unrefined,
    classical_coefficient, classical_params, classical_rhs, decay_bound, littlewood_coefficient, littlewood_lhs,
    littlewood_rhs, partition_p, partition_rhs, unrefined_coefficient, unrefined_rhs, TermEvaluator,
};
pub use truncation::{
    assess_truncation, even_signatures_with_largest, observed_ratio, partial_sums, relative_residual, TruncationMode,
    TruncationPlan,
};
pub use zfunction::{
    check_z_properties, check_z_properties_with, frozen_pair_point, pfaffian_expression, property4_corrected,
    property4_stated, z2, z2n_at_point, z2n_in_last_variable, z2n_pfaffian_side, z2n_value, Property4Form,
    ZCheckOptions, ZMutation,
};
