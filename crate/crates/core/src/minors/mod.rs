//! Matrices, principal minors, minor oracles, genericity conditions,
//! block/cut-vertex compositions and random instance generation.

mod compare;
mod compose;
mod det;
mod generate;
mod genericity;
mod matrix;
mod oracle;

pub use compare::{compare_minors, MinorComparison, MinorMismatch};
pub use compose::{compose_cut_vertex, compose_disconnected, MinorFn};
pub use det::{det, leibniz_minor, principal_minor, LEIBNIZ_MAX};
pub use generate::{random_instance, Constants, GeneratedInstance, GeneratorConfig, Topology};
pub use genericity::{
    check_condition1, check_condition1_with, check_condition2, check_condition2_with, Clause,
    GenericityReport, Margins, MinorBoundMode, Witness,
};
pub use matrix::Matrix;
pub use oracle::{ExactOracle, Memo, MinorOracle, OracleMode, OracleStats, TableOracle};
