//! Sums of products of sparse polynomials with positive coefficients.

mod expression;
mod lifting;
mod sparse;
mod witness;

pub use expression::{
    bounds_report, parse_sps_json, split_products, split_products_with, thm1_shape, to_sps_json, BoundsReport,
    SpsExpression, SpsParams,
};
pub use lifting::{build_lifting, build_lifting_with, verify_lifting, LiftingArtifacts, LiftingVerdict};
pub use sparse::SparsePoly;
pub use witness::{
    max_product_table, sparse_factor_witness, sparse_factor_witness_with, verify_theorem2, verify_theorem2_with,
    MaxProduct, MaxProductTable, Theorem2Verdict, WitnessReport,
};
