//! Truncated uniform Roe algebra: band operators with exact rational
//! entries, the partial isometries of partial translations, the diagonal
//! expectation, and a finite model of the cluster-limit representations.

mod band;
mod cluster;
mod identities;
mod linalg;

pub use band::{ideal_membership, BandOperator, DiagonalOperator, DumpEntry};
pub use cluster::{
    cluster_rep, commutant_dimension, kernel_check, ClusterLimitRep, ClusterRealization, KernelVerdict, Letter,
    TailExpr, TailTranslation, Term,
};
pub use identities::{check_identities, random_translation, IdentityCheck, IdentityReport};
pub use linalg::Matrix;
