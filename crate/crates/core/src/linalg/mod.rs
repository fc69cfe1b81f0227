//! Dense complex and exact-rational matrix kernels.

mod dump;
mod eigen;
mod matrix;
mod rational;
mod snap;
mod span;

pub use dump::{MatrixDump, SystemMeta};
pub use eigen::{
    general_eigenvalues, hermitian_eigs, HermitianEigen, EIGEN_RESIDUAL_RTOL, HERMITICITY_RTOL,
};
#[cfg(test)]
pub(crate) use matrix::I;
pub use matrix::{
    anticommutator, commutator, kron, kron_all, kron_with_cap, lift, lift_many,
    relative_commutator_norm, ComplexMatrix, DEFAULT_DIM_CAP,
};
pub(crate) use matrix::{ONE, ZERO};
pub use rational::{recognize_scalar, RationalMatrix};
pub use snap::{
    default_snap_tol, snap_spectrum, spectrum_of, AlgebraicValue, SpectrumClass, SpectrumReport,
    SNAP_RTOL, SQRT3_COEFF_BOUND,
};
pub use span::{span_residual, SpanFit};
