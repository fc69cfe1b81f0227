//! Exchange operators, permutation representations and rotations for
//! systems of `N` identical spin-`S` particles, computed by exact
//! diagonalization with exact-arithmetic cross-checks.
//!
//! ```
//! use spinrep::{schroedinger_hamiltonian, spectrum_of, SiteSystem, SpinQuantum};
//!
//! let system = SiteSystem::new(SpinQuantum::ONE, 3).unwrap();
//! let h = schroedinger_hamiltonian(&system).unwrap();
//! let spectrum = spectrum_of(&h, None).unwrap();
//! assert_eq!(spectrum.summary(), "{-3[1], 0[16], 3[10]}");
//! ```

pub mod app;
pub mod error;
pub mod exchange;
pub mod linalg;
pub mod multiplets;
pub mod perm;
pub mod qrep;
pub mod rotations;
pub mod spin;

pub use error::{Error, Result};
pub use exchange::{
    class_operator, class_operator_exact, exchange_op, irrep_decomposition,
    schroedinger_hamiltonian, schroedinger_hamiltonian_exact, schroedinger_poly, swap_oracle,
    swap_oracle_exact, vrep, vrep_word, Representation, SchroedingerPolynomial,
};
pub use linalg::{
    commutator, hermitian_eigs, kron, lift, snap_spectrum, span_residual, spectrum_of,
    AlgebraicValue, ComplexMatrix, RationalMatrix, SpectrumReport,
};
pub use multiplets::{h0_spectrum_multiplet, multiplicities, MultipletTable};
pub use perm::{conjugacy_classes, CycleType, Permutation};
pub use qrep::{dual_family, j_class_ops, lie_closure, o_lift, q_lift, q_span_membership, qtilde};
pub use rotations::{
    apply_rotation, casimir_check, proposition_ledger, wigner, ClaimReport, Suite,
};
pub use spin::{
    dot_op, heisenberg, spin_matrices, total_ops, ConstantConvention, SiteSystem, SpinQuantum,
};
