//! Spin-S rotation matrices and global or partial rotation operators.

mod ledger;

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eigs, kron_all, lift, lift_many, relative_commutator_norm, ComplexMatrix,
};
use crate::spin::{spin_matrices, SiteSystem, SpinQuantum};

pub use ledger::{
    proposition_ledger, spectral_distance, stated_j_spectra, ClaimReport, ClaimStatus,
    PassCondition, Suite,
};

/// `exp(-i θ n·S)` for a unit axis `n`.
pub fn wigner(spin: SpinQuantum, axis: [f64; 3], angle: f64) -> Result<ComplexMatrix> {
    check_axis(axis)?;
    let s = spin_matrices(spin);
    let [sx, sy, sz] = s.components();
    let generator = &(&sx.scale_real(axis[0]) + &sy.scale_real(axis[1])) + &sz.scale_real(axis[2]);
    let eig = hermitian_eigs(&generator)?;
    let phases: Vec<Complex64> = eig
        .values
        .iter()
        .map(|&l| Complex64::from_polar(1.0, -angle * l))
        .collect();
    let v = &eig.vectors;
    Ok(&(v * &ComplexMatrix::diagonal(&phases)) * &v.adjoint())
}

fn check_axis(axis: [f64; 3]) -> Result<()> {
    let n = axis.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !n.is_finite() || (n - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "rotation axis has norm {n}, expected 1"
        )));
    }
    Ok(())
}

/// Which sites a rotation acts on, and how.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "scope", rename_all = "snake_case")]
pub enum RotationScope {
    /// `A` on every site.
    Global,
    /// `A` on site `k` only.
    Parot { k: usize },
    /// `A` on sites `i` and `j`.
    Biparot { i: usize, j: usize },
    /// `A` on `i`, `A⁻¹` on `j`.
    GearInverse { i: usize, j: usize },
    /// `A` on `i`, the entrywise conjugate `Ā` on `j`.
    GearConjugate { i: usize, j: usize },
}

impl fmt::Display for RotationScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RotationScope::Global => write!(f, "global"),
            RotationScope::Parot { k } => write!(f, "parot({k})"),
            RotationScope::Biparot { i, j } => write!(f, "biparot({i},{j})"),
            RotationScope::GearInverse { i, j } => write!(f, "gear_inverse({i},{j})"),
            RotationScope::GearConjugate { i, j } => write!(f, "gear_conjugate({i},{j})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RotationSpec {
    pub axis: [f64; 3],
    pub angle: f64,
    pub scope: RotationScope,
}

impl RotationSpec {
    pub fn new(axis: [f64; 3], angle: f64, scope: RotationScope) -> Result<Self> {
        check_axis(axis)?;
        Ok(RotationSpec { axis, angle, scope })
    }
}

/// The operator on the full tensor space realizing `spec`.
pub fn apply_rotation(system: &SiteSystem, spec: &RotationSpec) -> Result<ComplexMatrix> {
    let a = wigner(system.spin(), spec.axis, spec.angle)?;
    let pair = |i: usize, j: usize, b: ComplexMatrix| -> Result<ComplexMatrix> {
        if i == j {
            return Err(Error::InvalidArgument(format!(
                "{} needs two distinct sites",
                spec.scope
            )));
        }
        lift_many(&[(i, &a), (j, &b)], system)
    };
    match spec.scope {
        RotationScope::Global => kron_all(&vec![a.clone(); system.sites()], system.dim_cap()),
        RotationScope::Parot { k } => lift(&a, k, system),
        RotationScope::Biparot { i, j } => pair(i, j, a.clone()),
        RotationScope::GearInverse { i, j } => pair(i, j, a.adjoint()),
        RotationScope::GearConjugate { i, j } => pair(i, j, a.conjugate()),
    }
}

/// Axis uniform on the unit sphere and angle uniform on `[0, 2π)`.
pub fn sample_rotation<R: Rng + ?Sized>(rng: &mut R, scope: RotationScope) -> RotationSpec {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..TAU);
    let angle: f64 = rng.random_range(0.0..TAU);
    let r = (1.0 - z * z).max(0.0).sqrt();
    let axis = [r * phi.cos(), r * phi.sin(), z];
    let n = axis.iter().map(|x| x * x).sum::<f64>().sqrt();
    RotationSpec {
        axis: [axis[0] / n, axis[1] / n, axis[2] / n],
        angle,
        scope,
    }
}

/// Seeded stream of rotation samples; the same seed always yields the same rotations.
pub fn rotation_stream(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Largest `‖[candidate, U]‖_F / (‖candidate‖_F ‖U‖_F)` over `samples` seeded rotations.
pub fn max_commutator_residual(
    system: &SiteSystem,
    candidate: &ComplexMatrix,
    scope: RotationScope,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    let mut rng = rotation_stream(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let u = apply_rotation(system, &sample_rotation(&mut rng, scope))?;
        worst = worst.max(relative_commutator_norm(candidate, &u)?);
    }
    Ok(worst)
}

/// Checks that `candidate` commutes with every sampled rotation of the given scope.
pub fn casimir_check(
    system: &SiteSystem,
    candidate: &ComplexMatrix,
    scope: RotationScope,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<ClaimReport> {
    let residual = max_commutator_residual(system, candidate, scope, samples, seed)?;
    Ok(ClaimReport::asserted(
        format!("casimir.{scope}"),
        format!("the candidate commutes with every {scope} rotation"),
        samples,
        seed,
        residual,
        tol,
        serde_json::json!({ "scope": scope }),
    ))
}
