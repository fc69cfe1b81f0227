//! Dual family of the symmetric parts of the spin-1 state permutations, and
//! the change of basis that pairs it against `(J₁, J₂, J₃)`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{j_class_ops, lie_closure, qtilde, require_three_states, s3};
use crate::error::{Error, Result};
use crate::linalg::{
    commutator, general_eigenvalues, kron_all, spectrum_of, ComplexMatrix, SpectrumReport,
};
use crate::spin::{SiteSystem, SpinQuantum};

const SYM_DIM: usize = 6;
const RANK_RCOND: f64 = 1e-10;
const CLOSURE_DEPTH: usize = 4;

/// Coordinates of a real symmetric 3×3 matrix in the Frobenius-orthonormal
/// basis `e₁₁, e₂₂, e₃₃, (e₁₂+e₂₁)/√2, (e₁₃+e₃₁)/√2, (e₂₃+e₃₂)/√2`.
fn sym_coords(m: &ComplexMatrix) -> DVector<f64> {
    let s = std::f64::consts::SQRT_2;
    let g = |r, c| m.get(r, c).re;
    DVector::from_vec(vec![
        g(0, 0),
        g(1, 1),
        g(2, 2),
        s * 0.5 * (g(0, 1) + g(1, 0)),
        s * 0.5 * (g(0, 2) + g(2, 0)),
        s * 0.5 * (g(1, 2) + g(2, 1)),
    ])
}

fn sym_matrix(v: &[f64]) -> ComplexMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let rows = [
        [v[0], h * v[3], h * v[4]],
        [h * v[3], v[1], h * v[5]],
        [h * v[4], h * v[5], v[2]],
    ];
    ComplexMatrix::from_fn(3, |r, c| Complex64::new(rows[r][c], 0.0))
}

/// Flips the sign so the first entry above `1e-12` in magnitude is positive.
fn orient(v: &mut DVector<f64>) {
    if let Some(x) = v.iter().find(|x| x.abs() > 1e-12) {
        if *x < 0.0 {
            *v = -v.clone();
        }
    }
}

/// Spectrum of one dual generator: snapped when Hermitian, raw complex otherwise.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DualSpectrum {
    Hermitian(SpectrumReport),
    General { eigenvalues: Vec<[f64; 2]> },
}

/// Spectrum of `c·J₁ + d·j₁`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CombinedSpectrum {
    pub c: f64,
    pub d: f64,
    pub spectrum: DualSpectrum,
    /// Every eigenvalue within tolerance of an integer.
    pub integer_valued: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DualFamilyReport {
    pub epsilon: i32,
    pub kernel_params: [f64; 2],
    /// `q̃₁₂, q̃₁₃, q̃₂₃, q̃₁₂₃` (row-major, real).
    pub parent_duals: Vec<Vec<f64>>,
    /// Kernel basis `M̃₁, M̃₂` (row-major, real).
    pub kernel_basis: Vec<Vec<f64>>,
    /// `max |Tr(q̃_α sym(Q̃_β)) - δ_αβ|` over the four targets.
    pub parent_orthogonality_residual: f64,
    /// `G[γ][β] = Tr(k_γ J_β)`.
    pub pairing_gram: Vec<Vec<f64>>,
    pub pairing_rank: usize,
    /// The change of basis `j_α = Σ_γ B[α][γ] k_γ`, `B = G⁺`.
    pub basis_change: Vec<Vec<f64>>,
    /// `max |Tr(j_α J_β) - δ_αβ|`.
    pub orthogonality_residual: f64,
    pub dual_closure: LieProbe,
    pub joint_closure: LieProbe,
    pub spectra: Vec<DualSpectrum>,
    pub combined: Vec<CombinedSpectrum>,
    #[serde(skip)]
    pub duals: Vec<ComplexMatrix>,
    #[serde(skip)]
    pub k_family: Vec<ComplexMatrix>,
}

/// Summary of a closure run used as a probe.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LieProbe {
    pub span_dimension: usize,
    pub closure_dimension: usize,
    pub dims_by_depth: Vec<usize>,
    pub stabilized: bool,
    /// Closure adds nothing to the span of the inputs.
    pub closes: bool,
}

fn probe(gens: &[ComplexMatrix]) -> Result<LieProbe> {
    let r = lie_closure(gens, CLOSURE_DEPTH)?;
    Ok(LieProbe {
        span_dimension: r.dims_by_depth[0],
        closure_dimension: r.closure_dimension,
        dims_by_depth: r.dims_by_depth.clone(),
        stabilized: r.stabilized,
        closes: r.stabilized && r.closure_dimension == r.dims_by_depth[0],
    })
}

fn spectrum(m: &ComplexMatrix) -> Result<DualSpectrum> {
    if m.hermiticity_deviation() <= 1e-10 * m.frobenius_norm().max(1.0) {
        let sym = (m + &m.adjoint()).scale_real(0.5);
        Ok(DualSpectrum::Hermitian(spectrum_of(&sym, None)?))
    } else {
        let ev = general_eigenvalues(m)?;
        Ok(DualSpectrum::General {
            eigenvalues: ev.into_iter().map(|(re, im)| [re, im]).collect(),
        })
    }
}

fn integer_valued(s: &DualSpectrum) -> bool {
    match s {
        DualSpectrum::Hermitian(r) => r.classes.iter().all(|c| c.rule == "integer"),
        DualSpectrum::General { eigenvalues } => eigenvalues.iter().all(|[re, im]| {
            im.abs() <= 1e-8 && (re - re.round()).abs() <= 1e-8 * re.abs().max(1.0)
        }),
    }
}

fn rows_of(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| m[(r, c)]).collect())
        .collect()
}

/// Builds the dual family for `ε ∈ {-1, 0}` and pairs it with `(J₁, J₂, J₃)`.
///
/// The four parent duals are the minimal-norm solution of
/// `Tr(q̃_α sym(Q̃_β)) = δ_αβ` in the six-dimensional space of real symmetric
/// matrices, shifted by `kernel_params` along the two-dimensional kernel.
/// After lifting, `k₁ = q₁₂+q₁₃+q₂₃+ε(q₁₂₃+q₁₃₂)` with `q₁₃₂ = q₁₂₃`,
/// `k₂ = Σ_{α≺β} e_α e_β [q_α, q_β]` over the order `(12),(13),(23),(123),(132)`
/// with `e = 1` on transpositions and `ε` on 3-cycles, and
/// `k₃ = 2[q₁₂,[q₁₃,q₂₃]]`. The `j_α` are `G⁺` applied to the `k_γ`.
pub fn dual_family(
    system: &SiteSystem,
    epsilon: i32,
    kernel_params: [f64; 2],
) -> Result<DualFamilyReport> {
    require_three_states(system)?;
    if epsilon != -1 && epsilon != 0 {
        return Err(Error::InvalidArgument(format!(
            "epsilon must be -1 or 0, got {epsilon}"
        )));
    }
    let q = |c: &str| qtilde(SpinQuantum::ONE, &s3(c));
    let q123 = q("(1 2 3)")?;
    let sym123 = (&q123 + &q123.transpose()).scale_real(0.5);
    let targets = [q("(1 2)")?, q("(1 3)")?, q("(2 3)")?, sym123];

    let t = DMatrix::from_columns(&targets.iter().map(sym_coords).collect::<Vec<_>>());
    let gram = t.transpose() * &t;
    let svd = gram.clone().svd(false, false);
    let smax = svd.singular_values.max();
    let rank = svd
        .singular_values
        .iter()
        .filter(|&&s| s > RANK_RCOND * smax)
        .count();
    if rank < targets.len() {
        return Err(Error::SingularGram {
            rank,
            size: targets.len(),
        });
    }
    let gram_inv = gram.try_inverse().ok_or(Error::SingularGram {
        rank,
        size: targets.len(),
    })?;
    let x = &t * &gram_inv;

    // kernel: complement of the target span, by Gram-Schmidt on the projector's columns
    let projector = DMatrix::<f64>::identity(SYM_DIM, SYM_DIM) - &x * t.transpose();
    let mut kernel: Vec<DVector<f64>> = Vec::new();
    for col in 0..SYM_DIM {
        let mut v = projector.column(col).into_owned();
        for k in &kernel {
            v -= k * k.dot(&v);
        }
        let n = v.norm();
        if n > 1e-8 {
            let mut v = v / n;
            orient(&mut v);
            kernel.push(v);
        }
        if kernel.len() == 2 {
            break;
        }
    }
    if kernel.len() != 2 {
        return Err(Error::SingularGram {
            rank: SYM_DIM - kernel.len(),
            size: SYM_DIM,
        });
    }
    let shift = &kernel[0] * kernel_params[0] + &kernel[1] * kernel_params[1];
    let parents: Vec<ComplexMatrix> = (0..targets.len())
        .map(|a| {
            let v = x.column(a) + &shift;
            sym_matrix(v.as_slice())
        })
        .collect();
    let mut parent_orthogonality_residual = 0.0f64;
    for (a, pa) in parents.iter().enumerate() {
        for (b, tb) in targets.iter().enumerate() {
            let delta = if a == b { 1.0 } else { 0.0 };
            let v = pa.trace_product(tb).re;
            parent_orthogonality_residual = parent_orthogonality_residual.max((v - delta).abs());
        }
    }

    let lifted = parents
        .iter()
        .map(|p| kron_all(&vec![p.clone(); system.sites()], system.dim_cap()))
        .collect::<Result<Vec<_>>>()?;
    let (q12, q13, q23, qc) = (&lifted[0], &lifted[1], &lifted[2], &lifted[3]);
    let e = epsilon as f64;
    let k1 = &(&(q12 + q13) + q23) + &qc.scale_real(2.0 * e);
    let ordered: [(&ComplexMatrix, f64); 5] =
        [(q12, 1.0), (q13, 1.0), (q23, 1.0), (qc, e), (qc, e)];
    let mut k2 = ComplexMatrix::zeros(system.dim());
    for a in 0..ordered.len() {
        for b in a + 1..ordered.len() {
            let w = ordered[a].1 * ordered[b].1;
            if w != 0.0 {
                k2 = &k2 + &commutator(ordered[a].0, ordered[b].0)?.scale_real(w);
            }
        }
    }
    let k3 = commutator(q12, &commutator(q13, q23)?)?.scale_real(2.0);
    let ks = vec![k1, k2, k3];

    let jops = j_class_ops(system)?;
    let js = jops.as_array();
    let g = DMatrix::from_fn(3, 3, |r, c| ks[r].trace_product(js[c]).re);
    let gsvd = g.clone().svd(true, true);
    let gmax = gsvd.singular_values.max();
    let pairing_rank = gsvd
        .singular_values
        .iter()
        .filter(|&&s| s > RANK_RCOND * gmax.max(f64::MIN_POSITIVE))
        .count();
    let b = gsvd
        .pseudo_inverse(RANK_RCOND * gmax.max(f64::MIN_POSITIVE))
        .map_err(|e| Error::Unsupported(format!("pseudo-inverse failed: {e}")))?;
    let duals: Vec<ComplexMatrix> = (0..3)
        .map(|a| {
            (0..3).fold(ComplexMatrix::zeros(system.dim()), |acc, c| {
                &acc + &ks[c].scale_real(b[(a, c)])
            })
        })
        .collect();
    let mut orthogonality_residual = 0.0f64;
    for (a, ja) in duals.iter().enumerate() {
        for (bi, jb) in js.iter().enumerate() {
            let delta = if a == bi { 1.0 } else { 0.0 };
            let v = ja.trace_product(jb);
            orthogonality_residual = orthogonality_residual.max((v - delta).norm());
        }
    }

    let dual_closure = probe(&duals)?;
    let mut joint: Vec<ComplexMatrix> = js.iter().map(|m| (*m).clone()).collect();
    joint.extend(duals.iter().cloned());
    let joint_closure = probe(&joint)?;

    let spectra = duals.iter().map(spectrum).collect::<Result<Vec<_>>>()?;
    let mut combined = Vec::new();
    for c in [-1.0, 0.0, 1.0] {
        for d in [-1.0, 0.0, 1.0] {
            if c == 0.0 && d == 0.0 {
                continue;
            }
            let m = &jops.j1.scale_real(c) + &duals[0].scale_real(d);
            let spectrum = spectrum(&m)?;
            combined.push(CombinedSpectrum {
                c,
                d,
                integer_valued: integer_valued(&spectrum),
                spectrum,
            });
        }
    }

    Ok(DualFamilyReport {
        epsilon,
        kernel_params,
        parent_duals: parents
            .iter()
            .map(|p| p.to_row_major().iter().map(|z| z.re).collect())
            .collect(),
        kernel_basis: kernel
            .iter()
            .map(|k| {
                sym_matrix(k.as_slice())
                    .to_row_major()
                    .iter()
                    .map(|z| z.re)
                    .collect()
            })
            .collect(),
        parent_orthogonality_residual,
        pairing_gram: rows_of(&g),
        pairing_rank,
        basis_change: rows_of(&b),
        orthogonality_residual,
        dual_closure,
        joint_closure,
        spectra,
        combined,
        duals,
        k_family: ks,
    })
}
