//! Lie closure of a set of matrices under nested commutators, and commutator
//! structure constants in a word basis.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{commutator, span_residual, ComplexMatrix};

/// Relative rank tolerance used when deciding whether a commutator is new.
pub const CLOSURE_RANK_RTOL: f64 = 1e-10;

/// A right-nested commutator word `[g_{w₀}, [g_{w₁}, … g_{w_last}]]`, as
/// zero-based generator indices.
pub type Word = Vec<usize>;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LieClosureReport {
    pub generator_count: usize,
    pub closure_dimension: usize,
    /// First nesting order whose commutators add nothing new (order 1 is the
    /// generators themselves). Equals `max_depth` when `stabilized` is false.
    pub stabilization_depth: usize,
    /// Last nesting order that enlarged the span.
    pub spanning_depth: usize,
    /// Span dimension after each nesting order, starting at order 1.
    pub dims_by_depth: Vec<usize>,
    pub stabilized: bool,
    /// The word producing each basis element, in insertion order.
    pub words: Vec<Word>,
    /// Basis elements as evaluated words (not orthonormalized).
    #[serde(skip)]
    pub basis: Vec<ComplexMatrix>,
}

impl LieClosureReport {
    pub fn word_labels(&self, names: &[String]) -> Vec<String> {
        self.words.iter().map(|w| word_label(w, names)).collect()
    }
}

/// Renders a word such as `[a,[b,c]]`.
pub fn word_label(word: &[usize], names: &[String]) -> String {
    let name = |k: usize| names.get(k).cloned().unwrap_or_else(|| format!("g{k}"));
    match word {
        [] => String::new(),
        [k] => name(*k),
        [k, rest @ ..] => format!("[{},{}]", name(*k), word_label(rest, names)),
    }
}

/// Evaluates a right-nested commutator word on the given generators.
pub fn evaluate_word(generators: &[ComplexMatrix], word: &[usize]) -> Result<ComplexMatrix> {
    let (&last, init) = word
        .split_last()
        .ok_or_else(|| Error::InvalidArgument("empty commutator word".into()))?;
    let gen = |k: usize| {
        generators
            .get(k)
            .ok_or_else(|| Error::InvalidArgument(format!("word refers to generator {k}")))
    };
    let mut acc = gen(last)?.clone();
    for &k in init.iter().rev() {
        acc = commutator(gen(k)?, &acc)?;
    }
    Ok(acc)
}

/// Incremental orthonormal basis under `⟨A, B⟩ = Tr(A B^H)`.
struct Orthonormal {
    vectors: Vec<Vec<Complex64>>,
    scale: f64,
}

impl Orthonormal {
    fn new(scale: f64) -> Self {
        Orthonormal {
            vectors: Vec::new(),
            scale,
        }
    }

    /// Adds `m` if it is independent of the current span; returns whether it was added.
    fn try_add(&mut self, m: &ComplexMatrix) -> bool {
        let mut v = m.to_row_major();
        let norm0 = norm(&v);
        let threshold = CLOSURE_RANK_RTOL * norm0.max(self.scale);
        if norm0 <= threshold {
            return false;
        }
        // two passes of modified Gram-Schmidt
        for _ in 0..2 {
            for q in &self.vectors {
                let c: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, a) in v.iter_mut().zip(q) {
                    *x -= c * a;
                }
            }
        }
        let n = norm(&v);
        if n <= threshold {
            return false;
        }
        for x in v.iter_mut() {
            *x /= n;
        }
        self.vectors.push(v);
        true
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Grows `span(generators)` by commutators with the generators until nothing
/// new appears or `max_depth` nesting orders have been taken.
///
/// Only commutators of newly added elements need to be formed at each order:
/// everything older already had its commutators taken one order earlier.
pub fn lie_closure(generators: &[ComplexMatrix], max_depth: usize) -> Result<LieClosureReport> {
    let first = generators
        .first()
        .ok_or_else(|| Error::InvalidArgument("no generators".into()))?;
    if let Some(g) = generators.iter().find(|g| g.dim() != first.dim()) {
        return Err(Error::Dimension(format!(
            "generators of dimension {} and {}",
            first.dim(),
            g.dim()
        )));
    }
    if max_depth == 0 {
        return Err(Error::InvalidArgument(
            "max_depth must be at least 1".into(),
        ));
    }
    let scale = generators
        .iter()
        .map(ComplexMatrix::frobenius_norm)
        .fold(0.0, f64::max);
    let mut ortho = Orthonormal::new(scale);
    let mut words: Vec<Word> = Vec::new();
    let mut basis: Vec<ComplexMatrix> = Vec::new();

    let mut frontier = Vec::new();
    for (k, g) in generators.iter().enumerate() {
        if ortho.try_add(g) {
            frontier.push(basis.len());
            words.push(vec![k]);
            basis.push(g.clone());
        }
    }
    let mut dims_by_depth = vec![basis.len()];
    let mut stabilized = false;
    let mut stabilization_depth = max_depth;

    for depth in 2..=max_depth {
        let mut next = Vec::new();
        for &idx in &frontier {
            for (k, g) in generators.iter().enumerate() {
                let c = commutator(g, &basis[idx])?;
                if ortho.try_add(&c) {
                    next.push(basis.len());
                    let mut w = vec![k];
                    w.extend_from_slice(&words[idx]);
                    words.push(w);
                    basis.push(c);
                }
            }
        }
        dims_by_depth.push(basis.len());
        if next.is_empty() {
            stabilized = true;
            stabilization_depth = depth;
            break;
        }
        frontier = next;
    }
    let spanning_depth = dims_by_depth
        .windows(2)
        .rposition(|w| w[1] > w[0])
        .map_or(1, |k| k + 2);

    Ok(LieClosureReport {
        generator_count: generators.len(),
        closure_dimension: basis.len(),
        stabilization_depth,
        spanning_depth,
        dims_by_depth,
        stabilized,
        words,
        basis,
    })
}

/// Commutator table `[W_a, W_b] = Σ_c f_{abc} W_c` in a (non-orthonormal) basis.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StructureConstants {
    pub dim: usize,
    /// Row-major `f[a][b][c]`.
    pub constants: Vec<Complex64>,
    /// Largest least-squares residual of a commutator against the basis,
    /// relative to its norm. Zero (to roundoff) when the span closes.
    pub closure_residual: f64,
    pub basis_rank: usize,
}

impl StructureConstants {
    pub fn get(&self, a: usize, b: usize, c: usize) -> Complex64 {
        self.constants[(a * self.dim + b) * self.dim + c]
    }
}

pub fn structure_constants(basis: &[ComplexMatrix]) -> Result<StructureConstants> {
    let m = basis.len();
    let mut constants = vec![Complex64::new(0.0, 0.0); m * m * m];
    let mut closure_residual = 0.0f64;
    let mut basis_rank = m;
    for a in 0..m {
        for b in 0..m {
            let c = commutator(&basis[a], &basis[b])?;
            let fit = span_residual(&c, basis)?;
            basis_rank = fit.rank;
            let rel = fit.residual / fit.target_norm.max(1.0);
            closure_residual = closure_residual.max(rel);
            for (k, z) in fit.coefficients.iter().enumerate() {
                constants[(a * m + b) * m + k] = *z;
            }
        }
    }
    Ok(StructureConstants {
        dim: m,
        constants,
        closure_residual,
        basis_rank,
    })
}

/// Result of comparing the commutator tables of two generator sets.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CayleyComparison {
    /// Words of the reference closure, rendered with the generator names.
    pub words: Vec<String>,
    pub reference_dims_by_depth: Vec<usize>,
    pub other_dims_by_depth: Vec<usize>,
    /// Rank of the reference words evaluated on the other generators.
    pub other_word_rank: usize,
    pub max_constant_deviation: f64,
    pub reference_closure_residual: f64,
    pub other_closure_residual: f64,
    pub matches: bool,
}

/// Compares commutator tables of two generator sets with the same labels.
///
/// Both closures are computed independently. The reference closure fixes a
/// word basis; the same words are evaluated on the other generators, and the
/// structure constants of both tables are computed in those word bases and
/// compared entrywise.
pub fn compare_cayley_tables(
    reference: &[ComplexMatrix],
    other: &[ComplexMatrix],
    names: &[String],
    max_depth: usize,
    tol: f64,
) -> Result<CayleyComparison> {
    if reference.len() != other.len() {
        return Err(Error::InvalidArgument(format!(
            "{} reference generators, {} others",
            reference.len(),
            other.len()
        )));
    }
    let ref_closure = lie_closure(reference, max_depth)?;
    let other_closure = lie_closure(other, max_depth)?;
    let other_basis = ref_closure
        .words
        .iter()
        .map(|w| evaluate_word(other, w))
        .collect::<Result<Vec<_>>>()?;
    let f_ref = structure_constants(&ref_closure.basis)?;
    let f_other = structure_constants(&other_basis)?;
    let max_constant_deviation = f_ref
        .constants
        .iter()
        .zip(&f_other.constants)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    let matches = max_constant_deviation <= tol
        && f_other.basis_rank == ref_closure.closure_dimension
        && f_ref.closure_residual <= tol
        && f_other.closure_residual <= tol
        && ref_closure.dims_by_depth == other_closure.dims_by_depth;
    Ok(CayleyComparison {
        words: ref_closure.word_labels(names),
        reference_dims_by_depth: ref_closure.dims_by_depth,
        other_dims_by_depth: other_closure.dims_by_depth,
        other_word_rank: f_other.basis_rank,
        max_constant_deviation,
        reference_closure_residual: f_ref.closure_residual,
        other_closure_residual: f_other.closure_residual,
        matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::I;

    fn pauli() -> [ComplexMatrix; 3] {
        let z = Complex64::new(0.0, 0.0);
        let o = Complex64::new(1.0, 0.0);
        [
            ComplexMatrix::from_rows(vec![vec![z, o], vec![o, z]]).unwrap(),
            ComplexMatrix::from_rows(vec![vec![z, -I], vec![I, z]]).unwrap(),
            ComplexMatrix::from_rows(vec![vec![o, z], vec![z, -o]]).unwrap(),
        ]
    }

    #[test]
    fn single_generator_spans_itself() {
        let [x, _, _] = pauli();
        let r = lie_closure(&[x], 5).unwrap();
        assert_eq!(r.closure_dimension, 1);
        assert_eq!(r.spanning_depth, 1);
        assert_eq!(r.dims_by_depth, vec![1, 1]);
        assert!(r.stabilized);
    }

    #[test]
    fn two_paulis_generate_su2() {
        let [x, y, _] = pauli();
        let r = lie_closure(&[x, y], 6).unwrap();
        assert_eq!(r.closure_dimension, 3);
        assert_eq!(r.dims_by_depth, vec![2, 3, 3]);
        assert_eq!(r.words[2], vec![1, 0]);
        let f = structure_constants(&r.basis).unwrap();
        assert!(f.closure_residual < 1e-12);
        // the third basis element is the word [σy, σx], so [σx, σy] = -W₂
        assert!((f.get(0, 1, 2) + Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn unstabilized_closure_is_reported() {
        let [x, y, _] = pauli();
        let r = lie_closure(&[x, y], 1).unwrap();
        assert!(!r.stabilized);
        assert_eq!(r.stabilization_depth, 1);
    }

    #[test]
    fn words_evaluate_to_basis() {
        let [x, y, z] = pauli();
        let gens = [x, y.scale_real(0.5), z];
        let r = lie_closure(&gens, 4).unwrap();
        for (w, b) in r.words.iter().zip(&r.basis) {
            assert!(evaluate_word(&gens, w).unwrap().max_abs_diff(b) < 1e-14);
        }
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        assert_eq!(word_label(&[0, 1, 2], &names), "[a,[b,c]]");
    }

    #[test]
    fn scaled_copy_has_different_constants() {
        let [x, y, _] = pauli();
        let names: Vec<String> = vec!["x".into(), "y".into()];
        let same = compare_cayley_tables(
            &[x.clone(), y.clone()],
            &[x.clone(), y.clone()],
            &names,
            4,
            1e-10,
        )
        .unwrap();
        assert!(same.matches);
        let scaled = compare_cayley_tables(
            &[x.clone(), y.clone()],
            &[x.scale_real(2.0), y],
            &names,
            4,
            1e-10,
        )
        .unwrap();
        assert!(!scaled.matches);
    }
}
