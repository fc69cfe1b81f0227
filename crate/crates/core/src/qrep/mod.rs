//! The Q-representation: permutations of the `2S+1` single-particle states,
//! lifted to all `N` sites at once, and single-site lifts (`O_i`).

mod dual;
mod lie;

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    commutator, kron_all, lift, relative_commutator_norm, span_residual, ComplexMatrix,
    RationalMatrix, SpanFit,
};
use crate::perm::Permutation;
use crate::spin::{SiteSystem, SpinQuantum};

pub use dual::{dual_family, CombinedSpectrum, DualFamilyReport, DualSpectrum};
pub use lie::{
    compare_cayley_tables, evaluate_word, lie_closure, structure_constants, word_label,
    CayleyComparison, LieClosureReport, StructureConstants, Word, CLOSURE_RANK_RTOL,
};

fn check_state_perm(spin: SpinQuantum, perm: &Permutation) -> Result<()> {
    if perm.degree() != spin.local_dim() {
        return Err(Error::Dimension(format!(
            "permutation of {} states for spin {spin} with {} states",
            perm.degree(),
            spin.local_dim()
        )));
    }
    Ok(())
}

/// `Q̃(perm) e_k = e_{perm(k)}` on the spin basis `m = S, …, -S`.
pub fn qtilde(spin: SpinQuantum, perm: &Permutation) -> Result<ComplexMatrix> {
    Ok(qtilde_exact(spin, perm)?.to_complex())
}

pub fn qtilde_exact(spin: SpinQuantum, perm: &Permutation) -> Result<RationalMatrix> {
    check_state_perm(spin, perm)?;
    Ok(RationalMatrix::from_fn(spin.local_dim(), |r, c| {
        if perm.image0(c) == r {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    }))
}

/// `Q(perm) = Q̃(perm)^{⊗N}`.
pub fn q_lift(system: &SiteSystem, perm: &Permutation) -> Result<ComplexMatrix> {
    let q = qtilde(system.spin(), perm)?;
    kron_all(&vec![q; system.sites()], system.dim_cap())
}

pub fn q_lift_exact(system: &SiteSystem, perm: &Permutation) -> Result<RationalMatrix> {
    let q = qtilde_exact(system.spin(), perm)?;
    let mut acc = RationalMatrix::identity(1);
    for _ in 0..system.sites() {
        acc = acc.kron(&q);
    }
    Ok(acc)
}

/// `O_i = 1 ⊗ … ⊗ Q̃(perm) ⊗ … ⊗ 1` with `Q̃` on site `i`.
pub fn o_lift(system: &SiteSystem, site: usize, perm: &Permutation) -> Result<ComplexMatrix> {
    lift(&qtilde(system.spin(), perm)?, site, system)
}

fn require_three_states(system: &SiteSystem) -> Result<()> {
    if system.local_dim() != 3 {
        return Err(Error::Unsupported(format!(
            "construction is specific to three single-particle states; local dimension is {}",
            system.local_dim()
        )));
    }
    Ok(())
}

pub(crate) fn s3(cycles: &str) -> Permutation {
    Permutation::parse_cycles(3, cycles).expect("valid S(3) cycle notation")
}

/// The operators `J₁ = Σ ε_α Q_α` (transpositions `+1`, 3-cycles `-1`),
/// `J₂ = 1` and `J₃ = 2[Q₁₂,[Q₁₃,Q₂₃]]` of the spin-1 Q-representation.
#[derive(Clone, Debug)]
pub struct JClassOps {
    pub j1: ComplexMatrix,
    pub j2: ComplexMatrix,
    pub j3: ComplexMatrix,
    /// `‖[J₁,J₃]‖_F / (‖J₁‖_F ‖J₃‖_F)`.
    pub j1_j3_commutator: f64,
}

impl JClassOps {
    pub fn as_array(&self) -> [&ComplexMatrix; 3] {
        [&self.j1, &self.j2, &self.j3]
    }
}

pub fn j_class_ops(system: &SiteSystem) -> Result<JClassOps> {
    require_three_states(system)?;
    let q = |c: &str| q_lift(system, &s3(c));
    let (q12, q13, q23) = (q("(1 2)")?, q("(1 3)")?, q("(2 3)")?);
    let (q123, q132) = (q("(1 2 3)")?, q("(1 3 2)")?);
    let j1 = &(&(&(&q12 + &q13) + &q23) - &q123) - &q132;
    let j2 = ComplexMatrix::identity(system.dim());
    let j3 = commutator(&q12, &commutator(&q13, &q23)?)?.scale_real(2.0);
    let j1_j3_commutator = relative_commutator_norm(&j1, &j3)?;
    Ok(JClassOps {
        j1,
        j2,
        j3,
        j1_j3_commutator,
    })
}

/// Both sides of the single-site identity for `J̃₃`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ParentJ3Comparison {
    /// `2[Q̃₁₂,[Q̃₁₃,Q̃₂₃]]`, row-major integers.
    pub commutator: Vec<Vec<i64>>,
    /// `2(Q̃₁₃ - Q̃₁₂)`.
    pub claimed: Vec<Vec<i64>>,
    pub max_deviation: f64,
    /// Coefficients `(a, b, c)` of the commutator in `a Q̃₁₂ + b Q̃₁₃ + c Q̃₂₃`.
    pub transposition_coefficients: [f64; 3],
    pub transposition_residual: f64,
}

fn integer_rows(m: &ComplexMatrix) -> Vec<Vec<i64>> {
    (0..m.dim())
        .map(|r| {
            (0..m.dim())
                .map(|c| m.get(r, c).re.round() as i64)
                .collect()
        })
        .collect()
}

pub fn parent_j3_comparison() -> Result<ParentJ3Comparison> {
    let q = |c: &str| qtilde(SpinQuantum::ONE, &s3(c));
    let (q12, q13, q23) = (q("(1 2)")?, q("(1 3)")?, q("(2 3)")?);
    let lhs = commutator(&q12, &commutator(&q13, &q23)?)?.scale_real(2.0);
    let rhs = (&q13 - &q12).scale_real(2.0);
    let fit = span_residual(&lhs, &[q12, q13, q23])?;
    Ok(ParentJ3Comparison {
        commutator: integer_rows(&lhs),
        claimed: integer_rows(&rhs),
        max_deviation: lhs.max_abs_diff(&rhs),
        transposition_coefficients: [
            fit.coefficients[0].re,
            fit.coefficients[1].re,
            fit.coefficients[2].re,
        ],
        transposition_residual: fit.residual,
    })
}

/// Operator families offered for span membership tests.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum SpanFamily {
    /// `Q(g)` for every `g` in `S(2S+1)`, in lexicographic order.
    QLiftGenerators,
    /// Products `O_{i₁}⋯O_{i_k}` over all site subsets (including the empty
    /// product), ordered by size and then lexicographically, with `O_i` built
    /// from the given state permutation.
    OLiftProducts { sigma: Permutation },
    /// `J₁, J₂, J₃` followed by the dual generators for this `ε`.
    JAndDual { epsilon: i32 },
}

impl fmt::Display for SpanFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpanFamily::QLiftGenerators => write!(f, "q_lift"),
            SpanFamily::OLiftProducts { sigma } => write!(f, "o_lift{sigma}"),
            SpanFamily::JAndDual { epsilon } => write!(f, "j_and_dual(eps={epsilon})"),
        }
    }
}

impl FromStr for SpanFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q_lift" => Ok(SpanFamily::QLiftGenerators),
            "o_lift" => Ok(SpanFamily::OLiftProducts {
                sigma: Permutation::transposition(2, 1, 2)?,
            }),
            "j_and_dual" => Ok(SpanFamily::JAndDual { epsilon: -1 }),
            _ => Err(Error::Parse(format!(
                "unknown span family `{s}` (q_lift, o_lift, j_and_dual)"
            ))),
        }
    }
}

/// Members of a span family with their labels.
pub fn span_family(
    system: &SiteSystem,
    family: &SpanFamily,
) -> Result<Vec<(String, ComplexMatrix)>> {
    match family {
        SpanFamily::QLiftGenerators => Permutation::all(system.local_dim())
            .into_iter()
            .map(|p| Ok((format!("Q{p}"), q_lift(system, &p)?)))
            .collect(),
        SpanFamily::OLiftProducts { sigma } => {
            let n = system.sites();
            let singles = (1..=n)
                .map(|i| o_lift(system, i, sigma))
                .collect::<Result<Vec<_>>>()?;
            let mut subsets: Vec<Vec<usize>> = (0u32..1 << n)
                .map(|mask| (0..n).filter(|k| mask & (1 << k) != 0).collect())
                .collect();
            subsets.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
            Ok(subsets
                .into_iter()
                .map(|s| {
                    let label = if s.is_empty() {
                        "1".to_string()
                    } else {
                        s.iter()
                            .map(|k| format!("O{}", k + 1))
                            .collect::<Vec<_>>()
                            .join("")
                    };
                    let m = s
                        .iter()
                        .fold(ComplexMatrix::identity(system.dim()), |acc, &k| {
                            &acc * &singles[k]
                        });
                    (label, m)
                })
                .collect())
        }
        SpanFamily::JAndDual { epsilon } => {
            let j = j_class_ops(system)?;
            let d = dual_family(system, *epsilon, [0.0, 0.0])?;
            let mut out = vec![
                ("J1".to_string(), j.j1),
                ("J2".to_string(), j.j2),
                ("J3".to_string(), j.j3),
            ];
            for (k, m) in d.duals.into_iter().enumerate() {
                out.push((format!("j{}", k + 1), m));
            }
            Ok(out)
        }
    }
}

/// Least-squares fit of `h` in the span of a named family.
#[derive(Clone, Debug, Serialize)]
pub struct SpanMembership {
    pub family: SpanFamily,
    pub labels: Vec<String>,
    pub fit: SpanFit,
}

pub fn q_span_membership(
    h: &ComplexMatrix,
    system: &SiteSystem,
    family: &SpanFamily,
) -> Result<SpanMembership> {
    let members = span_family(system, family)?;
    let (labels, basis): (Vec<String>, Vec<ComplexMatrix>) = members.into_iter().unzip();
    let fit = span_residual(h, &basis)?;
    Ok(SpanMembership {
        family: family.clone(),
        labels,
        fit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_eigs, AlgebraicValue};

    fn spin(t: u32) -> SpinQuantum {
        SpinQuantum::from_twice(t)
    }

    fn rows(m: &ComplexMatrix) -> Vec<Vec<i64>> {
        integer_rows(m)
    }

    #[test]
    fn qtilde_matrices_for_spin_one() {
        assert_eq!(
            rows(&qtilde(spin(2), &s3("(1 2)")).unwrap()),
            vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]
        );
        assert_eq!(
            rows(&qtilde(spin(2), &s3("(2 3)")).unwrap()),
            vec![vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]
        );
        assert_eq!(
            qtilde(spin(2), &s3("()")).unwrap(),
            ComplexMatrix::identity(3)
        );
        assert!(qtilde(spin(1), &s3("(1 2)")).is_err());
    }

    #[test]
    fn spin_half_q12_is_antidiagonal() {
        let s = SiteSystem::new(spin(1), 2).unwrap();
        let q = q_lift(&s, &Permutation::transposition(2, 1, 2).unwrap()).unwrap();
        assert_eq!(
            rows(&q),
            vec![
                vec![0, 0, 0, 1],
                vec![0, 0, 1, 0],
                vec![0, 1, 0, 0],
                vec![1, 0, 0, 0]
            ]
        );
    }

    #[test]
    fn bell_states_diagonalize_q12() {
        let s = SiteSystem::new(spin(1), 2).unwrap();
        let q = q_lift(&s, &Permutation::transposition(2, 1, 2).unwrap()).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let bell: [[f64; 4]; 4] = [
            [r, 0.0, 0.0, r],
            [r, 0.0, 0.0, -r],
            [0.0, r, r, 0.0],
            [0.0, r, -r, 0.0],
        ];
        for v in bell {
            let v: Vec<_> = v
                .iter()
                .map(|&x| num_complex::Complex64::new(x, 0.0))
                .collect();
            let w = q.apply(&v);
            let lambda = w
                .iter()
                .zip(&v)
                .map(|(a, b)| a * b.conj())
                .sum::<num_complex::Complex64>();
            let dev = w
                .iter()
                .zip(&v)
                .map(|(a, b)| (a - lambda * b).norm())
                .fold(0.0, f64::max);
            assert!(dev < 1e-15);
            assert!((lambda.re.abs() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn q_lift_is_a_homomorphism_exactly() {
        let s = SiteSystem::new(spin(2), 2).unwrap();
        let all = Permutation::all(3);
        for a in &all {
            for b in &all {
                let lhs = q_lift_exact(&s, &a.compose(b).unwrap()).unwrap();
                let rhs = q_lift_exact(&s, a)
                    .unwrap()
                    .mul(&q_lift_exact(&s, b).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn o_lifts_commute_and_square_to_one() {
        let s = SiteSystem::new(spin(1), 3).unwrap();
        let x = Permutation::transposition(2, 1, 2).unwrap();
        let o: Vec<_> = (1..=3).map(|i| o_lift(&s, i, &x).unwrap()).collect();
        for a in &o {
            assert_eq!(a * a, ComplexMatrix::identity(8));
            for b in &o {
                assert_eq!(commutator(a, b).unwrap().max_abs(), 0.0);
            }
        }
    }

    #[test]
    fn parent_lie_algebra_stabilizes_at_order_three() {
        let gens: Vec<_> = ["(1 2)", "(1 3)", "(2 3)"]
            .iter()
            .map(|c| qtilde(spin(2), &s3(c)).unwrap())
            .collect();
        let r = lie_closure(&gens, 8).unwrap();
        assert_eq!(r.dims_by_depth, vec![3, 4, 4]);
        assert_eq!(r.stabilization_depth, 3);
        assert_eq!(r.spanning_depth, 2);
    }

    #[test]
    fn j_operators_for_spin_one_triple() {
        let s = SiteSystem::new(spin(2), 3).unwrap();
        let j = j_class_ops(&s).unwrap();
        assert!(j.j1_j3_commutator < 1e-12);
        assert!((j.j1.trace().re - 3.0).abs() < 1e-12);
        assert!(j.j3.is_hermitian(1e-12));
        let eig = hermitian_eigs(&j.j3).unwrap();
        let top = eig.values.last().unwrap();
        assert!((top - AlgebraicValue::sqrt3(0, 4).to_f64()).abs() < 1e-9);
        assert!(j_class_ops(&SiteSystem::new(spin(1), 3).unwrap()).is_err());
    }

    #[test]
    fn parent_j3_sides() {
        let c = parent_j3_comparison().unwrap();
        assert_eq!(
            c.commutator,
            vec![vec![-4, 0, 4], vec![0, 4, -4], vec![4, -4, 0]]
        );
        assert_eq!(
            c.claimed,
            vec![vec![0, -2, 2], vec![-2, 2, 0], vec![2, 0, -2]]
        );
        assert!(c.max_deviation > 1.0);
        assert!(c.transposition_residual < 1e-12);
        let [a, b, d] = c.transposition_coefficients;
        assert!(a.abs() < 1e-12 && (b - 4.0).abs() < 1e-12 && (d + 4.0).abs() < 1e-12);
    }

    #[test]
    fn o_products_are_ordered() {
        let s = SiteSystem::new(spin(1), 3).unwrap();
        let fam = SpanFamily::OLiftProducts {
            sigma: Permutation::transposition(2, 1, 2).unwrap(),
        };
        let labels: Vec<_> = span_family(&s, &fam)
            .unwrap()
            .into_iter()
            .map(|(l, _)| l)
            .collect();
        assert_eq!(
            labels,
            ["1", "O1", "O2", "O3", "O1O2", "O1O3", "O2O3", "O1O2O3"]
        );
    }

    #[test]
    fn member_of_own_family() {
        let s = SiteSystem::new(spin(2), 2).unwrap();
        let h = q_lift(&s, &s3("(1 2 3)")).unwrap().scale_real(3.0);
        let m = q_span_membership(&h, &s, &SpanFamily::QLiftGenerators).unwrap();
        assert!(m.fit.residual < 1e-12);
        assert_eq!(m.labels.len(), 6);
    }
}
