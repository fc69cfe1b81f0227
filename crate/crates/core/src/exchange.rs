//! Exchange operators as polynomials in `S_i·S_j`, the permutation
//! representation they generate, class operators and the Hamiltonian summing
//! exchange operators over the interaction graph.

use std::collections::HashMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{AlgebraicValue, ComplexMatrix, RationalMatrix, SpectrumReport, ONE};
use crate::perm::{class_members, CycleType, Permutation};
use crate::qrep::{q_lift, q_lift_exact};
use crate::spin::{dot_op, SiteSystem, SpinQuantum};

/// The exchange polynomial `P_S` with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchroedingerPolynomial {
    spin: SpinQuantum,
    /// `A_0, …, A_{2S}`, lowest degree first.
    coefficients: Vec<BigRational>,
    /// `x_q = q(q-1)/2 - S(S+1)` for `q = 1..=2S+1`.
    roots_grid: Vec<BigRational>,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `p(x) * (x - root)` on coefficient vectors.
fn mul_linear(p: &[BigRational], root: &BigRational) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); p.len() + 1];
    for (k, c) in p.iter().enumerate() {
        out[k + 1] += c;
        out[k] -= c * root;
    }
    out
}

impl SchroedingerPolynomial {
    /// Expands
    /// `(-1)^{2S} (1 + Σ_{p=1}^{2S} (-2)^p/(p!)² Π_{q=1}^{p} (x - x_q))`
    /// into monomial coefficients.
    pub fn new(spin: SpinQuantum) -> Result<Self> {
        let t = spin.twice() as i64;
        if t == 0 {
            return Err(Error::InvalidArgument(
                "the exchange polynomial needs S ≥ 1/2".into(),
            ));
        }
        let casimir = rat(t * (t + 2), 4);
        let roots_grid: Vec<BigRational> = (1..=t + 1)
            .map(|q| rat(q * (q - 1), 2) - &casimir)
            .collect();

        let mut coefficients = vec![BigRational::zero(); t as usize + 1];
        coefficients[0] = BigRational::one();
        let mut product = vec![BigRational::one()];
        let mut weight = BigRational::one();
        for p in 1..=t {
            product = mul_linear(&product, &roots_grid[p as usize - 1]);
            // (-2)^p / (p!)^2, built incrementally
            weight *= rat(-2, p * p);
            for (k, c) in product.iter().enumerate() {
                coefficients[k] += &weight * c;
            }
        }
        if t % 2 == 1 {
            for c in coefficients.iter_mut() {
                *c = -c.clone();
            }
        }
        let poly = SchroedingerPolynomial {
            spin,
            coefficients,
            roots_grid,
        };
        assert!(
            poly.sign_law_holds(),
            "exchange polynomial for S = {spin} violates P(x_q) = (-1)^(2S+q-1)"
        );
        Ok(poly)
    }

    pub fn spin(&self) -> SpinQuantum {
        self.spin
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn roots_grid(&self) -> &[BigRational] {
        &self.roots_grid
    }

    pub fn degree(&self) -> usize {
        self.coefficients
            .iter()
            .rposition(|c| !c.is_zero())
            .unwrap_or(0)
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coefficients
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// `P(x_q) = (-1)^{2S+q-1}` for every grid point, checked exactly.
    pub fn sign_law_holds(&self) -> bool {
        let t = self.spin.twice() as usize;
        self.roots_grid.iter().enumerate().all(|(k, x)| {
            let q = k + 1;
            let expected = if (t + q - 1).is_multiple_of(2) {
                BigRational::one()
            } else {
                -BigRational::one()
            };
            self.eval(x) == expected
        })
    }

    /// Horner evaluation on a matrix argument, in floating point.
    pub fn eval_matrix(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let n = x.dim();
        let mut acc = ComplexMatrix::zeros(n);
        for c in self.coefficients.iter().rev() {
            let c = c.to_f64().expect("coefficient to f64");
            acc = (&acc * x).shift(Complex64::new(c, 0.0));
        }
        acc
    }

    /// Coefficients as `(num, den)` pairs.
    pub fn coefficient_pairs(&self) -> Vec<(String, String)> {
        self.coefficients
            .iter()
            .map(|c| (c.numer().to_string(), c.denom().to_string()))
            .collect()
    }
}

pub fn schroedinger_poly(spin: SpinQuantum) -> Result<SchroedingerPolynomial> {
    SchroedingerPolynomial::new(spin)
}

/// `P_S(S_i·S_j)` evaluated from the polynomial.
pub fn exchange_op(system: &SiteSystem, i: usize, j: usize) -> Result<ComplexMatrix> {
    let poly = SchroedingerPolynomial::new(system.spin())?;
    Ok(poly.eval_matrix(&dot_op(system, i, j)?))
}

fn check_degree(system: &SiteSystem, perm: &Permutation) -> Result<()> {
    if perm.degree() != system.sites() {
        return Err(Error::Dimension(format!(
            "permutation of {} points on a {}-site system",
            perm.degree(),
            system.sites()
        )));
    }
    Ok(())
}

/// Permutes tensor factors: the state of site `k` is carried to site `perm(k)`.
///
/// This is the exact 0/1 matrix with `|m_1 … m_N⟩ ↦ |m_{perm⁻¹(1)} … m_{perm⁻¹(N)}⟩`.
pub fn swap_oracle(system: &SiteSystem, perm: &Permutation) -> Result<ComplexMatrix> {
    let exact = swap_oracle_exact(system, perm)?;
    Ok(exact.to_complex())
}

pub fn swap_oracle_exact(system: &SiteSystem, perm: &Permutation) -> Result<RationalMatrix> {
    check_degree(system, perm)?;
    let dim = system.dim();
    let targets: Vec<usize> = (0..dim).map(|col| swap_target(system, perm, col)).collect();
    Ok(RationalMatrix::from_fn(dim, |r, c| {
        if targets[c] == r {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    }))
}

/// Index of the basis state that `swap_oracle(perm)` sends `index` to.
pub fn swap_target(system: &SiteSystem, perm: &Permutation, index: usize) -> usize {
    let levels = system.levels_of(index);
    let mut out = vec![0; levels.len()];
    for (k, &l) in levels.iter().enumerate() {
        out[perm.image0(k)] = l;
    }
    system.index_of(&out)
}

/// Product `V(t₁) V(t₂) … V(t_m)` of exchange operators for a word of transpositions.
pub fn vrep_word(system: &SiteSystem, word: &[(usize, usize)]) -> Result<ComplexMatrix> {
    let poly = SchroedingerPolynomial::new(system.spin())?;
    let mut cache: HashMap<(usize, usize), ComplexMatrix> = HashMap::new();
    let mut acc = ComplexMatrix::identity(system.dim());
    for &(a, b) in word {
        let key = (a.min(b), a.max(b));
        if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(key) {
            let op = poly.eval_matrix(&dot_op(system, key.0, key.1)?);
            e.insert(op);
        }
        acc = &acc * &cache[&key];
    }
    Ok(acc)
}

/// The representation of `S(N)` generated by exchange operators, evaluated
/// through the adjacent-transposition decomposition of `perm`.
pub fn vrep(system: &SiteSystem, perm: &Permutation) -> Result<ComplexMatrix> {
    check_degree(system, perm)?;
    vrep_word(system, &perm.adjacent_word())
}

/// Which representation a class operator is summed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Representation {
    /// Exchange operators permuting particles.
    P,
    /// Lifted permutations of single-particle states.
    Q,
}

impl FromStr for Representation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "P" | "p" => Ok(Representation::P),
            "Q" | "q" => Ok(Representation::Q),
            _ => Err(Error::Parse(format!(
                "unknown representation `{s}` (P or Q)"
            ))),
        }
    }
}

fn check_class_degree(
    system: &SiteSystem,
    cycle_type: &CycleType,
    rep: Representation,
) -> Result<()> {
    let (expected, what) = match rep {
        Representation::P => (system.sites(), "number of sites"),
        Representation::Q => (system.local_dim(), "local dimension"),
    };
    if cycle_type.degree() != expected {
        return Err(Error::InvalidArgument(format!(
            "cycle type {cycle_type} has degree {}, the {what} is {expected}",
            cycle_type.degree()
        )));
    }
    Ok(())
}

/// Sum of the representation's images over one conjugacy class.
///
/// In the P representation each summand is built from exchange polynomials.
pub fn class_operator(
    system: &SiteSystem,
    cycle_type: &CycleType,
    rep: Representation,
) -> Result<ComplexMatrix> {
    check_class_degree(system, cycle_type, rep)?;
    let members = class_members(cycle_type)?;
    let mut acc = ComplexMatrix::zeros(system.dim());
    for p in &members {
        let term = match rep {
            Representation::P => vrep(system, p)?,
            Representation::Q => q_lift(system, p)?,
        };
        acc = &acc + &term;
    }
    Ok(acc)
}

/// Exact class operator built from permutation matrices.
pub fn class_operator_exact(
    system: &SiteSystem,
    cycle_type: &CycleType,
    rep: Representation,
) -> Result<RationalMatrix> {
    check_class_degree(system, cycle_type, rep)?;
    let members = class_members(cycle_type)?;
    let dim = system.dim();
    let mut counts = vec![0i64; dim * dim];
    for p in &members {
        match rep {
            Representation::P => {
                for col in 0..dim {
                    counts[swap_target(system, p, col) * dim + col] += 1;
                }
            }
            Representation::Q => {
                let m = q_lift_exact(system, p)?;
                for (slot, q) in counts.iter_mut().zip(m.entries()) {
                    *slot += q.to_integer().to_i64().expect("0/1 entry");
                }
            }
        }
    }
    RationalMatrix::from_row_major(
        dim,
        counts
            .into_iter()
            .map(|c| BigRational::from_integer(c.into()))
            .collect(),
    )
}

/// `Σ_{(i,j) ∈ graph} P_S(S_i·S_j)`.
pub fn schroedinger_hamiltonian(system: &SiteSystem) -> Result<ComplexMatrix> {
    let poly = SchroedingerPolynomial::new(system.spin())?;
    let mut acc = ComplexMatrix::zeros(system.dim());
    for &(i, j) in system.edges() {
        acc = &acc + &poly.eval_matrix(&dot_op(system, i, j)?);
    }
    Ok(acc)
}

/// Exact version of [`schroedinger_hamiltonian`] from swap matrices.
pub fn schroedinger_hamiltonian_exact(system: &SiteSystem) -> Result<RationalMatrix> {
    let dim = system.dim();
    let n = system.sites();
    let mut counts = vec![0i64; dim * dim];
    for &(i, j) in system.edges() {
        let t = Permutation::transposition(n, i, j)?;
        for col in 0..dim {
            counts[swap_target(system, &t, col) * dim + col] += 1;
        }
    }
    RationalMatrix::from_row_major(
        dim,
        counts
            .into_iter()
            .map(|c| BigRational::from_integer(c.into()))
            .collect(),
    )
}

/// Eigenvalue of the `S(3)` transposition class sum on each irrep, with the
/// irrep dimension: trivial `3` (dim 1), standard `0` (dim 2), sign `-3` (dim 1).
pub const S3_TRANSPOSITION_CLASS_IRREPS: [(i64, usize); 3] = [(3, 1), (0, 2), (-3, 1)];

/// One eigenvalue of a class operator split into copies of an irrep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrepBlock {
    pub eigenvalue: AlgebraicValue,
    pub multiplicity: usize,
    pub irrep_dim: usize,
    /// `multiplicity / irrep_dim`.
    pub copies: usize,
}

/// Splits each eigenvalue's multiplicity into irrep copies using the
/// eigenvalue→irrep-dimension table `irreps`.
pub fn irrep_decomposition(
    spectrum: &SpectrumReport,
    irreps: &[(i64, usize)],
) -> Result<Vec<IrrepBlock>> {
    spectrum
        .classes
        .iter()
        .map(|class| {
            let value = class.exact.ok_or_else(|| {
                Error::Unsupported(format!("eigenvalue {} is not snapped", class.value))
            })?;
            let irrep_dim = irreps
                .iter()
                .find(|(v, _)| AlgebraicValue::integer(*v) == value)
                .map(|&(_, d)| d)
                .ok_or_else(|| {
                    Error::Unsupported(format!("no irrep with class eigenvalue {value}"))
                })?;
            if class.multiplicity % irrep_dim != 0 {
                return Err(Error::Unsupported(format!(
                    "multiplicity {} of {value} is not a multiple of {irrep_dim}",
                    class.multiplicity
                )));
            }
            Ok(IrrepBlock {
                eigenvalue: value,
                multiplicity: class.multiplicity,
                irrep_dim,
                copies: class.multiplicity / irrep_dim,
            })
        })
        .collect()
}

/// Unit basis vector for a product state given by per-site levels.
pub fn basis_state(system: &SiteSystem, levels: &[usize]) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); system.dim()];
    v[system.index_of(levels)] = ONE;
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutator, spectrum_of};

    fn spin(t: u32) -> SpinQuantum {
        SpinQuantum::from_twice(t)
    }

    fn sys(t: u32, n: usize) -> SiteSystem {
        SiteSystem::new(spin(t), n).unwrap()
    }

    #[test]
    fn spin_half_polynomial() {
        let p = schroedinger_poly(spin(1)).unwrap();
        assert_eq!(p.coefficients(), &[rat(1, 2), rat(2, 1)]);
    }

    #[test]
    fn spin_one_polynomial() {
        let p = schroedinger_poly(spin(2)).unwrap();
        assert_eq!(p.coefficients(), &[rat(-1, 1), rat(1, 1), rat(1, 1)]);
        assert_eq!(p.eval(&rat(-2, 1)), rat(1, 1));
        assert_eq!(p.eval(&rat(-1, 1)), rat(-1, 1));
        assert_eq!(p.eval(&rat(1, 1)), rat(1, 1));
    }

    #[test]
    fn spin_three_halves_polynomial() {
        let p = schroedinger_poly(spin(3)).unwrap();
        assert_eq!(p.degree(), 3);
        let grid = p.roots_grid().to_vec();
        assert_eq!(grid, vec![rat(-15, 4), rat(-11, 4), rat(-3, 4), rat(9, 4)]);
        for (k, x) in grid.iter().enumerate() {
            let q = k as i64 + 1;
            let expected = if (3 + q - 1) % 2 == 0 { 1 } else { -1 };
            assert_eq!(p.eval(x), rat(expected, 1));
        }
    }

    #[test]
    fn zero_spin_is_rejected() {
        assert!(schroedinger_poly(spin(0)).is_err());
    }

    #[test]
    fn spin_half_exchange_is_swap_matrix() {
        let s = sys(1, 2);
        let e = exchange_op(&s, 1, 2).unwrap();
        let exact = RationalMatrix::recognize(&e, 1e-12, 1).unwrap();
        let swap = RationalMatrix::from_integer_rows(&[
            &[1, 0, 0, 0],
            &[0, 0, 1, 0],
            &[0, 1, 0, 0],
            &[0, 0, 0, 1],
        ])
        .unwrap();
        assert_eq!(exact, swap);
    }

    #[test]
    fn spin_one_exchange_swaps_levels() {
        let s = sys(2, 2);
        let e = exchange_op(&s, 1, 2).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let out = e.apply(&basis_state(&s, &[a, b]));
                let expected = basis_state(&s, &[b, a]);
                let dev = out
                    .iter()
                    .zip(&expected)
                    .map(|(x, y)| (x - y).norm())
                    .fold(0.0, f64::max);
                assert!(dev < 1e-12);
            }
        }
    }

    #[test]
    fn exchange_is_an_involution() {
        for t in 1..=4 {
            let s = sys(t, 2);
            let e = exchange_op(&s, 1, 2).unwrap();
            assert!((&e * &e).max_abs_diff(&ComplexMatrix::identity(s.dim())) < 1e-10);
        }
    }

    #[test]
    fn swap_oracle_cycle_cubes_to_identity() {
        let s = sys(2, 3);
        let c = Permutation::cycle(3, &[1, 2, 3]).unwrap();
        let m = swap_oracle_exact(&s, &c).unwrap();
        let cube = m.mul(&m).unwrap().mul(&m).unwrap();
        assert_eq!(cube, RationalMatrix::identity(27));
        assert_eq!(
            swap_oracle(&s, &Permutation::identity(3)).unwrap(),
            ComplexMatrix::identity(27)
        );
    }

    #[test]
    fn swap_oracle_moves_site_states() {
        // (1 2 3) carries site 1's state to site 2, site 2's to 3, site 3's to 1.
        let s = sys(2, 3);
        let c = Permutation::cycle(3, &[1, 2, 3]).unwrap();
        let down_up_up = s.index_of(&[2, 0, 0]);
        assert_eq!(swap_target(&s, &c, down_up_up), s.index_of(&[0, 2, 0]));
        // its inverse realizes |↓↑↑⟩ → |↑↑↓⟩
        assert_eq!(
            swap_target(&s, &c.inverse(), down_up_up),
            s.index_of(&[0, 0, 2])
        );
    }

    #[test]
    fn vrep_of_generator_is_exchange() {
        let s = sys(2, 3);
        let t = Permutation::transposition(3, 1, 2).unwrap();
        assert!(
            vrep(&s, &t)
                .unwrap()
                .max_abs_diff(&exchange_op(&s, 1, 2).unwrap())
                < 1e-12
        );
    }

    #[test]
    fn vrep_matches_oracle_on_all_of_s3() {
        let s = sys(2, 3);
        for p in Permutation::all(3) {
            let v = vrep(&s, &p).unwrap();
            assert!(v.max_abs_diff(&swap_oracle(&s, &p).unwrap()) < 1e-10, "{p}");
        }
    }

    #[test]
    fn decomposition_independence() {
        let s = sys(1, 4);
        for p in Permutation::all(4) {
            let a = vrep_word(&s, &p.adjacent_word()).unwrap();
            let b = vrep_word(&s, &p.cycle_word()).unwrap();
            assert!(a.max_abs_diff(&b) < 1e-12);
        }
    }

    #[test]
    fn transposition_class_is_schroedinger_hamiltonian() {
        let s = sys(2, 3);
        let c1 = class_operator(&s, &CycleType::transpositions(3), Representation::P).unwrap();
        let h = schroedinger_hamiltonian(&s).unwrap();
        assert!(c1.max_abs_diff(&h) < 1e-10);
        assert!((c1.trace().re - 27.0).abs() < 1e-9);
        let exact = schroedinger_hamiltonian_exact(&s).unwrap();
        assert_eq!(
            exact,
            class_operator_exact(&s, &CycleType::transpositions(3), Representation::P).unwrap()
        );
    }

    #[test]
    fn identity_class_is_identity() {
        for (t, n) in [(1, 2), (2, 3)] {
            let s = sys(t, n);
            let c0 = class_operator(&s, &CycleType::identity(n), Representation::P).unwrap();
            assert!(c0.max_abs_diff(&ComplexMatrix::identity(s.dim())) < 1e-12);
        }
    }

    #[test]
    fn class_operators_are_central() {
        let s = sys(1, 4);
        let classes = crate::perm::conjugacy_classes(4).unwrap();
        let reps: Vec<ComplexMatrix> = Permutation::all(4)
            .iter()
            .map(|p| vrep(&s, p).unwrap())
            .collect();
        for class in &classes {
            let c = class_operator(&s, &class.cycle_type, Representation::P).unwrap();
            assert!(c.hermiticity_deviation() < 1e-10);
            for g in &reps {
                assert!(commutator(&c, g).unwrap().max_abs() < 1e-10);
            }
        }
    }

    #[test]
    fn class_degree_is_checked() {
        let s = sys(2, 3);
        assert!(class_operator(&s, &CycleType::transpositions(4), Representation::P).is_err());
        assert!(class_operator(&s, &CycleType::transpositions(2), Representation::Q).is_err());
    }

    #[test]
    fn spin_one_three_sites_spectrum_and_blocks() {
        let s = sys(2, 3);
        let h = schroedinger_hamiltonian(&s).unwrap();
        let exact = schroedinger_hamiltonian_exact(&s).unwrap();
        let r = spectrum_of(&h, Some(&exact)).unwrap();
        let i = AlgebraicValue::integer;
        assert!(r.matches(&[(i(-3), 1), (i(0), 16), (i(3), 10)]));
        assert!(r.all_exact_verified());
        let blocks = irrep_decomposition(&r, &S3_TRANSPOSITION_CLASS_IRREPS).unwrap();
        let copies: Vec<(i64, usize, usize)> = blocks
            .iter()
            .map(|b| (b.eigenvalue.to_f64() as i64, b.irrep_dim, b.copies))
            .collect();
        assert_eq!(copies, vec![(-3, 1, 1), (0, 2, 8), (3, 1, 10)]);
    }
}
