//! Spin quantum numbers, site systems and the spin operators built on them.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{lift, lift_many, ComplexMatrix, DEFAULT_DIM_CAP, ZERO};

/// Largest supported `2S`.
pub const MAX_TWICE_SPIN: u32 = 7;

/// A spin `S` stored exactly as the integer `2S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpinQuantum(u32);

impl SpinQuantum {
    pub const HALF: SpinQuantum = SpinQuantum(1);
    pub const ONE: SpinQuantum = SpinQuantum(2);

    pub const fn from_twice(twice_spin: u32) -> Self {
        SpinQuantum(twice_spin)
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    /// `2S + 1`.
    pub fn local_dim(self) -> usize {
        self.0 as usize + 1
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// `S(S+1)` as an exact rational.
    pub fn casimir(self) -> Rational64 {
        let t = self.0 as i64;
        Rational64::new(t * (t + 2), 4)
    }

    /// Magnetic quantum numbers `S, S-1, ..., -S`, doubled.
    pub fn twice_m_values(self) -> impl Iterator<Item = i64> {
        let t = self.0 as i64;
        (0..=t).map(move |k| t - 2 * k)
    }
}

impl fmt::Display for SpinQuantum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for SpinQuantum {
    type Err = Error;

    /// Accepts `"1/2"`, `"1"`, `"3/2"`, ... (also `"0.5"`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid spin `{s}`: expected n or n/2"));
        let twice = if let Some((num, den)) = s.split_once('/') {
            let num: u32 = num.trim().parse().map_err(|_| bad())?;
            match den.trim() {
                "2" => num,
                "1" => num * 2,
                _ => return Err(bad()),
            }
        } else if let Ok(n) = s.parse::<u32>() {
            n * 2
        } else {
            let x: f64 = s.parse().map_err(|_| bad())?;
            let t = (2.0 * x).round();
            if (2.0 * x - t).abs() > 1e-12 || t < 0.0 {
                return Err(bad());
            }
            t as u32
        };
        Ok(SpinQuantum(twice))
    }
}

/// `N` sites of spin `S` with an interaction graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiteSystem {
    sites: usize,
    spin: SpinQuantum,
    /// Unordered pairs `(i, j)` with `1 ≤ i < j ≤ N`.
    edges: Vec<(usize, usize)>,
    dim_cap: usize,
}

impl SiteSystem {
    /// Complete interaction graph, default dimension cap.
    pub fn new(spin: SpinQuantum, sites: usize) -> Result<Self> {
        Self::with_cap(spin, sites, DEFAULT_DIM_CAP)
    }

    pub fn with_cap(spin: SpinQuantum, sites: usize, dim_cap: usize) -> Result<Self> {
        if sites == 0 {
            return Err(Error::InvalidArgument(
                "a system needs at least one site".into(),
            ));
        }
        if spin.twice() > MAX_TWICE_SPIN {
            return Err(Error::Capacity {
                what: "twice spin",
                requested: spin.twice() as u128,
                cap: MAX_TWICE_SPIN as u128,
            });
        }
        let requested = (spin.local_dim() as u128)
            .checked_pow(sites as u32)
            .unwrap_or(u128::MAX);
        if requested > dim_cap as u128 {
            return Err(Error::Capacity {
                what: "total dimension (2S+1)^N",
                requested,
                cap: dim_cap as u128,
            });
        }
        let edges = (1..=sites)
            .flat_map(|i| (i + 1..=sites).map(move |j| (i, j)))
            .collect();
        Ok(SiteSystem {
            sites,
            spin,
            edges,
            dim_cap,
        })
    }

    /// Replaces the interaction graph. Pairs are normalized to `i < j`.
    pub fn with_graph(mut self, edges: &[(usize, usize)]) -> Result<Self> {
        let mut out: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            for s in [a, b] {
                if s == 0 || s > self.sites {
                    return Err(Error::SiteOutOfRange {
                        site: s,
                        sites: self.sites,
                    });
                }
            }
            if a == b {
                return Err(Error::InvalidArgument(format!(
                    "self-loop ({a},{b}) in graph"
                )));
            }
            let e = (a.min(b), a.max(b));
            if !out.contains(&e) {
                out.push(e);
            }
        }
        out.sort_unstable();
        self.edges = out;
        Ok(self)
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn spin(&self) -> SpinQuantum {
        self.spin
    }

    pub fn local_dim(&self) -> usize {
        self.spin.local_dim()
    }

    /// `(2S+1)^N`.
    pub fn dim(&self) -> usize {
        self.local_dim().pow(self.sites as u32)
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_complete_graph(&self) -> bool {
        self.edges.len() == self.sites * (self.sites - 1) / 2
    }

    pub(crate) fn check_site(&self, site: usize) -> Result<()> {
        if site == 0 || site > self.sites {
            return Err(Error::SiteOutOfRange {
                site,
                sites: self.sites,
            });
        }
        Ok(())
    }

    /// Decomposes a basis index into per-site level indices (site 1 first).
    ///
    /// Level `k` is the state with `m = S - k`.
    pub fn levels_of(&self, mut index: usize) -> Vec<usize> {
        let d = self.local_dim();
        let mut levels = vec![0; self.sites];
        for slot in levels.iter_mut().rev() {
            *slot = index % d;
            index /= d;
        }
        levels
    }

    pub fn index_of(&self, levels: &[usize]) -> usize {
        let d = self.local_dim();
        levels.iter().fold(0, |acc, &l| acc * d + l)
    }
}

/// The spin-S matrices in the basis `m = S, S-1, ..., -S`.
#[derive(Clone, Debug)]
pub struct SpinMatrices {
    pub x: ComplexMatrix,
    pub y: ComplexMatrix,
    pub z: ComplexMatrix,
    pub plus: ComplexMatrix,
    pub minus: ComplexMatrix,
}

impl SpinMatrices {
    pub fn components(&self) -> [&ComplexMatrix; 3] {
        [&self.x, &self.y, &self.z]
    }
}

pub fn spin_matrices(spin: SpinQuantum) -> SpinMatrices {
    let d = spin.local_dim();
    let s = spin.value();
    let m_of = |k: usize| s - k as f64;
    let z = ComplexMatrix::real_diagonal(&(0..d).map(m_of).collect::<Vec<_>>());
    // S+ |m> = sqrt(S(S+1) - m(m+1)) |m+1>; level k-1 holds m+1.
    let plus = ComplexMatrix::from_fn(d, |r, c| {
        if c >= 1 && r == c - 1 {
            let m = m_of(c);
            Complex64::new((s * (s + 1.0) - m * (m + 1.0)).sqrt(), 0.0)
        } else {
            ZERO
        }
    });
    let minus = plus.adjoint();
    let x = (&plus + &minus).scale_real(0.5);
    let y = (&plus - &minus).scale(Complex64::new(0.0, -0.5));
    SpinMatrices {
        x,
        y,
        z,
        plus,
        minus,
    }
}

/// `S_i · S_j = Σ_a S^a_i S^a_j` on the system's tensor space.
pub fn dot_op(system: &SiteSystem, i: usize, j: usize) -> Result<ComplexMatrix> {
    system.check_site(i)?;
    system.check_site(j)?;
    if i == j {
        return Err(Error::InvalidArgument(format!(
            "dot_op({i},{i}): the self term is the scalar S(S+1)·I, request it directly"
        )));
    }
    let sm = spin_matrices(system.spin());
    let mut acc = ComplexMatrix::zeros(system.dim());
    for a in sm.components() {
        acc = &acc + &lift_many(&[(i, a), (j, a)], system)?;
    }
    Ok(acc)
}

/// Total angular momentum and per-site Casimirs.
#[derive(Clone, Debug)]
pub struct TotalOps {
    pub jx: ComplexMatrix,
    pub jy: ComplexMatrix,
    pub jz: ComplexMatrix,
    /// `J² = (J^x)² + (J^y)² + (J^z)²`
    pub j2: ComplexMatrix,
    /// `S_i² = S(S+1)·I` for each site.
    pub site_casimirs: Vec<ComplexMatrix>,
}

pub fn total_ops(system: &SiteSystem) -> Result<TotalOps> {
    let sm = spin_matrices(system.spin());
    let n = system.dim();
    let mut comps = [
        ComplexMatrix::zeros(n),
        ComplexMatrix::zeros(n),
        ComplexMatrix::zeros(n),
    ];
    for site in 1..=system.sites() {
        for (acc, a) in comps.iter_mut().zip(sm.components()) {
            *acc = &*acc + &lift(a, site, system)?;
        }
    }
    let [jx, jy, jz] = comps;
    let j2 = &(&(&jx * &jx) + &(&jy * &jy)) + &(&jz * &jz);
    let c = system.spin().casimir();
    let casimir = ComplexMatrix::identity(n).scale_real(*c.numer() as f64 / *c.denom() as f64);
    Ok(TotalOps {
        jx,
        jy,
        jz,
        j2,
        site_casimirs: vec![casimir; system.sites()],
    })
}

/// Choice of the scalar `C(N)` in `H₀ = C(N)·I + 2 Σ S_i·S_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ConstantConvention {
    Zero,
    /// `C(N) = N·S(S+1)`, the sum of the site Casimirs.
    #[default]
    CasimirSum,
    /// `C = |E|/2` for spin 1/2, so that `H₀` equals the sum of exchange operators.
    ExchangeMatch,
}

impl ConstantConvention {
    pub fn name(self) -> &'static str {
        match self {
            ConstantConvention::Zero => "zero",
            ConstantConvention::CasimirSum => "casimir_sum",
            ConstantConvention::ExchangeMatch => "exchange_match",
        }
    }

    /// The constant `C(N)` for a system.
    pub fn constant(self, system: &SiteSystem) -> Result<Rational64> {
        match self {
            ConstantConvention::Zero => Ok(Rational64::from_integer(0)),
            ConstantConvention::CasimirSum => Ok(system.spin().casimir() * system.sites() as i64),
            ConstantConvention::ExchangeMatch => {
                if system.spin() != SpinQuantum::HALF {
                    return Err(Error::Convention {
                        convention: self.name(),
                        twice_spin: system.spin().twice(),
                    });
                }
                Ok(Rational64::new(system.edges().len() as i64, 2))
            }
        }
    }
}

impl FromStr for ConstantConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" => Ok(ConstantConvention::Zero),
            "casimir_sum" | "casimir-sum" => Ok(ConstantConvention::CasimirSum),
            "exchange_match" | "exchange-match" => Ok(ConstantConvention::ExchangeMatch),
            _ => Err(Error::Parse(format!("unknown constant convention `{s}`"))),
        }
    }
}

/// Heisenberg Hamiltonian together with the constant it was built with.
#[derive(Clone, Debug)]
pub struct Heisenberg {
    pub matrix: ComplexMatrix,
    pub convention: ConstantConvention,
    pub constant: Rational64,
}

/// `H₀ = C(N)·I + 2 Σ_{(i,j) ∈ graph} S_i·S_j`.
pub fn heisenberg(system: &SiteSystem, convention: ConstantConvention) -> Result<Heisenberg> {
    let constant = convention.constant(system)?;
    let c = *constant.numer() as f64 / *constant.denom() as f64;
    let mut h = ComplexMatrix::identity(system.dim()).scale_real(c);
    for &(i, j) in system.edges() {
        h = &h + &dot_op(system, i, j)?.scale_real(2.0);
    }
    Ok(Heisenberg {
        matrix: h,
        convention,
        constant,
    })
}
