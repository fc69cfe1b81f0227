//! Clebsch–Gordan multiplicities of `(spin S)^{⊗N}` and the spectrum of `H₀`
//! read off from them without diagonalizing anything.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{AlgebraicValue, SpectrumClass, SpectrumReport};
use crate::spin::{ConstantConvention, SiteSystem, SpinQuantum};

/// Multiplicity `m_s` of each total spin `s` in `(spin S)^{⊗N}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultipletTable {
    pub spin: SpinQuantum,
    pub sites: usize,
    /// Keyed by `2s`.
    pub rows: BTreeMap<u32, u128>,
}

impl MultipletTable {
    /// `Σ_s m_s (2s+1)`.
    pub fn dimension(&self) -> u128 {
        self.rows.iter().map(|(&ts, &m)| m * (ts as u128 + 1)).sum()
    }

    /// `(2S+1)^N`.
    pub fn expected_dimension(&self) -> u128 {
        (self.spin.local_dim() as u128).pow(self.sites as u32)
    }

    pub fn sum_rule_holds(&self) -> bool {
        self.dimension() == self.expected_dimension()
    }

    pub fn multiplicity(&self, s: SpinQuantum) -> u128 {
        self.rows.get(&s.twice()).copied().unwrap_or(0)
    }

    /// `(s, m_s)` pairs, lowest `s` first.
    pub fn entries(&self) -> impl Iterator<Item = (SpinQuantum, u128)> + '_ {
        self.rows
            .iter()
            .map(|(&ts, &m)| (SpinQuantum::from_twice(ts), m))
    }
}

impl fmt::Display for MultipletTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "S = {}, N = {}", self.spin, self.sites)?;
        writeln!(f, "{:>6} {:>12} {:>10}", "s", "m_s", "2s+1")?;
        for (s, m) in self.entries() {
            writeln!(f, "{:>6} {:>12} {:>10}", s.to_string(), m, s.local_dim())?;
        }
        write!(
            f,
            "sum rule: {} = {}^{} = {} ({})",
            self.dimension(),
            self.spin.local_dim(),
            self.sites,
            self.expected_dimension(),
            if self.sum_rule_holds() {
                "ok"
            } else {
                "VIOLATED"
            }
        )
    }
}

/// Iterates `m^{(n+1)}_j = Σ_{j' : |j'-S| ≤ j ≤ j'+S} m^{(n)}_{j'}`.
pub fn multiplicities(spin: SpinQuantum, sites: usize) -> Result<MultipletTable> {
    if sites == 0 {
        return Err(Error::InvalidArgument("need at least one site".into()));
    }
    let d = spin.local_dim() as u128;
    if (d as f64).powi(sites as i32) > u128::MAX as f64 / 4.0 {
        return Err(Error::Capacity {
            what: "multiplet table dimension",
            requested: u128::MAX,
            cap: u128::MAX / 4,
        });
    }
    let t = spin.twice();
    let mut rows: BTreeMap<u32, u128> = BTreeMap::from([(t, 1)]);
    for _ in 1..sites {
        let mut next = BTreeMap::new();
        for (&tj, &m) in &rows {
            let lo = tj.abs_diff(t);
            for tk in (lo..=tj + t).step_by(2) {
                *next.entry(tk).or_insert(0) += m;
            }
        }
        rows = next;
    }
    let table = MultipletTable { spin, sites, rows };
    debug_assert!(table.sum_rule_holds());
    Ok(table)
}

/// Spectrum of `H₀ = C(N) + J² - N·S(S+1)`: eigenvalue `C + s(s+1) - N S(S+1)`
/// with multiplicity `m_s (2s+1)`, all exact.
pub fn h0_spectrum_multiplet(
    system: &SiteSystem,
    convention: ConstantConvention,
) -> Result<SpectrumReport> {
    if !system.is_complete_graph() {
        return Err(Error::Unsupported(
            "the multiplet method needs the complete interaction graph".into(),
        ));
    }
    let constant = convention.constant(system)?;
    let shift = constant - system.spin().casimir() * system.sites() as i64;
    let table = multiplicities(system.spin(), system.sites())?;
    Ok(report_from_table(
        &table,
        |s| s.casimir() + shift,
        Rational64::from_integer(1),
    ))
}

/// Spectrum of `Σ_{i<j} S_i·S_j = (J² - N S(S+1))/2` on the complete graph.
pub fn pair_sum_spectrum_multiplet(system: &SiteSystem) -> Result<SpectrumReport> {
    let half = Rational64::new(1, 2);
    let mut r = h0_spectrum_multiplet(system, ConstantConvention::Zero)?;
    r = scale_report(&r, half);
    Ok(r)
}

fn report_from_table(
    table: &MultipletTable,
    eigenvalue: impl Fn(SpinQuantum) -> Rational64,
    scale: Rational64,
) -> SpectrumReport {
    let mut classes: Vec<(Rational64, usize)> = table
        .entries()
        .filter(|&(_, m)| m > 0)
        .map(|(s, m)| (eigenvalue(s) * scale, (m * s.local_dim() as u128) as usize))
        .collect();
    classes.sort();
    let dim = classes.iter().map(|c| c.1).sum();
    let trace = classes
        .iter()
        .map(|(v, m)| *v.numer() as f64 / *v.denom() as f64 * *m as f64)
        .sum();
    SpectrumReport {
        dim,
        tol: 0.0,
        classes: classes
            .into_iter()
            .map(|(v, m)| {
                let exact = AlgebraicValue::rational(*v.numer(), *v.denom());
                SpectrumClass {
                    value: exact.to_f64(),
                    exact: Some(exact),
                    multiplicity: m,
                    residual: 0.0,
                    snapped: true,
                    exact_verified: true,
                    rule: "multiplet".to_string(),
                }
            })
            .collect(),
        trace,
    }
}

fn scale_report(r: &SpectrumReport, factor: Rational64) -> SpectrumReport {
    let f = *factor.numer() as f64 / *factor.denom() as f64;
    SpectrumReport {
        dim: r.dim,
        tol: r.tol,
        classes: r
            .classes
            .iter()
            .map(|c| {
                let exact = c.exact.map(|v| {
                    let q = v.as_rational().expect("multiplet values are rational") * factor;
                    AlgebraicValue::rational(*q.numer(), *q.denom())
                });
                SpectrumClass {
                    value: c.value * f,
                    exact,
                    ..c.clone()
                }
            })
            .collect(),
        trace: r.trace * f,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spin(t: u32) -> SpinQuantum {
        SpinQuantum::from_twice(t)
    }

    fn rows(table: &MultipletTable) -> Vec<(u32, u128)> {
        table.rows.iter().map(|(&k, &v)| (k, v)).collect()
    }

    #[test]
    fn three_spin_halves() {
        let t = multiplicities(spin(1), 3).unwrap();
        assert_eq!(rows(&t), vec![(1, 2), (3, 1)]);
    }

    #[test]
    fn three_spin_ones() {
        let t = multiplicities(spin(2), 3).unwrap();
        assert_eq!(rows(&t), vec![(0, 1), (2, 3), (4, 2), (6, 1)]);
        assert_eq!(t.dimension(), 27);
    }

    #[test]
    fn single_site() {
        for tw in 0..=7 {
            let t = multiplicities(spin(tw), 1).unwrap();
            assert_eq!(rows(&t), vec![(tw, 1)]);
        }
    }

    #[test]
    fn sum_rule_and_top_multiplet() {
        for tw in 0..=6 {
            for n in 1..=8 {
                let t = multiplicities(spin(tw), n).unwrap();
                assert!(t.sum_rule_holds(), "S={tw}/2 N={n}");
                assert_eq!(t.multiplicity(spin(tw * n as u32)), 1);
                // parity of 2s is fixed by N·2S
                assert!(t.rows.keys().all(|k| k % 2 == (tw * n as u32) % 2));
            }
        }
    }

    #[test]
    fn h0_for_spin_one_triple() {
        let s = SiteSystem::new(spin(2), 3).unwrap();
        let r = h0_spectrum_multiplet(&s, ConstantConvention::CasimirSum).unwrap();
        let i = AlgebraicValue::integer;
        assert!(r.matches(&[(i(0), 1), (i(2), 9), (i(6), 10), (i(12), 7)]));
    }

    #[test]
    fn pair_sums() {
        let q = AlgebraicValue::rational;
        let two = SiteSystem::new(spin(1), 2).unwrap();
        assert!(pair_sum_spectrum_multiplet(&two)
            .unwrap()
            .matches(&[(q(-3, 4), 1), (q(1, 4), 3)]));
        let three = SiteSystem::new(spin(1), 3).unwrap();
        assert!(pair_sum_spectrum_multiplet(&three)
            .unwrap()
            .matches(&[(q(-3, 4), 4), (q(3, 4), 4)]));
    }

    #[test]
    fn incomplete_graph_is_unsupported() {
        let s = SiteSystem::new(spin(1), 3)
            .unwrap()
            .with_graph(&[(1, 2), (2, 3)])
            .unwrap();
        assert!(matches!(
            h0_spectrum_multiplet(&s, ConstantConvention::Zero),
            Err(Error::Unsupported(_))
        ));
    }
}
