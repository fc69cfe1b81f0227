//! The symmetric group: permutations, composition and conjugacy classes.
//!
//! Points are numbered from 1 in the public interface. Composition is
//! right-to-left: `p.compose(&q)` applies `q` first, so
//! `(1 2)(2 3) = (1 2 3)` maps `1 → 2 → 3 → 1`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `N` for which class members are enumerated.
pub const MAX_ENUMERATED_DEGREE: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    /// `images[x] = p(x)`, zero-based.
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// From one-line notation with 1-based images: `[2, 3, 1]` is `1→2, 2→3, 3→1`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut zero_based = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidArgument(format!(
                    "{images:?} is not a permutation of 1..={n}"
                )));
            }
            seen[x - 1] = true;
            zero_based.push(x - 1);
        }
        Ok(Permutation { images: zero_based })
    }

    /// The cycle `(a₁ a₂ … a_k)` on `n` points.
    pub fn cycle(n: usize, points: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for &p in points {
            if p == 0 || p > n || seen[p - 1] {
                return Err(Error::InvalidArgument(format!(
                    "invalid cycle {points:?} on {n} points"
                )));
            }
            seen[p - 1] = true;
        }
        for (k, &p) in points.iter().enumerate() {
            images[p - 1] = points[(k + 1) % points.len()] - 1;
        }
        Ok(Permutation { images })
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidArgument(format!(
                "({a} {b}) is not a transposition"
            )));
        }
        Self::cycle(n, &[a, b])
    }

    /// Parses cycle notation such as `"(1 2 3)"`, `"(1,2)(3,4)"` or `"()"`.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self> {
        let mut result = Self::identity(n);
        let mut rest = text.trim();
        if rest.is_empty() || rest == "id" {
            return Ok(result);
        }
        let mut cycles = Vec::new();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected `(` in `{text}`")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in `{text}`")))?;
            let points = open[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad point `{s}` in `{text}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            cycles.push(points);
            rest = open[close + 1..].trim_start();
        }
        // Cycles written left to right compose right-to-left.
        for points in cycles.iter().rev() {
            if points.len() > 1 {
                result = Self::cycle(n, points)?.compose(&result)?;
            }
        }
        Ok(result)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `p(x)` for a 1-based point.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] + 1
    }

    /// One-line notation, 1-based.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    pub(crate) fn image0(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| k == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::Dimension(format!(
                "composing permutations of {} and {} points",
                self.degree(),
                other.degree()
            )));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.degree()];
        for (k, &x) in self.images.iter().enumerate() {
            inv[x] = k;
        }
        Permutation { images: inv }
    }

    /// Non-trivial cycles, each starting at its smallest point (1-based).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start + 1];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.images[x];
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    /// Cycle lengths including fixed points, sorted descending.
    pub fn cycle_type(&self) -> CycleType {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            parts.push(len);
        }
        CycleType::new(parts)
    }

    /// `+1` for even permutations, `-1` for odd ones.
    pub fn sign(&self) -> i32 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Adjacent transpositions `(k k+1)` whose product, left to right, is `self`.
    ///
    /// Obtained by bubble-sorting the one-line form: each swap of positions
    /// `k, k+1` right-multiplies by `(k k+1)`, so the recorded swaps, read in
    /// reverse, multiply back to `self`.
    pub fn adjacent_word(&self) -> Vec<(usize, usize)> {
        let mut w = self.images.clone();
        let mut swaps = Vec::new();
        let n = w.len();
        for pass in 0..n {
            let mut swapped = false;
            for k in 0..n.saturating_sub(1 + pass) {
                if w[k] > w[k + 1] {
                    w.swap(k, k + 1);
                    swaps.push((k + 1, k + 2));
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        swaps.reverse();
        swaps
    }

    /// A second decomposition: `(a₁ … a_k) = (a₁ a_k)(a₁ a_{k-1})…(a₁ a₂)`.
    pub fn cycle_word(&self) -> Vec<(usize, usize)> {
        let mut word = Vec::new();
        for cyc in self.cycles() {
            for k in (1..cyc.len()).rev() {
                word.push((cyc[0], cyc[k]));
            }
        }
        word
    }

    /// All permutations of `n` points in lexicographic order of one-line form.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut current: Vec<usize> = (0..n).collect();
        let mut out = vec![Permutation {
            images: current.clone(),
        }];
        // Standard next-permutation iteration.
        while let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) {
            let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
            out.push(Permutation {
                images: current.clone(),
            });
        }
        out
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.random_range(0..=i);
            images.swap(i, j);
        }
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{}", self)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A partition of `N`, parts sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    /// Identity class of `S(n)`.
    pub fn identity(n: usize) -> Self {
        CycleType(vec![1; n])
    }

    /// Transposition class `2+1+…+1` of `S(n)`.
    pub fn transpositions(n: usize) -> Self {
        let mut parts = vec![2];
        parts.extend(std::iter::repeat_n(1, n.saturating_sub(2)));
        CycleType(parts)
    }

    /// `N! / Π (m_c! · c^{m_c})`.
    pub fn class_size(&self) -> u128 {
        let n = self.degree();
        let mut size = factorial(n);
        let mut k = 0;
        while k < self.0.len() {
            let c = self.0[k];
            let m = self.0[k..].iter().take_while(|&&p| p == c).count();
            size /= factorial(m) * (c as u128).pow(m as u32);
            k += m;
        }
        size
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl FromStr for CycleType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split('+')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .ok()
                    .filter(|&x| x > 0)
                    .ok_or_else(|| Error::Parse(format!("bad cycle type `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CycleType::new(parts))
    }
}

impl From<CycleType> for String {
    fn from(c: CycleType) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for CycleType {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// All partitions of `n`, ordered from `1+1+…+1` up to `n`.
pub fn partitions(n: usize) -> Vec<CycleType> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<CycleType>) {
        if n == 0 {
            out.push(CycleType(prefix.clone()));
            return;
        }
        for p in (1..=max.min(n)).rev() {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjugacyClass {
    pub cycle_type: CycleType,
    pub size: u128,
    pub members: Vec<Permutation>,
}

/// Conjugacy classes of `S(n)` with their members, keyed by cycle type.
pub fn conjugacy_classes(n: usize) -> Result<Vec<ConjugacyClass>> {
    if n == 0 {
        return Err(Error::InvalidArgument("S(0) is not supported".into()));
    }
    if n > MAX_ENUMERATED_DEGREE {
        return Err(Error::Capacity {
            what: "conjugacy class enumeration degree",
            requested: n as u128,
            cap: MAX_ENUMERATED_DEGREE as u128,
        });
    }
    let mut classes: Vec<ConjugacyClass> = partitions(n)
        .into_iter()
        .map(|ct| ConjugacyClass {
            size: ct.class_size(),
            cycle_type: ct,
            members: Vec::new(),
        })
        .collect();
    for p in Permutation::all(n) {
        let ct = p.cycle_type();
        let class = classes
            .iter_mut()
            .find(|c| c.cycle_type == ct)
            .expect("every cycle type is a partition");
        class.members.push(p);
    }
    Ok(classes)
}

/// `(cycle type, size)` pairs without enumerating members.
pub fn class_sizes(n: usize) -> Vec<(CycleType, u128)> {
    partitions(n)
        .into_iter()
        .map(|ct| {
            let s = ct.class_size();
            (ct, s)
        })
        .collect()
}

/// The members of one class.
pub fn class_members(cycle_type: &CycleType) -> Result<Vec<Permutation>> {
    let n = cycle_type.degree();
    conjugacy_classes(n)?
        .into_iter()
        .find(|c| &c.cycle_type == cycle_type)
        .map(|c| c.members)
        .ok_or_else(|| Error::InvalidArgument(format!("no class {cycle_type} in S({n})")))
}
