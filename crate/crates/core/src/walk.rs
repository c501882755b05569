//! Lattice walks over the alphabet {N, E} and their basic order structure.
//!
//! A walk starts at the origin; N increments the ordinate, E the abscissa.
//! The *height* of an E step is the number of N steps before it.

use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Step {
    N,
    E,
}

/// A finite walk with North and East unit steps.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Walk(Vec<Step>);

impl Walk {
    pub fn new(steps: Vec<Step>) -> Self {
        Walk(steps)
    }

    pub fn empty() -> Self {
        Walk(Vec::new())
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// (number of E steps, number of N steps).
    pub fn endpoint(&self) -> (usize, usize) {
        let e = self.0.iter().filter(|s| **s == Step::E).count();
        (e, self.0.len() - e)
    }

    /// Heights of the E steps, in walk order. Nondecreasing.
    pub fn e_heights(&self) -> Vec<usize> {
        let mut h = 0;
        let mut out = Vec::new();
        for s in &self.0 {
            match s {
                Step::N => h += 1,
                Step::E => out.push(h),
            }
        }
        out
    }

    /// Number of E steps at each height 0..=j where j is the final ordinate.
    pub fn e_counts(&self) -> Vec<usize> {
        let (_, j) = self.endpoint();
        let mut counts = vec![0usize; j + 1];
        for h in self.e_heights() {
            counts[h] += 1;
        }
        counts
    }

    /// Builds E^{c_0} N E^{c_1} N ... N E^{c_j} from per-height counts.
    pub fn from_e_counts(counts: &[usize]) -> Walk {
        let mut steps = Vec::new();
        for (r, &c) in counts.iter().enumerate() {
            if r > 0 {
                steps.push(Step::N);
            }
            steps.extend(std::iter::repeat(Step::E).take(c));
        }
        Walk(steps)
    }

    /// The lattice points visited, in order, starting at (0, 0).
    pub fn points(&self) -> Vec<(usize, usize)> {
        let mut q = (0usize, 0usize);
        let mut out = vec![q];
        for s in &self.0 {
            match s {
                Step::N => q.1 += 1,
                Step::E => q.0 += 1,
            }
            out.push(q);
        }
        out
    }

    /// True for walks with equally many N and E steps where every prefix has
    /// at least as many N as E steps.
    pub fn is_dyck(&self) -> bool {
        let mut bal = 0i64;
        for s in &self.0 {
            match s {
                Step::N => bal += 1,
                Step::E => bal -= 1,
            }
            if bal < 0 {
                return false;
            }
        }
        bal == 0
    }

    /// Reversal of the step sequence.
    pub fn mir(&self) -> Walk {
        Walk(self.0.iter().rev().copied().collect())
    }

    /// The canopy word of a Dyck walk E^{a_0} N E^{a_1} ... N E^{a_n}:
    /// letter r is E exactly when a_r = 0 (so it starts with E and ends
    /// with N). Errors on non-Dyck input.
    pub fn canopy(&self) -> Result<Walk> {
        if !self.is_dyck() {
            return Err(Error::Domain(format!("not a Dyck walk: {self}")));
        }
        let counts = self.e_counts();
        let steps = counts
            .iter()
            .map(|&a| if a == 0 { Step::E } else { Step::N })
            .collect();
        Ok(Walk(steps))
    }
}

/// `high` lies weakly above `low`: same endpoint, and in every vertical
/// column the E step of `high` is at least as high as the E step of `low`.
/// Equivalently, for every r the number of E steps of `high` at height <= r
/// is at most the number for `low`.
pub fn is_above(low: &Walk, high: &Walk) -> bool {
    if low.endpoint() != high.endpoint() {
        return false;
    }
    let (hl, hh) = (low.e_heights(), high.e_heights());
    hl.iter().zip(hh.iter()).all(|(a, b)| a <= b)
}

/// All walks with i E steps and j N steps, in lexicographic order (N < E).
pub fn walks_with_endpoint(i: usize, j: usize) -> Vec<Walk> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(i + j);
    fn rec(i: usize, j: usize, cur: &mut Vec<Step>, out: &mut Vec<Walk>) {
        if i == 0 && j == 0 {
            out.push(Walk(cur.clone()));
            return;
        }
        if j > 0 {
            cur.push(Step::N);
            rec(i, j - 1, cur, out);
            cur.pop();
        }
        if i > 0 {
            cur.push(Step::E);
            rec(i - 1, j, cur, out);
            cur.pop();
        }
    }
    rec(i, j, &mut cur, &mut out);
    out
}

/// All walks weakly above `nu` with the same endpoint.
pub fn walks_above(nu: &Walk) -> Vec<Walk> {
    let (i, j) = nu.endpoint();
    walks_with_endpoint(i, j)
        .into_iter()
        .filter(|w| is_above(nu, w))
        .collect()
}

/// All Dyck walks of length 2n.
pub fn dyck_walks(n: usize) -> Vec<Walk> {
    walks_with_endpoint(n, n)
        .into_iter()
        .filter(|w| w.is_dyck())
        .collect()
}

/// The staircase (NE)^n.
pub fn staircase(n: usize) -> Walk {
    let mut steps = Vec::with_capacity(2 * n);
    for _ in 0..n {
        steps.push(Step::N);
        steps.push(Step::E);
    }
    Walk(steps)
}

/// (N E^m)^n, the comb shape used for the m-parameter lattices.
pub fn comb(m: usize, n: usize) -> Walk {
    let mut steps = Vec::new();
    for _ in 0..n {
        steps.push(Step::N);
        steps.extend(std::iter::repeat(Step::E).take(m));
    }
    Walk(steps)
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Step::N => "N",
                Step::E => "E",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Walk({self})")
    }
}

impl FromStr for Walk {
    type Err = Error;

    fn from_str(s: &str) -> Result<Walk> {
        let mut steps = Vec::new();
        for c in s.chars() {
            match c {
                'N' => steps.push(Step::N),
                'E' => steps.push(Step::E),
                c if c.is_whitespace() => {}
                other => return Err(parse_err(format!("unexpected character {other:?} in walk"))),
            }
        }
        Ok(Walk(steps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Walk {
        s.parse().unwrap()
    }

    /// Literal column-by-column comparison used as an oracle for `is_above`.
    fn above_by_columns(low: &Walk, high: &Walk) -> bool {
        if low.endpoint() != high.endpoint() {
            return false;
        }
        let (hl, hh) = (low.e_heights(), high.e_heights());
        (0..hl.len()).all(|k| hl[k] <= hh[k])
    }

    #[test]
    fn endpoint_and_counts() {
        assert_eq!(w("NENE").endpoint(), (2, 2));
        assert_eq!(w("NENE").e_counts(), vec![0, 1, 1]);
        assert_eq!(w("EEN").e_counts(), vec![2, 0]);
        assert_eq!(Walk::from_e_counts(&[0, 1, 1]), w("NENE"));
        assert_eq!(Walk::from_e_counts(&[2, 0]), w("EEN"));
        assert_eq!(Walk::empty().e_counts(), vec![0]);
    }

    #[test]
    fn above_examples() {
        assert!(is_above(&w("EN"), &w("NE")));
        assert!(!is_above(&w("NE"), &w("EN")));
        assert!(is_above(&w("EN"), &w("EN")));
        assert!(is_above(&Walk::empty(), &Walk::empty()));
        assert!(!is_above(&w("EN"), &w("ENN")));
    }

    #[test]
    fn above_agrees_with_column_oracle() {
        for i in 0..=3 {
            for j in 0..=3 {
                let all = walks_with_endpoint(i, j);
                for a in &all {
                    for b in &all {
                        assert_eq!(is_above(a, b), above_by_columns(a, b), "{a} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn prefix_formulation_matches() {
        // the prefix comparison of E-count partial sums is the same relation
        for i in 0..=3 {
            for j in 0..=3 {
                let all = walks_with_endpoint(i, j);
                for a in &all {
                    for b in &all {
                        let (ca, cb) = (a.e_counts(), b.e_counts());
                        let mut ok = true;
                        let (mut sa, mut sb) = (0usize, 0usize);
                        for r in 0..ca.len() {
                            sa += ca[r];
                            sb += cb[r];
                            if sb > sa {
                                ok = false;
                            }
                        }
                        assert_eq!(is_above(a, b), ok, "{a} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn canopy_examples() {
        assert_eq!(w("NENE").canopy().unwrap(), w("ENN"));
        assert_eq!(w("NNEE").canopy().unwrap(), w("EEN"));
        assert_eq!(staircase(3).canopy().unwrap(), w("ENNN"));
        assert!(w("EN").canopy().is_err());
        assert_eq!(Walk::empty().canopy().unwrap(), w("E"));
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(walks_with_endpoint(2, 2).len(), 6);
        assert_eq!(walks_above(&w("EN")).len(), 2);
        assert_eq!(walks_above(&Walk::empty()).len(), 1);
        assert_eq!(walks_above(&staircase(3)).len(), 5);
        assert_eq!(dyck_walks(3).len(), 5);
        assert_eq!(dyck_walks(4).len(), 14);
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["", "N", "E", "NENE", "EENN"] {
            assert_eq!(w(s).to_string(), s);
        }
        assert!("NX".parse::<Walk>().is_err());
    }

    #[test]
    fn mir_is_reversal() {
        assert_eq!(w("NEE").mir(), w("EEN"));
        assert_eq!(w("NEE").mir().mir(), w("NEE"));
    }
}
