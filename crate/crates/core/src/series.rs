//! Exact trivariate power series over BigInt, truncated by total degree,
//! plus the closed counting formulas used as independent ground truth.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{domain_err, Error, Result};

/// Polynomial truncation of a series in x, y, z: monomials of total degree
/// above `max_deg` are dropped.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    max_deg: u32,
    coeffs: BTreeMap<[u32; 3], BigInt>,
}

impl Series {
    pub fn zero(max_deg: u32) -> Self {
        Series { max_deg, coeffs: BTreeMap::new() }
    }

    pub fn constant(max_deg: u32, c: i64) -> Self {
        let mut s = Series::zero(max_deg);
        s.add_term([0, 0, 0], BigInt::from(c));
        s
    }

    /// The variable with the given axis: 0 for x, 1 for y, 2 for z.
    pub fn var(max_deg: u32, axis: usize) -> Self {
        let mut m = [0u32; 3];
        m[axis] = 1;
        let mut s = Series::zero(max_deg);
        s.add_term(m, BigInt::one());
        s
    }

    pub fn max_deg(&self) -> u32 {
        self.max_deg
    }

    pub fn coeff(&self, m: [u32; 3]) -> BigInt {
        self.coeffs.get(&m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &BigInt)> {
        self.coeffs.iter()
    }

    fn add_term(&mut self, m: [u32; 3], c: BigInt) {
        if c.is_zero() || m.iter().sum::<u32>() > self.max_deg {
            return;
        }
        let slot = self.coeffs.entry(m).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    pub fn add(&self, other: &Series) -> Series {
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Series) -> Series {
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.add_term(*m, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Series) -> Series {
        let mut out = Series::zero(self.max_deg.min(other.max_deg));
        for (ma, ca) in &self.coeffs {
            let da: u32 = ma.iter().sum();
            for (mb, cb) in &other.coeffs {
                let db: u32 = mb.iter().sum();
                if da + db > out.max_deg {
                    continue;
                }
                out.add_term([ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]], ca * cb);
            }
        }
        out
    }

    pub fn one_plus(&self) -> Series {
        self.add(&Series::constant(self.max_deg, 1))
    }

    /// Multiplicative inverse of a series with constant term 1, via the
    /// geometric expansion of 1/(1 + u).
    pub fn inv(&self) -> Result<Series> {
        if self.coeff([0, 0, 0]) != BigInt::one() {
            return Err(domain_err("inverse requires constant term 1".to_string()));
        }
        let u = self.sub(&Series::constant(self.max_deg, 1));
        let mut out = Series::constant(self.max_deg, 1);
        let mut pow = Series::constant(self.max_deg, 1);
        for k in 1..=self.max_deg {
            pow = pow.mul(&u);
            if pow.coeffs.is_empty() {
                break;
            }
            if k % 2 == 1 {
                out = out.sub(&pow);
            } else {
                out = out.add(&pow);
            }
        }
        Ok(out)
    }

    /// Substitutes t for all three variables and collects coefficients of
    /// t^0..=t^max_deg.
    pub fn eval_diagonal(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.max_deg as usize + 1];
        for (m, c) in &self.coeffs {
            let d: u32 = m.iter().sum();
            out[d as usize] += c;
        }
        out
    }

    /// Sets z = 0.
    pub fn at_z_zero(&self) -> Series {
        let mut out = Series::zero(self.max_deg);
        for (m, c) in &self.coeffs {
            if m[2] == 0 {
                out.add_term(*m, c.clone());
            }
        }
        out
    }
}

impl fmt::Display for Series {
    /// One line per monomial, sorted by (total degree, exponents).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(&[u32; 3], &BigInt)> = self.coeffs.iter().collect();
        terms.sort_by_key(|(m, _)| (m.iter().sum::<u32>(), **m));
        for (m, c) in terms {
            writeln!(f, "x^{} y^{} z^{}: {}", m[0], m[1], m[2], c)?;
        }
        Ok(())
    }
}

/// Solution of the closed system
///   R = (y + zR)(1 + R)(1 + G)^2
///   G = (x + zG)(1 + G)(1 + R)^2
/// by iteration from 0; the degree-k coefficients stabilize after k rounds.
pub fn solve_rg(max_deg: u32) -> Result<(Series, Series)> {
    let x = Series::var(max_deg, 0);
    let y = Series::var(max_deg, 1);
    let z = Series::var(max_deg, 2);
    let mut r = Series::zero(max_deg);
    let mut g = Series::zero(max_deg);
    for _ in 0..=max_deg {
        let r2 = y
            .add(&z.mul(&r))
            .mul(&r.one_plus())
            .mul(&g.one_plus().mul(&g.one_plus()));
        let g2 = x
            .add(&z.mul(&g))
            .mul(&g.one_plus())
            .mul(&r.one_plus().mul(&r.one_plus()));
        r = r2;
        g = g2;
    }
    // one more round must be stationary
    let r2 = y
        .add(&z.mul(&r))
        .mul(&r.one_plus())
        .mul(&g.one_plus().mul(&g.one_plus()));
    let g2 = x
        .add(&z.mul(&g))
        .mul(&g.one_plus())
        .mul(&r.one_plus().mul(&r.one_plus()));
    if r2 != r || g2 != g {
        return Err(Error::Verification(
            "series iteration did not reach a fixed point".to_string(),
        ));
    }
    Ok((r, g))
}

/// The generating function F = xR + yG + zRG - RG/((1+R)(1+G)).
pub fn f_series(max_deg: u32) -> Result<Series> {
    let (r, g) = solve_rg(max_deg)?;
    let x = Series::var(max_deg, 0);
    let y = Series::var(max_deg, 1);
    let z = Series::var(max_deg, 2);
    let rg = r.mul(&g);
    let inv = r.one_plus().mul(&g.one_plus()).inv()?;
    Ok(x.mul(&r).add(&y.mul(&g)).add(&z.mul(&rg)).sub(&rg.mul(&inv)))
}

/// The series B = (1+R)(x+zG)(1+G)(y+zR) counting quadrangulations by
/// boundary darts (x, y) and inner vertices (z).
pub fn b_series(max_deg: u32) -> Result<Series> {
    let (r, g) = solve_rg(max_deg)?;
    let x = Series::var(max_deg, 0);
    let y = Series::var(max_deg, 1);
    let z = Series::var(max_deg, 2);
    let u = x.add(&z.mul(&g));
    let v = y.add(&z.mul(&r));
    Ok(r.one_plus().mul(&u).mul(&g.one_plus()).mul(&v))
}

/// Residual checks tying R, G back to the quadratic system they came from:
/// with B = (1+R)(x+zG)(1+G)(y+zR), all of
///   B = (B(1+G)+x+zG)(B(1+R)+y+zR)
///   R = (B(1+R)+y+zR)(1+R)(1+G)
///   G = (B(1+G)+x+zG)(1+R)(1+G)
/// must hold up to the truncation order.
pub fn check_rg_system(max_deg: u32) -> Result<()> {
    let (r, g) = solve_rg(max_deg)?;
    let x = Series::var(max_deg, 0);
    let y = Series::var(max_deg, 1);
    let z = Series::var(max_deg, 2);
    let u = x.add(&z.mul(&g)); // x + zG
    let v = y.add(&z.mul(&r)); // y + zR
    let b = b_series(max_deg)?;
    let lhs1 = b.clone();
    let rhs1 = b.mul(&g.one_plus()).add(&u).mul(&b.mul(&r.one_plus()).add(&v));
    if lhs1 != rhs1 {
        return Err(Error::Verification("quadratic relation for B fails".to_string()));
    }
    let rhs2 = b
        .mul(&r.one_plus())
        .add(&v)
        .mul(&r.one_plus())
        .mul(&g.one_plus());
    if rhs2 != r {
        return Err(Error::Verification("relation for R fails".to_string()));
    }
    let rhs3 = b
        .mul(&g.one_plus())
        .add(&u)
        .mul(&r.one_plus())
        .mul(&g.one_plus());
    if rhs3 != g {
        return Err(Error::Verification("relation for G fails".to_string()));
    }
    Ok(())
}

/// Brute-force census of Dyck-walk intervals by position types: entry
/// [i, j, k] counts the intervals with i+1 positions of type EE, j+1 of
/// type NN and k of type EN, over all n = i+j+k+1 up to n_max.
pub fn type_count_table(n_max: usize) -> Result<BTreeMap<[usize; 3], BigInt>> {
    use crate::tamari::{enumerate_i, position_types, PositionType};
    let mut table = BTreeMap::new();
    for n in 1..=n_max {
        for (a, b) in enumerate_i(n)? {
            let types = position_types(&a, &b)?;
            let mut ee = 0usize;
            let mut nn = 0usize;
            let mut en = 0usize;
            for t in types {
                match t {
                    PositionType::EE => ee += 1,
                    PositionType::NN => nn += 1,
                    PositionType::EN => en += 1,
                }
            }
            if ee == 0 || nn == 0 {
                return Err(Error::Verification(
                    "interval without an EE or NN position".to_string(),
                ));
            }
            *table
                .entry([ee - 1, nn - 1, en])
                .or_insert_with(BigInt::zero) += 1;
        }
    }
    Ok(table)
}

/// Compares every entry of the brute-force type table against the
/// coefficient of x^{i+1} y^{j+1} z^k in F, in both directions, for
/// n = i+j+k+1 up to n_max. Returns the number of triples checked.
pub fn verify_type_table(n_max: usize) -> Result<usize> {
    if n_max > 5 {
        return Err(domain_err("type table capped at n_max = 5".to_string()));
    }
    let table = type_count_table(n_max)?;
    let f = f_series(n_max as u32 + 1)?;
    let mut checked = 0usize;
    for i in 0..n_max {
        for j in 0..n_max - i {
            for k in 0..n_max - i - j {
                let expect = table.get(&[i, j, k]).cloned().unwrap_or_else(BigInt::zero);
                let got = f.coeff([i as u32 + 1, j as u32 + 1, k as u32]);
                if got != expect {
                    return Err(Error::Verification(format!(
                        "a[{i},{j},{k}] is {expect} by enumeration but the series gives {got}"
                    )));
                }
                checked += 1;
            }
        }
    }
    for m in table.keys() {
        if m[0] + m[1] + m[2] + 1 > n_max {
            return Err(Error::Verification(format!(
                "table holds an out-of-range entry {m:?}"
            )));
        }
    }
    Ok(checked)
}

pub fn factorial(n: u64) -> BigInt {
    let mut out = BigInt::one();
    for k in 2..=n {
        out *= k;
    }
    out
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut out = BigInt::one();
    for r in 0..k {
        out = out * (n - r) / (r + 1);
    }
    out
}

fn exact_div(num: BigInt, den: &BigInt) -> Result<BigInt> {
    if den.is_zero() {
        return Err(domain_err("division by zero in a closed formula".to_string()));
    }
    let (q, rem) = (num.clone() / den, num % den);
    if !rem.is_zero() {
        return Err(Error::Verification(
            "closed formula did not divide exactly".to_string(),
        ));
    }
    Ok(q)
}

/// 2 (3n+3)! / ((n+2)! (2n+3)!).
pub fn count_maps_total(n: u64) -> Result<BigInt> {
    let num = BigInt::from(2) * factorial(3 * n + 3);
    exact_div(num, &(factorial(n + 2) * factorial(2 * n + 3)))
}

/// (2i+j+1)! (2j+i+1)! / ((i+1)! (j+1)! (2i+1)! (2j+1)!).
pub fn count_maps_refined(i: u64, j: u64) -> Result<BigInt> {
    let num = factorial(2 * i + j + 1) * factorial(2 * j + i + 1);
    let den = factorial(i + 1) * factorial(j + 1) * factorial(2 * i + 1) * factorial(2 * j + 1);
    exact_div(num, &den)
}

/// (m+1) / (n(mn+1)) * binomial((m+1)^2 n + m, n - 1).
pub fn count_m_intervals(m: u64, n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(domain_err("formula needs n >= 1".to_string()));
    }
    let num = BigInt::from(m + 1) * binomial((m + 1) * (m + 1) * n + m, n - 1);
    exact_div(num, &BigInt::from(n * (m * n + 1)))
}

/// Catalan number.
pub fn catalan(n: u64) -> BigInt {
    exact_div(binomial(2 * n, n), &BigInt::from(n + 1)).expect("catalan division is exact")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn arithmetic() {
        let x = Series::var(4, 0);
        let y = Series::var(4, 1);
        let p = x.add(&y);
        let sq = p.mul(&p);
        assert_eq!(sq.coeff([2, 0, 0]), big(1));
        assert_eq!(sq.coeff([1, 1, 0]), big(2));
        let inv = p.one_plus().inv().unwrap();
        assert_eq!(inv.mul(&p.one_plus()), Series::constant(4, 1));
    }

    #[test]
    fn f_small_coefficients() {
        let f = f_series(6).unwrap();
        assert_eq!(f.coeff([1, 1, 0]), big(1));
        assert_eq!(f.coeff([1, 1, 1]), big(1));
        assert_eq!(f.coeff([1, 2, 0]), big(1));
        assert_eq!(f.coeff([2, 1, 0]), big(1));
        assert_eq!(f.coeff([0, 0, 0]), big(0));
        assert_eq!(f.coeff([1, 0, 0]), big(0));
    }

    #[test]
    fn f_diagonal_counts_intervals() {
        let f = f_series(6).unwrap();
        let d = f.eval_diagonal();
        assert_eq!(d[2], big(1));
        assert_eq!(d[3], big(3));
        assert_eq!(d[4], big(13));
        assert_eq!(d[5], big(68));
    }

    #[test]
    fn quadratic_system_holds() {
        check_rg_system(7).unwrap();
    }

    #[test]
    fn closed_formulas() {
        let expect = [2i64, 6, 22, 91, 408];
        for (n, &e) in (1..=5).zip(expect.iter()) {
            assert_eq!(count_maps_total(n).unwrap(), big(e));
        }
        assert_eq!(count_maps_refined(1, 1).unwrap(), big(4));
        assert_eq!(count_maps_refined(2, 1).unwrap(), big(10));
        assert_eq!(count_maps_refined(0, 0).unwrap(), big(1));
        for n in 1..=4u64 {
            let total: BigInt = (0..=n).map(|i| count_maps_refined(i, n - i).unwrap()).sum();
            assert_eq!(total, count_maps_total(n).unwrap());
        }
    }

    #[test]
    fn m_interval_formula() {
        assert_eq!(count_m_intervals(1, 1).unwrap(), big(1));
        assert_eq!(count_m_intervals(1, 2).unwrap(), big(3));
        assert_eq!(count_m_intervals(1, 3).unwrap(), big(13));
        assert_eq!(count_m_intervals(1, 4).unwrap(), big(68));
        assert_eq!(count_m_intervals(2, 1).unwrap(), big(1));
        assert_eq!(count_m_intervals(2, 2).unwrap(), big(6));
        assert_eq!(count_m_intervals(2, 3).unwrap(), big(58));
        assert_eq!(count_m_intervals(3, 1).unwrap(), big(1));
        assert_eq!(count_m_intervals(3, 2).unwrap(), big(10));
    }

    #[test]
    fn type_table_matches_series() {
        assert_eq!(verify_type_table(3).unwrap(), 10);
        // setting z = 0 keeps only the synchronized intervals
        let table = type_count_table(3).unwrap();
        use crate::tamari::enumerate_g;
        for i in 0..=2usize {
            for j in 0..=(2 - i) {
                let expect = BigInt::from(enumerate_g(i, j).unwrap().len());
                let got = table.get(&[i, j, 0]).cloned().unwrap_or_else(BigInt::zero);
                assert_eq!(got, expect, "a[{i},{j},0]");
            }
        }
    }

    #[test]
    fn catalan_and_pair_counts() {
        assert_eq!(catalan(3), big(5));
        // purely above pairs: C_{n+2} C_n - C_{n+1}^2
        for (n, e) in [(1u64, 1i64), (2, 3), (3, 14)] {
            let v = catalan(n + 2) * catalan(n) - catalan(n + 1) * catalan(n + 1);
            assert_eq!(v, big(e));
        }
    }

    #[test]
    fn display_sorted() {
        let f = f_series(3).unwrap();
        let text = f.to_string();
        let first = text.lines().next().unwrap();
        assert_eq!(first, "x^1 y^1 z^0: 1");
    }
}
