//! Truncated bivariate integer power series and the generating functions
//! for the ED defect of rank-one matrix varieties X_{s,t} ⊂ P^{st-1}.
//!
//! `H1`, `H2` stand for the hyperplane classes of P^{s-1} × P^{t-1}. All
//! Euler characteristics are read off as the coefficient of
//! `H1^{s-1} H2^{t-1}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("constant term is {0}, not 1")]
    NonUnitConstantTerm(BigInt),
    #[error("truncation degrees differ: {0:?} vs {1:?}")]
    TruncationMismatch((usize, usize), (usize, usize)),
    #[error("s and t must be at least 1 (got {0}, {1})")]
    InvalidSize(usize, usize),
    #[error("cap {cap} is below the required degree {needed}")]
    CapTooSmall { cap: usize, needed: usize },
}

/// Σ c_{ij} H1^i H2^j with 0 ≤ i ≤ deg1, 0 ≤ j ≤ deg2.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedBiSeries {
    deg1: usize,
    deg2: usize,
    coeffs: Vec<Vec<BigInt>>,
}

impl TruncatedBiSeries {
    pub fn zero(deg1: usize, deg2: usize) -> Self {
        TruncatedBiSeries {
            deg1,
            deg2,
            coeffs: vec![vec![BigInt::zero(); deg2 + 1]; deg1 + 1],
        }
    }

    pub fn one(deg1: usize, deg2: usize) -> Self {
        Self::constant(deg1, deg2, 1)
    }

    pub fn constant(deg1: usize, deg2: usize, c: i64) -> Self {
        Self::monomial(deg1, deg2, 0, 0, c)
    }

    /// `c * H1^i * H2^j`, or zero if it lies beyond the truncation.
    pub fn monomial(deg1: usize, deg2: usize, i: usize, j: usize, c: i64) -> Self {
        let mut s = Self::zero(deg1, deg2);
        if i <= deg1 && j <= deg2 {
            s.coeffs[i][j] = BigInt::from(c);
        }
        s
    }

    /// `a + b*H1 + c*H2`.
    pub fn linear(deg1: usize, deg2: usize, a: i64, b: i64, c: i64) -> Self {
        &(&Self::constant(deg1, deg2, a) + &Self::monomial(deg1, deg2, 1, 0, b))
            + &Self::monomial(deg1, deg2, 0, 1, c)
    }

    pub fn degrees(&self) -> (usize, usize) {
        (self.deg1, self.deg2)
    }

    pub fn coefficient(&self, i: usize, j: usize) -> BigInt {
        if i <= self.deg1 && j <= self.deg2 {
            self.coeffs[i][j].clone()
        } else {
            BigInt::zero()
        }
    }

    fn check(&self, other: &Self) -> Result<(), SeriesError> {
        if self.degrees() == other.degrees() {
            Ok(())
        } else {
            Err(SeriesError::TruncationMismatch(self.degrees(), other.degrees()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let mut out = self.clone();
        for (row, orow) in out.coeffs.iter_mut().zip(&other.coeffs) {
            for (c, o) in row.iter_mut().zip(orow) {
                *c += o;
            }
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let mut out = Self::zero(self.deg1, self.deg2);
        for i in 0..=self.deg1 {
            for j in 0..=self.deg2 {
                let a = &self.coeffs[i][j];
                if a.is_zero() {
                    continue;
                }
                for k in 0..=self.deg1 - i {
                    for l in 0..=self.deg2 - j {
                        let b = &other.coeffs[k][l];
                        if !b.is_zero() {
                            out.coeffs[i + k][j + l] += a * b;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = BigInt::from(c);
        let mut out = self.clone();
        out.coeffs.iter_mut().flatten().for_each(|x| *x *= &c);
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.deg1, self.deg2);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse of a series with constant term 1, up to truncation.
    pub fn unit_inverse(&self) -> Result<Self, SeriesError> {
        let c0 = &self.coeffs[0][0];
        if !c0.is_one() {
            return Err(SeriesError::NonUnitConstantTerm(c0.clone()));
        }
        // g = 1 - f is nilpotent modulo truncation, so 1/f = Σ g^k
        let g = &Self::one(self.deg1, self.deg2) - self;
        let mut out = Self::one(self.deg1, self.deg2);
        let mut power = Self::one(self.deg1, self.deg2);
        for _ in 0..self.deg1 + self.deg2 {
            power = &power * &g;
            out = &out + &power;
        }
        Ok(out)
    }
}

impl Add for &TruncatedBiSeries {
    type Output = TruncatedBiSeries;
    fn add(self, other: &TruncatedBiSeries) -> TruncatedBiSeries {
        self.try_add(other).expect("matching truncation")
    }
}

impl Sub for &TruncatedBiSeries {
    type Output = TruncatedBiSeries;
    fn sub(self, other: &TruncatedBiSeries) -> TruncatedBiSeries {
        self.try_add(&-other).expect("matching truncation")
    }
}

impl Neg for &TruncatedBiSeries {
    type Output = TruncatedBiSeries;
    fn neg(self) -> TruncatedBiSeries {
        self.scale(-1)
    }
}

impl Mul for &TruncatedBiSeries {
    type Output = TruncatedBiSeries;
    fn mul(self, other: &TruncatedBiSeries) -> TruncatedBiSeries {
        self.try_mul(other).expect("matching truncation")
    }
}

impl fmt::Debug for TruncatedBiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TruncatedBiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in 0..=self.deg1 {
            for j in 0..=self.deg2 {
                let c = &self.coeffs[i][j];
                if c.is_zero() {
                    continue;
                }
                let sign = if c.is_negative() { "-" } else { "+" };
                if first {
                    if c.is_negative() {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, " {sign} ")?;
                }
                first = false;
                let mag = c.abs();
                let mut factors = Vec::new();
                if !mag.is_one() || (i == 0 && j == 0) {
                    factors.push(mag.to_string());
                }
                for (e, name) in [(i, "H1"), (j, "H2")] {
                    match e {
                        0 => {}
                        1 => factors.push(name.to_string()),
                        _ => factors.push(format!("{name}^{e}")),
                    }
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Which Euler characteristic a series computes: Z = Z_1 ∩ Z_2 and its
/// sections by the pulled-back weighted quadric (bidegree (2,2)) and a
/// hyperplane (bidegree (1,1)).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum ChiSeries {
    Z,
    ZQ,
    ZH,
    ZQH,
}

fn check_size(s: usize, t: usize) -> Result<(), SeriesError> {
    if s == 0 || t == 0 {
        Err(SeriesError::InvalidSize(s, t))
    } else {
        Ok(())
    }
}

/// 4 H1 H2 / ((1+2H1)(1+2H2)), the factor shared by every series.
fn common_factor(d1: usize, d2: usize) -> Result<TruncatedBiSeries, SeriesError> {
    let h1h2 = TruncatedBiSeries::monomial(d1, d2, 1, 1, 4);
    let den = &TruncatedBiSeries::linear(d1, d2, 1, 2, 0) * &TruncatedBiSeries::linear(d1, d2, 1, 0, 2);
    Ok(&h1h2 * &den.unit_inverse()?)
}

/// (1+H1)^s (1+H2)^t.
fn binomial_factor(s: usize, t: usize, d1: usize, d2: usize) -> TruncatedBiSeries {
    &TruncatedBiSeries::linear(d1, d2, 1, 1, 0).pow(s as u32) * &TruncatedBiSeries::linear(d1, d2, 1, 0, 1).pow(t as u32)
}

/// The series whose `H1^{s-1} H2^{t-1}` coefficient is the Euler
/// characteristic selected by `which`, truncated at (s-1, t-1).
pub fn chi_series(which: ChiSeries, s: usize, t: usize) -> Result<TruncatedBiSeries, SeriesError> {
    check_size(s, t)?;
    let (d1, d2) = (s - 1, t - 1);
    let base = &common_factor(d1, d2)? * &binomial_factor(s, t, d1, d2);
    // (2H1+2H2)/(1+2H1+2H2) and (H1+H2)/(1+H1+H2)
    let quadric = &TruncatedBiSeries::linear(d1, d2, 0, 2, 2)
        * &TruncatedBiSeries::linear(d1, d2, 1, 2, 2).unit_inverse()?;
    let hyperplane = &TruncatedBiSeries::linear(d1, d2, 0, 1, 1)
        * &TruncatedBiSeries::linear(d1, d2, 1, 1, 1).unit_inverse()?;
    Ok(match which {
        ChiSeries::Z => base,
        ChiSeries::ZQ => &base * &quadric,
        ChiSeries::ZH => &base * &hyperplane,
        ChiSeries::ZQH => &(&base * &quadric) * &hyperplane,
    })
}

/// (-1)^{dim Z} with dim Z = s + t - 4.
fn sign(s: usize, t: usize) -> BigInt {
    if (s + t).is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Euler characteristic of the selected section of Z.
pub fn chi(which: ChiSeries, s: usize, t: usize) -> Result<BigInt, SeriesError> {
    Ok(chi_series(which, s, t)?.coefficient(s - 1, t - 1))
}

/// DED(X_{s,t}) from the single product series
/// 4H1H2(1+H1)^s(1+H2)^t / ((1+2H1)(1+2H2)(1+2H1+2H2)(1+H1+H2)).
pub fn ded_rank_one(s: usize, t: usize) -> Result<BigInt, SeriesError> {
    check_size(s, t)?;
    let (d1, d2) = (s - 1, t - 1);
    let series = &(&common_factor(d1, d2)? * &binomial_factor(s, t, d1, d2)) * &rest_factor(d1, d2)?;
    Ok(sign(s, t) * series.coefficient(d1, d2))
}

/// 1/((1+2H1+2H2)(1+H1+H2)).
fn rest_factor(d1: usize, d2: usize) -> Result<TruncatedBiSeries, SeriesError> {
    (&TruncatedBiSeries::linear(d1, d2, 1, 2, 2) * &TruncatedBiSeries::linear(d1, d2, 1, 1, 1)).unit_inverse()
}

/// DED(X_{s,t}) by inclusion-exclusion over the four Euler characteristics:
/// χ(Z) - χ(Z∩Q) - χ(Z∩H) + χ(Z∩Q∩H).
pub fn ded_rank_one_inclusion_exclusion(s: usize, t: usize) -> Result<BigInt, SeriesError> {
    let total = chi(ChiSeries::Z, s, t)? - chi(ChiSeries::ZQ, s, t)? - chi(ChiSeries::ZH, s, t)?
        + chi(ChiSeries::ZQH, s, t)?;
    Ok(sign(s, t) * total)
}

/// The s,t-independent coefficients c_{ij} of
/// 4H1H2 / ((1+2H1)(1+2H2)(1+2H1+2H2)(1+H1+H2)), truncated at (cap, cap).
pub fn c_coefficients(cap: usize) -> Result<TruncatedBiSeries, SeriesError> {
    Ok(&common_factor(cap, cap)? * &rest_factor(cap, cap)?)
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub const DEFAULT_BINOMIAL_CAP: usize = 32;

/// DED(X_{s,t}) = Σ_k Σ_l C(s,k) C(t,l) c_{s-1-k, t-1-l}, with the c_{ij}
/// precomputed up to `cap`.
pub fn ded_rank_one_binomial(s: usize, t: usize, cap: usize) -> Result<BigInt, SeriesError> {
    check_size(s, t)?;
    let needed = (s - 1).max(t - 1);
    if cap < needed {
        return Err(SeriesError::CapTooSmall { cap, needed });
    }
    let c = c_coefficients(cap)?;
    let mut total = BigInt::zero();
    for k in 0..s {
        for l in 0..t {
            total += binomial(s, k) * binomial(t, l) * c.coefficient(s - 1 - k, t - 1 - l);
        }
    }
    Ok(sign(s, t) * total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn geometric_series() {
        let f = TruncatedBiSeries::linear(3, 0, 1, 1, 0);
        let inv = f.unit_inverse().unwrap();
        assert_eq!(inv.to_string(), "1 - H1 + H1^2 - H1^3");
        assert_eq!(&f * &inv, TruncatedBiSeries::one(3, 0));
        assert_eq!(
            TruncatedBiSeries::constant(2, 2, 2).unit_inverse(),
            Err(SeriesError::NonUnitConstantTerm(int(2)))
        );
    }

    #[test]
    fn truncated_square() {
        let f = TruncatedBiSeries::linear(1, 1, 1, 1, 1);
        assert_eq!((&f * &f).to_string(), "1 + 2*H2 + 2*H1 + 2*H1*H2");
    }

    #[test]
    fn two_by_two() {
        assert_eq!(chi(ChiSeries::Z, 2, 2).unwrap(), int(4));
        assert_eq!(ded_rank_one(2, 2).unwrap(), int(4));
        assert_eq!(ded_rank_one_binomial(2, 2, DEFAULT_BINOMIAL_CAP).unwrap(), int(4));
        assert_eq!(ded_rank_one_inclusion_exclusion(2, 2).unwrap(), int(4));
    }

    #[test]
    fn hand_expanded_sections_at_two_by_two() {
        // coefficient of H1 H2 in 4H1H2 * (constant-term factors) is 4 times
        // the constant term of the extra factor, which vanishes for Q and H
        assert_eq!(chi(ChiSeries::ZQ, 2, 2).unwrap(), int(0));
        assert_eq!(chi(ChiSeries::ZH, 2, 2).unwrap(), int(0));
        assert_eq!(chi(ChiSeries::ZQH, 2, 2).unwrap(), int(0));
        // at (2,3) the H1 H2^2 coefficient of 4H1H2(1+H2)^3/(1+2H2) is 4*(3-2) = 4
        assert_eq!(chi(ChiSeries::Z, 2, 3).unwrap(), int(4));
        // and Z∩H picks 4 * [H2](H1+H2)/(1+H1+H2) = 4
        assert_eq!(chi(ChiSeries::ZH, 2, 3).unwrap(), int(4));
    }

    #[test]
    fn empty_when_a_factor_is_a_point() {
        for s in 1..=6 {
            assert_eq!(ded_rank_one(s, 1).unwrap(), int(0));
            assert_eq!(chi(ChiSeries::Z, s, 1).unwrap(), int(0));
        }
    }

    #[test]
    fn c_series_has_no_constant_term() {
        let c = c_coefficients(4).unwrap();
        assert_eq!(c.coefficient(0, 0), int(0));
        assert_eq!(c.coefficient(1, 1), int(4));
    }

    #[test]
    fn small_cap_is_rejected() {
        assert_eq!(
            ded_rank_one_binomial(5, 2, 3),
            Err(SeriesError::CapTooSmall { cap: 3, needed: 4 })
        );
        assert_eq!(ded_rank_one(0, 2), Err(SeriesError::InvalidSize(0, 2)));
    }
}
