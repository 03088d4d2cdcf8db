//! Coefficient domains: rationals, Gaussian rationals, prime fields and
//! complex doubles.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::PolyError;

/// Tag describing which coefficient domain a ring uses.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    Rational,
    /// Q(i), the rationals extended by the imaginary unit `I`.
    GaussianRational,
    PrimeField(u32),
    ComplexDouble,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Rational => write!(f, "QQ"),
            Domain::GaussianRational => write!(f, "QQ[I]"),
            Domain::PrimeField(p) => write!(f, "ZZ/{p}"),
            Domain::ComplexDouble => write!(f, "CC"),
        }
    }
}

/// Arithmetic needed by sparse polynomials.
///
/// Constants are always created through a [`Domain`] so that prime-field
/// elements know their modulus.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn from_rational(q: &BigRational, domain: &Domain) -> Result<Self, PolyError>;
    /// The imaginary unit, if the domain has one.
    fn imaginary_unit(domain: &Domain) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn to_complex(&self) -> Complex64;
    /// Canonical text form. `atomic` is true when the text can be
    /// juxtaposed with `*` without parentheses.
    fn render(&self) -> (String, bool);
    /// True when the rendered form starts with a minus sign that can be
    /// pulled out as a binary `-`.
    fn is_negative_display(&self) -> bool;

    fn from_i64(n: i64, domain: &Domain) -> Result<Self, PolyError> {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)), domain)
    }
}

/// Coefficient domains in which nonzero elements are invertible.
pub trait Field: Coefficient {
    fn inv(&self) -> Option<Self>;
}

fn expect_domain(domain: &Domain, ok: bool, wanted: &str) -> Result<(), PolyError> {
    if ok {
        Ok(())
    } else {
        Err(PolyError::DomainMismatch(format!(
            "coefficient type {wanted} cannot live in domain {domain}"
        )))
    }
}

fn render_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl Coefficient for BigRational {
    fn from_rational(q: &BigRational, domain: &Domain) -> Result<Self, PolyError> {
        expect_domain(domain, *domain == Domain::Rational, "BigRational")?;
        Ok(q.clone())
    }
    fn imaginary_unit(_: &Domain) -> Option<Self> {
        None
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn render(&self) -> (String, bool) {
        (render_rational(self), self.is_integer() && !self.is_negative())
    }
    fn is_negative_display(&self) -> bool {
        self.is_negative()
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// An element `re + im*I` of Q(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gaussian {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Gaussian { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Gaussian {
            re: BigRational::from_integer(re.into()),
            im: BigRational::from_integer(im.into()),
        }
    }

    pub fn is_real(&self) -> bool {
        Zero::is_zero(&self.im)
    }
}

impl Coefficient for Gaussian {
    fn from_rational(q: &BigRational, domain: &Domain) -> Result<Self, PolyError> {
        expect_domain(domain, *domain == Domain::GaussianRational, "Gaussian")?;
        Ok(Gaussian::new(q.clone(), BigRational::zero()))
    }
    fn imaginary_unit(domain: &Domain) -> Option<Self> {
        (*domain == Domain::GaussianRational).then(|| Gaussian::from_ints(0, 1))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn is_one(&self) -> bool {
        One::is_one(&self.re) && Zero::is_zero(&self.im)
    }
    fn plus(&self, o: &Self) -> Self {
        Gaussian::new(&self.re + &o.re, &self.im + &o.im)
    }
    fn minus(&self, o: &Self) -> Self {
        Gaussian::new(&self.re - &o.re, &self.im - &o.im)
    }
    fn times(&self, o: &Self) -> Self {
        Gaussian::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
    fn negated(&self) -> Self {
        Gaussian::new(-&self.re, -&self.im)
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
    fn render(&self) -> (String, bool) {
        if Zero::is_zero(&self.im) {
            return self.re.render();
        }
        let imag = if One::is_one(&self.im) {
            "I".to_string()
        } else if One::is_one(&-&self.im) {
            "-I".to_string()
        } else {
            format!("{}*I", render_rational(&self.im))
        };
        if Zero::is_zero(&self.re) {
            let atomic = One::is_one(&self.im);
            (imag, atomic)
        } else {
            let sep = if imag.starts_with('-') { "" } else { "+" };
            (format!("({}{sep}{imag})", render_rational(&self.re)), true)
        }
    }
    fn is_negative_display(&self) -> bool {
        if Zero::is_zero(&self.im) {
            self.re.is_negative()
        } else {
            Zero::is_zero(&self.re) && self.im.is_negative()
        }
    }
}

impl Field for Gaussian {
    fn inv(&self) -> Option<Self> {
        if Coefficient::is_zero(self) {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Gaussian::new(&self.re / &norm, -&self.im / &norm))
    }
}

/// Element of the prime field Z/p. The modulus travels with the value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    pub fn new(value: i64, modulus: u32) -> Self {
        let m = modulus as i64;
        Fp {
            value: value.rem_euclid(m) as u32,
            modulus,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn pow(self, mut e: u64) -> Self {
        let p = self.modulus as u64;
        let mut base = self.value as u64;
        let mut acc = 1u64 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp {
            value: acc as u32,
            modulus: self.modulus,
        }
    }

    /// A square root of -1 modulo p, when p = 1 mod 4.
    pub fn sqrt_minus_one(modulus: u32) -> Option<Self> {
        if modulus % 4 != 1 {
            return None;
        }
        let exp = (modulus as u64 - 1) / 4;
        (2..modulus as i64)
            .map(|a| Fp::new(a, modulus).pow(exp))
            .find(|r| r.times(r).value == modulus - 1)
    }
}

impl Coefficient for Fp {
    fn from_rational(q: &BigRational, domain: &Domain) -> Result<Self, PolyError> {
        let Domain::PrimeField(p) = *domain else {
            return Err(PolyError::DomainMismatch(format!(
                "coefficient type Fp cannot live in domain {domain}"
            )));
        };
        let pb = BigInt::from(p);
        let num = (q.numer() % &pb).to_i64().unwrap_or(0);
        let den = (q.denom() % &pb).to_i64().unwrap_or(0);
        let den = Fp::new(den, p);
        let inv = den.inv().ok_or_else(|| {
            PolyError::DomainMismatch(format!("denominator of {q} vanishes modulo {p}"))
        })?;
        Ok(Fp::new(num, p).times(&inv))
    }
    fn imaginary_unit(domain: &Domain) -> Option<Self> {
        match domain {
            Domain::PrimeField(p) => Fp::sqrt_minus_one(*p),
            _ => None,
        }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn is_one(&self) -> bool {
        self.value == 1
    }
    fn plus(&self, o: &Self) -> Self {
        debug_assert_eq!(self.modulus, o.modulus);
        let s = self.value as u64 + o.value as u64;
        Fp {
            value: (s % self.modulus as u64) as u32,
            modulus: self.modulus,
        }
    }
    fn minus(&self, o: &Self) -> Self {
        debug_assert_eq!(self.modulus, o.modulus);
        let s = self.value as u64 + self.modulus as u64 - o.value as u64;
        Fp {
            value: (s % self.modulus as u64) as u32,
            modulus: self.modulus,
        }
    }
    fn times(&self, o: &Self) -> Self {
        debug_assert_eq!(self.modulus, o.modulus);
        let s = self.value as u64 * o.value as u64;
        Fp {
            value: (s % self.modulus as u64) as u32,
            modulus: self.modulus,
        }
    }
    fn negated(&self) -> Self {
        Fp {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.value as f64, 0.0)
    }
    fn render(&self) -> (String, bool) {
        (self.value.to_string(), true)
    }
    fn is_negative_display(&self) -> bool {
        false
    }
}

impl Field for Fp {
    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.modulus as u64 - 2))
        }
    }
}

impl Coefficient for Complex64 {
    fn from_rational(q: &BigRational, domain: &Domain) -> Result<Self, PolyError> {
        expect_domain(domain, *domain == Domain::ComplexDouble, "Complex64")?;
        Ok(Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0))
    }
    fn imaginary_unit(domain: &Domain) -> Option<Self> {
        (*domain == Domain::ComplexDouble).then_some(Complex64::i())
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn is_one(&self) -> bool {
        self.re == 1.0 && self.im == 0.0
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn render(&self) -> (String, bool) {
        if self.im == 0.0 {
            (format!("{:?}", self.re), self.re >= 0.0)
        } else if self.re == 0.0 {
            (format!("{:?}*I", self.im), false)
        } else {
            let sep = if self.im < 0.0 { "" } else { "+" };
            (format!("({:?}{sep}{:?}*I)", self.re, self.im), true)
        }
    }
    fn is_negative_display(&self) -> bool {
        self.im == 0.0 && self.re < 0.0 || self.re == 0.0 && self.im < 0.0
    }
}

impl Field for Complex64 {
    fn inv(&self) -> Option<Self> {
        if Coefficient::is_zero(self) {
            None
        } else {
            Some(Complex64::new(1.0, 0.0) / self)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverse_and_sqrt_minus_one() {
        let a = Fp::new(12345, 32003);
        assert!(a.times(&a.inv().unwrap()).is_one());
        assert!(Fp::sqrt_minus_one(32003).is_none());
        let i = Fp::sqrt_minus_one(32009).unwrap();
        assert_eq!(i.times(&i), Fp::new(-1, 32009));
    }

    #[test]
    fn fp_from_rational_reduces_denominator() {
        let half = BigRational::new(1.into(), 2.into());
        let h = Fp::from_rational(&half, &Domain::PrimeField(7)).unwrap();
        assert_eq!(h.value(), 4);
        let bad = BigRational::new(1.into(), 7.into());
        assert!(Fp::from_rational(&bad, &Domain::PrimeField(7)).is_err());
    }

    #[test]
    fn gaussian_inverse() {
        let z = Gaussian::from_ints(3, -4);
        assert!(z.times(&z.inv().unwrap()).is_one());
    }
}
