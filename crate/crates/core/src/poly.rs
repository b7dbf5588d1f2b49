//! Univariate polynomials in `t` over an exact field.
//!
//! The order is a free module over `k[[t]]`, but every element the crate
//! touches is a finite combination of paths, so coordinates always live in
//! `k[t]` and no truncation is ever needed.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::Scalar;

/// Polynomial with coefficients in ascending degree. Trailing zeros are
/// never stored, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Scalar> Poly<E> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: E) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * t^degree`
    pub fn monomial(c: E, degree: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(degree + 1);
        let zero = c.clone() - c.clone();
        coeffs.resize(degree, zero);
        coeffs.push(c);
        Self { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> Option<&E> {
        self.coeffs.get(degree)
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    /// True for nonzero constants, the units of `k[t]`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn scale(&self, c: &E) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        match self.coeffs.first() {
            None => Self::zero(),
            Some(c0) => {
                let zero = c0.clone() - c0.clone();
                let mut coeffs = vec![zero; k];
                coeffs.extend(self.coeffs.iter().cloned());
                Self { coeffs }
            }
        }
    }

    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let lead = divisor.leading().expect("division by the zero polynomial");
        let lead_inv = lead.inverse().expect("leading coefficient is a unit");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let zero = lead.clone() - lead.clone();
        let mut quot = vec![zero; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() * lead_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * d.clone();
            }
            quot[k] = c;
        }
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }
}

impl<E: Scalar> Add for &Poly<E> {
    type Output = Poly<E>;
    fn add(self, rhs: &Poly<E>) -> Poly<E> {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (i, c) in short.coeffs.iter().enumerate() {
            coeffs[i] = coeffs[i].clone() + c.clone();
        }
        Poly::from_coeffs(coeffs)
    }
}

impl<E: Scalar> Add for Poly<E> {
    type Output = Poly<E>;
    fn add(self, rhs: Poly<E>) -> Poly<E> {
        &self + &rhs
    }
}

impl<E: Scalar> Neg for &Poly<E> {
    type Output = Poly<E>;
    fn neg(self) -> Poly<E> {
        Poly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

impl<E: Scalar> Neg for Poly<E> {
    type Output = Poly<E>;
    fn neg(self) -> Poly<E> {
        -&self
    }
}

impl<E: Scalar> Sub for &Poly<E> {
    type Output = Poly<E>;
    fn sub(self, rhs: &Poly<E>) -> Poly<E> {
        self + &(-rhs)
    }
}

impl<E: Scalar> Sub for Poly<E> {
    type Output = Poly<E>;
    fn sub(self, rhs: Poly<E>) -> Poly<E> {
        &self - &rhs
    }
}

impl<E: Scalar> Mul for &Poly<E> {
    type Output = Poly<E>;
    fn mul(self, rhs: &Poly<E>) -> Poly<E> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let c0 = &self.coeffs[0];
        let zero = c0.clone() - c0.clone();
        let mut coeffs = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl<E: Scalar> Mul for Poly<E> {
    type Output = Poly<E>;
    fn mul(self, rhs: Poly<E>) -> Poly<E> {
        &self * &rhs
    }
}

impl<E: Scalar> fmt::Display for Poly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (deg, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{c}t")?,
                (_, true) => write!(f, "t^{deg}")?,
                (_, false) => write!(f, "{c}t^{deg}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, PrimeField, Rationals};

    #[test]
    fn arithmetic_trims_zeros() {
        let q = Rationals;
        let p = Poly::from_coeffs(vec![q.one(), q.one()]);
        let m = Poly::from_coeffs(vec![q.one(), -q.one()]);
        let prod = &p * &m;
        assert_eq!(prod, Poly::from_coeffs(vec![q.one(), q.zero(), -q.one()]));
        assert_eq!(&p - &p, Poly::zero());
        assert_eq!((&p - &p).degree(), None);
    }

    #[test]
    fn division_with_remainder() {
        let f = PrimeField::new(5).unwrap();
        let num = Poly::from_coeffs(vec![f.from_int(1), f.from_int(0), f.from_int(1)]);
        let den = Poly::from_coeffs(vec![f.from_int(2), f.from_int(1)]);
        let (quot, rem) = num.div_rem(&den);
        assert_eq!(&(&quot * &den) + &rem, num);
        assert!(rem.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn displays_in_t() {
        let q = Rationals;
        let p = Poly::from_coeffs(vec![q.from_int(-1), q.zero(), q.one()]);
        assert_eq!(p.to_string(), "-1 + t^2");
        assert_eq!(Poly::monomial(q.one(), 1).to_string(), "t");
    }
}
