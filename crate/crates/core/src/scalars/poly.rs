//! Dense univariate polynomials over a [`Scalar`] field and reduced
//! rational functions built on top of them.

use std::fmt;
use std::sync::Arc;

use super::{FieldDescriptor, FieldError, Scalar};

/// Coefficients low degree first; never has a trailing zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: Scalar, degree: usize, field: &FieldDescriptor) -> Self {
        let mut coeffs = vec![Scalar::zero(field); degree];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    /// `x - c`
    pub fn linear_root(c: &Scalar, field: &FieldDescriptor) -> Self {
        Self::from_coeffs(vec![-c, Scalar::one(field)])
    }

    pub fn coefficients(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize, field: &FieldDescriptor) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(|| Scalar::zero(field))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::from_coeffs(out)
    }

    pub fn neg(&self) -> Self {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), FieldError> {
        let lead = divisor.leading().ok_or(FieldError::DivisionByZero)?;
        let lead_inv = lead.try_inv()?;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() < divisor.coeffs.len() {
            return Ok((Self::zero(), self.clone()));
        }
        let zero = lead.zero_like();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![zero; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * d);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.try_inv().expect("nonzero leading coefficient")),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn map_coeffs<F>(&self, f: F) -> Result<Self, FieldError>
    where
        F: Fn(&Scalar) -> Result<Scalar, FieldError>,
    {
        Ok(Self::from_coeffs(self.coeffs.iter().map(f).collect::<Result<_, _>>()?))
    }

    /// `p(a x + b)`
    pub fn substitute_affine(&self, a: &Scalar, b: &Scalar) -> Self {
        let lin = Self::from_coeffs(vec![b.clone(), a.clone()]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Self::constant(c.clone()));
        }
        acc
    }

    pub(crate) fn fmt_in(&self, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (negative, body) = c.term_body();
            let text = match k {
                0 => body,
                _ => {
                    let power = if k == 1 { var.to_string() } else { format!("{var}^{k}") };
                    if body == "1" {
                        power
                    } else {
                        format!("{body}*{power}")
                    }
                }
            };
            match (first, negative) {
                (true, true) => write!(f, "-{text}")?,
                (true, false) => write!(f, "{text}")?,
                (false, true) => write!(f, "-{text}")?,
                (false, false) => write!(f, "+{text}")?,
            }
            first = false;
        }
        Ok(())
    }

    pub fn display_in<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        struct Shown<'a>(&'a Polynomial, &'a str);
        impl fmt::Display for Shown<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_in(self.1, f)
            }
        }
        Shown(self, var)
    }
}

/// Reduced fraction `num / den` over a base field with monic `den`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    base: FieldDescriptor,
    var: Arc<str>,
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(
        base: FieldDescriptor,
        var: Arc<str>,
        num: Polynomial,
        den: Polynomial,
    ) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::reduced(base, var, num, den))
    }

    fn reduced(base: FieldDescriptor, var: Arc<str>, num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            let one = Polynomial::constant(Scalar::one(&base));
            return RationalFunction { base, var, num, den: one };
        }
        let (num, den) = if den.degree() == Some(0) {
            (num, den)
        } else {
            let g = Polynomial::gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_rem(&g).expect("gcd").0, den.div_rem(&g).expect("gcd").0)
            }
        };
        let lead = den.leading().expect("nonzero").clone();
        let (num, den) = if lead.is_one() {
            (num, den)
        } else {
            let inv = lead.try_inv().expect("nonzero");
            (num.scale(&inv), den.scale(&inv))
        };
        RationalFunction { base, var, num, den }
    }

    pub fn from_polynomial(base: FieldDescriptor, var: Arc<str>, num: Polynomial) -> Self {
        let den = Polynomial::constant(Scalar::one(&base));
        RationalFunction { base, var, num, den }
    }

    pub fn constant(base: FieldDescriptor, var: Arc<str>, c: Scalar) -> Self {
        Self::from_polynomial(base, var, Polynomial::constant(c))
    }

    pub fn variable(base: FieldDescriptor, var: Arc<str>) -> Self {
        let t = Polynomial::monomial(Scalar::one(&base), 1, &base);
        Self::from_polynomial(base, var, t)
    }

    pub fn base(&self) -> &FieldDescriptor {
        &self.base
    }

    pub fn var(&self) -> &Arc<str> {
        &self.var
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn same_field(&self, other: &Self) -> bool {
        self.base == other.base && self.var == other.var
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// `max(deg num, deg den)` of the reduced fraction; 0 exactly for constants.
    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    fn with(&self, num: Polynomial, den: Polynomial) -> Self {
        Self::reduced(self.base.clone(), self.var.clone(), num, den)
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return self.with(self.num.add(&o.num), self.den.clone());
        }
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        self.with(num, self.den.mul(&o.den))
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), ..self.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return self.with(Polynomial::zero(), self.den.clone());
        }
        self.with(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.with(self.den.clone(), self.num.clone()))
    }

    /// Evaluate at a base-field point.
    pub fn eval(&self, x: &Scalar) -> Result<Scalar, FieldError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(FieldError::PoleHit(x.to_string()));
        }
        self.num.eval(x).try_div(&d)
    }

    pub fn map_coefficients<F>(&self, f: F) -> Result<Self, FieldError>
    where
        F: Fn(&Scalar) -> Result<Scalar, FieldError>,
    {
        let num = self.num.map_coeffs(&f)?;
        let den = self.den.map_coeffs(&f)?;
        RationalFunction::new(self.base.clone(), self.var.clone(), num, den)
    }

    /// `r(T) ↦ r(aT + b)`; `a` must be nonzero.
    pub fn substitute_affine(&self, a: &Scalar, b: &Scalar) -> Self {
        self.with(self.num.substitute_affine(a, b), self.den.substitute_affine(a, b))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            self.num.fmt_in(&self.var, f)
        } else {
            write!(f, "(")?;
            self.num.fmt_in(&self.var, f)?;
            write!(f, ")/(")?;
            self.den.fmt_in(&self.var, f)?;
            write!(f, ")")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::from_int(&FieldDescriptor::Rationals, n)
    }

    fn poly(c: &[i64]) -> Polynomial {
        Polynomial::from_coeffs(c.iter().map(|&n| q(n)).collect())
    }

    #[test]
    fn div_rem_and_gcd() {
        // (x^2 - 1) = (x - 1)(x + 1)
        let a = poly(&[-1, 0, 1]);
        let b = poly(&[1, 1]);
        let (quot, rem) = a.div_rem(&b).unwrap();
        assert_eq!(quot, poly(&[-1, 1]));
        assert!(rem.is_zero());
        let g = Polynomial::gcd(&a, &poly(&[2, 2]));
        assert_eq!(g, poly(&[1, 1]));
    }

    #[test]
    fn fraction_is_reduced_with_monic_denominator() {
        let base = FieldDescriptor::Rationals;
        let r = RationalFunction::new(base, "T".into(), poly(&[-2, 0, 2]), poly(&[3, 3])).unwrap();
        // (2x^2 - 2) / (3x + 3) = (2/3)(x - 1)
        let third = Scalar::rational(2, 3);
        assert_eq!(r.numerator(), &Polynomial::from_coeffs(vec![-third.clone(), third]));
        assert_eq!(r.denominator(), &poly(&[1]));
    }

    #[test]
    fn affine_substitution() {
        // p(x) = x^2, p(2x + 1) = 4x^2 + 4x + 1
        let p = poly(&[0, 0, 1]);
        assert_eq!(p.substitute_affine(&q(2), &q(1)), poly(&[1, 4, 4]));
    }
}
