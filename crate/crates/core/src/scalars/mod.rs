//! Exact scalar fields: rationals, quadratic extensions `Q(√d)`, finite
//! fields and rational function fields `k(T)`, their automorphisms, and the
//! prime-support map used to separate toral elements over `Q`.
//!
//! Every value is kept in a canonical form so that `==` is field equality.

mod automorphism;
mod expr;
mod finite;
mod nu;
mod poly;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use automorphism::{AutOrder, FieldAutomorphism, FieldMap};
pub use finite::{GaloisField, Gf, MAX_FIELD_ORDER};
pub use nu::{
    nu, nu_with_bound, rational_function_profile, ValueProfile, DEFAULT_TRIAL_DIVISION_BOUND,
};
pub use poly::{Polynomial, RationalFunction};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("invalid field descriptor `{0}`: {1}")]
    InvalidDescriptor(String, String),
    #[error("cannot parse scalar `{0}`: {1}")]
    Parse(String, String),
    #[error("`{op}` is not defined over {field}")]
    Unsupported { op: &'static str, field: String },
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("trial division bound {bound} exceeded while factoring {value}")]
    FactorizationBound { value: String, bound: u64 },
    #[error("rational function is constant")]
    ConstantFunction,
    #[error("sample point {0} is a pole")]
    PoleHit(String),
    #[error("value {value} occurs {count} times, above the fiber bound {bound}")]
    FiberBoundViolated { value: String, count: usize, bound: usize },
    #[error("incompatible automorphism: {0}")]
    IncompatibleAutomorphism(String),
    #[error("cannot compose {0} with {1}")]
    UnsupportedComposition(String, String),
}

/// Which exact field a scalar lives in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    /// `Q(√d)`, `d` squarefree and not 0 or 1.
    QuadraticExt { d: i64 },
    /// `F_{p^e}`.
    FiniteField { p: u32, e: u32 },
    /// `base(var)`; the base is never itself a function field.
    RationalFunctions { base: Box<FieldDescriptor>, var: Arc<str> },
}

fn is_squarefree(d: i64) -> bool {
    let mut n = d.unsigned_abs();
    let mut k = 2u64;
    while k * k <= n {
        if n.is_multiple_of(k * k) {
            return false;
        }
        if n.is_multiple_of(k) {
            n /= k;
        }
        k += 1;
    }
    true
}

impl FieldDescriptor {
    pub fn quadratic(d: i64) -> Result<Self, FieldError> {
        if d == 0 || d == 1 || !is_squarefree(d) {
            return Err(FieldError::InvalidDescriptor(
                format!("Q(sqrt,{d})"),
                "d must be squarefree and different from 0 and 1".into(),
            ));
        }
        Ok(FieldDescriptor::QuadraticExt { d })
    }

    pub fn finite(p: u32, e: u32) -> Result<Self, FieldError> {
        GaloisField::get(p, e)?;
        Ok(FieldDescriptor::FiniteField { p, e })
    }

    pub fn rational_functions(base: FieldDescriptor, var: &str) -> Result<Self, FieldError> {
        let bad = |why: &str| FieldError::InvalidDescriptor(format!("RF({base},{var})"), why.into());
        if matches!(base, FieldDescriptor::RationalFunctions { .. }) {
            return Err(bad("only one transcendental variable is supported"));
        }
        if var.is_empty() || !var.chars().all(|c| c.is_ascii_alphabetic()) || var == "s" || var == "z" {
            return Err(bad("variable must be alphabetic and not `s` or `z`"));
        }
        Ok(FieldDescriptor::RationalFunctions { base: Box::new(base), var: var.into() })
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldDescriptor::FiniteField { p, .. } => *p,
            FieldDescriptor::RationalFunctions { base, .. } => base.characteristic(),
            _ => 0,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldDescriptor::FiniteField { .. })
    }

    /// Number of elements for finite fields.
    pub fn size(&self) -> Option<u64> {
        match self {
            FieldDescriptor::FiniteField { p, e } => Some((*p as u64).pow(*e)),
            _ => None,
        }
    }

    /// All elements of a finite field in encoding order.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            FieldDescriptor::FiniteField { p, e } => {
                let gf = GaloisField::get(*p, *e).ok()?;
                Some((0..gf.order()).map(|v| Scalar::Finite(Gf::new(gf.clone(), v))).collect())
            }
            _ => None,
        }
    }

    pub fn parse(text: &str) -> Result<Self, FieldError> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |why: &str| FieldError::InvalidDescriptor(text.to_string(), why.into());
        if s == "Q" {
            return Ok(FieldDescriptor::Rationals);
        }
        if let Some(inner) = s.strip_prefix("Q(sqrt,").and_then(|r| r.strip_suffix(')')) {
            let d: i64 = inner.parse().map_err(|_| bad("expected integer d"))?;
            return Self::quadratic(d);
        }
        if let Some(inner) = s.strip_prefix("RF(").and_then(|r| r.strip_suffix(')')) {
            let comma = inner.rfind(',').ok_or_else(|| bad("expected RF(base,var)"))?;
            let base = Self::parse(&inner[..comma])?;
            return Self::rational_functions(base, &inner[comma + 1..]);
        }
        if let Some(inner) = s.strip_prefix("F(").and_then(|r| r.strip_suffix(')')) {
            let (p, e) = inner.split_once(',').ok_or_else(|| bad("expected F(p,e)"))?;
            let p: u32 = p.parse().map_err(|_| bad("expected prime p"))?;
            let e: u32 = e.parse().map_err(|_| bad("expected exponent e"))?;
            return Self::finite(p, e);
        }
        Err(bad("unknown field"))
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::QuadraticExt { d } => write!(f, "Q(sqrt,{d})"),
            FieldDescriptor::FiniteField { p, e } => write!(f, "F({p},{e})"),
            FieldDescriptor::RationalFunctions { base, var } => write!(f, "RF({base},{var})"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = FieldError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl Serialize for FieldDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldDescriptor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Self::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// `re + im·√d`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticElement {
    pub d: i64,
    pub re: BigRational,
    pub im: BigRational,
}

impl QuadraticElement {
    fn norm(&self) -> BigRational {
        &self.re * &self.re - BigRational::from_integer(self.d.into()) * &self.im * &self.im
    }
}

/// An exact element of one of the supported fields.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Quadratic(QuadraticElement),
    Finite(Gf),
    Function(RationalFunction),
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl Scalar {
    pub fn zero(field: &FieldDescriptor) -> Scalar {
        Scalar::from_int(field, 0)
    }

    pub fn one(field: &FieldDescriptor) -> Scalar {
        Scalar::from_int(field, 1)
    }

    pub fn from_int(field: &FieldDescriptor, n: i64) -> Scalar {
        Scalar::from_bigint(field, &BigInt::from(n))
    }

    pub fn from_bigint(field: &FieldDescriptor, n: &BigInt) -> Scalar {
        match field {
            FieldDescriptor::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            FieldDescriptor::QuadraticExt { d } => Scalar::Quadratic(QuadraticElement {
                d: *d,
                re: BigRational::from_integer(n.clone()),
                im: BigRational::zero(),
            }),
            FieldDescriptor::FiniteField { p, e } => {
                let gf = GaloisField::get(*p, *e).expect("validated descriptor");
                let r = n.mod_floor(&BigInt::from(*p)).to_u32().expect("residue fits");
                Scalar::Finite(Gf::new(gf, r))
            }
            FieldDescriptor::RationalFunctions { base, var } => Scalar::Function(
                RationalFunction::constant((**base).clone(), var.clone(), Scalar::from_bigint(base, n)),
            ),
        }
    }

    /// Image of a rational number under the prime-field embedding.
    pub fn from_rational(field: &FieldDescriptor, q: &BigRational) -> Result<Scalar, FieldError> {
        let n = Scalar::from_bigint(field, q.numer());
        let d = Scalar::from_bigint(field, q.denom());
        n.try_div(&d)
    }

    /// `√d` in `Q(√d)`, `z` in `F_{p^e}`, the variable in `k(T)`.
    pub fn generator(field: &FieldDescriptor) -> Scalar {
        match field {
            FieldDescriptor::Rationals => Scalar::one(field),
            FieldDescriptor::QuadraticExt { d } => {
                Scalar::Quadratic(QuadraticElement { d: *d, re: BigRational::zero(), im: rat(1) })
            }
            FieldDescriptor::FiniteField { p, e } => {
                let gf = GaloisField::get(*p, *e).expect("validated descriptor");
                let g = gf.generator();
                Scalar::Finite(Gf::new(gf, g))
            }
            FieldDescriptor::RationalFunctions { base, var } => {
                Scalar::Function(RationalFunction::variable((**base).clone(), var.clone()))
            }
        }
    }

    /// Embed a base-field scalar into `k(T)` (identity for other fields).
    pub fn embed(field: &FieldDescriptor, s: Scalar) -> Result<Scalar, FieldError> {
        match field {
            FieldDescriptor::RationalFunctions { base, var } if !matches!(s, Scalar::Function(_)) => {
                if s.descriptor() != **base {
                    return Err(FieldError::FieldMismatch(s.descriptor().to_string(), base.to_string()));
                }
                Ok(Scalar::Function(RationalFunction::constant((**base).clone(), var.clone(), s)))
            }
            _ => {
                if s.descriptor() != *field {
                    return Err(FieldError::FieldMismatch(s.descriptor().to_string(), field.to_string()));
                }
                Ok(s)
            }
        }
    }

    pub fn quadratic(d: i64, re: BigRational, im: BigRational) -> Scalar {
        Scalar::Quadratic(QuadraticElement { d, re, im })
    }

    pub fn rational(n: i64, d: i64) -> Scalar {
        Scalar::Rational(BigRational::new(n.into(), d.into()))
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        match self {
            Scalar::Rational(_) => FieldDescriptor::Rationals,
            Scalar::Quadratic(q) => FieldDescriptor::QuadraticExt { d: q.d },
            Scalar::Finite(g) => FieldDescriptor::FiniteField {
                p: g.field().characteristic(),
                e: g.field().degree(),
            },
            Scalar::Function(r) => FieldDescriptor::RationalFunctions {
                base: Box::new(r.base().clone()),
                var: r.var().clone(),
            },
        }
    }

    pub fn same_field(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Rational(_), Scalar::Rational(_)) => true,
            (Scalar::Quadratic(a), Scalar::Quadratic(b)) => a.d == b.d,
            (Scalar::Finite(a), Scalar::Finite(b)) => a.same_field(b),
            (Scalar::Function(a), Scalar::Function(b)) => a.same_field(b),
            _ => false,
        }
    }

    pub fn zero_like(&self) -> Scalar {
        match self {
            Scalar::Rational(_) => Scalar::Rational(BigRational::zero()),
            Scalar::Finite(g) => Scalar::Finite(Gf::new(g.field().clone(), 0)),
            _ => Scalar::zero(&self.descriptor()),
        }
    }

    pub fn one_like(&self) -> Scalar {
        match self {
            Scalar::Rational(_) => Scalar::Rational(BigRational::one()),
            Scalar::Finite(g) => Scalar::Finite(Gf::new(g.field().clone(), 1)),
            _ => Scalar::one(&self.descriptor()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Quadratic(q) => q.re.is_zero() && q.im.is_zero(),
            Scalar::Finite(g) => g.value() == 0,
            Scalar::Function(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Quadratic(q) => q.re.is_one() && q.im.is_zero(),
            Scalar::Finite(g) => g.value() == 1,
            Scalar::Function(r) => r.is_one(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            _ => None,
        }
    }

    /// The rational number this scalar equals, if it lies in the prime field of a
    /// characteristic-zero field.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rational(q) => Some(q.clone()),
            Scalar::Quadratic(q) if q.im.is_zero() => Some(q.re.clone()),
            Scalar::Function(r) if r.is_constant() => {
                let c = r.numerator().coefficients().first().cloned();
                match c {
                    None => Some(BigRational::zero()),
                    Some(c) => c.to_rational(),
                }
            }
            _ => None,
        }
    }

    fn mismatch(&self, other: &Scalar) -> FieldError {
        FieldError::FieldMismatch(self.descriptor().to_string(), other.descriptor().to_string())
    }

    pub fn try_add(&self, o: &Scalar) -> Result<Scalar, FieldError> {
        Ok(match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Quadratic(a), Scalar::Quadratic(b)) if a.d == b.d => {
                Scalar::quadratic(a.d, &a.re + &b.re, &a.im + &b.im)
            }
            (Scalar::Finite(a), Scalar::Finite(b)) if a.same_field(b) => Scalar::Finite(a.add(b)),
            (Scalar::Function(a), Scalar::Function(b)) if a.same_field(b) => Scalar::Function(a.add(b)),
            _ => return Err(self.mismatch(o)),
        })
    }

    pub fn try_sub(&self, o: &Scalar) -> Result<Scalar, FieldError> {
        self.try_add(&o.neg_ref())
    }

    pub fn try_mul(&self, o: &Scalar) -> Result<Scalar, FieldError> {
        Ok(match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Quadratic(a), Scalar::Quadratic(b)) if a.d == b.d => {
                let d = rat(a.d);
                Scalar::quadratic(
                    a.d,
                    &a.re * &b.re + d * &a.im * &b.im,
                    &a.re * &b.im + &a.im * &b.re,
                )
            }
            (Scalar::Finite(a), Scalar::Finite(b)) if a.same_field(b) => Scalar::Finite(a.mul(b)),
            (Scalar::Function(a), Scalar::Function(b)) if a.same_field(b) => Scalar::Function(a.mul(b)),
            _ => return Err(self.mismatch(o)),
        })
    }

    pub fn try_inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Quadratic(a) => {
                let n = a.norm();
                Scalar::quadratic(a.d, &a.re / &n, -(&a.im / &n))
            }
            Scalar::Finite(a) => Scalar::Finite(a.inv().ok_or(FieldError::DivisionByZero)?),
            Scalar::Function(a) => Scalar::Function(a.inv()?),
        })
    }

    pub fn try_div(&self, o: &Scalar) -> Result<Scalar, FieldError> {
        if !self.same_field(o) {
            return Err(self.mismatch(o));
        }
        self.try_mul(&o.try_inv()?)
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Quadratic(a) => Scalar::quadratic(a.d, -&a.re, -&a.im),
            Scalar::Finite(a) => Scalar::Finite(a.neg()),
            Scalar::Function(a) => Scalar::Function(a.neg()),
        }
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, k: i64) -> Result<Scalar, FieldError> {
        if let Scalar::Finite(g) = self {
            let v = g.field().pow(g.value(), k).ok_or(FieldError::DivisionByZero)?;
            return Ok(Scalar::Finite(Gf::new(g.field().clone(), v)));
        }
        let base = if k < 0 { self.try_inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.one_like();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// The order-two automorphism of `Q(√d)` or of `F_{p^{2e}}`.
    pub fn involution(&self) -> Result<Scalar, FieldError> {
        match self {
            Scalar::Quadratic(a) => Ok(Scalar::quadratic(a.d, a.re.clone(), -&a.im)),
            Scalar::Finite(g) if g.field().degree() % 2 == 0 => {
                Ok(Scalar::Finite(g.frobenius(g.field().degree() / 2)))
            }
            _ => Err(FieldError::Unsupported { op: "involution", field: self.descriptor().to_string() }),
        }
    }

    /// Sign and body of this scalar used as a polynomial coefficient.
    pub(crate) fn term_body(&self) -> (bool, String) {
        match self {
            Scalar::Rational(q) if q.is_negative() => (true, (-q).to_string()),
            Scalar::Quadratic(q) if q.im.is_zero() && q.re.is_negative() => (true, (-&q.re).to_string()),
            Scalar::Quadratic(q) if q.re.is_zero() && q.im.is_negative() => {
                (true, Scalar::quadratic(q.d, q.re.clone(), -&q.im).to_string())
            }
            Scalar::Quadratic(q) if !q.im.is_zero() && !q.re.is_zero() => (false, format!("({self})")),
            Scalar::Finite(g) if g.field().degree() > 1 && self.to_string().contains('+') => {
                (false, format!("({self})"))
            }
            Scalar::Function(_) => (false, format!("({self})")),
            _ => (false, self.to_string()),
        }
    }

    /// Parse a scalar of the given field from its string form.
    pub fn parse(field: &FieldDescriptor, text: &str) -> Result<Scalar, FieldError> {
        expr::parse_scalar(field, text)
    }

    /// Log-scale size used to keep random sampling and order searches bounded.
    pub fn height(&self) -> u64 {
        fn h(q: &BigRational) -> u64 {
            q.numer().bits().max(q.denom().bits())
        }
        match self {
            Scalar::Rational(q) => h(q),
            Scalar::Quadratic(q) => h(&q.re).max(h(&q.im)),
            Scalar::Finite(_) => 0,
            Scalar::Function(r) => r
                .numerator()
                .coefficients()
                .iter()
                .chain(r.denominator().coefficients())
                .map(Scalar::height)
                .max()
                .unwrap_or(0)
                .max(r.degree() as u64),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Quadratic(q) => {
                let im = |f: &mut fmt::Formatter<'_>, v: &BigRational| {
                    if v.is_one() {
                        write!(f, "s")
                    } else {
                        write!(f, "{v}*s")
                    }
                };
                match (q.re.is_zero(), q.im.is_zero()) {
                    (_, true) => write!(f, "{}", q.re),
                    (true, false) if q.im.is_negative() => {
                        write!(f, "-")?;
                        im(f, &-&q.im)
                    }
                    (true, false) => im(f, &q.im),
                    (false, false) => {
                        write!(f, "{}", q.re)?;
                        if q.im.is_negative() {
                            write!(f, "-")?;
                            im(f, &-&q.im)
                        } else {
                            write!(f, "+")?;
                            im(f, &q.im)
                        }
                    }
                }
            }
            Scalar::Finite(g) => write!(f, "{g}"),
            Scalar::Function(r) => write!(f, "{r}"),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            /// Panics when the operands live in different fields.
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}
