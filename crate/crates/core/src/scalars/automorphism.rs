use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{FieldDescriptor, FieldError, Scalar};

/// The map underlying a [`FieldAutomorphism`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldMap {
    Identity,
    /// `√d ↦ -√d`.
    QuadraticConjugation,
    /// `x ↦ x^(p^r)` on `F_{p^e}`, `0 < r < e`.
    FrobeniusPower(u32),
    /// Apply an automorphism of the base field to the coefficients of `k(T)`.
    CoefficientLift(Box<FieldMap>),
    /// `T ↦ aT + b` on `k(T)` with rational `a ≠ 0`, `b`.
    AffineSubstitution { a: BigRational, b: BigRational },
}

/// Order of an automorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AutOrder {
    Finite(u64),
    Infinite,
}

/// A field automorphism bound to the field it acts on, with its order cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldAutomorphism {
    map: FieldMap,
    field: FieldDescriptor,
    order: AutOrder,
}

fn incompatible(map: &FieldMap, field: &FieldDescriptor) -> FieldError {
    FieldError::IncompatibleAutomorphism(format!("{map} does not act on {field}"))
}

impl FieldMap {
    /// Rewrite into the canonical variant for `field` and compute the order.
    fn normalize(self, field: &FieldDescriptor) -> Result<(FieldMap, AutOrder), FieldError> {
        use FieldDescriptor as F;
        match (self, field) {
            (FieldMap::Identity, _) => Ok((FieldMap::Identity, AutOrder::Finite(1))),
            (FieldMap::QuadraticConjugation, F::QuadraticExt { .. }) => {
                Ok((FieldMap::QuadraticConjugation, AutOrder::Finite(2)))
            }
            (FieldMap::QuadraticConjugation, F::FiniteField { e, .. }) if e % 2 == 0 => {
                FieldMap::FrobeniusPower(e / 2).normalize(field)
            }
            (FieldMap::FrobeniusPower(r), F::FiniteField { e, .. }) => {
                let r = r % e;
                if r == 0 {
                    Ok((FieldMap::Identity, AutOrder::Finite(1)))
                } else {
                    Ok((FieldMap::FrobeniusPower(r), AutOrder::Finite((e / r.gcd(e)) as u64)))
                }
            }
            (FieldMap::CoefficientLift(inner), F::RationalFunctions { base, .. }) => {
                let (inner, order) = inner.normalize(base)?;
                if inner == FieldMap::Identity {
                    Ok((FieldMap::Identity, AutOrder::Finite(1)))
                } else {
                    Ok((FieldMap::CoefficientLift(Box::new(inner)), order))
                }
            }
            (FieldMap::AffineSubstitution { a, b }, F::RationalFunctions { base, .. }) => {
                if a.is_zero() || base.characteristic() != 0 {
                    let m = FieldMap::AffineSubstitution { a, b };
                    return Err(incompatible(&m, field));
                }
                // Over Q the only roots of unity are ±1, so this is exhaustive.
                let order = if a.is_one() && b.is_zero() {
                    return Ok((FieldMap::Identity, AutOrder::Finite(1)));
                } else if a == -BigRational::one() {
                    AutOrder::Finite(2)
                } else {
                    AutOrder::Infinite
                };
                Ok((FieldMap::AffineSubstitution { a, b }, order))
            }
            (m, f) => Err(incompatible(&m, f)),
        }
    }

    fn apply(&self, s: &Scalar) -> Result<Scalar, FieldError> {
        match (self, s) {
            (FieldMap::Identity, _) => Ok(s.clone()),
            (FieldMap::QuadraticConjugation, Scalar::Quadratic(_)) => s.involution(),
            (FieldMap::FrobeniusPower(r), Scalar::Finite(g)) => Ok(Scalar::Finite(g.frobenius(*r))),
            (FieldMap::CoefficientLift(inner), Scalar::Function(f)) => {
                Ok(Scalar::Function(f.map_coefficients(|c| inner.apply(c))?))
            }
            (FieldMap::AffineSubstitution { a, b }, Scalar::Function(f)) => {
                let a = Scalar::from_rational(f.base(), a)?;
                let b = Scalar::from_rational(f.base(), b)?;
                Ok(Scalar::Function(f.substitute_affine(&a, &b)))
            }
            (m, s) => Err(incompatible(m, &s.descriptor())),
        }
    }

    fn inverse(&self, field: &FieldDescriptor) -> FieldMap {
        match (self, field) {
            (FieldMap::FrobeniusPower(r), FieldDescriptor::FiniteField { e, .. }) => {
                FieldMap::FrobeniusPower((e - r % e) % e)
            }
            (FieldMap::CoefficientLift(inner), FieldDescriptor::RationalFunctions { base, .. }) => {
                FieldMap::CoefficientLift(Box::new(inner.inverse(base)))
            }
            (FieldMap::AffineSubstitution { a, b }, _) => {
                FieldMap::AffineSubstitution { a: a.recip(), b: -(b / a) }
            }
            (m, _) => m.clone(),
        }
    }

    /// `self ∘ other` (apply `other` first).
    fn compose(&self, other: &FieldMap, field: &FieldDescriptor) -> Result<FieldMap, FieldError> {
        use FieldMap as M;
        Ok(match (self, other) {
            (M::Identity, m) | (m, M::Identity) => m.clone(),
            (M::QuadraticConjugation, M::QuadraticConjugation) => M::Identity,
            (M::FrobeniusPower(r), M::FrobeniusPower(s)) => M::FrobeniusPower(r + s),
            (M::CoefficientLift(f), M::CoefficientLift(g)) => {
                let FieldDescriptor::RationalFunctions { base, .. } = field else {
                    return Err(incompatible(self, field));
                };
                M::CoefficientLift(Box::new(f.compose(g, base)?))
            }
            (M::AffineSubstitution { a: a1, b: b1 }, M::AffineSubstitution { a: a2, b: b2 }) => {
                // r(T) ↦ r(a2 T + b2) ↦ r(a2 (a1 T + b1) + b2)
                M::AffineSubstitution { a: a1 * a2, b: a2 * b1 + b2 }
            }
            _ => return Err(FieldError::UnsupportedComposition(self.to_string(), other.to_string())),
        })
    }
}

impl fmt::Display for FieldMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldMap::Identity => write!(f, "id"),
            FieldMap::QuadraticConjugation => write!(f, "conj"),
            FieldMap::FrobeniusPower(r) => write!(f, "frob{r}"),
            FieldMap::CoefficientLift(inner) => write!(f, "lift({inner})"),
            FieldMap::AffineSubstitution { a, b } => write!(f, "affine({a},{b})"),
        }
    }
}

impl FieldAutomorphism {
    pub fn new(map: FieldMap, field: &FieldDescriptor) -> Result<Self, FieldError> {
        let (map, order) = map.normalize(field)?;
        Ok(FieldAutomorphism { map, field: field.clone(), order })
    }

    pub fn identity(field: &FieldDescriptor) -> Self {
        FieldAutomorphism { map: FieldMap::Identity, field: field.clone(), order: AutOrder::Finite(1) }
    }

    /// Parse `id`, `conj`, `frob`, `frob<r>`, `lift(<map>)` or `affine(<a>,<b>)`.
    pub fn parse(text: &str, field: &FieldDescriptor) -> Result<Self, FieldError> {
        Self::new(parse_map(text.trim())?, field)
    }

    pub fn map(&self) -> &FieldMap {
        &self.map
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn order(&self) -> AutOrder {
        self.order
    }

    pub fn is_identity(&self) -> bool {
        self.map == FieldMap::Identity
    }

    pub fn apply(&self, s: &Scalar) -> Result<Scalar, FieldError> {
        if s.descriptor() != self.field {
            return Err(incompatible(&self.map, &s.descriptor()));
        }
        self.map.apply(s)
    }

    pub fn inverse(&self) -> Self {
        let map = self.map.inverse(&self.field);
        Self::new(map, &self.field).expect("inverse of a valid automorphism")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self, FieldError> {
        if self.field != other.field {
            return Err(FieldError::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        Self::new(self.map.compose(&other.map, &self.field)?, &self.field)
    }

    pub fn pow(&self, k: u64) -> Result<Self, FieldError> {
        let mut acc = Self::identity(&self.field);
        for _ in 0..k {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for FieldAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.map)
    }
}

fn parse_map(text: &str) -> Result<FieldMap, FieldError> {
    let bad = || FieldError::Parse(text.to_string(), "unknown field automorphism".into());
    match text {
        "id" | "identity" => return Ok(FieldMap::Identity),
        "conj" | "bar" => return Ok(FieldMap::QuadraticConjugation),
        "frob" => return Ok(FieldMap::FrobeniusPower(1)),
        _ => {}
    }
    if let Some(r) = text.strip_prefix("frob") {
        return r.trim_start_matches('^').parse().map(FieldMap::FrobeniusPower).map_err(|_| bad());
    }
    if let Some(inner) = text.strip_prefix("lift(").and_then(|t| t.strip_suffix(')')) {
        return Ok(FieldMap::CoefficientLift(Box::new(parse_map(inner)?)));
    }
    if let Some(inner) = text.strip_prefix("affine(").and_then(|t| t.strip_suffix(')')) {
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        let parse = |s: &str| -> Result<BigRational, FieldError> {
            match Scalar::parse(&FieldDescriptor::Rationals, s)? {
                Scalar::Rational(q) => Ok(q),
                _ => Err(bad()),
            }
        };
        return Ok(FieldMap::AffineSubstitution { a: parse(a)?, b: parse(b)? });
    }
    Err(bad())
}
