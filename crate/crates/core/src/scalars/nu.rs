//! Prime support of nonzero rationals and value profiles of rational functions.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{FieldError, RationalFunction, Scalar};

pub const DEFAULT_TRIAL_DIVISION_BOUND: u64 = 1_000_000;

fn prime_divisors(n: &BigInt, bound: u64, out: &mut BTreeSet<u64>) -> Result<(), FieldError> {
    let mut m = n.abs();
    let mut d = 2u64;
    while d <= bound {
        let bd = BigInt::from(d);
        if &bd * &bd > m {
            break;
        }
        if (&m % &bd).is_zero() {
            out.insert(d);
            while (&m % &bd).is_zero() {
                m /= &bd;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m.is_one() {
        return Ok(());
    }
    // No divisor up to `bound`: the cofactor is prime once it is below bound².
    let limit = BigInt::from(bound) * BigInt::from(bound);
    match m.to_u64() {
        Some(p) if m <= limit || BigInt::from(d) * BigInt::from(d) > m => {
            out.insert(p);
            Ok(())
        }
        _ => Err(FieldError::FactorizationBound { value: n.to_string(), bound }),
    }
}

/// `ν(a/b)`: primes dividing the reduced numerator or denominator.
pub fn nu(q: &BigRational) -> Result<BTreeSet<u64>, FieldError> {
    nu_with_bound(q, DEFAULT_TRIAL_DIVISION_BOUND)
}

pub fn nu_with_bound(q: &BigRational, bound: u64) -> Result<BTreeSet<u64>, FieldError> {
    if q.is_zero() {
        return Err(FieldError::ZeroArgument);
    }
    let mut out = BTreeSet::new();
    prime_divisors(q.numer(), bound, &mut out)?;
    prime_divisors(q.denom(), bound, &mut out)?;
    Ok(out)
}

/// Values of a rational function on a finite sample, with multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueProfile {
    /// Distinct values in first-seen order.
    pub counts: Vec<(Scalar, usize)>,
    /// `max(deg g, deg h)`; no value may occur more often.
    pub fiber_bound: usize,
}

impl ValueProfile {
    pub fn max_multiplicity(&self) -> usize {
        self.counts.iter().map(|(_, c)| *c).max().unwrap_or(0)
    }

    pub fn distinct_values(&self) -> usize {
        self.counts.len()
    }
}

/// Evaluate `f` on each distinct point of `sample` and tally the values.
pub fn rational_function_profile(
    f: &RationalFunction,
    sample: &[Scalar],
) -> Result<ValueProfile, FieldError> {
    if f.is_constant() {
        return Err(FieldError::ConstantFunction);
    }
    let fiber_bound = f.degree();
    let mut seen = std::collections::HashSet::new();
    let mut index: HashMap<Scalar, usize> = HashMap::new();
    let mut counts: Vec<(Scalar, usize)> = Vec::new();
    for a in sample {
        if !seen.insert(a) {
            continue;
        }
        let v = f.eval(a)?;
        match index.get(&v) {
            Some(&i) => counts[i].1 += 1,
            None => {
                index.insert(v.clone(), counts.len());
                counts.push((v, 1));
            }
        }
    }
    if let Some((v, c)) = counts.iter().find(|(_, c)| *c > fiber_bound) {
        return Err(FieldError::FiberBoundViolated { value: v.to_string(), count: *c, bound: fiber_bound });
    }
    Ok(ValueProfile { counts, fiber_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::FieldDescriptor;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn set(v: &[u64]) -> BTreeSet<u64> {
        v.iter().copied().collect()
    }

    #[test]
    fn nu_examples() {
        assert_eq!(nu(&q(1, 1)).unwrap(), set(&[]));
        assert_eq!(nu(&q(-1, 1)).unwrap(), set(&[]));
        assert_eq!(nu(&q(12, 5)).unwrap(), set(&[2, 3, 5]));
        assert_eq!(nu(&q(-7, 1)).unwrap(), set(&[7]));
        assert_eq!(nu(&q(0, 1)), Err(FieldError::ZeroArgument));
    }

    #[test]
    fn nu_large_prime_cofactor() {
        // 1_000_003 is prime and above the bound 1000 but below its square.
        assert_eq!(nu_with_bound(&q(2 * 1_000_003, 1), 1000).unwrap(), set(&[2, 1_000_003]));
        // 1_000_003^2 exceeds bound^2 with bound 1000.
        let big = BigRational::from_integer(BigInt::from(1_000_003u64) * BigInt::from(1_000_003u64));
        assert!(matches!(nu_with_bound(&big, 1000), Err(FieldError::FactorizationBound { .. })));
    }

    fn rf(text: &str) -> RationalFunction {
        let k = FieldDescriptor::parse("RF(Q,T)").unwrap();
        match Scalar::parse(&k, text).unwrap() {
            Scalar::Function(f) => f,
            _ => unreachable!(),
        }
    }

    fn ints(range: impl Iterator<Item = i64>) -> Vec<Scalar> {
        range.map(|n| Scalar::from_int(&FieldDescriptor::Rationals, n)).collect()
    }

    #[test]
    fn profile_of_even_square() {
        let p = rational_function_profile(&rf("T^2"), &ints([-2, -1, 1, 2].into_iter())).unwrap();
        let four = Scalar::from_int(&FieldDescriptor::Rationals, 4);
        let one = Scalar::from_int(&FieldDescriptor::Rationals, 1);
        assert_eq!(p.counts, vec![(four, 2), (one, 2)]);
    }

    #[test]
    fn profile_of_affine_map_is_injective() {
        let p = rational_function_profile(&rf("T+1"), &ints(1..=100)).unwrap();
        assert_eq!(p.distinct_values(), 100);
        assert_eq!(p.max_multiplicity(), 1);
    }

    #[test]
    fn profile_errors() {
        assert_eq!(rational_function_profile(&rf("(2*T)/(T)"), &ints(1..3)), Err(FieldError::ConstantFunction));
        assert!(matches!(rational_function_profile(&rf("1/T"), &ints(-1..2)), Err(FieldError::PoleHit(_))));
    }
}
