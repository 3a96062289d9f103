//! Finite fields `F_q`, `q = p^e`, with log/antilog tables.
//!
//! Elements are encoded as integers `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`
//! where `c_i` are the coefficients of the residue modulo a primitive
//! polynomial. The modulus is the smallest primitive polynomial in that
//! encoding, so the representation is deterministic.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use super::FieldError;

/// Largest field order we tabulate.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

#[derive(Debug)]
pub struct GaloisField {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus, low degree first, length `e + 1`.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

type Registry = Mutex<HashMap<(u32, u32), Arc<GaloisField>>>;

fn registry() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(|| Mutex::new(HashMap::new()))
}

impl GaloisField {
    /// Shared table for `F_{p^e}`; built once per process.
    pub fn get(p: u32, e: u32) -> Result<Arc<GaloisField>, FieldError> {
        let invalid = |why: &str| FieldError::InvalidDescriptor(format!("F({p},{e})"), why.into());
        if !is_prime(p as u64) {
            return Err(invalid("characteristic is not prime"));
        }
        if e == 0 {
            return Err(invalid("exponent must be at least 1"));
        }
        let q = (p as u64).checked_pow(e).filter(|&q| q <= MAX_FIELD_ORDER);
        let Some(q) = q else {
            return Err(invalid("field order exceeds the table limit of 65536"));
        };
        let mut reg = registry().lock().expect("field registry poisoned");
        if let Some(f) = reg.get(&(p, e)) {
            return Ok(f.clone());
        }
        let field = Arc::new(Self::build(p, e, q as u32));
        reg.insert((p, e), field.clone());
        Ok(field)
    }

    fn build(p: u32, e: u32, q: u32) -> Self {
        let order = q - 1;
        // Search monic degree-e polynomials for one where `z` has order q-1.
        for low in 0..(q as u64) {
            let mut modulus = digits_of(low as u32, p, e);
            modulus.push(1);
            if e > 1 && modulus[0] == 0 {
                continue;
            }
            let mut exp = Vec::with_capacity(order as usize);
            let mut log = vec![u32::MAX; q as usize];
            // Generator: z for e > 1, and for e = 1 the smallest primitive root.
            let generator_candidates: Vec<u32> = if e == 1 { (1..p).collect() } else { vec![p] };
            for g in generator_candidates {
                exp.clear();
                log.iter_mut().for_each(|l| *l = u32::MAX);
                let mut x = 1u32;
                let mut ok = true;
                for i in 0..order {
                    if log[x as usize] != u32::MAX {
                        ok = false;
                        break;
                    }
                    log[x as usize] = i;
                    exp.push(x);
                    x = mul_by_generator(x, g, p, e, &modulus);
                }
                if ok && x == 1 {
                    return GaloisField { p, e, q, modulus, exp, log };
                }
            }
            if e == 1 {
                break;
            }
        }
        unreachable!("every finite field has a primitive element")
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.e {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place = place.wrapping_mul(self.p);
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.e == 1 {
            return (self.p - a % self.p) % self.p;
        }
        let mut a = a;
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.e {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place = place.wrapping_mul(self.p);
        }
        out
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.q - 1;
        let s = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % order as u64;
        self.exp[s as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let order = self.q - 1;
        Some(self.exp[((order - self.log[a as usize]) % order) as usize])
    }

    pub fn pow(&self, a: u32, k: i64) -> Option<u32> {
        if a == 0 {
            return if k > 0 { Some(0) } else if k == 0 { Some(1) } else { None };
        }
        let order = (self.q - 1) as i64;
        let l = (self.log[a as usize] as i64 * k.rem_euclid(order)).rem_euclid(order);
        Some(self.exp[l as usize])
    }

    /// `a ↦ a^(p^r)`.
    pub fn frobenius(&self, a: u32, r: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        let order = (self.q - 1) as u64;
        let mut factor = 1u64;
        for _ in 0..r % self.e {
            factor = factor * self.p as u64 % order.max(1);
        }
        if order == 1 {
            return a;
        }
        let l = self.log[a as usize] as u64 * factor % order;
        self.exp[l as usize]
    }

    pub fn from_integer(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    /// The residue class of `z`, the root of the modulus.
    pub fn generator(&self) -> u32 {
        if self.e == 1 {
            // F_p is generated by 1 as a ring; `z` only makes sense for e > 1.
            1
        } else {
            self.p
        }
    }

    pub fn digits(&self, a: u32) -> Vec<u32> {
        digits_of(a, self.p, self.e)
    }
}

fn digits_of(a: u32, p: u32, e: u32) -> Vec<u32> {
    let mut a = a;
    (0..e)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Multiply encoded `x` by the encoded element `g`: for e = 1 this is `x*g mod p`,
/// for e > 1 `g` is always `z` and the product is reduced by the modulus.
fn mul_by_generator(x: u32, g: u32, p: u32, e: u32, modulus: &[u32]) -> u32 {
    if e == 1 {
        return ((x as u64 * g as u64) % p as u64) as u32;
    }
    let mut d = digits_of(x, p, e);
    let top = d[e as usize - 1];
    for i in (1..e as usize).rev() {
        d[i] = d[i - 1];
    }
    d[0] = 0;
    if top != 0 {
        for i in 0..e as usize {
            d[i] = (d[i] + (p - (top * modulus[i]) % p)) % p;
        }
    }
    from_digits(&d, p)
}

/// An element of a finite field.
#[derive(Clone)]
pub struct Gf {
    pub(crate) field: Arc<GaloisField>,
    pub(crate) value: u32,
}

impl Gf {
    pub fn new(field: Arc<GaloisField>, value: u32) -> Self {
        debug_assert!(value < field.q);
        Gf { field, value }
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn same_field(&self, other: &Gf) -> bool {
        self.field.p == other.field.p && self.field.e == other.field.e
    }

    fn with(&self, value: u32) -> Gf {
        Gf { field: self.field.clone(), value }
    }

    pub fn add(&self, o: &Gf) -> Gf {
        self.with(self.field.add(self.value, o.value))
    }

    pub fn neg(&self) -> Gf {
        self.with(self.field.neg(self.value))
    }

    pub fn mul(&self, o: &Gf) -> Gf {
        self.with(self.field.mul(self.value, o.value))
    }

    pub fn inv(&self) -> Option<Gf> {
        self.field.inv(self.value).map(|v| self.with(v))
    }

    pub fn frobenius(&self, r: u32) -> Gf {
        self.with(self.field.frobenius(self.value, r))
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.value == other.value
    }
}

impl Eq for Gf {}

impl Hash for Gf {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.p.hash(state);
        self.field.e.hash(state);
        self.value.hash(state);
    }
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf({}^{}: {})", self.field.p, self.field.e, self)
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.e == 1 {
            return write!(f, "{}", self.value);
        }
        let digits = self.field.digits(self.value);
        let mut terms = Vec::new();
        for (k, &c) in digits.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let term = match (k, c) {
                (0, c) => c.to_string(),
                (1, 1) => "z".to_string(),
                (1, c) => format!("{c}*z"),
                (k, 1) => format!("z^{k}"),
                (k, c) => format!("{c}*z^{k}"),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}
