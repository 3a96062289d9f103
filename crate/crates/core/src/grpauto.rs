//! Group automorphisms in the normal form `f ∘ d_h ∘ i_g`: inner part `g`,
//! diagonal part `h`, and a field automorphism `f` applied entry-wise.
//!
//! `apply(x) = f(h g x g^-1 h^-1)`. The maps act on matrices of any size, so
//! the same type serves the adjoint groups and the 2x2 picture of `SL_2`.

use serde::{Deserialize, Serialize};

use crate::chevgroup::{Character, ChevalleyGroup, GroupError};
use crate::matrix::{Matrix, MatrixError};
use crate::scalars::{AutOrder, FieldAutomorphism, FieldDescriptor, FieldError, Scalar};

pub const DEFAULT_ORDER_CAP: u64 = 64;

#[derive(Debug, thiserror::Error)]
pub enum AutError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("diagonal part is not a diagonal matrix")]
    NotDiagonal,
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("invalid automorphism descriptor `{0}`: {1}")]
    Parse(String, String),
}

/// Where automorphism descriptors get their matrices from.
pub trait AutomorphismContext {
    fn dim(&self) -> usize;
    fn field(&self) -> &FieldDescriptor;
    /// Evaluate a generator word.
    fn word(&self, text: &str) -> Result<Matrix, AutError>;
    /// Diagonal element from a list of values.
    fn diagonal(&self, values: &[Scalar]) -> Result<Matrix, AutError>;
}

impl AutomorphismContext for ChevalleyGroup {
    fn dim(&self) -> usize {
        ChevalleyGroup::dim(self)
    }

    fn field(&self) -> &FieldDescriptor {
        ChevalleyGroup::field(self)
    }

    fn word(&self, text: &str) -> Result<Matrix, AutError> {
        Ok(self.evaluate_word(text)?.into_matrix())
    }

    /// Values are the character on the simple roots.
    fn diagonal(&self, values: &[Scalar]) -> Result<Matrix, AutError> {
        Ok(self.h_chi(&Character::new(values.to_vec())?)?.into_matrix())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PowerOrder {
    Finite(u64),
    Unknown,
}

#[derive(Debug, Clone)]
pub struct GroupAutomorphism {
    field: FieldAutomorphism,
    diag: Matrix,
    diag_inv: Matrix,
    inner: Matrix,
    inner_inv: Matrix,
    label: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AutomorphismJson {
    pub label: String,
    pub field: String,
    pub field_order: AutOrder,
    pub diagonal: Vec<String>,
    pub inner: Vec<Vec<String>>,
}

fn map_matrix(f: &FieldAutomorphism, m: &Matrix) -> Result<Matrix, FieldError> {
    if f.is_identity() {
        return Ok(m.clone());
    }
    m.map(|x| f.apply(x))
}

impl GroupAutomorphism {
    pub fn from_parts(field: FieldAutomorphism, diag: Matrix, inner: Matrix) -> Result<Self, AutError> {
        if !diag.is_diagonal() {
            return Err(AutError::NotDiagonal);
        }
        if diag.rows() != inner.rows() || !inner.is_square() {
            return Err(AutError::BasisMismatch(format!("{}x{} vs {}x{}", diag.rows(), diag.cols(), inner.rows(), inner.cols())));
        }
        if field.field() != &diag.field() || diag.field() != inner.field() {
            return Err(FieldError::FieldMismatch(field.field().to_string(), diag.field().to_string()).into());
        }
        let label = format!("field:{field}*diag*inner");
        Ok(GroupAutomorphism { diag_inv: diag.inverse()?, inner_inv: inner.inverse()?, field, diag, inner, label })
    }

    pub fn identity(dim: usize, field: &FieldDescriptor) -> Self {
        let id = Matrix::identity(dim, field);
        GroupAutomorphism {
            field: FieldAutomorphism::identity(field),
            diag: id.clone(),
            diag_inv: id.clone(),
            inner: id.clone(),
            inner_inv: id,
            label: "id".into(),
        }
    }

    pub fn inner(g: Matrix) -> Result<Self, AutError> {
        let field = g.field();
        let id = Matrix::identity(g.rows(), &field);
        Ok(Self::from_parts(FieldAutomorphism::identity(&field), id, g)?.labeled("inner"))
    }

    pub fn diagonal(h: Matrix) -> Result<Self, AutError> {
        let field = h.field();
        let id = Matrix::identity(h.rows(), &field);
        Ok(Self::from_parts(FieldAutomorphism::identity(&field), h, id)?.labeled("diag"))
    }

    pub fn field_map(f: FieldAutomorphism, dim: usize) -> Self {
        let id = Matrix::identity(dim, f.field());
        let label = format!("field:{f}");
        GroupAutomorphism { field: f, diag: id.clone(), diag_inv: id.clone(), inner: id.clone(), inner_inv: id, label }
    }

    pub fn labeled(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn field_part(&self) -> &FieldAutomorphism {
        &self.field
    }

    pub fn diagonal_part(&self) -> &Matrix {
        &self.diag
    }

    pub fn inner_part(&self) -> &Matrix {
        &self.inner
    }

    pub fn dim(&self) -> usize {
        self.diag.rows()
    }

    /// Parse `id`, `inner:<word>`, `diag:<values>`, `field:<map>`, joined by `*`
    /// with the leftmost factor applied last.
    pub fn parse<C: AutomorphismContext>(text: &str, ctx: &C) -> Result<Self, AutError> {
        let fail = |why: String| AutError::Parse(text.to_string(), why);
        let mut acc = Self::identity(ctx.dim(), ctx.field());
        for part in text.split('*').map(str::trim) {
            let (kind, arg) = part.split_once(':').unwrap_or((part, ""));
            let factor = match kind.trim() {
                "id" | "identity" if arg.is_empty() => Self::identity(ctx.dim(), ctx.field()),
                "inner" => Self::inner(ctx.word(arg)?)?,
                "diag" => {
                    let values = arg
                        .split(',')
                        .map(|v| Scalar::parse(ctx.field(), v.trim()))
                        .collect::<Result<Vec<_>, _>>()?;
                    Self::diagonal(ctx.diagonal(&values)?)?
                }
                "field" => Self::field_map(FieldAutomorphism::parse(arg.trim(), ctx.field())?, ctx.dim()),
                other => return Err(fail(format!("unknown part `{other}`"))),
            };
            acc = acc.compose(&factor)?;
        }
        Ok(acc.labeled(text.trim()))
    }

    pub fn apply(&self, x: &Matrix) -> Result<Matrix, AutError> {
        if x.rows() != self.dim() || !x.is_square() {
            return Err(AutError::BasisMismatch(format!("{}x{} element for a {}-dimensional automorphism", x.rows(), x.cols(), self.dim())));
        }
        if x.field() != *self.field.field() {
            return Err(FieldError::FieldMismatch(self.field.field().to_string(), x.field().to_string()).into());
        }
        let mut y = x.clone();
        if !self.inner.is_identity() {
            y = &(&self.inner * &y) * &self.inner_inv;
        }
        if !self.diag.is_identity() {
            y = &(&self.diag * &y) * &self.diag_inv;
        }
        Ok(map_matrix(&self.field, &y)?)
    }

    /// Normal form of `self ∘ other`.
    pub fn compose(&self, other: &GroupAutomorphism) -> Result<GroupAutomorphism, AutError> {
        if self.dim() != other.dim() {
            return Err(AutError::BasisMismatch("automorphisms of different dimensions".into()));
        }
        let f2_inv = other.field.inverse();
        let h1 = map_matrix(&f2_inv, &self.diag)?;
        let g1 = map_matrix(&f2_inv, &self.inner)?;
        let diag = &h1 * &other.diag;
        let inner = &(&(&other.diag_inv * &g1) * &other.diag) * &other.inner;
        let field = self.field.compose(&other.field)?;
        let label = match (self.label.as_str(), other.label.as_str()) {
            ("id", l) | (l, "id") => l.to_string(),
            (a, b) => format!("{a}*{b}"),
        };
        Ok(GroupAutomorphism { diag_inv: diag.inverse()?, inner_inv: inner.inverse()?, field, diag, inner, label })
    }

    pub fn inverse(&self) -> Result<GroupAutomorphism, AutError> {
        let field = self.field.inverse();
        let diag = map_matrix(&self.field, &self.diag_inv)?;
        let inner = map_matrix(&self.field, &(&(&self.diag * &self.inner_inv) * &self.diag_inv))?;
        Ok(GroupAutomorphism {
            diag_inv: diag.inverse()?,
            inner_inv: inner.inverse()?,
            field,
            diag,
            inner,
            label: format!("({})^-1", self.label),
        })
    }

    pub fn pow(&self, k: u64) -> Result<GroupAutomorphism, AutError> {
        let mut acc = Self::identity(self.dim(), self.field.field());
        for _ in 0..k {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    /// Whether the map fixes every given element.
    pub fn fixes_all(&self, elements: &[Matrix]) -> Result<bool, AutError> {
        for x in elements {
            if self.apply(x)? != *x {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Smallest `k <= cap` with `phi^k` trivial on every generator.
    pub fn power_order(&self, generators: &[Matrix], cap: u64) -> Result<PowerOrder, AutError> {
        let mut images = generators.to_vec();
        for k in 1..=cap {
            images = images.iter().map(|x| self.apply(x)).collect::<Result<Vec<_>, _>>()?;
            if images == generators {
                return Ok(PowerOrder::Finite(k));
            }
        }
        Ok(PowerOrder::Unknown)
    }

    /// `g^-1 phi(g)` lies in `center` for every `g` in `elements`.
    pub fn is_central(&self, elements: &[Matrix], center: &[Matrix]) -> Result<bool, AutError> {
        for g in elements {
            let c = &g.inverse()? * &self.apply(g)?;
            if !center.contains(&c) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> AutomorphismJson {
        AutomorphismJson {
            label: self.label.clone(),
            field: self.field.to_string(),
            field_order: self.field.order(),
            diagonal: self.diag.diagonal().iter().map(Scalar::to_string).collect(),
            inner: self.inner.to_strings(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootKind;

    fn r(n: i64, d: i64) -> Scalar {
        Scalar::rational(n, d)
    }

    fn qi() -> FieldDescriptor {
        FieldDescriptor::quadratic(-1).unwrap()
    }

    fn s(re: i64, im: i64) -> Scalar {
        Scalar::quadratic(-1, num_rational::BigRational::from_integer(re.into()), num_rational::BigRational::from_integer(im.into()))
    }

    #[test]
    fn field_part_maps_parameters() {
        let g = ChevalleyGroup::build(RootKind::A, 2, qi()).unwrap();
        let conj = GroupAutomorphism::parse("field:conj", &g).unwrap();
        let x = g.x_alpha(0, &s(1, 2)).unwrap();
        assert_eq!(conj.apply(x.matrix()).unwrap(), *g.x_alpha(0, &s(1, -2)).unwrap().matrix());
    }

    #[test]
    fn normal_form_preserves_application() {
        let g = ChevalleyGroup::build(RootKind::A, 2, qi()).unwrap();
        let phi = GroupAutomorphism::parse("field:conj * diag:2,1+s * inner:x a1 1+s; n a2 2", &g).unwrap();
        let psi = GroupAutomorphism::parse("diag:3,s * inner:h a1+a2 2-s * field:conj", &g).unwrap();
        let samples = [g.x_alpha(3, &s(2, 1)).unwrap(), g.n_alpha(1, &s(0, 1)).unwrap(), g.evaluate_word("x a1 s; h a2 3").unwrap()];
        let comp = phi.compose(&psi).unwrap();
        let inv = phi.inverse().unwrap();
        for x in &samples {
            let x = x.matrix();
            assert_eq!(comp.apply(x).unwrap(), phi.apply(&psi.apply(x).unwrap()).unwrap());
            assert_eq!(inv.apply(&phi.apply(x).unwrap()).unwrap(), *x);
        }
        // homomorphism on a pair
        let (a, b) = (samples[0].matrix(), samples[2].matrix());
        assert_eq!(phi.apply(&(a * b)).unwrap(), &phi.apply(a).unwrap() * &phi.apply(b).unwrap());
    }

    #[test]
    fn diagonal_rewriting_past_field_part() {
        let g = ChevalleyGroup::build(RootKind::A, 1, qi()).unwrap();
        // d_h ∘ f has field part f and diagonal part f^-1(h)
        let phi = GroupAutomorphism::parse("diag:1+s * field:conj", &g).unwrap();
        let expected = g.h_chi(&Character::new(vec![s(1, -1)]).unwrap()).unwrap();
        assert_eq!(phi.diagonal_part(), expected.matrix());
        assert!(phi.inner_part().is_identity());
    }

    #[test]
    fn power_orders() {
        let g = ChevalleyGroup::build(RootKind::A, 1, qi()).unwrap();
        let gens: Vec<Matrix> = [g.x_alpha(0, &s(1, 1)).unwrap(), g.x_alpha(1, &s(2, -1)).unwrap()]
            .into_iter()
            .map(|e| e.into_matrix())
            .collect();
        let id = GroupAutomorphism::identity(3, &qi());
        assert_eq!(id.power_order(&gens, 64).unwrap(), PowerOrder::Finite(1));
        let conj = GroupAutomorphism::parse("field:conj", &g).unwrap();
        assert_eq!(conj.power_order(&gens, 64).unwrap(), PowerOrder::Finite(2));
        let q = ChevalleyGroup::build(RootKind::A, 1, FieldDescriptor::Rationals).unwrap();
        let dh = GroupAutomorphism::diagonal(q.h_alpha(0, &r(2, 1)).unwrap().into_matrix()).unwrap();
        let qgens = vec![q.x_alpha(0, &r(1, 1)).unwrap().into_matrix()];
        assert_eq!(dh.power_order(&qgens, 64).unwrap(), PowerOrder::Unknown);
        assert!(dh.compose(&dh.inverse().unwrap()).unwrap().fixes_all(&qgens).unwrap());
    }

    #[test]
    fn parse_errors() {
        let g = ChevalleyGroup::build(RootKind::A, 1, FieldDescriptor::Rationals).unwrap();
        for bad in ["bogus", "diag:0", "inner:y a1 1", "field:conj", "diag:x"] {
            assert!(GroupAutomorphism::parse(bad, &g).is_err(), "{bad}");
        }
    }
}
