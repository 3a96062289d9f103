//! Adjoint Chevalley groups as exact matrices on the Chevalley basis.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::liealg::{ChevalleyBasis, LieError};
use crate::matrix::{Matrix, MatrixError};
use crate::rootsys::{Root, RootError, RootKind, RootSystem};
use crate::scalars::{FieldDescriptor, FieldError, Polynomial, Scalar};

#[derive(Debug, thiserror::Error)]
pub enum GroupError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("parameter must be nonzero")]
    ZeroParameter,
    #[error("character value on simple root {0} is zero")]
    ZeroCharacterValue(usize),
    #[error("relation violated: {0}")]
    RelationViolation(String),
    #[error("bracket not preserved on basis pair ({0}, {1})")]
    NotBracketPreserving(usize, usize),
    #[error("element is not {0}")]
    NotRootElement(String),
    #[error("invalid word: {0}")]
    Word(String),
}

/// An element of the adjoint group. Equality compares matrices only.
#[derive(Clone)]
pub struct GroupElement {
    matrix: Matrix,
    word: Option<String>,
}

impl GroupElement {
    pub fn new(matrix: Matrix, word: Option<String>) -> Self {
        GroupElement { matrix, word }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn word(&self) -> Option<&str> {
        self.word.as_deref()
    }

    pub fn with_word(mut self, word: impl Into<String>) -> Self {
        self.word = Some(word.into());
        self
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        let word = match (&self.word, &other.word) {
            (Some(a), Some(b)) => Some(format!("{a}; {b}")),
            _ => None,
        };
        GroupElement { matrix: &self.matrix * &other.matrix, word }
    }

    pub fn inverse(&self) -> Result<GroupElement, GroupError> {
        Ok(GroupElement {
            matrix: self.matrix.inverse()?,
            word: self.word.as_ref().map(|w| format!("({w})^-1")),
        })
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        Ok(a.inverse()?.mul(&b.inverse()?).mul(a).mul(b))
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn charpoly(&self) -> Polynomial {
        self.matrix.charpoly()
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for GroupElement {}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(w) = &self.word {
            writeln!(f, "word: {w}")?;
        }
        write!(f, "{:?}", self.matrix)
    }
}

/// A character of the root lattice, given by its values on the simple roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    values: Vec<Scalar>,
}

impl Character {
    pub fn new(values: Vec<Scalar>) -> Result<Self, GroupError> {
        if let Some(i) = values.iter().position(Scalar::is_zero) {
            return Err(GroupError::ZeroCharacterValue(i + 1));
        }
        Ok(Character { values })
    }

    pub fn trivial(rank: usize, field: &FieldDescriptor) -> Self {
        Character { values: vec![Scalar::one(field); rank] }
    }

    /// `beta -> t^<beta, alpha>`.
    pub fn coroot(system: &RootSystem, alpha: &Root, t: &Scalar) -> Result<Self, GroupError> {
        if t.is_zero() {
            return Err(GroupError::ZeroParameter);
        }
        let values = (0..system.rank())
            .map(|i| -> Result<Scalar, GroupError> {
                Ok(t.pow(i64::from(system.cartan_integer(system.simple_root(i), alpha)?))?)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Character { values })
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    /// Multiplicative extension to a lattice vector.
    pub fn eval(&self, coords: &[i32]) -> Scalar {
        let mut acc = self.values[0].one_like();
        for (v, &c) in self.values.iter().zip(coords) {
            if c != 0 {
                acc = &acc * &v.pow(i64::from(c)).expect("nonzero character value");
            }
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SubgroupLabel {
    U,
    V,
    H,
    N,
}

#[derive(Debug, Clone)]
pub struct SubgroupGenerators {
    pub label: SubgroupLabel,
    pub generators: Vec<GroupElement>,
}

/// `C_{11}` for the ordered pair `(alpha, beta)`: `[x_beta(s), x_alpha(t)] = x_{alpha+beta}(C (-t) s)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutatorConstant {
    pub alpha: String,
    pub beta: String,
    pub c11: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SteinbergReport {
    pub system: String,
    pub trials: usize,
    pub r1_checks: usize,
    pub r2_checks: usize,
    pub r3_checks: usize,
    pub constants: Vec<CommutatorConstant>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElementJson {
    pub basis: String,
    pub field: String,
    pub matrix: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
}

/// Random rational with small numerator and denominator, never zero.
pub fn random_nonzero_rational<R: Rng>(rng: &mut R, field: &FieldDescriptor) -> Scalar {
    loop {
        let n: i64 = rng.gen_range(-30..=30);
        let d: i64 = rng.gen_range(1..=12);
        if n != 0 {
            return Scalar::embed(field, Scalar::rational(n, d)).expect("rationals embed in characteristic zero");
        }
    }
}

/// The adjoint group of a Chevalley basis over a chosen field.
#[derive(Debug, Clone)]
pub struct ChevalleyGroup {
    basis: Arc<ChevalleyBasis>,
    field: FieldDescriptor,
}

impl ChevalleyGroup {
    pub fn new(basis: Arc<ChevalleyBasis>, field: FieldDescriptor) -> Self {
        ChevalleyGroup { basis, field }
    }

    pub fn build(kind: RootKind, rank: usize, field: FieldDescriptor) -> Result<Self, GroupError> {
        Ok(Self::new(Arc::new(ChevalleyBasis::build(kind, rank)?), field))
    }

    pub fn basis(&self) -> &ChevalleyBasis {
        &self.basis
    }

    pub fn basis_arc(&self) -> Arc<ChevalleyBasis> {
        Arc::clone(&self.basis)
    }

    pub fn system(&self) -> &RootSystem {
        self.basis.system()
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn tag(&self) -> String {
        format!("{}{}/adjoint", self.system().kind(), self.system().rank())
    }

    fn check_field(&self, t: &Scalar) -> Result<(), GroupError> {
        if t.descriptor() != self.field {
            return Err(FieldError::FieldMismatch(self.field.to_string(), t.descriptor().to_string()).into());
        }
        Ok(())
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::new(Matrix::identity(self.dim(), &self.field), Some("id".into()))
    }

    pub fn root_index(&self, root: &Root) -> Result<usize, GroupError> {
        Ok(self.system().index_of(root)?)
    }

    /// Matrix of `exp(t ad e_alpha)` without the word.
    fn x_matrix(&self, root: usize, t: &Scalar) -> Matrix {
        let mut m = Matrix::identity(self.dim(), &self.field);
        if t.is_zero() {
            return m;
        }
        let mut tk = t.clone();
        for (k, power) in self.basis.divided_powers(root).iter().enumerate() {
            if k > 0 {
                tk = &tk * t;
            }
            for (j, col) in power.columns.iter().enumerate() {
                for &(i, v) in col {
                    let term = &tk * &Scalar::from_int(&self.field, v);
                    let cur = m.get(i, j).clone();
                    m.set(i, j, &cur + &term);
                }
            }
        }
        m
    }

    pub fn x_alpha(&self, root: usize, t: &Scalar) -> Result<GroupElement, GroupError> {
        self.check_field(t)?;
        let word = format!("x {} {}", self.system().root(root), t);
        Ok(GroupElement::new(self.x_matrix(root, t), Some(word)))
    }

    pub fn x_root(&self, root: &Root, t: &Scalar) -> Result<GroupElement, GroupError> {
        self.x_alpha(self.root_index(root)?, t)
    }

    /// `x_a(t) x_{-a}(-1/t) x_a(t)`.
    pub fn n_alpha(&self, root: usize, t: &Scalar) -> Result<GroupElement, GroupError> {
        self.check_field(t)?;
        if t.is_zero() {
            return Err(GroupError::ZeroParameter);
        }
        let neg = self.system().neg_index(root);
        let xt = self.x_matrix(root, t);
        let m = &(&xt * &self.x_matrix(neg, &-t.try_inv()?)) * &xt;
        Ok(GroupElement::new(m, Some(format!("n {} {}", self.system().root(root), t))))
    }

    /// `n_a(t) n_a(-1)`.
    pub fn h_alpha(&self, root: usize, t: &Scalar) -> Result<GroupElement, GroupError> {
        let minus_one = -Scalar::one(&self.field);
        let m = self.n_alpha(root, t)?.mul(&self.n_alpha(root, &minus_one)?).into_matrix();
        Ok(GroupElement::new(m, Some(format!("h {} {}", self.system().root(root), t))))
    }

    /// Diagonal `h(chi)`: `chi(beta)` on `e_beta`, 1 on the Cartan slots.
    pub fn h_chi(&self, chi: &Character) -> Result<GroupElement, GroupError> {
        let s = self.system();
        if chi.values().len() != s.rank() {
            return Err(GroupError::Word(format!("character needs {} values", s.rank())));
        }
        for v in chi.values() {
            self.check_field(v)?;
        }
        let mut diag: Vec<Scalar> = s.roots().iter().map(|r| chi.eval(r.coords())).collect();
        diag.extend(std::iter::repeat_n(Scalar::one(&self.field), s.rank()));
        let word = format!("chi {}", chi.values().iter().map(Scalar::to_string).collect::<Vec<_>>().join(","));
        Ok(GroupElement::new(Matrix::from_diagonal(diag), Some(word)))
    }

    /// Columns of `g` as sparse vectors.
    fn sparse_columns(g: &Matrix) -> Vec<Vec<(usize, Scalar)>> {
        (0..g.cols())
            .map(|j| (0..g.rows()).filter(|&i| !g.get(i, j).is_zero()).map(|i| (i, g.get(i, j).clone())).collect())
            .collect()
    }

    /// Check `g[b_i, b_j] = [g b_i, g b_j]` on the given basis pairs.
    pub fn check_bracket_pairs<I>(&self, g: &Matrix, pairs: I) -> Result<usize, GroupError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let cols = Self::sparse_columns(g);
        let dim = self.dim();
        let zero = Scalar::zero(&self.field);
        let mut checked = 0;
        for (i, j) in pairs {
            let mut lhs = vec![zero.clone(); dim];
            for &(c, k) in self.basis.bracket_basis(i, j) {
                let k = Scalar::from_int(&self.field, k);
                for (r, v) in &cols[c] {
                    lhs[*r] = &lhs[*r] + &(&k * v);
                }
            }
            let mut rhs = vec![zero.clone(); dim];
            for (a, xa) in &cols[i] {
                for (b, yb) in &cols[j] {
                    let entries = self.basis.bracket_basis(*a, *b);
                    if entries.is_empty() {
                        continue;
                    }
                    let p = xa * yb;
                    for &(c, k) in entries {
                        rhs[c] = &rhs[c] + &(&p * &Scalar::from_int(&self.field, k));
                    }
                }
            }
            if lhs != rhs {
                return Err(GroupError::NotBracketPreserving(i, j));
            }
            checked += 1;
        }
        Ok(checked)
    }

    pub fn check_bracket_preserving(&self, g: &Matrix) -> Result<usize, GroupError> {
        let d = self.dim();
        self.check_bracket_pairs(g, (0..d).flat_map(|i| (0..d).map(move |j| (i, j))))
    }

    /// If `g = x_root(c)`, return `c`.
    pub fn extract_root_parameter(&self, g: &Matrix, root: usize) -> Result<Scalar, GroupError> {
        let s = self.system();
        // Column h_k of x_root(c) has entry -c (a_k, root) in row e_root.
        let k = (0..s.rank())
            .find(|&k| s.inner(s.simple_root(k).coords(), s.root(root).coords()) != 0)
            .expect("a root pairs nontrivially with some simple root");
        let ip = s.inner(s.simple_root(k).coords(), s.root(root).coords());
        let c = g.get(root, self.basis.h_slot(k)).try_div(&Scalar::from_int(&self.field, -i64::from(ip)))?;
        if self.x_matrix(root, &c) != *g {
            return Err(GroupError::NotRootElement(format!("x_{}(*)", s.root(root))));
        }
        Ok(c)
    }

    /// `C_11` for `(alpha, beta)` with `alpha + beta` a root, read off at `t = s = 1`
    /// and confirmed at `t = 1, s = 2`.
    pub fn commutator_constant(&self, alpha: usize, beta: usize) -> Result<i64, GroupError> {
        let s = self.system();
        let gamma = s
            .sum_index(alpha, beta)
            .ok_or_else(|| GroupError::RelationViolation(format!("{} + {} is not a root", s.root(alpha), s.root(beta))))?;
        let one = Scalar::one(&self.field);
        let two = Scalar::from_int(&self.field, 2);
        let comm = GroupElement::commutator(&self.x_alpha(beta, &one)?, &self.x_alpha(alpha, &one)?)?;
        let c = -self.extract_root_parameter(comm.matrix(), gamma)?;
        let c = c.to_rational().filter(|q| q.is_integer()).ok_or_else(|| {
            GroupError::RelationViolation(format!("non-integral commutator constant {c}"))
        })?;
        let c: i64 = c.to_integer().try_into().map_err(|_| GroupError::RelationViolation("constant too large".into()))?;
        let check = GroupElement::commutator(&self.x_alpha(beta, &two)?, &self.x_alpha(alpha, &one)?)?;
        if *check.matrix() != self.x_matrix(gamma, &Scalar::from_int(&self.field, -2 * c)) {
            return Err(GroupError::RelationViolation(format!(
                "commutator of x_{}(2), x_{}(1)",
                s.root(beta),
                s.root(alpha)
            )));
        }
        Ok(c)
    }

    /// Random checks of R1 `x(t)x(s) = x(t+s)`, R2 (commutators) and R3
    /// `h(t)h(s) = h(ts)`. Each trial samples its roots; constants are
    /// extracted for the sampled pairs and for every pair in `constant_pairs`.
    pub fn check_steinberg_relations<R: Rng>(
        &self,
        trials: usize,
        constant_pairs: &[(usize, usize)],
        rng: &mut R,
    ) -> Result<SteinbergReport, GroupError> {
        let s = self.system();
        let nr = s.len();
        let mut constants: std::collections::BTreeMap<(usize, usize), i64> = Default::default();
        for &(a, b) in constant_pairs {
            if s.sum_index(a, b).is_some() {
                constants.insert((a, b), self.commutator_constant(a, b)?);
            }
        }
        let mut report = SteinbergReport {
            system: format!("{}{}", s.kind(), s.rank()),
            trials,
            r1_checks: 0,
            r2_checks: 0,
            r3_checks: 0,
            constants: vec![],
        };
        for _ in 0..trials {
            let t = random_nonzero_rational(rng, &self.field);
            let u = random_nonzero_rational(rng, &self.field);
            let alpha = rng.gen_range(0..nr);
            let beta = loop {
                let b = rng.gen_range(0..nr);
                if b != alpha && b != s.neg_index(alpha) {
                    break b;
                }
            };
            let xa_t = self.x_alpha(alpha, &t)?;
            if xa_t.mul(&self.x_alpha(alpha, &u)?) != self.x_alpha(alpha, &(&t + &u))? {
                return Err(GroupError::RelationViolation(format!("R1 at {} with t={t}, s={u}", s.root(alpha))));
            }
            report.r1_checks += 1;

            let comm = GroupElement::commutator(&self.x_alpha(beta, &u)?, &xa_t)?;
            let expected = match s.sum_index(alpha, beta) {
                Some(gamma) => {
                    let c = match constants.get(&(alpha, beta)) {
                        Some(&c) => c,
                        None => {
                            let c = self.commutator_constant(alpha, beta)?;
                            constants.insert((alpha, beta), c);
                            c
                        }
                    };
                    let param = &(&Scalar::from_int(&self.field, c) * &-t.clone()) * &u;
                    self.x_matrix(gamma, &param)
                }
                None => Matrix::identity(self.dim(), &self.field),
            };
            if *comm.matrix() != expected {
                return Err(GroupError::RelationViolation(format!(
                    "R2 at ({}, {}) with t={t}, s={u}",
                    s.root(alpha),
                    s.root(beta)
                )));
            }
            report.r2_checks += 1;

            let lhs = self.h_alpha(alpha, &t)?.mul(&self.h_alpha(alpha, &u)?);
            if lhs != self.h_alpha(alpha, &(&t * &u))? {
                return Err(GroupError::RelationViolation(format!("R3 at {} with t={t}, s={u}", s.root(alpha))));
            }
            report.r3_checks += 1;
        }
        report.constants = constants
            .into_iter()
            .map(|((a, b), c11)| CommutatorConstant { alpha: s.root(a).to_string(), beta: s.root(b).to_string(), c11 })
            .collect();
        Ok(report)
    }

    /// `n_a(1) h_b(t) n_a(1)^-1 = h_{w_a(b)}(t)`.
    pub fn weyl_conjugation_check(&self, alpha: usize, beta: usize, t: &Scalar) -> Result<bool, GroupError> {
        let n = self.n_alpha(alpha, &Scalar::one(&self.field))?;
        let lhs = n.mul(&self.h_alpha(beta, t)?).mul(&n.inverse()?);
        let w = self.system().reflect_index(alpha, beta);
        Ok(lhs == self.h_alpha(w, t)?)
    }

    /// Generators of U, V, H or N with the given parameters.
    pub fn subgroup_generators(&self, label: SubgroupLabel, params: &[Scalar]) -> Result<SubgroupGenerators, GroupError> {
        let s = self.system();
        let p = s.positive_count();
        let mut generators = Vec::new();
        match label {
            SubgroupLabel::U | SubgroupLabel::V => {
                let roots = if label == SubgroupLabel::U { 0..p } else { p..2 * p };
                for r in roots {
                    for t in params {
                        generators.push(self.x_alpha(r, t)?);
                    }
                }
            }
            SubgroupLabel::H | SubgroupLabel::N => {
                for i in 0..s.rank() {
                    for t in params {
                        generators.push(self.h_alpha(i, t)?);
                    }
                }
                if label == SubgroupLabel::N {
                    for i in 0..s.rank() {
                        generators.push(self.n_alpha(i, &Scalar::one(&self.field))?);
                    }
                }
            }
        }
        Ok(SubgroupGenerators { label, generators })
    }

    /// Evaluate a word such as `x a1 1/2; n a2 3; h a1+a2 2; chi 2,3`.
    pub fn evaluate_word(&self, text: &str) -> Result<GroupElement, GroupError> {
        let mut acc = Matrix::identity(self.dim(), &self.field);
        for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let mut it = part.split_whitespace();
            let head = it.next().unwrap_or_default();
            let rest: Vec<&str> = it.collect();
            let g = match head {
                "x" | "n" | "h" => {
                    let [root, t] = rest[..] else {
                        return Err(GroupError::Word(format!("`{part}` needs a root and a parameter")));
                    };
                    let root = self.root_index(&Root::parse(self.system().rank(), root)?)?;
                    let t = Scalar::parse(&self.field, t)?;
                    match head {
                        "x" => self.x_alpha(root, &t)?,
                        "n" => self.n_alpha(root, &t)?,
                        _ => self.h_alpha(root, &t)?,
                    }
                }
                "chi" => {
                    let values = rest
                        .concat()
                        .split(',')
                        .map(|v| Scalar::parse(&self.field, v.trim()))
                        .collect::<Result<Vec<_>, _>>()?;
                    self.h_chi(&Character::new(values)?)?
                }
                other => return Err(GroupError::Word(format!("unknown generator `{other}`"))),
            };
            acc = &acc * g.matrix();
        }
        Ok(GroupElement::new(acc, Some(text.trim().to_string())))
    }

    pub fn element_json(&self, g: &GroupElement) -> ElementJson {
        ElementJson {
            basis: self.tag(),
            field: self.field.to_string(),
            matrix: g.matrix().to_strings(),
            word: g.word().map(str::to_string),
        }
    }
}

/// The 2x2 defining representation of `SL_2`, used as the fundamental picture of A1.
pub mod sl2 {
    use super::*;

    fn m(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Matrix {
        Matrix::from_rows(vec![vec![a, b], vec![c, d]]).expect("2x2 over one field")
    }

    pub fn x(t: &Scalar) -> Matrix {
        m(t.one_like(), t.clone(), t.zero_like(), t.one_like())
    }

    pub fn x_neg(t: &Scalar) -> Matrix {
        m(t.one_like(), t.zero_like(), t.clone(), t.one_like())
    }

    /// `x(t) x_-(-1/t) x(t)`.
    pub fn n(t: &Scalar) -> Result<Matrix, GroupError> {
        if t.is_zero() {
            return Err(GroupError::ZeroParameter);
        }
        Ok(&(&x(t) * &x_neg(&-t.try_inv()?)) * &x(t))
    }

    /// `n(t) n(-1)`.
    pub fn h(t: &Scalar) -> Result<Matrix, GroupError> {
        Ok(&n(t)? * &n(&-t.one_like())?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q() -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    fn group(kind: RootKind, l: usize) -> ChevalleyGroup {
        ChevalleyGroup::build(kind, l, q()).unwrap()
    }

    fn r(n: i64, d: i64) -> Scalar {
        Scalar::rational(n, d)
    }

    #[test]
    fn a1_adjoint_closed_forms() {
        let g = group(RootKind::A, 1);
        let t = r(3, 2);
        // x_a(t) on (e_a, e_-a, h): [[1, -t^2, -2t], [0, 1, 0], [0, t, 1]]
        let expected = Matrix::from_rows(vec![
            vec![r(1, 1), r(-9, 4), r(-3, 1)],
            vec![r(0, 1), r(1, 1), r(0, 1)],
            vec![r(0, 1), r(3, 2), r(1, 1)],
        ])
        .unwrap();
        assert_eq!(g.x_alpha(0, &t).unwrap().matrix(), &expected);
        assert!(g.x_alpha(0, &r(0, 1)).unwrap().is_identity());
        let h = g.h_alpha(0, &r(2, 1)).unwrap();
        assert_eq!(h.matrix(), &Matrix::from_diagonal(vec![r(4, 1), r(1, 4), r(1, 1)]));
        let h6 = g.h_alpha(0, &r(2, 1)).unwrap().mul(&g.h_alpha(0, &r(3, 1)).unwrap());
        assert_eq!(h6.matrix(), &Matrix::from_diagonal(vec![r(36, 1), r(1, 36), r(1, 1)]));
        assert!(g.h_alpha(0, &r(1, 1)).unwrap().is_identity());
        assert!(matches!(g.n_alpha(0, &r(0, 1)), Err(GroupError::ZeroParameter)));
    }

    #[test]
    fn charpoly_of_toral_element() {
        let g = group(RootKind::A, 1);
        let f = g.h_alpha(0, &r(2, 1)).unwrap().charpoly();
        let expected = [r(4, 1), r(1, 4), r(1, 1)]
            .iter()
            .fold(Polynomial::constant(r(1, 1)), |acc, c| acc.mul(&Polynomial::linear_root(c, &q())));
        assert_eq!(f, expected);
    }

    #[test]
    fn h_alpha_matches_character() {
        for (k, l) in [(RootKind::A, 2), (RootKind::D, 4)] {
            let g = group(k, l);
            let s = g.system();
            for a in 0..s.len() {
                let t = r(5, 3);
                let chi = Character::coroot(s, s.root(a), &t).unwrap();
                assert_eq!(g.h_alpha(a, &t).unwrap(), g.h_chi(&chi).unwrap());
            }
        }
    }

    #[test]
    fn h_chi_multiplicative_extension() {
        let g = group(RootKind::A, 2);
        let chi = Character::new(vec![r(2, 1), r(1, 1)]).unwrap();
        let d = g.h_chi(&chi).unwrap().matrix().diagonal();
        // roots: a1, a2, a1+a2, then negatives
        assert_eq!(d[..6], [r(2, 1), r(1, 1), r(2, 1), r(1, 2), r(1, 1), r(1, 2)]);
        assert!(g.h_chi(&Character::trivial(2, &q())).unwrap().is_identity());
        assert!(matches!(Character::new(vec![r(0, 1), r(1, 1)]), Err(GroupError::ZeroCharacterValue(1))));
    }

    #[test]
    fn commutators_in_a2() {
        let g = group(RootKind::A, 2);
        let c = g.commutator_constant(0, 1).unwrap();
        assert!(c == 1 || c == -1);
        assert_eq!(g.commutator_constant(1, 0).unwrap(), -c);
        // a1 and -a2 do not sum to a root: commutator is trivial
        let comm =
            GroupElement::commutator(&g.x_alpha(4, &r(2, 1)).unwrap(), &g.x_alpha(0, &r(3, 1)).unwrap()).unwrap();
        assert!(comm.is_identity());
    }

    #[test]
    fn steinberg_small() {
        let g = group(RootKind::A, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rep = g.check_steinberg_relations(20, &[], &mut rng).unwrap();
        assert_eq!(rep.r1_checks, 20);
        assert!(rep.constants.iter().all(|c| c.c11.abs() == 1));
    }

    #[test]
    fn weyl_conjugation() {
        let g = group(RootKind::A, 2);
        for a in 0..6 {
            for b in 0..6 {
                assert!(g.weyl_conjugation_check(a, b, &r(3, 1)).unwrap());
            }
        }
        let d4 = group(RootKind::D, 4);
        // a1 and a3 are orthogonal in D4
        assert!(d4.weyl_conjugation_check(0, 2, &r(2, 1)).unwrap());
    }

    #[test]
    fn generators_preserve_brackets() {
        let g = group(RootKind::A, 2);
        for a in 0..6 {
            g.check_bracket_preserving(g.x_alpha(a, &r(-7, 3)).unwrap().matrix()).unwrap();
            g.check_bracket_preserving(g.n_alpha(a, &r(2, 5)).unwrap().matrix()).unwrap();
        }
        let mut bad = Matrix::identity(8, &q());
        bad.set(0, 0, r(2, 1));
        assert!(matches!(g.check_bracket_preserving(&bad), Err(GroupError::NotBracketPreserving(..))));
    }

    #[test]
    fn words() {
        let g = group(RootKind::A, 2);
        let w = g.evaluate_word("x a1 1/2; h a1+a2 3").unwrap();
        let expected = g.x_alpha(0, &r(1, 2)).unwrap().mul(&g.h_alpha(2, &r(3, 1)).unwrap());
        assert_eq!(w, expected);
        assert!(g.evaluate_word("x a1 0").unwrap().is_identity());
        for bad in ["y a1 1", "x a3 1", "x a1", "n a1 0", "chi 1"] {
            assert!(g.evaluate_word(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn sl2_picture() {
        let t = r(2, 1);
        assert_eq!(sl2::n(&t).unwrap(), Matrix::from_rows(vec![vec![r(0, 1), t.clone()], vec![r(-1, 2), r(0, 1)]]).unwrap());
        assert_eq!(sl2::h(&t).unwrap(), Matrix::from_diagonal(vec![t, r(1, 2)]));
    }
}
