//! Graph automorphisms, the twist `sigma = rho_bar ∘ f`, and generators of the
//! fixed-point subgroups `U'` and `V'`.

use crate::chevgroup::{ChevalleyGroup, GroupElement, GroupError};
use crate::finite::{FiniteError, FiniteGroupOps, MatrixGroup};
use crate::liealg::ChevalleyBasis;
use crate::matrix::Matrix;
use crate::rootsys::DiagramSymmetry;
use crate::scalars::{AutOrder, FieldAutomorphism, FieldError, Scalar};

#[derive(Debug, thiserror::Error)]
pub enum TwistError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("no consistent signs for the graph automorphism: bracket of slots {0} and {1}")]
    SignObstruction(usize, usize),
    #[error("no sigma-fixed element for {0}")]
    NoSolution(String),
    #[error("invalid twist: {0}")]
    Invalid(String),
    #[error(transparent)]
    Finite(#[from] FiniteError),
    #[error("enumeration needs a finite field, got {0}")]
    NotFinite(String),
}

/// The fixed-point group `<U', V'>` of a twist over a finite field, fully enumerated.
#[derive(Debug, Clone)]
pub struct TwistedGroupHandle {
    pub group: MatrixGroup,
    pub center: Vec<usize>,
    pub generator_count: usize,
}

/// `e_a -> eps_a e_{rho a}`, `h_i -> h_{rho i}` on basis slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphAutomorphism {
    pub slot_perm: Vec<usize>,
    pub signs: Vec<i64>,
}

impl GraphAutomorphism {
    pub fn build(basis: &ChevalleyBasis, rho: &DiagramSymmetry) -> Result<Self, TwistError> {
        let s = basis.system();
        let nr = s.len();
        let p = s.positive_count();
        let l = s.rank();
        let root_perm = rho.root_permutation(s);
        let mut signs = vec![0i64; nr + l];
        for g in 0..p {
            if g < l {
                signs[g] = 1;
                continue;
            }
            // gamma = a_i + beta with beta positive, already signed
            let (i, beta) = (0..l)
                .find_map(|i| (0..g).find(|&b| s.sum_index(i, b) == Some(g)).map(|b| (i, b)))
                .expect("non-simple positive root has a simple summand");
            let num = basis.n(root_perm[i], root_perm[beta]);
            let den = basis.n(i, beta);
            signs[g] = signs[beta] * num * den;
        }
        for g in 0..p {
            signs[s.neg_index(g)] = signs[g];
        }
        for i in 0..l {
            signs[nr + i] = 1;
        }
        let mut slot_perm = root_perm;
        slot_perm.extend(rho.perm().iter().map(|&j| nr + j));
        let graph = GraphAutomorphism { slot_perm, signs };
        graph.verify(basis)?;
        Ok(graph)
    }

    /// Check `rho[b_i, b_j] = [rho b_i, rho b_j]` on all basis pairs.
    pub fn verify(&self, basis: &ChevalleyBasis) -> Result<(), TwistError> {
        let d = basis.dim();
        for i in 0..d {
            for j in 0..d {
                let mut lhs: Vec<(usize, i64)> = basis
                    .bracket_basis(i, j)
                    .iter()
                    .map(|&(c, k)| (self.slot_perm[c], k * self.signs[c]))
                    .collect();
                let mut rhs: Vec<(usize, i64)> = basis
                    .bracket_basis(self.slot_perm[i], self.slot_perm[j])
                    .iter()
                    .map(|&(c, k)| (c, k * self.signs[i] * self.signs[j]))
                    .collect();
                lhs.sort_unstable();
                rhs.sort_unstable();
                if lhs != rhs {
                    return Err(TwistError::SignObstruction(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn matrix(&self, group: &ChevalleyGroup) -> Matrix {
        let f = group.field();
        let d = self.slot_perm.len();
        let mut m = Matrix::zeros(d, d, f);
        for j in 0..d {
            m.set(self.slot_perm[j], j, Scalar::from_int(f, self.signs[j]));
        }
        m
    }
}

/// A twist `sigma = rho_bar ∘ f` of an adjoint group. With no diagram
/// symmetry and trivial `f` this is the untwisted group.
#[derive(Debug, Clone)]
pub struct Twist {
    group: ChevalleyGroup,
    rho: Option<DiagramSymmetry>,
    graph: GraphAutomorphism,
    rho_bar: Matrix,
    f: FieldAutomorphism,
    /// rho on root indices
    root_perm: Vec<usize>,
}

/// Orbit of the diagram symmetry on positive (or negative) roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootOrbit {
    Fixed(usize),
    Pair(usize, usize),
    /// `(a, rho a, a + rho a)`
    Adjacent(usize, usize, usize),
}

impl Twist {
    pub fn new(group: ChevalleyGroup, rho: Option<DiagramSymmetry>, f: FieldAutomorphism) -> Result<Self, TwistError> {
        if f.field() != group.field() {
            return Err(TwistError::Invalid(format!("field automorphism over {} for a group over {}", f.field(), group.field())));
        }
        if !matches!(f.order(), AutOrder::Finite(1 | 2)) {
            return Err(TwistError::Invalid(format!("field automorphism {f} must have order 1 or 2")));
        }
        if rho.is_none() && !f.is_identity() {
            return Err(TwistError::Invalid("a field-only twist needs a diagram symmetry".into()));
        }
        let s = group.system();
        let graph = match &rho {
            Some(r) => GraphAutomorphism::build(group.basis(), r)?,
            None => {
                let d = group.dim();
                GraphAutomorphism { slot_perm: (0..d).collect(), signs: vec![1; d] }
            }
        };
        let root_perm = graph.slot_perm[..s.len()].to_vec();
        let rho_bar = graph.matrix(&group);
        Ok(Twist { group, rho, graph, rho_bar, f, root_perm })
    }

    pub fn untwisted(group: ChevalleyGroup) -> Self {
        let f = FieldAutomorphism::identity(group.field());
        Self::new(group, None, f).expect("untwisted setup is valid")
    }

    /// The built-in symmetry of the diagram with the given field automorphism.
    pub fn standard(group: ChevalleyGroup, f: FieldAutomorphism) -> Result<Self, TwistError> {
        let rho = group
            .system()
            .standard_symmetry()
            .ok_or_else(|| TwistError::Invalid("diagram has no symmetry".into()))?;
        Self::new(group, Some(rho), f)
    }

    pub fn group(&self) -> &ChevalleyGroup {
        &self.group
    }

    pub fn symmetry(&self) -> Option<&DiagramSymmetry> {
        self.rho.as_ref()
    }

    pub fn graph(&self) -> &GraphAutomorphism {
        &self.graph
    }

    pub fn rho_bar(&self) -> &Matrix {
        &self.rho_bar
    }

    pub fn field_automorphism(&self) -> &FieldAutomorphism {
        &self.f
    }

    pub fn is_untwisted(&self) -> bool {
        self.rho.is_none()
    }

    pub fn root_image(&self, root: usize) -> usize {
        self.root_perm[root]
    }

    pub fn sign(&self, root: usize) -> i64 {
        self.graph.signs[root]
    }

    /// `rho_bar x rho_bar^-1`.
    pub fn graph_apply(&self, x: &Matrix) -> Matrix {
        &(&self.rho_bar * x) * &self.rho_bar
    }

    pub fn field_apply(&self, x: &Matrix) -> Result<Matrix, TwistError> {
        if self.f.is_identity() {
            return Ok(x.clone());
        }
        Ok(x.map(|v| self.f.apply(v))?)
    }

    pub fn sigma_apply(&self, x: &Matrix) -> Result<Matrix, TwistError> {
        Ok(self.graph_apply(&self.field_apply(x)?))
    }

    pub fn is_fixed(&self, x: &Matrix) -> Result<bool, TwistError> {
        Ok(self.sigma_apply(x)? == *x)
    }

    /// Orbits of rho on the positive roots, or on the negative roots.
    pub fn orbits(&self, positive: bool) -> Vec<RootOrbit> {
        let s = self.group.system();
        let p = s.positive_count();
        let range = if positive { 0..p } else { p..2 * p };
        let mut out = Vec::new();
        for a in range {
            let b = self.root_perm[a];
            if b == a {
                out.push(RootOrbit::Fixed(a));
            } else if a < b {
                out.push(match s.sum_index(a, b) {
                    Some(g) => RootOrbit::Adjacent(a, b, g),
                    None => RootOrbit::Pair(a, b),
                });
            }
        }
        out
    }

    /// `eps_a f(t)`, the parameter of `sigma(x_a(t)) = x_{rho a}(eps_a f(t))`.
    pub fn image_parameter(&self, root: usize, t: &Scalar) -> Result<Scalar, TwistError> {
        let ft = self.f.apply(t)?;
        Ok(if self.sign(root) == 1 { ft } else { -ft })
    }

    /// The sigma-fixed element of the orbit through `root` with leading parameter `t`.
    pub fn fixed_unipotent(&self, orbit: RootOrbit, t: &Scalar) -> Result<GroupElement, TwistError> {
        let g = &self.group;
        let s = g.system();
        let u = match orbit {
            RootOrbit::Fixed(a) => {
                if self.image_parameter(a, t)? != *t {
                    return Err(TwistError::NoSolution(format!("x_{}({t}): parameter not fixed", s.root(a))));
                }
                g.x_alpha(a, t)?
            }
            RootOrbit::Pair(a, b) => g.x_alpha(a, t)?.mul(&g.x_alpha(b, &self.image_parameter(a, t)?)?),
            RootOrbit::Adjacent(a, b, gamma) => {
                let u0 = g.x_alpha(a, t)?.mul(&g.x_alpha(b, &self.image_parameter(a, t)?)?);
                let defect = &u0.inverse()?.into_matrix() * &self.sigma_apply(u0.matrix())?;
                let delta = g.extract_root_parameter(&defect, gamma)?;
                let c = self.solve_correction(gamma, &delta)?;
                u0.mul(&g.x_alpha(gamma, &c)?)
            }
        };
        if !self.is_fixed(u.matrix())? {
            return Err(TwistError::NoSolution(format!("orbit {orbit:?} at t = {t}")));
        }
        Ok(u)
    }

    /// Solve `c - eps_gamma f(c) = delta`.
    fn solve_correction(&self, gamma: usize, delta: &Scalar) -> Result<Scalar, TwistError> {
        let field = self.group.field();
        let ok = |c: &Scalar| -> Result<bool, TwistError> { Ok(&(c - &self.image_parameter(gamma, c)?) == delta) };
        if field.characteristic() != 2 {
            let c = delta.try_div(&Scalar::from_int(field, 2))?;
            if ok(&c)? {
                return Ok(c);
            }
        }
        if let Some(elements) = field.elements() {
            for c in elements {
                if ok(&c)? {
                    return Ok(c);
                }
            }
        }
        Err(TwistError::NoSolution(format!("correction term for x_{}", self.group.system().root(gamma))))
    }

    /// Parameters usable for fixed roots: `t + eps f(t)` where nonzero, deduplicated.
    fn fixed_parameters(&self, root: usize, params: &[Scalar]) -> Result<Vec<Scalar>, TwistError> {
        let mut out: Vec<Scalar> = Vec::new();
        for t in params {
            let v = if self.f.is_identity() && self.sign(root) == 1 { t.clone() } else { t + &self.image_parameter(root, t)? };
            if !v.is_zero() && !out.contains(&v) {
                out.push(v);
            }
        }
        Ok(out)
    }

    /// Generators of `U'` (positive) or `V'` (negative) from the given parameters.
    pub fn fixed_generators(&self, positive: bool, params: &[Scalar]) -> Result<Vec<GroupElement>, TwistError> {
        let mut out = Vec::new();
        for orbit in self.orbits(positive) {
            match orbit {
                RootOrbit::Fixed(a) => {
                    for t in self.fixed_parameters(a, params)? {
                        out.push(self.fixed_unipotent(orbit, &t)?);
                    }
                }
                _ => {
                    for t in params.iter().filter(|t| !t.is_zero()) {
                        out.push(self.fixed_unipotent(orbit, t)?);
                    }
                }
            }
        }
        Ok(out)
    }
}

impl Twist {
    /// Enumerate `<U', V'>` using every nonzero field element as a parameter.
    pub fn enumerate_finite(&self, budget: usize) -> Result<TwistedGroupHandle, TwistError> {
        let field = self.group.field();
        let params: Vec<Scalar> = field
            .elements()
            .ok_or_else(|| TwistError::NotFinite(field.to_string()))?
            .into_iter()
            .filter(|t| !t.is_zero())
            .collect();
        let mut gens = self.fixed_generators(true, &params)?;
        gens.extend(self.fixed_generators(false, &params)?);
        let matrices: Vec<Matrix> = gens.into_iter().map(GroupElement::into_matrix).collect();
        let group = MatrixGroup::generate(&matrices, budget)?;
        let center = group.center();
        Ok(TwistedGroupHandle { group, center, generator_count: matrices.len() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootKind;
    use crate::scalars::FieldDescriptor;

    fn qi() -> FieldDescriptor {
        FieldDescriptor::quadratic(-1).unwrap()
    }

    fn conj_twist(kind: RootKind, l: usize) -> Twist {
        let g = ChevalleyGroup::build(kind, l, qi()).unwrap();
        let f = FieldAutomorphism::parse("conj", &qi()).unwrap();
        Twist::standard(g, f).unwrap()
    }

    #[test]
    fn graph_automorphism_is_an_involution() {
        for (k, l) in [(RootKind::A, 2), (RootKind::A, 3), (RootKind::D, 4), (RootKind::E6, 6)] {
            let tw = conj_twist(k, l);
            assert!((tw.rho_bar() * tw.rho_bar()).is_identity(), "{k}{l}");
        }
    }

    #[test]
    fn sigma_on_simple_root_elements() {
        let tw = conj_twist(RootKind::A, 3);
        let g = tw.group();
        let t = Scalar::parse(&qi(), "2+3*s").unwrap();
        for a in 0..3 {
            let lhs = tw.sigma_apply(g.x_alpha(a, &t).unwrap().matrix()).unwrap();
            let rhs = g.x_alpha(tw.root_image(a), &t.involution().unwrap()).unwrap();
            assert_eq!(&lhs, rhs.matrix());
        }
    }

    #[test]
    fn fixed_unipotents_a2_and_a3() {
        let tw = conj_twist(RootKind::A, 2);
        let orbits = tw.orbits(true);
        assert_eq!(orbits, vec![RootOrbit::Adjacent(0, 1, 2), RootOrbit::Fixed(2)]);
        let t = Scalar::parse(&qi(), "1+s").unwrap();
        let u = tw.fixed_unipotent(orbits[0], &t).unwrap();
        assert!(tw.is_fixed(u.matrix()).unwrap());
        let tw3 = conj_twist(RootKind::A, 3);
        assert!(tw3.orbits(true).contains(&RootOrbit::Pair(0, 2)));
        let gens = tw3.fixed_generators(false, &[t.clone(), Scalar::one(&qi())]).unwrap();
        assert!(gens.iter().all(|g| tw3.is_fixed(g.matrix()).unwrap()));
        // a non-fixed parameter on a fixed root has no solution
        assert!(matches!(tw.fixed_unipotent(RootOrbit::Fixed(2), &t), Err(TwistError::NoSolution(_))));
    }

    #[test]
    fn invalid_twists() {
        let g = ChevalleyGroup::build(RootKind::A, 1, qi()).unwrap();
        let f = FieldAutomorphism::parse("conj", &qi()).unwrap();
        assert!(Twist::standard(g.clone(), f.clone()).is_err());
        assert!(Twist::new(g, None, f).is_err());
    }

    #[test]
    fn finite_instances() {
        let f5 = FieldDescriptor::finite(5, 1).unwrap();
        let g = ChevalleyGroup::build(RootKind::A, 1, f5).unwrap();
        let h = Twist::untwisted(g).enumerate_finite(1000).unwrap();
        assert_eq!(h.group.order(), 60);
        assert_eq!(h.center.len(), 1);
        let f4 = FieldDescriptor::finite(2, 2).unwrap();
        let g = ChevalleyGroup::build(RootKind::A, 2, f4.clone()).unwrap();
        let tw = Twist::standard(g, FieldAutomorphism::parse("frob", &f4).unwrap()).unwrap();
        let h = tw.enumerate_finite(10_000).unwrap();
        assert_eq!(h.group.order(), 72);
        assert!(h.group.elements().iter().all(|x| tw.is_fixed(x).unwrap()));
    }
}
