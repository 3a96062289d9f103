//! Twisted conjugacy: Reidemeister classes of enumerated groups, the norm
//! invariant, certified witness families over characteristic zero, traces
//! over `k(T)`, isogredience classes, and the identity class `[e]_phi`.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::chevgroup::{Character, ChevalleyGroup, GroupElement, GroupError};
use crate::finite::{FiniteError, FiniteGroupOps, IndexAutomorphism, QuotientGroup};
use crate::grpauto::{AutError, GroupAutomorphism};
use crate::matrix::Matrix;
use crate::rootsys::RootKind;
use crate::scalars::{nu, AutOrder, FieldDescriptor, FieldError, Polynomial, RationalFunction, Scalar};
use crate::twist::Twist;

#[derive(Debug, thiserror::Error)]
pub enum TwconjError {
    #[error(transparent)]
    Finite(#[from] FiniteError),
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("element is not diagonal")]
    NotDiagonal,
    #[error("entry {0} is not rational")]
    NotRational(String),
    #[error("field part {0} has infinite order")]
    InfiniteOrderFieldPart(String),
    #[error("witness families need characteristic zero, got {0}")]
    FiniteFieldRejected(String),
    #[error("witness {0} is not fixed by the automorphism")]
    WitnessNotFixed(usize),
    #[error("witness {0} is not fixed by the twist")]
    WitnessNotTwistFixed(usize),
    #[error("invariants of witnesses {0} and {1} coincide")]
    CertificateFailure(usize, usize),
    #[error("prime supports of witnesses {0} and {1} overlap")]
    ProfileOverlap(usize, usize),
    #[error("trace is constant: {0}")]
    ConstancyViolation(String),
    #[error("exponent must be at least 1")]
    InvalidExponent,
    #[error("lemma violated: {0}")]
    LemmaViolation(String),
    #[error("twisted conjugacy witness failed verification")]
    WitnessMismatch,
}

/// Partition of a finite group into orbits of an action generated by `moves`.
fn orbit_partition<G, F>(g: &G, moves: F) -> (Vec<usize>, Vec<usize>)
where
    G: FiniteGroupOps + ?Sized,
    F: Fn(usize, &mut Vec<usize>),
{
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    let mut next = Vec::new();
    for start in 0..n {
        if class_of[start] != usize::MAX {
            continue;
        }
        let c = reps.len();
        // start is the smallest index of its class: earlier indices are all assigned
        reps.push(start);
        class_of[start] = c;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            next.clear();
            moves(x, &mut next);
            for &y in &next {
                if class_of[y] == usize::MAX {
                    class_of[y] = c;
                    queue.push_back(y);
                }
            }
        }
    }
    (class_of, reps)
}

/// `phi`-twisted conjugacy classes: orbits of `x -> s x phi(s)^-1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReidemeisterReport {
    pub automorphism: String,
    pub count: usize,
    pub representatives: Vec<usize>,
    #[serde(skip)]
    pub class_of: Vec<usize>,
}

pub fn twisted_classes<G: FiniteGroupOps + ?Sized>(g: &G, phi: &IndexAutomorphism) -> ReidemeisterReport {
    let moves: Vec<(usize, usize)> = g.generators().iter().map(|&s| (s, g.inv(phi.apply(s)))).collect();
    let (class_of, representatives) = orbit_partition(g, |x, out| {
        out.extend(moves.iter().map(|&(s, t)| g.mul(g.mul(s, x), t)));
    });
    ReidemeisterReport { automorphism: phi.label().to_string(), count: representatives.len(), representatives, class_of }
}

pub fn reidemeister_number<G: FiniteGroupOps + ?Sized>(g: &G, phi: &IndexAutomorphism) -> usize {
    twisted_classes(g, phi).count
}

/// Exhaustive search for `z` with `y = z x phi(z)^-1`.
pub fn are_twisted_conjugate<G: FiniteGroupOps + ?Sized>(
    g: &G,
    phi: &IndexAutomorphism,
    x: usize,
    y: usize,
) -> Result<Option<usize>, TwconjError> {
    for z in 0..g.order() {
        if g.mul(g.mul(z, x), g.inv(phi.apply(z))) == y {
            return Ok(Some(z));
        }
    }
    Ok(None)
}

/// Number of ordinary conjugacy classes.
pub fn conjugacy_class_count<G: FiniteGroupOps + ?Sized>(g: &G) -> usize {
    reidemeister_number(g, &IndexAutomorphism::identity(g))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsogredienceReport {
    pub gamma: String,
    pub count: usize,
    pub representatives: Vec<usize>,
}

/// Classes of `{i_a ∘ gamma}` under `b = h a gamma(h)^-1 c` with `c` central.
pub fn isogredience_classes<G: FiniteGroupOps + ?Sized>(
    g: &G,
    gamma: &IndexAutomorphism,
    center: &[usize],
) -> IsogredienceReport {
    let moves: Vec<(usize, usize)> = g.generators().iter().map(|&s| (s, g.inv(gamma.apply(s)))).collect();
    let (_, representatives) = orbit_partition(g, |a, out| {
        out.extend(moves.iter().map(|&(s, t)| g.mul(g.mul(s, a), t)));
        out.extend(center.iter().map(|&c| g.mul(a, c)));
    });
    IsogredienceReport { gamma: gamma.label().to_string(), count: representatives.len(), representatives }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityClassReport {
    pub automorphism: String,
    pub size: usize,
    pub elements: Vec<usize>,
    pub is_subgroup: bool,
    pub is_normal: bool,
    pub is_central: bool,
}

/// `[e]_phi = {g phi(g)^-1}` with its subgroup, normality and centrality verdicts.
/// Fails if `phi` central without `[e]_phi` a subgroup, or a subgroup that is not normal.
pub fn identity_class_analysis<G: FiniteGroupOps + ?Sized>(
    g: &G,
    phi: &IndexAutomorphism,
) -> Result<IdentityClassReport, TwconjError> {
    let n = g.order();
    let set: BTreeSet<usize> = (0..n).map(|x| g.mul(x, g.inv(phi.apply(x)))).collect();
    let elements: Vec<usize> = set.into_iter().collect();
    let center: BTreeSet<usize> = g.center().into_iter().collect();
    let is_central = (0..n).all(|x| center.contains(&g.mul(g.inv(x), phi.apply(x))));
    let is_subgroup = g.is_subgroup(&elements);
    let is_normal = is_subgroup && g.is_normal(&elements);
    if is_central && !is_subgroup {
        return Err(TwconjError::LemmaViolation(format!("{} is central but [e] is not a subgroup", phi.label())));
    }
    if is_subgroup && !is_normal {
        return Err(TwconjError::LemmaViolation(format!("[e] for {} is a subgroup but not normal", phi.label())));
    }
    Ok(IdentityClassReport { automorphism: phi.label().to_string(), size: elements.len(), elements, is_subgroup, is_normal, is_central })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PushforwardReport {
    pub automorphism: String,
    pub quotient_order: usize,
    pub r_upstairs: usize,
    pub r_downstairs: usize,
    pub class_map_onto: bool,
    pub identity_class_subgroup_upstairs: bool,
    pub identity_class_subgroup_downstairs: bool,
}

/// Push `phi` down to `G / Z'` for a central, `phi`-stable `Z'`, and compare class counts.
pub fn quotient_pushforward<G: FiniteGroupOps + ?Sized>(
    g: &G,
    phi: &IndexAutomorphism,
    central: &[usize],
) -> Result<(QuotientGroup, IndexAutomorphism, PushforwardReport), TwconjError> {
    let center: BTreeSet<usize> = g.center().into_iter().collect();
    if !central.iter().all(|z| center.contains(z)) {
        return Err(FiniteError::NotCentral.into());
    }
    let members: BTreeSet<usize> = central.iter().copied().collect();
    if !central.iter().all(|&z| members.contains(&phi.apply(z))) {
        return Err(FiniteError::NotStable.into());
    }
    let q = QuotientGroup::new(g, central)?;
    let phibar = q.induced(phi)?;
    let up = twisted_classes(g, phi);
    let down = twisted_classes(&q, &phibar);
    // [x] -> [x N] must be well defined and onto
    let mut image = vec![usize::MAX; up.count];
    for x in 0..g.order() {
        let d = down.class_of[q.project(x)];
        let u = up.class_of[x];
        if image[u] == usize::MAX {
            image[u] = d;
        } else if image[u] != d {
            return Err(TwconjError::LemmaViolation("class map is not well defined".into()));
        }
    }
    let hit: BTreeSet<usize> = image.iter().copied().collect();
    let class_map_onto = hit.len() == down.count;
    if !class_map_onto || up.count < down.count {
        return Err(TwconjError::LemmaViolation(format!("R = {} upstairs, {} downstairs", up.count, down.count)));
    }
    let up_e = identity_class_analysis(g, phi)?;
    let down_e = identity_class_analysis(&q, &phibar)?;
    if up_e.is_subgroup && !down_e.is_subgroup {
        return Err(TwconjError::LemmaViolation("[e] subgroup upstairs but not in the quotient".into()));
    }
    let report = PushforwardReport {
        automorphism: phi.label().to_string(),
        quotient_order: q.order(),
        r_upstairs: up.count,
        r_downstairs: down.count,
        class_map_onto,
        identity_class_subgroup_upstairs: up_e.is_subgroup,
        identity_class_subgroup_downstairs: down_e.is_subgroup,
    };
    Ok((q, phibar, report))
}

/// The norm invariant of `phi = f ∘ d_h ∘ i_g`, with `n` the order of `f`.
///
/// With `phi' = f ∘ d_h` and `x' = x phi'(g)`, the invariant is the
/// characteristic polynomial of `x' phi'(x') ... phi'^(n-1)(x') H_n` where
/// `H_n = h f(h) ... f^(n-1)(h)`.
#[derive(Debug, Clone)]
pub struct NormInvariant {
    outer: GroupAutomorphism,
    shift: Matrix,
    accumulated: Matrix,
    n: u64,
}

impl NormInvariant {
    pub fn new(phi: &GroupAutomorphism) -> Result<Self, TwconjError> {
        let f = phi.field_part();
        let n = match f.order() {
            AutOrder::Finite(n) => n,
            AutOrder::Infinite => return Err(TwconjError::InfiniteOrderFieldPart(f.to_string())),
        };
        let outer = GroupAutomorphism::from_parts(
            f.clone(),
            phi.diagonal_part().clone(),
            Matrix::identity(phi.dim(), f.field()),
        )?;
        let shift = outer.apply(phi.inner_part())?;
        let mut accumulated = phi.diagonal_part().clone();
        let mut fk = phi.diagonal_part().clone();
        for _ in 1..n {
            fk = fk.map(|v| f.apply(v))?;
            accumulated = &accumulated * &fk;
        }
        Ok(NormInvariant { outer, shift, accumulated, n })
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    /// `x' phi'(x') ... phi'^(n-1)(x') H_n`.
    pub fn norm(&self, x: &Matrix) -> Result<Matrix, TwconjError> {
        let xp = x * &self.shift;
        let mut term = xp.clone();
        let mut acc = xp;
        for _ in 1..self.n {
            term = self.outer.apply(&term)?;
            acc = &acc * &term;
        }
        Ok(&acc * &self.accumulated)
    }

    pub fn eval(&self, x: &Matrix) -> Result<Polynomial, TwconjError> {
        Ok(self.norm(x)?.charpoly())
    }
}

/// Prime supports of the root-slot diagonal entries of a rational diagonal element.
pub fn nu_profile(g: &Matrix, root_count: usize) -> Result<Vec<BTreeSet<u64>>, TwconjError> {
    if !g.is_diagonal() {
        return Err(TwconjError::NotDiagonal);
    }
    g.diagonal()[..root_count]
        .iter()
        .map(|x| {
            let q = x.to_rational().ok_or_else(|| TwconjError::NotRational(x.to_string()))?;
            Ok(nu(&q)?)
        })
        .collect()
}

/// No prime occurs in both profiles.
pub fn profiles_disjoint(a: &[BTreeSet<u64>], b: &[BTreeSet<u64>]) -> bool {
    let ua: BTreeSet<u64> = a.iter().flatten().copied().collect();
    b.iter().flatten().all(|p| !ua.contains(p))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub primes: Vec<u64>,
    pub word: String,
    pub invariant: Vec<String>,
}

/// Toral elements with pairwise distinct norm invariants, a certificate that `R(phi) >= N`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessFamily {
    pub system: String,
    pub field: String,
    pub automorphism: String,
    pub inner_part_absorbed: bool,
    pub twisted: bool,
    pub field_order: u64,
    pub witnesses: Vec<WitnessEntry>,
    #[serde(skip)]
    pub elements: Vec<GroupElement>,
}

fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start.max(2)..).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Build and certify `count` witnesses `g_i = prod_j h_{a_j}(p_ij)` with
/// strictly increasing primes. With a twist, primes are assigned per
/// orbit of the diagram symmetry so every `g_i` is fixed by the twist.
/// A nontrivial inner part is dropped first, which leaves `R(phi)` unchanged.
pub fn witness_family(
    group: &ChevalleyGroup,
    phi: &GroupAutomorphism,
    count: usize,
    twist: Option<&Twist>,
) -> Result<WitnessFamily, TwconjError> {
    let field = group.field();
    if field.characteristic() != 0 {
        return Err(TwconjError::FiniteFieldRejected(field.to_string()));
    }
    let n = match phi.field_part().order() {
        AutOrder::Finite(n) => n,
        AutOrder::Infinite => return Err(TwconjError::InfiniteOrderFieldPart(phi.field_part().to_string())),
    };
    let absorbed = !phi.inner_part().is_identity();
    let outer = GroupAutomorphism::from_parts(
        phi.field_part().clone(),
        phi.diagonal_part().clone(),
        Matrix::identity(phi.dim(), field),
    )?
    .labeled(phi.label());
    let invariant = NormInvariant::new(&outer)?;
    let s = group.system();
    let l = s.rank();
    // slots sharing a prime: singletons, or diagram-symmetry orbits under a twist
    let classes: Vec<Vec<usize>> = match twist.and_then(Twist::symmetry) {
        Some(rho) => (0..l).filter(|&i| rho.perm()[i] >= i).map(|i| vec![i, rho.perm()[i]]).map(|mut v| {
            v.dedup();
            v
        }).collect(),
        None => (0..l).map(|i| vec![i]).collect(),
    };
    let mut primes = primes_from(2);
    let mut witnesses = Vec::with_capacity(count);
    let mut elements = Vec::with_capacity(count);
    let mut profiles: Vec<Vec<BTreeSet<u64>>> = Vec::with_capacity(count);
    let mut invariants: Vec<Polynomial> = Vec::with_capacity(count);
    for i in 0..count {
        let mut p = vec![0u64; l];
        for class in &classes {
            let q = primes.next().expect("infinitely many primes");
            class.iter().for_each(|&j| p[j] = q);
        }
        let mut g = group.identity().into_matrix();
        for (j, &pj) in p.iter().enumerate() {
            g = &g * group.h_alpha(j, &Scalar::from_int(field, pj as i64))?.matrix();
        }
        if outer.apply(&g)? != g {
            return Err(TwconjError::WitnessNotFixed(i));
        }
        if let Some(tw) = twist {
            if !tw.is_fixed(&g).map_err(|e| TwconjError::LemmaViolation(e.to_string()))? {
                return Err(TwconjError::WitnessNotTwistFixed(i));
            }
        }
        let profile = nu_profile(&g, s.len())?;
        for (k, other) in profiles.iter().enumerate() {
            if !profiles_disjoint(other, &profile) {
                return Err(TwconjError::ProfileOverlap(k, i));
            }
        }
        let inv = invariant.eval(&g)?;
        if let Some(k) = invariants.iter().position(|other| *other == inv) {
            return Err(TwconjError::CertificateFailure(k, i));
        }
        let word = p.iter().enumerate().map(|(j, q)| format!("h a{} {q}", j + 1)).collect::<Vec<_>>().join("; ");
        witnesses.push(WitnessEntry {
            primes: p.clone(),
            word: word.clone(),
            invariant: inv.coefficients().iter().map(Scalar::to_string).collect(),
        });
        elements.push(GroupElement::new(g, Some(word)));
        profiles.push(profile);
        invariants.push(inv);
    }
    Ok(WitnessFamily {
        system: format!("{}{}", s.kind(), l),
        field: field.to_string(),
        automorphism: phi.label().to_string(),
        inner_part_absorbed: absorbed,
        twisted: twist.is_some_and(|t| !t.is_untwisted()),
        field_order: n,
        witnesses,
        elements,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceReport {
    pub system: String,
    pub exponent: u32,
    pub character: Vec<String>,
    pub trace: String,
    pub degree: usize,
    pub nonconstant: bool,
}

/// `trace(g(T)^m h(chi))` for `g(T) = h_{a_1}(T) ... h_{a_l}(T)` over `k(T)`.
pub fn trace_in_function_field(
    kind: RootKind,
    rank: usize,
    base: &FieldDescriptor,
    m: u32,
    chi: &[Scalar],
) -> Result<TraceReport, TwconjError> {
    if m == 0 {
        return Err(TwconjError::InvalidExponent);
    }
    let k_t = FieldDescriptor::rational_functions(base.clone(), "T")?;
    let group = ChevalleyGroup::build(kind, rank, k_t.clone())?;
    let t = Scalar::generator(&k_t);
    let mut g = group.identity().into_matrix();
    for j in 0..rank {
        g = &g * group.h_alpha(j, &t)?.matrix();
    }
    let values = chi.iter().map(|v| Scalar::embed(&k_t, v.clone())).collect::<Result<Vec<_>, _>>()?;
    let h = group.h_chi(&Character::new(values)?)?;
    let prod = &g.pow(u64::from(m)) * h.matrix();
    let trace = prod.trace();
    let rf: RationalFunction = match &trace {
        Scalar::Function(f) => f.clone(),
        other => return Err(TwconjError::NotRational(other.to_string())),
    };
    if rf.is_constant() {
        return Err(TwconjError::ConstancyViolation(rf.to_string()));
    }
    Ok(TraceReport {
        system: format!("{kind}{rank}"),
        exponent: m,
        character: chi.iter().map(Scalar::to_string).collect(),
        trace: rf.to_string(),
        degree: rf.degree(),
        nonconstant: true,
    })
}
