//! Exhaustively enumerated finite groups. Elements are indices into the
//! enumeration; automorphisms are index permutations.

use std::collections::{HashMap, VecDeque};

use crate::matrix::Matrix;

pub const DEFAULT_BUDGET: usize = 1_000_000;
/// Multiplication tables are cached up to this order.
pub const TABLE_LIMIT: usize = 2048;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FiniteError {
    #[error("enumeration budget of {0} elements exceeded")]
    BudgetExceeded(usize),
    #[error("automorphism maps an element outside the enumerated group")]
    AutomorphismEscapesGroup,
    #[error("map is not a bijective homomorphism: {0}")]
    NotAutomorphism(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is not stable under the automorphism")]
    NotStable,
    #[error("subgroup is not central")]
    NotCentral,
    #[error("element is not in the group")]
    NotInGroup,
    #[error("map failed: {0}")]
    Map(String),
    #[error("no generators given")]
    NoGenerators,
}

/// Index-level view of a finite group.
pub trait FiniteGroupOps: Sync {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;
    fn generators(&self) -> &[usize];

    /// Elements commuting with every generator.
    fn center(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&z| self.generators().iter().all(|&g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    fn is_subgroup(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.order()];
        set.iter().for_each(|&x| member[x] = true);
        member[self.identity()] && set.iter().all(|&a| set.iter().all(|&b| member[self.mul(a, self.inv(b))]))
    }

    fn is_normal(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.order()];
        set.iter().for_each(|&x| member[x] = true);
        set.iter().all(|&n| self.generators().iter().all(|&g| member[self.mul(self.mul(g, n), self.inv(g))]))
    }
}

fn build_table(n: usize, slow: impl Fn(usize, usize) -> usize + Sync) -> Vec<u32> {
    let mut table = vec![0u32; n * n];
    let threads = std::thread::available_parallelism().map_or(1, |p| p.get()).min(8);
    let chunk = n.div_ceil(threads).max(1);
    std::thread::scope(|scope| {
        for (ci, rows) in table.chunks_mut(chunk * n).enumerate() {
            let slow = &slow;
            scope.spawn(move || {
                for (r, row) in rows.chunks_mut(n).enumerate() {
                    let a = ci * chunk + r;
                    for (b, slot) in row.iter_mut().enumerate() {
                        *slot = slow(a, b) as u32;
                    }
                }
            });
        }
    });
    table
}

/// A finite matrix group enumerated by closure from generators.
#[derive(Debug, Clone)]
pub struct MatrixGroup {
    elements: Vec<Matrix>,
    index: HashMap<Matrix, usize>,
    gens: Vec<usize>,
    inv: Vec<usize>,
    table: Option<Vec<u32>>,
}

impl MatrixGroup {
    /// Breadth-first closure of `generators` under right multiplication.
    pub fn generate(generators: &[Matrix], budget: usize) -> Result<Self, FiniteError> {
        let first = generators.first().ok_or(FiniteError::NoGenerators)?;
        let id = Matrix::identity(first.rows(), &first.field());
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let y = &elements[i] * g;
                if !index.contains_key(&y) {
                    if elements.len() >= budget {
                        return Err(FiniteError::BudgetExceeded(budget));
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let mut gens: Vec<usize> = generators.iter().map(|g| index[g]).collect();
        gens.sort_unstable();
        gens.dedup();
        let mut group = MatrixGroup { elements, index, gens, inv: Vec::new(), table: None };
        let n = group.elements.len();
        if n <= TABLE_LIMIT {
            let table = build_table(n, |a, b| group.index[&(&group.elements[a] * &group.elements[b])]);
            group.table = Some(table);
        }
        group.inv = (0..n)
            .map(|a| match &group.table {
                Some(t) => (0..n).find(|&b| t[a * n + b] == 0).expect("finite group element has an inverse"),
                None => group.index[&group.elements[a].inverse().expect("group elements are invertible")],
            })
            .collect();
        Ok(group)
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Matrix {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Index permutation induced by a map on matrices.
    pub fn automorphism<F, E>(&self, label: &str, f: F) -> Result<IndexAutomorphism, FiniteError>
    where
        F: Fn(&Matrix) -> Result<Matrix, E> + Sync,
        E: std::fmt::Display,
    {
        let n = self.order();
        let threads = std::thread::available_parallelism().map_or(1, |p| p.get()).min(8);
        let chunk = n.div_ceil(threads).max(1);
        let mut images = vec![usize::MAX; n];
        let results: Vec<Result<(), FiniteError>> = std::thread::scope(|scope| {
            let handles: Vec<_> = images
                .chunks_mut(chunk)
                .enumerate()
                .map(|(ci, out)| {
                    let f = &f;
                    scope.spawn(move || {
                        for (k, slot) in out.iter_mut().enumerate() {
                            let y = f(&self.elements[ci * chunk + k]).map_err(|e| FiniteError::Map(e.to_string()))?;
                            *slot = self.index_of(&y).ok_or(FiniteError::AutomorphismEscapesGroup)?;
                        }
                        Ok(())
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        results.into_iter().collect::<Result<(), _>>()?;
        IndexAutomorphism::new(self, images, label)
    }
}

impl FiniteGroupOps for MatrixGroup {
    fn order(&self) -> usize {
        self.elements.len()
    }

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.index[&(&self.elements[a] * &self.elements[b])],
        }
    }

    fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    fn generators(&self) -> &[usize] {
        &self.gens
    }
}

/// An automorphism of an enumerated group as a permutation of indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexAutomorphism {
    images: Vec<usize>,
    label: String,
}

impl IndexAutomorphism {
    /// Checks bijectivity and the homomorphism property on generator products.
    pub fn new<G: FiniteGroupOps + ?Sized>(g: &G, images: Vec<usize>, label: &str) -> Result<Self, FiniteError> {
        let n = g.order();
        if images.len() != n {
            return Err(FiniteError::NotAutomorphism("wrong length".into()));
        }
        let mut hit = vec![false; n];
        for &y in &images {
            if y >= n || std::mem::replace(&mut hit[y], true) {
                return Err(FiniteError::NotAutomorphism("not a bijection".into()));
            }
        }
        for x in 0..n {
            for &s in g.generators() {
                if images[g.mul(x, s)] != g.mul(images[x], images[s]) {
                    return Err(FiniteError::NotAutomorphism("not a homomorphism".into()));
                }
            }
        }
        Ok(IndexAutomorphism { images, label: label.to_string() })
    }

    pub fn identity<G: FiniteGroupOps + ?Sized>(g: &G) -> Self {
        IndexAutomorphism { images: (0..g.order()).collect(), label: "id".into() }
    }

    /// `x -> a x a^-1`.
    pub fn inner<G: FiniteGroupOps + ?Sized>(g: &G, a: usize) -> Self {
        let ai = g.inv(a);
        IndexAutomorphism { images: (0..g.order()).map(|x| g.mul(g.mul(a, x), ai)).collect(), label: format!("inner:{a}") }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &IndexAutomorphism) -> IndexAutomorphism {
        IndexAutomorphism {
            images: other.images.iter().map(|&y| self.images[y]).collect(),
            label: format!("{}*{}", self.label, other.label),
        }
    }

    pub fn inverse(&self) -> IndexAutomorphism {
        let mut images = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        IndexAutomorphism { images, label: format!("({})^-1", self.label) }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn is_inner<G: FiniteGroupOps + ?Sized>(&self, g: &G) -> bool {
        (0..g.order()).any(|a| Self::inner(g, a).images == self.images)
    }
}

/// `G / N` for a normal subgroup `N`, cosets indexed by first appearance.
#[derive(Debug, Clone)]
pub struct QuotientGroup {
    coset_of: Vec<usize>,
    reps: Vec<usize>,
    table: Vec<u32>,
    inv: Vec<usize>,
    gens: Vec<usize>,
}

impl QuotientGroup {
    pub fn new<G: FiniteGroupOps + ?Sized>(g: &G, normal: &[usize]) -> Result<Self, FiniteError> {
        if !g.is_subgroup(normal) || !g.is_normal(normal) {
            return Err(FiniteError::NotNormal);
        }
        let n = g.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for &m in normal {
                coset_of[g.mul(x, m)] = id;
            }
        }
        let k = reps.len();
        let mut table = vec![0u32; k * k];
        for a in 0..k {
            for b in 0..k {
                table[a * k + b] = coset_of[g.mul(reps[a], reps[b])] as u32;
            }
        }
        let inv = (0..k).map(|a| coset_of[g.inv(reps[a])]).collect();
        let mut gens: Vec<usize> = g.generators().iter().map(|&s| coset_of[s]).collect();
        gens.sort_unstable();
        gens.dedup();
        Ok(QuotientGroup { coset_of, reps, table, inv, gens })
    }

    pub fn project(&self, x: usize) -> usize {
        self.coset_of[x]
    }

    pub fn representative(&self, coset: usize) -> usize {
        self.reps[coset]
    }

    /// The automorphism induced on the quotient.
    pub fn induced(&self, phi: &IndexAutomorphism) -> Result<IndexAutomorphism, FiniteError> {
        let mut images = vec![usize::MAX; self.reps.len()];
        for (x, &c) in self.coset_of.iter().enumerate() {
            let y = self.coset_of[phi.apply(x)];
            if images[c] == usize::MAX {
                images[c] = y;
            } else if images[c] != y {
                return Err(FiniteError::NotStable);
            }
        }
        IndexAutomorphism::new(self, images, &format!("{}/N", phi.label()))
    }
}

impl FiniteGroupOps for QuotientGroup {
    fn order(&self) -> usize {
        self.reps.len()
    }

    fn identity(&self) -> usize {
        self.coset_of[0]
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.reps.len() + b] as usize
    }

    fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    fn generators(&self) -> &[usize] {
        &self.gens
    }
}
