//! Simply-laced root systems of types A, D and E6 in simple-root coordinates.
//!
//! Roots are ordered with positives first, sorted by height and then by
//! coordinates in descending lexicographic order (so the simple roots come
//! first, in index order), followed by the negatives in the same order.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("unsupported root system {kind}{rank}")]
    UnsupportedType { kind: String, rank: usize },
    #[error("{0} is not a root of this system")]
    ForeignRoot(String),
    #[error("invalid root: {0}")]
    InvalidRoot(String),
    #[error("invalid diagram symmetry: {0}")]
    InvalidSymmetry(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootKind {
    A,
    D,
    E6,
}

impl fmt::Display for RootKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootKind::A => "A",
            RootKind::D => "D",
            RootKind::E6 => "E",
        })
    }
}

impl FromStr for RootKind {
    type Err = RootError;
    fn from_str(s: &str) -> Result<Self, RootError> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(RootKind::A),
            "D" => Ok(RootKind::D),
            "E" | "E6" => Ok(RootKind::E6),
            other => Err(RootError::UnsupportedType { kind: other.to_string(), rank: 0 }),
        }
    }
}

/// A root as its coefficient vector in the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root {
    coords: Vec<i32>,
}

impl Root {
    pub fn new(coords: Vec<i32>) -> Result<Self, RootError> {
        let pos = coords.iter().any(|&c| c > 0);
        let neg = coords.iter().any(|&c| c < 0);
        if pos == neg {
            return Err(RootError::InvalidRoot(format!("{coords:?}")));
        }
        Ok(Root { coords })
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut coords = vec![0; rank];
        coords[i] = 1;
        Root { coords }
    }

    pub fn coords(&self) -> &[i32] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn height(&self) -> i32 {
        self.coords.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().any(|&c| c > 0)
    }

    pub fn neg(&self) -> Root {
        Root { coords: self.coords.iter().map(|c| -c).collect() }
    }

    /// Parse `a1+a2`, `-a1-2a3`, `a2`.
    pub fn parse(rank: usize, text: &str) -> Result<Root, RootError> {
        let bad = || RootError::InvalidRoot(text.to_string());
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad());
        }
        let mut coords = vec![0i32; rank];
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let sign = match rest.as_bytes()[0] {
                b'-' => {
                    rest = &rest[1..];
                    -1
                }
                b'+' => {
                    rest = &rest[1..];
                    1
                }
                _ if rest.len() == s.len() => 1,
                _ => return Err(bad()),
            };
            if rest.is_empty() {
                return Err(bad());
            }
            let end = rest[1..].find(['+', '-']).map_or(rest.len(), |p| p + 1);
            let term = &rest[..end];
            rest = &rest[end..];
            let (k, idx) = term.split_once('a').ok_or_else(bad)?;
            let k: i32 = match k.trim_end_matches('*') {
                "" => 1,
                k => k.parse().map_err(|_| bad())?,
            };
            let idx: usize = idx.parse().map_err(|_| bad())?;
            if idx == 0 || idx > rank {
                return Err(bad());
            }
            coords[idx - 1] += sign * k;
        }
        Root::new(coords).map_err(|_| bad())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "a{}", i + 1)?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    kind: RootKind,
    rank: usize,
    cartan: Vec<Vec<i32>>,
    roots: Vec<Root>,
    index: HashMap<Root, usize>,
    /// `sum[i * n + j]` is the index of `roots[i] + roots[j]` when it is a root.
    sum: Vec<Option<usize>>,
}

fn cartan_matrix(kind: RootKind, l: usize) -> Vec<Vec<i32>> {
    let mut c = vec![vec![0; l]; l];
    let mut edge = |i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match kind {
        RootKind::A => (0..l - 1).for_each(|i| edge(i, i + 1)),
        RootKind::D => {
            (0..l - 2).for_each(|i| edge(i, i + 1));
            edge(l - 3, l - 1);
        }
        // Bourbaki labelling: 1-3-4-5-6 with 2 attached to 4.
        RootKind::E6 => [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)].into_iter().for_each(|(i, j)| edge(i, j)),
    }
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    c
}

impl RootSystem {
    pub fn build(kind: RootKind, rank: usize) -> Result<Self, RootError> {
        let ok = match kind {
            RootKind::A => rank >= 1,
            RootKind::D => rank >= 4,
            RootKind::E6 => rank == 6,
        };
        if !ok {
            return Err(RootError::UnsupportedType { kind: kind.to_string(), rank });
        }
        let cartan = cartan_matrix(kind, rank);
        // Grow positive roots along simple root strings: in a simply-laced
        // system, beta + a_i is a root exactly when (beta, a_i) = -1.
        let mut positive: Vec<Root> = (0..rank).map(|i| Root::simple(rank, i)).collect();
        let mut seen: std::collections::HashSet<Root> = positive.iter().cloned().collect();
        let mut frontier = positive.clone();
        while let Some(beta) = frontier.pop() {
            for i in 0..rank {
                let ip: i32 = (0..rank).map(|j| beta.coords[j] * cartan[j][i]).sum();
                if ip == -1 {
                    let mut c = beta.coords.clone();
                    c[i] += 1;
                    let r = Root { coords: c };
                    if seen.insert(r.clone()) {
                        positive.push(r.clone());
                        frontier.push(r);
                    }
                }
            }
        }
        positive.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.coords.cmp(&a.coords)));
        let mut roots = positive.clone();
        roots.extend(positive.iter().map(Root::neg));
        let index: HashMap<Root, usize> = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let n = roots.len();
        let mut sum = vec![None; n * n];
        for i in 0..n {
            for j in 0..n {
                let c: Vec<i32> = roots[i].coords.iter().zip(&roots[j].coords).map(|(a, b)| a + b).collect();
                sum[i * n + j] = index.get(&Root { coords: c }).copied();
            }
        }
        Ok(RootSystem { kind, rank, cartan, roots, index, sum })
    }

    pub fn kind(&self) -> RootKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn positive_count(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.positive_count()]
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn simple_root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn index_of(&self, r: &Root) -> Result<usize, RootError> {
        self.index.get(r).copied().ok_or_else(|| RootError::ForeignRoot(r.to_string()))
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.index.contains_key(r)
    }

    pub fn neg_index(&self, i: usize) -> usize {
        let p = self.positive_count();
        if i < p {
            i + p
        } else {
            i - p
        }
    }

    pub fn sum_index(&self, i: usize, j: usize) -> Option<usize> {
        self.sum[i * self.roots.len() + j]
    }

    /// Cartan-matrix inner product of two coordinate vectors.
    pub fn inner(&self, a: &[i32], b: &[i32]) -> i32 {
        let mut s = 0;
        for (ai, row) in a.iter().zip(&self.cartan).take(self.rank) {
            if *ai == 0 {
                continue;
            }
            s += ai * row.iter().zip(b).take(self.rank).map(|(c, bj)| c * bj).sum::<i32>();
        }
        s
    }

    pub fn inner_index(&self, i: usize, j: usize) -> i32 {
        self.inner(&self.roots[i].coords, &self.roots[j].coords)
    }

    /// `<beta, alpha> = 2(beta, alpha)/(alpha, alpha)`.
    pub fn cartan_integer(&self, beta: &Root, alpha: &Root) -> Result<i32, RootError> {
        self.index_of(beta)?;
        self.index_of(alpha)?;
        let num = 2 * self.inner(&beta.coords, &alpha.coords);
        let den = self.inner(&alpha.coords, &alpha.coords);
        Ok(num / den)
    }

    /// `w_alpha(beta) = beta - <beta, alpha> alpha`.
    pub fn reflect(&self, alpha: &Root, beta: &Root) -> Result<Root, RootError> {
        let k = self.cartan_integer(beta, alpha)?;
        let coords = beta.coords.iter().zip(&alpha.coords).map(|(b, a)| b - k * a).collect();
        Ok(Root { coords })
    }

    pub fn reflect_index(&self, alpha: usize, beta: usize) -> usize {
        let r = self.reflect(&self.roots[alpha], &self.roots[beta]).expect("roots of this system");
        self.index[&r]
    }

    /// The built-in order-2 diagram symmetry, if the diagram has one.
    pub fn standard_symmetry(&self) -> Option<DiagramSymmetry> {
        let l = self.rank;
        let perm: Vec<usize> = match self.kind {
            RootKind::A if l >= 2 => (0..l).rev().collect(),
            RootKind::D => (0..l).map(|i| if i == l - 2 { l - 1 } else if i == l - 1 { l - 2 } else { i }).collect(),
            RootKind::E6 => vec![5, 1, 4, 3, 2, 0],
            _ => return None,
        };
        Some(DiagramSymmetry::new(self, perm).expect("built-in symmetry is valid"))
    }

    pub fn dump(&self) -> RootSystemDump {
        RootSystemDump {
            kind: self.kind,
            rank: self.rank,
            roots: self.roots.iter().map(|r| r.coords.clone()).collect(),
            labels: self.roots.iter().map(Root::to_string).collect(),
            positive_count: self.positive_count(),
            cartan: self.cartan.clone(),
        }
    }
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.rank == other.rank
    }
}

impl Eq for RootSystem {}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemDump {
    pub kind: RootKind,
    pub rank: usize,
    pub roots: Vec<Vec<i32>>,
    pub labels: Vec<String>,
    pub positive_count: usize,
    pub cartan: Vec<Vec<i32>>,
}

/// An involutive permutation of the simple roots preserving the diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiagramSymmetry {
    perm: Vec<usize>,
}

impl DiagramSymmetry {
    /// `perm` is 0-based: simple root `i` goes to `perm[i]`.
    pub fn new(system: &RootSystem, perm: Vec<usize>) -> Result<Self, RootError> {
        let l = system.rank();
        if perm.len() != l {
            return Err(RootError::InvalidSymmetry(format!("expected {l} entries")));
        }
        let mut hit = vec![false; l];
        for &p in &perm {
            if p >= l || std::mem::replace(&mut hit[p], true) {
                return Err(RootError::InvalidSymmetry(format!("{perm:?} is not a permutation")));
            }
        }
        if (0..l).any(|i| perm[perm[i]] != i) {
            return Err(RootError::InvalidSymmetry("not an involution".into()));
        }
        if perm.iter().enumerate().all(|(i, &p)| i == p) {
            return Err(RootError::InvalidSymmetry("identity permutation".into()));
        }
        let c = system.cartan();
        if (0..l).any(|i| (0..l).any(|j| c[i][j] != c[perm[i]][perm[j]])) {
            return Err(RootError::InvalidSymmetry("edges not preserved".into()));
        }
        Ok(DiagramSymmetry { perm })
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn order(&self) -> u32 {
        2
    }

    /// Linear extension to the root lattice.
    pub fn extend(&self, beta: &Root) -> Root {
        let mut coords = vec![0; beta.coords.len()];
        for (i, &c) in beta.coords.iter().enumerate() {
            coords[self.perm[i]] = c;
        }
        Root { coords }
    }

    pub fn extend_index(&self, system: &RootSystem, i: usize) -> usize {
        system.index[&self.extend(system.root(i))]
    }

    /// Root indices permuted by the symmetry.
    pub fn root_permutation(&self, system: &RootSystem) -> Vec<usize> {
        (0..system.len()).map(|i| self.extend_index(system, i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(kind: RootKind, l: usize) -> RootSystem {
        RootSystem::build(kind, l).unwrap()
    }

    #[test]
    fn counts_and_ordering() {
        assert_eq!(sys(RootKind::A, 2).len(), 6);
        assert_eq!(sys(RootKind::A, 5).len(), 30);
        assert_eq!(sys(RootKind::D, 4).len(), 24);
        assert_eq!(sys(RootKind::D, 5).len(), 40);
        assert_eq!(sys(RootKind::E6, 6).len(), 72);
        let a3 = sys(RootKind::A, 3);
        for i in 0..3 {
            assert_eq!(a3.root(i), &Root::simple(3, i));
        }
        assert_eq!(a3.root(5).coords(), &[1, 1, 1]);
        assert_eq!(a3.root(6), &a3.root(0).neg());
    }

    #[test]
    fn unsupported() {
        for (k, l) in [(RootKind::A, 0), (RootKind::D, 3), (RootKind::E6, 7)] {
            assert!(matches!(RootSystem::build(k, l), Err(RootError::UnsupportedType { .. })));
        }
    }

    #[test]
    fn cartan_integers() {
        let a2 = sys(RootKind::A, 2);
        let (a, b) = (Root::simple(2, 0), Root::simple(2, 1));
        assert_eq!(a2.cartan_integer(&a, &a).unwrap(), 2);
        assert_eq!(a2.cartan_integer(&a, &b).unwrap(), -1);
        let d4 = sys(RootKind::D, 4);
        assert_eq!(d4.cartan_integer(&Root::simple(4, 0), &Root::simple(4, 3)).unwrap(), 0);
        assert!(matches!(
            a2.cartan_integer(&Root::new(vec![2, 1]).unwrap(), &a),
            Err(RootError::ForeignRoot(_))
        ));
    }

    #[test]
    fn reflections_and_symmetries() {
        let a2 = sys(RootKind::A, 2);
        let a = Root::simple(2, 0);
        assert_eq!(a2.reflect(&a, &a).unwrap(), a.neg());
        let rho = a2.standard_symmetry().unwrap();
        let top = Root::new(vec![1, 1]).unwrap();
        assert_eq!(rho.extend(&top), top);
        let d4 = sys(RootKind::D, 4);
        let rho = d4.standard_symmetry().unwrap();
        assert_eq!(rho.extend(&Root::simple(4, 1)), Root::simple(4, 1));
        assert_eq!(rho.extend(&Root::simple(4, 2)), Root::simple(4, 3));
        assert!(sys(RootKind::A, 1).standard_symmetry().is_none());
        assert!(DiagramSymmetry::new(&d4, vec![1, 0, 2, 3]).is_err());
    }

    #[test]
    fn root_strings() {
        assert_eq!(Root::parse(3, "a1+a2").unwrap().coords(), &[1, 1, 0]);
        assert_eq!(Root::parse(3, "-a1-a2-a3").unwrap().coords(), &[-1, -1, -1]);
        assert_eq!(Root::parse(6, "a1+2a4").unwrap().coords(), &[1, 0, 0, 2, 0, 0]);
        for bad in ["", "a0", "a4", "a1-a2", "b1", "+"] {
            assert!(Root::parse(3, bad).is_err(), "{bad}");
        }
        let e6 = sys(RootKind::E6, 6);
        for r in e6.roots() {
            assert_eq!(&Root::parse(6, &r.to_string()).unwrap(), r);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn any_system() -> impl Strategy<Value = RootSystem> {
            prop_oneof![
                (1usize..=6).prop_map(|l| sys(RootKind::A, l)),
                (4usize..=6).prop_map(|l| sys(RootKind::D, l)),
                Just(sys(RootKind::E6, 6)),
            ]
        }

        proptest! {
            #[test]
            fn reflections_permute_roots(s in any_system(), a in any::<prop::sample::Index>()) {
                let n = s.len();
                let alpha = a.index(n);
                let mut image: Vec<usize> = (0..n).map(|b| s.reflect_index(alpha, b)).collect();
                for (b, &ib) in image.iter().enumerate() {
                    prop_assert_eq!(s.reflect_index(alpha, ib), b);
                }
                image.sort_unstable();
                prop_assert_eq!(image, (0..n).collect::<Vec<_>>());
            }

            #[test]
            fn symmetry_is_additive(s in any_system(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
                if let Some(rho) = s.standard_symmetry() {
                    let (i, j) = (a.index(s.len()), b.index(s.len()));
                    if let Some(k) = s.sum_index(i, j) {
                        let (ri, rj, rk) = (rho.extend_index(&s, i), rho.extend_index(&s, j), rho.extend_index(&s, k));
                        prop_assert_eq!(s.sum_index(ri, rj), Some(rk));
                    }
                    prop_assert_eq!(s.inner_index(i, j), s.inner_index(rho.extend_index(&s, i), rho.extend_index(&s, j)));
                }
            }
        }
    }
}
