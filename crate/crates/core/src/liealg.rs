//! Chevalley basis of a simply-laced Lie algebra with integer structure
//! constants, the adjoint bracket, and the divided powers of `ad e_alpha`.
//!
//! Signs come from the bimultiplicative cocycle
//! `eps(a_i, a_i) = -1`, `eps(a_i, a_j) = -1` for `i < j` adjacent, `+1` otherwise.
//! With `E_a` the lattice basis, `[E_a, E_b] = eps(a, b) E_{a+b}` and
//! `[E_a, E_{-a}] = -h_a`; the Chevalley basis is `e_a = E_a` for positive
//! `a` and `e_a = -E_a` for negative `a`, which gives `[e_a, e_{-a}] = h_a`.
//!
//! Basis slots: `e_a` for every root in root order, then `h_1..h_l`.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::matrix::Matrix;
use crate::rootsys::{RootError, RootKind, RootSystem};
use crate::scalars::{FieldDescriptor, Scalar};

pub const SIGN_CONVENTION: &str = "bimultiplicative-cocycle/lower-triangle-v1";
pub const TABLE_FORMAT_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum LieError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("structure constant table: {0}")]
    Table(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Sparse integer vector over the basis slots.
pub type IntVector = Vec<(usize, i64)>;

/// Sparse integer matrix stored by columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseIntMatrix {
    pub dim: usize,
    pub columns: Vec<IntVector>,
}

impl SparseIntMatrix {
    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn to_matrix(&self, field: &FieldDescriptor) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim, field);
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                m.set(i, j, Scalar::from_int(field, v));
            }
        }
        m
    }
}

#[derive(Debug)]
pub struct ChevalleyBasis {
    system: Arc<RootSystem>,
    /// `n[i * |Phi| + j] = N(r_i, r_j)`, zero when `r_i + r_j` is not a root.
    n: Vec<i8>,
    /// `table[a * dim + b] = [b_a, b_b]`.
    table: Vec<IntVector>,
    /// For each root, `ad(e_a)^k / k!` for `k = 1..=nilpotency`.
    divided_powers: Vec<Vec<SparseIntMatrix>>,
}

fn cocycle(system: &RootSystem, a: &[i32], b: &[i32]) -> i64 {
    let c = system.cartan();
    let l = system.rank();
    let mut parity = 0i64;
    for i in 0..l {
        parity += i64::from(a[i] * b[i]);
        for j in i + 1..l {
            if c[i][j] == -1 {
                parity += i64::from(a[i] * b[j]);
            }
        }
    }
    if parity.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn add_into(acc: &mut IntVector, slot: usize, v: i64) {
    if v == 0 {
        return;
    }
    match acc.iter_mut().find(|(s, _)| *s == slot) {
        Some(e) => e.1 += v,
        None => acc.push((slot, v)),
    }
    acc.retain(|&(_, x)| x != 0);
}

impl ChevalleyBasis {
    pub fn new(system: Arc<RootSystem>) -> Self {
        let nr = system.len();
        let l = system.rank();
        let dim = nr + l;
        let sign = |i: usize| if system.root(i).is_positive() { 1i64 } else { -1 };
        let mut n = vec![0i8; nr * nr];
        for i in 0..nr {
            for j in 0..nr {
                if let Some(k) = system.sum_index(i, j) {
                    let eps = cocycle(&system, system.root(i).coords(), system.root(j).coords());
                    n[i * nr + j] = (sign(i) * sign(j) * sign(k) * eps) as i8;
                }
            }
        }
        let mut basis = ChevalleyBasis { system, n, table: Vec::new(), divided_powers: Vec::new() };
        basis.table = (0..dim * dim).map(|ab| basis.compute_bracket(ab / dim, ab % dim)).collect();
        basis.divided_powers = (0..nr).map(|a| basis.compute_divided_powers(a)).collect();
        basis
    }

    pub fn build(kind: RootKind, rank: usize) -> Result<Self, LieError> {
        Ok(Self::new(Arc::new(RootSystem::build(kind, rank)?)))
    }

    pub fn system(&self) -> &RootSystem {
        &self.system
    }

    pub fn system_arc(&self) -> Arc<RootSystem> {
        Arc::clone(&self.system)
    }

    pub fn dim(&self) -> usize {
        self.system.len() + self.system.rank()
    }

    pub fn e_slot(&self, root: usize) -> usize {
        root
    }

    pub fn h_slot(&self, simple: usize) -> usize {
        self.system.len() + simple
    }

    pub fn slot_label(&self, slot: usize) -> String {
        let nr = self.system.len();
        if slot < nr {
            format!("e[{}]", self.system.root(slot))
        } else {
            format!("h[a{}]", slot - nr + 1)
        }
    }

    /// `N(r_i, r_j)`; zero when `r_i + r_j` is not a root.
    pub fn n(&self, i: usize, j: usize) -> i64 {
        i64::from(self.n[i * self.system.len() + j])
    }

    /// `h_a` as a combination of `h_1..h_l`.
    pub fn coroot(&self, root: usize) -> IntVector {
        let nr = self.system.len();
        self.system.root(root).coords().iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (nr + i, i64::from(c))).collect()
    }

    fn compute_bracket(&self, a: usize, b: usize) -> IntVector {
        let s = &*self.system;
        let nr = s.len();
        match (a < nr, b < nr) {
            (true, true) => {
                if s.neg_index(a) == b {
                    self.coroot(a)
                } else if let Some(k) = s.sum_index(a, b) {
                    vec![(k, self.n(a, b))]
                } else {
                    vec![]
                }
            }
            (false, true) => {
                let v = s.inner(s.simple_root(a - nr).coords(), s.root(b).coords());
                if v == 0 { vec![] } else { vec![(b, i64::from(v))] }
            }
            (true, false) => {
                let v = s.inner(s.simple_root(b - nr).coords(), s.root(a).coords());
                if v == 0 { vec![] } else { vec![(a, -i64::from(v))] }
            }
            (false, false) => vec![],
        }
    }

    /// `[b_a, b_b]` for basis slots.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &IntVector {
        &self.table[a * self.dim() + b]
    }

    pub fn bracket_int(&self, x: &IntVector, y: &IntVector) -> IntVector {
        let mut out = Vec::new();
        for &(a, xa) in x {
            for &(b, yb) in y {
                for &(c, k) in self.bracket_basis(a, b) {
                    add_into(&mut out, c, k * xa * yb);
                }
            }
        }
        out
    }

    /// Bilinear bracket of dense vectors over a field.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>, LieError> {
        let dim = self.dim();
        if x.len() != dim || y.len() != dim {
            return Err(LieError::BasisMismatch(format!("expected vectors of length {dim}")));
        }
        if !x[0].same_field(&y[0]) {
            return Err(LieError::BasisMismatch("vectors over different fields".into()));
        }
        let mut out = vec![x[0].zero_like(); dim];
        let ys: Vec<(usize, &Scalar)> = y.iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for &(b, yb) in &ys {
                let entries = self.bracket_basis(a, b);
                if entries.is_empty() {
                    continue;
                }
                let p = xa * yb;
                for &(c, k) in entries {
                    let term = &p * &Scalar::from_int(&p.descriptor(), k);
                    out[c] = &out[c] + &term;
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `ad(b_slot)` as sparse integer columns.
    pub fn ad_matrix_int(&self, slot: usize) -> SparseIntMatrix {
        let dim = self.dim();
        SparseIntMatrix { dim, columns: (0..dim).map(|j| self.bracket_basis(slot, j).clone()).collect() }
    }

    pub fn ad_matrix(&self, slot: usize, field: &FieldDescriptor) -> Matrix {
        self.ad_matrix_int(slot).to_matrix(field)
    }

    fn compute_divided_powers(&self, root: usize) -> Vec<SparseIntMatrix> {
        let dim = self.dim();
        let mut powers = Vec::new();
        let mut current: Vec<IntVector> = (0..dim).map(|j| vec![(j, 1)]).collect();
        let e = vec![(root, 1i64)];
        for k in 1i64.. {
            current = current.iter().map(|v| self.bracket_int(&e, v)).collect();
            if current.iter().all(Vec::is_empty) {
                break;
            }
            let columns = current
                .iter()
                .map(|v| {
                    v.iter()
                        .map(|&(i, x)| {
                            assert_eq!(x % k, 0, "divided power is integral");
                            (i, x / k)
                        })
                        .collect()
                })
                .collect();
            current = columns;
            powers.push(SparseIntMatrix { dim, columns: current.clone() });
        }
        powers
    }

    /// `ad(e_a)^k / k!` for `k = 1..=nilpotency(a) - 1`.
    pub fn divided_powers(&self, root: usize) -> &[SparseIntMatrix] {
        &self.divided_powers[root]
    }

    /// Smallest `m` with `ad(e_a)^m = 0`.
    pub fn nilpotency_index(&self, root: usize) -> usize {
        self.divided_powers[root].len() + 1
    }

    pub fn table_file(&self) -> StructureConstantFile {
        let s = &*self.system;
        let nr = s.len();
        let mut entries = Vec::new();
        for i in 0..nr {
            for j in 0..nr {
                if s.sum_index(i, j).is_some() {
                    entries.push(StructureConstantEntry { alpha: i, beta: j, n: self.n(i, j) });
                }
            }
        }
        let mut file = StructureConstantFile {
            format_version: TABLE_FORMAT_VERSION,
            kind: s.kind(),
            rank: s.rank(),
            convention: SIGN_CONVENTION.to_string(),
            roots: s.roots().iter().map(|r| r.coords().to_vec()).collect(),
            entries,
            checksum: String::new(),
        };
        file.checksum = file.payload_checksum();
        file
    }

    pub fn write_table(&self, path: &Path) -> Result<(), LieError> {
        std::fs::write(path, serde_json::to_string_pretty(&self.table_file())?)?;
        Ok(())
    }

    /// Load a table file, check its checksum and that it agrees with a fresh build.
    pub fn load_verified(path: &Path) -> Result<Self, LieError> {
        let file: StructureConstantFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        Self::from_table_file(&file)
    }

    pub fn from_table_file(file: &StructureConstantFile) -> Result<Self, LieError> {
        if file.format_version != TABLE_FORMAT_VERSION {
            return Err(LieError::Table(format!("unsupported format version {}", file.format_version)));
        }
        if file.payload_checksum() != file.checksum {
            return Err(LieError::Table("checksum mismatch".into()));
        }
        let basis = Self::build(file.kind, file.rank)?;
        let fresh = basis.table_file();
        if fresh.convention != file.convention || fresh.roots != file.roots || fresh.entries != file.entries {
            return Err(LieError::Table("contents disagree with the built table".into()));
        }
        Ok(basis)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureConstantEntry {
    pub alpha: usize,
    pub beta: usize,
    pub n: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureConstantFile {
    pub format_version: u32,
    pub kind: RootKind,
    pub rank: usize,
    pub convention: String,
    pub roots: Vec<Vec<i32>>,
    pub entries: Vec<StructureConstantEntry>,
    pub checksum: String,
}

impl StructureConstantFile {
    /// sha256 over the canonical JSON of everything except the checksum.
    pub fn payload_checksum(&self) -> String {
        let payload = serde_json::json!({
            "format_version": self.format_version,
            "kind": self.kind,
            "rank": self.rank,
            "convention": self.convention,
            "roots": self.roots,
            "entries": self.entries,
        });
        hex::encode(Sha256::digest(payload.to_string().as_bytes()))
    }
}
