//! Finite instances and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use chevtwist::chevgroup::sl2;
use chevtwist::finite::DEFAULT_BUDGET;
use chevtwist::{
    ChevalleyGroup, FieldAutomorphism, FieldDescriptor, FiniteGroupOps, GroupAutomorphism, IndexAutomorphism, Matrix,
    MatrixGroup, RootKind, Scalar, Twist,
};

/// An enumerated group with the matrix-level automorphisms tested on it.
pub struct Instance {
    pub name: &'static str,
    pub group: MatrixGroup,
    pub automorphisms: Vec<GroupAutomorphism>,
}

impl Instance {
    pub fn index_automorphisms(&self) -> Vec<(GroupAutomorphism, IndexAutomorphism)> {
        self.automorphisms
            .iter()
            .map(|phi| {
                let idx = self
                    .group
                    .automorphism(phi.label(), |m| phi.apply(m))
                    .unwrap_or_else(|e| panic!("{} on {}: {e}", phi.label(), self.name));
                (phi.clone(), idx)
            })
            .collect()
    }
}

fn chevalley_instance(name: &'static str, tw: Twist, descriptors: &[&str]) -> Instance {
    let group = tw.enumerate_finite(DEFAULT_BUDGET).expect("enumeration").group;
    let automorphisms = descriptors
        .iter()
        .map(|d| GroupAutomorphism::parse(d, tw.group()).unwrap_or_else(|e| panic!("{d}: {e}")))
        .collect();
    Instance { name, group, automorphisms }
}

/// `PSL_2(5)` as the adjoint group of type `A_1` over `F_5`.
pub fn psl2_5() -> Instance {
    let g = ChevalleyGroup::build(RootKind::A, 1, FieldDescriptor::finite(5, 1).unwrap()).unwrap();
    chevalley_instance("A1/F5", Twist::untwisted(g), &["id", "diag:2", "inner:x a1 1*diag:2"])
}

/// `PSL_2(9)`, which carries a nontrivial Frobenius.
pub fn psl2_9() -> Instance {
    let g = ChevalleyGroup::build(RootKind::A, 1, FieldDescriptor::finite(3, 2).unwrap()).unwrap();
    chevalley_instance("A1/F9", Twist::untwisted(g), &["id", "diag:z", "field:frob", "field:frob*diag:z"])
}

/// The twisted group of type `A_2` over `F_4` (order 72).
pub fn psu3_2() -> Instance {
    let f4 = FieldDescriptor::finite(2, 2).unwrap();
    let g = ChevalleyGroup::build(RootKind::A, 2, f4.clone()).unwrap();
    let tw = Twist::standard(g, FieldAutomorphism::parse("frob", &f4).unwrap()).unwrap();
    chevalley_instance("2A2/F4", tw, &["id", "diag:z,z^2", "field:frob", "field:frob*diag:z,z^2"])
}

fn two_by_two(name: &'static str, p: u32, extra: Vec<Matrix>, diag: i64) -> Instance {
    let f = FieldDescriptor::finite(p, 1).unwrap();
    let one = Scalar::one(&f);
    let mut gens = vec![sl2::x(&one), sl2::x_neg(&one)];
    gens.extend(extra);
    let group = MatrixGroup::generate(&gens, DEFAULT_BUDGET).unwrap();
    let d = Matrix::from_diagonal(vec![Scalar::from_int(&f, diag), one.clone()]);
    let automorphisms = vec![
        GroupAutomorphism::identity(2, &f),
        GroupAutomorphism::diagonal(d).unwrap().labeled(format!("diag:{diag},1")),
        GroupAutomorphism::inner(sl2::x(&one)).unwrap().labeled("inner:x(1)"),
    ];
    Instance { name, group, automorphisms }
}

/// `SL_2(5)` in the natural 2x2 representation; its center has order 2.
pub fn sl2_5() -> Instance {
    two_by_two("SL2(5)", 5, vec![], 2)
}

/// `GL_2(3)`, which has a nontrivial central automorphism `g -> det(g) g`.
pub fn gl2_3() -> Instance {
    let f = FieldDescriptor::finite(3, 1).unwrap();
    let d = Matrix::from_diagonal(vec![Scalar::from_int(&f, 2), Scalar::one(&f)]);
    two_by_two("GL2(3)", 3, vec![d], 2)
}

/// `g -> det(g) g` on a group of 2x2 matrices.
pub fn det_twist(m: &Matrix) -> Result<Matrix, String> {
    let d = m.det();
    Ok(m.scale(&d))
}

/// Ordinary conjugacy classes by direct conjugation.
pub fn conjugacy_classes<G: FiniteGroupOps>(g: &G) -> Vec<usize> {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut next = 0;
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        for h in 0..n {
            class_of[g.mul(g.mul(h, x), g.inv(h))] = next;
        }
        next += 1;
    }
    class_of
}

pub fn class_count(class_of: &[usize]) -> usize {
    class_of.iter().copied().collect::<BTreeSet<_>>().len()
}

/// For a finite group, `R(phi)` is the number of conjugacy classes mapped to themselves.
pub fn reidemeister_oracle<G: FiniteGroupOps>(g: &G, phi: &IndexAutomorphism) -> usize {
    let class_of = conjugacy_classes(g);
    let mut fixed = BTreeSet::new();
    for x in 0..g.order() {
        if class_of[phi.apply(x)] == class_of[x] {
            fixed.insert(class_of[x]);
        }
    }
    fixed.len()
}

/// Isogredience classes computed on the automorphisms themselves:
/// orbits of the distinct maps `i_a ∘ gamma` under conjugation by inner automorphisms.
pub fn isogredience_oracle<G: FiniteGroupOps>(g: &G, gamma: &IndexAutomorphism) -> usize {
    let n = g.order();
    let coset: BTreeSet<Vec<usize>> =
        (0..n).map(|a| IndexAutomorphism::inner(g, a).compose(gamma).images().to_vec()).collect();
    let inners: Vec<(IndexAutomorphism, IndexAutomorphism)> = (0..n)
        .map(|h| {
            let ih = IndexAutomorphism::inner(g, h);
            let inv = ih.inverse();
            (ih, inv)
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut classes = 0;
    for psi in &coset {
        if seen.contains(psi) {
            continue;
        }
        classes += 1;
        for (ih, ih_inv) in &inners {
            // i_h ∘ psi ∘ i_h^-1
            let img: Vec<usize> = (0..n).map(|x| ih.apply(psi[ih_inv.apply(x)])).collect();
            seen.insert(img);
        }
    }
    classes
}
