//! Fixtures shared by the kernel benchmarks.

use chevtwist::finite::DEFAULT_BUDGET;
use chevtwist::{ChevalleyGroup, FieldAutomorphism, FieldDescriptor, MatrixGroup, RootKind, Twist};

pub fn group_over_q(kind: RootKind, rank: usize) -> ChevalleyGroup {
    ChevalleyGroup::build(kind, rank, FieldDescriptor::Rationals).expect("supported system")
}

/// The twisted group of type A2 over F4, order 72.
pub fn twisted_a2_f4() -> (Twist, MatrixGroup) {
    let f4 = FieldDescriptor::finite(2, 2).expect("F4");
    let g = ChevalleyGroup::build(RootKind::A, 2, f4.clone()).expect("A2");
    let tw = Twist::standard(g, FieldAutomorphism::parse("frob", &f4).expect("frob")).expect("standard twist");
    let group = tw.enumerate_finite(DEFAULT_BUDGET).expect("enumeration").group;
    (tw, group)
}

/// The adjoint group of type A1 over F9, order 360.
pub fn a1_f9() -> Twist {
    let g = ChevalleyGroup::build(RootKind::A, 1, FieldDescriptor::finite(3, 2).expect("F9")).expect("A1");
    Twist::untwisted(g)
}
