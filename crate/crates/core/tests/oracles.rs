//! Cross-checks against independent constructions: matrix units in sl_{l+1},
//! brute-force root enumeration, and orbit counts under diagram symmetries.

use std::collections::BTreeSet;

use chevtwist::liealg::ChevalleyBasis;
use chevtwist::twist::RootOrbit;
use chevtwist::{ChevalleyGroup, FieldAutomorphism, FieldDescriptor, RootKind, Twist};

type IntMat = Vec<Vec<i64>>;

fn unit(n: usize, i: usize, j: usize) -> IntMat {
    let mut m = vec![vec![0; n]; n];
    m[i][j] = 1;
    m
}

fn mul(a: &IntMat, b: &IntMat) -> IntMat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn comm(a: &IntMat, b: &IntMat) -> IntMat {
    let (ab, ba) = (mul(a, b), mul(b, a));
    ab.iter().zip(&ba).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

fn scaled(a: &IntMat, c: i64) -> IntMat {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

fn add_into(acc: &mut IntMat, a: &IntMat) {
    for (r, s) in acc.iter_mut().zip(a) {
        for (x, y) in r.iter_mut().zip(s) {
            *x += y;
        }
    }
}

/// Matrix unit for a root of A_l: ones in positions i..j-1 give E_{i,j} (or E_{j,i} if negative).
fn root_unit(n: usize, coords: &[i32]) -> IntMat {
    let i = coords.iter().position(|&c| c != 0).unwrap();
    let j = coords.iter().rposition(|&c| c != 0).unwrap() + 1;
    if coords[i] > 0 {
        unit(n, i, j)
    } else {
        unit(n, j, i)
    }
}

#[test]
fn type_a_structure_constants_match_matrix_units() {
    for l in 1..=5 {
        let basis = ChevalleyBasis::build(RootKind::A, l).unwrap();
        let s = basis.system();
        let n = l + 1;
        let nr = s.len();
        let p = s.positive_count();
        // e_a = c_a E_a; fix signs from simple roots upward, then verify everything
        let mut sign = vec![0i64; nr];
        for a in 0..p {
            let r = s.root(a).coords();
            if s.root(a).height() == 1 {
                sign[a] = 1;
                continue;
            }
            let (k, b) = (0..l)
                .find_map(|k| {
                    let mut c = r.to_vec();
                    c[k] -= 1;
                    (0..a).find(|&b| s.root(b).coords() == c.as_slice()).map(|b| (k, b))
                })
                .expect("every non-simple positive root is a simple root plus a lower root");
            let br = comm(&root_unit(n, s.root(k).coords()), &root_unit(n, s.root(b).coords()));
            let target = root_unit(n, r);
            let ratio = if br == target { 1 } else if br == scaled(&target, -1) { -1 } else { panic!("A{l}: not a multiple") };
            let nk = basis.n(k, b);
            assert!(nk == 1 || nk == -1, "A{l}: N({}, {}) = {nk}", s.root(k), s.root(b));
            sign[a] = sign[b] * ratio * nk;
        }
        for a in 0..p {
            sign[s.neg_index(a)] = sign[a];
        }
        let realise = |slot: usize| -> IntMat {
            if slot < nr {
                scaled(&root_unit(n, s.root(slot).coords()), sign[slot])
            } else {
                let k = slot - nr;
                let mut h = unit(n, k, k);
                add_into(&mut h, &scaled(&unit(n, k + 1, k + 1), -1));
                h
            }
        };
        let dim = basis.dim();
        let mats: Vec<IntMat> = (0..dim).map(realise).collect();
        for a in 0..dim {
            for b in 0..dim {
                let mut rhs = vec![vec![0; n]; n];
                for &(c, k) in basis.bracket_basis(a, b) {
                    add_into(&mut rhs, &scaled(&mats[c], k));
                }
                assert_eq!(comm(&mats[a], &mats[b]), rhs, "A{l}: [{}, {}]", basis.slot_label(a), basis.slot_label(b));
            }
        }
    }
}

fn cartan_from_edges(l: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0; l]; l];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(a, b) in edges {
        c[a][b] = -1;
        c[b][a] = -1;
    }
    c
}

fn diagram(kind: RootKind, l: usize) -> Vec<(usize, usize)> {
    match kind {
        RootKind::A => (0..l - 1).map(|i| (i, i + 1)).collect(),
        RootKind::D => {
            let mut e: Vec<_> = (0..l - 2).map(|i| (i, i + 1)).collect();
            e.push((l - 3, l - 1));
            e
        }
        // Bourbaki: 1-3, 3-4, 4-5, 5-6, 2-4
        RootKind::E6 => vec![(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)],
    }
}

/// All integer vectors in a box of norm 2 for the Cartan form.
fn brute_force_roots(kind: RootKind, l: usize, bound: i32) -> BTreeSet<Vec<i32>> {
    let c = cartan_from_edges(l, &diagram(kind, l));
    let mut out = BTreeSet::new();
    let mut v = vec![-bound; l];
    loop {
        let norm: i64 = (0..l).flat_map(|i| (0..l).map(move |j| (i, j))).map(|(i, j)| i64::from(v[i]) * c[i][j] * i64::from(v[j])).sum();
        if norm == 2 {
            out.insert(v.clone());
        }
        let mut k = 0;
        while k < l && v[k] == bound {
            v[k] = -bound;
            k += 1;
        }
        if k == l {
            break;
        }
        v[k] += 1;
    }
    out
}

#[test]
fn roots_match_norm_two_vectors() {
    let cases = [
        (RootKind::A, 1, 2),
        (RootKind::A, 2, 2),
        (RootKind::A, 4, 2),
        (RootKind::A, 6, 2),
        (RootKind::D, 4, 3),
        (RootKind::D, 5, 3),
        (RootKind::E6, 6, 3),
    ];
    for (kind, l, bound) in cases {
        let basis = ChevalleyBasis::build(kind, l).unwrap();
        let ours: BTreeSet<Vec<i32>> = basis.system().roots().iter().map(|r| r.coords().to_vec()).collect();
        let expected = brute_force_roots(kind, l, bound);
        assert_eq!(ours, expected, "{kind}{l}");
        let count = match kind {
            RootKind::A => l * (l + 1),
            RootKind::D => 2 * l * (l - 1),
            RootKind::E6 => 72,
        };
        assert_eq!(ours.len(), count, "{kind}{l}");
    }
}

fn symmetry(kind: RootKind, l: usize) -> Vec<usize> {
    match kind {
        RootKind::A => (0..l).rev().collect(),
        RootKind::D => (0..l - 2).chain([l - 1, l - 2]).collect(),
        RootKind::E6 => vec![5, 1, 4, 3, 2, 0],
    }
}

/// (fixed, non-adjacent pairs, adjacent pairs) among the positive roots.
fn orbit_counts_oracle(kind: RootKind, l: usize) -> (usize, usize, usize) {
    let roots: BTreeSet<Vec<i32>> = brute_force_roots(kind, l, 3).into_iter().filter(|r| r.iter().all(|&c| c >= 0)).collect();
    let perm = symmetry(kind, l);
    let (mut fixed, mut pairs, mut adjacent) = (0, 0, 0);
    for r in &roots {
        let mut image = vec![0; l];
        for (i, &c) in r.iter().enumerate() {
            image[perm[i]] = c;
        }
        assert!(roots.contains(&image), "symmetry must permute roots");
        if image == *r {
            fixed += 1;
        } else if image > *r {
            let sum: Vec<i32> = r.iter().zip(&image).map(|(a, b)| a + b).collect();
            if roots.contains(&sum) {
                adjacent += 1;
            } else {
                pairs += 1;
            }
        }
    }
    (fixed, pairs, adjacent)
}

#[test]
fn twist_orbits_match_coordinate_oracle() {
    let qi = FieldDescriptor::quadratic(-1).unwrap();
    let conj = FieldAutomorphism::parse("conj", &qi).unwrap();
    for (kind, l) in [(RootKind::A, 2), (RootKind::A, 3), (RootKind::A, 4), (RootKind::A, 5), (RootKind::D, 4), (RootKind::D, 5), (RootKind::E6, 6)] {
        let g = ChevalleyGroup::build(kind, l, qi.clone()).unwrap();
        let tw = Twist::standard(g, conj.clone()).unwrap();
        let orbits = tw.orbits(true);
        let count = |pred: fn(&RootOrbit) -> bool| orbits.iter().filter(|o| pred(o)).count();
        let ours = (
            count(|o| matches!(o, RootOrbit::Fixed(_))),
            count(|o| matches!(o, RootOrbit::Pair(..))),
            count(|o| matches!(o, RootOrbit::Adjacent(..))),
        );
        assert_eq!(ours, orbit_counts_oracle(kind, l), "{kind}{l}");
        if kind == RootKind::A {
            assert_eq!(ours.0, l.div_ceil(2), "A{l}: fixed positive roots");
            // alpha + rho(alpha) is a root when alpha ends at node l/2, so only for even l
            assert_eq!(ours.2, if l % 2 == 0 { l / 2 } else { 0 }, "A{l}: adjacent orbits");
        }
    }
}

/// On `e_b`, `h_{a_j}(T)` acts by `T^<b, a_j>`, so `trace(g(T)^m h(chi))` is the Laurent polynomial
/// `rank + sum_b chi(b) T^(m sum_j <b, a_j>)`.
#[test]
fn function_field_trace_matches_weight_oracle() {
    use chevtwist::twconj::trace_in_function_field;
    use chevtwist::Scalar;

    let q = FieldDescriptor::Rationals;
    let kt = FieldDescriptor::rational_functions(q.clone(), "T").unwrap();
    for (kind, l) in [(RootKind::A, 1), (RootKind::A, 2), (RootKind::A, 3), (RootKind::D, 4)] {
        let roots = brute_force_roots(kind, l, 2);
        let c = cartan_from_edges(l, &diagram(kind, l));
        let chi_vals: Vec<i64> = (0..l as i64).map(|j| j + 2).collect();
        for m in 1..=3u32 {
            let chi: Vec<Scalar> = chi_vals.iter().map(|&v| Scalar::from_int(&q, v)).collect();
            let rep = trace_in_function_field(kind, l, &q, m, &chi).unwrap();
            let ours = Scalar::parse(&kt, &rep.trace).unwrap();
            for t in [Scalar::rational(2, 1), Scalar::rational(-3, 5), Scalar::rational(7, 2)] {
                let mut expected = Scalar::from_int(&q, l as i64);
                for b in &roots {
                    let weight: i64 = (0..l).map(|j| (0..l).map(|i| i64::from(b[i]) * c[i][j]).sum::<i64>()).sum();
                    let chi_b = (0..l).try_fold(Scalar::one(&q), |acc, i| {
                        Scalar::from_int(&q, chi_vals[i]).pow(i64::from(b[i])).map(|p| &acc * &p)
                    });
                    expected = &expected + &(&chi_b.unwrap() * &t.pow(weight * i64::from(m)).unwrap());
                }
                let value = match &ours {
                    Scalar::Function(f) => f.eval(&t).unwrap(),
                    other => panic!("trace is not a rational function: {other}"),
                };
                assert_eq!(value, expected, "{kind}{l} m={m} at T={t}");
            }
        }
    }
}
