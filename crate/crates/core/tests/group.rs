use std::collections::HashSet;
use std::f64::consts::TAU;

use fastmm::group::{
    fourier_index, fourier_wreath, inverse_fourier_wreath, orbit_count, orbit_representatives, stpp_check,
    stpp_search, tpp_check, wreath_inv, wreath_mul, AbelianGroup, Character, FiniteGroup, SymPerm, Triple,
    WreathGroup,
};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn wreath(h: usize, n: usize) -> WreathGroup {
    WreathGroup::new(AbelianGroup::cyclic(h), n).unwrap()
}

#[test]
fn wreath_axioms_exhaustive() {
    for (h, n) in [(2, 2), (3, 2), (4, 2), (2, 3), (6, 2), (1, 3)] {
        let g = wreath(h, n);
        assert!(g.order() <= 72);
        let all: Vec<_> = g.elements().collect();
        let e = g.identity();
        for a in &all {
            assert_eq!(&wreath_mul(&g, a, &e).unwrap(), a);
            assert_eq!(&wreath_mul(&g, &e, a).unwrap(), a);
            assert_eq!(wreath_mul(&g, a, &wreath_inv(&g, a).unwrap()).unwrap(), e);
            assert_eq!(wreath_mul(&g, &wreath_inv(&g, a).unwrap(), a).unwrap(), e);
            for b in &all {
                let ab = g.op(a, b);
                for c in &all {
                    assert_eq!(g.op(&ab, c), g.op(a, &g.op(b, c)));
                }
            }
        }
        // q h = (q . h) q
        for q in SymPerm::all(n) {
            for i in 0..g.base_power_order() {
                let hv = g.h_from_index(i);
                let lhs = g.op(&g.perm(q.clone()), &g.translation(hv.clone()));
                let rhs = g.op(&g.translation(q.act(&hv)), &g.perm(q.clone()));
                assert_eq!(lhs, rhs);
            }
        }
        let distinct: HashSet<_> = all.iter().map(|x| g.index_of(x)).collect();
        assert_eq!(distinct.len(), g.order());
    }
}

#[test]
fn character_orthogonality() {
    for orders in [vec![5], vec![6], vec![2, 4], vec![3, 3]] {
        let g = AbelianGroup::new(orders).unwrap();
        let elems: Vec<_> = g.elements().collect();
        for c1 in &elems {
            for c2 in &elems {
                let (x1, x2) = (Character::new(c1.clone()), Character::new(c2.clone()));
                let s: Complex64 = elems.iter().map(|h| x1.eval(&g, h).unwrap() * x2.eval(&g, h).unwrap().conj()).sum();
                let want = if c1 == c2 { g.order() as f64 } else { 0.0 };
                assert!((s - Complex64::new(want, 0.0)).norm() < 1e-12, "{c1:?} {c2:?}: {s}");
            }
        }
    }
}

fn random_vector(len: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    (0..len).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
}

#[test]
fn fourier_matches_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (h, n) in [(2, 2), (3, 2), (2, 3), (4, 1)] {
        let g = wreath(h, n);
        let a = random_vector(g.order(), &mut rng);
        let a_hat = fourier_wreath(&g, &a).unwrap();
        for chi_i in 0..g.base_power_order() {
            let chi = g.h_from_index(chi_i);
            for sigma in SymPerm::all(n) {
                let mut sum = Complex64::new(0.0, 0.0);
                for hi in 0..g.base_power_order() {
                    let hv = g.h_from_index(hi);
                    let phase: usize = chi.iter().zip(&hv).map(|(c, x)| c * x).sum();
                    let w = Complex64::from_polar(1.0, TAU * phase as f64 / h as f64);
                    let elem = fastmm::group::WreathElement { h: sigma.act(&hv), sigma: sigma.clone() };
                    sum += w * a[g.index_of(&elem)];
                }
                let got = a_hat[fourier_index(&g, &chi, &sigma)];
                assert!((got - sum).norm() < 1e-10, "{chi:?} {sigma:?}");
            }
        }
    }
}

#[test]
fn fourier_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for h in [2, 3] {
        for n in 1..=3 {
            let g = wreath(h, n);
            for _ in 0..100 {
                let a = random_vector(g.order(), &mut rng);
                let back = inverse_fourier_wreath(&g, &fourier_wreath(&g, &a).unwrap()).unwrap();
                let err = a.iter().zip(&back).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
                assert!(err <= 1e-12, "H = Z/{h}, N = {n}: {err:e}");
            }
        }
    }
}

#[test]
fn orbit_counts_match_brute_force() {
    for h in 1..=4 {
        for n in 1..=3 {
            let g = AbelianGroup::cyclic(h);
            let w = wreath(h, n);
            let perms = SymPerm::all(n);
            let canon: HashSet<Vec<usize>> = (0..w.base_power_order())
                .map(|i| {
                    let chi = w.h_from_index(i);
                    perms.iter().map(|p| p.act(&chi)).min().unwrap()
                })
                .collect();
            assert_eq!(canon.len() as u128, orbit_count(&g, n));
            let reps: HashSet<Vec<usize>> = orbit_representatives(&g, n).into_iter().collect();
            assert_eq!(reps, canon);
        }
    }
}

/// `x x'^-1 y y'^-1 z z'^-1 = 1` only for `x = x'`, `y = y'`, `z = z'`, over raw elements.
fn tpp_oracle<G: FiniteGroup>(g: &G, x: &[G::Elem], y: &[G::Elem], z: &[G::Elem]) -> bool {
    stpp_oracle(g, &[(x.to_vec(), y.to_vec(), z.to_vec())])
}

#[allow(clippy::type_complexity)]
fn stpp_oracle<G: FiniteGroup>(g: &G, t: &[(Vec<G::Elem>, Vec<G::Elem>, Vec<G::Elem>)]) -> bool {
    let n = t.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for x in &t[i].0 {
                    for x2 in &t[j].0 {
                        let qx = g.op(x, &g.inverse(x2));
                        for y in &t[j].1 {
                            for y2 in &t[k].1 {
                                let qxy = g.op(&qx, &g.op(y, &g.inverse(y2)));
                                for z in &t[k].2 {
                                    for z2 in &t[i].2 {
                                        let q = g.op(&qxy, &g.op(z, &g.inverse(z2)));
                                        let trivial = i == j && j == k && x == x2 && y == y2 && z == z2;
                                        if g.is_identity(&q) && !trivial {
                                            return false;
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

fn small_subsets<E: Clone>(elems: &[E]) -> Vec<Vec<E>> {
    let mut out: Vec<Vec<E>> = elems.iter().map(|e| vec![e.clone()]).collect();
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            out.push(vec![elems[i].clone(), elems[j].clone()]);
        }
    }
    out
}

fn tpp_agreement<G: FiniteGroup>(g: &G, elems: &[G::Elem]) -> usize {
    let subsets = small_subsets(elems);
    let mut checked = 0;
    for x in &subsets {
        for y in &subsets {
            for z in &subsets {
                let fast = tpp_check(g, x, y, z).unwrap().is_none();
                assert_eq!(fast, tpp_oracle(g, x, y, z), "{x:?} {y:?} {z:?}");
                checked += 1;
            }
        }
    }
    checked
}

#[test]
fn tpp_checker_matches_oracle_exhaustively() {
    for orders in [vec![1], vec![2], vec![3], vec![4], vec![5], vec![6], vec![7], vec![8], vec![2, 2], vec![2, 4], vec![2, 2, 2]] {
        let g = AbelianGroup::new(orders).unwrap();
        let elems: Vec<_> = g.elements().collect();
        assert!(tpp_agreement(&g, &elems) > 0);
    }
    // non-Abelian: Sym_3 and the dihedral group of order 8
    for (h, n) in [(1, 3), (2, 2)] {
        let g = wreath(h, n);
        let elems: Vec<_> = g.elements().collect();
        tpp_agreement(&g, &elems);
    }
}

proptest! {
    #[test]
    fn stpp_checker_matches_oracle(
        order in 2usize..13,
        raw in proptest::collection::vec(
            (proptest::collection::vec(0usize..64, 1..3), proptest::collection::vec(0usize..64, 1..3), proptest::collection::vec(0usize..64, 1..3)),
            1..4,
        ),
    ) {
        let g = AbelianGroup::cyclic(order);
        let dedup = |v: &Vec<usize>| -> Vec<Vec<usize>> {
            let mut s: Vec<usize> = v.iter().map(|x| x % order).collect();
            s.sort_unstable();
            s.dedup();
            s.into_iter().map(|x| vec![x]).collect()
        };
        let triples: Vec<Triple<Vec<usize>>> = raw.iter().map(|(x, y, z)| Triple { x: dedup(x), y: dedup(y), z: dedup(z) }).collect();
        let plain: Vec<_> = triples.iter().map(|t| (t.x.clone(), t.y.clone(), t.z.clone())).collect();
        prop_assert_eq!(stpp_check(&g, &triples).unwrap().is_none(), stpp_oracle(&g, &plain));
    }
}

#[test]
fn search_results_pass_the_oracle() {
    let cases: Vec<(Vec<usize>, Vec<(usize, usize, usize)>)> = vec![
        (vec![5], vec![(1, 1, 1); 2]),
        (vec![8], vec![(2, 2, 2)]),
        (vec![4, 4], vec![(1, 1, 1); 3]),
        (vec![12], vec![(1, 2, 1), (2, 1, 2)]),
        (vec![7], vec![(1, 1, 1); 2]),
    ];
    for (orders, targets) in cases {
        let g = AbelianGroup::new(orders).unwrap();
        let found = stpp_search(&g, &targets, 1_000_000).collection.expect("search succeeds");
        let plain: Vec<_> = found.triples.iter().map(|t| (t.x.clone(), t.y.clone(), t.z.clone())).collect();
        assert!(stpp_oracle(&g, &plain), "{g}: {plain:?}");
        for (t, want) in found.triples.iter().zip(&targets) {
            assert_eq!((t.x.len(), t.y.len(), t.z.len()), *want);
        }
    }
}
