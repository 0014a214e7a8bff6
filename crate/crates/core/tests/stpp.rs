mod common;

use fastmm::group::{fourier_index, fourier_wreath, orbit_transversal, SymPerm};
use fastmm::stpp::{
    build_xyz, plan, BaseMultiplier, StppEmbedding, StppFamily, StppMultiplier, StppOptions,
};
use fastmm::{multiply_classical, Error, Matrix};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sorted(v: impl IntoIterator<Item = Complex64>) -> Vec<(u64, u64)> {
    let mut out: Vec<(u64, u64)> = v.into_iter().map(|z| (z.re.to_bits(), z.im.to_bits())).collect();
    out.sort_unstable();
    out
}

fn embedding(degree: usize) -> StppEmbedding {
    StppEmbedding::new(build_xyz(&common::fixture_family(), degree).unwrap()).unwrap()
}

#[test]
fn end_to_end_matches_classical() {
    let family = common::fixture_family();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let plan_side = plan(&family, 12).unwrap().padded;
    assert_eq!(plan_side, 12);
    for options in [
        StppOptions::default(),
        StppOptions { base: BaseMultiplier::Strassen, depth: 1 },
        StppOptions { base: BaseMultiplier::Classical, depth: 2 },
    ] {
        let m = StppMultiplier::new(family.clone(), options).unwrap();
        for n in 1..=plan_side {
            let a = common::random_ints(n, n, -8, 8, &mut rng);
            let b = common::random_ints(n, n, -8, 8, &mut rng);
            let c = m.multiply_real(&common::float_matrix(&a), &common::float_matrix(&b)).unwrap();
            let exact = common::int_product(&a, &b);
            for i in 0..n {
                for j in 0..n {
                    assert!((c.get(i, j) - exact[i][j] as f64).abs() <= 1e-9 * (n * 64) as f64, "{options:?} n = {n}");
                }
            }
        }
    }
}

#[test]
fn complex_inputs() {
    let family = common::fixture_family();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let gen = |rng: &mut ChaCha8Rng| {
        Matrix::<Complex64>::from_fn(7, 7, (), |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    };
    let (a, b) = (gen(&mut rng), gen(&mut rng));
    let c = fastmm::stpp::multiply_stpp(&family, &a, &b).unwrap();
    let d = multiply_classical(&a, &b).unwrap();
    let err = c.data().iter().zip(d.data()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    assert!(err < 1e-12, "{err:e}");
}

#[test]
fn binary64_rounds_to_exact_integers() {
    let m = StppMultiplier::new(common::fixture_family(), StppOptions::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in [4, 9, 12, 20, 24] {
        let a = common::random_ints(n, n, -8, 8, &mut rng);
        let b = common::random_ints(n, n, -8, 8, &mut rng);
        let c = m.multiply_real(&common::float_matrix(&a), &common::float_matrix(&b)).unwrap();
        let exact = common::int_product(&a, &b);
        for i in 0..n {
            for j in 0..n {
                let v = *c.get(i, j);
                assert!((v - exact[i][j] as f64).abs() < 0.5);
                assert_eq!(v.round() as i128, exact[i][j]);
            }
        }
    }
}

#[test]
fn embedding_and_output_only_move_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for degree in 1..=3 {
        let e = embedding(degree);
        let side = e.side();
        let order = e.maps().group.order();
        let a = Matrix::<Complex64>::from_fn(side, side, (), |_, _| Complex64::new(rng.gen_range(-1.0..1.0), 0.0));
        let v = e.embed_left(&a).unwrap();
        let zeros = std::iter::repeat(Complex64::new(0.0, 0.0)).take(order - side * side);
        assert_eq!(sorted(v.iter().copied()), sorted(a.data().iter().copied().chain(zeros.clone())));
        let w = e.embed_right(&a).unwrap();
        assert_eq!(sorted(w.iter().copied()), sorted(a.data().iter().copied().chain(zeros)));

        // distinct values in, distinct values out
        let c: Vec<Complex64> = (0..order).map(|i| Complex64::new(i as f64, 0.0)).collect();
        let out = e.extract(&c);
        let mut seen: Vec<u64> = out.data().iter().map(|z| z.re as u64).collect();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), side * side);
    }
}

#[test]
fn assembled_entries_are_orbit_values_repeated() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for degree in 1..=3 {
        let e = embedding(degree);
        let g = &e.maps().group;
        let v: Vec<Complex64> = (0..g.order()).map(|_| Complex64::new(rng.gen(), rng.gen())).collect();
        let perms = SymPerm::all(degree);
        let mats = e.assemble_left(&v);
        assert_eq!(mats.len(), e.representatives().len());
        for (chi0, m) in e.representatives().iter().zip(&mats) {
            let stab = perms.iter().filter(|p| &p.act(chi0) == chi0).count();
            let mut orbit: Vec<Vec<usize>> = perms.iter().map(|p| p.act(chi0)).collect();
            orbit.sort();
            orbit.dedup();
            let v = &v;
            let expected = orbit
                .iter()
                .flat_map(|chi| perms.iter().map(move |s| v[fourier_index(g, chi, s)]))
                .flat_map(|z| std::iter::repeat(z).take(stab));
            assert_eq!(sorted(m.data().iter().copied()), sorted(expected));
            assert_eq!(sorted(e.assemble_right(&v)[0].data().iter().copied()).len(), perms.len().pow(2));
        }
    }
}

#[test]
fn disassemble_inverts_assemble() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for degree in 1..=3 {
        let e = embedding(degree);
        let g = &e.maps().group;
        let v: Vec<Complex64> = (0..g.order()).map(|_| Complex64::new(rng.gen(), rng.gen())).collect();
        assert_eq!(e.disassemble(&e.assemble_left(&v)), v);
        // the orbit transversal is what ties the two tables together
        let chi = g.h_from_index(g.base_power_order() - 1);
        let (rep, tau) = orbit_transversal(&chi);
        assert_eq!(tau.act(&rep), chi);
    }
}

#[test]
fn product_of_transforms_is_orbitwise() {
    // c^ from the assembled products equals the transform of the convolution
    let e = embedding(2);
    let g = &e.maps().group;
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let side = e.side();
    let a = Matrix::<Complex64>::from_fn(side, side, (), |_, _| Complex64::new(rng.gen_range(-1.0..1.0), 0.0));
    let b = Matrix::<Complex64>::from_fn(side, side, (), |_, _| Complex64::new(rng.gen_range(-1.0..1.0), 0.0));
    let (va, vb) = (e.embed_left(&a).unwrap(), e.embed_right(&b).unwrap());
    let mut conv = vec![Complex64::new(0.0, 0.0); g.order()];
    for (i, x) in va.iter().enumerate().filter(|(_, x)| x.norm() > 0.0) {
        for (j, y) in vb.iter().enumerate().filter(|(_, y)| y.norm() > 0.0) {
            let k = g.index_of(&fastmm::group::FiniteGroup::op(g, &g.element(i), &g.element(j)));
            conv[k] += x * y;
        }
    }
    let products: Vec<_> = e
        .assemble_left(&fourier_wreath(g, &va).unwrap())
        .iter()
        .zip(e.assemble_right(&fourier_wreath(g, &vb).unwrap()).iter())
        .map(|(x, y)| multiply_classical(x, y).unwrap())
        .collect();
    let got = e.disassemble(&products);
    let want = fourier_wreath(g, &conv).unwrap();
    let err = got.iter().zip(&want).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    assert!(err < 1e-9, "{err:e}");
}

#[test]
fn corrupted_family_is_rejected() {
    let text = std::fs::read_to_string(common::fixture("family.stpp")).unwrap();
    // first member in Z/8: (1 - 0) + (7 - 0) + 0 = 0
    let bad = text.replacen("Y1: 0 2", "Y1: 0 7", 1);
    let (family, _) = StppFamily::parse(&bad).unwrap();
    assert!(matches!(family.verify(), Err(Error::StppViolation(_))));
    assert!(matches!(StppMultiplier::new(family, StppOptions::default()), Err(Error::StppViolation(_))));
}

#[test]
fn shape_and_size_errors() {
    let m = StppMultiplier::new(common::fixture_family(), StppOptions::default()).unwrap();
    let a = Matrix::<Complex64>::zeros(3, 4, ());
    assert!(matches!(m.multiply(&a, &a), Err(Error::DimensionMismatch { .. })));
    let big = Matrix::<Complex64>::zeros(25, 25, ());
    assert!(matches!(m.multiply(&big, &big), Err(Error::FamilyExhausted(25))));
}
