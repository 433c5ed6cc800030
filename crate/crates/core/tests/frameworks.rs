mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use normrig::linalg::{congruence, kron};
use normrig::space::plane_l1_to_linf;
use normrig::{make_framework, Error, Graph, Matrix, NormedSpace, Placement};

fn space(i: usize) -> NormedSpace {
    common::property_spaces().swap_remove(i)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn laplacian_invariants(seed in any::<u64>(), si in 0usize..5, complete in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = space(si);
        let n = rng.gen_range(s.dim() + 1..=8);
        let g = if complete { Graph::complete(n) } else { common::random_graph(&mut rng, n, 0.6) };
        let fw = common::random_framework(&mut rng, &g, &s);
        let mut t = common::Tally::default();
        common::framework_invariants(&fw, &mut rng, &mut t);
        prop_assert!(t.violations.is_empty(), "{:?}", t.violations);
    }

    #[test]
    fn decomposition_superadditivity(seed in any::<u64>(), si in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = space(si);
        let n = rng.gen_range(s.dim() + 1..=7);
        let fw = common::random_framework(&mut rng, &Graph::complete(n), &s);
        let m = 3;
        let mut parts = vec![Vec::new(); m];
        for &e in fw.graph().edges() {
            parts[rng.gen_range(0..m)].push(e);
        }
        let sum: f64 = parts.iter().map(|p| fw.spanning_subframework(p).unwrap().rigidity_eigenvalue().unwrap()).sum();
        prop_assert!(fw.rigidity_eigenvalue().unwrap() >= sum - m as f64 * 1e-9);
    }

    #[test]
    fn l1_linf_congruence(seed in any::<u64>(), n in 3usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_graph(&mut rng, n, 0.7);
        let l1 = NormedSpace::lp(1.0, 2).unwrap();
        let fw = common::random_framework(&mut rng, &g, &l1);
        let phi = plane_l1_to_linf();
        let q = fw.placement().mapped(&phi).unwrap();
        let image = make_framework(&g, &NormedSpace::linf(2).unwrap(), &q);
        prop_assume!(image.is_ok());
        let image = image.unwrap();
        let back = congruence(&image.laplacian(), &kron(&Matrix::identity(n), &phi).unwrap()).unwrap();
        prop_assert!(fw.laplacian().max_abs_diff(&back) < 1e-9);
        let (a, b) = (fw.rigidity_eigenvalue().unwrap(), image.rigidity_eigenvalue().unwrap());
        prop_assert!((0.5 * a - b).abs() < 1e-9);
    }

    #[test]
    fn translation_invariance(seed in any::<u64>(), si in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = space(si);
        let n = rng.gen_range(s.dim() + 1..=7);
        let g = common::random_graph(&mut rng, n, 0.7);
        let fw = common::random_framework(&mut rng, &g, &s);
        let shift: Vec<f64> = (0..s.dim()).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let moved = Placement::new(fw.placement().points().into_iter().map(|p| p.iter().zip(&shift).map(|(a, b)| a + b).collect()).collect()).unwrap();
        let fw2 = make_framework(&g, &s, &moved).unwrap();
        prop_assert!(fw.laplacian().max_abs_diff(&fw2.laplacian()) < 1e-9);
    }
}

#[test]
fn coincident_endpoints_are_rejected() {
    let g = Graph::complete(3);
    let p = Placement::new(vec![vec![0.0, 0.0], vec![0.0, 0.0], vec![1.0, 0.3]]).unwrap();
    assert_eq!(make_framework(&g, &NormedSpace::lp(1.5, 2).unwrap(), &p), Err(Error::CoincidentEndpoints((0, 1))));
}

#[test]
fn euclidean_triangle_is_rigid() {
    let g = Graph::complete(3);
    let p = Placement::new(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.3, 0.8]]).unwrap();
    let fw = make_framework(&g, &NormedSpace::lp(2.0, 2).unwrap(), &p).unwrap();
    let r = fw.rigidity_report().unwrap();
    assert_eq!(r.k, 3);
    assert!(r.infinitesimally_rigid);
}
