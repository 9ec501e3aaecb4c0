mod common;

use drg_jacobi::drg::{certify_distance_regular, degree_sequence};
use drg_jacobi::jacobi::{
    atom_weight, build_jacobi, canonical_tau, cd_kernel, eigenfunction_coeffs, eigenvalues,
    interlacing, spectral_measure, weight_formulas, DEFAULT_TOL, ROOT_CHECK_TOL, WEIGHT_TOL,
};
use drg_jacobi::oracle::{
    adjacency_matrix, dense_distance_matrices, dense_symmetric_eigen, matrix_poly_firstkind,
    normalized_distance_matrix, operator_norm,
};
use drg_jacobi::{Graph, IntersectionSequence, JacobiOperator, SpectralMeasure};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::corpus;

fn drgs() -> Vec<(String, Graph, IntersectionSequence)> {
    corpus()
        .into_iter()
        .map(|(name, g)| {
            let is = certify_distance_regular(&g)
                .unwrap()
                .sequence()
                .cloned()
                .unwrap();
            (name, g, is)
        })
        .collect()
}

#[test]
fn types_are_thread_safe() {
    fn check<T: Send + Sync>() {}
    check::<Graph>();
    check::<IntersectionSequence>();
    check::<JacobiOperator>();
    check::<SpectralMeasure>();
}

#[test]
fn eigenvectors_satisfy_the_eigen_equation() {
    let mut rng = StdRng::seed_from_u64(7);
    for (name, _, is) in drgs() {
        let taus = [
            canonical_tau(&is),
            rng.gen_range(-5.0..5.0),
            rng.gen_range(-5.0..5.0),
        ];
        for tau in taus {
            let j = build_jacobi(&is, tau);
            let spectrum = eigenvalues(&j, DEFAULT_TOL).unwrap();
            assert_eq!(spectrum.len(), is.diameter() + 1, "{name}");
            assert!(
                spectrum.windows(2).all(|w| w[0] < w[1]),
                "{name} simple spectrum"
            );
            for &lambda in &spectrum {
                let phi = eigenfunction_coeffs(&is, tau, lambda, ROOT_CHECK_TOL).unwrap();
                assert_eq!(phi[0], 1.0);
                let jphi = j.apply(&phi);
                let norm = phi.iter().map(|v| v * v).sum::<f64>().sqrt();
                for (a, b) in jphi.iter().zip(&phi) {
                    assert!((a - lambda * b).abs() < 1e-8 * norm, "{name} tau={tau}");
                }
            }
            // a point strictly between eigenvalues is not one
            if spectrum.len() > 1 {
                let mid = 0.5 * (spectrum[0] + spectrum[1]);
                assert!(eigenfunction_coeffs(&is, tau, mid, ROOT_CHECK_TOL).is_err());
            }
        }
    }
}

#[test]
fn weight_formulas_agree_at_random_tau() {
    let mut rng = StdRng::seed_from_u64(11);
    for (name, _, is) in drgs() {
        for _ in 0..5 {
            let tau = rng.gen_range(-5.0..5.0);
            let j = build_jacobi(&is, tau);
            let mut total = 0.0;
            for lambda in eigenvalues(&j, DEFAULT_TOL).unwrap() {
                let (direct, kernel) = weight_formulas(&j, lambda);
                assert!((direct - kernel).abs() <= 1e-9 * direct, "{name} tau={tau}");
                total += atom_weight(&is, tau, lambda, WEIGHT_TOL).unwrap();
            }
            // Gauss quadrature weights form a probability measure
            assert!((total - 1.0).abs() < 1e-10, "{name}");
        }
    }
}

#[test]
fn random_tau_pairs_interlace() {
    let mut rng = StdRng::seed_from_u64(13);
    for (name, _, is) in drgs() {
        for _ in 0..10 {
            let t1: f64 = rng.gen_range(-5.0..5.0);
            let mut t2: f64 = rng.gen_range(-5.0..5.0);
            if (t1 - t2).abs() < 1e-3 {
                t2 = t1 + 1.0;
            }
            let report = interlacing(&is, t1, t2, 1e-9).unwrap();
            assert!(report.disjoint, "{name} {t1} {t2} gap {}", report.min_gap);
            assert!(report.interlaced, "{name} {t1} {t2}");
            // raising tau pushes every eigenvalue up
            let (lo, hi) = if t1 < t2 {
                (&report.spectrum1, &report.spectrum2)
            } else {
                (&report.spectrum2, &report.spectrum1)
            };
            assert!(lo.iter().zip(hi).all(|(a, b)| a < b), "{name}");
        }
        assert!(interlacing(&is, 1.0, 1.0, 1e-9).is_err());
    }
}

#[test]
fn boundary_polynomial_annihilates_adjacency_at_canonical_tau() {
    for (name, g, is) in drgs() {
        let star = canonical_tau(&is);
        let at_star = matrix_poly_firstkind(&g, &is, star).unwrap();
        assert!(at_star.max_abs() < 1e-8, "{name}");
        // P^{(tau)}_{n+1} = P^{(tau*)}_{n+1} + (tau* - tau) P_n
        let tau = star + 1.0;
        let shifted = matrix_poly_firstkind(&g, &is, tau).unwrap();
        let top = normalized_distance_matrix(&g, is.diameter()).unwrap();
        let expected = top.map(|x| (star - tau) * x);
        assert!(shifted.max_abs_diff(&expected) < 1e-8, "{name}");
    }
}

#[test]
fn distance_operators_have_norm_equal_to_their_degree() {
    for (name, g, is) in drgs() {
        let degrees = degree_sequence(&is).unwrap();
        for (k, ak) in dense_distance_matrices(&g).unwrap().iter().enumerate() {
            let norm = operator_norm(&ak.map(|x| x as f64), 1e-12).unwrap();
            assert!(norm <= degrees[k] as f64 + 1e-9, "{name} k={k}");
            assert!((norm - degrees[k] as f64).abs() < 1e-6, "{name} k={k}");
        }
    }
}

#[test]
fn spectrum_matches_dense_oracle() {
    for (name, g, is) in drgs() {
        let measure = spectral_measure(&is, Some(g.vertex_count())).unwrap();
        let a = adjacency_matrix(&g).unwrap().map(|x| x as f64);
        let dense = dense_symmetric_eigen(&a, 1e-10).unwrap();
        assert_eq!(dense.clusters.len(), measure.atoms.len(), "{name}");
        for (atom, &(value, mult)) in measure.atoms.iter().zip(&dense.clusters) {
            assert!((atom.lambda - value).abs() < 1e-7, "{name}");
            assert_eq!(atom.multiplicity, Some(mult as u64), "{name}");
        }
        let top = measure.atoms.last().unwrap();
        assert!((top.lambda - is.degree() as f64).abs() < 1e-10);
        assert!((top.weight * g.vertex_count() as f64 - 1.0).abs() < 1e-9);
        // moments of the measure count closed walks at a vertex
        let adj = adjacency_matrix(&g).unwrap();
        let mut power = adj.clone();
        for k in 1..=6u32 {
            let walks = power[(0, 0)] as f64;
            assert!(
                (measure.moment(k) - walks).abs() < 1e-8 * walks.max(1.0),
                "{name} k={k}"
            );
            power = power.mul(&adj).unwrap();
        }
    }
}

#[test]
fn kernel_closed_form_matches_sum() {
    let mut rng = StdRng::seed_from_u64(17);
    for (name, _, is) in drgs() {
        for k in 0..is.diameter() {
            for _ in 0..5 {
                let x = rng.gen_range(-4.0..4.0);
                let y = rng.gen_range(-4.0..4.0);
                cd_kernel(&is, k, x, y).unwrap_or_else(|e| panic!("{name} {e}"));
                cd_kernel(&is, k, x, x).unwrap_or_else(|e| panic!("{name} {e}"));
            }
        }
        assert!(cd_kernel(&is, is.diameter(), 0.0, 1.0).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn complete_graph_eigenvalues_follow_closed_form(n in 2u64..=12, tau in -5.0f64..5.0) {
        let is: IntersectionSequence = format!("1,{}", n - 1).parse().unwrap();
        let spectrum = eigenvalues(&build_jacobi(&is, tau), DEFAULT_TOL).unwrap();
        let root = (tau * tau + 4.0 * (n - 1) as f64).sqrt();
        prop_assert!((spectrum[0] - (tau - root) / 2.0).abs() < 1e-9);
        prop_assert!((spectrum[1] - (tau + root) / 2.0).abs() < 1e-9);
    }

    #[test]
    fn count_below_is_monotone(idx in 0usize..16, tau in -5.0f64..5.0, x in -6.0f64..6.0, dx in 0.0f64..3.0) {
        let all = drgs();
        let is = &all[idx % all.len()].2;
        let j = build_jacobi(is, tau);
        prop_assert!(j.count_below(x) <= j.count_below(x + dx));
        let (lo, hi) = j.gershgorin();
        prop_assert_eq!(j.count_below(lo - 1.0), 0);
        prop_assert_eq!(j.count_below(hi + 1.0), j.size());
    }
}
