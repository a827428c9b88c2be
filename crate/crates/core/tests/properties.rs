use fermi_upb::exterior::{exterior_power_apply, from_antisymmetric_matrix, to_antisymmetric_matrix};
use fermi_upb::index::combinations;
use fermi_upb::linalg::orthonormalize_rows;
use fermi_upb::slater::{canonical_form, slater_decomposition};
use fermi_upb::{
    hodge_dual, inner_product, interior_product, plucker_residual, support, wedge_product,
    Factorization, NVector, Scalar, C64, CQ,
};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

fn rows(seed: u64, r: usize, m: usize) -> Vec<Vec<C64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..r)
        .map(|_| {
            (0..m)
                .map(|_| C64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng)))
                .collect()
        })
        .collect()
}

fn vector(seed: u64, m: usize, n: usize) -> NVector<C64> {
    let len = combinations(m, n).len();
    let dense = rows(seed, 1, len).remove(0);
    NVector::from_dense(m, n, dense).unwrap()
}

fn close(a: C64, b: C64, scale: f64) -> bool {
    (a - b).norm() <= 1e-10 * scale.max(1.0)
}

fn small_int() -> impl Strategy<Value = CQ> {
    (-4i64..=4, -4i64..=4).prop_map(|(a, b)| {
        CQ::new(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
    })
}

fn exact_factorization(m: usize, n: usize) -> impl Strategy<Value = Factorization<CQ>> {
    prop::collection::vec(prop::collection::vec(small_int(), m), n)
        .prop_map(move |f| Factorization::new(m, f).unwrap())
}

fn dims() -> impl Strategy<Value = (usize, usize)> {
    (2usize..=6).prop_flat_map(|m| (Just(m), 1..=m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gram_determinant_matches_expanded_inner_product((m, n) in dims(), s in any::<u64>()) {
        let a = Factorization::new(m, rows(s, n, m)).unwrap();
        let b = Factorization::new(m, rows(s ^ 0x5eed, n, m)).unwrap();
        let direct = inner_product(&a.wedge_expand(), &b.wedge_expand()).unwrap();
        prop_assert!(close(direct, a.gram_inner_product(&b).unwrap(), a.norm() * b.norm()));
    }

    #[test]
    fn exact_gram_determinant_is_exact(
        (a, b) in (2usize..=5).prop_flat_map(|m| (1..=m).prop_flat_map(move |n| {
            (exact_factorization(m, n), exact_factorization(m, n))
        }))
    ) {
        let direct = inner_product(&a.wedge_expand(), &b.wedge_expand()).unwrap();
        prop_assert_eq!(direct, a.gram_inner_product(&b).unwrap());
    }

    #[test]
    fn wedge_is_graded_antisymmetric(m in 4usize..=6, p in 1usize..=2, q in 1usize..=2, s in any::<u64>()) {
        let u = vector(s, m, p);
        let v = vector(s.wrapping_add(1), m, q);
        let uv = wedge_product(&u, &v).unwrap();
        let vu = wedge_product(&v, &u).unwrap();
        let sign = if (p * q) % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!(uv.approx_eq(&vu.scale(&C64::new(sign, 0.0)), 1e-10 * uv.norm().max(1.0)));
    }

    #[test]
    fn repeated_factor_vanishes(m in 2usize..=6, s in any::<u64>()) {
        let mut f = rows(s, 2, m);
        f[1] = f[0].iter().map(|x| x * C64::new(0.5, -2.0)).collect();
        let psi = Factorization::new(m, f).unwrap().wedge_expand();
        prop_assert!(psi.norm() <= 1e-12);
    }

    #[test]
    fn self_wedge_vanishes_iff_plucker(m in 4usize..=6, decomposable in any::<bool>(), s in any::<u64>()) {
        let psi = if decomposable {
            Factorization::new(m, rows(s, 2, m)).unwrap().wedge_expand()
        } else {
            vector(s, m, 2)
        };
        let ww = wedge_product(&psi, &psi).unwrap().norm() / psi.norm_sqr_f64();
        let pr = plucker_residual(&psi).unwrap();
        prop_assert_eq!(ww <= 1e-10, pr <= 1e-10);
        prop_assert_eq!(decomposable, pr <= 1e-10);
    }

    #[test]
    fn antisymmetric_matrix_round_trip(m in 2usize..=7, s in any::<u64>()) {
        let psi = vector(s, m, 2);
        let k = to_antisymmetric_matrix(&psi).unwrap();
        prop_assert_eq!(from_antisymmetric_matrix(&k, 1e-12).unwrap(), psi);
    }

    #[test]
    fn slater_decomposition_reconstructs(m in 2usize..=7, s in any::<u64>()) {
        let psi = vector(s, m, 2);
        let d = slater_decomposition(&psi, 1e-12).unwrap();
        prop_assert_eq!(d.coeffs.len(), m / 2);
        prop_assert!(d.coeffs.windows(2).all(|w| w[0] >= w[1]));
        let total: f64 = d.coeffs.iter().map(|c| c * c).sum();
        prop_assert!((total - psi.norm_sqr_f64()).abs() <= 1e-10 * total);
        let img = exterior_power_apply(&d.unitary, &psi).unwrap();
        let canon = canonical_form(m, &d.coeffs).unwrap();
        prop_assert!(img.sub(&canon).unwrap().norm() <= 1e-8 * psi.norm());
    }

    #[test]
    fn slater_coefficients_are_unitarily_invariant(m in 2usize..=7, s in any::<u64>()) {
        let psi = vector(s, m, 2);
        let mut u = rows(s ^ 0xabc, m, m);
        orthonormalize_rows(&mut u);
        let a = slater_decomposition(&psi, 1e-12).unwrap().coeffs;
        let b = slater_decomposition(&exterior_power_apply(&u, &psi).unwrap(), 1e-12).unwrap().coeffs;
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() <= 1e-8 * a[0]);
        }
    }

    #[test]
    fn hodge_dual_is_an_antiunitary_isometry((m, n) in dims(), s in any::<u64>()) {
        let u = vector(s, m, n);
        let v = vector(s.wrapping_add(7), m, n);
        let lhs = inner_product(&hodge_dual(&u), &hodge_dual(&v)).unwrap();
        let rhs = inner_product(&u, &v).unwrap().conj();
        prop_assert!(close(lhs, rhs, u.norm() * v.norm()));
        let back = hodge_dual(&hodge_dual(&u));
        let sign = if (n * (m - n)) % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!(back.approx_eq(&u.scale(&C64::new(sign, 0.0)), 1e-12 * u.norm()));
    }

    #[test]
    fn interior_product_is_adjoint_to_wedge(m in 3usize..=6, s in any::<u64>()) {
        let n = 1 + (s as usize) % (m - 1);
        let k = 1 + (s as usize / 7) % n;
        let psi = vector(s, m, n);
        let phi = vector(s.wrapping_add(3), m, k);
        let xi = vector(s.wrapping_add(5), m, n - k);
        let lhs = inner_product(&interior_product(&psi, &phi).unwrap(), &xi).unwrap();
        let rhs = inner_product(&psi, &wedge_product(&xi, &phi).unwrap()).unwrap();
        prop_assert!(close(lhs, rhs, psi.norm() * phi.norm() * xi.norm()));
    }

    #[test]
    fn support_of_a_decomposable_is_its_span((m, n) in dims(), s in any::<u64>()) {
        let f = Factorization::new(m, rows(s, n, m)).unwrap();
        let sup = support(&f.wedge_expand()).unwrap();
        prop_assert_eq!(sup.len(), n);
        // each factor lies in the support
        for v in f.factors() {
            let proj: f64 = sup
                .iter()
                .map(|b| b.iter().zip(v).map(|(x, y)| x.conj() * y).sum::<C64>().norm_sqr())
                .sum();
            let nv: f64 = v.iter().map(|x| x.norm_sqr()).sum();
            prop_assert!((proj - nv).abs() <= 1e-8 * nv);
        }
    }

    #[test]
    fn generic_bivector_has_full_support(half in 1usize..=3, s in any::<u64>()) {
        let m = 2 * half;
        prop_assert_eq!(support(&vector(s, m, 2)).unwrap().len(), m);
    }
}

#[test]
fn exact_backend_agrees_with_float() {
    let f = Factorization::<CQ>::new(
        4,
        vec![
            vec![CQ::from_i64(1), CQ::from_i64(2), CQ::from_i64(0), CQ::from_i64(-1)],
            vec![CQ::from_i64(0), CQ::from_i64(3), CQ::from_i64(1), CQ::from_i64(1)],
        ],
    )
    .unwrap();
    let exact = f.wedge_expand().map_scalar(Scalar::to_c64);
    let float = f.map_scalar(Scalar::to_c64).wedge_expand();
    assert!(exact.approx_eq(&float, 1e-14));
}
