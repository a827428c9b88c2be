//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the summary lines are always printed.

use std::time::{Duration, Instant};

use fermi_upb::constructions::{
    compose_3_3_pentagon, delta_polynomial, dual_fupb, fupb_c4, hyperplane_fupb,
    hyperplane_gfupb_spanning, pad_fupb, paired_state, real_canonical_members,
    real_extension_witness, sample_real_canonical_params, solve_c4_double_root,
    vandermonde_constant, vandermonde_gfupb, CandidateSet, Claims, Kind, PUBLISHED_C, PUBLISHED_D,
};
use fermi_upb::index::combinations;
use fermi_upb::linalg::orthonormalize_rows;
use fermi_upb::slater::{canonical_form, slater_decomposition};
use fermi_upb::verifier::{
    certify_dim1, certify_pencil_m4, check_independence, check_orthogonality, search_decomposable,
    verify_candidate, Certificate, Objective, SearchConfig, Unextendible,
};
use fermi_upb::{
    exterior::exterior_power_apply, inner_product, plucker_residual, wedge_product, Cyclotomic,
    Factorization, NVector, Scalar, Subspace, C64, CQ,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn budget(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let e = start.elapsed();
    ensure(e < limit, || format!("{what} took {e:?}, budget {limit:?}"))
}

fn gaussian(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

fn random_rows(rng: &mut ChaCha8Rng, rows: usize, m: usize) -> Vec<Vec<C64>> {
    (0..rows).map(|_| (0..m).map(|_| gaussian(rng)).collect()).collect()
}

fn random_nvector(rng: &mut ChaCha8Rng, m: usize, n: usize) -> NVector<C64> {
    let len = combinations(m, n).len();
    NVector::from_dense(m, n, (0..len).map(|_| gaussian(rng)).collect()).unwrap()
}

fn to_float(s: &Subspace<CQ>) -> Subspace<C64> {
    let rows = s
        .orthogonal_basis()
        .iter()
        .map(|v| v.map_scalar(Scalar::to_c64))
        .collect();
    Subspace::span(s.m(), s.n(), rows).unwrap()
}

fn max_overlap(members: &[Factorization<C64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            let ip = members[i].gram_inner_product(&members[j]).unwrap();
            worst = worst.max(ip.norm() / (members[i].norm() * members[j].norm()));
        }
    }
    worst
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let s = vandermonde_gfupb::<CQ>(2, 4).map_err(|e| e.to_string())?;
    ensure(s.len() == 5, || format!("cardinality {}", s.len()))?;
    let rank = check_independence(&s);
    ensure(rank == 5, || format!("rank {rank}"))?;
    let comp = Subspace::span(4, 2, s.expansions()).unwrap().complement();
    ensure(comp.dim() == 1, || format!("complement dim {}", comp.dim()))?;
    let cert = certify_dim1(&comp, 1e-10).unwrap();
    ensure(cert.is_some_and(|c| c.relation.is_some()), || "no exact certificate".into())?;
    budget(start, Duration::from_secs(1), "(2,4)")?;
    let mut notes = vec![format!("(2,4) proven in {:?}", start.elapsed())];
    for (n, m) in [(2, 5), (2, 6), (3, 5), (3, 6)] {
        let start = Instant::now();
        let s = vandermonde_gfupb::<CQ>(n, m).unwrap();
        let card = n * (m - n) + 1;
        ensure(s.len() == card, || format!("({n},{m}) cardinality {}", s.len()))?;
        let rank = check_independence(&s);
        ensure(rank == card, || format!("({n},{m}) rank {rank}"))?;
        let comp = to_float(&Subspace::span(m, n, s.expansions()).unwrap().complement());
        let r = search_decomposable(&comp, &SearchConfig::default()).unwrap();
        ensure(r.witness.is_none() && r.best_residual >= 1e-6, || {
            format!("({n},{m}) search best residual {:e}", r.best_residual)
        })?;
        budget(start, Duration::from_secs(60), &format!("({n},{m})"))?;
        notes.push(format!(
            "({n},{m}) best {:.2e} in {:.1?}",
            r.best_residual,
            start.elapsed()
        ));
    }
    Ok(notes.join("; "))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let p = solve_c4_double_root(2.0, PUBLISHED_D).map_err(|e| e.to_string())?;
    ensure((p.d - PUBLISHED_D).norm() <= 1e-4, || format!("d = {}", p.d))?;
    ensure((p.c - PUBLISHED_C).norm() <= 1e-4, || format!("c = {}", p.c))?;
    let disc = p.discriminant().norm();
    ensure(disc <= 1e-10, || format!("discriminant {disc:e}"))?;
    let s = fupb_c4(&p).unwrap();
    let orth = check_orthogonality(&s).unwrap();
    ensure(orth <= 1e-10, || format!("orthogonality {orth:e}"))?;
    let r = verify_candidate(&s, &SearchConfig::default()).unwrap();
    ensure(
        r.verdict.unextendible == Unextendible::Proven
            && r.verdict.certificate == Certificate::Dim1Plucker,
        || format!("verdict {:?}", r.verdict),
    )?;
    budget(start, Duration::from_secs(5), "complex FUPB")?;
    Ok(format!(
        "d = {:.6}, c = {:.6}, orthogonality {orth:.1e}, discriminant {disc:.1e}",
        p.d, p.c
    ))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let cfg = SearchConfig::default();
    let mut worst_overlap: f64 = 0.0;
    for i in 0..100 {
        let p = sample_real_canonical_params(&mut rng);
        let mut members = real_canonical_members(&p).unwrap();
        let w = real_extension_witness(&p).unwrap();
        let res = plucker_residual(&w.wedge_expand()).unwrap();
        ensure(res <= 1e-10, || format!("sample {i}: witness residual {res:e}"))?;
        members.push(w);
        let ov = max_overlap(&members);
        worst_overlap = worst_overlap.max(ov);
        ensure(ov <= 1e-10, || format!("sample {i}: overlap {ov:e}"))?;
        members.pop();
        let set = CandidateSet::new(
            4,
            2,
            Kind::Fupb,
            Claims {
                orthogonal: true,
                independent: true,
            },
            members,
        )
        .unwrap();
        let r = verify_candidate(&set, &cfg).map_err(|e| format!("sample {i}: {e}"))?;
        ensure(r.verdict.unextendible == Unextendible::Refuted, || {
            format!("sample {i}: verdict {:?}", r.verdict)
        })?;
    }
    budget(start, Duration::from_secs(10), "real samples")?;
    Ok(format!("100/100 refuted, worst overlap {worst_overlap:.1e}"))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let s = compose_3_3_pentagon().map_err(|e| e.to_string())?;
    ensure(s.len() == 11 && s.m == 6, || format!("{} members in dim {}", s.len(), s.m))?;
    let orth = check_orthogonality(&s).unwrap();
    ensure(orth <= 1e-10, || format!("orthogonality {orth:e}"))?;
    let r = verify_candidate(&s, &SearchConfig::default()).unwrap();
    ensure(r.complement_dim == 4, || format!("complement dim {}", r.complement_dim))?;
    let best = r.search.best_residual.unwrap_or(0.0);
    ensure(
        r.verdict.unextendible == Unextendible::InconclusivePass && best >= 1e-6,
        || format!("verdict {:?}, best {best:e}", r.verdict),
    )?;
    budget(start, Duration::from_secs(120), "composition")?;
    Ok(format!(
        "11 members, best residual {best:.2e} over {} restarts in {:.1?}",
        r.search.restarts_used,
        start.elapsed()
    ))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let p = solve_c4_double_root(2.0, PUBLISHED_D).unwrap();
    let h = hyperplane_fupb(3, 5, &p).map_err(|e| e.to_string())?;
    ensure(h.len() == 9, || format!("hyperplane cardinality {}", h.len()))?;
    let r = verify_candidate(&h, &SearchConfig::default()).unwrap();
    ensure(
        r.verdict.unextendible == Unextendible::Proven
            && r.verdict.certificate == Certificate::Dim1Plucker,
        || format!("hyperplane verdict {:?}", r.verdict),
    )?;
    let d = dual_fupb(&pad_fupb(&fupb_c4(&p).unwrap()).unwrap()).map_err(|e| e.to_string())?;
    ensure(d.len() == 9 && (d.m, d.n) == (5, 3), || {
        format!("dual has {} members in ∧^{}C^{}", d.len(), d.n, d.m)
    })?;
    let orth = check_orthogonality(&d).unwrap();
    ensure(orth <= 1e-10, || format!("dual orthogonality {orth:e}"))?;
    budget(start, Duration::from_secs(10), "hyperplane and dual")?;
    Ok(format!(
        "certificate residual {:.2e}, dual orthogonality {orth:.1e}",
        r.certificate_residual.unwrap_or(f64::NAN)
    ))
}

fn spanning_check<S: Scalar>(m: usize, k: usize) -> Result<(), String> {
    let fs = hyperplane_gfupb_spanning::<S>(m, k).map_err(|e| e.to_string())?;
    let psi = paired_state::<S>(m, k).unwrap();
    for (i, f) in fs.iter().enumerate() {
        let ip = inner_product(&psi, &f.wedge_expand()).unwrap();
        ensure(ip.is_zero(), || format!("M={m}: member {i} not orthogonal to ψ"))?;
    }
    let rows: Vec<Vec<S>> = fs.iter().map(|f| f.wedge_expand().to_dense()).collect();
    let rank = S::rank(&rows, 0.0);
    let want = m * (m - 1) / 2 - 1;
    ensure(rank == want, || format!("M={m}: rank {rank}, expected {want}"))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    spanning_check::<CQ>(4, 2)?;
    spanning_check::<Cyclotomic<3>>(6, 3)?;
    budget(start, Duration::from_secs(1), "spanning sets")?;
    Ok("ranks 5 and 14, all members ⊥ ψ exactly".into())
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    // Binet–Cauchy
    for i in 0..500 {
        let m = rng.random_range(2..=6);
        let n = rng.random_range(1..=m);
        let a = Factorization::new(m, random_rows(&mut rng, n, m)).unwrap();
        let b = Factorization::new(m, random_rows(&mut rng, n, m)).unwrap();
        let direct = inner_product(&a.wedge_expand(), &b.wedge_expand()).unwrap();
        let gram = a.gram_inner_product(&b).unwrap();
        let scale = a.norm() * b.norm();
        ensure((direct - gram).norm() <= 1e-10 * scale.max(1.0), || {
            format!("Binet–Cauchy pair {i}: {direct} vs {gram}")
        })?;
    }

    // ψ∧ψ = 0 exactly when the Plücker residual vanishes (grade 2)
    for i in 0..200 {
        let m = rng.random_range(4..=6);
        let psi = if i % 2 == 0 {
            Factorization::new(m, random_rows(&mut rng, 2, m)).unwrap().wedge_expand()
        } else {
            random_nvector(&mut rng, m, 2)
        };
        let ww = wedge_product(&psi, &psi).unwrap().norm() / psi.norm_sqr_f64();
        let pr = plucker_residual(&psi).unwrap();
        ensure((ww <= 1e-10) == (pr <= 1e-10), || {
            format!("sample {i}: |ψ∧ψ| {ww:e} vs Plücker {pr:e}")
        })?;
        ensure((i % 2 == 0) == (pr <= 1e-10), || format!("sample {i}: residual {pr:e}"))?;
    }

    // Slater decomposition: reconstruction and invariance under unitaries
    for i in 0..50 {
        let m = rng.random_range(2..=7);
        let psi = random_nvector(&mut rng, m, 2);
        let d = slater_decomposition(&psi, 1e-12).unwrap();
        let img = exterior_power_apply(&d.unitary, &psi).unwrap();
        let canon = canonical_form(m, &d.coeffs).unwrap();
        let err = img.sub(&canon).unwrap().norm() / psi.norm();
        ensure(err <= 1e-8, || format!("Slater sample {i}: reconstruction {err:e}"))?;
        let mut u = random_rows(&mut rng, m, m);
        orthonormalize_rows(&mut u);
        let moved = exterior_power_apply(&u, &psi).unwrap();
        let d2 = slater_decomposition(&moved, 1e-12).unwrap();
        ensure(d2.coeffs.len() == d.coeffs.len(), || format!("Slater sample {i}: rank"))?;
        for (a, b) in d.coeffs.iter().zip(&d2.coeffs) {
            ensure((a - b).abs() <= 1e-8 * d.coeffs[0], || {
                format!("Slater sample {i}: {:?} vs {:?}", d.coeffs, d2.coeffs)
            })?;
        }
    }

    // search gradient against central differences
    let mut worst_fd: f64 = 0.0;
    for i in 0..20 {
        let (n, m) = [(2, 4), (2, 5), (3, 5), (3, 6)][i % 4];
        let gens = (0..rng.random_range(1..=3))
            .map(|_| random_nvector(&mut rng, m, n))
            .collect();
        let t = Subspace::span(m, n, gens).unwrap();
        let obj = Objective::new(&t).unwrap();
        let x = random_rows(&mut rng, n, m);
        let (_, g) = obj.value_and_gradient(&x);
        let h = 1e-6;
        let mut diff: f64 = 0.0;
        let mut size: f64 = 0.0;
        for k in 0..n {
            for p in 0..m {
                let mut fd = C64::new(0.0, 0.0);
                for dir in [C64::new(1.0, 0.0), C64::new(0.0, 1.0)] {
                    let (mut xp, mut xm) = (x.clone(), x.clone());
                    xp[k][p] += dir * h;
                    xm[k][p] -= dir * h;
                    fd += dir * ((obj.value(&xp) - obj.value(&xm)) / (2.0 * h));
                }
                diff += (fd - g[k][p]).norm_sqr();
                size += g[k][p].norm_sqr();
            }
        }
        let rel = (diff / size).sqrt();
        worst_fd = worst_fd.max(rel);
        ensure(rel <= 1e-5, || format!("gradient point {i}: relative error {rel:e}"))?;
    }

    // pencil certificate
    for i in 0..100 {
        let gens = vec![random_nvector(&mut rng, 4, 2), random_nvector(&mut rng, 4, 2)];
        let t = Subspace::span(4, 2, gens).unwrap();
        let w = certify_pencil_m4(&t).map_err(|e| format!("pencil {i}: {e}"))?;
        let inside = t.contains(&w.witness, 1e-10).unwrap();
        ensure(w.plucker_residual <= 1e-10 && inside, || {
            format!("pencil {i}: residual {:e}, inside {inside}", w.plucker_residual)
        })?;
    }

    // Δ-polynomials
    for (n, m) in [(2, 4), (2, 5), (3, 5)] {
        let v = vandermonde_constant(n);
        for p in combinations(m, n) {
            let delta = delta_polynomial(n, m, &p).unwrap();
            let want = p.as_slice().iter().map(|i| i + 1).sum::<usize>() - n - n * (n - 1) / 2;
            ensure(delta.degree() == Some(want), || {
                format!("Δ{p:?}: degree {:?}, expected {want}", delta.degree())
            })?;
            let q = delta.div_exact(&v).ok_or_else(|| format!("Δ{p:?} not divisible by {v}"))?;
            ensure(q.all_nonnegative(), || format!("Δ{p:?}/{v} has a negative coefficient"))?;
        }
    }
    budget(start, Duration::from_secs(120), "property suites")?;
    Ok(format!(
        "all suites passed in {:.1?}, worst gradient error {worst_fd:.1e}",
        start.elapsed()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("minimal generalized FUPB", criterion_1),
        ("complex FUPB in ∧²C⁴", criterion_2),
        ("real impossibility", criterion_3),
        ("bipartite composition", criterion_4),
        ("hyperplane FUPB and duality", criterion_5),
        ("spanning example", criterion_6),
        ("property suites", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(run)
            .unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
