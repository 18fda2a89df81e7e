//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use spectrality::harness::run_all;
use spectrality::models::censym::{self, BaseAvailability, FocusClass};
use spectrality::models::fnspace::{build_fn, mask_element};
use spectrality::models::jordan::{self, build_jb};
use spectrality::rng::seeded;
use spectrality::spectral;
use spectrality::{AElem, CompressionBase, ModelSpace, NormFamily, Result};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        pass,
        detail: detail.into(),
    })
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Result<Outcome>); 9] = [
        ("oracle equivalence (fn, n <= 6, 1000 elements each, 1e-12)", oracle_equivalence),
        ("Riemann bound (jb n <= 8, fn n <= 12, 200 trials per mesh)", riemann_bound),
        ("eigen cross-check (jb n <= 8, 500 trials, 1e-8)", eigen_cross_check),
        ("OML structure (join weight independence, orthomodular law)", oml_structure),
        ("uniqueness and leastness of the comparability projection", uniqueness_leastness),
        ("compression-base axioms (fn exhaustive n <= 4, jb eigenbasis)", base_axioms),
        ("centrally symmetric dichotomy", censym_dichotomy),
        ("JB-algebra laws (n <= 6, 1000 trials)", jb_laws),
        ("determinism of reports", determinism),
    ];
    let mut failed = 0;
    let total = Instant::now();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run().unwrap_or_else(|e| Outcome {
            pass: false,
            detail: format!("error: {e}"),
        });
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {}: {} {name}: {} [{:.1}s]",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {}/{} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        total.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn norm(s: &ModelSpace, a: &AElem) -> Result<f64> {
    s.order_unit_norm(a)
}

fn dist(s: &ModelSpace, a: &AElem, b: &AElem) -> Result<f64> {
    s.order_unit_norm(&(a - b))
}

/// Function values with zeros and ties mixed in.
fn tied_function(n: usize, rng: &mut ChaCha8Rng) -> DVector<f64> {
    DVector::from_fn(n, |_, _| match rng.random_range(0..4) {
        0 => 0.0,
        1 => rng.random_range(-3i32..=3) as f64,
        _ => rng.random_range(-2.0..2.0),
    })
}

fn indicator(f: &DVector<f64>, pred: impl Fn(f64) -> bool) -> AElem {
    AElem::Fn(f.map(|v| if pred(v) { 1.0 } else { 0.0 }))
}

fn oracle_equivalence() -> Result<Outcome> {
    let mut worst = 0.0_f64;
    let mut count = 0;
    for n in 1..=6 {
        let m = build_fn(n)?;
        let s = &m.space;
        for t in 0..1000 {
            let mut rng = seeded(1000 + t, n as u64);
            let f = tied_function(n, &mut rng);
            let mut grid: Vec<f64> = f.iter().copied().chain([-5.0, 5.0, 0.25, -0.25]).collect();
            grid.sort_by(f64::total_cmp);
            let a = AElem::Fn(f.clone());
            let d = spectral::spectral_resolution(&m.base, &a, &grid)?;
            let fields = [
                (d.p_plus.clone(), indicator(&f, |v| v > 0.0)),
                (d.pos.clone(), AElem::Fn(f.map(|v| v.max(0.0)))),
                (d.neg.clone(), AElem::Fn(f.map(|v| (-v).max(0.0)))),
                (d.abs.clone(), AElem::Fn(f.map(f64::abs))),
                (d.cover.clone(), indicator(&f, |v| v != 0.0)),
                (d.rickart.clone(), indicator(&f, |v| v == 0.0)),
            ];
            for (got, want) in &fields {
                worst = worst.max(dist(s, got, want)?);
            }
            for (l, p) in &d.resolution {
                worst = worst.max(dist(s, p, &indicator(&f, |v| v <= *l))?);
            }
            let (lo, hi) = d.bounds;
            worst = worst.max((lo - f.min()).abs()).max((hi - f.max()).abs());
            count += 1;
        }
    }
    outcome(worst <= 1e-12, format!("{count} elements, max deviation {worst:.2e}"))
}

fn riemann_bound() -> Result<Outcome> {
    let mut worst_ratio = 0.0_f64;
    let mut runs = 0;
    let mut check = |base: &CompressionBase, a: &AElem, mesh: f64| -> Result<()> {
        let (_, err) = spectral::riemann_reconstruct(base, a, mesh)?;
        worst_ratio = worst_ratio.max(err / mesh);
        runs += 1;
        Ok(())
    };
    let jbs: Vec<_> = (1..=8).map(build_jb).collect::<Result<_>>()?;
    let fns: Vec<_> = (1..=12).map(build_fn).collect::<Result<_>>()?;
    for (k, mesh) in [0.1, 0.01, 0.001].into_iter().enumerate() {
        for t in 0..200u64 {
            let mut rng = seeded(2000 + t, k as u64);
            let scale = rng.random_range(0.1..5.0);
            let m = &jbs[t as usize % 8];
            let a = &m.space.random_element(&mut rng) * scale;
            check(&m.base, &a, mesh)?;
            let m = &fns[t as usize % 12];
            let a = &m.space.random_element(&mut rng) * scale;
            check(&m.base, &a, mesh)?;
        }
    }
    outcome(
        worst_ratio <= 1.0,
        format!("{runs} reconstructions, max error/mesh {worst_ratio:.3}"),
    )
}

fn random_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
    g.qr().q()
}

/// A symmetric matrix with eigenvalues drawn with repetitions half of the time.
fn symmetric_with_ties(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let q = random_orthogonal(n, rng);
    let tied = rng.random::<bool>();
    let d = DVector::from_fn(n, |_, _| {
        if tied {
            rng.random_range(-2i32..=2) as f64 * 0.5
        } else {
            rng.random_range(-2.0..2.0)
        }
    });
    let m = &q * DMatrix::from_diagonal(&d) * q.transpose();
    (&m + m.transpose()) * 0.5
}

fn eigen_cross_check() -> Result<Outcome> {
    let models: Vec<_> = (1..=8).map(build_jb).collect::<Result<_>>()?;
    let mut worst = 0.0_f64;
    let mut points = 0;
    for t in 0..500u64 {
        let mut rng = seeded(3000 + t, 0);
        let n = 1 + t as usize % 8;
        let m = &models[n - 1];
        let a = symmetric_with_ties(n, &mut rng);
        let oracle = SymmetricEigen::new(a.clone());
        let radius = oracle.eigenvalues.amax();
        let mut values: Vec<f64> = oracle.eigenvalues.iter().copied().collect();
        values.sort_by(f64::total_cmp);
        let mut grid = values.clone();
        grid.extend(values.windows(2).map(|w| 0.5 * (w[0] + w[1])));
        grid.extend([values[0] - 0.5, values[n - 1] + 0.5]);
        grid.sort_by(f64::total_cmp);
        let d = spectral::spectral_resolution(&m.base, &AElem::Jb(a), &grid)?;
        for (l, p) in &d.resolution {
            let cut = l + 1e-9 * (1.0 + radius);
            let mut want = DMatrix::zeros(n, n);
            for k in 0..n {
                if oracle.eigenvalues[k] <= cut {
                    let v = oracle.eigenvectors.column(k);
                    want += &v * v.transpose();
                }
            }
            worst = worst.max((p.as_jb().expect("jb") - want).amax());
            points += 1;
        }
    }
    outcome(worst <= 1e-8, format!("500 elements, {points} grid points, max deviation {worst:.2e}"))
}

fn oml_structure() -> Result<Outcome> {
    let mut worst_residual = 0.0_f64;
    let mut pairs = 0;
    let jbs: Vec<_> = (2..=5).map(build_jb).collect::<Result<_>>()?;
    let f6 = build_fn(6)?;
    let l2 = censym::space_of(NormFamily::lp(2.0, 3)?)?;
    let l2_base = censym::build_spectral_base(&l2, 100, 1)?.base().expect("smooth");
    for t in 0..500u64 {
        let mut rng = seeded(4000 + t, 0);
        let jb = &jbs[t as usize % 4];
        for (s, base) in [(&jb.space, &jb.base), (&f6.space, &f6.base), (&l2, &l2_base)] {
            let p = s.random_sharp(&mut rng);
            let q = s.random_sharp(&mut rng);
            let r = spectral::oml_join_residual(base, &p, &q, &[0.25, 0.5, 0.75])?;
            worst_residual = worst_residual.max(r);
            spectral::oml_join(base, &p, &q)?;
            pairs += 1;
        }
    }

    // orthomodular law: exhaustive on function spaces, commuting pairs of matrices
    let mut law_checks = 0;
    let mut law_ok = true;
    let mut law = |s: &ModelSpace, base: &CompressionBase, p: &AElem, q: &AElem| -> Result<()> {
        let inner = spectral::oml_meet(base, q, &s.complement(p))?;
        let rebuilt = spectral::oml_join(base, p, &inner)?;
        law_ok &= s.approx_eq(q, &rebuilt)?;
        law_checks += 1;
        Ok(())
    };
    for n in 1..=4 {
        let m = build_fn(n)?;
        for q in 0u64..(1 << n) {
            for p in 0u64..(1 << n) {
                if p & !q == 0 {
                    law(&m.space, &m.base, &mask_element(n, p), &mask_element(n, q))?;
                }
            }
        }
    }
    for t in 0..100u64 {
        let mut rng = seeded(4500 + t, 0);
        let n = 2 + t as usize % 4;
        let jb = &jbs[n - 2];
        let u = random_orthogonal(n, &mut rng);
        let proj = |mask: u64| {
            let mut m = DMatrix::zeros(n, n);
            for k in 0..n {
                if mask >> k & 1 == 1 {
                    let v = u.column(k);
                    m += &v * v.transpose();
                }
            }
            AElem::Jb(m)
        };
        let q = rng.random_range(0u64..(1 << n));
        let p = q & rng.random_range(0u64..(1 << n));
        law(&jb.space, &jb.base, &proj(p), &proj(q))?;
    }
    outcome(
        worst_residual <= 1e-9 && law_ok,
        format!(
            "{pairs} pairs, max join residual {worst_residual:.2e}; orthomodular law on {law_checks} pairs {}",
            if law_ok { "holds" } else { "FAILS" }
        ),
    )
}

/// Candidates for alternative members of `P±(a)` built independently of the
/// library: projections added on the kernel of `a`, in random bases.
fn kernel_candidates(s: &ModelSpace, a: &AElem, p: &AElem, rng: &mut ChaCha8Rng) -> Vec<AElem> {
    match (a, p) {
        (AElem::Fn(f), AElem::Fn(pv)) => {
            let zeros: Vec<usize> = (0..f.len()).filter(|&i| f[i] == 0.0).collect();
            (0..3)
                .map(|_| {
                    let mut q = pv.clone();
                    for &i in &zeros {
                        if rng.random::<bool>() {
                            q[i] = 1.0;
                        }
                    }
                    AElem::Fn(q)
                })
                .collect()
        }
        (AElem::Jb(m), AElem::Jb(pm)) => {
            let n = m.nrows();
            let e = SymmetricEigen::new(m.clone());
            let cut = 1e-9 * (1.0 + e.eigenvalues.amax());
            let kernel: Vec<DVector<f64>> = (0..n)
                .filter(|&k| e.eigenvalues[k].abs() <= cut)
                .map(|k| e.eigenvectors.column(k).into_owned())
                .collect();
            if kernel.is_empty() {
                return vec![];
            }
            let k = DMatrix::from_columns(&kernel);
            (0..3)
                .map(|_| {
                    let dim = rng.random_range(1..=kernel.len());
                    let rot = random_orthogonal(kernel.len(), rng);
                    let w = &k * rot.columns(0, dim);
                    let add = &w * w.transpose();
                    let q = pm + add;
                    AElem::Jb((&q + q.transpose()) * 0.5)
                })
                .collect()
        }
        (AElem::CenSym { y, .. }, _) => {
            let mut out = vec![s.zero(), s.unit()];
            if y.amax() > 0.0 {
                out.push(s.atom(y));
                out.push(s.atom(&(-y)));
            }
            for _ in 0..2 {
                out.push(s.random_sharp(rng));
            }
            out
        }
        _ => vec![],
    }
}

/// Elements with nontrivial kernels or on the boundary of the cone.
fn degenerate_element(s: &ModelSpace, rng: &mut ChaCha8Rng) -> AElem {
    match s.kind() {
        spectrality::ModelKind::Fn { n } => {
            AElem::Fn(DVector::from_fn(*n, |_, _| if rng.random_bool(0.4) { 0.0 } else { rng.random_range(-2.0..2.0) }))
        }
        spectrality::ModelKind::Jb { n } => {
            let q = random_orthogonal(*n, rng);
            let d = DVector::from_fn(*n, |_, _| if rng.random_bool(0.4) { 0.0 } else { rng.random_range(-2.0..2.0) });
            let m = &q * DMatrix::from_diagonal(&d) * q.transpose();
            AElem::Jb((&m + m.transpose()) * 0.5)
        }
        spectrality::ModelKind::CenSym { .. } => {
            let p = s.random_sharp(rng);
            let t = rng.random_range(0.1..2.0);
            match rng.random_range(0..4) {
                0 => &p * t,
                1 => &p * -t,
                2 => s.zero(),
                _ => s.random_element(rng),
            }
        }
    }
}

fn uniqueness_leastness() -> Result<Outcome> {
    let mut spaces: Vec<(ModelSpace, CompressionBase)> = Vec::new();
    let f = build_fn(5)?;
    spaces.push((f.space, f.base));
    let j = build_jb(4)?;
    spaces.push((j.space, j.base));
    for fam in [NormFamily::lp(2.0, 3)?, NormFamily::lp(3.0, 2)?, NormFamily::stadium(1.0, 1.0)?] {
        let s = censym::space_of(fam)?;
        let b = censym::build_spectral_base(&s, 100, 1)?.base().expect("smooth family");
        spaces.push((s, b));
    }
    let mut alternatives = 0;
    let mut nontrivial = 0;
    let mut failures = Vec::new();
    for (s, base) in &spaces {
        for t in 0..500u64 {
            let mut rng = seeded(5000 + t, 0);
            let a = if rng.random() { degenerate_element(s, &mut rng) } else { s.random_element(&mut rng) };
            let p = spectral::p_pm(base, &a)?;
            let (pos, neg, _) = spectral::decompose_with(base, &a, &p)?;
            let mut candidates = kernel_candidates(s, &a, &p, &mut rng);
            candidates.extend(spectral::p_pm_alternatives(base, &a)?);
            let built_from_kernel = !matches!(s.kind(), spectrality::ModelKind::CenSym { .. });
            for q in candidates {
                let member = base.contains(&q)? && spectral::in_p_pm(base, &a, &q)?;
                if !member {
                    if built_from_kernel {
                        failures.push(format!("{}: kernel extension rejected", s.descriptor()));
                    }
                    continue;
                }
                alternatives += 1;
                if dist(s, &q, &p)? > 1e-6 {
                    nontrivial += 1;
                }
                let (pos2, neg2, _) = spectral::decompose_with(base, &a, &q)?;
                let tol = 1e-9 * (1.0 + norm(s, &a)?);
                if dist(s, &pos, &pos2)? > tol || dist(s, &neg, &neg2)? > tol {
                    failures.push(format!("{}: decomposition differs", s.descriptor()));
                }
                if !s.le(&p, &q)? {
                    failures.push(format!("{}: p_pm(a) not below an alternative", s.descriptor()));
                }
            }
        }
    }
    failures.dedup();
    outcome(
        failures.is_empty() && nontrivial > 0,
        format!(
            "{} elements, {alternatives} members of P±(a) checked ({nontrivial} distinct from p_pm){}",
            500 * spaces.len(),
            if failures.is_empty() { String::new() } else { format!("; {}", failures.join(", ")) }
        ),
    )
}

fn base_axioms() -> Result<Outcome> {
    let mut details = Vec::new();
    let mut pass = true;
    for n in 1..=4 {
        let m = build_fn(n)?;
        pass &= m.base.exhaustive();
        let r = m.base.validate(200, 6)?;
        pass &= r.passed();
        if let Some(c) = r.cases.iter().find(|c| c.check == "base.composition_law") {
            details.push(format!("fn{n}: {}", c.detail));
        }
    }
    for n in 2..=5 {
        let m = build_jb(n)?;
        let r = m.base.validate(200, 6)?;
        pass &= r.passed();
        if let Some(c) = r.cases.iter().find(|c| c.check == "base.composition_law") {
            details.push(format!("jb{n}: {}", c.detail));
        }
        for c in r.failures() {
            details.push(format!("jb{n} FAILS {}", c.check));
        }
    }
    outcome(pass, details.join("; "))
}

/// The full spectral pipeline on one element: comparability, decomposition,
/// cover, Rickart image, resolution and a Riemann sum at mesh 0.01.
fn pipeline(s: &ModelSpace, base: &CompressionBase, a: &AElem) -> Result<bool> {
    let (lo, hi) = s.spectral_bounds(a)?;
    let grid: Vec<f64> = (0..=4).map(|k| lo - 0.1 + (hi - lo + 0.2) * k as f64 / 4.0).collect();
    let d = spectral::spectral_resolution(base, a, &grid)?;
    let (_, err) = spectral::riemann_reconstruct(base, a, 0.01)?;
    Ok(d.violations(base)?.is_empty() && err <= 0.01)
}

fn censym_dichotomy() -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut pass = true;

    // (a) ℓ_p, 1 < p < ∞
    let mut foci = 0;
    let mut elements = 0;
    for p in [1.5, 2.0, 3.0] {
        for n in [2, 3] {
            let s = censym::space_of(NormFamily::lp(p, n)?)?;
            let base = match censym::build_spectral_base(&s, 100, 1)? {
                BaseAvailability::Available(b) => b,
                BaseAvailability::Unavailable(_) => {
                    pass = false;
                    notes.push(format!("{} unexpectedly unavailable", s.descriptor()));
                    continue;
                }
            };
            for t in 0..200u64 {
                let mut rng = seeded(7000 + t, 0);
                let focus = s.random_sharp(&mut rng);
                if censym::classify_focus(&s, &focus)?.class != FocusClass::Compression {
                    pass = false;
                    notes.push(format!("{} focus not a compression", s.descriptor()));
                    break;
                }
                foci += 1;
            }
            for t in 0..1000u64 {
                let mut rng = seeded(7500 + t, 0);
                let a = if t % 4 == 0 { degenerate_element(&s, &mut rng) } else { s.random_element(&mut rng) };
                if !pipeline(&s, &base, &a)? {
                    pass = false;
                    notes.push(format!("{} pipeline fails", s.descriptor()));
                    break;
                }
                elements += 1;
            }
        }
    }
    notes.push(format!("(a) {foci} foci classified compression, {elements} elements through the pipeline"));

    // (b) ℓ₁ and ℓ∞ in the plane
    for fam in [NormFamily::lp(1.0, 2)?, NormFamily::lp(f64::INFINITY, 2)?] {
        let s = censym::space_of(fam)?;
        match censym::build_spectral_base(&s, 300, 1)? {
            BaseAvailability::Available(_) => {
                pass = false;
                notes.push(format!("(b) {} unexpectedly available", s.descriptor()));
            }
            BaseAvailability::Unavailable(cert) => {
                let verified = match &cert.f3_witness {
                    Some(e) => {
                        s.is_effect(e)?
                            && norm(&s, &cert.map.apply(e))? <= 1e-9
                            && !s.le(e, &s.complement(&cert.focus))?
                    }
                    None => false,
                };
                pass &= verified;
                notes.push(format!(
                    "(b) {} unavailable, F3 certificate {}",
                    s.descriptor(),
                    if verified { "verified" } else { "NOT verified" }
                ));
            }
        }
    }

    // (c) stadium
    let s = censym::space_of(NormFamily::stadium(1.0, 1.0)?)?;
    let base = censym::build_spectral_base(&s, 100, 1)?.base();
    let mut stadium_ok = base.is_some();
    if let Some(base) = &base {
        for t in 0..1000u64 {
            let mut rng = seeded(7900 + t, 0);
            let a = if t % 4 == 0 { degenerate_element(&s, &mut rng) } else { s.random_element(&mut rng) };
            stadium_ok &= pipeline(&s, base, &a)?;
        }
    }
    let focus = AElem::CenSym {
        a0: 0.5,
        y: DVector::from_vec(vec![0.0, 0.5]),
    };
    let j1 = censym::build_retraction(&s, &focus, &DVector::from_vec(vec![0.0, 1.0]))?;
    let j2 = censym::build_retraction(&s, &focus, &DVector::from_vec(vec![0.5, 1.0]))?;
    let distance = j1.distance(&j2);
    let f1 = j1.check_f_axioms(500, 3)?;
    let f2 = j2.check_f_axioms(500, 4)?;
    let c1 = j1.is_compression(500, 5)?;
    let c2 = j2.is_compression(500, 6)?;
    stadium_ok &= f1.f_compression && f2.f_compression && distance >= 0.1 && !c1 && !c2;
    pass &= stadium_ok;
    notes.push(format!(
        "(c) stadium base {}, two F-compressions at distance {distance:.3}, compressions: {c1}/{c2}",
        if base.is_some() { "available" } else { "MISSING" }
    ));
    outcome(pass, notes.join("; "))
}

fn jb_laws() -> Result<Outcome> {
    let mut identity = 0.0_f64;
    let mut peirce = 0.0_f64;
    let mut orthogonal = true;
    let mut rickart = true;
    for n in 1..=6 {
        let m = build_jb(n)?;
        let s = &m.space;
        for t in 0..1000u64 {
            let mut rng = seeded(8000 + t, n as u64);
            let a = s.random_element(&mut rng);
            let b = s.random_element(&mut rng);
            identity = identity.max(jordan::jordan_identity_residual(
                a.as_jb().expect("jb"),
                b.as_jb().expect("jb"),
            )?);
            let p = s.random_sharp(&mut rng);
            peirce = peirce.max(jordan::peirce_decompose(s, &a, &p)?.residual);
            let (pos, neg, _) = spectral::orthogonal_decomposition(&m.base, &a)?;
            orthogonal &= jordan::jb_orthogonal(s, &pos, &neg)?;
        }
        let mut rng = seeded(8500, n as u64);
        let x = {
            let a = degenerate_element(s, &mut rng);
            spectral::orthogonal_decomposition(&m.base, &a)?.0
        };
        rickart &= jordan::rickart_a1_check(s, &x, 1000, 9)?.passed();
    }
    outcome(
        identity <= 1e-10 && peirce <= 1e-9 && orthogonal && rickart,
        format!(
            "Jordan identity residual {identity:.2e}, Peirce residual {peirce:.2e}, a+ ⊥ a- {}, Rickart A1 {}",
            if orthogonal { "holds" } else { "FAILS" },
            if rickart { "passes" } else { "FAILS" }
        ),
    )
}

fn determinism() -> Result<Outcome> {
    let mut spaces = vec![ModelSpace::function_space(4)?, ModelSpace::jordan(3)?];
    for fam in [NormFamily::lp(1.5, 2)?, NormFamily::lp(1.0, 2)?, NormFamily::stadium(1.0, 1.0)?] {
        spaces.push(ModelSpace::centrally_symmetric(fam)?);
    }
    let mut order: Vec<usize> = (0..spaces.len()).collect();
    order.shuffle(&mut seeded(9, 0));
    let mut identical = 0;
    for &i in &order {
        let first = run_all(&spaces[i], 60, 11)?.to_json_string();
        let second = run_all(&spaces[i], 60, 11)?.to_json_string();
        if first == second {
            identical += 1;
        }
    }
    outcome(
        identical == spaces.len(),
        format!("{identical}/{} models produced byte-identical reports on rerun", spaces.len()),
    )
}
