//! Seeded property suites and their reports.
//!
//! Every trial `j` of case `c` draws from its own stream `(seed + j, c)`, so
//! trials run in parallel without changing outcomes and shards with seeds
//! `s, s + t, …` reproduce a sequential run over the union of their trials.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::compression::CompressionBase;
use crate::error::{Error, Result};
use crate::json::{element_to_json, num};
use crate::models::censym::{self, BaseAvailability, Certificate, FocusClass};
use crate::models::{fnspace, jordan, spectral_base};
use crate::report::{merge_reports, Case, Report};
use crate::rng::seeded;
use crate::space::{AElem, ModelKind, ModelSpace};
use crate::spectral::{self, SpectralData};

pub const SUITES: [&str; 6] = ["core", "compressions", "spectral", "fn-oracle", "jb", "censym"];

/// Suites registered for a model, in run order.
pub fn suites_for(space: &ModelSpace) -> Vec<&'static str> {
    let own = match space.kind() {
        ModelKind::Fn { .. } => "fn-oracle",
        ModelKind::Jb { .. } => "jb",
        ModelKind::CenSym { .. } => "censym",
    };
    vec!["core", "compressions", "spectral", own]
}

pub fn run_suite(name: &str, space: &ModelSpace, trials: usize, seed: u64) -> Result<Report> {
    if !SUITES.contains(&name) {
        return Err(Error::UnknownSuite(name.to_string()));
    }
    if !suites_for(space).contains(&name) {
        return Err(Error::UnknownSuite(format!(
            "{name} does not apply to {}",
            space.descriptor()
        )));
    }
    let mut report = Report::new(name, space);
    let cases = match name {
        "core" => core_suite(space, trials, seed)?,
        "compressions" => compressions_suite(space, trials, seed)?,
        "spectral" => spectral_suite(space, trials, seed)?,
        "fn-oracle" => fn_oracle_suite(space, trials, seed)?,
        "jb" => jb_suite(space, trials, seed)?,
        _ => censym_suite(space, trials, seed)?,
    };
    for c in cases {
        report.push(c);
    }
    Ok(report)
}

/// All registered suites of a model, merged.
pub fn run_all(space: &ModelSpace, trials: usize, seed: u64) -> Result<Report> {
    let reports = suites_for(space)
        .into_iter()
        .map(|name| run_suite(name, space, trials, seed))
        .collect::<Result<Vec<_>>>()?;
    merge_reports(reports)
}

/// Runs `trials` independent trials of a property. `f` returns a witness on
/// failure; errors count as failures. The reported witness is the one of the
/// lowest failing trial.
fn property<F>(check: &str, trials: usize, seed: u64, case: u64, detail: &str, f: F) -> Case
where
    F: Fn(&mut ChaCha8Rng) -> Result<Option<Value>> + Sync,
{
    let outcomes: Vec<Option<Value>> = (0..trials)
        .into_par_iter()
        .map(|j| {
            let mut rng = seeded(seed.wrapping_add(j as u64), case);
            match f(&mut rng) {
                Ok(w) => w,
                Err(e) => Some(json!({ "error": e.to_string() })),
            }
        })
        .collect();
    let first = outcomes
        .into_iter()
        .enumerate()
        .find_map(|(j, w)| w.map(|w| (j, w)));
    Case::with_witness(
        check,
        first.is_none(),
        first.map(|(j, w)| json!({ "trial_seed": seed.wrapping_add(j as u64), "witness": w })),
        trials,
        seed,
        detail,
    )
}

/// A witness unless `ok`.
fn unless(ok: bool, w: impl FnOnce() -> Value) -> Option<Value> {
    if ok {
        None
    } else {
        Some(w())
    }
}

/// Trial count for checks that run an inner randomized search per trial.
fn heavy(trials: usize) -> usize {
    trials.min(50)
}

fn slack(s: &ModelSpace, a: &AElem) -> Result<f64> {
    Ok(s.tol().eq_tol * (1.0 + s.order_unit_norm(a)?))
}

// ---- core -------------------------------------------------------------------

fn core_suite(s: &ModelSpace, trials: usize, seed: u64) -> Result<Vec<Case>> {
    let el = |a: &AElem| element_to_json(s, a);
    Ok(vec![
        property("order.norm_sandwich", trials, seed, 0, "-‖a‖ ≤ a ≤ ‖a‖", |rng| {
            let a = s.random_element(rng);
            let n = s.order_unit_norm(&a)?;
            let ok = s.le(&a, &s.scalar(n))? && s.le(&s.scalar(-n), &a)?;
            Ok(unless(ok, || el(&a)))
        }),
        property("order.spectral_bounds", trials, seed, 1, "L ≤ a ≤ U, max(|L|, |U|) = ‖a‖", |rng| {
            let a = s.random_element(rng);
            let (lo, hi) = s.spectral_bounds(&a)?;
            let n = s.order_unit_norm(&a)?;
            let ok = lo <= hi
                && s.le(&s.scalar(lo), &a)?
                && s.le(&a, &s.scalar(hi))?
                && (lo.abs().max(hi.abs()) - n).abs() <= slack(s, &a)?;
            Ok(unless(ok, || el(&a)))
        }),
        property("order.norming_state", trials, seed, 2, "|⟨a, ρ⟩| = ‖a‖ for a norming (signed) state", |rng| {
            let a = s.random_element(rng);
            let rho = s.norming_state(&a)?;
            let value = s.pairing(&a, &rho)?;
            let ok = (value - s.order_unit_norm(&a)?).abs() <= slack(s, &a)?
                && (s.base_norm(&rho)? - 1.0).abs() <= s.tol().eq_tol
                && (s.pairing(&s.unit(), &rho)?.abs() - 1.0).abs() <= s.tol().eq_tol;
            Ok(unless(ok, || el(&a)))
        }),
        property("effects.complement", trials, seed, 3, "e and 1 - e are effects", |rng| {
            let e = s.random_effect(rng)?;
            let ok = s.is_effect(&e)? && s.is_effect(&s.complement(&e))?;
            Ok(unless(ok, || el(&e)))
        }),
        property("states.pairing", trials, seed, 4, "states are positive, normalized and map effects into [0, 1]", |rng| {
            let rho = if rng.random() { s.random_state(rng) } else { s.random_pure_state(rng) };
            let e = s.random_effect(rng)?;
            let v = s.pairing(&e, &rho)?;
            let tol = s.tol().eq_tol;
            let ok = s.is_state(&rho)? && v >= -tol && v <= 1.0 + tol;
            Ok(unless(ok, || el(&e)))
        }),
        property(
            "sharp.random_sharp",
            heavy(trials),
            seed,
            5,
            "sampled sharp elements are sharp, and extremal exactly when expected",
            |rng| {
                let p = s.random_sharp(rng);
                let expected = match (s.family(), p.as_censym()) {
                    (Some(f), Some((_, y))) if y.amax() > 0.0 => f.dual_ball_face(&(y * 2.0)).len() == 1,
                    _ => true,
                };
                let ok = s.is_sharp(&p)? && s.is_extremal(&p, 10, rng.random())? == expected;
                Ok(unless(ok, || el(&p)))
            },
        ),
    ])
}

// ---- compressions -------------------------------------------------------------

/// Verifies a failing-focus certificate: the retraction annihilates an effect
/// that is not below the complement of its focus.
fn certificate_case(s: &ModelSpace, check: &str, cert: &Certificate, seed: u64) -> Result<Case> {
    let verified = match &cert.f3_witness {
        Some(e) => {
            let image = cert.map.apply(e);
            s.is_effect(e)?
                && s.order_unit_norm(&image)? <= slack(s, e)?
                && !s.le(e, &s.complement(&cert.focus))?
        }
        None => false,
    };
    let detail = format!(
        "expected negative: no compression base ({}); focus {}, F3 counterexample {}",
        cert.reason,
        element_to_json(s, &cert.focus),
        cert.f3_witness
            .as_ref()
            .map(|e| element_to_json(s, e).to_string())
            .unwrap_or_else(|| "missing".into())
    );
    Ok(Case::with_witness(check, verified, None, 1, seed, &detail))
}

fn compressions_suite(s: &ModelSpace, trials: usize, seed: u64) -> Result<Vec<Case>> {
    let base = match spectral_base(s, heavy(trials).max(100), seed)? {
        BaseAvailability::Available(b) => b,
        BaseAvailability::Unavailable(cert) => {
            return Ok(vec![certificate_case(s, "base.unavailable", &cert, seed)?]);
        }
    };
    let el = |a: &AElem| element_to_json(s, a);
    let mut cases = base.validate(trials, seed)?.cases;
    cases.push(property(
        "compression.f_axioms",
        heavy(trials),
        seed,
        10,
        "J_p is an F-compression with focus p",
        |rng| {
            let p = sample_projection(&base, rng)?;
            let j = base.compression(&p)?;
            let check = j.check_f_axioms(20, rng.random())?;
            let ok = check.f_compression && s.approx_eq(&j.apply(&s.unit()), &p)?;
            Ok(unless(ok, || el(&p)))
        },
    ));
    cases.push(property(
        "compression.complementary",
        heavy(trials),
        seed,
        11,
        "J_p J_(1-p) = J_(1-p) J_p = 0, and J_p is a compression exactly when expected",
        |rng| {
            let p = sample_projection(&base, rng)?;
            let j = base.compression(&p)?;
            let k = base.compression(&s.complement(&p))?;
            let tol = s.tol().eq_tol;
            // sharp foci of non-strictly-convex norms carry F-compressions that are not compressions
            let expected = match p.as_censym() {
                Some((_, y)) if y.amax() > 0.0 => censym::classify_focus(s, &p)?.class == FocusClass::Compression,
                _ => true,
            };
            let ok = (j.matrix() * k.matrix()).amax() <= tol
                && (k.matrix() * j.matrix()).amax() <= tol
                && j.is_compression(20, rng.random())? == expected;
            Ok(unless(ok, || el(&p)))
        },
    ));
    Ok(cases)
}

/// A base projection: a random sharp element, or a witness of the base.
fn sample_projection(base: &CompressionBase, rng: &mut ChaCha8Rng) -> Result<AElem> {
    let s = base.space();
    if rng.random_bool(0.7) {
        let p = s.random_sharp(rng);
        if base.contains(&p)? {
            return Ok(p);
        }
    }
    let w = base.witnesses();
    Ok(w[rng.random_range(0..w.len())].clone())
}

// ---- spectral ---------------------------------------------------------------

/// A random element; half of the draws are compressed by a random base
/// projection so that kernels and repeated spectral values occur.
fn sample_spectral_element(base: &CompressionBase, rng: &mut ChaCha8Rng) -> Result<AElem> {
    let s = base.space();
    let a = s.random_element(rng);
    Ok(if rng.random() {
        let q = sample_projection(base, rng)?;
        base.compress(&q, &a)?
    } else {
        a
    })
}

fn spectral_suite(s: &ModelSpace, trials: usize, seed: u64) -> Result<Vec<Case>> {
    let base = match spectral_base(s, heavy(trials).max(100), seed)? {
        BaseAvailability::Available(b) => b,
        BaseAvailability::Unavailable(cert) => {
            return Ok(vec![certificate_case(s, "spectral.comparability_unavailable", &cert, seed)?]);
        }
    };
    let base = &base;
    let el = |a: &AElem| element_to_json(s, a);
    let mut cases = Vec::new();
    cases.push(property(
        "spectral.invariants",
        trials,
        seed,
        20,
        "decomposition, cover, Rickart image and resolution are consistent",
        |rng| {
            let a = sample_spectral_element(base, rng)?;
            let (lo, hi) = s.spectral_bounds(&a)?;
            let grid: Vec<f64> = (0..=6).map(|k| lo - 0.1 + (hi - lo + 0.2) * k as f64 / 6.0).collect();
            let data = spectral::spectral_resolution(base, &a, &grid)?;
            let bad = data.violations(base)?;
            Ok(unless(bad.is_empty(), || json!({ "a": el(&a), "violations": bad })))
        },
    ));
    cases.push(property(
        "spectral.uniqueness_and_leastness",
        trials,
        seed,
        21,
        "every sampled q ∈ P±(a) gives the same decomposition and p_pm(a) ≤ q",
        |rng| {
            let a = sample_spectral_element(base, rng)?;
            let p = spectral::p_pm(base, &a)?;
            let (pos, neg, _) = spectral::decompose_with(base, &a, &p)?;
            for q in spectral::p_pm_alternatives(base, &a)? {
                if !spectral::in_p_pm(base, &a, &q)? {
                    return Ok(Some(json!({ "a": el(&a), "not_in_p_pm": el(&q) })));
                }
                let (pos2, neg2, _) = spectral::decompose_with(base, &a, &q)?;
                let same = s.order_unit_norm(&(&pos - &pos2))? <= slack(s, &a)?
                    && s.order_unit_norm(&(&neg - &neg2))? <= slack(s, &a)?;
                if !same || !s.le(&p, &q)? {
                    return Ok(Some(json!({ "a": el(&a), "q": el(&q) })));
                }
            }
            Ok(None)
        },
    ));
    cases.push(property(
        "spectral.rickart_annihilates",
        trials,
        seed,
        22,
        "J_(a*)(a) = 0 and a* is a base projection",
        |rng| {
            let a = sample_spectral_element(base, rng)?;
            let r = spectral::rickart_map(base, &a)?;
            let ok = base.contains(&r)? && s.order_unit_norm(&base.compress(&r, &a)?)? <= slack(s, &a)?;
            Ok(unless(ok, || el(&a)))
        },
    ));
    cases.push(property(
        "spectral.cover_dominates",
        trials,
        seed,
        23,
        "e ≤ e⁰ with e⁰ a base projection, and e⁰ ≤ every base witness above e",
        |rng| {
            let e = s.random_effect(rng)?;
            let c = base.cover(&e)?;
            if !base.contains(&c)? || !s.le(&e, &c)? {
                return Ok(Some(el(&e)));
            }
            for q in base.witnesses() {
                if s.le(&e, &q)? && !s.le(&c, &q)? {
                    return Ok(Some(json!({ "e": el(&e), "above": el(&q) })));
                }
            }
            Ok(None)
        },
    ));
    for (k, mesh) in [0.1, 0.01].into_iter().enumerate() {
        cases.push(property(
            &format!("spectral.riemann_mesh_{mesh}"),
            trials,
            seed,
            24 + k as u64,
            "‖a - Σ ξᵢ pᵢ‖ ≤ mesh",
            |rng| {
                let a = sample_spectral_element(base, rng)?;
                let (_, err) = spectral::riemann_reconstruct(base, &a, mesh)?;
                Ok(unless(err <= mesh, || json!({ "a": el(&a), "error": num(err) })))
            },
        ));
    }
    cases.push(property(
        "spectral.simple_approximation",
        trials,
        seed,
        26,
        "a₁ ≤ a₂ ≤ … ≤ a with ‖a - a_k‖ ≤ 2‖a‖·2^-k",
        |rng| {
            let a = sample_spectral_element(base, rng)?;
            let seq = spectral::simple_approximation(base, &a, 4)?;
            let n = s.order_unit_norm(&a)?;
            let mut ok = true;
            for (k, ak) in seq.iter().enumerate() {
                let bound = 2.0 * n * 0.5_f64.powi(k as i32 + 1);
                ok &= s.le(ak, &a)? && s.order_unit_norm(&(&a - ak))? <= bound + slack(s, &a)?;
            }
            for w in seq.windows(2) {
                ok &= s.le(&w[0], &w[1])?;
            }
            Ok(unless(ok, || el(&a)))
        },
    ));
    cases.push(property(
        "oml.join_weight_independence",
        trials,
        seed,
        27,
        "(λp + (1-λ)q)⁰ is the same for λ ∈ {¼, ½, ¾}",
        |rng| {
            let p = sample_projection(base, rng)?;
            let q = sample_projection(base, rng)?;
            let r = spectral::oml_join_residual(base, &p, &q, &[0.25, 0.75])?;
            Ok(unless(r <= s.tol().eq_tol, || json!({ "p": el(&p), "q": el(&q), "residual": num(r) })))
        },
    ));
    cases.push(property(
        "oml.orthomodular_law",
        trials,
        seed,
        28,
        "p ≤ q implies q = p ∨ (q ∧ (1 - p))",
        |rng| {
            let p = sample_projection(base, rng)?;
            let r = sample_projection(base, rng)?;
            let q = spectral::oml_join(base, &p, &r)?;
            let rebuilt = spectral::oml_join(base, &p, &spectral::oml_meet(base, &q, &s.complement(&p))?)?;
            let ok = s.le(&p, &q)? && s.approx_eq(&q, &rebuilt)?;
            Ok(unless(ok, || json!({ "p": el(&p), "q": el(&q) })))
        },
    ));
    Ok(cases)
}

// ---- fn-oracle ----------------------------------------------------------------

/// A function with ties, zeros and integer values mixed in.
fn oracle_function(n: usize, rng: &mut ChaCha8Rng) -> nalgebra::DVector<f64> {
    nalgebra::DVector::from_fn(n, |_, _| match rng.random_range(0..4) {
        0 => 0.0,
        1 => rng.random_range(-3i32..=3) as f64,
        _ => rng.random_range(-2.0..2.0),
    })
}

fn fn_oracle_suite(s: &ModelSpace, trials: usize, seed: u64) -> Result<Vec<Case>> {
    let n = s.n();
    let model = fnspace::build_fn_in(s.clone(), n)?;
    let base = &model.base;
    let el = |a: &AElem| element_to_json(s, a);
    Ok(vec![
        property(
            "oracle.spectral_equivalence",
            trials,
            seed,
            30,
            "generic spectral data equal the coordinatewise formulas within 1e-12",
            |rng| {
                let f = oracle_function(n, rng);
                let mut grid: Vec<f64> = f.iter().copied().chain([-4.0, 4.0, 0.5]).collect();
                grid.sort_by(f64::total_cmp);
                let a = AElem::Fn(f.clone());
                let got = spectral::spectral_resolution(base, &a, &grid)?;
                let want = fnspace::oracle_spectral(&f, &grid);
                let ok = spectral_distance(s, &got, &want)? <= 1e-12;
                Ok(unless(ok, || el(&a)))
            },
        ),
        property(
            "oracle.compression_matrices",
            trials,
            seed,
            31,
            "J_χS is multiplication by χ_S",
            |rng| {
                let mask = rng.random_range(0..(1u64 << n));
                let j = base.compression(&fnspace::mask_element(n, mask))?;
                let ok = (j.matrix() - fnspace::mask_matrix(n, mask)).amax() <= 1e-12;
                Ok(unless(ok, || json!({ "mask": mask })))
            },
        ),
        property(
            "oracle.mackey_compatibility",
            trials,
            seed,
            32,
            "all pairs of effects are Mackey compatible",
            |rng| {
                let e = s.random_effect(rng)?;
                let g = s.random_effect(rng)?;
                let (ev, gv) = (e.as_fn().expect("fn"), g.as_fn().expect("fn"));
                let ok = fnspace::mackey_holds(ev, gv, &fnspace::mackey_witness(ev, gv), s.tol().eq_tol);
                Ok(unless(ok, || json!({ "e": el(&e), "g": el(&g) })))
            },
        ),
    ])
}

/// Largest order-unit distance between corresponding fields.
pub fn spectral_distance(s: &ModelSpace, a: &SpectralData, b: &SpectralData) -> Result<f64> {
    if a.resolution.len() != b.resolution.len() {
        return Ok(f64::INFINITY);
    }
    let mut d = 0.0_f64;
    for (x, y) in [
        (&a.p_plus, &b.p_plus),
        (&a.pos, &b.pos),
        (&a.neg, &b.neg),
        (&a.abs, &b.abs),
        (&a.cover, &b.cover),
        (&a.rickart, &b.rickart),
    ] {
        d = d.max(s.order_unit_norm(&(x - y))?);
    }
    for ((l1, p1), (l2, p2)) in a.resolution.iter().zip(&b.resolution) {
        d = d.max((l1 - l2).abs()).max(s.order_unit_norm(&(p1 - p2))?);
    }
    d = d.max((a.bounds.0 - b.bounds.0).abs()).max((a.bounds.1 - b.bounds.1).abs());
    Ok(d)
}

// ---- jb -----------------------------------------------------------------------

fn jb_suite(s: &ModelSpace, trials: usize, seed: u64) -> Result<Vec<Case>> {
    let model = jordan::build_jb_in(s.clone())?;
    let base = &model.base;
    let el = |a: &AElem| element_to_json(s, a);
    let mat = |a: &AElem| a.as_jb().expect("jb").clone();
    let mut cases = vec![
        property("jordan.identity", trials, seed, 40, "(a∘b)∘a² = a∘(b∘a²)", |rng| {
            let a = s.random_element(rng);
            let b = s.random_element(rng);
            let r = jordan::jordan_identity_residual(&mat(&a), &mat(&b))?;
            let scale = 1.0 + s.order_unit_norm(&a)?.powi(3) * s.order_unit_norm(&b)?;
            Ok(unless(r <= 1e-10 * scale, || json!({ "a": el(&a), "b": el(&b), "residual": num(r) })))
        }),
        property("jordan.peirce", trials, seed, 41, "p∘a₁ = a₁, p∘a₂ = ½a₂, p∘a₃ = 0", |rng| {
            let a = s.random_element(rng);
            let p = s.random_sharp(rng);
            let r = jordan::peirce_decompose(s, &a, &p)?.residual;
            Ok(unless(r <= 1e-9 * (1.0 + s.order_unit_norm(&a)?), || {
                json!({ "a": el(&a), "p": el(&p), "residual": num(r) })
            }))
        }),
        property("jordan.parts_orthogonal", trials, seed, 42, "a⁺ ⊥ a⁻ (a⁺ ∘ a⁻ = 0)", |rng| {
            let a = sample_spectral_element(base, rng)?;
            let (pos, neg, _) = spectral::orthogonal_decomposition(base, &a)?;
            let ok = jordan::jb_orthogonal(s, &pos, &neg)? && jordan::orthogonal_via_carrier(s, &pos, &neg)?;
            Ok(unless(ok, || el(&a)))
        }),
        property(
            "jordan.eigen_cross_check",
            trials,
            seed,
            43,
            "p_λ equals the sum of eigenprojections with eigenvalue ≤ λ",
            |rng| {
                let a = sample_spectral_element(base, rng)?;
                let clusters = jordan::spectral_clusters(s, &a)?;
                let mut grid: Vec<f64> = clusters.iter().map(|(l, _)| *l).collect();
                grid.extend(clusters.windows(2).map(|w| 0.5 * (w[0].0 + w[1].0)));
                grid.sort_by(f64::total_cmp);
                let data = spectral::spectral_resolution(base, &a, &grid)?;
                let n = s.n();
                for (l, p) in &data.resolution {
                    let mut want = nalgebra::DMatrix::zeros(n, n);
                    for (v, q) in &clusters {
                        if v <= l {
                            want += q;
                        }
                    }
                    if (mat(p) - want).amax() > 1e-8 {
                        return Ok(Some(json!({ "a": el(&a), "lambda": num(*l) })));
                    }
                }
                Ok(None)
            },
        ),
        property(
            "jordan.retraction_uniqueness",
            heavy(trials),
            seed,
            44,
            "among candidate retractions with focus p, only U_p is an F-compression",
            |rng| {
                let p = s.random_sharp(rng);
                let up = jordan::u_map(s, &p)?;
                for j in jordan::retraction_candidates(s, &p)? {
                    if j.check_f_axioms(10, rng.random())?.f_compression && j.distance(&up) > 1e-9 {
                        return Ok(Some(el(&p)));
                    }
                }
                Ok(None)
            },
        ),
    ];
    let mut rng = seeded(seed, 45);
    let x = {
        let a = s.random_element(&mut rng);
        let q = s.random_sharp(&mut rng);
        let (pos, _, _) = spectral::orthogonal_decomposition(base, &base.compress(&q, &a)?)?;
        pos
    };
    cases.extend(jordan::rickart_a1_check(s, &x, trials, seed)?.cases);
    Ok(cases)
}

// ---- censym -------------------------------------------------------------------

fn censym_suite(s: &ModelSpace, trials: usize, seed: u64) -> Result<Vec<Case>> {
    let family = s.family().expect("censym space").clone();
    let decision = censym::decide_spectral_duality(s)?;
    let el = |a: &AElem| element_to_json(s, a);
    let mut cases = vec![Case::simple(
        "censym.duality_decision",
        decision.holds == (family.smooth() && family.strictly_convex()),
        seed,
        &format!(
            "smooth {}, strictly convex {}, spectral duality {}",
            decision.smooth, decision.strictly_convex, decision.holds
        ),
    )];
    let smooth = family.smooth();
    let strict = family.strictly_convex();
    cases.push(property(
        "censym.focus_classification",
        trials,
        seed,
        50,
        "sharp foci of smooth norms carry F-compressions, and compressions iff the norm is also strictly convex at the focus",
        |rng| {
            let p = s.random_sharp(rng);
            let c = censym::classify_focus(s, &p)?;
            let ok = match (smooth, strict) {
                (true, true) => c.class == FocusClass::Compression,
                (true, false) => matches!(c.class, FocusClass::Compression | FocusClass::FCompression),
                _ => true,
            };
            Ok(unless(ok, || json!({ "focus": el(&p), "class": c.class.label() })))
        },
    ));
    cases.push(property(
        "censym.classification_matches_axioms",
        heavy(trials),
        seed,
        51,
        "the retraction along each representative passes (F3) iff classified as an F-compression",
        |rng| {
            let p = s.random_sharp(rng);
            let c = censym::classify_focus(s, &p)?;
            if c.class == FocusClass::NoRetraction {
                return Ok(None);
            }
            for r in &c.representatives {
                let j = censym::build_retraction(s, &p, &r.x)?;
                let check = j.check_f_axioms(20, rng.random())?;
                if !check.retraction || (r.f_compression && !check.f3) {
                    return Ok(Some(json!({ "focus": el(&p), "class": c.class.label() })));
                }
            }
            Ok(None)
        },
    ));
    match censym::build_spectral_base(s, heavy(trials).max(100), seed)? {
        BaseAvailability::Available(_) => cases.push(Case::simple(
            "censym.base_available",
            smooth,
            seed,
            "smooth norm: all sharp elements carry compressions",
        )),
        BaseAvailability::Unavailable(cert) => {
            let mut c = certificate_case(s, "censym.base_unavailable", &cert, seed)?;
            c.pass &= !smooth;
            if !c.pass && c.witness.is_none() {
                c.witness = Some(json!({ "note": c.detail }));
            }
            cases.push(c);
        }
    }
    if let Some((focus, j1, j2)) = &decision.witness {
        let c1 = j1.check_f_axioms(heavy(trials).max(100), seed)?;
        let c2 = j2.check_f_axioms(heavy(trials).max(100), seed)?;
        let distance = j1.distance(j2);
        let pass = c1.f_compression
            && c2.f_compression
            && distance >= 0.1
            && !j1.is_compression(100, seed)?
            && !j2.is_compression(100, seed)?;
        cases.push(Case::simple(
            "censym.separation_witness",
            pass,
            seed,
            &format!(
                "focus {}: two F-compressions at distance {distance:.3}, neither a compression",
                el(focus)
            ),
        ));
    }
    Ok(cases)
}
