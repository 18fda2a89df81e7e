//! Generic spectral machinery over a compression base: comparability,
//! orthogonal decomposition, projection covers, the Rickart mapping, spectral
//! resolutions and their Riemann sums.

use serde_json::{json, Value};

use crate::compression::{CBlock, CompressionBase};
use crate::error::{Error, Result};
use crate::json::{element_in, element_to_json, num};
use crate::space::{AElem, ModelSpace};

/// Spectral data of one element.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralData {
    pub a: AElem,
    /// Least element of `P±(a)`.
    pub p_plus: AElem,
    pub pos: AElem,
    pub neg: AElem,
    pub abs: AElem,
    /// Projection cover of `|a| / ‖a‖₁` (`0` for `a = 0`).
    pub cover: AElem,
    /// `a* = 1 - (|a| / ‖a‖₁)⁰` (`1` for `a = 0`).
    pub rickart: AElem,
    /// `(λ, p_{a,λ})` on the requested grid.
    pub resolution: Vec<(f64, AElem)>,
    /// `(L_a, U_a)`.
    pub bounds: (f64, f64),
}

/// `p ∈ P±(a)` for a base projection `p`: `a ∈ C(p)` and `J_{1-p}(a) ≤ 0 ≤ J_p(a)`.
pub fn in_p_pm(base: &CompressionBase, a: &AElem, p: &AElem) -> Result<bool> {
    let s = base.space();
    if !base.contains(p)? || !base.in_c(a, p)? {
        return Ok(false);
    }
    let slack = s.tol().eq_tol * (1.0 + s.order_unit_norm(a)?);
    let up = &base.compress(p, a)? + &s.scalar(slack);
    let down = &base.compress(&s.complement(p), a)? - &s.scalar(slack);
    Ok(s.in_cone(&up)? && s.in_cone(&(-&down))?)
}

/// The least element of `P±(a)`: the support of `a⁺`, zero spectrum assigned
/// to the negative side. The defining inequalities are verified.
pub fn p_pm(base: &CompressionBase, a: &AElem) -> Result<AElem> {
    let p = base.comparability(a)?;
    if !in_p_pm(base, a, &p)? {
        return Err(Error::ComparabilityUnavailable(format!(
            "the comparability projection of {} violates J_(1-p)(a) <= 0 <= J_p(a)",
            base.space().descriptor()
        )));
    }
    Ok(p)
}

/// `a = a⁺ - a⁻` with `a⁺ = J_p(a)`, `a⁻ = -J_{1-p}(a)`, `|a| = a⁺ + a⁻`.
pub fn orthogonal_decomposition(base: &CompressionBase, a: &AElem) -> Result<(AElem, AElem, AElem)> {
    let p = p_pm(base, a)?;
    Ok(decompose_with(base, a, &p)?)
}

/// The decomposition induced by an arbitrary base projection `q`.
pub fn decompose_with(base: &CompressionBase, a: &AElem, q: &AElem) -> Result<(AElem, AElem, AElem)> {
    let s = base.space();
    let pos = base.compress(q, a)?;
    let neg = -&base.compress(&s.complement(q), a)?;
    let abs = &pos + &neg;
    Ok((pos, neg, abs))
}

pub fn projection_cover(base: &CompressionBase, e: &AElem) -> Result<AElem> {
    base.cover(e)
}

/// `a* = 1 - (|a| / ‖a‖₁)⁰`, with `0* = 1`.
pub fn rickart_map(base: &CompressionBase, a: &AElem) -> Result<AElem> {
    let s = base.space();
    let norm = s.order_unit_norm(a)?;
    if norm == 0.0 {
        return Ok(s.unit());
    }
    let (_, _, abs) = orthogonal_decomposition(base, a)?;
    Ok(s.complement(&cover_of_positive(base, &abs)?))
}

/// Cover of `b / ‖b‖₁` for positive `b` (`0` for `b = 0`).
fn cover_of_positive(base: &CompressionBase, b: &AElem) -> Result<AElem> {
    let s = base.space();
    let nb = s.order_unit_norm(b)?;
    if nb == 0.0 {
        return Ok(s.zero());
    }
    base.cover(&(b * (1.0 / nb)))
}

const SHIFT_NOISE: f64 = 64.0 * f64::EPSILON;

/// `p_{a,λ} = ((a - λ)⁺)*`.
pub fn p_lambda(base: &CompressionBase, a: &AElem, lambda: f64) -> Result<AElem> {
    let s = base.space();
    let shifted = a - &s.scalar(lambda);
    let (pos, _, _) = orthogonal_decomposition(base, &shifted)?;
    // rounding residue of the shift is not a positive part
    let scale = s.order_unit_norm(a)? + lambda.abs();
    if s.order_unit_norm(&pos)? <= SHIFT_NOISE * scale {
        return Ok(s.unit());
    }
    rickart_map(base, &pos)
}

pub fn spectral_resolution(base: &CompressionBase, a: &AElem, grid: &[f64]) -> Result<SpectralData> {
    let s = base.space();
    if grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Parse("spectral grid must be ascending".into()));
    }
    let p_plus = p_pm(base, a)?;
    let (pos, neg, abs) = decompose_with(base, a, &p_plus)?;
    let cover = cover_of_positive(base, &abs)?;
    let rickart = if s.order_unit_norm(a)? == 0.0 {
        s.unit()
    } else {
        s.complement(&cover)
    };
    let resolution = grid
        .iter()
        .map(|&l| Ok((l, p_lambda(base, a, l)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectralData {
        a: a.clone(),
        p_plus,
        pos,
        neg,
        abs,
        cover,
        rickart,
        resolution,
        bounds: s.spectral_bounds(a)?,
    })
}

/// A descending family `q_i ∈ P±(a - λ_i)` on an equally spaced grid of
/// `steps` intervals over `[-r, r]`, with `q_0 = 1` and `q_steps = 0`.
///
/// Since the family is monotone, `q` is constant on any run of grid points
/// whose endpoints agree, so only the grid points between distinct values are
/// evaluated (bisection), which keeps fine meshes cheap.
struct Ladder {
    lambdas: Vec<f64>,
    /// Index into `distinct` for each grid point.
    slot: Vec<usize>,
    distinct: Vec<AElem>,
}

fn ladder(base: &CompressionBase, a: &AElem, radius: f64, steps: usize) -> Result<Ladder> {
    let s = base.space();
    let h = 2.0 * radius / steps as f64;
    let lambdas: Vec<f64> = (0..=steps)
        .map(|i| if i == steps { radius } else { -radius + i as f64 * h })
        .collect();
    let mut slot = vec![usize::MAX; steps + 1];
    let mut distinct = vec![s.unit(), s.zero()];
    slot[0] = 0;
    slot[steps] = 1;
    let mut stack = vec![(0usize, steps)];
    while let Some((lo, hi)) = stack.pop() {
        if hi - lo <= 1 {
            continue;
        }
        if slot[lo] == slot[hi] {
            for k in (lo + 1)..hi {
                slot[k] = slot[lo];
            }
            continue;
        }
        let mid = (lo + hi) / 2;
        let q = base.comparability(&(a - &s.scalar(lambdas[mid])))?;
        // distinct members of a monotone family differ by a nonzero projection,
        // so a coarse coordinate comparison identifies them
        let qc = s.coords(&q);
        let ix = match distinct.iter().position(|d| (s.coords(d) - &qc).amax() <= 1e-6) {
            Some(ix) => ix,
            None => {
                distinct.push(q);
                distinct.len() - 1
            }
        };
        slot[mid] = ix;
        stack.push((lo, mid));
        stack.push((mid, hi));
    }
    Ok(Ladder {
        lambdas,
        slot,
        distinct,
    })
}

impl Ladder {
    /// `Σ_i ξ_i (q_{i-1} - q_i)` with `ξ_i` chosen from `[λ_{i-1}, λ_i]` by `weight`.
    fn sum(&self, s: &ModelSpace, weight: impl Fn(f64, f64) -> f64) -> AElem {
        let mut out = s.zero();
        for i in 1..self.lambdas.len() {
            let (prev, cur) = (self.slot[i - 1], self.slot[i]);
            if prev == cur {
                continue;
            }
            let xi = weight(self.lambdas[i - 1], self.lambdas[i]);
            let piece = &self.distinct[prev] - &self.distinct[cur];
            out = &out + &(&piece * xi);
        }
        out
    }
}

/// Riemann sum `Σ ξ_i p_i` over a grid of `[-‖a‖₁, ‖a‖₁]` with steps at most
/// `mesh` and midpoint weights. Returns the sum and `‖a - Σ ξ_i p_i‖₁`,
/// which is at most `mesh`.
pub fn riemann_reconstruct(base: &CompressionBase, a: &AElem, mesh: f64) -> Result<(AElem, f64)> {
    let s = base.space();
    if !(mesh > 0.0) {
        return Err(Error::Parse(format!("mesh must be positive, got {mesh}")));
    }
    let radius = s.order_unit_norm(a)?;
    if radius == 0.0 {
        return Ok((s.zero(), 0.0));
    }
    let steps = (2.0 * radius / mesh).ceil().max(1.0) as usize;
    let lad = ladder(base, a, radius, steps)?;
    let approx = lad.sum(s, |l0, l1| 0.5 * (l0 + l1));
    let err = s.order_unit_norm(&(a - &approx))?;
    Ok((approx, err))
}

/// Ascending simple approximations `a_1 ≤ a_2 ≤ … ≤ a`: dyadic grids with
/// `2^k` intervals over `[-‖a‖₁, ‖a‖₁]` and left-endpoint weights, so that
/// `‖a - a_k‖₁ ≤ 2‖a‖₁·2^{-k}`.
pub fn simple_approximation(base: &CompressionBase, a: &AElem, levels: usize) -> Result<Vec<AElem>> {
    let s = base.space();
    if levels == 0 {
        return Err(Error::Parse("levels must be at least 1".into()));
    }
    if levels > 30 {
        return Err(Error::SizeLimit("at most 30 dyadic levels".into()));
    }
    let radius = s.order_unit_norm(a)?;
    if radius == 0.0 {
        return Ok(vec![s.zero(); levels]);
    }
    (1..=levels)
        .map(|k| {
            let lad = ladder(base, a, radius, 1usize << k)?;
            Ok(lad.sum(s, |l0, _| l0))
        })
        .collect()
}

/// `(λp + (1-λ)q)⁰`.
pub fn join_at(base: &CompressionBase, p: &AElem, q: &AElem, lambda: f64) -> Result<AElem> {
    base.cover(&(&(p * lambda) + &(q * (1.0 - lambda))))
}

/// The lattice join `p ∨ q = (½p + ½q)⁰`. Fails when the joins at `λ = ¼`
/// and `λ = ¾` disagree with it or do not dominate `p` and `q`.
pub fn oml_join(base: &CompressionBase, p: &AElem, q: &AElem) -> Result<AElem> {
    let s = base.space();
    if !base.contains(p)? || !base.contains(q)? {
        return Err(Error::UnknownProjection);
    }
    let r = join_at(base, p, q, 0.5)?;
    let residual = oml_join_residual(base, p, q, &[0.25, 0.75])?;
    if residual > s.tol().eq_tol || !s.le(p, &r)? || !s.le(q, &r)? {
        return Err(Error::ComparabilityUnavailable(format!(
            "join is not independent of the mixing weight (residual {residual:.3e})"
        )));
    }
    Ok(r)
}

/// Largest `‖r_λ - r_½‖₁` over the given weights.
pub fn oml_join_residual(base: &CompressionBase, p: &AElem, q: &AElem, lambdas: &[f64]) -> Result<f64> {
    let s = base.space();
    let r = join_at(base, p, q, 0.5)?;
    let mut worst = 0.0_f64;
    for &l in lambdas {
        worst = worst.max(s.order_unit_norm(&(&join_at(base, p, q, l)? - &r))?);
    }
    Ok(worst)
}

/// `p ∧ q = 1 - ((1-p) ∨ (1-q))`.
pub fn oml_meet(base: &CompressionBase, p: &AElem, q: &AElem) -> Result<AElem> {
    let s = base.space();
    Ok(s.complement(&oml_join(base, &s.complement(p), &s.complement(q))?))
}

pub fn c_block(base: &CompressionBase, a: &AElem) -> Result<CBlock> {
    base.c_block(a)
}

/// Alternative members of `P±(a)`: `p_pm(a) + r` for block projections `r`
/// below the Rickart image of `a` (kernel projections).
pub fn p_pm_alternatives(base: &CompressionBase, a: &AElem) -> Result<Vec<AElem>> {
    let s = base.space();
    let p = base.comparability(a)?;
    let kernel = rickart_map(base, a)?;
    let mut out = Vec::new();
    for r in base.c_block(a)?.projections {
        // for projections, r ≤ k exactly when J_k(r) = r
        let below = (s.coords(&base.compress(&kernel, &r)?) - s.coords(&r)).amax() <= s.tol().eq_tol;
        if below {
            let q = &p + &r;
            if base.contains(&q)? {
                out.push(q);
            }
        }
    }
    Ok(out)
}

impl SpectralData {
    /// Checks the invariants of spectral data against a base and returns the
    /// list of violated ones (empty when consistent).
    pub fn violations(&self, base: &CompressionBase) -> Result<Vec<String>> {
        let s = base.space();
        let mut out = Vec::new();
        let scale = 1.0 + s.order_unit_norm(&self.a)?;
        let tol = s.tol().eq_tol * scale;
        let small = |e: &AElem| -> Result<bool> { Ok(s.order_unit_norm(e)? <= tol) };
        if !small(&(&(&self.pos - &self.neg) - &self.a))? {
            out.push("a = pos - neg".to_string());
        }
        if !small(&(&(&self.pos + &self.neg) - &self.abs))? {
            out.push("abs = pos + neg".to_string());
        }
        if !s.in_cone(&self.pos)? || !s.in_cone(&self.neg)? {
            out.push("pos, neg positive".to_string());
        }
        let pos_image = base.compress(&self.p_plus, &self.pos)?;
        if !small(&(&pos_image - &self.pos))? || !small(&base.compress(&self.p_plus, &self.neg)?)? {
            out.push("J_p(pos) = pos, J_p(neg) = 0".to_string());
        }
        if !s.approx_eq(&s.complement(&self.cover), &self.rickart)? && s.order_unit_norm(&self.a)? > 0.0 {
            out.push("rickart = 1 - cover".to_string());
        }
        let (lo, hi) = self.bounds;
        if lo > hi {
            out.push("L <= U".to_string());
        }
        for w in self.resolution.windows(2) {
            if !s.le(&w[0].1, &w[1].1)? {
                out.push(format!("monotone at λ = {}", w[1].0));
                break;
            }
        }
        for (l, p) in &self.resolution {
            if *l < lo - tol && s.order_unit_norm(p)? > tol {
                out.push(format!("p_λ = 0 below L (λ = {l})"));
            }
            if *l >= hi + tol && !s.approx_eq(p, &s.unit())? {
                out.push(format!("p_λ = 1 above U (λ = {l})"));
            }
            if !base.in_c(&self.a, p)? {
                out.push(format!("p_λ compatible with a (λ = {l})"));
            }
        }
        Ok(out)
    }

    pub fn to_json(&self, space: &ModelSpace) -> Value {
        let e = |x: &AElem| element_to_json(space, x);
        json!({
            "a": e(&self.a),
            "p_plus": e(&self.p_plus),
            "pos": e(&self.pos),
            "neg": e(&self.neg),
            "abs": e(&self.abs),
            "cover": e(&self.cover),
            "rickart": e(&self.rickart),
            "resolution": self.resolution.iter().map(|(l, p)| json!([num(*l), e(p)])).collect::<Vec<_>>(),
            "bounds": [num(self.bounds.0), num(self.bounds.1)],
        })
    }

    pub fn from_json(space: &ModelSpace, v: &Value) -> Result<Self> {
        let field = |k: &str| -> Result<AElem> {
            element_in(
                space,
                v.get(k)
                    .ok_or_else(|| Error::Parse(format!("spectral data lacks `{k}`")))?,
            )
        };
        let resolution = v
            .get("resolution")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("spectral data lacks `resolution`".into()))?
            .iter()
            .map(|pair| {
                let l = pair
                    .get(0)
                    .and_then(Value::as_f64)
                    .ok_or_else(|| Error::Parse("resolution entries are [λ, element]".into()))?;
                let p = element_in(
                    space,
                    pair.get(1)
                        .ok_or_else(|| Error::Parse("resolution entries are [λ, element]".into()))?,
                )?;
                Ok((l, p))
            })
            .collect::<Result<Vec<_>>>()?;
        let bounds = v
            .get("bounds")
            .and_then(Value::as_array)
            .filter(|b| b.len() == 2)
            .ok_or_else(|| Error::Parse("spectral data lacks `bounds`".into()))?;
        let bound = |i: usize| {
            bounds[i]
                .as_f64()
                .ok_or_else(|| Error::Parse("bounds must be numbers".into()))
        };
        Ok(SpectralData {
            a: field("a")?,
            p_plus: field("p_plus")?,
            pos: field("pos")?,
            neg: field("neg")?,
            abs: field("abs")?,
            cover: field("cover")?,
            rickart: field("rickart")?,
            resolution,
            bounds: (bound(0)?, bound(1)?),
        })
    }
}
