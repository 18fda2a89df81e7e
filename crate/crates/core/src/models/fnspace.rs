//! Finite function spaces `ℝⁿ` with pointwise order. Projections are
//! characteristic functions of subsets, compressions are multiplications by
//! them, and every spectral notion reduces to a coordinate formula, which
//! makes this model the exact oracle for the generic machinery.

use nalgebra::{DMatrix, DVector};

use crate::compression::{BaseKind, CBlock, CompressionBase};
use crate::error::{Error, Result};
use crate::rng::seeded;
use crate::space::{AElem, ModelSpace};
use crate::spectral::SpectralData;

/// Largest point count with an exhaustive mask list.
pub const EXHAUSTIVE_LIMIT: usize = 12;
/// Largest supported point count.
pub const SIZE_LIMIT: usize = 24;
const SAMPLED_MASKS: usize = 256;

#[derive(Debug, Clone)]
pub struct FnBase {
    n: usize,
    masks: Vec<u64>,
    exhaustive: bool,
}

/// A function space together with its compression base of all masks.
#[derive(Debug, Clone)]
pub struct FnModel {
    pub space: ModelSpace,
    pub base: CompressionBase,
}

impl FnModel {
    pub fn exhaustive(&self) -> bool {
        self.base.exhaustive()
    }
}

/// `χ_S` for the subset encoded by the bits of `mask`.
pub fn mask_element(n: usize, mask: u64) -> AElem {
    AElem::Fn(DVector::from_fn(n, |i, _| ((mask >> i) & 1) as f64))
}

/// The subset encoded by a 0/1 vector.
pub fn mask_bits(p: &AElem) -> Option<u64> {
    let x = p.as_fn()?;
    let mut bits = 0u64;
    for (i, v) in x.iter().enumerate() {
        if *v > 0.5 {
            bits |= 1 << i;
        }
    }
    Some(bits)
}

pub fn build_fn(n: usize) -> Result<FnModel> {
    build_fn_in(ModelSpace::function_space(n.max(1))?, n)
}

/// Builds the mask base on an existing function space (keeping its tolerances).
pub fn build_fn_in(space: ModelSpace, n: usize) -> Result<FnModel> {
    if n == 0 {
        return Err(Error::InvalidDimension("a function space needs at least one point".into()));
    }
    if n > SIZE_LIMIT {
        return Err(Error::SizeLimit(format!(
            "function spaces are limited to {SIZE_LIMIT} points, got {n}"
        )));
    }
    if space.n() != n {
        return Err(Error::ShapeMismatch("space size differs from n".into()));
    }
    let full = (1u64 << n) - 1;
    let (masks, exhaustive) = if n <= EXHAUSTIVE_LIMIT {
        ((0..=full).collect(), true)
    } else {
        use rand::Rng;
        let mut rng = seeded(0, 0);
        let mut masks = std::collections::BTreeSet::from([0, full]);
        for i in 0..n {
            masks.insert(1 << i);
            masks.insert(full ^ (1 << i));
        }
        while masks.len() < SAMPLED_MASKS {
            let m = rng.random::<u64>() & full;
            masks.insert(m);
            masks.insert(full ^ m);
        }
        (masks.into_iter().collect(), false)
    };
    let base = CompressionBase {
        space: space.clone(),
        kind: BaseKind::Fn(FnBase {
            n,
            masks,
            exhaustive,
        }),
    };
    Ok(FnModel { space, base })
}

/// Indicator of `{i : a_i > eq_tol·‖a‖₁}`: the support of `a⁺`.
pub(crate) fn positive_support(space: &ModelSpace, a: &AElem) -> Result<AElem> {
    let x = a.as_fn().ok_or_else(|| Error::ShapeMismatch("expected a function".into()))?;
    let cut = space.tol().eq_tol * x.amax();
    Ok(AElem::Fn(x.map(|v| if v > cut { 1.0 } else { 0.0 })))
}

/// Indicator of the support of a positive function.
pub(crate) fn support(space: &ModelSpace, e: &AElem) -> Result<AElem> {
    positive_support(space, e)
}

impl FnBase {
    pub(crate) fn witnesses(&self) -> Vec<AElem> {
        self.masks.iter().map(|m| mask_element(self.n, *m)).collect()
    }

    pub(crate) fn exhaustive(&self) -> bool {
        self.exhaustive
    }

    fn require_enumerable(&self) -> Result<()> {
        if self.exhaustive {
            Ok(())
        } else {
            Err(Error::NotEnumerable(format!(
                "{} points exceed the exhaustive limit of {EXHAUSTIVE_LIMIT}",
                self.n
            )))
        }
    }

    /// Every mask is compatible with every function.
    pub(crate) fn pc_set(&self, _space: &ModelSpace) -> Result<Vec<AElem>> {
        self.require_enumerable()?;
        Ok(self.witnesses())
    }

    /// The Boolean algebra generated by the level sets of `a`.
    pub(crate) fn p_of(&self, space: &ModelSpace, a: &AElem) -> Result<Vec<AElem>> {
        self.require_enumerable()?;
        let levels = level_sets(space, a);
        let k = levels.len();
        Ok((0..(1u64 << k))
            .map(|sel| {
                let bits = (0..k)
                    .filter(|j| (sel >> j) & 1 == 1)
                    .fold(0u64, |acc, j| acc | levels[j]);
                mask_element(self.n, bits)
            })
            .collect())
    }

    pub(crate) fn c_block(&self, space: &ModelSpace) -> Result<CBlock> {
        self.require_enumerable()?;
        Ok(CBlock {
            projections: self.witnesses(),
            span_basis: space.basis(),
        })
    }
}

/// Level sets of `a` as bit masks, in increasing order of the value; values
/// within `eq_tol·(1 + ‖a‖₁)` of the smallest value of a level join it.
pub fn level_sets(space: &ModelSpace, a: &AElem) -> Vec<u64> {
    let x = a.as_fn().expect("function");
    let tol = space.tol().eq_tol * (1.0 + x.amax());
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&i, &j| x[i].total_cmp(&x[j]));
    let mut levels: Vec<u64> = Vec::new();
    let mut start = f64::NEG_INFINITY;
    for i in order {
        if levels.is_empty() || x[i] - start > tol {
            levels.push(0);
            start = x[i];
        }
        *levels.last_mut().expect("nonempty") |= 1 << i;
    }
    levels
}

/// Spectral data of `f` by direct coordinate formulas, independent of the
/// compression machinery: `f⁺ = max(f, 0)`, cover = support of `f`, Rickart
/// image = zero set, `p_λ = {f ≤ λ}`, bounds `(min f, max f)`.
pub fn oracle_spectral(f: &DVector<f64>, grid: &[f64]) -> SpectralData {
    let n = f.len();
    let ind = |pred: &dyn Fn(f64) -> bool| AElem::Fn(f.map(|v| if pred(v) { 1.0 } else { 0.0 }));
    let pos = f.map(|v| v.max(0.0));
    let neg = f.map(|v| (-v).max(0.0));
    let abs = f.map(f64::abs);
    let (lo, hi) = if n == 0 { (0.0, 0.0) } else { (f.min(), f.max()) };
    SpectralData {
        a: AElem::Fn(f.clone()),
        p_plus: ind(&|v| v > 0.0),
        pos: AElem::Fn(pos),
        neg: AElem::Fn(neg),
        abs: AElem::Fn(abs),
        cover: ind(&|v| v != 0.0),
        rickart: ind(&|v| v == 0.0),
        resolution: grid.iter().map(|&l| (l, ind(&|v| v <= l))).collect(),
        bounds: (lo, hi),
    }
}

/// Mackey compatibility witness for two effects of a function space:
/// `c = max(e + g - 1, 0)`, `a₁ = e - c`, `b₁ = g - c`, so that
/// `c + a₁ + b₁ = min(e + g, 1)`. Returns `(c, a₁, b₁)`.
pub fn mackey_witness(e: &DVector<f64>, g: &DVector<f64>) -> (DVector<f64>, DVector<f64>, DVector<f64>) {
    let c = (e + g).map(|v| (v - 1.0).max(0.0));
    let a1 = e - &c;
    let b1 = g - &c;
    (c, a1, b1)
}

/// Checks the Mackey conditions `e = c + a₁`, `g = c + b₁`, all parts
/// effects, and `c + a₁ + b₁ ≤ 1`, exactly up to `tol`.
pub fn mackey_holds(
    e: &DVector<f64>,
    g: &DVector<f64>,
    (c, a1, b1): &(DVector<f64>, DVector<f64>, DVector<f64>),
    tol: f64,
) -> bool {
    let eff = |v: &DVector<f64>| v.iter().all(|x| *x >= -tol && *x <= 1.0 + tol);
    let sum = c + a1 + b1;
    eff(c)
        && eff(a1)
        && eff(b1)
        && (c + a1 - e).amax() <= tol
        && (c + b1 - g).amax() <= tol
        && sum.iter().all(|x| *x <= 1.0 + tol)
}

/// Dense matrix of multiplication by `χ_S`.
pub fn mask_matrix(n: usize, mask: u64) -> DMatrix<f64> {
    DMatrix::from_diagonal(&DVector::from_fn(n, |i, _| ((mask >> i) & 1) as f64))
}
