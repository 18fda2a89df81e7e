//! The Jordan algebra of real symmetric `n×n` matrices with `a∘b = ½(ab + ba)`.
//!
//! Projections are the idempotent matrices, compressions are the maps
//! `U_p(a) = 2p∘(p∘a) - p∘a` (which equal `pap`), and carriers, covers and
//! spectral projections come from the eigendecomposition.

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use crate::compression::{jordan, up_apply, BaseKind, CBlock, CompMap, CompressionBase};
use crate::error::{Error, Result};
use crate::json::element_to_json;
use crate::linalg::{symmetrize, SymEigen};
use crate::report::{Case, Report};
use crate::rng::seeded;
use crate::space::{AElem, ModelKind, ModelSpace};

/// Largest matrix size for which subset families of a basis are enumerated.
pub const ENUMERATION_LIMIT: usize = 12;

#[derive(Debug, Clone)]
pub struct JbBase {
    n: usize,
    /// Orthonormal reference basis (columns) whose coordinate projections are
    /// the witness family of the base.
    basis: DMatrix<f64>,
}

#[derive(Debug, Clone)]
pub struct JbModel {
    pub space: ModelSpace,
    pub base: CompressionBase,
}

pub fn build_jb(n: usize) -> Result<JbModel> {
    if n == 0 {
        return Err(Error::InvalidDimension("matrix size must be at least 1".into()));
    }
    build_jb_in(ModelSpace::jordan(n)?)
}

pub fn build_jb_in(space: ModelSpace) -> Result<JbModel> {
    let n = match space.kind() {
        ModelKind::Jb { n } => *n,
        _ => return Err(Error::ShapeMismatch("expected a matrix space".into())),
    };
    jb_with_basis(space, DMatrix::identity(n, n))
}

/// The base of all projections, witnessed by the coordinate projections of `basis`.
pub fn jb_with_basis(space: ModelSpace, basis: DMatrix<f64>) -> Result<JbModel> {
    let n = space.n();
    if basis.nrows() != n || basis.ncols() != n {
        return Err(Error::ShapeMismatch("basis must be n×n".into()));
    }
    if (basis.transpose() * &basis - DMatrix::identity(n, n)).amax() > 1e-10 {
        return Err(Error::ShapeMismatch("basis must be orthonormal".into()));
    }
    let base = CompressionBase {
        space: space.clone(),
        kind: BaseKind::Jb(JbBase { n, basis }),
    };
    Ok(JbModel { space, base })
}

fn mat(a: &AElem) -> Result<&DMatrix<f64>> {
    a.as_jb()
        .ok_or_else(|| Error::ShapeMismatch("expected a symmetric matrix".into()))
}

fn same_shape(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<()> {
    if a.shape() != b.shape() || a.nrows() != a.ncols() {
        return Err(Error::ShapeMismatch(format!(
            "{:?} vs {:?}",
            a.shape(),
            b.shape()
        )));
    }
    Ok(())
}

/// `a∘b = ½(ab + ba)`.
pub fn jordan_product(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    same_shape(a, b)?;
    Ok(jordan(a, b))
}

/// `{abc} = (a∘b)∘c + (c∘b)∘a - (a∘c)∘b`.
pub fn triple_product(a: &DMatrix<f64>, b: &DMatrix<f64>, c: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    same_shape(a, b)?;
    same_shape(b, c)?;
    Ok(jordan(&jordan(a, b), c) + jordan(&jordan(c, b), a) - jordan(&jordan(a, c), b))
}

/// `‖(a²∘b)∘a - a²∘(b∘a)‖` (largest entry).
pub fn jordan_identity_residual(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<f64> {
    same_shape(a, b)?;
    let a2 = jordan(a, a);
    Ok((jordan(&jordan(&a2, b), a) - jordan(&a2, &jordan(b, a))).amax())
}

pub fn eig(space: &ModelSpace, a: &AElem) -> Result<SymEigen> {
    space.check(a)?;
    space.eig(mat(a)?)
}

fn require_projection(space: &ModelSpace, p: &AElem) -> Result<DMatrix<f64>> {
    space.check(p)?;
    let m = mat(p)?;
    if space.order_unit_norm(&AElem::Jb(m * m - m))? > space.tol().eq_tol {
        return Err(Error::NotAProjection);
    }
    Ok(m.clone())
}

/// The compression `U_p`.
pub fn u_map(space: &ModelSpace, p: &AElem) -> Result<CompMap> {
    CompMap::jb_up(space, p)
}

/// Operator commutation of `a` and a projection `p`: `(U_p + U_{1-p})(a) = a`.
pub fn operator_commute(space: &ModelSpace, a: &AElem, p: &AElem) -> Result<bool> {
    space.check(a)?;
    let pm = require_projection(space, p)?;
    let am = mat(a)?;
    let q = DMatrix::identity(pm.nrows(), pm.nrows()) - &pm;
    let r = am - up_apply(&pm, am) - up_apply(&q, am);
    Ok(space.order_unit_norm(&AElem::Jb(symmetrize(&r)))? <= space.tol().eq_tol * (1.0 + space.order_unit_norm(a)?))
}

/// Whether `p∘a = U_p(a)`, the multiplication form of operator commutation.
pub fn multiplication_commute(space: &ModelSpace, a: &AElem, p: &AElem) -> Result<bool> {
    space.check(a)?;
    let pm = require_projection(space, p)?;
    let am = mat(a)?;
    let r = jordan(&pm, am) - up_apply(&pm, am);
    Ok(space.order_unit_norm(&AElem::Jb(symmetrize(&r)))? <= space.tol().eq_tol * (1.0 + space.order_unit_norm(a)?))
}

#[derive(Debug, Clone)]
pub struct Peirce {
    pub a1: DMatrix<f64>,
    pub a2: DMatrix<f64>,
    pub a3: DMatrix<f64>,
    /// Largest residual of `p∘a₁ = a₁`, `p∘a₂ = ½a₂`, `p∘a₃ = 0`.
    pub residual: f64,
}

/// `a = a₁ + a₂ + a₃` with `a₁ = U_p(a)`, `a₃ = U_{1-p}(a)`.
pub fn peirce_decompose(space: &ModelSpace, a: &AElem, p: &AElem) -> Result<Peirce> {
    space.check(a)?;
    let pm = require_projection(space, p)?;
    let am = mat(a)?;
    let q = DMatrix::identity(pm.nrows(), pm.nrows()) - &pm;
    let a1 = symmetrize(&up_apply(&pm, am));
    let a3 = symmetrize(&up_apply(&q, am));
    let a2 = am - &a1 - &a3;
    let r1 = (jordan(&pm, &a1) - &a1).amax();
    let r2 = (jordan(&pm, &a2) - &a2 * 0.5).amax();
    let r3 = jordan(&pm, &a3).amax();
    Ok(Peirce {
        residual: r1.max(r2).max(r3),
        a1,
        a2,
        a3,
    })
}

/// Orthogonal projection onto the eigenvectors selected by `keep(λ, ‖a‖₁)`.
fn spectral_projection(space: &ModelSpace, a: &DMatrix<f64>, keep: impl Fn(f64, f64) -> bool) -> Result<DMatrix<f64>> {
    let e = space.eig(a)?;
    let norm = e.spectral_radius();
    Ok(e.projection(|l| keep(l, norm)))
}

/// The carrier `s(a)`: projection onto eigenvectors with `|λ| > eig_cut·‖a‖₁`.
pub fn carrier(space: &ModelSpace, a: &AElem) -> Result<AElem> {
    space.check(a)?;
    let cut = space.tol().eig_cut;
    Ok(AElem::Jb(spectral_projection(space, mat(a)?, |l, n| l.abs() > cut * n)?))
}

/// Support projection of `a⁺`: eigenvectors with `λ > eig_cut·‖a‖₁`.
pub(crate) fn positive_support(space: &ModelSpace, a: &AElem) -> Result<AElem> {
    let cut = space.tol().eig_cut;
    Ok(AElem::Jb(spectral_projection(space, mat(a)?, |l, n| l > cut * n)?))
}

/// Range projection of a positive matrix.
pub(crate) fn support(space: &ModelSpace, e: &AElem) -> Result<AElem> {
    positive_support(space, e)
}

/// Orthogonality of positive elements: `{aba} = {bab} = 0`.
pub fn jb_orthogonal(space: &ModelSpace, a: &AElem, b: &AElem) -> Result<bool> {
    if !space.in_cone(a)? || !space.in_cone(b)? {
        return Err(Error::NotPositive);
    }
    let (am, bm) = (mat(a)?, mat(b)?);
    let scale = 1.0 + am.amax() * am.amax() * bm.amax() + bm.amax() * bm.amax() * am.amax();
    let tol = space.tol().eq_tol * scale;
    Ok(triple_product(am, bm, am)?.amax() <= tol && triple_product(bm, am, bm)?.amax() <= tol)
}

/// The carrier form of orthogonality: `{s(a) b s(a)} = 0`.
pub fn orthogonal_via_carrier(space: &ModelSpace, a: &AElem, b: &AElem) -> Result<bool> {
    if !space.in_cone(a)? || !space.in_cone(b)? {
        return Err(Error::NotPositive);
    }
    let s = carrier(space, a)?;
    let (sm, bm) = (mat(&s)?, mat(b)?);
    Ok(triple_product(sm, bm, sm)?.amax() <= space.tol().eq_tol * (1.0 + bm.amax()))
}

/// Checks the annihilator condition for a positive `x`: with `p = 1 - s(x)`,
/// `U_a(x) = 0` holds exactly when `U_p(a) = a`. Samples mix elements of
/// `U_p(A)` (kernel-directed) with unconstrained random elements.
pub fn rickart_a1_check(space: &ModelSpace, x: &AElem, trials: usize, seed: u64) -> Result<Report> {
    let mut report = Report::new("jb.rickart_A1", space);
    if !space.in_cone(x)? {
        return Err(Error::NotPositive);
    }
    let xm = mat(x)?;
    let n = xm.nrows();
    let p = DMatrix::identity(n, n) - mat(&carrier(space, x)?)?;
    let tol = space.tol().eq_tol;
    let mut witness = None;
    for j in 0..trials {
        let mut rng = seeded(seed.wrapping_add(j as u64), 0);
        let g = crate::sampling::goe(n, &mut rng);
        let a = if rng.random() { symmetrize(&up_apply(&p, &g)) } else { g };
        let uax = &a * xm * &a;
        let annihilates = uax.amax() <= tol * (1.0 + a.amax() * a.amax() * xm.amax());
        let fixed = (symmetrize(&up_apply(&p, &a)) - &a).amax() <= tol * (1.0 + a.amax());
        if annihilates != fixed {
            witness = Some(AElem::Jb(a));
            break;
        }
    }
    report.push(Case::with_witness(
        "rickart.A1",
        witness.is_none(),
        witness.map(|w| element_to_json(space, &w)),
        trials,
        seed,
        "U_a(x) = 0 iff U_p(a) = a with p = 1 - s(x)",
    ));
    Ok(report)
}

/// Candidate retractions with focus `p` used to spot-check that `U_p` is the
/// only F-compression with that focus: `U_p` itself, the pinching
/// `a ↦ Σ qᵢ a qᵢ` over rank-one `qᵢ` summing to `p`, the rank-one map
/// `a ↦ ⟨a, ρ⟩ p` for the normalized state `ρ = p / tr p`, and their average.
pub fn retraction_candidates(space: &ModelSpace, p: &AElem) -> Result<Vec<CompMap>> {
    let pm = require_projection(space, p)?;
    let n = pm.nrows();
    let e = space.eig(&pm)?;
    let rank_ones: Vec<DMatrix<f64>> = (0..n)
        .filter(|&k| e.values[k] > 0.5)
        .map(|k| {
            let v = e.vectors.column(k);
            &v * v.transpose()
        })
        .collect();
    let up = CompMap::jb_up(space, p)?;
    let mut out = vec![up.clone()];
    let build = |label: &str, f: &dyn Fn(&DMatrix<f64>) -> DMatrix<f64>| -> Result<CompMap> {
        let cols: Vec<DVector<f64>> = space
            .basis()
            .iter()
            .map(|b| space.coords(&AElem::Jb(f(b.as_jb().expect("matrix")))))
            .collect();
        CompMap::from_matrix(space, label, DMatrix::from_columns(&cols))
    };
    let pinch = build("pinching", &|a| rank_ones.iter().fold(DMatrix::zeros(n, n), |acc, q| acc + q * a * q))?;
    out.push(pinch.clone());
    let rank = rank_ones.len().max(1) as f64;
    let state = build("state", &|a| &pm * ((a * &pm).trace() / rank))?;
    out.push(state.clone());
    out.push(CompMap::from_matrix(
        space,
        "average",
        (up.matrix() + pinch.matrix()) * 0.5,
    )?);
    Ok(out)
}

impl JbBase {
    fn subsets(&self, vectors: &DMatrix<f64>) -> Result<Vec<AElem>> {
        if self.n > ENUMERATION_LIMIT {
            return Err(Error::NotEnumerable(format!(
                "2^{} coordinate projections exceed the enumeration limit",
                self.n
            )));
        }
        let rank_ones: Vec<DMatrix<f64>> = (0..self.n)
            .map(|k| {
                let v = vectors.column(k);
                &v * v.transpose()
            })
            .collect();
        Ok((0..(1u64 << self.n))
            .map(|mask| {
                let mut p = DMatrix::zeros(self.n, self.n);
                for (k, r) in rank_ones.iter().enumerate() {
                    if (mask >> k) & 1 == 1 {
                        p += r;
                    }
                }
                AElem::Jb(p)
            })
            .collect())
    }

    pub(crate) fn witnesses(&self) -> Vec<AElem> {
        self.subsets(&self.basis).unwrap_or_else(|_| {
            let n = self.n;
            let mut out = vec![AElem::Jb(DMatrix::zeros(n, n)), AElem::Jb(DMatrix::identity(n, n))];
            for k in 0..n {
                let v = self.basis.column(k);
                let r = &v * v.transpose();
                out.push(AElem::Jb(DMatrix::identity(n, n) - &r));
                out.push(AElem::Jb(r));
            }
            out
        })
    }

    /// Coordinate projections of an eigenbasis of `a`; within a degenerate
    /// eigenspace the split is the one chosen by the eigensolver.
    pub(crate) fn pc_set(&self, space: &ModelSpace, a: &AElem) -> Result<Vec<AElem>> {
        let e = space.eig(mat(a)?)?;
        self.subsets(&e.vectors)
    }

    /// Sums of spectral projections of `a`, eigenvalues clustered with
    /// relative gap `eig_cut`.
    pub(crate) fn p_of(&self, space: &ModelSpace, a: &AElem) -> Result<Vec<AElem>> {
        let clusters = spectral_clusters(space, a)?;
        let k = clusters.len();
        if k > ENUMERATION_LIMIT {
            return Err(Error::NotEnumerable(format!("{k} distinct eigenvalues")));
        }
        Ok((0..(1u64 << k))
            .map(|mask| {
                let mut p = DMatrix::zeros(self.n, self.n);
                for (j, (_, q)) in clusters.iter().enumerate() {
                    if (mask >> j) & 1 == 1 {
                        p += q;
                    }
                }
                AElem::Jb(p)
            })
            .collect())
    }

    pub(crate) fn c_block(&self, space: &ModelSpace, a: &AElem) -> Result<CBlock> {
        let e = space.eig(mat(a)?)?;
        let projections = self.subsets(&e.vectors)?;
        let span_basis = (0..self.n)
            .map(|k| {
                let v = e.vectors.column(k);
                AElem::Jb(&v * v.transpose())
            })
            .collect();
        Ok(CBlock {
            projections,
            span_basis,
        })
    }
}

/// Distinct eigenvalues of `a` (ascending) with their spectral projections.
pub fn spectral_clusters(space: &ModelSpace, a: &AElem) -> Result<Vec<(f64, DMatrix<f64>)>> {
    let m = mat(a)?;
    let e = space.eig(m)?;
    let n = m.nrows();
    let gap = space.tol().eig_cut * e.spectral_radius().max(1.0);
    let mut out: Vec<(f64, DMatrix<f64>)> = Vec::new();
    let mut start = f64::NEG_INFINITY;
    for k in 0..n {
        let l = e.values[k];
        let v = e.vectors.column(k);
        let r = &v * v.transpose();
        if out.is_empty() || l - start > gap {
            out.push((l, r));
            start = l;
        } else {
            let last = out.last_mut().expect("nonempty");
            last.1 += r;
        }
    }
    Ok(out)
}
