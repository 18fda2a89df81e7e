//! Retractions, F-compressions and compressions as positive linear maps, and
//! the compression bases each model provides.
//!
//! Every [`CompMap`] carries both a closed-form action and the dense matrix of
//! that action in the coordinate chart of its space, so that idempotence,
//! composition laws and commutation are plain matrix computations.

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::null_space;
use crate::models::{censym::CsBase, fnspace::FnBase, jordan::JbBase};
use crate::report::{Case, Report};
use crate::rng::seeded;
use crate::space::{AElem, ModelKind, ModelSpace, VElem};

/// Closed-form description of a map.
#[derive(Debug, Clone, PartialEq)]
pub enum MapAction {
    /// Multiplication by the characteristic function of a subset.
    FnMask(Vec<bool>),
    /// `U_p(a) = 2p∘(p∘a) - p∘a` for a projection matrix `p`.
    JbUp(DMatrix<f64>),
    /// `(a₀, w) ↦ (a₀ + ⟨w, x⟩)·focus` for a sharp focus `(½, y)` and `x ∈ ∂*_y`.
    CsRank1 { x: DVector<f64> },
    Identity,
    Zero,
    /// A map known only through its matrix.
    Dense(String),
}

#[derive(Debug, Clone)]
pub struct CompMap {
    space: ModelSpace,
    focus: AElem,
    action: MapAction,
    matrix: DMatrix<f64>,
}

/// Outcome of the axiom checks for a candidate map.
#[derive(Debug, Clone)]
pub struct FCheck {
    pub positive: bool,
    pub idempotent: bool,
    pub f1: bool,
    pub f2: bool,
    pub f3: bool,
    /// Positive, idempotent, (F1) and (F2).
    pub retraction: bool,
    /// A retraction that also satisfies (F3).
    pub f_compression: bool,
    /// Counterexamples keyed by the property they violate.
    pub witnesses: Vec<(String, AElem)>,
}

pub(crate) fn jordan(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    (a * b + b * a) * 0.5
}

pub(crate) fn up_apply(p: &DMatrix<f64>, a: &DMatrix<f64>) -> DMatrix<f64> {
    let pa = jordan(p, a);
    jordan(p, &pa) * 2.0 - pa
}

impl CompMap {
    fn build(space: &ModelSpace, action: MapAction, focus: Option<AElem>) -> Self {
        let mut map = CompMap {
            space: space.clone(),
            focus: focus.clone().unwrap_or_else(|| space.zero()),
            action,
            matrix: DMatrix::zeros(0, 0),
        };
        let cols: Vec<DVector<f64>> = space
            .basis()
            .iter()
            .map(|b| space.coords(&map.apply(b)))
            .collect();
        map.matrix = DMatrix::from_columns(&cols);
        map.focus = focus.unwrap_or_else(|| map.apply(&space.unit()));
        map
    }

    /// Multiplication by `χ_S` on a function space.
    pub fn fn_mask(space: &ModelSpace, mask: &[bool]) -> Result<Self> {
        if !matches!(space.kind(), ModelKind::Fn { .. }) || mask.len() != space.n() {
            return Err(Error::ShapeMismatch("mask does not match the function space".into()));
        }
        Ok(Self::build(space, MapAction::FnMask(mask.to_vec()), None))
    }

    /// `U_p` for a projection `p` of the matrix model.
    pub fn jb_up(space: &ModelSpace, p: &AElem) -> Result<Self> {
        space.check(p)?;
        let m = p.as_jb().ok_or_else(|| Error::ShapeMismatch("expected a matrix".into()))?;
        if space.order_unit_norm(&AElem::Jb(m * m - m))? > space.tol().eq_tol {
            return Err(Error::NotAProjection);
        }
        Ok(Self::build(space, MapAction::JbUp(m.clone()), None))
    }

    /// The rank-one retraction `J(a₀, w) = (a₀ + ⟨w, x⟩)·p` of a centrally
    /// symmetric space, for a sharp focus `p = (½, y)` and `x ∈ ∂*_y`.
    pub fn cs_rank1(space: &ModelSpace, p: &AElem, x: &DVector<f64>) -> Result<Self> {
        space.check(p)?;
        let (a0, y) = p
            .as_censym()
            .ok_or_else(|| Error::ShapeMismatch("expected a centrally symmetric focus".into()))?;
        let f = space.family().expect("censym space");
        let tol = space.tol().eq_tol;
        let ny = f.dual_norm(y);
        if (a0 - 0.5).abs() > tol || (ny - 0.5).abs() > tol {
            return Err(Error::NotSharpFocus(format!(
                "focus needs a₀ = ½ and ‖y‖* = ½, got a₀ = {a0}, ‖y‖* = {ny}"
            )));
        }
        if x.len() != y.len() {
            return Err(Error::ShapeMismatch("x has the wrong dimension".into()));
        }
        if f.primal_norm(x) > 1.0 + tol || (y.dot(x) - ny).abs() > tol {
            return Err(Error::NotNormAttaining);
        }
        Ok(Self::build(
            space,
            MapAction::CsRank1 { x: x.clone() },
            Some(p.clone()),
        ))
    }

    pub fn identity(space: &ModelSpace) -> Self {
        Self::build(space, MapAction::Identity, None)
    }

    pub fn zero(space: &ModelSpace) -> Self {
        Self::build(space, MapAction::Zero, None)
    }

    /// A map given by its matrix in the coordinate chart of `space`.
    pub fn from_matrix(space: &ModelSpace, label: &str, matrix: DMatrix<f64>) -> Result<Self> {
        let d = space.dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::ShapeMismatch(format!(
                "map matrix must be {d}x{d}, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let mut map = CompMap {
            space: space.clone(),
            focus: space.zero(),
            action: MapAction::Dense(label.to_string()),
            matrix,
        };
        map.focus = map.apply(&space.unit());
        Ok(map)
    }

    pub fn space(&self) -> &ModelSpace {
        &self.space
    }

    /// `J(1)`.
    pub fn focus(&self) -> &AElem {
        &self.focus
    }

    pub fn action(&self) -> &MapAction {
        &self.action
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn apply(&self, a: &AElem) -> AElem {
        match (&self.action, a) {
            (MapAction::FnMask(mask), AElem::Fn(x)) => AElem::Fn(DVector::from_fn(x.len(), |i, _| {
                if mask[i] {
                    x[i]
                } else {
                    0.0
                }
            })),
            (MapAction::JbUp(p), AElem::Jb(m)) => AElem::Jb(crate::linalg::symmetrize(&up_apply(p, m))),
            (MapAction::CsRank1 { x }, AElem::CenSym { a0, y }) => &self.focus * (a0 + y.dot(x)),
            (MapAction::Identity, _) => a.clone(),
            (MapAction::Zero, _) => self.space.zero(),
            _ => self
                .space
                .from_coords(&(&self.matrix * self.space.coords(a))),
        }
    }

    /// The dual map `J*` on `V`.
    pub fn apply_dual(&self, v: &VElem) -> VElem {
        self.space
            .v_from_coords(&(self.matrix.transpose() * self.space.v_coords(v)))
    }

    /// Largest absolute entry of the difference of the two matrices.
    pub fn distance(&self, other: &CompMap) -> f64 {
        (&self.matrix - &other.matrix).amax()
    }

    pub fn compose(&self, other: &CompMap) -> Result<CompMap> {
        CompMap::from_matrix(&self.space, "composition", &self.matrix * &other.matrix)
    }

    /// The complementary map with focus `1 - J(1)`, when the model can build it.
    pub fn complement(&self) -> Result<CompMap> {
        let s = &self.space;
        match &self.action {
            MapAction::FnMask(mask) => {
                let m: Vec<bool> = mask.iter().map(|b| !b).collect();
                CompMap::fn_mask(s, &m)
            }
            MapAction::JbUp(p) => {
                let q = DMatrix::identity(p.nrows(), p.nrows()) - p;
                CompMap::jb_up(s, &AElem::Jb(q))
            }
            MapAction::CsRank1 { x } => CompMap::cs_rank1(s, &s.complement(&self.focus), &(-x)),
            MapAction::Identity => Ok(CompMap::zero(s)),
            MapAction::Zero => Ok(CompMap::identity(s)),
            MapAction::Dense(_) => Err(Error::NoComplementAvailable),
        }
    }

    fn approx_fixed(&self, a: &AElem) -> Result<bool> {
        self.space.approx_eq(&self.apply(a), a)
    }

    fn annihilates(&self, a: &AElem) -> Result<bool> {
        let s = &self.space;
        Ok(s.order_unit_norm(&self.apply(a))? <= s.tol().eq_tol * (1.0 + s.order_unit_norm(a)?))
    }

    /// Checks positivity, idempotence and the axioms (F1)–(F3).
    ///
    /// (F2) is tested on samples of the order interval `[0, J(1)]`. (F3) is
    /// tested on the positive kernel: for a faithful state `τ`, `Ker⁺(J)` is the
    /// face of `A⁺` exposed by `J*τ`, whose generators (normalized to effects)
    /// and random convex combinations are checked against `e ≤ 1 - J(1)`; random
    /// vectors of the numerical null space of the matrix that happen to be
    /// positive are checked as well.
    pub fn check_f_axioms(&self, trials: usize, seed: u64) -> Result<FCheck> {
        let s = &self.space;
        let tol = s.tol().eq_tol;
        let mut witnesses = Vec::new();
        let mut rng = seeded(seed, 0);

        let mut positive = true;
        for _ in 0..trials {
            let e = if rng.random() {
                s.random_effect(&mut rng)?
            } else {
                s.random_sharp(&mut rng)
            };
            if !s.in_cone(&self.apply(&e))? {
                positive = false;
                witnesses.push(("positivity".to_string(), e));
                break;
            }
        }

        let m = &self.matrix;
        let idempotent = (m * m - m).amax() <= tol * (1.0 + m.amax());

        let f1 = s.is_effect(&self.focus)?;

        let mut f2 = f1;
        if f1 {
            for _ in 0..trials {
                let b = s.sample_below(&self.focus, &mut rng)?;
                if !self.approx_fixed(&b)? {
                    f2 = false;
                    witnesses.push(("F2".to_string(), b));
                    break;
                }
            }
        }

        let mut f3 = f1;
        if f1 {
            if let Some(e) = self.f3_witness(trials, &mut rng)? {
                f3 = false;
                witnesses.push(("F3".to_string(), e));
            }
        }

        let retraction = positive && idempotent && f1 && f2;
        Ok(FCheck {
            positive,
            idempotent,
            f1,
            f2,
            f3,
            retraction,
            f_compression: retraction && f3,
            witnesses,
        })
    }

    fn f3_witness<R: Rng>(&self, trials: usize, rng: &mut R) -> Result<Option<AElem>> {
        let s = &self.space;
        let co = s.complement(&self.focus);
        let tau = faithful_state(s);
        let sigma = self.apply_dual(&tau);
        let gens = s.cone_face_generators(&sigma, 4, rng)?;
        let mut effects = Vec::new();
        for g in &gens {
            let n = s.order_unit_norm(g)?;
            if n > 0.0 {
                effects.push(g * (1.0 / n));
            }
        }
        let mut candidates = effects.clone();
        if !effects.is_empty() {
            for _ in 0..trials {
                let k = rng.random_range(1..=3.min(effects.len()));
                let mut c = s.zero();
                for _ in 0..k {
                    let g = &effects[rng.random_range(0..effects.len())];
                    c = &c + &(g * rng.random::<f64>());
                }
                let n = s.order_unit_norm(&c)?;
                if n > 0.0 {
                    candidates.push(&c * (rng.random_range(0.5..=1.0) / n));
                }
            }
        }
        let kernel = null_space(&self.matrix, s.tol().eq_tol);
        if kernel.ncols() > 0 {
            for _ in 0..trials {
                let g = crate::sampling::gaussian(kernel.ncols(), rng);
                let a = s.from_coords(&(&kernel * g));
                for cand in [a.clone(), -&a] {
                    if s.in_cone(&cand)? {
                        let n = s.order_unit_norm(&cand)?;
                        if n > 0.0 {
                            candidates.push(&cand * (1.0 / n));
                        }
                    }
                }
            }
        }
        for e in candidates {
            if self.annihilates(&e)? && !s.le(&e, &co)? {
                return Ok(Some(e));
            }
        }
        Ok(None)
    }

    fn require_f_compression(&self, trials: usize, seed: u64) -> Result<()> {
        let check = self.check_f_axioms(trials, seed)?;
        if check.f_compression {
            Ok(())
        } else {
            let what: Vec<&str> = check.witnesses.iter().map(|(k, _)| k.as_str()).collect();
            Err(Error::NotFCompression(format!("violated: {}", what.join(", "))))
        }
    }

    /// A state `ρ` with `⟨J(1), ρ⟩ = 1` that `J*` moves, if one is found among
    /// generators of that face of the state space and their mixtures.
    pub fn neutrality_witness(&self, trials: usize, seed: u64) -> Result<Option<VElem>> {
        let s = &self.space;
        let mut rng = seeded(seed, 1);
        let gens = s.state_face_generators(&s.complement(&self.focus), 4, &mut rng)?;
        let mut candidates = gens.clone();
        if gens.len() > 1 {
            for _ in 0..trials {
                let i = rng.random_range(0..gens.len());
                let j = rng.random_range(0..gens.len());
                let t: f64 = rng.random();
                candidates.push(&(&gens[i] * t) + &(&gens[j] * (1.0 - t)));
            }
        }
        for rho in candidates {
            let moved = &self.apply_dual(&rho) - &rho;
            if s.base_norm(&moved)? > s.tol().eq_tol * 10.0 {
                return Ok(Some(rho));
            }
        }
        Ok(None)
    }

    /// Smoothness: `J*` fixes every state in the face `{ρ ∈ K : ⟨J(1), ρ⟩ = 1}`.
    ///
    /// In the centrally symmetric model the exact criterion is used: a focus
    /// `(½, y)` gives a smooth map exactly when `∂*_y` is a single point.
    pub fn is_smooth(&self, trials: usize, seed: u64) -> Result<bool> {
        self.require_f_compression(trials, seed)?;
        if let (MapAction::CsRank1 { .. }, Some((_, y))) = (&self.action, self.focus.as_censym()) {
            let f = self.space.family().expect("censym space");
            return Ok(f.dual_face(y)?.is_singleton());
        }
        Ok(self.neutrality_witness(trials, seed)?.is_none())
    }

    /// A smooth F-compression with a smooth complementary F-compression.
    pub fn is_compression(&self, trials: usize, seed: u64) -> Result<bool> {
        let c = self.complement()?;
        Ok(self.is_smooth(trials, seed)? && c.is_smooth(trials, seed)?)
    }

    /// Complementarity of two F-compressions: `J'(1) = 1 - J(1)`, cross-checked
    /// by `J∘J'` and `J'∘J` vanishing on sampled effects.
    pub fn are_complementary(&self, other: &CompMap, trials: usize, seed: u64) -> Result<bool> {
        self.require_f_compression(trials, seed)?;
        other.require_f_compression(trials, seed)?;
        let s = &self.space;
        if !s.approx_eq(&other.focus, &s.complement(&self.focus))? {
            return Ok(false);
        }
        let mut rng = seeded(seed, 2);
        for _ in 0..trials {
            let e = s.random_effect(&mut rng)?;
            if !self.annihilates(&other.apply(&e))? || !other.annihilates(&self.apply(&e))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A faithful state: uniform distribution, maximally mixed state, or `(1, 0)`.
pub fn faithful_state(s: &ModelSpace) -> VElem {
    let n = s.n();
    match s.kind() {
        ModelKind::Fn { .. } => VElem::Fn(DVector::from_element(n, 1.0 / n as f64)),
        ModelKind::Jb { .. } => VElem::Jb(DMatrix::identity(n, n) / n as f64),
        ModelKind::CenSym { .. } => VElem::CenSym {
            alpha: 1.0,
            x: DVector::zeros(n),
        },
    }
}

/// The block of an element: a finite Boolean algebra of pairwise compatible
/// projections containing the element's spectral projections, and a basis of
/// the subspace of elements compatible with all of them.
#[derive(Debug, Clone)]
pub struct CBlock {
    pub projections: Vec<AElem>,
    pub span_basis: Vec<AElem>,
}

#[derive(Debug, Clone)]
pub(crate) enum BaseKind {
    Fn(FnBase),
    Jb(JbBase),
    CenSym(CsBase),
}

/// A compression base: F-compressions indexed by their foci.
#[derive(Debug, Clone)]
pub struct CompressionBase {
    pub(crate) space: ModelSpace,
    pub(crate) kind: BaseKind,
}

impl CompressionBase {
    pub fn space(&self) -> &ModelSpace {
        &self.space
    }

    /// Whether `p` indexes a compression of the base.
    pub fn contains(&self, p: &AElem) -> Result<bool> {
        self.space.check(p)?;
        match &self.kind {
            // idempotent symmetric elements are projections; the Frobenius
            // norm bounds the order unit norm of p² - p
            BaseKind::Fn(_) | BaseKind::Jb(_) => {
                let tol = self.space.tol().eq_tol;
                Ok(match p {
                    AElem::Fn(x) => x.iter().all(|v| v.abs() <= tol || (v - 1.0).abs() <= tol),
                    AElem::Jb(m) => (m * m - m).norm() <= tol,
                    AElem::CenSym { .. } => false,
                })
            }
            BaseKind::CenSym(b) => b.contains(&self.space, p),
        }
    }

    /// `J_p`.
    pub fn compression(&self, p: &AElem) -> Result<CompMap> {
        if !self.contains(p)? {
            return Err(Error::UnknownProjection);
        }
        let s = &self.space;
        let tol = s.tol().eq_tol;
        match (&self.kind, p) {
            (BaseKind::Fn(_), AElem::Fn(x)) => {
                let mask: Vec<bool> = x.iter().map(|v| *v > 0.5).collect();
                CompMap::fn_mask(s, &mask)
            }
            (BaseKind::Jb(_), AElem::Jb(_)) => CompMap::jb_up(s, p),
            (BaseKind::CenSym(_), AElem::CenSym { a0, y }) => {
                if s.dual_norm(y) <= tol {
                    Ok(if *a0 > 0.5 {
                        CompMap::identity(s)
                    } else {
                        CompMap::zero(s)
                    })
                } else {
                    let x = s.family().expect("censym").tie_break(y)?;
                    CompMap::cs_rank1(s, p, &x)
                }
            }
            _ => Err(Error::ShapeMismatch("projection of another model".into())),
        }
    }

    /// `J_p(a)` without materializing the map.
    pub fn compress(&self, p: &AElem, a: &AElem) -> Result<AElem> {
        if !self.contains(p)? {
            return Err(Error::UnknownProjection);
        }
        self.space.check(a)?;
        self.compress_member(p, a)
    }

    fn compress_member(&self, p: &AElem, a: &AElem) -> Result<AElem> {
        let s = &self.space;
        match (&self.kind, p, a) {
            (BaseKind::Fn(_), AElem::Fn(x), AElem::Fn(v)) => Ok(AElem::Fn(DVector::from_fn(v.len(), |i, _| {
                if x[i] > 0.5 {
                    v[i]
                } else {
                    0.0
                }
            }))),
            (BaseKind::Jb(_), AElem::Jb(pm), AElem::Jb(am)) => {
                Ok(AElem::Jb(crate::linalg::symmetrize(&up_apply(pm, am))))
            }
            (BaseKind::CenSym(_), AElem::CenSym { a0, y }, AElem::CenSym { a0: b0, y: w }) => {
                if s.dual_norm(y) <= s.tol().eq_tol {
                    Ok(if *a0 > 0.5 { a.clone() } else { s.zero() })
                } else {
                    let x = s.family().expect("censym").tie_break(y)?;
                    Ok(p * (b0 + w.dot(&x)))
                }
            }
            _ => Err(Error::ShapeMismatch("projection of another model".into())),
        }
    }

    /// A finite family of base projections closed under complements, used as
    /// witnesses by checks that quantify over the base.
    pub fn witnesses(&self) -> Vec<AElem> {
        match &self.kind {
            BaseKind::Fn(b) => b.witnesses(),
            BaseKind::Jb(b) => b.witnesses(),
            BaseKind::CenSym(b) => b.witnesses(&self.space),
        }
    }

    /// Whether [`witnesses`](Self::witnesses) is the whole base.
    pub fn exhaustive(&self) -> bool {
        match &self.kind {
            BaseKind::Fn(b) => b.exhaustive(),
            _ => false,
        }
    }

    /// The least projection `p` in the bicommutant of `a` with
    /// `J_{1-p}(a) ≤ 0 ≤ J_p(a)` (zero eigenvalues go to the negative side).
    pub fn comparability(&self, a: &AElem) -> Result<AElem> {
        self.space.check(a)?;
        match &self.kind {
            BaseKind::Fn(_) => crate::models::fnspace::positive_support(&self.space, a),
            BaseKind::Jb(_) => crate::models::jordan::positive_support(&self.space, a),
            BaseKind::CenSym(b) => b.comparability(&self.space, a),
        }
    }

    /// The least base projection dominating an effect.
    pub fn cover(&self, e: &AElem) -> Result<AElem> {
        if !self.space.is_effect(e)? {
            return Err(Error::NotAnEffect);
        }
        match &self.kind {
            BaseKind::Fn(_) => crate::models::fnspace::support(&self.space, e),
            BaseKind::Jb(_) => crate::models::jordan::support(&self.space, e),
            BaseKind::CenSym(b) => b.cover(&self.space, e),
        }
    }

    /// Base projections compatible with `a` (a finite witness family).
    pub fn pc_set(&self, a: &AElem) -> Result<Vec<AElem>> {
        self.space.check(a)?;
        match &self.kind {
            BaseKind::Fn(b) => b.pc_set(&self.space),
            BaseKind::Jb(b) => b.pc_set(&self.space, a),
            BaseKind::CenSym(b) => b.pc_set(&self.space, a),
        }
    }

    /// The bicommutant `P(a)`.
    pub fn p_of(&self, a: &AElem) -> Result<Vec<AElem>> {
        self.space.check(a)?;
        match &self.kind {
            BaseKind::Fn(b) => b.p_of(&self.space, a),
            BaseKind::Jb(b) => b.p_of(&self.space, a),
            BaseKind::CenSym(b) => b.p_of(&self.space, a),
        }
    }

    /// A maximal block containing the spectral projections of `a`.
    pub fn c_block(&self, a: &AElem) -> Result<CBlock> {
        self.space.check(a)?;
        match &self.kind {
            BaseKind::Fn(b) => b.c_block(&self.space),
            BaseKind::Jb(b) => b.c_block(&self.space, a),
            BaseKind::CenSym(b) => b.c_block(&self.space, a),
        }
    }

    /// `a ∈ C(p)`: `a = J_p(a) + J_{1-p}(a)`.
    pub fn in_c(&self, a: &AElem, p: &AElem) -> Result<bool> {
        let s = &self.space;
        if !self.contains(p)? {
            return Err(Error::UnknownProjection);
        }
        s.check(a)?;
        let r = &(a - &self.compress_member(p, a)?) - &self.compress_member(&s.complement(p), a)?;
        Ok(s.order_unit_norm(&r)? <= s.tol().eq_tol * (1.0 + s.order_unit_norm(a)?))
    }

    /// Compatibility of two base projections: `J_p J_q = J_q J_p = J_{p∧q}`.
    /// Returns the meet when the projections are compatible.
    pub fn projections_compatible(&self, p: &AElem, q: &AElem) -> Result<Option<AElem>> {
        let s = &self.space;
        let jp = self.compression(p)?;
        let jq = self.compression(q)?;
        let pq = jp.matrix() * jq.matrix();
        let qp = jq.matrix() * jp.matrix();
        let scale = 1.0 + pq.amax();
        if (&pq - &qp).amax() > s.tol().eq_tol * scale {
            return Ok(None);
        }
        let product = CompMap::from_matrix(s, "product", pq)?;
        let meet = product.focus().clone();
        if !self.contains(&meet)? {
            return Ok(None);
        }
        let jm = self.compression(&meet)?;
        Ok(if jm.distance(&product) <= s.tol().eq_tol * scale {
            Some(meet)
        } else {
            None
        })
    }

    /// Checks the compression-base laws: `J_0 = 0`, `J_1 = id`, closure under
    /// complements, `J_{p+r}∘J_{q+r} = J_r` for orthogonal triples of witness
    /// projections, and normality spot-checks.
    pub fn validate(&self, trials: usize, seed: u64) -> Result<Report> {
        let s = &self.space;
        let tol = s.tol().eq_tol;
        let mut report = Report::new("compression-base", s);
        let witnesses = self.witnesses();
        let maps: Vec<CompMap> = witnesses
            .iter()
            .map(|p| self.compression(p))
            .collect::<Result<_>>()?;

        let zero_ok = self.compression(&s.zero())?.matrix().amax() <= tol;
        let id_ok = (self.compression(&s.unit())?.matrix() - DMatrix::identity(s.dim(), s.dim()))
            .amax()
            <= tol;
        report.push(Case::simple("base.zero_and_identity", zero_ok && id_ok, seed, ""));

        let mut closed = true;
        let mut closure_witness = None;
        for p in &witnesses {
            if !self.contains(&s.complement(p))? {
                closed = false;
                closure_witness = Some(p.clone());
                break;
            }
        }
        report.push(Case::with_witness(
            "base.complement_closed",
            closed,
            closure_witness.as_ref().map(|p| crate::json::element_to_json(s, p)),
            witnesses.len(),
            seed,
            "",
        ));

        let index_of = |e: &AElem| -> Result<Option<usize>> {
            for (k, w) in witnesses.iter().enumerate() {
                if s.approx_eq(e, w)? {
                    return Ok(Some(k));
                }
            }
            Ok(None)
        };

        // orthogonal triples
        let w = witnesses.len();
        let mut triples = Vec::new();
        if w * w * w <= 70_000 {
            for i in 0..w {
                for j in 0..w {
                    for k in 0..w {
                        triples.push((i, j, k));
                    }
                }
            }
        } else {
            let mut rng = seeded(seed, 3);
            for _ in 0..trials {
                triples.push((
                    rng.random_range(0..w),
                    rng.random_range(0..w),
                    rng.random_range(0..w),
                ));
            }
        }
        let mut checked = 0usize;
        let mut worst = 0.0_f64;
        let mut triple_witness = None;
        for (i, j, k) in triples {
            let (p, q, r) = (&witnesses[i], &witnesses[j], &witnesses[k]);
            let sum = &(p + q) + r;
            if !s.is_effect(&sum)? {
                continue;
            }
            let pr = &(p + r);
            let qr = &(q + r);
            let jpr = match index_of(pr)? {
                Some(ix) => maps[ix].clone(),
                None => self.compression(pr)?,
            };
            let jqr = match index_of(qr)? {
                Some(ix) => maps[ix].clone(),
                None => self.compression(qr)?,
            };
            let residual = (jpr.matrix() * jqr.matrix() - maps[k].matrix()).amax();
            checked += 1;
            if residual > worst {
                worst = residual;
            }
            if residual > tol && triple_witness.is_none() {
                triple_witness = Some(sum.clone());
            }
        }
        report.push(Case::with_witness(
            "base.composition_law",
            triple_witness.is_none(),
            triple_witness.map(|e| crate::json::element_to_json(s, &e)),
            checked,
            seed,
            &format!("{checked} triples, max residual {worst:.3e}"),
        ));

        let normality = self.normality_witness(&witnesses, trials, seed)?;
        report.push(Case::with_witness(
            "base.normality",
            normality.is_none(),
            normality.map(|e| crate::json::element_to_json(s, &e)),
            trials,
            seed,
            "",
        ));
        Ok(report)
    }

    /// Spot-checks normality: effects `d` with `d + e`, `d + f` in the base and
    /// `d + e + f ≤ 1` must lie in the base themselves. Pairs of base elements
    /// `P₁ = d + e`, `P₂ = d + f` are drawn from the witnesses (all pairs when
    /// there are at most 64 witnesses) and candidate `d` are the extreme
    /// admissible choices and samples of `[0, P₁]`.
    fn normality_witness(&self, witnesses: &[AElem], trials: usize, seed: u64) -> Result<Option<AElem>> {
        let s = &self.space;
        let mut rng = seeded(seed, 4);
        let w = witnesses.len();
        let mut pairs = Vec::new();
        if w <= 64 {
            for i in 0..w {
                for j in 0..w {
                    pairs.push((witnesses[i].clone(), witnesses[j].clone()));
                }
            }
        } else {
            for _ in 0..trials {
                pairs.push((
                    witnesses[rng.random_range(0..w)].clone(),
                    witnesses[rng.random_range(0..w)].clone(),
                ));
            }
        }
        if let BaseKind::Jb(_) = self.kind {
            // non-commuting pairs as well
            for _ in 0..trials.min(200) {
                pairs.push((s.random_sharp(&mut rng), s.random_sharp(&mut rng)));
            }
        }
        let unit = s.unit();
        for (p1, p2) in pairs {
            let mut ds = vec![s.zero()];
            let lower = &(&p1 + &p2) - &unit;
            if s.in_cone(&lower)? {
                ds.push(lower);
            }
            if let Ok(Some(m)) = self.projections_compatible(&p1, &p2) {
                ds.push(m);
            }
            for _ in 0..4 {
                ds.push(s.sample_below(&p1, &mut rng)?);
            }
            for d in ds {
                let e = &p1 - &d;
                let f = &p2 - &d;
                let total = &(&d + &e) + &f;
                let admissible = s.in_cone(&d)?
                    && s.in_cone(&e)?
                    && s.in_cone(&f)?
                    && s.le(&total, &unit)?;
                if admissible && !self.contains(&d)? {
                    return Ok(Some(d));
                }
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::norms::NormFamily;

    fn jb(n: usize, x: &[f64]) -> AElem {
        AElem::Jb(DMatrix::from_row_slice(n, n, x))
    }

    fn cs(a0: f64, y: &[f64]) -> AElem {
        AElem::CenSym {
            a0,
            y: DVector::from_vec(y.to_vec()),
        }
    }

    fn dv(x: &[f64]) -> DVector<f64> {
        DVector::from_vec(x.to_vec())
    }

    #[test]
    fn up_is_an_f_compression() {
        let s = ModelSpace::jordan(2).unwrap();
        let j = CompMap::jb_up(&s, &jb(2, &[1.0, 0.0, 0.0, 0.0])).unwrap();
        let c = j.check_f_axioms(300, 1).unwrap();
        assert!(c.retraction && c.f_compression, "{c:?}");
        assert!(j.is_smooth(100, 1).unwrap());
        assert!(j.is_compression(100, 1).unwrap());
    }

    #[test]
    fn up_closed_form() {
        let s = ModelSpace::jordan(2).unwrap();
        let j = CompMap::jb_up(&s, &jb(2, &[1.0, 0.0, 0.0, 0.0])).unwrap();
        assert_eq!(
            j.apply(&jb(2, &[2.0, 3.0, 3.0, 5.0])),
            jb(2, &[2.0, 0.0, 0.0, 0.0])
        );
        assert_eq!(
            CompMap::jb_up(&s, &jb(2, &[1.0, 1.0, 1.0, 0.0])).unwrap_err(),
            Error::NotAProjection
        );
    }

    #[test]
    fn mask_is_an_f_compression() {
        let s = ModelSpace::function_space(3).unwrap();
        let j = CompMap::fn_mask(&s, &[true, true, false]).unwrap();
        let c = j.check_f_axioms(300, 1).unwrap();
        assert!(c.retraction && c.f_compression);
        let k = CompMap::fn_mask(&s, &[false, false, true]).unwrap();
        assert!(j.are_complementary(&k, 100, 1).unwrap());
    }

    #[test]
    fn non_extremal_l1_focus_fails_f2_and_f3() {
        // (½, (½, ¼)) is sharp but (½, ¼) is not extreme in ½B*; both F2 and
        // F3 fail for the only admissible x = (1, 0).
        let s = ModelSpace::centrally_symmetric(NormFamily::lp(1.0, 2).unwrap()).unwrap();
        let j = CompMap::cs_rank1(&s, &cs(0.5, &[0.5, 0.25]), &dv(&[1.0, 0.0])).unwrap();
        let c = j.check_f_axioms(500, 1).unwrap();
        assert!(c.positive && c.idempotent && c.f1);
        assert!(!c.f2 && !c.f3 && !c.f_compression);
        let (_, w) = c.witnesses.iter().find(|(k, _)| k == "F3").unwrap();
        assert!(j.apply(w).as_censym().unwrap().0.abs() < 1e-12);
        assert!(!s.le(w, &cs(0.5, &[-0.5, -0.25])).unwrap());
    }

    #[test]
    fn extremal_l1_focus_with_corner_x_fails_f3() {
        let s = ModelSpace::centrally_symmetric(NormFamily::lp(1.0, 2).unwrap()).unwrap();
        let p = cs(0.5, &[0.5, 0.5]);
        let corner = CompMap::cs_rank1(&s, &p, &dv(&[1.0, 0.0])).unwrap();
        let c = corner.check_f_axioms(300, 2).unwrap();
        assert!(c.retraction && !c.f3);
        let mid = CompMap::cs_rank1(&s, &p, &dv(&[0.5, 0.5])).unwrap();
        assert!(mid.check_f_axioms(300, 2).unwrap().f_compression);
    }

    #[test]
    fn smoothness_examples() {
        let l3 = ModelSpace::centrally_symmetric(NormFamily::lp(3.0, 2).unwrap()).unwrap();
        let y = l3.atom(&dv(&[0.3, 0.4]));
        let x = l3.family().unwrap().tie_break(y.as_censym().unwrap().1).unwrap();
        let j = CompMap::cs_rank1(&l3, &y, &x).unwrap();
        assert!(j.is_smooth(200, 3).unwrap());
        assert!(j.neutrality_witness(200, 3).unwrap().is_none());

        let st = ModelSpace::centrally_symmetric(NormFamily::stadium(1.0, 1.0).unwrap()).unwrap();
        let p = cs(0.5, &[0.0, 0.5]);
        let j = CompMap::cs_rank1(&st, &p, &dv(&[0.5, 1.0])).unwrap();
        assert!(!j.is_smooth(200, 3).unwrap());
        assert!(j.neutrality_witness(200, 3).unwrap().is_some());
        assert!(!j.is_compression(200, 3).unwrap());
    }

    #[test]
    fn euclidean_atoms_give_compressions() {
        let s = ModelSpace::centrally_symmetric(NormFamily::lp(2.0, 2).unwrap()).unwrap();
        let p = cs(0.5, &[0.5, 0.0]);
        let j = CompMap::cs_rank1(&s, &p, &dv(&[1.0, 0.0])).unwrap();
        assert_eq!(j.apply(&cs(0.2, &[0.3, 7.0])), cs(0.25, &[0.25, 0.0]));
        assert!(j.is_compression(200, 4).unwrap());
        assert!(!j.are_complementary(&j, 50, 4).unwrap());
    }

    #[test]
    fn rank_one_retraction_preconditions() {
        let s = ModelSpace::centrally_symmetric(NormFamily::lp(2.0, 2).unwrap()).unwrap();
        assert!(matches!(
            CompMap::cs_rank1(&s, &cs(0.5, &[0.1, 0.0]), &dv(&[1.0, 0.0])),
            Err(Error::NotSharpFocus(_))
        ));
        assert_eq!(
            CompMap::cs_rank1(&s, &cs(0.5, &[0.5, 0.0]), &dv(&[0.0, 1.0])).unwrap_err(),
            Error::NotNormAttaining
        );
    }

    #[test]
    fn dense_maps_have_no_complement() {
        let s = ModelSpace::function_space(2).unwrap();
        let m = CompMap::from_matrix(&s, "avg", DMatrix::from_element(2, 2, 0.5)).unwrap();
        assert_eq!(m.complement().unwrap_err(), Error::NoComplementAvailable);
        assert_eq!(m.focus(), &AElem::Fn(dv(&[1.0, 1.0])));
    }
}
