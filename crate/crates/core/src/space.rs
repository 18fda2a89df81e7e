//! Order unit spaces `(A, A⁺, 1)` in separating duality with a base norm space
//! `(V, K)`, realized in three concrete models:
//!
//! * `Fn`: functions on an `n`-point set, `A = V = ℝⁿ` with the dot product;
//! * `Jb`: real symmetric `n×n` matrices with the trace pairing;
//! * `CenSym`: `A = ℝ × X*`, `V = ℝ × X` for a normed space `X`, whose state
//!   space is affinely the unit ball of `X`.
//!
//! Every model has a linear coordinate chart `A ≅ ℝ^dim` (and a dual chart on
//! `V`) in which the pairing is the Euclidean dot product. Generic code such as
//! the dense matrix of a compression works in these charts.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{asymmetry, jacobi_eigen, SymEigen};
use crate::models::norms::NormFamily;
use crate::rng::seeded;
use crate::tol::Tol;

#[derive(Debug, Clone, PartialEq)]
pub enum ModelKind {
    Fn { n: usize },
    Jb { n: usize },
    CenSym { family: NormFamily },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpace {
    kind: ModelKind,
    tol: Tol,
}

/// An element of the order unit space.
#[derive(Debug, Clone, PartialEq)]
pub enum AElem {
    Fn(DVector<f64>),
    Jb(DMatrix<f64>),
    CenSym { a0: f64, y: DVector<f64> },
}

/// An element of the base norm space.
#[derive(Debug, Clone, PartialEq)]
pub enum VElem {
    Fn(DVector<f64>),
    Jb(DMatrix<f64>),
    CenSym { alpha: f64, x: DVector<f64> },
}

macro_rules! elementwise {
    ($ty:ident, $a:expr, $b:expr, $op:tt, $scalar:ident, $vec:ident) => {
        match ($a, $b) {
            ($ty::Fn(x), $ty::Fn(y)) => $ty::Fn(x $op y),
            ($ty::Jb(x), $ty::Jb(y)) => $ty::Jb(x $op y),
            ($ty::CenSym { $scalar: s, $vec: u }, $ty::CenSym { $scalar: t, $vec: v }) => {
                $ty::CenSym { $scalar: s $op t, $vec: u $op v }
            }
            (l, r) => panic!("mixed-model arithmetic: {l:?} vs {r:?}"),
        }
    };
}

impl Add for &AElem {
    type Output = AElem;
    fn add(self, rhs: &AElem) -> AElem {
        elementwise!(AElem, self, rhs, +, a0, y)
    }
}

impl Sub for &AElem {
    type Output = AElem;
    fn sub(self, rhs: &AElem) -> AElem {
        elementwise!(AElem, self, rhs, -, a0, y)
    }
}

impl Mul<f64> for &AElem {
    type Output = AElem;
    fn mul(self, t: f64) -> AElem {
        match self {
            AElem::Fn(x) => AElem::Fn(x * t),
            AElem::Jb(x) => AElem::Jb(x * t),
            AElem::CenSym { a0, y } => AElem::CenSym {
                a0: a0 * t,
                y: y * t,
            },
        }
    }
}

impl Neg for &AElem {
    type Output = AElem;
    fn neg(self) -> AElem {
        self * -1.0
    }
}

impl Add for &VElem {
    type Output = VElem;
    fn add(self, rhs: &VElem) -> VElem {
        elementwise!(VElem, self, rhs, +, alpha, x)
    }
}

impl Sub for &VElem {
    type Output = VElem;
    fn sub(self, rhs: &VElem) -> VElem {
        elementwise!(VElem, self, rhs, -, alpha, x)
    }
}

impl Mul<f64> for &VElem {
    type Output = VElem;
    fn mul(self, t: f64) -> VElem {
        match self {
            VElem::Fn(x) => VElem::Fn(x * t),
            VElem::Jb(x) => VElem::Jb(x * t),
            VElem::CenSym { alpha, x } => VElem::CenSym {
                alpha: alpha * t,
                x: x * t,
            },
        }
    }
}

impl AElem {
    pub fn as_fn(&self) -> Option<&DVector<f64>> {
        match self {
            AElem::Fn(x) => Some(x),
            _ => None,
        }
    }

    pub fn as_jb(&self) -> Option<&DMatrix<f64>> {
        match self {
            AElem::Jb(x) => Some(x),
            _ => None,
        }
    }

    pub fn as_censym(&self) -> Option<(f64, &DVector<f64>)> {
        match self {
            AElem::CenSym { a0, y } => Some((*a0, y)),
            _ => None,
        }
    }
}

impl ModelSpace {
    pub fn new(kind: ModelKind, tol: Tol) -> Result<Self> {
        match &kind {
            ModelKind::Fn { n } | ModelKind::Jb { n } if *n == 0 => {
                return Err(Error::InvalidDimension("model size must be at least 1".into()))
            }
            _ => {}
        }
        if !tol.is_valid() {
            return Err(Error::Parse("tolerances must be strictly positive".into()));
        }
        Ok(Self { kind, tol })
    }

    pub fn function_space(n: usize) -> Result<Self> {
        Self::new(ModelKind::Fn { n }, Tol::default())
    }

    pub fn jordan(n: usize) -> Result<Self> {
        Self::new(ModelKind::Jb { n }, Tol::default())
    }

    pub fn centrally_symmetric(family: NormFamily) -> Result<Self> {
        Self::new(ModelKind::CenSym { family }, Tol::default())
    }

    pub fn with_tol(mut self, tol: Tol) -> Self {
        self.tol = tol;
        self
    }

    pub fn kind(&self) -> &ModelKind {
        &self.kind
    }

    pub fn tol(&self) -> &Tol {
        &self.tol
    }

    /// Point count, matrix size, or dimension of `X`.
    pub fn n(&self) -> usize {
        match &self.kind {
            ModelKind::Fn { n } | ModelKind::Jb { n } => *n,
            ModelKind::CenSym { family } => family.dim(),
        }
    }

    /// Linear dimension of `A`.
    pub fn dim(&self) -> usize {
        let n = self.n();
        match &self.kind {
            ModelKind::Fn { .. } => n,
            ModelKind::Jb { .. } => n * (n + 1) / 2,
            ModelKind::CenSym { .. } => n + 1,
        }
    }

    pub fn family(&self) -> Option<&NormFamily> {
        match &self.kind {
            ModelKind::CenSym { family } => Some(family),
            _ => None,
        }
    }

    pub fn model_name(&self) -> &'static str {
        match &self.kind {
            ModelKind::Fn { .. } => "fn",
            ModelKind::Jb { .. } => "jb",
            ModelKind::CenSym { .. } => "censym",
        }
    }

    /// Human-readable descriptor, e.g. `fn(n=5)` or `censym(lp:1.5, n=2)`.
    pub fn descriptor(&self) -> String {
        match &self.kind {
            ModelKind::Fn { n } => format!("fn(n={n})"),
            ModelKind::Jb { n } => format!("jb(n={n})"),
            ModelKind::CenSym { family } => {
                format!("censym({}, n={})", family.descriptor(), family.dim())
            }
        }
    }

    pub fn zero(&self) -> AElem {
        let n = self.n();
        match &self.kind {
            ModelKind::Fn { .. } => AElem::Fn(DVector::zeros(n)),
            ModelKind::Jb { .. } => AElem::Jb(DMatrix::zeros(n, n)),
            ModelKind::CenSym { .. } => AElem::CenSym {
                a0: 0.0,
                y: DVector::zeros(n),
            },
        }
    }

    /// The order unit `1`.
    pub fn unit(&self) -> AElem {
        let n = self.n();
        match &self.kind {
            ModelKind::Fn { .. } => AElem::Fn(DVector::from_element(n, 1.0)),
            ModelKind::Jb { .. } => AElem::Jb(DMatrix::identity(n, n)),
            ModelKind::CenSym { .. } => AElem::CenSym {
                a0: 1.0,
                y: DVector::zeros(n),
            },
        }
    }

    pub fn scalar(&self, c: f64) -> AElem {
        &self.unit() * c
    }

    /// `1 - a`.
    pub fn complement(&self, a: &AElem) -> AElem {
        &self.unit() - a
    }

    pub fn check(&self, a: &AElem) -> Result<()> {
        let n = self.n();
        let ok = match (&self.kind, a) {
            (ModelKind::Fn { .. }, AElem::Fn(x)) => x.len() == n,
            (ModelKind::Jb { .. }, AElem::Jb(m)) => {
                if m.nrows() != n || m.ncols() != n {
                    false
                } else if asymmetry(m) > self.tol.eq_tol * (1.0 + m.amax()) {
                    return Err(Error::ShapeMismatch("matrix payload is not symmetric".into()));
                } else {
                    true
                }
            }
            (ModelKind::CenSym { .. }, AElem::CenSym { y, .. }) => y.len() == n,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!(
                "element does not belong to {}",
                self.descriptor()
            )))
        }
    }

    pub fn check_v(&self, v: &VElem) -> Result<()> {
        let n = self.n();
        let ok = match (&self.kind, v) {
            (ModelKind::Fn { .. }, VElem::Fn(x)) => x.len() == n,
            (ModelKind::Jb { .. }, VElem::Jb(m)) => m.nrows() == n && m.ncols() == n,
            (ModelKind::CenSym { .. }, VElem::CenSym { x, .. }) => x.len() == n,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!(
                "dual element does not belong to {}",
                self.descriptor()
            )))
        }
    }

    // ---- coordinate charts -------------------------------------------------

    /// Coordinates of `a`. For matrices: the diagonal, then the upper triangle
    /// row by row; the basis element of an off-diagonal coordinate is `E_ij + E_ji`.
    pub fn coords(&self, a: &AElem) -> DVector<f64> {
        match a {
            AElem::Fn(x) => x.clone(),
            AElem::Jb(m) => sym_coords(m, 1.0),
            AElem::CenSym { a0, y } => {
                let mut c = DVector::zeros(y.len() + 1);
                c[0] = *a0;
                c.rows_mut(1, y.len()).copy_from(y);
                c
            }
        }
    }

    pub fn from_coords(&self, c: &DVector<f64>) -> AElem {
        let n = self.n();
        match &self.kind {
            ModelKind::Fn { .. } => AElem::Fn(c.clone()),
            ModelKind::Jb { .. } => AElem::Jb(sym_from_coords(n, c, 1.0)),
            ModelKind::CenSym { .. } => AElem::CenSym {
                a0: c[0],
                y: c.rows(1, n).into_owned(),
            },
        }
    }

    /// Dual chart: `pairing(a, v) = coords(a) · v_coords(v)`.
    pub fn v_coords(&self, v: &VElem) -> DVector<f64> {
        match v {
            VElem::Fn(x) => x.clone(),
            VElem::Jb(m) => sym_coords(m, 2.0),
            VElem::CenSym { alpha, x } => {
                let mut c = DVector::zeros(x.len() + 1);
                c[0] = *alpha;
                c.rows_mut(1, x.len()).copy_from(x);
                c
            }
        }
    }

    pub fn v_from_coords(&self, c: &DVector<f64>) -> VElem {
        let n = self.n();
        match &self.kind {
            ModelKind::Fn { .. } => VElem::Fn(c.clone()),
            ModelKind::Jb { .. } => VElem::Jb(sym_from_coords(n, c, 0.5)),
            ModelKind::CenSym { .. } => VElem::CenSym {
                alpha: c[0],
                x: c.rows(1, n).into_owned(),
            },
        }
    }

    pub fn basis(&self) -> Vec<AElem> {
        (0..self.dim())
            .map(|k| {
                let mut c = DVector::zeros(self.dim());
                c[k] = 1.0;
                self.from_coords(&c)
            })
            .collect()
    }

    // ---- numerical kernels -------------------------------------------------

    pub(crate) fn eig(&self, m: &DMatrix<f64>) -> Result<SymEigen> {
        jacobi_eigen(m, self.tol.max_sweeps)
    }

    pub fn dual_norm(&self, y: &DVector<f64>) -> f64 {
        self.family().map(|f| f.dual_norm(y)).unwrap_or(f64::NAN)
    }

    // ---- order structure ---------------------------------------------------

    /// `a ∈ A⁺`.
    pub fn in_cone(&self, a: &AElem) -> Result<bool> {
        self.check(a)?;
        let tol = self.tol.psd_tol;
        Ok(match a {
            AElem::Fn(x) => x.iter().all(|v| *v >= -tol),
            AElem::Jb(m) => {
                let e = self.eig(m)?;
                e.min() >= -tol * (1.0 + e.spectral_radius())
            }
            AElem::CenSym { a0, y } => self.dual_norm(y) <= a0 + tol,
        })
    }

    /// `a ≤ b`.
    pub fn le(&self, a: &AElem, b: &AElem) -> Result<bool> {
        self.in_cone(&(b - a))
    }

    /// `‖a‖₁ = inf{λ ≥ 0 : -λ ≤ a ≤ λ}`.
    pub fn order_unit_norm(&self, a: &AElem) -> Result<f64> {
        self.check(a)?;
        Ok(match a {
            AElem::Fn(x) => x.amax(),
            AElem::Jb(m) => self.eig(m)?.spectral_radius(),
            AElem::CenSym { a0, y } => self.dual_norm(y) + a0.abs(),
        })
    }

    /// `‖a - b‖₁ ≤ eq_tol·(1 + ‖a‖₁ + ‖b‖₁)`.
    pub fn approx_eq(&self, a: &AElem, b: &AElem) -> Result<bool> {
        let d = self.order_unit_norm(&(a - b))?;
        let s = self.order_unit_norm(a)? + self.order_unit_norm(b)?;
        Ok(d <= self.tol.eq_tol * (1.0 + s))
    }

    /// Base norm of `v`: `ℓ₁` for functions, trace norm for matrices,
    /// `max{|α|, ‖x‖}` for the centrally symmetric model.
    pub fn base_norm(&self, v: &VElem) -> Result<f64> {
        self.check_v(v)?;
        Ok(match v {
            VElem::Fn(x) => x.iter().map(|t| t.abs()).sum(),
            VElem::Jb(m) => self.eig(m)?.values.iter().map(|t| t.abs()).sum(),
            VElem::CenSym { alpha, x } => {
                let f = self.family().expect("censym space");
                alpha.abs().max(f.primal_norm(x))
            }
        })
    }

    pub fn pairing(&self, a: &AElem, v: &VElem) -> Result<f64> {
        self.check(a)?;
        self.check_v(v)?;
        Ok(self.coords(a).dot(&self.v_coords(v)))
    }

    /// `v ∈ V⁺`.
    pub fn in_v_cone(&self, v: &VElem) -> Result<bool> {
        self.check_v(v)?;
        let tol = self.tol.psd_tol;
        Ok(match v {
            VElem::Fn(x) => x.iter().all(|t| *t >= -tol),
            VElem::Jb(m) => {
                let e = self.eig(m)?;
                e.min() >= -tol * (1.0 + e.spectral_radius())
            }
            VElem::CenSym { alpha, x } => {
                self.family().expect("censym space").primal_norm(x) <= alpha + tol
            }
        })
    }

    /// `v ∈ K`: positive with `⟨1, v⟩ = 1`.
    pub fn is_state(&self, v: &VElem) -> Result<bool> {
        Ok(self.in_v_cone(v)? && (self.pairing(&self.unit(), v)? - 1.0).abs() <= self.tol.eq_tol)
    }

    /// `0 ≤ a ≤ 1`.
    pub fn is_effect(&self, a: &AElem) -> Result<bool> {
        Ok(self.in_cone(a)? && self.in_cone(&self.complement(a))?)
    }

    fn require_effect(&self, e: &AElem) -> Result<()> {
        if self.is_effect(e)? {
            Ok(())
        } else {
            Err(Error::NotAnEffect)
        }
    }

    /// Sharpness: no nonzero effect lies below both `e` and `1 - e`.
    ///
    /// Decided by the exact model characterization: characteristic functions,
    /// projections (`e² = e`), or `0`, `1` and `(½, y)` with `‖y‖* = ½`.
    pub fn is_sharp(&self, e: &AElem) -> Result<bool> {
        self.require_effect(e)?;
        let tol = self.tol.eq_tol;
        Ok(match e {
            AElem::Fn(x) => x.iter().all(|v| v.abs() <= tol || (v - 1.0).abs() <= tol),
            AElem::Jb(m) => self.order_unit_norm(&AElem::Jb(m * m - m))? <= tol,
            AElem::CenSym { a0, y } => {
                let ny = self.dual_norm(y);
                let trivial = ny <= tol && (a0.abs() <= tol || (a0 - 1.0).abs() <= tol);
                trivial || ((a0 - 0.5).abs() <= tol && (ny - 0.5).abs() <= tol)
            }
        })
    }

    /// Extreme point of the unit interval `E`.
    ///
    /// Exact in all models: sharp elements in the function and matrix models,
    /// and in the centrally symmetric model `0`, `1`, or `(½, y)` with `2y` an
    /// extreme point of the dual unit ball. `trials`/`rng_seed` drive a
    /// randomized search for a direction `d` with `e ± d ∈ E` that must agree
    /// with the exact answer.
    pub fn is_extremal(&self, e: &AElem, trials: usize, rng_seed: u64) -> Result<bool> {
        self.require_effect(e)?;
        let exact = match e {
            AElem::CenSym { y, .. } => {
                if !self.is_sharp(e)? {
                    false
                } else if self.dual_norm(y) <= self.tol.eq_tol {
                    true
                } else {
                    let u = y * 2.0;
                    self.family().expect("censym").dual_ball_face(&u).len() == 1
                }
            }
            _ => self.is_sharp(e)?,
        };
        if !exact {
            return Ok(false);
        }
        let mut rng = seeded(rng_seed, 0);
        for _ in 0..trials {
            if let Some(d) = self.random_midpoint_direction(e, &mut rng)? {
                let plus = &*e + &d;
                let minus = &*e - &d;
                if self.order_unit_norm(&d)? > self.tol.eq_tol
                    && self.is_effect(&plus)?
                    && self.is_effect(&minus)?
                {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// A direction `d` with `e ± d ∈ E`, or `None` when `e` is extremal.
    /// In the function and matrix models this is `u·min(e, 1 - e)` for a random
    /// `u ∈ (0, 1]`; in the centrally symmetric model a random perturbation of
    /// `y` inside the face of the dual ball.
    pub fn extremal_witness<R: Rng>(&self, e: &AElem, rng: &mut R) -> Result<Option<AElem>> {
        self.require_effect(e)?;
        let d = self.random_midpoint_direction(e, rng)?;
        Ok(d.filter(|d| {
            self.order_unit_norm(d).map(|n| n > self.tol.eq_tol).unwrap_or(false)
                && self.is_effect(&(e + d)).unwrap_or(false)
                && self.is_effect(&(e - d)).unwrap_or(false)
        }))
    }

    fn random_midpoint_direction<R: Rng>(&self, e: &AElem, rng: &mut R) -> Result<Option<AElem>> {
        let u: f64 = rng.random_range(0.05..=1.0);
        Ok(match e {
            AElem::Fn(x) => Some(AElem::Fn(x.map(|v| u * v.min(1.0 - v).max(0.0)))),
            AElem::Jb(m) => {
                let eig = self.eig(m)?;
                Some(AElem::Jb(eig.map(|l| u * l.min(1.0 - l).max(0.0))))
            }
            AElem::CenSym { a0, y } => {
                let f = self.family().expect("censym");
                let ny = f.dual_norm(y);
                let slack = a0.min(1.0 - a0) - ny;
                if slack > self.tol.eq_tol {
                    // interior of E along the y-direction
                    let z = self.random_dual_direction(rng);
                    Some(AElem::CenSym {
                        a0: 0.0,
                        y: z * (u * slack),
                    })
                } else if ny > self.tol.eq_tol && (a0 - 0.5).abs() <= self.tol.eq_tol {
                    let verts = f.dual_ball_face(&(y / ny));
                    if verts.len() < 2 {
                        None
                    } else {
                        let i = rng.random_range(0..verts.len());
                        let dir = &verts[i] - (y / ny);
                        let t = u * 0.5 * ny;
                        Some(AElem::CenSym {
                            a0: 0.0,
                            y: dir * (t / 2.0),
                        })
                    }
                } else {
                    None
                }
            }
        })
    }

    /// Principal (facial) property: `face(e) ∩ E = [0, e]`.
    ///
    /// A falsifier: samples `b ∈ [0, λe]` with `λ ∈ (1, 10]` and `b ≤ 1` and
    /// reports `false` when some such `b` is not below `e`. Sharp elements of the
    /// function and matrix models are answered exactly (projections are principal).
    pub fn is_principal(&self, e: &AElem, trials: usize, rng_seed: u64) -> Result<bool> {
        Ok(self.principal_witness(e, trials, rng_seed)?.is_none())
    }

    /// Counterexample to the principal property, if one is found.
    pub fn principal_witness(
        &self,
        e: &AElem,
        trials: usize,
        rng_seed: u64,
    ) -> Result<Option<AElem>> {
        self.require_effect(e)?;
        if !matches!(self.kind, ModelKind::CenSym { .. }) && self.is_sharp(e)? {
            return Ok(None);
        }
        let mut rng = seeded(rng_seed, 0);
        let unit = self.unit();
        for _ in 0..trials {
            let lambda: f64 = rng.random_range(1.0..=10.0);
            let b = self.sample_below(&(e * lambda), &mut rng)?;
            if self.le(&b, &unit)? && !self.le(&b, e)? {
                return Ok(Some(b));
            }
        }
        Ok(None)
    }

    /// Exact lower/upper spectral bounds `L_a = sup{λ : λ ≤ a}`, `U_a = inf{λ : a ≤ λ}`.
    pub fn spectral_bounds(&self, a: &AElem) -> Result<(f64, f64)> {
        self.check(a)?;
        Ok(match a {
            AElem::Fn(x) => (x.min(), x.max()),
            AElem::Jb(m) => {
                let e = self.eig(m)?;
                (e.min(), e.max())
            }
            AElem::CenSym { a0, y } => {
                let ny = self.dual_norm(y);
                (a0 - ny, a0 + ny)
            }
        })
    }

    /// A state `ρ` (or `-ρ`) with `⟨a, ±ρ⟩ = ‖a‖₁`, witnessing the norm duality.
    pub fn norming_state(&self, a: &AElem) -> Result<VElem> {
        self.check(a)?;
        Ok(match a {
            AElem::Fn(x) => {
                let i = x.iamax();
                let mut v = DVector::zeros(x.len());
                v[i] = x[i].signum();
                VElem::Fn(v)
            }
            AElem::Jb(m) => {
                let e = self.eig(m)?;
                let n = m.nrows();
                let k = (0..n)
                    .max_by(|&i, &j| e.values[i].abs().total_cmp(&e.values[j].abs()))
                    .unwrap_or(0);
                let v = e.vectors.column(k);
                VElem::Jb(&v * v.transpose() * e.values[k].signum())
            }
            AElem::CenSym { a0, y } => {
                let f = self.family().expect("censym");
                let sign = if *a0 >= 0.0 { 1.0 } else { -1.0 };
                let x = if y.amax() == 0.0 {
                    DVector::zeros(y.len())
                } else {
                    f.tie_break(&(y * sign))?
                };
                VElem::CenSym {
                    alpha: sign,
                    x: x * sign,
                }
            }
        })
    }

    /// A seeded stream for one-off sampling by callers that only hold a seed.
    pub fn rng(&self, seed: u64) -> ChaCha8Rng {
        seeded(seed, 0)
    }
}

fn sym_coords(m: &DMatrix<f64>, off_scale: f64) -> DVector<f64> {
    let n = m.nrows();
    let mut c = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        c.push(m[(i, i)]);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            c.push(off_scale * 0.5 * (m[(i, j)] + m[(j, i)]));
        }
    }
    DVector::from_vec(c)
}

fn sym_from_coords(n: usize, c: &DVector<f64>, off_scale: f64) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = c[i];
    }
    let mut k = n;
    for i in 0..n {
        for j in (i + 1)..n {
            m[(i, j)] = off_scale * c[k];
            m[(j, i)] = off_scale * c[k];
            k += 1;
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn fnv(x: &[f64]) -> AElem {
        AElem::Fn(DVector::from_vec(x.to_vec()))
    }

    fn jb(n: usize, x: &[f64]) -> AElem {
        AElem::Jb(DMatrix::from_row_slice(n, n, x))
    }

    fn cs(a0: f64, y: &[f64]) -> AElem {
        AElem::CenSym {
            a0,
            y: DVector::from_vec(y.to_vec()),
        }
    }

    fn l2() -> ModelSpace {
        ModelSpace::centrally_symmetric(NormFamily::lp(2.0, 2).unwrap()).unwrap()
    }

    #[test]
    fn cone_membership() {
        let j = ModelSpace::jordan(2).unwrap();
        assert!(!j.in_cone(&jb(2, &[1.0, 0.0, 0.0, -1.0])).unwrap());
        assert!(l2().in_cone(&cs(1.0, &[0.5, 0.0])).unwrap());
        let f = ModelSpace::function_space(3).unwrap();
        assert!(f.in_cone(&fnv(&[0.0, 0.0, 0.0])).unwrap());
        assert!(matches!(
            f.in_cone(&fnv(&[0.0, 0.0])),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(matches!(
            f.in_cone(&jb(1, &[1.0])),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn asymmetric_payload_is_rejected() {
        let j = ModelSpace::jordan(2).unwrap();
        assert!(matches!(
            j.in_cone(&jb(2, &[1.0, 0.5, 0.0, 1.0])),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn order_unit_norms() {
        let f = ModelSpace::function_space(3).unwrap();
        assert_eq!(f.order_unit_norm(&fnv(&[2.0, 0.0, -1.0])).unwrap(), 2.0);
        let j = ModelSpace::jordan(2).unwrap();
        assert_abs_diff_eq!(
            j.order_unit_norm(&jb(2, &[0.0, 1.0, 1.0, 0.0])).unwrap(),
            1.0,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            l2().order_unit_norm(&cs(0.3, &[0.4, 0.0])).unwrap(),
            0.7,
            epsilon = 1e-15
        );
    }

    #[test]
    fn base_norms() {
        let v = VElem::CenSym {
            alpha: 1.0,
            x: DVector::from_vec(vec![0.2, 0.0]),
        };
        assert_eq!(l2().base_norm(&v).unwrap(), 1.0);
        let f = ModelSpace::function_space(3).unwrap();
        assert_eq!(
            f.base_norm(&VElem::Fn(DVector::from_vec(vec![0.5, -0.5, 0.0])))
                .unwrap(),
            1.0
        );
        let v = VElem::CenSym {
            alpha: 0.0,
            x: DVector::from_vec(vec![2.0, 0.0]),
        };
        assert_eq!(l2().base_norm(&v).unwrap(), 2.0);
    }

    #[test]
    fn pairings() {
        let s = l2();
        let v = VElem::CenSym {
            alpha: 1.0,
            x: DVector::from_vec(vec![0.3, -0.9]),
        };
        assert_eq!(s.pairing(&s.unit(), &v).unwrap(), 1.0);
        let j = ModelSpace::jordan(2).unwrap();
        let rho = VElem::Jb(DMatrix::from_diagonal(&DVector::from_vec(vec![0.5, 0.5])));
        assert_abs_diff_eq!(j.pairing(&j.unit(), &rho).unwrap(), 1.0);
        let f = ModelSpace::function_space(3).unwrap();
        let e1 = VElem::Fn(DVector::from_vec(vec![1.0, 0.0, 0.0]));
        assert_eq!(f.pairing(&fnv(&[1.0, 2.0, 3.0]), &e1).unwrap(), 1.0);
    }

    #[test]
    fn matrix_pairing_is_trace_of_product() {
        let j = ModelSpace::jordan(3).unwrap();
        let a = DMatrix::from_row_slice(3, 3, &[1.0, 2.0, 3.0, 2.0, -1.0, 0.5, 3.0, 0.5, 2.0]);
        let b = DMatrix::from_row_slice(3, 3, &[0.2, -1.0, 0.0, -1.0, 1.0, 0.7, 0.0, 0.7, 3.0]);
        let expect = (&a * &b).trace();
        let got = j.pairing(&AElem::Jb(a), &VElem::Jb(b)).unwrap();
        assert_abs_diff_eq!(got, expect, epsilon = 1e-13);
    }

    #[test]
    fn effects() {
        assert!(l2().is_effect(&cs(0.5, &[0.5, 0.0])).unwrap());
        let j = ModelSpace::jordan(2).unwrap();
        assert!(!j.is_effect(&jb(2, &[1.5, 0.0, 0.0, 0.0])).unwrap());
        let f = ModelSpace::function_space(3).unwrap();
        assert!(f.is_effect(&fnv(&[0.0, 1.0, 0.5])).unwrap());
    }

    #[test]
    fn sharp_elements() {
        let j = ModelSpace::jordan(2).unwrap();
        assert!(j.is_sharp(&jb(2, &[1.0, 0.0, 0.0, 0.0])).unwrap());
        assert!(l2().is_sharp(&cs(0.5, &[0.5, 0.0])).unwrap());
        let f = ModelSpace::function_space(3).unwrap();
        assert!(!f.is_sharp(&fnv(&[0.5, 1.0, 0.0])).unwrap());
        assert_eq!(f.is_sharp(&fnv(&[2.0, 1.0, 0.0])), Err(Error::NotAnEffect));
    }

    #[test]
    fn extremal_elements() {
        let st = ModelSpace::centrally_symmetric(NormFamily::stadium(1.0, 1.0).unwrap()).unwrap();
        assert!(st.is_extremal(&cs(0.5, &[0.0, 0.5]), 50, 1).unwrap());
        let f = ModelSpace::function_space(3).unwrap();
        assert!(f.is_extremal(&fnv(&[1.0, 0.0, 0.0]), 50, 1).unwrap());
        let j = ModelSpace::jordan(2).unwrap();
        assert!(!j.is_extremal(&jb(2, &[0.5, 0.0, 0.0, 0.5]), 50, 1).unwrap());
        let l1 = ModelSpace::centrally_symmetric(NormFamily::lp(1.0, 2).unwrap()).unwrap();
        assert!(!l1.is_extremal(&cs(0.5, &[0.5, 0.25]), 50, 1).unwrap());
        assert!(l1.is_extremal(&cs(0.5, &[0.5, -0.5]), 50, 1).unwrap());
    }

    #[test]
    fn extremal_witness_splits_interior_points() {
        let j = ModelSpace::jordan(2).unwrap();
        let mut rng = seeded(3, 0);
        let d = j
            .extremal_witness(&jb(2, &[0.5, 0.0, 0.0, 0.5]), &mut rng)
            .unwrap()
            .expect("0.5·1 is a midpoint");
        assert!(j.order_unit_norm(&d).unwrap() > 0.0);
    }

    #[test]
    fn principal_elements() {
        let j = ModelSpace::jordan(2).unwrap();
        assert!(j.is_principal(&jb(2, &[1.0, 0.0, 0.0, 0.0]), 100, 1).unwrap());
        let f = ModelSpace::function_space(3).unwrap();
        let w = f
            .principal_witness(&fnv(&[0.5, 0.0, 0.0]), 200, 1)
            .unwrap()
            .expect("0.5·χ₁ is not principal");
        let x = w.as_fn().unwrap();
        assert!(x[0] > 0.5 && x[0] <= 1.0 && x[1] == 0.0 && x[2] == 0.0);
        assert!(l2().is_principal(&cs(0.5, &[0.5, 0.0]), 500, 1).unwrap());
        let l1 = ModelSpace::centrally_symmetric(NormFamily::lp(1.0, 2).unwrap()).unwrap();
        assert!(!l1.is_principal(&cs(0.5, &[0.5, 0.25]), 2000, 1).unwrap());
    }

    #[test]
    fn coordinate_charts_round_trip_and_pair() {
        let j = ModelSpace::jordan(3).unwrap();
        let a = AElem::Jb(DMatrix::from_row_slice(
            3,
            3,
            &[1.0, 2.0, 3.0, 2.0, -1.0, 0.5, 3.0, 0.5, 2.0],
        ));
        assert_eq!(j.from_coords(&j.coords(&a)), a);
        assert_eq!(j.dim(), 6);
        assert_eq!(l2().dim(), 3);
    }

    #[test]
    fn spectral_bounds_are_exact() {
        let f = ModelSpace::function_space(3).unwrap();
        assert_eq!(f.spectral_bounds(&fnv(&[2.0, 0.0, -1.0])).unwrap(), (-1.0, 2.0));
        assert_eq!(l2().spectral_bounds(&cs(0.0, &[1.0, 0.0])).unwrap(), (-1.0, 1.0));
    }
}
