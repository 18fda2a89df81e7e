//! Norm families on a finite-dimensional space `X` together with their duality maps.
//!
//! `∂*_y` is the set of maximizers of `⟨y,·⟩` on the primal unit ball `B`,
//! `∂_x` the set of norming functionals of `x` in the dual ball `B*`.

use nalgebra::DVector;

use crate::error::{Error, Result};

/// Relative tolerance used to detect ties between coordinates (sign patterns,
/// maximal coordinates) in the polyhedral families.
const TIE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormKind {
    /// `ℓ_p` with exponent in `[1, ∞]`.
    Lp { p: f64 },
    /// Gauge of the Minkowski sum of the segment `[-s e₁, s e₁]` and the disk of radius `r`.
    Stadium { s: f64, r: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormFamily {
    kind: NormKind,
    dim: usize,
}

/// A face of a unit ball, given by its vertices (or by samples for the
/// brute-force approximation used in tests).
#[derive(Debug, Clone, PartialEq)]
pub enum DualityFace {
    Singleton(DVector<f64>),
    Segment(DVector<f64>, DVector<f64>),
    Polytope(Vec<DVector<f64>>),
    Approximate {
        samples: Vec<DVector<f64>>,
        diameter: f64,
    },
}

impl DualityFace {
    pub fn from_vertices(mut v: Vec<DVector<f64>>) -> Self {
        match v.len() {
            0 => DualityFace::Polytope(v),
            1 => DualityFace::Singleton(v.pop().unwrap()),
            2 => {
                let b = v.pop().unwrap();
                let a = v.pop().unwrap();
                DualityFace::Segment(a, b)
            }
            _ => DualityFace::Polytope(v),
        }
    }

    pub fn vertices(&self) -> Vec<DVector<f64>> {
        match self {
            DualityFace::Singleton(x) => vec![x.clone()],
            DualityFace::Segment(a, b) => vec![a.clone(), b.clone()],
            DualityFace::Polytope(v) => v.clone(),
            DualityFace::Approximate { samples, .. } => samples.clone(),
        }
    }

    pub fn is_singleton(&self) -> bool {
        match self {
            DualityFace::Singleton(_) => true,
            DualityFace::Approximate { diameter, .. } => *diameter <= 1e-4,
            _ => false,
        }
    }

    /// Barycenter of the vertices; for a segment this is the midpoint.
    pub fn center(&self) -> DVector<f64> {
        let v = self.vertices();
        let mut c = DVector::zeros(v[0].len());
        for x in &v {
            c += x;
        }
        c / v.len() as f64
    }

    pub fn diameter(&self) -> f64 {
        if let DualityFace::Approximate { diameter, .. } = self {
            return *diameter;
        }
        let v = self.vertices();
        let mut d = 0.0_f64;
        for i in 0..v.len() {
            for j in (i + 1)..v.len() {
                d = d.max((&v[i] - &v[j]).norm());
            }
        }
        d
    }
}

fn signum0(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

fn lr_norm(r: f64, v: &DVector<f64>) -> f64 {
    if r.is_infinite() {
        v.amax()
    } else if r == 1.0 {
        v.iter().map(|x| x.abs()).sum()
    } else if r == 2.0 {
        v.norm()
    } else {
        v.iter().map(|x| x.abs().powf(r)).sum::<f64>().powf(1.0 / r)
    }
}

fn conjugate(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

/// Vertices of the set of maximizers of `⟨v,·⟩` over the unit ball of `ℓ_r`.
fn lr_argmax(r: f64, v: &DVector<f64>) -> Vec<DVector<f64>> {
    let n = v.len();
    let m = v.amax();
    if r == 1.0 {
        (0..n)
            .filter(|&i| v[i].abs() >= m * (1.0 - TIE))
            .map(|i| {
                let mut x = DVector::zeros(n);
                x[i] = signum0(v[i]);
                x
            })
            .collect()
    } else if r.is_infinite() {
        let free: Vec<usize> = (0..n).filter(|&i| v[i].abs() <= TIE * m).collect();
        let base = DVector::from_iterator(
            n,
            (0..n).map(|i| if free.contains(&i) { 0.0 } else { signum0(v[i]) }),
        );
        box_vertices(&base, &free)
    } else {
        let q = conjugate(r);
        let norm = lr_norm(q, v);
        let scale = norm.powf(q - 1.0);
        vec![v.map(|x| signum0(x) * x.abs().powf(q - 1.0) / scale)]
    }
}

fn box_vertices(base: &DVector<f64>, free: &[usize]) -> Vec<DVector<f64>> {
    let mut out = Vec::with_capacity(1 << free.len());
    for mask in 0..(1usize << free.len()) {
        let mut x = base.clone();
        for (bit, &i) in free.iter().enumerate() {
            x[i] = if mask & (1 << bit) != 0 { 1.0 } else { -1.0 };
        }
        out.push(x);
    }
    out
}

impl NormFamily {
    pub fn lp(p: f64, dim: usize) -> Result<Self> {
        if !(p >= 1.0) {
            return Err(Error::Parse(format!("lp exponent must lie in [1, inf], got {p}")));
        }
        if dim == 0 {
            return Err(Error::InvalidDimension("lp family needs dimension >= 1".into()));
        }
        Ok(Self {
            kind: NormKind::Lp { p },
            dim,
        })
    }

    pub fn stadium(s: f64, r: f64) -> Result<Self> {
        if !(s > 0.0 && r > 0.0) {
            return Err(Error::Parse(format!(
                "stadium parameters must be positive, got s={s}, r={r}"
            )));
        }
        Ok(Self {
            kind: NormKind::Stadium { s, r },
            dim: 2,
        })
    }

    pub fn kind(&self) -> NormKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Short descriptor as accepted by the command line, e.g. `lp:1.5`, `stadium:1,1`.
    pub fn descriptor(&self) -> String {
        match self.kind {
            NormKind::Lp { p } if p.is_infinite() => "lp:inf".to_string(),
            NormKind::Lp { p } => format!("lp:{p}"),
            NormKind::Stadium { s, r } => format!("stadium:{s},{r}"),
        }
    }

    /// Unique norming functional at every nonzero point.
    pub fn smooth(&self) -> bool {
        match self.kind {
            NormKind::Lp { p } => self.dim == 1 || (p > 1.0 && p.is_finite()),
            NormKind::Stadium { .. } => true,
        }
    }

    /// Every boundary point of the unit ball is extreme.
    pub fn strictly_convex(&self) -> bool {
        match self.kind {
            NormKind::Lp { p } => self.dim == 1 || (p > 1.0 && p.is_finite()),
            NormKind::Stadium { .. } => false,
        }
    }

    fn check(&self, v: &DVector<f64>) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} for a family of dimension {}",
                v.len(),
                self.dim
            )));
        }
        Ok(())
    }

    /// The norm of `X`. For the stadium this is the Minkowski gauge, computed by
    /// bisection on the scale `t` to absolute precision `1e-12·(1+‖x‖₂)`.
    pub fn primal_norm(&self, x: &DVector<f64>) -> f64 {
        match self.kind {
            NormKind::Lp { p } => lr_norm(p, x),
            NormKind::Stadium { s, r } => {
                let (x1, x2) = (x[0].abs(), x[1]);
                let feasible = |t: f64| {
                    let d1 = (x1 - t * s).max(0.0);
                    (d1 * d1 + x2 * x2).sqrt() <= t * r
                };
                let mut hi = x.norm() / r;
                if hi == 0.0 {
                    return 0.0;
                }
                let mut lo = 0.0;
                let eps = 1e-12 * (1.0 + x.norm());
                while hi - lo > eps {
                    let mid = 0.5 * (lo + hi);
                    if feasible(mid) {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                hi
            }
        }
    }

    /// The dual norm on `X*`, i.e. the support function of the primal unit ball.
    pub fn dual_norm(&self, y: &DVector<f64>) -> f64 {
        match self.kind {
            NormKind::Lp { p } => lr_norm(conjugate(p), y),
            NormKind::Stadium { s, r } => s * y[0].abs() + r * y.norm(),
        }
    }

    /// `∂*_y`: points of the primal unit ball where `y` attains its norm.
    pub fn dual_face(&self, y: &DVector<f64>) -> Result<DualityFace> {
        self.check(y)?;
        if y.amax() == 0.0 {
            return Err(Error::ZeroFunctional);
        }
        let face = match self.kind {
            NormKind::Lp { p } => DualityFace::from_vertices(lr_argmax(p, y)),
            NormKind::Stadium { s, r } => {
                let ny = y.norm();
                if y[0].abs() > TIE * ny {
                    let mut x = y * (r / ny);
                    x[0] += signum0(y[0]) * s;
                    DualityFace::Singleton(x)
                } else {
                    let h = r * signum0(y[1]);
                    DualityFace::Segment(
                        DVector::from_vec(vec![-s, h]),
                        DVector::from_vec(vec![s, h]),
                    )
                }
            }
        };
        Ok(face)
    }

    /// `∂_x`: norming functionals of `x` in the dual unit ball.
    pub fn primal_face(&self, x: &DVector<f64>) -> Result<DualityFace> {
        self.check(x)?;
        if x.amax() == 0.0 {
            return Err(Error::ZeroVector);
        }
        let face = match self.kind {
            NormKind::Lp { p } => DualityFace::from_vertices(lr_argmax(conjugate(p), x)),
            NormKind::Stadium { s, r } => {
                let u = x / self.primal_norm(x);
                if u[0].abs() <= s {
                    DualityFace::Singleton(DVector::from_vec(vec![0.0, signum0(u[1]) / r]))
                } else {
                    // u = sign(u₁)·s·e₁ + r·v on the circular arc; the normal is v/(s|v₁|+r).
                    let mut v = u.clone();
                    v[0] -= signum0(u[0]) * s;
                    let v = &v / v.norm();
                    let c = 1.0 / (s * v[0].abs() + r);
                    DualityFace::Singleton(v * c)
                }
            }
        };
        Ok(face)
    }

    /// Vertices of the smallest face of the dual unit ball containing `u`
    /// (`‖u‖* = 1`). A single vertex means `u` is an extreme point of `B*`.
    pub fn dual_ball_face(&self, u: &DVector<f64>) -> Vec<DVector<f64>> {
        match self.kind {
            NormKind::Lp { p } if self.dim > 1 && p == 1.0 => {
                // B* is the ℓ∞ ball: coordinates at ±1 are pinned, the rest are free.
                let m = u.amax();
                let free: Vec<usize> = (0..self.dim)
                    .filter(|&i| u[i].abs() < m * (1.0 - TIE))
                    .collect();
                let base = u.map(signum0);
                box_vertices(&base, &free)
            }
            NormKind::Lp { p } if self.dim > 1 && p.is_infinite() => {
                // B* is the ℓ₁ ball: the face is the simplex on the support of u.
                let m = u.amax();
                (0..self.dim)
                    .filter(|&i| u[i].abs() > TIE * m)
                    .map(|i| {
                        let mut e = DVector::zeros(self.dim);
                        e[i] = signum0(u[i]);
                        e
                    })
                    .collect()
            }
            _ => vec![u.clone()],
        }
    }

    /// Deterministic choice of a point in `∂*_y`: the barycenter of the face.
    pub fn tie_break(&self, y: &DVector<f64>) -> Result<DVector<f64>> {
        Ok(self.dual_face(y)?.center())
    }
}
