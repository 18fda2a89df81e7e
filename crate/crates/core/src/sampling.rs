//! Random elements, effects and states, order-interval samplers, and
//! generators of exposed faces of the two cones.

use nalgebra::{DMatrix, DVector};
use rand::seq::IndexedRandom;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::space::{AElem, ModelKind, ModelSpace, VElem};

pub(crate) fn gaussian<R: Rng>(n: usize, rng: &mut R) -> DVector<f64> {
    DVector::from_fn(n, |_, _| StandardNormal.sample(rng))
}

pub(crate) fn goe<R: Rng>(n: usize, rng: &mut R) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| StandardNormal.sample(rng));
    (&g + g.transpose()) * 0.5
}

fn unit_vector<R: Rng>(n: usize, rng: &mut R) -> DVector<f64> {
    loop {
        let g = gaussian(n, rng);
        let norm = g.norm();
        if norm > 1e-6 {
            return g / norm;
        }
    }
}

/// Orthonormal basis with Haar-distributed columns (QR of a Gaussian matrix).
pub(crate) fn random_orthonormal<R: Rng>(n: usize, rng: &mut R) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| StandardNormal.sample(rng));
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    let mut q = q;
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

fn rank_one(v: &DVector<f64>) -> DMatrix<f64> {
    v * v.transpose()
}

/// Unit vectors spanning a subspace plus pairwise sums and differences, which
/// together with random unit vectors generate the rank-one cone of the subspace.
fn rank_one_generators<R: Rng>(w: &DMatrix<f64>, extra: usize, rng: &mut R) -> Vec<DMatrix<f64>> {
    let k = w.ncols();
    let mut out = Vec::new();
    for i in 0..k {
        out.push(rank_one(&w.column(i).into_owned()));
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..k {
        for j in (i + 1)..k {
            let a = (w.column(i) + w.column(j)) * s;
            let b = (w.column(i) - w.column(j)) * s;
            out.push(rank_one(&a));
            out.push(rank_one(&b));
        }
    }
    if k > 1 {
        for _ in 0..extra {
            let c = unit_vector(k, rng);
            out.push(rank_one(&(w * c)));
        }
    }
    out
}

impl ModelSpace {
    /// A random element with standard Gaussian coordinates (GOE for matrices).
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> AElem {
        let n = self.n();
        match self.kind() {
            ModelKind::Fn { .. } => AElem::Fn(gaussian(n, rng)),
            ModelKind::Jb { .. } => AElem::Jb(goe(n, rng)),
            ModelKind::CenSym { .. } => AElem::CenSym {
                a0: StandardNormal.sample(rng),
                y: gaussian(n, rng),
            },
        }
    }

    /// A random effect: uniform coordinates, a clamped Gaussian spectrum, or a
    /// point of `E` with `‖y‖*` uniform below `min{a₀, 1-a₀}`.
    pub fn random_effect<R: Rng>(&self, rng: &mut R) -> Result<AElem> {
        let n = self.n();
        Ok(match self.kind() {
            ModelKind::Fn { .. } => AElem::Fn(DVector::from_fn(n, |_, _| rng.random::<f64>())),
            ModelKind::Jb { .. } => {
                let e = self.eig(&goe(n, rng))?;
                AElem::Jb(e.map(|l| l.clamp(0.0, 1.0)))
            }
            ModelKind::CenSym { .. } => {
                let a0: f64 = rng.random();
                let radius = rng.random::<f64>() * a0.min(1.0 - a0);
                AElem::CenSym {
                    a0,
                    y: self.random_dual_direction(rng) * radius,
                }
            }
        })
    }

    /// A random projection (sharp element) of the model: a random mask, the
    /// span of random orthonormal vectors, or a random atom `(½, u/2)`.
    pub fn random_sharp<R: Rng>(&self, rng: &mut R) -> AElem {
        let n = self.n();
        match self.kind() {
            ModelKind::Fn { .. } => {
                AElem::Fn(DVector::from_fn(n, |_, _| if rng.random() { 1.0 } else { 0.0 }))
            }
            ModelKind::Jb { .. } => {
                let q = random_orthonormal(n, rng);
                let mut p = DMatrix::zeros(n, n);
                for j in 0..n {
                    if rng.random() {
                        p += rank_one(&q.column(j).into_owned());
                    }
                }
                AElem::Jb(p)
            }
            ModelKind::CenSym { .. } => self.atom(&self.random_dual_direction(rng)),
        }
    }

    /// The atom `(½, u/(2‖u‖*))` of the centrally symmetric model.
    pub fn atom(&self, u: &DVector<f64>) -> AElem {
        let nu = self.dual_norm(u);
        AElem::CenSym {
            a0: 0.5,
            y: u * (0.5 / nu),
        }
    }

    /// A random state.
    pub fn random_state<R: Rng>(&self, rng: &mut R) -> VElem {
        let n = self.n();
        match self.kind() {
            ModelKind::Fn { .. } => {
                let w = DVector::from_fn(n, |_, _| -rng.random::<f64>().max(1e-300).ln());
                let s = w.sum();
                VElem::Fn(w / s)
            }
            ModelKind::Jb { .. } => {
                let g: DMatrix<f64> = DMatrix::from_fn(n, n, |_, _| { let z: f64 = StandardNormal.sample(rng); z });
                let m = &g * g.transpose();
                let t = m.trace();
                VElem::Jb(m / t)
            }
            ModelKind::CenSym { .. } => {
                let radius: f64 = rng.random::<f64>().sqrt();
                VElem::CenSym {
                    alpha: 1.0,
                    x: self.random_primal_direction(rng) * radius,
                }
            }
        }
    }

    /// A random pure state: point mass, unit-vector state, or boundary point `(1, x)`, `‖x‖ = 1`.
    pub fn random_pure_state<R: Rng>(&self, rng: &mut R) -> VElem {
        let n = self.n();
        match self.kind() {
            ModelKind::Fn { .. } => {
                let mut v = DVector::zeros(n);
                v[rng.random_range(0..n)] = 1.0;
                VElem::Fn(v)
            }
            ModelKind::Jb { .. } => VElem::Jb(rank_one(&unit_vector(n, rng))),
            ModelKind::CenSym { .. } => VElem::CenSym {
                alpha: 1.0,
                x: self.random_primal_direction(rng),
            },
        }
    }

    /// A random `z ∈ X*` with `‖z‖* = 1`.
    pub fn random_dual_direction<R: Rng>(&self, rng: &mut R) -> DVector<f64> {
        let n = self.n();
        loop {
            let g = gaussian(n, rng);
            let ng = self.dual_norm(&g);
            if ng > 1e-6 {
                return g / ng;
            }
        }
    }

    /// A random `x ∈ X` with `‖x‖ = 1`.
    pub fn random_primal_direction<R: Rng>(&self, rng: &mut R) -> DVector<f64> {
        let f = self.family().expect("centrally symmetric space");
        loop {
            let g = gaussian(self.n(), rng);
            let ng = f.primal_norm(&g);
            if ng > 1e-6 {
                return g / ng;
            }
        }
    }

    /// A random element of the order interval `[0, c]`, `c ∈ A⁺`.
    ///
    /// The sampler deliberately puts mass on the boundary of the interval
    /// (coordinates clamped to `0` or `c`, compressions of projections,
    /// boundary rays of the cone) where order-theoretic counterexamples live.
    pub fn sample_below<R: Rng>(&self, c: &AElem, rng: &mut R) -> Result<AElem> {
        if !self.in_cone(c)? {
            return Err(Error::NotPositive);
        }
        Ok(match c {
            AElem::Fn(x) => AElem::Fn(x.map(|v| {
                let u: f64 = match rng.random_range(0..4) {
                    0 => 0.0,
                    1 => 1.0,
                    _ => rng.random(),
                };
                u * v.max(0.0)
            })),
            AElem::Jb(m) => {
                let e = self.eig(m)?;
                // eigenvalues at noise level would leak out of the support under sqrt
                let cut = self.tol().eig_cut * e.spectral_radius();
                let root = e.map(|l| if l > cut { l.sqrt() } else { 0.0 });
                let f = if rng.random() {
                    self.random_sharp(rng)
                } else {
                    self.random_effect(rng)?
                };
                let f = f.as_jb().expect("matrix model").clone();
                AElem::Jb(crate::linalg::symmetrize(&(&root * f * &root)))
            }
            AElem::CenSym { a0, y } => self.sample_below_censym(*a0, y, rng),
        })
    }

    fn sample_below_censym<R: Rng>(&self, c0: f64, w: &DVector<f64>, rng: &mut R) -> AElem {
        let f = self.family().expect("centrally symmetric space");
        let nw = f.dual_norm(w);
        let t: f64 = rng.random();
        let scaled = AElem::CenSym {
            a0: t * c0,
            y: w * t,
        };
        let c = AElem::CenSym {
            a0: c0,
            y: w.clone(),
        };
        match rng.random_range(0..3) {
            0 => scaled,
            1 => {
                // boundary ray (b₀, b₀z) with z in the face of B* through w
                let z = if nw > self.tol().eq_tol {
                    let verts = f.dual_ball_face(&(w / nw));
                    verts.choose(rng).expect("nonempty face").clone()
                } else {
                    self.random_dual_direction(rng)
                };
                let mut b0 = rng.random::<f64>() * c0;
                for _ in 0..20 {
                    let b = AElem::CenSym {
                        a0: b0,
                        y: &z * b0,
                    };
                    if self.in_cone(&(&c - &b)).unwrap_or(false) {
                        return b;
                    }
                    b0 *= 0.5;
                }
                scaled
            }
            _ => {
                // interior perturbation of t·c that stays inside [0, c]
                let slack = t.min(1.0 - t) * (c0 - nw).max(0.0);
                let z = self.random_dual_direction(rng);
                let u: f64 = rng.random();
                &scaled
                    + &AElem::CenSym {
                        a0: 0.0,
                        y: z * (u * slack),
                    }
            }
        }
    }

    /// Generators of the face of `A⁺` exposed by `σ ∈ V⁺`, i.e. of
    /// `{a ∈ A⁺ : ⟨a, σ⟩ = 0}`. Rank-one cones are represented by a spanning
    /// family plus `extra` random members.
    pub fn cone_face_generators<R: Rng>(
        &self,
        sigma: &VElem,
        extra: usize,
        rng: &mut R,
    ) -> Result<Vec<AElem>> {
        self.check_v(sigma)?;
        let tol = self.tol().eq_tol;
        let n = self.n();
        Ok(match sigma {
            VElem::Fn(s) => {
                let scale = 1.0 + s.amax();
                (0..n)
                    .filter(|&i| s[i].abs() <= tol * scale)
                    .map(|i| {
                        let mut e = DVector::zeros(n);
                        e[i] = 1.0;
                        AElem::Fn(e)
                    })
                    .collect()
            }
            VElem::Jb(s) => {
                let w = self.kernel_basis(s)?;
                rank_one_generators(&w, extra, rng)
                    .into_iter()
                    .map(AElem::Jb)
                    .collect()
            }
            VElem::CenSym { alpha, x } => {
                let f = self.family().expect("centrally symmetric space");
                let nx = f.primal_norm(x);
                let scale = 1.0 + alpha.abs();
                if alpha.abs() <= tol * scale && nx <= tol * scale {
                    self.whole_censym_cone(extra, rng)
                } else if nx < alpha - tol * scale {
                    Vec::new()
                } else {
                    f.primal_face(&(x / nx))?
                        .vertices()
                        .into_iter()
                        .map(|z| AElem::CenSym { a0: 1.0, y: -z })
                        .collect()
                }
            }
        })
    }

    fn whole_censym_cone<R: Rng>(&self, extra: usize, rng: &mut R) -> Vec<AElem> {
        let n = self.n();
        let mut out = vec![self.unit()];
        for i in 0..n {
            for sign in [1.0, -1.0] {
                let mut e = DVector::zeros(n);
                e[i] = sign;
                let ne = self.dual_norm(&e);
                out.push(AElem::CenSym { a0: 1.0, y: e / ne });
            }
        }
        for _ in 0..extra {
            out.push(AElem::CenSym {
                a0: 1.0,
                y: self.random_dual_direction(rng),
            });
        }
        out
    }

    /// Generators of the face of the state space `K` exposed by `a ∈ A⁺`, i.e.
    /// of `{ρ ∈ K : ⟨a, ρ⟩ = 0}`.
    pub fn state_face_generators<R: Rng>(
        &self,
        a: &AElem,
        extra: usize,
        rng: &mut R,
    ) -> Result<Vec<VElem>> {
        self.check(a)?;
        let tol = self.tol().eq_tol;
        let n = self.n();
        Ok(match a {
            AElem::Fn(x) => {
                let scale = 1.0 + x.amax();
                (0..n)
                    .filter(|&i| x[i].abs() <= tol * scale)
                    .map(|i| {
                        let mut e = DVector::zeros(n);
                        e[i] = 1.0;
                        VElem::Fn(e)
                    })
                    .collect()
            }
            AElem::Jb(m) => {
                let w = self.kernel_basis(m)?;
                rank_one_generators(&w, extra, rng)
                    .into_iter()
                    .map(VElem::Jb)
                    .collect()
            }
            AElem::CenSym { a0, y } => {
                let f = self.family().expect("centrally symmetric space");
                let ny = f.dual_norm(y);
                let scale = 1.0 + a0.abs();
                if a0.abs() <= tol * scale && ny <= tol * scale {
                    let mut out = vec![VElem::CenSym {
                        alpha: 1.0,
                        x: DVector::zeros(n),
                    }];
                    for _ in 0..extra.max(2 * n) {
                        out.push(VElem::CenSym {
                            alpha: 1.0,
                            x: self.random_primal_direction(rng),
                        });
                    }
                    out
                } else if ny < a0 - tol * scale {
                    Vec::new()
                } else {
                    f.dual_face(&(-y))?
                        .vertices()
                        .into_iter()
                        .map(|x| VElem::CenSym { alpha: 1.0, x })
                        .collect()
                }
            }
        })
    }

    /// Orthonormal basis (columns) of the eigenspace of a positive matrix for
    /// eigenvalues `≤ eig_cut·max(1, ‖m‖)`.
    pub(crate) fn kernel_basis(&self, m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        let e = self.eig(m)?;
        let cut = self.tol().eig_cut * e.spectral_radius().max(1.0);
        let cols: Vec<DVector<f64>> = (0..m.nrows())
            .filter(|&k| e.values[k].abs() <= cut)
            .map(|k| e.vectors.column(k).into_owned())
            .collect();
        Ok(if cols.is_empty() {
            DMatrix::zeros(m.nrows(), 0)
        } else {
            DMatrix::from_columns(&cols)
        })
    }
}
