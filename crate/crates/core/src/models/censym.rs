//! Centrally symmetric state spaces: `A = ℝ × X*` ordered by `‖y‖* ≤ a₀`,
//! `V = ℝ × X` with states `(1, x)`, `‖x‖ ≤ 1`.
//!
//! Sharp elements other than `0` and `1` are the atoms `(½, y)` with
//! `‖y‖* = ½`. Retractions onto an atom are rank one,
//! `J(a₀, w) = (a₀ + ⟨w, x⟩)·(½, y)` with `x ∈ ∂*_y`; whether they are
//! F-compressions or compressions is decided by the duality faces of the norm.

use nalgebra::DVector;

use crate::compression::{BaseKind, CBlock, CompMap, CompressionBase};
use crate::error::{Error, Result};
use crate::models::norms::{DualityFace, NormFamily, NormKind};
use crate::space::{AElem, ModelKind, ModelSpace};

#[derive(Debug, Clone)]
pub struct CsBase {
    directions: Vec<DVector<f64>>,
}

fn family(space: &ModelSpace) -> Result<&NormFamily> {
    space
        .family()
        .ok_or_else(|| Error::ShapeMismatch("expected a centrally symmetric space".into()))
}

fn parts(a: &AElem) -> Result<(f64, &DVector<f64>)> {
    a.as_censym()
        .ok_or_else(|| Error::ShapeMismatch("expected a centrally symmetric element".into()))
}

/// The rank-one retraction onto the sharp focus `p = (½, y)` along `x ∈ ∂*_y`.
pub fn build_retraction(space: &ModelSpace, p: &AElem, x: &DVector<f64>) -> Result<CompMap> {
    CompMap::cs_rank1(space, p, x)
}

/// Whether `p = (½, y)` with `‖y‖* = ½` within `eq_tol`.
pub fn is_atom(space: &ModelSpace, p: &AElem) -> Result<bool> {
    let (a0, y) = parts(p)?;
    let tol = space.tol().eq_tol;
    Ok((a0 - 0.5).abs() <= tol && (space.dual_norm(y) - 0.5).abs() <= tol)
}

/// For `0 ≤ b ≤ p` with `p` an atom, the scalar `t` with `b = t·p`.
pub fn atom_multiple(space: &ModelSpace, p: &AElem, b: &AElem) -> Result<Option<f64>> {
    let (b0, _) = parts(b)?;
    let t = 2.0 * b0;
    let r = b - &(p * t);
    Ok(if space.order_unit_norm(&r)? <= space.tol().eq_tol * (1.0 + space.order_unit_norm(b)?) {
        Some(t)
    } else {
        None
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FocusClass {
    /// `y` is not an extreme point of `½B*`: no retraction has this focus.
    NoRetraction,
    /// Retractions exist but none satisfies (F3).
    RetractionOnly,
    /// Some retraction is an F-compression but none is a compression.
    FCompression,
    Compression,
}

impl FocusClass {
    pub fn label(&self) -> &'static str {
        match self {
            FocusClass::NoRetraction => "no_retraction",
            FocusClass::RetractionOnly => "retraction_only",
            FocusClass::FCompression => "f_compression",
            FocusClass::Compression => "compression",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Representative {
    pub x: DVector<f64>,
    /// `∂_x`.
    pub primal_face: DualityFace,
    /// Whether `∂_x = {2y}`, i.e. the retraction along `x` is an F-compression.
    pub f_compression: bool,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub class: FocusClass,
    /// `∂*_y`.
    pub dual_face: DualityFace,
    /// Vertices of `∂*_y` that are admissible representatives `x`, plus its barycenter.
    pub representatives: Vec<Representative>,
    /// Vertices of the face of `B*` through `2y` (one vertex when `2y` is extreme).
    pub extremality_face: Vec<DVector<f64>>,
}

/// Classifies the retractions with a sharp focus `p = (½, y)`.
///
/// A retraction with focus `p` exists only when `2y` is an extreme point of
/// `B*`. For `x ∈ ∂*_y` the map along `x` is an F-compression exactly when
/// `∂_x = {2y}`, and a compression when moreover `∂*_y = {x}`.
pub fn classify_focus(space: &ModelSpace, p: &AElem) -> Result<Classification> {
    let f = family(space)?;
    if !is_atom(space, p)? {
        let (a0, y) = parts(p)?;
        return Err(Error::NotSharpFocus(format!(
            "expected a₀ = ½ and ‖y‖* = ½, got a₀ = {a0}, ‖y‖* = {}",
            space.dual_norm(y)
        )));
    }
    let (_, y) = parts(p)?;
    let u = y * 2.0;
    let extremality_face = f.dual_ball_face(&u);
    let dual_face = f.dual_face(y)?;
    let mut xs = dual_face.vertices();
    if !dual_face.is_singleton() {
        xs.push(dual_face.center());
    }
    let mut representatives = Vec::new();
    for x in xs {
        let primal_face = f.primal_face(&x)?;
        let f_compression = primal_face.is_singleton();
        representatives.push(Representative {
            x,
            primal_face,
            f_compression,
        });
    }
    let class = if extremality_face.len() > 1 {
        FocusClass::NoRetraction
    } else if dual_face.is_singleton() && representatives.iter().all(|r| r.f_compression) {
        FocusClass::Compression
    } else if representatives.iter().any(|r| r.f_compression) {
        FocusClass::FCompression
    } else {
        FocusClass::RetractionOnly
    };
    Ok(Classification {
        class,
        dual_face,
        representatives,
        extremality_face,
    })
}

/// A sharp focus at which no compression exists, together with the retraction
/// that was tried and an effect violating (F3) for it.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub focus: AElem,
    pub x: DVector<f64>,
    pub map: CompMap,
    /// Effect `e` with `J(e) = 0` and `e ≰ 1 - p`, when the search found one.
    pub f3_witness: Option<AElem>,
    /// An element whose comparability would require the failing focus.
    pub element: AElem,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub enum BaseAvailability {
    Available(CompressionBase),
    Unavailable(Box<Certificate>),
}

impl BaseAvailability {
    pub fn base(self) -> Option<CompressionBase> {
        match self {
            BaseAvailability::Available(b) => Some(b),
            BaseAvailability::Unavailable(_) => None,
        }
    }
}

/// The compression base of all sharp elements when the norm is smooth;
/// otherwise a failing-focus certificate.
pub fn build_spectral_base(space: &ModelSpace, trials: usize, seed: u64) -> Result<BaseAvailability> {
    let f = family(space)?;
    let n = f.dim();
    if f.smooth() {
        let mut directions = Vec::new();
        for i in 0..n {
            let mut e = DVector::zeros(n);
            e[i] = 1.0;
            directions.push(e.clone());
            directions.push(-e);
        }
        for i in 0..n {
            for j in (i + 1)..n {
                for (si, sj) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                    let mut e = DVector::zeros(n);
                    e[i] = si;
                    e[j] = sj;
                    directions.push(e);
                }
            }
        }
        return Ok(BaseAvailability::Available(CompressionBase {
            space: space.clone(),
            kind: BaseKind::CenSym(CsBase { directions }),
        }));
    }
    let (y, x, reason) = match f.kind() {
        NormKind::Lp { p } if p == 1.0 => {
            let mut y = DVector::zeros(n);
            y[0] = 0.5;
            y[1] = 0.25;
            let mut x = DVector::zeros(n);
            x[0] = 1.0;
            (y, x, "not smooth: ∂_x is a segment at the vertex x = e₁ of the ℓ₁ ball")
        }
        _ => {
            let y = DVector::from_element(n, 0.5 / n as f64);
            let x = DVector::from_element(n, 1.0);
            (y, x, "not smooth: ∂_x is a simplex at the corner x = (1, …, 1) of the ℓ∞ ball")
        }
    };
    let focus = AElem::CenSym { a0: 0.5, y: y.clone() };
    let map = CompMap::cs_rank1(space, &focus, &x)?;
    let check = map.check_f_axioms(trials, seed)?;
    let f3_witness = check
        .witnesses
        .iter()
        .find(|(k, _)| k == "F3")
        .map(|(_, e)| e.clone());
    Ok(BaseAvailability::Unavailable(Box::new(Certificate {
        focus,
        element: AElem::CenSym { a0: 0.0, y: &y * 2.0 },
        x,
        map,
        f3_witness,
        reason: reason.to_string(),
    })))
}

#[derive(Debug, Clone)]
pub struct SpectralDuality {
    pub holds: bool,
    pub smooth: bool,
    pub strictly_convex: bool,
    /// For smooth but not strictly convex norms: a focus with two distinct
    /// F-compressions, neither of which is a compression.
    pub witness: Option<(AElem, CompMap, CompMap)>,
}

/// Spectral duality holds exactly for smooth and strictly convex norms.
pub fn decide_spectral_duality(space: &ModelSpace) -> Result<SpectralDuality> {
    let f = family(space)?;
    let smooth = f.smooth();
    let strictly_convex = f.strictly_convex();
    let witness = match f.kind() {
        NormKind::Stadium { s, r } if smooth && !strictly_convex => {
            let focus = AElem::CenSym {
                a0: 0.5,
                y: DVector::from_vec(vec![0.0, 0.5 / r]),
            };
            let j1 = CompMap::cs_rank1(space, &focus, &DVector::from_vec(vec![0.0, r]))?;
            let j2 = CompMap::cs_rank1(space, &focus, &DVector::from_vec(vec![0.5 * s, r]))?;
            Some((focus, j1, j2))
        }
        _ => None,
    };
    Ok(SpectralDuality {
        holds: smooth && strictly_convex,
        smooth,
        strictly_convex,
        witness,
    })
}

impl CsBase {
    pub(crate) fn contains(&self, space: &ModelSpace, p: &AElem) -> Result<bool> {
        let (a0, y) = parts(p)?;
        let tol = space.tol().eq_tol;
        if space.dual_norm(y) <= tol {
            return Ok(a0.abs() <= tol || (a0 - 1.0).abs() <= tol);
        }
        if !is_atom(space, p)? {
            return Ok(false);
        }
        let u = y * 2.0;
        Ok(family(space)?.dual_ball_face(&u).len() == 1)
    }

    pub(crate) fn witnesses(&self, space: &ModelSpace) -> Vec<AElem> {
        let mut out = vec![space.zero(), space.unit()];
        out.extend(self.directions.iter().map(|d| space.atom(d)));
        out
    }

    /// `p = (½, w/(2‖w‖*))` when `‖w‖* > |a₀|`, so that
    /// `a = (‖w‖* + a₀)p - (‖w‖* - a₀)(1 - p)`; the cover of `a` for positive
    /// `a`; `0` for negative `a`.
    pub(crate) fn comparability(&self, space: &ModelSpace, a: &AElem) -> Result<AElem> {
        let (a0, w) = parts(a)?;
        let nw = space.dual_norm(w);
        let norm = nw + a0.abs();
        let slack = space.tol().eq_tol * (1.0 + norm);
        if nw > a0.abs() + slack {
            Ok(space.atom(w))
        } else if a0 > slack {
            self.cover(space, &(a * (1.0 / norm)))
        } else {
            Ok(space.zero())
        }
    }

    /// `0` for `e = 0`, the atom `p` when `e = t·p`, otherwise `1`.
    pub(crate) fn cover(&self, space: &ModelSpace, e: &AElem) -> Result<AElem> {
        let (e0, v) = parts(e)?;
        let nv = space.dual_norm(v);
        let norm = nv + e0.abs();
        let tol = space.tol().eq_tol;
        if norm <= tol {
            return Ok(space.zero());
        }
        if nv > tol * norm && (nv - e0).abs() <= tol * (1.0 + norm) {
            return Ok(space.atom(v));
        }
        Ok(space.unit())
    }

    fn axis(&self, space: &ModelSpace, a: &AElem) -> Result<Option<(AElem, AElem)>> {
        let (_, w) = parts(a)?;
        let nw = space.dual_norm(w);
        Ok(if nw > space.tol().eq_tol * (1.0 + space.order_unit_norm(a)?) {
            Some((space.atom(w), space.atom(&(-w))))
        } else {
            None
        })
    }

    pub(crate) fn pc_set(&self, space: &ModelSpace, a: &AElem) -> Result<Vec<AElem>> {
        Ok(match self.axis(space, a)? {
            Some((p, q)) => vec![space.zero(), space.unit(), p, q],
            None => self.witnesses(space),
        })
    }

    pub(crate) fn p_of(&self, space: &ModelSpace, a: &AElem) -> Result<Vec<AElem>> {
        Ok(match self.axis(space, a)? {
            Some((p, q)) => vec![space.zero(), space.unit(), p, q],
            None => vec![space.zero(), space.unit()],
        })
    }

    pub(crate) fn c_block(&self, space: &ModelSpace, a: &AElem) -> Result<CBlock> {
        Ok(match self.axis(space, a)? {
            Some((p, q)) => CBlock {
                projections: vec![space.zero(), space.unit(), p.clone(), q],
                span_basis: vec![space.unit(), p],
            },
            None => CBlock {
                projections: vec![space.zero(), space.unit()],
                span_basis: vec![space.unit()],
            },
        })
    }
}

/// Convenience: the centrally symmetric space of a family.
pub fn space_of(family: NormFamily) -> Result<ModelSpace> {
    ModelSpace::new(ModelKind::CenSym { family }, Default::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(a0: f64, y: &[f64]) -> AElem {
        AElem::CenSym {
            a0,
            y: DVector::from_vec(y.to_vec()),
        }
    }

    fn dv(x: &[f64]) -> DVector<f64> {
        DVector::from_vec(x.to_vec())
    }

    fn lp(p: f64, n: usize) -> ModelSpace {
        space_of(NormFamily::lp(p, n).unwrap()).unwrap()
    }

    fn stadium() -> ModelSpace {
        space_of(NormFamily::stadium(1.0, 1.0).unwrap()).unwrap()
    }

    #[test]
    fn classification_examples() {
        let l3 = lp(3.0, 2);
        let c = classify_focus(&l3, &l3.atom(&dv(&[0.3, 0.4]))).unwrap();
        assert_eq!(c.class, FocusClass::Compression);

        let st = stadium();
        let c = classify_focus(&st, &cs(0.5, &[0.0, 0.5])).unwrap();
        assert_eq!(c.class, FocusClass::FCompression);
        assert!(matches!(c.dual_face, DualityFace::Segment(_, _)));

        let l1 = lp(1.0, 2);
        let c = classify_focus(&l1, &cs(0.5, &[0.5, 0.25])).unwrap();
        assert_eq!(c.class, FocusClass::NoRetraction);
        let c = classify_focus(&l1, &cs(0.5, &[0.5, -0.5])).unwrap();
        assert_eq!(c.class, FocusClass::FCompression);

        let l2 = lp(2.0, 2);
        assert!(matches!(
            classify_focus(&l2, &cs(0.5, &[0.1, 0.0])),
            Err(Error::NotSharpFocus(_))
        ));
    }

    #[test]
    fn retraction_examples() {
        let l2 = lp(2.0, 2);
        let j = build_retraction(&l2, &cs(0.5, &[0.5, 0.0]), &dv(&[1.0, 0.0])).unwrap();
        assert_eq!(j.apply(&cs(1.0, &[2.0, 5.0])), cs(1.5, &[1.5, 0.0]));
        let st = stadium();
        let p = cs(0.5, &[0.0, 0.5]);
        let a = build_retraction(&st, &p, &dv(&[0.0, 1.0])).unwrap();
        let b = build_retraction(&st, &p, &dv(&[0.5, 1.0])).unwrap();
        assert!(a.check_f_axioms(200, 1).unwrap().retraction);
        assert!(b.check_f_axioms(200, 1).unwrap().retraction);
        assert!(a.distance(&b) >= 0.1);
    }

    #[test]
    fn bases() {
        for (space, available) in [
            (lp(2.0, 3), true),
            (stadium(), true),
            (lp(1.0, 2), false),
            (lp(f64::INFINITY, 2), false),
        ] {
            match build_spectral_base(&space, 300, 1).unwrap() {
                BaseAvailability::Available(_) => assert!(available),
                BaseAvailability::Unavailable(cert) => {
                    assert!(!available);
                    assert!(cert.f3_witness.is_some(), "{}", space.descriptor());
                }
            }
        }
    }

    #[test]
    fn duality_decisions() {
        assert!(decide_spectral_duality(&lp(4.0, 2)).unwrap().holds);
        let d = decide_spectral_duality(&stadium()).unwrap();
        assert!(!d.holds && d.smooth);
        let (_, j1, j2) = d.witness.unwrap();
        assert!(j1.distance(&j2) >= 0.1);
        let d = decide_spectral_duality(&lp(f64::INFINITY, 2)).unwrap();
        assert!(!d.holds && !d.smooth);
    }

    #[test]
    fn spectral_examples() {
        let l2 = lp(2.0, 2);
        let base = build_spectral_base(&l2, 10, 1).unwrap().base().unwrap();
        let a = cs(0.0, &[1.0, 0.0]);
        assert_eq!(base.comparability(&a).unwrap(), cs(0.5, &[0.5, 0.0]));
        assert_eq!(base.cover(&cs(0.25, &[0.25, 0.0])).unwrap(), cs(0.5, &[0.5, 0.0]));
        assert_eq!(base.cover(&cs(0.25, &[0.1, 0.0])).unwrap(), l2.unit());
        assert_eq!(base.cover(&l2.zero()).unwrap(), l2.zero());
        let pc = base.pc_set(&a).unwrap();
        assert_eq!(pc.len(), 4);
        assert!(pc.contains(&cs(0.5, &[-0.5, 0.0])));
        let blk = base.c_block(&a).unwrap();
        assert_eq!(blk.span_basis.len(), 2);
    }

    #[test]
    fn one_dimensional_atoms() {
        let l2 = lp(2.0, 2);
        let p = cs(0.5, &[0.0, 0.5]);
        assert_eq!(atom_multiple(&l2, &p, &cs(0.1, &[0.0, 0.1])).unwrap(), Some(0.2));
        assert_eq!(atom_multiple(&l2, &p, &cs(0.1, &[0.05, 0.0])).unwrap(), None);
    }
}
