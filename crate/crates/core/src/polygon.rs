//! Convex polygons with prescribed edge directions, parametrized by their
//! support numbers.
//!
//! A [`NormalFan2D`] fixes the outward normals `u_i`; a support vector `h`
//! places edge `i` on the line `⟨x, u_i⟩ = h_i`. Edge lengths are linear in
//! `h`, the area is the quadratic form `½Σ h_i ℓ_i(h)`, and the translation
//! plane `{h^x}` is its kernel.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};
use crate::forms::{HermitianForm, SymmetricForm};
use crate::linalg::{least_squares, norm};

/// Largest allowed `|Σθ − 2π|` for a fan given by turning angles.
pub const TURNING_SUM_TOLERANCE: f64 = 1e-9;
/// Cone membership tolerance, relative to `‖h‖`.
pub const CONE_TOLERANCE: f64 = 1e-12;
/// Closure tolerance of the edge-vector chart, relative to `‖z‖`.
pub const CLOSURE_TOLERANCE: f64 = 1e-10;

/// Cyclic sequence of outward unit normals of a convex polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalFan2D {
    angles: Vec<f64>,
    turning: Vec<f64>,
}

impl NormalFan2D {
    /// Normals given by their angles in radians, cyclically increasing.
    pub fn from_radians(angles: &[f64]) -> Result<Self> {
        ensure_finite(angles, "normal angles")?;
        let n = angles.len();
        if n < 3 {
            return Err(Error::InvalidInput(format!("a polygon fan needs at least 3 normals, got {n}")));
        }
        let angles: Vec<f64> = angles.iter().map(|a| a.rem_euclid(TAU)).collect();
        let turning: Vec<f64> = (0..n)
            .map(|i| (angles[(i + 1) % n] - angles[i]).rem_euclid(TAU))
            .collect();
        Self::validate_turning(&turning)?;
        Ok(NormalFan2D { angles, turning })
    }

    pub fn from_degrees(degrees: &[f64]) -> Result<Self> {
        let rad: Vec<f64> = degrees.iter().map(|d| d.to_radians()).collect();
        Self::from_radians(&rad)
    }

    /// Fan whose first normal points at `start` and whose consecutive normals
    /// turn by the given angles.
    pub fn from_turning_angles(start: f64, turning: &[f64]) -> Result<Self> {
        ensure_finite(turning, "turning angles")?;
        if turning.len() < 3 {
            return Err(Error::InvalidInput(format!(
                "a polygon fan needs at least 3 normals, got {}",
                turning.len()
            )));
        }
        Self::validate_turning(turning)?;
        let mut angles = Vec::with_capacity(turning.len());
        let mut a = start;
        for t in turning {
            angles.push(a.rem_euclid(TAU));
            a += t;
        }
        Ok(NormalFan2D { angles, turning: turning.to_vec() })
    }

    fn validate_turning(turning: &[f64]) -> Result<()> {
        for (j, &t) in turning.iter().enumerate() {
            if !(t > 0.0 && t < PI) {
                return Err(Error::InvalidInput(format!(
                    "turning angle {j} is {t}, outside (0, π): consecutive normals must turn strictly convexly"
                )));
            }
        }
        let total: f64 = turning.iter().sum();
        if (total - TAU).abs() > TURNING_SUM_TOLERANCE {
            return Err(Error::InvalidInput(format!(
                "normals wind {total} radians instead of 2π (not cyclically increasing)"
            )));
        }
        Ok(())
    }

    /// Normals at `2πi/n`.
    pub fn regular(n: usize) -> Self {
        let angles: Vec<f64> = (0..n).map(|i| TAU * i as f64 / n as f64).collect();
        NormalFan2D::from_radians(&angles).expect("regular fan is valid for n ≥ 3")
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// Normal angles in `[0, 2π)`.
    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    /// `turning[i]` is the angle from normal `i` to normal `i+1`.
    pub fn turning_angles(&self) -> &[f64] {
        &self.turning
    }

    pub fn normal(&self, i: usize) -> [f64; 2] {
        let a = self.angles[i];
        [a.cos(), a.sin()]
    }

    /// Direction `ψ_i` of edge `i` for the counterclockwise boundary.
    pub fn edge_direction(&self, i: usize) -> f64 {
        self.angles[i] + FRAC_PI_2
    }

    /// Row-major `n×n` matrix `L` with `ℓ(h) = L·h`.
    pub fn edge_length_matrix(&self) -> Vec<f64> {
        let n = self.len();
        let mut l = vec![0.0; n * n];
        for i in 0..n {
            let next = (i + 1) % n;
            let prev = (i + n - 1) % n;
            let (tn, tp) = (self.turning[i], self.turning[prev]);
            l[i * n + i] -= tn.cos() / tn.sin() + tp.cos() / tp.sin();
            l[i * n + next] += 1.0 / tn.sin();
            l[i * n + prev] += 1.0 / tp.sin();
        }
        l
    }

    fn check_len(&self, h: &[f64]) -> Result<()> {
        if h.len() != self.len() {
            return Err(Error::InvalidInput(format!(
                "support vector has {} entries, fan has {} normals",
                h.len(),
                self.len()
            )));
        }
        ensure_finite(h, "support vector")
    }
}

/// Lengths of the edges of the polygon with support vector `h`. Negative
/// values are returned as computed.
pub fn edge_lengths(fan: &NormalFan2D, h: &[f64]) -> Result<Vec<f64>> {
    fan.check_len(h)?;
    let n = fan.len();
    let t = fan.turning_angles();
    Ok((0..n)
        .map(|i| {
            let next = (i + 1) % n;
            let prev = (i + n - 1) % n;
            (h[next] - h[i] * t[i].cos()) / t[i].sin() + (h[prev] - h[i] * t[prev].cos()) / t[prev].sin()
        })
        .collect())
}

/// Position of `h` relative to the cone `{ℓ_i(h) > 0}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConeMembership {
    Interior,
    Boundary { degenerate: Vec<usize> },
    Outside { negative: Vec<usize> },
}

impl ConeMembership {
    pub fn is_interior(&self) -> bool {
        matches!(self, ConeMembership::Interior)
    }

    pub fn is_closed_member(&self) -> bool {
        !matches!(self, ConeMembership::Outside { .. })
    }
}

/// Classifies lengths against `±tol`; shared with the polytope and Fuchsian
/// cones whose edge lengths are also linear in `h`.
pub(crate) fn classify_lengths(lengths: &[f64], tol: f64) -> ConeMembership {
    let negative: Vec<usize> = (0..lengths.len()).filter(|&i| lengths[i] < -tol).collect();
    if !negative.is_empty() {
        return ConeMembership::Outside { negative };
    }
    let degenerate: Vec<usize> = (0..lengths.len()).filter(|&i| lengths[i] <= tol).collect();
    if degenerate.is_empty() {
        ConeMembership::Interior
    } else {
        ConeMembership::Boundary { degenerate }
    }
}

pub fn cone_membership(fan: &NormalFan2D, h: &[f64]) -> Result<ConeMembership> {
    let l = edge_lengths(fan, h)?;
    Ok(classify_lengths(&l, CONE_TOLERANCE * norm(h)))
}

/// The area form `a_P`, with `a_P(h,k) = ½Σ h_i ℓ_i(k)`.
pub fn area_form(fan: &NormalFan2D) -> Result<SymmetricForm> {
    let half: Vec<f64> = fan.edge_length_matrix().iter().map(|x| 0.5 * x).collect();
    SymmetricForm::from_nearly_symmetric(fan.len(), half, 1e-12)
}

/// Area of the polygon with support vector `h` (signed, as a quadratic form).
pub fn area(fan: &NormalFan2D, h: &[f64]) -> Result<f64> {
    let l = edge_lengths(fan, h)?;
    Ok(0.5 * h.iter().zip(&l).map(|(a, b)| a * b).sum::<f64>())
}

/// Mixed area `½Σ h_i ℓ_i(k)`.
pub fn mixed_area(fan: &NormalFan2D, h: &[f64], k: &[f64]) -> Result<f64> {
    fan.check_len(h)?;
    let l = edge_lengths(fan, k)?;
    Ok(0.5 * h.iter().zip(&l).map(|(a, b)| a * b).sum::<f64>())
}

/// Support vector of the single point `x`: `h^x_i = ⟨x, u_i⟩`.
pub fn point_support_vector(fan: &NormalFan2D, x: [f64; 2]) -> Vec<f64> {
    (0..fan.len())
        .map(|i| {
            let u = fan.normal(i);
            x[0] * u[0] + x[1] * u[1]
        })
        .collect()
}

/// Vertices of the polygon, vertex `i` joining edges `i` and `i+1`.
pub fn vertices(fan: &NormalFan2D, h: &[f64]) -> Result<Vec<[f64; 2]>> {
    fan.check_len(h)?;
    let n = fan.len();
    Ok((0..n)
        .map(|i| {
            let j = (i + 1) % n;
            let (a, b) = (fan.normal(i), fan.normal(j));
            let det = a[0] * b[1] - a[1] * b[0];
            [(h[i] * b[1] - h[j] * a[1]) / det, (a[0] * h[j] - b[0] * h[i]) / det]
        })
        .collect())
}

/// Tolerances shared by the Minkowski and Alexandrov–Fenchel checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InequalityTolerances {
    /// Violation threshold: residual must be `≥ −inequality·scale`.
    pub inequality: f64,
    /// Residuals below `equality·scale` trigger the witness search.
    pub equality: f64,
    /// A witness is accepted when the fit residual is below `witness·‖h‖`.
    pub witness: f64,
}

impl Default for InequalityTolerances {
    fn default() -> Self {
        InequalityTolerances { inequality: 1e-12, equality: 1e-10, witness: 1e-7 }
    }
}

/// Translation and scale factor with `h = h^x + λ·k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EqualityWitness {
    pub x: Vec<f64>,
    pub lambda: f64,
    pub fit_residual: f64,
}

/// Outcome of a quadratic inequality check `b(h,k)² ≥ q(h)q(k)` or of its
/// mixed-volume analogue.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub mixed: f64,
    pub first: f64,
    pub second: f64,
    pub residual: f64,
    pub scale: f64,
    pub holds: bool,
    pub equality: bool,
    pub witness: Option<EqualityWitness>,
    pub tolerances: InequalityTolerances,
}

impl InequalityReport {
    /// `residual / scale`.
    pub fn normalized(&self) -> f64 {
        if self.scale > 0.0 { self.residual / self.scale } else { 0.0 }
    }

    /// Turns a violated inequality into [`Error::Falsified`].
    pub fn ensure(self) -> Result<Self> {
        if self.holds {
            Ok(self)
        } else {
            Err(Error::Falsified(format!(
                "inequality violated: residual {:.3e} below −{:.1e}·{:.3e}",
                self.residual, self.tolerances.inequality, self.scale
            )))
        }
    }
}

/// Least-squares fit of `h ≈ Σ_d x_d·t_d + λ·k` over the translation basis
/// `t_d` (columns) and `λ`.
pub(crate) fn fit_witness(translations: &[Vec<f64>], h: &[f64], k: &[f64]) -> Result<EqualityWitness> {
    let rows = h.len();
    let cols = translations.len() + 1;
    let mut a = vec![0.0; rows * cols];
    for r in 0..rows {
        for (d, t) in translations.iter().enumerate() {
            a[r * cols + d] = t[r];
        }
        a[r * cols + cols - 1] = k[r];
    }
    let (sol, fit_residual) = least_squares(&a, rows, cols, h)?;
    Ok(EqualityWitness {
        x: sol[..cols - 1].to_vec(),
        lambda: sol[cols - 1],
        fit_residual,
    })
}

/// Assembles the report from the three form values and looks for a witness
/// when the residual is at equality level.
pub(crate) fn inequality_report(
    mixed: f64,
    first: f64,
    second: f64,
    translations: &[Vec<f64>],
    h: &[f64],
    k: &[f64],
    tol: InequalityTolerances,
) -> Result<InequalityReport> {
    let residual = mixed * mixed - first * second;
    let scale = mixed * mixed + (first * second).abs();
    let holds = residual >= -tol.inequality * scale;
    let equality = residual < tol.equality * scale;
    let mut witness = None;
    if equality {
        let w = fit_witness(translations, h, k)?;
        if w.fit_residual < tol.witness * norm(h) {
            witness = Some(w);
        } else {
            return Err(Error::Inconsistency(format!(
                "equality within {:.1e} (residual {residual:.3e}, scale {scale:.3e}) but no translation+homothety witness (fit residual {:.3e})",
                tol.equality, w.fit_residual
            )));
        }
    }
    Ok(InequalityReport { mixed, first, second, residual, scale, holds, equality, witness, tolerances: tol })
}

fn translation_basis(fan: &NormalFan2D) -> Vec<Vec<f64>> {
    vec![point_support_vector(fan, [1.0, 0.0]), point_support_vector(fan, [0.0, 1.0])]
}

fn require_positive_member(fan: &NormalFan2D, form: &SymmetricForm, h: &[f64], name: &str) -> Result<f64> {
    if !cone_membership(fan, h)?.is_closed_member() {
        return Err(Error::Domain(format!("{name} lies outside the closed cone")));
    }
    let q = form.eval(h);
    if q <= 0.0 {
        return Err(Error::Domain(format!("area of {name} is {q}, not positive")));
    }
    Ok(q)
}

/// Minkowski inequality `a_P(h,k)² ≥ a_P(h)a_P(k)` with equality-case witness.
pub fn minkowski_check(fan: &NormalFan2D, h: &[f64], k: &[f64]) -> Result<InequalityReport> {
    minkowski_check_with(fan, h, k, InequalityTolerances::default())
}

pub fn minkowski_check_with(
    fan: &NormalFan2D,
    h: &[f64],
    k: &[f64],
    tol: InequalityTolerances,
) -> Result<InequalityReport> {
    let form = area_form(fan)?;
    let qh = require_positive_member(fan, &form, h, "h")?;
    let qk = require_positive_member(fan, &form, k, "k")?;
    inequality_report(form.bilinear(h, k), qh, qk, &translation_basis(fan), h, k, tol)
}

/// Hyperbolic distance `arccosh(b(h,k)/√(q(h)q(k)))` between the classes of
/// `h` and `k` modulo translations and homotheties.
pub fn hyperbolic_distance(fan: &NormalFan2D, h: &[f64], k: &[f64]) -> Result<f64> {
    let form = area_form(fan)?;
    for (v, name) in [(h, "h"), (k, "k")] {
        if !cone_membership(fan, v)?.is_interior() {
            return Err(Error::Domain(format!("{name} is not in the open cone")));
        }
    }
    let (qh, qk) = (form.eval(h), form.eval(k));
    if qh <= 0.0 || qk <= 0.0 {
        return Err(Error::Domain("areas must be positive".into()));
    }
    let arg = form.bilinear(h, k) / (qh * qk).sqrt();
    if arg < 1.0 - 1e-12 {
        return Err(Error::Inconsistency(format!("normalized pairing {arg} is below 1")));
    }
    Ok(arg.max(1.0).acosh())
}

/// The shoelace Hermitian form `A(z) = ½·Im Σ_{j<k} z̄_j z_k` on `ℂⁿ`.
pub fn shoelace_hermitian(n: usize) -> HermitianForm {
    let mut e = vec![Complex64::new(0.0, 0.0); n * n];
    for j in 0..n {
        for k in (j + 1)..n {
            e[j * n + k] = Complex64::new(0.0, -0.25);
            e[k * n + j] = Complex64::new(0.0, 0.25);
        }
    }
    HermitianForm::new(n, e).expect("shoelace matrix is Hermitian")
}

/// Basis `e_j − e_n` of the closure hyperplane `{Σz = 0}` in `ℂⁿ`.
pub fn closure_basis(n: usize) -> Vec<Vec<Complex64>> {
    (0..n - 1)
        .map(|j| {
            let mut v = vec![Complex64::new(0.0, 0.0); n];
            v[j] = Complex64::new(1.0, 0.0);
            v[n - 1] = Complex64::new(-1.0, 0.0);
            v
        })
        .collect()
}

/// Edge vectors of a polygon seen as complex numbers, with the area form.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartEmbedding {
    pub z: Vec<Complex64>,
    pub hermitian: HermitianForm,
    /// `A(z)`, equal to `a_P(h)`; the double has area `2·A(z)`.
    pub area: f64,
    pub closure_defect: f64,
}

/// Complex chart of the doubled polygon: `z_i = ℓ_i(h)·e^{iψ_i}`.
pub fn double_chart_embedding(fan: &NormalFan2D, h: &[f64]) -> Result<ChartEmbedding> {
    if !cone_membership(fan, h)?.is_interior() {
        return Err(Error::Domain("h is not in the open cone".into()));
    }
    let l = edge_lengths(fan, h)?;
    let z: Vec<Complex64> = l
        .iter()
        .enumerate()
        .map(|(i, &len)| Complex64::from_polar(len, fan.edge_direction(i)))
        .collect();
    let sum: Complex64 = z.iter().sum();
    let zn = z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let closure_defect = sum.norm();
    if closure_defect > CLOSURE_TOLERANCE * zn {
        return Err(Error::Inconsistency(format!(
            "edge vectors do not close up: |Σz| = {closure_defect:.3e}"
        )));
    }
    let hermitian = shoelace_hermitian(fan.len());
    let area = hermitian.eval(&z);
    Ok(ChartEmbedding { z, hermitian, area, closure_defect })
}

/// A fan together with a support vector in the closed cone.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonSupport {
    pub fan: NormalFan2D,
    pub h: Vec<f64>,
    pub interior: bool,
}

impl PolygonSupport {
    pub fn new(fan: NormalFan2D, h: Vec<f64>) -> Result<Self> {
        let membership = cone_membership(&fan, &h)?;
        if !membership.is_closed_member() {
            return Err(Error::Domain(format!("support vector outside the cone: {membership:?}")));
        }
        Ok(PolygonSupport { interior: membership.is_interior(), fan, h })
    }

    pub fn area(&self) -> f64 {
        area(&self.fan, &self.h).expect("length checked at construction")
    }
}

/// JSON input `{"normals_deg": [...], "h": [...]}`, with an optional second
/// support vector `k`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolygonInput {
    pub normals_deg: Vec<f64>,
    pub h: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<f64>>,
}

impl PolygonInput {
    pub fn fan(&self) -> Result<NormalFan2D> {
        NormalFan2D::from_degrees(&self.normals_deg)
    }
}
