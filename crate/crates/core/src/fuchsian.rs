//! Polyhedra in Minkowski space invariant under a cocompact surface group,
//! described by their quotient data.
//!
//! A [`QuotientFan`] lists, for every face class `i`, the faces met along its
//! edges (`to`, possibly `i` itself) with the hyperbolic distance `φ` between
//! the two normals, and the turning angles `ω` of the face polygon. Face
//! support numbers are `h_ij = (h_i cosh φ − h_j)/sinh φ`.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};
use crate::forms::{SymmetricForm, TrilinearForm};
use crate::linalg::norm;
use crate::polygon::{self, NormalFan2D, CONE_TOLERANCE};

/// Relative tolerance of symmetry and identity checks.
pub const FORM_CHECK_TOLERANCE: f64 = 1e-10;
/// Relative tolerance when matching the two sides of a glued edge.
pub const PAIRING_TOLERANCE: f64 = 1e-9;
/// `‖k − λh‖ ≤ HOMOTHETY_TOLERANCE·‖k‖` declares `k` homothetic to `h`.
pub const HOMOTHETY_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Adjacency {
    /// Face class across this edge.
    pub to: usize,
    /// Hyperbolic distance between the two face normals.
    pub phi: f64,
    /// Turning angle from this edge's in-face normal to the next one's.
    pub omega: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuotientFace {
    pub adjacencies: Vec<Adjacency>,
}

/// Locally consistent quotient data of a Fuchsian polyhedron.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientFan {
    genus: usize,
    faces: Vec<QuotientFace>,
    fans: Vec<NormalFan2D>,
    vertices: Option<usize>,
}

fn phis(face: &QuotientFace, to: usize) -> Vec<f64> {
    let mut v: Vec<f64> = face.adjacencies.iter().filter(|a| a.to == to).map(|a| a.phi).collect();
    v.sort_by(f64::total_cmp);
    v
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= PAIRING_TOLERANCE * a.abs().max(b.abs()).max(1.0)
}

impl QuotientFan {
    /// Validates the per-face fans, the pairing of directed edges and, when
    /// the vertex count is given, the Euler characteristic.
    pub fn new(genus: usize, faces: Vec<QuotientFace>, vertices: Option<usize>) -> Result<Self> {
        if genus < 2 {
            return Err(Error::InvalidInput(format!("genus must be at least 2, got {genus}")));
        }
        let m = faces.len();
        if m == 0 {
            return Err(Error::InvalidInput("no face classes".into()));
        }
        let mut fans = Vec::with_capacity(m);
        for (i, f) in faces.iter().enumerate() {
            for a in &f.adjacencies {
                if a.to >= m {
                    return Err(Error::InvalidInput(format!("face {i} is adjacent to unknown face {}", a.to)));
                }
                if !a.phi.is_finite() || a.phi <= 0.0 {
                    return Err(Error::InvalidInput(format!("face {i}: φ = {} must be positive", a.phi)));
                }
            }
            let omega: Vec<f64> = f.adjacencies.iter().map(|a| a.omega).collect();
            let fan = NormalFan2D::from_turning_angles(0.0, &omega)
                .map_err(|e| Error::InvalidInput(format!("face {i}: {e}")))?;
            fans.push(fan);
        }
        for i in 0..m {
            for j in i..m {
                let a = phis(&faces[i], j);
                if i == j {
                    if !a.len().is_multiple_of(2) || a.chunks(2).any(|p| !close(p[0], p[1])) {
                        return Err(Error::InvalidInput(format!(
                            "self-adjacencies of face {i} do not pair up: φ = {a:?}"
                        )));
                    }
                } else {
                    let b = phis(&faces[j], i);
                    if a.len() != b.len() || a.iter().zip(&b).any(|(x, y)| !close(*x, *y)) {
                        return Err(Error::InvalidInput(format!(
                            "edges {i}→{j} (φ = {a:?}) and {j}→{i} (φ = {b:?}) do not match"
                        )));
                    }
                }
            }
        }
        if let Some(v) = vertices {
            let degrees: usize = faces.iter().map(|f| f.adjacencies.len()).sum();
            let chi = v as i64 - (degrees / 2) as i64 + m as i64;
            if chi != 2 - 2 * genus as i64 {
                return Err(Error::InvalidInput(format!(
                    "{v} vertices, {} edges and {m} faces give Euler characteristic {chi}, not {}",
                    degrees / 2,
                    2 - 2 * genus as i64
                )));
            }
        }
        Ok(QuotientFan { genus, faces, fans, vertices })
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn vertices(&self) -> Option<usize> {
        self.vertices
    }

    pub fn faces(&self) -> &[QuotientFace] {
        &self.faces
    }

    pub fn face_fan(&self, i: usize) -> &NormalFan2D {
        &self.fans[i]
    }

    fn check_len(&self, h: &[f64]) -> Result<()> {
        if h.len() != self.len() {
            return Err(Error::InvalidInput(format!(
                "support vector has {} entries, fan has {} face classes",
                h.len(),
                self.len()
            )));
        }
        ensure_finite(h, "support vector")
    }

    fn check_positive(&self, h: &[f64]) -> Result<()> {
        self.check_len(h)?;
        if let Some(i) = h.iter().position(|x| *x <= 0.0) {
            return Err(Error::Domain(format!("support number h[{i}] = {} is not positive", h[i])));
        }
        Ok(())
    }
}

/// Row-major `deg×m` matrix `S_i` with `h_{i•} = S_i·h`.
fn face_support_matrix(fan: &QuotientFan, i: usize) -> Vec<f64> {
    let m = fan.len();
    let adj = &fan.faces[i].adjacencies;
    let mut s = vec![0.0; adj.len() * m];
    for (k, a) in adj.iter().enumerate() {
        s[k * m + i] += a.phi.cosh() / a.phi.sinh();
        s[k * m + a.to] -= 1.0 / a.phi.sinh();
    }
    s
}

/// `h_ij = (h_i cosh φ_ij − h_j)/sinh φ_ij` for every edge of face `i`.
pub fn face_support_numbers_lorentz(fan: &QuotientFan, h: &[f64], i: usize) -> Result<Vec<f64>> {
    fan.check_positive(h)?;
    Ok(fan.faces[i]
        .adjacencies
        .iter()
        .map(|a| (h[i] * a.phi.cosh() - h[a.to]) / a.phi.sinh())
        .collect())
}

pub fn face_edge_lengths(fan: &QuotientFan, h: &[f64], i: usize) -> Result<Vec<f64>> {
    polygon::edge_lengths(&fan.fans[i], &face_support_numbers_lorentz(fan, h, i)?)
}

pub fn face_areas(fan: &QuotientFan, h: &[f64]) -> Result<Vec<f64>> {
    (0..fan.len())
        .map(|i| polygon::area(&fan.fans[i], &face_support_numbers_lorentz(fan, h, i)?))
        .collect()
}

/// True when every edge length is positive (tolerance `1e−12·‖h‖`).
pub fn is_interior(fan: &QuotientFan, h: &[f64]) -> Result<bool> {
    fan.check_positive(h)?;
    let tol = CONE_TOLERANCE * norm(h);
    for i in 0..fan.len() {
        if face_edge_lengths(fan, h, i)?.iter().any(|l| *l <= tol) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn require_interior(fan: &QuotientFan, h: &[f64], name: &str) -> Result<()> {
    if is_interior(fan, h)? {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} is not in the open cone: some edge length is not positive")))
    }
}

/// `covol(h) = ⅓ Σ h_i·area(F_i)`.
pub fn covolume(fan: &QuotientFan, h: &[f64]) -> Result<f64> {
    let areas = face_areas(fan, h)?;
    Ok(h.iter().zip(&areas).map(|(a, b)| a * b).sum::<f64>() / 3.0)
}

fn face_quadratics(fan: &QuotientFan) -> Result<Vec<SymmetricForm>> {
    let m = fan.len();
    (0..m)
        .map(|i| Ok(polygon::area_form(&fan.fans[i])?.congruence(&face_support_matrix(fan, i), m)))
        .collect()
}

/// Mixed covolume `covol(h,k,p) = ⅓ Σ h_i a_{F_i}(k_{i•}, p_{i•})`. Failure of
/// symmetry reveals inconsistent fan data.
pub fn covolume_form(fan: &QuotientFan) -> Result<TrilinearForm> {
    let m = fan.len();
    let mut t = vec![0.0; m * m * m];
    for (a, q) in face_quadratics(fan)?.iter().enumerate() {
        for (bc, v) in q.entries().iter().enumerate() {
            t[a * m * m + bc] = v / 3.0;
        }
    }
    TrilinearForm::from_nearly_symmetric(m, t, FORM_CHECK_TOLERANCE)
        .map_err(|e| Error::Consistency(format!("mixed covolume: {e}")))
}

/// Jacobian of the face areas, which is the Hessian of the covolume. Off the
/// diagonal it is `−Σ ℓ_ik/sinh φ_ik` over the edges from `i` to `j`; on the
/// diagonal `Σ ℓ cosh φ/sinh φ` over edges to other classes plus
/// `Σ ℓ (cosh φ − 1)/sinh φ` over self-adjacencies. The result is checked
/// against `6·covol(·,·,h)`.
pub fn covolume_hessian(fan: &QuotientFan, h: &[f64]) -> Result<SymmetricForm> {
    require_interior(fan, h, "h")?;
    let m = fan.len();
    let mut jac = vec![0.0; m * m];
    for i in 0..m {
        let lengths = face_edge_lengths(fan, h, i)?;
        for (a, l) in fan.faces[i].adjacencies.iter().zip(lengths) {
            let s = a.phi.sinh();
            jac[i * m + i] += l * a.phi.cosh() / s;
            jac[i * m + a.to] -= l / s;
        }
    }
    let hess = SymmetricForm::from_nearly_symmetric(m, jac, FORM_CHECK_TOLERANCE)
        .map_err(|e| Error::Consistency(format!("covolume Hessian: {e}")))?;
    let via_tensor = covolume_form(fan)?.contract(h).scaled(6.0);
    let diff = hess.max_difference(&via_tensor);
    if diff > FORM_CHECK_TOLERANCE * hess.max_abs() {
        return Err(Error::Consistency(format!(
            "covolume Hessian differs from 6·covol(·,·,h) by {diff:.3e}"
        )));
    }
    Ok(hess)
}

/// `min_i (H_ii − Σ_{j≠i} |H_ij|)`; positive means strictly diagonally dominant
/// with positive diagonal.
pub fn diagonal_dominance_margin(form: &SymmetricForm) -> f64 {
    let n = form.dim();
    (0..n)
        .map(|i| form.get(i, i) - (0..n).filter(|&j| j != i).map(|j| form.get(i, j).abs()).sum::<f64>())
        .fold(f64::INFINITY, f64::min)
}

/// `area(h) = Σ a_{F_i}(h_{i•})` without the definiteness assertion, checked
/// against `3·covol(𝟏,·,·)`.
pub fn boundary_area_form(fan: &QuotientFan) -> Result<SymmetricForm> {
    let m = fan.len();
    let mut total = vec![0.0; m * m];
    for q in face_quadratics(fan)? {
        for (t, x) in total.iter_mut().zip(q.entries()) {
            *t += x;
        }
    }
    let form = SymmetricForm::from_nearly_symmetric(m, total, FORM_CHECK_TOLERANCE)?;
    let via_tensor = covolume_form(fan)?.contract(&vec![1.0; m]).scaled(3.0);
    let diff = form.max_difference(&via_tensor);
    if diff > FORM_CHECK_TOLERANCE * form.max_abs() {
        return Err(Error::Consistency(format!("area form differs from 3·covol(𝟏,·,·) by {diff:.3e}")));
    }
    Ok(form)
}

/// The boundary area form, which must be positive definite. A form that is
/// not is reported as [`Error::Falsified`].
pub fn fuchsian_area_form(fan: &QuotientFan) -> Result<SymmetricForm> {
    let form = boundary_area_form(fan)?;
    let min = form.min_eigenvalue()?;
    if min <= 0.0 {
        return Err(Error::Falsified(format!("area form is not positive definite: minimum eigenvalue {min:.6e}")));
    }
    Ok(form)
}

/// Cauchy–Schwarz for the positive definite area form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CauchySchwarzReport {
    pub mixed: f64,
    pub first: f64,
    pub second: f64,
    /// `q(h)q(k) − b(h,k)²`, non-negative.
    pub residual: f64,
    pub scale: f64,
    pub holds: bool,
    /// `λ` with `k = λh` when the pair is homothetic.
    pub homothety: Option<f64>,
}

pub fn cauchy_schwarz_check(fan: &QuotientFan, h: &[f64], k: &[f64]) -> Result<CauchySchwarzReport> {
    fan.check_len(h)?;
    fan.check_len(k)?;
    let form = fuchsian_area_form(fan)?;
    let (b, qh, qk) = (form.bilinear(h, k), form.eval(h), form.eval(k));
    let residual = qh * qk - b * b;
    let scale = qh * qk + b * b;
    let lambda = b / qh;
    let gap: Vec<f64> = k.iter().zip(h).map(|(x, y)| x - lambda * y).collect();
    let homothety = (norm(&gap) <= HOMOTHETY_TOLERANCE * norm(k)).then_some(lambda);
    Ok(CauchySchwarzReport {
        mixed: b,
        first: qh,
        second: qk,
        residual,
        scale,
        holds: residual >= -1e-12 * scale,
        homothety,
    })
}

/// Spherical distance `arccos(b(h,k)/√(q(h)q(k)))` between homothety classes.
pub fn spherical_distance(fan: &QuotientFan, h: &[f64], k: &[f64]) -> Result<f64> {
    require_interior(fan, h, "h")?;
    require_interior(fan, k, "k")?;
    let form = fuchsian_area_form(fan)?;
    let arg = form.bilinear(h, k) / (form.eval(h) * form.eval(k)).sqrt();
    if arg > 1.0 + 1e-12 {
        return Err(Error::Inconsistency(format!("normalized pairing {arg} exceeds 1")));
    }
    Ok(arg.clamp(-1.0, 1.0).acos())
}

/// JSON input `{"genus", "faces": [{"adjacencies": [{"to","phi","omega"}]}], "h"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuotientFanInput {
    pub genus: usize,
    pub faces: Vec<QuotientFace>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<f64>>,
    /// Number of vertex classes, enables the Euler characteristic check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<usize>,
}

impl QuotientFanInput {
    pub fn fan(&self) -> Result<QuotientFan> {
        QuotientFan::new(self.genus, self.faces.clone(), self.vertices)
    }

    /// The given `h`, or `𝟏` when absent.
    pub fn h_or_ones(&self) -> Vec<f64> {
        self.h.clone().unwrap_or_else(|| vec![1.0; self.faces.len()])
    }
}
