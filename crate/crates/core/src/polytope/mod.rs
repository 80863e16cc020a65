//! Convex 3-polytopes with prescribed face normals, parametrized by support
//! numbers.
//!
//! The combinatorics (face cycles, edges, vertex cells of the Gauss image)
//! are computed once by [`build_fan`] from a halfspace description. Every
//! other operation is a function of the fan and a support vector `h`.

mod build;
mod sphere;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

pub use build::{build_fan, VERTEX_TOLERANCE};
pub use sphere::{area_via_sphere_integral, spherical_triangle_area, SphereIntegral, MAX_DEPTH};

use crate::error::{ensure_finite, Error, Result};
use crate::forms::{SymmetricForm, TrilinearForm};
use crate::linalg::{cross3, dot3, least_squares, norm, normalize3, scale3, solve3, sub3, Vec3};
use crate::polygon::{self, classify_lengths, ConeMembership, InequalityReport, InequalityTolerances, NormalFan2D};
use crate::surface::TriangleMesh;

/// Relative tolerance of the symmetry and cross-checks on assembled forms.
pub const FORM_CHECK_TOLERANCE: f64 = 1e-10;
/// Relative tolerance for the Gauss image tiling `Σ area = 4π`.
pub const TILING_TOLERANCE: f64 = 1e-9;

/// One face of the polytope: its neighbors in counterclockwise order (seen
/// from outside) and the induced planar fan.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceFan {
    /// Face across edge `k`.
    pub neighbors: Vec<usize>,
    /// Angle between this face's normal and `neighbors[k]`'s.
    pub phi: Vec<f64>,
    /// `vertices[k]` is the vertex shared by edges `k` and `k+1`.
    pub vertices: Vec<usize>,
    /// Orthonormal basis of the face plane with `e1 × e2 = u`.
    pub frame: [Vec3; 2],
    pub fan: NormalFan2D,
}

impl FaceFan {
    pub fn degree(&self) -> usize {
        self.neighbors.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FanEdge {
    /// Adjacent faces, `faces[0] < faces[1]`.
    pub faces: [usize; 2],
    pub phi: f64,
    pub vertices: [usize; 2],
}

/// The Gauss image of a vertex: the spherical polygon spanned by the normals
/// of the faces through it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexCell {
    /// Faces in counterclockwise order around the cell.
    pub faces: Vec<usize>,
    /// Spherical area, by angle excess.
    pub area: f64,
}

/// Combinatorial type of a 3-polytope.
#[derive(Debug, Clone, PartialEq)]
pub struct PolytopeFan {
    normals: Vec<Vec3>,
    faces: Vec<FaceFan>,
    edges: Vec<FanEdge>,
    cells: Vec<VertexCell>,
    simple: bool,
}

impl PolytopeFan {
    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn normals(&self) -> &[Vec3] {
        &self.normals
    }

    pub fn faces(&self) -> &[FaceFan] {
        &self.faces
    }

    pub fn face(&self, i: usize) -> &FaceFan {
        &self.faces[i]
    }

    pub fn edges(&self) -> &[FanEdge] {
        &self.edges
    }

    pub fn cells(&self) -> &[VertexCell] {
        &self.cells
    }

    pub fn vertex_count(&self) -> usize {
        self.cells.len()
    }

    /// True when every vertex lies on exactly three faces; only then is the
    /// cone of support vectors full-dimensional.
    pub fn is_simple(&self) -> bool {
        self.simple
    }

    /// Dimension of the cone modulo translations, `m − 3`, for simple fans.
    pub fn cone_dimension(&self) -> Option<usize> {
        self.simple.then(|| self.len() - 3)
    }

    pub fn gauss_image_area(&self) -> f64 {
        self.cells.iter().map(|c| c.area).sum()
    }

    fn check_len(&self, h: &[f64]) -> Result<()> {
        if h.len() != self.len() {
            return Err(Error::InvalidInput(format!(
                "support vector has {} entries, fan has {} faces",
                h.len(),
                self.len()
            )));
        }
        ensure_finite(h, "support vector")
    }

    fn require_simple(&self, what: &str) -> Result<()> {
        if self.simple {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{what} needs a simple polytope; this fan has vertices on more than three faces"
            )))
        }
    }
}

/// Deterministic orthonormal basis of the plane orthogonal to `u`: the least
/// aligned coordinate axis projected onto the plane, then `u × e1`.
pub fn face_frame(u: Vec3) -> [Vec3; 2] {
    let mut axis = 0;
    for a in 1..3 {
        if u[a].abs() < u[axis].abs() {
            axis = a;
        }
    }
    let mut e = [0.0; 3];
    e[axis] = 1.0;
    let e1 = normalize3(sub3(e, scale3(dot3(u, e), u)));
    [e1, cross3(u, e1)]
}

/// Row-major `deg×m` matrix `S_i` with `h_{i•} = S_i·h`.
pub(crate) fn face_support_matrix(fan: &PolytopeFan, i: usize) -> Vec<f64> {
    let face = &fan.faces[i];
    let m = fan.len();
    let mut s = vec![0.0; face.degree() * m];
    for (k, (&j, &phi)) in face.neighbors.iter().zip(&face.phi).enumerate() {
        s[k * m + j] += 1.0 / phi.sin();
        s[k * m + i] -= phi.cos() / phi.sin();
    }
    s
}

/// Support numbers of face `i` inside its own plane, the origin being the
/// projection of the space origin: `h_ij = (h_j − h_i cos φ_ij)/sin φ_ij`.
pub fn face_support_numbers(fan: &PolytopeFan, h: &[f64], i: usize) -> Result<Vec<f64>> {
    fan.check_len(h)?;
    let face = &fan.faces[i];
    Ok(face
        .neighbors
        .iter()
        .zip(&face.phi)
        .map(|(&j, &phi)| (h[j] - h[i] * phi.cos()) / phi.sin())
        .collect())
}

pub fn face_edge_lengths(fan: &PolytopeFan, h: &[f64], i: usize) -> Result<Vec<f64>> {
    polygon::edge_lengths(&fan.faces[i].fan, &face_support_numbers(fan, h, i)?)
}

pub fn face_areas(fan: &PolytopeFan, h: &[f64]) -> Result<Vec<f64>> {
    (0..fan.len())
        .map(|i| polygon::area(&fan.faces[i].fan, &face_support_numbers(fan, h, i)?))
        .collect()
}

/// `v(h) = ⅓ Σ h_i·area(F_i)`.
pub fn volume(fan: &PolytopeFan, h: &[f64]) -> Result<f64> {
    let areas = face_areas(fan, h)?;
    Ok(h.iter().zip(&areas).map(|(a, b)| a * b).sum::<f64>() / 3.0)
}

pub fn boundary_area(fan: &PolytopeFan, h: &[f64]) -> Result<f64> {
    Ok(face_areas(fan, h)?.iter().sum())
}

/// `S_iᵀ M_i S_i` for every face, `M_i` the area form of the face fan.
fn face_quadratics(fan: &PolytopeFan) -> Result<Vec<Vec<f64>>> {
    let m = fan.len();
    (0..m)
        .map(|i| {
            let mi = polygon::area_form(&fan.faces[i].fan)?;
            Ok(mi.congruence(&face_support_matrix(fan, i), m).entries().to_vec())
        })
        .collect()
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |a, x| a.max(x.abs()))
}

/// Mixed volume `v(h,k,p) = ⅓ Σ h_i a_{F_i}(k_{i•}, p_{i•})` as a symmetric
/// tensor. Symmetry holds for simple fans only.
pub fn volume_form(fan: &PolytopeFan) -> Result<TrilinearForm> {
    fan.require_simple("the mixed-volume tensor")?;
    let m = fan.len();
    let quads = face_quadratics(fan)?;
    let mut t = vec![0.0; m * m * m];
    for (a, q) in quads.iter().enumerate() {
        for bc in 0..m * m {
            t[a * m * m + bc] = q[bc] / 3.0;
        }
    }
    TrilinearForm::from_nearly_symmetric(m, t, FORM_CHECK_TOLERANCE)
        .map_err(|e| Error::Consistency(format!("mixed-volume tensor: {e}")))
}

/// `area_P(h) = Σ a_{F_i}(h_{i•})`. For simple fans the identity
/// `area_P = 3·v_P(𝟏,·,·)` is verified.
pub fn boundary_area_form(fan: &PolytopeFan) -> Result<SymmetricForm> {
    let m = fan.len();
    let mut total = vec![0.0; m * m];
    for q in face_quadratics(fan)? {
        for (t, x) in total.iter_mut().zip(q) {
            *t += x;
        }
    }
    let scale = max_abs(&total).max(f64::MIN_POSITIVE);
    let form = SymmetricForm::from_nearly_symmetric(m, total, FORM_CHECK_TOLERANCE)?;
    if fan.simple {
        let via_volume = volume_form(fan)?.contract(&vec![1.0; m]).scaled(3.0);
        let diff = form.max_difference(&via_volume);
        if diff > FORM_CHECK_TOLERANCE * scale {
            return Err(Error::Consistency(format!(
                "boundary area form differs from 3·v(𝟏,·,·) by {diff:.3e}"
            )));
        }
    }
    Ok(form)
}

/// `h^x_i = ⟨x, u_i⟩`, the support vector of the point `{x}`.
pub fn point_support_vector(fan: &PolytopeFan, x: Vec3) -> Vec<f64> {
    fan.normals.iter().map(|u| dot3(*u, x)).collect()
}

fn translation_basis(fan: &PolytopeFan) -> Vec<Vec<f64>> {
    [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
        .into_iter()
        .map(|x| point_support_vector(fan, x))
        .collect()
}

/// Edge lengths of every fan edge, read off in the lower-indexed face.
pub fn edge_lengths(fan: &PolytopeFan, h: &[f64]) -> Result<Vec<f64>> {
    let per_face: Vec<Vec<f64>> = (0..fan.len()).map(|i| face_edge_lengths(fan, h, i)).collect::<Result<_>>()?;
    Ok(fan
        .edges
        .iter()
        .map(|e| {
            let [i, j] = e.faces;
            let k = fan.faces[i].neighbors.iter().position(|&n| n == j).expect("edge is in its face");
            per_face[i][k]
        })
        .collect())
}

/// Vertex coordinates for `h`. Faces meeting at a non-simple vertex must
/// stay concurrent, otherwise `h` is off the fan's cone.
pub fn vertex_positions(fan: &PolytopeFan, h: &[f64]) -> Result<Vec<Vec3>> {
    fan.check_len(h)?;
    let scale = h.iter().fold(0.0f64, |a, x| a.max(x.abs())).max(f64::MIN_POSITIVE);
    fan.cells
        .iter()
        .enumerate()
        .map(|(v, cell)| {
            let f = &cell.faces;
            if f.len() == 3 {
                let rows = [fan.normals[f[0]], fan.normals[f[1]], fan.normals[f[2]]];
                return solve3(rows, [h[f[0]], h[f[1]], h[f[2]]])
                    .ok_or_else(|| Error::Consistency(format!("faces at vertex {v} are not independent")));
            }
            let a: Vec<f64> = f.iter().flat_map(|&i| fan.normals[i]).collect();
            let b: Vec<f64> = f.iter().map(|&i| h[i]).collect();
            let (x, residual) = least_squares(&a, f.len(), 3, &b)?;
            if residual > 1e-9 * scale {
                return Err(Error::Domain(format!(
                    "faces {f:?} are not concurrent for this h (residual {residual:.3e}); h is off the cone of this non-simple fan"
                )));
            }
            Ok([x[0], x[1], x[2]])
        })
        .collect()
}

/// Classifies `h` by the signs of all edge lengths, tolerance `1e−12·‖h‖`.
pub fn cone_membership(fan: &PolytopeFan, h: &[f64]) -> Result<ConeMembership> {
    let lengths = edge_lengths(fan, h)?;
    if !fan.simple {
        vertex_positions(fan, h)?;
    }
    Ok(classify_lengths(&lengths, polygon::CONE_TOLERANCE * norm(h)))
}

/// Alexandrov–Fenchel `v(h,k,p)² ≥ v(h,h,p)·v(k,k,p)` for `p` in the closed
/// cone. At least one of `v(h,h,p)`, `v(k,k,p)` must be positive: on a
/// negative definite span the inequality has no reason to hold.
pub fn alexandrov_fenchel_check(fan: &PolytopeFan, h: &[f64], k: &[f64], p: &[f64]) -> Result<InequalityReport> {
    alexandrov_fenchel_check_with(fan, h, k, p, InequalityTolerances::default())
}

pub fn alexandrov_fenchel_check_with(
    fan: &PolytopeFan,
    h: &[f64],
    k: &[f64],
    p: &[f64],
    tol: InequalityTolerances,
) -> Result<InequalityReport> {
    let v = volume_form(fan)?;
    fan.check_len(h)?;
    fan.check_len(k)?;
    if !cone_membership(fan, p)?.is_closed_member() {
        return Err(Error::Domain("p lies outside the closed cone".into()));
    }
    let first = v.eval(h, h, p);
    let second = v.eval(k, k, p);
    if first <= 0.0 && second <= 0.0 {
        return Err(Error::Domain(format!(
            "v(h,h,p) = {first} and v(k,k,p) = {second}: one of them must be positive"
        )));
    }
    polygon::inequality_report(v.eval(h, k, p), first, second, &translation_basis(fan), h, k, tol)
}

/// A Gauss-image arc with its weight in the first area measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureArc {
    pub faces: [usize; 2],
    /// Spherical length of the arc, `φ_ij`.
    pub length: f64,
    /// Length of the polytope edge.
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AreaMeasure {
    pub arcs: Vec<MeasureArc>,
    /// `Σ ℓ_ij·φ_ij`, twice the total mean curvature.
    pub weighted_length: f64,
}

pub fn first_area_measure(fan: &PolytopeFan, h: &[f64]) -> Result<AreaMeasure> {
    if !cone_membership(fan, h)?.is_closed_member() {
        return Err(Error::Domain("h lies outside the closed cone".into()));
    }
    let lengths = edge_lengths(fan, h)?;
    let arcs: Vec<MeasureArc> = fan
        .edges
        .iter()
        .zip(lengths)
        .map(|(e, w)| MeasureArc { faces: e.faces, length: e.phi, weight: w.max(0.0) })
        .collect();
    let weighted_length = arcs.iter().map(|a| a.length * a.weight).sum();
    Ok(AreaMeasure { arcs, weighted_length })
}

/// The boundary of the polytope as a flat cone surface.
#[derive(Debug, Clone)]
pub struct BoundaryMetric {
    pub mesh: TriangleMesh,
    /// Polytope vertex of each mesh vertex.
    pub polytope_vertex: Vec<usize>,
    pub positions: Vec<Vec3>,
}

/// Triangulates every face from its vertex cycle and glues along the edges.
pub fn boundary_metric(fan: &PolytopeFan, h: &[f64]) -> Result<BoundaryMetric> {
    if !cone_membership(fan, h)?.is_interior() {
        return Err(Error::Domain("h is not in the open cone".into()));
    }
    let positions = vertex_positions(fan, h)?;
    let cycles: Vec<Vec<usize>> = fan
        .faces
        .iter()
        .map(|f| {
            let d = f.degree();
            (0..d).map(|k| f.vertices[(k + d - 1) % d]).collect()
        })
        .collect();
    let (mesh, polytope_vertex) = TriangleMesh::from_faces_with_points(&positions, &cycles)?;
    Ok(BoundaryMetric { mesh, polytope_vertex, positions })
}

/// Spherical polygon area by angle excess. The vertices are unit vectors in
/// cyclic order around a convex polygon.
pub fn spherical_polygon_area(vertices: &[Vec3]) -> f64 {
    let n = vertices.len();
    let mut total = 0.0;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + n - 1) % n];
        let c = vertices[(i + 1) % n];
        let tb = sub3(b, scale3(dot3(a, b), a));
        let tc = sub3(c, scale3(dot3(a, c), a));
        let s = dot3(cross3(tb, tc), a).abs();
        total += s.atan2(dot3(tb, tc));
    }
    total - (n as f64 - 2.0) * PI
}

/// JSON input `{"normals": [[x,y,z]...], "h": [...]}`, with optional extra
/// support vectors `k` and `p` for the mixed-volume checks.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolytopeInput {
    pub normals: Vec<Vec3>,
    pub h: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<f64>>,
}

impl PolytopeInput {
    pub fn fan(&self) -> Result<PolytopeFan> {
        build_fan(&self.normals, &self.h)
    }
}

/// Counts and metadata reported for a built fan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FanSummary {
    pub faces: usize,
    pub edges: usize,
    pub vertices: usize,
    pub simple: bool,
    /// `m − 3`, only for simple fans.
    pub cone_dimension: Option<usize>,
    /// `n/2 + 2`, the face count a simple polytope with `n` vertices has.
    pub faces_from_vertices: Option<usize>,
    pub face_degrees: Vec<usize>,
    pub gauss_image_area: f64,
}

impl From<&PolytopeFan> for FanSummary {
    fn from(fan: &PolytopeFan) -> Self {
        FanSummary {
            faces: fan.len(),
            edges: fan.edges.len(),
            vertices: fan.vertex_count(),
            simple: fan.simple,
            cone_dimension: fan.cone_dimension(),
            faces_from_vertices: fan.simple.then(|| fan.vertex_count() / 2 + 2),
            face_degrees: fan.faces.iter().map(FaceFan::degree).collect(),
            gauss_image_area: fan.gauss_image_area(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube() -> PolytopeFan {
        let n = [
            [1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, -1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0],
        ];
        build_fan(&n, &[0.5; 6]).unwrap()
    }

    #[test]
    fn frame_is_orthonormal_and_oriented() {
        for u in [[1.0, 0.0, 0.0], normalize3([1.0, -2.0, 0.5]), [0.0, 0.0, -1.0]] {
            let [e1, e2] = face_frame(u);
            assert!(dot3(e1, u).abs() < 1e-15 && dot3(e2, u).abs() < 1e-15);
            assert!(dot3(e1, e2).abs() < 1e-15);
            assert!((dot3(cross3(e1, e2), u) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn cube_volume_and_area() {
        let f = cube();
        assert!((volume(&f, &[0.5; 6]).unwrap() - 1.0).abs() < 1e-14);
        assert!((boundary_area(&f, &[0.5; 6]).unwrap() - 6.0).abs() < 1e-14);
    }

    #[test]
    fn box_face_support_numbers() {
        let f = cube();
        let h = [0.5, 0.5, 1.0, 1.0, 2.0, 2.0];
        let s = face_support_numbers(&f, &h, 0).unwrap();
        for (a, b) in s.iter().zip([1.0, 2.0, 1.0, 2.0]) {
            assert!((a - b).abs() < 1e-15, "{s:?}");
        }
        assert!((volume(&f, &h).unwrap() - 8.0).abs() < 1e-13);
    }

    #[test]
    fn square_cell_area() {
        let a = spherical_polygon_area(&[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
        assert!((a - PI / 2.0).abs() < 1e-15);
    }
}
