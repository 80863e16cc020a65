//! Flat metrics with conical singularities, given as Euclidean triangles
//! glued along their edges.
//!
//! Triangle `t` has corners `0, 1, 2` and edge `e` runs from corner `e` to
//! corner `e+1 (mod 3)`. A gluing entry `[t, e, t', e']` identifies edge
//! `(t,e)` with edge `(t',e')` traversed backwards: corner `e` of `t` meets
//! corner `e'+1` of `t'`. With every triangle oriented counterclockwise
//! this makes every glued surface oriented.

use std::collections::VecDeque;
use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{norm3, sub3, Vec3};

/// Relative mismatch allowed between the lengths of two glued edges.
pub const GLUE_LENGTH_TOLERANCE: f64 = 1e-12;
/// `|α − 2π|` above which a vertex is a cone point.
pub const SINGULARITY_THRESHOLD: f64 = 1e-8;
/// Gauss–Bonnet defect treated as corrupted input.
pub const GAUSS_BONNET_LIMIT: f64 = 1e-6;
/// Relative slack when deciding strict convexity of a flip quadrilateral.
pub const FLIP_CONVEXITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct TriangleMesh {
    lengths: Vec<[f64; 3]>,
    partner: Vec<usize>,
    vertex_of: Vec<usize>,
    vertex_count: usize,
}

fn edge_id(t: usize, e: usize) -> usize {
    3 * t + e
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Area by Heron's formula in Kahan's cancellation-free ordering.
pub fn heron_area(l: [f64; 3]) -> f64 {
    let mut s = l;
    s.sort_by(|a, b| b.total_cmp(a));
    let [a, b, c] = s;
    let p = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    0.25 * p.max(0.0).sqrt()
}

/// Angle between the sides of lengths `a` and `b`, opposite to `o`.
/// The cosine comes from the law of cosines (clamped), the sine from the
/// Heron area; `atan2` keeps slivers accurate.
pub fn corner_angle(a: f64, b: f64, o: f64) -> f64 {
    let cos = ((a * a + b * b - o * o) / (2.0 * a * b)).clamp(-1.0, 1.0);
    let sin = 2.0 * heron_area([a, b, o]) / (a * b);
    sin.atan2(cos)
}

impl TriangleMesh {
    /// Validates lengths and gluing and computes the vertex orbits.
    pub fn new(lengths: Vec<[f64; 3]>, gluing: &[[usize; 4]]) -> Result<Self> {
        let f = lengths.len();
        if f == 0 {
            return Err(Error::InvalidInput("mesh has no triangles".into()));
        }
        for (t, l) in lengths.iter().enumerate() {
            if l.iter().any(|x| !x.is_finite() || *x <= 0.0) {
                return Err(Error::InvalidInput(format!("triangle {t} has a non-positive length")));
            }
            let [a, b, c] = *l;
            if !(a < b + c && b < a + c && c < a + b) || heron_area(*l) <= 0.0 {
                return Err(Error::InvalidInput(format!(
                    "triangle {t} violates the strict triangle inequality: {l:?}"
                )));
            }
        }
        let mut partner = vec![usize::MAX; 3 * f];
        for g in gluing {
            let [t, e, t2, e2] = *g;
            if t >= f || t2 >= f || e > 2 || e2 > 2 {
                return Err(Error::Structural(format!("gluing entry {g:?} out of range")));
            }
            let (a, b) = (edge_id(t, e), edge_id(t2, e2));
            if a == b {
                return Err(Error::Structural(format!("edge ({t},{e}) glued to itself")));
            }
            if partner[a] != usize::MAX || partner[b] != usize::MAX {
                return Err(Error::Structural(format!("gluing entry {g:?} reuses an already glued edge")));
            }
            let (la, lb) = (lengths[t][e], lengths[t2][e2]);
            if (la - lb).abs() > GLUE_LENGTH_TOLERANCE * la.max(lb) {
                return Err(Error::InvalidInput(format!(
                    "glued edges ({t},{e}) and ({t2},{e2}) have lengths {la} and {lb}"
                )));
            }
            partner[a] = b;
            partner[b] = a;
        }
        if let Some(free) = partner.iter().position(|&p| p == usize::MAX) {
            return Err(Error::Structural(format!(
                "edge ({},{}) is not glued; only closed surfaces are supported",
                free / 3,
                free % 3
            )));
        }
        Self::from_partner(lengths, partner)
    }

    fn from_partner(lengths: Vec<[f64; 3]>, partner: Vec<usize>) -> Result<Self> {
        let f = lengths.len();
        // Connectivity over triangle adjacency.
        let mut seen = vec![false; f];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(t) = queue.pop_front() {
            for e in 0..3 {
                let u = partner[edge_id(t, e)] / 3;
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        if let Some(t) = seen.iter().position(|s| !s) {
            return Err(Error::Structural(format!("triangle {t} is not connected to triangle 0")));
        }
        let mut parent: Vec<usize> = (0..3 * f).collect();
        for a in 0..3 * f {
            let b = partner[a];
            let (t, e) = (a / 3, a % 3);
            let (t2, e2) = (b / 3, b % 3);
            let pairs = [
                (edge_id(t, e), edge_id(t2, (e2 + 1) % 3)),
                (edge_id(t, (e + 1) % 3), edge_id(t2, e2)),
            ];
            for (x, y) in pairs {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx] = ry;
                }
            }
        }
        let mut label = vec![usize::MAX; 3 * f];
        let mut vertex_of = vec![0; 3 * f];
        let mut vertex_count = 0;
        for c in 0..3 * f {
            let r = find(&mut parent, c);
            if label[r] == usize::MAX {
                label[r] = vertex_count;
                vertex_count += 1;
            }
            vertex_of[c] = label[r];
        }
        Ok(TriangleMesh { lengths, partner, vertex_of, vertex_count })
    }

    /// Fan-triangulates planar convex faces given by counterclockwise (seen
    /// from outside) vertex cycles, gluing each directed edge `(u,v)` with
    /// `(v,u)`.
    pub fn from_faces(points: &[Vec3], faces: &[Vec<usize>]) -> Result<Self> {
        Self::from_faces_with_points(points, faces).map(|(mesh, _)| mesh)
    }

    /// As [`TriangleMesh::from_faces`], also returning the point index of
    /// every mesh vertex.
    pub fn from_faces_with_points(points: &[Vec3], faces: &[Vec<usize>]) -> Result<(Self, Vec<usize>)> {
        let mut corners: Vec<[usize; 3]> = Vec::new();
        for (fi, face) in faces.iter().enumerate() {
            if face.len() < 3 {
                return Err(Error::InvalidInput(format!("face {fi} has fewer than 3 vertices")));
            }
            for k in 1..face.len() - 1 {
                corners.push([face[0], face[k], face[k + 1]]);
            }
        }
        let mut directed = std::collections::HashMap::new();
        for (t, c) in corners.iter().enumerate() {
            for e in 0..3 {
                if directed.insert((c[e], c[(e + 1) % 3]), (t, e)).is_some() {
                    return Err(Error::Structural(format!(
                        "directed edge ({}, {}) occurs twice",
                        c[e],
                        c[(e + 1) % 3]
                    )));
                }
            }
        }
        let mut gluing = Vec::new();
        for (&(u, v), &(t, e)) in &directed {
            let Some(&(t2, e2)) = directed.get(&(v, u)) else {
                return Err(Error::Structural(format!("edge ({u}, {v}) has no opposite")));
            };
            if (t, e) < (t2, e2) {
                gluing.push([t, e, t2, e2]);
            }
        }
        gluing.sort_unstable();
        let lengths = corners
            .iter()
            .map(|c| {
                [
                    norm3(sub3(points[c[1]], points[c[0]])),
                    norm3(sub3(points[c[2]], points[c[1]])),
                    norm3(sub3(points[c[0]], points[c[2]])),
                ]
            })
            .collect();
        let mesh = Self::new(lengths, &gluing)?;
        let mut point_of = vec![usize::MAX; mesh.vertex_count()];
        for (t, c) in corners.iter().enumerate() {
            for (k, &p) in c.iter().enumerate() {
                let v = mesh.vertex(t, k);
                if point_of[v] != usize::MAX && point_of[v] != p {
                    return Err(Error::Structural(format!("points {} and {p} are glued into one vertex", point_of[v])));
                }
                point_of[v] = p;
            }
        }
        Ok((mesh, point_of))
    }

    /// Two copies of a convex polygon glued along the boundary.
    pub fn double_of_polygon(vertices: &[[f64; 2]]) -> Result<Self> {
        let n = vertices.len();
        let points: Vec<Vec3> = vertices.iter().map(|v| [v[0], v[1], 0.0]).collect();
        let top: Vec<usize> = (0..n).collect();
        let bottom: Vec<usize> = (0..n).rev().collect();
        Self::from_faces(&points, &[top, bottom])
    }

    pub fn triangle_count(&self) -> usize {
        self.lengths.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn lengths(&self) -> &[[f64; 3]] {
        &self.lengths
    }

    /// Edge glued to `(t, e)`.
    pub fn partner(&self, t: usize, e: usize) -> (usize, usize) {
        let p = self.partner[edge_id(t, e)];
        (p / 3, p % 3)
    }

    /// Vertex id of corner `c` of triangle `t`.
    pub fn vertex(&self, t: usize, c: usize) -> usize {
        self.vertex_of[edge_id(t, c)]
    }

    /// Every glued pair once, `(t,e) < (t',e')`.
    pub fn gluing(&self) -> Vec<[usize; 4]> {
        (0..self.partner.len())
            .filter(|&a| a < self.partner[a])
            .map(|a| [a / 3, a % 3, self.partner[a] / 3, self.partner[a] % 3])
            .collect()
    }

    /// Interior angle at corner `c` of triangle `t`.
    pub fn corner_angle(&self, t: usize, c: usize) -> f64 {
        let l = self.lengths[t];
        corner_angle(l[c], l[(c + 2) % 3], l[(c + 1) % 3])
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edge_count() as i64 + self.triangle_count() as i64
    }

    /// Multiplies every length by `s`.
    pub fn scaled(&self, s: f64) -> TriangleMesh {
        let mut m = self.clone();
        for l in &mut m.lengths {
            for x in l.iter_mut() {
                *x *= s;
            }
        }
        m
    }
}

/// Cone angles, curvatures and genus of a mesh.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeData {
    pub angles: Vec<f64>,
    pub curvatures: Vec<f64>,
    pub genus: usize,
    /// Vertices with `|α − 2π| > SINGULARITY_THRESHOLD`.
    pub singular: Vec<usize>,
    pub total_curvature: f64,
    /// `Σk − 2π(2 − 2g)`.
    pub defect: f64,
}

impl ConeData {
    pub fn singular_count(&self) -> usize {
        self.singular.len()
    }

    /// Cone angles in ascending order.
    pub fn sorted_angles(&self) -> Vec<f64> {
        let mut a = self.angles.clone();
        a.sort_by(f64::total_cmp);
        a
    }
}

pub fn cone_data(mesh: &TriangleMesh) -> Result<ConeData> {
    let chi = mesh.euler_characteristic();
    if chi > 2 || chi % 2 != 0 {
        return Err(Error::Structural(format!("Euler characteristic {chi} is not that of a closed orientable surface")));
    }
    let genus = ((2 - chi) / 2) as usize;
    let mut angles = vec![0.0; mesh.vertex_count()];
    for t in 0..mesh.triangle_count() {
        for c in 0..3 {
            angles[mesh.vertex(t, c)] += mesh.corner_angle(t, c);
        }
    }
    let curvatures: Vec<f64> = angles.iter().map(|a| TAU - a).collect();
    let singular = (0..angles.len()).filter(|&i| (angles[i] - TAU).abs() > SINGULARITY_THRESHOLD).collect();
    let total_curvature: f64 = curvatures.iter().sum();
    let defect = total_curvature - TAU * chi as f64;
    if defect.abs() > GAUSS_BONNET_LIMIT {
        return Err(Error::Consistency(format!(
            "Gauss–Bonnet defect {defect:.3e}: total curvature {total_curvature} versus 2π·{chi}"
        )));
    }
    Ok(ConeData { angles, curvatures, genus, singular, total_curvature, defect })
}

pub fn total_area(mesh: &TriangleMesh) -> f64 {
    mesh.lengths.iter().map(|l| heron_area(*l)).sum()
}

/// The two triangles on either side of edge `(t, e)` laid out in the plane:
/// `A = (0,0)` and `B = (L,0)` are the edge endpoints, `C` the apex of `t`
/// (above) and `D` the apex of the partner triangle (below).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Development {
    pub a: [f64; 2],
    pub b: [f64; 2],
    pub c: [f64; 2],
    pub d: [f64; 2],
}

impl Development {
    /// Distance between the two apexes in the development.
    pub fn apex_distance(&self) -> f64 {
        (self.c[0] - self.d[0]).hypot(self.c[1] - self.d[1])
    }

    /// Abscissa at which segment `CD` crosses the line `AB`.
    pub fn crossing(&self) -> f64 {
        let s = self.c[1] / (self.c[1] - self.d[1]);
        self.c[0] + s * (self.d[0] - self.c[0])
    }
}

pub fn develop(mesh: &TriangleMesh, t: usize, e: usize) -> Result<Development> {
    if t >= mesh.triangle_count() || e > 2 {
        return Err(Error::InvalidInput(format!("edge ({t},{e}) out of range")));
    }
    let (t2, e2) = mesh.partner(t, e);
    let l = mesh.lengths[t];
    let l2 = mesh.lengths[t2];
    let base = l[e];
    let (ac, bc) = (l[(e + 2) % 3], l[(e + 1) % 3]);
    let (ad, bd) = (l2[(e2 + 1) % 3], l2[(e2 + 2) % 3]);
    let cx = (base * base + ac * ac - bc * bc) / (2.0 * base);
    let cy = 2.0 * heron_area(l) / base;
    let dx = (base * base + ad * ad - bd * bd) / (2.0 * base);
    let dy = -2.0 * heron_area(l2) / base;
    Ok(Development { a: [0.0, 0.0], b: [base, 0.0], c: [cx, cy], d: [dx, dy] })
}

/// Exchanges the diagonal of the quadrilateral formed by the two triangles
/// adjacent to edge `(t, e)`. The metric is unchanged.
pub fn flip(mesh: &TriangleMesh, t: usize, e: usize) -> Result<TriangleMesh> {
    let dev = develop(mesh, t, e)?;
    let (t2, e2) = mesh.partner(t, e);
    if t2 == t {
        return Err(Error::FlipNotAdmissible(format!("edge ({t},{e}) is glued to its own triangle")));
    }
    let base = dev.b[0];
    let x = dev.crossing();
    let slack = FLIP_CONVEXITY_TOLERANCE * base;
    if !(x > slack && x < base - slack) {
        return Err(Error::FlipNotAdmissible(format!(
            "quadrilateral around edge ({t},{e}) is not strictly convex (diagonal crosses at {x} of {base})"
        )));
    }
    let diag = dev.apex_distance();
    let l = mesh.lengths[t];
    let l2 = mesh.lengths[t2];
    let (bc, ca) = (l[(e + 1) % 3], l[(e + 2) % 3]);
    let (ad, db) = (l2[(e2 + 1) % 3], l2[(e2 + 2) % 3]);

    let mut lengths = mesh.lengths.clone();
    // t becomes (A, D, C), t2 becomes (D, B, C).
    lengths[t] = [ad, diag, ca];
    lengths[t2] = [db, bc, diag];

    let remap = |id: usize| -> usize {
        if id == edge_id(t, (e + 1) % 3) {
            edge_id(t2, 1)
        } else if id == edge_id(t, (e + 2) % 3) {
            edge_id(t, 2)
        } else if id == edge_id(t2, (e2 + 1) % 3) {
            edge_id(t, 0)
        } else if id == edge_id(t2, (e2 + 2) % 3) {
            edge_id(t2, 0)
        } else {
            id
        }
    };
    let old_flip = [edge_id(t, e), edge_id(t2, e2)];
    let mut partner = vec![usize::MAX; mesh.partner.len()];
    for a in 0..mesh.partner.len() {
        if old_flip.contains(&a) {
            continue;
        }
        partner[remap(a)] = remap(mesh.partner[a]);
    }
    partner[edge_id(t, 1)] = edge_id(t2, 2);
    partner[edge_id(t2, 2)] = edge_id(t, 1);
    debug_assert!(partner.iter().all(|&p| p != usize::MAX));
    TriangleMesh::from_partner(lengths, partner)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TriangleRecord {
    pub lengths: [f64; 3],
}

/// JSON mesh `{"triangles": [{"lengths": [a,b,c]}...], "gluing": [[t,e,t',e']...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeshInput {
    pub triangles: Vec<TriangleRecord>,
    pub gluing: Vec<[usize; 4]>,
}

impl MeshInput {
    pub fn build(&self) -> Result<TriangleMesh> {
        TriangleMesh::new(self.triangles.iter().map(|t| t.lengths).collect(), &self.gluing)
    }
}

impl From<&TriangleMesh> for MeshInput {
    fn from(mesh: &TriangleMesh) -> Self {
        MeshInput {
            triangles: mesh.lengths.iter().map(|&lengths| TriangleRecord { lengths }).collect(),
            gluing: mesh.gluing(),
        }
    }
}
