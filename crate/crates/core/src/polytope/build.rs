use std::f64::consts::TAU;

use crate::error::{ensure_finite, Error, Result};
use crate::linalg::{cross3, dot3, norm3, normalize3, scale3, solve3, sub3, add3, Vec3};
use crate::polygon::NormalFan2D;

use super::{face_frame, spherical_polygon_area, FaceFan, FanEdge, PolytopeFan, VertexCell, TILING_TOLERANCE};

/// Vertex clustering tolerance, relative to `max|h|`.
pub const VERTEX_TOLERANCE: f64 = 1e-9;
const UNIT_TOLERANCE: f64 = 1e-9;
const RECESSION_TOLERANCE: f64 = 1e-12;

struct Vertex {
    position: Vec3,
    faces: Vec<usize>,
}

/// Extracts the combinatorics of `{x : ⟨x, u_i⟩ ≤ h_i}`.
///
/// Vertices come from all feasible triple-plane intersections, clustered
/// within `VERTEX_TOLERANCE·max|h|`. Vertices on more than three faces are
/// allowed and clear the simplicity flag.
pub fn build_fan(normals: &[Vec3], h: &[f64]) -> Result<PolytopeFan> {
    let m = normals.len();
    if h.len() != m {
        return Err(Error::InvalidInput(format!("{m} normals but {} support numbers", h.len())));
    }
    ensure_finite(h, "support vector")?;
    for (i, u) in normals.iter().enumerate() {
        ensure_finite(u, "normal")?;
        if (norm3(*u) - 1.0).abs() > UNIT_TOLERANCE {
            return Err(Error::InvalidInput(format!("normal {i} is not a unit vector (norm {})", norm3(*u))));
        }
    }
    if m < 4 {
        return Err(Error::InvalidInput(format!("a bounded polytope needs at least 4 faces, got {m}")));
    }
    for i in 0..m {
        for j in (i + 1)..m {
            if norm3(sub3(normals[i], normals[j])) < 1e-12 {
                return Err(Error::InvalidInput(format!("normals {i} and {j} coincide")));
            }
        }
    }
    check_bounded(normals)?;

    let scale = h.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    if scale == 0.0 {
        return Err(Error::InvalidInput("h = 0 describes a single point".into()));
    }
    let tol = VERTEX_TOLERANCE * scale;
    let vertices = enumerate_vertices(normals, h, tol);
    if vertices.len() < 4 {
        return Err(Error::InvalidInput(format!(
            "halfspace intersection has {} vertices; it is empty or flat",
            vertices.len()
        )));
    }
    let centroid = scale3(
        1.0 / vertices.len() as f64,
        vertices.iter().fold([0.0; 3], |a, v| add3(a, v.position)),
    );
    let slack = (0..m).map(|l| h[l] - dot3(normals[l], centroid)).fold(f64::INFINITY, f64::min);
    if slack <= tol {
        return Err(Error::InvalidInput("halfspace intersection has empty interior".into()));
    }

    let mut on_face: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (v, vert) in vertices.iter().enumerate() {
        for &f in &vert.faces {
            on_face[f].push(v);
        }
    }
    let redundant: Vec<usize> = (0..m).filter(|&i| on_face[i].len() < 3).collect();
    if !redundant.is_empty() {
        return Err(Error::Redundant(redundant));
    }

    let mut faces = Vec::with_capacity(m);
    for i in 0..m {
        faces.push(face_fan(i, normals, &vertices, &on_face[i])?);
    }
    let mut edges = Vec::new();
    for (i, f) in faces.iter().enumerate() {
        let d = f.degree();
        for k in 0..d {
            let j = f.neighbors[k];
            if !faces[j].neighbors.contains(&i) {
                return Err(Error::Consistency(format!("face {j} does not list face {i} as a neighbor")));
            }
            if i < j {
                edges.push(FanEdge {
                    faces: [i, j],
                    phi: f.phi[k],
                    vertices: [f.vertices[(k + d - 1) % d], f.vertices[k]],
                });
            }
        }
    }

    let cells: Vec<VertexCell> = vertices.iter().map(|v| gauss_cell(normals, &v.faces)).collect();
    let total: f64 = cells.iter().map(|c| c.area).sum();
    if (total - 2.0 * TAU).abs() > TILING_TOLERANCE * 2.0 * TAU {
        return Err(Error::Structural(format!("Gauss image covers {total} instead of 4π")));
    }
    let simple = cells.iter().all(|c| c.faces.len() == 3);
    Ok(PolytopeFan { normals: normals.to_vec(), faces, edges, cells, simple })
}

/// The recession cone `{d : ⟨d, u_l⟩ ≤ 0 ∀l}` is trivial iff none of its
/// candidate extreme rays `±u_i × u_j` satisfies every constraint.
fn check_bounded(normals: &[Vec3]) -> Result<()> {
    let m = normals.len();
    for i in 0..m {
        for j in (i + 1)..m {
            let c = cross3(normals[i], normals[j]);
            if norm3(c) < 1e-12 {
                continue;
            }
            let c = normalize3(c);
            for d in [c, scale3(-1.0, c)] {
                if normals.iter().all(|u| dot3(*u, d) <= RECESSION_TOLERANCE) {
                    return Err(Error::Unbounded(d));
                }
            }
        }
    }
    Ok(())
}

fn enumerate_vertices(normals: &[Vec3], h: &[f64], tol: f64) -> Vec<Vertex> {
    let m = normals.len();
    let mut out: Vec<Vertex> = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            for k in (j + 1)..m {
                let Some(p) = solve3([normals[i], normals[j], normals[k]], [h[i], h[j], h[k]]) else {
                    continue;
                };
                if (0..m).any(|l| dot3(normals[l], p) > h[l] + tol) {
                    continue;
                }
                if let Some(v) = out.iter_mut().find(|v| norm3(sub3(v.position, p)) <= tol) {
                    for f in [i, j, k] {
                        if !v.faces.contains(&f) {
                            v.faces.push(f);
                        }
                    }
                } else {
                    out.push(Vertex { position: p, faces: vec![i, j, k] });
                }
            }
        }
    }
    for v in &mut out {
        for l in 0..m {
            if !v.faces.contains(&l) && (dot3(normals[l], v.position) - h[l]).abs() <= tol {
                v.faces.push(l);
            }
        }
        v.faces.sort_unstable();
    }
    out
}

fn face_fan(i: usize, normals: &[Vec3], vertices: &[Vertex], on_face: &[usize]) -> Result<FaceFan> {
    let u = normals[i];
    let frame = face_frame(u);
    let project = |p: Vec3| [dot3(p, frame[0]), dot3(p, frame[1])];
    let pts: Vec<[f64; 2]> = on_face.iter().map(|&v| project(vertices[v].position)).collect();
    let n = pts.len() as f64;
    let c = pts.iter().fold([0.0, 0.0], |a, p| [a[0] + p[0] / n, a[1] + p[1] / n]);
    let mut order: Vec<usize> = (0..on_face.len()).collect();
    let angle = |k: usize| (pts[k][1] - c[1]).atan2(pts[k][0] - c[0]);
    order.sort_by(|&a, &b| angle(a).total_cmp(&angle(b)));
    let cycle: Vec<usize> = order.iter().map(|&k| on_face[k]).collect();
    let d = cycle.len();

    let mut neighbors = Vec::with_capacity(d);
    for t in 0..d {
        let (a, b) = (&vertices[cycle[t]], &vertices[cycle[(t + 1) % d]]);
        let common: Vec<usize> = a.faces.iter().copied().filter(|f| *f != i && b.faces.contains(f)).collect();
        if common.len() != 1 {
            return Err(Error::Consistency(format!(
                "edge of face {i} between vertices {} and {} lies on faces {common:?}",
                cycle[t],
                cycle[(t + 1) % d]
            )));
        }
        neighbors.push(common[0]);
    }
    // In-face outward normal of the edge towards neighbor j.
    let in_face_angle = |j: usize| {
        let w = sub3(normals[j], scale3(dot3(normals[j], u), u));
        dot3(w, frame[1]).atan2(dot3(w, frame[0])).rem_euclid(TAU)
    };
    let angles: Vec<f64> = neighbors.iter().map(|&j| in_face_angle(j)).collect();
    let start = (0..d).min_by(|&a, &b| angles[a].total_cmp(&angles[b])).unwrap_or(0);
    let rot = |k: usize| (k + start) % d;
    let neighbors: Vec<usize> = (0..d).map(|k| neighbors[rot(k)]).collect();
    let angles: Vec<f64> = (0..d).map(|k| angles[rot(k)]).collect();
    // Edge t joins cycle[t] and cycle[t+1], so the vertex after edge k is cycle[k+1].
    let vertices_ccw: Vec<usize> = (0..d).map(|k| cycle[(rot(k) + 1) % d]).collect();
    let phi: Vec<f64> = neighbors.iter().map(|&j| dot3(u, normals[j]).clamp(-1.0, 1.0).acos()).collect();
    let fan = NormalFan2D::from_radians(&angles)
        .map_err(|e| Error::Consistency(format!("face {i} does not induce a convex fan: {e}")))?;
    Ok(FaceFan { neighbors, phi, vertices: vertices_ccw, frame, fan })
}

fn gauss_cell(normals: &[Vec3], faces: &[usize]) -> VertexCell {
    let c = normalize3(faces.iter().fold([0.0; 3], |a, &f| add3(a, normals[f])));
    let [e1, e2] = face_frame(c);
    let angle = |f: usize| dot3(normals[f], e2).atan2(dot3(normals[f], e1));
    let mut ordered = faces.to_vec();
    ordered.sort_by(|&a, &b| angle(a).total_cmp(&angle(b)));
    let pts: Vec<Vec3> = ordered.iter().map(|&f| normals[f]).collect();
    VertexCell { faces: ordered, area: spherical_polygon_area(&pts) }
}
