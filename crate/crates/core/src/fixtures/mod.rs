//! Deterministic and seeded random inputs shared by the tests, the CLI
//! sampling commands and the fixture generator.

mod quotient;

use std::f64::consts::{PI, TAU};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{normalize3, Vec3};
use crate::polygon::{self, NormalFan2D};
use crate::polytope::{self, build_fan, PolytopeFan};
use crate::surface::TriangleMesh;

pub use quotient::{
    genus2_single_class, hyperbolic_distance as hyperboloid_distance, hyperboloid_point, minkowski, quotient_fan_from_centers,
    random_quotient_fan, GeneratedQuotientFan, OctagonGroup,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Regular fan with every normal angle jittered by up to `±0.3·π/n`.
pub fn perturbed_polygon_fan<R: Rng + ?Sized>(n: usize, rng: &mut R) -> NormalFan2D {
    let step = TAU / n as f64;
    let angles: Vec<f64> = (0..n).map(|i| step * i as f64 + rng.gen_range(-0.3..0.3) * step / 2.0).collect();
    NormalFan2D::from_radians(&angles).expect("jitter keeps consecutive normals within (0, π)")
}

/// `𝟏` perturbed by `rel`, plus a random translation of size up to `shift`,
/// redrawn until every edge is longer than `1e−3` times the mean.
pub fn random_polygon_support<R: Rng + ?Sized>(fan: &NormalFan2D, rel: f64, shift: f64, rng: &mut R) -> Vec<f64> {
    loop {
        let x = [rng.gen_range(-shift..=shift), rng.gen_range(-shift..=shift)];
        let t = polygon::point_support_vector(fan, x);
        let h: Vec<f64> = t.iter().map(|ti| 1.0 + rel * rng.gen_range(-1.0..1.0) + ti).collect();
        let l = polygon::edge_lengths(fan, &h).expect("length matches");
        let mean = l.iter().sum::<f64>() / l.len() as f64;
        if l.iter().all(|x| *x > 1e-3 * mean) {
            return h;
        }
    }
}

pub fn cube_normals() -> Vec<Vec3> {
    vec![
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ]
}

/// The eight normals `(±1,±1,±1)/√3`.
pub fn octahedron_normals() -> Vec<Vec3> {
    let mut out = Vec::with_capacity(8);
    for sx in [1.0, -1.0] {
        for sy in [1.0, -1.0] {
            for sz in [1.0, -1.0] {
                out.push(normalize3([sx, sy, sz]));
            }
        }
    }
    out
}

pub fn cube_fan() -> PolytopeFan {
    build_fan(&cube_normals(), &[0.5; 6]).expect("cube")
}

pub fn octahedron_fan() -> PolytopeFan {
    build_fan(&octahedron_normals(), &[1.0; 8]).expect("octahedron")
}

fn random_unit<R: Rng + ?Sized>(rng: &mut R) -> Vec3 {
    let z: f64 = rng.gen_range(-1.0..1.0);
    let t: f64 = rng.gen_range(0.0..TAU);
    let r = (1.0 - z * z).sqrt();
    [r * t.cos(), r * t.sin(), z]
}

/// A simple polytope with `m` random normals circumscribed about the unit
/// sphere, then with `h` perturbed by up to `±rel`. Normals are kept at
/// least `0.35` apart and edges at least `0.02` long so the forms are well
/// conditioned.
pub fn random_simple_polytope<R: Rng + ?Sized>(m: usize, rel: f64, rng: &mut R) -> (PolytopeFan, Vec<f64>) {
    loop {
        let mut normals: Vec<Vec3> = Vec::with_capacity(m);
        let mut tries = 0;
        while normals.len() < m && tries < 10_000 {
            tries += 1;
            let u = random_unit(rng);
            if normals.iter().all(|v| crate::linalg::norm3(crate::linalg::sub3(*v, u)) > 0.35) {
                normals.push(u);
            }
        }
        if normals.len() < m {
            continue;
        }
        let h: Vec<f64> = (0..m).map(|_| 1.0 + rel * rng.gen_range(-1.0..1.0)).collect();
        if let Some(fan) = accept_polytope(&normals, &h) {
            return (fan, h);
        }
    }
}

/// Cube normals rotated by random small tilts, `h = ½` perturbed by `rel`.
pub fn perturbed_cube<R: Rng + ?Sized>(tilt: f64, rel: f64, rng: &mut R) -> (PolytopeFan, Vec<f64>) {
    loop {
        let normals: Vec<Vec3> = cube_normals()
            .into_iter()
            .map(|u| {
                normalize3([
                    u[0] + tilt * rng.gen_range(-1.0..1.0),
                    u[1] + tilt * rng.gen_range(-1.0..1.0),
                    u[2] + tilt * rng.gen_range(-1.0..1.0),
                ])
            })
            .collect();
        let h: Vec<f64> = (0..6).map(|_| 0.5 * (1.0 + rel * rng.gen_range(-1.0..1.0))).collect();
        if let Some(fan) = accept_polytope(&normals, &h) {
            return (fan, h);
        }
    }
}

fn accept_polytope(normals: &[Vec3], h: &[f64]) -> Option<PolytopeFan> {
    let fan = build_fan(normals, h).ok()?;
    if !fan.is_simple() {
        return None;
    }
    let lengths = polytope::edge_lengths(&fan, h).ok()?;
    let scale = h.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    lengths.iter().all(|l| *l > 0.02 * scale).then_some(fan)
}

/// A point of the open cone near `base`: relative perturbation `rel` plus a
/// random translation of size up to `shift`.
pub fn random_polytope_support<R: Rng + ?Sized>(
    fan: &PolytopeFan,
    base: &[f64],
    rel: f64,
    shift: f64,
    rng: &mut R,
) -> Vec<f64> {
    let scale = base.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    for _ in 0..10_000 {
        let x = [
            shift * rng.gen_range(-1.0..1.0),
            shift * rng.gen_range(-1.0..1.0),
            shift * rng.gen_range(-1.0..1.0),
        ];
        let t = polytope::point_support_vector(fan, x);
        let h: Vec<f64> = base.iter().zip(&t).map(|(b, ti)| b + rel * scale * rng.gen_range(-1.0..1.0) + ti).collect();
        if polytope::cone_membership(fan, &h).map(|c| c.is_interior()).unwrap_or(false) {
            return h;
        }
    }
    base.to_vec()
}

/// Boundary of the unit cube, each face split along one diagonal.
pub fn cube_mesh() -> TriangleMesh {
    polytope::boundary_metric(&cube_fan(), &[0.5; 6]).expect("cube boundary").mesh
}

/// The regular octagon with interior angles `3π/4` (unit sides), fanned from
/// vertex 0 into six triangles, opposite sides glued by translation. All
/// vertices become one cone point of angle `6π`.
pub fn octagon_genus2_mesh() -> TriangleMesh {
    let pts: Vec<Vec3> = (0..8)
        .map(|k| {
            let a = PI / 4.0 * k as f64;
            let r = 1.0 / (2.0 * (PI / 8.0).sin());
            [r * a.cos(), r * a.sin(), 0.0]
        })
        .collect();
    let tri: Vec<[usize; 3]> = (1..7).map(|k| [0, k, k + 1]).collect();
    let lengths: Vec<[f64; 3]> = tri
        .iter()
        .map(|c| {
            let d = |a: usize, b: usize| crate::linalg::norm3(crate::linalg::sub3(pts[b], pts[a]));
            [d(c[0], c[1]), d(c[1], c[2]), d(c[2], c[0])]
        })
        .collect();
    // Directed edge (a→b) of the triangles, by octagon vertex labels.
    let mut edge_of = std::collections::HashMap::new();
    for (t, c) in tri.iter().enumerate() {
        for e in 0..3 {
            edge_of.insert((c[e], c[(e + 1) % 3]), (t, e));
        }
    }
    let mut gluing = Vec::new();
    for (&(a, b), &(t, e)) in &edge_of {
        if let Some(&(t2, e2)) = edge_of.get(&(b, a)) {
            if (t, e) < (t2, e2) {
                gluing.push([t, e, t2, e2]);
            }
        }
    }
    // Side k runs from vertex k to k+1 and is glued to side k+4 by the
    // translation taking vertex k+5 to vertex k.
    for k in 0..4 {
        let (t, e) = edge_of[&(k, (k + 1) % 8)];
        let (t2, e2) = edge_of[&((k + 4) % 8, (k + 5) % 8)];
        gluing.push([t, e, t2, e2]);
    }
    gluing.sort_unstable();
    TriangleMesh::new(lengths, &gluing).expect("octagon surface")
}

/// Mesh before a flip, the flipped edge `(t, e)` and the mesh after it.
pub type FlipStep = (TriangleMesh, (usize, usize), TriangleMesh);

/// Applies up to `count` random admissible flips, returning the meshes
/// before and after each one together with the flipped edge.
pub fn random_flips<R: Rng + ?Sized>(
    mesh: &TriangleMesh,
    count: usize,
    rng: &mut R,
) -> Result<Vec<FlipStep>> {
    let mut out = Vec::with_capacity(count);
    let mut current = mesh.clone();
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > 100 * count + 1000 {
            return Err(Error::Consistency(format!("found only {} admissible flips", out.len())));
        }
        let t = rng.gen_range(0..current.triangle_count());
        let e = rng.gen_range(0..3);
        match crate::surface::flip(&current, t, e) {
            Ok(next) => {
                out.push((current.clone(), (t, e), next.clone()));
                current = next;
            }
            Err(Error::FlipNotAdmissible(_)) => continue,
            Err(err) => return Err(err),
        }
    }
    Ok(out)
}
