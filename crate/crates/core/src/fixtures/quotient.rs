//! Quotient fans read off actual Fuchsian polyhedra.
//!
//! The group is the genus-2 surface group generated by the translations
//! pairing opposite sides of the regular hyperbolic octagon with interior
//! angles `π/4`. Face normals are orbits of class centers chosen inside the
//! octagon; each face is the intersection, inside its plane, of the
//! half-planes cut by the faces of nearby orbit points.

use std::collections::{HashMap, VecDeque};
use std::f64::consts::{FRAC_PI_4, PI, TAU};

use rand::Rng;

use crate::error::{Error, Result};
use crate::fuchsian::{Adjacency, QuotientFace, QuotientFanInput};
use crate::linalg::Vec3;

type Mat3 = [[f64; 3]; 3];

/// Minkowski pairing `x₀y₀ + x₁y₁ − x₂y₂`.
pub fn minkowski(x: Vec3, y: Vec3) -> f64 {
    x[0] * y[0] + x[1] * y[1] - x[2] * y[2]
}

/// Hyperbolic distance between two points of the upper hyperboloid sheet.
pub fn hyperbolic_distance(x: Vec3, y: Vec3) -> f64 {
    (-minkowski(x, y)).max(1.0).acosh()
}

/// The point at distance `d` from `(0,0,1)` in direction `theta`.
pub fn hyperboloid_point(d: f64, theta: f64) -> Vec3 {
    [d.sinh() * theta.cos(), d.sinh() * theta.sin(), d.cosh()]
}

fn mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut c = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

fn apply(a: &Mat3, v: Vec3) -> Vec3 {
    [
        a[0][0] * v[0] + a[0][1] * v[1] + a[0][2] * v[2],
        a[1][0] * v[0] + a[1][1] * v[1] + a[1][2] * v[2],
        a[2][0] * v[0] + a[2][1] * v[1] + a[2][2] * v[2],
    ]
}

/// Hyperbolic translation by `t` along the geodesic through the origin in
/// direction `theta`.
fn translation(theta: f64, t: f64) -> Mat3 {
    let (c, s) = (theta.cos(), theta.sin());
    let (ch, sh) = (t.cosh(), t.sinh());
    // R(θ)·B(t)·R(−θ)
    [
        [c * c * ch + s * s, c * s * (ch - 1.0), c * sh],
        [c * s * (ch - 1.0), s * s * ch + c * c, s * sh],
        [c * sh, s * sh, ch],
    ]
}

/// Orthonormal space-like frame of the plane tangent to the hyperboloid at
/// `n`: the images of `e₁, e₂` under the pure boost taking `(0,0,1)` to `n`.
fn tangent_frame(n: Vec3) -> [Vec3; 2] {
    let k = 1.0 + n[2];
    [
        [1.0 + n[0] * n[0] / k, n[0] * n[1] / k, n[0]],
        [n[0] * n[1] / k, 1.0 + n[1] * n[1] / k, n[1]],
    ]
}

pub const ORIGIN: Vec3 = [0.0, 0.0, 1.0];

/// The genus-2 group of the regular octagon with angles `π/4`.
#[derive(Debug, Clone)]
pub struct OctagonGroup {
    generators: Vec<Mat3>,
}

impl Default for OctagonGroup {
    fn default() -> Self {
        Self::new()
    }
}

impl OctagonGroup {
    pub fn new() -> Self {
        let t = 2.0 * Self::inradius();
        let mut generators = Vec::with_capacity(8);
        for k in 0..4 {
            let theta = FRAC_PI_4 * k as f64;
            generators.push(translation(theta, t));
            generators.push(translation(theta, -t));
        }
        OctagonGroup { generators }
    }

    /// Distance from the center to the midpoint of a side, `cosh r = cot(π/8)`.
    pub fn inradius() -> f64 {
        (1.0 / (PI / 8.0).tan()).acosh()
    }

    /// Distance from the center to a vertex, `cosh R = cot²(π/8)`.
    pub fn circumradius() -> f64 {
        (1.0 / (PI / 8.0).tan()).powi(2).acosh()
    }

    pub fn generators(&self) -> &[Mat3] {
        &self.generators
    }

    /// Every group element moving the origin by at most `radius`, found by
    /// walking across octagon sides.
    pub fn elements_within(&self, radius: f64) -> Vec<Mat3> {
        let limit = radius + Self::circumradius();
        let key = |g: &Mat3| {
            let c = apply(g, ORIGIN);
            let s = 1e9 / (1.0 + c[2]);
            ((c[0] * s).round() as i64, (c[1] * s).round() as i64)
        };
        let id: Mat3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        let mut seen = HashMap::from([(key(&id), ())]);
        let mut queue = VecDeque::from([id]);
        let mut out = Vec::new();
        while let Some(g) = queue.pop_front() {
            if hyperbolic_distance(ORIGIN, apply(&g, ORIGIN)) <= radius {
                out.push(g);
            }
            for s in &self.generators {
                let gs = mul(&g, s);
                if hyperbolic_distance(ORIGIN, apply(&gs, ORIGIN)) > limit {
                    continue;
                }
                if seen.insert(key(&gs), ()).is_none() {
                    queue.push_back(gs);
                }
            }
        }
        out
    }
}

/// A generated fan together with the data it was built from.
#[derive(Debug, Clone)]
pub struct GeneratedQuotientFan {
    pub input: QuotientFanInput,
    /// Class centers on the hyperboloid, inside the octagon.
    pub centers: Vec<Vec3>,
    /// Edge lengths measured on the clipped face polygons.
    pub measured_lengths: Vec<Vec<f64>>,
}

struct Candidate {
    class: usize,
    phi: f64,
    direction: [f64; 2],
    bound: f64,
}

/// Clips `poly` (vertices with the label of their outgoing edge) by
/// `a·y ≤ b`.
fn clip(poly: &[([f64; 2], usize)], a: [f64; 2], b: f64, label: usize) -> Vec<([f64; 2], usize)> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    let side = |p: [f64; 2]| a[0] * p[0] + a[1] * p[1] - b;
    for k in 0..n {
        let (cur, l) = poly[k];
        let nxt = poly[(k + 1) % n].0;
        let (sc, sn) = (side(cur), side(nxt));
        let cross = || {
            let t = sc / (sc - sn);
            [cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1])]
        };
        match (sc <= 0.0, sn <= 0.0) {
            (true, true) => out.push((cur, l)),
            (true, false) => {
                out.push((cur, l));
                out.push((cross(), label));
            }
            (false, true) => out.push((cross(), l)),
            (false, false) => {}
        }
    }
    out
}

/// The quotient fan of the Fuchsian polyhedron with class centers `centers`
/// (inside the octagon) and support numbers `h`. Faces of orbit points
/// farther than `cutoff` are ignored; the result is rejected when that could
/// have changed a face.
pub fn quotient_fan_from_centers(
    group: &OctagonGroup,
    centers: &[Vec3],
    h: &[f64],
    cutoff: f64,
) -> Result<GeneratedQuotientFan> {
    let m = centers.len();
    let spread = centers.iter().map(|c| hyperbolic_distance(ORIGIN, *c)).fold(0.0, f64::max);
    let elements = group.elements_within(cutoff + 2.0 * spread);
    let (hmin, hmax) = h.iter().fold((f64::INFINITY, 0.0f64), |(a, b), x| (a.min(*x), b.max(*x)));
    let mut faces = Vec::with_capacity(m);
    let mut measured_lengths = Vec::with_capacity(m);
    let mut degree_sum = 0;
    for i in 0..m {
        let n = centers[i];
        let frame = tangent_frame(n);
        let mut cands = Vec::new();
        for g in &elements {
            for (c, center) in centers.iter().enumerate() {
                let q = apply(g, *center);
                let phi = hyperbolic_distance(n, q);
                if phi < 1e-9 || phi > cutoff {
                    continue;
                }
                let sh = phi.sinh();
                cands.push(Candidate {
                    class: c,
                    phi,
                    direction: [minkowski(frame[0], q) / sh, minkowski(frame[1], q) / sh],
                    bound: (h[i] * phi.cosh() - h[c]) / sh,
                });
            }
        }
        let r = 2.0 * h[i];
        let mut poly = vec![([r, r], usize::MAX), ([-r, r], usize::MAX), ([-r, -r], usize::MAX), ([r, -r], usize::MAX)];
        for (k, c) in cands.iter().enumerate() {
            poly = clip(&poly, c.direction, c.bound, k);
            if poly.len() < 3 {
                return Err(Error::Consistency(format!("face {i} vanished")));
            }
        }
        // Drop edges of negligible length.
        let tiny = 1e-10 * h[i];
        let mut cleaned: Vec<([f64; 2], usize)> = Vec::with_capacity(poly.len());
        for k in 0..poly.len() {
            let (p, l) = poly[k];
            let q = poly[(k + 1) % poly.len()].0;
            if (p[0] - q[0]).hypot(p[1] - q[1]) > tiny {
                cleaned.push((p, l));
            }
        }
        if cleaned.iter().any(|(_, l)| *l == usize::MAX) {
            return Err(Error::Consistency(format!("face {i} is not closed by nearby faces")));
        }
        let reach = cleaned.iter().map(|(p, _)| p[0].hypot(p[1])).fold(0.0, f64::max);
        let safe = (hmin * cutoff.cosh() - hmax) / cutoff.sinh();
        if reach >= safe {
            return Err(Error::Consistency(format!(
                "face {i} reaches {reach}, beyond what the cutoff {cutoff} certifies ({safe})"
            )));
        }
        let d = cleaned.len();
        let angle = |k: usize| {
            let w = cands[cleaned[k].1].direction;
            w[1].atan2(w[0])
        };
        let adjacencies: Vec<Adjacency> = (0..d)
            .map(|k| {
                let c = &cands[cleaned[k].1];
                Adjacency { to: c.class, phi: c.phi, omega: (angle((k + 1) % d) - angle(k)).rem_euclid(TAU) }
            })
            .collect();
        let lengths: Vec<f64> = (0..d)
            .map(|k| {
                let p = cleaned[k].0;
                let q = cleaned[(k + 1) % d].0;
                (p[0] - q[0]).hypot(p[1] - q[1])
            })
            .collect();
        degree_sum += d;
        faces.push(QuotientFace { adjacencies });
        measured_lengths.push(lengths);
    }
    let vertices = (degree_sum % 3 == 0).then_some(degree_sum / 3);
    let input = QuotientFanInput { genus: 2, faces, h: Some(h.to_vec()), k: None, vertices };
    input.fan()?;
    Ok(GeneratedQuotientFan { input, centers: centers.to_vec(), measured_lengths })
}

/// A random simple quotient fan with `m` face classes, built at `h = 𝟏`.
pub fn random_quotient_fan<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Result<GeneratedQuotientFan> {
    let group = OctagonGroup::new();
    for _ in 0..100 {
        let mut centers: Vec<Vec3> = Vec::with_capacity(m);
        while centers.len() < m {
            let d = 0.6 * rng.gen_range(0.0f64..1.0).sqrt();
            let p = hyperboloid_point(d, rng.gen_range(0.0..TAU));
            if centers.iter().all(|c| hyperbolic_distance(*c, p) > 0.15) {
                centers.push(p);
            }
        }
        let h = vec![1.0; m];
        let mut cutoff = 5.0;
        let built = loop {
            match quotient_fan_from_centers(&group, &centers, &h, cutoff) {
                Ok(f) => break Some(f),
                Err(_) if cutoff < 8.0 => cutoff += 1.5,
                Err(_) => break None,
            }
        };
        let Some(built) = built else { continue };
        let shortest = built.measured_lengths.iter().flatten().fold(f64::INFINITY, |a, x| a.min(*x));
        if built.input.vertices.is_some() && shortest > 1e-2 {
            return Ok(built);
        }
    }
    Err(Error::Consistency("could not generate a well-conditioned quotient fan".into()))
}

/// One face class adjacent to itself across the eight sides of the regular
/// octagon with angles `π/4`: `cosh φ = 5 + 4√2`, `ω = π/4`, one vertex.
pub fn genus2_single_class() -> QuotientFanInput {
    let phi = 2.0 * OctagonGroup::inradius();
    let adjacencies = (0..8).map(|_| Adjacency { to: 0, phi, omega: FRAC_PI_4 }).collect();
    QuotientFanInput {
        genus: 2,
        faces: vec![QuotientFace { adjacencies }],
        h: Some(vec![1.0]),
        k: None,
        vertices: Some(1),
    }
}
