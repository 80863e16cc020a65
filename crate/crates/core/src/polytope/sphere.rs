//! The boundary area as an integral over the sphere of the support function:
//! `area = ∫ h² − ½|∇h|²`.
//!
//! On the Gauss cell of a vertex `p` the support function is `⟨p, v⟩`, so the
//! integrand is `(3/2)⟨p,v⟩² − ½|p|²`. Each cell is fanned into geodesic
//! triangles around its mean normal and refined by midpoint subdivision.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{add3, cross3, dot3, normalize3, Vec3};

use super::{vertex_positions, PolytopeFan, TILING_TOLERANCE};

/// Refinement depths above this are refused (each level multiplies the work
/// by four).
pub const MAX_DEPTH: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphereIntegral {
    pub value: f64,
    pub depth: u32,
    /// Sum of the exact spherical areas of all leaf triangles.
    pub covered_area: f64,
    pub leaves: usize,
}

/// Area of the geodesic triangle with unit vertices `a, b, c`.
pub fn spherical_triangle_area(a: Vec3, b: Vec3, c: Vec3) -> f64 {
    let num = dot3(a, cross3(b, c)).abs();
    let den = 1.0 + dot3(a, b) + dot3(b, c) + dot3(c, a);
    2.0 * num.atan2(den)
}

fn midpoint(a: Vec3, b: Vec3) -> Vec3 {
    normalize3(add3(a, b))
}

struct Acc {
    value: f64,
    area: f64,
    leaves: usize,
}

fn integrate<F: Fn(Vec3) -> f64>(a: Vec3, b: Vec3, c: Vec3, depth: u32, f: &F, acc: &mut Acc) {
    let (ab, bc, ca) = (midpoint(a, b), midpoint(b, c), midpoint(c, a));
    if depth == 0 {
        let area = spherical_triangle_area(a, b, c);
        acc.value += area * (f(ab) + f(bc) + f(ca)) / 3.0;
        acc.area += area;
        acc.leaves += 1;
        return;
    }
    integrate(a, ab, ca, depth - 1, f, acc);
    integrate(ab, b, bc, depth - 1, f, acc);
    integrate(ca, bc, c, depth - 1, f, acc);
    integrate(ab, bc, ca, depth - 1, f, acc);
}

/// Integrates `h² − ½|∇h|²` over the Gauss image at the given refinement
/// depth. For `h` in the closed cone this converges to the boundary area.
pub fn area_via_sphere_integral(fan: &PolytopeFan, h: &[f64], depth: u32) -> Result<SphereIntegral> {
    if depth > MAX_DEPTH {
        return Err(Error::InvalidInput(format!("refinement depth {depth} exceeds {MAX_DEPTH}")));
    }
    if !super::cone_membership(fan, h)?.is_closed_member() {
        return Err(Error::Domain("h lies outside the closed cone".into()));
    }
    let positions = vertex_positions(fan, h)?;
    let mut acc = Acc { value: 0.0, area: 0.0, leaves: 0 };
    for (cell, p) in fan.cells().iter().zip(&positions) {
        let p = *p;
        let pp = dot3(p, p);
        let f = move |v: Vec3| {
            let s = dot3(p, v);
            1.5 * s * s - 0.5 * pp
        };
        let normals: Vec<Vec3> = cell.faces.iter().map(|&i| fan.normals()[i]).collect();
        let center = normalize3(normals.iter().fold([0.0; 3], |a, u| add3(a, *u)));
        let k = normals.len();
        for t in 0..k {
            integrate(center, normals[t], normals[(t + 1) % k], depth, &f, &mut acc);
        }
    }
    if (acc.area - 2.0 * TAU).abs() > TILING_TOLERANCE * 2.0 * TAU {
        return Err(Error::Structural(format!("Gauss image cells cover {} instead of 4π", acc.area)));
    }
    Ok(SphereIntegral { value: acc.value, depth, covered_area: acc.area, leaves: acc.leaves })
}
