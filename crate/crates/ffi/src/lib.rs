//! C interface to `mixedform`.
//!
//! Objects are opaque handles created by `mf_*_new` / `mf_*_build` /
//! `mf_*_from_json` and released by the matching `mf_*_free`. Every fallible
//! call returns an [`MfStatus`]; on failure a message is stored per thread
//! and can be read with `mf_last_error_message`. Output arrays are caller
//! allocated, their required lengths are documented on each function.
//!
//! Handles are immutable after construction and may be shared between
//! threads for reading.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mixedform::forms::{SymmetricForm, DEFAULT_ZERO_THRESHOLD};
use mixedform::fuchsian::{self, QuotientFan, QuotientFanInput};
use mixedform::polygon::{self, NormalFan2D};
use mixedform::polytope::{self, PolytopeFan};
use mixedform::surface::{self, MeshInput, TriangleMesh};
use mixedform::Error;

/// Result of a call. Values other than `MF_OK` come with a message from
/// `mf_last_error_message`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MfStatus {
    MfOk = 0,
    MfNullPointer = 1,
    MfInvalidInput = 2,
    MfDomain = 3,
    MfStructural = 4,
    MfUnbounded = 5,
    MfRedundant = 6,
    MfFlipNotAdmissible = 7,
    MfConsistency = 8,
    MfContract = 9,
    MfInconsistency = 10,
    MfFalsified = 11,
    MfParse = 12,
    MfPanic = 13,
}

/// Convex polygon normal fan.
pub struct MfPolygonFan(NormalFan2D);

/// Normal fan of a convex 3-polytope.
pub struct MfPolytopeFan(PolytopeFan);

/// Quotient data of a Fuchsian polyhedron.
pub struct MfQuotientFan(QuotientFan);

/// Closed flat cone surface glued from triangles.
pub struct MfMesh(TriangleMesh);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> MfStatus {
    match e {
        Error::InvalidInput(_) => MfStatus::MfInvalidInput,
        Error::Domain(_) => MfStatus::MfDomain,
        Error::Contract(_) => MfStatus::MfContract,
        Error::Consistency(_) => MfStatus::MfConsistency,
        Error::Structural(_) => MfStatus::MfStructural,
        Error::Unbounded(_) => MfStatus::MfUnbounded,
        Error::Redundant(_) => MfStatus::MfRedundant,
        Error::FlipNotAdmissible(_) => MfStatus::MfFlipNotAdmissible,
        Error::Inconsistency(_) => MfStatus::MfInconsistency,
        Error::Falsified(_) => MfStatus::MfFalsified,
        Error::Json(_) | Error::Io(_) => MfStatus::MfParse,
    }
}

enum Failure {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

fn guard<F: FnOnce() -> Outcome>(f: F) -> MfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MfStatus::MfOk,
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            MfStatus::MfNullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            MfStatus::MfPanic
        }
    }
}

unsafe fn slice<'a>(p: *const f64, n: usize, what: &'static str) -> std::result::Result<&'a [f64], Failure> {
    if n == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    Ok(std::slice::from_raw_parts(p, n))
}

unsafe fn slice_mut<'a>(p: *mut f64, n: usize, what: &'static str) -> std::result::Result<&'a mut [f64], Failure> {
    if n == 0 {
        return Ok(&mut []);
    }
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    Ok(std::slice::from_raw_parts_mut(p, n))
}

unsafe fn handle<'a, T>(p: *const T, what: &'static str) -> std::result::Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> std::result::Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> std::result::Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure::Lib(Error::InvalidInput(format!("{what} is not UTF-8: {e}"))))
}

fn write_form(form: &SymmetricForm, dst: &mut [f64]) {
    dst.copy_from_slice(form.entries());
}

fn write_signature(form: &SymmetricForm, zero_threshold: f64, dst: &mut [usize]) -> Outcome {
    let sig = form.signature(zero_threshold)?;
    dst.copy_from_slice(&[sig.positive, sig.zero, sig.negative]);
    Ok(())
}

fn threshold(t: f64) -> f64 {
    if t > 0.0 {
        t
    } else {
        DEFAULT_ZERO_THRESHOLD
    }
}

/// Message of the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

// Polygons.

/// Builds a polygon fan from `n` outward normal angles in degrees, listed
/// counterclockwise.
#[no_mangle]
pub unsafe extern "C" fn mf_polygon_fan_new_degrees(
    degrees: *const f64,
    n: usize,
    fan: *mut *mut MfPolygonFan,
) -> MfStatus {
    guard(|| {
        let d = slice(degrees, n, "degrees")?;
        let dst = out(fan, "fan")?;
        let built = NormalFan2D::from_degrees(d)?;
        *dst = Box::into_raw(Box::new(MfPolygonFan(built)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn mf_polygon_fan_free(fan: *mut MfPolygonFan) {
    if !fan.is_null() {
        drop(Box::from_raw(fan));
    }
}

/// Number of edges, 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn mf_polygon_fan_len(fan: *const MfPolygonFan) -> usize {
    fan.as_ref().map_or(0, |f| f.0.len())
}

/// Edge lengths of the polygon with support numbers `h`; `h` and `lengths`
/// hold `n` values.
#[no_mangle]
pub unsafe extern "C" fn mf_polygon_edge_lengths(
    fan: *const MfPolygonFan,
    h: *const f64,
    n: usize,
    lengths: *mut f64,
) -> MfStatus {
    guard(|| {
        let f = &handle(fan, "fan")?.0;
        let l = polygon::edge_lengths(f, slice(h, n, "h")?)?;
        slice_mut(lengths, n, "lengths")?.copy_from_slice(&l);
        Ok(())
    })
}

/// Area form as a row-major `n×n` matrix.
#[no_mangle]
pub unsafe extern "C" fn mf_polygon_area_form(fan: *const MfPolygonFan, matrix: *mut f64) -> MfStatus {
    guard(|| {
        let f = &handle(fan, "fan")?.0;
        let n = f.len();
        write_form(&polygon::area_form(f)?, slice_mut(matrix, n * n, "matrix")?);
        Ok(())
    })
}

/// `(positive, zero, negative)` eigenvalue counts of the area form.
/// A non-positive `zero_threshold` selects the default.
#[no_mangle]
pub unsafe extern "C" fn mf_polygon_signature(
    fan: *const MfPolygonFan,
    zero_threshold: f64,
    signature: *mut usize,
) -> MfStatus {
    guard(|| {
        let f = &handle(fan, "fan")?.0;
        if signature.is_null() {
            return Err(Failure::Null("signature"));
        }
        let dst = std::slice::from_raw_parts_mut(signature, 3);
        write_signature(&polygon::area_form(f)?, threshold(zero_threshold), dst)
    })
}

/// Mixed area of the polygons with support numbers `h` and `k`.
#[no_mangle]
pub unsafe extern "C" fn mf_polygon_mixed_area(
    fan: *const MfPolygonFan,
    h: *const f64,
    k: *const f64,
    n: usize,
    value: *mut f64,
) -> MfStatus {
    guard(|| {
        let f = &handle(fan, "fan")?.0;
        *out(value, "value")? = polygon::mixed_area(f, slice(h, n, "h")?, slice(k, n, "k")?)?;
        Ok(())
    })
}

/// Minkowski inequality: writes `b(h,k)² − q(h)q(k)` and its scale, and
/// whether the inequality holds within tolerance.
#[no_mangle]
pub unsafe extern "C" fn mf_polygon_minkowski(
    fan: *const MfPolygonFan,
    h: *const f64,
    k: *const f64,
    n: usize,
    residual: *mut f64,
    scale: *mut f64,
    holds: *mut bool,
) -> MfStatus {
    guard(|| {
        let f = &handle(fan, "fan")?.0;
        let r = polygon::minkowski_check(f, slice(h, n, "h")?, slice(k, n, "k")?)?;
        *out(residual, "residual")? = r.residual;
        *out(scale, "scale")? = r.scale;
        *out(holds, "holds")? = r.holds;
        Ok(())
    })
}

// Polytopes.

/// Intersects the halfspaces `⟨x, normals[i]⟩ ≤ h[i]`; `normals` holds `3m`
/// coordinates.
#[no_mangle]
pub unsafe extern "C" fn mf_polytope_fan_build(
    normals: *const f64,
    h: *const f64,
    m: usize,
    fan: *mut *mut MfPolytopeFan,
) -> MfStatus {
    guard(|| {
        let flat = slice(normals, 3 * m, "normals")?;
        let u: Vec<[f64; 3]> = flat.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect();
        let dst = out(fan, "fan")?;
        let built = polytope::build_fan(&u, slice(h, m, "h")?)?;
        *dst = Box::into_raw(Box::new(MfPolytopeFan(built)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn mf_polytope_fan_free(fan: *mut MfPolytopeFan) {
    if !fan.is_null() {
        drop(Box::from_raw(fan));
    }
}

/// Number of faces, 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn mf_polytope_fan_len(fan: *const MfPolytopeFan) -> usize {
    fan.as_ref().map_or(0, |f| f.0.len())
}

/// Number of vertices, 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn mf_polytope_vertex_count(fan: *const MfPolytopeFan) -> usize {
    fan.as_ref().map_or(0, |f| f.0.vertex_count())
}

/// True when every vertex lies on exactly three faces.
#[no_mangle]
pub unsafe extern "C" fn mf_polytope_is_simple(fan: *const MfPolytopeFan) -> bool {
    fan.as_ref().is_some_and(|f| f.0.is_simple())
}

#[no_mangle]
pub unsafe extern "C" fn mf_polytope_volume(fan: *const MfPolytopeFan, h: *const f64, m: usize, value: *mut f64) -> MfStatus {
    guard(|| {
        let f = &handle(fan, "fan")?.0;
        *out(value, "value")? = polytope::volume(f, slice(h, m, "h")?)?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn mf_polytope_boundary_area(
    fan: *const MfPolytopeFan,
    h: *const f64,
    m: usize,
    value: *mut f64,
) -> MfStatus {
    guard(|| {
        let f = &handle(fan, "fan")?.0;
        *out(value, "value")? = polytope::boundary_area(f, slice(h, m, "h")?)?;
        Ok(())
    })
}

/// Boundary area form as a row-major `m×m` matrix.
#[no_mangle]
pub unsafe extern "C" fn mf_polytope_area_form(fan: *const MfPolytopeFan, matrix: *mut f64) -> MfStatus {
    guard(|| {
        let f = &handle(fan, "fan")?.0;
        let m = f.len();
        write_form(&polytope::boundary_area_form(f)?, slice_mut(matrix, m * m, "matrix")?);
        Ok(())
    })
}

/// `(positive, zero, negative)` eigenvalue counts of the boundary area form.
#[no_mangle]
pub unsafe extern "C" fn mf_polytope_signature(
    fan: *const MfPolytopeFan,
    zero_threshold: f64,
    signature: *mut usize,
) -> MfStatus {
    guard(|| {
        let f = &handle(fan, "fan")?.0;
        if signature.is_null() {
            return Err(Failure::Null("signature"));
        }
        let dst = std::slice::from_raw_parts_mut(signature, 3);
        write_signature(&polytope::boundary_area_form(f)?, threshold(zero_threshold), dst)
    })
}

/// Mixed volume `v(h, k, p)`.
#[no_mangle]
pub unsafe extern "C" fn mf_polytope_mixed_volume(
    fan: *const MfPolytopeFan,
    h: *const f64,
    k: *const f64,
    p: *const f64,
    m: usize,
    value: *mut f64,
) -> MfStatus {
    guard(|| {
        let f = &handle(fan, "fan")?.0;
        if m != f.len() {
            return Err(Error::InvalidInput(format!("support vectors have {m} entries, fan has {} faces", f.len())).into());
        }
        let v = polytope::volume_form(f)?;
        *out(value, "value")? = v.eval(slice(h, m, "h")?, slice(k, m, "k")?, slice(p, m, "p")?);
        Ok(())
    })
}

/// Boundary area as a quadrature over the sphere at the given refinement
/// depth.
#[no_mangle]
pub unsafe extern "C" fn mf_polytope_sphere_area(
    fan: *const MfPolytopeFan,
    h: *const f64,
    m: usize,
    depth: u32,
    value: *mut f64,
) -> MfStatus {
    guard(|| {
        let f = &handle(fan, "fan")?.0;
        *out(value, "value")? = polytope::area_via_sphere_integral(f, slice(h, m, "h")?, depth)?.value;
        Ok(())
    })
}

// Fuchsian polyhedra.

/// Parses quotient fan JSON (`{"genus", "faces": [{"adjacencies": [...]}]}`).
#[no_mangle]
pub unsafe extern "C" fn mf_quotient_fan_from_json(json: *const c_char, fan: *mut *mut MfQuotientFan) -> MfStatus {
    guard(|| {
        let s = text(json, "json")?;
        let dst = out(fan, "fan")?;
        let input: QuotientFanInput = serde_json::from_str(s).map_err(Error::from)?;
        *dst = Box::into_raw(Box::new(MfQuotientFan(input.fan()?)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn mf_quotient_fan_free(fan: *mut MfQuotientFan) {
    if !fan.is_null() {
        drop(Box::from_raw(fan));
    }
}

/// Number of face classes, 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn mf_quotient_fan_len(fan: *const MfQuotientFan) -> usize {
    fan.as_ref().map_or(0, |f| f.0.len())
}

#[no_mangle]
pub unsafe extern "C" fn mf_fuchsian_covolume(fan: *const MfQuotientFan, h: *const f64, m: usize, value: *mut f64) -> MfStatus {
    guard(|| {
        let f = &handle(fan, "fan")?.0;
        *out(value, "value")? = fuchsian::covolume(f, slice(h, m, "h")?)?;
        Ok(())
    })
}

/// Covolume Hessian at `h` as a row-major `m×m` matrix.
#[no_mangle]
pub unsafe extern "C" fn mf_fuchsian_covolume_hessian(
    fan: *const MfQuotientFan,
    h: *const f64,
    m: usize,
    matrix: *mut f64,
) -> MfStatus {
    guard(|| {
        let f = &handle(fan, "fan")?.0;
        let hess = fuchsian::covolume_hessian(f, slice(h, m, "h")?)?;
        write_form(&hess, slice_mut(matrix, m * m, "matrix")?);
        Ok(())
    })
}

/// Area form as a row-major `m×m` matrix. Returns `MF_FALSIFIED` (and
/// leaves `matrix` untouched) when the form is not positive definite.
#[no_mangle]
pub unsafe extern "C" fn mf_fuchsian_area_form(fan: *const MfQuotientFan, matrix: *mut f64) -> MfStatus {
    guard(|| {
        let f = &handle(fan, "fan")?.0;
        let m = f.len();
        let dst = slice_mut(matrix, m * m, "matrix")?;
        write_form(&fuchsian::fuchsian_area_form(f)?, dst);
        Ok(())
    })
}

/// Spherical distance between the homothety classes of `h` and `k`.
#[no_mangle]
pub unsafe extern "C" fn mf_fuchsian_spherical_distance(
    fan: *const MfQuotientFan,
    h: *const f64,
    k: *const f64,
    m: usize,
    value: *mut f64,
) -> MfStatus {
    guard(|| {
        let f = &handle(fan, "fan")?.0;
        *out(value, "value")? = fuchsian::spherical_distance(f, slice(h, m, "h")?, slice(k, m, "k")?)?;
        Ok(())
    })
}

// Meshes.

/// Builds a mesh from `f` triangles (`3f` lengths, edge `e` joining corners
/// `e` and `e+1`) and `g` gluing records `(t, e, t', e')` (`4g` values).
#[no_mangle]
pub unsafe extern "C" fn mf_mesh_new(
    lengths: *const f64,
    f: usize,
    gluing: *const usize,
    g: usize,
    mesh: *mut *mut MfMesh,
) -> MfStatus {
    guard(|| {
        let l = slice(lengths, 3 * f, "lengths")?;
        if g > 0 && gluing.is_null() {
            return Err(Failure::Null("gluing"));
        }
        let raw: &[usize] = if g == 0 { &[] } else { std::slice::from_raw_parts(gluing, 4 * g) };
        let dst = out(mesh, "mesh")?;
        let tri: Vec<[f64; 3]> = l.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect();
        let glue: Vec<[usize; 4]> = raw.chunks_exact(4).map(|c| [c[0], c[1], c[2], c[3]]).collect();
        *dst = Box::into_raw(Box::new(MfMesh(TriangleMesh::new(tri, &glue)?)));
        Ok(())
    })
}

/// Parses mesh JSON (`{"triangles": [{"lengths": [..]}], "gluing": [[t,e,t',e']]}`).
#[no_mangle]
pub unsafe extern "C" fn mf_mesh_from_json(json: *const c_char, mesh: *mut *mut MfMesh) -> MfStatus {
    guard(|| {
        let s = text(json, "json")?;
        let dst = out(mesh, "mesh")?;
        let input: MeshInput = serde_json::from_str(s).map_err(Error::from)?;
        *dst = Box::into_raw(Box::new(MfMesh(input.build()?)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn mf_mesh_free(mesh: *mut MfMesh) {
    if !mesh.is_null() {
        drop(Box::from_raw(mesh));
    }
}

/// Number of vertices, 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn mf_mesh_vertex_count(mesh: *const MfMesh) -> usize {
    mesh.as_ref().map_or(0, |m| m.0.vertex_count())
}

#[no_mangle]
pub unsafe extern "C" fn mf_mesh_total_area(mesh: *const MfMesh, value: *mut f64) -> MfStatus {
    guard(|| {
        let m = &handle(mesh, "mesh")?.0;
        *out(value, "value")? = surface::total_area(m);
        Ok(())
    })
}

/// Genus and per-vertex curvatures (`mf_mesh_vertex_count` values).
#[no_mangle]
pub unsafe extern "C" fn mf_mesh_cone_data(mesh: *const MfMesh, genus: *mut usize, curvatures: *mut f64) -> MfStatus {
    guard(|| {
        let m = &handle(mesh, "mesh")?.0;
        let cone = surface::cone_data(m)?;
        *out(genus, "genus")? = cone.genus;
        slice_mut(curvatures, m.vertex_count(), "curvatures")?.copy_from_slice(&cone.curvatures);
        Ok(())
    })
}

/// Flips edge `e` of triangle `t` into a new mesh; the new diagonal is
/// edge 1 of triangle `t`.
#[no_mangle]
pub unsafe extern "C" fn mf_mesh_flip(mesh: *const MfMesh, t: usize, e: usize, flipped: *mut *mut MfMesh) -> MfStatus {
    guard(|| {
        let m = &handle(mesh, "mesh")?.0;
        let dst = out(flipped, "flipped")?;
        *dst = Box::into_raw(Box::new(MfMesh(surface::flip(m, t, e)?)));
        Ok(())
    })
}
