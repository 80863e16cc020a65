use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use mixedform_ffi::*;

fn last_error() -> String {
    let p = mf_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn fixture(name: &str) -> CString {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name);
    CString::new(std::fs::read(path).unwrap()).unwrap()
}

#[test]
fn polygon_handle_roundtrip() {
    unsafe {
        let mut fan = ptr::null_mut();
        let deg = [0.0, 90.0, 180.0, 270.0];
        assert_eq!(mf_polygon_fan_new_degrees(deg.as_ptr(), 4, &mut fan), MfStatus::MfOk);
        assert_eq!(mf_polygon_fan_len(fan), 4);

        let h = [1.0, 0.5, 1.0, 0.5];
        let mut l = [0.0; 4];
        assert_eq!(mf_polygon_edge_lengths(fan, h.as_ptr(), 4, l.as_mut_ptr()), MfStatus::MfOk);
        for (a, b) in l.iter().zip([1.0, 2.0, 1.0, 2.0]) {
            assert!((a - b).abs() < 1e-15);
        }

        let mut sig = [0usize; 3];
        assert_eq!(mf_polygon_signature(fan, 0.0, sig.as_mut_ptr()), MfStatus::MfOk);
        assert_eq!(sig, [1, 2, 1]);

        let mut form = [0.0; 16];
        assert_eq!(mf_polygon_area_form(fan, form.as_mut_ptr()), MfStatus::MfOk);
        assert!((form[1] - 0.5).abs() < 1e-15 && form[0].abs() < 1e-15);

        let half = [0.5; 4];
        let mut a = 0.0;
        assert_eq!(mf_polygon_mixed_area(fan, half.as_ptr(), h.as_ptr(), 4, &mut a), MfStatus::MfOk);
        assert!((a - 1.5).abs() < 1e-15);

        let (mut residual, mut scale, mut holds) = (0.0, 0.0, false);
        let st = mf_polygon_minkowski(fan, half.as_ptr(), h.as_ptr(), 4, &mut residual, &mut scale, &mut holds);
        assert_eq!(st, MfStatus::MfOk);
        assert!(holds && (residual - 0.25).abs() < 1e-14);

        mf_polygon_fan_free(fan);
    }
}

#[test]
fn error_codes_and_messages() {
    unsafe {
        let mut fan = ptr::null_mut();
        let bad = [0.0, 180.0, 270.0];
        assert_eq!(mf_polygon_fan_new_degrees(bad.as_ptr(), 3, &mut fan), MfStatus::MfInvalidInput);
        assert!(fan.is_null());
        assert!(!last_error().is_empty());

        assert_eq!(mf_polygon_fan_new_degrees(ptr::null(), 4, &mut fan), MfStatus::MfNullPointer);
        assert!(last_error().contains("degrees"));

        let mut l = [0.0; 4];
        let h = [1.0; 4];
        assert_eq!(mf_polygon_edge_lengths(ptr::null(), h.as_ptr(), 4, l.as_mut_ptr()), MfStatus::MfNullPointer);
        assert_eq!(mf_polygon_fan_len(ptr::null()), 0);
        mf_polygon_fan_free(ptr::null_mut());

        let json = CString::new("{not json").unwrap();
        let mut q = ptr::null_mut();
        assert_eq!(mf_quotient_fan_from_json(json.as_ptr(), &mut q), MfStatus::MfParse);
    }
}

#[test]
fn polytope_handle() {
    unsafe {
        let normals = [1.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, -1.0];
        let half = [0.5; 6];
        let mut fan = ptr::null_mut();
        assert_eq!(mf_polytope_fan_build(normals.as_ptr(), half.as_ptr(), 6, &mut fan), MfStatus::MfOk);
        assert_eq!(mf_polytope_fan_len(fan), 6);
        assert_eq!(mf_polytope_vertex_count(fan), 8);
        assert!(mf_polytope_is_simple(fan));

        let mut v = 0.0;
        assert_eq!(mf_polytope_volume(fan, half.as_ptr(), 6, &mut v), MfStatus::MfOk);
        assert!((v - 1.0).abs() < 1e-14);
        assert_eq!(mf_polytope_boundary_area(fan, half.as_ptr(), 6, &mut v), MfStatus::MfOk);
        assert!((v - 6.0).abs() < 1e-14);
        let b = [0.5, 0.5, 1.0, 1.0, 2.0, 2.0];
        assert_eq!(mf_polytope_mixed_volume(fan, b.as_ptr(), b.as_ptr(), b.as_ptr(), 6, &mut v), MfStatus::MfOk);
        assert!((v - 8.0).abs() < 1e-13);
        assert_eq!(mf_polytope_mixed_volume(fan, b.as_ptr(), b.as_ptr(), b.as_ptr(), 5, &mut v), MfStatus::MfInvalidInput);
        assert_eq!(mf_polytope_sphere_area(fan, half.as_ptr(), 6, 6, &mut v), MfStatus::MfOk);
        assert!((v - 6.0).abs() < 1e-5);

        let mut sig = [0usize; 3];
        assert_eq!(mf_polytope_signature(fan, 0.0, sig.as_mut_ptr()), MfStatus::MfOk);
        assert_eq!(sig, [1, 3, 2]);
        let mut form = [0.0; 36];
        assert_eq!(mf_polytope_area_form(fan, form.as_mut_ptr()), MfStatus::MfOk);
        mf_polytope_fan_free(fan);

        let mut seven = normals.to_vec();
        let s = 1.0 / 3f64.sqrt();
        seven.extend([s, s, s]);
        let h7 = [0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 10.0];
        let mut fan = ptr::null_mut();
        assert_eq!(mf_polytope_fan_build(seven.as_ptr(), h7.as_ptr(), 7, &mut fan), MfStatus::MfRedundant);
        assert!(last_error().contains('6'));
        assert_eq!(mf_polytope_fan_build(normals.as_ptr(), half.as_ptr(), 5, &mut fan), MfStatus::MfUnbounded);
    }
}

#[test]
fn quotient_fan_handle() {
    unsafe {
        let mut fan = ptr::null_mut();
        assert_eq!(mf_quotient_fan_from_json(fixture("fan_g2_multi.json").as_ptr(), &mut fan), MfStatus::MfOk);
        let m = mf_quotient_fan_len(fan);
        assert_eq!(m, 3);
        let h = [1.0; 3];
        let mut hess = [0.0; 9];
        assert_eq!(mf_fuchsian_covolume_hessian(fan, h.as_ptr(), 3, hess.as_mut_ptr()), MfStatus::MfOk);
        for i in 0..3 {
            let off: f64 = (0..3).filter(|&j| j != i).map(|j| hess[3 * i + j].abs()).sum();
            assert!(hess[4 * i] > off);
        }
        let mut form = [0.0; 9];
        assert_eq!(mf_fuchsian_area_form(fan, form.as_mut_ptr()), MfStatus::MfOk);
        let mut c = 0.0;
        assert_eq!(mf_fuchsian_covolume(fan, h.as_ptr(), 3, &mut c), MfStatus::MfOk);
        assert!(c > 0.0);
        let k = [2.0; 3];
        assert_eq!(mf_fuchsian_spherical_distance(fan, h.as_ptr(), k.as_ptr(), 3, &mut c), MfStatus::MfOk);
        assert!(c.abs() < 1e-7);
        mf_quotient_fan_free(fan);

        let mut bad = ptr::null_mut();
        assert_eq!(mf_quotient_fan_from_json(fixture("fan_not_pd.json").as_ptr(), &mut bad), MfStatus::MfOk);
        let mut form = [0.0; 1];
        assert_eq!(mf_fuchsian_area_form(bad, form.as_mut_ptr()), MfStatus::MfFalsified);
        assert_eq!(form[0], 0.0);
        mf_quotient_fan_free(bad);
    }
}

#[test]
fn mesh_handle() {
    unsafe {
        let mut mesh = ptr::null_mut();
        assert_eq!(mf_mesh_from_json(fixture("octagon_mesh.json").as_ptr(), &mut mesh), MfStatus::MfOk);
        assert_eq!(mf_mesh_vertex_count(mesh), 1);
        let (mut genus, mut k) = (0usize, [0.0; 1]);
        assert_eq!(mf_mesh_cone_data(mesh, &mut genus, k.as_mut_ptr()), MfStatus::MfOk);
        assert_eq!(genus, 2);
        assert!((k[0] + 4.0 * std::f64::consts::PI).abs() < 1e-9);
        mf_mesh_free(mesh);

        let mut mesh = ptr::null_mut();
        let json = CString::new(
            serde_json::to_string(&mixedform::surface::MeshInput::from(
                &mixedform::surface::TriangleMesh::double_of_polygon(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
                    .unwrap(),
            ))
            .unwrap(),
        )
        .unwrap();
        assert_eq!(mf_mesh_from_json(json.as_ptr(), &mut mesh), MfStatus::MfOk);
        let mut area = 0.0;
        assert_eq!(mf_mesh_total_area(mesh, &mut area), MfStatus::MfOk);
        assert!((area - 2.0).abs() < 1e-14);
        let mut flipped = ptr::null_mut();
        let mut done = false;
        for t in 0..4 {
            for e in 0..3 {
                if mf_mesh_flip(mesh, t, e, &mut flipped) == MfStatus::MfOk {
                    done = true;
                    break;
                }
            }
            if done {
                break;
            }
        }
        assert!(done);
        assert_eq!(mf_mesh_total_area(flipped, &mut area), MfStatus::MfOk);
        assert!((area - 2.0).abs() < 1e-14);
        mf_mesh_free(flipped);
        mf_mesh_free(mesh);

        let lengths = [1.0; 6];
        let glue = [0usize, 0, 1, 0];
        let mut open = ptr::null_mut();
        assert_eq!(mf_mesh_new(lengths.as_ptr(), 2, glue.as_ptr(), 1, &mut open), MfStatus::MfStructural);
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(mf_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

fn header() -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/mixedform.h")).unwrap()
}

#[test]
fn header_declares_the_interface() {
    let h = header();
    for sym in [
        "typedef struct MfPolygonFan MfPolygonFan;",
        "typedef struct MfPolytopeFan MfPolytopeFan;",
        "typedef struct MfQuotientFan MfQuotientFan;",
        "typedef struct MfMesh MfMesh;",
        "MF_OK = 0",
        "MF_FALSIFIED = 11",
        "mf_last_error_message(void)",
        "mf_polygon_fan_new_degrees(",
        "mf_polytope_fan_build(",
        "mf_quotient_fan_from_json(",
        "mf_fuchsian_area_form(",
        "mf_mesh_flip(",
    ] {
        assert!(h.contains(sym), "header lacks {sym}");
    }
}

/// Directory holding the built library artifacts (`target/<profile>`).
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_the_static_library() {
    let lib = artifact_dir().join("libmixedform_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = dir.join("smoke.c");
    let bin = dir.join("smoke");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "mixedform.h"
int main(void) {
    const double deg[5] = {0, 72, 144, 216, 288};
    MfPolygonFan *fan = NULL;
    size_t sig[3];
    if (mf_polygon_fan_new_degrees(deg, 5, &fan) != MF_OK) return 1;
    if (mf_polygon_signature(fan, 0.0, sig) != MF_OK) return 2;
    mf_polygon_fan_free(fan);
    if (mf_polygon_fan_new_degrees(deg, 2, &fan) != MF_INVALID_INPUT) return 3;
    if (mf_last_error_message() == NULL) return 4;
    printf("%zu %zu %zu\n", sig[0], sig[1], sig[2]);
    return 0;
}
"#,
    )
    .unwrap();
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(Path::new(env!("CARGO_MANIFEST_DIR")).join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1 2 2");
}
