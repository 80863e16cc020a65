//! Acceptance criteria 1–12. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

// `!(x < tol)` is deliberate: a NaN must fail the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::f64::consts::{FRAC_PI_2, TAU};
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use mixedform::fixtures::{self, rng};
use mixedform::forms::abc_lemma_residuals;
use mixedform::fuchsian::{self, QuotientFan};
use mixedform::linalg::norm;
use mixedform::polygon::{self, NormalFan2D};
use mixedform::polytope::{self, PolytopeFan};
use mixedform::surface::{self, TriangleMesh};
use rand::Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn polygon_fans(n: usize, count: usize, seed: u64) -> Vec<NormalFan2D> {
    let mut r = rng(seed);
    let mut fans = vec![NormalFan2D::regular(n)];
    while fans.len() < count {
        fans.push(fixtures::perturbed_polygon_fan(n, &mut r));
    }
    fans
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for n in 3..=12 {
        for fan in polygon_fans(n, 20, n as u64) {
            let sig = polygon::area_form(&fan).and_then(|f| f.signature(1e-9)).map_err(err)?;
            ensure!(sig.as_tuple() == (1, 2, n - 3), "n = {n}: signature {sig}");
            checked += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 1.0, "took {secs:.3} s");
    Ok(format!("{checked} fans, signature (1,2,n-3), {secs:.3} s"))
}

fn criterion_2() -> Outcome {
    let mut worst = f64::INFINITY;
    let mut pairs = 0;
    for n in 3..=12 {
        let fan = &polygon_fans(n, 2, 100 + n as u64)[1];
        let form = polygon::area_form(fan).map_err(err)?;
        let mut r = rng(200 + n as u64);
        let rel = (1.2 / n as f64).min(0.4);
        for t in 0..1000 {
            let h = fixtures::random_polygon_support(fan, rel, 0.5, &mut r);
            let k = fixtures::random_polygon_support(fan, rel, 0.5, &mut r);
            let (b, qh, qk) = (form.bilinear(&h, &k), form.eval(&h), form.eval(&k));
            let scale = b * b + qh * qk;
            let res = b * b - qh * qk;
            ensure!(res >= -1e-12 * scale, "n = {n}: residual {res:e}");
            if t % 20 == 0 {
                let rep = polygon::minkowski_check(fan, &h, &k).map_err(err)?;
                ensure!(rep.holds, "n = {n}: check reports a violation");
            }
            worst = worst.min(res / scale);
            pairs += 1;
        }
    }
    let mut r = rng(300);
    let mut max_err = 0.0f64;
    for c in 0..100 {
        let n = 3 + c % 10;
        let fan = fixtures::perturbed_polygon_fan(n, &mut r);
        let k = fixtures::random_polygon_support(&fan, 0.4, 0.5, &mut r);
        let x = [r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0)];
        let lambda = r.gen_range(0.2..5.0);
        let hx = polygon::point_support_vector(&fan, x);
        let h: Vec<f64> = hx.iter().zip(&k).map(|(a, b)| a + lambda * b).collect();
        let rep = polygon::minkowski_check(&fan, &h, &k).map_err(err)?;
        ensure!(rep.residual.abs() < 1e-10 * rep.scale, "constructed pair {c}: residual {:e}", rep.residual);
        let w = rep.witness.ok_or_else(|| format!("constructed pair {c}: no witness"))?;
        let e = (w.x[0] - x[0]).abs().max((w.x[1] - x[1]).abs()).max((w.lambda - lambda).abs());
        ensure!(e < 1e-7, "constructed pair {c}: witness error {e:e}");
        max_err = max_err.max(e);
    }
    Ok(format!("{pairs} random pairs (min residual/scale {worst:.2e}), 100 witnesses (max error {max_err:.1e})"))
}

fn shoelace(v: &[[f64; 2]]) -> f64 {
    let n = v.len();
    (0..n).map(|i| v[i][0] * v[(i + 1) % n][1] - v[(i + 1) % n][0] * v[i][1]).sum::<f64>() / 2.0
}

fn criterion_3() -> Outcome {
    let fan = NormalFan2D::from_degrees(&[0.0, 90.0, 180.0, 270.0]).map_err(err)?;
    let h = [0.5; 4];
    let k = [1.0, 0.5, 1.0, 0.5];
    let lemma = polygon::mixed_area(&fan, &h, &k).map_err(err)?;
    let sum: Vec<f64> = h.iter().zip(&k).map(|(a, b)| a + b).collect();
    let area = |s: &[f64]| polygon::vertices(&fan, s).map(|v| shoelace(&v));
    let ie = (area(&sum).map_err(err)? - area(&h).map_err(err)? - area(&k).map_err(err)?) / 2.0;
    ensure!((lemma - 1.5).abs() < 1e-12, "Lemma formula gives {lemma}");
    ensure!((ie - 1.5).abs() < 1e-12, "inclusion-exclusion gives {ie}");
    ensure!((lemma - ie).abs() < 1e-12, "disagreement {:e}", (lemma - ie).abs());
    Ok(format!("a(square, rectangle) = {lemma} = {ie}"))
}

fn area_volume_identity(fan: &PolytopeFan) -> Result<f64, String> {
    let area = polytope::boundary_area_form(fan).map_err(err)?;
    let via = polytope::volume_form(fan).map_err(err)?.contract(&vec![1.0; fan.len()]).scaled(3.0);
    Ok(area.max_difference(&via) / area.max_abs())
}

fn criterion_4() -> Outcome {
    let cube = fixtures::cube_fan();
    let h = [0.5; 6];
    let vol = polytope::volume(&cube, &h).map_err(err)?;
    let form = polytope::boundary_area_form(&cube).map_err(err)?;
    let area = form.eval(&h);
    let sig = form.signature(1e-9).map_err(err)?;
    ensure!((vol - 1.0).abs() < 1e-12, "cube volume {vol}");
    ensure!((area - 6.0).abs() < 1e-12, "cube area {area}");
    ensure!(sig.as_tuple() == (1, 3, 2), "cube signature {sig}");
    let mut worst = area_volume_identity(&cube)?;
    let mut r = rng(4);
    for c in 0..20 {
        let m = 8 + c % 7;
        let (fan, _) = fixtures::random_simple_polytope(m, 0.2, &mut r);
        let sig = polytope::boundary_area_form(&fan).and_then(|f| f.signature(1e-9)).map_err(err)?;
        ensure!(sig.as_tuple() == (1, 3, m - 4), "polytope {c} (m = {m}): signature {sig}");
        let d = area_volume_identity(&fan)?;
        ensure!(d < 1e-10, "polytope {c}: area form differs from 3v(1,.,.) by {d:e}");
        worst = worst.max(d);
    }
    Ok(format!("cube (1, 6, (1,3,2)); 20 random polytopes (1,3,m-4); identity defect {worst:.1e}"))
}

fn criterion_5() -> Outcome {
    let mut r = rng(5);
    let mut fans: Vec<(PolytopeFan, Vec<f64>)> = vec![(fixtures::cube_fan(), vec![0.5; 6])];
    fans.push(fixtures::perturbed_cube(0.15, 0.1, &mut r));
    for m in [8, 10] {
        fans.push(fixtures::random_simple_polytope(m, 0.2, &mut r));
    }
    let mut triples = 0;
    let mut worst_abc = f64::NEG_INFINITY;
    for (f, (fan, base)) in fans.iter().enumerate() {
        let v = polytope::volume_form(fan).map_err(err)?;
        let area = polytope::boundary_area_form(fan).map_err(err)?;
        for t in 0..1000 {
            let h = fixtures::random_polytope_support(fan, base, 0.3, 0.3, &mut r);
            let k = fixtures::random_polytope_support(fan, base, 0.3, 0.3, &mut r);
            let p = fixtures::random_polytope_support(fan, base, 0.3, 0.3, &mut r);
            let (hk, hh, kk) = (v.eval(&h, &k, &p), v.eval(&h, &h, &p), v.eval(&k, &k, &p));
            let scale = hk * hk + (hh * kk).abs();
            ensure!(hk * hk - hh * kk >= -1e-12 * scale, "fan {f} triple {t}: residual {:e}", hk * hk - hh * kk);
            if t % 50 == 0 {
                let rep = polytope::alexandrov_fenchel_check(fan, &h, &k, &p).map_err(err)?;
                ensure!(rep.holds, "fan {f} triple {t}: check reports a violation");
            }
            let abc = abc_lemma_residuals(&area, &h, &k, &p).map_err(err)?;
            let s = (abc.b * abc.b).max((abc.a * abc.c).abs());
            ensure!(abc.discriminant() <= 1e-9 * s, "fan {f} triple {t}: B² − AC = {:e}", abc.discriminant());
            worst_abc = worst_abc.max(abc.discriminant() / s);
            triples += 1;
        }
    }
    let mut max_err = 0.0f64;
    for (f, (fan, base)) in fans.iter().enumerate() {
        for c in 0..10 {
            let k = fixtures::random_polytope_support(fan, base, 0.3, 0.3, &mut r);
            let p = fixtures::random_polytope_support(fan, base, 0.3, 0.3, &mut r);
            let x = [r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)];
            let lambda = r.gen_range(0.3..3.0);
            let hx = polytope::point_support_vector(fan, x);
            let h: Vec<f64> = hx.iter().zip(&k).map(|(a, b)| a + lambda * b).collect();
            let rep = polytope::alexandrov_fenchel_check(fan, &h, &k, &p).map_err(err)?;
            let w = rep.witness.ok_or_else(|| format!("fan {f} case {c}: no witness"))?;
            let e = (0..3).map(|i| (w.x[i] - x[i]).abs()).fold((w.lambda - lambda).abs(), f64::max);
            ensure!(e < 1e-7, "fan {f} case {c}: witness error {e:e}");
            max_err = max_err.max(e);
        }
    }
    Ok(format!(
        "{triples} triples on {} fans, max (B²−AC)/scale {worst_abc:.1e}, witness error {max_err:.1e}",
        fans.len()
    ))
}

fn criterion_6() -> Outcome {
    let cube = fixtures::cube_fan();
    let v = polytope::area_via_sphere_integral(&cube, &[0.5; 6], 6).map_err(err)?.value;
    ensure!((v - 6.0).abs() < 1e-5, "cube depth 6 gives {v}");
    let mut r = rng(6);
    let mut orders = Vec::new();
    for p in 0..3 {
        let (fan, h) = fixtures::perturbed_cube(0.2, 0.2, &mut r);
        let exact = polytope::boundary_area(&fan, &h).map_err(err)?;
        let e4 = (polytope::area_via_sphere_integral(&fan, &h, 4).map_err(err)?.value - exact).abs();
        let e8 = (polytope::area_via_sphere_integral(&fan, &h, 8).map_err(err)?.value - exact).abs();
        // Four halvings of the cell diameter.
        let order = (e4 / e8).log2() / 4.0;
        ensure!(order >= 2.0, "polytope {p}: observed order {order:.2} (errors {e4:e}, {e8:e})");
        orders.push(order);
    }
    Ok(format!("cube error {:.1e}; orders {:?}", (v - 6.0).abs(), orders.iter().map(|o| format!("{o:.2}")).collect::<Vec<_>>()))
}

fn curvature_cell_gap(fan: &PolytopeFan, h: &[f64]) -> Result<(Vec<f64>, f64), String> {
    let bm = polytope::boundary_metric(fan, h).map_err(err)?;
    let cones = surface::cone_data(&bm.mesh).map_err(err)?;
    let gap = cones
        .curvatures
        .iter()
        .zip(&bm.polytope_vertex)
        .map(|(k, &v)| (k - fan.cells()[v].area).abs())
        .fold(0.0f64, f64::max);
    Ok((cones.curvatures, gap))
}

fn criterion_7() -> Outcome {
    let (cube_k, gap_c) = curvature_cell_gap(&fixtures::cube_fan(), &[0.5; 6])?;
    ensure!(cube_k.len() == 8, "cube has {} cone points", cube_k.len());
    ensure!(cube_k.iter().all(|k| (k - FRAC_PI_2).abs() < 1e-12), "cube curvatures {cube_k:?}");
    let (oct_k, gap_o) = curvature_cell_gap(&fixtures::octahedron_fan(), &[1.0; 8])?;
    ensure!(oct_k.len() == 6, "octahedron has {} cone points", oct_k.len());
    ensure!(oct_k.iter().all(|k| (k - TAU / 3.0).abs() < 1e-9), "octahedron curvatures {oct_k:?}");
    let mut worst = gap_c.max(gap_o);
    let mut r = rng(7);
    for _ in 0..5 {
        let (fan, h) = fixtures::random_simple_polytope(9, 0.2, &mut r);
        let (k, gap) = curvature_cell_gap(&fan, &h)?;
        ensure!(k.iter().all(|x| *x > 0.0 && *x < TAU), "curvature outside (0, 2π)");
        worst = worst.max(gap);
    }
    ensure!(worst < 1e-9, "curvature differs from Gauss cell area by {worst:e}");
    let oct = surface::cone_data(&fixtures::octagon_genus2_mesh()).map_err(err)?;
    ensure!(oct.genus == 2 && oct.curvatures.len() == 1, "octagon surface: genus {}, {} vertices", oct.genus, oct.curvatures.len());
    ensure!((oct.curvatures[0] + 2.0 * TAU).abs() < 1e-9, "octagon cone curvature {}", oct.curvatures[0]);
    Ok(format!("cube 8×π/2, octahedron 6×2π/3, cell gap {worst:.1e}, octagon curvature {:.12}", oct.curvatures[0]))
}

fn sorted_lengths(m: &TriangleMesh) -> Vec<f64> {
    let mut v: Vec<f64> = m.lengths().iter().flatten().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

fn criterion_8() -> Outcome {
    let mut r = rng(8);
    let mut meshes = vec![fixtures::cube_mesh(), fixtures::octagon_genus2_mesh()];
    let (fan, h) = fixtures::random_simple_polytope(10, 0.2, &mut r);
    meshes.push(polytope::boundary_metric(&fan, &h).map_err(err)?.mesh);
    let mut flips = 0;
    let mut worst = 0.0f64;
    for (i, mesh) in meshes.iter().enumerate() {
        let count = if i == 0 { 100 } else { 50 };
        for (before, (t, _), after) in fixtures::random_flips(mesh, count, &mut r).map_err(err)? {
            let (a0, a1) = (surface::total_area(&before), surface::total_area(&after));
            ensure!((a0 - a1).abs() <= 1e-12 * a0, "area {a0} → {a1}");
            let (c0, c1) = (surface::cone_data(&before).map_err(err)?, surface::cone_data(&after).map_err(err)?);
            for (x, y) in c0.sorted_angles().iter().zip(c1.sorted_angles()) {
                ensure!((x - y).abs() <= 1e-12 * x.abs(), "cone angle {x} → {y}");
                worst = worst.max((x - y).abs() / x.abs());
            }
            let back = surface::flip(&after, t, 1).map_err(err)?;
            for (x, y) in sorted_lengths(&before).iter().zip(sorted_lengths(&back)) {
                ensure!((x - y).abs() <= 1e-12 * x, "double flip changed a length {x} → {y}");
            }
            flips += 1;
        }
    }
    ensure!(flips == 200, "{flips} flips");
    Ok(format!("{flips} flips, max relative angle change {worst:.1e}"))
}

fn interior_sample<R: Rng>(fan: &QuotientFan, spread: f64, r: &mut R) -> Vec<f64> {
    loop {
        let h: Vec<f64> = (0..fan.len()).map(|_| 1.0 + spread * r.gen_range(-1.0..1.0)).collect();
        if fuchsian::is_interior(fan, &h).unwrap_or(false) {
            return h;
        }
    }
}

fn fd_hessian(fan: &QuotientFan, h: &[f64]) -> Result<Vec<f64>, String> {
    let m = h.len();
    let d = 1e-3;
    let c = |v: &[f64]| fuchsian::covolume(fan, v).map_err(err);
    let mut out = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..m {
            let shift = |si: f64, sj: f64| {
                let mut v = h.to_vec();
                v[i] += si * d;
                v[j] += sj * d;
                v
            };
            out[i * m + j] = (c(&shift(1.0, 1.0))? - c(&shift(1.0, -1.0))? - c(&shift(-1.0, 1.0))? + c(&shift(-1.0, -1.0))?)
                / (4.0 * d * d);
        }
    }
    Ok(out)
}

fn quotient_fans() -> Result<Vec<QuotientFan>, String> {
    let mut fans = vec![fixtures::genus2_single_class().fan().map_err(err)?];
    let mut r = rng(9);
    for c in 0..50 {
        let g = fixtures::random_quotient_fan(2 + c % 3, &mut r).map_err(err)?;
        fans.push(g.input.fan().map_err(err)?);
    }
    Ok(fans)
}

fn criterion_9() -> Outcome {
    let fans = quotient_fans()?;
    let mut r = rng(90);
    let (mut min_margin, mut min_eig, mut worst_fd) = (f64::INFINITY, f64::INFINITY, 0.0f64);
    for (f, fan) in fans.iter().enumerate() {
        let spread = if fan.len() == 1 { 0.0 } else { 0.02 };
        for s in 0..100 {
            let h = interior_sample(fan, spread, &mut r);
            let hess = fuchsian::covolume_hessian(fan, &h).map_err(err)?;
            let margin = fuchsian::diagonal_dominance_margin(&hess);
            let eig = hess.min_eigenvalue().map_err(err)?;
            ensure!(margin > 0.0, "fan {f} sample {s}: dominance margin {margin:e}");
            ensure!(eig > 0.0, "fan {f} sample {s}: min eigenvalue {eig:e}");
            min_margin = min_margin.min(margin);
            min_eig = min_eig.min(eig);
            if s % 10 == 0 {
                let fd = fd_hessian(fan, &h)?;
                let diff = hess.entries().iter().zip(&fd).map(|(a, b)| (a - b).abs()).fold(0.0f64, f64::max);
                let rel = diff / hess.max_abs();
                ensure!(rel < 1e-6, "fan {f} sample {s}: finite differences differ by {rel:e}");
                worst_fd = worst_fd.max(rel);
            }
        }
    }
    Ok(format!(
        "{} fans × 100 h: min margin {min_margin:.3}, min eigenvalue {min_eig:.3}, FD error {worst_fd:.1e}",
        fans.len()
    ))
}

fn criterion_10() -> Outcome {
    let mut fans = quotient_fans()?;
    let file = fixture("fan_g2_multi.json");
    let input: fuchsian::QuotientFanInput =
        serde_json::from_slice(&std::fs::read(&file).map_err(err)?).map_err(err)?;
    fans.push(input.fan().map_err(err)?);
    let mut min_eig = f64::INFINITY;
    for (f, fan) in fans.iter().enumerate() {
        let form = fuchsian::fuchsian_area_form(fan).map_err(|e| format!("fan {f}: {e}"))?;
        min_eig = min_eig.min(form.min_eigenvalue().map_err(err)?);
    }
    let mut r = rng(10);
    let mut worst = f64::INFINITY;
    let mut pairs = 0;
    for fan in fans.iter().skip(1).take(20) {
        for _ in 0..50 {
            let h: Vec<f64> = (0..fan.len()).map(|_| r.gen_range(0.5..1.5)).collect();
            let k: Vec<f64> = (0..fan.len()).map(|_| r.gen_range(0.5..1.5)).collect();
            let cs = fuchsian::cauchy_schwarz_check(fan, &h, &k).map_err(err)?;
            ensure!(cs.residual >= -1e-12 * cs.scale, "Cauchy-Schwarz residual {:e}", cs.residual);
            let gap: Vec<f64> = k.iter().zip(&h).map(|(a, b)| a - cs.mixed / cs.first * b).collect();
            ensure!(
                cs.homothety.is_some() == (norm(&gap) <= 1e-7 * norm(&k)),
                "homothety flag disagrees with ‖k − λh‖"
            );
            worst = worst.min(cs.residual / cs.scale);
            pairs += 1;
            let lambda = r.gen_range(0.2..5.0);
            let kh: Vec<f64> = h.iter().map(|x| lambda * x).collect();
            let eq = fuchsian::cauchy_schwarz_check(fan, &h, &kh).map_err(err)?;
            let l = eq.homothety.ok_or("homothetic pair not detected")?;
            ensure!((l - lambda).abs() < 1e-7 * lambda, "λ = {l} instead of {lambda}");
            ensure!(eq.residual.abs() <= 1e-12 * eq.scale, "homothetic residual {:e}", eq.residual);
        }
        // Non-homothetic pairs with positive residual are never flagged.
        let h = vec![1.0; fan.len()];
        let mut k = h.clone();
        k[0] = 1.3;
        let cs = fuchsian::cauchy_schwarz_check(fan, &h, &k).map_err(err)?;
        ensure!(cs.homothety.is_none() && cs.residual > 0.0, "perturbed pair reported as homothetic");
    }
    ensure!(pairs >= 1000, "only {pairs} pairs");
    Ok(format!("{} fans positive definite (min eigenvalue {min_eig:.3}); {pairs} pairs, min residual/scale {worst:.1e}", fans.len()))
}

fn criterion_11() -> Outcome {
    let mut r = rng(11);
    let mut worst_area = 0.0f64;
    let mut worst_closure = 0.0f64;
    for f in 0..10 {
        let fan = if f == 0 { NormalFan2D::regular(4) } else { fixtures::perturbed_polygon_fan(3 + f, &mut r) };
        for _ in 0..100 {
            let h = fixtures::random_polygon_support(&fan, 0.3, 0.5, &mut r);
            let emb = polygon::double_chart_embedding(&fan, &h).map_err(err)?;
            let q = polygon::area(&fan, &h).map_err(err)?;
            let rel = (emb.area - q).abs() / q.abs();
            ensure!(rel <= 1e-12, "A(z) = {} vs q(h) = {q}", emb.area);
            ensure!(emb.closure_defect < 1e-10, "closure defect {:e}", emb.closure_defect);
            worst_area = worst_area.max(rel);
            worst_closure = worst_closure.max(emb.closure_defect);
        }
    }
    let restricted = polygon::shoelace_hermitian(3).restrict(&polygon::closure_basis(3)).map_err(err)?;
    let sig = restricted.signature(1e-9).map_err(err)?;
    let mut eig = restricted.eigenvalues().map_err(err)?;
    eig.sort_by(f64::total_cmp);
    ensure!(sig.positive == 1 && sig.negative == 1 && sig.zero == 0, "n = 3 signature {sig}");
    ensure!((eig[0] + 0.25).abs() < 1e-12 && (eig[1] - 0.25).abs() < 1e-12, "eigenvalues {eig:?}");
    Ok(format!("1000 charts: area error {worst_area:.1e}, closure {worst_closure:.1e}; n = 3 eigenvalues ±1/4"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run_cli(args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_mixedform")).args(args).output().map_err(err)?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn criterion_12() -> Outcome {
    let square = fixture("square.json");
    let cube = fixture("cube.json");
    let fan = fixture("fan_g2.json");
    let runs: [Vec<&str>; 3] = [
        vec!["polygon", "minkowski", square.to_str().unwrap(), "--json", "--seed", "7", "--samples", "200"],
        vec!["polytope", "af-check", cube.to_str().unwrap(), "--json", "--seed", "7", "--samples", "50"],
        vec!["fuchsian", "check-pd", fan.to_str().unwrap(), "--json", "--seed", "7", "--samples", "100"],
    ];
    for args in &runs {
        let (c1, o1) = run_cli(args)?;
        let (c2, o2) = run_cli(args)?;
        ensure!(c1 == 0 && c2 == 0, "{args:?}: exit codes {c1}, {c2}");
        ensure!(o1 == o2, "{args:?}: reports differ");
        let v: serde_json::Value = serde_json::from_slice(&o1).map_err(err)?;
        ensure!(v["schema"] == 1 && v["seed"] == 7, "{args:?}: schema or seed missing");
    }
    let parallel = fixture("parallel_edges.json");
    let not_pd = fixture("fan_not_pd.json");
    let cases: [(Vec<&str>, i32); 4] = [
        (vec!["polygon", "signature", square.to_str().unwrap()], 0),
        (vec!["polygon", "signature", parallel.to_str().unwrap()], 2),
        (vec!["fuchsian", "check-pd", not_pd.to_str().unwrap()], 3),
        (vec!["polygon", "signature", "--no-such-flag", square.to_str().unwrap()], 64),
    ];
    for (args, expected) in &cases {
        let (code, _) = run_cli(args)?;
        ensure!(code == *expected, "{args:?}: exit {code}, expected {expected}");
    }
    Ok("3 commands byte-identical across runs; exit codes 0, 2, 3, 64".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        ("polygon signatures", criterion_1),
        ("Minkowski inequality", criterion_2),
        ("mixed-area oracle", criterion_3),
        ("polytope volume and area", criterion_4),
        ("Alexandrov-Fenchel", criterion_5),
        ("spherical-integral area", criterion_6),
        ("Gauss-Bonnet and Gauss image", criterion_7),
        ("flips", criterion_8),
        ("Fuchsian Hessian", criterion_9),
        ("Fuchsian area form", criterion_10),
        ("chart embedding", criterion_11),
        ("CLI determinism and exit codes", criterion_12),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2} s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.2} s]", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
