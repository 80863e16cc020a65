use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use super::{Options, Outcome};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::forms::{abc_lemma_residuals, DEFAULT_ZERO_THRESHOLD};
use crate::fuchsian::{self, QuotientFanInput};
use crate::linalg::norm;
use crate::polygon::{self, InequalityTolerances, PolygonInput};
use crate::polytope::{self, FanSummary, PolytopeInput, MAX_DEPTH};
use crate::surface::{self, MeshInput};

pub(super) type Handler = fn(&[u8], &Options) -> Result<Outcome>;

const DEFAULT_DEPTH: u32 = 6;
const AREA_AGREEMENT: f64 = 1e-12;
const SHOELACE_AGREEMENT: f64 = 1e-11;
const IDENTITY_TOLERANCE: f64 = 1e-10;
const ABC_TOLERANCE: f64 = 1e-9;
const CURVATURE_TOLERANCE: f64 = 1e-9;
const HESSIAN_SAMPLE_SPREAD: f64 = 0.05;

fn parse<T: DeserializeOwned>(bytes: &[u8]) -> Result<T> {
    Ok(serde_json::from_slice(bytes)?)
}

fn inequality_tolerances(opts: &Options) -> InequalityTolerances {
    let mut t = InequalityTolerances::default();
    if let Some(v) = opts.tol {
        t.inequality = v;
    }
    t
}

fn add_inequality_tolerances(o: Outcome, t: &InequalityTolerances) -> Outcome {
    o.tol("inequality", t.inequality).tol("equality", t.equality).tol("witness", t.witness)
}

fn rel_diff(a: f64, b: f64) -> f64 {
    let s = a.abs().max(b.abs());
    if s == 0.0 { 0.0 } else { (a - b).abs() / s }
}

fn fmt_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
    format!("[{}]", parts.join(", "))
}

fn polygon_fan(bytes: &[u8]) -> Result<(PolygonInput, polygon::NormalFan2D)> {
    let input: PolygonInput = parse(bytes)?;
    let fan = input.fan()?;
    if input.h.len() != fan.len() {
        return Err(Error::InvalidInput(format!("{} normals but {} support numbers", fan.len(), input.h.len())));
    }
    Ok((input, fan))
}

pub(super) fn polygon_area_form(bytes: &[u8], _opts: &Options) -> Result<Outcome> {
    let (input, fan) = polygon_fan(bytes)?;
    let form = polygon::area_form(&fan)?;
    let h = &input.h;
    let lengths = polygon::edge_lengths(&fan, h)?;
    let membership = polygon::cone_membership(&fan, h)?;
    let area = form.eval(h);
    let mut out = Outcome::default()
        .line(format!("n = {}, area q(h) = {area:.12}", fan.len()))
        .line(format!("edge lengths {}", fmt_vec(&lengths)))
        .tol("cone", polygon::CONE_TOLERANCE);
    let mut vertex_area = Value::Null;
    if membership.is_closed_member() {
        let v = polygon::vertices(&fan, h)?;
        let n = v.len();
        let shoelace: f64 = (0..n).map(|i| v[i][0] * v[(i + 1) % n][1] - v[(i + 1) % n][0] * v[i][1]).sum::<f64>() / 2.0;
        out = out
            .line(format!("vertex shoelace area {shoelace:.12}"))
            .tol("shoelace_agreement", SHOELACE_AGREEMENT)
            .falsify_if(
                rel_diff(shoelace, area) > SHOELACE_AGREEMENT,
                format!("shoelace area {shoelace} differs from q(h) = {area}"),
            );
        vertex_area = json!(shoelace);
    }
    out.results = json!({
        "n": fan.len(),
        "form": form,
        "area": area,
        "edge_lengths": lengths,
        "interior": membership.is_interior(),
        "closed_member": membership.is_closed_member(),
        "vertex_area": vertex_area,
    });
    Ok(out)
}

pub(super) fn polygon_signature(bytes: &[u8], opts: &Options) -> Result<Outcome> {
    let (_, fan) = polygon_fan(bytes)?;
    let zero = opts.tol.unwrap_or(DEFAULT_ZERO_THRESHOLD);
    let form = polygon::area_form(&fan)?;
    let sig = form.signature(zero)?;
    let n = fan.len();
    let expected = (1, 2, n - 3);
    let o = Outcome {
        results: json!({
            "n": n,
            "signature": [sig.positive, sig.zero, sig.negative],
            "expected": [expected.0, expected.1, expected.2],
            "eigenvalues": form.eigenvalues()?,
        }),
        ..Outcome::default()
    };
    Ok(o.line(format!("signature {sig} (expected ({}, {}, {}))", expected.0, expected.1, expected.2))
        .tol("zero_threshold", zero)
        .falsify_if(sig.as_tuple() != expected, format!("area form signature {sig} is not (1, 2, {})", n - 3)))
}

pub(super) fn polygon_minkowski(bytes: &[u8], opts: &Options) -> Result<Outcome> {
    let (input, fan) = polygon_fan(bytes)?;
    let tol = inequality_tolerances(opts);
    let samples = opts.samples.unwrap_or(0);
    if input.k.is_none() && samples == 0 {
        return Err(Error::InvalidInput("polygon minkowski needs \"k\" in the input or --samples".into()));
    }
    let mut out = Outcome::default();
    let mut pair = Value::Null;
    if let Some(k) = &input.k {
        let report = polygon::minkowski_check_with(&fan, &input.h, k, tol)?;
        let distance = polygon::hyperbolic_distance(&fan, &input.h, k).ok();
        out = out
            .line(format!(
                "b(h,k) = {:.12}, q(h) = {:.12}, q(k) = {:.12}, residual = {:.6e}",
                report.mixed, report.first, report.second, report.residual
            ))
            .falsify_if(!report.holds, format!("Minkowski inequality violated, residual {:.3e}", report.residual));
        if let Some(w) = &report.witness {
            out = out.line(format!("equality: h = h^x + λk with x = {}, λ = {:.9}", fmt_vec(&w.x), w.lambda));
        }
        if let Some(d) = distance {
            out = out.line(format!("hyperbolic distance {d:.12}"));
        }
        pair = json!({ "report": report, "hyperbolic_distance": distance });
    }
    let sampled = if samples > 0 {
        let mut rng = fixtures::rng(opts.seed);
        let mut min_normalized = f64::INFINITY;
        let mut violations = 0usize;
        let rel = (1.2 / fan.len() as f64).min(0.3);
        for _ in 0..samples {
            let h = fixtures::random_polygon_support(&fan, rel, 0.5, &mut rng);
            let k = fixtures::random_polygon_support(&fan, rel, 0.5, &mut rng);
            let r = polygon::minkowski_check_with(&fan, &h, &k, tol)?;
            min_normalized = min_normalized.min(r.normalized());
            violations += usize::from(!r.holds);
        }
        out = out
            .line(format!("{samples} random pairs: {violations} violations, min residual/scale {min_normalized:.6e}"))
            .falsify_if(violations > 0, format!("{violations} of {samples} random pairs violate the Minkowski inequality"));
        json!({ "count": samples, "violations": violations, "min_normalized_residual": min_normalized })
    } else {
        Value::Null
    };
    out.results = json!({ "pair": pair, "samples": sampled });
    Ok(add_inequality_tolerances(out, &tol))
}

pub(super) fn polygon_embed(bytes: &[u8], opts: &Options) -> Result<Outcome> {
    let (input, fan) = polygon_fan(bytes)?;
    let agreement = opts.tol.unwrap_or(AREA_AGREEMENT);
    let emb = polygon::double_chart_embedding(&fan, &input.h)?;
    let q = polygon::area(&fan, &input.h)?;
    let n = fan.len();
    let restricted = emb.hermitian.restrict(&polygon::closure_basis(n))?;
    let sig = restricted.signature(DEFAULT_ZERO_THRESHOLD)?;
    let diff = rel_diff(emb.area, q);
    let z: Vec<[f64; 2]> = emb.z.iter().map(|c| [c.re, c.im]).collect();
    let o = Outcome {
        results: json!({
            "z": z,
            "chart_area": emb.area,
            "double_area": 2.0 * emb.area,
            "area_form_value": q,
            "relative_difference": diff,
            "closure_defect": emb.closure_defect,
            "closure_signature": [sig.positive, sig.zero, sig.negative],
        }),
        ..Outcome::default()
    };
    Ok(o.line(format!("A(z) = {:.12}, q(h) = {q:.12}, double area {:.12}", emb.area, 2.0 * emb.area))
        .line(format!("closure defect {:.3e}", emb.closure_defect))
        .line(format!("Hermitian signature on {{Σz = 0}}: {sig}"))
        .tol("area_agreement", agreement)
        .tol("closure", polygon::CLOSURE_TOLERANCE)
        .tol("zero_threshold", DEFAULT_ZERO_THRESHOLD)
        .falsify_if(diff > agreement, format!("A(z) = {} differs from q(h) = {q}", emb.area)))
}

fn polytope_fan(bytes: &[u8]) -> Result<(PolytopeInput, polytope::PolytopeFan)> {
    let input: PolytopeInput = parse(bytes)?;
    let fan = input.fan()?;
    Ok((input, fan))
}

pub(super) fn polytope_build(bytes: &[u8], _opts: &Options) -> Result<Outcome> {
    let (input, fan) = polytope_fan(bytes)?;
    let summary = FanSummary::from(&fan);
    let positions = polytope::vertex_positions(&fan, &input.h)?;
    let faces: Vec<Value> = fan
        .faces()
        .iter()
        .map(|f| json!({ "neighbors": f.neighbors, "phi": f.phi, "vertices": f.vertices }))
        .collect();
    let cells: Vec<Value> = fan.cells().iter().map(|c| json!({ "faces": c.faces, "area": c.area })).collect();
    let o = Outcome {
        results: json!({
            "summary": summary,
            "vertices": positions,
            "faces": faces,
            "cells": cells,
        }),
        ..Outcome::default()
    };
    Ok(o.line(format!(
        "{} faces, {} edges, {} vertices, simple: {}",
        summary.faces, summary.edges, summary.vertices, summary.simple
    ))
    .line(format!("face degrees {:?}", summary.face_degrees))
    .line(format!("Gauss image area {:.12} (4π = {:.12})", summary.gauss_image_area, 4.0 * std::f64::consts::PI))
    .tol("vertex_clustering", polytope::VERTEX_TOLERANCE)
    .tol("tiling", polytope::TILING_TOLERANCE))
}

pub(super) fn polytope_volume(bytes: &[u8], _opts: &Options) -> Result<Outcome> {
    let (input, fan) = polytope_fan(bytes)?;
    let h = &input.h;
    let volume = polytope::volume(&fan, h)?;
    let areas = polytope::face_areas(&fan, h)?;
    let boundary: f64 = areas.iter().sum();
    let mut out = Outcome::default()
        .line(format!("volume {volume:.12}"))
        .line(format!("boundary area {boundary:.12}"));
    let mut tensor = Value::Null;
    if fan.is_simple() {
        let v = polytope::volume_form(&fan)?;
        let cubic = v.cubic(h);
        let diff = rel_diff(cubic, volume);
        out = out
            .line(format!("v(h,h,h) = {cubic:.12}"))
            .tol("tensor_agreement", IDENTITY_TOLERANCE)
            .falsify_if(diff > IDENTITY_TOLERANCE, format!("v(h,h,h) = {cubic} differs from the volume {volume}"));
        tensor = json!(cubic);
    }
    out.results = json!({
        "volume": volume,
        "face_areas": areas,
        "boundary_area": boundary,
        "tensor_volume": tensor,
    });
    Ok(out)
}

pub(super) fn polytope_area_form(bytes: &[u8], _opts: &Options) -> Result<Outcome> {
    let (input, fan) = polytope_fan(bytes)?;
    let form = polytope::boundary_area_form(&fan)?;
    let q = form.eval(&input.h);
    let direct = polytope::boundary_area(&fan, &input.h)?;
    let o = Outcome {
        results: json!({ "form": form, "area": q, "face_area_sum": direct, "simple": fan.is_simple() }),
        ..Outcome::default()
    };
    Ok(o.line(format!("area q(h) = {q:.12}, Σ face areas = {direct:.12}"))
        .line(if fan.is_simple() { "checked against 3·v(𝟏,·,·)" } else { "non-simple fan: no mixed-volume cross-check" })
        .tol("identity", polytope::FORM_CHECK_TOLERANCE))
}

pub(super) fn polytope_signature(bytes: &[u8], opts: &Options) -> Result<Outcome> {
    let (_, fan) = polytope_fan(bytes)?;
    let zero = opts.tol.unwrap_or(DEFAULT_ZERO_THRESHOLD);
    let form = polytope::boundary_area_form(&fan)?;
    let sig = form.signature(zero)?;
    let m = fan.len();
    let scale = form.max_abs();
    let kernel_defect = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
        .iter()
        .map(|x| norm(&form.apply(&polytope::point_support_vector(&fan, *x))))
        .fold(0.0f64, f64::max)
        / scale;
    let expected = fan.is_simple().then_some((1, 3, m - 4));
    let mut o = Outcome {
        results: json!({
            "m": m,
            "simple": fan.is_simple(),
            "signature": [sig.positive, sig.zero, sig.negative],
            "expected": expected.map(|e| [e.0, e.1, e.2]),
            "eigenvalues": form.eigenvalues()?,
            "translation_kernel_defect": kernel_defect,
        }),
        ..Outcome::default()
    }
    .line(format!("signature {sig}"))
    .line(format!("translation kernel defect {kernel_defect:.3e}"))
    .tol("zero_threshold", zero);
    if let Some(e) = expected {
        o = o.falsify_if(sig.as_tuple() != e, format!("area form signature {sig} is not (1, 3, {})", m - 4));
    }
    Ok(o)
}

pub(super) fn polytope_af_check(bytes: &[u8], opts: &Options) -> Result<Outcome> {
    let (input, fan) = polytope_fan(bytes)?;
    let tol = inequality_tolerances(opts);
    let samples = opts.samples.unwrap_or(0);
    if input.k.is_none() && samples == 0 {
        return Err(Error::InvalidInput("polytope af-check needs \"k\" in the input or --samples".into()));
    }
    let mut out = Outcome::default();
    let mut triple = Value::Null;
    if let Some(k) = &input.k {
        let p = input.p.clone().unwrap_or_else(|| input.h.clone());
        let report = polytope::alexandrov_fenchel_check_with(&fan, &input.h, k, &p, tol)?;
        out = out
            .line(format!(
                "v(h,k,p) = {:.12}, v(h,h,p) = {:.12}, v(k,k,p) = {:.12}, residual = {:.6e}",
                report.mixed, report.first, report.second, report.residual
            ))
            .falsify_if(!report.holds, format!("Alexandrov-Fenchel inequality violated, residual {:.3e}", report.residual));
        if let Some(w) = &report.witness {
            out = out.line(format!("equality: h = h^x + λk with x = {}, λ = {:.9}", fmt_vec(&w.x), w.lambda));
        }
        triple = serde_json::to_value(&report)?;
    }
    let sampled = if samples > 0 {
        let area = polytope::boundary_area_form(&fan)?;
        let mut rng = fixtures::rng(opts.seed);
        let scale = input.h.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        let draw = |rng: &mut _| fixtures::random_polytope_support(&fan, &input.h, 0.3, 0.3 * scale, rng);
        let mut min_normalized = f64::INFINITY;
        let mut violations = 0usize;
        let mut abc_worst = f64::NEG_INFINITY;
        for _ in 0..samples {
            let (h, k, p) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
            let r = polytope::alexandrov_fenchel_check_with(&fan, &h, &k, &p, tol)?;
            min_normalized = min_normalized.min(r.normalized());
            violations += usize::from(!r.holds);
            let abc = abc_lemma_residuals(&area, &h, &k, &p)?;
            let s = (abc.b * abc.b).max((abc.a * abc.c).abs()).max(f64::MIN_POSITIVE);
            abc_worst = abc_worst.max(abc.discriminant() / s);
        }
        out = out
            .line(format!("{samples} random triples: {violations} violations, min residual/scale {min_normalized:.6e}"))
            .line(format!("max (B² − AC)/scale {abc_worst:.3e}"))
            .tol("abc", ABC_TOLERANCE)
            .falsify_if(violations > 0, format!("{violations} of {samples} random triples violate Alexandrov-Fenchel"))
            .falsify_if(abc_worst > ABC_TOLERANCE, format!("B² ≤ AC fails by {abc_worst:.3e}"));
        json!({
            "count": samples,
            "violations": violations,
            "min_normalized_residual": min_normalized,
            "max_normalized_abc_discriminant": abc_worst,
        })
    } else {
        Value::Null
    };
    out.results = json!({ "triple": triple, "samples": sampled });
    Ok(add_inequality_tolerances(out, &tol))
}

pub(super) fn polytope_measure(bytes: &[u8], _opts: &Options) -> Result<Outcome> {
    let (input, fan) = polytope_fan(bytes)?;
    let measure = polytope::first_area_measure(&fan, &input.h)?;
    let total: f64 = measure.arcs.iter().map(|a| a.weight).sum();
    let o = Outcome { results: serde_json::to_value(&measure)?, ..Outcome::default() };
    Ok(o.line(format!("{} arcs, total edge length {total:.12}", measure.arcs.len()))
        .line(format!("Σ ℓ·φ = {:.12}", measure.weighted_length)))
}

pub(super) fn polytope_sphere_area(bytes: &[u8], opts: &Options) -> Result<Outcome> {
    let (input, fan) = polytope_fan(bytes)?;
    let depth = opts.depth.unwrap_or(DEFAULT_DEPTH);
    if depth > MAX_DEPTH {
        return Err(Error::InvalidInput(format!("--depth {depth} exceeds {MAX_DEPTH}")));
    }
    let integral = polytope::area_via_sphere_integral(&fan, &input.h, depth)?;
    let exact = polytope::boundary_area(&fan, &input.h)?;
    let err = (integral.value - exact).abs();
    let o = Outcome {
        results: json!({
            "integral": integral,
            "boundary_area": exact,
            "absolute_error": err,
        }),
        ..Outcome::default()
    };
    let mut o = o
        .line(format!("depth {depth}: ∫ = {:.12} over {} triangles", integral.value, integral.leaves))
        .line(format!("boundary area {exact:.12}, |difference| {err:.3e}"));
    if let Some(t) = opts.tol {
        o = o.tol("agreement", t).falsify_if(err > t, format!("quadrature differs from the area by {err:.3e}"));
    }
    Ok(o)
}

pub(super) fn polytope_boundary_metric(bytes: &[u8], opts: &Options) -> Result<Outcome> {
    let (input, fan) = polytope_fan(bytes)?;
    let tol = opts.tol.unwrap_or(CURVATURE_TOLERANCE);
    let bm = polytope::boundary_metric(&fan, &input.h)?;
    let cones = surface::cone_data(&bm.mesh)?;
    let cells = fan.cells();
    let worst = cones
        .curvatures
        .iter()
        .zip(&bm.polytope_vertex)
        .map(|(k, &v)| (k - cells[v].area).abs())
        .fold(0.0f64, f64::max);
    let in_range = cones.curvatures.iter().all(|k| *k > 0.0 && *k < std::f64::consts::TAU);
    let o = Outcome {
        results: json!({
            "mesh": MeshInput::from(&bm.mesh),
            "polytope_vertex": bm.polytope_vertex,
            "cones": cones,
            "max_curvature_cell_difference": worst,
        }),
        ..Outcome::default()
    };
    Ok(o.line(format!(
        "{} triangles, {} vertices, genus {}",
        bm.mesh.triangle_count(),
        bm.mesh.vertex_count(),
        cones.genus
    ))
    .line(format!("curvatures {}", fmt_vec(&cones.curvatures)))
    .line(format!("max |k − Gauss cell area| {worst:.3e}"))
    .tol("curvature_vs_cell", tol)
    .falsify_if(worst > tol, format!("curvature differs from the Gauss cell area by {worst:.3e}"))
    .falsify_if(!in_range, "a boundary curvature lies outside (0, 2π)")
    .falsify_if(cones.genus != 0, format!("boundary has genus {}", cones.genus)))
}

pub(super) fn surface_check(bytes: &[u8], _opts: &Options) -> Result<Outcome> {
    let input: MeshInput = parse(bytes)?;
    let mesh = input.build()?;
    let cones = surface::cone_data(&mesh)?;
    let chi = mesh.euler_characteristic();
    let area = surface::total_area(&mesh);
    let o = Outcome {
        results: json!({
            "vertices": mesh.vertex_count(),
            "edges": mesh.edge_count(),
            "faces": mesh.triangle_count(),
            "euler_characteristic": chi,
            "area": area,
            "cones": cones,
        }),
        ..Outcome::default()
    };
    Ok(o.line(format!(
        "V = {}, E = {}, F = {}, χ = {chi}, genus {}",
        mesh.vertex_count(),
        mesh.edge_count(),
        mesh.triangle_count(),
        cones.genus
    ))
    .line(format!("Σk = {:.12} (2πχ = {:.12}), defect {:.3e}", cones.total_curvature, std::f64::consts::TAU * chi as f64, cones.defect))
    .line(format!("{} singular vertices, total area {area:.12}", cones.singular_count()))
    .tol("gauss_bonnet", surface::GAUSS_BONNET_LIMIT)
    .tol("singularity", surface::SINGULARITY_THRESHOLD))
}

fn quotient(bytes: &[u8]) -> Result<(QuotientFanInput, fuchsian::QuotientFan)> {
    let input: QuotientFanInput = parse(bytes)?;
    let fan = input.fan()?;
    Ok((input, fan))
}

pub(super) fn fuchsian_hessian(bytes: &[u8], opts: &Options) -> Result<Outcome> {
    let (input, fan) = quotient(bytes)?;
    let h = input.h_or_ones();
    let hess = fuchsian::covolume_hessian(&fan, &h)?;
    let margin = fuchsian::diagonal_dominance_margin(&hess);
    let min = hess.min_eigenvalue()?;
    let mut out = Outcome::default()
        .line(format!("covolume {:.12}", fuchsian::covolume(&fan, &h)?))
        .line(format!("diagonal dominance margin {margin:.6e}, min eigenvalue {min:.6e}"))
        .tol("identity", fuchsian::FORM_CHECK_TOLERANCE)
        .falsify_if(margin <= 0.0, format!("Hessian is not strictly diagonally dominant (margin {margin:.3e})"))
        .falsify_if(min <= 0.0, format!("Hessian is not positive definite (min eigenvalue {min:.3e})"));
    let samples = opts.samples.unwrap_or(0);
    let mut sampled = Value::Null;
    if samples > 0 {
        let mut rng = fixtures::rng(opts.seed);
        let mut worst_margin = f64::INFINITY;
        let mut worst_min = f64::INFINITY;
        let mut used = 0usize;
        for _ in 0..samples {
            let g: Vec<f64> = h
                .iter()
                .map(|x| x * (1.0 + HESSIAN_SAMPLE_SPREAD * rand::Rng::gen_range(&mut rng, -1.0..1.0)))
                .collect();
            if !fuchsian::is_interior(&fan, &g)? {
                continue;
            }
            let hg = fuchsian::covolume_hessian(&fan, &g)?;
            worst_margin = worst_margin.min(fuchsian::diagonal_dominance_margin(&hg));
            worst_min = worst_min.min(hg.min_eigenvalue()?);
            used += 1;
        }
        out = out
            .line(format!("{used} interior samples: min margin {worst_margin:.6e}, min eigenvalue {worst_min:.6e}"))
            .falsify_if(used > 0 && worst_margin <= 0.0, "a sampled Hessian is not diagonally dominant")
            .falsify_if(used > 0 && worst_min <= 0.0, "a sampled Hessian is not positive definite");
        sampled = json!({ "count": used, "min_margin": worst_margin, "min_eigenvalue": worst_min });
    }
    out.results = json!({
        "h": h,
        "hessian": hess,
        "diagonal_dominance_margin": margin,
        "min_eigenvalue": min,
        "samples": sampled,
    });
    Ok(out)
}

pub(super) fn fuchsian_area_form(bytes: &[u8], opts: &Options) -> Result<Outcome> {
    let (input, fan) = quotient(bytes)?;
    let zero = opts.tol.unwrap_or(DEFAULT_ZERO_THRESHOLD);
    let form = fuchsian::boundary_area_form(&fan)?;
    let sig = form.signature(zero)?;
    let h = input.h_or_ones();
    let o = Outcome {
        results: json!({
            "form": form,
            "area": form.eval(&h),
            "signature": [sig.positive, sig.zero, sig.negative],
        }),
        ..Outcome::default()
    };
    Ok(o.line(format!("area q(h) = {:.12}, signature {sig}", form.eval(&h)))
        .tol("zero_threshold", zero)
        .tol("identity", fuchsian::FORM_CHECK_TOLERANCE)
        .falsify_if(sig.positive != fan.len(), format!("area form signature {sig} is not positive definite")))
}

pub(super) fn fuchsian_check_pd(bytes: &[u8], opts: &Options) -> Result<Outcome> {
    let (_, fan) = quotient(bytes)?;
    let threshold = opts.tol.unwrap_or(0.0);
    let form = fuchsian::boundary_area_form(&fan)?;
    let min = form.min_eigenvalue()?;
    let pd = min > threshold * form.max_abs();
    let mut out = Outcome::default()
        .line(format!("min eigenvalue {min:.6e}"))
        .tol("min_eigenvalue", threshold)
        .falsify_if(!pd, format!("area form is not positive definite: minimum eigenvalue {min:.6e}"));
    let samples = opts.samples.unwrap_or(0);
    let mut sampled = Value::Null;
    if pd && samples > 0 {
        let mut rng = fixtures::rng(opts.seed);
        let m = fan.len();
        let mut worst = f64::INFINITY;
        let mut violations = 0usize;
        for _ in 0..samples {
            let h: Vec<f64> = (0..m).map(|_| rand::Rng::gen_range(&mut rng, 0.5..1.5)).collect();
            let k: Vec<f64> = (0..m).map(|_| rand::Rng::gen_range(&mut rng, 0.5..1.5)).collect();
            let r = fuchsian::cauchy_schwarz_check(&fan, &h, &k)?;
            worst = worst.min(r.residual / r.scale);
            violations += usize::from(!r.holds);
        }
        out = out
            .line(format!("{samples} Cauchy-Schwarz pairs: {violations} violations, min residual/scale {worst:.6e}"))
            .tol("cauchy_schwarz", 1e-12)
            .falsify_if(violations > 0, format!("{violations} pairs violate Cauchy-Schwarz"));
        sampled = json!({ "count": samples, "violations": violations, "min_normalized_residual": worst });
    }
    out.results = json!({
        "faces": fan.len(),
        "genus": fan.genus(),
        "min_eigenvalue": min,
        "eigenvalues": form.eigenvalues()?,
        "positive_definite": pd,
        "samples": sampled,
    });
    Ok(out)
}

pub(super) fn fuchsian_distance(bytes: &[u8], _opts: &Options) -> Result<Outcome> {
    let (input, fan) = quotient(bytes)?;
    let h = input.h_or_ones();
    let k = input
        .k
        .clone()
        .ok_or_else(|| Error::InvalidInput("fuchsian distance needs \"k\" in the input".into()))?;
    let d = fuchsian::spherical_distance(&fan, &h, &k)?;
    let cs = fuchsian::cauchy_schwarz_check(&fan, &h, &k)?;
    let o = Outcome { results: json!({ "distance": d, "cauchy_schwarz": cs }), ..Outcome::default() };
    let mut o = o.line(format!("spherical distance {d:.12}")).tol("homothety", fuchsian::HOMOTHETY_TOLERANCE);
    if let Some(l) = cs.homothety {
        o = o.line(format!("k = λh with λ = {l:.12}"));
    }
    Ok(o)
}
