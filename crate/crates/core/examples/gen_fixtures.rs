//! Writes the JSON inputs under `fixtures/`. Quotient fan angles come from
//! the regular octagon group of genus 2: class centers are placed inside the
//! octagon, faces are the Voronoi-type cells of the tangent planes, and `φ`,
//! `ω` are read off the clipped face polygons.
//!
//! Run with `cargo run -p mixedform --example gen_fixtures`.

use std::f64::consts::PI;
use std::path::Path;

use mixedform::fixtures;
use mixedform::fuchsian::{Adjacency, QuotientFace, QuotientFanInput};
use mixedform::polytope;
use mixedform::surface::MeshInput;
use serde_json::{json, Value};

fn write(dir: &Path, name: &str, value: &Value) {
    let text = serde_json::to_string_pretty(value).expect("finite values") + "\n";
    std::fs::write(dir.join(name), text).expect("write fixture");
    println!("wrote {name}");
}

fn with_source<T: serde::Serialize>(value: &T, source: &str) -> Value {
    let mut v = serde_json::to_value(value).expect("serializable");
    v.as_object_mut().expect("object").insert("source".into(), json!(source));
    v
}

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    std::fs::create_dir_all(&dir).expect("fixture directory");

    write(
        &dir,
        "square.json",
        &json!({ "normals_deg": [0.0, 90.0, 180.0, 270.0], "h": [0.5, 0.5, 0.5, 0.5], "k": [1.0, 0.5, 1.0, 0.5] }),
    );
    write(
        &dir,
        "hexagon.json",
        &json!({ "normals_deg": [0.0, 60.0, 120.0, 180.0, 240.0, 300.0], "h": [1.0, 1.2, 0.9, 1.1, 1.0, 0.8] }),
    );
    write(
        &dir,
        "parallel_edges.json",
        &json!({ "normals_deg": [0.0, 180.0, 270.0], "h": [1.0, 1.0, 1.0] }),
    );

    let cube = fixtures::cube_normals();
    write(
        &dir,
        "cube.json",
        &json!({ "normals": cube, "h": vec![0.5; 6], "k": [0.5, 0.5, 1.0, 1.0, 2.0, 2.0] }),
    );
    let mut seven = cube.clone();
    seven.push([1.0 / 3f64.sqrt(); 3]);
    write(&dir, "cube_redundant.json", &json!({ "normals": seven, "h": [0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 10.0] }));
    write(&dir, "octahedron.json", &json!({ "normals": fixtures::octahedron_normals(), "h": vec![1.0; 8] }));
    let half = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [-1.0, 0.0, 0.0], [0.0, -1.0, 0.0]];
    write(&dir, "unbounded.json", &json!({ "normals": half, "h": vec![1.0; 5] }));
    let mut rng = fixtures::rng(11);
    let (fan, h) = fixtures::random_simple_polytope(10, 0.2, &mut rng);
    write(
        &dir,
        "random_polytope.json",
        &json!({ "normals": fan.normals(), "h": h, "source": "random simple polytope, seed 11" }),
    );
    let _ = polytope::boundary_area_form(&fan).expect("well-formed");

    write(&dir, "cube_mesh.json", &serde_json::to_value(MeshInput::from(&fixtures::cube_mesh())).unwrap());
    write(
        &dir,
        "octagon_mesh.json",
        &serde_json::to_value(MeshInput::from(&fixtures::octagon_genus2_mesh())).unwrap(),
    );
    write(
        &dir,
        "bad_mesh.json",
        &json!({ "triangles": [{ "lengths": [1.0, 1.0, 3.0] }, { "lengths": [1.0, 1.0, 3.0] }],
                 "gluing": [[0, 0, 1, 0], [0, 1, 1, 2], [0, 2, 1, 1]] }),
    );

    write(
        &dir,
        "fan_g2.json",
        &with_source(
            &fixtures::genus2_single_class(),
            "derived: regular octagon of genus 2 with angles pi/4, cosh(phi/2) = cot(pi/8), omega = pi/4",
        ),
    );
    let mut rng = fixtures::rng(5);
    let generated = fixtures::random_quotient_fan(3, &mut rng).expect("quotient fan");
    let mut multi = generated.input.clone();
    multi.k = Some(vec![1.02, 0.99, 1.01]);
    write(
        &dir,
        "fan_g2_multi.json",
        &with_source(&multi, "derived: three class centers inside the genus-2 octagon, seed 5"),
    );

    let adjacencies = (0..8)
        .map(|i| Adjacency { to: 0, phi: if i % 2 == 0 { 6.0 } else { 0.2 }, omega: PI / 4.0 })
        .collect();
    let bad = QuotientFanInput { genus: 2, faces: vec![QuotientFace { adjacencies }], h: None, k: None, vertices: None };
    write(
        &dir,
        "fan_not_pd.json",
        &with_source(&bad, "locally consistent data that no polyhedron realizes; its face has negative area"),
    );
}
