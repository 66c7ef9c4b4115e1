//! Scene documents and mesh export.
//!
//! A scene document is pretty-printed JSON with a fixed field order.
//! Rationals are written as lowest-terms `"p/q"` strings, so a parse followed
//! by a serialize reproduces the input byte for byte.

use serde::{Deserialize, Serialize};

use crate::builder::{color_for, Scene};
use crate::error::{Error, Result};
use crate::numeric::{Brick, Cuboid, Rational};
use crate::tree::ProblemSpec;

pub const SCENE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoxDoc {
    origin: Vec<String>,
    extent: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BrickDoc {
    leaf: usize,
    rep: usize,
    origin: Vec<String>,
    extent: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SceneDocument {
    version: u32,
    n: usize,
    m: usize,
    s: Vec<i64>,
    x: Vec<String>,
    start: usize,
    target: BoxDoc,
    bricks: Vec<BrickDoc>,
    palette_seed: u64,
}

fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(Rational::to_canonical_string).collect()
}

fn rationals(values: &[String], field: &str) -> Result<Vec<Rational>> {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            Rational::parse_canonical(v).map_err(|e| Error::Parse(format!("{field}[{i}]: {e}")))
        })
        .collect()
}

pub fn export_scene(scene: &Scene) -> String {
    let doc = SceneDocument {
        version: SCENE_VERSION,
        n: scene.spec.n(),
        m: scene.m,
        s: scene.spec.s.clone(),
        x: strings(&scene.spec.x),
        start: scene.start,
        target: BoxDoc {
            origin: strings(&scene.target.origin),
            extent: strings(&scene.target.extent),
        },
        bricks: scene
            .bricks
            .iter()
            .map(|b| BrickDoc {
                leaf: b.leaf,
                rep: b.rep,
                origin: strings(&b.cuboid.origin),
                extent: strings(&b.cuboid.extent),
            })
            .collect(),
        palette_seed: scene.palette_seed,
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("scene document serializes");
    text.push('\n');
    text
}

pub fn import_scene(text: &str) -> Result<Scene> {
    let doc: SceneDocument =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("scene document: {e}")))?;
    if doc.version != SCENE_VERSION {
        return Err(Error::Parse(format!(
            "version: unsupported scene version {} (expected {SCENE_VERSION})",
            doc.version
        )));
    }
    if doc.s.len() != doc.n {
        return Err(Error::Parse(format!("s: expected {} roots, found {}", doc.n, doc.s.len())));
    }
    if doc.x.len() != doc.n {
        return Err(Error::Parse(format!("x: expected {} values, found {}", doc.n, doc.x.len())));
    }
    if doc.m == 0 || doc.m > doc.n {
        return Err(Error::Parse(format!("m: must lie in 1..={}, found {}", doc.n, doc.m)));
    }
    if doc.start == 0 || doc.start >= 1usize << doc.n.min(63) {
        return Err(Error::Parse(format!("start: {} is not an internal node index", doc.start)));
    }
    let start_height = usize::BITS as usize - 1 - doc.start.leading_zeros() as usize;
    if doc.n - start_height != doc.m {
        return Err(Error::Parse(format!(
            "m: start node {} at height {start_height} implies m = {}, found {}",
            doc.start,
            doc.n - start_height,
            doc.m
        )));
    }
    let spec = ProblemSpec::new(doc.s, rationals(&doc.x, "x")?)
        .map_err(|e| Error::Parse(format!("s/x: {e}")))?;

    let cuboid = |origin: &[String], extent: &[String], field: &str| -> Result<Cuboid> {
        let origin = rationals(origin, &format!("{field}.origin"))?;
        let extent = rationals(extent, &format!("{field}.extent"))?;
        if origin.len() != doc.m || extent.len() != doc.m {
            return Err(Error::Parse(format!(
                "{field}: expected {} coordinates, found origin {} / extent {}",
                doc.m,
                origin.len(),
                extent.len()
            )));
        }
        if let Some(k) = extent.iter().position(|e| !e.is_positive()) {
            return Err(Error::Parse(format!("{field}.extent[{k}]: must be positive")));
        }
        Ok(Cuboid { origin, extent })
    };

    let target = cuboid(&doc.target.origin, &doc.target.extent, "target")?;
    let bricks = doc
        .bricks
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let field = format!("bricks[{i}]");
            if b.leaf == 0 || b.rep == 0 {
                return Err(Error::Parse(format!("{field}: leaf and rep must be positive")));
            }
            Ok(Brick { cuboid: cuboid(&b.origin, &b.extent, &field)?, leaf: b.leaf, rep: b.rep })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(Scene {
        spec,
        start: doc.start,
        m: doc.m,
        target,
        bricks,
        palette_seed: doc.palette_seed,
    })
}

/// Coordinate text for the mesh: exact when the decimal terminates, 17
/// significant digits otherwise.
pub fn mesh_number(value: &Rational) -> String {
    value
        .to_exact_decimal()
        .unwrap_or_else(|| value.to_significant_decimal(17))
}

/// OFF mesh with 8 vertices and 6 colored quads per brick. Scenes with fewer
/// than three axes are padded with unit thickness.
pub fn export_off(scene: &Scene) -> Result<String> {
    if scene.m > 3 {
        return Err(Error::InvalidInput(format!(
            "mesh export supports at most 3 axes, scene has {}",
            scene.m
        )));
    }
    let pad = |values: &[Rational], fill: Rational| -> Vec<Rational> {
        let mut v = values.to_vec();
        v.resize(3, fill);
        v
    };
    let mut out = format!("OFF\n{} {} 0\n", 8 * scene.bricks.len(), 6 * scene.bricks.len());
    for brick in &scene.bricks {
        let lo = pad(&brick.cuboid.origin, Rational::zero());
        let hi: Vec<Rational> = lo
            .iter()
            .zip(pad(&brick.cuboid.extent, Rational::one()))
            .map(|(o, e)| o + &e)
            .collect();
        // Vertex v has bit k set when it sits on the upper face of axis k.
        for v in 0..8 {
            let corner: Vec<String> = (0..3)
                .map(|k| mesh_number(if v >> k & 1 == 1 { &hi[k] } else { &lo[k] }))
                .collect();
            out.push_str(&corner.join(" "));
            out.push('\n');
        }
    }
    const FACES: [[usize; 4]; 6] = [
        [0, 2, 3, 1],
        [4, 5, 7, 6],
        [0, 1, 5, 4],
        [2, 6, 7, 3],
        [0, 4, 6, 2],
        [1, 3, 7, 5],
    ];
    for (i, _) in scene.bricks.iter().enumerate() {
        let [r, g, b] = color_for(scene.palette_seed, i).rgb();
        for face in FACES {
            let ids: Vec<String> = face.iter().map(|v| (8 * i + v).to_string()).collect();
            out.push_str(&format!("4 {} {r} {g} {b}\n", ids.join(" ")));
        }
    }
    Ok(out)
}
