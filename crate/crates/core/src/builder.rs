//! Geometric construction: tile the box of `p` with the bricks of the basis.
//!
//! The sweep walks the subtree below a start node. A node at relative level
//! `l` owns axis `m - l + 1` and sets the edge along it to `(x_h + r) / l`.
//! Children are visited left first, each repeated `phi` times, and the
//! cursor is advanced along the node's axis after its children are done.
//! Leaves emit one brick each and advance along axis 1.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numeric::{Brick, Cuboid, Rational};
use crate::tree::{LabeledTree, ProblemSpec};

/// Where the sweep starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StartRequest {
    Root,
    /// The root for `n <= 3`, otherwise the unique non-empty branch down to
    /// depth 3 if there is one.
    Auto,
    Index(usize),
}

impl FromStr for StartRequest {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match text {
            "root" => Ok(StartRequest::Root),
            "auto" => Ok(StartRequest::Auto),
            other => other
                .parse()
                .map(StartRequest::Index)
                .map_err(|_| Error::InvalidInput(format!("start must be auto, root or a node index, got {other:?}"))),
        }
    }
}

/// Depth that can still be displayed as a 3D model.
const DISPLAY_DEPTH: usize = 3;

/// `live[i - 1]` is true when node `i` has nonzero multiplicity and some path
/// below it reaches a leaf through nonzero multiplicities only.
fn liveness(tree: &LabeledTree) -> Vec<bool> {
    let mut live = vec![false; tree.len()];
    for index in (1..=tree.len()).rev() {
        let node = tree.node(index).expect("index in range");
        live[index - 1] = node.phi != 0
            && match (node.left, node.right) {
                (Some(l), Some(r)) => live[l - 1] || live[r - 1],
                _ => true,
            };
    }
    live
}

pub fn choose_start(tree: &LabeledTree, requested: StartRequest) -> Result<usize> {
    let live = liveness(tree);
    let n = tree.n();
    match requested {
        StartRequest::Root => Ok(1),
        StartRequest::Index(index) => {
            let node = tree.node(index)?;
            if node.is_leaf() {
                return Err(Error::InvalidStart {
                    node: index,
                    reason: "a leaf leaves nothing to build".into(),
                });
            }
            if !live[index - 1] {
                return Err(Error::InvalidStart {
                    node: index,
                    reason: "its subtree is empty (zero multiplicity on every path)".into(),
                });
            }
            let mut current = index;
            while current > 1 {
                let sibling = current ^ 1;
                if live[sibling - 1] {
                    return Err(Error::InvalidStart {
                        node: index,
                        reason: format!(
                            "sibling subtree at node {sibling} has nonzero multiplicity, so the construction cannot be projected"
                        ),
                    });
                }
                current /= 2;
            }
            Ok(index)
        }
        StartRequest::Auto => {
            let mut current = 1;
            loop {
                let node = tree.node(current)?;
                if n - node.height <= DISPLAY_DEPTH {
                    break;
                }
                let (l, r) = (2 * current, 2 * current + 1);
                current = match (live[l - 1], live[r - 1]) {
                    (true, false) => l,
                    (false, true) => r,
                    (true, true) => {
                        return Err(Error::NotProjectable(format!(
                            "both children of node {current} carry bricks; depth {} exceeds {DISPLAY_DEPTH}",
                            n - node.height
                        )))
                    }
                    (false, false) => {
                        return Err(Error::NotProjectable(format!(
                            "node {current} has no non-empty child"
                        )))
                    }
                };
            }
            check_multiplicities(tree, current)?;
            Ok(current)
        }
    }
}

/// Fails on the first negative multiplicity met on a path whose
/// multiplicities are otherwise positive.
pub fn check_multiplicities(tree: &LabeledTree, start: usize) -> Result<()> {
    walk_reachable(tree, start, &mut |_, _| Ok(()))
}

/// Depth-first over every node the sweep would visit below `start`, left
/// first, calling `visit(index, level)` on each.
fn walk_reachable(
    tree: &LabeledTree,
    start: usize,
    visit: &mut dyn FnMut(usize, usize) -> Result<()>,
) -> Result<()> {
    let base = tree.node(start)?.height;
    let mut stack = vec![start];
    while let Some(index) = stack.pop() {
        let node = tree.node(index)?;
        if node.is_leaf() {
            continue;
        }
        for child in [2 * index, 2 * index + 1] {
            let c = tree.node(child)?;
            if c.phi < 0 {
                return Err(Error::NegativeMultiplicity { node: child, phi: c.phi });
            }
            if c.phi > 0 {
                visit(child, c.height - base)?;
            }
        }
        for child in [2 * index + 1, 2 * index] {
            if tree.node(child)?.phi > 0 {
                stack.push(child);
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scene {
    pub spec: ProblemSpec,
    /// 1-based index of the node the sweep started from.
    pub start: usize,
    /// Build dimension, `n - height(start)`.
    pub m: usize,
    pub target: Cuboid,
    /// In emission order.
    pub bricks: Vec<Brick>,
    pub palette_seed: u64,
}

impl Scene {
    pub fn brick_volume(&self) -> Rational {
        self.bricks.iter().map(|b| b.cuboid.volume()).sum()
    }
}

/// Runs the sweep from `start` with edge parameters `x`.
pub fn build(tree: &LabeledTree, x: &[Rational], start: usize) -> Result<Scene> {
    let spec = ProblemSpec::new(tree.roots().to_vec(), x.to_vec())?;
    let base = tree.node(start)?.height;
    let m = tree.n() - base;
    if m == 0 {
        return Err(Error::InvalidStart {
            node: start,
            reason: "a leaf leaves nothing to build".into(),
        });
    }

    walk_reachable(tree, start, &mut |index, level| {
        let value = tree.factor_value(index, x, Some(level as u64))?;
        if value.is_positive() {
            Ok(())
        } else {
            let height = tree.node(index)?.height;
            Err(Error::NonPositiveExtent { node: index, height, value })
        }
    })?;

    let mut sweep = Sweep {
        tree,
        x,
        base,
        m,
        origin: vec![Rational::zero(); m],
        extent: vec![Rational::zero(); m],
        bricks: Vec::new(),
    };
    sweep.visit(start, 0)?;

    let target_extent = (1..=m)
        .map(|axis| {
            let level = m - axis + 1;
            let j = base + level;
            let edge = &x[j - 1] + &Rational::integer(spec.s[j - 1]);
            edge * Rational::integer(j as i64) / Rational::integer(level as i64)
        })
        .collect();

    Ok(Scene {
        spec,
        start,
        m,
        target: Cuboid::new(vec![Rational::zero(); m], target_extent)?,
        bricks: sweep.bricks,
        palette_seed: 0,
    })
}

/// `choose_start` followed by `build`.
pub fn build_from(tree: &LabeledTree, x: &[Rational], requested: StartRequest) -> Result<Scene> {
    let start = choose_start(tree, requested)?;
    build(tree, x, start)
}

struct Sweep<'a> {
    tree: &'a LabeledTree,
    x: &'a [Rational],
    base: usize,
    m: usize,
    origin: Vec<Rational>,
    extent: Vec<Rational>,
    bricks: Vec<Brick>,
}

impl Sweep<'_> {
    fn visit(&mut self, index: usize, rep: usize) -> Result<()> {
        let node = *self.tree.node(index)?;
        let level = node.height - self.base;
        if level == 0 {
            return self.visit_children(index);
        }
        let axis = self.m - level;
        self.extent[axis] = self.tree.factor_value(index, self.x, Some(level as u64))?;
        if level == self.m {
            self.bricks.push(Brick {
                cuboid: Cuboid::new(self.origin.clone(), self.extent.clone())?,
                leaf: index,
                rep,
            });
        } else {
            self.visit_children(index)?;
            for coordinate in &mut self.origin[..axis] {
                *coordinate = Rational::zero();
            }
        }
        let step = self.extent[axis].clone();
        self.origin[axis] += &step;
        Ok(())
    }

    fn visit_children(&mut self, index: usize) -> Result<()> {
        for child in [2 * index, 2 * index + 1] {
            let phi = self.tree.node(child)?.phi;
            for rep in 1..=phi.max(0) as usize {
                self.visit(child, rep)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Color {
    White,
    Blue,
    Yellow,
    Pink,
    Green,
    Red,
    Cyan,
    Magenta,
}

impl Color {
    pub const PALETTE: [Color; 8] = [
        Color::White,
        Color::Blue,
        Color::Yellow,
        Color::Pink,
        Color::Green,
        Color::Red,
        Color::Cyan,
        Color::Magenta,
    ];

    pub fn rgb(self) -> [u8; 3] {
        match self {
            Color::White => [255, 255, 255],
            Color::Blue => [0, 0, 255],
            Color::Yellow => [255, 255, 0],
            Color::Pink => [255, 128, 128],
            Color::Green => [0, 255, 0],
            Color::Red => [255, 0, 0],
            Color::Cyan => [0, 255, 255],
            Color::Magenta => [255, 0, 255],
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Color of the brick emitted at position `index`.
pub fn color_for(palette_seed: u64, index: usize) -> Color {
    let slot = (palette_seed % 8 + (index % 8) as u64) % 8;
    Color::PALETTE[slot as usize]
}

pub fn assign_colors(scene: &Scene) -> Vec<Color> {
    (0..scene.bricks.len())
        .map(|i| color_for(scene.palette_seed, i))
        .collect()
}
