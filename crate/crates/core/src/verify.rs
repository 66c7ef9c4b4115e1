//! Certificates that a scene tiles its target box exactly.
//!
//! [`verify_tiling`] checks containment, pairwise interior disjointness and
//! volume equality; together these imply an exact cover. [`lattice_cover_check`]
//! is a brute-force rasterization that counts how often each cell is covered.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::builder::Scene;
use crate::error::{Error, Result};
use crate::numeric::{common_denominator, Cuboid, Rational};

/// Cell count above which the lattice oracle refuses to run.
pub const MAX_LATTICE_CELLS: u64 = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ViolationKind {
    /// Brick reaches outside the target.
    OutsideTarget,
    /// Two bricks share interior points.
    Overlap,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub kind: ViolationKind,
    /// 0-based positions in the scene's brick list.
    pub bricks: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingReport {
    pub contained: bool,
    pub disjoint: bool,
    pub volume_ok: bool,
    pub brick_volume_sum: Rational,
    pub target_volume: Rational,
    pub violations: Vec<Violation>,
}

impl TilingReport {
    pub fn is_exact_tiling(&self) -> bool {
        self.contained && self.disjoint && self.volume_ok
    }

    /// One `key=value` per line.
    pub fn to_lines(&self) -> String {
        let mut out = format!(
            "exact={}\ncontained={}\ndisjoint={}\nvolume_ok={}\nbrick_volume_sum={}\ntarget_volume={}\nviolations={}\n",
            self.is_exact_tiling(),
            self.contained,
            self.disjoint,
            self.volume_ok,
            self.brick_volume_sum.to_canonical_string(),
            self.target_volume.to_canonical_string(),
            self.violations.len(),
        );
        for v in &self.violations {
            let ids: Vec<String> = v.bricks.iter().map(|b| b.to_string()).collect();
            out.push_str(&format!("violation={:?}:{}\n", v.kind, ids.join(",")));
        }
        out
    }
}

impl fmt::Display for TilingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |ok: bool| if ok { "ok" } else { "FAILED" };
        writeln!(
            f,
            "{}",
            if self.is_exact_tiling() { "exact tiling" } else { "not an exact tiling" }
        )?;
        writeln!(f, "  containment: {}", mark(self.contained))?;
        writeln!(f, "  disjointness: {}", mark(self.disjoint))?;
        writeln!(
            f,
            "  volume: {} (bricks {}, target {})",
            mark(self.volume_ok),
            self.brick_volume_sum,
            self.target_volume
        )?;
        for v in &self.violations {
            writeln!(f, "  {:?}: bricks {:?}", v.kind, v.bricks)?;
        }
        Ok(())
    }
}

fn check_dimensions(scene: &Scene) -> Result<()> {
    let m = scene.target.dim();
    match scene.bricks.iter().find(|b| b.cuboid.dim() != m) {
        Some(b) => Err(Error::DimensionMismatch { expected: m, found: b.cuboid.dim() }),
        None => Ok(()),
    }
}

pub fn verify_tiling(scene: &Scene) -> Result<TilingReport> {
    check_dimensions(scene)?;
    let mut violations = Vec::new();

    for (i, brick) in scene.bricks.iter().enumerate() {
        let degenerate = brick.cuboid.extent.iter().any(|e| !e.is_positive());
        if degenerate || !scene.target.contains(&brick.cuboid)? {
            violations.push(Violation { kind: ViolationKind::OutsideTarget, bricks: vec![i] });
        }
    }
    let contained = violations.is_empty();

    for (i, a) in scene.bricks.iter().enumerate() {
        for (j, b) in scene.bricks.iter().enumerate().skip(i + 1) {
            if !a.cuboid.interior_disjoint(&b.cuboid)? {
                violations.push(Violation { kind: ViolationKind::Overlap, bricks: vec![i, j] });
            }
        }
    }
    let disjoint = !violations.iter().any(|v| v.kind == ViolationKind::Overlap);

    let brick_volume_sum = scene.brick_volume();
    let target_volume = scene.target.volume();
    Ok(TilingReport {
        contained,
        disjoint,
        volume_ok: brick_volume_sum == target_volume,
        brick_volume_sum,
        target_volume,
        violations,
    })
}

/// Smallest resolution at which every brick and target coordinate falls on
/// the lattice.
pub fn lattice_resolution(scene: &Scene) -> BigInt {
    let boxes = std::iter::once(&scene.target).chain(scene.bricks.iter().map(|b| &b.cuboid));
    common_denominator(boxes.flat_map(|c| c.origin.iter().chain(&c.extent)))
}

/// Rasterizes the target into cells of side `1/resolution` and checks that
/// every cell is covered by exactly one brick and no brick leaves the target.
pub fn lattice_cover_check(scene: &Scene, resolution: u64) -> Result<bool> {
    check_dimensions(scene)?;
    if resolution == 0 {
        return Err(Error::InvalidInput("resolution must be positive".into()));
    }
    let scale = Rational::integer(resolution);
    let to_cells = |value: &Rational| -> Result<BigInt> {
        let scaled = value * &scale;
        if scaled.is_integer() {
            Ok(scaled.numer().clone())
        } else {
            Err(Error::InvalidInput(format!(
                "resolution {resolution} is not a common denominator (coordinate {value})"
            )))
        }
    };
    let bounds = |cuboid: &Cuboid| -> Result<Vec<(BigInt, BigInt)>> {
        cuboid
            .origin
            .iter()
            .zip(cuboid.upper())
            .map(|(lo, hi)| Ok((to_cells(lo)?, to_cells(&hi)?)))
            .collect()
    };

    let target = bounds(&scene.target)?;
    let mut sizes = Vec::with_capacity(target.len());
    let mut cells: u64 = 1;
    for (lo, hi) in &target {
        let size = (hi - lo).to_u64().filter(|&s| s > 0).ok_or_else(|| {
            Error::InvalidInput("target has a non-positive or oversized extent".into())
        })?;
        cells = cells
            .checked_mul(size)
            .filter(|&c| c <= MAX_LATTICE_CELLS)
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "lattice would exceed {MAX_LATTICE_CELLS} cells at resolution {resolution}"
                ))
            })?;
        sizes.push(size as usize);
    }

    let mut counts = vec![0u32; cells as usize];
    for brick in &scene.bricks {
        let mut ranges = Vec::with_capacity(sizes.len());
        for ((lo, hi), (t_lo, _)) in bounds(&brick.cuboid)?.into_iter().zip(&target) {
            let (lo, hi) = (lo - t_lo, hi - t_lo);
            if lo.is_negative() || hi <= lo {
                return Ok(false);
            }
            let (lo, hi) = (lo.to_usize(), hi.to_usize());
            match (lo, hi) {
                (Some(lo), Some(hi)) => ranges.push((lo, hi)),
                _ => return Ok(false),
            }
        }
        if ranges.iter().zip(&sizes).any(|(&(_, hi), &size)| hi > size) {
            return Ok(false);
        }
        // Odometer over the brick's cells; axis 0 varies fastest.
        let mut cursor: Vec<usize> = ranges.iter().map(|&(lo, _)| lo).collect();
        'cells: loop {
            let mut flat = 0usize;
            for k in (0..sizes.len()).rev() {
                flat = flat * sizes[k] + cursor[k];
            }
            counts[flat] += 1;
            for k in 0..cursor.len() {
                cursor[k] += 1;
                if cursor[k] < ranges[k].1 {
                    continue 'cells;
                }
                cursor[k] = ranges[k].0;
            }
            break;
        }
    }
    Ok(counts.iter().all(|&c| c == 1))
}

/// Runs the lattice oracle at [`lattice_resolution`].
pub fn lattice_cover_check_auto(scene: &Scene) -> Result<bool> {
    let resolution = lattice_resolution(scene);
    let resolution = resolution
        .to_u64()
        .filter(|_| resolution >= BigInt::one())
        .ok_or_else(|| Error::InvalidInput("lattice resolution too large".into()))?;
    lattice_cover_check(scene, resolution)
}
