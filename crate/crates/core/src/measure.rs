//! Atomic measures, Carleson boxes, one-box constants, Cantor generators and
//! stacked measures.
//!
//! Two ambients are supported: the open upper half-plane (atoms `x + iy`,
//! `y > 0`) and the open unit disk (atoms `z`, `|z| < 1`). A measure is a
//! finite list of weighted atoms; all box masses are therefore exact sums.
//!
//! Box conventions, fixed once and used by every consumer:
//! * half-plane box over an interval `I = (a, b)`: `a < x < b` and
//!   `0 < y < |I|/2` — all four edges open, in particular the **top edge is
//!   excluded**;
//! * disk box over an arc of width `w`: radius `1 - w/(2pi) <= r < 1`
//!   (**inner radius included**, rim excluded) and angle inside the arc,
//!   taken half-open `[start, start + w)` so that a dyadic family tiles the
//!   circle without double counting.

use crate::error::{Error, Result};
use crate::C64;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt::Write as _;

/// Offset used to embed boundary-supported generator output strictly inside
/// the ambient: Cantor atoms sit at height `1e-12` (half-plane) or radius
/// `1 - 1e-12` (disk). Every box of side larger than `2e-12` contains them,
/// so box scans at practical depths are unaffected, while the strict
/// interior invariants of [`AtomicMeasure`] keep holding.
pub const BOUNDARY_OFFSET: f64 = 1e-12;

/// Which domain a measure or region lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ambient {
    HalfPlane,
    Disk,
}

impl std::fmt::Display for Ambient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Ambient::HalfPlane => write!(f, "halfplane"),
            Ambient::Disk => write!(f, "disk"),
        }
    }
}

/// Open bounded interval `(left, right)` on the real line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub left: f64,
    pub right: f64,
}

impl Interval {
    pub fn new(left: f64, right: f64) -> Result<Self> {
        if !(left.is_finite() && right.is_finite() && left < right) {
            return Err(Error::invalid(format!(
                "interval needs left < right, got ({left}, {right})"
            )));
        }
        Ok(Interval { left, right })
    }

    pub fn length(&self) -> f64 {
        self.right - self.left
    }

    pub fn contains(&self, x: f64) -> bool {
        self.left < x && x < self.right
    }
}

/// Arc on the unit circle: center angle and angular width in `(0, 2*pi]`.
/// The arc length equals the width (unit radius).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub center: f64,
    pub width: f64,
}

impl Arc {
    pub fn new(center: f64, width: f64) -> Result<Self> {
        if !(center.is_finite() && width.is_finite() && width > 0.0 && width <= 2.0 * PI) {
            return Err(Error::invalid(format!(
                "arc width must lie in (0, 2pi], got {width}"
            )));
        }
        Ok(Arc { center, width })
    }

    /// Angular membership, half-open from the arc's start.
    pub fn contains_angle(&self, theta: f64) -> bool {
        let start = self.center - self.width / 2.0;
        let u = (theta - start).rem_euclid(2.0 * PI);
        u < self.width
    }
}

/// Finite union of pairwise disjoint open intervals, kept sorted.
#[derive(Debug, Clone, PartialEq)]
pub struct OpenSetUnion {
    intervals: Vec<Interval>,
}

impl OpenSetUnion {
    pub fn new(mut intervals: Vec<Interval>) -> Result<Self> {
        intervals.sort_by(|a, b| a.left.total_cmp(&b.left));
        for pair in intervals.windows(2) {
            if pair[1].left < pair[0].right {
                return Err(Error::invalid(format!(
                    "intervals overlap: ({}, {}) and ({}, {})",
                    pair[0].left, pair[0].right, pair[1].left, pair[1].right
                )));
            }
        }
        Ok(OpenSetUnion { intervals })
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|i| i.contains(x))
    }

    pub fn total_length(&self) -> f64 {
        self.intervals.iter().map(Interval::length).sum()
    }

    /// Smallest interval length in the union; `None` when empty.
    pub fn min_length(&self) -> Option<f64> {
        self.intervals
            .iter()
            .map(Interval::length)
            .min_by(f64::total_cmp)
    }
}

/// Carleson box with a membership predicate; see the module docs for the
/// edge conventions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Region {
    /// `{x + iy : x in I, 0 < y < |I|/2}` over the half-plane.
    HalfPlaneBox(Interval),
    /// `{r e^{i theta} : theta in I, 1 - |I|/(2 pi) <= r < 1}` over the disk.
    DiskBox(Arc),
}

/// Box over an interval of the real boundary line.
pub fn box_halfplane(interval: Interval) -> Region {
    Region::HalfPlaneBox(interval)
}

/// Box over an arc of the unit circle.
pub fn box_disk(arc: Arc) -> Region {
    Region::DiskBox(arc)
}

impl Region {
    pub fn ambient(&self) -> Ambient {
        match self {
            Region::HalfPlaneBox(_) => Ambient::HalfPlane,
            Region::DiskBox(_) => Ambient::Disk,
        }
    }

    pub fn contains(&self, z: C64) -> bool {
        match self {
            Region::HalfPlaneBox(i) => i.contains(z.re) && z.im > 0.0 && z.im < i.length() / 2.0,
            Region::DiskBox(a) => {
                let r = z.norm();
                r < 1.0 && r >= 1.0 - a.width / (2.0 * PI) && a.contains_angle(z.arg())
            }
        }
    }
}

/// Weighted point mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub position: C64,
    pub weight: f64,
}

/// Finitely supported nonnegative measure in one of the two ambients.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicMeasure {
    ambient: Ambient,
    atoms: Vec<Atom>,
}

impl AtomicMeasure {
    pub fn new(ambient: Ambient, atoms: Vec<Atom>) -> Result<Self> {
        for a in &atoms {
            if !(a.weight.is_finite() && a.weight >= 0.0) {
                return Err(Error::invalid(format!(
                    "atom weight must be finite and >= 0, got {}",
                    a.weight
                )));
            }
            if !a.position.re.is_finite() || !a.position.im.is_finite() {
                return Err(Error::invalid("atom position must be finite".to_string()));
            }
            match ambient {
                Ambient::HalfPlane => {
                    if a.position.im <= 0.0 {
                        return Err(Error::invalid(format!(
                            "half-plane atom needs Im z > 0, got {}",
                            a.position.im
                        )));
                    }
                }
                Ambient::Disk => {
                    if a.position.norm() >= 1.0 {
                        return Err(Error::invalid(format!(
                            "disk atom needs |z| < 1, got |z| = {}",
                            a.position.norm()
                        )));
                    }
                }
            }
        }
        Ok(AtomicMeasure { ambient, atoms })
    }

    pub fn empty(ambient: Ambient) -> Self {
        AtomicMeasure {
            ambient,
            atoms: vec![],
        }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    /// Scale every weight by a nonnegative factor.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor.is_finite() && factor >= 0.0) {
            return Err(Error::invalid(format!(
                "scale factor must be >= 0, got {factor}"
            )));
        }
        let atoms = self
            .atoms
            .iter()
            .map(|a| Atom {
                position: a.position,
                weight: a.weight * factor,
            })
            .collect();
        Ok(AtomicMeasure {
            ambient: self.ambient,
            atoms,
        })
    }

    /// Serialize to the one-atom-per-line text format:
    /// a header `ambient=<halfplane|disk>` followed by `re im weight` lines.
    /// Floats use the shortest representation that round-trips exactly.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "ambient={}", self.ambient);
        for a in &self.atoms {
            let _ = writeln!(out, "{} {} {}", a.position.re, a.position.im, a.weight);
        }
        out
    }

    /// Parse the text format produced by [`AtomicMeasure::to_text`].
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::Parse("empty measure file".to_string()))?;
        let ambient = match header.trim() {
            "ambient=halfplane" => Ambient::HalfPlane,
            "ambient=disk" => Ambient::Disk,
            other => {
                return Err(Error::Parse(format!(
                    "expected header 'ambient=<halfplane|disk>', got '{other}'"
                )))
            }
        };
        let mut atoms = Vec::new();
        for (idx, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::Parse(format!(
                    "line {}: expected 're im weight', got '{line}'",
                    idx + 1
                )));
            }
            let parse = |s: &str| -> Result<f64> {
                s.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("line {}: bad float '{s}'", idx + 1)))
            };
            atoms.push(Atom {
                position: C64::new(parse(fields[0])?, parse(fields[1])?),
                weight: parse(fields[2])?,
            });
        }
        AtomicMeasure::new(ambient, atoms)
    }
}

/// Mass of the measure inside a region; errors on ambient mismatch.
pub fn measure_of(mu: &AtomicMeasure, region: &Region) -> Result<f64> {
    if mu.ambient() != region.ambient() {
        return Err(Error::AmbientMismatch(format!(
            "measure is {}, region is {}",
            mu.ambient(),
            region.ambient()
        )));
    }
    Ok(mu
        .atoms()
        .iter()
        .filter(|a| region.contains(a.position))
        .map(|a| a.weight)
        .sum())
}

/// Mass of the measure inside the union of boxes over the intervals of an
/// open set (half-plane ambient).
pub fn measure_of_open_boxes(mu: &AtomicMeasure, open: &OpenSetUnion) -> Result<f64> {
    let mut total = 0.0;
    for i in open.intervals() {
        total += measure_of(mu, &box_halfplane(*i))?;
    }
    Ok(total)
}

/// One-box constant: supremum of `mu(box)/|I|^exponent` over a dyadic family
/// of intervals (half-plane) or arcs (disk).
///
/// The family consists of generations `g = -1..=depth` of side
/// `L0 * 2^{-g}`, where `L0` is the smallest power of two exceeding both the
/// support width and twice the maximal atom height, together with a second
/// family shifted by half a cell. The extra coarse generation guarantees at
/// least one box holding the entire measure. The result is a lower estimate
/// of the true supremum over all intervals/arcs (within a bounded factor, by
/// the usual covering argument) and is nondecreasing in `depth`.
pub fn one_box_constant(mu: &AtomicMeasure, exponent: f64, depth: usize) -> Result<f64> {
    if !(exponent.is_finite() && exponent > 0.0) {
        return Err(Error::invalid(format!(
            "box exponent must be positive, got {exponent}"
        )));
    }
    if depth == 0 {
        return Err(Error::invalid("box scan depth must be >= 1".to_string()));
    }
    if mu.is_empty() {
        return Ok(0.0);
    }
    match mu.ambient() {
        Ambient::HalfPlane => Ok(one_box_halfplane(mu, exponent, depth)),
        Ambient::Disk => Ok(one_box_disk(mu, exponent, depth)),
    }
}

fn one_box_halfplane(mu: &AtomicMeasure, exponent: f64, depth: usize) -> f64 {
    let xs: Vec<f64> = mu.atoms().iter().map(|a| a.position.re).collect();
    let xmin = xs.iter().cloned().fold(f64::INFINITY, f64::min);
    let xmax = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let ymax = mu
        .atoms()
        .iter()
        .map(|a| a.position.im)
        .fold(0.0f64, f64::max);
    let width = xmax - xmin;
    // Smallest k with 2^k > 2*ymax and 2^k >= width.
    let mut k0 = (2.0 * ymax).log2().floor() as i32 + 1;
    if width > 0.0 {
        k0 = k0.max(width.log2().ceil() as i32);
    }
    let mut best = 0.0f64;
    let mut cells: HashMap<(u8, i64), f64> = HashMap::new();
    for g in -1..=(depth as i32) {
        let len = (k0 - g) as f64;
        let len = len.exp2();
        let top = len / 2.0;
        cells.clear();
        for a in mu.atoms() {
            let y = a.position.im;
            if y >= top {
                continue;
            }
            for (fam, off) in [(0u8, 0.0), (1u8, len / 2.0)] {
                let t = (a.position.re - off) / len;
                let k = t.floor();
                if t == k {
                    // Atom exactly on a cell boundary: open intervals exclude it.
                    continue;
                }
                *cells.entry((fam, k as i64)).or_insert(0.0) += a.weight;
            }
        }
        let denom = len.powf(exponent);
        for mass in cells.values() {
            best = best.max(mass / denom);
        }
    }
    best
}

fn one_box_disk(mu: &AtomicMeasure, exponent: f64, depth: usize) -> f64 {
    let mut best = 0.0f64;
    let mut cells: HashMap<(u8, i64), f64> = HashMap::new();
    for g in 0..=depth {
        let width = 2.0 * PI * (-(g as f64)).exp2();
        let inner = 1.0 - (-(g as f64)).exp2();
        cells.clear();
        for a in mu.atoms() {
            let r = a.position.norm();
            if r < inner {
                continue;
            }
            let theta = a.position.arg();
            for (fam, off) in [(0u8, 0.0), (1u8, width / 2.0)] {
                let u = (theta - off).rem_euclid(2.0 * PI);
                let k = (u / width).floor() as i64;
                *cells.entry((fam, k)).or_insert(0.0) += a.weight;
            }
        }
        let denom = width.powf(exponent);
        for mass in cells.values() {
            best = best.max(mass / denom);
        }
    }
    best
}

/// Left endpoints of the level-`level` generalized Cantor construction on
/// `[0, 1]` with contraction ratio `r`, plus the common interval length.
///
/// Level 0 is `[0, 1]`; each step keeps the left and right `r`-fraction of
/// every interval.
pub fn cantor_intervals(ratio: f64, level: usize) -> Result<(Vec<f64>, f64)> {
    if !(ratio.is_finite() && ratio > 0.0 && ratio < 0.5) {
        return Err(Error::invalid(format!(
            "cantor ratio must lie in (0, 1/2), got {ratio}"
        )));
    }
    let mut starts = vec![0.0f64];
    let mut length = 1.0f64;
    for _ in 0..level {
        let next: Vec<f64> = starts.iter().map(|s| s + length * (1.0 - ratio)).collect();
        starts.extend(next);
        length *= ratio;
    }
    starts.sort_by(f64::total_cmp);
    Ok((starts, length))
}

/// Uniform atomic approximation of the Cantor measure: the `2^L` left
/// endpoints of the level-`L` construction, each of weight `2^{-L}`.
///
/// In the half-plane ambient atoms sit at height [`BOUNDARY_OFFSET`]; in the
/// disk ambient the unit interval is wrapped once around the circle
/// (`theta = 2 pi x`) at radius `1 - `[`BOUNDARY_OFFSET`].
///
/// The measure of this family obeys `nu(I) <= c |I|^d` with
/// `d = log 2 / log(1/r)`, the similarity dimension.
pub fn cantor_measure(ratio: f64, levels: usize, ambient: Ambient) -> Result<AtomicMeasure> {
    if levels == 0 {
        return Err(Error::invalid("cantor levels must be >= 1".to_string()));
    }
    let (starts, _) = cantor_intervals(ratio, levels)?;
    let w = (-(levels as f64)).exp2();
    let atoms = starts
        .iter()
        .map(|&x| {
            let position = match ambient {
                Ambient::HalfPlane => C64::new(x, BOUNDARY_OFFSET),
                Ambient::Disk => C64::from_polar(1.0 - BOUNDARY_OFFSET, 2.0 * PI * x),
            };
            Atom {
                position,
                weight: w,
            }
        })
        .collect();
    AtomicMeasure::new(ambient, atoms)
}

/// Similarity dimension `log 2 / log(1/r)` of the two-branch Cantor set.
pub fn cantor_dimension(ratio: f64) -> f64 {
    (2.0f64).ln() / (1.0 / ratio).ln()
}

/// Open cover of the Cantor set by padded level-`level` intervals.
///
/// Each of the `2^level` closed construction intervals is enlarged by one
/// third of the level-`level` gap on both sides, so the cover is an open
/// set, the enlarged intervals stay pairwise disjoint, and covers of
/// successive levels are nested.
pub fn cantor_cover(ratio: f64, level: usize) -> Result<OpenSetUnion> {
    if level == 0 {
        return Err(Error::invalid("cover level must be >= 1".to_string()));
    }
    let (starts, length) = cantor_intervals(ratio, level)?;
    let pad = cantor_gap(ratio, level) / 3.0;
    let intervals = starts
        .iter()
        .map(|&s| Interval::new(s - pad, s + length + pad))
        .collect::<Result<Vec<_>>>()?;
    OpenSetUnion::new(intervals)
}

/// Gap opened at level `level` of the construction: `r^{level-1} (1 - 2r)`.
pub fn cantor_gap(ratio: f64, level: usize) -> f64 {
    ratio.powi(level as i32 - 1) * (1.0 - 2.0 * ratio)
}

/// Common interval length of [`cantor_cover`] at a given level.
pub fn cover_interval_length(ratio: f64, level: usize) -> f64 {
    ratio.powi(level as i32) + 2.0 * cantor_gap(ratio, level) / 3.0
}

/// Default layer heights for [`stacked_measure`]: one third of the cover
/// interval length, per level `m = 1..=terms`. Strictly decreasing.
pub fn stack_heights(ratio: f64, terms: usize) -> Vec<f64> {
    (1..=terms)
        .map(|m| cover_interval_length(ratio, m) / 3.0)
        .collect()
}

/// Parameters of the stacked (layered) measure. The number of terms `M` is
/// the length of `heights`.
#[derive(Debug, Clone)]
pub struct StackParams {
    /// Base measure; only the boundary coordinate of each atom is used
    /// (`Re z` in the half-plane, `arg z` in the disk).
    pub base: AtomicMeasure,
    /// Strictly decreasing positive layer heights `gamma_1 > gamma_2 > ...`.
    pub heights: Vec<f64>,
}

/// Layered copy of the base measure: layer `m = 1..=M` places each base atom
/// at height `gamma_m` with weight `w / m^2`.
///
/// Half-plane: atom `(x, w)` goes to `x + i gamma_m`. Disk: atom at angle
/// `theta` goes to radius `1 - gamma_m` (heights must then be `< 1`).
/// Extending `heights` extends the measure without changing existing atoms.
pub fn stacked_measure(p: &StackParams) -> Result<AtomicMeasure> {
    for pair in p.heights.windows(2) {
        if !(pair[1] < pair[0]) {
            return Err(Error::invalid(format!(
                "stack heights must be strictly decreasing, got {} then {}",
                pair[0], pair[1]
            )));
        }
    }
    if let Some(&last) = p.heights.last() {
        if last <= 0.0 {
            return Err(Error::invalid("stack heights must be positive".to_string()));
        }
    }
    let mut atoms = Vec::with_capacity(p.base.len() * p.heights.len());
    for (m, &gamma) in p.heights.iter().enumerate() {
        let m = m + 1;
        let scale = 1.0 / (m * m) as f64;
        for a in p.base.atoms() {
            let position = match p.base.ambient() {
                Ambient::HalfPlane => C64::new(a.position.re, gamma),
                Ambient::Disk => {
                    if gamma >= 1.0 {
                        return Err(Error::invalid(format!(
                            "disk stack heights must be < 1, got {gamma}"
                        )));
                    }
                    C64::from_polar(1.0 - gamma, a.position.arg())
                }
            };
            atoms.push(Atom {
                position,
                weight: a.weight * scale,
            });
        }
    }
    AtomicMeasure::new(p.base.ambient(), atoms)
}
