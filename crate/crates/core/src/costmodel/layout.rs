use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hgraph::PartId;

/// A core coordinate on the lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Point {
    pub x: usize,
    pub y: usize,
}

impl Point {
    pub const fn new(x: usize, y: usize) -> Self {
        Self { x, y }
    }

    pub fn manhattan(self, other: Point) -> usize {
        self.x.abs_diff(other.x) + self.y.abs_diff(other.y)
    }

    /// Ordering key used for tie-breaks: lowest row first, then column.
    pub fn row_major_key(self) -> (usize, usize) {
        (self.y, self.x)
    }

    /// The neighbor one step along `(dx, dy)`, if it stays within the lattice.
    pub fn step(self, dx: isize, dy: isize, width: usize, height: usize) -> Option<Point> {
        let x = self.x.checked_add_signed(dx)?;
        let y = self.y.checked_add_signed(dy)?;
        (x < width && y < height).then_some(Point { x, y })
    }
}

impl From<(usize, usize)> for Point {
    fn from((x, y): (usize, usize)) -> Self {
        Point { x, y }
    }
}

/// Injective assignment of partitions to lattice cores.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    width: usize,
    height: usize,
    coords: Vec<Point>,
    occupancy: Vec<Option<PartId>>,
}

impl Placement {
    pub fn new(coords: Vec<Point>, width: usize, height: usize) -> Result<Self> {
        let mut occupancy = vec![None; width * height];
        for (p, c) in coords.iter().enumerate() {
            if c.x >= width || c.y >= height {
                return Err(Error::InvalidPlacement(format!(
                    "partition {p} at ({}, {}) lies outside the {width}×{height} lattice",
                    c.x, c.y
                )));
            }
            let slot = &mut occupancy[c.y * width + c.x];
            if let Some(q) = slot {
                return Err(Error::InvalidPlacement(format!(
                    "partitions {q} and {p} share core ({}, {})",
                    c.x, c.y
                )));
            }
            *slot = Some(p);
        }
        Ok(Self {
            width,
            height,
            coords,
            occupancy,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[Point] {
        &self.coords
    }

    pub fn coord(&self, p: PartId) -> Point {
        self.coords[p]
    }

    pub fn at(&self, c: Point) -> Option<PartId> {
        self.occupancy[c.y * self.width + c.x]
    }

    pub(crate) fn require_covers(&self, num_partitions: usize) -> Result<()> {
        if num_partitions > self.coords.len() {
            return Err(Error::Unplaced(self.coords.len()));
        }
        Ok(())
    }

    /// Moves `p` to `target`, swapping with the occupant if there is one.
    pub(crate) fn move_or_swap(&mut self, p: PartId, target: Point) {
        let from = self.coords[p];
        let other = self.at(target);
        let (from_i, to_i) = (from.y * self.width + from.x, target.y * self.width + target.x);
        self.occupancy[to_i] = Some(p);
        self.occupancy[from_i] = other;
        self.coords[p] = target;
        if let Some(q) = other {
            self.coords[q] = from;
        }
    }

    /// Returns a copy shifted by `(dx, dy)`, or `None` if any core leaves the lattice.
    pub fn translated(&self, dx: isize, dy: isize) -> Option<Placement> {
        let coords = self
            .coords
            .iter()
            .map(|c| c.step(dx, dy, self.width, self.height))
            .collect::<Option<Vec<_>>>()?;
        Placement::new(coords, self.width, self.height).ok()
    }
}

pub fn write_placement_file(gamma: &Placement) -> String {
    let mut out = String::new();
    for (p, c) in gamma.coords().iter().enumerate() {
        let _ = writeln!(out, "{p} {} {}", c.x, c.y);
    }
    out
}

/// Reads `<partition_id> <x> <y>` lines; ids must be exactly `0..k`.
pub fn parse_placement_file(text: &str, width: usize, height: usize) -> Result<Placement> {
    let mut coords: Vec<Option<Point>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_ascii_whitespace().collect();
        let [p, x, y] = fields[..] else {
            return Err(Error::parse(ln, "expected `<partition_id> <x> <y>`"));
        };
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::parse(ln, format!("malformed integer `{s}`")))
        };
        let (p, x, y) = (num(p)?, num(x)?, num(y)?);
        if p >= coords.len() {
            coords.resize(p + 1, None);
        }
        if coords[p].replace(Point::new(x, y)).is_some() {
            return Err(Error::parse(ln, format!("partition {p} placed twice")));
        }
    }
    let coords = coords
        .into_iter()
        .enumerate()
        .map(|(p, c)| c.ok_or(Error::Unplaced(p)))
        .collect::<Result<Vec<_>>>()?;
    Placement::new(coords, width, height)
}
