use super::{build_laplacian, lowest_modes};
use crate::costmodel::{HardwareConfig, Placement, Point};
use crate::error::{Error, Result};
use crate::hgraph::{Hypergraph, PartId};
use crate::placement::eigen::budget;

/// Embeds partitions with the two lowest non-trivial Laplacian eigenvectors,
/// then snaps them to free cores of a centered, nearly square region.
///
/// Partitions are snapped in decreasing order of the spike frequency on
/// their hyperedges; those without hyperedges go last.
pub fn spectral_place(gp: &Hypergraph, hw: &HardwareConfig) -> Result<Placement> {
    let k = gp.num_nodes();
    if k > hw.num_cores() {
        return Err(Error::CapacityExceeded {
            partitions: k,
            cores: hw.num_cores(),
        });
    }
    let l = build_laplacian(gp);
    let modes = if l.dim() >= 2 {
        lowest_modes(&l, 2, budget(l.dim()))?
    } else {
        Vec::new()
    };

    // unit-square coordinates, 0.5 along missing or flat axes
    let mut unit = vec![[0.5f64; 2]; k];
    for (axis, mode) in modes.iter().enumerate() {
        let lo = mode.vector.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = mode.vector.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        for (row, &p) in l.members().iter().enumerate() {
            unit[p][axis] = if hi - lo > 1e-12 {
                (mode.vector[row] - lo) / (hi - lo)
            } else {
                0.5
            };
        }
    }

    let (a, b) = region(k, hw.width, hw.height);
    let x0 = ((hw.width - a) / 2) as f64;
    let y0 = ((hw.height - b) / 2) as f64;
    let target = |p: PartId| {
        (
            x0 + unit[p][0] * (a.saturating_sub(1)) as f64,
            y0 + unit[p][1] * (b.saturating_sub(1)) as f64,
        )
    };

    let mut traffic = vec![0.0f64; k];
    for e in gp.hedges() {
        for p in e.pins() {
            traffic[p] += e.weight;
        }
    }
    let mut order: Vec<PartId> = (0..k).collect();
    order.sort_by(|&p, &q| {
        let (ip, iq) = (l.row_of(p).is_none(), l.row_of(q).is_none());
        ip.cmp(&iq)
            .then(traffic[q].total_cmp(&traffic[p]))
            .then(p.cmp(&q))
    });

    let mut grid = FreeCells::new(hw.width, hw.height);
    let mut coords = vec![Point::new(0, 0); k];
    for p in order {
        let (tx, ty) = target(p);
        let cell = grid.nearest(tx, ty).expect("lattice has a free cell per partition");
        grid.take(cell);
        coords[p] = cell;
    }
    Placement::new(coords, hw.width, hw.height)
}

/// Smallest `a × b` region holding `k` cells with `|a − b| ≤ 1`, clipped to
/// the lattice.
fn region(k: usize, width: usize, height: usize) -> (usize, usize) {
    if k == 0 {
        return (1, 1);
    }
    let mut a = (k as f64).sqrt().ceil() as usize;
    while a * a < k {
        a += 1;
    }
    while a > 1 && (a - 1) * (a - 1) >= k {
        a -= 1;
    }
    let mut b = k.div_ceil(a);
    if a > width {
        a = width;
        b = k.div_ceil(a);
    }
    if b > height {
        b = height;
        a = k.div_ceil(b).min(width);
    }
    (a, b)
}

/// Occupancy grid answering nearest-free-cell queries by ring search.
struct FreeCells {
    width: usize,
    height: usize,
    used: Vec<bool>,
}

impl FreeCells {
    fn new(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            used: vec![false; width * height],
        }
    }

    fn take(&mut self, c: Point) {
        self.used[c.y * self.width + c.x] = true;
    }

    /// Free cell closest to `(tx, ty)` in Euclidean distance, ties to the
    /// lowest `(y, x)`.
    fn nearest(&self, tx: f64, ty: f64) -> Option<Point> {
        let cx = tx.round().clamp(0.0, (self.width - 1) as f64) as isize;
        let cy = ty.round().clamp(0.0, (self.height - 1) as f64) as isize;
        let mut best: Option<(f64, (usize, usize))> = None;
        let max_ring = self.width.max(self.height) as isize;
        for r in 0..=max_ring {
            if let Some((d, _)) = best {
                // every cell of ring r lies at least r − 0.5 away
                if r as f64 - 0.5 > d {
                    break;
                }
            }
            for (x, y) in ring(cx, cy, r) {
                if x < 0 || y < 0 || x >= self.width as isize || y >= self.height as isize {
                    continue;
                }
                let (x, y) = (x as usize, y as usize);
                if self.used[y * self.width + x] {
                    continue;
                }
                let d = ((x as f64 - tx).powi(2) + (y as f64 - ty).powi(2)).sqrt();
                let better = match best {
                    None => true,
                    Some((bd, key)) => d < bd || (d == bd && (y, x) < key),
                };
                if better {
                    best = Some((d, (y, x)));
                }
            }
        }
        best.map(|(_, (y, x))| Point::new(x, y))
    }
}

/// Cells at Chebyshev distance exactly `r` from `(cx, cy)`.
fn ring(cx: isize, cy: isize, r: isize) -> Vec<(isize, isize)> {
    if r == 0 {
        return vec![(cx, cy)];
    }
    let mut cells = Vec::with_capacity(8 * r as usize);
    for dx in -r..=r {
        cells.push((cx + dx, cy - r));
        cells.push((cx + dx, cy + r));
    }
    for dy in -r + 1..r {
        cells.push((cx - r, cy + dy));
        cells.push((cx + r, cy + dy));
    }
    cells
}
