use crate::costmodel::{HardwareConfig, Placement, Point};
use crate::error::{Error, Result};
use crate::partitioning::NodeOrder;

/// Hilbert curve over a `2^order × 2^order` grid, starting at `(0, 0)` and
/// stepping first along `+y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HilbertCurve {
    order: u32,
}

impl HilbertCurve {
    pub fn new(order: u32) -> Self {
        Self { order }
    }

    /// Smallest curve covering a `width × height` lattice.
    pub fn covering(width: usize, height: usize) -> Self {
        let side = width.max(height).max(1).next_power_of_two();
        Self::new(side.trailing_zeros())
    }

    pub fn order(self) -> u32 {
        self.order
    }

    pub fn side(self) -> usize {
        1 << self.order
    }

    pub fn len(self) -> usize {
        self.side() * self.side()
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn point(self, index: usize) -> Point {
        let (mut x, mut y) = (0, 0);
        let mut t = index;
        let mut s = 1;
        while s < self.side() {
            let rx = 1 & (t / 2);
            let ry = 1 & (t ^ rx);
            rotate(s, &mut x, &mut y, rx, ry);
            x += s * rx;
            y += s * ry;
            t /= 4;
            s *= 2;
        }
        Point::new(x, y)
    }

    pub fn index(self, p: Point) -> usize {
        let (mut x, mut y) = (p.x, p.y);
        let mut d = 0;
        let mut s = self.side() / 2;
        while s > 0 {
            let rx = usize::from(x & s > 0);
            let ry = usize::from(y & s > 0);
            d += s * s * ((3 * rx) ^ ry);
            rotate(self.side(), &mut x, &mut y, rx, ry);
            s /= 2;
        }
        d
    }
}

fn rotate(n: usize, x: &mut usize, y: &mut usize, rx: usize, ry: usize) {
    if ry == 0 {
        if rx == 1 {
            *x = n - 1 - *x;
            *y = n - 1 - *y;
        }
        std::mem::swap(x, y);
    }
}

/// Lays partitions along the Hilbert curve in the given order, skipping
/// curve cells outside the lattice.
pub fn hilbert_place(order: &NodeOrder, hw: &HardwareConfig) -> Result<Placement> {
    let k = order.len();
    if k > hw.num_cores() {
        return Err(Error::CapacityExceeded {
            partitions: k,
            cores: hw.num_cores(),
        });
    }
    let curve = HilbertCurve::covering(hw.width, hw.height);
    let mut cells = (0..curve.len())
        .map(|i| curve.point(i))
        .filter(|c| c.x < hw.width && c.y < hw.height);
    let mut coords = vec![Point::new(0, 0); k];
    for &p in order.sequence() {
        coords[p] = cells.next().expect("lattice has a cell per partition");
    }
    Placement::new(coords, hw.width, hw.height)
}
