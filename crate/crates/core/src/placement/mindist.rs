use std::collections::{BTreeSet, HashMap};

use crate::costmodel::{HardwareConfig, Placement, Point};
use crate::error::{Error, Result};
use crate::hgraph::{Hypergraph, PartId};
use crate::partitioning::NodeOrder;

/// Per-step costs recorded when auditing the frontier restriction.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MinDistanceTrace {
    /// Cost of the chosen frontier cell for every partition after the inputs.
    pub frontier_cost: Vec<f64>,
    /// Best cost over every free cell at the same step.
    pub full_cost: Vec<f64>,
}

/// Constructive placement.
///
/// Partitions without inbound hyperedges are spread evenly along the middle
/// row (or column, on tall lattices). Every other partition, in `order`,
/// takes the free core next to the used ones that minimizes its
/// spike-weighted Manhattan distance to the placed partitions it shares a
/// hyperedge with.
pub fn min_distance_place(gp: &Hypergraph, hw: &HardwareConfig, order: &NodeOrder) -> Result<Placement> {
    min_distance_place_traced(gp, hw, order, false).map(|(g, _)| g)
}

pub fn min_distance_place_traced(
    gp: &Hypergraph,
    hw: &HardwareConfig,
    order: &NodeOrder,
    audit: bool,
) -> Result<(Placement, MinDistanceTrace)> {
    let k = gp.num_nodes();
    let (w, h) = (hw.width, hw.height);
    if k > hw.num_cores() {
        return Err(Error::CapacityExceeded {
            partitions: k,
            cores: hw.num_cores(),
        });
    }
    if order.len() != k {
        return Err(Error::InvalidOrder(format!(
            "order covers {} partitions, graph has {k}",
            order.len()
        )));
    }
    let mut trace = MinDistanceTrace::default();
    if k == 0 {
        return Ok((Placement::new(Vec::new(), w, h)?, trace));
    }

    // symmetric source-destination weight between partitions
    let mut links: Vec<HashMap<PartId, f64>> = vec![HashMap::new(); k];
    let mut has_inbound = vec![false; k];
    for e in gp.hedges() {
        for &d in &e.destinations {
            has_inbound[d] = true;
            if d != e.source {
                *links[e.source].entry(d).or_insert(0.0) += e.weight;
                *links[d].entry(e.source).or_insert(0.0) += e.weight;
            }
        }
    }
    let mut inputs: Vec<PartId> = order
        .sequence()
        .iter()
        .copied()
        .filter(|&p| !has_inbound[p])
        .collect();
    if inputs.is_empty() {
        inputs.push(order.sequence()[0]);
    }

    let mut coords: Vec<Option<Point>> = vec![None; k];
    let mut used = vec![false; w * h];
    let mut frontier: BTreeSet<(usize, usize)> = BTreeSet::new();
    let occupy = |c: Point, coords_p: &mut Option<Point>, used: &mut Vec<bool>, frontier: &mut BTreeSet<(usize, usize)>| {
        *coords_p = Some(c);
        used[c.y * w + c.x] = true;
        frontier.remove(&(c.y, c.x));
        for (dx, dy) in [(-1, 0), (1, 0), (0, -1), (0, 1)] {
            if let Some(n) = c.step(dx, dy, w, h) {
                if !used[n.y * w + n.x] {
                    frontier.insert((n.y, n.x));
                }
            }
        }
    };

    for (p, c) in inputs.iter().zip(spread(inputs.len(), w, h)) {
        occupy(c, &mut coords[*p], &mut used, &mut frontier);
    }

    let cost = |p: PartId, c: Point, coords: &[Option<Point>]| -> f64 {
        let mut pairs: Vec<(&PartId, &f64)> = links[p].iter().collect();
        pairs.sort_unstable_by_key(|(q, _)| **q);
        pairs
            .into_iter()
            .filter_map(|(&q, &wt)| coords[q].map(|at| wt * c.manhattan(at) as f64))
            .sum()
    };

    for &p in order.sequence() {
        if coords[p].is_some() {
            continue;
        }
        let mut best: Option<(f64, Point)> = None;
        for &(y, x) in &frontier {
            let c = Point::new(x, y);
            let v = cost(p, c, &coords);
            if best.is_none_or(|(b, _)| v < b) {
                best = Some((v, c));
            }
        }
        let (v, c) = best.expect("free cores remain while partitions are unplaced");
        if audit {
            let full = (0..w * h)
                .filter(|&i| !used[i])
                .map(|i| cost(p, Point::new(i % w, i / w), &coords))
                .fold(f64::INFINITY, f64::min);
            trace.frontier_cost.push(v);
            trace.full_cost.push(full);
        }
        occupy(c, &mut coords[p], &mut used, &mut frontier);
    }
    let coords = coords.into_iter().map(Option::unwrap).collect();
    Ok((Placement::new(coords, w, h)?, trace))
}

/// Evenly spaced, centered cells for `k` input partitions.
///
/// Inputs go along the central row, or the central column when the lattice
/// is taller than wide. When they outnumber the cells of that line they
/// fill several adjacent lines centered on it.
pub fn spread(k: usize, w: usize, h: usize) -> Vec<Point> {
    let tall = h > w;
    let (long, short) = if tall { (h, w) } else { (w, h) };
    let lines = k.div_ceil(long).max(1);
    let first = short.saturating_sub(lines) / 2;
    let mut cells = Vec::with_capacity(k);
    let mut left = k;
    for line in 0..lines {
        let here = left.div_ceil(lines - line);
        left -= here;
        let across = if lines == 1 { short / 2 } else { first + line };
        for i in 0..here {
            let along = ((2 * i + 1) * long) / (2 * here);
            cells.push(if tall {
                Point::new(across, along)
            } else {
                Point::new(along, across)
            });
        }
    }
    cells
}
