use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::{Duration, Instant};

use crate::costmodel::{Placement, Point};
use crate::hgraph::{IndexedHypergraph, PartId};
use crate::sum::CompensatedSum;

pub const DEFAULT_MAX_ITERS: usize = 1000;

/// Unit lattice steps: west, east, south, north.
pub const STEPS: [(isize, isize); 4] = [(-1, 0), (1, 0), (0, -1), (0, 1)];

fn pull(a: Point, b: Point) -> f64 {
    a.manhattan(b).max(1) as f64
}

/// Spike-weighted distance from `p` to the sources of its inbound
/// hyperedges, with co-located sources still at distance 1.
pub fn potential(p: PartId, gamma: &Placement, gp: &IndexedHypergraph) -> f64 {
    potential_at(p, gamma.coord(p), gamma, gp)
}

fn potential_at(p: PartId, at: Point, gamma: &Placement, gp: &IndexedHypergraph) -> f64 {
    let mut acc = CompensatedSum::new();
    for &e in gp.inbound(p) {
        let e = gp.hedge(e);
        acc.add(e.weight * pull(at, gamma.coord(e.source)));
    }
    acc.value()
}

/// Potential drop of `p` if it were moved by `v`, other partitions fixed;
/// `-∞` when the move leaves the lattice. The target may be occupied.
pub fn force(p: PartId, v: (isize, isize), gamma: &Placement, gp: &IndexedHypergraph) -> f64 {
    let here = gamma.coord(p);
    match here.step(v.0, v.1, gamma.width(), gamma.height()) {
        Some(there) => potential_at(p, here, gamma, gp) - potential_at(p, there, gamma, gp),
        None => f64::NEG_INFINITY,
    }
}

/// Σ over partitions of their potential.
pub fn global_potential(gamma: &Placement, gp: &IndexedHypergraph) -> f64 {
    let mut acc = CompensatedSum::new();
    for e in gp.hedges() {
        let s = gamma.coord(e.source);
        for &d in &e.destinations {
            acc.add(e.weight * pull(s, gamma.coord(d)));
        }
    }
    acc.value()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RefineOptions {
    /// Upper bound on sweeps.
    pub max_iters: usize,
    pub time_limit: Option<Duration>,
    /// Recompute the global potential from scratch after every move.
    pub audit: bool,
}

impl Default for RefineOptions {
    fn default() -> Self {
        Self {
            max_iters: DEFAULT_MAX_ITERS,
            time_limit: None,
            audit: false,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RefineTrace {
    pub sweeps: usize,
    pub moves: usize,
    pub swaps: usize,
    pub initial_potential: f64,
    pub final_potential: f64,
    /// Audited moves that failed to lower the global potential.
    pub audit_violations: usize,
    /// Audited global potential after each move.
    pub audit_potentials: Vec<f64>,
}

struct Candidate {
    force: f64,
    p: PartId,
    step: usize,
    /// Versions of `p` and of the target's occupant when scored.
    stamp: (u64, u64),
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Candidate {}
impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.force
            .total_cmp(&other.force)
            .then(other.p.cmp(&self.p))
            .then(other.step.cmp(&self.step))
    }
}

/// Local moves that lower the total spike-weighted distance.
///
/// A partition either steps into an adjacent free core, pulled by its own
/// force, or trades places with the neighbour there when the two opposing
/// forces sum to a positive value. Candidates are tried strongest first and
/// applied only if the global potential strictly drops.
pub fn force_directed_refine(
    gamma0: &Placement,
    gp: &IndexedHypergraph,
    options: &RefineOptions,
) -> (Placement, RefineTrace) {
    let mut gamma = gamma0.clone();
    let k = gamma.len();
    let started = Instant::now();
    let mut trace = RefineTrace {
        initial_potential: global_potential(&gamma, gp),
        ..RefineTrace::default()
    };
    let mut version = vec![0u64; k];
    let mut dirty = vec![true; k];
    let mut touched: Vec<PartId> = Vec::new();

    'sweeps: while trace.sweeps < options.max_iters {
        let mut heap = BinaryHeap::new();
        for p in 0..k {
            if std::mem::take(&mut dirty[p]) {
                for step in 0..STEPS.len() {
                    if let Some(c) = score(p, step, &gamma, gp, &version) {
                        heap.push(c);
                    }
                }
            }
        }
        if heap.is_empty() {
            break;
        }
        trace.sweeps += 1;
        let mut moved = false;
        while let Some(c) = heap.pop() {
            if options.time_limit.is_some_and(|t| started.elapsed() >= t) {
                break 'sweeps;
            }
            if stamp_of(c.p, c.step, &gamma, &version) != Some(c.stamp) {
                // stale: rescore and requeue if still attractive
                if let Some(fresh) = score(c.p, c.step, &gamma, gp, &version) {
                    heap.push(fresh);
                }
                continue;
            }
            let (dx, dy) = STEPS[c.step];
            let from = gamma.coord(c.p);
            let to = from.step(dx, dy, gamma.width(), gamma.height()).unwrap();
            let other = gamma.at(to);
            let delta = move_delta(c.p, other, from, to, &gamma, gp);
            if delta >= 0.0 {
                continue;
            }
            gamma.move_or_swap(c.p, to);
            trace.moves += 1;
            trace.swaps += usize::from(other.is_some());
            moved = true;
            if options.audit {
                let exact = global_potential(&gamma, gp);
                let previous = trace.audit_potentials.last().copied().unwrap_or(trace.initial_potential);
                if exact >= previous {
                    trace.audit_violations += 1;
                }
                trace.audit_potentials.push(exact);
            }

            touched.clear();
            touched.push(c.p);
            touched.extend(other);
            for q in [Some(c.p), other].into_iter().flatten() {
                touched.extend(neighbours(q, gp));
            }
            for cell in [from, to] {
                for (sx, sy) in STEPS {
                    if let Some(n) = cell.step(sx, sy, gamma.width(), gamma.height()) {
                        touched.extend(gamma.at(n));
                    }
                }
            }
            for &q in &touched {
                version[q] += 1;
                dirty[q] = true;
            }
        }
        if !moved {
            break;
        }
    }
    trace.final_potential = global_potential(&gamma, gp);
    (gamma, trace)
}

fn neighbours<'a>(p: PartId, gp: &'a IndexedHypergraph) -> impl Iterator<Item = PartId> + 'a {
    gp.inbound(p)
        .iter()
        .chain(gp.outbound(p))
        .flat_map(move |&e| gp.hedge(e).pins())
}

fn stamp_of(p: PartId, step: usize, gamma: &Placement, version: &[u64]) -> Option<(u64, u64)> {
    let (dx, dy) = STEPS[step];
    let to = gamma.coord(p).step(dx, dy, gamma.width(), gamma.height())?;
    Some((version[p], gamma.at(to).map_or(0, |q| version[q] + 1)))
}

fn score(
    p: PartId,
    step: usize,
    gamma: &Placement,
    gp: &IndexedHypergraph,
    version: &[u64],
) -> Option<Candidate> {
    let (dx, dy) = STEPS[step];
    let to = gamma.coord(p).step(dx, dy, gamma.width(), gamma.height())?;
    let mut f = force(p, (dx, dy), gamma, gp);
    if let Some(q) = gamma.at(to) {
        f += force(q, (-dx, -dy), gamma, gp);
    }
    (f > 0.0).then(|| Candidate {
        force: f,
        p,
        step,
        stamp: stamp_of(p, step, gamma, version).unwrap(),
    })
}

/// Exact change of the global potential if `p` goes to `to` and `other`
/// (the occupant of `to`) goes to `from`.
fn move_delta(
    p: PartId,
    other: Option<PartId>,
    from: Point,
    to: Point,
    gamma: &Placement,
    gp: &IndexedHypergraph,
) -> f64 {
    let moved_to = |q: PartId| {
        if q == p {
            to
        } else if Some(q) == other {
            from
        } else {
            gamma.coord(q)
        }
    };
    let mut connections: Vec<(usize, PartId)> = Vec::new();
    for q in [Some(p), other].into_iter().flatten() {
        for &e in gp.inbound(q) {
            connections.push((e, q));
        }
        for &e in gp.outbound(q) {
            connections.extend(gp.hedge(e).destinations.iter().map(|&d| (e, d)));
        }
    }
    connections.sort_unstable();
    connections.dedup();
    let (mut gained, mut lost) = (CompensatedSum::new(), CompensatedSum::new());
    for (e, d) in connections {
        let hedge = gp.hedge(e);
        let before = pull(gamma.coord(hedge.source), gamma.coord(d));
        let after = pull(moved_to(hedge.source), moved_to(d));
        if after > before {
            gained.add(hedge.weight * (after - before));
        } else if after < before {
            lost.add(hedge.weight * (before - after));
        }
    }
    let (gained, lost) = (gained.value(), lost.value());
    if lost > gained * (1.0 + 1e-12) {
        gained - lost
    } else {
        0.0
    }
}
