use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::check_node_fits;
use crate::costmodel::HardwareConfig;
use crate::error::Result;
use crate::hgraph::{
    connectivity, push_forward, HedgeId, IndexedHypergraph, NodeId, PartId, Partitioning,
};
use crate::sum::CompensatedSum;

const MAX_PASSES: usize = 8;
const NONE: usize = usize::MAX;

/// Per-run record of the multilevel partitioner.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct HierarchyTrace {
    /// Node count of every level, finest first.
    pub level_sizes: Vec<usize>,
    /// Connectivity of the coarsest nodes taken as partitions.
    pub initial_connectivity: f64,
    /// Connectivity after refining each level, coarsest first.
    pub level_connectivity: Vec<f64>,
    /// Gain of every applied move, in application order.
    pub move_gains: Vec<f64>,
}

/// Resources of a group of original nodes.
#[derive(Debug, Clone)]
struct Cluster {
    size: usize,
    synapses: usize,
    /// Original inbound hyperedges with the number of member destinations,
    /// sorted by id.
    axons: Vec<(HedgeId, u32)>,
}

impl Cluster {
    fn merged(&self, other: &Cluster) -> Cluster {
        let (a, b) = (&self.axons, &other.axons);
        let mut axons = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                axons.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                axons.push(b[j]);
                j += 1;
            } else {
                axons.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
        Cluster {
            size: self.size + other.size,
            synapses: self.synapses + other.synapses,
            axons,
        }
    }

    fn union_axons(&self, other: &Cluster) -> usize {
        let (a, b) = (&self.axons, &other.axons);
        let (mut i, mut j, mut common) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    common += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        a.len() + b.len() - common
    }

    fn fits_with(&self, other: &Cluster, hw: &HardwareConfig) -> bool {
        self.size + other.size <= hw.npc
            && self.synapses + other.synapses <= hw.spc
            && self.union_axons(other) <= hw.apc
    }
}

struct Level {
    graph: IndexedHypergraph,
    clusters: Vec<Cluster>,
    /// Coarser node of every node at this level; empty for the coarsest.
    parent: Vec<NodeId>,
}

/// Multilevel partitioning under the core limits.
///
/// Nodes are paired by the total weight of the hyperedges they share until
/// no pair fits or `⌈n / npc⌉` nodes remain. Coarsest nodes become the
/// initial partitions, which are refined with single-node moves to
/// neighbouring partitions while the hierarchy is unwound.
pub fn hierarchical_partition(
    g: &IndexedHypergraph,
    hw: &HardwareConfig,
    seed: u64,
) -> Result<Partitioning> {
    hierarchical_partition_traced(g, hw, seed).map(|(rho, _)| rho)
}

pub fn hierarchical_partition_traced(
    g: &IndexedHypergraph,
    hw: &HardwareConfig,
    seed: u64,
) -> Result<(Partitioning, HierarchyTrace)> {
    let n = g.num_nodes();
    for node in 0..n {
        check_node_fits(g, node, hw)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trace = HierarchyTrace::default();
    if n == 0 {
        return Ok((Partitioning::new(Vec::new())?, trace));
    }

    let clusters = (0..n)
        .map(|v| Cluster {
            size: 1,
            synapses: g.inbound(v).len(),
            axons: g.inbound(v).iter().map(|&e| (e, 1)).collect(),
        })
        .collect();
    let mut levels = vec![Level {
        graph: g.clone(),
        clusters,
        parent: Vec::new(),
    }];
    let target = n.div_ceil(hw.npc).max(1);
    while let Some(next) = coarsen(levels.last_mut().unwrap(), hw, target, &mut rng)? {
        levels.push(next);
    }
    trace.level_sizes = levels.iter().map(|l| l.graph.num_nodes()).collect();

    let coarsest = levels.last().unwrap();
    let mut part: Vec<PartId> = (0..coarsest.graph.num_nodes()).collect();
    trace.initial_connectivity = level_connectivity(&coarsest.graph, &part)?;
    for depth in (0..levels.len()).rev() {
        let level = &levels[depth];
        if depth + 1 < levels.len() {
            part = level.parent.iter().map(|&c| part[c]).collect();
        }
        let num_parts = levels.last().unwrap().graph.num_nodes();
        refine(level, &mut part, num_parts, hw, &mut rng, &mut trace.move_gains);
        trace
            .level_connectivity
            .push(level_connectivity(&level.graph, &part)?);
    }
    Ok((Partitioning::from_labels(&part), trace))
}

fn level_connectivity(g: &IndexedHypergraph, part: &[PartId]) -> Result<f64> {
    Ok(connectivity(&push_forward(g, &Partitioning::from_labels(part))?))
}

/// One pairing round. Returns the coarser level, or `None` when no pair
/// formed or the node count is already at the target.
fn coarsen(
    level: &mut Level,
    hw: &HardwareConfig,
    target: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Option<Level>> {
    let g = &level.graph;
    let k = g.num_nodes();
    if k <= target {
        return Ok(None);
    }
    let mut visit: Vec<NodeId> = (0..k).collect();
    visit.shuffle(rng);
    let mut mate = vec![NONE; k];
    let mut score = vec![0.0f64; k];
    let mut touched: Vec<NodeId> = Vec::new();
    let mut pairs = 0;
    for &u in &visit {
        if k - pairs <= target {
            break;
        }
        if mate[u] != NONE {
            continue;
        }
        for &e in g.inbound(u).iter().chain(g.outbound(u)) {
            let e = g.hedge(e);
            for v in e.pins() {
                if v != u && mate[v] == NONE {
                    if score[v] == 0.0 {
                        touched.push(v);
                    }
                    score[v] += e.weight;
                }
            }
        }
        touched.sort_by(|&a, &b| score[b].total_cmp(&score[a]).then(a.cmp(&b)));
        let cu = &level.clusters[u];
        if let Some(&v) = touched
            .iter()
            .find(|&&v| cu.fits_with(&level.clusters[v], hw))
        {
            mate[u] = v;
            mate[v] = u;
            pairs += 1;
        }
        for &v in &touched {
            score[v] = 0.0;
        }
        touched.clear();
    }
    if pairs == 0 {
        return Ok(None);
    }

    // coarse ids in order of each pair's smallest member
    let mut label = vec![NONE; k];
    let mut clusters = Vec::with_capacity(k - pairs);
    for u in 0..k {
        if label[u] != NONE {
            continue;
        }
        label[u] = clusters.len();
        match mate[u] {
            NONE => clusters.push(level.clusters[u].clone()),
            v => {
                label[v] = clusters.len();
                clusters.push(level.clusters[u].merged(&level.clusters[v]));
            }
        }
    }
    let rho = Partitioning::new(label.clone())?;
    let graph = IndexedHypergraph::new(push_forward(g, &rho)?);
    level.parent = label;
    Ok(Some(Level {
        graph,
        clusters,
        parent: Vec::new(),
    }))
}

/// Partition-side bookkeeping for refinement at one level.
struct RefineState {
    size: Vec<usize>,
    synapses: Vec<usize>,
    /// Per partition: original hyperedge → member destinations.
    axons: Vec<HashMap<HedgeId, u32>>,
    /// Per level hyperedge: destination count per partition.
    pins: Vec<Vec<(PartId, u32)>>,
}

fn count_in(pins: &[(PartId, u32)], p: PartId) -> u32 {
    pins.iter().find(|(q, _)| *q == p).map_or(0, |&(_, c)| c)
}

fn bump(pins: &mut Vec<(PartId, u32)>, p: PartId, up: bool) {
    match pins.iter().position(|(q, _)| *q == p) {
        Some(i) if up => pins[i].1 += 1,
        Some(i) => {
            pins[i].1 -= 1;
            if pins[i].1 == 0 {
                pins.swap_remove(i);
            }
        }
        None => {
            debug_assert!(up);
            pins.push((p, 1));
        }
    }
}

impl RefineState {
    fn new(level: &Level, part: &[PartId], num_parts: usize) -> Self {
        let mut s = RefineState {
            size: vec![0; num_parts],
            synapses: vec![0; num_parts],
            axons: vec![HashMap::new(); num_parts],
            pins: Vec::with_capacity(level.graph.num_hedges()),
        };
        for (v, c) in level.clusters.iter().enumerate() {
            let p = part[v];
            s.size[p] += c.size;
            s.synapses[p] += c.synapses;
            for &(e, m) in &c.axons {
                *s.axons[p].entry(e).or_insert(0) += m;
            }
        }
        for e in level.graph.hedges() {
            let mut pins = Vec::new();
            for &d in &e.destinations {
                bump(&mut pins, part[d], true);
            }
            s.pins.push(pins);
        }
        s
    }

    fn fits(&self, c: &Cluster, q: PartId, hw: &HardwareConfig) -> bool {
        if self.size[q] + c.size > hw.npc || self.synapses[q] + c.synapses > hw.spc {
            return false;
        }
        let Some(mut room) = hw.apc.checked_sub(self.axons[q].len()) else {
            return false;
        };
        for (e, _) in &c.axons {
            if !self.axons[q].contains_key(e) {
                if room == 0 {
                    return false;
                }
                room -= 1;
            }
        }
        true
    }

    /// Connectivity reduction from moving `v` from `p` to `q`, returned as
    /// (removed, added) weight so callers can compare without cancellation.
    fn gain(&self, level: &Level, part: &[PartId], v: NodeId, q: PartId) -> (f64, f64) {
        let g = &level.graph;
        let p = part[v];
        let (mut removed, mut added) = (CompensatedSum::new(), CompensatedSum::new());
        for &e in g.inbound(v) {
            let hedge = g.hedge(e);
            let sp = part[hedge.source];
            let pins = &self.pins[e];
            if count_in(pins, p) == 1 && p != sp {
                removed.add(hedge.weight);
            }
            if count_in(pins, q) == 0 && q != sp {
                added.add(hedge.weight);
            }
        }
        for &e in g.outbound(v) {
            let hedge = g.hedge(e);
            let pins = &self.pins[e];
            if count_in(pins, p) > 0 {
                added.add(hedge.weight);
            }
            if count_in(pins, q) > 0 {
                removed.add(hedge.weight);
            }
        }
        (removed.value(), added.value())
    }

    /// Gain of moving `v` to any target `q`, up to rounding, is the
    /// returned base plus `cover[q]`, the weight of the hyperedges of `v`
    /// that already reach `q`. Also returns the smallest gain worth taking.
    fn cover_gains(&self, level: &Level, part: &[PartId], v: NodeId, cover: &mut [f64]) -> (f64, f64) {
        let g = &level.graph;
        let p = part[v];
        let (mut base, mut total) = (0.0, 0.0);
        for &e in g.inbound(v) {
            let hedge = g.hedge(e);
            let sp = part[hedge.source];
            let pins = &self.pins[e];
            if count_in(pins, p) == 1 && p != sp {
                base += hedge.weight;
            }
            base -= hedge.weight;
            total += hedge.weight;
            for &(q, _) in pins {
                if q != sp {
                    cover[q] += hedge.weight;
                }
            }
            cover[sp] += hedge.weight;
        }
        for &e in g.outbound(v) {
            let hedge = g.hedge(e);
            let pins = &self.pins[e];
            if count_in(pins, p) > 0 {
                base -= hedge.weight;
            }
            total += hedge.weight;
            for &(q, _) in pins {
                cover[q] += hedge.weight;
            }
        }
        (base, 1e-9 * (total + 1.0))
    }

    fn apply(&mut self, level: &Level, part: &mut [PartId], v: NodeId, q: PartId) {
        let p = part[v];
        let c = &level.clusters[v];
        self.size[p] -= c.size;
        self.size[q] += c.size;
        self.synapses[p] -= c.synapses;
        self.synapses[q] += c.synapses;
        for &(e, m) in &c.axons {
            let slot = self.axons[p].get_mut(&e).unwrap();
            *slot -= m;
            if *slot == 0 {
                self.axons[p].remove(&e);
            }
            *self.axons[q].entry(e).or_insert(0) += m;
        }
        for &e in level.graph.inbound(v) {
            bump(&mut self.pins[e], p, false);
            bump(&mut self.pins[e], q, true);
        }
        part[v] = q;
    }
}

fn refine(
    level: &Level,
    part: &mut [PartId],
    num_parts: usize,
    hw: &HardwareConfig,
    rng: &mut ChaCha8Rng,
    gains: &mut Vec<f64>,
) {
    let g = &level.graph;
    let mut state = RefineState::new(level, part, num_parts);
    let mut visit: Vec<NodeId> = (0..g.num_nodes()).collect();
    let mut targets: Vec<PartId> = Vec::new();
    let mut cover = vec![0.0f64; num_parts];
    let mut candidates: Vec<(PartId, f64)> = Vec::new();
    for _ in 0..MAX_PASSES {
        visit.shuffle(rng);
        let mut moved = false;
        for &v in &visit {
            let p = part[v];
            targets.clear();
            for &e in g.inbound(v).iter().chain(g.outbound(v)) {
                targets.extend(g.hedge(e).pins().map(|u| part[u]).filter(|&q| q != p));
            }
            targets.sort_unstable();
            targets.dedup();
            let (base, slack) = state.cover_gains(level, part, v, &mut cover);
            candidates.clear();
            candidates.extend(
                targets
                    .iter()
                    .map(|&q| (q, base + cover[q]))
                    .filter(|&(_, gain)| gain > slack),
            );
            // strongest first, lowest id on ties
            candidates.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
            let best = candidates
                .iter()
                .filter(|&&(q, _)| state.fits(&level.clusters[v], q, hw))
                .map(|&(q, _)| {
                    let (removed, added) = state.gain(level, part, v, q);
                    (q, removed - added)
                })
                .find(|&(_, gain)| gain > 0.0);
            cover[p] = 0.0;
            for &q in &targets {
                cover[q] = 0.0;
            }
            if let Some((q, gain)) = best {
                state.apply(level, part, v, q);
                gains.push(gain);
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
}
