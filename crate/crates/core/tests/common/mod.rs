//! Reference implementations used as test oracles. They favour the most
//! direct reading of each definition over speed.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use snnmap::{HardwareConfig, Hyperedge, Hypergraph, Partitioning, Placement, Point};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Network-form graph where every node sources one hyperedge to a random
/// subset of the others. Weights are multiples of 1/8, so sums are exact.
pub fn dyadic_snn(n: usize, max_card: usize, seed: u64) -> Hypergraph {
    let mut r = rng(seed);
    let hedges = (0..n)
        .map(|s| {
            let k = r.random_range(1..=max_card.min(n - 1));
            let mut others: Vec<usize> = (0..n).filter(|&d| d != s).collect();
            let mut dest = Vec::new();
            for _ in 0..k {
                dest.push(others.swap_remove(r.random_range(0..others.len())));
            }
            dest.sort_unstable();
            Hyperedge::new(s, dest, r.random_range(1..=16) as f64 / 8.0)
        })
        .collect();
    Hypergraph::new_snn(n, hedges).unwrap()
}

/// General hypergraph on `k` partitions with real weights.
pub fn random_partition_graph(k: usize, hedges: usize, seed: u64) -> Hypergraph {
    let mut r = rng(seed);
    let list = (0..hedges)
        .map(|_| {
            let s = r.random_range(0..k);
            let mut dest: Vec<usize> = (0..k).filter(|&d| d != s && r.random_bool(0.3)).collect();
            if dest.is_empty() {
                dest.push((s + 1) % k);
            }
            Hyperedge::new(s, dest, r.random_range(0.05..3.0))
        })
        .collect();
    Hypergraph::new(k, list).unwrap()
}

pub fn random_placement(k: usize, w: usize, h: usize, seed: u64) -> Placement {
    let mut r = rng(seed);
    let mut cells: Vec<Point> = (0..h).flat_map(|y| (0..w).map(move |x| Point::new(x, y))).collect();
    let mut coords = Vec::with_capacity(k);
    for _ in 0..k {
        coords.push(cells.swap_remove(r.random_range(0..cells.len())));
    }
    Placement::new(coords, w, h).unwrap()
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

/// Σ over source hyperedges of weight times the number of distinct
/// remote destination partitions.
pub fn naive_connectivity(g: &Hypergraph, rho: &Partitioning) -> f64 {
    let mut total = 0.0;
    for e in g.hedges() {
        let home = rho.part_of(e.source);
        let remote: BTreeSet<usize> = e
            .destinations
            .iter()
            .map(|&d| rho.part_of(d))
            .filter(|&p| p != home)
            .collect();
        total += e.weight * remote.len() as f64;
    }
    total
}

/// `(nodes, distinct inbound hyperedges, inbound connections)` per partition.
pub fn naive_counts(g: &Hypergraph, rho: &Partitioning) -> Vec<(usize, usize, usize)> {
    (0..rho.num_partitions())
        .map(|p| {
            let nodes = (0..g.num_nodes()).filter(|&n| rho.part_of(n) == p).count();
            let axons = g
                .hedges()
                .iter()
                .filter(|e| e.destinations.iter().any(|&d| rho.part_of(d) == p))
                .count();
            let synapses = g
                .hedges()
                .iter()
                .map(|e| e.destinations.iter().filter(|&&d| rho.part_of(d) == p).count())
                .sum();
            (nodes, axons, synapses)
        })
        .collect()
}

pub fn naive_valid(g: &Hypergraph, rho: &Partitioning, hw: &HardwareConfig) -> bool {
    rho.num_partitions() <= hw.width * hw.height
        && naive_counts(g, rho)
            .iter()
            .all(|&(n, a, s)| n <= hw.npc && a <= hw.apc && s <= hw.spc)
}

/// Minimum connectivity over every partitioning that respects the core
/// limits, by enumerating restricted growth strings.
pub fn brute_force_optimum(g: &Hypergraph, hw: &HardwareConfig) -> f64 {
    let n = g.num_nodes();
    let mut labels = vec![0usize; n];
    let mut sizes = vec![0usize; n];
    let mut best = f64::INFINITY;
    fn go(
        i: usize,
        blocks: usize,
        g: &Hypergraph,
        hw: &HardwareConfig,
        labels: &mut [usize],
        sizes: &mut [usize],
        best: &mut f64,
    ) {
        let n = labels.len();
        if i == n {
            let rho = Partitioning::new(labels.to_vec()).unwrap();
            if naive_valid(g, &rho, hw) {
                *best = best.min(naive_connectivity(g, &rho));
            }
            return;
        }
        for b in 0..=blocks {
            if b == n || sizes[b] == hw.npc {
                continue;
            }
            labels[i] = b;
            sizes[b] += 1;
            go(i + 1, blocks.max(b + 1), g, hw, labels, sizes, best);
            sizes[b] -= 1;
        }
    }
    go(0, 0, g, hw, &mut labels, &mut sizes, &mut best);
    best
}

/// Number of monotone lattice paths between two points, by dynamic
/// programming.
pub fn monotone_paths(a: Point, b: Point) -> u128 {
    let w = a.x.abs_diff(b.x) + 1;
    let h = a.y.abs_diff(b.y) + 1;
    let mut t = vec![vec![0u128; w]; h];
    for y in 0..h {
        for x in 0..w {
            t[y][x] = if x == 0 || y == 0 { 1 } else { t[y - 1][x] + t[y][x - 1] };
        }
    }
    t[h - 1][w - 1]
}

fn between(v: usize, a: usize, b: usize) -> bool {
    a.min(b) <= v && v <= a.max(b)
}

/// Share of minimal paths from `hs` to `hd` that visit `h`.
pub fn naive_tau(h: Point, hs: Point, hd: Point) -> f64 {
    if !between(h.x, hs.x, hd.x) || !between(h.y, hs.y, hd.y) {
        return 0.0;
    }
    (monotone_paths(hs, h) * monotone_paths(h, hd)) as f64 / monotone_paths(hs, hd) as f64
}

pub fn dist(a: Point, b: Point) -> f64 {
    ((a.x as i64 - b.x as i64).abs() + (a.y as i64 - b.y as i64).abs()) as f64
}

pub fn naive_energy(gp: &Hypergraph, gamma: &Placement, hw: &HardwareConfig) -> f64 {
    let mut total = 0.0;
    for e in gp.hedges() {
        for &d in &e.destinations {
            let l = dist(gamma.coord(e.source), gamma.coord(d));
            total += e.weight * (l * (hw.energy_route + hw.energy_transmit) + hw.energy_route);
        }
    }
    total
}

pub fn naive_latency(gp: &Hypergraph, gamma: &Placement, hw: &HardwareConfig) -> f64 {
    let (mut num, mut den) = (0.0, 0.0);
    for e in gp.hedges() {
        for &d in &e.destinations {
            let l = dist(gamma.coord(e.source), gamma.coord(d));
            num += e.weight * (l * (hw.latency_route + hw.latency_transmit) + hw.latency_route);
        }
        den += e.weight;
    }
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// Σ over cores of the expected spike traffic through them.
pub fn naive_congestion(gp: &Hypergraph, gamma: &Placement) -> f64 {
    let mut total = 0.0;
    for y in 0..gamma.height() {
        for x in 0..gamma.width() {
            let h = Point::new(x, y);
            for e in gp.hedges() {
                for &d in &e.destinations {
                    total += e.weight * naive_tau(h, gamma.coord(e.source), gamma.coord(d));
                }
            }
        }
    }
    total
}

fn cross(o: Point, a: Point, b: Point) -> i64 {
    let (ox, oy) = (o.x as i64, o.y as i64);
    (a.x as i64 - ox) * (b.y as i64 - oy) - (a.y as i64 - oy) * (b.x as i64 - ox)
}

fn on_segment(q: Point, a: Point, b: Point) -> bool {
    cross(a, b, q) == 0 && between(q.x, a.x, b.x) && between(q.y, a.y, b.y)
}

fn in_triangle(q: Point, a: Point, b: Point, c: Point) -> bool {
    let (d1, d2, d3) = (cross(a, b, q), cross(b, c, q), cross(c, a, q));
    let neg = d1 < 0 || d2 < 0 || d3 < 0;
    let pos = d1 > 0 || d2 > 0 || d3 > 0;
    !(neg && pos)
}

/// Lattice points in the convex hull of `pts`: a point is inside when it
/// lies in a triangle or on a segment spanned by members of the set.
pub fn naive_hull_count(pts: &[Point]) -> usize {
    let (x0, x1) = (pts.iter().map(|p| p.x).min().unwrap(), pts.iter().map(|p| p.x).max().unwrap());
    let (y0, y1) = (pts.iter().map(|p| p.y).min().unwrap(), pts.iter().map(|p| p.y).max().unwrap());
    let mut count = 0;
    for y in y0..=y1 {
        for x in x0..=x1 {
            let q = Point::new(x, y);
            let mut inside = pts.contains(&q);
            for i in 0..pts.len() {
                for j in i + 1..pts.len() {
                    inside |= on_segment(q, pts[i], pts[j]);
                    for k in j + 1..pts.len() {
                        if cross(pts[i], pts[j], pts[k]) != 0 {
                            inside |= in_triangle(q, pts[i], pts[j], pts[k]);
                        }
                    }
                }
            }
            count += inside as usize;
        }
    }
    count
}

/// Normalized Laplacian of the clique expansion as a dense matrix over all
/// partitions with positive degree, in increasing id order.
pub fn dense_laplacian(gp: &Hypergraph) -> (Vec<usize>, nalgebra::DMatrix<f64>) {
    let k = gp.num_nodes();
    let mut a = nalgebra::DMatrix::<f64>::zeros(k, k);
    for e in gp.hedges() {
        let pins: BTreeSet<usize> = e.pins().collect();
        for &i in &pins {
            for &j in &pins {
                if i != j {
                    a[(i, j)] += e.weight;
                }
            }
        }
    }
    let deg: Vec<f64> = (0..k).map(|i| a.row(i).sum()).collect();
    let rows: Vec<usize> = (0..k).filter(|&i| deg[i] > 0.0).collect();
    let m = rows.len();
    let mut l = nalgebra::DMatrix::<f64>::identity(m, m);
    for (r, &i) in rows.iter().enumerate() {
        for (c, &j) in rows.iter().enumerate() {
            if i != j {
                l[(r, c)] = -a[(i, j)] / (deg[i] * deg[j]).sqrt();
            }
        }
    }
    (rows, l)
}

pub fn sorted_eigenvalues(m: nalgebra::DMatrix<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

pub fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}
