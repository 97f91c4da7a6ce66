use super::{HardwareConfig, Placement, Point};
use crate::error::Result;
use crate::hgraph::Hypergraph;
use crate::sum::CompensatedSum;

pub fn manhattan(a: Point, b: Point) -> usize {
    a.manhattan(b)
}

/// All lattice points in the closed axis-aligned box spanned by `a` and `b`,
/// row by row.
pub fn rect(a: Point, b: Point) -> Vec<Point> {
    let (x0, x1) = (a.x.min(b.x), a.x.max(b.x));
    let (y0, y1) = (a.y.min(b.y), a.y.max(b.y));
    (y0..=y1)
        .flat_map(|y| (x0..=x1).map(move |x| Point::new(x, y)))
        .collect()
}

fn in_rect(h: Point, a: Point, b: Point) -> bool {
    (a.x.min(b.x)..=a.x.max(b.x)).contains(&h.x) && (a.y.min(b.y)..=a.y.max(b.y)).contains(&h.y)
}

const LOG_SPACE_ABOVE: usize = 1000;

/// `ln C(n, k)`, accumulated term by term.
fn ln_binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (1..=k)
        .map(|i| ((n - k + i) as f64 / i as f64).ln())
        .sum()
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    let mut c = 1.0;
    for i in 1..=k {
        c = c * (n - k + i) as f64 / i as f64;
    }
    c
}

/// Number of monotone minimal paths across a `dx × dy` displacement.
fn paths(a: Point, b: Point) -> (usize, usize) {
    let dx = a.x.abs_diff(b.x);
    (dx + a.y.abs_diff(b.y), dx)
}

/// Probability that a spike routed from `hs` to `hd` along a uniformly chosen
/// minimal path passes through `h`.
pub fn tau(h: Point, hs: Point, hd: Point) -> f64 {
    if !in_rect(h, hs, hd) {
        return 0.0;
    }
    let (n1, k1) = paths(hs, h);
    let (n2, k2) = paths(h, hd);
    let (n, k) = paths(hs, hd);
    if n > LOG_SPACE_ABOVE {
        (ln_binomial(n1, k1) + ln_binomial(n2, k2) - ln_binomial(n, k)).exp()
    } else {
        binomial(n1, k1) * binomial(n2, k2) / binomial(n, k)
    }
}

/// Every source-destination connection as `(weight, distance, source cell, destination cell)`.
fn connections<'a>(
    gp: &'a Hypergraph,
    gamma: &'a Placement,
) -> Result<impl Iterator<Item = (f64, usize, Point, Point)> + 'a> {
    gamma.require_covers(gp.num_nodes())?;
    Ok(gp.hedges().iter().flat_map(move |e| {
        let s = gamma.coord(e.source);
        e.destinations.iter().map(move |&d| {
            let t = gamma.coord(d);
            (e.weight, s.manhattan(t), s, t)
        })
    }))
}

fn hop_cost(gp: &Hypergraph, gamma: &Placement, route: f64, transmit: f64) -> Result<f64> {
    let mut acc = CompensatedSum::new();
    for (w, dist, _, _) in connections(gp, gamma)? {
        acc.add(w * (dist as f64 * (route + transmit) + route));
    }
    Ok(acc.value())
}

/// Total energy per timestep, pJ.
pub fn energy(gp: &Hypergraph, gamma: &Placement, hw: &HardwareConfig) -> Result<f64> {
    hop_cost(gp, gamma, hw.energy_route, hw.energy_transmit)
}

/// Spike-weighted mean latency per hyperedge, ns; 0 without hyperedges.
pub fn avg_latency(gp: &Hypergraph, gamma: &Placement, hw: &HardwareConfig) -> Result<f64> {
    let total = hop_cost(gp, gamma, hw.latency_route, hw.latency_transmit)?;
    let weight: CompensatedSum = gp.hedges().iter().map(|e| e.weight).collect();
    let weight = weight.value();
    Ok(if weight > 0.0 { total / weight } else { 0.0 })
}

/// Expected spike traversals summed over all cores.
///
/// The per-core probabilities of one connection sum to its hop count plus
/// one, so the total reduces to `Σ w·(dist + 1)`. [`congestion_map`] keeps
/// the per-core breakdown.
pub fn avg_congestion(gp: &Hypergraph, gamma: &Placement) -> Result<f64> {
    let mut acc = CompensatedSum::new();
    for (w, dist, _, _) in connections(gp, gamma)? {
        acc.add(w * (dist + 1) as f64);
    }
    Ok(acc.value())
}

/// Expected spike traversals per core, indexed `y * width + x`.
pub fn congestion_map(gp: &Hypergraph, gamma: &Placement) -> Result<Vec<f64>> {
    let width = gamma.width();
    let mut cells = vec![CompensatedSum::new(); width * gamma.height()];
    for (w, _, s, t) in connections(gp, gamma)? {
        for h in rect(s, t) {
            cells[h.y * width + h.x].add(w * tau(h, s, t));
        }
    }
    Ok(cells.iter().map(CompensatedSum::value).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hgraph::Hyperedge;

    fn p(x: usize, y: usize) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn rect_and_distance() {
        assert_eq!(manhattan(p(0, 0), p(2, 3)), 5);
        assert_eq!(rect(p(0, 0), p(0, 0)), vec![p(0, 0)]);
        assert_eq!(rect(p(1, 1), p(0, 0)).len(), 4);
    }

    #[test]
    fn tau_values() {
        assert_eq!(tau(p(0, 0), p(0, 0), p(3, 2)), 1.0);
        assert_eq!(tau(p(3, 2), p(0, 0), p(3, 2)), 1.0);
        assert_eq!(tau(p(4, 0), p(0, 0), p(3, 2)), 0.0);
        assert!((tau(p(0, 1), p(0, 0), p(1, 1)) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn tau_log_space_sums_to_one_per_antidiagonal() {
        // every minimal path crosses each anti-diagonal exactly once
        let (s, d) = (p(0, 0), p(600, 600));
        let total: f64 = (0..=600).map(|x| tau(p(x, 600 - x), s, d)).sum();
        assert!((total - 1.0).abs() < 1e-9, "{total}");
        let mid = tau(p(300, 300), s, d);
        assert!(mid > 0.0 && mid < 1.0);
    }

    #[test]
    fn hand_evaluated_costs() {
        let hw = HardwareConfig::desk();
        let gp = Hypergraph::new(2, vec![Hyperedge::new(0, vec![1], 1.0)]).unwrap();
        let gamma = Placement::new(vec![p(0, 0), p(1, 1)], 8, 8).unwrap();
        assert!((energy(&gp, &gamma, &hw).unwrap() - 12.1).abs() < 1e-12);

        let gp = Hypergraph::new(2, vec![Hyperedge::new(0, vec![1], 2.0)]).unwrap();
        let gamma = Placement::new(vec![p(0, 0), p(1, 0)], 8, 8).unwrap();
        assert!((avg_latency(&gp, &gamma, &hw).unwrap() - 9.5).abs() < 1e-12);
        assert!((avg_congestion(&gp, &gamma).unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn empty_graph_costs_nothing() {
        let hw = HardwareConfig::desk();
        let gp = Hypergraph::empty(1);
        let gamma = Placement::new(vec![p(0, 0)], 8, 8).unwrap();
        assert_eq!(energy(&gp, &gamma, &hw).unwrap(), 0.0);
        assert_eq!(avg_latency(&gp, &gamma, &hw).unwrap(), 0.0);
        assert_eq!(avg_congestion(&gp, &gamma).unwrap(), 0.0);
    }

    #[test]
    fn unplaced_partition_is_an_error() {
        let hw = HardwareConfig::desk();
        let gp = Hypergraph::new(2, vec![Hyperedge::new(0, vec![1], 1.0)]).unwrap();
        let gamma = Placement::new(vec![p(0, 0)], 8, 8).unwrap();
        assert!(energy(&gp, &gamma, &hw).is_err());
    }
}
