use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hgraph::{Hypergraph, IndexedHypergraph, NodeId};

pub const DEFAULT_SAMPLES: usize = 10_000;

const UNREACHED: u32 = u32::MAX;

fn bfs(g: &IndexedHypergraph, from: NodeId, dist: &mut Vec<u32>, queue: &mut VecDeque<NodeId>) {
    dist.clear();
    dist.resize(g.num_nodes(), UNREACHED);
    dist[from] = 0;
    queue.clear();
    queue.push_back(from);
    while let Some(u) = queue.pop_front() {
        for &e in g.outbound(u) {
            for &v in &g.hedge(e).destinations {
                if dist[v] == UNREACHED {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
}

/// Mean hop distance over reachable ordered node pairs.
///
/// With `samples ≥ n(n−1)` every pair is measured. Otherwise each sample
/// draws a random source, then a random node reachable from it.
pub fn avg_path_length(g: &IndexedHypergraph, samples: usize, seed: u64) -> Result<f64> {
    let n = g.num_nodes();
    let none = || Error::Undefined("no reachable node pairs".into());
    if g.hedges().iter().all(|e| e.destinations.is_empty()) {
        return Err(none());
    }
    let (mut dist, mut queue) = (Vec::new(), VecDeque::new());
    let (mut total, mut count) = (0u64, 0u64);
    if samples as u128 >= n as u128 * (n as u128 - 1) {
        for s in 0..n {
            bfs(g, s, &mut dist, &mut queue);
            for (t, &d) in dist.iter().enumerate() {
                if t != s && d != UNREACHED {
                    total += u64::from(d);
                    count += 1;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut reachable = Vec::new();
        let mut misses = 0usize;
        while (count as usize) < samples {
            let s = rng.random_range(0..n);
            bfs(g, s, &mut dist, &mut queue);
            reachable.clear();
            reachable.extend((0..n).filter(|&t| t != s && dist[t] != UNREACHED));
            if reachable.is_empty() {
                misses += 1;
                if misses > 100 * samples.max(1) {
                    break;
                }
                continue;
            }
            let t = reachable[rng.random_range(0..reachable.len())];
            total += u64::from(dist[t]);
            count += 1;
        }
    }
    if count == 0 {
        return Err(none());
    }
    Ok(total as f64 / count as f64)
}

/// Jaccard overlap of two sorted-or-unsorted destination lists.
pub fn jaccard(a: &[NodeId], b: &[NodeId]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    let (mut i, mut j, mut common) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    let union = a.len() + b.len() - common;
    if union == 0 {
        1.0
    } else {
        common as f64 / union as f64
    }
}

/// Mean Jaccard overlap of destination sets over hyperedge pairs, all pairs
/// when `samples` covers them, otherwise uniformly drawn distinct pairs.
pub fn avg_hedge_overlap(g: &Hypergraph, samples: usize, seed: u64) -> Result<f64> {
    let m = g.num_hedges();
    if m < 2 {
        return Err(Error::Undefined(format!(
            "overlap needs at least 2 hyperedges, found {m}"
        )));
    }
    let dst = |i: usize| &g.hedge(i).destinations[..];
    let mut total = 0.0;
    let mut count = 0usize;
    if samples as u128 >= m as u128 * (m as u128 - 1) / 2 {
        for i in 0..m {
            for j in i + 1..m {
                total += jaccard(dst(i), dst(j));
                count += 1;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let i = rng.random_range(0..m);
            let mut j = rng.random_range(0..m - 1);
            if j >= i {
                j += 1;
            }
            total += jaccard(dst(i), dst(j));
            count += 1;
        }
    }
    Ok(total / count as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hgraph::Hyperedge;

    fn chain() -> IndexedHypergraph {
        IndexedHypergraph::new(
            Hypergraph::new_snn(
                3,
                vec![Hyperedge::new(0, vec![1], 1.0), Hyperedge::new(1, vec![2], 1.0)],
            )
            .unwrap(),
        )
    }

    #[test]
    fn chain_path_length() {
        let v = avg_path_length(&chain(), DEFAULT_SAMPLES, 0).unwrap();
        assert!((v - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn star_path_length() {
        let g = Hypergraph::new_snn(4, vec![Hyperedge::new(0, vec![1, 2, 3], 1.0)]).unwrap();
        let g = IndexedHypergraph::new(g);
        assert_eq!(avg_path_length(&g, DEFAULT_SAMPLES, 0).unwrap(), 1.0);
        assert_eq!(avg_path_length(&g, 2, 9).unwrap(), 1.0);
    }

    #[test]
    fn sampled_path_length_is_seeded() {
        let g = chain();
        assert_eq!(avg_path_length(&g, 3, 5).unwrap(), avg_path_length(&g, 3, 5).unwrap());
        assert!(avg_path_length(&IndexedHypergraph::new(Hypergraph::empty(3)), 10, 0).is_err());
    }

    #[test]
    fn overlap_values() {
        assert_eq!(jaccard(&[1, 2], &[2, 1]), 1.0);
        assert_eq!(jaccard(&[1], &[2]), 0.0);
        let g = Hypergraph::new_snn(
            5,
            vec![
                Hyperedge::new(0, vec![1, 2], 1.0),
                Hyperedge::new(1, vec![2, 3], 1.0),
                Hyperedge::new(2, vec![3, 4], 1.0),
            ],
        )
        .unwrap();
        // pairs: 1/3, 0, 1/3
        assert!((avg_hedge_overlap(&g, 100, 0).unwrap() - 2.0 / 9.0).abs() < 1e-12);
        assert!(avg_hedge_overlap(&Hypergraph::empty(2), 10, 0).is_err());
    }
}
