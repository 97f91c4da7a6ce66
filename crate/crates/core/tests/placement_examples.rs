mod common;

use common::{dense_laplacian, random_partition_graph, random_placement, sorted_eigenvalues};
use snnmap::costmodel::{avg_latency, energy};
use snnmap::partitioning::NodeOrder;
use snnmap::placement::{
    build_laplacian, force, force_directed_refine, global_potential, hilbert_place,
    min_distance_place, potential, smallest_nonzero_eigenpairs, smoothness, spectral_place,
    HilbertCurve, RefineOptions, STEPS,
};
use snnmap::{HardwareConfig, Hyperedge, Hypergraph, IndexedHypergraph, Placement, Point};

fn p(x: usize, y: usize) -> Point {
    Point::new(x, y)
}

fn lattice(w: usize, h: usize) -> HardwareConfig {
    HardwareConfig::with_limits(w, h, 16, 64, 256)
}

#[test]
fn hilbert_order_one() {
    let c = HilbertCurve::new(1);
    let pts: Vec<Point> = (0..4).map(|i| c.point(i)).collect();
    assert_eq!(pts, vec![p(0, 0), p(0, 1), p(1, 1), p(1, 0)]);
    let gamma = hilbert_place(&NodeOrder::natural(1), &HardwareConfig::desk()).unwrap();
    assert_eq!(gamma.coords(), &[p(0, 0)]);
}

#[test]
fn hilbert_placement_steps_to_neighbours() {
    for k in 1..=3u32 {
        let side = 1usize << k;
        let gamma = hilbert_place(&NodeOrder::natural(side * side), &lattice(side, side)).unwrap();
        for w in gamma.coords().windows(2) {
            assert_eq!(w[0].manhattan(w[1]), 1);
        }
    }
}

#[test]
fn laplacian_of_a_pair() {
    let gp = Hypergraph::new(2, vec![Hyperedge::new(0, vec![1], 1.0)]).unwrap();
    let l = build_laplacian(&gp);
    assert_eq!(l.get(0, 1), -1.0);
    assert_eq!(l.get(1, 0), -1.0);
    let (_, dense) = dense_laplacian(&gp);
    let ev = sorted_eigenvalues(dense);
    assert!(ev[0].abs() < 1e-12 && (ev[1] - 2.0).abs() < 1e-12);
}

#[test]
fn laplacian_of_one_partition() {
    let l = build_laplacian(&Hypergraph::empty(1));
    assert_eq!(l.dim(), 1);
    assert_eq!(l.get(0, 0), 1.0);
}

#[test]
fn laplacian_is_symmetric_and_matches_dense_oracle() {
    for seed in 0..10 {
        let gp = random_partition_graph(15, 20, seed);
        let l = build_laplacian(&gp);
        let (rows, dense) = dense_laplacian(&gp);
        assert_eq!(l.members(), rows.as_slice());
        for i in 0..l.dim() {
            for j in 0..l.dim() {
                assert_eq!(l.get(i, j), l.get(j, i));
                assert!((l.get(i, j) - dense[(i, j)]).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn path_of_three() {
    let gp = Hypergraph::new(
        3,
        vec![Hyperedge::new(0, vec![1], 1.0), Hyperedge::new(1, vec![2], 1.0)],
    )
    .unwrap();
    let e = smallest_nonzero_eigenpairs(&build_laplacian(&gp)).unwrap();
    assert!((e.eigenvalues[0] - 1.0).abs() < 1e-6);
    assert!((e.eigenvalues[1] - 2.0).abs() < 1e-6);
}

#[test]
fn disconnected_pairs_skip_the_second_zero() {
    let gp = Hypergraph::new(
        4,
        vec![Hyperedge::new(0, vec![1], 1.0), Hyperedge::new(2, vec![3], 1.0)],
    )
    .unwrap();
    let e = smallest_nonzero_eigenpairs(&build_laplacian(&gp)).unwrap();
    let (_, dense) = dense_laplacian(&gp);
    let nonzero: Vec<f64> = sorted_eigenvalues(dense).into_iter().filter(|v| *v > 1e-8).collect();
    assert!((e.eigenvalues[0] - nonzero[0]).abs() < 1e-6);
    assert!((e.eigenvalues[1] - nonzero[1]).abs() < 1e-6);
}

#[test]
fn residuals_on_fifty_partitions() {
    let gp = random_partition_graph(50, 80, 3);
    let l = build_laplacian(&gp);
    let e = smallest_nonzero_eigenpairs(&l).unwrap();
    let mut y = vec![0.0; l.dim()];
    for (axis, lambda) in e.eigenvalues.iter().enumerate() {
        let u: Vec<f64> = e.coords.iter().map(|c| c[axis]).collect();
        l.mul(&u, &mut y);
        let r: f64 = y.iter().zip(&u).map(|(a, b)| (a - lambda * b).powi(2)).sum::<f64>().sqrt();
        assert!(r <= 1e-6, "residual {r}");
    }
}

#[test]
fn smoothness_identities() {
    let gp = random_partition_graph(12, 20, 4);
    let l = build_laplacian(&gp);
    let root: Vec<[f64; 2]> = l.wdeg().iter().map(|d| [d.sqrt(), d.sqrt()]).collect();
    assert!(smoothness(&l, &root).abs() < 1e-9);
    let e = smallest_nonzero_eigenpairs(&l).unwrap();
    let s = smoothness(&l, &e.coords);
    assert!((s - e.eigenvalues[0] - e.eigenvalues[1]).abs() < 1e-6, "{s}");
}

#[test]
fn spectral_pair_is_adjacent_near_center() {
    let gp = Hypergraph::new(2, vec![Hyperedge::new(0, vec![1], 1.0)]).unwrap();
    let g = spectral_place(&gp, &HardwareConfig::desk()).unwrap();
    assert_eq!(g.coord(0).manhattan(g.coord(1)), 1);
    for c in g.coords() {
        assert!((3..=4).contains(&c.x) && (3..=4).contains(&c.y), "{c:?}");
    }
}

#[test]
fn spectral_clique_is_compact() {
    let hedges = (0..4)
        .map(|s| Hyperedge::new(s, (0..4).filter(|&d| d != s).collect(), 1.0))
        .collect();
    let g = spectral_place(&Hypergraph::new(4, hedges).unwrap(), &HardwareConfig::desk()).unwrap();
    for a in g.coords() {
        for b in g.coords() {
            assert!(a.manhattan(*b) <= 3);
        }
    }
}

#[test]
fn spectral_fills_a_full_lattice() {
    let gp = random_partition_graph(16, 30, 5);
    let g = spectral_place(&gp, &lattice(4, 4)).unwrap();
    let cells: std::collections::BTreeSet<Point> = g.coords().iter().copied().collect();
    assert_eq!(cells.len(), 16);
}

#[test]
fn potential_examples() {
    let gp = IndexedHypergraph::new(Hypergraph::new(2, vec![Hyperedge::new(0, vec![1], 1.5)]).unwrap());
    let gamma = Placement::new(vec![p(0, 0), p(1, 1)], 8, 8).unwrap();
    assert_eq!(potential(0, &gamma, &gp), 0.0);
    assert_eq!(potential(1, &gamma, &gp), 3.0);
    let looped = IndexedHypergraph::new(Hypergraph::new(1, vec![Hyperedge::new(0, vec![0], 0.7)]).unwrap());
    let one = Placement::new(vec![p(2, 2)], 8, 8).unwrap();
    assert_eq!(potential(0, &one, &looped), 0.7);
}

#[test]
fn force_examples() {
    let gp = IndexedHypergraph::new(Hypergraph::new(3, vec![Hyperedge::new(0, vec![1], 2.0)]).unwrap());
    let gamma = Placement::new(vec![p(1, 4), p(4, 4), p(6, 6)], 8, 8).unwrap();
    for v in STEPS {
        assert_eq!(force(2, v, &gamma, &gp), 0.0);
    }
    assert_eq!(force(1, (-1, 0), &gamma, &gp), 2.0);
    assert_eq!(force(1, (1, 0), &gamma, &gp), -force(1, (-1, 0), &gamma, &gp));
}

#[test]
fn optimal_pair_is_left_alone() {
    let gp = IndexedHypergraph::new(Hypergraph::new(2, vec![Hyperedge::new(0, vec![1], 1.0)]).unwrap());
    let gamma = Placement::new(vec![p(3, 3), p(4, 3)], 8, 8).unwrap();
    let (out, trace) = force_directed_refine(&gamma, &gp, &RefineOptions::default());
    assert_eq!(out, gamma);
    assert_eq!(trace.moves, 0);
}

#[test]
fn destination_walks_to_its_source() {
    let gp = IndexedHypergraph::new(Hypergraph::new(2, vec![Hyperedge::new(0, vec![1], 1.0)]).unwrap());
    let gamma = Placement::new(vec![p(0, 0), p(2, 2)], 3, 3).unwrap();
    let (out, _) = force_directed_refine(&gamma, &gp, &RefineOptions::default());
    assert_eq!(out.coord(0).manhattan(out.coord(1)), 1);
    assert!(global_potential(&out, &gp) < global_potential(&gamma, &gp));
}

#[test]
fn refinement_never_raises_energy_or_latency() {
    let hw = HardwareConfig::desk();
    for seed in 0..20 {
        let gp = IndexedHypergraph::new(random_partition_graph(24, 30, seed));
        let gamma = random_placement(24, 8, 8, seed);
        let (out, _) = force_directed_refine(&gamma, &gp, &RefineOptions::default());
        assert!(energy(&gp, &out, &hw).unwrap() <= energy(&gp, &gamma, &hw).unwrap());
        assert!(avg_latency(&gp, &out, &hw).unwrap() <= avg_latency(&gp, &gamma, &hw).unwrap());
    }
}

#[test]
fn min_distance_examples() {
    let hw = lattice(8, 8);
    let single = Hypergraph::new(2, vec![Hyperedge::new(0, vec![1], 1.0)]).unwrap();
    let g = min_distance_place(&single, &hw, &NodeOrder::natural(2)).unwrap();
    assert_eq!(g.coord(0), p(4, 4));

    let chain = Hypergraph::new(
        3,
        vec![Hyperedge::new(0, vec![1], 1.0), Hyperedge::new(1, vec![2], 1.0)],
    )
    .unwrap();
    let g = min_distance_place(&chain, &lattice(4, 4), &NodeOrder::natural(3)).unwrap();
    assert_eq!(g.coord(0).manhattan(g.coord(1)), 1);
    assert_eq!(g.coord(1).manhattan(g.coord(2)), 1);

    let two_inputs = Hypergraph::new(
        3,
        vec![Hyperedge::new(0, vec![2], 1.0), Hyperedge::new(1, vec![2], 1.0)],
    )
    .unwrap();
    let g = min_distance_place(&two_inputs, &lattice(5, 5), &NodeOrder::natural(3)).unwrap();
    // ⌊(i + 0.5)·5/2⌋ along the central row
    assert_eq!((g.coord(0), g.coord(1)), (p(1, 2), p(3, 2)));
}
