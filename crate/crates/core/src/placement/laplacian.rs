use crate::hgraph::{Hypergraph, PartId};

/// Normalized Laplacian of the clique expansion of a partition hypergraph.
///
/// Every hyperedge links each pair of its pins `{s} ∪ D` with its weight.
/// Partitions touched by no hyperedge have zero degree and are left out; the
/// matrix rows follow [`members`](Self::members).
#[derive(Debug, Clone, PartialEq)]
pub struct SparseLaplacian {
    members: Vec<PartId>,
    /// Row of every partition, `None` for excluded ones.
    row_of: Vec<Option<usize>>,
    wdeg: Vec<f64>,
    row_start: Vec<usize>,
    cols: Vec<usize>,
    /// Off-diagonal entries; the diagonal is 1.
    vals: Vec<f64>,
}

pub fn build_laplacian(gp: &Hypergraph) -> SparseLaplacian {
    let n = gp.num_nodes();
    let mut triplets: Vec<(usize, usize, f64)> = Vec::new();
    let mut pins: Vec<PartId> = Vec::new();
    for e in gp.hedges() {
        pins.clear();
        pins.extend(e.pins());
        pins.sort_unstable();
        pins.dedup();
        for (i, &a) in pins.iter().enumerate() {
            for &b in &pins[i + 1..] {
                triplets.push((a, b, e.weight));
                triplets.push((b, a, e.weight));
            }
        }
    }
    triplets.sort_by_key(|t| (t.0, t.1));
    let mut merged: Vec<(usize, usize, f64)> = Vec::with_capacity(triplets.len());
    for (a, b, w) in triplets {
        match merged.last_mut() {
            Some(last) if (last.0, last.1) == (a, b) => last.2 += w,
            _ => merged.push((a, b, w)),
        }
    }
    let mut degree = vec![0.0f64; n];
    for &(a, _, w) in &merged {
        degree[a] += w;
    }

    let members: Vec<PartId> = if n == 1 {
        vec![0]
    } else {
        (0..n).filter(|&p| degree[p] > 0.0).collect()
    };
    let mut row_of = vec![None; n];
    for (r, &p) in members.iter().enumerate() {
        row_of[p] = Some(r);
    }
    let wdeg: Vec<f64> = members.iter().map(|&p| degree[p]).collect();
    let mut row_start = vec![0usize; members.len() + 1];
    let mut cols = Vec::with_capacity(merged.len());
    let mut vals = Vec::with_capacity(merged.len());
    for &(a, b, w) in &merged {
        let (ra, rb) = (row_of[a].unwrap(), row_of[b].unwrap());
        row_start[ra + 1] += 1;
        cols.push(rb);
        vals.push(-w / (degree[a] * degree[b]).sqrt());
    }
    for r in 0..members.len() {
        row_start[r + 1] += row_start[r];
    }
    SparseLaplacian {
        members,
        row_of,
        wdeg,
        row_start,
        cols,
        vals,
    }
}

impl SparseLaplacian {
    pub fn dim(&self) -> usize {
        self.members.len()
    }

    /// Partition id of every matrix row.
    pub fn members(&self) -> &[PartId] {
        &self.members
    }

    pub fn row_of(&self, p: PartId) -> Option<usize> {
        self.row_of[p]
    }

    /// Weighted degree of every row in the clique expansion.
    pub fn wdeg(&self) -> &[f64] {
        &self.wdeg
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 1.0;
        }
        let row = self.row_start[i]..self.row_start[i + 1];
        self.cols[row.clone()]
            .binary_search(&j)
            .map_or(0.0, |k| self.vals[row.start + k])
    }

    /// Off-diagonal entries of row `i` as `(column, value)`.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let row = self.row_start[i]..self.row_start[i + 1];
        self.cols[row.clone()]
            .iter()
            .copied()
            .zip(self.vals[row].iter().copied())
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn mul(&self, x: &[f64], y: &mut [f64]) {
        for i in 0..self.dim() {
            let mut acc = x[i];
            for (j, v) in self.row(i) {
                acc += v * x[j];
            }
            y[i] = acc;
        }
    }

    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        let mut y = vec![0.0; self.dim()];
        self.mul(x, &mut y);
        x.iter().zip(&y).map(|(a, b)| a * b).sum()
    }

    /// Connected components of the nonzero pattern, as a label per row.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let n = self.dim();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            stack.push(start);
            while let Some(i) = stack.pop() {
                for (j, _) in self.row(i) {
                    if label[j] == usize::MAX {
                        label[j] = count;
                        stack.push(j);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    /// Orthonormal basis of the null space: `D^{1/2}·1` on each component.
    pub fn kernel(&self) -> Vec<Vec<f64>> {
        let (count, label) = self.components();
        let mut basis = vec![vec![0.0; self.dim()]; count];
        for (i, &c) in label.iter().enumerate() {
            // the lone-partition matrix has zero degree but a unit entry
            basis[c][i] = if self.wdeg[i] > 0.0 { self.wdeg[i].sqrt() } else { 0.0 };
        }
        basis.retain(|v| v.iter().any(|&x| x != 0.0));
        for v in &mut basis {
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter_mut().for_each(|x| *x /= norm);
        }
        basis
    }
}

/// `tr(Γᵀ 𝓛 Γ)` for coordinates given per matrix row.
pub fn smoothness(l: &SparseLaplacian, coords: &[[f64; 2]]) -> f64 {
    (0..2)
        .map(|k| {
            let col: Vec<f64> = coords.iter().map(|c| c[k]).collect();
            l.quadratic_form(&col)
        })
        .sum()
}
