use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SparseLaplacian;
use crate::error::{Error, Result};

/// Eigenvalues below this count as zero.
pub const ZERO_THRESHOLD: f64 = 1e-8;
/// Residual norm accepted for a unit eigenvector.
pub const RESIDUAL_TOLERANCE: f64 = 1e-6;
const TARGET_RESIDUAL: f64 = 1e-10;
const MAX_KRYLOV: usize = 160;

/// The two lowest non-trivial eigenpairs of a normalized Laplacian.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralEmbedding {
    /// `(u₁, u₂)` of every matrix row.
    pub coords: Vec<[f64; 2]>,
    pub eigenvalues: [f64; 2],
    pub residuals: [f64; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    /// Unit norm, first significant component positive.
    pub vector: Vec<f64>,
    pub residual: f64,
}

/// Smallest eigenvalues above [`ZERO_THRESHOLD`] and their eigenvectors.
pub fn smallest_nonzero_eigenpairs(l: &SparseLaplacian) -> Result<SpectralEmbedding> {
    if l.dim() < 3 {
        return Err(Error::Undefined(format!(
            "spectral embedding needs at least 3 partitions, got {}",
            l.dim()
        )));
    }
    let pairs = lowest_modes(l, 2, budget(l.dim()))?;
    if pairs.len() < 2 {
        return Err(Error::Undefined(
            "fewer than two non-trivial eigenmodes".into(),
        ));
    }
    Ok(SpectralEmbedding {
        coords: (0..l.dim())
            .map(|i| [pairs[0].vector[i], pairs[1].vector[i]])
            .collect(),
        eigenvalues: [pairs[0].value, pairs[1].value],
        residuals: [pairs[0].residual, pairs[1].residual],
    })
}

/// Matrix-vector product budget.
pub fn budget(dim: usize) -> usize {
    (10 * dim).max(64 * 3)
}

/// Up to `count` lowest non-zero eigenpairs, fewer when the space orthogonal
/// to the kernel is smaller.
///
/// Runs restarted Lanczos with full reorthogonalization on `2I − 𝓛`, which
/// turns the low end of the spectrum into the dominant one. The kernel and
/// every converged vector are deflated, so repeated eigenvalues come out
/// one vector at a time.
pub fn lowest_modes(l: &SparseLaplacian, count: usize, max_matvecs: usize) -> Result<Vec<EigenPair>> {
    let n = l.dim();
    let mut locked = l.kernel();
    let mut found = Vec::new();
    let mut matvecs = 0;
    let mut y = vec![0.0; n];
    while found.len() < count && locked.len() < n {
        let Some(mut v) = start_vector(n, &locked) else {
            break;
        };
        let krylov = (n - locked.len()).min(MAX_KRYLOV);
        loop {
            let mut u = lanczos(l, &v, &locked, krylov, &mut matvecs);
            orthogonalize(&mut u, &locked);
            if normalize(&mut u) == 0.0 {
                break;
            }
            l.mul(&u, &mut y);
            matvecs += 1;
            let value = dot(&u, &y);
            let residual = y
                .iter()
                .zip(&u)
                .map(|(a, b)| (a - value * b).powi(2))
                .sum::<f64>()
                .sqrt();
            let out_of_budget = matvecs >= max_matvecs;
            if residual <= TARGET_RESIDUAL || (out_of_budget && residual <= RESIDUAL_TOLERANCE) {
                fix_sign(&mut u);
                locked.push(u.clone());
                if value > ZERO_THRESHOLD {
                    found.push(EigenPair {
                        value,
                        vector: u,
                        residual,
                    });
                }
                break;
            }
            if out_of_budget {
                return Err(Error::SolverFailed { matvecs });
            }
            v = u;
        }
    }
    Ok(found)
}

/// `steps` Lanczos iterations from `v` on `2I − 𝓛`, deflated by `locked`.
/// Returns the top Ritz vector.
fn lanczos(
    l: &SparseLaplacian,
    v: &[f64],
    locked: &[Vec<f64>],
    steps: usize,
    matvecs: &mut usize,
) -> Vec<f64> {
    let n = l.dim();
    let mut basis: Vec<Vec<f64>> = vec![v.to_vec()];
    let (mut alpha, mut beta) = (Vec::new(), Vec::new());
    let mut w = vec![0.0; n];
    for j in 0..steps {
        l.mul(&basis[j], &mut w);
        *matvecs += 1;
        for (wi, vi) in w.iter_mut().zip(&basis[j]) {
            *wi = 2.0 * vi - *wi;
        }
        alpha.push(dot(&w, &basis[j]));
        for _ in 0..2 {
            orthogonalize(&mut w, locked);
            orthogonalize(&mut w, &basis);
        }
        let b = normalize(&mut w);
        if j + 1 == steps || b < 1e-12 {
            break;
        }
        beta.push(b);
        basis.push(w.clone());
    }
    let m = alpha.len();
    let mut t = vec![0.0; m * m];
    for i in 0..m {
        t[i * m + i] = alpha[i];
        if i + 1 < m {
            t[i * m + i + 1] = beta[i];
            t[(i + 1) * m + i] = beta[i];
        }
    }
    let (values, vectors) = jacobi_eigen(&mut t, m);
    let top = (0..m)
        .max_by(|&a, &b| values[a].total_cmp(&values[b]).then(b.cmp(&a)))
        .unwrap();
    let mut u = vec![0.0; n];
    for (k, q) in basis.iter().take(m).enumerate() {
        let c = vectors[k * m + top];
        for (ui, qi) in u.iter_mut().zip(q) {
            *ui += c * qi;
        }
    }
    u
}

/// Cyclic Jacobi on a dense symmetric `m × m` matrix stored row-major.
/// Returns eigenvalues and the eigenvector matrix (columns).
pub fn jacobi_eigen(a: &mut [f64], m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut v = vec![0.0; m * m];
    for i in 0..m {
        v[i * m + i] = 1.0;
    }
    for _sweep in 0..100 {
        let off: f64 = (0..m)
            .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * m + j].powi(2))
            .sum();
        let scale: f64 = (0..m).map(|i| a[i * m + i].powi(2)).sum::<f64>() + off;
        if off <= 1e-30 * scale.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..m {
            for q in p + 1..m {
                let apq = a[p * m + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * m + q] - a[p * m + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..m {
                    let (akp, akq) = (a[k * m + p], a[k * m + q]);
                    a[k * m + p] = c * akp - s * akq;
                    a[k * m + q] = s * akp + c * akq;
                }
                for k in 0..m {
                    let (apk, aqk) = (a[p * m + k], a[q * m + k]);
                    a[p * m + k] = c * apk - s * aqk;
                    a[q * m + k] = s * apk + c * aqk;
                }
                for k in 0..m {
                    let (vkp, vkq) = (v[k * m + p], v[k * m + q]);
                    v[k * m + p] = c * vkp - s * vkq;
                    v[k * m + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    ((0..m).map(|i| a[i * m + i]).collect(), v)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) -> f64 {
    let norm = dot(v, v).sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    norm
}

fn orthogonalize(v: &mut [f64], against: &[Vec<f64>]) {
    for q in against {
        let c = dot(v, q);
        for (vi, qi) in v.iter_mut().zip(q) {
            *vi -= c * qi;
        }
    }
}

/// Deterministic start vector with no special structure, made orthogonal
/// to `locked`.
fn start_vector(n: usize, locked: &[Vec<f64>]) -> Option<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(locked.len() as u64);
    for _ in 0..4 {
        let mut v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        for _ in 0..2 {
            orthogonalize(&mut v, locked);
        }
        if normalize(&mut v) > 1e-8 {
            return Some(v);
        }
    }
    None
}

fn fix_sign(v: &mut [f64]) {
    let max = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-9 * max) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}
