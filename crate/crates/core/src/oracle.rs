//! Dense brute-force reference computations.
//!
//! Nothing here calls into [`crate::jacobi`]: the eigensolver is a cyclic
//! two-sided rotation (Jacobi) method on the full adjacency matrix, and
//! matrix polynomials are evaluated on dense matrices. Agreement with the
//! tridiagonal route is therefore independent evidence.

use std::ops::{Index, IndexMut};

use crate::drg::{degree_sequence, IntersectionSequence};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Dense paths refuse graphs larger than this.
pub const MAX_DENSE_VERTICES: usize = 2000;

const MAX_SWEEPS: usize = 100;
const MAX_POWER_ITERATIONS: usize = 100_000;

/// Square row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    n: usize,
    data: Vec<T>,
}

pub type IntMatrix = DenseMatrix<i64>;
pub type RealMatrix = DenseMatrix<f64>;

impl<T: Copy + Default> DenseMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![T::default(); n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn map<U: Copy + Default>(&self, f: impl Fn(T) -> U) -> DenseMatrix<U> {
        DenseMatrix {
            n: self.n,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }
}

impl<T> Index<(usize, usize)> for DenseMatrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for DenseMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for l in 0..n {
                let x = self[(i, l)];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    let term = x
                        .checked_mul(other[(l, j)])
                        .ok_or(Error::Overflow("dense product"))?;
                    out[(i, j)] = out[(i, j)]
                        .checked_add(term)
                        .ok_or(Error::Overflow("dense product"))?;
                }
            }
        }
        Ok(out)
    }

    pub fn row_sums(&self) -> Vec<i64> {
        (0..self.n).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }
}

impl RealMatrix {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (x, y)| m.max((x - y).abs()))
    }

    pub fn mat_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

fn check_size(g: &Graph) -> Result<()> {
    if g.vertex_count() > MAX_DENSE_VERTICES {
        return Err(Error::TooLarge {
            size: g.vertex_count(),
            limit: MAX_DENSE_VERTICES,
        });
    }
    Ok(())
}

/// All-pairs distance table.
pub fn distance_table(g: &Graph) -> Result<IntMatrix> {
    check_size(g)?;
    let n = g.vertex_count();
    let mut table = IntMatrix::zeros(n);
    for i in 0..n {
        for (j, d) in g.distances_from(i).into_iter().enumerate() {
            table[(i, j)] = d as i64;
        }
    }
    Ok(table)
}

/// Dense integer matrices `A_0, ..., A_diam`.
pub fn dense_distance_matrices(g: &Graph) -> Result<Vec<IntMatrix>> {
    let table = distance_table(g)?;
    let n = g.vertex_count();
    let diam = table.data.iter().copied().max().unwrap_or(0) as usize;
    let mut out = vec![IntMatrix::zeros(n); diam + 1];
    for i in 0..n {
        for j in 0..n {
            out[table[(i, j)] as usize][(i, j)] = 1;
        }
    }
    Ok(out)
}

pub fn adjacency_matrix(g: &Graph) -> Result<IntMatrix> {
    check_size(g)?;
    let mut a = IntMatrix::zeros(g.vertex_count());
    for (u, v) in g.edges() {
        a[(u, v)] = 1;
        a[(v, u)] = 1;
    }
    Ok(a)
}

/// Entry where the dense integer recurrence fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DenseMismatch {
    pub k: usize,
    pub i: usize,
    pub j: usize,
}

/// `A A_k == a_{k+1} A_{k+1} + alpha_k A_k + b_k A_{k-1}` by full integer
/// matrix products, `0 <= k <= d`.
pub fn dense_recurrence_check(
    g: &Graph,
    is: &IntersectionSequence,
) -> Result<std::result::Result<(), DenseMismatch>> {
    let mats = dense_distance_matrices(g)?;
    let n = g.vertex_count();
    let d = is.diameter();
    let zero = IntMatrix::zeros(n);
    let get = |k: isize| -> &IntMatrix {
        if k < 0 {
            &zero
        } else {
            mats.get(k as usize).unwrap_or(&zero)
        }
    };
    let a = get(1);
    for k in 0..=d {
        let lhs = a.mul(get(k as isize))?;
        let (ca, cs, cb) = (is.a(k + 1) as i64, is.alpha_at(k), is.b(k) as i64);
        let (up, same, down) = (get(k as isize + 1), get(k as isize), get(k as isize - 1));
        for i in 0..n {
            for j in 0..n {
                let rhs = ca * up[(i, j)] + cs * same[(i, j)] + cb * down[(i, j)];
                if lhs[(i, j)] != rhs {
                    return Ok(Err(DenseMismatch { k, i, j }));
                }
            }
        }
    }
    Ok(Ok(()))
}

/// Eigen-decomposition of a dense symmetric matrix.
#[derive(Debug, Clone)]
pub struct DenseEigen {
    /// Sorted ascending, with repetition.
    pub values: Vec<f64>,
    /// Column `c` is the unit eigenvector for `values[c]`.
    pub vectors: RealMatrix,
    /// `(mean value, multiplicity)` after clustering.
    pub clusters: Vec<(f64, usize)>,
}

/// Cyclic Jacobi rotations until the off-diagonal mass vanishes.
///
/// `tol` bounds the max-entry reconstruction residual `‖M - QΛQᵀ‖`.
pub fn dense_symmetric_eigen(m: &RealMatrix, tol: f64) -> Result<DenseEigen> {
    let n = m.size();
    if n > MAX_DENSE_VERTICES {
        return Err(Error::TooLarge {
            size: n,
            limit: MAX_DENSE_VERTICES,
        });
    }
    let mut a = m.clone();
    let mut q = RealMatrix::identity(n);
    let frob = a.data.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum();
        if off.sqrt() <= 1e-15 * frob.max(f64::MIN_POSITIVE) {
            converged = true;
            break;
        }
        for p in 0..n {
            for r in p + 1..n {
                let apr = a[(p, r)];
                if apr == 0.0 {
                    continue;
                }
                let theta = (a[(r, r)] - a[(p, p)]) / (2.0 * apr);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akr) = (a[(k, p)], a[(k, r)]);
                    a[(k, p)] = c * akp - s * akr;
                    a[(k, r)] = s * akp + c * akr;
                }
                for k in 0..n {
                    let (apk, ark) = (a[(p, k)], a[(r, k)]);
                    a[(p, k)] = c * apk - s * ark;
                    a[(r, k)] = s * apk + c * ark;
                }
                for k in 0..n {
                    let (qkp, qkr) = (q[(k, p)], q[(k, r)]);
                    q[(k, p)] = c * qkp - s * qkr;
                    q[(k, r)] = s * qkp + c * qkr;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].total_cmp(&a[(y, y)]));
    let values: Vec<f64> = order.iter().map(|&c| a[(c, c)]).collect();
    let mut vectors = RealMatrix::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for k in 0..n {
            vectors[(k, new_col)] = q[(k, old_col)];
        }
    }

    let mut residual = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            let recon: f64 = (0..n)
                .map(|c| vectors[(i, c)] * values[c] * vectors[(j, c)])
                .sum();
            residual = residual.max((recon - m[(i, j)]).abs());
        }
    }
    if residual >= tol {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let norm = values.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
    let gap = 1e-6 * norm.max(1.0);
    let mut clusters: Vec<(f64, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || values[i] - values[i - 1] > gap {
            let group = &values[start..i];
            clusters.push((group.iter().sum::<f64>() / group.len() as f64, group.len()));
            start = i;
        }
    }
    Ok(DenseEigen {
        values,
        vectors,
        clusters,
    })
}

/// `A_k / sqrt(deg A_k)` as a dense real matrix.
pub fn normalized_distance_matrix(g: &Graph, k: usize) -> Result<RealMatrix> {
    let mats = dense_distance_matrices(g)?;
    let ak = mats.get(k).ok_or(Error::IndexOutOfRange {
        index: k,
        limit: mats.len() - 1,
    })?;
    let deg = ak.row(0).iter().sum::<i64>() as f64;
    Ok(ak.map(|x| x as f64 / deg.sqrt()))
}

// (A M)_{ij} = Σ_{l ~ i} M_{lj}
fn adjacency_times(g: &Graph, m: &RealMatrix) -> RealMatrix {
    let n = g.vertex_count();
    let mut out = RealMatrix::zeros(n);
    for i in 0..n {
        for &l in g.neighbors(i) {
            for j in 0..n {
                out[(i, j)] += m[(l, j)];
            }
        }
    }
    out
}

/// Evaluates `P^{(tau)}_{n+1}(A)` on the dense adjacency matrix.
///
/// On the way, `P_k(A) sqrt(deg A_k) = A_k` is asserted entrywise (to 1e-10)
/// for every `k <= d`.
pub fn matrix_poly_firstkind(g: &Graph, is: &IntersectionSequence, tau: f64) -> Result<RealMatrix> {
    let mats = dense_distance_matrices(g)?;
    let degrees = degree_sequence(is)?;
    let n = g.vertex_count();
    let d = is.diameter();
    let beta = |k: usize| (is.offdiag_square(k) as f64).sqrt();
    let check = |k: usize, p: &RealMatrix| -> Result<()> {
        let target = mats.get(k);
        let scale = (degrees[k] as f64).sqrt();
        for i in 0..n {
            for j in 0..n {
                let want = target.map_or(0, |m| m[(i, j)]) as f64;
                if (p[(i, j)] * scale - want).abs() > 1e-10 {
                    return Err(Error::BasisMismatch { k, i, j });
                }
            }
        }
        Ok(())
    };

    let mut prev = RealMatrix::zeros(n);
    let mut cur = RealMatrix::identity(n);
    check(0, &cur)?;
    for k in 0..d {
        // ((A - alpha_k) P_k - beta_k P_{k-1}) / beta_{k+1}
        let mut next = adjacency_times(g, &cur);
        let alpha = is.alpha_at(k) as f64;
        let back = if k == 0 { 0.0 } else { beta(k) };
        let forward = beta(k + 1);
        for i in 0..n {
            for j in 0..n {
                next[(i, j)] = (next[(i, j)] - alpha * cur[(i, j)] - back * prev[(i, j)]) / forward;
            }
        }
        check(k + 1, &next)?;
        prev = cur;
        cur = next;
    }
    let mut last = adjacency_times(g, &cur);
    let back = beta(d);
    for i in 0..n {
        for j in 0..n {
            last[(i, j)] -= tau * cur[(i, j)] + back * prev[(i, j)];
        }
    }
    Ok(last)
}

/// Spectral radius by power iteration on `M²`, to relative accuracy `tol`.
pub fn operator_norm(m: &RealMatrix, tol: f64) -> Result<f64> {
    let n = m.size();
    // strictly positive start: overlaps the Perron vector of nonnegative matrices
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + (i % 7) as f64 / 10.0).collect();
    let normalize = |v: &mut Vec<f64>| -> f64 {
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            v.iter_mut().for_each(|x| *x /= norm);
        }
        norm
    };
    normalize(&mut v);
    let mut estimate = 0.0;
    for _ in 0..MAX_POWER_ITERATIONS {
        let mut w = m.mat_vec(&v);
        let current = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if current == 0.0 {
            return Ok(0.0);
        }
        w = m.mat_vec(&w);
        normalize(&mut w);
        v = w;
        if (current - estimate).abs() <= tol * current {
            return Ok(current);
        }
        estimate = current;
    }
    Err(Error::NoConvergence(MAX_POWER_ITERATIONS))
}
