//! Infinite-diameter families: generators, truncated Jacobi matrices,
//! exact adjacency moments and the homogeneous-tree density.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::jacobi::{JacobiOperator, DEFAULT_TOL};

/// Default absolute tolerance for [`density_moment`].
pub const DEFAULT_QUAD_TOL: f64 = 1e-8;

const MAX_QUAD_LEVELS: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Pattern {
    /// `(1, n), (1, n-1), (1, n-1), ...`
    Tree(u64),
    /// Explicit prefix whose last `period` pairs repeat forever.
    Periodic {
        pairs: Vec<(u64, u64)>,
        period: usize,
    },
}

/// An intersection sequence of unbounded length, evaluated lazily.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyGenerator {
    pattern: Pattern,
    description: String,
}

impl FamilyGenerator {
    /// Builds an eventually periodic sequence; the last `period` pairs repeat.
    pub fn periodic(pairs: Vec<(u64, u64)>, period: usize) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidFamily("no pairs given".into()));
        }
        if period == 0 || period > pairs.len() {
            return Err(Error::InvalidFamily(format!(
                "period must lie in 1..={}, got {period}",
                pairs.len()
            )));
        }
        let description = format!(
            "custom:{};period={period}",
            pairs
                .iter()
                .map(|(a, b)| format!("{a},{b}"))
                .collect::<Vec<_>>()
                .join(";")
        );
        let generator = Self {
            pattern: Pattern::Periodic { pairs, period },
            description,
        };
        generator.validate()?;
        Ok(generator)
    }

    // Every distinct (a_k, b_{k+1}) combination appears by k = len + period.
    fn validate(&self) -> Result<()> {
        let (a1, b1) = self.pair(1);
        if a1 != 1 {
            return Err(Error::InvalidFamily(format!("a_1 = {a1}, expected 1")));
        }
        let horizon = match &self.pattern {
            Pattern::Tree(_) => 2,
            Pattern::Periodic { pairs, period } => pairs.len() + period,
        };
        for k in 1..=horizon {
            let (a, b) = self.pair(k);
            if a == 0 || b == 0 {
                return Err(Error::InvalidFamily(format!("pair {k} has a zero entry")));
            }
            if self.alpha(k) < 0 {
                return Err(Error::InvalidFamily(format!(
                    "alpha_{k} = {} is negative",
                    self.alpha(k)
                )));
            }
        }
        debug_assert_eq!(b1, self.degree());
        Ok(())
    }

    pub fn degree(&self) -> u64 {
        self.pair(1).1
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn is_tree(&self) -> Option<u64> {
        match self.pattern {
            Pattern::Tree(n) => Some(n),
            Pattern::Periodic { .. } => None,
        }
    }

    /// `(a_k, b_k)` for `k >= 1`.
    pub fn pair(&self, k: usize) -> (u64, u64) {
        assert!(k >= 1, "intersection pairs are indexed from 1");
        match &self.pattern {
            Pattern::Tree(n) => (1, if k == 1 { *n } else { n - 1 }),
            Pattern::Periodic { pairs, period } => {
                let len = pairs.len();
                if k <= len {
                    pairs[k - 1]
                } else {
                    pairs[len - period + (k - len - 1) % period]
                }
            }
        }
    }

    /// `alpha_k = degree - (a_k + b_{k+1})`, with `alpha_0 = 0`.
    pub fn alpha(&self, k: usize) -> i64 {
        if k == 0 {
            return 0;
        }
        let (a, _) = self.pair(k);
        let (_, b_next) = self.pair(k + 1);
        self.degree() as i64 - (a + b_next) as i64
    }

    /// `a_k b_k`, zero for `k == 0`.
    fn offdiag_square(&self, k: usize) -> u64 {
        if k == 0 {
            return 0;
        }
        let (a, b) = self.pair(k);
        a * b
    }

    /// `deg(A_0), ..., deg(A_k)`.
    pub fn degrees(&self, k: usize) -> Result<Vec<u64>> {
        let (a, b): (Vec<u64>, Vec<u64>) = (1..=k).map(|m| self.pair(m)).unzip();
        crate::drg::degrees_from_pairs(&a, &b)
    }
}

impl fmt::Display for FamilyGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.description)
    }
}

impl FromStr for FamilyGenerator {
    type Err = Error;

    /// `tree:n` or `custom:a1,b1;a2,b2;...;period=p`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidFamily(s.to_string());
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        match kind.trim() {
            "tree" => tree_sequence(rest.trim().parse().map_err(|_| bad())?),
            "custom" => {
                let mut pairs = Vec::new();
                let mut period = None;
                for item in rest.split(';').map(str::trim).filter(|t| !t.is_empty()) {
                    if let Some(p) = item.strip_prefix("period=") {
                        period = Some(p.trim().parse().map_err(|_| bad())?);
                        continue;
                    }
                    let (a, b) = item.split_once(',').ok_or_else(bad)?;
                    pairs.push((
                        a.trim().parse().map_err(|_| bad())?,
                        b.trim().parse().map_err(|_| bad())?,
                    ));
                }
                let period = period
                    .ok_or_else(|| Error::InvalidFamily(format!("{s}: missing 'period=p'")))?;
                FamilyGenerator::periodic(pairs, period)
            }
            _ => Err(bad()),
        }
    }
}

/// The homogeneous tree of degree `n`: `(1, n), (1, n-1), (1, n-1), ...`.
pub fn tree_sequence(n: u64) -> Result<FamilyGenerator> {
    if n < 2 {
        return Err(Error::InvalidFamily(format!("tree:{n} needs n >= 2")));
    }
    let generator = FamilyGenerator {
        pattern: Pattern::Tree(n),
        description: format!("tree:{n}"),
    };
    generator.validate()?;
    Ok(generator)
}

/// Top-left `m x m` corner of the infinite Jacobi matrix (no boundary parameter).
pub fn truncated_jacobi(generator: &FamilyGenerator, m: usize) -> Result<JacobiOperator> {
    if m == 0 {
        return Err(Error::IndexOutOfRange { index: 0, limit: 1 });
    }
    let diag = (0..m).map(|k| generator.alpha(k) as f64).collect();
    let offdiag = (1..m)
        .map(|k| (generator.offdiag_square(k) as f64).sqrt())
        .collect();
    Ok(JacobiOperator::from_parts(diag, offdiag, None))
}

/// `⟨v, A^k v⟩ = (J^k)_{00}`, exactly.
pub fn moment(generator: &FamilyGenerator, k: usize) -> Result<u128> {
    moment_with_truncation(generator, k, k / 2 + k % 2 + 1)
}

/// `(J^k)_{00}` on the `m x m` corner, as a closed-walk count.
///
/// Walks start and end at level 0; a stay at level `j` weighs `alpha_j`
/// and each up-step `j -> j+1` weighs `a_{j+1} b_{j+1}` (down-steps weigh 1),
/// which is the integer form of the symmetric product.
pub fn moment_with_truncation(generator: &FamilyGenerator, k: usize, m: usize) -> Result<u128> {
    if m == 0 {
        return Err(Error::IndexOutOfRange { index: 0, limit: 1 });
    }
    let stay: Vec<u128> = (0..m)
        .map(|j| u128::try_from(generator.alpha(j)).map_err(|_| Error::Overflow("moment")))
        .collect::<Result<_>>()?;
    let up: Vec<u128> = (1..m)
        .map(|j| u128::from(generator.offdiag_square(j)))
        .collect();
    let overflow = || Error::Overflow("moment");
    // walks[j]: weighted count of walks from level 0 currently at level j
    let mut walks = vec![0u128; m];
    walks[0] = 1;
    for _ in 0..k {
        let mut next = vec![0u128; m];
        for j in 0..m {
            let w = walks[j];
            if w == 0 {
                continue;
            }
            let mut add = |idx: usize, v: u128| -> Result<()> {
                next[idx] = next[idx].checked_add(v).ok_or_else(overflow)?;
                Ok(())
            };
            add(j, w.checked_mul(stay[j]).ok_or_else(overflow)?)?;
            if j + 1 < m {
                add(j + 1, w.checked_mul(up[j]).ok_or_else(overflow)?)?;
            }
            if j > 0 {
                add(j - 1, w)?;
            }
        }
        walks = next;
    }
    Ok(walks[0])
}

/// Spectral density of the `n`-regular tree at `x`; zero off `[-2√(n-1), 2√(n-1)]`.
pub fn kesten_mckay_density(n: u64, x: f64) -> f64 {
    let n = n as f64;
    let edge_sq = 4.0 * (n - 1.0);
    if x * x >= edge_sq {
        return 0.0;
    }
    n * (edge_sq - x * x).sqrt() / (2.0 * PI * (n * n - x * x))
}

/// `∫ x^k dμ` against [`kesten_mckay_density`] with absolute error at most `quad_tol`.
///
/// Substituting `x = R sin θ` (`R = 2√(n-1)`) removes the square-root edge
/// behaviour and leaves an analytic periodic integrand
/// `n R² cos²θ (R sin θ)^k / (2π((n-2)² + R² cos²θ))`. Over a full period
/// the integral is twice the moment for even `k` and zero for odd `k`, so the
/// trapezoidal rule on `[0, 2π)` is used, doubling the node count until two
/// successive estimates agree to `quad_tol`.
pub fn density_moment(n: u64, k: u32, quad_tol: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidFamily(format!("tree:{n} needs n >= 2")));
    }
    if quad_tol.is_nan() || quad_tol <= 0.0 {
        return Err(Error::QuadratureNotConverged {
            tol: quad_tol,
            change: f64::NAN,
        });
    }
    let nf = n as f64;
    let r = 2.0 * (nf - 1.0).sqrt();
    let gap_sq = (nf - 2.0) * (nf - 2.0);
    let integrand = |theta: f64| -> f64 {
        let (s, c) = theta.sin_cos();
        let power = (r * s).powi(k as i32);
        if n == 2 {
            // the cos² factors cancel exactly
            power / PI
        } else {
            let c2 = c * c;
            nf * r * r * c2 * power / (2.0 * PI * (gap_sq + r * r * c2))
        }
    };
    // half of the full-period integral
    let estimate = |nodes: usize| -> f64 {
        let h = 2.0 * PI / nodes as f64;
        0.5 * h * (0..nodes).map(|i| integrand(i as f64 * h)).sum::<f64>()
    };
    let mut nodes = 8usize;
    let mut previous = estimate(nodes);
    let mut change = f64::INFINITY;
    for _ in 0..MAX_QUAD_LEVELS {
        nodes *= 2;
        let current = estimate(nodes);
        change = (current - previous).abs();
        if change <= quad_tol {
            return Ok(current);
        }
        previous = current;
    }
    Err(Error::QuadratureNotConverged {
        tol: quad_tol,
        change,
    })
}

/// `2√(n-1)`, the spectral radius of the `n`-regular tree.
pub fn spectral_radius_tree(n: u64) -> f64 {
    2.0 * ((n as f64) - 1.0).sqrt()
}

/// Largest eigenvalue of the `m x m` corner of the family's Jacobi matrix.
pub fn truncated_largest_eigenvalue(generator: &FamilyGenerator, m: usize) -> Result<f64> {
    let j = truncated_jacobi(generator, m)?;
    j.eigenvalue_at(m - 1, DEFAULT_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_pairs() {
        let t2 = tree_sequence(2).unwrap();
        assert_eq!(t2.pair(1), (1, 2));
        assert_eq!(t2.pair(2), (1, 1));
        assert_eq!(t2.pair(5), (1, 1));
        let t3 = tree_sequence(3).unwrap();
        assert!((0..50).all(|k| t3.alpha(k) == 0));
        assert!(tree_sequence(1).is_err());
        assert_eq!(t3.degrees(4).unwrap(), vec![1, 3, 6, 12, 24]);
    }

    #[test]
    fn custom_syntax() {
        let g: FamilyGenerator = "custom:1,3;1,2;period=1".parse().unwrap();
        assert_eq!(g.pair(1), (1, 3));
        assert_eq!(g.pair(9), (1, 2));
        let t3 = tree_sequence(3).unwrap();
        assert!((1..40).all(|k| g.pair(k) == t3.pair(k)));
        let g: FamilyGenerator = "custom:1,4;1,2;2,2;period=2".parse().unwrap();
        assert_eq!(g.pair(3), (2, 2));
        assert_eq!(g.pair(4), (1, 2));
        assert_eq!(g.pair(5), (2, 2));
        assert_eq!(g.alpha(1), 1);
        assert_eq!(g.alpha(2), 1);
        assert_eq!(g.alpha(3), 0);
        assert!("custom:1,3;1,2".parse::<FamilyGenerator>().is_err());
        assert!("custom:2,3;period=1".parse::<FamilyGenerator>().is_err());
        // alpha_1 = 3 - (1 + 3) < 0
        assert!("custom:1,3;1,3;period=1"
            .parse::<FamilyGenerator>()
            .is_err());
        assert!("custom:1,3;period=2".parse::<FamilyGenerator>().is_err());
        assert!("graph:3".parse::<FamilyGenerator>().is_err());
        assert_eq!(
            "tree:4".parse::<FamilyGenerator>().unwrap().is_tree(),
            Some(4)
        );
    }

    #[test]
    fn truncations() {
        let j = truncated_jacobi(&tree_sequence(3).unwrap(), 3).unwrap();
        assert_eq!(j.diag(), &[0.0, 0.0, 0.0]);
        assert_eq!(j.offdiag(), &[3f64.sqrt(), 2f64.sqrt()]);
        assert_eq!(j.tau(), None);
        let j = truncated_jacobi(&tree_sequence(5).unwrap(), 1).unwrap();
        assert_eq!(j.diag(), &[0.0]);
        assert!(j.offdiag().is_empty());
        let j = truncated_jacobi(&tree_sequence(2).unwrap(), 4).unwrap();
        assert_eq!(j.offdiag(), &[2f64.sqrt(), 1.0, 1.0]);
    }

    #[test]
    fn tree_moments() {
        for n in 2..7u64 {
            let t = tree_sequence(n).unwrap();
            assert_eq!(moment(&t, 0).unwrap(), 1);
            assert_eq!(moment(&t, 2).unwrap(), n as u128);
            for k in (1..15).step_by(2) {
                assert_eq!(moment(&t, k).unwrap(), 0);
            }
        }
        let t2 = tree_sequence(2).unwrap();
        assert_eq!(moment(&t2, 4).unwrap(), 6);
        assert_eq!(moment(&t2, 6).unwrap(), 20);
    }

    #[test]
    fn density_values() {
        assert!((kesten_mckay_density(2, 0.0) - 1.0 / (2.0 * PI)).abs() < 1e-15);
        assert!((kesten_mckay_density(3, 0.0) - 8f64.sqrt() / (6.0 * PI)).abs() < 1e-15);
        assert_eq!(kesten_mckay_density(3, 2.9), 0.0);
        assert_eq!(kesten_mckay_density(5, -4.0), 0.0);
    }

    #[test]
    fn density_moments() {
        for n in 2..6u64 {
            assert!((density_moment(n, 0, 1e-10).unwrap() - 1.0).abs() < 1e-10);
            assert!((density_moment(n, 2, 1e-10).unwrap() - n as f64).abs() < 1e-9);
            assert!(density_moment(n, 3, 1e-10).unwrap().abs() < 1e-10);
        }
        assert!((density_moment(2, 4, 1e-10).unwrap() - 6.0).abs() < 1e-9);
        assert!(density_moment(3, 2, 0.0).is_err());
    }

    #[test]
    fn radius_values() {
        assert_eq!(spectral_radius_tree(2), 2.0);
        assert!((spectral_radius_tree(3) - 2.8284271).abs() < 1e-7);
        assert_eq!(spectral_radius_tree(5), 4.0);
    }
}
