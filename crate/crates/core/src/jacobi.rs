//! Jacobi operators `J_tau`, first-kind polynomials and spectral measures.
//!
//! For a sequence of diameter `n`, `J_tau` is the `(n+1) x (n+1)` symmetric
//! tridiagonal matrix with diagonal `[0, alpha_1, ..., alpha_{n-1}, tau]` and
//! off-diagonal `sqrt(a_k b_k)`. Its first-kind polynomials
//!
//! ```text
//! P_0 = 1,  P_{k+1} = ((x - diag_k) P_k - off_k P_{k-1}) / off_{k+1},
//! P_{n+1}(x) = (x - tau) P_n - off_n P_{n-1}
//! ```
//!
//! form a Sturm sequence for `J_tau`, and the eigenvalues are exactly the
//! zeros of `P_{n+1}`. Everything here is built on that one recurrence.

use serde::Serialize;

use crate::drg::IntersectionSequence;
use crate::error::{Error, Result};

/// Relative bisection tolerance used when callers have no preference.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Relative residual accepted by [`eigenfunction_coeffs`].
pub const ROOT_CHECK_TOL: f64 = 1e-8;
/// Relative disagreement accepted between the two weight formulas.
pub const WEIGHT_TOL: f64 = 1e-9;
/// Relative disagreement accepted between the two kernel formulas.
pub const KERNEL_TOL: f64 = 1e-9;
/// Multiplicities must satisfy `|N w - m| < MULTIPLICITY_TOL * N`.
pub const MULTIPLICITY_TOL: f64 = 1e-6;

const RESCALE_ABOVE: f64 = 1e100;
const POLISH_STEPS: usize = 4;

/// A real symmetric tridiagonal matrix with positive off-diagonal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JacobiOperator {
    size: usize,
    diag: Vec<f64>,
    offdiag: Vec<f64>,
    /// Boundary parameter in the bottom-right corner; `None` for corner truncations.
    tau: Option<f64>,
}

impl JacobiOperator {
    pub(crate) fn from_parts(diag: Vec<f64>, offdiag: Vec<f64>, tau: Option<f64>) -> Self {
        debug_assert_eq!(diag.len(), offdiag.len() + 1);
        debug_assert!(offdiag.iter().all(|&b| b > 0.0));
        Self {
            size: diag.len(),
            diag,
            offdiag,
            tau,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    pub fn tau(&self) -> Option<f64> {
        self.tau
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        (0..self.size)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s += self.offdiag[i - 1] * v[i - 1];
                }
                if i + 1 < self.size {
                    s += self.offdiag[i] * v[i + 1];
                }
                s
            })
            .collect()
    }

    /// `[P_0(x), ..., P_{size}(x)]`; the last entry is the boundary polynomial.
    pub fn first_kind(&self, x: f64) -> Vec<f64> {
        self.first_kind_with_derivative(x).0
    }

    /// First-kind values and their derivatives, obtained by differentiating
    /// the recurrence term by term.
    pub fn first_kind_with_derivative(&self, x: f64) -> (Vec<f64>, Vec<f64>) {
        let n = self.size;
        let mut p = Vec::with_capacity(n + 1);
        let mut dp = Vec::with_capacity(n + 1);
        p.push(1.0);
        dp.push(0.0);
        for k in 0..n {
            let (prev, dprev, off_prev) = if k == 0 {
                (0.0, 0.0, 0.0)
            } else {
                (p[k - 1], dp[k - 1], self.offdiag[k - 1])
            };
            let shift = x - self.diag[k];
            let mut next = shift * p[k] - off_prev * prev;
            let mut dnext = p[k] + shift * dp[k] - off_prev * dprev;
            if k + 1 < n {
                next /= self.offdiag[k];
                dnext /= self.offdiag[k];
            }
            p.push(next);
            dp.push(dnext);
        }
        (p, dp)
    }

    /// Number of eigenvalues strictly below `x`, from sign changes of the
    /// first-kind sequence. The sequence is rescaled whenever it grows past
    /// `1e100`; a zero takes the sign opposite to its predecessor.
    pub fn count_below(&self, x: f64) -> usize {
        let n = self.size;
        let mut changes = 0;
        let (mut prev, mut cur) = (0.0_f64, 1.0_f64);
        let mut cur_sign = 1.0_f64;
        for k in 0..n {
            let off_prev = if k == 0 { 0.0 } else { self.offdiag[k - 1] };
            let mut next = (x - self.diag[k]) * cur - off_prev * prev;
            if k + 1 < n {
                next /= self.offdiag[k];
            }
            let next_sign = if next > 0.0 {
                1.0
            } else if next < 0.0 {
                -1.0
            } else {
                -cur_sign
            };
            if next_sign != cur_sign {
                changes += 1;
            }
            prev = cur;
            cur = next;
            cur_sign = next_sign;
            if cur.abs() > RESCALE_ABOVE {
                prev /= RESCALE_ABOVE;
                cur /= RESCALE_ABOVE;
            }
        }
        n - changes
    }

    /// Gershgorin-type enclosure `[min diag - 2 max off, max diag + 2 max off]`.
    pub fn gershgorin(&self) -> (f64, f64) {
        let max_off = self.offdiag.iter().cloned().fold(0.0, f64::max);
        let lo = self.diag.iter().cloned().fold(f64::INFINITY, f64::min) - 2.0 * max_off;
        let hi = self.diag.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + 2.0 * max_off;
        (lo, hi)
    }

    fn scale(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        let s = lo.abs().max(hi.abs());
        if s > 0.0 {
            s
        } else {
            1.0
        }
    }

    /// The `index`-th smallest eigenvalue (0-based), by bisection.
    ///
    /// `tol` is relative to the Gershgorin scale `max(|lo|, |hi|)`.
    pub fn eigenvalue_at(&self, index: usize, tol: f64) -> Result<f64> {
        if index >= self.size {
            return Err(Error::IndexOutOfRange {
                index,
                limit: self.size - 1,
            });
        }
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::ToleranceTooSmall(tol));
        }
        let scale = self.scale();
        let width = tol * scale;
        let (lo0, hi0) = self.gershgorin();
        // the enclosure is closed; nudge so that both ends strictly bracket
        let pad = scale * 1e-9;
        let (mut lo, mut hi) = (lo0 - pad, hi0 + pad);
        while hi - lo > width {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                return Err(Error::ToleranceTooSmall(tol));
            }
            if self.count_below(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        if self.count_below(lo) != index || self.count_below(hi) != index + 1 {
            return Err(Error::CollapsedRoots(0.5 * (lo + hi)));
        }
        Ok(self.polish(lo, hi))
    }

    /// Newton steps on the boundary polynomial from the bracket midpoint,
    /// kept only while they stay inside the certified bracket.
    fn polish(&self, lo: f64, hi: f64) -> f64 {
        let mut x = 0.5 * (lo + hi);
        for _ in 0..POLISH_STEPS {
            let (p, dp) = self.first_kind_with_derivative(x);
            let step = p[self.size] / dp[self.size];
            let next = x - step;
            if !next.is_finite() || next < lo || next > hi || next == x {
                break;
            }
            x = next;
        }
        x
    }
}

/// `J_tau` for a finite intersection sequence.
pub fn build_jacobi(is: &IntersectionSequence, tau: f64) -> JacobiOperator {
    let d = is.diameter();
    let mut diag: Vec<f64> = (0..d).map(|k| is.alpha_at(k) as f64).collect();
    diag.push(tau);
    let offdiag = (1..=d)
        .map(|k| (is.offdiag_square(k) as f64).sqrt())
        .collect();
    JacobiOperator::from_parts(diag, offdiag, Some(tau))
}

/// `tau* = degree - a_d`, the boundary value reproducing the adjacency spectrum.
pub fn canonical_tau(is: &IntersectionSequence) -> f64 {
    is.canonical_tau() as f64
}

/// First-kind polynomial values at one point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FirstKindEvaluation {
    pub point: f64,
    pub tau: f64,
    /// `P_0(x), ..., P_n(x), P^{(tau)}_{n+1}(x)`
    pub values: Vec<f64>,
}

impl FirstKindEvaluation {
    /// `P^{(tau)}_{n+1}(x)`.
    pub fn boundary(&self) -> f64 {
        *self.values.last().expect("at least two values")
    }

    /// `P_0(x), ..., P_n(x)`.
    pub fn coefficients(&self) -> &[f64] {
        &self.values[..self.values.len() - 1]
    }
}

pub fn eval_first_kind(is: &IntersectionSequence, tau: f64, x: f64) -> FirstKindEvaluation {
    FirstKindEvaluation {
        point: x,
        tau,
        values: build_jacobi(is, tau).first_kind(x),
    }
}

/// Sorted eigenvalues of `j`. `tol` is relative to the Gershgorin scale.
pub fn eigenvalues(j: &JacobiOperator, tol: f64) -> Result<Vec<f64>> {
    let values = (0..j.size())
        .map(|i| j.eigenvalue_at(i, tol))
        .collect::<Result<Vec<_>>>()?;
    if let Some(w) = values.windows(2).find(|w| w[0] >= w[1]) {
        return Err(Error::CollapsedRoots(w[0]));
    }
    Ok(values)
}

/// Coefficients `(P_0(λ), ..., P_n(λ))` of the eigenvector of `J_tau` at `λ`.
///
/// Rejects `λ` when the residual `|P_{n+1}(λ)| / ‖φ‖`, which bounds the
/// distance to the nearest eigenvalue, exceeds `tol` times the operator scale.
pub fn eigenfunction_coeffs(
    is: &IntersectionSequence,
    tau: f64,
    lambda: f64,
    tol: f64,
) -> Result<Vec<f64>> {
    let j = build_jacobi(is, tau);
    eigenvector_of(&j, lambda, tol)
}

fn eigenvector_of(j: &JacobiOperator, lambda: f64, tol: f64) -> Result<Vec<f64>> {
    let mut p = j.first_kind(lambda);
    let boundary = p.pop().expect("nonempty");
    let norm = p.iter().map(|v| v * v).sum::<f64>().sqrt();
    let residual = boundary.abs() / norm;
    if residual > tol * j.scale() {
        return Err(Error::NotAnEigenvalue { lambda, residual });
    }
    Ok(p)
}

/// Both weight formulas at a point: `Σ P_k²` and `P_n · (P_{n+1})'`.
pub fn weight_formulas(j: &JacobiOperator, x: f64) -> (f64, f64) {
    let (p, dp) = j.first_kind_with_derivative(x);
    let n = j.size() - 1;
    let direct: f64 = p[..=n].iter().map(|v| v * v).sum();
    (direct, p[n] * dp[n + 1])
}

/// Mass `‖φ_λ‖^{-2}` of the atom at eigenvalue `λ` of `J_tau`.
///
/// The direct sum of squares is cross-checked against the derivative form;
/// a relative disagreement above `tol` is an error.
pub fn atom_weight(is: &IntersectionSequence, tau: f64, lambda: f64, tol: f64) -> Result<f64> {
    weight_of(&build_jacobi(is, tau), lambda, tol)
}

fn weight_of(j: &JacobiOperator, lambda: f64, tol: f64) -> Result<f64> {
    let (direct, kernel) = weight_formulas(j, lambda);
    if (direct - kernel).abs() > tol * direct {
        return Err(Error::WeightMismatch {
            lambda,
            direct,
            kernel,
        });
    }
    Ok(1.0 / direct)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Atom {
    pub lambda: f64,
    pub weight: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<u64>,
}

/// A finite atomic probability measure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralMeasure {
    pub atoms: Vec<Atom>,
}

impl SpectralMeasure {
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.atoms.iter().map(|a| a.lambda).collect()
    }

    pub fn weights(&self) -> Vec<f64> {
        self.atoms.iter().map(|a| a.weight).collect()
    }

    pub fn multiplicities(&self) -> Option<Vec<u64>> {
        self.atoms.iter().map(|a| a.multiplicity).collect()
    }

    pub fn total_weight(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    /// `∫ x^k dμ`.
    pub fn moment(&self, k: u32) -> f64 {
        self.atoms
            .iter()
            .map(|a| a.weight * a.lambda.powi(k as i32))
            .sum()
    }

    /// Two-column `lambda weight` table, one atom per line.
    pub fn plot_table(&self) -> String {
        let mut out = String::from("# lambda weight\n");
        for atom in &self.atoms {
            out.push_str(&format!("{:?} {:?}\n", atom.lambda, atom.weight));
        }
        out
    }
}

/// Atoms and weights of `J_tau` at every eigenvalue.
pub fn measure_for(j: &JacobiOperator, tol: f64) -> Result<SpectralMeasure> {
    let atoms = eigenvalues(j, tol)?
        .into_iter()
        .map(|lambda| {
            Ok(Atom {
                lambda,
                weight: weight_of(j, lambda, WEIGHT_TOL)?,
                multiplicity: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectralMeasure { atoms })
}

/// The spectral measure of the adjacency operator, read off `J_{tau*}`.
///
/// With `vertex_count = Some(N)`, each atom also gets the multiplicity
/// `round(N w)`, which must be integral to within `1e-6 N` and sum to `N`.
pub fn spectral_measure(
    is: &IntersectionSequence,
    vertex_count: Option<usize>,
) -> Result<SpectralMeasure> {
    let j = build_jacobi(is, canonical_tau(is));
    let mut measure = measure_for(&j, DEFAULT_TOL)?;
    if let Some(n) = vertex_count {
        assign_multiplicities(&mut measure, n)?;
    }
    Ok(measure)
}

/// Sets each atom's multiplicity to `round(N w)`; see [`spectral_measure`].
pub fn assign_multiplicities(measure: &mut SpectralMeasure, n: usize) -> Result<()> {
    let nf = n as f64;
    let mut total = 0u64;
    for atom in &mut measure.atoms {
        let value = nf * atom.weight;
        let m = value.round();
        if (value - m).abs() >= MULTIPLICITY_TOL * nf || m < 1.0 {
            return Err(Error::MultiplicityNotIntegral {
                lambda: atom.lambda,
                value,
            });
        }
        atom.multiplicity = Some(m as u64);
        total += m as u64;
    }
    if total != n as u64 {
        return Err(Error::MultiplicityNotIntegral {
            lambda: f64::NAN,
            value: total as f64,
        });
    }
    Ok(())
}

/// Result of comparing the spectra of two boundary parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Interlacing {
    pub tau1: f64,
    pub tau2: f64,
    pub spectrum1: Vec<f64>,
    pub spectrum2: Vec<f64>,
    pub min_gap: f64,
    pub disjoint: bool,
    pub interlaced: bool,
}

impl Interlacing {
    pub fn holds(&self) -> bool {
        self.disjoint && self.interlaced
    }
}

/// Compares `σ(J_tau1)` and `σ(J_tau2)`: disjoint (every cross gap above
/// `tol`) and strictly interlaced in both directions.
pub fn interlacing(
    is: &IntersectionSequence,
    tau1: f64,
    tau2: f64,
    tol: f64,
) -> Result<Interlacing> {
    if tau1 == tau2 {
        return Err(Error::SameTau(tau1));
    }
    let s1 = eigenvalues(&build_jacobi(is, tau1), DEFAULT_TOL)?;
    let s2 = eigenvalues(&build_jacobi(is, tau2), DEFAULT_TOL)?;
    let min_gap = s1
        .iter()
        .flat_map(|x| s2.iter().map(move |y| (x - y).abs()))
        .fold(f64::INFINITY, f64::min);
    let one_between = |outer: &[f64], inner: &[f64]| {
        outer
            .windows(2)
            .all(|w| inner.iter().filter(|&&y| y > w[0] && y < w[1]).count() == 1)
    };
    Ok(Interlacing {
        tau1,
        tau2,
        min_gap,
        disjoint: min_gap > tol,
        interlaced: one_between(&s1, &s2) && one_between(&s2, &s1),
        spectrum1: s1,
        spectrum2: s2,
    })
}

/// `true` iff the spectra of `J_tau1` and `J_tau2` are disjoint and interlaced.
pub fn check_interlacing(
    is: &IntersectionSequence,
    tau1: f64,
    tau2: f64,
    tol: f64,
) -> Result<bool> {
    interlacing(is, tau1, tau2, tol).map(|r| r.holds())
}

/// Reproducing kernel `K_k(x, y) = Σ_{j<=k} P_j(x) P_j(y)` for `0 <= k <= d-1`.
///
/// The sum is checked against the Christoffel–Darboux closed form
/// (or its confluent derivative form when `x == y`).
pub fn cd_kernel(is: &IntersectionSequence, k: usize, x: f64, y: f64) -> Result<f64> {
    let d = is.diameter();
    if k >= d {
        return Err(Error::IndexOutOfRange {
            index: k,
            limit: d - 1,
        });
    }
    // tau does not enter P_0..P_d
    let j = build_jacobi(is, 0.0);
    let beta = (is.offdiag_square(k + 1) as f64).sqrt();
    let (px, dpx) = j.first_kind_with_derivative(x);
    let sum: f64;
    let closed: f64;
    if x == y {
        sum = px[..=k].iter().map(|v| v * v).sum();
        closed = beta * (dpx[k + 1] * px[k] - dpx[k] * px[k + 1]);
    } else {
        let py = j.first_kind(y);
        sum = px[..=k].iter().zip(&py).map(|(a, b)| a * b).sum();
        closed = beta * (py[k] * px[k + 1] - px[k] * py[k + 1]) / (x - y);
    }
    let scale = sum.abs().max(1.0);
    if (sum - closed).abs() > KERNEL_TOL * scale {
        return Err(Error::KernelMismatch { sum, closed });
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kn(n: u64) -> IntersectionSequence {
        IntersectionSequence::new(vec![1], vec![n - 1]).unwrap()
    }

    fn petersen() -> IntersectionSequence {
        "1,3;1,2".parse().unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn build_examples() {
        let j = build_jacobi(&kn(5), 1.5);
        assert_eq!(j.diag(), &[0.0, 1.5]);
        assert_eq!(j.offdiag(), &[2.0]);
        let j = build_jacobi(&petersen(), 2.0);
        assert_eq!(j.diag(), &[0.0, 0.0, 2.0]);
        assert!(close(j.offdiag()[0], 3f64.sqrt(), 1e-15));
        assert!(close(j.offdiag()[1], 2f64.sqrt(), 1e-15));
        let j = build_jacobi(&kn(2), 0.0);
        assert_eq!(j.diag(), &[0.0, 0.0]);
        assert_eq!(j.offdiag(), &[1.0]);
    }

    #[test]
    fn canonical_taus() {
        for n in 2..10 {
            assert_eq!(canonical_tau(&kn(n)), n as f64 - 2.0);
        }
        assert_eq!(canonical_tau(&petersen()), 2.0);
    }

    #[test]
    fn first_kind_examples() {
        let e = eval_first_kind(&petersen(), 2.0, 0.0);
        assert_eq!(&e.values[..2], &[1.0, 0.0]);
        let e = eval_first_kind(&petersen(), 2.0, 1.0);
        let expect = [1.0, 1.0 / 3f64.sqrt(), -2.0 / 6f64.sqrt(), 0.0];
        for (v, w) in e.values.iter().zip(expect) {
            assert!(close(*v, w, 1e-14), "{v} vs {w}");
        }
        for n in 2..8u64 {
            for &(tau, x) in &[(0.3, -1.2), (-2.0, 0.7), (4.0, 3.3)] {
                let s = ((n - 1) as f64).sqrt();
                let want = x * (x - tau) / s - s;
                assert!(close(
                    eval_first_kind(&kn(n), tau, x).boundary(),
                    want,
                    1e-12
                ));
            }
        }
    }

    #[test]
    fn complete_graph_spectra() {
        for n in 2..13u64 {
            let tau = n as f64 - 2.0;
            let ev = eigenvalues(&build_jacobi(&kn(n), tau), DEFAULT_TOL).unwrap();
            assert!(close(ev[0], -1.0, 1e-10));
            assert!(close(ev[1], n as f64 - 1.0, 1e-10));
        }
    }

    #[test]
    fn petersen_spectrum_and_weights() {
        let is = petersen();
        let ev = eigenvalues(&build_jacobi(&is, 2.0), DEFAULT_TOL).unwrap();
        for (v, w) in ev.iter().zip([-2.0, 1.0, 3.0]) {
            assert!(close(*v, w, 1e-10));
        }
        let phi = eigenfunction_coeffs(&is, 2.0, ev[2], ROOT_CHECK_TOL).unwrap();
        for (v, w) in phi.iter().zip([1.0, 3f64.sqrt(), 6f64.sqrt()]) {
            assert!(close(*v, w, 1e-9));
        }
        let weights: Vec<f64> = ev
            .iter()
            .map(|&l| atom_weight(&is, 2.0, l, WEIGHT_TOL).unwrap())
            .collect();
        for (v, w) in weights.iter().zip([0.4, 0.5, 0.1]) {
            assert!(close(*v, w, 1e-10));
        }
        let m = spectral_measure(&is, Some(10)).unwrap();
        assert_eq!(m.multiplicities(), Some(vec![4, 5, 1]));
        assert!(close(m.total_weight(), 1.0, 1e-12));
    }

    #[test]
    fn not_an_eigenvalue() {
        assert!(matches!(
            eigenfunction_coeffs(&petersen(), 2.0, 0.5, ROOT_CHECK_TOL),
            Err(Error::NotAnEigenvalue { .. })
        ));
        let phi = eigenfunction_coeffs(&kn(4), 2.0, 3.0, ROOT_CHECK_TOL).unwrap();
        assert!(close(phi[1], 3f64.sqrt(), 1e-12));
    }

    #[test]
    fn edge_weights_are_half() {
        let m = spectral_measure(&kn(2), Some(2)).unwrap();
        assert_eq!(m.weights().len(), 2);
        for w in m.weights() {
            assert!(close(w, 0.5, 1e-12));
        }
        assert_eq!(m.multiplicities(), Some(vec![1, 1]));
    }

    #[test]
    fn wrong_vertex_count_is_rejected() {
        // Petersen weights with N = 7 give non-integral multiplicities
        assert!(matches!(
            spectral_measure(&petersen(), Some(7)),
            Err(Error::MultiplicityNotIntegral { .. })
        ));
    }

    #[test]
    fn interlacing_examples() {
        let r = interlacing(&kn(3), 0.0, 1.0, 1e-9).unwrap();
        assert!(close(r.spectrum1[0], -2f64.sqrt(), 1e-10));
        assert!(close(r.spectrum1[1], 2f64.sqrt(), 1e-10));
        assert!(close(r.spectrum2[0], -1.0, 1e-10));
        assert!(close(r.spectrum2[1], 2.0, 1e-10));
        assert!(r.holds());
        assert!(check_interlacing(&petersen(), 2.0, 0.0, 1e-9).unwrap());
        assert_eq!(
            check_interlacing(&petersen(), 1.0, 1.0, 1e-9),
            Err(Error::SameTau(1.0))
        );
    }

    #[test]
    fn kernel_examples() {
        let is = petersen();
        assert!(close(cd_kernel(&is, 0, 0.3, -1.1).unwrap(), 1.0, 1e-14));
        assert!(close(cd_kernel(&is, 1, 3.0, 1.0).unwrap(), 2.0, 1e-12));
        let x = 0.77;
        let p = eval_first_kind(&is, 0.0, x).values;
        let want = p[0] * p[0] + p[1] * p[1];
        assert!(close(cd_kernel(&is, 1, x, x).unwrap(), want, 1e-12));
        assert!(cd_kernel(&is, 2, 0.0, 1.0).is_err());
    }

    #[test]
    fn tiny_tolerance_fails_loudly() {
        let j = build_jacobi(&petersen(), 2.0);
        assert!(matches!(
            eigenvalues(&j, 1e-20),
            Err(Error::ToleranceTooSmall(_))
        ));
        assert!(eigenvalues(&j, 0.0).is_err());
    }

    #[test]
    fn plot_table_format() {
        let m = spectral_measure(&kn(4), None).unwrap();
        let table = m.plot_table();
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], "# lambda weight");
        let cols: Vec<f64> = lines[1].split(' ').map(|t| t.parse().unwrap()).collect();
        assert!(close(cols[0], -1.0, 1e-10) && close(cols[1], 0.75, 1e-10));
    }
}
