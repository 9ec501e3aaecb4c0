//! Distance-regularity certification and intersection sequences.
//!
//! Indexing follows the graph convention used throughout the crate: for a
//! pair at distance `k`, `a_k` counts neighbours of one end that are one step
//! closer to the other end, and `b_{k+1}` those one step farther. The
//! diagonal coefficients are `alpha_k = degree - (a_k + b_{k+1})` with
//! `alpha_0 = 0`; at the top index `alpha_d` is the boundary value
//! `tau* = degree - a_d`.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// The pairs `(a_1, b_1), ..., (a_d, b_d)` of a finite distance-regular graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionSequence {
    a: Vec<u64>,
    b: Vec<u64>,
}

impl IntersectionSequence {
    /// Validates and builds a sequence from `a_1..a_d` and `b_1..b_d`.
    pub fn new(a: Vec<u64>, b: Vec<u64>) -> Result<Self> {
        let is = Self::new_unchecked(a, b)?;
        if is.a[0] != 1 {
            return Err(Error::InvalidSequence(format!(
                "a_1 = {}, expected 1",
                is.a[0]
            )));
        }
        if let Some(pos) = is.a.iter().chain(&is.b).position(|&x| x == 0) {
            return Err(Error::InvalidSequence(format!(
                "entry {} is zero; all a_k, b_k must be positive",
                pos
            )));
        }
        for (k, alpha) in is.alpha().into_iter().enumerate() {
            if alpha < 0 {
                return Err(Error::InvalidSequence(format!(
                    "alpha_{k} = {alpha} is negative"
                )));
            }
        }
        degree_sequence(&is)?;
        Ok(is)
    }

    /// Builds a sequence without the sign and integrality checks.
    ///
    /// Intended for verification code that must be able to express a wrong
    /// sequence (for example to confirm a recurrence check rejects it).
    pub fn new_unchecked(a: Vec<u64>, b: Vec<u64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidSequence("diameter must be at least 1".into()));
        }
        if a.len() != b.len() {
            return Err(Error::InvalidSequence(format!(
                "{} values of a but {} values of b",
                a.len(),
                b.len()
            )));
        }
        Ok(Self { a, b })
    }

    pub fn diameter(&self) -> usize {
        self.a.len()
    }

    pub fn degree(&self) -> u64 {
        self.b[0]
    }

    /// `a_k` for `1 <= k <= d`, zero otherwise.
    pub fn a(&self, k: usize) -> u64 {
        if k == 0 {
            0
        } else {
            self.a.get(k - 1).copied().unwrap_or(0)
        }
    }

    /// `b_k` for `1 <= k <= d`, zero otherwise.
    pub fn b(&self, k: usize) -> u64 {
        if k == 0 {
            0
        } else {
            self.b.get(k - 1).copied().unwrap_or(0)
        }
    }

    pub fn a_values(&self) -> &[u64] {
        &self.a
    }

    pub fn b_values(&self) -> &[u64] {
        &self.b
    }

    /// `tau* = degree - a_d`.
    pub fn canonical_tau(&self) -> i64 {
        self.degree() as i64 - self.a(self.diameter()) as i64
    }

    /// Diagonal coefficient `alpha_k` for `0 <= k <= d` (with `alpha_d = tau*`).
    pub fn alpha_at(&self, k: usize) -> i64 {
        let d = self.diameter();
        if k == 0 {
            0
        } else if k < d {
            self.degree() as i64 - (self.a(k) + self.b(k + 1)) as i64
        } else if k == d {
            self.canonical_tau()
        } else {
            0
        }
    }

    /// `[alpha_0, ..., alpha_{d-1}, tau*]`.
    pub fn alpha(&self) -> Vec<i64> {
        (0..=self.diameter()).map(|k| self.alpha_at(k)).collect()
    }

    /// `a_k * b_k`, the squared off-diagonal of the Jacobi matrix.
    pub fn offdiag_square(&self, k: usize) -> u64 {
        self.a(k) * self.b(k)
    }
}

impl FromStr for IntersectionSequence {
    type Err = Error;

    /// Parses `"a1,b1;a2,b2;..."`.
    fn from_str(s: &str) -> Result<Self> {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for pair in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (x, y) = pair
                .split_once(',')
                .ok_or_else(|| Error::InvalidSequence(format!("expected 'a,b', got '{pair}'")))?;
            let num = |t: &str| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidSequence(format!("not a natural number: '{t}'")))
            };
            a.push(num(x)?);
            b.push(num(y)?);
        }
        Self::new(a, b)
    }
}

impl fmt::Display for IntersectionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .a
            .iter()
            .zip(&self.b)
            .map(|(a, b)| format!("{a},{b}"))
            .collect();
        f.write_str(&pairs.join(";"))
    }
}

impl Serialize for IntersectionSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            d: usize,
            a: &'a [u64],
            b: &'a [u64],
            degree: u64,
            alpha: Vec<i64>,
            deg_k: Vec<u64>,
        }
        Repr {
            d: self.diameter(),
            a: &self.a,
            b: &self.b,
            degree: self.degree(),
            alpha: self.alpha(),
            deg_k: degree_sequence(self).unwrap_or_default(),
        }
        .serialize(serializer)
    }
}

/// `deg(A_k) = prod_{m<=k} b_m / a_m` for `k = 0..=d`, with an integrality check at each step.
pub fn degree_sequence(is: &IntersectionSequence) -> Result<Vec<u64>> {
    degrees_from_pairs(is.a_values(), is.b_values())
}

pub(crate) fn degrees_from_pairs(a: &[u64], b: &[u64]) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(a.len() + 1);
    let mut current: u64 = 1;
    out.push(current);
    for (k, (&ak, &bk)) in a.iter().zip(b).enumerate() {
        let num = current.checked_mul(bk).ok_or(Error::Overflow("deg(A_k)"))?;
        if ak == 0 || num % ak != 0 {
            return Err(Error::NonIntegralDegree { k: k + 1 });
        }
        current = num / ak;
        out.push(current);
    }
    Ok(out)
}

/// `isosc(A_k) = alpha_k / 2 * deg(A_k)` for `k = 0..=d`, using `alpha_d = tau*`.
pub fn isoscycle_numbers(is: &IntersectionSequence) -> Result<Vec<u64>> {
    let degrees = degree_sequence(is)?;
    degrees
        .iter()
        .enumerate()
        .map(|(k, &deg)| {
            let alpha = u64::try_from(is.alpha_at(k))
                .map_err(|_| Error::InvalidSequence(format!("alpha_{k} is negative")))?;
            let twice = alpha
                .checked_mul(deg)
                .ok_or(Error::Overflow("isosc(A_k)"))?;
            if twice % 2 != 0 {
                return Err(Error::NonIntegralCount { k });
            }
            Ok(twice / 2)
        })
        .collect()
}

/// Which neighbour-intersection count diverged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CountKind {
    /// `|Gamma_1(j) ∩ Gamma_{k-1}(i)|`
    #[serde(rename = "a")]
    Closer,
    /// `|Gamma_1(j) ∩ Gamma_{k+1}(i)|`
    #[serde(rename = "b")]
    Farther,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WitnessKind {
    NotRegular,
    NotDistanceRegular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairCount {
    pub pair: (usize, usize),
    pub value: usize,
}

/// Two ordered pairs at the same distance whose neighbour counts differ.
///
/// Non-regularity is the `distance == 0` case of a [`CountKind::Farther`]
/// divergence: for `i == j` that count is the degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NonRegularityWitness {
    pub kind: WitnessKind,
    pub distance: usize,
    pub count: CountKind,
    pub first: PairCount,
    pub second: PairCount,
}

impl NonRegularityWitness {
    /// Recounts both pairs on `g` and confirms the divergence.
    pub fn recheck(&self, g: &Graph) -> bool {
        let n = g.vertex_count();
        let valid = |pc: &PairCount| pc.pair.0 < n && pc.pair.1 < n;
        if !valid(&self.first) || !valid(&self.second) {
            return false;
        }
        let recount = |pc: &PairCount| {
            let (i, j) = pc.pair;
            let dist = g.distances_from(i);
            (dist[j] == self.distance).then(|| neighbour_count(g, &dist, j, self.count))
        };
        match (recount(&self.first), recount(&self.second)) {
            (Some(x), Some(y)) => x == self.first.value && y == self.second.value && x != y,
            _ => false,
        }
    }
}

fn neighbour_count(g: &Graph, dist_from_i: &[usize], j: usize, count: CountKind) -> usize {
    let k = dist_from_i[j];
    let target = match count {
        CountKind::Closer if k == 0 => return 0,
        CountKind::Closer => k - 1,
        CountKind::Farther => k + 1,
    };
    g.neighbors(j)
        .iter()
        .filter(|&&l| dist_from_i[l] == target)
        .count()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Certification {
    DistanceRegular(IntersectionSequence),
    Witness(NonRegularityWitness),
}

impl Certification {
    pub fn sequence(&self) -> Option<&IntersectionSequence> {
        match self {
            Certification::DistanceRegular(is) => Some(is),
            Certification::Witness(_) => None,
        }
    }
}

/// Decides distance-regularity, returning the intersection sequence or a
/// recheckable witness.
///
/// Regularity is tested first; then, one BFS per source vertex, both
/// neighbour counts are compared against the first pair seen at each distance.
pub fn certify_distance_regular(g: &Graph) -> Result<Certification> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::TooSmall(n));
    }
    let degree = g.degree(0);
    if let Some(v) = (1..n).find(|&v| g.degree(v) != degree) {
        return Ok(Certification::Witness(NonRegularityWitness {
            kind: WitnessKind::NotRegular,
            distance: 0,
            count: CountKind::Farther,
            first: PairCount {
                pair: (0, 0),
                value: degree,
            },
            second: PairCount {
                pair: (v, v),
                value: g.degree(v),
            },
        }));
    }

    // closer[k] / farther[k]: first observed count at distance k and its pair
    let mut closer: Vec<Option<PairCount>> = Vec::new();
    let mut farther: Vec<Option<PairCount>> = Vec::new();
    for i in 0..n {
        let dist = g.distances_from(i);
        for j in 0..n {
            let k = dist[j];
            if k == 0 {
                continue;
            }
            if closer.len() <= k {
                closer.resize(k + 1, None);
                farther.resize(k + 1, None);
            }
            for (kind, slot) in [
                (CountKind::Closer, &mut closer[k]),
                (CountKind::Farther, &mut farther[k]),
            ] {
                let observed = PairCount {
                    pair: (i, j),
                    value: neighbour_count(g, &dist, j, kind),
                };
                match slot {
                    None => *slot = Some(observed),
                    Some(first) if first.value != observed.value => {
                        return Ok(Certification::Witness(NonRegularityWitness {
                            kind: WitnessKind::NotDistanceRegular,
                            distance: k,
                            count: kind,
                            first: *first,
                            second: observed,
                        }));
                    }
                    Some(_) => {}
                }
            }
        }
    }

    let d = closer.len() - 1;
    let a: Vec<u64> = (1..=d)
        .map(|k| closer[k].map_or(0, |pc| pc.value as u64))
        .collect();
    let b: Vec<u64> = std::iter::once(degree as u64)
        .chain((1..d).map(|k| farther[k].map_or(0, |pc| pc.value as u64)))
        .collect();
    IntersectionSequence::new(a, b).map(Certification::DistanceRegular)
}

/// First entry where `A A_k` differs from `a_{k+1} A_{k+1} + alpha_k A_k + b_k A_{k-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RecurrenceMismatch {
    pub k: usize,
    pub i: usize,
    pub j: usize,
    pub lhs: i64,
    pub rhs: i64,
}

/// Checks the distance-k recurrence entrywise in integers for `0 <= k <= d`.
///
/// `(A A_k)_{ij}` is the number of neighbours `l` of `i` with `∂(l, j) = k`,
/// so one BFS from each `j` yields every `k` at once.
pub fn verify_recurrence(
    g: &Graph,
    is: &IntersectionSequence,
) -> std::result::Result<(), RecurrenceMismatch> {
    let n = g.vertex_count();
    let d = is.diameter();
    for j in 0..n {
        let dist = g.distances_from(j);
        for i in 0..n {
            let r = dist[i];
            let mut counts = [0i64; 3]; // distances r-1, r, r+1
            for &l in g.neighbors(i) {
                let idx = dist[l] + 1 - r;
                counts[idx] += 1;
            }
            for k in r.saturating_sub(1)..=(r + 1).min(d) {
                let lhs = counts[k + 1 - r];
                let rhs = if k + 1 == r {
                    is.a(r) as i64
                } else if k == r {
                    is.alpha_at(k)
                } else {
                    is.b(r + 1) as i64
                };
                if lhs != rhs {
                    return Err(RecurrenceMismatch { k, i, j, lhs, rhs });
                }
            }
        }
    }
    Ok(())
}

/// Value at `x` of the degree-`k` polynomial `p_k` with `p_k(A) = A_k`.
pub fn distance_poly_eval(is: &IntersectionSequence, k: usize, x: f64) -> Result<f64> {
    check_index(is, k)?;
    let deg = is.degree() as f64;
    let (mut prev, mut cur) = (0.0, 1.0);
    for m in 0..k {
        let shift = (is.a(m) + is.b(m + 1)) as f64 - deg;
        let next = (x * cur + shift * cur - is.b(m) as f64 * prev) / is.a(m + 1) as f64;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Exact rational evaluation of [`distance_poly_eval`] at an integer point.
pub fn distance_poly_eval_exact(
    is: &IntersectionSequence,
    k: usize,
    x: i64,
) -> Result<Ratio<i128>> {
    check_index(is, k)?;
    let deg = i128::from(is.degree());
    let x = Ratio::from_integer(i128::from(x));
    let (mut prev, mut cur) = (Ratio::from_integer(0), Ratio::from_integer(1));
    for m in 0..k {
        let shift = Ratio::from_integer(i128::from(is.a(m) + is.b(m + 1)) - deg);
        let next = (x * cur + shift * cur - Ratio::from_integer(i128::from(is.b(m))) * prev)
            / Ratio::from_integer(i128::from(is.a(m + 1)));
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

fn check_index(is: &IntersectionSequence, k: usize) -> Result<()> {
    if k > is.diameter() {
        return Err(Error::IndexOutOfRange {
            index: k,
            limit: is.diameter(),
        });
    }
    Ok(())
}
