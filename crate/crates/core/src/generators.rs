//! Built-in graph families, addressable by name.
//!
//! | name                     | graph                                 |
//! |--------------------------|---------------------------------------|
//! | `complete:n`             | K_n, n >= 2                           |
//! | `cycle:n`                | C_n, n >= 3                           |
//! | `petersen`               | Petersen graph                        |
//! | `hypercube:d`            | Q_d, d >= 1                           |
//! | `complete_bipartite:n`   | K_{n,n}, n >= 1                       |

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn complete(n: usize) -> Result<Graph> {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::UnknownGraph(format!("cycle:{n} needs n >= 3")));
    }
    Graph::from_edges(n, (0..n).map(|u| (u, (u + 1) % n)))
}

/// Outer pentagon, inner pentagram, five spokes.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("petersen is valid")
}

pub fn hypercube(d: usize) -> Result<Graph> {
    if d == 0 || d > 20 {
        return Err(Error::UnknownGraph(format!(
            "hypercube:{d} needs 1 <= d <= 20"
        )));
    }
    let n = 1usize << d;
    Graph::from_edges(
        n,
        (0..n).flat_map(|u| {
            (0..d)
                .map(move |b| (u, u ^ (1 << b)))
                .filter(|&(u, v)| u < v)
        }),
    )
}

pub fn complete_bipartite(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::UnknownGraph("complete_bipartite:0".into()));
    }
    Graph::from_edges(2 * n, (0..n).flat_map(|u| (n..2 * n).map(move |v| (u, v))))
}

/// Resolves a built-in name. Returns `Ok(None)` when `name` is not a
/// built-in (callers then treat it as a file path).
pub fn builtin(name: &str) -> Result<Option<Graph>> {
    let (family, arg) = match name.split_once(':') {
        Some((f, a)) => (f, Some(a)),
        None => (name, None),
    };
    let size = || -> Result<usize> {
        arg.and_then(|a| a.trim().parse().ok())
            .ok_or_else(|| Error::UnknownGraph(name.to_string()))
    };
    let g = match (family, arg) {
        ("petersen", None) => petersen(),
        ("complete", Some(_)) => complete(size()?)?,
        ("cycle", Some(_)) => cycle(size()?)?,
        ("hypercube", Some(_)) => hypercube(size()?)?,
        ("complete_bipartite", Some(_)) => complete_bipartite(size()?)?,
        _ => return Ok(None),
    };
    Ok(Some(g))
}
