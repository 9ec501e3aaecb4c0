//! Simple connected undirected graphs and their distance-k operators.
//!
//! Vertices are dense 0-based indices. A [`Graph`] is validated on
//! construction (no self-loops, no duplicate edges, connected), so every
//! function here may assume those properties.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// A simple connected undirected graph stored as sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph on `vertex_count` vertices from an edge iterator.
    ///
    /// Duplicate edges (in either orientation) are merged.
    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if vertex_count < 2 {
            return Err(Error::TooSmall(vertex_count));
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        vertex_count,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for row in &mut adjacency {
            row.sort_unstable();
            row.dedup();
        }
        let g = Graph { adjacency };
        let dist = g.bfs_distances(0);
        if let Some(unreachable) = dist.iter().position(|d| d.is_none()) {
            return Err(Error::NotConnected {
                from: 0,
                unreachable,
            });
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count(),
            });
        }
        Ok(())
    }

    // Unreachable vertices are `None`; only used before connectivity is known.
    fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Graph distances from `source` to every vertex.
    pub(crate) fn distances_from(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// Parses a whitespace-separated `u v` edge list.
///
/// Lines starting with `#` and blank lines are skipped. The vertex set is
/// `0..=max_index`; every index in that range must end up connected.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut max_index = None::<usize>;
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<usize> {
            tok.and_then(|t| t.parse().ok())
                .ok_or(Error::MalformedLine(line_no + 1))
        };
        let u = parse(parts.next())?;
        let v = parse(parts.next())?;
        if parts.next().is_some() {
            return Err(Error::MalformedLine(line_no + 1));
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        max_index = Some(max_index.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u, v));
    }
    let vertex_count = max_index.map_or(0, |m| m + 1);
    Graph::from_edges(vertex_count, edges)
}

/// Distances from `v` to every vertex; `result[v] == 0`.
pub fn bfs_distances(g: &Graph, v: usize) -> Result<Vec<usize>> {
    g.check_vertex(v)?;
    Ok(g.distances_from(v))
}

/// Largest distance from `v`.
pub fn eccentricity(g: &Graph, v: usize) -> Result<usize> {
    Ok(bfs_distances(g, v)?.into_iter().max().unwrap_or(0))
}

/// Maximum eccentricity over all vertices.
pub fn diameter(g: &Graph) -> usize {
    (0..g.vertex_count())
        .map(|v| g.distances_from(v).into_iter().max().unwrap_or(0))
        .max()
        .unwrap_or(0)
}

/// Number of vertices at distance exactly `k` from `v`.
pub fn degree_k(g: &Graph, v: usize, k: usize) -> Result<usize> {
    Ok(bfs_distances(g, v)?.into_iter().filter(|&d| d == k).count())
}

/// Number of isoscycle-k's at `v`: adjacent pairs both at distance `k` from `v`.
pub fn isoscycle_count(g: &Graph, v: usize, k: usize) -> Result<usize> {
    let dist = bfs_distances(g, v)?;
    let ordered: usize = (0..g.vertex_count())
        .filter(|&j| dist[j] == k)
        .map(|j| g.neighbors(j).iter().filter(|&&l| dist[l] == k).count())
        .sum();
    if !ordered.is_multiple_of(2) {
        return Err(Error::OddPairCount(ordered));
    }
    Ok(ordered / 2)
}

/// The 0/1 distance-k matrix, stored row-wise as sorted column lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceKMatrix {
    k: usize,
    rows: Vec<Vec<usize>>,
}

impl DistanceKMatrix {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        u8::from(self.rows[i].binary_search(&j).is_ok())
    }

    pub fn row_sum(&self, i: usize) -> usize {
        self.rows[i].len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().all(|&j| self.rows[j].binary_search(&i).is_ok()))
    }

    /// Number of stored ones.
    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }
}

/// Builds A_k with one BFS per vertex.
pub fn distance_k_matrix(g: &Graph, k: usize) -> DistanceKMatrix {
    let rows = (0..g.vertex_count())
        .map(|i| {
            g.distances_from(i)
                .into_iter()
                .enumerate()
                .filter(|&(_, d)| d == k)
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    DistanceKMatrix { k, rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn hexagon() -> Graph {
        generators::cycle(6).unwrap()
    }

    #[test]
    fn triangle_parses() {
        let g = parse_edge_list("0 1\n1 2\n2 0").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn comments_blank_lines_and_duplicates() {
        let g = parse_edge_list("# header\n\n0 1\n  # indented comment\n1 0\n1 2\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_edge_list("0 1\n2 3"),
            Err(Error::NotConnected {
                from: 0,
                unreachable: 2
            })
        );
        assert_eq!(parse_edge_list("0 1\n1 1\n"), Err(Error::SelfLoop(1)));
        assert_eq!(parse_edge_list("0 1\n1 x\n"), Err(Error::MalformedLine(2)));
        assert_eq!(
            parse_edge_list("0 1\n# c\n1 2 3\n"),
            Err(Error::MalformedLine(3))
        );
        assert_eq!(parse_edge_list("0 -1\n"), Err(Error::MalformedLine(1)));
        assert_eq!(parse_edge_list("0\n"), Err(Error::MalformedLine(1)));
        assert_eq!(
            parse_edge_list("# only a comment\n"),
            Err(Error::TooSmall(0))
        );
        // vertex 1 never mentioned
        assert!(matches!(
            parse_edge_list("0 2\n"),
            Err(Error::NotConnected { unreachable: 1, .. })
        ));
    }

    #[test]
    fn bfs_examples() {
        let k3 = generators::complete(3).unwrap();
        assert_eq!(bfs_distances(&k3, 0).unwrap(), vec![0, 1, 1]);
        assert_eq!(
            bfs_distances(&hexagon(), 0).unwrap(),
            vec![0, 1, 2, 3, 2, 1]
        );
        assert!(bfs_distances(&k3, 3).is_err());
    }

    #[test]
    fn diameters() {
        assert_eq!(diameter(&generators::complete(7).unwrap()), 1);
        assert_eq!(diameter(&hexagon()), 3);
        assert_eq!(diameter(&generators::petersen()), 2);
        assert_eq!(eccentricity(&hexagon(), 4).unwrap(), 3);
    }

    #[test]
    fn distance_k_matrices() {
        let g = hexagon();
        let a0 = distance_k_matrix(&g, 0);
        for i in 0..6 {
            assert_eq!(a0.row(i), &[i]);
        }
        let a3 = distance_k_matrix(&g, 3);
        for i in 0..6 {
            assert_eq!(a3.row(i), &[(i + 3) % 6]);
        }
        assert!(a3.is_symmetric());
        assert!(distance_k_matrix(&g, 4).is_zero());
        assert!(!a3.is_zero());
    }

    #[test]
    fn degree_and_isoscycle_examples() {
        for n in 2..8 {
            let kn = generators::complete(n).unwrap();
            assert_eq!(degree_k(&kn, 0, 1).unwrap(), n - 1);
            assert_eq!(degree_k(&kn, n - 1, 0).unwrap(), 1);
        }
        let k4 = generators::complete(4).unwrap();
        assert_eq!(isoscycle_count(&k4, 2, 1).unwrap(), 3);
        for v in 0..6 {
            assert_eq!(isoscycle_count(&hexagon(), v, 1).unwrap(), 0);
        }
        let p = generators::petersen();
        assert_eq!(degree_k(&p, 5, 2).unwrap(), 6);
        assert_eq!(isoscycle_count(&p, 5, 2).unwrap(), 6);
    }

    #[test]
    fn trees_have_no_isoscycles() {
        // a small non-regular tree
        let g = Graph::from_edges(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (5, 6)]).unwrap();
        for v in 0..7 {
            for k in 0..6 {
                assert_eq!(isoscycle_count(&g, v, k).unwrap(), 0);
            }
        }
    }
}
