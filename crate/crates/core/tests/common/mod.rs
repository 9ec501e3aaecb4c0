#![allow(dead_code)]

use drg_jacobi::generators;
use drg_jacobi::Graph;

/// Distance-regular corpus: K_2..K_8, C_4..C_9, Petersen, Q_3, K_{3,3}.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 2..=8 {
        out.push((format!("complete:{n}"), generators::complete(n).unwrap()));
    }
    for n in 4..=9 {
        out.push((format!("cycle:{n}"), generators::cycle(n).unwrap()));
    }
    out.push(("petersen".into(), generators::petersen()));
    out.push(("hypercube:3".into(), generators::hypercube(3).unwrap()));
    out.push((
        "complete_bipartite:3".into(),
        generators::complete_bipartite(3).unwrap(),
    ));
    out
}

/// Petersen as the Kneser graph K(5,2): 2-subsets of {0..4}, adjacent when disjoint.
pub fn kneser_petersen_edges() -> Vec<(usize, usize)> {
    let subsets: Vec<(usize, usize)> = (0..5)
        .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
        .collect();
    let mut edges = Vec::new();
    for (u, &(a, b)) in subsets.iter().enumerate() {
        for (v, &(c, d)) in subsets.iter().enumerate().skip(u + 1) {
            if a != c && a != d && b != c && b != d {
                edges.push((u, v));
            }
        }
    }
    edges
}
