//! Positive roots of the underlying diagram of a quiver, by reflection
//! closure on the Cartan matrix of the underlying undirected graph.
//!
//! This is the independent counting oracle for the enumeration module:
//! it never touches representations or matrices over fields, only
//! integer vectors, so an agreement between the two is meaningful.

use crate::error::Error;
use crate::quiver::{DimensionVector, Quiver};
use crate::Result;

/// Positive roots of the underlying (simply laced) diagram, as dimension
/// vectors. Fails on diagrams of non-finite type instead of looping.
pub fn positive_roots(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Vec<DimensionVector>> {
    // Cartan matrix: 2 on the diagonal, minus the edge multiplicity off it
    let mut cartan = vec![vec![0i64; vertex_count]; vertex_count];
    for (v, row) in cartan.iter_mut().enumerate() {
        row[v] = 2;
    }
    for &(a, b) in edges {
        if a == b {
            return Err(Error::InvalidQuiver("loop in the underlying graph".into()));
        }
        cartan[a][b] -= 1;
        cartan[b][a] -= 1;
    }

    let cap = 4usize.saturating_pow(vertex_count as u32).max(1024);
    let mut found: Vec<Vec<i64>> = Vec::new();
    let mut queue: Vec<Vec<i64>> = Vec::new();
    for v in 0..vertex_count {
        let mut simple = vec![0i64; vertex_count];
        simple[v] = 1;
        found.push(simple.clone());
        queue.push(simple);
    }
    while let Some(d) = queue.pop() {
        for i in 0..vertex_count {
            // s_i(d) = d - <d, alpha_i> e_i
            let pairing: i64 = (0..vertex_count).map(|j| cartan[i][j] * d[j]).sum();
            let mut refl = d.clone();
            refl[i] -= pairing;
            if refl.iter().all(|&x| x >= 0) && refl.iter().any(|&x| x > 0) && !found.contains(&refl)
            {
                found.push(refl.clone());
                queue.push(refl);
                if found.len() > cap {
                    return Err(Error::BoundsExceeded(format!(
                        "more than {} positive roots: diagram is not of finite type",
                        cap
                    )));
                }
            }
        }
    }
    found.sort();
    Ok(found
        .into_iter()
        .map(|v| DimensionVector(v.into_iter().map(|x| x as usize).collect()))
        .collect())
}

/// Positive roots of the diagram underlying a quiver.
pub fn positive_roots_of_quiver(q: &Quiver) -> Result<Vec<DimensionVector>> {
    positive_roots(q.vertex_count(), &q.underlying_edges())
}
