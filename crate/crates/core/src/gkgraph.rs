//! Gruenberg–Kegel prime graphs.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::spectra::Spectrum;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("prime graphs are limited to 64 vertices, got {0}")]
    TooManyVertices(usize),
    #[error("graph has {0} vertices; the predicate needs at least two")]
    Degenerate(usize),
}

/// A graph on primes, adjacency stored as one bitmask per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeGraph {
    vertices: Vec<u64>,
    adjacency: Vec<u64>,
}

#[derive(Serialize)]
struct GraphJson<'a> {
    vertices: &'a [u64],
    edges: Vec<[u64; 2]>,
}

impl PrimeGraph {
    /// Builds a graph from sorted-or-not vertex and edge lists.
    pub fn from_edges(vertices: &[u64], edges: &[(u64, u64)]) -> Result<Self, GraphError> {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        if vs.len() > 64 {
            return Err(GraphError::TooManyVertices(vs.len()));
        }
        let mut adjacency = vec![0u64; vs.len()];
        for &(r, s) in edges {
            if r == s {
                continue;
            }
            if let (Ok(i), Ok(j)) = (vs.binary_search(&r), vs.binary_search(&s)) {
                adjacency[i] |= 1 << j;
                adjacency[j] |= 1 << i;
            }
        }
        Ok(Self {
            vertices: vs,
            adjacency,
        })
    }

    pub fn vertices(&self) -> &[u64] {
        &self.vertices
    }

    pub fn adjacent(&self, r: u64, s: u64) -> bool {
        match (
            self.vertices.binary_search(&r),
            self.vertices.binary_search(&s),
        ) {
            (Ok(i), Ok(j)) => self.adjacency[i] >> j & 1 == 1,
            _ => false,
        }
    }

    /// Edges `(r, s)` with `r < s`, sorted.
    pub fn edges(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for (i, &r) in self.vertices.iter().enumerate() {
            for (j, &s) in self.vertices.iter().enumerate().skip(i + 1) {
                if self.adjacency[i] >> j & 1 == 1 {
                    out.push((r, s));
                }
            }
        }
        out
    }

    /// The smallest vertex adjacent to all others.
    pub fn dominating_vertex(&self) -> Option<u64> {
        let n = self.vertices.len();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        (0..n)
            .find(|&i| self.adjacency[i] | (1 << i) == full)
            .map(|i| self.vertices[i])
    }

    /// `Ok(None)` when every vertex has a non-neighbor, otherwise the
    /// dominating vertex that violates it.
    pub fn every_vertex_has_nonneighbor(&self) -> Result<Option<u64>, GraphError> {
        if self.vertices.len() < 2 {
            return Err(GraphError::Degenerate(self.vertices.len()));
        }
        Ok(self.dominating_vertex())
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph GK {\n");
        for v in &self.vertices {
            writeln!(s, "  \"{v}\";").expect("string write");
        }
        for (r, t) in self.edges() {
            writeln!(s, "  \"{r}\" -- \"{t}\";").expect("string write");
        }
        s.push('}');
        s
    }

    pub fn to_json(&self) -> String {
        let g = GraphJson {
            vertices: &self.vertices,
            edges: self.edges().into_iter().map(|(r, s)| [r, s]).collect(),
        };
        serde_json::to_string(&g).expect("plain data serializes")
    }
}

/// `GK(ω)`: vertices the primes of `ω`, `r ~ s` iff `rs ∈ ω`.
pub fn gk(spec: &Spectrum) -> Result<PrimeGraph, GraphError> {
    let vertices = spec.primes();
    let mut edges = Vec::new();
    for (i, &r) in vertices.iter().enumerate() {
        for &s in &vertices[i + 1..] {
            if spec.contains(r * s) {
                edges.push((r, s));
            }
        }
    }
    PrimeGraph::from_edges(&vertices, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn graph_of(mu: &[u64]) -> PrimeGraph {
        gk(&Spectrum::from_orders(mu.iter().copied()).unwrap()).unwrap()
    }

    #[test]
    fn examples() {
        let g = graph_of(&[3, 4, 7]);
        assert_eq!(g.vertices(), &[2, 3, 7]);
        assert!(g.edges().is_empty());
        assert_eq!(g.every_vertex_has_nonneighbor(), Ok(None));
        let g = graph_of(&[4, 5, 6]);
        assert_eq!(g.edges(), vec![(2, 3)]);
        assert_eq!(g.dominating_vertex(), None);
        let g = graph_of(&[1]);
        assert!(g.vertices().is_empty());
        assert_eq!(
            g.every_vertex_has_nonneighbor(),
            Err(GraphError::Degenerate(0))
        );
        let complete = graph_of(&[30]);
        assert_eq!(complete.dominating_vertex(), Some(2));
        assert_eq!(complete.every_vertex_has_nonneighbor(), Ok(Some(2)));
        assert_eq!(
            graph_of(&[4]).every_vertex_has_nonneighbor(),
            Err(GraphError::Degenerate(1))
        );
    }

    #[test]
    fn exports() {
        let g = graph_of(&[6, 5]);
        assert_eq!(g.to_json(), r#"{"vertices":[2,3,5],"edges":[[2,3]]}"#);
        assert_eq!(
            g.to_dot(),
            "graph GK {\n  \"2\";\n  \"3\";\n  \"5\";\n  \"2\" -- \"3\";\n}"
        );
    }

    #[test]
    fn vertex_limit() {
        let many: Vec<u64> = (0..65).map(|i| 2 * i + 1000).collect();
        assert_eq!(
            PrimeGraph::from_edges(&many, &[]),
            Err(GraphError::TooManyVertices(65))
        );
    }

    proptest! {
        #[test]
        fn monotone_on_nested_spectra(
            base in prop::collection::vec(1u64..300, 1..6),
            extra in prop::collection::vec(1u64..300, 0..4),
        ) {
            let a = Spectrum::from_orders(base.iter().copied()).unwrap();
            // enlarge by multiples of existing members so π stays fixed
            let primes = a.primes();
            let bigger: Vec<u64> = base
                .iter()
                .copied()
                .chain(extra.iter().map(|&e| {
                    let keep: u64 = primes.iter().filter(|&&p| e % p == 0).product();
                    keep.max(1) * base[0]
                }))
                .collect();
            let b = Spectrum::from_orders(bigger).unwrap();
            prop_assume!(a.primes() == b.primes());
            let (ga, gb) = (gk(&a).unwrap(), gk(&b).unwrap());
            for (r, s) in ga.edges() {
                prop_assert!(gb.adjacent(r, s));
            }
        }

        #[test]
        fn domination_duality(mu in prop::collection::vec(1u64..500, 1..6)) {
            let g = gk(&Spectrum::from_orders(mu).unwrap()).unwrap();
            if g.vertices().len() >= 2 {
                let dom = g.dominating_vertex();
                prop_assert_eq!(g.every_vertex_has_nonneighbor().unwrap(), dom);
            }
        }
    }
}
