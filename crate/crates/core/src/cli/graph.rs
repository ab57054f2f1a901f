use std::collections::{BTreeSet, HashMap};

use crate::integer::IntegerMatrix;
use crate::{Error, Result};

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Edges as unordered pairs; loops, duplicates and out-of-range
    /// endpoints are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Input(format!("edge ({u}, {v}) outside a graph on {n} vertices")));
            }
            if u == v {
                return Err(Error::Input(format!("loop at vertex {u}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::Input(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(Graph { n, edges: set })
    }

    /// Reads a symmetric adjacency matrix; any nonzero off-diagonal entry is
    /// an edge.
    pub fn from_adjacency(a: &IntegerMatrix) -> Result<Self> {
        let mut pattern = BTreeSet::new();
        for (r, c, _) in a.entries() {
            if r == c {
                return Err(Error::Input(format!("adjacency matrix has a loop at vertex {}", r + 1)));
            }
            pattern.insert((*r, *c));
        }
        if let Some(&(r, c)) = pattern.iter().find(|&&(r, c)| !pattern.contains(&(c, r))) {
            return Err(Error::Input(format!("adjacency matrix is not symmetric at ({}, {})", r + 1, c + 1)));
        }
        Graph::new(a.dim(), pattern.into_iter().filter(|(r, c)| r < c))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// 0/1 adjacency matrix.
    pub fn adjacency(&self) -> IntegerMatrix {
        IntegerMatrix::from_i64_triplets(self.n, self.edges.iter().flat_map(|&(u, v)| [(u, v, 1), (v, u, 1)]))
            .expect("edges are in range")
    }
}

/// All k-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Symmetric k-th power: vertex `i` is the i-th k-subset in lexicographic
/// order; two subsets are adjacent when their symmetric difference is an
/// edge of `g`.
pub fn symmetric_power(g: &Graph, k: usize) -> Result<Graph> {
    if k == 0 || k > g.n {
        return Err(Error::Input(format!("k = {k} must lie in 1..={}", g.n)));
    }
    let subsets = k_subsets(g.n, k);
    let index: HashMap<&[usize], usize> = subsets.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let mut edges = Vec::new();
    for (i, s) in subsets.iter().enumerate() {
        // swapping u in S for a neighbour v outside S reaches T with S^T = {u, v}
        for (pos, &u) in s.iter().enumerate() {
            for v in 0..g.n {
                if !g.has_edge(u, v) || s.binary_search(&v).is_ok() {
                    continue;
                }
                let mut t = s.clone();
                t.remove(pos);
                let at = t.binary_search(&v).unwrap_err();
                t.insert(at, v);
                let j = index[t.as_slice()];
                if i < j {
                    edges.push((i, j));
                }
            }
        }
    }
    Graph::new(subsets.len(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::new(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn path_square_by_definition() {
        let g = path3();
        let p = symmetric_power(&g, 2).unwrap();
        // subsets {0,1}, {0,2}, {1,2}; check every pair against the definition
        let subs = k_subsets(3, 2);
        for i in 0..3 {
            for j in i + 1..3 {
                let diff: Vec<usize> = (0..3).filter(|x| subs[i].contains(x) != subs[j].contains(x)).collect();
                let expect = diff.len() == 2 && g.has_edge(diff[0], diff[1]);
                assert_eq!(p.has_edge(i, j), expect, "{:?} {:?}", subs[i], subs[j]);
            }
        }
        assert_eq!(p.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn first_power_is_identity() {
        let g = Graph::new(5, [(0, 3), (1, 2), (3, 4), (0, 4)]).unwrap();
        assert_eq!(symmetric_power(&g, 1).unwrap(), g);
    }

    #[test]
    fn dimensions() {
        let g = Graph::new(16, (0..15).map(|i| (i, i + 1))).unwrap();
        assert_eq!(symmetric_power(&g, 3).unwrap().vertex_count(), 560);
        assert!(symmetric_power(&g, 0).is_err());
        assert!(symmetric_power(&g, 17).is_err());
        assert_eq!(k_subsets(5, 5), vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(k_subsets(4, 2).len(), 6);
    }

    #[test]
    fn adjacency_round_trip() {
        let g = path3();
        assert_eq!(Graph::from_adjacency(&g.adjacency()).unwrap(), g);
        let asym = IntegerMatrix::from_i64_triplets(2, [(0, 1, 1)]).unwrap();
        assert!(Graph::from_adjacency(&asym).is_err());
        assert!(Graph::from_adjacency(&IntegerMatrix::diagonal(&[1, 0])).is_err());
        assert!(Graph::new(2, [(0, 1), (1, 0)]).is_err());
    }
}
