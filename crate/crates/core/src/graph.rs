//! Undirected graphs on `0..n` and maximal-clique enumeration.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<bool>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![vec![false; n]; n] }
    }

    pub fn from_predicate(n: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Graph::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if edge(i, j) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        self.adj[i][j] = true;
        self.adj[j][i] = true;
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].iter().filter(|&&b| b).count()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[i].iter().enumerate().filter(|(_, &b)| b).map(|(j, _)| j)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.adj[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// All maximal cliques (Bron–Kerbosch with pivoting), each sorted, in
    /// lexicographic order.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let p: Vec<usize> = (0..self.len()).collect();
        self.bron_kerbosch(&mut Vec::new(), p, Vec::new(), &mut out);
        for c in out.iter_mut() {
            c.sort_unstable();
        }
        out.sort();
        out
    }

    fn bron_kerbosch(&self, r: &mut Vec<usize>, p: Vec<usize>, mut x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r.clone());
            }
            return;
        }
        let pivot = p
            .iter()
            .chain(&x)
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&v| self.adj[u][v]).count())
            .unwrap();
        let candidates: Vec<usize> = p.iter().copied().filter(|&v| !self.adj[pivot][v]).collect();
        let mut p = p;
        for v in candidates {
            let np: Vec<usize> = p.iter().copied().filter(|&w| self.adj[v][w]).collect();
            let nx: Vec<usize> = x.iter().copied().filter(|&w| self.adj[v][w]).collect();
            r.push(v);
            self.bron_kerbosch(r, np, nx, out);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_plus_pendant() {
        let mut g = Graph::new(4);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(0, 2);
        g.add_edge(2, 3);
        assert_eq!(g.maximal_cliques(), vec![vec![0, 1, 2], vec![2, 3]]);
    }

    #[test]
    fn isolated_vertices_are_cliques() {
        let g = Graph::new(3);
        assert_eq!(g.maximal_cliques(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn cliques_match_brute_force() {
        // 7-vertex graph from a fixed edge pattern; compare with subset enumeration
        let g = Graph::from_predicate(7, |i, j| (i * 3 + j * 5) % 4 != 0);
        let mut brute = Vec::new();
        for mask in 1u32..(1 << 7) {
            let s: Vec<usize> = (0..7).filter(|&i| mask & (1 << i) != 0).collect();
            let clique = s.iter().all(|&a| s.iter().all(|&b| a == b || g.has_edge(a, b)));
            let maximal = (0..7).all(|v| s.contains(&v) || !s.iter().all(|&a| g.has_edge(a, v)));
            if clique && maximal {
                brute.push(s);
            }
        }
        brute.sort();
        assert_eq!(g.maximal_cliques(), brute);
    }
}
