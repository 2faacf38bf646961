//! Cubic Cayley graphs and GRR decisions.
//!
//! A connected Cayley graph is vertex-transitive under right translations, so
//! `|Aut| = |G| * |Aut_0|` and the graph is a GRR exactly when the stabilizer
//! of the identity vertex is trivial. That stabilizer is counted by
//! individualization and colour refinement.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::autgrp::pair_stabilizer_fast;
use crate::error::{Error, Result};
use crate::pgl2::GroupTable;

/// Simple undirected 3-regular graph, neighbors sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicGraph {
    adj: Vec<[u32; 3]>,
}

impl CubicGraph {
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut lists: Vec<Vec<u32>> = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a as usize >= n || b as usize >= n {
                return Err(Error::NotCubic(format!("edge ({a},{b}) out of range")));
            }
            lists[a as usize].push(b);
            lists[b as usize].push(a);
        }
        Self::from_adjacency(lists)
    }

    pub fn from_adjacency(lists: Vec<Vec<u32>>) -> Result<Self> {
        let n = lists.len();
        let mut adj = Vec::with_capacity(n);
        for (v, mut l) in lists.into_iter().enumerate() {
            l.sort_unstable();
            if l.len() != 3 {
                return Err(Error::NotCubic(format!("vertex {v} has degree {}", l.len())));
            }
            if l[0] == l[1] || l[1] == l[2] || l.contains(&(v as u32)) {
                return Err(Error::NotCubic(format!("vertex {v} has a loop or multi-edge")));
            }
            if l.iter().any(|&w| w as usize >= n) {
                return Err(Error::NotCubic(format!("vertex {v} has an out-of-range neighbor")));
            }
            adj.push([l[0], l[1], l[2]]);
        }
        let g = CubicGraph { adj };
        for v in 0..n as u32 {
            if g.neighbors(v).iter().any(|&w| !g.has_edge(w, v)) {
                return Err(Error::NotCubic("adjacency is not symmetric".into()));
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: u32) -> &[u32; 3] {
        &self.adj[v as usize]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].contains(&v)
    }

    /// Breadth-first order of the component of `root`.
    pub fn bfs_order(&self, root: u32) -> Vec<u32> {
        let mut seen = vec![false; self.n()];
        let mut order = vec![root];
        seen[root as usize] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in self.neighbors(u) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
        order
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.bfs_order(0).len() == self.n()
    }

    /// `n` on the first line, then one `v: a b c` line per vertex.
    pub fn to_adjacency_text(&self) -> String {
        let mut out = format!("{}\n", self.n());
        for (v, [a, b, c]) in self.adj.iter().enumerate() {
            writeln!(out, "{v}: {a} {b} {c}").expect("writing to a String");
        }
        out
    }
}

/// Colour refinement on two copies of the graph at once. Vertex `v` of the
/// first copy is `v`, of the second copy `n + v`; a colour shared across
/// copies is a constraint "maps to". Returns `None` when some colour has
/// different sizes in the two copies.
fn refine(g: &CubicGraph, mut colors: Vec<u32>) -> Option<Vec<u32>> {
    let n = g.n();
    let nbrs = |x: usize| -> [usize; 3] {
        let (base, v) = if x < n { (0, x) } else { (n, x - n) };
        g.adj[v].map(|w| base + w as usize)
    };
    let mut classes = count_classes(&colors)?;
    loop {
        let mut sigs: Vec<(u32, [u32; 3], u32)> = (0..2 * n)
            .map(|x| {
                let mut nc = nbrs(x).map(|y| colors[y]);
                nc.sort_unstable();
                (colors[x], nc, x as u32)
            })
            .collect();
        sigs.sort_unstable();
        let mut next = vec![0u32; 2 * n];
        let mut rank = 0u32;
        for i in 0..sigs.len() {
            if i > 0 && (sigs[i].0, sigs[i].1) != (sigs[i - 1].0, sigs[i - 1].1) {
                rank += 1;
            }
            next[sigs[i].2 as usize] = rank;
        }
        let refined = count_classes(&next)?;
        colors = next;
        if refined == classes {
            return Some(colors);
        }
        classes = refined;
    }
}

/// Number of colours, or `None` if a colour is unbalanced between copies.
fn count_classes(colors: &[u32]) -> Option<usize> {
    let n = colors.len() / 2;
    let k = *colors.iter().max().unwrap_or(&0) as usize + 1;
    let mut balance = vec![0i64; k];
    for (x, &c) in colors.iter().enumerate() {
        balance[c as usize] += if x < n { 1 } else { -1 };
    }
    balance.iter().all(|&b| b == 0).then_some(k)
}

fn count_extensions(g: &CubicGraph, colors: Vec<u32>, cap: u64, count: &mut u64) {
    let n = g.n();
    let Some(colors) = refine(g, colors) else {
        return;
    };
    let k = *colors.iter().max().expect("nonempty") as usize + 1;
    let mut size = vec![0u32; k];
    for &c in &colors[..n] {
        size[c as usize] += 1;
    }
    // branch on the smallest nontrivial cell
    let cell = (0..k).filter(|&c| size[c] > 1).min_by_key(|&c| size[c]);
    let Some(cell) = cell else {
        let mut image = vec![0u32; k];
        for (w, &c) in colors[n..].iter().enumerate() {
            image[c as usize] = w as u32;
        }
        let map: Vec<u32> = colors[..n].iter().map(|&c| image[c as usize]).collect();
        let is_aut = (0..n).all(|v| g.adj[v].iter().all(|&u| g.has_edge(map[v], map[u as usize])));
        if is_aut {
            *count += 1;
        }
        return;
    };
    let v = colors[..n].iter().position(|&c| c as usize == cell).expect("cell is nonempty");
    let fresh = k as u32;
    for w in (0..n).filter(|&w| colors[n + w] as usize == cell) {
        let mut next = colors.clone();
        next[v] = fresh;
        next[n + w] = fresh;
        count_extensions(g, next, cap, count);
        if *count > cap {
            return;
        }
    }
}

/// Number of automorphisms of a connected cubic graph fixing `v0`. Counting
/// stops once the count exceeds `cap`, so `cap = 1` decides triviality.
///
/// Individualization and refinement: `v0` is pinned in both copies, colours
/// are refined to a stable partition, and the search branches on the images
/// of one vertex from the smallest nontrivial cell. Each automorphism fixing
/// `v0` is reached by exactly one leaf.
pub fn vertex_stabilizer_size(g: &CubicGraph, v0: u32, cap: u64) -> Result<u64> {
    let n = g.n();
    if v0 as usize >= n {
        return Err(Error::NotCubic(format!("vertex {v0} out of range")));
    }
    if g.bfs_order(v0).len() != n {
        return Err(Error::Disconnected);
    }
    let mut colors = vec![0u32; 2 * n];
    colors[v0 as usize] = 1;
    colors[n + v0 as usize] = 1;
    let mut count = 0;
    count_extensions(g, colors, cap, &mut count);
    Ok(count)
}

/// `Cay(G, S)` for a 3-element inverse-closed connection set; vertex `g` is
/// adjacent to `s * g` for `s` in `S`.
#[derive(Clone, Debug)]
pub struct CayleyGraph {
    pub graph: CubicGraph,
    pub connection: [u32; 3],
}

/// Validates that `S` is an identity-free, inverse-closed set of three
/// distinct elements.
pub fn check_connection_set(table: &GroupTable, s: [u32; 3]) -> Result<()> {
    let bad = |m: &str| Err(Error::InvalidConnectionSet(m.to_string()));
    if s.iter().any(|&g| g as usize >= table.len()) {
        return bad("element out of range");
    }
    if s.contains(&table.identity()) {
        return bad("contains the identity");
    }
    if s[0] == s[1] || s[1] == s[2] || s[0] == s[2] {
        return bad("elements are not distinct");
    }
    if s.iter().any(|&g| !s.contains(&table.inv(g))) {
        return bad("not closed under inverses");
    }
    Ok(())
}

pub fn build(table: &GroupTable, s: [u32; 3]) -> Result<CayleyGraph> {
    check_connection_set(table, s)?;
    let lists: Vec<Vec<u32>> = (0..table.len() as u32).map(|g| s.iter().map(|&x| table.mul(x, g)).collect()).collect();
    let graph = CubicGraph::from_adjacency(lists)?;
    Ok(CayleyGraph { graph, connection: s })
}

/// GRR test straight from the graph: connected and trivial vertex stabilizer.
pub fn is_grr_direct(table: &GroupTable, s: [u32; 3]) -> Result<bool> {
    let cay = build(table, s)?;
    if !cay.graph.is_connected() {
        return Ok(false);
    }
    Ok(vertex_stabilizer_size(&cay.graph, 0, 1)? == 1)
}

/// GRR test through the automorphism criterion: for a generating cubic
/// connection set of PSL(2,q), `q != 11`, the Cayley graph is a GRR iff no
/// nonidentity group automorphism fixes `S`.
pub fn is_grr_thm(table: &GroupTable, s: [u32; 3]) -> Result<bool> {
    if table.q() == 11 {
        return Err(Error::CriterionUnavailable);
    }
    check_connection_set(table, s)?;
    if !table.generates(&s) {
        return Err(Error::InvalidConnectionSet("does not generate the group".into()));
    }
    Ok(pair_stabilizer_fast(table, s)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfq::FieldCtx;
    use crate::pgl2::GroupKind;

    fn k4() -> CubicGraph {
        CubicGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn prism() -> CubicGraph {
        CubicGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).unwrap()
    }

    #[test]
    fn small_stabilizers() {
        assert_eq!(vertex_stabilizer_size(&k4(), 0, u64::MAX).unwrap(), 6);
        // triangular prism: Aut = D6 x C2 of order 12, stabilizer order 2
        assert_eq!(vertex_stabilizer_size(&prism(), 0, u64::MAX).unwrap(), 2);
        assert_eq!(vertex_stabilizer_size(&k4(), 0, 1).unwrap(), 2);
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(CubicGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2)]).is_err());
        let two_k4 = CubicGraph::from_edges(
            8,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (4, 7), (5, 6), (5, 7), (6, 7)],
        )
        .unwrap();
        assert!(!two_k4.is_connected());
        assert!(matches!(vertex_stabilizer_size(&two_k4, 0, 1), Err(Error::Disconnected)));
    }

    #[test]
    fn adjacency_text() {
        assert_eq!(k4().to_adjacency_text(), "4\n0: 1 2 3\n1: 0 2 3\n2: 0 1 3\n3: 0 1 2\n");
    }

    #[test]
    fn cayley_build_and_translations() {
        let t = GroupTable::enumerate(FieldCtx::with_order(5).unwrap(), GroupKind::Psl).unwrap();
        let pair = t.max_dihedral_pair().unwrap();
        let z = t.involutions().into_iter().find(|&z| t.generates(&[pair.x, pair.y, z])).unwrap();
        let cay = build(&t, [pair.x, pair.y, z]).unwrap();
        assert_eq!(cay.graph.n(), 60);
        assert!(cay.graph.is_connected());
        for r in (0..60).step_by(7) {
            for v in 0..60u32 {
                for &w in cay.graph.neighbors(v) {
                    assert!(cay.graph.has_edge(t.mul(v, r), t.mul(w, r)));
                }
            }
        }
        // inside the dihedral subgroup: one component per coset
        let inv_h: Vec<u32> = pair.subgroup.iter().copied().filter(|&g| t.is_involution(g)).collect();
        let cay = build(&t, [inv_h[0], inv_h[1], inv_h[2]]).unwrap();
        assert!(!cay.graph.is_connected());
        let mut seen = [false; 60];
        let mut components = 0;
        for v in 0..60u32 {
            if !seen[v as usize] {
                components += 1;
                for w in cay.graph.bfs_order(v) {
                    seen[w as usize] = true;
                }
            }
        }
        assert_eq!(components, 60 / pair.subgroup.len());
        assert!(!is_grr_direct(&t, [inv_h[0], inv_h[1], inv_h[2]]).unwrap());
    }

    #[test]
    fn connection_set_validation() {
        let t = GroupTable::enumerate(FieldCtx::with_order(7).unwrap(), GroupKind::Psl).unwrap();
        let inv = t.involutions();
        assert!(build(&t, [0, inv[0], inv[1]]).is_err());
        assert!(build(&t, [inv[0], inv[0], inv[1]]).is_err());
        let order3 = (0..168).find(|&g| t.order(g) == 3).unwrap();
        assert!(build(&t, [inv[0], order3, inv[1]]).is_err());
        assert!(build(&t, [inv[0], order3, t.inv(order3)]).is_ok());
        let t11 = GroupTable::enumerate(FieldCtx::with_order(11).unwrap(), GroupKind::Psl).unwrap();
        let i11 = t11.involutions();
        assert!(matches!(is_grr_thm(&t11, [i11[0], i11[1], i11[2]]), Err(Error::CriterionUnavailable)));
    }
}
