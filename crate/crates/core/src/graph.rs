//! Labeled simple graphs on up to 64 vertices with a packed edge set.
//!
//! Edges are stored as a bitset indexed by the lexicographic ordering of
//! vertex pairs `(i, j)` with `i < j`, so a graph of size `m` is exactly an
//! `m`-subset of pair indices. The enumeration machinery in [`crate::oracle`]
//! relies on this correspondence.

use std::fmt;

use thiserror::Error;

/// Largest supported graph order.
pub const MAX_ORDER: usize = 64;

/// Brute-force isomorphism testing is capped here (8! = 40320 permutations).
pub const ISO_CAP: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph order must be between 1 and {MAX_ORDER}, got {0}")]
    BadOrder(usize),
    #[error("vertex {v} out of range for order {n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("part size {d} exceeds order {n}")]
    PartTooLarge { d: usize, n: usize },
    #[error("star size {t} exceeds n - 1 = {max}")]
    StarTooLarge { t: usize, max: usize },
    #[error("cannot delete a vertex from a graph of order 1")]
    DeleteFromSingleton,
    #[error("isomorphism testing is capped at order {ISO_CAP}, got {0}")]
    IsomorphismCap(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Number of vertex pairs of an order-`n` graph, `n(n-1)/2`.
pub fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Lexicographic rank of the pair `(i, j)`, `i < j`, among all pairs on `n`
/// vertices: (0,1), (0,2), ..., (0,n-1), (1,2), ...
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Inverse of [`pair_index`].
pub fn pair_from_index(n: usize, idx: usize) -> (usize, usize) {
    debug_assert!(idx < pair_count(n));
    let mut i = 0;
    let mut base = 0;
    while base + (n - 1 - i) <= idx {
        base += n - 1 - i;
        i += 1;
    }
    (i, idx - base + i + 1)
}

/// A labeled simple graph with vertices `0, ..., n-1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        if n == 0 || n > MAX_ORDER {
            return Err(GraphError::BadOrder(n));
        }
        let words = pair_count(n).div_ceil(64).max(1);
        Ok(Graph {
            n,
            bits: vec![0; words],
        })
    }

    /// Graph with exactly the given edges. Rejects out-of-range endpoints,
    /// self-loops and duplicates.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if g.has_edge(u, v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    /// Complete bipartite graph `K_{d,n-d}` with parts `{0,...,d-1}` and
    /// `{d,...,n-1}`.
    pub fn complete_bipartite(d: usize, n: usize) -> Result<Graph, GraphError> {
        if d > n {
            return Err(GraphError::PartTooLarge { d, n });
        }
        let mut g = Graph::empty(n)?;
        for i in 0..d {
            for j in d..n {
                g.set_edge(i, j, true);
            }
        }
        Ok(g)
    }

    /// The star `K_{1,t}` together with `n-t-1` isolated vertices. The center
    /// is vertex 0, the leaves are `1,...,t`.
    pub fn star_union(n: usize, t: usize) -> Result<Graph, GraphError> {
        let g = Graph::empty(n)?;
        if t > n - 1 {
            return Err(GraphError::StarTooLarge { t, max: n - 1 });
        }
        let mut g = g;
        for leaf in 1..=t {
            g.set_edge(0, leaf, true);
        }
        Ok(g)
    }

    /// Graph whose edge set is the given set of pair indices.
    pub fn from_pair_indices(n: usize, idxs: &[usize]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        let p = pair_count(n);
        for &idx in idxs {
            assert!(idx < p, "pair index {idx} out of range for order {n}");
            g.bits[idx / 64] |= 1 << (idx % 64);
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n && u != v);
        let idx = pair_index(self.n, u.min(v), u.max(v));
        self.bits[idx / 64] >> (idx % 64) & 1 == 1
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        let idx = pair_index(self.n, u.min(v), u.max(v));
        if present {
            self.bits[idx / 64] |= 1 << (idx % 64);
        } else {
            self.bits[idx / 64] &= !(1 << (idx % 64));
        }
    }

    /// Edges as `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..pair_count(n))
            .filter(move |&idx| self.bits[idx / 64] >> (idx % 64) & 1 == 1)
            .map(move |idx| pair_from_index(n, idx))
    }

    /// Edge set as pair indices, ascending.
    pub fn pair_indices(&self) -> Vec<usize> {
        (0..pair_count(self.n))
            .filter(|&idx| self.bits[idx / 64] >> (idx % 64) & 1 == 1)
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        assert!(v < self.n);
        (0..self.n)
            .filter(|&u| u != v && self.has_edge(u, v))
            .count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Removes vertex `v` and compacts the labels `v+1,...,n-1` down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { v, n: self.n });
        }
        if self.n == 1 {
            return Err(GraphError::DeleteFromSingleton);
        }
        let mut g = Graph::empty(self.n - 1)?;
        for (i, j) in self.edges() {
            if i == v || j == v {
                continue;
            }
            let i = if i > v { i - 1 } else { i };
            let j = if j > v { j - 1 } else { j };
            g.set_edge(i, j, true);
        }
        Ok(g)
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut g = Graph::empty(self.n)?;
        for (i, j) in self.edges() {
            g.set_edge(perm[i], perm[j], true);
        }
        Ok(g)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

/// Whether some vertex bijection maps the edges of `g` onto those of `h`.
///
/// Exhaustive permutation search with degree-sequence and
/// neighbor-degree-multiset pruning; orders above [`ISO_CAP`] are rejected.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool, GraphError> {
    if g.order() != h.order() {
        return Ok(false);
    }
    let n = g.order();
    if n > ISO_CAP {
        return Err(GraphError::IsomorphismCap(n));
    }
    if g.size() != h.size() {
        return Ok(false);
    }
    let dg = g.degrees();
    let dh = h.degrees();
    let mut sg = dg.clone();
    let mut sh = dh.clone();
    sg.sort_unstable();
    sh.sort_unstable();
    if sg != sh {
        return Ok(false);
    }
    // Multiset of neighbor degrees per vertex, as a secondary invariant.
    let nbr_degs = |gr: &Graph, degs: &[usize]| -> Vec<Vec<usize>> {
        (0..n)
            .map(|v| {
                let mut ds: Vec<usize> = (0..n)
                    .filter(|&u| u != v && gr.has_edge(u, v))
                    .map(|u| degs[u])
                    .collect();
                ds.sort_unstable();
                ds
            })
            .collect()
    };
    let ng = nbr_degs(g, &dg);
    let nh = nbr_degs(h, &dh);
    {
        let mut a = ng.clone();
        let mut b = nh.clone();
        a.sort();
        b.sort();
        if a != b {
            return Ok(false);
        }
    }

    fn extend(
        g: &Graph,
        h: &Graph,
        dg: &[usize],
        dh: &[usize],
        ng: &[Vec<usize>],
        nh: &[Vec<usize>],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let v = map.len();
        if v == g.order() {
            return true;
        }
        for w in 0..h.order() {
            if used[w] || dg[v] != dh[w] || ng[v] != nh[w] {
                continue;
            }
            if (0..v).any(|u| g.has_edge(u, v) != h.has_edge(map[u], w)) {
                continue;
            }
            map.push(w);
            used[w] = true;
            if extend(g, h, dg, dh, ng, nh, map, used) {
                return true;
            }
            used[w] = false;
            map.pop();
        }
        false
    }

    let mut map = Vec::with_capacity(n);
    let mut used = vec![false; n];
    Ok(extend(g, h, &dg, &dh, &ng, &nh, &mut map, &mut used))
}

/// Parses the edge-list text format: first line `n m`, then `m` lines `i j`
/// with `0 <= i < j < n`. Errors carry the offending line number.
pub fn read_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(GraphError::Parse {
        line: 1,
        msg: "missing header line".into(),
    })?;
    let parse_pair = |line: usize, s: &str| -> Result<(usize, usize), GraphError> {
        let mut it = s.split_whitespace();
        let bad = |msg: &str| GraphError::Parse {
            line,
            msg: msg.into(),
        };
        let a = it
            .next()
            .ok_or_else(|| bad("expected two integers"))?
            .parse::<usize>()
            .map_err(|e| bad(&format!("invalid integer: {e}")))?;
        let b = it
            .next()
            .ok_or_else(|| bad("expected two integers"))?
            .parse::<usize>()
            .map_err(|e| bad(&format!("invalid integer: {e}")))?;
        if it.next().is_some() {
            return Err(bad("trailing tokens"));
        }
        Ok((a, b))
    };
    let (n, m) = parse_pair(1, header)?;
    let mut g = Graph::empty(n).map_err(|e| GraphError::Parse {
        line: 1,
        msg: e.to_string(),
    })?;
    let mut count = 0;
    for (lineno, raw) in lines {
        let line = lineno + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let (i, j) = parse_pair(line, raw)?;
        if i >= j {
            return Err(GraphError::Parse {
                line,
                msg: format!("edge ({i}, {j}) violates i < j"),
            });
        }
        if j >= n {
            return Err(GraphError::Parse {
                line,
                msg: format!("vertex {j} out of range for order {n}"),
            });
        }
        if g.has_edge(i, j) {
            return Err(GraphError::Parse {
                line,
                msg: format!("duplicate edge ({i}, {j})"),
            });
        }
        g.set_edge(i, j, true);
        count += 1;
    }
    if count != m {
        return Err(GraphError::Parse {
            line: count + 1,
            msg: format!("header declares {m} edges, found {count}"),
        });
    }
    Ok(g)
}

/// Renders a graph in the edge-list text format accepted by
/// [`read_edge_list`].
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for (i, j) in g.edges() {
        out.push_str(&format!("{i} {j}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pair_index_round_trip() {
        for n in 2..=10 {
            for idx in 0..pair_count(n) {
                let (i, j) = pair_from_index(n, idx);
                assert!(i < j && j < n);
                assert_eq!(pair_index(n, i, j), idx);
            }
        }
    }

    #[test]
    fn make_graph_examples() {
        let g = Graph::new(3, &[]).unwrap();
        assert_eq!((g.order(), g.size()), (3, 0));

        let k2 = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(k2.size(), 1);
        assert!(k2.has_edge(0, 1));

        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.degrees(), vec![3, 1, 1, 1]);
    }

    #[test]
    fn make_graph_errors() {
        assert_eq!(
            Graph::new(3, &[(0, 3)]).unwrap_err(),
            GraphError::VertexOutOfRange { v: 3, n: 3 }
        );
        assert_eq!(Graph::new(3, &[(1, 1)]).unwrap_err(), GraphError::SelfLoop(1));
        assert_eq!(
            Graph::new(3, &[(0, 1), (1, 0)]).unwrap_err(),
            GraphError::DuplicateEdge(0, 1)
        );
        assert_eq!(Graph::new(0, &[]).unwrap_err(), GraphError::BadOrder(0));
        assert_eq!(Graph::new(65, &[]).unwrap_err(), GraphError::BadOrder(65));
    }

    #[test]
    fn complete_bipartite_examples() {
        assert_eq!(Graph::complete_bipartite(0, 4).unwrap().size(), 0);
        let s = Graph::complete_bipartite(1, 4).unwrap();
        assert_eq!(s.degrees(), vec![3, 1, 1, 1]);
        let k24 = Graph::complete_bipartite(2, 6).unwrap();
        assert_eq!(k24.size(), 8);
        let mut d = k24.degrees();
        d.sort_unstable();
        assert_eq!(d, vec![2, 2, 2, 2, 4, 4]);
        assert!(Graph::complete_bipartite(5, 4).is_err());
    }

    #[test]
    fn star_union_examples() {
        assert_eq!(Graph::star_union(5, 0).unwrap().size(), 0);
        assert_eq!(Graph::star_union(6, 1).unwrap().size(), 1);
        assert_eq!(
            Graph::star_union(7, 3).unwrap().degrees(),
            vec![3, 1, 1, 1, 0, 0, 0]
        );
        assert_eq!(
            Graph::star_union(5, 5).unwrap_err(),
            GraphError::StarTooLarge { t: 5, max: 4 }
        );
    }

    #[test]
    fn isomorphism_examples() {
        // K_{1,3} with center 0 vs center 2.
        let a = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let b = Graph::new(4, &[(0, 2), (1, 2), (2, 3)]).unwrap();
        assert!(are_isomorphic(&a, &b).unwrap());

        let path = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(!are_isomorphic(&path, &a).unwrap());

        // K_{2,4} vs its complement: edge counts 8 vs 7.
        let k24 = Graph::complete_bipartite(2, 6).unwrap();
        let mut comp_edges = vec![];
        for i in 0..6 {
            for j in (i + 1)..6 {
                if !k24.has_edge(i, j) {
                    comp_edges.push((i, j));
                }
            }
        }
        let comp = Graph::new(6, &comp_edges).unwrap();
        assert_eq!(comp.size(), 7);
        assert!(!are_isomorphic(&k24, &comp).unwrap());

        let big = Graph::empty(9).unwrap();
        assert_eq!(
            are_isomorphic(&big, &big).unwrap_err(),
            GraphError::IsomorphismCap(9)
        );
        // Differing orders are simply non-isomorphic, even above the cap.
        let small = Graph::empty(3).unwrap();
        assert!(!are_isomorphic(&big, &small).unwrap());
    }

    #[test]
    fn delete_vertex_examples() {
        let s52 = Graph::star_union(5, 2).unwrap();
        let d = s52.delete_vertex(0).unwrap();
        assert_eq!((d.order(), d.size()), (4, 0));

        let k2 = Graph::new(2, &[(0, 1)]).unwrap();
        let v = k2.delete_vertex(0).unwrap();
        assert_eq!((v.order(), v.size()), (1, 0));

        let k24 = Graph::complete_bipartite(2, 6).unwrap();
        let d = k24.delete_vertex(0).unwrap();
        assert_eq!(d.size(), k24.size() - k24.degree(0));
        assert_eq!(d.degree(0), 4); // remaining part-of-2 vertex

        assert!(k24.delete_vertex(6).is_err());
        let single = Graph::empty(1).unwrap();
        assert_eq!(
            single.delete_vertex(0).unwrap_err(),
            GraphError::DeleteFromSingleton
        );
    }

    #[test]
    fn edge_list_round_trip_and_errors() {
        let g = Graph::complete_bipartite(2, 5).unwrap();
        let text = write_edge_list(&g);
        let h = read_edge_list(&text).unwrap();
        assert_eq!(g, h);

        let err = read_edge_list("abc\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 1, .. }));
        let err = read_edge_list("3 2\n0 1\n1 0\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 3, .. }));
        let err = read_edge_list("3 2\n0 1\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { .. }));
        let err = read_edge_list("3 1\n0 5\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 2, .. }));
    }

    proptest! {
        #[test]
        fn bipartite_edge_count(n in 1usize..=20, frac in 0usize..=100) {
            let d = frac * n / 200; // d <= n/2
            let g = Graph::complete_bipartite(d, n).unwrap();
            prop_assert_eq!(g.size(), d * (n - d));
        }

        #[test]
        fn star_union_shape(n in 2usize..=20, t_raw in 0usize..=19) {
            let t = t_raw % n;
            let g = Graph::star_union(n, t).unwrap();
            let degs = g.degrees();
            let isolated = degs.iter().filter(|&&d| d == 0).count();
            if t >= 1 {
                prop_assert_eq!(*degs.iter().max().unwrap(), t);
                prop_assert_eq!(isolated, n - t - 1);
            } else {
                prop_assert_eq!(isolated, n);
            }
        }

        #[test]
        fn iso_invariant_under_relabeling(
            n in 2usize..=7,
            seed in any::<u64>(),
        ) {
            use rand::prelude::*;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let p = pair_count(n);
            let idxs: Vec<usize> = (0..p).filter(|_| rng.gen_bool(0.5)).collect();
            let g = Graph::from_pair_indices(n, &idxs).unwrap();
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let h = g.permute(&perm).unwrap();
            prop_assert!(are_isomorphic(&g, &h).unwrap());
            prop_assert!(are_isomorphic(&h, &g).unwrap());
            prop_assert!(are_isomorphic(&g, &g).unwrap());
        }
    }
}
