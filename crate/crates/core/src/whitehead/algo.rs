//! Undirected multigraph primitives on vertex indices `0..n`. Loops and
//! parallel edges are allowed.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

pub(crate) struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>, // (neighbour, edge id)
}

impl Multigraph {
    pub(crate) fn new(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, id));
            if u != v {
                adj[v].push((u, id));
            }
        }
        Multigraph { n, edges, adj }
    }

    pub(crate) fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Component index per vertex, ignoring `skip_vertex` and `skip_edge`.
    pub(crate) fn components_without(&self, skip_vertex: Option<usize>, skip_edge: Option<usize>) -> Vec<Option<usize>> {
        let mut comp = vec![None; self.n];
        let mut next = 0;
        for s in 0..self.n {
            if comp[s].is_some() || Some(s) == skip_vertex {
                continue;
            }
            comp[s] = Some(next);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(v, e) in &self.adj[u] {
                    if Some(e) == skip_edge || Some(v) == skip_vertex || comp[v].is_some() {
                        continue;
                    }
                    comp[v] = Some(next);
                    queue.push_back(v);
                }
            }
            next += 1;
        }
        comp
    }

    pub(crate) fn is_connected(&self) -> bool {
        self.components_without(None, None).iter().all(|c| *c == Some(0))
    }

    /// Bridges and articulation points by DFS low-links. Parallel edges are
    /// told apart by edge id, so a doubled edge is never a bridge.
    pub(crate) fn bridges_and_cut_vertices(&self) -> (Vec<usize>, Vec<usize>) {
        let mut disc = vec![usize::MAX; self.n];
        let mut low = vec![0; self.n];
        let mut bridges = Vec::new();
        let mut cut = vec![false; self.n];
        let mut time = 0;
        for root in 0..self.n {
            if disc[root] != usize::MAX {
                continue;
            }
            // iterative DFS: (vertex, parent edge, next adjacency index, child count)
            let mut stack: Vec<(usize, Option<usize>, usize, usize)> = vec![(root, None, 0, 0)];
            disc[root] = time;
            low[root] = time;
            time += 1;
            while let Some(&mut (u, pe, ref mut idx, ref mut children)) = stack.last_mut() {
                if *idx < self.adj[u].len() {
                    let (v, e) = self.adj[u][*idx];
                    *idx += 1;
                    if Some(e) == pe || u == v {
                        continue;
                    }
                    if disc[v] == usize::MAX {
                        *children += 1;
                        disc[v] = time;
                        low[v] = time;
                        time += 1;
                        stack.push((v, Some(e), 0, 0));
                    } else {
                        low[u] = low[u].min(disc[v]);
                    }
                } else {
                    let (_, pe, _, children) = stack.pop().expect("nonempty");
                    if let Some(&(p, _, _, _)) = stack.last() {
                        low[p] = low[p].min(low[u]);
                        if low[u] > disc[p] {
                            bridges.push(pe.expect("child has a parent edge"));
                        }
                        if stack.len() > 1 && low[u] >= disc[p] {
                            cut[p] = true;
                        }
                    } else if children > 1 {
                        cut[u] = true;
                    }
                }
            }
        }
        bridges.sort_unstable();
        (bridges, (0..self.n).filter(|&v| cut[v]).collect())
    }

    /// Shortest vertex path from `from` to `to` avoiding edge `skip`.
    pub(crate) fn path_avoiding(&self, from: usize, to: usize, skip: usize) -> Option<Vec<(usize, usize)>> {
        // (vertex, edge used to arrive)
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.n];
        let mut seen = vec![false; self.n];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                let mut path = Vec::new();
                let mut cur = to;
                while let Some((p, e)) = prev[cur] {
                    path.push((cur, e));
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
            for &(v, e) in &self.adj[u] {
                if e != skip && !seen[v] {
                    seen[v] = true;
                    prev[v] = Some((u, e));
                    queue.push_back(v);
                }
            }
        }
        None
    }

    /// BFS spanning forest: parent edge per vertex (None at roots).
    pub(crate) fn spanning_forest(&self) -> Vec<Option<(usize, usize)>> {
        let mut parent = vec![None; self.n];
        let mut seen = vec![false; self.n];
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(v, e) in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        parent[v] = Some((u, e));
                        queue.push_back(v);
                    }
                }
            }
        }
        parent
    }

    /// Lobes at `v`: edge sets of the pieces the graph falls into at `v`.
    /// Each loop at `v` is its own lobe.
    pub(crate) fn lobes_at(&self, v: usize) -> Vec<Vec<usize>> {
        let comp = self.components_without(Some(v), None);
        let touching: BTreeSet<usize> = self.adj[v].iter().filter_map(|&(w, _)| comp[w]).collect();
        let mut by_comp: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut lobes = Vec::new();
        for (id, &(a, b)) in self.edges.iter().enumerate() {
            if a == v && b == v {
                lobes.push(vec![id]);
                continue;
            }
            let c = comp[if a == v { b } else { a }].expect("endpoint other than v");
            if touching.contains(&c) {
                by_comp.entry(c).or_default().push(id);
            }
        }
        lobes.extend(by_comp.into_values());
        lobes
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn count_components(g: &Multigraph, skip_v: Option<usize>, skip_e: Option<usize>) -> usize {
        g.components_without(skip_v, skip_e).iter().flatten().max().map_or(0, |m| m + 1)
    }

    #[test]
    fn path_graph() {
        let g = Multigraph::new(3, vec![(0, 1), (1, 2)]);
        assert_eq!(g.bridges_and_cut_vertices(), (vec![0, 1], vec![1]));
    }

    #[test]
    fn doubled_edge_is_not_a_bridge() {
        let g = Multigraph::new(2, vec![(0, 1), (0, 1)]);
        assert_eq!(g.bridges_and_cut_vertices(), (vec![], vec![]));
    }

    #[test]
    fn bowtie_center_is_cut() {
        let g = Multigraph::new(5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        assert_eq!(g.bridges_and_cut_vertices(), (vec![], vec![2]));
        assert_eq!(g.lobes_at(2).len(), 2);
    }

    #[test]
    fn loops_are_their_own_lobes() {
        let g = Multigraph::new(1, vec![(0, 0), (0, 0)]);
        assert_eq!(g.lobes_at(0), vec![vec![0], vec![1]]);
        assert_eq!(g.bridges_and_cut_vertices(), (vec![], vec![]));
    }

    proptest! {
        /// Brute force: a vertex is a cut vertex iff deleting it increases the
        /// number of components among the remaining vertices; an edge is a
        /// bridge iff deleting it increases the component count.
        #[test]
        fn matches_brute_force(n in 1usize..8, raw in prop::collection::vec((0usize..8, 0usize..8), 0..14)) {
            let edges: Vec<(usize, usize)> = raw.into_iter().map(|(a, b)| (a % n, b % n)).collect();
            let g = Multigraph::new(n, edges.clone());
            let (bridges, cuts) = g.bridges_and_cut_vertices();
            let base = count_components(&g, None, None);
            for v in 0..n {
                let isolated = g.adj[v].iter().all(|&(w, _)| w == v);
                let after = count_components(&g, Some(v), None);
                let expect = !isolated && after > base;
                prop_assert_eq!(cuts.contains(&v), expect, "vertex {}", v);
            }
            for e in 0..edges.len() {
                let expect = count_components(&g, None, Some(e)) > base;
                prop_assert_eq!(bridges.contains(&e), expect, "edge {}", e);
            }
        }
    }
}
