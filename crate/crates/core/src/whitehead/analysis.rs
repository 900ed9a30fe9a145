//! Strong connectivity and strong cutpoints.
//!
//! Surface components follow the labeled-graph definitions: a component is
//! strongly connected when it is connected and some cycle's label is
//! nontrivial, and a vertex is a strong cutpoint when some lobe at it is not
//! strongly connected. Ball components carry no labels, so they degenerate
//! to plain graph notions: strongly connected means connected with every
//! vertex on a cycle, and strong cutpoints are articulation points together
//! with bridge endpoints.

use crate::group::{Reducer, Word};

use super::algo::Multigraph;
use super::graph::{Component, ComponentKind, DiscVertex, WhiteheadGraph};

/// A closed walk and the product of its labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub vertices: Vec<DiscVertex>,
    pub label: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connectivity {
    pub component: usize,
    pub strongly_connected: bool,
    /// Present exactly when `strongly_connected`.
    pub witness: Option<Cycle>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cutpoints {
    pub component: usize,
    pub vertices: Vec<DiscVertex>,
}

fn multigraph(c: &Component) -> Multigraph {
    let edges = c.edges.iter().map(|e| (c.index_of(e.from), c.index_of(e.to))).collect();
    Multigraph::new(c.vertices.len(), edges)
}

/// Edge label read from `from`, inverted when the edge is walked backwards.
fn walk_label(c: &Component, edge: usize, from: usize) -> Word {
    let e = &c.edges[edge];
    if c.index_of(e.from) == from {
        e.label.clone()
    } else {
        e.label.inverse()
    }
}

fn ball_witness(c: &Component, g: &Multigraph) -> Option<Cycle> {
    let (bridges, _) = g.bridges_and_cut_vertices();
    let e = (0..g.edges().len()).find(|e| !bridges.contains(e))?;
    let (u, v) = g.edges()[e];
    let mut vertices = vec![c.vertices[u]];
    if u != v {
        let path = g.path_avoiding(v, u, e).expect("non-bridge edge lies on a cycle");
        vertices.push(c.vertices[v]);
        vertices.extend(path.iter().map(|&(w, _)| c.vertices[w]));
    }
    Some(Cycle { vertices, label: Word::empty() })
}

fn ball_strongly_connected(c: &Component, g: &Multigraph) -> bool {
    if !g.is_connected() || c.vertices.is_empty() {
        return false;
    }
    let (bridges, _) = g.bridges_and_cut_vertices();
    let mut on_cycle = vec![false; c.vertices.len()];
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        if !bridges.contains(&id) {
            on_cycle[u] = true;
            on_cycle[v] = true;
        }
    }
    on_cycle.iter().all(|x| *x)
}

/// A nontrivial fundamental cycle of the edge subset `edges`, if any.
fn surface_witness(c: &Component, factor: usize, reducer: &Reducer<'_>, edges: &[usize]) -> Option<Cycle> {
    let sub = Multigraph::new(c.vertices.len(), edges.iter().map(|&e| {
        let x = &c.edges[e];
        (c.index_of(x.from), c.index_of(x.to))
    }).collect());
    let parent = sub.spanning_forest();
    // label of the tree path from the root to each vertex
    let mut potential: Vec<Option<Word>> = vec![None; c.vertices.len()];
    fn pot(v: usize, parent: &[Option<(usize, usize)>], c: &Component, edges: &[usize], memo: &mut [Option<Word>]) -> Word {
        if let Some(w) = &memo[v] {
            return w.clone();
        }
        let w = match parent[v] {
            None => Word::empty(),
            Some((p, e)) => pot(p, parent, c, edges, memo).concat(&walk_label(c, edges[e], p)),
        };
        memo[v] = Some(w.clone());
        w
    }
    let tree: Vec<usize> = parent.iter().flatten().map(|&(_, e)| e).collect();
    for (local, &(u, v)) in sub.edges().iter().enumerate() {
        if tree.contains(&local) {
            continue;
        }
        let pu = pot(u, &parent, c, edges, &mut potential);
        let pv = pot(v, &parent, c, edges, &mut potential);
        let label = pu.concat(&walk_label(c, edges[local], u)).concat(&pv.inverse());
        let reduced = reducer.reduce_in_factor(factor, label.letters());
        if !reduced.is_empty() {
            let mut vertices = tree_path(&parent, u).into_iter().map(|i| c.vertices[i]).collect::<Vec<_>>();
            let mut back: Vec<DiscVertex> = tree_path(&parent, v).into_iter().map(|i| c.vertices[i]).collect();
            back.reverse();
            vertices.extend(back);
            return Some(Cycle { vertices, label: Word::from(reduced) });
        }
    }
    None
}

/// Vertices from the tree root down to `v`.
fn tree_path(parent: &[Option<(usize, usize)>], v: usize) -> Vec<usize> {
    let mut out = vec![v];
    let mut cur = v;
    while let Some((p, _)) = parent[cur] {
        out.push(p);
        cur = p;
    }
    out.reverse();
    out
}

fn surface_strongly_connected(
    c: &Component,
    factor: usize,
    reducer: &Reducer<'_>,
    edges: &[usize],
) -> Option<Cycle> {
    let sub = Multigraph::new(c.vertices.len(), edges.iter().map(|&e| {
        let x = &c.edges[e];
        (c.index_of(x.from), c.index_of(x.to))
    }).collect());
    // the lobe's own vertex set is what must be connected
    let used: Vec<usize> = sub.edges().iter().flat_map(|&(a, b)| [a, b]).collect();
    let comp = sub.components_without(None, None);
    let first = used.first().map(|&v| comp[v]);
    let connected = if edges.len() == c.edges.len() {
        sub.is_connected()
    } else {
        used.iter().all(|&v| Some(comp[v]) == first)
    };
    if !connected {
        return None;
    }
    surface_witness(c, factor, reducer, edges)
}

/// Per-component strong connectivity, with a witness cycle when true.
pub fn is_strongly_connected(wh: &WhiteheadGraph) -> Vec<Connectivity> {
    let reducer = Reducer::new(wh.group());
    wh.components()
        .iter()
        .map(|c| {
            let witness = match c.kind {
                ComponentKind::Ball => {
                    let g = multigraph(c);
                    if ball_strongly_connected(c, &g) { ball_witness(c, &g) } else { None }
                }
                ComponentKind::Surface { factor } => {
                    let all: Vec<usize> = (0..c.edges.len()).collect();
                    surface_strongly_connected(c, factor, &reducer, &all)
                }
            };
            Connectivity { component: c.id, strongly_connected: witness.is_some(), witness }
        })
        .collect()
}

/// Per-component strong cutpoints, in vertex order.
pub fn strong_cutpoints(wh: &WhiteheadGraph) -> Vec<Cutpoints> {
    let reducer = Reducer::new(wh.group());
    wh.components()
        .iter()
        .map(|c| {
            let g = multigraph(c);
            let vertices = match c.kind {
                ComponentKind::Ball => {
                    let (bridges, cuts) = g.bridges_and_cut_vertices();
                    let mut hit = vec![false; c.vertices.len()];
                    for v in cuts {
                        hit[v] = true;
                    }
                    for e in bridges {
                        let (a, b) = g.edges()[e];
                        hit[a] = true;
                        hit[b] = true;
                    }
                    (0..c.vertices.len()).filter(|&v| hit[v]).map(|v| c.vertices[v]).collect()
                }
                ComponentKind::Surface { factor } => (0..c.vertices.len())
                    .filter(|&v| {
                        g.lobes_at(v)
                            .iter()
                            .any(|lobe| surface_strongly_connected(c, factor, &reducer, lobe).is_none())
                    })
                    .map(|v| c.vertices[v])
                    .collect(),
            };
            Cutpoints { component: c.id, vertices }
        })
        .collect()
}

/// True when every component is strongly connected and free of strong
/// cutpoints.
pub fn is_certificate(wh: &WhiteheadGraph) -> bool {
    is_strongly_connected(wh).iter().all(|c| c.strongly_connected)
        && strong_cutpoints(wh).iter().all(|c| c.vertices.is_empty())
}
