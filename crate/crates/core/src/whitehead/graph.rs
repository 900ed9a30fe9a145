use std::fmt;

use crate::group::{CyclicNormalForm, GroupError, GroupSpec, Letter, Reducer, Word};

/// Which copy of a disc a vertex stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Plus,
    Minus,
    /// The single copy on the surface side of a surface factor's disc.
    Interior,
}

/// A copy of a meridian disc. The disc id is the factor id: each surface
/// factor and each free letter owns one disc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiscVertex {
    pub component: usize,
    pub disc: usize,
    pub side: Side,
}

/// An edge with its group label, read from `from` to `to`. The reverse edge
/// is implicit and carries the inverse label. Ball edges carry the empty
/// word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledEdge {
    pub from: DiscVertex,
    pub to: DiscVertex,
    pub label: Word,
}

impl LabeledEdge {
    #[must_use]
    pub fn reversed(&self) -> LabeledEdge {
        LabeledEdge { from: self.to, to: self.from, label: self.label.inverse() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    Ball,
    Surface { factor: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub id: usize,
    pub kind: ComponentKind,
    pub vertices: Vec<DiscVertex>,
    pub edges: Vec<LabeledEdge>,
}

impl Component {
    pub(crate) fn index_of(&self, v: DiscVertex) -> usize {
        self.vertices.binary_search(&v).expect("vertex of this component")
    }
}

/// Whitehead graph over the standard meridian system of a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhiteheadGraph {
    group: GroupSpec,
    components: Vec<Component>,
}

/// The standard meridian system of `group` with no edges: a ball component
/// holding both sides of every disc, and one component per surface factor
/// holding the interior copy of its disc.
pub fn standard_meridian_model(group: &GroupSpec) -> WhiteheadGraph {
    let mut ball = Vec::new();
    for f in group.factors() {
        ball.push(DiscVertex { component: 0, disc: f.id, side: Side::Plus });
        ball.push(DiscVertex { component: 0, disc: f.id, side: Side::Minus });
    }
    let mut components = vec![Component { id: 0, kind: ComponentKind::Ball, vertices: ball, edges: Vec::new() }];
    for f in group.surface_factors() {
        let id = components.len();
        components.push(Component {
            id,
            kind: ComponentKind::Surface { factor: f.id },
            vertices: vec![DiscVertex { component: id, disc: f.id, side: Side::Interior }],
            edges: Vec::new(),
        });
    }
    WhiteheadGraph { group: group.clone(), components }
}

impl WhiteheadGraph {
    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn ball(&self) -> &Component {
        &self.components[0]
    }

    pub fn surface_component(&self, factor: usize) -> Option<&Component> {
        self.components.iter().find(|c| c.kind == ComponentKind::Surface { factor })
    }

    pub fn edge_count(&self) -> usize {
        self.components.iter().map(|c| c.edges.len()).sum()
    }

    /// Every edge in both directions.
    pub fn directed_edges(&self) -> impl Iterator<Item = LabeledEdge> + '_ {
        self.components.iter().flat_map(|c| c.edges.iter().flat_map(|e| [e.clone(), e.reversed()]))
    }

    /// Display name of a vertex: free discs use the letter and its inverse,
    /// surface discs `Dk+`, `Dk-` and `Dk` for the k-th surface factor.
    pub fn vertex_name(&self, v: DiscVertex) -> String {
        let f = self.group.factor(v.disc);
        if f.is_surface() {
            let k = self.group.surface_factors().position(|s| s.id == v.disc).expect("surface") + 1;
            match v.side {
                Side::Plus => format!("D{k}+"),
                Side::Minus => format!("D{k}-"),
                Side::Interior => format!("D{k}"),
            }
        } else {
            let gen = self.group.generators_of(v.disc).start;
            self.group.letter_name(Letter::new(gen, v.side == Side::Minus))
        }
    }

    /// Ball edge between two vertices, stored with endpoints in order.
    pub(crate) fn push_ball_edge(&mut self, a: DiscVertex, b: DiscVertex) {
        let (from, to) = if a <= b { (a, b) } else { (b, a) };
        self.components[0].edges.push(LabeledEdge { from, to, label: Word::empty() });
    }

    /// Adds a loop labeled `label` at the interior vertex of `factor` unless
    /// an equal label or its inverse is already present.
    pub(crate) fn push_surface_loop(&mut self, reducer: &Reducer<'_>, factor: usize, label: Word) {
        let label = Word::from(reducer.reduce_in_factor(factor, label.letters()));
        if label.is_empty() {
            return;
        }
        let comp = self
            .components
            .iter_mut()
            .find(|c| c.kind == ComponentKind::Surface { factor })
            .expect("surface component");
        let inv = label.inverse();
        if comp.edges.iter().any(|e| reducer.equal(&e.label, &label) || reducer.equal(&e.label, &inv)) {
            return;
        }
        let v = comp.vertices[0];
        comp.edges.push(LabeledEdge { from: v, to: v, label });
    }

    pub(crate) fn sort_edges(&mut self) {
        for c in &mut self.components {
            c.edges.sort_by(|a, b| (a.from, a.to, &a.label).cmp(&(b.from, b.to, &b.label)));
        }
    }

    /// Same vertex sets and same edge multisets, with labels compared as
    /// group elements (an edge may match the reverse of the other).
    pub fn equivalent(&self, other: &WhiteheadGraph) -> bool {
        if self.group != other.group || self.components.len() != other.components.len() {
            return false;
        }
        let reducer = Reducer::new(&self.group);
        self.components.iter().zip(&other.components).all(|(a, b)| {
            if a.kind != b.kind || a.vertices != b.vertices || a.edges.len() != b.edges.len() {
                return false;
            }
            let mut used = vec![false; b.edges.len()];
            a.edges.iter().all(|e| {
                let hit = b.edges.iter().enumerate().position(|(i, f)| {
                    !used[i] && {
                        let r = f.reversed();
                        [f, &r].iter().any(|g| {
                            g.from == e.from && g.to == e.to && reducer.equal(&g.label, &e.label)
                        })
                    }
                });
                hit.map(|i| used[i] = true).is_some()
            })
        })
    }
}

impl fmt::Display for WhiteheadGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.components {
            match c.kind {
                ComponentKind::Ball => write!(f, "ball:")?,
                ComponentKind::Surface { factor } => write!(f, "surface {}:", self.vertex_name(DiscVertex {
                    component: c.id,
                    disc: factor,
                    side: Side::Interior,
                }))?,
            }
            let names: Vec<String> = c.vertices.iter().map(|v| self.vertex_name(*v)).collect();
            write!(f, " vertices {{{}}}", names.join(", "))?;
            for e in &c.edges {
                write!(f, " {}-{}", self.vertex_name(e.from), self.vertex_name(e.to))?;
                if !e.label.is_empty() {
                    write!(f, "[{}]", self.group.format_word(&e.label))?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// One step of a cyclic normal form as seen by the meridian system: a whole
/// surface syllable or a single free letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Unit {
    Surface { factor: usize, word: Word },
    Free { factor: usize, letter: Letter },
}

impl Unit {
    /// Vertex crossed when leaving this unit.
    pub(crate) fn exit(&self) -> DiscVertex {
        match *self {
            Unit::Surface { factor, .. } => DiscVertex { component: 0, disc: factor, side: Side::Plus },
            Unit::Free { factor, letter } => DiscVertex {
                component: 0,
                disc: factor,
                side: if letter.is_inverse() { Side::Minus } else { Side::Plus },
            },
        }
    }

    /// Vertex crossed when entering this unit.
    pub(crate) fn entry(&self) -> DiscVertex {
        match *self {
            Unit::Surface { factor, .. } => DiscVertex { component: 0, disc: factor, side: Side::Minus },
            Unit::Free { factor, letter } => DiscVertex {
                component: 0,
                disc: factor,
                side: if letter.is_inverse() { Side::Plus } else { Side::Minus },
            },
        }
    }
}

pub(crate) fn units(group: &GroupSpec, form: &CyclicNormalForm) -> Vec<Unit> {
    let mut out = Vec::new();
    for s in form.syllables() {
        if group.factor(s.factor).is_surface() {
            out.push(Unit::Surface { factor: s.factor, word: s.word.clone() });
        } else {
            out.extend(s.word.letters().iter().map(|&letter| Unit::Free { factor: s.factor, letter }));
        }
    }
    out
}

/// Whitehead graph of the closed geodesic of a conjugacy class.
///
/// Edges come from the primitive root: each pair of cyclically adjacent
/// units `(u, v)` gives the ball edge `exit(u) -- entry(v)`, and each
/// surface syllable `s` gives a loop labeled `s` on its surface component.
/// A class whose form is a single surface syllable meets no disc and has no
/// edges.
pub fn whitehead_graph_combinatorial(form: &CyclicNormalForm, group: &GroupSpec) -> Result<WhiteheadGraph, GroupError> {
    group.require_free_product()?;
    let (root, _) = form.root();
    let mut graph = standard_meridian_model(group);
    let units = units(group, &root);
    if let [Unit::Surface { .. }] = units.as_slice() {
        return Ok(graph);
    }
    let reducer = Reducer::new(group);
    for (i, u) in units.iter().enumerate() {
        let v = &units[(i + 1) % units.len()];
        graph.push_ball_edge(u.exit(), v.entry());
        if let Unit::Surface { factor, word } = u {
            graph.push_surface_loop(&reducer, *factor, word.clone());
        }
    }
    graph.sort_edges();
    Ok(graph)
}

/// As [`whitehead_graph_combinatorial`], for a word that must already be
/// cyclically reduced.
pub fn whitehead_graph_of_word(w: &Word, group: &GroupSpec) -> Result<WhiteheadGraph, GroupError> {
    let (form, _) = crate::group::cyclic_reduce(group, w)?;
    if form.len() != w.len() {
        return Err(GroupError::NotCyclicallyReduced);
    }
    whitehead_graph_combinatorial(&form, group)
}
