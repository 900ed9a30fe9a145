use std::collections::{BTreeSet, HashSet};

use sepstab::group::{cyclic_reduce, enumerate_elements, GroupSpec, Word};
use sepstab::ingest::{s2_times_z, schottky2};
use sepstab::stability::ping_pong_verify;
use sepstab::whitehead::{
    is_certificate, is_strongly_connected, sample_axes, standard_meridian_model, strong_cutpoints, to_dot,
    whitehead_graph_combinatorial, whitehead_graph_of_word, whitehead_graph_sampled, ComponentKind, WhiteheadGraph,
};

fn graph(group: &str, word: &str) -> (GroupSpec, WhiteheadGraph) {
    let g: GroupSpec = group.parse().unwrap();
    let w = g.parse_word(word).unwrap();
    let wh = whitehead_graph_of_word(&w, &g).unwrap();
    (g, wh)
}

fn ball_edges(wh: &WhiteheadGraph) -> Vec<(String, String)> {
    wh.ball().edges.iter().map(|e| (wh.vertex_name(e.from), wh.vertex_name(e.to))).collect()
}

fn names(wh: &WhiteheadGraph, vs: &[sepstab::whitehead::DiscVertex]) -> Vec<String> {
    vs.iter().map(|v| wh.vertex_name(*v)).collect()
}

#[test]
fn meridian_model_vertex_sets() {
    let f2 = standard_meridian_model(&"F2".parse().unwrap());
    assert_eq!(f2.components().len(), 1);
    assert_eq!(names(&f2, &f2.ball().vertices), ["a", "A", "b", "B"]);

    let s2z = standard_meridian_model(&"S2*Z".parse().unwrap());
    assert_eq!(names(&s2z, &s2z.ball().vertices), ["D1+", "D1-", "t1", "T1"]);
    assert_eq!(s2z.components().len(), 2);
    assert_eq!(names(&s2z, &s2z.components()[1].vertices), ["D1"]);

    let big = standard_meridian_model(&"S2*S3*Z".parse().unwrap());
    assert_eq!(big.ball().vertices.len(), 6);
    let surfaces = big.components().iter().filter(|c| matches!(c.kind, ComponentKind::Surface { .. })).count();
    assert_eq!(surfaces, 2);
}

#[test]
fn single_letter_graph() {
    let (_, wh) = graph("F2", "a");
    assert_eq!(ball_edges(&wh), [("a".to_string(), "A".to_string())]);
    assert!(!is_strongly_connected(&wh)[0].strongly_connected);
    // the lone edge is a bridge: both ends are strong cutpoints
    assert_eq!(names(&wh, &strong_cutpoints(&wh)[0].vertices), ["a", "A"]);
}

#[test]
fn commutator_graph_is_a_four_cycle() {
    let (_, wh) = graph("F2", "a b A B");
    assert_eq!(wh.ball().edges.len(), 4);
    let sc = &is_strongly_connected(&wh)[0];
    assert!(sc.strongly_connected);
    assert!(sc.witness.as_ref().unwrap().vertices.len() >= 3);
    assert!(strong_cutpoints(&wh)[0].vertices.is_empty());
    assert!(is_certificate(&wh));
}

/// Independent oracle: build the edge list straight from the cyclic letter
/// sequence with the `u -- v^-1` convention and find cut vertices by
/// deleting each vertex in turn.
fn brute_force_cut_vertices(letters: &[char]) -> (Vec<(char, char)>, Vec<char>) {
    let inv = |c: char| if c.is_lowercase() { c.to_ascii_uppercase() } else { c.to_ascii_lowercase() };
    let n = letters.len();
    let edges: Vec<(char, char)> = (0..n).map(|i| (letters[i], inv(letters[(i + 1) % n]))).collect();
    let verts = ['a', 'A', 'b', 'B'];
    let components = |skip: Option<char>| {
        let mut comp: Vec<Option<usize>> = vec![None; 4];
        let idx = |c: char| verts.iter().position(|v| *v == c).unwrap();
        let mut count = 0;
        for s in 0..4 {
            if comp[s].is_some() || Some(verts[s]) == skip {
                continue;
            }
            comp[s] = Some(count);
            let mut changed = true;
            while changed {
                changed = false;
                for &(x, y) in &edges {
                    if Some(x) == skip || Some(y) == skip {
                        continue;
                    }
                    let (i, j) = (idx(x), idx(y));
                    if comp[i] == Some(count) && comp[j].is_none() {
                        comp[j] = Some(count);
                        changed = true;
                    }
                    if comp[j] == Some(count) && comp[i].is_none() {
                        comp[i] = Some(count);
                        changed = true;
                    }
                }
            }
            count += 1;
        }
        count
    };
    let base = components(None);
    let cuts = verts.iter().copied().filter(|&v| components(Some(v)) > base).collect();
    (edges, cuts)
}

#[test]
fn square_word_graph_matches_brute_force() {
    let (_, wh) = graph("F2", "a a b b");
    let (edges, cuts) = brute_force_cut_vertices(&['a', 'a', 'b', 'b']);
    let ours: BTreeSet<(String, String)> = ball_edges(&wh)
        .into_iter()
        .map(|(x, y)| if x <= y { (x, y) } else { (y, x) })
        .collect();
    let theirs: BTreeSet<(String, String)> = edges
        .iter()
        .map(|&(x, y)| {
            let (x, y) = (x.to_string(), y.to_string());
            if x <= y { (x, y) } else { (y, x) }
        })
        .collect();
    assert_eq!(ours, theirs);
    assert_eq!(names(&wh, &strong_cutpoints(&wh)[0].vertices), cuts.iter().map(|c| c.to_string()).collect::<Vec<_>>());
    assert!(cuts.is_empty());
}

#[test]
fn mixed_element_graph() {
    let (g, wh) = graph("S2*Z", "a1 t1");
    let mut e = ball_edges(&wh);
    e.sort();
    assert_eq!(e, [("D1+".to_string(), "T1".to_string()), ("D1-".to_string(), "t1".to_string())]);
    let surface = wh.surface_component(0).unwrap();
    assert_eq!(surface.edges.len(), 1);
    assert_eq!(g.format_word(&surface.edges[0].label), "a1");
    assert!(is_strongly_connected(&wh)[1].strongly_connected);
    assert!(strong_cutpoints(&wh)[1].vertices.is_empty());
}

#[test]
fn single_surface_syllable_has_no_edges() {
    let (_, wh) = graph("S2*Z", "a1 b1");
    assert_eq!(wh.edge_count(), 0);
}

#[test]
fn non_cyclically_reduced_word_rejected() {
    let g: GroupSpec = "F2".parse().unwrap();
    assert!(whitehead_graph_of_word(&g.parse_word("a b A").unwrap(), &g).is_err());
}

fn check_reversal(wh: &WhiteheadGraph) {
    let all: Vec<_> = wh.directed_edges().collect();
    for e in &all {
        assert!(all.iter().any(|f| f.from == e.to && f.to == e.from && f.label == e.label.inverse()));
        assert_eq!(e.from.component, e.to.component);
    }
}

#[test]
fn reversal_and_conjugacy_invariance() {
    for (group, len) in [("F2", 5), ("S2*Z", 4)] {
        let g: GroupSpec = group.parse().unwrap();
        for form in enumerate_elements(&g, len) {
            let wh = whitehead_graph_combinatorial(&form, &g).unwrap();
            check_reversal(&wh);
            let w = form.to_word();
            for k in 1..w.len() {
                let (rot, _) = cyclic_reduce(&g, &w.rotate(k)).unwrap();
                let other = whitehead_graph_combinatorial(&rot, &g).unwrap();
                assert!(wh.equivalent(&other), "{} rotated by {k}", g.format_word(&w));
            }
        }
    }
}

#[test]
fn sampled_agrees_with_combinatorial_on_schottky() {
    let entry = schottky2();
    let cert = ping_pong_verify(&entry.rep, entry.disks.as_ref().unwrap()).unwrap().into_certificate().unwrap();
    let g = entry.rep.group().clone();
    for form in enumerate_elements(&g, 4) {
        let axes = sample_axes(&cert, &form, 3).unwrap();
        let sampled = whitehead_graph_sampled(&axes, &cert, 3).unwrap();
        let comb = whitehead_graph_combinatorial(&form, &g).unwrap();
        assert!(sampled.equivalent(&comb), "{}:\n{sampled}\n{comb}", g.format_word(&form.to_word()));
        check_reversal(&sampled);
    }
}

#[test]
fn sampled_agrees_with_combinatorial_on_surface_times_z() {
    let entry = s2_times_z();
    let cert = ping_pong_verify(&entry.rep, entry.disks.as_ref().unwrap()).unwrap().into_certificate().unwrap();
    let g = entry.rep.group().clone();
    let forms = enumerate_elements(&g, 4);
    for form in &forms {
        let axes = sample_axes(&cert, form, 3).unwrap();
        let sampled = whitehead_graph_sampled(&axes, &cert, 3).unwrap();
        let comb = whitehead_graph_combinatorial(form, &g).unwrap();
        assert!(sampled.equivalent(&comb), "{}:\nsampled {sampled}\ncombinatorial {comb}", g.format_word(&form.to_word()));
    }
}

#[test]
fn sampled_edge_cases() {
    let entry = s2_times_z();
    let cert = ping_pong_verify(&entry.rep, entry.disks.as_ref().unwrap()).unwrap().into_certificate().unwrap();
    let g = entry.rep.group().clone();
    let empty = whitehead_graph_sampled(&[], &cert, 3).unwrap();
    assert_eq!(empty.edge_count(), 0);

    let (t, _) = cyclic_reduce(&g, &g.parse_word("t1").unwrap()).unwrap();
    let axes = sample_axes(&cert, &t, 0).unwrap();
    assert_eq!(axes.len(), 1);
    let wh = whitehead_graph_sampled(&axes, &cert, 0).unwrap();
    assert_eq!(ball_edges(&wh), [("t1".to_string(), "T1".to_string())]);
    assert_eq!(wh.edge_count(), 1);
}

#[test]
fn dot_output_is_stable() {
    let (_, wh) = graph("S2*Z", "a1 t1");
    let dot = to_dot(&wh);
    assert_eq!(dot, to_dot(&graph("S2*Z", "t1 a1").1));
    assert_eq!(
        dot,
        "graph ball {\n  \"D1+\";\n  \"D1-\";\n  \"t1\";\n  \"T1\";\n  \"D1+\" -- \"T1\";\n  \"D1-\" -- \"t1\";\n}\n\
         graph surface_0 {\n  \"D1\";\n  \"D1\" -- \"D1\" [label=\"a1\"];\n}\n"
    );
    let seen: HashSet<String> = (0..5).map(|_| to_dot(&wh)).collect();
    assert_eq!(seen.len(), 1);
    let _ = Word::empty();
}
