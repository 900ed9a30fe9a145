use std::collections::{HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sepstab::group::{cyclic_reduce, enumerate_elements, GroupSpec, Letter, Word};
use sepstab::separability::{
    is_separable, is_separable_free, peak_reduce, whitehead_moves, SeparabilityVerdict, WhiteheadMove,
};
use sepstab::whitehead::{is_certificate, whitehead_graph_combinatorial};

fn f(rank: usize) -> GroupSpec {
    GroupSpec::free(rank).unwrap()
}

fn random_word(rng: &mut impl Rng, rank: usize, len: usize) -> Word {
    (0..len).map(|_| Letter::from_code(rng.gen_range(0..2 * rank as u16))).collect()
}

#[test]
fn type_ii_count_and_distinct_actions() {
    let moves: Vec<WhiteheadMove> =
        whitehead_moves(2).into_iter().filter(|m| matches!(m, WhiteheadMove::TypeII { .. })).collect();
    assert_eq!(moves.len(), 4 * 4);
    // all words of length <= 2 separate the automorphisms
    let mut probes = vec![Word::empty()];
    for a in 0..4u16 {
        probes.push(Word::from(vec![Letter::from_code(a)]));
        for b in 0..4u16 {
            probes.push(Word::from(vec![Letter::from_code(a), Letter::from_code(b)]));
        }
    }
    let actions: HashSet<Vec<Word>> = moves.iter().map(|m| probes.iter().map(|w| m.apply(w)).collect()).collect();
    // the four moves (x, {x}) all act as the identity
    assert_eq!(actions.len(), 16 - 4 + 1);
}

#[test]
fn identity_permutation_fixes_words() {
    let id = &whitehead_moves(3)[0];
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let w = random_word(&mut rng, 3, 9).free_reduce();
        assert_eq!(id.apply(&w), w);
    }
}

#[test]
fn moves_are_invertible() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for rank in [2, 3] {
        let moves = whitehead_moves(rank);
        for _ in 0..100 {
            let n = rng.gen_range(0..15);
            let w = random_word(&mut rng, rank, n).free_reduce();
            for m in &moves {
                assert_eq!(m.inverse().apply(&m.apply(&w)), w, "{m:?}");
            }
        }
    }
}

/// Cyclic classes of primitive elements of F2, found by Nielsen moves on
/// bases starting from (a, b) with both members of length at most `bound`.
fn primitive_classes(bound: usize) -> HashSet<Vec<Letter>> {
    let a = Word::from(vec![Letter::new(0, false)]);
    let b = Word::from(vec![Letter::new(1, false)]);
    let mut seen: HashSet<(Word, Word)> = HashSet::new();
    let mut queue = VecDeque::from([(a, b)]);
    let mut out = HashSet::new();
    while let Some((u, v)) = queue.pop_front() {
        if u.len() > bound || v.len() > bound || !seen.insert((u.clone(), v.clone())) {
            continue;
        }
        out.insert(cyclic_key(&u));
        out.insert(cyclic_key(&v));
        let next = [
            (v.clone(), u.clone()),
            (u.inverse(), v.clone()),
            (u.concat(&v).free_reduce(), v.clone()),
            (v.concat(&u).free_reduce(), v.clone()),
            (u.concat(&v.inverse()).free_reduce(), v.clone()),
            (v.inverse().concat(&u).free_reduce(), v.clone()),
        ];
        queue.extend(next);
    }
    out
}

fn cyclic_reduce_plain(w: &Word) -> Vec<Letter> {
    let mut v = w.free_reduce().into_letters();
    while v.len() >= 2 && v[0] == v[v.len() - 1].inverse() {
        v.remove(0);
        v.pop();
    }
    v
}

fn cyclic_key(w: &Word) -> Vec<Letter> {
    let v = cyclic_reduce_plain(w);
    (0..v.len().max(1))
        .map(|k| {
            let mut r = v.clone();
            r.rotate_left(k.min(v.len()));
            r
        })
        .min()
        .unwrap()
}

/// Separable in F2 means conjugate to a power of a primitive element.
fn oracle_separable(w: &Word, primitives: &HashSet<Vec<Letter>>) -> bool {
    let v = cyclic_reduce_plain(w);
    let n = v.len();
    let period = (1..=n).find(|&p| n.is_multiple_of(p) && (0..n).all(|i| v[i] == v[i % p])).unwrap();
    primitives.contains(&cyclic_key(&Word::from(v[..period].to_vec())))
}

#[test]
fn agrees_with_nielsen_oracle_up_to_length_six() {
    let g = f(2);
    let primitives = primitive_classes(10);
    let mut count = 0;
    for form in enumerate_elements(&g, 6) {
        let w = form.to_word();
        let v = is_separable_free(&w, &g).unwrap();
        assert!(!matches!(v, SeparabilityVerdict::Unknown));
        assert_eq!(v.is_separable(), oracle_separable(&w, &primitives), "{}", g.format_word(&w));
        count += 1;
    }
    assert_eq!(count, 234);
}

#[test]
fn separable_witnesses_replay() {
    for (rank, len) in [(2, 7), (3, 4)] {
        let g = f(rank);
        for form in enumerate_elements(&g, len) {
            let w = form.to_word();
            if let SeparabilityVerdict::Separable(wit) = is_separable(&w, &g).unwrap() {
                assert!(wit.verify(&w, &g), "{}", g.format_word(&w));
            }
        }
    }
    let g: GroupSpec = "S2*Z".parse().unwrap();
    for form in enumerate_elements(&g, 4) {
        let w = form.to_word();
        if let SeparabilityVerdict::Separable(wit) = is_separable(&w, &g).unwrap() {
            assert!(wit.verify(&w, &g));
        }
    }
}

#[test]
fn peak_reduction_reaches_orbit_minimum() {
    // brute force: closure under Type II moves of words up to length 8
    let g = f(2);
    let moves = whitehead_moves(2);
    for s in ["a b", "a a b", "a b a B", "a b A B", "a a b b", "a b b A b"] {
        let w = g.parse_word(s).unwrap();
        let start = cyclic_key(&w);
        let mut seen = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        let mut best = usize::MAX;
        while let Some(u) = queue.pop_front() {
            best = best.min(u.len());
            for m in &moves {
                let v = cyclic_key(&m.apply_cyclic(&Word::from(u.clone())));
                if v.len() <= 8 && seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
        let (form, _) = cyclic_reduce(&g, &w).unwrap();
        assert_eq!(peak_reduce(&form, &g).unwrap().0.len(), best, "{s}");
    }
}

#[test]
fn conjugation_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for spec in ["F2", "F3", "S2*Z"] {
        let g: GroupSpec = spec.parse().unwrap();
        let rank = g.generator_count();
        let mut done = 0;
        while done < 100 {
            let n = rng.gen_range(1..7);
            let w = random_word(&mut rng, rank, n);
            let Ok(base) = is_separable(&w, &g) else { continue };
            let n = rng.gen_range(1..6);
            let h = random_word(&mut rng, rank, n);
            let conj = h.concat(&w).concat(&h.inverse());
            let v = is_separable(&conj, &g).unwrap();
            assert_eq!(v.label(), base.label(), "{spec}: {}", g.format_word(&w));
            done += 1;
        }
    }
}

fn dichotomy(rank: usize, len: usize) -> usize {
    let g = f(rank);
    let mut violations = 0;
    for form in enumerate_elements(&g, len) {
        let w = form.to_word();
        let v = is_separable_free(&w, &g).unwrap();
        let (min, _) = peak_reduce(&form, &g).unwrap();
        let cert = is_certificate(&whitehead_graph_combinatorial(&min, &g).unwrap());
        match &v {
            SeparabilityVerdict::Separable(_) if cert => violations += 1,
            SeparabilityVerdict::NotSeparable(graph) if !cert || !is_certificate(graph) => violations += 1,
            _ => {}
        }
    }
    violations
}

#[test]
fn minimal_graph_dichotomy() {
    assert_eq!(dichotomy(2, 8), 0);
    assert_eq!(dichotomy(3, 6), 0);
}

#[test]
fn mixed_verdicts_never_conflict() {
    let g: GroupSpec = "S2*Z".parse().unwrap();
    let mut seen = [0usize; 3];
    for form in enumerate_elements(&g, 4) {
        let v = is_separable(&form.to_word(), &g).unwrap();
        let cert = is_certificate(&whitehead_graph_combinatorial(&form, &g).unwrap());
        if v.is_separable() {
            assert!(!cert);
        }
        seen[v.exit_code() as usize] += 1;
    }
    assert!(seen[0] > 0 && seen[1] + seen[2] > 0);
}
