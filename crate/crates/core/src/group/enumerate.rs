use std::collections::BTreeSet;

use super::normal_form::{CyclicNormalForm, Reducer};
use super::spec::GroupSpec;
use super::word::Letter;

/// One canonical representative per conjugacy class of cyclic length
/// `1..=max_len`, sorted by (length, letters).
///
/// Classes are found by walking freely reduced words whose prefixes are all
/// in normal form, so every class with a reduced representative of length
/// at most `max_len` is reached. Inside surface factors the canonical
/// spelling is only the least Dehn-reduced rotation, so two spellings of one
/// class can both appear; inverse classes are both listed.
pub fn enumerate_elements(group: &GroupSpec, max_len: usize) -> Vec<CyclicNormalForm> {
    let reducer = Reducer::new(group);
    let mut seen: BTreeSet<(usize, Vec<Letter>)> = BTreeSet::new();
    let mut out = Vec::new();
    let mut prefix: Vec<Letter> = Vec::with_capacity(max_len);
    let letters: Vec<Letter> = group.letters().collect();
    walk(&reducer, &letters, max_len, &mut prefix, &mut |w| {
        if let Ok((c, _)) = reducer.cyclic_reduce(w) {
            let canon = c.canonical();
            let key = (canon.len(), canon.to_word().into_letters());
            if seen.insert(key) {
                out.push(canon);
            }
        }
    });
    out.sort_by_key(|a| (a.len(), a.to_word()));
    out
}

fn walk(
    reducer: &Reducer<'_>,
    letters: &[Letter],
    max_len: usize,
    prefix: &mut Vec<Letter>,
    visit: &mut dyn FnMut(&[Letter]),
) {
    if !prefix.is_empty() {
        visit(prefix);
    }
    if prefix.len() == max_len {
        return;
    }
    for &l in letters {
        if prefix.last() == Some(&l.inverse()) {
            continue;
        }
        prefix.push(l);
        // a prefix that is not in normal form extends only to words whose
        // classes have shorter representatives
        if reducer.normal_form(prefix).len() == prefix.len() {
            walk(reducer, letters, max_len, prefix, visit);
        }
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn spelled(g: &GroupSpec, v: &[CyclicNormalForm]) -> Vec<String> {
        v.iter().map(|c| g.format_word(&c.to_word())).collect()
    }

    #[test]
    fn free_rank_two_length_one_and_two() {
        let g: GroupSpec = "F2".parse().unwrap();
        assert_eq!(spelled(&g, &enumerate_elements(&g, 1)), ["a", "A", "b", "B"]);
        let two = spelled(&g, &enumerate_elements(&g, 2));
        let extra: HashSet<&str> = two[4..].iter().map(String::as_str).collect();
        let expected: HashSet<&str> =
            ["a a", "A A", "b b", "B B", "a b", "A B", "a B", "A b"].into_iter().collect();
        assert_eq!(extra, expected);
    }

    /// Independent brute force: all words over the letters, keep cyclically
    /// reduced ones, identify rotations.
    fn brute_force_free_classes(rank: usize, max_len: usize) -> usize {
        let n = 2 * rank as u16;
        let mut classes: HashSet<Vec<u16>> = HashSet::new();
        let mut stack: Vec<Vec<u16>> = (0..n).map(|c| vec![c]).collect();
        while let Some(w) = stack.pop() {
            let cyc_ok = w.windows(2).all(|p| p[0] != p[1] ^ 1) && (w.len() == 1 || w[0] != w[w.len() - 1] ^ 1);
            if cyc_ok {
                let min = (0..w.len())
                    .map(|k| {
                        let mut r = w.clone();
                        r.rotate_left(k);
                        r
                    })
                    .min()
                    .unwrap();
                classes.insert(min);
            }
            if w.len() < max_len {
                for c in 0..n {
                    let mut v = w.clone();
                    v.push(c);
                    stack.push(v);
                }
            }
        }
        classes.len()
    }

    #[test]
    fn counts_match_brute_force() {
        for (rank, len) in [(2, 3), (2, 4), (3, 3)] {
            let g = GroupSpec::free(rank).unwrap();
            assert_eq!(enumerate_elements(&g, len).len(), brute_force_free_classes(rank, len));
        }
    }

    fn no_rotation_duplicates(g: &GroupSpec, len: usize) {
        let all = enumerate_elements(g, len);
        let mut keys = HashSet::new();
        for c in &all {
            let w = c.to_word();
            let rots: Vec<_> = (0..w.len()).map(|k| w.rotate(k)).collect();
            for r in &rots {
                assert!(!keys.contains(r), "duplicate rotation of {}", g.format_word(&w));
            }
            keys.insert(w);
        }
    }

    #[test]
    fn no_duplicates_up_to_rotation() {
        no_rotation_duplicates(&"F2".parse().unwrap(), 4);
        no_rotation_duplicates(&"S2*Z".parse().unwrap(), 4);
    }

    #[test]
    fn inverse_classes_present() {
        let g: GroupSpec = "S2*Z".parse().unwrap();
        let all = enumerate_elements(&g, 3);
        let set: HashSet<_> = all.iter().map(|c| c.to_word()).collect();
        for c in &all {
            assert!(set.contains(&c.inverse().canonical().to_word()));
        }
    }
}
