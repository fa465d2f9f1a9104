mod common;

use std::collections::{BTreeSet, HashSet};

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use raag_cc::raag::*;
use raag_cc::section8::{family, HWord};
use raag_cc::surface::*;

fn set(g: &DefiningGraph, labels: &[&str]) -> GenSet {
    labels.iter().map(|l| g.lookup(l).unwrap()).collect()
}

fn models() -> Vec<SurfaceModel> {
    let g = fig1();
    vec![
        SurfaceModel::full(g.clone(), true).unwrap(),
        SurfaceModel::new(g.clone(), vec![set(&g, &["a", "b"]), set(&g, &["a", "c"])], true).unwrap(),
    ]
}

/// Canonical normal words of length at most `max_len`, depth first. The
/// canonical form is prefix closed, so non-canonical prefixes are pruned.
fn for_each_canonical(g: &DefiningGraph, max_len: usize, f: &mut impl FnMut(&NormalWord)) {
    fn go(g: &DefiningGraph, ls: &[Letter], max_len: usize, w: &mut Word, f: &mut impl FnMut(&NormalWord)) {
        let n = normalize(w, g).unwrap();
        if n.len() != w.len() || n.to_word() != *w {
            return;
        }
        f(&n);
        if w.len() == max_len {
            return;
        }
        for &l in ls {
            w.letters.push(l);
            go(g, ls, max_len, w, f);
            w.letters.pop();
        }
    }
    go(g, &letters(g), max_len, &mut Word::empty(), f);
}

#[test]
fn supports_agree_across_min_classes() {
    let g = fig1();
    for_each_canonical(&g, 6, &mut |w| {
        let s = supports(w);
        for rep in swap_class(w.syllables(), &g) {
            assert_eq!(supports(&normal_word(&rep, &g)), s);
        }
    });
}

#[test]
fn subs_families_are_injective_and_representative_free() {
    let g = fig1();
    for_each_canonical(&g, 6, &mut |w| {
        let family = subs(w, &g);
        assert_eq!(family.len(), w.syllable_count());
        for i in 0..family.len() {
            for j in i + 1..family.len() {
                assert!(!family[i].same_as(&family[j], &g), "{}", w.spell(&g));
            }
        }
        for rep in swap_class(w.syllables(), &g) {
            assert!(same_family(&family, &subs(&normal_word(&rep, &g), &g), &g));
        }
    });
}

#[test]
fn filling_sets_agree_with_upward_closure() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let labels: Vec<String> = (0..12).map(|i| format!("x{i}")).collect();
        let g = DefiningGraph::edgeless(labels).unwrap();
        // random antichain of sets of size 3 or 4
        let mut minimal: Vec<GenSet> = Vec::new();
        while minimal.len() < 4 {
            let size = rng.gen_range(3..=4);
            let s: GenSet = (0..size).map(|_| Gen(rng.gen_range(0..12))).collect();
            if s.len() >= 2 && minimal.iter().all(|m| !m.is_subset(&s) && !s.is_subset(m)) {
                minimal.push(s);
            }
        }
        let model = SurfaceModel::new(g, minimal.clone(), true).unwrap();
        // upward closure by adding one generator at a time
        let mut closed: HashSet<u32> = minimal
            .iter()
            .map(|s| s.iter().fold(0u32, |m, x| m | 1 << x.0))
            .collect();
        let mut frontier: Vec<u32> = closed.iter().copied().collect();
        while let Some(m) = frontier.pop() {
            for x in 0..12 {
                let up = m | 1 << x;
                if closed.insert(up) {
                    frontier.push(up);
                }
            }
        }
        for mask in 0u32..1 << 12 {
            let s: GenSet = (0..12).filter(|x| mask >> x & 1 == 1).map(Gen).collect();
            assert_eq!(model.is_filling(&s), closed.contains(&mask));
        }
    }
}

fn brute_blocks(w: &NormalWord, model: &SurfaceModel) -> Vec<FillingBlock> {
    let syl = w.syllables();
    let fills = |i: usize, j: usize| model.is_filling(&syl[i..=j].iter().map(|s| s.generator).collect());
    let mut out = Vec::new();
    for i in 0..syl.len() {
        for j in i..syl.len() {
            let inner = (j > i && fills(i + 1, j)) || (j > i && fills(i, j - 1));
            if fills(i, j) && !inner {
                out.push(FillingBlock { start: i, end: j });
            }
        }
    }
    out
}

#[test]
fn blocks_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for model in models().into_iter().chain([SurfaceModel::full(path4(), true).unwrap()]) {
        let g = model.graph().clone();
        for _ in 0..300 {
            let len = rng.gen_range(0..40);
            let w = normalize(&random_word(&g, len, &mut rng), &g).unwrap();
            if w.syllable_count() > 20 {
                continue;
            }
            let blocks = find_filling_blocks(&w, &model);
            assert_eq!(blocks, brute_blocks(&w, &model));
            for pair in blocks.windows(2) {
                assert!(pair[0].start < pair[1].start && pair[0].end < pair[1].end);
            }
        }
    }
}

#[test]
fn syllables_are_ordered_against_every_filling_block() {
    let g = fig1();
    let model = SurfaceModel::full(g.clone(), true).unwrap();
    let mut with_blocks = 0usize;
    for_each_canonical(&g, 10, &mut |w| {
        let blocks = find_filling_blocks(w, &model);
        if blocks.is_empty() {
            return;
        }
        with_blocks += 1;
        let order = syllable_order(w, &g).unwrap();
        for b in &blocks {
            for p in 0..w.syllable_count() {
                if (b.start..=b.end).contains(&p) {
                    continue;
                }
                assert!(
                    (b.start..=b.end).any(|q| order.comparable(p, q)),
                    "{} block {b:?} syllable {p}",
                    w.spell(&g)
                );
            }
        }
    });
    assert!(with_blocks > 10_000);
}

#[test]
fn padding_breaks_the_window_property() {
    let g = fig1();
    let model = SurfaceModel::full(g.clone(), true).unwrap();
    let plain = NormalWord::parse("b c a b c a b c a", &g).unwrap();
    assert!(check_window_property(&plain, 4, &model));
    let padded = NormalWord::parse("b c a b^6 c a b c a", &g).unwrap();
    assert!(!check_window_property(&padded, 4, &model));
    assert!(check_window_property(&padded, padded.len() + 1, &model));
}

#[test]
fn family_generator_is_a_single_block() {
    let fam = family(3, 1).unwrap();
    let w = &fam.generators()[0];
    let blocks = find_filling_blocks(w, fam.model());
    assert_eq!(blocks, [FillingBlock { start: 0, end: w.syllable_count() - 1 }]);
    assert!(fills(w, fam.model()));
    let fam = family(4, 3).unwrap();
    for (i, w) in fam.generators().iter().enumerate() {
        assert_eq!(max_exponent(w) as usize, i + 1);
    }
    assert_eq!(max_exponent(&NormalWord::empty()), 0);
    let h = HWord::parse("w2", &fam).unwrap();
    assert_eq!(h.len(), 1);
}

fn fig1_word(max: usize) -> impl Strategy<Value = Word> {
    let g = fig1();
    let ls = letters(&g);
    prop::collection::vec(0..ls.len(), 0..=max).prop_map(move |ix| Word::new(ix.iter().map(|&i| ls[i]).collect()))
}

proptest! {
    #[test]
    fn filling_is_conjugation_invariant(c in fig1_word(5), h in fig1_word(5)) {
        let g = fig1();
        for model in models() {
            let hn = normalize(&h, &g).unwrap();
            let conj = normalize(&c.concat(&h).concat(&c.invert()), &g).unwrap();
            prop_assert_eq!(fills(&conj, &model), fills(&hn, &model));
        }
    }

    #[test]
    fn block_ranges_are_an_antichain(w in fig1_word(30)) {
        let g = fig1();
        for model in models() {
            let n = normalize(&w, &g).unwrap();
            let blocks = find_filling_blocks(&n, &model);
            let ranges: BTreeSet<(usize, usize)> = blocks.iter().map(|b| (b.start, b.end)).collect();
            for &(s1, e1) in &ranges {
                for &(s2, e2) in &ranges {
                    prop_assert!((s1, e1) == (s2, e2) || !(s1 <= s2 && e2 <= e1));
                }
            }
        }
    }
}
