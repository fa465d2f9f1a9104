//! Independent oracles shared by the integration tests. Nothing here goes
//! through the crate's rewriting code: group elements are compared by their
//! reduced pilings, and Min classes are rebuilt from commuting swaps.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use rand::Rng;
use raag_cc::raag::{DefiningGraph, Gen, Letter, NormalWord, Syllable, Word};

pub fn fig1() -> DefiningGraph {
    DefiningGraph::new(["a", "b", "c"], [("b", "c")]).unwrap()
}

/// The path `a - b - c - d`.
pub fn path4() -> DefiningGraph {
    DefiningGraph::new(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d")]).unwrap()
}

pub fn words(g: &DefiningGraph, ws: &[&str]) -> Vec<Word> {
    ws.iter().map(|w| Word::parse(w, g).unwrap()).collect()
}

pub fn letters(g: &DefiningGraph) -> Vec<Letter> {
    g.generators()
        .flat_map(|x| [Letter::new(x, true), Letter::new(x, false)])
        .collect()
}

/// A reduced piling: one column per generator holding `±1` tokens and `0`
/// blockers. Two words give equal pilings iff they are equal in the group.
pub type Piling = Vec<Vec<i8>>;

pub fn empty_piling(g: &DefiningGraph) -> Piling {
    vec![Vec::new(); g.len()]
}

pub fn pile(p: &mut Piling, l: Letter, g: &DefiningGraph) {
    let x = l.generator.index();
    let s: i8 = if l.positive { 1 } else { -1 };
    let blocked = |y: usize| y != x && !g.adjacent(Gen(x as u32), Gen(y as u32));
    if p[x].last() == Some(&-s) {
        p[x].pop();
        for y in 0..p.len() {
            if blocked(y) {
                let t = p[y].pop();
                assert_eq!(t, Some(0), "piling out of shape");
            }
        }
    } else {
        p[x].push(s);
        for y in 0..p.len() {
            if blocked(y) {
                p[y].push(0);
            }
        }
    }
}

pub fn piling(w: &Word, g: &DefiningGraph) -> Piling {
    let mut p = empty_piling(g);
    for &l in &w.letters {
        pile(&mut p, l, g);
    }
    p
}

/// Breadth-first distances from the identity in the Cayley graph, up to
/// `radius`.
pub fn cayley_ball(g: &DefiningGraph, radius: usize) -> HashMap<Piling, usize> {
    let mut dist = HashMap::new();
    let start = empty_piling(g);
    dist.insert(start.clone(), 0);
    let mut queue = VecDeque::from([start]);
    let ls = letters(g);
    while let Some(p) = queue.pop_front() {
        let d = dist[&p];
        if d == radius {
            continue;
        }
        for &l in &ls {
            let mut q = p.clone();
            pile(&mut q, l, g);
            if !dist.contains_key(&q) {
                dist.insert(q.clone(), d + 1);
                queue.push_back(q);
            }
        }
    }
    dist
}

/// Calls `f` on every word of length at most `max_len`, shortest first
/// within each branch, with its piling.
pub fn for_each_word(g: &DefiningGraph, max_len: usize, f: &mut impl FnMut(&[Letter], &Piling)) {
    fn go(
        g: &DefiningGraph,
        ls: &[Letter],
        max_len: usize,
        prefix: &mut Vec<Letter>,
        p: &Piling,
        f: &mut impl FnMut(&[Letter], &Piling),
    ) {
        f(prefix, p);
        if prefix.len() == max_len {
            return;
        }
        for &l in ls {
            let mut q = p.clone();
            pile(&mut q, l, g);
            prefix.push(l);
            go(g, ls, max_len, prefix, &q, f);
            prefix.pop();
        }
    }
    let ls = letters(g);
    go(g, &ls, max_len, &mut Vec::new(), &empty_piling(g), f);
}

/// Syllables of a word of letters, merging equal adjacent generators but
/// not cancelling.
pub fn syllables_of(w: &[Letter]) -> Vec<Syllable> {
    let mut out: Vec<Syllable> = Vec::new();
    for l in w {
        match out.last_mut() {
            Some(s) if s.generator == l.generator => s.exponent += l.sign(),
            _ => out.push(Syllable::new(l.generator, l.sign())),
        }
    }
    out.retain(|s| s.exponent != 0);
    out
}

pub fn word_of(syl: &[Syllable]) -> Word {
    let mut letters = Vec::new();
    for s in syl {
        for _ in 0..s.exponent.unsigned_abs() {
            letters.push(Letter::new(s.generator, s.exponent > 0));
        }
    }
    Word::new(letters)
}

/// Syllables keyed by `(generator, occurrence)`, which is stable across
/// the representatives of a Min class.
pub fn keyed(syl: &[Syllable]) -> Vec<(Gen, usize)> {
    let mut seen: HashMap<Gen, usize> = HashMap::new();
    syl.iter()
        .map(|s| {
            let k = seen.entry(s.generator).or_default();
            *k += 1;
            (s.generator, *k - 1)
        })
        .collect()
}

/// The Min class reached from `syl` by swapping adjacent commuting
/// syllables.
pub fn swap_class(syl: &[Syllable], g: &DefiningGraph) -> HashSet<Vec<Syllable>> {
    let mut seen = HashSet::from([syl.to_vec()]);
    let mut queue = VecDeque::from([syl.to_vec()]);
    while let Some(w) = queue.pop_front() {
        for i in 0..w.len().saturating_sub(1) {
            let (x, y) = (w[i].generator, w[i + 1].generator);
            if x != y && g.adjacent(x, y) {
                let mut v = w.clone();
                v.swap(i, i + 1);
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
    }
    seen
}

/// Number of linear extensions of the occurrence order of `syl`: `i` must
/// precede `j` when `i < j` and the generators fail to commute or agree.
pub fn linear_extensions(syl: &[Syllable], g: &DefiningGraph) -> u64 {
    let n = syl.len();
    let mut preds = vec![0u32; n];
    for j in 0..n {
        for i in 0..j {
            let (x, y) = (syl[i].generator, syl[j].generator);
            if x == y || !g.adjacent(x, y) {
                preds[j] |= 1 << i;
            }
        }
    }
    let mut ways = vec![0u64; 1 << n];
    ways[0] = 1;
    for mask in 0..(1usize << n) {
        if ways[mask] == 0 {
            continue;
        }
        for j in 0..n {
            if mask >> j & 1 == 0 && preds[j] as usize & !mask == 0 {
                ways[mask | 1 << j] += ways[mask];
            }
        }
    }
    ways[(1 << n) - 1]
}

/// Rewrites with moves (1)-(3) applied in a random order until neither
/// cancellation nor merging is reachable.
pub fn random_reduce(w: &Word, g: &DefiningGraph, rng: &mut impl Rng) -> Vec<Syllable> {
    let mut syl: Vec<Syllable> = w
        .letters
        .iter()
        .map(|l| Syllable::new(l.generator, l.sign()))
        .collect();
    loop {
        for _ in 0..rng.gen_range(0..3) {
            if syl.len() >= 2 {
                let i = rng.gen_range(0..syl.len() - 1);
                let (x, y) = (syl[i].generator, syl[i + 1].generator);
                if x != y && g.adjacent(x, y) {
                    syl.swap(i, i + 1);
                }
            }
        }
        // pairs of equal generators that moves (3) could bring together
        let mut merges = Vec::new();
        for i in 0..syl.len() {
            let x = syl[i].generator;
            for j in i + 1..syl.len() {
                if syl[j].generator == x {
                    merges.push((i, j));
                    break;
                }
                if !g.adjacent(syl[j].generator, x) {
                    break;
                }
            }
        }
        if merges.is_empty() {
            return syl;
        }
        let (i, j) = merges[rng.gen_range(0..merges.len())];
        let e = syl[i].exponent + syl[j].exponent;
        syl.remove(j);
        if e == 0 {
            syl.remove(i);
        } else {
            syl[i].exponent = e;
        }
    }
}

pub fn random_word(g: &DefiningGraph, len: usize, rng: &mut impl Rng) -> Word {
    let ls = letters(g);
    Word::new((0..len).map(|_| ls[rng.gen_range(0..ls.len())]).collect())
}

/// A random simplicial graph on `n` vertices named `v0, v1, ...`.
pub fn random_graph(n: usize, rng: &mut impl Rng) -> DefiningGraph {
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.4) {
                edges.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    DefiningGraph::new(labels, edges).unwrap()
}

pub fn normal_word(syl: &[Syllable], g: &DefiningGraph) -> NormalWord {
    NormalWord::from_syllables(syl.to_vec(), g).unwrap()
}
