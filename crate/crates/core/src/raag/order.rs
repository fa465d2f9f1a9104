use super::graph::DefiningGraph;
use super::normal::{depends, is_normal, normalize_syllables, NormalWord, Syllable};
use crate::error::{Error, Result};

/// The strict partial order "left of in every representative" on the
/// syllables of a normal word, stored as one bitset row per syllable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyllableOrder {
    n: usize,
    rows: Vec<Vec<u64>>,
}

impl SyllableOrder {
    fn new(n: usize) -> Self {
        SyllableOrder {
            n,
            rows: vec![vec![0; n.div_ceil(64)]; n],
        }
    }

    fn set(&mut self, i: usize, j: usize) {
        self.rows[i][j / 64] |= 1 << (j % 64);
    }

    fn absorb(&mut self, i: usize, j: usize) {
        let (lo, hi) = self.rows.split_at_mut(j);
        for (a, b) in lo[i].iter_mut().zip(&hi[0]) {
            *a |= *b;
        }
    }

    /// Number of syllables in the carrier.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `p ≺ q`.
    pub fn less(&self, p: usize, q: usize) -> bool {
        self.rows[p][q / 64] >> (q % 64) & 1 == 1
    }

    pub fn comparable(&self, p: usize, q: usize) -> bool {
        self.less(p, q) || self.less(q, p)
    }

    /// All pairs `(p, q)` with `p ≺ q`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for p in 0..self.n {
            for q in p + 1..self.n {
                if self.less(p, q) {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// Syllables with no predecessor.
    pub fn minimal(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&q| (0..q).all(|p| !self.less(p, q)))
            .collect()
    }

    /// Syllables with no successor.
    pub fn maximal(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&p| self.rows[p].iter().all(|&w| w == 0))
            .collect()
    }
}

/// Transitive closure of the dependence relation: `i < j` with equal or
/// non-adjacent generators.
pub fn syllable_order(w: &NormalWord, graph: &DefiningGraph) -> Result<SyllableOrder> {
    let syl = w.syllables();
    if !is_normal(syl, graph) {
        return Err(Error::contract("syllable_order needs a normal word"));
    }
    Ok(order_of(syl, graph))
}

pub(crate) fn order_of(syl: &[Syllable], graph: &DefiningGraph) -> SyllableOrder {
    let n = syl.len();
    let mut order = SyllableOrder::new(n);
    for i in (0..n).rev() {
        for j in i + 1..n {
            if !order.less(i, j) && depends(syl[i].generator, syl[j].generator, graph) {
                order.set(i, j);
                order.absorb(i, j);
            }
        }
    }
    order
}

/// Splits the syllables strictly between `p` and `q` into `L·R` with `L`
/// commuting with `p` and `R` commuting with `q`, following the inductive
/// construction: take the first syllable `s` ordered after `p`, split the
/// part right of `s` against `(s, q)`, then split the left remainder
/// against `(p, q)`.
pub fn subword_decompose(
    w: &NormalWord,
    p: usize,
    q: usize,
    graph: &DefiningGraph,
) -> Result<(NormalWord, NormalWord)> {
    let order = syllable_order(w, graph)?;
    let n = order.len();
    if p >= n || q >= n {
        return Err(Error::contract(format!("syllable index out of range (word has {n})")));
    }
    if p >= q {
        return Err(Error::contract("p must lie strictly left of q"));
    }
    if order.less(p, q) {
        return Err(Error::contract("p and q are ordered"));
    }
    let middle: Vec<usize> = (p + 1..q).collect();
    let (left, right) = decompose(&order, p, &middle);
    let syl = w.syllables();
    let pick = |ids: Vec<usize>| normalize_syllables(ids.into_iter().map(|i| syl[i]), graph);
    Ok((pick(left), pick(right)))
}

fn decompose(order: &SyllableOrder, p: usize, m: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let Some(k) = m.iter().position(|&s| order.comparable(p, s)) else {
        return (m.to_vec(), Vec::new());
    };
    let s = m[k];
    let (l2, r2) = decompose(order, s, &m[k + 1..]);
    let (l3, r3) = decompose(order, p, &l2);
    let mut left = m[..k].to_vec();
    left.extend(l3);
    let mut right = r3;
    right.push(s);
    right.extend(r2);
    (left, right)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path4() -> DefiningGraph {
        DefiningGraph::new(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d")]).unwrap()
    }

    fn raw(text: &str, g: &DefiningGraph) -> NormalWord {
        let w = super::super::word::Word::parse(text, g).unwrap();
        let syl = w
            .letters
            .chunk_by(|x, y| x == y)
            .map(|r| Syllable::new(r[0].generator, r.len() as i32 * r[0].sign()))
            .collect();
        NormalWord::from_syllables(syl, g).unwrap()
    }

    #[test]
    fn acbd_order() {
        let g = path4();
        let order = syllable_order(&raw("a c b d", &g), &g).unwrap();
        // positions: a=0 c=1 b=2 d=3
        assert_eq!(order.pairs(), vec![(0, 1), (0, 3), (2, 3)]);
    }

    #[test]
    fn single_syllable_has_empty_order() {
        let g = path4();
        let order = syllable_order(&raw("a^3", &g), &g).unwrap();
        assert!(order.pairs().is_empty());
        assert!(syllable_order(&NormalWord::empty(), &g).unwrap().is_empty());
    }

    #[test]
    fn decompose_cab() {
        let g = path4();
        let w = raw("c a b", &g);
        let (l, r) = subword_decompose(&w, 0, 2, &g).unwrap();
        assert!(l.is_empty());
        assert_eq!(r.spell(&g), "a");
        // adjacent pair: nothing in between
        let (l, r) = subword_decompose(&w, 1, 2, &g).unwrap();
        assert!(l.is_empty() && r.is_empty());
    }

    #[test]
    fn decompose_rejects_ordered_pair() {
        let g = path4();
        let w = raw("a c b d", &g);
        assert!(subword_decompose(&w, 0, 3, &g).is_err());
        assert!(subword_decompose(&w, 2, 1, &g).is_err());
    }
}
