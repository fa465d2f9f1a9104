use std::fmt;

use serde::{Serialize, Serializer};

use super::bme::bme_symbols;
use super::family::{f_meets_g, HWord, Section8Family};
use crate::error::Result;
use crate::raag::{Gen, Syllable};

/// A support subsurface: `X_i` carries `f_i`, `Y_i` carries `g_i`.
/// Indices are residues mod `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Surface {
    X(u32),
    Y(u32),
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Surface::X(i) => write!(f, "X{i}"),
            Surface::Y(i) => write!(f, "Y{i}"),
        }
    }
}

impl Serialize for Surface {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A set of supports, one bit per surface: `X_i` at bit `i`, `Y_i` at
/// bit `n + i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct SurfaceSet(pub(crate) u64);

impl SurfaceSet {
    pub fn full(n: u32) -> Self {
        SurfaceSet((1u64 << (2 * n)) - 1)
    }

    pub fn from_surfaces(n: u32, items: impl IntoIterator<Item = Surface>) -> Self {
        let mut s = SurfaceSet::default();
        for z in items {
            s.insert(n, z);
        }
        s
    }

    pub fn insert(&mut self, n: u32, z: Surface) {
        self.0 |= 1 << bit(n, z);
    }

    pub fn contains(&self, n: u32, z: Surface) -> bool {
        self.0 >> bit(n, z) & 1 == 1
    }

    pub fn is_subset(&self, other: &SurfaceSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn surfaces(&self, n: u32) -> Vec<Surface> {
        (0..2 * n)
            .filter(|b| self.0 >> b & 1 == 1)
            .map(|b| if b < n { Surface::X(b) } else { Surface::Y(b - n) })
            .collect()
    }
}

fn bit(n: u32, z: Surface) -> u32 {
    match z {
        Surface::X(i) => i % n,
        Surface::Y(i) => n + i % n,
    }
}

/// Distinct supports whose generators commute.
pub fn disjoint(n: u32, a: Surface, b: Surface) -> bool {
    match (a, b) {
        (Surface::X(i), Surface::X(j)) | (Surface::Y(i), Surface::Y(j)) => i % n != j % n,
        // f_i is generator index i-1, g_j is j-1
        (Surface::X(i), Surface::Y(j)) | (Surface::Y(j), Surface::X(i)) => {
            !f_meets_g(n, (i + n - 1) % n, (j + n - 1) % n)
        }
    }
}

/// What is known about the image of the curve: it lies in the span of
/// `contained_in` and misses every support in `misses`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpanState {
    pub contained_in: SurfaceSet,
    pub misses: SurfaceSet,
}

impl SpanState {
    /// The curve in `Y_0` disjoint from `X_0` and `X_1`.
    pub fn alpha(n: u32) -> Self {
        SpanState {
            contained_in: SurfaceSet::from_surfaces(n, [Surface::Y(0)]),
            misses: SurfaceSet::from_surfaces(n, [Surface::X(0), Surface::X(1)]),
        }
    }

    pub fn is_proper(&self, n: u32) -> bool {
        self.contained_in != SurfaceSet::full(n)
    }
}

impl Section8Family {
    /// Support of a generator of `Γ`.
    pub fn support(&self, g: Gen) -> Surface {
        let n = self.n();
        if g.0 < n {
            Surface::X((g.0 + 1) % n)
        } else {
            Surface::Y((g.0 - n + 1) % n)
        }
    }
}

/// Effect of one generator (of either sign) on the span state.
pub fn span_apply(s: SpanState, generator: Gen, fam: &Section8Family) -> SpanState {
    let n = fam.n();
    let z = fam.support(generator);
    if s.misses.contains(n, z) {
        return s;
    }
    if s.contained_in.surfaces(n).into_iter().all(|c| disjoint(n, z, c)) {
        return s;
    }
    let mut contained_in = s.contained_in;
    contained_in.insert(n, z);
    SpanState {
        contained_in,
        misses: SurfaceSet::default(),
    }
}

/// Applies a product of syllables, rightmost first.
pub fn span_apply_syllables(s: SpanState, syllables: &[Syllable], fam: &Section8Family) -> SpanState {
    syllables
        .iter()
        .rev()
        .fold(s, |acc, syl| span_apply(acc, syl.generator, fam))
}

/// The span state of `hα`.
pub fn span_of(h: &HWord, fam: &Section8Family) -> Result<SpanState> {
    let syllables = fam.expand(&bme_symbols(h)?);
    Ok(span_apply_syllables(SpanState::alpha(fam.n()), &syllables, fam))
}
