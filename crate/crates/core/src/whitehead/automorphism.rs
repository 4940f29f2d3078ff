use std::fmt;

use crate::error::{Error, Result};
use crate::word::{cyclic_reduce, free_reduce, CyclicWord, Letter, Word};

/// A Whitehead automorphism of `F_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WhiteheadAutomorphism {
    /// Permutation of the generators with optional inversions: generator
    /// `i` maps to `images[i]`.
    Permutation { images: Vec<Letter> },
    /// Type II: a generator `x` outside `{a, a^-1}` maps to
    /// `(a if x in A) x (a^-1 if x^-1 in A)`, and `a` is fixed. `set` is a
    /// bitmask over letter keys.
    TypeTwo { rank: usize, set: u64, multiplier: Letter },
}

impl WhiteheadAutomorphism {
    pub fn type_two(rank: usize, set: impl IntoIterator<Item = Letter>, multiplier: Letter) -> Result<Self> {
        let mut mask = 0u64;
        for l in set {
            if l.generator_index() >= rank {
                return Err(Error::GeneratorOutOfRange {
                    index: l.generator_index(),
                    rank,
                });
            }
            mask |= 1 << l.key();
        }
        if multiplier.generator_index() >= rank {
            return Err(Error::GeneratorOutOfRange {
                index: multiplier.generator_index(),
                rank,
            });
        }
        if mask & (1 << multiplier.key()) == 0 || mask & (1 << multiplier.inverse().key()) != 0 {
            return Err(Error::InvalidAutomorphism(format!(
                "multiplier {multiplier} must lie in the set and its inverse must not"
            )));
        }
        Ok(WhiteheadAutomorphism::TypeTwo {
            rank,
            set: mask,
            multiplier,
        })
    }

    pub fn permutation(images: Vec<Letter>) -> Result<Self> {
        let rank = images.len();
        let mut seen = vec![false; rank];
        for l in &images {
            let g = l.generator_index();
            if g >= rank || seen[g] {
                return Err(Error::InvalidAutomorphism("images must permute the generators".into()));
            }
            seen[g] = true;
        }
        Ok(WhiteheadAutomorphism::Permutation { images })
    }

    pub fn rank(&self) -> usize {
        match self {
            WhiteheadAutomorphism::Permutation { images } => images.len(),
            WhiteheadAutomorphism::TypeTwo { rank, .. } => *rank,
        }
    }

    fn image_of(&self, l: Letter, out: &mut Vec<Letter>) {
        match self {
            WhiteheadAutomorphism::Permutation { images } => {
                let img = images[l.generator_index()];
                out.push(if l.is_inverted() { img.inverse() } else { img });
            }
            WhiteheadAutomorphism::TypeTwo { set, multiplier, .. } => {
                let a = *multiplier;
                if l.generator_index() == a.generator_index() {
                    out.push(l);
                    return;
                }
                let contains = |x: Letter| set & (1 << x.key()) != 0;
                if contains(l) {
                    out.push(a);
                }
                out.push(l);
                if contains(l.inverse()) {
                    out.push(a.inverse());
                }
            }
        }
    }

    /// Image of a word, freely reduced.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        if w.rank() != self.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: w.rank(),
            });
        }
        let mut letters = Vec::with_capacity(w.len() + 2);
        for &l in w.letters() {
            self.image_of(l, &mut letters);
        }
        free_reduce(&letters, w.rank())
    }

    /// Image of a conjugacy class, cyclically reduced.
    pub fn apply_cyclic(&self, c: &CyclicWord) -> Result<CyclicWord> {
        let image = self.apply(&c.to_word())?;
        cyclic_reduce(&image).map(|(c, _)| c)
    }

    pub fn inverse(&self) -> WhiteheadAutomorphism {
        match self {
            WhiteheadAutomorphism::Permutation { images } => {
                let mut inv = images.clone();
                for (i, img) in images.iter().enumerate() {
                    inv[img.generator_index()] = Letter::new(i, img.is_inverted());
                }
                WhiteheadAutomorphism::Permutation { images: inv }
            }
            WhiteheadAutomorphism::TypeTwo { rank, set, multiplier } => {
                let a = *multiplier;
                let set = (set & !(1 << a.key())) | (1 << a.inverse().key());
                WhiteheadAutomorphism::TypeTwo {
                    rank: *rank,
                    set,
                    multiplier: a.inverse(),
                }
            }
        }
    }
}

impl fmt::Display for WhiteheadAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WhiteheadAutomorphism::Permutation { images } => {
                write!(f, "perm[")?;
                for (i, img) in images.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}->{}", Letter::generator(i), img)?;
                }
                write!(f, "]")
            }
            WhiteheadAutomorphism::TypeTwo { rank, set, multiplier } => {
                write!(f, "({{")?;
                let members: Vec<String> = Letter::all(*rank)
                    .filter(|l| set & (1 << l.key()) != 0)
                    .map(|l| l.to_string())
                    .collect();
                write!(f, "{}}}, {})", members.join(","), multiplier)
            }
        }
    }
}

/// All non-trivial type II Whitehead automorphisms, ordered by multiplier
/// letter and then by the bitmask of the remaining set members.
pub fn all_whitehead_automorphisms(rank: usize) -> Result<Vec<WhiteheadAutomorphism>> {
    if !(2..=crate::word::MAX_RANK).contains(&rank) {
        return Err(Error::BadRank { rank, min: 2 });
    }
    let mut out = Vec::new();
    for a in Letter::all(rank) {
        let others: Vec<Letter> = Letter::all(rank)
            .filter(|l| l.generator_index() != a.generator_index())
            .collect();
        for bits in 1u64..(1 << others.len()) {
            let mut set = 1u64 << a.key();
            for (i, l) in others.iter().enumerate() {
                if bits & (1 << i) != 0 {
                    set |= 1 << l.key();
                }
            }
            out.push(WhiteheadAutomorphism::TypeTwo {
                rank,
                set,
                multiplier: a,
            });
        }
    }
    Ok(out)
}

/// All `n! 2^n` signed permutations of the generators, identity first.
pub fn nielsen_permutations(rank: usize) -> Vec<WhiteheadAutomorphism> {
    fn permutations(items: Vec<usize>) -> Vec<Vec<usize>> {
        if items.len() <= 1 {
            return vec![items];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.clone();
            let head = rest.remove(i);
            for mut tail in permutations(rest) {
                tail.insert(0, head);
                out.push(tail);
            }
        }
        out
    }
    let mut out = Vec::new();
    for perm in permutations((0..rank).collect()) {
        for signs in 0u32..(1 << rank) {
            let images = perm
                .iter()
                .enumerate()
                .map(|(i, &g)| Letter::new(g, signs & (1 << i) != 0))
                .collect();
            out.push(WhiteheadAutomorphism::Permutation { images });
        }
    }
    out
}
