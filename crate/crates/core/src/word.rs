//! Words in the free group `F_n`.
//!
//! Generators are written `a, b, c, ...` and their inverses `A, B, C, ...`,
//! so `"abAB"` is the commutator `x1 x2 x1^-1 x2^-1`. Letters are totally
//! ordered index-major with the plain letter before its inverse
//! (`a < A < b < B < ...`); this order drives every canonical form.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest rank representable in the ASCII word format.
pub const MAX_RANK: usize = 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    generator: u8,
    inverted: bool,
}

impl Letter {
    pub fn new(generator: usize, inverted: bool) -> Self {
        assert!(generator < MAX_RANK, "generator index {generator} exceeds {MAX_RANK}");
        Letter {
            generator: generator as u8,
            inverted,
        }
    }

    pub fn generator(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub fn from_char(ch: char) -> Result<Self> {
        match ch {
            'a'..='z' => Ok(Letter::new(ch as usize - 'a' as usize, false)),
            'A'..='Z' => Ok(Letter::new(ch as usize - 'A' as usize, true)),
            _ => Err(Error::InvalidCharacter(ch)),
        }
    }

    /// Position in the letter order; also used as the vertex index of the
    /// Whitehead graph.
    pub fn from_key(key: usize) -> Self {
        Letter::new(key / 2, key % 2 == 1)
    }

    pub fn generator_index(self) -> usize {
        self.generator as usize
    }

    pub fn is_inverted(self) -> bool {
        self.inverted
    }

    pub fn inverse(self) -> Self {
        Letter {
            generator: self.generator,
            inverted: !self.inverted,
        }
    }

    pub fn key(self) -> usize {
        2 * self.generator as usize + self.inverted as usize
    }

    pub fn to_char(self) -> char {
        let base = if self.inverted { b'A' } else { b'a' };
        (base + self.generator) as char
    }

    /// All `2 * rank` letters in canonical order.
    pub fn all(rank: usize) -> impl Iterator<Item = Letter> {
        (0..2 * rank).map(Letter::from_key)
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

fn check_rank(rank: usize) -> Result<()> {
    if rank == 0 || rank > MAX_RANK {
        return Err(Error::BadRank { rank, min: 1 });
    }
    Ok(())
}

fn check_letters(letters: &[Letter], rank: usize) -> Result<()> {
    check_rank(rank)?;
    match letters.iter().find(|l| l.generator_index() >= rank) {
        Some(l) => Err(Error::GeneratorOutOfRange {
            index: l.generator_index(),
            rank,
        }),
        None => Ok(()),
    }
}

fn reduce_in_place(letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// A freely reduced word together with the rank of its ambient free group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
    rank: usize,
}

/// Freely reduce a letter sequence.
pub fn free_reduce(letters: &[Letter], rank: usize) -> Result<Word> {
    check_letters(letters, rank)?;
    Ok(Word {
        letters: reduce_in_place(letters.iter().copied()),
        rank,
    })
}

impl Word {
    pub fn new(letters: &[Letter], rank: usize) -> Result<Self> {
        free_reduce(letters, rank)
    }

    pub fn identity(rank: usize) -> Result<Self> {
        check_rank(rank)?;
        Ok(Word {
            letters: Vec::new(),
            rank,
        })
    }

    /// Parse the ASCII form and freely reduce it.
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let letters = s.chars().map(Letter::from_char).collect::<Result<Vec<_>>>()?;
        free_reduce(&letters, rank)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
            rank: self.rank,
        }
    }

    /// Group product `self * other`, freely reduced.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(Word {
            letters: reduce_in_place(self.letters.iter().chain(&other.letters).copied()),
            rank: self.rank,
        })
    }

    /// Exponent sum of each generator (the image in the abelianization).
    pub fn exponent_sums(&self) -> Vec<i64> {
        exponent_sums(&self.letters, self.rank)
    }
}

pub(crate) fn exponent_sums(letters: &[Letter], rank: usize) -> Vec<i64> {
    let mut sums = vec![0i64; rank];
    for l in letters {
        sums[l.generator_index()] += if l.is_inverted() { -1 } else { 1 };
    }
    sums
}

fn write_letters(f: &mut fmt::Formatter<'_>, letters: &[Letter]) -> fmt::Result {
    for l in letters {
        write!(f, "{l}")?;
    }
    Ok(())
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.letters)
    }
}

/// A cyclically reduced, nonempty word stored in its least rotation.
///
/// Two `CyclicWord`s are equal iff they represent the same conjugacy class
/// (inversion is *not* identified here; see [`canonical_class`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicWord {
    letters: Vec<Letter>,
    rank: usize,
}

fn is_cyclically_reduced(letters: &[Letter]) -> bool {
    let first = letters.first();
    let last = letters.last();
    letters.windows(2).all(|p| p[1] != p[0].inverse())
        && matches!((first, last), (Some(f), Some(l)) if *f != l.inverse())
}

/// Index of the lexicographically least rotation.
fn least_rotation(letters: &[Letter]) -> usize {
    let n = letters.len();
    let rotation = |k: usize| letters[k..].iter().chain(&letters[..k]);
    (1..n).fold(0, |best, k| if rotation(k).lt(rotation(best)) { k } else { best })
}

fn rotated(letters: &[Letter], k: usize) -> Vec<Letter> {
    letters[k..].iter().chain(&letters[..k]).copied().collect()
}

impl CyclicWord {
    /// Build from letters that are already cyclically reduced; the stored
    /// form is the least rotation.
    pub fn new(letters: &[Letter], rank: usize) -> Result<Self> {
        check_letters(letters, rank)?;
        if letters.is_empty() {
            return Err(Error::TrivialElement);
        }
        if !is_cyclically_reduced(letters) {
            return Err(Error::InvalidParameter(format!(
                "word {} is not cyclically reduced",
                Word {
                    letters: letters.to_vec(),
                    rank
                }
            )));
        }
        let k = least_rotation(letters);
        Ok(CyclicWord {
            letters: rotated(letters, k),
            rank,
        })
    }

    /// Parse a word in ASCII form and cyclically reduce it.
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        cyclic_reduce(&Word::parse(s, rank)?).map(|(c, _)| c)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Always false; present for API symmetry with [`Word`].
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The stored rotation as an ordinary word.
    pub fn to_word(&self) -> Word {
        Word {
            letters: self.letters.clone(),
            rank: self.rank,
        }
    }

    pub fn inverse(&self) -> CyclicWord {
        let inv: Vec<Letter> = self.letters.iter().rev().map(|l| l.inverse()).collect();
        let k = least_rotation(&inv);
        CyclicWord {
            letters: rotated(&inv, k),
            rank: self.rank,
        }
    }

    /// All cyclic rotations of the stored form, starting with itself.
    pub fn rotations(&self) -> impl Iterator<Item = Vec<Letter>> + '_ {
        (0..self.letters.len()).map(move |k| rotated(&self.letters, k))
    }

    pub fn exponent_sums(&self) -> Vec<i64> {
        exponent_sums(&self.letters, self.rank)
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.letters)
    }
}

impl PartialOrd for CyclicWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortlex order: shorter classes first, then lexicographic in letter order.
impl Ord for CyclicWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank
            .cmp(&other.rank)
            .then(self.letters.len().cmp(&other.letters.len()))
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

/// Split `w = u * c * u^-1` with `c` cyclically reduced (in least rotation).
pub fn cyclic_reduce(w: &Word) -> Result<(CyclicWord, Word)> {
    let letters = &w.letters;
    if letters.is_empty() {
        return Err(Error::TrivialElement);
    }
    let mut lo = 0;
    let mut hi = letters.len();
    while hi - lo >= 2 && letters[lo] == letters[hi - 1].inverse() {
        lo += 1;
        hi -= 1;
    }
    let core = &letters[lo..hi];
    let k = least_rotation(core);
    // w = u0 core u0^-1 and core = p (rotated) p^-1 with p = core[..k]
    let conjugator: Vec<Letter> = letters[..lo].iter().chain(&core[..k]).copied().collect();
    Ok((
        CyclicWord {
            letters: rotated(core, k),
            rank: w.rank,
        },
        Word {
            letters: reduce_in_place(conjugator),
            rank: w.rank,
        },
    ))
}

/// Least representative of the conjugacy class of `c`, optionally also
/// identifying `c` with its inverse.
pub fn canonical_class(c: &CyclicWord, include_inversion: bool) -> CyclicWord {
    if include_inversion {
        let inv = c.inverse();
        if inv.letters < c.letters {
            return inv;
        }
    }
    c.clone()
}

/// `c^k` as an ordinary word.
pub fn power(c: &CyclicWord, k: usize) -> Result<Word> {
    if k == 0 {
        return Err(Error::ZeroPower);
    }
    let mut letters = Vec::with_capacity(k * c.len());
    for _ in 0..k {
        letters.extend_from_slice(&c.letters);
    }
    Ok(Word { letters, rank: c.rank })
}

/// Whether `pattern` occurs in the bi-infinite periodic word `...ccc...`.
pub fn cyclic_subword_occurs(host: &CyclicWord, pattern: &Word) -> Result<bool> {
    if host.rank != pattern.rank {
        return Err(Error::RankMismatch {
            left: host.rank,
            right: pattern.rank,
        });
    }
    let n = host.len();
    let p = pattern.letters();
    Ok((0..n).any(|start| p.iter().enumerate().all(|(i, l)| host.letters[(start + i) % n] == *l)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    fn cw(s: &str) -> CyclicWord {
        CyclicWord::parse(s, 2).unwrap()
    }

    #[test]
    fn free_reduce_examples() {
        assert!(w("aA").is_empty());
        assert_eq!(w("abBa").to_string(), "aa");
        assert!(w("aBbA").is_empty());
    }

    #[test]
    fn free_reduce_rejects_out_of_range() {
        let letters = [Letter::generator(0), Letter::generator(2)];
        assert_eq!(
            free_reduce(&letters, 2),
            Err(Error::GeneratorOutOfRange { index: 2, rank: 2 })
        );
        assert!(matches!(Word::parse("a%", 2), Err(Error::InvalidCharacter('%'))));
    }

    #[test]
    fn cyclic_reduce_examples() {
        let (c, u) = cyclic_reduce(&w("abA")).unwrap();
        assert_eq!((c.to_string(), u.to_string()), ("b".into(), "a".into()));
        let (c, u) = cyclic_reduce(&w("ab")).unwrap();
        assert_eq!((c.to_string(), u.to_string()), ("ab".into(), "".into()));
        let (c, u) = cyclic_reduce(&w("abAB")).unwrap();
        assert_eq!((c.to_string(), u.to_string()), ("abAB".into(), "".into()));
        assert_eq!(cyclic_reduce(&w("")), Err(Error::TrivialElement));
    }

    #[test]
    fn cyclic_reduce_rotates_into_conjugator() {
        let input = w("aba");
        let (c, u) = cyclic_reduce(&input).unwrap();
        assert_eq!(c.to_string(), "aab");
        let back = u.concat(&c.to_word()).unwrap().concat(&u.inverse()).unwrap();
        assert_eq!(back, input);
    }

    #[test]
    fn canonical_class_examples() {
        assert_eq!(canonical_class(&cw("ba"), true).to_string(), "ab");
        assert_eq!(canonical_class(&cw("a"), true).to_string(), "a");
        assert_eq!(canonical_class(&cw("A"), true).to_string(), "a");
        assert_eq!(canonical_class(&cw("A"), false).to_string(), "A");
    }

    #[test]
    fn canonical_class_commutator_matches_brute_force() {
        // brute force: every rotation of abAB and of its inverse baBA
        let brute = |s: &str| -> String {
            let inv: String = s
                .chars()
                .rev()
                .map(|ch| {
                    if ch.is_lowercase() {
                        ch.to_ascii_uppercase()
                    } else {
                        ch.to_ascii_lowercase()
                    }
                })
                .collect();
            let key = |t: &String| {
                t.chars()
                    .map(|ch| Letter::from_char(ch).unwrap().key())
                    .collect::<Vec<_>>()
            };
            let mut all = Vec::new();
            for base in [s.to_string(), inv] {
                for k in 0..base.len() {
                    all.push(format!("{}{}", &base[k..], &base[..k]));
                }
            }
            all.into_iter().min_by_key(key).unwrap()
        };
        let left = canonical_class(&cw("abAB"), true);
        let right = canonical_class(&cw("aBAb"), true);
        assert_eq!(left, right);
        assert_eq!(left.to_string(), brute("abAB"));
        assert_eq!(right.to_string(), brute("aBAb"));
    }

    #[test]
    fn power_examples() {
        assert_eq!(power(&cw("ab"), 2).unwrap().to_string(), "abab");
        assert_eq!(power(&cw("a"), 3).unwrap().to_string(), "aaa");
        let p = power(&cw("abAB"), 2).unwrap();
        assert_eq!((p.to_string().as_str(), p.len()), ("abABabAB", 8));
        assert_eq!(power(&cw("a"), 0), Err(Error::ZeroPower));
    }

    #[test]
    fn cyclic_subword_examples() {
        assert!(cyclic_subword_occurs(&cw("ab"), &w("ba")).unwrap());
        assert!(!cyclic_subword_occurs(&cw("ab"), &w("aa")).unwrap());
        // brute force over "abABabAB": windows abA, bAB, ABa, Bab; "BAb" only
        // appears in the inverse class baBA
        let host = cw("abAB");
        let doubled = format!("{host}{host}");
        let brute = (0..host.len()).any(|i| doubled[i..].starts_with("BAb"));
        assert!(!brute);
        assert_eq!(cyclic_subword_occurs(&host, &w("BAb")).unwrap(), brute);
        assert!(cyclic_subword_occurs(&host.inverse(), &w("BAb")).unwrap());
        assert!(cyclic_subword_occurs(&cw("a"), &w("aaaa")).unwrap());
        let rank3 = Word::parse("c", 3).unwrap();
        assert!(cyclic_subword_occurs(&cw("ab"), &rank3).is_err());
    }

    #[test]
    fn cyclic_word_requires_reduction() {
        let letters: Vec<Letter> = "abA".chars().map(|c| Letter::from_char(c).unwrap()).collect();
        assert!(CyclicWord::new(&letters, 2).is_err());
        assert_eq!(CyclicWord::new(&[], 2), Err(Error::TrivialElement));
    }
}
