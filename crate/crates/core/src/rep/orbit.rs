use crate::error::{Error, Result};
use crate::h3::{act_h3, H3Point, ProductAccumulator};
use crate::word::{CyclicWord, Letter};

use super::Representation;

/// Image under `τ_{ρ,o}` of the line through the powers of a cyclic word:
/// vertex `j` is `ρ(prefix_j) o` where `prefix_j` is the length-`|j|` prefix
/// of `...www...` read rightward from the identity (leftward, with inverse
/// letters, for negative `j`).
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitPath {
    word: CyclicWord,
    repetitions: usize,
    first_index: i64,
    vertices: Vec<H3Point>,
}

impl OrbitPath {
    pub fn word(&self) -> &CyclicWord {
        &self.word
    }

    pub fn repetitions(&self) -> usize {
        self.repetitions
    }

    pub fn first_index(&self) -> i64 {
        self.first_index
    }

    pub fn last_index(&self) -> i64 {
        self.first_index + self.vertices.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, j: i64) -> Option<&H3Point> {
        usize::try_from(j - self.first_index)
            .ok()
            .and_then(|k| self.vertices.get(k))
    }

    pub fn vertices(&self) -> impl Iterator<Item = (i64, &H3Point)> {
        (self.first_index..).zip(&self.vertices)
    }

    /// The letter on the edge from vertex `j` to vertex `j + 1`.
    pub fn edge_letter(&self, j: i64) -> Letter {
        edge_letter(&self.word, j)
    }
}

pub(crate) fn edge_letter(word: &CyclicWord, j: i64) -> Letter {
    word.letters()[j.rem_euclid(word.len() as i64) as usize]
}

/// Index range `[-⌊mR/2⌋, ⌈mR/2⌉]` for a word of length `m`.
pub(crate) fn index_range(m: usize, repetitions: usize) -> (i64, i64) {
    let total = (m * repetitions) as i64;
    (-(total / 2), total - total / 2)
}

pub fn orbit_path(rho: &Representation, c: &CyclicWord, repetitions: usize, base: &H3Point) -> Result<OrbitPath> {
    if c.rank() != rho.rank() {
        return Err(Error::RankMismatch {
            left: rho.rank(),
            right: c.rank(),
        });
    }
    if repetitions < 2 {
        return Err(Error::InvalidParameter(format!(
            "repetitions must be at least 2, got {repetitions}"
        )));
    }
    let (lo, hi) = index_range(c.len(), repetitions);

    let mut forward = vec![*base];
    let mut acc = ProductAccumulator::new();
    for j in 0..hi {
        let m = acc.push(rho.image(edge_letter(c, j)))?;
        forward.push(act_h3(m, base));
    }

    let mut backward = Vec::new();
    let mut acc = ProductAccumulator::new();
    for j in (lo..0).rev() {
        let m = acc.push(rho.image(edge_letter(c, j).inverse()))?;
        backward.push(act_h3(m, base));
    }

    backward.reverse();
    backward.extend(forward);
    Ok(OrbitPath {
        word: c.clone(),
        repetitions,
        first_index: lo,
        vertices: backward,
    })
}
