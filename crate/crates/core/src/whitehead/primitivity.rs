use std::collections::HashSet;

use rayon::prelude::*;

use super::automorphism::{all_whitehead_automorphisms, nielsen_permutations, WhiteheadAutomorphism};
use crate::error::{Error, Result};
use crate::word::{canonical_class, CyclicWord, Letter, MAX_RANK};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitivityVerdict {
    pub is_primitive: bool,
    pub minimal_length: usize,
    /// Each shortening move with the class it produced.
    pub reduction_trace: Vec<(WhiteheadAutomorphism, CyclicWord)>,
}

impl PrimitivityVerdict {
    pub fn minimal_word<'a>(&'a self, start: &'a CyclicWord) -> &'a CyclicWord {
        self.reduction_trace.last().map(|(_, c)| c).unwrap_or(start)
    }
}

/// Whitehead descent: apply the first type II automorphism (in the fixed
/// enumeration order) that strictly shortens the cyclic word, until none
/// does. By peak reduction the end point has minimal length in its
/// `Aut(F_n)` orbit, so the word is primitive iff that length is 1.
pub fn minimize(c: &CyclicWord) -> PrimitivityVerdict {
    let automorphisms = if c.rank() >= 2 {
        all_whitehead_automorphisms(c.rank()).unwrap_or_default()
    } else {
        Vec::new()
    };
    minimize_with(c, &automorphisms)
}

pub(crate) fn minimize_with(c: &CyclicWord, automorphisms: &[WhiteheadAutomorphism]) -> PrimitivityVerdict {
    let mut current = c.clone();
    let mut trace = Vec::new();
    'descent: while current.len() > 1 {
        for phi in automorphisms {
            let image = phi.apply_cyclic(&current).expect("rank checked");
            if image.len() < current.len() {
                trace.push((phi.clone(), image.clone()));
                current = image;
                continue 'descent;
            }
        }
        break;
    }
    PrimitivityVerdict {
        is_primitive: current.len() == 1,
        minimal_length: current.len(),
        reduction_trace: trace,
    }
}

fn check_rank(rank: usize) -> Result<()> {
    if !(2..=MAX_RANK).contains(&rank) {
        return Err(Error::BadRank { rank, min: 2 });
    }
    Ok(())
}

/// Every cyclically reduced word of exactly `length` letters that is the
/// canonical representative of its class.
fn canonical_classes_of_length(rank: usize, length: usize, include_inversion: bool) -> Vec<CyclicWord> {
    let letters: Vec<Letter> = Letter::all(rank).collect();
    let mut out = Vec::new();
    let mut stack: Vec<Letter> = Vec::with_capacity(length);

    fn extend(
        letters: &[Letter],
        stack: &mut Vec<Letter>,
        length: usize,
        rank: usize,
        include_inversion: bool,
        out: &mut Vec<CyclicWord>,
    ) {
        if stack.len() == length {
            if stack[0] == stack[length - 1].inverse() && length > 1 {
                return;
            }
            let c = CyclicWord::new(stack, rank).expect("cyclically reduced by construction");
            // keep only the canonical spelling so each class appears once
            if c.letters() == stack.as_slice() && canonical_class(&c, include_inversion) == c {
                out.push(c);
            }
            return;
        }
        for &l in letters {
            if let Some(&last) = stack.last() {
                if l == last.inverse() {
                    continue;
                }
            }
            // the least rotation cannot start above its first letter
            if let Some(&first) = stack.first() {
                if l < first {
                    continue;
                }
            }
            stack.push(l);
            extend(letters, stack, length, rank, include_inversion, out);
            stack.pop();
        }
    }

    extend(&letters, &mut stack, length, rank, include_inversion, &mut out);
    out
}

/// All conjugacy classes of cyclic length `1..=max_length`, in shortlex order.
pub fn enumerate_classes(rank: usize, max_length: usize, include_inversion: bool) -> Result<Vec<CyclicWord>> {
    check_rank(rank)?;
    if max_length == 0 {
        return Err(Error::InvalidParameter("max_length must be at least 1".into()));
    }
    let mut all = Vec::new();
    for length in 1..=max_length {
        let mut layer = canonical_classes_of_length(rank, length, include_inversion);
        layer.sort();
        all.extend(layer);
    }
    Ok(all)
}

/// Primitive conjugacy classes up to `max_length`, deduplicated under
/// rotation and inversion, in shortlex order.
pub fn enumerate_primitive_classes(rank: usize, max_length: usize) -> Result<Vec<CyclicWord>> {
    enumerate_primitive_classes_with(rank, max_length, true)
}

pub fn enumerate_primitive_classes_with(
    rank: usize,
    max_length: usize,
    include_inversion: bool,
) -> Result<Vec<CyclicWord>> {
    let candidates = enumerate_classes(rank, max_length, include_inversion)?;
    let automorphisms = all_whitehead_automorphisms(rank)?;
    let flags: Vec<bool> = candidates
        .par_iter()
        .map(|c| minimize_with(c, &automorphisms).is_primitive)
        .collect();
    Ok(candidates
        .into_iter()
        .zip(flags)
        .filter_map(|(c, p)| p.then_some(c))
        .collect())
}

/// The set of primitive classes up to a length bound, grown outward from
/// `x1` under every type II and signed-permutation automorphism while
/// discarding images longer than the bound.
///
/// Independent of [`minimize`]: it only ever applies moves to known
/// primitives. Completeness below the bound is the peak-reduction theorem.
#[derive(Clone, Debug)]
pub struct PrimitiveClosure {
    rank: usize,
    max_length: usize,
    members: HashSet<CyclicWord>,
    layers: usize,
}

impl PrimitiveClosure {
    pub fn build(rank: usize, max_length: usize, depth: usize) -> Result<Self> {
        if !(1..=MAX_RANK).contains(&rank) {
            return Err(Error::BadRank { rank, min: 1 });
        }
        let mut moves = nielsen_permutations(rank);
        if rank >= 2 {
            moves.extend(all_whitehead_automorphisms(rank)?);
        }
        let seed = CyclicWord::new(&[Letter::generator(0)], rank)?;
        let mut members = HashSet::from([seed.clone()]);
        let mut frontier = vec![seed];
        let mut layers = 0;
        while !frontier.is_empty() {
            if layers == depth {
                return Err(Error::DepthExhausted(depth));
            }
            layers += 1;
            let mut next = Vec::new();
            for c in &frontier {
                for phi in &moves {
                    let image = canonical_class(&phi.apply_cyclic(c)?, true);
                    if image.len() <= max_length && members.insert(image.clone()) {
                        next.push(image);
                    }
                }
            }
            frontier = next;
        }
        Ok(PrimitiveClosure {
            rank,
            max_length,
            members,
            layers,
        })
    }

    pub fn contains(&self, c: &CyclicWord) -> Result<bool> {
        if c.rank() != self.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: c.rank(),
            });
        }
        if c.len() > self.max_length {
            return Err(Error::InvalidParameter(format!(
                "class of length {} exceeds closure bound {}",
                c.len(),
                self.max_length
            )));
        }
        Ok(self.members.contains(&canonical_class(c, true)))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Number of BFS layers needed to stabilize.
    pub fn layers(&self) -> usize {
        self.layers
    }
}

/// Brute-force primitivity check; see [`PrimitiveClosure`].
pub fn primitivity_oracle(c: &CyclicWord, depth: usize) -> Result<bool> {
    PrimitiveClosure::build(c.rank(), c.len(), depth)?.contains(c)
}
