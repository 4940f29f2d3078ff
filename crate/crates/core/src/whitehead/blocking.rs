use std::fmt;

use serde::Serialize;

use super::primitivity::enumerate_primitive_classes;
use crate::error::Result;
use crate::word::{cyclic_subword_occurs, power, CyclicWord, Word};

/// Outcome of a bounded search for a blocking exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockingReport {
    pub word: String,
    /// Least `n <= n_max` such that `g^n` lies in no primitive class of
    /// length `<= l_max`.
    pub witness: Option<usize>,
    /// The witness came from `|g^n| > l_max`, so no host was long enough.
    pub bound_limited: bool,
    pub n_max: usize,
    pub l_max: usize,
    pub hosts_searched: usize,
}

impl BlockingReport {
    pub fn evidence_label(&self) -> String {
        format!(
            "bounded evidence (n <= {}, primitive length <= {})",
            self.n_max, self.l_max
        )
    }
}

impl fmt::Display for BlockingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.witness {
            Some(n) if self.bound_limited => write!(
                f,
                "witness n = {n} at these bounds (vacuous: |g^{n}| exceeds l_max); {}",
                self.evidence_label()
            ),
            Some(n) => write!(f, "witness n = {n} at these bounds; {}", self.evidence_label()),
            None => write!(f, "inconclusive at these bounds; {}", self.evidence_label()),
        }
    }
}

/// A word occurs in a cyclically reduced primitive word `h` when it is a
/// subword of some cyclic permutation of `h` or of `h^-1` (classes are stored
/// up to inversion).
fn occurs_in_host(host: &CyclicWord, pattern: &Word, pattern_inverse: &Word) -> Result<bool> {
    if pattern.len() > host.len() {
        return Ok(false);
    }
    Ok(cyclic_subword_occurs(host, pattern)? || cyclic_subword_occurs(host, pattern_inverse)?)
}

pub fn blocking_witness(g: &CyclicWord, n_max: usize, l_max: usize) -> Result<BlockingReport> {
    let hosts = if l_max >= 1 && g.rank() >= 2 {
        enumerate_primitive_classes(g.rank(), l_max)?
    } else {
        Vec::new()
    };
    let mut report = BlockingReport {
        word: g.to_string(),
        witness: None,
        bound_limited: false,
        n_max,
        l_max,
        hosts_searched: hosts.len(),
    };
    for n in 1..=n_max {
        let pattern = power(g, n)?;
        if pattern.len() > l_max {
            report.witness = Some(n);
            report.bound_limited = true;
            break;
        }
        let inverse = pattern.inverse();
        let mut found = false;
        for h in &hosts {
            if occurs_in_host(h, &pattern, &inverse)? {
                found = true;
                break;
            }
        }
        if !found {
            report.witness = Some(n);
            break;
        }
    }
    Ok(report)
}
