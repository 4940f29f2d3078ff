//! Representations of `F_n` into `PSL(2, C)` and the quasi-geodesic
//! diagnostics of their orbit maps along primitive lines.

mod examples;
mod io;
mod metrics;
mod orbit;
mod pingpong;

pub use examples::{make_punctured_torus, make_sanov, make_schottky_pair, DEFAULT_SCHOTTKY_LENGTH};
pub use io::{resolve_source, RepresentationFile};
pub use metrics::{ps_metrics, ps_report, LengthTrend, PsEntry, PsMetrics, PsParams, PsReport, PsSummary};
pub use orbit::{orbit_path, OrbitPath};
pub use pingpong::{isometric_circles, min_disc_gap, ping_pong_certificate, IsometricCircle, PingPong, PING_PONG_BASE};

use crate::error::{Error, Result};
use crate::h3::{MoebiusMap, ProductAccumulator};
use crate::word::{Letter, Word};

#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    label: String,
    generators: Vec<MoebiusMap>,
    inverses: Vec<MoebiusMap>,
}

impl Representation {
    /// Images of `x_1, ..., x_n`; each is determinant-normalized.
    pub fn new(label: impl Into<String>, generators: Vec<[[num_complex::Complex64; 2]; 2]>) -> Result<Self> {
        let generators = generators
            .into_iter()
            .map(MoebiusMap::normalize)
            .collect::<Result<Vec<_>>>()?;
        Self::from_maps(label, generators)
    }

    pub fn from_maps(label: impl Into<String>, generators: Vec<MoebiusMap>) -> Result<Self> {
        if generators.is_empty() || generators.len() > crate::word::MAX_RANK {
            return Err(Error::BadRank {
                rank: generators.len(),
                min: 1,
            });
        }
        let inverses = generators.iter().map(MoebiusMap::inverse).collect();
        Ok(Representation {
            label: label.into(),
            generators,
            inverses,
        })
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn generators(&self) -> &[MoebiusMap] {
        &self.generators
    }

    pub fn image(&self, l: Letter) -> &MoebiusMap {
        if l.is_inverted() {
            &self.inverses[l.generator_index()]
        } else {
            &self.generators[l.generator_index()]
        }
    }

    /// `ρ(w)` as an ordered product with periodic renormalization.
    pub fn evaluate(&self, w: &Word) -> Result<MoebiusMap> {
        if w.rank() != self.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: w.rank(),
            });
        }
        let mut acc = ProductAccumulator::new();
        for &l in w.letters() {
            acc.push(self.image(l))?;
        }
        Ok(*acc.value())
    }

    /// `g ρ g^-1`.
    pub fn conjugate(&self, g: &MoebiusMap) -> Representation {
        let generators: Vec<MoebiusMap> = self.generators.iter().map(|m| *g * *m * g.inverse()).collect();
        let inverses = generators.iter().map(MoebiusMap::inverse).collect();
        Representation {
            label: self.label.clone(),
            generators,
            inverses,
        }
    }
}
