use num_complex::Complex64;
use serde::Serialize;

use super::Representation;
use crate::error::{Error, Result};
use crate::h3::MoebiusMap;
use crate::word::Letter;

/// The point moved to `∞` before isometric circles are taken. Any fixed
/// point of the ordinary set would do; this one sits inside the standard
/// fundamental domain of the default Schottky example and is fixed by none
/// of the built-in generators.
pub const PING_PONG_BASE: Complex64 = Complex64::new(0.3, 1.1);

const DISJOINT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PingPong {
    /// The closed isometric discs are pairwise disjoint: the group is a
    /// classical Schottky group.
    Certified,
    /// The sufficient condition failed; this is not a refutation.
    Unknown,
}

/// `|c ζ + d| = 1` for the generator image (or its inverse) named by `letter`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IsometricCircle {
    pub letter: Letter,
    pub center: Complex64,
    pub radius: f64,
}

impl IsometricCircle {
    fn gap(&self, other: &IsometricCircle) -> f64 {
        (self.center - other.center).norm() - self.radius - other.radius
    }
}

fn base_change() -> MoebiusMap {
    let one = Complex64::new(1.0, 0.0);
    MoebiusMap::normalize([[PING_PONG_BASE, -one], [one, Complex64::new(0.0, 0.0)]]).expect("det 1")
}

/// Isometric circles of every generator image and inverse, after
/// conjugating so that [`PING_PONG_BASE`] sits at `∞`.
pub fn isometric_circles(rho: &Representation) -> Result<Vec<IsometricCircle>> {
    let g = base_change();
    let mut circles = Vec::with_capacity(2 * rho.rank());
    for (i, m) in rho.generators().iter().enumerate() {
        let conj = g.inverse() * *m * g;
        let [[a, _], [c, d]] = conj.rows();
        if c.norm() <= 1e-12 * conj.max_abs_entry().max(1.0) {
            return Err(Error::Normalization);
        }
        let radius = 1.0 / c.norm();
        circles.push(IsometricCircle {
            letter: Letter::generator(i),
            center: -d / c,
            radius,
        });
        circles.push(IsometricCircle {
            letter: Letter::generator(i).inverse(),
            center: a / c,
            radius,
        });
    }
    Ok(circles)
}

/// Smallest gap between distinct isometric discs (negative when two overlap).
pub fn min_disc_gap(circles: &[IsometricCircle]) -> f64 {
    let mut gap = f64::INFINITY;
    for (i, p) in circles.iter().enumerate() {
        for q in &circles[i + 1..] {
            gap = gap.min(p.gap(q));
        }
    }
    gap
}

pub fn ping_pong_certificate(rho: &Representation) -> Result<PingPong> {
    let circles = isometric_circles(rho)?;
    Ok(if min_disc_gap(&circles) > DISJOINT_TOL {
        PingPong::Certified
    } else {
        PingPong::Unknown
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{make_punctured_torus, make_sanov, make_schottky_pair, DEFAULT_SCHOTTKY_LENGTH};

    #[test]
    fn schottky_is_certified() {
        let rho = make_schottky_pair(DEFAULT_SCHOTTKY_LENGTH).unwrap();
        assert_eq!(ping_pong_certificate(&rho).unwrap(), PingPong::Certified);
        let circles = isometric_circles(&rho).unwrap();
        assert_eq!(circles.len(), 4);
        assert!(min_disc_gap(&circles) > 0.1);
    }

    #[test]
    fn parabolic_groups_are_not_certified() {
        assert_eq!(ping_pong_certificate(&make_sanov()).unwrap(), PingPong::Unknown);
        assert_eq!(
            ping_pong_certificate(&make_punctured_torus()).unwrap(),
            PingPong::Unknown
        );
    }

    #[test]
    fn rank_one_depends_on_trace() {
        let lox = MoebiusMap::from_real(3.0, 0.0, 0.0, 1.0 / 3.0).unwrap();
        let rho = Representation::from_maps("lox", vec![lox]).unwrap();
        assert_eq!(ping_pong_certificate(&rho).unwrap(), PingPong::Certified);
        let ell = MoebiusMap::from_real(0.5, -1.0, 0.75, 0.5).unwrap();
        let rho = Representation::from_maps("ell", vec![ell]).unwrap();
        assert_eq!(ping_pong_certificate(&rho).unwrap(), PingPong::Unknown);
    }

    #[test]
    fn fixing_the_base_point_is_an_error() {
        let g = base_change();
        let dilation = MoebiusMap::from_real(2.0, 0.0, 0.0, 0.5).unwrap();
        // g sends ∞ to PING_PONG_BASE, so this map fixes PING_PONG_BASE
        let rho = Representation::from_maps("fix", vec![g * dilation * g.inverse()]).unwrap();
        assert_eq!(ping_pong_certificate(&rho), Err(Error::Normalization));
    }
}
