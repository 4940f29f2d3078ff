use crate::error::{Error, Result};
use crate::h3::MoebiusMap;

use super::Representation;

/// Translation length `2 ln 4` used by the default Schottky example.
pub const DEFAULT_SCHOTTKY_LENGTH: f64 = 4.0 * std::f64::consts::LN_2;

/// Two loxodromics of translation length `s` with axes `0–∞` and `−1–+1`.
pub fn make_schottky_pair(s: f64) -> Result<Representation> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "Schottky translation length must be positive, got {s}"
        )));
    }
    let h = s / 2.0;
    let x1 = MoebiusMap::from_real(h.exp(), 0.0, 0.0, (-h).exp())?;
    let x2 = MoebiusMap::from_real(h.cosh(), h.sinh(), h.sinh(), h.cosh())?;
    Representation::from_maps(format!("schottky(s={s})"), vec![x1, x2])
}

/// The level-2 congruence pair: a free discrete group whose generators are
/// parabolic.
pub fn make_sanov() -> Representation {
    let x1 = MoebiusMap::from_real(1.0, 2.0, 0.0, 1.0).expect("unimodular");
    let x2 = MoebiusMap::from_real(1.0, 0.0, 2.0, 1.0).expect("unimodular");
    Representation::from_maps("sanov", vec![x1, x2]).expect("rank 2")
}

/// A Fuchsian once-punctured torus group: the commutator is parabolic.
pub fn make_punctured_torus() -> Representation {
    let x1 = MoebiusMap::from_real(1.0, 1.0, 1.0, 2.0).expect("unimodular");
    let x2 = MoebiusMap::from_real(1.0, -1.0, -1.0, 2.0).expect("unimodular");
    Representation::from_maps("punctured-torus", vec![x1, x2]).expect("rank 2")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::h3::{classify, IsometryClass};
    use crate::word::Word;

    #[test]
    fn schottky_traces() {
        let rho = make_schottky_pair(DEFAULT_SCHOTTKY_LENGTH).unwrap();
        for m in rho.generators() {
            // e^{ln 4} + e^{-ln 4} = 2 cosh(ln 4) = 4.25
            assert!((m.trace().re - 4.25).abs() < 1e-12);
            assert_eq!(classify(m), IsometryClass::Loxodromic);
        }
        assert!(make_schottky_pair(0.0).is_err());
        assert!(make_schottky_pair(-1.0).is_err());
    }

    #[test]
    fn sanov_classes() {
        let rho = make_sanov();
        assert_eq!(classify(&rho.generators()[0]), IsometryClass::Parabolic);
        assert_eq!(classify(&rho.generators()[1]), IsometryClass::Parabolic);
        // [[1,2],[0,1]] [[1,0],[2,1]] = [[5,2],[2,1]]
        let ab = rho.evaluate(&Word::parse("ab", 2).unwrap()).unwrap();
        assert!((ab.trace().re - 6.0).abs() < 1e-12);
        assert_eq!(classify(&ab), IsometryClass::Loxodromic);
    }

    #[test]
    fn punctured_torus_commutator_is_parabolic() {
        let rho = make_punctured_torus();
        assert!((rho.generators()[0].trace().re - 3.0).abs() < 1e-15);
        // trace identity: 9 + 9 + 9 - 27 - 2 = -2
        let k = rho.evaluate(&Word::parse("abAB", 2).unwrap()).unwrap();
        assert!((k.trace().norm() - 2.0).abs() < 1e-9);
        assert_eq!(classify(&k), IsometryClass::Parabolic);
    }
}
