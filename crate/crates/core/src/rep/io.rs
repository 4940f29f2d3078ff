use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{make_punctured_torus, make_sanov, make_schottky_pair, Representation, DEFAULT_SCHOTTKY_LENGTH};
use crate::error::{Error, Result};

type Entry = [f64; 2];
type Matrix = [[Entry; 2]; 2];

/// On-disk form: `{"rank": n, "label": "...", "generators": [M_1, ..., M_n]}`
/// with each `M_i` a row-major 2x2 matrix of `[re, im]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationFile {
    pub rank: usize,
    pub label: String,
    pub generators: Vec<Matrix>,
}

impl RepresentationFile {
    pub fn from_representation(rho: &Representation) -> Self {
        let pair = |z: Complex64| [z.re, z.im];
        RepresentationFile {
            rank: rho.rank(),
            label: rho.label().to_string(),
            generators: rho
                .generators()
                .iter()
                .map(|m| {
                    let [[a, b], [c, d]] = m.rows();
                    [[pair(a), pair(b)], [pair(c), pair(d)]]
                })
                .collect(),
        }
    }

    pub fn into_representation(self) -> Result<Representation> {
        if self.generators.len() != self.rank {
            return Err(Error::RepresentationFormat(format!(
                "rank {} but {} generator matrices",
                self.rank,
                self.generators.len()
            )));
        }
        let c = |e: Entry| Complex64::new(e[0], e[1]);
        let rows = self
            .generators
            .into_iter()
            .map(|[[a, b], [cc, d]]| [[c(a), c(b)], [c(cc), c(d)]])
            .collect();
        Representation::new(self.label, rows)
    }
}

impl Representation {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: RepresentationFile =
            serde_json::from_str(text).map_err(|e| Error::RepresentationFormat(e.to_string()))?;
        file.into_representation()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&RepresentationFile::from_representation(self))
            .expect("finite entries serialize");
        s.push('\n');
        s
    }
}

/// Resolve `builtin:schottky[:s]`, `builtin:sanov`, `builtin:ptorus`, or a
/// path to a representation file.
pub fn resolve_source(source: &str) -> Result<Representation> {
    if let Some(name) = source.strip_prefix("builtin:") {
        let (name, arg) = match name.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (name, None),
        };
        return match (name, arg) {
            ("schottky", None) => make_schottky_pair(DEFAULT_SCHOTTKY_LENGTH),
            ("schottky", Some(s)) => {
                let s: f64 = s
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("bad Schottky length {s:?}")))?;
                make_schottky_pair(s)
            }
            ("sanov", None) => Ok(make_sanov()),
            ("ptorus", None) => Ok(make_punctured_torus()),
            _ => Err(Error::InvalidParameter(format!(
                "unknown builtin representation {source:?}"
            ))),
        };
    }
    let text = std::fs::read_to_string(Path::new(source))
        .map_err(|e| Error::RepresentationFormat(format!("{source}: {e}")))?;
    Representation::from_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        for rho in [
            make_schottky_pair(DEFAULT_SCHOTTKY_LENGTH).unwrap(),
            make_sanov(),
            make_punctured_torus(),
        ] {
            let back = Representation::from_json(&rho.to_json()).unwrap();
            assert_eq!(back, rho);
        }
    }

    #[test]
    fn parser_normalizes_and_rejects() {
        let text = r#"{"rank": 1, "label": "dil", "generators": [[[[4,0],[0,0]],[[0,0],[1,0]]]]}"#;
        let rho = Representation::from_json(text).unwrap();
        assert!((rho.generators()[0].det() - 1.0).norm() < 1e-15);
        assert!((rho.generators()[0].rows()[0][0].re - 2.0).abs() < 1e-15);

        let singular = r#"{"rank": 1, "label": "s", "generators": [[[[1,0],[2,0]],[[2,0],[4,0]]]]}"#;
        assert!(matches!(Representation::from_json(singular), Err(Error::Singular(_))));
        let short = r#"{"rank": 2, "label": "s", "generators": [[[[1,0],[0,0]],[[0,0],[1,0]]]]}"#;
        assert!(matches!(
            Representation::from_json(short),
            Err(Error::RepresentationFormat(_))
        ));
        assert!(matches!(
            Representation::from_json("{"),
            Err(Error::RepresentationFormat(_))
        ));
    }

    #[test]
    fn builtins_resolve() {
        assert_eq!(resolve_source("builtin:sanov").unwrap(), make_sanov());
        assert_eq!(
            resolve_source("builtin:schottky:3").unwrap(),
            make_schottky_pair(3.0).unwrap()
        );
        assert!(resolve_source("builtin:nope").is_err());
        assert!(matches!(
            resolve_source("/nonexistent/rep.json"),
            Err(Error::RepresentationFormat(_))
        ));
    }
}
