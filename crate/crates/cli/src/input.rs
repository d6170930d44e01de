//! Packing, similarity and direction documents.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use simpack::lattice::{Lattice, Mat2};
use simpack::packing::presets;
use simpack::similarity::{rational_display, Direction};
use simpack::{FieldElem, PointPacking, Ring, RingElem, Similarity};

use crate::CliError;

/// `{"ring":"eisenstein","basis":[["1","0"],["0","1"]],"shifts":[["0","0"],["2/3","1/3"]]}`
///
/// Each entry of `basis` is one generator, as coordinates over `{1, u}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PackingDoc {
    pub ring: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<[[String; 2]; 2]>,
    pub shifts: Vec<[String; 2]>,
}

/// `{"z":[a,b],"scale":"p/q","conj":false,"ring":"gaussian"}`
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimilarityDoc {
    pub z: [i64; 2],
    #[serde(default = "one")]
    pub scale: String,
    #[serde(default)]
    pub conj: bool,
    #[serde(default)]
    pub ring: Option<String>,
}

/// `{"z":[a,b],"conj":false,"ring":"eisenstein"}`
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DirectionDoc {
    pub z: [i64; 2],
    #[serde(default)]
    pub conj: bool,
    #[serde(default)]
    pub ring: Option<String>,
}

fn one() -> String {
    "1".to_string()
}

pub fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    let s = s.trim();
    let bad = || CliError::Input(format!("not an exact rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(CliError::Input(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

pub fn parse_ring(s: &str) -> Result<Ring, CliError> {
    Ring::parse(s).ok_or_else(|| CliError::Input(format!("unknown ring {s:?} (gaussian or eisenstein)")))
}

fn pair(p: &[String; 2]) -> Result<[BigRational; 2], CliError> {
    Ok([parse_rational(&p[0])?, parse_rational(&p[1])?])
}

impl PackingDoc {
    pub fn to_packing(&self) -> Result<PointPacking, CliError> {
        let ring = parse_ring(&self.ring)?;
        let lattice = match &self.basis {
            None => Lattice::ring_lattice(ring),
            Some([g0, g1]) => Lattice::new(ring, &Mat2::from_cols(pair(g0)?, pair(g1)?))?,
        };
        let shifts = self
            .shifts
            .iter()
            .map(|p| Ok(FieldElem::from_coords(ring, pair(p)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(PointPacking::new(lattice, shifts)?)
    }

    /// The document describing `packing` (labels, i.e. shifts as supplied).
    pub fn from_packing(packing: &PointPacking) -> PackingDoc {
        let show = |v: [BigRational; 2]| [rational_display(&v[0]), rational_display(&v[1])];
        let b = packing.lattice().basis();
        PackingDoc {
            ring: packing.ring().name().to_string(),
            basis: (!packing.lattice().is_ring_lattice()).then(|| [show(b.col(0)), show(b.col(1))]),
            shifts: packing.labels().iter().map(|x| show(x.coords())).collect(),
        }
    }
}

fn ring_or(doc: &Option<String>, default: Ring) -> Result<Ring, CliError> {
    let ring = match doc {
        Some(r) => parse_ring(r)?,
        None => default,
    };
    if ring != default {
        return Err(CliError::Input(format!("document is over {ring} but the packing is over {default}")));
    }
    Ok(ring)
}

impl SimilarityDoc {
    pub fn to_similarity(&self, default: Ring) -> Result<Similarity, CliError> {
        let ring = ring_or(&self.ring, default)?;
        let scale = parse_rational(&self.scale)?;
        let z = RingElem::from_i64(ring, self.z[0], self.z[1]).to_field();
        Ok(Similarity::new(z.scale(&scale), self.conj)?)
    }
}

impl DirectionDoc {
    pub fn to_direction(&self, default: Ring) -> Result<Direction, CliError> {
        let ring = ring_or(&self.ring, default)?;
        Ok(Direction::new(RingElem::from_i64(ring, self.z[0], self.z[1]), self.conj)?)
    }
}

/// Inline JSON (starting with `{`) or a path to a JSON file.
pub fn read_json<T: for<'de> Deserialize<'de>>(arg: &str) -> Result<T, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(Path::new(arg)).map_err(|e| CliError::Input(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("malformed document: {e}")))
}

/// A packing from `--preset NAME` or `--packing FILE`.
pub fn load_packing(preset: Option<&str>, file: Option<&str>) -> Result<PointPacking, CliError> {
    match (preset, file) {
        (Some(name), None) => presets::by_name(name).ok_or_else(|| {
            CliError::Input(format!("unknown preset {name:?}; one of {}", presets::NAMES.join(", ")))
        }),
        (None, Some(path)) => read_json::<PackingDoc>(path)?.to_packing(),
        _ => Err(CliError::Input("give exactly one of --preset or --packing".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("2/4").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("-3").unwrap(), BigRational::from_integer((-3).into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn hexagonal_document() {
        let doc: PackingDoc =
            read_json(r#"{"ring":"eisenstein","basis":[["1","0"],["0","1"]],"shifts":[["0","0"],["2/3","1/3"]]}"#).unwrap();
        assert_eq!(doc.to_packing().unwrap(), presets::hexagonal());
        let doc = PackingDoc::from_packing(&presets::ex34());
        assert_eq!(doc.to_packing().unwrap(), presets::ex34());
    }

    #[test]
    fn bad_documents() {
        let congruent = r#"{"ring":"gaussian","shifts":[["0","0"],["1","0"]]}"#;
        assert!(read_json::<PackingDoc>(congruent).unwrap().to_packing().is_err());
        let zero: SimilarityDoc = read_json(r#"{"z":[1,1],"scale":"0/1"}"#).unwrap();
        assert!(zero.to_similarity(Ring::Gaussian).is_err());
        let other: SimilarityDoc = read_json(r#"{"z":[1,1],"ring":"eisenstein"}"#).unwrap();
        assert!(other.to_similarity(Ring::Gaussian).is_err());
        assert!(read_json::<SimilarityDoc>(r#"{"z":[1]}"#).is_err());
    }
}
