//! Scaling-factor tables: for each congruence class of `z`, the residue
//! classes of `Scal(L, R)` and the component correspondence of each.

use num_integer::Integer;
use serde::Serialize;

use simpack::packing::{presets, scal_set_packing};
use simpack::similarity::Direction;
use simpack::{PointPacking, Ring, RingElem};

use crate::CliError;

pub const NAMES: [&str; 5] = ["t1", "t2", "t3", "t4", "t5"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub table: String,
    pub class: String,
    pub z: String,
    pub scal: String,
    pub tau: String,
}

pub struct TableSpec {
    pub name: &'static str,
    pub packing: PointPacking,
    /// Reflections `R·T_r` rather than rotations.
    pub conjugate: bool,
}

impl TableSpec {
    pub fn by_name(name: &str) -> Result<TableSpec, CliError> {
        let (name, packing, conjugate) = match name {
            "t1" => ("t1", presets::rect12(), false),
            "t2" => ("t2", presets::hexagonal(), false),
            "t3" => ("t3", presets::hexagonal(), true),
            "t4" => ("t4", presets::hexagonal_shifted(), false),
            "t5" => ("t5", presets::hexagonal_shifted(), true),
            _ => return Err(CliError::Input(format!("unknown table {name:?}; one of {}", NAMES.join(", ")))),
        };
        Ok(TableSpec { name, packing, conjugate })
    }

    pub fn ring(&self) -> Ring {
        self.packing.ring()
    }

    /// The row label of the class containing `z`.
    pub fn class_of(&self, z: &RingElem) -> String {
        let a: i64 = z.a().try_into().expect("small coordinates");
        let b: i64 = z.b().try_into().expect("small coordinates");
        match self.ring() {
            Ring::Gaussian => match (a.mod_floor(&2), b.mod_floor(&2)) {
                (1, 0) => "(a,b)≡(1,0) (mod 2)".to_string(),
                _ => "(a,b)≡(0,1),(1,1) (mod 2)".to_string(),
            },
            Ring::Eisenstein => format!("a+b≡{} (mod 3)", (a + b).mod_floor(&3)),
        }
    }

    /// Class labels in display order.
    pub fn classes(&self) -> Vec<String> {
        match self.ring() {
            Ring::Gaussian => vec!["(a,b)≡(1,0) (mod 2)".into(), "(a,b)≡(0,1),(1,1) (mod 2)".into()],
            Ring::Eisenstein => (1..=3).map(|k| format!("a+b≡{} (mod 3)", k % 3)).collect(),
        }
    }

    /// The first `n` primitive `z` with non-negative coordinates in each class,
    /// by norm.
    pub fn default_samples(&self, n: usize) -> Vec<RingElem> {
        let mut cands: Vec<RingElem> = (0i64..=12)
            .flat_map(|a| (0i64..=12).map(move |b| (a, b)))
            .map(|(a, b)| RingElem::from_i64(self.ring(), a, b))
            .filter(|z| !z.is_zero() && z.is_primitive())
            .collect();
        cands.sort_by(|x, y| (x.norm(), x.b(), x.a()).cmp(&(y.norm(), y.b(), y.a())));
        self.classes()
            .iter()
            .flat_map(|c| cands.iter().filter(|z| &self.class_of(z) == c).take(n).cloned().collect::<Vec<_>>())
            .collect()
    }

    pub fn rows_for(&self, z: &RingElem) -> Result<Vec<Row>, CliError> {
        let d = Direction::new(z.clone(), self.conjugate)?;
        let set = scal_set_packing(&self.packing, &d)?;
        let row = |scal: String, tau: String| Row {
            table: self.name.to_string(),
            class: self.class_of(&d.z),
            z: d.z.to_string(),
            scal,
            tau,
        };
        if set.is_empty() {
            return Ok(vec![row("∅".into(), String::new())]);
        }
        Ok(set
            .classes
            .iter()
            .flat_map(|c| {
                let tau = self.packing.tau_display(&c.tau);
                c.display_with("den").into_iter().map(move |s| (s, tau.clone()))
            })
            .map(|(s, t)| row(s, t))
            .collect())
    }

    pub fn rows(&self, samples: &[RingElem]) -> Result<Vec<Row>, CliError> {
        let mut out = Vec::new();
        for z in samples {
            out.extend(self.rows_for(z)?);
        }
        Ok(out)
    }
}

pub fn to_csv(rows: &[Row]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Input(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Input(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hexagonal_row() {
        let t = TableSpec::by_name("t2").unwrap();
        let rows = t.rows_for(&RingElem::from_i64(Ring::Eisenstein, 1, 1)).unwrap();
        let got: Vec<(&str, &str)> = rows.iter().map(|r| (r.scal.as_str(), r.tau.as_str())).collect();
        assert_eq!(
            got,
            [
                ("den·3Z", "{(0,0),((2+ω)/3,0)}"),
                ("den·(2+3Z)", "{(0,0),((2+ω)/3,(2+ω)/3)}"),
            ]
        );
        assert_eq!(rows[0].class, "a+b≡2 (mod 3)");
    }

    #[test]
    fn samples_cover_classes() {
        let t = TableSpec::by_name("t1").unwrap();
        let zs = t.default_samples(2);
        assert_eq!(zs.len(), 4);
        assert_eq!(zs[0], RingElem::from_i64(Ring::Gaussian, 1, 0));
        assert!(TableSpec::by_name("t9").is_err());
    }

    #[test]
    fn csv_quotes_commas() {
        let t = TableSpec::by_name("t1").unwrap();
        let csv = to_csv(&t.rows_for(&RingElem::from_i64(Ring::Gaussian, 1, 1)).unwrap()).unwrap();
        assert_eq!(
            csv,
            "table,class,z,scal,tau\nt1,\"(a,b)≡(0,1),(1,1) (mod 2)\",1+i,den·2Z,\"{(0,0),(1/2,0)}\"\n"
        );
    }
}
