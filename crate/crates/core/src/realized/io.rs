use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{format_scalar, parse_scalar, RVector, Scalar, TrilinearForm};
use crate::raysystem::SystemFile;

use super::model::RealizedModel;

/// System JSON extended with vectors; the form is a list of
/// `[i, j, k, "value"]` entries on sorted index triples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizedFile {
    #[serde(flatten)]
    pub system: SystemFile,
    pub rho: usize,
    pub ray_vectors: BTreeMap<String, Vec<String>>,
    pub divisor_vectors: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intersection_form: Option<Vec<(usize, usize, usize, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anticanonical_vector: Option<Vec<String>>,
}

fn parse_vec<T: Scalar>(v: &[String]) -> Result<RVector<T>> {
    Ok(RVector::new(v.iter().map(|x| parse_scalar(x)).collect::<Result<Vec<T>>>()?))
}

fn show_vec<T: Scalar>(v: &RVector<T>) -> Vec<String> {
    v.entries().iter().map(format_scalar).collect()
}

impl RealizedFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }

    /// Builds and validates the model.
    pub fn build<T: Scalar>(&self) -> Result<RealizedModel<T>> {
        let m = self.build_unchecked()?;
        m.check()?;
        Ok(m)
    }

    /// Builds the model without comparing vectors against the pairing.
    pub fn build_unchecked<T: Scalar>(&self) -> Result<RealizedModel<T>> {
        let base = self.system.build::<T>()?;
        let lookup = |map: &BTreeMap<String, Vec<String>>, id: &str| {
            map.get(id).ok_or_else(|| Error::Missing(format!("vector for {id}"))).and_then(|v| parse_vec::<T>(v))
        };
        let rays = base.rays().iter().map(|r| lookup(&self.ray_vectors, &r.id)).collect::<Result<Vec<_>>>()?;
        let divs = base.divisors().iter().map(|d| lookup(&self.divisor_vectors, d)).collect::<Result<Vec<_>>>()?;
        let mut m = RealizedModel::from_parts(base, self.rho, rays, divs)?;
        if let Some(entries) = &self.intersection_form {
            let mut form = TrilinearForm::zero(self.rho);
            for (i, j, k, v) in entries {
                form.set(*i, *j, *k, parse_scalar(v)?)?;
            }
            m = m.with_form(form)?;
        }
        if let Some(k) = &self.anticanonical_vector {
            m = m.with_anticanonical(parse_vec(k)?)?;
        }
        Ok(m)
    }
}

impl<T: Scalar> From<&RealizedModel<T>> for RealizedFile {
    fn from(m: &RealizedModel<T>) -> Self {
        let s = m.base();
        RealizedFile {
            system: SystemFile::from(s),
            rho: m.rho(),
            ray_vectors: s.rays().iter().enumerate().map(|(i, r)| (r.id.clone(), show_vec(m.ray_vector(i)))).collect(),
            divisor_vectors: s
                .divisors()
                .iter()
                .enumerate()
                .map(|(i, d)| (d.clone(), show_vec(m.divisor_vector(i))))
                .collect(),
            intersection_form: m
                .form()
                .map(|f| f.coefficients().map(|(&(i, j, k), v)| (i, j, k, format_scalar(v))).collect()),
            anticanonical_vector: m.anticanonical().map(show_vec),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    const MODEL: &str = r#"{
        "rays": [{"id": "R1", "type": "II", "divisor": "D1"}],
        "divisors": ["D1"],
        "pairing": [["-1"]],
        "meets": [],
        "fano_mode": false,
        "rho": 2,
        "ray_vectors": {"R1": ["1", "0"]},
        "divisor_vectors": {"D1": ["-1", "1/2"]},
        "intersection_form": [[0, 0, 1, "1"]],
        "anticanonical_vector": ["1", "0"]
    }"#;

    #[test]
    fn round_trip() {
        let f = RealizedFile::from_json(MODEL).unwrap();
        let m: RealizedModel<Rational> = f.build().unwrap();
        assert_eq!(m.rho(), 2);
        let back = RealizedFile::from(&m);
        assert_eq!(RealizedFile::from_json(&back.to_json()).unwrap(), back);
        assert_eq!(back.build::<Rational>().unwrap(), m);
    }

    #[test]
    fn mismatched_vectors_fail() {
        let bad = MODEL.replace(r#""R1": ["1", "0"]"#, r#""R1": ["2", "0"]"#);
        let f = RealizedFile::from_json(&bad).unwrap();
        assert!(matches!(f.build::<Rational>(), Err(Error::Inconsistent(_))));
    }
}
