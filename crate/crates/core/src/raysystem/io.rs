use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{format_scalar, parse_scalar, Scalar};
use crate::raysystem::{Ray, RayDivisorSystem, RaySet, RayType};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayEntry {
    pub id: String,
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisor: Option<String>,
}

/// On-disk system; rationals are `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemFile {
    pub rays: Vec<RayEntry>,
    pub divisors: Vec<String>,
    pub pairing: Vec<Vec<String>>,
    #[serde(default)]
    pub meets: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anticanonical: Option<Vec<String>>,
    #[serde(default)]
    pub fano_mode: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub normalized: bool,
}

fn kind_from(s: &str) -> Result<RayType> {
    match s {
        "I" => Ok(RayType::TypeI),
        "II" => Ok(RayType::TypeII),
        "small" => Ok(RayType::Small),
        other => Err(Error::Parse(format!("unknown ray type {other:?}; expected I, II or small"))),
    }
}

fn kind_name(k: RayType) -> &'static str {
    match k {
        RayType::TypeI => "I",
        RayType::TypeII => "II",
        RayType::Small => "small",
    }
}

impl SystemFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("system serializes")
    }

    pub fn build<T: Scalar>(&self) -> Result<RayDivisorSystem<T>> {
        let div_pos =
            |d: &str| self.divisors.iter().position(|x| x == d).ok_or_else(|| Error::UnknownId(format!("divisor {d}")));
        let rays = self
            .rays
            .iter()
            .map(|r| {
                Ok(Ray {
                    id: r.id.clone(),
                    kind: kind_from(&r.kind)?,
                    divisor: r.divisor.as_deref().map(div_pos).transpose()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let pairing = self
            .pairing
            .iter()
            .map(|row| row.iter().map(|v| parse_scalar(v)).collect::<Result<Vec<T>>>())
            .collect::<Result<Vec<_>>>()?;
        let meets = self.meets.iter().map(|[a, b]| Ok((div_pos(a)?, div_pos(b)?))).collect::<Result<Vec<_>>>()?;
        let mut s = RayDivisorSystem::new(rays, self.divisors.clone(), pairing, &meets)?
            .with_fano_mode(self.fano_mode)
            .with_normalized(self.normalized);
        if let Some(faces) = &self.faces {
            let sets = faces
                .iter()
                .map(|f| s.ray_set(&f.iter().map(String::as_str).collect::<Vec<_>>()))
                .collect::<Result<Vec<_>>>()?;
            s = s.with_faces(sets)?;
        }
        if let Some(a) = &self.anticanonical {
            s = s.with_anticanonical(a.iter().map(|v| parse_scalar(v)).collect::<Result<Vec<T>>>()?)?;
        }
        Ok(s)
    }
}

impl<T: Scalar> From<&RayDivisorSystem<T>> for SystemFile {
    fn from(s: &RayDivisorSystem<T>) -> Self {
        let divs = s.divisors();
        SystemFile {
            rays: s
                .rays()
                .iter()
                .map(|r| RayEntry {
                    id: r.id.clone(),
                    kind: kind_name(r.kind).into(),
                    divisor: r.divisor.map(|d| divs[d].clone()),
                })
                .collect(),
            divisors: divs.to_vec(),
            pairing: s.pairing().iter().map(|row| row.iter().map(format_scalar).collect()).collect(),
            meets: s.meets_pairs().into_iter().map(|(a, b)| [divs[a].clone(), divs[b].clone()]).collect(),
            faces: s.faces().map(|fs| fs.iter().map(|f: &RaySet| s.ids(*f)).collect()),
            anticanonical: s.anticanonical().map(|a| a.iter().map(format_scalar).collect()),
            fano_mode: s.fano_mode(),
            normalized: s.normalized(),
        }
    }
}
