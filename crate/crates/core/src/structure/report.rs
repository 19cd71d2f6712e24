use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Result;
use crate::exact::{format_scalar, Scalar};
use crate::raysystem::{is_simple_ray, RayDivisorSystem, RaySet, RayType};

use super::classify::classify_set;
use super::eset::{classify_eset, find_esets, EsetType};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentEntry {
    pub rays: Vec<String>,
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hub: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub ambiguous_hub: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EsetEntry {
    pub rays: Vec<String>,
    pub case: String,
    pub witness: Value,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct StructureReport {
    pub components: Vec<ComponentEntry>,
    pub esets: Vec<EsetEntry>,
    pub failures: Vec<String>,
    pub passes_shape_filter: bool,
}

impl StructureReport {
    /// Classifies the components of `set` and, when faces are listed, every
    /// E-set inside `set`. E-sets outside the classification hypotheses are
    /// reported as failures naming the unmet hypothesis.
    pub fn build<T: Scalar>(s: &RayDivisorSystem<T>, set: RaySet) -> Result<Self> {
        let mut out = StructureReport::default();
        let rep = classify_set(s, set)?;
        out.passes_shape_filter = rep.passes_shape_filter();
        for (rays, outcome) in &rep.components {
            match outcome {
                Ok(c) => out.components.push(ComponentEntry {
                    rays: s.ids(*rays),
                    kind: c.kind.to_string(),
                    hub: c.hub.map(|h| s.ray(h).id.clone()),
                    ambiguous_hub: c.ambiguous_hub,
                }),
                Err(f) => out.failures.push(format!("component {:?}: {}", s.ids(f.rays), f.reason)),
            }
        }
        if s.faces().is_none() {
            return Ok(out);
        }
        for l in find_esets(s, set)? {
            let ids = s.ids(l);
            if let Some(why) = hypothesis_gap(s, l)? {
                out.failures.push(format!("E-set {ids:?}: {why}"));
                continue;
            }
            match classify_eset(s, l)? {
                Ok(c) => {
                    let witness = match &c.kind {
                        EsetType::CyclicTriple | EsetType::Disjoint => json!(s.ids_ordered(&c.order)),
                        EsetType::PositiveCombination { m1, m2 } => json!([format_scalar(m1), format_scalar(m2)]),
                        EsetType::Witnessed { witness } => json!(s.ray(*witness).id),
                    };
                    out.esets.push(EsetEntry { rays: ids, case: c.kind.case().to_string(), witness });
                }
                Err(f) => out.failures.push(format!("E-set {ids:?}: {}", f.reason)),
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut t = String::new();
        for c in &self.components {
            t.push_str(&format!("component {} {}", c.kind, c.rays.join(",")));
            if let Some(h) = &c.hub {
                t.push_str(&format!(" hub={h}{}", if c.ambiguous_hub { " (ambiguous)" } else { "" }));
            }
            t.push('\n');
        }
        for e in &self.esets {
            t.push_str(&format!("eset ({}) {} witness={}\n", e.case, e.rays.join(","), e.witness));
        }
        for f in &self.failures {
            t.push_str(&format!("failure {f}\n"));
        }
        t
    }
}

fn hypothesis_gap<T: Scalar>(s: &RayDivisorSystem<T>, l: RaySet) -> Result<Option<String>> {
    for r in l.iter() {
        match s.kind(r) {
            RayType::Small => return Ok(Some(format!("ray {} is small", s.ray(r).id))),
            RayType::TypeII if !is_simple_ray(s, r)? => {
                return Ok(Some(format!("ray {} is type II but not simple", s.ray(r).id)))
            }
            _ => {}
        }
    }
    Ok(None)
}

impl<T: Scalar> RayDivisorSystem<T> {
    fn ids_ordered(&self, order: &[usize]) -> Vec<String> {
        order.iter().map(|&i| self.ray(i).id.clone()).collect()
    }
}
