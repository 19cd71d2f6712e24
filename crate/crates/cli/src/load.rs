use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use mori_diagram::bounds::DiagramFile;
use mori_diagram::polytope::{CombinatorialPolytope, PolytopeFile};
use mori_diagram::raysystem::SystemFile;
use mori_diagram::realized::{RealizedFile, RealizedModel};
use mori_diagram::{Rational, System};
use serde_json::Value;

/// A parsed input file, by shape.
pub enum Instance {
    System(System),
    Realized(RealizedModel<Rational>),
    Polytope(CombinatorialPolytope),
    Diagram(DiagramFile),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::System(_) => "system",
            Instance::Realized(_) => "realized",
            Instance::Polytope(_) => "polytope",
            Instance::Diagram(_) => "diagram",
        }
    }

    /// The ray system carried by the instance, if any.
    pub fn system(&self) -> Result<System> {
        match self {
            Instance::System(s) => Ok(s.clone()),
            Instance::Realized(m) => Ok(m.base().clone()),
            Instance::Diagram(d) => Ok(d.system.build()?),
            Instance::Polytope(_) => bail!("a polytope file carries no ray system"),
        }
    }
}

/// Parses `text`, telling the file kinds apart by their keys.
pub fn parse(text: &str) -> Result<Instance> {
    let value: Value = serde_json::from_str(text).context("invalid JSON")?;
    let has = |k: &str| value.get(k).is_some();
    Ok(if has("facet_rays") {
        Instance::Diagram(DiagramFile::from_json(text)?)
    } else if has("ray_vectors") {
        Instance::Realized(RealizedFile::from_json(text)?.build_unchecked()?)
    } else if has("facets") && has("dim") {
        Instance::Polytope(PolytopeFile::from_json(text)?.build()?)
    } else if has("rays") {
        Instance::System(SystemFile::from_json(text)?.build()?)
    } else {
        bail!("unrecognized instance: expected a system, realized model, polytope or diagram file")
    })
}

pub fn load(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse(&text).with_context(|| format!("in {}", path.display()))
}

/// Files named on the command line, with directories replaced by their
/// `*.json` entries in name order.
pub fn expand(paths: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut entries: Vec<PathBuf> = fs::read_dir(p)
                .with_context(|| format!("cannot list {}", p.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|e| e.extension().is_some_and(|x| x == "json"))
                .collect();
            entries.sort();
            out.extend(entries);
        } else {
            out.push(p.clone());
        }
    }
    if out.is_empty() {
        bail!("no input files");
    }
    Ok(out)
}
