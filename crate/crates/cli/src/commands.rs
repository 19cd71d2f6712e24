use std::fmt::Write as _;

use anyhow::{bail, ensure, Context, Result};
use mori_diagram::bounds::{diagram_pipeline, AngleReplay, ConstantsMode, DiagramInput, DiagramReplay, WeightRule};
use mori_diagram::exact::{format_scalar, parse_scalar};
use mori_diagram::generate::{generate_system, realized_instance, standard_fixtures, RandomParams, SystemFamily};
use mori_diagram::polytope::{
    a02_bound, average_faces, cube, cyclic_dual, product, simplex, CombinatorialPolytope, PolytopeFile,
};
use mori_diagram::raysystem::{SystemFile, Violation};
use mori_diagram::realized::RealizedFile;
use mori_diagram::structure::{ComponentEntry, EsetEntry, StructureReport};
use mori_diagram::{Rational, System};
use serde_json::{json, Value};

use crate::load::Instance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Clean = 0,
    Violation = 1,
}

/// A finished command: the text rendering, the JSON rendering and the exit status.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub status: Status,
}

struct Finding {
    kind: String,
    rays: Vec<String>,
    divisors: Vec<String>,
    message: String,
}

impl Finding {
    fn line(&self) -> String {
        let mut line = format!("violation {}: {}", self.kind, self.message);
        if !self.rays.is_empty() {
            let _ = write!(line, " [rays {}]", self.rays.join(","));
        }
        if !self.divisors.is_empty() {
            let _ = write!(line, " [divisors {}]", self.divisors.join(","));
        }
        line
    }

    fn json(&self) -> Value {
        json!({"kind": self.kind, "rays": self.rays, "divisors": self.divisors, "message": self.message})
    }
}

impl From<&Violation> for Finding {
    fn from(v: &Violation) -> Self {
        Finding {
            kind: v.kind.name().into(),
            rays: v.rays.clone(),
            divisors: v.divisors.clone(),
            message: v.message.clone(),
        }
    }
}

pub fn check(inst: &Instance) -> Result<Outcome> {
    let mut found: Vec<Finding> = Vec::new();
    let mut notes: Vec<String> = Vec::new();
    match inst {
        Instance::System(s) => found.extend(s.validate().iter().map(Finding::from)),
        Instance::Realized(m) => {
            found.extend(m.base().validate().iter().map(Finding::from));
            for msg in m.validate() {
                found.push(Finding { kind: "vector-mismatch".into(), rays: vec![], divisors: vec![], message: msg });
            }
        }
        Instance::Polytope(p) => {
            if !p.is_simple() {
                notes.push("polytope is not simple".into());
            }
        }
        Instance::Diagram(d) => {
            let (s, p, facet_rays, perp) = d.build::<Rational>()?;
            found.extend(s.validate().iter().map(Finding::from));
            if !p.is_simple() {
                found.push(Finding {
                    kind: "non-simple-polytope".into(),
                    rays: vec![],
                    divisors: vec![],
                    message: "the cross-section polytope is not simple".into(),
                });
            }
            let input = DiagramInput { system: &s, polytope: &p, facet_rays, perp, model: None };
            if let Err(e) = input.check_correspondence() {
                found.push(Finding {
                    kind: "correspondence".into(),
                    rays: vec![],
                    divisors: vec![],
                    message: e.to_string(),
                });
            }
        }
    }
    let mut text = String::new();
    for f in &found {
        let _ = writeln!(text, "{}", f.line());
    }
    for n in &notes {
        let _ = writeln!(text, "note {n}");
    }
    if found.is_empty() {
        let _ = writeln!(text, "clean ({})", inst.kind());
    }
    let json = json!({
        "kind": inst.kind(),
        "clean": found.is_empty(),
        "violations": found.iter().map(Finding::json).collect::<Vec<_>>(),
        "notes": notes,
    });
    Ok(Outcome { text, json, status: if found.is_empty() { Status::Clean } else { Status::Violation } })
}

/// Refuses invalid systems with the violation list.
fn require_valid(s: &System) -> Option<Outcome> {
    let found: Vec<Finding> = s.validate().iter().map(Finding::from).collect();
    if found.is_empty() {
        return None;
    }
    let text: String = found.iter().map(|f| f.line() + "\n").collect();
    Some(Outcome {
        text: format!("invalid instance\n{text}"),
        json: json!({"clean": false, "violations": found.iter().map(Finding::json).collect::<Vec<_>>()}),
        status: Status::Violation,
    })
}

fn component_line(c: &ComponentEntry) -> String {
    let mut t = format!("  component {} {{{}}}", c.kind, c.rays.join(","));
    if let Some(h) = &c.hub {
        let _ = write!(t, " hub {h}{}", if c.ambiguous_hub { " (ambiguous)" } else { "" });
    }
    t
}

fn eset_line(e: &EsetEntry) -> String {
    format!("  E-set {{{}}} case ({}) witness {}", e.rays.join(","), e.case, e.witness)
}

/// E-sets of the whole system and the ones that could not be classified.
fn eset_section(s: &System) -> Result<(Vec<EsetEntry>, Vec<String>)> {
    if s.faces().is_none() {
        return Ok((vec![], vec![]));
    }
    let all = StructureReport::build(s, s.all_rays())?;
    let failures = all.failures.into_iter().filter(|f| f.starts_with("E-set")).collect();
    Ok((all.esets, failures))
}

pub fn classify(inst: &Instance) -> Result<Outcome> {
    let s = inst.system()?;
    if let Some(bad) = require_valid(&s) {
        return Ok(bad);
    }
    let sets = match s.faces() {
        Some(_) => s.maximal_faces()?,
        None if s.num_rays() == 0 => vec![],
        None => vec![s.all_rays()],
    };
    let mut text = String::new();
    let mut faces = Vec::new();
    for set in sets {
        let mut rep = StructureReport::build(&s, set)?;
        rep.esets.clear();
        let filter = if rep.passes_shape_filter { "passes" } else { "fails" };
        let _ = writeln!(text, "set {{{}}}: shape filter {filter}", s.ids(set).join(","));
        for c in &rep.components {
            let _ = writeln!(text, "{}", component_line(c));
        }
        for f in &rep.failures {
            let _ = writeln!(text, "  failure {f}");
        }
        faces.push(json!({"rays": s.ids(set), "report": rep}));
    }
    let (esets, failures) = eset_section(&s)?;
    for e in &esets {
        let _ = writeln!(text, "{}", eset_line(e).trim_start());
    }
    for f in &failures {
        let _ = writeln!(text, "failure {f}");
    }
    if text.is_empty() {
        text.push_str("empty report\n");
    }
    Ok(Outcome { text, json: json!({"sets": faces, "esets": esets, "eset_failures": failures}), status: Status::Clean })
}

pub fn esets(inst: &Instance) -> Result<Outcome> {
    let s = inst.system()?;
    if let Some(bad) = require_valid(&s) {
        return Ok(bad);
    }
    ensure!(s.faces().is_some(), "E-sets need a face structure");
    let (esets, failures) = eset_section(&s)?;
    let mut text = String::new();
    for e in &esets {
        let _ = writeln!(text, "{}", eset_line(e).trim_start());
    }
    for f in &failures {
        let _ = writeln!(text, "failure {f}");
    }
    if text.is_empty() {
        text.push_str("no E-sets\n");
    }
    Ok(Outcome { text, json: json!({"esets": esets, "failures": failures}), status: Status::Clean })
}

pub fn rational(flag: &str, text: &str) -> Result<Rational> {
    parse_scalar(text).with_context(|| format!("--{flag} expects a rational such as 2/3"))
}

pub struct BoundArgs {
    pub d: Option<u32>,
    pub c1: Option<Rational>,
    pub c2: Option<Rational>,
    pub angle: bool,
    pub c: Option<Rational>,
    pub dd: Option<Rational>,
}

pub fn bound(a: &BoundArgs) -> Result<Outcome> {
    let zero = || Rational::from_integer(0.into());
    if a.angle {
        let c = a.c.clone().unwrap_or_else(zero);
        let d = a.dd.clone().unwrap_or_else(zero);
        let r = AngleReplay::new(&c, &d)?;
        let mut text = format!("C = {}, D = {}\n", format_scalar(&c), format_scalar(&d));
        if r.coarse_applies() {
            let coarse = Rational::from_integer(8.into()) * &c + Rational::from_integer(6.into());
            let _ = writeln!(text, "n < 8C + 6 = {}", format_scalar(&coarse));
        }
        let _ = writeln!(text, "{}", r.conclusion());
        let json = json!({"C": format_scalar(&c), "D": format_scalar(&d), "max_n": r.max_n, "rho_bound": r.rho_bound, "conclusion": r.conclusion()});
        return Ok(Outcome { text, json, status: Status::Clean });
    }
    let (Some(c1), Some(c2)) = (&a.c1, &a.c2) else { bail!("bound needs --c1 and --c2, or --angle with --C and --D") };
    let r = DiagramReplay::new(c1, c2)?;
    let angle = AngleReplay::new(&r.c, &zero())?;
    let mut text = String::new();
    if let Some(d) = a.d {
        let _ = writeln!(text, "d = {d}");
    }
    let _ = writeln!(text, "C1 = {}, C2 = {}, C = {}", format_scalar(c1), format_scalar(c2), format_scalar(&r.c));
    let _ = writeln!(text, "bound = {}, largest admissible dimension {}", format_scalar(&r.value), r.max_dim);
    let _ = writeln!(text, "{}", r.conclusion());
    let _ = writeln!(text, "full cone: {}", angle.conclusion());
    let json = json!({
        "d": a.d, "C1": format_scalar(c1), "C2": format_scalar(c2), "C": format_scalar(&r.c),
        "value": format_scalar(&r.value), "max_dim": r.max_dim, "codim_bound": r.codim_bound,
        "conclusion": r.conclusion(), "max_n": angle.max_n, "rho_bound": angle.rho_bound,
    });
    Ok(Outcome { text, json, status: Status::Clean })
}

pub fn polytope_stats(inst: &Instance) -> Result<Outcome> {
    let p = match inst {
        Instance::Polytope(p) => p.clone(),
        Instance::Diagram(d) => d.polytope.build()?,
        _ => bail!("polytope-stats needs a polytope or diagram file"),
    };
    let n = p.dim();
    let f = p.f_vector().0;
    let mut text = format!("dimension {n}\nf-vector {f:?}\n");
    let mut json = json!({"dim": n, "f_vector": f, "simple": p.is_simple()});
    let mut status = Status::Clean;
    if n < 2 {
        text.push_str("no 2-faces\n");
        return Ok(Outcome { text, json, status });
    }
    let avg = average_faces(&p, 0, 2)?;
    let _ = writeln!(text, "average vertices per 2-face {}", format_scalar(&avg));
    json["average"] = json!(format_scalar(&avg));
    if !p.is_simple() {
        text.push_str("not simple: bound check skipped\n");
        json["bound_check"] = json!("skipped");
    } else if n >= 3 {
        let bound = a02_bound(n)?;
        let margin = &bound - &avg;
        let holds = avg < bound;
        let _ = writeln!(text, "bound {}\nmargin {}", format_scalar(&bound), format_scalar(&margin));
        if !holds {
            text.push_str("bound violated\n");
            status = Status::Violation;
        }
        json["bound"] = json!(format_scalar(&bound));
        json["margin"] = json!(format_scalar(&margin));
        json["bound_check"] = json!(holds);
    } else {
        text.push_str("bound defined from dimension 3\n");
        json["bound_check"] = json!("skipped");
    }
    Ok(Outcome { text, json, status })
}

pub enum Constants {
    Empirical,
    Supplied(Rational, Rational),
    Direct(Rational, Rational),
}

pub fn diagram(inst: &Instance, d: u32, rule: &WeightRule, constants: &Constants) -> Result<Outcome> {
    let Instance::Diagram(file) = inst else { bail!("diagram needs a diagram file") };
    let (s, p, facet_rays, perp) = file.build::<Rational>()?;
    if let Some(bad) = require_valid(&s) {
        return Ok(bad);
    }
    let input = DiagramInput { system: &s, polytope: &p, facet_rays, perp, model: None };
    let mode = match constants {
        Constants::Empirical => ConstantsMode::Empirical,
        Constants::Supplied(c1, c2) => ConstantsMode::Supplied { c1: c1.clone(), c2: c2.clone() },
        Constants::Direct(c, dd) => ConstantsMode::Direct { c: c.clone(), d: dd.clone() },
    };
    let r = diagram_pipeline(&input, d, rule, &mode)?;
    let vid = |v: usize| p.vertex_ids()[v];
    let face_ids = |f: usize| -> Vec<i64> { p.faces()[f].vertices.iter().map(vid).collect() };
    let mut t = String::new();
    let _ = writeln!(t, "rule {}, d = {}", r.rule, r.d);
    let _ = writeln!(t, "C1 = {}, C2 = {}", format_scalar(&r.c1), format_scalar(&r.c2));
    for a in &r.angles {
        let _ = writeln!(
            t,
            "angle at vertex {} in 2-face {:?}: {} -> {} distance {} weight {}",
            vid(a.key.0),
            face_ids(a.key.1),
            s.ray(a.rays.0).id,
            s.ray(a.rays.1).id,
            a.distance,
            format_scalar(&a.weight)
        );
    }
    let b = &r.bound;
    let _ = writeln!(t, "C = {}, D = {}", format_scalar(&b.c), format_scalar(&b.d));
    for (v, sum) in &b.vertex_sums {
        let _ = writeln!(t, "vertex {} sum {}", vid(*v), format_scalar(sum));
    }
    for (f, k, sum) in &b.face_sums {
        let _ = writeln!(t, "2-face {:?} ({k} vertices) sum {}", face_ids(*f), format_scalar(sum));
    }
    let ch = &b.chain;
    let _ = writeln!(
        t,
        "chain: total {}, upper {} ({}), lower {} ({}), slack violations {}",
        format_scalar(&ch.total),
        format_scalar(&ch.upper),
        if ch.upper_holds { "holds" } else { "fails" },
        format_scalar(&ch.lower),
        if ch.lower_holds { "holds" } else { "fails" },
        ch.slack_violations
    );
    for m in r.condition_a_failures.iter().chain(&r.condition_b_failures) {
        let _ = writeln!(t, "hypothesis failure {m}");
    }
    for m in &r.counterexamples {
        let _ = writeln!(t, "counterexample {m}");
    }
    if let Some((value, max)) = &r.dimension_bound {
        let _ = writeln!(t, "dim gamma < {}, so dim gamma <= {max}", format_scalar(value));
    }
    if let Some(rep) = &r.replay {
        let _ = writeln!(
            t,
            "replay constants C = {}, D = {}: max vertex sum {}, at most {} weight-2/3 angles per vertex{}",
            format_scalar(&rep.c),
            format_scalar(&rep.d),
            format_scalar(&rep.max_vertex_sum),
            rep.max_two_thirds_per_vertex,
            if rep.disagrees { " (exceeds the replay constants)" } else { "" }
        );
    }
    let _ = writeln!(t, "max n = {}", r.max_n());
    let _ = writeln!(t, "{}", if r.conforming { "conforming" } else { "not conforming" });
    let status = if r.conforming { Status::Clean } else { Status::Violation };
    Ok(Outcome { text: t, json: r.to_json(&s), status })
}

pub struct GenArgs {
    pub family: String,
    pub seed: u64,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub k: Option<usize>,
    pub rays: Option<usize>,
    pub small: Option<usize>,
    pub name: Option<String>,
}

/// A generated instance file and the number of rejected draws.
pub fn generate(a: &GenArgs) -> Result<(String, usize)> {
    let polytope = |p: CombinatorialPolytope| Ok((PolytopeFile::from(&p).to_json(), 0));
    let need = |v: Option<usize>, flag: &str, min: usize| -> Result<usize> {
        let v = v.with_context(|| format!("family {} needs --{flag}", a.family))?;
        ensure!(v >= min, "--{flag} must be at least {min}");
        Ok(v)
    };
    match a.family.as_str() {
        "simplex" => polytope(simplex(need(a.n, "n", 1)?)),
        "cube" => polytope(cube(need(a.n, "n", 1)?)),
        "cyclic-dual" => {
            let n = need(a.n, "n", 2)?;
            polytope(cyclic_dual(n, need(a.m, "m", n + 1)?)?)
        }
        "product" => polytope(product(&simplex(need(a.n, "n", 1)?), &simplex(need(a.m, "m", 1)?))),
        "realized" => {
            let (m, rejections) = realized_instance(a.seed)?;
            Ok((RealizedFile::from(&m).to_json(), rejections))
        }
        "diagram" => {
            let name = a.name.as_deref().context("family diagram needs --name")?;
            let all = standard_fixtures()?;
            let Some(f) = all.iter().find(|f| f.name == name) else {
                let names: Vec<&str> = all.iter().map(|f| f.name.as_str()).collect();
                bail!("unknown diagram {name:?}; known: {}", names.join(", "))
            };
            Ok((f.to_file().to_json(), 0))
        }
        other => {
            let family = match other {
                "cm" => SystemFamily::Cm(a.m.unwrap_or(3)),
                "eset-d" => SystemFamily::EsetD(a.k.unwrap_or(2)),
                "random-valid" => SystemFamily::RandomValid(RandomParams {
                    divisorial: a.rays.unwrap_or(RandomParams::default().divisorial),
                    small: a.small.unwrap_or(0),
                    normalized: true,
                }),
                _ => other.parse::<SystemFamily>().map_err(|e| anyhow::anyhow!("{e}"))?,
            };
            let g = generate_system(&family, a.seed)?;
            Ok((SystemFile::from(&g.system).to_json(), g.rejections))
        }
    }
}
