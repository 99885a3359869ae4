use std::fmt;

use serde_json::{json, Value};

use zzc_core::colim::{
    check_window, colim_objects, compare_window, hom_classes, sweep, CellSearch, ColimError,
    CompareStatus, ComparisonReport, HomBounds, HomClassTable, ObjectClasses, PropertyReport,
    Window, PROPERTIES,
};
use zzc_core::fincat::{validate_fincat, Diagram, DiagramDoc, JsonError, ObjId};
use zzc_core::rigid::{
    check_round_trips, compare_with_chi, rigid_hom, FlagCategory, NecklaceComparison, RigidBounds,
    RigidError, RigidHomTable,
};
use zzc_core::sset::{corpus, FinSSet, SSetDoc, SSetError, SimplexRef};
use zzc_core::{fixtures, Budget};

use crate::{dot, render, Common, Format};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Schema(String),
    Budget(String),
    Engine(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "{s}"),
            CliError::Io(s) => write!(f, "cannot read input: {s}"),
            CliError::Schema(s) => write!(f, "invalid document: {s}"),
            CliError::Budget(s) => write!(f, "{s} (raise ZZC_BUDGET or lower the bounds)"),
            CliError::Engine(s) => write!(f, "{s}"),
        }
    }
}

impl From<JsonError> for CliError {
    fn from(e: JsonError) -> Self {
        CliError::Schema(e.to_string())
    }
}

impl From<SSetError> for CliError {
    fn from(e: SSetError) -> Self {
        match e {
            SSetError::UnknownCorpus(_) => CliError::Usage(e.to_string()),
            _ => CliError::Schema(e.to_string()),
        }
    }
}

impl From<ColimError> for CliError {
    fn from(e: ColimError) -> Self {
        match e {
            ColimError::Budget(_) => CliError::Budget(e.to_string()),
            _ => CliError::Engine(e.to_string()),
        }
    }
}

impl From<RigidError> for CliError {
    fn from(e: RigidError) -> Self {
        match e {
            RigidError::Budget(_) | RigidError::Colim(ColimError::Budget(_)) => {
                CliError::Budget(e.to_string())
            }
            RigidError::SSet(s) => s.into(),
            _ => CliError::Engine(e.to_string()),
        }
    }
}

/// What to print and whether every requested check passed.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

fn emit(
    c: &Common,
    report: Value,
    dot: impl FnOnce() -> Option<String>,
    passed: bool,
) -> Result<Outcome, CliError> {
    let text = match c.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => render::text(&report),
        Format::Dot => {
            dot().ok_or_else(|| CliError::Usage("this command has no DOT output".into()))?
        }
    };
    Ok(Outcome { text, passed })
}

fn read(path: &std::path::Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load_diagram(c: &Common) -> Result<(String, Diagram), CliError> {
    match (&c.input, c.corpus.as_deref()) {
        (Some(path), None) => Ok((path.display().to_string(), DiagramDoc::parse(&read(path)?)?)),
        (None, Some(name)) => {
            let d = match name {
                "roof" => fixtures::roof(),
                "loop" => fixtures::loop_coequalizer(),
                "pushout" => fixtures::arrow_pushout(),
                _ => return Err(CliError::Usage(format!("unknown diagram fixture {name:?}"))),
            };
            Ok((name.to_string(), d))
        }
        _ => Err(CliError::Usage(
            "give exactly one of --input and --corpus".into(),
        )),
    }
}

fn load_sset(c: &Common) -> Result<(String, FinSSet), CliError> {
    match (&c.input, c.corpus.as_deref()) {
        (Some(path), None) => Ok((path.display().to_string(), SSetDoc::parse(&read(path)?)?)),
        (None, Some(name)) => Ok((name.to_string(), corpus(name)?)),
        _ => Err(CliError::Usage(
            "give exactly one of --input and --corpus".into(),
        )),
    }
}

fn element_name(d: &Diagram, (i, a): (ObjId, ObjId)) -> String {
    format!("{}:{}", d.index.object_name(i), d.node(i).object_name(a))
}

/// An object class by number or by one of its elements `i:a`.
fn object_class(d: &Diagram, objects: &ObjectClasses, s: &str) -> Result<usize, CliError> {
    if let Ok(k) = s.parse::<usize>() {
        return (k < objects.len())
            .then_some(k)
            .ok_or_else(|| CliError::Usage(format!("no object class {k}")));
    }
    let unknown = || CliError::Usage(format!("no element {s:?}"));
    let (i, a) = s.split_once(':').ok_or_else(unknown)?;
    let i = d.index.find_object(i).ok_or_else(unknown)?;
    let a = d.node(i).find_object(a).ok_or_else(unknown)?;
    Ok(objects.of((i, a)))
}

fn vertex(x: &FinSSet, s: &str) -> Result<usize, CliError> {
    x.find(0, s)
        .or_else(|| s.parse().ok().filter(|&v| v < x.count(0)))
        .ok_or_else(|| CliError::Usage(format!("no vertex {s:?}")))
}

fn vertex_name(x: &FinSSet, v: usize) -> String {
    x.name_of(&SimplexRef::nondegenerate(0, v))
}

fn selected(all: usize, pick: Option<usize>) -> Vec<usize> {
    match pick {
        Some(k) => vec![k],
        None => (0..all).collect(),
    }
}

fn hom_json(d: &Diagram, t: &HomClassTable) -> Value {
    json!({
        "source": t.source,
        "target": t.target,
        "classes": t.len(),
        "items": t.items,
        "saturated": t.saturated,
        "representatives": t.classes.iter().map(|c| json!({
            "size": c.size,
            "zigzag": c.representative.render(d),
        })).collect::<Vec<_>>(),
    })
}

fn status_name(s: CompareStatus) -> &'static str {
    match s {
        CompareStatus::Bijection => "bijection",
        CompareStatus::Flagged => "flagged",
        CompareStatus::Mismatch => "mismatch",
    }
}

fn comparison_json(r: &ComparisonReport) -> Value {
    json!({
        "status": status_name(r.status),
        "oracle_len": r.oracle_len,
        "pairs": r.pairs.iter().map(|p| json!({
            "source": p.source,
            "target": p.target,
            "engine": p.engine_classes,
            "oracle": p.oracle_classes,
            "split": p.split,
            "fusion": p.fusion,
            "missing": p.missing,
            "status": status_name(p.status),
        })).collect::<Vec<_>>(),
    })
}

pub fn colim(c: &Common) -> Result<Outcome, CliError> {
    let (name, d) = load_diagram(c)?;
    if c.format == Format::Dot {
        return emit(c, Value::Null, || Some(dot::elements(&d)), true);
    }
    let len = c.max_zz_len.unwrap_or(2);
    let budget = Budget(c.budget);
    let objects = colim_objects(&d);
    let from = c
        .from
        .as_deref()
        .map(|s| object_class(&d, &objects, s))
        .transpose()?;
    let to =
        c.to.as_deref()
            .map(|s| object_class(&d, &objects, s))
            .transpose()?;
    let objects_json: Vec<Value> = objects
        .classes
        .iter()
        .map(|o| {
            json!({
                "class": o.id,
                "representative": element_name(&d, o.representative),
                "members": o.members.iter().map(|&e| element_name(&d, e)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut homs = Vec::new();
    if from.is_some() || to.is_some() {
        let bounds = HomBounds {
            max_zz_len: len,
            budget,
            ..HomBounds::new(len)
        };
        for s in selected(objects.len(), from) {
            for t in selected(objects.len(), to) {
                homs.push(hom_json(&d, &hom_classes(&d, s, t, bounds)?));
            }
        }
    } else {
        let w = Window::build(&d, None, len, budget, CellSearch::Moves)?;
        let big = match Window::build(&d, None, len + 1, budget, CellSearch::Moves) {
            Ok(big) => Some(big),
            Err(ColimError::Budget(_)) => None,
            Err(e) => return Err(e.into()),
        };
        for s in 0..objects.len() {
            for t in 0..objects.len() {
                let saturated = big.as_ref().is_some_and(|b| w.saturated_in(b, s, t));
                homs.push(hom_json(&d, &w.table(s, t, saturated)));
            }
        }
    }
    let mut report = json!({
        "command": "colim",
        "diagram": name,
        "max_zz_len": len,
        "objects": objects_json,
        "homs": homs,
    });
    let mut passed = true;
    if c.oracle_or(true) {
        let w = Window::build(&d, None, len, budget, CellSearch::Moves)?;
        let r = compare_window(&w, budget)?;
        passed = r.status != CompareStatus::Mismatch;
        report["oracle"] = comparison_json(&r);
    }
    emit(c, report, || None, passed)
}

fn rigid_json(x: &FinSSet, t: &RigidHomTable, cmp: Option<&NecklaceComparison>) -> Value {
    let mut v = json!({
        "a": vertex_name(x, t.a),
        "b": vertex_name(x, t.b),
        "p": t.p,
        "classes": t.len(),
        "saturated": t.saturated,
    });
    if let Some(k) = cmp {
        v["engine_classes"] = json!(k.engine_classes);
        v["engine_saturated"] = json!(k.engine_saturated);
        v["bijection"] = json!(k.bijection);
    }
    v["representatives"] = t
        .classes
        .iter()
        .map(|r| {
            json!({
                "necklace": r.representative.map.render(x),
                "flag": r.representative.flag.to_string(),
                "size": r.size,
            })
        })
        .collect();
    v
}

pub fn rigidify(c: &Common) -> Result<Outcome, CliError> {
    let (name, x) = load_sset(c)?;
    let p = c.p.unwrap_or(1);
    let bounds = RigidBounds {
        budget: Budget(c.budget),
        ..RigidBounds::new(c.max_beads, c.max_bead_dim)
    };
    let from = c.from.as_deref().map(|s| vertex(&x, s)).transpose()?;
    let to = c.to.as_deref().map(|s| vertex(&x, s)).transpose()?;
    let len = c.max_zz_len.unwrap_or(c.max_beads.saturating_sub(1));
    let comparisons = if c.oracle_or(false) {
        Some(compare_with_chi(&x, p, bounds, len, true)?)
    } else {
        None
    };
    let mut homs = Vec::new();
    let mut passed = true;
    for a in selected(x.count(0), from) {
        for b in selected(x.count(0), to) {
            let t = rigid_hom(&x, a, b, p, bounds)?;
            let cmp = comparisons
                .as_ref()
                .and_then(|cs| cs.iter().find(|k| k.a == a && k.b == b));
            if let Some(k) = cmp {
                passed &= k.bijection;
            }
            homs.push(rigid_json(&x, &t, cmp));
        }
    }
    let mut report = json!({
        "command": "rigidify",
        "sset": name,
        "p": p,
        "max_beads": c.max_beads,
        "max_bead_dim": c.max_bead_dim,
    });
    if comparisons.is_some() {
        report["max_zz_len"] = json!(len);
    }
    report["homs"] = json!(homs);
    emit(c, report, || None, passed)
}

fn expected_flags(i: usize, j: usize, p: usize) -> usize {
    if i == j {
        1
    } else {
        (p + 2).pow((j - i - 1) as u32)
    }
}

pub fn flagcat(c: &Common) -> Result<Outcome, CliError> {
    let n = c.max_len.unwrap_or(2);
    let p = c.p.unwrap_or(1);
    let fc = FlagCategory::new(n, p);
    let laws = validate_fincat(&fc.cat).is_empty();
    let pick = |s: &Option<String>| -> Result<Option<usize>, CliError> {
        s.as_deref()
            .map(|s| {
                s.parse()
                    .ok()
                    .filter(|&k| k <= n)
                    .ok_or_else(|| CliError::Usage(format!("no object {s:?}")))
            })
            .transpose()
    };
    let (from, to) = (pick(&c.from)?, pick(&c.to)?);
    let mut passed = laws;
    let mut homs = Vec::new();
    for i in selected(n + 1, from) {
        for j in selected(n + 1, to).into_iter().filter(|&j| j >= i) {
            let flags: Vec<String> = fc
                .flags
                .iter()
                .filter(|f| f.from == i && f.to == j)
                .map(|f| f.to_string())
                .collect();
            let expected = expected_flags(i, j, p);
            passed &= flags.len() == expected;
            let mut h = json!({"from": i, "to": j, "count": flags.len(), "expected": expected});
            if from.is_some() && to.is_some() {
                h["flags"] = json!(flags);
            }
            homs.push(h);
        }
    }
    let report = json!({
        "command": "flagcat",
        "n": n,
        "p": p,
        "objects": n + 1,
        "morphisms": fc.flags.len(),
        "category_laws": laws,
        "homs": homs,
    });
    emit(c, report, || Some(dot::flags(&fc)), passed)
}

fn properties_json(r: &PropertyReport) -> Value {
    let mut checked = serde_json::Map::new();
    for p in PROPERTIES {
        checked.insert(p.to_string(), json!(r.checked[p as usize]));
    }
    json!({
        "checked": checked,
        "undetermined": r.undetermined,
        "failures": r.failures.iter().map(|(p, s)| format!("{p}: {s}")).collect::<Vec<_>>(),
    })
}

/// Oracle comparison and the well-definedness properties on one diagram.
fn check_one(
    d: &Diagram,
    len: usize,
    budget: Budget,
) -> Result<(ComparisonReport, PropertyReport), CliError> {
    let w = Window::build(d, None, len, budget, CellSearch::Moves)?;
    Ok((compare_window(&w, budget)?, check_window(&w, None)))
}

#[derive(Default)]
struct Tally {
    diagrams: usize,
    bijection: usize,
    flagged: usize,
    mismatch: usize,
    properties: PropertyReport,
    failures: Vec<String>,
}

impl Tally {
    fn add(&mut self, name: &str, cmp: &ComparisonReport, props: &PropertyReport) {
        self.diagrams += 1;
        match cmp.status {
            CompareStatus::Bijection => self.bijection += 1,
            CompareStatus::Flagged => self.flagged += 1,
            CompareStatus::Mismatch => {
                self.mismatch += 1;
                let why = cmp.pairs.iter().find_map(|p| p.counterexample.clone());
                self.failures
                    .push(format!("{name}: {}", why.unwrap_or_default()));
            }
        }
        for (p, s) in &props.failures {
            self.failures.push(format!("{name}: {p}: {s}"));
        }
        self.properties.merge(props);
    }

    fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn json(&self) -> Value {
        let props = properties_json(&self.properties);
        json!({
            "diagrams": self.diagrams,
            "bijection": self.bijection,
            "flagged": self.flagged,
            "mismatch": self.mismatch,
            "checked": props["checked"],
            "undetermined": self.properties.undetermined,
            "failures": self.failures,
        })
    }
}

const RANDOM_DIAGRAMS: usize = 10;
const CHI_SPACES: [&str; 3] = ["delta:2", "boundary:2", "horn:2:1"];

pub fn check(c: &Common) -> Result<Outcome, CliError> {
    let len = c.max_len.unwrap_or(1);
    let budget = Budget(c.budget);
    let mut sections = serde_json::Map::new();
    let mut passed = true;

    let mut fixtures_tally = Tally::default();
    let mut named: Vec<(String, Diagram)> = vec![
        ("roof".into(), fixtures::roof()),
        ("loop".into(), fixtures::loop_coequalizer()),
        ("pushout".into(), fixtures::arrow_pushout()),
    ];
    if c.input.is_some() {
        named.push(load_diagram(c)?);
    }
    for (name, d) in &named {
        let (cmp, props) = check_one(d, len, budget)?;
        fixtures_tally.add(name, &cmp, &props);
    }
    passed &= fixtures_tally.passed();
    sections.insert("fixtures".into(), fixtures_tally.json());

    let mut random = Tally::default();
    for (k, d) in sweep::random_diagrams(c.seed, RANDOM_DIAGRAMS)
        .iter()
        .enumerate()
    {
        let (cmp, props) = check_one(d, len, budget)?;
        random.add(&format!("random #{k}"), &cmp, &props);
    }
    passed &= random.passed();
    let mut random_json = random.json();
    random_json["seed"] = json!(c.seed);
    sections.insert("random".into(), random_json);

    if c.exhaustive {
        let mut tally = Tally::default();
        let mut error = None;
        let mut k = 0;
        sweep::exhaustive_small(true, |d| {
            if error.is_some() {
                return;
            }
            match check_one(&d, len, budget) {
                Ok((cmp, props)) => tally.add(&format!("sweep #{k}"), &cmp, &props),
                Err(e) => error = Some(e),
            }
            k += 1;
        });
        if let Some(e) = error {
            return Err(e);
        }
        passed &= tally.passed();
        sections.insert("exhaustive".into(), tally.json());
    }

    let trips = check_round_trips(3, 2, 2);
    passed &= trips.passed();
    sections.insert(
        "round_trips".into(),
        json!({
            "flags": trips.flags,
            "cells": trips.cells,
            "maps": trips.maps,
            "failures": trips.failures,
        }),
    );

    let bounds = RigidBounds {
        budget,
        ..RigidBounds::new(3, 2)
    };
    let mut chi_rows = Vec::new();
    for name in CHI_SPACES {
        let x = corpus(name)?;
        for p in 0..=1 {
            for k in compare_with_chi(&x, p, bounds, 1, true)? {
                passed &= k.bijection;
                chi_rows.push(json!({
                    "sset": name,
                    "a": vertex_name(&x, k.a),
                    "b": vertex_name(&x, k.b),
                    "p": p,
                    "rigid": k.rigid_classes,
                    "engine": k.engine_classes,
                    "bijection": k.bijection,
                }));
            }
        }
    }
    sections.insert("necklaces".into(), json!(chi_rows));

    let mut report = json!({
        "command": "check",
        "max_len": len,
        "passed": passed,
    });
    for (k, v) in sections {
        report[k] = v;
    }
    emit(c, report, || None, passed)
}
