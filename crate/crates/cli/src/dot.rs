//! DOT emission of the element category of a diagram and of flag categories.

use std::fmt::Write;

use zzc_core::fincat::Diagram;
use zzc_core::rigid::FlagCategory;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Elements `(i, a)` clustered by `i`; morphisms of each `C_i` solid, index arrows dashed.
pub fn elements(d: &Diagram) -> String {
    let j = &d.index;
    let name = |i, a| format!("{}:{}", j.object_name(i), d.node(i).object_name(a));
    let mut out = String::from("digraph elements {\n  rankdir=LR;\n  node [shape=box];\n");
    for i in j.objects() {
        let c = d.node(i);
        let _ = writeln!(out, "  subgraph cluster_{} {{", i.0);
        let _ = writeln!(out, "    label={};", quote(j.object_name(i)));
        for a in c.objects() {
            let _ = writeln!(out, "    {};", quote(&name(i, a)));
        }
        for f in c.morphisms().filter(|&f| !c.is_identity(f)) {
            let (s, t) = (c.src(f), c.tgt(f));
            let _ = writeln!(
                out,
                "    {} -> {} [label={}];",
                quote(&name(i, s)),
                quote(&name(i, t)),
                quote(c.morphism_name(f))
            );
        }
        out.push_str("  }\n");
    }
    for u in j.morphisms().filter(|&u| !j.is_identity(u)) {
        let (s, t) = (j.src(u), j.tgt(u));
        for a in d.node(s).objects() {
            let _ = writeln!(
                out,
                "  {} -> {} [style=dashed, label={}];",
                quote(&name(s, a)),
                quote(&name(t, d.push_obj(u, a))),
                quote(j.morphism_name(u))
            );
        }
    }
    out.push_str("}\n");
    out
}

/// Objects `0..=n` and one edge per non-identity flag.
pub fn flags(fc: &FlagCategory) -> String {
    let mut out = format!("digraph flags_{}_{} {{\n  rankdir=LR;\n", fc.n, fc.p);
    for i in 0..=fc.n {
        let _ = writeln!(out, "  {i};");
    }
    for f in fc.flags.iter().filter(|f| f.from != f.to) {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            f.from,
            f.to,
            quote(&f.to_string())
        );
    }
    out.push_str("}\n");
    out
}
