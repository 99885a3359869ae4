//! Small named diagrams used by tests, examples and the CLI.

use std::sync::Arc;

use crate::fincat::{Diagram, FinCat, FinCatBuilder, Functor, MorId, ObjId};

/// `i ← k → j` as an index category.
pub fn span_index() -> FinCat {
    let mut b = FinCatBuilder::new("span");
    let k = b.object_with_identity("k");
    let i = b.object_with_identity("i");
    let j = b.object_with_identity("j");
    b.morphism("l", k, i);
    b.morphism("r", k, j);
    b.build()
}

/// `0 ⇉ 1` as an index category.
pub fn parallel_pair_index() -> FinCat {
    let mut b = FinCatBuilder::new("pair");
    let x = b.object_with_identity("0");
    let y = b.object_with_identity("1");
    b.morphism("s", x, y);
    b.morphism("t", x, y);
    b.build()
}

fn walking_arrow(name: &str, src: &str, tgt: &str, arrow: &str) -> FinCat {
    let mut b = FinCatBuilder::new(name);
    let a = b.object_with_identity(src);
    let c = b.object_with_identity(tgt);
    b.morphism(arrow, a, c);
    b.build()
}

fn point(name: &str, obj: &str) -> FinCat {
    let mut b = FinCatBuilder::new(name);
    b.object_with_identity(obj);
    b.build()
}

/// Functor out of a one-object category picking object `o`.
fn pick(src: &FinCat, tgt: &FinCat, o: &str) -> Functor {
    let o = tgt.find_object(o).expect("fixture object");
    Functor {
        obj_map: vec![o; src.num_objects()],
        mor_map: vec![tgt.identity(o); src.num_morphisms()],
    }
}

fn assemble(index: FinCat, nodes: Vec<FinCat>, edges: Vec<(&str, Functor)>) -> Diagram {
    let nodes: Vec<Arc<FinCat>> = nodes.into_iter().map(Arc::new).collect();
    let mut out: Vec<Option<Arc<Functor>>> = vec![None; index.num_morphisms()];
    for i in index.objects() {
        out[index.identity(i).idx()] = Some(Arc::new(Functor::identity(&nodes[i.idx()])));
    }
    for (name, f) in edges {
        out[index.find_morphism(name).expect("fixture edge").idx()] = Some(Arc::new(f));
    }
    Diagram {
        index,
        nodes,
        edges: out
            .into_iter()
            .map(|e| e.expect("every edge given"))
            .collect(),
    }
}

/// `f : a → l̃(c)` in `C_i`, `g : r̃(c) → b` in `C_j`, glued along `c ∈ C_k`.
/// The colimit is free on `a → c → b`, so `f` and `g` become composable.
pub fn roof() -> Diagram {
    let ck = point("Ck", "c");
    let ci = walking_arrow("Ci", "a", "c", "f");
    let cj = walking_arrow("Cj", "c", "b", "g");
    let l = pick(&ck, &ci, "c");
    let r = pick(&ck, &cj, "c");
    assemble(span_index(), vec![ck, ci, cj], vec![("l", l), ("r", r)])
}

/// Coequalizer of the two endpoint inclusions `1 ⇉ 2`: a free loop.
pub fn loop_coequalizer() -> Diagram {
    let one = point("1", "*");
    let two = walking_arrow("2", "0", "1", "x");
    let s = pick(&one, &two, "0");
    let t = pick(&one, &two, "1");
    assemble(
        parallel_pair_index(),
        vec![one, two],
        vec![("s", s), ("t", t)],
    )
}

/// Two walking arrows glued target-to-source: free on `0 → 1 → 2`.
pub fn arrow_pushout() -> Diagram {
    let ck = point("Ck", "m");
    let ci = walking_arrow("Ci", "0", "m", "x");
    let cj = walking_arrow("Cj", "m", "2", "y");
    let l = pick(&ck, &ci, "m");
    let r = pick(&ck, &cj, "m");
    assemble(span_index(), vec![ck, ci, cj], vec![("l", l), ("r", r)])
}

/// The constant diagram over the terminal index.
pub fn terminal(c: FinCat) -> Diagram {
    Diagram::constant(c)
}

/// Looks an element up by index-object and node-object names.
pub fn element(d: &Diagram, i: &str, a: &str) -> (ObjId, ObjId) {
    let i = d.index.find_object(i).expect("index object");
    (i, d.node(i).find_object(a).expect("node object"))
}

/// Looks a morphism of a node up by names.
pub fn node_morphism(d: &Diagram, i: &str, f: &str) -> (ObjId, MorId) {
    let i = d.index.find_object(i).expect("index object");
    (i, d.node(i).find_morphism(f).expect("node morphism"))
}
