//! JSON documents and DOT drawings for groups, graphs, data, and cover
//! specs. Documents carry a versioned `"schema"` field; permutations
//! are emitted in cycle notation and accepted either as cycle strings
//! or image arrays.

use crate::construct::{CoverSpec, PlainGraph};
use crate::gog::{GraphOfGroups, Mono};
use crate::group::{closure, FiniteGroup};
use crate::perm::Perm;
use crate::presentation::AbelianInvariants;
use crate::ret::{MumfordWitness, RamificationDatum, VirtualReport};
use crate::{Error, Result};
use serde_json::{json, Value};

pub const GROUP_SCHEMA: &str = "group/1";
pub const GRAPH_SCHEMA: &str = "graph-of-groups/1";
pub const DATUM_SCHEMA: &str = "ramification-datum/1";
pub const COVER_SPEC_SCHEMA: &str = "cover-spec/1";

pub fn perm_to_json(p: &Perm) -> Value {
    Value::String(p.to_cycle_string())
}

/// Accepts `"(0 1 2)(3 4)"` or `[1, 2, 0, 4, 3]`.
pub fn perm_from_json(v: &Value, degree: usize) -> Result<Perm> {
    match v {
        Value::String(s) => Perm::parse_cycles(s, degree),
        Value::Array(items) => {
            let images: Vec<usize> = items
                .iter()
                .map(|x| {
                    x.as_u64()
                        .map(|n| n as usize)
                        .ok_or_else(|| Error::Validation(format!("bad image entry {}", x)))
                })
                .collect::<Result<_>>()?;
            if images.len() != degree {
                return Err(Error::Validation(format!(
                    "image array of length {} where degree {} expected",
                    images.len(),
                    degree
                )));
            }
            Perm::new(images)
        }
        other => Err(Error::Validation(format!(
            "expected a cycle string or image array, got {}",
            other
        ))),
    }
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name)
        .ok_or_else(|| Error::Validation(format!("missing field {:?}", name)))
}

fn usize_field(v: &Value, name: &str) -> Result<usize> {
    field(v, name)?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::Validation(format!("field {:?} is not an integer", name)))
}

pub fn group_to_json(g: &FiniteGroup) -> Value {
    json!({
        "schema": GROUP_SCHEMA,
        "degree": g.degree(),
        "generators": g.generators().iter().map(perm_to_json).collect::<Vec<_>>(),
    })
}

pub fn group_from_json(v: &Value) -> Result<FiniteGroup> {
    let degree = usize_field(v, "degree")?;
    let gens = field(v, "generators")?
        .as_array()
        .ok_or_else(|| Error::Validation("generators must be an array".into()))?
        .iter()
        .map(|p| perm_from_json(p, degree))
        .collect::<Result<Vec<_>>>()?;
    closure(degree, &gens)
}

/// A short display tag for a group: `1`, `C6`, or `G12`.
pub fn group_tag(g: &FiniteGroup) -> String {
    if g.is_trivial() {
        "1".into()
    } else if g.is_cyclic() {
        format!("C{}", g.order())
    } else {
        format!("G{}", g.order())
    }
}

fn mono_to_json(m: &Mono) -> Value {
    Value::Array(m.gen_images().iter().map(perm_to_json).collect())
}

fn mono_from_json(v: &Value, target_degree: usize) -> Result<Mono> {
    let images = v
        .as_array()
        .ok_or_else(|| Error::Validation("embedding must be an array of images".into()))?
        .iter()
        .map(|p| perm_from_json(p, target_degree))
        .collect::<Result<Vec<_>>>()?;
    Ok(Mono::new(images))
}

pub fn graph_to_json(g: &GraphOfGroups) -> Value {
    json!({
        "schema": GRAPH_SCHEMA,
        "vertices": g.vertices.iter().map(|v| json!({
            "id": v.id,
            "group": group_to_json(&v.group),
        })).collect::<Vec<_>>(),
        "edges": g.edges.iter().map(|e| json!({
            "id": e.id,
            "from": e.from,
            "to": e.to,
            "group": group_to_json(&e.group),
            "into_from": mono_to_json(&e.into_from),
            "into_to": mono_to_json(&e.into_to),
        })).collect::<Vec<_>>(),
        "cusps": g.cusps.iter().map(|c| json!({
            "id": c.id,
            "vertex": c.vertex,
            "group": group_to_json(&c.group),
            "into_vertex": mono_to_json(&c.into_vertex),
        })).collect::<Vec<_>>(),
    })
}

pub fn graph_from_json(v: &Value) -> Result<GraphOfGroups> {
    let mut g = GraphOfGroups::new();
    for vert in field(v, "vertices")?
        .as_array()
        .ok_or_else(|| Error::Validation("vertices must be an array".into()))?
    {
        let id = usize_field(vert, "id")?;
        let group = group_from_json(field(vert, "group")?)?;
        g.add_vertex(id, group);
    }
    let vertex_degree = |g: &GraphOfGroups, id: usize| -> Result<usize> {
        g.vertex(id)
            .map(|v| v.group.degree())
            .ok_or_else(|| Error::Validation(format!("reference to missing vertex {}", id)))
    };
    for edge in field(v, "edges")?
        .as_array()
        .ok_or_else(|| Error::Validation("edges must be an array".into()))?
    {
        let id = usize_field(edge, "id")?;
        let from = usize_field(edge, "from")?;
        let to = usize_field(edge, "to")?;
        let group = group_from_json(field(edge, "group")?)?;
        let into_from = mono_from_json(field(edge, "into_from")?, vertex_degree(&g, from)?)?;
        let into_to = mono_from_json(field(edge, "into_to")?, vertex_degree(&g, to)?)?;
        g.add_edge(id, from, to, group, into_from, into_to);
    }
    for cusp in field(v, "cusps")?
        .as_array()
        .ok_or_else(|| Error::Validation("cusps must be an array".into()))?
    {
        let id = usize_field(cusp, "id")?;
        let vertex = usize_field(cusp, "vertex")?;
        let group = group_from_json(field(cusp, "group")?)?;
        let into_vertex = mono_from_json(field(cusp, "into_vertex")?, vertex_degree(&g, vertex)?)?;
        g.add_cusp(id, vertex, group, into_vertex);
    }
    Ok(g)
}

pub fn datum_to_json(d: &RamificationDatum) -> Value {
    json!({
        "schema": DATUM_SCHEMA,
        "group": group_to_json(d.group()),
        "classes": d.classes().iter().map(|c| perm_to_json(&c.representative)).collect::<Vec<_>>(),
    })
}

pub fn datum_from_json(v: &Value) -> Result<RamificationDatum> {
    let group = group_from_json(field(v, "group")?)?;
    let degree = group.degree();
    let reps = field(v, "classes")?
        .as_array()
        .ok_or_else(|| Error::Validation("classes must be an array".into()))?
        .iter()
        .map(|p| perm_from_json(p, degree))
        .collect::<Result<Vec<_>>>()?;
    RamificationDatum::new(group, &reps)
}

pub fn cover_spec_to_json(s: &CoverSpec) -> Value {
    json!({
        "schema": COVER_SPEC_SCHEMA,
        "graph": graph_to_json(&s.star_graph),
        "deck_group": group_to_json(&s.deck_group),
        "quotient": s.quotient_onto.iter().map(perm_to_json).collect::<Vec<_>>(),
        "base_genus": s.base_genus,
        "signature": s.signature.0,
        "cover_genus": s.cover_genus,
        "delta_connected": s.delta_connected,
        "certificate": s.certificate,
    })
}

/// Rebuilds a cover spec from its document, re-running every
/// verification rather than trusting the stored derived fields.
pub fn cover_spec_from_json(v: &Value) -> Result<CoverSpec> {
    let graph = graph_from_json(field(v, "graph")?)?;
    let deck = group_from_json(field(v, "deck_group")?)?;
    let certificate = field(v, "certificate")?
        .as_array()
        .ok_or_else(|| Error::Validation("certificate must be an array".into()))?
        .iter()
        .map(|x| {
            x.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::Validation("certificate entries must be strings".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    CoverSpec::assemble(graph, deck, certificate)
}

pub fn witness_to_json(w: &MumfordWitness) -> Value {
    json!({
        "blocks": w.blocks,
        "reps": w.representatives.iter().map(perm_to_json).collect::<Vec<_>>(),
        "classification": w.classification,
    })
}

pub fn virtual_report_to_json(r: &VirtualReport) -> Value {
    json!({
        "blocks": r.blocks.iter().map(|b| json!({
            "indices": b.indices,
            "reps": b.representatives.iter().map(perm_to_json).collect::<Vec<_>>(),
            "completions": b.completions.iter().map(perm_to_json).collect::<Vec<_>>(),
            "classification": b.classification,
        })).collect::<Vec<_>>(),
    })
}

pub fn abelian_invariants_to_json(a: &AbelianInvariants) -> Value {
    json!({ "torsion": a.torsion, "rank": a.rank })
}

/// DOT drawing of a graph of groups: vertices labelled by group tag,
/// cusps as dashed arrow stubs labelled by ramification order.
pub fn graph_to_dot(g: &GraphOfGroups) -> String {
    let mut out = String::from("graph stargraph {\n");
    for v in &g.vertices {
        out.push_str(&format!(
            "  v{} [label=\"{}\"];\n",
            v.id,
            group_tag(&v.group)
        ));
    }
    for e in &g.edges {
        out.push_str(&format!(
            "  v{} -- v{} [label=\"{}\"];\n",
            e.from,
            e.to,
            group_tag(&e.group)
        ));
    }
    for c in &g.cusps {
        out.push_str(&format!(
            "  c{} [shape=none, label=\"{}\"];\n  v{} -- c{} [style=dashed];\n",
            c.id,
            c.group.order(),
            c.vertex,
            c.id
        ));
    }
    out.push_str("}\n");
    out
}

/// DOT drawing of a materialized covering graph.
pub fn plain_graph_to_dot(g: &PlainGraph) -> String {
    let mut out = String::from("graph cover {\n");
    for (i, n) in g.nodes.iter().enumerate() {
        out.push_str(&format!("  n{} [label=\"{}\"];\n", i, n));
    }
    for &(a, b) in &g.links {
        out.push_str(&format!("  n{} -- n{};\n", a, b));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::star_tree_for_cyclic;
    use crate::group::symmetric_group;

    #[test]
    fn perm_round_trip() {
        let p = Perm::parse_cycles("(0 1 2)(3 4)", 5).unwrap();
        let v = perm_to_json(&p);
        assert_eq!(perm_from_json(&v, 5).unwrap(), p);
        // image-array form
        let arr = json!([1, 2, 0, 4, 3]);
        assert_eq!(perm_from_json(&arr, 5).unwrap(), p);
        assert!(perm_from_json(&json!(3), 5).is_err());
        assert!(perm_from_json(&json!([0, 0, 1]), 3).is_err());
    }

    #[test]
    fn group_round_trip() {
        let s3 = symmetric_group(3);
        let doc = group_to_json(&s3);
        assert_eq!(doc["schema"], GROUP_SCHEMA);
        let back = group_from_json(&doc).unwrap();
        assert_eq!(back, s3);
    }

    #[test]
    fn graph_and_spec_round_trip() {
        let spec = star_tree_for_cyclic(6, 3).unwrap();
        let gdoc = graph_to_json(&spec.star_graph);
        let back = graph_from_json(&gdoc).unwrap();
        assert_eq!(back, spec.star_graph);

        let sdoc = cover_spec_to_json(&spec);
        let reback = cover_spec_from_json(&sdoc).unwrap();
        assert_eq!(reback.star_graph, spec.star_graph);
        assert_eq!(reback.cover_genus, spec.cover_genus);
        assert_eq!(reback.signature, spec.signature);
        // byte-identical re-serialization (determinism contract)
        assert_eq!(
            serde_json::to_string(&sdoc).unwrap(),
            serde_json::to_string(&cover_spec_to_json(&reback)).unwrap()
        );
    }

    #[test]
    fn datum_round_trip() {
        let s3 = symmetric_group(3);
        let t = Perm::parse_cycles("(0 1)", 3).unwrap();
        let d = RamificationDatum::new(s3, &[t.clone(), t]).unwrap();
        let doc = datum_to_json(&d);
        let back = datum_from_json(&doc).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn dot_output_shape() {
        let spec = star_tree_for_cyclic(3, 3).unwrap();
        let dot = graph_to_dot(&spec.star_graph);
        assert!(dot.starts_with("graph stargraph {"));
        assert!(dot.contains("label=\"C3\""));
        assert!(dot.contains("style=dashed"));

        let delta = crate::construct::covering_graph(&spec.star_graph, &spec.deck_group).unwrap();
        let dot = plain_graph_to_dot(&delta);
        assert!(dot.starts_with("graph cover {"));
    }
}
