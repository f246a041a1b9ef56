//! Branch point calculus: the counting formula `n = 2(C-c) + 3(D-d)`,
//! local contributions on regular trees, branch-locus pushouts,
//! Riemann-Hurwitz genus and Hurwitz dimensions.

use crate::gog::{GraphOfGroups, Signature};
use crate::group::subgroup_generated;
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

/// The branch point count of a stable graph of groups, with the bucket
/// tallies it came from: `C`/`c` non-trivial cyclic vertex/edge groups,
/// `D`/`d` non-cyclic vertex/edge groups.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct BranchCount {
    pub n: u64,
    #[serde(rename = "C")]
    pub big_c: u64,
    pub c: u64,
    #[serde(rename = "D")]
    pub big_d: u64,
    pub d: u64,
}

/// A finite set of opaque branch point labels.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct BranchLocus {
    pub points: BTreeSet<String>,
}

impl BranchLocus {
    pub fn new(points: impl IntoIterator<Item = String>) -> BranchLocus {
        BranchLocus {
            points: points.into_iter().collect(),
        }
    }
    pub fn len(&self) -> usize {
        self.points.len()
    }
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Evaluates the branch point counting formula on a stable graph.
/// Trivial groups land in no bucket; a loop's edge group counts once.
///
/// The hypothesis that the fundamental group contains a free subgroup
/// of rank 2 is not checked; on degenerate inputs the formula can go
/// negative, which is reported as an inconsistency.
pub fn branch_count(g: &GraphOfGroups) -> Result<BranchCount> {
    if !g.is_stable()? {
        return Err(Error::Structural(
            "graph is not stable; stabilize it before counting branch points".into(),
        ));
    }
    let mut big_c = 0u64;
    let mut big_d = 0u64;
    for v in &g.vertices {
        if v.group.is_trivial() {
            continue;
        }
        if v.group.is_cyclic() {
            big_c += 1;
        } else {
            big_d += 1;
        }
    }
    let mut c = 0u64;
    let mut d = 0u64;
    for e in &g.edges {
        if e.group.is_trivial() {
            continue;
        }
        if e.group.is_cyclic() {
            c += 1;
        } else {
            d += 1;
        }
    }
    let n = 2 * (big_c as i64 - c as i64) + 3 * (big_d as i64 - d as i64);
    if n < 0 {
        return Err(Error::Inconsistent(format!(
            "branch formula evaluates to {} on C={} c={} D={} d={}",
            n, big_c, c, big_d, d
        )));
    }
    Ok(BranchCount {
        n: n as u64,
        big_c,
        c,
        big_d,
        d,
    })
}

fn require_regular_tree(t: &GraphOfGroups) -> Result<()> {
    let violations = t.validate();
    if !violations.is_empty() {
        return Err(Error::Validation(
            violations
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; "),
        ));
    }
    if t.edges.len() + 1 != t.vertices.len() || t.edges.iter().any(|e| e.is_loop()) {
        return Err(Error::Validation("graph is not a tree".into()));
    }
    for v in &t.vertices {
        if v.group.is_cyclic() {
            return Err(Error::Validation(format!(
                "vertex {} has a cyclic group; regular trees need non-cyclic vertex groups",
                v.id
            )));
        }
        if t.valency(v.id) > 3 {
            return Err(Error::Validation(format!(
                "vertex {} has valency {} > 3",
                v.id,
                t.valency(v.id)
            )));
        }
    }
    for e in &t.edges {
        if e.group.is_trivial() || !e.group.is_cyclic() {
            return Err(Error::Validation(format!(
                "edge {} group must be non-trivial cyclic",
                e.id
            )));
        }
        for (vid, mono) in [(e.from, &e.into_from), (e.to, &e.into_to)] {
            let vg = &t.vertex(vid).unwrap().group;
            let image = mono.image(&e.group, vg)?;
            // maximal cyclic: no strictly larger cyclic subgroup of the
            // vertex group contains the image
            for x in vg.elements() {
                let cyc = subgroup_generated(vg, std::slice::from_ref(x))?;
                if cyc.order() > image.order() && cyc.contains_group(&image) {
                    return Err(Error::Validation(format!(
                        "edge {} image is not maximal cyclic in vertex {}",
                        e.id, vid
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Branch point count of a regular tree: the number of vertices plus
/// two. Cross-checked against the general counting formula.
pub fn regular_tree_branch_count(t: &GraphOfGroups) -> Result<u64> {
    require_regular_tree(t)?;
    let by_vertices = t.vertices.len() as u64 + 2;
    let general = branch_count(t)?;
    if general.n != by_vertices {
        return Err(Error::Inconsistent(format!(
            "vertex count formula gives {} but branch formula gives {}",
            by_vertices, general.n
        )));
    }
    Ok(by_vertices)
}

/// Local branch contribution of a vertex in a regular tree: 3 minus its
/// valency.
pub fn regular_local_contribution(t: &GraphOfGroups, vertex: usize) -> Result<u64> {
    require_regular_tree(t)?;
    if t.vertex(vertex).is_none() {
        return Err(Error::Validation(format!("no vertex {}", vertex)));
    }
    Ok(3 - t.valency(vertex) as u64)
}

/// Pushout of sets: the disjoint union of `b1` and `b2` with `f1(x)`
/// glued to `f2(x)` for every `x` in `bh`. Output labels carry
/// `left:`/`right:` prefixes; a glued class is named by its smallest
/// member.
pub fn branch_pushout(
    b1: &BranchLocus,
    b2: &BranchLocus,
    bh: &BranchLocus,
    f1: &BTreeMap<String, String>,
    f2: &BTreeMap<String, String>,
) -> Result<BranchLocus> {
    for (name, f, target) in [("f1", f1, b1), ("f2", f2, b2)] {
        for x in &bh.points {
            match f.get(x) {
                None => {
                    return Err(Error::Validation(format!(
                        "{} is not defined on {:?}",
                        name, x
                    )))
                }
                Some(y) if !target.points.contains(y) => {
                    return Err(Error::Validation(format!(
                        "{}({:?}) = {:?} is not in the target locus",
                        name, x, y
                    )))
                }
                Some(_) => {}
            }
        }
    }
    // union-find over the disjoint union
    let mut parent: BTreeMap<String, String> = BTreeMap::new();
    for p in &b1.points {
        let l = format!("left:{}", p);
        parent.insert(l.clone(), l);
    }
    for p in &b2.points {
        let r = format!("right:{}", p);
        parent.insert(r.clone(), r);
    }
    fn find(parent: &mut BTreeMap<String, String>, x: &str) -> String {
        let p = parent[x].clone();
        if p == x {
            return p;
        }
        let root = find(parent, &p);
        parent.insert(x.to_string(), root.clone());
        root
    }
    for x in &bh.points {
        let l = find(&mut parent, &format!("left:{}", f1[x]));
        let r = find(&mut parent, &format!("right:{}", f2[x]));
        if l != r {
            let (keep, drop) = if l < r { (l, r) } else { (r, l) };
            parent.insert(drop, keep);
        }
    }
    let keys: Vec<String> = parent.keys().cloned().collect();
    let points: BTreeSet<String> = keys.iter().map(|k| find(&mut parent, k)).collect();
    Ok(BranchLocus { points })
}

/// Solves the tame Riemann-Hurwitz equation
/// `2h - 2 = |G|(2g - 2) + sum (|G|/e_i)(e_i - 1)` for the cover genus
/// `h`. Non-integral or negative solutions signal impossible cover
/// data.
pub fn riemann_hurwitz_genus(group_order: u64, base_genus: u64, sig: &Signature) -> Result<u64> {
    if group_order == 0 {
        return Err(Error::Validation("group order 0".into()));
    }
    for &e in &sig.0 {
        if e < 2 || group_order % e != 0 {
            return Err(Error::Validation(format!(
                "ramification index {} does not divide the group order {}",
                e, group_order
            )));
        }
    }
    let mut rhs = group_order as i64 * (2 * base_genus as i64 - 2);
    for &e in &sig.0 {
        rhs += (group_order / e) as i64 * (e as i64 - 1);
    }
    if rhs % 2 != 0 || rhs + 2 < 0 {
        return Err(Error::Inconsistent(format!(
            "Riemann-Hurwitz gives 2h-2 = {}, no admissible genus",
            rhs
        )));
    }
    Ok(((rhs + 2) / 2) as u64)
}

/// Dimension `3g - 3 + n` of the Hurwitz space with base genus `g` and
/// `n` branch points.
pub fn hurwitz_dimension(g: u64, n: u64) -> Result<u64> {
    let dim = 3 * g as i64 - 3 + n as i64;
    if dim < 0 {
        return Err(Error::Validation(format!(
            "degenerate moduli: 3*{} - 3 + {} = {}",
            g, n, dim
        )));
    }
    Ok(dim as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gog::Mono;
    use crate::group::{alternating_group, cyclic_group, symmetric_group, FiniteGroup};
    use crate::perm::Perm;

    fn single_vertex(g: FiniteGroup) -> GraphOfGroups {
        let mut out = GraphOfGroups::new();
        out.add_vertex(0, g);
        out
    }

    #[test]
    fn branch_count_basics() {
        let a4 = branch_count(&single_vertex(alternating_group(4))).unwrap();
        assert_eq!(a4.n, 3);
        assert_eq!((a4.big_c, a4.c, a4.big_d, a4.d), (0, 0, 1, 0));

        let triv = branch_count(&single_vertex(FiniteGroup::trivial(1))).unwrap();
        assert_eq!(triv.n, 0);

        // two cyclic vertices over a trivial edge: n = 2*2 = 4
        let mut g = GraphOfGroups::new();
        g.add_vertex(0, cyclic_group(6)).add_vertex(1, cyclic_group(9));
        g.add_edge(
            0,
            0,
            1,
            FiniteGroup::trivial(1),
            Mono::new(vec![]),
            Mono::new(vec![]),
        );
        assert_eq!(branch_count(&g).unwrap().n, 4);
    }

    #[test]
    fn branch_count_requires_stability() {
        // full inclusion at a valency-1 endpoint is unstable
        let c2 = cyclic_group(2);
        let mut g = GraphOfGroups::new();
        g.add_vertex(0, c2.clone()).add_vertex(1, symmetric_group(3));
        let s3 = symmetric_group(3);
        let sub = crate::group::subgroup_generated(&s3, &[Perm::parse_cycles("(0 1)", 3).unwrap()])
            .unwrap();
        g.add_edge(0, 0, 1, c2.clone(), Mono::inclusion(&c2), Mono::new(sub.generators().to_vec()));
        assert!(matches!(branch_count(&g), Err(Error::Structural(_))));
    }

    fn s3_regular_path(len: usize) -> GraphOfGroups {
        // S3 vertices joined by C3 edges; <(0 1 2)> is maximal cyclic
        let s3 = symmetric_group(3);
        let c3 = cyclic_group(3);
        let rot = Perm::parse_cycles("(0 1 2)", 3).unwrap();
        let mut g = GraphOfGroups::new();
        for i in 0..len {
            g.add_vertex(i, s3.clone());
        }
        for i in 1..len {
            g.add_edge(
                i - 1,
                i - 1,
                i,
                c3.clone(),
                Mono::new(vec![rot.clone()]),
                Mono::new(vec![rot.clone()]),
            );
        }
        g
    }

    #[test]
    fn regular_tree_counts() {
        assert_eq!(
            regular_tree_branch_count(&single_vertex(alternating_group(4))).unwrap(),
            3
        );
        assert_eq!(regular_tree_branch_count(&s3_regular_path(2)).unwrap(), 4);
        assert_eq!(regular_tree_branch_count(&s3_regular_path(3)).unwrap(), 5);

        // local contributions telescope
        let t = s3_regular_path(3);
        let total: u64 = (0..3)
            .map(|v| regular_local_contribution(&t, v).unwrap())
            .sum();
        assert_eq!(total, 5);
        assert_eq!(regular_local_contribution(&t, 0).unwrap(), 2);
        assert_eq!(regular_local_contribution(&t, 1).unwrap(), 1);
        assert_eq!(
            regular_local_contribution(&single_vertex(symmetric_group(3)), 0).unwrap(),
            3
        );
    }

    #[test]
    fn regular_tree_rejections() {
        // cyclic vertex group
        assert!(regular_tree_branch_count(&single_vertex(cyclic_group(5))).is_err());

        // non-maximal cyclic edge image: C2 inside S4 sits under C4
        let s4 = symmetric_group(4);
        let c2 = cyclic_group(2);
        let sq = Perm::parse_cycles("(0 2)(1 3)", 4).unwrap(); // square of a 4-cycle
        let mut g = GraphOfGroups::new();
        g.add_vertex(0, s4.clone()).add_vertex(1, s4.clone());
        g.add_edge(0, 0, 1, c2, Mono::new(vec![sq.clone()]), Mono::new(vec![sq]));
        assert!(regular_tree_branch_count(&g).is_err());
    }

    #[test]
    fn pushout_examples() {
        let b1 = BranchLocus::new(["x".into(), "y".into()]);
        let b2 = BranchLocus::new(["u".into(), "v".into()]);
        let empty = BranchLocus::new([]);
        let none = BTreeMap::new();
        assert_eq!(
            branch_pushout(&b1, &b2, &empty, &none, &none).unwrap().len(),
            4
        );

        let bh = BranchLocus::new(["h".into()]);
        let f1: BTreeMap<String, String> = [("h".into(), "x".into())].into();
        let f2: BTreeMap<String, String> = [("h".into(), "u".into())].into();
        assert_eq!(branch_pushout(&b1, &b2, &bh, &f1, &f2).unwrap().len(), 3);

        // non-total map rejected
        assert!(branch_pushout(&b1, &b2, &bh, &none, &f2).is_err());
    }

    #[test]
    fn pushout_matches_regular_split() {
        // split a 2-vertex regular segment along its edge: each half is
        // a single regular vertex with 3 branch points, glued along the
        // 2 points of the edge cover
        let b1 = BranchLocus::new(["a1".into(), "a2".into(), "a3".into()]);
        let b2 = BranchLocus::new(["b1".into(), "b2".into(), "b3".into()]);
        let bh = BranchLocus::new(["e1".into(), "e2".into()]);
        let f1: BTreeMap<String, String> =
            [("e1".into(), "a1".into()), ("e2".into(), "a2".into())].into();
        let f2: BTreeMap<String, String> =
            [("e1".into(), "b1".into()), ("e2".into(), "b2".into())].into();
        let glued = branch_pushout(&b1, &b2, &bh, &f1, &f2).unwrap();
        assert_eq!(glued.len() as u64, regular_tree_branch_count(&s3_regular_path(2)).unwrap());
    }

    #[test]
    fn riemann_hurwitz_examples() {
        assert_eq!(
            riemann_hurwitz_genus(1, 5, &Signature(vec![])).unwrap(),
            5
        );
        for n in 2..10u64 {
            let sig = Signature(vec![n; 4]);
            assert_eq!(riemann_hurwitz_genus(n, 0, &sig).unwrap(), n - 1);
        }
        assert_eq!(
            riemann_hurwitz_genus(2, 0, &Signature(vec![2; 6])).unwrap(),
            2
        );
        // e_i must divide |G|
        assert!(riemann_hurwitz_genus(4, 0, &Signature(vec![3, 3, 3, 3])).is_err());
        // no admissible genus
        assert!(riemann_hurwitz_genus(2, 0, &Signature(vec![2])).is_err());
    }

    #[test]
    fn hurwitz_dimension_examples() {
        assert_eq!(hurwitz_dimension(0, 4).unwrap(), 1);
        assert_eq!(hurwitz_dimension(1, 0).unwrap(), 0);
        assert_eq!(hurwitz_dimension(3, 0).unwrap(), 6);
        assert!(hurwitz_dimension(0, 2).is_err());
    }
}
