//! Cross-cutting structural invariants checked at suite scale.

use starret::construct::{harbater_paste, realize};
use starret::group::{
    alternating_group, cyclic_group, dihedral_group, direct_product, generates, quaternion_group,
    subgroups, symmetric_group,
};
use starret::presentation::{abelianization, hom_count};
use starret::{FiniteGroup, Perm};

fn corpus() -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> = Vec::new();
    for n in [2u64, 3, 4, 5, 6, 7, 8, 9, 10, 12] {
        out.push((format!("C{}", n), cyclic_group(n)));
    }
    out.push(("V4".into(), dihedral_group(2)));
    out.push((
        "C2xC2xC2".into(),
        direct_product(&direct_product(&cyclic_group(2), &cyclic_group(2)), &cyclic_group(2)),
    ));
    out.push(("C3xC3".into(), direct_product(&cyclic_group(3), &cyclic_group(3))));
    out.push(("S3".into(), symmetric_group(3)));
    out.push(("D4".into(), dihedral_group(4)));
    out.push(("D5".into(), dihedral_group(5)));
    out.push(("D6".into(), dihedral_group(6)));
    out.push(("Q8".into(), quaternion_group()));
    out.push(("A4".into(), alternating_group(4)));
    out.push(("S4".into(), symmetric_group(4)));
    out
}

/// Pasting two subgroup covers yields a connected covering graph
/// exactly when the two subgroups generate the ambient group.
#[test]
fn paste_connectivity_matches_generation() {
    for (name, big) in corpus() {
        let subs: Vec<FiniteGroup> = subgroups(&big)
            .into_iter()
            .filter(|h| !h.is_trivial())
            .collect();
        let specs: Vec<_> = subs
            .iter()
            .map(|h| realize(h, 2).unwrap_or_else(|e| panic!("{}: {}", name, e)))
            .collect();
        for (i, h1) in subs.iter().enumerate() {
            for (j, h2) in subs.iter().enumerate() {
                let paste = harbater_paste(&specs[i], &specs[j], &big)
                    .unwrap_or_else(|e| panic!("{} pair ({},{}): {}", name, i, j, e));
                let mut union: Vec<Perm> = h1.elements().to_vec();
                union.extend(h2.elements().iter().cloned());
                let expect = generates(&big, &union).unwrap();
                assert_eq!(
                    paste.delta_connected, expect,
                    "{} pair ({},{})",
                    name, i, j
                );
            }
        }
    }
}

/// The fundamental presentation depends on the spanning tree chosen,
/// but its abelianization and homomorphism counts do not.
#[test]
fn presentation_tree_independence() {
    use starret::gog::{GraphOfGroups, Mono};
    let mut g = GraphOfGroups::new();
    let s3 = symmetric_group(3);
    let c3 = cyclic_group(3);
    let rot = Perm::parse_cycles("(0 1 2)", 3).unwrap();
    g.add_vertex(0, s3.clone());
    g.add_vertex(1, c3.clone());
    g.add_vertex(2, s3.clone());
    let m_s3 = Mono::new(vec![rot.clone()]);
    let m_c3 = Mono::inclusion(&c3);
    g.add_edge(0, 0, 2, FiniteGroup::trivial(1), Mono::new(vec![]), Mono::new(vec![]));
    g.add_edge(1, 0, 1, c3.clone(), m_s3.clone(), m_c3.clone());
    g.add_edge(2, 1, 2, c3.clone(), m_c3.clone(), m_s3.clone());
    g.add_edge(3, 0, 2, c3.clone(), m_s3.clone(), m_s3.clone());
    let t1 = g.spanning_tree();
    let t2 = g.spanning_tree_preferring_nontrivial();
    assert_ne!(t1, t2);
    let p1 = g.fundamental_presentation(&t1).unwrap().presentation;
    let p2 = g.fundamental_presentation(&t2).unwrap().presentation;
    assert_eq!(abelianization(&p1), abelianization(&p2));
    for target in [cyclic_group(2), cyclic_group(3), symmetric_group(3)] {
        assert_eq!(
            hom_count(&p1, &target, u64::MAX).unwrap(),
            hom_count(&p2, &target, u64::MAX).unwrap()
        );
    }
}
