//! Certification of ramification data: genus-g generating systems, the
//! HM condition, Mumford type, Mumford-Schwarz type, and the virtual
//! variants.

use crate::group::{
    classify_pgl2_finite, conjugacy_classes, generates, is_normal, quotient_action,
    subgroup_generated, subgroups, ConjClass, FiniteGroup, Pgl2Class,
};
use crate::perm::Perm;
use crate::{Error, Result};

/// Default cap on the number of candidate tuples in exhaustive
/// searches.
pub const DEFAULT_SEARCH_CAP: u64 = 50_000_000;

/// An ordered tuple of non-identity conjugacy classes of a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationDatum {
    group: FiniteGroup,
    classes: Vec<ConjClass>,
}

impl RamificationDatum {
    /// Builds a datum from class representatives; each must be a
    /// non-identity member of the group.
    pub fn new(group: FiniteGroup, representatives: &[Perm]) -> Result<RamificationDatum> {
        let all = conjugacy_classes(&group);
        let mut classes = Vec::with_capacity(representatives.len());
        for rep in representatives {
            if rep.is_identity() {
                return Err(Error::Validation(
                    "identity class in ramification datum".into(),
                ));
            }
            let class = all
                .iter()
                .find(|c| c.contains(rep))
                .ok_or_else(|| {
                    Error::Validation(format!("{} is not an element of the group", rep))
                })?;
            classes.push(class.clone());
        }
        Ok(RamificationDatum { group, classes })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }
    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }
    pub fn len(&self) -> usize {
        self.classes.len()
    }
    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Reorders the classes.
    pub fn permuted(&self, order: &[usize]) -> Result<RamificationDatum> {
        let mut sorted: Vec<usize> = order.to_vec();
        sorted.sort();
        if sorted != (0..self.len()).collect::<Vec<_>>() {
            return Err(Error::Validation("not a permutation of class indices".into()));
        }
        Ok(RamificationDatum {
            group: self.group.clone(),
            classes: order.iter().map(|&i| self.classes[i].clone()).collect(),
        })
    }
}

/// Verdict on a product-one triple against the subgroups of
/// `PGL_2(C_p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum TriangleStatus {
    /// The generated group is on the finite embeddable list.
    FinitePgl2,
    /// Not finitely embeddable, but for p <= 5 infinite discrete
    /// triangle groups exist and the case stays open.
    PossibleInfiniteTriangle,
    /// Not embeddable and p > 5: no infinite discrete triangle groups.
    Excluded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct TriangleFlag {
    pub p: u64,
    pub status: TriangleStatus,
}

/// A Mumford-type certificate: a partition of the class indices into
/// pairs and triples with product-one representatives whose generated
/// subgroups embed into `PGL_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MumfordWitness {
    /// Blocks of class indices (size 2 or 3), partitioning `0..r`.
    pub blocks: Vec<Vec<usize>>,
    /// Chosen representative per class index.
    pub representatives: Vec<Perm>,
    /// Classification of each block's generated subgroup.
    pub classification: Vec<Pgl2Class>,
}

impl MumfordWitness {
    /// Re-checks every invariant against the datum it certifies.
    pub fn verify(&self, datum: &RamificationDatum) -> Result<()> {
        let r = datum.len();
        let mut covered = vec![false; r];
        if self.representatives.len() != r {
            return Err(Error::Inconsistent("wrong representative count".into()));
        }
        for (i, rep) in self.representatives.iter().enumerate() {
            if !datum.classes[i].contains(rep) {
                return Err(Error::Inconsistent(format!(
                    "representative {} not in class {}",
                    rep, i
                )));
            }
        }
        if self.classification.len() != self.blocks.len() {
            return Err(Error::Inconsistent("classification/block mismatch".into()));
        }
        for (block, class) in self.blocks.iter().zip(&self.classification) {
            if block.len() != 2 && block.len() != 3 {
                return Err(Error::Inconsistent("block size not 2 or 3".into()));
            }
            let mut product = Perm::identity(datum.group.degree());
            let mut gens = Vec::new();
            for &i in block {
                if i >= r || covered[i] {
                    return Err(Error::Inconsistent("blocks do not partition".into()));
                }
                covered[i] = true;
                product = product.compose(&self.representatives[i]);
                gens.push(self.representatives[i].clone());
            }
            if !product.is_identity() {
                return Err(Error::Inconsistent("block product is not the identity".into()));
            }
            let sub = subgroup_generated(&datum.group, &gens)?;
            let found = classify_pgl2_finite(&sub);
            if found == Pgl2Class::NotEmbeddable || found != *class {
                return Err(Error::Inconsistent(format!(
                    "block classifies as {:?}, witness claims {:?}",
                    found, class
                )));
            }
        }
        if !covered.iter().all(|&c| c) {
            return Err(Error::Inconsistent("blocks do not cover all classes".into()));
        }
        Ok(())
    }
}

/// Commutator `a b a^{-1} b^{-1}` in the left-to-right convention.
fn commutator(a: &Perm, b: &Perm) -> Perm {
    a.compose(b).compose(&a.inverse()).compose(&b.inverse())
}

/// True iff `tuple = (a_1, b_1, ..., a_g, b_g, g_1, ..., g_r)`
/// satisfies the surface relation `prod [a_j, b_j] prod g_i = 1` and
/// generates the group.
pub fn is_genus_g_system(group: &FiniteGroup, genus: u64, tuple: &[Perm]) -> Result<bool> {
    let handles = 2 * genus as usize;
    if tuple.len() < handles {
        return Err(Error::Validation(format!(
            "tuple of length {} is too short for genus {}",
            tuple.len(),
            genus
        )));
    }
    for p in tuple {
        if !group.contains(p) {
            return Err(Error::Validation(format!(
                "{} is not an element of the group",
                p
            )));
        }
    }
    let mut product = Perm::identity(group.degree());
    for pair in tuple[..handles].chunks(2) {
        product = product.compose(&commutator(&pair[0], &pair[1]));
    }
    for g in &tuple[handles..] {
        product = product.compose(g);
    }
    Ok(product.is_identity() && generates(group, tuple)?)
}

/// Deterministic exhaustive search for a genus-g generating system with
/// `g_i` drawn from the datum's classes. Returns the first witness in
/// lexicographic search order, or `None`.
pub fn exists_genus_g_system(
    group: &FiniteGroup,
    genus: u64,
    datum: &RamificationDatum,
    cap: u64,
) -> Result<Option<Vec<Perm>>> {
    if datum.group() != group {
        return Err(Error::Validation("datum is over a different group".into()));
    }
    let mut space: u128 = 1;
    for _ in 0..2 * genus {
        space *= group.order() as u128;
    }
    for c in datum.classes() {
        space *= c.len() as u128;
    }
    if space > cap as u128 {
        return Err(Error::Resource(format!(
            "search space {} exceeds cap {}",
            space, cap
        )));
    }
    let slots: Vec<&[Perm]> = (0..2 * genus as usize)
        .map(|_| group.elements())
        .chain(datum.classes().iter().map(|c| c.members.as_slice()))
        .collect();
    let mut pick = vec![0usize; slots.len()];
    if slots.is_empty() {
        return Ok(if is_genus_g_system(group, genus, &[])? {
            Some(vec![])
        } else {
            None
        });
    }
    loop {
        let tuple: Vec<Perm> = pick
            .iter()
            .zip(&slots)
            .map(|(&i, s)| s[i].clone())
            .collect();
        if is_genus_g_system(group, genus, &tuple)? {
            return Ok(Some(tuple));
        }
        let mut pos = slots.len();
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            pick[pos] += 1;
            if pick[pos] < slots[pos].len() {
                break;
            }
            pick[pos] = 0;
        }
    }
}

/// Checks the HM arrangement: 2r classes with class `i + r` the inverse
/// class of class `i`.
fn check_hm_arrangement(datum: &RamificationDatum) -> Result<usize> {
    if datum.len() % 2 != 0 {
        return Err(Error::Validation(format!(
            "HM datum needs an even class count, got {}",
            datum.len()
        )));
    }
    let r = datum.len() / 2;
    for i in 0..r {
        let inv = datum.classes[i].representative.inverse();
        if !datum.classes[i + r].contains(&inv) {
            return Err(Error::Validation(format!(
                "class {} is not the inverse class of class {}",
                i + r,
                i
            )));
        }
    }
    Ok(r)
}

/// The HM condition: removing any inverse pair `(C_i, C_{i+r})` from
/// the 2r classes leaves a generating union.
pub fn hm_condition(datum: &RamificationDatum) -> Result<bool> {
    let r = check_hm_arrangement(datum)?;
    for i in 0..r {
        let rest: Vec<Perm> = datum
            .classes
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i && j != i + r)
            .flat_map(|(_, c)| c.members.iter().cloned())
            .collect();
        if !generates(&datum.group, &rest)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The canonical all-pairs witness for an HM-arranged datum: index `i`
/// pairs with `i + r` via `(g_i, g_i^{-1})`.
pub fn hm_implies_mumford(datum: &RamificationDatum) -> Result<MumfordWitness> {
    let r = check_hm_arrangement(datum)?;
    let mut representatives = vec![Perm::identity(datum.group.degree()); datum.len()];
    let mut blocks = Vec::with_capacity(r);
    let mut classification = Vec::with_capacity(r);
    for i in 0..r {
        let g = datum.classes[i].representative.clone();
        representatives[i + r] = g.inverse();
        representatives[i] = g.clone();
        blocks.push(vec![i, i + r]);
        classification.push(Pgl2Class::Cyclic(g.order()));
    }
    let witness = MumfordWitness {
        blocks,
        representatives,
        classification,
    };
    witness.verify(datum)?;
    Ok(witness)
}

/// Number of partitions of an r-set into blocks of size 2 and 3.
fn pair_triple_partitions(r: usize) -> u128 {
    let mut memo = vec![0u128; r + 1];
    memo[0] = 1;
    for k in 1..=r {
        // the element 0 of a k-set joins a pair or a triple
        let mut total = 0u128;
        if k >= 2 {
            total += (k as u128 - 1) * memo[k - 2];
        }
        if k >= 3 {
            total += ((k as u128 - 1) * (k as u128 - 2) / 2) * memo[k - 3];
        }
        memo[k] = total;
    }
    memo[r]
}

/// Searches a pair block `(i, j)`: feasible iff `C_j` is the inverse
/// class of `C_i`; representatives are then `(g, g^{-1})`.
fn pair_block(datum: &RamificationDatum, i: usize, j: usize) -> Option<(Perm, Perm, Pgl2Class)> {
    let g = datum.classes[i].representative.clone();
    let ginv = g.inverse();
    if datum.classes[j].contains(&ginv) {
        let class = Pgl2Class::Cyclic(g.order());
        Some((g, ginv, class))
    } else {
        None
    }
}

/// Searches a triple block `(i, j, k)` for representatives with product
/// one generating an embeddable subgroup. `gamma_k` is forced to
/// `(gamma_i gamma_j)^{-1}`.
fn triple_block(
    datum: &RamificationDatum,
    i: usize,
    j: usize,
    k: usize,
) -> Result<Option<(Perm, Perm, Perm, Pgl2Class)>> {
    for gi in &datum.classes[i].members {
        for gj in &datum.classes[j].members {
            let gk = gi.compose(gj).inverse();
            if !datum.classes[k].contains(&gk) {
                continue;
            }
            let sub = subgroup_generated(&datum.group, &[gi.clone(), gj.clone()])?;
            let class = classify_pgl2_finite(&sub);
            if class != Pgl2Class::NotEmbeddable {
                return Ok(Some((gi.clone(), gj.clone(), gk, class)));
            }
        }
    }
    Ok(None)
}

/// Exhaustive deterministic search for a Mumford-type witness: a
/// partition of the classes into product-one pairs and triples whose
/// generated subgroups are finite `PGL_2` subgroups. Block order
/// follows the smallest uncovered index.
pub fn mumford_type_witness(
    datum: &RamificationDatum,
    cap: u64,
) -> Result<Option<MumfordWitness>> {
    let r = datum.len();
    let mut space = pair_triple_partitions(r);
    for c in &datum.classes {
        space = space.saturating_mul(c.len() as u128);
    }
    if space > cap as u128 {
        return Err(Error::Resource(format!(
            "search space {} exceeds cap {}",
            space, cap
        )));
    }
    let mut used = vec![false; r];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut reps = vec![Perm::identity(datum.group.degree()); r];
    let mut classes: Vec<Pgl2Class> = Vec::new();

    fn rec(
        datum: &RamificationDatum,
        used: &mut Vec<bool>,
        blocks: &mut Vec<Vec<usize>>,
        reps: &mut Vec<Perm>,
        classes: &mut Vec<Pgl2Class>,
    ) -> Result<bool> {
        let Some(i) = used.iter().position(|&u| !u) else {
            return Ok(true);
        };
        used[i] = true;
        let free: Vec<usize> = (i + 1..used.len()).filter(|&j| !used[j]).collect();
        for &j in &free {
            used[j] = true;
            if let Some((gi, gj, class)) = pair_block(datum, i, j) {
                reps[i] = gi;
                reps[j] = gj;
                blocks.push(vec![i, j]);
                classes.push(class);
                if rec(datum, used, blocks, reps, classes)? {
                    return Ok(true);
                }
                blocks.pop();
                classes.pop();
            }
            for &k in &free {
                if k <= j || used[k] {
                    continue;
                }
                used[k] = true;
                if let Some((gi, gj, gk, class)) = triple_block(datum, i, j, k)? {
                    reps[i] = gi;
                    reps[j] = gj;
                    reps[k] = gk;
                    blocks.push(vec![i, j, k]);
                    classes.push(class);
                    if rec(datum, used, blocks, reps, classes)? {
                        return Ok(true);
                    }
                    blocks.pop();
                    classes.pop();
                }
                used[k] = false;
            }
            used[j] = false;
        }
        used[i] = false;
        Ok(false)
    }

    if rec(datum, &mut used, &mut blocks, &mut reps, &mut classes)? {
        let witness = MumfordWitness {
            blocks,
            representatives: reps,
            classification: classes,
        };
        witness.verify(datum)?;
        Ok(Some(witness))
    } else {
        Ok(None)
    }
}

/// Classifies a product-one triple: finitely embeddable, possibly an
/// infinite discrete triangle group (only for p <= 5), or excluded.
pub fn mumford_schwarz_check(group: &FiniteGroup, triple: &[Perm], p: u64) -> Result<TriangleFlag> {
    if triple.len() != 3 {
        return Err(Error::Validation(format!(
            "expected a triple, got {} elements",
            triple.len()
        )));
    }
    let product = triple[0].compose(&triple[1]).compose(&triple[2]);
    if !product.is_identity() {
        return Err(Error::Validation(
            "triple product is not the identity".into(),
        ));
    }
    let sub = subgroup_generated(group, triple)?;
    let status = if classify_pgl2_finite(&sub) != Pgl2Class::NotEmbeddable {
        TriangleStatus::FinitePgl2
    } else if p <= 5 {
        TriangleStatus::PossibleInfiniteTriangle
    } else {
        TriangleStatus::Excluded
    };
    Ok(TriangleFlag { p, status })
}

/// One certified block of a virtual Mumford report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualBlock {
    pub indices: Vec<usize>,
    pub representatives: Vec<Perm>,
    /// Extra virtual monodromies completing a pair to a product-one
    /// triple; empty for genuine Mumford blocks.
    pub completions: Vec<Perm>,
    pub classification: Pgl2Class,
}

/// A virtual Mumford-type certificate: every block is a Mumford
/// pair/triple or a pair completed by an added monodromy to a finite
/// `PGL_2` triple; when completions were needed, the full completed
/// system generates the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualReport {
    pub blocks: Vec<VirtualBlock>,
}

impl VirtualReport {
    pub fn completions(&self) -> Vec<Perm> {
        self.blocks
            .iter()
            .flat_map(|b| b.completions.iter().cloned())
            .collect()
    }
}

/// Completes a pair `(i, j)` to a triple with an arbitrary third group
/// element: `gamma = (gamma_i gamma_j)^{-1}`, requiring the pair's
/// subgroup to be finitely embeddable.
fn completed_pair_block(
    datum: &RamificationDatum,
    i: usize,
    j: usize,
) -> Result<Option<(Perm, Perm, Perm, Pgl2Class)>> {
    for gi in &datum.classes[i].members {
        for gj in &datum.classes[j].members {
            let sub = subgroup_generated(&datum.group, &[gi.clone(), gj.clone()])?;
            let class = classify_pgl2_finite(&sub);
            if class != Pgl2Class::NotEmbeddable {
                let gamma = gi.compose(gj).inverse();
                return Ok(Some((gi.clone(), gj.clone(), gamma, class)));
            }
        }
    }
    Ok(None)
}

/// Searches for a virtual Mumford-type certificate: a partition into
/// pairs and triples where pairs may be completed by added virtual
/// monodromies. Returns the first report in deterministic order, or
/// `None`.
pub fn virtual_mumford_type(datum: &RamificationDatum, cap: u64) -> Result<Option<VirtualReport>> {
    let r = datum.len();
    if r == 1 {
        return Ok(None);
    }
    let mut space = pair_triple_partitions(r).saturating_mul(2);
    for c in &datum.classes {
        space = space.saturating_mul(c.len() as u128);
    }
    if space > cap as u128 {
        return Err(Error::Resource(format!(
            "search space {} exceeds cap {}",
            space, cap
        )));
    }

    fn rec(
        datum: &RamificationDatum,
        used: &mut Vec<bool>,
        blocks: &mut Vec<VirtualBlock>,
    ) -> Result<bool> {
        let Some(i) = used.iter().position(|&u| !u) else {
            let completions: Vec<Perm> = blocks
                .iter()
                .flat_map(|b| b.completions.iter().cloned())
                .collect();
            if completions.is_empty() {
                return Ok(true);
            }
            let mut system: Vec<Perm> = blocks
                .iter()
                .flat_map(|b| b.representatives.iter().cloned())
                .collect();
            system.extend(completions);
            return generates(&datum.group, &system);
        };
        used[i] = true;
        let free: Vec<usize> = (i + 1..used.len()).filter(|&j| !used[j]).collect();
        for &j in &free {
            used[j] = true;
            // genuine pair first, then a completed pair, then triples
            if let Some((gi, gj, class)) = pair_block(datum, i, j) {
                blocks.push(VirtualBlock {
                    indices: vec![i, j],
                    representatives: vec![gi, gj],
                    completions: vec![],
                    classification: class,
                });
                if rec(datum, used, blocks)? {
                    return Ok(true);
                }
                blocks.pop();
            }
            if let Some((gi, gj, gamma, class)) = completed_pair_block(datum, i, j)? {
                blocks.push(VirtualBlock {
                    indices: vec![i, j],
                    representatives: vec![gi, gj],
                    completions: vec![gamma],
                    classification: class,
                });
                if rec(datum, used, blocks)? {
                    return Ok(true);
                }
                blocks.pop();
            }
            for &k in &free {
                if k <= j || used[k] {
                    continue;
                }
                used[k] = true;
                if let Some((gi, gj, gk, class)) = triple_block(datum, i, j, k)? {
                    blocks.push(VirtualBlock {
                        indices: vec![i, j, k],
                        representatives: vec![gi, gj, gk],
                        completions: vec![],
                        classification: class,
                    });
                    if rec(datum, used, blocks)? {
                        return Ok(true);
                    }
                    blocks.pop();
                }
                used[k] = false;
            }
            used[j] = false;
        }
        used[i] = false;
        Ok(false)
    }

    let mut used = vec![false; r];
    let mut blocks = Vec::new();
    if rec(datum, &mut used, &mut blocks)? {
        Ok(Some(VirtualReport { blocks }))
    } else {
        Ok(None)
    }
}

/// Composite criterion for the split-extension realization: `H` (the
/// datum's group) is normal in `big`, the datum is virtually of Mumford
/// type, the quotient `big/H` needs at most `genus` generators, and the
/// extension splits (a complement subgroup exists).
pub fn type_am_criterion(
    big: &FiniteGroup,
    datum: &RamificationDatum,
    genus: u64,
    cap: u64,
) -> Result<bool> {
    let h = datum.group();
    if !big.contains_group(h) {
        return Err(Error::Validation(
            "datum group is not a subgroup of the ambient group".into(),
        ));
    }
    if !is_normal(big, h) {
        return Ok(false);
    }
    if virtual_mumford_type(datum, cap)?.is_none() {
        return Ok(false);
    }
    let quotient = quotient_action(big, h)?;
    if crate::group::greedy_generators(&quotient).len() as u64 > genus {
        return Ok(false);
    }
    let index = big.order() / h.order();
    let splits = subgroups(big).iter().any(|k| {
        k.order() == index
            && k.elements()
                .iter()
                .filter(|x| h.contains(x))
                .count()
                == 1
    });
    Ok(splits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{
        alternating_group, cyclic_group, direct_product, symmetric_group,
    };

    const CAP: u64 = 50_000_000;

    fn c_gen(n: u64) -> Perm {
        cyclic_group(n).element_of_maximal_order().clone()
    }

    #[test]
    fn genus_system_checks() {
        let c2 = cyclic_group(2);
        let a = c_gen(2);
        assert!(is_genus_g_system(&c2, 0, &[a.clone(), a.clone()]).unwrap());

        let c3 = cyclic_group(3);
        let b = c_gen(3);
        assert!(!is_genus_g_system(&c3, 0, &[b.clone(), b.clone()]).unwrap());

        // genus 1, r = 0: [a, a] = 1 and <a> = C6
        let c6 = cyclic_group(6);
        let g6 = c6.element_of_maximal_order().clone();
        assert!(is_genus_g_system(&c6, 1, &[g6.clone(), g6]).unwrap());

        assert!(is_genus_g_system(&c2, 1, &[a]).is_err());
    }

    #[test]
    fn genus_system_conjugation_invariance() {
        let s3 = symmetric_group(3);
        let t = Perm::parse_cycles("(0 1)", 3).unwrap();
        let u = Perm::parse_cycles("(0 2)", 3).unwrap();
        let w = t.compose(&u).inverse();
        let tuple = vec![t, u, w];
        assert!(is_genus_g_system(&s3, 0, &tuple).unwrap());
        for h in s3.elements() {
            let conj: Vec<Perm> = tuple.iter().map(|x| x.conjugate_by(h)).collect();
            assert!(is_genus_g_system(&s3, 0, &conj).unwrap());
        }
    }

    #[test]
    fn exists_genus_system_examples() {
        let c2 = cyclic_group(2);
        let a = c_gen(2);
        let d = RamificationDatum::new(c2.clone(), &[a.clone(), a.clone()]).unwrap();
        let found = exists_genus_g_system(&c2, 0, &d, CAP).unwrap().unwrap();
        assert!(is_genus_g_system(&c2, 0, &found).unwrap());

        let c3 = cyclic_group(3);
        let b = c_gen(3);
        let d = RamificationDatum::new(c3.clone(), &[b.clone(), b.clone()]).unwrap();
        assert!(exists_genus_g_system(&c3, 0, &d, CAP).unwrap().is_none());

        let s3 = symmetric_group(3);
        let t = Perm::parse_cycles("(0 1)", 3).unwrap();
        let r = Perm::parse_cycles("(0 1 2)", 3).unwrap();
        let d = RamificationDatum::new(s3.clone(), &[t.clone(), t, r]).unwrap();
        let found = exists_genus_g_system(&s3, 0, &d, CAP).unwrap().unwrap();
        assert!(is_genus_g_system(&s3, 0, &found).unwrap());

        // cap enforcement
        assert!(matches!(
            exists_genus_g_system(&s3, 2, &d, 10),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn hm_condition_examples() {
        let c2 = cyclic_group(2);
        let a = c_gen(2);
        let d = RamificationDatum::new(c2, &[a.clone(), a]).unwrap();
        assert!(!hm_condition(&d).unwrap());

        let s3 = symmetric_group(3);
        let t = Perm::parse_cycles("(0 1)", 3).unwrap();
        let r = Perm::parse_cycles("(0 1 2)", 3).unwrap();
        let tttt =
            RamificationDatum::new(s3.clone(), &[t.clone(), t.clone(), t.clone(), t.clone()])
                .unwrap();
        assert!(hm_condition(&tttt).unwrap());

        let trtr = RamificationDatum::new(s3.clone(), &[t.clone(), r.clone(), t.clone(), r.inverse()])
            .unwrap();
        assert!(!hm_condition(&trtr).unwrap());

        // arrangement violation: class 2 is not the inverse of class 0
        let bad = RamificationDatum::new(s3, &[t.clone(), r.clone(), r, t]).unwrap();
        assert!(hm_condition(&bad).is_err());
    }

    #[test]
    fn hm_witness() {
        let s3 = symmetric_group(3);
        let t = Perm::parse_cycles("(0 1)", 3).unwrap();
        let r = Perm::parse_cycles("(0 1 2)", 3).unwrap();
        let d = RamificationDatum::new(s3, &[t.clone(), r.clone(), t, r.inverse()]).unwrap();
        let w = hm_implies_mumford(&d).unwrap();
        assert_eq!(w.blocks, vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(
            w.classification,
            vec![Pgl2Class::Cyclic(2), Pgl2Class::Cyclic(3)]
        );
        w.verify(&d).unwrap();
    }

    #[test]
    fn mumford_witness_pairs_and_triples() {
        // S3: two inverse 3-cycle slots and two transposition slots
        let s3 = symmetric_group(3);
        let t = Perm::parse_cycles("(0 1)", 3).unwrap();
        let r = Perm::parse_cycles("(0 1 2)", 3).unwrap();
        let d = RamificationDatum::new(s3, &[r.clone(), r.inverse(), t.clone(), t]).unwrap();
        let w = mumford_type_witness(&d, CAP).unwrap().unwrap();
        assert!(w.blocks.iter().all(|b| b.len() == 2));
        w.verify(&d).unwrap();

        // A4 is a (2, 3, 3) group: triple witness
        let a4 = alternating_group(4);
        let dt = Perm::parse_cycles("(0 1)(2 3)", 4).unwrap();
        let r1 = Perm::parse_cycles("(0 1 2)", 4).unwrap();
        let prod = dt.compose(&r1).inverse();
        let d = RamificationDatum::new(a4, &[dt, r1, prod]).unwrap();
        let w = mumford_type_witness(&d, CAP).unwrap().unwrap();
        assert_eq!(w.blocks, vec![vec![0, 1, 2]]);
        assert_eq!(w.classification, vec![Pgl2Class::A4]);
        w.verify(&d).unwrap();

        // empty datum: vacuous witness
        let d = RamificationDatum::new(cyclic_group(2), &[]).unwrap();
        let w = mumford_type_witness(&d, CAP).unwrap().unwrap();
        assert!(w.blocks.is_empty());
    }

    #[test]
    fn mumford_witness_reorder_invariant() {
        let s3 = symmetric_group(3);
        let t = Perm::parse_cycles("(0 1)", 3).unwrap();
        let r = Perm::parse_cycles("(0 1 2)", 3).unwrap();
        let d = RamificationDatum::new(s3, &[r.clone(), r.inverse(), t.clone(), t]).unwrap();
        for order in [[0, 1, 2, 3], [3, 1, 0, 2], [2, 3, 1, 0]] {
            let shuffled = d.permuted(&order).unwrap();
            assert!(mumford_type_witness(&shuffled, CAP).unwrap().is_some());
        }
    }

    #[test]
    fn mumford_witness_absent_for_flat_abelian() {
        // C3 x C3 with a forced generating triple: every product-one
        // assignment generates the whole group, which is not a PGL2
        // subgroup; pairs are impossible between distinct factors.
        let g = direct_product(&cyclic_group(3), &cyclic_group(3));
        let a = g.generators()[0].clone();
        let b = g.generators()[1].clone();
        let c = a.compose(&b).inverse();
        let d = RamificationDatum::new(g, &[a, b, c]).unwrap();
        assert!(mumford_type_witness(&d, CAP).unwrap().is_none());
        assert!(virtual_mumford_type(&d, CAP).unwrap().is_none());
    }

    #[test]
    fn mumford_schwarz_cases() {
        let a4 = alternating_group(4);
        let dt = Perm::parse_cycles("(0 1)(2 3)", 4).unwrap();
        let r1 = Perm::parse_cycles("(0 1 2)", 4).unwrap();
        let third = dt.compose(&r1).inverse();
        let flag = mumford_schwarz_check(&a4, &[dt, r1, third], 7).unwrap();
        assert_eq!(flag.status, TriangleStatus::FinitePgl2);

        let g = direct_product(&cyclic_group(3), &cyclic_group(3));
        let a = g.generators()[0].clone();
        let b = g.generators()[1].clone();
        let c = a.compose(&b).inverse();
        let triple = [a, b, c];
        assert_eq!(
            mumford_schwarz_check(&g, &triple, 7).unwrap().status,
            TriangleStatus::Excluded
        );
        assert_eq!(
            mumford_schwarz_check(&g, &triple, 3).unwrap().status,
            TriangleStatus::PossibleInfiniteTriangle
        );

        // bad product: x^3 is not the identity in C4
        let c4 = cyclic_group(4);
        let x = c_gen(4);
        assert!(mumford_schwarz_check(&c4, &[x.clone(), x.clone(), x], 3).is_err());
    }

    #[test]
    fn virtual_type_completion() {
        // S3 with (transpositions, 3-cycles): no pair, but completable
        let s3 = symmetric_group(3);
        let t = Perm::parse_cycles("(0 1)", 3).unwrap();
        let r = Perm::parse_cycles("(0 1 2)", 3).unwrap();
        let d = RamificationDatum::new(s3.clone(), &[t, r]).unwrap();
        assert!(mumford_type_witness(&d, CAP).unwrap().is_none());
        let report = virtual_mumford_type(&d, CAP).unwrap().unwrap();
        assert_eq!(report.blocks.len(), 1);
        assert_eq!(report.completions().len(), 1);
        // completed system generates
        let mut system = report.blocks[0].representatives.clone();
        system.extend(report.completions());
        assert!(generates(&s3, &system).unwrap());

        // a genuine Mumford datum is subsumed with no completions
        let t = Perm::parse_cycles("(0 1)", 3).unwrap();
        let d = RamificationDatum::new(s3, &[t.clone(), t]).unwrap();
        let report = virtual_mumford_type(&d, CAP).unwrap().unwrap();
        assert!(report.completions().is_empty());
    }

    #[test]
    fn type_am_composite() {
        // G = S3, H = A3: normal, pair datum over H, quotient C2 needs
        // one generator, complement <(0 1)> exists
        let s3 = symmetric_group(3);
        let r = Perm::parse_cycles("(0 1 2)", 3).unwrap();
        let h = subgroup_generated(&s3, &[r.clone()]).unwrap();
        let d = RamificationDatum::new(h, &[r.clone(), r.inverse()]).unwrap();
        assert!(type_am_criterion(&s3, &d, 1, CAP).unwrap());
        // zero generators allowed for the quotient: fails
        assert!(!type_am_criterion(&s3, &d, 0, CAP).unwrap());

        // non-normal H = <(0 1)>
        let t = Perm::parse_cycles("(0 1)", 3).unwrap();
        let h2 = subgroup_generated(&s3, &[t.clone()]).unwrap();
        let d2 = RamificationDatum::new(h2, &[t.clone(), t]).unwrap();
        assert!(!type_am_criterion(&s3, &d2, 1, CAP).unwrap());
    }

    #[test]
    fn datum_validation() {
        let c2 = cyclic_group(2);
        assert!(RamificationDatum::new(c2.clone(), &[Perm::identity(2)]).is_err());
        let foreign = Perm::parse_cycles("(0 1 2)", 3).unwrap();
        assert!(RamificationDatum::new(c2, &[foreign]).is_err());
    }
}
