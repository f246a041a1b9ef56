//! Finite permutation groups, enumerated exhaustively.
//!
//! Groups at the scale this crate targets (order up to a few thousand)
//! are stored as their full element set in deterministic lexicographic
//! order, which keeps class, subgroup and membership queries trivial.

use crate::perm::Perm;
use crate::{Error, Result};
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

/// Default cap on the order of an enumerated group.
pub const DEFAULT_ORDER_CAP: u64 = 10_000;

/// A fully enumerated finite permutation group.
#[derive(Clone)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}
impl Eq for FiniteGroup {}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FiniteGroup(degree {}, order {}, gens {:?})",
            self.degree,
            self.order(),
            self.generators
        )
    }
}

/// A conjugacy class, with a deterministic representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub representative: Perm,
    pub members: Vec<Perm>,
}

impl ConjClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
    pub fn contains(&self, p: &Perm) -> bool {
        self.members.binary_search(p).is_ok()
    }
    pub fn is_identity_class(&self) -> bool {
        self.representative.is_identity()
    }
    /// Order of (any) member.
    pub fn element_order(&self) -> u64 {
        self.representative.order()
    }
}

/// Finite subgroups of `PGL_2` over an algebraically closed field of
/// characteristic zero: the classical Klein list.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Pgl2Class {
    Cyclic(u64),
    Dihedral(u64),
    A4,
    S4,
    A5,
    NotEmbeddable,
}

impl Pgl2Class {
    pub fn is_embeddable(&self) -> bool {
        !matches!(self, Pgl2Class::NotEmbeddable)
    }
}

/// Closure of a generating set inside the symmetric group, with the
/// default order cap.
pub fn closure(degree: usize, gens: &[Perm]) -> Result<FiniteGroup> {
    closure_with_cap(degree, gens, DEFAULT_ORDER_CAP)
}

/// Closure with an explicit order cap.
pub fn closure_with_cap(degree: usize, gens: &[Perm], cap: u64) -> Result<FiniteGroup> {
    if degree == 0 {
        return Err(Error::Validation("degree 0 group".into()));
    }
    for g in gens {
        if g.degree() != degree {
            return Err(Error::Validation(format!(
                "generator {} has degree {}, expected {}",
                g,
                g.degree(),
                degree
            )));
        }
    }
    let mut set: BTreeSet<Perm> = BTreeSet::new();
    set.insert(Perm::identity(degree));
    let mut queue: VecDeque<Perm> = set.iter().cloned().collect();
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = p.compose(g);
            if set.insert(q.clone()) {
                if set.len() as u64 > cap {
                    return Err(Error::Resource(format!(
                        "group order exceeds cap {}",
                        cap
                    )));
                }
                queue.push_back(q);
            }
        }
    }
    let elements: Vec<Perm> = set.into_iter().collect();
    let index = elements
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    Ok(FiniteGroup {
        degree,
        generators: gens.to_vec(),
        elements,
        index,
    })
}

impl FiniteGroup {
    pub fn trivial(degree: usize) -> FiniteGroup {
        closure(degree, &[]).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Elements in lexicographic order on image arrays; the identity is
    /// always first.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    pub fn element_index(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements.iter().any(|p| p.order() == self.order())
    }

    /// Some element of maximal order; for a cyclic group, a generator.
    pub fn element_of_maximal_order(&self) -> &Perm {
        self.elements
            .iter()
            .max_by_key(|p| p.order())
            .expect("non-empty group")
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| a.compose(b) == b.compose(a))
        })
    }

    /// True iff `sub` is elementwise contained in `self`.
    pub fn contains_group(&self, sub: &FiniteGroup) -> bool {
        sub.degree == self.degree && sub.elements.iter().all(|p| self.contains(p))
    }

    /// Multiset of element orders, as (order, count) pairs.
    pub fn order_profile(&self) -> Vec<(u64, usize)> {
        let mut counts: HashMap<u64, usize> = HashMap::new();
        for p in &self.elements {
            *counts.entry(p.order()).or_insert(0) += 1;
        }
        let mut out: Vec<(u64, usize)> = counts.into_iter().collect();
        out.sort();
        out
    }
}

/// Conjugacy classes of `g`. The identity class comes first; the rest
/// are ordered by their minimal member.
pub fn conjugacy_classes(g: &FiniteGroup) -> Vec<ConjClass> {
    let mut remaining: BTreeSet<Perm> = g.elements().iter().cloned().collect();
    let mut classes = Vec::new();
    while let Some(rep) = remaining.iter().next().cloned() {
        let mut members = BTreeSet::new();
        for h in g.elements() {
            members.insert(rep.conjugate_by(h));
        }
        for m in &members {
            remaining.remove(m);
        }
        let members: Vec<Perm> = members.into_iter().collect();
        classes.push(ConjClass {
            representative: members[0].clone(),
            members,
        });
    }
    // The identity is lexicographically first, so it already leads;
    // assert rather than re-sort.
    debug_assert!(classes[0].is_identity_class());
    classes
}

/// The class of `p^{-1}` within a class list.
pub fn inverse_class_index(classes: &[ConjClass], class_idx: usize) -> usize {
    let inv = classes[class_idx].representative.inverse();
    classes
        .iter()
        .position(|c| c.contains(&inv))
        .expect("inverse lies in some class")
}

/// True iff the subset `s` of `g` generates all of `g`.
pub fn generates(g: &FiniteGroup, s: &[Perm]) -> Result<bool> {
    for p in s {
        if !g.contains(p) {
            return Err(Error::Validation(format!("{} is not an element of the group", p)));
        }
    }
    let h = closure_with_cap(g.degree(), s, g.order())?;
    Ok(h.order() == g.order())
}

/// Closure of a subset of `g`, as a subgroup at the same degree.
pub fn subgroup_generated(g: &FiniteGroup, s: &[Perm]) -> Result<FiniteGroup> {
    for p in s {
        if !g.contains(p) {
            return Err(Error::Validation(format!("{} is not an element of the group", p)));
        }
    }
    closure_with_cap(g.degree(), s, g.order())
}

/// All subgroups of `g`, deduplicated, ordered by (order, element list).
pub fn subgroups(g: &FiniteGroup) -> Vec<FiniteGroup> {
    let mut known: HashMap<Vec<Perm>, FiniteGroup> = HashMap::new();
    let trivial = FiniteGroup::trivial(g.degree());
    known.insert(trivial.elements().to_vec(), trivial);
    let mut frontier: Vec<Vec<Perm>> = known.keys().cloned().collect();
    while let Some(elems) = frontier.pop() {
        for x in g.elements() {
            if elems.contains(x) {
                continue;
            }
            let mut gens = elems.clone();
            gens.push(x.clone());
            let h = closure_with_cap(g.degree(), &gens, g.order()).expect("subgroup closure");
            let key = h.elements().to_vec();
            if !known.contains_key(&key) {
                frontier.push(key.clone());
                known.insert(key, h);
            }
        }
    }
    let mut out: Vec<FiniteGroup> = known.into_values().collect();
    out.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.elements().cmp(&b.elements()))
    });
    out
}

/// True iff `h` is normal in `g` (both at the same degree, `h <= g`).
pub fn is_normal(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    g.contains_group(h)
        && g.generators()
            .iter()
            .all(|x| h.elements().iter().all(|a| h.contains(&a.conjugate_by(x))))
}

/// A greedy small generating sequence: repeatedly add the first element
/// (largest order first, ties by enumeration order) that strictly grows
/// the generated subgroup.
pub fn greedy_generators(g: &FiniteGroup) -> Vec<Perm> {
    let mut by_order: Vec<&Perm> = g.elements().iter().collect();
    by_order.sort_by(|a, b| b.order().cmp(&a.order()).then_with(|| a.cmp(b)));
    let mut gens: Vec<Perm> = Vec::new();
    let mut current = FiniteGroup::trivial(g.degree());
    for x in by_order {
        if current.order() == g.order() {
            break;
        }
        if !current.contains(x) {
            let mut trial = gens.clone();
            trial.push(x.clone());
            current = closure_with_cap(g.degree(), &trial, g.order()).expect("subgroup");
            gens = trial;
        }
    }
    gens
}

/// Isomorphism test by brute force over generator images.
pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    if g.order() != h.order() {
        return false;
    }
    if g.order_profile() != h.order_profile() {
        return false;
    }
    let gens = greedy_generators(g);
    if gens.is_empty() {
        return true; // both trivial
    }
    let orders: Vec<u64> = gens.iter().map(|p| p.order()).collect();
    let candidates: Vec<Vec<&Perm>> = orders
        .iter()
        .map(|&o| h.elements().iter().filter(|p| p.order() == o).collect())
        .collect();
    let mut pick = vec![0usize; gens.len()];
    loop {
        let images: Vec<Perm> = pick
            .iter()
            .zip(&candidates)
            .map(|(&i, c)| c[i].clone())
            .collect();
        if extends_to_isomorphism(g, h, &gens, &images) {
            return true;
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == pick.len() {
                return false;
            }
            pick[pos] += 1;
            if pick[pos] < candidates[pos].len() {
                break;
            }
            pick[pos] = 0;
            pos += 1;
        }
    }
}

/// Checks whether generator-image assignments extend to a bijective
/// homomorphism, by closing the pair set under multiplication.
fn extends_to_isomorphism(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[Perm],
    images: &[Perm],
) -> bool {
    match pair_closure(gens, images) {
        Some(map) => {
            map.len() == g.order() as usize && {
                let image_set: HashSet<&Perm> = map.values().collect();
                image_set.len() == h.order() as usize
            }
        }
        None => false,
    }
}

/// Closes `{(gens[i], images[i])}` under pairwise products. Returns the
/// resulting map if it stays functional (i.e. defines a homomorphism on
/// the subgroup generated by `gens`), `None` otherwise.
pub fn pair_closure(gens: &[Perm], images: &[Perm]) -> Option<HashMap<Perm, Perm>> {
    debug_assert_eq!(gens.len(), images.len());
    let src_deg = gens.first().map(|p| p.degree()).unwrap_or(1);
    let dst_deg = images.first().map(|p| p.degree()).unwrap_or(1);
    let mut map: HashMap<Perm, Perm> = HashMap::new();
    map.insert(Perm::identity(src_deg), Perm::identity(dst_deg));
    let mut queue: VecDeque<Perm> = VecDeque::new();
    queue.push_back(Perm::identity(src_deg));
    for (a, x) in gens.iter().zip(images) {
        match map.get(a) {
            Some(y) if y != x => return None,
            Some(_) => {}
            None => {
                map.insert(a.clone(), x.clone());
                queue.push_back(a.clone());
            }
        }
    }
    while let Some(a) = queue.pop_front() {
        let x = map[&a].clone();
        for (b, y) in gens.iter().zip(images) {
            let ab = a.compose(b);
            let xy = x.compose(y);
            match map.get(&ab) {
                Some(z) => {
                    if *z != xy {
                        return None;
                    }
                }
                None => {
                    map.insert(ab.clone(), xy);
                    queue.push_back(ab);
                }
            }
        }
    }
    Some(map)
}

/// Classifies `g` against the finite subgroups of `PGL_2` in
/// characteristic zero: cyclic, dihedral (Klein four counts as `D_2`),
/// `A_4`, `S_4`, `A_5`, or not embeddable.
pub fn classify_pgl2_finite(g: &FiniteGroup) -> Pgl2Class {
    let n = g.order();
    if g.is_cyclic() {
        return Pgl2Class::Cyclic(n);
    }
    if n % 2 == 0 {
        let half = n / 2;
        if half >= 2 && is_isomorphic(g, &dihedral_group(half)) {
            return Pgl2Class::Dihedral(half);
        }
    }
    if n == 12 && is_isomorphic(g, &alternating_group(4)) {
        return Pgl2Class::A4;
    }
    if n == 24 && is_isomorphic(g, &symmetric_group(4)) {
        return Pgl2Class::S4;
    }
    if n == 60 && is_isomorphic(g, &alternating_group(5)) {
        return Pgl2Class::A5;
    }
    Pgl2Class::NotEmbeddable
}

/// Left cosets of `h` in `g`, each sorted, first element as representative.
/// The identity coset comes first.
pub fn left_cosets(g: &FiniteGroup, h: &FiniteGroup) -> Vec<Vec<Perm>> {
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut cosets = Vec::new();
    for x in g.elements() {
        if seen.contains(x) {
            continue;
        }
        let mut coset: Vec<Perm> = h.elements().iter().map(|a| x.compose(a)).collect();
        coset.sort();
        for y in &coset {
            seen.insert(y.clone());
        }
        cosets.push(coset);
    }
    cosets
}

/// The quotient `g / h` for normal `h`, realized by the left action of
/// `g` on the cosets of `h`.
pub fn quotient_action(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    if !is_normal(g, h) {
        return Err(Error::Validation("subgroup is not normal".into()));
    }
    let cosets = left_cosets(g, h);
    let coset_of = |p: &Perm| -> usize {
        cosets
            .iter()
            .position(|c| c.binary_search(p).is_ok())
            .expect("element in some coset")
    };
    let k = cosets.len();
    let gens: Vec<Perm> = g
        .generators()
        .iter()
        .map(|x| {
            let images: Vec<usize> = cosets
                .iter()
                .map(|c| coset_of(&c[0].compose(x)))
                .collect();
            Perm::new(images)
        })
        .collect::<Result<_>>()?;
    if k == 1 {
        return Ok(FiniteGroup::trivial(1));
    }
    closure(k, &gens)
}

// ---- templates -------------------------------------------------------

pub fn cyclic_group(n: u64) -> FiniteGroup {
    assert!(n >= 1);
    if n == 1 {
        return FiniteGroup::trivial(1);
    }
    let n = n as usize;
    let gen = Perm::new((0..n).map(|i| (i + 1) % n).collect()).unwrap();
    closure(n, &[gen]).unwrap()
}

/// `D_n` of order `2n`; `D_2` is the Klein four group, `D_1` is `C_2`.
pub fn dihedral_group(n: u64) -> FiniteGroup {
    assert!(n >= 1);
    match n {
        1 => cyclic_group(2),
        2 => {
            let a = Perm::parse_cycles("(0 1)", 4).unwrap();
            let b = Perm::parse_cycles("(2 3)", 4).unwrap();
            closure(4, &[a, b]).unwrap()
        }
        _ => {
            let n = n as usize;
            let r = Perm::new((0..n).map(|i| (i + 1) % n).collect()).unwrap();
            let s = Perm::new((0..n).map(|i| (n - i) % n).collect()).unwrap();
            closure(n, &[r, s]).unwrap()
        }
    }
}

pub fn symmetric_group(n: u64) -> FiniteGroup {
    assert!(n >= 2);
    let n = n as usize;
    let t = Perm::parse_cycles("(0 1)", n).unwrap();
    let c = Perm::new((0..n).map(|i| (i + 1) % n).collect()).unwrap();
    closure(n, &[t, c]).unwrap()
}

pub fn alternating_group(n: u64) -> FiniteGroup {
    assert!(n >= 3);
    let n = n as usize;
    let a = Perm::parse_cycles("(0 1 2)", n).unwrap();
    let b = if n % 2 == 1 {
        Perm::new((0..n).map(|i| (i + 1) % n).collect()).unwrap()
    } else {
        // (1 2 ... n-1), fixing 0
        Perm::new(
            (0..n)
                .map(|i| if i == 0 { 0 } else { i % (n - 1) + 1 })
                .collect(),
        )
        .unwrap()
    };
    closure(n, &[a, b]).unwrap()
}

/// The quaternion group of order 8, in its regular representation.
pub fn quaternion_group() -> FiniteGroup {
    let i = Perm::parse_cycles("(0 1 2 3)(4 7 6 5)", 8).unwrap();
    let j = Perm::parse_cycles("(0 4 2 6)(1 5 3 7)", 8).unwrap();
    let g = closure(8, &[i, j]).unwrap();
    debug_assert_eq!(g.order(), 8);
    g
}

/// Direct product acting on the disjoint union of the two domains.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let da = a.degree();
    let db = b.degree();
    let mut gens = Vec::new();
    for g in a.generators() {
        let mut images: Vec<usize> = (0..da + db).collect();
        for (i, item) in images.iter_mut().enumerate().take(da) {
            *item = g.apply(i);
        }
        gens.push(Perm::new(images).unwrap());
    }
    for g in b.generators() {
        let mut images: Vec<usize> = (0..da + db).collect();
        for i in 0..db {
            images[da + i] = da + g.apply(i);
        }
        gens.push(Perm::new(images).unwrap());
    }
    closure(da + db, &gens).unwrap()
}
