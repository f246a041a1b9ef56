//! Graphs of finite groups with cusps (*-graphs) and the moves on
//! them: admissible contraction, slides, stabilization, Bass-Serre
//! presentations.
//!
//! Cusps are first-class half-edges marking branch points; their
//! stabilizers are the decomposition groups. The infinite part of a
//! *-graph is never materialized, only the finite part plus cusp
//! markers.

use crate::group::{pair_closure, FiniteGroup};
use crate::perm::Perm;
use crate::presentation::Presentation;
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

/// A group embedding, stored as the images of the source group's
/// generators. The full element map is recovered by closing the
/// generator/image pairs under multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mono {
    gen_images: Vec<Perm>,
}

impl Mono {
    pub fn new(gen_images: Vec<Perm>) -> Mono {
        Mono { gen_images }
    }

    /// The inclusion of a subgroup: generators map to themselves.
    pub fn inclusion(src: &FiniteGroup) -> Mono {
        Mono {
            gen_images: src.generators().to_vec(),
        }
    }

    pub fn gen_images(&self) -> &[Perm] {
        &self.gen_images
    }

    /// The full element map, verified to be an injective homomorphism
    /// from `src` into `dst`.
    pub fn element_map(
        &self,
        src: &FiniteGroup,
        dst: &FiniteGroup,
    ) -> std::result::Result<HashMap<Perm, Perm>, String> {
        if self.gen_images.len() != src.generators().len() {
            return Err(format!(
                "expected {} generator images, got {}",
                src.generators().len(),
                self.gen_images.len()
            ));
        }
        for img in &self.gen_images {
            if !dst.contains(img) {
                return Err(format!("image {} is not a member of the target group", img));
            }
        }
        let map = pair_closure(src.generators(), &self.gen_images)
            .ok_or_else(|| "generator images do not define a homomorphism".to_string())?;
        if map.len() != src.order() as usize {
            return Err("generator images do not cover the source group".to_string());
        }
        let image: BTreeSet<&Perm> = map.values().collect();
        if image.len() != map.len() {
            return Err("map is not injective".to_string());
        }
        Ok(map)
    }

    /// Image subgroup inside `dst`.
    pub fn image(&self, src: &FiniteGroup, dst: &FiniteGroup) -> Result<FiniteGroup> {
        self.element_map(src, dst)
            .map_err(Error::Validation)?;
        crate::group::subgroup_generated(dst, &self.gen_images)
    }

    /// Post-composition with conjugation by `c`: `x -> c·x·c^{-1}`.
    pub fn conjugated(&self, c: &Perm) -> Mono {
        Mono {
            gen_images: self
                .gen_images
                .iter()
                .map(|p| p.conjugate_by(c))
                .collect(),
        }
    }

    /// Post-composition with an element map.
    fn composed_with(&self, via: &HashMap<Perm, Perm>) -> std::result::Result<Mono, String> {
        let gen_images = self
            .gen_images
            .iter()
            .map(|p| {
                via.get(p)
                    .cloned()
                    .ok_or_else(|| format!("{} not in domain of composition map", p))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Mono { gen_images })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: usize,
    pub group: FiniteGroup,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: usize,
    pub from: usize,
    pub to: usize,
    pub group: FiniteGroup,
    pub into_from: Mono,
    pub into_to: Mono,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.from == self.to
    }
}

/// A cusp: a half-edge with a cyclic stabilizer embedding into its
/// vertex group. The stabilizer order is the ramification index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cusp {
    pub id: usize,
    pub vertex: usize,
    pub group: FiniteGroup,
    pub into_vertex: Mono,
}

/// Which end of an edge a move refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum End {
    Origin,
    Terminal,
}

/// An ordered list of ramification orders, each at least 2.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Signature(pub Vec<u64>);

impl Signature {
    pub fn new(orders: Vec<u64>) -> Result<Signature> {
        if let Some(&e) = orders.iter().find(|&&e| e < 2) {
            return Err(Error::Validation(format!("signature entry {} < 2", e)));
        }
        Ok(Signature(orders))
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Empty,
    DuplicateVertexId(usize),
    DuplicateEdgeId(usize),
    DuplicateCuspId(usize),
    EdgeEndpointMissing { edge: usize, vertex: usize },
    CuspVertexMissing { cusp: usize, vertex: usize },
    EdgeMono { edge: usize, end: End, reason: String },
    CuspMono { cusp: usize, reason: String },
    CuspNotCyclic { cusp: usize },
    Disconnected,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "graph has no vertices"),
            Violation::DuplicateVertexId(id) => write!(f, "duplicate vertex id {}", id),
            Violation::DuplicateEdgeId(id) => write!(f, "duplicate edge id {}", id),
            Violation::DuplicateCuspId(id) => write!(f, "duplicate cusp id {}", id),
            Violation::EdgeEndpointMissing { edge, vertex } => {
                write!(f, "edge {} references missing vertex {}", edge, vertex)
            }
            Violation::CuspVertexMissing { cusp, vertex } => {
                write!(f, "cusp {} references missing vertex {}", cusp, vertex)
            }
            Violation::EdgeMono { edge, end, reason } => {
                write!(f, "edge {} {:?} embedding: {}", edge, end, reason)
            }
            Violation::CuspMono { cusp, reason } => {
                write!(f, "cusp {} embedding: {}", cusp, reason)
            }
            Violation::CuspNotCyclic { cusp } => {
                write!(f, "cusp {} stabilizer is not cyclic", cusp)
            }
            Violation::Disconnected => write!(f, "underlying graph is disconnected"),
        }
    }
}

/// A finite connected graph with vertex/edge groups, edge-to-endpoint
/// monomorphisms, and cusps. Loops are permitted. Immutable: every
/// move returns a new graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphOfGroups {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub cusps: Vec<Cusp>,
}

impl GraphOfGroups {
    pub fn new() -> GraphOfGroups {
        GraphOfGroups {
            vertices: Vec::new(),
            edges: Vec::new(),
            cusps: Vec::new(),
        }
    }

    pub fn add_vertex(&mut self, id: usize, group: FiniteGroup) -> &mut Self {
        self.vertices.push(Vertex { id, group });
        self
    }

    pub fn add_edge(
        &mut self,
        id: usize,
        from: usize,
        to: usize,
        group: FiniteGroup,
        into_from: Mono,
        into_to: Mono,
    ) -> &mut Self {
        self.edges.push(Edge {
            id,
            from,
            to,
            group,
            into_from,
            into_to,
        });
        self
    }

    pub fn add_cusp(
        &mut self,
        id: usize,
        vertex: usize,
        group: FiniteGroup,
        into_vertex: Mono,
    ) -> &mut Self {
        self.cusps.push(Cusp {
            id,
            vertex,
            group,
            into_vertex,
        });
        self
    }

    pub fn vertex(&self, id: usize) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    pub fn edge(&self, id: usize) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn cusp(&self, id: usize) -> Option<&Cusp> {
        self.cusps.iter().find(|c| c.id == id)
    }

    /// Number of edge ends at `vertex` (a loop counts twice); cusps are
    /// not counted.
    pub fn valency(&self, vertex: usize) -> usize {
        self.edges
            .iter()
            .map(|e| (e.from == vertex) as usize + (e.to == vertex) as usize)
            .sum()
    }

    fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(self.vertices[0].id);
        queue.push_back(self.vertices[0].id);
        while let Some(v) = queue.pop_front() {
            for e in &self.edges {
                for w in [e.from, e.to] {
                    if (e.from == v || e.to == v) && seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// Checks all type invariants. An empty list means the graph is
    /// well formed; each violation names the offending item.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.vertices.is_empty() {
            out.push(Violation::Empty);
            return out;
        }
        let mut seen = BTreeSet::new();
        for v in &self.vertices {
            if !seen.insert(v.id) {
                out.push(Violation::DuplicateVertexId(v.id));
            }
        }
        let mut seen = BTreeSet::new();
        for e in &self.edges {
            if !seen.insert(e.id) {
                out.push(Violation::DuplicateEdgeId(e.id));
            }
        }
        let mut seen = BTreeSet::new();
        for c in &self.cusps {
            if !seen.insert(c.id) {
                out.push(Violation::DuplicateCuspId(c.id));
            }
        }
        for e in &self.edges {
            for (end, vid, mono) in [
                (End::Origin, e.from, &e.into_from),
                (End::Terminal, e.to, &e.into_to),
            ] {
                match self.vertex(vid) {
                    None => out.push(Violation::EdgeEndpointMissing {
                        edge: e.id,
                        vertex: vid,
                    }),
                    Some(v) => {
                        if let Err(reason) = mono.element_map(&e.group, &v.group) {
                            out.push(Violation::EdgeMono {
                                edge: e.id,
                                end,
                                reason,
                            });
                        }
                    }
                }
            }
        }
        for c in &self.cusps {
            if !c.group.is_cyclic() {
                out.push(Violation::CuspNotCyclic { cusp: c.id });
            }
            match self.vertex(c.vertex) {
                None => out.push(Violation::CuspVertexMissing {
                    cusp: c.id,
                    vertex: c.vertex,
                }),
                Some(v) => {
                    if let Err(reason) = c.into_vertex.element_map(&c.group, &v.group) {
                        out.push(Violation::CuspMono {
                            cusp: c.id,
                            reason,
                        });
                    }
                }
            }
        }
        if !self.is_connected() {
            out.push(Violation::Disconnected);
        }
        out
    }

    fn require_valid(&self) -> Result<()> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(
                violations
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join("; "),
            ))
        }
    }

    /// Stability: every vertex of valency at most 2 has all incident
    /// edge groups mapping to proper subgroups of its vertex group.
    pub fn is_stable(&self) -> Result<bool> {
        self.require_valid()?;
        for v in &self.vertices {
            if self.valency(v.id) > 2 {
                continue;
            }
            for e in &self.edges {
                for (vid, _mono) in [(e.from, &e.into_from), (e.to, &e.into_to)] {
                    if vid == v.id && e.group.order() == v.group.order() {
                        // injective with equal order means the image is
                        // the whole vertex group
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Which absorbing direction an admissible contraction of `edge`
    /// would use: `Some(End::Origin)` means the origin vertex is
    /// absorbed into the terminal one.
    pub fn contraction_direction(&self, edge_id: usize) -> Option<End> {
        let e = self.edge(edge_id)?;
        if e.is_loop() {
            return None;
        }
        let from = self.vertex(e.from)?;
        let to = self.vertex(e.to)?;
        if e.group.order() == from.group.order() {
            Some(End::Origin)
        } else if e.group.order() == to.group.order() {
            Some(End::Terminal)
        } else {
            None
        }
    }

    /// Admissible edge contraction: the edge group must map onto the
    /// full group of at least one endpoint, and the edge must not be a
    /// loop. The matched endpoint is merged into the other one; all
    /// other incident edges and cusps are re-attached with composed
    /// monomorphisms.
    pub fn contract(&self, edge_id: usize) -> Result<GraphOfGroups> {
        self.require_valid()?;
        let e = self
            .edge(edge_id)
            .ok_or_else(|| Error::Validation(format!("no edge {}", edge_id)))?;
        if e.is_loop() {
            return Err(Error::Inadmissible(format!(
                "edge {} is a loop and cannot be contracted",
                edge_id
            )));
        }
        let dir = self.contraction_direction(edge_id).ok_or_else(|| {
            Error::Inadmissible(format!(
                "edge {} group matches neither endpoint group",
                edge_id
            ))
        })?;
        let (absorbed, kept, m_absorbed, m_kept) = match dir {
            End::Origin => (e.from, e.to, &e.into_from, &e.into_to),
            End::Terminal => (e.to, e.from, &e.into_to, &e.into_from),
        };
        let absorbed_group = &self.vertex(absorbed).unwrap().group;
        let kept_group = &self.vertex(kept).unwrap().group;
        let map_a = m_absorbed
            .element_map(&e.group, absorbed_group)
            .map_err(Error::Validation)?;
        let map_k = m_kept
            .element_map(&e.group, kept_group)
            .map_err(Error::Validation)?;
        // N_absorbed -> N_kept through the edge group
        let mut via: HashMap<Perm, Perm> = HashMap::new();
        for (x, a) in &map_a {
            via.insert(a.clone(), map_k[x].clone());
        }
        let mut out = GraphOfGroups::new();
        for v in &self.vertices {
            if v.id != absorbed {
                out.add_vertex(v.id, v.group.clone());
            }
        }
        for f in &self.edges {
            if f.id == edge_id {
                continue;
            }
            let redirect = |vid: usize, mono: &Mono| -> Result<(usize, Mono)> {
                if vid == absorbed {
                    let m = mono
                        .composed_with(&via)
                        .map_err(Error::Validation)?;
                    Ok((kept, m))
                } else {
                    Ok((vid, mono.clone()))
                }
            };
            let (from, into_from) = redirect(f.from, &f.into_from)?;
            let (to, into_to) = redirect(f.to, &f.into_to)?;
            out.add_edge(f.id, from, to, f.group.clone(), into_from, into_to);
        }
        for c in &self.cusps {
            if c.vertex == absorbed {
                let m = c
                    .into_vertex
                    .composed_with(&via)
                    .map_err(Error::Validation)?;
                out.add_cusp(c.id, kept, c.group.clone(), m);
            } else {
                out.add_cusp(c.id, c.vertex, c.group.clone(), c.into_vertex.clone());
            }
        }
        Ok(out)
    }

    /// Slide: post-compose one endpoint embedding with conjugation by
    /// an element of that endpoint's vertex group. The underlying graph
    /// is unchanged.
    pub fn slide(&self, edge_id: usize, end: End, conjugator: &Perm) -> Result<GraphOfGroups> {
        self.require_valid()?;
        let e = self
            .edge(edge_id)
            .ok_or_else(|| Error::Validation(format!("no edge {}", edge_id)))?;
        let vid = match end {
            End::Origin => e.from,
            End::Terminal => e.to,
        };
        let vgroup = &self.vertex(vid).unwrap().group;
        if !vgroup.contains(conjugator) {
            return Err(Error::Validation(format!(
                "conjugator {} is not in the vertex group at vertex {}",
                conjugator, vid
            )));
        }
        let mut out = self.clone();
        let e = out.edges.iter_mut().find(|f| f.id == edge_id).unwrap();
        match end {
            End::Origin => e.into_from = e.into_from.conjugated(conjugator),
            End::Terminal => e.into_to = e.into_to.conjugated(conjugator),
        }
        Ok(out)
    }

    /// First Betti number of the underlying graph (cusps excluded).
    pub fn graph_genus(&self) -> Result<usize> {
        if !self.is_connected() {
            return Err(Error::Validation("graph is disconnected".into()));
        }
        Ok(self.edges.len() + 1 - self.vertices.len())
    }

    /// Cusp stabilizer orders, in cusp declaration order.
    pub fn signature_of(&self) -> Result<Signature> {
        self.require_valid()?;
        Signature::new(self.cusps.iter().map(|c| c.group.order()).collect())
    }

    /// Type Am: the fundamental group is a free product of a finite
    /// rank free group with a tree product of finite groups. Holds iff
    /// some spanning tree has only trivial edge groups in its
    /// complement, i.e. the non-trivially labelled edges are acyclic.
    pub fn is_type_am(&self) -> Result<bool> {
        self.require_valid()?;
        let mut uf = UnionFind::new(self.vertices.iter().map(|v| v.id));
        for e in &self.edges {
            if e.group.is_trivial() {
                continue;
            }
            if e.is_loop() || !uf.union(e.from, e.to) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Deterministic spanning tree: lowest edge ids first.
    pub fn spanning_tree(&self) -> BTreeSet<usize> {
        let mut ids: Vec<usize> = self.edges.iter().map(|e| e.id).collect();
        ids.sort();
        self.kruskal(&ids)
    }

    /// Spanning tree preferring edges with non-trivial groups, ties by
    /// lowest id. Used by amalgamification to push non-trivial edges
    /// into the tree.
    pub fn spanning_tree_preferring_nontrivial(&self) -> BTreeSet<usize> {
        let mut ids: Vec<usize> = self.edges.iter().map(|e| e.id).collect();
        ids.sort_by_key(|&id| (self.edge(id).unwrap().group.is_trivial(), id));
        self.kruskal(&ids)
    }

    fn kruskal(&self, order: &[usize]) -> BTreeSet<usize> {
        let mut uf = UnionFind::new(self.vertices.iter().map(|v| v.id));
        let mut tree = BTreeSet::new();
        for &id in order {
            let e = self.edge(id).unwrap();
            if !e.is_loop() && uf.union(e.from, e.to) {
                tree.insert(id);
            }
        }
        tree
    }

    /// Greedy stabilization: contract the lowest-id admissible non-loop
    /// edge until the graph is stable or no contraction applies.
    pub fn stabilize(&self) -> Result<GraphOfGroups> {
        self.require_valid()?;
        let mut g = self.clone();
        for _ in 0..=self.edges.len() {
            if g.is_stable()? {
                return Ok(g);
            }
            let next = g
                .edges
                .iter()
                .map(|e| e.id)
                .filter(|&id| g.contraction_direction(id).is_some())
                .min();
            match next {
                Some(id) => g = g.contract(id)?,
                None => return Ok(g),
            }
        }
        Ok(g)
    }

    /// Bass-Serre presentation of the fundamental group with respect to
    /// a spanning tree: one generator per non-identity vertex group
    /// element, full multiplication-table relators, one stable letter
    /// per edge (killed on tree edges), and edge relations
    /// `t·α(x)·t^{-1} = ω(x)`. Cusps contribute nothing.
    pub fn fundamental_presentation(&self, tree: &BTreeSet<usize>) -> Result<GraphPresentation> {
        self.require_valid()?;
        // tree must be a spanning tree of the underlying graph
        if tree.len() != self.vertices.len() - 1 {
            return Err(Error::Validation(format!(
                "{} edges cannot span {} vertices",
                tree.len(),
                self.vertices.len()
            )));
        }
        let mut uf = UnionFind::new(self.vertices.iter().map(|v| v.id));
        for &id in tree {
            let e = self
                .edge(id)
                .ok_or_else(|| Error::Validation(format!("no edge {}", id)))?;
            if e.is_loop() || !uf.union(e.from, e.to) {
                return Err(Error::Validation("edge set is not a spanning tree".into()));
            }
        }

        let mut generators: Vec<String> = Vec::new();
        let mut vertex_gen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for v in &self.vertices {
            for (k, _el) in v.group.elements().iter().enumerate().skip(1) {
                vertex_gen.insert((v.id, k), generators.len());
                generators.push(format!("v{}x{}", v.id, k));
            }
        }
        let mut edge_letter: BTreeMap<usize, usize> = BTreeMap::new();
        for e in &self.edges {
            edge_letter.insert(e.id, generators.len());
            generators.push(format!("t{}", e.id));
        }

        // symbol of a vertex group element: None for the identity
        let sym = |vid: usize, el: &Perm| -> Option<i64> {
            let v = self.vertex(vid).unwrap();
            let k = v.group.element_index(el).unwrap();
            if k == 0 {
                None
            } else {
                Some(vertex_gen[&(vid, k)] as i64 + 1)
            }
        };

        let mut relators: Vec<Vec<i64>> = Vec::new();
        for v in &self.vertices {
            let els = v.group.elements();
            for a in els.iter().skip(1) {
                for b in els.iter().skip(1) {
                    let ab = a.compose(b);
                    let mut w = vec![sym(v.id, a).unwrap(), sym(v.id, b).unwrap()];
                    if let Some(s) = sym(v.id, &ab) {
                        w.push(-s);
                    }
                    relators.push(w);
                }
            }
        }
        for e in &self.edges {
            let t = edge_letter[&e.id] as i64 + 1;
            for (ax, wx) in e
                .into_from
                .gen_images()
                .iter()
                .zip(e.into_to.gen_images())
            {
                let mut w = vec![t];
                if let Some(s) = sym(e.from, ax) {
                    w.push(s);
                }
                w.push(-t);
                if let Some(s) = sym(e.to, wx) {
                    w.push(-s);
                }
                relators.push(w);
            }
            if tree.contains(&e.id) {
                relators.push(vec![t]);
            }
        }
        let presentation = Presentation::new(generators, relators)?;
        Ok(GraphPresentation {
            presentation,
            vertex_gen,
            edge_letter,
        })
    }
}

impl Default for GraphOfGroups {
    fn default() -> Self {
        Self::new()
    }
}

/// A presentation of the fundamental group together with the layout
/// mapping graph data to presentation generators.
#[derive(Clone, Debug)]
pub struct GraphPresentation {
    pub presentation: Presentation,
    /// (vertex id, element index >= 1) -> generator index
    pub vertex_gen: BTreeMap<(usize, usize), usize>,
    /// edge id -> stable letter generator index
    pub edge_letter: BTreeMap<usize, usize>,
}

/// `|Hom(pi_1(g), t)|`, computed structurally: vertex group
/// homomorphisms consistent along a spanning tree, with one conjugator
/// choice per complement edge. Agrees with `hom_count` on the
/// multiplication-table presentation but stays feasible for larger
/// vertex groups.
pub fn graph_hom_count(g: &GraphOfGroups, t: &FiniteGroup) -> Result<u64> {
    if !g.validate().is_empty() {
        return Err(Error::Validation("invalid graph".into()));
    }
    let tree = g.spanning_tree();
    let homs: BTreeMap<usize, Vec<HashMap<Perm, Perm>>> = g
        .vertices
        .iter()
        .map(|v| (v.id, homs_into(&v.group, t)))
        .collect();
    let order: Vec<usize> = g.vertices.iter().map(|v| v.id).collect();
    let pos: BTreeMap<usize, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();

    fn rec(
        depth: usize,
        order: &[usize],
        pos: &BTreeMap<usize, usize>,
        g: &GraphOfGroups,
        t: &FiniteGroup,
        tree: &BTreeSet<usize>,
        homs: &BTreeMap<usize, Vec<HashMap<Perm, Perm>>>,
        chosen: &mut Vec<usize>,
    ) -> u64 {
        if depth == order.len() {
            let mut total = 1u64;
            for e in &g.edges {
                if tree.contains(&e.id) {
                    continue;
                }
                let hf = &homs[&e.from][chosen[pos[&e.from]]];
                let ht = &homs[&e.to][chosen[pos[&e.to]]];
                let pairs: Vec<(Perm, Perm)> = e
                    .into_from
                    .gen_images()
                    .iter()
                    .zip(e.into_to.gen_images())
                    .map(|(a, w)| (hf[a].clone(), ht[w].clone()))
                    .collect();
                let count = t
                    .elements()
                    .iter()
                    .filter(|c| pairs.iter().all(|(a, w)| a.conjugate_by(c) == *w))
                    .count() as u64;
                if count == 0 {
                    return 0;
                }
                total *= count;
            }
            return total;
        }
        let vid = order[depth];
        let mut sum = 0;
        for i in 0..homs[&vid].len() {
            chosen.push(i);
            // check tree edges with both endpoints assigned
            let ok = g.edges.iter().all(|e| {
                if !tree.contains(&e.id) {
                    return true;
                }
                let (pf, pt) = (pos[&e.from], pos[&e.to]);
                if pf > depth || pt > depth {
                    return true;
                }
                let hf = &homs[&e.from][chosen[pf]];
                let ht = &homs[&e.to][chosen[pt]];
                e.into_from
                    .gen_images()
                    .iter()
                    .zip(e.into_to.gen_images())
                    .all(|(a, w)| hf[a] == ht[w])
            });
            if ok {
                sum += rec(depth + 1, order, pos, g, t, tree, homs, chosen);
            }
            chosen.pop();
        }
        sum
    }

    let mut chosen = Vec::new();
    Ok(rec(0, &order, &pos, g, t, &tree, &homs, &mut chosen))
}

/// All homomorphisms (not necessarily injective) from `src` to `dst`,
/// as full element maps.
fn homs_into(src: &FiniteGroup, dst: &FiniteGroup) -> Vec<HashMap<Perm, Perm>> {
    let k = src.generators().len();
    if k == 0 {
        let map = std::iter::once((src.identity(), dst.identity())).collect();
        return vec![map];
    }
    let mut out = Vec::new();
    let mut pick = vec![0usize; k];
    loop {
        let images: Vec<Perm> = pick.iter().map(|&i| dst.elements()[i].clone()).collect();
        if let Some(map) = pair_closure(src.generators(), &images) {
            if map.len() == src.order() as usize {
                out.push(map);
            }
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return out;
            }
            pick[pos] += 1;
            if pick[pos] < dst.order() as usize {
                break;
            }
            pick[pos] = 0;
            pos += 1;
        }
    }
}

struct UnionFind {
    parent: BTreeMap<usize, usize>,
}

impl UnionFind {
    fn new(ids: impl Iterator<Item = usize>) -> UnionFind {
        UnionFind {
            parent: ids.map(|i| (i, i)).collect(),
        }
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[&x] != x {
            let p = self.parent[&x];
            let gp = self.parent[&p];
            self.parent.insert(x, gp);
            x = gp;
        }
        x
    }
    /// Returns false if already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        self.parent.insert(ra, rb);
        true
    }
}
