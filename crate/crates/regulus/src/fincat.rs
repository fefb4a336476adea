//! Finite categories given by total composition tables, and the standard
//! constructions on them: opposites, (co)products, slices, comma categories,
//! Karoubi envelopes, free categories on presented graphs, and bounded
//! functor enumeration.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

/// A morphism record: name plus source and target object indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite category presented by a total composition table.
///
/// Objects and morphisms are small integer indices; names live in side
/// tables and are only used for reporting. Equality of morphisms is index
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteCategory {
    pub object_names: Vec<String>,
    pub morphisms: Vec<Morphism>,
    /// identity[c] is the identity morphism of object c.
    pub identity: Vec<usize>,
    /// compose[g * n_mor + f] = Some(g∘f) exactly when tgt(f) = src(g).
    compose: Vec<Option<usize>>,
}

/// A violation found by [`FiniteCategory::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    BadIdentity { object: usize },
    MissingComposite { g: usize, f: usize },
    SpuriousComposite { g: usize, f: usize },
    CompositeEndpoints { g: usize, f: usize, got: usize },
    Associativity { h: usize, g: usize, f: usize },
    UnitLaw { f: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BadIdentity { object } => write!(w, "identity of object {object} is not an endomorphism"),
            Violation::MissingComposite { g, f } => write!(w, "compose({g},{f}) undefined for a composable pair"),
            Violation::SpuriousComposite { g, f } => write!(w, "compose({g},{f}) defined for a non-composable pair"),
            Violation::CompositeEndpoints { g, f, got } => write!(w, "compose({g},{f}) = {got} has wrong endpoints"),
            Violation::Associativity { h, g, f } => write!(w, "associativity fails on ({h},{g},{f})"),
            Violation::UnitLaw { f } => write!(w, "unit law fails at morphism {f}"),
        }
    }
}

impl FiniteCategory {
    pub fn new(
        object_names: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<usize>,
        compose_map: &HashMap<(usize, usize), usize>,
    ) -> Self {
        let n = morphisms.len();
        let mut compose = vec![None; n * n];
        for (&(g, f), &gf) in compose_map {
            compose[g * n + f] = Some(gf);
        }
        FiniteCategory { object_names, morphisms, identity, compose }
    }

    pub fn n_objects(&self) -> usize {
        self.object_names.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].src
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.morphisms[f].tgt
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.morphisms[f].src] == f && self.morphisms[f].src == self.morphisms[f].tgt
    }

    /// g∘f, defined when tgt(f) = src(g).
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g * self.n_morphisms() + f]
    }

    /// Hom(a, b) in morphism-index order.
    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.n_morphisms())
            .filter(|&f| self.src(f) == a && self.tgt(f) == b)
            .collect()
    }

    /// Morphisms that are invertible in the composition table.
    pub fn is_iso(&self, f: usize) -> bool {
        let (a, b) = (self.src(f), self.tgt(f));
        self.hom(b, a).iter().any(|&g| {
            self.compose(g, f) == Some(self.identity[a]) && self.compose(f, g) == Some(self.identity[b])
        })
    }

    /// Checks all category axioms exhaustively and reports every violation.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.n_morphisms();
        for c in 0..self.n_objects() {
            let i = self.identity[c];
            if i >= n || self.src(i) != c || self.tgt(i) != c {
                out.push(Violation::BadIdentity { object: c });
            }
        }
        for g in 0..n {
            for f in 0..n {
                let composable = self.tgt(f) == self.src(g);
                match self.compose(g, f) {
                    None if composable => out.push(Violation::MissingComposite { g, f }),
                    Some(_) if !composable => out.push(Violation::SpuriousComposite { g, f }),
                    Some(gf) if composable => {
                        if self.src(gf) != self.src(f) || self.tgt(gf) != self.tgt(g) {
                            out.push(Violation::CompositeEndpoints { g, f, got: gf });
                        }
                    }
                    _ => {}
                }
            }
        }
        for f in 0..n {
            let l = self.compose(self.identity[self.tgt(f)], f);
            let r = self.compose(f, self.identity[self.src(f)]);
            if l != Some(f) || r != Some(f) {
                out.push(Violation::UnitLaw { f });
            }
        }
        for h in 0..n {
            for g in 0..n {
                if self.src(h) != self.tgt(g) {
                    continue;
                }
                for f in 0..n {
                    if self.src(g) != self.tgt(f) {
                        continue;
                    }
                    let gf = match self.compose(g, f) {
                        Some(x) => x,
                        None => continue,
                    };
                    let hg = match self.compose(h, g) {
                        Some(x) => x,
                        None => continue,
                    };
                    if self.compose(h, gf) != self.compose(hg, f) {
                        out.push(Violation::Associativity { h, g, f });
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// The opposite category: sources and targets swapped, table transposed.
    pub fn opposite(&self) -> FiniteCategory {
        let n = self.n_morphisms();
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| Morphism { name: m.name.clone(), src: m.tgt, tgt: m.src })
            .collect();
        let mut compose = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                compose[g * n + f] = self.compose[f * n + g];
            }
        }
        FiniteCategory {
            object_names: self.object_names.clone(),
            morphisms,
            identity: self.identity.clone(),
            compose,
        }
    }

    /// Lowest-indexed terminal object, if one exists.
    pub fn find_terminal(&self) -> Option<usize> {
        (0..self.n_objects()).find(|&t| (0..self.n_objects()).all(|c| self.hom(c, t).len() == 1))
    }

    /// Lowest-indexed initial object, if one exists.
    pub fn find_initial(&self) -> Option<usize> {
        (0..self.n_objects()).find(|&i| (0..self.n_objects()).all(|c| self.hom(i, c).len() == 1))
    }

    /// Partition of objects into connected components of the undirected
    /// morphism graph, together with the full subcategories they span.
    pub fn connected_components(&self) -> (Vec<Vec<usize>>, Vec<FiniteCategory>) {
        let n = self.n_objects();
        let mut comp = vec![usize::MAX; n];
        let mut parts: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let k = parts.len();
            let mut part = Vec::new();
            let mut queue = VecDeque::from([start]);
            comp[start] = k;
            while let Some(c) = queue.pop_front() {
                part.push(c);
                for f in 0..self.n_morphisms() {
                    for d in [self.src(f), self.tgt(f)] {
                        if (self.src(f) == c || self.tgt(f) == c) && comp[d] == usize::MAX {
                            comp[d] = k;
                            queue.push_back(d);
                        }
                    }
                }
            }
            part.sort_unstable();
            parts.push(part);
        }
        let subs = parts.iter().map(|p| self.full_subcategory(p)).collect();
        (parts, subs)
    }

    /// Full subcategory spanned by the given objects (indices kept in the
    /// given order).
    pub fn full_subcategory(&self, objects: &[usize]) -> FiniteCategory {
        let obj_of: HashMap<usize, usize> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        let keep: Vec<usize> = (0..self.n_morphisms())
            .filter(|&f| obj_of.contains_key(&self.src(f)) && obj_of.contains_key(&self.tgt(f)))
            .collect();
        let mor_of: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let morphisms = keep
            .iter()
            .map(|&f| Morphism {
                name: self.morphisms[f].name.clone(),
                src: obj_of[&self.src(f)],
                tgt: obj_of[&self.tgt(f)],
            })
            .collect();
        let identity = objects.iter().map(|&o| mor_of[&self.identity[o]]).collect();
        let mut table = HashMap::new();
        for &g in &keep {
            for &f in &keep {
                if let Some(gf) = self.compose(g, f) {
                    table.insert((mor_of[&g], mor_of[&f]), mor_of[&gf]);
                }
            }
        }
        FiniteCategory::new(
            objects.iter().map(|&o| self.object_names[o].clone()).collect(),
            morphisms,
            identity,
            &table,
        )
    }
}

/// A functor between finite categories, given by total object and morphism
/// maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorData {
    pub source: Arc<FiniteCategory>,
    pub target: Arc<FiniteCategory>,
    pub object_map: Vec<usize>,
    pub morphism_map: Vec<usize>,
}

impl FunctorData {
    pub fn identity(c: &Arc<FiniteCategory>) -> FunctorData {
        FunctorData {
            source: c.clone(),
            target: c.clone(),
            object_map: (0..c.n_objects()).collect(),
            morphism_map: (0..c.n_morphisms()).collect(),
        }
    }

    /// The constant functor from the terminal category at object `c`.
    pub fn constant(point: &Arc<FiniteCategory>, target: &Arc<FiniteCategory>, c: usize) -> FunctorData {
        FunctorData {
            source: point.clone(),
            target: target.clone(),
            object_map: vec![c; point.n_objects()],
            morphism_map: vec![target.identity[c]; point.n_morphisms()],
        }
    }

    pub fn ob(&self, a: usize) -> usize {
        self.object_map[a]
    }

    pub fn mor(&self, f: usize) -> usize {
        self.morphism_map[f]
    }

    /// Functoriality check: endpoints, identities and all binary composites.
    pub fn is_functorial(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        if self.object_map.len() != s.n_objects() || self.morphism_map.len() != s.n_morphisms() {
            return false;
        }
        for f in 0..s.n_morphisms() {
            let ff = self.mor(f);
            if t.src(ff) != self.ob(s.src(f)) || t.tgt(ff) != self.ob(s.tgt(f)) {
                return false;
            }
        }
        for c in 0..s.n_objects() {
            if self.mor(s.identity[c]) != t.identity[self.ob(c)] {
                return false;
            }
        }
        for g in 0..s.n_morphisms() {
            for f in 0..s.n_morphisms() {
                if let Some(gf) = s.compose(g, f) {
                    if t.compose(self.mor(g), self.mor(f)) != Some(self.mor(gf)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// g∘f as functors (self after `other`): other: A→B, self: B→C.
    pub fn compose_after(&self, other: &FunctorData) -> FunctorData {
        FunctorData {
            source: other.source.clone(),
            target: self.target.clone(),
            object_map: other.object_map.iter().map(|&a| self.ob(a)).collect(),
            morphism_map: other.morphism_map.iter().map(|&f| self.mor(f)).collect(),
        }
    }

    pub fn is_full(&self) -> bool {
        for a in 0..self.source.n_objects() {
            for b in 0..self.source.n_objects() {
                let image: Vec<usize> = self.source.hom(a, b).iter().map(|&f| self.mor(f)).collect();
                for g in self.target.hom(self.ob(a), self.ob(b)) {
                    if !image.contains(&g) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_faithful(&self) -> bool {
        for a in 0..self.source.n_objects() {
            for b in 0..self.source.n_objects() {
                let hom = self.source.hom(a, b);
                let mut image: Vec<usize> = hom.iter().map(|&f| self.mor(f)).collect();
                image.sort_unstable();
                image.dedup();
                if image.len() != hom.len() {
                    return false;
                }
            }
        }
        true
    }

    /// Essential surjectivity: every target object is isomorphic to some image
    /// object.
    pub fn is_essentially_surjective(&self) -> bool {
        (0..self.target.n_objects()).all(|d| {
            (0..self.source.n_objects()).any(|a| {
                let c = self.ob(a);
                self.target.hom(c, d).iter().any(|&f| self.target.is_iso(f))
                    || (c == d)
            })
        })
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_full() && self.is_faithful() && self.is_essentially_surjective()
    }
}

/// A directed graph with path relations, the input of [`free_category`].
#[derive(Debug, Clone)]
pub struct GraphPresentation {
    pub vertices: Vec<String>,
    /// (name, src, tgt)
    pub edges: Vec<(String, usize, usize)>,
    /// Pairs of composable edge-index paths asserted equal. Paths are listed
    /// in application order: `[e0, e1]` is the path e1∘e0. An empty path at
    /// a vertex is written `(vec![], Some(v))`.
    pub relations: Vec<(RelPath, RelPath)>,
}

/// An edge path for a relation; `base` disambiguates the empty path.
#[derive(Debug, Clone)]
pub struct RelPath {
    pub edges: Vec<usize>,
    pub base: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FreeCategoryError {
    #[error("composition of congruence classes escapes the path bound {bound}; the presentation generates a larger or infinite category")]
    NotClosedWithinBound { bound: usize },
    #[error("relation path is not composable or has mismatched endpoints")]
    IllTypedRelation,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // keep the smaller index as representative
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Builds the category generated by a graph presentation, with morphisms the
/// congruence classes of edge paths of length ≤ `path_bound`. Fails if some
/// composite of classes has no representative within the bound.
pub fn free_category(p: &GraphPresentation, path_bound: usize) -> Result<FiniteCategory, FreeCategoryError> {
    assert!(path_bound >= 1, "path_bound must be at least 1");
    // enumerate all composable paths of length <= bound, shortest first
    let mut paths: Vec<(usize, Vec<usize>)> = Vec::new(); // (start vertex, edges in application order)
    let mut index: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
    for v in 0..p.vertices.len() {
        index.insert((v, vec![]), paths.len());
        paths.push((v, vec![]));
    }
    let mut frontier: Vec<usize> = (0..paths.len()).collect();
    for _ in 0..path_bound {
        let mut next = Vec::new();
        for &pi in &frontier {
            let (start, edges) = paths[pi].clone();
            let end = edges.last().map(|&e| p.edges[e].2).unwrap_or(start);
            for (ei, e) in p.edges.iter().enumerate() {
                if e.1 == end {
                    let mut ext = edges.clone();
                    ext.push(ei);
                    let key = (start, ext.clone());
                    if !index.contains_key(&key) {
                        index.insert(key, paths.len());
                        next.push(paths.len());
                        paths.push((start, ext));
                    }
                }
            }
        }
        frontier = next;
    }
    let path_end = |i: usize| -> usize {
        let (start, edges) = &paths[i];
        edges.last().map(|&e| p.edges[e].2).unwrap_or(*start)
    };

    let mut uf = UnionFind::new(paths.len());
    // seed with declared relations
    for (l, r) in &p.relations {
        let resolve = |rp: &RelPath| -> Result<usize, FreeCategoryError> {
            let start = if rp.edges.is_empty() {
                rp.base.ok_or(FreeCategoryError::IllTypedRelation)?
            } else {
                p.edges[rp.edges[0]].1
            };
            // check composability
            let mut at = start;
            for &e in &rp.edges {
                if p.edges[e].1 != at {
                    return Err(FreeCategoryError::IllTypedRelation);
                }
                at = p.edges[e].2;
            }
            index
                .get(&(start, rp.edges.clone()))
                .copied()
                .ok_or(FreeCategoryError::NotClosedWithinBound { bound: path_bound })
        };
        let (li, ri) = (resolve(l)?, resolve(r)?);
        let (ls, le) = (paths[li].0, path_end(li));
        let (rs, re) = (paths[ri].0, path_end(ri));
        if ls != rs || le != re {
            return Err(FreeCategoryError::IllTypedRelation);
        }
        uf.union(li, ri);
    }
    // congruence closure by single-edge extension on both sides
    loop {
        let mut changed = false;
        // group paths by class
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..paths.len() {
            classes.entry(uf.find(i)).or_default().push(i);
        }
        for members in classes.values() {
            for w in members.windows(2) {
                let (x, y) = (w[0], w[1]);
                // post-compose by an edge: e after both
                for (ei, e) in p.edges.iter().enumerate() {
                    if e.1 == path_end(x) && e.1 == path_end(y) {
                        let ex = {
                            let mut v = paths[x].1.clone();
                            v.push(ei);
                            index.get(&(paths[x].0, v)).copied()
                        };
                        let ey = {
                            let mut v = paths[y].1.clone();
                            v.push(ei);
                            index.get(&(paths[y].0, v)).copied()
                        };
                        if let (Some(a), Some(b)) = (ex, ey) {
                            changed |= uf.union(a, b);
                        }
                    }
                    // pre-compose by an edge: both after e
                    if e.2 == paths[x].0 && e.2 == paths[y].0 {
                        let ex = {
                            let mut v = vec![ei];
                            v.extend(&paths[x].1);
                            index.get(&(e.1, v)).copied()
                        };
                        let ey = {
                            let mut v = vec![ei];
                            v.extend(&paths[y].1);
                            index.get(&(e.1, v)).copied()
                        };
                        if let (Some(a), Some(b)) = (ex, ey) {
                            changed |= uf.union(a, b);
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    // collect classes, ordered by minimal member path index
    let mut reps: Vec<usize> = Vec::new();
    let mut class_of_path: HashMap<usize, usize> = HashMap::new();
    for i in 0..paths.len() {
        let r = uf.find(i);
        if r == i {
            class_of_path.insert(i, reps.len());
            reps.push(i);
        }
    }
    let class_of = |uf: &mut UnionFind, i: usize| -> usize { class_of_path[&uf.find(i)] };

    let path_name = |i: usize| -> String {
        let (start, edges) = &paths[i];
        if edges.is_empty() {
            format!("id_{}", p.vertices[*start])
        } else {
            edges.iter().rev().map(|&e| p.edges[e].0.clone()).collect::<Vec<_>>().join(".")
        }
    };

    let morphisms: Vec<Morphism> = reps
        .iter()
        .map(|&i| Morphism { name: path_name(i), src: paths[i].0, tgt: path_end(i) })
        .collect();
    let identity: Vec<usize> = (0..p.vertices.len())
        .map(|v| class_of_path[&uf.find(index[&(v, vec![])])])
        .collect();

    // composition: concatenate representatives, searching class members for a
    // concatenation within the bound
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..paths.len() {
        members.entry(uf.find(i)).or_default().push(i);
    }
    for gc in 0..reps.len() {
        for fc in 0..reps.len() {
            if morphisms[fc].tgt != morphisms[gc].src {
                continue;
            }
            let mut found = None;
            'outer: for &fp in &members[&uf.find(reps[fc])] {
                for &gp in &members[&uf.find(reps[gc])] {
                    let mut v = paths[fp].1.clone();
                    v.extend(&paths[gp].1);
                    if let Some(&pid) = index.get(&(paths[fp].0, v)) {
                        found = Some(class_of(&mut uf, pid));
                        break 'outer;
                    }
                }
            }
            match found {
                Some(c) => {
                    table.insert((gc, fc), c);
                }
                None => return Err(FreeCategoryError::NotClosedWithinBound { bound: path_bound }),
            }
        }
    }
    let cat = FiniteCategory::new(p.vertices.clone(), morphisms, identity, &table);
    debug_assert!(cat.is_valid());
    Ok(cat)
}

/// Binary product C × D with the two projection functors.
pub fn product(c: &Arc<FiniteCategory>, d: &Arc<FiniteCategory>) -> (Arc<FiniteCategory>, FunctorData, FunctorData) {
    let (nc, nd) = (c.n_objects(), d.n_objects());
    let obj = |i: usize, j: usize| i * nd + j;
    let object_names: Vec<String> = (0..nc)
        .flat_map(|i| (0..nd).map(move |j| (i, j)))
        .map(|(i, j)| format!("({},{})", c.object_names[i], d.object_names[j]))
        .collect();
    let (mc, md) = (c.n_morphisms(), d.n_morphisms());
    let mor = |f: usize, g: usize| f * md + g;
    let morphisms: Vec<Morphism> = (0..mc)
        .flat_map(|f| (0..md).map(move |g| (f, g)))
        .map(|(f, g)| Morphism {
            name: format!("({},{})", c.morphisms[f].name, d.morphisms[g].name),
            src: obj(c.src(f), d.src(g)),
            tgt: obj(c.tgt(f), d.tgt(g)),
        })
        .collect();
    let identity: Vec<usize> = (0..nc)
        .flat_map(|i| (0..nd).map(move |j| (i, j)))
        .map(|(i, j)| mor(c.identity[i], d.identity[j]))
        .collect();
    let mut table = HashMap::new();
    for g1 in 0..mc {
        for g2 in 0..md {
            for f1 in 0..mc {
                for f2 in 0..md {
                    if let (Some(a), Some(b)) = (c.compose(g1, f1), d.compose(g2, f2)) {
                        table.insert((mor(g1, g2), mor(f1, f2)), mor(a, b));
                    }
                }
            }
        }
    }
    let prod = Arc::new(FiniteCategory::new(object_names, morphisms, identity, &table));
    let p1 = FunctorData {
        source: prod.clone(),
        target: c.clone(),
        object_map: (0..nc * nd).map(|o| o / nd).collect(),
        morphism_map: (0..mc * md).map(|m| m / md).collect(),
    };
    let p2 = FunctorData {
        source: prod.clone(),
        target: d.clone(),
        object_map: (0..nc * nd).map(|o| o % nd).collect(),
        morphism_map: (0..mc * md).map(|m| m % md).collect(),
    };
    (prod, p1, p2)
}

/// Disjoint union of finitely many categories, with the injection functors.
pub fn coproduct(cs: &[Arc<FiniteCategory>]) -> (Arc<FiniteCategory>, Vec<FunctorData>) {
    let mut object_names = Vec::new();
    let mut morphisms = Vec::new();
    let mut identity = Vec::new();
    let mut table = HashMap::new();
    let mut obj_off = Vec::new();
    let mut mor_off = Vec::new();
    for c in cs {
        let (oo, mo) = (object_names.len(), morphisms.len());
        obj_off.push(oo);
        mor_off.push(mo);
        object_names.extend(c.object_names.iter().cloned());
        morphisms.extend(c.morphisms.iter().map(|m| Morphism {
            name: m.name.clone(),
            src: m.src + oo,
            tgt: m.tgt + oo,
        }));
        identity.extend(c.identity.iter().map(|&i| i + mo));
        for g in 0..c.n_morphisms() {
            for f in 0..c.n_morphisms() {
                if let Some(gf) = c.compose(g, f) {
                    table.insert((g + mo, f + mo), gf + mo);
                }
            }
        }
    }
    let cop = Arc::new(FiniteCategory::new(object_names, morphisms, identity, &table));
    let injections = cs
        .iter()
        .enumerate()
        .map(|(k, c)| FunctorData {
            source: c.clone(),
            target: cop.clone(),
            object_map: (0..c.n_objects()).map(|o| o + obj_off[k]).collect(),
            morphism_map: (0..c.n_morphisms()).map(|m| m + mor_off[k]).collect(),
        })
        .collect();
    (cop, injections)
}

/// The slice category C/c with its projection to C.
pub fn slice(c: &Arc<FiniteCategory>, at: usize) -> (Arc<FiniteCategory>, FunctorData) {
    // objects are morphisms x → at
    let objs: Vec<usize> = (0..c.n_morphisms()).filter(|&f| c.tgt(f) == at).collect();
    comma_like(c, &objs, |f| c.src(f), |h, f_from, f_to| c.compose(f_to, h) == Some(f_from))
}

/// The coslice category c/C (here written coslice(C, c)) with its projection.
pub fn coslice(c: &Arc<FiniteCategory>, at: usize) -> (Arc<FiniteCategory>, FunctorData) {
    // objects are morphisms at → x; a morphism f → g is h with h∘f = g
    let objs: Vec<usize> = (0..c.n_morphisms()).filter(|&f| c.src(f) == at).collect();
    comma_like(c, &objs, |f| c.tgt(f), |h, f_from, f_to| c.compose(h, f_from) == Some(f_to))
}

fn comma_like(
    c: &Arc<FiniteCategory>,
    objs: &[usize],
    anchor: impl Fn(usize) -> usize,
    triangle: impl Fn(usize, usize, usize) -> bool,
) -> (Arc<FiniteCategory>, FunctorData) {
    let object_names: Vec<String> = objs.iter().map(|&f| c.morphisms[f].name.clone()).collect();
    // morphisms f_i → f_j are morphisms h: anchor(f_i) → anchor(f_j) making
    // the triangle commute
    let mut morphisms = Vec::new();
    let mut mor_data = Vec::new(); // (i, j, h)
    for (i, &fi) in objs.iter().enumerate() {
        for (j, &fj) in objs.iter().enumerate() {
            for h in c.hom(anchor(fi), anchor(fj)) {
                if triangle(h, fi, fj) {
                    mor_data.push((i, j, h));
                    morphisms.push(Morphism {
                        name: format!("{}[{}→{}]", c.morphisms[h].name, i, j),
                        src: i,
                        tgt: j,
                    });
                }
            }
        }
    }
    let find = |i: usize, j: usize, h: usize| mor_data.iter().position(|&m| m == (i, j, h)).unwrap();
    let identity: Vec<usize> = objs
        .iter()
        .enumerate()
        .map(|(i, &f)| find(i, i, c.identity[anchor(f)]))
        .collect();
    let mut table = HashMap::new();
    for (gi, &(j2, k, hg)) in mor_data.iter().enumerate() {
        for (fi, &(i, j, hf)) in mor_data.iter().enumerate() {
            if j == j2 {
                let comp = c.compose(hg, hf).unwrap();
                table.insert((gi, fi), find(i, k, comp));
            }
        }
    }
    let cat = Arc::new(FiniteCategory::new(object_names, morphisms, identity, &table));
    let proj = FunctorData {
        source: cat.clone(),
        target: c.clone(),
        object_map: objs.iter().map(|&f| anchor(f)).collect(),
        morphism_map: mor_data.iter().map(|&(_, _, h)| h).collect(),
    };
    (cat, proj)
}

/// The comma category f↓g of a cospan A → C ← B, with projections to A and B.
///
/// Objects are triples (a, b, γ: f(a) → g(b)); morphisms are pairs (u, v)
/// making the evident square commute.
pub fn comma(f: &FunctorData, g: &FunctorData) -> (Arc<FiniteCategory>, FunctorData, FunctorData) {
    assert_eq!(f.target, g.target, "comma requires a common target");
    let (a, b, c) = (&f.source, &g.source, &f.target);
    let mut objs = Vec::new(); // (a, b, γ)
    for ao in 0..a.n_objects() {
        for bo in 0..b.n_objects() {
            for gamma in c.hom(f.ob(ao), g.ob(bo)) {
                objs.push((ao, bo, gamma));
            }
        }
    }
    let object_names: Vec<String> = objs
        .iter()
        .map(|&(ao, bo, gamma)| {
            format!("({},{},{})", a.object_names[ao], b.object_names[bo], c.morphisms[gamma].name)
        })
        .collect();
    let mut morphisms = Vec::new();
    let mut mor_data = Vec::new(); // (from, to, u, v)
    for (i, &(a1, b1, g1)) in objs.iter().enumerate() {
        for (j, &(a2, b2, g2)) in objs.iter().enumerate() {
            for u in a.hom(a1, a2) {
                for v in b.hom(b1, b2) {
                    // g(v)∘γ1 = γ2∘f(u)
                    if c.compose(g.mor(v), g1) == c.compose(g2, f.mor(u)) {
                        mor_data.push((i, j, u, v));
                        morphisms.push(Morphism {
                            name: format!("({},{})", a.morphisms[u].name, b.morphisms[v].name),
                            src: i,
                            tgt: j,
                        });
                    }
                }
            }
        }
    }
    let find = |i: usize, j: usize, u: usize, v: usize| {
        mor_data.iter().position(|&m| m == (i, j, u, v)).unwrap()
    };
    let identity: Vec<usize> = objs
        .iter()
        .enumerate()
        .map(|(i, &(ao, bo, _))| find(i, i, a.identity[ao], b.identity[bo]))
        .collect();
    let mut table = HashMap::new();
    for (gi, &(j2, k, u2, v2)) in mor_data.iter().enumerate() {
        for (fi, &(i, j, u1, v1)) in mor_data.iter().enumerate() {
            if j == j2 {
                let u = a.compose(u2, u1).unwrap();
                let v = b.compose(v2, v1).unwrap();
                table.insert((gi, fi), find(i, k, u, v));
            }
        }
    }
    let cat = Arc::new(FiniteCategory::new(object_names, morphisms, identity, &table));
    let pa = FunctorData {
        source: cat.clone(),
        target: a.clone(),
        object_map: objs.iter().map(|&(ao, _, _)| ao).collect(),
        morphism_map: mor_data.iter().map(|&(_, _, u, _)| u).collect(),
    };
    let pb = FunctorData {
        source: cat.clone(),
        target: b.clone(),
        object_map: objs.iter().map(|&(_, bo, _)| bo).collect(),
        morphism_map: mor_data.iter().map(|&(_, _, _, v)| v).collect(),
    };
    (cat, pa, pb)
}

/// Karoubi envelope (idempotent completion), with the canonical full and
/// faithful embedding.
pub fn karoubi(c: &Arc<FiniteCategory>) -> (Arc<FiniteCategory>, FunctorData) {
    // objects are idempotents p: x → x
    let idems: Vec<usize> = (0..c.n_morphisms())
        .filter(|&p| c.src(p) == c.tgt(p) && c.compose(p, p) == Some(p))
        .collect();
    let object_names: Vec<String> = idems
        .iter()
        .map(|&p| format!("({},{})", c.object_names[c.src(p)], c.morphisms[p].name))
        .collect();
    let mut morphisms = Vec::new();
    let mut mor_data = Vec::new(); // (i, j, f) with q∘f∘p = f
    for (i, &p) in idems.iter().enumerate() {
        for (j, &q) in idems.iter().enumerate() {
            for f in c.hom(c.src(p), c.src(q)) {
                let fp = c.compose(f, p).unwrap();
                if c.compose(q, fp) == Some(f) {
                    mor_data.push((i, j, f));
                    morphisms.push(Morphism {
                        name: format!("{}[{}→{}]", c.morphisms[f].name, i, j),
                        src: i,
                        tgt: j,
                    });
                }
            }
        }
    }
    let find = |i: usize, j: usize, f: usize| mor_data.iter().position(|&m| m == (i, j, f)).unwrap();
    let identity: Vec<usize> = idems.iter().enumerate().map(|(i, &p)| find(i, i, p)).collect();
    let mut table = HashMap::new();
    for (gi, &(j2, k, g)) in mor_data.iter().enumerate() {
        for (fi, &(i, j, f)) in mor_data.iter().enumerate() {
            if j == j2 {
                table.insert((gi, fi), find(i, k, c.compose(g, f).unwrap()));
            }
        }
    }
    let cat = Arc::new(FiniteCategory::new(object_names, morphisms, identity, &table));
    let embed = FunctorData {
        source: c.clone(),
        target: cat.clone(),
        object_map: (0..c.n_objects())
            .map(|x| idems.iter().position(|&p| p == c.identity[x]).unwrap())
            .collect(),
        morphism_map: (0..c.n_morphisms())
            .map(|f| find(
                idems.iter().position(|&p| p == c.identity[c.src(f)]).unwrap(),
                idems.iter().position(|&p| p == c.identity[c.tgt(f)]).unwrap(),
                f,
            ))
            .collect(),
    };
    (cat, embed)
}

/// Backtracking enumeration of all functors J → C in lexicographic order of
/// object and morphism assignments, truncated at `limit`.
pub fn enumerate_functors(j: &Arc<FiniteCategory>, c: &Arc<FiniteCategory>, limit: usize) -> (Vec<FunctorData>, bool) {
    let mut out = Vec::new();
    let mut truncated = false;
    if limit == 0 {
        return (out, true);
    }
    let nonid: Vec<usize> = (0..j.n_morphisms()).filter(|&f| !j.is_identity(f)).collect();
    let mut object_map = vec![0usize; j.n_objects()];
    let mut morphism_map: Vec<Option<usize>> = vec![None; j.n_morphisms()];

    fn assign_objects(
        j: &Arc<FiniteCategory>,
        c: &Arc<FiniteCategory>,
        nonid: &[usize],
        object_map: &mut Vec<usize>,
        morphism_map: &mut Vec<Option<usize>>,
        next_obj: usize,
        out: &mut Vec<FunctorData>,
        truncated: &mut bool,
        limit: usize,
    ) {
        if *truncated {
            return;
        }
        if next_obj == j.n_objects() {
            for o in 0..j.n_objects() {
                morphism_map[j.identity[o]] = Some(c.identity[object_map[o]]);
            }
            assign_morphisms(j, c, nonid, object_map, morphism_map, 0, out, truncated, limit);
            for o in 0..j.n_objects() {
                morphism_map[j.identity[o]] = None;
            }
            return;
        }
        if c.n_objects() == 0 && j.n_objects() > 0 {
            return;
        }
        for co in 0..c.n_objects() {
            object_map[next_obj] = co;
            assign_objects(j, c, nonid, object_map, morphism_map, next_obj + 1, out, truncated, limit);
            if *truncated {
                return;
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn assign_morphisms(
        j: &Arc<FiniteCategory>,
        c: &Arc<FiniteCategory>,
        nonid: &[usize],
        object_map: &[usize],
        morphism_map: &mut Vec<Option<usize>>,
        k: usize,
        out: &mut Vec<FunctorData>,
        truncated: &mut bool,
        limit: usize,
    ) {
        if *truncated {
            return;
        }
        if k == nonid.len() {
            out.push(FunctorData {
                source: j.clone(),
                target: c.clone(),
                object_map: object_map.to_vec(),
                morphism_map: morphism_map.iter().map(|m| m.unwrap()).collect(),
            });
            if out.len() >= limit {
                *truncated = true;
            }
            return;
        }
        let f = nonid[k];
        for cf in c.hom(object_map[j.src(f)], object_map[j.tgt(f)]) {
            morphism_map[f] = Some(cf);
            // check every composition constraint whose participants are all assigned
            let mut ok = true;
            'check: for g in 0..j.n_morphisms() {
                for h in 0..j.n_morphisms() {
                    if let Some(gh) = j.compose(g, h) {
                        if let (Some(cg), Some(ch), Some(cgh)) =
                            (morphism_map[g], morphism_map[h], morphism_map[gh])
                        {
                            if c.compose(cg, ch) != Some(cgh) {
                                ok = false;
                                break 'check;
                            }
                        }
                    }
                }
            }
            if ok {
                assign_morphisms(j, c, nonid, object_map, morphism_map, k + 1, out, truncated, limit);
            }
            morphism_map[f] = None;
            if *truncated {
                return;
            }
        }
    }

    assign_objects(j, c, &nonid, &mut object_map, &mut morphism_map, 0, &mut out, &mut truncated, limit);
    (out, truncated)
}

/// Searches for an isomorphism of categories (bijective on objects and
/// morphisms, functorial both ways).
pub fn are_isomorphic_categories(a: &Arc<FiniteCategory>, b: &Arc<FiniteCategory>) -> Option<FunctorData> {
    if a.n_objects() != b.n_objects() || a.n_morphisms() != b.n_morphisms() {
        return None;
    }
    // fingerprint: sorted hom-set size profile
    let profile = |c: &FiniteCategory| {
        let mut v: Vec<usize> = (0..c.n_objects())
            .flat_map(|x| (0..c.n_objects()).map(move |y| (x, y)))
            .map(|(x, y)| c.hom(x, y).len())
            .collect();
        v.sort_unstable();
        v
    };
    if profile(a) != profile(b) {
        return None;
    }
    let (fs, truncated) = enumerate_functors(a, b, 2_000_000);
    debug_assert!(!truncated, "iso search truncated");
    fs.into_iter().find(|f| {
        let mut obs: Vec<usize> = f.object_map.clone();
        obs.sort_unstable();
        obs.dedup();
        let mut mors: Vec<usize> = f.morphism_map.clone();
        mors.sort_unstable();
        mors.dedup();
        obs.len() == a.n_objects() && mors.len() == a.n_morphisms()
    })
}

// ---------------------------------------------------------------------------
// standard small categories

/// The discrete category on n objects.
pub fn discrete(n: usize) -> Arc<FiniteCategory> {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let morphisms = (0..n)
        .map(|i| Morphism { name: format!("id_x{i}"), src: i, tgt: i })
        .collect();
    let identity = (0..n).collect();
    let mut table = HashMap::new();
    for i in 0..n {
        table.insert((i, i), i);
    }
    Arc::new(FiniteCategory::new(names, morphisms, identity, &table))
}

/// The terminal category.
pub fn terminal_category() -> Arc<FiniteCategory> {
    discrete(1)
}

/// The empty category.
pub fn empty_category() -> Arc<FiniteCategory> {
    discrete(0)
}

/// The linear order 0 < 1 < … < n as a category (n+1 objects).
pub fn chain(n: usize) -> Arc<FiniteCategory> {
    poset(n + 1, |a, b| a <= b)
}

/// The category of a finite preorder given by a relation.
pub fn poset(n: usize, le: impl Fn(usize, usize) -> bool) -> Arc<FiniteCategory> {
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut morphisms = Vec::new();
    let mut idx = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            if le(a, b) {
                idx.insert((a, b), morphisms.len());
                morphisms.push(Morphism {
                    name: if a == b { format!("id_p{a}") } else { format!("le_{a}_{b}") },
                    src: a,
                    tgt: b,
                });
            }
        }
    }
    let identity = (0..n).map(|a| idx[&(a, a)]).collect();
    let mut table = HashMap::new();
    for (&(a, b), &f) in &idx {
        for (&(b2, c), &g) in &idx {
            if b == b2 {
                table.insert((g, f), idx[&(a, c)]);
            }
        }
    }
    Arc::new(FiniteCategory::new(names, morphisms, identity, &table))
}

/// The walking parallel pair a ⇉ b.
pub fn parallel_pair() -> Arc<FiniteCategory> {
    let names = vec!["a".to_string(), "b".to_string()];
    let morphisms = vec![
        Morphism { name: "id_a".into(), src: 0, tgt: 0 },
        Morphism { name: "id_b".into(), src: 1, tgt: 1 },
        Morphism { name: "f".into(), src: 0, tgt: 1 },
        Morphism { name: "g".into(), src: 0, tgt: 1 },
    ];
    let mut table = HashMap::new();
    table.insert((0, 0), 0);
    table.insert((1, 1), 1);
    table.insert((2, 0), 2);
    table.insert((1, 2), 2);
    table.insert((3, 0), 3);
    table.insert((1, 3), 3);
    Arc::new(FiniteCategory::new(names, morphisms, vec![0, 1], &table))
}

/// The walking span l ← m → r.
pub fn span() -> Arc<FiniteCategory> {
    let names = vec!["l".to_string(), "m".to_string(), "r".to_string()];
    let morphisms = vec![
        Morphism { name: "id_l".into(), src: 0, tgt: 0 },
        Morphism { name: "id_m".into(), src: 1, tgt: 1 },
        Morphism { name: "id_r".into(), src: 2, tgt: 2 },
        Morphism { name: "s".into(), src: 1, tgt: 0 },
        Morphism { name: "t".into(), src: 1, tgt: 2 },
    ];
    let mut table = HashMap::new();
    for i in 0..3 {
        table.insert((i, i), i);
    }
    table.insert((3, 1), 3);
    table.insert((0, 3), 3);
    table.insert((4, 1), 4);
    table.insert((2, 4), 4);
    Arc::new(FiniteCategory::new(names, morphisms, vec![0, 1, 2], &table))
}

/// The walking idempotent: one object, one non-identity loop e with e∘e = e.
pub fn walking_idempotent() -> Arc<FiniteCategory> {
    let names = vec!["x".to_string()];
    let morphisms = vec![
        Morphism { name: "id_x".into(), src: 0, tgt: 0 },
        Morphism { name: "e".into(), src: 0, tgt: 0 },
    ];
    let mut table = HashMap::new();
    table.insert((0, 0), 0);
    table.insert((0, 1), 1);
    table.insert((1, 0), 1);
    table.insert((1, 1), 1);
    Arc::new(FiniteCategory::new(names, morphisms, vec![0], &table))
}

/// The four-element diamond lattice ⊥ < x, y < ⊤.
pub fn diamond_lattice() -> Arc<FiniteCategory> {
    poset(4, |a, b| a == b || a == 0 || b == 3)
}

/// The commutative square 2-chain × 2-chain.
pub fn commutative_square() -> Arc<FiniteCategory> {
    product(&chain(1), &chain(1)).0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_pair_is_valid() {
        assert!(parallel_pair().validate().is_empty());
    }

    #[test]
    fn bad_composite_is_reported() {
        // start from the parallel pair and corrupt compose(id_b, f) to land at id_a
        let pp = parallel_pair();
        let mut bad = (*pp).clone();
        let n = bad.n_morphisms();
        bad.compose[1 * n + 2] = Some(0); // id_b ∘ f := id_a, wrong endpoints
        let report = bad.validate();
        assert!(report.iter().any(|v| matches!(v, Violation::CompositeEndpoints { g: 1, f: 2, .. })));
    }

    #[test]
    fn chain_poset_is_valid() {
        assert!(chain(2).validate().is_empty());
    }

    #[test]
    fn opposite_is_involution() {
        for c in [parallel_pair(), chain(2), span(), walking_idempotent()] {
            assert_eq!(c.opposite().opposite(), *c);
        }
    }

    #[test]
    fn opposite_of_discrete_is_itself() {
        let d = discrete(3);
        assert_eq!(d.opposite(), *d);
    }

    #[test]
    fn opposite_reverses_chain() {
        let c = chain(1);
        let op = c.opposite();
        assert_eq!(op.find_terminal(), Some(0));
        assert_eq!(c.find_terminal(), Some(1));
    }

    #[test]
    fn opposite_of_parallel_pair() {
        let op = parallel_pair().opposite();
        assert!(op.validate().is_empty());
        assert_eq!(op.hom(1, 0).len(), 2);
        assert_eq!(op.hom(0, 1).len(), 0);
    }

    #[test]
    fn product_with_terminal_is_isomorphic() {
        let c = parallel_pair();
        let (p, _, _) = product(&c, &terminal_category());
        assert!(are_isomorphic_categories(&p, &c).is_some());
    }

    #[test]
    fn product_of_chains_is_commutative_square() {
        let (p, p1, p2) = product(&chain(1), &chain(1));
        assert!(p.validate().is_empty());
        assert_eq!(p.n_objects(), 4);
        assert_eq!(p.n_morphisms(), 9);
        assert!(p1.is_functorial());
        assert!(p2.is_functorial());
    }

    #[test]
    fn product_with_empty_is_empty() {
        let (p, _, _) = product(&empty_category(), &parallel_pair());
        assert_eq!(p.n_objects(), 0);
    }

    #[test]
    fn coproduct_of_terminals_is_discrete() {
        let (c, injs) = coproduct(&[terminal_category(), terminal_category()]);
        assert!(are_isomorphic_categories(&c, &discrete(2)).is_some());
        assert!(injs.iter().all(|i| i.is_functorial()));
    }

    #[test]
    fn coproduct_of_nothing_is_empty() {
        let (c, _) = coproduct(&[]);
        assert_eq!(c.n_objects(), 0);
    }

    #[test]
    fn coproduct_counts() {
        let (c, _) = coproduct(&[chain(1), terminal_category()]);
        assert_eq!(c.n_objects(), 3);
        assert_eq!(c.n_morphisms(), 4);
        assert!(c.validate().is_empty());
    }

    #[test]
    fn components() {
        assert_eq!(discrete(2).connected_components().0.len(), 2);
        assert_eq!(parallel_pair().connected_components().0.len(), 1);
        let (c, _) = coproduct(&[chain(1), walking_idempotent()]);
        let (parts, subs) = c.connected_components();
        assert_eq!(parts.len(), 2);
        let (recombined, _) = coproduct(&subs.into_iter().map(Arc::new).collect::<Vec<_>>());
        assert!(are_isomorphic_categories(&recombined, &c).is_some());
    }

    #[test]
    fn terminal_object_search() {
        assert_eq!(chain(1).find_terminal(), Some(1));
        assert_eq!(parallel_pair().find_terminal(), None);
        let (kar, _) = karoubi(&walking_idempotent());
        // the split object (x, e) is terminal
        let t = kar.find_terminal().unwrap();
        assert_eq!(kar.object_names[t], "(x,e)");
    }

    #[test]
    fn coslice_at_terminal_of_poset() {
        let c = chain(1);
        let (cs, proj) = coslice(&c, 1);
        assert_eq!(cs.n_objects(), 1);
        assert!(proj.is_functorial());
    }

    #[test]
    fn coslice_of_parallel_pair_at_a() {
        let (cs, _) = coslice(&parallel_pair(), 0);
        assert_eq!(cs.n_objects(), 3); // id_a, f, g
        let nonid = (0..cs.n_morphisms()).filter(|&m| !cs.is_identity(m)).count();
        assert_eq!(nonid, 2); // id_a → f and id_a → g
        assert!(cs.validate().is_empty());
    }

    #[test]
    fn slice_of_discrete_is_terminal() {
        let (s, _) = slice(&discrete(3), 1);
        assert_eq!(s.n_objects(), 1);
        assert_eq!(s.n_morphisms(), 1);
    }

    #[test]
    fn comma_of_identities_on_discrete() {
        let d = discrete(2);
        let idf = FunctorData::identity(&d);
        let (c, pa, pb) = comma(&idf, &idf);
        assert!(are_isomorphic_categories(&c, &d).is_some());
        assert!(pa.is_functorial() && pb.is_functorial());
    }

    #[test]
    fn comma_point_over_inclusion() {
        // a ↓ f for the inclusion {b} ↪ (a ⇉ b): two objects, no non-identity morphisms
        let pp = parallel_pair();
        let pt = terminal_category();
        let incl = FunctorData {
            source: pt.clone(),
            target: pp.clone(),
            object_map: vec![1],
            morphism_map: vec![1],
        };
        let const_a = FunctorData::constant(&pt, &pp, 0);
        let (c, _, _) = comma(&const_a, &incl);
        assert!(are_isomorphic_categories(&c, &discrete(2)).is_some());
    }

    #[test]
    fn comma_with_constant_is_slice() {
        let c = span();
        for at in 0..c.n_objects() {
            let idf = FunctorData::identity(&c);
            let k = FunctorData::constant(&terminal_category(), &c, at);
            let (cm, _, _) = comma(&idf, &k);
            let (sl, _) = slice(&c, at);
            assert!(are_isomorphic_categories(&cm, &sl).is_some());
        }
    }

    #[test]
    fn arrow_category_of_identity() {
        let c = chain(1);
        let idf = FunctorData::identity(&c);
        let (arrow, _, _) = comma(&idf, &idf);
        // Fun(Δ¹, 2-chain): objects id_0, id_1, and the arrow 0→1
        assert_eq!(arrow.n_objects(), 3);
        assert!(arrow.validate().is_empty());
    }

    #[test]
    fn karoubi_of_poset_adds_nothing() {
        let c = chain(2);
        let (kar, embed) = karoubi(&c);
        assert!(are_isomorphic_categories(&kar, &c).is_some());
        assert!(embed.is_functorial() && embed.is_full() && embed.is_faithful());
    }

    #[test]
    fn karoubi_of_idem() {
        let (kar, embed) = karoubi(&walking_idempotent());
        assert_eq!(kar.n_objects(), 2);
        assert!(kar.validate().is_empty());
        assert!(embed.is_functorial() && embed.is_full() && embed.is_faithful());
        assert!(kar.find_terminal().is_some());
    }

    #[test]
    fn karoubi_of_terminal() {
        let (kar, _) = karoubi(&terminal_category());
        assert!(are_isomorphic_categories(&kar, &terminal_category()).is_some());
    }

    #[test]
    fn karoubi_is_idempotent_up_to_equivalence() {
        for c in [walking_idempotent(), parallel_pair(), chain(1)] {
            let (k1, _) = karoubi(&c);
            let (k2, embed) = karoubi(&k1);
            assert!(embed.is_equivalence(), "karoubi(karoubi) not equivalent for {:?}", c.object_names);
            let _ = k2;
        }
    }

    #[test]
    fn functor_enumeration_counts() {
        let pt = terminal_category();
        let pp = parallel_pair();
        let (fs, tr) = enumerate_functors(&pt, &pp, 1000);
        assert_eq!(fs.len(), 2);
        assert!(!tr);
        // 2-chain → parallel pair: one functor per morphism of the target
        let (fs, _) = enumerate_functors(&chain(1), &pp, 1000);
        assert_eq!(fs.len(), 4);
        assert!(fs.iter().all(|f| f.is_functorial()));
        let (fs, tr) = enumerate_functors(&chain(1), &pp, 0);
        assert!(fs.is_empty() && tr);
    }

    #[test]
    fn free_category_parallel_pair() {
        let p = GraphPresentation {
            vertices: vec!["a".into(), "b".into()],
            edges: vec![("f".into(), 0, 1), ("g".into(), 0, 1)],
            relations: vec![],
        };
        let c = free_category(&p, 2).unwrap();
        assert_eq!(c.n_objects(), 2);
        assert_eq!(c.n_morphisms(), 4);
        assert!(c.validate().is_empty());
    }

    #[test]
    fn free_category_idempotent() {
        let p = GraphPresentation {
            vertices: vec!["x".into()],
            edges: vec![("e".into(), 0, 0)],
            relations: vec![(
                RelPath { edges: vec![0, 0], base: None },
                RelPath { edges: vec![0], base: None },
            )],
        };
        let c = free_category(&p, 2).unwrap();
        assert_eq!(c.n_objects(), 1);
        assert_eq!(c.n_morphisms(), 2);
        assert!(are_isomorphic_categories(&Arc::new(c), &walking_idempotent()).is_some());
    }

    #[test]
    fn free_category_unbounded_loop_fails() {
        let p = GraphPresentation {
            vertices: vec!["x".into()],
            edges: vec![("e".into(), 0, 0)],
            relations: vec![],
        };
        match free_category(&p, 3) {
            Err(FreeCategoryError::NotClosedWithinBound { bound: 3 }) => {}
            other => panic!("expected NotClosedWithinBound, got {other:?}"),
        }
    }

    #[test]
    fn constructions_all_validate() {
        let cats = [parallel_pair(), span(), walking_idempotent(), diamond_lattice(), commutative_square()];
        for c in &cats {
            assert!(c.validate().is_empty());
            assert!(c.opposite().validate().is_empty());
            let (k, _) = karoubi(c);
            assert!(k.validate().is_empty());
            for at in 0..c.n_objects() {
                assert!(slice(c, at).0.validate().is_empty());
                assert!(coslice(c, at).0.validate().is_empty());
            }
        }
        for a in &cats[..3] {
            for b in &cats[..3] {
                assert!(product(a, b).0.validate().is_empty());
                assert!(coproduct(&[a.clone(), b.clone()]).0.validate().is_empty());
            }
        }
    }

    #[test]
    fn terminal_slice_cross_check() {
        // o is terminal iff the projection slice(C, o) → C is an isomorphism
        for c in [chain(2), diamond_lattice(), parallel_pair(), span()] {
            for o in 0..c.n_objects() {
                let is_term = (0..c.n_objects()).all(|x| c.hom(x, o).len() == 1);
                let (sl, _) = slice(&c, o);
                let slice_iso = are_isomorphic_categories(&sl, &c).is_some();
                assert_eq!(is_term, slice_iso, "object {o} of {:?}", c.object_names);
            }
        }
    }
}
