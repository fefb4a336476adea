//! Set-valued presheaves on finite categories: Yoneda embedding, pointwise
//! colimits via a union-find quotient, categories of elements, natural
//! transformations, and isomorphism testing.

use std::collections::HashMap;
use std::sync::Arc;

use crate::fincat::{FiniteCategory, FunctorData, Morphism};

/// A presheaf with finite value sets. Elements of X(c) are the indices
/// 0..sets[c]; the action of f: a → b is a function X(b) → X(a) stored as a
/// lookup table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presheaf {
    pub base: Arc<FiniteCategory>,
    pub sets: Vec<usize>,
    pub actions: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresheafError {
    #[error("diagram fails functoriality or naturality validation: {0}")]
    IllFormedDiagram(String),
}

impl Presheaf {
    /// Identity and contravariant-composition checks.
    pub fn validate(&self) -> Result<(), PresheafError> {
        let c = &self.base;
        if self.sets.len() != c.n_objects() || self.actions.len() != c.n_morphisms() {
            return Err(PresheafError::IllFormedDiagram("size mismatch with base".into()));
        }
        for f in 0..c.n_morphisms() {
            if self.actions[f].len() != self.sets[c.tgt(f)] {
                return Err(PresheafError::IllFormedDiagram(format!("action of morphism {f} has wrong domain")));
            }
            if self.actions[f].iter().any(|&x| x >= self.sets[c.src(f)]) {
                return Err(PresheafError::IllFormedDiagram(format!("action of morphism {f} escapes its codomain")));
            }
        }
        for o in 0..c.n_objects() {
            let idm = c.identity[o];
            if (0..self.sets[o]).any(|x| self.actions[idm][x] != x) {
                return Err(PresheafError::IllFormedDiagram(format!("identity action at object {o} is not the identity")));
            }
        }
        for g in 0..c.n_morphisms() {
            for f in 0..c.n_morphisms() {
                if let Some(gf) = c.compose(g, f) {
                    // actions(g∘f) = actions(f) ∘ actions(g)
                    for x in 0..self.sets[c.tgt(g)] {
                        if self.actions[gf][x] != self.actions[f][self.actions[g][x]] {
                            return Err(PresheafError::IllFormedDiagram(format!(
                                "contravariance fails at compose({g},{f}) on element {x}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_terminal(&self) -> bool {
        self.sets.iter().all(|&n| n == 1)
    }

    pub fn is_empty(&self) -> bool {
        self.sets.iter().all(|&n| n == 0)
    }

    /// Cardinality vector, the first isomorphism fingerprint.
    pub fn cardinalities(&self) -> &[usize] {
        &self.sets
    }
}

/// The representable presheaf Hom(−, c). X(d) is Hom(d, c) in morphism-index
/// order; the action of f: a → b is precomposition.
pub fn yoneda(c: &Arc<FiniteCategory>, at: usize) -> Presheaf {
    let homs: Vec<Vec<usize>> = (0..c.n_objects()).map(|d| c.hom(d, at)).collect();
    let pos: Vec<HashMap<usize, usize>> = homs
        .iter()
        .map(|h| h.iter().enumerate().map(|(i, &m)| (m, i)).collect())
        .collect();
    let sets: Vec<usize> = homs.iter().map(|h| h.len()).collect();
    let actions: Vec<Vec<usize>> = (0..c.n_morphisms())
        .map(|f| {
            let (a, b) = (c.src(f), c.tgt(f));
            homs[b]
                .iter()
                .map(|&h| pos[a][&c.compose(h, f).unwrap()])
                .collect()
        })
        .collect();
    Presheaf { base: c.clone(), sets, actions }
}

/// The presheaf with singleton value everywhere.
pub fn terminal_presheaf(c: &Arc<FiniteCategory>) -> Presheaf {
    Presheaf {
        base: c.clone(),
        sets: vec![1; c.n_objects()],
        actions: vec![vec![0]; c.n_morphisms()],
    }
}

/// The presheaf with empty value everywhere.
pub fn empty_presheaf(c: &Arc<FiniteCategory>) -> Presheaf {
    Presheaf {
        base: c.clone(),
        sets: vec![0; c.n_objects()],
        actions: vec![vec![]; c.n_morphisms()],
    }
}

/// A natural transformation, stored as one component function per object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTrans {
    pub components: Vec<Vec<usize>>,
}

impl NatTrans {
    pub fn identity(x: &Presheaf) -> NatTrans {
        NatTrans { components: x.sets.iter().map(|&n| (0..n).collect()).collect() }
    }

    pub fn is_natural(&self, x: &Presheaf, y: &Presheaf) -> bool {
        let c = &x.base;
        if x.base != y.base || self.components.len() != c.n_objects() {
            return false;
        }
        for o in 0..c.n_objects() {
            if self.components[o].len() != x.sets[o] || self.components[o].iter().any(|&v| v >= y.sets[o]) {
                return false;
            }
        }
        for f in 0..c.n_morphisms() {
            let (a, b) = (c.src(f), c.tgt(f));
            for e in 0..x.sets[b] {
                // τ_a(X(f)(e)) = Y(f)(τ_b(e))
                if self.components[a][x.actions[f][e]] != y.actions[f][self.components[b][e]] {
                    return false;
                }
            }
        }
        true
    }

    /// self ∘ other, as maps X → Y → Z.
    pub fn compose_after(&self, other: &NatTrans) -> NatTrans {
        NatTrans {
            components: other
                .components
                .iter()
                .enumerate()
                .map(|(o, comp)| comp.iter().map(|&e| self.components[o][e]).collect())
                .collect(),
        }
    }

    pub fn is_bijective(&self, x: &Presheaf, y: &Presheaf) -> bool {
        self.components.iter().enumerate().all(|(o, comp)| {
            let mut seen = vec![false; y.sets[o]];
            comp.iter().for_each(|&v| seen[v] = true);
            comp.len() == y.sets[o] && seen.iter().all(|&s| s)
        }) && x.sets == self.components.iter().map(|c| c.len()).collect::<Vec<_>>()
    }
}

/// A covariant diagram of finite sets over a finite shape J.
#[derive(Debug, Clone)]
pub struct SetDiagram {
    pub shape: Arc<FiniteCategory>,
    pub sets: Vec<usize>,
    /// maps[u] for u: j → j' is a function sets[j] → sets[j'].
    pub maps: Vec<Vec<usize>>,
}

impl SetDiagram {
    pub fn validate(&self) -> Result<(), PresheafError> {
        let j = &self.shape;
        for u in 0..j.n_morphisms() {
            if self.maps[u].len() != self.sets[j.src(u)] || self.maps[u].iter().any(|&x| x >= self.sets[j.tgt(u)]) {
                return Err(PresheafError::IllFormedDiagram(format!("edge map {u} ill-typed")));
            }
        }
        for o in 0..j.n_objects() {
            let idm = j.identity[o];
            if (0..self.sets[o]).any(|x| self.maps[idm][x] != x) {
                return Err(PresheafError::IllFormedDiagram(format!("identity edge at {o} not the identity")));
            }
        }
        for g in 0..j.n_morphisms() {
            for f in 0..j.n_morphisms() {
                if let Some(gf) = j.compose(g, f) {
                    for x in 0..self.sets[j.src(f)] {
                        if self.maps[gf][x] != self.maps[g][self.maps[f][x]] {
                            return Err(PresheafError::IllFormedDiagram(format!(
                                "functoriality fails at compose({g},{f})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
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

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Colimit of a set diagram: the disjoint union quotiented by the relation
/// generated by x ~ maps[u](x). Classes are numbered by minimal member in
/// the disjoint union, which makes the output deterministic.
///
/// Returns the size of the colimit and one cocone function per node.
pub fn set_colimit(d: &SetDiagram) -> (usize, Vec<Vec<usize>>) {
    let j = &d.shape;
    let offsets: Vec<usize> = d
        .sets
        .iter()
        .scan(0, |acc, &n| {
            let o = *acc;
            *acc += n;
            Some(o)
        })
        .collect();
    let total: usize = d.sets.iter().sum();
    let mut uf = UnionFind::new(total);
    for u in 0..j.n_morphisms() {
        let (a, b) = (j.src(u), j.tgt(u));
        for x in 0..d.sets[a] {
            uf.union(offsets[a] + x, offsets[b] + d.maps[u][x]);
        }
    }
    // number classes by minimal member
    let mut class_index: HashMap<usize, usize> = HashMap::new();
    for g in 0..total {
        let r = uf.find(g);
        if r == g {
            let k = class_index.len();
            class_index.insert(r, k);
        }
    }
    let cocone = (0..j.n_objects())
        .map(|o| (0..d.sets[o]).map(|x| class_index[&uf.find(offsets[o] + x)]).collect())
        .collect();
    (class_index.len(), cocone)
}

/// A diagram of presheaves on a common base, indexed by a finite shape.
#[derive(Debug, Clone)]
pub struct PresheafDiagram {
    pub shape: Arc<FiniteCategory>,
    pub nodes: Vec<Presheaf>,
    pub edges: Vec<NatTrans>,
}

impl PresheafDiagram {
    pub fn validate(&self) -> Result<(), PresheafError> {
        let j = &self.shape;
        if self.nodes.len() != j.n_objects() || self.edges.len() != j.n_morphisms() {
            return Err(PresheafError::IllFormedDiagram("node/edge count mismatch".into()));
        }
        let base = &self.nodes.first().map(|n| n.base.clone());
        for n in &self.nodes {
            n.validate()?;
            if Some(&n.base) != base.as_ref() {
                return Err(PresheafError::IllFormedDiagram("nodes on different bases".into()));
            }
        }
        for u in 0..j.n_morphisms() {
            if !self.edges[u].is_natural(&self.nodes[j.src(u)], &self.nodes[j.tgt(u)]) {
                return Err(PresheafError::IllFormedDiagram(format!("edge {u} is not natural")));
            }
        }
        for o in 0..j.n_objects() {
            if self.edges[j.identity[o]] != NatTrans::identity(&self.nodes[o]) {
                return Err(PresheafError::IllFormedDiagram(format!("identity edge at node {o} not the identity")));
            }
        }
        for g in 0..j.n_morphisms() {
            for f in 0..j.n_morphisms() {
                if let Some(gf) = j.compose(g, f) {
                    if self.edges[gf] != self.edges[g].compose_after(&self.edges[f]) {
                        return Err(PresheafError::IllFormedDiagram(format!(
                            "edge functoriality fails at compose({g},{f})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Pointwise colimit of a diagram of presheaves: the value at each base
/// object is the set colimit of the objectwise diagram, and actions are
/// induced on quotient classes.
pub fn presheaf_colimit(d: &PresheafDiagram) -> Result<(Presheaf, Vec<NatTrans>), PresheafError> {
    d.validate()?;
    let j = &d.shape;
    let base = d
        .nodes
        .first()
        .map(|n| n.base.clone())
        .ok_or_else(|| PresheafError::IllFormedDiagram("empty-shape colimit needs a base; use empty_presheaf".into()));
    let base = match base {
        Ok(b) => b,
        Err(e) => return Err(e),
    };
    let mut sets = vec![0usize; base.n_objects()];
    let mut cocones: Vec<Vec<Vec<usize>>> = Vec::new(); // per base object, per node, function
    for c in 0..base.n_objects() {
        let sd = SetDiagram {
            shape: j.clone(),
            sets: d.nodes.iter().map(|n| n.sets[c]).collect(),
            maps: d.edges.iter().map(|e| e.components[c].clone()).collect(),
        };
        let (size, cocone) = set_colimit(&sd);
        sets[c] = size;
        cocones.push(cocone);
    }
    // induced actions: for f: a → b and class of (node k, x ∈ X_k(b)),
    // the image is the class of (k, X_k(f)(x)). Well-definedness is implied
    // by naturality of the edges; asserted below.
    let mut actions: Vec<Vec<usize>> = Vec::new();
    for f in 0..base.n_morphisms() {
        let (a, b) = (base.src(f), base.tgt(f));
        let mut act = vec![usize::MAX; sets[b]];
        for (k, node) in d.nodes.iter().enumerate() {
            for x in 0..node.sets[b] {
                let class_b = cocones[b][k][x];
                let image = cocones[a][k][node.actions[f][x]];
                if act[class_b] == usize::MAX {
                    act[class_b] = image;
                } else if act[class_b] != image {
                    return Err(PresheafError::IllFormedDiagram(format!(
                        "induced action of morphism {f} is not well-defined"
                    )));
                }
            }
        }
        if act.iter().any(|&v| v == usize::MAX) {
            return Err(PresheafError::IllFormedDiagram(format!(
                "induced action of morphism {f} misses a class"
            )));
        }
        actions.push(act);
    }
    let colim = Presheaf { base, sets, actions };
    colim.validate()?;
    let legs = (0..j.n_objects())
        .map(|k| NatTrans {
            components: (0..colim.base.n_objects()).map(|c| cocones[c][k].clone()).collect(),
        })
        .collect();
    Ok((colim, legs))
}

/// The category of elements C/X with its projection to C. Objects are pairs
/// (c, x ∈ X(c)); a morphism (c, x) → (c', x') is f: c → c' with
/// X(f)(x') = x.
pub fn category_of_elements(x: &Presheaf) -> (Arc<FiniteCategory>, FunctorData) {
    let c = &x.base;
    let mut objs = Vec::new(); // (object, element)
    for o in 0..c.n_objects() {
        for e in 0..x.sets[o] {
            objs.push((o, e));
        }
    }
    let object_names: Vec<String> = objs
        .iter()
        .map(|&(o, e)| format!("({},{e})", c.object_names[o]))
        .collect();
    let mut morphisms = Vec::new();
    let mut mor_data = Vec::new(); // (from, to, f)
    for (i, &(o1, e1)) in objs.iter().enumerate() {
        for (j, &(o2, e2)) in objs.iter().enumerate() {
            for f in c.hom(o1, o2) {
                if x.actions[f][e2] == e1 {
                    mor_data.push((i, j, f));
                    morphisms.push(Morphism {
                        name: format!("{}[{i}→{j}]", c.morphisms[f].name),
                        src: i,
                        tgt: j,
                    });
                }
            }
        }
    }
    let find = |i: usize, j: usize, f: usize| mor_data.iter().position(|&m| m == (i, j, f)).unwrap();
    let identity: Vec<usize> = objs.iter().enumerate().map(|(i, &(o, _))| find(i, i, c.identity[o])).collect();
    let mut table = HashMap::new();
    for (gi, &(j2, k, g)) in mor_data.iter().enumerate() {
        for (fi, &(i, j, f)) in mor_data.iter().enumerate() {
            if j == j2 {
                table.insert((gi, fi), find(i, k, c.compose(g, f).unwrap()));
            }
        }
    }
    let cat = Arc::new(FiniteCategory::new(object_names, morphisms, identity, &table));
    let proj = FunctorData {
        source: cat.clone(),
        target: c.clone(),
        object_map: objs.iter().map(|&(o, _)| o).collect(),
        morphism_map: mor_data.iter().map(|&(_, _, f)| f).collect(),
    };
    (cat, proj)
}

/// Checks the right-fibration property of C/X → C: for each f: c → c' and
/// each x' ∈ X(c'), there is exactly one lift ending at (c', x').
pub fn right_fibration_check(x: &Presheaf) -> bool {
    let (el, proj) = category_of_elements(x);
    let c = &x.base;
    for f in 0..c.n_morphisms() {
        for tgt_obj in 0..el.n_objects() {
            if proj.ob(tgt_obj) != c.tgt(f) {
                continue;
            }
            let lifts = (0..el.n_morphisms())
                .filter(|&m| el.tgt(m) == tgt_obj && proj.mor(m) == f)
                .count();
            if lifts != 1 {
                return false;
            }
        }
    }
    true
}

/// The colimit of ρ∘π_X over the category of elements is isomorphic to X.
pub fn tautological_cocone_check(x: &Presheaf) -> bool {
    let (el, proj) = category_of_elements(x);
    if el.n_objects() == 0 {
        return x.is_empty();
    }
    let nodes: Vec<Presheaf> = (0..el.n_objects()).map(|o| yoneda(&x.base, proj.ob(o))).collect();
    let edges: Vec<NatTrans> = (0..el.n_morphisms())
        .map(|m| yoneda_postcompose(&x.base, proj.ob(el.src(m)), proj.ob(el.tgt(m)), proj.mor(m)))
        .collect();
    let diagram = PresheafDiagram { shape: el, nodes, edges };
    match presheaf_colimit(&diagram) {
        Ok((colim, _)) => are_isomorphic(&colim, x).is_some(),
        Err(_) => false,
    }
}

/// The natural transformation ρ(a) → ρ(b) induced by f: a → b, i.e.
/// postcomposition with f.
pub fn yoneda_postcompose(c: &Arc<FiniteCategory>, a: usize, b: usize, f: usize) -> NatTrans {
    assert_eq!(c.src(f), a);
    assert_eq!(c.tgt(f), b);
    let components = (0..c.n_objects())
        .map(|d| {
            let hom_b = c.hom(d, b);
            c.hom(d, a)
                .iter()
                .map(|&h| hom_b.iter().position(|&k| Some(k) == c.compose(f, h)).unwrap())
                .collect()
        })
        .collect();
    NatTrans { components }
}

/// Exhaustive enumeration of all natural transformations X → Y, in
/// lexicographic order of component functions.
pub fn nat_transformations(x: &Presheaf, y: &Presheaf) -> Vec<NatTrans> {
    assert_eq!(x.base, y.base, "nat_transformations requires a common base");
    let c = &x.base;
    let mut out = Vec::new();
    let mut components: Vec<Vec<usize>> = Vec::new();
    search_nat(c, x, y, &mut components, &mut out, false);
    out
}

/// Searches for an invertible natural transformation X → Y. Cardinality
/// fingerprints prune before any backtracking happens.
pub fn are_isomorphic(x: &Presheaf, y: &Presheaf) -> Option<NatTrans> {
    if x.base != y.base || x.sets != y.sets {
        return None;
    }
    // secondary fingerprint: per-morphism image-size profile
    for f in 0..x.base.n_morphisms() {
        let image_size = |acts: &Vec<usize>| {
            let mut v = acts.clone();
            v.sort_unstable();
            v.dedup();
            v.len()
        };
        if image_size(&x.actions[f]) != image_size(&y.actions[f]) {
            return None;
        }
    }
    let c = x.base.clone();
    let mut out = Vec::new();
    let mut components: Vec<Vec<usize>> = Vec::new();
    search_nat(&c, x, y, &mut components, &mut out, true);
    out.into_iter().next()
}

fn search_nat(
    c: &Arc<FiniteCategory>,
    x: &Presheaf,
    y: &Presheaf,
    components: &mut Vec<Vec<usize>>,
    out: &mut Vec<NatTrans>,
    bijective_only: bool,
) {
    if bijective_only && !out.is_empty() {
        return;
    }
    let o = components.len();
    if o == c.n_objects() {
        out.push(NatTrans { components: components.clone() });
        return;
    }
    // enumerate functions X(o) → Y(o) lexicographically
    let (nx, ny) = (x.sets[o], y.sets[o]);
    if nx > 0 && ny == 0 {
        return;
    }
    let mut func = vec![0usize; nx];
    loop {
        let candidate_ok = (!bijective_only || is_bijection(&func, ny)) && {
            components.push(func.clone());
            // check naturality for morphisms between already-assigned objects
            let ok = naturality_so_far(c, x, y, components);
            if ok {
                search_nat(c, x, y, components, out, bijective_only);
            }
            components.pop();
            true
        };
        let _ = candidate_ok;
        if bijective_only && !out.is_empty() {
            return;
        }
        // next function
        let mut i = 0;
        loop {
            if i == nx {
                return;
            }
            func[i] += 1;
            if func[i] < ny {
                break;
            }
            func[i] = 0;
            i += 1;
        }
    }
}

fn is_bijection(func: &[usize], n: usize) -> bool {
    if func.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in func {
        if seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

fn naturality_so_far(c: &Arc<FiniteCategory>, x: &Presheaf, y: &Presheaf, components: &[Vec<usize>]) -> bool {
    let assigned = components.len();
    for f in 0..c.n_morphisms() {
        let (a, b) = (c.src(f), c.tgt(f));
        if a < assigned && b < assigned {
            for e in 0..x.sets[b] {
                if components[a][x.actions[f][e]] != y.actions[f][components[b][e]] {
                    return false;
                }
            }
        }
    }
    true
}

/// Exhaustive enumeration of all presheaves on `c` with value sets of size
/// at most `max_set`, in deterministic order.
pub fn enumerate_presheaves(c: &Arc<FiniteCategory>, max_set: usize) -> Vec<Presheaf> {
    let mut out = Vec::new();
    let n = c.n_objects();
    let mut sizes = vec![0usize; n];
    loop {
        enumerate_actions(c, &sizes, &mut out);
        // next size vector
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            sizes[i] += 1;
            if sizes[i] <= max_set {
                break;
            }
            sizes[i] = 0;
            i += 1;
        }
        if n == 0 {
            return out;
        }
    }
}

fn enumerate_actions(c: &Arc<FiniteCategory>, sizes: &[usize], out: &mut Vec<Presheaf>) {
    let nonid: Vec<usize> = (0..c.n_morphisms()).filter(|&f| !c.is_identity(f)).collect();
    let mut actions: Vec<Option<Vec<usize>>> = vec![None; c.n_morphisms()];
    for o in 0..c.n_objects() {
        actions[c.identity[o]] = Some((0..sizes[o]).collect());
    }
    fn rec(
        c: &Arc<FiniteCategory>,
        sizes: &[usize],
        nonid: &[usize],
        k: usize,
        actions: &mut Vec<Option<Vec<usize>>>,
        out: &mut Vec<Presheaf>,
    ) {
        if k == nonid.len() {
            let p = Presheaf {
                base: c.clone(),
                sets: sizes.to_vec(),
                actions: actions.iter().map(|a| a.clone().unwrap()).collect(),
            };
            if p.validate().is_ok() {
                out.push(p);
            }
            return;
        }
        let f = nonid[k];
        let (dom, cod) = (sizes[c.tgt(f)], sizes[c.src(f)]);
        if dom > 0 && cod == 0 {
            return;
        }
        let mut func = vec![0usize; dom];
        loop {
            actions[f] = Some(func.clone());
            rec(c, sizes, nonid, k + 1, actions, out);
            actions[f] = None;
            let mut i = 0;
            loop {
                if i == dom {
                    return;
                }
                func[i] += 1;
                if func[i] < cod {
                    break;
                }
                func[i] = 0;
                i += 1;
            }
        }
    }
    rec(c, sizes, &nonid, 0, &mut actions, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{self, are_isomorphic_categories, chain, parallel_pair, terminal_category};

    #[test]
    fn yoneda_on_terminal() {
        let x = yoneda(&terminal_category(), 0);
        assert_eq!(x.sets, vec![1]);
        x.validate().unwrap();
    }

    #[test]
    fn yoneda_on_parallel_pair() {
        let pp = parallel_pair();
        let x = yoneda(&pp, 1);
        assert_eq!(x.sets, vec![2, 1]); // Hom(a,b) = {f,g}, Hom(b,b) = {id}
        x.validate().unwrap();
        assert!(!x.is_terminal());
        let y = yoneda(&pp, 0);
        assert_eq!(y.sets, vec![1, 0]);
    }

    #[test]
    fn yoneda_at_terminal_object_is_terminal() {
        let c = chain(1);
        assert!(yoneda(&c, 1).is_terminal());
    }

    #[test]
    fn terminal_and_empty() {
        let pp = parallel_pair();
        assert!(terminal_presheaf(&pp).is_terminal());
        assert!(!empty_presheaf(&pp).is_terminal());
        terminal_presheaf(&pp).validate().unwrap();
        empty_presheaf(&pp).validate().unwrap();
    }

    #[test]
    fn set_colimit_point() {
        let d = SetDiagram {
            shape: terminal_category(),
            sets: vec![3],
            maps: vec![(0..3).collect()],
        };
        let (n, cocone) = set_colimit(&d);
        assert_eq!(n, 3);
        assert_eq!(cocone[0], vec![0, 1, 2]);
    }

    #[test]
    fn set_colimit_coproduct() {
        let d = SetDiagram {
            shape: fincat::discrete(2),
            sets: vec![2, 3],
            maps: vec![vec![0, 1], vec![0, 1, 2]],
        };
        let (n, _) = set_colimit(&d);
        assert_eq!(n, 5);
    }

    #[test]
    fn set_colimit_coequalizer() {
        // f = (0↦x, 1↦y), g = (0↦y, 1↦z): quotient {x,y,z}/(x~y~z) has size 1
        let d = SetDiagram {
            shape: parallel_pair(),
            sets: vec![2, 3],
            maps: vec![vec![0, 1], vec![0, 1, 2], vec![0, 1], vec![1, 2]],
        };
        d.validate().unwrap();
        let (n, _) = set_colimit(&d);
        assert_eq!(n, 1);
    }

    #[test]
    fn colimit_of_constant_diagram_over_shape_with_terminal() {
        let j = chain(1);
        let pp = parallel_pair();
        let x = yoneda(&pp, 1);
        let d = PresheafDiagram {
            shape: j.clone(),
            nodes: vec![x.clone(), x.clone()],
            edges: vec![NatTrans::identity(&x), NatTrans::identity(&x), NatTrans::identity(&x)],
        };
        let (colim, _) = presheaf_colimit(&d).unwrap();
        assert!(are_isomorphic(&colim, &x).is_some());
    }

    #[test]
    fn coequalizer_of_yoneda_pair_is_terminal() {
        // coequalizer of ρf, ρg: ρ(a) ⇉ ρ(b) on C = a⇉b is the terminal presheaf
        let pp = parallel_pair();
        let ra = yoneda(&pp, 0);
        let rb = yoneda(&pp, 1);
        let rf = yoneda_postcompose(&pp, 0, 1, 2);
        let rg = yoneda_postcompose(&pp, 0, 1, 3);
        assert!(rf.is_natural(&ra, &rb));
        assert!(rg.is_natural(&ra, &rb));
        let d = PresheafDiagram {
            shape: pp.clone(),
            nodes: vec![ra.clone(), rb.clone()],
            edges: vec![NatTrans::identity(&ra), NatTrans::identity(&rb), rf, rg],
        };
        let (colim, _) = presheaf_colimit(&d).unwrap();
        assert!(colim.is_terminal());
    }

    #[test]
    fn elements_of_terminal_is_base() {
        for c in [parallel_pair(), chain(2), fincat::span()] {
            let (el, proj) = category_of_elements(&terminal_presheaf(&c));
            assert!(are_isomorphic_categories(&el, &c).is_some());
            assert!(proj.is_functorial());
        }
    }

    #[test]
    fn elements_of_representable_is_slice() {
        let c = parallel_pair();
        for at in 0..c.n_objects() {
            let (el, _) = category_of_elements(&yoneda(&c, at));
            let (sl, _) = fincat::slice(&c, at);
            assert!(are_isomorphic_categories(&el, &sl).is_some());
        }
    }

    #[test]
    fn elements_of_empty_is_empty() {
        let (el, _) = category_of_elements(&empty_presheaf(&parallel_pair()));
        assert_eq!(el.n_objects(), 0);
    }

    #[test]
    fn right_fibration_property() {
        let pp = parallel_pair();
        assert!(right_fibration_check(&yoneda(&pp, 1)));
        assert!(right_fibration_check(&terminal_presheaf(&pp)));
    }

    #[test]
    fn tautological_cocone() {
        let pp = parallel_pair();
        assert!(tautological_cocone_check(&yoneda(&pp, 0)));
        assert!(tautological_cocone_check(&yoneda(&pp, 1)));
        assert!(tautological_cocone_check(&terminal_presheaf(&pp)));
        // exhaustively on the 2-chain with small value sets
        let c = chain(1);
        for p in enumerate_presheaves(&c, 2) {
            assert!(tautological_cocone_check(&p));
        }
    }

    #[test]
    fn yoneda_lemma_counts() {
        let pp = parallel_pair();
        for x in [yoneda(&pp, 0), yoneda(&pp, 1), terminal_presheaf(&pp), empty_presheaf(&pp)] {
            for c in 0..pp.n_objects() {
                let nats = nat_transformations(&yoneda(&pp, c), &x);
                assert_eq!(nats.len(), x.sets[c], "Yoneda bijection fails at object {c}");
            }
        }
    }

    #[test]
    fn nat_counts_trivia() {
        let pp = parallel_pair();
        let t = terminal_presheaf(&pp);
        assert_eq!(nat_transformations(&t, &t).len(), 1);
        assert_eq!(nat_transformations(&empty_presheaf(&pp), &t).len(), 1);
    }

    #[test]
    fn iso_finds_identity() {
        let x = yoneda(&parallel_pair(), 1);
        let iso = are_isomorphic(&x, &x).unwrap();
        assert!(iso.is_bijective(&x, &x));
    }

    #[test]
    fn iso_pruned_on_mismatched_cardinalities() {
        let pp = parallel_pair();
        assert!(are_isomorphic(&yoneda(&pp, 0), &yoneda(&pp, 1)).is_none());
    }
}
