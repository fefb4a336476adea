//! Free F-colimit completion machinery: recipe evaluation, bounded staged
//! closure search with isomorphism dedup, membership verdicts, catalog
//! deciders, F-compactness and the recognition-principle checks.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::fincat::{self, FiniteCategory};
use crate::presheaf::{
    self, are_isomorphic, category_of_elements, nat_transformations, presheaf_colimit, terminal_presheaf,
    yoneda, NatTrans, Presheaf, PresheafDiagram, PresheafError,
};
use crate::verdict::{Bounds, Verdict, VerdictStatus};

/// The finite instance of a class F of colimit shapes.
#[derive(Debug, Clone)]
pub struct ShapeClass {
    pub name: String,
    pub shapes: Vec<Arc<FiniteCategory>>,
}

impl ShapeClass {
    pub fn new(name: impl Into<String>, shapes: Vec<Arc<FiniteCategory>>) -> Self {
        let class = ShapeClass { name: name.into(), shapes };
        assert!(class.shapes.iter().all(|s| s.is_valid()), "shape class contains an invalid category");
        class
    }

    pub fn empty() -> Self {
        ShapeClass { name: "empty".into(), shapes: vec![] }
    }
}

/// One step of a colimit recipe: either a representable leaf or a colimit of
/// earlier steps over one of the declared shapes. Shapes are referenced by
/// index into the class, so certificates stay small and re-checkable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum RecipeStep {
    Leaf {
        object: usize,
    },
    Colim {
        shape: usize,
        /// nodes[j] is the index of an earlier step, per shape object j.
        nodes: Vec<usize>,
        /// edges[u][c] maps elements of the source step's value at base
        /// object c to elements of the target step's value at c.
        edges: Vec<Vec<Vec<usize>>>,
    },
}

/// A DAG of colimit-formation steps over representable leaves; the
/// certificate datatype for membership verdicts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recipe {
    pub steps: Vec<RecipeStep>,
    pub root: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecipeError {
    #[error("step {step} uses shape index {shape} outside the declared class")]
    ShapeNotInClass { step: usize, shape: usize },
    #[error("step {step} references a step that is not strictly earlier (the recipe must be a DAG)")]
    NotAcyclic { step: usize },
    #[error("step {1} is ill-formed: {0}")]
    IllFormed(String, usize),
    #[error("leaf object {object} of step {step} is not an object of the base")]
    BadLeaf { step: usize, object: usize },
    #[error(transparent)]
    Diagram(#[from] PresheafError),
    #[error("recipe root {root} out of range")]
    BadRoot { root: usize },
}

/// Evaluates a recipe over base `c` and shape class `f`. Steps are evaluated
/// in order and memoized; output labeling is deterministic.
pub fn eval_recipe(c: &Arc<FiniteCategory>, f: &ShapeClass, r: &Recipe) -> Result<Presheaf, RecipeError> {
    let mut values: Vec<Presheaf> = Vec::with_capacity(r.steps.len());
    for (i, step) in r.steps.iter().enumerate() {
        let value = match step {
            RecipeStep::Leaf { object } => {
                if *object >= c.n_objects() {
                    return Err(RecipeError::BadLeaf { step: i, object: *object });
                }
                yoneda(c, *object)
            }
            RecipeStep::Colim { shape, nodes, edges } => {
                let j = f
                    .shapes
                    .get(*shape)
                    .ok_or(RecipeError::ShapeNotInClass { step: i, shape: *shape })?;
                if nodes.iter().any(|&n| n >= i) {
                    return Err(RecipeError::NotAcyclic { step: i });
                }
                if nodes.len() != j.n_objects() || edges.len() != j.n_morphisms() {
                    return Err(RecipeError::IllFormed("node/edge arity mismatch with shape".into(), i));
                }
                if j.n_objects() == 0 {
                    // colimit of the empty diagram is the empty presheaf
                    presheaf::empty_presheaf(c)
                } else {
                    let diagram = PresheafDiagram {
                        shape: j.clone(),
                        nodes: nodes.iter().map(|&n| values[n].clone()).collect(),
                        edges: edges.iter().map(|e| NatTrans { components: e.clone() }).collect(),
                    };
                    let (colim, _) = presheaf_colimit(&diagram)?;
                    colim
                }
            }
        };
        values.push(value);
    }
    values
        .into_iter()
        .nth(r.root)
        .ok_or(RecipeError::BadRoot { root: r.root })
}

/// Extracts the sub-recipe reachable from `root` of a step arena, renumbering
/// steps in evaluation order.
fn extract_recipe(steps: &[RecipeStep], root: usize) -> Recipe {
    let mut needed = vec![false; root + 1];
    needed[root] = true;
    for i in (0..=root).rev() {
        if needed[i] {
            if let RecipeStep::Colim { nodes, .. } = &steps[i] {
                for &n in nodes {
                    needed[n] = true;
                }
            }
        }
    }
    let mut renumber = vec![usize::MAX; root + 1];
    let mut out = Vec::new();
    for i in 0..=root {
        if needed[i] {
            renumber[i] = out.len();
            let step = match &steps[i] {
                RecipeStep::Leaf { object } => RecipeStep::Leaf { object: *object },
                RecipeStep::Colim { shape, nodes, edges } => RecipeStep::Colim {
                    shape: *shape,
                    nodes: nodes.iter().map(|&n| renumber[n]).collect(),
                    edges: edges.clone(),
                },
            };
            out.push(step);
        }
    }
    Recipe { root: out.len() - 1, steps: out }
}

/// The tags of theorem-backed catalog deciders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassTag {
    /// F = ∅: membership iff a terminal object exists.
    Empty,
    /// F = all (finite) discrete categories: membership iff every connected
    /// component has a terminal object.
    AllCoproducts,
    /// F = {Δ⁰ ⊔ Δ⁰}: membership iff there is at least one component and
    /// every component has a terminal object.
    BinaryCoproducts,
    /// F = {walking idempotent}: membership iff the Karoubi envelope has a
    /// terminal object.
    Idempotents,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown class tag")]
pub struct UnknownClassTag;

/// Always-decisive membership decider for the cataloged classes. The
/// `Member` verdicts carry certificates built from the canonical shape class
/// of the tag.
pub fn catalog_decider(j: &Arc<FiniteCategory>, tag: ClassTag) -> Verdict {
    let bounds = Bounds { max_stage: 0, max_objects_per_stage: 0, max_diagrams: 0 };
    match tag {
        ClassTag::Empty => match j.find_terminal() {
            Some(t) => {
                let recipe = Recipe { steps: vec![RecipeStep::Leaf { object: t }], root: 0 };
                Verdict::member(Some(recipe), bounds)
            }
            None => Verdict::non_member("no terminal object", bounds),
        },
        ClassTag::AllCoproducts | ClassTag::BinaryCoproducts => {
            let (parts, subs) = j.connected_components();
            if parts.is_empty() {
                return Verdict::non_member("empty category has no components", bounds);
            }
            let mut terminals = Vec::new();
            for (k, sub) in subs.iter().enumerate() {
                match sub.find_terminal() {
                    Some(t) => terminals.push(parts[k][t]),
                    None => {
                        return Verdict::non_member(
                            format!("component {k} has no terminal object"),
                            bounds,
                        )
                    }
                }
            }
            // certificate: iterated binary coproducts of the component
            // terminals' representables, over the binary discrete shape
            let mut recipe = binary_coproduct_recipe(&terminals);
            resolve_identity_edges(j, &catalog_shape_class(tag), &mut recipe)
                .expect("coproduct certificate is well-formed");
            Verdict::member(Some(recipe), bounds)
        }
        ClassTag::Idempotents => {
            let (kar, _) = fincat::karoubi(j);
            match kar.find_terminal() {
                Some(t) => {
                    // the terminal object of the envelope is an idempotent
                    // p: x → x in J; the terminal presheaf is the splitting of
                    // ρ(p), a colimit over the walking idempotent.
                    let name = &kar.object_names[t];
                    // recover (x, p) from the envelope construction
                    let p = (0..j.n_morphisms())
                        .find(|&m| {
                            j.src(m) == j.tgt(m)
                                && j.compose(m, m) == Some(m)
                                && *name == format!("({},{})", j.object_names[j.src(m)], j.morphisms[m].name)
                        })
                        .expect("terminal envelope object must come from an idempotent");
                    let x = j.src(p);
                    let rho_p = presheaf::yoneda_postcompose(j, x, x, p);
                    let idem = fincat::walking_idempotent();
                    let id_edge = NatTrans::identity(&yoneda(j, x));
                    let recipe = Recipe {
                        steps: vec![
                            RecipeStep::Leaf { object: x },
                            RecipeStep::Colim {
                                shape: 0,
                                nodes: vec![0],
                                edges: vec![id_edge.components, rho_p.components],
                            },
                        ],
                        root: 1,
                    };
                    debug_assert_eq!(idem.n_morphisms(), 2);
                    Verdict::member(Some(recipe), bounds)
                }
                None => Verdict::non_member("Karoubi envelope has no terminal object", bounds),
            }
        }
    }
}

/// Canonical shape class against which a catalog-decider certificate is
/// evaluated.
pub fn catalog_shape_class(tag: ClassTag) -> ShapeClass {
    match tag {
        ClassTag::Empty => ShapeClass::new("empty", vec![]),
        ClassTag::AllCoproducts | ClassTag::BinaryCoproducts => {
            ShapeClass::new("binary-discrete", vec![fincat::discrete(2)])
        }
        ClassTag::Idempotents => ShapeClass::new("idem", vec![fincat::walking_idempotent()]),
    }
}

/// ρ(t_0) ⊔ ρ(t_1) ⊔ … as iterated binary coproducts over shape index 0
/// (the 2-point discrete category).
fn binary_coproduct_recipe(terminals: &[usize]) -> Recipe {
    let mut steps: Vec<RecipeStep> = terminals.iter().map(|&t| RecipeStep::Leaf { object: t }).collect();
    let mut acc = 0usize;
    for k in 1..terminals.len() {
        let next = steps.len();
        steps.push(RecipeStep::Colim {
            shape: 0,
            nodes: vec![acc, k],
            // discrete shape: the only edges are identities; their components
            // are filled in at evaluation time from the node values, so we
            // cannot precompute them here. Use empty placeholders resolved by
            // eval via identity detection is not possible; instead edges are
            // identity transformations whose components depend on the node
            // values. They are reconstructed below.
            edges: vec![vec![], vec![]],
        });
        acc = next;
    }
    Recipe { root: steps.len() - 1, steps }
}

/// Fills in identity edges of discrete-shape colimit steps whose components
/// were left empty. Needs the base category to size the identity components.
pub fn resolve_identity_edges(c: &Arc<FiniteCategory>, f: &ShapeClass, r: &mut Recipe) -> Result<(), RecipeError> {
    for i in 0..r.steps.len() {
        let sizes: Option<(usize, Vec<Vec<Vec<usize>>>)> = match &r.steps[i] {
            RecipeStep::Colim { shape, nodes, edges } if edges.iter().any(|e| e.is_empty()) => {
                let j = f
                    .shapes
                    .get(*shape)
                    .ok_or(RecipeError::ShapeNotInClass { step: i, shape: *shape })?;
                // evaluate prefix to know node values
                let prefix = Recipe { steps: r.steps[..i].to_vec(), root: 0 };
                let mut values = Vec::new();
                for k in 0..i {
                    let sub = Recipe { steps: prefix.steps.clone(), root: k };
                    values.push(eval_recipe(c, f, &sub)?);
                }
                let mut new_edges = Vec::new();
                for (u, e) in edges.iter().enumerate() {
                    if !e.is_empty() {
                        new_edges.push(e.clone());
                    } else if j.is_identity(u) {
                        let node = &values[nodes[j.src(u)]];
                        new_edges.push(NatTrans::identity(node).components);
                    } else {
                        return Err(RecipeError::IllFormed("missing non-identity edge".into(), i));
                    }
                }
                Some((i, new_edges))
            }
            _ => None,
        };
        if let Some((i, new_edges)) = sizes {
            if let RecipeStep::Colim { edges, .. } = &mut r.steps[i] {
                *edges = new_edges;
            }
        }
    }
    Ok(())
}

/// Syntactic recognition of a catalog class from a declared finite shape
/// class. Conservative: only shapes isomorphic to the canonical ones match.
pub fn recognize_class(f: &ShapeClass) -> Option<ClassTag> {
    if f.shapes.is_empty() {
        return Some(ClassTag::Empty);
    }
    let idem = fincat::walking_idempotent();
    if f.shapes.len() == 1 && fincat::are_isomorphic_categories(&f.shapes[0], &idem).is_some() {
        return Some(ClassTag::Idempotents);
    }
    let all_discrete = f
        .shapes
        .iter()
        .all(|s| s.n_morphisms() == s.n_objects());
    if all_discrete && f.shapes.iter().any(|s| s.n_objects() == 2) {
        // with a binary discrete shape available, every coproduct arity ≥ 1
        // is reachable by iteration
        return Some(ClassTag::BinaryCoproducts);
    }
    None
}

/// Staged bounded search for `target` in the free F-colimit completion of
/// PSh(C). `NonMember` is only issued by a theorem-backed catalog decider;
/// bound exhaustion yields `Unknown`.
pub fn closure_search(c: &Arc<FiniteCategory>, f: &ShapeClass, target: &Presheaf, bounds: Bounds) -> Verdict {
    target.validate().expect("closure_search target must be a valid presheaf");
    // catalog deciders apply when the target is terminal and F matches
    if target.is_terminal() {
        if let Some(tag) = recognize_class(f) {
            let mut v = catalog_decider(c, tag);
            v.bounds_used = bounds;
            if let Some(recipe) = &mut v.certificate {
                // certificates from the decider are expressed over the
                // canonical class; re-express over the declared class when
                // possible, else fall back to a staged search for the
                // certificate only.
                if let Some(re) = reindex_certificate(c, f, tag, recipe) {
                    *recipe = re;
                } else {
                    v.certificate = None;
                }
            }
            if v.status == VerdictStatus::Member && v.certificate.is_none() {
                // fall through to the generic search so that a Member verdict
                // always carries a re-checkable certificate over F
                if let Some(found) = staged_search(c, f, target, bounds) {
                    return Verdict::member(Some(found), bounds);
                }
            }
            return v;
        }
    }
    match staged_search(c, f, target, bounds) {
        Some(recipe) => Verdict::member(Some(recipe), bounds),
        None => Verdict::unknown(bounds),
    }
}

/// Re-expresses a catalog certificate over the declared class by locating an
/// isomorphic copy of each canonical shape in it.
fn reindex_certificate(c: &Arc<FiniteCategory>, f: &ShapeClass, tag: ClassTag, recipe: &Recipe) -> Option<Recipe> {
    let canonical = catalog_shape_class(tag);
    let mut recipe = recipe.clone();
    resolve_identity_edges(c, &canonical, &mut recipe).ok()?;
    // map each canonical shape index to an identical (not merely isomorphic)
    // shape of f, since edge/node indexing must agree
    let mut shape_map = Vec::new();
    for s in &canonical.shapes {
        let found = f.shapes.iter().position(|t| **t == **s)?;
        shape_map.push(found);
    }
    let steps = recipe
        .steps
        .iter()
        .map(|st| match st {
            RecipeStep::Leaf { object } => RecipeStep::Leaf { object: *object },
            RecipeStep::Colim { shape, nodes, edges } => RecipeStep::Colim {
                shape: shape_map[*shape],
                nodes: nodes.clone(),
                edges: edges.clone(),
            },
        })
        .collect();
    Some(Recipe { steps, root: recipe.root })
}

/// Stage-by-stage expansion: stage 0 is the representables; each later stage
/// adjoins colimits of all enumerable F-shaped diagrams over the accumulated
/// set, deduplicated by isomorphism. Returns the certificate of the first
/// presheaf isomorphic to `target`, or None at bound exhaustion.
fn staged_search(c: &Arc<FiniteCategory>, f: &ShapeClass, target: &Presheaf, bounds: Bounds) -> Option<Recipe> {
    let mut acc: Vec<Presheaf> = Vec::new();
    let mut arena: Vec<RecipeStep> = Vec::new();
    let mut step_of: Vec<usize> = Vec::new(); // arena index of each accumulated presheaf
    let mut budget = bounds.max_diagrams;

    let push = |p: Presheaf, step: RecipeStep, acc: &mut Vec<Presheaf>, arena: &mut Vec<RecipeStep>, step_of: &mut Vec<usize>| -> Option<usize> {
        if acc.iter().any(|q| are_isomorphic(q, &p).is_some()) {
            return None;
        }
        arena.push(step);
        acc.push(p);
        step_of.push(arena.len() - 1);
        Some(acc.len() - 1)
    };

    // stage 0: representables
    for o in 0..c.n_objects() {
        let p = yoneda(c, o);
        let hit = are_isomorphic(&p, target).is_some();
        let idx = push(p, RecipeStep::Leaf { object: o }, &mut acc, &mut arena, &mut step_of);
        if hit {
            let i = idx.unwrap_or_else(|| {
                acc.iter().position(|q| are_isomorphic(q, target).is_some()).unwrap()
            });
            return Some(extract_recipe(&arena, step_of[i]));
        }
    }

    for _stage in 0..bounds.max_stage {
        let frontier_len = acc.len();
        let mut added = 0usize;
        for (shape_idx, j) in f.shapes.iter().enumerate() {
            // enumerate all functors from j into the full subcategory of
            // PSh(C) spanned by the accumulated presheaves
            let diagrams = enumerate_shape_diagrams(j, &acc[..frontier_len], &mut budget);
            for (nodes, edges) in diagrams {
                let value = if j.n_objects() == 0 {
                    presheaf::empty_presheaf(c)
                } else {
                    let diagram = PresheafDiagram {
                        shape: j.clone(),
                        nodes: nodes.iter().map(|&n| acc[n].clone()).collect(),
                        edges: edges.clone(),
                    };
                    match presheaf_colimit(&diagram) {
                        Ok((p, _)) => p,
                        Err(_) => continue,
                    }
                };
                let hit = are_isomorphic(&value, target).is_some();
                let step = RecipeStep::Colim {
                    shape: shape_idx,
                    nodes: nodes.iter().map(|&n| step_of[n]).collect(),
                    edges: edges.iter().map(|e| e.components.clone()).collect(),
                };
                // record the step even for duplicates when it hits the target
                if hit {
                    arena.push(step);
                    return Some(extract_recipe(&arena, arena.len() - 1));
                }
                if push(value, step, &mut acc, &mut arena, &mut step_of).is_some() {
                    added += 1;
                    if added >= bounds.max_objects_per_stage {
                        break;
                    }
                }
            }
            if added >= bounds.max_objects_per_stage || budget == 0 {
                break;
            }
        }
        if added == 0 || budget == 0 {
            break;
        }
    }
    None
}

/// All functors from shape `j` into the iso-closed full subcategory of
/// presheaves spanned by `objects`: a node assignment plus natural edges
/// satisfying functoriality. Deterministic order; decrements `budget` per
/// complete diagram and stops at zero.
fn enumerate_shape_diagrams(
    j: &Arc<FiniteCategory>,
    objects: &[Presheaf],
    budget: &mut usize,
) -> Vec<(Vec<usize>, Vec<NatTrans>)> {
    let mut out = Vec::new();
    if *budget == 0 {
        return out;
    }
    if j.n_objects() == 0 {
        *budget -= 1;
        out.push((vec![], vec![]));
        return out;
    }
    let n_assign = objects.len().checked_pow(j.n_objects() as u32);
    let n_assign = match n_assign {
        Some(n) => n,
        None => return out,
    };
    'assign: for code in 0..n_assign {
        if *budget == 0 {
            break;
        }
        let mut nodes = Vec::with_capacity(j.n_objects());
        let mut rem = code;
        for _ in 0..j.n_objects() {
            nodes.push(rem % objects.len());
            rem /= objects.len();
        }
        // candidate edges per non-identity morphism
        let nonid: Vec<usize> = (0..j.n_morphisms()).filter(|&u| !j.is_identity(u)).collect();
        let mut choices: Vec<Vec<NatTrans>> = Vec::new();
        for &u in &nonid {
            let nats = nat_transformations(&objects[nodes[j.src(u)]], &objects[nodes[j.tgt(u)]]);
            if nats.is_empty() {
                continue 'assign;
            }
            choices.push(nats);
        }
        // backtrack over edge choices with composition constraints
        let mut pick = vec![0usize; nonid.len()];
        let edges_for = |pick: &[usize], choices: &[Vec<NatTrans>], nodes: &[usize]| -> Vec<NatTrans> {
            (0..j.n_morphisms())
                .map(|u| {
                    if j.is_identity(u) {
                        NatTrans::identity(&objects[nodes[j.src(u)]])
                    } else {
                        let k = nonid.iter().position(|&v| v == u).unwrap();
                        choices[k][pick[k]].clone()
                    }
                })
                .collect()
        };
        loop {
            let edges = edges_for(&pick, &choices, &nodes);
            let functorial = (0..j.n_morphisms()).all(|g| {
                (0..j.n_morphisms()).all(|h| match j.compose(g, h) {
                    Some(gh) => edges[gh] == edges[g].compose_after(&edges[h]),
                    None => true,
                })
            });
            if functorial {
                if *budget == 0 {
                    return out;
                }
                *budget -= 1;
                out.push((nodes.clone(), edges));
            }
            // advance pick
            let mut i = 0;
            loop {
                if i == pick.len() {
                    continue 'assign;
                }
                pick[i] += 1;
                if pick[i] < choices[i].len() {
                    break;
                }
                pick[i] = 0;
                i += 1;
            }
            if pick.is_empty() {
                continue 'assign;
            }
        }
    }
    out
}

/// Membership in the regular closure: is the terminal presheaf reachable in
/// PSh^F(J)?
pub fn regular_closure_member(j: &Arc<FiniteCategory>, f: &ShapeClass, bounds: Bounds) -> Verdict {
    closure_search(j, f, &terminal_presheaf(j), bounds)
}

/// Membership via the category of elements: X ∈ PSh^F(C) iff C/X is in the
/// regular closure of F.
pub fn membership_via_elements(c: &Arc<FiniteCategory>, f: &ShapeClass, x: &Presheaf, bounds: Bounds) -> Verdict {
    assert_eq!(&x.base, c);
    let (elements, _) = category_of_elements(x);
    regular_closure_member(&elements, f, bounds)
}

/// Like `eval_recipe`, but keeps every step value and, for colimit steps, the
/// colimit legs.
fn eval_recipe_with_legs(
    c: &Arc<FiniteCategory>,
    f: &ShapeClass,
    r: &Recipe,
) -> Result<(Vec<Presheaf>, Vec<Option<Vec<NatTrans>>>), RecipeError> {
    let mut values: Vec<Presheaf> = Vec::with_capacity(r.steps.len());
    let mut all_legs: Vec<Option<Vec<NatTrans>>> = Vec::with_capacity(r.steps.len());
    for (i, step) in r.steps.iter().enumerate() {
        let (value, legs) = match step {
            RecipeStep::Leaf { object } => {
                if *object >= c.n_objects() {
                    return Err(RecipeError::BadLeaf { step: i, object: *object });
                }
                (yoneda(c, *object), None)
            }
            RecipeStep::Colim { shape, nodes, edges } => {
                let j = f
                    .shapes
                    .get(*shape)
                    .ok_or(RecipeError::ShapeNotInClass { step: i, shape: *shape })?;
                if nodes.iter().any(|&n| n >= i) {
                    return Err(RecipeError::NotAcyclic { step: i });
                }
                if nodes.len() != j.n_objects() || edges.len() != j.n_morphisms() {
                    return Err(RecipeError::IllFormed("node/edge arity mismatch with shape".into(), i));
                }
                if j.n_objects() == 0 {
                    (presheaf::empty_presheaf(c), Some(vec![]))
                } else {
                    let diagram = PresheafDiagram {
                        shape: j.clone(),
                        nodes: nodes.iter().map(|&n| values[n].clone()).collect(),
                        edges: edges.iter().map(|e| NatTrans { components: e.clone() }).collect(),
                    };
                    let (colim, legs) = presheaf_colimit(&diagram)?;
                    (colim, Some(legs))
                }
            }
        };
        values.push(value);
        all_legs.push(legs);
    }
    if r.root >= values.len() {
        return Err(RecipeError::BadRoot { root: r.root });
    }
    Ok((values, all_legs))
}

/// An arena step over the product base together with a pointwise splitting of
/// its value: `bij[p][e] = (w, x)` decomposes element `e` at product object
/// `p` into a weight in the frozen coordinate and an element of the modeled
/// factor step's value.
struct LiftedStep {
    step: usize,
    bij: Vec<Vec<(usize, usize)>>,
}

/// Replays the recipe `r` (over one factor) on the product base, replacing its
/// leaves by the supplied lifted steps. `coord` sends each product object to
/// its coordinate in `r`'s base; `model_legs` are the colimit legs of `r`'s own
/// evaluation. The weight coordinate is carried along untouched, so each
/// lifted step's value splits as weight × model value, and the returned
/// bijections witness that splitting.
fn lift_recipe_along(
    p: &Arc<FiniteCategory>,
    f: &ShapeClass,
    arena: &mut Vec<RecipeStep>,
    values: &mut Vec<Presheaf>,
    r: &Recipe,
    model_legs: &[Option<Vec<NatTrans>>],
    coord: &[usize],
    leaf_lift: &[LiftedStep],
) -> Result<LiftedStep, RecipeError> {
    let np = p.n_objects();
    let mut lifted: Vec<LiftedStep> = Vec::with_capacity(r.steps.len());
    for (i, step) in r.steps.iter().enumerate() {
        let ls = match step {
            RecipeStep::Leaf { object } => {
                let src = &leaf_lift[*object];
                LiftedStep { step: src.step, bij: src.bij.clone() }
            }
            RecipeStep::Colim { shape, nodes, edges } => {
                let jsh = &f.shapes[*shape];
                if jsh.n_objects() == 0 {
                    arena.push(RecipeStep::Colim { shape: *shape, nodes: vec![], edges: vec![] });
                    values.push(presheaf::empty_presheaf(p));
                    LiftedStep { step: arena.len() - 1, bij: vec![vec![]; np] }
                } else {
                    let lnodes: Vec<usize> = nodes.iter().map(|&n| lifted[n].step).collect();
                    let inv: Vec<Vec<HashMap<(usize, usize), usize>>> = nodes
                        .iter()
                        .map(|&n| {
                            lifted[n]
                                .bij
                                .iter()
                                .map(|tab| tab.iter().enumerate().map(|(e, &wx)| (wx, e)).collect())
                                .collect()
                        })
                        .collect();
                    let mut ledges: Vec<Vec<Vec<usize>>> = Vec::with_capacity(jsh.n_morphisms());
                    for u in 0..jsh.n_morphisms() {
                        let (su, tu) = (jsh.src(u), jsh.tgt(u));
                        let comps: Vec<Vec<usize>> = (0..np)
                            .map(|pobj| {
                                lifted[nodes[su]].bij[pobj]
                                    .iter()
                                    .map(|&(w, x)| inv[tu][pobj][&(w, edges[u][coord[pobj]][x])])
                                    .collect()
                            })
                            .collect();
                        ledges.push(comps);
                    }
                    let diagram = PresheafDiagram {
                        shape: jsh.clone(),
                        nodes: lnodes.iter().map(|&n| values[n].clone()).collect(),
                        edges: ledges.iter().map(|e| NatTrans { components: e.clone() }).collect(),
                    };
                    let (colim, legs) = presheaf_colimit(&diagram)?;
                    let mlegs = model_legs[i].as_ref().expect("model step is a colimit");
                    let mut bij: Vec<Vec<Option<(usize, usize)>>> =
                        colim.sets.iter().map(|&s| vec![None; s]).collect();
                    for (so, &n) in nodes.iter().enumerate() {
                        for pobj in 0..np {
                            for (e, &(w, x)) in lifted[n].bij[pobj].iter().enumerate() {
                                let cls = legs[so].components[pobj][e];
                                let split = (w, mlegs[so].components[coord[pobj]][x]);
                                let prev = bij[pobj][cls].replace(split);
                                debug_assert!(prev.map_or(true, |q| q == split));
                            }
                        }
                    }
                    let bij: Vec<Vec<(usize, usize)>> = bij
                        .into_iter()
                        .map(|row| row.into_iter().map(|o| o.expect("colimit legs are jointly surjective")).collect())
                        .collect();
                    arena.push(RecipeStep::Colim { shape: *shape, nodes: lnodes, edges: ledges });
                    values.push(colim);
                    LiftedStep { step: arena.len() - 1, bij }
                }
            }
        };
        lifted.push(ls);
    }
    Ok(lifted.into_iter().nth(r.root).expect("root validated by caller"))
}

/// Assembles a certificate for the terminal presheaf on `p = J × K` from
/// certificates `rj`, `rk` for the terminal presheaves on the factors: the
/// K-recipe is replayed once per J-object on lifted representable leaves,
/// then the J-recipe is replayed on top of those roots.
pub fn product_recipe(
    p: &Arc<FiniteCategory>,
    jc: &Arc<FiniteCategory>,
    kc: &Arc<FiniteCategory>,
    f: &ShapeClass,
    rj: &Recipe,
    rk: &Recipe,
) -> Result<Recipe, RecipeError> {
    let (nj, nk) = (jc.n_objects(), kc.n_objects());
    let mk = kc.n_morphisms();
    assert_eq!(p.n_objects(), nj * nk, "p must be the product of jc and kc");
    let (jvals, jlegs) = eval_recipe_with_legs(jc, f, rj)?;
    let (kvals, klegs) = eval_recipe_with_legs(kc, f, rk)?;
    for (vals, r) in [(&jvals, rj), (&kvals, rk)] {
        if vals[r.root].sets.iter().any(|&s| s != 1) {
            return Err(RecipeError::IllFormed(
                "factor recipe does not evaluate to the terminal presheaf".into(),
                r.root,
            ));
        }
    }
    let np = p.n_objects();
    let coord_k: Vec<usize> = (0..np).map(|o| o % nk).collect();
    let coord_j: Vec<usize> = (0..np).map(|o| o / nk).collect();
    let mut arena: Vec<RecipeStep> = Vec::new();
    let mut values: Vec<Presheaf> = Vec::new();
    let mut phase2_leaves: Vec<LiftedStep> = Vec::with_capacity(nj);
    for j in 0..nj {
        let mut leaf_lift = Vec::with_capacity(nk);
        for k in 0..nk {
            let obj = j * nk + k;
            // Hom_p((a,b), (j,k)) in morphism-index order is Hom(a,j) ×
            // Hom(b,k) in lexicographic order; split each element accordingly.
            let bij: Vec<Vec<(usize, usize)>> = (0..np)
                .map(|pobj| {
                    let (a, b) = (pobj / nk, pobj % nk);
                    let jpos: HashMap<usize, usize> =
                        jc.hom(a, j).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
                    let kpos: HashMap<usize, usize> =
                        kc.hom(b, k).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
                    p.hom(pobj, obj).into_iter().map(|m| (jpos[&(m / mk)], kpos[&(m % mk)])).collect()
                })
                .collect();
            arena.push(RecipeStep::Leaf { object: obj });
            values.push(yoneda(p, obj));
            leaf_lift.push(LiftedStep { step: arena.len() - 1, bij });
        }
        let lifted = lift_recipe_along(p, f, &mut arena, &mut values, rk, &klegs, &coord_k, &leaf_lift)?;
        // the K-root is terminal, so only the weight survives: this step is
        // the lift of the representable of j, ready to seed the J-recipe
        let bij = lifted.bij.iter().map(|tab| tab.iter().map(|&(w, _)| (0, w)).collect()).collect();
        phase2_leaves.push(LiftedStep { step: lifted.step, bij });
    }
    let root = lift_recipe_along(p, f, &mut arena, &mut values, rj, &jlegs, &coord_j, &phase2_leaves)?;
    Ok(extract_recipe(&arena, root.step))
}

/// Closure membership for a product: both factors are searched, and `Member`
/// verdicts are combined into a certificate on `J × K` via `product_recipe`.
/// Anything short of two member certificates yields `Unknown`.
pub fn product_closure_member(
    jc: &Arc<FiniteCategory>,
    kc: &Arc<FiniteCategory>,
    f: &ShapeClass,
    bounds: Bounds,
) -> (Arc<FiniteCategory>, Verdict) {
    let (p, _, _) = fincat::product(jc, kc);
    let vj = regular_closure_member(jc, f, bounds);
    let vk = regular_closure_member(kc, f, bounds);
    let verdict = match (vj.certificate.as_ref(), vk.certificate.as_ref()) {
        (Some(rj), Some(rk)) => match product_recipe(&p, jc, kc, f, rj, rk) {
            Ok(recipe) => {
                let checks = eval_recipe(&p, f, &recipe)
                    .map(|v| are_isomorphic(&v, &terminal_presheaf(&p)).is_some())
                    .unwrap_or(false);
                if checks {
                    Verdict::member(Some(recipe), bounds)
                } else {
                    Verdict::unknown(bounds)
                }
            }
            Err(_) => Verdict::unknown(bounds),
        },
        _ => Verdict::unknown(bounds),
    };
    (p, verdict)
}

/// F-compactness of X: Nat(X, −) preserves all F-shaped colimits of
/// diagrams in the declared universe (the representables of C).
pub fn is_compact(c: &Arc<FiniteCategory>, f: &ShapeClass, x: &Presheaf, bounds: Bounds) -> Verdict {
    let universe: Vec<Presheaf> = (0..c.n_objects()).map(|o| yoneda(c, o)).collect();
    let mut budget = bounds.max_diagrams;
    for (shape_idx, j) in f.shapes.iter().enumerate() {
        let diagrams = enumerate_shape_diagrams(j, &universe, &mut budget);
        for (nodes, edges) in &diagrams {
            let (colim, legs) = if j.n_objects() == 0 {
                (presheaf::empty_presheaf(c), vec![])
            } else {
                let diagram = PresheafDiagram {
                    shape: j.clone(),
                    nodes: nodes.iter().map(|&n| universe[n].clone()).collect(),
                    edges: edges.clone(),
                };
                match presheaf_colimit(&diagram) {
                    Ok(r) => r,
                    Err(_) => continue,
                }
            };
            if !comparison_is_bijective(j, x, &universe, nodes, edges, &colim, &legs) {
                return Verdict::non_member(
                    format!("shape {shape_idx} diagram over nodes {nodes:?} is not preserved by Nat(X, -)"),
                    bounds,
                );
            }
        }
        if budget == 0 {
            return Verdict::unknown(bounds);
        }
    }
    Verdict::member(None, bounds)
}

/// The canonical comparison colim Nat(X, D(−)) → Nat(X, colim D), as a
/// bijectivity test.
fn comparison_is_bijective(
    j: &Arc<FiniteCategory>,
    x: &Presheaf,
    universe: &[Presheaf],
    nodes: &[usize],
    edges: &[NatTrans],
    colim: &Presheaf,
    legs: &[NatTrans],
) -> bool {
    // the set diagram j ↦ Nat(X, D(j))
    let nat_sets: Vec<Vec<NatTrans>> = nodes.iter().map(|&n| nat_transformations(x, &universe[n])).collect();
    let maps: Vec<Vec<usize>> = (0..j.n_morphisms())
        .map(|u| {
            let (a, b) = (j.src(u), j.tgt(u));
            nat_sets[a]
                .iter()
                .map(|t| {
                    let image = edges[u].compose_after(t);
                    nat_sets[b].iter().position(|s| *s == image).expect("postcomposition must stay in Nat set")
                })
                .collect()
        })
        .collect();
    let sd = crate::presheaf::SetDiagram {
        shape: j.clone(),
        sets: nat_sets.iter().map(|s| s.len()).collect(),
        maps,
    };
    let (size, cocone) = crate::presheaf::set_colimit(&sd);
    let target_nats = nat_transformations(x, colim);
    // comparison: class of τ at node k ↦ leg_k ∘ τ
    let mut image_of_class: Vec<Option<usize>> = vec![None; size];
    for (k, nats) in nat_sets.iter().enumerate() {
        for (i, t) in nats.iter().enumerate() {
            let comp = legs[k].compose_after(t);
            let pos = match target_nats.iter().position(|s| *s == comp) {
                Some(p) => p,
                None => return false,
            };
            let class = cocone[k][i];
            match image_of_class[class] {
                None => image_of_class[class] = Some(pos),
                Some(prev) if prev != pos => return false, // not well-defined: not injective on classes
                _ => {}
            }
        }
    }
    // bijectivity onto Nat(X, colim)
    let mut seen = vec![false; target_nats.len()];
    for img in &image_of_class {
        match img {
            Some(p) => {
                if seen[*p] {
                    return false;
                }
                seen[*p] = true;
            }
            None => return false,
        }
    }
    seen.iter().all(|&s| s)
}

/// Report of the three recognition-principle conditions.
#[derive(Debug, Clone)]
pub struct RecognitionReport {
    pub fully_faithful: Verdict,
    pub compact: Verdict,
    pub generates: Verdict,
}

/// Checks the three conditions for candidate generators indexed by the
/// objects of C: (i) Nat-set bijections against hom-sets, (ii) compactness
/// per candidate, (iii) reachability of every representable from the
/// candidates under F-colimits.
pub fn recognition_check(
    c: &Arc<FiniteCategory>,
    f: &ShapeClass,
    candidates: &[Presheaf],
    bounds: Bounds,
) -> RecognitionReport {
    assert_eq!(candidates.len(), c.n_objects(), "one candidate per object of the base");
    // (i) fully faithful
    let mut ff = Verdict::member(None, bounds);
    'ff: for a in 0..c.n_objects() {
        for b in 0..c.n_objects() {
            let nats = nat_transformations(&candidates[a], &candidates[b]);
            if nats.len() != c.hom(a, b).len() {
                ff = Verdict::non_member(
                    format!("|Nat(F({a}), F({b}))| = {} but |Hom({a},{b})| = {}", nats.len(), c.hom(a, b).len()),
                    bounds,
                );
                break 'ff;
            }
        }
    }
    // (ii) compactness of each candidate
    let mut cpt = Verdict::member(None, bounds);
    for (i, cand) in candidates.iter().enumerate() {
        let v = is_compact(c, f, cand, bounds);
        match v.status {
            VerdictStatus::Member => {}
            _ => {
                cpt = Verdict {
                    witness: v.witness.map(|w| format!("candidate {i}: {w}")),
                    ..v
                };
                break;
            }
        }
    }
    // (iii) generation: every representable reachable from the candidates
    let generates = generation_check(c, f, candidates, bounds);
    RecognitionReport { fully_faithful: ff, compact: cpt, generates }
}

fn generation_check(c: &Arc<FiniteCategory>, f: &ShapeClass, candidates: &[Presheaf], bounds: Bounds) -> Verdict {
    let mut acc: Vec<Presheaf> = Vec::new();
    for cand in candidates {
        if !acc.iter().any(|q| are_isomorphic(q, cand).is_some()) {
            acc.push(cand.clone());
        }
    }
    let targets: Vec<Presheaf> = (0..c.n_objects()).map(|o| yoneda(c, o)).collect();
    let reached = |acc: &[Presheaf]| {
        targets.iter().all(|t| acc.iter().any(|q| are_isomorphic(q, t).is_some()))
    };
    if reached(&acc) {
        return Verdict::member(None, bounds);
    }
    if f.shapes.is_empty() {
        return Verdict::non_member("F = ∅ generates nothing beyond the candidates", bounds);
    }
    let mut budget = bounds.max_diagrams;
    for _stage in 0..bounds.max_stage {
        let frontier = acc.len();
        let mut added = 0usize;
        for j in &f.shapes {
            let diagrams = enumerate_shape_diagrams(j, &acc[..frontier], &mut budget);
            for (nodes, edges) in diagrams {
                let value = if j.n_objects() == 0 {
                    presheaf::empty_presheaf(c)
                } else {
                    let diagram = PresheafDiagram {
                        shape: j.clone(),
                        nodes: nodes.iter().map(|&n| acc[n].clone()).collect(),
                        edges,
                    };
                    match presheaf_colimit(&diagram) {
                        Ok((p, _)) => p,
                        Err(_) => continue,
                    }
                };
                if !acc.iter().any(|q| are_isomorphic(q, &value).is_some()) {
                    acc.push(value);
                    added += 1;
                    if reached(&acc) {
                        return Verdict::member(None, bounds);
                    }
                    if added >= bounds.max_objects_per_stage {
                        break;
                    }
                }
            }
        }
        if added == 0 || budget == 0 {
            break;
        }
    }
    Verdict::unknown(bounds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{discrete, parallel_pair, span, terminal_category, walking_idempotent};

    fn coequalizer_class() -> ShapeClass {
        ShapeClass::new("span-and-pairs", vec![span(), discrete(2)])
    }

    /// The worked coequalizer recipe: Q = ρ(a) ⊔ ρ(a); P = colim of the span
    /// ρ(a) ← Q → ρ(b) with legs (id,id) and (ρf,ρg).
    fn coequalizer_recipe(pp: &Arc<FiniteCategory>) -> Recipe {
        let ra = yoneda(pp, 0);
        let rb = yoneda(pp, 1);
        // Q = ρ(a) ⊔ ρ(a): shape index 1 (discrete(2))
        let d2 = discrete(2);
        let idq = NatTrans::identity(&ra);
        let q_step = RecipeStep::Colim {
            shape: 1,
            nodes: vec![0, 0],
            edges: vec![idq.components.clone(), idq.components.clone()],
        };
        // evaluate Q to build the legs explicitly
        let q_diagram = PresheafDiagram {
            shape: d2,
            nodes: vec![ra.clone(), ra.clone()],
            edges: vec![idq.clone(), idq.clone()],
        };
        let (q, legs) = presheaf_colimit(&q_diagram).unwrap();
        // fold leg: Q → ρ(a) sending both summands by the identity
        let fold = fold_map(&q, &legs, &[NatTrans::identity(&ra), NatTrans::identity(&ra)], &ra);
        // (ρf, ρg): Q → ρ(b)
        let rf = presheaf::yoneda_postcompose(pp, 0, 1, 2);
        let rg = presheaf::yoneda_postcompose(pp, 0, 1, 3);
        let fg = fold_map(&q, &legs, &[rf, rg], &rb);
        // span shape: objects l, m, r with s: m → l and t: m → r;
        // morphisms: id_l, id_m, id_r, s, t
        let p_step = RecipeStep::Colim {
            shape: 0,
            nodes: vec![0, 2, 1], // l ↦ ρ(a), m ↦ Q, r ↦ ρ(b)
            edges: vec![
                NatTrans::identity(&ra).components,
                NatTrans::identity(&q).components,
                NatTrans::identity(&rb).components,
                fold.components,
                fg.components,
            ],
        };
        Recipe {
            steps: vec![RecipeStep::Leaf { object: 0 }, RecipeStep::Leaf { object: 1 }, q_step, p_step],
            root: 3,
        }
    }

    /// The map out of a binary coproduct determined by maps out of the
    /// summands.
    fn fold_map(q: &Presheaf, legs: &[NatTrans], maps: &[NatTrans], target: &Presheaf) -> NatTrans {
        let mut components: Vec<Vec<usize>> = q.sets.iter().map(|&n| vec![usize::MAX; n]).collect();
        for (k, leg) in legs.iter().enumerate() {
            for (o, comp) in leg.components.iter().enumerate() {
                for (e, &class) in comp.iter().enumerate() {
                    components[o][class] = maps[k].components[o][e];
                }
            }
        }
        let t = NatTrans { components };
        assert!(t.is_natural(q, target));
        t
    }

    #[test]
    fn leaf_evaluates_to_yoneda() {
        let pp = parallel_pair();
        let f = coequalizer_class();
        let r = Recipe { steps: vec![RecipeStep::Leaf { object: 0 }], root: 0 };
        assert_eq!(eval_recipe(&pp, &f, &r).unwrap(), yoneda(&pp, 0));
    }

    #[test]
    fn coequalizer_recipe_evaluates_to_terminal() {
        let pp = parallel_pair();
        let f = coequalizer_class();
        let r = coequalizer_recipe(&pp);
        let value = eval_recipe(&pp, &f, &r).unwrap();
        assert!(value.is_terminal());
    }

    #[test]
    fn modified_recipe_is_not_terminal() {
        // legs (ρf, ρf) instead of (ρf, ρg): the quotient at a keeps 2 classes
        let pp = parallel_pair();
        let f = coequalizer_class();
        let mut r = coequalizer_recipe(&pp);
        let rf = presheaf::yoneda_postcompose(&pp, 0, 1, 2);
        // rebuild the (ρf, ρf) fold
        let d2 = discrete(2);
        let ra = yoneda(&pp, 0);
        let idq = NatTrans::identity(&ra);
        let q_diagram = PresheafDiagram {
            shape: d2,
            nodes: vec![ra.clone(), ra.clone()],
            edges: vec![idq.clone(), idq],
        };
        let (q, legs) = presheaf_colimit(&q_diagram).unwrap();
        let ff = fold_map(&q, &legs, &[rf.clone(), rf], &yoneda(&pp, 1));
        if let RecipeStep::Colim { edges, .. } = &mut r.steps[3] {
            edges[4] = ff.components;
        }
        let value = eval_recipe(&pp, &f, &r).unwrap();
        assert!(!value.is_terminal());
        assert_eq!(value.sets[0], 2);
    }

    #[test]
    fn foreign_shape_is_rejected() {
        let pp = parallel_pair();
        let f = coequalizer_class();
        let r = Recipe {
            steps: vec![
                RecipeStep::Leaf { object: 0 },
                RecipeStep::Colim { shape: 7, nodes: vec![0], edges: vec![vec![]] },
            ],
            root: 1,
        };
        assert!(matches!(eval_recipe(&pp, &f, &r), Err(RecipeError::ShapeNotInClass { .. })));
    }

    #[test]
    fn closure_finds_coequalizer_example() {
        let pp = parallel_pair();
        let f = coequalizer_class();
        let v = regular_closure_member(&pp, &f, Bounds::default());
        assert_eq!(v.status, VerdictStatus::Member);
        let cert = v.certificate.expect("member verdict carries a certificate");
        let value = eval_recipe(&pp, &f, &cert).unwrap();
        assert!(are_isomorphic(&value, &terminal_presheaf(&pp)).is_some());
    }

    #[test]
    fn terminal_object_is_stage_zero() {
        let c = crate::fincat::chain(1);
        let f = coequalizer_class();
        let v = regular_closure_member(&c, &f, Bounds::default());
        assert_eq!(v.status, VerdictStatus::Member);
        let cert = v.certificate.unwrap();
        assert_eq!(cert.steps.len(), 1);
    }

    #[test]
    fn empty_class_decider() {
        let v = regular_closure_member(&discrete(2), &ShapeClass::empty(), Bounds::default());
        assert_eq!(v.status, VerdictStatus::NonMember);
        let v = regular_closure_member(&parallel_pair(), &ShapeClass::empty(), Bounds::default());
        assert_eq!(v.status, VerdictStatus::NonMember);
        let v = regular_closure_member(&terminal_category(), &ShapeClass::empty(), Bounds::default());
        assert_eq!(v.status, VerdictStatus::Member);
    }

    #[test]
    fn shape_itself_is_member() {
        // J ∈ F implies the terminal presheaf is the colimit of ρ over J
        let j = span();
        let f = ShapeClass::new("self", vec![j.clone()]);
        let v = regular_closure_member(&j, &f, Bounds::default());
        assert_eq!(v.status, VerdictStatus::Member);
        let value = eval_recipe(&j, &f, &v.certificate.unwrap()).unwrap();
        assert!(value.is_terminal());
    }

    #[test]
    fn catalog_decider_examples() {
        // 3-point discrete with binary coproducts: Member
        let v = catalog_decider(&discrete(3), ClassTag::BinaryCoproducts);
        assert_eq!(v.status, VerdictStatus::Member);
        // the certificate re-evaluates to the terminal presheaf
        let mut cert = v.certificate.unwrap();
        let f = catalog_shape_class(ClassTag::BinaryCoproducts);
        let d3 = discrete(3);
        resolve_identity_edges(&d3, &f, &mut cert).unwrap();
        let value = eval_recipe(&d3, &f, &cert).unwrap();
        assert!(value.is_terminal());
        // Idem with idempotent completion: Member, certificate checks out
        let idem = walking_idempotent();
        let v = catalog_decider(&idem, ClassTag::Idempotents);
        assert_eq!(v.status, VerdictStatus::Member);
        let f = catalog_shape_class(ClassTag::Idempotents);
        let value = eval_recipe(&idem, &f, &v.certificate.unwrap()).unwrap();
        assert!(value.is_terminal());
        // parallel pair with all coproducts: NonMember
        let v = catalog_decider(&parallel_pair(), ClassTag::AllCoproducts);
        assert_eq!(v.status, VerdictStatus::NonMember);
    }

    #[test]
    fn membership_via_elements_examples() {
        let pp = parallel_pair();
        let f = coequalizer_class();
        // representable: Member via slice with terminal object
        let v = membership_via_elements(&pp, &f, &yoneda(&pp, 0), Bounds::default());
        assert_eq!(v.status, VerdictStatus::Member);
        // terminal presheaf: C/1 ≅ C, reduces to the closure example
        let v = membership_via_elements(&pp, &f, &terminal_presheaf(&pp), Bounds::default());
        assert_eq!(v.status, VerdictStatus::Member);
        // empty presheaf with F = ∅: the empty category has no terminal object
        let v = membership_via_elements(&pp, &ShapeClass::empty(), &presheaf::empty_presheaf(&pp), Bounds::default());
        assert_eq!(v.status, VerdictStatus::NonMember);
    }

    #[test]
    fn representables_are_compact() {
        let pp = parallel_pair();
        let f = coequalizer_class();
        for o in 0..pp.n_objects() {
            let v = is_compact(&pp, &f, &yoneda(&pp, o), Bounds::default());
            assert_eq!(v.status, VerdictStatus::Member, "ρ({o}) must be compact");
        }
    }

    #[test]
    fn terminal_on_discrete_pair_is_not_compact() {
        let d2 = discrete(2);
        let f = ShapeClass::new("pairs", vec![discrete(2)]);
        let v = is_compact(&d2, &f, &terminal_presheaf(&d2), Bounds::default());
        assert_eq!(v.status, VerdictStatus::NonMember);
        assert!(v.witness.is_some());
    }

    #[test]
    fn zero_budget_is_unknown() {
        let d2 = discrete(2);
        let f = ShapeClass::new("pairs", vec![discrete(2)]);
        let bounds = Bounds { max_diagrams: 0, ..Bounds::default() };
        let v = is_compact(&d2, &f, &yoneda(&d2, 0), bounds);
        assert_eq!(v.status, VerdictStatus::Unknown);
    }

    #[test]
    fn closure_stage_bound_gives_unknown() {
        let pp = parallel_pair();
        let f = coequalizer_class();
        let bounds = Bounds { max_stage: 0, ..Bounds::default() };
        let v = regular_closure_member(&pp, &f, bounds);
        assert_eq!(v.status, VerdictStatus::Unknown);
    }

    #[test]
    fn recognition_with_all_representables() {
        let pp = parallel_pair();
        let f = coequalizer_class();
        let candidates: Vec<Presheaf> = (0..pp.n_objects()).map(|o| yoneda(&pp, o)).collect();
        let report = recognition_check(&pp, &f, &candidates, Bounds::default());
        assert_eq!(report.fully_faithful.status, VerdictStatus::Member);
        assert_eq!(report.compact.status, VerdictStatus::Member);
        assert_eq!(report.generates.status, VerdictStatus::Member);
    }

    #[test]
    fn recognition_missing_representable() {
        let pp = parallel_pair();
        // candidate for object b is ρ(a): generation must fail with F = ∅
        let candidates = vec![yoneda(&pp, 0), yoneda(&pp, 0)];
        let report = recognition_check(&pp, &ShapeClass::empty(), &candidates, Bounds::default());
        assert_eq!(report.generates.status, VerdictStatus::NonMember);
    }

    #[test]
    fn recognition_terminal_candidate_not_compact() {
        let d2 = discrete(2);
        let f = ShapeClass::new("pairs", vec![discrete(2)]);
        let candidates = vec![terminal_presheaf(&d2), terminal_presheaf(&d2)];
        let report = recognition_check(&d2, &f, &candidates, Bounds::default());
        assert_eq!(report.compact.status, VerdictStatus::NonMember);
    }

    #[test]
    fn recipe_roundtrip_serialization() {
        let pp = parallel_pair();
        let f = coequalizer_class();
        let r = coequalizer_recipe(&pp);
        let json = serde_json::to_string(&r).unwrap();
        let back: Recipe = serde_json::from_str(&json).unwrap();
        assert_eq!(r, back);
        assert!(eval_recipe(&pp, &f, &back).unwrap().is_terminal());
    }

    #[test]
    fn product_recipe_parallel_pair_times_chain() {
        let f = coequalizer_class();
        let (p, v) = product_closure_member(&parallel_pair(), &fincat::chain(1), &f, Bounds::default());
        assert_eq!(v.status, VerdictStatus::Member);
        let val = eval_recipe(&p, &f, v.certificate.as_ref().unwrap()).unwrap();
        assert!(are_isomorphic(&val, &terminal_presheaf(&p)).is_some());
    }

    #[test]
    fn product_recipe_parallel_pair_squared() {
        let f = coequalizer_class();
        let pp = parallel_pair();
        let (p, v) = product_closure_member(&pp, &pp, &f, Bounds::default());
        assert_eq!(v.status, VerdictStatus::Member);
        let val = eval_recipe(&p, &f, v.certificate.as_ref().unwrap()).unwrap();
        assert!(are_isomorphic(&val, &terminal_presheaf(&p)).is_some());
    }

    #[test]
    fn product_closure_unknown_without_factor_certificates() {
        // the parallel pair is not in the empty closure, so the product
        // combinator has nothing to work with
        let (_, v) = product_closure_member(&parallel_pair(), &terminal_category(), &ShapeClass::empty(), Bounds::default());
        assert_eq!(v.status, VerdictStatus::Unknown);
    }
}
