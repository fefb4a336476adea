//! Cofinality at two levels (connected commas vs weakly contractible
//! commas), siftedness and filteredness, the path-category construction,
//! and colimit-preservation checks.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::fincat::{self, FiniteCategory, FunctorData};
use crate::homotopy::{weak_contractibility, ContractibilityStatus, DEFAULT_NERVE_DEPTH};
use crate::presheaf::{presheaf_colimit, yoneda, yoneda_postcompose, PresheafDiagram};
use crate::verdict::{Bounds, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CofinalityLevel {
    /// Commas nonempty and connected: the Set-valued notion, decidable.
    Connected,
    /// Commas weakly contractible, read off the nerve.
    WeaklyContractible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CofinalityStatus {
    Cofinal,
    NotCofinal,
    ProbablyCofinal,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CofinalityVerdict {
    pub level: CofinalityLevel,
    pub status: CofinalityStatus,
    /// Per-object evidence: (object of the codomain, description of its
    /// comma category's state).
    pub witnesses: Vec<(usize, String)>,
}

impl CofinalityVerdict {
    pub fn is_cofinal(&self) -> bool {
        self.status == CofinalityStatus::Cofinal
    }
}

/// The comma category d ↓ f for a functor f: C → D and an object d of D.
pub fn object_comma(f: &FunctorData, d: usize) -> Arc<FiniteCategory> {
    let point = fincat::terminal_category();
    let const_d = FunctorData::constant(&point, &f.target, d);
    let (comma, _, _) = fincat::comma(&const_d, f);
    comma
}

/// Checks cofinality of f: C → D by inspecting every comma d ↓ f. At level
/// `Connected` the answer is always decisive; at `WeaklyContractible` it
/// aggregates the contractibility ladder over the commas.
pub fn is_cofinal(f: &FunctorData, level: CofinalityLevel) -> CofinalityVerdict {
    let d_cat = &f.target;
    let mut witnesses = Vec::new();
    let mut status = CofinalityStatus::Cofinal;
    for d in 0..d_cat.n_objects() {
        let comma = object_comma(f, d);
        match level {
            CofinalityLevel::Connected => {
                let n = comma.connected_components().0.len();
                if comma.n_objects() == 0 {
                    witnesses.push((d, "comma category is empty".into()));
                    status = CofinalityStatus::NotCofinal;
                    break;
                }
                if n != 1 {
                    witnesses.push((d, format!("comma category has {n} components")));
                    status = CofinalityStatus::NotCofinal;
                    break;
                }
                witnesses.push((d, "comma nonempty and connected".into()));
            }
            CofinalityLevel::WeaklyContractible => {
                let v = weak_contractibility(&comma, DEFAULT_NERVE_DEPTH);
                witnesses.push((d, v.evidence.clone()));
                match v.status {
                    ContractibilityStatus::NotContractible => {
                        status = CofinalityStatus::NotCofinal;
                        break;
                    }
                    ContractibilityStatus::Contractible => {}
                    ContractibilityStatus::ProbablyContractible => {
                        if status == CofinalityStatus::Cofinal {
                            status = CofinalityStatus::ProbablyCofinal;
                        }
                    }
                    ContractibilityStatus::Unknown => status = CofinalityStatus::Unknown,
                }
            }
        }
    }
    CofinalityVerdict { level, status, witnesses }
}

/// The colimit formulation: f: C → D is cofinal iff the colimit of
/// C → D → PSh(D) (the composite with the Yoneda embedding) is the terminal
/// presheaf. Computed exactly by the pointwise quotient.
pub fn cofinal_via_colimit(f: &FunctorData) -> bool {
    let (c, d) = (&f.source, &f.target);
    if c.n_objects() == 0 {
        return d.n_objects() == 0;
    }
    let nodes = (0..c.n_objects()).map(|j| yoneda(d, f.ob(j))).collect();
    let edges = (0..c.n_morphisms())
        .map(|u| yoneda_postcompose(d, f.ob(c.src(u)), f.ob(c.tgt(u)), f.mor(u)))
        .collect();
    let diagram = PresheafDiagram { shape: c.clone(), nodes, edges };
    let (colim, _) = presheaf_colimit(&diagram).expect("yoneda composite is a valid diagram");
    colim.is_terminal()
}

/// The diagonal functor J → J × J.
pub fn diagonal(j: &Arc<FiniteCategory>) -> FunctorData {
    let (prod, _, _) = fincat::product(j, j);
    let (nj, mj) = (j.n_objects(), j.n_morphisms());
    FunctorData {
        source: j.clone(),
        target: prod,
        object_map: (0..nj).map(|o| o * nj + o).collect(),
        morphism_map: (0..mj).map(|u| u * mj + u).collect(),
    }
}

/// Siftedness: the diagonal J → J × J is cofinal. Level `Connected` is the
/// classical Set-valued notion.
pub fn is_sifted(j: &Arc<FiniteCategory>, level: CofinalityLevel) -> CofinalityVerdict {
    if j.n_objects() == 0 {
        return CofinalityVerdict {
            level,
            status: CofinalityStatus::NotCofinal,
            witnesses: vec![(0, "empty category is not sifted".into())],
        };
    }
    is_cofinal(&diagonal(j), level)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilteredReport {
    pub filtered: bool,
    pub witness: Option<String>,
}

/// The ω-filtered combinatorial test: nonempty, every pair of objects admits
/// a cospan, and every parallel pair admits an equalizing map. Always
/// decisive; failures carry the offending pair.
pub fn is_filtered(j: &Arc<FiniteCategory>) -> FilteredReport {
    if j.n_objects() == 0 {
        return FilteredReport { filtered: false, witness: Some("empty category".into()) };
    }
    for a in 0..j.n_objects() {
        for b in 0..j.n_objects() {
            let has_cospan = (0..j.n_objects())
                .any(|c| !j.hom(a, c).is_empty() && !j.hom(b, c).is_empty());
            if !has_cospan {
                return FilteredReport {
                    filtered: false,
                    witness: Some(format!(
                        "objects {} and {} admit no cospan",
                        j.object_names[a], j.object_names[b]
                    )),
                };
            }
        }
    }
    for a in 0..j.n_objects() {
        for b in 0..j.n_objects() {
            let par = j.hom(a, b);
            for &u in &par {
                for &v in &par {
                    if u >= v {
                        continue;
                    }
                    let equalized = (0..j.n_morphisms())
                        .any(|h| j.src(h) == b && j.compose(h, u) == j.compose(h, v));
                    if !equalized {
                        return FilteredReport {
                            filtered: false,
                            witness: Some(format!(
                                "parallel pair {}, {} admits no equalizing map",
                                j.morphisms[u].name, j.morphisms[v].name
                            )),
                        };
                    }
                }
            }
        }
    }
    FilteredReport { filtered: true, witness: None }
}

/// The lax and strict path categories of a functor f: A → B. Objects of
/// `lpath` are triples (b, a, γ: b → f(a)); `path` is the full subcategory
/// on triples with γ invertible.
#[derive(Debug, Clone)]
pub struct PathCategories {
    pub lpath: Arc<FiniteCategory>,
    /// Object indices of lpath whose structure map is invertible.
    pub path_objects: Vec<usize>,
    pub path: Arc<FiniteCategory>,
    /// Morphism indices of lpath belonging to the full subcategory, in the
    /// same order as `path`'s morphisms.
    pub path_morphisms: Vec<usize>,
    pub pi_a: FunctorData,
    pub pi_b: FunctorData,
    /// π_A restricted to `path`.
    pub pi_a_on_path: FunctorData,
}

pub fn path_categories(f: &FunctorData) -> PathCategories {
    let b_cat = &f.target;
    let id_b = FunctorData::identity(b_cat);
    let (lpath, pi_b, pi_a) = fincat::comma(&id_b, f);
    // recover each object's structure morphism γ: it is the unique morphism
    // of B with pi_b(obj) → f(pi_a(obj)) named in the object; rebuild the
    // triples the same way comma() enumerates them
    let mut gammas = Vec::new();
    for bo in 0..b_cat.n_objects() {
        for ao in 0..f.source.n_objects() {
            for g in b_cat.hom(bo, f.ob(ao)) {
                gammas.push(g);
            }
        }
    }
    debug_assert_eq!(gammas.len(), lpath.n_objects());
    let path_objects: Vec<usize> = (0..lpath.n_objects())
        .filter(|&o| b_cat.is_iso(gammas[o]))
        .collect();
    let path = Arc::new(lpath.full_subcategory(&path_objects));
    let in_path: Vec<bool> = {
        let mut v = vec![false; lpath.n_objects()];
        for &o in &path_objects {
            v[o] = true;
        }
        v
    };
    let path_morphisms: Vec<usize> = (0..lpath.n_morphisms())
        .filter(|&m| in_path[lpath.src(m)] && in_path[lpath.tgt(m)])
        .collect();
    let pi_a_on_path = FunctorData {
        source: path.clone(),
        target: f.source.clone(),
        object_map: path_objects.iter().map(|&o| pi_a.ob(o)).collect(),
        morphism_map: path_morphisms.iter().map(|&m| pi_a.mor(m)).collect(),
    };
    PathCategories { lpath, path_objects, path, path_morphisms, pi_a, pi_b, pi_a_on_path }
}

/// A cocone under a diagram d: J → A: a vertex of A with one compatible leg
/// per object of J.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocone {
    pub vertex: usize,
    pub legs: Vec<usize>,
}

/// All cocones under the diagram, in lexicographic order of (vertex, legs).
pub fn enumerate_cocones(d: &FunctorData) -> Vec<Cocone> {
    let (j, a) = (&d.source, &d.target);
    let mut out = Vec::new();
    for vertex in 0..a.n_objects() {
        let choices: Vec<Vec<usize>> = (0..j.n_objects()).map(|o| a.hom(d.ob(o), vertex)).collect();
        let mut legs = vec![0usize; j.n_objects()];
        let mut stack = 0usize;
        if j.n_objects() == 0 {
            out.push(Cocone { vertex, legs: vec![] });
            continue;
        }
        // backtracking over leg choices with naturality pruning
        'outer: loop {
            if stack == j.n_objects() {
                out.push(Cocone { vertex, legs: legs.iter().map(|&i| i).enumerate().map(|(o, i)| choices[o][i]).collect() });
                stack -= 1;
                legs[stack] += 1;
            }
            loop {
                if legs[stack] >= choices[stack].len() {
                    legs[stack] = 0;
                    if stack == 0 {
                        break 'outer;
                    }
                    stack -= 1;
                    legs[stack] += 1;
                    continue;
                }
                // check every J-morphism with both endpoints ≤ stack
                let ok = (0..j.n_morphisms()).all(|u| {
                    let (s, t) = (j.src(u), j.tgt(u));
                    if s > stack || t > stack {
                        return true;
                    }
                    a.compose(choices[t][legs[t]], d.mor(u)) == Some(choices[s][legs[s]])
                });
                if ok {
                    stack += 1;
                    break;
                }
                legs[stack] += 1;
            }
        }
    }
    out
}

/// The colimit of d: J → A, if it exists in A: the cocone through which
/// every other cocone factors uniquely. Returns the lowest-index such
/// cocone.
pub fn colimit_in_category(d: &FunctorData) -> Option<Cocone> {
    let a = &d.target;
    let cocones = enumerate_cocones(d);
    cocones.iter().find(|cand| {
        cocones.iter().all(|other| {
            let mediating = a
                .hom(cand.vertex, other.vertex)
                .into_iter()
                .filter(|&h| {
                    cand.legs
                        .iter()
                        .zip(&other.legs)
                        .all(|(&l, &m)| a.compose(h, l) == Some(m))
                })
                .count();
            mediating == 1
        })
    }).cloned()
}

/// Checks whether a given cocone is a colimit.
pub fn is_colimit_cocone(d: &FunctorData, cand: &Cocone) -> bool {
    let a = &d.target;
    enumerate_cocones(d).iter().all(|other| {
        a.hom(cand.vertex, other.vertex)
            .into_iter()
            .filter(|&h| cand.legs.iter().zip(&other.legs).all(|(&l, &m)| a.compose(h, l) == Some(m)))
            .count()
            == 1
    })
}

/// Direct test that f: A → B preserves J-colimits: for every J-diagram in A
/// possessing a colimit, the image cocone must be a colimit in B.
pub fn preserves_colimits_direct(f: &FunctorData, j: &Arc<FiniteCategory>, bounds: Bounds) -> Verdict {
    let (diagrams, truncated) = fincat::enumerate_functors(j, &f.source, bounds.max_diagrams);
    for d in &diagrams {
        if let Some(col) = colimit_in_category(d) {
            let image = f.compose_after(d);
            let image_cocone = Cocone {
                vertex: f.ob(col.vertex),
                legs: col.legs.iter().map(|&l| f.mor(l)).collect(),
            };
            if !is_colimit_cocone(&image, &image_cocone) {
                let desc: Vec<&str> = (0..j.n_objects())
                    .map(|o| f.source.object_names[d.ob(o)].as_str())
                    .collect();
                return Verdict::non_member(
                    format!("colimit of the diagram on [{}] is not preserved", desc.join(", ")),
                    bounds,
                );
            }
        }
    }
    if truncated {
        Verdict::unknown(bounds)
    } else {
        Verdict::member(None, bounds)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PathCriterionError {
    #[error("a J-diagram in {0} has no colimit: [{1}]")]
    MissingColimits(String, String),
}

#[derive(Debug, Clone)]
pub struct PathCriterionReport {
    pub verdict: Verdict,
    /// True when both this check and the direct preservation check were
    /// exhaustive and reached the same decision.
    pub agreement: bool,
}

/// The path criterion: f preserves J-colimits iff the full subcategory
/// `path` ⊆ `lpath` is stable under J-colimits taken in `lpath`. Requires A
/// and B to have all J-colimits.
pub fn path_criterion_check(
    f: &FunctorData,
    j: &Arc<FiniteCategory>,
    bounds: Bounds,
) -> Result<PathCriterionReport, PathCriterionError> {
    for (cat, label) in [(&f.source, "the source"), (&f.target, "the target")] {
        let (diagrams, _) = fincat::enumerate_functors(j, cat, bounds.max_diagrams);
        for d in &diagrams {
            if colimit_in_category(d).is_none() {
                let desc: Vec<&str> =
                    (0..j.n_objects()).map(|o| cat.object_names[d.ob(o)].as_str()).collect();
                return Err(PathCriterionError::MissingColimits(label.into(), desc.join(", ")));
            }
        }
    }
    let pc = path_categories(f);
    let in_path: Vec<bool> = {
        let mut v = vec![false; pc.lpath.n_objects()];
        for &o in &pc.path_objects {
            v[o] = true;
        }
        v
    };
    let (diagrams, truncated) = fincat::enumerate_functors(j, &pc.path, bounds.max_diagrams);
    let mut verdict = Verdict::member(None, bounds);
    for d in &diagrams {
        // include the diagram into lpath and take the colimit there
        let included = FunctorData {
            source: j.clone(),
            target: pc.lpath.clone(),
            object_map: (0..j.n_objects()).map(|o| pc.path_objects[d.ob(o)]).collect(),
            morphism_map: (0..j.n_morphisms()).map(|u| pc.path_morphisms[d.mor(u)]).collect(),
        };
        match colimit_in_category(&included) {
            Some(col) => {
                if !in_path[col.vertex] {
                    let desc: Vec<&str> = (0..j.n_objects())
                        .map(|o| pc.lpath.object_names[pc.path_objects[d.ob(o)]].as_str())
                        .collect();
                    verdict = Verdict::non_member(
                        format!(
                            "colimit of the diagram on [{}] leaves the path subcategory at {}",
                            desc.join(", "),
                            pc.lpath.object_names[col.vertex]
                        ),
                        bounds,
                    );
                    break;
                }
            }
            None => {
                verdict = Verdict::unknown(bounds);
            }
        }
    }
    if truncated && verdict.is_member() {
        verdict = Verdict::unknown(bounds);
    }
    let direct = preserves_colimits_direct(f, j, bounds);
    let agreement = if verdict.is_decisive() && direct.is_decisive() {
        verdict.status == direct.status
    } else {
        true
    };
    Ok(PathCriterionReport { verdict, agreement })
}
