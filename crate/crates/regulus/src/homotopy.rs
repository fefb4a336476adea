//! Nerve construction, integral chain complexes, exact homology via Smith
//! normal form, fundamental-group presentations, and weak-contractibility
//! verdicts for finite categories.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::fincat::FiniteCategory;

/// Default truncation depth for nerve-based verdicts.
pub const DEFAULT_NERVE_DEPTH: usize = 4;

/// The truncated normalized nerve of a finite category: k-simplices are
/// composable chains of non-identity morphisms, boundaries drop degenerate
/// faces.
#[derive(Debug, Clone)]
pub struct NerveComplex {
    pub dimension_bound: usize,
    /// simplices[k] lists the k-chains; a 0-chain is the empty chain at an
    /// object, recorded separately in `vertices`.
    pub vertices: Vec<usize>,
    pub simplices: Vec<Vec<Vec<usize>>>,
    /// boundary[k] is ∂_k: C_k → C_{k-1} as an integer matrix, rows indexed
    /// by (k-1)-simplices, for 1 ≤ k ≤ dimension_bound.
    pub boundary: Vec<Vec<Vec<BigInt>>>,
}

/// Builds the nerve up to dimension `d ≥ 1`.
pub fn nerve(c: &Arc<FiniteCategory>, d: usize) -> NerveComplex {
    assert!(d >= 1);
    let vertices: Vec<usize> = (0..c.n_objects()).collect();
    let nonid: Vec<usize> = (0..c.n_morphisms()).filter(|&f| !c.is_identity(f)).collect();
    let mut simplices: Vec<Vec<Vec<usize>>> = Vec::new();
    simplices.push(vertices.iter().map(|&v| vec![v]).collect()); // placeholder for dim 0 (by object)
    let mut level: Vec<Vec<usize>> = nonid.iter().map(|&f| vec![f]).collect();
    simplices.push(level.clone());
    for _k in 2..=d {
        let mut next = Vec::new();
        for chain in &level {
            let end = c.tgt(*chain.last().unwrap());
            for &f in &nonid {
                if c.src(f) == end {
                    let mut ext = chain.clone();
                    ext.push(f);
                    next.push(ext);
                }
            }
        }
        simplices.push(next.clone());
        level = next;
    }
    // boundary matrices
    let index_of: Vec<HashMap<Vec<usize>, usize>> = simplices
        .iter()
        .map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
        .collect();
    let vertex_index: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut boundary = Vec::new();
    for k in 1..=d {
        let rows = if k == 1 { vertices.len() } else { simplices[k - 1].len() };
        let cols = simplices[k].len();
        let mut m = vec![vec![BigInt::zero(); cols]; rows];
        for (j, chain) in simplices[k].iter().enumerate() {
            if k == 1 {
                let f = chain[0];
                m[vertex_index[&c.tgt(f)]][j] += 1;
                m[vertex_index[&c.src(f)]][j] -= 1;
                continue;
            }
            for face in 0..=k {
                let mut sub: Vec<usize> = Vec::with_capacity(k - 1);
                let mut degenerate = false;
                if face == 0 {
                    sub.extend(&chain[1..]);
                } else if face == k {
                    sub.extend(&chain[..k - 1]);
                } else {
                    // compose chain[face] ∘ chain[face-1]
                    let comp = c.compose(chain[face], chain[face - 1]).unwrap();
                    if c.is_identity(comp) {
                        degenerate = true;
                    } else {
                        sub.extend(&chain[..face - 1]);
                        sub.push(comp);
                        sub.extend(&chain[face + 1..]);
                    }
                }
                if degenerate {
                    continue;
                }
                let row = index_of[k - 1][&sub];
                let sign = if face % 2 == 0 { 1 } else { -1 };
                m[row][j] += sign;
            }
        }
        boundary.push(m);
    }
    NerveComplex { dimension_bound: d, vertices, simplices, boundary }
}

impl NerveComplex {
    /// ∂_{k-1}·∂_k = 0 for all k.
    pub fn boundary_squares_to_zero(&self) -> bool {
        for k in 1..self.boundary.len() {
            let (a, b) = (&self.boundary[k - 1], &self.boundary[k]);
            let rows = a.len();
            let mid = b.len();
            let cols = if mid == 0 { 0 } else { b[0].len() };
            for i in 0..rows {
                for j in 0..cols {
                    let mut s = BigInt::zero();
                    for t in 0..mid {
                        s += &a[i][t] * &b[t][j];
                    }
                    if !s.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn simplex_count(&self, k: usize) -> usize {
        if k == 0 {
            self.vertices.len()
        } else {
            self.simplices.get(k).map(|s| s.len()).unwrap_or(0)
        }
    }

    /// Euler characteristic from alternating simplex counts, up to the
    /// truncation dimension.
    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.dimension_bound)
            .map(|k| {
                let n = self.simplex_count(k) as i64;
                if k % 2 == 0 {
                    n
                } else {
                    -n
                }
            })
            .sum()
    }

    /// Plain triplet text dump of a boundary matrix: `rows cols` then one
    /// `row col value` line per nonzero entry.
    pub fn dump_boundary(&self, k: usize) -> String {
        let m = &self.boundary[k - 1];
        let rows = m.len();
        let cols = m.first().map(|r| r.len()).unwrap_or(0);
        let mut out = format!("{rows} {cols}\n");
        for (i, row) in m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    out.push_str(&format!("{i} {j} {v}\n"));
                }
            }
        }
        out
    }
}

/// Smith normal form invariant factors of an integer matrix, in divisibility
/// order, all positive and > 0. Exact arithmetic; pivots chosen by minimal
/// absolute value to control entry growth.
pub fn smith_invariant_factors(matrix: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let rows = m.len();
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut factors = Vec::new();
    let mut top = 0usize;
    while top < rows && top < cols {
        // find minimal nonzero pivot in the remaining submatrix
        let mut pivot: Option<(usize, usize)> = None;
        for i in top..rows {
            for j in top..cols {
                if !m[i][j].is_zero() {
                    match pivot {
                        Some((pi, pj)) if m[pi][pj].abs() <= m[i][j].abs() => {}
                        _ => pivot = Some((i, j)),
                    }
                }
            }
        }
        let (pi, pj) = match pivot {
            Some(p) => p,
            None => break,
        };
        m.swap(top, pi);
        for row in m.iter_mut() {
            row.swap(top, pj);
        }
        // clear row and column; restart if a reduction leaves a remainder
        loop {
            let mut clean = true;
            for i in top + 1..rows {
                if m[i][top].is_zero() {
                    continue;
                }
                let q = &m[i][top] / &m[top][top];
                for j in top..cols {
                    let sub = &q * &m[top][j];
                    m[i][j] -= sub;
                }
                if !m[i][top].is_zero() {
                    // remainder smaller than pivot; swap up and redo
                    m.swap(top, i);
                    clean = false;
                }
            }
            for j in top + 1..cols {
                if m[top][j].is_zero() {
                    continue;
                }
                let q = &m[top][j] / &m[top][top];
                for i in top..rows {
                    let sub = &q * &m[i][top];
                    m[i][j] -= sub;
                }
                if !m[top][j].is_zero() {
                    for i in top..rows {
                        let tmp = m[i][top].clone();
                        m[i][top] = m[i][j].clone();
                        m[i][j] = tmp;
                    }
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        // divisibility: pivot must divide every remaining entry
        let mut adjusted = false;
        'scan: for i in top + 1..rows {
            for j in top + 1..cols {
                if !(&m[i][j] % &m[top][top]).is_zero() {
                    // add row i to row top and redo this pivot position
                    for j2 in top..cols {
                        let add = m[i][j2].clone();
                        m[top][j2] += add;
                    }
                    adjusted = true;
                    break 'scan;
                }
            }
        }
        if adjusted {
            continue;
        }
        factors.push(m[top][top].abs());
        top += 1;
    }
    factors
}

/// Betti numbers and torsion of a truncated nerve complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    /// b_0 .. b_{d-1}
    pub betti: Vec<usize>,
    /// invariant factors > 1 of ∂_{k+1}, i.e. the torsion of H_k, per degree.
    pub torsion: Vec<Vec<String>>,
    pub reduced: bool,
}

/// Homology of the truncated complex over the integers, computed from Smith
/// normal forms. With `reduced` set, the degree-0 group is reduced by the
/// augmentation.
pub fn homology(n: &NerveComplex, reduced: bool) -> HomologyReport {
    let d = n.dimension_bound;
    let mut ranks = Vec::with_capacity(d + 1); // rank ∂_k for k = 1..d
    let mut inv_factors = Vec::with_capacity(d);
    for k in 1..=d {
        let f = smith_invariant_factors(&n.boundary[k - 1]);
        ranks.push(f.len());
        inv_factors.push(f);
    }
    let mut betti = Vec::new();
    let mut torsion = Vec::new();
    for k in 0..d {
        let dim_ck = n.simplex_count(k);
        let rank_in = if k == 0 { 0 } else { ranks[k - 1] }; // rank ∂_k
        let rank_out = ranks[k]; // rank ∂_{k+1}
        let mut b = dim_ck - rank_in - rank_out;
        if reduced && k == 0 && b > 0 {
            b -= 1;
        }
        betti.push(b);
        torsion.push(
            inv_factors[k]
                .iter()
                .filter(|f| f.abs() > BigInt::from(1))
                .map(|f| f.to_string())
                .collect(),
        );
    }
    HomologyReport { betti, torsion, reduced }
}

impl HomologyReport {
    pub fn all_trivial(&self) -> bool {
        self.betti.iter().all(|&b| b == 0) && self.torsion.iter().all(|t| t.is_empty())
    }

    /// Alternating Betti sum; when the complex is exactly truncated this
    /// equals the Euler characteristic.
    pub fn euler_from_betti(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

/// Triviality outcome of a bounded fundamental-group computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pi1Status {
    Trivial,
    NonTrivial,
    Unknown,
}

/// A finite presentation of the edge-path group of the nerve.
#[derive(Debug, Clone)]
pub struct Pi1Presentation {
    pub generators: Vec<String>,
    /// Relator words over generator indices; negative entries are inverses
    /// (index -(g+1)).
    pub relations: Vec<Vec<i64>>,
    pub status: Pi1Status,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("fundamental group requires a non-empty connected category")]
pub struct Disconnected;

/// Edge-path group of the nerve via a spanning tree of the 1-skeleton,
/// with relations from 2-simplices and bounded Tietze simplification.
pub fn pi1_presentation(c: &Arc<FiniteCategory>) -> Result<Pi1Presentation, Disconnected> {
    if c.n_objects() == 0 || c.connected_components().0.len() != 1 {
        return Err(Disconnected);
    }
    let nonid: Vec<usize> = (0..c.n_morphisms()).filter(|&f| !c.is_identity(f)).collect();
    // spanning tree of the undirected 1-skeleton, BFS from object 0
    let mut in_tree = vec![false; nonid.len()];
    let mut visited = vec![false; c.n_objects()];
    visited[0] = true;
    let mut frontier = vec![0usize];
    while let Some(v) = frontier.pop() {
        for (i, &f) in nonid.iter().enumerate() {
            for (from, to) in [(c.src(f), c.tgt(f)), (c.tgt(f), c.src(f))] {
                if from == v && !visited[to] {
                    visited[to] = true;
                    in_tree[i] = true;
                    frontier.push(to);
                }
            }
        }
    }
    // generators are non-tree edges; tree edges map to the empty word
    let gen_of: Vec<Option<usize>> = {
        let mut next = 0usize;
        nonid
            .iter()
            .enumerate()
            .map(|(i, _)| {
                if in_tree[i] {
                    None
                } else {
                    let g = next;
                    next += 1;
                    Some(g)
                }
            })
            .collect()
    };
    let generators: Vec<String> = nonid
        .iter()
        .enumerate()
        .filter(|&(i, _)| !in_tree[i])
        .map(|(_, &f)| c.morphisms[f].name.clone())
        .collect();
    let word_of = |f: usize| -> Vec<i64> {
        let i = nonid.iter().position(|&g| g == f).unwrap();
        match gen_of[i] {
            Some(g) => vec![g as i64 + 1],
            None => vec![],
        }
    };
    // relations from composable non-identity pairs: w(g)·w(f)·w(g∘f)⁻¹
    let mut relations = Vec::new();
    for &g in &nonid {
        for &f in &nonid {
            if let Some(gf) = c.compose(g, f) {
                let mut rel = Vec::new();
                rel.extend(word_of(g));
                rel.extend(word_of(f));
                if !c.is_identity(gf) {
                    rel.extend(word_of(gf).iter().map(|&x| -x));
                }
                relations.push(rel);
            }
        }
    }
    let (generators, relations) = tietze_simplify(generators, relations, 200);
    let status = if generators.is_empty() {
        Pi1Status::Trivial
    } else {
        // abelianization from the exponent matrix
        let rows = relations.len().max(1);
        let mut mat = vec![vec![BigInt::zero(); generators.len()]; rows];
        for (i, rel) in relations.iter().enumerate() {
            for &x in rel {
                let g = x.unsigned_abs() as usize - 1;
                mat[i][g] += if x > 0 { 1 } else { -1 };
            }
        }
        let factors = smith_invariant_factors(&mat);
        let free_rank = generators.len() - factors.len();
        let has_torsion = factors.iter().any(|f| f.abs() > BigInt::from(1));
        if free_rank > 0 || has_torsion {
            Pi1Status::NonTrivial
        } else {
            Pi1Status::Unknown
        }
    };
    Ok(Pi1Presentation { generators, relations, status })
}

fn free_reduce(w: &[i64]) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

fn tietze_simplify(mut generators: Vec<String>, mut relations: Vec<Vec<i64>>, passes: usize) -> (Vec<String>, Vec<Vec<i64>>) {
    for _ in 0..passes {
        relations = relations.iter().map(|r| free_reduce(r)).filter(|r| !r.is_empty()).collect();
        relations.sort();
        relations.dedup();
        // find a relation where some generator occurs exactly once
        let mut action: Option<(usize, Vec<i64>)> = None; // generator, replacement word
        'rels: for rel in &relations {
            for (pos, &x) in rel.iter().enumerate() {
                let g = x.unsigned_abs();
                let occurrences = rel.iter().filter(|&&y| y.unsigned_abs() == g).count();
                if occurrences == 1 {
                    // solve rel = 1 for x: x = (suffix)⁻¹ (prefix)⁻¹ reversed
                    let mut word: Vec<i64> = Vec::new();
                    word.extend(rel[pos + 1..].iter().rev().map(|&y| -y));
                    word.extend(rel[..pos].iter().rev().map(|&y| -y));
                    if x < 0 {
                        word = word.iter().rev().map(|&y| -y).collect();
                    }
                    action = Some((g as usize - 1, word));
                    break 'rels;
                }
            }
        }
        let (g, word) = match action {
            Some(a) => a,
            None => break,
        };
        // substitute and remove generator g (renumber those above)
        let subst = |rel: &Vec<i64>| -> Vec<i64> {
            let mut out = Vec::new();
            for &x in rel {
                let gx = x.unsigned_abs() as usize - 1;
                if gx == g {
                    if x > 0 {
                        out.extend(&word);
                    } else {
                        out.extend(word.iter().rev().map(|&y| -y));
                    }
                } else {
                    out.push(x);
                }
            }
            out.iter()
                .map(|&x| {
                    let gx = x.unsigned_abs() as usize - 1;
                    let shifted = if gx > g { gx - 1 } else { gx } as i64 + 1;
                    if x > 0 {
                        shifted
                    } else {
                        -shifted
                    }
                })
                .collect()
        };
        relations = relations.iter().map(subst).map(|r| free_reduce(&r)).filter(|r| !r.is_empty()).collect();
        generators.remove(g);
    }
    (generators, relations)
}

/// Contractibility verdicts in a lattice that keeps homological evidence
/// apart from genuine certificates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ContractibilityStatus {
    Contractible,
    NotContractible,
    ProbablyContractible,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractibilityVerdict {
    pub status: ContractibilityStatus,
    pub evidence: String,
}

/// The decision ladder: empty → NotContractible; terminal or initial object
/// → Contractible; nonzero reduced homology, torsion, or disconnection →
/// NotContractible with a witness; all invariants trivial and π₁ trivial →
/// ProbablyContractible; otherwise Unknown.
pub fn weak_contractibility(c: &Arc<FiniteCategory>, d: usize) -> ContractibilityVerdict {
    if c.n_objects() == 0 {
        return ContractibilityVerdict {
            status: ContractibilityStatus::NotContractible,
            evidence: "empty category".into(),
        };
    }
    if let Some(t) = c.find_terminal() {
        return ContractibilityVerdict {
            status: ContractibilityStatus::Contractible,
            evidence: format!("terminal object {}", c.object_names[t]),
        };
    }
    if let Some(i) = c.find_initial() {
        return ContractibilityVerdict {
            status: ContractibilityStatus::Contractible,
            evidence: format!("initial object {}", c.object_names[i]),
        };
    }
    let components = c.connected_components().0.len();
    if components != 1 {
        return ContractibilityVerdict {
            status: ContractibilityStatus::NotContractible,
            evidence: format!("{components} connected components"),
        };
    }
    let n = nerve(c, d);
    let h = homology(&n, true);
    for (k, &b) in h.betti.iter().enumerate() {
        if b != 0 {
            return ContractibilityVerdict {
                status: ContractibilityStatus::NotContractible,
                evidence: format!("reduced b_{k} = {b}"),
            };
        }
    }
    for (k, t) in h.torsion.iter().enumerate() {
        if !t.is_empty() {
            return ContractibilityVerdict {
                status: ContractibilityStatus::NotContractible,
                evidence: format!("torsion {:?} in H_{k}", t),
            };
        }
    }
    match pi1_presentation(c) {
        Ok(p) if p.status == Pi1Status::Trivial => ContractibilityVerdict {
            status: ContractibilityStatus::ProbablyContractible,
            evidence: format!("reduced homology vanishes up to degree {} and π₁ is trivial", d - 1),
        },
        _ => ContractibilityVerdict {
            status: ContractibilityStatus::Unknown,
            evidence: "homology vanishes but π₁ triviality could not be certified".into(),
        },
    }
}

/// Bundle of finite invariants of the groupoid completion.
#[derive(Debug, Clone)]
pub struct GroupoidInvariants {
    pub components: usize,
    pub homology: HomologyReport,
    pub pi1: Vec<Pi1Status>,
}

pub fn groupoid_invariants(c: &Arc<FiniteCategory>, d: usize) -> GroupoidInvariants {
    let (_, subs) = c.connected_components();
    let n = nerve(c, d);
    let homology = homology(&n, false);
    let pi1 = subs
        .iter()
        .map(|s| {
            pi1_presentation(&Arc::new(s.clone()))
                .map(|p| p.status)
                .unwrap_or(Pi1Status::Unknown)
        })
        .collect();
    GroupoidInvariants { components: subs.len(), homology, pi1 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{chain, commutative_square, discrete, parallel_pair, span, terminal_category, walking_idempotent};

    #[test]
    fn nerve_of_terminal() {
        let n = nerve(&terminal_category(), 3);
        assert_eq!(n.simplex_count(0), 1);
        assert_eq!(n.simplex_count(1), 0);
        assert!(n.boundary_squares_to_zero());
    }

    #[test]
    fn nerve_of_parallel_pair() {
        let n = nerve(&parallel_pair(), 3);
        assert_eq!(n.simplex_count(0), 2);
        assert_eq!(n.simplex_count(1), 2);
        assert_eq!(n.simplex_count(2), 0);
        assert!(n.boundary_squares_to_zero());
    }

    #[test]
    fn nerve_of_two_chain() {
        let n = nerve(&chain(1), 3);
        assert_eq!(n.simplex_count(0), 2);
        assert_eq!(n.simplex_count(1), 1);
    }

    #[test]
    fn snf_basics() {
        let m = vec![
            vec![BigInt::from(2), BigInt::from(4)],
            vec![BigInt::from(4), BigInt::from(4)],
        ];
        let f = smith_invariant_factors(&m);
        assert_eq!(f, vec![BigInt::from(2), BigInt::from(4)]);
        let m = vec![vec![BigInt::from(0); 2]; 2];
        assert!(smith_invariant_factors(&m).is_empty());
        // torsion example: [[2]]
        let m = vec![vec![BigInt::from(2)]];
        assert_eq!(smith_invariant_factors(&m), vec![BigInt::from(2)]);
    }

    #[test]
    fn homology_of_point() {
        let n = nerve(&terminal_category(), 3);
        let h = homology(&n, true);
        assert!(h.all_trivial());
    }

    #[test]
    fn homology_of_parallel_pair_is_circle() {
        let n = nerve(&parallel_pair(), 3);
        let h = homology(&n, false);
        assert_eq!(h.betti[0], 1);
        assert_eq!(h.betti[1], 1);
        assert!(h.torsion.iter().all(|t| t.is_empty()));
    }

    #[test]
    fn homology_of_discrete_pair() {
        let n = nerve(&discrete(2), 3);
        let h = homology(&n, false);
        assert_eq!(h.betti[0], 2);
    }

    #[test]
    fn homology_independent_of_object_order() {
        // permute the objects of the parallel pair by relabeling through the
        // opposite of the opposite with swapped names: build the pair with
        // b listed first
        let swapped = {
            use crate::fincat::Morphism;
            use std::collections::HashMap;
            let names = vec!["b".to_string(), "a".to_string()];
            let morphisms = vec![
                Morphism { name: "id_b".into(), src: 0, tgt: 0 },
                Morphism { name: "id_a".into(), src: 1, tgt: 1 },
                Morphism { name: "f".into(), src: 1, tgt: 0 },
                Morphism { name: "g".into(), src: 1, tgt: 0 },
            ];
            let mut table = HashMap::new();
            table.insert((0, 0), 0);
            table.insert((1, 1), 1);
            table.insert((0, 2), 2);
            table.insert((2, 1), 2);
            table.insert((0, 3), 3);
            table.insert((3, 1), 3);
            Arc::new(FiniteCategory::new(names, morphisms, vec![0, 1], &table))
        };
        let h1 = homology(&nerve(&parallel_pair(), 3), false);
        let h2 = homology(&nerve(&swapped, 3), false);
        assert_eq!(h1.betti, h2.betti);
        assert_eq!(h1.torsion, h2.torsion);
    }

    #[test]
    fn pi1_of_terminal_shape_is_trivial() {
        assert_eq!(pi1_presentation(&chain(2)).unwrap().status, Pi1Status::Trivial);
    }

    #[test]
    fn pi1_of_parallel_pair_is_nontrivial() {
        assert_eq!(pi1_presentation(&parallel_pair()).unwrap().status, Pi1Status::NonTrivial);
    }

    #[test]
    fn pi1_of_commutative_square_is_trivial() {
        assert_eq!(pi1_presentation(&commutative_square()).unwrap().status, Pi1Status::Trivial);
    }

    #[test]
    fn pi1_rejects_disconnected() {
        assert!(pi1_presentation(&discrete(2)).is_err());
    }

    #[test]
    fn contractibility_ladder() {
        assert_eq!(weak_contractibility(&chain(1), 4).status, ContractibilityStatus::Contractible);
        assert_eq!(weak_contractibility(&parallel_pair(), 4).status, ContractibilityStatus::NotContractible);
        assert_eq!(weak_contractibility(&discrete(2), 4).status, ContractibilityStatus::NotContractible);
        assert_eq!(weak_contractibility(&crate::fincat::empty_category(), 4).status, ContractibilityStatus::NotContractible);
    }

    #[test]
    fn idem_invariants_contractible() {
        let inv = groupoid_invariants(&walking_idempotent(), 4);
        assert_eq!(inv.components, 1);
        let reduced = homology(&nerve(&walking_idempotent(), 4), true);
        assert!(reduced.all_trivial(), "Idem nerve homology should vanish: {reduced:?}");
        assert_eq!(inv.pi1, vec![Pi1Status::Trivial]);
    }

    #[test]
    fn span_is_contractible_via_initial() {
        let v = weak_contractibility(&span(), 4);
        assert_eq!(v.status, ContractibilityStatus::Contractible);
    }

    #[test]
    fn zigzag_is_probably_contractible() {
        // 0 ≤ 1 ≥ 2 ≤ 3 has neither terminal nor initial object but its
        // nerve is a contractible tree, so the ladder lands on the
        // homological verdict
        let z = crate::fincat::poset(4, |a, b| a == b || (a == 0 && b == 1) || (a == 2 && b == 1) || (a == 2 && b == 3));
        assert!(z.find_terminal().is_none());
        assert!(z.find_initial().is_none());
        let v = weak_contractibility(&z, 4);
        assert_eq!(v.status, ContractibilityStatus::ProbablyContractible);
    }

    #[test]
    fn euler_bookkeeping() {
        for c in [parallel_pair(), chain(2), discrete(3), span()] {
            let n = nerve(&c, 3);
            let h = homology(&n, false);
            let torsion_free = h.torsion.iter().all(|t| t.is_empty());
            assert!(torsion_free);
            assert_eq!(n.euler_characteristic(), h.euler_from_betti(), "Euler mismatch for {:?}", c.object_names);
        }
    }

    #[test]
    fn triplet_dump_shape() {
        let n = nerve(&parallel_pair(), 2);
        let dump = n.dump_boundary(1);
        let mut lines = dump.lines();
        assert_eq!(lines.next(), Some("2 2"));
        assert_eq!(dump.lines().count(), 5);
    }
}
