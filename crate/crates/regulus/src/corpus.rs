//! Bundled corpus: named categories, functors, and classes shipped as
//! `.cat` files, together with expected verdicts that are re-derived on
//! every run.

use std::sync::Arc;

use crate::cofinality::{is_cofinal, is_filtered, is_sifted, CofinalityLevel, CofinalityStatus};
use crate::completion::{closure_search, eval_recipe};
use crate::dsl::{load_str, Workspace};
use crate::fincat::{karoubi, FiniteCategory};
use crate::homotopy::{homology, nerve, weak_contractibility, ContractibilityStatus};
use crate::presheaf::{are_isomorphic, terminal_presheaf};
use crate::verdict::{Bounds, VerdictStatus};

pub const SHAPES_CAT: &str = include_str!("../corpus/shapes.cat");
pub const COEQUALIZER_CAT: &str = include_str!("../corpus/coequalizer.cat");

/// The shared shape workspace. Panics only if the bundled files are broken,
/// which the corpus suite would catch.
pub fn corpus_workspace() -> Workspace {
    load_str(SHAPES_CAT).expect("bundled shapes.cat elaborates")
}

pub fn coequalizer_workspace() -> Workspace {
    load_str(COEQUALIZER_CAT).expect("bundled coequalizer.cat elaborates")
}

/// All corpus categories by name, in declaration order.
pub fn corpus_categories() -> Vec<(String, Arc<FiniteCategory>)> {
    corpus_workspace().categories
}

pub struct CorpusEntry {
    pub name: &'static str,
    pub expectation: &'static str,
    check: fn() -> Result<(), String>,
}

impl CorpusEntry {
    pub fn run(&self) -> Result<(), String> {
        (self.check)()
    }
}

fn expect(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn check_coequalizer() -> Result<(), String> {
    let ws = coequalizer_workspace();
    let c = ws.category("C").unwrap();
    let class = &ws.class("F").unwrap().class;
    let recipe = &ws.recipe("Coeq").unwrap().recipe;
    let value = eval_recipe(c, class, recipe).map_err(|e| e.to_string())?;
    expect(value.is_terminal(), "bundled recipe does not evaluate to the terminal presheaf")?;
    let v = closure_search(c, class, &terminal_presheaf(c), Bounds::default());
    expect(v.status == VerdictStatus::Member, format!("closure search returned {:?}", v.status))?;
    let cert = v.certificate.ok_or("membership verdict carries no certificate")?;
    let cert_value = eval_recipe(c, class, &cert).map_err(|e| e.to_string())?;
    expect(
        are_isomorphic(&cert_value, &terminal_presheaf(c)).is_some(),
        "certificate does not re-evaluate to the terminal presheaf",
    )
}

fn check_parallel_pair_not_contractible() -> Result<(), String> {
    let ws = corpus_workspace();
    let pp = ws.category("ParallelPair").unwrap();
    let v = weak_contractibility(pp, 4);
    expect(v.status == ContractibilityStatus::NotContractible, format!("got {:?}", v.status))?;
    let h = homology(&nerve(pp, 4), true);
    expect(h.betti[1] == 1, format!("expected b_1 = 1, got {:?}", h.betti))
}

fn check_idem_karoubi_terminal() -> Result<(), String> {
    let ws = corpus_workspace();
    let idem = ws.category("Idem").unwrap();
    let (kar, _) = karoubi(idem);
    expect(kar.find_terminal().is_some(), "Karoubi envelope of Idem has no terminal object")?;
    let class = &ws.class("IdemClass").unwrap().class;
    let v = closure_search(idem, class, &terminal_presheaf(idem), Bounds::default());
    expect(v.status == VerdictStatus::Member, format!("got {:?}", v.status))
}

fn check_terminal_object_class() -> Result<(), String> {
    let ws = corpus_workspace();
    let empty_class = &ws.class("NoShapes").unwrap().class;
    for name in ["Chain2", "Chain3", "Square", "Diamond", "Point"] {
        let c = ws.category(name).unwrap();
        let v = closure_search(c, empty_class, &terminal_presheaf(c), Bounds::default());
        expect(v.status == VerdictStatus::Member, format!("{name}: got {:?}", v.status))?;
    }
    for name in ["ParallelPair", "Span", "Disc2", "Idem"] {
        let c = ws.category(name).unwrap();
        let v = closure_search(c, empty_class, &terminal_presheaf(c), Bounds::default());
        expect(v.status == VerdictStatus::NonMember, format!("{name}: got {:?}", v.status))?;
    }
    Ok(())
}

fn check_coproduct_class() -> Result<(), String> {
    let ws = corpus_workspace();
    let class = &ws.class("Coproducts").unwrap().class;
    for name in ["Disc2", "Disc3", "Chain2", "Point"] {
        let c = ws.category(name).unwrap();
        let v = closure_search(c, class, &terminal_presheaf(c), Bounds::default());
        expect(v.status == VerdictStatus::Member, format!("{name}: got {:?}", v.status))?;
    }
    let pp = ws.category("ParallelPair").unwrap();
    let v = closure_search(pp, class, &terminal_presheaf(pp), Bounds::default());
    expect(v.status == VerdictStatus::NonMember, format!("ParallelPair: got {:?}", v.status))
}

fn check_cofinal_functors() -> Result<(), String> {
    let ws = corpus_workspace();
    let incl_b = ws.functor("includeB").unwrap();
    let v = is_cofinal(incl_b, CofinalityLevel::Connected);
    expect(v.status == CofinalityStatus::NotCofinal, format!("includeB: got {:?}", v.status))?;
    expect(
        v.witnesses.last().map(|(d, _)| *d) == Some(0),
        "includeB: expected witness object a",
    )?;
    let incl_top = ws.functor("includeTop").unwrap();
    for level in [CofinalityLevel::Connected, CofinalityLevel::WeaklyContractible] {
        let v = is_cofinal(incl_top, level);
        expect(v.status == CofinalityStatus::Cofinal, format!("includeTop at {level:?}: got {:?}", v.status))?;
    }
    Ok(())
}

fn check_sifted_and_filtered() -> Result<(), String> {
    let ws = corpus_workspace();
    let sift = |name: &str| is_sifted(ws.category(name).unwrap(), CofinalityLevel::Connected).status;
    expect(sift("Diamond") == CofinalityStatus::Cofinal, "Diamond should be sifted")?;
    expect(sift("Point") == CofinalityStatus::Cofinal, "Point should be sifted")?;
    expect(sift("Disc2") == CofinalityStatus::NotCofinal, "Disc2 should not be sifted")?;
    expect(is_filtered(ws.category("Chain3").unwrap()).filtered, "Chain3 should be filtered")?;
    expect(is_filtered(ws.category("Diamond").unwrap()).filtered, "Diamond should be filtered")?;
    expect(!is_filtered(ws.category("Disc2").unwrap()).filtered, "Disc2 should not be filtered")?;
    expect(
        !is_filtered(ws.category("ParallelPair").unwrap()).filtered,
        "ParallelPair should not be filtered",
    )
}

fn check_contractible_shapes() -> Result<(), String> {
    let ws = corpus_workspace();
    for name in ["Point", "Chain2", "Chain3", "Square", "Diamond", "Idem", "Span"] {
        let v = weak_contractibility(ws.category(name).unwrap(), 4);
        expect(
            matches!(v.status, ContractibilityStatus::Contractible | ContractibilityStatus::ProbablyContractible),
            format!("{name}: got {:?} ({})", v.status, v.evidence),
        )?;
    }
    for name in ["Disc2", "Disc3", "ParallelPair"] {
        let v = weak_contractibility(ws.category(name).unwrap(), 4);
        expect(
            v.status == ContractibilityStatus::NotContractible,
            format!("{name}: got {:?}", v.status),
        )?;
    }
    Ok(())
}

fn check_euler_bookkeeping() -> Result<(), String> {
    for (name, c) in corpus_categories() {
        let n = nerve(&c, 4);
        expect(n.boundary_squares_to_zero(), format!("{name}: boundary does not square to zero"))?;
        let h = homology(&n, false);
        if h.torsion.iter().all(|t| t.is_empty()) && n.simplex_count(4) == 0 {
            expect(
                n.euler_characteristic() == h.euler_from_betti(),
                format!("{name}: Euler characteristic mismatch"),
            )?;
        }
    }
    Ok(())
}

/// The expectation manifest. Every entry recomputes its verdicts from
/// scratch; nothing is cached.
pub fn corpus_entries() -> Vec<CorpusEntry> {
    vec![
        CorpusEntry {
            name: "coequalizer-from-pushout-coproduct",
            expectation: "terminal presheaf on the parallel pair is reached from {span, 2-discrete}; certificate re-evaluates",
            check: check_coequalizer,
        },
        CorpusEntry {
            name: "parallel-pair-not-contractible",
            expectation: "NotContractible with reduced b_1 = 1",
            check: check_parallel_pair_not_contractible,
        },
        CorpusEntry {
            name: "idem-karoubi-terminal",
            expectation: "Karoubi envelope of the walking idempotent has a terminal object; Idem-class closure holds",
            check: check_idem_karoubi_terminal,
        },
        CorpusEntry {
            name: "terminal-object-class",
            expectation: "empty shape class membership iff a terminal object exists",
            check: check_terminal_object_class,
        },
        CorpusEntry {
            name: "coproduct-class",
            expectation: "binary-coproduct class membership iff every component has a terminal object",
            check: check_coproduct_class,
        },
        CorpusEntry {
            name: "cofinal-functors",
            expectation: "includeB is not cofinal (witness a); includeTop is cofinal at both levels",
            check: check_cofinal_functors,
        },
        CorpusEntry {
            name: "sifted-and-filtered",
            expectation: "join-semilattices sifted, chains filtered, discretes and parallel pair neither",
            check: check_sifted_and_filtered,
        },
        CorpusEntry {
            name: "contractible-shapes",
            expectation: "shapes with terminal/initial objects contract; discretes and the parallel pair do not",
            check: check_contractible_shapes,
        },
        CorpusEntry {
            name: "euler-bookkeeping",
            expectation: "boundaries square to zero; Euler characteristic matches Betti numbers on truncation-exact complexes",
            check: check_euler_bookkeeping,
        },
    ]
}

/// Runs every entry; returns per-entry results.
pub fn run_corpus() -> Vec<(&'static str, Result<(), String>)> {
    corpus_entries().iter().map(|e| (e.name, e.run())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_files_elaborate() {
        assert_eq!(corpus_workspace().categories.len(), 10);
        assert_eq!(coequalizer_workspace().recipes.len(), 1);
    }

    #[test]
    fn all_corpus_entries_pass() {
        let mut failures = Vec::new();
        for (name, result) in run_corpus() {
            if let Err(e) = result {
                failures.push(format!("{name}: {e}"));
            }
        }
        assert!(failures.is_empty(), "corpus failures:\n{}", failures.join("\n"));
    }
}
