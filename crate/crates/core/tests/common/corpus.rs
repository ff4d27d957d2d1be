//! Hand-built derivations, one or more per rule and per system, plus the
//! proof-search goals.

use super::{f, seq};
use relsem::sequents::{expand_derived, Context, DerivedRule};
use relsem::{Derivation, ProofSystem, Rule, Sequent};

use ProofSystem::*;

fn ctx(items: &[&str]) -> Context {
    items.iter().map(|s| f(s)).collect()
}

fn ax(rule: Rule) -> Derivation {
    Derivation::axiom(rule)
}

fn refl(phi: &str, psi: &str) -> Rule {
    Rule::Refl {
        phi: f(phi),
        psi: f(psi),
    }
}

fn tran(phi: &str, psi: &str) -> Rule {
    Rule::Tran {
        phi: f(phi),
        psi: f(psi),
    }
}

fn sym2(alpha: &str, phi: &str, psi: &str, chi: &str) -> Rule {
    Rule::Sym2 {
        alpha: f(alpha),
        phi: f(phi),
        psi: f(psi),
        chi: f(chi),
    }
}

/// `{p} ⊢ (p → ⊥) → ⊥` by `Sym1` with `ψ = ⊥`.
fn double_negation_intro() -> Derivation {
    Derivation::sym1(
        Context::new(),
        f("p"),
        f("_|_"),
        ax(Rule::Bot {
            phi: f("(p -> _|_) -> _|_"),
        }),
        Derivation::assumption(ctx(&["(p -> _|_) -> _|_"]), f("(p -> _|_) -> _|_")),
    )
}

/// `{((p → q) → ⊥) → q, p} ⊢ q` by `Sym1` from `A` and a weakened `Refl`.
fn sym1_with_refl() -> Derivation {
    let gamma = ctx(&["((p -> q) -> _|_) -> q"]);
    let first = Derivation::assumption(ctx(&["((p -> q) -> _|_) -> q", "q"]), f("q"));
    let second = Derivation::weaken(
        ax(refl("(p -> q) -> _|_", "q")),
        ctx(&["((p -> q) -> _|_) -> q", "(p -> q) -> _|_"]),
    );
    Derivation::sym1(gamma, f("p"), f("q"), first, second)
}

/// `{p, p → q, q → r} ⊢ r` by two `Refl` steps joined with a cut.
fn modus_ponens_chain() -> Derivation {
    let second = Derivation::weaken(ax(refl("q", "r")), ctx(&["p", "p -> q", "q", "q -> r"]));
    let first = Derivation::weaken(ax(refl("p", "q")), ctx(&["p", "p -> q", "q -> r"]));
    Derivation::cut(ctx(&["p", "p -> q", "q -> r"]), f("q"), second, first)
}

/// `{q → p} ⊢ (⊥ → ⊥) → (q → p)`, lifted under `p → `.
fn tran_then_imp1() -> Derivation {
    Derivation::imp1(f("p"), ax(tran("q", "p")))
}

fn dt0_projection() -> Derivation {
    expand_derived(&DerivedRule::Dt0 {
        premise: Box::new(ax(Rule::AndEL {
            phi: f("p"),
            psi: f("q"),
        })),
    })
    .unwrap()
}

fn mon_assumption() -> Derivation {
    Derivation::weaken(
        Derivation::assumption(ctx(&["p"]), f("p")),
        ctx(&["p", "q"]),
    )
}

fn cut_through_conjunction() -> Derivation {
    Derivation::cut(
        Context::new(),
        f("p & q"),
        ax(Rule::AndEL {
            phi: f("p"),
            psi: f("q"),
        }),
        ax(Rule::AndI {
            phi: f("p"),
            psi: f("q"),
        }),
    )
}

/// Named derivations with the system each is checked in.
pub fn derivations() -> Vec<(&'static str, ProofSystem, Derivation)> {
    let items3 = vec![f("p"), f("q"), f("r")];
    vec![
        (
            "assumption",
            Kp,
            Derivation::assumption(ctx(&["p", "q"]), f("p")),
        ),
        ("weakening", Kp, mon_assumption()),
        ("cut through a conjunction", Kp, cut_through_conjunction()),
        ("ex falso", Bp, ax(Rule::Bot { phi: f("p -> q") })),
        (
            "conjunction intro",
            V,
            ax(Rule::AndI {
                phi: f("p"),
                psi: f("q"),
            }),
        ),
        (
            "left projection",
            I,
            ax(Rule::AndEL {
                phi: f("p"),
                psi: f("q -> p"),
            }),
        ),
        (
            "right projection",
            O,
            ax(Rule::AndER {
                phi: f("p"),
                psi: f("q"),
            }),
        ),
        ("identity", C, ax(Rule::Imp0 { phi: f("p & q") })),
        (
            "lifted assumption",
            KB4p,
            Derivation::imp1(f("q"), Derivation::assumption(ctx(&["p"]), f("p"))),
        ),
        (
            "transitivity of implication",
            Tp,
            ax(Rule::Imp2 {
                phi: f("p"),
                psi: f("q"),
                chi: f("r"),
            }),
        ),
        ("modus ponens (Tp)", Tp, ax(refl("p", "q"))),
        ("modus ponens (I)", I, ax(refl("p & q", "r"))),
        ("modus ponens (O)", O, ax(refl("p", "q -> p"))),
        ("modus ponens (C)", C, ax(refl("_|_", "q"))),
        ("modus ponens chain", Tp, modus_ponens_chain()),
        ("boxed implication (V)", V, ax(tran("p", "q"))),
        ("boxed implication (KB4p)", KB4p, ax(tran("p & q", "q"))),
        ("boxed implication (I)", I, ax(tran("p", "_|_"))),
        ("boxed implication (C)", C, ax(tran("q", "p"))),
        ("boxed implication lifted", V, tran_then_imp1()),
        ("double negation intro (Bp)", Bp, double_negation_intro()),
        (
            "double negation intro (KB4p)",
            KB4p,
            double_negation_intro(),
        ),
        ("symmetric case split (O)", O, sym1_with_refl()),
        ("symmetric case split (C)", C, sym1_with_refl()),
        ("symmetric axiom (Bp)", Bp, ax(sym2("p", "q", "p", "q"))),
        ("symmetric axiom (O)", O, ax(sym2("p", "q", "r", "p"))),
        (
            "symmetric axiom (KB4p)",
            KB4p,
            ax(sym2("q", "p", "_|_", "q")),
        ),
        ("symmetric axiom (C)", C, ax(sym2("p", "p", "q", "_|_"))),
        (
            "dead-end persistence (Kp)",
            Kp,
            ax(Rule::PropMinus { p: f("p") }),
        ),
        (
            "dead-end persistence (Tp)",
            Tp,
            ax(Rule::PropMinus { p: f("q") }),
        ),
        (
            "transitive persistence (V)",
            V,
            ax(Rule::PropTr { p: f("p") }),
        ),
        (
            "transitive persistence (KB4p)",
            KB4p,
            ax(Rule::PropTr { p: f("p") }),
        ),
        (
            "transitive persistence (I)",
            I,
            ax(Rule::PropTr { p: f("q") }),
        ),
        (
            "transitive persistence (C)",
            C,
            ax(Rule::PropTr { p: f("p") }),
        ),
        (
            "symmetric persistence (Bp)",
            Bp,
            ax(Rule::PropSy { p: f("p") }),
        ),
        (
            "symmetric persistence (O)",
            O,
            ax(Rule::PropSy { p: f("q") }),
        ),
        ("deduction from projection", Kp, dt0_projection()),
        (
            "three-way conjunction",
            Kp,
            expand_derived(&DerivedRule::FinAndI {
                items: items3.clone(),
            })
            .unwrap(),
        ),
        (
            "three-way projection",
            Bp,
            expand_derived(&DerivedRule::FinAndE {
                items: items3.clone(),
                index: 2,
            })
            .unwrap(),
        ),
        (
            "lifted three-way conjunction",
            Tp,
            expand_derived(&DerivedRule::ImpFinAndI {
                alpha: f("_|_ -> _|_"),
                items: items3.clone(),
            })
            .unwrap(),
        ),
        (
            "lifted three-way projection",
            O,
            expand_derived(&DerivedRule::ImpFinAndE {
                alpha: f("p"),
                items: vec![f("p"), f("q"), f("r")],
                index: 1,
            })
            .unwrap(),
        ),
    ]
}

/// Goals the search should prove within depth 6, with the system to use.
pub fn provable_goals() -> Vec<(ProofSystem, Sequent)> {
    let mut goals = vec![
        // axiom schemas with atoms
        (Kp, seq("p, q ; p")),
        (Kp, seq("_|_ ; p")),
        (Kp, seq("p, q ; p & q")),
        (Kp, seq("p & q ; p")),
        (Kp, seq("p & q ; q")),
        (Kp, seq("; p -> p")),
        (Kp, seq("p -> q, q -> r ; p -> r")),
        (Tp, seq("p, p -> q ; q")),
        (V, seq("p -> q ; (_|_ -> _|_) -> p -> q")),
        (Bp, seq("p & q -> r, p & ((q -> p) -> _|_) -> r ; p & q -> r")),
        (Kp, seq("p ; ((_|_ -> _|_) -> _|_) -> p")),
        (V, seq("p ; (_|_ -> _|_) -> p")),
        (Bp, seq("p ; ((p -> _|_) -> _|_) -> p")),
        // derived-rule conclusions
        (Kp, seq("; p & q -> p")),
        (Kp, seq("; p & q -> q")),
        (Kp, seq("p, q, r ; p & q & r")),
        (Kp, seq("p & q & r ; p")),
        (Kp, seq("p & q & r ; q")),
        (Kp, seq("p & q & r ; r")),
        (Kp, seq("r -> p, r -> q ; r -> p & q")),
        (Kp, seq("(_|_ -> _|_) -> p, (_|_ -> _|_) -> q, (_|_ -> _|_) -> r ; (_|_ -> _|_) -> p & q & r")),
        (Kp, seq("r -> p & q ; r -> p")),
        (Kp, seq("r -> p & q & r ; r -> q")),
        (Kp, seq("; p & q -> q & p")),
        // symmetric case splits
        (Bp, seq("p ; (p -> _|_) -> _|_")),
        (O, seq("((p -> q) -> _|_) -> q, p ; q")),
    ];
    for sys in [Tp, I, O, C] {
        goals.push((sys, seq("p, p -> q ; q")));
    }
    for sys in [V, KB4p, I, C] {
        goals.push((sys, seq("p -> q ; (_|_ -> _|_) -> p -> q")));
        goals.push((sys, seq("p ; (_|_ -> _|_) -> p")));
    }
    goals
}

/// Goals whose search is expected to come back empty; each must have a
/// countermodel in the system's class.
pub fn unprovable_goals() -> Vec<(ProofSystem, Sequent)> {
    let mut goals = Vec::new();
    for sys in [Kp, Bp, V, KB4p] {
        goals.push((sys, seq("p, p -> q ; q")));
    }
    for sys in [Kp, Tp, Bp, O] {
        goals.push((sys, seq("p -> q ; (_|_ -> _|_) -> p -> q")));
        goals.push((sys, seq("p ; (_|_ -> _|_) -> p")));
    }
    for sys in [Kp, Tp] {
        goals.push((sys, seq("p ; ((p -> _|_) -> _|_) -> p")));
    }
    goals
}
