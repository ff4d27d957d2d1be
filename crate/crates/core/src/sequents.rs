//! Sequents, the rule catalogue, the eight proof systems and the derivation
//! checker.
//!
//! Every derivation node records the witnesses of its rule instance (the
//! `Γ` of a cut, the atom of a `Prop` axiom, ...), so checking a node is a
//! direct comparison against the instantiated schema.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classes::ModelClass;
use crate::formula::{parse, Formula, ParseError};

pub type Context = BTreeSet<Formula>;

/// A right-simple sequent `(Γ, φ)` with finite `Γ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    pub context: Context,
    pub goal: Formula,
}

impl Sequent {
    pub fn new(context: impl IntoIterator<Item = Formula>, goal: Formula) -> Self {
        Sequent {
            context: context.into_iter().collect(),
            goal,
        }
    }

    pub fn atoms(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        for f in self.context.iter().chain(std::iter::once(&self.goal)) {
            f.collect_atoms(&mut out);
        }
        out
    }

    /// Parses `"φ1, ..., φn ; ψ"`. The context may be empty (`"; ψ"`).
    pub fn parse(text: &str) -> Result<Self, SequentParseError> {
        let (ctx, goal) = text
            .split_once(';')
            .ok_or(SequentParseError::MissingSemicolon)?;
        let goal = parse(goal).map_err(|e| SequentParseError::Formula {
            offset: ctx.len() + 1,
            source: e,
        })?;
        let mut context = Context::new();
        if !ctx.trim().is_empty() {
            let mut offset = 0;
            for piece in ctx.split(',') {
                let f =
                    parse(piece).map_err(|e| SequentParseError::Formula { offset, source: e })?;
                context.insert(f);
                offset += piece.len() + 1;
            }
        }
        Ok(Sequent { context, goal })
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.context.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        if !self.context.is_empty() {
            f.write_str(" ")?;
        }
        write!(f, "; {}", self.goal)
    }
}

impl fmt::Debug for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sequent({self})")
    }
}

impl FromStr for Sequent {
    type Err = SequentParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Sequent::parse(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequentParseError {
    #[error("sequent needs `;` between context and goal")]
    MissingSemicolon,
    #[error("in formula starting at offset {offset}: {source}")]
    Formula { offset: usize, source: ParseError },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleName {
    A,
    Mon,
    Cut,
    Bot,
    AndI,
    AndEL,
    AndER,
    Imp0,
    Imp1,
    Imp2,
    Refl,
    Tran,
    Sym1,
    Sym2,
    PropMinus,
    PropTr,
    PropSy,
}

impl RuleName {
    pub const ALL: [RuleName; 17] = [
        RuleName::A,
        RuleName::Mon,
        RuleName::Cut,
        RuleName::Bot,
        RuleName::AndI,
        RuleName::AndEL,
        RuleName::AndER,
        RuleName::Imp0,
        RuleName::Imp1,
        RuleName::Imp2,
        RuleName::Refl,
        RuleName::Tran,
        RuleName::Sym1,
        RuleName::Sym2,
        RuleName::PropMinus,
        RuleName::PropTr,
        RuleName::PropSy,
    ];

    pub fn arity(self) -> usize {
        match self {
            RuleName::Mon | RuleName::Imp1 => 1,
            RuleName::Cut | RuleName::Sym1 => 2,
            _ => 0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RuleName::A => "A",
            RuleName::Mon => "Mon",
            RuleName::Cut => "Cut",
            RuleName::Bot => "Bot",
            RuleName::AndI => "AndI",
            RuleName::AndEL => "AndE_L",
            RuleName::AndER => "AndE_R",
            RuleName::Imp0 => "Imp0",
            RuleName::Imp1 => "Imp1",
            RuleName::Imp2 => "Imp2",
            RuleName::Refl => "Refl",
            RuleName::Tran => "Tran",
            RuleName::Sym1 => "Sym1",
            RuleName::Sym2 => "Sym2",
            RuleName::PropMinus => "PropMinus",
            RuleName::PropTr => "PropTr",
            RuleName::PropSy => "PropSy",
        }
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleName {
    type Err = DerivationFormatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleName::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| DerivationFormatError::UnknownRule(s.to_string()))
    }
}

/// A rule together with the witnesses that pin down one instance of it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `Γ ∪ {φ} ⊢ φ`
    A { phi: Formula },
    /// From `Γ ⊢ φ` and `Γ ⊆ Δ`, `Δ ⊢ φ`.
    Mon,
    /// From `Γ ∪ {ψ} ⊢ φ` and `Δ ⊢ ψ`, `Γ ∪ Δ ⊢ φ`.
    Cut { gamma: Context, psi: Formula },
    /// `⊥ ⊢ φ`
    Bot { phi: Formula },
    /// `{φ, ψ} ⊢ φ ∧ ψ`
    AndI { phi: Formula, psi: Formula },
    /// `φ ∧ ψ ⊢ φ`
    AndEL { phi: Formula, psi: Formula },
    /// `φ ∧ ψ ⊢ ψ`
    AndER { phi: Formula, psi: Formula },
    /// `⊢ φ → φ`
    Imp0 { phi: Formula },
    /// From `Γ ⊢ φ`, `{ψ → χ | χ ∈ Γ} ⊢ ψ → φ`.
    Imp1 { psi: Formula },
    /// `{φ → ψ, ψ → χ} ⊢ φ → χ`
    Imp2 {
        phi: Formula,
        psi: Formula,
        chi: Formula,
    },
    /// `{φ, φ → ψ} ⊢ ψ`
    Refl { phi: Formula, psi: Formula },
    /// `φ → ψ ⊢ (⊥ → ⊥) → (φ → ψ)`
    Tran { phi: Formula, psi: Formula },
    /// From `Γ ∪ {ψ} ⊢ χ` and `Γ ∪ {(φ → ψ) → ⊥} ⊢ χ`, `Γ ∪ {φ} ⊢ χ`.
    Sym1 {
        gamma: Context,
        phi: Formula,
        psi: Formula,
    },
    /// `{α ∧ ψ → χ, α ∧ ((φ → ψ) → ⊥) → χ} ⊢ α ∧ φ → χ`
    Sym2 {
        alpha: Formula,
        phi: Formula,
        psi: Formula,
        chi: Formula,
    },
    /// `p ⊢ ((⊥ → ⊥) → ⊥) → p`
    PropMinus { p: Formula },
    /// `p ⊢ (⊥ → ⊥) → p`
    PropTr { p: Formula },
    /// `p ⊢ ((p → ⊥) → ⊥) → p`
    PropSy { p: Formula },
}

impl Rule {
    pub fn name(&self) -> RuleName {
        match self {
            Rule::A { .. } => RuleName::A,
            Rule::Mon => RuleName::Mon,
            Rule::Cut { .. } => RuleName::Cut,
            Rule::Bot { .. } => RuleName::Bot,
            Rule::AndI { .. } => RuleName::AndI,
            Rule::AndEL { .. } => RuleName::AndEL,
            Rule::AndER { .. } => RuleName::AndER,
            Rule::Imp0 { .. } => RuleName::Imp0,
            Rule::Imp1 { .. } => RuleName::Imp1,
            Rule::Imp2 { .. } => RuleName::Imp2,
            Rule::Refl { .. } => RuleName::Refl,
            Rule::Tran { .. } => RuleName::Tran,
            Rule::Sym1 { .. } => RuleName::Sym1,
            Rule::Sym2 { .. } => RuleName::Sym2,
            Rule::PropMinus { .. } => RuleName::PropMinus,
            Rule::PropTr { .. } => RuleName::PropTr,
            Rule::PropSy { .. } => RuleName::PropSy,
        }
    }

    /// The unique sequent of an axiom whose context is fixed by the
    /// witnesses. `None` for `A` (free context) and for the premise rules.
    pub fn axiom_instance(&self) -> Option<Sequent> {
        use Formula as F;
        let s = match self {
            Rule::Bot { phi } => Sequent::new([F::Bottom], phi.clone()),
            Rule::AndI { phi, psi } => {
                Sequent::new([phi.clone(), psi.clone()], F::and(phi.clone(), psi.clone()))
            }
            Rule::AndEL { phi, psi } => {
                Sequent::new([F::and(phi.clone(), psi.clone())], phi.clone())
            }
            Rule::AndER { phi, psi } => {
                Sequent::new([F::and(phi.clone(), psi.clone())], psi.clone())
            }
            Rule::Imp0 { phi } => Sequent::new([], F::imp(phi.clone(), phi.clone())),
            Rule::Imp2 { phi, psi, chi } => Sequent::new(
                [
                    F::imp(phi.clone(), psi.clone()),
                    F::imp(psi.clone(), chi.clone()),
                ],
                F::imp(phi.clone(), chi.clone()),
            ),
            Rule::Refl { phi, psi } => {
                Sequent::new([phi.clone(), F::imp(phi.clone(), psi.clone())], psi.clone())
            }
            Rule::Tran { phi, psi } => {
                let body = F::imp(phi.clone(), psi.clone());
                Sequent::new([body.clone()], F::imp(F::verum(), body))
            }
            Rule::Sym2 {
                alpha,
                phi,
                psi,
                chi,
            } => Sequent::new(
                [
                    F::imp(F::and(alpha.clone(), psi.clone()), chi.clone()),
                    F::imp(
                        F::and(alpha.clone(), F::neg(F::imp(phi.clone(), psi.clone()))),
                        chi.clone(),
                    ),
                ],
                F::imp(F::and(alpha.clone(), phi.clone()), chi.clone()),
            ),
            Rule::PropMinus { p } => {
                Sequent::new([p.clone()], F::imp(F::neg(F::verum()), p.clone()))
            }
            Rule::PropTr { p } => Sequent::new([p.clone()], F::imp(F::verum(), p.clone())),
            Rule::PropSy { p } => {
                Sequent::new([p.clone()], F::imp(F::neg(F::neg(p.clone())), p.clone()))
            }
            Rule::A { .. }
            | Rule::Mon
            | Rule::Cut { .. }
            | Rule::Imp1 { .. }
            | Rule::Sym1 { .. } => return None,
        };
        Some(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("{rule} takes {expected} premise(s), got {found}")]
    Arity {
        rule: RuleName,
        expected: usize,
        found: usize,
    },
    #[error("{rule}: {detail}")]
    Mismatch { rule: RuleName, detail: String },
}

fn mismatch(rule: RuleName, detail: impl Into<String>) -> StepError {
    StepError::Mismatch {
        rule,
        detail: detail.into(),
    }
}

fn with(ctx: &Context, extra: impl IntoIterator<Item = Formula>) -> Context {
    let mut out = ctx.clone();
    out.extend(extra);
    out
}

fn show_ctx(ctx: &Context) -> String {
    let items: Vec<String> = ctx.iter().map(|f| f.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn expect_seq(
    rule: RuleName,
    what: &str,
    found: &Sequent,
    expected: &Sequent,
) -> Result<(), StepError> {
    if found == expected {
        Ok(())
    } else {
        Err(mismatch(
            rule,
            format!("{what} must be `{expected}`, found `{found}`"),
        ))
    }
}

/// Checks one rule application: `premises` and `conclusion` must be an
/// instance of `rule`'s schema under its recorded witnesses.
pub fn check_step(
    conclusion: &Sequent,
    rule: &Rule,
    premises: &[Sequent],
) -> Result<(), StepError> {
    let name = rule.name();
    if premises.len() != name.arity() {
        return Err(StepError::Arity {
            rule: name,
            expected: name.arity(),
            found: premises.len(),
        });
    }
    match rule {
        Rule::PropMinus { p } | Rule::PropTr { p } | Rule::PropSy { p }
            if p.as_atom().is_none() =>
        {
            Err(mismatch(
                name,
                format!("witness `{p}` is not a propositional letter"),
            ))
        }
        Rule::A { phi } => {
            if &conclusion.goal != phi {
                return Err(mismatch(
                    name,
                    format!("goal must be `{phi}`, found `{}`", conclusion.goal),
                ));
            }
            if !conclusion.context.contains(phi) {
                return Err(mismatch(name, format!("`{phi}` is not in the context")));
            }
            Ok(())
        }
        Rule::Mon => {
            let prem = &premises[0];
            if prem.goal != conclusion.goal {
                return Err(mismatch(name, "premise and conclusion goals differ"));
            }
            if !prem.context.is_subset(&conclusion.context) {
                return Err(mismatch(
                    name,
                    format!(
                        "premise context {} is not a subset of {}",
                        show_ctx(&prem.context),
                        show_ctx(&conclusion.context)
                    ),
                ));
            }
            Ok(())
        }
        Rule::Cut { gamma, psi } => {
            let expected_major = Sequent {
                context: with(gamma, [psi.clone()]),
                goal: conclusion.goal.clone(),
            };
            expect_seq(name, "first premise", &premises[0], &expected_major)?;
            if &premises[1].goal != psi {
                return Err(mismatch(name, format!("second premise must prove `{psi}`")));
            }
            let ctx = with(gamma, premises[1].context.iter().cloned());
            if ctx != conclusion.context {
                return Err(mismatch(
                    name,
                    format!(
                        "conclusion context must be Γ ∪ Δ = {}, found {}",
                        show_ctx(&ctx),
                        show_ctx(&conclusion.context)
                    ),
                ));
            }
            Ok(())
        }
        Rule::Imp1 { psi } => {
            let prem = &premises[0];
            let expected = Sequent {
                context: prem
                    .context
                    .iter()
                    .map(|chi| Formula::imp(psi.clone(), chi.clone()))
                    .collect(),
                goal: Formula::imp(psi.clone(), prem.goal.clone()),
            };
            expect_seq(name, "conclusion", conclusion, &expected)
        }
        Rule::Sym1 { gamma, phi, psi } => {
            let chi = &conclusion.goal;
            let first = Sequent {
                context: with(gamma, [psi.clone()]),
                goal: chi.clone(),
            };
            let second = Sequent {
                context: with(
                    gamma,
                    [Formula::neg(Formula::imp(phi.clone(), psi.clone()))],
                ),
                goal: chi.clone(),
            };
            expect_seq(name, "first premise", &premises[0], &first)?;
            expect_seq(name, "second premise", &premises[1], &second)?;
            let ctx = with(gamma, [phi.clone()]);
            if ctx != conclusion.context {
                return Err(mismatch(
                    name,
                    format!(
                        "conclusion context must be Γ ∪ {{{phi}}} = {}, found {}",
                        show_ctx(&ctx),
                        show_ctx(&conclusion.context)
                    ),
                ));
            }
            Ok(())
        }
        _ => {
            let instance = rule
                .axiom_instance()
                .expect("remaining rules are fixed-context axioms");
            expect_seq(name, "axiom instance", conclusion, &instance)
        }
    }
}

/// The eight proof systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProofSystem {
    Kp,
    Tp,
    Bp,
    V,
    KB4p,
    I,
    O,
    C,
}

const BASE_RULES: [RuleName; 10] = [
    RuleName::A,
    RuleName::Mon,
    RuleName::Cut,
    RuleName::Bot,
    RuleName::AndI,
    RuleName::AndEL,
    RuleName::AndER,
    RuleName::Imp0,
    RuleName::Imp1,
    RuleName::Imp2,
];

impl ProofSystem {
    pub const ALL: [ProofSystem; 8] = [
        ProofSystem::Kp,
        ProofSystem::Tp,
        ProofSystem::Bp,
        ProofSystem::V,
        ProofSystem::KB4p,
        ProofSystem::I,
        ProofSystem::O,
        ProofSystem::C,
    ];

    fn extra_rules(self) -> &'static [RuleName] {
        use RuleName::*;
        match self {
            ProofSystem::Kp => &[PropMinus],
            ProofSystem::Tp => &[Refl, PropMinus],
            ProofSystem::Bp => &[Sym1, Sym2, PropSy],
            ProofSystem::V => &[Tran, PropTr],
            ProofSystem::KB4p => &[Tran, Sym1, Sym2, PropTr],
            ProofSystem::I => &[Refl, Tran, PropTr],
            ProofSystem::O => &[Refl, Sym1, Sym2, PropSy],
            ProofSystem::C => &[Refl, Tran, Sym1, Sym2, PropTr],
        }
    }

    pub fn allowed(self) -> BTreeSet<RuleName> {
        BASE_RULES
            .iter()
            .chain(self.extra_rules())
            .copied()
            .collect()
    }

    pub fn allows(self, rule: RuleName) -> bool {
        BASE_RULES.contains(&rule) || self.extra_rules().contains(&rule)
    }

    /// The class of interpretations this system is sound for.
    pub fn class(self) -> ModelClass {
        match self {
            ProofSystem::Kp => ModelClass::Kp,
            ProofSystem::Tp => ModelClass::Tp,
            ProofSystem::Bp => ModelClass::Bp,
            ProofSystem::V => ModelClass::V,
            ProofSystem::KB4p => ModelClass::KB4p,
            ProofSystem::I => ModelClass::I,
            ProofSystem::O => ModelClass::O,
            ProofSystem::C => ModelClass::C,
        }
    }

    pub fn tag(self) -> &'static str {
        self.class().tag()
    }
}

impl fmt::Display for ProofSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ProofSystem {
    type Err = DerivationFormatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ProofSystem::ALL
            .into_iter()
            .find(|sys| sys.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| DerivationFormatError::UnknownSystem(s.to_string()))
    }
}

/// A derivation tree. Premises are ordered as in the rule's schema.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Derivation {
    pub conclusion: Sequent,
    pub rule: Rule,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    /// An axiom node whose context is fixed by the rule (everything except
    /// `A`, `Mon`, `Cut`, `Imp1`, `Sym1`).
    pub fn axiom(rule: Rule) -> Self {
        let conclusion = rule
            .axiom_instance()
            .unwrap_or_else(|| panic!("{} is not a fixed-context axiom", rule.name()));
        Derivation {
            conclusion,
            rule,
            premises: Vec::new(),
        }
    }

    pub fn assumption(context: Context, phi: Formula) -> Self {
        Derivation {
            conclusion: Sequent {
                context,
                goal: phi.clone(),
            },
            rule: Rule::A { phi },
            premises: Vec::new(),
        }
    }

    /// Weakens to `context`; returns `premise` unchanged when nothing is added.
    pub fn weaken(premise: Derivation, context: Context) -> Self {
        if premise.conclusion.context == context {
            return premise;
        }
        Derivation {
            conclusion: Sequent {
                context,
                goal: premise.conclusion.goal.clone(),
            },
            rule: Rule::Mon,
            premises: vec![premise],
        }
    }

    pub fn cut(gamma: Context, psi: Formula, major: Derivation, minor: Derivation) -> Self {
        let context = with(&gamma, minor.conclusion.context.iter().cloned());
        Derivation {
            conclusion: Sequent {
                context,
                goal: major.conclusion.goal.clone(),
            },
            rule: Rule::Cut { gamma, psi },
            premises: vec![major, minor],
        }
    }

    pub fn imp1(psi: Formula, premise: Derivation) -> Self {
        let conclusion = Sequent {
            context: premise
                .conclusion
                .context
                .iter()
                .map(|chi| Formula::imp(psi.clone(), chi.clone()))
                .collect(),
            goal: Formula::imp(psi.clone(), premise.conclusion.goal.clone()),
        };
        Derivation {
            conclusion,
            rule: Rule::Imp1 { psi },
            premises: vec![premise],
        }
    }

    pub fn sym1(
        gamma: Context,
        phi: Formula,
        psi: Formula,
        first: Derivation,
        second: Derivation,
    ) -> Self {
        let conclusion = Sequent {
            context: with(&gamma, [phi.clone()]),
            goal: first.conclusion.goal.clone(),
        };
        Derivation {
            conclusion,
            rule: Rule::Sym1 { gamma, phi, psi },
            premises: vec![first, second],
        }
    }

    /// Number of nodes on the longest root-to-leaf path.
    pub fn height(&self) -> usize {
        1 + self
            .premises
            .iter()
            .map(Derivation::height)
            .max()
            .unwrap_or(0)
    }

    pub fn node_count(&self) -> usize {
        1 + self
            .premises
            .iter()
            .map(Derivation::node_count)
            .sum::<usize>()
    }

    pub fn rules_used(&self) -> BTreeSet<RuleName> {
        let mut out = BTreeSet::new();
        self.visit(&mut |d| {
            out.insert(d.rule.name());
        });
        out
    }

    fn visit(&self, f: &mut impl FnMut(&Derivation)) {
        f(self);
        for p in &self.premises {
            p.visit(f);
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self, DerivationFormatError> {
        let raw: DerivationJson =
            serde_json::from_str(text).map_err(|e| DerivationFormatError::Json(e.to_string()))?;
        Derivation::try_from(&raw)
    }

    pub fn to_json(&self) -> DerivationJson {
        DerivationJson::from(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckErrorKind {
    #[error("rule {rule} is not part of system {system}")]
    RuleNotInSystem { rule: RuleName, system: ProofSystem },
    #[error(transparent)]
    Step(#[from] StepError),
}

/// The first failing node in preorder. `path` lists premise indices from
/// the root.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at node {path:?}: {kind}")]
pub struct CheckError {
    pub path: Vec<usize>,
    pub kind: CheckErrorKind,
}

/// Checks every node of `d` against `system`.
pub fn check_derivation(d: &Derivation, system: ProofSystem) -> Result<(), CheckError> {
    let mut path = Vec::new();
    check_node(d, system, &mut path)
}

fn check_node(
    d: &Derivation,
    system: ProofSystem,
    path: &mut Vec<usize>,
) -> Result<(), CheckError> {
    let name = d.rule.name();
    if !system.allows(name) {
        return Err(CheckError {
            path: path.clone(),
            kind: CheckErrorKind::RuleNotInSystem { rule: name, system },
        });
    }
    let premises: Vec<Sequent> = d.premises.iter().map(|p| p.conclusion.clone()).collect();
    check_step(&d.conclusion, &d.rule, &premises).map_err(|e| CheckError {
        path: path.clone(),
        kind: e.into(),
    })?;
    for (i, p) in d.premises.iter().enumerate() {
        path.push(i);
        check_node(p, system, path)?;
        path.pop();
    }
    Ok(())
}

/// Derived rules with a fixed expansion into primitive steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DerivedRule {
    /// From a derivation of `φ ⊢ ψ`, derive `⊢ φ → ψ`.
    Dt0 { premise: Box<Derivation> },
    /// `{φ1, …, φn} ⊢ φ1 ∧ … ∧ φn`
    FinAndI { items: Vec<Formula> },
    /// `φ1 ∧ … ∧ φn ⊢ φi`, with `index` counted from 1.
    FinAndE { items: Vec<Formula>, index: usize },
    /// `{α → φ1, …, α → φn} ⊢ α → (φ1 ∧ … ∧ φn)`
    ImpFinAndI { alpha: Formula, items: Vec<Formula> },
    /// `α → (φ1 ∧ … ∧ φn) ⊢ α → φi`, with `index` counted from 1.
    ImpFinAndE {
        alpha: Formula,
        items: Vec<Formula>,
        index: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeriveError {
    #[error("derived conjunction rules need at least 2 formulas, got {0}")]
    TooFewItems(usize),
    #[error("index {index} outside 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("DT0 needs a premise of the form `φ ⊢ ψ`, got `{0}`")]
    PremiseShape(Sequent),
}

/// Expands a derived rule into a derivation using only `A`, `Cut`, `∧I`,
/// `∧E`, `→0` and `→1`. The `Dt0` result checks in a system exactly when
/// the supplied premise does.
pub fn expand_derived(rule: &DerivedRule) -> Result<Derivation, DeriveError> {
    match rule {
        DerivedRule::Dt0 { premise } => {
            let seq = &premise.conclusion;
            if seq.context.len() != 1 {
                return Err(DeriveError::PremiseShape(seq.clone()));
            }
            let phi = seq.context.first().expect("one element").clone();
            let self_imp = Formula::imp(phi.clone(), phi.clone());
            // φ→φ ⊢ φ→ψ, then cut against ⊢ φ→φ.
            let lifted = Derivation::imp1(phi.clone(), (**premise).clone());
            let refl = Derivation::axiom(Rule::Imp0 { phi });
            Ok(Derivation::cut(Context::new(), self_imp, lifted, refl))
        }
        DerivedRule::FinAndI { items } => {
            check_items(items)?;
            Ok(fin_and_intro(items))
        }
        DerivedRule::FinAndE { items, index } => {
            check_items(items)?;
            check_index(items, *index)?;
            Ok(fin_and_elim(items, *index))
        }
        DerivedRule::ImpFinAndI { alpha, items } => {
            check_items(items)?;
            Ok(Derivation::imp1(alpha.clone(), fin_and_intro(items)))
        }
        DerivedRule::ImpFinAndE {
            alpha,
            items,
            index,
        } => {
            check_items(items)?;
            check_index(items, *index)?;
            Ok(Derivation::imp1(alpha.clone(), fin_and_elim(items, *index)))
        }
    }
}

fn check_items(items: &[Formula]) -> Result<(), DeriveError> {
    if items.len() < 2 {
        return Err(DeriveError::TooFewItems(items.len()));
    }
    Ok(())
}

fn check_index(items: &[Formula], index: usize) -> Result<(), DeriveError> {
    if index == 0 || index > items.len() {
        return Err(DeriveError::IndexOutOfRange {
            index,
            len: items.len(),
        });
    }
    Ok(())
}

fn fin_and_intro(items: &[Formula]) -> Derivation {
    let n = items.len();
    if n == 2 {
        return Derivation::axiom(Rule::AndI {
            phi: items[0].clone(),
            psi: items[1].clone(),
        });
    }
    let head = Formula::conj_all(&items[..n - 1]);
    let last = items[n - 1].clone();
    let inner = fin_and_intro(&items[..n - 1]);
    let step = Derivation::axiom(Rule::AndI {
        phi: head.clone(),
        psi: last.clone(),
    });
    Derivation::cut(Context::from([last]), head, step, inner)
}

fn fin_and_elim(items: &[Formula], index: usize) -> Derivation {
    let n = items.len();
    let head = Formula::conj_all(&items[..n - 1]);
    let last = items[n - 1].clone();
    if index == n {
        return Derivation::axiom(Rule::AndER {
            phi: head,
            psi: last,
        });
    }
    if n == 2 {
        return Derivation::axiom(Rule::AndEL {
            phi: head,
            psi: last,
        });
    }
    let inner = fin_and_elim(&items[..n - 1], index);
    let step = Derivation::axiom(Rule::AndEL {
        phi: head.clone(),
        psi: last,
    });
    Derivation::cut(Context::new(), head, inner, step)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationFormatError {
    #[error("malformed derivation file: {0}")]
    Json(String),
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("unknown proof system `{0}` (expected kp, tp, bp, v, kb4p, i, o or c)")]
    UnknownSystem(String),
    #[error("rule {rule} needs parameter `{param}`")]
    MissingParam { rule: RuleName, param: &'static str },
    #[error("rule {rule} expects {expected} premise(s), file has {found}")]
    Arity {
        rule: RuleName,
        expected: usize,
        found: usize,
    },
    #[error("bad formula `{text}`: {source}")]
    Formula { text: String, source: ParseError },
}

/// On-disk derivation format. Formulas are strings in the concrete syntax.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationJson {
    pub rule: String,
    pub conclusion: SequentJson,
    #[serde(default)]
    pub params: ParamsJson,
    #[serde(default)]
    pub premises: Vec<DerivationJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequentJson {
    #[serde(default)]
    pub ctx: Vec<String>,
    pub goal: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<String>,
}

fn formula_of(text: &str) -> Result<Formula, DerivationFormatError> {
    parse(text).map_err(|source| DerivationFormatError::Formula {
        text: text.to_string(),
        source,
    })
}

fn context_of(items: &[String]) -> Result<Context, DerivationFormatError> {
    items.iter().map(|s| formula_of(s)).collect()
}

impl TryFrom<&DerivationJson> for Derivation {
    type Error = DerivationFormatError;

    fn try_from(raw: &DerivationJson) -> Result<Self, Self::Error> {
        let name: RuleName = raw.rule.parse()?;
        let params = &raw.params;
        let f = |value: &Option<String>,
                 param: &'static str|
         -> Result<Formula, DerivationFormatError> {
            let text = value
                .as_deref()
                .ok_or(DerivationFormatError::MissingParam { rule: name, param })?;
            formula_of(text)
        };
        let gamma = || -> Result<Context, DerivationFormatError> {
            let items = params
                .gamma
                .as_deref()
                .ok_or(DerivationFormatError::MissingParam {
                    rule: name,
                    param: "gamma",
                })?;
            context_of(items)
        };
        let rule = match name {
            RuleName::A => Rule::A {
                phi: f(&params.phi, "phi")?,
            },
            RuleName::Mon => Rule::Mon,
            RuleName::Cut => Rule::Cut {
                gamma: gamma()?,
                psi: f(&params.psi, "psi")?,
            },
            RuleName::Bot => Rule::Bot {
                phi: f(&params.phi, "phi")?,
            },
            RuleName::AndI => Rule::AndI {
                phi: f(&params.phi, "phi")?,
                psi: f(&params.psi, "psi")?,
            },
            RuleName::AndEL => Rule::AndEL {
                phi: f(&params.phi, "phi")?,
                psi: f(&params.psi, "psi")?,
            },
            RuleName::AndER => Rule::AndER {
                phi: f(&params.phi, "phi")?,
                psi: f(&params.psi, "psi")?,
            },
            RuleName::Imp0 => Rule::Imp0 {
                phi: f(&params.phi, "phi")?,
            },
            RuleName::Imp1 => Rule::Imp1 {
                psi: f(&params.psi, "psi")?,
            },
            RuleName::Imp2 => Rule::Imp2 {
                phi: f(&params.phi, "phi")?,
                psi: f(&params.psi, "psi")?,
                chi: f(&params.chi, "chi")?,
            },
            RuleName::Refl => Rule::Refl {
                phi: f(&params.phi, "phi")?,
                psi: f(&params.psi, "psi")?,
            },
            RuleName::Tran => Rule::Tran {
                phi: f(&params.phi, "phi")?,
                psi: f(&params.psi, "psi")?,
            },
            RuleName::Sym1 => Rule::Sym1 {
                gamma: gamma()?,
                phi: f(&params.phi, "phi")?,
                psi: f(&params.psi, "psi")?,
            },
            RuleName::Sym2 => Rule::Sym2 {
                alpha: f(&params.alpha, "alpha")?,
                phi: f(&params.phi, "phi")?,
                psi: f(&params.psi, "psi")?,
                chi: f(&params.chi, "chi")?,
            },
            RuleName::PropMinus => Rule::PropMinus {
                p: f(&params.p, "p")?,
            },
            RuleName::PropTr => Rule::PropTr {
                p: f(&params.p, "p")?,
            },
            RuleName::PropSy => Rule::PropSy {
                p: f(&params.p, "p")?,
            },
        };
        if raw.premises.len() != name.arity() {
            return Err(DerivationFormatError::Arity {
                rule: name,
                expected: name.arity(),
                found: raw.premises.len(),
            });
        }
        let conclusion = Sequent {
            context: context_of(&raw.conclusion.ctx)?,
            goal: formula_of(&raw.conclusion.goal)?,
        };
        let premises = raw
            .premises
            .iter()
            .map(Derivation::try_from)
            .collect::<Result<_, _>>()?;
        Ok(Derivation {
            conclusion,
            rule,
            premises,
        })
    }
}

impl From<&Derivation> for DerivationJson {
    fn from(d: &Derivation) -> Self {
        let s = |f: &Formula| Some(f.to_string());
        let ctx = |c: &Context| c.iter().map(|f| f.to_string()).collect::<Vec<_>>();
        let mut params = ParamsJson::default();
        match &d.rule {
            Rule::A { phi } | Rule::Bot { phi } | Rule::Imp0 { phi } => params.phi = s(phi),
            Rule::Mon => {}
            Rule::Cut { gamma, psi } => {
                params.gamma = Some(ctx(gamma));
                params.psi = s(psi);
            }
            Rule::AndI { phi, psi }
            | Rule::AndEL { phi, psi }
            | Rule::AndER { phi, psi }
            | Rule::Refl { phi, psi }
            | Rule::Tran { phi, psi } => {
                params.phi = s(phi);
                params.psi = s(psi);
            }
            Rule::Imp1 { psi } => params.psi = s(psi),
            Rule::Imp2 { phi, psi, chi } => {
                params.phi = s(phi);
                params.psi = s(psi);
                params.chi = s(chi);
            }
            Rule::Sym1 { gamma, phi, psi } => {
                params.gamma = Some(ctx(gamma));
                params.phi = s(phi);
                params.psi = s(psi);
            }
            Rule::Sym2 {
                alpha,
                phi,
                psi,
                chi,
            } => {
                params.alpha = s(alpha);
                params.phi = s(phi);
                params.psi = s(psi);
                params.chi = s(chi);
            }
            Rule::PropMinus { p } | Rule::PropTr { p } | Rule::PropSy { p } => params.p = s(p),
        }
        DerivationJson {
            rule: d.rule.name().as_str().to_string(),
            conclusion: SequentJson {
                ctx: ctx(&d.conclusion.context),
                goal: d.conclusion.goal.to_string(),
            },
            params,
            premises: d.premises.iter().map(DerivationJson::from).collect(),
        }
    }
}
