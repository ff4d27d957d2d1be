//! Bounded backward proof search.
//!
//! Iterative deepening on derivation height (an axiom leaf has height 1).
//! At each sequent the search tries, in order: axioms (weakened with `Mon`
//! where needed), conjunction introduction, forward conjunction
//! elimination, implication introduction through `Imp1`, forward cuts on
//! one-step axiom consequences, `Sym1`, and finally cuts on pool formulas.
//! The pool is the subformulas of the input sequent plus their `→⊥`
//! wrappings, bounded by `formula_size_cap`.
//!
//! Failing to find a derivation says nothing about derivability.

use std::collections::{BTreeSet, HashMap};

use crate::formula::Formula;
use crate::sequents::{
    check_derivation, Context, Derivation, ProofSystem, Rule, RuleName, Sequent,
};

pub const DEFAULT_FORMULA_SIZE_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub system: ProofSystem,
    /// Maximum derivation height.
    pub max_depth: usize,
    /// Largest formula the search may introduce by a cut or `Sym1`.
    pub formula_size_cap: usize,
}

impl SearchConfig {
    pub fn new(system: ProofSystem, max_depth: usize) -> Self {
        SearchConfig {
            system,
            max_depth,
            formula_size_cap: DEFAULT_FORMULA_SIZE_CAP,
        }
    }
}

/// Returns a derivation of exactly `s` in `cfg.system` of height at most
/// `cfg.max_depth`, or `None` if none was found.
pub fn prove(s: &Sequent, cfg: &SearchConfig) -> Option<Derivation> {
    let mut search = Search::new(s, cfg);
    for budget in 1..=cfg.max_depth {
        if let Some(d) = search.find(s, budget) {
            debug_assert_eq!(&d.conclusion, s);
            debug_assert!(
                check_derivation(&d, cfg.system).is_ok(),
                "search built an invalid step"
            );
            return Some(d);
        }
    }
    None
}

struct Search {
    system: ProofSystem,
    size_cap: usize,
    pool: Vec<Formula>,
    // Largest budget each sequent is known to fail at.
    failed: HashMap<Sequent, usize>,
    proved: HashMap<Sequent, (Derivation, usize)>,
}

impl Search {
    fn new(s: &Sequent, cfg: &SearchConfig) -> Self {
        let mut subs = BTreeSet::new();
        for f in s.context.iter().chain(std::iter::once(&s.goal)) {
            f.collect_subformulas(&mut subs);
        }
        let mut pool: BTreeSet<Formula> = subs
            .iter()
            .filter(|f| f.size() <= cfg.formula_size_cap)
            .cloned()
            .collect();
        for f in &subs {
            let wrapped = Formula::neg(f.clone());
            if wrapped.size() <= cfg.formula_size_cap {
                pool.insert(wrapped);
            }
        }
        let mut pool: Vec<Formula> = pool.into_iter().collect();
        // smaller cut formulas first
        pool.sort_by_key(|f| (f.size(), f.clone()));
        Search {
            system: cfg.system,
            size_cap: cfg.formula_size_cap,
            pool,
            failed: HashMap::new(),
            proved: HashMap::new(),
        }
    }

    fn allows(&self, rule: RuleName) -> bool {
        self.system.allows(rule)
    }

    fn find(&mut self, s: &Sequent, budget: usize) -> Option<Derivation> {
        if budget == 0 {
            return None;
        }
        if let Some((d, h)) = self.proved.get(s) {
            if *h <= budget {
                return Some(d.clone());
            }
        }
        if self.failed.get(s).is_some_and(|&b| b >= budget) {
            return None;
        }
        let found = self.attempt(s, budget);
        match &found {
            Some(d) => {
                self.proved.insert(s.clone(), (d.clone(), d.height()));
            }
            None => {
                let entry = self.failed.entry(s.clone()).or_insert(0);
                *entry = (*entry).max(budget);
            }
        }
        found
    }

    fn attempt(&mut self, s: &Sequent, budget: usize) -> Option<Derivation> {
        if let Some(d) = self.axiom(s, budget) {
            return Some(d);
        }
        if budget == 1 {
            return None;
        }
        self.and_intro(s, budget)
            .or_else(|| self.and_elim_forward(s, budget))
            .or_else(|| self.imp_intro(s, budget))
            .or_else(|| self.axiom_forward(s, budget))
            .or_else(|| self.sym1(s, budget))
            .or_else(|| self.pool_cut(s, budget))
    }

    /// Axiom instances whose conclusion has goal `s.goal` and context inside
    /// `s.context`.
    fn axiom_candidates(&self, s: &Sequent) -> Vec<Rule> {
        let goal = &s.goal;
        let ctx = &s.context;
        let mut out = Vec::new();
        if ctx.contains(&Formula::Bottom) {
            out.push(Rule::Bot { phi: goal.clone() });
        }
        if let Some((l, r)) = goal.as_and() {
            out.push(Rule::AndI {
                phi: l.clone(),
                psi: r.clone(),
            });
        }
        for f in ctx {
            if let Some((l, r)) = f.as_and() {
                if l == goal {
                    out.push(Rule::AndEL {
                        phi: l.clone(),
                        psi: r.clone(),
                    });
                }
                if r == goal {
                    out.push(Rule::AndER {
                        phi: l.clone(),
                        psi: r.clone(),
                    });
                }
            }
            if let Some((l, r)) = f.as_imp() {
                if r == goal {
                    out.push(Rule::Refl {
                        phi: l.clone(),
                        psi: r.clone(),
                    });
                }
            }
        }
        if let Some((ante, cons)) = goal.as_imp() {
            if ante == cons {
                out.push(Rule::Imp0 { phi: ante.clone() });
            }
            for f in ctx {
                if let Some((l, mid)) = f.as_imp() {
                    if l == ante {
                        out.push(Rule::Imp2 {
                            phi: ante.clone(),
                            psi: mid.clone(),
                            chi: cons.clone(),
                        });
                    }
                }
            }
            if *ante == Formula::verum() {
                if let Some((l, r)) = cons.as_imp() {
                    out.push(Rule::Tran {
                        phi: l.clone(),
                        psi: r.clone(),
                    });
                }
            }
            if let Some((alpha, phi)) = ante.as_and() {
                for f in ctx {
                    let shape = f
                        .as_imp()
                        .filter(|(_, chi)| *chi == cons)
                        .and_then(|(l, _)| l.as_and())
                        .filter(|(a, _)| *a == alpha)
                        .and_then(|(_, n)| n.as_imp())
                        .filter(|(_, bot)| **bot == Formula::Bottom)
                        .and_then(|(inner, _)| inner.as_imp())
                        .filter(|(p, _)| *p == phi);
                    if let Some((_, psi)) = shape {
                        out.push(Rule::Sym2 {
                            alpha: alpha.clone(),
                            phi: phi.clone(),
                            psi: psi.clone(),
                            chi: cons.clone(),
                        });
                    }
                }
            }
            if cons.as_atom().is_some() {
                let p = cons.clone();
                if *ante == Formula::neg(Formula::verum()) {
                    out.push(Rule::PropMinus { p: p.clone() });
                }
                if *ante == Formula::verum() {
                    out.push(Rule::PropTr { p: p.clone() });
                }
                if *ante == Formula::neg(Formula::neg(p.clone())) {
                    out.push(Rule::PropSy { p });
                }
            }
        }
        out
    }

    fn axiom(&self, s: &Sequent, budget: usize) -> Option<Derivation> {
        if s.context.contains(&s.goal) {
            return Some(Derivation::assumption(s.context.clone(), s.goal.clone()));
        }
        for rule in self.axiom_candidates(s) {
            if !self.allows(rule.name()) {
                continue;
            }
            let inst = rule
                .axiom_instance()
                .expect("candidates are fixed-context axioms");
            if inst.goal != s.goal || !inst.context.is_subset(&s.context) {
                continue;
            }
            let needs_mon = inst.context != s.context;
            if needs_mon && budget < 2 {
                continue;
            }
            return Some(Derivation::weaken(
                Derivation::axiom(rule),
                s.context.clone(),
            ));
        }
        None
    }

    /// `Γ ⊢ φ ∧ ψ` from `Γ ⊢ φ` and `Γ ⊢ ψ`: weaken the `∧I` axiom to
    /// `Γ ∪ {φ, ψ}` and cut away each conjunct that is not already in `Γ`.
    fn and_intro(&mut self, s: &Sequent, budget: usize) -> Option<Derivation> {
        let (l, r) = s.goal.as_and()?;
        let mut missing: Vec<Formula> = [l, r]
            .into_iter()
            .filter(|c| !s.context.contains(*c))
            .cloned()
            .collect();
        missing.dedup();
        let mut wide = s.context.clone();
        wide.insert(l.clone());
        wide.insert(r.clone());
        let top = Derivation::weaken(
            Derivation::axiom(Rule::AndI {
                phi: l.clone(),
                psi: r.clone(),
            }),
            wide,
        );
        let orders: Vec<Vec<Formula>> = match missing.len() {
            0 => return None, // the axiom step already covers this
            1 => vec![missing.clone()],
            _ => vec![
                missing.clone(),
                vec![missing[1].clone(), missing[0].clone()],
            ],
        };
        'order: for order in orders {
            // cuts nest with the first component innermost
            let mut tree = top.clone();
            let n = order.len();
            for (i, c) in order.iter().enumerate() {
                let room = budget - (n - i);
                if tree.height() > room {
                    continue 'order;
                }
                let minor = match self.find(
                    &Sequent {
                        context: s.context.clone(),
                        goal: c.clone(),
                    },
                    room,
                ) {
                    Some(d) => d,
                    None => continue 'order,
                };
                let mut gamma = tree.conclusion.context.clone();
                gamma.remove(c);
                tree = Derivation::cut(gamma, c.clone(), tree, minor);
            }
            if tree.height() <= budget {
                return Some(tree);
            }
        }
        None
    }

    /// Cut in a conjunct of a context conjunction via `∧E`.
    fn and_elim_forward(&mut self, s: &Sequent, budget: usize) -> Option<Derivation> {
        let conjunctions: Vec<(Formula, Formula)> = s
            .context
            .iter()
            .filter_map(|f| f.as_and().map(|(l, r)| (l.clone(), r.clone())))
            .collect();
        for (l, r) in conjunctions {
            for left in [true, false] {
                let part = if left { &l } else { &r };
                if s.context.contains(part) {
                    continue;
                }
                let rule = if left {
                    Rule::AndEL {
                        phi: l.clone(),
                        psi: r.clone(),
                    }
                } else {
                    Rule::AndER {
                        phi: l.clone(),
                        psi: r.clone(),
                    }
                };
                if let Some(d) = self.cut_in(s, part.clone(), Derivation::axiom(rule), budget) {
                    return Some(d);
                }
            }
        }
        None
    }

    /// From `Γ ∪ {ψ} ⊢ goal` (searched) and a ready derivation of `Δ ⊢ ψ`
    /// with `Δ ⊆ Γ`, conclude `Γ ⊢ goal`.
    fn cut_in(
        &mut self,
        s: &Sequent,
        psi: Formula,
        minor: Derivation,
        budget: usize,
    ) -> Option<Derivation> {
        debug_assert!(minor.conclusion.context.is_subset(&s.context));
        if minor.height() >= budget {
            return None;
        }
        let mut wider = s.context.clone();
        wider.insert(psi.clone());
        let major = self.find(
            &Sequent {
                context: wider,
                goal: s.goal.clone(),
            },
            budget - 1,
        )?;
        Some(Derivation::cut(s.context.clone(), psi, major, minor))
    }

    /// `Γ ⊢ ψ → φ` via `Imp1` from `S ⊢ φ`, where `S = {χ | ψ → χ ∈ Γ}`,
    /// or from `S ∪ {ψ} ⊢ φ` followed by a cut against `⊢ ψ → ψ`.
    fn imp_intro(&mut self, s: &Sequent, budget: usize) -> Option<Derivation> {
        let (psi, phi) = s.goal.as_imp()?;
        let (psi, phi) = (psi.clone(), phi.clone());
        let inner: Context = s
            .context
            .iter()
            .filter_map(|f| {
                f.as_imp()
                    .filter(|(l, _)| **l == psi)
                    .map(|(_, r)| r.clone())
            })
            .collect();
        let lifted: Context = inner
            .iter()
            .map(|c| Formula::imp(psi.clone(), c.clone()))
            .collect();
        let mon = usize::from(lifted != s.context);

        if budget > 1 + mon {
            let premise = Sequent {
                context: inner.clone(),
                goal: phi.clone(),
            };
            if let Some(d) = self.find(&premise, budget - 1 - mon) {
                return Some(Derivation::weaken(
                    Derivation::imp1(psi, d),
                    s.context.clone(),
                ));
            }
        }

        let self_imp = Formula::imp(psi.clone(), psi.clone());
        if inner.contains(&psi) || budget <= 2 + mon {
            return None;
        }
        let mut augmented = inner;
        augmented.insert(psi.clone());
        let premise = Sequent {
            context: augmented,
            goal: phi,
        };
        let d = self.find(&premise, budget - 2 - mon)?;
        let major = Derivation::imp1(psi.clone(), d);
        let cut = Derivation::cut(
            lifted,
            self_imp,
            major,
            Derivation::axiom(Rule::Imp0 { phi: psi }),
        );
        Some(Derivation::weaken(cut, s.context.clone()))
    }

    /// Cut in a new formula that a single axiom derives from part of `Γ`.
    fn axiom_forward(&mut self, s: &Sequent, budget: usize) -> Option<Derivation> {
        let mut rules = Vec::new();
        let verum = Formula::verum();
        for f in &s.context {
            if let Some((l, r)) = f.as_imp() {
                if s.context.contains(l) {
                    rules.push(Rule::Refl {
                        phi: l.clone(),
                        psi: r.clone(),
                    });
                }
                for g in &s.context {
                    if let Some((gl, gr)) = g.as_imp() {
                        if gl == r {
                            rules.push(Rule::Imp2 {
                                phi: l.clone(),
                                psi: r.clone(),
                                chi: gr.clone(),
                            });
                        }
                    }
                }
                if *l != verum {
                    rules.push(Rule::Tran {
                        phi: l.clone(),
                        psi: r.clone(),
                    });
                }
            }
            if f.as_atom().is_some() {
                rules.push(Rule::PropMinus { p: f.clone() });
                rules.push(Rule::PropTr { p: f.clone() });
                rules.push(Rule::PropSy { p: f.clone() });
            }
        }
        for rule in rules {
            if !self.allows(rule.name()) {
                continue;
            }
            let inst = rule.axiom_instance().expect("fixed-context axiom");
            if s.context.contains(&inst.goal) || inst.goal.size() > self.size_cap {
                continue;
            }
            if let Some(d) = self.cut_in(s, inst.goal.clone(), Derivation::axiom(rule), budget) {
                return Some(d);
            }
        }
        None
    }

    /// `Γ ⊢ χ` with `φ ∈ Γ` from `Γ ∪ {ψ} ⊢ χ` and `Γ ∪ {(φ → ψ) → ⊥} ⊢ χ`.
    fn sym1(&mut self, s: &Sequent, budget: usize) -> Option<Derivation> {
        if !self.allows(RuleName::Sym1) {
            return None;
        }
        let phis: Vec<Formula> = s.context.iter().cloned().collect();
        let pool = self.pool.clone();
        for phi in &phis {
            for psi in &pool {
                if s.context.contains(psi) {
                    continue;
                }
                let refuted = Formula::neg(Formula::imp(phi.clone(), psi.clone()));
                if refuted.size() > self.size_cap || s.context.contains(&refuted) {
                    continue;
                }
                let mut with_psi = s.context.clone();
                with_psi.insert(psi.clone());
                let first = match self.find(
                    &Sequent {
                        context: with_psi,
                        goal: s.goal.clone(),
                    },
                    budget - 1,
                ) {
                    Some(d) => d,
                    None => continue,
                };
                let mut with_refuted = s.context.clone();
                with_refuted.insert(refuted);
                let second = match self.find(
                    &Sequent {
                        context: with_refuted,
                        goal: s.goal.clone(),
                    },
                    budget - 1,
                ) {
                    Some(d) => d,
                    None => continue,
                };
                return Some(Derivation::sym1(
                    s.context.clone(),
                    phi.clone(),
                    psi.clone(),
                    first,
                    second,
                ));
            }
        }
        None
    }

    /// `Γ ⊢ φ` from `Γ ∪ {ψ} ⊢ φ` and `Γ ⊢ ψ` for pool formulas `ψ`.
    fn pool_cut(&mut self, s: &Sequent, budget: usize) -> Option<Derivation> {
        let pool = self.pool.clone();
        for psi in &pool {
            if s.context.contains(psi) || *psi == s.goal {
                continue;
            }
            let lemma = Sequent {
                context: s.context.clone(),
                goal: psi.clone(),
            };
            let minor = match self.find(&lemma, budget - 1) {
                Some(d) => d,
                None => continue,
            };
            if let Some(d) = self.cut_in(s, psi.clone(), minor, budget) {
                return Some(d);
            }
        }
        None
    }
}
