//! Exhaustive and seeded checks, each returning how many instances were
//! examined and a description of every failure.

use super::gen;
use super::oracle::{self, NaiveModel};
use rand::Rng;
use relsem::classes::{class_member, enumerate_class};
use relsem::consequence::sequent_valid_in_model;
use relsem::kripke::WorldSet;
use relsem::unravel::{unravel, UnravelledModel};
use relsem::{Formula, Frame, FrameCondition, Model, ModelClass, PointedModel};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Default)]
pub struct Report {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Report {
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

pub fn all_frames(max_n: usize) -> impl Iterator<Item = Frame> {
    (1..=max_n).flat_map(|n| (0..1u64 << (n * n)).map(move |m| Frame::from_relation_mask(n, m)))
}

fn subsets(n: usize) -> Vec<WorldSet> {
    (0..1u64 << n).map(|m| WorldSet::from_mask(n, m)).collect()
}

/// Image/box interaction with intersection, monotonicity, adjunction, and
/// the diamond as inverse image; also each operator against its pointwise
/// definition.
pub fn operator_laws(max_n: usize) -> Report {
    let mut rep = Report::default();
    for fr in all_frames(max_n) {
        let n = fr.size();
        let r = oracle::rel_of(&fr);
        let sets = subsets(n);
        let image: Vec<WorldSet> = sets.iter().map(|x| fr.r_image(x).unwrap()).collect();
        let boxed: Vec<WorldSet> = sets.iter().map(|x| fr.r_box(x).unwrap()).collect();
        for (i, x) in sets.iter().enumerate() {
            let xs = oracle::set_of(x);
            rep.check(oracle::set_of(&image[i]) == oracle::image(&r, &xs), || {
                format!("image {fr:?} {x}")
            });
            rep.check(oracle::set_of(&boxed[i]) == oracle::boxed(&r, &xs), || {
                format!("box {fr:?} {x}")
            });
            let inverse: Vec<bool> = (0..n).map(|s| (0..n).any(|t| xs[t] && r[s][t])).collect();
            rep.check(oracle::set_of(&fr.r_diamond(x).unwrap()) == inverse, || {
                format!("diamond {fr:?} {x}")
            });
            for (j, y) in sets.iter().enumerate() {
                let k = i & j; // subsets are indexed by their masks
                rep.check(
                    image[k].is_subset(&image[i].intersection(&image[j])),
                    || format!("image of intersection {fr:?} {x} {y}"),
                );
                rep.check(boxed[k] == boxed[i].intersection(&boxed[j]), || {
                    format!("box of intersection {fr:?} {x} {y}")
                });
                if x.is_subset(y) {
                    rep.check(boxed[i].is_subset(&boxed[j]), || {
                        format!("box monotone {fr:?} {x} {y}")
                    });
                }
                rep.check(image[i].is_subset(y) == x.is_subset(&boxed[j]), || {
                    format!("adjunction {fr:?} {x} {y}")
                });
            }
        }
    }
    rep
}

/// The closure properties of propositions and the criteria on transitive,
/// reflexive and symmetric frames; also `is_proposition` against the
/// pointwise reading.
pub fn proposition_laws(max_n: usize) -> Report {
    let mut rep = Report::default();
    for fr in all_frames(max_n) {
        let n = fr.size();
        let r = oracle::rel_of(&fr);
        let sets = subsets(n);
        let props: Vec<bool> = sets.iter().map(|x| fr.is_proposition(x).unwrap()).collect();
        let dead = fr.r_box(&fr.empty_set()).unwrap();
        rep.check(props[0] && props[sets.len() - 1], || {
            format!("∅/W not propositions in {fr:?}")
        });
        let (tr, refl, sym) = (
            fr.has(FrameCondition::Transitive),
            fr.has(FrameCondition::Reflexive),
            fr.has(FrameCondition::Symmetric),
        );
        for (i, x) in sets.iter().enumerate() {
            let image = fr.r_image(x).unwrap();
            let boxed = |y: &WorldSet| fr.r_box(y).unwrap();
            rep.check(
                props[i] == oracle::is_proposition(&r, &oracle::set_of(x)),
                || format!("proposition test {fr:?} {x}"),
            );
            rep.check(fr.is_proposition(&boxed(x)).unwrap(), || {
                format!("box not a proposition {fr:?} {x}")
            });
            if props[i] {
                rep.check(x.is_subset(&boxed(&dead.complement().union(x))), || {
                    format!("dead-end inclusion {fr:?} {x}")
                });
                for (j, y) in sets.iter().enumerate() {
                    if props[j] {
                        rep.check(props[i & j], || format!("intersection {fr:?} {x} {y}"));
                    }
                }
            }
            if tr {
                rep.check(props[i] == image.is_subset(x), || {
                    format!("transitive R[X] {fr:?} {x}")
                });
                rep.check(props[i] == x.is_subset(&boxed(x)), || {
                    format!("transitive box {fr:?} {x}")
                });
            }
            if refl {
                rep.check(props[i] == boxed(&image).is_subset(x), || {
                    format!("reflexive {fr:?} {x}")
                });
            }
            if sym {
                let dia = fr.r_diamond(x).unwrap();
                rep.check(
                    props[i] == image.intersection(&boxed(&dia)).is_subset(x),
                    || format!("symmetric inclusion {fr:?} {x}"),
                );
                rep.check(
                    props[i] == x.is_subset(&boxed(&boxed(&dia).complement().union(x))),
                    || format!("symmetric box form {fr:?} {x}"),
                );
            }
        }
    }
    rep
}

fn arcs(names: &[&str]) -> Vec<Arc<str>> {
    names.iter().map(|a| Arc::from(*a)).collect()
}

/// Over every interpretation with `1..=max_n` worlds of the two atoms `p`,
/// `q`: extension is the set of satisfying worlds (library and oracle) and
/// is a proposition.
pub fn extension_checks(formulas: &[Formula], max_n: usize) -> Report {
    let mut rep = Report::default();
    for n in 1..=max_n {
        for m in enumerate_class(ModelClass::Kp, n, &arcs(&["p", "q"])).unwrap() {
            let naive = NaiveModel::of(&m);
            for f in formulas {
                let ext = m.extension(f);
                let pointwise = (0..n).all(|w| {
                    let s = m.satisfies(w, f).unwrap();
                    s == ext.contains(w) && s == naive.holds(w, f)
                });
                rep.check(pointwise, || format!("extension of `{f}` in {m:?}"));
                rep.check(m.frame().is_proposition(&ext).unwrap(), || {
                    format!("extension of `{f}` not a proposition in {m:?}")
                });
            }
        }
    }
    rep
}

/// Satisfaction agrees with the modal reading of the translation.
pub fn translation_checks(formulas: &[Formula], max_n: usize) -> Report {
    let mut rep = Report::default();
    let translated: Vec<_> = formulas.iter().map(|f| f.translate_modal()).collect();
    for n in 1..=max_n {
        for m in enumerate_class(ModelClass::Kp, n, &arcs(&["p", "q"])).unwrap() {
            let naive = NaiveModel::of(&m);
            for (f, t) in formulas.iter().zip(&translated) {
                for w in 0..n {
                    rep.check(
                        m.satisfies(w, f).unwrap() == naive.modal_holds(w, t),
                        || format!("translation of `{f}` at {w} in {m:?}"),
                    );
                }
            }
        }
    }
    rep
}

/// Every model of `1..=max_n` worlds with an arbitrary value for `p`.
fn models_over_p(max_n: usize) -> impl Iterator<Item = Model> {
    all_frames(max_n).flat_map(|fr| {
        let n = fr.size();
        (0..1u64 << n).map(move |m| {
            let val = BTreeMap::from([(Arc::from("p"), WorldSet::from_mask(n, m))]);
            Model::new(fr.clone(), val).unwrap()
        })
    })
}

/// The three frame-relative characterisations of the valuation conditions
/// by a single sequent.
pub fn definability(max_n: usize) -> Report {
    let mut rep = Report::default();
    let minus = super::seq("p ; ((_|_ -> _|_) -> _|_) -> p");
    let sym = super::seq("p ; ((p -> _|_) -> _|_) -> p");
    let tr = super::seq("p ; (_|_ -> _|_) -> p");
    for m in models_over_p(max_n) {
        let naive = NaiveModel::of(&m);
        rep.check(
            class_member(&m, ModelClass::Pminus) == sequent_valid_in_model(&m, &minus)
                && naive.member(ModelClass::Pminus) == class_member(&m, ModelClass::Pminus),
            || format!("dead-end definability {m:?}"),
        );
        if m.frame().has(FrameCondition::Symmetric) {
            rep.check(
                class_member(&m, ModelClass::Bp) == sequent_valid_in_model(&m, &sym),
                || format!("symmetric definability {m:?}"),
            );
        }
        if m.frame().has(FrameCondition::Transitive) {
            rep.check(
                class_member(&m, ModelClass::V) == sequent_valid_in_model(&m, &tr),
                || format!("transitive definability {m:?}"),
            );
        }
    }
    // the empty valuation leaves `p` at ∅, which every class admits
    for fr in all_frames(max_n) {
        let m = Model::without_valuation(fr);
        rep.check(sequent_valid_in_model(&m, &minus), || {
            format!("empty valuation {m:?}")
        });
    }
    rep
}

fn reachable_acyclic(fr: &Frame, root: usize) -> bool {
    fn visit(fr: &Frame, w: usize, stack: &mut Vec<usize>) -> bool {
        if stack.contains(&w) {
            return false;
        }
        stack.push(w);
        let ok = fr.successors(w).iter().all(|t| visit(fr, t, stack));
        stack.pop();
        ok
    }
    visit(fr, root, &mut Vec::new())
}

/// Satisfaction at every world of `u` matches the source at the path's end,
/// for formulas within the world's remaining depth budget.
fn preservation(u: &UnravelledModel, source: &Model, formulas: &[Formula], rep: &mut Report) {
    for w in 0..u.size() {
        let budget = u.truncated_at.map(|k| k - u.depth_map[w]);
        for f in formulas {
            if budget.is_some_and(|b| f.imp_depth() > b) {
                continue;
            }
            rep.check(
                u.model.satisfies(w, f).unwrap() == source.satisfies(u.source_world(w), f).unwrap(),
                || format!("`{f}` at path {:?} of {source:?}", u.paths[w]),
            );
        }
    }
}

/// The path-end map is a bounded morphism: edges map to edges, and at
/// interior worlds every source successor has a preimage successor. The
/// valuation is lifted along the same map.
fn morphism(u: &UnravelledModel, source: &Model, rep: &mut Report) {
    let sf = source.frame();
    let uf = u.model.frame();
    for (a, b) in uf.pairs() {
        rep.check(sf.related(u.source_world(a), u.source_world(b)), || {
            format!("forth fails on {:?} -> {:?}", u.paths[a], u.paths[b])
        });
    }
    for w in (0..u.size()).filter(|&w| u.is_interior(w)) {
        for t in sf.successors(u.source_world(w)).iter() {
            let hit = uf.successors(w).iter().any(|v| u.source_world(v) == t);
            rep.check(hit, || {
                format!("back fails at {:?} towards {t}", u.paths[w])
            });
        }
    }
    for (atom, set) in source.valuation() {
        let lifted = u.model.value(atom);
        let ok = (0..u.size()).all(|w| lifted.contains(w) == set.contains(u.source_world(w)));
        rep.check(ok, || format!("valuation of {atom} not lifted"));
    }
}

/// The proposition inclusion for each atom's value, at interior worlds.
fn interior_propositions(u: &UnravelledModel, rep: &mut Report) {
    let r = oracle::rel_of(u.model.frame());
    for set in u.model.valuation().values() {
        let x = oracle::set_of(set);
        let seen = oracle::image(&r, &x);
        let closed = oracle::boxed(&r, &seen);
        for w in (0..u.size()).filter(|&w| u.is_interior(w)) {
            rep.check(!(seen[w] && closed[w]) || x[w], || {
                format!("inclusion fails at interior path {:?}", u.paths[w])
            });
        }
    }
}

/// Full unravellings of every pointed model with `1..=max_n` worlds, atoms
/// `p`, `q`, whose reachable part is acyclic.
pub fn unravel_exhaustive(max_n: usize, formulas: &[Formula]) -> Report {
    let mut rep = Report::default();
    for fr in all_frames(max_n) {
        let n = fr.size();
        let roots: Vec<usize> = (0..n).filter(|&w| reachable_acyclic(&fr, w)).collect();
        if roots.is_empty() {
            continue;
        }
        for vmask in 0..1u64 << (2 * n) {
            let val = BTreeMap::from([
                (
                    Arc::from("p"),
                    WorldSet::from_mask(n, vmask & ((1 << n) - 1)),
                ),
                (Arc::from("q"), WorldSet::from_mask(n, vmask >> n)),
            ]);
            let m = Model::new(fr.clone(), val).unwrap();
            let p_minus = class_member(&m, ModelClass::Pminus);
            for &root in &roots {
                let u = unravel(&PointedModel::new(m.clone(), root).unwrap(), None, false).unwrap();
                preservation(&u, &m, formulas, &mut rep);
                morphism(&u, &m, &mut rep);
                if p_minus {
                    rep.check(class_member(&u.model, ModelClass::Kp), || {
                        format!("unravelling of dead-end model from {root} not an interpretation: {m:?}")
                    });
                }
            }
        }
    }
    rep
}

fn reflexive_closure(fr: &Frame) -> Frame {
    let n = fr.size();
    let mut pairs = fr.pairs();
    pairs.extend((0..n).filter(|&w| !fr.related(w, w)).map(|w| (w, w)));
    Frame::new(n, pairs).unwrap()
}

/// `count` seeded random pointed models with `1..=3` worlds and truncation
/// depths `1..=3`: preservation within the depth budget, the bounded
/// morphism, the interior inclusion for dead-end models, and the same for the
/// reflexive unravelling of the reflexive closure.
pub fn unravel_random(seed: u64, count: usize, formulas: &[Formula]) -> Report {
    let mut rep = Report::default();
    let mut rng = gen::rng(seed);
    for _ in 0..count {
        let n = rng.gen_range(1..=3);
        let m = gen::random_model(&mut rng, n, &["p", "q"]);
        let root = rng.gen_range(0..n);
        let k = rng.gen_range(1..=3);

        let u = unravel(&PointedModel::new(m.clone(), root).unwrap(), Some(k), false).unwrap();
        preservation(&u, &m, formulas, &mut rep);
        morphism(&u, &m, &mut rep);

        // same frame, values drawn from the dead-end condition
        let candidates = ModelClass::Pminus.value_candidates(m.frame());
        let val: BTreeMap<Arc<str>, WorldSet> = ["p", "q"]
            .iter()
            .map(|a| {
                (
                    Arc::from(*a),
                    candidates[rng.gen_range(0..candidates.len())].clone(),
                )
            })
            .collect();
        let dm = Model::new(m.frame().clone(), val).unwrap();
        let u = unravel(
            &PointedModel::new(dm.clone(), root).unwrap(),
            Some(k),
            false,
        )
        .unwrap();
        interior_propositions(&u, &mut rep);
        preservation(&u, &dm, formulas, &mut rep);

        let rm = Model::new(reflexive_closure(m.frame()), m.valuation().clone()).unwrap();
        let u = unravel(&PointedModel::new(rm.clone(), root).unwrap(), Some(k), true).unwrap();
        rep.check(u.model.frame().has(FrameCondition::Reflexive), || {
            "reflexive unravelling not reflexive".into()
        });
        interior_propositions(&u, &mut rep);
        preservation(&u, &rm, formulas, &mut rep);
        morphism(&u, &rm, &mut rep);
    }
    rep
}
