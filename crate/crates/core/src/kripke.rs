//! Finite frames, models and the set operators `R[·]`, `R□`, `R◇`.
//!
//! Worlds are dense indices `0..n`. A frame stores, per world, the bitset of
//! its successors and the bitset of its predecessors, so that every operator
//! is a pass over the worlds with word-level set operations.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::Formula;

/// Largest frame `Frame::propositions` enumerates by default.
pub const PROPOSITION_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KripkeError {
    #[error("a frame needs at least one world")]
    EmptyFrame,
    #[error("world {world} out of range for a frame with {size} worlds")]
    WorldOutOfRange { world: usize, size: usize },
    #[error("duplicate relation pair ({0}, {1})")]
    DuplicatePair(usize, usize),
    #[error("duplicate world {world} in the valuation of `{atom}`")]
    DuplicateWorld { atom: String, world: usize },
    #[error("invalid atom name `{0}`")]
    InvalidAtom(String),
    #[error("world set of size {found} used with a frame of {expected} worlds")]
    SizeMismatch { expected: usize, found: usize },
    #[error("frame has {size} worlds; enumeration is capped at {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("malformed model file: {0}")]
    Json(String),
}

/// A subset of the worlds `0..len` of some frame.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WorldSet {
    len: usize,
    words: Vec<u64>,
}

impl WorldSet {
    pub fn empty(len: usize) -> Self {
        WorldSet {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut set = WorldSet::empty(len);
        for w in 0..len {
            set.insert(w);
        }
        set
    }

    /// Bit `i` of `mask` is world `i`. Bits at or above `len` are ignored.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        let mut set = WorldSet::empty(len);
        for w in 0..len.min(64) {
            if mask >> w & 1 == 1 {
                set.insert(w);
            }
        }
        set
    }

    pub fn from_worlds(
        len: usize,
        worlds: impl IntoIterator<Item = usize>,
    ) -> Result<Self, KripkeError> {
        let mut set = WorldSet::empty(len);
        for w in worlds {
            if w >= len {
                return Err(KripkeError::WorldOutOfRange {
                    world: w,
                    size: len,
                });
            }
            set.insert(w);
        }
        Ok(set)
    }

    /// Size of the ambient world range, not the number of members.
    pub fn universe(&self) -> usize {
        self.len
    }

    /// Member bits as a `u64`, when the universe fits.
    pub fn mask(&self) -> Option<u64> {
        (self.len <= 64).then(|| self.words.first().copied().unwrap_or(0))
    }

    pub fn contains(&self, w: usize) -> bool {
        w < self.len && self.words[w / 64] >> (w % 64) & 1 == 1
    }

    pub fn insert(&mut self, w: usize) {
        assert!(w < self.len, "world {w} outside universe of {}", self.len);
        self.words[w / 64] |= 1 << (w % 64);
    }

    pub fn remove(&mut self, w: usize) {
        if w < self.len {
            self.words[w / 64] &= !(1 << (w % 64));
        }
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&w| self.contains(w))
    }

    pub fn union(&self, other: &WorldSet) -> WorldSet {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &WorldSet) -> WorldSet {
        self.zip(other, |a, b| a & b)
    }

    /// Complement relative to `0..universe()`.
    pub fn complement(&self) -> WorldSet {
        let mut out = WorldSet {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.trim();
        out
    }

    pub fn is_subset(&self, other: &WorldSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    fn zip(&self, other: &WorldSet, op: impl Fn(u64, u64) -> u64) -> WorldSet {
        debug_assert_eq!(self.len, other.len);
        WorldSet {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }

    fn trim(&mut self) {
        let extra = self.words.len() * 64 - self.len;
        if extra > 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= u64::MAX >> extra;
            }
        }
    }

    fn union_with(&mut self, other: &WorldSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, w) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrameCondition {
    Reflexive,
    Symmetric,
    Transitive,
}

/// A finite frame `(W, R)` with `W = 0..size`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    size: usize,
    succ: Vec<WorldSet>,
    pred: Vec<WorldSet>,
}

impl Frame {
    pub fn new(
        size: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, KripkeError> {
        if size == 0 {
            return Err(KripkeError::EmptyFrame);
        }
        let mut frame = Frame {
            size,
            succ: vec![WorldSet::empty(size); size],
            pred: vec![WorldSet::empty(size); size],
        };
        for (s, t) in pairs {
            for w in [s, t] {
                if w >= size {
                    return Err(KripkeError::WorldOutOfRange { world: w, size });
                }
            }
            if frame.succ[s].contains(t) {
                return Err(KripkeError::DuplicatePair(s, t));
            }
            frame.succ[s].insert(t);
            frame.pred[t].insert(s);
        }
        Ok(frame)
    }

    /// The frame whose pair `(s, t)` is present iff bit `s * size + t` of
    /// `mask` is set. Requires `size * size <= 64`.
    pub fn from_relation_mask(size: usize, mask: u64) -> Self {
        assert!(
            size >= 1 && size * size <= 64,
            "relation mask needs 1 <= size <= 8"
        );
        let pairs = (0..size * size)
            .filter(|bit| mask >> bit & 1 == 1)
            .map(|bit| (bit / size, bit % size));
        Frame::new(size, pairs).expect("mask pairs are in range and distinct")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn related(&self, s: usize, t: usize) -> bool {
        self.succ[s].contains(t)
    }

    pub fn successors(&self, s: usize) -> &WorldSet {
        &self.succ[s]
    }

    pub fn predecessors(&self, t: usize) -> &WorldSet {
        &self.pred[t]
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.size)
            .flat_map(|s| self.succ[s].iter().map(move |t| (s, t)))
            .collect()
    }

    /// Inverse of [`Frame::from_relation_mask`].
    pub fn relation_mask(&self) -> Option<u64> {
        (self.size * self.size <= 64).then(|| {
            self.pairs()
                .into_iter()
                .fold(0u64, |m, (s, t)| m | 1 << (s * self.size + t))
        })
    }

    pub fn empty_set(&self) -> WorldSet {
        WorldSet::empty(self.size)
    }

    pub fn full_set(&self) -> WorldSet {
        WorldSet::full(self.size)
    }

    fn check(&self, x: &WorldSet) -> Result<(), KripkeError> {
        if x.universe() != self.size {
            return Err(KripkeError::SizeMismatch {
                expected: self.size,
                found: x.universe(),
            });
        }
        Ok(())
    }

    /// `R[X]`: the worlds reachable in one step from `X`.
    pub fn r_image(&self, x: &WorldSet) -> Result<WorldSet, KripkeError> {
        self.check(x)?;
        Ok(self.image_of(x))
    }

    /// `R□(X)`: the worlds all of whose successors lie in `X`. Dead ends are
    /// always included.
    pub fn r_box(&self, x: &WorldSet) -> Result<WorldSet, KripkeError> {
        self.check(x)?;
        Ok(self.box_of(x))
    }

    /// `R◇(X) = −R□(−X)`, computed as the inverse image of `X`.
    pub fn r_diamond(&self, x: &WorldSet) -> Result<WorldSet, KripkeError> {
        self.check(x)?;
        Ok(self.diamond_of(x))
    }

    /// Whether `R[X] ∩ R□(R[X]) ⊆ X`.
    pub fn is_proposition(&self, x: &WorldSet) -> Result<bool, KripkeError> {
        self.check(x)?;
        Ok(self.proposition_unchecked(x))
    }

    /// All propositions of the frame in ascending bitmask order. Fails above
    /// [`PROPOSITION_CAP`] worlds.
    pub fn propositions(&self) -> Result<Vec<WorldSet>, KripkeError> {
        self.propositions_capped(PROPOSITION_CAP)
    }

    pub fn propositions_capped(&self, cap: usize) -> Result<Vec<WorldSet>, KripkeError> {
        if self.size > cap.min(63) {
            return Err(KripkeError::CapExceeded {
                size: self.size,
                cap,
            });
        }
        Ok((0..1u64 << self.size)
            .map(|mask| WorldSet::from_mask(self.size, mask))
            .filter(|x| self.proposition_unchecked(x))
            .collect())
    }

    pub fn has(&self, condition: FrameCondition) -> bool {
        let worlds = 0..self.size;
        match condition {
            FrameCondition::Reflexive => worlds.clone().all(|w| self.related(w, w)),
            FrameCondition::Symmetric => self.succ.iter().zip(&self.pred).all(|(s, p)| s == p),
            FrameCondition::Transitive => worlds.clone().all(|s| {
                self.succ[s]
                    .iter()
                    .all(|t| self.succ[t].is_subset(&self.succ[s]))
            }),
        }
    }

    pub(crate) fn image_of(&self, x: &WorldSet) -> WorldSet {
        let mut out = self.empty_set();
        for s in x.iter() {
            out.union_with(&self.succ[s]);
        }
        out
    }

    pub(crate) fn box_of(&self, x: &WorldSet) -> WorldSet {
        let mut out = self.empty_set();
        for s in 0..self.size {
            if self.succ[s].is_subset(x) {
                out.insert(s);
            }
        }
        out
    }

    pub(crate) fn diamond_of(&self, x: &WorldSet) -> WorldSet {
        let mut out = self.empty_set();
        for t in x.iter() {
            out.union_with(&self.pred[t]);
        }
        out
    }

    pub(crate) fn proposition_unchecked(&self, x: &WorldSet) -> bool {
        let image = self.image_of(x);
        image.intersection(&self.box_of(&image)).is_subset(x)
    }

    /// `X ⊆ R□(−R□(∅) ∪ X)`, the valuation condition of the `P−` class.
    pub(crate) fn p_minus_unchecked(&self, x: &WorldSet) -> bool {
        let dead = self.box_of(&self.empty_set());
        x.is_subset(&self.box_of(&dead.complement().union(x)))
    }
}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Frame({}, {:?})", self.size, self.pairs())
    }
}

/// A frame with a valuation. Atoms missing from the valuation denote `∅`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Model {
    frame: Frame,
    valuation: BTreeMap<Arc<str>, WorldSet>,
}

impl Model {
    pub fn new(frame: Frame, valuation: BTreeMap<Arc<str>, WorldSet>) -> Result<Self, KripkeError> {
        for set in valuation.values() {
            frame.check(set)?;
        }
        Ok(Model { frame, valuation })
    }

    pub fn without_valuation(frame: Frame) -> Self {
        Model {
            frame,
            valuation: BTreeMap::new(),
        }
    }

    /// Convenience constructor: `pairs` and `(atom, worlds)` lists.
    pub fn build(
        size: usize,
        pairs: &[(usize, usize)],
        val: &[(&str, &[usize])],
    ) -> Result<Self, KripkeError> {
        let frame = Frame::new(size, pairs.iter().copied())?;
        let mut valuation = BTreeMap::new();
        for (atom, worlds) in val {
            valuation.insert(
                Arc::from(*atom),
                WorldSet::from_worlds(size, worlds.iter().copied())?,
            );
        }
        Model::new(frame, valuation)
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn size(&self) -> usize {
        self.frame.size
    }

    pub fn valuation(&self) -> &BTreeMap<Arc<str>, WorldSet> {
        &self.valuation
    }

    /// `V(p)`, empty for unmapped atoms.
    pub fn value(&self, atom: &str) -> WorldSet {
        self.valuation
            .get(atom)
            .cloned()
            .unwrap_or_else(|| self.frame.empty_set())
    }

    pub fn satisfies(&self, w: usize, f: &Formula) -> Result<bool, KripkeError> {
        if w >= self.frame.size {
            return Err(KripkeError::WorldOutOfRange {
                world: w,
                size: self.frame.size,
            });
        }
        Ok(self.holds(w, f))
    }

    /// Satisfaction by direct recursion; `w` must be in range.
    pub(crate) fn holds(&self, w: usize, f: &Formula) -> bool {
        match f {
            Formula::Atom(p) => self.valuation.get(p).is_some_and(|v| v.contains(w)),
            Formula::Bottom => false,
            Formula::And(l, r) => self.holds(w, l) && self.holds(w, r),
            Formula::Imp(l, r) => self.frame.succ[w]
                .iter()
                .all(|t| !self.holds(t, l) || self.holds(t, r)),
        }
    }

    /// `‖φ‖`, computed bottom-up: `‖φ → ψ‖ = R□(−‖φ‖ ∪ ‖ψ‖)`.
    pub fn extension(&self, f: &Formula) -> WorldSet {
        match f {
            Formula::Atom(p) => self.value(p),
            Formula::Bottom => self.frame.empty_set(),
            Formula::And(l, r) => self.extension(l).intersection(&self.extension(r)),
            Formula::Imp(l, r) => {
                let body = self.extension(l).complement().union(&self.extension(r));
                self.frame.box_of(&body)
            }
        }
    }

    /// Every valuation set is a proposition.
    pub fn is_interpretation(&self) -> bool {
        self.valuation
            .values()
            .all(|v| self.frame.proposition_unchecked(v))
    }

    pub fn from_json_str(text: &str) -> Result<Self, KripkeError> {
        let raw: ModelJson =
            serde_json::from_str(text).map_err(|e| KripkeError::Json(e.to_string()))?;
        Model::try_from(raw)
    }

    pub fn to_json(&self) -> ModelJson {
        ModelJson::from(self)
    }
}

impl fmt::Debug for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Model")
            .field("worlds", &self.frame.size)
            .field("rel", &self.frame.pairs())
            .field("val", &self.valuation)
            .finish()
    }
}

/// A model together with a designated world.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedModel {
    model: Model,
    point: usize,
}

impl PointedModel {
    pub fn new(model: Model, point: usize) -> Result<Self, KripkeError> {
        if point >= model.size() {
            return Err(KripkeError::WorldOutOfRange {
                world: point,
                size: model.size(),
            });
        }
        Ok(PointedModel { model, point })
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn point(&self) -> usize {
        self.point
    }

    pub fn satisfies(&self, f: &Formula) -> bool {
        self.model.holds(self.point, f)
    }
}

/// On-disk model format:
/// `{"worlds": n, "rel": [[s, t], ...], "val": {"p": [w, ...], ...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelJson {
    pub worlds: usize,
    #[serde(default)]
    pub rel: Vec<[usize; 2]>,
    #[serde(default)]
    pub val: BTreeMap<String, Vec<usize>>,
}

impl TryFrom<ModelJson> for Model {
    type Error = KripkeError;

    fn try_from(raw: ModelJson) -> Result<Self, Self::Error> {
        let frame = Frame::new(raw.worlds, raw.rel.iter().map(|&[s, t]| (s, t)))?;
        let mut valuation = BTreeMap::new();
        for (atom, worlds) in raw.val {
            if !crate::formula::is_identifier(&atom) {
                return Err(KripkeError::InvalidAtom(atom));
            }
            let mut set = WorldSet::empty(raw.worlds);
            for w in worlds {
                if w >= raw.worlds {
                    return Err(KripkeError::WorldOutOfRange {
                        world: w,
                        size: raw.worlds,
                    });
                }
                if set.contains(w) {
                    return Err(KripkeError::DuplicateWorld { atom, world: w });
                }
                set.insert(w);
            }
            valuation.insert(Arc::from(atom.as_str()), set);
        }
        Model::new(frame, valuation)
    }
}

impl From<&Model> for ModelJson {
    fn from(m: &Model) -> Self {
        ModelJson {
            worlds: m.size(),
            rel: m.frame.pairs().into_iter().map(|(s, t)| [s, t]).collect(),
            val: m
                .valuation
                .iter()
                .map(|(atom, set)| (atom.to_string(), set.iter().collect()))
                .collect(),
        }
    }
}
