//! Unravelling a pointed model into the tree of its relation paths, in full
//! (acyclic reachable part) or truncated at a path length.
//!
//! Path worlds are numbered breadth-first; within a level, lexicographically
//! by source-world indices. World 0 is the root path.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::kripke::{Frame, FrameCondition, Model, PointedModel, WorldSet};

/// Upper bound on the number of paths an unravelling may produce.
pub const UNRAVEL_WORLD_CAP: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnravelError {
    #[error("the part reachable from world {0} has a cycle; give a depth bound")]
    CyclicUnbounded(usize),
    #[error("the reflexive unravelling is infinite; give a depth bound")]
    ReflexiveUnbounded,
    #[error("the reflexive unravelling needs a reflexive frame")]
    NotReflexive,
    #[error("unravelling would exceed {cap} worlds")]
    TooLarge { cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnravelledModel {
    pub model: Model,
    /// Path length of each world (the root has depth 0).
    pub depth_map: Vec<usize>,
    /// The depth bound, `None` for a full unravelling.
    pub truncated_at: Option<usize>,
    /// The source-world path each world stands for.
    pub paths: Vec<Vec<usize>>,
    /// Path-successor tree: the parent of each non-root world.
    pub parent: Vec<Option<usize>>,
}

impl UnravelledModel {
    /// The last element of the path, i.e. the source world `w` maps to.
    pub fn source_world(&self, w: usize) -> usize {
        *self.paths[w].last().expect("paths are non-empty")
    }

    /// Worlds whose successor neighbourhood is complete: every world of a
    /// full unravelling, and those strictly above the cut otherwise.
    pub fn is_interior(&self, w: usize) -> bool {
        self.truncated_at.is_none_or(|k| self.depth_map[w] < k)
    }

    pub fn size(&self) -> usize {
        self.paths.len()
    }
}

fn has_reachable_cycle(frame: &Frame, root: usize) -> bool {
    // 0 = unvisited, 1 = on stack, 2 = done
    fn visit(frame: &Frame, w: usize, state: &mut [u8]) -> bool {
        state[w] = 1;
        for t in frame.successors(w).iter() {
            let seen = state[t];
            if seen == 1 || (seen == 0 && visit(frame, t, state)) {
                return true;
            }
        }
        state[w] = 2;
        false
    }
    let mut state = vec![0u8; frame.size()];
    visit(frame, root, &mut state)
}

/// Unravels `pm` from its point. `depth = None` asks for the full
/// unravelling; `reflexive` adds the reflexive closure and needs a bound.
pub fn unravel(
    pm: &PointedModel,
    depth: Option<usize>,
    reflexive: bool,
) -> Result<UnravelledModel, UnravelError> {
    let source = pm.model();
    let frame = source.frame();
    if reflexive {
        if depth.is_none() {
            return Err(UnravelError::ReflexiveUnbounded);
        }
        if !frame.has(FrameCondition::Reflexive) {
            return Err(UnravelError::NotReflexive);
        }
    }
    if depth.is_none() && has_reachable_cycle(frame, pm.point()) {
        return Err(UnravelError::CyclicUnbounded(pm.point()));
    }

    let mut paths: Vec<Vec<usize>> = vec![vec![pm.point()]];
    let mut depth_map = vec![0];
    let mut parent = vec![None];
    let mut level_start = 0;
    let mut level = 0;
    while depth.is_none_or(|k| level < k) {
        let level_end = paths.len();
        for w in level_start..level_end {
            let last = *paths[w].last().expect("non-empty");
            for t in frame.successors(last).iter() {
                if paths.len() >= UNRAVEL_WORLD_CAP {
                    return Err(UnravelError::TooLarge {
                        cap: UNRAVEL_WORLD_CAP,
                    });
                }
                let mut path = paths[w].clone();
                path.push(t);
                paths.push(path);
                depth_map.push(level + 1);
                parent.push(Some(w));
            }
        }
        if paths.len() == level_end {
            break;
        }
        level_start = level_end;
        level += 1;
    }

    let n = paths.len();
    let mut pairs: Vec<(usize, usize)> = parent
        .iter()
        .enumerate()
        .filter_map(|(w, p)| p.map(|p| (p, w)))
        .collect();
    if reflexive {
        pairs.extend((0..n).map(|w| (w, w)));
    }
    let new_frame = Frame::new(n, pairs).expect("path edges are in range and distinct");
    let valuation: BTreeMap<_, _> = source
        .valuation()
        .iter()
        .map(|(atom, set)| {
            let lifted = paths
                .iter()
                .enumerate()
                .filter(|(_, path)| set.contains(*path.last().expect("non-empty")))
                .map(|(w, _)| w);
            (
                atom.clone(),
                WorldSet::from_worlds(n, lifted).expect("in range"),
            )
        })
        .collect();
    let model = Model::new(new_frame, valuation).expect("sizes agree");
    Ok(UnravelledModel {
        model,
        depth_map,
        truncated_at: depth,
        paths,
        parent,
    })
}
