//! Detection of predicates over full global states.
//!
//! A predicate is evaluated on width-antichains only, i.e. on cuts that
//! pick exactly one state per process, so every predicate here is a
//! width-predicate by construction. Detection filters the width-antichain
//! stream of the model.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lattice::{enumerate_state_cuts, Order, WidthAntichains};
use crate::state::{StateModel, WidthAntichainCut};

/// Numeric comparison operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Cmp {
    #[serde(rename = "==")]
    Eq,
    #[serde(rename = "!=")]
    Ne,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = ">=")]
    Ge,
}

impl Cmp {
    pub fn apply(self, a: f64, b: f64) -> bool {
        match self {
            Cmp::Eq => a == b,
            Cmp::Ne => a != b,
            Cmp::Lt => a < b,
            Cmp::Le => a <= b,
            Cmp::Gt => a > b,
            Cmp::Ge => a >= b,
        }
    }
}

/// Predicate over one chosen state per process. Processes are 1-based.
///
/// A clause reading an attribute that a chosen state lacks is false, and a
/// warning is logged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum WidthPredicate {
    True {},
    False {},
    And {
        args: Vec<WidthPredicate>,
    },
    Or {
        args: Vec<WidthPredicate>,
    },
    Not {
        arg: Box<WidthPredicate>,
    },
    /// The state of `proc` has `attr cmp value`.
    Local {
        proc: usize,
        attr: String,
        cmp: Cmp,
        value: f64,
    },
    /// `proc` is at state index `index` or later.
    AtLeast {
        proc: usize,
        index: usize,
    },
    /// Sum of `attr` over all processes compared to `value`.
    Sum {
        attr: String,
        cmp: Cmp,
        value: f64,
    },
    /// Number of processes whose `attr` equals `equals`, compared to `value`.
    Count {
        attr: String,
        equals: f64,
        cmp: Cmp,
        value: f64,
    },
    /// Every process has `attr cmp value`.
    All {
        attr: String,
        cmp: Cmp,
        value: f64,
    },
}

/// Anything that can judge a global state. `states[c]` is the element
/// index of the state chosen on chain `c`.
pub trait CutPredicate {
    fn holds(&self, sm: &StateModel, states: &[usize]) -> bool;
}

impl<F> CutPredicate for F
where
    F: Fn(&StateModel, &[usize]) -> bool,
{
    fn holds(&self, sm: &StateModel, states: &[usize]) -> bool {
        self(sm, states)
    }
}

fn attr(sm: &StateModel, s: usize, name: &str) -> Option<f64> {
    let v = sm.attrs(s).get(name).copied();
    if v.is_none() {
        log::warn!("state `{}` has no attribute `{name}`", sm.poset().id(s));
    }
    v
}

impl CutPredicate for WidthPredicate {
    fn holds(&self, sm: &StateModel, states: &[usize]) -> bool {
        match self {
            WidthPredicate::True {} => true,
            WidthPredicate::False {} => false,
            WidthPredicate::And { args } => args.iter().all(|a| a.holds(sm, states)),
            WidthPredicate::Or { args } => args.iter().any(|a| a.holds(sm, states)),
            WidthPredicate::Not { arg } => !arg.holds(sm, states),
            WidthPredicate::Local {
                proc,
                attr: name,
                cmp,
                value,
            } => {
                let Some(&s) = proc.checked_sub(1).and_then(|c| states.get(c)) else {
                    log::warn!("predicate names process {proc}, model has {}", states.len());
                    return false;
                };
                attr(sm, s, name).is_some_and(|v| cmp.apply(v, *value))
            }
            WidthPredicate::AtLeast { proc, index } => proc
                .checked_sub(1)
                .and_then(|c| states.get(c))
                .is_some_and(|&s| sm.chains().position(s) >= *index),
            WidthPredicate::Sum {
                attr: name,
                cmp,
                value,
            } => states
                .iter()
                .map(|&s| attr(sm, s, name))
                .sum::<Option<f64>>()
                .is_some_and(|total| cmp.apply(total, *value)),
            WidthPredicate::Count {
                attr: name,
                equals,
                cmp,
                value,
            } => states
                .iter()
                .map(|&s| attr(sm, s, name).map(|v| usize::from(v == *equals)))
                .sum::<Option<usize>>()
                .is_some_and(|count| cmp.apply(count as f64, *value)),
            WidthPredicate::All {
                attr: name,
                cmp,
                value,
            } => states
                .iter()
                .all(|&s| attr(sm, s, name).is_some_and(|v| cmp.apply(v, *value))),
        }
    }
}

/// Stream of the width-antichains satisfying a predicate.
pub struct Detections<'p, P: ?Sized> {
    cuts: WidthAntichains,
    pred: &'p P,
}

impl<P: ?Sized> Detections<'_, P> {
    /// The chain view the yielded positions refer to.
    pub fn state_model(&self) -> &StateModel {
        self.cuts.state_model()
    }
}

impl<P: CutPredicate + ?Sized> Iterator for Detections<'_, P> {
    type Item = WidthAntichainCut;

    fn next(&mut self) -> Option<WidthAntichainCut> {
        loop {
            let cut = self.cuts.next()?;
            let sm = self.cuts.state_model();
            if self.pred.holds(sm, &cut.states(sm)) {
                return Some(cut);
            }
        }
    }
}

/// Width-antichains of `sm` on which `pred` holds. Fails with
/// [`crate::Error::NotWidthExtensible`] on models that are not.
pub fn detect_width_predicate<'p, P: CutPredicate + ?Sized>(
    sm: &StateModel,
    pred: &'p P,
) -> Result<Detections<'p, P>> {
    Ok(Detections {
        cuts: enumerate_state_cuts(sm, Order::Lexicographic)?,
        pred,
    })
}
