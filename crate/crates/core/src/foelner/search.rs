use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::dim::{Quantity, Weight};
use crate::error::{FusionError, Result};
use crate::foelner::conditions::{boundary_of_sets, fc3_from_boundary, label_set, FoelnerReport};
use crate::label::Label;
use crate::ring::FusionRing;
use crate::spectral::build_window;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Word-length balls around the unit.
    Balls,
    /// Grow from `{e}` by the boundary label that minimizes the FC3 ratio.
    Greedy,
}

impl FromStr for Strategy {
    type Err = FusionError;

    fn from_str(s: &str) -> Result<Strategy> {
        match s {
            "balls" => Ok(Strategy::Balls),
            "greedy" => Ok(Strategy::Greedy),
            other => Err(FusionError::InvalidParam(format!("unknown strategy '{other}'"))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Balls => "balls",
            Strategy::Greedy => "greedy",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub step: usize,
    pub set_size: usize,
    pub weight_f: Weight,
    pub weight_boundary: Weight,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub strategy: Strategy,
    pub found: bool,
    /// The first set satisfying FC3, or the best one seen.
    pub set: Vec<Label>,
    pub report: FoelnerReport,
    pub curve: Vec<CurvePoint>,
}

struct Tracker {
    curve: Vec<CurvePoint>,
    best: Option<(Quantity, FoelnerReport)>,
}

impl Tracker {
    fn record(&mut self, s: &BTreeSet<Label>, f: &BTreeSet<Label>, ring: &FusionRing, eps: f64) -> Result<bool> {
        let b = boundary_of_sets(ring, s, f)?;
        let report = fc3_from_boundary(s, f, &b, eps);
        let ratio = Quantity::ratio(&b.weight(), &b.weight_f);
        self.curve.push(CurvePoint {
            step: self.curve.len(),
            set_size: f.len(),
            weight_f: b.weight_f.clone(),
            weight_boundary: b.weight(),
            ratio: ratio.to_f64(),
        });
        let satisfied = report.satisfied;
        let better = match &self.best {
            None => true,
            Some((q, _)) => ratio.lt(q),
        };
        if better || satisfied {
            self.best = Some((ratio, report));
        }
        Ok(satisfied)
    }

    fn finish(self, strategy: Strategy, found: bool) -> SearchResult {
        let (_, report) = self.best.expect("at least one candidate evaluated");
        SearchResult {
            strategy,
            found,
            set: report.set.clone(),
            report,
            curve: self.curve,
        }
    }
}

/// Look for a finite F with `Σ_{∂_S(F)} d² < ε Σ_F d²`.
///
/// `budget` caps the number of labels in F. Exhausting it is not an error:
/// the result then has `found == false` and carries the set with the
/// smallest ratio seen.
pub fn foelner_search(
    ring: &FusionRing,
    support: &[Label],
    eps: f64,
    strategy: Strategy,
    budget: usize,
) -> Result<SearchResult> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(FusionError::InvalidParam(format!("epsilon must be positive, got {eps}")));
    }
    if budget == 0 {
        return Err(FusionError::InvalidParam("budget must be ≥ 1".into()));
    }
    let s = label_set(ring, support)?;
    let mut tracker = Tracker { curve: Vec::new(), best: None };
    let found = match strategy {
        Strategy::Balls => balls(ring, &s, eps, budget, &mut tracker)?,
        Strategy::Greedy => greedy(ring, &s, eps, budget, &mut tracker)?,
    };
    Ok(tracker.finish(strategy, found))
}

fn balls(ring: &FusionRing, s: &BTreeSet<Label>, eps: f64, budget: usize, tracker: &mut Tracker) -> Result<bool> {
    let gens: Vec<Label> = s.iter().cloned().collect();
    let mut previous = 0;
    for r in 0.. {
        let window = match build_window(ring, &gens, r, budget) {
            Ok(w) => w,
            Err(FusionError::BudgetExceeded { .. }) => return Ok(false),
            Err(e) => return Err(e),
        };
        if window.len() == previous {
            // finite generated subring exhausted without meeting ε
            return Ok(false);
        }
        previous = window.len();
        let f: BTreeSet<Label> = window.labels().iter().cloned().collect();
        if tracker.record(s, &f, ring, eps)? {
            return Ok(true);
        }
    }
    unreachable!()
}

fn greedy(ring: &FusionRing, s: &BTreeSet<Label>, eps: f64, budget: usize, tracker: &mut Tracker) -> Result<bool> {
    let mut f: BTreeSet<Label> = [ring.unit()].into_iter().collect();
    if tracker.record(s, &f, ring, eps)? {
        return Ok(true);
    }
    while f.len() < budget {
        let outer = boundary_of_sets(ring, s, &f)?.outer;
        let mut choice: Option<(Quantity, Label)> = None;
        for c in outer {
            f.insert(c.clone());
            let b = boundary_of_sets(ring, s, &f)?;
            f.remove(&c);
            let q = Quantity::ratio(&b.weight(), &b.weight_f);
            // candidates come in label order, so ties keep the smallest label
            if choice.as_ref().is_none_or(|(best, _)| q.lt(best)) {
                choice = Some((q, c));
            }
        }
        let Some((_, c)) = choice else {
            return Ok(false);
        };
        f.insert(c);
        if tracker.record(s, &f, ring, eps)? {
            return Ok(true);
        }
    }
    Ok(false)
}
