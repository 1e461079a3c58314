//! Obstructions to realizing a braided autoequivalence of the center by a
//! quantum cellular automaton on a fusion spin chain.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::center::{CenterAutoEquiv, CenterError, CenterModel, CenterVector};
use crate::fusion::{FusionError, FusionRing, ObjectVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ObstructError {
    #[error("scan range {k_min}..={k_max} is empty or starts below 1")]
    EmptyRange { k_min: usize, k_max: usize },
    #[error("k = {k} exceeds the configured ceiling {ceiling}")]
    AboveCeiling { k: usize, ceiling: usize },
    #[error("autoequivalence and center model have different sizes")]
    ModelMismatch,
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Center(#[from] CenterError),
}

/// Largest spread ruled out by a witness at `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpreadBound {
    Vacuous,
    Max(u64),
}

impl fmt::Display for SpreadBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpreadBound::Vacuous => write!(f, "vacuous"),
            SpreadBound::Max(s) => write!(f, "{s}"),
        }
    }
}

/// Largest `s` with `k > max(14n + 4s, 6n + 12s)`.
pub fn spread_bound(n: usize, k: usize) -> SpreadBound {
    let (n, k) = (n as i64, k as i64);
    let s = ((k - 14 * n - 1).div_euclid(4)).min((k - 6 * n - 1).div_euclid(12));
    if s < 0 {
        SpreadBound::Vacuous
    } else {
        SpreadBound::Max(s as u64)
    }
}

/// Spin chain data `(C, X, n)` with an autoequivalence of its center.
#[derive(Clone, Debug)]
pub struct ChainSpec {
    pub ring: FusionRing,
    pub x: ObjectVector,
    pub n: usize,
    pub model: CenterModel,
    pub f: CenterAutoEquiv,
}

impl ChainSpec {
    /// Rejects `X` unless it is a strong generator within `cutoff`.
    pub fn new(
        ring: FusionRing,
        model: CenterModel,
        f: CenterAutoEquiv,
        x: ObjectVector,
        cutoff: usize,
    ) -> Result<Self, ObstructError> {
        if model.ring_id() != ring.id() {
            return Err(CenterError::RingMismatch.into());
        }
        if f.perm().len() != model.len() {
            return Err(ObstructError::ModelMismatch);
        }
        ring.check(&x)?;
        let n = ring.strong_gen_index(&x, cutoff)?;
        Ok(ChainSpec { ring, x, n, model, f })
    }

    /// Invertibles `g` with `g (x) F(m) = m` on tracked coordinates.
    pub fn fixing_set(&self, m: &[BigUint]) -> Result<Vec<usize>, ObstructError> {
        let fm = self.f.apply(m)?;
        let mut out = Vec::new();
        for &g in self.model.invertibles() {
            if self.model.tracked_eq(&self.model.act_invertible(g, &fm)?, m) {
                out.push(g);
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KCheck {
    pub k: usize,
    pub m_k: CenterVector,
    pub fixing: Vec<usize>,
}

impl KCheck {
    pub fn is_witness(&self) -> bool {
        self.fixing.is_empty()
    }
}

fn check_power(spec: &ChainSpec, k: usize, xk: &ObjectVector) -> Result<KCheck, ObstructError> {
    let m_k = spec.model.induce(xk)?;
    let fixing = spec.fixing_set(&m_k)?;
    Ok(KCheck { k, m_k, fixing })
}

/// `m_k = I(X^k)` and every invertible fixing it up to `F`.
pub fn check_k(spec: &ChainSpec, k: usize) -> Result<KCheck, ObstructError> {
    if k == 0 {
        return Err(ObstructError::EmptyRange { k_min: 0, k_max: 0 });
    }
    let xk = spec.ring.power(&spec.x, k)?;
    check_power(spec, k, &xk)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRow {
    pub check: KCheck,
    /// Present exactly on witness rows.
    pub s_max: Option<SpreadBound>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub generator_index: usize,
    pub k_min: usize,
    pub k_max: usize,
    pub rows: Vec<ScanRow>,
    pub necessary_condition_only: bool,
    pub notes: Vec<String>,
}

impl ObstructionReport {
    pub fn witnesses(&self) -> impl Iterator<Item = &ScanRow> {
        self.rows.iter().filter(|r| r.check.is_witness())
    }

    pub fn witness_count(&self) -> usize {
        self.witnesses().count()
    }

    /// Largest spread ruled out anywhere in the range, if some witness exists.
    pub fn max_ruled_out(&self) -> Option<SpreadBound> {
        self.witnesses().filter_map(|r| r.s_max).max()
    }

    pub fn summary(&self) -> String {
        match self.max_ruled_out() {
            None => format!(
                "no obstruction found in range {}..={} (inconclusive)",
                self.k_min, self.k_max
            ),
            Some(SpreadBound::Vacuous) => format!(
                "{} witness(es) in range {}..={}; every witness k is too small to rule out any spread",
                self.witness_count(),
                self.k_min,
                self.k_max
            ),
            Some(SpreadBound::Max(s)) => format!(
                "{} witness(es) in range {}..={}; no QCA of spread <= {s} realizes the autoequivalence",
                self.witness_count(),
                self.k_min,
                self.k_max
            ),
        }
    }

    pub fn generator_statement(&self) -> String {
        format!(
            "spread bounds use the minimal strong-generator index n = {}",
            self.generator_index
        )
    }
}

pub const TY_BANNER: &str =
    "NECESSARY CONDITION ONLY: Tambara-Yamagami verdicts compare the aggregated X family; Y and Z are untracked";

/// Per-`k` verdicts for `k_min..=k_max`.
pub fn scan(spec: &ChainSpec, k_min: usize, k_max: usize, ceiling: usize) -> Result<ObstructionReport, ObstructError> {
    if k_min == 0 || k_min > k_max {
        return Err(ObstructError::EmptyRange { k_min, k_max });
    }
    if k_max > ceiling {
        return Err(ObstructError::AboveCeiling { k: k_max, ceiling });
    }
    let powers = spec.ring.powers(&spec.x, k_max)?;
    let rows = (k_min..=k_max)
        .map(|k| {
            let check = check_power(spec, k, &powers[k - 1])?;
            let s_max = check.is_witness().then(|| spread_bound(spec.n, k));
            Ok(ScanRow { check, s_max })
        })
        .collect::<Result<Vec<_>, ObstructError>>()?;
    Ok(ObstructionReport {
        generator_index: spec.n,
        k_min,
        k_max,
        rows,
        necessary_condition_only: spec.model.is_ty(),
        notes: spec.model.notes(),
    })
}

/// Limits for [`generator_search`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budget {
    /// Largest weight given to a witness when assembling a candidate.
    pub max_entry: u64,
    /// Number of candidates tried before giving up.
    pub max_candidates: usize,
    /// A candidate must produce a witness at every `k` in `1..=ceiling`.
    pub ceiling: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_entry: 3,
            max_candidates: 64,
            ceiling: 8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found {
        x: ObjectVector,
        /// `(invertible, simple Y)` with `g (x) F(I(Y)) != I(Y)`.
        witnesses: Vec<(usize, usize)>,
        report: ObstructionReport,
        candidates_tried: usize,
    },
    /// No object at all separates `g`: every simple is fixed, hence every `Y` by linearity.
    Blocked { g: usize },
    /// Every invertible has a witness but no candidate verified within the budget.
    BudgetExhausted {
        witnesses: Vec<(usize, usize)>,
        candidates_tried: usize,
    },
}

/// Looks for an `X` whose scan has a witness at every `k <= ceiling`.
pub fn generator_search(
    model: &CenterModel,
    ring: &FusionRing,
    f: &CenterAutoEquiv,
    budget: &Budget,
) -> Result<SearchOutcome, ObstructError> {
    if f.perm().len() != model.len() {
        return Err(ObstructError::ModelMismatch);
    }
    let mut witnesses = Vec::new();
    for &g in model.invertibles() {
        let mut found = None;
        for s in 0..ring.rank() {
            let m = model.induce(&ring.simple(s))?;
            let moved = model.act_invertible(g, &f.apply(&m)?)?;
            if !model.tracked_eq(&moved, &m) {
                found = Some(s);
                break;
            }
        }
        match found {
            Some(s) => witnesses.push((g, s)),
            None => return Ok(SearchOutcome::Blocked { g }),
        }
    }
    let mut distinct: Vec<usize> = witnesses.iter().map(|&(_, s)| s).collect();
    distinct.sort_unstable();
    distinct.dedup();

    let mut weights = vec![1u64; distinct.len()];
    let mut tried = 0;
    while tried < budget.max_candidates {
        tried += 1;
        let mut x = ring.regular();
        for (&s, &w) in distinct.iter().zip(&weights) {
            x = x.add(&ring.simple(s).scaled(w))?;
        }
        let spec = ChainSpec::new(ring.clone(), model.clone(), f.clone(), x.clone(), ring.default_cutoff())?;
        let report = scan(&spec, 1, budget.ceiling, budget.ceiling)?;
        if report.witness_count() == budget.ceiling {
            return Ok(SearchOutcome::Found {
                x,
                witnesses,
                report,
                candidates_tried: tried,
            });
        }
        if !next_weights(&mut weights, budget.max_entry) {
            break;
        }
    }
    Ok(SearchOutcome::BudgetExhausted {
        witnesses,
        candidates_tried: tried,
    })
}

/// Odometer over `{1..=max}^len`; false once every vector has been produced.
fn next_weights(w: &mut [u64], max: u64) -> bool {
    for x in w.iter_mut() {
        if *x < max {
            *x += 1;
            return true;
        }
        *x = 1;
    }
    false
}
