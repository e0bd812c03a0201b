//! Per-element price audit against a known disjoint optimum: when `e` is
//! first covered, its price is at most `w*(e) / |M*(e) − R|`.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{ElementSet, SetCoverInstance};
use crate::solvers::trace::{TraceEvent, TraceRecord};
use crate::solvers::{CoverRun, PriceMap, StepKind};
use crate::weight::Rational;

use super::known::KnownOptimum;

/// What the audit needs from one covering step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditStep {
    pub covered_before: ElementSet,
    pub newly_covered: Vec<usize>,
    /// Withdrawal steps are reported but not checked against the bound.
    pub withdrawal: bool,
}

impl AuditStep {
    pub fn from_cover_run(run: &CoverRun<Rational>) -> Vec<AuditStep> {
        run.steps
            .iter()
            .map(|s| AuditStep {
                covered_before: s.covered_before.clone(),
                newly_covered: s.newly_covered.clone(),
                withdrawal: s.kind == StepKind::Withdrawal,
            })
            .collect()
    }

    /// Rebuilds the steps of a greedy or greedy-with-withdrawals trace from
    /// the selections recorded after each step.
    pub fn from_trace(
        inst: &SetCoverInstance<Rational>,
        records: &[TraceRecord<Rational>],
    ) -> Result<Vec<AuditStep>> {
        let mut covered = ElementSet::empty(inst.n());
        let mut steps = Vec::new();
        for r in records {
            let withdrawal = match r.event {
                TraceEvent::Init => continue,
                TraceEvent::Greedy => false,
                TraceEvent::Withdrawal => true,
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "price audits need a greedy trace, found a {} record",
                        other.as_str()
                    )))
                }
            };
            let after = inst.covered(&r.solution)?;
            if !covered.is_subset(&after) {
                return Err(Error::InvalidArgument(format!(
                    "trace step {} uncovers elements",
                    r.step
                )));
            }
            steps.push(AuditStep {
                covered_before: covered.clone(),
                newly_covered: after.difference(&covered).to_vec(),
                withdrawal,
            });
            covered = after;
        }
        Ok(steps)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PriceAuditRow {
    pub element: usize,
    #[serde(serialize_with = "crate::io::serialize_rational")]
    pub price: Rational,
    /// Index of `M*(e)` among the optimal sets.
    pub column: usize,
    /// Other uncovered elements of `M*(e)` when `e` was covered.
    pub n_e: usize,
    /// `w*(e) / (N(e) + 1)`
    #[serde(serialize_with = "crate::io::serialize_rational")]
    pub bound: Rational,
    pub audited: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PriceAuditReport {
    pub rows: Vec<PriceAuditRow>,
    /// Every audited row is within its bound.
    pub pass: bool,
    #[serde(serialize_with = "crate::io::serialize_rational")]
    pub price_total: Rational,
    #[serde(serialize_with = "crate::io::serialize_rational")]
    pub cost: Rational,
    /// `Σ price(e) = cost`
    pub identity_holds: bool,
    /// Elements covered by withdrawal steps.
    pub unaudited: usize,
}

impl PriceAuditReport {
    pub fn all_checks_pass(&self) -> bool {
        self.pass && self.identity_holds
    }

    pub const TSV_HEADER: &'static str =
        "element\tprice_num\tprice_den\tcolumn\tn_e\tbound_num\tbound_den\taudited\tpass";

    pub fn to_tsv(&self) -> String {
        let mut out = String::from(Self::TSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                r.element,
                r.price.numer(),
                r.price.denom(),
                r.column,
                r.n_e,
                r.bound.numer(),
                r.bound.denom(),
                r.audited,
                r.pass
            ));
        }
        out
    }
}

/// Audits every element's price. `cost` is the cost of the algorithm's
/// output, compared with the price total.
pub fn price_audit(
    n: usize,
    prices: &PriceMap<Rational>,
    steps: &[AuditStep],
    cost: &Rational,
    known: &KnownOptimum,
) -> Result<PriceAuditReport> {
    if known.n() != n || prices.n() != n {
        return Err(Error::InvalidArgument("audit inputs disagree on n".into()));
    }
    let mut rows = Vec::with_capacity(n);
    let mut seen = ElementSet::empty(n);
    let mut unaudited = 0;
    for s in steps {
        for &e in &s.newly_covered {
            if seen.contains(e) || s.covered_before.contains(e) {
                return Err(Error::InvalidArgument(format!("element {e} covered twice")));
            }
            seen.insert(e);
            let price = prices
                .get(e)
                .ok_or_else(|| Error::InvalidArgument(format!("element {e} is covered but unpriced")))?
                .clone();
            let column = known.column_of(e);
            let open = known.column_mask(column).difference_count(&s.covered_before);
            let n_e = open - 1;
            let bound = known.weight_of_column(e) / Rational::from_integer(open.into());
            let pass = s.withdrawal || price <= bound;
            if s.withdrawal {
                unaudited += 1;
            }
            rows.push(PriceAuditRow {
                element: e,
                price,
                column,
                n_e,
                bound,
                audited: !s.withdrawal,
                pass,
            });
        }
    }
    if !seen.is_full() {
        return Err(Error::InvalidArgument("trace does not cover every element".into()));
    }
    if let Some((e, _)) = prices.iter().find(|(e, _)| !seen.contains(*e)) {
        return Err(Error::InvalidArgument(format!("element {e} priced but never covered")));
    }
    rows.sort_by_key(|r| r.element);
    let price_total = prices.iter().fold(Rational::zero(), |a, (_, p)| a + p);
    Ok(PriceAuditReport {
        pass: rows.iter().all(|r| r.pass),
        identity_holds: price_total == *cost,
        price_total,
        cost: cost.clone(),
        rows,
        unaudited,
    })
}
