//! Non-negligible paths: a sequence of jumps from `x^∅` to a feasible
//! selection, each flipping at most `c` bits, paying at most `r_i·OPT`,
//! and strictly raising the isolation cardinality.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::SetCoverInstance;
use crate::isolation::IsolationFunction;
use crate::solution::Solution;
use crate::solvers::{CoverRun, StepKind};
use crate::weight::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathStep {
    pub y_plus: Solution,
    pub y_minus: Solution,
}

/// A path with one ratio per step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathCertificate {
    pub steps: Vec<PathStep>,
    pub gap: usize,
    pub ratios: Vec<Rational>,
    pub opt_value: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    /// `1 <= |y+| + |y-| <= c`
    JumpSize,
    /// `f(x ∪ y+ − y-) − f(x) <= r_i·OPT`
    CostIncrease,
    /// Isolation cardinality strictly increases until it reaches `q`.
    Progress,
    /// Malformed step: `y-` not contained in the current selection, or a
    /// length or ratio count mismatch.
    Structure,
    /// The path ends before reaching a feasible selection.
    Incomplete,
}

impl Condition {
    pub fn describe(self) -> &'static str {
        match self {
            Condition::JumpSize => "condition 1 (jump size)",
            Condition::CostIncrease => "condition 2 (cost increase)",
            Condition::Progress => "condition 3 (isolation progress)",
            Condition::Structure => "structural",
            Condition::Incomplete => "incomplete path",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Zero-based step index (the step count for [`Condition::Incomplete`]).
    pub step: usize,
    pub condition: Condition,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    pub violation: Option<Violation>,
    /// `Σ r_i`, the approximation bound the path certifies.
    pub ratio_sum: Rational,
    /// Selection reached after the last checked step.
    pub final_solution: Solution,
    pub final_cost: Rational,
    /// `f(final)/OPT` when the path was accepted.
    pub final_ratio: Option<Rational>,
}

impl CertificateReport {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }

    /// An accepted path must land on a cover whose ratio is at most `Σ r_i`.
    pub fn is_sound(&self) -> bool {
        match &self.final_ratio {
            Some(r) => *r <= self.ratio_sum,
            None => !self.is_valid(),
        }
    }
}

/// Replays the path from `x^∅` and reports the first violated condition.
pub fn check_path_certificate(
    inst: &SetCoverInstance<Rational>,
    cert: &PathCertificate,
    iso: &IsolationFunction,
) -> Result<CertificateReport> {
    if cert.steps.is_empty() {
        return Err(Error::InvalidArgument("certificate has no steps".into()));
    }
    if cert.opt_value <= Rational::zero() {
        return Err(Error::InvalidArgument("certificate optimum must be positive".into()));
    }
    let ratio_sum = cert.ratios.iter().fold(Rational::zero(), |a, r| a + r);
    let mut x = inst.empty_solution();
    let mut cost = Rational::zero();
    let mut card = 0usize;
    let q = iso.q();
    let fail = |x: Solution, cost: Rational, step: usize, condition: Condition, detail: String| {
        Ok(CertificateReport {
            violation: Some(Violation {
                step,
                condition,
                detail,
            }),
            ratio_sum: ratio_sum.clone(),
            final_solution: x,
            final_cost: cost,
            final_ratio: None,
        })
    };
    if cert.ratios.len() != cert.steps.len() {
        return fail(
            x,
            cost,
            0,
            Condition::Structure,
            format!("{} ratios for {} steps", cert.ratios.len(), cert.steps.len()),
        );
    }
    for (i, (step, r)) in cert.steps.iter().zip(&cert.ratios).enumerate() {
        if step.y_plus.len() != inst.m() || step.y_minus.len() != inst.m() {
            return fail(x, cost, i, Condition::Structure, "step length differs from m".into());
        }
        if !step.y_minus.is_subset(&x) {
            return fail(x, cost, i, Condition::Structure, "y- is not part of the current selection".into());
        }
        let size = step.y_plus.count() + step.y_minus.count();
        if size == 0 || size > cert.gap {
            return fail(
                x,
                cost,
                i,
                Condition::JumpSize,
                format!("|y+| + |y-| = {size}, gap c = {}", cert.gap),
            );
        }
        if card >= q {
            return fail(x, cost, i, Condition::Progress, "step after reaching a feasible selection".into());
        }
        let next = x.union(&step.y_plus).difference(&step.y_minus);
        let next_cost = inst.cost(&next)?;
        let increase = &next_cost - &cost;
        let allowed = r * &cert.opt_value;
        if increase > allowed {
            return fail(
                x,
                cost,
                i,
                Condition::CostIncrease,
                format!("cost increase {increase} exceeds r·OPT = {allowed}"),
            );
        }
        let next_card = iso.cardinality(inst, &next)?;
        if next_card <= card {
            return fail(
                x,
                cost,
                i,
                Condition::Progress,
                format!("isolation cardinality {card} -> {next_card}"),
            );
        }
        x = next;
        cost = next_cost;
        card = next_card;
    }
    if card < q {
        return fail(x, cost, cert.steps.len(), Condition::Incomplete, format!("ends at cardinality {card} < {q}"));
    }
    let final_ratio = Some(&cost / &cert.opt_value);
    Ok(CertificateReport {
        violation: None,
        ratio_sum,
        final_solution: x,
        final_cost: cost,
        final_ratio,
    })
}

/// Turns a greedy (or greedy-with-withdrawals) run into a path: each step
/// adds its chosen sets and drops the withdrawn one, with `r_i` the step's
/// cost increase over OPT. Plain greedy runs give gap 1.
pub fn certificate_from_cover_run(
    inst: &SetCoverInstance<Rational>,
    run: &CoverRun<Rational>,
    opt: &Rational,
) -> Result<PathCertificate> {
    if *opt <= Rational::zero() {
        return Err(Error::InvalidArgument("optimum must be positive".into()));
    }
    let m = inst.m();
    let mut steps = Vec::with_capacity(run.steps.len());
    let mut ratios = Vec::with_capacity(run.steps.len());
    let mut gap = 1;
    let mut before = Rational::zero();
    for s in &run.steps {
        let y_plus = Solution::from_indices(m, s.added.iter().copied());
        let y_minus = Solution::from_indices(m, s.removed);
        debug_assert!(s.kind == StepKind::Withdrawal || s.removed.is_none());
        gap = gap.max(y_plus.count() + y_minus.count());
        ratios.push((&s.cost - &before) / opt);
        before = s.cost.clone();
        steps.push(PathStep { y_plus, y_minus });
    }
    Ok(PathCertificate {
        steps,
        gap,
        ratios,
        opt_value: opt.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::instance_from_pairs;
    use crate::solvers::greedy_solve;
    use crate::weight::{integer, rational};

    fn e1() -> SetCoverInstance<Rational> {
        instance_from_pairs(
            3,
            "E1",
            &[(&[1, 2], integer(1)), (&[3], integer(1)), (&[1, 2, 3], rational(5, 2))],
        )
        .unwrap()
    }

    fn step(plus: &[usize], minus: &[usize]) -> PathStep {
        PathStep {
            y_plus: Solution::from_indices(3, plus.iter().copied()),
            y_minus: Solution::from_indices(3, minus.iter().copied()),
        }
    }

    #[test]
    fn e1_path_is_valid() {
        let inst = e1();
        let iso = IsolationFunction::covered_elements(&inst);
        let cert = PathCertificate {
            steps: vec![step(&[0], &[]), step(&[1], &[])],
            gap: 1,
            ratios: vec![rational(1, 2), rational(1, 2)],
            opt_value: integer(2),
        };
        let report = check_path_certificate(&inst, &cert, &iso).unwrap();
        assert!(report.is_valid(), "{:?}", report.violation);
        assert_eq!(report.ratio_sum, integer(1));
        assert_eq!(report.final_ratio, Some(integer(1)));
        assert!(report.is_sound());
    }

    #[test]
    fn empty_step_breaks_condition_one() {
        let inst = e1();
        let iso = IsolationFunction::covered_elements(&inst);
        let cert = PathCertificate {
            steps: vec![step(&[], &[]), step(&[2], &[])],
            gap: 1,
            ratios: vec![rational(1, 2), rational(5, 4)],
            opt_value: integer(2),
        };
        let v = check_path_certificate(&inst, &cert, &iso).unwrap().violation.unwrap();
        assert_eq!((v.step, v.condition), (0, Condition::JumpSize));
    }

    #[test]
    fn other_violations() {
        let inst = e1();
        let iso = IsolationFunction::covered_elements(&inst);
        let cert = |steps, ratios| PathCertificate {
            steps,
            gap: 1,
            ratios,
            opt_value: integer(2),
        };
        let check = |c: &PathCertificate| check_path_certificate(&inst, c, &iso).unwrap().violation.unwrap().condition;
        // ratio too small for the cost of S3
        assert_eq!(check(&cert(vec![step(&[2], &[])], vec![rational(1, 2)])), Condition::CostIncrease);
        // removing a set that is not there
        assert_eq!(check(&cert(vec![step(&[], &[0])], vec![integer(1)])), Condition::Structure);
        // S1 then S1 again (removal) drops cardinality
        assert_eq!(
            check(&cert(vec![step(&[0], &[]), step(&[], &[0])], vec![integer(1), integer(1)])),
            Condition::Progress
        );
        assert_eq!(check(&cert(vec![step(&[0], &[])], vec![integer(1)])), Condition::Incomplete);
    }

    #[test]
    fn greedy_run_converts() {
        let inst = e1();
        let iso = IsolationFunction::covered_elements(&inst);
        let run = greedy_solve(&inst);
        let cert = certificate_from_cover_run(&inst, &run, &integer(2)).unwrap();
        assert_eq!(cert.gap, 1);
        assert_eq!(cert.ratios, vec![rational(1, 2), rational(1, 2)]);
        assert!(check_path_certificate(&inst, &cert, &iso).unwrap().is_valid());
    }
}
