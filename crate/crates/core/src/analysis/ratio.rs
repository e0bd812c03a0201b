use num_traits::Zero;

use crate::error::{Error, Result};
use crate::instance::SetCoverInstance;
use crate::isolation::IsolationFunction;
use crate::solution::Solution;
use crate::weight::Rational;

/// `cost / opt`, exactly.
pub fn approximation_ratio(cost: &Rational, opt: &Rational) -> Result<Rational> {
    if *opt <= Rational::zero() {
        return Err(Error::InvalidArgument("optimum must be positive".into()));
    }
    Ok(cost / opt)
}

/// Reference value `L(j)` for every isolation cardinality `j` in `0..=q`.
/// Depends on the cardinality only, with `L(0) = 0`, `L(q) = OPT`, and
/// non-decreasing in between.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialReference {
    opt_value: Rational,
    profile: Vec<Rational>,
}

impl PartialReference {
    pub fn from_profile(profile: Vec<Rational>) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidArgument(format!("partial reference: {msg}"));
        if profile.len() < 2 {
            return Err(bad("q must be at least 1"));
        }
        if !profile[0].is_zero() {
            return Err(bad("L(0) must be 0"));
        }
        if profile.windows(2).any(|w| w[1] < w[0]) {
            return Err(bad("profile must be non-decreasing"));
        }
        let opt_value = profile.last().cloned().expect("nonempty");
        if opt_value <= Rational::zero() {
            return Err(bad("L(q) must be positive"));
        }
        Ok(Self { opt_value, profile })
    }

    pub fn q(&self) -> usize {
        self.profile.len() - 1
    }

    pub fn opt_value(&self) -> &Rational {
        &self.opt_value
    }

    /// `L(j)`
    pub fn value(&self, j: usize) -> &Rational {
        &self.profile[j]
    }

    pub fn profile(&self) -> &[Rational] {
        &self.profile
    }
}

/// `L(j) = opt·j/q`.
pub fn make_linear_reference(q: usize, opt: &Rational) -> Result<PartialReference> {
    if q == 0 {
        return Err(Error::InvalidArgument("q must be at least 1".into()));
    }
    let q_r = Rational::from_integer(q.into());
    PartialReference::from_profile(
        (0..=q)
            .map(|j| opt * Rational::from_integer(j.into()) / &q_r)
            .collect(),
    )
}

/// Diagnostic profile for tiny instances under the covered-elements
/// isolation: `L(j)` is the cheapest sub-selection of the optimal sets
/// covering at least `j` elements. Enumerates all `2^|opt|` sub-selections.
pub fn prefix_reference(
    inst: &SetCoverInstance<Rational>,
    optimum: &Solution,
) -> Result<PartialReference> {
    let chosen: Vec<usize> = optimum.ones().collect();
    if chosen.len() > 20 {
        return Err(Error::InvalidArgument(
            "prefix reference needs at most 20 optimal sets".into(),
        ));
    }
    if !inst.is_feasible(optimum)? {
        return Err(Error::InvalidArgument("optimum is not a cover".into()));
    }
    let n = inst.n();
    let mut best: Vec<Option<Rational>> = vec![None; n + 1];
    for sub in 0u32..(1 << chosen.len()) {
        let x = Solution::from_indices(
            inst.m(),
            chosen.iter().enumerate().filter(|(b, _)| sub >> b & 1 == 1).map(|(_, &i)| i),
        );
        let c = inst.covered(&x)?.len();
        let cost = inst.cost(&x)?;
        if best[c].as_ref().map_or(true, |b| cost < *b) {
            best[c] = Some(cost);
        }
    }
    // Covering at least j: suffix minimum.
    let mut profile = vec![Rational::zero(); n + 1];
    let mut running: Option<Rational> = None;
    for j in (0..=n).rev() {
        if let Some(c) = &best[j] {
            if running.as_ref().map_or(true, |r| c < r) {
                running = Some(c.clone());
            }
        }
        profile[j] = running.clone().expect("the full optimum covers n");
    }
    PartialReference::from_profile(profile)
}

fn check_reference(reference: &PartialReference, iso: &IsolationFunction) -> Result<()> {
    if reference.q() != iso.q() {
        return Err(Error::InvalidArgument(format!(
            "reference built for q = {}, isolation has q = {}",
            reference.q(),
            iso.q()
        )));
    }
    Ok(())
}

/// `f(x) / L(|μ(x)|)`. The empty selection gets 0 by convention, since
/// both numerator and denominator vanish there.
pub fn partial_ratio(
    inst: &SetCoverInstance<Rational>,
    x: &Solution,
    reference: &PartialReference,
    iso: &IsolationFunction,
) -> Result<Rational> {
    check_reference(reference, iso)?;
    let cost = inst.cost(x)?;
    if x.count() == 0 {
        return Ok(Rational::zero());
    }
    let l = reference.value(iso.cardinality(inst, x)?);
    if l.is_zero() {
        return Err(Error::ZeroDenominator("L(|μ(x)|) is 0 for a nonempty selection".into()));
    }
    Ok(cost / l)
}

/// `(f(x ∪ y) − f(x)) / (L(|μ(x ∪ y)|) − L(|μ(x)|))`.
pub fn conditional_partial_ratio(
    inst: &SetCoverInstance<Rational>,
    x: &Solution,
    y: &Solution,
    reference: &PartialReference,
    iso: &IsolationFunction,
) -> Result<Rational> {
    check_reference(reference, iso)?;
    let xy = x.union(y);
    let num = inst.cost(&xy)? - inst.cost(x)?;
    let den = reference.value(iso.cardinality(inst, &xy)?) - reference.value(iso.cardinality(inst, x)?);
    if den <= Rational::zero() {
        return Err(Error::ZeroDenominator("y adds no isolation cardinality to x".into()));
    }
    Ok(num / den)
}

/// Convenience: the ratio of a feasible selection, `None` when infeasible.
pub fn feasible_ratio(
    inst: &SetCoverInstance<Rational>,
    x: &Solution,
    opt: &Rational,
) -> Result<Option<Rational>> {
    if !inst.is_feasible(x)? {
        return Ok(None);
    }
    approximation_ratio(&inst.cost(x)?, opt).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::instance_from_pairs;
    use crate::weight::{integer, rational};

    fn e1() -> SetCoverInstance<Rational> {
        instance_from_pairs(
            3,
            "E1",
            &[(&[1, 2], integer(1)), (&[3], integer(1)), (&[1, 2, 3], rational(5, 2))],
        )
        .unwrap()
    }

    #[test]
    fn ratios() {
        assert_eq!(approximation_ratio(&integer(3), &integer(2)).unwrap(), rational(3, 2));
        assert_eq!(approximation_ratio(&integer(2), &integer(2)).unwrap(), integer(1));
        assert!(approximation_ratio(&integer(1), &integer(0)).is_err());
    }

    #[test]
    fn linear_profile() {
        let r = make_linear_reference(3, &integer(2)).unwrap();
        assert_eq!(r.profile(), &[integer(0), rational(2, 3), rational(4, 3), integer(2)]);
    }

    #[test]
    fn e1_partial_ratios() {
        let inst = e1();
        let iso = IsolationFunction::covered_elements(&inst);
        let r = make_linear_reference(3, &integer(2)).unwrap();
        let s2 = Solution::from_flags(&[0, 1, 0]);
        let s1 = Solution::from_flags(&[1, 0, 0]);
        assert_eq!(partial_ratio(&inst, &s2, &r, &iso).unwrap(), rational(3, 2));
        assert_eq!(partial_ratio(&inst, &Solution::empty(3), &r, &iso).unwrap(), integer(0));
        assert_eq!(conditional_partial_ratio(&inst, &s2, &s1, &r, &iso).unwrap(), rational(3, 4));
        // Conditioning on x^∅ is the unconditional ratio.
        assert_eq!(
            conditional_partial_ratio(&inst, &Solution::empty(3), &s1, &r, &iso).unwrap(),
            partial_ratio(&inst, &s1, &r, &iso).unwrap()
        );
        assert!(matches!(
            conditional_partial_ratio(&inst, &s1.union(&s2), &s2, &r, &iso),
            Err(Error::ZeroDenominator(_))
        ));
        let full = Solution::from_flags(&[0, 0, 1]);
        assert_eq!(partial_ratio(&inst, &full, &r, &iso).unwrap(), rational(5, 4));
    }

    #[test]
    fn prefix_profile_of_e1() {
        let inst = e1();
        let r = prefix_reference(&inst, &Solution::from_flags(&[1, 1, 0])).unwrap();
        assert_eq!(r.profile(), &[integer(0), integer(1), integer(1), integer(2)]);
    }
}
