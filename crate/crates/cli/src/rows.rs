use seip_core::weight::{decimal_string, format_rational};
use seip_core::Rational;

pub const RESULT_HEADER: &str =
    "instance\talgorithm\tseed\tsteps_used\tcost\topt\tratio\tratio_decimal\tfeasible\tstatus\twall_ms";

/// One solver run. Rationals are written as `p/q`; absent values as `-`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResultRow {
    pub instance: String,
    pub algorithm: String,
    pub seed: Option<u64>,
    pub steps_used: u64,
    pub cost: Option<Rational>,
    pub opt: Option<Rational>,
    /// `ok`, `failed: ...` or `skipped`.
    pub status: String,
    pub wall_ms: u128,
}

fn or_dash(v: Option<String>) -> String {
    v.unwrap_or_else(|| "-".into())
}

impl ResultRow {
    pub fn feasible(&self) -> bool {
        self.cost.is_some()
    }

    /// `cost / opt`, present iff both are.
    pub fn ratio(&self) -> Option<Rational> {
        match (&self.cost, &self.opt) {
            (Some(c), Some(o)) => Some(c / o),
            _ => None,
        }
    }

    pub fn to_tsv(&self) -> String {
        let ratio = self.ratio();
        [
            self.instance.clone(),
            self.algorithm.clone(),
            or_dash(self.seed.map(|s| s.to_string())),
            self.steps_used.to_string(),
            or_dash(self.cost.as_ref().map(format_rational)),
            or_dash(self.opt.as_ref().map(format_rational)),
            or_dash(ratio.as_ref().map(format_rational)),
            or_dash(ratio.as_ref().map(|r| decimal_string(r, 15))),
            self.feasible().to_string(),
            self.status.clone(),
            self.wall_ms.to_string(),
        ]
        .join("\t")
    }
}

pub const SUMMARY_HEADER: &str =
    "instance\talgorithm\truns\tfeasible\tmin_ratio\tmedian_ratio\tmax_ratio\tthreshold\tsuccesses\tsuccess_fraction";

/// Aggregate over the rows of one algorithm on one instance. The median of an even count
/// is the lower of the two middle values, so it stays an exact ratio of
/// the data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summary {
    pub instance: String,
    pub algorithm: String,
    pub runs: usize,
    pub feasible: usize,
    pub min_ratio: Option<Rational>,
    pub median_ratio: Option<Rational>,
    pub max_ratio: Option<Rational>,
    pub threshold: Option<Rational>,
    /// Feasible runs with ratio at most the threshold.
    pub successes: Option<usize>,
}

impl Summary {
    pub fn of(
        instance: &str,
        algorithm: &str,
        rows: &[&ResultRow],
        threshold: Option<&Rational>,
    ) -> Self {
        let mut ratios: Vec<Rational> = rows.iter().filter_map(|r| r.ratio()).collect();
        ratios.sort();
        let successes = threshold.map(|t| ratios.iter().filter(|r| *r <= t).count());
        Self {
            instance: instance.to_string(),
            algorithm: algorithm.to_string(),
            runs: rows.len(),
            feasible: rows.iter().filter(|r| r.feasible()).count(),
            min_ratio: ratios.first().cloned(),
            median_ratio: (!ratios.is_empty()).then(|| ratios[(ratios.len() - 1) / 2].clone()),
            max_ratio: ratios.last().cloned(),
            threshold: threshold.cloned(),
            successes,
        }
    }

    pub fn success_fraction(&self) -> Option<Rational> {
        self.successes
            .filter(|_| self.runs > 0)
            .map(|s| Rational::new(s.into(), self.runs.into()))
    }

    pub fn to_tsv(&self) -> String {
        let fmt = |r: &Option<Rational>| or_dash(r.as_ref().map(format_rational));
        let fraction = self.success_fraction();
        [
            self.instance.clone(),
            self.algorithm.clone(),
            self.runs.to_string(),
            self.feasible.to_string(),
            fmt(&self.min_ratio),
            fmt(&self.median_ratio),
            fmt(&self.max_ratio),
            fmt(&self.threshold),
            or_dash(self.successes.map(|s| s.to_string())),
            or_dash(fraction.map(|f| decimal_string(&f, 15))),
        ]
        .join("\t")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use seip_core::weight::{integer, rational};

    fn row(cost: Option<Rational>) -> ResultRow {
        ResultRow {
            instance: "I".into(),
            algorithm: "greedy".into(),
            seed: None,
            steps_used: 3,
            cost,
            opt: Some(rational(11, 10)),
            status: "ok".into(),
            wall_ms: 0,
        }
    }

    #[test]
    fn row_format() {
        let r = row(Some(rational(3, 2)));
        assert_eq!(
            r.to_tsv(),
            "I\tgreedy\t-\t3\t3/2\t11/10\t15/11\t1.36363636363636\ttrue\tok\t0"
        );
        assert_eq!(
            row(None).to_tsv(),
            "I\tgreedy\t-\t3\t-\t11/10\t-\t-\tfalse\tok\t0"
        );
        assert_eq!(
            RESULT_HEADER.split('\t').count(),
            r.to_tsv().split('\t').count()
        );
    }

    #[test]
    fn summary_statistics() {
        let rows = [
            row(Some(integer(2))),
            row(Some(rational(11, 10))),
            row(None),
            row(Some(rational(3, 2))),
        ];
        let refs: Vec<&ResultRow> = rows.iter().collect();
        let s = Summary::of("I", "greedy", &refs, Some(&rational(3, 2)));
        assert_eq!(s.feasible, 3);
        assert_eq!(s.min_ratio, Some(integer(1)));
        assert_eq!(s.median_ratio, Some(rational(15, 11)));
        assert_eq!(s.successes, Some(2));
        assert_eq!(s.success_fraction(), Some(rational(1, 2)));
    }
}
