//! Step records shared by all solvers and their tab-separated encoding.
//!
//! Columns: `step algorithm event cardinality cost_num cost_den
//! solution_bits_hex`. Price maps use `element price_num price_den`.

use std::io::{BufRead, Write};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::solution::Solution;
use crate::weight::{Rational, Weight};

use super::PriceMap;

pub const TRACE_HEADER: &str =
    "step\talgorithm\tevent\tcardinality\tcost_num\tcost_den\tsolution_bits_hex";
pub const PRICE_HEADER: &str = "element\tprice_num\tprice_den";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TraceEvent {
    Init,
    Accept,
    Reject,
    Greedy,
    Withdrawal,
}

impl TraceEvent {
    pub fn as_str(self) -> &'static str {
        match self {
            TraceEvent::Init => "init",
            TraceEvent::Accept => "accept",
            TraceEvent::Reject => "reject",
            TraceEvent::Greedy => "greedy",
            TraceEvent::Withdrawal => "withdraw",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "init" => TraceEvent::Init,
            "accept" => TraceEvent::Accept,
            "reject" => TraceEvent::Reject,
            "greedy" => TraceEvent::Greedy,
            "withdraw" => TraceEvent::Withdrawal,
            _ => return Err(Error::Parse(format!("unknown trace event {s:?}"))),
        })
    }

    /// Whether the record's solution entered the population / became current.
    pub fn is_accepted(self) -> bool {
        !matches!(self, TraceEvent::Reject)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRecord<W> {
    pub step: u64,
    pub event: TraceEvent,
    /// `|μ|` of the parent (`None` for the initial record).
    pub parent_cardinality: Option<usize>,
    /// Covered-element count of `solution`.
    pub cardinality: usize,
    pub cost: W,
    /// The offspring (evolutionary solvers) or the selection after the step.
    pub solution: Solution,
    /// FNV-1a digest of the population after the step (0 when not tracked).
    pub digest: u64,
}

impl<W: Weight> TraceRecord<W> {
    /// Converts the cost to a rational, dividing by `scale`.
    pub fn to_rational(&self, scale: &BigInt) -> TraceRecord<Rational> {
        TraceRecord {
            step: self.step,
            event: self.event,
            parent_cardinality: self.parent_cardinality,
            cardinality: self.cardinality,
            cost: self.cost.to_rational() / Rational::from_integer(scale.clone()),
            solution: self.solution.clone(),
            digest: self.digest,
        }
    }
}

pub fn write_trace<Wr: Write>(
    out: &mut Wr,
    algorithm: &str,
    records: &[TraceRecord<Rational>],
) -> Result<()> {
    writeln!(out, "{TRACE_HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.step,
            algorithm,
            r.event.as_str(),
            r.cardinality,
            r.cost.numer(),
            r.cost.denom(),
            r.solution.to_hex()
        )?;
    }
    Ok(())
}

/// Parsed trace row; the algorithm column is kept verbatim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRow {
    pub algorithm: String,
    pub record: TraceRecord<Rational>,
}

pub fn read_trace<R: BufRead>(input: R, m: usize) -> Result<Vec<TraceRow>> {
    let mut rows = Vec::new();
    for (lineno, line) in input.lines().enumerate() {
        let line = line?;
        if lineno == 0 {
            if line.trim() != TRACE_HEADER {
                return Err(Error::Parse(format!("unexpected trace header {line:?}")));
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        let bad = |what: &str| Error::Parse(format!("trace line {}: bad {what}", lineno + 1));
        if cols.len() != 7 {
            return Err(bad("column count"));
        }
        let num: BigInt = cols[4].parse().map_err(|_| bad("cost_num"))?;
        let den: BigInt = cols[5].parse().map_err(|_| bad("cost_den"))?;
        if den == BigInt::from(0) {
            return Err(bad("cost_den"));
        }
        rows.push(TraceRow {
            algorithm: cols[1].to_string(),
            record: TraceRecord {
                step: cols[0].parse().map_err(|_| bad("step"))?,
                event: TraceEvent::parse(cols[2])?,
                parent_cardinality: None,
                cardinality: cols[3].parse().map_err(|_| bad("cardinality"))?,
                cost: Rational::new(num, den),
                solution: Solution::from_hex(cols[6], m)?,
                digest: 0,
            },
        });
    }
    Ok(rows)
}

pub fn write_prices<Wr: Write>(out: &mut Wr, prices: &PriceMap<Rational>) -> Result<()> {
    writeln!(out, "{PRICE_HEADER}")?;
    for (e, p) in prices.iter() {
        writeln!(out, "{}\t{}\t{}", e, p.numer(), p.denom())?;
    }
    Ok(())
}

pub fn read_prices<R: BufRead>(input: R, n: usize) -> Result<PriceMap<Rational>> {
    let mut entries = Vec::new();
    for (lineno, line) in input.lines().enumerate() {
        let line = line?;
        if lineno == 0 {
            if line.trim() != PRICE_HEADER {
                return Err(Error::Parse(format!("unexpected price header {line:?}")));
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let bad = || Error::Parse(format!("price line {}: {line:?}", lineno + 1));
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 3 {
            return Err(bad());
        }
        let e: usize = cols[0].parse().map_err(|_| bad())?;
        if e == 0 || e > n {
            return Err(bad());
        }
        let num: BigInt = cols[1].parse().map_err(|_| bad())?;
        let den: BigInt = cols[2].parse().map_err(|_| bad())?;
        if den == BigInt::from(0) {
            return Err(bad());
        }
        entries.push((e, Rational::new(num, den)));
    }
    Ok(PriceMap::from_entries(n, entries))
}

/// 64-bit FNV-1a, used for population digests.
#[derive(Clone, Copy, Debug)]
pub struct Fnv(u64);

impl Default for Fnv {
    fn default() -> Self {
        Fnv(0xcbf2_9ce4_8422_2325)
    }
}

impl Fnv {
    pub fn write_u64(&mut self, v: u64) {
        for b in v.to_le_bytes() {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }

    pub fn write_solution(&mut self, x: &Solution) {
        for &w in x.words() {
            self.write_u64(w as u64);
        }
    }

    pub fn finish(self) -> u64 {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::rational;

    #[test]
    fn trace_round_trip() {
        let records = vec![
            TraceRecord {
                step: 0,
                event: TraceEvent::Init,
                parent_cardinality: None,
                cardinality: 0,
                cost: rational(0, 1),
                solution: Solution::empty(5),
                digest: 0,
            },
            TraceRecord {
                step: 1,
                event: TraceEvent::Accept,
                parent_cardinality: Some(0),
                cardinality: 2,
                cost: rational(7, 3),
                solution: Solution::from_flags(&[1, 0, 0, 0, 1]),
                digest: 0,
            },
        ];
        let mut buf = Vec::new();
        write_trace(&mut buf, "gseip", &records).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.contains("1\tgseip\taccept\t2\t7\t3\t11\n"), "{text}");
        let rows = read_trace(&buf[..], 5).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[1].record.cost, rational(7, 3));
        assert_eq!(rows[1].record.solution, records[1].solution);
        assert!(read_trace(&b"bad header\n"[..], 5).is_err());
    }

    #[test]
    fn price_round_trip() {
        let prices = PriceMap::from_entries(3, vec![(1, rational(1, 2)), (3, rational(1, 1))]);
        let mut buf = Vec::new();
        write_prices(&mut buf, &prices).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "element\tprice_num\tprice_den\n1\t1\t2\n3\t1\t1\n");
        assert_eq!(read_prices(&buf[..], 3).unwrap(), prices);
        assert!(read_prices(&b"element\tprice_num\tprice_den\n4\t1\t1\n"[..], 3).is_err());
    }

    #[test]
    fn fnv_known_value() {
        // FNV-1a of eight zero bytes.
        let mut h = Fnv::default();
        h.write_u64(0);
        assert_eq!(h.finish(), 0xa8c7_f832_281a_39c5);
    }
}
