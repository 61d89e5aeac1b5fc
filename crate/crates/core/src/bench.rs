//! Timing of the naive shifted Menon sum against its closed form.

use std::hint::black_box;
use std::time::{Duration, Instant};

use crate::error::Result;
use crate::identities::{menon_gcd_sum_fast, menon_gcd_sum_naive};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: u64,
    pub s: i64,
    pub naive: i64,
    pub fast: i64,
    /// Mean time per evaluation.
    pub naive_time: Duration,
    pub fast_time: Duration,
    pub equal: bool,
}

impl BenchRow {
    /// `naive_time / fast_time`, or infinity when the fast path is below
    /// timer resolution.
    pub fn speedup(&self) -> f64 {
        let fast = self.fast_time.as_secs_f64();
        if fast == 0.0 {
            f64::INFINITY
        } else {
            self.naive_time.as_secs_f64() / fast
        }
    }
}

fn mean_time(reps: u32, mut f: impl FnMut() -> Result<i64>) -> Result<(i64, Duration)> {
    let reps = reps.max(1);
    let start = Instant::now();
    let mut value = 0;
    for _ in 0..reps {
        value = black_box(f()?);
    }
    Ok((value, start.elapsed() / reps))
}

pub fn bench_row(n: u64, s: i64, reps: u32) -> Result<BenchRow> {
    let (naive, naive_time) = mean_time(reps, || menon_gcd_sum_naive(black_box(n), black_box(s)))?;
    let (fast, fast_time) = mean_time(reps, || menon_gcd_sum_fast(black_box(n), black_box(s)))?;
    Ok(BenchRow {
        n,
        s,
        naive,
        fast,
        naive_time,
        fast_time,
        equal: naive == fast,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_agree() {
        let row = bench_row(1, 0, 3).unwrap();
        assert_eq!((row.naive, row.fast), (1, 1));
        assert!(row.equal);
        let row = bench_row(10_000, 1, 1).unwrap();
        assert!(row.equal);
        assert_eq!(row.fast, 4000 * 25);
        assert!(row.speedup() > 0.0);
    }
}
