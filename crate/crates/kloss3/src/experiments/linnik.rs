//! Partial sums of classical Kloosterman sums: the 1/c-weighted Kuznetsov
//! form sum_{c <= T} S(n, m, c)/c and Linnik's unweighted
//! sum_{c <= C} S(n, m, c), sampled at geometric checkpoints.

use super::series::{GrowthRecord, GrowthSeries};
use crate::ksums::kloosterman_value;
use num_complex::Complex64;
use rayon::prelude::*;

/// Both partial-sum forms over the same run; acceptance keys on the
/// weighted one.
#[derive(Debug, Clone)]
pub struct LinnikSeries {
    pub weighted: GrowthSeries,
    pub unweighted: GrowthSeries,
}

/// Cumulative sums up to T with checkpoints at T_k = 2^k (and at T when it
/// is not itself a power of two). The slope fit is taken over checkpoints
/// with scale >= 2^10, past the pre-asymptotic range.
pub fn linnik_sum(n: i64, m: i64, t_max: f64) -> LinnikSeries {
    let t_cap = t_max.floor() as u64;
    if t_max < 1.0 {
        return LinnikSeries {
            weighted: GrowthSeries::with_fit(Vec::new()),
            unweighted: GrowthSeries::with_fit(Vec::new()),
        };
    }
    let mut checkpoints: Vec<u64> = Vec::new();
    let mut t = 1u64;
    while t <= t_cap {
        checkpoints.push(t);
        t = t.saturating_mul(2);
    }
    if *checkpoints.last().unwrap() != t_cap {
        checkpoints.push(t_cap);
    }

    // Per-modulus sums in parallel; the reduction below is sequential in c
    // so the floating accumulation order is fixed.
    let values: Vec<f64> = (1..=t_cap)
        .into_par_iter()
        .map(|c| kloosterman_value(n, m, c))
        .collect();

    let mut weighted_records = Vec::with_capacity(checkpoints.len());
    let mut unweighted_records = Vec::with_capacity(checkpoints.len());
    let mut acc_w = 0.0f64;
    let mut acc_u = 0.0f64;
    let mut next = 0usize;
    for (i, &s) in values.iter().enumerate() {
        let c = (i + 1) as u64;
        acc_w += s / c as f64;
        acc_u += s;
        while next < checkpoints.len() && checkpoints[next] == c {
            weighted_records.push(GrowthRecord::new(
                c as f64,
                Complex64::new(acc_w, 0.0),
                c,
            ));
            unweighted_records.push(GrowthRecord::new(
                c as f64,
                Complex64::new(acc_u, 0.0),
                c,
            ));
            next += 1;
        }
    }

    let fit_from = weighted_records
        .iter()
        .position(|r| r.scale >= 1024.0)
        .unwrap_or(weighted_records.len());
    let n_rec = weighted_records.len();
    LinnikSeries {
        weighted: GrowthSeries::with_fit_window(weighted_records, (fit_from, n_rec)),
        unweighted: GrowthSeries::with_fit_window(unweighted_records, (fit_from, n_rec)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_below_one() {
        let s = linnik_sum(1, 1, 0.5);
        assert!(s.weighted.records.is_empty());
        assert_eq!(s.weighted.last_value(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn first_three_terms() {
        // S(1,1,1)/1 + S(1,1,2)/2 + S(1,1,3)/3 = 1 + 1/2 - 1/3 = 7/6.
        let s = linnik_sum(1, 1, 3.0);
        let last = s.weighted.last_value();
        assert!((last.re - 7.0 / 6.0).abs() < 1e-12, "{last}");
        let lastu = s.unweighted.last_value();
        assert!((lastu.re - 1.0).abs() < 1e-12, "{lastu}");
    }

    #[test]
    fn prefix_sums_match_recomputation() {
        let s = linnik_sum(2, 3, 64.0);
        for rec in &s.weighted.records {
            let direct: f64 = (1..=rec.scale as u64)
                .map(|c| kloosterman_value(2, 3, c) / c as f64)
                .sum();
            assert!(
                (rec.value.re - direct).abs() < 1e-10 * (1.0 + direct.abs()),
                "checkpoint {}",
                rec.scale
            );
        }
    }
}
