//! The smoothed long-element sum
//!
//!   Sum_{v in {+-1}^2} Sum_{c1, c2 >= 1} S_wl(psi_m, psi_{v n}, c)/(c1 c2)
//!     * f( X pi c2 |m1 n2| / c1^2,  Y pi c1 |m2 n1| / c2^2 ),
//!
//! with f a compactly supported product window. The support conditions
//! lo < arg < hi invert to a finite (c1, c2) region, enumerated exactly;
//! one exact tally table per (c1, c2) serves all four sign characters. The
//! trivial companion Sum |S_wl| |f| / (c1 c2) is accumulated alongside for
//! the cancellation ratio.

use super::window::SmoothWindow;
use super::ExperimentError;
use crate::ksums::{CharPair, ModPair, WlFastTables};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy)]
pub struct SmoothedSum {
    pub value: Complex64,
    /// Number of (c1, c2, v) tally evaluations inside the support.
    pub terms: u64,
    /// The absolute-value companion sum (Stevens-trivial route).
    pub companion: f64,
    /// |value| / companion; 0 for an empty sum.
    pub ratio: f64,
}

/// Window arguments for a modulus pair.
fn args(m: &CharPair, n: &CharPair, x: f64, y: f64, c1: u64, c2: u64) -> (f64, f64) {
    let m1n2 = (m.m1() as f64 * n.m2() as f64).abs();
    let m2n1 = (m.m2() as f64 * n.m1() as f64).abs();
    let a1 = x * PI * c2 as f64 * m1n2 / (c1 as f64 * c1 as f64);
    let a2 = y * PI * c1 as f64 * m2n1 / (c2 as f64 * c2 as f64);
    (a1, a2)
}

/// All (c1, c2) with both window arguments inside the open support.
///
/// From lo < X pi c2 |m1 n2| / c1^2 and the symmetric constraint,
/// c1^3 < (pi X |m1 n2|)^2 (pi Y |m2 n1|) / lo^3, and for each c1 the
/// admissible c2 lie in an explicit interval; candidates from the interval
/// arithmetic are refiltered by the exact conditions.
pub fn support_pairs(
    m: &CharPair,
    n: &CharPair,
    x: f64,
    y: f64,
    window: &SmoothWindow,
) -> Vec<(u64, u64)> {
    let (lo, hi) = (window.lo(), window.hi());
    if !(lo < hi) || !(lo > 0.0) || !(x > 0.0) || !(y > 0.0) {
        return Vec::new();
    }
    let m1n2 = (m.m1() as f64 * n.m2() as f64).abs();
    let m2n1 = (m.m2() as f64 * n.m1() as f64).abs();
    let px = PI * x * m1n2;
    let py = PI * y * m2n1;
    let c1_max = (px.powi(2) * py).cbrt() / lo;
    let mut pairs = Vec::new();
    for c1 in 1..=(c1_max.ceil() as u64 + 1) {
        let c1f = c1 as f64;
        // lo < px c2 / c1^2 < hi  and  lo < py c1 / c2^2 < hi.
        let lo1 = lo * c1f * c1f / px;
        let hi1 = hi * c1f * c1f / px;
        let lo2 = (py * c1f / hi).sqrt();
        let hi2 = (py * c1f / lo).sqrt();
        let from = lo1.max(lo2).floor().max(1.0) as u64;
        let to = hi1.min(hi2).ceil() as u64;
        for c2 in from..=to.max(from) {
            let (a1, a2) = args(m, n, x, y, c1, c2);
            if window.contains(a1) && window.contains(a2) {
                pairs.push((c1, c2));
            }
        }
    }
    pairs
}

pub fn smoothed_wl_sum(
    m: &CharPair,
    n: &CharPair,
    x: f64,
    y: f64,
    window: &SmoothWindow,
) -> Result<SmoothedSum, ExperimentError> {
    let pairs = support_pairs(m, n, x, y, window);
    // Per-pair contributions in parallel, merged in pair order.
    let parts: Vec<(Complex64, f64, u64)> = pairs
        .par_iter()
        .map(|&(c1, c2)| -> Result<(Complex64, f64, u64), ExperimentError> {
            let c = ModPair::new(c1, c2)?;
            let tables = WlFastTables::build(&c)?;
            let (a1, a2) = args(m, n, x, y, c1, c2);
            let weight = window.eval(a1) * window.eval(a2) / (c1 as f64 * c2 as f64);
            let mut value = Complex64::new(0.0, 0.0);
            let mut companion = 0.0;
            let mut terms = 0u64;
            for (v1, v2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let tally = tables.tally(m, &n.signed(v1, v2));
                let s = tally.value();
                value += s * weight;
                companion += s.norm() * weight;
                terms += 1;
            }
            Ok((value, companion, terms))
        })
        .collect::<Result<_, _>>()?;
    let mut value = Complex64::new(0.0, 0.0);
    let mut companion = 0.0;
    let mut terms = 0u64;
    for (v, comp, t) in parts {
        value += v;
        companion += comp;
        terms += t;
    }
    let ratio = if companion > 0.0 {
        value.norm() / companion
    } else {
        0.0
    };
    Ok(SmoothedSum {
        value,
        terms,
        companion,
        ratio,
    })
}

/// The smoothed sum across a list of scales X = Y, for slope fitting.
pub fn smoothed_series(
    m: &CharPair,
    n: &CharPair,
    scales: &[f64],
    window: &SmoothWindow,
) -> Result<Vec<(f64, SmoothedSum)>, ExperimentError> {
    scales
        .iter()
        .map(|&x| Ok((x, smoothed_wl_sum(m, n, x, x, window)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cpair(m1: i64, m2: i64) -> CharPair {
        CharPair::new(m1, m2).unwrap()
    }

    #[test]
    fn empty_support_is_exactly_zero() {
        let m = cpair(1, 1);
        // X = Y = 0.01: no lattice point satisfies both constraints.
        let s = smoothed_wl_sum(&m, &m, 0.01, 0.01, &SmoothWindow::default()).unwrap();
        assert_eq!(s.value, Complex64::new(0.0, 0.0));
        assert_eq!(s.terms, 0);
        assert_eq!(s.ratio, 0.0);
        // Inverted window: empty support at any scale.
        let s = smoothed_wl_sum(&m, &m, 16.0, 16.0, &SmoothWindow::new(2.0, 0.5)).unwrap();
        assert_eq!(s.value, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn support_enumeration_matches_brute_scan() {
        let m = cpair(1, 1);
        let n = cpair(1, 1);
        let (x, y) = (8.0, 8.0);
        let window = SmoothWindow::default();
        let fast = support_pairs(&m, &n, x, y, &window);
        let c1_bound = 2 * (2.0 * PI * (x * x * y) as f64).cbrt().ceil() as u64 * 2;
        let c2_bound = 2 * (2.0 * PI * (x * y * y) as f64).cbrt().ceil() as u64 * 2;
        let mut brute = Vec::new();
        for c1 in 1..=c1_bound {
            for c2 in 1..=c2_bound {
                let (a1, a2) = args(&m, &n, x, y, c1, c2);
                if window.contains(a1) && window.contains(a2) {
                    brute.push((c1, c2));
                }
            }
        }
        assert_eq!(fast, brute);
        assert!(!fast.is_empty());
    }

    #[test]
    fn small_scale_value() {
        let m = cpair(1, 1);
        let s = smoothed_wl_sum(&m, &m, 4.0, 4.0, &SmoothWindow::default()).unwrap();
        assert!(s.terms > 0);
        assert!(s.companion > 0.0);
        assert!(s.ratio < 1.0, "ratio {}", s.ratio);
    }
}
