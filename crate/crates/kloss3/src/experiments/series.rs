//! Growth series: (scale, value) records with a fitted log-log slope.

use super::ExperimentError;
use num_complex::Complex64;
use serde::Serialize;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct GrowthRecord {
    pub scale: f64,
    #[serde(skip)]
    pub value: Complex64,
    pub re: f64,
    pub im: f64,
    pub abs: f64,
    pub terms: u64,
}

impl GrowthRecord {
    pub fn new(scale: f64, value: Complex64, terms: u64) -> Self {
        GrowthRecord {
            scale,
            value,
            re: value.re,
            im: value.im,
            abs: value.norm(),
            terms,
        }
    }
}

/// Least-squares fit of log|value| against log scale.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fit in log space.
    pub residual: f64,
    /// Number of records that entered the fit (positive |value| only).
    pub used: usize,
}

/// Slope of log y against log x for the points with y > 0; needs at least
/// four of them.
pub fn fit_growth(points: &[(f64, f64)]) -> Result<FitResult, ExperimentError> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(x, y)| x > 0.0 && y > 0.0)
        .map(|&(x, y)| (x.ln(), y.ln()))
        .collect();
    if logs.len() < 4 {
        return Err(ExperimentError::FitTooFewPoints(logs.len()));
    }
    let n = logs.len() as f64;
    let sx: f64 = logs.iter().map(|p| p.0).sum();
    let sy: f64 = logs.iter().map(|p| p.1).sum();
    let sxx: f64 = logs.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = logs.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-300 {
        return Err(ExperimentError::InvalidParam(
            "all scales coincide; slope undefined".into(),
        ));
    }
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    let residual = (logs
        .iter()
        .map(|&(x, y)| {
            let r = y - (slope * x + intercept);
            r * r
        })
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(FitResult {
        slope,
        intercept,
        residual,
        used: logs.len(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthSeries {
    pub records: Vec<GrowthRecord>,
    /// Fitted slope over `fit_window`; NaN when too few positive records.
    pub fitted_slope: f64,
    /// Half-open index range of records used for the fit.
    pub fit_window: (usize, usize),
    pub residual: f64,
}

impl GrowthSeries {
    /// Assemble a series and fit the slope over records[window].
    pub fn with_fit_window(records: Vec<GrowthRecord>, window: (usize, usize)) -> Self {
        let (lo, hi) = (window.0.min(records.len()), window.1.min(records.len()));
        let pts: Vec<(f64, f64)> = records[lo..hi].iter().map(|r| (r.scale, r.abs)).collect();
        match fit_growth(&pts) {
            Ok(fit) => GrowthSeries {
                records,
                fitted_slope: fit.slope,
                fit_window: (lo, hi),
                residual: fit.residual,
            },
            Err(_) => GrowthSeries {
                records,
                fitted_slope: f64::NAN,
                fit_window: (lo, hi),
                residual: f64::NAN,
            },
        }
    }

    pub fn with_fit(records: Vec<GrowthRecord>) -> Self {
        let n = records.len();
        GrowthSeries::with_fit_window(records, (0, n))
    }

    pub fn last_value(&self) -> Complex64 {
        self.records
            .last()
            .map(|r| r.value)
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Successive differences of |partial sum| increments: |S_{k+1} - S_k|
    /// per checkpoint, for convergence monitoring of absolute series.
    pub fn increments(&self) -> Vec<f64> {
        self.records
            .windows(2)
            .map(|w| (w[1].value - w[0].value).norm())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let pts: Vec<(f64, f64)> = (1..=8).map(|k| (k as f64, (k as f64).sqrt())).collect();
        let fit = fit_growth(&pts).unwrap();
        assert!((fit.slope - 0.5).abs() < 1e-12, "slope {}", fit.slope);
        assert!(fit.residual < 1e-12);
    }

    #[test]
    fn constant_series_has_zero_slope() {
        let pts: Vec<(f64, f64)> = (1..=6).map(|k| (2f64.powi(k), 3.25)).collect();
        let fit = fit_growth(&pts).unwrap();
        assert!(fit.slope.abs() < 1e-12);
    }

    #[test]
    fn too_few_points() {
        let pts = vec![(1.0, 1.0), (2.0, 2.0), (4.0, 4.0)];
        assert!(matches!(
            fit_growth(&pts),
            Err(ExperimentError::FitTooFewPoints(3))
        ));
        // Zero values are dropped before the count.
        let pts = vec![(1.0, 0.0), (2.0, 1.0), (4.0, 2.0), (8.0, 3.0)];
        assert!(matches!(
            fit_growth(&pts),
            Err(ExperimentError::FitTooFewPoints(3))
        ));
    }
}
