//! The completed Whittaker function W*(y, mu, psi_11) as the double
//! inverse Mellin transform
//!
//!   W*(y) = -1/(16 pi^4) int_{Re(u)=(c,c)} G(u, mu)
//!           (pi y1)^{1-u1} (pi y2)^{1-u2} du,
//!
//! evaluated by trapezoidal quadrature on the two vertical lines. The
//! integrand decays like exp(-pi(|t1|+|t2|)/4) by Stirling, so a uniform
//! grid converges geometrically. The gamma data depends only on (mu,
//! contour) and is precomputed once; each (y1, y2) evaluation is then a
//! weighted double sum with the denominator gamma read off a shared
//! (t1 + t2) grid.

use super::gamma::{lgamma_c, recip_gamma};
use super::{AnalyticError, SpectralPoint};
use num_complex::Complex64;
use std::f64::consts::PI;

/// A vertical-line quadrature window: `nodes` uniform points on
/// Re(u) = real_part, Im(u) in [-half_width, half_width].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    pub real_part: f64,
    pub half_width: f64,
    pub nodes: usize,
}

impl ContourSpec {
    pub fn new(real_part: f64, half_width: f64, nodes: usize) -> Result<Self, AnalyticError> {
        if nodes < 64 {
            return Err(AnalyticError::InvalidParam(format!(
                "contour needs at least 64 nodes, got {nodes}"
            )));
        }
        if !(half_width > 0.0) {
            return Err(AnalyticError::InvalidParam(format!(
                "contour half_width must be positive, got {half_width}"
            )));
        }
        Ok(ContourSpec {
            real_part,
            half_width,
            nodes,
        })
    }

    /// Re(u) = 2 matching the Mellin pair, |Im| <= 40, spacing 1/4.
    pub fn standard() -> Self {
        ContourSpec {
            real_part: 2.0,
            half_width: 40.0,
            nodes: 321,
        }
    }

    /// Same window with twice the node density.
    pub fn doubled(&self) -> Self {
        ContourSpec {
            real_part: self.real_part,
            half_width: self.half_width,
            nodes: 2 * self.nodes - 1,
        }
    }

    fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.nodes as f64 - 1.0)
    }
}

/// Precomputed gamma tables for W*(., mu) on a fixed contour.
pub struct WhittakerEvaluator {
    contour: ContourSpec,
    ts: Vec<f64>,
    /// prod_i Gamma((c + i t_k - mu_i)/2), trapezoid weight folded in.
    a: Vec<Complex64>,
    /// prod_i Gamma((c + i t_l + mu_i)/2), trapezoid weight folded in.
    b: Vec<Complex64>,
    /// 1/Gamma(c + i s/2) on the sum grid s = t_k + t_l.
    inv_g: Vec<Complex64>,
    edge_mass: f64,
}

impl WhittakerEvaluator {
    pub fn new(mu: &SpectralPoint, contour: &ContourSpec) -> Result<Self, AnalyticError> {
        ContourSpec::new(contour.real_part, contour.half_width, contour.nodes)?;
        let c = contour.real_part;
        let required = mu.max_re().max(-mu.min_re());
        if c <= required {
            return Err(AnalyticError::ContourTooClose {
                real_part: c,
                required_gt: required,
            });
        }
        let n = contour.nodes;
        let h = contour.spacing();
        let ts: Vec<f64> = (0..n).map(|k| -contour.half_width + k as f64 * h).collect();
        let weight = |k: usize| if k == 0 || k == n - 1 { 0.5 * h } else { h };

        let mut a = Vec::with_capacity(n);
        let mut b = Vec::with_capacity(n);
        for (k, &t) in ts.iter().enumerate() {
            let u = Complex64::new(c, t);
            let mut ln_a = Complex64::new(0.0, 0.0);
            let mut ln_b = Complex64::new(0.0, 0.0);
            for m in mu.triple() {
                ln_a += lgamma_c((u - m) / 2.0).expect("contour right of poles");
                ln_b += lgamma_c((u + m) / 2.0).expect("contour right of poles");
            }
            a.push(ln_a.exp() * weight(k));
            b.push(ln_b.exp() * weight(k));
        }
        let inv_g: Vec<Complex64> = (0..2 * n - 1)
            .map(|j| {
                let s = 2.0 * (-contour.half_width) + j as f64 * h;
                recip_gamma(Complex64::new(c, s / 2.0))
            })
            .collect();

        // Mass distribution across the grid decides whether the window is
        // wide enough; the boundary ring extrapolates the truncated tail.
        let mut total = 0.0f64;
        let mut edge = 0.0f64;
        for k in 0..n {
            for l in 0..n {
                let mass = (a[k] * b[l] * inv_g[k + l]).norm();
                total += mass;
                if k == 0 || k == n - 1 || l == 0 || l == n - 1 {
                    edge += mass;
                }
            }
        }
        if edge > 1e-8 * total {
            return Err(AnalyticError::NonConvergence(format!(
                "contour half_width {} leaves tail mass ratio {:.3e}",
                contour.half_width,
                edge / total
            )));
        }
        Ok(WhittakerEvaluator {
            contour: *contour,
            ts,
            a,
            b,
            inv_g,
            edge_mass: edge,
        })
    }

    /// W*(y1, y2) together with an absolute quadrature error estimate.
    pub fn eval(&self, y1: f64, y2: f64) -> Result<(Complex64, f64), AnalyticError> {
        if !(y1 > 0.0 && y2 > 0.0) {
            return Err(AnalyticError::InvalidParam(format!(
                "whittaker needs y1, y2 > 0, got ({y1}, {y2})"
            )));
        }
        let c = self.contour.real_part;
        let n = self.ts.len();
        let l1 = (PI * y1).ln();
        let l2 = (PI * y2).ln();
        // (pi y)^{1-u} = (pi y)^{1-c} e^{-i t ln(pi y)}.
        let p1: Vec<Complex64> = self
            .ts
            .iter()
            .map(|&t| Complex64::new(0.0, -t * l1).exp())
            .collect();
        let p2: Vec<Complex64> = self
            .ts
            .iter()
            .map(|&t| Complex64::new(0.0, -t * l2).exp())
            .collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..n {
            let ak = self.a[k] * p1[k];
            let mut inner = Complex64::new(0.0, 0.0);
            for l in 0..n {
                inner += self.b[l] * p2[l] * self.inv_g[k + l];
            }
            acc += ak * inner;
        }
        let prefactor = (PI * y1).powf(1.0 - c) * (PI * y2).powf(1.0 - c) / (16.0 * PI.powi(4));
        // du = (i dt1)(i dt2) flips the leading minus sign.
        let value = acc * prefactor;
        let err = 3.0 * self.edge_mass * prefactor.abs();
        Ok((value, err))
    }

    /// W* on the full log grid y = (e^{v_i}, e^{v_j}), row-major in i.
    ///
    /// Shares the inner Mellin sum across rows: M[k][j] = sum_l b_l p2_l
    /// invG[k+l] costs O(N^2 |v|) once, then each grid point is a single
    /// O(N) dot product instead of the O(N^2) double sum.
    pub fn eval_log_grid(&self, v: &[f64]) -> Vec<Vec<Complex64>> {
        let c = self.contour.real_part;
        let n = self.ts.len();
        let ny = v.len();
        let phases: Vec<Vec<Complex64>> = v
            .iter()
            .map(|&vj| {
                let l = PI.ln() + vj;
                self.ts
                    .iter()
                    .map(|&t| Complex64::new(0.0, -t * l).exp())
                    .collect()
            })
            .collect();
        // M[k * ny + j] = sum_l b_l p2(v_j)_l invG[k+l].
        let mut m = vec![Complex64::new(0.0, 0.0); n * ny];
        for k in 0..n {
            for (j, p2) in phases.iter().enumerate() {
                let mut inner = Complex64::new(0.0, 0.0);
                for l in 0..n {
                    inner += self.b[l] * p2[l] * self.inv_g[k + l];
                }
                m[k * ny + j] = inner;
            }
        }
        let mut out = vec![vec![Complex64::new(0.0, 0.0); ny]; ny];
        for (i, p1) in phases.iter().enumerate() {
            let q: Vec<Complex64> = (0..n).map(|k| self.a[k] * p1[k]).collect();
            for j in 0..ny {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += q[k] * m[k * ny + j];
                }
                let prefactor = (PI * v[i].exp()).powf(1.0 - c) * (PI * v[j].exp()).powf(1.0 - c)
                    / (16.0 * PI.powi(4));
                out[i][j] = acc * prefactor;
            }
        }
        out
    }
}

/// One-shot W*(y, mu) on the given contour.
pub fn whittaker(
    y1: f64,
    y2: f64,
    mu: &SpectralPoint,
    contour: &ContourSpec,
) -> Result<(Complex64, f64), AnalyticError> {
    WhittakerEvaluator::new(mu, contour)?.eval(y1, y2)
}
