//! The scalar kernel constants of the spectral side: the Plancherel-type
//! density |c3(mu)|^{-2}, the adjustment factor k_adj, the Stade-shift
//! normalization C*(mu), the trivial-term kernel J_I(mu), and the
//! long-element leading constant K_wl(mu).

use super::gamma::{lgamma_c, recip_gamma};
use super::{AnalyticError, DeltaParam, SpectralPoint};
use num_complex::Complex64;
use std::f64::consts::PI;

fn lg(z: Complex64, factor: &str) -> Result<Complex64, AnalyticError> {
    lgamma_c(z).map_err(|_| AnalyticError::GammaPole {
        at: z,
        factor: factor.to_string(),
    })
}

/// (3 + 2 Delta)^2 - d^2, the base of the k_adj power factors. Its real
/// part stays positive whenever |Re d| < 3 + 2 Delta, so the principal
/// branch is real on the real axis and never crosses the cut there.
fn adj_base(d: Complex64, delta: f64) -> Complex64 {
    let s = 3.0 + 2.0 * delta;
    Complex64::new(s * s, 0.0) - d * d
}

/// k_adj(mu) = prod_{j<k} ((3 + 2 Delta)^2 - (mu_j - mu_k)^2)^{-Delta/2}.
pub fn k_adj(mu: &SpectralPoint, delta: &DeltaParam) -> Complex64 {
    let d = delta.get();
    mu.diffs()
        .into_iter()
        .map(|diff| adj_base(diff, d).powc(Complex64::new(-d / 2.0, 0.0)))
        .product()
}

/// |c3(mu)|^{-2} = (4/pi^2) prod_{j<k} -(pi/2)(mu_j - mu_k) tan((pi/2)(mu_j - mu_k)),
/// read as the holomorphic right-hand side.
pub fn c3_inv_sq(mu: &SpectralPoint) -> Complex64 {
    let mut acc = Complex64::new(4.0 / (PI * PI), 0.0);
    for d in mu.diffs() {
        let h = d * (PI / 2.0);
        acc *= -h * h.tan();
    }
    acc
}

/// C*(mu) = pi^{3/2} Gamma((1+Delta)/2)^{-3}
///   prod_{j<k} ((3+2Delta)^2 - (mu_j - mu_k)^2)^{Delta/2}
///             / ( Gamma((1+Delta+mu_j-mu_k)/2) Gamma((1+Delta+mu_k-mu_j)/2) ).
pub fn c_star(mu: &SpectralPoint, delta: &DeltaParam) -> Result<Complex64, AnalyticError> {
    let d = delta.get();
    let od = Complex64::new(1.0 + d, 0.0);
    let mut acc = Complex64::new(PI.powf(1.5), 0.0) * recip_gamma(od / 2.0).powi(3);
    for diff in mu.diffs() {
        acc *= adj_base(diff, d).powc(Complex64::new(d / 2.0, 0.0));
        acc *= recip_gamma((od + diff) / 2.0) * recip_gamma((od - diff) / 2.0);
    }
    Ok(acc)
}

/// J_I(mu) = prod_{j<k} -(pi/2)(mu_j - mu_k) sin((pi/2)(mu_j - mu_k)) / C*(mu).
///
/// 1/C* only contributes gammas to the numerator, so this is assembled
/// pole-free on the evaluation region.
pub fn j_i(mu: &SpectralPoint, delta: &DeltaParam) -> Result<Complex64, AnalyticError> {
    let d = delta.get();
    let od = Complex64::new(1.0 + d, 0.0);
    let mut acc = Complex64::new(PI.powf(-1.5), 0.0);
    let g_half = lg(od / 2.0, "J_I: (1 + Delta)/2")?;
    acc *= (g_half * 3.0).exp();
    for diff in mu.diffs() {
        let h = diff * (PI / 2.0);
        acc *= -h * h.sin();
        acc *= adj_base(diff, d).powc(Complex64::new(-d / 2.0, 0.0));
        acc *= (lg((od + diff) / 2.0, "J_I: (1 + Delta + mu_j - mu_k)/2")?
            + lg((od - diff) / 2.0, "J_I: (1 + Delta + mu_k - mu_j)/2")?)
        .exp();
    }
    Ok(acc)
}

/// Index pairs S = {(1,2), (1,3), (3,2)} of the K_wl product, 0-based.
const KWL_PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (2, 1)];

/// K_wl(mu) = (3 pi^{2(mu2 - mu1)} / (8 pi^{17/2}))
///   prod_{(j,k) in S} [ Gamma((1+Delta+mu_k-mu_j)/2) Gamma((1+Delta+mu_j-mu_k)/2)
///                       / ((3+2Delta)^2 - (mu_j-mu_k)^2)^{Delta/2} ]
///                     / [ Gamma((1+mu_k-mu_j)/2) Gamma((mu_k-mu_j)/2) ].
///
/// The denominator gammas enter through reciprocal gamma, so the zeros at
/// mu_k - mu_j in {0, -1, -2, ...} are exact.
pub fn k_wl(mu: &SpectralPoint, delta: &DeltaParam) -> Result<Complex64, AnalyticError> {
    let d = delta.get();
    let od = Complex64::new(1.0 + d, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let tri = mu.triple();
    let ln_front = ((mu.mu2() - mu.mu1()) * 2.0 - Complex64::new(8.5, 0.0)) * PI.ln()
        + Complex64::new((3.0f64 / 8.0).ln(), 0.0);
    let mut acc = ln_front.exp();
    for (j, k) in KWL_PAIRS {
        let diff = tri[j] - tri[k]; // mu_j - mu_k
        acc *= (lg((od - diff) / 2.0, "K_wl: (1 + Delta + mu_k - mu_j)/2")?
            + lg((od + diff) / 2.0, "K_wl: (1 + Delta + mu_j - mu_k)/2")?)
        .exp();
        acc *= adj_base(diff, d).powc(Complex64::new(-d / 2.0, 0.0));
        acc *= recip_gamma((one - diff) / 2.0) * recip_gamma(-diff / 2.0);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_symmetric(f: impl Fn(&SpectralPoint) -> Complex64, mu: &SpectralPoint) {
        let base = f(mu);
        for p in mu.permutations() {
            let v = f(&p);
            assert!(
                (v - base).norm() <= 1e-12 * (1.0 + base.norm()),
                "permutation broke symmetry: {base} vs {v}"
            );
        }
    }

    #[test]
    fn symmetric_kernels() {
        let delta = DeltaParam::default();
        let mu = SpectralPoint::new(c(0.1, 1.3), c(-0.2, -0.4));
        assert_symmetric(|m| c3_inv_sq(m), &mu);
        assert_symmetric(|m| k_adj(m, &delta), &mu);
        assert_symmetric(|m| c_star(m, &delta).unwrap(), &mu);
        assert_symmetric(|m| j_i(m, &delta).unwrap(), &mu);
    }

    #[test]
    fn k_wl_not_symmetric_but_finite() {
        let delta = DeltaParam::new(0.1).unwrap();
        let mu = SpectralPoint::new(c(-0.2, 1.0), c(0.3, -2.0));
        let v = k_wl(&mu, &delta).unwrap();
        assert!(v.norm() > 0.0 && v.norm().is_finite(), "{v}");
        // Swapping mu1 and mu2 changes the value (ordered differences).
        let swapped = SpectralPoint::new(mu.mu2(), mu.mu1());
        let w = k_wl(&swapped, &delta).unwrap();
        assert!((v - w).norm() > 1e-6 * v.norm());
    }

    #[test]
    fn k_wl_reciprocal_gamma_zeros() {
        let delta = DeltaParam::default();
        // mu2 - mu1 = 0.
        let mu = SpectralPoint::new(c(0.0, 1.0), c(0.0, 1.0));
        assert_eq!(k_wl(&mu, &delta).unwrap(), c(0.0, 0.0));
        // mu2 - mu3 in {0, -2, -4}: mu = (a, b, -a-b) with b - (-a-b) = a + 2b.
        // Dyadic coordinates keep the pole argument exactly representable.
        for gap in [0.0, -2.0, -4.0] {
            let b = c(0.0625, 0.75);
            let a = Complex64::new(gap, 0.0) - b * 2.0;
            let mu = SpectralPoint::new(a, b);
            assert_eq!(
                k_wl(&mu, &delta).unwrap(),
                c(0.0, 0.0),
                "gap {gap} should zero K_wl"
            );
        }
    }

    #[test]
    fn j_i_vanishes_at_zero() {
        let v = j_i(&SpectralPoint::zero(), &DeltaParam::default()).unwrap();
        assert_eq!(v, c(0.0, 0.0));
    }

    #[test]
    fn c3_inv_sq_positive_on_tempered_line() {
        let v = c3_inv_sq(&SpectralPoint::tempered(1.0, -1.0));
        assert!(v.im.abs() < 1e-14 && v.re > 0.0, "{v}");
    }

    #[test]
    fn j_i_over_plancherel_matches_stade_normalization() {
        // J_I = |c3|^{-2} / (Lambda(mu) Lambda(-mu) C*(mu)) would couple the
        // modules; here just pin a hand value at mu = (i, -i, 0), Delta = 0.1
        // against an independent direct evaluation of the formula.
        let delta = DeltaParam::new(0.1).unwrap();
        let mu = SpectralPoint::tempered(1.0, -1.0);
        let direct = {
            let mut num = Complex64::new(1.0, 0.0);
            for d in mu.diffs() {
                let h = d * (PI / 2.0);
                num *= -h * h.sin();
            }
            num / c_star(&mu, &delta).unwrap()
        };
        let v = j_i(&mu, &delta).unwrap();
        assert!((v - direct).norm() <= 1e-12 * (1.0 + direct.norm()));
    }
}
