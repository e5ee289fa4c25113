//! The G-function of the Whittaker double Mellin transform pair,
//!
//!   G(u, mu) = prod_i Gamma((u1 - mu_i)/2) Gamma((u2 + mu_i)/2)
//!              / Gamma((u1 + u2)/2),
//!
//! its completion G*(u, mu) = G(u, mu)/Lambda(mu), and the closed forms of
//! the residues of G* at u1 = mu1 (left), -u2 = mu2 (right), and both
//! (double). All gamma ratios are assembled as exp of lgamma differences.

use super::gamma::{lgamma_c, recip_gamma};
use super::{AnalyticError, MellinPoint, SpectralPoint};
use num_complex::Complex64;
use std::f64::consts::PI;

fn lg(z: Complex64, factor: &str) -> Result<Complex64, AnalyticError> {
    lgamma_c(z).map_err(|_| AnalyticError::GammaPole {
        at: z,
        factor: factor.to_string(),
    })
}

fn half(z: Complex64) -> Complex64 {
    z / 2.0
}

/// log of the completed Whittaker prefactor
/// Lambda(mu) = pi^{-3/2 + mu3 - mu1} Gamma((1 + mu1 - mu2)/2)
///              Gamma((1 + mu1 - mu3)/2) Gamma((1 + mu2 - mu3)/2).
fn ln_big_lambda(mu: &SpectralPoint) -> Result<Complex64, AnalyticError> {
    let [d12, d13, d23] = mu.diffs();
    let one = Complex64::new(1.0, 0.0);
    let ln_pi_pow = (Complex64::new(-1.5, 0.0) + mu.mu3() - mu.mu1()) * PI.ln();
    Ok(ln_pi_pow
        + lg(half(one + d12), "Lambda: (1 + mu1 - mu2)/2")?
        + lg(half(one + d13), "Lambda: (1 + mu1 - mu3)/2")?
        + lg(half(one + d23), "Lambda: (1 + mu2 - mu3)/2")?)
}

pub fn big_lambda(mu: &SpectralPoint) -> Result<Complex64, AnalyticError> {
    Ok(ln_big_lambda(mu)?.exp())
}

/// log of the numerator gamma product of G(u, mu).
fn ln_g_numerator(u: &MellinPoint, mu: &SpectralPoint) -> Result<Complex64, AnalyticError> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, m) in mu.triple().into_iter().enumerate() {
        acc += lg(half(u.u1 - m), &format!("G: (u1 - mu{})/2", i + 1))?;
        acc += lg(half(u.u2 + m), &format!("G: (u2 + mu{})/2", i + 1))?;
    }
    Ok(acc)
}

/// G(u, mu). A pole of the denominator gamma is a zero of G, handled
/// exactly through the reciprocal gamma.
pub fn g_fn(u: &MellinPoint, mu: &SpectralPoint) -> Result<Complex64, AnalyticError> {
    Ok(ln_g_numerator(u, mu)?.exp() * recip_gamma(half(u.u1 + u.u2)))
}

/// G*(u, mu) = G(u, mu) / Lambda(mu), evaluated as one exponential.
pub fn g_star(u: &MellinPoint, mu: &SpectralPoint) -> Result<Complex64, AnalyticError> {
    let ln_num = ln_g_numerator(u, mu)?;
    let ln_lambda = ln_big_lambda(mu)?;
    Ok((ln_num - ln_lambda).exp() * recip_gamma(half(u.u1 + u.u2)))
}

/// Shared prefactor 2 pi^{3/2 + mu1 - mu3} of the residues, as a log.
fn ln_residue_prefactor(mu: &SpectralPoint) -> Complex64 {
    (Complex64::new(1.5, 0.0) + mu.mu1() - mu.mu3()) * PI.ln() + Complex64::new(2f64.ln(), 0.0)
}

/// Residue of G*(u, mu) at u1 = mu1, a function of the remaining u2.
pub fn g_star_residue_left(
    u2: Complex64,
    mu: &SpectralPoint,
) -> Result<Complex64, AnalyticError> {
    let [d12, d13, d23] = mu.diffs();
    let one = Complex64::new(1.0, 0.0);
    let ln = ln_residue_prefactor(mu)
        + lg(half(d12), "G*_l: (mu1 - mu2)/2")?
        + lg(half(d13), "G*_l: (mu1 - mu3)/2")?
        - lg(half(one + d12), "G*_l: (1 + mu1 - mu2)/2")?
        - lg(half(one + d13), "G*_l: (1 + mu1 - mu3)/2")?
        + lg(half(u2 + mu.mu2()), "G*_l: (u2 + mu2)/2")?
        + lg(half(u2 + mu.mu3()), "G*_l: (u2 + mu3)/2")?
        - lg(half(one + d23), "G*_l: (1 + mu2 - mu3)/2")?;
    Ok(ln.exp())
}

/// Residue of G*(u, mu) at -u2 = mu2, a function of the remaining u1.
pub fn g_star_residue_right(
    u1: Complex64,
    mu: &SpectralPoint,
) -> Result<Complex64, AnalyticError> {
    let [d12, d13, d23] = mu.diffs();
    let one = Complex64::new(1.0, 0.0);
    let ln = ln_residue_prefactor(mu)
        + lg(half(d12), "G*_r: (mu1 - mu2)/2")?
        + lg(half(-d23), "G*_r: (mu3 - mu2)/2")?
        - lg(half(one + d12), "G*_r: (1 + mu1 - mu2)/2")?
        - lg(half(one + d23), "G*_r: (1 + mu2 - mu3)/2")?
        + lg(half(u1 - mu.mu1()), "G*_r: (u1 - mu1)/2")?
        + lg(half(u1 - mu.mu3()), "G*_r: (u1 - mu3)/2")?
        - lg(half(one + d13), "G*_r: (1 + mu1 - mu3)/2")?;
    Ok(ln.exp())
}

/// Double residue of G*(u, mu) at u1 = mu1, -u2 = mu2.
pub fn g_star_residue_double(mu: &SpectralPoint) -> Result<Complex64, AnalyticError> {
    let [d12, d13, d23] = mu.diffs();
    let one = Complex64::new(1.0, 0.0);
    let ln = ln_residue_prefactor(mu)
        + Complex64::new(2f64.ln(), 0.0)
        + lg(half(d12), "G*_b: (mu1 - mu2)/2")?
        + lg(half(d13), "G*_b: (mu1 - mu3)/2")?
        + lg(half(-d23), "G*_b: (mu3 - mu2)/2")?
        - lg(half(one + d12), "G*_b: (1 + mu1 - mu2)/2")?
        - lg(half(one + d13), "G*_b: (1 + mu1 - mu3)/2")?
        - lg(half(one + d23), "G*_b: (1 + mu2 - mu3)/2")?;
    Ok(ln.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lambda_at_zero_is_one() {
        let v = big_lambda(&SpectralPoint::zero()).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-13, "{v}");
    }

    #[test]
    fn lambda_pole() {
        // mu1 - mu2 = -1 puts the first gamma at 0.
        let mu = SpectralPoint::new(c(-0.5, 0.0), c(0.5, 0.0));
        assert!(matches!(
            big_lambda(&mu),
            Err(AnalyticError::GammaPole { .. })
        ));
    }

    #[test]
    fn lambda_direct_product_at_generic_point() {
        // Cross-check against the literal formula assembled from gamma_c.
        use super::super::gamma_c;
        let mu = SpectralPoint::tempered(1.0, -1.0);
        let [d12, d13, d23] = mu.diffs();
        let direct = ((Complex64::new(-1.5, 0.0) + mu.mu3() - mu.mu1())
            * std::f64::consts::PI.ln())
        .exp()
            * gamma_c((c(1.0, 0.0) + d12) / 2.0).unwrap()
            * gamma_c((c(1.0, 0.0) + d13) / 2.0).unwrap()
            * gamma_c((c(1.0, 0.0) + d23) / 2.0).unwrap();
        let v = big_lambda(&mu).unwrap();
        assert!((v - direct).norm() < 1e-12 * (1.0 + direct.norm()));
    }

    #[test]
    fn g_at_two_two_zero_is_one() {
        let v = g_fn(&MellinPoint::real(2.0, 2.0), &SpectralPoint::zero()).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-13, "{v}");
    }

    #[test]
    fn g_permutation_symmetric() {
        let u = MellinPoint::new(c(1.3, 0.4), c(0.8, -0.2));
        let mu = SpectralPoint::new(c(0.1, 2.0), c(-0.3, -1.0));
        let base = g_fn(&u, &mu).unwrap();
        for p in mu.permutations() {
            let v = g_fn(&u, &p).unwrap();
            assert!((v - base).norm() <= 1e-12 * (1.0 + base.norm()));
        }
    }

    #[test]
    fn g_direct_gamma_product() {
        use super::super::gamma_c;
        let u = MellinPoint::new(c(1.3, 0.0), c(0.8, 0.0));
        let mu = SpectralPoint::new(c(0.1, 2.0), c(-0.3, -1.0));
        let mut direct = Complex64::new(1.0, 0.0);
        for m in mu.triple() {
            direct *= gamma_c((u.u1 - m) / 2.0).unwrap();
            direct *= gamma_c((u.u2 + m) / 2.0).unwrap();
        }
        direct /= gamma_c((u.u1 + u.u2) / 2.0).unwrap();
        let v = g_fn(&u, &mu).unwrap();
        assert!((v - direct).norm() <= 1e-11 * (1.0 + direct.norm()));
    }
}
