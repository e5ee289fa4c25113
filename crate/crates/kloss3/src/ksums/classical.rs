//! The classical Kloosterman sum S(a, b, c) and its twisted
//! multiplicativity S(a, b, cc') = S(c'bar a, c'bar b, c) S(cbar a, cbar b, c').

use super::{ExponentTally, KsumError};
use crate::arith::{gcd, inv_mod, mul_mod, reduce_mod};
use num_complex::Complex64;

/// S(a, b, c) as an exact tally over residues mod c: for each x coprime to
/// c the phase is (a*x + b*xbar)/c with x*xbar = 1 mod c.
pub fn kloosterman_classical(a: i64, b: i64, c: u64) -> ExponentTally {
    assert!(c >= 1);
    let mut tally = ExponentTally::zero(c);
    if c == 1 {
        tally.add(0, 1);
        return tally;
    }
    let ar = reduce_mod(a, c);
    let br = reduce_mod(b, c);
    for x in 1..c {
        if gcd(x, c) != 1 {
            continue;
        }
        let xbar = inv_mod(x as i64, c).expect("x coprime to c").value;
        let t = (mul_mod(ar, x, c) + mul_mod(br, xbar, c)) % c;
        tally.add(t, 1);
    }
    tally
}

/// Complex-valued S(a, b, c) by direct accumulation, pairing x with c - x so
/// the conjugate terms cancel imaginary parts exactly. Used by the big
/// sweeps where building a tally per sum would be wasted work.
pub fn kloosterman_value(a: i64, b: i64, c: u64) -> f64 {
    assert!(c >= 1);
    if c == 1 {
        return 1.0;
    }
    if c == 2 {
        // Single unit x = 1: e((a + b)/2) = +-1.
        return if (a + b).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    }
    let ar = reduce_mod(a, c);
    let br = reduce_mod(b, c);
    let mut acc = 0.0f64;
    let tau_over_c = std::f64::consts::TAU / c as f64;
    for x in 1..=c / 2 {
        if gcd(x, c) != 1 {
            continue;
        }
        let xbar = inv_mod(x as i64, c).expect("x coprime to c").value;
        let t = (mul_mod(ar, x, c) + mul_mod(br, xbar, c)) % c;
        // x and c - x carry conjugate phases; x = c - x cannot occur for
        // c > 2 since gcd(c/2, c) > 1.
        acc += 2.0 * (tau_over_c * t as f64).cos();
    }
    acc
}

/// All values S(a, b, c) for a, b mod c, precomputed in O(c^2) space.
pub struct ClassicalTable {
    c: u64,
    values: Vec<f64>,
}

impl ClassicalTable {
    pub fn build(c: u64) -> Self {
        assert!(c >= 1);
        let n = c as usize;
        let mut values = vec![0.0f64; n * n];
        if c == 1 {
            values[0] = 1.0;
            return ClassicalTable { c, values };
        }
        // Accumulate e((a x + b xbar)/c) over units x once for all (a, b).
        let tau_over_c = std::f64::consts::TAU / c as f64;
        let units: Vec<(u64, u64)> = (1..c)
            .filter(|&x| gcd(x, c) == 1)
            .map(|x| (x, inv_mod(x as i64, c).expect("unit").value))
            .collect();
        for a in 0..c {
            for &(x, xbar) in &units {
                let ax = mul_mod(a, x, c);
                for b in 0..c {
                    let t = (ax + mul_mod(b, xbar, c)) % c;
                    values[(a * c + b) as usize] += (tau_over_c * t as f64).cos();
                }
            }
        }
        ClassicalTable { c, values }
    }

    pub fn get(&self, a: i64, b: i64) -> f64 {
        let a = reduce_mod(a, self.c);
        let b = reduce_mod(b, self.c);
        self.values[(a * self.c + b) as usize]
    }
}

/// Check |S(a,b,cc') - S(c'bar a, c'bar b, c) * S(cbar a, cbar b, c')| below
/// 1e-9 * (1 + |S(a,b,cc')|). Requires gcd(c, c') = 1.
pub fn classical_multiplicativity_check(
    a: i64,
    b: i64,
    c: u64,
    cp: u64,
) -> Result<bool, KsumError> {
    if gcd(c, cp) != 1 {
        return Err(KsumError::Precondition(format!(
            "classical multiplicativity needs gcd(c, c') = 1, got gcd({c}, {cp}) > 1"
        )));
    }
    let lhs = kloosterman_classical(a, b, c * cp).value();
    let rhs = multiplicativity_rhs(a, b, c, cp)?;
    Ok((lhs - rhs).norm() < 1e-9 * (1.0 + lhs.norm()))
}

pub(crate) fn multiplicativity_rhs(a: i64, b: i64, c: u64, cp: u64) -> Result<Complex64, KsumError> {
    let cp_bar = inv_mod(cp as i64, c)?.value as i64;
    let c_bar = inv_mod(c as i64, cp)?.value as i64;
    let left = kloosterman_classical(mulr(cp_bar, a, c) as i64, mulr(cp_bar, b, c) as i64, c);
    let right = kloosterman_classical(mulr(c_bar, a, cp) as i64, mulr(c_bar, b, cp) as i64, cp);
    Ok(left.value() * right.value())
}

/// (u * v) mod m for signed operands, result in [0, m).
fn mulr(u: i64, v: i64, m: u64) -> u64 {
    mul_mod(reduce_mod(u, m), reduce_mod(v, m), m)
}
