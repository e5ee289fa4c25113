//! The intermediate-element and degenerate SL(3,Z) Kloosterman sums.
//!
//! For w4 the Bruhat condition is c2 | c1 and, writing (A1, B2) = (c1, c2),
//! the explicit sum runs over C2 mod B2 and C1 mod A1 with
//! (A1/B2, C1) = (B2, C2) = 1:
//!
//!   e( -m2 * C2bar*C1/B2 - m1 * C1bar*B2/A1 - n2 * C2/B2 ),
//!
//! where C2bar inverts C2 mod B2 and C1bar inverts C1 mod A1/B2 (the middle
//! term is m1 * C1bar/(A1/B2), so only that inverse is involved). The gated
//! variant additionally zeroes the sum unless the compatibility condition
//! m2*c1 = n1*c2^2 holds; w5 is w4 with indices swapped, gated by c1 | c2
//! and m1*c2 = n2*c1^2. The degenerate elements I, w2, w3 reduce to 1 and
//! to classical sums.

use super::{kloosterman_classical, CharPair, ExponentTally, KsumError, ModPair, WeylElement};
use crate::arith::{gcd, inv_mod, lcm, mul_mod, reduce_mod};

/// The w4 sum. `gated` enforces the compatibility condition; both variants
/// are empty (zero tally) when the Bruhat condition c2 | c1 fails, since the
/// admissibility constraint (A1/B2, C1) = 1 only defines tuples then.
pub fn s_w4(
    m: &CharPair,
    n: &CharPair,
    c: &ModPair,
    gated: bool,
) -> Result<ExponentTally, KsumError> {
    if c.product() >= 1 << 63 {
        return Err(KsumError::DenominatorOverflow(c.product()));
    }
    w4_raw(m.m1(), m.m2(), n.m1(), n.m2(), c.c1(), c.c2(), gated)
}

/// The w5 sum, by the identity
/// S_w5(psi_m, psi_n, (c1, c2)) = S_w4(psi_(-m2, m1), psi_(n2, -n1), (c2, c1)).
pub fn s_w5(
    m: &CharPair,
    n: &CharPair,
    c: &ModPair,
    gated: bool,
) -> Result<ExponentTally, KsumError> {
    if c.product() >= 1 << 63 {
        return Err(KsumError::DenominatorOverflow(c.product()));
    }
    w4_raw(-m.m2(), m.m1(), n.m2(), -n.m1(), c.c2(), c.c1(), gated)
}

pub(crate) fn w4_raw(
    m1: i64,
    m2: i64,
    n1: i64,
    n2: i64,
    a1: u64,
    b2: u64,
    gated: bool,
) -> Result<ExponentTally, KsumError> {
    let l = lcm(a1, b2);
    if a1 % b2 != 0 {
        return Ok(ExponentTally::zero(l));
    }
    if gated {
        // m2*c1 = n1*c2^2, in i128 to dodge overflow.
        let lhs = m2 as i128 * a1 as i128;
        let rhs = n1 as i128 * (b2 as i128 * b2 as i128);
        if lhs != rhs {
            return Ok(ExponentTally::zero(l));
        }
    }
    let q = a1 / b2;
    let mut tally = ExponentTally::zero(l);
    let m1r = reduce_mod(-m1, l);
    let m2r = reduce_mod(-m2, l);
    let n2r = reduce_mod(-n2, l);
    for c2 in 0..b2 {
        if gcd(b2, c2) != 1 {
            continue;
        }
        let c2bar = inv_mod(c2 as i64, b2).expect("C2 unit mod B2").value;
        // -n2 * C2/B2 over denominator L = A1: numerator -n2*C2*Q.
        let t_n2 = mul_mod(n2r, mul_mod(c2 % l, q % l, l), l);
        for c1 in 0..a1 {
            if gcd(q, c1) != 1 {
                continue;
            }
            let c1bar = inv_mod((c1 % q) as i64, q).expect("C1 unit mod A1/B2").value;
            // -m2 * C2bar*C1/B2: numerator -m2*C2bar*C1*Q mod L.
            let t_m2 = mul_mod(
                m2r,
                mul_mod(mul_mod(c2bar % l, c1 % l, l), q % l, l),
                l,
            );
            // -m1 * C1bar/(A1/B2): numerator -m1*C1bar*B2 mod L.
            let t_m1 = mul_mod(m1r, mul_mod(c1bar % l, b2 % l, l), l);
            let t = ((t_m2 as u128 + t_m1 as u128 + t_n2 as u128) % l as u128) as u64;
            tally.add(t, 1);
        }
    }
    Ok(tally)
}

/// Degenerate sums per the Bruhat/compatibility table: I contributes 1 when
/// c = (1,1) and m = n; w2 reduces to S(-m2, -n2, c2) when c1 = 1 and
/// m1 = n1 = 0; w3 reduces to S(m1, n1, c1) when c2 = 1 and m2 = n2 = 0.
/// Anything else is the zero tally. Character pairs arrive raw because the
/// degenerate rows require vanishing components.
pub fn s_degenerate(
    w: WeylElement,
    m: (i64, i64),
    n: (i64, i64),
    c: &ModPair,
) -> Result<ExponentTally, KsumError> {
    match w {
        WeylElement::I => {
            if c.c1() == 1 && c.c2() == 1 && m == n {
                Ok(ExponentTally::one())
            } else {
                Ok(ExponentTally::zero(1))
            }
        }
        WeylElement::W2 => {
            if c.c1() == 1 && m.0 == 0 && n.0 == 0 {
                Ok(kloosterman_classical(-m.1, -n.1, c.c2()))
            } else {
                Ok(ExponentTally::zero(c.c2()))
            }
        }
        WeylElement::W3 => {
            if c.c2() == 1 && m.1 == 0 && n.1 == 0 {
                Ok(kloosterman_classical(m.0, n.0, c.c1()))
            } else {
                Ok(ExponentTally::zero(c.c1()))
            }
        }
        other => Err(KsumError::Precondition(format!(
            "s_degenerate handles I, w2, w3 only, got {other}"
        ))),
    }
}
