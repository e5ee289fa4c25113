//! SL(2) and SL(3,Z) Kloosterman sums, evaluated exactly.
//!
//! The long-element sum comes in two independent routes: a brute-force
//! enumeration over all Plucker quadruples (`s_wl_oracle`) and an optimized
//! path (`s_wl_fast`) that splits the modulus into coprime prime-power
//! blocks by twisted multiplicativity and solves the linear congruence to
//! drop one loop. The two routes must agree, and the test suites hold them
//! to that.

mod bounds;
mod classical;
mod tally;
mod w45;
mod wl;

pub use bounds::{check_larsen, check_stevens, check_weil, BoundReport};
pub use classical::{
    classical_multiplicativity_check, kloosterman_classical, kloosterman_value, ClassicalTable,
};
pub use tally::ExponentTally;
pub use w45::{s_degenerate, s_w4, s_w5};
pub use wl::{s_wl_direct, s_wl_fast, s_wl_oracle, WlFastTables, WlOracleTable};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KsumError {
    #[error("degenerate character: ({0}, {1}) must both be nonzero")]
    DegenerateCharacter(i64, i64),
    #[error("moduli must be >= 1, got ({0}, {1})")]
    InvalidModulus(u64, u64),
    #[error("oracle scale exceeded: c1*c2 = {0} must be < 2^31")]
    OracleScale(u128),
    #[error("denominator overflow: c1*c2 = {0} must be < 2^63")]
    DenominatorOverflow(u128),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Arith(#[from] crate::arith::ArithError),
}

/// A non-degenerate character index pair (m1, m2), both nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CharPair {
    m1: i64,
    m2: i64,
}

impl CharPair {
    pub fn new(m1: i64, m2: i64) -> Result<Self, KsumError> {
        if m1 == 0 || m2 == 0 {
            return Err(KsumError::DegenerateCharacter(m1, m2));
        }
        Ok(CharPair { m1, m2 })
    }

    pub fn m1(&self) -> i64 {
        self.m1
    }

    pub fn m2(&self) -> i64 {
        self.m2
    }

    /// Component-wise sign flip by v in {+-1}^2.
    pub fn signed(&self, v1: i64, v2: i64) -> Self {
        debug_assert!(v1.abs() == 1 && v2.abs() == 1);
        CharPair {
            m1: v1 * self.m1,
            m2: v2 * self.m2,
        }
    }

    pub fn negated(&self) -> Self {
        self.signed(-1, -1)
    }
}

/// The diagonal modulus pair (c1, c2), both >= 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModPair {
    c1: u64,
    c2: u64,
}

impl ModPair {
    pub fn new(c1: u64, c2: u64) -> Result<Self, KsumError> {
        if c1 == 0 || c2 == 0 {
            return Err(KsumError::InvalidModulus(c1, c2));
        }
        Ok(ModPair { c1, c2 })
    }

    pub fn c1(&self) -> u64 {
        self.c1
    }

    pub fn c2(&self) -> u64 {
        self.c2
    }

    /// c1*c2 as u128 (overflow-free).
    pub fn product(&self) -> u128 {
        self.c1 as u128 * self.c2 as u128
    }
}

/// The six Weyl group elements of SL(3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeylElement {
    I,
    W2,
    W3,
    W4,
    W5,
    Wl,
}

impl std::str::FromStr for WeylElement {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "i" | "id" => Ok(WeylElement::I),
            "w2" => Ok(WeylElement::W2),
            "w3" => Ok(WeylElement::W3),
            "w4" => Ok(WeylElement::W4),
            "w5" => Ok(WeylElement::W5),
            "wl" | "w6" => Ok(WeylElement::Wl),
            other => Err(format!("unknown Weyl element `{other}`")),
        }
    }
}

impl std::fmt::Display for WeylElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            WeylElement::I => "i",
            WeylElement::W2 => "w2",
            WeylElement::W3 => "w3",
            WeylElement::W4 => "w4",
            WeylElement::W5 => "w5",
            WeylElement::Wl => "wl",
        };
        f.write_str(s)
    }
}
