//! Catalogue of known discrepancies in the published worked examples and
//! in the printed inequality chain. Each has a stable code so reports can
//! separate "printed data is off" from "this tool is wrong".

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum WarningCode {
    /// Example 1: printed α carries one extra prime factor.
    #[serde(rename = "W101-EX1-ALPHA-EXTRA-FACTOR")]
    Ex1AlphaExtraFactor,
    /// Example 2: printed t = 90 disagrees with the formula for d = 3.
    #[serde(rename = "W201-EX2-T-VALUE")]
    Ex2TValue,
    /// Example 2: d = 3 in the setup, d = 2 implied elsewhere.
    #[serde(rename = "W202-EX2-D-VALUE")]
    Ex2DValue,
    /// Example 3: printed factors of 43 multiply to 43 times a root of unity.
    #[serde(rename = "W301-EX3-FACTORIZATION-UNIT")]
    Ex3FactorizationUnit,
    /// Example 3: printed α is not the product of the listed primes.
    #[serde(rename = "W302-EX3-ALPHA-PROVENANCE")]
    Ex3AlphaProvenance,
    /// Example 3: the listed primes are not the smallest admissible ones.
    #[serde(rename = "W303-EX3-PRIME-SELECTION")]
    Ex3PrimeSelection,
    /// Example 3: stated bounds use the wrong rank index / growth base.
    #[serde(rename = "W304-EX3-BOUND-NOTATION")]
    Ex3BoundNotation,
    /// Class number and prime count above p are vendored database facts.
    #[serde(rename = "W305-EXTERNAL-FACTS")]
    ExternalFacts,
    /// S-class comparison is printed with ≥ but used as ≤, base ℓ^n.
    #[serde(rename = "W401-S-CLASS-GAP-DIRECTION")]
    SClassGapDirection,
    /// Final step N q^n - 2 dim A ≥ N q^n does not hold for dim A ≥ 1.
    #[serde(rename = "W402-FINE-SELMER-FINAL-STEP")]
    FineSelmerFinalStep,
    /// The subtraction T - [L_n:Q] is evaluated at a lower bound for [L_n:Q].
    #[serde(rename = "W403-DEGREE-BOUND-DIRECTION")]
    DegreeBoundDirection,
    /// Worked examples claim the fine Selmer bound without reserving 2 s0.
    #[serde(rename = "W404-SELMER-RESERVE-NOT-APPLIED")]
    SelmerReserveNotApplied,
}

impl WarningCode {
    pub fn code(self) -> &'static str {
        match self {
            WarningCode::Ex1AlphaExtraFactor => "W101-EX1-ALPHA-EXTRA-FACTOR",
            WarningCode::Ex2TValue => "W201-EX2-T-VALUE",
            WarningCode::Ex2DValue => "W202-EX2-D-VALUE",
            WarningCode::Ex3FactorizationUnit => "W301-EX3-FACTORIZATION-UNIT",
            WarningCode::Ex3AlphaProvenance => "W302-EX3-ALPHA-PROVENANCE",
            WarningCode::Ex3PrimeSelection => "W303-EX3-PRIME-SELECTION",
            WarningCode::Ex3BoundNotation => "W304-EX3-BOUND-NOTATION",
            WarningCode::ExternalFacts => "W305-EXTERNAL-FACTS",
            WarningCode::SClassGapDirection => "W401-S-CLASS-GAP-DIRECTION",
            WarningCode::FineSelmerFinalStep => "W402-FINE-SELMER-FINAL-STEP",
            WarningCode::DegreeBoundDirection => "W403-DEGREE-BOUND-DIRECTION",
            WarningCode::SelmerReserveNotApplied => "W404-SELMER-RESERVE-NOT-APPLIED",
        }
    }
}

impl fmt::Display for WarningCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Warning {
    pub code: WarningCode,
    pub message: String,
}

impl Warning {
    pub fn new(code: WarningCode, message: impl Into<String>) -> Self {
        Warning { code, message: message.into() }
    }
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "warning[{}]: {}", self.code, self.message)
    }
}
