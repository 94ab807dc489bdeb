use std::fmt;

use serde::{Deserialize, Serialize};

/// Named mathematical facts that report lines and validation findings
/// point back to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Citation {
    UniformGroup,
    FixedPointFreeAutomorphism,
    BaseFieldAssumption,
    PRationalityCriterion,
    CmSplitPrimes,
    RelativeSplitPrimes,
    KummerTower,
    AmbiguousClassNumberFormula,
    ClassRankGrowth,
    FineSelmerVsSClass,
    SClassGap,
    FineSelmerGrowth,
}

impl Citation {
    pub fn tag(self) -> &'static str {
        match self {
            Citation::UniformGroup => "uniform-group",
            Citation::FixedPointFreeAutomorphism => "fixed-point-free-automorphism",
            Citation::BaseFieldAssumption => "base-field-assumption",
            Citation::PRationalityCriterion => "p-rationality-criterion",
            Citation::CmSplitPrimes => "cm-split-primes",
            Citation::RelativeSplitPrimes => "relative-split-primes",
            Citation::KummerTower => "kummer-tower",
            Citation::AmbiguousClassNumberFormula => "ambiguous-class-number-formula",
            Citation::ClassRankGrowth => "class-rank-growth",
            Citation::FineSelmerVsSClass => "fine-selmer-vs-s-class",
            Citation::SClassGap => "s-class-gap",
            Citation::FineSelmerGrowth => "fine-selmer-growth",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Citation::UniformGroup => {
                "Γ is a uniform pro-p group on d topological generators"
            }
            Citation::FixedPointFreeAutomorphism => {
                "Γ has an automorphism τ of order m fixing only 1; m = 2 forces Γ ≅ Z_p^d; \
                 Γ(1) admits m = 3 when p ≡ 1 mod 3"
            }
            Citation::BaseFieldAssumption => {
                "m > 2: F/F₀ cyclic of degree m, F₀ totally imaginary with μ_p ⊂ F₀, \
                 a unique prime 𝔭 of F over p, trivial p-part of the 𝔭-class group of F"
            }
            Citation::PRationalityCriterion => {
                "μ_p ⊂ F, a unique prime 𝔭 over p and trivial p-part of Cl_𝔭(F) imply F is p-rational"
            }
            Citation::CmSplitPrimes => {
                "K CM: a rational prime inert in K and prime to p splits completely in K_∞"
            }
            Citation::RelativeSplitPrimes => {
                "a prime of F₀ inert in F splits completely in the Γ-extension K_∞/K"
            }
            Citation::KummerTower => {
                "t = N + m·d·ℓ(ℓ−1); L = K(ζ_ℓ, α^(1/ℓ)) with ord_v(α) = 1 at t split primes; \
                 ≥ t·p^n primes ramify in L_n/K_n and [L_n:Q] ≥ m·ℓ(ℓ−1)·d·p^n"
            }
            Citation::AmbiguousClassNumberFormula => {
                "r_ℓ(Am_st(L/K)) ≥ T − [L:Q] for L/K cyclic of degree ℓ with T ramified primes"
            }
            Citation::ClassRankGrowth => "r_ℓ(Cl(L_n)) ≥ N·p^n for all n ≥ 0",
            Citation::FineSelmerVsSClass => {
                "A(F)[ℓ] ≠ 0 ⇒ r_ℓ(R_ℓ∞(A/F)) ≥ r_ℓ(Cl_S(F))·r_ℓ(A(F)[ℓ]) − 2·dim A"
            }
            Citation::SClassGap => {
                "r_ℓ(Cl(L_n)) − r_ℓ(Cl_S(L_n)) is controlled by 2·s₀·ℓ^n (s₀ finite places in S)"
            }
            Citation::FineSelmerGrowth => {
                "r_ℓ(R_ℓ∞(A/L_n)) ≥ N·q^n with q = min(ℓ, p)"
            }
        }
    }
}

impl fmt::Display for Citation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.tag())
    }
}
