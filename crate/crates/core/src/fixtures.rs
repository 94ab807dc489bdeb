//! The three worked examples, transcribed as printed. Nothing here is
//! recomputed; the reproduction pipeline compares against these values.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::bounds::AbelianVarietyDesc;
use crate::error::{Error, Result};
use crate::tower::{AssumptionChecklist, BaseField, GammaSpec, PlanRequest, Provenance, SelmerRequest};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FixtureId {
    Example1,
    Example2,
    Example3,
}

impl FixtureId {
    pub const ALL: [FixtureId; 3] = [FixtureId::Example1, FixtureId::Example2, FixtureId::Example3];

    pub fn name(self) -> &'static str {
        match self {
            FixtureId::Example1 => "example1",
            FixtureId::Example2 => "example2",
            FixtureId::Example3 => "example3",
        }
    }
}

impl std::str::FromStr for FixtureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FixtureId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown example '{s}' (expected example1, example2 or example3)")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Parameters {
    pub ell: u64,
    pub p: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub d: u64,
    pub m: u64,
    pub family: &'static str,
    pub base_conductor: u64,
}

/// Example 2's printed t and the Γ it describes elsewhere.
#[derive(Clone, Debug, Serialize)]
pub struct PrintedT {
    pub t: u64,
    pub printed_formula: &'static str,
    pub d_in_setup: u64,
    pub d_in_conclusion: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelativeBaseFacts {
    pub cubic: &'static str,
    pub rational_primes: Vec<u64>,
    pub split_count_per_prime: u64,
    pub total_inert_primes: u64,
    pub factorization_prime: u64,
    pub factors_of_prime: [&'static str; 6],
    pub class_number: u64,
    pub primes_above_p: u64,
    pub facts_provenance: Provenance,
}

#[derive(Clone, Debug, Serialize)]
pub struct Fixture {
    pub id: FixtureId,
    pub parameters: Parameters,
    pub expected_prime_list: Vec<String>,
    pub expected_alpha: String,
    pub curve: &'static str,
    pub s0: u64,
    pub printed_t: Option<PrintedT>,
    pub relative: Option<RelativeBaseFacts>,
}

const EX1_PRIMES: &str = "2, 5, 11, 17, 23, 29, 41, 47, 53, 59, 71, 83, 89, 101, 107, 113, 131, 137, \
    149, 167, 173, 179, 191, 197, 227, 233, 239, 251, 257, 263, 269, 281, 293, 311, \
    317, 347, 353, 359, 383, 389, 401, 419";

const EX1_ALPHA: [&str; 2] = [
    "55648213008781695672667810384702204705472968298668180461428",
    "1048399478905195501007583867510",
];

const EX2_PRIMES: &str = "2, 5, 11, 23, 29, 41, 47, 59, 83, 101, 113, 131, 137, 149, 167, 173, 191, 227, 239, 257, 263, 281, 293, \
    311, 317, 347, 353, 383, 389, 401, 419, 443, 461, 479, 491, 509, 563, 569, 587, 599, 617, 641, 653, 659, \
    677, 743, 761, 797, 821, 839, 857, 887, 911, 929, 941, 947, 977, 983, 1013, 1019, 1031, 1049, 1091, 1103, \
    1109, 1163, 1181, 1193, 1217, 1229, 1283, 1289, 1301, 1307, 1319, 1361, 1373, 1409, 1427, 1433, \
    1451, 1481, 1487, 1499, 1523, 1553, 1559, 1571, 1607, 1613";

const EX2_ALPHA: [&str; 5] = [
    "30266915671908567712011058723234542844654746560977147126408783068722197382",
    "3946203120683121105279988012699117394",
    "2884749088584144432870913089663861679",
    "02242957859532761609270923483095428112544069874627622945451584053107032901",
    "3191741865236750170",
];

const EX3_PRIMES: &str = "43, 127, 491, 673, 953, 1499, 1583, 2129, 2311, 2591";

const EX3_ALPHA: [&str; 3] = [
    "78402503779216655405023576089116738265320606062683342998991230977",
    "29859436684020023921188941416161094578321474807227626638759156142079702",
    "108239313497652801991067685041337071171617321114788409671453358754013644971",
];

pub const EX3_FACTORS_OF_43: [&str; 6] = [
    "ζ₇⁵ + 2ζ₇³ + ζ₇² + 1",
    "ζ₇⁵ + ζ₇⁴ + 2ζ₇² + ζ₇",
    "2ζ₇⁵ + ζ₇⁴ + 2ζ₇³ + ζ₇² + 2ζ₇ + 1",
    "-2ζ₇⁵ - ζ₇⁴ - ζ₇³ - 2ζ₇² - 2ζ₇ - 1",
    "2ζ₇⁴ + ζ₇³ + ζ₇² + ζ₇",
    "ζ₇⁵ + ζ₇⁴ + ζ₇³ + 2ζ₇²",
];

pub const EX3_CUBIC: &str = "x^3 - x^2 - 4*x - 1";

fn split_list(text: &str) -> Vec<String> {
    text.split(',').map(|s| s.trim().to_string()).collect()
}

fn parse_list(text: &str) -> Vec<u64> {
    text.split(',').map(|s| s.trim().parse().expect("fixture prime")).collect()
}

pub fn fixture(id: FixtureId) -> Fixture {
    match id {
        FixtureId::Example1 => Fixture {
            id,
            parameters: Parameters { ell: 5, p: 3, n: 2, d: 1, m: 2, family: "abelian", base_conductor: 3 },
            expected_prime_list: split_list(EX1_PRIMES),
            expected_alpha: EX1_ALPHA.concat(),
            curve: "11a1",
            s0: 2,
            printed_t: None,
            relative: None,
        },
        FixtureId::Example2 => Fixture {
            id,
            parameters: Parameters { ell: 5, p: 3, n: 10, d: 3, m: 2, family: "abelian", base_conductor: 9 },
            expected_prime_list: split_list(EX2_PRIMES),
            expected_alpha: EX2_ALPHA.concat(),
            curve: "11a1",
            s0: 2,
            printed_t: Some(PrintedT {
                t: 90,
                printed_formula: "t = N + 2dℓ(ℓ−1) = 90",
                d_in_setup: 3,
                d_in_conclusion: 2,
            }),
            relative: None,
        },
        FixtureId::Example3 => Fixture {
            id,
            parameters: Parameters { ell: 3, p: 7, n: 6, d: 3, m: 3, family: "gamma1", base_conductor: 7 },
            expected_prime_list: split_list(EX3_PRIMES),
            expected_alpha: EX3_ALPHA.concat(),
            curve: "19a1",
            s0: 2,
            printed_t: None,
            relative: Some(RelativeBaseFacts {
                cubic: EX3_CUBIC,
                rational_primes: parse_list(EX3_PRIMES),
                split_count_per_prime: 6,
                total_inert_primes: 60,
                factorization_prime: 43,
                factors_of_prime: EX3_FACTORS_OF_43,
                class_number: 13,
                primes_above_p: 1,
                facts_provenance: Provenance::ExternalDatabase,
            }),
        },
    }
}

impl Fixture {
    pub fn gamma(&self) -> GammaSpec {
        let p = &self.parameters;
        match p.family {
            "gamma1" => GammaSpec::nilpotent(p.p, 1, p.m),
            _ => GammaSpec::abelian(p.p, p.d, p.m),
        }
    }

    pub fn base(&self) -> BaseField {
        match &self.relative {
            None => BaseField::Cyclotomic { conductor: self.parameters.base_conductor },
            Some(rel) => BaseField::RelativeCyclotomic {
                conductor: self.parameters.base_conductor,
                defining_poly: rel.cubic.parse().expect("fixture cubic"),
            },
        }
    }

    /// Assumption checklist for the m > 2 example. Items 2–4 rest on the
    /// vendored class number and prime count above p.
    pub fn checklist(&self) -> Option<AssumptionChecklist> {
        let rel = self.relative.as_ref()?;
        let c = self.parameters.base_conductor;
        Some(AssumptionChecklist {
            m: self.parameters.m,
            base_field_desc: format!("F₀ = Q(ζ_{c}), F = F₀(θ), θ root of {}", rel.cubic),
            f0_totally_imaginary: true,
            contains_mu_p: c.is_multiple_of(self.parameters.p),
            unique_prime_above_p: rel.primes_above_p == 1,
            p_part_of_p_class_group_trivial: rel.class_number % self.parameters.p != 0,
            provenance: rel.facts_provenance,
        })
    }

    pub fn variety(&self) -> AbelianVarietyDesc {
        let bad: BTreeSet<u64> = match self.curve {
            "19a1" => [19].into(),
            _ => [11].into(),
        };
        AbelianVarietyDesc {
            label: self.curve.to_string(),
            dim_a: 1,
            torsion_nontrivial_at_ell: true,
            bad_primes: bad,
            provenance: Provenance::Asserted,
        }
    }

    pub fn expected_primes_u64(&self) -> Vec<u64> {
        self.expected_prime_list.iter().map(|s| s.parse().expect("fixture prime")).collect()
    }

    /// The plan the example describes. Example 3 uses its printed prime
    /// list (verified admissible) rather than the ascending search.
    pub fn plan_request(&self) -> PlanRequest {
        let p = &self.parameters;
        PlanRequest {
            ell: p.ell,
            p: p.p,
            n: p.n,
            gamma: self.gamma(),
            base: self.base(),
            checklist: self.checklist(),
            selmer: Some(SelmerRequest { s0: self.s0, apply_reserve: false }),
            explicit_primes: self.relative.as_ref().map(|r| r.rational_primes.clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transcriptions_have_expected_shape() {
        let f1 = fixture(FixtureId::Example1);
        assert_eq!(f1.expected_prime_list.len(), 42);
        assert_eq!(f1.expected_alpha.len(), 90);
        let f2 = fixture(FixtureId::Example2);
        assert_eq!(f2.expected_prime_list.len(), 90);
        assert_eq!(f2.expected_alpha.len(), 241);
        let f3 = fixture(FixtureId::Example3);
        assert_eq!(f3.expected_prime_list.len(), 10);
        assert_eq!(f3.expected_alpha.len(), 211);
        for f in [&f1, &f2, &f3] {
            assert!(f.expected_alpha.bytes().all(|b| b.is_ascii_digit()));
        }
        assert_eq!("example2".parse::<FixtureId>().unwrap(), FixtureId::Example2);
        assert!("example4".parse::<FixtureId>().is_err());
    }
}
