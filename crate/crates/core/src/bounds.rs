//! Certified lower bounds per layer: ambiguous classes, class-group
//! ℓ-rank, and the fine Selmer chain, with an inequality trace.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arith::Integer;
use crate::citation::Citation;
use crate::error::{Error, Result};
use crate::tower::{Provenance, TowerPlan};
use crate::warnings::WarningCode;

/// Finite abelian group in invariant-factor form d_1 | d_2 | … | d_k.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<Integer>,
}

impl FiniteAbelianGroup {
    pub fn new(invariant_factors: Vec<Integer>) -> Result<Self> {
        let two = Integer::from(2);
        if invariant_factors.iter().any(|d| *d < two) {
            return Err(Error::InvalidChain);
        }
        if invariant_factors.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::InvalidChain);
        }
        Ok(FiniteAbelianGroup { invariant_factors })
    }

    pub fn from_u64s(factors: &[u64]) -> Result<Self> {
        Self::new(factors.iter().map(|&d| Integer::from(d)).collect())
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup::default()
    }

    pub fn invariant_factors(&self) -> &[Integer] {
        &self.invariant_factors
    }

    pub fn order(&self) -> Integer {
        self.invariant_factors.iter().fold(Integer::one(), |acc, d| acc * d)
    }
}

/// dim over F_ℓ of G[ℓ]: the number of invariant factors divisible by ℓ.
pub fn ell_rank(group: &FiniteAbelianGroup, ell: u64) -> u64 {
    let ell = Integer::from(ell);
    group
        .invariant_factors
        .iter()
        .filter(|d| d.is_multiple_of(&ell))
        .count() as u64
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianVarietyDesc {
    pub label: String,
    pub dim_a: u64,
    /// A(Q(ζ_ℓ))[ℓ] ≠ 0
    pub torsion_nontrivial_at_ell: bool,
    pub bad_primes: BTreeSet<u64>,
    pub provenance: Provenance,
}

/// max(T − degree, 0).
pub fn ambiguous_lower(ramified: &Integer, degree: &Integer) -> Integer {
    assert!(!ramified.is_negative(), "T must be >= 0");
    assert!(*degree >= Integer::one(), "degree must be >= 1");
    let diff = ramified - degree;
    if diff.is_negative() {
        Integer::zero()
    } else {
        diff
    }
}

/// N·p^n, computed through the ambiguous class bound and checked against
/// the closed form.
pub fn class_rank_lower(plan: &TowerPlan, layer: u32) -> Integer {
    let via_ambiguous = ambiguous_lower(&plan.ramified_lower(layer), &plan.degree_lower(layer));
    let closed = Integer::from(plan.n) * Integer::from(plan.p).pow(layer);
    assert_eq!(via_ambiguous, closed, "t - m·d·ℓ(ℓ-1) must equal N");
    via_ambiguous
}

/// 2·s0·ℓ^n
pub fn s_class_gap(s0: u64, ell: u64, layer: u32) -> Integer {
    assert!(s0 >= 1, "s0 must be >= 1");
    Integer::from(2 * s0) * Integer::from(ell).pow(layer)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FineSelmerBound {
    pub conservative: Integer,
    pub paper: Integer,
}

/// Both readings of the fine Selmer bound at layer n:
/// `paper` = N·q^n and `conservative` = max(N·q^n − 2·dim A, 0).
pub fn fine_selmer_lower(
    plan: &TowerPlan,
    variety: &AbelianVarietyDesc,
    s0: u64,
    layer: u32,
) -> Result<FineSelmerBound> {
    if !variety.torsion_nontrivial_at_ell {
        return Err(Error::TorsionHypothesisUnmet);
    }
    let reserve = match plan.selmer {
        Some(r) if r.s0 == s0 => r,
        other => return Err(Error::PlanNotInflated { requested: s0, declared: other.map(|r| r.s0) }),
    };
    let paper = Integer::from(reserve.target_n) * Integer::from(plan.q_min).pow(layer);
    let diff = &paper - &Integer::from(2 * variety.dim_a);
    let conservative = if diff.is_negative() { Integer::zero() } else { diff };
    Ok(FineSelmerBound { conservative, paper })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRow {
    pub n: u32,
    #[serde(rename = "T_lower")]
    pub t_lower: Integer,
    pub degree_lower: Integer,
    pub ambiguous_lower: Integer,
    pub class_rank_lower: Integer,
    pub s_class_gap: Option<Integer>,
    pub fine_selmer_lower_conservative: Option<Integer>,
    pub fine_selmer_lower_paper: Option<Integer>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceLine {
    pub n: Option<u32>,
    pub citation: Citation,
    pub claim: String,
    pub warning: Option<WarningCode>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub ell: u64,
    pub p: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub t: Integer,
    pub q_min: u64,
    pub s0: Option<u64>,
    pub variety: Option<AbelianVarietyDesc>,
    pub rows: Vec<CertificateRow>,
    pub inequality_trace: Vec<TraceLine>,
}

/// Input for the fine Selmer columns.
#[derive(Clone, Copy, Debug)]
pub struct SelmerInput<'a> {
    pub variety: &'a AbelianVarietyDesc,
    pub s0: u64,
}

fn line(n: Option<u32>, citation: Citation, claim: String) -> TraceLine {
    TraceLine { n, citation, claim, warning: None }
}

fn flagged(n: Option<u32>, citation: Citation, claim: String, warning: WarningCode) -> TraceLine {
    TraceLine { n, citation, claim, warning: Some(warning) }
}

/// Rows for n = 0..=n_max and the trace that justifies them.
pub fn build_certificate(
    plan: &TowerPlan,
    selmer: Option<SelmerInput<'_>>,
    n_max: u32,
) -> Result<BoundCertificate> {
    let mut rows = Vec::with_capacity(n_max as usize + 1);
    let mut trace = Vec::new();
    let (m, d, ell, p) = (plan.gamma.m, plan.gamma.d, plan.ell, plan.p);

    trace.push(line(
        None,
        Citation::KummerTower,
        format!("t = N + m·d·ℓ(ℓ−1) = {} + {m}·{d}·{ell}·{} = {}", plan.n, ell - 1, plan.t),
    ));
    trace.push(flagged(
        None,
        Citation::AmbiguousClassNumberFormula,
        format!(
            "T − [L_n:Q] is evaluated with [L_n:Q] replaced by its lower bound {m}·{ell}·{}·{d}·{p}^n; \
             the subtraction needs that value to bound [L_n:Q] from above",
            ell - 1
        ),
        WarningCode::DegreeBoundDirection,
    ));
    if let Some(input) = selmer {
        if let Some(reserve) = plan.selmer.filter(|r| !r.reserve_applied) {
            trace.push(flagged(
                None,
                Citation::FineSelmerGrowth,
                format!(
                    "plan uses N = {} for both bounds without adding 2·s0 = {}; the fine Selmer \
                     column follows that accounting",
                    reserve.target_n,
                    2 * input.s0
                ),
                WarningCode::SelmerReserveNotApplied,
            ));
        }
        trace.push(flagged(
            None,
            Citation::SClassGap,
            "the comparison is printed as |r_ℓ(Cl) − r_ℓ(Cl_S)| ≥ 2·s0·ℓ^n but used as an upper \
             bound on the gap; the gap is subtracted here with base ℓ^n as printed"
                .into(),
            WarningCode::SClassGapDirection,
        ));
    }

    for layer in 0..=n_max {
        let t_lower = plan.ramified_lower(layer);
        let degree_lower = plan.degree_lower(layer);
        let ambiguous = ambiguous_lower(&t_lower, &degree_lower);
        let class_rank = class_rank_lower(plan, layer);
        let n = Some(layer);
        trace.push(line(
            n,
            Citation::KummerTower,
            format!("T ≥ t·p^n = {}·{p}^{layer} = {t_lower}; [L_n:Q] ≥ {degree_lower}", plan.t),
        ));
        trace.push(line(
            n,
            Citation::AmbiguousClassNumberFormula,
            format!("r_ℓ(Am_st(L_n/K_n)) ≥ {t_lower} − {degree_lower} = {ambiguous}"),
        ));
        trace.push(line(
            n,
            Citation::ClassRankGrowth,
            format!("r_{ell}(Cl(L_{layer})) ≥ r_{ell}(Am_st) ≥ N·p^n = {}·{p}^{layer} = {class_rank}", plan.n),
        ));

        let (gap, conservative, paper) = match selmer {
            None => (None, None, None),
            Some(input) => {
                let bound = fine_selmer_lower(plan, input.variety, input.s0, layer)?;
                let gap = s_class_gap(input.s0, ell, layer);
                let q = plan.q_min;
                trace.push(line(
                    n,
                    Citation::FineSelmerVsSClass,
                    format!(
                        "r_{ell}(R(A/L_{layer})) ≥ r_{ell}(Cl_S(L_{layer}))·r_{ell}(A(L_{layer})[{ell}]) − 2·{}",
                        input.variety.dim_a
                    ),
                ));
                trace.push(line(
                    n,
                    Citation::SClassGap,
                    format!("r_{ell}(Cl_S(L_{layer})) ≥ r_{ell}(Cl(L_{layer})) − 2·{}·{ell}^{layer} = r_{ell}(Cl(L_{layer})) − {gap}", input.s0),
                ));
                let case = if ell < p { "ℓ < p" } else { "ℓ > p" };
                trace.push(line(
                    n,
                    Citation::FineSelmerGrowth,
                    format!(
                        "{case}, q = {q}: r_{ell}(R(A/L_{layer})) ≥ N·q^n − 2·dim A = {} − {} = {} (conservative)",
                        bound.paper,
                        2 * input.variety.dim_a,
                        bound.conservative
                    ),
                ));
                trace.push(flagged(
                    n,
                    Citation::FineSelmerGrowth,
                    format!("printed final step drops −2·dim A: r_{ell}(R(A/L_{layer})) ≥ N·q^n = {}", bound.paper),
                    WarningCode::FineSelmerFinalStep,
                ));
                (Some(gap), Some(bound.conservative), Some(bound.paper))
            }
        };

        rows.push(CertificateRow {
            n: layer,
            t_lower,
            degree_lower,
            ambiguous_lower: ambiguous,
            class_rank_lower: class_rank,
            s_class_gap: gap,
            fine_selmer_lower_conservative: conservative,
            fine_selmer_lower_paper: paper,
        });
    }

    Ok(BoundCertificate {
        ell,
        p,
        n: plan.n,
        t: plan.t.clone(),
        q_min: plan.q_min,
        s0: selmer.map(|s| s.s0),
        variety: selmer.map(|s| s.variety.clone()),
        rows,
        inequality_trace: trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::{build_tower_plan, BaseField, GammaSpec, PlanRequest, SelmerRequest};

    fn elliptic_11a1() -> AbelianVarietyDesc {
        AbelianVarietyDesc {
            label: "11a1".into(),
            dim_a: 1,
            torsion_nontrivial_at_ell: true,
            bad_primes: [11].into(),
            provenance: Provenance::ExternalDatabase,
        }
    }

    fn ex1_plan(s0: u64) -> TowerPlan {
        build_tower_plan(&PlanRequest {
            ell: 5,
            p: 3,
            n: 2,
            gamma: GammaSpec::abelian(3, 1, 2),
            base: BaseField::Cyclotomic { conductor: 3 },
            checklist: None,
            selmer: Some(SelmerRequest { s0, apply_reserve: false }),
            explicit_primes: None,
        })
        .unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(ell_rank(&FiniteAbelianGroup::trivial(), 5), 0);
        assert_eq!(ell_rank(&FiniteAbelianGroup::from_u64s(&[5, 25, 50]).unwrap(), 5), 3);
        assert_eq!(ell_rank(&FiniteAbelianGroup::from_u64s(&[13]).unwrap(), 7), 0);
        assert_eq!(ell_rank(&FiniteAbelianGroup::from_u64s(&[2, 6, 12]).unwrap(), 3), 2);
        assert_eq!(FiniteAbelianGroup::from_u64s(&[5, 7]), Err(Error::InvalidChain));
        assert_eq!(FiniteAbelianGroup::from_u64s(&[1, 5]), Err(Error::InvalidChain));
    }

    #[test]
    fn ambiguous_examples() {
        for n in 0..6 {
            let pn = Integer::from(3).pow(n);
            let got = ambiguous_lower(&(Integer::from(42) * &pn), &(Integer::from(40) * &pn));
            assert_eq!(got, Integer::from(2) * &pn);
            let pn = Integer::from(7).pow(n);
            let got = ambiguous_lower(&(Integer::from(60) * &pn), &(Integer::from(54) * &pn));
            assert_eq!(got, Integer::from(6) * &pn);
        }
        assert_eq!(ambiguous_lower(&Integer::from(5), &Integer::from(10)), Integer::zero());
    }

    #[test]
    fn gap_examples() {
        assert_eq!(s_class_gap(1, 5, 0), Integer::from(2));
        assert_eq!(s_class_gap(3, 5, 2), Integer::from(150));
        assert_eq!(s_class_gap(2, 3, 1), Integer::from(12));
    }

    #[test]
    fn fine_selmer_examples() {
        let plan = ex1_plan(2);
        let e = elliptic_11a1();
        let b = fine_selmer_lower(&plan, &e, 2, 0).unwrap();
        assert_eq!((b.paper, b.conservative), (Integer::from(2), Integer::from(0)));
        let b = fine_selmer_lower(&plan, &e, 2, 2).unwrap();
        assert_eq!((b.paper, b.conservative), (Integer::from(18), Integer::from(16)));
        let mut no_torsion = e.clone();
        no_torsion.torsion_nontrivial_at_ell = false;
        assert_eq!(fine_selmer_lower(&plan, &no_torsion, 2, 0), Err(Error::TorsionHypothesisUnmet));
        assert_eq!(
            fine_selmer_lower(&plan, &e, 3, 0),
            Err(Error::PlanNotInflated { requested: 3, declared: Some(2) })
        );
    }

    #[test]
    fn certificate_example1() {
        let plan = ex1_plan(2);
        let e = elliptic_11a1();
        let cert = build_certificate(&plan, Some(SelmerInput { variety: &e, s0: 2 }), 4).unwrap();
        let class: Vec<Integer> = cert.rows.iter().map(|r| r.class_rank_lower.clone()).collect();
        let expect: Vec<Integer> = [2, 6, 18, 54, 162].into_iter().map(Integer::from).collect();
        assert_eq!(class, expect);
        let paper: Vec<Integer> = cert.rows.iter().map(|r| r.fine_selmer_lower_paper.clone().unwrap()).collect();
        assert_eq!(paper, expect);
        assert!(cert
            .inequality_trace
            .iter()
            .any(|l| l.warning == Some(WarningCode::SelmerReserveNotApplied)));

        let single = build_certificate(&plan, None, 0).unwrap();
        assert_eq!(single.rows.len(), 1);
        assert_eq!(single.rows[0].n, 0);
        assert!(single.rows[0].fine_selmer_lower_paper.is_none());
    }
}
