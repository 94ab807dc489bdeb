//! The tower construction: validate Γ and the base field, compute t,
//! select t split primes, form the Kummer element α and record the field
//! diagram with per-layer counts.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{self, Integer};
use crate::citation::Citation;
use crate::cyclotomic::{self, PrimeIdeal};
use crate::error::{Error, Result};
use crate::finite_poly;
use crate::intpoly::IntPoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GammaFamily {
    /// Z_p^d
    Abelian,
    /// Γ(s) = ⟨x, y, z : [x,z] = [y,z] = 1, [x,y] = z^(p^s)⟩
    Nilpotent { s: u64 },
    /// Any other uniform group, given by a presentation the caller vouches for.
    Custom { presentation: String },
}

impl fmt::Display for GammaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaFamily::Abelian => write!(f, "abelian"),
            GammaFamily::Nilpotent { s } => write!(f, "Γ({s})"),
            GammaFamily::Custom { presentation } => write!(f, "custom {presentation}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaSpec {
    pub p: u64,
    pub d: u64,
    /// Order of the fixed-point-free automorphism.
    pub m: u64,
    pub family: GammaFamily,
}

impl GammaSpec {
    pub fn abelian(p: u64, d: u64, m: u64) -> Self {
        GammaSpec { p, d, m, family: GammaFamily::Abelian }
    }

    pub fn nilpotent(p: u64, s: u64, m: u64) -> Self {
        GammaSpec { p, d: 3, m, family: GammaFamily::Nilpotent { s } }
    }

    pub fn presentation(&self) -> String {
        match &self.family {
            GammaFamily::Abelian => format!("Z_{}^{}", self.p, self.d),
            GammaFamily::Nilpotent { s } => {
                format!("⟨x, y, z : [x,z] = [y,z] = 1, [x,y] = z^({}^{s})⟩", self.p)
            }
            GammaFamily::Custom { presentation } => presentation.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub code: String,
    pub message: String,
    pub citation: Citation,
}

impl Finding {
    fn new(code: &str, message: impl Into<String>, citation: Citation) -> Self {
        Finding { code: code.to_string(), message: message.into(), citation }
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} {}", self.code, self.message, self.citation)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub failures: Vec<Finding>,
    pub notes: Vec<Finding>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, code: &str, message: impl Into<String>, citation: Citation) {
        self.failures.push(Finding::new(code, message, citation));
    }

    fn note(&mut self, code: &str, message: impl Into<String>, citation: Citation) {
        self.notes.push(Finding::new(code, message, citation));
    }

    fn absorb(&mut self, other: ValidationReport) {
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }

    fn into_result(self) -> Result<ValidationReport> {
        if self.passed() {
            Ok(self)
        } else {
            Err(Error::ValidationFailed(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.failures.iter().map(Finding::to_string).collect();
        if parts.is_empty() {
            write!(f, "passed")
        } else {
            write!(f, "{}", parts.join("; "))
        }
    }
}

/// Checks the structural constraints on Γ and its automorphism order.
pub fn validate_gamma(spec: &GammaSpec) -> ValidationReport {
    let mut report = ValidationReport::default();
    if !arith::is_prime_u64(spec.p) {
        report.fail("gamma.p-not-prime", format!("p = {} is not prime", spec.p), Citation::UniformGroup);
    }
    if spec.d == 0 {
        report.fail("gamma.d-zero", "dimension d must be >= 1", Citation::UniformGroup);
    }
    if !arith::is_prime_u64(spec.m) {
        report.fail(
            "gamma.m-not-prime",
            format!("automorphism order m = {} must be prime", spec.m),
            Citation::FixedPointFreeAutomorphism,
        );
    }
    if spec.m == 2 && spec.family != GammaFamily::Abelian {
        report.fail(
            "gamma.m2-nonabelian",
            format!("m = 2 forces Γ ≅ Z_p^d, got {}", spec.family),
            Citation::FixedPointFreeAutomorphism,
        );
    }
    match &spec.family {
        GammaFamily::Abelian => {
            if spec.m > 2 {
                report.note(
                    "gamma.abelian-m",
                    format!("Z_p^d with a fixed-point-free automorphism of order {} is taken as given", spec.m),
                    Citation::FixedPointFreeAutomorphism,
                );
            }
        }
        GammaFamily::Nilpotent { s } => {
            if spec.d != 3 {
                report.fail("gamma.nilpotent-d", format!("Γ(s) has dimension 3, got d = {}", spec.d), Citation::UniformGroup);
            }
            if *s == 0 {
                report.fail("gamma.nilpotent-s", "Γ(s) needs s >= 1", Citation::UniformGroup);
            }
            if *s == 1 && spec.m == 3 && spec.p % 3 != 1 {
                report.fail(
                    "gamma.gamma1-p-mod-3",
                    format!("Γ(1) with m = 3 needs p ≡ 1 mod 3, but p = {} ≡ {} mod 3", spec.p, spec.p % 3),
                    Citation::FixedPointFreeAutomorphism,
                );
            }
            if (*s, spec.m) != (1, 3) && spec.m != 2 {
                report.fail(
                    "gamma.nilpotent-automorphism",
                    format!("no fixed-point-free automorphism of order {} is known here for Γ({s})", spec.m),
                    Citation::FixedPointFreeAutomorphism,
                );
            }
        }
        GammaFamily::Custom { presentation } => {
            if presentation.trim().is_empty() {
                report.fail("gamma.custom-empty", "custom family needs a presentation", Citation::UniformGroup);
            }
            report.note(
                "gamma.custom",
                "custom presentation: uniformity and the automorphism are asserted, not checked",
                Citation::UniformGroup,
            );
        }
    }
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Computed,
    ExternalDatabase,
    Asserted,
}

/// The four base-field conditions required when m > 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionChecklist {
    pub m: u64,
    pub base_field_desc: String,
    pub f0_totally_imaginary: bool,
    pub contains_mu_p: bool,
    pub unique_prime_above_p: bool,
    pub p_part_of_p_class_group_trivial: bool,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionReport {
    pub vacuous: bool,
    pub p_rational: bool,
    pub report: ValidationReport,
}

impl AssumptionReport {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

pub fn check_assumption(checklist: &AssumptionChecklist) -> AssumptionReport {
    let mut report = ValidationReport::default();
    if checklist.m <= 2 {
        report.note("assumption.vacuous", "m = 2: no base-field assumption is needed", Citation::BaseFieldAssumption);
        return AssumptionReport { vacuous: true, p_rational: false, report };
    }
    let items = [
        (checklist.f0_totally_imaginary, "assumption.item1", "F₀ is not totally imaginary"),
        (checklist.contains_mu_p, "assumption.item2", "F₀ does not contain μ_p"),
        (checklist.unique_prime_above_p, "assumption.item3", "F has more than one prime above p"),
        (
            checklist.p_part_of_p_class_group_trivial,
            "assumption.item4",
            "the p-part of the 𝔭-class group of F is nontrivial",
        ),
    ];
    for (holds, code, message) in items {
        if !holds {
            report.fail(code, message, Citation::BaseFieldAssumption);
        }
    }
    let p_rational = checklist.contains_mu_p
        && checklist.unique_prime_above_p
        && checklist.p_part_of_p_class_group_trivial;
    if p_rational {
        report.note("assumption.p-rational", "F is p-rational", Citation::PRationalityCriterion);
    }
    if checklist.provenance != Provenance::Computed {
        report.note(
            "assumption.provenance",
            format!("checklist facts are {:?}, not recomputed", checklist.provenance),
            Citation::BaseFieldAssumption,
        );
    }
    AssumptionReport { vacuous: false, p_rational, report }
}

/// The field K whose inert/split primes feed the construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseField {
    /// K = Q(ζ_c), a CM field (the m = 2 case). Inert rational primes are selected.
    Cyclotomic { conductor: u64 },
    /// K = F₀(θ) over F₀ = Q(ζ_c), θ a root of `defining_poly`. Rational
    /// primes splitting completely in F₀ whose primes stay inert in K are
    /// selected.
    RelativeCyclotomic { conductor: u64, defining_poly: IntPoly },
}

impl BaseField {
    pub fn conductor(&self) -> u64 {
        match self {
            BaseField::Cyclotomic { conductor } | BaseField::RelativeCyclotomic { conductor, .. } => *conductor,
        }
    }

    /// Whether q is an admissible split prime for this base.
    pub fn admits(&self, q: u64) -> bool {
        match self {
            BaseField::Cyclotomic { conductor } => cyclotomic::is_inert(q, *conductor).unwrap_or(false),
            BaseField::RelativeCyclotomic { conductor, defining_poly } => {
                let Ok(split) = cyclotomic::splitting_data(q, *conductor) else {
                    return false;
                };
                split.splits_completely()
                    && finite_poly::is_inert_in_relative_extension(defining_poly, q, *conductor)
                        .is_ok_and(|answers| answers.iter().all(|&b| b))
            }
        }
    }

    /// Number of split primes of the base lying over one admissible rational prime.
    pub fn primes_per_rational_prime(&self) -> u64 {
        match self {
            BaseField::Cyclotomic { .. } => 1,
            BaseField::RelativeCyclotomic { conductor, .. } => arith::euler_phi(*conductor),
        }
    }

    /// [K₀ : Q].
    fn k0_degree(&self) -> u64 {
        match self {
            BaseField::Cyclotomic { conductor } => (arith::euler_phi(*conductor) / 2).max(1),
            BaseField::RelativeCyclotomic { conductor, .. } => arith::euler_phi(*conductor),
        }
    }

    fn names(&self) -> (String, String) {
        match self {
            BaseField::Cyclotomic { conductor } => {
                (format!("Q(ζ_{conductor})⁺"), format!("Q(ζ_{conductor})"))
            }
            BaseField::RelativeCyclotomic { conductor, defining_poly } => (
                format!("Q(ζ_{conductor})"),
                format!("Q(ζ_{conductor})(θ), θ root of {defining_poly}"),
            ),
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names().1)
    }
}

/// t = N + m·d·ℓ(ℓ−1).
pub fn compute_t(n: u64, m: u64, d: u64, ell: u64) -> Integer {
    Integer::from(n) + Integer::from(m) * Integer::from(d) * Integer::from(ell) * Integer::from(ell - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramNode {
    pub id: String,
    pub field: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramEdge {
    pub from: String,
    pub to: String,
    /// Relative degree: a number, or "Γ" for the pro-p extensions.
    pub degree: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDiagram {
    pub nodes: Vec<DiagramNode>,
    pub edges: Vec<DiagramEdge>,
}

impl FieldDiagram {
    /// Product of the numeric edge degrees along the listed node path.
    pub fn path_degree(&self, path: &[&str]) -> Option<u64> {
        path.windows(2)
            .map(|w| {
                self.edges
                    .iter()
                    .find(|e| e.from == w[0] && e.to == w[1])
                    .and_then(|e| e.degree.parse::<u64>().ok())
            })
            .product()
    }
}

/// Everything the caller specifies for a tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanRequest {
    pub ell: u64,
    pub p: u64,
    pub n: u64,
    pub gamma: GammaSpec,
    pub base: BaseField,
    pub checklist: Option<AssumptionChecklist>,
    /// Declares the set S for the fine Selmer bound.
    pub selmer: Option<SelmerRequest>,
    /// Use these rational primes (verified) instead of the ascending search.
    pub explicit_primes: Option<Vec<u64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelmerRequest {
    /// Finite places in S.
    pub s0: u64,
    /// Build with N + 2·s0 in place of N. Without it the plan follows the
    /// worked examples, which use the same N for both bounds.
    pub apply_reserve: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelmerReserve {
    pub s0: u64,
    pub reserve_applied: bool,
    /// The N in the fine Selmer bound N·q^n.
    pub target_n: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerCounts {
    pub n: u32,
    pub ramified_lower: Integer,
    pub degree_lower: Integer,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerPlan {
    pub ell: u64,
    pub p: u64,
    /// The N entering t (already including 2·s0 when a reserve was applied).
    #[serde(rename = "N")]
    pub n: u64,
    pub gamma: GammaSpec,
    pub base: BaseField,
    pub q_min: u64,
    pub t: Integer,
    /// Rational primes, ascending.
    pub selected_primes: Vec<u64>,
    /// For a relative base: the first t primes of F₀ above `selected_primes`.
    pub selected_ideals: Vec<PrimeIdeal>,
    pub alpha: Integer,
    pub field_diagram: FieldDiagram,
    pub selmer: Option<SelmerReserve>,
    pub validation: ValidationReport,
}

impl TowerPlan {
    /// m·d·ℓ(ℓ−1)
    pub fn degree_factor(&self) -> Integer {
        Integer::from(self.gamma.m)
            * Integer::from(self.gamma.d)
            * Integer::from(self.ell)
            * Integer::from(self.ell - 1)
    }

    /// t·p^n
    pub fn ramified_lower(&self, layer: u32) -> Integer {
        &self.t * &Integer::from(self.p).pow(layer)
    }

    /// m·ℓ(ℓ−1)·d·p^n
    pub fn degree_lower(&self, layer: u32) -> Integer {
        self.degree_factor() * Integer::from(self.p).pow(layer)
    }

    pub fn layer(&self, layer: u32) -> LayerCounts {
        LayerCounts {
            n: layer,
            ramified_lower: self.ramified_lower(layer),
            degree_lower: self.degree_lower(layer),
        }
    }

    pub fn layers(&self, n_max: u32) -> Vec<LayerCounts> {
        (0..=n_max).map(|n| self.layer(n)).collect()
    }

    /// Number of split primes the plan provides (rational primes for a
    /// cyclotomic base, primes of F₀ for a relative one).
    pub fn split_prime_count(&self) -> usize {
        match self.base {
            BaseField::Cyclotomic { .. } => self.selected_primes.len(),
            BaseField::RelativeCyclotomic { .. } => self.selected_ideals.len(),
        }
    }
}

fn diagram(req: &PlanRequest) -> FieldDiagram {
    let (k0, k) = req.base.names();
    let ell = req.ell;
    let node = |id: &str, field: String| DiagramNode { id: id.to_string(), field };
    let edge = |from: &str, to: &str, degree: String| DiagramEdge {
        from: from.to_string(),
        to: to.to_string(),
        degree,
    };
    let gamma = "Γ".to_string();
    FieldDiagram {
        nodes: vec![
            node("Q", "Q".into()),
            node("K0", k0),
            node("K", k),
            node("K(zeta_ell)", format!("K(ζ_{ell})")),
            node("L", format!("K(ζ_{ell}, α^(1/{ell}))")),
            node("K_inf", format!("K_∞, Gal(K_∞/K) ≅ {}", req.gamma.presentation())),
            node("L_inf", "L_∞ = L·K_∞".into()),
        ],
        edges: vec![
            edge("Q", "K0", req.base.k0_degree().to_string()),
            edge("K0", "K", req.gamma.m.to_string()),
            edge("K", "K(zeta_ell)", (ell - 1).to_string()),
            edge("K(zeta_ell)", "L", ell.to_string()),
            edge("K", "K_inf", gamma.clone()),
            edge("L", "L_inf", gamma),
            edge("K_inf", "L_inf", (ell * (ell - 1)).to_string()),
        ],
    }
}

fn check_base(req: &PlanRequest, report: &mut ValidationReport) {
    let m = req.gamma.m;
    match &req.base {
        BaseField::Cyclotomic { conductor } => {
            if m != 2 {
                report.fail(
                    "base.cyclotomic-needs-m2",
                    format!("a cyclotomic CM base is the m = 2 case, got m = {m}"),
                    Citation::CmSplitPrimes,
                );
            }
            if arith::euler_phi(*conductor) < 2 {
                report.fail(
                    "base.not-cm",
                    format!("Q(ζ_{conductor}) is not a CM field"),
                    Citation::CmSplitPrimes,
                );
            }
        }
        BaseField::RelativeCyclotomic { conductor, defining_poly } => {
            if m <= 2 {
                report.fail(
                    "base.relative-needs-m-gt-2",
                    "a relative base F/F₀ is the m > 2 case",
                    Citation::BaseFieldAssumption,
                );
            }
            if defining_poly.degree() != Some(m as usize) {
                report.fail(
                    "base.relative-degree",
                    format!("[F:F₀] must equal m = {m}, defining polynomial is {defining_poly}"),
                    Citation::BaseFieldAssumption,
                );
            }
            if *conductor < 3 {
                report.fail("base.conductor", "F₀ = Q(ζ_c) needs c >= 3", Citation::BaseFieldAssumption);
            }
            if *conductor % req.p != 0 {
                report.fail(
                    "base.mu-p",
                    format!("F₀ = Q(ζ_{conductor}) does not contain μ_{}", req.p),
                    Citation::BaseFieldAssumption,
                );
            }
        }
    }
}

/// Builds the tower plan: validation, t, prime selection, α and the diagram.
pub fn build_tower_plan(req: &PlanRequest) -> Result<TowerPlan> {
    if req.ell == req.p {
        return Err(Error::EqualPrimes(req.ell));
    }
    let mut report = ValidationReport::default();
    for (name, v) in [("ell", req.ell), ("p", req.p)] {
        if !arith::is_prime_u64(v) {
            report.fail("params.not-prime", format!("{name} = {v} is not prime"), Citation::KummerTower);
        }
    }
    if req.ell == 2 {
        report.fail("params.ell-two", "ℓ must be odd", Citation::KummerTower);
    }
    if req.n == 0 {
        report.fail("params.n-zero", "N must be >= 1", Citation::ClassRankGrowth);
    }
    if req.gamma.p != req.p {
        report.fail(
            "params.gamma-p",
            format!("Γ is pro-{} but p = {}", req.gamma.p, req.p),
            Citation::UniformGroup,
        );
    }
    report.absorb(validate_gamma(&req.gamma));
    if req.gamma.m > 2 {
        match &req.checklist {
            None => report.fail(
                "assumption.missing",
                "m > 2 needs a base-field checklist",
                Citation::BaseFieldAssumption,
            ),
            Some(list) => {
                if list.m != req.gamma.m {
                    report.fail(
                        "assumption.m-mismatch",
                        format!("checklist is for m = {}, Γ has m = {}", list.m, req.gamma.m),
                        Citation::BaseFieldAssumption,
                    );
                }
                report.absorb(check_assumption(list).report);
            }
        }
    }
    check_base(req, &mut report);
    if req.selmer.is_some_and(|s| s.s0 == 0) {
        report.fail("params.s0-zero", "S contains the primes above p, so s0 >= 1", Citation::SClassGap);
    }
    let report = report.into_result()?;

    let selmer = req.selmer.map(|s| SelmerReserve {
        s0: s.s0,
        reserve_applied: s.apply_reserve,
        target_n: req.n,
    });
    let plan_n = match selmer {
        Some(s) if s.reserve_applied => req.n + 2 * s.s0,
        _ => req.n,
    };
    let t = compute_t(plan_n, req.gamma.m, req.gamma.d, req.ell);
    let t_count = t
        .to_u64()
        .ok_or_else(|| Error::InvalidInput(format!("t = {t} is too large to enumerate")))?;
    let per_prime = req.base.primes_per_rational_prime();
    let rational_needed = t_count.div_ceil(per_prime) as usize;

    let selected_primes = match &req.explicit_primes {
        None => {
            let exclude: BTreeSet<u64> = [req.p].into();
            arith::primes_ascending(|q| req.base.admits(q), &exclude, rational_needed)?
        }
        Some(list) => verify_explicit(req, list, rational_needed)?,
    };

    let selected_ideals = match &req.base {
        BaseField::Cyclotomic { .. } => Vec::new(),
        BaseField::RelativeCyclotomic { conductor, .. } => {
            let mut ideals = Vec::with_capacity(t_count as usize);
            for &q in &selected_primes {
                ideals.extend(cyclotomic::primes_above(q, *conductor)?);
            }
            ideals.truncate(t_count as usize);
            ideals
        }
    };

    let factors: Vec<Integer> = selected_primes.iter().map(|&q| Integer::from(q)).collect();
    let alpha = arith::mul_many(&factors)?;

    Ok(TowerPlan {
        ell: req.ell,
        p: req.p,
        n: plan_n,
        gamma: req.gamma.clone(),
        base: req.base.clone(),
        q_min: req.ell.min(req.p),
        t,
        selected_primes,
        selected_ideals,
        alpha,
        field_diagram: diagram(req),
        selmer,
        validation: report,
    })
}

fn verify_explicit(req: &PlanRequest, list: &[u64], needed: usize) -> Result<Vec<u64>> {
    let mut report = ValidationReport::default();
    let citation = match req.base {
        BaseField::Cyclotomic { .. } => Citation::CmSplitPrimes,
        BaseField::RelativeCyclotomic { .. } => Citation::RelativeSplitPrimes,
    };
    if list.windows(2).any(|w| w[0] >= w[1]) {
        report.fail("primes.order", "explicit primes must be strictly ascending", citation);
    }
    if list.len() != needed {
        report.fail(
            "primes.count",
            format!("{} rational primes are needed, {} were given", needed, list.len()),
            citation,
        );
    }
    for &q in list {
        if !arith::is_prime_u64(q) {
            report.fail("primes.not-prime", format!("{q} is not prime"), citation);
        } else if q == req.p {
            report.fail("primes.is-p", format!("{q} equals p"), citation);
        } else if !req.base.admits(q) {
            report.fail("primes.not-admissible", format!("{q} is not an admissible split prime for {}", req.base), citation);
        }
    }
    report.into_result()?;
    Ok(list.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex1_request() -> PlanRequest {
        PlanRequest {
            ell: 5,
            p: 3,
            n: 2,
            gamma: GammaSpec::abelian(3, 1, 2),
            base: BaseField::Cyclotomic { conductor: 3 },
            checklist: None,
            selmer: None,
            explicit_primes: None,
        }
    }

    fn ex3_checklist() -> AssumptionChecklist {
        AssumptionChecklist {
            m: 3,
            base_field_desc: "F₀ = Q(ζ_7), F = F₀(θ)".into(),
            f0_totally_imaginary: true,
            contains_mu_p: true,
            unique_prime_above_p: true,
            p_part_of_p_class_group_trivial: true,
            provenance: Provenance::ExternalDatabase,
        }
    }

    fn ex3_request() -> PlanRequest {
        PlanRequest {
            ell: 3,
            p: 7,
            n: 6,
            gamma: GammaSpec::nilpotent(7, 1, 3),
            base: BaseField::RelativeCyclotomic {
                conductor: 7,
                defining_poly: "x^3 - x^2 - 4*x - 1".parse().unwrap(),
            },
            checklist: Some(ex3_checklist()),
            selmer: None,
            explicit_primes: Some(vec![43, 127, 491, 673, 953, 1499, 1583, 2129, 2311, 2591]),
        }
    }

    #[test]
    fn t_formula() {
        assert_eq!(compute_t(2, 2, 1, 5), Integer::from(42));
        assert_eq!(compute_t(6, 3, 3, 3), Integer::from(60));
        assert_eq!(compute_t(10, 2, 3, 5), Integer::from(130));
        assert_eq!(compute_t(10, 2, 2, 5), Integer::from(90));
    }

    #[test]
    fn gamma_validation() {
        assert!(validate_gamma(&GammaSpec::abelian(3, 1, 2)).passed());
        assert!(validate_gamma(&GammaSpec::nilpotent(7, 1, 3)).passed());
        let r = validate_gamma(&GammaSpec::nilpotent(5, 1, 3));
        assert!(!r.passed());
        assert_eq!(r.failures[0].code, "gamma.gamma1-p-mod-3");
        assert!(r.failures[0].message.contains("p = 5 ≡ 2 mod 3"));
        let r = validate_gamma(&GammaSpec { p: 7, d: 3, m: 2, family: GammaFamily::Nilpotent { s: 1 } });
        assert!(r.failures.iter().any(|f| f.code == "gamma.m2-nonabelian"));
        let r = validate_gamma(&GammaSpec { p: 7, d: 2, m: 3, family: GammaFamily::Nilpotent { s: 1 } });
        assert!(r.failures.iter().any(|f| f.code == "gamma.nilpotent-d"));
        assert!(!validate_gamma(&GammaSpec::abelian(4, 1, 2)).passed());
        assert!(!validate_gamma(&GammaSpec::abelian(3, 0, 2)).passed());
        assert!(!validate_gamma(&GammaSpec::abelian(3, 1, 4)).passed());
    }

    #[test]
    fn assumption_checks() {
        let r = check_assumption(&ex3_checklist());
        assert!(r.passed() && r.p_rational && !r.vacuous);
        let mut bad = ex3_checklist();
        bad.unique_prime_above_p = false;
        let r = check_assumption(&bad);
        assert!(!r.passed());
        assert_eq!(r.report.failures.len(), 1);
        assert_eq!(r.report.failures[0].code, "assumption.item3");
        assert!(!r.p_rational);
        bad.m = 2;
        let r = check_assumption(&bad);
        assert!(r.passed() && r.vacuous);
    }

    #[test]
    fn example1_plan() {
        let plan = build_tower_plan(&ex1_request()).unwrap();
        assert_eq!(plan.t, Integer::from(42));
        assert_eq!(plan.selected_primes.len(), 42);
        assert_eq!(plan.selected_primes[..5], [2, 5, 11, 17, 23]);
        assert_eq!(*plan.selected_primes.last().unwrap(), 419);
        assert_eq!(plan.degree_lower(0), Integer::from(40));
        assert_eq!(plan.degree_lower(2), Integer::from(360));
        assert_eq!(plan.q_min, 3);
        assert!(plan.selected_ideals.is_empty());
    }

    #[test]
    fn example3_plan() {
        let plan = build_tower_plan(&ex3_request()).unwrap();
        assert_eq!(plan.t, Integer::from(60));
        assert_eq!(plan.selected_ideals.len(), 60);
        assert_eq!(plan.split_prime_count(), 60);
        assert_eq!(plan.ramified_lower(1), Integer::from(420));
        assert_eq!(plan.alpha, "52022018732462455461735231667".parse().unwrap());
        // Ascending search picks 29 first.
        let mut req = ex3_request();
        req.explicit_primes = None;
        let plan = build_tower_plan(&req).unwrap();
        assert_eq!(plan.selected_primes[..3], [29, 43, 71]);
    }

    #[test]
    fn rejects_bad_requests() {
        let mut req = ex1_request();
        req.p = 5;
        req.gamma.p = 5;
        assert_eq!(build_tower_plan(&req).unwrap_err(), Error::EqualPrimes(5));

        let mut req = ex3_request();
        req.checklist = None;
        let Err(Error::ValidationFailed(r)) = build_tower_plan(&req) else { panic!() };
        assert_eq!(r.failures[0].code, "assumption.missing");

        let mut req = ex3_request();
        req.explicit_primes = Some(vec![29, 43, 71, 113, 127, 197, 211, 379, 449, 491]);
        assert!(build_tower_plan(&req).is_ok());
        req.explicit_primes = Some(vec![13, 43, 71, 113, 127, 197, 211, 379, 449, 491]);
        assert!(matches!(build_tower_plan(&req), Err(Error::ValidationFailed(_))));

        let mut req = ex1_request();
        req.ell = 2;
        assert!(matches!(build_tower_plan(&req), Err(Error::ValidationFailed(_))));

        let mut req = ex1_request();
        req.gamma.m = 3;
        assert!(matches!(build_tower_plan(&req), Err(Error::ValidationFailed(_))));
    }

    #[test]
    fn selmer_reserve_inflates_n() {
        let mut req = ex1_request();
        req.selmer = Some(SelmerRequest { s0: 2, apply_reserve: true });
        let plan = build_tower_plan(&req).unwrap();
        assert_eq!(plan.n, 6);
        assert_eq!(plan.t, Integer::from(46));
        assert_eq!(plan.selmer.unwrap().target_n, 2);
        req.selmer = Some(SelmerRequest { s0: 2, apply_reserve: false });
        let plan = build_tower_plan(&req).unwrap();
        assert_eq!((plan.n, plan.t.clone()), (2, Integer::from(42)));
        req.selmer = Some(SelmerRequest { s0: 0, apply_reserve: true });
        assert!(matches!(build_tower_plan(&req), Err(Error::ValidationFailed(_))));
    }

    #[test]
    fn diagram_paths() {
        let plan = build_tower_plan(&ex1_request()).unwrap();
        let d = plan.field_diagram.path_degree(&["Q", "K0", "K", "K(zeta_ell)", "L"]).unwrap();
        assert_eq!(Integer::from(d), plan.degree_lower(0));
        let plan = build_tower_plan(&ex3_request()).unwrap();
        let d = plan.field_diagram.path_degree(&["Q", "K0", "K", "K(zeta_ell)", "L"]).unwrap();
        assert_eq!(d, 108);
        assert!(Integer::from(d) >= plan.degree_lower(0));
        assert_eq!(plan.field_diagram.path_degree(&["K", "K_inf"]), None);
    }
}
