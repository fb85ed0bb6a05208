//! Verdicts about the limit ring of a tower.
//!
//! The limit objects are the union ring of all stages, its maximal ideal
//! (the union of the stage maximal ideals), the Noetherian hull (the
//! smallest Noetherian overring, a localization of the union at one
//! element), and the boundary valuation (elements whose stage order is
//! eventually nonnegative). Membership and structure questions about them
//! quantify over infinitely many stages, so every answer carries a grade:
//!
//! * **certified** — backed by a verified center certificate plus exact
//!   arithmetic that covers all later stages;
//! * **evidence** — consistent with everything computed up to the horizon,
//!   but not protected against later behavior changes;
//! * **undecided** — the computed data does not lean either way.
//!
//! Every certified verdict cites the background facts it rests on as
//! [`Anchor`] values, so reports can be audited claim by claim.

use crate::anchors::Anchor;
use crate::certificate::{
    discover_center_certificate, CenterCertificate, CertificateError,
};
use crate::cone::rank;
use crate::monomial::{ExponentVector, MonomialError, MonomialIdeal};
use crate::tower::{Tower, TowerError, TowerStatus};
use crate::value::{ValueError, ValueMode, WeightValue};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

/// Errors from the analysis driver.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error(transparent)]
    Certificate(#[from] CertificateError),
    #[error(transparent)]
    Value(#[from] ValueError),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
}

/// Answer grade for a yes/no question.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Judgment {
    CertifiedYes,
    CertifiedNo,
    EvidenceYes,
    EvidenceNo,
    Undecided,
}

impl Judgment {
    /// The boolean answer, when there is one.
    pub fn decided(&self) -> Option<bool> {
        match self {
            Judgment::CertifiedYes | Judgment::EvidenceYes => Some(true),
            Judgment::CertifiedNo | Judgment::EvidenceNo => Some(false),
            Judgment::Undecided => None,
        }
    }

    /// Whether the answer holds at every stage, not just the computed ones.
    pub fn is_certified(&self) -> bool {
        matches!(self, Judgment::CertifiedYes | Judgment::CertifiedNo)
    }

    /// Stable identifier used in machine reports.
    pub fn id(&self) -> &'static str {
        match self {
            Judgment::CertifiedYes => "certified-yes",
            Judgment::CertifiedNo => "certified-no",
            Judgment::EvidenceYes => "evidence-yes",
            Judgment::EvidenceNo => "evidence-no",
            Judgment::Undecided => "undecided",
        }
    }
}

/// A graded answer with its citations and a human-readable justification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub judgment: Judgment,
    pub anchors: Vec<Anchor>,
    pub reason: String,
}

impl Verdict {
    fn certified(yes: bool, anchors: Vec<Anchor>, reason: String) -> Self {
        Verdict {
            judgment: if yes {
                Judgment::CertifiedYes
            } else {
                Judgment::CertifiedNo
            },
            anchors,
            reason,
        }
    }

    fn evidence(yes: bool, anchors: Vec<Anchor>, reason: String) -> Self {
        Verdict {
            judgment: if yes {
                Judgment::EvidenceYes
            } else {
                Judgment::EvidenceNo
            },
            anchors,
            reason,
        }
    }

    fn undecided(reason: String) -> Self {
        Verdict {
            judgment: Judgment::Undecided,
            anchors: Vec::new(),
            reason,
        }
    }
}

/// Eventual behavior of the stage-order sequence of one monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrdFateKind {
    /// The order equals `value` at every stage from `stage` on.
    ConstantFrom { stage: usize, value: BigInt },
    /// The order grows without bound.
    DivergesUp,
    /// The order decreases without bound.
    DivergesDown,
    /// No eventual pattern was established.
    Unclassified,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdFate {
    pub kind: OrdFateKind,
    pub certified: bool,
    pub anchors: Vec<Anchor>,
    pub reason: String,
}

/// Structure of the union maximal ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NIdealKind {
    /// Generated by the single eventually-constant center parameter.
    Principal { slot: usize },
    /// Equal to its own square.
    Idempotent,
    /// The tower stopped; the ideal is the final stage's maximal ideal.
    FiniteStage,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NClassification {
    pub kind: NIdealKind,
    pub certified: bool,
    pub anchors: Vec<Anchor>,
    pub reason: String,
}

/// Order structure of the boundary valuation's value group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValueGroupKind {
    Archimedean,
    NonArchimedean,
    FiniteStage,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueGroupClassification {
    pub kind: ValueGroupKind,
    pub certified: bool,
    pub anchors: Vec<Anchor>,
    pub reason: String,
}

/// Headline classification of the union ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LimitKind {
    IsValuation,
    NotValuation,
    TowerFinite,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitClassification {
    pub kind: LimitKind,
    pub certified: bool,
    /// Which inference produced the verdict (descriptive tag).
    pub rule: String,
    pub anchors: Vec<Anchor>,
    pub reason: String,
}

/// All verdicts about a single fraction-field monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeAnalysis {
    pub probe: ExponentVector,
    pub rendered: String,
    pub weight: WeightValue,
    pub ord_prefix: Vec<BigInt>,
    pub first_stage: Option<usize>,
    pub ord_fate: OrdFate,
    /// Membership in the union ring.
    pub in_limit: Verdict,
    /// Membership in the boundary valuation.
    pub in_boundary: Verdict,
    /// Membership in the Noetherian hull.
    pub in_hull: Verdict,
    /// Whether the monomial is a unit of the Noetherian hull.
    pub hull_unit: Verdict,
    /// `in_limit == in_boundary ∧ in_hull`, when all three are decided.
    pub decomposition_consistent: Option<bool>,
}

/// A stage parameter with negative order at an earlier stage: an element of
/// the union ring outside that stage's order-valuation ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderWitnessDetail {
    pub at_stage: usize,
    pub slot: usize,
    pub exponent: ExponentVector,
    pub order_value: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderValuationWitness {
    pub order_stage: usize,
    pub detail: Option<OrderWitnessDetail>,
    pub scanned_through: usize,
    pub anchors: Vec<Anchor>,
    pub reason: String,
}

/// Tunable limits for one analysis run.
#[derive(Debug, Clone)]
pub struct AnalysisOptions {
    /// Extend the tower through this stage.
    pub horizon: usize,
    /// Tail length used to read off the recurring centers.
    pub window: usize,
    /// Largest hull-unit exponent tried for hull membership.
    pub n_max: usize,
    /// How many stage orders to record per probe.
    pub ord_prefix: usize,
    /// Candidate invariant forms for certificate discovery.
    pub hint_forms: Vec<Vec<BigInt>>,
    /// Fraction-field monomials to analyze.
    pub probes: Vec<ExponentVector>,
    /// Stages whose order valuations get a witness search.
    pub order_witness_stages: Vec<usize>,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            horizon: 500,
            window: 50,
            n_max: 10,
            ord_prefix: 16,
            hint_forms: Vec::new(),
            probes: Vec::new(),
            order_witness_stages: vec![0],
        }
    }
}

/// The full analysis of one tower.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub dim: usize,
    pub mode: ValueMode,
    pub horizon: usize,
    pub status: TowerStatus,
    pub steps_computed: usize,
    pub centers_head: Vec<usize>,
    /// `(slot, count)` over all computed steps, sorted by slot.
    pub center_counts: Vec<(usize, usize)>,
    pub first_direction_change: Option<usize>,
    pub certificate: Option<CenterCertificate>,
    pub certificate_summary: Option<String>,
    /// Slots certified to be centered infinitely often.
    pub cio_slots: Option<Vec<usize>>,
    /// The certified hull unit used for hull-membership scans, if any.
    pub hull_unit_exponent: Option<ExponentVector>,
    pub never_tie: Verdict,
    pub n_ideal: NClassification,
    pub value_group: ValueGroupClassification,
    pub probes: Vec<ProbeAnalysis>,
    pub order_witnesses: Vec<OrderValuationWitness>,
    pub classification: LimitClassification,
    pub decomposition_violations: usize,
}

struct Ctx<'a> {
    tower: &'a Tower,
    cert: Option<&'a CenterCertificate>,
    cio: Option<Vec<usize>>,
    never_tie_certified: bool,
    n_max: usize,
}

impl<'a> Ctx<'a> {
    fn last(&self) -> usize {
        self.tower.last_frame()
    }

    fn finite(&self) -> bool {
        !self.tower.is_active()
    }

    fn archimedean(&self) -> bool {
        self.tower.mode().is_archimedean()
    }

    /// Frame exponent at the certificate's start stage, plus the feasible
    /// slot set, when a certificate exists.
    fn cert_view(&self, v: &ExponentVector) -> Option<(usize, Vec<usize>, ExponentVector)> {
        let cert = self.cert?;
        let start = cert.start();
        let u = self.tower.frame_exponent(start, v).ok()?;
        Some((start, cert.feasible_slots(), u))
    }

    /// Whether the exponent is a fixed point of every feasible step: it then
    /// literally never changes again.
    fn invariant_exponent(&self, v: &ExponentVector) -> Option<(usize, ExponentVector)> {
        let (start, feasible, u) = self.cert_view(v)?;
        let total = u.coord_sum();
        feasible
            .iter()
            .all(|&s| u.coord(s) == &total)
            .then_some((start, u))
    }
}

/// Run the full analysis: extend the tower to the horizon, search for a
/// center certificate, classify the limit objects, and grade every probe.
pub fn analyze(tower: &mut Tower, options: &AnalysisOptions) -> Result<Analysis, AnalysisError> {
    tower.extend_to(options.horizon)?;
    let cert = if tower.is_active() {
        discover_center_certificate(tower, &options.hint_forms, options.window)?
    } else {
        None
    };

    let never_tie = never_tie_verdict(tower, cert.as_ref());
    let never_tie_certified = never_tie.judgment == Judgment::CertifiedYes;
    let cio = cert
        .as_ref()
        .and_then(|c| c.certified_infinitely_often(tower.mode(), never_tie_certified));

    let ctx = Ctx {
        tower,
        cert: cert.as_ref(),
        cio: cio.clone(),
        never_tie_certified,
        n_max: options.n_max,
    };

    let hull_unit_exponent = ctx.cio.as_ref().map(|slots| {
        let cols = ctx.tower.frame(ctx.last()).expect("last frame exists").columns();
        let mut v = ExponentVector::zeros(ctx.tower.dim());
        for &s in slots {
            v = v.add(&cols[s]);
        }
        v
    });

    let n_ideal = classify_union_ideal(&ctx, options.window);
    let value_group = classify_value_group(&ctx);

    let mut probes = Vec::new();
    for p in &options.probes {
        probes.push(probe_analysis(&ctx, p, options.ord_prefix)?);
    }
    let decomposition_violations = probes
        .iter()
        .filter(|p| p.decomposition_consistent == Some(false))
        .count();

    let mut order_witnesses = Vec::new();
    for &j in &options.order_witness_stages {
        if j <= ctx.last() {
            order_witnesses.push(order_valuation_witness(&ctx, j)?);
        }
    }

    let classification = classify_limit(&ctx, &never_tie, &n_ideal, &probes)?;

    let centers = tower.centers();
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for &c in centers {
        match counts.iter_mut().find(|(slot, _)| *slot == c) {
            Some((_, n)) => *n += 1,
            None => counts.push((c, 1)),
        }
    }
    counts.sort_unstable();

    Ok(Analysis {
        dim: tower.dim(),
        mode: tower.mode().clone(),
        horizon: options.horizon,
        status: tower.status().clone(),
        steps_computed: centers.len(),
        centers_head: centers.iter().copied().take(32).collect(),
        center_counts: counts,
        first_direction_change: tower.first_direction_change(options.horizon),
        certificate_summary: cert.as_ref().map(CenterCertificate::describe),
        certificate: cert,
        cio_slots: cio,
        hull_unit_exponent,
        never_tie,
        n_ideal,
        value_group,
        probes,
        order_witnesses,
        classification,
        decomposition_violations,
    })
}

fn never_tie_verdict(tower: &Tower, cert: Option<&CenterCertificate>) -> Verdict {
    if let TowerStatus::TerminatedTie { step, tied } = tower.status() {
        return Verdict::certified(
            false,
            vec![Anchor::EuclideanTermination],
            format!("the minimal weight ties among slots {tied:?} at step {step}"),
        );
    }
    let coeff_rows: Vec<Vec<crate::value::Rational>> = tower
        .initial_weights()
        .iter()
        .map(|w| w.coeffs().to_vec())
        .collect();
    if rank(&coeff_rows) == tower.dim() {
        return Verdict::certified(
            true,
            vec![Anchor::IndependentWeightsNeverTie],
            "the initial weights are linearly independent over the rationals, and every stage \
             weight is an invertible integer combination of them, so two slots can never carry \
             equal weights"
                .to_string(),
        );
    }
    if let Some((start, center)) = cert.and_then(CenterCertificate::constant_center) {
        return Verdict::certified(
            true,
            vec![Anchor::PrincipalCenterStability],
            format!(
                "slot {center} is the strict weight minimum at every stage from {start} on, and \
                 the finitely many earlier steps were computed without a tie"
            ),
        );
    }
    Verdict::evidence(
        true,
        vec![],
        format!(
            "no tie occurred through stage {}; later ties are not excluded",
            tower.last_frame()
        ),
    )
}

fn classify_union_ideal(ctx: &Ctx, window: usize) -> NClassification {
    if ctx.finite() {
        return NClassification {
            kind: NIdealKind::FiniteStage,
            certified: true,
            anchors: vec![Anchor::EuclideanTermination],
            reason: "the tower stopped, so the union ideal is the final stage's maximal ideal"
                .to_string(),
        };
    }
    if let Some((start, slot)) = ctx.cert.and_then(CenterCertificate::constant_center) {
        return NClassification {
            kind: NIdealKind::Principal { slot },
            certified: true,
            anchors: vec![
                Anchor::PrincipalCenterStability,
                Anchor::PrincipalOrIdempotent,
            ],
            reason: format!(
                "the center is slot {slot} at every stage from {start} on, so the union ideal \
                 is generated by that one parameter"
            ),
        };
    }
    if let Some(cio) = ctx.cio.as_ref().filter(|c| c.len() >= 2) {
        return NClassification {
            kind: NIdealKind::Idempotent,
            certified: true,
            anchors: vec![
                Anchor::PrincipalOrIdempotent,
                Anchor::ArchimedeanPowerCriterion,
            ],
            reason: format!(
                "slots {cio:?} are each centered infinitely often, so the center is never \
                 eventually constant; an ideal of this kind is principal or idempotent, and \
                 principality requires an eventually constant center"
            ),
        };
    }
    let centers = ctx.tower.centers();
    let tail_from = centers.len().saturating_sub(window.max(1));
    let mut tail: Vec<usize> = centers[tail_from..].to_vec();
    tail.sort_unstable();
    tail.dedup();
    match tail.len() {
        0 => NClassification {
            kind: NIdealKind::Unknown,
            certified: false,
            anchors: vec![],
            reason: "no steps were computed".to_string(),
        },
        1 => NClassification {
            kind: NIdealKind::Principal { slot: tail[0] },
            certified: false,
            anchors: vec![Anchor::PrincipalOrIdempotent],
            reason: format!(
                "the center stayed at slot {} across the last {} computed steps (no certificate)",
                tail[0],
                centers.len() - tail_from
            ),
        },
        _ => NClassification {
            kind: NIdealKind::Idempotent,
            certified: false,
            anchors: vec![Anchor::PrincipalOrIdempotent],
            reason: format!(
                "the center moved among slots {tail:?} across the last {} computed steps \
                 (no certificate)",
                centers.len() - tail_from
            ),
        },
    }
}

fn classify_value_group(ctx: &Ctx) -> ValueGroupClassification {
    if ctx.finite() {
        return ValueGroupClassification {
            kind: ValueGroupKind::FiniteStage,
            certified: true,
            anchors: vec![Anchor::EuclideanTermination, Anchor::DvrIffNoetherian],
            reason: "the tower stopped; the boundary is the final stage's order valuation"
                .to_string(),
        };
    }
    if !ctx.archimedean() {
        if let Some((start, center)) = ctx.cert.and_then(CenterCertificate::constant_center) {
            return ValueGroupClassification {
                kind: ValueGroupKind::NonArchimedean,
                certified: true,
                anchors: vec![Anchor::PrincipalCenterStability, Anchor::ValuationDichotomy],
                reason: format!(
                    "from stage {start} on the center parameter (slot {center}) keeps stage \
                     order 1 while every other slot's parameter gains order 1 per step, so one \
                     positive value is infinitely divisible by another"
                ),
            };
        }
    }
    if ctx.archimedean() && ctx.never_tie_certified {
        return ValueGroupClassification {
            kind: ValueGroupKind::Archimedean,
            certified: true,
            anchors: vec![
                Anchor::IndependentWeightsNeverTie,
                Anchor::ArchimedeanPowerCriterion,
            ],
            reason: "the driving weights are real numbers and the tower never stops, so the \
                     boundary valuation's value group embeds in the reals"
                .to_string(),
        };
    }
    ValueGroupClassification {
        kind: ValueGroupKind::Unknown,
        certified: false,
        anchors: vec![],
        reason: "no certificate pins down the eventual center behavior".to_string(),
    }
}

fn probe_analysis(
    ctx: &Ctx,
    v: &ExponentVector,
    ord_prefix: usize,
) -> Result<ProbeAnalysis, AnalysisError> {
    let fate = ord_fate(ctx, v)?;
    let in_limit = member_limit(ctx, v)?;
    let in_boundary = member_boundary(ctx, v, &fate)?;
    let in_hull = member_hull(ctx, v)?;
    let hull_unit = hull_unit(ctx, v)?;
    let decomposition_consistent = match (
        in_limit.judgment.decided(),
        in_boundary.judgment.decided(),
        in_hull.judgment.decided(),
    ) {
        (Some(s), Some(b), Some(h)) => Some(s == (b && h)),
        _ => None,
    };
    Ok(ProbeAnalysis {
        probe: v.clone(),
        rendered: v.render(),
        weight: ctx.tower.monomial_weight(v)?,
        ord_prefix: ctx
            .tower
            .ord_sequence(v, ord_prefix.saturating_sub(1))?,
        first_stage: ctx.tower.first_membership(v, ctx.last())?,
        ord_fate: fate,
        in_limit,
        in_boundary,
        in_hull,
        hull_unit,
        decomposition_consistent,
    })
}

fn ord_fate(ctx: &Ctx, v: &ExponentVector) -> Result<OrdFate, AnalysisError> {
    if v.is_zero() {
        return Ok(OrdFate {
            kind: OrdFateKind::ConstantFrom {
                stage: 0,
                value: BigInt::zero(),
            },
            certified: true,
            anchors: vec![],
            reason: "the unit monomial has order 0 everywhere".to_string(),
        });
    }
    if ctx.finite() {
        let last = ctx.last();
        return Ok(OrdFate {
            kind: OrdFateKind::ConstantFrom {
                stage: last,
                value: ctx.tower.ord(last, v)?,
            },
            certified: true,
            anchors: vec![Anchor::EuclideanTermination],
            reason: "the tower stopped; the final stage order is the eventual one".to_string(),
        });
    }
    if let Some((stage, u)) = ctx.invariant_exponent(v) {
        return Ok(OrdFate {
            kind: OrdFateKind::ConstantFrom {
                stage,
                value: u.coord_sum(),
            },
            certified: true,
            anchors: vec![Anchor::ExponentPatternInvariance],
            reason: format!(
                "the frame exponent {u:?} at stage {stage} is a fixed point of every feasible \
                 step, so it never changes again",
                u = u.coords()
            ),
        });
    }
    if let Some((start, center)) = ctx.cert.and_then(CenterCertificate::constant_center) {
        let u = ctx.tower.frame_exponent(start, v)?;
        let step: BigInt = (0..ctx.tower.dim())
            .filter(|&k| k != center)
            .map(|k| u.coord(k).clone())
            .sum();
        let kind = if step.is_positive() {
            OrdFateKind::DivergesUp
        } else if step.is_negative() {
            OrdFateKind::DivergesDown
        } else {
            OrdFateKind::ConstantFrom {
                stage: start,
                value: u.coord_sum(),
            }
        };
        return Ok(OrdFate {
            kind,
            certified: true,
            anchors: vec![
                Anchor::PrincipalCenterStability,
                Anchor::EventualOrderTrichotomy,
            ],
            reason: format!(
                "under a constant center the stage order changes by exactly {step} per step \
                 from stage {start} on"
            ),
        });
    }
    if ctx.archimedean() && ctx.never_tie_certified {
        if let Some(i) = ctx.tower.first_membership(v, ctx.last())? {
            return Ok(OrdFate {
                kind: OrdFateKind::DivergesUp,
                certified: true,
                anchors: vec![
                    Anchor::EventualOrderTrichotomy,
                    Anchor::ArchimedeanPowerCriterion,
                ],
                reason: format!(
                    "the monomial enters stage {i} with a nonzero nonnegative exponent; with \
                     real weights and no tie the order of such an element grows without bound"
                ),
            });
        }
        if let Some(i) = ctx.tower.first_membership(&v.neg(), ctx.last())? {
            return Ok(OrdFate {
                kind: OrdFateKind::DivergesDown,
                certified: true,
                anchors: vec![
                    Anchor::EventualOrderTrichotomy,
                    Anchor::ArchimedeanPowerCriterion,
                ],
                reason: format!(
                    "the inverse monomial enters stage {i}, so its order grows without bound \
                     and this monomial's order is its negative"
                ),
            });
        }
    }
    // Evidence from the computed tail.
    let seq = ctx.tower.ord_sequence(v, ctx.last())?;
    let tail = &seq[seq.len().saturating_sub(8)..];
    let kind = if tail.windows(2).all(|w| w[1] > w[0]) {
        OrdFateKind::DivergesUp
    } else if tail.windows(2).all(|w| w[1] < w[0]) {
        OrdFateKind::DivergesDown
    } else if tail.windows(2).all(|w| w[1] == w[0]) {
        OrdFateKind::ConstantFrom {
            stage: seq.len() - tail.len(),
            value: tail[0].clone(),
        }
    } else {
        OrdFateKind::Unclassified
    };
    Ok(OrdFate {
        kind,
        certified: false,
        anchors: vec![Anchor::EventualOrderTrichotomy],
        reason: format!(
            "read from the last {} computed stage orders only",
            tail.len()
        ),
    })
}

fn member_limit(ctx: &Ctx, v: &ExponentVector) -> Result<Verdict, AnalysisError> {
    if v.is_zero() {
        return Ok(Verdict::certified(
            true,
            vec![Anchor::DirectStageWitness],
            "the unit monomial lies in every stage".to_string(),
        ));
    }
    if let Some(i) = ctx.tower.first_membership(v, ctx.last())? {
        return Ok(Verdict::certified(
            true,
            vec![Anchor::DirectStageWitness, Anchor::LimitValuationUnion],
            format!("all frame exponents are nonnegative at stage {i}"),
        ));
    }
    if ctx.finite() {
        return Ok(Verdict::certified(
            false,
            vec![Anchor::EuclideanTermination, Anchor::LimitValuationUnion],
            "the tower stopped, so the union ring is the final stage ring, which excludes \
             this monomial"
                .to_string(),
        ));
    }
    if let Some((start, feasible, u)) = ctx.cert_view(v) {
        for t in 0..ctx.tower.dim() {
            if !feasible.contains(&t) && u.coord(t).is_negative() {
                return Ok(Verdict::certified(
                    false,
                    vec![Anchor::LimitValuationUnion],
                    format!(
                        "slot {t} is never a center from stage {start} on, so its frame \
                         coordinate stays {} forever and the monomial never enters a stage",
                        u.coord(t)
                    ),
                ));
            }
        }
        if let Some((_, center)) = ctx.cert.and_then(CenterCertificate::constant_center) {
            // Every non-center coordinate is frozen and nonnegative here;
            // only the center coordinate moves, by the sum of the others.
            let step: BigInt = (0..ctx.tower.dim())
                .filter(|&k| k != center)
                .map(|k| u.coord(k).clone())
                .sum();
            if step.is_positive() {
                let deficit = -u.coord(center).clone();
                let entry = (&deficit + &step - BigInt::from(1)) / &step;
                return Ok(Verdict::certified(
                    true,
                    vec![Anchor::LimitValuationUnion, Anchor::PrincipalCenterStability],
                    format!(
                        "only the center coordinate is negative and it gains {step} per step, \
                         so the monomial enters about {entry} steps after stage {start}"
                    ),
                ));
            }
            return Ok(Verdict::certified(
                false,
                vec![Anchor::LimitValuationUnion, Anchor::PrincipalCenterStability],
                format!(
                    "the exponent is a frozen power of the center parameter with \
                     exponent {} < 0",
                    u.coord(center)
                ),
            ));
        }
        if ctx.invariant_exponent(v).is_some() && !u.is_nonnegative() {
            return Ok(Verdict::certified(
                false,
                vec![Anchor::ExponentPatternInvariance, Anchor::LimitValuationUnion],
                format!(
                    "the frame exponent {:?} is a fixed point of every feasible step and has a \
                     negative coordinate, so no stage ever contains the monomial",
                    u.coords()
                ),
            ));
        }
    }
    if ctx.archimedean()
        && ctx.never_tie_certified
        && ctx.tower.first_membership(&v.neg(), ctx.last())?.is_some()
    {
        return Ok(Verdict::certified(
            false,
            vec![Anchor::EventualOrderTrichotomy, Anchor::LimitValuationUnion],
            "the inverse monomial enters a stage, so this monomial's order diverges to \
             minus infinity and stage membership, which is upward closed, never happens"
                .to_string(),
        ));
    }
    Ok(Verdict::evidence(
        false,
        vec![Anchor::LimitValuationUnion],
        format!("not a member of any stage through {}", ctx.last()),
    ))
}

fn member_boundary(ctx: &Ctx, v: &ExponentVector, fate: &OrdFate) -> Result<Verdict, AnalysisError> {
    if v.is_zero() {
        return Ok(Verdict::certified(
            true,
            vec![Anchor::LimitValuationUnion],
            "the unit monomial has order 0 everywhere".to_string(),
        ));
    }
    if ctx.finite() {
        let last = ctx.last();
        let ord = ctx.tower.ord(last, v)?;
        return Ok(Verdict::certified(
            !ord.is_negative(),
            vec![Anchor::OrderValuationBound, Anchor::EuclideanTermination],
            format!("the final stage order is {ord}"),
        ));
    }
    let mut anchors = vec![Anchor::LimitValuationUnion, Anchor::EventualOrderTrichotomy];
    anchors.extend(fate.anchors.iter().copied());
    anchors.dedup();
    let verdict = match &fate.kind {
        OrdFateKind::ConstantFrom { stage, value } => {
            let yes = !value.is_negative();
            let reason = format!("the stage order settles at {value} from stage {stage} on");
            if fate.certified {
                Verdict::certified(yes, anchors, reason)
            } else {
                Verdict::evidence(yes, anchors, reason)
            }
        }
        OrdFateKind::DivergesUp => {
            let reason = "the stage order grows without bound".to_string();
            if fate.certified {
                Verdict::certified(true, anchors, reason)
            } else {
                Verdict::evidence(true, anchors, reason)
            }
        }
        OrdFateKind::DivergesDown => {
            let reason = "the stage order decreases without bound".to_string();
            if fate.certified {
                Verdict::certified(false, anchors, reason)
            } else {
                Verdict::evidence(false, anchors, reason)
            }
        }
        OrdFateKind::Unclassified => {
            Verdict::undecided("the stage-order sequence shows no eventual pattern".to_string())
        }
    };
    Ok(verdict)
}

fn member_hull(ctx: &Ctx, v: &ExponentVector) -> Result<Verdict, AnalysisError> {
    if v.is_zero() {
        return Ok(Verdict::certified(
            true,
            vec![Anchor::HullLocalization],
            "the unit monomial lies in every overring".to_string(),
        ));
    }
    if ctx.finite() {
        let inner = member_limit(ctx, v)?;
        let yes = inner.judgment.decided().expect("finite towers decide membership");
        return Ok(Verdict::certified(
            yes,
            vec![Anchor::DvrIffNoetherian, Anchor::HullLocalization],
            "the tower stopped, so the union ring is Noetherian and is its own hull".to_string(),
        ));
    }
    if let Some((start, feasible, u)) = ctx.cert_view(v) {
        for t in 0..ctx.tower.dim() {
            if !feasible.contains(&t) && u.coord(t).is_negative() {
                return Ok(Verdict::certified(
                    false,
                    vec![Anchor::HullLocalization, Anchor::TransformUnitIsHullUnit],
                    format!(
                        "slot {t} is never a center from stage {start} on, so its coordinate \
                         stays {} in every hull-unit multiple of the monomial, blocking \
                         membership in any stage",
                        u.coord(t)
                    ),
                ));
            }
        }
    }
    if let Some(cio) = ctx.cio.as_ref() {
        let last = ctx.last();
        let cols = ctx.tower.frame(last)?.columns();
        let mut y = ExponentVector::zeros(ctx.tower.dim());
        for &s in cio {
            y = y.add(&cols[s]);
        }
        let mut candidate = v.clone();
        for n in 0..=ctx.n_max {
            if let Some(i) = ctx.tower.first_membership(&candidate, last)? {
                return Ok(Verdict::certified(
                    true,
                    vec![
                        Anchor::HullLocalization,
                        Anchor::TransformUnitIsHullUnit,
                        Anchor::DirectStageWitness,
                    ],
                    format!(
                        "multiplying by the certified hull unit {n} time(s) gives a member of \
                         stage {i}"
                    ),
                ));
            }
            if n < ctx.n_max {
                candidate = candidate.add(&y);
            }
        }
        if let Some((start, center)) = ctx.cert.and_then(CenterCertificate::constant_center) {
            // All non-center coordinates are frozen and nonnegative (the
            // frozen-slot rule above did not fire), so a large enough power
            // of the center parameter always lifts the monomial into a stage.
            let u = ctx.tower.frame_exponent(ctx.last(), v)?;
            let needed = -u.coord(center).clone();
            return Ok(Verdict::certified(
                true,
                vec![Anchor::HullLocalization, Anchor::TransformUnitIsHullUnit],
                format!(
                    "every coordinate except the constant center (slot {center}, from stage \
                     {start}) is frozen nonnegative; multiplying by the center parameter \
                     {needed} time(s) gives a stage member"
                ),
            ));
        }
        return Ok(Verdict::evidence(
            false,
            vec![Anchor::HullLocalization],
            format!(
                "no hull-unit multiple up to exponent {} entered a stage through {}",
                ctx.n_max,
                ctx.last()
            ),
        ));
    }
    // No certified hull unit: scan with the recently centered parameters.
    let last = ctx.last();
    let centers = ctx.tower.centers();
    let tail_from = centers.len().saturating_sub(8);
    let mut recent: Vec<usize> = centers[tail_from..].to_vec();
    recent.sort_unstable();
    recent.dedup();
    let cols = ctx.tower.frame(last)?.columns();
    let mut y = ExponentVector::zeros(ctx.tower.dim());
    for &s in &recent {
        y = y.add(&cols[s]);
    }
    let mut candidate = v.clone();
    for n in 0..=ctx.n_max {
        if let Some(i) = ctx.tower.first_membership(&candidate, last)? {
            let reason = format!(
                "multiplying by the product of recently centered parameters {n} time(s) gives \
                 a member of stage {i}; that product is not a certified hull unit"
            );
            return Ok(Verdict::evidence(true, vec![Anchor::HullLocalization], reason));
        }
        if n < ctx.n_max {
            candidate = candidate.add(&y);
        }
    }
    Ok(Verdict::evidence(
        false,
        vec![Anchor::HullLocalization],
        format!(
            "no multiple by recently centered parameters entered a stage through {last}"
        ),
    ))
}

fn hull_unit(ctx: &Ctx, v: &ExponentVector) -> Result<Verdict, AnalysisError> {
    if v.is_zero() {
        return Ok(Verdict::certified(
            true,
            vec![Anchor::TransformUnitIsHullUnit],
            "the unit monomial is a unit everywhere".to_string(),
        ));
    }
    if ctx.finite() {
        let u = ctx.tower.frame_exponent(ctx.last(), v)?;
        return Ok(Verdict::certified(
            u.is_zero(),
            vec![Anchor::DvrIffNoetherian],
            "the hull is the final stage ring; its monomial units have zero exponent"
                .to_string(),
        ));
    }
    if let Some(cio) = ctx.cio.as_ref() {
        for (w, side) in [(v.clone(), "monomial"), (v.neg(), "inverse monomial")] {
            let u = ctx.tower.frame_exponent(ctx.last(), &w)?;
            if u.is_nonnegative() && u.support().iter().all(|s| cio.contains(s)) {
                return Ok(Verdict::certified(
                    true,
                    vec![Anchor::TransformUnitIsHullUnit],
                    format!(
                        "the {side} is supported on slots centered infinitely often, so its \
                         principal trail from every later stage reaches the unit ideal"
                    ),
                ));
            }
        }
    }
    // A monomial is a hull unit exactly when it and its inverse both lie in
    // the hull, so certified one-sided verdicts transfer.
    let direct = member_hull(ctx, v)?;
    let inverse = member_hull(ctx, &v.neg())?;
    for (side, verdict) in [("monomial", &direct), ("inverse monomial", &inverse)] {
        if verdict.judgment == Judgment::CertifiedNo {
            let mut anchors = verdict.anchors.clone();
            if !anchors.contains(&Anchor::TransformUnitIsHullUnit) {
                anchors.push(Anchor::TransformUnitIsHullUnit);
            }
            return Ok(Verdict::certified(
                false,
                anchors,
                format!("the {side} lies outside the hull: {}", verdict.reason),
            ));
        }
    }
    if direct.judgment == Judgment::CertifiedYes && inverse.judgment == Judgment::CertifiedYes {
        return Ok(Verdict::certified(
            true,
            vec![Anchor::HullLocalization, Anchor::TransformUnitIsHullUnit],
            "the monomial and its inverse are both certified members of the hull, so the \
             monomial is invertible there"
                .to_string(),
        ));
    }
    if direct.judgment.decided() == Some(true) && inverse.judgment.decided() == Some(true) {
        return Ok(Verdict::evidence(
            true,
            vec![Anchor::HullLocalization, Anchor::TransformUnitIsHullUnit],
            "the monomial and its inverse both appear in the hull, at least one of them only \
             as uncertified evidence"
                .to_string(),
        ));
    }
    // Evidence: run one principal trail to the horizon.
    for w in [v.clone(), v.neg()] {
        if let Some(f) = ctx.tower.first_membership(&w, ctx.last())? {
            let u = ctx.tower.frame_exponent(f, &w)?;
            let ideal = MonomialIdeal::new(f, vec![u])?;
            let trail = ctx.tower.transform_trail(ideal, ctx.last())?;
            if let Some(hit) = trail.unit_frame() {
                return Ok(Verdict::evidence(
                    true,
                    vec![Anchor::TransformUnitIsHullUnit],
                    format!(
                        "the principal trail from stage {f} reaches the unit ideal at stage \
                         {hit}; later trails were not certified"
                    ),
                ));
            }
            return Ok(Verdict::evidence(
                false,
                vec![Anchor::TransformUnitIsHullUnit],
                format!(
                    "the principal trail from stage {f} never reaches the unit ideal through \
                     stage {}",
                    ctx.last()
                ),
            ));
        }
    }
    Ok(Verdict::evidence(
        false,
        vec![Anchor::TransformUnitIsHullUnit],
        "neither the monomial nor its inverse enters any computed stage".to_string(),
    ))
}

fn order_valuation_witness(ctx: &Ctx, j: usize) -> Result<OrderValuationWitness, AnalysisError> {
    let last = ctx.last();
    for n in (j + 1)..=last {
        let cols = ctx.tower.frame(n)?.columns().to_vec();
        for (slot, c) in cols.iter().enumerate() {
            let ord = ctx.tower.ord(j, c)?;
            if ord.is_negative() {
                return Ok(OrderValuationWitness {
                    order_stage: j,
                    detail: Some(OrderWitnessDetail {
                        at_stage: n,
                        slot,
                        exponent: c.clone(),
                        order_value: ord.clone(),
                    }),
                    scanned_through: n,
                    anchors: vec![Anchor::OrderValuationBound, Anchor::LimitValuationUnion],
                    reason: format!(
                        "the stage-{n} parameter {} has stage-{j} order {ord} < 0; it lies in \
                         the union ring but outside the stage-{j} order valuation. Monomial \
                         members of the union ring are products of later-stage parameters, so \
                         the parameter scan is complete for monomials",
                        c.render()
                    ),
                });
            }
        }
    }
    Ok(OrderValuationWitness {
        order_stage: j,
        detail: None,
        scanned_through: last,
        anchors: vec![Anchor::OrderValuationBound],
        reason: format!(
            "every parameter through stage {last} has nonnegative stage-{j} order; the union \
             ring may still leave the order valuation beyond the horizon"
        ),
    })
}

fn classify_limit(
    ctx: &Ctx,
    never_tie: &Verdict,
    n_ideal: &NClassification,
    probes: &[ProbeAnalysis],
) -> Result<LimitClassification, AnalysisError> {
    if ctx.finite() {
        return Ok(LimitClassification {
            kind: LimitKind::TowerFinite,
            certified: true,
            rule: "tie-termination".to_string(),
            anchors: vec![Anchor::EuclideanTermination, Anchor::DvrIffNoetherian],
            reason: "a weight tie stopped the tower; the union ring is the final regular \
                     local stage"
                .to_string(),
        });
    }
    if ctx.tower.dim() == 2 && never_tie.judgment == Judgment::CertifiedYes {
        return Ok(LimitClassification {
            kind: LimitKind::IsValuation,
            certified: true,
            rule: "dimension-two-infinite".to_string(),
            anchors: vec![Anchor::DimTwoValuation, Anchor::RankOneDvr],
            reason: "an infinite tower over a two-dimensional base always unions to a \
                     valuation ring"
                .to_string(),
        });
    }
    if n_ideal.certified && matches!(n_ideal.kind, NIdealKind::Idempotent) {
        for p in probes {
            let bounded = matches!(p.ord_fate.kind, OrdFateKind::ConstantFrom { .. })
                && p.ord_fate.certified;
            if p.in_limit.judgment == Judgment::CertifiedNo
                && p.in_hull.judgment == Judgment::CertifiedYes
                && bounded
            {
                return Ok(LimitClassification {
                    kind: LimitKind::NotValuation,
                    certified: true,
                    rule: "multiplier-escape".to_string(),
                    anchors: vec![
                        Anchor::MultiplierRingBound,
                        Anchor::PrincipalOrIdempotent,
                    ],
                    reason: format!(
                        "{} lies in the hull with eventually constant stage order but outside \
                         the union ring; with an idempotent union ideal it multiplies that \
                         ideal into itself, and a valuation ring admits no such element \
                         outside itself",
                        p.rendered
                    ),
                });
            }
        }
    }
    for p in probes {
        if p.in_limit.judgment == Judgment::CertifiedNo {
            let inverse = member_limit(ctx, &p.probe.neg())?;
            if inverse.judgment == Judgment::CertifiedNo {
                return Ok(LimitClassification {
                    kind: LimitKind::NotValuation,
                    certified: true,
                    rule: "reciprocal-escape".to_string(),
                    anchors: vec![Anchor::ValuationDichotomy],
                    reason: format!(
                        "neither {} nor its inverse ever enters a stage, but a valuation ring \
                         contains every fraction-field element or its inverse",
                        p.rendered
                    ),
                });
            }
        }
    }
    let mut reason =
        "no certified rule applied at this horizon".to_string();
    if ctx.tower.dim() >= 3 {
        reason.push_str(
            "; over bases of dimension at least three the union can fail to be a valuation \
             ring even when every height-one test passes",
        );
    }
    Ok(LimitClassification {
        kind: LimitKind::Undecided,
        certified: false,
        rule: "none".to_string(),
        anchors: vec![Anchor::HeightOneContainment, Anchor::MultiplierRingBound],
        reason,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::Rational;

    fn rat(n: i64) -> Rational {
        Rational::from(BigInt::from(n))
    }

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector::from_i64s(v)
    }

    fn lex_tower() -> Tower {
        let mode = ValueMode::lex(2).unwrap();
        let w = |a: i64, b: i64| WeightValue::new(mode.clone(), vec![rat(a), rat(b)]).unwrap();
        Tower::new(vec![w(0, 1), w(1, 0), w(1, 1)]).unwrap()
    }

    fn sqrt_tower() -> Tower {
        let mode = ValueMode::algebraic(&[1, 2, 3]).unwrap();
        let w = |c: [i64; 3]| {
            WeightValue::new(mode.clone(), c.iter().map(|&q| rat(q)).collect()).unwrap()
        };
        Tower::new(vec![w([1, 0, 0]), w([0, 1, 0]), w([2, 0, 1])]).unwrap()
    }

    fn opts(horizon: usize, probes: Vec<ExponentVector>, hints: Vec<Vec<BigInt>>) -> AnalysisOptions {
        AnalysisOptions {
            horizon,
            probes,
            hint_forms: hints,
            order_witness_stages: vec![0, 1],
            ..AnalysisOptions::default()
        }
    }

    #[test]
    fn nested_infinitesimal_tower_full_analysis() {
        let mut t = lex_tower();
        let options = opts(
            60,
            vec![ev(&[0, -1, 1]), ev(&[-2, 1, 0]), ev(&[1, 0, 0])],
            vec![],
        );
        let a = analyze(&mut t, &options).unwrap();

        assert_eq!(a.never_tie.judgment, Judgment::CertifiedYes);
        assert!(matches!(a.n_ideal.kind, NIdealKind::Principal { slot: 0 }));
        assert!(a.n_ideal.certified);
        assert_eq!(a.value_group.kind, ValueGroupKind::NonArchimedean);
        assert!(a.value_group.certified);
        assert_eq!(a.first_direction_change, None);

        // z/y never enters any stage, nor does its inverse.
        let zy = &a.probes[0];
        assert_eq!(zy.in_limit.judgment, Judgment::CertifiedNo);
        assert_eq!(zy.in_hull.judgment, Judgment::CertifiedNo);
        // y/x² enters at stage 2.
        let yxx = &a.probes[1];
        assert_eq!(yxx.first_stage, Some(2));
        assert_eq!(yxx.in_limit.judgment, Judgment::CertifiedYes);
        assert_eq!(yxx.in_hull.judgment, Judgment::CertifiedYes);
        // x is the constant center parameter: order 1 forever, hull unit.
        let x = &a.probes[2];
        assert!(matches!(
            x.ord_fate.kind,
            OrdFateKind::ConstantFrom { ref value, .. } if *value == BigInt::from(1)
        ));
        assert!(x.ord_fate.certified);
        assert_eq!(x.hull_unit.judgment, Judgment::CertifiedYes);

        assert_eq!(a.classification.kind, LimitKind::NotValuation);
        assert_eq!(a.classification.rule, "reciprocal-escape");
        assert!(a.classification.certified);
        assert_eq!(a.decomposition_violations, 0);

        // Later-stage parameters escape the stage-0 and stage-1 order
        // valuations.
        for w in &a.order_witnesses {
            let detail = w.detail.as_ref().expect("witness exists");
            assert!(detail.order_value.is_negative());
        }
    }

    #[test]
    fn direction_changing_tower_full_analysis() {
        let mut t = sqrt_tower();
        let theta = ev(&[-1, -1, 1]);
        let options = opts(
            60,
            vec![theta.clone(), ev(&[1, 0, 0]), ev(&[0, 0, 1])],
            vec![vec![BigInt::from(-1), BigInt::from(-1), BigInt::from(1)]],
        );
        let a = analyze(&mut t, &options).unwrap();

        assert_eq!(a.never_tie.judgment, Judgment::CertifiedYes);
        assert!(matches!(a.n_ideal.kind, NIdealKind::Idempotent));
        assert!(a.n_ideal.certified);
        assert_eq!(a.value_group.kind, ValueGroupKind::Archimedean);
        assert!(a.value_group.certified);
        assert_eq!(a.cio_slots, Some(vec![0, 1]));
        assert_eq!(a.first_direction_change, Some(2));

        let th = &a.probes[0];
        assert!(matches!(
            th.ord_fate.kind,
            OrdFateKind::ConstantFrom { ref value, .. } if *value == BigInt::from(-1)
        ));
        assert!(th.ord_fate.certified);
        assert_eq!(th.in_limit.judgment, Judgment::CertifiedNo);
        assert_eq!(th.in_hull.judgment, Judgment::CertifiedYes);
        assert_eq!(th.in_boundary.judgment, Judgment::CertifiedNo);

        let x = &a.probes[1];
        assert!(matches!(x.ord_fate.kind, OrdFateKind::DivergesUp));
        assert!(x.ord_fate.certified);
        assert_eq!(x.hull_unit.judgment, Judgment::CertifiedYes);
        assert_eq!(x.in_limit.judgment, Judgment::CertifiedYes);

        assert_eq!(a.classification.kind, LimitKind::NotValuation);
        assert_eq!(a.classification.rule, "multiplier-escape");
        assert!(a.classification.certified);
        assert_eq!(a.decomposition_violations, 0);
    }

    #[test]
    fn two_dimensional_independent_weights_union_to_a_valuation() {
        let mode = ValueMode::algebraic(&[1, 2]).unwrap();
        let w = |a: i64, b: i64| WeightValue::new(mode.clone(), vec![rat(a), rat(b)]).unwrap();
        let mut t = Tower::new(vec![w(1, 0), w(0, 1)]).unwrap();
        let a = analyze(&mut t, &opts(40, vec![ev(&[1, -1])], vec![])).unwrap();
        assert_eq!(a.never_tie.judgment, Judgment::CertifiedYes);
        assert_eq!(a.classification.kind, LimitKind::IsValuation);
        assert_eq!(a.classification.rule, "dimension-two-infinite");
        assert!(a.classification.certified);
    }

    #[test]
    fn rational_weights_tie_and_stop() {
        let mode = ValueMode::algebraic(&[1]).unwrap();
        let w = |a: i64| WeightValue::new(mode.clone(), vec![rat(a)]).unwrap();
        let mut t = Tower::new(vec![w(2), w(3)]).unwrap();
        let a = analyze(&mut t, &opts(40, vec![ev(&[1, 0]), ev(&[-1, 1])], vec![])).unwrap();
        assert_eq!(
            a.status,
            TowerStatus::TerminatedTie { step: 2, tied: vec![0, 1] }
        );
        assert_eq!(a.never_tie.judgment, Judgment::CertifiedNo);
        assert_eq!(a.classification.kind, LimitKind::TowerFinite);
        assert_eq!(a.classification.rule, "tie-termination");
        assert!(matches!(a.n_ideal.kind, NIdealKind::FiniteStage));
        assert_eq!(a.value_group.kind, ValueGroupKind::FiniteStage);
        // Finite towers decide every membership.
        for p in &a.probes {
            assert!(p.in_limit.judgment.is_certified());
            assert!(p.in_hull.judgment.is_certified());
        }
        assert_eq!(a.decomposition_violations, 0);
    }

    #[test]
    fn every_certified_verdict_cites_anchors() {
        let mut t = sqrt_tower();
        let a = analyze(
            &mut t,
            &opts(
                50,
                vec![ev(&[-1, -1, 1]), ev(&[1, 0, 0])],
                vec![vec![BigInt::from(-1), BigInt::from(-1), BigInt::from(1)]],
            ),
        )
        .unwrap();
        let check = |v: &Verdict| {
            if v.judgment.is_certified() {
                assert!(!v.anchors.is_empty(), "certified verdict without citations: {v:?}");
            }
        };
        check(&a.never_tie);
        for p in &a.probes {
            check(&p.in_limit);
            check(&p.in_boundary);
            check(&p.in_hull);
            check(&p.hull_unit);
        }
        assert!(a.classification.certified && !a.classification.anchors.is_empty());
        assert!(a.n_ideal.certified && !a.n_ideal.anchors.is_empty());
        assert!(a.value_group.certified && !a.value_group.anchors.is_empty());
    }

    #[test]
    fn decomposition_holds_across_many_probes() {
        let mut t = lex_tower();
        let mut probes = Vec::new();
        for a in -3i64..=3 {
            for b in -2i64..=2 {
                for c in -2i64..=2 {
                    if a != 0 || b != 0 || c != 0 {
                        probes.push(ev(&[a, b, c]));
                    }
                }
            }
        }
        let analysis = analyze(&mut t, &opts(60, probes, vec![])).unwrap();
        assert_eq!(analysis.decomposition_violations, 0);
    }
}
