//! Citation anchors attached to certified verdicts.
//!
//! Every certified verdict produced by the analysis layer names the rule (or
//! combination of rules) that justifies it. Anchors are stable identifiers so
//! that machine reports can be diffed and schema-checked: a report is only
//! well-formed if each certified verdict cites anchors from this fixed set.

use serde::{Deserialize, Serialize};
use std::fmt;

/// A stable identifier for one justification rule used by certificates and
/// certified verdicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Anchor {
    /// A local quadratic transform with center in the minimal-weight slot is
    /// again a regular local ring dominated by the driving valuation, and the
    /// transform composes along the tower.
    TransformComposition,
    /// The transform of an ideal divides out exactly `ord` powers of the
    /// center parameter: `I' = center^-ord(I) * I` re-expressed upstairs.
    TransformQuotientRule,
    /// Membership of the contracted product ideals `R ∩ m_0⋯m_k R_{k+1}`
    /// characterizes which localizations of the base contain the tower union.
    ContractedIdealTower,
    /// At most `d − 1` order valuation rings of tower stages can contain the
    /// tower union.
    OrderValuationBound,
    /// The center slot is eventually constant if and only if its weight is
    /// infinitesimally small against every other slot; the center parameter
    /// then generates the maximal ideal of the union.
    PrincipalCenterStability,
    /// The maximal ideal of the union is either principal or idempotent;
    /// idempotency is equivalent to infinitely many direction changes.
    PrincipalOrIdempotent,
    /// Some center parameter generates an ideal primary for the maximal ideal
    /// of the union.
    PrimaryCenterParameter,
    /// The union is Noetherian if and only if it is a discrete rank-one
    /// valuation ring.
    DvrIffNoetherian,
    /// Inverting one primary center parameter yields the Noetherian hull, the
    /// smallest Noetherian overring, and the hull is a localization of the
    /// tower stages off the closed fiber.
    HullLocalization,
    /// A monomial is a unit of the Noetherian hull exactly when its principal
    /// transform reaches the unit ideal from every sufficiently late stage.
    TransformUnitIsHullUnit,
    /// For each nonzero element the stage order sequence is eventually of one
    /// constant sign (negative, zero-stable, or positive/divergent).
    EventualOrderTrichotomy,
    /// The limit valuation ring is the union over n of the intersections of
    /// stage order valuation rings from stage n on: elements whose stage
    /// order is eventually nonnegative.
    LimitValuationUnion,
    /// The tower union equals the intersection of its limit valuation ring
    /// with its Noetherian hull.
    IntersectionDecomposition,
    /// Principal ideals primary for the maximal ideal of the union are
    /// linearly ordered; generators of primary ideals are comparable.
    PrimaryComparability,
    /// The complete integral closure of the union equals the multiplier ring
    /// of the maximal ideal and is cut out inside the hull by one valuation.
    MultiplierRingBound,
    /// The union is archimedean exactly when no element's stage order grows
    /// at least like `n · ord(x)` for a primary parameter `x` and every `n`.
    ArchimedeanPowerCriterion,
    /// Only finitely many height-one primes of the base survive to the union;
    /// a never-centered variable slot survives as a height-one prime.
    HeightOneContainment,
    /// In dimension two an infinite tower union is itself a valuation ring.
    DimTwoValuation,
    /// With a principal maximal ideal, the union is a valuation ring exactly
    /// when it is a discrete rank-one valuation ring (rank considerations).
    RankOneDvr,
    /// A weight tie stops the tower: the subtractive weight recursion is the
    /// Euclidean algorithm, which terminates on commensurable inputs.
    EuclideanTermination,
    /// Membership (or a weight identity) exhibited at a concrete stage, plus
    /// monotonicity of the stage chain.
    DirectStageWitness,
    /// A frame exponent fixed by every feasible center step stays literally
    /// constant for the rest of the tower.
    ExponentPatternInvariance,
    /// A domain is a valuation ring exactly when for every nonzero fraction
    /// it contains the fraction or its inverse.
    ValuationDichotomy,
    /// Rational linear independence of the initial weight values over the
    /// common scale rules out any future weight tie.
    IndependentWeightsNeverTie,
}

impl Anchor {
    /// All anchors, in declaration order. Reports are schema-checked against
    /// this list.
    pub const ALL: &'static [Anchor] = &[
        Anchor::TransformComposition,
        Anchor::TransformQuotientRule,
        Anchor::ContractedIdealTower,
        Anchor::OrderValuationBound,
        Anchor::PrincipalCenterStability,
        Anchor::PrincipalOrIdempotent,
        Anchor::PrimaryCenterParameter,
        Anchor::DvrIffNoetherian,
        Anchor::HullLocalization,
        Anchor::TransformUnitIsHullUnit,
        Anchor::EventualOrderTrichotomy,
        Anchor::LimitValuationUnion,
        Anchor::IntersectionDecomposition,
        Anchor::PrimaryComparability,
        Anchor::MultiplierRingBound,
        Anchor::ArchimedeanPowerCriterion,
        Anchor::HeightOneContainment,
        Anchor::DimTwoValuation,
        Anchor::RankOneDvr,
        Anchor::EuclideanTermination,
        Anchor::DirectStageWitness,
        Anchor::ExponentPatternInvariance,
        Anchor::ValuationDichotomy,
        Anchor::IndependentWeightsNeverTie,
    ];

    /// Stable kebab-case identifier used in machine reports.
    pub fn id(self) -> &'static str {
        match self {
            Anchor::TransformComposition => "transform-composition",
            Anchor::TransformQuotientRule => "transform-quotient-rule",
            Anchor::ContractedIdealTower => "contracted-ideal-tower",
            Anchor::OrderValuationBound => "order-valuation-bound",
            Anchor::PrincipalCenterStability => "principal-center-stability",
            Anchor::PrincipalOrIdempotent => "principal-or-idempotent",
            Anchor::PrimaryCenterParameter => "primary-center-parameter",
            Anchor::DvrIffNoetherian => "dvr-iff-noetherian",
            Anchor::HullLocalization => "hull-localization",
            Anchor::TransformUnitIsHullUnit => "transform-unit-is-hull-unit",
            Anchor::EventualOrderTrichotomy => "eventual-order-trichotomy",
            Anchor::LimitValuationUnion => "limit-valuation-union",
            Anchor::IntersectionDecomposition => "intersection-decomposition",
            Anchor::PrimaryComparability => "primary-comparability",
            Anchor::MultiplierRingBound => "multiplier-ring-bound",
            Anchor::ArchimedeanPowerCriterion => "archimedean-power-criterion",
            Anchor::HeightOneContainment => "height-one-containment",
            Anchor::DimTwoValuation => "dim-two-valuation",
            Anchor::RankOneDvr => "rank-one-dvr",
            Anchor::EuclideanTermination => "euclidean-termination",
            Anchor::DirectStageWitness => "direct-stage-witness",
            Anchor::ExponentPatternInvariance => "exponent-pattern-invariance",
            Anchor::ValuationDichotomy => "valuation-dichotomy",
            Anchor::IndependentWeightsNeverTie => "independent-weights-never-tie",
        }
    }

    /// Look an anchor up by its stable identifier.
    pub fn from_id(id: &str) -> Option<Anchor> {
        Anchor::ALL.iter().copied().find(|a| a.id() == id)
    }
}

impl fmt::Display for Anchor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_round_trip() {
        for (i, a) in Anchor::ALL.iter().enumerate() {
            assert_eq!(Anchor::from_id(a.id()), Some(*a));
            for b in &Anchor::ALL[i + 1..] {
                assert_ne!(a.id(), b.id());
            }
        }
    }

    #[test]
    fn serde_uses_kebab_case_ids() {
        let json = serde_json::to_string(&Anchor::PrincipalCenterStability).unwrap();
        assert_eq!(json, "\"principal-center-stability\"");
    }
}
