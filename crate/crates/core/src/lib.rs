//! Exact engine for infinite towers of local quadratic transforms of a
//! regular local ring along a monomial valuation.
//!
//! A tower starts from a regular local base with a distinguished system of
//! parameters, each assigned an exact positive weight (rational tuples under
//! the lexicographic order, or real algebraic numbers of the form
//! `Σ qᵢ·√nᵢ`). Each step divides out the unique lowest-weight parameter and
//! moves to the next stage; the limit objects of the resulting infinite
//! chain — the union ring, its maximal ideal, the Noetherian hull, and the
//! boundary valuation — are what this crate reasons about.
//!
//! Everything is exact integer/rational arithmetic. Questions that quantify
//! over all stages are answered with certificates whose verification replays
//! finite arithmetic; horizon-bounded observations are reported as evidence,
//! never as certainty.
//!
//! Module map:
//! * [`value`] — exact ordered weight scales and sign decisions,
//! * [`monomial`] — Laurent exponent vectors and monomial ideals,
//! * [`tower`] — frames, steps, orders, transforms, membership,
//! * [`cone`] — exact rational cone membership with witnesses,
//! * [`certificate`] — verified claims about all later centers,
//! * [`analysis`] — graded verdicts about the limit objects,
//! * [`scenario`] — serializable scenarios, reports, and assertions,
//! * [`oracle`] — independent reference implementations for tests,
//! * [`anchors`] — the fixed citation vocabulary for certified verdicts.

pub mod anchors;
pub mod analysis;
pub mod certificate;
pub mod cone;
pub mod monomial;
pub mod oracle;
pub mod scenario;
pub mod tower;
pub mod value;

pub use anchors::Anchor;
pub use analysis::{analyze, Analysis, AnalysisOptions, Judgment, Verdict};
pub use monomial::{ExponentVector, MonomialIdeal};
pub use tower::{Tower, TowerStatus};
pub use value::{Rational, ValueMode, ValueSign, WeightValue};
