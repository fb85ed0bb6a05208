//! Certificates for the eventual center pattern of a tower.
//!
//! A tower computed to a finite horizon only exhibits finitely many center
//! choices. The verdicts we care about quantify over *all* later stages, so
//! they are backed by certificates whose verification is finite, exact
//! arithmetic plus an induction that is sound by construction:
//!
//! * [`ConstantCenterCert`] — one slot's weight is infinitesimal against
//!   every other slot's weight at some stage. Stepping at that slot leaves
//!   its weight fixed and preserves every infinitesimal comparison, so the
//!   same slot is the strict minimum at all later stages: the center is
//!   constant forever.
//! * [`InvariantFormsCert`] — a finite family of linear forms in the slot
//!   weights, each strictly positive at a start stage, whose transport
//!   through any step at a *feasible* center lands back in the nonnegative
//!   cone spanned by the family, the coordinate forms (weights are positive
//!   at every stage), and optional infinitesimal pair forms. Slots outside
//!   the feasible set carry an exclusion witness `e_s − e_k` in the same
//!   cone, so they are never a strict weight minimum; by induction every
//!   later center lies in the feasible set.
//!
//! All cone memberships are stored as explicit rational combinations, so
//! verification replays linear arithmetic only — it never re-runs a search.

use crate::cone::{nonneg_combination, verify_nonneg_combination, ConeError};
use crate::monomial::ExponentVector;
use crate::tower::{Tower, TowerError};
use crate::value::{linear_combine, Rational, ValueError, ValueMode, ValueSign};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

/// Errors from certificate verification (every variant names the exact
/// arithmetic fact that failed).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("certificate starts at stage {start}, tower computed through stage {available}")]
    StageUnavailable { start: usize, available: usize },
    #[error("the feasible center set is empty")]
    EmptyFeasible,
    #[error("slot {slot} is out of range for {dim} slots")]
    SlotOutOfRange { slot: usize, dim: usize },
    #[error("form {form} is the zero form")]
    ZeroForm { form: usize },
    #[error("form {form} is not strictly positive at the start stage")]
    FormNotPositive { form: usize },
    #[error("no transport witness for form {form} under center {center}")]
    MissingClosure { form: usize, center: usize },
    #[error("a stored combination does not recombine to its target")]
    BadCombination,
    #[error("pair ({small}, {big}) is not an infinitesimal comparison at the start stage")]
    PairNotInfinitesimal { small: usize, big: usize },
    #[error("pair ({small}, {big}) is not persistent under feasible center {center}")]
    PairNotPersistent {
        small: usize,
        big: usize,
        center: usize,
    },
    #[error("pair scale factors must be at least 1")]
    BadPairScale,
    #[error("slot {slot} is outside the feasible set but carries no exclusion witness")]
    ExclusionMissing { slot: usize },
    #[error("exclusion witness for slot {slot} compares it against itself")]
    ExclusionSelfCompare { slot: usize },
    #[error("computed center at stage {stage} is {center}, contradicting the certificate")]
    ReplayMismatch { stage: usize, center: usize },
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error(transparent)]
    Value(#[from] ValueError),
}

/// Claim: from `start` on, every step centers the same `center` slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantCenterCert {
    pub start: usize,
    pub center: usize,
}

impl ConstantCenterCert {
    /// Verify against a computed tower: the center slot's weight must be
    /// infinitesimal against every other slot at the start stage, and every
    /// computed step from the start stage on must agree.
    pub fn verify(&self, tower: &Tower) -> Result<(), CertificateError> {
        let d = tower.dim();
        if self.center >= d {
            return Err(CertificateError::SlotOutOfRange {
                slot: self.center,
                dim: d,
            });
        }
        if self.start > tower.last_frame() {
            return Err(CertificateError::StageUnavailable {
                start: self.start,
                available: tower.last_frame(),
            });
        }
        let weights = tower.frame(self.start)?.weights();
        for k in 0..d {
            if k != self.center
                && !weights[self.center].is_infinitesimal_against(&weights[k])?
            {
                return Err(CertificateError::PairNotInfinitesimal {
                    small: self.center,
                    big: k,
                });
            }
        }
        for (stage, &c) in tower.centers().iter().enumerate().skip(self.start) {
            if c != self.center {
                return Err(CertificateError::ReplayMismatch { stage, center: c });
            }
        }
        Ok(())
    }
}

/// An infinitesimal comparison used as a cone generator: the form
/// `e_big − scale · e_small` is positive at every stage where `small`'s
/// weight is infinitesimal against `big`'s, for any positive `scale`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfinitesimalPair {
    pub small: usize,
    pub big: usize,
    pub scale: BigInt,
}

/// A stored rational combination over the certificate's generator list
/// (forms first, then the coordinate forms, then the pair forms).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureWitness {
    pub form: usize,
    pub center: usize,
    pub coefficients: Vec<Rational>,
}

/// Exclusion of one slot: `e_slot − e_against` lies in the certified cone,
/// so the slot's weight never drops strictly below `against`'s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExclusionWitness {
    pub slot: usize,
    pub against: usize,
    pub coefficients: Vec<Rational>,
}

/// Claim: from `start` on, every center lies in `feasible`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantFormsCert {
    pub start: usize,
    pub feasible: Vec<usize>,
    pub forms: Vec<Vec<BigInt>>,
    pub pairs: Vec<InfinitesimalPair>,
    pub closure: Vec<ClosureWitness>,
    pub exclusions: Vec<ExclusionWitness>,
}

/// Transport of a slot form through one step at `center`: evaluating `form`
/// on the post-step weights equals evaluating the transported form on the
/// pre-step weights.
pub fn transport_form(form: &[BigInt], center: usize) -> Vec<BigInt> {
    let mut out = form.to_vec();
    let others: BigInt = form
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != center)
        .map(|(_, c)| c)
        .sum();
    out[center] = &form[center] - others;
    out
}

impl InvariantFormsCert {
    /// The cone generator list, in the order combinations reference it:
    /// the certified forms, the `d` coordinate forms, then the pair forms.
    pub fn generators(&self, d: usize) -> Vec<Vec<Rational>> {
        let mut gens: Vec<Vec<Rational>> = self
            .forms
            .iter()
            .map(|f| f.iter().map(|c| Rational::from(c.clone())).collect())
            .collect();
        for s in 0..d {
            let mut e = vec![Rational::zero(); d];
            e[s] = Rational::one();
            gens.push(e);
        }
        for p in &self.pairs {
            let mut g = vec![Rational::zero(); d];
            g[p.big] = Rational::one();
            g[p.small] = -Rational::from(p.scale.clone());
            gens.push(g);
        }
        gens
    }

    /// Verify against a computed tower. Checks, in order: shape, the strict
    /// positivity of every form at the start stage, the infinitesimal pairs
    /// and their persistence rule, every stored transport combination, every
    /// stored exclusion combination, and agreement with all computed steps.
    pub fn verify(&self, tower: &Tower) -> Result<(), CertificateError> {
        let d = tower.dim();
        if self.feasible.is_empty() {
            return Err(CertificateError::EmptyFeasible);
        }
        for &s in &self.feasible {
            if s >= d {
                return Err(CertificateError::SlotOutOfRange { slot: s, dim: d });
            }
        }
        if self.start > tower.last_frame() {
            return Err(CertificateError::StageUnavailable {
                start: self.start,
                available: tower.last_frame(),
            });
        }
        let weights = tower.frame(self.start)?.weights();
        for (i, form) in self.forms.iter().enumerate() {
            if form.len() != d {
                return Err(CertificateError::SlotOutOfRange { slot: form.len(), dim: d });
            }
            if form.iter().all(Zero::is_zero) {
                return Err(CertificateError::ZeroForm { form: i });
            }
            let value = linear_combine(form, weights)?;
            if value.sign() != ValueSign::Positive {
                return Err(CertificateError::FormNotPositive { form: i });
            }
        }
        for p in &self.pairs {
            if p.small >= d || p.big >= d || p.small == p.big {
                return Err(CertificateError::SlotOutOfRange {
                    slot: p.small.max(p.big),
                    dim: d,
                });
            }
            if p.scale < BigInt::one() {
                return Err(CertificateError::BadPairScale);
            }
            if !weights[p.small].is_infinitesimal_against(&weights[p.big])? {
                return Err(CertificateError::PairNotInfinitesimal {
                    small: p.small,
                    big: p.big,
                });
            }
            // Persistence: a feasible step either centers the pair's small
            // slot (which leaves the comparison intact), or centers a slot
            // that is itself infinitesimal against the pair's big slot.
            for &s in &self.feasible {
                let ok = s == p.small
                    || (s != p.big
                        && self
                            .pairs
                            .iter()
                            .any(|q| q.small == s && q.big == p.big));
                if !ok {
                    return Err(CertificateError::PairNotPersistent {
                        small: p.small,
                        big: p.big,
                        center: s,
                    });
                }
            }
        }
        let gens = self.generators(d);
        for (i, form) in self.forms.iter().enumerate() {
            for &s in &self.feasible {
                let witness = self
                    .closure
                    .iter()
                    .find(|w| w.form == i && w.center == s)
                    .ok_or(CertificateError::MissingClosure { form: i, center: s })?;
                let target: Vec<Rational> = transport_form(form, s)
                    .into_iter()
                    .map(Rational::from)
                    .collect();
                if !verify_nonneg_combination(&gens, &witness.coefficients, &target) {
                    return Err(CertificateError::BadCombination);
                }
            }
        }
        for slot in 0..d {
            if self.feasible.contains(&slot) {
                continue;
            }
            let witness = self
                .exclusions
                .iter()
                .find(|w| w.slot == slot)
                .ok_or(CertificateError::ExclusionMissing { slot })?;
            if witness.against == slot || witness.against >= d {
                return Err(CertificateError::ExclusionSelfCompare { slot });
            }
            let mut target = vec![Rational::zero(); d];
            target[slot] = Rational::one();
            target[witness.against] = -Rational::one();
            if !verify_nonneg_combination(&gens, &witness.coefficients, &target) {
                return Err(CertificateError::BadCombination);
            }
        }
        for (stage, &c) in tower.centers().iter().enumerate().skip(self.start) {
            if !self.feasible.contains(&c) {
                return Err(CertificateError::ReplayMismatch { stage, center: c });
            }
        }
        Ok(())
    }
}

/// A verified claim about every center from some stage on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CenterCertificate {
    ConstantCenter(ConstantCenterCert),
    InvariantForms(InvariantFormsCert),
}

impl CenterCertificate {
    /// Stage the claim starts at.
    pub fn start(&self) -> usize {
        match self {
            CenterCertificate::ConstantCenter(c) => c.start,
            CenterCertificate::InvariantForms(c) => c.start,
        }
    }

    /// Slots that can still be centers from the start stage on.
    pub fn feasible_slots(&self) -> Vec<usize> {
        match self {
            CenterCertificate::ConstantCenter(c) => vec![c.center],
            CenterCertificate::InvariantForms(c) => c.feasible.clone(),
        }
    }

    /// The constant center, if this certificate pins one down.
    pub fn constant_center(&self) -> Option<(usize, usize)> {
        match self {
            CenterCertificate::ConstantCenter(c) => Some((c.start, c.center)),
            CenterCertificate::InvariantForms(c) => {
                if c.feasible.len() == 1 {
                    Some((c.start, c.feasible[0]))
                } else {
                    None
                }
            }
        }
    }

    /// Verify every claim against the computed tower.
    pub fn verify(&self, tower: &Tower) -> Result<(), CertificateError> {
        match self {
            CenterCertificate::ConstantCenter(c) => c.verify(tower),
            CenterCertificate::InvariantForms(c) => c.verify(tower),
        }
    }

    /// Slots certified to be centered infinitely often, when that follows.
    ///
    /// A constant center recurs forever by definition. When the weight scale
    /// has no infinitesimals, an eventually constant center is impossible
    /// (the other weights would eventually drop below zero), so a feasible
    /// set of size two forces both slots to recur — provided the tower never
    /// terminates in a tie, which the caller certifies separately.
    pub fn certified_infinitely_often(
        &self,
        mode: &ValueMode,
        never_tie: bool,
    ) -> Option<Vec<usize>> {
        match self {
            CenterCertificate::ConstantCenter(c) => Some(vec![c.center]),
            CenterCertificate::InvariantForms(c) => {
                if mode.is_archimedean() && never_tie && c.feasible.len() <= 2 {
                    Some(c.feasible.clone())
                } else {
                    None
                }
            }
        }
    }

    /// One-line human description.
    pub fn describe(&self) -> String {
        match self {
            CenterCertificate::ConstantCenter(c) => format!(
                "constant center: slot {} from stage {} on (infinitesimal against every other slot)",
                c.center, c.start
            ),
            CenterCertificate::InvariantForms(c) => format!(
                "invariant forms: centers lie in {:?} from stage {} on ({} form(s), {} pair(s), {} exclusion(s))",
                c.feasible,
                c.start,
                c.forms.len(),
                c.pairs.len(),
                c.exclusions.len()
            ),
        }
    }
}

/// A certified literally-constant frame exponent: from `from_stage` on, the
/// monomial's frame exponent never changes again, so its stage order is
/// `ord` at every later stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantExponent {
    pub from_stage: usize,
    pub exponent: ExponentVector,
    pub ord: BigInt,
}

/// Certify that a monomial's frame exponent is constant from the
/// certificate's start stage on: the exponent must be a fixed point of the
/// step rewrite for every feasible center, i.e. its coordinate at each
/// feasible slot equals its coordinate sum. Returns `None` when the pattern
/// does not hold (which is not an error — the exponent then genuinely moves).
pub fn constant_exponent_from(
    tower: &Tower,
    certificate: &CenterCertificate,
    v: &ExponentVector,
) -> Result<Option<ConstantExponent>, CertificateError> {
    certificate.verify(tower)?;
    let start = certificate.start();
    let u = tower.frame_exponent(start, v)?;
    let total = u.coord_sum();
    for &s in &certificate.feasible_slots() {
        if u.coord(s) != &total {
            return Ok(None);
        }
    }
    Ok(Some(ConstantExponent {
        from_stage: start,
        exponent: u,
        ord: total,
    }))
}

/// Search for a center certificate on a computed tower.
///
/// Tries a constant-center certificate over a scan of start stages first,
/// then an invariant-forms certificate whose feasible set is read off the
/// tail of the computed centers. `hints` are candidate forms to seed the
/// family with; useless or invalid hints are filtered out. Returns `None`
/// when no certificate is found at this horizon.
pub fn discover_center_certificate(
    tower: &Tower,
    hints: &[Vec<BigInt>],
    window: usize,
) -> Result<Option<CenterCertificate>, CertificateError> {
    if let Some(cert) = discover_constant_center(tower)? {
        return Ok(Some(CenterCertificate::ConstantCenter(cert)));
    }
    if let Some(cert) = discover_invariant_forms(tower, hints, window)? {
        return Ok(Some(CenterCertificate::InvariantForms(cert)));
    }
    Ok(None)
}

fn discover_constant_center(tower: &Tower) -> Result<Option<ConstantCenterCert>, CertificateError> {
    let d = tower.dim();
    let scan = tower.last_frame().min(64);
    for start in 0..=scan {
        let weights = tower.frame(start)?.weights();
        'slot: for center in 0..d {
            for k in 0..d {
                if k != center
                    && !weights[center].is_infinitesimal_against(&weights[k])?
                {
                    continue 'slot;
                }
            }
            let cert = ConstantCenterCert { start, center };
            // The engine must agree on every computed step; a mismatch would
            // contradict the soundness argument, so treat it as "no
            // certificate" only if verification fails cleanly.
            if cert.verify(tower).is_ok() {
                return Ok(Some(cert));
            }
        }
    }
    Ok(None)
}

fn discover_invariant_forms(
    tower: &Tower,
    hints: &[Vec<BigInt>],
    window: usize,
) -> Result<Option<InvariantFormsCert>, CertificateError> {
    let steps = tower.centers().len();
    if steps == 0 {
        return Ok(None);
    }
    let tail_from = steps.saturating_sub(window.max(1));
    let mut feasible: Vec<usize> = tower.centers()[tail_from..].to_vec();
    feasible.sort_unstable();
    feasible.dedup();
    if feasible.is_empty() {
        return Ok(None);
    }
    // The start stage must lie past the last center outside the feasible set.
    let min_start = tower
        .centers()
        .iter()
        .rposition(|c| !feasible.contains(c))
        .map(|i| i + 1)
        .unwrap_or(0);
    let scales: &[i64] = if tower.mode().is_archimedean() {
        &[1]
    } else {
        &[2, 16, 256]
    };
    for start in min_start..=(min_start + 8).min(tower.last_frame()) {
        for &scale in scales {
            if let Some(cert) =
                try_invariant_forms_at(tower, hints, &feasible, start, BigInt::from(scale))?
            {
                return Ok(Some(cert));
            }
        }
    }
    Ok(None)
}

fn try_invariant_forms_at(
    tower: &Tower,
    hints: &[Vec<BigInt>],
    feasible: &[usize],
    start: usize,
    scale: BigInt,
) -> Result<Option<InvariantFormsCert>, CertificateError> {
    let d = tower.dim();
    let weights = tower.frame(start)?.weights();

    // Admissible infinitesimal pairs at the start stage, thinned to the
    // greatest subset satisfying the persistence rule.
    let mut pairs: Vec<InfinitesimalPair> = Vec::new();
    for small in 0..d {
        for big in 0..d {
            if small != big && weights[small].is_infinitesimal_against(&weights[big])? {
                pairs.push(InfinitesimalPair {
                    small,
                    big,
                    scale: scale.clone(),
                });
            }
        }
    }
    loop {
        let before = pairs.len();
        pairs = pairs
            .iter()
            .filter(|p| {
                feasible.iter().all(|&s| {
                    s == p.small
                        || (s != p.big && pairs.iter().any(|q| q.small == s && q.big == p.big))
                })
            })
            .cloned()
            .collect();
        if pairs.len() == before {
            break;
        }
    }

    // Seed forms: hints plus, for each feasible slot, the transport of its
    // coordinate form (a natural candidate for step-invariant positivity).
    let mut forms: Vec<Vec<BigInt>> = Vec::new();
    let mut seed = |f: Vec<BigInt>| {
        if f.len() == d && !f.iter().all(Zero::is_zero) && !forms.contains(&f) {
            forms.push(f);
        }
    };
    for h in hints {
        seed(h.clone());
    }
    for &s in feasible {
        let mut e = vec![BigInt::zero(); d];
        e[s] = BigInt::one();
        seed(transport_form(&e, s));
    }

    // Keep only forms strictly positive at the start stage.
    forms.retain(|f| {
        matches!(
            linear_combine(f, weights).map(|v| v.sign()),
            Ok(ValueSign::Positive)
        )
    });

    // Shrink to the greatest subfamily closed under transport.
    loop {
        let cert = InvariantFormsCert {
            start,
            feasible: feasible.to_vec(),
            forms: forms.clone(),
            pairs: pairs.clone(),
            closure: Vec::new(),
            exclusions: Vec::new(),
        };
        let gens = cert.generators(d);
        let mut keep = Vec::with_capacity(forms.len());
        for form in &forms {
            let mut ok = true;
            for &s in feasible {
                let target: Vec<Rational> = transport_form(form, s)
                    .into_iter()
                    .map(Rational::from)
                    .collect();
                if nonneg_combination(&gens, &target)?.is_none() {
                    ok = false;
                    break;
                }
            }
            keep.push(ok);
        }
        if keep.iter().all(|&k| k) {
            break;
        }
        forms = forms
            .into_iter()
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|(f, _)| f)
            .collect();
    }

    // Assemble witnesses against the final generator list.
    let mut cert = InvariantFormsCert {
        start,
        feasible: feasible.to_vec(),
        forms: forms.clone(),
        pairs,
        closure: Vec::new(),
        exclusions: Vec::new(),
    };
    let gens = cert.generators(d);
    for (i, form) in forms.iter().enumerate() {
        for &s in feasible {
            let target: Vec<Rational> = transport_form(form, s)
                .into_iter()
                .map(Rational::from)
                .collect();
            let Some(coefficients) = nonneg_combination(&gens, &target)? else {
                return Ok(None);
            };
            cert.closure.push(ClosureWitness {
                form: i,
                center: s,
                coefficients,
            });
        }
    }
    for slot in 0..d {
        if feasible.contains(&slot) {
            continue;
        }
        let mut found = false;
        for against in 0..d {
            if against == slot {
                continue;
            }
            let mut target = vec![Rational::zero(); d];
            target[slot] = Rational::one();
            target[against] = -Rational::one();
            if let Some(coefficients) = nonneg_combination(&gens, &target)? {
                cert.exclusions.push(ExclusionWitness {
                    slot,
                    against,
                    coefficients,
                });
                found = true;
                break;
            }
        }
        if !found {
            return Ok(None);
        }
    }
    match cert.verify(tower) {
        Ok(()) => Ok(Some(cert)),
        Err(CertificateError::ReplayMismatch { .. }) => Ok(None),
        Err(CertificateError::FormNotPositive { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}
