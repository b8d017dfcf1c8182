use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{is_surjective_gr, kernel_simples, normality_check, validate_sequence, SequenceData};
use crate::error::{Error, Result};
use crate::interval::{format_rational, rat, Interval, Rational};
use crate::perron::{PerronOptions, PerronResult};
use crate::ring::{fpdim_category, is_based_subring};
use crate::validation::Violation;

/// Half-width of the window around 1 inside which an irrational `α` may be
/// declared 1, and only together with the normality criterion.
pub fn alpha_window() -> Rational {
    rat(1, 1_000_000_000)
}

/// `α = FPdim(B) / (FPdim(A) FPdim(C))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaCertificate {
    pub fpdim_a: PerronResult,
    pub fpdim_b: PerronResult,
    pub fpdim_c: PerronResult,
    pub interval: Interval,
    /// Present when all three dimensions are certified integers.
    pub exact: Option<Rational>,
}

impl AlphaCertificate {
    pub fn is_exactly_one(&self) -> Option<bool> {
        self.exact.as_ref().map(|x| *x == rat(1, 1))
    }
}

impl Serialize for AlphaCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AlphaCertificate", 6)?;
        st.serialize_field("lo", &format_rational(self.interval.lo()))?;
        st.serialize_field("hi", &format_rational(self.interval.hi()))?;
        st.serialize_field("exact", &self.exact.as_ref().map(format_rational))?;
        st.serialize_field("fpdim_a", &self.fpdim_a)?;
        st.serialize_field("fpdim_b", &self.fpdim_b)?;
        st.serialize_field("fpdim_c", &self.fpdim_c)?;
        st.end()
    }
}

/// Certified `α`, refined until its bracket is no wider than `opts.tol`.
pub fn compute_alpha(s: &SequenceData, opts: &PerronOptions) -> Result<AlphaCertificate> {
    let mut local = opts.clone();
    for _ in 0..8 {
        let fa = fpdim_category(&s.a, &local)?;
        let fb = fpdim_category(&s.b, &local)?;
        let fc = fpdim_category(&s.c, &local)?;
        let denom = &fa.interval() * &fc.interval();
        let interval = fb
            .interval()
            .checked_div(&denom)
            .ok_or_else(|| Error::Precondition("FPdim(A) FPdim(C) encloses zero".into()))?;
        let exact = match (&fa.exact_integer, &fb.exact_integer, &fc.exact_integer) {
            (Some(a), Some(b), Some(c)) => Some(Rational::new(b.clone(), a * c)),
            _ => None,
        };
        if exact.is_some() || interval.width() <= opts.tol {
            return Ok(AlphaCertificate {
                fpdim_a: fa,
                fpdim_b: fb,
                fpdim_c: fc,
                interval,
                exact,
            });
        }
        local.tol = &local.tol / ((interval.width() / &opts.tol).ceil() * rat(4, 1));
    }
    Err(Error::NoConvergence { iterations: 8 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NotExactReason {
    Invalid,
    NotSurjective,
    KernelMismatch,
    NotNormal,
    AlphaNotOne,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Exact,
    NotExact { reasons: Vec<NotExactReason> },
    Undecided { tolerance: String },
}

impl Verdict {
    pub fn is_exact(&self) -> bool {
        matches!(self, Verdict::Exact)
    }
}

/// How `α = 1` was decided, if at all.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaDecision {
    /// Integer dimensions give `α` as an exact rational.
    Exact,
    /// The certified bracket excludes 1.
    Separated,
    /// The bracket is inside the window around 1 and the structural
    /// criterion holds; not independent of that criterion.
    Coupled,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
    pub kernel: Vec<usize>,
    pub iota_image: Vec<usize>,
    pub kernel_is_subring: bool,
    pub kernel_matches_image: bool,
    pub surjective: bool,
    pub normal: bool,
    pub alpha: Option<AlphaCertificate>,
    pub alpha_is_one: Option<bool>,
    pub alpha_decision: AlphaDecision,
    /// `α ≥ 1` holds whenever `F` is surjective.
    pub alpha_at_least_one: bool,
    pub verdict: Verdict,
    /// Agreement of `(kernel = ι(A) ∧ normal)` with `α = 1`, recorded when
    /// `F` is surjective and `α` was decided independently.
    pub cross_check: Option<bool>,
}

impl ExactnessReport {
    /// A failed cross-check or a surjective sequence with `α < 1`.
    pub fn is_breach(&self) -> bool {
        self.cross_check == Some(false) || !self.alpha_at_least_one
    }
}

/// Runs both criteria and combines them.
///
/// Non-identity Cartan matrices are rejected with an error; other invalid
/// data yields a report with verdict `not_exact(invalid)`.
pub fn check_exact(s: &SequenceData, opts: &PerronOptions) -> Result<ExactnessReport> {
    for ring in [&s.a, &s.b, &s.c] {
        if !ring.is_semisimple() {
            return Err(Error::NonSemisimple("exactness certification needs identity Cartan matrices"));
        }
    }
    let validation = validate_sequence(s);
    if !validation.is_valid() {
        return Ok(ExactnessReport {
            valid: false,
            violations: validation.violations,
            kernel: vec![],
            iota_image: vec![],
            kernel_is_subring: false,
            kernel_matches_image: false,
            surjective: false,
            normal: false,
            alpha: None,
            alpha_is_one: None,
            alpha_decision: AlphaDecision::Undecided,
            alpha_at_least_one: true,
            verdict: Verdict::NotExact {
                reasons: vec![NotExactReason::Invalid],
            },
            cross_check: None,
        });
    }

    let kernel = kernel_simples(s);
    let image = s.iota_image();
    let kernel_is_subring = is_based_subring(&s.b, &kernel);
    let kernel_matches_image = kernel == image;
    let surjective = is_surjective_gr(s);
    let normal = normality_check(s);
    let structural = kernel_matches_image && normal;

    let alpha = compute_alpha(s, opts)?;
    let one = rat(1, 1);
    let window = alpha_window();
    let (alpha_is_one, decision) = if let Some(exact) = alpha.is_exactly_one() {
        (Some(exact), AlphaDecision::Exact)
    } else if !alpha.interval.contains(&one) {
        (Some(false), AlphaDecision::Separated)
    } else if alpha.interval.lo() > &(&one - &window) && alpha.interval.hi() < &(&one + &window) && structural {
        (Some(true), AlphaDecision::Coupled)
    } else {
        (None, AlphaDecision::Undecided)
    };
    let alpha_at_least_one = !surjective || alpha.interval.hi() >= &(&one - &opts.tol);

    let cross_check = match (surjective, decision) {
        (true, AlphaDecision::Exact | AlphaDecision::Separated) => Some(structural == alpha_is_one.expect("decided")),
        _ => None,
    };

    let mut reasons = Vec::new();
    if !surjective {
        reasons.push(NotExactReason::NotSurjective);
    }
    if !kernel_matches_image {
        reasons.push(NotExactReason::KernelMismatch);
    }
    if !normal {
        reasons.push(NotExactReason::NotNormal);
    }
    if alpha_is_one == Some(false) {
        reasons.push(NotExactReason::AlphaNotOne);
    }
    let verdict = if !reasons.is_empty() {
        Verdict::NotExact { reasons }
    } else if alpha_is_one == Some(true) {
        Verdict::Exact
    } else {
        Verdict::Undecided {
            tolerance: format_rational(&opts.tol),
        }
    };

    Ok(ExactnessReport {
        valid: true,
        violations: vec![],
        kernel: kernel.into_iter().collect(),
        iota_image: image.into_iter().collect(),
        kernel_is_subring,
        kernel_matches_image,
        surjective,
        normal,
        alpha: Some(alpha),
        alpha_is_one,
        alpha_decision: decision,
        alpha_at_least_one,
        verdict,
        cross_check,
    })
}
