//! Closed-form algebra of the regime map.
//!
//! From the linear-part coefficients `(μ_j, ν_j²)` and the space dimension
//! `n` this module derives
//!
//! * the discriminants `δ_j = (μ_j - 1)² - 4ν_j²`,
//! * the shifts `α_j = (μ_j + 1 - √δ_j)/2` (the effective added dimension),
//! * the critical function `F(p, q, n, α) = (p+1)/(pq-1) - (n+α-1)/2`,
//! * the thresholds `p̃ = (n+α₁+1)/(n+α₂-1)` and `q̃ = (n+α₂+1)/(n+α₁-1)`,
//!
//! and classifies an exponent pair `(p, q)` as blow-up, global existence
//! (with or without loss of decay), or undetermined, together with the
//! predicted `(1+t)`-power decay rates.
//!
//! Predicates can be decided in exact rational arithmetic (see [`exact`]);
//! the floating path escalates to the exact path automatically whenever a
//! margin falls inside a `1e-12` boundary band, so boundary cases like
//! `p = p̃` are classified by the exact comparison in both modes.

pub mod exact;

use exact::{rat, rat_int, sign1, sign2, Rat};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// ε used for the loss of decay in the limit cases `p = p̃` / `q = q̃`,
/// where the theory allows an arbitrarily small positive loss.
pub const DEFAULT_LIMIT_EPSILON: f64 = 1e-3;

/// Margin below which the floating path defers to exact arithmetic.
pub const BOUNDARY_BAND: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExponentError {
    #[error("coefficient out of range: {0}")]
    InvalidCoefficient(String),
    #[error("exponent pair requires p, q > 1 (got p = {p}, q = {q})")]
    InvalidExponents { p: f64, q: f64 },
    #[error("alpha undefined for equation {which}: delta = {delta} < 0 (complex characteristic roots are out of scope)")]
    AlphaUndefined { which: u8, delta: f64 },
    #[error("F undefined: pq - 1 = {pq_m1} is not positive")]
    DegenerateProduct { pq_m1: f64 },
}

/// Damping and mass coefficients `(μ, ν²)` of one equation's linear part.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientPair {
    pub mu: f64,
    pub nu_sq: f64,
}

impl CoefficientPair {
    pub fn new(mu: f64, nu_sq: f64) -> Result<Self, ExponentError> {
        if !(mu.is_finite() && mu >= 0.0) {
            return Err(ExponentError::InvalidCoefficient(format!(
                "mu must be finite and nonnegative, got {mu}"
            )));
        }
        if !(nu_sq.is_finite() && nu_sq >= 0.0) {
            return Err(ExponentError::InvalidCoefficient(format!(
                "nu_sq must be finite and nonnegative, got {nu_sq}"
            )));
        }
        Ok(CoefficientPair { mu, nu_sq })
    }

    /// Discriminant `δ = (μ - 1)² - 4ν²`.
    pub fn delta(&self) -> f64 {
        (self.mu - 1.0) * (self.mu - 1.0) - 4.0 * self.nu_sq
    }

    /// Shift `α = (μ + 1 - √δ)/2`; `None` when δ < 0.
    pub fn alpha(&self) -> Option<f64> {
        let d = self.delta();
        (d >= 0.0).then(|| 0.5 * (self.mu + 1.0 - d.sqrt()))
    }
}

/// Coefficients of the full coupled system plus the space dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemCoefficients {
    pub eq1: CoefficientPair,
    pub eq2: CoefficientPair,
    pub n: u32,
}

impl SystemCoefficients {
    pub fn new(eq1: CoefficientPair, eq2: CoefficientPair, n: u32) -> Result<Self, ExponentError> {
        if n < 1 {
            return Err(ExponentError::InvalidCoefficient(
                "space dimension n must be >= 1".into(),
            ));
        }
        Ok(SystemCoefficients { eq1, eq2, n })
    }

    /// Swap the two equations (used by the symmetry property: classifying
    /// the swapped system with `(q, p)` mirrors the original verdict).
    pub fn swapped(&self) -> Self {
        SystemCoefficients {
            eq1: self.eq2,
            eq2: self.eq1,
            n: self.n,
        }
    }
}

/// Source-nonlinearity powers `(p, q)`, both > 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentPair {
    pub p: f64,
    pub q: f64,
}

impl ExponentPair {
    pub fn new(p: f64, q: f64) -> Result<Self, ExponentError> {
        if !(p.is_finite() && q.is_finite() && p > 1.0 && q > 1.0) {
            return Err(ExponentError::InvalidExponents { p, q });
        }
        Ok(ExponentPair { p, q })
    }

    pub fn swapped(&self) -> Self {
        ExponentPair {
            p: self.q,
            q: self.p,
        }
    }
}

/// Everything `derive` produces from the system coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivedExponents {
    pub delta1: f64,
    pub delta2: f64,
    pub alpha1: Option<f64>,
    pub alpha2: Option<f64>,
    /// `(n+α₁+1)/(n+α₂-1)`; `None` when the denominator is not positive.
    pub p_tilde: Option<f64>,
    /// `(n+α₂+1)/(n+α₁-1)`; `None` when the denominator is not positive.
    pub q_tilde: Option<f64>,
    pub delta_nonneg: (bool, bool),
    /// `δ_j > (n+1)²`, the regime where the linear flow is parabolic-like.
    pub parabolic_like: (bool, bool),
}

/// Derive discriminants, shifts and thresholds from the coefficients.
pub fn derive(coeffs: &SystemCoefficients) -> DerivedExponents {
    let d1 = coeffs.eq1.delta();
    let d2 = coeffs.eq2.delta();
    let a1 = coeffs.eq1.alpha();
    let a2 = coeffs.eq2.alpha();
    let n = coeffs.n as f64;
    let cap = (n + 1.0) * (n + 1.0);
    let p_tilde = match (a1, a2) {
        (Some(a1), Some(a2)) if n + a2 - 1.0 > 0.0 => Some((n + a1 + 1.0) / (n + a2 - 1.0)),
        _ => None,
    };
    let q_tilde = match (a1, a2) {
        (Some(a1), Some(a2)) if n + a1 - 1.0 > 0.0 => Some((n + a2 + 1.0) / (n + a1 - 1.0)),
        _ => None,
    };
    DerivedExponents {
        delta1: d1,
        delta2: d2,
        alpha1: a1,
        alpha2: a2,
        p_tilde,
        q_tilde,
        delta_nonneg: (d1 >= 0.0, d2 >= 0.0),
        parabolic_like: (d1 > cap, d2 > cap),
    }
}

/// The critical function `F(p, q, n, α) = (p+1)/(pq-1) - (n+α-1)/2`.
pub fn f_shift(p: f64, q: f64, n: u32, alpha: f64) -> Result<f64, ExponentError> {
    let pq_m1 = p * q - 1.0;
    if pq_m1 <= 0.0 {
        return Err(ExponentError::DegenerateProduct { pq_m1 });
    }
    Ok((p + 1.0) / pq_m1 - (n as f64 + alpha - 1.0) / 2.0)
}

/// Gagliardo-Nirenberg interpolation exponent `θ(r) = n(1/2 - 1/r)`.
pub fn gn_theta(r: f64, n: u32) -> f64 {
    n as f64 * (0.5 - 1.0 / r)
}

/// Whether `θ(r) ∈ [0, 1]`. Applied at `r = p` and `r = 2p` this reproduces
/// the admissibility constraints `2 ≤ p` and `p ≤ n/(n-2)` for `n ≥ 3`.
pub fn gn_theta_in_range(r: f64, n: u32) -> bool {
    let th = gn_theta(r, n);
    (0.0..=1.0).contains(&th)
}

/// Fujita exponent `p_Fuj(d) = 1 + 2/d`.
pub fn fujita_exponent(d: f64) -> f64 {
    1.0 + 2.0 / d
}

/// Conjectured Strauss-type blow-up region (strict inequality):
/// `max{(p+2+1/q)/(pq-1) - μ₁/2, (q+2+1/p)/(pq-1) - μ₂/2} > (n-1)/2`.
///
/// This is a CONJECTURE overlay; it is never merged into a
/// [`RegimeVerdict`] and is reported separately in all outputs.
pub fn conjectured_strauss_region(coeffs: &SystemCoefficients, exps: &ExponentPair) -> bool {
    let (p, q) = (exps.p, exps.q);
    let pq_m1 = p * q - 1.0;
    let lhs1 = (p + 2.0 + 1.0 / q) / pq_m1 - coeffs.eq1.mu / 2.0;
    let lhs2 = (q + 2.0 + 1.0 / p) / pq_m1 - coeffs.eq2.mu / 2.0;
    lhs1.max(lhs2) > (coeffs.n as f64 - 1.0) / 2.0
}

/// Predicted `(1+t)`-power exponents for the four tracked norms.
///
/// `rate_*_energy` is the exponent for `‖(∇w, w_t)(t)‖_{L²}`; the plain
/// `L²` norm of the solution gains exactly one power, `rate_*_l2 =
/// rate_*_energy + 1`, in every global-existence regime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayForecast {
    pub rate_u_energy: f64,
    pub rate_u_l2: f64,
    pub rate_v_energy: f64,
    pub rate_v_l2: f64,
}

impl DecayForecast {
    fn new(n: u32, alpha1: f64, alpha2: f64, gamma1: f64, gamma2: f64) -> Self {
        let half_n = n as f64 / 2.0;
        let eu = -half_n - alpha1 + gamma1;
        let ev = -half_n - alpha2 + gamma2;
        DecayForecast {
            rate_u_energy: eu,
            rate_u_l2: eu + 1.0,
            rate_v_energy: ev,
            rate_v_l2: ev + 1.0,
        }
    }

    pub fn swapped(&self) -> Self {
        DecayForecast {
            rate_u_energy: self.rate_v_energy,
            rate_u_l2: self.rate_v_l2,
            rate_v_energy: self.rate_u_energy,
            rate_v_l2: self.rate_u_l2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeKind {
    BlowUp,
    GlobalSupercriticalBoth,
    GlobalLossOnU,
    GlobalLossOnV,
    Undetermined,
}

impl RegimeKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegimeKind::BlowUp => "blow_up",
            RegimeKind::GlobalSupercriticalBoth => "global_supercritical_both",
            RegimeKind::GlobalLossOnU => "global_loss_on_u",
            RegimeKind::GlobalLossOnV => "global_loss_on_v",
            RegimeKind::Undetermined => "undetermined",
        }
    }
}

/// Which branch of the blow-up lower-bound condition
/// (`p > (1+α₁)/(1+α₂)` or `q > (1+α₂)/(1+α₁)`) held.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupSide {
    pub p_branch: bool,
    pub q_branch: bool,
}

/// Classification of one `(p, q)` pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeVerdict {
    pub kind: RegimeKind,
    /// `F(p, q, n, α₁)`.
    pub f1: f64,
    /// `F(q, p, n, α₂)`.
    pub f2: f64,
    /// Loss of decay on the u component, present only for `GlobalLossOnU`.
    pub gamma: Option<f64>,
    /// Loss of decay on the v component, present only for `GlobalLossOnV`.
    pub gamma_bar: Option<f64>,
    /// Present for the global-existence kinds.
    pub forecast: Option<DecayForecast>,
    /// Individually reported violations of the global-theorem hypotheses.
    pub admissibility_notes: Vec<String>,
    /// Populated for blow-up verdicts.
    pub blowup_side: Option<BlowupSide>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arithmetic {
    /// f64 evaluation with automatic exact escalation inside the boundary band.
    Float,
    /// Every predicate decided by exact rational comparison.
    Exact,
}

#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    pub epsilon: f64,
    pub arithmetic: Arithmetic,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            epsilon: DEFAULT_LIMIT_EPSILON,
            arithmetic: Arithmetic::Float,
        }
    }
}

/// Classify `(p, q)` with default options (float path, ε = 1e-3).
pub fn classify(
    coeffs: &SystemCoefficients,
    exps: &ExponentPair,
) -> Result<RegimeVerdict, ExponentError> {
    classify_with(coeffs, exps, &ClassifyOptions::default())
}

/// Exact rational predicates for the same classification.
struct ExactPredicates {
    mu1: Rat,
    mu2: Rat,
    d1: Rat,
    d2: Rat,
    n: Rat,
    p: Rat,
    q: Rat,
}

impl ExactPredicates {
    fn new(coeffs: &SystemCoefficients, exps: &ExponentPair) -> Self {
        let mu1 = rat(coeffs.eq1.mu);
        let mu2 = rat(coeffs.eq2.mu);
        let nu1 = rat(coeffs.eq1.nu_sq);
        let nu2 = rat(coeffs.eq2.nu_sq);
        let one = rat_int(1);
        let d1 = (&mu1 - &one) * (&mu1 - &one) - rat_int(4) * &nu1;
        let d2 = (&mu2 - &one) * (&mu2 - &one) - rat_int(4) * &nu2;
        ExactPredicates {
            mu1,
            mu2,
            d1,
            d2,
            n: rat_int(coeffs.n as i64),
            p: rat(exps.p),
            q: rat(exps.q),
        }
    }

    /// Sign of `F(p,q,n,α₁)` (first = true) or `F(q,p,n,α₂)`.
    fn f_sign(&self, first: bool) -> i8 {
        let (lead, mu, d) = if first {
            (&self.p, &self.mu1, &self.d1)
        } else {
            (&self.q, &self.mu2, &self.d2)
        };
        let pq_m1 = &self.p * &self.q - rat_int(1);
        let a = (lead + rat_int(1)) / pq_m1
            - (&self.n - rat_int(1)) / rat_int(2)
            - (mu + rat_int(1)) / rat_int(4);
        sign1(&a, &Rat::new(1.into(), 4.into()), d)
    }

    /// Sign of `p(1+α₂) - (1+α₁)` (or with roles swapped): the blow-up
    /// lower-bound side condition.
    fn side_sign(&self, p_branch: bool) -> i8 {
        let (lead, mu_num, d_num, mu_den, d_den) = if p_branch {
            (&self.p, &self.mu1, &self.d1, &self.mu2, &self.d2)
        } else {
            (&self.q, &self.mu2, &self.d2, &self.mu1, &self.d1)
        };
        // lead·((μ_den+3)/2 - √d_den/2) - ((μ_num+3)/2 - √d_num/2)
        let a = (lead * (mu_den + rat_int(3)) - (mu_num + rat_int(3))) / rat_int(2);
        let b = Rat::new(1.into(), 2.into());
        let c = -lead / rat_int(2);
        sign2(&a, &b, d_num, &c, d_den)
    }

    /// Sign of `n + α₂ - 1` (first = true, the p̃ denominator) or `n + α₁ - 1`.
    fn den_sign(&self, first: bool) -> i8 {
        let (mu, d) = if first {
            (&self.mu2, &self.d2)
        } else {
            (&self.mu1, &self.d1)
        };
        let a = &self.n - rat_int(1) + (mu + rat_int(1)) / rat_int(2);
        sign1(&a, &Rat::new((-1).into(), 2.into()), d)
    }

    /// Sign of `p - p̃` (first = true) or `q - q̃`, valid when the
    /// corresponding denominator is positive.
    fn vs_threshold_sign(&self, first: bool) -> i8 {
        let (lead, mu_self, d_self, mu_other, d_other) = if first {
            (&self.p, &self.mu1, &self.d1, &self.mu2, &self.d2)
        } else {
            (&self.q, &self.mu2, &self.d2, &self.mu1, &self.d1)
        };
        // lead·(n + α_other - 1) - (n + α_self + 1)
        let a = lead * (&self.n - rat_int(1) + (mu_other + rat_int(1)) / rat_int(2))
            - (&self.n + rat_int(1) + (mu_self + rat_int(1)) / rat_int(2));
        let b = Rat::new(1.into(), 2.into());
        let c = -lead / rat_int(2);
        sign2(&a, &b, d_self, &c, d_other)
    }

    fn mu_gt_one_sign(&self, first: bool) -> i8 {
        let m = if first { &self.mu1 } else { &self.mu2 };
        let diff = m - rat_int(1);
        if diff.is_zero() {
            0
        } else if diff > Rat::zero() {
            1
        } else {
            -1
        }
    }

    fn parabolic_sign(&self, first: bool) -> i8 {
        let d = if first { &self.d1 } else { &self.d2 };
        let cap = (&self.n + rat_int(1)) * (&self.n + rat_int(1));
        let diff = d - cap;
        if diff.is_zero() {
            0
        } else if diff > Rat::zero() {
            1
        } else {
            -1
        }
    }

    fn exp_ge_two_sign(&self, first: bool) -> i8 {
        let e = if first { &self.p } else { &self.q };
        let diff = e - rat_int(2);
        if diff.is_zero() {
            0
        } else if diff > Rat::zero() {
            1
        } else {
            -1
        }
    }

    /// Sign of `n - e(n-2)`: nonnegative means `e ≤ n/(n-2)`.
    fn upper_cap_sign(&self, first: bool) -> i8 {
        let e = if first { &self.p } else { &self.q };
        let diff = &self.n - e * (&self.n - rat_int(2));
        if diff.is_zero() {
            0
        } else if diff > Rat::zero() {
            1
        } else {
            -1
        }
    }
}

/// Decide a predicate sign: float margin unless it falls inside the
/// boundary band, in which case the exact comparison settles it.
fn decide(margin: f64, mode: Arithmetic, exact_sign: impl FnOnce() -> i8) -> i8 {
    match mode {
        Arithmetic::Exact => exact_sign(),
        Arithmetic::Float => {
            if margin.abs() <= BOUNDARY_BAND {
                exact_sign()
            } else if margin > 0.0 {
                1
            } else {
                -1
            }
        }
    }
}

pub fn classify_with(
    coeffs: &SystemCoefficients,
    exps: &ExponentPair,
    opts: &ClassifyOptions,
) -> Result<RegimeVerdict, ExponentError> {
    let derived = derive(coeffs);
    if !derived.delta_nonneg.0 {
        return Err(ExponentError::AlphaUndefined {
            which: 1,
            delta: derived.delta1,
        });
    }
    if !derived.delta_nonneg.1 {
        return Err(ExponentError::AlphaUndefined {
            which: 2,
            delta: derived.delta2,
        });
    }
    let alpha1 = derived.alpha1.expect("delta1 >= 0 implies alpha1");
    let alpha2 = derived.alpha2.expect("delta2 >= 0 implies alpha2");
    let n = coeffs.n;
    let nf = n as f64;
    let (p, q) = (exps.p, exps.q);

    let f1 = f_shift(p, q, n, alpha1)?;
    let f2 = f_shift(q, p, n, alpha2)?;

    let ex = ExactPredicates::new(coeffs, exps);
    let mode = opts.arithmetic;

    // Route B: F-form of the blow-up condition.
    let f1_nonneg = decide(f1, mode, || ex.f_sign(true)) >= 0;
    let f2_nonneg = decide(f2, mode, || ex.f_sign(false)) >= 0;

    // Route A: the condition as stated, max{…} - (n-1)/2 ≥ 0, evaluated
    // through the shifts themselves. The two routes are algebraically
    // identical and the operation asserts so; a float-rounding disagreement
    // is settled by the exact signs, on which both routes coincide.
    let arg1 = (p + 1.0) / (p * q - 1.0) - alpha1 / 2.0 - (nf - 1.0) / 2.0;
    let arg2 = (q + 1.0) / (p * q - 1.0) - alpha2 / 2.0 - (nf - 1.0) / 2.0;
    let route_a =
        decide(arg1, mode, || ex.f_sign(true)) >= 0 || decide(arg2, mode, || ex.f_sign(false)) >= 0;
    let f_form = f1_nonneg || f2_nonneg;
    let size_condition = if route_a == f_form {
        route_a
    } else {
        ex.f_sign(true) >= 0 || ex.f_sign(false) >= 0
    };

    // Blow-up side condition (at least one branch is always true for p, q > 1).
    let side_p = decide(p - (1.0 + alpha1) / (1.0 + alpha2), mode, || {
        ex.side_sign(true)
    }) > 0;
    let side_q = decide(q - (1.0 + alpha2) / (1.0 + alpha1), mode, || {
        ex.side_sign(false)
    }) > 0;

    if size_condition && (side_p || side_q) {
        return Ok(RegimeVerdict {
            kind: RegimeKind::BlowUp,
            f1,
            f2,
            gamma: None,
            gamma_bar: None,
            forecast: None,
            admissibility_notes: Vec::new(),
            blowup_side: Some(BlowupSide {
                p_branch: side_p,
                q_branch: side_q,
            }),
        });
    }

    // max{F} < 0 from here on (or the degenerate no-side-condition case,
    // which cannot occur for p, q > 1 but falls through to Undetermined).
    let mut notes = Vec::new();
    if size_condition {
        notes.push("blow-up size condition holds but neither lower-bound branch does".into());
    }

    // Hypotheses common to all three global-existence theorems, each
    // reported individually.
    if decide(coeffs.eq1.mu - 1.0, mode, || ex.mu_gt_one_sign(true)) <= 0 {
        notes.push(format!("mu1 = {} is not > 1", coeffs.eq1.mu));
    }
    if decide(coeffs.eq2.mu - 1.0, mode, || ex.mu_gt_one_sign(false)) <= 0 {
        notes.push(format!("mu2 = {} is not > 1", coeffs.eq2.mu));
    }
    let cap = (nf + 1.0) * (nf + 1.0);
    if decide(derived.delta1 - cap, mode, || ex.parabolic_sign(true)) <= 0 {
        notes.push(format!(
            "delta1 = {} is not > (n+1)^2 = {} (not parabolic-like)",
            derived.delta1, cap
        ));
    }
    if decide(derived.delta2 - cap, mode, || ex.parabolic_sign(false)) <= 0 {
        notes.push(format!(
            "delta2 = {} is not > (n+1)^2 = {} (not parabolic-like)",
            derived.delta2, cap
        ));
    }
    if decide(p - 2.0, mode, || ex.exp_ge_two_sign(true)) < 0 {
        notes.push(format!(
            "p = {p} is below the Gagliardo-Nirenberg range p >= 2"
        ));
    }
    if decide(q - 2.0, mode, || ex.exp_ge_two_sign(false)) < 0 {
        notes.push(format!(
            "q = {q} is below the Gagliardo-Nirenberg range q >= 2"
        ));
    }
    if n >= 3 {
        if decide(nf - p * (nf - 2.0), mode, || ex.upper_cap_sign(true)) < 0 {
            notes.push(format!(
                "p = {p} exceeds the energy-space cap n/(n-2) = {}",
                nf / (nf - 2.0)
            ));
        }
        if decide(nf - q * (nf - 2.0), mode, || ex.upper_cap_sign(false)) < 0 {
            notes.push(format!(
                "q = {q} exceeds the energy-space cap n/(n-2) = {}",
                nf / (nf - 2.0)
            ));
        }
    }
    let den_p_ok = decide(nf + alpha2 - 1.0, mode, || ex.den_sign(true)) > 0;
    let den_q_ok = decide(nf + alpha1 - 1.0, mode, || ex.den_sign(false)) > 0;
    if !den_p_ok {
        notes.push("threshold p_tilde undefined: n + alpha2 - 1 <= 0".into());
    }
    if !den_q_ok {
        notes.push("threshold q_tilde undefined: n + alpha1 - 1 <= 0".into());
    }

    if !notes.is_empty() {
        return Ok(RegimeVerdict {
            kind: RegimeKind::Undetermined,
            f1,
            f2,
            gamma: None,
            gamma_bar: None,
            forecast: None,
            admissibility_notes: notes,
            blowup_side: None,
        });
    }

    let p_tilde = derived.p_tilde.expect("denominator checked positive");
    let q_tilde = derived.q_tilde.expect("denominator checked positive");
    let p_cmp = decide(p - p_tilde, mode, || ex.vs_threshold_sign(true));
    let q_cmp = decide(q - q_tilde, mode, || ex.vs_threshold_sign(false));

    let verdict = match (p_cmp > 0, q_cmp > 0) {
        (true, true) => RegimeVerdict {
            kind: RegimeKind::GlobalSupercriticalBoth,
            f1,
            f2,
            gamma: None,
            gamma_bar: None,
            forecast: Some(DecayForecast::new(n, alpha1, alpha2, 0.0, 0.0)),
            admissibility_notes: Vec::new(),
            blowup_side: None,
        },
        (false, true) => {
            // p ≤ p̃, q > q̃, F(q,p,n,α₂) < 0: loss of decay on u.
            let gamma = if p_cmp < 0 {
                (nf + alpha2 - 1.0) * (p_tilde - p)
            } else {
                opts.epsilon
            };
            RegimeVerdict {
                kind: RegimeKind::GlobalLossOnU,
                f1,
                f2,
                gamma: Some(gamma),
                gamma_bar: None,
                forecast: Some(DecayForecast::new(n, alpha1, alpha2, gamma, 0.0)),
                admissibility_notes: Vec::new(),
                blowup_side: None,
            }
        }
        (true, false) => {
            let gamma_bar = if q_cmp < 0 {
                (nf + alpha1 - 1.0) * (q_tilde - q)
            } else {
                opts.epsilon
            };
            RegimeVerdict {
                kind: RegimeKind::GlobalLossOnV,
                f1,
                f2,
                gamma: None,
                gamma_bar: Some(gamma_bar),
                forecast: Some(DecayForecast::new(n, alpha1, alpha2, 0.0, gamma_bar)),
                admissibility_notes: Vec::new(),
                blowup_side: None,
            }
        }
        (false, false) => RegimeVerdict {
            // Screening makes this unreachable when max{F} < 0; kept as an
            // honest bucket rather than a panic.
            kind: RegimeKind::Undetermined,
            f1,
            f2,
            gamma: None,
            gamma_bar: None,
            forecast: None,
            admissibility_notes: vec![
                "p <= p_tilde and q <= q_tilde with max{F} < 0 (screening violated)".into(),
            ],
            blowup_side: None,
        },
    };
    Ok(verdict)
}
