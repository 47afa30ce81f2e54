use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{ceil_u64, int, is_proper_fraction, round_half_up, serialize_ratio_str, Rational};
use num_traits::ToPrimitive;

/// A validated `(N, D, alpha)` triple with `gamma = D*alpha - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegimeParams {
    n: u64,
    d: u64,
    #[serde(serialize_with = "serialize_ratio_str")]
    alpha: Rational,
    #[serde(serialize_with = "serialize_ratio_str")]
    gamma: Rational,
}

impl RegimeParams {
    /// Requires `2 <= D <= N` and `0 < alpha < 1`.
    pub fn new(n: u64, d: u64, alpha: Rational) -> Result<Self> {
        if d < 2 || d > n {
            return Err(Error::InvalidParameter(format!("need 2 <= D <= N, got D = {d}, N = {n}")));
        }
        if !is_proper_fraction(&alpha) {
            return Err(Error::InvalidParameter(format!("need 0 < alpha < 1, got {alpha}")));
        }
        let gamma = int(d) * &alpha - Rational::one();
        Ok(RegimeParams { n, d, alpha, gamma })
    }

    /// `D = round((1 + gamma) / alpha)`, rounding halves up.
    pub fn from_gamma(n: u64, gamma: &Rational, alpha: Rational) -> Result<Self> {
        if !alpha.is_positive() {
            return Err(Error::InvalidParameter(format!("need alpha > 0, got {alpha}")));
        }
        let d = round_half_up(&((Rational::one() + gamma) / &alpha));
        let d = d.to_u64().ok_or_else(|| Error::InvalidParameter(format!("gamma = {gamma} gives D = {d}")))?;
        RegimeParams::new(n, d, alpha)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    /// `ceil(alpha N)`, the size every extremal set has.
    pub fn min_size(&self) -> u64 {
        ceil_u64(&(&self.alpha * int(self.n))).expect("alpha N is positive")
    }

    /// `delta = 1 - gamma` when `0 < gamma < 1`: the largest margin with `D <= (2 - delta)/alpha`.
    pub fn delta(&self) -> Option<Rational> {
        (self.gamma.is_positive() && self.gamma < Rational::one()).then(|| Rational::one() - &self.gamma)
    }
}

/// Which clause of the main asymptotic statement a finite triple falls under.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "tag", rename_all = "kebab-case")]
pub enum Regime {
    /// `gamma <= 0`: `f_D(N, alpha) = 0`.
    Zero,
    /// `0 < gamma < 1`, with the finite hypotheses `D delta > 1` and `N >= 2D^3/(D delta - 1)`
    /// evaluated at `delta = 1 - gamma`.
    SmallGamma {
        #[serde(serialize_with = "serialize_ratio_str")]
        delta: Rational,
        margin_holds: bool,
        #[serde(serialize_with = "crate::rational::serialize_exact_opt")]
        required_n: Option<Rational>,
        hypotheses_hold: bool,
    },
    /// `gamma >= 1` with `alpha^2 N >= 1`; the clause itself is asymptotic so this is a tag only.
    LargeGamma,
    /// `gamma >= 1` but `alpha^2 N < 1`.
    Outside,
}

impl Regime {
    pub fn tag(&self) -> &'static str {
        match self {
            Regime::Zero => "zero",
            Regime::SmallGamma { .. } => "small-gamma",
            Regime::LargeGamma => "large-gamma",
            Regime::Outside => "outside",
        }
    }
}

pub fn classify_regime(params: &RegimeParams) -> Regime {
    let gamma = params.gamma();
    if !gamma.is_positive() {
        return Regime::Zero;
    }
    if let Some(delta) = params.delta() {
        let d = int(params.d());
        let d_delta = &d * &delta;
        let margin_holds = d_delta > Rational::one();
        let required_n = margin_holds.then(|| int(2) * &d * &d * &d / (d_delta - Rational::one()));
        let hypotheses_hold = required_n.as_ref().is_some_and(|r| int(params.n()) >= *r);
        return Regime::SmallGamma { delta, margin_holds, required_n, hypotheses_hold };
    }
    let mass = params.alpha() * params.alpha() * int(params.n());
    if mass >= Rational::one() {
        Regime::LargeGamma
    } else {
        debug_assert!(!mass.is_zero());
        Regime::Outside
    }
}
