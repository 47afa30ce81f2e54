//! Closed-form bounds on `f_D(N, alpha)`, all in exact rational arithmetic.
//!
//! Lower bounds are returned raw and may be negative.

use num_traits::One;
use serde::Serialize;

use crate::constructions::{block_hypotheses, classify_regime, plan_integer, Regime, RegimeParams};
use crate::error::{Error, Result};
use crate::rational::{int, serialize_exact, serialize_exact_opt, Rational};

/// `2(D alpha - 1) N / (D(D-1)) - 2/D`.
pub fn lb_inclusion_exclusion(params: &RegimeParams) -> Rational {
    let (n, d) = (int(params.n()), int(params.d()));
    int(2) * params.gamma() * n / (&d * (&d - Rational::one())) - int(2) / &d
}

/// `alpha^2 N^2 / (N + D) - (alpha N + 1) / D`.
pub fn lb_fourier(params: &RegimeParams) -> Rational {
    let (n, d, alpha) = (int(params.n()), int(params.d()), params.alpha());
    alpha * alpha * &n * &n / (&n + &d) - (alpha * &n + Rational::one()) / d
}

/// The main term `alpha^2 N^2 / (N + D)` of [`lb_fourier`].
pub fn lb_fourier_main_term(params: &RegimeParams) -> Rational {
    let (n, d, alpha) = (int(params.n()), int(params.d()), params.alpha());
    alpha * alpha * &n * &n / (n + d)
}

/// `alpha^2 N - 1`, a lower bound on the largest nonzero count of any `A` in `Z/NZ` with
/// `|A| >= alpha N`.
pub fn lb_cyclic_counting(n: u64, alpha: &Rational) -> Result<Rational> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("cyclic counting bound needs N >= 2, got {n}")));
    }
    Ok(alpha * alpha * int(n) - Rational::one())
}

/// `2(D alpha - 1) N / (D(D-1)) + 4`, under the block construction's hypotheses.
pub fn ub_block(params: &RegimeParams) -> Result<Rational> {
    block_hypotheses(params).map_err(Error::BlockHypothesis)?;
    let (n, d) = (int(params.n()), int(params.d()));
    Ok(int(2) * params.gamma() * n / (&d * (&d - Rational::one())) + int(4))
}

/// `2 alpha^3 / (1 + alpha)` when `1/alpha` is an integer and `D = 1/alpha + 1`. It equals the
/// leading coefficient of [`ub_block`] at that point.
pub fn remark_coefficient(params: &RegimeParams) -> Option<Rational> {
    let recip = params.alpha().recip();
    (recip.is_integer() && int(params.d()) == recip + Rational::one()).then(|| {
        let a = params.alpha();
        int(2) * a * a * a / (Rational::one() + a)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub params: RegimeParams,
    pub regime: Regime,
    #[serde(serialize_with = "serialize_exact")]
    pub lb_inclusion_exclusion: Rational,
    #[serde(serialize_with = "serialize_exact")]
    pub lb_fourier: Rational,
    /// Over `Z/NZ` rather than `[N]`.
    #[serde(serialize_with = "serialize_exact_opt")]
    pub lb_cyclic_counting: Option<Rational>,
    #[serde(serialize_with = "serialize_exact_opt")]
    pub ub_block: Option<Rational>,
    /// Why `ub_block` is absent.
    pub ub_block_hypothesis: Option<String>,
    /// Stated cap of the parabola construction on `[N]`, which bounds `M_N` and so `M_D`.
    pub cap_parabola_projection: Option<u64>,
    #[serde(serialize_with = "serialize_exact_opt")]
    pub remark_coefficient: Option<Rational>,
    pub notes: Vec<String>,
}

impl BoundsReport {
    pub fn new(params: &RegimeParams) -> Self {
        let (ub_block, ub_block_hypothesis) = match ub_block(params) {
            Ok(v) => (Some(v), None),
            Err(e) => (None, Some(e.to_string())),
        };
        let mut notes = Vec::new();
        if params.gamma() >= &Rational::one() {
            notes.push("large gamma: the Fourier bound behaves like alpha^2 N as D alpha grows".to_string());
        }
        BoundsReport {
            params: params.clone(),
            regime: classify_regime(params),
            lb_inclusion_exclusion: lb_inclusion_exclusion(params),
            lb_fourier: lb_fourier(params),
            lb_cyclic_counting: lb_cyclic_counting(params.n(), params.alpha()).ok(),
            ub_block,
            ub_block_hypothesis,
            cap_parabola_projection: plan_integer(params.n(), params.alpha()).ok().map(|plan| plan.cap),
            remark_coefficient: remark_coefficient(params),
            notes,
        }
    }

    /// Pairs where a lower bound on `f_D` exceeds an upper bound on it.
    pub fn violations(&self) -> Vec<String> {
        let lower = [("lb_inclusion_exclusion", &self.lb_inclusion_exclusion), ("lb_fourier", &self.lb_fourier)];
        let mut upper: Vec<(&str, Rational)> = Vec::new();
        if let Some(u) = &self.ub_block {
            upper.push(("ub_block", u.clone()));
        }
        if let Some(c) = self.cap_parabola_projection {
            upper.push(("cap_parabola_projection", int(c)));
        }
        let mut out = Vec::new();
        for (ln, lv) in lower {
            for (un, uv) in &upper {
                if lv > uv {
                    out.push(format!("{ln} = {lv} exceeds {un} = {uv}"));
                }
            }
        }
        out
    }
}
