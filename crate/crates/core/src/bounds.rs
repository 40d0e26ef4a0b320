//! The bound expressions: the even-counting upper bound in its ceiling and
//! sharp forms, the geometric-series expansion, the derived 1.3-constant and
//! linear bounds, the Li gap, and the classical comparison bounds.
//!
//! All constants derived from log 2 are computed from `f64::ln` at runtime.

use std::fmt;
use std::str::FromStr;

use crate::analytic;
use crate::error::{domain, Error, Result};
use crate::table::PrimeTable;

/// Chebyshev's constant c₁ ≈ 0.92129.
pub const CHEBYSHEV_C1: f64 = 0.92129;

/// Default number of geometric terms beyond the leading one.
pub const DEFAULT_GEOMETRIC_TERMS: u32 = 64;

/// Pre-ceiling values closer than this to an integer are flagged.
pub const NEAR_TIE_EPS: f64 = 1.0 / (1u64 << 40) as f64;

#[inline]
fn ln2() -> f64 {
    2f64.ln()
}

/// `log 2^((x−1)/2)`, written out.
#[inline]
fn half_count_log2(x: f64) -> f64 {
    0.5 * (x - 1.0) * ln2()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundKind {
    Theorem1Ceiling,
    Theorem1Sharp,
    Geometric { j_max: u32 },
    Asymptotic13,
    LinearRest,
    ChebyshevLower { c1: f64 },
    ChebyshevUpper { c1: f64 },
    IntroUpper,
    DusartLower,
    DusartUpper,
    LiGap,
}

/// Which way the claimed inequality points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `π(x) ≤ bound`
    Upper,
    /// `bound ≤ π(x)`
    Lower,
    /// `|π(x) − Li(x)| ≤ bound`
    Gap,
}

/// Where a bound is claimed to hold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Validity {
    /// Claimed for `x ≥ from` (or `x > from` when not inclusive).
    Stated { from: f64, inclusive: bool },
    /// Only "for sufficiently large x"; thresholds are measured by scans.
    Empirical,
}

impl Validity {
    pub fn covers(&self, x: f64) -> bool {
        match *self {
            Validity::Stated { from, inclusive } => {
                if inclusive {
                    x >= from
                } else {
                    x > from
                }
            }
            Validity::Empirical => false,
        }
    }

    /// The stated lower end, if any.
    pub fn asserted_from(&self) -> Option<f64> {
        match *self {
            Validity::Stated { from, .. } => Some(from),
            Validity::Empirical => None,
        }
    }
}

impl BoundKind {
    pub const GEOMETRIC: BoundKind = BoundKind::Geometric {
        j_max: DEFAULT_GEOMETRIC_TERMS,
    };
    pub const CHEBYSHEV_LOWER: BoundKind = BoundKind::ChebyshevLower { c1: CHEBYSHEV_C1 };
    pub const CHEBYSHEV_UPPER: BoundKind = BoundKind::ChebyshevUpper { c1: CHEBYSHEV_C1 };

    /// Every kind, with default parameters, in reporting order.
    pub const ALL: [BoundKind; 11] = [
        BoundKind::Theorem1Ceiling,
        BoundKind::Theorem1Sharp,
        BoundKind::GEOMETRIC,
        BoundKind::Asymptotic13,
        BoundKind::LinearRest,
        BoundKind::CHEBYSHEV_LOWER,
        BoundKind::CHEBYSHEV_UPPER,
        BoundKind::IntroUpper,
        BoundKind::DusartLower,
        BoundKind::DusartUpper,
        BoundKind::LiGap,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            BoundKind::Theorem1Ceiling => "theorem1_ceiling",
            BoundKind::Theorem1Sharp => "theorem1_sharp",
            BoundKind::Geometric { .. } => "geometric",
            BoundKind::Asymptotic13 => "asymptotic_13",
            BoundKind::LinearRest => "linear_rest",
            BoundKind::ChebyshevLower { .. } => "chebyshev_lower",
            BoundKind::ChebyshevUpper { .. } => "chebyshev_upper",
            BoundKind::IntroUpper => "intro_upper",
            BoundKind::DusartLower => "dusart_lower",
            BoundKind::DusartUpper => "dusart_upper",
            BoundKind::LiGap => "li_gap",
        }
    }

    pub fn direction(&self) -> Direction {
        match self {
            BoundKind::ChebyshevLower { .. } | BoundKind::DusartLower => Direction::Lower,
            BoundKind::LiGap => Direction::Gap,
            _ => Direction::Upper,
        }
    }

    pub fn validity(&self) -> Validity {
        let from = |from, inclusive| Validity::Stated { from, inclusive };
        match self {
            BoundKind::Theorem1Ceiling => from(2.0, true),
            BoundKind::Theorem1Sharp | BoundKind::Geometric { .. } => from(2.0, false),
            BoundKind::Asymptotic13 => from(2.0, true),
            BoundKind::LinearRest => from(3.0, true),
            BoundKind::IntroUpper => from(2.0, true),
            BoundKind::DusartLower => from(5393.0, true),
            BoundKind::DusartUpper => from(60184.0, true),
            BoundKind::ChebyshevLower { .. }
            | BoundKind::ChebyshevUpper { .. }
            | BoundKind::LiGap => Validity::Empirical,
        }
    }

    /// Smallest x at which the expression is defined.
    pub fn domain_min(&self) -> f64 {
        match self {
            BoundKind::LiGap => 3.0,
            _ => 2.0,
        }
    }

    pub fn needs_li(&self) -> bool {
        matches!(self, BoundKind::LiGap)
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundKind::Geometric { j_max } if *j_max != DEFAULT_GEOMETRIC_TERMS => {
                write!(f, "geometric:{j_max}")
            }
            BoundKind::ChebyshevLower { c1 } | BoundKind::ChebyshevUpper { c1 }
                if *c1 != CHEBYSHEV_C1 =>
            {
                write!(f, "{}:{c1}", self.tag())
            }
            _ => f.write_str(self.tag()),
        }
    }
}

impl FromStr for BoundKind {
    type Err = Error;

    /// Parses a tag, optionally followed by `:param` for `geometric`
    /// (`j_max`) and the Chebyshev kinds (`c₁`).
    fn from_str(s: &str) -> Result<Self> {
        let (tag, param) = match s.split_once(':') {
            Some((t, p)) => (t, Some(p)),
            None => (s, None),
        };
        let bad_param = || Error::Domain(format!("bad parameter in bound kind {s:?}"));
        let kind = match tag {
            "theorem1_ceiling" => BoundKind::Theorem1Ceiling,
            "theorem1_sharp" => BoundKind::Theorem1Sharp,
            "geometric" => BoundKind::Geometric {
                j_max: match param {
                    Some(p) => p.parse().map_err(|_| bad_param())?,
                    None => DEFAULT_GEOMETRIC_TERMS,
                },
            },
            "asymptotic_13" => BoundKind::Asymptotic13,
            "linear_rest" => BoundKind::LinearRest,
            "chebyshev_lower" | "chebyshev_upper" => {
                let c1 = match param {
                    Some(p) => p.parse().map_err(|_| bad_param())?,
                    None => CHEBYSHEV_C1,
                };
                if tag == "chebyshev_lower" {
                    BoundKind::ChebyshevLower { c1 }
                } else {
                    BoundKind::ChebyshevUpper { c1 }
                }
            }
            "intro_upper" => BoundKind::IntroUpper,
            "dusart_lower" => BoundKind::DusartLower,
            "dusart_upper" => BoundKind::DusartUpper,
            "li_gap" => BoundKind::LiGap,
            _ => return domain(format!("unknown bound kind {s:?}")),
        };
        let takes_param = matches!(
            kind,
            BoundKind::Geometric { .. }
                | BoundKind::ChebyshevLower { .. }
                | BoundKind::ChebyshevUpper { .. }
        );
        if param.is_some() && !takes_param {
            return Err(bad_param());
        }
        Ok(kind)
    }
}

/// One evaluation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub x: f64,
    pub pi_x: u64,
    pub bound: f64,
    /// Slack in the direction of the claim: `bound − π` for upper bounds,
    /// `π − bound` for lower bounds, `bound − |π − Li|` for the Li gap.
    pub margin: f64,
    pub holds: bool,
    /// Whether `x` lies in the range where the bound is claimed.
    pub asserted: bool,
    /// Set only for the ceiling bound, see [`NEAR_TIE_EPS`].
    pub near_tie: bool,
}

/// `(((x−1)/2)·log 2 + θ(x)) / log x`, the quantity inside the ceiling.
pub fn theorem1_pre_ceiling(x: f64, theta_x: f64) -> f64 {
    (half_count_log2(x) + theta_x) / x.ln()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CeilingBound {
    pub value: f64,
    pub pre_ceiling: f64,
    pub near_tie: bool,
}

/// `⌈(((x−1)/2)·log 2 + θ(x)) / log x⌉`.
///
/// When the pre-ceiling value sits within [`NEAR_TIE_EPS`] of an integer the
/// floating-point ceiling is not trusted: the smaller candidate is returned and
/// `near_tie` is set.
pub fn bound_theorem1_ceiling(x: f64, theta_x: f64) -> Result<CeilingBound> {
    if !(x >= 2.0) {
        return domain(format!("ceiling bound needs x ≥ 2, got {x}"));
    }
    let pre = theorem1_pre_ceiling(x, theta_x);
    let nearest = pre.round();
    let near_tie = (pre - nearest).abs() <= NEAR_TIE_EPS;
    Ok(CeilingBound {
        value: if near_tie { nearest } else { pre.ceil() },
        pre_ceiling: pre,
        near_tie,
    })
}

/// `(((x−1)/2)·log 2 + θ(x)) / (log x − log 2)`.
pub fn bound_theorem1_sharp(x: f64, theta_x: f64) -> Result<f64> {
    if !(x > 2.0) {
        return domain(format!("sharp bound needs x > 2, got {x}"));
    }
    // log x − log 2 as log(x/2); exact at x = 2e.
    Ok((half_count_log2(x) + theta_x) / (x / 2.0).ln())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricBound {
    /// Partial sum through `j_max`.
    pub value: f64,
    /// Absolute tail `first·r^(j_max+1)/(1−r)`, `r = log 2/log x`; the partial
    /// sum plus this equals the sharp bound.
    pub remainder_bound: f64,
    pub ratio: f64,
}

/// Leading term times `Σ_{j=0}^{j_max} (log 2/log x)^j`.
pub fn bound_geometric(x: f64, theta_x: f64, j_max: u32) -> Result<GeometricBound> {
    if !(x > 2.0) {
        return domain(format!("geometric series needs x > 2, got {x}"));
    }
    let first = theorem1_pre_ceiling(x, theta_x);
    let r = ln2() / x.ln();
    let mut term = 1.0;
    let mut series = 1.0;
    for _ in 0..j_max {
        term *= r;
        series += term;
    }
    Ok(GeometricBound {
        value: first * series,
        remainder_bound: first * term * r / (1.0 - r),
        ratio: r,
    })
}

/// `(1 + log 2/2)·x/log x`.
pub fn bound_asymptotic_13(x: f64) -> Result<f64> {
    if !(x > 1.0) {
        return domain(format!("x/log x needs x > 1, got {x}"));
    }
    Ok((1.0 + 0.5 * ln2()) * x / x.ln())
}

/// `(log 2/2)·x + 2`, defined everywhere; claimed for x ≥ 3.
pub fn bound_linear_rest(x: f64) -> f64 {
    0.5 * ln2() * x + 2.0
}

pub fn chebyshev_lower(x: f64, c1: f64) -> Result<f64> {
    if !(x > 1.0) {
        return domain(format!("x/log x needs x > 1, got {x}"));
    }
    Ok(c1 * x / x.ln())
}

pub fn chebyshev_upper(x: f64, c1: f64) -> Result<f64> {
    chebyshev_lower(x, 1.2 * c1)
}

/// `(x/log x)(1 + 3/(2 log x))`.
pub fn intro_upper(x: f64) -> Result<f64> {
    if !(x > 1.0) {
        return domain(format!("x/log x needs x > 1, got {x}"));
    }
    let l = x.ln();
    Ok(x / l * (1.0 + 1.5 / l))
}

fn x_over_log_minus(x: f64, shift: f64) -> Result<f64> {
    let d = x.ln() - shift;
    if !(d > 0.0) {
        return domain(format!("log x − {shift} must be positive, x = {x}"));
    }
    Ok(x / d)
}

/// `x/(log x − 1)`; needs x > e.
pub fn dusart_lower(x: f64) -> Result<f64> {
    x_over_log_minus(x, 1.0)
}

/// `x/(log x − 1.1)`; needs x > e^1.1.
pub fn dusart_upper(x: f64) -> Result<f64> {
    x_over_log_minus(x, 1.1)
}

/// Right-hand side of the Li gap: `((x−1)/2)·log 2 + log x − x/log x`.
pub fn li_gap_rhs(x: f64) -> Result<f64> {
    if !(x > 1.0) {
        return domain(format!("x/log x needs x > 1, got {x}"));
    }
    let l = x.ln();
    Ok(half_count_log2(x) + l - x / l)
}

/// Report for `|π(x) − Li(x)| ≤ ((x−1)/2)·log 2 + log x − x/log x`.
pub fn bound_li_gap(x: f64, pi_x: u64, li_x: f64) -> Result<BoundReport> {
    if !(x >= 3.0) {
        return domain(format!("Li gap is evaluated for x ≥ 3, got {x}"));
    }
    let rhs = li_gap_rhs(x)?;
    let margin = rhs - (pi_x as f64 - li_x).abs();
    Ok(BoundReport {
        kind: BoundKind::LiGap,
        x,
        pi_x,
        bound: rhs,
        margin,
        holds: margin >= 0.0,
        asserted: false,
        near_tie: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonBound {
    pub kind: BoundKind,
    /// `None` where the expression is undefined (e.g. Dusart below e).
    pub value: Option<f64>,
    /// `x` meets the bound's stated validity threshold.
    pub applicable: bool,
}

/// The classical bounds quoted for comparison, each flagged by whether its
/// stated validity range covers `x`.
pub fn comparison_bounds(x: f64) -> Result<Vec<ComparisonBound>> {
    if !(x >= 2.0) {
        return domain(format!("comparison bounds need x ≥ 2, got {x}"));
    }
    let entry = |kind: BoundKind, v: Result<f64>| ComparisonBound {
        kind,
        value: v.ok(),
        applicable: kind.validity().covers(x),
    };
    Ok(vec![
        entry(BoundKind::CHEBYSHEV_LOWER, chebyshev_lower(x, CHEBYSHEV_C1)),
        entry(BoundKind::CHEBYSHEV_UPPER, chebyshev_upper(x, CHEBYSHEV_C1)),
        entry(BoundKind::IntroUpper, intro_upper(x)),
        entry(BoundKind::DusartLower, dusart_lower(x)),
        entry(BoundKind::DusartUpper, dusart_upper(x)),
    ])
}

/// Everything a bound needs at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointData {
    pub x: f64,
    pub pi_x: u64,
    pub theta_x: f64,
    /// Required only for [`BoundKind::LiGap`].
    pub li_x: Option<f64>,
}

/// Evaluate `kind` from precomputed π, θ (and Li).
pub fn evaluate_point(kind: BoundKind, p: &PointData) -> Result<BoundReport> {
    let x = p.x;
    let mut near_tie = false;
    let bound = match kind {
        BoundKind::Theorem1Ceiling => {
            let c = bound_theorem1_ceiling(x, p.theta_x)?;
            near_tie = c.near_tie;
            c.value
        }
        BoundKind::Theorem1Sharp => bound_theorem1_sharp(x, p.theta_x)?,
        BoundKind::Geometric { j_max } => bound_geometric(x, p.theta_x, j_max)?.value,
        BoundKind::Asymptotic13 => bound_asymptotic_13(x)?,
        BoundKind::LinearRest => bound_linear_rest(x),
        BoundKind::ChebyshevLower { c1 } => chebyshev_lower(x, c1)?,
        BoundKind::ChebyshevUpper { c1 } => chebyshev_upper(x, c1)?,
        BoundKind::IntroUpper => intro_upper(x)?,
        BoundKind::DusartLower => dusart_lower(x)?,
        BoundKind::DusartUpper => dusart_upper(x)?,
        BoundKind::LiGap => {
            let li = p
                .li_x
                .ok_or_else(|| Error::Domain("Li gap needs Li(x)".into()))?;
            return bound_li_gap(x, p.pi_x, li);
        }
    };
    let pi = p.pi_x as f64;
    let margin = match kind.direction() {
        Direction::Lower => pi - bound,
        _ => bound - pi,
    };
    Ok(BoundReport {
        kind,
        x,
        pi_x: p.pi_x,
        bound,
        margin,
        holds: margin >= 0.0,
        asserted: kind.validity().covers(x),
        near_tie,
    })
}

/// Evaluate `kind` at `x` against the table. Li, when needed, comes from
/// adaptive quadrature at [`analytic::DEFAULT_LI_TOL`].
pub fn evaluate(kind: BoundKind, x: f64, table: &PrimeTable) -> Result<BoundReport> {
    let pi_x = table.pi(x)?;
    let theta_x = table.theta(x)?;
    let li_x = if kind.needs_li() && x >= 2.0 {
        Some(analytic::li(x, analytic::DEFAULT_LI_TOL)?.value)
    } else {
        None
    };
    evaluate_point(
        kind,
        &PointData {
            x,
            pi_x,
            theta_x,
            li_x,
        },
    )
}
