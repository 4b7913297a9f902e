//! Numeric data on finite simple groups of Lie type in cross characteristic:
//! minimal degrees of projective representations, products controlling the
//! prime divisors of the group orders, and the vanishing bound c(n).
//!
//! Formulas are stored as small expression trees over the variables w, t and
//! a product index i, and evaluated exactly with big integers.

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::gf::{factorize, is_prime};

/// The largest prime dividing the order of a sporadic simple group.
pub const SPORADIC_MAX_PRIME: u64 = 71;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unsupported parameters for {family}: {message}")]
    UnsupportedParams { family: Family, message: String },
    #[error("characteristic {0} is the defining characteristic")]
    SameCharacteristic(u64),
    #[error("expression {0} is not integral here")]
    NonIntegral(String),
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("bound is only sharpened for n <= 3, got {0}")]
    SharpBoundRange(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    W,
    T,
    I,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Exact quotient.
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Gcd(Box<Expr>, Box<Expr>),
    /// Exact square root.
    Sqrt(Box<Expr>),
    /// Product over i from the first bound to the second, both inclusive.
    Prod(Box<Expr>, Box<Expr>, Box<Expr>),
}

pub fn w() -> Expr {
    Expr::W
}

pub fn t() -> Expr {
    Expr::T
}

pub fn i() -> Expr {
    Expr::I
}

pub fn pow(base: impl Into<Expr>, exp: impl Into<Expr>) -> Expr {
    Expr::Pow(Box::new(base.into()), Box::new(exp.into()))
}

pub fn gcd(a: impl Into<Expr>, b: impl Into<Expr>) -> Expr {
    Expr::Gcd(Box::new(a.into()), Box::new(b.into()))
}

pub fn sqrt(a: impl Into<Expr>) -> Expr {
    Expr::Sqrt(Box::new(a.into()))
}

pub fn prod(from: impl Into<Expr>, to: impl Into<Expr>, body: impl Into<Expr>) -> Expr {
    Expr::Prod(Box::new(from.into()), Box::new(to.into()), Box::new(body.into()))
}

impl From<i64> for Expr {
    fn from(v: i64) -> Expr {
        Expr::Int(v)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $variant:ident) => {
        impl<R: Into<Expr>> $trait<R> for Expr {
            type Output = Expr;
            fn $method(self, rhs: R) -> Expr {
                Expr::$variant(Box::new(self), Box::new(rhs.into()))
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

/// Values of the formula variables.
#[derive(Clone, Debug)]
pub struct Env {
    pub w: BigInt,
    pub t: i64,
    pub i: i64,
}

impl Expr {
    pub fn eval(&self, env: &Env) -> Result<BigInt, CatalogError> {
        let bad = || CatalogError::NonIntegral(self.to_string());
        Ok(match self {
            Expr::Int(v) => BigInt::from(*v),
            Expr::W => env.w.clone(),
            Expr::T => BigInt::from(env.t),
            Expr::I => BigInt::from(env.i),
            Expr::Add(a, b) => a.eval(env)? + b.eval(env)?,
            Expr::Sub(a, b) => a.eval(env)? - b.eval(env)?,
            Expr::Mul(a, b) => a.eval(env)? * b.eval(env)?,
            Expr::Div(a, b) => {
                let (x, y) = (a.eval(env)?, b.eval(env)?);
                if y.is_zero() || !(&x % &y).is_zero() {
                    return Err(bad());
                }
                x / y
            }
            Expr::Pow(a, b) => {
                let e = b.eval(env)?.to_u32().ok_or_else(bad)?;
                a.eval(env)?.pow(e)
            }
            Expr::Gcd(a, b) => a.eval(env)?.gcd(&b.eval(env)?),
            Expr::Sqrt(a) => {
                let x = a.eval(env)?;
                if x.is_negative() {
                    return Err(bad());
                }
                let r = x.sqrt();
                if &r * &r != x {
                    return Err(bad());
                }
                r
            }
            Expr::Prod(from, to, body) => {
                let lo = from.eval(env)?.to_i64().ok_or_else(bad)?;
                let hi = to.eval(env)?.to_i64().ok_or_else(bad)?;
                let mut acc = BigInt::one();
                for k in lo..=hi {
                    acc *= body.eval(&Env { i: k, ..env.clone() })?;
                }
                acc
            }
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Pow(..) => 3,
            _ => 4,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |e: &Expr, min: u8| {
            if e.precedence() < min {
                format!("({e})")
            } else {
                e.to_string()
            }
        };
        match self {
            Expr::Int(v) => write!(f, "{v}"),
            Expr::W => f.write_str("w"),
            Expr::T => f.write_str("t"),
            Expr::I => f.write_str("i"),
            Expr::Add(a, b) => write!(f, "{} + {}", wrap(a, 1), wrap(b, 2)),
            Expr::Sub(a, b) => write!(f, "{} - {}", wrap(a, 1), wrap(b, 2)),
            Expr::Mul(a, b) => write!(f, "{}*{}", wrap(a, 2), wrap(b, 3)),
            Expr::Div(a, b) => write!(f, "{}/{}", wrap(a, 2), wrap(b, 3)),
            Expr::Pow(a, b) => write!(f, "{}^{}", wrap(a, 4), wrap(b, 4)),
            Expr::Gcd(a, b) => write!(f, "gcd({a}, {b})"),
            Expr::Sqrt(a) => write!(f, "sqrt({a})"),
            Expr::Prod(lo, hi, body) => write!(f, "prod_{{i={lo}}}^{{{hi}}} ({body})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// PSL_t(w); t = 2 has its own minimal degree.
    Psl,
    /// PSp_{2t}(w).
    Psp,
    /// PSU_t(w).
    Psu,
    /// POmega^+_{2t}(w).
    POmegaPlus,
    /// POmega^-_{2t}(w).
    POmegaMinus,
    /// Omega_{2t+1}(w).
    Omega,
    E6,
    E7,
    E8,
    F4,
    TwistedE6,
    G2,
    TripleD4,
    TwistedF4,
    Suz,
    TwistedG2,
}

impl Family {
    pub const ALL: [Family; 16] = [
        Family::Psl,
        Family::Psp,
        Family::Psu,
        Family::POmegaPlus,
        Family::POmegaMinus,
        Family::Omega,
        Family::E6,
        Family::E7,
        Family::E8,
        Family::F4,
        Family::TwistedE6,
        Family::G2,
        Family::TripleD4,
        Family::TwistedF4,
        Family::Suz,
        Family::TwistedG2,
    ];

    /// Whether the family carries a rank parameter t.
    pub fn has_rank(self) -> bool {
        matches!(
            self,
            Family::Psl | Family::Psp | Family::Psu | Family::POmegaPlus | Family::POmegaMinus | Family::Omega
        )
    }

    pub fn parse(s: &str) -> Option<Family> {
        let key = s.to_ascii_lowercase().replace(['_', '-', ' '], "");
        Family::ALL.into_iter().find(|f| format!("{f:?}").to_ascii_lowercase() == key)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A simple group of Lie type over F_w, w = pp^alpha.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieFamily {
    pub family: Family,
    /// Defining characteristic.
    pub pp: u64,
    pub alpha: u32,
    /// Rank parameter; ignored by the exceptional families.
    #[serde(default)]
    pub t: u32,
}

impl LieFamily {
    pub fn new(family: Family, pp: u64, alpha: u32, t: u32) -> Result<LieFamily, CatalogError> {
        if !is_prime(pp) {
            return Err(CatalogError::NonPrime(pp));
        }
        let s = LieFamily { family, pp, alpha, t };
        if alpha == 0 {
            return Err(s.unsupported("alpha must be at least 1"));
        }
        match family {
            Family::Suz | Family::TwistedF4 if pp != 2 || alpha % 2 == 0 => {
                Err(s.unsupported("w must be 2^(2h+1)"))
            }
            Family::TwistedG2 if pp != 3 || alpha % 2 == 0 => Err(s.unsupported("w must be 3^(2h+1)")),
            f if f.has_rank() && t == 0 => Err(s.unsupported("rank t must be positive")),
            _ => Ok(s),
        }
    }

    /// Builds the family from w itself.
    pub fn from_w(family: Family, w: u64, t: u32) -> Result<LieFamily, CatalogError> {
        let f = factorize(w);
        if f.len() != 1 {
            return Err(CatalogError::NonPrime(w));
        }
        Self::new(family, f[0].0, f[0].1, t)
    }

    pub fn w(&self) -> BigInt {
        BigInt::from(self.pp).pow(self.alpha)
    }

    fn env(&self) -> Env {
        Env {
            w: self.w(),
            t: self.t as i64,
            i: 0,
        }
    }

    fn unsupported(&self, message: &str) -> CatalogError {
        CatalogError::UnsupportedParams {
            family: self.family,
            message: message.into(),
        }
    }
}

impl fmt::Display for LieFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.w();
        match self.family {
            Family::Psl => write!(f, "PSL_{}({w})", self.t),
            Family::Psp => write!(f, "PSp_{}({w})", 2 * self.t),
            Family::Psu => write!(f, "PSU_{}({w})", self.t),
            Family::POmegaPlus => write!(f, "POmega+_{}({w})", 2 * self.t),
            Family::POmegaMinus => write!(f, "POmega-_{}({w})", 2 * self.t),
            Family::Omega => write!(f, "Omega_{}({w})", 2 * self.t + 1),
            fam => write!(f, "{fam}({w})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    Always,
    TEqualsTwo,
    TAtLeastThree,
    TOdd,
    TEven,
    WIsFive,
    WNotFive,
}

impl Condition {
    fn holds(self, w: &BigInt, t: u32) -> bool {
        match self {
            Condition::Always => true,
            Condition::TEqualsTwo => t == 2,
            Condition::TAtLeastThree => t >= 3,
            Condition::TOdd => t % 2 == 1,
            Condition::TEven => t % 2 == 0,
            Condition::WIsFive => *w == BigInt::from(5),
            Condition::WNotFive => *w != BigInt::from(5),
        }
    }
}

/// One row of the minimal-degree table.
#[derive(Clone, Debug)]
pub struct DegreeRow {
    pub family: Family,
    pub t_min: u32,
    pub condition: Condition,
    pub formula: Expr,
}

/// Product whose prime divisors, together with pp, cover those of |S|.
#[derive(Clone, Debug)]
pub struct OrderRow {
    pub family: Family,
    pub t_min: u32,
    pub formula: Expr,
    pub note: Option<&'static str>,
}

pub fn degree_table() -> Vec<DegreeRow> {
    use Condition::*;
    use Family::*;
    let row = |family, t_min, condition, formula| DegreeRow {
        family,
        t_min,
        condition,
        formula,
    };
    let w2m1 = || pow(w(), 2) - 1;
    vec![
        row(Psl, 2, TEqualsTwo, (w() - 1) / gcd(2, w() - 1)),
        row(Psl, 3, TAtLeastThree, pow(w(), t() - 1) - 1),
        row(Psp, 2, Always, (pow(w(), t()) - 1) / 2),
        row(Psu, 3, TOdd, w() * (pow(w(), t() - 1) - 1) / (w() + 1)),
        row(Psu, 3, TEven, (pow(w(), t()) - 1) / (w() + 1)),
        row(POmegaPlus, 4, WNotFive, (pow(w(), t() - 1) - 1) * (pow(w(), t() - 2) + 1)),
        row(POmegaPlus, 4, WIsFive, pow(w(), t() - 2) * (pow(w(), t() - 1) - 1)),
        row(POmegaMinus, 4, Always, (pow(w(), t() - 1) + 1) * (pow(w(), t() - 2) - 1)),
        row(Omega, 3, WNotFive, pow(w(), (t() - 1) * 2) - 1),
        row(Omega, 3, WIsFive, pow(w(), t() - 1) * (pow(w(), t() - 1) - 1)),
        row(E6, 0, Always, pow(w(), 9) * w2m1()),
        row(E7, 0, Always, pow(w(), 15) * w2m1()),
        row(E8, 0, Always, pow(w(), 27) * w2m1()),
        row(F4, 0, Always, pow(w(), 6) * w2m1()),
        row(TwistedE6, 0, Always, pow(w(), 9) * w2m1()),
        row(G2, 0, Always, w() * w2m1()),
        row(TripleD4, 0, Always, pow(w(), 3) * w2m1()),
        row(TwistedF4, 0, Always, pow(w(), 4) * sqrt(w() / 2) * (w() - 1)),
        row(Suz, 0, Always, sqrt(w() / 2) * (w() - 1)),
        row(TwistedG2, 0, Always, w() * (w() - 1)),
    ]
}

pub fn order_table() -> Vec<OrderRow> {
    use Family::*;
    let row = |family, t_min, formula, note| OrderRow {
        family,
        t_min,
        formula,
        note,
    };
    let wm = |e: i64| pow(w(), e) - 1;
    let wp = |e: i64| pow(w(), e) + 1;
    let sign = || pow(-1, i());
    vec![
        row(Psl, 2, prod(2, t(), pow(w(), i()) - 1), None),
        row(Psp, 1, prod(1, t(), pow(w(), i() * 2) - 1), None),
        row(Psu, 2, prod(2, t(), pow(w(), i()) - sign()), None),
        row(POmegaPlus, 1, (pow(w(), t()) - 1) * prod(1, t() - 1, pow(w(), i() * 2) - 1), None),
        row(POmegaMinus, 1, (pow(w(), t()) + 1) * prod(1, t() - 1, pow(w(), i() * 2) - 1), None),
        row(Omega, 1, prod(1, t(), pow(w(), i() * 2) - 1), None),
        row(E6, 0, wm(12) * wm(9) * wm(8) * wm(6) * wm(5) * wm(2), None),
        row(
            E7,
            0,
            pow(w(), 63) * wm(18) * wm(14) * wm(12) * wm(10) * wm(8) * wm(6) * wm(2),
            Some("omits the factor 1/gcd(2, w - 1); a multiple of the order"),
        ),
        row(
            E8,
            0,
            prod(0, 3, pow(w(), i() * 6 + 2) - 1) * prod(2, 5, pow(w(), i() * 6) - 1),
            None,
        ),
        row(F4, 0, pow(w(), 24) * wm(12) * wm(8) * wm(6) * wm(2), None),
        row(TwistedE6, 0, wm(12) * wp(9) * wm(8) * wm(6) * wp(5) * wm(2), None),
        row(G2, 0, pow(w(), 6) * wm(6) * wm(2), None),
        row(TripleD4, 0, pow(w(), 12) * (pow(w(), 8) + pow(w(), 4) + 1) * wm(6) * wm(2), None),
        row(TwistedF4, 0, pow(w(), 12) * wp(6) * wm(4) * wp(3) * wm(2), None),
        row(
            Suz,
            0,
            pow(w(), 2) * wp(2) * wm(2),
            Some("w^2 - 1 in place of w - 1; a multiple of the order"),
        ),
        row(TwistedG2, 0, pow(w(), 3) * wp(3) * wm(1), None),
    ]
}

fn min_t(s: &LieFamily, t_min: u32) -> Result<(), CatalogError> {
    if s.family.has_rank() && s.t < t_min {
        return Err(s.unsupported(&format!("needs t >= {t_min}")));
    }
    Ok(())
}

/// Minimal degree of a nontrivial projective representation in cross
/// characteristic (pp > 3, except for the families defined only in
/// characteristic 2 or 3).
pub fn min_degree(s: &LieFamily) -> Result<BigInt, CatalogError> {
    let small_char_family = matches!(s.family, Family::Suz | Family::TwistedF4 | Family::TwistedG2);
    if s.pp <= 3 && !small_char_family {
        return Err(s.unsupported("table assumes defining characteristic above 3"));
    }
    if s.family == Family::Omega && s.pp % 2 == 0 {
        return Err(s.unsupported("w must be odd"));
    }
    let w = s.w();
    let rows: Vec<DegreeRow> = degree_table().into_iter().filter(|r| r.family == s.family).collect();
    let floor = rows.iter().map(|r| r.t_min).min().unwrap_or(0);
    min_t(s, floor)?;
    let row = rows
        .iter()
        .find(|r| r.condition.holds(&w, s.t))
        .ok_or_else(|| s.unsupported("no table row applies"))?;
    row.formula.eval(&s.env())
}

pub fn order_divisor_product(s: &LieFamily) -> Result<BigInt, CatalogError> {
    let row = order_table()
        .into_iter()
        .find(|r| r.family == s.family)
        .expect("every family has an order row");
    min_t(s, row.t_min)?;
    row.formula.eval(&s.env())
}

/// Whether the prime p can divide |S|.
pub fn prime_may_divide_order(s: &LieFamily, p: u64) -> Result<bool, CatalogError> {
    if p == s.pp {
        return Ok(true);
    }
    Ok((order_divisor_product(s)? % BigInt::from(p)).is_zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundSpec {
    pub n: u64,
    pub c: u64,
}

/// c(n) = (2n + 1)^2.
pub fn bound(n: u64) -> BoundSpec {
    BoundSpec {
        n,
        c: (2 * n + 1).pow(2),
    }
}

/// 2n + 1, the bound that already suffices for n <= 3.
pub fn sharp_bound_small_n(n: u64) -> Result<u64, CatalogError> {
    if n > 3 {
        return Err(CatalogError::SharpBoundRange(n));
    }
    Ok(2 * n + 1)
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Sufficient condition for p not dividing |A_N| when A_N sits in GL_n:
/// for N <= 4 the order itself, otherwise p does not divide (n + 4)!/2.
pub fn alternating_bound_check(big_n: u64, n: u64, p: u64) -> bool {
    let p = BigInt::from(p);
    if big_n <= 4 {
        let order: BigInt = if big_n < 2 { BigInt::one() } else { factorial(big_n) / 2 };
        return !(order % p).is_zero();
    }
    let half: BigInt = factorial(n + 4) / 2;
    !(half % p).is_zero()
}

/// Every prime dividing a sporadic group order lies below c(n).
pub fn sporadic_ceiling_holds(n: u64) -> bool {
    SPORADIC_MAX_PRIME < bound(n).c
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Prediction {
    Guaranteed { reason: String, trace: Vec<String> },
    Unknown { trace: Vec<String> },
}

impl Prediction {
    pub fn is_guaranteed(&self) -> bool {
        matches!(self, Prediction::Guaranteed { .. })
    }
}

/// Guaranteed vanishing iff p cannot divide |S|, so that the Sylow
/// p-subgroup is trivial.
pub fn predict_h1_zero(s: &LieFamily, p: u64, n: u64) -> Result<Prediction, CatalogError> {
    if !is_prime(p) {
        return Err(CatalogError::NonPrime(p));
    }
    if p == s.pp {
        return Err(CatalogError::SameCharacteristic(p));
    }
    let product = order_divisor_product(s)?;
    let c = bound(n).c;
    let mut trace = vec![format!("{s}: order controlled by {product}")];
    if let Ok(d) = min_degree(s) {
        let relation = if BigInt::from(n) >= d { ">=" } else { "<" };
        trace.push(format!("n = {n} {relation} minimal degree {d}"));
    }
    let above = if p > c { ">" } else { "<=" };
    trace.push(format!("p = {p} {above} c(n) = {c}"));
    if s.family == Family::Psu && s.t >= 2 {
        trace.extend(psu_chain(s, n, p));
    }
    if (&product % BigInt::from(p)).is_zero() {
        trace.push(format!("p divides {product}"));
        return Ok(Prediction::Unknown { trace });
    }
    trace.push(format!("p does not divide {product}, so the Sylow {p}-subgroup is trivial"));
    Ok(Prediction::Guaranteed {
        reason: "SylowTrivial".into(),
        trace,
    })
}

// w^t + 1 < (2n+1)^(t/(t-1)) + 1 <= (2n+1)^2 + 1, checked in integers
fn psu_chain(s: &LieFamily, n: u64, p: u64) -> Vec<String> {
    let t = s.t;
    let wt = s.w().pow(t);
    let base = BigInt::from(2 * n + 1);
    let first = wt.pow(t - 1) < base.pow(t);
    let c1 = base.pow(2) + 1;
    let mut out = Vec::new();
    if first {
        out.push(format!(
            "w^t + 1 = {} < (2n+1)^(t/(t-1)) + 1 <= (2n+1)^2 + 1 = {c1}",
            &wt + 1
        ));
        if BigInt::from(p) > &c1 - 1 {
            out.push(format!("p = {p} > w^t + 1"));
        }
    } else {
        out.push(format!("w^t + 1 = {} is not below (2n+1)^(t/(t-1)) + 1", &wt + 1));
    }
    out
}

/// Both tables as JSON.
pub fn dump() -> Value {
    let degrees: Vec<Value> = degree_table()
        .iter()
        .map(|r| {
            json!({
                "family": r.family,
                "t_min": r.t_min,
                "condition": r.condition,
                "min_degree": r.formula.to_string(),
            })
        })
        .collect();
    let orders: Vec<Value> = order_table()
        .iter()
        .map(|r| {
            let mut v = json!({
                "family": r.family,
                "t_min": r.t_min,
                "product": r.formula.to_string(),
            });
            if let Some(note) = r.note {
                v["note"] = json!(note);
            }
            v
        })
        .collect();
    json!({
        "min_degree": degrees,
        "order_divisor_product": orders,
        "bound": "(2n + 1)^2",
        "sharp_bound_small_n": "2n + 1 for n <= 3",
        "sporadic_max_prime": SPORADIC_MAX_PRIME,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lie(f: Family, w: u64, t: u32) -> LieFamily {
        LieFamily::from_w(f, w, t).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn minimal_degrees() {
        assert_eq!(min_degree(&lie(Family::Psl, 7, 2)).unwrap(), big(3));
        assert_eq!(min_degree(&lie(Family::Psl, 11, 2)).unwrap(), big(5));
        assert_eq!(min_degree(&lie(Family::Psl, 5, 3)).unwrap(), big(24));
        assert_eq!(min_degree(&lie(Family::Psu, 5, 4)).unwrap(), big((625 - 1) / 6));
        assert_eq!(min_degree(&lie(Family::Psu, 5, 3)).unwrap(), big(5 * 24 / 6));
        assert_eq!(min_degree(&lie(Family::POmegaPlus, 5, 4)).unwrap(), big(25 * 124));
        assert_eq!(min_degree(&lie(Family::POmegaPlus, 7, 4)).unwrap(), big(342 * 50));
        assert_eq!(min_degree(&lie(Family::Omega, 5, 3)).unwrap(), big(25 * 24));
        assert_eq!(min_degree(&lie(Family::Suz, 8, 0)).unwrap(), big(14));
        assert_eq!(min_degree(&lie(Family::TwistedF4, 8, 0)).unwrap(), big(4096 * 2 * 7));
        assert_eq!(min_degree(&lie(Family::TwistedG2, 27, 0)).unwrap(), big(27 * 26));
        assert!(min_degree(&lie(Family::Psl, 3, 2)).is_err());
        assert!(min_degree(&lie(Family::Psu, 5, 2)).is_err());
        assert!(LieFamily::from_w(Family::Suz, 4, 0).is_err());
        assert!(LieFamily::from_w(Family::TwistedG2, 9, 0).is_err());
    }

    #[test]
    fn order_products() {
        assert_eq!(order_divisor_product(&lie(Family::Psp, 3, 1)).unwrap(), big(8));
        let suz = order_divisor_product(&lie(Family::Suz, 8, 0)).unwrap();
        assert_eq!(suz, big(64 * 65 * 63));
        assert!(!(suz % BigInt::from(29)).is_zero());
        let g2 = order_divisor_product(&lie(Family::G2, 5, 0)).unwrap();
        assert_eq!(g2, big(5i64.pow(6) * (5i64.pow(6) - 1) * 24));
        assert_eq!(order_divisor_product(&lie(Family::Psu, 2, 3)).unwrap(), big(3 * 9));
        // |PSL_2(7)| = 168
        let psl = order_divisor_product(&lie(Family::Psl, 7, 2)).unwrap();
        assert_eq!(psl, big(48));
    }

    #[test]
    fn expressions_render_and_evaluate() {
        let e = (pow(w(), t() - 1) - 1) / (w() + 1);
        assert_eq!(e.to_string(), "(w^(t - 1) - 1)/(w + 1)");
        let env = Env { w: big(5), t: 3, i: 0 };
        assert_eq!(e.eval(&env).unwrap(), big(4));
        assert!(sqrt(w()).eval(&env).is_err());
        assert_eq!(prod(1, 3, i()).eval(&env).unwrap(), big(6));
    }

    #[test]
    fn bounds() {
        assert_eq!(bound(2).c, 25);
        assert_eq!(bound(3).c, 49);
        assert_eq!(sharp_bound_small_n(2).unwrap(), 5);
        assert!(sharp_bound_small_n(4).is_err());
        assert!(alternating_bound_check(6, 4, 83));
        assert!(!alternating_bound_check(6, 4, 7));
        assert!(alternating_bound_check(4, 2, 29));
        assert!(sporadic_ceiling_holds(4));
        assert!(!sporadic_ceiling_holds(3));
    }

    #[test]
    fn predictions() {
        let s = lie(Family::Psl, 7, 2);
        let p = predict_h1_zero(&s, 53, 3).unwrap();
        assert!(p.is_guaranteed());
        let s = lie(Family::Psu, 5, 3);
        let p = predict_h1_zero(&s, 7, 20).unwrap();
        assert!(!p.is_guaranteed());
        assert_eq!(predict_h1_zero(&s, 5, 20).unwrap_err(), CatalogError::SameCharacteristic(5));
        let s = lie(Family::G2, 5, 0);
        assert!(predict_h1_zero(&s, 11, 124 * 5).unwrap().is_guaranteed());
        assert!(!predict_h1_zero(&s, 31, 124 * 5).unwrap().is_guaranteed());
    }

    #[test]
    fn dump_lists_every_family() {
        let d = dump();
        let orders = d["order_divisor_product"].as_array().unwrap();
        assert_eq!(orders.len(), Family::ALL.len());
        for f in Family::ALL {
            assert!(d["min_degree"].as_array().unwrap().iter().any(|r| r["family"] == json!(f)));
        }
    }
}
