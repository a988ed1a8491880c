//! Exact arithmetic in the circle group, written additively in the exponent.
//!
//! A [`CircleValue`] stands for `exp(2πi (q + r·θ))` where `q` is a rational
//! reduced into `[0, 1)`, `r` is a rational coefficient and `θ` is a formal
//! irrational parameter. Because `θ` is formal, two values are equal exactly
//! when both components agree, which makes σ-regularity decidable.

use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Name of the formal irrational parameter used when none is given.
pub const DEFAULT_PARAMETER: &str = "theta";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CircleError {
    #[error("mismatched formal parameters `{left}` and `{right}`")]
    MismatchedFormalParameter { left: String, right: String },
    #[error("invalid circle value at column {column}: {message}")]
    Parse { column: usize, message: String },
}

/// An element of the circle group 𝕋 in exponent form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CircleValue {
    rational: BigRational,
    theta: BigRational,
    theta_id: Option<String>,
}

fn reduce_mod_one(q: BigRational) -> BigRational {
    let floor = q.floor();
    q - floor
}

impl Default for CircleValue {
    fn default() -> Self {
        Self::identity()
    }
}

impl CircleValue {
    pub fn identity() -> Self {
        CircleValue {
            rational: BigRational::zero(),
            theta: BigRational::zero(),
            theta_id: None,
        }
    }

    /// `exp(2πi q)`.
    pub fn from_rational(q: BigRational) -> Self {
        CircleValue {
            rational: reduce_mod_one(q),
            theta: BigRational::zero(),
            theta_id: None,
        }
    }

    /// `exp(2πi num/den)`; panics when `den == 0`.
    pub fn from_fraction(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    /// `exp(2πi (q + r·θ))` with the default parameter name.
    pub fn new(q: BigRational, r: BigRational) -> Self {
        Self::with_parameter(q, r, DEFAULT_PARAMETER)
    }

    pub fn with_parameter(q: BigRational, r: BigRational, name: &str) -> Self {
        let theta_id = if r.is_zero() {
            None
        } else {
            Some(name.to_string())
        };
        CircleValue {
            rational: reduce_mod_one(q),
            theta: r,
            theta_id,
        }
    }

    /// `exp(2πi θ)`.
    pub fn theta() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn theta_coeff(&self) -> &BigRational {
        &self.theta
    }

    pub fn theta_id(&self) -> Option<&str> {
        self.theta_id.as_deref()
    }

    pub fn is_identity(&self) -> bool {
        self.rational.is_zero() && self.theta.is_zero()
    }

    pub fn has_theta(&self) -> bool {
        !self.theta.is_zero()
    }

    fn merged_id(&self, other: &CircleValue) -> Result<Option<String>, CircleError> {
        match (&self.theta_id, &other.theta_id) {
            (Some(a), Some(b)) if a != b => Err(CircleError::MismatchedFormalParameter {
                left: a.clone(),
                right: b.clone(),
            }),
            (Some(a), _) => Ok(Some(a.clone())),
            (None, b) => Ok(b.clone()),
        }
    }

    /// Group law of 𝕋: exponents add, the rational part is reduced mod 1.
    pub fn mul(&self, other: &CircleValue) -> Result<CircleValue, CircleError> {
        let id = self.merged_id(other)?;
        let theta = &self.theta + &other.theta;
        Ok(CircleValue {
            rational: reduce_mod_one(&self.rational + &other.rational),
            theta_id: if theta.is_zero() { None } else { id },
            theta,
        })
    }

    /// `self · other⁻¹`.
    pub fn div(&self, other: &CircleValue) -> Result<CircleValue, CircleError> {
        self.mul(&other.inverse())
    }

    /// Complex conjugate.
    pub fn inverse(&self) -> CircleValue {
        CircleValue {
            rational: reduce_mod_one(-&self.rational),
            theta: -&self.theta,
            theta_id: self.theta_id.clone(),
        }
    }

    /// `self^k`, i.e. the exponent scaled by the integer `k`.
    pub fn pow(&self, k: i64) -> CircleValue {
        self.pow_big(&BigInt::from(k))
    }

    pub fn pow_big(&self, k: &BigInt) -> CircleValue {
        let k = BigRational::from_integer(k.clone());
        let theta = &self.theta * &k;
        CircleValue {
            rational: reduce_mod_one(&self.rational * &k),
            theta_id: if theta.is_zero() {
                None
            } else {
                self.theta_id.clone()
            },
            theta,
        }
    }

    /// Order of the value in 𝕋 when it is a root of unity (denominator of
    /// the rational part); `None` when a formal θ is involved.
    pub fn root_of_unity_order(&self) -> Option<BigInt> {
        if self.has_theta() {
            None
        } else {
            Some(self.rational.denom().clone())
        }
    }

    /// Numerical value `exp(2πi (q + r·θ))` for a concrete substitute of θ.
    pub fn eval_numeric(&self, theta_value: f64) -> Complex64 {
        let q = self.rational.to_f64().unwrap_or(0.0);
        let r = self.theta.to_f64().unwrap_or(0.0);
        let phase = q + r * theta_value;
        let phase = phase - libm::floor(phase);
        let angle = 2.0 * core::f64::consts::PI * phase;
        Complex64::new(libm::cos(angle), libm::sin(angle))
    }
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for CircleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.theta_id.as_deref().unwrap_or(DEFAULT_PARAMETER);
        if self.theta.is_zero() {
            return fmt_rational(&self.rational, f);
        }
        let coeff = self.theta.abs();
        let negative = self.theta.is_negative();
        if !self.rational.is_zero() {
            fmt_rational(&self.rational, f)?;
            f.write_str(if negative { "-" } else { "+" })?;
        } else if negative {
            f.write_str("-")?;
        }
        if !coeff.is_one() {
            fmt_rational(&coeff, f)?;
            f.write_str("*")?;
        }
        f.write_str(name)
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, message: &str) -> CircleError {
        CircleError::Parse {
            column: self.pos + 1,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            None
        } else {
            self.src[start..self.pos].parse().ok()
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        if start == self.pos {
            None
        } else {
            Some(&self.src[start..self.pos])
        }
    }
}

/// Parses a non-negative fraction `a` or `a/b`.
fn parse_fraction(cur: &mut Cursor<'_>) -> Result<Option<BigRational>, CircleError> {
    let Some(num) = cur.integer() else {
        return Ok(None);
    };
    if cur.eat('/') {
        let den = cur.integer().ok_or_else(|| cur.err("expected denominator"))?;
        if den.is_zero() {
            return Err(cur.err("zero denominator"));
        }
        Ok(Some(BigRational::new(num, den)))
    } else {
        Ok(Some(BigRational::from_integer(num)))
    }
}

impl FromStr for CircleValue {
    type Err = CircleError;

    /// Accepts `q`, `q+r*theta`, `theta`, `-1/2*theta`, ... with `q`, `r`
    /// written as integers or fractions `a/b`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor { src: s, pos: 0 };
        let mut rational = BigRational::zero();
        let mut theta = BigRational::zero();
        let mut name: Option<String> = None;
        let mut first = true;
        loop {
            cur.skip_ws();
            if cur.pos == s.len() {
                if first {
                    return Err(cur.err("empty value"));
                }
                break;
            }
            let negative = if cur.eat('-') {
                true
            } else if cur.eat('+') || first {
                false
            } else {
                return Err(cur.err("expected `+` or `-`"));
            };
            first = false;
            let coeff = parse_fraction(&mut cur)?;
            let symbol = match coeff {
                Some(_) if cur.eat('*') => {
                    Some(cur.ident().ok_or_else(|| cur.err("expected parameter name"))?)
                }
                Some(_) => None,
                None => Some(cur.ident().ok_or_else(|| cur.err("expected number or parameter"))?),
            };
            let mut coeff = coeff.unwrap_or_else(BigRational::one);
            if negative {
                coeff = -coeff;
            }
            match symbol {
                None => rational += coeff,
                Some(sym) => {
                    if sym.as_bytes()[0].is_ascii_digit() {
                        return Err(cur.err("malformed parameter name"));
                    }
                    if let Some(prev) = &name {
                        if prev != sym {
                            return Err(cur.err("only one formal parameter is supported"));
                        }
                    }
                    name = Some(sym.to_string());
                    theta += coeff;
                }
            }
        }
        Ok(match name {
            Some(n) => CircleValue::with_parameter(rational, theta, &n),
            None => CircleValue::from_rational(rational),
        })
    }
}

/// Least common multiple of a collection of denominators.
pub fn lcm_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, d| acc.lcm(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    fn cv(s: &str) -> CircleValue {
        s.parse().unwrap()
    }

    #[test]
    fn mul_examples() {
        assert!(cv("1/2").mul(&cv("1/2")).unwrap().is_identity());
        assert!(cv("theta").mul(&cv("-theta")).unwrap().is_identity());
        assert_eq!(
            cv("1/3+1/2*theta").mul(&cv("5/6+1/2*theta")).unwrap(),
            cv("1/6+theta")
        );
    }

    #[test]
    fn cancelled_theta_drops_parameter() {
        let v = cv("1/2+theta").mul(&cv("-theta")).unwrap();
        assert_eq!(v.theta_id(), None);
        assert_eq!(v, cv("1/2"));
    }

    #[test]
    fn mismatched_parameters_are_rejected() {
        let err = cv("phi").mul(&cv("theta")).unwrap_err();
        assert!(matches!(err, CircleError::MismatchedFormalParameter { .. }));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(cv("0").inverse(), cv("0"));
        assert_eq!(cv("1/3").inverse(), cv("2/3"));
        assert_eq!(cv("1/4+2/3*theta").inverse(), cv("3/4-2/3*theta"));
    }

    #[test]
    fn identity_tests() {
        assert!(cv("0").is_identity());
        assert!(!cv("theta").is_identity());
        assert!(!cv("1/2").is_identity());
        assert!(cv("3").is_identity());
    }

    #[test]
    fn eval_examples() {
        let one = cv("0").eval_numeric(0.3);
        assert!((one - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let minus = cv("1/2").eval_numeric(0.7);
        assert!((minus - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        let i = cv("theta").eval_numeric(0.25);
        assert!((i - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "1/3", "theta", "-theta", "1/3+1/2*theta", "1/4-2/3*theta", "2*theta"] {
            assert_eq!(format!("{}", cv(s)), s);
        }
        assert_eq!(format!("{}", cv("5/4")), "1/4");
        assert_eq!(format!("{}", cv("-1/3")), "2/3");
    }

    #[test]
    fn parse_errors_carry_columns() {
        match "1/0".parse::<CircleValue>() {
            Err(CircleError::Parse { column, .. }) => assert_eq!(column, 4),
            other => panic!("{other:?}"),
        }
        assert!("1/2+".parse::<CircleValue>().is_err());
        assert!("theta+phi".parse::<CircleValue>().is_err());
        assert!("".parse::<CircleValue>().is_err());
        assert!("1/2 3".parse::<CircleValue>().is_err());
    }

    #[test]
    fn pow_scales_exponent() {
        assert_eq!(cv("1/3").pow(3), cv("0"));
        assert_eq!(cv("1/4+theta").pow(-2), cv("1/2-2*theta"));
        assert_eq!(cv("theta").pow(0).theta_id(), None);
    }
}
