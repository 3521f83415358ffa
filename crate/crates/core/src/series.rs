//! Truncated Laurent series over the rationals.
//!
//! A [`TruncatedSeries`] stores `sum_{k=lead}^{precision-1} c_k z^k + O(z^precision)`
//! densely. Every operation propagates precision pessimistically, so a
//! coefficient that is reported is always exact.
//!
//! Invariants:
//! - `lead <= precision` and `coeffs.len() == precision - lead`
//! - when `lead < precision`, `coeffs[0]` is nonzero (leading zeros are stripped,
//!   so `lead` is the valuation of a nonzero series)
//! - the all-unknown zero series `O(z^N)` has `lead == precision == N`

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Valuation of a truncated series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Valuation {
    /// The coefficient at `z^k` is known and nonzero, all lower ones vanish.
    Exact(i64),
    /// Every known coefficient vanishes; the valuation is at least `N`.
    AtLeast(i64),
}

impl Valuation {
    /// The best lower bound this valuation certifies.
    pub fn lower_bound(self) -> i64 {
        match self {
            Valuation::Exact(k) | Valuation::AtLeast(k) => k,
        }
    }

    /// True if this valuation certifies `nu >= bound`.
    pub fn certifies_at_least(self, bound: i64) -> bool {
        self.lower_bound() >= bound
    }

    pub fn exact(self) -> Option<i64> {
        match self {
            Valuation::Exact(k) => Some(k),
            Valuation::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(k) => write!(f, "{k}"),
            Valuation::AtLeast(n) => write!(f, ">={n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    lead: i64,
    coeffs: Vec<BigRational>,
    precision: i64,
}

impl TruncatedSeries {
    /// Builds a series from `(exponent, coefficient)` pairs. Repeated exponents
    /// are summed.
    pub fn new<I>(pairs: I, precision: i64) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let pairs: Vec<_> = pairs.into_iter().collect();
        if let Some(&(exponent, _)) = pairs.iter().find(|(e, _)| *e >= precision) {
            return Err(Error::ExponentOutOfRange {
                exponent,
                precision,
            });
        }
        let lead = pairs.iter().map(|(e, _)| *e).min().unwrap_or(precision);
        let mut coeffs = vec![BigRational::zero(); (precision - lead) as usize];
        for (e, c) in pairs {
            coeffs[(e - lead) as usize] += c;
        }
        Ok(Self::from_dense(lead, coeffs, precision))
    }

    /// The series `O(z^precision)`.
    pub fn zero(precision: i64) -> Self {
        Self {
            lead: precision,
            coeffs: Vec::new(),
            precision,
        }
    }

    pub fn constant(c: BigRational, precision: i64) -> Self {
        Self::monomial(c, 0, precision)
    }

    /// `c * z^exponent + O(z^precision)`; vanishes if `exponent >= precision`.
    pub fn monomial(c: BigRational, exponent: i64, precision: i64) -> Self {
        if exponent >= precision {
            return Self::zero(precision);
        }
        let mut coeffs = vec![BigRational::zero(); (precision - exponent) as usize];
        coeffs[0] = c;
        Self::from_dense(exponent, coeffs, precision)
    }

    pub fn from_integer(c: i64, precision: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)), precision)
    }

    fn from_dense(lead: i64, mut coeffs: Vec<BigRational>, precision: i64) -> Self {
        debug_assert_eq!(coeffs.len() as i64, precision - lead);
        match coeffs.iter().position(|c| !c.is_zero()) {
            None => Self::zero(precision),
            Some(0) => Self {
                lead,
                coeffs,
                precision,
            },
            Some(skip) => {
                coeffs.drain(..skip);
                Self {
                    lead: lead + skip as i64,
                    coeffs,
                    precision,
                }
            }
        }
    }

    /// Lowest possibly-nonzero exponent.
    pub fn lead_exp(&self) -> i64 {
        self.lead
    }

    /// Exponent of the first unknown term.
    pub fn precision(&self) -> i64 {
        self.precision
    }

    /// True when every known coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient at `z^k`, or `None` if it lies beyond the precision.
    pub fn coeff(&self, k: i64) -> Option<BigRational> {
        if k >= self.precision {
            None
        } else if k < self.lead {
            Some(BigRational::zero())
        } else {
            Some(self.coeffs[(k - self.lead) as usize].clone())
        }
    }

    /// Known nonzero terms as `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.lead + i as i64, c))
    }

    pub fn valuation(&self) -> Valuation {
        if self.is_zero() {
            Valuation::AtLeast(self.precision)
        } else {
            Valuation::Exact(self.lead)
        }
    }

    /// Drops all terms at or above `precision` (no-op if already coarser).
    pub fn truncate(&self, precision: i64) -> Self {
        if precision >= self.precision {
            return self.clone();
        }
        if precision <= self.lead {
            return Self::zero(precision);
        }
        let keep = (precision - self.lead) as usize;
        Self::from_dense(self.lead, self.coeffs[..keep].to_vec(), precision)
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            lead: self.lead + k,
            coeffs: self.coeffs.clone(),
            precision: self.precision + k,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            // 0 * O(z^N) is still only known below N.
            return Self::zero(self.precision);
        }
        Self {
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            precision: self.precision,
        }
    }

    /// True when both series agree on every exponent known to both.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let top = self.precision.min(other.precision);
        let bottom = self.lead.min(other.lead);
        (bottom..top).all(|k| self.coeff(k) == other.coeff(k))
    }

    fn add_impl(&self, other: &Self, negate_other: bool) -> Self {
        let precision = self.precision.min(other.precision);
        let lead = self.lead.min(other.lead).min(precision);
        let mut coeffs = vec![BigRational::zero(); (precision - lead) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = self.lead + i as i64;
            if e >= precision {
                break;
            }
            coeffs[(e - lead) as usize] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let e = other.lead + i as i64;
            if e >= precision {
                break;
            }
            if negate_other {
                coeffs[(e - lead) as usize] -= c;
            } else {
                coeffs[(e - lead) as usize] += c;
            }
        }
        Self::from_dense(lead, coeffs, precision)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let precision = (self.precision + other.lead).min(other.precision + self.lead);
        let lead = self.lead + other.lead;
        if lead >= precision {
            return Self::zero(precision);
        }
        let len = (precision - lead) as usize;
        let mut coeffs = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        Self::from_dense(lead, coeffs, precision)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        self.add_impl(rhs, false)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        self.add_impl(rhs, true)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        self.mul_impl(rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            precision: self.precision,
        }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let (sign, abs) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = e == 0 || !abs.is_one();
            match (show_coeff, e) {
                (_, 0) => write!(f, "{abs}")?,
                (true, 1) => write!(f, "{abs}*z")?,
                (true, _) => write!(f, "{abs}*z^{e}")?,
                (false, 1) => write!(f, "z")?,
                (false, _) => write!(f, "z^{e}")?,
            }
        }
        if first {
            write!(f, "O(z^{})", self.precision)
        } else {
            write!(f, " + O(z^{})", self.precision)
        }
    }
}
