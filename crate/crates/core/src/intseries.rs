//! Checked `i128` mirror of the series arithmetic, used to speed up
//! characteristic polynomials of integral series matrices.
//!
//! Leads, precisions and normalization follow `TruncatedSeries` exactly, so a
//! successful run returns the same values as the rational computation. Any
//! overflow or inexact division returns `None` and the caller falls back.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::linalg::SeriesMatrix;
use crate::series::TruncatedSeries;

#[derive(Debug, Clone)]
struct IntSeries {
    lead: i64,
    coeffs: Vec<i128>,
    precision: i64,
}

impl IntSeries {
    fn from_dense(lead: i64, mut coeffs: Vec<i128>, precision: i64) -> Self {
        match coeffs.iter().position(|&c| c != 0) {
            None => Self {
                lead: precision,
                coeffs: Vec::new(),
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

    fn from_series(s: &TruncatedSeries) -> Option<Self> {
        let precision = s.precision();
        let lead = s.lead_exp();
        let mut coeffs = vec![0i128; (precision - lead).max(0) as usize];
        for (e, c) in s.terms() {
            if !c.is_integer() {
                return None;
            }
            coeffs[(e - lead) as usize] = c.to_integer().to_i128()?;
        }
        Some(Self::from_dense(lead, coeffs, precision))
    }

    fn to_series(&self) -> TruncatedSeries {
        let pairs = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, &c)| (self.lead + i as i64, BigRational::from_integer(BigInt::from(c))));
        TruncatedSeries::new(pairs, self.precision).expect("exponents below precision")
    }

    fn add(&self, other: &Self) -> Option<Self> {
        let precision = self.precision.min(other.precision);
        let lead = self.lead.min(other.lead).min(precision);
        let mut coeffs = vec![0i128; (precision - lead) as usize];
        for s in [self, other] {
            for (i, &c) in s.coeffs.iter().enumerate() {
                let e = s.lead + i as i64;
                if e >= precision {
                    break;
                }
                let slot = &mut coeffs[(e - lead) as usize];
                *slot = slot.checked_add(c)?;
            }
        }
        Some(Self::from_dense(lead, coeffs, precision))
    }

    /// `sum_k a_k * b_k`, accumulated in one buffer.
    fn dot<'a>(pairs: impl Iterator<Item = (&'a IntSeries, &'a IntSeries)> + Clone) -> Option<Self> {
        let precision = pairs
            .clone()
            .map(|(a, b)| (a.precision + b.lead).min(b.precision + a.lead))
            .min()?;
        let lead = pairs.clone().map(|(a, b)| a.lead + b.lead).min()?.min(precision);
        let len = (precision - lead) as usize;
        let mut coeffs = vec![0i128; len];
        for (a, b) in pairs {
            let offset = (a.lead + b.lead - lead) as usize;
            if offset >= len {
                continue;
            }
            let room = len - offset;
            for (i, &x) in a.coeffs.iter().enumerate().take(room) {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.coeffs.iter().enumerate().take(room - i) {
                    if y == 0 {
                        continue;
                    }
                    let slot = &mut coeffs[offset + i + j];
                    *slot = slot.checked_add(x.checked_mul(y)?)?;
                }
            }
        }
        Some(Self::from_dense(lead, coeffs, precision))
    }

    /// Exact division by `-k`; `None` if some coefficient is not divisible.
    fn div_neg(&self, k: i128) -> Option<Self> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs {
            if c % k != 0 {
                return None;
            }
            coeffs.push(-(c / k));
        }
        Some(Self {
            lead: self.lead,
            coeffs,
            precision: self.precision,
        })
    }
}

fn sum(items: &[IntSeries]) -> Option<IntSeries> {
    let (first, rest) = items.split_first()?;
    rest.iter().try_fold(first.clone(), |acc, x| acc.add(x))
}

/// The trace recurrence of `charpoly_coeffs` in checked integer arithmetic.
pub(crate) fn charpoly_integral(m: &SeriesMatrix) -> Option<Vec<TruncatedSeries>> {
    let n = m.size();
    let base: Vec<IntSeries> = m.entries().iter().map(IntSeries::from_series).collect::<Option<_>>()?;
    let mut mk = base.clone();
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let diag: Vec<IntSeries> = (0..n).map(|i| mk[i * n + i].clone()).collect();
        let c = sum(&diag)?.div_neg(k as i128)?;
        if k < n {
            for i in 0..n {
                let idx = i * n + i;
                mk[idx] = mk[idx].add(&c)?;
            }
            let mut next = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    let pairs = (0..n).map(|l| (&base[i * n + l], &mk[l * n + j]));
                    next.push(IntSeries::dot(pairs)?);
                }
            }
            mk = next;
        }
        out.push(c.to_series());
    }
    Some(out)
}
