//! Square matrices over the rationals and over truncated Laurent series.
//!
//! Ranks use Bareiss fraction-free elimination on rows cleared of
//! denominators; null spaces use reduced row echelon form over the rationals.
//! Characteristic polynomial coefficients use the trace recurrence, which only
//! divides by the integers `1..=m` and therefore works over the series ring.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::series::TruncatedSeries;

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    size: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zero(size: usize) -> Self {
        Self {
            size,
            data: vec![BigRational::zero(); size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zero(size);
        for i in 0..size {
            m.data[i * size + i] = BigRational::one();
        }
        m
    }

    /// The matrix unit `E_{ij}` (zero-based indices).
    pub fn unit(size: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(size);
        m.data[i * size + j] = BigRational::one();
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let size = rows.len();
        let mut data = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(Error::SizeMismatch {
                    left: size,
                    right: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self { size, data })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    /// Builds a matrix from a row-major vector of `size * size` entries.
    pub fn from_flat(size: usize, data: Vec<BigRational>) -> Result<Self> {
        if data.len() != size * size {
            return Err(Error::SizeMismatch {
                left: size * size,
                right: data.len(),
            });
        }
        Ok(Self { size, data })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigRational) {
        self.data[i * self.size + j] = value;
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[BigRational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.size == other.size {
            Ok(())
        } else {
            Err(Error::SizeMismatch {
                left: self.size,
                right: other.size,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        Ok(Self {
            size: self.size,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        Ok(Self {
            size: self.size,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            size: self.size,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let n = self.size;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn transpose(&self) -> Self {
        let n = self.size;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn trace(&self) -> BigRational {
        (0..self.size).map(|i| self.get(i, i).clone()).sum()
    }

    /// `tr(self * other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Result<BigRational> {
        self.check_size(other)?;
        let n = self.size;
        let mut acc = BigRational::zero();
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if !a.is_zero() {
                    acc += a * other.get(k, i);
                }
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::identity(self.size);
        for _ in 0..k {
            out = out.mul(self).expect("square powers");
        }
        out
    }

    /// Exact rank via fraction-free elimination.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<BigRational>> = self.data.chunks(self.size.max(1)).map(|r| r.to_vec()).collect();
        if self.size == 0 {
            return 0;
        }
        rank_of_rows(&rows)
    }

    /// Inverse by Gauss-Jordan elimination, or `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.size;
        let mut aug: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row = self.data[i * n..(i + 1) * n].to_vec();
                row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
            aug.swap(col, pivot);
            let inv = aug[col][col].recip();
            for x in aug[col].iter_mut() {
                *x *= &inv;
            }
            for r in 0..n {
                if r != col && !aug[r][col].is_zero() {
                    let factor = aug[r][col].clone();
                    let pivot_row = aug[col].clone();
                    for (x, p) in aug[r].iter_mut().zip(&pivot_row) {
                        *x -= &factor * p;
                    }
                }
            }
        }
        let data = aug.into_iter().flat_map(|row| row.into_iter().skip(n)).collect();
        Some(Self { size: n, data })
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.size {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.size).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Scales a rational row to a primitive integer row.
fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

/// Rank of an arbitrary rectangular rational matrix given by rows.
pub fn rank_of_rows(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| clear_denominators(r)).collect();
    bareiss_rank(&mut m)
}

/// Bareiss elimination in place; returns the rank. Every intermediate entry
/// is a minor of the input, so all divisions are exact.
fn bareiss_rank(m: &mut [Vec<BigInt>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Basis of `{x : A x = 0}` for `A` given by rows over `ncols` unknowns.
///
/// Basis vectors are read off the reduced row echelon form, one per free
/// column, with a 1 in that column.
pub fn nullspace(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let mut a: Vec<Vec<BigRational>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][col].is_zero() {
                let factor = a[i][col].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &factor * y;
                    }
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

/// Jordan type of a nilpotent matrix, read off the rank sequence of its
/// powers: the dual partition has parts `rank(N^{k-1}) - rank(N^k)`.
pub fn jordan_type(n: &RationalMatrix) -> Result<Partition> {
    let m = n.size();
    let mut ranks = vec![m];
    let mut power = RationalMatrix::identity(m);
    for k in 1..=m {
        power = power.mul(n)?;
        let r = power.rank();
        if r > 0 && r == ranks[k - 1] {
            return Err(Error::NotNilpotent { power: k - 1, rank: r });
        }
        ranks.push(r);
        if r == 0 {
            break;
        }
    }
    if *ranks.last().unwrap() != 0 {
        return Err(Error::NotNilpotent {
            power: m,
            rank: *ranks.last().unwrap(),
        });
    }
    let dual: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).filter(|&d| d > 0).collect();
    Ok(Partition::new(dual)?.dual())
}

/// Square matrix of truncated Laurent series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesMatrix {
    size: usize,
    data: Vec<TruncatedSeries>,
}

#[derive(Debug, Clone)]
pub enum MatOperand<'a> {
    Matrix(&'a SeriesMatrix),
    Scalar(&'a TruncatedSeries),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatOp {
    Add,
    Mul,
    Scale,
}

impl SeriesMatrix {
    pub fn from_entries(size: usize, data: Vec<TruncatedSeries>) -> Result<Self> {
        if data.len() != size * size {
            return Err(Error::SizeMismatch {
                left: size * size,
                right: data.len(),
            });
        }
        Ok(Self { size, data })
    }

    /// Constant matrix `m + O(z^precision)`.
    pub fn from_rational(m: &RationalMatrix, precision: i64) -> Self {
        Self {
            size: m.size(),
            data: m
                .entries()
                .iter()
                .map(|c| TruncatedSeries::constant(c.clone(), precision))
                .collect(),
        }
    }

    pub fn zero(size: usize, precision: i64) -> Self {
        Self {
            size,
            data: vec![TruncatedSeries::zero(precision); size * size],
        }
    }

    pub fn identity(size: usize, precision: i64) -> Self {
        Self::from_rational(&RationalMatrix::identity(size), precision)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &TruncatedSeries {
        &self.data[i * self.size + j]
    }

    pub fn entries(&self) -> &[TruncatedSeries] {
        &self.data
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.size == other.size {
            Ok(())
        } else {
            Err(Error::SizeMismatch {
                left: self.size,
                right: other.size,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        Ok(Self {
            size: self.size,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        Ok(Self {
            size: self.size,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            size: self.size,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let n = self.size;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc: Option<TruncatedSeries> = None;
                for k in 0..n {
                    let term = self.get(i, k) * other.get(k, j);
                    acc = Some(match acc {
                        None => term,
                        Some(a) => &a + &term,
                    });
                }
                data.push(acc.unwrap_or_else(|| TruncatedSeries::zero(0)));
            }
        }
        Ok(Self { size: n, data })
    }

    /// Every entry multiplied by the series `s`.
    pub fn scale(&self, s: &TruncatedSeries) -> Self {
        Self {
            size: self.size,
            data: self.data.iter().map(|a| s * a).collect(),
        }
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            size: self.size,
            data: self.data.iter().map(|a| a.shift(k)).collect(),
        }
    }

    pub fn truncate(&self, precision: i64) -> Self {
        Self {
            size: self.size,
            data: self.data.iter().map(|a| a.truncate(precision)).collect(),
        }
    }

    /// Adds `s` to every diagonal entry.
    pub fn add_scalar(&self, s: &TruncatedSeries) -> Self {
        let mut out = self.clone();
        for i in 0..self.size {
            let idx = i * self.size + i;
            out.data[idx] = &out.data[idx] + s;
        }
        out
    }

    pub fn trace(&self) -> TruncatedSeries {
        let mut diag = (0..self.size).map(|i| self.get(i, i));
        let Some(first) = diag.next() else {
            return TruncatedSeries::zero(0);
        };
        diag.fold(first.clone(), |acc, x| &acc + x)
    }

    /// Smallest precision among the entries.
    pub fn precision(&self) -> i64 {
        self.data.iter().map(TruncatedSeries::precision).min().unwrap_or(i64::MAX)
    }

    /// Smallest leading exponent among the entries.
    pub fn lead_exp(&self) -> i64 {
        self.data.iter().map(TruncatedSeries::lead_exp).min().unwrap_or(i64::MAX)
    }

    /// Coefficient matrix at `z^k`, if known for every entry.
    pub fn coeff_matrix(&self, k: i64) -> Option<RationalMatrix> {
        let data = self.data.iter().map(|s| s.coeff(k)).collect::<Option<Vec<_>>>()?;
        RationalMatrix::from_flat(self.size, data).ok()
    }
}

/// Dispatches `add`, `mul` and `scale` on series matrices.
pub fn mat_arith(op: MatOp, a: &SeriesMatrix, b: MatOperand<'_>) -> Result<SeriesMatrix> {
    match (op, b) {
        (MatOp::Add, MatOperand::Matrix(b)) => a.add(b),
        (MatOp::Mul, MatOperand::Matrix(b)) => a.mul(b),
        (MatOp::Scale, MatOperand::Scalar(s)) => Ok(a.scale(s)),
        (op, _) => Err(Error::InvalidParameter(format!("operand kind does not fit {op:?}"))),
    }
}

/// Coefficients `[F_1, ..., F_m]` of `det(T*Id - M) = T^m + F_1 T^{m-1} + ... + F_m`.
///
/// Trace recurrence: `M_1 = M`, `c_k = -tr(M_k)/k`, `M_{k+1} = M (M_k + c_k Id)`.
pub fn charpoly_coeffs(m: &SeriesMatrix) -> Result<Vec<TruncatedSeries>> {
    let size = m.size();
    if size == 0 {
        return Err(Error::InvalidParameter("characteristic polynomial of a 0x0 matrix".into()));
    }
    if let Some(coeffs) = crate::intseries::charpoly_integral(m) {
        return Ok(coeffs);
    }
    Ok(charpoly_rational(m))
}

/// The trace recurrence over the rationals, with no integral shortcut.
pub fn charpoly_rational(m: &SeriesMatrix) -> Vec<TruncatedSeries> {
    let size = m.size();
    let mut coeffs = Vec::with_capacity(size);
    let mut mk = m.clone();
    for k in 1..=size {
        let c = mk.trace().scale(&BigRational::new(BigInt::from(-1), BigInt::from(k)));
        if k < size {
            mk = m.mul(&mk.add_scalar(&c)).expect("square matrices of equal size");
        }
        coeffs.push(c);
    }
    coeffs
}

/// `tr(X * Y)` with series precision rules.
pub fn trace_pairing(x: &SeriesMatrix, y: &SeriesMatrix) -> Result<TruncatedSeries> {
    x.check_size(y)?;
    let n = x.size();
    let mut acc: Option<TruncatedSeries> = None;
    for i in 0..n {
        for k in 0..n {
            let term = x.get(i, k) * y.get(k, i);
            acc = Some(match acc {
                None => term,
                Some(a) => &a + &term,
            });
        }
    }
    Ok(acc.unwrap_or_else(|| TruncatedSeries::zero(0)))
}

/// True if `N^size` vanishes.
pub fn is_nilpotent(n: &RationalMatrix) -> bool {
    n.pow(n.size()).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Valuation;

    fn s(pairs: &[(i64, i64)], precision: i64) -> TruncatedSeries {
        TruncatedSeries::new(pairs.iter().map(|&(e, c)| (e, rat(c))), precision).unwrap()
    }

    fn smat(size: usize, entries: Vec<TruncatedSeries>) -> SeriesMatrix {
        SeriesMatrix::from_entries(size, entries).unwrap()
    }

    #[test]
    fn arith_examples() {
        let a = smat(2, vec![s(&[(0, 1), (1, 2)], 8), s(&[(-1, 3)], 8), s(&[], 8), s(&[(2, 5)], 8)]);
        let sum = mat_arith(MatOp::Add, &a, MatOperand::Matrix(&a.neg())).unwrap();
        assert!(sum.entries().iter().all(TruncatedSeries::is_zero));
        assert_eq!(sum.precision(), 8);

        let id = SeriesMatrix::identity(2, 8);
        let prod = mat_arith(MatOp::Mul, &id, MatOperand::Matrix(&a)).unwrap();
        assert!(prod.entries().iter().zip(a.entries()).all(|(x, y)| x.agrees_with(y)));
        assert_eq!(prod.get(0, 1).precision(), 7);

        let z = s(&[(1, 1)], 20);
        let scaled = mat_arith(MatOp::Scale, &a, MatOperand::Scalar(&z)).unwrap();
        for (x, y) in scaled.entries().iter().zip(a.entries()) {
            if !y.is_zero() {
                assert_eq!(x.lead_exp(), y.lead_exp() + 1);
            }
        }
        assert_eq!(scaled, a.shift(1));
    }

    #[test]
    fn arith_size_mismatch() {
        let a = SeriesMatrix::identity(2, 4);
        let b = SeriesMatrix::identity(3, 4);
        assert!(matches!(a.add(&b), Err(Error::SizeMismatch { left: 2, right: 3 })));
        assert!(trace_pairing(&a, &b).is_err());
    }

    #[test]
    fn charpoly_examples() {
        let nil = SeriesMatrix::from_rational(
            &RationalMatrix::from_ints(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]).unwrap(),
            10,
        );
        assert!(charpoly_coeffs(&nil).unwrap().iter().all(TruncatedSeries::is_zero));

        let m = smat(2, vec![s(&[], 10), s(&[(0, 1)], 10), s(&[(1, 1)], 10), s(&[], 10)]);
        let f = charpoly_coeffs(&m).unwrap();
        assert!(f[0].is_zero());
        assert_eq!(f[1], s(&[(1, -1)], 10));

        let f = charpoly_coeffs(&SeriesMatrix::identity(2, 10)).unwrap();
        assert_eq!(f[0], s(&[(0, -2)], 10));
        assert_eq!(f[1], s(&[(0, 1)], 10));
    }

    #[test]
    fn integral_fast_path_matches_rational() {
        use rand::Rng;
        let mut rng = crate::liealg::trial_rng(11, 0);
        for trial in 0..40 {
            let size = 1 + trial % 5;
            let lead = -(trial as i64 % 2);
            let entries = (0..size * size)
                .map(|_| {
                    let pairs: Vec<(i64, i64)> = (lead..6).map(|e| (e, rng.gen_range(-9..=9))).collect();
                    s(&pairs, 7 + (trial as i64 % 3))
                })
                .collect();
            let m = smat(size, entries);
            let fast = crate::intseries::charpoly_integral(&m).expect("small integers");
            assert_eq!(fast, charpoly_rational(&m), "trial {trial}");
        }
        let half = BigRational::new(1.into(), 2.into());
        let m = SeriesMatrix::from_rational(&RationalMatrix::identity(2).scale(&half), 5);
        assert!(crate::intseries::charpoly_integral(&m).is_none());
        assert_eq!(charpoly_coeffs(&m).unwrap(), charpoly_rational(&m));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RationalMatrix::zero(3).rank(), 0);
        assert_eq!(RationalMatrix::identity(4).rank(), 4);
        assert_eq!(RationalMatrix::from_ints(&[&[1, 2], &[2, 4]]).unwrap().rank(), 1);
        let frac = RationalMatrix::from_rows(vec![
            vec![BigRational::new(1.into(), 2.into()), rat(1)],
            vec![rat(1), rat(2)],
        ])
        .unwrap();
        assert_eq!(frac.rank(), 1);
    }

    #[test]
    fn jordan_type_examples() {
        let block = RationalMatrix::from_ints(&[&[0, 1], &[0, 0]]).unwrap();
        assert_eq!(jordan_type(&block).unwrap().to_string(), "2");
        assert_eq!(jordan_type(&RationalMatrix::zero(3)).unwrap().to_string(), "1,1,1");
    }

    #[test]
    fn jordan_type_rejects_non_nilpotent() {
        let m = RationalMatrix::from_ints(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(jordan_type(&m), Err(Error::NotNilpotent { power: 2, rank: 1 }));
        assert!(matches!(
            jordan_type(&RationalMatrix::identity(2)),
            Err(Error::NotNilpotent { power: 0, rank: 2 })
        ));
    }

    #[test]
    fn trace_pairing_examples() {
        let id = SeriesMatrix::identity(2, 8);
        assert_eq!(trace_pairing(&id, &id).unwrap(), s(&[(0, 2)], 8));

        let upper = SeriesMatrix::from_rational(&RationalMatrix::from_ints(&[&[1, 2], &[0, 3]]).unwrap(), 8);
        let strict = SeriesMatrix::from_rational(&RationalMatrix::unit(2, 0, 1), 8);
        assert!(trace_pairing(&strict, &upper).unwrap().is_zero());

        let x = SeriesMatrix::from_rational(&RationalMatrix::unit(2, 0, 1), 8).shift(-1);
        let y = SeriesMatrix::from_rational(&RationalMatrix::unit(2, 1, 0), 8).shift(1);
        let t = trace_pairing(&x, &y).unwrap();
        assert_eq!(t.valuation(), Valuation::Exact(0));
        assert_eq!(t.coeff(0), Some(rat(1)));
    }

    #[test]
    fn nullspace_of_single_equation() {
        // x + y + z = 0
        let basis = nullspace(&[vec![rat(1), rat(1), rat(1)]], 3);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            let sum: BigRational = v.iter().cloned().sum();
            assert!(sum.is_zero());
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = RationalMatrix::from_ints(&[&[2, 1, 0], &[1, 1, 0], &[0, 3, 1]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RationalMatrix::identity(3));
        assert!(RationalMatrix::from_ints(&[&[1, 2], &[2, 4]]).unwrap().inverse().is_none());
    }
}
