//! Classical matrix Lie algebras `gl_m`, `sl_m`, `sp_2n`, `so_m`.
//!
//! Conventions: `sp_2n` preserves `J = [[0, I_n], [-I_n, 0]]`, `so_m` preserves
//! the antidiagonal identity. In both cases the coordinate subspace
//! `span(e_1, ..., e_d)` is isotropic for `d` up to the maximal isotropic
//! dimension, so isotropic flags are given by their dimensions alone.
//!
//! Subalgebras are computed as null spaces of linear constraints on the `m^2`
//! matrix entries, so every basis here comes out of one exact solve.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{jordan_type, nullspace, rank_of_rows, rat, trace_pairing, RationalMatrix, SeriesMatrix};
use crate::partition::{FormKind, Partition};
use crate::report::{CertReport, Params, TrialOutcome};
use crate::series::{TruncatedSeries, Valuation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Gl,
    Sl,
    Sp,
    So,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Gl => "gl",
            Family::Sl => "sl",
            Family::Sp => "sp",
            Family::So => "so",
        })
    }
}

/// A classical algebra together with its matrix size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraKind {
    family: Family,
    size: usize,
}

impl AlgebraKind {
    pub fn new(family: Family, size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidParameter("matrix size must be positive".into()));
        }
        if family == Family::Sp && !size.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!("sp needs an even size, got {size}")));
        }
        Ok(Self { family, size })
    }

    pub fn gl(m: usize) -> Self {
        Self::new(Family::Gl, m).expect("valid gl size")
    }

    pub fn sl(m: usize) -> Self {
        Self::new(Family::Sl, m).expect("valid sl size")
    }

    /// `sp_{2n}`.
    pub fn sp(n: usize) -> Self {
        Self::new(Family::Sp, 2 * n).expect("valid sp size")
    }

    pub fn so(m: usize) -> Self {
        Self::new(Family::So, m).expect("valid so size")
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn dim(&self) -> usize {
        let m = self.size;
        match self.family {
            Family::Gl => m * m,
            Family::Sl => m * m - 1,
            Family::Sp => m * (m + 1) / 2,
            Family::So => m * (m - 1) / 2,
        }
    }

    pub fn rank(&self) -> usize {
        match self.family {
            Family::Gl => self.size,
            Family::Sl => self.size - 1,
            Family::Sp | Family::So => self.size / 2,
        }
    }

    /// Largest dimension of an isotropic subspace (`None` without a form).
    pub fn max_isotropic(&self) -> Option<usize> {
        match self.family {
            Family::Sp | Family::So => Some(self.size / 2),
            Family::Gl | Family::Sl => None,
        }
    }

    /// Which partition admissibility rule governs nilpotent orbits here.
    pub fn form_kind(&self) -> FormKind {
        match self.family {
            Family::Gl | Family::Sl => FormKind::Gl,
            Family::Sp => FormKind::Sp,
            Family::So => FormKind::So,
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.size)
    }
}

/// The invariant bilinear form of `sp`/`so`; `None` for `gl`/`sl`.
pub fn standard_form(kind: AlgebraKind) -> Option<RationalMatrix> {
    let m = kind.size();
    match kind.family() {
        Family::Sp => {
            let n = m / 2;
            let mut j = RationalMatrix::zero(m);
            for i in 0..n {
                j.set(i, n + i, rat(1));
                j.set(n + i, i, rat(-1));
            }
            Some(j)
        }
        Family::So => {
            let mut j = RationalMatrix::zero(m);
            for i in 0..m {
                j.set(i, m - 1 - i, rat(1));
            }
            Some(j)
        }
        Family::Gl | Family::Sl => None,
    }
}

/// Membership: trivial for gl, trace zero for sl, `X^T J + J X = 0` otherwise.
pub fn contains(kind: AlgebraKind, x: &RationalMatrix) -> bool {
    if x.size() != kind.size() {
        return false;
    }
    match kind.family() {
        Family::Gl => true,
        Family::Sl => x.trace().is_zero(),
        Family::Sp | Family::So => {
            let j = standard_form(kind).expect("form exists");
            let lhs = x.transpose().mul(&j).and_then(|a| a.add(&j.mul(x).expect("same size")));
            lhs.map(|m| m.is_zero()).unwrap_or(false)
        }
    }
}

fn zero_row(m: usize) -> Vec<BigRational> {
    vec![BigRational::zero(); m * m]
}

/// Linear functionals on the row-major entries of `X` cutting out the algebra.
fn membership_constraints(kind: AlgebraKind) -> Vec<Vec<BigRational>> {
    let m = kind.size();
    match kind.family() {
        Family::Gl => Vec::new(),
        Family::Sl => {
            let mut row = zero_row(m);
            for i in 0..m {
                row[i * m + i] = BigRational::one();
            }
            vec![row]
        }
        Family::Sp | Family::So => {
            let j = standard_form(kind).expect("form exists");
            let mut rows = Vec::new();
            // (X^T J + J X)_{ab} = sum_c X_{ca} J_{cb} + sum_c J_{ac} X_{cb}
            for a in 0..m {
                for b in a..m {
                    let mut row = zero_row(m);
                    for c in 0..m {
                        row[c * m + a] += j.get(c, b);
                        row[c * m + b] += j.get(a, c);
                    }
                    rows.push(row);
                }
            }
            rows
        }
    }
}

fn matrices_from_vectors(m: usize, vectors: Vec<Vec<BigRational>>) -> Vec<RationalMatrix> {
    vectors
        .into_iter()
        .map(|v| RationalMatrix::from_flat(m, v).expect("m*m entries"))
        .collect()
}

fn solve_in_algebra(kind: AlgebraKind, mut extra: Vec<Vec<BigRational>>) -> Vec<RationalMatrix> {
    let m = kind.size();
    extra.extend(membership_constraints(kind));
    matrices_from_vectors(m, nullspace(&extra, m * m))
}

/// A basis of the ambient algebra.
pub fn ambient_basis(kind: AlgebraKind) -> Vec<RationalMatrix> {
    solve_in_algebra(kind, Vec::new())
}

/// Flag data selecting a parabolic subalgebra.
///
/// For gl/sl this is a composition of `m` (block sizes of a standard flag);
/// for sp/so it is a strictly increasing list of isotropic dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlagSpec {
    kind: AlgebraKind,
    data: Vec<usize>,
}

impl FlagSpec {
    pub fn new(kind: AlgebraKind, data: Vec<usize>) -> Result<Self> {
        let flag = Self { kind, data };
        flag.validate()?;
        Ok(flag)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidFlag(format!("{self}: {msg}")));
        match self.kind.max_isotropic() {
            None => {
                if self.data.contains(&0) {
                    return bad("block sizes must be positive".into());
                }
                let sum: usize = self.data.iter().sum();
                if sum != self.kind.size() {
                    return bad(format!("block sizes sum to {sum}, not {}", self.kind.size()));
                }
            }
            Some(max) => {
                if self.data.first() == Some(&0) {
                    return bad("isotropic dimensions must be positive".into());
                }
                if self.data.windows(2).any(|w| w[0] >= w[1]) {
                    return bad("isotropic dimensions must increase strictly".into());
                }
                if let Some(&last) = self.data.last() {
                    if last > max {
                        return bad(format!("dimension {last} exceeds the maximal isotropic dimension {max}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// The full flag: a Borel subalgebra.
    pub fn full(kind: AlgebraKind) -> Self {
        let data = match kind.max_isotropic() {
            None => vec![1; kind.size()],
            Some(max) => (1..=max).collect(),
        };
        Self { kind, data }
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn data(&self) -> &[usize] {
        &self.data
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(self.kind)
    }

    /// Dimensions of the flag subspaces `span(e_1..e_d)` that must be stabilized.
    pub fn subspace_dims(&self) -> Vec<usize> {
        match self.kind.max_isotropic() {
            None => {
                let mut acc = 0;
                let mut dims = Vec::new();
                for &b in &self.data[..self.data.len().saturating_sub(1)] {
                    acc += b;
                    dims.push(acc);
                }
                dims
            }
            Some(_) => self.data.clone(),
        }
    }

    /// Every flag of the given algebra: all compositions for gl/sl, all
    /// subsets of `1..=max_isotropic` (including the empty flag) for sp/so.
    pub fn all(kind: AlgebraKind) -> Vec<FlagSpec> {
        match kind.max_isotropic() {
            None => compositions(kind.size())
                .into_iter()
                .map(|data| FlagSpec { kind, data })
                .collect(),
            Some(max) => (0u32..(1 << max))
                .map(|mask| FlagSpec {
                    kind,
                    data: (1..=max).filter(|d| mask & (1 << (d - 1)) != 0).collect(),
                })
                .collect(),
        }
    }
}

/// All compositions of `m` in lexicographic order.
pub fn compositions(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=m {
        for mut rest in compositions(m - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl fmt::Display for FlagSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<String> = self.data.iter().map(|d| d.to_string()).collect();
        match self.kind.family() {
            Family::Gl | Family::Sl => write!(f, "{}:{}", self.kind.family(), list.join(",")),
            Family::Sp | Family::So => write!(f, "{}:{}", self.kind, list.join(",")),
        }
    }
}

impl FromStr for FlagSpec {
    type Err = Error;

    /// Parses `gl:2,2`, `gl4:2,2`, `sl3:1,1,1`, `sp4:1,2`, `so5:1` or `sp4:`.
    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |token: &str| Error::Parse {
            what: "flag",
            token: token.to_string(),
        };
        let s = s.trim();
        let (head, tail) = s.split_once(':').ok_or_else(|| parse_err(s))?;
        let family = match head.get(..2) {
            Some("gl") => Family::Gl,
            Some("sl") => Family::Sl,
            Some("sp") => Family::Sp,
            Some("so") => Family::So,
            _ => return Err(parse_err(head)),
        };
        let mut data = Vec::new();
        if !tail.trim().is_empty() {
            for token in tail.split(',') {
                let token = token.trim();
                data.push(token.parse::<usize>().map_err(|_| parse_err(token))?);
            }
        }
        let size_str = &head[2..];
        let size = if size_str.is_empty() {
            match family {
                Family::Gl | Family::Sl => data.iter().sum(),
                Family::Sp | Family::So => return Err(parse_err(head)),
            }
        } else {
            size_str.parse::<usize>().map_err(|_| parse_err(head))?
        };
        let kind = AlgebraKind::new(family, size).map_err(|_| parse_err(head))?;
        FlagSpec::new(kind, data)
    }
}

/// A subalgebra of a classical algebra, given by a basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubalgebraBasis {
    kind: AlgebraKind,
    elements: Vec<RationalMatrix>,
}

impl SubalgebraBasis {
    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn elements(&self) -> &[RationalMatrix] {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    /// True if `x` lies in the span of the basis.
    pub fn spans(&self, x: &RationalMatrix) -> bool {
        let mut rows: Vec<Vec<BigRational>> = self.elements.iter().map(|e| e.entries().to_vec()).collect();
        let before = rank_of_rows(&rows);
        rows.push(x.entries().to_vec());
        rank_of_rows(&rows) == before
    }

    /// Random integer combination with coefficients in `[-bound, bound]`.
    pub fn random_element(&self, bound: i64, rng: &mut impl Rng) -> RationalMatrix {
        let mut acc = RationalMatrix::zero(self.kind.size());
        for e in &self.elements {
            let c = rng.gen_range(-bound..=bound);
            if c != 0 {
                acc = acc.add(&e.scale(&rat(c))).expect("same size");
            }
        }
        acc
    }
}

/// `{X in g : X F_i subset F_i}` for the flag subspaces `F_i`.
pub fn parabolic_basis(flag: &FlagSpec) -> SubalgebraBasis {
    let kind = flag.kind();
    let m = kind.size();
    let mut constraints = Vec::new();
    for d in flag.subspace_dims() {
        for r in d..m {
            for c in 0..d {
                let mut row = zero_row(m);
                row[r * m + c] = BigRational::one();
                constraints.push(row);
            }
        }
    }
    SubalgebraBasis {
        kind,
        elements: solve_in_algebra(kind, constraints),
    }
}

/// Trace-form orthogonal of a parabolic inside its ambient algebra, which is
/// its nilradical.
pub fn nilradical_basis(p: &SubalgebraBasis) -> SubalgebraBasis {
    let m = p.kind.size();
    // tr(XY) = sum_{i,k} X_{ik} Y_{ki}
    let constraints = p
        .elements
        .iter()
        .map(|y| {
            let mut row = zero_row(m);
            for i in 0..m {
                for k in 0..m {
                    row[i * m + k] = y.get(k, i).clone();
                }
            }
            row
        })
        .collect();
    SubalgebraBasis {
        kind: p.kind,
        elements: solve_in_algebra(p.kind, constraints),
    }
}

/// Block-diagonal upper Jordan blocks of sizes `m_1, ..., m_k`.
pub fn jordan_nilpotent(mu: &Partition) -> RationalMatrix {
    let m = mu.total();
    let mut out = RationalMatrix::zero(m);
    let mut start = 0;
    for &p in mu.parts() {
        for i in 0..p - 1 {
            out.set(start + i, start + i + 1, rat(1));
        }
        start += p;
    }
    out
}

/// Builder for a nilpotent in a form-preserving algebra, expressed in an
/// adapted basis whose vectors are recorded in standard coordinates.
struct AdaptedBasis {
    m: usize,
    /// Columns of the change of basis, in standard coordinates.
    vectors: Vec<Vec<BigRational>>,
    /// `action[j] = [(i, c)]` means `X b_j = sum c b_i`.
    action: Vec<Vec<(usize, BigRational)>>,
    next_pair: usize,
}

impl AdaptedBasis {
    fn new(m: usize) -> Self {
        Self {
            m,
            vectors: Vec::new(),
            action: Vec::new(),
            next_pair: 0,
        }
    }

    fn push(&mut self, v: Vec<BigRational>) -> usize {
        self.vectors.push(v);
        self.action.push(Vec::new());
        self.vectors.len() - 1
    }

    fn std(&self, i: usize) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.m];
        v[i] = BigRational::one();
        v
    }

    /// Takes the next hyperbolic pair `(e, f)` with `B(e, f) = 1`.
    fn take_pair(&mut self, partner: impl Fn(usize) -> usize) -> (Vec<BigRational>, Vec<BigRational>) {
        let i = self.next_pair;
        self.next_pair += 1;
        (self.std(i), self.std(partner(i)))
    }

    fn set(&mut self, from: usize, to: usize, c: i64) {
        self.action[from].push((to, rat(c)));
    }

    /// `l` hyperbolic pairs carrying `A` on the e's and `-A^T` on the f's,
    /// `A` the upper shift. Returns the e and f indices.
    fn shift_pairs(&mut self, l: usize, partner: &impl Fn(usize) -> usize) -> (Vec<usize>, Vec<usize>) {
        let mut es = Vec::new();
        let mut fs = Vec::new();
        for _ in 0..l {
            let (e, f) = self.take_pair(partner);
            es.push(self.push(e));
            fs.push(self.push(f));
        }
        for a in 1..l {
            self.set(es[a], es[a - 1], 1);
            self.set(fs[a - 1], fs[a], -1);
        }
        (es, fs)
    }

    fn finish(self) -> Result<RationalMatrix> {
        let m = self.m;
        let n_vec = self.vectors.len();
        if n_vec != m {
            return Err(Error::InvalidParameter(format!("adapted basis has {n_vec} vectors, need {m}")));
        }
        let mut p = RationalMatrix::zero(m);
        for (col, v) in self.vectors.iter().enumerate() {
            for (row, x) in v.iter().enumerate() {
                p.set(row, col, x.clone());
            }
        }
        let mut x_abs = RationalMatrix::zero(m);
        for (from, targets) in self.action.iter().enumerate() {
            for (to, c) in targets {
                x_abs.set(*to, from, c.clone());
            }
        }
        let inv = p
            .inverse()
            .ok_or_else(|| Error::InvalidParameter("adapted basis is singular".into()))?;
        p.mul(&x_abs)?.mul(&inv)
    }
}

/// A nilpotent of Jordan type `mu` inside `kind`.
///
/// sp: even parts become single blocks on their own symplectic subspace, equal
/// odd parts are paired on Lagrangian-dual blocks. so: odd parts become single
/// blocks on a nondegenerate subspace built around an anisotropic vector,
/// equal even parts are paired. The result is checked for membership and
/// Jordan type before it is returned.
pub fn classical_nilpotent(kind: AlgebraKind, mu: &Partition) -> Result<RationalMatrix> {
    let m = kind.size();
    if mu.total() != m || !mu.is_admissible(kind.form_kind()) {
        return Err(Error::Inadmissible {
            partition: mu.to_string(),
            kind: kind.to_string(),
        });
    }
    let x = match kind.family() {
        Family::Gl => jordan_nilpotent(mu),
        Family::Sl => jordan_nilpotent(mu),
        Family::Sp => {
            let n = m / 2;
            let partner = move |i: usize| n + i;
            let mut b = AdaptedBasis::new(m);
            let mut pending_odd: Option<usize> = None;
            for &part in mu.parts() {
                if part % 2 == 0 {
                    let l = part / 2;
                    let (es, fs) = b.shift_pairs(l, &partner);
                    // B = E_ll: X f_l = e_l closes the chain into one block.
                    b.set(fs[l - 1], es[l - 1], 1);
                } else if pending_odd.take().is_none() {
                    pending_odd = Some(part);
                } else {
                    b.shift_pairs(part, &partner);
                }
            }
            b.finish()?
        }
        Family::So => {
            let partner = move |i: usize| m - 1 - i;
            let mut b = AdaptedBasis::new(m);
            let odd: Vec<usize> = mu.parts().iter().copied().filter(|p| p % 2 == 1).collect();
            let mut anisotropic: Vec<(Vec<BigRational>, i64)> = Vec::new();
            let mut remaining = odd.len();
            if m % 2 == 1 {
                anisotropic.push((b.std(m / 2), 1));
                remaining -= 1;
            }
            for _ in 0..remaining / 2 {
                // u = p + q/2, u' = p - q/2 are orthogonal with B = 1 and -1.
                let (p, q) = b.take_pair(partner);
                let half = BigRational::new(1.into(), 2.into());
                let plus = p.iter().zip(&q).map(|(a, c)| a + c * &half).collect();
                let minus = p.iter().zip(&q).map(|(a, c)| a - c * &half).collect();
                anisotropic.push((plus, 1));
                anisotropic.push((minus, -1));
            }
            let mut pending_even: Option<usize> = None;
            let mut aniso = anisotropic.into_iter();
            for &part in mu.parts() {
                if part % 2 == 1 {
                    let l = part / 2;
                    let (es, fs) = b.shift_pairs(l, &partner);
                    let (u, a) = aniso.next().expect("one anisotropic vector per odd part");
                    let u = b.push(u);
                    if l > 0 {
                        b.set(fs[l - 1], u, 1);
                        b.set(u, es[l - 1], -a);
                    }
                } else if pending_even.take().is_none() {
                    pending_even = Some(part);
                } else {
                    b.shift_pairs(part, &partner);
                }
            }
            b.finish()?
        }
    };
    if !contains(kind, &x) {
        return Err(Error::InvalidParameter(format!("constructed nilpotent for {mu} left {kind}")));
    }
    let found = jordan_type(&x)?;
    if &found != mu {
        return Err(Error::InvalidParameter(format!("constructed nilpotent for {mu} has type {found}")));
    }
    Ok(x)
}

/// `dim {X in g : [X, e] = 0}` by an exact kernel computation.
pub fn centralizer_dim_oracle(kind: AlgebraKind, e: &RationalMatrix) -> Result<usize> {
    if !contains(kind, e) {
        return Err(Error::InvalidParameter(format!("element is not in {kind}")));
    }
    let m = kind.size();
    let mut rows = membership_constraints(kind);
    // (Xe - eX)_{ij} = sum_k X_{ik} e_{kj} - sum_k e_{ik} X_{kj}
    for i in 0..m {
        for j in 0..m {
            let mut row = zero_row(m);
            for k in 0..m {
                row[i * m + k] += e.get(k, j);
                row[k * m + j] -= e.get(i, k);
            }
            rows.push(row);
        }
    }
    Ok(m * m - rank_of_rows(&rows))
}

/// Deterministic generator for trial `trial` under master seed `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn random_int_matrix(m: usize, bound: i64, rng: &mut impl Rng) -> RationalMatrix {
    let data = (0..m * m).map(|_| rat(rng.gen_range(-bound..=bound))).collect();
    RationalMatrix::from_flat(m, data).expect("m*m entries")
}

/// `sum_k coeffs[k] z^(lead + k) + O(z^precision)`.
pub fn series_matrix_from_coeffs(
    size: usize,
    lead: i64,
    coeffs: &[RationalMatrix],
    precision: i64,
) -> Result<SeriesMatrix> {
    let mut entries = Vec::with_capacity(size * size);
    for idx in 0..size * size {
        let pairs = coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (lead + k as i64, c.entries()[idx].clone()))
            .filter(|(_, c)| !c.is_zero());
        entries.push(TruncatedSeries::new(pairs, precision)?);
    }
    SeriesMatrix::from_entries(size, entries)
}

/// `e + z*gamma` with `gamma` in `gl_m[[z]]` having integer coefficients in
/// `[-bound, bound]` at exponents `0..=precision-2`.
pub fn sample_coset(e: &RationalMatrix, bound: i64, precision: i64, rng: &mut impl Rng) -> Result<SeriesMatrix> {
    check_sampling(bound, precision)?;
    let m = e.size();
    let mut coeffs = vec![e.clone()];
    for _ in 1..precision {
        coeffs.push(random_int_matrix(m, bound, rng));
    }
    series_matrix_from_coeffs(m, 0, &coeffs, precision)
}

fn check_sampling(bound: i64, precision: i64) -> Result<()> {
    if precision < 2 {
        return Err(Error::InsufficientPrecision { precision, required: 2 });
    }
    if bound < 1 {
        return Err(Error::InvalidParameter(format!("coefficient bound {bound} must be at least 1")));
    }
    Ok(())
}

/// Samples elements `(1/z)(x + z*gamma)` of the dual lattice of a parahoric,
/// with `x` in the nilradical and `gamma` in `g[[z]]`.
#[derive(Debug, Clone)]
pub struct DualLatticeSampler {
    nilradical: SubalgebraBasis,
    ambient: SubalgebraBasis,
}

impl DualLatticeSampler {
    pub fn new(nilradical: SubalgebraBasis) -> Self {
        let kind = nilradical.kind();
        Self {
            ambient: SubalgebraBasis {
                kind,
                elements: ambient_basis(kind),
            },
            nilradical,
        }
    }

    /// Random nilradical element `x`, and the series element built from it.
    pub fn sample(&self, bound: i64, precision: i64, rng: &mut impl Rng) -> Result<(RationalMatrix, SeriesMatrix)> {
        check_sampling(bound, precision)?;
        let x = self.nilradical.random_element(bound, rng);
        let gamma = self.tail(bound, precision, rng);
        Ok((x.clone(), dual_lattice_element(&x, &gamma, precision)?))
    }

    fn tail(&self, bound: i64, precision: i64, rng: &mut impl Rng) -> Vec<RationalMatrix> {
        (0..precision - 1)
            .map(|_| self.ambient.random_element(bound, rng))
            .collect()
    }
}

/// `(1/z)(x + z * sum_k gamma[k] z^k)` with the inner series known to `O(z^precision)`.
pub fn dual_lattice_element(x: &RationalMatrix, gamma: &[RationalMatrix], precision: i64) -> Result<SeriesMatrix> {
    let mut coeffs = vec![x.clone()];
    coeffs.extend(gamma.iter().take((precision - 1).max(0) as usize).cloned());
    series_matrix_from_coeffs(x.size(), -1, &coeffs, precision - 1)
}

/// Which coset or lattice a sampled series element comes from.
#[derive(Debug, Clone, Copy)]
pub enum SampleMode<'a> {
    /// `e + z gl_m[[z]]`.
    Coset(&'a RationalMatrix),
    /// `(1/z)(n + z g[[z]])` for the nilradical `n`.
    DualLattice(&'a SubalgebraBasis),
}

/// One deterministic sample for `(seed, trial)`.
pub fn sample_series_element(
    mode: SampleMode<'_>,
    bound: i64,
    precision: i64,
    seed: u64,
    trial: u64,
) -> Result<SeriesMatrix> {
    let mut rng = trial_rng(seed, trial);
    match mode {
        SampleMode::Coset(e) => sample_coset(e, bound, precision, &mut rng),
        SampleMode::DualLattice(nil) => {
            let sampler = DualLatticeSampler::new(nil.clone());
            sampler.sample(bound, precision, &mut rng).map(|(_, g)| g)
        }
    }
}

/// Extends `base` to a basis of `ambient` using ambient elements; returns the
/// added complement.
fn complement(base: &[RationalMatrix], ambient: &[RationalMatrix]) -> Vec<RationalMatrix> {
    let mut rows: Vec<Vec<BigRational>> = base.iter().map(|b| b.entries().to_vec()).collect();
    let mut rank = rank_of_rows(&rows);
    let mut out = Vec::new();
    for a in ambient {
        rows.push(a.entries().to_vec());
        let r = rank_of_rows(&rows);
        if r > rank {
            rank = r;
            out.push(a.clone());
        } else {
            rows.pop();
        }
    }
    out
}

/// Checks at truncation `precision` that `(1/z)(n + z g[[z]])` is exactly the
/// trace-form dual of the parahoric `p + z g[[z]]`.
///
/// Inclusion: every generator of the candidate lattice pairs integrally with
/// every generator of the parahoric. Maximality: every complement direction
/// `y` of `n` in `g` has a witness `v` in `p` with `nu(tr(y v / z)) = -1`, the
/// full pairing between the complement and `p` has full rank, and the trace
/// form on `g` is nondegenerate (which rules out deeper poles).
pub fn check_dual_lattice(flag: &FlagSpec, precision: i64) -> Result<CertReport> {
    if precision < 3 {
        return Err(Error::InsufficientPrecision { precision, required: 3 });
    }
    let kind = flag.kind();
    let p = parabolic_basis(flag);
    let n = nilradical_basis(&p);
    let g = ambient_basis(kind);
    let series = |x: &RationalMatrix| SeriesMatrix::from_rational(x, precision);

    let mut lattice: Vec<(String, SeriesMatrix)> = Vec::new();
    for (i, x) in n.elements().iter().enumerate() {
        lattice.push((format!("n{i}/z"), series(x).shift(-1)));
    }
    for (i, x) in g.iter().enumerate() {
        lattice.push((format!("g{i}"), series(x)));
    }
    let mut parahoric: Vec<(String, SeriesMatrix)> = Vec::new();
    for (i, y) in p.elements().iter().enumerate() {
        parahoric.push((format!("p{i}"), series(y)));
    }
    for (i, y) in g.iter().enumerate() {
        parahoric.push((format!("z*g{i}"), series(y).shift(1)));
    }

    let mut violations = Vec::new();
    let mut trials = Vec::new();
    let mut failures = 0usize;
    for (un, u) in &lattice {
        for (vn, v) in &parahoric {
            let val = trace_pairing(u, v)?.valuation();
            if !val.certifies_at_least(0) {
                failures += 1;
                violations.push(format!("inclusion: nu(tr({un} * {vn})) = {val} < 0"));
            }
        }
    }
    trials.push(
        TrialOutcome::new("inclusion", failures == 0)
            .with_note(format!("{} x {} generator pairings", lattice.len(), parahoric.len())),
    );

    let comp = complement(n.elements(), &g);
    let mut missing = 0usize;
    for (i, y) in comp.iter().enumerate() {
        let u = series(y).shift(-1);
        let witnessed = p
            .elements()
            .iter()
            .map(|v| trace_pairing(&u, &series(v)).map(|t| t.valuation()))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .any(|v| v == Valuation::Exact(-1));
        if !witnessed {
            missing += 1;
            violations.push(format!("maximality: complement direction c{i} = {y} pairs integrally with all of p"));
        }
    }
    let pairing: Vec<Vec<BigRational>> = comp
        .iter()
        .map(|y| {
            p.elements()
                .iter()
                .map(|v| y.trace_product(v).expect("same size"))
                .collect()
        })
        .collect();
    let pairing_rank = if comp.is_empty() { 0 } else { rank_of_rows(&pairing) };
    if pairing_rank != comp.len() {
        violations.push(format!(
            "maximality: complement/p pairing has rank {pairing_rank}, need {}",
            comp.len()
        ));
    }
    trials.push(
        TrialOutcome::new("maximality", missing == 0 && pairing_rank == comp.len())
            .with_note(format!("{} complement directions, pairing rank {pairing_rank}", comp.len())),
    );

    let gram: Vec<Vec<BigRational>> = g
        .iter()
        .map(|a| g.iter().map(|b| a.trace_product(b).expect("same size")).collect())
        .collect();
    let gram_rank = rank_of_rows(&gram);
    if gram_rank != g.len() {
        violations.push(format!("trace form on {kind} has rank {gram_rank} < {}", g.len()));
    }
    trials.push(TrialOutcome::new("nondegenerate", gram_rank == g.len()));

    if p.dim() + n.dim() != g.len() {
        violations.push(format!(
            "dim p + dim n = {} + {} != dim g = {}",
            p.dim(),
            n.dim(),
            g.len()
        ));
    }

    Ok(CertReport::new(
        "dual-lattice",
        Params {
            flag: Some(flag.to_string()),
            precision: Some(precision),
            ..Params::default()
        },
        trials,
        violations,
        Vec::new(),
    ))
}

/// The generic Jordan type on a nilradical, found by sampling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RichardsonClass {
    pub partition: Partition,
    /// A sampled nilradical element of that type.
    pub representative: RationalMatrix,
    /// Distinct observed types, sorted.
    pub observed: Vec<Partition>,
}

pub fn richardson_class(flag: &FlagSpec, trials: usize, bound: i64, seed: u64) -> Result<RichardsonClass> {
    if trials == 0 {
        return Err(Error::InvalidParameter("richardson sampling needs at least one trial".into()));
    }
    if bound < 1 {
        return Err(Error::InvalidParameter(format!("coefficient bound {bound} must be at least 1")));
    }
    let n = nilradical_basis(&parabolic_basis(flag));
    let mut samples: Vec<(Partition, RationalMatrix)> = Vec::with_capacity(trials);
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let x = n.random_element(bound, &mut rng);
        samples.push((jordan_type(&x)?, x));
    }
    let mut observed: Vec<Partition> = samples.iter().map(|(p, _)| p.clone()).collect();
    observed.sort();
    observed.dedup();
    let top = observed
        .iter()
        .find(|cand| observed.iter().all(|o| o.dominance_leq(cand).unwrap_or(false)))
        .cloned();
    let Some(partition) = top else {
        let list: Vec<String> = observed.iter().map(|p| format!("({p})")).collect();
        return Err(Error::Incomparable(list.join(" ")));
    };
    let representative = samples
        .into_iter()
        .find(|(p, _)| *p == partition)
        .map(|(_, x)| x)
        .expect("maximum was observed");
    Ok(RichardsonClass {
        partition,
        representative,
        observed,
    })
}

pub fn richardson_partition(flag: &FlagSpec, trials: usize, bound: i64, seed: u64) -> Result<Partition> {
    richardson_class(flag, trials, bound, seed).map(|r| r.partition)
}

/// Closed form for type A: the Richardson class of a block parabolic is the
/// dual of its sorted block sizes.
pub fn gl_richardson_closed_form(flag: &FlagSpec) -> Result<Partition> {
    match flag.kind().family() {
        Family::Gl | Family::Sl => Ok(Partition::new(flag.data().to_vec())?.dual()),
        _ => Err(Error::Unsupported(format!("closed-form Richardson class for {}", flag.kind()))),
    }
}
