//! Certifiers for valuation bounds of characteristic-polynomial invariants,
//! and the Riemann-Roch dimension counts they feed into.
//!
//! Every sampled check derives its randomness from `(seed, trial)`, runs the
//! trials in parallel and assembles the report in trial order, so reports are
//! reproducible regardless of scheduling.

use num_rational::Ratio;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{charpoly_coeffs, jordan_type, RationalMatrix, SeriesMatrix};
use crate::liealg::{
    centralizer_dim_oracle, check_dual_lattice, classical_nilpotent, compositions, gl_richardson_closed_form,
    jordan_nilpotent, nilradical_basis, parabolic_basis, richardson_class, richardson_partition,
    sample_coset, series_matrix_from_coeffs, trial_rng, AlgebraKind, DualLatticeSampler, Family, FlagSpec,
};
use crate::partition::{enumerate_partitions, partitions, FormKind, Partition, PartitionFilter};
use crate::report::{serialize_ratio, CertReport, DimensionBreakdown, MinTracker, Params, Summand, TrialOutcome};
use crate::series::Valuation;

/// Sampling parameters shared by the randomized checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sampling {
    pub trials: usize,
    pub bound: i64,
    pub precision: i64,
    pub seed: u64,
}

impl Default for Sampling {
    fn default() -> Self {
        Self {
            trials: 100,
            bound: 9,
            precision: 12,
            seed: 0,
        }
    }
}

impl Sampling {
    fn params(&self) -> Params {
        Params {
            trials: Some(self.trials),
            precision: Some(self.precision),
            bound: Some(self.bound),
            seed: Some(self.seed),
            ..Params::default()
        }
    }

    fn check_bound(&self) -> Result<()> {
        if self.bound < 1 {
            return Err(Error::InvalidParameter(format!("coefficient bound {} must be at least 1", self.bound)));
        }
        Ok(())
    }
}

fn require_precision(precision: i64, required: i64) -> Result<()> {
    if precision < required {
        return Err(Error::InsufficientPrecision { precision, required });
    }
    Ok(())
}

struct TrialResult {
    outcome: TrialOutcome,
    violations: Vec<String>,
    /// `(tracker slot, valuation)` pairs.
    observed: Vec<(usize, Valuation)>,
}

fn assemble(
    check: &str,
    params: Params,
    results: Vec<TrialResult>,
    mut tracker: Option<MinTracker>,
) -> CertReport {
    let mut trials = Vec::with_capacity(results.len());
    let mut violations = Vec::new();
    for r in results {
        if let Some(t) = tracker.as_mut() {
            for (slot, v) in &r.observed {
                t.record(*slot, *v);
            }
        }
        trials.push(r.outcome);
        violations.extend(r.violations);
    }
    CertReport::new(check, params, trials, violations, tracker.map(MinTracker::finish).unwrap_or_default())
}

/// `nu(F_j(e_mu + z*gamma)) >= n(mu, j)` on random `gamma`.
pub fn prop2_certify(mu: &Partition, sampling: Sampling) -> Result<CertReport> {
    let m = mu.total();
    if m == 0 {
        return Err(Error::InvalidParameter("the empty partition has no invariants to certify".into()));
    }
    sampling.check_bound()?;
    let bounds: Vec<i64> = (1..=m).map(|j| mu.n_of(j).map(|n| n as i64)).collect::<Result<_>>()?;
    let max_bound = bounds.iter().copied().max().unwrap_or(0);
    require_precision(sampling.precision, max_bound + 2)?;

    let e = jordan_nilpotent(mu);
    let results = (0..sampling.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(sampling.seed, t as u64);
            let gamma = sample_coset(&e, sampling.bound, sampling.precision, &mut rng)?;
            let f = charpoly_coeffs(&gamma)?;
            let mut violations = Vec::new();
            let mut observed = Vec::new();
            for (idx, (fj, &b)) in f.iter().zip(&bounds).enumerate() {
                let v = fj.valuation();
                if !v.certifies_at_least(b) {
                    violations.push(format!("trial {t}: nu(F_{}) = {v} < n(mu, {}) = {b}", idx + 1, idx + 1));
                }
                observed.push((idx, v));
            }
            Ok(TrialResult {
                outcome: TrialOutcome::new(format!("trial-{t}"), violations.is_empty())
                    .with_valuations(observed.iter().map(|(_, v)| *v).collect()),
                violations,
                observed,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let tracker = MinTracker::new(bounds.iter().enumerate().map(|(i, &b)| (i + 1, b)));
    let params = Params {
        partition: Some(mu.to_string()),
        m: Some(m),
        ..sampling.params()
    };
    Ok(assemble("prop2", params, results, Some(tracker)))
}

/// Pole bounds `nu(F_{2j}) >= -(2j - n(Lambda, 2j))` on the dual lattice of the
/// parahoric attached to an isotropic flag in `sp_{2n}`.
///
/// Per sample the proof's intermediate steps are checked as well: the Jordan
/// type `mu_x` of the residue is dominated by `Lambda`, `n(mu_x, 2j) >=
/// n(Lambda, 2j)`, and the sharper bound `-(2j - n(mu_x, 2j))` already holds.
/// Odd-index coefficients must vanish at every known exponent.
pub fn lemma4_certify(flag: &FlagSpec, sampling: Sampling) -> Result<CertReport> {
    let kind = flag.kind();
    if kind.family() != Family::Sp {
        return Err(Error::Unsupported(format!("pole bounds are certified for sp only, got {kind}")));
    }
    let n = kind.rank();
    sampling.check_bound()?;
    require_precision(sampling.precision, 2 * n as i64 + 2)?;
    let lambda = richardson_partition(flag, sampling.trials.max(1), sampling.bound, sampling.seed)?;
    let bounds: Vec<i64> = (1..=n)
        .map(|j| lambda.n_of(2 * j).map(|a| a as i64 - 2 * j as i64))
        .collect::<Result<_>>()?;

    let sampler = DualLatticeSampler::new(nilradical_basis(&parabolic_basis(flag)));
    let results = (0..sampling.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(sampling.seed, t as u64);
            let (x, gamma) = sampler.sample(sampling.bound, sampling.precision, &mut rng)?;
            let mu_x = jordan_type(&x)?;
            let f = charpoly_coeffs(&gamma)?;
            let mut violations = Vec::new();
            let mut observed = Vec::new();
            let mut valuations = Vec::new();
            if !mu_x.dominance_leq(&lambda)? {
                violations.push(format!("trial {t}: residue type ({mu_x}) is not dominated by ({lambda})"));
            }
            for (i, fi) in f.iter().enumerate() {
                let idx = i + 1;
                let v = fi.valuation();
                valuations.push(v);
                if idx % 2 == 1 {
                    if !matches!(v, Valuation::AtLeast(_)) {
                        violations.push(format!("trial {t}: odd coefficient F_{idx} has nu = {v}"));
                    }
                    continue;
                }
                let j = idx / 2;
                let b = bounds[j - 1];
                if !v.certifies_at_least(b) {
                    violations.push(format!("trial {t}: nu(F_{idx}) = {v} < {b}"));
                }
                let nx = mu_x.n_of(idx)? as i64;
                if nx < lambda.n_of(idx)? as i64 {
                    violations.push(format!("trial {t}: n(mu_x, {idx}) = {nx} < n(Lambda, {idx})"));
                }
                let sharp = nx - idx as i64;
                if !v.certifies_at_least(sharp) {
                    violations.push(format!("trial {t}: nu(F_{idx}) = {v} < -({idx} - n(mu_x, {idx})) = {sharp}"));
                }
                observed.push((j - 1, v));
            }
            Ok(TrialResult {
                outcome: TrialOutcome::new(format!("trial-{t}"), violations.is_empty())
                    .with_valuations(valuations)
                    .with_note(format!("residue type {mu_x}")),
                violations,
                observed,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let tracker = MinTracker::new(bounds.iter().enumerate().map(|(i, &b)| (2 * (i + 1), b)));
    let params = Params {
        flag: Some(flag.to_string()),
        richardson: Some(lambda.to_string()),
        ..sampling.params()
    };
    Ok(assemble("lemma4", params, results, Some(tracker)))
}

fn random_series_matrix(m: usize, lead: i64, count: usize, precision: i64, bound: i64, rng: &mut impl Rng) -> Result<SeriesMatrix> {
    let coeffs: Vec<RationalMatrix> = (0..count)
        .map(|_| {
            let data = (0..m * m).map(|_| crate::linalg::rat(rng.gen_range(-bound..=bound))).collect();
            RationalMatrix::from_flat(m, data).expect("m*m entries")
        })
        .collect();
    series_matrix_from_coeffs(m, lead, &coeffs, precision)
}

/// The `z^k` coefficient of `F_j(M)` depends only on `M mod z^(k+1)`.
///
/// Pairs `M`, `M' = M + z^(k+1) D` with random pole-free `M`, `D` are compared
/// at working precision `k + 3`.
pub fn jet_dependence_check(m: usize, j: usize, k: usize, trials: usize, seed: u64) -> Result<CertReport> {
    if m == 0 || j == 0 || j > m {
        return Err(Error::IndexOutOfRange { index: j, max: m });
    }
    let precision = k as i64 + 3;
    let bound = 9;
    let results = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t as u64);
            let base = random_series_matrix(m, 0, precision as usize, precision, bound, &mut rng)?;
            let tail_len = (precision - k as i64 - 1) as usize;
            let tail = random_series_matrix(m, k as i64 + 1, tail_len, precision, bound, &mut rng)?;
            let other = base.add(&tail)?;
            let fj = &charpoly_coeffs(&base)?[j - 1];
            let gj = &charpoly_coeffs(&other)?[j - 1];
            let v = (fj - gj).valuation();
            let mut violations = Vec::new();
            if !v.certifies_at_least(k as i64 + 1) {
                violations.push(format!("trial {t}: F_{j} differs at z^{} although the {}-jets agree", v.lower_bound(), k + 1));
            }
            Ok(TrialResult {
                outcome: TrialOutcome::new(format!("trial-{t}"), violations.is_empty()).with_valuations(vec![v]),
                violations,
                observed: Vec::new(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let params = Params {
        m: Some(m),
        j: Some(j),
        k: Some(k),
        trials: Some(trials),
        precision: Some(precision),
        seed: Some(seed),
        ..Params::default()
    };
    Ok(assemble("jet", params, results, None))
}

/// `h^0` of a line bundle of degree `d` on a genus-`g` curve, in the nonspecial
/// range `d > 2g - 2`.
pub fn h0(genus: i64, degree: i64) -> Result<i64> {
    if genus < 2 {
        return Err(Error::Genus(genus));
    }
    let canonical = 2 * genus - 2;
    if degree <= canonical {
        return Err(Error::SpecialRange { degree, canonical });
    }
    Ok(degree - genus + 1)
}

/// Degrees of the basic invariants: `1..=m` for `gl_m`, `2..=m` for `sl_m`,
/// `2, 4, ..., 2n` for `sp_2n`. Checks `sum d_i = dim(G/B) + rank` against the
/// computed Borel nilradical.
pub fn invariant_degrees(kind: AlgebraKind) -> Result<Vec<usize>> {
    let m = kind.size();
    let degrees: Vec<usize> = match kind.family() {
        Family::Gl => (1..=m).collect(),
        Family::Sl => (2..=m).collect(),
        Family::Sp => (1..=m / 2).map(|j| 2 * j).collect(),
        Family::So => return Err(Error::Unsupported(format!("invariant degrees for {kind}"))),
    };
    let positive_roots = nilradical_basis(&parabolic_basis(&FlagSpec::full(kind))).dim();
    let sum: usize = degrees.iter().sum();
    if sum != positive_roots + kind.rank() {
        return Err(Error::InvalidParameter(format!(
            "degree sum {sum} != dim(G/B) + rank = {positive_roots} + {}",
            kind.rank()
        )));
    }
    Ok(degrees)
}

/// `sum_i h^0(K^{d_i}(c_i x))` for summands `(d_i, c_i)`.
pub fn hitchin_base_dim(genus: i64, summands: &[(usize, i64)]) -> Result<DimensionBreakdown> {
    if genus < 2 {
        return Err(Error::Genus(genus));
    }
    let mut rows = Vec::with_capacity(summands.len());
    for &(degree, pole_order) in summands {
        let line_degree = degree as i64 * (2 * genus - 2) + pole_order;
        rows.push(Summand {
            degree,
            pole_order,
            line_degree,
            h0: h0(genus, line_degree)?,
        });
    }
    Ok(DimensionBreakdown {
        genus,
        kind: None,
        flag: None,
        richardson: None,
        total: rows.iter().map(|s| s.h0).sum(),
        summands: rows,
        bun_dim: None,
        matches: None,
    })
}

/// `dim G (g - 1) + dim n` for the parahoric attached to `flag`.
pub fn bun_dim(genus: i64, flag: &FlagSpec) -> Result<i64> {
    if genus < 2 {
        return Err(Error::Genus(genus));
    }
    let n = nilradical_basis(&parabolic_basis(flag)).dim() as i64;
    Ok(flag.kind().dim() as i64 * (genus - 1) + n)
}

/// Parameters for [`dim_match`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimMatchOptions {
    /// Richardson sampling for sp flags.
    pub richardson: Sampling,
    /// Uniform pole order replacing the sharp per-summand values.
    pub pole_override: Option<i64>,
}

impl Default for DimMatchOptions {
    fn default() -> Self {
        Self {
            richardson: Sampling {
                trials: 25,
                ..Sampling::default()
            },
            pole_override: None,
        }
    }
}

/// Compares the Hitchin base dimension with the moduli dimension.
///
/// Pole orders are `c_d = d - n(Lambda, d)` for every invariant degree `d`,
/// with `Lambda` the Richardson class of the flag: the closed form for type A,
/// sampling for sp. For a Borel in `sl_m` this is `c_d = d - 1`.
pub fn dim_match(genus: i64, flag: &FlagSpec, options: DimMatchOptions) -> Result<DimensionBreakdown> {
    let kind = flag.kind();
    let degrees = invariant_degrees(kind)?;
    let lambda = match kind.family() {
        Family::Gl | Family::Sl => gl_richardson_closed_form(flag)?,
        Family::Sp => {
            let s = options.richardson;
            richardson_partition(flag, s.trials, s.bound, s.seed)?
        }
        Family::So => return Err(Error::Unsupported(format!("dimension count for {kind}"))),
    };
    let mut summands = Vec::with_capacity(degrees.len());
    for &d in &degrees {
        let c = match options.pole_override {
            Some(c) => c,
            None => d as i64 - lambda.n_of(d)? as i64,
        };
        summands.push((d, c));
    }
    let mut out = hitchin_base_dim(genus, &summands)?;
    let bun = bun_dim(genus, flag)?;
    out.kind = Some(kind.to_string());
    out.flag = Some(flag.to_string());
    out.richardson = Some(lambda.to_string());
    out.bun_dim = Some(bun);
    out.matches = Some(out.total == bun);
    Ok(out)
}

/// Both sides of the symplectic-style identity evaluated on `(2,2,1)` in `so_5`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct So5Remark {
    pub lhs: i64,
    #[serde(serialize_with = "serialize_ratio")]
    pub rhs: Ratio<i64>,
    pub equal: bool,
}

/// `n(mu,2) + n(mu,4)` against `(n + dim Z_so(e)) / 2` for `mu = (2,2,1)`, `n = 2`.
pub fn so5_remark_check() -> So5Remark {
    let mu = Partition::new(vec![2, 2, 1]).expect("valid parts");
    let n: i64 = 2;
    let lhs = (1..=n as usize).map(|j| mu.n_of(2 * j).expect("j within total") as i64).sum();
    let centralizer = mu.centralizer_dim(FormKind::So).expect("orthogonal partition") as i64;
    let rhs = Ratio::new(n + centralizer, 2);
    So5Remark {
        lhs,
        rhs,
        equal: Ratio::from_integer(lhs) == rhs,
    }
}

/// Wraps the so(5) comparison as a check that passes when the sides differ.
pub fn so5_remark_report() -> CertReport {
    let r = so5_remark_check();
    let mut violations = Vec::new();
    if r.equal {
        violations.push(format!("expected the sides to differ, both are {}", r.rhs));
    }
    let trial = TrialOutcome::new("so5:2,2,1", !r.equal).with_note(format!("lhs {} rhs {} equal {}", r.lhs, r.rhs, r.equal));
    CertReport::new(
        "so5-remark",
        Params {
            partition: Some("2,2,1".into()),
            ..Params::default()
        },
        vec![trial],
        violations,
        Vec::new(),
    )
}

/// Row/column identity for every partition of `m <= max_size`, and the
/// symplectic identity for every symplectic partition of even `m <= max_size`.
pub fn identity_sweep(max_size: usize) -> CertReport {
    let per_size: Vec<(TrialOutcome, Vec<String>)> = (0..=max_size)
        .into_par_iter()
        .map(|m| {
            let mut violations = Vec::new();
            let mut count = 0usize;
            let mut symplectic = 0usize;
            for mu in partitions(m) {
                count += 1;
                let (lhs, rhs) = mu.lemma3_sides();
                if lhs != rhs {
                    violations.push(format!("row/column identity fails for ({mu}): {lhs} != {rhs}"));
                }
                if m % 2 == 0 && mu.classify().symplectic {
                    symplectic += 1;
                    match mu.cor3_sides() {
                        Ok((l, r)) if l == r => {}
                        Ok((l, r)) => violations.push(format!("symplectic identity fails for ({mu}): {l} != {r}")),
                        Err(e) => violations.push(format!("symplectic identity for ({mu}): {e}")),
                    }
                }
            }
            let outcome = TrialOutcome::new(format!("m={m}"), violations.is_empty())
                .with_note(format!("{count} partitions, {symplectic} symplectic"));
            (outcome, violations)
        })
        .collect();
    let (trials, violations): (Vec<_>, Vec<_>) = per_size.into_iter().unzip();
    CertReport::new(
        "identity-sweep",
        Params {
            max_size: Some(max_size),
            ..Params::default()
        },
        trials,
        violations.into_iter().flatten().collect(),
        Vec::new(),
    )
}

/// Centralizer dimensions from the kernel of `ad(e)` against the partition
/// formulas, for sp of size `<= max_sp` and so of size `<= max_so`.
pub fn centralizer_sweep(max_sp: usize, max_so: usize) -> Result<CertReport> {
    let mut cases = Vec::new();
    for m in (2..=max_sp).step_by(2) {
        for mu in enumerate_partitions(m, PartitionFilter::Symplectic) {
            cases.push((AlgebraKind::sp(m / 2), mu));
        }
    }
    for m in 1..=max_so {
        for mu in enumerate_partitions(m, PartitionFilter::Orthogonal) {
            cases.push((AlgebraKind::so(m), mu));
        }
    }
    let results = cases
        .par_iter()
        .map(|(kind, mu)| {
            let e = classical_nilpotent(*kind, mu)?;
            let oracle = centralizer_dim_oracle(*kind, &e)?;
            let formula = mu.centralizer_dim(kind.form_kind())?;
            let mut violations = Vec::new();
            if oracle != formula {
                violations.push(format!("{kind} ({mu}): kernel dimension {oracle} != formula {formula}"));
            }
            Ok(TrialResult {
                outcome: TrialOutcome::new(format!("{kind}:{mu}"), violations.is_empty())
                    .with_note(format!("dim Z = {oracle}")),
                violations,
                observed: Vec::new(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble("centralizer", Params::default(), results, None))
}

/// Certifies the valuation bound for every partition of `1..=max_m`.
pub fn prop2_sweep(max_m: usize, sampling: Sampling) -> Result<Vec<CertReport>> {
    (1..=max_m)
        .flat_map(|m| enumerate_partitions(m, PartitionFilter::All))
        .map(|mu| prop2_certify(&mu, sampling))
        .collect()
}

/// Certifies the pole bounds for every isotropic flag of `sp_2n`, `n <= max_n`.
pub fn lemma4_sweep(max_n: usize, sampling: Sampling) -> Result<Vec<CertReport>> {
    (1..=max_n)
        .flat_map(|n| FlagSpec::all(AlgebraKind::sp(n)))
        .map(|flag| lemma4_certify(&flag, sampling))
        .collect()
}

/// Dual lattice checks for every composition of `m <= max_gl` and every
/// isotropic flag of `sp_2n` for the listed `n`.
pub fn dual_lattice_sweep(max_gl: usize, sp_ranks: &[usize], precision: i64) -> Result<Vec<CertReport>> {
    let mut flags = Vec::new();
    for m in 1..=max_gl {
        flags.extend(FlagSpec::all(AlgebraKind::gl(m)));
    }
    for &n in sp_ranks {
        flags.extend(FlagSpec::all(AlgebraKind::sp(n)));
    }
    flags.par_iter().map(|f| check_dual_lattice(f, precision)).collect()
}

/// Jet checks for all `1 <= j <= m <= max_m` and `0 <= k <= max_k`.
pub fn jet_sweep(max_m: usize, max_k: usize, trials: usize, seed: u64) -> Result<Vec<CertReport>> {
    let mut out = Vec::new();
    for m in 1..=max_m {
        for j in 1..=m {
            for k in 0..=max_k {
                out.push(jet_dependence_check(m, j, k, trials, seed)?);
            }
        }
    }
    Ok(out)
}

fn dim_case(genus: i64, flag: &FlagSpec, options: DimMatchOptions) -> Result<TrialResult> {
    let d = dim_match(genus, flag, options)?;
    let ok = d.matches == Some(true);
    let bun = d.bun_dim.unwrap_or_default();
    let mut violations = Vec::new();
    if !ok {
        violations.push(format!("{flag} g={genus}: Hitchin base {} != moduli {bun}", d.total));
    }
    let poles: Vec<String> = d.summands.iter().map(|s| s.pole_order.to_string()).collect();
    Ok(TrialResult {
        outcome: TrialOutcome::new(format!("{flag} g={genus}"), ok).with_note(format!(
            "W {} = Bun {bun}, poles ({}), Richardson ({})",
            d.total,
            poles.join(","),
            d.richardson.as_deref().unwrap_or("")
        )),
        violations,
        observed: Vec::new(),
    })
}

/// Dimension match for the Borel of `sl_m`, `m` in `sizes`, over `genera`.
pub fn sl_dim_sweep(sizes: std::ops::RangeInclusive<usize>, genera: &[i64]) -> Result<CertReport> {
    let mut results = Vec::new();
    for m in sizes {
        let flag = FlagSpec::full(AlgebraKind::sl(m));
        for &g in genera {
            results.push(dim_case(g, &flag, DimMatchOptions::default())?);
        }
    }
    Ok(assemble("dim-match-sl", Params::default(), results, None))
}

/// Dimension match for every isotropic flag of `sp_2n`, `n <= max_n`.
pub fn sp_dim_sweep(max_n: usize, genera: &[i64], richardson: Sampling) -> Result<CertReport> {
    let options = DimMatchOptions {
        richardson,
        pole_override: None,
    };
    let flags: Vec<FlagSpec> = (1..=max_n).flat_map(|n| FlagSpec::all(AlgebraKind::sp(n))).collect();
    let results = flags
        .par_iter()
        .map(|flag| genera.iter().map(|&g| dim_case(g, flag, options)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let params = Params {
        trials: Some(richardson.trials),
        bound: Some(richardson.bound),
        seed: Some(richardson.seed),
        ..Params::default()
    };
    Ok(assemble("dim-match-sp", params, results, None))
}

/// Sampled Richardson classes in `gl_m` against the dual of the sorted block
/// sizes, for every composition of `m <= max_m`.
pub fn richardson_gl_sweep(max_m: usize, sampling: Sampling) -> Result<CertReport> {
    let flags: Vec<FlagSpec> = (1..=max_m)
        .flat_map(|m| compositions(m).into_iter().map(move |c| (m, c)))
        .map(|(m, c)| FlagSpec::new(AlgebraKind::gl(m), c))
        .collect::<Result<_>>()?;
    let results = flags
        .par_iter()
        .map(|flag| {
            let sampled = richardson_class(flag, sampling.trials, sampling.bound, sampling.seed)?.partition;
            let closed = gl_richardson_closed_form(flag)?;
            let mut violations = Vec::new();
            if sampled != closed {
                violations.push(format!("{flag}: sampled ({sampled}) != closed form ({closed})"));
            }
            Ok(TrialResult {
                outcome: TrialOutcome::new(flag.to_string(), violations.is_empty()).with_note(format!("({sampled})")),
                violations,
                observed: Vec::new(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let params = Params {
        trials: Some(sampling.trials),
        bound: Some(sampling.bound),
        seed: Some(sampling.seed),
        ..Params::default()
    };
    Ok(assemble("richardson-gl", params, results, None))
}

/// `jordan_type(jordan_nilpotent(mu)) == mu` for every partition of `m <= max_m`.
pub fn jordan_roundtrip_sweep(max_m: usize) -> Result<CertReport> {
    let mut results = Vec::new();
    for m in 1..=max_m {
        let mut violations = Vec::new();
        let mut count = 0;
        for mu in partitions(m) {
            count += 1;
            let back = jordan_type(&jordan_nilpotent(&mu))?;
            if back != mu {
                violations.push(format!("({mu}) came back as ({back})"));
            }
        }
        results.push(TrialResult {
            outcome: TrialOutcome::new(format!("m={m}"), violations.is_empty()).with_note(format!("{count} partitions")),
            violations,
            observed: Vec::new(),
        });
    }
    let params = Params {
        max_size: Some(max_m),
        ..Params::default()
    };
    Ok(assemble("jordan-roundtrip", params, results, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::TruncatedSeries;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn flag(s: &str) -> FlagSpec {
        s.parse().unwrap()
    }

    fn quick(trials: usize) -> Sampling {
        Sampling {
            trials,
            ..Sampling::default()
        }
    }

    #[test]
    fn prop2_two_by_two_example() {
        // [[0,1],[z,0]] has F_2 = -z.
        let z = TruncatedSeries::new([(1, crate::linalg::rat(1))], 8).unwrap();
        let one = TruncatedSeries::from_integer(1, 8);
        let zero = TruncatedSeries::zero(8);
        let g = SeriesMatrix::from_entries(2, vec![zero.clone(), one, z, zero]).unwrap();
        let f = charpoly_coeffs(&g).unwrap();
        assert_eq!(f[1].valuation(), Valuation::Exact(1));
        assert_eq!(part("2").n_of(2).unwrap(), 1);
    }

    #[test]
    fn prop2_examples() {
        let r = prop2_certify(&part("2"), Sampling { trials: 5, seed: 1, ..Sampling::default() }).unwrap();
        assert!(r.pass);
        assert_eq!(r.observed_min[1].min, Some(1));
        let r = prop2_certify(&part("1,1,1"), quick(10)).unwrap();
        assert!(r.pass);
        for (j, o) in r.observed_min.iter().enumerate() {
            assert!(o.min.unwrap() > j as i64);
        }
        let r = prop2_certify(&part("2,2,1"), quick(100)).unwrap();
        assert!(r.pass, "{:?}", r.violations);
        assert_eq!(r.trials.len(), 100);
    }

    #[test]
    fn prop2_rejects_small_precision() {
        let s = Sampling { precision: 3, ..quick(1) };
        assert!(matches!(
            prop2_certify(&part("1,1,1,1"), s),
            Err(Error::InsufficientPrecision { required: 6, .. })
        ));
    }

    #[test]
    fn lemma4_examples() {
        let r = lemma4_certify(&flag("sp2:1"), quick(20)).unwrap();
        assert!(r.pass, "{:?}", r.violations);
        assert_eq!(r.params.richardson.as_deref(), Some("2"));
        assert_eq!(r.observed_min[0].bound, -1);

        let r = lemma4_certify(&flag("sp4:1,2"), quick(100)).unwrap();
        assert!(r.pass, "{:?}", r.violations);
        assert_eq!(r.params.richardson.as_deref(), Some("4"));
        let bounds: Vec<i64> = r.observed_min.iter().map(|o| o.bound).collect();
        assert_eq!(bounds, vec![-1, -3]);

        assert!(lemma4_certify(&flag("gl:1,1"), quick(1)).is_err());
        assert!(lemma4_certify(&flag("sp4:1,2"), Sampling { precision: 5, ..quick(1) }).is_err());
    }

    #[test]
    fn lemma4_zero_residue_has_no_poles() {
        let flag = flag("sp4:");
        let r = lemma4_certify(&flag, quick(5)).unwrap();
        assert!(r.pass);
        for o in &r.observed_min {
            assert!(o.min.is_none_or(|m| m >= 0));
        }
    }

    #[test]
    fn jet_examples() {
        let r = jet_dependence_check(3, 3, 4, 50, 0).unwrap();
        assert!(r.pass, "{:?}", r.violations);
        let r = jet_dependence_check(2, 2, 1, 10, 3).unwrap();
        assert!(r.pass);
        assert!(jet_dependence_check(2, 3, 1, 1, 0).is_err());
    }

    #[test]
    fn h0_examples() {
        assert_eq!(h0(2, 5).unwrap(), 4);
        assert_eq!(h0(3, 5).unwrap(), 3);
        assert!(matches!(h0(2, 2), Err(Error::SpecialRange { .. })));
        assert!(matches!(h0(1, 5), Err(Error::Genus(1))));
    }

    #[test]
    fn invariant_degree_examples() {
        assert_eq!(invariant_degrees(AlgebraKind::sl(3)).unwrap(), vec![2, 3]);
        assert_eq!(invariant_degrees(AlgebraKind::sp(2)).unwrap(), vec![2, 4]);
        assert_eq!(invariant_degrees(AlgebraKind::sp(1)).unwrap(), vec![2]);
        assert_eq!(invariant_degrees(AlgebraKind::gl(3)).unwrap(), vec![1, 2, 3]);
        assert!(matches!(invariant_degrees(AlgebraKind::so(5)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn hitchin_base_examples() {
        assert_eq!(hitchin_base_dim(2, &[(2, 1)]).unwrap().total, 4);
        assert_eq!(hitchin_base_dim(3, &[(2, 1)]).unwrap().total, 7);
        // sp4 Borel: Lambda = (4) gives c = (2 - 1, 4 - 1).
        assert_eq!(hitchin_base_dim(2, &[(2, 1), (4, 3)]).unwrap().total, 14);
        assert_eq!(hitchin_base_dim(2, &[(2, 1), (4, 2)]).unwrap().total, 13);
        assert!(hitchin_base_dim(2, &[(1, 0)]).is_err());
    }

    #[test]
    fn bun_dim_examples() {
        assert_eq!(bun_dim(2, &flag("sl:1,1")).unwrap(), 4);
        assert_eq!(bun_dim(2, &flag("sp4:1,2")).unwrap(), 14);
        assert_eq!(bun_dim(3, &flag("gl:2,2")).unwrap(), 36);
        assert!(bun_dim(1, &flag("gl:2,2")).is_err());
    }

    #[test]
    fn dim_match_examples() {
        let d = dim_match(2, &flag("sl:1,1"), DimMatchOptions::default()).unwrap();
        assert_eq!((d.total, d.bun_dim, d.matches), (4, Some(4), Some(true)));
        let d = dim_match(2, &flag("sp4:1,2"), DimMatchOptions::default()).unwrap();
        assert_eq!((d.total, d.bun_dim, d.matches), (14, Some(14), Some(true)));
        let poles: Vec<i64> = d.summands.iter().map(|s| s.pole_order).collect();
        assert_eq!(poles, vec![1, 3]);
        let d = dim_match(2, &flag("sp4:1"), DimMatchOptions::default()).unwrap();
        assert_eq!(d.matches, Some(true));
        let d = dim_match(2, &flag("sl:2,1"), DimMatchOptions::default()).unwrap();
        assert_eq!(d.matches, Some(true));

        let coarse = DimMatchOptions {
            pole_override: Some(5),
            ..DimMatchOptions::default()
        };
        let d = dim_match(2, &flag("sp4:1,2"), coarse).unwrap();
        assert_eq!(d.matches, Some(false));
        assert!(dim_match(2, &flag("so5:1"), DimMatchOptions::default()).is_err());
        assert!(dim_match(2, &flag("gl:1,1"), DimMatchOptions::default()).is_err());
    }

    #[test]
    fn h0_additivity_identity() {
        for kind in [AlgebraKind::sl(2), AlgebraKind::sl(5), AlgebraKind::sp(1), AlgebraKind::sp(3)] {
            let degrees = invariant_degrees(kind).unwrap();
            let odd_sum: usize = degrees.iter().map(|d| 2 * d - 1).sum();
            assert_eq!(odd_sum, kind.dim());
            for g in 2..=5i64 {
                let lhs: i64 = degrees
                    .iter()
                    .map(|&d| h0(g, d as i64 * (2 * g - 2) + d as i64 - 1).unwrap())
                    .sum();
                let shifts: i64 = degrees.iter().map(|&d| d as i64 - 1).sum();
                assert_eq!(lhs, odd_sum as i64 * (g - 1) + shifts);
            }
        }
    }

    #[test]
    fn so5_remark_values() {
        let r = so5_remark_check();
        assert_eq!(r.lhs, 3);
        assert_eq!(r.rhs, Ratio::from_integer(4));
        assert!(!r.equal);
        assert!(so5_remark_report().pass);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v, serde_json::json!({"lhs": 3, "rhs": 4, "equal": false}));
    }

    #[test]
    fn identity_sweep_small() {
        let r = identity_sweep(0);
        assert!(r.pass);
        assert_eq!(r.trials.len(), 1);
        assert!(identity_sweep(12).pass);
    }

    #[test]
    fn centralizer_sweep_small() {
        let r = centralizer_sweep(4, 4).unwrap();
        assert!(r.pass, "{:?}", r.violations);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = prop2_certify(&part("3,1"), quick(20)).unwrap();
        let b = prop2_certify(&part("3,1"), quick(20)).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
