//! Integer partitions and the nilpotent-orbit combinatorics built on them.
//!
//! A partition `mu = (m_1 >= m_2 >= ... >= m_k)` of `m` labels a nilpotent
//! orbit in `gl_m` by its Jordan block sizes. Its dual counts the columns of
//! the Young diagram.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

/// Which classical algebras a partition can label a nilpotent orbit in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Admissibility {
    /// Every odd part occurs with even multiplicity.
    pub symplectic: bool,
    /// Every even part occurs with even multiplicity.
    pub orthogonal: bool,
}

/// Ambient algebra for centralizer dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormKind {
    Gl,
    Sp,
    So,
}

impl fmt::Display for FormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormKind::Gl => "gl",
            FormKind::Sp => "sp",
            FormKind::So => "so",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionFilter {
    All,
    Symplectic,
    Orthogonal,
}

impl Partition {
    /// Builds a partition from parts in any order; zero parts are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Parse {
                what: "partition",
                token: join(&parts),
            });
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `mu~_j = #{ i : m_i >= j }`.
    pub fn dual(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// The index `a` with `m_1 + ... + m_{a-1} < j <= m_1 + ... + m_a`.
    pub fn n_of(&self, j: usize) -> Result<usize> {
        let total = self.total();
        if j == 0 || j > total {
            return Err(Error::IndexOutOfRange {
                index: j,
                max: total,
            });
        }
        let mut prefix = 0;
        for (a, &p) in self.parts.iter().enumerate() {
            prefix += p;
            if j <= prefix {
                return Ok(a + 1);
            }
        }
        unreachable!("j <= total always lands in some part")
    }

    fn multiplicity(&self, value: usize) -> usize {
        self.parts.iter().filter(|&&p| p == value).count()
    }

    pub fn classify(&self) -> Admissibility {
        let ok = |parity: usize| {
            self.parts
                .iter()
                .filter(|&&p| p % 2 == parity)
                .all(|&p| self.multiplicity(p).is_multiple_of(2))
        };
        Admissibility {
            symplectic: ok(1),
            orthogonal: ok(0),
        }
    }

    pub fn is_admissible(&self, kind: FormKind) -> bool {
        match kind {
            FormKind::Gl => true,
            FormKind::Sp => self.classify().symplectic,
            FormKind::So => self.classify().orthogonal,
        }
    }

    fn odd_parts(&self) -> usize {
        self.parts.iter().filter(|&&p| p % 2 == 1).count()
    }

    /// Centralizer dimension of a nilpotent with this Jordan type.
    ///
    /// gl: `sum mu~_i^2`; sp: `(sum mu~_i^2 + #odd parts) / 2`;
    /// so: `(sum mu~_i^2 - #odd parts) / 2`.
    pub fn centralizer_dim(&self, kind: FormKind) -> Result<usize> {
        if !self.is_admissible(kind) {
            return Err(Error::Inadmissible {
                partition: self.to_string(),
                kind: kind.to_string(),
            });
        }
        let squares: usize = self.dual().parts.iter().map(|d| d * d).sum();
        let odd = self.odd_parts();
        Ok(match kind {
            FormKind::Gl => squares,
            FormKind::Sp => (squares + odd) / 2,
            FormKind::So => (squares - odd) / 2,
        })
    }

    /// Row-sum and column-sum of the diagram with every box in row `i`
    /// labelled `i`: `(sum i*m_i, (sum mu~_j^2 + mu~_j) / 2)`.
    pub fn lemma3_sides(&self) -> (usize, usize) {
        let lhs = self
            .parts
            .iter()
            .enumerate()
            .map(|(i, &p)| (i + 1) * p)
            .sum();
        let twice_rhs: usize = self.dual().parts.iter().map(|d| d * d + d).sum();
        (lhs, twice_rhs / 2)
    }

    /// `(sum_{j=1}^n n(mu, 2j), n/2 + dim Z_sp(e)/2)` for a symplectic
    /// partition of `2n`.
    pub fn cor3_sides(&self) -> Result<(Ratio<i64>, Ratio<i64>)> {
        let centralizer = self.centralizer_dim(FormKind::Sp)?;
        let n = self.total() / 2;
        let mut lhs = 0i64;
        for j in 1..=n {
            lhs += self.n_of(2 * j)? as i64;
        }
        let rhs = Ratio::new(n as i64, 2) + Ratio::new(centralizer as i64, 2);
        Ok((Ratio::from_integer(lhs), rhs))
    }

    /// Dominance order: every prefix sum of `self` is at most that of `other`.
    pub fn dominance_leq(&self, other: &Partition) -> Result<bool> {
        if self.total() != other.total() {
            return Err(Error::TotalMismatch {
                left: self.total(),
                right: other.total(),
            });
        }
        let len = self.len().max(other.len());
        let mut lhs = 0;
        let mut rhs = 0;
        for i in 0..len {
            lhs += self.parts.get(i).copied().unwrap_or(0);
            rhs += other.parts.get(i).copied().unwrap_or(0);
            if lhs > rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn passes(&self, filter: PartitionFilter) -> bool {
        match filter {
            PartitionFilter::All => true,
            PartitionFilter::Symplectic => self.classify().symplectic,
            PartitionFilter::Orthogonal => self.classify().orthogonal,
        }
    }
}

/// Iterates over all partitions of `m` in reverse-lexicographic order.
pub struct PartitionIter {
    next: Option<Vec<usize>>,
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        // Find the rightmost part > 1, lower it by one and refill the tail
        // greedily with parts no larger than the lowered value.
        if let Some(pos) = current.iter().rposition(|&p| p > 1) {
            let mut succ = current[..pos].to_vec();
            let value = current[pos] - 1;
            let mut rest: usize = current[pos..].iter().sum::<usize>() - value;
            succ.push(value);
            while rest > 0 {
                let p = rest.min(value);
                succ.push(p);
                rest -= p;
            }
            self.next = Some(succ);
        }
        Some(Partition { parts: current })
    }
}

pub fn partitions(m: usize) -> PartitionIter {
    let first = if m == 0 { Vec::new() } else { vec![m] };
    PartitionIter { next: Some(first) }
}

pub fn enumerate_partitions(m: usize, filter: PartitionFilter) -> Vec<Partition> {
    partitions(m).filter(|p| p.passes(filter)).collect()
}

fn join(parts: &[usize]) -> String {
    parts
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.parts))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses comma-joined parts such as `"2,2,1"`. The parts must already be
    /// weakly decreasing; the empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for token in s.split(',') {
            let token = token.trim();
            match token.parse::<usize>() {
                Ok(p) if p > 0 => parts.push(p),
                _ => {
                    return Err(Error::Parse {
                        what: "partition",
                        token: token.to_string(),
                    })
                }
            }
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse {
                what: "partition",
                token: s.to_string(),
            });
        }
        Ok(Partition { parts })
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn dual_examples() {
        assert_eq!(p("2,2,1").dual(), p("3,2"));
        assert_eq!(p("1,1,1,1").dual(), p("4"));
        assert_eq!(p("4").dual(), p("1,1,1,1"));
        assert_eq!(Partition::empty().dual(), Partition::empty());
    }

    #[test]
    fn n_of_examples() {
        let mu = p("2,2,1");
        assert_eq!(mu.n_of(2).unwrap(), 1);
        assert_eq!(mu.n_of(4).unwrap(), 2);
        assert_eq!(mu.n_of(1).unwrap(), 1);
        assert_eq!(p("1,1,1").n_of(3).unwrap(), 3);
        assert_eq!(p("4").n_of(4).unwrap(), 1);
    }

    #[test]
    fn n_of_out_of_range() {
        assert!(matches!(
            p("2,1").n_of(0),
            Err(Error::IndexOutOfRange { index: 0, max: 3 })
        ));
        assert!(p("2,1").n_of(4).is_err());
    }

    #[test]
    fn classify_examples() {
        assert!(p("2,2").classify().symplectic);
        assert!(p("2,2,1").classify().orthogonal);
        assert!(!p("2,2,1").classify().symplectic);
        assert!(!p("3,1").classify().symplectic);
        assert!(p("3,1").classify().orthogonal);
    }

    #[test]
    fn centralizer_examples() {
        assert_eq!(p("2,2").centralizer_dim(FormKind::Sp).unwrap(), 4);
        assert_eq!(p("2,2,1").centralizer_dim(FormKind::So).unwrap(), 6);
        assert_eq!(p("2").centralizer_dim(FormKind::Sp).unwrap(), 1);
        assert_eq!(p("2,1").centralizer_dim(FormKind::Gl).unwrap(), 5);
        assert!(matches!(
            p("3,1").centralizer_dim(FormKind::Sp),
            Err(Error::Inadmissible { .. })
        ));
    }

    #[test]
    fn lemma3_examples() {
        assert_eq!(p("1").lemma3_sides(), (1, 1));
        assert_eq!(p("2,2,1").lemma3_sides(), (9, 9));
        assert_eq!(p("3").lemma3_sides(), (3, 3));
    }

    #[test]
    fn cor3_examples() {
        let int = Ratio::from_integer;
        assert_eq!(p("2,2").cor3_sides().unwrap(), (int(3), int(3)));
        assert_eq!(p("2").cor3_sides().unwrap(), (int(1), int(1)));
        assert_eq!(p("1,1").cor3_sides().unwrap(), (int(2), int(2)));
        assert!(p("3,1").cor3_sides().is_err());
    }

    #[test]
    fn dominance_examples() {
        assert!(p("1,1").dominance_leq(&p("2")).unwrap());
        assert!(p("2,2").dominance_leq(&p("4")).unwrap());
        assert!(!p("3,1").dominance_leq(&p("2,2")).unwrap());
        assert!(p("2,2").dominance_leq(&p("3")).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let all: Vec<String> = enumerate_partitions(4, PartitionFilter::All)
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(all, ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]);
        let sp: Vec<String> = enumerate_partitions(4, PartitionFilter::Symplectic)
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(sp, ["4", "2,2", "2,1,1", "1,1,1,1"]);
        assert_eq!(
            enumerate_partitions(0, PartitionFilter::All),
            vec![Partition::empty()]
        );
    }

    #[test]
    fn partition_counts_match_known_values() {
        let counts: Vec<usize> = (0..=12).map(|m| partitions(m).count()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
        assert_eq!(partitions(40).count(), 37338);
    }

    #[test]
    fn parse_rejects_bad_tokens() {
        assert!("2,x".parse::<Partition>().is_err());
        assert!("1,2".parse::<Partition>().is_err());
        assert!("2,0".parse::<Partition>().is_err());
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
    }

    #[test]
    fn monotonicity_under_dominance_up_to_twelve() {
        for m in 1..=12 {
            let all = enumerate_partitions(m, PartitionFilter::All);
            for mu in &all {
                for lam in &all {
                    if mu.dominance_leq(lam).unwrap() {
                        for j in 1..=m {
                            assert!(mu.n_of(j).unwrap() >= lam.n_of(j).unwrap());
                        }
                    }
                }
            }
        }
    }

    fn arb_partition() -> impl Strategy<Value = Partition> {
        prop::collection::vec(1usize..9, 0..9).prop_map(|v| Partition::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn dual_is_an_involution(mu in arb_partition()) {
            prop_assert_eq!(mu.dual().dual(), mu.clone());
            prop_assert_eq!(mu.dual().total(), mu.total());
        }

        #[test]
        fn last_index_is_number_of_parts(mu in arb_partition()) {
            prop_assume!(!mu.is_empty());
            prop_assert_eq!(mu.n_of(mu.total()).unwrap(), mu.len());
        }

        #[test]
        fn display_round_trips(mu in arb_partition()) {
            prop_assert_eq!(mu.to_string().parse::<Partition>().unwrap(), mu);
        }
    }
}
