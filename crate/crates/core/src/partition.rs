//! Integer partitions: dominance and containment orders, box removal,
//! the degree thresholds `A_{k,r}` and a few classical counting statistics.
//!
//! A [`Partition`] is always stored normalized: strictly positive parts in
//! weakly decreasing order. The empty partition is the unique partition of 0.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

/// Drops zeros and sorts descending. Negative entries are rejected.
pub fn normalize(raw: &[i64]) -> Result<Partition> {
    if let Some(bad) = raw.iter().find(|&&x| x < 0) {
        return Err(Error::InvalidInput(format!(
            "negative part {bad} in partition"
        )));
    }
    Ok(Partition::from_parts(raw.iter().map(|&x| x as usize).collect()))
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Normalizes an arbitrary sequence of row lengths.
    pub fn from_parts(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        Partition::from_parts(vec![n])
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Zero-based row access, padded with zeros past the last part.
    pub fn get(&self, row: usize) -> usize {
        self.parts.get(row).copied().unwrap_or(0)
    }

    /// Dominance order on partitions of the same size: every prefix sum of
    /// `self` is at least the corresponding prefix sum of `other`.
    pub fn dominates(&self, other: &Partition) -> Result<bool> {
        self.check_same_size(other)?;
        let rows = self.len().max(other.len());
        let (mut lhs, mut rhs) = (0usize, 0usize);
        for i in 0..rows {
            lhs += self.get(i);
            rhs += other.get(i);
            if lhs < rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Young diagram containment, `self ⊃ other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(o, s)| s >= o)
    }

    /// The conjugate partition.
    pub fn transpose(&self) -> Partition {
        let width = self.get(0);
        let parts = (1..=width)
            .map(|c| self.parts.iter().take_while(|&&p| p >= c).count())
            .collect();
        Partition { parts }
    }

    /// Removes one box from row `row` (1-based) and re-sorts the rows.
    pub fn remove_box(&self, row: usize) -> Result<Partition> {
        if row == 0 || row > self.len() {
            return Err(Error::UndefinedBoxRemoval {
                partition: self.to_string(),
                row,
            });
        }
        let mut parts = self.parts.clone();
        parts[row - 1] -= 1;
        Ok(Partition::from_parts(parts))
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn n_stat(&self) -> usize {
        self.parts.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    /// Hook length of every box, row by row.
    pub fn hook_lengths(&self) -> Vec<Vec<usize>> {
        let conj = self.transpose();
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &len)| (0..len).map(|j| (len - j - 1) + (conj.get(j) - i - 1) + 1).collect())
            .collect()
    }

    /// Number of standard Young tableaux of this shape (hook length formula).
    pub fn syt_count(&self) -> BigUint {
        let hooks: BigUint = self
            .hook_lengths()
            .iter()
            .flatten()
            .map(|&h| BigUint::from(h))
            .product();
        factorial(self.size()) / hooks
    }

    /// `|λ|! / Π λ_i!`.
    pub fn multinomial(&self) -> BigUint {
        let denom: BigUint = self.parts.iter().map(|&p| factorial(p)).product();
        factorial(self.size()) / denom
    }

    fn check_same_size(&self, other: &Partition) -> Result<()> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                left: self.to_string(),
                left_size: self.size(),
                right: other.to_string(),
                right_size: other.size(),
            });
        }
        Ok(())
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// The length-`r` row vector `(α_1, …, α_r)` of `A_{k,r}` before dropping
/// zero rows. For `r = 1` this is `(1)`.
pub fn threshold_rows(k: usize, r: usize) -> Result<Vec<usize>> {
    match r {
        0 => Err(Error::InvalidInput("threshold needs r >= 1".into())),
        1 => Ok(vec![1]),
        _ => {
            let first = (k + r - 2) / (r - 1);
            let mut rows = vec![first];
            rows.extend((2..=r).map(|s| (k + r - s) / (r - 1)));
            Ok(rows)
        }
    }
}

/// The threshold partition `A_{k,r}`.
pub fn threshold(k: usize, r: usize) -> Result<Partition> {
    threshold_rows(k, r).map(Partition::from_parts)
}

/// The dominance-maximal partition of `n` with at most `r` parts containing
/// `A_{k,r}`: all surplus boxes go into the first row.
pub fn lambda_max(n: usize, k: usize, r: usize) -> Result<Partition> {
    let mut rows = threshold_rows(k, r)?;
    let base: usize = rows.iter().sum();
    if n < base {
        return Err(Error::InvalidInput(format!(
            "n = {n} is smaller than |A_{{{k},{r}}}| = {base}"
        )));
    }
    rows[0] += n - base;
    Ok(Partition::from_parts(rows))
}

/// Iterator over the partitions of `n` (optionally with at most
/// `max_parts` parts) in descending lexicographic order.
#[derive(Clone, Debug)]
pub struct Partitions {
    next: Option<Vec<usize>>,
    max_parts: Option<usize>,
}

pub fn partitions(n: usize, max_parts: Option<usize>) -> Partitions {
    let next = match (n, max_parts) {
        (0, _) => Some(Vec::new()),
        (_, Some(0)) => None,
        _ => Some(vec![n]),
    };
    Partitions { next, max_parts }
}

impl Partitions {
    fn advance(&self, cur: &[usize]) -> Option<Vec<usize>> {
        let mut tail = 0usize;
        for i in (0..cur.len()).rev() {
            tail += cur[i];
            if cur[i] > 1 {
                let cap = cur[i] - 1;
                let mut rest = tail - cap;
                let fits = match self.max_parts {
                    Some(m) => rest <= cap * (m - i - 1),
                    None => true,
                };
                if fits {
                    let mut out = cur[..i].to_vec();
                    out.push(cap);
                    while rest > 0 {
                        let p = rest.min(cap);
                        out.push(p);
                        rest -= p;
                    }
                    return Some(out);
                }
            }
        }
        None
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.next.take()?;
        self.next = self.advance(&cur);
        Some(Partition { parts: cur })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let raw = s
            .split(',')
            .map(|tok| {
                tok.trim().parse::<i64>().map_err(|_| {
                    Error::InvalidInput(format!("malformed partition {s:?}: bad entry {tok:?}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        normalize(&raw)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn all_upto(n: usize) -> impl Iterator<Item = Partition> {
        (0..=n).flat_map(|m| partitions(m, None))
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&[0, 0]).unwrap(), Partition::empty());
        assert_eq!(normalize(&[3, 0, 2]).unwrap(), p("3,2"));
        assert_eq!(normalize(&[2, 3, 1]).unwrap(), p("3,2,1"));
        assert!(matches!(normalize(&[2, -1]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p(""), Partition::empty());
        assert_eq!(p("4, 2,1").to_string(), "4,2,1");
        assert!("4,x".parse::<Partition>().is_err());
        assert!("4,,1".parse::<Partition>().is_err());
        assert!("-1".parse::<Partition>().is_err());
    }

    #[test]
    fn dominance_examples() {
        assert!(p("2,1").dominates(&p("1,1,1")).unwrap());
        for mu in partitions(6, None) {
            assert!(Partition::row(6).dominates(&mu).unwrap());
        }
        assert!(!p("3,3").dominates(&p("4,1,1")).unwrap());
        assert!(!p("4,1,1").dominates(&p("3,3")).unwrap());
        assert!(matches!(
            p("2").dominates(&p("1")),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn dominance_reverses_under_transpose() {
        for n in 0..=8 {
            let all: Vec<_> = partitions(n, None).collect();
            for a in &all {
                for b in &all {
                    assert_eq!(
                        a.dominates(b).unwrap(),
                        b.transpose().dominates(&a.transpose()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn containment() {
        assert!(p("3,2").contains(&p("2,2")));
        assert!(!p("3,3,1").contains(&p("2,2,2")));
        for lam in all_upto(6) {
            assert!(lam.contains(&Partition::empty()));
        }
        for n in 0..=7 {
            let all: Vec<_> = partitions(n, None).collect();
            for a in &all {
                for b in &all {
                    if a.contains(b) {
                        assert_eq!(a, b);
                    }
                }
            }
        }
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(p("3,1").transpose(), p("2,1,1"));
        assert_eq!(Partition::column(5).transpose(), Partition::row(5));
        for lam in all_upto(10) {
            assert_eq!(lam.transpose().transpose(), lam);
            assert_eq!(lam.transpose().size(), lam.size());
        }
    }

    #[test]
    fn remove_box_examples() {
        assert_eq!(p("2,2").remove_box(1).unwrap(), p("2,1"));
        assert_eq!(p("3,1").remove_box(2).unwrap(), p("3"));
        assert_eq!(p("1").remove_box(1).unwrap(), Partition::empty());
        assert!(p("3,1").remove_box(3).is_err());
        assert!(p("3,1").remove_box(0).is_err());
        for lam in all_upto(8).filter(|l| !l.is_empty()) {
            for i in 1..=lam.len() {
                assert_eq!(lam.remove_box(i).unwrap().size(), lam.size() - 1);
            }
        }
    }

    #[test]
    fn n_stat_examples() {
        assert_eq!(Partition::row(7).n_stat(), 0);
        for n in 0..10 {
            assert_eq!(Partition::column(n).n_stat(), n * n.saturating_sub(1) / 2);
        }
        assert_eq!(p("2,2").n_stat(), 2);
    }

    /// Counts standard tableaux by peeling off the box holding the largest
    /// entry, which must be a removable corner.
    fn syt_brute(lam: &Partition) -> u64 {
        if lam.is_empty() {
            return 1;
        }
        (0..lam.len())
            .filter(|&i| lam.get(i) > lam.get(i + 1))
            .map(|i| syt_brute(&lam.remove_box(i + 1).unwrap()))
            .sum()
    }

    #[test]
    fn syt_count_matches_corner_peeling() {
        assert_eq!(Partition::row(5).syt_count(), BigUint::from(1u32));
        assert_eq!(p("2,1").syt_count(), BigUint::from(2u32));
        assert_eq!(p("2,2").syt_count(), BigUint::from(2u32));
        for lam in all_upto(9) {
            assert_eq!(lam.syt_count(), BigUint::from(syt_brute(&lam)), "{lam}");
            assert_eq!(lam.syt_count(), lam.transpose().syt_count());
        }
    }

    #[test]
    fn sum_of_squared_dimensions_is_factorial() {
        for n in 0..=8 {
            let total: BigUint = partitions(n, None).map(|l| l.syt_count().pow(2)).sum();
            assert_eq!(total, factorial(n));
        }
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(Partition::row(6).multinomial(), BigUint::from(1u32));
        assert_eq!(Partition::column(3).multinomial(), BigUint::from(6u32));
        assert_eq!(p("2,2").multinomial(), BigUint::from(6u32));
    }

    #[test]
    fn threshold_examples() {
        for r in 2..10 {
            for k in 1..r {
                assert_eq!(threshold(k, r).unwrap(), Partition::column(k + 1), "k={k} r={r}");
            }
            assert_eq!(threshold(0, r).unwrap(), Partition::empty());
        }
        assert_eq!(threshold(4, 3).unwrap(), p("2,2,2"));
        assert_eq!(threshold(3, 3).unwrap(), p("2,2,1"));
        assert_eq!(threshold(5, 1).unwrap(), p("1"));
        assert!(threshold(3, 0).is_err());
    }

    #[test]
    fn thresholds_are_nested() {
        for r in 2..10 {
            for k in 0..20 {
                for k2 in 0..=k {
                    assert!(threshold(k, r).unwrap().contains(&threshold(k2, r).unwrap()));
                }
            }
        }
    }

    #[test]
    fn threshold_shape_has_two_values() {
        for r in 2..10 {
            for k in 0..30 {
                let rows = threshold_rows(k, r).unwrap();
                let a = rows[r - 1];
                assert!(rows.iter().all(|&x| x == a || x == a + 1));
                let j = rows.iter().filter(|&&x| x == a + 1).count();
                assert!(j < r && j != 1, "k={k} r={r} rows={rows:?}");
            }
        }
    }

    #[test]
    fn lambda_max_examples() {
        for r in 1..6 {
            for k in 0..8 {
                let a = threshold(k, r).unwrap();
                assert_eq!(lambda_max(a.size(), k, r).unwrap(), a);
            }
        }
        let top = lambda_max(8, 3, 3).unwrap();
        assert_eq!(top, p("5,2,1"));
        let base = threshold(3, 3).unwrap();
        let qualifying: Vec<_> = partitions(8, Some(3)).filter(|l| l.contains(&base)).collect();
        assert!(!qualifying.is_empty());
        for lam in &qualifying {
            assert!(top.dominates(lam).unwrap());
        }
        assert_eq!(partitions(8, Some(3)).count(), 10);
        assert!(lambda_max(4, 3, 3).is_err());
    }

    #[test]
    fn partitions_iter_examples() {
        let zero: Vec<_> = partitions(0, None).collect();
        assert_eq!(zero, vec![Partition::empty()]);
        assert_eq!(partitions(5, None).count(), 7);
        let two: Vec<_> = partitions(5, Some(2)).map(|l| l.to_string()).collect();
        assert_eq!(two, ["5", "4,1", "3,2"]);
        assert_eq!(partitions(3, Some(0)).count(), 0);
    }

    #[test]
    fn partitions_iter_is_descending_and_complete() {
        let pn = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135];
        for (n, &count) in pn.iter().enumerate() {
            let all: Vec<_> = partitions(n, None).collect();
            assert_eq!(all.len(), count);
            assert!(all.windows(2).all(|w| w[0].parts() > w[1].parts()));
            assert!(all.iter().all(|l| l.size() == n));
            for m in 0..=n {
                let bounded: Vec<_> = partitions(n, Some(m)).collect();
                let filtered: Vec<_> = all.iter().filter(|l| l.len() <= m).cloned().collect();
                assert_eq!(bounded, filtered, "n={n} m={m}");
            }
        }
    }
}
