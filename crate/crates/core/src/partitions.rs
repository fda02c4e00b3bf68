//! Partitions, multipartitions, hooks, and the abacus description of
//! p-cores and p-quotients.
//!
//! Every enumeration in this module is lexicographically decreasing, so that
//! matrices indexed by partitions or multipartitions have a reproducible
//! row and column order.
//!
//! Abacus convention: the beta-set of `λ` has `L` beads, where `L` is the least
//! multiple of `p` that is at least the number of parts, at positions
//! `λ_i + L - 1 - i`. Runner `q` holds the beads congruent to `q` modulo `p`
//! and quotient component `q + 1` is read from runner `q`. Because `L ≡ 0`
//! mod `p`, adding `p` more beads leaves the quotient unchanged.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_odd_prime, Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
    size: usize,
}

impl Partition {
    /// Builds a partition, dropping trailing zero parts.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Self::from_sorted(parts))
    }

    pub(crate) fn from_sorted(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(!parts.contains(&0));
        let size = parts.iter().sum();
        Partition { parts, size }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// The one-row partition `[n]` (empty for `n = 0`).
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Self::from_sorted(vec![n])
        }
    }

    /// The one-column partition `[1^n]`.
    pub fn column(n: usize) -> Self {
        Self::from_sorted(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (0..width)
            .map(|j| self.parts.iter().take_while(|&&x| x > j).count())
            .collect();
        Self::from_sorted(parts)
    }

    /// Cell-wise containment of Young diagrams.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// Multiplicities `a_m` of each part size `m`, indexed by `m` (index 0 unused).
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut counts = vec![0; self.part(0) + 1];
        for &x in &self.parts {
            counts[x] += 1;
        }
        counts
    }

    /// Hook length of every cell; row `i` has `parts[i]` entries.
    pub fn hook_lengths(&self) -> Vec<Vec<usize>> {
        let conj = self.conjugate();
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &row)| {
                (0..row)
                    .map(|j| (row - j - 1) + (conj.part(j) - i - 1) + 1)
                    .collect()
            })
            .collect()
    }

    /// Beta-set with exactly `beads` beads, in decreasing order.
    pub fn beta_set(&self, beads: usize) -> Vec<usize> {
        assert!(beads >= self.len(), "not enough beads for {self}");
        (0..beads).map(|i| self.part(i) + beads - 1 - i).collect()
    }

    /// Inverse of [`Partition::beta_set`]; the input may be in any order but
    /// must have distinct entries.
    pub fn from_beta_set(beta: &[usize]) -> Partition {
        let mut sorted = beta.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let n = sorted.len();
        let parts = sorted
            .iter()
            .enumerate()
            .map(|(i, &b)| b - (n - 1 - i))
            .filter(|&x| x > 0)
            .collect();
        Self::from_sorted(parts)
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts.cmp(&other.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<usize> = serde_json::from_str(s).map_err(|e| Error::Parse {
            input: s.to_string(),
            reason: e.to_string(),
        })?;
        Partition::new(parts)
    }
}

/// How the components of a [`MultiPartition`] are labelled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Indexing {
    /// Components at positions `1..=len`.
    Full,
    /// `len = p - 1` components at positions `{1..=p} \ {r}` with `r = (p+1)/2`.
    Reduced,
}

/// A fixed-length tuple of partitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiPartition {
    components: Vec<Partition>,
    indexing: Indexing,
}

impl MultiPartition {
    pub fn new(components: Vec<Partition>, indexing: Indexing) -> Self {
        MultiPartition {
            components,
            indexing,
        }
    }

    pub fn full(components: Vec<Partition>) -> Self {
        Self::new(components, Indexing::Full)
    }

    pub fn reduced(components: Vec<Partition>) -> Self {
        Self::new(components, Indexing::Reduced)
    }

    pub fn empty(len: usize, indexing: Indexing) -> Self {
        Self::new(vec![Partition::empty(); len], indexing)
    }

    pub fn components(&self) -> &[Partition] {
        &self.components
    }

    pub fn component(&self, idx: usize) -> &Partition {
        &self.components[idx]
    }

    pub fn indexing(&self) -> Indexing {
        self.indexing
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Total number of boxes.
    pub fn weight(&self) -> usize {
        self.components.iter().map(Partition::size).sum()
    }

    /// The 1-based position labelling component `idx`.
    pub fn position(&self, idx: usize) -> usize {
        match self.indexing {
            Indexing::Full => idx + 1,
            Indexing::Reduced => {
                let r = (self.len() + 2) / 2;
                if idx + 1 < r {
                    idx + 1
                } else {
                    idx + 2
                }
            }
        }
    }

    /// Same components, relabelled with another indexing.
    pub fn with_indexing(self, indexing: Indexing) -> Self {
        Self::new(self.components, indexing)
    }
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for MultiPartition {
    type Err = Error;

    /// Parses `[[2],[1,1],[]]` with [`Indexing::Full`].
    fn from_str(s: &str) -> Result<Self> {
        let raw: Vec<Vec<usize>> = serde_json::from_str(s).map_err(|e| Error::Parse {
            input: s.to_string(),
            reason: e.to_string(),
        })?;
        let components = raw.into_iter().map(Partition::new).collect::<Result<_>>()?;
        Ok(MultiPartition::full(components))
    }
}

/// All partitions of `n`, lexicographically decreasing.
pub fn generate_partitions(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition::from_sorted(prefix.clone()));
            return;
        }
        for part in (1..=remaining.min(max)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All `t`-tuples of partitions of total size `w` ([`Indexing::Full`]),
/// lexicographically decreasing in the tuple of components.
pub fn generate_multipartitions(w: usize, t: usize) -> Vec<MultiPartition> {
    assert!(t >= 1, "a multipartition needs at least one component");
    let by_size: Vec<Vec<Partition>> = (0..=w).map(generate_partitions).collect();
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(t);
    fn rec(
        remaining: usize,
        slots: usize,
        by_size: &[Vec<Partition>],
        prefix: &mut Vec<Partition>,
        out: &mut Vec<MultiPartition>,
    ) {
        if slots == 1 {
            for last in &by_size[remaining] {
                prefix.push(last.clone());
                out.push(MultiPartition::full(prefix.clone()));
                prefix.pop();
            }
            return;
        }
        for k in 0..=remaining {
            for first in &by_size[k] {
                prefix.push(first.clone());
                rec(remaining - k, slots - 1, by_size, prefix, out);
                prefix.pop();
            }
        }
    }
    rec(w, t, &by_size, &mut prefix, &mut out);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Hook length of every cell of the Young diagram.
pub fn hook_lengths(lambda: &Partition) -> Vec<Vec<usize>> {
    lambda.hook_lengths()
}

/// p-core, p-quotient and p-weight of a partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PQuotientResult {
    pub core: Partition,
    pub quotient: MultiPartition,
    pub weight: usize,
}

fn abacus_beads(len: usize, p: usize) -> usize {
    len.div_ceil(p) * p
}

/// Levels of the beads on each runner.
fn runners(beta: &[usize], p: usize) -> Vec<Vec<usize>> {
    let mut runners = vec![Vec::new(); p];
    for &b in beta {
        runners[b % p].push(b / p);
    }
    for r in &mut runners {
        r.sort_unstable_by(|a, b| b.cmp(a));
    }
    runners
}

pub fn p_core_and_quotient(lambda: &Partition, p: usize) -> Result<PQuotientResult> {
    check_odd_prime(p)?;
    let beads = abacus_beads(lambda.len(), p);
    let runners = runners(&lambda.beta_set(beads), p);

    let quotient = runners
        .iter()
        .map(|levels| Partition::from_beta_set(levels))
        .collect::<Vec<_>>();
    let core_beta: Vec<usize> = runners
        .iter()
        .enumerate()
        .flat_map(|(q, levels)| (0..levels.len()).map(move |level| level * p + q))
        .collect();
    let core = Partition::from_beta_set(&core_beta);
    let quotient = MultiPartition::full(quotient);
    let weight = quotient.weight();
    debug_assert_eq!(core.size() + p * weight, lambda.size());
    Ok(PQuotientResult {
        core,
        quotient,
        weight,
    })
}

pub fn is_p_core(lambda: &Partition, p: usize) -> bool {
    lambda.hook_lengths().iter().flatten().all(|h| h % p != 0)
}

/// The unique partition with the given p-core and p-quotient.
pub fn reconstruct_from_core_quotient(
    core: &Partition,
    quotient: &MultiPartition,
    p: usize,
) -> Result<Partition> {
    check_odd_prime(p)?;
    if quotient.len() != p {
        return Err(Error::SizeMismatch {
            expected: p,
            actual: quotient.len(),
        });
    }
    if !is_p_core(core, p) {
        return Err(Error::NotACore {
            core: core.to_string(),
            p,
        });
    }
    let mut beads = abacus_beads(core.len(), p);
    let mut counts: Vec<usize>;
    loop {
        counts = runners(&core.beta_set(beads), p)
            .iter()
            .map(Vec::len)
            .collect();
        if counts
            .iter()
            .zip(quotient.components())
            .all(|(&n, q)| n >= q.len())
        {
            break;
        }
        beads += p;
    }
    let beta: Vec<usize> = quotient
        .components()
        .iter()
        .zip(&counts)
        .enumerate()
        .flat_map(|(q, (component, &n))| {
            component
                .beta_set(n)
                .into_iter()
                .map(move |level| level * p + q)
        })
        .collect();
    Ok(Partition::from_beta_set(&beta))
}

/// Inserts an empty component at position `r = (p+1)/2`.
pub fn hat(alpha: &MultiPartition) -> MultiPartition {
    assert_eq!(
        alpha.indexing(),
        Indexing::Reduced,
        "hat expects a reduced label"
    );
    let p = alpha.len() + 1;
    let r = p.div_ceil(2);
    let mut components = alpha.components().to_vec();
    components.insert(r - 1, Partition::empty());
    MultiPartition::full(components)
}

/// Inverse of [`hat`]; `None` unless component `r` is empty.
pub fn unhat(gamma: &MultiPartition) -> Option<MultiPartition> {
    let p = gamma.len();
    let r = p.div_ceil(2);
    if !gamma.component(r - 1).is_empty() {
        return None;
    }
    let mut components = gamma.components().to_vec();
    components.remove(r - 1);
    Some(MultiPartition::reduced(components))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    /// Number of partitions of n with parts at most k, by the recurrence
    /// p(n, k) = p(n, k-1) + p(n-k, k).
    fn count_partitions(n: usize, k: usize) -> usize {
        if n == 0 {
            return 1;
        }
        if k == 0 {
            return 0;
        }
        count_partitions(n, k - 1)
            + if k <= n {
                count_partitions(n - k, k)
            } else {
                0
            }
    }

    fn count_multipartitions(w: usize, t: usize) -> usize {
        let p: Vec<usize> = (0..=w).map(|n| count_partitions(n, n)).collect();
        let mut poly = vec![0usize; w + 1];
        poly[0] = 1;
        for _ in 0..t {
            let mut next = vec![0; w + 1];
            for (i, &a) in poly.iter().enumerate() {
                for (j, &b) in p.iter().enumerate().take(w + 1 - i) {
                    next[i + j] += a * b;
                }
            }
            poly = next;
        }
        poly[w]
    }

    /// Removes one rim hook of length `p` if there is one: the hook of cell
    /// (i, j) with leg `l` shifts rows i+1..=i+l up by one box.
    fn strip_one_hook(lambda: &Partition, p: usize) -> Option<Partition> {
        let conj = lambda.conjugate();
        for (i, row) in lambda.hook_lengths().iter().enumerate() {
            for (j, &h) in row.iter().enumerate() {
                if h == p {
                    let leg = conj.part(j) - i - 1;
                    let mut parts = lambda.parts().to_vec();
                    for t in i..i + leg {
                        parts[t] = lambda.part(t + 1) - 1;
                    }
                    parts[i + leg] = j;
                    return Some(Partition::new(parts).unwrap());
                }
            }
        }
        None
    }

    pub(crate) fn core_by_stripping(lambda: &Partition, p: usize) -> (Partition, usize) {
        let mut current = lambda.clone();
        let mut weight = 0;
        while let Some(next) = strip_one_hook(&current, p) {
            current = next;
            weight += 1;
        }
        (current, weight)
    }

    #[test]
    fn partitions_small_cases() {
        assert_eq!(generate_partitions(0), vec![Partition::empty()]);
        assert_eq!(
            generate_partitions(3),
            vec![part("[3]"), part("[2,1]"), part("[1,1,1]")]
        );
        assert_eq!(count_partitions(6, 6), 11);
        assert_eq!(generate_partitions(6).len(), 11);
        for n in 0..=15 {
            let all = generate_partitions(n);
            assert_eq!(all.len(), count_partitions(n, n));
            assert!(all.windows(2).all(|w| w[0] > w[1]));
            assert!(all.iter().all(|l| l.size() == n));
        }
    }

    #[test]
    fn multipartition_counts() {
        assert_eq!(
            generate_multipartitions(0, 4),
            vec![MultiPartition::empty(4, Indexing::Full)]
        );
        assert_eq!(generate_multipartitions(1, 3).len(), 3);
        assert_eq!(count_multipartitions(3, 3), 22);
        assert_eq!(generate_multipartitions(3, 3).len(), 22);
        for w in 0..=5 {
            for t in 1..=5 {
                let all = generate_multipartitions(w, t);
                assert_eq!(all.len(), count_multipartitions(w, t), "w={w} t={t}");
                assert!(all.windows(2).all(|x| x[0] > x[1]));
                assert!(all.iter().all(|m| m.weight() == w && m.len() == t));
            }
        }
    }

    #[test]
    fn hooks_match_arm_plus_leg() {
        assert_eq!(hook_lengths(&part("[1]")), vec![vec![1]]);
        assert_eq!(hook_lengths(&part("[3]")), vec![vec![3, 2, 1]]);
        assert_eq!(hook_lengths(&part("[2,1]")), vec![vec![3, 1], vec![1]]);
        for n in 0..=8 {
            for lambda in generate_partitions(n) {
                let hooks = lambda.hook_lengths();
                for (i, row) in hooks.iter().enumerate() {
                    for (j, &h) in row.iter().enumerate() {
                        let arm = lambda.part(i) - j - 1;
                        let leg = (i + 1..lambda.len())
                            .filter(|&t| lambda.part(t) > j)
                            .count();
                        assert_eq!(h, arm + leg + 1);
                    }
                }
            }
        }
    }

    #[test]
    fn core_quotient_examples() {
        let r = p_core_and_quotient(&Partition::empty(), 5).unwrap();
        assert!(r.core.is_empty());
        assert_eq!(r.weight, 0);
        assert_eq!(r.quotient, MultiPartition::empty(5, Indexing::Full));

        let r = p_core_and_quotient(&part("[3]"), 3).unwrap();
        assert!(r.core.is_empty());
        assert_eq!(r.weight, 1);
        assert_eq!(r.quotient.weight(), 1);

        let lambda = part("[4,2,1]");
        let r = p_core_and_quotient(&lambda, 3).unwrap();
        let (core, weight) = core_by_stripping(&lambda, 3);
        assert_eq!((r.core.clone(), r.weight), (core, weight));
        assert_eq!(r.core.size() + 3 * r.weight, 7);
    }

    #[test]
    fn rejects_bad_primes() {
        for p in [0, 1, 2, 4, 9, 15] {
            assert_eq!(
                p_core_and_quotient(&part("[2]"), p),
                Err(Error::NotOddPrime(p))
            );
        }
        let q = MultiPartition::empty(3, Indexing::Full);
        assert!(matches!(
            reconstruct_from_core_quotient(&part("[3]"), &q, 3),
            Err(Error::NotACore { .. })
        ));
    }

    #[test]
    fn core_quotient_agrees_with_hook_stripping() {
        for p in [3, 5, 7] {
            for n in 0..=10 {
                for lambda in generate_partitions(n) {
                    let r = p_core_and_quotient(&lambda, p).unwrap();
                    let (core, weight) = core_by_stripping(&lambda, p);
                    assert_eq!(r.core, core, "{lambda} p={p}");
                    assert_eq!(r.weight, weight);
                    assert!(is_p_core(&r.core, p));
                    assert_eq!(r.core.size() + p * r.weight, n);
                    let back = reconstruct_from_core_quotient(&r.core, &r.quotient, p).unwrap();
                    assert_eq!(back, lambda);
                }
            }
        }
    }

    #[test]
    fn reconstruct_then_decompose_is_identity() {
        for p in [3, 5] {
            for core in generate_partitions(4)
                .into_iter()
                .filter(|c| is_p_core(c, p))
            {
                for w in 0..=3 {
                    for q in generate_multipartitions(w, p) {
                        let lambda = reconstruct_from_core_quotient(&core, &q, p).unwrap();
                        assert_eq!(lambda.size(), core.size() + p * w);
                        let r = p_core_and_quotient(&lambda, p).unwrap();
                        assert_eq!((r.core, r.quotient), (core.clone(), q));
                    }
                }
            }
        }
        let q: MultiPartition = "[[],[],[1]]".parse().unwrap();
        let lambda = reconstruct_from_core_quotient(&Partition::empty(), &q, 3).unwrap();
        assert_eq!(lambda.size(), 3);
        assert_eq!(
            reconstruct_from_core_quotient(
                &Partition::empty(),
                &MultiPartition::empty(3, Indexing::Full),
                3
            )
            .unwrap(),
            Partition::empty()
        );
    }

    #[test]
    fn hat_inserts_middle_slot() {
        let a = MultiPartition::reduced(vec![part("[1]"), part("[2]")]);
        assert_eq!(hat(&a).to_string(), "[[1],[],[2]]");
        let a = MultiPartition::reduced(vec![part("[2]"), part("[]"), part("[1]"), part("[]")]);
        assert_eq!(hat(&a).to_string(), "[[2],[],[],[1],[]]");
        assert_eq!(
            hat(&MultiPartition::empty(4, Indexing::Reduced)),
            MultiPartition::empty(5, Indexing::Full)
        );
        assert_eq!(unhat(&hat(&a)), Some(a));
    }

    #[test]
    fn positions_skip_r() {
        let a = MultiPartition::empty(4, Indexing::Reduced);
        assert_eq!(
            (0..4).map(|i| a.position(i)).collect::<Vec<_>>(),
            vec![1, 2, 4, 5]
        );
        let a = MultiPartition::empty(2, Indexing::Reduced);
        assert_eq!(
            (0..2).map(|i| a.position(i)).collect::<Vec<_>>(),
            vec![1, 3]
        );
    }

    #[test]
    fn text_format() {
        assert_eq!(part(" [ 3, 1,1 ] ").to_string(), "[3,1,1]");
        assert_eq!(part("[]"), Partition::empty());
        assert!("[1,2]".parse::<Partition>().is_err());
        assert!("[1,".parse::<Partition>().is_err());
        let m: MultiPartition = "[[2], [1,1],[]]".parse().unwrap();
        assert_eq!(m.to_string(), "[[2],[1,1],[]]");
        assert_eq!(m.weight(), 4);
    }
}
