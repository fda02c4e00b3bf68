//! Irreducible characters of symmetric groups.

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use crate::error::{Error, Result};
use crate::partitions::{generate_partitions, Partition};

/// Cycle type of a permutation, as a partition of its degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(pub Partition);

impl CycleType {
    pub fn identity(k: usize) -> Self {
        CycleType(Partition::column(k))
    }

    /// Cycle type of a permutation given in one-line notation on `0..n`.
    pub fn of_permutation(perm: &[usize]) -> Self {
        let mut seen = vec![false; perm.len()];
        let mut lengths = Vec::new();
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = perm[j];
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(Partition::from_sorted(lengths))
    }

    pub fn partition(&self) -> &Partition {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.size()
    }

    /// Number of cycles.
    pub fn cycles(&self) -> usize {
        self.0.len()
    }

    /// `z_ρ = Π_m m^{a_m} a_m!`, the centralizer order of a permutation of this type.
    pub fn centralizer_order(&self) -> u128 {
        self.0
            .multiplicities()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(m, &a)| (m as u128).pow(a as u32) * factorial(a))
            .product()
    }

    /// Number of permutations with this cycle type.
    pub fn class_size(&self) -> u128 {
        factorial(self.size()) / self.centralizer_order()
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

type MemoKey = (Partition, Partition);

static MN_CACHE: LazyLock<RwLock<HashMap<MemoKey, i64>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// `χ_λ(ρ)` by the Murnaghan–Nakayama rule, memoized.
pub fn mn_value(lambda: &Partition, rho: &CycleType) -> Result<i64> {
    check_sizes(lambda, rho)?;
    Ok(mn_rec(lambda, rho.partition().parts(), true))
}

/// Same as [`mn_value`] without touching the cache.
pub fn mn_value_uncached(lambda: &Partition, rho: &CycleType) -> Result<i64> {
    check_sizes(lambda, rho)?;
    Ok(mn_rec(lambda, rho.partition().parts(), false))
}

fn check_sizes(lambda: &Partition, rho: &CycleType) -> Result<()> {
    if lambda.size() != rho.size() {
        return Err(Error::SizeMismatch {
            expected: lambda.size(),
            actual: rho.size(),
        });
    }
    Ok(())
}

// Strips a border strip of length rho[0] in every possible way, working on
// the beta-set: moving a bead from b to b - len is a strip removal whose
// leg length is the number of beads strictly in between.
fn mn_rec(lambda: &Partition, rho: &[usize], cached: bool) -> i64 {
    let Some((&len, rest)) = rho.split_first() else {
        return 1;
    };
    // trivial character
    if lambda.len() <= 1 {
        return 1;
    }
    let key = (lambda.clone(), Partition::from_sorted(rho.to_vec()));
    if cached {
        if let Some(&v) = MN_CACHE.read().unwrap().get(&key) {
            return v;
        }
    }
    let beta = lambda.beta_set(lambda.len());
    let mut total = 0i64;
    for (idx, &b) in beta.iter().enumerate() {
        if b < len || beta.contains(&(b - len)) {
            continue;
        }
        let target = b - len;
        let between = beta.iter().filter(|&&c| c > target && c < b).count();
        let mut moved = beta.clone();
        moved[idx] = target;
        let mu = Partition::from_beta_set(&moved);
        let value = mn_rec(&mu, rest, cached);
        if between % 2 == 0 {
            total += value;
        } else {
            total -= value;
        }
    }
    if cached {
        MN_CACHE.write().unwrap().insert(key, total);
    }
    total
}

/// Hook length formula.
pub fn degree(lambda: &Partition) -> u128 {
    let hooks: u128 = lambda
        .hook_lengths()
        .iter()
        .flatten()
        .map(|&h| h as u128)
        .product();
    factorial(lambda.size()) / hooks
}

/// Character table of `S_k`. Rows follow [`generate_partitions`] order;
/// columns run the other way, so the identity class comes first and column 0
/// holds the degrees.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub characters: Vec<Partition>,
    pub classes: Vec<CycleType>,
    pub values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn value(&self, row: usize, col: usize) -> i64 {
        self.values[row][col]
    }
}

pub const MAX_TABLE_DEGREE: usize = 12;

pub fn character_table_sn(k: usize) -> Result<CharacterTable> {
    if !(1..=MAX_TABLE_DEGREE).contains(&k) {
        return Err(Error::OutOfRange {
            what: "k",
            value: k,
            range: format!("1..={MAX_TABLE_DEGREE}"),
        });
    }
    let characters = generate_partitions(k);
    let classes: Vec<CycleType> = characters.iter().rev().cloned().map(CycleType).collect();
    let values = characters
        .iter()
        .map(|lambda| {
            classes
                .iter()
                .map(|rho| mn_rec(lambda, rho.partition().parts(), true))
                .collect()
        })
        .collect();
    Ok(CharacterTable {
        characters,
        classes,
        values,
    })
}
