//! Littlewood–Richardson coefficients and their multi-factor iterates.
//!
//! `c^α_{β,γ}` is the number of semistandard skew tableaux of shape `α/β` and
//! content `γ` whose reverse reading word (right to left, top to bottom) is a
//! lattice word. Results are memoized; the cache is shared across threads.

use std::collections::{BTreeMap, HashMap};
use std::sync::{LazyLock, RwLock};

use crate::error::{Error, Result};
use crate::partitions::{generate_partitions, Partition};

/// `outer / inner` with `inner ⊆ outer`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Option<Self> {
        outer.contains(&inner).then_some(SkewShape { outer, inner })
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }

    /// Number of LR tableaux of this shape with the given content.
    pub fn count_lr_tableaux(&self, content: &Partition) -> u64 {
        if content.size() != self.size() {
            return 0;
        }
        if self.size() == 0 {
            return 1;
        }
        let cells: Vec<(usize, usize)> = (0..self.outer.len())
            .flat_map(|i| {
                (self.inner.part(i)..self.outer.part(i))
                    .rev()
                    .map(move |j| (i, j))
            })
            .collect();
        let mut search = LrSearch {
            shape: self,
            content: content.parts(),
            cells: &cells,
            fill: self
                .outer
                .parts()
                .iter()
                .map(|&len| vec![0u8; len])
                .collect(),
            used: vec![0; content.len() + 1],
        };
        search.run(0)
    }
}

struct LrSearch<'a> {
    shape: &'a SkewShape,
    content: &'a [usize],
    cells: &'a [(usize, usize)],
    fill: Vec<Vec<u8>>,
    used: Vec<usize>,
}

impl LrSearch<'_> {
    fn run(&mut self, at: usize) -> u64 {
        let Some(&(i, j)) = self.cells.get(at) else {
            return 1;
        };
        // rows weakly increase left to right; the cell to the right is filled
        let max = if j + 1 < self.shape.outer.part(i) {
            self.fill[i][j + 1] as usize
        } else {
            self.content.len()
        };
        // columns strictly increase downwards
        let min = if i > 0 && j >= self.shape.inner.part(i - 1) {
            self.fill[i - 1][j] as usize + 1
        } else {
            1
        };
        let mut total = 0;
        for v in min..=max {
            if self.used[v] >= self.content[v - 1] {
                continue;
            }
            // lattice condition on the reading word so far
            if v > 1 && self.used[v] + 1 > self.used[v - 1] {
                continue;
            }
            self.used[v] += 1;
            self.fill[i][j] = v as u8;
            total += self.run(at + 1);
            self.used[v] -= 1;
        }
        self.fill[i][j] = 0;
        total
    }
}

type LrKey = (Partition, Partition, Partition);

static LR_CACHE: LazyLock<RwLock<HashMap<LrKey, u64>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// `c^{outer}_{left,right}`; zero whenever the sizes do not add up or either
/// factor does not fit inside `outer`.
pub fn lr_coefficient(outer: &Partition, left: &Partition, right: &Partition) -> u64 {
    if outer.size() != left.size() + right.size() || !outer.contains(left) || !outer.contains(right)
    {
        return 0;
    }
    if left.is_empty() || right.is_empty() {
        return 1;
    }
    let key = (outer.clone(), left.clone(), right.clone());
    if let Some(&v) = LR_CACHE.read().unwrap().get(&key) {
        return v;
    }
    let v = SkewShape::new(outer.clone(), left.clone())
        .map_or(0, |shape| shape.count_lr_tableaux(right));
    LR_CACHE.write().unwrap().insert(key, v);
    v
}

/// Decomposition of `χ_left × χ_right` induced up from the Young subgroup.
pub fn product_expansion(left: &Partition, right: &Partition) -> Vec<(Partition, u64)> {
    generate_partitions(left.size() + right.size())
        .into_iter()
        .filter_map(|nu| {
            let c = lr_coefficient(&nu, left, right);
            (c > 0).then_some((nu, c))
        })
        .collect()
}

/// Decomposition of the product of several characters induced up from the
/// Young subgroup, as a map from partitions to multiplicities.
pub fn induce_product(factors: &[Partition]) -> BTreeMap<Partition, u64> {
    let mut acc = BTreeMap::from([(Partition::empty(), 1u64)]);
    for factor in factors {
        if factor.is_empty() {
            continue;
        }
        let mut next = BTreeMap::new();
        for (mu, m) in &acc {
            for (nu, c) in product_expansion(mu, factor) {
                *next.entry(nu).or_insert(0) += m * c;
            }
        }
        acc = next;
    }
    acc
}

/// Multiplicity of `χ_target` in the induced product of `factors`.
pub fn iterated_lr(target: &Partition, factors: &[Partition]) -> u64 {
    if target.size() != factors.iter().map(Partition::size).sum::<usize>() {
        return 0;
    }
    match factors.iter().filter(|f| !f.is_empty()).count() {
        0 => u64::from(target.is_empty()),
        1 => u64::from(factors.iter().any(|f| f == target)),
        _ => induce_product(factors).get(target).copied().unwrap_or(0),
    }
}

/// All nonzero terms `(β ⊢ j, γ ⊢ |α| - j, c^α_{β,γ})` of the restriction of
/// `χ_α` to `S_j × S_{|α|-j}`.
pub fn restriction_expansion(
    alpha: &Partition,
    j: usize,
) -> Result<Vec<(Partition, Partition, u64)>> {
    if j > alpha.size() {
        return Err(Error::OutOfRange {
            what: "j",
            value: j,
            range: format!("0..={}", alpha.size()),
        });
    }
    let rights = generate_partitions(alpha.size() - j);
    let mut terms = Vec::new();
    for beta in generate_partitions(j)
        .into_iter()
        .filter(|b| alpha.contains(b))
    {
        for gamma in &rights {
            let c = lr_coefficient(alpha, &beta, gamma);
            if c > 0 {
                terms.push((beta.clone(), gamma.clone(), c));
            }
        }
    }
    Ok(terms)
}
