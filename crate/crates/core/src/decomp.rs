//! Label-level decomposition of `Ind_{H_w}^{G_w}` and `Res^{G_w}_{H_w}`.
//!
//! Irreducible characters of `G_w` are labelled by `p`-multipartitions of `w`
//! ([`GLabel`]), those of `H_w` by `(p-1)`-multipartitions whose positions run
//! over `I = {1..p} \ {r}` with `r = (p+1)/2` ([`HLabel`]). The multiplicity of
//! `χ^γ` in `Ind(ξ^α)` is
//!
//! ```text
//! k_{α,γ} = Σ_{β^i ⊢ |α^i| - |γ^i|, i ∈ I} (Π_{i ∈ I} c^{α^i}_{β^i,γ^i}) · c^{γ^r}_{(β^i)}
//! ```
//!
//! No group is ever built here.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{check_odd_prime, Error, Result};
use crate::lr::{induce_product, iterated_lr, lr_coefficient, restriction_expansion};
use crate::partitions::{
    generate_multipartitions, generate_partitions, hat, p_core_and_quotient, unhat, Indexing,
    MultiPartition, Partition,
};
use crate::sn_char::{degree, factorial};

/// `r = (p+1)/2`.
pub fn middle(p: usize) -> usize {
    p.div_ceil(2)
}

/// Label of an irreducible character of `G_w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GLabel {
    p: usize,
    label: MultiPartition,
}

/// Label of an irreducible character of `H_w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HLabel {
    p: usize,
    label: MultiPartition,
}

impl GLabel {
    pub fn new(p: usize, components: Vec<Partition>) -> Result<Self> {
        check_odd_prime(p)?;
        if components.len() != p {
            return Err(Error::SizeMismatch {
                expected: p,
                actual: components.len(),
            });
        }
        Ok(GLabel {
            p,
            label: MultiPartition::full(components),
        })
    }

    /// All labels of weight `w`, in enumeration order.
    pub fn all(p: usize, w: usize) -> Result<Vec<Self>> {
        check_odd_prime(p)?;
        Ok(generate_multipartitions(w, p)
            .into_iter()
            .map(|label| GLabel { p, label })
            .collect())
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn weight(&self) -> usize {
        self.label.weight()
    }

    pub fn label(&self) -> &MultiPartition {
        &self.label
    }

    /// Component at 1-based position `pos`.
    pub fn at(&self, pos: usize) -> &Partition {
        self.label.component(pos - 1)
    }

    /// The component `γ^r`.
    pub fn middle(&self) -> &Partition {
        self.at(middle(self.p))
    }

    /// The `H`-label `α` with `hat(α) = self`, if `γ^r = ∅`.
    pub fn unhat(&self) -> Option<HLabel> {
        unhat(&self.label).map(|label| HLabel { p: self.p, label })
    }

    pub fn degree(&self) -> u128 {
        degree_g(self)
    }
}

impl HLabel {
    /// `components` are listed in the order of the positions in `I`.
    pub fn new(p: usize, components: Vec<Partition>) -> Result<Self> {
        check_odd_prime(p)?;
        if components.len() != p - 1 {
            return Err(Error::SizeMismatch {
                expected: p - 1,
                actual: components.len(),
            });
        }
        Ok(HLabel {
            p,
            label: MultiPartition::reduced(components),
        })
    }

    pub fn all(p: usize, w: usize) -> Result<Vec<Self>> {
        check_odd_prime(p)?;
        Ok(generate_multipartitions(w, p - 1)
            .into_iter()
            .map(|label| HLabel {
                p,
                label: label.with_indexing(Indexing::Reduced),
            })
            .collect())
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn weight(&self) -> usize {
        self.label.weight()
    }

    pub fn label(&self) -> &MultiPartition {
        &self.label
    }

    /// `(position in I, component)` pairs.
    pub fn positioned(&self) -> impl Iterator<Item = (usize, &Partition)> {
        self.label
            .components()
            .iter()
            .enumerate()
            .map(|(idx, c)| (self.label.position(idx), c))
    }

    pub fn hat(&self) -> GLabel {
        GLabel {
            p: self.p,
            label: hat(&self.label),
        }
    }

    pub fn degree(&self) -> u128 {
        degree_h(self)
    }
}

impl fmt::Display for GLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.label.fmt(f)
    }
}

impl fmt::Display for HLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.label.fmt(f)
    }
}

fn check_compatible(alpha: &HLabel, gamma: &GLabel) -> Result<()> {
    if alpha.p != gamma.p {
        return Err(Error::LabelMismatch(format!(
            "p = {} for {alpha} but p = {} for {gamma}",
            alpha.p, gamma.p
        )));
    }
    if alpha.weight() != gamma.weight() {
        return Err(Error::LabelMismatch(format!(
            "weight {} for {alpha} but {} for {gamma}",
            alpha.weight(),
            gamma.weight()
        )));
    }
    Ok(())
}

/// Multiplicity of `χ^γ` in `Ind_{H_w}^{G_w}(ξ^α)`, straight from the sum
/// over the `β`-tuples.
pub fn k_coefficient(alpha: &HLabel, gamma: &GLabel) -> Result<u64> {
    check_compatible(alpha, gamma)?;
    let mut options: Vec<Vec<(Partition, u64)>> = Vec::with_capacity(alpha.p - 1);
    let mut removed = 0;
    for (pos, a) in alpha.positioned() {
        let g = gamma.at(pos);
        let Some(d) = a.size().checked_sub(g.size()) else {
            return Ok(0);
        };
        removed += d;
        let terms: Vec<(Partition, u64)> = generate_partitions(d)
            .into_iter()
            .filter_map(|beta| {
                let c = lr_coefficient(a, &beta, g);
                (c > 0).then_some((beta, c))
            })
            .collect();
        if terms.is_empty() {
            return Ok(0);
        }
        options.push(terms);
    }
    if removed != gamma.middle().size() {
        return Ok(0);
    }
    let mut total = 0;
    for choice in options.iter().map(|o| o.iter()).multi_cartesian_product() {
        let betas: Vec<Partition> = choice.iter().map(|(b, _)| b.clone()).collect();
        let outer = iterated_lr(gamma.middle(), &betas);
        if outer > 0 {
            total += choice.iter().map(|(_, c)| c).product::<u64>() * outer;
        }
    }
    Ok(total)
}

/// `(β, γ, c^α_{β,γ})` terms of one component's restriction.
type SlotTerms = Vec<(Partition, Partition, u64)>;

/// `Ind_{H_w}^{G_w}(ξ^α)` as a map `γ ↦ k_{α,γ}` (positive entries only),
/// built by expanding each `α^i` over its two-factor restrictions and
/// inducing the removed pieces together into the `r`-th slot.
pub fn induce_h_to_g(alpha: &HLabel) -> BTreeMap<GLabel, u64> {
    let p = alpha.p;
    let r = middle(p);
    let per_slot: Vec<(usize, SlotTerms)> = alpha
        .positioned()
        .map(|(pos, a)| {
            let terms = (0..=a.size())
                .flat_map(|j| restriction_expansion(a, j).expect("j is in range"))
                .collect();
            (pos, terms)
        })
        .collect();

    let mut out = BTreeMap::new();
    for choice in per_slot
        .iter()
        .map(|(_, t)| t.iter())
        .multi_cartesian_product()
    {
        let coeff: u64 = choice.iter().map(|(_, _, c)| c).product();
        let betas: Vec<Partition> = choice.iter().map(|(b, _, _)| b.clone()).collect();
        let mut components = vec![Partition::empty(); p];
        for ((pos, _), (_, g, _)) in per_slot.iter().zip(&choice) {
            components[pos - 1] = g.clone();
        }
        for (mid, m) in induce_product(&betas) {
            components[r - 1] = mid;
            let gamma = GLabel {
                p,
                label: MultiPartition::full(components.clone()),
            };
            *out.entry(gamma).or_insert(0) += coeff * m;
        }
    }
    out
}

/// `Res^{G_w}_{H_w}(χ^γ)` as a map `α ↦ k_{α,γ}` (positive entries only).
pub fn restrict_g_to_h(gamma: &GLabel) -> BTreeMap<HLabel, u64> {
    if let Some(alpha) = gamma.unhat() {
        return BTreeMap::from([(alpha, 1)]);
    }
    HLabel::all(gamma.p, gamma.weight())
        .expect("p was validated")
        .into_iter()
        .filter(|alpha| {
            alpha
                .positioned()
                .all(|(pos, a)| a.size() >= gamma.at(pos).size())
        })
        .filter_map(|alpha| {
            let k = k_coefficient(&alpha, gamma).expect("compatible labels");
            (k > 0).then_some((alpha, k))
        })
        .collect()
}

/// Same as [`restrict_g_to_h`] but always evaluates the LR sum, including
/// for `γ^r = ∅`.
pub fn restrict_g_to_h_by_formula(gamma: &GLabel) -> BTreeMap<HLabel, u64> {
    HLabel::all(gamma.p, gamma.weight())
        .expect("p was validated")
        .into_iter()
        .filter_map(|alpha| {
            let k = k_coefficient(&alpha, gamma).expect("compatible labels");
            (k > 0).then_some((alpha, k))
        })
        .collect()
}

/// `χ^γ(1) = (w! / Π |γ^i|!) · (p-1)^{|γ^r|} · Π χ_{γ^i}(1)`.
pub fn degree_g(gamma: &GLabel) -> u128 {
    let comps = gamma.label.components();
    let multinomial =
        factorial(gamma.weight()) / comps.iter().map(|c| factorial(c.size())).product::<u128>();
    let psi_r = (gamma.p as u128 - 1).pow(gamma.middle().size() as u32);
    multinomial * psi_r * comps.iter().map(degree).product::<u128>()
}

/// `ξ^α(1) = (w! / Π |α^i|!) · Π χ_{α^i}(1)`.
pub fn degree_h(alpha: &HLabel) -> u128 {
    let comps = alpha.label.components();
    let multinomial =
        factorial(alpha.weight()) / comps.iter().map(|c| factorial(c.size())).product::<u128>();
    multinomial * comps.iter().map(degree).product::<u128>()
}

/// Sparse matrix of `k_{α,γ}`: rows are `H`-labels, columns `G`-labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionMatrix {
    pub p: usize,
    pub w: usize,
    pub rows: Vec<HLabel>,
    pub cols: Vec<GLabel>,
    /// `(row, col) ↦ value`, zero entries omitted.
    pub entries: BTreeMap<(usize, usize), u64>,
}

impl DecompositionMatrix {
    pub fn build(p: usize, w: usize) -> Result<Self> {
        let rows = HLabel::all(p, w)?;
        let cols = GLabel::all(p, w)?;
        let col_index: HashMap<&GLabel, usize> =
            cols.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let row_maps: Vec<BTreeMap<GLabel, u64>> = rows.par_iter().map(induce_h_to_g).collect();
        let mut entries = BTreeMap::new();
        for (r, map) in row_maps.into_iter().enumerate() {
            for (gamma, v) in map {
                entries.insert((r, col_index[&gamma]), v);
            }
        }
        Ok(DecompositionMatrix {
            p,
            w,
            rows,
            cols,
            entries,
        })
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.entries.get(&(row, col)).copied().unwrap_or(0)
    }

    /// Ordered `(row, col, value)` triples.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.entries.iter().map(|(&(r, c), &v)| (r, c, v))
    }

    pub fn column(&self, col: usize) -> Vec<u64> {
        (0..self.rows.len()).map(|r| self.get(r, col)).collect()
    }

    /// `K^T K`, indexed by the columns.
    pub fn gram(&self) -> GramMatrix {
        let n = self.cols.len();
        let mut by_row: Vec<Vec<(usize, u64)>> = vec![Vec::new(); self.rows.len()];
        for (r, c, v) in self.triples() {
            by_row[r].push((c, v));
        }
        let mut values = vec![vec![0u64; n]; n];
        for row in &by_row {
            for &(a, x) in row {
                for &(b, y) in row {
                    values[a][b] += x * y;
                }
            }
        }
        GramMatrix {
            p: self.p,
            w: self.w,
            labels: self.cols.clone(),
            values,
        }
    }
}

/// Inner products `⟨Res χ^{γ₁}, Res χ^{γ₂}⟩_{H_w}` over all pairs of `G`-labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    pub p: usize,
    pub w: usize,
    pub labels: Vec<GLabel>,
    pub values: Vec<Vec<u64>>,
}

impl GramMatrix {
    pub fn is_symmetric(&self) -> bool {
        let n = self.labels.len();
        (0..n).all(|i| (0..i).all(|j| self.values[i][j] == self.values[j][i]))
    }

    pub fn determinant(&self) -> BigInt {
        determinant(&self.values)
    }

    /// Principal submatrix on the given label indices.
    pub fn submatrix(&self, idx: &[usize]) -> Vec<Vec<u64>> {
        idx.iter()
            .map(|&i| idx.iter().map(|&j| self.values[i][j]).collect())
            .collect()
    }
}

pub fn gram_matrix(p: usize, w: usize) -> Result<GramMatrix> {
    Ok(DecompositionMatrix::build(p, w)?.gram())
}

/// Exact determinant by fraction-free (Bareiss) elimination with row pivoting.
pub fn determinant(m: &[Vec<u64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(pivot) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if pivot != k {
            a.swap(pivot, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * &a[n - 1][n - 1]
    }
}

/// Partitions of `n` whose `p`-quotient has an empty `r`-th component.
pub fn basic_set(n: usize, p: usize) -> Result<Vec<Partition>> {
    check_odd_prime(p)?;
    let r = middle(p);
    let mut out = Vec::new();
    for lambda in generate_partitions(n) {
        if p_core_and_quotient(&lambda, p)?
            .quotient
            .component(r - 1)
            .is_empty()
        {
            out.push(lambda);
        }
    }
    Ok(out)
}

/// A `p`-block of `S_n`: all partitions sharing a `p`-core.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    #[serde(serialize_with = "as_text")]
    pub core: Partition,
    pub weight: usize,
    #[serde(serialize_with = "all_as_text")]
    pub members: Vec<Partition>,
}

fn as_text<S: serde::Serializer>(p: &Partition, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(p)
}

fn all_as_text<S: serde::Serializer>(
    ps: &[Partition],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(ps.iter().map(ToString::to_string))
}

/// Partitions of `n` grouped by `p`-core. Blocks appear in order of their
/// first member in the enumeration order; members keep that order too.
pub fn block_partition(n: usize, p: usize) -> Result<Vec<Block>> {
    check_odd_prime(p)?;
    let mut blocks: Vec<Block> = Vec::new();
    let mut index: HashMap<Partition, usize> = HashMap::new();
    for lambda in generate_partitions(n) {
        let pq = p_core_and_quotient(&lambda, p)?;
        let slot = *index.entry(pq.core.clone()).or_insert_with(|| {
            blocks.push(Block {
                core: pq.core.clone(),
                weight: pq.weight,
                members: Vec::new(),
            });
            blocks.len() - 1
        });
        blocks[slot].members.push(lambda);
    }
    Ok(blocks)
}
