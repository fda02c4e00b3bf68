//! Explicit wreath products `N ≀ S_w` with conjugacy classes found by orbit
//! enumeration.
//!
//! An element `(h; σ)` acts on `N × {0..w-1}` by `(n, i) ↦ (h_{σ(i)} n, σ(i))`,
//! so `(h; σ)(h'; σ') = (k; σσ')` with `k_j = h_j · h'_{σ⁻¹(j)}`. With this
//! law the cycle product `h_j · h_{σ⁻¹(j)} · h_{σ⁻²(j)} ⋯` of each cycle is a
//! class invariant up to conjugacy in `N`.

use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::oracle::base::BaseGroup;
use crate::partitions::{MultiPartition, Partition};
use crate::sn_char::factorial;

pub const DEFAULT_ELEMENT_GUARD: usize = 1_000_000;

/// Element guard, overridable through `WREATH_GUARD_ELEMS`.
pub fn element_guard() -> usize {
    std::env::var("WREATH_GUARD_ELEMS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ELEMENT_GUARD)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathElement {
    pub h: Vec<u16>,
    /// One-line notation: `perm[i] = σ(i)`.
    pub perm: Vec<u8>,
}

impl WreathElement {
    pub fn identity(w: usize) -> Self {
        WreathElement {
            h: vec![0; w],
            perm: (0..w as u8).collect(),
        }
    }

    pub fn w(&self) -> usize {
        self.perm.len()
    }

    fn inverse_perm(&self) -> Vec<u8> {
        let mut inv = vec![0u8; self.perm.len()];
        for (i, &s) in self.perm.iter().enumerate() {
            inv[s as usize] = i as u8;
        }
        inv
    }

    /// Cycles of `σ`, each listed from its smallest point along `σ⁻¹`.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let inv = self.inverse_perm();
        let mut seen = vec![false; self.w()];
        let mut cycles = Vec::new();
        for start in 0..self.w() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cycle.push(j);
                j = inv[j] as usize;
            }
            cycles.push(cycle);
        }
        cycles
    }
}

pub fn multiply(base: &BaseGroup, x: &WreathElement, y: &WreathElement) -> WreathElement {
    let inv = x.inverse_perm();
    let h = (0..x.w())
        .map(|j| base.mul(x.h[j], y.h[inv[j] as usize]))
        .collect();
    let perm = y.perm.iter().map(|&i| x.perm[i as usize]).collect();
    WreathElement { h, perm }
}

pub fn invert(base: &BaseGroup, x: &WreathElement) -> WreathElement {
    let h = (0..x.w())
        .map(|j| base.inv(x.h[x.perm[j] as usize]))
        .collect();
    WreathElement {
        h,
        perm: x.inverse_perm(),
    }
}

/// `x g x⁻¹`.
pub fn conjugate(base: &BaseGroup, x: &WreathElement, g: &WreathElement) -> WreathElement {
    multiply(base, &multiply(base, x, g), &invert(base, x))
}

/// One base-group element per cycle of `σ`, with the cycle length, in the
/// order of [`WreathElement::cycles`].
pub fn cycle_products(base: &BaseGroup, e: &WreathElement) -> Vec<(usize, u16)> {
    e.cycles()
        .into_iter()
        .map(|cycle| {
            let product = cycle
                .iter()
                .fold(base.identity(), |acc, &j| base.mul(acc, e.h[j]));
            (cycle.len(), product)
        })
        .collect()
}

/// The `s`-tuple of partitions recording, for each class of `N`, the lengths
/// of the cycles whose product lies in that class.
pub fn cycle_structure(base: &BaseGroup, e: &WreathElement) -> MultiPartition {
    let mut lengths = vec![Vec::new(); base.class_count()];
    for (len, g) in cycle_products(base, e) {
        lengths[base.class_of(g)].push(len);
    }
    MultiPartition::full(
        lengths
            .into_iter()
            .map(|mut l| {
                l.sort_unstable_by(|a, b| b.cmp(a));
                Partition::from_sorted(l)
            })
            .collect(),
    )
}

#[derive(Clone, Debug)]
pub struct ClassData {
    pub label: MultiPartition,
    pub representative: WreathElement,
    pub size: usize,
}

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug)]
pub struct WreathGroup {
    id: u64,
    base: Arc<BaseGroup>,
    w: usize,
    perms: Vec<Vec<u8>>,
    perm_index: HashMap<Vec<u8>, usize>,
    base_power: usize,
    order: usize,
    class_of: Vec<u32>,
    classes: Vec<ClassData>,
}

impl WreathGroup {
    pub fn new(base: Arc<BaseGroup>, w: usize, guard: usize) -> Result<Self> {
        let n = base.order();
        let order = (0..w)
            .try_fold(1usize, |acc, _| acc.checked_mul(n))
            .and_then(|x| x.checked_mul(factorial(w).try_into().ok()?));
        let order = match order {
            Some(o) if o <= guard => o,
            Some(o) => return Err(Error::GuardExceeded { order: o, guard }),
            None => {
                return Err(Error::GuardExceeded {
                    order: usize::MAX,
                    guard,
                })
            }
        };
        let perms: Vec<Vec<u8>> = (0..w as u8).permutations(w).collect();
        let perm_index = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let mut group = WreathGroup {
            id: NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed),
            base,
            w,
            perms,
            perm_index,
            base_power: n.pow(w as u32),
            order,
            class_of: Vec::new(),
            classes: Vec::new(),
        };
        group.compute_classes();
        Ok(group)
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn base(&self) -> &Arc<BaseGroup> {
        &self.base
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn classes(&self) -> &[ClassData] {
        &self.classes
    }

    pub fn index(&self, e: &WreathElement) -> usize {
        let n = self.base.order();
        let coords = e.h.iter().rev().fold(0, |acc, &x| acc * n + x as usize);
        self.perm_index[&e.perm] * self.base_power + coords
    }

    pub fn element(&self, idx: usize) -> WreathElement {
        let n = self.base.order();
        let mut rest = idx % self.base_power;
        let h = (0..self.w)
            .map(|_| {
                let x = rest % n;
                rest /= n;
                x as u16
            })
            .collect();
        WreathElement {
            h,
            perm: self.perms[idx / self.base_power].clone(),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = WreathElement> + '_ {
        (0..self.order).map(|i| self.element(i))
    }

    pub fn class_of(&self, e: &WreathElement) -> usize {
        self.class_of[self.index(e)] as usize
    }

    pub fn multiply(&self, x: &WreathElement, y: &WreathElement) -> WreathElement {
        multiply(&self.base, x, y)
    }

    pub fn conjugate(&self, x: &WreathElement, g: &WreathElement) -> WreathElement {
        conjugate(&self.base, x, g)
    }

    /// Conjugation by these elements generates the whole conjugation action:
    /// every base element in coordinate 0, a transposition and a long cycle.
    fn generators(&self) -> Vec<WreathElement> {
        let mut gens: Vec<WreathElement> = (0..self.base.order() as u16)
            .filter(|_| self.w > 0)
            .map(|x| {
                let mut e = WreathElement::identity(self.w);
                e.h[0] = x;
                e
            })
            .collect();
        if self.w >= 2 {
            let mut swap = WreathElement::identity(self.w);
            swap.perm.swap(0, 1);
            let mut cycle = WreathElement::identity(self.w);
            cycle.perm = (0..self.w).map(|i| ((i + 1) % self.w) as u8).collect();
            gens.push(swap);
            gens.push(cycle);
        }
        gens
    }

    fn compute_classes(&mut self) {
        let gens = self.generators();
        let mut class_of = vec![u32::MAX; self.order];
        let mut classes = Vec::new();
        for start in 0..self.order {
            if class_of[start] != u32::MAX {
                continue;
            }
            let c = classes.len() as u32;
            let representative = self.element(start);
            class_of[start] = c;
            let mut stack = vec![representative.clone()];
            let mut size = 1;
            while let Some(g) = stack.pop() {
                for x in &gens {
                    let y = conjugate(&self.base, x, &g);
                    let yi = self.index(&y);
                    if class_of[yi] == u32::MAX {
                        class_of[yi] = c;
                        size += 1;
                        stack.push(y);
                    }
                }
            }
            classes.push(ClassData {
                label: cycle_structure(&self.base, &representative),
                representative,
                size,
            });
        }
        self.class_of = class_of;
        self.classes = classes;
    }

    /// Checks that the orbit classes coincide with the cycle-structure
    /// classes: every element carries its class label, and labels are
    /// pairwise distinct.
    pub fn verify_cycle_structure(&self) -> Result<()> {
        let labels: HashSet<&MultiPartition> = self.classes.iter().map(|c| &c.label).collect();
        if labels.len() != self.classes.len() {
            return Err(Error::Inconsistent(
                "two orbit classes share a cycle structure".into(),
            ));
        }
        for (idx, &c) in self.class_of.iter().enumerate() {
            let e = self.element(idx);
            if cycle_structure(&self.base, &e) != self.classes[c as usize].label {
                return Err(Error::Inconsistent(format!(
                    "{e:?} has a different cycle structure from its class representative"
                )));
            }
        }
        Ok(())
    }

    /// `|C(g)| = Π_{c, k} k^{m} m! |C_N(g_c)|^{m}`, where `m` counts the
    /// `k`-cycles with product in class `c`.
    pub fn centralizer_order_formula(&self, label: &MultiPartition) -> u128 {
        label
            .components()
            .iter()
            .enumerate()
            .map(|(c, part)| {
                let cent = self.base.centralizer_order(c) as u128;
                part.multiplicities()
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(k, &m)| (k as u128).pow(m as u32) * factorial(m) * cent.pow(m as u32))
                    .product::<u128>()
            })
            .product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::base::base_group;
    use crate::partitions::generate_multipartitions;

    #[test]
    fn group_law() {
        let model = base_group(3).unwrap();
        let group = WreathGroup::new(model.g.clone(), 2, DEFAULT_ELEMENT_GUARD).unwrap();
        let id = WreathElement::identity(2);
        for i in (0..group.order()).step_by(7) {
            let x = group.element(i);
            assert_eq!(group.index(&x), i);
            assert_eq!(group.multiply(&x, &invert(&model.g, &x)), id);
            for j in (0..group.order()).step_by(11) {
                let y = group.element(j);
                for k in (0..group.order()).step_by(13) {
                    let z = group.element(k);
                    assert_eq!(
                        group.multiply(&group.multiply(&x, &y), &z),
                        group.multiply(&x, &group.multiply(&y, &z))
                    );
                }
            }
        }
    }

    #[test]
    fn cycle_products_follow_inverse_cycle() {
        let model = base_group(5).unwrap();
        let base = &model.g;
        let e = WreathElement {
            h: vec![3, 7, 11],
            perm: vec![0, 1, 2],
        };
        assert_eq!(cycle_products(base, &e), vec![(1, 3), (1, 7), (1, 11)]);
        // σ = (0 1): σ⁻¹(0) = 1, product h_0 · h_1
        let e = WreathElement {
            h: vec![5, 9],
            perm: vec![1, 0],
        };
        assert_eq!(cycle_products(base, &e), vec![(2, base.mul(5, 9))]);
        // σ = (0 1 2): σ⁻¹(0) = 2, σ⁻²(0) = 1
        let e = WreathElement {
            h: vec![5, 9, 13],
            perm: vec![1, 2, 0],
        };
        assert_eq!(
            cycle_products(base, &e),
            vec![(3, base.mul(base.mul(5, 13), 9))]
        );
    }

    #[test]
    fn conjugate_elements_have_conjugate_cycle_products() {
        let model = base_group(3).unwrap();
        let base = &model.g;
        let group = WreathGroup::new(base.clone(), 3, DEFAULT_ELEMENT_GUARD).unwrap();
        for i in (0..group.order()).step_by(17) {
            let g = group.element(i);
            let mut before: Vec<(usize, usize)> = cycle_products(base, &g)
                .into_iter()
                .map(|(l, x)| (l, base.class_of(x)))
                .collect();
            before.sort();
            for j in (0..group.order()).step_by(29) {
                let y = group.conjugate(&group.element(j), &g);
                let mut after: Vec<(usize, usize)> = cycle_products(base, &y)
                    .into_iter()
                    .map(|(l, x)| (l, base.class_of(x)))
                    .collect();
                after.sort();
                assert_eq!(before, after);
            }
        }
    }

    #[test]
    fn classes_match_cycle_structures() {
        for (p, max_w) in [(3, 3), (5, 2)] {
            let model = base_group(p).unwrap();
            for base in [&model.g, &model.h] {
                for w in 1..=max_w {
                    let group = WreathGroup::new(base.clone(), w, DEFAULT_ELEMENT_GUARD).unwrap();
                    group.verify_cycle_structure().unwrap();
                    assert_eq!(
                        group.classes().len(),
                        generate_multipartitions(w, base.class_count()).len()
                    );
                    let total: usize = group.classes().iter().map(|c| c.size).sum();
                    assert_eq!(total, group.order());
                    for class in group.classes() {
                        assert_eq!(
                            group.centralizer_order_formula(&class.label),
                            (group.order() / class.size) as u128
                        );
                    }
                }
            }
        }
        let g2 = WreathGroup::new(base_group(3).unwrap().g, 2, DEFAULT_ELEMENT_GUARD).unwrap();
        assert_eq!(g2.classes().len(), 9);
    }

    #[test]
    fn trivial_and_single_coordinate_groups() {
        let model = base_group(3).unwrap();
        let g0 = WreathGroup::new(model.g.clone(), 0, DEFAULT_ELEMENT_GUARD).unwrap();
        assert_eq!(g0.order(), 1);
        assert_eq!(g0.classes().len(), 1);
        let g1 = WreathGroup::new(model.g.clone(), 1, DEFAULT_ELEMENT_GUARD).unwrap();
        assert_eq!(g1.classes().len(), model.g.class_count());
        let sizes: Vec<usize> = g1.classes().iter().map(|c| c.size).collect();
        let mut base_sizes = model.g.class_sizes().to_vec();
        let mut sorted = sizes.clone();
        sorted.sort();
        base_sizes.sort();
        assert_eq!(sorted, base_sizes);
    }

    #[test]
    fn guard() {
        let model = base_group(5).unwrap();
        assert!(matches!(
            WreathGroup::new(model.g.clone(), 3, 1000),
            Err(Error::GuardExceeded {
                order: 48000,
                guard: 1000
            })
        ));
    }
}
