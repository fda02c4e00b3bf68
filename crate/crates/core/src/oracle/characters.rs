//! Class functions on explicit wreath products, parametrized characters by
//! averaging induction, and restriction/induction between `H_w ⊂ G_w`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::oracle::base::{BaseCharacter, RootValue};
use crate::oracle::wreath::{cycle_products, WreathElement, WreathGroup};
use crate::partitions::{generate_partitions, MultiPartition, Partition};
use crate::sn_char::{factorial, mn_value, CycleType};

/// Values on the classes of one group, in the group's class order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    group_id: u64,
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn new(group: &WreathGroup, values: Vec<Cyclotomic>) -> Result<Self> {
        if values.len() != group.classes().len() {
            return Err(Error::SizeMismatch {
                expected: group.classes().len(),
                actual: values.len(),
            });
        }
        Ok(ClassFunction {
            group_id: group.id(),
            values,
        })
    }

    pub fn group_id(&self) -> u64 {
        self.group_id
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    pub fn try_add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        same_group(self.group_id, other.group_id)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<_>>()?;
        Ok(ClassFunction {
            group_id: self.group_id,
            values,
        })
    }

    pub fn scale(&self, q: &BigRational) -> ClassFunction {
        ClassFunction {
            group_id: self.group_id,
            values: self.values.iter().map(|v| v.scale(q)).collect(),
        }
    }
}

fn same_group(a: u64, b: u64) -> Result<()> {
    if a != b {
        return Err(Error::LabelMismatch(
            "class functions live on different groups".into(),
        ));
    }
    Ok(())
}

fn rational(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `(1/|group|) Σ_classes size · a · conj(b)`, required to be rational.
pub fn inner_product(
    group: &WreathGroup,
    a: &ClassFunction,
    b: &ClassFunction,
) -> Result<BigRational> {
    same_group(a.group_id, group.id())?;
    same_group(b.group_id, group.id())?;
    let mut total: Option<Cyclotomic> = None;
    for ((class, x), y) in group.classes().iter().zip(&a.values).zip(&b.values) {
        let term = x.try_mul(&y.conjugate())?.scale(&rational(class.size));
        total = Some(match total {
            None => term,
            Some(t) => t.try_add(&term)?,
        });
    }
    let total = total.expect("a group has at least one class");
    total
        .as_rational()
        .map(|q| q / rational(group.order()))
        .ok_or_else(|| Error::Inconsistent(format!("inner product {total} is not rational")))
}

/// Inner product that must be a nonnegative integer, as for multiplicities.
pub fn multiplicity(group: &WreathGroup, a: &ClassFunction, b: &ClassFunction) -> Result<u64> {
    let q = inner_product(group, a, b)?;
    if !q.is_integer() || q < BigRational::zero() {
        return Err(Error::Inconsistent(format!(
            "multiplicity {q} is not a nonnegative integer"
        )));
    }
    q.to_integer()
        .try_into()
        .map_err(|_| Error::Inconsistent(format!("multiplicity {q} overflows")))
}

/// `Ω^α` on the Young subgroup `N^w ⋊ (S_{k_1} × ⋯ × S_{k_s})`, blocks of
/// coordinates taken consecutively in label order.
struct YoungCharacter<'a> {
    block_of: Vec<usize>,
    factors: Vec<&'a BaseCharacter>,
    sn_values: Vec<HashMap<Partition, i64>>,
    root_order: u32,
    subgroup_order: BigRational,
}

impl<'a> YoungCharacter<'a> {
    fn new(group: &'a WreathGroup, label: &MultiPartition) -> Result<Self> {
        let base = group.base();
        if label.len() != base.characters().len() {
            return Err(Error::SizeMismatch {
                expected: base.characters().len(),
                actual: label.len(),
            });
        }
        if label.weight() != group.w() {
            return Err(Error::SizeMismatch {
                expected: group.w(),
                actual: label.weight(),
            });
        }
        let block_of = label
            .components()
            .iter()
            .enumerate()
            .flat_map(|(c, part)| std::iter::repeat_n(c, part.size()))
            .collect();
        let sn_values = label
            .components()
            .iter()
            .map(|part| {
                generate_partitions(part.size())
                    .into_iter()
                    .map(|rho| {
                        let v = mn_value(part, &CycleType(rho.clone()))?;
                        Ok((rho, v))
                    })
                    .collect::<Result<HashMap<_, _>>>()
            })
            .collect::<Result<_>>()?;
        let young: u128 = label
            .components()
            .iter()
            .map(|c| factorial(c.size()))
            .product();
        let subgroup_order = BigRational::from_integer(
            BigInt::from(young) * BigInt::from(base.order()).pow(group.w() as u32),
        );
        Ok(YoungCharacter {
            block_of,
            factors: base.characters().iter().collect(),
            sn_values,
            root_order: base.root_order(),
            subgroup_order,
        })
    }

    /// `Ω^α(e)`, or `None` off the Young subgroup.
    fn value(&self, group: &WreathGroup, e: &WreathElement) -> Option<RootValue> {
        if e.perm
            .iter()
            .enumerate()
            .any(|(i, &s)| self.block_of[i] != self.block_of[s as usize])
        {
            return None;
        }
        let base = group.base();
        let mut value = RootValue::ONE;
        let mut lengths = vec![Vec::new(); self.factors.len()];
        for ((len, g), cycle) in cycle_products(base, e).into_iter().zip(e.cycles()) {
            let block = self.block_of[cycle[0]];
            value = value.mul(self.factors[block].values[g as usize], self.root_order);
            lengths[block].push(len);
        }
        for (block, mut l) in lengths.into_iter().enumerate() {
            l.sort_unstable_by(|a, b| b.cmp(a));
            let chi = self.sn_values[block][&Partition::from_sorted(l)];
            value = value.mul(RootValue::integer(chi), self.root_order);
        }
        Some(value)
    }
}

/// The irreducible character `Ind(Ω^α)` of `N ≀ S_w` labelled by `label`,
/// whose components follow the base group's character order.
pub fn parametrized_character(
    group: &WreathGroup,
    label: &MultiPartition,
) -> Result<ClassFunction> {
    let omega = YoungCharacter::new(group, label)?;
    let m = omega.root_order;
    let scale = BigRational::one() / &omega.subgroup_order;
    let values = group
        .classes()
        .par_iter()
        .map(|class| {
            let mut counts = vec![0i64; m as usize];
            for x in group.elements() {
                let y = group.conjugate(&x, &class.representative);
                if let Some(v) = omega.value(group, &y) {
                    counts[v.exp as usize] += v.coef;
                }
            }
            Cyclotomic::from_exponent_counts(m, &counts).scale(&scale)
        })
        .collect();
    ClassFunction::new(group, values)
}

/// `H_w`-element viewed inside `G_w`.
pub fn embed(h_group: &WreathGroup, e: &WreathElement) -> WreathElement {
    WreathElement {
        h: e.h
            .iter()
            .map(|&x| h_group.base().affine_index(x))
            .collect(),
        perm: e.perm.clone(),
    }
}

/// The `G_w`-element as an element of `H_w`, if it lies there.
pub fn pull_back(h_group: &WreathGroup, e: &WreathElement) -> Option<WreathElement> {
    let h =
        e.h.iter()
            .map(|&x| h_group.base().cyclic_index(x))
            .collect::<Option<_>>()?;
    Some(WreathElement {
        h,
        perm: e.perm.clone(),
    })
}

pub fn restrict(
    g_group: &WreathGroup,
    h_group: &WreathGroup,
    f: &ClassFunction,
) -> Result<ClassFunction> {
    same_group(f.group_id, g_group.id())?;
    let values = h_group
        .classes()
        .iter()
        .map(|class| f.values[g_group.class_of(&embed(h_group, &class.representative))].clone())
        .collect();
    ClassFunction::new(h_group, values)
}

pub fn induce(
    h_group: &WreathGroup,
    g_group: &WreathGroup,
    f: &ClassFunction,
) -> Result<ClassFunction> {
    same_group(f.group_id, h_group.id())?;
    let scale = BigRational::one() / rational(h_group.order());
    let m = h_group.base().root_order();
    let values = g_group
        .classes()
        .par_iter()
        .map(|class| {
            let mut hits = vec![0usize; h_group.classes().len()];
            for x in g_group.elements() {
                let y = g_group.conjugate(&x, &class.representative);
                if let Some(y) = pull_back(h_group, &y) {
                    hits[h_group.class_of(&y)] += 1;
                }
            }
            hits.iter()
                .zip(&f.values)
                .filter(|(&n, _)| n > 0)
                .fold(Cyclotomic::zero(m), |acc, (&n, v)| {
                    &acc + &v.scale(&rational(n))
                })
                .scale(&scale)
        })
        .collect();
    ClassFunction::new(g_group, values)
}
