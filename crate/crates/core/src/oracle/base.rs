//! `G = Z_p ⋊ Z_{p-1}` and `H = Z_{p-1}` as explicit multiplication tables
//! with their irreducible characters.

use std::sync::Arc;

use crate::cyclotomic::Cyclotomic;
use crate::decomp::middle;
use crate::error::{check_odd_prime, Error, Result};

pub const MAX_PRIME: usize = 17;

pub fn smallest_primitive_root(p: usize) -> usize {
    (2..p)
        .find(|&g| {
            let mut x = 1;
            (1..p - 1).all(|_| {
                x = x * g % p;
                x != 1
            })
        })
        .unwrap_or(1)
}

/// Exponent of `θ_i` for a position `i ∈ I`: `θ_i(b) = ζ_{p-1}^{e(i)·b}`.
/// `e(1) = 0` makes `θ_1` the trivial character.
pub fn theta_exponent(p: usize, i: usize) -> usize {
    let r = middle(p);
    assert!(i >= 1 && i <= p && i != r, "{i} is not in I for p = {p}");
    match i {
        1 => 0,
        i if i < r => i - 1,
        i => i - 2,
    }
}

/// `coef · ζ^exp`, enough to hold every character value of `G` and `H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootValue {
    pub coef: i64,
    pub exp: u32,
}

impl RootValue {
    pub const ZERO: RootValue = RootValue { coef: 0, exp: 0 };
    pub const ONE: RootValue = RootValue { coef: 1, exp: 0 };

    pub fn integer(coef: i64) -> Self {
        RootValue { coef, exp: 0 }
    }

    pub fn mul(self, other: RootValue, m: u32) -> RootValue {
        if self.coef == 0 || other.coef == 0 {
            return RootValue::ZERO;
        }
        RootValue {
            coef: self.coef * other.coef,
            exp: (self.exp + other.exp) % m,
        }
    }

    pub fn to_cyclotomic(self, m: u32) -> Cyclotomic {
        let mut counts = vec![0; m as usize];
        counts[self.exp as usize] = self.coef;
        Cyclotomic::from_exponent_counts(m, &counts)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseKind {
    /// `Z_p ⋊ Z_{p-1}`, elements `(a, b)`.
    Affine,
    /// `Z_{p-1}`, the elements `(0, b)`.
    Cyclic,
}

/// One irreducible character of the base group.
#[derive(Clone, Debug)]
pub struct BaseCharacter {
    /// Label position in `1..=p` (for `H`, a position in `I`).
    pub position: usize,
    pub values: Vec<RootValue>,
}

#[derive(Debug)]
pub struct BaseGroup {
    p: usize,
    kind: BaseKind,
    generator: usize,
    order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    class_of: Vec<usize>,
    class_reps: Vec<u16>,
    class_sizes: Vec<usize>,
    characters: Vec<BaseCharacter>,
}

impl BaseGroup {
    fn build(p: usize, kind: BaseKind) -> Self {
        let m = p - 1;
        let generator = smallest_primitive_root(p);
        let mut pow = vec![1usize; m];
        for b in 1..m {
            pow[b] = pow[b - 1] * generator % p;
        }
        let order = match kind {
            BaseKind::Affine => p * m,
            BaseKind::Cyclic => m,
        };
        let decode = |x: usize| (x / m, x % m);
        let encode = |a: usize, b: usize| a * m + b;
        let mut mul = vec![0u16; order * order];
        for x in 0..order {
            let (a1, b1) = decode(x);
            for y in 0..order {
                let (a2, b2) = decode(y);
                // (a1, b1)(a2, b2) = (a1 + g^{b1} a2, b1 + b2)
                mul[x * order + y] = encode((a1 + pow[b1] * a2) % p, (b1 + b2) % m) as u16;
            }
        }
        let inv = (0..order)
            .map(|x| (0..order).find(|&y| mul[x * order + y] == 0).unwrap() as u16)
            .collect::<Vec<_>>();

        let mut class_of = vec![usize::MAX; order];
        let mut class_reps = Vec::new();
        let mut class_sizes = Vec::new();
        for x in 0..order {
            if class_of[x] != usize::MAX {
                continue;
            }
            let c = class_reps.len();
            let mut size = 0;
            for y in 0..order {
                let conj = mul[mul[y * order + x] as usize * order + inv[y] as usize] as usize;
                if class_of[conj] == usize::MAX {
                    class_of[conj] = c;
                    size += 1;
                }
            }
            class_reps.push(x as u16);
            class_sizes.push(size);
        }

        let r = middle(p);
        let theta = |i: usize| -> Vec<RootValue> {
            let e = theta_exponent(p, i);
            (0..order)
                .map(|x| RootValue {
                    coef: 1,
                    exp: ((e * decode(x).1) % m) as u32,
                })
                .collect()
        };
        let psi_r: Vec<RootValue> = (0..order)
            .map(|x| match decode(x) {
                (0, 0) => RootValue::integer(m as i64),
                (_, 0) => RootValue::integer(-1),
                _ => RootValue::ZERO,
            })
            .collect();
        let characters = (1..=p)
            .filter_map(|i| match (kind, i == r) {
                (BaseKind::Affine, true) => Some(BaseCharacter {
                    position: i,
                    values: psi_r.clone(),
                }),
                (BaseKind::Cyclic, true) => None,
                (_, false) => Some(BaseCharacter {
                    position: i,
                    values: theta(i),
                }),
            })
            .collect();

        BaseGroup {
            p,
            kind,
            generator,
            order,
            mul,
            inv,
            class_of,
            class_reps,
            class_sizes,
            characters,
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn kind(&self) -> BaseKind {
        self.kind
    }

    /// The primitive root `g` used in the semidirect product.
    pub fn generator(&self) -> usize {
        self.generator
    }

    /// `p - 1`, the order of the roots of unity in character values.
    pub fn root_order(&self) -> u32 {
        (self.p - 1) as u32
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, x: u16, y: u16) -> u16 {
        self.mul[x as usize * self.order + y as usize]
    }

    pub fn inv(&self, x: u16) -> u16 {
        self.inv[x as usize]
    }

    pub fn identity(&self) -> u16 {
        0
    }

    /// `(a, b)` coordinates of an element.
    pub fn coordinates(&self, x: u16) -> (usize, usize) {
        let m = self.p - 1;
        (x as usize / m, x as usize % m)
    }

    /// Index of the same element inside `Z_p ⋊ Z_{p-1}`.
    pub fn affine_index(&self, x: u16) -> u16 {
        x
    }

    /// Index inside `Z_{p-1}` of an affine element, if it lies there.
    pub fn cyclic_index(&self, affine: u16) -> Option<u16> {
        ((affine as usize) < self.p - 1).then_some(affine)
    }

    pub fn class_of(&self, x: u16) -> usize {
        self.class_of[x as usize]
    }

    pub fn class_count(&self) -> usize {
        self.class_reps.len()
    }

    pub fn class_reps(&self) -> &[u16] {
        &self.class_reps
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    /// Order of the centralizer of an element of class `c`.
    pub fn centralizer_order(&self, c: usize) -> usize {
        self.order / self.class_sizes[c]
    }

    pub fn characters(&self) -> &[BaseCharacter] {
        &self.characters
    }

    /// Character values as cyclotomics: one row per character, one column per class.
    pub fn character_table(&self) -> Vec<Vec<Cyclotomic>> {
        let m = self.root_order();
        self.characters
            .iter()
            .map(|ch| {
                self.class_reps
                    .iter()
                    .map(|&x| ch.values[x as usize].to_cyclotomic(m))
                    .collect()
            })
            .collect()
    }
}

/// `G` and `H` for one prime.
#[derive(Clone, Debug)]
pub struct BaseModel {
    pub p: usize,
    pub g: Arc<BaseGroup>,
    pub h: Arc<BaseGroup>,
}

pub fn base_group(p: usize) -> Result<BaseModel> {
    check_odd_prime(p)?;
    if p > MAX_PRIME {
        return Err(Error::OutOfRange {
            what: "p",
            value: p,
            range: format!("3..={MAX_PRIME}"),
        });
    }
    Ok(BaseModel {
        p,
        g: Arc::new(BaseGroup::build(p, BaseKind::Affine)),
        h: Arc::new(BaseGroup::build(p, BaseKind::Cyclic)),
    })
}
