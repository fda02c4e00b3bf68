//! Exact arithmetic in `Q(ζ_m)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{d-1}` with
//! `d = deg Φ_m`, always reduced modulo the `m`-th cyclotomic polynomial, so
//! two elements are equal exactly when their coefficient vectors are.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug)]
struct Field {
    order: u32,
    /// Φ_m, lowest coefficient first; monic.
    phi: Vec<i64>,
    /// `powers[e]` is ζ^e reduced, for `0 <= e < m`.
    powers: Vec<Vec<i64>>,
}

impl Field {
    fn degree(&self) -> usize {
        self.phi.len() - 1
    }
}

static FIELDS: LazyLock<RwLock<HashMap<u32, Arc<Field>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

fn field(m: u32) -> Arc<Field> {
    assert!(m >= 1, "cyclotomic order must be positive");
    if let Some(f) = FIELDS.read().unwrap().get(&m) {
        return f.clone();
    }
    let phi = cyclotomic_polynomial(m);
    let d = phi.len() - 1;
    let mut powers = Vec::with_capacity(m as usize);
    let mut current = vec![0i64; d];
    current[0] = 1;
    for _ in 0..m {
        powers.push(current.clone());
        // multiply by x, then reduce the x^d term with the monic Φ_m
        let top = current[d - 1];
        for i in (1..d).rev() {
            current[i] = current[i - 1] - top * phi[i];
        }
        current[0] = -top * phi[0];
    }
    let f = Arc::new(Field {
        order: m,
        phi,
        powers,
    });
    FIELDS.write().unwrap().insert(m, f.clone());
    f
}

/// Integer coefficients of `Φ_m`, lowest degree first, from
/// `x^m - 1 = Π_{d | m} Φ_d`.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        num = divide_monic(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (i, &x) in den.iter().enumerate() {
            rem[k + i] -= c * x;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0), "inexact division");
    quot
}

#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<Field>,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(m: u32) -> Self {
        let field = field(m);
        let coeffs = vec![BigRational::zero(); field.degree()];
        Cyclotomic { field, coeffs }
    }

    pub fn one(m: u32) -> Self {
        Self::from_integer(m, 1)
    }

    pub fn from_integer(m: u32, n: i64) -> Self {
        Self::from_rational(m, BigRational::from_integer(n.into()))
    }

    pub fn from_rational(m: u32, q: BigRational) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = q;
        z
    }

    /// `ζ_m^k` for any integer `k`.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        let mut counts = vec![0i64; m as usize];
        counts[k.rem_euclid(m as i64) as usize] = 1;
        Self::from_exponent_counts(m, &counts)
    }

    /// `Σ_e counts[e] · ζ_m^e` with `counts.len() == m`.
    pub fn from_exponent_counts(m: u32, counts: &[i64]) -> Self {
        let field = field(m);
        assert_eq!(counts.len(), m as usize);
        let mut acc = vec![0i128; field.degree()];
        for (e, &c) in counts.iter().enumerate() {
            if c != 0 {
                for (slot, &x) in acc.iter_mut().zip(&field.powers[e]) {
                    *slot += c as i128 * x as i128;
                }
            }
        }
        let coeffs = acc
            .into_iter()
            .map(|c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        Cyclotomic { field, coeffs }
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    /// The value as a rational number, or `None` when it is irrational.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// The value as an integer, or `None` when it is not one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    /// Image under `ζ ↦ ζ^{-1}` (complex conjugation).
    pub fn conjugate(&self) -> Self {
        let m = self.order() as usize;
        self.fold_exponents(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| ((m - k) % m, c.clone())),
        )
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    fn fold_exponents(&self, terms: impl Iterator<Item = (usize, BigRational)>) -> Self {
        let m = self.order() as usize;
        let mut out = vec![BigRational::zero(); self.field.degree()];
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            for (slot, &x) in out.iter_mut().zip(&self.field.powers[e % m]) {
                if x != 0 {
                    *slot += &c * BigRational::from_integer(x.into());
                }
            }
        }
        Cyclotomic {
            field: self.field.clone(),
            coeffs: out,
        }
    }

    /// Brings both operands into one field; a rational operand is promoted.
    fn align(&self, other: &Self) -> Result<(Self, Self)> {
        let (a, b) = (self.order(), other.order());
        if a == b {
            Ok((self.clone(), other.clone()))
        } else if other.is_rational() {
            Ok((
                self.clone(),
                Self::from_rational(a, other.coeffs[0].clone()),
            ))
        } else if self.is_rational() {
            Ok((
                Self::from_rational(b, self.coeffs[0].clone()),
                other.clone(),
            ))
        } else {
            Err(Error::IncompatibleOrders(a, b))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.align(other)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Ok(Cyclotomic {
            field: a.field,
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.align(other)?;
        let d = a.field.degree();
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in a.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                prod[i + j] += x * y;
            }
        }
        Ok(a.fold_exponents(prod.into_iter().enumerate()))
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.coeffs == other.coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({}: {self})", self.order())
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let abs = c.abs();
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{abs}*z^{k}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic {
        -&self
    }
}

// Operator forms panic on incompatible orders; use the `try_` methods to
// handle that case.
macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;

            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$checked(rhs).expect("incompatible cyclotomic orders")
            }
        }

        impl $trait<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;

            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(m: u32, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(m, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(16).len(), 9);
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(z(7, 0), Cyclotomic::one(7));
        assert_eq!(z(2, 1), Cyclotomic::from_integer(2, -1));
        assert_eq!(&z(4, 1) * &z(4, 1), Cyclotomic::from_integer(4, -1));
        assert_eq!(z(6, -1), z(6, 5));
        for m in 1..=12u32 {
            let zeta = z(m, 1);
            let mut power = Cyclotomic::one(m);
            for _ in 0..m {
                power = &power * &zeta;
            }
            assert_eq!(power, Cyclotomic::one(m));
            // Φ_m(ζ) = 0
            let mut value = Cyclotomic::zero(m);
            for (k, &c) in cyclotomic_polynomial(m).iter().enumerate() {
                value = &value + &(&Cyclotomic::from_integer(m, c) * &z(m, k as i64));
            }
            assert!(value.is_zero(), "m = {m}");
            if m >= 2 {
                let sum = (0..m as i64).fold(Cyclotomic::zero(m), |acc, k| &acc + &z(m, k));
                assert!(sum.is_zero());
            }
        }
    }

    #[test]
    fn conjugation_and_rationality() {
        assert_eq!(z(6, 1).conjugate(), z(6, 5));
        assert_eq!(Cyclotomic::one(5).as_rational(), Some(BigRational::one()));
        let s = &z(3, 1) + &z(3, 2);
        assert_eq!(
            s.as_rational(),
            Some(BigRational::from_integer((-1).into()))
        );
        assert_eq!(z(5, 1).as_rational(), None);
        // |ζ|^2 = 1
        for m in 1..=12 {
            for k in 0..m as i64 {
                assert_eq!(&z(m, k) * &z(m, k).conjugate(), Cyclotomic::one(m));
            }
        }
    }

    #[test]
    fn mixed_orders() {
        let half = Cyclotomic::from_rational(1, BigRational::new(1.into(), 2.into()));
        let sum = z(4, 1).try_add(&half).unwrap();
        assert_eq!(sum.order(), 4);
        assert_eq!(sum.coefficients()[0], BigRational::new(1.into(), 2.into()));
        assert_eq!(
            z(4, 1).try_mul(&z(3, 1)),
            Err(Error::IncompatibleOrders(4, 3))
        );
    }

    #[test]
    fn display() {
        assert_eq!(Cyclotomic::zero(4).to_string(), "0");
        assert_eq!((&z(4, 1) - &Cyclotomic::one(4)).to_string(), "-1 + z^1");
    }

    fn element(m: u32) -> impl Strategy<Value = Cyclotomic> {
        prop::collection::vec(-3i64..=3, m as usize)
            .prop_map(move |counts| Cyclotomic::from_exponent_counts(m, &counts))
    }

    fn triple() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic)> {
        prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 8, 10, 12])
            .prop_flat_map(|m| (element(m), element(m), element(m)))
    }

    proptest! {
        #[test]
        fn field_axioms((a, b, c) in triple()) {
            let m = a.order();
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &Cyclotomic::zero(m), a.clone());
            prop_assert_eq!(&a * &Cyclotomic::one(m), a.clone());
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
            prop_assert_eq!(a.conjugate().conjugate(), a);
        }
    }
}
