//! Brute-force verification: explicit groups `G_w`, `H_w`, characters built
//! from first principles, and multiplicities recomputed by inner products.

pub mod base;
pub mod characters;
pub mod wreath;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::Cyclotomic;
use crate::decomp::{middle, GLabel, HLabel};
use crate::error::{Error, Result};
use crate::lr::lr_coefficient;
use crate::partitions::{generate_partitions, Partition};
use crate::sn_char::{mn_value, CycleType};

pub use base::{base_group, BaseModel};
pub use characters::{
    induce, inner_product, multiplicity, parametrized_character, restrict, ClassFunction,
};
pub use wreath::{cycle_products, element_guard, WreathElement, WreathGroup};

/// `c^α_{β,γ}` as `⟨Res χ_α, χ_β × χ_γ⟩` over `S_j × S_{k-j}`, computed from
/// Murnaghan–Nakayama values. `None` if the result is not a nonnegative
/// integer, which would signal a bug.
pub fn lr_by_characters(alpha: &Partition, beta: &Partition, gamma: &Partition) -> Option<u64> {
    if alpha.size() != beta.size() + gamma.size() {
        return Some(0);
    }
    let mut total = Ratio::<i128>::from_integer(0);
    for rho1 in generate_partitions(beta.size()) {
        let b = mn_value(beta, &CycleType(rho1.clone())).ok()?;
        let z1 = CycleType(rho1.clone()).centralizer_order() as i128;
        for rho2 in generate_partitions(gamma.size()) {
            let mut union: Vec<usize> = rho1.parts().iter().chain(rho2.parts()).copied().collect();
            union.sort_unstable_by(|x, y| y.cmp(x));
            let a = mn_value(alpha, &CycleType(Partition::new(union).ok()?)).ok()?;
            let g = mn_value(gamma, &CycleType(rho2.clone())).ok()?;
            let z2 = CycleType(rho2).centralizer_order() as i128;
            total += Ratio::new((a * b * g) as i128, z1 * z2);
        }
    }
    (total.is_integer() && total >= Ratio::from_integer(0)).then(|| *total.numer() as u64)
}

/// `G_w` and `H_w` for one `(p, w)` with their irreducible characters,
/// computed once on first use.
pub struct OracleContext {
    p: usize,
    w: usize,
    model: BaseModel,
    g: WreathGroup,
    h: WreathGroup,
    g_chars: OnceLock<BTreeMap<GLabel, ClassFunction>>,
    h_chars: OnceLock<BTreeMap<HLabel, ClassFunction>>,
}

impl OracleContext {
    pub fn new(p: usize, w: usize) -> Result<Self> {
        Self::with_guard(p, w, element_guard())
    }

    pub fn with_guard(p: usize, w: usize, guard: usize) -> Result<Self> {
        let model = base_group(p)?;
        let g = WreathGroup::new(model.g.clone(), w, guard)?;
        let h = WreathGroup::new(model.h.clone(), w, guard)?;
        Ok(OracleContext {
            p,
            w,
            model,
            g,
            h,
            g_chars: OnceLock::new(),
            h_chars: OnceLock::new(),
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn model(&self) -> &BaseModel {
        &self.model
    }

    pub fn g_group(&self) -> &WreathGroup {
        &self.g
    }

    pub fn h_group(&self) -> &WreathGroup {
        &self.h
    }

    pub fn g_characters(&self) -> Result<&BTreeMap<GLabel, ClassFunction>> {
        if let Some(chars) = self.g_chars.get() {
            return Ok(chars);
        }
        let chars = GLabel::all(self.p, self.w)?
            .into_par_iter()
            .map(|l| Ok((l.clone(), parametrized_character(&self.g, l.label())?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(self.g_chars.get_or_init(|| chars))
    }

    pub fn h_characters(&self) -> Result<&BTreeMap<HLabel, ClassFunction>> {
        if let Some(chars) = self.h_chars.get() {
            return Ok(chars);
        }
        let chars = HLabel::all(self.p, self.w)?
            .into_par_iter()
            .map(|l| Ok((l.clone(), parametrized_character(&self.h, l.label())?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(self.h_chars.get_or_init(|| chars))
    }

    pub fn g_character(&self, gamma: &GLabel) -> Result<&ClassFunction> {
        self.g_characters()?.get(gamma).ok_or_else(|| {
            Error::LabelMismatch(format!(
                "{gamma} is not a label for p={}, w={}",
                self.p, self.w
            ))
        })
    }

    pub fn h_character(&self, alpha: &HLabel) -> Result<&ClassFunction> {
        self.h_characters()?.get(alpha).ok_or_else(|| {
            Error::LabelMismatch(format!(
                "{alpha} is not a label for p={}, w={}",
                self.p, self.w
            ))
        })
    }

    pub fn restrict(&self, f: &ClassFunction) -> Result<ClassFunction> {
        restrict(&self.g, &self.h, f)
    }

    pub fn induce(&self, f: &ClassFunction) -> Result<ClassFunction> {
        induce(&self.h, &self.g, f)
    }

    /// `α ↦ ⟨Res χ^γ, ξ^α⟩`, nonzero entries only.
    pub fn oracle_restriction(&self, gamma: &GLabel) -> Result<BTreeMap<HLabel, u64>> {
        let res = self.restrict(self.g_character(gamma)?)?;
        let mut out = BTreeMap::new();
        for (alpha, xi) in self.h_characters()? {
            let m = multiplicity(&self.h, &res, xi)?;
            if m > 0 {
                out.insert(alpha.clone(), m);
            }
        }
        Ok(out)
    }

    /// `G_w`-label with the given components at 1-based positions.
    pub fn g_label(&self, parts: &[(usize, &Partition)]) -> Result<GLabel> {
        let mut comps = vec![Partition::empty(); self.p];
        for &(pos, part) in parts {
            comps[pos - 1] = part.clone();
        }
        GLabel::new(self.p, comps)
    }

    /// `H_w`-label with the given components at positions in `I`.
    pub fn h_label(&self, parts: &[(usize, &Partition)]) -> Result<HLabel> {
        let r = middle(self.p);
        let mut comps = vec![Partition::empty(); self.p - 1];
        for &(pos, part) in parts {
            if pos == r {
                return Err(Error::OutOfRange {
                    what: "position",
                    value: pos,
                    range: format!("1..={} without {r}", self.p),
                });
            }
            comps[if pos < r { pos - 1 } else { pos - 2 }] = part.clone();
        }
        HLabel::new(self.p, comps)
    }

    /// Positions `I = {1..p} \ {r}`.
    pub fn positions(&self) -> Vec<usize> {
        let r = middle(self.p);
        (1..=self.p).filter(|&i| i != r).collect()
    }

    /// `⟨Ind(θ̃_i^k ⊗ ζ_α), Ind((ψ̃_r^j ⊗ φ_β) ⊠ (ψ̃_i^{k-j} ⊗ φ_γ))⟩` with `k = w`.
    pub fn mackey_multiplicity(
        &self,
        i: usize,
        alpha: &Partition,
        beta: &Partition,
        gamma: &Partition,
    ) -> Result<u64> {
        let r = middle(self.p);
        let lhs = self.induce(self.h_character(&self.h_label(&[(i, alpha)])?)?)?;
        let rhs = self.g_character(&self.g_label(&[(r, beta), (i, gamma)])?)?;
        multiplicity(&self.g, &lhs, rhs)
    }
}

/// One oracle comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub what: String,
    pub expected: String,
    pub computed: String,
}

impl Comparison {
    fn new(what: String, expected: impl ToString, computed: impl ToString) -> Self {
        Comparison {
            what,
            expected: expected.to_string(),
            computed: computed.to_string(),
        }
    }

    pub fn passed(&self) -> bool {
        self.expected == self.computed
    }
}

fn format_map<K: std::fmt::Display>(m: &BTreeMap<K, u64>) -> String {
    let body: Vec<String> = m.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    format!("{{{}}}", body.join(", "))
}

/// Oracle multiplicities against the closed formula for every `γ`.
pub fn check_restrictions(ctx: &OracleContext) -> Result<Vec<Comparison>> {
    GLabel::all(ctx.p, ctx.w)?
        .iter()
        .map(|gamma| {
            Ok(Comparison::new(
                format!("restriction of {gamma}"),
                format_map(&crate::decomp::restrict_g_to_h(gamma)),
                format_map(&ctx.oracle_restriction(gamma)?),
            ))
        })
        .collect()
}

/// `C_{i,j,α,β,γ} = c^α_{β,γ}` for all `i ∈ I`, `j`, `α ⊢ w`, `β ⊢ j`, `γ ⊢ w-j`.
pub fn verify_mackey_multiplicities(ctx: &OracleContext) -> Result<Vec<Comparison>> {
    let k = ctx.w;
    let r = middle(ctx.p);
    let mut out = Vec::new();
    for i in ctx.positions() {
        for alpha in generate_partitions(k) {
            let lhs = ctx.induce(ctx.h_character(&ctx.h_label(&[(i, &alpha)])?)?)?;
            for j in 0..=k {
                for beta in generate_partitions(j) {
                    for gamma in generate_partitions(k - j) {
                        let rhs = ctx.g_character(&ctx.g_label(&[(r, &beta), (i, &gamma)])?)?;
                        out.push(Comparison::new(
                            format!("C i={i} j={j} alpha={alpha} beta={beta} gamma={gamma}"),
                            lr_coefficient(&alpha, &beta, &gamma),
                            multiplicity(ctx.g_group(), &lhs, rhs)?,
                        ));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `A_{i,r} = ⟨Res ψ̃_r^k, θ̃_i^k⟩ = 1` and
/// `B_{i,r,α,β} = ⟨Res(ψ̃_r^k ⊗ φ_β), θ̃_i^k ⊗ ζ_α⟩ = δ_{α,β}`.
pub fn check_middle_slot_restrictions(ctx: &OracleContext) -> Result<Vec<Comparison>> {
    let k = ctx.w;
    let r = middle(ctx.p);
    let mut out = Vec::new();
    for i in ctx.positions() {
        let psi = ctx.restrict(ctx.g_character(&ctx.g_label(&[(r, &Partition::row(k))])?)?)?;
        let theta = ctx.h_character(&ctx.h_label(&[(i, &Partition::row(k))])?)?;
        out.push(Comparison::new(
            format!("A i={i}"),
            1,
            multiplicity(ctx.h_group(), &psi, theta)?,
        ));
        for beta in generate_partitions(k) {
            let res = ctx.restrict(ctx.g_character(&ctx.g_label(&[(r, &beta)])?)?)?;
            for alpha in generate_partitions(k) {
                let xi = ctx.h_character(&ctx.h_label(&[(i, &alpha)])?)?;
                out.push(Comparison::new(
                    format!("B i={i} alpha={alpha} beta={beta}"),
                    u64::from(alpha == beta),
                    multiplicity(ctx.h_group(), &res, xi)?,
                ));
            }
        }
    }
    Ok(out)
}

/// `Res ψ̃_r^k` equals `(p-1)^{c(π)}` on `(f; π)` when every cycle product is
/// trivial and `0` otherwise.
pub fn check_middle_slot_closed_form(ctx: &OracleContext) -> Result<Vec<Comparison>> {
    let k = ctx.w;
    let r = middle(ctx.p);
    let m = ctx.model.h.root_order();
    let res = ctx.restrict(ctx.g_character(&ctx.g_label(&[(r, &Partition::row(k))])?)?)?;
    let h = ctx.h_group();
    Ok(h.classes()
        .iter()
        .zip(res.values())
        .map(|(class, value)| {
            let products = cycle_products(h.base(), &class.representative);
            let expected = if products.iter().all(|&(_, g)| g == h.base().identity()) {
                (ctx.p as i64 - 1).pow(products.len() as u32)
            } else {
                0
            };
            Comparison::new(
                format!("middle slot value on {}", class.label),
                Cyclotomic::from_integer(m, expected),
                value,
            )
        })
        .collect())
}

/// Value-by-value restrictions: `Res χ^{α̂} = ξ^α` for every `α`, which in
/// particular covers `Res ψ̃_i^k = θ̃_i^k` and `Res φ_λ = ζ_λ`.
pub fn check_hat_restrictions(ctx: &OracleContext) -> Result<Vec<Comparison>> {
    ctx.h_characters()?
        .iter()
        .map(|(alpha, xi)| {
            let res = ctx.restrict(ctx.g_character(&alpha.hat())?)?;
            Ok(Comparison::new(
                format!("restriction of {} is pointwise {alpha}", alpha.hat()),
                format!("{:?}", xi.values()),
                format!("{:?}", res.values()),
            ))
        })
        .collect()
}

/// `Ind(θ̃_i^k ⊗ ζ_α) = Σ_j Σ_{β,γ} c^α_{β,γ} Ind((ψ̃_r^j ⊗ φ_β) ⊠ (ψ̃_i^{k-j} ⊗ φ_γ))`
/// as class functions.
pub fn check_induction_reconstruction(ctx: &OracleContext) -> Result<Vec<Comparison>> {
    let k = ctx.w;
    let r = middle(ctx.p);
    let mut out = Vec::new();
    for i in ctx.positions() {
        for alpha in generate_partitions(k) {
            let lhs = ctx.induce(ctx.h_character(&ctx.h_label(&[(i, &alpha)])?)?)?;
            let mut rhs: Option<ClassFunction> = None;
            for j in 0..=k {
                for (beta, gamma, c) in crate::lr::restriction_expansion(&alpha, j)? {
                    let chi = ctx.g_character(&ctx.g_label(&[(r, &beta), (i, &gamma)])?)?;
                    let term = chi.scale(&num_rational::BigRational::from_integer(c.into()));
                    rhs = Some(match rhs {
                        None => term,
                        Some(acc) => acc.try_add(&term)?,
                    });
                }
            }
            let rhs = rhs.ok_or_else(|| Error::Inconsistent("empty reconstruction".into()))?;
            out.push(Comparison::new(
                format!("induction from slot {i} of {alpha}"),
                format!("{:?}", rhs.values()),
                format!("{:?}", lhs.values()),
            ));
        }
    }
    Ok(out)
}

/// Row orthogonality of both base tables and the restriction identities
/// `Res ψ_i = θ_i`, `Res ψ_r = (p-1)δ_1 = Σ_{i∈I} θ_i`.
pub fn check_base_group(model: &BaseModel) -> Vec<Comparison> {
    let mut out = Vec::new();
    for (name, group) in [("G", &model.g), ("H", &model.h)] {
        let m = group.root_order();
        for a in group.characters() {
            for b in group.characters() {
                let sum = (0..group.order())
                    .map(|x| {
                        &a.values[x].to_cyclotomic(m) * &b.values[x].to_cyclotomic(m).conjugate()
                    })
                    .fold(Cyclotomic::zero(m), |acc, v| &acc + &v);
                let expected = if a.position == b.position {
                    group.order() as i64
                } else {
                    0
                };
                out.push(Comparison::new(
                    format!("{name} orthogonality {} {}", a.position, b.position),
                    Cyclotomic::from_integer(m, expected),
                    sum,
                ));
            }
        }
    }
    let m = model.h.root_order();
    let r = middle(model.p);
    let psi_r = &model.g.characters()[r - 1];
    for b in 0..model.h.order() as u16 {
        let delta = if b == model.h.identity() {
            model.p as i64 - 1
        } else {
            0
        };
        let on_h = psi_r.values[model.h.affine_index(b) as usize].to_cyclotomic(m);
        out.push(Comparison::new(
            format!("Res psi_r at {b}"),
            Cyclotomic::from_integer(m, delta),
            &on_h,
        ));
        let theta_sum = model
            .h
            .characters()
            .iter()
            .map(|c| c.values[b as usize].to_cyclotomic(m))
            .fold(Cyclotomic::zero(m), |acc, v| &acc + &v);
        out.push(Comparison::new(
            format!("sum of theta at {b}"),
            on_h,
            theta_sum,
        ));
        for theta in model.h.characters() {
            let psi = &model.g.characters()[theta.position - 1];
            out.push(Comparison::new(
                format!("Res psi_{} at {b}", theta.position),
                theta.values[b as usize].to_cyclotomic(m),
                psi.values[model.h.affine_index(b) as usize].to_cyclotomic(m),
            ));
        }
    }
    out
}

/// Parametrized characters of both groups are orthonormal.
pub fn check_orthonormality(ctx: &OracleContext) -> Result<Vec<Comparison>> {
    fn run<L: std::fmt::Display>(
        group: &WreathGroup,
        chars: &BTreeMap<L, ClassFunction>,
    ) -> Result<Vec<Comparison>> {
        let mut out = Vec::new();
        for (i, (a, fa)) in chars.iter().enumerate() {
            for (j, (b, fb)) in chars.iter().enumerate() {
                out.push(Comparison::new(
                    format!("<{a}, {b}>"),
                    u8::from(i == j),
                    inner_product(group, fa, fb)?,
                ));
            }
        }
        Ok(out)
    }
    let mut out = run(ctx.g_group(), ctx.g_characters()?)?;
    out.extend(run(ctx.h_group(), ctx.h_characters()?)?);
    Ok(out)
}

/// Conjugating a class representative by every group element keeps the
/// multiset of (cycle length, class of cycle product).
pub fn check_cycle_product_invariance(ctx: &OracleContext) -> Result<Vec<Comparison>> {
    let mut out = Vec::new();
    for (name, group) in [("G", ctx.g_group()), ("H", ctx.h_group())] {
        let base = group.base();
        let signature = |e: &WreathElement| {
            let mut s: Vec<(usize, usize)> = cycle_products(base, e)
                .into_iter()
                .map(|(len, g)| (len, base.class_of(g)))
                .collect();
            s.sort_unstable();
            s
        };
        for class in group.classes() {
            let expected = signature(&class.representative);
            let moved = group
                .elements()
                .filter(|x| signature(&group.conjugate(x, &class.representative)) != expected)
                .count();
            out.push(Comparison::new(
                format!("{name} conjugates of {}", class.label),
                0,
                moved,
            ));
        }
    }
    Ok(out)
}

/// Orbit classes against cycle structures, class counts, centralizer orders
/// and squared degrees, for both groups.
pub fn check_class_structure(ctx: &OracleContext) -> Result<Vec<Comparison>> {
    let mut out = Vec::new();
    for (name, group) in [("G", ctx.g_group()), ("H", ctx.h_group())] {
        let consistent = group
            .verify_cycle_structure()
            .map(|_| "consistent")
            .unwrap_or_else(|_| "inconsistent");
        out.push(Comparison::new(
            format!("{name} classes vs cycle structures"),
            "consistent",
            consistent,
        ));
        out.push(Comparison::new(
            format!("{name} class count"),
            crate::partitions::generate_multipartitions(ctx.w, group.base().class_count()).len(),
            group.classes().len(),
        ));
        let mismatched = group
            .classes()
            .iter()
            .filter(|c| {
                group.centralizer_order_formula(&c.label) != (group.order() / c.size) as u128
            })
            .count();
        out.push(Comparison::new(
            format!("{name} centralizer orders off formula"),
            0,
            mismatched,
        ));
    }
    let degree = |f: &ClassFunction| -> Result<u128> {
        let v = f
            .value(0)
            .as_integer()
            .ok_or_else(|| Error::Inconsistent("irrational degree".into()))?;
        u128::try_from(v).map_err(|_| Error::Inconsistent("negative degree".into()))
    };
    let g_sq = ctx
        .g_characters()?
        .values()
        .map(|f| degree(f).map(|d| d * d))
        .sum::<Result<u128>>()?;
    let h_sq = ctx
        .h_characters()?
        .values()
        .map(|f| degree(f).map(|d| d * d))
        .sum::<Result<u128>>()?;
    out.push(Comparison::new(
        "G squared degrees".into(),
        ctx.g_group().order(),
        g_sq,
    ));
    out.push(Comparison::new(
        "H squared degrees".into(),
        ctx.h_group().order(),
        h_sq,
    ));
    for (gamma, chi) in ctx.g_characters()? {
        out.push(Comparison::new(
            format!("degree of {gamma}"),
            gamma.degree(),
            degree(chi)?,
        ));
    }
    for (alpha, xi) in ctx.h_characters()? {
        out.push(Comparison::new(
            format!("degree of {alpha}"),
            alpha.degree(),
            degree(xi)?,
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn all_pass(cs: Vec<Comparison>) {
        for c in cs {
            assert!(
                c.passed(),
                "{}: expected {} computed {}",
                c.what,
                c.expected,
                c.computed
            );
        }
    }

    #[test]
    fn lr_examples() {
        assert_eq!(
            lr_by_characters(&part("[3,2,1]"), &part("[2,1]"), &part("[2,1]")),
            Some(2)
        );
        assert_eq!(
            lr_by_characters(&part("[2]"), &part("[1]"), &part("[1]")),
            Some(1)
        );
        assert_eq!(
            lr_by_characters(&part("[2]"), &part("[1,1]"), &Partition::empty()),
            Some(0)
        );
        assert_eq!(
            lr_by_characters(
                &Partition::empty(),
                &Partition::empty(),
                &Partition::empty()
            ),
            Some(1)
        );
    }

    #[test]
    fn restriction_p3_w1() {
        let ctx = OracleContext::new(3, 1).unwrap();
        let gamma = ctx.g_label(&[(2, &part("[1]"))]).unwrap();
        let res = ctx.oracle_restriction(&gamma).unwrap();
        assert_eq!(res.len(), 2);
        assert!(res.values().all(|&m| m == 1));
        all_pass(check_restrictions(&ctx).unwrap());
    }

    #[test]
    fn weight_zero() {
        let ctx = OracleContext::new(5, 0).unwrap();
        all_pass(check_restrictions(&ctx).unwrap());
        all_pass(check_class_structure(&ctx).unwrap());
        all_pass(verify_mackey_multiplicities(&ctx).unwrap());
    }

    #[test]
    fn mackey_examples() {
        let ctx = OracleContext::new(3, 2).unwrap();
        assert_eq!(
            ctx.mackey_multiplicity(1, &part("[2]"), &part("[1]"), &part("[1]"))
                .unwrap(),
            1
        );
        all_pass(verify_mackey_multiplicities(&ctx).unwrap());
    }

    #[test]
    fn slot_checks_p3_w2() {
        let ctx = OracleContext::new(3, 2).unwrap();
        all_pass(check_middle_slot_restrictions(&ctx).unwrap());
        all_pass(check_middle_slot_closed_form(&ctx).unwrap());
        all_pass(check_hat_restrictions(&ctx).unwrap());
        all_pass(check_induction_reconstruction(&ctx).unwrap());
        all_pass(check_class_structure(&ctx).unwrap());
    }

    #[test]
    fn label_helpers() {
        let ctx = OracleContext::new(5, 1).unwrap();
        assert_eq!(ctx.positions(), vec![1, 2, 4, 5]);
        assert!(ctx.h_label(&[(3, &part("[1]"))]).is_err());
        let alpha = ctx.h_label(&[(4, &part("[1]"))]).unwrap();
        assert_eq!(alpha.hat(), ctx.g_label(&[(4, &part("[1]"))]).unwrap());
    }
}
