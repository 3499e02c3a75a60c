//! Irreducible characters of `CL(n)`, class functions and decompositions.
//!
//! `CL(n)` has the `2^n` linear characters `χ_A(±γ_B) = (−1)^{|A∩B|}` and
//! one further irrep: `ρ_n` of dimension `2^{n/2}` for `n` even, or the pair
//! `ρ_n^±` of dimension `2^m` for `n = 2m+1`. The non-linear characters
//! vanish off `{±1, ±γ_{X_n}}`:
//!
//! * `χ_{ρ_n}(±γ_B) = ±δ_{B,∅} 2^{n/2}`
//! * `χ_{ρ_n^±}(γ_∅) = 2^m`, `χ_{ρ_n^±}(γ_{X_n}) = ±c·2^m` with `c = 1` for
//!   `m` even and `c = −i` for `m` odd, and `χ(−g) = −χ(g)`.
//!
//! Values are evaluated from these closed forms; the matrix models in
//! [`crate::models`] reproduce them independently through traces.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::clifford::{CliffordElement, Sign, Subset};
use crate::error::{Error, Result};
use crate::group::CliffordGroup;
use crate::scalar::{GaussianInt, GaussianRational, Rational};
use crate::MAX_DEGREE;

/// Which irrep of `CL(n)`. The derived order is the fixed label order:
/// linear characters by subset integer, then `rho`, `rho+`, `rho-`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum IrrepKind {
    OneDim(Subset),
    /// `ρ_n`, `n` even.
    Rho,
    /// `ρ_n^+`, `n` odd.
    RhoPlus,
    /// `ρ_n^−`, `n` odd.
    RhoMinus,
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct IrrepLabel {
    degree: u8,
    kind: IrrepKind,
}

/// `c ∈ {1, −i}` for `n = 2m+1`.
pub fn odd_phase(n: u32) -> GaussianInt {
    debug_assert!(n % 2 == 1);
    if ((n - 1) / 2) % 2 == 0 {
        GaussianInt::ONE
    } else {
        -GaussianInt::I
    }
}

impl IrrepLabel {
    pub fn new(degree: u32, kind: IrrepKind) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::DegreeTooLarge {
                degree,
                max: MAX_DEGREE,
                operation: "irrep labels",
            });
        }
        let label = Self {
            degree: degree as u8,
            kind,
        };
        let invalid = |reason| Error::InvalidIrrep {
            label: label.to_string(),
            degree,
            reason,
        };
        match kind {
            IrrepKind::OneDim(a) if !a.within(degree) => {
                Err(invalid("subset not contained in X_n"))
            }
            IrrepKind::Rho if degree % 2 == 1 => Err(invalid("rho requires n even")),
            IrrepKind::RhoPlus | IrrepKind::RhoMinus if degree % 2 == 0 => {
                Err(invalid("rho+/rho- require n odd"))
            }
            _ => Ok(label),
        }
    }

    pub fn one_dim(degree: u32, subset: Subset) -> Result<Self> {
        Self::new(degree, IrrepKind::OneDim(subset))
    }

    /// The non-linear irrep(s) of `CL(n)`: `[ρ_n]` or `[ρ_n^+, ρ_n^−]`.
    pub fn spinors(degree: u32) -> Result<Vec<Self>> {
        if degree % 2 == 0 {
            Ok(alloc::vec![Self::new(degree, IrrepKind::Rho)?])
        } else {
            Ok(alloc::vec![
                Self::new(degree, IrrepKind::RhoPlus)?,
                Self::new(degree, IrrepKind::RhoMinus)?,
            ])
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree as u32
    }

    pub fn kind(&self) -> IrrepKind {
        self.kind
    }

    pub fn is_linear(&self) -> bool {
        matches!(self.kind, IrrepKind::OneDim(_))
    }

    pub fn dim(&self) -> u64 {
        match self.kind {
            IrrepKind::OneDim(_) => 1,
            IrrepKind::Rho => 1 << (self.degree / 2),
            IrrepKind::RhoPlus | IrrepKind::RhoMinus => 1 << ((self.degree - 1) / 2),
        }
    }

    /// The conjugate (dual) irrep `σ′`, whose character is `conj χ_σ`.
    ///
    /// Linear characters and `ρ_n` are real. For `n = 2m+1` the top value
    /// `±c·2^m` is real when `m` is even; for `m` odd conjugation swaps
    /// `ρ_n^+` and `ρ_n^−`.
    pub fn dual(&self) -> Self {
        let kind = match self.kind {
            IrrepKind::RhoPlus | IrrepKind::RhoMinus
                if odd_phase(self.degree()) != GaussianInt::ONE =>
            {
                if self.kind == IrrepKind::RhoPlus {
                    IrrepKind::RhoMinus
                } else {
                    IrrepKind::RhoPlus
                }
            }
            k => k,
        };
        Self { kind, ..*self }
    }

    /// Character value from the closed formulas; `sign`/`subset` must describe
    /// an element of this label's degree.
    pub fn value_int(&self, sign: Sign, subset: Subset) -> GaussianInt {
        let n = self.degree();
        let eps = sign.value();
        match self.kind {
            IrrepKind::OneDim(a) => {
                GaussianInt::real(Sign::from_parity(a.intersection(subset).len()).value())
            }
            IrrepKind::Rho => {
                if subset.is_empty() {
                    GaussianInt::real(eps << (n / 2))
                } else {
                    GaussianInt::ZERO
                }
            }
            IrrepKind::RhoPlus | IrrepKind::RhoMinus => {
                let scale = 1i64 << ((n - 1) / 2);
                let base = if subset.is_empty() {
                    GaussianInt::real(scale)
                } else if subset == Subset::full(n) {
                    let pm = if self.kind == IrrepKind::RhoPlus {
                        1
                    } else {
                        -1
                    };
                    odd_phase(n).scale(pm * scale)
                } else {
                    GaussianInt::ZERO
                };
                base.scale(eps)
            }
        }
    }

    /// `χ_σ(g)`.
    pub fn value(&self, g: &CliffordElement) -> Result<GaussianRational> {
        if g.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: g.degree(),
            });
        }
        Ok(self.value_int(g.sign(), g.subset()).into())
    }

    /// Parses `chi:{1,3}`, `rho`, `rho+` or `rho-` at degree `n`.
    pub fn parse(text: &str, degree: u32) -> Result<Self> {
        let t = text.trim();
        let kind = match t {
            "rho" => IrrepKind::Rho,
            "rho+" => IrrepKind::RhoPlus,
            "rho-" => IrrepKind::RhoMinus,
            _ => match t.strip_prefix("chi:") {
                Some(set) => IrrepKind::OneDim(set.parse().map_err(|_| Error::Parse {
                    input: t.into(),
                    expected: "an irrep label `chi:{..}`, `rho`, `rho+` or `rho-`",
                })?),
                None => {
                    return Err(Error::Parse {
                        input: t.into(),
                        expected: "an irrep label `chi:{..}`, `rho`, `rho+` or `rho-`",
                    })
                }
            },
        };
        Self::new(degree, kind)
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            IrrepKind::OneDim(a) => write!(f, "chi:{a}"),
            IrrepKind::Rho => f.write_str("rho"),
            IrrepKind::RhoPlus => f.write_str("rho+"),
            IrrepKind::RhoMinus => f.write_str("rho-"),
        }
    }
}

/// All irreps of `CL(n)` in label order.
pub fn irreps(n: u32) -> Result<Vec<IrrepLabel>> {
    let mut out: Vec<_> = Subset::all(n.min(MAX_DEGREE))
        .map(|a| IrrepLabel::one_dim(n, a))
        .collect::<Result<_>>()?;
    out.extend(IrrepLabel::spinors(n)?);
    Ok(out)
}

/// `χ_σ(g)`; see [`IrrepLabel::value`].
pub fn character_value(label: &IrrepLabel, g: &CliffordElement) -> Result<GaussianRational> {
    label.value(g)
}

/// A function on `CL(n)` constant on conjugacy classes, stored per class.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    group: Arc<CliffordGroup>,
    values: Vec<GaussianRational>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.degree() == other.degree() && self.values == other.values
    }
}

impl ClassFunction {
    /// Evaluates `f` on class representatives.
    pub fn from_fn(
        group: &Arc<CliffordGroup>,
        mut f: impl FnMut(&CliffordElement) -> GaussianRational,
    ) -> Self {
        let values = group
            .classes()
            .iter()
            .map(|c| f(&c.representative))
            .collect();
        Self {
            group: Arc::clone(group),
            values,
        }
    }

    pub fn character(group: &Arc<CliffordGroup>, label: &IrrepLabel) -> Result<Self> {
        check_degrees(group.degree(), label.degree())?;
        Ok(Self::from_fn(group, |g| {
            label.value_int(g.sign(), g.subset()).into()
        }))
    }

    pub fn group(&self) -> &Arc<CliffordGroup> {
        &self.group
    }

    pub fn degree(&self) -> u32 {
        self.group.degree()
    }

    /// Values indexed like `group().classes()`.
    pub fn values(&self) -> &[GaussianRational] {
        &self.values
    }

    pub fn value_at(&self, g: &CliffordElement) -> Result<GaussianRational> {
        Ok(self.values[self.group.class_index(g)?])
    }

    /// Pointwise product; the character of the inner tensor product.
    pub fn pointwise_mul(&self, other: &Self) -> Result<Self> {
        check_degrees(self.degree(), other.degree())?;
        Ok(Self {
            group: Arc::clone(&self.group),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| *a * *b)
                .collect(),
        })
    }

    pub fn conj(&self) -> Self {
        Self {
            group: Arc::clone(&self.group),
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }
}

fn check_degrees(a: u32, b: u32) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DegreeMismatch { left: a, right: b })
    }
}

/// `⟨f, g⟩ = (1/|G|) Σ_{x∈G} f(x)·conj g(x)`.
pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Result<GaussianRational> {
    check_degrees(f.degree(), g.degree())?;
    let total: GaussianRational = f
        .group
        .classes()
        .iter()
        .zip(f.values.iter().zip(&g.values))
        .map(|(c, (a, b))| (*a * b.conj()).scale(Rational::from_integer(c.size() as i64)))
        .sum();
    Ok(total.scale(Rational::new(1, f.group.order() as i64)))
}

/// Character of `a ⊗ b` restricted to the diagonal.
pub fn tensor_character(
    group: &Arc<CliffordGroup>,
    a: &IrrepLabel,
    b: &IrrepLabel,
) -> Result<ClassFunction> {
    check_degrees(a.degree(), b.degree())?;
    ClassFunction::character(group, a)?.pointwise_mul(&ClassFunction::character(group, b)?)
}

/// Character of `Res^{CL(n)}_{CL(m)}`; `sub` is the target group `CL(m)`.
pub fn restrict_character(f: &ClassFunction, sub: &Arc<CliffordGroup>) -> Result<ClassFunction> {
    let (n, m) = (f.degree(), sub.degree());
    if m > n {
        return Err(Error::InvalidSubgroup { n, m });
    }
    let mut failure = None;
    let restricted =
        ClassFunction::from_fn(sub, |h| match h.embed(n).and_then(|g| f.value_at(&g)) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                GaussianRational::ZERO
            }
        });
    match failure {
        Some(e) => Err(e),
        None => Ok(restricted),
    }
}

/// A multiset of irreps with positive multiplicities.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decomposition {
    degree: u32,
    terms: BTreeMap<IrrepLabel, u64>,
}

impl Decomposition {
    pub fn new(degree: u32) -> Self {
        Self {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a decomposition, dropping zero multiplicities.
    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = (IrrepLabel, u64)>) -> Self {
        let mut d = Self::new(degree);
        for (label, mult) in terms {
            if mult > 0 {
                *d.terms.entry(label).or_insert(0) += mult;
            }
        }
        d
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn multiplicity(&self, label: &IrrepLabel) -> u64 {
        self.terms.get(label).copied().unwrap_or(0)
    }

    /// Terms in label order.
    pub fn terms(&self) -> impl Iterator<Item = (&IrrepLabel, u64)> {
        self.terms.iter().map(|(k, v)| (k, *v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.terms.values().all(|&m| m == 1)
    }

    pub fn max_multiplicity(&self) -> u64 {
        self.terms.values().copied().max().unwrap_or(0)
    }

    /// `Σ mult·dim`.
    pub fn dimension(&self) -> u64 {
        self.terms.iter().map(|(k, m)| k.dim() * m).sum()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (label, mult)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" ⊕ ")?;
            }
            if *mult == 1 {
                write!(f, "{label}")?;
            } else {
                write!(f, "{mult}·{label}")?;
            }
        }
        Ok(())
    }
}

/// Multiplicities `⟨f, χ_σ⟩` over all irreps `σ`; fails unless every one is a
/// non-negative integer.
pub fn decompose(f: &ClassFunction) -> Result<Decomposition> {
    let n = f.degree();
    let mut terms = Vec::new();
    for label in irreps(n)? {
        let chi = ClassFunction::character(f.group(), &label)?;
        let m = inner_product(f, &chi)?;
        match m.to_integer() {
            Some(k) if k >= 0 => terms.push((label, k as u64)),
            _ => {
                return Err(Error::NotACharacter {
                    irrep: label.to_string(),
                    value: alloc::format!("{m:#}"),
                })
            }
        }
    }
    Ok(Decomposition::from_terms(n, terms))
}

/// `Res^{CL(n)}_{CL(m)}(a ⊗ b)` decomposed into irreps of `CL(m)`.
pub fn restricted_kronecker(
    group: &Arc<CliffordGroup>,
    sub: &Arc<CliffordGroup>,
    a: &IrrepLabel,
    b: &IrrepLabel,
) -> Result<Decomposition> {
    let (n, m) = (group.degree(), sub.degree());
    if m > n || m + 1 < n {
        return Err(Error::InvalidSubgroup { n, m });
    }
    decompose(&restrict_character(&tensor_character(group, a, b)?, sub)?)
}

/// Formats an irrep list as `chi:{}, chi:{1}, rho`.
pub fn join_labels(labels: &[IrrepLabel]) -> String {
    let parts: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
    parts.join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(n: u32) -> Arc<CliffordGroup> {
        Arc::new(CliffordGroup::new(n).unwrap())
    }

    fn chi(n: u32, ix: &[u32]) -> IrrepLabel {
        IrrepLabel::one_dim(n, Subset::from_indices(ix.iter().copied())).unwrap()
    }

    fn el(n: u32, sign: Sign, ix: &[u32]) -> CliffordElement {
        CliffordElement::new(n, sign, Subset::from_indices(ix.iter().copied())).unwrap()
    }

    fn gi(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    #[test]
    fn label_validation() {
        assert!(IrrepLabel::new(3, IrrepKind::Rho).is_err());
        assert!(IrrepLabel::new(2, IrrepKind::RhoPlus).is_err());
        assert!(IrrepLabel::one_dim(2, Subset::from_indices([3])).is_err());
        assert_eq!(irreps(2).unwrap().len(), 5);
        assert_eq!(irreps(3).unwrap().len(), 10);
        assert_eq!(irreps(0).unwrap().len(), 2);
    }

    #[test]
    fn label_syntax() {
        for text in ["chi:{1,3}", "chi:{}", "rho+", "rho-"] {
            let l = IrrepLabel::parse(text, 3).unwrap();
            assert_eq!(l.to_string(), text);
        }
        assert!(IrrepLabel::parse("rho", 3).is_err());
        assert!(IrrepLabel::parse("psi", 3).is_err());
        assert!(IrrepLabel::parse("chi:{4}", 3).is_err());
    }

    #[test]
    fn closed_form_values() {
        let triv = chi(3, &[]);
        assert_eq!(triv.value(&el(3, Sign::Minus, &[1, 2])).unwrap(), gi(1, 0));
        let rho2 = IrrepLabel::new(2, IrrepKind::Rho).unwrap();
        assert_eq!(rho2.value(&el(2, Sign::Plus, &[])).unwrap(), gi(2, 0));
        assert_eq!(rho2.value(&el(2, Sign::Minus, &[])).unwrap(), gi(-2, 0));
        assert_eq!(rho2.value(&el(2, Sign::Plus, &[1])).unwrap(), gi(0, 0));
        assert_eq!(rho2.value(&el(2, Sign::Minus, &[1])).unwrap(), gi(0, 0));
        let rho3p = IrrepLabel::new(3, IrrepKind::RhoPlus).unwrap();
        assert_eq!(
            rho3p.value(&el(3, Sign::Plus, &[1, 2, 3])).unwrap(),
            gi(0, -2)
        );
        assert!(rho3p.value(&el(2, Sign::Plus, &[])).is_err());
    }

    #[test]
    fn inner_product_examples() {
        let g2 = grp(2);
        let a = ClassFunction::character(&g2, &chi(2, &[1])).unwrap();
        assert_eq!(inner_product(&a, &a).unwrap(), gi(1, 0));
        let rho =
            ClassFunction::character(&g2, &IrrepLabel::new(2, IrrepKind::Rho).unwrap()).unwrap();
        assert_eq!(inner_product(&rho, &rho).unwrap(), gi(1, 0));
        let g3 = grp(3);
        let p = ClassFunction::character(&g3, &IrrepLabel::new(3, IrrepKind::RhoPlus).unwrap())
            .unwrap();
        let m = ClassFunction::character(&g3, &IrrepLabel::new(3, IrrepKind::RhoMinus).unwrap())
            .unwrap();
        assert_eq!(inner_product(&p, &m).unwrap(), gi(0, 0));
        assert!(inner_product(&a, &p).is_err());
    }

    #[test]
    fn tensor_with_linear_characters() {
        let g3 = grp(3);
        let ab = tensor_character(&g3, &chi(3, &[1, 2]), &chi(3, &[2, 3])).unwrap();
        assert_eq!(ab, ClassFunction::character(&g3, &chi(3, &[1, 3])).unwrap());
        let plus = IrrepLabel::new(3, IrrepKind::RhoPlus).unwrap();
        let minus = IrrepLabel::new(3, IrrepKind::RhoMinus).unwrap();
        let t = tensor_character(&g3, &chi(3, &[]), &plus).unwrap();
        assert_eq!(t, ClassFunction::character(&g3, &plus).unwrap());
        let even = tensor_character(&g3, &chi(3, &[1, 2]), &plus).unwrap();
        assert_eq!(even, ClassFunction::character(&g3, &plus).unwrap());
        let odd = tensor_character(&g3, &chi(3, &[2]), &plus).unwrap();
        assert_eq!(odd, ClassFunction::character(&g3, &minus).unwrap());
    }

    #[test]
    fn decompose_rejects_non_characters() {
        let g2 = grp(2);
        let half = ClassFunction::from_fn(&g2, |g| {
            if g.is_identity() {
                GaussianRational::ONE
            } else {
                GaussianRational::ZERO
            }
        });
        // The regular character divided by |G| = 8 is not a character.
        assert!(matches!(decompose(&half), Err(Error::NotACharacter { .. })));
    }

    #[test]
    fn restriction_examples() {
        let g3 = grp(3);
        let g2 = grp(2);
        let f = ClassFunction::character(&g3, &chi(3, &[1, 3])).unwrap();
        let r = restrict_character(&f, &g2).unwrap();
        assert_eq!(r, ClassFunction::character(&g2, &chi(2, &[1])).unwrap());
        assert!(
            restrict_character(&ClassFunction::character(&g2, &chi(2, &[])).unwrap(), &g3).is_err()
        );
    }

    #[test]
    fn duals() {
        // n = 3: m = 1 odd, c = −i, so the pair swaps.
        let p3 = IrrepLabel::new(3, IrrepKind::RhoPlus).unwrap();
        assert_eq!(p3.dual().kind(), IrrepKind::RhoMinus);
        // n = 5: m = 2 even, c = 1, self-dual.
        let p5 = IrrepLabel::new(5, IrrepKind::RhoPlus).unwrap();
        assert_eq!(p5.dual(), p5);
        for n in 0..=7 {
            let group = grp(n);
            for l in irreps(n).unwrap() {
                let chi = ClassFunction::character(&group, &l).unwrap();
                let dual = ClassFunction::character(&group, &l.dual()).unwrap();
                assert_eq!(dual, chi.conj(), "{l} at n = {n}");
            }
        }
    }

    #[test]
    fn decomposition_display() {
        let d =
            Decomposition::from_terms(1, [(chi(1, &[]), 2), (chi(1, &[1]), 1), (chi(1, &[1]), 0)]);
        assert_eq!(alloc::format!("{d}"), "2·chi:{} ⊕ chi:{1}");
        assert_eq!(d.dimension(), 3);
        assert!(!d.is_multiplicity_free());
    }
}
