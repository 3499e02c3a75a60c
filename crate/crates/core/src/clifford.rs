//! Arithmetic in the Clifford group `CL(n)`.
//!
//! An element `εγ_A` is a sign together with a subset `A ⊆ X_n = {1,…,n}`,
//! stored as a bitmask (index `i` ↦ bit `i−1`). Multiplication follows
//! `ε₁γ_A · ε₂γ_B = ε₁ε₂(−1)^{ξ(A,B)} γ_{A△B}` where `ξ(A,B)` counts the
//! pairs `(a,b) ∈ A×B` with `a > b`.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::MAX_DEGREE;

/// A subset of `X_n = {1,…,n}` as a bitmask.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// `X_n` itself.
    pub const fn full(n: u32) -> Self {
        if n >= 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    /// Builds a subset from 1-based indices. Panics on index 0 or > 32.
    pub fn from_indices<I: IntoIterator<Item = u32>>(indices: I) -> Self {
        Subset(indices.into_iter().fold(0, |acc, i| {
            assert!((1..=32).contains(&i), "subset index {i} out of range");
            acc | 1 << (i - 1)
        }))
    }

    pub const fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, index: u32) -> bool {
        index >= 1 && index <= 32 && self.0 >> (index - 1) & 1 == 1
    }

    pub const fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Whether the subset lies in `X_n`.
    pub const fn within(self, n: u32) -> bool {
        self.is_subset_of(Subset::full(n))
    }

    pub const fn union(self, o: Subset) -> Self {
        Subset(self.0 | o.0)
    }

    pub const fn intersection(self, o: Subset) -> Self {
        Subset(self.0 & o.0)
    }

    pub const fn symmetric_difference(self, o: Subset) -> Self {
        Subset(self.0 ^ o.0)
    }

    pub const fn difference(self, o: Subset) -> Self {
        Subset(self.0 & !o.0)
    }

    /// `X_n ∖ self`.
    pub const fn complement(self, n: u32) -> Self {
        Subset(Subset::full(n).0 & !self.0)
    }

    /// Indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = u32> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            (bits != 0).then(|| {
                let i = bits.trailing_zeros();
                bits &= bits - 1;
                i + 1
            })
        })
    }

    /// All subsets of `X_n` in increasing bitmask order.
    pub fn all(n: u32) -> impl Iterator<Item = Subset> {
        (0..=Subset::full(n).0).map(Subset)
    }

    pub fn check_within(self, n: u32) -> Result<()> {
        if self.within(n) {
            Ok(())
        } else {
            Err(Error::SubsetOutOfRange {
                subset: self.to_string(),
                degree: n,
            })
        }
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for Subset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            input: s.into(),
            expected: "a subset such as `{1,3}` or `{}`",
        };
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(err)?
            .trim();
        if inner.is_empty() {
            return Ok(Subset::EMPTY);
        }
        let mut bits = 0u32;
        for part in inner.split(',') {
            let i: u32 = part.trim().parse().map_err(|_| err())?;
            if !(1..=MAX_DEGREE).contains(&i) || bits >> (i - 1) & 1 == 1 {
                return Err(err());
            }
            bits |= 1 << (i - 1);
        }
        Ok(Subset(bits))
    }
}

/// `ξ(A,B) = #{(a,b) ∈ A×B : a > b}`.
pub fn xi(a: Subset, b: Subset) -> u32 {
    a.indices()
        .map(|i| (b.bits() & ((1u32 << (i - 1)) - 1)).count_ones())
        .sum()
}

/// The sign `ε ∈ {+1, −1}`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(−1)^k`.
    pub const fn from_parity(k: u32) -> Self {
        if k % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub const fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub const fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, o: Sign) -> Sign {
        if self == o {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// An element `±γ_A` of `CL(n)`.
///
/// The derived order is the deterministic enumeration order: degree, then
/// sign (`+` first), then the subset read as a binary integer.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CliffordElement {
    degree: u8,
    sign: Sign,
    subset: Subset,
}

fn check_degree(n: u32) -> Result<()> {
    if n > MAX_DEGREE {
        Err(Error::DegreeTooLarge {
            degree: n,
            max: MAX_DEGREE,
            operation: "Clifford element arithmetic",
        })
    } else {
        Ok(())
    }
}

impl CliffordElement {
    pub fn new(degree: u32, sign: Sign, subset: Subset) -> Result<Self> {
        check_degree(degree)?;
        subset.check_within(degree)?;
        Ok(Self {
            degree: degree as u8,
            sign,
            subset,
        })
    }

    /// `+γ_A`.
    pub fn gamma(degree: u32, subset: Subset) -> Result<Self> {
        Self::new(degree, Sign::Plus, subset)
    }

    pub fn identity(degree: u32) -> Result<Self> {
        Self::new(degree, Sign::Plus, Subset::EMPTY)
    }

    /// The central element `−1 = −γ_∅`.
    pub fn minus_one(degree: u32) -> Result<Self> {
        Self::new(degree, Sign::Minus, Subset::EMPTY)
    }

    pub fn degree(&self) -> u32 {
        self.degree as u32
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn subset(&self) -> Subset {
        self.subset
    }

    pub fn is_identity(&self) -> bool {
        self.sign == Sign::Plus && self.subset.is_empty()
    }

    /// Position in the enumeration order of `CL(n)`.
    pub fn index(&self) -> usize {
        let sign_bit = usize::from(self.sign == Sign::Minus);
        sign_bit << self.degree | self.subset.bits() as usize
    }

    pub fn from_index(degree: u32, index: usize) -> Result<Self> {
        check_degree(degree)?;
        if index >> (degree + 1) != 0 {
            return Err(Error::Shape(alloc::format!(
                "index {index} out of range for CL({degree})"
            )));
        }
        let sign = if index >> degree & 1 == 1 {
            Sign::Minus
        } else {
            Sign::Plus
        };
        let subset = Subset((index & ((1usize << degree) - 1)) as u32);
        Ok(Self {
            degree: degree as u8,
            sign,
            subset,
        })
    }

    fn same_degree(&self, o: &Self) -> Result<()> {
        if self.degree == o.degree {
            Ok(())
        } else {
            Err(Error::DegreeMismatch {
                left: self.degree(),
                right: o.degree(),
            })
        }
    }

    pub fn multiply(&self, o: &Self) -> Result<Self> {
        self.same_degree(o)?;
        Ok(self.mul_unchecked(o))
    }

    pub(crate) fn mul_unchecked(&self, o: &Self) -> Self {
        Self {
            degree: self.degree,
            sign: self.sign * o.sign * Sign::from_parity(xi(self.subset, o.subset)),
            subset: self.subset.symmetric_difference(o.subset),
        }
    }

    /// `(εγ_A)⁻¹ = ε(−1)^{|A|(|A|−1)/2} γ_A`.
    pub fn inverse(&self) -> Self {
        let k = self.subset.len();
        Self {
            sign: self.sign * Sign::from_parity(k * k.saturating_sub(1) / 2),
            ..*self
        }
    }

    /// `c⁻¹ · self · c`.
    pub fn conjugate_by(&self, c: &Self) -> Result<Self> {
        self.same_degree(c)?;
        Ok(c.inverse().mul_unchecked(self).mul_unchecked(c))
    }

    pub fn negate(&self) -> Self {
        Self {
            sign: self.sign.flip(),
            ..*self
        }
    }

    /// The same element viewed in `CL(n)` for `n ≥ degree`.
    pub fn embed(&self, n: u32) -> Result<Self> {
        if n < self.degree() {
            return Err(Error::InvalidSubgroup {
                n,
                m: self.degree(),
            });
        }
        check_degree(n)?;
        Ok(Self {
            degree: n as u8,
            ..*self
        })
    }

    /// The same element viewed in `CL(m)`; fails unless the subset lies in `X_m`.
    pub fn restrict_to(&self, m: u32) -> Result<Self> {
        if !self.subset.within(m) || m > self.degree() {
            return Err(Error::NotInSubgroup {
                element: self.to_string(),
                m,
            });
        }
        Ok(Self {
            degree: m as u8,
            ..*self
        })
    }

    /// Parses the element syntax `+g{1,3}` / `-g{}` at degree `n`.
    pub fn parse(text: &str, degree: u32) -> Result<Self> {
        let (sign, subset) = parse_signed_subset(text)?;
        Self::new(degree, sign, subset)
    }
}

fn parse_signed_subset(text: &str) -> Result<(Sign, Subset)> {
    let t = text.trim();
    let err = || Error::Parse {
        input: t.into(),
        expected: "an element such as `+g{1,3}` or `-g{}`",
    };
    let (sign, rest) = if let Some(r) = t.strip_prefix('+') {
        (Sign::Plus, r)
    } else if let Some(r) = t.strip_prefix('-') {
        (Sign::Minus, r)
    } else {
        return Err(err());
    };
    let set = rest.strip_prefix('g').ok_or_else(err)?;
    let subset = set.parse().map_err(|_| err())?;
    Ok((sign, subset))
}

/// Splits a comma-separated list of items whose own syntax may contain
/// commas inside braces, e.g. `+g{1,2},-g{}`.
pub fn split_top_level(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, ch) in text.char_indices() {
        match ch {
            '{' => depth += 1,
            '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(text[start..].trim());
    out
}

/// Parses a comma-separated element list such as `+g{1},+g{2}`.
pub fn parse_element_list(text: &str, degree: u32) -> Result<Vec<CliffordElement>> {
    split_top_level(text)
        .into_iter()
        .map(|s| CliffordElement::parse(s, degree))
        .collect()
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}g{}", self.sign, self.subset)
    }
}

/// An element `(g₁, g₂, h)` of `G×G×H` with `G = CL(n)` and `H = CL(m)`
/// embedded in `G`. All three components carry degree `n`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TripleElement {
    pub g1: CliffordElement,
    pub g2: CliffordElement,
    pub h: CliffordElement,
}

impl fmt::Display for TripleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.g1, self.g2, self.h)
    }
}

/// The group `CL(n)×CL(n)×CL(m)`, `m ∈ {n−1, n}`, acting on `CL(n)×CL(n)` by
/// `(g₁,g₂,h)·(g₃,g₄) = (g₁g₃g₂⁻¹, g₂g₄h⁻¹)`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct TripleGroup {
    n: u32,
    m: u32,
}

/// Largest `n` for which [`TripleGroup::elements`] enumerates `G×G×H`.
pub const TRIPLE_ENUMERATION_MAX_DEGREE: u32 = 4;

impl TripleGroup {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        check_degree(n)?;
        if m > n || m + 1 < n {
            return Err(Error::InvalidSubgroup { n, m });
        }
        Ok(Self { n, m })
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn subgroup_degree(&self) -> u32 {
        self.m
    }

    /// `|G|²·|H|`.
    pub fn order(&self) -> u64 {
        1u64 << (2 * (self.n + 1) + self.m + 1)
    }

    pub fn element(
        &self,
        g1: CliffordElement,
        g2: CliffordElement,
        h: CliffordElement,
    ) -> Result<TripleElement> {
        let t = TripleElement { g1, g2, h };
        self.check(&t)?;
        Ok(t)
    }

    pub fn check(&self, t: &TripleElement) -> Result<()> {
        for g in [&t.g1, &t.g2, &t.h] {
            if g.degree() != self.n {
                return Err(Error::DegreeMismatch {
                    left: g.degree(),
                    right: self.n,
                });
            }
        }
        if !t.h.subset().within(self.m) {
            return Err(Error::NotInSubgroup {
                element: t.h.to_string(),
                m: self.m,
            });
        }
        Ok(())
    }

    pub fn identity(&self) -> TripleElement {
        let e = CliffordElement::identity(self.n).expect("degree checked at construction");
        TripleElement { g1: e, g2: e, h: e }
    }

    /// `(h, h, h)` for `h ∈ H`.
    pub fn diagonal(&self, h: CliffordElement) -> Result<TripleElement> {
        self.element(h, h, h)
    }

    pub fn multiply(&self, a: &TripleElement, b: &TripleElement) -> Result<TripleElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(TripleElement {
            g1: a.g1.mul_unchecked(&b.g1),
            g2: a.g2.mul_unchecked(&b.g2),
            h: a.h.mul_unchecked(&b.h),
        })
    }

    pub fn inverse(&self, t: &TripleElement) -> TripleElement {
        TripleElement {
            g1: t.g1.inverse(),
            g2: t.g2.inverse(),
            h: t.h.inverse(),
        }
    }

    /// The action `(g₁,g₂,h)·(g₃,g₄) = (g₁g₃g₂⁻¹, g₂g₄h⁻¹)`.
    pub fn act(
        &self,
        t: &TripleElement,
        point: (CliffordElement, CliffordElement),
    ) -> Result<(CliffordElement, CliffordElement)> {
        self.check(t)?;
        let (g3, g4) = point;
        if g3.degree() != self.n || g4.degree() != self.n {
            return Err(Error::DegreeMismatch {
                left: g3.degree().max(g4.degree()),
                right: self.n,
            });
        }
        Ok(act_unchecked(t, g3, g4))
    }

    /// Elements of the embedded subgroup `H = CL(m)` at degree `n`.
    pub fn subgroup_elements(&self) -> Vec<CliffordElement> {
        (0..2usize << self.m)
            .map(|k| {
                let sign = if k >> self.m & 1 == 1 {
                    Sign::Minus
                } else {
                    Sign::Plus
                };
                let subset = Subset((k & ((1 << self.m) - 1)) as u32);
                CliffordElement::new(self.n, sign, subset).expect("subset lies in X_m ⊆ X_n")
            })
            .collect()
    }

    /// All of `G×G×H` in lexicographic order (`g₁` major).
    pub fn elements(&self) -> Result<Vec<TripleElement>> {
        if self.n > TRIPLE_ENUMERATION_MAX_DEGREE {
            return Err(Error::DegreeTooLarge {
                degree: self.n,
                max: TRIPLE_ENUMERATION_MAX_DEGREE,
                operation: "enumerating G×G×H",
            });
        }
        let g: Vec<_> = (0..2usize << self.n)
            .map(|i| CliffordElement::from_index(self.n, i).expect("index in range"))
            .collect();
        let h = self.subgroup_elements();
        let mut out = Vec::with_capacity(g.len() * g.len() * h.len());
        for &g1 in &g {
            for &g2 in &g {
                for &hh in &h {
                    out.push(TripleElement { g1, g2, h: hh });
                }
            }
        }
        Ok(out)
    }

    /// Generators: `γ_{j}` and `−1` in each factor.
    pub fn generators(&self) -> Vec<TripleElement> {
        let e = self.identity();
        let gens = |k: u32| {
            let mut v: Vec<CliffordElement> = (1..=k)
                .map(|j| CliffordElement::gamma(self.n, Subset::from_indices([j])).unwrap())
                .collect();
            v.push(CliffordElement::minus_one(self.n).unwrap());
            v
        };
        let mut out = Vec::new();
        for g in gens(self.n) {
            out.push(TripleElement { g1: g, ..e });
            out.push(TripleElement { g2: g, ..e });
        }
        for g in gens(self.m) {
            out.push(TripleElement { h: g, ..e });
        }
        out
    }
}

pub(crate) fn act_unchecked(
    t: &TripleElement,
    g3: CliffordElement,
    g4: CliffordElement,
) -> (CliffordElement, CliffordElement) {
    (
        t.g1.mul_unchecked(&g3).mul_unchecked(&t.g2.inverse()),
        t.g2.mul_unchecked(&g4).mul_unchecked(&t.h.inverse()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(ix: &[u32]) -> Subset {
        Subset::from_indices(ix.iter().copied())
    }

    fn el(n: u32, sign: Sign, ix: &[u32]) -> CliffordElement {
        CliffordElement::new(n, sign, s(ix)).unwrap()
    }

    #[test]
    fn xi_examples() {
        assert_eq!(xi(s(&[1]), s(&[1])), 0);
        assert_eq!(xi(s(&[2]), s(&[1])), 1);
        assert_eq!(xi(s(&[1, 2]), s(&[1, 2])), 1);
        assert_eq!(xi(s(&[3, 4]), s(&[1, 2])), 4);
    }

    #[test]
    fn multiply_examples() {
        let g1 = el(2, Sign::Plus, &[1]);
        let g2 = el(2, Sign::Plus, &[2]);
        assert!(g1.multiply(&g1).unwrap().is_identity());
        assert_eq!(g2.multiply(&g1).unwrap(), el(2, Sign::Minus, &[1, 2]));
        let x = el(3, Sign::Minus, &[1, 3]);
        assert_eq!(
            CliffordElement::identity(3).unwrap().multiply(&x).unwrap(),
            x
        );
    }

    #[test]
    fn multiply_rejects_degree_mismatch() {
        let a = el(2, Sign::Plus, &[1]);
        let b = el(3, Sign::Plus, &[1]);
        assert_eq!(
            a.multiply(&b),
            Err(Error::DegreeMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn inverse_examples() {
        assert!(CliffordElement::identity(2)
            .unwrap()
            .inverse()
            .is_identity());
        assert_eq!(
            el(2, Sign::Plus, &[1, 2]).inverse(),
            el(2, Sign::Minus, &[1, 2])
        );
        let g = el(2, Sign::Plus, &[1]);
        assert_eq!(g.inverse(), g);
        assert!(g.multiply(&g.inverse()).unwrap().is_identity());
    }

    #[test]
    fn conjugation_examples() {
        let x = el(2, Sign::Plus, &[1]);
        let c = el(2, Sign::Plus, &[2]);
        assert_eq!(x.conjugate_by(&c).unwrap(), el(2, Sign::Minus, &[1]));
        let e = CliffordElement::identity(2).unwrap();
        assert_eq!(e.conjugate_by(&c).unwrap(), e);
        let top = el(3, Sign::Plus, &[1, 2, 3]);
        assert_eq!(top.conjugate_by(&el(3, Sign::Plus, &[1])).unwrap(), top);
    }

    #[test]
    fn embedding() {
        let x = el(1, Sign::Minus, &[1]);
        let y = x.embed(3).unwrap();
        assert_eq!(
            (y.degree(), y.sign(), y.subset()),
            (3, Sign::Minus, s(&[1]))
        );
        assert!(y.embed(2).is_err());
        assert_eq!(y.restrict_to(1).unwrap(), x);
        assert!(el(3, Sign::Plus, &[3]).restrict_to(2).is_err());
    }

    #[test]
    fn subset_out_of_range() {
        assert!(matches!(
            CliffordElement::new(2, Sign::Plus, s(&[3])),
            Err(Error::SubsetOutOfRange { .. })
        ));
        assert!(CliffordElement::identity(MAX_DEGREE + 1).is_err());
    }

    #[test]
    fn element_syntax() {
        let x = CliffordElement::parse("+g{1,3}", 3).unwrap();
        assert_eq!(x, el(3, Sign::Plus, &[1, 3]));
        assert_eq!(alloc::format!("{x}"), "+g{1,3}");
        let e = CliffordElement::parse(" -g{} ", 0).unwrap();
        assert_eq!(alloc::format!("{e}"), "-g{}");
        for bad in ["g{1}", "+{1}", "+g{0}", "+g{1,1}", "+g1", "*g{}"] {
            assert!(CliffordElement::parse(bad, 3).is_err(), "{bad}");
        }
        let list = parse_element_list("+g{1},-g{2,3}", 3).unwrap();
        assert_eq!(list, [el(3, Sign::Plus, &[1]), el(3, Sign::Minus, &[2, 3])]);
    }

    #[test]
    fn index_order_is_sign_major() {
        let order: Vec<_> = (0..8)
            .map(|i| CliffordElement::from_index(2, i).unwrap().to_string())
            .collect();
        assert_eq!(
            order,
            ["+g{}", "+g{1}", "+g{2}", "+g{1,2}", "-g{}", "-g{1}", "-g{2}", "-g{1,2}"]
        );
        let mut sorted = order.clone();
        sorted.sort_by_key(|t| CliffordElement::parse(t, 2).unwrap());
        assert_eq!(sorted, order);
    }

    #[test]
    fn triple_group_validation() {
        assert!(TripleGroup::new(3, 1).is_err());
        assert!(TripleGroup::new(2, 3).is_err());
        let tg = TripleGroup::new(2, 1).unwrap();
        let g = el(2, Sign::Plus, &[2]);
        assert!(matches!(tg.diagonal(g), Err(Error::NotInSubgroup { .. })));
        assert_eq!(tg.subgroup_elements().len(), 4);
        assert_eq!(tg.order(), 256);
    }

    #[test]
    fn triple_identity_acts_trivially() {
        let tg = TripleGroup::new(2, 2).unwrap();
        let p = (el(2, Sign::Minus, &[1]), el(2, Sign::Plus, &[1, 2]));
        assert_eq!(tg.act(&tg.identity(), p).unwrap(), p);
    }
}
