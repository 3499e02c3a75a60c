//! The pair `(G×G×H, H̃)` with `G = CL(n)`, `H = CL(m)` and
//! `H̃ = {(h,h,h)}`: multiplicities, two independent Gelfand tests, spherical
//! characters and the permutation character of `G×G×H` on `G×G`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::characters::{irreps, IrrepKind, IrrepLabel};
use crate::clifford::{act_unchecked, CliffordElement, Sign, Subset, TripleElement, TripleGroup};
use crate::error::{Error, Result};
use crate::group::CliffordGroup;
use crate::scalar::{GaussianInt, GaussianRational, Rational};

/// Largest `n` for [`gelfand_check_characters`].
pub const CHARACTER_METHOD_MAX_DEGREE: u32 = 9;
/// Largest `n` for the brute-force methods on `G×G×H`.
pub const BRUTE_FORCE_MAX_DEGREE: u32 = 3;

/// `ρ₁ ⊠ ρ₂ ⊠ θ` with `ρ₁, ρ₂` irreps of `CL(n)` and `θ` an irrep of `CL(m)`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TripleIrrepLabel {
    pub rho1: IrrepLabel,
    pub rho2: IrrepLabel,
    pub theta: IrrepLabel,
}

impl TripleIrrepLabel {
    pub fn new(rho1: IrrepLabel, rho2: IrrepLabel, theta: IrrepLabel) -> Result<Self> {
        if rho1.degree() != rho2.degree() {
            return Err(Error::DegreeMismatch {
                left: rho1.degree(),
                right: rho2.degree(),
            });
        }
        let (n, m) = (rho1.degree(), theta.degree());
        if m > n || m + 1 < n {
            return Err(Error::InvalidSubgroup { n, m });
        }
        Ok(Self { rho1, rho2, theta })
    }

    /// Parses `a,b,c` with `a, b` at degree `n` and `c` at degree `m`.
    pub fn parse(text: &str, n: u32, m: u32) -> Result<Self> {
        let parts = crate::clifford::split_top_level(text);
        if parts.len() != 3 {
            return Err(Error::Parse {
                input: text.into(),
                expected: "three comma-separated irrep labels",
            });
        }
        Self::new(
            IrrepLabel::parse(parts[0], n)?,
            IrrepLabel::parse(parts[1], n)?,
            IrrepLabel::parse(parts[2], m)?,
        )
    }

    pub fn degree(&self) -> u32 {
        self.rho1.degree()
    }

    pub fn subgroup_degree(&self) -> u32 {
        self.theta.degree()
    }

    pub fn dim(&self) -> u64 {
        self.rho1.dim() * self.rho2.dim() * self.theta.dim()
    }

    /// The conjugate label `θ′`.
    pub fn theta_dual(&self) -> IrrepLabel {
        self.theta.dual()
    }

    /// `χ_{ρ₁}(g₁) χ_{ρ₂}(g₂) χ_θ(h)`.
    pub fn character_value(&self, t: &TripleElement) -> Result<GaussianRational> {
        let h = t.h.restrict_to(self.theta.degree())?;
        Ok(self.rho1.value(&t.g1)? * self.rho2.value(&t.g2)? * self.theta.value(&h)?)
    }
}

impl fmt::Display for TripleIrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.rho1, self.rho2, self.theta)
    }
}

/// Outcome of a Gelfand test by characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GelfandReport {
    pub n: u32,
    pub m: u32,
    pub gelfand: bool,
    pub max_multiplicity: u64,
    /// First triple in label order with multiplicity at least two.
    pub witness: Option<(TripleIrrepLabel, u64)>,
    /// Non-zero multiplicities `dim (V₁⊗V₂⊗W)^{H̃}` in label order. The same
    /// number is the multiplicity of `θ′` in `Res(ρ₁⊗ρ₂)`.
    pub multiplicities: Vec<(TripleIrrepLabel, u64)>,
}

impl GelfandReport {
    /// `(CL(n)xCL(n)xCL(m), diag)`.
    pub fn pair(&self) -> String {
        pair_name(self.n, self.m)
    }

    pub fn multiplicity(&self, label: &TripleIrrepLabel) -> u64 {
        self.multiplicities
            .binary_search_by(|(l, _)| l.cmp(label))
            .map_or(0, |k| self.multiplicities[k].1)
    }
}

pub fn pair_name(n: u32, m: u32) -> String {
    alloc::format!("(CL({n})xCL({n})xCL({m}), diag)")
}

fn check_pair(n: u32, m: u32, max: u32, operation: &'static str) -> Result<()> {
    if n > max {
        return Err(Error::DegreeTooLarge {
            degree: n,
            max,
            operation,
        });
    }
    if m > n || m + 1 < n {
        return Err(Error::InvalidSubgroup { n, m });
    }
    Ok(())
}

fn signed(k: usize, m: u32) -> (Sign, Subset) {
    let sign = if k >> m & 1 == 1 {
        Sign::Minus
    } else {
        Sign::Plus
    };
    (sign, Subset::from_bits((k & ((1usize << m) - 1)) as u32))
}

fn to_multiplicity(total: GaussianInt, order: i64) -> Result<u64> {
    let q = total.div_exact(order);
    match q {
        Some(v) if v.im == 0 && v.re >= 0 => Ok(v.re as u64),
        _ => Err(Error::NonIntegralMultiplicity {
            value: alloc::format!("({total})/{order}"),
        }),
    }
}

/// `(1/|H|) Σ_{h∈H} χ_{ρ₁}(h) χ_{ρ₂}(h) χ_θ(h)`, the dimension of the
/// `H̃`-invariants in `V₁⊗V₂⊗W`.
pub fn diagonal_invariant_dim(
    rho1: &IrrepLabel,
    rho2: &IrrepLabel,
    theta: &IrrepLabel,
) -> Result<u64> {
    let label = TripleIrrepLabel::new(*rho1, *rho2, *theta)?;
    let m = label.subgroup_degree();
    let mut total = GaussianInt::ZERO;
    for k in 0..2usize << m {
        let (sign, subset) = signed(k, m);
        total += rho1.value_int(sign, subset)
            * rho2.value_int(sign, subset)
            * theta.value_int(sign, subset);
    }
    to_multiplicity(total, 2i64 << m)
}

/// In-place Walsh–Hadamard transform: `out[C] = Σ_B (−1)^{|B∩C|} v[B]`.
fn walsh_hadamard(v: &mut [GaussianInt]) {
    let mut h = 1;
    while h < v.len() {
        for block in (0..v.len()).step_by(2 * h) {
            for i in block..block + h {
                let (a, b) = (v[i], v[i + h]);
                v[i] = a + b;
                v[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// Multiplicities for every `θ` at once for a fixed `(ρ₁, ρ₂)`, in the order
/// of `irreps(m)`.
fn multiplicities_for_pair(rho1: &IrrepLabel, rho2: &IrrepLabel, m: u32) -> Result<Vec<u64>> {
    let size = 1usize << m;
    let f = |sign, subset| rho1.value_int(sign, subset) * rho2.value_int(sign, subset);
    // θ = χ_C: Σ_{ε,B} f(ε,B)(−1)^{|B∩C|} = WHT(S)(C) with S(B) = f(+,B) + f(−,B).
    let mut s: Vec<GaussianInt> = (0..size)
        .map(|b| {
            let b = Subset::from_bits(b as u32);
            f(Sign::Plus, b) + f(Sign::Minus, b)
        })
        .collect();
    walsh_hadamard(&mut s);
    let order = 2i64 << m;
    let mut out = s
        .into_iter()
        .map(|t| to_multiplicity(t, order))
        .collect::<Result<Vec<_>>>()?;
    // Non-linear θ vanish off ±γ_∅ and ±γ_{X_m}.
    let support: Vec<Subset> = if m == 0 {
        vec![Subset::EMPTY]
    } else {
        vec![Subset::EMPTY, Subset::full(m)]
    };
    for theta in IrrepLabel::spinors(m)? {
        let mut total = GaussianInt::ZERO;
        for &b in &support {
            for sign in [Sign::Plus, Sign::Minus] {
                total += f(sign, b) * theta.value_int(sign, b);
            }
        }
        out.push(to_multiplicity(total, order)?);
    }
    Ok(out)
}

/// Tests whether `(CL(n)×CL(n)×CL(m), H̃)` is a Gelfand pair by computing
/// `dim (V₁⊗V₂⊗W)^{H̃}` for every irrep triple.
pub fn gelfand_check_characters(n: u32, m: u32) -> Result<GelfandReport> {
    check_pair(
        n,
        m,
        CHARACTER_METHOD_MAX_DEGREE,
        "the character Gelfand test",
    )?;
    let big = irreps(n)?;
    let small = irreps(m)?;
    let mut multiplicities = Vec::new();
    let mut witness = None;
    let mut max_multiplicity = 0;
    for rho1 in &big {
        for rho2 in &big {
            let mults = multiplicities_for_pair(rho1, rho2, m)?;
            for (theta, mult) in small.iter().zip(mults) {
                if mult == 0 {
                    continue;
                }
                let label = TripleIrrepLabel {
                    rho1: *rho1,
                    rho2: *rho2,
                    theta: *theta,
                };
                if mult >= 2 && witness.is_none() {
                    witness = Some((label, mult));
                }
                max_multiplicity = max_multiplicity.max(mult);
                multiplicities.push((label, mult));
            }
        }
    }
    Ok(GelfandReport {
        n,
        m,
        gelfand: witness.is_none(),
        max_multiplicity,
        witness,
        multiplicities,
    })
}

/// Index tables for `Γ = G×G×H` (`|Γ| ≤ 2^{12}` under the brute-force guard).
struct TripleTables {
    m: u32,
    g: Vec<CliffordElement>,
    h: Vec<CliffordElement>,
}

impl TripleTables {
    fn new(group: &TripleGroup) -> Self {
        let n = group.degree();
        Self {
            m: group.subgroup_degree(),
            g: (0..2usize << n)
                .map(|i| CliffordElement::from_index(n, i).expect("in range"))
                .collect(),
            h: group.subgroup_elements(),
        }
    }

    fn len(&self) -> usize {
        self.g.len() * self.g.len() * self.h.len()
    }

    fn decode(&self, i: usize) -> TripleElement {
        let hl = self.h.len();
        let gl = self.g.len();
        TripleElement {
            g1: self.g[i / (gl * hl)],
            g2: self.g[(i / hl) % gl],
            h: self.h[i % hl],
        }
    }

    fn encode(&self, t: &TripleElement) -> usize {
        let sign_bit = usize::from(t.h.sign() == Sign::Minus);
        let h = sign_bit << self.m | t.h.subset().bits() as usize;
        (t.g1.index() * self.g.len() + t.g2.index()) * self.h.len() + h
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.decode(a), self.decode(b));
        self.encode(&TripleElement {
            g1: x.g1.mul_unchecked(&y.g1),
            g2: x.g2.mul_unchecked(&y.g2),
            h: x.h.mul_unchecked(&y.h),
        })
    }

    fn inv(&self, a: usize) -> usize {
        let x = self.decode(a);
        self.encode(&TripleElement {
            g1: x.g1.inverse(),
            g2: x.g2.inverse(),
            h: x.h.inverse(),
        })
    }

    fn diagonal(&self) -> Vec<usize> {
        self.h
            .iter()
            .map(|&h| self.encode(&TripleElement { g1: h, g2: h, h }))
            .collect()
    }
}

/// Double cosets `H̃ t H̃` of `Γ`, as a coset id per element plus
/// representatives.
fn double_cosets(tables: &TripleTables) -> (Vec<usize>, Vec<usize>) {
    let diag = tables.diagonal();
    const UNSEEN: usize = usize::MAX;
    let mut coset = vec![UNSEEN; tables.len()];
    let mut reps = Vec::new();
    for t in 0..tables.len() {
        if coset[t] != UNSEEN {
            continue;
        }
        let id = reps.len();
        reps.push(t);
        for &k1 in &diag {
            let left = tables.mul(k1, t);
            for &k2 in &diag {
                coset[tables.mul(left, k2)] = id;
            }
        }
    }
    (coset, reps)
}

/// Tests the Gelfand property through commutativity of the algebra of
/// bi-`H̃`-invariant functions on `Γ = G×G×H` under convolution.
///
/// With `f_a` the indicator of the double coset `D_a`,
/// `(f_a * f_b)(r) = #{x ∈ D_a : x⁻¹r ∈ D_b}`, and the products are themselves
/// bi-invariant, so comparing `f_a * f_b` with `f_b * f_a` at one
/// representative per double coset decides commutativity.
pub fn gelfand_check_biinvariant(n: u32, m: u32) -> Result<bool> {
    check_pair(
        n,
        m,
        BRUTE_FORCE_MAX_DEGREE,
        "the bi-invariant Gelfand test",
    )?;
    let tables = TripleTables::new(&TripleGroup::new(n, m)?);
    let (coset, reps) = double_cosets(&tables);
    let k = reps.len();
    let inverses: Vec<usize> = (0..tables.len()).map(|x| tables.inv(x)).collect();
    let mut counts = vec![0u32; k * k];
    for &r in &reps {
        counts.iter_mut().for_each(|c| *c = 0);
        for x in 0..tables.len() {
            let a = coset[x];
            let b = coset[tables.mul(inverses[x], r)];
            counts[a * k + b] += 1;
        }
        for a in 0..k {
            for b in a + 1..k {
                if counts[a * k + b] != counts[b * k + a] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Number of `H̃` double cosets in `G×G×H`, which equals the rank of the
/// permutation representation and `Σ multiplicity²`.
pub fn double_coset_count(n: u32, m: u32) -> Result<usize> {
    check_pair(n, m, BRUTE_FORCE_MAX_DEGREE, "double coset enumeration")?;
    let tables = TripleTables::new(&TripleGroup::new(n, m)?);
    Ok(double_cosets(&tables).1.len())
}

/// `ψ_σ(g₁,g₂,h₁) = (1/|H|) Σ_{h∈H} conj χ_{ρ₁}(hg₁) conj χ_{ρ₂}(hg₂) conj χ_θ(hh₁)`.
pub fn spherical_character(
    sigma: &TripleIrrepLabel,
    at: &TripleElement,
) -> Result<GaussianRational> {
    let (n, m) = (sigma.degree(), sigma.subgroup_degree());
    let group = TripleGroup::new(n, m)?;
    group.check(at)?;
    let mut total = GaussianInt::ZERO;
    for h in group.subgroup_elements() {
        let a = h.mul_unchecked(&at.g1);
        let b = h.mul_unchecked(&at.g2);
        let c = h.mul_unchecked(&at.h);
        total += sigma.rho1.value_int(a.sign(), a.subset())
            * sigma.rho2.value_int(b.sign(), b.subset())
            * sigma.theta.value_int(c.sign(), c.subset());
    }
    let value = GaussianRational::from(total).conj();
    Ok(value.scale(Rational::new(1, 2i64 << m)))
}

/// A class function on `G×G×H`, stored per triple of classes.
#[derive(Clone, Debug)]
pub struct TripleClassFunction {
    g: Arc<CliffordGroup>,
    h: Arc<CliffordGroup>,
    values: Vec<GaussianRational>,
}

impl TripleClassFunction {
    fn slot(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.g.class_count() + b) * self.h.class_count() + c
    }

    pub fn degree(&self) -> u32 {
        self.g.degree()
    }

    pub fn subgroup_degree(&self) -> u32 {
        self.h.degree()
    }

    pub fn value(&self, t: &TripleElement) -> Result<GaussianRational> {
        let a = self.g.class_index(&t.g1)?;
        let b = self.g.class_index(&t.g2)?;
        let c = self.h.class_index(&t.h.restrict_to(self.h.degree())?)?;
        Ok(self.values[self.slot(a, b, c)])
    }

    /// `⟨self, χ_σ⟩ = (1/|Γ|) Σ_t self(t) conj χ_σ(t)`.
    pub fn inner_with(&self, sigma: &TripleIrrepLabel) -> Result<GaussianRational> {
        if sigma.degree() != self.degree() || sigma.subgroup_degree() != self.subgroup_degree() {
            return Err(Error::DegreeMismatch {
                left: sigma.degree(),
                right: self.degree(),
            });
        }
        let mut total = GaussianRational::ZERO;
        for (a, ca) in self.g.classes().iter().enumerate() {
            let va = sigma.rho1.value(&ca.representative)?;
            for (b, cb) in self.g.classes().iter().enumerate() {
                let vb = sigma.rho2.value(&cb.representative)?;
                for (c, cc) in self.h.classes().iter().enumerate() {
                    let v = self.values[self.slot(a, b, c)];
                    if v.is_zero() {
                        continue;
                    }
                    let vc = sigma.theta.value(&cc.representative)?;
                    let size = (ca.size() * cb.size() * cc.size()) as i64;
                    total += (v * (va * vb * vc).conj()).scale(Rational::from_integer(size));
                }
            }
        }
        let order = (self.g.order() * self.g.order() * self.h.order()) as i64;
        Ok(total.scale(Rational::new(1, order)))
    }
}

/// The character of `η`, the permutation representation of `G×G×H` on
/// `G×G`: the value at `t` is the number of points fixed by `t`.
pub fn permutation_character_eta(n: u32, m: u32) -> Result<TripleClassFunction> {
    check_pair(
        n,
        m,
        BRUTE_FORCE_MAX_DEGREE,
        "the permutation character of η",
    )?;
    let group = TripleGroup::new(n, m)?;
    let g = Arc::new(CliffordGroup::new(n)?);
    let h = Arc::new(CliffordGroup::new(m)?);
    let mut values = Vec::with_capacity(g.class_count() * g.class_count() * h.class_count());
    for ca in g.classes() {
        for cb in g.classes() {
            for cc in h.classes() {
                let t = TripleElement {
                    g1: ca.representative,
                    g2: cb.representative,
                    h: cc.representative.embed(n)?,
                };
                group.check(&t)?;
                let mut fixed = 0i64;
                for &x in g.elements() {
                    for &y in g.elements() {
                        if act_unchecked(&t, x, y) == (x, y) {
                            fixed += 1;
                        }
                    }
                }
                values.push(GaussianRational::from_int(fixed));
            }
        }
    }
    Ok(TripleClassFunction { g, h, values })
}

/// Multiplicity of every irrep triple in `η` via [`permutation_character_eta`].
pub fn eta_multiplicities(n: u32, m: u32) -> Result<BTreeMap<TripleIrrepLabel, u64>> {
    let eta = permutation_character_eta(n, m)?;
    let mut out = BTreeMap::new();
    for rho1 in irreps(n)? {
        for rho2 in irreps(n)? {
            for theta in irreps(m)? {
                let label = TripleIrrepLabel::new(rho1, rho2, theta)?;
                let v = eta.inner_with(&label)?;
                match v.to_integer() {
                    Some(k) if k >= 0 => {
                        if k > 0 {
                            out.insert(label, k as u64);
                        }
                    }
                    _ => {
                        return Err(Error::NonIntegralMultiplicity {
                            value: alloc::format!("{v:#}"),
                        })
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Whether `θ` is one of the non-linear irreps.
pub fn is_spinor(label: &IrrepLabel) -> bool {
    !matches!(label.kind(), IrrepKind::OneDim(_))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn chi(n: u32, ix: &[u32]) -> IrrepLabel {
        IrrepLabel::one_dim(n, Subset::from_indices(ix.iter().copied())).unwrap()
    }

    fn rho(n: u32) -> IrrepLabel {
        IrrepLabel::new(n, IrrepKind::Rho).unwrap()
    }

    #[test]
    fn invariant_dims() {
        assert_eq!(
            diagonal_invariant_dim(&chi(2, &[]), &chi(2, &[]), &chi(2, &[])).unwrap(),
            1
        );
        assert_eq!(
            diagonal_invariant_dim(&chi(3, &[1]), &chi(3, &[2, 3]), &chi(3, &[1, 2, 3])).unwrap(),
            1
        );
        assert_eq!(
            diagonal_invariant_dim(&chi(3, &[1]), &chi(3, &[2, 3]), &chi(3, &[1, 2])).unwrap(),
            0
        );
        assert_eq!(
            diagonal_invariant_dim(&rho(2), &rho(2), &chi(1, &[])).unwrap(),
            2
        );
        assert_eq!(
            diagonal_invariant_dim(&rho(2), &rho(2), &chi(1, &[1])).unwrap(),
            2
        );
        assert!(diagonal_invariant_dim(&rho(2), &rho(2), &chi(3, &[])).is_err());
    }

    #[test]
    fn batched_matches_direct() {
        for (n, m) in [(1, 1), (1, 0), (2, 1), (2, 2), (3, 2), (3, 3), (4, 3)] {
            for rho1 in irreps(n).unwrap() {
                for rho2 in irreps(n).unwrap() {
                    let batch = multiplicities_for_pair(&rho1, &rho2, m).unwrap();
                    for (theta, b) in irreps(m).unwrap().iter().zip(batch) {
                        assert_eq!(b, diagonal_invariant_dim(&rho1, &rho2, theta).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn reports() {
        assert!(gelfand_check_characters(3, 3).unwrap().gelfand);
        assert!(gelfand_check_characters(3, 2).unwrap().gelfand);
        let r = gelfand_check_characters(2, 1).unwrap();
        assert!(!r.gelfand);
        assert_eq!(r.max_multiplicity, 2);
        let (w, mult) = r.witness.unwrap();
        assert_eq!(w.to_string(), "(rho, rho, chi:{})");
        assert_eq!(mult, 2);
        assert_eq!(r.pair(), "(CL(2)xCL(2)xCL(1), diag)");
        assert_eq!(r.multiplicity(&w), 2);
        assert!(gelfand_check_characters(10, 10).is_err());
        assert!(gelfand_check_characters(3, 1).is_err());
    }

    #[test]
    fn biinvariant_small() {
        assert!(gelfand_check_biinvariant(1, 1).unwrap());
        assert!(!gelfand_check_biinvariant(2, 1).unwrap());
        assert!(gelfand_check_biinvariant(4, 4).is_err());
    }

    #[test]
    fn eta_at_n1() {
        let eta = permutation_character_eta(1, 1).unwrap();
        let id = TripleGroup::new(1, 1).unwrap().identity();
        assert_eq!(eta.value(&id).unwrap(), GaussianRational::from_int(16));
        let mults = eta_multiplicities(1, 1).unwrap();
        let triv = TripleIrrepLabel::new(chi(1, &[]), chi(1, &[]), chi(1, &[])).unwrap();
        assert_eq!(mults[&triv], 1);
        let total: u64 = mults.iter().map(|(l, k)| l.dim() * k).sum();
        assert_eq!(total, 16);
    }

    #[test]
    fn parse_triple() {
        let t = TripleIrrepLabel::parse("chi:{1,2},rho+,rho-", 3, 3).unwrap();
        assert_eq!(t.to_string(), "(chi:{1,2}, rho+, rho-)");
        assert!(TripleIrrepLabel::parse("rho,rho", 2, 2).is_err());
    }
}
