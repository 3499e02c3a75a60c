//! Spherical characters of `(CL(n)×CL(n)×CL(n), diag)` at points
//! `(ε₁γ_{T₁}, ε₂γ_{T₂}, ε₃γ_{T₃})`.
//!
//! [`spherical_value`] sums over `H = CL(n)` directly; [`spherical_closed_form`]
//! dispatches on the shape of the label and evaluates the case formulas.
//! Every value has denominator dividing 2, so the closed forms are computed
//! as Gaussian integers scaled by 2.

use alloc::vec::Vec;
use core::fmt;

use crate::characters::{irreps, odd_phase, IrrepKind, IrrepLabel};
use crate::clifford::{split_top_level, xi, CliffordElement, Sign, Subset, TripleElement};
use crate::error::{Error, Result};
use crate::gelfand::TripleIrrepLabel;
use crate::scalar::{GaussianInt, GaussianRational, Rational};

/// Largest `n` for which [`check_closed_forms_on_grid`] runs.
pub const GRID_MAX_DEGREE: u32 = 4;

/// Largest `n` for which [`subset_sum_lemma`] sums directly.
pub const LEMMA_MAX_DEGREE: u32 = 20;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SphericalQuery {
    pub labels: TripleIrrepLabel,
    pub at: TripleElement,
}

impl SphericalQuery {
    pub fn new(labels: TripleIrrepLabel, at: TripleElement) -> Result<Self> {
        let n = labels.degree();
        if labels.subgroup_degree() != n {
            return Err(Error::InvalidSubgroup {
                n,
                m: labels.subgroup_degree(),
            });
        }
        for g in [at.g1, at.g2, at.h] {
            if g.degree() != n {
                return Err(Error::DegreeMismatch {
                    left: n,
                    right: g.degree(),
                });
            }
        }
        Ok(Self { labels, at })
    }

    /// Parses `"chi:{1},rho+,rho-"` and `"+g{1},+g{1},+g{1}"`.
    pub fn parse(triple: &str, at: &str, n: u32) -> Result<Self> {
        let labels = TripleIrrepLabel::parse(triple, n, n)?;
        let parts = split_top_level(at);
        if parts.len() != 3 {
            return Err(Error::Parse {
                input: at.into(),
                expected: "three comma-separated elements",
            });
        }
        let g = |s: &str| CliffordElement::parse(s, n);
        Self::new(
            labels,
            TripleElement {
                g1: g(parts[0])?,
                g2: g(parts[1])?,
                h: g(parts[2])?,
            },
        )
    }

    pub fn degree(&self) -> u32 {
        self.labels.degree()
    }

    pub fn signs(&self) -> [Sign; 3] {
        [self.at.g1.sign(), self.at.g2.sign(), self.at.h.sign()]
    }

    pub fn subsets(&self) -> [Subset; 3] {
        [self.at.g1.subset(), self.at.g2.subset(), self.at.h.subset()]
    }

    fn label_array(&self) -> [IrrepLabel; 3] {
        [self.labels.rho1, self.labels.rho2, self.labels.theta]
    }
}

impl fmt::Display for SphericalQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ψ{}{}", self.labels, self.at)
    }
}

/// Label shapes covered by the case formulas.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum SphericalFamily {
    /// `χ_A⊠χ_B⊠χ_C`
    LinearTriple,
    /// `ρ⊠ρ⊠ρ` (any signs for odd `n`)
    SpinorTriple,
    /// `χ_A⊠ρ⊠ρ`
    LinearSpinorSpinor,
    /// `χ_A⊠χ_B⊠ρ`
    LinearLinearSpinor,
    Unanalyzed,
}

impl SphericalFamily {
    pub fn of(labels: &TripleIrrepLabel) -> Self {
        let lin = [
            labels.rho1.is_linear(),
            labels.rho2.is_linear(),
            labels.theta.is_linear(),
        ];
        match lin {
            [true, true, true] => Self::LinearTriple,
            [false, false, false] => Self::SpinorTriple,
            [true, false, false] => Self::LinearSpinorSpinor,
            [true, true, false] => Self::LinearLinearSpinor,
            _ => Self::Unanalyzed,
        }
    }

    pub fn is_analyzed(self) -> bool {
        self != Self::Unanalyzed
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::LinearTriple => "chi x chi x chi",
            Self::SpinorTriple => "rho x rho x rho",
            Self::LinearSpinorSpinor => "chi x rho x rho",
            Self::LinearLinearSpinor => "chi x chi x rho",
            Self::Unanalyzed => "unanalyzed",
        }
    }
}

impl fmt::Display for SphericalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ClosedForm {
    pub value: GaussianRational,
    pub family: SphericalFamily,
    /// `false` when the label is outside the analyzed families and `value`
    /// came from direct summation.
    pub analyzed: bool,
}

fn parity(k: u32) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

fn sum_to_value(total: GaussianInt, n: u32) -> GaussianRational {
    GaussianRational::from(total)
        .conj()
        .scale(Rational::new(1, 2i64 << n))
}

/// Direct summation
/// `conj (1/2^{n+1}) Σ_{ε=±1} Σ_{D⊆X_n} Π_i χ_i(ε ε_i (−1)^{ξ(D,T_i)} γ_{D△T_i})`.
pub fn spherical_value(q: &SphericalQuery) -> GaussianRational {
    let n = q.degree();
    let labels = q.label_array();
    let (eps, ts) = (q.signs(), q.subsets());
    let mut total = GaussianInt::ZERO;
    for e in [Sign::Plus, Sign::Minus] {
        for d in Subset::all(n) {
            let mut term = GaussianInt::ONE;
            for i in 0..3 {
                let sign = e * eps[i] * Sign::from_parity(xi(d, ts[i]));
                term = term * labels[i].value_int(sign, d.symmetric_difference(ts[i]));
                if term.is_zero() {
                    break;
                }
            }
            total += term;
        }
    }
    sum_to_value(total, n)
}

/// Twice the closed-form value, or `None` for an unanalyzed family.
fn closed_form_doubled(
    labels: &TripleIrrepLabel,
    eps: [Sign; 3],
    ts: [Subset; 3],
) -> Option<GaussianInt> {
    let n = labels.degree();
    let family = SphericalFamily::of(labels);
    let zero = Some(GaussianInt::ZERO);
    match family {
        SphericalFamily::LinearTriple => {
            let (IrrepKind::OneDim(a), IrrepKind::OneDim(b), IrrepKind::OneDim(c)) =
                (labels.rho1.kind(), labels.rho2.kind(), labels.theta.kind())
            else {
                unreachable!()
            };
            if !a.symmetric_difference(b).symmetric_difference(c).is_empty() {
                return zero;
            }
            let k = a.intersection(ts[0]).len()
                + b.intersection(ts[1]).len()
                + c.intersection(ts[2]).len();
            Some(GaussianInt::real(2 * parity(k)))
        }
        SphericalFamily::SpinorTriple | SphericalFamily::LinearLinearSpinor => zero,
        SphericalFamily::LinearSpinorSpinor => {
            let IrrepKind::OneDim(a) = labels.rho1.kind() else {
                unreachable!()
            };
            let e23 = eps[1].value() * eps[2].value();
            let t1 = ts[0];
            let chi = |s: Subset| parity(a.intersection(s.symmetric_difference(t1)).len());
            let t = ts[1];
            let tbar = t.complement(n);
            if n % 2 == 0 {
                return if ts[1] == ts[2] {
                    Some(GaussianInt::real(2 * e23 * chi(t)))
                } else {
                    zero
                };
            }
            let eta = |l: &IrrepLabel| {
                if l.kind() == IrrepKind::RhoPlus {
                    1
                } else {
                    -1
                }
            };
            let (eta2, eta3) = (eta(&labels.rho2), eta(&labels.theta));
            let c = odd_phase(n);
            if ts[2] == t {
                // c² = ±1 is real, so conjugation leaves it alone.
                let c2 = (c * c).re;
                Some(GaussianInt::real(
                    e23 * (chi(t) + c2 * eta2 * eta3 * chi(tbar)),
                ))
            } else if ts[2] == tbar {
                let first = eta3 * chi(t) * parity(xi(t, t) + xi(t, tbar));
                let second = eta2 * chi(tbar) * parity(xi(t, tbar) + xi(tbar, tbar));
                Some(c.conj().scale(e23 * (first + second)))
            } else {
                zero
            }
        }
        SphericalFamily::Unanalyzed => None,
    }
}

/// Value from the case formulas. Unanalyzed labels fall back to
/// [`spherical_value`] with `analyzed = false`.
pub fn spherical_closed_form(q: &SphericalQuery) -> ClosedForm {
    let family = SphericalFamily::of(&q.labels);
    match closed_form_doubled(&q.labels, q.signs(), q.subsets()) {
        Some(v) => ClosedForm {
            value: GaussianRational::from(v).scale(Rational::new(1, 2)),
            family,
            analyzed: true,
        },
        None => ClosedForm {
            value: spherical_value(q),
            family,
            analyzed: false,
        },
    }
}

/// A tempting variant of the `χ_A⊠ρ⊠ρ` case formulas: a `2^n`
/// prefactor for odd `n` with `c` unconjugated, and `(−1)^{|T∩T₁|}ε₂ε₃`
/// for even `n`. It does not match direct summation and is kept only to
/// show that. `None` outside that family.
pub fn alternative_closed_form(q: &SphericalQuery) -> Option<GaussianRational> {
    if SphericalFamily::of(&q.labels) != SphericalFamily::LinearSpinorSpinor {
        return None;
    }
    let n = q.degree();
    let IrrepKind::OneDim(a) = q.labels.rho1.kind() else {
        unreachable!()
    };
    let (eps, ts) = (q.signs(), q.subsets());
    let e23 = eps[1].value() * eps[2].value();
    let (t1, t) = (ts[0], ts[1]);
    let tbar = t.complement(n);
    if n % 2 == 0 {
        let v = if ts[2] == t {
            e23 * parity(t.intersection(t1).len())
        } else {
            0
        };
        return Some(GaussianRational::from_int(v));
    }
    let chi = |s: Subset| parity(a.intersection(s.symmetric_difference(t1)).len());
    let eta = |l: &IrrepLabel| {
        if l.kind() == IrrepKind::RhoPlus {
            1
        } else {
            -1
        }
    };
    let (eta2, eta3) = (eta(&q.labels.rho2), eta(&q.labels.theta));
    let c = odd_phase(n);
    let scale = e23 << n;
    let v = if ts[2] == t {
        GaussianInt::real(scale * (chi(t) + (c * c).re * eta2 * eta3 * chi(tbar)))
    } else if ts[2] == tbar {
        let first = eta3 * chi(t) * parity(xi(t, t) + xi(t, tbar));
        let second = eta2 * chi(tbar) * parity(xi(t, tbar) + xi(tbar, tbar));
        c.scale(scale * (first + second))
    } else {
        GaussianInt::ZERO
    };
    Some(v.into())
}

/// `(1/2^n) Σ_{D⊆X_n} (−1)^{|U∩D|}`, summed directly.
pub fn subset_sum_lemma(u: Subset, n: u32) -> Result<i64> {
    if n > LEMMA_MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: n,
            max: LEMMA_MAX_DEGREE,
            operation: "subset sum",
        });
    }
    u.check_within(n)?;
    let total: i64 = Subset::all(n)
        .map(|d| parity(u.intersection(d).len()))
        .sum();
    Ok(total >> n)
}

/// Precomputed character tables for evaluating one label on many points.
struct Kernel {
    n: u32,
    linear: Option<[u32; 3]>,
    tables: [Vec<GaussianInt>; 3],
    /// `ξ(D, T)` parity at `T << n | D`.
    xi_odd: Vec<bool>,
}

impl Kernel {
    fn new(labels: &TripleIrrepLabel, xi_odd: &[bool]) -> Self {
        let n = labels.degree();
        let arr = [labels.rho1, labels.rho2, labels.theta];
        let table = |l: &IrrepLabel| {
            (0..2usize << n)
                .map(|k| {
                    let sign = if k >> n & 1 == 1 {
                        Sign::Minus
                    } else {
                        Sign::Plus
                    };
                    l.value_int(sign, Subset::from_bits((k & ((1 << n) - 1)) as u32))
                })
                .collect::<Vec<_>>()
        };
        let linear = match arr.map(|l| l.kind()) {
            [IrrepKind::OneDim(a), IrrepKind::OneDim(b), IrrepKind::OneDim(c)] => {
                Some([a.bits(), b.bits(), c.bits()])
            }
            _ => None,
        };
        Self {
            n,
            linear,
            tables: [table(&arr[0]), table(&arr[1]), table(&arr[2])],
            xi_odd: xi_odd.to_vec(),
        }
    }

    /// The unnormalized double sum of [`spherical_value`].
    fn sum(&self, eps: [Sign; 3], ts: [Subset; 3]) -> GaussianInt {
        let n = self.n;
        let t = ts.map(Subset::bits);
        if let Some([a, b, c]) = self.linear {
            // Linear characters ignore signs, so both values of ε contribute
            // the same term.
            let mut s = 0i64;
            for d in 0..1u32 << n {
                let x = (a & (d ^ t[0])) ^ (b & (d ^ t[1])) ^ (c & (d ^ t[2]));
                s += 1 - 2 * i64::from(x.count_ones() & 1);
            }
            return GaussianInt::real(2 * s);
        }
        let mut total = GaussianInt::ZERO;
        for e in [Sign::Plus, Sign::Minus] {
            for d in 0..1usize << n {
                let mut term = GaussianInt::ONE;
                for i in 0..3 {
                    let flip = self.xi_odd[(t[i] as usize) << n | d];
                    let neg = (e * eps[i] == Sign::Minus) ^ flip;
                    let idx = usize::from(neg) << n | (d ^ t[i] as usize);
                    term = term * self.tables[i][idx];
                    if term.is_zero() {
                        break;
                    }
                }
                total += term;
            }
        }
        total
    }
}

fn xi_parity_table(n: u32) -> Vec<bool> {
    let size = 1usize << n;
    let mut out = Vec::with_capacity(size * size);
    for t in Subset::all(n) {
        for d in Subset::all(n) {
            out.push(xi(d, t) % 2 == 1);
        }
    }
    out
}

/// A disagreement between two evaluations of the same spherical character.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Mismatch {
    pub query: SphericalQuery,
    pub expected: GaussianRational,
    pub found: GaussianRational,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GridReport {
    pub degree: u32,
    /// Number of labels checked per family, in family order.
    pub labels: Vec<(SphericalFamily, u64)>,
    /// Number of `(label, point)` comparisons.
    pub points: u64,
    pub mismatches: u64,
    pub first_mismatch: Option<Mismatch>,
}

impl GridReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

fn all_points(n: u32) -> Vec<([Sign; 3], [Subset; 3])> {
    let signs = [Sign::Plus, Sign::Minus];
    let mut out = Vec::with_capacity(8usize << (3 * n));
    for t1 in Subset::all(n) {
        for t2 in Subset::all(n) {
            for t3 in Subset::all(n) {
                for e1 in signs {
                    for e2 in signs {
                        for e3 in signs {
                            out.push(([e1, e2, e3], [t1, t2, t3]));
                        }
                    }
                }
            }
        }
    }
    out
}

fn query_at(labels: TripleIrrepLabel, eps: [Sign; 3], ts: [Subset; 3]) -> SphericalQuery {
    let n = labels.degree();
    let g = |i: usize| CliffordElement::new(n, eps[i], ts[i]).expect("subset within degree");
    SphericalQuery {
        labels,
        at: TripleElement {
            g1: g(0),
            g2: g(1),
            h: g(2),
        },
    }
}

/// Compares the closed forms with direct summation for every analyzed label
/// and every point `(ε₁γ_{T₁}, ε₂γ_{T₂}, ε₃γ_{T₃})`.
pub fn check_closed_forms_on_grid(n: u32) -> Result<GridReport> {
    check_grid_with(n, closed_form_doubled)
}

/// Counts the grid points where [`alternative_closed_form`] disagrees with direct
/// summation, over all `χ_A⊠ρ⊠ρ` labels.
pub fn check_alternative_forms_on_grid(n: u32) -> Result<GridReport> {
    check_grid_with(n, |labels, eps, ts| {
        let q = query_at(*labels, eps, ts);
        let v = alternative_closed_form(&q)?.scale(Rational::from_integer(2));
        let (re, im) = (v.re(), v.im());
        if re.is_integer() && im.is_integer() {
            Some(GaussianInt::new(re.to_integer(), im.to_integer()))
        } else {
            // Not a half-integer, so it cannot match.
            Some(GaussianInt::new(i64::MAX, 0))
        }
    })
}

fn check_grid_with<F>(n: u32, closed: F) -> Result<GridReport>
where
    F: Fn(&TripleIrrepLabel, [Sign; 3], [Subset; 3]) -> Option<GaussianInt>,
{
    if n > GRID_MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: n,
            max: GRID_MAX_DEGREE,
            operation: "spherical grid check",
        });
    }
    let irr = irreps(n)?;
    let xi_odd = xi_parity_table(n);
    let points = all_points(n);
    let probe = ([Sign::Plus; 3], [Subset::EMPTY; 3]);
    let mut report = GridReport {
        degree: n,
        labels: Vec::new(),
        points: 0,
        mismatches: 0,
        first_mismatch: None,
    };
    let scale = 1i64 << n;
    for &r1 in &irr {
        for &r2 in &irr {
            for &th in &irr {
                let labels = TripleIrrepLabel::new(r1, r2, th)?;
                let family = SphericalFamily::of(&labels);
                if closed(&labels, probe.0, probe.1).is_none() {
                    continue;
                }
                match report.labels.iter_mut().find(|(f, _)| *f == family) {
                    Some(entry) => entry.1 += 1,
                    None => report.labels.push((family, 1)),
                }
                let kernel = Kernel::new(&labels, &xi_odd);
                for &(eps, ts) in &points {
                    let doubled = closed(&labels, eps, ts).expect("family fixed per label");
                    let direct = kernel.sum(eps, ts).conj();
                    report.points += 1;
                    if direct != doubled.scale(scale) {
                        report.mismatches += 1;
                        if report.first_mismatch.is_none() {
                            let q = query_at(labels, eps, ts);
                            report.first_mismatch = Some(Mismatch {
                                query: q,
                                expected: sum_to_value(kernel.sum(eps, ts), n),
                                found: GaussianRational::from(doubled).scale(Rational::new(1, 2)),
                            });
                        }
                    }
                }
            }
        }
    }
    report.labels.sort();
    Ok(report)
}

/// Checks that `ψ(x, y, h)` is constant on every conjugation orbit of pairs
/// `(x, y)`, for every analyzed label and every central `h`. Returns the
/// number of orbits checked per label and the first violation.
pub fn check_orbit_constancy(n: u32) -> Result<(u64, Option<Mismatch>)> {
    if n > GRID_MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: n,
            max: GRID_MAX_DEGREE,
            operation: "orbit constancy check",
        });
    }
    let orbits = crate::orbits::enumerate_pair_orbits(n)?;
    let centre = crate::group::CliffordGroup::new(n)?.center();
    let xi_odd = xi_parity_table(n);
    let irr = irreps(n)?;
    for &r1 in &irr {
        for &r2 in &irr {
            for &th in &irr {
                let labels = TripleIrrepLabel::new(r1, r2, th)?;
                if !SphericalFamily::of(&labels).is_analyzed() {
                    continue;
                }
                let kernel = Kernel::new(&labels, &xi_odd);
                for h in &centre {
                    for orbit in &orbits {
                        let at = |p: &crate::orbits::Pair| {
                            (
                                [p.0.sign(), p.1.sign(), h.sign()],
                                [p.0.subset(), p.1.subset(), h.subset()],
                            )
                        };
                        let (e0, t0) = at(&orbit.representative);
                        let base = kernel.sum(e0, t0);
                        for m in &orbit.members[1..] {
                            let (e, t) = at(m);
                            let v = kernel.sum(e, t);
                            if v != base {
                                let mismatch = Mismatch {
                                    query: query_at(labels, e, t),
                                    expected: sum_to_value(base, n),
                                    found: sum_to_value(v, n),
                                };
                                return Ok((orbits.len() as u64, Some(mismatch)));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok((orbits.len() as u64, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gelfand::spherical_character;

    fn q(triple: &str, at: &str, n: u32) -> SphericalQuery {
        SphericalQuery::parse(triple, at, n).unwrap()
    }

    #[test]
    fn linear_triple_at_identity() {
        let n = 3;
        for a in Subset::all(n) {
            for b in Subset::all(n) {
                for c in Subset::all(n) {
                    let labels = TripleIrrepLabel::new(
                        IrrepLabel::one_dim(n, a).unwrap(),
                        IrrepLabel::one_dim(n, b).unwrap(),
                        IrrepLabel::one_dim(n, c).unwrap(),
                    )
                    .unwrap();
                    let v = spherical_value(&query_at(labels, [Sign::Plus; 3], [Subset::EMPTY; 3]));
                    let expected = i64::from(c == a.symmetric_difference(b));
                    assert_eq!(v, GaussianRational::from_int(expected));
                }
            }
        }
    }

    #[test]
    fn trivial_families() {
        assert!(spherical_value(&q("chi:{1},chi:{2},rho", "+g{1},-g{1,2},+g{}", 2)).is_zero());
        assert!(spherical_value(&q("rho+,rho-,rho+", "+g{},+g{},+g{}", 3)).is_zero());
        assert!(spherical_value(&q("chi:{},chi:{},rho-", "+g{},+g{},+g{}", 1)).is_zero());
    }

    #[test]
    fn matches_generic_spherical_character() {
        for n in 0..=2 {
            let irr = irreps(n).unwrap();
            for &a in &irr {
                for &b in &irr {
                    for &c in &irr {
                        let labels = TripleIrrepLabel::new(a, b, c).unwrap();
                        for (eps, ts) in all_points(n) {
                            let query = query_at(labels, eps, ts);
                            assert_eq!(
                                spherical_value(&query),
                                spherical_character(&labels, &query.at).unwrap()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn grid_small() {
        for n in 0..=3 {
            let report = check_closed_forms_on_grid(n).unwrap();
            assert!(report.passed(), "{:?}", report.first_mismatch);
            let kernel_only = report.labels.iter().map(|l| l.1).sum::<u64>();
            assert!(kernel_only > 0);
        }
    }

    #[test]
    fn kernel_agrees_with_direct_sum() {
        let n = 3;
        let xi_odd = xi_parity_table(n);
        let irr = irreps(n).unwrap();
        let labels = TripleIrrepLabel::new(irr[3], irr[8], irr[9]).unwrap();
        let kernel = Kernel::new(&labels, &xi_odd);
        for (eps, ts) in all_points(n) {
            assert_eq!(
                sum_to_value(kernel.sum(eps, ts), n),
                spherical_value(&query_at(labels, eps, ts))
            );
        }
    }

    #[test]
    fn odd_special_values() {
        // ψ(ε₁γ_T, ε₂γ_T, ε₃γ_T) = ½ε₂ε₃(1 + (−1)^{|A|}η₂η₃c²) and
        // ψ(ε₁γ_T̄, ε₂γ_T, ε₃γ_T) = ½ε₂ε₃((−1)^{|A|} + η₂η₃c²).
        for n in [1u32, 3, 5] {
            let c2 = (odd_phase(n) * odd_phase(n)).re;
            for a in [Subset::EMPTY, Subset::from_indices([1]), Subset::full(n)] {
                let sa = parity(a.len());
                for (k2, k3) in [
                    (IrrepKind::RhoPlus, IrrepKind::RhoPlus),
                    (IrrepKind::RhoPlus, IrrepKind::RhoMinus),
                ] {
                    let eta = if k2 == k3 { 1 } else { -1 };
                    let labels = TripleIrrepLabel::new(
                        IrrepLabel::one_dim(n, a).unwrap(),
                        IrrepLabel::new(n, k2).unwrap(),
                        IrrepLabel::new(n, k3).unwrap(),
                    )
                    .unwrap();
                    let t = Subset::from_indices([1]);
                    let eps = [Sign::Minus, Sign::Plus, Sign::Minus];
                    let v = spherical_value(&query_at(labels, eps, [t, t, t]));
                    assert_eq!(v, GaussianRational::ratio(-(1 + sa * eta * c2), 2));
                    let w = spherical_value(&query_at(labels, eps, [t.complement(n), t, t]));
                    assert_eq!(w, GaussianRational::ratio(-(sa + eta * c2), 2));
                    assert_eq!(
                        spherical_closed_form(&query_at(labels, eps, [t, t, t])).value,
                        v
                    );
                }
            }
        }
    }

    #[test]
    fn alternative_forms_disagree() {
        assert!(!check_alternative_forms_on_grid(2).unwrap().passed());
        assert!(!check_alternative_forms_on_grid(3).unwrap().passed());
    }

    #[test]
    fn xi_complement_symmetry_for_odd_n() {
        for n in [1u32, 3, 5, 7] {
            for t in Subset::all(n) {
                let tbar = t.complement(n);
                assert_eq!(xi(t, tbar) % 2, xi(tbar, t) % 2);
            }
        }
    }

    #[test]
    fn unanalyzed_falls_back() {
        let query = q("rho,chi:{1},rho", "+g{1},+g{},-g{1}", 2);
        let cf = spherical_closed_form(&query);
        assert!(!cf.analyzed);
        assert_eq!(cf.family, SphericalFamily::Unanalyzed);
        assert_eq!(cf.value, spherical_value(&query));
    }

    #[test]
    fn constant_on_orbits() {
        for n in 0..=3 {
            let (count, bad) = check_orbit_constancy(n).unwrap();
            assert!(count > 0);
            assert_eq!(bad, None);
        }
    }

    #[test]
    fn lemma() {
        assert_eq!(subset_sum_lemma(Subset::EMPTY, 0).unwrap(), 1);
        assert_eq!(subset_sum_lemma(Subset::from_indices([1]), 1).unwrap(), 0);
        assert_eq!(
            subset_sum_lemma(Subset::from_indices([1, 3]), 4).unwrap(),
            0
        );
        assert!(subset_sum_lemma(Subset::from_indices([5]), 4).is_err());
    }

    #[test]
    fn parse_errors() {
        assert!(SphericalQuery::parse("chi:{1},rho", "+g{},+g{},+g{}", 2).is_err());
        assert!(SphericalQuery::parse("chi:{1},rho,rho", "+g{},+g{}", 2).is_err());
    }
}
