//! Orbits of `CL(n)` acting on `CL(n)×CL(n)` by simultaneous conjugation.
//!
//! Conjugation by `γ_C` multiplies `γ_A` by `(−1)^{|A||C|−|A∩C|}`, so every
//! orbit of `(ε₁γ_A, ε₂γ_B)` consists of sign changes of that pair and has
//! size 1, 2 or 4.

use alloc::vec;
use alloc::vec::Vec;

use crate::clifford::{CliffordElement, Subset};
use crate::error::{Error, Result};
use crate::group::enumerate_group;

/// Largest `n` for [`enumerate_pair_orbits`].
pub const PAIR_ORBIT_MAX_DEGREE: u32 = 7;

pub type Pair = (CliffordElement, CliffordElement);

fn pair_key(p: &Pair) -> (usize, usize) {
    (p.0.index(), p.1.index())
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PairOrbit {
    /// The member minimal in element order (first component major).
    pub representative: Pair,
    /// Members sorted in element order.
    pub members: Vec<Pair>,
}

impl PairOrbit {
    fn from_members(mut members: Vec<Pair>) -> Self {
        members.sort_by_key(pair_key);
        members.dedup();
        Self {
            representative: members[0],
            members,
        }
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, p: &Pair) -> bool {
        self.members
            .binary_search_by_key(&pair_key(p), pair_key)
            .is_ok()
    }
}

fn guard(n: u32) -> Result<()> {
    if n > PAIR_ORBIT_MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: n,
            max: PAIR_ORBIT_MAX_DEGREE,
            operation: "pair orbit enumeration",
        });
    }
    Ok(())
}

fn check_pair(p: &Pair) -> Result<u32> {
    if p.0.degree() != p.1.degree() {
        return Err(Error::DegreeMismatch {
            left: p.0.degree(),
            right: p.1.degree(),
        });
    }
    Ok(p.0.degree())
}

/// The orbit of one pair, by conjugating with every group element.
pub fn orbit_of(p: &Pair) -> Result<PairOrbit> {
    let n = check_pair(p)?;
    guard(n)?;
    let members = enumerate_group(n)?
        .iter()
        .map(|c| Ok((p.0.conjugate_by(c)?, p.1.conjugate_by(c)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(PairOrbit::from_members(members))
}

/// All orbits on `CL(n)×CL(n)`, ordered by representative.
pub fn enumerate_pair_orbits(n: u32) -> Result<Vec<PairOrbit>> {
    guard(n)?;
    let group = enumerate_group(n)?;
    let size = group.len();
    let mut seen = vec![false; size * size];
    let mut orbits = Vec::new();
    // Pairs are visited in element order, so the first unseen pair of each
    // orbit is its minimal member.
    for x in &group {
        for y in &group {
            if seen[x.index() * size + y.index()] {
                continue;
            }
            let mut members = Vec::new();
            for c in &group {
                let q = (x.conjugate_by(c)?, y.conjugate_by(c)?);
                let k = q.0.index() * size + q.1.index();
                if !seen[k] {
                    seen[k] = true;
                    members.push(q);
                }
            }
            orbits.push(PairOrbit::from_members(members));
        }
    }
    Ok(orbits)
}

/// The orbit as given by the case analysis on `(A, B)`, without enumerating
/// the group.
///
/// * `A = B = ∅`: fixed.
/// * one of `A, B` empty, the other `S`: the sign of `γ_S` flips freely,
///   unless `n` is odd and `S = X_n` (central), where the pair is fixed.
/// * `A = B ≠ ∅`: both signs flip together, unless `n` is odd and
///   `A = X_n`, where the pair is fixed.
/// * `A ≠ B`, both outside `{∅, X_n}`: all four sign patterns, unless `n` is
///   odd and `A ∐ B = X_n`, where both signs flip together.
/// * `A ≠ B`, both non-empty and one equal to `X_n`: for `n` odd `γ_{X_n}`
///   is central and only the other sign flips; for `n` even all four sign
///   patterns occur.
pub fn predicted_orbit(p: &Pair) -> Result<PairOrbit> {
    let n = check_pair(p)?;
    let (x, y) = *p;
    let (a, b) = (x.subset(), y.subset());
    let full = Subset::full(n);
    let odd = n % 2 == 1;
    let fixed = vec![(x, y)];
    let flip_both = vec![(x, y), (x.negate(), y.negate())];
    let flip_first = vec![(x, y), (x.negate(), y)];
    let flip_second = vec![(x, y), (x, y.negate())];
    let all_four = vec![
        (x, y),
        (x.negate(), y),
        (x, y.negate()),
        (x.negate(), y.negate()),
    ];
    let members = if a.is_empty() && b.is_empty() {
        fixed
    } else if a.is_empty() || b.is_empty() {
        let s = if a.is_empty() { b } else { a };
        if odd && s == full {
            fixed
        } else if a.is_empty() {
            flip_second
        } else {
            flip_first
        }
    } else if a == b {
        if odd && a == full {
            fixed
        } else {
            flip_both
        }
    } else if a != full && b != full {
        if odd && a.intersection(b).is_empty() && a.union(b) == full {
            flip_both
        } else {
            all_four
        }
    } else if odd {
        if a == full {
            flip_second
        } else {
            flip_first
        }
    } else {
        all_four
    };
    Ok(PairOrbit::from_members(members))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: u32, ix: &[u32]) -> CliffordElement {
        CliffordElement::gamma(n, Subset::from_indices(ix.iter().copied())).unwrap()
    }

    #[test]
    fn examples() {
        let e = g(2, &[]);
        assert_eq!(orbit_of(&(e, e)).unwrap().size(), 1);
        let o = orbit_of(&(g(3, &[1]), g(3, &[2, 3]))).unwrap();
        assert_eq!(
            o.members,
            vec![
                (g(3, &[1]), g(3, &[2, 3])),
                (g(3, &[1]).negate(), g(3, &[2, 3]).negate())
            ]
        );
        assert_eq!(orbit_of(&(g(2, &[1]), g(2, &[2]))).unwrap().size(), 4);
        let top = g(3, &[1, 2, 3]);
        assert_eq!(predicted_orbit(&(top, top)).unwrap().size(), 1);
        let p = predicted_orbit(&(g(2, &[]), g(2, &[1]))).unwrap();
        assert_eq!(
            p.members,
            vec![(g(2, &[]), g(2, &[1])), (g(2, &[]), g(2, &[1]).negate())]
        );
        let d = predicted_orbit(&(g(2, &[1]), g(2, &[1]))).unwrap();
        assert_eq!(d.size(), 2);
    }

    #[test]
    fn prediction_matches_enumeration() {
        for n in 0..=4 {
            let orbits = enumerate_pair_orbits(n).unwrap();
            let total: usize = orbits.iter().map(PairOrbit::size).sum();
            assert_eq!(total, 1 << (2 * n + 2));
            for o in &orbits {
                for m in &o.members {
                    assert_eq!(predicted_orbit(m).unwrap(), *o);
                }
            }
        }
    }

    #[test]
    fn representatives_are_minimal() {
        for o in enumerate_pair_orbits(3).unwrap() {
            assert_eq!(o.representative, o.members[0]);
            assert!(o.contains(&o.representative));
        }
        assert!(enumerate_pair_orbits(8).is_err());
    }
}
