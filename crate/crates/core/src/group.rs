//! Exhaustive enumeration of `CL(n)` and its conjugacy classes.

use alloc::vec;
use alloc::vec::Vec;

use crate::clifford::{CliffordElement, Subset};
use crate::error::{Error, Result};
use crate::MAX_ENUMERATION_DEGREE;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConjugacyClass {
    /// The first member in enumeration order.
    pub representative: CliffordElement,
    /// Members in enumeration order.
    pub members: Vec<CliffordElement>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// `CL(n)` with its elements and class structure materialized.
#[derive(Clone, Debug)]
pub struct CliffordGroup {
    degree: u32,
    elements: Vec<CliffordElement>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<u32>,
}

fn guard(n: u32, operation: &'static str) -> Result<()> {
    if n > MAX_ENUMERATION_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: n,
            max: MAX_ENUMERATION_DEGREE,
            operation,
        });
    }
    Ok(())
}

/// The `2^{n+1}` elements of `CL(n)`, sign-major then subset ascending.
pub fn enumerate_group(n: u32) -> Result<Vec<CliffordElement>> {
    guard(n, "enumerating CL(n)")?;
    (0..2usize << n)
        .map(|i| CliffordElement::from_index(n, i))
        .collect()
}

/// Conjugacy classes of `CL(n)`, ordered by representative.
pub fn conjugacy_classes(n: u32) -> Result<Vec<ConjugacyClass>> {
    Ok(CliffordGroup::new(n)?.classes)
}

impl CliffordGroup {
    /// Enumerates the group and partitions it into conjugacy classes by
    /// closing each element under conjugation by the generators `γ_{j}`.
    pub fn new(n: u32) -> Result<Self> {
        let elements = enumerate_group(n)?;
        let generators: Vec<CliffordElement> = (1..=n)
            .map(|j| CliffordElement::gamma(n, Subset::from_indices([j])))
            .collect::<Result<_>>()?;
        const UNSEEN: u32 = u32::MAX;
        let mut class_of = vec![UNSEEN; elements.len()];
        let mut classes = Vec::new();
        for start in &elements {
            if class_of[start.index()] != UNSEEN {
                continue;
            }
            let id = classes.len() as u32;
            class_of[start.index()] = id;
            let mut members = vec![*start];
            let mut frontier = 0;
            while frontier < members.len() {
                let x = members[frontier];
                frontier += 1;
                for c in &generators {
                    let y = x.conjugate_by(c)?;
                    if class_of[y.index()] == UNSEEN {
                        class_of[y.index()] = id;
                        members.push(y);
                    }
                }
            }
            members.sort();
            classes.push(ConjugacyClass {
                representative: members[0],
                members,
            });
        }
        Ok(Self {
            degree: n,
            elements,
            classes,
            class_of,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[CliffordElement] {
        &self.elements
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Index of the class containing `g`.
    pub fn class_index(&self, g: &CliffordElement) -> Result<usize> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: g.degree(),
                right: self.degree,
            });
        }
        Ok(self.class_of[g.index()] as usize)
    }

    /// Elements commuting with everything.
    pub fn center(&self) -> Vec<CliffordElement> {
        self.classes
            .iter()
            .filter(|c| c.size() == 1)
            .map(|c| c.representative)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Sign;

    #[test]
    fn group_sizes() {
        assert_eq!(
            enumerate_group(0).unwrap(),
            [
                CliffordElement::identity(0).unwrap(),
                CliffordElement::minus_one(0).unwrap()
            ]
        );
        assert_eq!(enumerate_group(1).unwrap().len(), 4);
        assert_eq!(enumerate_group(3).unwrap().len(), 16);
        assert!(matches!(
            enumerate_group(13),
            Err(Error::DegreeTooLarge { max: 12, .. })
        ));
    }

    #[test]
    fn class_counts() {
        assert_eq!(conjugacy_classes(1).unwrap().len(), 4);
        assert!(conjugacy_classes(1).unwrap().iter().all(|c| c.size() == 1));
        assert_eq!(conjugacy_classes(2).unwrap().len(), 5);
        assert_eq!(conjugacy_classes(3).unwrap().len(), 10);
    }

    #[test]
    fn class_lookup() {
        let g = CliffordGroup::new(2).unwrap();
        let x = CliffordElement::gamma(2, Subset::from_indices([1])).unwrap();
        let y = x.negate();
        assert_eq!(g.class_index(&x).unwrap(), g.class_index(&y).unwrap());
        let c = &g.classes()[g.class_index(&x).unwrap()];
        assert_eq!(c.representative, x);
        assert_eq!(c.members, [x, y]);
        assert!(g
            .class_index(&CliffordElement::identity(3).unwrap())
            .is_err());
    }

    #[test]
    fn center_by_parity() {
        let even = CliffordGroup::new(2).unwrap().center();
        assert_eq!(even.len(), 2);
        let odd = CliffordGroup::new(3).unwrap().center();
        let top = CliffordElement::new(3, Sign::Plus, Subset::full(3)).unwrap();
        assert_eq!(odd.len(), 4);
        assert!(odd.contains(&top) && odd.contains(&top.negate()));
    }
}
