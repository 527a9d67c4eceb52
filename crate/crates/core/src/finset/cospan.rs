use super::{Corelation, FinFunction, UnionFind};
use crate::error::{Error, Result};

/// A cospan `X → N ← Y` of finite sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinCospan {
    left: FinFunction,
    right: FinFunction,
}

/// The result of a pushout: the composite cospan plus the two maps from the
/// original apices into the new one.
#[derive(Debug, Clone)]
pub struct Pushout {
    pub cospan: FinCospan,
    pub from_first: FinFunction,
    pub from_second: FinFunction,
}

impl FinCospan {
    pub fn new(left: FinFunction, right: FinFunction) -> Result<Self> {
        if left.codomain() != right.codomain() {
            return Err(Error::SizeMismatch(format!(
                "cospan legs land in apices of size {} and {}",
                left.codomain(),
                right.codomain()
            )));
        }
        Ok(FinCospan { left, right })
    }

    pub fn identity(n: usize) -> Self {
        FinCospan { left: FinFunction::identity(n), right: FinFunction::identity(n) }
    }

    /// The cospan `X →f Y ←id Y` of a function.
    pub fn from_function(f: &FinFunction) -> Self {
        FinCospan { left: f.clone(), right: FinFunction::identity(f.codomain()) }
    }

    pub fn left(&self) -> &FinFunction {
        &self.left
    }

    pub fn right(&self) -> &FinFunction {
        &self.right
    }

    pub fn apex_size(&self) -> usize {
        self.left.codomain()
    }

    pub fn left_size(&self) -> usize {
        self.left.domain()
    }

    pub fn right_size(&self) -> usize {
        self.right.domain()
    }

    /// The same cospan read backwards, `Y → N ← X`.
    pub fn opposite(&self) -> FinCospan {
        FinCospan { left: self.right.clone(), right: self.left.clone() }
    }

    /// Composite `X → N +_Y M ← Z` of `self: X → Y` then `next: Y → Z`.
    pub fn compose(&self, next: &FinCospan) -> Result<FinCospan> {
        Ok(self.pushout(next)?.cospan)
    }

    /// Pushout of `N ← Y → M`, computed by union-find on `N + M`.
    pub fn pushout(&self, next: &FinCospan) -> Result<Pushout> {
        if self.right_size() != next.left_size() {
            return Err(Error::SizeMismatch(format!(
                "cannot compose cospan with right foot {} into one with left foot {}",
                self.right_size(),
                next.left_size()
            )));
        }
        let n = self.apex_size();
        let mut uf = UnionFind::new(n + next.apex_size());
        for (&a, &b) in self.right.table().iter().zip(next.left.table()) {
            uf.union(a, n + b);
        }
        let (labels, size) = uf.labelling();
        let from_first = FinFunction::new(labels[..n].to_vec(), size)?;
        let from_second = FinFunction::new(labels[n..].to_vec(), size)?;
        let cospan = FinCospan {
            left: self.left.then(&from_first)?,
            right: next.right.then(&from_second)?,
        };
        Ok(Pushout { cospan, from_first, from_second })
    }

    /// Disjoint union of cospans.
    pub fn tensor(&self, other: &FinCospan) -> FinCospan {
        FinCospan { left: self.left.tensor(&other.left), right: self.right.tensor(&other.right) }
    }

    /// The copairing `[left, right] : X + Y → N`.
    pub fn copairing(&self) -> FinFunction {
        self.left.copair(&self.right).expect("legs share the apex")
    }

    /// Jointly-epic part: the partition of `X + Y` by apex element, apex
    /// points hit by nothing discarded.
    pub fn corelation(&self) -> Corelation {
        Corelation::from_labels(self.left_size(), self.right_size(), self.copairing().table())
    }

    /// Sorted union of the leg images.
    pub fn boundary(&self) -> Vec<usize> {
        self.copairing().image()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(table: &[usize], cod: usize) -> FinFunction {
        FinFunction::new(table.to_vec(), cod).unwrap()
    }

    #[test]
    fn identity_composition() {
        let id = FinCospan::identity(3);
        assert_eq!(id.compose(&id).unwrap(), id);
    }

    #[test]
    fn gluing_saturates() {
        // a: {•}→{n}←{y0,y1}; b: {y0,y1}→{m0,m1} bijection ←{•} to m0.
        let a = FinCospan::new(f(&[0], 1), f(&[0, 0], 1)).unwrap();
        let b = FinCospan::new(f(&[0, 1], 2), f(&[0], 2)).unwrap();
        let c = a.compose(&b).unwrap();
        assert_eq!(c.apex_size(), 1);
        // brute-force saturation: pairs glued by y, closed transitively
        let mut rel = [[false; 3]; 3];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        for (x, y) in [(0usize, 1usize), (0, 2)] {
            rel[x][y] = true;
            rel[y][x] = true;
        }
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    if rel[i][k] && rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
        assert!(rel.iter().all(|row| row.iter().all(|&b| b)));
    }

    #[test]
    fn empty_interface_is_coproduct() {
        let a = FinCospan::new(f(&[0], 2), FinFunction::initial(2)).unwrap();
        let b = FinCospan::new(FinFunction::initial(3), f(&[2], 3)).unwrap();
        let c = a.compose(&b).unwrap();
        assert_eq!(c.apex_size(), 5);
        assert_eq!(c.left().table(), &[0]);
        assert_eq!(c.right().table(), &[4]);
    }

    #[test]
    fn size_mismatch() {
        let a = FinCospan::identity(2);
        let b = FinCospan::identity(3);
        assert!(matches!(a.compose(&b), Err(Error::SizeMismatch(_))));
    }
}
