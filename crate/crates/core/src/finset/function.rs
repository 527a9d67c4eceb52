use crate::error::{Error, Result};

/// A function between finite ordinals `{0..domain} → {0..codomain}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinFunction {
    codomain: usize,
    table: Vec<usize>,
}

impl FinFunction {
    pub fn new(table: Vec<usize>, codomain: usize) -> Result<Self> {
        if let Some(&bad) = table.iter().find(|&&v| v >= codomain) {
            return Err(Error::InvalidArgument(format!(
                "function value {bad} out of range for codomain of size {codomain}"
            )));
        }
        Ok(FinFunction { codomain, table })
    }

    pub fn identity(n: usize) -> Self {
        FinFunction { codomain: n, table: (0..n).collect() }
    }

    /// The unique map out of the empty set.
    pub fn initial(codomain: usize) -> Self {
        FinFunction { codomain, table: Vec::new() }
    }

    /// The constant map to a single point (terminal map).
    pub fn terminal(domain: usize) -> Self {
        FinFunction { codomain: 1, table: vec![0; domain] }
    }

    /// Inclusion of `{0..n}` into `{0..n+m}` at `shift`.
    pub fn inclusion(n: usize, codomain: usize, shift: usize) -> Result<Self> {
        FinFunction::new((shift..shift + n).collect(), codomain)
    }

    pub fn domain(&self) -> usize {
        self.table.len()
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `other ∘ self`
    pub fn then(&self, other: &FinFunction) -> Result<FinFunction> {
        if self.codomain != other.domain() {
            return Err(Error::SizeMismatch(format!(
                "cannot compose {}→{} with {}→{}",
                self.domain(),
                self.codomain,
                other.domain(),
                other.codomain
            )));
        }
        Ok(FinFunction { codomain: other.codomain, table: self.table.iter().map(|&x| other.table[x]).collect() })
    }

    /// Disjoint union `f + g : X + X' → Y + Y'`.
    pub fn tensor(&self, other: &FinFunction) -> FinFunction {
        let mut table = self.table.clone();
        table.extend(other.table.iter().map(|&x| x + self.codomain));
        FinFunction { codomain: self.codomain + other.codomain, table }
    }

    /// Copairing `[f, g] : X + X' → Y` of two maps with a shared codomain.
    pub fn copair(&self, other: &FinFunction) -> Result<FinFunction> {
        if self.codomain != other.codomain {
            return Err(Error::SizeMismatch(format!(
                "copairing needs equal codomains, got {} and {}",
                self.codomain, other.codomain
            )));
        }
        let mut table = self.table.clone();
        table.extend_from_slice(&other.table);
        Ok(FinFunction { codomain: self.codomain, table })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain];
        self.table.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.codomain];
        for &y in &self.table {
            seen[y] = true;
        }
        seen.into_iter().all(|b| b)
    }

    /// Sorted image of the function.
    pub fn image(&self) -> Vec<usize> {
        let mut img = self.table.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// Factors `self = mono ∘ epi` through its image. Image points are
    /// numbered in codomain order, so `mono` is order-preserving and a
    /// bijection factors as `(self, id)`.
    pub fn epi_mono(&self) -> (FinFunction, FinFunction) {
        let image = self.image();
        let mut slot = vec![usize::MAX; self.codomain];
        for (k, &y) in image.iter().enumerate() {
            slot[y] = k;
        }
        let epi = FinFunction { codomain: image.len(), table: self.table.iter().map(|&y| slot[y]).collect() };
        (epi, FinFunction { codomain: self.codomain, table: image })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range() {
        assert!(FinFunction::new(vec![0, 3], 3).is_err());
    }

    #[test]
    fn epi_mono_examples() {
        // f(0)=f(1)=a, f(2)=c into {a,b,c}
        let f = FinFunction::new(vec![0, 0, 2], 3).unwrap();
        let (e, m) = f.epi_mono();
        assert_eq!(e.table(), &[0, 0, 1]);
        assert_eq!(e.codomain(), 2);
        assert_eq!(m.table(), &[0, 2]);
        assert!(e.is_surjective() && m.is_injective());
        assert_eq!(e.then(&m).unwrap(), f);

        let bij = FinFunction::new(vec![2, 0, 1], 3).unwrap();
        let (e, m) = bij.epi_mono();
        assert_eq!(e, bij);
        assert_eq!(m, FinFunction::identity(3));

        let constant = FinFunction::new(vec![0, 0, 0], 2).unwrap();
        let (e, m) = constant.epi_mono();
        assert_eq!(e, FinFunction::terminal(3));
        assert_eq!(m.table(), &[0]);
        assert_eq!(m.codomain(), 2);
    }
}
