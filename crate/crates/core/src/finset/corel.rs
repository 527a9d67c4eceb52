use std::fmt;

use super::{FinCospan, FinFunction, UnionFind};
use crate::error::{Error, Result};

/// An equivalence relation on `X + Y`, read as a morphism `X → Y`.
///
/// `class_of` lists the block of every element of `X` followed by every
/// element of `Y`; blocks are numbered by first occurrence, so equal
/// partitions have equal representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Corelation {
    left_size: usize,
    right_size: usize,
    class_of: Vec<usize>,
    num_classes: usize,
}

/// Generators of the hypergraph structure on a finite set of size `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    /// `n → n`
    Identity(usize),
    /// `m + n → n + m`
    Swap(usize, usize),
    /// `n + n → n`
    Mult(usize),
    /// `0 → n`
    Unit(usize),
    /// `n → n + n`
    Comult(usize),
    /// `n → 0`
    Counit(usize),
    /// `0 → n + n`
    Cup(usize),
    /// `n + n → 0`
    Cap(usize),
}

impl Generator {
    /// Parses a generator name with its size arguments.
    pub fn from_name(kind: &str, sizes: &[usize]) -> Result<Generator> {
        let one = |g: fn(usize) -> Generator| match sizes {
            [n] => Ok(g(*n)),
            _ => Err(Error::InvalidArgument(format!("`{kind}` takes one size, got {sizes:?}"))),
        };
        match kind {
            "id" | "identity" => one(Generator::Identity),
            "swap" | "tw" => match sizes {
                [m, n] => Ok(Generator::Swap(*m, *n)),
                _ => Err(Error::InvalidArgument(format!("`{kind}` takes two sizes, got {sizes:?}"))),
            },
            "mult" => one(Generator::Mult),
            "unit" => one(Generator::Unit),
            "comult" => one(Generator::Comult),
            "counit" => one(Generator::Counit),
            "cup" => one(Generator::Cup),
            "cap" => one(Generator::Cap),
            other => Err(Error::UnknownGenerator(other.to_string())),
        }
    }

    /// The generator as a cospan of finite sets.
    pub fn cospan(&self) -> FinCospan {
        let fun = |t: Vec<usize>, c: usize| FinFunction::new(t, c).expect("generator tables in range");
        match *self {
            Generator::Identity(n) => FinCospan::identity(n),
            Generator::Swap(m, n) => {
                let table = (0..m).map(|i| n + i).chain(0..n).collect();
                FinCospan::new(fun(table, m + n), FinFunction::identity(m + n)).unwrap()
            }
            Generator::Mult(n) => {
                FinCospan::new(fun((0..n).chain(0..n).collect(), n), FinFunction::identity(n)).unwrap()
            }
            Generator::Unit(n) => FinCospan::new(FinFunction::initial(n), FinFunction::identity(n)).unwrap(),
            Generator::Comult(n) => Generator::Mult(n).cospan().opposite(),
            Generator::Counit(n) => Generator::Unit(n).cospan().opposite(),
            Generator::Cup(n) => {
                FinCospan::new(FinFunction::initial(n), fun((0..n).chain(0..n).collect(), n)).unwrap()
            }
            Generator::Cap(n) => Generator::Cup(n).cospan().opposite(),
        }
    }

    pub fn corelation(&self) -> Corelation {
        self.cospan().corelation()
    }
}

impl Corelation {
    /// Builds the corelation whose blocks are the fibres of `labels`
    /// (any labelling of `X + Y`), renumbered canonically.
    pub fn from_labels(left_size: usize, right_size: usize, labels: &[usize]) -> Self {
        assert_eq!(labels.len(), left_size + right_size, "labelling must cover X + Y");
        let mut remap = std::collections::HashMap::new();
        let class_of: Vec<usize> = labels
            .iter()
            .map(|l| {
                let next = remap.len();
                *remap.entry(*l).or_insert(next)
            })
            .collect();
        Corelation { left_size, right_size, num_classes: remap.len(), class_of }
    }

    /// Builds a corelation from explicit blocks of `X + Y` indices (left
    /// elements `0..X`, right elements `X..X+Y`). Unlisted elements become
    /// singletons.
    pub fn from_blocks(left_size: usize, right_size: usize, blocks: &[&[usize]]) -> Result<Self> {
        let n = left_size + right_size;
        let mut uf = UnionFind::new(n);
        for block in blocks {
            if let Some(&bad) = block.iter().find(|&&e| e >= n) {
                return Err(Error::InvalidArgument(format!("element {bad} outside X + Y of size {n}")));
            }
            for pair in block.windows(2) {
                uf.union(pair[0], pair[1]);
            }
        }
        let (labels, _) = uf.labelling();
        Ok(Corelation::from_labels(left_size, right_size, &labels))
    }

    pub fn identity(n: usize) -> Self {
        FinCospan::identity(n).corelation()
    }

    pub fn generator(g: Generator) -> Self {
        g.corelation()
    }

    pub fn from_function(f: &FinFunction) -> Self {
        FinCospan::from_function(f).corelation()
    }

    pub fn left_size(&self) -> usize {
        self.left_size
    }

    pub fn right_size(&self) -> usize {
        self.right_size
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn class_of(&self) -> &[usize] {
        &self.class_of
    }

    pub fn left_class(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn right_class(&self, y: usize) -> usize {
        self.class_of[self.left_size + y]
    }

    /// Blocks as sorted lists of `X + Y` indices, in block-id order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_classes];
        for (e, &c) in self.class_of.iter().enumerate() {
            out[c].push(e);
        }
        out
    }

    /// The canonical jointly-epic cospan `X → blocks ← Y`.
    pub fn cospan(&self) -> FinCospan {
        let left = FinFunction::new(self.class_of[..self.left_size].to_vec(), self.num_classes).unwrap();
        let right = FinFunction::new(self.class_of[self.left_size..].to_vec(), self.num_classes).unwrap();
        FinCospan::new(left, right).unwrap()
    }

    /// Composite `X → Z`: transitive closure over `X + Y + Z`, restricted to
    /// `X + Z`. Components meeting only `Y` vanish.
    pub fn compose(&self, next: &Corelation) -> Result<Corelation> {
        if self.right_size != next.left_size {
            return Err(Error::SizeMismatch(format!(
                "cannot compose corelation into {} with one out of {}",
                self.right_size, next.left_size
            )));
        }
        let (x, y, z) = (self.left_size, self.right_size, next.right_size);
        let mut uf = UnionFind::new(x + y + z);
        let mut first_of = vec![usize::MAX; self.num_classes];
        for (e, &c) in self.class_of.iter().enumerate() {
            match first_of[c] {
                usize::MAX => first_of[c] = e,
                r => uf.union(r, e),
            }
        }
        let mut first_of = vec![usize::MAX; next.num_classes];
        for (e, &c) in next.class_of.iter().enumerate() {
            let e = x + e;
            match first_of[c] {
                usize::MAX => first_of[c] = e,
                r => uf.union(r, e),
            }
        }
        let labels: Vec<usize> = (0..x).chain(x + y..x + y + z).map(|e| uf.find(e)).collect();
        Ok(Corelation::from_labels(x, z, &labels))
    }

    /// Monoidal product: blocks side by side, boundaries reindexed.
    pub fn tensor(&self, other: &Corelation) -> Corelation {
        let shift = self.num_classes;
        let labels: Vec<usize> = self.class_of[..self.left_size]
            .iter()
            .copied()
            .chain(other.class_of[..other.left_size].iter().map(|c| c + shift))
            .chain(self.class_of[self.left_size..].iter().copied())
            .chain(other.class_of[other.left_size..].iter().map(|c| c + shift))
            .collect();
        Corelation::from_labels(self.left_size + other.left_size, self.right_size + other.right_size, &labels)
    }

    /// The same partition read as a morphism `Y → X`.
    pub fn transpose(&self) -> Corelation {
        let labels: Vec<usize> =
            self.class_of[self.left_size..].iter().chain(&self.class_of[..self.left_size]).copied().collect();
        Corelation::from_labels(self.right_size, self.left_size, &labels)
    }
}

impl fmt::Display for Corelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |e: usize| {
            if e < self.left_size {
                format!("l{e}")
            } else {
                format!("r{}", e - self.left_size)
            }
        };
        let blocks: Vec<String> = self
            .blocks()
            .into_iter()
            .map(|b| format!("{{{}}}", b.into_iter().map(name).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{}→{} [{}]", self.left_size, self.right_size, blocks.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(table: &[usize], cod: usize) -> FinFunction {
        FinFunction::new(table.to_vec(), cod).unwrap()
    }

    #[test]
    fn identity_cospan_pairs_copies() {
        let c = Corelation::identity(3);
        assert_eq!(c.blocks(), vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
    }

    #[test]
    fn unreachable_apex_point_leaves_no_block() {
        let c = FinCospan::new(f(&[0], 3), f(&[2], 3)).unwrap().corelation();
        assert_eq!(c.num_classes(), 2);
    }

    #[test]
    fn non_isomorphic_cospans_same_corelation() {
        let a = FinCospan::new(f(&[0], 1), f(&[0], 1)).unwrap();
        let b = FinCospan::new(f(&[0], 2), f(&[0], 2)).unwrap();
        assert_ne!(a, b);
        assert_eq!(a.corelation(), b.corelation());
    }

    #[test]
    fn composition_by_transitive_closure() {
        // α: {x0,y0},{x1} : 2 → 1;  β: {y0,z0} : 1 → 1
        let alpha = Corelation::from_blocks(2, 1, &[&[0, 2], &[1]]).unwrap();
        let beta = Corelation::from_blocks(1, 1, &[&[0, 1]]).unwrap();
        let c = alpha.compose(&beta).unwrap();
        assert_eq!(c, Corelation::from_blocks(2, 1, &[&[0, 2], &[1]]).unwrap());
        assert_eq!(Corelation::identity(2).compose(&alpha).unwrap(), alpha);
        assert_eq!(alpha.compose(&Corelation::identity(1)).unwrap(), alpha);
    }

    #[test]
    fn extra_law() {
        let eta = Generator::Unit(1).corelation();
        let eps = Generator::Counit(1).corelation();
        let c = eta.compose(&eps).unwrap();
        assert_eq!((c.left_size(), c.right_size(), c.num_classes()), (0, 0, 0));
        assert_eq!(c, Corelation::identity(0));
    }

    #[test]
    fn generator_shapes() {
        assert_eq!(Generator::Mult(1).corelation().blocks(), vec![vec![0, 1, 2]]);
        assert_eq!(Generator::Swap(1, 1).corelation().blocks(), vec![vec![0, 3], vec![1, 2]]);
        assert_eq!(Generator::Unit(1).corelation().blocks(), vec![vec![0]]);
        assert_eq!(Generator::Cup(1).corelation().blocks(), vec![vec![0, 1]]);
        assert!(matches!(Generator::from_name("spider", &[1]), Err(Error::UnknownGenerator(_))));
        assert!(Generator::from_name("mult", &[1, 2]).is_err());
    }

    #[test]
    fn tensor_adds_blocks() {
        let a = Generator::Mult(1).corelation();
        let b = Corelation::identity(2);
        let t = a.tensor(&b);
        assert_eq!(t.num_classes(), a.num_classes() + b.num_classes());
        assert_eq!(Corelation::identity(1).tensor(&Corelation::identity(1)), Corelation::identity(2));
        assert_eq!(a.tensor(&Corelation::identity(0)), a);
    }
}
