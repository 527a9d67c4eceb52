//! Dirichlet forms `Q(ψ) = Σ_{i<j} c_ij (ψ_i − ψ_j)²` and their minimization.

use std::fmt;

use crate::circuit::OpenCircuit;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::finset::FinFunction;
use crate::linalg::Matrix;

/// A symmetric coefficient matrix with zero diagonal, nonnegative over ℚ.
#[derive(Clone, PartialEq, Eq)]
pub struct DirichletForm<F> {
    coeff: Matrix<F>,
}

impl<F: Field> DirichletForm<F> {
    pub fn zero(size: usize) -> Self {
        DirichletForm { coeff: Matrix::zeros(size, size) }
    }

    pub fn from_matrix(coeff: Matrix<F>) -> Result<Self> {
        let n = coeff.rows();
        if coeff.cols() != n {
            return Err(Error::SizeMismatch(format!("coefficient matrix is {n}×{}", coeff.cols())));
        }
        for i in 0..n {
            if !coeff[(i, i)].is_zero() {
                return Err(Error::InvalidArgument(format!("diagonal entry c_{i}{i} is nonzero")));
            }
            for j in i + 1..n {
                if coeff[(i, j)] != coeff[(j, i)] {
                    return Err(Error::InvalidArgument(format!("c_{i}{j} ≠ c_{j}{i}")));
                }
                if coeff[(i, j)].positivity() == Some(false) && !coeff[(i, j)].is_zero() {
                    return Err(Error::InvalidArgument(format!("c_{i}{j} is negative")));
                }
            }
        }
        Ok(DirichletForm { coeff })
    }

    pub fn size(&self) -> usize {
        self.coeff.rows()
    }

    pub fn coeff(&self, i: usize, j: usize) -> &F {
        &self.coeff[(i, j)]
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.coeff
    }

    /// Adds `x` to `c_ij` and `c_ji`. Diagonal contributions vanish.
    fn accumulate(&mut self, i: usize, j: usize, x: &F) {
        if i == j {
            return;
        }
        self.coeff[(i, j)] = self.coeff[(i, j)].add(x);
        self.coeff[(j, i)] = self.coeff[(i, j)].clone();
    }

    pub fn evaluate(&self, psi: &[F]) -> Result<F> {
        self.check_len(psi)?;
        let mut total = F::zero();
        for i in 0..self.size() {
            for j in i + 1..self.size() {
                let c = &self.coeff[(i, j)];
                if !c.is_zero() {
                    let d = psi[i].sub(&psi[j]);
                    total = total.add(&c.mul(&d.mul(&d)));
                }
            }
        }
        Ok(total)
    }

    /// `∂Q/∂ψ_n = Σ_k 2 c_nk (ψ_n − ψ_k)`
    pub fn partial(&self, psi: &[F], n: usize) -> Result<F> {
        self.check_len(psi)?;
        let two = F::from_i64(2);
        Ok((0..self.size()).fold(F::zero(), |acc, k| acc.add(&two.mul(&self.coeff[(n, k)]).mul(&psi[n].sub(&psi[k])))))
    }

    pub fn gradient(&self, psi: &[F]) -> Result<Vec<F>> {
        (0..self.size()).map(|n| self.partial(psi, n)).collect()
    }

    pub fn sum(&self, other: &DirichletForm<F>) -> Result<DirichletForm<F>> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(format!("forms on {} and {} points", self.size(), other.size())));
        }
        let mut out = self.clone();
        for i in 0..self.size() {
            for j in i + 1..self.size() {
                out.accumulate(i, j, &other.coeff[(i, j)]);
            }
        }
        Ok(out)
    }

    /// Pushes the form forward along `f`: coefficients of pairs that `f`
    /// identifies disappear, the rest add up.
    pub fn pushforward(&self, f: &FinFunction) -> Result<DirichletForm<F>> {
        if f.domain() != self.size() {
            return Err(Error::SizeMismatch(format!("map from {} points for a form on {}", f.domain(), self.size())));
        }
        let mut out = DirichletForm::zero(f.codomain());
        for i in 0..self.size() {
            for j in i + 1..self.size() {
                out.accumulate(f.apply(i), f.apply(j), &self.coeff[(i, j)]);
            }
        }
        Ok(out)
    }

    /// The form restricted to the listed indices, in that order.
    pub fn restrict(&self, keep: &[usize]) -> DirichletForm<F> {
        let mut out = DirichletForm::zero(keep.len());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                out.coeff[(a, b)] = self.coeff[(i, j)].clone();
            }
        }
        out
    }

    /// Minimizes over `ψ_n`: `c'_ij = c_ij + c_in c_jn / Σ_k c_kn`. A node with
    /// `Σ_k c_kn = 0` is simply dropped. Indices above `n` shift down by one.
    pub fn eliminate_node(&self, n: usize) -> Result<DirichletForm<F>> {
        if n >= self.size() {
            return Err(Error::InvalidArgument(format!("node {n} outside a form on {} points", self.size())));
        }
        let keep: Vec<usize> = (0..self.size()).filter(|&k| k != n).collect();
        let mut out = self.restrict(&keep);
        let total = (0..self.size()).fold(F::zero(), |acc, k| acc.add(&self.coeff[(k, n)]));
        if total.is_zero() {
            return Ok(out);
        }
        let inv = total.inv()?;
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate().skip(a + 1) {
                let extra = self.coeff[(i, n)].mul(&self.coeff[(j, n)]).mul(&inv);
                if !extra.is_zero() {
                    out.accumulate(a, b, &extra);
                }
            }
        }
        Ok(out)
    }

    /// Eliminates every index outside `keep` in ascending order; the result is
    /// indexed by `keep` in the order given.
    pub fn minimize(&self, keep: &[usize]) -> Result<DirichletForm<F>> {
        self.check_subset(keep)?;
        let mut labels: Vec<usize> = (0..self.size()).collect();
        let mut form = self.clone();
        for n in (0..self.size()).filter(|n| !keep.contains(n)) {
            let pos = labels.iter().position(|&l| l == n).expect("label still present");
            form = form.eliminate_node(pos)?;
            labels.remove(pos);
        }
        let order: Vec<usize> = keep.iter().map(|k| labels.iter().position(|l| l == k).unwrap()).collect();
        Ok(form.restrict(&order))
    }

    /// Extends `psi` on `boundary` to a potential with zero partial derivative
    /// at every other node. Free variables are pinned to 0, so components away
    /// from the boundary carry potential 0.
    pub fn realizable_extension(&self, boundary: &[usize], psi: &[F]) -> Result<Vec<F>> {
        self.check_subset(boundary)?;
        if boundary.len() != psi.len() {
            return Err(Error::SizeMismatch(format!(
                "{} boundary values for {} boundary nodes",
                psi.len(),
                boundary.len()
            )));
        }
        let n = self.size();
        let interior: Vec<usize> = (0..n).filter(|k| !boundary.contains(k)).collect();
        let mut slot = vec![usize::MAX; n];
        for (a, &k) in interior.iter().enumerate() {
            slot[k] = a;
        }
        let mut phi = vec![F::zero(); n];
        for (&b, v) in boundary.iter().zip(psi) {
            phi[b] = v.clone();
        }
        let mut system: Matrix<F> = Matrix::zeros(interior.len(), interior.len());
        let mut rhs = vec![F::zero(); interior.len()];
        for (a, &i) in interior.iter().enumerate() {
            for k in 0..n {
                let c = &self.coeff[(i, k)];
                if c.is_zero() {
                    continue;
                }
                system[(a, a)] = system[(a, a)].add(c);
                if slot[k] == usize::MAX {
                    rhs[a] = rhs[a].add(&c.mul(&phi[k]));
                } else {
                    system[(a, slot[k])] = system[(a, slot[k])].sub(c);
                }
            }
        }
        let x = system
            .solve(&rhs)?
            .ok_or_else(|| Error::InvalidArgument("interior equations are inconsistent".into()))?;
        for (a, &i) in interior.iter().enumerate() {
            phi[i] = x[a].clone();
        }
        Ok(phi)
    }

    fn check_len(&self, psi: &[F]) -> Result<()> {
        if psi.len() != self.size() {
            return Err(Error::SizeMismatch(format!("potential of length {} for {} nodes", psi.len(), self.size())));
        }
        Ok(())
    }

    fn check_subset(&self, idx: &[usize]) -> Result<()> {
        let mut seen = vec![false; self.size()];
        for &k in idx {
            if k >= self.size() || std::mem::replace(&mut seen[k], true) {
                return Err(Error::InvalidArgument(format!("index {k} is out of range or repeated")));
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Display for DirichletForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for i in 0..self.size() {
            for j in i + 1..self.size() {
                let c = &self.coeff[(i, j)];
                if !c.is_zero() {
                    terms.push(format!("({c})(ψ{i}-ψ{j})^2"));
                }
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl<F: Field> fmt::Debug for DirichletForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DirichletForm[{}] {self}", self.size())
    }
}

/// `P(φ) = ½ Σ_e (1/Z(e)) (φ(t(e)) − φ(s(e)))²` on all nodes.
pub fn extended_power<F: Field>(c: &OpenCircuit<F>) -> Result<DirichletForm<F>> {
    let graph = c.graph();
    let mut form = DirichletForm::zero(graph.num_nodes());
    let two = F::from_i64(2);
    for e in graph.edges() {
        let w = two.mul(&e.impedance).inv()?;
        form.accumulate(e.src, e.tgt, &w);
    }
    Ok(form)
}

/// The extended power minimized onto the terminals, indexed like `boundary()`.
pub fn power_functional<F: Field>(c: &OpenCircuit<F>) -> Result<DirichletForm<F>> {
    extended_power(c)?.minimize(&c.boundary())
}

/// Power of a composite computed from the parts' boundary forms alone: push
/// both into the glued apex, add, and minimize onto the new terminals.
pub fn compose_power<F: Field>(a: &OpenCircuit<F>, b: &OpenCircuit<F>) -> Result<DirichletForm<F>> {
    let po = a.cospan().pushout(b.cospan())?;
    let apex = po.cospan.apex_size();
    let onto = |c: &OpenCircuit<F>, leg: &FinFunction| -> Result<DirichletForm<F>> {
        let bd = c.boundary();
        let inclusion = FinFunction::new(bd.iter().map(|&k| leg.apply(k)).collect(), apex)?;
        power_functional(c)?.pushforward(&inclusion)
    };
    let total = onto(a, &po.from_first)?.sum(&onto(b, &po.from_second)?)?;
    total.minimize(&po.cospan.boundary())
}

/// True iff the two circuits have the same power functional once their
/// terminals are matched through the legs.
pub fn circuits_equivalent<F: Field>(a: &OpenCircuit<F>, b: &OpenCircuit<F>) -> Result<bool> {
    if a.input_size() != b.input_size() || a.output_size() != b.output_size() {
        return Err(Error::IncompatibleBoundary(format!(
            "{}→{} versus {}→{}",
            a.input_size(),
            a.output_size(),
            b.input_size(),
            b.output_size()
        )));
    }
    let (ca, cb) = (a.cospan().corelation(), b.cospan().corelation());
    if ca != cb {
        return Err(Error::IncompatibleBoundary(format!("terminal identifications differ: {ca} versus {cb}")));
    }
    let terminal_of = |c: &OpenCircuit<F>| -> Vec<usize> {
        let bd = c.boundary();
        let legs = c.cospan().copairing();
        let mut out = vec![usize::MAX; ca.num_classes()];
        for (e, &class) in ca.class_of().iter().enumerate() {
            out[class] = bd.binary_search(&legs.apply(e)).expect("leg image lies in the boundary");
        }
        out
    };
    let (ta, tb) = (terminal_of(a), terminal_of(b));
    let (qa, qb) = (power_functional(a)?, power_functional(b)?);
    Ok(qa.restrict(&ta) == qb.restrict(&tb))
}
