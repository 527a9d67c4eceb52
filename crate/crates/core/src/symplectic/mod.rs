//! Symplectic spaces of potentials and currents, Lagrangian relations, and
//! the black box semantics of circuits.
//!
//! A space `S(X) = F^X ⊕ (F^X)*` is stored with all potentials first, then
//! all currents. A relation `S(X) → S(Y)` is a subspace of the coordinates
//! `(φ_X, φ_Y, i_X, i_Y)`, Lagrangian for `−ω_X + ω_Y`.

mod blackbox;
mod subspace;

use std::fmt;

pub use blackbox::{black_box, black_box_via_extended_power, graph_of_dq};
pub use subspace::Subspace;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::finset::Corelation;
use crate::linalg::Matrix;

/// `F^n ⊕ (F^n)*` with `ω((φ,i),(φ',i')) = Σ_k σ_k (i'_k φ_k − i_k φ'_k)`,
/// where `σ_k = −1` at conjugated points and `+1` elsewhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymplecticSpace {
    conjugated: Vec<bool>,
}

impl SymplecticSpace {
    pub fn standard(n: usize) -> Self {
        SymplecticSpace { conjugated: vec![false; n] }
    }

    pub fn n(&self) -> usize {
        self.conjugated.len()
    }

    pub fn dim(&self) -> usize {
        2 * self.n()
    }

    pub fn is_conjugated(&self, k: usize) -> bool {
        self.conjugated[k]
    }

    /// The same space with `ω` negated.
    pub fn conjugate(&self) -> Self {
        SymplecticSpace { conjugated: self.conjugated.iter().map(|c| !c).collect() }
    }

    pub fn direct_sum(&self, other: &SymplecticSpace) -> Self {
        SymplecticSpace { conjugated: self.conjugated.iter().chain(&other.conjugated).copied().collect() }
    }

    /// The Gram matrix `J` with `ω(v, w) = vᵀ J w`.
    pub fn gram<F: Field>(&self) -> Matrix<F> {
        let n = self.n();
        let mut j = Matrix::zeros(2 * n, 2 * n);
        for k in 0..n {
            let sign = if self.conjugated[k] { F::one().neg() } else { F::one() };
            j[(n + k, k)] = sign.neg();
            j[(k, n + k)] = sign;
        }
        j
    }

    pub fn omega<F: Field>(&self, v: &[F], w: &[F]) -> Result<F> {
        let jw = self.gram::<F>().mul_vec(w)?;
        Ok(crate::linalg::dot(v, &jw))
    }
}

/// `L° = {v | ω(v, l) = 0 for all l in L}`
pub fn symplectic_complement<F: Field>(l: &Subspace<F>, space: &SymplecticSpace) -> Result<Subspace<F>> {
    check_dim(l, space)?;
    let lj = l.basis().mul(&space.gram::<F>().transpose())?;
    Ok(Subspace::kernel_of(&lj))
}

/// Isotropic and of half the dimension.
pub fn is_lagrangian<F: Field>(l: &Subspace<F>, space: &SymplecticSpace) -> bool {
    if l.ambient() != space.dim() || 2 * l.dim() != space.dim() {
        return false;
    }
    let b = l.basis();
    let Ok(bj) = b.mul(&space.gram::<F>()) else { return false };
    bj.mul(&b.transpose()).is_ok_and(|m| (0..m.rows()).all(|r| m.row(r).iter().all(F::is_zero)))
}

fn check_dim<F: Field>(l: &Subspace<F>, space: &SymplecticSpace) -> Result<()> {
    if l.ambient() != space.dim() {
        return Err(Error::SizeMismatch(format!(
            "subspace of F^{} in a symplectic space of dimension {}",
            l.ambient(),
            space.dim()
        )));
    }
    Ok(())
}

/// A Lagrangian subspace of `conj(dom) ⊕ cod`, read as a relation.
#[derive(Clone, PartialEq, Eq)]
pub struct LagrangianRelation<F> {
    dom: SymplecticSpace,
    cod: SymplecticSpace,
    space: Subspace<F>,
}

impl<F: Field> LagrangianRelation<F> {
    pub fn new(dom: SymplecticSpace, cod: SymplecticSpace, space: Subspace<F>) -> Result<Self> {
        let ambient = dom.conjugate().direct_sum(&cod);
        check_dim(&space, &ambient)?;
        if !is_lagrangian(&space, &ambient) {
            return Err(Error::InvalidArgument(format!(
                "subspace of dimension {} is not Lagrangian in a space of dimension {}",
                space.dim(),
                ambient.dim()
            )));
        }
        Ok(LagrangianRelation { dom, cod, space })
    }

    pub fn dom(&self) -> &SymplecticSpace {
        &self.dom
    }

    pub fn cod(&self) -> &SymplecticSpace {
        &self.cod
    }

    pub fn space(&self) -> &Subspace<F> {
        &self.space
    }

    /// The ambient symplectic space `conj(dom) ⊕ cod`.
    pub fn ambient(&self) -> SymplecticSpace {
        self.dom.conjugate().direct_sum(&self.cod)
    }

    pub fn identity(space: &SymplecticSpace) -> Self {
        let n = space.n();
        let rows = (0..2 * n)
            .map(|k| {
                // φ_k or i_k appears on both sides
                let (a, b) = if k < n { (k, n + k) } else { (n + k, 2 * n + k) };
                unit_with(4 * n, &[(a, F::one()), (b, F::one())])
            })
            .collect();
        LagrangianRelation { dom: space.clone(), cod: space.clone(), space: Subspace::span(4 * n, rows).unwrap() }
    }

    /// `(φ, i) ↦ (φ, −i)`, from `space` to its conjugate.
    pub fn twist(space: &SymplecticSpace) -> Self {
        let n = space.n();
        let rows = (0..2 * n)
            .map(|k| {
                if k < n {
                    unit_with(4 * n, &[(k, F::one()), (n + k, F::one())])
                } else {
                    unit_with(4 * n, &[(n + k, F::one()), (2 * n + k, F::one().neg())])
                }
            })
            .collect();
        LagrangianRelation { dom: space.clone(), cod: space.conjugate(), space: Subspace::span(4 * n, rows).unwrap() }
    }

    /// A Lagrangian subspace of `space` as a relation out of the zero space.
    pub fn state(space: SymplecticSpace, l: Subspace<F>) -> Result<Self> {
        LagrangianRelation::new(SymplecticSpace::standard(0), space, l)
    }

    /// Reads a state of `conj(A) ⊕ B`, with `A` the first `split` points, as
    /// a relation `A → B`. Coordinates are unchanged.
    pub fn bend(&self, split: usize) -> Result<Self> {
        if self.dom.n() != 0 || split > self.cod.n() {
            return Err(Error::InvalidArgument(format!("cannot bend a relation at {split}")));
        }
        let dom = SymplecticSpace { conjugated: self.cod.conjugated[..split].to_vec() }.conjugate();
        let cod = SymplecticSpace { conjugated: self.cod.conjugated[split..].to_vec() };
        Ok(LagrangianRelation { dom, cod, space: self.space.clone() })
    }

    /// The relation read backwards.
    pub fn transpose(&self) -> Self {
        let (a, b) = (self.dom.n(), self.cod.n());
        let order: Vec<usize> =
            (a..a + b).chain(0..a).chain(2 * a + b..2 * a + 2 * b).chain(a + b..2 * a + b).collect();
        LagrangianRelation { dom: self.cod.clone(), cod: self.dom.clone(), space: self.space.project(&order) }
    }

    /// Relational composite `self ; next`.
    pub fn compose(&self, next: &LagrangianRelation<F>) -> Result<Self> {
        if self.cod != next.dom {
            return Err(Error::SizeMismatch(format!(
                "codomain of {} points does not match domain of {} points",
                self.cod.n(),
                next.dom.n()
            )));
        }
        let rows = compose_spaces(&self.space, self.dom.n(), self.cod.n(), &next.space, next.cod.n(), false);
        let ambient = 2 * (self.dom.n() + next.cod.n());
        Ok(LagrangianRelation { dom: self.dom.clone(), cod: next.cod.clone(), space: Subspace::span(ambient, rows)? })
    }

    /// `self ⊕ other : dom ⊕ dom' → cod ⊕ cod'`
    pub fn direct_sum(&self, other: &LagrangianRelation<F>) -> Self {
        let (a, b, c, d) = (self.dom.n(), self.cod.n(), other.dom.n(), other.cod.n());
        let total = 2 * (a + b + c + d);
        // target offsets of the blocks φ_dom, φ_cod, i_dom, i_cod for each summand
        let left = [0, a + c, a + b + c + d, 2 * a + b + 2 * c + d];
        let right = [a, a + b + c, 2 * a + b + c + d, 2 * a + 2 * b + 2 * c + d];
        let embed = |v: &[F], sizes: [usize; 4], offsets: [usize; 4]| {
            let mut out = vec![F::zero(); total];
            let mut src = 0;
            for (size, off) in sizes.into_iter().zip(offsets) {
                out[off..off + size].clone_from_slice(&v[src..src + size]);
                src += size;
            }
            out
        };
        let rows = self
            .space
            .basis()
            .row_vecs()
            .iter()
            .map(|v| embed(v, [a, b, a, b], left))
            .chain(other.space.basis().row_vecs().iter().map(|v| embed(v, [c, d, c, d], right)))
            .collect();
        LagrangianRelation {
            dom: self.dom.direct_sum(&other.dom),
            cod: self.cod.direct_sum(&other.cod),
            space: Subspace::span(total, rows).unwrap(),
        }
    }

    /// The same subspace with the domain currents negated: the untwisted form
    /// in which currents on both sides point out of the terminals.
    pub fn to_outward_currents(&self) -> Subspace<F> {
        negate_block(&self.space, self.dom.n(), self.cod.n())
    }

    pub fn from_outward_currents(dom: SymplecticSpace, cod: SymplecticSpace, l: &Subspace<F>) -> Result<Self> {
        LagrangianRelation::new(dom.clone(), cod.clone(), negate_block(l, dom.n(), cod.n()))
    }

    /// Coordinate labels in storage order.
    pub fn labels(&self) -> Vec<String> {
        let (a, b) = (self.dom.n(), self.cod.n());
        let phis = (0..a).map(|k| format!("φx{k}")).chain((0..b).map(|k| format!("φy{k}")));
        let currents = (0..a).map(|k| format!("ix{k}")).chain((0..b).map(|k| format!("iy{k}")));
        phis.chain(currents).collect()
    }
}

/// Composite of subspaces in the untwisted form: potentials on the shared
/// boundary agree and the currents out of each side cancel.
pub fn compose_outward<F: Field>(a: &Subspace<F>, x: usize, y: usize, b: &Subspace<F>, z: usize) -> Result<Subspace<F>> {
    if a.ambient() != 2 * (x + y) || b.ambient() != 2 * (y + z) {
        return Err(Error::SizeMismatch(format!(
            "subspaces of F^{} and F^{} for boundaries {x}, {y}, {z}",
            a.ambient(),
            b.ambient()
        )));
    }
    Subspace::span(2 * (x + z), compose_spaces(a, x, y, b, z, true))
}

/// The composite as spanning vectors over `(φ_u, φ_w, i_u, i_w)`. Finds
/// every combination of the two bases whose shared parts agree (or, with
/// `cancel_currents`, whose shared currents sum to zero).
fn compose_spaces<F: Field>(
    a: &Subspace<F>,
    u: usize,
    v: usize,
    b: &Subspace<F>,
    w: usize,
    cancel_currents: bool,
) -> Vec<Vec<F>> {
    let (ka, kb) = (a.dim(), b.dim());
    let a_shared: Vec<usize> = (u..u + v).chain(2 * u + v..2 * u + 2 * v).collect();
    let b_shared: Vec<usize> = (0..v).chain(v + w..2 * v + w).collect();
    let mut m = Matrix::zeros(2 * v, ka + kb);
    for (r, (&ca, &cb)) in a_shared.iter().zip(&b_shared).enumerate() {
        let flip = cancel_currents && r >= v;
        for j in 0..ka {
            m[(r, j)] = a.basis()[(j, ca)].clone();
        }
        for j in 0..kb {
            let x = &b.basis()[(j, cb)];
            m[(r, ka + j)] = if flip { x.clone() } else { x.neg() };
        }
    }
    let a_outer: Vec<usize> = (0..u).collect();
    let a_outer_i: Vec<usize> = (u + v..2 * u + v).collect();
    let b_outer: Vec<usize> = (v..v + w).collect();
    let b_outer_i: Vec<usize> = (2 * v + w..2 * v + 2 * w).collect();
    m.kernel()
        .into_iter()
        .map(|coef| {
            let combine = |basis: &Matrix<F>, coef: &[F], cols: &[usize]| -> Vec<F> {
                cols.iter()
                    .map(|&c| {
                        coef.iter().enumerate().fold(F::zero(), |acc, (j, k)| {
                            if k.is_zero() {
                                acc
                            } else {
                                acc.add(&k.mul(&basis[(j, c)]))
                            }
                        })
                    })
                    .collect()
            };
            let (ca, cb) = coef.split_at(ka);
            let mut out = combine(a.basis(), ca, &a_outer);
            out.extend(combine(b.basis(), cb, &b_outer));
            out.extend(combine(a.basis(), ca, &a_outer_i));
            out.extend(combine(b.basis(), cb, &b_outer_i));
            out
        })
        .collect()
}

fn negate_block<F: Field>(l: &Subspace<F>, dom: usize, cod: usize) -> Subspace<F> {
    let n = l.ambient();
    let mut flip = Matrix::identity(n);
    for k in dom + cod..2 * dom + cod {
        flip[(k, k)] = F::one().neg();
    }
    l.map(&flip).expect("square map of matching size")
}

fn unit_with<F: Field>(len: usize, entries: &[(usize, F)]) -> Vec<F> {
    let mut v = vec![F::zero(); len];
    for (k, x) in entries {
        v[*k] = x.clone();
    }
    v
}

/// Potentials constant on each block of `e`, and currents whose sums over
/// the two sides of every block agree.
pub fn symplectify<F: Field>(e: &Corelation) -> LagrangianRelation<F> {
    let (x, y) = (e.left_size(), e.right_size());
    let n = x + y;
    let mut rows: Vec<Vec<F>> = e
        .blocks()
        .iter()
        .map(|block| unit_with(2 * n, &block.iter().map(|&k| (k, F::one())).collect::<Vec<_>>()))
        .collect();
    let mut balance = Matrix::zeros(e.num_classes(), n);
    for (k, &c) in e.class_of().iter().enumerate() {
        balance[(c, k)] = if k < x { F::one() } else { F::one().neg() };
    }
    for current in balance.kernel() {
        let mut v = vec![F::zero(); n];
        v.extend(current);
        rows.push(v);
    }
    LagrangianRelation {
        dom: SymplecticSpace::standard(x),
        cod: SymplecticSpace::standard(y),
        space: Subspace::span(2 * n, rows).expect("rows have length 2(x + y)"),
    }
}

impl<F: Field> fmt::Display for LagrangianRelation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.labels().join("\t"))?;
        for r in 0..self.space.dim() {
            let cells: Vec<String> = self.space.basis().row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", cells.join("\t"))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for LagrangianRelation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LagrangianRelation {}→{}\n{self}", self.dom.n(), self.cod.n())
    }
}
