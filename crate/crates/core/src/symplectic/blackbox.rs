use super::{LagrangianRelation, Subspace, SymplecticSpace};
use crate::circuit::OpenCircuit;
use crate::dirichlet::{extended_power, power_functional, DirichletForm};
use crate::error::Result;
use crate::field::Field;
use crate::finset::{Corelation, FinFunction};

/// `{(φ, dQ_φ)}`, spanned by `(e_n, dQ_{e_n})` for each node `n`.
pub fn graph_of_dq<F: Field>(q: &DirichletForm<F>) -> Subspace<F> {
    let n = q.size();
    let two = F::from_i64(2);
    let rows = (0..n)
        .map(|m| {
            let mut v = vec![F::zero(); 2 * n];
            v[m] = F::one();
            for k in 0..n {
                v[n + k] = if k == m {
                    (0..n).fold(F::zero(), |acc, j| acc.add(q.coeff(m, j))).mul(&two)
                } else {
                    q.coeff(k, m).mul(&two).neg()
                };
            }
            v
        })
        .collect();
    Subspace::span(2 * n, rows).expect("rows have length 2n")
}

/// The behaviour of a circuit on its terminals, computed from the power
/// functional on `∂N`.
pub fn black_box<F: Field>(c: &OpenCircuit<F>) -> Result<LagrangianRelation<F>> {
    let boundary = c.boundary();
    let legs = c.cospan().copairing();
    let onto_boundary = FinFunction::new(
        legs.table().iter().map(|n| boundary.binary_search(n).expect("legs land in the boundary")).collect(),
        boundary.len(),
    )?;
    assemble(&power_functional(c)?, &onto_boundary, c.input_size())
}

/// The behaviour computed from the extended power on all nodes; slower, and
/// kept as an independent check of [`black_box`].
pub fn black_box_via_extended_power<F: Field>(c: &OpenCircuit<F>) -> Result<LagrangianRelation<F>> {
    assemble(&extended_power(c)?, &c.cospan().copairing(), c.input_size())
}

/// `(twist_X ⊕ id_Y) ∘ S[legs]^op ∘ Graph(dQ)`, bent into a relation `X → Y`.
fn assemble<F: Field>(q: &DirichletForm<F>, legs: &FinFunction, inputs: usize) -> Result<LagrangianRelation<F>> {
    let outputs = legs.domain() - inputs;
    let graph = LagrangianRelation::state(SymplecticSpace::standard(q.size()), graph_of_dq(q))?;
    let wires = super::symplectify::<F>(&Corelation::from_function(legs)).transpose();
    let orient = LagrangianRelation::twist(&SymplecticSpace::standard(inputs))
        .direct_sum(&LagrangianRelation::identity(&SymplecticSpace::standard(outputs)));
    graph.compose(&wires)?.compose(&orient)?.bend(inputs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Edge, LabelledGraph};
    use crate::field::{Rational, RationalFunction};
    use crate::finset::{FinCospan, Generator};
    use crate::symplectic::is_lagrangian;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn graph_of_single_resistor() {
        let r = OpenCircuit::resistor(q(2, 1)).unwrap();
        let g = graph_of_dq(&extended_power(&r).unwrap());
        // (ψ1, ψ2, (ψ1−ψ2)/r, (ψ2−ψ1)/r) at ψ = (3, 1)
        assert!(g.contains(&[q(3, 1), q(1, 1), q(1, 1), q(-1, 1)]).unwrap());
        assert!(is_lagrangian(&g, &SymplecticSpace::standard(2)));
        let zero = graph_of_dq(&DirichletForm::<Rational>::zero(2));
        assert!(zero.contains(&[q(7, 1), q(-2, 1), q(0, 1), q(0, 1)]).unwrap());
    }

    #[test]
    fn ohms_law() {
        let r = OpenCircuit::resistor(q(2, 1)).unwrap();
        let bb = black_box(&r).unwrap();
        // (φx, φy, ix, iy) with ix = iy = (φy − φx)/r
        assert!(bb.space().contains(&[q(1, 1), q(5, 1), q(2, 1), q(2, 1)]).unwrap());
        assert!(!bb.space().contains(&[q(1, 1), q(5, 1), q(-2, 1), q(-2, 1)]).unwrap());
        assert_eq!(bb, black_box_via_extended_power(&r).unwrap());
    }

    #[test]
    fn identity_circuit_is_identity_relation() {
        let id = OpenCircuit::<Rational>::identity(2);
        assert_eq!(black_box(&id).unwrap(), LagrangianRelation::identity(&SymplecticSpace::standard(2)));
    }

    #[test]
    fn series_matches_single_resistor() {
        let one = OpenCircuit::resistor(q(1, 1)).unwrap();
        let two = OpenCircuit::resistor(q(2, 1)).unwrap();
        let series = one.compose(&one).unwrap();
        assert_eq!(black_box(&series).unwrap(), black_box(&two).unwrap());
        assert_eq!(black_box_via_extended_power(&series).unwrap(), black_box(&two).unwrap());
        let composed = black_box(&one).unwrap().compose(&black_box(&one).unwrap()).unwrap();
        assert_eq!(composed, black_box(&two).unwrap());
    }

    #[test]
    fn generators_black_box_to_symplectification() {
        for g in [Generator::Mult(1), Generator::Unit(1), Generator::Comult(2), Generator::Cap(1), Generator::Swap(1, 2)] {
            let c = OpenCircuit::<Rational>::generator(g);
            assert_eq!(black_box(&c).unwrap(), super::super::symplectify(&g.corelation()), "{g:?}");
        }
    }

    #[test]
    fn interior_node_via_both_routes() {
        let edges = vec![
            Edge { src: 0, tgt: 2, impedance: q(1, 1) },
            Edge { src: 2, tgt: 1, impedance: q(3, 1) },
            Edge { src: 2, tgt: 3, impedance: q(1, 2) },
        ];
        let graph = LabelledGraph::new(4, edges).unwrap();
        let cospan = FinCospan::new(FinFunction::new(vec![0], 4).unwrap(), FinFunction::new(vec![1, 3], 4).unwrap())
            .unwrap();
        let c = OpenCircuit::new(graph, cospan).unwrap();
        assert_eq!(black_box(&c).unwrap(), black_box_via_extended_power(&c).unwrap());
    }

    #[test]
    fn inductor_over_rational_functions() {
        let s = RationalFunction::s();
        let l = OpenCircuit::resistor(s.clone()).unwrap();
        let bb = black_box(&l).unwrap();
        // i = (φy − φx)/s
        let v = [RationalFunction::zero(), s.clone(), RationalFunction::one(), RationalFunction::one()];
        assert!(bb.space().contains(&v).unwrap());
        assert_eq!(bb, black_box_via_extended_power(&l).unwrap());
    }
}
