//! Random generators shared by the property tests and the acceptance suite.
#![allow(dead_code)]

use opennet::circuit::{Edge, LabelledGraph, OpenCircuit};
use opennet::field::{LaurentPoly, Rational};
use opennet::finset::{FinCospan, FinFunction};
use opennet::lti::{Machine, MatCospan, MatSpan, PolyMatrix, RegisterState, SfgGenerator, SfgTerm};
use rand::Rng;

pub fn rational(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.gen_range(-5i64..=5), rng.gen_range(1i64..=4)).unwrap()
}

pub fn positive(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.gen_range(1i64..=6), rng.gen_range(1i64..=4)).unwrap()
}

/// A circuit with `1..=max_nodes` nodes, at most `max_edges` positive
/// resistors, and legs landing anywhere.
pub fn circuit(
    rng: &mut impl Rng,
    inputs: usize,
    outputs: usize,
    max_nodes: usize,
    max_edges: usize,
) -> OpenCircuit<Rational> {
    let n = rng.gen_range(1..=max_nodes);
    let edges = (0..rng.gen_range(0..=max_edges))
        .map(|_| Edge { src: rng.gen_range(0..n), tgt: rng.gen_range(0..n), impedance: positive(rng) })
        .collect();
    let mut leg = |k: usize| FinFunction::new((0..k).map(|_| rng.gen_range(0..n)).collect(), n).unwrap();
    let cospan = FinCospan::new(leg(inputs), leg(outputs)).unwrap();
    OpenCircuit::new(LabelledGraph::new(n, edges).unwrap(), cospan).unwrap()
}

/// A Laurent polynomial with exponents in `-1..=2`, so of spread at most 3.
pub fn laurent(rng: &mut impl Rng) -> LaurentPoly {
    if rng.gen_bool(0.25) {
        return LaurentPoly::zero();
    }
    let mut terms = Vec::new();
    for e in -1..=2 {
        if rng.gen_bool(0.4) {
            terms.push((e, Rational::from_integer(rng.gen_range(-3i64..=3))));
        }
    }
    LaurentPoly::from_terms(terms)
}

pub fn poly_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> PolyMatrix {
    PolyMatrix::from_rows(cols, (0..rows).map(|_| (0..cols).map(|_| laurent(rng)).collect()).collect()).unwrap()
}

fn ids(k: usize) -> Option<SfgTerm> {
    (0..k).map(|_| SfgTerm::Id).reduce(SfgTerm::tensor)
}

fn generator(rng: &mut impl Rng, wires: usize) -> SfgTerm {
    loop {
        let g = match rng.gen_range(0..6) {
            0 => SfgGenerator::Add,
            1 => SfgGenerator::Zero,
            2 => SfgGenerator::Copy,
            3 => SfgGenerator::Discard,
            4 => SfgGenerator::Delay,
            _ => SfgGenerator::Scalar(rational(rng)),
        };
        let t = match rng.gen_range(0..10) {
            0 => SfgTerm::Twist,
            1..=5 => SfgTerm::Gen(g),
            _ => SfgTerm::Mirror(g),
        };
        let (m, n) = t.typ().unwrap();
        // keep at most four wires so composites stay small
        if m <= wires && wires - m + n <= 4 {
            return t;
        }
    }
}

/// A well-typed term built as a sequence of layers, each one generator
/// padded with identity wires. Delays are favoured so that most terms have
/// registers.
pub fn sfg_term(rng: &mut impl Rng, max_generators: usize) -> SfgTerm {
    let mut wires = rng.gen_range(1..=2);
    let mut layers = Vec::new();
    for _ in 0..rng.gen_range(1..=max_generators) {
        let g = if rng.gen_bool(0.25) && wires >= 1 {
            SfgTerm::Gen(SfgGenerator::Delay)
        } else {
            generator(rng, wires)
        };
        let (m, n) = g.typ().unwrap();
        let before = rng.gen_range(0..=wires - m);
        let after = wires - m - before;
        let layer = [ids(before), Some(g), ids(after)].into_iter().flatten().reduce(SfgTerm::tensor).unwrap();
        wires = before + n + after;
        layers.push(layer);
    }
    SfgTerm::chain(layers).unwrap()
}

/// Outcome of one operational/denotational comparison.
pub struct TraceCheck {
    /// The random register init admitted a biinfinite run and was used.
    pub used_random_init: bool,
    /// Kernel equations evaluated inside the window.
    pub equations_checked: usize,
    pub agrees: bool,
}

/// Runs `term` for `ticks` forward ticks and checks the window against the
/// kernel representation of its denotation.
///
/// Only registers that lie on a biinfinite run are meaningful inits, so the
/// run is sampled from a joint system padded by `d + 1` ticks on each side,
/// which is where the reachable and extendable register spaces stabilise.
/// A random init is pinned at the start of the window whenever it lies on
/// such a run; otherwise the init is drawn with the run.
pub fn check_forward_trace(rng: &mut impl Rng, term: &SfgTerm, ticks: usize) -> TraceCheck {
    let machine = Machine::new(term).unwrap();
    let pad = machine.registers() + 1;
    let total = pad + ticks + pad;
    let init = RegisterState((0..machine.registers()).map(|_| rational(rng)).collect());
    let (space, used_random_init) = match machine.runs(total, &[], Some((pad, &init))).unwrap() {
        Some(space) => (space, true),
        None => (machine.runs(total, &[], None).unwrap().expect("the zero run exists"), false),
    };
    let coords: Vec<Rational> = (0..space.dimension()).map(|_| rational(rng)).collect();
    let run = space.run(&coords).unwrap();
    let window: Vec<Vec<Rational>> = space.streams(&run).into_iter().map(|s| s[pad..pad + ticks].to_vec()).collect();
    let behaviour = term.denote().unwrap().behaviour();
    let mut equations_checked = 0;
    let mut agrees = true;
    for t in 0..ticks {
        if let Some(ok) = behaviour.holds_at(&window, t) {
            equations_checked += behaviour.kernel_matrix().rows();
            agrees &= ok;
        }
    }
    TraceCheck { used_random_init, equations_checked, agrees }
}

/// Two random span-represented systems `m → n → l`. Returns whether the
/// middle cospan `d →B₂ n ←C₁ e` is controllable, and whether the composite
/// of the two systems is.
pub fn span_composite(rng: &mut impl Rng) -> (bool, bool) {
    let (m, n, l) = (rng.gen_range(1..=2), rng.gen_range(1..=2), rng.gen_range(1..=2));
    let (d, e) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
    let b = MatSpan { left: poly_matrix(rng, m, d), right: poly_matrix(rng, n, d) };
    let c = MatSpan { left: poly_matrix(rng, n, e), right: poly_matrix(rng, l, e) };
    let middle = MatCospan::new(b.right.clone(), c.left.clone()).unwrap();
    let composite = b.pushout().compose(&c.pushout()).unwrap();
    (middle.is_controllable(), composite.is_controllable())
}
