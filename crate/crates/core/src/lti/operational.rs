use std::fmt;

use super::{SfgGenerator, SfgTerm};
use crate::error::{Error, Result};
use crate::field::Rational;
use crate::linalg::Matrix;

/// One value per delay or co-delay, in left-to-right order of the term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RegisterState(pub Vec<Rational>);

impl RegisterState {
    pub fn zeros(d: usize) -> Self {
        RegisterState(vec![Rational::zero(); d])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for RegisterState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", vals.join(", "))
    }
}

/// Boundary values at a single tick: left then right.
pub type Boundary = (Vec<Rational>, Vec<Rational>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Next(RegisterState),
    Infeasible,
    /// Internal wires are not forced by the registers and the boundary.
    Nondeterminate,
}

/// A register reads `emit` as its current value and latches `store`.
#[derive(Debug, Clone, Copy)]
struct Register {
    emit: usize,
    store: usize,
}

/// Homogeneous linear constraints among wire values at a single tick.
type Equation = Vec<(usize, Rational)>;

/// A term flattened into wires, per-tick equations and registers.
#[derive(Debug, Clone)]
pub struct Machine {
    wires: usize,
    inputs: Vec<usize>,
    outputs: Vec<usize>,
    equations: Vec<Equation>,
    registers: Vec<Register>,
}

impl Machine {
    pub fn new(term: &SfgTerm) -> Result<Self> {
        let (m, _) = term.typ()?;
        let mut net = Machine { wires: m, inputs: (0..m).collect(), outputs: vec![], equations: vec![], registers: vec![] };
        let left = net.inputs.clone();
        net.outputs = net.build(term, &left);
        Ok(net)
    }

    pub fn inputs(&self) -> usize {
        self.inputs.len()
    }

    pub fn outputs(&self) -> usize {
        self.outputs.len()
    }

    pub fn registers(&self) -> usize {
        self.registers.len()
    }

    fn fresh(&mut self) -> usize {
        self.wires += 1;
        self.wires - 1
    }

    fn equate(&mut self, terms: Equation) {
        self.equations.push(terms);
    }

    fn build(&mut self, term: &SfgTerm, left: &[usize]) -> Vec<usize> {
        let one = Rational::one;
        let minus = || -&Rational::one();
        match term {
            SfgTerm::Id => left.to_vec(),
            SfgTerm::Twist => vec![left[1], left[0]],
            SfgTerm::Seq(a, b) => {
                let mid = self.build(a, left);
                self.build(b, &mid)
            }
            SfgTerm::Tensor(a, b) => {
                let (ma, _) = a.typ().expect("typed");
                let mut right = self.build(a, &left[..ma]);
                right.extend(self.build(b, &left[ma..]));
                right
            }
            SfgTerm::Gen(g) => match g {
                SfgGenerator::Add => {
                    let r = self.fresh();
                    self.equate(vec![(left[0], one()), (left[1], one()), (r, minus())]);
                    vec![r]
                }
                SfgGenerator::Zero => {
                    let r = self.fresh();
                    self.equate(vec![(r, one())]);
                    vec![r]
                }
                SfgGenerator::Copy => vec![left[0], left[0]],
                SfgGenerator::Discard => vec![],
                SfgGenerator::Delay => {
                    let r = self.fresh();
                    self.registers.push(Register { emit: r, store: left[0] });
                    vec![r]
                }
                SfgGenerator::Scalar(a) => {
                    let r = self.fresh();
                    self.equate(vec![(r, one()), (left[0], -a)]);
                    vec![r]
                }
            },
            SfgTerm::Mirror(g) => match g {
                SfgGenerator::Add => {
                    let (r0, r1) = (self.fresh(), self.fresh());
                    self.equate(vec![(r0, one()), (r1, one()), (left[0], minus())]);
                    vec![r0, r1]
                }
                SfgGenerator::Zero => {
                    self.equate(vec![(left[0], one())]);
                    vec![]
                }
                SfgGenerator::Copy => {
                    self.equate(vec![(left[0], one()), (left[1], minus())]);
                    vec![left[0]]
                }
                SfgGenerator::Discard => vec![self.fresh()],
                SfgGenerator::Delay => {
                    let r = self.fresh();
                    self.registers.push(Register { emit: left[0], store: r });
                    vec![r]
                }
                SfgGenerator::Scalar(a) => {
                    let r = self.fresh();
                    self.equate(vec![(left[0], one()), (r, -a)]);
                    vec![r]
                }
            },
        }
    }

    fn check_dims(&self, window: &[Boundary], init: Option<&RegisterState>) -> Result<()> {
        if let Some(st) = init {
            if st.len() != self.registers() {
                return Err(Error::SizeMismatch(format!(
                    "{} register values for a term with {} delays",
                    st.len(),
                    self.registers()
                )));
            }
        }
        for (t, (u, v)) in window.iter().enumerate() {
            if u.len() != self.inputs() || v.len() != self.outputs() {
                return Err(Error::SizeMismatch(format!(
                    "tick {t} has boundary {}→{}, expected {}→{}",
                    u.len(),
                    v.len(),
                    self.inputs(),
                    self.outputs()
                )));
            }
        }
        Ok(())
    }

    /// One tick forward: registers are constants, the boundary is fixed, and
    /// the next register values are read off the stored wires.
    pub fn step(&self, state: &RegisterState, boundary: &Boundary) -> Result<Step> {
        self.check_dims(std::slice::from_ref(boundary), Some(state))?;
        self.tick(state, boundary, false)
    }

    /// One tick backward, with the rules for delays reversed: registers are
    /// read from the stored wires and the previous values are the emitted ones.
    pub fn step_back(&self, state: &RegisterState, boundary: &Boundary) -> Result<Step> {
        self.check_dims(std::slice::from_ref(boundary), Some(state))?;
        self.tick(state, boundary, true)
    }

    fn tick(&self, state: &RegisterState, (u, v): &Boundary, backward: bool) -> Result<Step> {
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for eq in &self.equations {
            rows.push(self.dense(eq));
            rhs.push(Rational::zero());
        }
        let pinned = self.registers.iter().map(|r| if backward { &r.store } else { &r.emit });
        let boundary = self.inputs.iter().zip(u).chain(self.outputs.iter().zip(v));
        for (w, x) in pinned.zip(&state.0).chain(boundary) {
            rows.push(self.dense(&vec![(*w, Rational::one())]));
            rhs.push(x.clone());
        }
        let a = Matrix::from_rows(self.wires, rows)?;
        let Some(sol) = a.solve(&rhs)? else { return Ok(Step::Infeasible) };
        if a.rank() < self.wires {
            return Ok(Step::Nondeterminate);
        }
        let next = self.registers.iter().map(|r| sol[if backward { r.emit } else { r.store }].clone()).collect();
        Ok(Step::Next(RegisterState(next)))
    }

    fn dense(&self, eq: &Equation) -> Vec<Rational> {
        let mut row = vec![Rational::zero(); self.wires];
        for (w, c) in eq {
            row[*w] = &row[*w] + c;
        }
        row
    }

    /// The affine space of all runs over `ticks` consecutive ticks, with
    /// boundary values fixed where `window` gives them and registers fixed at
    /// the start of tick `at` when `pin` is given. `None` if no run exists.
    pub fn runs(
        &self,
        ticks: usize,
        window: &[(usize, Boundary)],
        pin: Option<(usize, &RegisterState)>,
    ) -> Result<Option<RunSpace>> {
        let boundaries: Vec<Boundary> = window.iter().map(|(_, b)| b.clone()).collect();
        self.check_dims(&boundaries, pin.map(|(_, st)| st))?;
        if window.iter().any(|(t, _)| *t >= ticks) || pin.is_some_and(|(t, _)| t > ticks) {
            return Err(Error::InvalidArgument(format!("tick outside a run of length {ticks}")));
        }
        let layout = Layout { wires: self.wires, registers: self.registers(), ticks };
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        let mut push = |terms: Vec<(usize, Rational)>, b: Rational| {
            let mut row = vec![Rational::zero(); layout.vars()];
            for (k, c) in terms {
                row[k] = &row[k] + &c;
            }
            rows.push(row);
            rhs.push(b);
        };
        let one = Rational::one;
        let minus = || -&Rational::one();
        for t in 0..ticks {
            for eq in &self.equations {
                push(eq.iter().map(|(w, c)| (layout.wire(t, *w), c.clone())).collect(), Rational::zero());
            }
            for (j, r) in self.registers.iter().enumerate() {
                push(vec![(layout.wire(t, r.emit), one()), (layout.register(t, j), minus())], Rational::zero());
                push(vec![(layout.wire(t, r.store), one()), (layout.register(t + 1, j), minus())], Rational::zero());
            }
        }
        for (t, (u, v)) in window {
            for (w, x) in self.inputs.iter().zip(u).chain(self.outputs.iter().zip(v)) {
                push(vec![(layout.wire(*t, *w), one())], x.clone());
            }
        }
        if let Some((t, st)) = pin {
            for (j, x) in st.0.iter().enumerate() {
                push(vec![(layout.register(t, j), one())], x.clone());
            }
        }
        let a = Matrix::from_rows(layout.vars(), rows)?;
        Ok(a.solve(&rhs)?.map(|particular| RunSpace {
            layout,
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
            particular,
            directions: a.kernel(),
        }))
    }

    /// Whether the window is realized by some run starting from `init`, or
    /// from any registers when `init` is `None`.
    pub fn check_trace(&self, window: &[Boundary], init: Option<&RegisterState>) -> Result<bool> {
        self.check_window(&[], window, init)
    }

    /// Like [`Machine::check_trace`], with `past` ticks preceding the point
    /// where `init` holds, computed with the reversed delay rules.
    pub fn check_window(&self, past: &[Boundary], future: &[Boundary], init: Option<&RegisterState>) -> Result<bool> {
        if past.is_empty() && future.is_empty() {
            return Err(Error::InvalidArgument("empty window".into()));
        }
        let window: Vec<(usize, Boundary)> = past.iter().chain(future).cloned().enumerate().collect();
        Ok(self.runs(window.len(), &window, init.map(|st| (past.len(), st)))?.is_some())
    }
}

#[derive(Debug, Clone, Copy)]
struct Layout {
    wires: usize,
    registers: usize,
    ticks: usize,
}

impl Layout {
    fn vars(&self) -> usize {
        self.ticks * self.wires + (self.ticks + 1) * self.registers
    }

    fn wire(&self, t: usize, w: usize) -> usize {
        t * self.wires + w
    }

    fn register(&self, t: usize, j: usize) -> usize {
        self.ticks * self.wires + t * self.registers + j
    }
}

/// Runs of a machine: `particular + Σ λ_k · directions[k]`.
#[derive(Debug, Clone)]
pub struct RunSpace {
    layout: Layout,
    inputs: Vec<usize>,
    outputs: Vec<usize>,
    particular: Vec<Rational>,
    directions: Vec<Vec<Rational>>,
}

impl RunSpace {
    pub fn ticks(&self) -> usize {
        self.layout.ticks
    }

    pub fn dimension(&self) -> usize {
        self.directions.len()
    }

    /// The run with the given coordinates along the free directions.
    pub fn run(&self, coords: &[Rational]) -> Result<Vec<Rational>> {
        if coords.len() != self.directions.len() {
            return Err(Error::SizeMismatch(format!("{} coordinates for {} directions", coords.len(), self.dimension())));
        }
        let mut x = self.particular.clone();
        for (c, d) in coords.iter().zip(&self.directions) {
            for (xi, di) in x.iter_mut().zip(d) {
                *xi = &*xi + &(c * di);
            }
        }
        Ok(x)
    }

    pub fn boundary_at(&self, run: &[Rational], t: usize) -> Boundary {
        let pick = |ws: &[usize]| ws.iter().map(|w| run[self.layout.wire(t, *w)].clone()).collect();
        (pick(&self.inputs), pick(&self.outputs))
    }

    pub fn registers_at(&self, run: &[Rational], t: usize) -> RegisterState {
        RegisterState((0..self.layout.registers).map(|j| run[self.layout.register(t, j)].clone()).collect())
    }

    /// The boundary streams of a run, one per left then right port.
    pub fn streams(&self, run: &[Rational]) -> Vec<Vec<Rational>> {
        let ports = self.inputs.iter().chain(&self.outputs);
        ports.map(|w| (0..self.layout.ticks).map(|t| run[self.layout.wire(t, *w)].clone()).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lti::SfgGenerator::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn qs(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|x| q(*x)).collect()
    }

    fn s_plus_one() -> SfgTerm {
        SfgTerm::chain([
            SfgTerm::Gen(Copy),
            SfgTerm::tensor(SfgTerm::Gen(Delay), SfgTerm::Id),
            SfgTerm::Gen(Add),
            SfgTerm::Mirror(Add),
            SfgTerm::tensor(SfgTerm::Mirror(Delay), SfgTerm::Id),
            SfgTerm::Mirror(Copy),
        ])
        .unwrap()
    }

    #[test]
    fn delay_latches_left_and_emits_register() {
        let m = Machine::new(&SfgTerm::Gen(Delay)).unwrap();
        let st = RegisterState(qs(&[4]));
        assert_eq!(m.step(&st, &(qs(&[7]), qs(&[4]))).unwrap(), Step::Next(RegisterState(qs(&[7]))));
        assert_eq!(m.step(&st, &(qs(&[7]), qs(&[5]))).unwrap(), Step::Infeasible);
        assert_eq!(m.step_back(&RegisterState(qs(&[7])), &(qs(&[7]), qs(&[4]))).unwrap(), Step::Next(st));
    }

    #[test]
    fn add_steps() {
        let m = Machine::new(&SfgTerm::Gen(Add)).unwrap();
        let st = RegisterState(vec![]);
        assert_eq!(m.step(&st, &(qs(&[2, 3]), qs(&[5]))).unwrap(), Step::Next(st.clone()));
        assert_eq!(m.step(&st, &(qs(&[2, 3]), qs(&[6]))).unwrap(), Step::Infeasible);
    }

    #[test]
    fn hidden_wire_is_nondeterminate() {
        let t = SfgTerm::seq(SfgTerm::Mirror(Discard), SfgTerm::Gen(Discard));
        let m = Machine::new(&t).unwrap();
        assert_eq!(m.step(&RegisterState(vec![]), &(vec![], vec![])).unwrap(), Step::Nondeterminate);
    }

    #[test]
    fn s_plus_one_trace() {
        let m = Machine::new(&s_plus_one()).unwrap();
        assert_eq!(m.registers(), 2);
        // registers (1, 2): input −1, 1, … yields output −2, 2, …
        let mut st = RegisterState(qs(&[1, 2]));
        for t in 0..4 {
            let sign = if t % 2 == 0 { -1 } else { 1 };
            match m.step(&st, &(qs(&[sign]), qs(&[2 * sign]))).unwrap() {
                Step::Next(next) => st = next,
                other => panic!("tick {t}: {other:?}"),
            }
        }
        let alternating: Vec<Boundary> = (0..6).map(|t| (qs(&[if t % 2 == 0 { 1 } else { -1 }]), qs(&[0]))).collect();
        assert!(m.check_trace(&alternating, None).unwrap());
        assert!(!Machine::new(&SfgTerm::Id).unwrap().check_trace(&alternating, None).unwrap());
    }

    #[test]
    fn init_constrains_trace() {
        let m = Machine::new(&SfgTerm::Gen(Delay)).unwrap();
        let w = vec![(qs(&[1]), qs(&[0])), (qs(&[2]), qs(&[1]))];
        assert!(m.check_trace(&w, Some(&RegisterState(qs(&[0])))).unwrap());
        assert!(!m.check_trace(&w, Some(&RegisterState(qs(&[3])))).unwrap());
        // the same two ticks seen from the register value between them
        assert!(m.check_window(&w[..1], &w[1..], Some(&RegisterState(qs(&[1])))).unwrap());
    }
}
