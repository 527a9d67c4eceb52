mod support;

use opennet::field::LaurentPoly;
use opennet::lti::{BehaviourRep, MatCospan, PolyMatrix, SfgTerm};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn matrix(seed: u64) -> PolyMatrix {
    let mut r = rng(seed);
    let (rows, cols) = (r.gen_range(1..=5), r.gen_range(1..=5));
    support::poly_matrix(&mut r, rows, cols)
}

fn term_pair(seed: u64) -> (SfgTerm, SfgTerm) {
    let mut r = rng(seed);
    loop {
        let a = support::sfg_term(&mut r, 6);
        let b = support::sfg_term(&mut r, 6);
        if a.typ().unwrap().1 == b.typ().unwrap().0 {
            return (a, b);
        }
    }
}

fn behaviour(t: &SfgTerm) -> BehaviourRep {
    t.denote().unwrap().behaviour()
}

fn check_smith(m: &PolyMatrix) {
    let snf = m.smith();
    assert_eq!(snf.u.mul(&snf.d).unwrap().mul(&snf.v).unwrap(), *m);
    assert_eq!(snf.u.mul(&snf.u_inv).unwrap(), PolyMatrix::identity(m.rows()));
    assert_eq!(snf.v.mul(&snf.v_inv).unwrap(), PolyMatrix::identity(m.cols()));
    assert!(snf.u.determinant().unwrap().is_unit());
    assert!(snf.v.determinant().unwrap().is_unit());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let e = &snf.d[(i, j)];
            if i != j || i >= snf.rank {
                assert!(e.is_zero(), "off-diagonal or beyond rank at ({i}, {j})");
            } else {
                assert!(!e.is_zero());
                assert_eq!(e.canonical(), *e);
                if i + 1 < snf.rank {
                    assert!(e.divides(&snf.d[(i + 1, i + 1)]));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_round_trips(seed in any::<u64>()) {
        check_smith(&matrix(seed));
    }

    #[test]
    fn epi_split_mono_factorises(seed in any::<u64>()) {
        let m = matrix(seed);
        let (e, mono) = m.epi_split_mono();
        prop_assert_eq!(mono.mul(&e).unwrap(), m.clone());
        prop_assert_eq!(e.rows(), e.smith().rank);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn behaviour_is_invariant_under_unit_row_operations(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (m, n) = (r.gen_range(1..=2), r.gen_range(1..=2));
        let rows = r.gen_range(1..=3);
        let k = support::poly_matrix(&mut r, rows, m + n);
        let b = BehaviourRep::from_matrix(m, n, &k);
        let mut op = PolyMatrix::identity(rows);
        let i = r.gen_range(0..rows);
        op[(i, i)] = LaurentPoly::monomial(support::positive(&mut r), r.gen_range(-2..=2));
        if rows > 1 {
            let j = (i + 1) % rows;
            op[(j, i)] = support::laurent(&mut r);
        }
        prop_assert!(b.equivalent(&BehaviourRep::from_matrix(m, n, &op.mul(&k).unwrap())));
        prop_assert!(b.equivalent(&b));
        // leq both ways coincides with equivalence
        let other = BehaviourRep::from_matrix(m, n, &support::poly_matrix(&mut r, rows, m + n));
        prop_assert_eq!(b.leq(&other).unwrap() && other.leq(&b).unwrap(), b.equivalent(&other));
    }

    #[test]
    fn corelation_reduction_preserves_behaviour(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (m, n, d) = (r.gen_range(0..=2), r.gen_range(0..=2), r.gen_range(1..=3));
        let c = MatCospan::new(support::poly_matrix(&mut r, d, m), support::poly_matrix(&mut r, d, n)).unwrap();
        prop_assert!(c.behaviour().equivalent(&c.corelation().behaviour()));
        prop_assert!(c.controllable_part().behaviour().leq(&c.behaviour()).unwrap());
    }

    #[test]
    fn denotation_is_functorial(seed in any::<u64>()) {
        let (a, b) = term_pair(seed);
        let (da, db) = (a.denote().unwrap(), b.denote().unwrap());
        let via_corelations = da.corelation().compose(&db.corelation()).unwrap();
        prop_assert!(behaviour(&SfgTerm::seq(a.clone(), b.clone())).equivalent(&via_corelations.behaviour()));
        let sum = da.tensor(&db);
        prop_assert!(behaviour(&SfgTerm::tensor(a, b)).equivalent(&sum.behaviour()));
    }

    #[test]
    fn composition_of_behaviours_is_associative(seed in any::<u64>()) {
        let (a, b) = term_pair(seed);
        let c = SfgTerm::Id;
        let (_, n) = b.typ().unwrap();
        let c = (1..n).fold(c, |acc, _| SfgTerm::tensor(acc, SfgTerm::Id));
        prop_assume!(n > 0);
        let left = SfgTerm::seq(SfgTerm::seq(a.clone(), b.clone()), c.clone());
        let right = SfgTerm::seq(a, SfgTerm::seq(b, c));
        prop_assert!(behaviour(&left).equivalent(&behaviour(&right)));
    }

    #[test]
    fn operational_traces_satisfy_the_kernel(seed in any::<u64>()) {
        let mut r = rng(seed);
        let term = support::sfg_term(&mut r, 12);
        let check = support::check_forward_trace(&mut r, &term, 8);
        prop_assert!(check.agrees, "{}", term);
    }

    #[test]
    fn controllable_interconnections_stay_controllable(seed in any::<u64>()) {
        let (middle, composite) = support::span_composite(&mut rng(seed));
        prop_assume!(middle);
        prop_assert!(composite);
    }
}
