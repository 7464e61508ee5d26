mod support;

use std::sync::Arc;

use greenseq_core::qdilog::{q_exp, QuantumSeries, SeriesSpace, SkewForm};
use greenseq_core::{
    count_mgs, enumerate_mgs, restrict_mgs, shortest_mgs, verify_sequence, FramedState, LaurentPoly, Mode,
    MutationSequence, Quiver, RationalFunction, SearchConfig, Strategy as SearchStrategy,
};
use num_traits::ToPrimitive;
use proptest::prelude::*;

use support::Mat;

fn skew_matrix(max_n: usize, max_entry: i64) -> impl Strategy<Value = Mat> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(-max_entry..=max_entry, n * (n - 1) / 2).prop_map(move |upper| {
            let mut b = vec![vec![0; n]; n];
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    let v = it.next().unwrap();
                    b[i][j] = v;
                    b[j][i] = -v;
                }
            }
            b
        })
    })
}

fn quiver_and_walk(max_n: usize, max_entry: i64, max_len: usize) -> impl Strategy<Value = (Mat, Vec<usize>)> {
    skew_matrix(max_n, max_entry).prop_flat_map(move |b| {
        let n = b.len();
        (Just(b), prop::collection::vec(1..=n, 0..=max_len))
    })
}

fn cmat_rows(state: &FramedState) -> Mat {
    let n = state.n();
    (0..n)
        .map(|i| state.cmat().row(i).iter().map(|x| x.to_i64().unwrap()).collect())
        .collect()
}

proptest! {
    #[test]
    fn mutation_is_an_involution((b, walk) in quiver_and_walk(6, 3, 1)) {
        let q = support::quiver(&b);
        for &k in &walk {
            prop_assert_eq!(q.mutate(k).unwrap().mutate(k).unwrap(), q.clone());
        }
    }

    #[test]
    fn mutation_matches_reference((b, walk) in quiver_and_walk(6, 3, 6)) {
        let mut q = support::quiver(&b);
        let mut reference = b.clone();
        for &k in &walk {
            q = q.mutate(k).unwrap();
            reference = support::mutate(&reference, k - 1);
            prop_assert!(q.matrix().is_skew_symmetric().is_none());
            prop_assert_eq!(support::exchange_rows(&q), reference.clone());
        }
    }

    #[test]
    fn framed_replay_matches_reference((b, walk) in quiver_and_walk(5, 2, 8)) {
        let state = FramedState::new(&support::quiver(&b)).mutate_sequence(&walk).unwrap();
        let (cs, f) = support::replay(&b, &walk);
        let n = b.len();
        let reference_cmat: Mat = (0..n).map(|i| support::c_vector(&f, i)).collect();
        prop_assert_eq!(cmat_rows(&state), reference_cmat);
        let principal: Mat = (0..n).map(|i| f[i][..n].to_vec()).collect();
        prop_assert_eq!(support::exchange_rows(&state.quiver()), principal);
        let steps: Vec<Vec<i64>> = state.history().iter().map(|s| s.c_vector.to_i64s().unwrap()).collect();
        prop_assert_eq!(steps, cs);
    }

    #[test]
    fn c_vectors_stay_sign_coherent((b, walk) in quiver_and_walk(5, 2, 20)) {
        let state = FramedState::new(&support::quiver(&b)).mutate_sequence(&walk).unwrap();
        for c in state.c_vectors().unwrap() {
            let pos = c.entries().iter().any(|x| x.sign() == num_bigint::Sign::Plus);
            let neg = c.entries().iter().any(|x| x.sign() == num_bigint::Sign::Minus);
            prop_assert!(pos != neg);
        }
    }

    #[test]
    fn subquiver_commutes_with_intersection(
        b in skew_matrix(6, 3),
        s_mask in any::<u8>(),
        t_mask in any::<u8>(),
    ) {
        let n = b.len();
        let pick = |mask: u8| -> Vec<usize> { (1..=n).filter(|&v| mask >> (v - 1) & 1 == 1).collect() };
        let (s, t) = (pick(s_mask), pick(t_mask));
        let both: Vec<usize> = s.iter().copied().filter(|v| t.contains(v)).collect();
        prop_assume!(!both.is_empty());
        let q = support::quiver(&b);
        let outer = q.full_subquiver(&s).unwrap();
        let inner_keep: Vec<usize> = both
            .iter()
            .map(|v| outer.vertices.iter().position(|w| w == v).unwrap() + 1)
            .collect();
        let twice = outer.quiver.full_subquiver(&inner_keep).unwrap();
        let once = q.full_subquiver(&both).unwrap();
        prop_assert_eq!(twice.quiver, once.quiver);
    }
}

#[test]
fn search_outputs_verify_and_agree() {
    let mut quivers: Vec<Quiver> = ["A2", "A3", "A4", "3-cycle", "kronecker", "Q_{1,1,2}"]
        .iter()
        .map(|p| Quiver::preset(p).unwrap())
        .collect();
    let mut rng = <rand::rngs::StdRng as rand::SeedableRng>::seed_from_u64(11);
    for _ in 0..20 {
        let n = rand::Rng::gen_range(&mut rng, 2..=4);
        quivers.push(support::quiver(&support::random_skew(&mut rng, n, 1)));
    }
    for q in &quivers {
        let max_len = 7;
        let all = enumerate_mgs(q, max_len).unwrap();
        for s in &all.sequences {
            let v = verify_sequence(q, s, Mode::MaximalGreen).unwrap();
            assert!(v.is_valid(), "{s}");
            assert!(v.permutation.is_some(), "{s}: endpoint not coframed");
        }
        let deduped = greenseq_core::search(q, &SearchConfig::maximal_green(max_len).dedup(true)).unwrap();
        assert_eq!(deduped.sequences, all.sequences);
        assert_eq!(deduped.truncated, all.truncated);

        let (count, truncated) = count_mgs(q, max_len).unwrap();
        assert_eq!(count as usize, all.sequences.len());
        assert_eq!(truncated, all.truncated);

        let shortest = shortest_mgs(q, max_len).unwrap();
        let min_len = all.sequences.iter().map(MutationSequence::len).min();
        assert_eq!(shortest.as_ref().map(MutationSequence::len), min_len);
        if let Some(s) = &shortest {
            let first = all.sequences.iter().filter(|x| x.len() == s.len()).min().unwrap();
            assert_eq!(s, first);
        }
    }
}

#[test]
fn reddening_search_outputs_verify() {
    let q = Quiver::linear_a(2).unwrap();
    let cfg = SearchConfig::reddening(4).strategy(SearchStrategy::DfsAll);
    let report = greenseq_core::search(&q, &cfg).unwrap();
    assert!(report.sequences.contains(&"1,2".parse().unwrap()));
    for s in &report.sequences {
        assert!(verify_sequence(&q, s, Mode::Reddening).unwrap().is_valid(), "{s}");
    }
}

#[test]
fn permutation_extracted_on_all_a_endpoints() {
    for n in [2, 3] {
        let q = Quiver::linear_a(n).unwrap();
        for s in enumerate_mgs(&q, 8).unwrap().sequences {
            let end = FramedState::new(&q).mutate_sequence(s.vertices()).unwrap();
            assert!(end.extract_permutation().is_ok(), "{s}");
            // One step before the end the state is not coframed yet.
            let mid = FramedState::new(&q).mutate_sequence(&s.vertices()[..s.len() - 1]).unwrap();
            assert!(mid.extract_permutation().is_err(), "{s}");
        }
    }
}

#[test]
fn restriction_length_counts_supported_c_vectors() {
    let a4 = Quiver::linear_a(4).unwrap();
    let report = enumerate_mgs(&a4, 10).unwrap();
    assert!(!report.truncated);
    let keep = [2, 4];
    for s in report.sequences.iter().take(30) {
        let (cs, _) = support::replay(&support::exchange_rows(&a4), s.vertices());
        let supported = cs
            .iter()
            .filter(|c| c.iter().enumerate().all(|(i, &x)| x == 0 || keep.contains(&(i + 1))))
            .count();
        let (_, r) = restrict_mgs(&a4, s, &keep).unwrap();
        assert_eq!(r.len(), supported, "{s}");
    }
}

fn small_rational() -> impl Strategy<Value = RationalFunction> {
    let poly = prop::collection::vec((-3i64..=3, -2i64..=2), 1..=3).prop_map(LaurentPoly::from_terms);
    let den = prop::collection::vec((0i64..=3, -2i64..=2), 1..=3)
        .prop_map(LaurentPoly::from_terms)
        .prop_filter("nonzero", |p| !p.is_zero());
    (poly, den).prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

fn a2_space() -> Arc<SeriesSpace> {
    SeriesSpace::new(SkewForm::from_quiver(&Quiver::linear_a(2).unwrap()).unwrap(), 3)
}

fn small_series() -> impl Strategy<Value = QuantumSeries> {
    prop::collection::vec(((0u32..=2, 0u32..=2), small_rational()), 0..=4).prop_map(|terms| {
        let space = a2_space();
        terms.into_iter().fold(QuantumSeries::zero(&space), |acc, ((a, b), c)| {
            acc.add(&QuantumSeries::monomial(&space, vec![a, b], c).unwrap()).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn series_ring_axioms(a in small_series(), b in small_series(), c in small_series()) {
        let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
        let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let left = a.mul(&b.add(&c).unwrap()).unwrap();
        let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let one = QuantumSeries::one(a.space());
        prop_assert_eq!(a.mul(&one).unwrap(), a.clone());
        prop_assert_eq!(one.mul(&a).unwrap(), a);
    }

    #[test]
    fn rational_canonical_form(a in small_rational(), b in small_rational()) {
        let again = RationalFunction::new(a.numerator().clone(), a.denominator().clone()).unwrap();
        prop_assert_eq!(&again, &a);
        if !a.is_zero() {
            prop_assert!(a.div(&a).unwrap().is_one());
        }
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn dilog_inverse(alpha in (0u32..=2, 0u32..=2).prop_filter("nonzero", |(a, b)| a + b > 0)) {
        let space = SeriesSpace::new(SkewForm::from_quiver(&Quiver::linear_a(2).unwrap()).unwrap(), 6);
        let e = q_exp(&space, &[alpha.0, alpha.1]).unwrap();
        let inv = e.inv().unwrap();
        prop_assert_eq!(e.mul(&inv).unwrap(), QuantumSeries::one(&space));
        prop_assert_eq!(inv.mul(&e).unwrap(), QuantumSeries::one(&space));
    }
}
