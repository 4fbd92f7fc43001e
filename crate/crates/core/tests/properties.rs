use std::collections::BTreeMap;

use proptest::prelude::*;

use dsp_core::catalog::{inverse_psi_extensions, MvTuple};
use dsp_core::constructions::{make_example, make_merged, verify_tuple, ExampleId, MatrixTuple};
use dsp_core::exactmat::{charpoly, det, inverse, rank, ri, solve_coboundary_sum, Mat, Rat};
use dsp_core::jnf::{
    corresponding_diagonal, d_of, dominates, op_neighbours, partition_dominates, r_of, JnfTuple, JordanForm,
    Partition,
};
use dsp_core::reduction::{condition_report, psi_step, reduce_chain};
use dsp_core::spectra::{find_relation, ExponentAssignment, RelationMode, Spectrum, Version};

fn partition_of(n: usize) -> impl Strategy<Value = Partition> {
    let all = Partition::all(n);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn sized_partition(max: usize) -> impl Strategy<Value = Partition> {
    (1..=max).prop_flat_map(partition_of)
}

/// A form of size n split over up to three labels.
fn form_of(n: usize) -> impl Strategy<Value = JordanForm> {
    proptest::collection::vec(0usize..3, n).prop_flat_map(|owners| {
        let mut sizes = [0usize; 3];
        for o in owners {
            sizes[o] += 1;
        }
        let parts: Vec<_> = sizes.iter().map(|&m| if m == 0 { Just(None).boxed() } else { partition_of(m).prop_map(Some).boxed() }).collect();
        parts.prop_map(|ps| {
            let blocks: BTreeMap<String, Partition> = ps
                .into_iter()
                .enumerate()
                .filter_map(|(i, p)| p.map(|p| (format!("l{i}"), p)))
                .collect();
            JordanForm::new(blocks).unwrap()
        })
    })
}

fn tuple_strategy(max_n: usize) -> impl Strategy<Value = JnfTuple> {
    (2..=max_n, 2usize..=4).prop_flat_map(|(n, p)| {
        proptest::collection::vec(form_of(n), p + 1).prop_map(|fs| JnfTuple::new(fs).unwrap())
    })
}

fn small_matrix(max_n: usize) -> impl Strategy<Value = Mat> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(-4i64..=4, n), n).prop_map(|rows| {
            Mat::from_rows(rows.into_iter().map(|r| r.into_iter().map(ri).collect()).collect()).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn kappa_is_constant_along_the_chain(t in tuple_strategy(10)) {
        let chain = reduce_chain(&t);
        let kappa = chain.stages[0].report.kappa;
        for st in &chain.stages {
            prop_assert_eq!(st.report.kappa, kappa);
        }
        for w in chain.sizes.windows(2) {
            prop_assert!(w[1] < w[0]);
        }
    }

    #[test]
    fn correspondence_keeps_r_and_d(f in (1usize..=10).prop_flat_map(form_of)) {
        let g = corresponding_diagonal(&f);
        prop_assert!(g.is_diagonal());
        prop_assert_eq!(g.n(), f.n());
        prop_assert_eq!(r_of(&g), r_of(&f));
        prop_assert_eq!(d_of(&g), d_of(&f));
    }

    #[test]
    fn dual_is_an_involution(p in sized_partition(12)) {
        prop_assert_eq!(p.dual().dual(), p.clone());
        prop_assert_eq!(p.dual().size(), p.size());
    }

    #[test]
    fn dominance_is_reflexive_and_ops_climb(p in sized_partition(10)) {
        let f = JordanForm::single(p.clone());
        prop_assert!(dominates(&f, &f).unwrap());
        for q in op_neighbours(&p) {
            prop_assert!(partition_dominates(&q, &p));
            prop_assert!(!partition_dominates(&p, &q));
        }
    }

    #[test]
    fn charpoly_matches_determinants(m in small_matrix(5)) {
        let n = m.n();
        let chi = charpoly(&m);
        prop_assert_eq!(chi.degree(), Some(n));
        for x in -3i64..=3 {
            let xm = &Mat::scalar(n, ri(x)) - &m;
            prop_assert_eq!(det(&xm), chi.eval(&ri(x)));
        }
    }

    #[test]
    fn rank_and_inverse(m in small_matrix(5)) {
        let n = m.n();
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
        match inverse(&m) {
            Some(inv) => {
                prop_assert_eq!(rank(&m), n);
                prop_assert_eq!(&m * &inv, Mat::identity(n));
            }
            None => prop_assert!(rank(&m) < n),
        }
    }

    #[test]
    fn merging_adds_ranks((n, r1, r2) in (2usize..=9).prop_flat_map(|n| (Just(n), 0..n)).prop_flat_map(|(n, r1)| {
        let top = r1.min(n - 1 - r1);
        (Just(n), Just(r1), 0..=top)
    })) {
        let (a, a1, a2) = make_merged(n, r1, r2).unwrap();
        prop_assert_eq!(rank(&a), r1);
        prop_assert_eq!(rank(&a1), r2);
        prop_assert_eq!(rank(&a2), r1 + r2);
    }

    #[test]
    fn inverse_extensions_reduce_back(mvs in (1usize..=3, 2usize..=3).prop_flat_map(|(n, p)| {
        proptest::collection::vec(partition_of(n), p + 1)
    })) {
        let t = MvTuple::new(mvs).unwrap();
        for e in inverse_psi_extensions(&t) {
            prop_assert!(e.n > t.n);
            let (back, size) = psi_step(&e.to_jnf()).unwrap();
            prop_assert_eq!(size, t.n);
            prop_assert_eq!(MvTuple::from_jnf(&back).unwrap(), t.clone());
            prop_assert_eq!(e.rigidity_index, t.rigidity_index);
        }
    }

    #[test]
    fn relation_witness_adds_up(vals in proptest::collection::vec(0i64..8, 6)) {
        let t = JnfTuple::diagonals(&[vec![1, 1], vec![1, 1], vec![1, 1]]).unwrap();
        let mut values: Vec<BTreeMap<String, Rat>> = vals
            .chunks(2)
            .map(|c| BTreeMap::from([("e1".to_string(), Rat::new(c[0].into(), 8.into())), ("e2".to_string(), Rat::new((c[1] + 8).into(), 16.into()))]))
            .collect();
        let s: Rat = values.iter().flat_map(|m| m.values().cloned()).sum();
        let fix = values[0]["e1"].clone() - (s.clone() - s.floor());
        values[0].insert("e1".into(), fix);
        let a = ExponentAssignment { version: Version::Multiplicative, values: values.clone(), offsets: None };
        let Ok(sp) = Spectrum::new(t, a) else { return Ok(()) };
        if let Some(rel) = find_relation(&sp, RelationMode::Generic, 1) {
            let mut sum = ri(0);
            for (j, counts) in rel.counts.iter().enumerate() {
                prop_assert_eq!(counts.values().sum::<usize>(), rel.kappa);
                for (l, c) in counts {
                    sum += &values[j][l] * ri(*c as i64);
                }
            }
            prop_assert_eq!(&sum, &rel.value);
            prop_assert!(rel.defect.is_some());
        }
    }

    #[test]
    fn coboundary_solutions_hit_the_target(k in 2i64..6, entries in proptest::collection::vec(-3i64..=3, 9)) {
        let a = make_example(ExampleId::Ex2, 3).unwrap();
        let b: Vec<Mat> = a.mats.iter().map(|m| m.scale(&ri(k))).collect();
        let target = Mat::from_rows(entries.chunks(3).map(|r| r.iter().map(|&x| ri(x)).collect()).collect()).unwrap();
        let pairs: Vec<(Mat, Mat)> = a.mats.iter().cloned().zip(b).collect();
        if let Ok(ds) = solve_coboundary_sum(&pairs, &target) {
            let mut sum = Mat::zero(3);
            for ((x, y), d) in pairs.iter().zip(&ds) {
                sum = &sum + &(&(x * d) - &(d * y));
            }
            prop_assert_eq!(sum, target);
        }
    }

    #[test]
    fn verification_is_repeatable_and_serializable(seed in 0i64..50) {
        let ex = make_example(ExampleId::Ex1, 5).unwrap();
        let alphas = vec![ri(seed + 1), ri(-seed - 2), ri(2 * seed + 7)];
        let t = ex.with_alphas(alphas).unwrap();
        let r1 = verify_tuple(&t, None);
        let r2 = verify_tuple(&t, None);
        prop_assert_eq!(&r1, &r2);
        let json = serde_json::to_string(&t).unwrap();
        let back: MatrixTuple = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(verify_tuple(&back, None), r1);
    }
}

#[test]
fn partition_counts() {
    let counts: Vec<usize> = (1..=10).map(|n| Partition::all(n).len()).collect();
    assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
}

#[test]
fn kappa_matches_orbit_dimensions() {
    let t = JnfTuple::singles(vec![Partition::new(vec![2]); 3]).unwrap();
    let rep = condition_report(&t);
    assert_eq!((rep.sum_d, rep.kappa, rep.rigidity_index), (6, 0, 2));
}
