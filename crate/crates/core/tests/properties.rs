mod common;

use common::*;
use midconv::cli::tuplefile::{parse_tuple, write_tuple};
use midconv::convolution::{
    convolution_matrix, middle_convolution, middle_convolution_with, predicted_size, subspace_k, subspace_l,
    Complement,
};
use midconv::exactla::{charpoly, is_semisimple, jordan_partition, rational_spectrum, Mat, Scalar, Subspace};
use midconv::model::{build_l, spectral_type, ShiftVector};
use midconv::reduction::{classify_terminal, reduce_step, Classification, StepResult, TerminalPattern, CATALOG};
use midconv::rigidity::{are_similar, centralizer_dim, index, is_irreducible};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn rank_nullity(seed in any::<u64>()) {
        let mut g = rng(seed);
        let (r, c) = (g.gen_range(1..=6), g.gen_range(1..=6));
        let m = rand_mat(&mut g, r, c, -2, 2);
        prop_assert_eq!(m.rank() + m.nullspace().dim(), c);
    }

    #[test]
    fn charpoly_is_similarity_invariant(seed in any::<u64>()) {
        let mut g = rng(seed);
        let n = g.gen_range(1..=4);
        let m = rand_mat(&mut g, n, n, -3, 3);
        let p = rand_unimodular(&mut g, n);
        prop_assert_eq!(charpoly(&m.conjugate_by(&p)).unwrap(), charpoly(&m).unwrap());
    }

    #[test]
    fn jordan_parts_sum_to_algebraic_multiplicity(seed in any::<u64>()) {
        let mut g = rng(seed);
        let n = g.gen_range(1..=4);
        let mut u = rand_mat(&mut g, n, n, -1, 1);
        for i in 0..n {
            for j in 0..i {
                u[(i, j)] = Scalar::zero();
            }
            u[(i, i)] = rand_int(&mut g, -1, 1);
        }
        let sp = rational_spectrum(&u);
        prop_assert!(sp.fully_rational);
        for (lam, k) in &sp.eigenvalues {
            prop_assert_eq!(jordan_partition(&u, lam).iter().sum::<usize>(), *k);
        }
    }

    #[test]
    fn semisimplicity_is_similarity_invariant(seed in any::<u64>()) {
        let mut g = rng(seed);
        let n = g.gen_range(1..=4);
        let m = if g.gen_bool(0.5) { rand_mat(&mut g, n, n, -1, 1) } else {
            let d: Vec<Scalar> = (0..n).map(|_| rand_int(&mut g, -1, 1)).collect();
            semisimple_with(&mut g, &d)
        };
        let p = rand_unimodular(&mut g, n);
        prop_assert_eq!(is_semisimple(&m), is_semisimple(&m.conjugate_by(&p)));
    }

    #[test]
    fn canonical_basis_ignores_spanning_order(seed in any::<u64>()) {
        let mut g = rng(seed);
        let dim = g.gen_range(1..=6);
        let k = g.gen_range(1..=4);
        let vs: Vec<Vec<Scalar>> = (0..k).map(|_| (0..dim).map(|_| rand_rational(&mut g, -2, 2)).collect()).collect();
        let mut other = vs.clone();
        other.shuffle(&mut g);
        // append a combination of two vectors
        let c = rand_int(&mut g, -2, 2);
        let mix: Vec<Scalar> = vs[0].iter().zip(&vs[k - 1]).map(|(a, b)| a + &(&c * b)).collect();
        other.push(mix);
        let a = Subspace::from_vectors(dim, &vs);
        let b = Subspace::from_vectors(dim, &other);
        prop_assert_eq!(a.basis(), b.basis());
        prop_assert_eq!(a.pivot_rows(), b.pivot_rows());
    }

    #[test]
    fn addition_is_a_group_action(seed in any::<u64>()) {
        let mut g = rng(seed);
        let t = property_tuple(&mut g);
        let m = t.slot_count();
        let s1 = ShiftVector((0..m).map(|_| rand_rational(&mut g, -3, 3)).collect());
        let s2 = ShiftVector((0..m).map(|_| rand_rational(&mut g, -3, 3)).collect());
        let twice = t.addition(&s1).unwrap().addition(&s2).unwrap();
        prop_assert_eq!(&twice, &t.addition(&s1.plus(&s2)).unwrap());
        prop_assert_eq!(&t.addition(&s1).unwrap().addition(&s1.negated()).unwrap(), &t);
        prop_assert_eq!(index(&t.addition(&s1).unwrap()).idx, index(&t).idx);
    }

    #[test]
    fn index_and_irreducibility_are_conjugation_invariant(seed in any::<u64>()) {
        let mut g = rng(seed);
        let t = property_tuple(&mut g);
        let p = rand_unimodular(&mut g, t.n());
        let u = t.conjugate(&p).unwrap();
        let (a, b) = (index(&t), index(&u));
        prop_assert_eq!(a.idx, b.idx);
        prop_assert!(a.local_identity_holds());
        prop_assert_eq!(is_irreducible(&t), is_irreducible(&u));
    }

    #[test]
    fn mc_size_matches_prediction(seed in any::<u64>()) {
        let mut g = rng(seed);
        let t = property_tuple(&mut g);
        let mu = rand_rational(&mut g, -3, 3);
        let predicted = predicted_size(&t, &mu);
        match middle_convolution(&t, &mu) {
            Ok(out) => {
                prop_assert_eq!(out.result.n(), predicted);
                prop_assert_eq!(&out.projection * &out.section, Mat::identity(predicted));
                prop_assert!(out.result.same_skeleton(&t));
                for (slot, a) in t.slots().into_iter().zip(out.result.slot_matrices()) {
                    let full = convolution_matrix(&t, &mu, slot);
                    prop_assert_eq!(&(&out.projection * &full) * &out.section, a.clone());
                }
            }
            Err(_) => prop_assert_eq!(predicted, 0),
        }
        if !mu.is_zero() {
            let (_, k) = subspace_k(&t);
            prop_assert_eq!(k.intersection_dim(&subspace_l(&t, &mu)), 0);
        }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn complement_choice_gives_similar_results(seed in any::<u64>()) {
        let mut g = rng(seed);
        let n = g.gen_range(1..=3);
        let r = g.gen_range(1..=2);
        let t = random_tuple(&mut g, n, r, 1);
        let mu = rand_nonzero(&mut g, -3, 3);
        if let Ok(left) = middle_convolution_with(&t, &mu, Complement::LeftmostPivot) {
            let right = middle_convolution_with(&t, &mu, Complement::RightmostPivot).unwrap();
            prop_assert!(are_similar(&left.result, &right.result).unwrap().is_some());
        }
    }

    #[test]
    fn padding_preserves_index_and_quotient(seed in any::<u64>()) {
        let mut g = rng(seed);
        let n = g.gen_range(1..=3);
        let r = g.gen_range(1..=2);
        let t = random_tuple(&mut g, n, r, 0);
        let padded = t.pad_point(1).unwrap();
        prop_assert_eq!(index(&padded).idx, index(&t).idx);
        prop_assert_eq!(is_irreducible(&padded), is_irreducible(&t));
        let mu = rand_nonzero(&mut g, -3, 3);
        prop_assert_eq!(predicted_size(&padded, &mu), predicted_size(&t, &mu));
        if let (Ok(a), Ok(b)) = (middle_convolution(&t, &mu), middle_convolution(&padded, &mu)) {
            prop_assert!(are_similar(&a.result, &b.result).unwrap().is_some());
        }
        prop_assert!(padded.pad_point(1).is_err());
    }

    #[test]
    fn spectral_type_is_conjugation_invariant(seed in any::<u64>()) {
        let mut g = rng(seed);
        let p = lblock_point(&mut g);
        let n = p.a1.rows();
        let st = midconv::model::spectral_type_of_pair(&p.a1, &p.a0, 1).unwrap();
        let c = rand_unimodular(&mut g, n);
        let st2 = midconv::model::spectral_type_of_pair(&p.a1.conjugate_by(&c), &p.a0.conjugate_by(&c), 1).unwrap();
        prop_assert_eq!(st.pattern(), st2.pattern());
        prop_assert_eq!(st.size(), n);
        for b in &st.blocks {
            prop_assert_eq!(b.inner_pattern().iter().sum::<usize>(), b.size);
        }
    }

    #[test]
    fn l_blocks(seed in any::<u64>()) {
        let mut g = rng(seed);
        let q = {
            let mut parts: Vec<usize> = (0..g.gen_range(1..=3)).map(|_| g.gen_range(1..=3)).collect();
            parts.sort_unstable_by(|a, b| b.cmp(a));
            parts
        };
        let distinct: Vec<Scalar> = (0..q.len()).map(|i| int(i as i64 * 2 - 1)).collect();
        prop_assert!(is_semisimple(&build_l(&q, &distinct).unwrap()));
        let equal = vec![rand_rational(&mut g, -3, 3); q.len()];
        let l = build_l(&q, &equal).unwrap();
        prop_assert_eq!(centralizer_dim(&l), q.iter().map(|x| x * x).sum::<usize>());
    }

    #[test]
    fn classification_ignores_order_and_scale(k in 0usize..17, d in 1usize..4, seed in any::<u64>()) {
        let entry = &CATALOG[k];
        let mut points = entry.instantiate(d).instantiated();
        points.shuffle(&mut rng(seed));
        match classify_terminal(&TerminalPattern::new(&points)) {
            Classification::Cataloged { d: found, .. } => prop_assert_eq!(found, d),
            Classification::Uncataloged => prop_assert!(false, "entry {} uncataloged", k),
        }
    }

    #[test]
    fn tuple_files_round_trip(seed in any::<u64>()) {
        let mut g = rng(seed);
        let t = property_tuple(&mut g);
        let text = write_tuple(&t);
        prop_assert_eq!(&parse_tuple(&text).unwrap(), &t);
        prop_assert_eq!(write_tuple(&parse_tuple(&text).unwrap()), text);
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn reduction_keeps_index_and_irreducibility(seed in any::<u64>()) {
        let mut g = rng(seed);
        let mut t = idx2_instance(&mut g);
        let n0 = t.n();
        let mut steps = 0;
        while t.n() > 1 {
            match reduce_step(&t).unwrap() {
                StepResult::Reduced { tuple, step } => {
                    prop_assert!(step.size_after < step.size_before);
                    t = tuple;
                    prop_assert_eq!(index(&t).idx, 2);
                    prop_assert!(is_irreducible(&t));
                    steps += 1;
                }
                StepResult::Terminal { .. } => prop_assert!(false, "idx 2 tuple stopped at size {}", t.n()),
            }
        }
        prop_assert!(steps < n0);
        prop_assert!((0..t.points().len()).all(|i| spectral_type(&t, i).is_ok()));
    }
}
