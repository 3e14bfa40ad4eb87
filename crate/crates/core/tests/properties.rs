use proptest::prelude::*;

use quiverschub::coefficients::{decomposition_coefficients_full, strip_rectangles, QuiverInstance};
use quiverschub::perm::{cartesian_product, grassmannian_permutation, is_reduced_word, reduced_word, Permutation};
use quiverschub::poly::{
    exact_divide_by_monomial, expand_in_grothendieck_basis, expand_in_schubert_basis, grothendieck_polynomial,
    schubert_polynomial, schubert_type_polynomial, symmetric_grothendieck, Coeff, MVPolynomial, Theory,
};
use quiverschub::quiver::{denominator_monomial, LaceArray, RankConditions};
use quiverschub::shapes::{attach_rectangle, enumerate_ssyt, Partition, Tableau};

fn perm(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n).prop_flat_map(|n| {
        Just((1..=n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|w| Permutation::from_window(w).unwrap())
    })
}

fn partition(rows: usize, cols: u32) -> impl Strategy<Value = Partition> {
    proptest::collection::vec(0..=cols, 0..=rows).prop_map(|mut parts| {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    })
}

/// Random nonnegative lace array turned into rank conditions, with every
/// diagonal rank positive.
fn ranks(max_n: usize, max_entry: u32) -> impl Strategy<Value = (LaceArray, RankConditions)> {
    (1..=max_n)
        .prop_flat_map(move |n| proptest::collection::vec(0..=max_entry, (n + 1) * (n + 1)).prop_map(move |e| (n, e)))
        .prop_map(|(n, e)| {
            let lace = LaceArray::from_fn(n, |a, b| e[a * (n + 1) + b]);
            let r = RankConditions::from_lace(&lace);
            (lace, r)
        })
        .prop_filter("positive diagonal", |(_, r)| !r.diagonal().contains(&0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simple_transpositions_change_length_by_one(w in perm(7), i in 1usize..7) {
        let a = w.length() as i64;
        let b = w.mul_simple(i).length() as i64;
        prop_assert_eq!((a - b).abs(), 1);
    }

    #[test]
    fn grassmannian_descents(lambda in partition(4, 4), extra in 0usize..3) {
        let k = lambda.num_rows() + extra;
        prop_assume!(k > 0);
        let w = grassmannian_permutation(&lambda, k, k + lambda.part(1) as usize).unwrap();
        let descents = w.descents();
        if lambda.is_empty() {
            prop_assert!(descents.is_empty());
        } else {
            prop_assert_eq!(descents, vec![k]);
        }
        prop_assert_eq!(w.length() as u32, lambda.size());
    }

    #[test]
    fn reduced_words_are_reduced(w in perm(7)) {
        let word = reduced_word(&w);
        prop_assert!(word.is_reduced());
        prop_assert!(is_reduced_word(&word, &w));
        prop_assert_eq!(word.product(), w);
    }

    #[test]
    fn cartesian_product_associative_and_additive(u in perm(4), v in perm(4), x in perm(4), pad in 0usize..2) {
        let (a, b, c) = (u.size() + pad, v.size(), x.size() + pad);
        let flat = cartesian_product(&[(u.clone(), a), (v.clone(), b), (x.clone(), c)]).unwrap();
        let left = cartesian_product(&[(u.clone(), a), (v.clone(), b)]).unwrap();
        let nested = cartesian_product(&[(left, a + b), (x.clone(), c)]).unwrap();
        prop_assert_eq!(&flat, &nested);
        prop_assert_eq!(flat.length(), u.length() + v.length() + x.length());
    }

    #[test]
    fn conjugation_is_an_involution(lambda in partition(6, 6)) {
        prop_assert_eq!(lambda.conjugate().conjugate(), lambda.clone());
        prop_assert_eq!(lambda.conjugate().size(), lambda.size());
    }

    #[test]
    fn attaching_a_rectangle(mu in partition(3, 4), extra in 0usize..2, width in 0u32..4) {
        let rows = mu.num_rows() + extra;
        let t = attach_rectangle(&mu, rows, width).unwrap();
        prop_assert_eq!(t.size(), rows as u32 * width + mu.size());
        prop_assert!(t.contains(&Partition::rectangle(rows, width)));
        prop_assert_eq!(attach_rectangle(&Partition::empty(), rows, width).unwrap(), Partition::rectangle(rows, width));
    }

    #[test]
    fn reading_words_round_trip(lambda in partition(3, 3), top in 1u32..5, pick in any::<prop::sample::Index>()) {
        let all: Vec<Tableau> = enumerate_ssyt(&lambda, 0, top).collect();
        prop_assume!(!all.is_empty());
        let t = pick.get(&all);
        prop_assert_eq!(t.row_reading_word().len() as u32, lambda.size());
        prop_assert_eq!(t.column_reading_word().len() as u32, lambda.size());
        prop_assert_eq!(&Tableau::from_row_reading_word(&lambda, &t.row_reading_word()).unwrap(), t);
    }

    #[test]
    fn lace_column_sums_recover_ranks((lace, r) in ranks(3, 2)) {
        prop_assert!(r.validate().is_ok());
        for (i, ri) in r.diagonal().into_iter().enumerate() {
            prop_assert_eq!(lace.column_sum(i), ri as i64);
        }
        let back = r.lace_array();
        prop_assert_eq!(back.nonzero_entries(), lace.nonzero_entries());
    }

    #[test]
    fn derived_dimensions((_, r) in ranks(3, 2)) {
        let q = QuiverInstance::new(r.clone(), None).unwrap();
        let d = &q.derived.d;
        for i in 0..q.derived.n {
            prop_assert_eq!(d[i] - d[i + 1], q.derived.r[i]);
        }
        prop_assert!(q.zelevinsky().fits(d[0] as usize));
        let boundaries = q.derived.blocks().boundaries();
        prop_assert!(q.zelevinsky().descents().iter().all(|k| boundaries.contains(k)));
        prop_assert!(q.derived.expected_codimension >= 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn denominator_divides_zelevinsky_grothendieck((_, r) in ranks(2, 1)) {
        let q = QuiverInstance::new(r, None).unwrap();
        let v = q.zelevinsky();
        let m = denominator_monomial(&q.derived);
        for theory in [Theory::Cohomology, Theory::KTheory] {
            let f = schubert_type_polynomial(v, theory);
            prop_assert!(exact_divide_by_monomial(&f, &m).is_ok());
        }
    }

    #[test]
    fn decomposition_keys_contain_the_rectangles((_, r) in ranks(2, 1)) {
        let q = QuiverInstance::new(r, None).unwrap();
        let out = decomposition_coefficients_full(
            q.zelevinsky(),
            &q.derived.decomposition_blocks(),
            Theory::KTheory,
            Some(q.zelevinsky().length() as u32 + 2),
        )
        .unwrap();
        for (key, _) in out.table.iter() {
            prop_assert!(strip_rectangles(&q.derived, key).is_some(), "{:?}", key);
        }
    }

    #[test]
    fn grassmannian_grothendieck_is_symmetric(lambda in partition(3, 3), extra in 0usize..2) {
        let k = lambda.num_rows() + extra;
        prop_assume!(k > 0);
        for theory in [Theory::Cohomology, Theory::KTheory] {
            let g = symmetric_grothendieck(&lambda, k, theory);
            for i in 1..k {
                prop_assert!(g.is_symmetric_in(i));
            }
            prop_assert!(g.num_variables() <= k);
        }
    }

    #[test]
    fn expansion_inverts_reconstruction(
        terms in proptest::collection::vec((perm(4), -4i64..=4), 1..6),
    ) {
        let mut schubert = MVPolynomial::zero();
        let mut grothendieck = MVPolynomial::zero();
        let mut expected = std::collections::BTreeMap::new();
        for (w, c) in &terms {
            let c = Coeff::from(*c);
            schubert.add_scaled(&schubert_polynomial(w, 4).unwrap(), &c);
            grothendieck.add_scaled(&grothendieck_polynomial(w, 4).unwrap(), &c);
            *expected.entry(w.clone()).or_insert(Coeff::ZERO) += c;
        }
        expected.retain(|_, c| *c != Coeff::ZERO);
        let table = expand_in_schubert_basis(&schubert, 4).unwrap();
        prop_assert_eq!(table.entries(), &expected);
        let k = expand_in_grothendieck_basis(&grothendieck, 4, Theory::KTheory, None).unwrap();
        prop_assert!(k.complete);
        prop_assert_eq!(k.table.entries(), &expected);
    }
}
