use dashu_int::IBig;

use super::{MVPolynomial, Monomial};

/// `∂_i f = (f − s_i f) / (x_i − x_{i+1})` for the 1-based variable index `i`.
pub fn divided_difference(f: &MVPolynomial, i: usize) -> MVPolynomial {
    assert!(i >= 1, "variables are 1-based");
    let (a, b) = (i - 1, i);
    let mut out = MVPolynomial::zero();
    let width = f.num_variables().max(i + 1);
    for (m, c) in f.terms() {
        let p = m.exponent(a);
        let q = m.exponent(b);
        if p == q {
            continue;
        }
        let (hi, lo, coeff) = if p > q {
            (p, q, c.clone())
        } else {
            (q, p, -c.clone())
        };
        let mut exps = m.padded(width);
        for k in 0..hi - lo {
            exps[a] = hi - 1 - k;
            exps[b] = lo + k;
            out.add_term(Monomial::from_exponents(&exps), coeff.clone());
        }
    }
    out
}

/// `π_i f = ∂_i((1 − x_{i+1}) f)`.
pub fn isobaric_divided_difference(f: &MVPolynomial, i: usize) -> MVPolynomial {
    let shifted = f.mul_monomial(&Monomial::variable(i + 1));
    let mut g = f.clone();
    g.add_scaled(&shifted, &IBig::NEG_ONE);
    divided_difference(&g, i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(i: usize) -> MVPolynomial {
        MVPolynomial::variable(i)
    }

    fn mono(e: &[u8]) -> MVPolynomial {
        MVPolynomial::from_term(Monomial::from_exponents(e), 1)
    }

    #[test]
    fn divided_difference_examples() {
        assert_eq!(divided_difference(&x(1), 1), MVPolynomial::one());
        assert_eq!(divided_difference(&mono(&[2, 1]), 1), mono(&[1, 1]));
        let sym = &(&x(1) * &x(2)) + &(&x(1) + &x(2));
        assert!(divided_difference(&sym, 1).is_zero());
        assert_eq!(divided_difference(&x(2), 1), -&MVPolynomial::one());
    }

    #[test]
    fn isobaric_examples() {
        assert_eq!(isobaric_divided_difference(&MVPolynomial::one(), 1), MVPolynomial::one());
        assert_eq!(isobaric_divided_difference(&MVPolynomial::one(), 3), MVPolynomial::one());
        assert_eq!(isobaric_divided_difference(&x(1), 1), MVPolynomial::one());
        let expected = &(&x(1) + &x(2)) - &(&x(1) * &x(2));
        assert_eq!(isobaric_divided_difference(&mono(&[2]), 1), expected);
    }

    /// Brute-force oracle: multiply back by `x_i − x_{i+1}` and compare with
    /// `f − s_i f`.
    #[test]
    fn divided_difference_inverts_multiplication() {
        let f = &(&mono(&[3, 0, 2]) + &mono(&[0, 4, 1])) - &mono(&[1, 2, 2]);
        for i in 1..=3 {
            let d = divided_difference(&f, i);
            let lhs = &d * &(&x(i) - &x(i + 1));
            let rhs = &f - &f.swap_variables(i);
            assert_eq!(lhs, rhs, "i={i}");
        }
    }

    fn arb_poly() -> impl Strategy<Value = MVPolynomial> {
        proptest::collection::vec(
            (proptest::collection::vec(0u8..=4, 4), -5i64..=5),
            0..8,
        )
        .prop_map(|terms| {
            let mut p = MVPolynomial::zero();
            for (exps, c) in terms {
                // keep total degree <= 4
                let mut e = exps;
                while e.iter().map(|&x| x as u32).sum::<u32>() > 4 {
                    let idx = e.iter().position(|&x| x > 0).unwrap();
                    e[idx] -= 1;
                }
                p.add_term(Monomial::from_exponents(&e), IBig::from(c));
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn nil_and_idempotent(f in arb_poly(), i in 1usize..=3) {
            prop_assert!(divided_difference(&divided_difference(&f, i), i).is_zero());
            let once = isobaric_divided_difference(&f, i);
            prop_assert_eq!(isobaric_divided_difference(&once, i), once);
        }

        #[test]
        fn braid_relations(f in arb_poly(), i in 1usize..=2) {
            let d = |g: &MVPolynomial, k| divided_difference(g, k);
            prop_assert_eq!(d(&d(&d(&f, i), i + 1), i), d(&d(&d(&f, i + 1), i), i + 1));
            let p = |g: &MVPolynomial, k| isobaric_divided_difference(g, k);
            prop_assert_eq!(p(&p(&p(&f, i), i + 1), i), p(&p(&p(&f, i + 1), i), i + 1));
        }
    }
}
