use std::cmp::Ordering;
use std::collections::BTreeMap;

use dashu_int::IBig;
use rustc_hash::FxHashMap;

use super::generate::{symmetric_grothendieck, PolyCache};
use super::operators::divided_difference;
use super::table::CoefficientTable;
use super::{BlockStructure, Coeff, MVPolynomial, Monomial, Theory};
use crate::error::{Error, Result};
use crate::perm::{reduced_word, Permutation};
use crate::shapes::{Partition, PartitionSequence};

/// `f / m` for a monomial `m` with coefficient `±1`; every term must be divisible.
pub fn exact_divide_by_monomial(f: &MVPolynomial, m: &MVPolynomial) -> Result<MVPolynomial> {
    let mut terms = m.terms();
    let (divisor, unit) = match (terms.next(), terms.next()) {
        (Some((mono, c)), None) if c.is_one() || *c == IBig::NEG_ONE => (mono.clone(), c.clone()),
        _ => return Err(Error::NotDivisible("divisor is not a unit monomial".into())),
    };
    let mut out = MVPolynomial::zero();
    for (t, c) in f.terms() {
        if !divisor.divides(t) {
            return Err(Error::NotDivisible(format!("term {t:?} is not divisible by {divisor:?}")));
        }
        out.add_term(divisor.quotient_of(t), c * &unit);
    }
    Ok(out)
}

/// Lowest degree first, then reverse-lexicographically largest first.
#[derive(Clone, PartialEq, Eq)]
struct RevlexKey(u32, Monomial);

impl Ord for RevlexKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0).then_with(|| other.1.revlex_cmp(&self.1))
    }
}

impl PartialOrd for RevlexKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lowest degree first, then lexicographically largest first.
#[derive(Clone, PartialEq, Eq)]
struct LexKey(u32, Monomial);

impl Ord for LexKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0).then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for LexKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Working remainder of a triangular elimination, optionally discarding
/// everything above a degree cap.
struct Remainder<K: Ord> {
    map: BTreeMap<K, Coeff>,
    degree_cap: Option<u32>,
    truncated: bool,
}

impl<K: Ord> Remainder<K> {
    fn new(degree_cap: Option<u32>) -> Self {
        Remainder {
            map: BTreeMap::new(),
            degree_cap,
            truncated: false,
        }
    }

    fn add(&mut self, degree: u32, key: K, c: Coeff) {
        if self.degree_cap.is_some_and(|cap| degree > cap) {
            self.truncated = true;
            return;
        }
        match self.map.entry(key) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
        }
    }

    fn pop_first(&mut self) -> Option<(K, Coeff)> {
        self.map.pop_first()
    }
}

/// Result of a Schubert or Grothendieck basis expansion.
#[derive(Clone, Debug)]
pub struct GrothendieckExpansion {
    pub table: CoefficientTable<Permutation>,
    /// Smallest `S_N` containing every permutation that occurs.
    pub ambient_used: usize,
    /// False when terms above the degree cap were discarded.
    pub complete: bool,
}

/// Triangular peeling: the lowest-degree part of `Σ a_w 𝔊_w` is `Σ a_w 𝔖_w`,
/// and the reverse-lexicographically leading monomial of `𝔖_w` is `x^{code(w)}`
/// with coefficient one.
fn expand_schubert_type(
    f: &MVPolynomial,
    theory: Theory,
    ambient: usize,
    hard_cap: usize,
    degree_cap: Option<u32>,
) -> Result<GrothendieckExpansion> {
    let route = match theory {
        Theory::Cohomology => "schubert-basis",
        Theory::KTheory => "grothendieck-basis",
    };
    let mut table = CoefficientTable::new(theory, route);
    let mut rem = Remainder::new(degree_cap);
    for (m, c) in f.terms() {
        rem.add(m.degree(), RevlexKey(m.degree(), m.clone()), c.clone());
    }
    let mut cache = PolyCache::new();
    let mut ambient_used = 1;
    while let Some((RevlexKey(_, lead), c)) = rem.pop_first() {
        let code: Vec<u32> = lead.exponents().iter().map(|&e| e as u32).collect();
        let w = Permutation::from_code(&code);
        if w.size() > hard_cap {
            return Err(if hard_cap > ambient {
                Error::AmbientCapExceeded { cap: hard_cap }
            } else {
                Error::Expansion(format!(
                    "polynomial is outside the span of S_{ambient}: needs {w}"
                ))
            });
        }
        ambient_used = ambient_used.max(w.size());
        let basis = cache.get(&w, theory);
        for (m, a) in basis.terms() {
            if *m == lead {
                continue;
            }
            rem.add(m.degree(), RevlexKey(m.degree(), m.clone()), -(a * &c));
        }
        table.add(w, c);
    }
    Ok(GrothendieckExpansion {
        table,
        ambient_used,
        complete: !rem.truncated,
    })
}

/// Coefficients of `f` in the Schubert basis of `S_N`; a polynomial outside
/// that span is rejected.
pub fn expand_in_schubert_basis(f: &MVPolynomial, ambient: usize) -> Result<CoefficientTable<Permutation>> {
    Ok(expand_schubert_type(f, Theory::Cohomology, ambient, ambient, None)?.table)
}

/// Expansion in `{𝔊_w}` (or `{𝔖_w}` in cohomology). The ambient group may grow
/// from `S_ambient` up to `S_{2·ambient}`.
pub fn expand_in_grothendieck_basis(
    f: &MVPolynomial,
    ambient: usize,
    theory: Theory,
    degree_cap: Option<u32>,
) -> Result<GrothendieckExpansion> {
    expand_schubert_type(f, theory, ambient, 2 * ambient.max(1), degree_cap)
}

/// Coefficient of `𝔖_w` in `f`, computed as `(∂_w f)(0)` along a reduced word.
pub fn schubert_coefficient_by_operators(f: &MVPolynomial, w: &Permutation) -> Coeff {
    let word = reduced_word(w);
    let mut g = f.clone();
    for &a in word.letters.iter().rev() {
        g = divided_difference(&g, a as usize);
        if g.is_zero() {
            return IBig::ZERO;
        }
    }
    g.constant_term()
}

/// Result of [`expand_in_product_g_basis`].
#[derive(Clone, Debug)]
pub struct ProductExpansion {
    pub table: CoefficientTable<PartitionSequence>,
    pub complete: bool,
}

type BlockTerms = Vec<(Vec<u8>, Coeff)>;

/// Dominant-exponent terms of `G_λ` in `k` variables, i.e. its expansion in
/// monomial symmetric functions.
fn dominant_terms(lambda: &Partition, k: usize, theory: Theory) -> BlockTerms {
    if k == 0 {
        return if lambda.is_empty() {
            vec![(Vec::new(), IBig::ONE)]
        } else {
            Vec::new()
        };
    }
    let g = symmetric_grothendieck(lambda, k, theory);
    let mut out: BlockTerms = g
        .terms()
        .filter(|(m, _)| is_weakly_decreasing(&m.padded(k)))
        .map(|(m, c)| (m.padded(k).to_vec(), c.clone()))
        .collect();
    out.sort();
    out
}

fn is_weakly_decreasing(e: &[u8]) -> bool {
    e.windows(2).all(|p| p[0] >= p[1])
}

/// The unique table `b` with `f = Σ_μ b_μ ∏_i G_{μ_i}(x^{i})` over the given
/// blocks.
///
/// `f` must be symmetric inside every block. Because each `G_λ` is `s_λ` plus
/// higher-degree terms and `s_λ` has leading dominant monomial `x^λ`, the
/// system is unitriangular and is solved by elimination on dominant
/// monomials, lowest degree first. `column_bounds[i]` restricts the first
/// part of `μ_i`; a required coefficient outside the bounds is an error. With
/// a degree cap, coefficients above the cap are not computed.
pub fn expand_in_product_g_basis(
    f: &MVPolynomial,
    blocks: &BlockStructure,
    column_bounds: &[Option<u32>],
    theory: Theory,
    degree_cap: Option<u32>,
) -> Result<ProductExpansion> {
    let total = blocks.total();
    if f.num_variables() > total {
        return Err(Error::Expansion(format!(
            "polynomial involves x_{} beyond the {total} block variables",
            f.num_variables()
        )));
    }
    for b in 0..blocks.len() {
        let offset = blocks.offset(b);
        for i in 1..blocks.sizes()[b] {
            if !f.is_symmetric_in(offset + i) {
                return Err(Error::NotBlockSymmetric { block: b });
            }
        }
    }
    let ranges: Vec<(usize, usize)> = (0..blocks.len())
        .map(|b| (blocks.offset(b), blocks.sizes()[b]))
        .collect();
    let is_dominant = |m: &Monomial| {
        let e = m.padded(total);
        ranges.iter().all(|&(o, k)| is_weakly_decreasing(&e[o..o + k]))
    };

    let mut rem = Remainder::new(degree_cap);
    for (m, c) in f.terms() {
        if is_dominant(m) {
            rem.add(m.degree(), LexKey(m.degree(), m.clone()), c.clone());
        }
    }

    let mut cache: FxHashMap<(Partition, usize), BlockTerms> = FxHashMap::default();
    let mut table = CoefficientTable::new(theory, "product-g-basis");
    while let Some((LexKey(_, lead), c)) = rem.pop_first() {
        let e = lead.padded(total);
        let mut key = Vec::with_capacity(blocks.len());
        for (b, &(o, k)) in ranges.iter().enumerate() {
            let lambda = Partition::new(e[o..o + k].iter().map(|&x| x as u32).collect());
            if let Some(bound) = column_bounds.get(b).copied().flatten() {
                if lambda.part(1) > bound {
                    return Err(Error::Expansion(format!(
                        "coefficient {c} at block {b} partition {lambda:?} exceeds column bound {bound}"
                    )));
                }
            }
            key.push(lambda);
        }
        let factors: Vec<BlockTerms> = key
            .iter()
            .zip(&ranges)
            .map(|(lambda, &(_, k))| {
                cache
                    .entry((lambda.clone(), k))
                    .or_insert_with(|| dominant_terms(lambda, k, theory))
                    .clone()
            })
            .collect();
        subtract_product(&mut rem, &factors, total, &c, &lead);
        table.add(PartitionSequence::new(key), c);
    }
    Ok(ProductExpansion {
        table,
        complete: !rem.truncated,
    })
}

fn subtract_product(
    rem: &mut Remainder<LexKey>,
    factors: &[BlockTerms],
    total: usize,
    c: &Coeff,
    lead: &Monomial,
) {
    if factors.iter().any(Vec::is_empty) {
        return;
    }
    let mut idx = vec![0usize; factors.len()];
    let mut exps = Vec::with_capacity(total);
    loop {
        exps.clear();
        let mut coeff = c.clone();
        let mut degree = 0u32;
        for (f, &i) in factors.iter().zip(&idx) {
            let (e, a) = &f[i];
            exps.extend_from_slice(e);
            degree += e.iter().map(|&x| x as u32).sum::<u32>();
            coeff *= a;
        }
        let m = Monomial::from_exponents(&exps);
        if m != *lead {
            rem.add(degree, LexKey(degree, m), -coeff);
        }
        // odometer
        let mut b = factors.len();
        loop {
            if b == 0 {
                return;
            }
            b -= 1;
            idx[b] += 1;
            if idx[b] < factors[b].len() {
                break;
            }
            idx[b] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;
    use crate::poly::generate::{grothendieck_polynomial, schubert_type_polynomial};

    fn p(w: &[u32]) -> Permutation {
        Permutation::from_window(w.to_vec()).unwrap()
    }

    fn x(i: usize) -> MVPolynomial {
        MVPolynomial::variable(i)
    }

    fn mono(e: &[u8]) -> MVPolynomial {
        MVPolynomial::from_term(Monomial::from_exponents(e), 1)
    }

    fn seq(parts: &[&[u32]]) -> PartitionSequence {
        PartitionSequence::new(parts.iter().map(|p| Partition::new(p.to_vec())).collect())
    }

    #[test]
    fn leading_monomial_of_schubert_is_code() {
        for w in all_permutations(5) {
            let s = schubert_type_polynomial(&w, Theory::Cohomology);
            let lead = s.terms().map(|(m, _)| m.clone()).max_by(|a, b| a.revlex_cmp(b)).unwrap();
            let code: Vec<u8> = w.lehmer_code().iter().map(|&c| c as u8).collect();
            assert_eq!(lead, Monomial::from_exponents(&code), "w={w}");
            assert!(s.coefficient(&lead).is_one());
        }
    }

    #[test]
    fn schubert_expansion_examples() {
        let f = &mono(&[2]) + &mono(&[1, 1]);
        let t = expand_in_schubert_basis(&f, 3).unwrap();
        assert_eq!(t.len(), 2);
        assert!(t.get(&p(&[3, 1, 2])).is_one());
        assert!(t.get(&p(&[2, 3, 1])).is_one());
        let one = expand_in_schubert_basis(&MVPolynomial::one(), 3).unwrap();
        assert!(one.get(&Permutation::identity()).is_one());
        assert_eq!(one.len(), 1);
        // x_1^3 needs S_4
        assert!(expand_in_schubert_basis(&mono(&[3]), 3).is_err());
    }

    #[test]
    fn schubert_round_trip_and_operator_oracle() {
        for w in all_permutations(4) {
            let s = schubert_type_polynomial(&w, Theory::Cohomology);
            let t = expand_in_schubert_basis(&s, 4).unwrap();
            assert_eq!(t.len(), 1);
            assert!(t.get(&w).is_one());
        }
        // random combination, checked against (∂_w f)(0)
        let f = &(&(&mono(&[2, 1]) + &mono(&[0, 2, 1])) - &mono(&[1, 1, 1])) + &x(3);
        let t = expand_in_schubert_basis(&f, 5).unwrap();
        for w in all_permutations(5) {
            assert_eq!(t.get(&w), schubert_coefficient_by_operators(&f, &w), "w={w}");
        }
    }

    #[test]
    fn grothendieck_expansion_examples() {
        let t = expand_in_grothendieck_basis(&mono(&[2]), 3, Theory::KTheory, None).unwrap();
        assert_eq!(t.table.len(), 1);
        assert!(t.table.get(&p(&[3, 1, 2])).is_one());
        for w in all_permutations(4) {
            let g = grothendieck_polynomial(&w, 4).unwrap();
            let t = expand_in_grothendieck_basis(&g, 4, Theory::KTheory, None).unwrap();
            assert_eq!(t.table.len(), 1);
            assert!(t.table.get(&w).is_one());
            assert!(t.complete);
        }
    }

    #[test]
    fn grothendieck_product_signs_alternate_on_s3() {
        for u in all_permutations(3) {
            for v in all_permutations(3) {
                let f = &grothendieck_polynomial(&u, 3).unwrap() * &grothendieck_polynomial(&v, 3).unwrap();
                let t = expand_in_grothendieck_basis(&f, 3, Theory::KTheory, None).unwrap();
                let base = u.length() + v.length();
                for (w, c) in t.table.iter() {
                    let sign = if (w.length() + base) % 2 == 0 { 1 } else { -1 };
                    assert!(IBig::from(sign) * c > IBig::ZERO, "u={u} v={v} w={w} c={c}");
                }
                // reconstruct
                let mut back = MVPolynomial::zero();
                for (w, c) in t.table.iter() {
                    back.add_scaled(&grothendieck_polynomial(w, 6).unwrap(), c);
                }
                assert_eq!(back, f);
            }
        }
    }

    #[test]
    fn ambient_cap_is_enforced() {
        // x_1^4 is 𝔊 of a permutation in S_5, beyond 2·2
        let err = expand_in_grothendieck_basis(&mono(&[4]), 2, Theory::KTheory, None).unwrap_err();
        assert!(matches!(err, Error::AmbientCapExceeded { cap: 4 }));
    }

    #[test]
    fn product_basis_examples() {
        let g1 = symmetric_grothendieck(&Partition::new(vec![1]), 1, Theory::KTheory);
        let f = &g1 * &g1.shift_variables(1);
        let blocks = BlockStructure::new(vec![1, 1]);
        let t = expand_in_product_g_basis(&f, &blocks, &[None, None], Theory::KTheory, None).unwrap();
        assert_eq!(t.table.len(), 1);
        assert!(t.table.get(&seq(&[&[1], &[1]])).is_one());

        let f = grothendieck_polynomial(&p(&[1, 3, 2]), 3).unwrap();
        let one_block = BlockStructure::new(vec![2]);
        let t = expand_in_product_g_basis(&f, &one_block, &[None], Theory::KTheory, None).unwrap();
        assert_eq!(t.table.len(), 1);
        assert!(t.table.get(&seq(&[&[1]])).is_one());

        // x_1 alone is not symmetric in x_1, x_2
        assert!(matches!(
            expand_in_product_g_basis(&x(1), &one_block, &[None], Theory::KTheory, None),
            Err(Error::NotBlockSymmetric { block: 0 })
        ));
        // bound violation
        let g2 = symmetric_grothendieck(&Partition::new(vec![2]), 2, Theory::Cohomology);
        assert!(expand_in_product_g_basis(&g2, &one_block, &[Some(1)], Theory::Cohomology, None).is_err());
        // variables outside the blocks
        assert!(expand_in_product_g_basis(&x(3), &one_block, &[None], Theory::Cohomology, None).is_err());
    }

    #[test]
    fn product_basis_round_trip() {
        let blocks = BlockStructure::new(vec![2, 2]);
        let shapes = Partition::all_in_rectangle(2, 2);
        for theory in [Theory::Cohomology, Theory::KTheory] {
            let mut f = MVPolynomial::zero();
            let mut expected = CoefficientTable::new(theory, "x");
            for (i, a) in shapes.iter().enumerate() {
                for (j, b) in shapes.iter().enumerate() {
                    let c = IBig::from(((i * 7 + j * 3) % 5) as i64 - 2);
                    if c.is_zero() {
                        continue;
                    }
                    let term = &symmetric_grothendieck(a, 2, theory)
                        * &symmetric_grothendieck(b, 2, theory).shift_variables(2);
                    f.add_scaled(&term, &c);
                    expected.add(PartitionSequence::new(vec![a.clone(), b.clone()]), c);
                }
            }
            let t = expand_in_product_g_basis(&f, &blocks, &[None, None], theory, None).unwrap();
            assert!(t.table.same_entries(&expected), "{theory:?}");
        }
    }

    #[test]
    fn degree_cap_truncates() {
        let g = symmetric_grothendieck(&Partition::new(vec![1]), 2, Theory::KTheory);
        let f = &g * &g;
        let full = expand_in_product_g_basis(&f, &BlockStructure::new(vec![2]), &[None], Theory::KTheory, None).unwrap();
        assert!(full.complete);
        let capped = expand_in_product_g_basis(&f, &BlockStructure::new(vec![2]), &[None], Theory::KTheory, Some(2)).unwrap();
        assert!(!capped.complete);
        for (k, c) in capped.table.iter() {
            assert_eq!(full.table.get(k), *c);
            assert!(k.total_size() <= 2);
        }
    }

    #[test]
    fn monomial_division() {
        let q = exact_divide_by_monomial(&mono(&[2, 1]), &mono(&[1, 1])).unwrap();
        assert_eq!(q, x(1));
        let f = &x(1) + &x(2);
        assert_eq!(exact_divide_by_monomial(&f, &MVPolynomial::one()).unwrap(), f);
        assert!(exact_divide_by_monomial(&f, &x(1)).is_err());
        assert!(exact_divide_by_monomial(&f, &f).is_err());
    }
}
