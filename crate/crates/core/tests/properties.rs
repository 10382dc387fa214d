//! Randomized invariants. The strategies stay small so shrinking lands on
//! readable counterexamples.

use num_traits::Zero;
use proptest::prelude::*;

use toric_mds::blowup::degree_interval;
use toric_mds::lattice::RationalTriangle;
use toric_mds::laurent::{FieldSpec, LaurentPoly};
use toric_mds::sections::{smith_normal_form, IntMatrix};

fn reference_triangle() -> RationalTriangle {
    "0,0 1,0 2,3".parse().unwrap()
}

fn int_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=5usize, 1..=5usize).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-9..=9i64, c), r)
    })
}

fn sparse_poly(field: FieldSpec) -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec(((0..=5i64, 0..=5i64), 1..=9i64), 1..6).prop_map(move |terms| {
        LaurentPoly::from_terms(
            field,
            terms
                .into_iter()
                .map(|((i, j), c)| ((i, j), field.coeff_from_int(c))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Degree intervals add endpointwise under multiplication: the extremal
    // corner of a product support decomposes uniquely, so it never cancels
    // over a field.
    #[test]
    fn degree_intervals_add_under_products(
        f in sparse_poly(FieldSpec::Rationals),
        g in sparse_poly(FieldSpec::Rationals),
    ) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let t = reference_triangle();
        let fi = degree_interval(&f, &t).unwrap();
        let gi = degree_interval(&g, &t).unwrap();
        let pi = degree_interval(&(&f * &g), &t).unwrap();
        prop_assert_eq!(pi.a, fi.a + gi.a);
        prop_assert_eq!(pi.b, fi.b + gi.b);
    }

    // Shearing coordinates by a unimodular map with a monomial shift is a
    // local isomorphism at (1, 1), so the vanishing order there is unchanged.
    #[test]
    fn multiplicity_survives_unimodular_substitution(
        f in sparse_poly(FieldSpec::Rationals),
        k1 in -3..=3i64,
        k2 in -3..=3i64,
        shift in (-2..=2i64, -2..=2i64),
    ) {
        prop_assume!(!f.is_zero());
        let a = [[1 + k1 * k2, k1], [k2, 1]];
        let sheared = f.substitute_unimodular(a, shift).unwrap();
        prop_assert_eq!(
            sheared.multiplicity_at_t0().unwrap(),
            f.multiplicity_at_t0().unwrap()
        );
    }

    // Printing and reparsing is the identity, over the rationals and over a
    // prime field.
    #[test]
    fn display_round_trips_through_parse(
        f in sparse_poly(FieldSpec::Rationals),
        g in sparse_poly(FieldSpec::PrimeField(7)),
    ) {
        prop_assume!(!f.is_zero());
        prop_assume!(!g.is_zero());
        let f2 = LaurentPoly::parse(&f.to_string(), FieldSpec::Rationals).unwrap();
        prop_assert_eq!(&f2, &f);
        let g2 = LaurentPoly::parse(&g.to_string(), FieldSpec::PrimeField(7)).unwrap();
        prop_assert_eq!(&g2, &g);
    }

    // The divisor chain of the normal form is a chain no matter the input.
    #[test]
    fn smith_divisors_form_a_chain(rows in int_matrix()) {
        let snf = smith_normal_form(&IntMatrix::from_rows(&rows));
        for w in snf.divisors.windows(2) {
            if !w[0].is_zero() && !w[1].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
        prop_assert_eq!(snf.rank, snf.divisors.iter().filter(|d| !d.is_zero()).count());
    }
}
