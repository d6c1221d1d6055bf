use oddkh::braid::BraidWord;
use oddkh::complex::{jones_polynomial, Coefficients, GradedComplex, Theory};
use oddkh::homology::homology;
use proptest::prelude::*;

fn braids(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_strands).prop_flat_map(move |b| {
        let letter = (1..b as i32, any::<bool>()).prop_map(|(k, neg)| if neg { -k } else { k });
        prop::collection::vec(letter, 0..=max_len).prop_map(move |l| BraidWord::new(l, Some(b)).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euler_characteristic_is_the_jones_polynomial(b in braids(4, 7)) {
        let jones = jones_polynomial(&b);
        for theory in [Theory::Odd, Theory::Even] {
            let c = GradedComplex::from_braid(&b, theory, Coefficients::Rationals);
            prop_assert_eq!(&c.euler_characteristic(), &jones);
            prop_assert_eq!(&homology(&c).euler_characteristic(), &jones);
        }
        prop_assert_eq!(jones_polynomial(&b.mirror()), jones.invert_variable());
    }

    #[test]
    fn field_dimensions_bound_rational_ranks(b in braids(4, 7)) {
        let q = homology(&GradedComplex::from_braid(&b, Theory::Odd, Coefficients::Rationals));
        let z = homology(&GradedComplex::from_braid(&b, Theory::Odd, Coefficients::Integers));
        for p in [2, 3] {
            let fp = homology(&GradedComplex::from_braid(&b, Theory::Odd, Coefficients::PrimeField(p)));
            for (bg, g) in q.iter() {
                prop_assert!(fp.get(bg).free >= g.free);
            }
        }
        for (bg, g) in z.iter() {
            prop_assert_eq!(g.free, q.get(bg).free);
        }
    }

    #[test]
    fn odd_and_even_agree_mod_two(b in braids(4, 7)) {
        let odd = homology(&GradedComplex::from_braid(&b, Theory::Odd, Coefficients::PrimeField(2)));
        let even = homology(&GradedComplex::from_braid(&b, Theory::Even, Coefficients::PrimeField(2)));
        prop_assert_eq!(odd.iter().map(|(k, g)| (k, g.free)).collect::<Vec<_>>(),
                        even.iter().map(|(k, g)| (k, g.free)).collect::<Vec<_>>());
    }

    #[test]
    fn torsion_is_a_divisibility_chain(b in braids(4, 8)) {
        let h = homology(&GradedComplex::from_braid(&b, Theory::Even, Coefficients::Integers));
        for (_, g) in h.iter() {
            for w in g.torsion.windows(2) {
                prop_assert!((&w[1] % &w[0]) == 0u32.into());
            }
        }
    }
}
