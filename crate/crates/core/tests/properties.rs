use exppoly::exp_poly::{from_phi_basis, phi_eval, to_phi_basis};
use exppoly::mellin::{dx_pow, leibniz_xd, xd_pow, xd_pow_poly};
use exppoly::poly::Polynomial;
use exppoly::series::FormalPowerSeries;
use exppoly::{BigInt, BigRational, RationalPolynomial, RationalSeries};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = BigRational> {
    (-50i64..=50, 1i64..=9).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn polynomial(max_len: usize) -> impl Strategy<Value = RationalPolynomial> {
    prop::collection::vec(rational(), 0..=max_len).prop_map(Polynomial::new)
}

fn series(order: usize) -> impl Strategy<Value = RationalSeries> {
    prop::collection::vec(rational(), order + 1).prop_map(FormalPowerSeries::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn phi_basis_round_trip(p in polynomial(12)) {
        prop_assert_eq!(from_phi_basis(&to_phi_basis(&p)), p);
    }

    #[test]
    fn phi_basis_is_linear(p in polynomial(8), q in polynomial(8), c in rational()) {
        let lhs = to_phi_basis(&(&p.scale(&c) + &q));
        let (a, b) = (to_phi_basis(&p), to_phi_basis(&q));
        let len = lhs.len().max(a.len()).max(b.len());
        let get = |v: &[BigRational], k: usize| v.get(k).cloned().unwrap_or_default();
        for k in 0..len {
            prop_assert_eq!(get(&lhs, k), get(&a, k) * &c + get(&b, k));
        }
    }

    #[test]
    fn xd_powers_compose(g in series(10), n in 0usize..6, m in 0usize..6) {
        prop_assert_eq!(xd_pow(&xd_pow(&g, n), m), xd_pow(&g, n + m));
    }

    #[test]
    fn xd_is_linear(f in series(8), g in series(8), c in rational(), n in 0usize..6) {
        let lhs = xd_pow(&(&f.scale(&c) + &g), n);
        prop_assert_eq!(lhs, &xd_pow(&f, n).scale(&c) + &xd_pow(&g, n));
    }

    #[test]
    fn dx_is_shifted_xd(g in series(10), n in 0usize..6) {
        // (Dx)^n g = x^-1 (xD)^n (x g)
        let lifted = xd_pow(&g.shift(1), n);
        prop_assert!(lifted.coeff(0) == BigRational::default());
        let dropped = FormalPowerSeries::new(lifted.coeffs()[1..].to_vec());
        prop_assert_eq!(dx_pow(&g, n), dropped);
    }

    #[test]
    fn leibniz(f in polynomial(7), g in polynomial(7), n in 0usize..7) {
        prop_assert!(leibniz_xd(&f, &g, n));
    }

    #[test]
    fn xd_on_polynomials_scales_monomials(p in polynomial(10), n in 0usize..5) {
        let expected = p.map_indexed(|k, c| c * BigRational::from_integer(BigInt::from(k).pow(n as u32)));
        prop_assert_eq!(xd_pow_poly(&p, n), expected);
    }

    #[test]
    fn phi_at_zero_vanishes(n in 1usize..40) {
        prop_assert_eq!(phi_eval(n, &BigRational::default()), BigRational::default());
    }
}
