use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use weightforge::actions::GaloisElement;
use weightforge::cyclo::{Cyclotomic, ResidueField};
use weightforge::numtheory::gcd;

fn cyclotomic(n: u64) -> impl Strategy<Value = Cyclotomic> {
    with_denominators(n, &[1, 2, 3, 5])
}

fn with_denominators(n: u64, dens: &[i64]) -> impl Strategy<Value = Cyclotomic> {
    let dens: Vec<i64> = dens.to_vec();
    prop::collection::vec((-6i64..=6, prop::sample::select(dens)), n as usize).prop_map(move |cs| {
        let coeffs: Vec<BigRational> = cs.iter().map(|&(a, d)| BigRational::new(BigInt::from(a), BigInt::from(d))).collect();
        Cyclotomic::from_power_coefficients(n, &coeffs)
    })
}

fn with_conductor() -> impl Strategy<Value = (u64, Cyclotomic)> {
    prop_oneof![Just(1u64), Just(3), Just(4), Just(5), Just(8), Just(9), Just(12), Just(15), Just(20)]
        .prop_flat_map(|n| (Just(n), cyclotomic(n)))
}

fn units(n: u64) -> Vec<i64> {
    (1..=n.max(1)).filter(|&k| gcd(k, n) == 1).map(|k| k as i64).collect()
}

proptest! {
    #[test]
    fn galois_composes((n, x) in with_conductor(), a in 0usize..8, b in 0usize..8) {
        let us = units(n);
        let (ka, kb) = (us[a % us.len()], us[b % us.len()]);
        let lhs = x.galois(ka).unwrap().galois(kb).unwrap();
        let rhs = x.galois(ka * kb % n.max(1) as i64).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn galois_is_a_ring_map((n, x) in with_conductor(), y in cyclotomic(20), a in 0usize..8) {
        let k = units(20 * n / gcd(20, n))[a % 8];
        let s = |z: &Cyclotomic| z.galois(k).unwrap();
        prop_assert_eq!(s(&(&x + &y)), &s(&x) + &s(&y));
        prop_assert_eq!(s(&(&x * &y)), &s(&x) * &s(&y));
    }

    #[test]
    fn conjugation_is_an_involution((_, x) in with_conductor()) {
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!(x.conj(), x.galois(-1).unwrap());
    }

    #[test]
    fn json_round_trip((_, x) in with_conductor()) {
        let s = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(Cyclotomic::from_json_str(&s).unwrap(), x);
    }

    #[test]
    fn reduction_is_a_ring_map(x in with_denominators(15, &[1, 7]), y in with_denominators(15, &[1, 7])) {
        let f = ResidueField::new(2, 15).unwrap();
        let r = |z: &Cyclotomic| f.reduce(z).unwrap();
        prop_assert_eq!(r(&(&x + &y)), f.add(&r(&x), &r(&y)));
        prop_assert_eq!(r(&(&x * &y)), f.mul(&r(&x), &r(&y)));
    }

    #[test]
    fn reduction_intertwines_frobenius(x in with_denominators(20, &[1, 7])) {
        let f = ResidueField::new(3, 20).unwrap();
        let sigma = GaloisElement::new(3, 1, 20).unwrap();
        prop_assert_eq!(f.reduce(&sigma.apply(&x).unwrap()).unwrap(), f.frobenius(&f.reduce(&x).unwrap()));
    }
}

#[test]
fn minimal_conductor() {
    // E(8) + E(8)^7 = sqrt 2 lives in Q(zeta_8), E(4)^2 = -1 is rational
    let r2 = &Cyclotomic::root_of_unity(8, 1) + &Cyclotomic::root_of_unity(8, 7);
    assert_eq!(r2.conductor(), 8);
    assert_eq!((&r2 * &r2), Cyclotomic::from_integer(2));
    let i = Cyclotomic::root_of_unity(4, 1);
    assert_eq!((&i * &i).conductor(), 1);
    assert_eq!(Cyclotomic::root_of_unity(6, 2), Cyclotomic::root_of_unity(3, 1));
}

#[test]
fn reduction_rejects_p_denominators() {
    let f = ResidueField::new(2, 3).unwrap();
    let half = Cyclotomic::from_rational(BigRational::new(1.into(), 2.into()));
    assert!(f.reduce(&half).is_err());
    // p-parts of the exponent map to 1: E(6) = -E(3)^2 reduces like E(3)^2
    let f6 = ResidueField::new(2, 6).unwrap();
    assert_eq!(f6.reduce(&Cyclotomic::root_of_unity(6, 1)).unwrap(), f6.reduce(&Cyclotomic::root_of_unity(3, 2)).unwrap());
}
