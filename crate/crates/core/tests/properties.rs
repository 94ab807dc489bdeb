use std::sync::Arc;

use proptest::prelude::*;

use ranktower::arith::{self, Integer};
use ranktower::bounds::{ambiguous_lower, ell_rank, FiniteAbelianGroup};
use ranktower::cyclotomic::{self, CycloElement, CycloModulus};
use ranktower::finite_poly::{self, FqPoly};
use ranktower::intpoly::IntPoly;
use ranktower::tower::compute_t;

fn big_integer(max_digits: usize) -> impl Strategy<Value = Integer> {
    (any::<bool>(), proptest::collection::vec(0u8..10, 1..=max_digits)).prop_map(|(neg, digits)| {
        let s: String = digits.iter().map(|d| char::from(b'0' + d)).collect();
        let v: Integer = s.parse().unwrap();
        if neg {
            -v
        } else {
            v
        }
    })
}

fn trial_division_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn modulus(m: u64) -> Arc<CycloModulus> {
    Arc::new(cyclotomic::cyclotomic_polynomial(m).unwrap())
}

fn cyclo_element(m: u64) -> impl Strategy<Value = CycloElement> {
    let md = modulus(m);
    proptest::collection::vec(-50i64..50, 0..(2 * m as usize)).prop_map(move |c| {
        CycloElement::from_coeffs(&md, c.into_iter().map(Integer::from).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn integer_ring_laws(a in big_integer(1000), b in big_integer(1000), c in big_integer(300)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
    }

    #[test]
    fn integer_text_and_serde_round_trip(a in big_integer(400)) {
        let s = a.to_string();
        prop_assert_eq!(s.parse::<Integer>().unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(json.clone(), format!("\"{s}\""));
        prop_assert_eq!(serde_json::from_str::<Integer>(&json).unwrap(), a);
    }

    #[test]
    fn product_tree_matches_fold(xs in proptest::collection::vec(big_integer(40), 1..60)) {
        let folded = xs.iter().fold(Integer::one(), |acc, x| acc * x);
        prop_assert_eq!(arith::mul_many(&xs).unwrap(), folded);
    }

    #[test]
    fn primality_matches_trial_division(n in 0u64..1_000_000) {
        prop_assert_eq!(arith::is_prime_u64(n), trial_division_prime(n));
        prop_assert_eq!(arith::is_prime(&Integer::from(n)), trial_division_prime(n));
    }

    #[test]
    fn multiplicative_order(m in 2u64..10_000, a in 1u64..10_000) {
        let a = a % m;
        prop_assume!(arith::gcd_u64(a, m) == 1);
        let k = arith::mult_order_u64(a, m).unwrap();
        let phi = arith::euler_phi(m);
        prop_assert_eq!(phi % k, 0);
        let pow = |e: u64| (0..e).fold(1u64, |acc, _| acc * a % m);
        prop_assert_eq!(pow(k), 1 % m);
        for d in arith::divisors(k) {
            if d < k {
                prop_assert_ne!(pow(d), 1);
            }
        }
    }

    #[test]
    fn not_coprime_is_rejected(m in 2u64..1000, k in 1u64..50) {
        let a = m * k;
        prop_assert!(arith::mult_order_u64(a, m).is_err());
    }

    #[test]
    fn cyclotomic_arithmetic(
        (a, b, c) in (1u64..31).prop_flat_map(|m| (cyclo_element(m), cyclo_element(m), cyclo_element(m)))
    ) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        let parsed = CycloElement::parse(a.modulus(), &a.to_string()).unwrap();
        prop_assert_eq!(parsed, a);
    }

    #[test]
    fn zeta_has_order_m(m in 1u64..60) {
        let md = modulus(m);
        prop_assert_eq!(CycloElement::zeta_pow(&md, m), CycloElement::one(&md));
        for k in 1..m {
            prop_assert_ne!(CycloElement::zeta_pow(&md, k), CycloElement::one(&md));
        }
    }

    #[test]
    fn intpoly_text_round_trip(coeffs in proptest::collection::vec(-20i64..20, 0..8)) {
        let p = IntPoly::from_i64s(&coeffs);
        prop_assert_eq!(p.to_string().parse::<IntPoly>().unwrap(), p);
    }

    #[test]
    fn splitting_agrees_with_factorization(m in 1u64..40, q_index in 0usize..120) {
        let primes: Vec<u64> = (2u64..700).filter(|&q| arith::is_prime_u64(q)).collect();
        let q = primes[q_index % primes.len()];
        prop_assume!(m % q != 0);
        let split = cyclotomic::splitting_data(q, m).unwrap();
        let field = finite_poly::build_extension_field(q, 1).unwrap();
        let phi = cyclotomic::cyclotomic_polynomial(m).unwrap();
        let profile = finite_poly::distinct_degree_profile(&FqPoly::from_int_poly(&field, phi.polynomial())).unwrap();
        prop_assert_eq!(profile, vec![(split.f as usize, split.g as usize)]);
        prop_assert_eq!(split.f * split.g, arith::euler_phi(m));
    }

    #[test]
    fn profile_accounts_for_degree(q_index in 0usize..6, coeffs in proptest::collection::vec(0u64..1000, 1..9)) {
        let q = [2u64, 3, 5, 7, 11, 13][q_index];
        let field = finite_poly::build_extension_field(q, 1).unwrap();
        let mut c: Vec<u64> = coeffs.iter().map(|x| x % q).collect();
        c.push(1);
        let poly = FqPoly::from_prime_coeffs(&field, &c);
        match finite_poly::distinct_degree_profile(&poly) {
            Ok(profile) => {
                let total: usize = profile.iter().map(|(d, k)| d * k).sum();
                prop_assert_eq!(Some(total), poly.degree());
            }
            Err(e) => prop_assert_eq!(e, ranktower::error::Error::NotSquarefree),
        }
    }

    #[test]
    fn ell_rank_counts_torsion(ell_index in 0usize..4, exps in proptest::collection::vec((0u32..3, 1u64..4), 0..5)) {
        let ell = [2u64, 3, 5, 7][ell_index];
        // Build a valid chain d_1 | d_2 | … by accumulating multipliers.
        let mut factors = Vec::new();
        let mut running = 1u64;
        for (e, extra) in exps {
            running *= ell.pow(e) * extra;
            if running >= 2 {
                factors.push(running);
            }
        }
        let group = FiniteAbelianGroup::from_u64s(&factors).unwrap();
        // |G[ℓ]| = ∏ gcd(d_i, ℓ) = ℓ^rank
        let torsion: u64 = factors.iter().map(|&d| arith::gcd_u64(d, ell)).product();
        prop_assert_eq!(ell.pow(ell_rank(&group, ell) as u32), torsion);
    }

    #[test]
    fn ambiguous_identity(n in 1u64..30, m in 2u64..5, d in 1u64..5, ell_i in 0usize..6, p_i in 0usize..6, layer in 0u32..8) {
        let ell = [3u64, 5, 7, 11, 13, 97][ell_i];
        let p = [2u64, 3, 5, 7, 11, 89][p_i];
        prop_assume!(ell != p);
        let pn = Integer::from(p).pow(layer);
        let t = compute_t(n, m, d, ell);
        let degree = Integer::from(m * d * ell * (ell - 1)) * &pn;
        prop_assert_eq!(ambiguous_lower(&(&t * &pn), &degree), Integer::from(n) * &pn);
    }
}
