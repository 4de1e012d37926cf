use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use ramanujan_tau::arith::{factorize, Budget};
use ramanujan_tau::lucas::tau_decompose;
use ramanujan_tau::orbit::{iterate_orbit, Termination};
use ramanujan_tau::tau::{
    build_tau_table, build_tau_table_with, tau, tau_ext, tau_prime_power, TauTable,
};
use ramanujan_tau::Parallelism;

fn table() -> &'static TauTable {
    static TABLE: OnceLock<TauTable> = OnceLock::new();
    TABLE.get_or_init(|| build_tau_table(20_000).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn multiplicative_on_coprime_pairs(m in 1u64..5000, n in 1u64..5000) {
        prop_assume!(m.gcd(&n) == 1);
        let t = table();
        let b = Budget::DEFAULT;
        let lhs = tau(&BigInt::from(m * n), t, b);
        prop_assume!(lhs.is_ok());
        prop_assert_eq!(lhs.unwrap(), tau(&BigInt::from(m), t, b).unwrap() * tau(&BigInt::from(n), t, b).unwrap());
    }

    #[test]
    fn sign_convention(n in 1u64..20_000) {
        let t = table();
        let b = Budget::DEFAULT;
        prop_assert_eq!(tau_ext(&-BigInt::from(n), t, b).unwrap(), t.get(n).unwrap().clone());
    }

    #[test]
    fn factorization_reassembles(a in 2u64..u32::MAX as u64, c in 2u64..u32::MAX as u64) {
        let n = BigInt::from(a) * BigInt::from(c);
        let f = factorize(&n, Budget::DEFAULT).unwrap();
        prop_assert!(f.complete);
        prop_assert_eq!(f.value(), n);
    }

    #[test]
    fn lucas_decomposition(idx in 0usize..40, a in 0u32..12) {
        let t = table();
        let p = ramanujan_tau::arith::primes_up_to(200)[idx];
        let (shift, u) = tau_decompose(p, a, t).unwrap();
        prop_assert_eq!(
            BigInt::from(p).pow(shift as u32) * u,
            tau_prime_power(p, a, t.get(p).unwrap())
        );
    }

    #[test]
    fn orbits_are_consistent(n in 1u64..300) {
        let t = table();
        let b = Budget::DEFAULT;
        let rec = iterate_orbit(n, 2, t, b).unwrap();
        prop_assert_ne!(rec.terminated, Termination::ReachedZero);
        for w in rec.iterates.windows(2) {
            prop_assert_eq!(&tau_ext(&w[0], t, b).unwrap(), &w[1]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn parallel_and_sequential_tables_agree(n in 1usize..4000) {
        prop_assert_eq!(
            build_tau_table_with(n, Parallelism::Sequential).unwrap(),
            build_tau_table_with(n, Parallelism::Parallel).unwrap()
        );
    }
}
