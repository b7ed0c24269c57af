use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use primegraph::groups::ConcreteGroup;
use primegraph::numtheory::{divisor_count, divisors, factor, gcd};
use primegraph::{gk, spectrum_bruteforce, Field, GroupDescriptor, Spectrum};

fn groups() -> &'static [Arc<ConcreteGroup>] {
    static GROUPS: OnceLock<Vec<Arc<ConcreteGroup>>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        [
            "SL 2 7 projective",
            "GL 2 5",
            "SL 2 8",
            "GL 2 9 projective rtimes-field 2",
            "AGL 1 7",
        ]
        .iter()
        .map(|d| {
            Arc::new(
                d.parse::<GroupDescriptor>()
                    .unwrap()
                    .build(100_000)
                    .unwrap(),
            )
        })
        .collect()
    })
}

proptest! {
    #[test]
    fn factorization_round_trips(n in 1u64..1_000_000) {
        let f = factor(n).unwrap();
        prop_assert_eq!(f.value(), Some(n));
        let ds = divisors(n).unwrap();
        prop_assert_eq!(ds.len() as u64, divisor_count(n).unwrap());
        prop_assert!(ds.iter().all(|d| n % d == 0));
    }

    #[test]
    fn gcd_divides_both(a in 1u64..100_000, b in 1u64..100_000) {
        let g = gcd(a, b);
        prop_assert!(a % g == 0 && b % g == 0);
        prop_assert_eq!(gcd(a / g, b / g), 1);
    }

    #[test]
    fn field_frobenius_is_a_ring_map(pk in prop::sample::select(vec![(2u64, 3u32), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)]), a: u32, b: u32) {
        let f = Field::new(pk.0, pk.1).unwrap();
        let (a, b) = (a % f.order() as u32, b % f.order() as u32);
        prop_assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
        prop_assert_eq!(f.frobenius(f.mul(a, b), 1), f.mul(f.frobenius(a, 1), f.frobenius(b, 1)));
        prop_assert_eq!(f.frobenius(a, pk.1), a);
        prop_assert_eq!(f.pow(a, f.order()), a);
    }

    #[test]
    fn generated_subgroups_satisfy_lagrange(which in 0usize..5, raw in prop::collection::vec(any::<u32>(), 1..4)) {
        let g = &groups()[which];
        let gens: Vec<u32> = raw.iter().map(|x| x % g.order() as u32).collect();
        let h = g.closure(&gens);
        prop_assert_eq!(g.order() % h.order(), 0);
        for &x in &gens {
            prop_assert!(h.contains(x));
        }
        for &x in h.members() {
            for &y in h.members().iter().take(8) {
                prop_assert!(h.contains(g.mul(x, y)));
            }
        }
    }

    #[test]
    fn normal_closures_give_quotients(which in 0usize..5, x: u32) {
        let g = &groups()[which];
        let n = g.normal_closure(&[x % g.order() as u32]);
        prop_assert!(g.is_normal(&n));
        let q = ConcreteGroup::quotient(g.clone(), &n, "G/N").unwrap();
        prop_assert_eq!(q.order() * n.order(), g.order());
    }

    #[test]
    fn spectrum_is_divisor_closed(orders in prop::collection::vec(1u64..2000, 1..8)) {
        let s = Spectrum::from_orders(orders.iter().copied()).unwrap();
        for &o in &orders {
            prop_assert!(s.contains(o));
        }
        for &m in s.maximal() {
            prop_assert!(s.maximal().iter().all(|&k| k == m || m % k != 0));
        }
        let graph = gk(&s).unwrap();
        prop_assert_eq!(graph.vertices().to_vec(), s.primes());
    }
}

#[test]
fn conjugacy_classes_partition_the_group() {
    for g in groups() {
        let mut seen = vec![false; g.order()];
        let mut total = 0;
        for x in 0..g.order() as u32 {
            if seen[x as usize] {
                continue;
            }
            let class = g.conjugacy_class(x);
            let size = class.iter().filter(|&&b| b).count();
            assert_eq!(g.order() % size, 0, "{}", g.descriptor());
            for (i, b) in class.into_iter().enumerate() {
                if b {
                    assert!(!seen[i]);
                    seen[i] = true;
                }
            }
            total += size;
        }
        assert_eq!(total, g.order());
    }
}

#[test]
fn spectrum_primes_divide_the_order() {
    for g in groups() {
        let s = spectrum_bruteforce(g);
        let order_primes: Vec<u64> = factor(g.order() as u64).unwrap().primes().collect();
        assert_eq!(s.primes(), order_primes, "{}", g.descriptor());
    }
}
