//! Linked systems of (16,6,2) designs over the group Z_2^4, found by
//! exhaustive search and checked against the tabulated parameters.

use std::collections::BTreeMap;

use subcodes::designs::{
    common_prime_divisors, is_symmetric_design, linked_symmetric_record, verify_linked_system, LinkedParams,
    LinkedSystem, LINKED_SGDD_II_TABLE, LINKED_SGDD_TABLE,
};
use subcodes::{IntMatrix, Verdict};

/// 6-subsets of Z_2^4 whose XOR differences cover each nonzero element twice.
fn difference_sets() -> Vec<u16> {
    (0u32..1 << 16)
        .filter(|m| m.count_ones() == 6)
        .map(|m| m as u16)
        .filter(|&m| {
            let mut count = [0u8; 16];
            for x in (0..16).filter(|x| m >> x & 1 == 1) {
                for y in (0..16).filter(|y| m >> y & 1 == 1) {
                    count[x ^ y] += 1;
                }
            }
            count[1..].iter().all(|&c| c == 2)
        })
        .collect()
}

/// Group-ring product of two subsets: coefficient of each element.
fn product(a: u16, b: u16) -> [i64; 16] {
    let mut c = [0i64; 16];
    for x in (0..16).filter(|x| a >> x & 1 == 1) {
        for y in (0..16).filter(|y| b >> y & 1 == 1) {
            c[x ^ y] += 1;
        }
    }
    c
}

/// `(σ, τ)` with `a * b = σ c + τ (G - c)`, if any.
fn linking(a: u16, b: u16, c: u16) -> Option<(i64, i64)> {
    let p = product(a, b);
    let inside: Vec<i64> = (0..16).filter(|g| c >> g & 1 == 1).map(|g| p[g]).collect();
    let outside: Vec<i64> = (0..16).filter(|g| c >> g & 1 == 0).map(|g| p[g]).collect();
    let uniform = |v: &[i64]| v.iter().all(|&x| x == v[0]);
    (uniform(&inside) && uniform(&outside)).then(|| (inside[0], outside[0]))
}

fn incidence(set: u16) -> IntMatrix {
    IntMatrix::from_fn(16, 16, |x, y| (set >> (x ^ y) & 1) as i64)
}

/// All (σ, τ) realised by some f = 3 system with the three blocks drawn
/// from `sets`. Over an elementary abelian 2-group every block is
/// symmetric, so `A_{i,j} = A_{j,i}` and the three triple products are
/// the pairwise products of the blocks.
fn linked_triples(sets: &[u16]) -> BTreeMap<(i64, i64), (u16, u16, u16)> {
    let mut found = BTreeMap::new();
    for (i, &a) in sets.iter().enumerate() {
        for &b in &sets[i + 1..] {
            let p = product(a, b);
            // the third block is a level set of the product
            for level in p {
                let c = (0..16).filter(|&g| p[g] == level).fold(0u16, |m, g| m | 1 << g);
                if c.count_ones() != 6 || !sets.contains(&c) {
                    continue;
                }
                let Some(st) = linking(a, b, c) else { continue };
                if linking(a, c, b) == Some(st) && linking(b, c, a) == Some(st) {
                    found.entry(st).or_insert((a, b, c));
                }
            }
        }
    }
    found
}

#[test]
fn there_are_448_difference_sets() {
    let sets = difference_sets();
    assert_eq!(sets.len(), 448);
    for &s in sets.iter().take(5) {
        assert!(is_symmetric_design(&incidence(s), 16, 6, 2).unwrap());
    }
}

#[test]
fn linked_parameters_for_n_2_are_swapped() {
    let found = linked_triples(&difference_sets());
    let rec = linked_symmetric_record(2);
    assert_eq!((rec.v, rec.k, rec.lambdas.0), (16, 6, 2));
    assert_eq!((rec.sigma, rec.tau), (3, 1));
    // only the reversed pair occurs
    assert!(!found.contains_key(&(rec.sigma, rec.tau)));
    assert_eq!(found.keys().copied().collect::<Vec<_>>(), vec![(rec.tau, rec.sigma)]);

    let (a, b, c) = found[&(1, 3)];
    let mut matrices = BTreeMap::new();
    for ((i, j), s) in [((1, 2), a), ((2, 3), b), ((1, 3), c)] {
        matrices.insert((i, j), incidence(s));
        matrices.insert((j, i), incidence(s));
    }
    let mut ls = LinkedSystem {
        f: 3,
        matrices,
        params: LinkedParams::Symmetric { v: 16, k: 6, lambda: 2 },
        sigma: 1,
        tau: 3,
        rho: None,
    };
    assert_eq!(verify_linked_system(&ls).unwrap(), Verdict::Pass);
    (ls.sigma, ls.tau) = (3, 1);
    assert!(!verify_linked_system(&ls).unwrap().is_pass());
}

#[test]
fn row_sum_identity_separates_the_two_orders() {
    for n in [2, 4, 6, 8, 10, 12] {
        let rec = linked_symmetric_record(n);
        assert!(!rec.row_sums_consistent(), "n={n}");
        let swapped = subcodes::designs::LinkedRecord {
            sigma: rec.tau,
            tau: rec.sigma,
            ..rec
        };
        assert!(swapped.row_sums_consistent(), "n={n}");
    }
    for rec in LINKED_SGDD_TABLE.iter().chain(LINKED_SGDD_II_TABLE) {
        assert!(rec.row_sums_consistent(), "{rec:?}");
    }
}

#[test]
fn tabulated_primes_divide_the_listed_values() {
    for rec in LINKED_SGDD_TABLE.iter().chain(LINKED_SGDD_II_TABLE) {
        let common = common_prime_divisors(&rec.divisible_values());
        for p in rec.primes {
            assert!(common.contains(p), "{rec:?}");
        }
    }
    // for the symmetric family, 2 divides every value only when 4 | n
    for n in [2i64, 4, 6, 8, 10, 12] {
        let divides = common_prime_divisors(&linked_symmetric_record(n).divisible_values()).contains(&2);
        assert_eq!(divides, n % 4 == 0, "n={n}");
    }
}
