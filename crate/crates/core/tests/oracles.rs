//! Cross-checks of closed forms against brute-force enumeration that does
//! not share code paths with the implementation.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use prequant_ech::*;

/// Every orbit set of total multiplicity exactly `m` over `n_hyp`
/// hyperbolic letters.
fn all_orbit_sets(n_hyp: usize, m: u64) -> Vec<OrbitSet> {
    fn rec(slots: usize, left: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if slots == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=left {
            cur.push(x);
            rec(slots - 1, left - x, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    rec(n_hyp + 2, m, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|v| OrbitSet::new(v[0], v[1..=n_hyp].to_vec(), v[n_hyp + 1]))
        .collect()
}

/// Generators of grading `target`, found by listing every orbit set with
/// `M <= max_m` and grading it through the relative index to the empty set.
fn brute_generators(bundle: &PrequantizationBundle, target: i64, max_m: u64) -> BTreeSet<Key> {
    let empty = OrbitSet::empty(bundle.genus());
    let mut out = BTreeSet::new();
    for m in 0..=max_m {
        if m % bundle.abs_e() != 0 {
            continue;
        }
        for set in all_orbit_sets(bundle.hyperbolic_count(), m) {
            if !is_ech_generator(&set) {
                continue;
            }
            if relative_index(bundle, &set, &empty).unwrap() == target {
                out.insert(key(&set));
            }
        }
    }
    out
}

type Key = (u64, Vec<u64>, u64);

fn key(set: &OrbitSet) -> Key {
    (set.m_plus, set.m_hyp.clone(), set.m_minus)
}

#[test]
fn enumerate_by_grading_matches_brute_force() {
    for genus in 0..=2u32 {
        for abs_e in 1..=4u64 {
            let bundle = PrequantizationBundle::new(genus, -(abs_e as i64)).unwrap();
            for target in (0..=24).step_by(2) {
                let fast: BTreeSet<_> = enumerate_by_grading(&bundle, target)
                    .unwrap()
                    .into_iter()
                    .map(|g| key(&g.orbit_set))
                    .collect();
                // grading >= d^2|e| + d chi - d|e|, so grading <= 24 forces
                // M <= 12 in the worst case g = 2, |e| = 1.
                let slow = brute_generators(&bundle, target, 18);
                assert_eq!(fast, slow, "g={genus} |e|={abs_e} grading={target}");
            }
        }
    }
}

#[test]
fn enumerate_by_action_matches_brute_force() {
    for genus in 0..=2u32 {
        for abs_e in 1..=3u64 {
            let bundle = PrequantizationBundle::new(genus, -(abs_e as i64)).unwrap();
            let profile = MorseProfile::standard(genus);
            for lead in [0u64, 1, 2, 5, 8, 12] {
                let limit = ExactAction::new(lead, BigRational::new(BigInt::from(1), BigInt::from(3)));
                let fast: Vec<_> = enumerate_by_action(&bundle, &profile, &limit)
                    .unwrap()
                    .into_iter()
                    .map(|g| key(&g.orbit_set))
                    .collect();
                let mut slow = BTreeSet::new();
                for m in 0..=(lead / 2 + 1) {
                    for set in all_orbit_sets(bundle.hyperbolic_count(), m) {
                        if is_ech_generator(&set)
                            && gamma_class(&bundle, &set).unwrap().0 == 0
                            && action_of(&set, &profile).unwrap() < limit
                        {
                            slow.insert(key(&set));
                        }
                    }
                }
                let fast_set: BTreeSet<_> = fast.iter().cloned().collect();
                assert_eq!(fast.len(), fast_set.len());
                assert_eq!(fast_set, slow, "g={genus} |e|={abs_e} lead={lead}");
            }
        }
    }
}

#[test]
fn sphere_capacity_matches_pair_and_u_orbit() {
    for abs_e in 1..=6u64 {
        for k in 0..=300u64 {
            let sol = sphere_pair_for_k(abs_e, k).unwrap();
            let c = capacity_sphere(abs_e, k).unwrap();
            assert_eq!(c, 2 * sol.d * abs_e);
            assert_eq!(capacity_sphere_via_u(abs_e, k).unwrap(), c);
        }
    }
}

/// Feasible `d` for the torus system by exhaustive search over
/// `(m+, m1, m2, m-)`.
fn torus_feasible_brute(abs_e: u64, k: u64, d: u64) -> bool {
    let big_m = d * abs_e;
    for m1 in 0..=1 {
        for m2 in 0..=1 {
            if m1 + m2 > big_m {
                continue;
            }
            for m_plus in 0..=(big_m - m1 - m2) {
                let m_minus = big_m - m1 - m2 - m_plus;
                let lhs = (d * d * abs_e + m_plus) as i64 - m_minus as i64;
                if lhs == 2 * k as i64 {
                    return true;
                }
            }
        }
    }
    false
}

#[test]
fn torus_bounds_match_brute_force_extremes() {
    for abs_e in 1..=4u64 {
        for k in 1..=200u64 {
            let feasible: Vec<u64> = (0..=30).filter(|&d| torus_feasible_brute(abs_e, k, d)).collect();
            let b = torus_d_bounds(abs_e, k).unwrap();
            assert_eq!(b.d_minus, *feasible.first().unwrap(), "|e|={abs_e} k={k}");
            assert_eq!(b.d_plus, *feasible.last().unwrap(), "|e|={abs_e} k={k}");
        }
    }
}

#[test]
fn closed_form_matches_float_away_from_squares() {
    // Float reference is fine here: 8k+1 is never a perfect square for these
    // k, so sqrt(2k + 1/4) + 1/2 stays well away from integers.
    for k in 1..=5000u64 {
        if let Ok(c) = capacity_torus_closed_form(k) {
            let f = ((2.0 * k as f64 + 0.25).sqrt() + 0.5).floor() as u64;
            assert_eq!(c, 2 * f, "k={k}");
        }
    }
}

#[test]
fn ellipsoid_sequence_matches_sorted_lattice() {
    for (a, b) in [(1i64, 1i64), (1, 2), (2, 3), (3, 5), (1, 7)] {
        let seq = ellipsoid_capacities(
            &BigRational::from_integer(a.into()),
            &BigRational::from_integer(b.into()),
            60,
        )
        .unwrap();
        let mut all = Vec::new();
        for m in 0..200 {
            for n in 0..200 {
                all.push(m * a + n * b);
            }
        }
        all.sort();
        let expect: Vec<BigRational> = all[..61].iter().map(|&v| BigRational::from_integer(v.into())).collect();
        assert_eq!(seq.values(), expect.as_slice());
    }
}
