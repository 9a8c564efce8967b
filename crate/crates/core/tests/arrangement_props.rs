//! Arrangement-level invariants on randomized inputs: agreement of the three
//! characteristic polynomial routes, the deletion-restriction recursion,
//! Mobius sign alternation, Ziegler weights, the cone identity, and chamber
//! counts against the sign-vector oracle.

mod common;

use arrfree_core::arrangement::Arrangement;
use arrfree_core::charpoly::{
    chamber_counts, charpoly_delres, charpoly_finitefield, charpoly_mobius, count_complement_mod,
    DEFAULT_POINT_BUDGET,
};
use arrfree_core::lattice::intersection_lattice;
use arrfree_core::scalar::zint;
use arrfree_core::unipoly::UniPoly;
use common::{random_arrangement, regions_by_sign_vectors};
use num::{BigInt, Signed};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn region_oracle_matches_hand_counts() {
    // (arrangement, chambers, relatively bounded)
    let cases: Vec<(Arrangement, u64, u64)> = vec![
        (Arrangement::empty(2), 1, 1),
        (Arrangement::from_ints(1, &[(&[1], -1), (&[1], 0), (&[1], 1)]).unwrap(), 4, 2),
        // coordinate axes: four quadrants, none bounded
        (Arrangement::from_ints(2, &[(&[1, 0], 0), (&[0, 1], 0)]).unwrap(), 4, 0),
        // triangle: 7 regions, one bounded
        (
            Arrangement::from_ints(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], 1)]).unwrap(),
            7,
            1,
        ),
        // a strip is relatively bounded but not bounded
        (Arrangement::from_ints(2, &[(&[1, 0], 0), (&[1, 0], 1)]).unwrap(), 3, 1),
        // three concurrent lines: 6 sectors
        (
            Arrangement::from_ints(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[1, -1], 0)]).unwrap(),
            6,
            0,
        ),
    ];
    for (arr, chambers, bounded) in cases {
        let r = regions_by_sign_vectors(&arr);
        assert_eq!(r.chambers, chambers);
        assert_eq!(r.relatively_bounded, bounded);
    }
}

#[test]
fn chamber_counts_match_region_oracle() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let mut checked = 0;
    while checked < 60 {
        let ell = rng.gen_range(1..=2usize);
        let n = rng.gen_range(0..=8usize.min(1 << (ell + 1)));
        let central = rng.gen_bool(0.3);
        let arr = random_arrangement(&mut rng, ell, n, central);
        let counts = chamber_counts(&arr).unwrap();
        let oracle = regions_by_sign_vectors(&arr);
        assert_eq!(counts.chambers, BigInt::from(oracle.chambers), "{arr:?}");
        assert_eq!(
            counts.bounded,
            BigInt::from(oracle.relatively_bounded),
            "{arr:?}"
        );
        checked += 1;
    }
}

#[test]
fn charpoly_methods_agree_and_match_point_counts() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    for _ in 0..25 {
        let ell = rng.gen_range(1..=3usize);
        let n = rng.gen_range(1..=6usize);
        let central = rng.gen_bool(0.5);
        let arr = random_arrangement(&mut rng, ell, n, central);
        let chi = charpoly_mobius(&arr).unwrap();
        assert_eq!(chi, charpoly_delres(&arr).unwrap(), "{arr:?}");
        let ff = charpoly_finitefield(&arr, DEFAULT_POINT_BUDGET).unwrap();
        assert_eq!(chi, ff.poly, "{arr:?}");
        for &p in ff.primes.iter().take(3) {
            let count = count_complement_mod(&arr, p, DEFAULT_POINT_BUDGET).unwrap();
            assert_eq!(
                chi.eval(&zint(p as i64)),
                zint(count as i64),
                "{arr:?} at q={p}"
            );
        }
    }
}

#[test]
fn deletion_restriction_recursion() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0003);
    for _ in 0..30 {
        let ell = rng.gen_range(1..=3usize);
        let n = rng.gen_range(1..=6usize);
        let central = rng.gen_bool(0.5);
        let arr = random_arrangement(&mut rng, ell, n, central);
        let chi = charpoly_mobius(&arr).unwrap();
        for i in 0..arr.num_hyperplanes() {
            let deleted = arr.deletion(i).unwrap();
            let (restricted, _) = arr.restrict(i).unwrap();
            let expected = &charpoly_mobius(&deleted).unwrap() - &charpoly_mobius(&restricted).unwrap();
            assert_eq!(chi, expected, "{arr:?} at pivot {i}");
        }
    }
}

#[test]
fn mobius_alternates_in_sign() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0004);
    for _ in 0..30 {
        let ell = rng.gen_range(1..=3usize);
        let n = rng.gen_range(0..=6usize);
        let central = rng.gen_bool(0.5);
        let arr = random_arrangement(&mut rng, ell, n, central);
        let lat = intersection_lattice(&arr).unwrap();
        for (i, flat) in lat.flats().iter().enumerate() {
            let mu = lat.mobius(i);
            let signed = if flat.rank % 2 == 0 { mu.clone() } else { -mu };
            assert!(signed.is_positive(), "{arr:?} flat {i} has mu {mu}");
        }
    }
}

#[test]
fn ziegler_weight_is_hyperplanes_minus_one() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    for _ in 0..30 {
        let ell = rng.gen_range(2..=3usize);
        let n = rng.gen_range(1..=6usize);
        let arr = random_arrangement(&mut rng, ell, n, true);
        for i in 0..arr.num_hyperplanes() {
            let (_, mult, _) = arr.ziegler(i).unwrap();
            assert_eq!(mult.weight() as usize, arr.num_hyperplanes() - 1, "{arr:?} pivot {i}");
        }
    }
}

#[test]
fn cone_multiplies_charpoly_by_t_minus_one() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let t_minus_1 = UniPoly::from_int_coeffs(&[-1, 1]);
    for _ in 0..30 {
        let ell = rng.gen_range(1..=3usize);
        let n = rng.gen_range(0..=6usize);
        let central = rng.gen_bool(0.3);
        let arr = random_arrangement(&mut rng, ell, n, central);
        let coned = arr.cone();
        assert_eq!(coned.dimension(), ell + 1);
        assert_eq!(coned.num_hyperplanes(), arr.num_hyperplanes() + 1);
        assert!(coned.is_central());
        let lhs = charpoly_mobius(&coned).unwrap();
        let rhs = &t_minus_1 * &charpoly_mobius(&arr).unwrap();
        assert_eq!(lhs, rhs, "{arr:?}");
    }
}
