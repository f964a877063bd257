use std::collections::BTreeSet;

use laminations::circle::{angles_with_orbit_bounds, sorted_unique};
use laminations::critportrait::{partition, quadratic_portrait, CriticalPortrait};
use laminations::portrait::containing_sector;
use laminations::{
    core_entropy, lamination, orbit, precedes, sector_image, sectors, sigma, unlinked, Angle, Arc,
    LandingModel, Portrait,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn angle() -> impl Strategy<Value = Angle> {
    (1i64..=96).prop_flat_map(|q| (0..q).prop_map(move |p| Angle::frac(p, q)))
}

fn angle_set(min: usize, max: usize) -> impl Strategy<Value = Vec<Angle>> {
    prop::collection::btree_set(angle(), min..=max).prop_map(|s| s.into_iter().collect())
}

fn shift() -> impl Strategy<Value = BigRational> {
    (1i64..=60).prop_flat_map(|q| (0..q).prop_map(move |p| BigRational::new(p.into(), q.into())))
}

fn periodic_upto_6() -> Vec<Angle> {
    angles_with_orbit_bounds(2, 6, 0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn angle_text_round_trip(t in angle()) {
        let back: Angle = t.to_string().parse().unwrap();
        prop_assert_eq!(&back, &t);
        let json = serde_json::to_string(&t).unwrap();
        prop_assert_eq!(serde_json::from_str::<Angle>(&json).unwrap(), t);
    }

    #[test]
    fn orbits_close_up(t in angle(), d in 2u32..=4) {
        let o = orbit(&t, d).unwrap();
        let mut x = o.points.last().unwrap().clone();
        x = sigma(&x, d).unwrap();
        prop_assert_eq!(&x, &o.points[o.preperiod]);
        prop_assert_eq!(o.points.len(), o.preperiod + o.period);
        let distinct: BTreeSet<&Angle> = o.points.iter().collect();
        prop_assert_eq!(distinct.len(), o.points.len());
    }

    #[test]
    fn sector_sizes_sum_to_one(angles in angle_set(2, 6)) {
        let t = Portrait::new(angles).unwrap();
        let total: BigRational = sectors(&t).iter().map(|s| s.size.clone()).sum();
        prop_assert_eq!(total, BigRational::one());
    }

    #[test]
    fn sector_map_identity(angles in angle_set(2, 5), d in 2u32..=4, pick in 0usize..5) {
        let t = Portrait::new(angles).unwrap();
        let all = sectors(&t);
        let s = &all[pick % all.len()];
        if let Ok(img) = sector_image(s, &t, d) {
            let dd = BigRational::from_integer(BigInt::from(d));
            let excess = &dd * &s.size - &img.image.size;
            prop_assert!(excess.is_integer() && excess >= BigRational::zero());
            prop_assert_eq!(BigRational::from_integer(img.critical_count.into()), excess.clone());
            if s.size < BigRational::new(1.into(), d.into()) {
                prop_assert!(excess.is_zero());
                prop_assert_eq!(img.image.size, &dd * &s.size);
            }
        }
    }

    #[test]
    fn nested_sectors(a in angle_set(2, 4), b in angle_set(2, 4)) {
        prop_assume!(a.iter().all(|x| !b.contains(x)));
        prop_assume!(unlinked(&a, &b).unwrap());
        let t = Portrait::new(a.clone()).unwrap();
        let u = Portrait::new(b.clone()).unwrap();
        let outer = containing_sector(&t, &b).unwrap();
        let facing = containing_sector(&u, &a).unwrap();
        for s in sectors(&u) {
            if s == facing {
                continue;
            }
            prop_assert!(outer.arc().contains_closure_of(&s.arc()));
            prop_assert!(s.size < outer.size);
        }
    }

    #[test]
    fn unlinked_is_symmetric_and_rotation_invariant(
        a in angle_set(2, 4),
        b in angle_set(2, 4),
        r in shift(),
    ) {
        prop_assume!(a.iter().all(|x| !b.contains(x)));
        let ab = unlinked(&a, &b).unwrap();
        prop_assert_eq!(ab, unlinked(&b, &a).unwrap());
        let rot = |s: &[Angle]| sorted_unique(s.iter().map(|x| x.rotate(&r)));
        prop_assert_eq!(ab, unlinked(&rot(&a), &rot(&b)).unwrap());
    }

    #[test]
    fn arc_lengths_add(x in angle(), y in angle(), z in angle()) {
        prop_assume!(x != y);
        let arc = Arc::open(x, y);
        if let Some((left, right)) = arc.split_at(&z) {
            prop_assert_eq!(left.length() + right.length(), arc.length());
            prop_assert!(arc.contains(&z));
        }
    }

    #[test]
    fn quadratic_pieces_are_halves(t in angle()) {
        let p = partition(&quadratic_portrait(&t)).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        for piece in p.pieces() {
            prop_assert_eq!(&piece.length, &half);
        }
    }

    #[test]
    fn partition_commutes_with_rotation(x in angle(), k in 1i64..3, y in angle(), r in shift()) {
        // two chords of a cubic portrait
        let third = BigRational::new(1.into(), 3.into());
        let chord = |t: &Angle, j: i64| {
            let mut c = vec![t.clone(), t.rotate(&(&third * BigRational::from_integer(j.into())))];
            c.sort();
            c
        };
        let Ok(cp) = CriticalPortrait::new(vec![chord(&x, k), chord(&y, 1)], 3) else {
            return Ok(());
        };
        let p = partition(&cp).unwrap();
        let q = partition(&cp.rotate(&r).unwrap()).unwrap();
        let shape = |arcs: &[Arc]| {
            let mut v: Vec<String> = arcs.iter().map(ToString::to_string).collect();
            v.sort();
            v
        };
        let mut moved: Vec<Vec<String>> = p
            .pieces()
            .iter()
            .map(|piece| shape(&piece.arcs.iter().map(|a| a.rotate(&r)).collect::<Vec<_>>()))
            .collect();
        let mut direct: Vec<Vec<String>> = q.pieces().iter().map(|piece| shape(&piece.arcs)).collect();
        moved.sort();
        direct.sort();
        prop_assert_eq!(moved, direct);
        for piece in q.pieces() {
            prop_assert_eq!(&piece.length, &third);
        }
    }

    #[test]
    fn critical_portrait_json_round_trip(t in angle()) {
        let cp = quadratic_portrait(&t);
        prop_assert_eq!(CriticalPortrait::from_json(&cp.to_json().unwrap()).unwrap(), cp);
    }

    #[test]
    fn landing_is_an_equivalence(c in 0usize..105, x in angle(), y in angle()) {
        let theta = &periodic_upto_6()[c];
        let model = LandingModel::new(theta);
        prop_assert!(model.equivalent(&x, &x));
        prop_assert_eq!(model.equivalent(&x, &y), model.equivalent(&y, &x));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn entropy_is_symmetric(c in 0usize..105) {
        let theta = &periodic_upto_6()[c];
        let mirror = Angle::from_ratio(BigRational::one() - theta.value());
        let h = core_entropy(theta, 1e-9).unwrap();
        let g = core_entropy(&mirror, 1e-9).unwrap();
        prop_assert!((h - g).abs() < 1e-9, "{} {} vs {}", theta, h, g);
    }

    #[test]
    fn precedes_is_transitive(a in 0usize..105, b in 0usize..105, c in 0usize..105) {
        let all = periodic_upto_6();
        let (x, y, z) = (&all[a], &all[b], &all[c]);
        if precedes(x, y) && precedes(y, z) {
            prop_assert!(precedes(x, z));
        }
    }

    #[test]
    fn classes_map_into_classes(c in 0usize..105) {
        let theta = &periodic_upto_6()[c];
        let lam = lamination(theta, 6, 1).unwrap();
        lam.verify().unwrap();
        for class in lam.nontrivial() {
            let images: BTreeSet<Angle> = class.iter().map(|t| t.times(2)).collect();
            let first = images.iter().next().unwrap();
            let target = lam.class_of(first).unwrap();
            prop_assert!(images.iter().all(|t| target.contains(t)));
        }
    }
}

#[test]
fn periodic_pool_size() {
    assert_eq!(periodic_upto_6().len(), 105);
}
