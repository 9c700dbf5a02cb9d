mod oracles;

use std::collections::HashMap;

use proptest::prelude::*;

use cvxlat::conv::{rel_closure, PointedPolytopeLattice, PolytopeLattice, RelConvLattice, RelSet, RelativizedLattice};
use cvxlat::geom::sample::{trial_rng, SamplerConfig};
use cvxlat::geom::{ratio, Polytope, Rational, RationalPoint};
use cvxlat::star::{hexagon_vector, snow_enumerate, snow_join, snow_meet, Snowflake, StarConfig};
use cvxlat::term::{builtin_identity, check, LatticeHandle, Verdict};
use oracles::*;

fn point(dim: usize) -> impl Strategy<Value = RationalPoint> {
    prop::collection::vec((-3i64..=3, 1i64..=2).prop_map(|(n, d)| ratio(n, d)), dim).prop_map(RationalPoint::new)
}

/// Up to `max` distinct points in dimension 1..=2.
fn ground(max: usize) -> impl Strategy<Value = Vec<RationalPoint>> {
    (1usize..=2)
        .prop_flat_map(move |d| prop::collection::btree_set(point(d), 1..=max))
        .prop_map(|s| s.into_iter().collect())
}

fn subset(g: &[RationalPoint], mask: u64) -> Vec<RationalPoint> {
    g.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p.clone()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_hull_intersected_with_ground((g, mask) in (ground(8), any::<u64>())) {
        let a = subset(&g, mask);
        let got = rel_closure(&g, &a).unwrap();
        let expected: Vec<RationalPoint> = g.iter().filter(|p| !a.is_empty() && in_hull(&a, p)).cloned().collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn closure_axioms((g, m1, m2) in (ground(9), any::<u64>(), any::<u64>())) {
        let l = RelConvLattice::new(g[0].dim(), g.clone()).unwrap();
        let full = l.full().indices();
        let a = RelSet::from_indices(&full.iter().copied().filter(|i| m1 >> i & 1 == 1).collect::<Vec<_>>());
        let b = RelSet::from_indices(&full.iter().copied().filter(|i| (m1 | m2) >> i & 1 == 1).collect::<Vec<_>>());
        let ca = l.closure(a);
        prop_assert!(a.is_subset_of(ca));
        prop_assert!(ca.is_subset_of(l.closure(b)));
        prop_assert_eq!(l.closure(ca), ca);
        let cb = l.closure(b);
        prop_assert!(l.is_closed(l.meet(&ca, &cb)));
    }

    #[test]
    fn closure_memberships_have_small_witnesses((g, mask) in (ground(8), any::<u64>())) {
        let d = g[0].dim();
        let a = subset(&g, mask);
        for p in rel_closure(&g, &a).unwrap() {
            let (idx, coeffs) = hull_witness(&a, &p).expect("member of the closure");
            prop_assert!(idx.len() <= d + 1);
            let pts: Vec<RationalPoint> = idx.iter().map(|&i| a[i].clone()).collect();
            prop_assert_eq!(RationalPoint::combination(&pts, &coeffs), p);
        }
    }

    #[test]
    fn pointed_lattice_keeps_the_origin(seed in any::<u64>()) {
        let l = PointedPolytopeLattice { dim: 2 };
        let cfg = SamplerConfig::pointed(2);
        let mut rng = trial_rng(seed, 0);
        let (a, b) = (cfg.polytope(&mut rng), cfg.polytope(&mut rng));
        let o = RationalPoint::origin(2);
        prop_assert!(l.validate(&a).is_ok() && l.validate(&b).is_ok());
        prop_assert!(l.meet(&a, &b).contains(&o).unwrap());
        prop_assert!(l.join(&a, &b).contains(&o).unwrap());
        prop_assert_eq!(l.bottom(), Some(Polytope::point(o)));
    }
}

#[test]
fn pointed_relconv_satisfies_dn() {
    let cfg = SamplerConfig::new(2);
    let id = builtin_identity("D:2").unwrap();
    for t in 0..60u64 {
        let mut rng = trial_rng(21, t);
        let mut g: Vec<RationalPoint> = Vec::new();
        while g.len() < 9 {
            let p = cfg.point(&mut rng);
            if !g.contains(&p) {
                g.push(p);
            }
        }
        let l = RelConvLattice::pointed(2, g, (t % 9) as usize).unwrap();
        let env: HashMap<String, RelSet> = id.free_vars.iter().map(|v| (v.clone(), l.sample(&mut rng))).collect();
        assert_eq!(check(&id, &l, &env).unwrap().verdict, Verdict::Holds, "trial {t}");
    }
}

#[test]
fn relativized_join_stays_fixed() {
    let base = PolytopeLattice { dim: 2 };
    let cfg = SamplerConfig::new(2);
    for t in 0..40u64 {
        let mut rng = trial_rng(8, t);
        let pieces: Vec<Polytope> = (0..3).map(|_| cfg.polytope(&mut rng)).collect();
        let r = RelativizedLattice::new(&base, pieces);
        let a = r.interior(&cfg.polytope(&mut rng));
        let b = r.interior(&cfg.polytope(&mut rng));
        assert!(r.is_fixed(&a) && r.is_fixed(&b));
        let j = r.join(&a, &b);
        assert_eq!(j, base.join(&a, &b));
        assert!(r.is_fixed(&j));
        assert!(r.is_fixed(&r.meet(&a, &b)));
    }
}

/// The centrally symmetric hexagon star of a snowflake element as a polytope.
fn hexagon_polytope(s: &Snowflake) -> Polytope {
    let hex = StarConfig::hexagon();
    let mut tips = vec![RationalPoint::origin(2)];
    for (p, a) in hex.rays.iter().zip(hexagon_vector(s)) {
        if let Some(q) = a.finite() {
            tips.push(p.scale(&q.recip()));
        }
    }
    Polytope::hull(&tips, 2).unwrap()
}

#[test]
fn relativized_hexagon_matches_snowflake_arithmetic() {
    let base = PolytopeLattice { dim: 2 };
    let pieces: Vec<Polytope> = [[1, 0], [1, 1], [0, 1]]
        .iter()
        .map(|c| {
            let p = RationalPoint::from_ints(c);
            Polytope::hull(&[p.clone(), p.scale(&Rational::from_integer((-1).into()))], 2).unwrap()
        })
        .collect();
    let r = RelativizedLattice::new(&base, pieces);
    let all = snow_enumerate(5);
    let elems: Vec<Snowflake> = all.iter().step_by(all.len() / 20).take(20).cloned().collect();
    assert_eq!(elems.len(), 20);
    for u in &elems {
        assert!(r.is_fixed(&hexagon_polytope(u)), "{u}");
        for v in &elems {
            let (pu, pv) = (hexagon_polytope(u), hexagon_polytope(v));
            assert_eq!(r.meet(&pu, &pv), hexagon_polytope(&snow_meet(u, v)), "{u} ∧ {v}");
            assert_eq!(r.join(&pu, &pv), hexagon_polytope(&snow_join(u, v)), "{u} ∨ {v}");
        }
    }
}
