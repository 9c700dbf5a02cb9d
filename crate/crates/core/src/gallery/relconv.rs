use std::collections::HashMap;

use num_traits::One;

use super::{Case, GalleryEntry, Instance};
use crate::conv::{RelConvLattice, RelSet};
use crate::geom::{int, ratio, Polytope, Rational, RationalPoint};
use crate::term::{builtin_identity, Identity, LatticeHandle, Verdict};

fn ident(name: &str) -> Identity {
    builtin_identity(name).expect("catalog identity")
}

fn rp(x: Rational, y: Rational) -> RationalPoint {
    RationalPoint::new(vec![x, y])
}

fn neg(p: &RationalPoint) -> RationalPoint {
    p.scale(&int(-1))
}

fn cond(name: impl Into<String>, holds: bool) -> (String, bool) {
    (name.into(), holds)
}

pub(super) fn relconv_d1op_fail() -> GalleryEntry {
    let e1 = RationalPoint::unit(2, 0);
    let e2 = RationalPoint::unit(2, 1);
    let ground = vec![RationalPoint::origin(2), e1.clone(), e2.clone(), neg(&e1), neg(&e2)];
    let l = RelConvLattice::new(2, ground).expect("distinct planar points");
    let x = RelSet::from_indices(&[3, 4]);
    let y1 = RelSet::from_indices(&[2]);
    let y2 = RelSet::from_indices(&[1]);
    let env: HashMap<String, RelSet> =
        [("x", x), ("y1", y1), ("y2", y2)].into_iter().map(|(k, v)| (k.to_string(), v)).collect();

    let wrapped = ident("wrapped-Dop:1");
    let closed = l.enumerate_closed_sets().expect("five points");
    let counterparts = closed
        .iter()
        .flat_map(|&z| closed.iter().map(move |&zp| (z, zp)))
        .map(|(z, zp)| {
            let mut e = env.clone();
            e.insert("z".into(), z);
            e.insert("zp".into(), zp);
            Case { identity: wrapped.clone(), instance: Instance::RelConv { lattice: l.clone(), env: e } }
        })
        .collect();
    let origin = RelSet::from_indices(&[0]);
    let conditions = vec![
        cond("x ∨ y1 and x ∨ y2 contain the origin", [y1, y2].iter().all(|y| origin.is_subset_of(l.join(&x, y)))),
        cond("y1 ∧ y2 is empty", l.meet(&y1, &y2).is_empty()),
        cond("the assigned sets are closed", [x, y1, y2].iter().all(|&s| l.is_closed(s))),
    ];
    GalleryEntry {
        family: "relconv_d1op_fail",
        n: None,
        description: "four points around the origin; the wrapped form holds for every z and zp",
        expected: Verdict::Fails,
        case: Case { identity: ident("Dop:1"), instance: Instance::RelConv { lattice: l, env } },
        conditions,
        counterparts,
    }
}

/// Rational points on the upper half of the unit circle in angular order.
fn arc(n: usize) -> Vec<RationalPoint> {
    let one = || Rational::one();
    let zero = || int(0);
    match n {
        1 => vec![
            rp(one(), zero()),
            rp(ratio(3, 5), ratio(4, 5)),
            rp(zero(), one()),
            rp(ratio(-4, 5), ratio(3, 5)),
        ],
        _ => vec![
            rp(one(), zero()),
            rp(ratio(4, 5), ratio(3, 5)),
            rp(ratio(5, 13), ratio(12, 13)),
            rp(ratio(-5, 13), ratio(12, 13)),
            rp(ratio(-4, 5), ratio(3, 5)),
        ],
    }
}

pub(super) fn relconv_wrapped_fail(n: usize) -> GalleryEntry {
    let half = arc(n);
    let k = half.len();
    let mut ground: Vec<RationalPoint> = half.iter().cloned().chain(half.iter().map(neg)).collect();
    let q = ground.clone();
    let origin = ground.len();
    let r = q[n + 1].scale(&int(3));
    ground.push(RationalPoint::origin(2));
    ground.push(r.clone());
    let r_idx = origin + 1;
    let base = n + 2;
    let l = RelConvLattice::pointed(2, ground, base).expect("distinct planar points");

    let mut env: HashMap<String, RelSet> = HashMap::new();
    for i in 0..=n {
        let members: Vec<usize> = (0..=n + 2).filter(|&j| j != i).collect();
        env.insert(format!("y{}", i + 1), RelSet::from_indices(&members));
    }
    let x_idx: Vec<usize> = (n + 2..=2 * n + 3).collect();
    env.insert("x".into(), RelSet::from_indices(&x_idx));
    env.insert("zp".into(), RelSet::from_indices(&[base, origin]));
    env.insert("z".into(), RelSet::from_indices(&[base, r_idx]));

    let norm2 = |p: &RationalPoint| p.dot(p);
    let segment = Polytope::hull(&[RationalPoint::origin(2), r.clone()], 2).expect("planar");
    let conditions = vec![
        cond("the q lie on the unit circle", q.iter().all(|p| norm2(p) == Rational::one())),
        cond("the second half of the q are the antipodes of the first", (0..k).all(|i| q[i + k] == neg(&q[i]))),
        cond(
            "consecutive q turn counterclockwise",
            q.windows(2).all(|w| {
                let (a, b) = (w[0].coords(), w[1].coords());
                &a[0] * &b[1] - &a[1] * &b[0] > int(0)
            }),
        ),
        cond("the segment from 0 to r passes through a q", segment.contains(&q[n + 1]).unwrap_or(false)),
        cond("r lies outside the circle of radius 2", norm2(&r) >= int(4)),
        cond(
            "every assigned set is relatively convex and contains the base point",
            env.values().all(|s| l.validate(s).is_ok()),
        ),
    ];

    let mut d2 = HashMap::new();
    d2.insert("x".to_string(), env["x"]);
    for i in 1..=3 {
        let src = if i <= n + 1 { format!("y{i}") } else { "z".to_string() };
        d2.insert(format!("y{i}"), env[&src]);
    }
    let counterpart = Case { identity: ident("D:2"), instance: Instance::RelConv { lattice: l.clone(), env: d2 } };
    GalleryEntry {
        family: "relconv_wrapped_fail",
        n: Some(n),
        description: "points on a circle with their antipodes, the origin and a far point r, above one circle point",
        expected: Verdict::Fails,
        case: Case {
            identity: ident(&format!("wrapped-Dop:{n}")),
            instance: Instance::RelConv { lattice: l, env },
        },
        conditions,
        counterparts: vec![counterpart],
    }
}
