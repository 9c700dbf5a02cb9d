use std::collections::HashMap;

use super::{Case, GalleryEntry, Instance};
use crate::geom::{int, ratio, Polytope, Rational, RationalPoint};
use crate::term::{builtin_identity, Identity, Verdict};

fn ident(name: &str) -> Identity {
    builtin_identity(name).expect("catalog identity")
}

fn hull(pts: &[RationalPoint], dim: usize) -> Polytope {
    Polytope::hull(pts, dim).expect("points share the dimension")
}

fn cone(p: &Polytope) -> Polytope {
    p.join(&Polytope::point(RationalPoint::origin(p.dim()))).expect("same dimension")
}

fn meet(a: &Polytope, b: &Polytope) -> Polytope {
    a.meet(b).expect("same dimension")
}

fn join(a: &Polytope, b: &Polytope) -> Polytope {
    a.join(b).expect("same dimension")
}

fn meet_all<'a>(ps: impl IntoIterator<Item = &'a Polytope>, dim: usize) -> Polytope {
    let mut it = ps.into_iter();
    let first = it.next().cloned().unwrap_or_else(|| Polytope::empty(dim));
    it.fold(first, |acc, p| meet(&acc, p))
}

fn join_all<'a>(ps: impl IntoIterator<Item = &'a Polytope>, dim: usize) -> Polytope {
    ps.into_iter().fold(Polytope::empty(dim), |acc, p| join(&acc, p))
}

fn inside(p: &Polytope, q: &RationalPoint) -> bool {
    p.contains(q).expect("same dimension")
}

/// `0, e_1, .., e_n` in `Q^n`.
fn simplex(n: usize) -> Vec<RationalPoint> {
    std::iter::once(RationalPoint::origin(n))
        .chain((0..n).map(|i| RationalPoint::unit(n, i)))
        .collect()
}

fn centroid(pts: &[RationalPoint]) -> RationalPoint {
    let w = ratio(1, pts.len() as i64);
    RationalPoint::combination(pts, &vec![w; pts.len()])
}

/// `2p − v`.
fn reflect(p: &RationalPoint, v: &RationalPoint) -> RationalPoint {
    RationalPoint::combination(&[p.clone(), v.clone()], &[int(2), int(-1)])
}

fn diff(a: &RationalPoint, b: &RationalPoint) -> RationalPoint {
    RationalPoint::combination(&[a.clone(), b.clone()], &[int(1), int(-1)])
}

fn ys_env(x: Polytope, ys: Vec<Polytope>) -> HashMap<String, Polytope> {
    let mut env: HashMap<String, Polytope> =
        ys.into_iter().enumerate().map(|(i, y)| (format!("y{}", i + 1), y)).collect();
    env.insert("x".into(), x);
    env
}

fn cond(name: impl Into<String>, holds: bool) -> (String, bool) {
    (name.into(), holds)
}

fn all_but<T: Clone>(v: &[T], i: usize) -> Vec<T> {
    v.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, t)| t.clone()).collect()
}

pub(super) fn dn_fail_conv(n: usize) -> GalleryEntry {
    let qs = simplex(n);
    let p = centroid(&qs);
    let x = Polytope::point(p.clone());
    let ys: Vec<Polytope> = qs.iter().cloned().map(Polytope::point).collect();
    let id = ident(&format!("D:{n}"));
    let lhs = meet(&x, &join_all(&ys, n));
    let rhs = join_all(
        (0..ys.len()).map(|i| meet(&x, &join_all(&all_but(&ys, i), n))).collect::<Vec<_>>().iter(),
        n,
    );
    let conditions = vec![
        cond("p lies in the simplex spanned by the y", inside(&hull(&qs, n), &p)),
        cond("p is no vertex of the simplex", !qs.contains(&p)),
        cond("lhs is {p}", lhs == x),
        cond("every facet misses p, so rhs is empty", rhs.is_empty()),
    ];
    let pointed = Case {
        identity: id.clone(),
        instance: Instance::Pointed { dim: n, env: ys_env(cone(&x), ys.iter().map(cone).collect()) },
    };
    GalleryEntry {
        family: "dn_fail_conv",
        n: Some(n),
        description: "x is the centroid of a simplex whose vertices are the y",
        expected: Verdict::Fails,
        case: Case { identity: id, instance: Instance::Conv { dim: n, env: ys_env(x, ys) } },
        conditions,
        counterparts: vec![pointed],
    }
}

pub(super) fn wrapped_dn_fail_pointed(n: usize) -> GalleryEntry {
    // Simplex on the hyperplane where the last coordinate is 1.
    let qs: Vec<RationalPoint> = simplex(n - 1).iter().map(|v| v.extended(int(1))).collect();
    let p = centroid(&qs);
    let o = RationalPoint::origin(n);
    let half_q2 = qs[1].scale(&ratio(1, 2));
    let x = hull(&[o.clone(), p.clone()], n);
    let plain: Vec<Polytope> = qs.iter().map(|q| hull(&[o.clone(), q.clone()], n)).collect();
    let mut ys = plain.clone();
    ys[0] = hull(&[o.clone(), qs[0].clone(), half_q2.clone()], n);
    let z = hull(&[o.clone(), diff(&qs[1], &p)], n);
    let id = ident(&format!("wrapped-D:{}", n - 1));

    let lhs = meet(&x, &join_all(&ys, n));
    let rhs = join_all(
        (0..ys.len()).map(|i| meet(&x, &join_all(&all_but(&ys, i), n))).collect::<Vec<_>>().iter(),
        n,
    );
    let top = Rational::from_integer(1.into());
    let conditions = vec![
        cond("y1 ∧ y2 is the segment to q2/2", meet(&ys[0], &ys[1]) == hull(&[o.clone(), half_q2], n)),
        cond("unwrapped lhs is x", lhs == x),
        cond(
            "unwrapped rhs stays below the hyperplane of the simplex",
            rhs.vertices().iter().all(|v| v.coords()[n - 1] < top),
        ),
    ];
    let mut env = ys_env(x.clone(), ys);
    env.insert("z".into(), z.clone());
    let mut plain_env = ys_env(x, plain);
    plain_env.insert("z".into(), z);
    GalleryEntry {
        family: "wrapped_dn_fail_pointed",
        n: Some(n),
        description: "pointed cones over a lifted simplex, with y1 ∧ y2 made nontrivial",
        expected: Verdict::Fails,
        case: Case { identity: id.clone(), instance: Instance::Pointed { dim: n, env } },
        conditions,
        counterparts: vec![Case { identity: id, instance: Instance::Pointed { dim: n, env: plain_env } }],
    }
}

pub(super) fn dnop_fail_conv(n: usize) -> GalleryEntry {
    let xs = simplex(n);
    let p = RationalPoint::from_ints(&vec![2; n]);
    let refl: Vec<RationalPoint> = xs.iter().map(|v| reflect(&p, v)).collect();
    let x = hull(&xs, n);
    let ys: Vec<Polytope> = (0..refl.len()).map(|i| hull(&all_but(&refl, i), n)).collect();
    let id = ident(&format!("Dop:{n}"));

    let small = join(&x, &meet_all(&ys, n));
    let co: Vec<Polytope> = (0..ys.len()).map(|i| meet_all(&all_but(&ys, i), n)).collect();
    let big = meet_all(co.iter().map(|c| join(&x, c)).collect::<Vec<_>>().iter(), n);
    let conditions = vec![
        cond("the y have empty meet", meet_all(&ys, n).is_empty()),
        cond(
            "dropping y_i leaves the reflected vertex i",
            co.iter().zip(&refl).all(|(c, r)| *c == Polytope::point(r.clone())),
        ),
        cond("x ∨ ⋀y is x", small == x),
        cond("p lies in every x ∨ ⋀_{j≠i} y_j", inside(&big, &p)),
        cond("p lies outside x", !inside(&x, &p)),
    ];
    let pointed = Case {
        identity: id.clone(),
        instance: Instance::Pointed { dim: n, env: ys_env(x.clone(), ys.iter().map(cone).collect()) },
    };
    GalleryEntry {
        family: "dnop_fail_conv",
        n: Some(n),
        description: "x is a simplex, the y are the facets of its reflection through p",
        expected: Verdict::Fails,
        case: Case { identity: id, instance: Instance::Conv { dim: n, env: ys_env(x, ys) } },
        conditions,
        counterparts: vec![pointed],
    }
}

pub(super) fn wrapped_dnop_fail_pointed(n: usize) -> GalleryEntry {
    let o = RationalPoint::origin(n);
    let x0: Vec<RationalPoint> = simplex(n - 1).iter().map(|v| v.extended(int(1))).collect();
    let mut p0c = vec![2; n];
    p0c[n - 1] = 1;
    let p0 = RationalPoint::from_ints(&p0c);
    let refl: Vec<RationalPoint> = x0.iter().map(|v| reflect(&p0, v)).collect();
    let q0 = refl[0].clone();
    let half_q0 = q0.scale(&ratio(1, 2));
    let with_o = |pts: Vec<RationalPoint>| {
        let mut v = pts;
        v.push(o.clone());
        hull(&v, n)
    };
    let x = with_o(x0.clone());
    let plain: Vec<Polytope> = (0..refl.len()).map(|i| with_o(all_but(&refl, i))).collect();
    let mut ys = plain.clone();
    let mut first = all_but(&refl, 0);
    first.push(half_q0.clone());
    ys[0] = with_o(first);
    let zp = hull(&[o.clone(), p0.clone()], n);
    let z = hull(&[o.clone(), diff(&q0, &p0)], n);
    let id = ident(&format!("wrapped-Dop:{}", n - 1));

    let small = join(&x, &meet_all(&ys, n));
    let co: Vec<Polytope> = (0..ys.len()).map(|i| meet_all(&all_but(&ys, i), n)).collect();
    let big = meet_all(co.iter().map(|c| join(&x, c)).collect::<Vec<_>>().iter(), n);
    let conditions = vec![
        cond("⋀y is the segment to q0/2", meet_all(&ys, n) == hull(&[o.clone(), half_q0], n)),
        cond("p0 lies in every x ∨ ⋀_{j≠i} y_j", inside(&big, &p0)),
        cond("p0 lies outside x ∨ ⋀y", !inside(&small, &p0)),
    ];
    let extra = |ys: Vec<Polytope>| {
        let mut env = ys_env(x.clone(), ys);
        env.insert("z".into(), z.clone());
        env.insert("zp".into(), zp.clone());
        env
    };
    GalleryEntry {
        family: "wrapped_dnop_fail_pointed",
        n: Some(n),
        description: "pointed cones over a lifted simplex and the facets of its reflection, with ⋀y made nontrivial",
        expected: Verdict::Fails,
        case: Case { identity: id.clone(), instance: Instance::Pointed { dim: n, env: extra(ys) } },
        conditions,
        counterparts: vec![Case { identity: id, instance: Instance::Pointed { dim: n, env: extra(plain) } }],
    }
}

pub(super) fn radon_fail(m: usize) -> GalleryEntry {
    let xs = simplex(m);
    let p = RationalPoint::from_ints(&vec![2; m]);
    let pts: Vec<RationalPoint> = xs.iter().map(|v| reflect(&p, v)).collect();
    let x = hull(&xs, m);
    let ys: Vec<Polytope> = pts.iter().cloned().map(Polytope::point).collect();
    let id = ident(&format!("radon:{}", m - 1));

    let k = ys.len();
    let parts_empty = (1u64..(1 << (k - 1))).all(|mask| {
        let in_b = |i: usize| i > 0 && mask >> (i - 1) & 1 == 1;
        let a: Vec<Polytope> = (0..k).filter(|&i| !in_b(i)).map(|i| ys[i].clone()).collect();
        let b: Vec<Polytope> = (0..k).filter(|&i| in_b(i)).map(|i| ys[i].clone()).collect();
        meet(&join_all(&a, m), &join_all(&b, m)).is_empty()
    });
    let lhs = meet_all(ys.iter().map(|y| join(&x, y)).collect::<Vec<_>>().iter(), m);
    let conditions = vec![
        cond("the y split into no two blocks with meeting hulls", parts_empty),
        cond("p lies in every x ∨ y_i", inside(&lhs, &p)),
        cond("p lies outside x", !inside(&x, &p)),
    ];
    let pointed = Case {
        identity: id.clone(),
        instance: Instance::Pointed { dim: m, env: ys_env(x.clone(), ys.iter().map(cone).collect()) },
    };
    GalleryEntry {
        family: "radon_fail",
        n: Some(m),
        description: "x is a simplex, the y are its vertices reflected through p",
        expected: Verdict::Fails,
        case: Case { identity: id, instance: Instance::Conv { dim: m, env: ys_env(x, ys) } },
        conditions,
        counterparts: vec![pointed],
    }
}
