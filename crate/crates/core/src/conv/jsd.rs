use rand::Rng;

use crate::geom::sample::SamplerConfig;
use crate::geom::{Polytope, Rational, RationalPoint};

/// Random `(x, y1, y2)` with `x ∨ y1 = x ∨ y2`.
///
/// `y2` is spanned by every vertex of `v = x ∨ y1` lying outside `x`, some
/// further vertices of `v`, and possibly a few interior points of `v`; since
/// all extreme points of `v` not in `x` are then in `y2`, the joins agree.
pub fn jsd_premise_sampler(cfg: &SamplerConfig, rng: &mut impl Rng) -> (Polytope, Polytope, Polytope) {
    let x = cfg.polytope(rng);
    let y1 = cfg.polytope(rng);
    let v = x.join(&y1).expect("same dimension");
    let h = x.to_h_rep();
    let mut gens: Vec<RationalPoint> = Vec::new();
    for p in v.vertices() {
        if !h.contains(p) || rng.gen_bool(0.3) {
            gens.push(p.clone());
        }
    }
    let extra = rng.gen_range(0..=2);
    for _ in 0..extra {
        let w: Vec<Rational> = v
            .vertices()
            .iter()
            .map(|_| Rational::from_integer(rng.gen_range(0..=3).into()))
            .collect();
        let total: Rational = w.iter().sum();
        if total == Rational::from_integer(0.into()) {
            continue;
        }
        let w: Vec<Rational> = w.iter().map(|c| c / &total).collect();
        gens.push(RationalPoint::combination(v.vertices(), &w));
    }
    if gens.is_empty() {
        gens.push(v.vertices()[0].clone());
    }
    let y2 = Polytope::hull(&gens, cfg.dim).expect("same dimension");
    (x, y1, y2)
}
