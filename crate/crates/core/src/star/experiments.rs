use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;
use serde_json::{json, Value};

use super::config::{StarConfig, StarError};
use super::ext::{format_vector, ExtRational, Inf};
use super::snowflake::Snowflake;
use crate::term::LatticeHandle;

/// The star lattice of a ray configuration. Joins panic if the closure does
/// not converge within the configuration's repair cap.
pub struct StarLattice {
    pub config: StarConfig,
}

impl LatticeHandle for StarLattice {
    type Elem = Vec<ExtRational>;

    fn selector(&self) -> String {
        format!("star[{}]", self.config.len())
    }
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.config.meet(a, b)
    }
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.config.join(a, b).unwrap_or_else(|e| panic!("star join: {e}"))
    }
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a.iter().zip(b).all(|(x, y)| x >= y)
    }
    fn bottom(&self) -> Option<Self::Elem> {
        Some(vec![Inf; self.config.len()])
    }
    fn validate(&self, e: &Self::Elem) -> Result<(), String> {
        self.config.check_vector(e).map_err(|e| e.to_string())?;
        if self.config.is_convex(e) {
            Ok(())
        } else {
            Err(format!("{} is not relatively convex", format_vector(e)))
        }
    }
    fn describe(&self, e: &Self::Elem) -> Value {
        json!(format_vector(e))
    }
}

/// The snowflake element as a centrally symmetric star on the hexagon.
pub fn hexagon_vector(s: &Snowflake) -> Vec<ExtRational> {
    let a = &s.0;
    vec![a[0].clone(), a[1].clone(), a[2].clone(), a[0].clone(), a[1].clone(), a[2].clone()]
}

/// The single segment `S_i / scale`.
pub fn segment(m: usize, i: usize, scale: i64) -> Vec<ExtRational> {
    let mut a = vec![Inf; m];
    a[i] = ExtRational::int(scale);
    a
}

fn strictly_below(a: &[ExtRational], b: &[ExtRational]) -> bool {
    a != b && a.iter().zip(b).all(|(x, y)| x >= y)
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainReport {
    pub rays: Vec<Vec<String>>,
    pub x1: String,
    pub y: String,
    pub x2: String,
    pub elements: Vec<String>,
    pub strict_ascents: usize,
    pub all_convex: bool,
    pub all_below_y: bool,
}

impl ChainReport {
    pub fn passed(&self, steps: usize) -> bool {
        self.strict_ascents == steps && self.all_convex && self.all_below_y
    }
}

/// Rays `(0,3),(1,2),(2,1),(3,0)`.
pub fn chain_config() -> StarConfig {
    StarConfig::from_ints(&[&[0, 3], &[1, 2], &[2, 1], &[3, 0]]).expect("valid rays")
}

/// Starting at `x1 ∧ y`, alternately applies `(− ∨ x2) ∧ y` and `(− ∨ x1) ∧ y`.
pub fn ascending_chain_experiment(steps: usize) -> Result<ChainReport, StarError> {
    let cfg = chain_config();
    let m = cfg.len();
    let x1 = cfg.join(&segment(m, 0, 1), &segment(m, 1, 2))?;
    let y = cfg.join(&segment(m, 1, 1), &segment(m, 2, 1))?;
    let x2 = cfg.join(&segment(m, 2, 2), &segment(m, 3, 1))?;
    let mut cur = cfg.meet(&x1, &y);
    let mut elements = vec![cur.clone()];
    let mut strict = 0;
    for k in 0..steps {
        let other = if k % 2 == 0 { &x2 } else { &x1 };
        let next = cfg.meet(&cfg.join(&cur, other)?, &y);
        if strictly_below(&cur, &next) {
            strict += 1;
        }
        elements.push(next.clone());
        cur = next;
    }
    let all_convex = elements.iter().all(|e| cfg.is_convex(e));
    let all_below_y = elements.iter().all(|e| e.iter().zip(&y).all(|(a, b)| a >= b));
    Ok(ChainReport {
        rays: cfg.rays.iter().map(|p| p.to_strings()).collect(),
        x1: format_vector(&x1),
        y: format_vector(&y),
        x2: format_vector(&x2),
        elements: elements.iter().map(|e| format_vector(e)).collect(),
        strict_ascents: strict,
        all_convex,
        all_below_y,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct OctagonReport {
    pub max_elements: usize,
    pub elements: usize,
    pub saturated: bool,
    pub longest_chain: Vec<String>,
    pub largest_antichain: Vec<String>,
    pub failed_joins: usize,
}

/// Breadth-first closure of the four octagon diameters under meet and join,
/// stopping once `max_elements` elements are known.
pub fn octagon_exploration(max_elements: usize) -> OctagonReport {
    let cfg = StarConfig::octagon();
    let m = cfg.len();
    let mut list: Vec<Vec<ExtRational>> = (0..4)
        .map(|i| {
            let mut a = vec![Inf; m];
            a[i] = ExtRational::int(1);
            a[i + 4] = ExtRational::int(1);
            a
        })
        .collect();
    let mut seen: BTreeSet<Vec<ExtRational>> = list.iter().cloned().collect();
    let mut queue: VecDeque<usize> = (0..list.len()).collect();
    let mut failed = 0;
    let mut saturated = true;
    'outer: while let Some(i) = queue.pop_front() {
        for j in 0..=i {
            let mut results = vec![cfg.meet(&list[i], &list[j])];
            match cfg.join(&list[i], &list[j]) {
                Ok(r) => results.push(r),
                Err(_) => failed += 1,
            }
            for r in results {
                if seen.insert(r.clone()) {
                    list.push(r);
                    queue.push_back(list.len() - 1);
                    if list.len() >= max_elements {
                        saturated = false;
                        break 'outer;
                    }
                }
            }
        }
    }
    let leq = |a: &Vec<ExtRational>, b: &Vec<ExtRational>| a.iter().zip(b).all(|(x, y)| x >= y);
    let chain = longest_chain(&list, leq);
    let antichain = largest_antichain(&list, leq);
    OctagonReport {
        max_elements,
        elements: list.len(),
        saturated,
        longest_chain: chain.iter().map(|&i| format_vector(&list[i])).collect(),
        largest_antichain: antichain.iter().map(|&i| format_vector(&list[i])).collect(),
        failed_joins: failed,
    }
}

/// Indices of a longest strictly increasing chain.
pub fn longest_chain<T: PartialEq>(items: &[T], leq: impl Fn(&T, &T) -> bool) -> Vec<usize> {
    let n = items.len();
    let below = |a: usize, b: usize| a != b && items[a] != items[b] && leq(&items[a], &items[b]);
    let mut order: Vec<usize> = (0..n).collect();
    let height: Vec<usize> = (0..n).map(|i| (0..n).filter(|&j| below(j, i)).count()).collect();
    order.sort_by_key(|&i| height[i]);
    let mut best = vec![1usize; n];
    let mut prev: Vec<Option<usize>> = vec![None; n];
    for (k, &i) in order.iter().enumerate() {
        for &j in &order[..k] {
            if below(j, i) && best[j] + 1 > best[i] {
                best[i] = best[j] + 1;
                prev[i] = Some(j);
            }
        }
    }
    let Some(mut cur) = (0..n).max_by_key(|&i| (best[i], std::cmp::Reverse(i))) else {
        return Vec::new();
    };
    let mut chain = vec![cur];
    while let Some(p) = prev[cur] {
        chain.push(p);
        cur = p;
    }
    chain.reverse();
    chain
}

/// Indices of a maximum antichain, via a maximum matching in the comparability
/// graph and König's construction.
pub fn largest_antichain<T: PartialEq>(items: &[T], leq: impl Fn(&T, &T) -> bool) -> Vec<usize> {
    let n = items.len();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| i != j && leq(&items[i], &items[j])).collect())
        .collect();
    let mut match_r: Vec<Option<usize>> = vec![None; n];
    let mut match_l: Vec<Option<usize>> = vec![None; n];
    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        match_l: &mut [Option<usize>],
        match_r: &mut [Option<usize>],
    ) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if match_r[v].is_none_or(|w| augment(w, adj, seen, match_l, match_r)) {
                match_r[v] = Some(u);
                match_l[u] = Some(v);
                return true;
            }
        }
        false
    }
    for u in 0..n {
        let mut seen = vec![false; n];
        augment(u, &adj, &mut seen, &mut match_l, &mut match_r);
    }
    let mut zl = vec![false; n];
    let mut zr = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&u| match_l[u].is_none()).collect();
    for &u in &stack {
        zl[u] = true;
    }
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if match_l[u] == Some(v) || zr[v] {
                continue;
            }
            zr[v] = true;
            if let Some(w) = match_r[v] {
                if !zl[w] {
                    zl[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    (0..n).filter(|&i| zl[i] && !zr[i]).collect()
}

/// Elements of the snowflake lattice, paired with their hexagon-star images,
/// for which the two models disagree on meet or join.
pub fn snowflake_mismatches(elements: &[Snowflake]) -> Vec<(String, String, &'static str)> {
    use super::snowflake::{snow_join, snow_meet};
    let cfg = StarConfig::hexagon();
    let images: HashMap<&Snowflake, Vec<ExtRational>> =
        elements.iter().map(|s| (s, hexagon_vector(s))).collect();
    let mut bad = Vec::new();
    for u in elements {
        for v in elements {
            let (iu, iv) = (&images[u], &images[v]);
            if cfg.meet(iu, iv) != hexagon_vector(&snow_meet(u, v)) {
                bad.push((u.to_string(), v.to_string(), "meet"));
            }
            match cfg.join(iu, iv) {
                Ok(j) if j == hexagon_vector(&snow_join(u, v)) => {}
                _ => bad.push((u.to_string(), v.to_string(), "join")),
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rational::ratio;
    use crate::star::ext::Finite;

    #[test]
    fn first_two_chain_steps() {
        let r = ascending_chain_experiment(2).unwrap();
        assert_eq!(r.elements[0], "[inf,2,inf,inf]");
        assert_eq!(r.elements[1], "[inf,2,3/2,inf]");
        assert_eq!(r.elements[2], "[inf,5/4,3/2,inf]");
        assert!(r.passed(2));
    }

    #[test]
    fn chain_values_stay_convex_geometrically() {
        let cfg = chain_config();
        let e = vec![Inf, Finite(ratio(5, 4)), Finite(ratio(3, 2)), Inf];
        assert_eq!(cfg.geometric_closure(&e), e);
    }

    #[test]
    fn poset_helpers_on_a_boolean_square() {
        let items = vec![0u8, 1, 2, 3];
        let leq = |a: &u8, b: &u8| a & b == *a;
        assert_eq!(longest_chain(&items, leq).len(), 3);
        assert_eq!(largest_antichain(&items, leq), vec![1, 2]);
    }

    #[test]
    fn snowflake_embeds_in_hexagon_star() {
        let els = crate::star::snowflake::snow_enumerate(3);
        assert!(snowflake_mismatches(&els).is_empty());
    }
}
