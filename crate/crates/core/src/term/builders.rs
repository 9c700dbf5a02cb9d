//! The identity catalog.

use itertools::Itertools;
use thiserror::Error;

use super::ast::{
    dualize, join, join_all, meet, meet_all, var, wrap, Automatic, Identity, LatticeTerm, Mode, HOLE,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("{0}")]
    Parameter(String),
    #[error("unknown identity {0:?}")]
    Unknown(String),
}

fn y(i: usize) -> LatticeTerm {
    var(format!("y{i}"))
}

fn x() -> LatticeTerm {
    var("x")
}

/// `x ∧ ⋁_{i≤n+1} y_i = ⋁_i (x ∧ ⋁_{j≠i} y_j)`.
pub fn build_dn(n: usize) -> Result<Identity, BuildError> {
    if n < 1 {
        return Err(BuildError::Parameter("D_n needs n >= 1".into()));
    }
    let lhs = meet(x(), join_all((1..=n + 1).map(y)));
    let rhs = join_all((1..=n + 1).map(|i| meet(x(), join_all((1..=n + 1).filter(|&j| j != i).map(y)))));
    Ok(Identity::new(format!("D_{n}"), lhs, rhs, Mode::Equation).with_automatic(Automatic::LhsGeqRhs))
}

pub fn build_dn_op(n: usize) -> Result<Identity, BuildError> {
    let mut id = dualize(&build_dn(n)?);
    id.name = format!("D_{n}^op");
    Ok(id)
}

/// `x ∧ ⋁_{i≤N} y_i = ⋁ (x ∧ ⋁_{i∈I} y_i)` over `(n+1)`-subsets `I`, listed
/// in lexicographic order of their complements.
pub fn build_dn_nary(n: usize, big_n: usize) -> Result<Identity, BuildError> {
    if big_n < n + 2 {
        return Err(BuildError::Parameter(format!(
            "N-ary form needs N >= n + 2 (n = {n}, N = {big_n})"
        )));
    }
    let lhs = meet(x(), join_all((1..=big_n).map(y)));
    let joinands = (1..=big_n).combinations(big_n - n - 1).map(|omit| {
        meet(
            x(),
            join_all((1..=big_n).filter(|j| !omit.contains(j)).map(y)),
        )
    });
    let rhs = join_all(joinands);
    Ok(
        Identity::new(format!("D_{n}[N={big_n}]"), lhs, rhs, Mode::Equation)
            .with_automatic(Automatic::LhsGeqRhs),
    )
}

/// Unordered partitions of `{1..k}` into two nonempty blocks, with 1 always in
/// the first block.
pub fn two_block_partitions(k: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    (1u64..(1u64 << (k - 1)))
        .map(|mask| {
            let (i2, i1): (Vec<usize>, Vec<usize>) =
                (1..=k).partition(|&i| i > 1 && mask & (1 << (i - 2)) != 0);
            (i1, i2)
        })
        .collect()
}

/// `⋀_i (x ∨ y_i) <= x ∨ ⋁_{I1,I2} ((⋁_{I1} y) ∧ (⋁_{I2} y))` over `y_1..y_{n+2}`.
pub fn build_radon_identity(n: usize) -> Identity {
    let k = n + 2;
    let lhs = meet_all((1..=k).map(|i| join(x(), y(i))));
    let parts = two_block_partitions(k)
        .into_iter()
        .map(|(a, b)| meet(join_all(a.into_iter().map(y)), join_all(b.into_iter().map(y))));
    let rhs = join(x(), join_all(parts));
    let mut id = Identity::new(format!("radon_{n}"), lhs, rhs, Mode::Inequation);
    let mut fv = vec!["x".to_string()];
    fv.extend((1..=k).map(|i| format!("y{i}")));
    id.free_vars = fv;
    id
}

/// `((D_n) ∨ z) ∧ y1 ∧ y2`.
pub fn wrapped_dn(n: usize) -> Result<Identity, BuildError> {
    let ctx = meet(meet(join(var(HOLE), var("z")), y(1)), y(2));
    named(wrap(&build_dn(n)?, &ctx), format!("((D_{n}) | z) & y1 & y2"))
}

/// `((D_n) ∨ z) ∧ ⋁_{i<j} (y_i ∧ y_j)`.
pub fn wrapped_dn_pairs(n: usize) -> Result<Identity, BuildError> {
    let pairs = (1..=n + 1)
        .tuple_combinations()
        .map(|(i, j)| meet(y(i), y(j)));
    let ctx = meet(join(var(HOLE), var("z")), join_all(pairs));
    named(wrap(&build_dn(n)?, &ctx), format!("((D_{n}) | z) & pairwise meets"))
}

/// `((D_n) ∨ z) ∧ ⋀_i (⋁_{j≠i} y_j)`.
pub fn wrapped_dn_cojoins(n: usize) -> Result<Identity, BuildError> {
    let cojoins = (1..=n + 1).map(|i| join_all((1..=n + 1).filter(|&j| j != i).map(y)));
    let ctx = meet(join(var(HOLE), var("z")), meet_all(cojoins));
    named(wrap(&build_dn(n)?, &ctx), format!("((D_{n}) | z) & cojoin meet"))
}

/// `(((D_n^op) ∧ zp) ∨ z) ∧ ⋀_i y_i`.
pub fn wrapped_dn_op(n: usize) -> Result<Identity, BuildError> {
    let ctx = meet(
        join(meet(var(HOLE), var("zp")), var("z")),
        meet_all((1..=n + 1).map(y)),
    );
    named(wrap(&build_dn_op(n)?, &ctx), format!("(((D_{n}^op) & zp) | z) & meet y"))
}

fn named(r: Result<Identity, super::ast::WrapError>, name: String) -> Result<Identity, BuildError> {
    let mut id = r.map_err(|e| BuildError::Parameter(e.to_string()))?;
    id.name = name;
    Ok(id)
}

/// Resolves catalog names such as `D:2`, `Dop:2`, `Dnary:1:4`, `radon:1`,
/// `radon-dual:1`, `wrapped-D:2`, `wrapped-D-pairs:2`, `wrapped-D-cojoins:2`
/// and `wrapped-Dop:2`.
pub fn builtin_identity(name: &str) -> Result<Identity, BuildError> {
    let mut parts = name.split(':');
    let head = parts.next().unwrap_or_default();
    let nums: Vec<usize> = parts
        .map(|p| p.parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| BuildError::Unknown(name.into()))?;
    let one = || match nums.as_slice() {
        [n] => Ok(*n),
        _ => Err(BuildError::Unknown(name.into())),
    };
    match head {
        "D" => build_dn(one()?),
        "Dop" => build_dn_op(one()?),
        "Dnary" => match nums.as_slice() {
            [n, big_n] => build_dn_nary(*n, *big_n),
            _ => Err(BuildError::Unknown(name.into())),
        },
        "radon" => Ok(build_radon_identity(one()?)),
        "radon-dual" => Ok(dualize(&build_radon_identity(one()?))),
        "wrapped-D" => wrapped_dn(one()?),
        "wrapped-D-pairs" => wrapped_dn_pairs(one()?),
        "wrapped-D-cojoins" => wrapped_dn_cojoins(one()?),
        "wrapped-Dop" => wrapped_dn_op(one()?),
        _ => Err(BuildError::Unknown(name.into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse::{parse_identity, print_term};

    #[test]
    fn d1_is_distributivity() {
        let id = build_dn(1).unwrap();
        let expected = parse_identity("x & (y1 | y2) = x & y2 | x & y1").unwrap();
        assert!(id.same_shape(&expected));
        assert!(build_dn(0).is_err());
    }

    #[test]
    fn d1_op_is_dual_distributivity() {
        let id = build_dn_op(1).unwrap();
        let expected = parse_identity("x | y1 & y2 = (x | y2) & (x | y1)").unwrap();
        assert!(id.same_shape(&expected));
    }

    #[test]
    fn d2_has_three_joinands() {
        let id = build_dn(2).unwrap();
        assert_eq!(
            print_term(&id.rhs),
            "x & (y2 | y3) | x & (y1 | y3) | x & (y1 | y2)"
        );
    }

    #[test]
    fn nary_reduces_to_dn() {
        for n in 1..=3 {
            assert!(build_dn_nary(n, n + 2).unwrap().same_shape(&build_dn(n + 1).unwrap()));
        }
        let id = build_dn_nary(1, 4).unwrap();
        assert_eq!(print_term(&id.rhs).matches('&').count(), 6);
        assert!(build_dn_nary(2, 3).is_err());
    }

    #[test]
    fn radon_partition_counts() {
        for (n, count) in [(0, 1), (1, 3), (2, 7)] {
            assert_eq!(two_block_partitions(n + 2).len(), count);
            let id = build_radon_identity(n);
            assert_eq!(id.free_vars.len(), n + 3);
            assert_eq!(id.mode, Mode::Inequation);
        }
        assert_eq!(
            two_block_partitions(3),
            vec![
                (vec![1, 3], vec![2]),
                (vec![1, 2], vec![3]),
                (vec![1], vec![2, 3]),
            ]
        );
    }

    #[test]
    fn wrapped_variables() {
        let id = wrapped_dn(2).unwrap();
        assert_eq!(id.free_vars, vec!["x", "y1", "y2", "y3", "z"]);
        let id = wrapped_dn_op(2).unwrap();
        assert_eq!(id.free_vars, vec!["x", "y1", "y2", "y3", "zp", "z"]);
    }

    #[test]
    fn builtin_names() {
        for name in [
            "D:2", "Dop:2", "Dnary:1:4", "radon:1", "radon-dual:1", "wrapped-D:2",
            "wrapped-D-pairs:2", "wrapped-D-cojoins:2", "wrapped-Dop:2",
        ] {
            builtin_identity(name).unwrap();
        }
        assert!(builtin_identity("E:2").is_err());
        assert!(builtin_identity("D:x").is_err());
    }
}
