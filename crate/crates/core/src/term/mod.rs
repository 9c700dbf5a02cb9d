//! Lattice terms, identities, and their checking.

pub mod ast;
pub mod builders;
pub mod check;
pub mod parse;

pub use ast::{dualize, wrap, Automatic, Identity, LatticeTerm, Mode, WrapError, HOLE};
pub use builders::{
    build_dn, build_dn_nary, build_dn_op, build_radon_identity, builtin_identity, BuildError,
};
pub use check::{
    check, check_jsd, check_njsd, check_nmsd, evaluate, falsify, CheckError, CheckReport, Dual,
    FalsifyReport, LatticeHandle, Verdict,
};
pub use parse::{parse_identity, parse_term, print_term, ParseError};
