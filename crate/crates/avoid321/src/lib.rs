//! Exact combinatorics of 321-avoiding permutations.
//!
//! The crate enumerates the set `T_n` of 321-avoiding permutations of
//! `{1, …, n}` together with its classical statistics (inversion number,
//! last descent, position of the largest value, descent set of the
//! inverse), builds the associated multivariate generating functions over
//! exact integer arithmetic, and transports everything to Dyck paths
//! through the Robinson–Schensted / gluing / path bijection chain.
//!
//! Everything is computed exactly: polynomials are sparse Laurent
//! polynomials with arbitrary-precision integer coefficients, and the
//! identities relating the statistics (equidistribution per descent
//! class, sign balance, ballot-number Hilbert series) are machine-checked
//! by exhaustive enumeration in the [`verify`] module.

pub mod descent;
pub mod dyck;
pub mod error;
pub mod genfun;
pub mod perm;
pub mod poly;
pub mod tableaux;
pub mod verify;

pub use descent::DescentSet;
pub use dyck::DyckPath;
pub use error::Error;
pub use perm::Permutation;
pub use poly::{LaurentPoly, Monomial, Var};
pub use tableaux::{RectTableau, SytPair, TwoRowTableau};
pub use verify::{CheckId, CheckReport, CheckStatus};

/// Default ceiling for enumeration sizes. `catalan(16)` is about
/// 3.5 × 10⁷, which keeps an accidental `--n 20` from looking like a hang.
pub const DEFAULT_MAX_N: usize = 16;

/// Exact Catalan number; the size of both `T_n` and the set of Dyck paths
/// of length `2n`. Panics for `n > 33` (would overflow `u64`).
pub fn catalan(n: usize) -> u64 {
    assert!(n <= 33, "catalan({n}) does not fit in u64");
    // binomial(2n, n) / (n + 1), kept exact in u128 throughout.
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for k in 1..=n as u128 {
        num *= n as u128 + k;
        den *= k;
    }
    let c = num / den / (n as u128 + 1);
    debug_assert_eq!(c * den * (n as u128 + 1), num);
    c as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_small_values() {
        let expected = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
        for (n, &c) in expected.iter().enumerate() {
            assert_eq!(catalan(n), c);
        }
        assert_eq!(catalan(12), 208_012);
        assert_eq!(catalan(16), 35_357_670);
    }
}
