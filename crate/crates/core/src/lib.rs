//! Exact obstructions to graded free complexes with finite-length homology.
//!
//! The crate computes the cohomology model `Λ(N)` of spaces of long exact
//! sequences, the transgressions of the associated circle-equivariant Serre
//! spectral sequences, and the resulting Herzog-Kühl type equations on
//! generator degrees. A brute-force oracle over `Q[x_1..x_m]` builds and
//! evaluates concrete complexes to cross-check the equations.

pub mod exterior;
pub mod graded;
pub mod linalg;
pub mod moduli;
pub mod obstructions;
pub mod oracle;
pub mod symmetric;
pub mod transgression;

use std::fmt;

/// Outcome of a check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_ok(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

pub use symmetric::WeightVector;
