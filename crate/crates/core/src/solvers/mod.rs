//! Dense LP, SDP and nonnegative QP engines for small problems.

pub mod lp;
pub mod qp;
pub mod sdp;

use serde::{Deserialize, Serialize};

pub use lp::{solve_lp, LinearProgram, LpReport, Sense};
pub use qp::{qp_kkt_residual, solve_qp_nonneg, QpReport};
pub use sdp::{solve_sdp, LinConstraint, SdpProblem, SdpReport, SparseSym};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolveStatus {
    Optimal,
    Infeasible,
    Unbounded,
    MaxIter,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Minimize,
    Maximize,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::Minimize => 1.0,
            Direction::Maximize => -1.0,
        }
    }
}
