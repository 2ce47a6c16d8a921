//! Solvers for `X ×_0 A_0 + X ×_1 A_1 + X ×_2 A_2 = F`: ADI shifts, dense
//! and factored ADI, the tensor-train and Tucker low-rank solvers, and two
//! dense reference solvers.

pub mod adi;
pub mod kron;
pub mod oracles;
pub mod problem;
pub mod residual;
pub mod shifts;
pub mod tt_solver;
pub mod tucker_solver;

pub use adi::{adi_history, adi_solve, fadi_column_space, fadi_solve, FadiFactors, ShiftedSolver};
pub use kron::{shifted_kron_solve, KronSum};
pub use oracles::{direct_kron_solve_3d, eigen_solve_3d, DIRECT_SIZE_CAP, EIGEN_MODE_CAP};
pub use problem::SylvesterProblem3D;
pub use residual::{residual_3d, ResidualTarget};
pub use shifts::{adi_shifts_disk, adi_shifts_interval, shifts_for_pair, ShiftSchedule};
pub use tt_solver::{tt_sylvester_solve_3d, tt_sylvester_solve_3d_with_info, SolveInfo};
pub use tucker_solver::{tucker_sylvester_solve_3d, tucker_sylvester_solve_3d_with_info};
