//! Exact symbolic kernel for (q,t)-difference operators acting on Laurent
//! polynomials in x_1..x_N, together with the shuffle-algebra, current-algebra
//! and q-determinant identity suites they satisfy, all at desk scale (N ≤ 4).

pub mod coeff;
pub mod currents;
pub mod daha;
pub mod frac;
pub mod macops;
pub mod report;
pub mod mpoly;
pub mod ops;
pub mod polyx;
pub mod shuffle;

/// Placeholder CLI entry point; replaced by the full command parser once the
/// suites are in place.
pub fn run_cli() -> i32 {
    eprintln!("CLI not yet wired");
    2
}
