//! Oracle against brute force, and the theorem-level suites.

mod exclusivity;
mod grid;
mod report;
mod suites;

pub use exclusivity::{exclusivity_scan, ExclusivityGrid, ExclusivityReport, Violation};
pub use grid::{odd_prime_subsets, perm_spec, Grid, GridCase, GridCaseSpec, GridFile};
pub use report::{CaseResult, CheckRow, CrossCheckReport, ListedCase, Summary};
pub use suites::{cross_check_simple, main_theorem_check, star_consistency_check, VerifyOptions};
