//! Order complexes, integral homology, Lefschetz numbers and contractibility verdicts.

mod complex;
mod homology;
mod lefschetz;
mod matrix;
mod verdict;

pub use self::complex::{order_complex, SimplicialComplex, DEFAULT_FACE_BUDGET};
pub use self::homology::{
    boundaries, boundary_matrix, euler_characteristic, homology, is_point_homology, HomologyGroup,
};
pub use self::lefschetz::lefschetz_number;
pub use self::matrix::{smith_normal_form, IntMatrix, SmithForm};
pub use self::verdict::{contractibility_verdict, ComponentReport, Verdict, VerdictOptions};
