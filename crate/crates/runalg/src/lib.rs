//! Run algebras of the symmetric group over exact rationals.
//!
//! The crate constructs the descent algebra, the subalgebras spanned by
//! alternating-run and peak class sums, their noncommutative-symmetric-
//! function series, and the resulting orthogonal idempotents, and provides
//! machinery to certify the defining identities exactly at small degree.

pub mod bijection;
pub mod combinatorics;
pub mod descent_algebra;
pub mod group_algebra;
pub mod linalg;
pub mod nsym;
pub mod rat;
pub mod run_algebras;
pub mod sym;

pub use combinatorics::{Composition, Partition, Permutation};
pub use descent_algebra::{Basis, DescentElement, Side};
pub use group_algebra::GAElement;
pub use nsym::NSymSeries;
pub use rat::Rat;
pub use sym::SymElement;
