//! Exact counting of pairs of long cycles in the symmetric group by the cycle
//! type of their product.
//!
//! The crate has two independent routes to every number it reports:
//!
//! * [`recurrence`]: Stirling numbers, the long-cycle count by number of
//!   cycles, the refinement recurrence for `p^{(n)}_λ`, the `1^a 2^b` closed
//!   form and the weighted sums `T_λ`.
//! * [`oracle`]: brute-force enumeration over the symmetric group, with no
//!   knowledge of the recurrences.
//!
//! [`identities`] pits the two against each other, one named check per
//! identity, and reports exact witnesses on failure.

pub mod envelope;
pub mod error;
pub mod identities;
pub mod oracle;
pub mod partition;
pub mod permutation;
pub mod plane;
pub mod recurrence;
pub mod table;

pub use error::{Error, Result};
pub use partition::{parse_partition, partitions_of, Partition, RefinementEdge};
pub use permutation::{parse_permutation, Permutation};
pub use plane::PlanePermutation;
pub use table::{CountTable, ExceedanceProfile, Source};
