//! Hecke insertion, growth diagrams for 01-fillings, K-jeu de taquin, K-Knuth equivalence,
//! and a bijection on fillings of stack polyominoes that preserves the numbers of ne- and
//! se-chains, together with its specialisation to linked partitions.

pub mod bijection;
pub mod error;
pub mod fixtures;
pub mod growth;
pub mod hecke;
pub mod jdt;
pub mod knuth;
pub mod linked;
pub mod polyomino;
pub mod tableau;
pub mod verify;

pub use bijection::{MoveCertificate, RectangleFilling};
pub use error::{Error, Result};
pub use growth::{BinaryGrid, Border, GrowthDiagram, SquareConfig};
pub use hecke::{HeckePair, InsertionResult};
pub use jdt::CornerSet;
pub use knuth::{EquivBudget, Verdict};
pub use linked::{BorderSequence, LinkedPartition};
pub use polyomino::{ChainStats, Filling, GenPoly, Mode, Polyomino, Pos, Rect, RowSpec, Shard};
pub use tableau::{Cell, IncreasingTableau, Partition, SetValuedTableau, SkewIncreasingTableau, Word};
pub use verify::{Check, RunReport, Suite, VerifyParams};
