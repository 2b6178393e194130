//! gcd graphs of factorial commutative semigroups and graph minors.
//!
//! A finite subset `M` of a factorial commutative semigroup `S` determines
//! a graph on `M` in which `x` and `y` are adjacent when `gcd(x, y)` is not
//! a unit. This crate builds those graphs, realizes arbitrary graphs as
//! such sets, decides the minor relation exactly (with branch-set
//! witnesses), and turns a minor witness between two gcd graphs into the
//! corresponding partition of the larger set, checking its gcd and chain
//! conditions.
//!
//! Modules:
//!
//! * [`semigroup`]: factored elements, `gcd`, units, the naturals and free
//!   backends.
//! * [`graph`]: simple graphs, components, isomorphism.
//! * [`minor`]: branch-set search and the delete/contract oracle.
//! * [`correspondence`]: gcd graphs and graph realization.
//! * [`theorem`]: pair colourings of set sequences and partition
//!   construction/verification.
//! * [`cli`]: the `gcdminor` command line.

pub mod cli;
pub mod correspondence;
pub mod graph;
pub mod minor;
pub mod semigroup;
pub mod theorem;

pub use correspondence::{build_gcd_graph, realize_graph, GcdGraph, Realization};
pub use graph::{are_isomorphic, SimpleGraph, VertexLabel};
pub use minor::{
    find_minor_embedding, minor_by_operations, verify_embedding, MinorEmbedding, MinorOperation, MinorSearch,
};
pub use semigroup::{factorize, Backend, FactoredElement, PrimeSymbol, SemigroupContext};
