//! Phylogenetic semigroups on finite multigraphs.
//!
//! The semigroup of a graph consists of graded non-negative integer edge
//! labelings subject to parity and homogenized parity-polytope conditions at
//! every inner vertex; on trees it is the affine semigroup of the binary
//! symmetric (Jukes-Cantor) model. This crate builds the graphs, decides
//! membership, enumerates graded elements and networks, computes minimal
//! generating sets up to a degree cap by exhaustive search, implements
//! closed-form characterizations of low-degree minimal generators, and
//! provides constructive decompositions into indecomposable elements.

pub mod classify;
pub mod decompose;
pub mod family;
pub mod generators;
pub mod graph;
pub mod io;
pub mod semigroup;

pub use family::family;
pub use graph::{AssociatedTree, CutResult, Edge, Graph, GraphError, PolygonCore, Refinement, Suppression};
pub use semigroup::{Labeling, LocalPaths, LocalView, SemigroupError, Violation};
