//! Temporally connected realizations of degree sequences.
//!
//! Given a degree sequence, decide whether some simple graph (or loopless
//! multigraph) with those degrees admits a proper, simple time labeling under
//! which every vertex can reach every other along a path of strictly
//! increasing labels. When it does, build such a graph in linear time,
//! together with a two-tree certificate and the labeling.
//!
//! ```
//! use tcreal_core::{realize_tc, DegreeSequence, Mode, TcOutcome};
//!
//! let d: DegreeSequence = "3 3 3 3".parse().unwrap();
//! match realize_tc(&d, Mode::Simple).unwrap() {
//!     TcOutcome::Realized(r) => assert_eq!(r.graph.edge_count(), 6),
//!     TcOutcome::NotRealizable(_) => unreachable!(),
//! }
//! ```

pub mod degseq;
pub mod graphstore;
pub mod labeling;
pub mod realize;
pub mod verify;

pub use degseq::{DegSeqError, DegreeSequence};
pub use graphstore::{
    Certificate, CertificateKind, Edge, GraphError, GraphFile, LabeledMultigraph, Mode, OpStats,
    TreeFlags,
};
pub use labeling::{label_plain_tree, pivot_label, LabelingError, TemporalLabeling};
pub use realize::{
    build_c4_pivotable, build_c4_pivotable_multi, build_one_shared, build_one_shared_multi,
    build_two_edst, build_two_edst_multi, check_nonstrict, check_tc_realizable, realize_nonstrict,
    realize_tc, realize_tc_with, BuildOptions, Decision, NonStrictOutcome, NonStrictRealization,
    Realization, RealizeError, Reason, TcOutcome,
};
