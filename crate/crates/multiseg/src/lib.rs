//! Combinatorics of integer segments and multisegments: the relevance
//! involution and distinguished multisegments, bounded hypothesis
//! verification, the Zelevinsky involution, ladder classification, Klyachko
//! types and the NC irreducibility criterion for products of ladders.

pub mod cli;
pub mod irreducibility;
pub mod ladders;
pub mod multisegment;
pub mod relevance;
pub mod segment;

pub use cli::{parse_multisegment, ParseError};
pub use irreducibility::{
    excise_min, nc, product_irreducible, product_sp_verdict, IrreducibilityError, NcWitness,
    ProductVerdict,
};
pub use ladders::{
    in_family_f, klyachko_type, klyachko_type_proper, ladder_dual_recursive, zelevinsky_dual,
    KlyachkoType, Ladder, LadderError,
};
pub use multisegment::{totally_disjoint, Multisegment, OrderedMultisegment};
pub use relevance::{
    check_hypothesis_star, check_hypothesis_star_star, decompositions, find_matching,
    is_distinguished, is_relevant, relevant_nontrivial, search_counterexamples, Decomposition,
    DistinguishedVerdict, HypothesisMode, HypothesisVerdict, Matching, SearchBounds,
    SearchFilter, SearchReport,
};
pub use segment::{Segment, SegmentError};
