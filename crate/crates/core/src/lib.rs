//! Lexical-semantic net toolkit: loading and querying a WordNet-style net,
//! corpus coverage and ambiguity statistics, sense disambiguation, semantic
//! tagging, relation extraction, compound splitting and section recognition.

pub mod compound;
pub mod corpus;
pub mod coverage;
pub mod disambig;
pub mod lexnet;
pub mod normalize;
pub mod relations;
pub mod sections;
pub mod semtag;
mod xml;

pub use corpus::{Document, SectionKind, Token};
pub use lexnet::{LexNet, LoadError, LookupOptions, SenseCandidate, SenseCandidateSet, WordClass};
