//! Exact evaluated R-matrices, RLL presentations, skew pairings and PBW checks
//! for the quantum supergroups of gl(V) and osp(V).

pub mod freealg;
pub mod grading;
pub mod gtensor;
pub mod pairing;
pub mod qfield;
pub mod presentations;
pub mod report;
pub mod rmatrix;
pub mod rootdata;
pub mod rootvectors;
pub mod suites;

pub use grading::{Bicharacter, GDegree};
pub use qfield::QRat;
pub use rootdata::{sample_data, Mode, Root, RootDatum, TypeTag, Weight};
