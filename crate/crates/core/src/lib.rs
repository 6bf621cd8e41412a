//! Subgroups of the torus mapping class group SL(2, Z) generated by powers
//! of Dehn twists: Euclidean reduction, ping-pong freeness certificates,
//! the slide-expansion procedure, parity oracles and congruence data.

pub mod classify;
pub mod congruence;
pub mod criteria;
pub mod error;
pub mod euclid;
pub mod homology;
mod intser;
pub mod pingpong;

pub use classify::{
    classify, classify_pair_collection, classify_three_uniform, classify_two,
    express_twist_in_squares, h_membership, Cardinality, GroupType, HConfig, PresentationKind,
    Verdict, Witness,
};
pub use congruence::{
    farey_quotient, n_s_structure, relation_search, sl2_mod_order, word_to_matrix, FareyStats,
    NsStructure, TwistRelation, Word, WordLetter,
};
pub use criteria::{
    check_comparable, check_proportional, is_comparable, is_proportional, ob1_exception,
    InequalityRecord, Triple, TwistCollection,
};
pub use error::{Error, Result};
pub use euclid::{euclid_reduce, reduce_step, ReductionMove, StepOutcome, Transcript};
pub use homology::{
    curve_from_vector, geo, intersection, normalize_pair, twist_apply, twist_matrix, Curve,
    HVector, Intersection, Mat2, NormalizedPair, TwistPower,
};
pub use pingpong::{
    pingpong_certificate, procedure_run, slide_expand, FreenessCertificate, PingPong,
    ProcedureConfig, ProcedureOutcome,
};
