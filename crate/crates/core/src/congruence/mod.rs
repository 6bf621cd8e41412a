//! Matrix oracles, congruence arithmetic and the quotient of the Farey
//! complex by the principal congruence subgroup.

mod farey;
mod modular;
mod ns;
mod relations;
mod words;

pub use farey::{
    farey_quotient, farey_quotient_with_limit, projective_primitive_count, FareyStats,
};
pub use modular::{sl2_mod_order, sl2_mod_order_with_limit, MOD_LIMIT};
pub use ns::{n_s_structure, NsStructure};
pub use relations::relation_search;
pub use words::{
    format_word, free_reduce, invert_word, power_word, word_to_matrix, TwistRelation, Word,
    WordLetter,
};

#[cfg(test)]
pub(crate) use words::{evaluate, letter_matrices};
