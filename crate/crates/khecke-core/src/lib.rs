//! Computational engine for Hecke insertion and K-theoretic tableau
//! combinatorics: the K-Knuth monoid with bounded equivalence checking,
//! a bialgebra on K-Knuth classes of increasing tableaux, truncated
//! stable Grothendieck polynomials, and both K-theoretic
//! Littlewood–Richardson rules with cross-verification against
//! polynomial arithmetic.

pub mod genfun;
pub mod insertion;
pub mod kknuth;
pub mod kpr;
pub mod lr;
pub mod poly;
pub mod shape;
pub mod tableau;
pub mod word;

pub use genfun::{
    coproduct_g, expand_in_g, fundamental_l, grothendieck_g, j_from_insertion, phi_class,
    substitute_neg_geometric, weak_j, GExpansion, GenFunError, PhiImage,
};

pub use insertion::{
    insert_letter, insert_word, p_tableau, reverse_insert, reverse_word, InsertionError,
    InsertionOutcome, RecordingTableau,
};
pub use kknuth::{
    are_neighbors, class_slice, default_equivalence_bound, distinct_certificate, equivalent,
    equivalent_tableaux, is_urt, relation_neighbors, ClassSlice, DistinctCertificate, KKnuthError,
    TableauClass, UrtStatus, Verdict,
};
pub use lr::{
    dual_lr_coefficient, fillings_inserting_to, lr_coefficient, lr_table, verify_coproduct_rule,
    verify_product_rule, Agreement, LRError, LRQuery, LRReport, Mismatch, UrtChoice,
    URT_CERTIFICATION_BOUND,
};
pub use kpr::{
    class_coproduct, class_product, shifted_shuffle, shuffle, urt_class_coproduct,
    urt_class_product, word_coproduct, CoproductExpansion, KPRClass, KprError, ProductExpansion,
    TensorTerm,
};
pub use poly::{BiTruncatedPoly, Monomial, PolyError, TruncatedPoly};
pub use shape::{direct_sum_shape, Composition, Partition, ShapeError, SkewShape};
pub use tableau::{
    for_each_increasing_filling, for_each_set_valued_tableau, for_each_straight_tableau,
    for_each_weak_set_valued_tableau, increasing_fillings, minimal_tableau,
    standardize_weak_tableau, straight_tableaux_with_support, superstandard_tableau,
    IncreasingTableau, SetValuedTableau, TableauError, WeakSetValuedTableau,
};
pub use word::{Letter, Word, WordError};
