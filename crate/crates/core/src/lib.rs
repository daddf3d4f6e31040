//! Seifert fibered spaces over S², their star-shaped plumbings and lattice
//! embeddings, and double-slice verdicts for Montesinos and pretzel links.

pub mod classifier;
pub mod error;
pub mod expr;
pub mod factor;
pub mod lattice;
pub mod matrix;
pub mod montesinos;
pub mod partitions;
pub mod plumbing;
pub mod rational;
pub mod seifert;
pub mod smith;

pub use classifier::{
    bounds_QHS1xB3, embeds_in_ZHS1xS3, expansion_reduce, pair_up, paired_normal_form, EmbedVerdict,
    EmbedWitness, PairClass,
};
pub use error::{Error, Result};
pub use expr::{parse_expression, Expr, ParseError};
pub use factor::{enumerate_factorizations, ArmHint, Factorization};
pub use lattice::{torsion_image_test, ArmPartition, ObstructionWitness, PairedPlumbing};
pub use matrix::{semidefiniteness, Definiteness, IntMatrix, MatrixJson};
pub use montesinos::{
    classify_4strand_pretzel, component_count, double_branched_cover, slice_verdict,
    MontesinosLink, PretzelVerdict, SliceVerdict, StrongDs, WeakDs,
};
pub use partitions::{admissible_partitions, weak_ds_orientation_filter, LinkData, PartitionPair};
pub use plumbing::{star_plumbing, KernelVector, PlumbingGraph};
pub use rational::{denominator_sequence, neg_cf_eval, neg_cf_expand, NegCF, Rational};
pub use seifert::{AbelianGroup, SeifertInvariants};
