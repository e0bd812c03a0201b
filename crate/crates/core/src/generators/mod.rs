//! Instance families: the greedy-hard problem I, random coverable k-set
//! instances, planted-optimum instances, and the pinned random corpus.

pub mod corpus;
pub mod known_opt;
pub mod problem_i;
pub mod random;

pub use corpus::{corpus, corpus_instance, corpus_params, CORPUS_SIZE};
pub use known_opt::gen_known_opt;
pub use problem_i::{gen_problem_i, ProblemI, ProblemIParams};
pub use random::{gen_random_k_cover, RandomParams};
