//! Synthesis of minimal-stage binary machines that emit a given binary
//! sequence `p` bits per clock cycle, with LFSR baselines to compare
//! against.
//!
//! The pipeline is [`sequence::encode_m_ary`] (regroup bits into radix
//! `2^p` digits), [`synth::synthesize_machine`] (state assignment and the
//! m-ary machine), [`machine::binarize`] (binary stages) and
//! [`logic::machine_cost`].

pub mod baselines;
pub mod cli;
pub mod logic;
pub mod machine;
pub mod sequence;
pub mod synth;
