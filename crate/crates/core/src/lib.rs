// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod geom;
pub mod codec;
pub mod oracle;
pub mod agent;
pub mod generators;
pub mod harness;
