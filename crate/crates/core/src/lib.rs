//! Symbolic reduction, elimination and solution of class equations, with a
//! finite-model checker for syllogistic forms.

pub mod expand;
pub mod minimize;
pub mod oracle;
pub mod pipeline;
pub mod poly;
pub mod report;
pub mod syllogism;
