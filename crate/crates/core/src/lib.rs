pub mod arith;
pub mod error;
pub mod poly;
pub mod function_field;
pub mod ratfunc;
pub mod finite_field;
pub mod elliptic;
pub mod heron;
pub mod picard;
pub mod mw;
pub mod fixtures;
pub mod acceptance;
