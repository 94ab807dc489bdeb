pub mod arith;
pub mod bounds;
pub mod citation;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod finite_poly;
pub mod fixtures;
pub mod intpoly;
pub mod report;
pub mod reproduce;
pub mod tower;
pub mod warnings;
