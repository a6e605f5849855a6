pub mod exactnum;
pub mod polyring;
pub mod projgroup;
pub mod smoothcert;
pub mod invartheory;
pub mod diffmethod;
pub mod stabkit;
pub mod catalog;

mod decimal;
