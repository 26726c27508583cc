//! Independent checks: labeling properties, reachability, certificates, and a
//! brute-force oracle for tiny sequences.

pub mod certificate;
pub mod oracle;
pub mod temporal;

pub use certificate::{check_certificate, validate_certificate};
pub use oracle::{
    enumerate_realizations, enumerate_sequences, enumerate_sequences_capped,
    oracle_tc_realizable_sequence, OracleCaps, OracleError,
};
pub use temporal::{
    check_proper, check_simple, check_tc, earliest_arrival, is_proper, is_simple, is_tc,
    is_tc_by_arrival, is_tc_nonstrict, ReachabilityTable, Violation,
};
