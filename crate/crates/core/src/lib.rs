//! Hashed-path TSP: the routes of a complete weighted graph are written out
//! as strings (`A1B2C3D4` for A→B→C→D→A with costs 1,2,3,4), hashed, and the
//! route with the lexicographically smallest digest is sought.
//!
//! Modules:
//! - [`instance`]: instances, random generation, JSON files
//! - [`route`]: rank-ordered route enumeration, route-string encoding, digest order
//! - [`hash`]: hash backends (SHA-1 from scratch, SHA-256) and length extension
//! - [`verifier`]: certificate checking with step accounting
//! - [`search`]: exhaustive parallel solver, decision form, TSP branch and bound
//! - [`lab`]: avalanche, leak, length-extension and bucket experiments

pub mod digest;
pub mod hash;
pub mod instance;
pub mod lab;
pub mod route;
pub mod search;
pub mod stats;
pub mod verifier;

pub use digest::Digest;
pub use instance::{generate_random_instance, load_instance, make_example_instance, save_instance, Instance, TspQuery};
pub use route::{compare_digests, encode_route, enumerate_routes, rank_to_route, route_to_rank, EncodedRoute, Route};
pub use search::{decide_hptsp, solve_hptsp, solve_tsp_branch_and_bound, SearchConfig, SolveResult, TspResult};
pub use verifier::{verify, Certificate, Rejection, VerifyReport};

/// The 24 (route, route string, SHA-1 digest) rows of the four-city example,
/// in the order they are usually tabulated.
pub const GOLDEN_TABLE: [(&str, &str, &str); 24] = [
    ("ABCD", "A1B2C3D4", "897ca6fcdeed5883fd7bd85eae55406ac81d9d74"),
    ("ABDC", "A1B6D3C5", "2bc9a32bd7d7898bbb7ac99fdcc23d3891133c08"),
    ("ADBC", "A4D6B2C5", "a89b60d452e3c315f456f2095516695cb70abd61"),
    ("DABC", "D4A1B2C3", "d315c57519eda431bdc382a5b80e72e22b6e1ec7"),
    ("ACBD", "A5C2B6D4", "28a6a5675fdb532f01adfb98283463808f99008d"),
    ("ACDB", "A5C3D6B1", "1d3eadcc4495af0d49be4a05181b46375743e4f1"),
    ("ADCB", "A4D3C2B1", "981cfa7c4a720a33fb6935b7d40863b16723f26a"),
    ("DACB", "D4A5C2B6", "aaa25da8ee5d45643185901587ff2916a807aa48"),
    ("CABD", "C5A1B6D3", "4a0a19a780c292d3fb11be5e79f113f7467a9b18"),
    ("CADB", "C5A4D6B2", "4873e0be21d8d061e6c58ad0cc2c3190108884bd"),
    ("CDAB", "C3D4A1B2", "73fa14f1c14e67dffae49aa19dde0a2754d67c3a"),
    ("DCAB", "D3C5A1B6", "0274a90142fff8495ee8fc6309bbea1abe6fe9db"),
    ("BACD", "B1A5C3D6", "4ee28c970941442744512cedeff440a3292f6c53"),
    ("BADC", "B1A4D3C2", "56ed850a77ee2042c5d0994457e6bd24ae1c9920"),
    ("BDAC", "B6D4A5C2", "38d6c1b303a5adccc0b94d040df2c500affd8c1d"),
    ("DBAC", "D6B1A5C3", "67781a7d43eb3c697dae423d7ac65b276b8f1cfd"),
    ("BCAD", "B2C5A4D6", "a0e5014b5714b581faf87e0e19060d18bec3e97e"),
    ("BCDA", "B2C3D4A1", "b2c86b8344548157bbfa294368d6b3a2cb01ec41"),
    ("BDCA", "B6D3C5A1", "9791f10967c97732cdec796911c6a96986f12985"),
    ("DBCA", "D6B2C5A4", "9d6b2df207612a83f6809ae9642894eb706ecc53"),
    ("CBAD", "C2B1A4D3", "0f0b6126cf3663d128ee2d0d7298922c36c13adf"),
    ("CBDA", "C2B6D4A5", "a7a4a0c5071801d987e2e3178de47275e035be9a"),
    ("CDBA", "C3D6B1A5", "2d46e345d8cea638bd3dbb4ee1b5c85b1473a340"),
    ("DCBA", "D3C2B1A4", "ba2a8b3e5f4054015c82bec30f03392765e24720"),
];
