//! Special functions: complex gamma, Pochhammer symbol and the Gauss
//! hypergeometric function with its connection formulas.

pub mod gamma;
pub mod hyp2f1;

pub use gamma::{gamma, pochhammer, rgamma, sinpi};
pub use hyp2f1::{
    connection_constants, dalembert_identity_check, fundamental_pair, ghf_derivative, ghf_eval,
    ghf_kummer_infinity, ghf_kummer_one, ghf_pfaff, ghf_principal, ghf_series,
    kummer_infinity_basis, kummer_infinity_constants, kummer_one_basis, kummer_one_constants,
    one_minus_pow, principal_pow, select_route, ConnectionConstants, FundamentalPair, GhfParams,
    Route,
};
