//! Exact t-expansions of Drinfeld modular forms over F_p[θ], the degree-one
//! Hecke operator, and closed-form coefficient families of power-eigenvalue
//! eigenforms.

pub mod carlitz;
pub mod eigencoeff;
pub mod error;
pub mod field;
pub mod forms;
pub mod hecke;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod rat;
pub mod series;

pub use error::{Error, Result};
pub use field::{binom_mod_p, PrimeField};
pub use parse::{parse_poly, parse_ratk};
pub use poly::PolyA;
pub use rat::RatK;
pub use series::{Meta, SeriesJson, TSeries};
