//! Concrete groups, duals and bicharacters: the continuous group over `C`,
//! its analog over `Z/n`, characters of `C*` and the bicharacters used for
//! twisting.

mod bichar;
mod continuous;
mod dual;
mod finite;

pub use bichar::{
    antisymmetry_check, bichar_eval, biplicativity_check, cocycle_check, fit_lambda,
    lambda_constant, BicharArg, Bicharacter, FiniteBichar, SampledResidual, BICHAR_TOLERANCE,
    LAMBDA_GRID,
};
pub use continuous::{haar_grid_oracle, modular, GroupElement, HaarOracle, DEFAULT_MODULAR_EXPONENT};
pub use dual::{gamma_t, pair, principal_arg, DualChar, DEFAULT_GAMMA_KAPPA};
pub use finite::{root_of_unity, FinGroup, FinGroupElement, GroupExchange, KDual, MAX_MODULUS};
