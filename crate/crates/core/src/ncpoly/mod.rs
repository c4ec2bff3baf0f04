//! Exact noncommutative polynomials over q-commutation presentations.

mod expr;
mod hom;
mod normal;
pub mod oracle;
mod parse;
mod presentation;

pub use expr::{Letter, Monomial, NCExpr, TensorMonomial};
pub use hom::{
    check_hom, coassoc_check, coassoc_words, Character, CheckReport, Hom, IdentityCheck,
};
pub use normal::{mul, normal_form, normalize_monomial, pow, rewrite_budget, star};
pub use parse::parse_expr;
pub use presentation::{Adjoint, GenId, Generator, Presentation, Rule, RuleKind};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The scalar `c` with `e1 = c * e2` in the quotient algebra.
///
/// Both sides are normal-ordered first; `e2` must be nonzero and the
/// quotient must be a unit times a single term's coefficient.
pub fn scalar_ratio(e1: &NCExpr, e2: &NCExpr, p: &Presentation) -> Result<Scalar> {
    let n1 = normal_form(e1, p)?;
    let n2 = normal_form(e2, p)?;
    let fail = || {
        Error::NonScalarRatio(format!("{} / {}", n1.display(p), n2.display(p)))
    };
    let (key, c2) = n2.terms().next().ok_or_else(fail)?;
    let c1 = n1.coefficient(key);
    let ratio = c1.checked_div(c2).ok_or_else(fail)?;
    if n1.sub(&n2.scale(&ratio)).is_zero() {
        Ok(ratio)
    } else {
        Err(fail())
    }
}
