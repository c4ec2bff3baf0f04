//! Reference rewriting on words of unit letters, one rule application at a
//! time. Slow and simple; used to cross-check [`normal_form`](super::normal_form).

use super::expr::{Letter, Monomial};
use super::presentation::Presentation;
use crate::scalar::Scalar;

/// Expand `g^e` into `|e|` unit letters.
pub fn unit_letters(m: &Monomial) -> Vec<Letter> {
    m.letters()
        .iter()
        .flat_map(|l| std::iter::repeat(Letter::new(l.gen, l.exp.signum())).take(l.exp.unsigned_abs() as usize))
        .collect()
}

/// Every result of applying one rule somewhere in `w`: an out-of-order
/// adjacent swap, or cancellation of `g g^{-1}`.
pub fn single_steps(w: &[Letter], p: &Presentation) -> Vec<(Scalar, Vec<Letter>)> {
    let mut out = Vec::new();
    for i in 0..w.len().saturating_sub(1) {
        let (l, r) = (w[i], w[i + 1]);
        if l.gen == r.gen && l.exp == -r.exp {
            let mut next = w.to_vec();
            next.drain(i..i + 2);
            out.push((Scalar::one(), next));
        } else if l.gen > r.gen {
            let c = p
                .swap_factor(l.gen, r.gen)
                .powi(i64::from(l.exp * r.exp))
                .expect("unit factor");
            let mut next = w.to_vec();
            next.swap(i, i + 1);
            out.push((c, next));
        }
    }
    out
}

/// Rewrite with the first applicable step until none applies, giving up
/// after `limit` steps.
pub fn leftmost_normal_form(
    w: &[Letter],
    p: &Presentation,
    limit: usize,
) -> Option<(Scalar, Vec<Letter>)> {
    let mut coeff = Scalar::one();
    let mut w = w.to_vec();
    for _ in 0..=limit {
        match single_steps(&w, p).into_iter().next() {
            None => return Some((coeff, w)),
            Some((c, next)) => {
                coeff = &coeff * &c;
                w = next;
            }
        }
    }
    None
}

/// Collapse runs of unit letters back into a monomial with exponents.
pub fn compress(w: &[Letter]) -> Monomial {
    let mut out: Vec<Letter> = Vec::new();
    for l in w {
        match out.last_mut() {
            Some(last) if last.gen == l.gen => last.exp += l.exp,
            _ => out.push(*l),
        }
        if out.last().is_some_and(|l| l.exp == 0) {
            out.pop();
        }
    }
    Monomial(out)
}
