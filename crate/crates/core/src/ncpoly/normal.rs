//! Normal ordering by adjacent q-commutation swaps.

use super::expr::{Letter, Monomial, NCExpr};
use super::presentation::{Adjoint, Presentation};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Rewrite budget for a word of `length` unit letters.
pub fn rewrite_budget(length: usize) -> usize {
    length.max(1).pow(2) * 64
}

fn validate(m: &Monomial, p: &Presentation) -> Result<()> {
    for l in m.letters() {
        let g = p
            .generator(l.gen)
            .ok_or_else(|| Error::UnknownGenerator(format!("#{}", l.gen)))?;
        if l.exp < 0 && !g.invertible {
            return Err(Error::NonInvertiblePower(g.name.clone()));
        }
    }
    Ok(())
}

/// Normal-order a single word, returning the accumulated scalar and the
/// normal monomial.
///
/// Works on letters with exponents: swapping `g^e h^f` (g after h) costs
/// `c^{ef}` where `g h -> c h g`; equal neighbours merge and cancel.
pub fn normalize_monomial(m: &Monomial, p: &Presentation) -> Result<(Scalar, Monomial)> {
    validate(m, p)?;
    let length = m.length();
    let budget = rewrite_budget(length);
    let mut letters: Vec<Letter> = m.letters().iter().copied().filter(|l| l.exp != 0).collect();
    let mut coeff = Scalar::one();
    let mut steps = 0usize;
    let mut i = 0usize;
    while i + 1 < letters.len() {
        let (l, r) = (letters[i], letters[i + 1]);
        if l.gen < r.gen {
            i += 1;
            continue;
        }
        steps += 1;
        if steps > budget {
            return Err(Error::RewriteBudget { budget, length });
        }
        if l.gen == r.gen {
            let exp = l.exp + r.exp;
            if exp == 0 {
                letters.drain(i..i + 2);
            } else {
                letters[i].exp = exp;
                letters.remove(i + 1);
            }
        } else {
            let c = p.swap_factor(l.gen, r.gen);
            let power = c
                .powi(i64::from(l.exp) * i64::from(r.exp))
                .expect("rule factors are units");
            coeff = &coeff * &power;
            letters.swap(i, i + 1);
        }
        i = i.saturating_sub(1);
    }
    Ok((coeff, Monomial(letters)))
}

/// Normal form of an expression of any arity, factor by factor.
pub fn normal_form(e: &NCExpr, p: &Presentation) -> Result<NCExpr> {
    let mut out = NCExpr::zero(e.arity());
    for (factors, c) in e.terms() {
        let mut coeff = c.clone();
        let mut normal = Vec::with_capacity(factors.len());
        for m in factors {
            let (k, nm) = normalize_monomial(m, p)?;
            coeff = &coeff * &k;
            normal.push(nm);
        }
        out.add_term(normal, &coeff);
    }
    Ok(out)
}

/// Normal form of the product `e1 * e2`.
pub fn mul(e1: &NCExpr, e2: &NCExpr, p: &Presentation) -> Result<NCExpr> {
    normal_form(&e1.concat(e2)?, p)
}

/// `e^k` for `k >= 0`, normal-ordered.
pub fn pow(e: &NCExpr, k: u32, p: &Presentation) -> Result<NCExpr> {
    let mut acc = NCExpr::one(e.arity());
    for _ in 0..k {
        acc = mul(&acc, e, p)?;
    }
    Ok(acc)
}

fn star_monomial(m: &Monomial, p: &Presentation) -> Result<Monomial> {
    let mut out = Vec::with_capacity(m.letters().len());
    for l in m.letters().iter().rev() {
        let g = p
            .generator(l.gen)
            .ok_or_else(|| Error::UnknownGenerator(format!("#{}", l.gen)))?;
        out.push(match g.adjoint {
            Adjoint::SelfAdjoint => *l,
            Adjoint::Partner(h) => Letter::new(h, l.exp),
            Adjoint::Unitary => Letter::new(l.gen, -l.exp),
        });
    }
    Ok(Monomial(out))
}

/// The `*`-involution: reverses words, maps letters to adjoints and
/// conjugates coefficients. Acts factorwise on tensor expressions.
pub fn star(e: &NCExpr, p: &Presentation) -> Result<NCExpr> {
    let mut out = NCExpr::zero(e.arity());
    for (factors, c) in e.terms() {
        let starred = factors
            .iter()
            .map(|m| star_monomial(m, p))
            .collect::<Result<Vec<_>>>()?;
        out.add_term(starred, &c.conj());
    }
    normal_form(&out, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::presentation::{Generator, Rule, RuleKind};

    // b* < b < a < a*, the q-triangular presentation rebuilt locally so the
    // engine tests do not depend on the qgroup module.
    fn qtriag() -> Presentation {
        let q = Scalar::q();
        let rule = |left, right, factor: Scalar| Rule {
            left,
            right,
            factor,
            kind: RuleKind::Defining,
        };
        Presentation::new(
            "qtriag",
            vec![
                Generator::new("bs", false, Adjoint::Partner(1)),
                Generator::new("b", false, Adjoint::Partner(0)),
                Generator::new("a", true, Adjoint::Partner(3)),
                Generator::new("as", true, Adjoint::Partner(2)),
            ],
            vec![
                rule(1, 0, Scalar::one()),
                rule(2, 0, q.clone()),
                rule(2, 1, Scalar::one()),
                rule(3, 0, Scalar::one()),
                rule(3, 1, q.inverse().unwrap()),
                rule(3, 2, Scalar::one()),
            ],
        )
        .unwrap()
    }

    const BS: usize = 0;
    const B: usize = 1;
    const A: usize = 2;
    const AS: usize = 3;

    fn word(pairs: &[(usize, i32)]) -> NCExpr {
        NCExpr::monomial(Monomial::from_pairs(pairs))
    }

    #[test]
    fn ab_commutes() {
        let p = qtriag();
        let nf = normal_form(&word(&[(A, 1), (B, 1)]), &p).unwrap();
        assert_eq!(nf, word(&[(B, 1), (A, 1)]));
    }

    #[test]
    fn identity_and_inverse() {
        let p = qtriag();
        assert_eq!(normal_form(&NCExpr::one(1), &p).unwrap(), NCExpr::one(1));
        let nf = normal_form(&word(&[(A, 1), (A, -1)]), &p).unwrap();
        assert_eq!(nf, NCExpr::one(1));
    }

    #[test]
    fn a_squared_bstar() {
        let p = qtriag();
        let nf = normal_form(&word(&[(A, 2), (BS, 1)]), &p).unwrap();
        let expected = word(&[(BS, 1), (A, 2)]).scale(&Scalar::q().powi(2).unwrap());
        assert_eq!(nf, expected);
    }

    #[test]
    fn negative_power_of_b_is_rejected() {
        let p = qtriag();
        let err = normal_form(&word(&[(B, -1)]), &p).unwrap_err();
        assert_eq!(err, Error::NonInvertiblePower("b".into()));
    }

    #[test]
    fn unknown_generator_is_rejected() {
        let p = qtriag();
        let err = normal_form(&word(&[(7, 1)]), &p).unwrap_err();
        assert!(matches!(err, Error::UnknownGenerator(_)));
    }

    #[test]
    fn mul_examples() {
        let p = qtriag();
        let ba = mul(&word(&[(BS, 1)]), &word(&[(A, 1)]), &p).unwrap();
        assert_eq!(ba, word(&[(BS, 1), (A, 1)]));
        let ab = mul(&word(&[(A, 1)]), &word(&[(BS, 1)]), &p).unwrap();
        assert_eq!(ab, word(&[(BS, 1), (A, 1)]).scale(&Scalar::q()));
    }

    #[test]
    fn tensor_mul_is_factorwise() {
        let p = qtriag();
        let a = Monomial::letter(A, 1);
        let left = NCExpr::tensor(vec![a.clone(), a.clone()]);
        let right = NCExpr::tensor(vec![Monomial::letter(B, 1), Monomial::letter(A, -1)]);
        let prod = mul(&left, &right, &p).unwrap();
        let expected = NCExpr::tensor(vec![Monomial::from_pairs(&[(B, 1), (A, 1)]), Monomial::one()]);
        assert_eq!(prod, expected);
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let p = qtriag();
        let err = mul(&NCExpr::one(1), &NCExpr::one(2), &p).unwrap_err();
        assert_eq!(err, Error::ArityMismatch { left: 1, right: 2 });
    }

    #[test]
    fn star_examples() {
        let p = qtriag();
        let s = star(&word(&[(A, 1), (BS, 1)]), &p).unwrap();
        assert_eq!(s, word(&[(B, 1), (AS, 1)]));
        let i = NCExpr::scalar(Scalar::i(), 1);
        assert_eq!(star(&i, &p).unwrap(), NCExpr::scalar(-Scalar::i(), 1));
    }

    #[test]
    fn starred_relation_vanishes() {
        let p = qtriag();
        let rel = word(&[(A, 1), (BS, 1)]).sub(&word(&[(BS, 1), (A, 1)]).scale(&Scalar::q()));
        assert!(normal_form(&rel, &p).unwrap().is_zero());
        assert!(star(&rel, &p).unwrap().is_zero());
    }

    #[test]
    fn budget_is_quadratic() {
        assert_eq!(rewrite_budget(3), 9 * 64);
        assert_eq!(rewrite_budget(0), 64);
    }
}
