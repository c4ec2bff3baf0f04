use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Index of a generator inside its [`Presentation`]. The index order is
/// the normal-ordering precedence: smaller indices go further left.
pub type GenId = usize;

/// How a generator behaves under the `*`-involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Adjoint {
    /// `g* = g` (positive or self-adjoint generators).
    SelfAdjoint,
    /// `g*` is another generator of the presentation.
    Partner(GenId),
    /// `g* = g^{-1}`.
    Unitary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub invertible: bool,
    pub adjoint: Adjoint,
}

impl Generator {
    pub fn new(name: &str, invertible: bool, adjoint: Adjoint) -> Self {
        Self {
            name: name.to_string(),
            invertible,
            adjoint,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleKind {
    Defining,
    Normality,
    Derived,
}

/// `left * right -> factor * right * left`, with `left` after `right` in
/// the generator order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub left: GenId,
    pub right: GenId,
    pub factor: Scalar,
    pub kind: RuleKind,
}

/// Generators plus one q-commutation rule for every out-of-order pair.
///
/// Every rule swaps a pair and multiplies by a unit scalar, so rewriting
/// terminates (it is a bubble sort) and is confluent for any total order
/// of the generators. Both facts are also exercised as tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    name: String,
    generators: Vec<Generator>,
    rules: Vec<Rule>,
    // swap_table[left][right] = index into `rules`
    swap_table: Vec<Vec<Option<usize>>>,
}

impl Presentation {
    pub fn new(name: &str, generators: Vec<Generator>, rules: Vec<Rule>) -> Result<Self> {
        let n = generators.len();
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::InvalidPresentation(format!("duplicate generator `{}`", g.name)));
            }
            match g.adjoint {
                Adjoint::SelfAdjoint => {}
                Adjoint::Unitary => {
                    if !g.invertible {
                        return Err(Error::InvalidPresentation(format!(
                            "unitary generator `{}` must be invertible",
                            g.name
                        )));
                    }
                }
                Adjoint::Partner(j) => {
                    let partner = generators.get(j).ok_or_else(|| {
                        Error::InvalidPresentation(format!("adjoint of `{}` out of range", g.name))
                    })?;
                    if j == i || partner.adjoint != Adjoint::Partner(i) {
                        return Err(Error::InvalidPresentation(format!(
                            "adjoint pairing of `{}` is not an involution",
                            g.name
                        )));
                    }
                    if partner.invertible != g.invertible {
                        return Err(Error::InvalidPresentation(format!(
                            "`{}` and its adjoint disagree on invertibility",
                            g.name
                        )));
                    }
                }
            }
        }

        let mut swap_table = vec![vec![None; n]; n];
        for (idx, r) in rules.iter().enumerate() {
            if r.left >= n || r.right >= n || r.left <= r.right {
                return Err(Error::InvalidPresentation(format!(
                    "rule {idx} does not reorder an out-of-order generator pair"
                )));
            }
            if r.factor.inverse().is_none() {
                return Err(Error::InvalidPresentation(format!(
                    "rule {idx} has a non-unit factor {}",
                    r.factor
                )));
            }
            if swap_table[r.left][r.right].replace(idx).is_some() {
                return Err(Error::InvalidPresentation(format!(
                    "two rules for the pair ({}, {})",
                    generators[r.left].name, generators[r.right].name
                )));
            }
        }
        for hi in 0..n {
            for lo in 0..hi {
                if swap_table[hi][lo].is_none() {
                    return Err(Error::InvalidPresentation(format!(
                        "no rule reorders {} {}",
                        generators[hi].name, generators[lo].name
                    )));
                }
            }
        }

        Ok(Self {
            name: name.to_string(),
            generators,
            rules,
            swap_table,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, g: GenId) -> Option<&Generator> {
        self.generators.get(g)
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn find(&self, name: &str) -> Option<GenId> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Resolve a token to `(generator, sign)`. Besides plain names, an
    /// invertible generator `g` can be written `gi` for `g^{-1}`.
    pub fn resolve(&self, token: &str) -> Option<(GenId, i32)> {
        if let Some(g) = self.find(token) {
            return Some((g, 1));
        }
        let stem = token.strip_suffix('i')?;
        let g = self.find(stem)?;
        self.generators[g].invertible.then_some((g, -1))
    }

    /// Factor for moving `right` in front of `left` (`left > right`).
    pub(crate) fn swap_factor(&self, left: GenId, right: GenId) -> &Scalar {
        let idx = self.swap_table[left][right].expect("presentation validated on construction");
        &self.rules[idx].factor
    }

    /// Representative of the `{g, g*}` class used for multidegrees.
    pub fn class_of(&self, g: GenId) -> GenId {
        match self.generators[g].adjoint {
            Adjoint::Partner(h) => g.min(h),
            _ => g,
        }
    }

    /// Same generators and rules with `s -> s^{-1}` applied to every factor.
    pub fn with_inverted_s(&self) -> Self {
        let mut out = self.clone();
        out.name = format!("{}[s->1/s]", self.name);
        for r in &mut out.rules {
            r.factor = r.factor.invert_s();
        }
        out
    }
}
