//! The same group law over the ring `Z/n`: pairs `(z, ω)` with `z` a unit.

use std::collections::HashMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted by [`FinGroup::new`]; keeps the product table
/// around a million entries.
pub const MAX_MODULUS: u64 = 48;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinGroupElement {
    pub n: u64,
    pub z: u64,
    pub omega: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn inv_mod(z: u64, n: u64) -> u64 {
    (1..n).find(|&y| (z * y) % n == 1 % n).unwrap_or(0)
}

/// `e^{2πi e/m}`, exact when `e/m` is a multiple of a quarter turn.
pub fn root_of_unity(e: u64, m: u64) -> Complex64 {
    let e = e % m;
    if (4 * e) % m == 0 {
        match 4 * e / m {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    } else {
        Complex64::from_polar(1.0, std::f64::consts::TAU * e as f64 / m as f64)
    }
}

/// Characters of the diagonal subgroup `K = {(z, 0)}`.
///
/// Each character is stored as exponents `c(k)` with `χ(k) = e^{2πi c(k)/|K|}`,
/// built by extending along generators picked greedily (largest order,
/// then smallest `z`).
#[derive(Clone, Debug, PartialEq)]
pub struct KDual {
    order: u64,
    generators: Vec<u64>,
    exponents: Vec<Vec<u64>>,
    product: Vec<Vec<usize>>,
    cyclic: bool,
}

impl KDual {
    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// The units chosen as generators of `K`, in order.
    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Whether `K` (equivalently its dual) is cyclic. When it is,
    /// character `a` is the `a`-th power of the character sending the
    /// first generator to `e^{2πi/|K|}`.
    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    /// `χ(k)` for the `k`-th element of `K` in canonical order.
    pub fn value(&self, chi: usize, k: usize) -> Complex64 {
        root_of_unity(self.exponents[chi][k], self.order)
    }

    /// Index of the pointwise product of two characters.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.product[a][b]
    }

    pub fn product_table(&self) -> &[Vec<usize>] {
        &self.product
    }
}

/// An enumerated finite group `{(z, ω) : z ∈ (Z/n)*, ω ∈ Z/n}` with
/// `(z₁, ω₁)(z₂, ω₂) = (z₁z₂, z₁ω₂ + ω₁z₂⁻¹)`.
///
/// Elements are ordered by `z`, then `ω`.
#[derive(Clone, Debug, PartialEq)]
pub struct FinGroup {
    n: u64,
    units: Vec<u64>,
    elements: Vec<FinGroupElement>,
    mul: Vec<usize>,
    inv: Vec<usize>,
    k: Vec<usize>,
    dual: KDual,
}

impl FinGroup {
    pub fn new(n: u64) -> Result<Self> {
        if !(2..=MAX_MODULUS).contains(&n) {
            return Err(Error::InvalidGroup(format!(
                "modulus must lie in 2..={MAX_MODULUS}, got {n}"
            )));
        }
        let units: Vec<u64> = (1..n).filter(|&z| gcd(z, n) == 1).collect();
        let mut elements = Vec::with_capacity(units.len() * n as usize);
        for &z in &units {
            for omega in 0..n {
                elements.push(FinGroupElement { n, z, omega });
            }
        }
        let unit_pos: HashMap<u64, usize> = units.iter().enumerate().map(|(i, &u)| (u, i)).collect();
        let index_of = |z: u64, omega: u64| unit_pos[&z] * n as usize + omega as usize;
        let unit_inv: HashMap<u64, u64> = units.iter().map(|&u| (u, inv_mod(u, n))).collect();
        let order = elements.len();
        let mut mul = Vec::with_capacity(order * order);
        for g in &elements {
            for h in &elements {
                let z = (g.z * h.z) % n;
                let omega = (g.z * h.omega + g.omega * unit_inv[&h.z]) % n;
                mul.push(index_of(z, omega));
            }
        }
        let inv = elements
            .iter()
            .map(|g| index_of(unit_inv[&g.z], (n - g.omega) % n))
            .collect();
        let k = units.iter().map(|&u| index_of(u, 0)).collect();
        let dual = Self::characters(n, &units);
        Ok(Self {
            n,
            units,
            elements,
            mul,
            inv,
            k,
            dual,
        })
    }

    fn characters(n: u64, units: &[u64]) -> KDual {
        let order = units.len() as u64;
        let unit_order = |u: u64| {
            let mut x = u;
            let mut d = 1;
            while x != 1 % n {
                x = (x * u) % n;
                d += 1;
            }
            d
        };
        // characters of the current subgroup H as maps unit -> exponent
        let mut h: Vec<u64> = vec![1 % n];
        let mut chars: Vec<HashMap<u64, u64>> = vec![HashMap::from([(1 % n, 0)])];
        let mut generators = Vec::new();
        while h.len() < units.len() {
            let g = units
                .iter()
                .copied()
                .filter(|u| !h.contains(u))
                .max_by(|&a, &b| unit_order(a).cmp(&unit_order(b)).then(b.cmp(&a)))
                .expect("a unit outside H exists");
            generators.push(g);
            let mut d = 1u64;
            let mut gd = g;
            while !h.contains(&gd) {
                gd = (gd * g) % n;
                d += 1;
            }
            let mut next_chars = Vec::new();
            for chi in &chars {
                let c = chi[&gd];
                for e in (0..order).filter(|e| (d * e) % order == c) {
                    let mut ext = HashMap::new();
                    for &x in &h {
                        let mut y = x;
                        for j in 0..d {
                            ext.insert(y, (chi[&x] + j * e) % order);
                            y = (y * g) % n;
                        }
                    }
                    next_chars.push(ext);
                }
            }
            let mut next_h = Vec::new();
            for &x in &h {
                let mut y = x;
                for _ in 0..d {
                    next_h.push(y);
                    y = (y * g) % n;
                }
            }
            h = next_h;
            chars = next_chars;
        }
        let exponents: Vec<Vec<u64>> = chars
            .iter()
            .map(|chi| units.iter().map(|u| chi[u]).collect())
            .collect();
        let lookup: HashMap<&Vec<u64>, usize> =
            exponents.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let product = exponents
            .iter()
            .map(|a| {
                exponents
                    .iter()
                    .map(|b| {
                        let sum: Vec<u64> = a.iter().zip(b).map(|(x, y)| (x + y) % order).collect();
                        lookup[&sum]
                    })
                    .collect()
            })
            .collect();
        let cyclic = generators.len() <= 1;
        KDual {
            order,
            generators,
            exponents,
            product,
            cyclic,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[FinGroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> FinGroupElement {
        self.elements[i]
    }

    /// Index of `(z, ω)`, if `z` is a unit mod `n`.
    pub fn index_of(&self, z: u64, omega: u64) -> Option<usize> {
        let pos = self.units.iter().position(|&u| u == z % self.n)?;
        Some(pos * self.n as usize + (omega % self.n) as usize)
    }

    pub fn identity(&self) -> usize {
        self.index_of(1, 0).expect("1 is a unit")
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mul[g * self.order() + h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    /// Indices of `K = {(z, 0)}`, ordered by `z`.
    pub fn k_subgroup(&self) -> &[usize] {
        &self.k
    }

    /// Position of element `g` inside [`FinGroup::k_subgroup`].
    pub fn k_position(&self, g: usize) -> Option<usize> {
        let e = self.elements[g];
        (e.omega == 0).then(|| self.units.iter().position(|&u| u == e.z).expect("unit"))
    }

    pub fn k_dual(&self) -> &KDual {
        &self.dual
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|g| (0..n).all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    /// Exhaustive associativity check of the product table.
    pub fn is_associative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.mul(a, b);
                (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        })
    }
}

/// JSON exchange format for a finite group and an optional bicharacter
/// table on the dual of `K` (rows and columns in character order, entries
/// `[re, im]`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupExchange {
    pub modulus: u64,
    pub elements: Vec<[u64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bicharacter: Option<Vec<Vec<[f64; 2]>>>,
}

impl GroupExchange {
    pub fn from_group(g: &FinGroup, table: Option<&[Vec<Complex64>]>) -> Self {
        Self {
            modulus: g.modulus(),
            elements: g.elements().iter().map(|e| [e.z, e.omega]).collect(),
            bicharacter: table.map(|t| {
                t.iter()
                    .map(|row| row.iter().map(|c| [c.re, c.im]).collect())
                    .collect()
            }),
        }
    }

    /// Rebuild the group, checking that the element list is the canonical
    /// enumeration.
    pub fn group(&self) -> Result<FinGroup> {
        let g = FinGroup::new(self.modulus)?;
        let listed: Vec<[u64; 2]> = g.elements().iter().map(|e| [e.z, e.omega]).collect();
        if listed != self.elements {
            return Err(Error::InvalidGroup(
                "element list differs from the canonical enumeration".into(),
            ));
        }
        Ok(g)
    }

    pub fn table(&self) -> Option<Vec<Vec<Complex64>>> {
        self.bicharacter.as_ref().map(|t| {
            t.iter()
                .map(|row| row.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
                .collect()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(FinGroup::new(5).unwrap().order(), 20);
        let g2 = FinGroup::new(2).unwrap();
        assert_eq!(g2.order(), 2);
        assert!(g2.is_abelian());
        assert!(!FinGroup::new(5).unwrap().is_abelian());
        assert!(FinGroup::new(1).is_err());
    }

    #[test]
    fn associativity_up_to_seven() {
        for n in 2..=7 {
            let g = FinGroup::new(n).unwrap();
            assert!(g.is_associative(), "n = {n}");
            for a in 0..g.order() {
                assert_eq!(g.mul(a, g.inv(a)), g.identity());
                assert_eq!(g.mul(g.identity(), a), a);
            }
        }
    }

    #[test]
    fn k_subgroup_is_abelian_of_order_phi() {
        let g = FinGroup::new(5).unwrap();
        let k = g.k_subgroup();
        assert_eq!(k.len(), 4);
        for &a in k {
            for &b in k {
                assert_eq!(g.mul(a, b), g.mul(b, a));
                assert!(k.contains(&g.mul(a, b)));
            }
        }
    }

    #[test]
    fn characters_for_n5() {
        let g = FinGroup::new(5).unwrap();
        let d = g.k_dual();
        assert!(d.is_cyclic());
        assert_eq!(d.generators(), &[2]);
        // unit 2 sits at position 1 of K
        for a in 0..4u32 {
            assert_eq!(d.value(a as usize, 1), Complex64::new(0.0, 1.0).powu(a));
        }
        assert_eq!(d.mul(1, 3), 0);
    }

    #[test]
    fn characters_are_multiplicative_and_orthogonal() {
        for n in [5u64, 8, 12, 15] {
            let g = FinGroup::new(n).unwrap();
            let d = g.k_dual();
            let k = g.k_subgroup();
            assert_eq!(d.len(), k.len());
            for chi in 0..d.len() {
                for (i, &a) in k.iter().enumerate() {
                    for (j, &b) in k.iter().enumerate() {
                        let ab = g.k_position(g.mul(a, b)).unwrap();
                        let lhs = d.value(chi, ab);
                        let rhs = d.value(chi, i) * d.value(chi, j);
                        assert!((lhs - rhs).norm() < 1e-12);
                    }
                }
                for psi in 0..d.len() {
                    let inner: Complex64 =
                        (0..k.len()).map(|i| d.value(chi, i) * d.value(psi, i).conj()).sum();
                    let expected = if chi == psi { k.len() as f64 } else { 0.0 };
                    assert!((inner - expected).norm() < 1e-12);
                }
            }
        }
        assert!(!FinGroup::new(8).unwrap().k_dual().is_cyclic());
    }

    #[test]
    fn exchange_round_trip() {
        let g = FinGroup::new(5).unwrap();
        let ex = GroupExchange::from_group(&g, None);
        let text = serde_json::to_string(&ex).unwrap();
        let back: GroupExchange = serde_json::from_str(&text).unwrap();
        assert_eq!(back.group().unwrap(), g);
        let mut bad = back.clone();
        bad.elements.swap(0, 1);
        assert!(bad.group().is_err());
    }
}
