//! Finite abelian groups given as products of cyclic factors.

pub mod arith;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use arith::{factorize, gcd, lcm, p_adic_valuation, residue, Factorization};

use crate::error::{Error, Result};

/// `Z_{d_1} × … × Z_{d_r}`. A single factor `N` is the cyclic group `Z_N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
    order: u64,
    order_factorization: Factorization,
}

/// An element stored as coordinates reduced modulo the matching factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(Vec<u64>);

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// The residue of an element of a cyclic group.
    pub fn residue(&self) -> u64 {
        debug_assert_eq!(self.0.len(), 1);
        self.0[0]
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [x] = self.0.as_slice() {
            return write!(f, "{x}");
        }
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidGroup(
                "at least one factor is required".into(),
            ));
        }
        if factors.contains(&0) {
            return Err(Error::InvalidGroup("factors must be positive".into()));
        }
        let order = factors
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::InvalidGroup("group order overflows u64".into()))?;
        Ok(FiniteAbelianGroup {
            factors,
            order,
            order_factorization: factorize(order),
        })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn order_factorization(&self) -> &Factorization {
        &self.order_factorization
    }

    /// Lcm of the factors; integers act on the group through residues modulo this.
    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1, |acc, &d| lcm(acc, d))
    }

    /// True when the group is presented by a single factor.
    pub fn is_cyclic(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn cyclic_order(&self) -> Result<u64> {
        if self.is_cyclic() {
            Ok(self.order)
        } else {
            Err(Error::NotCyclic(self.factors.clone()))
        }
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.factors.len()])
    }

    pub fn element(&self, coords: Vec<u64>) -> Result<GroupElement> {
        let valid = coords.len() == self.factors.len()
            && coords.iter().zip(&self.factors).all(|(&c, &d)| c < d);
        if valid {
            Ok(GroupElement(coords))
        } else {
            Err(Error::InvalidElement {
                element: coords,
                factors: self.factors.clone(),
            })
        }
    }

    /// Reduce arbitrary integer coordinates into the group.
    pub fn reduce(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.factors.len() {
            return Err(Error::DimensionMismatch {
                expected: self.factors.len(),
                actual: coords.len(),
            });
        }
        Ok(GroupElement(
            coords
                .iter()
                .zip(&self.factors)
                .map(|(&c, &d)| residue(c, d))
                .collect(),
        ))
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.0.len() == self.factors.len() && g.0.iter().zip(&self.factors).all(|(&c, &d)| c < d)
    }

    /// Mixed-radix index of an element in `[0, |G|)`; canonical element order.
    pub fn index_of(&self, g: &GroupElement) -> u64 {
        g.0.iter()
            .zip(&self.factors)
            .fold(0, |acc, (&c, &d)| acc * d + c)
    }

    pub fn element_at(&self, mut index: u64) -> GroupElement {
        let mut coords = vec![0; self.factors.len()];
        for (slot, &d) in coords.iter_mut().zip(&self.factors).rev() {
            *slot = index % d;
            index /= d;
        }
        GroupElement(coords)
    }

    /// All elements in canonical (lexicographic coordinate) order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |i| self.element_at(i))
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.factors)
                .map(|((&x, &y), &d)| ((x as u128 + y as u128) % d as u128) as u64)
                .collect(),
        )
    }

    /// `m·g`, coordinate-wise; negative `m` acts through the inverse.
    pub fn scalar_mul(&self, m: i64, g: &GroupElement) -> GroupElement {
        GroupElement(
            g.0.iter()
                .zip(&self.factors)
                .map(|(&c, &d)| {
                    let m = residue(m, d);
                    ((m as u128 * c as u128) % d as u128) as u64
                })
                .collect(),
        )
    }

    /// Least `t >= 1` with `t·g = 0`.
    pub fn element_order(&self, g: &GroupElement) -> u64 {
        g.0.iter()
            .zip(&self.factors)
            .fold(1, |acc, (&c, &d)| lcm(acc, d / gcd(c, d)))
    }

    /// The subgroup of order `d` of a cyclic group: multiples of `N/d`.
    pub fn unique_subgroup_of_order(&self, d: u64) -> Result<Vec<GroupElement>> {
        let n = self.cyclic_order()?;
        if d == 0 || n % d != 0 {
            return Err(Error::NotADivisor {
                divisor: d,
                modulus: n,
            });
        }
        let step = n / d;
        Ok((0..d).map(|j| GroupElement(vec![j * step])).collect())
    }

    /// Units of a cyclic group: residues in `[1, N)` coprime to `N`.
    pub fn units(&self) -> Result<Vec<GroupElement>> {
        let n = self.cyclic_order()?;
        if n == 1 {
            return Ok(Vec::new());
        }
        Ok((1..n)
            .filter(|&x| gcd(x, n) == 1)
            .map(|x| GroupElement(vec![x]))
            .collect())
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "Z_{d}")?;
        }
        Ok(())
    }
}
