//! Limited-magnitude error balls and the lattice tilings induced by
//! splittings.
//!
//! A splitting `S(k)·{s_1, …, s_n} = Z_N ∖ {0}` with `N = nk + 1` gives the
//! homomorphism `x ↦ Σ x_i s_i (mod N)` from `Z^n` onto `Z_N`. Its kernel is
//! a lattice of index `N`, and the semi-cross tiles `Z^n` by that lattice
//! because the hom restricted to the semi-cross is a bijection onto `Z_N`.

pub mod lattice;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::splitting::SplittingCertificate;

pub use lattice::{IntegerLattice, QuotientMap};

/// `B(n, t, k+, k-)`: vectors with entries in `[-k-, k+]` and at most `t`
/// nonzero entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBallShape {
    pub n: usize,
    pub t: usize,
    pub k_plus: u64,
    pub k_minus: u64,
    /// Sorted lexicographically.
    pub points: Vec<Vec<i64>>,
}

impl ErrorBallShape {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn binomial(n: u64, r: u64) -> u128 {
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `Σ_{j <= t} C(n, j)·(k+ + k-)^j`.
pub fn error_ball_size(n: usize, t: usize, k_plus: u64, k_minus: u64) -> u128 {
    let span = (k_plus + k_minus) as u128;
    (0..=t as u64)
        .map(|j| binomial(n as u64, j) * span.pow(j as u32))
        .sum()
}

pub fn error_ball(n: usize, t: usize, k_plus: u64, k_minus: u64) -> Result<ErrorBallShape> {
    if !(1..=n).contains(&t) {
        return Err(Error::Precondition(format!(
            "need n >= t >= 1, got n={n}, t={t}"
        )));
    }
    if k_plus < k_minus {
        return Err(Error::Precondition(format!(
            "need k+ >= k-, got k+={k_plus}, k-={k_minus}"
        )));
    }
    let values: Vec<i64> = (-(k_minus as i64)..=k_plus as i64)
        .filter(|&v| v != 0)
        .collect();
    let mut points = Vec::new();
    let mut current = vec![0i64; n];
    fn fill(
        i: usize,
        weight_left: usize,
        values: &[i64],
        current: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if i == current.len() {
            out.push(current.clone());
            return;
        }
        current[i] = 0;
        fill(i + 1, weight_left, values, current, out);
        if weight_left > 0 {
            for &v in values {
                current[i] = v;
                fill(i + 1, weight_left - 1, values, current, out);
            }
            current[i] = 0;
        }
    }
    fill(0, t, &values, &mut current, &mut points);
    points.sort();
    Ok(ErrorBallShape {
        n,
        t,
        k_plus,
        k_minus,
        points,
    })
}

/// The semi-cross `B(n, 1, k, 0)`: the origin and `j·e_i` for `1 <= j <= k`.
/// `n = 1` is accepted and gives the segment `{0, …, k}`.
pub fn semi_cross(n: usize, k: u64) -> Result<ErrorBallShape> {
    if k == 0 {
        return Err(Error::Precondition("semi-cross needs k >= 1".into()));
    }
    error_ball(n, 1, k, 0)
}

/// `x ↦ Σ x_i w_i (mod N)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeHom {
    pub modulus: u64,
    pub weights: Vec<u64>,
}

impl LatticeHom {
    pub fn apply(&self, x: &[i64]) -> u64 {
        debug_assert_eq!(x.len(), self.weights.len());
        let n = self.modulus as i128;
        x.iter()
            .zip(&self.weights)
            .map(|(&a, &w)| a as i128 * w as i128 % n)
            .sum::<i128>()
            .rem_euclid(n) as u64
    }

    pub fn kernel(&self) -> Result<IntegerLattice> {
        IntegerLattice::kernel_of(&self.weights, self.modulus)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingCertificate {
    pub shape: ErrorBallShape,
    pub lattice: IntegerLattice,
    pub hom: LatticeHom,
    /// True when the shape meets every coset of the lattice exactly once.
    pub verdict: bool,
}

/// Kernel lattice of the splitting hom of a cyclic certificate.
pub fn lattice_from_splitting(cert: &SplittingCertificate) -> Result<(LatticeHom, IntegerLattice)> {
    let modulus = cert.group().cyclic_order()?;
    if cert.splitters().is_empty() {
        return Err(Error::Precondition("certificate has no splitters".into()));
    }
    let hom = LatticeHom {
        modulus,
        weights: cert.splitters().residues(),
    };
    let lattice = hom.kernel()?;
    Ok((hom, lattice))
}

/// Tiling check through the hom: the shape tiles by `ker(hom)` exactly when
/// the hom maps the shape bijectively onto `Z_N`.
pub fn verify_lattice_tiling(
    shape: &ErrorBallShape,
    hom: &LatticeHom,
) -> Result<TilingCertificate> {
    if shape.n != hom.weights.len() {
        return Err(Error::DimensionMismatch {
            expected: hom.weights.len(),
            actual: shape.n,
        });
    }
    let lattice = hom.kernel()?;
    let mut seen = vec![false; hom.modulus as usize];
    let mut verdict = shape.len() as u64 == hom.modulus && lattice.index() == hom.modulus;
    if verdict {
        for p in &shape.points {
            let slot = &mut seen[hom.apply(p) as usize];
            if *slot {
                verdict = false;
                break;
            }
            *slot = true;
        }
    }
    Ok(TilingCertificate {
        shape: shape.clone(),
        lattice,
        hom: hom.clone(),
        verdict,
    })
}

/// Tiling check for a lattice given only by a basis: the shape must hit
/// every class of `Z^n / L` exactly once, with classes computed from the
/// Smith normal form.
pub fn verify_tiling_by_basis(shape: &ErrorBallShape, lattice: &IntegerLattice) -> Result<bool> {
    if shape.n != lattice.dimension() {
        return Err(Error::DimensionMismatch {
            expected: lattice.dimension(),
            actual: shape.n,
        });
    }
    if shape.len() as u64 != lattice.index() {
        return Ok(false);
    }
    let q = lattice.quotient_map();
    let mut classes = std::collections::HashSet::with_capacity(shape.len());
    Ok(shape.points.iter().all(|p| classes.insert(q.apply(p))))
}

/// Axis-aligned box `lo[i] <= x_i <= hi[i]`; empty when some `hi < lo`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntBox {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl IntBox {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<IntBox> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                actual: hi.len(),
            });
        }
        Ok(IntBox { lo, hi })
    }

    pub fn dimension(&self) -> usize {
        self.lo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lo.iter().zip(&self.hi).any(|(l, h)| h < l)
    }

    pub fn volume(&self) -> u64 {
        if self.is_empty() {
            return 0;
        }
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| (h - l + 1) as u64)
            .product()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.lo.len()
            && x.iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(v, (l, h))| l <= v && v <= h)
    }

    /// Cells in lexicographic order.
    pub fn cells(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        let mut next = (!self.is_empty()).then(|| self.lo.clone());
        std::iter::from_fn(move || {
            let out = next.clone()?;
            let cur = next.as_mut().unwrap();
            let mut i = cur.len();
            loop {
                if i == 0 {
                    next = None;
                    break;
                }
                i -= 1;
                if cur[i] < self.hi[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = self.lo[i];
            }
            Some(out)
        })
    }
}

/// One lattice translate `anchor + shape`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Translate {
    pub anchor: Vec<i64>,
    pub points: Vec<Vec<i64>>,
}

/// Every translate of the shape by a lattice vector that meets the box,
/// sorted by anchor. Fails if the shape does not tile by the lattice or if
/// some box cell is not covered exactly once.
pub fn export_translates(
    lattice: &IntegerLattice,
    shape: &ErrorBallShape,
    region: &IntBox,
) -> Result<Vec<Translate>> {
    if region.dimension() != lattice.dimension() {
        return Err(Error::DimensionMismatch {
            expected: lattice.dimension(),
            actual: region.dimension(),
        });
    }
    if !verify_tiling_by_basis(shape, lattice)? {
        return Err(Error::Precondition(
            "shape does not tile by this lattice".into(),
        ));
    }
    let q = lattice.quotient_map();
    let by_class: HashMap<Vec<u64>, &Vec<i64>> =
        shape.points.iter().map(|p| (q.apply(p), p)).collect();
    let mut anchors: BTreeMap<Vec<i64>, ()> = BTreeMap::new();
    for cell in region.cells() {
        let p = by_class[&q.apply(&cell)];
        let anchor: Vec<i64> = cell.iter().zip(p).map(|(c, x)| c - x).collect();
        debug_assert!(lattice.contains(&anchor));
        anchors.insert(anchor, ());
    }
    let translates: Vec<Translate> = anchors
        .into_keys()
        .map(|anchor| Translate {
            points: shape
                .points
                .iter()
                .map(|p| p.iter().zip(&anchor).map(|(x, a)| x + a).collect())
                .collect(),
            anchor,
        })
        .collect();

    let mut cover: HashMap<&[i64], u32> = HashMap::new();
    for t in &translates {
        for p in t.points.iter().filter(|p| region.contains(p)) {
            *cover.entry(p.as_slice()).or_default() += 1;
        }
    }
    if cover.len() as u64 != region.volume() || cover.values().any(|&c| c != 1) {
        return Err(Error::Precondition(
            "translates do not cover the box exactly once".into(),
        ));
    }
    Ok(translates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn set(points: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
        points.iter().cloned().collect()
    }

    #[test]
    fn ball_examples() {
        let b = error_ball(2, 1, 2, 0).unwrap();
        assert_eq!(
            set(&b.points),
            set(&[vec![0, 0], vec![1, 0], vec![2, 0], vec![0, 1], vec![0, 2]])
        );
        let b = error_ball(1, 1, 1, 1).unwrap();
        assert_eq!(b.points, vec![vec![-1], vec![0], vec![1]]);
        let b = error_ball(3, 1, 1, 0).unwrap();
        assert_eq!(b.len(), 4);
    }

    #[test]
    fn ball_full_weight_is_cube() {
        let b = error_ball(3, 3, 2, 1).unwrap();
        assert_eq!(b.len(), 64);
        assert!(b
            .points
            .iter()
            .all(|p| p.iter().all(|&x| (-1..=2).contains(&x))));
    }

    #[test]
    fn ball_sizes_match_count() {
        for n in 1..=5 {
            for t in 1..=n {
                for k_minus in 0..=2 {
                    for k_plus in k_minus..=3 {
                        let b = error_ball(n, t, k_plus, k_minus).unwrap();
                        assert_eq!(b.len() as u128, error_ball_size(n, t, k_plus, k_minus));
                        assert!(b.points.windows(2).all(|w| w[0] < w[1]));
                        assert!(b
                            .points
                            .iter()
                            .all(|p| p.iter().filter(|&&x| x != 0).count() <= t));
                    }
                }
            }
        }
    }

    #[test]
    fn ball_rejects_parameters() {
        assert!(error_ball(2, 3, 1, 0).is_err());
        assert!(error_ball(2, 0, 1, 0).is_err());
        assert!(error_ball(2, 1, 1, 2).is_err());
    }

    #[test]
    fn semi_crosses() {
        assert_eq!(semi_cross(2, 2).unwrap().len(), 5);
        assert_eq!(semi_cross(4, 1).unwrap().len(), 5);
        assert_eq!(semi_cross(3, 4).unwrap().len(), 13);
    }

    #[test]
    fn z5_tiling() {
        let shape = semi_cross(2, 2).unwrap();
        let good = LatticeHom {
            modulus: 5,
            weights: vec![1, 4],
        };
        let images: BTreeSet<u64> = shape.points.iter().map(|p| good.apply(p)).collect();
        assert_eq!(images.len(), 5);
        assert!(verify_lattice_tiling(&shape, &good).unwrap().verdict);
        let bad = LatticeHom {
            modulus: 5,
            weights: vec![1, 2],
        };
        assert!(!verify_lattice_tiling(&shape, &bad).unwrap().verdict);
        assert!(verify_tiling_by_basis(&shape, &good.kernel().unwrap()).unwrap());
        assert!(!verify_tiling_by_basis(&shape, &bad.kernel().unwrap()).unwrap());
    }

    #[test]
    fn dimension_mismatch() {
        let shape = semi_cross(3, 2).unwrap();
        let hom = LatticeHom {
            modulus: 5,
            weights: vec![1, 4],
        };
        assert!(matches!(
            verify_lattice_tiling(&shape, &hom),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn one_dimensional_export() {
        let lattice = IntegerLattice::kernel_of(&[1], 4).unwrap();
        let shape = semi_cross(1, 3).unwrap();
        let region = IntBox::new(vec![0], vec![7]).unwrap();
        let tr = export_translates(&lattice, &shape, &region).unwrap();
        let anchors: Vec<Vec<i64>> = tr.iter().map(|t| t.anchor.clone()).collect();
        assert_eq!(anchors, vec![vec![0], vec![4]]);
    }

    #[test]
    fn empty_box_export() {
        let lattice = IntegerLattice::kernel_of(&[1, 4], 5).unwrap();
        let shape = semi_cross(2, 2).unwrap();
        let region = IntBox::new(vec![0, 0], vec![-1, 9]).unwrap();
        assert!(export_translates(&lattice, &shape, &region)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn box_cells() {
        let b = IntBox::new(vec![0, -1], vec![1, 0]).unwrap();
        let cells: Vec<_> = b.cells().collect();
        assert_eq!(
            cells,
            vec![vec![0, -1], vec![0, 0], vec![1, -1], vec![1, 0]]
        );
        assert_eq!(b.volume(), 4);
    }
}
