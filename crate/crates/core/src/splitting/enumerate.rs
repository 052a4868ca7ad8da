//! Complete enumeration of splittings `M·S = Z_N ∖ {0}` with `|M|` fixed.
//!
//! Multiplication in `Z_N` is commutative, so the roles of `M` and `S` can be
//! swapped: the smaller side is enumerated as a subset of `[1, N)` and every
//! completion of the larger side is found by exact cover, with one row per
//! residue `y` whose products `x·y` are nonzero and distinct.

use crate::error::{Error, Result};
use crate::group::FiniteAbelianGroup;

use super::exact_cover::{Control, ExactCover, Limits};
use super::{MultiplierSet, SplitterSet, SplittingCertificate};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    /// Total exact-cover nodes plus enumerated subsets.
    pub max_nodes: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_nodes: 100_000_000,
        }
    }
}

/// Lexicographic `size`-subsets of `1..n`.
fn subsets(n: u64, size: usize) -> impl Iterator<Item = Vec<u64>> {
    let mut current: Option<Vec<u64>> = if size as u64 <= n.saturating_sub(1) {
        Some((1..=size as u64).collect())
    } else {
        None
    };
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let cur = current.as_mut().unwrap();
        let top = n - 1;
        let mut i = size;
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            if cur[i] < top - (size - 1 - i) as u64 {
                cur[i] += 1;
                for j in i + 1..size {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// Every `Y` with `X·Y` an exact cover of `Z_N ∖ {0}`, each sorted ascending.
fn completions(n: u64, fixed: &[u64], nodes_left: &mut u64) -> Result<Vec<Vec<u64>>> {
    let mut reps = Vec::new();
    let mut rows = Vec::new();
    let mut mark = vec![false; n as usize];
    for y in 1..n {
        let products: Vec<usize> = fixed.iter().map(|&x| (x * y % n) as usize).collect();
        let clean = products.iter().all(|&p| {
            let ok = p != 0 && !mark[p];
            mark[p] = true;
            ok
        });
        for &p in &products {
            mark[p] = false;
        }
        if clean {
            reps.push(y);
            rows.push(products.iter().map(|&p| p - 1).collect::<Vec<_>>());
        }
    }
    let mut dlx = ExactCover::new((n - 1) as usize, &rows);
    let mut out = Vec::new();
    let stats = dlx.solve(
        Limits {
            max_nodes: *nodes_left,
            max_time: None,
        },
        |chosen| {
            let mut ys: Vec<u64> = chosen.iter().map(|&r| reps[r]).collect();
            ys.sort_unstable();
            out.push(ys);
            Control::Continue
        },
    );
    if stats.limit_hit.is_some() {
        return Err(Error::ResourceLimit(
            "enumeration node budget exhausted".into(),
        ));
    }
    *nodes_left -= stats.nodes;
    Ok(out)
}

/// All splittings of `Z_N` by multiplier sets of size `multiplier_count`
/// drawn from the residues `[1, N)`, sorted by `(M, S)`.
pub fn enumerate_all_splittings(
    n: u64,
    multiplier_count: usize,
    budget: EnumerationBudget,
) -> Result<Vec<SplittingCertificate>> {
    if n == 0 || multiplier_count == 0 {
        return Err(Error::Precondition("N and |M| must be positive".into()));
    }
    if !(n - 1).is_multiple_of(multiplier_count as u64) {
        return Err(Error::Precondition(format!(
            "|M| = {multiplier_count} does not divide N - 1 = {}",
            n - 1
        )));
    }
    if n == 1 {
        return Ok(Vec::new());
    }
    let group = FiniteAbelianGroup::cyclic(n)?;
    let splitter_count = ((n - 1) / multiplier_count as u64) as usize;
    let fix_multipliers = multiplier_count <= splitter_count;
    let fixed_size = multiplier_count.min(splitter_count);

    let mut nodes_left = budget.max_nodes;
    let mut pairs: Vec<(Vec<u64>, Vec<u64>)> = Vec::new();
    for fixed in subsets(n, fixed_size) {
        if nodes_left == 0 {
            return Err(Error::ResourceLimit(
                "enumeration node budget exhausted".into(),
            ));
        }
        nodes_left -= 1;
        for other in completions(n, &fixed, &mut nodes_left)? {
            if fix_multipliers {
                pairs.push((fixed.clone(), other));
            } else {
                pairs.push((other, fixed.clone()));
            }
        }
    }
    pairs.sort();
    pairs
        .into_iter()
        .map(|(m, s)| {
            let m = MultiplierSet::explicit(m.into_iter().map(|x| x as i64).collect())?;
            let s = SplitterSet::cyclic(&group, &s)?;
            SplittingCertificate::new(group.clone(), m, s)
        })
        .collect()
}
