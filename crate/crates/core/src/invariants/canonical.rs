//! Canonical description of primitive based matrices.
//!
//! Elements other than `s` are split into classes by `b(g, s)` and the
//! multiplicity profile `m_g`; classes are ordered by those keys, and the
//! description is the least lower-triangle tuple over all within-class
//! permutations.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::based_matrix::{is_primitive, reduce_based_matrix, BasedMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalPbm {
    pub rho: usize,
    pub phi: Vec<i32>,
}

impl CanonicalPbm {
    /// Comma-separated integers without spaces; empty for `rho = 0`.
    pub fn phi_text(&self) -> String {
        self.phi
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for CanonicalPbm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.phi_text())
    }
}

/// Lower triangle of a skew-symmetric matrix, column by column.
pub fn theta(m: &[Vec<i32>]) -> Result<Vec<i32>> {
    let n = m.len();
    for i in 0..n {
        if m[i].len() != n {
            return Err(Error::NotSkewSymmetric(i, m[i].len()));
        }
        for j in 0..=i {
            if m[i][j] != -m[j][i] {
                return Err(Error::NotSkewSymmetric(i, j));
            }
        }
    }
    Ok(theta_unchecked(m, &(0..n).collect::<Vec<_>>()))
}

fn theta_unchecked(m: &[Vec<i32>], order: &[usize]) -> Vec<i32> {
    let n = order.len();
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 0..n {
        for i in j + 1..n {
            out.push(m[order[i]][order[j]]);
        }
    }
    out
}

/// Sorted `(i, m_g(i))` pairs, flattened.
pub fn m_profile(bm: &BasedMatrix, g: usize) -> Result<Vec<i32>> {
    if g == 0 {
        return Err(Error::SpecialElement);
    }
    let mut values: Vec<i32> = (1..bm.size()).map(|h| bm.b[g][h]).collect();
    values.sort_unstable();
    let mut out = Vec::new();
    for v in values {
        match out.len() {
            l if l >= 2 && out[l - 2] == v => out[l - 1] += 1,
            _ => out.extend([v, 1]),
        }
    }
    Ok(out)
}

/// Classes of non-special indices in canonical class order.
pub fn element_classes(bm: &BasedMatrix) -> Vec<Vec<usize>> {
    let mut keyed: Vec<((i32, Vec<i32>), usize)> = (1..bm.size())
        .map(|g| ((bm.b[g][0], m_profile(bm, g).expect("g != s")), g))
        .collect();
    keyed.sort();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut last: Option<&(i32, Vec<i32>)> = None;
    for (key, g) in &keyed {
        if last == Some(key) {
            classes.last_mut().expect("open class").push(*g);
        } else {
            classes.push(vec![*g]);
        }
        last = Some(key);
    }
    classes
}

/// The minimizing ordering (indices into `bm`, `s` first) and its tuple.
/// `bm` is used as given; see [`canonical_form`] for the reducing entry point.
pub fn canonical_order(bm: &BasedMatrix) -> (Vec<usize>, Vec<i32>) {
    let classes = element_classes(bm);
    let mut order: Vec<usize> = std::iter::once(0)
        .chain(classes.iter().flatten().copied())
        .collect();
    let mut best_order = order.clone();
    let mut best = theta_unchecked(&bm.b, &order);
    // offsets of each class inside `order`
    let mut spans = Vec::new();
    let mut at = 1;
    for c in &classes {
        spans.push((at, c.len()));
        at += c.len();
    }
    search(&bm.b, &mut order, &spans, 0, &mut best, &mut best_order);
    (best_order, best)
}

/// Enumerates every within-class permutation, class by class.
fn search(
    m: &[Vec<i32>],
    order: &mut Vec<usize>,
    spans: &[(usize, usize)],
    class: usize,
    best: &mut Vec<i32>,
    best_order: &mut Vec<usize>,
) {
    let Some(&(start, len)) = spans.get(class) else {
        let t = theta_unchecked(m, order);
        if t < *best {
            *best = t;
            best_order.clone_from(order);
        }
        return;
    };
    permute(m, order, spans, class, start, start + len, best, best_order);
}

#[allow(clippy::too_many_arguments)]
fn permute(
    m: &[Vec<i32>],
    order: &mut Vec<usize>,
    spans: &[(usize, usize)],
    class: usize,
    pos: usize,
    end: usize,
    best: &mut Vec<i32>,
    best_order: &mut Vec<usize>,
) {
    if pos + 1 >= end {
        search(m, order, spans, class + 1, best, best_order);
        return;
    }
    for k in pos..end {
        order.swap(pos, k);
        permute(m, order, spans, class, pos + 1, end, best, best_order);
        order.swap(pos, k);
    }
}

/// `phi` and `rho` of the primitive form of `bm` (reducing first if needed).
pub fn canonical_form(bm: &BasedMatrix) -> CanonicalPbm {
    let primitive;
    let bm = if is_primitive(bm) {
        bm
    } else {
        primitive = reduce_based_matrix(bm);
        &primitive
    };
    let (_, phi) = canonical_order(bm);
    let rho = bm.size() - 1;
    assert_eq!(phi.len(), rho * (rho + 1) / 2, "phi length must match rho");
    CanonicalPbm { rho, phi }
}
