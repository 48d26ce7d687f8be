use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nanoword::{CrossingType, Nanoword};

/// Linking number of `y` with `x`, computed by rotating the word with shift
/// moves until it starts with `x` and `x` has type `a`; the sign is then the
/// type of `y`.
pub fn linking(nw: &Nanoword, x: u8, y: u8) -> Result<i32> {
    let n = nw.letter_count() as u8;
    for l in [x, y] {
        if l >= n {
            return Err(Error::MissingLetter(l));
        }
    }
    if x == y {
        return Ok(0);
    }
    let occ = nw.occurrences();
    if !alternate(occ[x as usize], occ[y as usize]) {
        return Ok(0);
    }
    let mut word: std::collections::VecDeque<u8> = nw.word().iter().copied().collect();
    let mut types = nw.types().to_vec();
    // at most two passes of X through the front, each within 2n rotations
    for _ in 0..=2 * word.len() {
        let first = word[0];
        if first == x && types[x as usize] == CrossingType::A {
            return Ok(match types[y as usize] {
                CrossingType::A => 1,
                CrossingType::B => -1,
            });
        }
        word.rotate_left(1);
        types[first as usize] = types[first as usize].flipped();
    }
    unreachable!("rotation must reach X-first with type a")
}

fn alternate(p: [usize; 2], q: [usize; 2]) -> bool {
    (p[0] < q[0] && q[0] < p[1] && p[1] < q[1]) || (q[0] < p[0] && p[0] < q[1] && q[1] < p[1])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterStats {
    /// `lk[x][y]`
    pub lk: Vec<Vec<i32>>,
    pub n: Vec<i32>,
}

pub fn n_values(nw: &Nanoword) -> LetterStats {
    let k = nw.letter_count() as u8;
    let lk: Vec<Vec<i32>> = (0..k)
        .map(|x| {
            (0..k)
                .map(|y| linking(nw, x, y).expect("letters in range"))
                .collect()
        })
        .collect();
    let n = lk.iter().map(|row| row.iter().sum()).collect();
    LetterStats { lk, n }
}

/// Sparse `k -> u_k` with no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct UPolynomial(pub BTreeMap<u32, i32>);

impl UPolynomial {
    pub fn from_n_values(n: &[i32]) -> Self {
        let mut coeffs: BTreeMap<u32, i32> = BTreeMap::new();
        for &v in n {
            if v != 0 {
                *coeffs.entry(v.unsigned_abs()).or_default() += v.signum();
            }
        }
        coeffs.retain(|_, c| *c != 0);
        UPolynomial(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> Vec<[i64; 2]> {
        self.0.iter().map(|(&k, &c)| [k as i64, c as i64]).collect()
    }

    pub fn from_pairs(pairs: &[[i64; 2]]) -> Self {
        UPolynomial(
            pairs
                .iter()
                .filter(|p| p[1] != 0)
                .map(|p| (p[0] as u32, p[1] as i32))
                .collect(),
        )
    }

    pub fn negated(&self) -> Self {
        UPolynomial(self.0.iter().map(|(&k, &c)| (k, -c)).collect())
    }
}

impl fmt::Display for UPolynomial {
    /// Descending powers, e.g. `-t^2+2t`; `0` for the zero polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&k, &c)) in self.0.iter().rev().enumerate() {
            let sign = if c < 0 {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            let mag = c.unsigned_abs();
            let coeff = if mag == 1 {
                String::new()
            } else {
                mag.to_string()
            };
            let power = if k == 1 {
                "t".to_string()
            } else {
                format!("t^{k}")
            };
            write!(f, "{sign}{coeff}{power}")?;
        }
        Ok(())
    }
}

pub fn u_polynomial(nw: &Nanoword) -> UPolynomial {
    UPolynomial::from_n_values(&n_values(nw).n)
}

/// The `r`-covering before normalization: letters with `n(X)` not divisible
/// by `r` are deleted.
pub fn covering_raw(nw: &Nanoword, r: u32) -> Nanoword {
    assert!(r >= 1, "covering index must be positive");
    if r == 1 {
        return nw.clone();
    }
    let n = n_values(nw).n;
    nw.restrict(|l| n[l as usize] % r as i32 == 0)
}

pub fn covering(nw: &Nanoword, r: u32) -> Nanoword {
    if r == 1 {
        return nw.clone();
    }
    covering_raw(nw, r).normalized()
}

/// Covering indices worth computing: `2..=max |n(X)|` (at least 2), with
/// indices that delete the same letters collapsed to the smallest.
pub fn covering_radii(nw: &Nanoword) -> Vec<u32> {
    let n = n_values(nw).n;
    let top = n.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0).max(2);
    let mut seen: Vec<Vec<bool>> = Vec::new();
    let mut out = Vec::new();
    for r in 2..=top {
        let keep: Vec<bool> = n.iter().map(|v| v % r as i32 == 0).collect();
        if !seen.contains(&keep) {
            seen.push(keep);
            out.push(r);
        }
    }
    out
}
