//! Based matrices `(G, s, b)` of nanowords and their reduction to primitive
//! form.
//!
//! The curve of a nanoword is a 4-valent ribbon graph: vertex per letter,
//! edge `k` runs from word position `k` to `k + 1` (cyclically). Every loop
//! used here is a forward run of edges, so it is stored as a 0/1 edge vector.
//! Intersection numbers are computed vertex by vertex: inside a small disk
//! around each crossing one loop keeps to the graph and the other is pushed
//! off to the left of every edge, and the signed crossings of the resulting
//! chords are counted.

use crate::nanoword::{CrossingType, Nanoword};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Element {
    Special,
    Letter(u8),
    Synthetic(u32),
}

/// Skew-symmetric pairing over an ordered element list, `s` first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasedMatrix {
    pub elements: Vec<Element>,
    pub b: Vec<Vec<i32>>,
}

impl BasedMatrix {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    /// The 1x1 zero matrix on `{s}`.
    pub fn trivial() -> Self {
        BasedMatrix {
            elements: vec![Element::Special],
            b: vec![vec![0]],
        }
    }

    /// Wraps a square array whose row/column 0 is `s`. Other elements get
    /// synthetic labels.
    pub fn from_rows(rows: Vec<Vec<i32>>) -> crate::Result<Self> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(crate::Error::NotSkewSymmetric(i, row.len()));
            }
        }
        let bm = BasedMatrix {
            elements: std::iter::once(Element::Special)
                .chain((1..n as u32).map(Element::Synthetic))
                .collect(),
            b: rows,
        };
        bm.check_skew()?;
        Ok(bm)
    }

    pub fn check_skew(&self) -> crate::Result<()> {
        for i in 0..self.size() {
            for j in i..self.size() {
                if self.b[i][j] != -self.b[j][i] {
                    return Err(crate::Error::NotSkewSymmetric(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn entry(&self, g: Element, h: Element) -> Option<i32> {
        let i = self.elements.iter().position(|&e| e == g)?;
        let j = self.elements.iter().position(|&e| e == h)?;
        Some(self.b[i][j])
    }

    /// Keeps the listed indices in order.
    pub(crate) fn submatrix(&self, keep: &[usize]) -> BasedMatrix {
        BasedMatrix {
            elements: keep.iter().map(|&i| self.elements[i]).collect(),
            b: keep
                .iter()
                .map(|&i| keep.iter().map(|&j| self.b[i][j]).collect())
                .collect(),
        }
    }
}

/// The free choices in turning the geometric loop picture into a
/// combinatorial rule. Fixed by [`CONVENTION`]; kept as a value so the
/// choice can be re-derived in tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Convention {
    /// At a type `a` crossing the second passage crosses the first from its
    /// right to its left.
    pub a_second_right_to_left: bool,
    /// The loop of a type `a` letter is the inner arc (first occurrence to
    /// second); type `b` letters take the outer arc.
    pub a_takes_inner_arc: bool,
    /// Overall sign applied to the counted intersections.
    pub sign: i32,
}

impl Convention {
    pub fn all() -> impl Iterator<Item = Convention> {
        [false, true].into_iter().flat_map(|rl| {
            [false, true].into_iter().flat_map(move |inner| {
                [1, -1].into_iter().map(move |sign| Convention {
                    a_second_right_to_left: rl,
                    a_takes_inner_arc: inner,
                    sign,
                })
            })
        })
    }
}

/// Convention selected by matching the primitive forms of the 4-crossing
/// census. Under it the textbook 4x4 example is the matrix of `ABACBC:bba`;
/// `ABACBC:aab` yields the same table with `A` and `C` exchanged.
pub const CONVENTION: Convention = Convention {
    a_second_right_to_left: true,
    a_takes_inner_arc: true,
    sign: 1,
};

const RING: i32 = 16;

#[derive(Clone, Copy)]
struct HalfEdge {
    edge: usize,
    outgoing: bool,
}

struct Ribbon {
    len: usize,
    /// Per vertex, half-edges in counterclockwise order.
    rotation: Vec<[HalfEdge; 4]>,
}

impl Ribbon {
    fn new(nw: &Nanoword, conv: Convention) -> Self {
        let len = nw.word().len();
        let rotation = nw
            .occurrences()
            .iter()
            .enumerate()
            .map(|(l, &[p1, p2])| {
                let out1 = HalfEdge {
                    edge: p1,
                    outgoing: true,
                };
                let in1 = HalfEdge {
                    edge: (p1 + len - 1) % len,
                    outgoing: false,
                };
                let out2 = HalfEdge {
                    edge: p2,
                    outgoing: true,
                };
                let in2 = HalfEdge {
                    edge: (p2 + len - 1) % len,
                    outgoing: false,
                };
                let rl = (nw.type_of(l as u8) == CrossingType::A) == conv.a_second_right_to_left;
                if rl {
                    [out1, out2, in1, in2]
                } else {
                    [out1, in2, in1, out2]
                }
            })
            .collect();
        Ribbon { len, rotation }
    }

    /// Algebraic count of `q` crossing `p` from right to left.
    fn intersection(&self, p: &[i32], q: &[i32]) -> i32 {
        self.rotation
            .iter()
            .map(|rot| local_intersection(rot, p, q))
            .sum()
    }
}

fn chords(points: &[(i32, i32)]) -> Vec<(i32, i32)> {
    let mut starts = Vec::new();
    let mut ends = Vec::new();
    for &(angle, c) in points {
        for _ in 0..c.abs() {
            if c < 0 {
                starts.push(angle);
            } else {
                ends.push(angle);
            }
        }
    }
    debug_assert_eq!(starts.len(), ends.len());
    starts.into_iter().zip(ends).collect()
}

fn on_right(chord: (i32, i32), x: i32) -> bool {
    let span = (chord.1 - chord.0).rem_euclid(RING);
    let off = (x - chord.0).rem_euclid(RING);
    off > 0 && off < span
}

fn local_intersection(rot: &[HalfEdge; 4], p: &[i32], q: &[i32]) -> i32 {
    let mut pp = Vec::with_capacity(4);
    let mut qq = Vec::with_capacity(4);
    for (k, h) in rot.iter().enumerate() {
        let angle = 4 * k as i32;
        let (cp, cq) = (p[h.edge], q[h.edge]);
        if h.outgoing {
            pp.push((angle, cp));
            qq.push(((angle + 1).rem_euclid(RING), cq));
        } else {
            pp.push((angle, -cp));
            qq.push(((angle - 1).rem_euclid(RING), -cq));
        }
    }
    let mut total = 0;
    for a in chords(&pp) {
        for b in chords(&qq) {
            match (on_right(a, b.0), on_right(a, b.1)) {
                (true, false) => total += 1,
                (false, true) => total -= 1,
                _ => {}
            }
        }
    }
    total
}

fn loop_chain(nw: &Nanoword, letter: u8, conv: Convention) -> Vec<i32> {
    let len = nw.word().len();
    let [p1, p2] = nw.occurrences()[letter as usize];
    let inner = (nw.type_of(letter) == CrossingType::A) == conv.a_takes_inner_arc;
    (0..len)
        .map(|e| {
            let in_inner = e >= p1 && e < p2;
            i32::from(in_inner == inner)
        })
        .collect()
}

pub fn based_matrix_with(nw: &Nanoword, conv: Convention) -> BasedMatrix {
    if nw.is_empty() {
        return BasedMatrix::trivial();
    }
    let ribbon = Ribbon::new(nw, conv);
    let mut chains = vec![vec![1; ribbon.len]];
    chains.extend((0..nw.letter_count() as u8).map(|l| loop_chain(nw, l, conv)));
    let b: Vec<Vec<i32>> = chains
        .iter()
        .map(|g| {
            chains
                .iter()
                .map(|h| conv.sign * ribbon.intersection(g, h))
                .collect()
        })
        .collect();
    BasedMatrix {
        elements: std::iter::once(Element::Special)
            .chain((0..nw.letter_count() as u8).map(Element::Letter))
            .collect(),
        b,
    }
}

/// Based matrix of `nw` over `s, A, B, ...`.
pub fn based_matrix(nw: &Nanoword) -> BasedMatrix {
    based_matrix_with(nw, CONVENTION)
}

/// One applicable simplification of a based matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reduction {
    /// `g` pairs trivially with everything.
    Annihilating(usize),
    /// Row of `g` equals the row of `s`.
    Core(usize),
    /// Rows of `g1` and `g2` sum to the row of `s`.
    Complementary(usize, usize),
}

/// All reductions available on `bm`, single-element ones first, pairs in
/// lexicographic index order.
pub fn available_reductions(bm: &BasedMatrix) -> Vec<Reduction> {
    let n = bm.size();
    let b = &bm.b;
    let mut out = Vec::new();
    for g in 1..n {
        if b[g].iter().all(|&v| v == 0) {
            out.push(Reduction::Annihilating(g));
        } else if (0..n).all(|h| b[g][h] == b[0][h]) {
            out.push(Reduction::Core(g));
        }
    }
    for g1 in 1..n {
        for g2 in g1 + 1..n {
            if (0..n).all(|h| b[g1][h] + b[g2][h] == b[0][h]) {
                out.push(Reduction::Complementary(g1, g2));
            }
        }
    }
    out
}

pub fn apply_reduction(bm: &BasedMatrix, r: Reduction) -> BasedMatrix {
    let drop: &[usize] = match r {
        Reduction::Annihilating(g) | Reduction::Core(g) => &[g],
        Reduction::Complementary(g1, g2) => &[g1, g2],
    };
    let keep: Vec<usize> = (0..bm.size()).filter(|i| !drop.contains(i)).collect();
    bm.submatrix(&keep)
}

/// Applies reductions until the matrix is primitive; `s` is never removed.
pub fn reduce_based_matrix(bm: &BasedMatrix) -> BasedMatrix {
    let mut cur = bm.clone();
    while let Some(&r) = available_reductions(&cur).first() {
        cur = apply_reduction(&cur, r);
    }
    cur
}

pub fn is_primitive(bm: &BasedMatrix) -> bool {
    available_reductions(bm).is_empty()
}
