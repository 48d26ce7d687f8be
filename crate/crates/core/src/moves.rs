//! Shift and homotopy moves on nanowords, reducibility, and 3-class
//! exploration.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nanoword::{normalize_parts, CrossingType, Nanoword};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    Shift,
    H1,
    H2,
    H2a,
    H3,
    H3a,
    H3b,
    H3c,
}

impl MoveKind {
    pub const ALL: [MoveKind; 8] = [
        MoveKind::Shift,
        MoveKind::H1,
        MoveKind::H2,
        MoveKind::H2a,
        MoveKind::H3,
        MoveKind::H3a,
        MoveKind::H3b,
        MoveKind::H3c,
    ];
    pub const REDUCING: [MoveKind; 3] = [MoveKind::H1, MoveKind::H2, MoveKind::H2a];
    pub const THREE: [MoveKind; 4] = [MoveKind::H3, MoveKind::H3a, MoveKind::H3b, MoveKind::H3c];
}

/// Which side of a schema was matched. For H1/H2/H2a `Forward` removes
/// letters and `Backward` inserts them; for shift and the H3 family the two
/// directions name the left-to-right and right-to-left readings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MoveInstance {
    pub kind: MoveKind,
    pub direction: Direction,
    /// Word positions matched (removals and 3-moves) or insertion gaps
    /// (insertions, `0..=len`).
    pub positions: Vec<usize>,
    /// Letters matched; empty for insertions.
    pub letters: Vec<u8>,
    /// Types of the inserted letters.
    pub new_types: Vec<CrossingType>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_members: usize,
    pub max_steps: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_members: 1_000_000,
            max_steps: 10_000_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ThreeClass {
    /// Sorted ascending.
    pub members: Vec<Nanoword>,
    pub min_member: Nanoword,
    pub reducible: bool,
    pub truncated: bool,
    pub steps: usize,
}

impl ThreeClass {
    pub fn contains(&self, nw: &Nanoword) -> bool {
        self.members.binary_search(nw).is_ok()
    }
}

/// Rotates the first letter to the end, flipping its type (`AxAy -> xByB`).
/// The result is not normalized.
pub fn shift_rotate(nw: &Nanoword) -> Result<Nanoword> {
    let (word, types) = rotate_parts(nw.word(), nw.types()).ok_or(Error::EmptyShift)?;
    Ok(Nanoword::from_parts_unchecked(word, types))
}

fn rotate_parts(word: &[u8], types: &[CrossingType]) -> Option<(Vec<u8>, Vec<CrossingType>)> {
    let (&first, rest) = word.split_first()?;
    let mut w = Vec::with_capacity(word.len());
    w.extend_from_slice(rest);
    w.push(first);
    let mut t = types.to_vec();
    t[first as usize] = t[first as usize].flipped();
    Some((w, t))
}

// A 3-move side is three adjacent pairs over symbols A=0, B=1, C=2 appearing
// in this order in the word; the opposite side swaps each pair.
type PairTemplate = [(u8, u8); 3];

struct ThreeSchema {
    kind: MoveKind,
    direction: Direction,
    pairs: PairTemplate,
}

const THREE_SCHEMAS: [ThreeSchema; 8] = [
    // xAByACzBCt <-> xBAyCAzCBt
    ThreeSchema {
        kind: MoveKind::H3,
        direction: Direction::Forward,
        pairs: [(0, 1), (0, 2), (1, 2)],
    },
    ThreeSchema {
        kind: MoveKind::H3,
        direction: Direction::Backward,
        pairs: [(1, 0), (2, 0), (2, 1)],
    },
    // xAByCAzBCt <-> xBAyACzCBt
    ThreeSchema {
        kind: MoveKind::H3a,
        direction: Direction::Forward,
        pairs: [(0, 1), (2, 0), (1, 2)],
    },
    ThreeSchema {
        kind: MoveKind::H3a,
        direction: Direction::Backward,
        pairs: [(1, 0), (0, 2), (2, 1)],
    },
    // xAByCAzCBt <-> xBAyACzBCt
    ThreeSchema {
        kind: MoveKind::H3b,
        direction: Direction::Forward,
        pairs: [(0, 1), (2, 0), (2, 1)],
    },
    ThreeSchema {
        kind: MoveKind::H3b,
        direction: Direction::Backward,
        pairs: [(1, 0), (0, 2), (1, 2)],
    },
    // xAByACzCBt <-> xBAyCAzBCt
    ThreeSchema {
        kind: MoveKind::H3c,
        direction: Direction::Forward,
        pairs: [(0, 1), (0, 2), (2, 1)],
    },
    ThreeSchema {
        kind: MoveKind::H3c,
        direction: Direction::Backward,
        pairs: [(1, 0), (2, 0), (1, 2)],
    },
];

fn three_types_ok(kind: MoveKind, a: CrossingType, b: CrossingType, c: CrossingType) -> bool {
    match kind {
        MoveKind::H3 => a == b && b == c,
        MoveKind::H3a => a == c && a != b,
        MoveKind::H3b => a == b && a != c,
        MoveKind::H3c => b == c && a != b,
        _ => false,
    }
}

/// Matches `schema` with its first pair at `start`; returns the pair start
/// positions and the letters bound to A, B, C.
fn match_three(
    word: &[u8],
    occ: &[[usize; 2]],
    schema: &ThreeSchema,
    start: usize,
) -> Option<([usize; 3], [u8; 3])> {
    if start + 1 >= word.len() {
        return None;
    }
    let mut bound = [u8::MAX; 3];
    let mut used: [usize; 6] = [usize::MAX; 6];
    let (s0, s1) = schema.pairs[0];
    bound[s0 as usize] = word[start];
    bound[s1 as usize] = word[start + 1];
    if bound[s0 as usize] == bound[s1 as usize] {
        return None;
    }
    used[0] = start;
    used[1] = start + 1;
    let mut starts = [start, 0, 0];
    let other = |letter: u8, pos_used: &[usize]| -> Option<usize> {
        let [p, q] = occ[letter as usize];
        if !pos_used.contains(&p) {
            Some(p)
        } else if !pos_used.contains(&q) {
            Some(q)
        } else {
            None
        }
    };
    for (k, &(x, y)) in schema.pairs.iter().enumerate().skip(1) {
        let pair_start = if bound[x as usize] != u8::MAX {
            let p = other(bound[x as usize], &used[..2 * k])?;
            if p + 1 >= word.len() {
                return None;
            }
            p
        } else if bound[y as usize] != u8::MAX {
            let p = other(bound[y as usize], &used[..2 * k])?;
            p.checked_sub(1)?
        } else {
            return None;
        };
        for (sym, pos) in [(x, pair_start), (y, pair_start + 1)] {
            let l = word[pos];
            if bound[sym as usize] == u8::MAX {
                if bound.contains(&l) {
                    return None;
                }
                bound[sym as usize] = l;
            } else if bound[sym as usize] != l {
                return None;
            }
        }
        if pair_start < starts[k - 1] + 2 {
            return None;
        }
        used[2 * k] = pair_start;
        used[2 * k + 1] = pair_start + 1;
        starts[k] = pair_start;
    }
    Some((starts, bound))
}

fn removal_instances(nw: &Nanoword, kind: MoveKind, out: &mut Vec<MoveInstance>) {
    let w = nw.word();
    let occ = nw.occurrences();
    match kind {
        MoveKind::H1 => {
            for i in 0..w.len().saturating_sub(1) {
                if w[i] == w[i + 1] {
                    out.push(MoveInstance {
                        kind,
                        direction: Direction::Forward,
                        positions: vec![i, i + 1],
                        letters: vec![w[i]],
                        new_types: vec![],
                    });
                }
            }
        }
        MoveKind::H2 | MoveKind::H2a => {
            for i in 0..w.len().saturating_sub(1) {
                let (a, b) = (w[i], w[i + 1]);
                if a == b || nw.type_of(a) == nw.type_of(b) || occ[a as usize][0] != i {
                    continue;
                }
                let (pa, pb) = (occ[a as usize][1], occ[b as usize][1]);
                if pb == i + 1 {
                    continue;
                }
                let hit = match kind {
                    // ...B A...
                    MoveKind::H2 => pa == pb + 1,
                    // ...A B...
                    _ => pb == pa + 1,
                };
                let j = pa.min(pb);
                if hit && j > i + 1 {
                    out.push(MoveInstance {
                        kind,
                        direction: Direction::Forward,
                        positions: vec![i, i + 1, j, j + 1],
                        letters: vec![a, b],
                        new_types: vec![],
                    });
                }
            }
        }
        _ => {}
    }
}

fn insertion_instances(nw: &Nanoword, kind: MoveKind, out: &mut Vec<MoveInstance>) {
    let gaps = nw.word().len() + 1;
    let opposite = [
        vec![CrossingType::A, CrossingType::B],
        vec![CrossingType::B, CrossingType::A],
    ];
    match kind {
        MoveKind::H1 => {
            for g in 0..gaps {
                for t in [CrossingType::A, CrossingType::B] {
                    out.push(MoveInstance {
                        kind,
                        direction: Direction::Backward,
                        positions: vec![g],
                        letters: vec![],
                        new_types: vec![t],
                    });
                }
            }
        }
        MoveKind::H2 | MoveKind::H2a => {
            for g in 0..gaps {
                for h in g..gaps {
                    for t in &opposite {
                        out.push(MoveInstance {
                            kind,
                            direction: Direction::Backward,
                            positions: vec![g, h],
                            letters: vec![],
                            new_types: t.clone(),
                        });
                    }
                }
            }
        }
        _ => {}
    }
}

/// All matches of the requested schemata on `nw`.
pub fn applicable_moves(
    nw: &Nanoword,
    kinds: &[MoveKind],
    allow_insertions: bool,
) -> Vec<MoveInstance> {
    let mut out = Vec::new();
    let occ = nw.occurrences();
    for &kind in kinds {
        match kind {
            MoveKind::Shift => {
                if !nw.is_empty() {
                    out.push(MoveInstance {
                        kind,
                        direction: Direction::Forward,
                        positions: vec![0, occ[nw.word()[0] as usize][1]],
                        letters: vec![nw.word()[0]],
                        new_types: vec![],
                    });
                }
            }
            MoveKind::H1 | MoveKind::H2 | MoveKind::H2a => {
                removal_instances(nw, kind, &mut out);
                if allow_insertions && nw.letter_count() < crate::nanoword::MAX_LETTERS {
                    let need = if kind == MoveKind::H1 { 1 } else { 2 };
                    if nw.letter_count() + need <= crate::nanoword::MAX_LETTERS {
                        insertion_instances(nw, kind, &mut out);
                    }
                }
            }
            _ => {
                for schema in THREE_SCHEMAS.iter().filter(|s| s.kind == kind) {
                    for i in 0..nw.word().len() {
                        if let Some((starts, letters)) = match_three(nw.word(), &occ, schema, i) {
                            let [a, b, c] = letters.map(|l| nw.type_of(l));
                            if three_types_ok(kind, a, b, c) {
                                out.push(MoveInstance {
                                    kind,
                                    direction: schema.direction,
                                    positions: starts.to_vec(),
                                    letters: letters.to_vec(),
                                    new_types: vec![],
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn stale(m: &MoveInstance) -> Error {
    Error::StaleMove(format!(
        "{:?} {:?} at {:?}",
        m.kind, m.direction, m.positions
    ))
}

/// Applies `m` and returns the increasing-normalized result.
pub fn apply_move(nw: &Nanoword, m: &MoveInstance) -> Result<Nanoword> {
    let (word, types) = apply_raw(nw, m)?;
    let (word, types, _) = normalize_parts(&word, &types);
    let out = Nanoword::from_parts_unchecked(word, types);
    debug_assert!(Nanoword::new(out.word().to_vec(), out.types().to_vec()).is_ok());
    Ok(out)
}

fn apply_raw(nw: &Nanoword, m: &MoveInstance) -> Result<(Vec<u8>, Vec<CrossingType>)> {
    let w = nw.word();
    match (m.kind, m.direction) {
        (MoveKind::Shift, _) => {
            if nw.is_empty() || m.letters.first() != Some(&w[0]) {
                return Err(stale(m));
            }
            Ok(rotate_parts(w, nw.types()).expect("nonempty"))
        }
        (MoveKind::H1 | MoveKind::H2 | MoveKind::H2a, Direction::Forward) => {
            let mut fresh = Vec::new();
            removal_instances(nw, m.kind, &mut fresh);
            if !fresh.contains(m) {
                return Err(stale(m));
            }
            Ok(drop_letters(nw, &m.letters))
        }
        (MoveKind::H1 | MoveKind::H2 | MoveKind::H2a, Direction::Backward) => {
            let gaps = w.len() + 1;
            let need = if m.kind == MoveKind::H1 { 1 } else { 2 };
            if m.new_types.len() != need
                || m.positions.len() != need
                || m.positions.iter().any(|&g| g >= gaps)
                || (need == 2
                    && (m.positions[0] > m.positions[1] || m.new_types[0] == m.new_types[1]))
            {
                return Err(stale(m));
            }
            let a = nw.letter_count() as u8;
            let b = a + 1;
            let mut types = nw.types().to_vec();
            types.extend_from_slice(&m.new_types);
            let (first, second): (&[u8], &[u8]) = match m.kind {
                MoveKind::H1 => (&[a, a], &[]),
                MoveKind::H2 => (&[a, b], &[b, a]),
                _ => (&[a, b], &[a, b]),
            };
            let mut word = Vec::with_capacity(w.len() + 2 * need);
            for (g, &l) in w.iter().enumerate() {
                push_at_gap(&mut word, g, m, first, second);
                word.push(l);
            }
            push_at_gap(&mut word, w.len(), m, first, second);
            Ok((word, types))
        }
        (_, direction) => {
            let schema = THREE_SCHEMAS
                .iter()
                .find(|s| s.kind == m.kind && s.direction == direction)
                .ok_or_else(|| stale(m))?;
            let occ = nw.occurrences();
            let start = *m.positions.first().ok_or_else(|| stale(m))?;
            let (starts, letters) = match_three(w, &occ, schema, start).ok_or_else(|| stale(m))?;
            let [a, b, c] = letters.map(|l| nw.type_of(l));
            if starts.as_slice() != m.positions.as_slice()
                || letters.as_slice() != m.letters.as_slice()
                || !three_types_ok(m.kind, a, b, c)
            {
                return Err(stale(m));
            }
            let mut word = w.to_vec();
            for s in starts {
                word.swap(s, s + 1);
            }
            Ok((word, nw.types().to_vec()))
        }
    }
}

fn push_at_gap(word: &mut Vec<u8>, gap: usize, m: &MoveInstance, first: &[u8], second: &[u8]) {
    if m.positions[0] == gap {
        word.extend_from_slice(first);
    }
    if m.positions.len() > 1 && m.positions[1] == gap {
        word.extend_from_slice(second);
    }
}

fn drop_letters(nw: &Nanoword, letters: &[u8]) -> (Vec<u8>, Vec<CrossingType>) {
    let r = nw.restrict(|l| !letters.contains(&l));
    (r.word().to_vec(), r.types().to_vec())
}

/// True iff some H1, H2 or H2a removal applies to `nw` as written.
pub fn is_reducible(nw: &Nanoword) -> bool {
    let w = nw.word();
    if w.windows(2).any(|p| p[0] == p[1]) {
        return true;
    }
    let mut out = Vec::new();
    removal_instances(nw, MoveKind::H2, &mut out);
    removal_instances(nw, MoveKind::H2a, &mut out);
    !out.is_empty()
}

/// Normalized neighbours of `nw` under shift rotation and all 3-moves.
pub fn three_neighbours(nw: &Nanoword) -> Vec<Nanoword> {
    let mut kinds = vec![MoveKind::Shift];
    kinds.extend_from_slice(&MoveKind::THREE);
    applicable_moves(nw, &kinds, false)
        .iter()
        .map(|m| apply_move(nw, m).expect("fresh instance"))
        .collect()
}

/// Outcome of an early-abort class walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Screen {
    /// `nw` is minimal in an irreducible class.
    Candidate,
    /// Some member is smaller than `nw`.
    NotMinimal,
    /// Some member is reducible.
    Reducible,
}

/// Breadth-first closure of `nw` under shift rotation and 3-moves.
pub fn three_class(nw: &Nanoword, limits: Limits) -> ThreeClass {
    let start = nw.normalized();
    let mut seen: HashSet<Nanoword> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    let mut steps = 0usize;
    let mut truncated = false;
    let mut reducible = false;
    while let Some(cur) = queue.pop_front() {
        steps += 1;
        reducible |= is_reducible(&cur);
        if steps > limits.max_steps {
            truncated = true;
            break;
        }
        for next in three_neighbours(&cur) {
            if !seen.contains(&next) {
                if seen.len() >= limits.max_members {
                    truncated = true;
                    break;
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
        if truncated {
            break;
        }
    }
    // members still queued were never expanded but are still members
    reducible |= queue.iter().any(is_reducible);
    let mut members: Vec<Nanoword> = seen.into_iter().collect();
    members.sort();
    let min_member = members[0].clone();
    ThreeClass {
        members,
        min_member,
        reducible,
        truncated,
        steps,
    }
}

/// Walks the 3-class of `nw` and stops as soon as a smaller or reducible
/// member turns up. `nw` must be increasing.
pub fn screen(nw: &Nanoword, limits: Limits) -> Result<Screen> {
    if is_reducible(nw) {
        return Ok(Screen::Reducible);
    }
    let mut seen: HashSet<Nanoword> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(nw.clone());
    queue.push_back(nw.clone());
    let mut steps = 0usize;
    while let Some(cur) = queue.pop_front() {
        steps += 1;
        if steps > limits.max_steps {
            return Err(Error::Truncated {
                members: seen.len(),
                steps,
            });
        }
        for next in three_neighbours(&cur) {
            if seen.contains(&next) {
                continue;
            }
            if next < *nw {
                return Ok(Screen::NotMinimal);
            }
            if is_reducible(&next) {
                return Ok(Screen::Reducible);
            }
            if seen.len() >= limits.max_members {
                return Err(Error::Truncated {
                    members: seen.len(),
                    steps,
                });
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
    }
    Ok(Screen::Candidate)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReduceBudget {
    pub limits: Limits,
}

/// Greedily lowers the letter count: explore the 3-class, apply a
/// crossing-reducing move to the first reducible member, repeat. Returns the
/// minimal member of the final irreducible 3-class.
pub fn reduce_to_irreducible(nw: &Nanoword, budget: ReduceBudget) -> Result<Nanoword> {
    let mut cur = nw.normalized();
    loop {
        if let Some(smaller) = reduce_once(&cur) {
            cur = smaller;
            continue;
        }
        let class = three_class(&cur, budget.limits);
        if class.truncated {
            return Err(Error::Truncated {
                members: class.members.len(),
                steps: class.steps,
            });
        }
        match class.members.iter().find_map(reduce_once) {
            Some(smaller) => cur = smaller,
            None => return Ok(class.min_member),
        }
    }
}

/// Letters added by `m` (negative for removals).
pub fn letter_delta(m: &MoveInstance) -> isize {
    let size = match m.kind {
        MoveKind::H1 => 1,
        MoveKind::H2 | MoveKind::H2a => 2,
        _ => return 0,
    };
    match m.direction {
        Direction::Forward => -size,
        Direction::Backward => size,
    }
}

/// Applies `steps` uniformly chosen moves from every schema, never letting
/// the letter count exceed that of `nw` by more than `insert_budget`.
pub fn random_homotopy<R: rand::Rng + ?Sized>(
    nw: &Nanoword,
    steps: usize,
    insert_budget: usize,
    rng: &mut R,
) -> Nanoword {
    let cap = nw.letter_count() + insert_budget;
    let mut cur = nw.normalized();
    for _ in 0..steps {
        let moves: Vec<MoveInstance> =
            applicable_moves(&cur, &MoveKind::ALL, cur.letter_count() < cap)
                .into_iter()
                .filter(|m| cur.letter_count() as isize + letter_delta(m) <= cap as isize)
                .collect();
        if moves.is_empty() {
            break;
        }
        let m = &moves[rng.gen_range(0..moves.len())];
        cur = apply_move(&cur, m).expect("fresh instance");
    }
    cur
}

fn reduce_once(nw: &Nanoword) -> Option<Nanoword> {
    let m = applicable_moves(nw, &MoveKind::REDUCING, false)
        .into_iter()
        .next()?;
    Some(apply_move(nw, &m).expect("fresh instance"))
}
