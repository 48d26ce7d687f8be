//! The census pipeline: generate increasing Gauss words, expand type
//! assignments, keep nanowords that are minimal in an irreducible 3-class,
//! then separate the survivors by invariants.
//!
//! Identification never assumes that a virtual string has a unique
//! irreducible 3-class: a word is matched to a record either by landing in
//! the record's 3-class after reduction, or by invariants when those are
//! unique across the census.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{covering, covering_radii, pbm, u_polynomial, CanonicalPbm, UPolynomial};
use crate::moves::{reduce_to_irreducible, screen, Limits, ReduceBudget, Screen};
use crate::nanoword::{CrossingType, Nanoword, Transform, MAX_LETTERS};

/// Increasing Gauss words on `n` letters in ascending order. With
/// `skip_adjacent_doubles`, words containing `XX` are left out.
pub fn increasing_gauss_words(n: usize, skip_adjacent_doubles: bool) -> Vec<Vec<u8>> {
    assert!(
        n <= MAX_LETTERS,
        "alphabet limited to {MAX_LETTERS} letters"
    );
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(2 * n);
    let mut seen = vec![0u8; n];
    extend_word(n, skip_adjacent_doubles, &mut word, &mut seen, 0, &mut out);
    out
}

fn extend_word(
    n: usize,
    skip: bool,
    word: &mut Vec<u8>,
    seen: &mut [u8],
    next_new: u8,
    out: &mut Vec<Vec<u8>>,
) {
    if word.len() == 2 * n {
        out.push(word.clone());
        return;
    }
    // open letters are all smaller than the next new letter, so trying them
    // first keeps the output sorted
    for l in 0..next_new {
        if seen[l as usize] == 1 && !(skip && word.last() == Some(&l)) {
            seen[l as usize] = 2;
            word.push(l);
            extend_word(n, skip, word, seen, next_new, out);
            word.pop();
            seen[l as usize] = 1;
        }
    }
    if (next_new as usize) < n {
        seen[next_new as usize] = 1;
        word.push(next_new);
        extend_word(n, skip, word, seen, next_new + 1, out);
        word.pop();
        seen[next_new as usize] = 0;
    }
}

/// All `2^n` type words on `n` letters in ascending order.
pub fn type_words(n: usize) -> impl Iterator<Item = Vec<CrossingType>> {
    (0u64..1 << n).map(move |bits| {
        (0..n)
            .map(|i| {
                if bits >> (n - 1 - i) & 1 == 1 {
                    CrossingType::B
                } else {
                    CrossingType::A
                }
            })
            .collect()
    })
}

/// Nanowords on `n` letters that are alphabetically minimal in an
/// irreducible 3-class, sorted ascending.
pub fn candidates(n: usize, limits: Limits) -> Result<Vec<Nanoword>> {
    let words = increasing_gauss_words(n, true);
    let units: Vec<Nanoword> = words
        .iter()
        .flat_map(|w| type_words(n).map(move |t| Nanoword::from_parts_unchecked(w.clone(), t)))
        .collect();
    let screened: Vec<Result<Option<Nanoword>>> = units
        .into_par_iter()
        .map(|nw| Ok((screen(&nw, limits)? == Screen::Candidate).then_some(nw)))
        .collect();
    let mut out = Vec::new();
    for r in screened {
        if let Some(nw) = r? {
            out.push(nw);
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymmetryType {
    #[serde(rename = "c")]
    Chiral,
    #[serde(rename = "i")]
    Invertible,
    #[serde(rename = "+")]
    PositiveAmphicheiral,
    #[serde(rename = "-")]
    NegativeAmphicheiral,
    #[serde(rename = "a")]
    Full,
}

impl SymmetryType {
    pub fn from_fixed(mirror: bool, inverse: bool, mirror_inverse: bool) -> Self {
        match (mirror, inverse, mirror_inverse) {
            (true, true, true) => SymmetryType::Full,
            (false, true, false) => SymmetryType::Invertible,
            (true, false, false) => SymmetryType::PositiveAmphicheiral,
            (false, false, true) => SymmetryType::NegativeAmphicheiral,
            (false, false, false) => SymmetryType::Chiral,
            // two fixed operations force the third
            _ => SymmetryType::Full,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            SymmetryType::Chiral => "c",
            SymmetryType::Invertible => "i",
            SymmetryType::PositiveAmphicheiral => "+",
            SymmetryType::NegativeAmphicheiral => "-",
            SymmetryType::Full => "a",
        }
    }
}

impl fmt::Display for SymmetryType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Symmetry {
    pub mirror: String,
    pub inverse: String,
    pub mirror_inverse: String,
    #[serde(rename = "type")]
    pub kind: SymmetryType,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringRecord {
    pub id: String,
    pub nanoword: Nanoword,
    #[serde(with = "upoly_pairs")]
    pub u: UPolynomial,
    pub rho: usize,
    pub phi: Vec<i32>,
    #[serde(default)]
    pub coverings: BTreeMap<u32, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<Symmetry>,
}

mod upoly_pairs {
    use super::UPolynomial;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(u: &UPolynomial, s: S) -> Result<S::Ok, S::Error> {
        u.pairs().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<UPolynomial, D::Error> {
        Ok(UPolynomial::from_pairs(&Vec::<[i64; 2]>::deserialize(d)?))
    }
}

impl StringRecord {
    pub fn crossings(&self) -> usize {
        self.nanoword.letter_count()
    }

    pub fn pbm(&self) -> CanonicalPbm {
        CanonicalPbm {
            rho: self.rho,
            phi: self.phi.clone(),
        }
    }

    pub fn phi_text(&self) -> String {
        self.pbm().phi_text()
    }
}

/// A nanoword with the covering labels used to separate it from others.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupMember {
    pub nanoword: Nanoword,
    /// Census id when the member is itself a record.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub coverings: BTreeMap<u32, String>,
}

/// Nanowords sharing one primitive based matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Group {
    pub rho: usize,
    pub phi: Vec<i32>,
    pub members: Vec<GroupMember>,
}

impl Group {
    pub fn phi_text(&self) -> String {
        CanonicalPbm {
            rho: self.rho,
            phi: self.phi.clone(),
        }
        .phi_text()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusTable {
    pub records: Vec<StringRecord>,
    /// Groups no computed invariant separates.
    #[serde(default)]
    pub unresolved: Vec<Group>,
    /// Groups with equal primitive based matrices separated by coverings.
    #[serde(default)]
    pub covering_separated: Vec<Group>,
    /// Number of candidates found per crossing count.
    #[serde(default)]
    pub candidate_counts: BTreeMap<usize, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Identification {
    Known(String),
    Ambiguous(Vec<Nanoword>),
    Unknown,
}

impl fmt::Display for Identification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Identification::Known(id) => f.write_str(id),
            Identification::Ambiguous(group) => {
                let names: Vec<String> = group.iter().map(|n| n.to_string()).collect();
                write!(f, "ambiguous({})", names.join(", "))
            }
            Identification::Unknown => f.write_str("unknown"),
        }
    }
}

const COVERING_DEPTH: usize = 3;

impl CensusTable {
    pub fn record(&self, id: &str) -> Option<&StringRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    pub fn max_crossings(&self) -> Option<usize> {
        self.records.iter().map(|r| r.crossings()).max()
    }

    /// Records per crossing count.
    pub fn counts(&self, max_n: usize) -> Vec<(usize, usize)> {
        (0..=max_n)
            .map(|n| {
                (
                    n,
                    self.records.iter().filter(|r| r.crossings() == n).count(),
                )
            })
            .collect()
    }

    pub fn identify(&self, nw: &Nanoword, limits: Limits) -> Result<Identification> {
        self.identify_depth(nw, limits, COVERING_DEPTH)
    }

    fn identify_depth(
        &self,
        nw: &Nanoword,
        limits: Limits,
        depth: usize,
    ) -> Result<Identification> {
        let reduced = reduce_to_irreducible(nw, ReduceBudget { limits })?;
        if let Some(r) = self.records.iter().find(|r| r.nanoword == reduced) {
            return Ok(Identification::Known(r.id.clone()));
        }
        let key = pbm(&reduced);
        let by_phi: Vec<&StringRecord> = self
            .records
            .iter()
            .filter(|r| r.rho == key.rho && r.phi == key.phi)
            .collect();
        let groups: Vec<&Group> = self
            .unresolved
            .iter()
            .filter(|g| g.rho == key.rho && g.phi == key.phi)
            .collect();
        if by_phi.len() == 1 && groups.is_empty() {
            return Ok(Identification::Known(by_phi[0].id.clone()));
        }
        if by_phi.is_empty() && groups.is_empty() {
            return Ok(Identification::Unknown);
        }
        if depth == 0 {
            return Ok(Identification::Unknown);
        }
        // the matrix alone is not decisive: compare coverings
        let labels = self.covering_labels(&reduced, limits, depth - 1)?;
        let hits: Vec<&StringRecord> = by_phi
            .into_iter()
            .filter(|r| !r.coverings.is_empty() && r.coverings == labels)
            .collect();
        let group_hits: Vec<&Group> = groups
            .into_iter()
            .filter(|g| g.members.iter().any(|m| m.coverings == labels))
            .collect();
        match (hits.as_slice(), group_hits.as_slice()) {
            ([r], []) => Ok(Identification::Known(r.id.clone())),
            ([], []) => Ok(Identification::Unknown),
            _ => {
                let mut members: Vec<Nanoword> = hits.iter().map(|r| r.nanoword.clone()).collect();
                for g in group_hits {
                    members.extend(g.members.iter().map(|m| m.nanoword.clone()));
                }
                members.sort();
                members.dedup();
                Ok(Identification::Ambiguous(members))
            }
        }
    }

    /// `r -> identification` for the covering radii of `nw`.
    pub fn covering_labels(
        &self,
        nw: &Nanoword,
        limits: Limits,
        depth: usize,
    ) -> Result<BTreeMap<u32, String>> {
        let mut out = BTreeMap::new();
        for r in covering_radii(nw) {
            let cover = covering(nw, r);
            let label = if cover == *nw {
                // fixed by the covering; identify without recursing on itself
                match self.records.iter().find(|rec| rec.nanoword == *nw) {
                    Some(rec) => rec.id.clone(),
                    None => "self".to_string(),
                }
            } else {
                match self.identify_depth(&cover, limits, depth)? {
                    Identification::Unknown => "unidentified".to_string(),
                    other => other.to_string(),
                }
            };
            out.insert(r, label);
        }
        Ok(out)
    }

    /// Splits `cands` (all on one crossing count) into new records,
    /// covering-separated groups and unresolved groups, appending to `self`.
    pub fn distinguish(&mut self, n: usize, cands: &[Nanoword], limits: Limits) -> Result<()> {
        self.candidate_counts.insert(n, cands.len());
        let keyed: Vec<(CanonicalPbm, Nanoword)> =
            cands.par_iter().map(|c| (pbm(c), c.clone())).collect();
        let mut by_phi: BTreeMap<CanonicalPbm, Vec<Nanoword>> = BTreeMap::new();
        for (k, c) in keyed {
            by_phi.entry(k).or_default().push(c);
        }
        let mut new_records: Vec<(Nanoword, CanonicalPbm)> = Vec::new();
        let mut separated = Vec::new();
        let mut unresolved = Vec::new();
        for (key, words) in by_phi {
            let prior: Vec<&StringRecord> = self
                .records
                .iter()
                .filter(|r| r.rho == key.rho && r.phi == key.phi)
                .collect();
            if words.len() == 1 && prior.is_empty() {
                new_records.push((words[0].clone(), key));
                continue;
            }
            let mut members: Vec<GroupMember> = prior
                .iter()
                .map(|r| {
                    Ok(GroupMember {
                        nanoword: r.nanoword.clone(),
                        id: Some(r.id.clone()),
                        coverings: self.covering_labels(&r.nanoword, limits, COVERING_DEPTH)?,
                    })
                })
                .collect::<Result<_>>()?;
            for w in &words {
                members.push(GroupMember {
                    nanoword: w.clone(),
                    id: None,
                    coverings: self.covering_labels(w, limits, COVERING_DEPTH)?,
                });
            }
            let mut split: BTreeMap<BTreeMap<u32, String>, Vec<GroupMember>> = BTreeMap::new();
            for m in &members {
                split
                    .entry(m.coverings.clone())
                    .or_default()
                    .push(m.clone());
            }
            for part in split.values() {
                if part.len() == 1 {
                    if part[0].id.is_none() {
                        new_records.push((part[0].nanoword.clone(), key.clone()));
                    }
                } else {
                    unresolved.push(Group {
                        rho: key.rho,
                        phi: key.phi.clone(),
                        members: part.clone(),
                    });
                }
            }
            if split.len() > 1 {
                separated.push(Group {
                    rho: key.rho,
                    phi: key.phi.clone(),
                    members,
                });
            }
        }
        new_records.sort();
        for (k, (nw, key)) in new_records.into_iter().enumerate() {
            let id = if n == 0 {
                "0".to_string()
            } else {
                format!("{n}.{}", k + 1)
            };
            self.records.push(StringRecord {
                id,
                u: u_polynomial(&nw),
                nanoword: nw,
                rho: key.rho,
                phi: key.phi,
                coverings: BTreeMap::new(),
                symmetry: None,
            });
        }
        self.covering_separated.extend(separated);
        self.unresolved.extend(unresolved);
        Ok(())
    }

    /// Fills the covering column of every record against the full census.
    pub fn fill_coverings(&mut self, limits: Limits) -> Result<()> {
        let labels: Vec<BTreeMap<u32, String>> = self
            .records
            .par_iter()
            .map(|r| self.covering_labels(&r.nanoword, limits, COVERING_DEPTH))
            .collect::<Result<_>>()?;
        for (r, l) in self.records.iter_mut().zip(labels) {
            r.coverings = l;
        }
        Ok(())
    }

    pub fn symmetry_classify(&self, record: &StringRecord, limits: Limits) -> Result<Symmetry> {
        let mut ids = Vec::new();
        for t in [
            Transform::Mirror,
            Transform::Inverse,
            Transform::MirrorInverse,
        ] {
            match self.identify(&record.nanoword.transform(t), limits)? {
                Identification::Known(id) => ids.push(id),
                other => {
                    return Err(Error::Unidentified {
                        id: record.id.clone(),
                        detail: format!("{t:?} gives {other}"),
                    })
                }
            }
        }
        let fixed: Vec<bool> = ids.iter().map(|id| *id == record.id).collect();
        let label = |id: &String| {
            if *id == record.id {
                "=".to_string()
            } else {
                id.clone()
            }
        };
        Ok(Symmetry {
            mirror: label(&ids[0]),
            inverse: label(&ids[1]),
            mirror_inverse: label(&ids[2]),
            kind: SymmetryType::from_fixed(fixed[0], fixed[1], fixed[2]),
        })
    }

    /// Classifies every record whose transforms can all be identified.
    pub fn fill_symmetry(&mut self, limits: Limits) {
        let sym: Vec<Option<Symmetry>> = self
            .records
            .par_iter()
            .map(|r| self.symmetry_classify(r, limits).ok())
            .collect();
        for (r, s) in self.records.iter_mut().zip(sym) {
            r.symmetry = s;
        }
    }

    /// One row per unoriented class, represented by its first record.
    pub fn unoriented_classes(&self) -> Vec<&StringRecord> {
        let mut taken: Vec<&str> = Vec::new();
        let mut rows = Vec::new();
        for r in &self.records {
            let Some(s) = &r.symmetry else { continue };
            if taken.contains(&r.id.as_str()) {
                continue;
            }
            taken.push(&r.id);
            for other in [&s.mirror, &s.inverse, &s.mirror_inverse] {
                if other != "=" {
                    taken.push(other);
                }
            }
            rows.push(r);
        }
        rows
    }
}

/// Runs the whole pipeline for crossing counts `0..=max_n`.
pub fn build_census(max_n: usize, limits: Limits) -> Result<CensusTable> {
    let mut census = CensusTable::default();
    for n in 0..=max_n {
        extend_census(&mut census, n, limits)?;
    }
    finish_census(&mut census, limits)?;
    Ok(census)
}

/// Enumerates and distinguishes candidates on `n` letters. Smaller counts
/// must already be present.
pub fn extend_census(census: &mut CensusTable, n: usize, limits: Limits) -> Result<()> {
    let cands = candidates(n, limits)?;
    census.distinguish(n, &cands, limits)
}

pub fn finish_census(census: &mut CensusTable, limits: Limits) -> Result<()> {
    census.fill_coverings(limits)?;
    census.fill_symmetry(limits);
    Ok(())
}
