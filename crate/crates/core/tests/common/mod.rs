//! Published census values used as oracles by the integration tests.
#![allow(dead_code)]

use vstring::Nanoword;

pub fn nw(s: &str) -> Nanoword {
    s.parse().unwrap()
}

/// id, nanoword, u(t), rho, phi.
pub const TABLE1: [(&str, &str, &str, usize, &str); 29] = [
    ("0", "0", "0", 0, ""),
    ("3.1", "ABACBC:aab", "-t^2+2t", 3, "-2,1,1,1,2,0"),
    ("3.2", "ABACBC:abb", "t^2-2t", 3, "-1,-1,2,0,2,1"),
    ("4.1", "ABABCDCD:aaaa", "0", 4, "-1,-1,1,1,0,1,0,0,1,0"),
    ("4.2", "ABABCDCD:aabb", "0", 4, "-1,-1,1,1,-1,1,1,1,1,1"),
    ("4.3", "ABABCDCD:bbbb", "0", 4, "-1,-1,1,1,0,1,2,2,1,0"),
    ("4.4", "ABACBDCD:aaaa", "0", 4, "-1,0,0,1,1,1,0,-1,1,1"),
    ("4.5", "ABACBDCD:aaab", "-t^2+2t", 4, "-2,0,1,1,1,2,1,1,1,1"),
    ("4.6", "ABACBDCD:aaba", "-t^2+2t", 4, "-2,0,1,1,2,1,1,1,0,0"),
    ("4.7", "ABACBDCD:abaa", "t^2-2t", 4, "-1,-1,0,2,0,0,1,1,1,2"),
    ("4.8", "ABACBDCD:abab", "0", 4, "-1,0,0,1,1,1,1,0,0,0"),
    ("4.9", "ABACBDCD:abba", "0", 4, "-2,-1,1,2,0,1,3,0,1,0"),
    (
        "4.10",
        "ABACBDCD:abbb",
        "t^2-2t",
        4,
        "-1,-1,0,2,-1,0,2,0,1,1",
    ),
    (
        "4.11",
        "ABACBDCD:baaa",
        "t^2-2t",
        4,
        "-1,-1,0,2,-1,1,2,1,1,1",
    ),
    ("4.12", "ABACBDCD:baab", "0", 4, "-2,-1,1,2,1,2,1,2,2,1"),
    ("4.13", "ABACBDCD:baba", "0", 4, "-1,0,0,1,0,0,1,0,1,1"),
    (
        "4.14",
        "ABACBDCD:babb",
        "t^2-2t",
        4,
        "-1,-1,0,2,0,1,2,0,2,0",
    ),
    (
        "4.15",
        "ABACBDCD:bbab",
        "-t^2+2t",
        4,
        "-2,0,1,1,0,2,2,1,0,0",
    ),
    (
        "4.16",
        "ABACBDCD:bbba",
        "-t^2+2t",
        4,
        "-2,0,1,1,1,2,1,0,0,1",
    ),
    ("4.17", "ABACBDCD:bbbb", "0", 4, "-1,0,0,1,0,0,2,1,0,0"),
    (
        "4.18",
        "ABACDBCD:aabb",
        "-t^3+t^2+t",
        4,
        "-3,0,1,2,2,1,3,0,1,0",
    ),
    (
        "4.19",
        "ABACDBCD:abbb",
        "t^3-t^2-t",
        4,
        "-2,-1,0,3,0,1,3,0,1,2",
    ),
    (
        "4.20",
        "ABACDBCD:baaa",
        "t^3-t^2-t",
        4,
        "-2,-1,0,3,1,1,2,1,3,1",
    ),
    (
        "4.21",
        "ABACDBCD:bbaa",
        "-t^3+t^2+t",
        4,
        "-3,0,1,2,1,3,2,1,1,1",
    ),
    (
        "4.22",
        "ABACDBDC:aabb",
        "-t^3+3t",
        4,
        "-3,1,1,1,1,2,3,0,0,0",
    ),
    (
        "4.23",
        "ABACDBDC:abbb",
        "t^3-3t",
        4,
        "-1,-1,-1,3,0,0,3,0,2,1",
    ),
    (
        "4.24",
        "ABCADBCD:aaab",
        "-t^3+2t^2-t",
        4,
        "-3,-1,2,2,1,2,3,1,2,0",
    ),
    (
        "4.25",
        "ABCADBCD:abbb",
        "t^3-2t^2+t",
        4,
        "-2,-2,1,3,0,2,3,1,2,1",
    ),
    ("4.26", "ABCADCBD:aaab", "0", 4, "-2,-2,2,2,0,2,3,1,2,0"),
];

/// id, mirror, inverse, mirror-inverse, type.
pub const TABLE3: [(&str, &str, &str, &str, &str); 13] = [
    ("0", "=", "=", "=", "a"),
    ("3.1", "=", "3.2", "3.2", "+"),
    ("4.1", "4.3", "4.3", "=", "-"),
    ("4.2", "=", "=", "=", "a"),
    ("4.4", "4.17", "4.17", "=", "-"),
    ("4.5", "4.16", "4.10", "4.11", "c"),
    ("4.6", "4.15", "4.14", "4.7", "c"),
    ("4.8", "4.13", "=", "4.13", "i"),
    ("4.9", "4.12", "4.12", "=", "-"),
    ("4.18", "4.21", "4.20", "4.19", "c"),
    ("4.22", "=", "4.23", "4.23", "+"),
    ("4.24", "=", "4.25", "4.25", "+"),
    ("4.26", "=", "=", "=", "a"),
];

/// Pairs with equal phi told apart by their 2-coverings.
pub const TABLE4: [[(&str, &str); 2]; 4] = [
    [("ABACBDECDE:abbbb", "0"), ("ABACDECEBD:aaaba", "3.2")],
    [("ABACBDEDCE:aaaab", "3.1"), ("ABACDECDBE:aabbb", "0")],
    [("ABACBDEDCE:baabb", "3.1"), ("ABACDECDBE:bbaaa", "0")],
    [("ABACBDECDE:baaaa", "0"), ("ABACDECEBD:baabb", "3.2")],
];

pub const TABLE4_PHI: [&str; 4] = [
    "-2,-1,0,1,2,-1,1,1,3,1,0,1,0,1,0",
    "-2,-1,0,1,2,0,1,1,3,0,0,1,1,1,-1",
    "-2,-1,0,1,2,1,1,2,1,1,2,2,0,1,2",
    "-2,-1,0,1,2,2,1,2,1,0,2,2,1,1,1",
];

/// Groups no invariant separates: members, rho, phi.
pub const TABLE5: [(&[&str], usize, &str); 9] = [
    (
        &["ABABCDCD:aabb", "ABABCDCEDE:bbaba", "ABABCDCEDE:aabab"],
        4,
        "-1,-1,1,1,-1,1,1,1,1,1",
    ),
    (
        &["ABABCDCD:aaaa", "ABABCDCEDE:aaaba"],
        4,
        "-1,-1,1,1,0,1,0,0,1,0",
    ),
    (
        &["ABABCDCD:bbbb", "ABABCDCEDE:bbbab"],
        4,
        "-1,-1,1,1,0,1,2,2,1,0",
    ),
    (
        &["ABACBDCD:bbbb", "ABACBDCEDE:babab"],
        4,
        "-1,0,0,1,0,0,2,1,0,0",
    ),
    (
        &["ABACBDCD:aaaa", "ABACBDCEDE:ababa"],
        4,
        "-1,0,0,1,1,1,0,-1,1,1",
    ),
    (
        &["ABACBDCD:abba", "ABCADBECDE:bbbbb"],
        4,
        "-2,-1,1,2,0,1,3,0,1,0",
    ),
    (
        &["ABACBDCD:baab", "ABCADBECDE:aaaaa"],
        4,
        "-2,-1,1,2,1,2,1,2,2,1",
    ),
    (
        &["ABACDBDECE:abbab", "ABACDBECED:ababb"],
        5,
        "-1,-1,0,1,1,-1,0,1,1,0,1,1,1,1,1",
    ),
    (
        &["ABACDBDECE:abaab", "ABACDBECED:babaa"],
        5,
        "-1,-1,0,1,1,-1,1,1,1,1,1,1,0,0,1",
    ),
];

/// The textbook 4x4 based matrix on (s, A, B, C).
pub const WORKED_EXAMPLE: [[i32; 4]; 4] =
    [[0, -1, 2, -1], [1, 0, 2, 0], [-2, -2, 0, -1], [1, 0, 1, 0]];

/// Every nanoword on `n` letters with an increasing Gauss word.
pub fn all_nanowords(n: usize) -> Vec<Nanoword> {
    let gauss = vstring::census::increasing_gauss_words(n, false);
    let mut out = Vec::new();
    for w in &gauss {
        for t in vstring::census::type_words(n) {
            out.push(Nanoword::new(w.clone(), t).unwrap());
        }
    }
    out
}

/// Skew-symmetric matrix whose lower-triangle tuple is `phi`.
pub fn matrix_from_phi(phi: &[i32]) -> Vec<Vec<i32>> {
    let mut n = 1;
    while n * (n - 1) / 2 < phi.len() {
        n += 1;
    }
    let mut m = vec![vec![0; n]; n];
    let mut k = 0;
    for j in 0..n {
        for i in j + 1..n {
            m[i][j] = phi[k];
            m[j][i] = -phi[k];
            k += 1;
        }
    }
    m
}

pub fn parse_phi(text: &str) -> Vec<i32> {
    if text.is_empty() {
        return Vec::new();
    }
    text.split(',').map(|v| v.parse().unwrap()).collect()
}
