//! Oracles and fixtures shared by the integration tests. Nothing here calls
//! the library's own normalization code.
#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use rblie::envelope::{LiePresentation, Weight};
use rblie::io::load_presentation;
use rblie::lie::LiePoly;
use rblie::words::{compare_letters, Letter, RlsWord};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of Lyndon words of length `n` over `k` letters.
pub fn witt(k: u64, n: u64) -> u64 {
    let total: i128 = (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| mobius(n / d) as i128 * (k as i128).pow(d as u32))
        .sum();
    (total / n as i128) as u64
}

/// Words are keyed by their letter sequence; letters compare as in the
/// library so the greatest key is the lexicographically greatest word.
#[derive(Clone, PartialEq, Eq)]
pub struct Key(pub Vec<Letter>);

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            match compare_letters(a, b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type Assoc = BTreeMap<Key, Q>;

fn add(into: &mut Assoc, k: Key, c: Q) {
    let e = into.entry(k.clone()).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        into.remove(&k);
    }
}

pub fn assoc_mul(a: &Assoc, b: &Assoc) -> Assoc {
    let mut out = Assoc::new();
    for (u, c) in a {
        for (v, d) in b {
            let mut w = u.0.clone();
            w.extend_from_slice(&v.0);
            add(&mut out, Key(w), c * d);
        }
    }
    out
}

pub fn assoc_sub(a: &Assoc, b: &Assoc) -> Assoc {
    let mut out = a.clone();
    for (k, c) in b {
        add(&mut out, k.clone(), -c.clone());
    }
    out
}

/// Commutator expansion of a basis word through its standard bracketing.
/// Operator letters are kept as opaque letters.
pub fn expand_word(w: &RlsWord) -> Assoc {
    match w.factors() {
        None => Assoc::from([(Key(w.letters().to_vec()), q(1))]),
        Some((l, r)) => {
            let (el, er) = (expand_word(l), expand_word(r));
            assoc_sub(&assoc_mul(&el, &er), &assoc_mul(&er, &el))
        }
    }
}

pub fn expand(p: &LiePoly) -> Assoc {
    let mut out = Assoc::new();
    for (w, c) in p.terms() {
        for (k, d) in expand_word(w) {
            add(&mut out, k, c * &d);
        }
    }
    out
}

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn bundled(name: &str) -> (LiePresentation, Weight) {
    let text = std::fs::read_to_string(data_path(name)).unwrap();
    load_presentation(&text).unwrap()
}

/// sl2 with `[h,f]` changed from `-2f` to `-3f`, which breaks Jacobi.
pub fn perturbed_sl2() -> LiePresentation {
    let text = r#"{
        "basis": ["e", "h", "f"],
        "brackets": [
            { "left": "e", "right": "h", "result": { "e": "-2" } },
            { "left": "e", "right": "f", "result": { "h": "1" } },
            { "left": "h", "right": "f", "result": { "f": "-3" } }
        ]
    }"#;
    load_presentation(text).unwrap().0
}
