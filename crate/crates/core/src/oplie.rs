//! Bases of the free operated Lie algebra: RLS and RALS words within
//! degree / R-degree bounds.
//!
//! Words are built level by level: the letters available at R-degree budget
//! `r` are the generators together with `R([u])` for every RLS word `u` of
//! R-degree at most `r - 1`; the words are then the LS-words over those
//! letters.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::lie::LiePoly;
use crate::words::{ls_words_weighted, Letter, RlsWord};

pub use crate::lie::LiePoly as OpLiePoly;

/// Bounds on an enumeration of RLS words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RlsEnumerationBounds {
    /// Number of top-level letters of `U`.
    pub max_degree: usize,
    /// Total number of operator symbols at all depths.
    pub max_rdegree: usize,
    /// Maximal nesting depth of operators (`n` in `RLS_n`); unbounded if `None`.
    pub max_level: Option<usize>,
    /// Degree bound for operator arguments at every depth; defaults to
    /// `max_degree`.
    pub max_arg_degree: Option<usize>,
}

impl RlsEnumerationBounds {
    pub fn new(max_degree: usize, max_rdegree: usize) -> Self {
        RlsEnumerationBounds {
            max_degree,
            max_rdegree,
            max_level: None,
            max_arg_degree: None,
        }
    }

    pub fn with_max_level(mut self, level: usize) -> Self {
        self.max_level = Some(level);
        self
    }

    pub fn with_arg_degree(mut self, degree: usize) -> Self {
        self.max_arg_degree = Some(degree);
        self
    }

    fn arg_degree(&self) -> usize {
        self.max_arg_degree.unwrap_or(self.max_degree)
    }

    /// Whether `w` lies within these bounds.
    pub fn contains(&self, w: &RlsWord) -> bool {
        w.degree() <= self.max_degree
            && w.rdegree() <= self.max_rdegree
            && self.max_level.is_none_or(|l| w.level() <= l)
            && args_within(w, self.arg_degree())
    }
}

fn args_within(w: &RlsWord, max: usize) -> bool {
    w.letters().iter().all(|l| match l {
        Letter::Gen(_) => true,
        Letter::Op(arg) => arg.degree() <= max && args_within(arg, max),
    })
}

pub fn rdegree(w: &RlsWord) -> usize {
    w.rdegree()
}

pub fn degree(w: &RlsWord) -> usize {
    w.degree()
}

/// All RLS words over `num_generators` generators within `bounds`, in
/// ascending deglex order.
pub fn enumerate_rls_words(num_generators: usize, bounds: &RlsEnumerationBounds) -> Vec<RlsWord> {
    let mut memo = HashMap::new();
    let level = bounds.max_level.unwrap_or(bounds.max_rdegree);
    rls_within(
        num_generators,
        bounds.max_degree,
        bounds.arg_degree(),
        bounds.max_rdegree,
        level,
        &mut memo,
    )
}

type Memo = HashMap<(usize, usize, usize), Vec<RlsWord>>;

fn rls_within(
    k: usize,
    degree: usize,
    arg_degree: usize,
    rdegree: usize,
    level: usize,
    memo: &mut Memo,
) -> Vec<RlsWord> {
    if degree == 0 {
        return Vec::new();
    }
    let key = (degree, rdegree, level);
    if let Some(ws) = memo.get(&key) {
        return ws.clone();
    }
    let mut letters: Vec<Letter> = (0..k as u32).map(Letter::Gen).collect();
    if rdegree > 0 && level > 0 {
        let args = rls_within(k, arg_degree, arg_degree, rdegree - 1, level - 1, memo);
        letters.extend(args.into_iter().map(Letter::Op));
    }
    let words = ls_words_weighted(&letters, degree, Letter::rdegree, rdegree);
    memo.insert(key, words.clone());
    words
}

/// True iff no two adjacent letters `R([u])R([v])` with `[u] > [v]` occur at
/// any nesting depth.
pub fn is_rals_word(w: &RlsWord) -> bool {
    let letters = w.letters();
    let adjacent_ok = letters.windows(2).all(|pair| match (&pair[0], &pair[1]) {
        (Letter::Op(u), Letter::Op(v)) => u <= v,
        _ => true,
    });
    adjacent_ok
        && letters
            .iter()
            .filter_map(Letter::op_arg)
            .all(is_rals_word)
}

pub fn enumerate_rals_words(num_generators: usize, bounds: &RlsEnumerationBounds) -> Vec<RlsWord> {
    enumerate_rls_words(num_generators, bounds)
        .into_iter()
        .filter(is_rals_word)
        .collect()
}

/// `R(p)`: the operator applied to an element of `RLie⟨X⟩`.
pub fn apply_operator(p: &LiePoly) -> LiePoly {
    p.apply_operator()
}
