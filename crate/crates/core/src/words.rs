//! Letters, words and Lyndon–Shirshov machinery.
//!
//! Generators are identified by their rank in the declared order, rank 0 being
//! the greatest. Operator letters `R([u])` wrap an [`RlsWord`] and are greater
//! than every generator; two operator letters compare by their arguments in
//! deglex order.
//!
//! A word `u` is an LS-word when it is strictly greater (lexicographically)
//! than each of its proper rotations. Every LS-word carries its standard
//! bracketing: `[u] = ([v][w])` where `w` is the longest proper LS-suffix.
//!
//! All [`RlsWord`] values are interned in a process-wide table, so equality and
//! hashing are pointer operations.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("word is not a Lyndon–Shirshov word")]
    NotLyndonShirshov,
    #[error("empty word")]
    Empty,
    #[error("span {start}..{end} is not a subword occurrence in a word of degree {degree}")]
    NotASubwordOccurrence {
        start: usize,
        end: usize,
        degree: usize,
    },
    #[error("subword occurrences {0:?} and {1:?} overlap")]
    OverlappingOccurrences(std::ops::Range<usize>, std::ops::Range<usize>),
    #[error("no Shirshov bracketing found for the requested occurrence")]
    NoSpecialBracketing,
    #[error("invalid generator name {0:?}")]
    InvalidGeneratorName(String),
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
}

/// A generator of the free algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Generator {
    pub name: String,
    /// Position in the declared order; 0 is the greatest generator.
    pub rank: u32,
}

/// A finite, totally ordered set of named generators (first = greatest).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    generators: Vec<Generator>,
    by_name: HashMap<String, u32>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut generators = Vec::new();
        let mut by_name = HashMap::new();
        for (rank, name) in names.into_iter().enumerate() {
            let name = name.into();
            if !is_identifier(&name) || name == "R" {
                return Err(WordError::InvalidGeneratorName(name));
            }
            let rank = rank as u32;
            if by_name.insert(name.clone(), rank).is_some() {
                return Err(WordError::DuplicateGenerator(name));
            }
            generators.push(Generator { name, rank });
        }
        Ok(Alphabet {
            generators,
            by_name,
        })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn rank(&self, name: &str) -> Option<u32> {
        self.by_name.get(name).copied()
    }

    pub fn name(&self, rank: u32) -> &str {
        &self.generators[rank as usize].name
    }

    /// Generator letters, greatest first.
    pub fn letters(&self) -> Vec<Letter> {
        (0..self.generators.len() as u32).map(Letter::Gen).collect()
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A letter of the extended alphabet `U`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Letter {
    Gen(u32),
    Op(RlsWord),
}

impl Letter {
    /// Number of operator symbols in this letter, at all depths.
    pub fn rdegree(&self) -> usize {
        match self {
            Letter::Gen(_) => 0,
            Letter::Op(arg) => 1 + arg.rdegree(),
        }
    }

    /// Nesting depth of operator symbols.
    pub fn level(&self) -> usize {
        match self {
            Letter::Gen(_) => 0,
            Letter::Op(arg) => 1 + arg.level(),
        }
    }

    pub fn is_op(&self) -> bool {
        matches!(self, Letter::Op(_))
    }

    pub fn op_arg(&self) -> Option<&RlsWord> {
        match self {
            Letter::Op(arg) => Some(arg),
            Letter::Gen(_) => None,
        }
    }
}

/// Compares letters: generators by declared order, every generator below every
/// operator letter, operator letters by deglex on their arguments.
pub fn compare_letters(a: &Letter, b: &Letter) -> Ordering {
    match (a, b) {
        (Letter::Gen(x), Letter::Gen(y)) => y.cmp(x),
        (Letter::Gen(_), Letter::Op(_)) => Ordering::Less,
        (Letter::Op(_), Letter::Gen(_)) => Ordering::Greater,
        (Letter::Op(u), Letter::Op(v)) => u.cmp(v),
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_letters(self, other)
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Gen(r) => write!(f, "g{r}"),
            Letter::Op(arg) => write!(f, "R({arg:?})"),
        }
    }
}

/// Degree first, then letterwise.
pub fn compare_deglex(u: &[Letter], v: &[Letter]) -> Ordering {
    u.len().cmp(&v.len()).then_with(|| u.cmp(v))
}

/// Lexicographic order with the letter order reversed and proper prefixes
/// smallest. LS-words are exactly the Lyndon words of this order, which is
/// the order that drives standard factorizations and bracket normalization.
pub(crate) fn lyndon_order(u: &[Letter], v: &[Letter]) -> Ordering {
    for (a, b) in u.iter().zip(v) {
        match compare_letters(a, b) {
            Ordering::Equal => continue,
            ord => return ord.reverse(),
        }
    }
    u.len().cmp(&v.len())
}

/// A word is LS when it is a single letter or strictly greater than each of
/// its proper rotations.
pub fn is_ls_word(w: &[Letter]) -> bool {
    let n = w.len();
    if n == 0 {
        return false;
    }
    (1..n).all(|k| {
        let rotated = w[k..].iter().chain(&w[..k]);
        for (a, b) in w.iter().zip(rotated) {
            match compare_letters(a, b) {
                Ordering::Equal => continue,
                ord => return ord == Ordering::Greater,
            }
        }
        false
    })
}

/// Total number of operator symbols in a word, at all depths.
pub fn rdegree_of(w: &[Letter]) -> usize {
    w.iter().map(Letter::rdegree).sum()
}

/// A nonempty word over the extended alphabet.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self, WordError> {
        if letters.is_empty() {
            return Err(WordError::Empty);
        }
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn rdegree(&self) -> usize {
        rdegree_of(&self.0)
    }

    pub fn is_ls(&self) -> bool {
        is_ls_word(&self.0)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_deglex(&self.0, &other.0)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct RlsInner {
    letters: Box<[Letter]>,
    /// Standard factorization `[u] = ([v][w])`; `None` for single letters.
    factors: Option<(RlsWord, RlsWord)>,
    rdegree: usize,
    level: usize,
}

/// An LS-word whose operator arguments are themselves RLS words, together
/// with its standard bracketing. Interned: equal words share storage.
#[derive(Clone)]
pub struct RlsWord(Arc<RlsInner>);

type Interner = Mutex<HashMap<Box<[Letter]>, RlsWord>>;

fn interner() -> &'static Interner {
    static TABLE: OnceLock<Interner> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl RlsWord {
    /// Returns the interned word if it has been constructed before.
    pub fn lookup(letters: &[Letter]) -> Option<RlsWord> {
        interner().lock().unwrap().get(letters).cloned()
    }

    /// Builds the RLS word spelled by `letters`, computing its standard
    /// bracketing.
    pub fn from_letters(letters: &[Letter]) -> Result<RlsWord, WordError> {
        if let Some(w) = Self::lookup(letters) {
            return Ok(w);
        }
        if letters.is_empty() {
            return Err(WordError::Empty);
        }
        if !is_ls_word(letters) {
            return Err(WordError::NotLyndonShirshov);
        }
        let factors = if letters.len() == 1 {
            None
        } else {
            let k = (1..letters.len())
                .find(|&k| is_ls_word(&letters[k..]))
                .expect("single letters are LS");
            Some((
                RlsWord::from_letters(&letters[..k])?,
                RlsWord::from_letters(&letters[k..])?,
            ))
        };
        let inner = RlsInner {
            letters: letters.into(),
            factors,
            rdegree: rdegree_of(letters),
            level: letters.iter().map(Letter::level).max().unwrap_or(0),
        };
        let mut table = interner().lock().unwrap();
        Ok(table
            .entry(letters.into())
            .or_insert_with(|| RlsWord(Arc::new(inner)))
            .clone())
    }

    pub fn letter(l: Letter) -> RlsWord {
        RlsWord::from_letters(std::slice::from_ref(&l)).expect("single letters are LS")
    }

    pub fn generator(rank: u32) -> RlsWord {
        RlsWord::letter(Letter::Gen(rank))
    }

    /// The one-letter word `R([arg])`.
    pub fn operator(arg: &RlsWord) -> RlsWord {
        RlsWord::letter(Letter::Op(arg.clone()))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0.letters
    }

    pub fn degree(&self) -> usize {
        self.0.letters.len()
    }

    pub fn rdegree(&self) -> usize {
        self.0.rdegree
    }

    /// Minimal `n` with this word in `RLS_n`.
    pub fn level(&self) -> usize {
        self.0.level
    }

    pub fn factors(&self) -> Option<(&RlsWord, &RlsWord)> {
        self.0.factors.as_ref().map(|(l, r)| (l, r))
    }

    pub fn as_letter(&self) -> Option<&Letter> {
        match &*self.0.letters {
            [l] => Some(l),
            _ => None,
        }
    }

    pub fn to_word(&self) -> Word {
        Word(self.letters().to_vec())
    }
}

impl PartialEq for RlsWord {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Eq for RlsWord {}

impl Hash for RlsWord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (Arc::as_ptr(&self.0) as usize).hash(state)
    }
}

impl Ord for RlsWord {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        compare_deglex(self.letters(), other.letters())
    }
}

impl PartialOrd for RlsWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for RlsWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.factors() {
            None => write!(f, "{:?}", self.letters()[0]),
            Some((l, r)) => write!(f, "[{l:?},{r:?}]"),
        }
    }
}

/// The standard bracketing of an LS-word.
pub fn standard_bracketing(w: &Word) -> Result<RlsWord, WordError> {
    RlsWord::from_letters(w.letters())
}

/// Splits a word into LS factors `c = c_1 c_2 ... c_k` with
/// `c_1 ⪰ c_2 ⪰ ... ⪰ c_k` in [`lyndon_order`] (Duval's algorithm).
pub(crate) fn ls_factorization(c: &[Letter]) -> Vec<std::ops::Range<usize>> {
    let n = c.len();
    let mut out = Vec::new();
    let mut i = 0;
    // letter comparison in the reversed order
    let lt = |a: &Letter, b: &Letter| compare_letters(a, b) == Ordering::Greater;
    while i < n {
        let mut j = i + 1;
        let mut k = i;
        while j < n && !lt(&c[j], &c[k]) {
            if lt(&c[k], &c[j]) {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            out.push(i..i + j - k);
            i += j - k;
        }
    }
    out
}

/// All LS-words over `letters` of degree at most `max_degree` whose total
/// weight stays within `max_weight`, in ascending deglex order.
pub(crate) fn ls_words_weighted(
    letters: &[Letter],
    max_degree: usize,
    weight: impl Fn(&Letter) -> usize,
    max_weight: usize,
) -> Vec<RlsWord> {
    let mut sorted: Vec<(Letter, usize)> = letters
        .iter()
        .map(|l| (l.clone(), weight(l)))
        .filter(|(_, w)| *w <= max_weight)
        .collect();
    sorted.sort_by(|a, b| b.0.cmp(&a.0));
    sorted.dedup_by(|a, b| a.0 == b.0);

    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(max_degree);
    for first in 0..sorted.len() {
        prefix.push(sorted[first].0.clone());
        extend_ls(&sorted, first, sorted[first].1, max_degree, max_weight, &mut prefix, &mut out);
        prefix.pop();
    }
    out.sort();
    out
}

fn extend_ls(
    sorted: &[(Letter, usize)],
    first: usize,
    weight: usize,
    max_degree: usize,
    max_weight: usize,
    prefix: &mut Vec<Letter>,
    out: &mut Vec<RlsWord>,
) {
    if is_ls_word(prefix) {
        out.push(RlsWord::from_letters(prefix).expect("checked LS"));
    }
    if prefix.len() == max_degree {
        return;
    }
    // an LS word starts with its greatest letter
    for (letter, w) in &sorted[first..] {
        if weight + w > max_weight {
            continue;
        }
        prefix.push(letter.clone());
        extend_ls(sorted, first, weight + w, max_degree, max_weight, prefix, out);
        prefix.pop();
    }
}

/// All LS-words over the given letters of degree `1..=max_degree`, each with
/// its standard bracketing, in ascending deglex order.
pub fn enumerate_ls_words(letters: &[Letter], max_degree: usize) -> Vec<RlsWord> {
    ls_words_weighted(letters, max_degree, |_| 0, 0)
}
