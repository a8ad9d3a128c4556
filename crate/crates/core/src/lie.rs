//! Elements of the free Lie algebra on an ordered alphabet, with exact
//! rational coefficients, expressed in the basis of standard bracketings of
//! LS-words.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, AddAssign, Mul, Neg, Range, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::words::{is_ls_word, ls_factorization, lyndon_order, Letter, RlsWord, WordError};

pub type Scalar = BigRational;

pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(n.into())
}

/// A finitely supported linear combination of basis words. Zero coefficients
/// are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LiePoly {
    terms: BTreeMap<RlsWord, Scalar>,
}

impl LiePoly {
    pub fn zero() -> Self {
        LiePoly::default()
    }

    pub fn monomial(w: RlsWord) -> Self {
        LiePoly::term(w, Scalar::one())
    }

    pub fn term(w: RlsWord, c: Scalar) -> Self {
        let mut p = LiePoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn generator(rank: u32) -> Self {
        LiePoly::monomial(RlsWord::generator(rank))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (RlsWord, Scalar)>) -> Self {
        let mut p = LiePoly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending deglex order of their words.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&RlsWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl DoubleEndedIterator<Item = &RlsWord> {
        self.terms.keys()
    }

    pub fn coeff(&self, w: &RlsWord) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The deglex-greatest word and its coefficient.
    pub fn leading(&self) -> Option<(&RlsWord, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_word(&self) -> Option<&RlsWord> {
        self.terms.keys().next_back()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|(_, c)| c.is_one())
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(RlsWord::degree).max().unwrap_or(0)
    }

    /// Maximal R-degree among monomials.
    pub fn rdegree(&self) -> usize {
        self.terms.keys().map(RlsWord::rdegree).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: RlsWord, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Scalar, other: &LiePoly) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.terms {
            self.add_term(w.clone(), c * d);
        }
    }

    pub fn scale(&self, c: &Scalar) -> LiePoly {
        if c.is_zero() {
            return LiePoly::zero();
        }
        LiePoly {
            terms: self.terms.iter().map(|(w, d)| (w.clone(), c * d)).collect(),
        }
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(RlsWord, Scalar)> {
        self.terms.pop_last()
    }

    /// The Lie product, normalized to the LS basis.
    pub fn bracket(&self, other: &LiePoly) -> LiePoly {
        let mut out = LiePoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_scaled(&(a * b), &bracket_words(u, v));
            }
        }
        out
    }

    /// Linear extension of `[u] ↦ R([u])`.
    pub fn apply_operator(&self) -> LiePoly {
        LiePoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (RlsWord::operator(w), c.clone()))
                .collect(),
        }
    }
}

impl std::fmt::Debug for LiePoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*{w:?}")?;
        }
        Ok(())
    }
}

impl AddAssign<&LiePoly> for LiePoly {
    fn add_assign(&mut self, rhs: &LiePoly) {
        self.add_scaled(&Scalar::one(), rhs);
    }
}

impl SubAssign<&LiePoly> for LiePoly {
    fn sub_assign(&mut self, rhs: &LiePoly) {
        self.add_scaled(&-Scalar::one(), rhs);
    }
}

impl Add for &LiePoly {
    type Output = LiePoly;
    fn add(self, rhs: &LiePoly) -> LiePoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LiePoly {
    type Output = LiePoly;
    fn add(mut self, rhs: LiePoly) -> LiePoly {
        self += &rhs;
        self
    }
}

impl Sub for &LiePoly {
    type Output = LiePoly;
    fn sub(self, rhs: &LiePoly) -> LiePoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LiePoly {
    type Output = LiePoly;
    fn sub(mut self, rhs: LiePoly) -> LiePoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LiePoly {
    type Output = LiePoly;
    fn neg(self) -> LiePoly {
        self.scale(&-Scalar::one())
    }
}

impl Neg for LiePoly {
    type Output = LiePoly;
    fn neg(self) -> LiePoly {
        -&self
    }
}

impl Mul<&LiePoly> for &Scalar {
    type Output = LiePoly;
    fn mul(self, rhs: &LiePoly) -> LiePoly {
        rhs.scale(self)
    }
}

type BracketCache = Mutex<HashMap<(RlsWord, RlsWord), LiePoly>>;

fn bracket_cache() -> &'static BracketCache {
    static CACHE: OnceLock<BracketCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `[[u],[v]]` in the LS basis.
///
/// A pair `([u],[v])` is already a basis element when `u ≺ v` and either `u`
/// is a letter or `u = (u1 u2)` with `u2 ⪰ v`; otherwise anticommutativity or
/// the Jacobi rewrite `[[u1,u2],v] = [u1,[u2,v]] + [[u1,v],u2]` applies.
pub fn bracket_words(u: &RlsWord, v: &RlsWord) -> LiePoly {
    if u == v {
        return LiePoly::zero();
    }
    let key = (u.clone(), v.clone());
    if let Some(p) = bracket_cache().lock().unwrap().get(&key) {
        return p.clone();
    }
    let result = match lyndon_order(u.letters(), v.letters()) {
        Ordering::Greater => -bracket_words(v, u),
        _ => match u.factors() {
            Some((u1, u2)) if lyndon_order(u2.letters(), v.letters()) == Ordering::Less => {
                let u1p = LiePoly::monomial(u1.clone());
                let u2p = LiePoly::monomial(u2.clone());
                u1p.bracket(&bracket_words(u2, v)) + bracket_words(u1, v).bracket(&u2p)
            }
            _ => {
                let joined: Vec<Letter> = u.letters().iter().chain(v.letters()).cloned().collect();
                LiePoly::monomial(
                    RlsWord::from_letters(&joined).expect("product of a standard pair is LS"),
                )
            }
        },
    };
    bracket_cache().lock().unwrap().insert(key, result.clone());
    result
}

/// A binary bracketing whose leaves are basis words or placeholders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BracketTree {
    /// A standard bracketing `[u]` of an LS subword (a single letter included).
    Basis(RlsWord),
    /// A placeholder, numbered from 0.
    Hole(usize),
    Node(Box<BracketTree>, Box<BracketTree>),
}

/// A symbol of a flattened bracketing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeSymbol {
    Letter(Letter),
    Hole(usize),
}

impl BracketTree {
    pub fn node(l: BracketTree, r: BracketTree) -> BracketTree {
        BracketTree::Node(Box::new(l), Box::new(r))
    }

    pub fn flatten(&self) -> Vec<TreeSymbol> {
        let mut out = Vec::new();
        self.flatten_into(&mut out);
        out
    }

    fn flatten_into(&self, out: &mut Vec<TreeSymbol>) {
        match self {
            BracketTree::Basis(w) => out.extend(w.letters().iter().cloned().map(TreeSymbol::Letter)),
            BracketTree::Hole(i) => out.push(TreeSymbol::Hole(*i)),
            BracketTree::Node(l, r) => {
                l.flatten_into(out);
                r.flatten_into(out);
            }
        }
    }

    pub fn holes(&self) -> usize {
        self.flatten()
            .iter()
            .filter(|s| matches!(s, TreeSymbol::Hole(_)))
            .count()
    }

    /// Expands the bracketing with `subs[i]` in place of hole `i`.
    pub fn eval(&self, subs: &[&LiePoly]) -> LiePoly {
        match self {
            BracketTree::Basis(w) => LiePoly::monomial(w.clone()),
            BracketTree::Hole(i) => subs[*i].clone(),
            BracketTree::Node(l, r) => l.eval(subs).bracket(&r.eval(subs)),
        }
    }
}

fn check_occurrence(w: &RlsWord, span: &Range<usize>) -> Result<(), WordError> {
    if span.start >= span.end || span.end > w.degree() {
        return Err(WordError::NotASubwordOccurrence {
            start: span.start,
            end: span.end,
            degree: w.degree(),
        });
    }
    if !is_ls_word(&w.letters()[span.clone()]) {
        return Err(WordError::NotLyndonShirshov);
    }
    Ok(())
}

/// The Shirshov bracketing `{w_{u←*}}` for the occurrence of the LS-subword
/// `u = w[span]`: substituting `[u]` for the placeholder yields `[w]` plus
/// deglex-smaller basis words.
pub fn special_bracketing(w: &RlsWord, span: Range<usize>) -> Result<BracketTree, WordError> {
    check_occurrence(w, &span)?;
    special(w, span, 0)
}

fn shift(r: &Range<usize>, by: usize) -> Range<usize> {
    r.start - by..r.end - by
}

fn special(w: &RlsWord, span: Range<usize>, hole: usize) -> Result<BracketTree, WordError> {
    if span == (0..w.degree()) {
        return Ok(BracketTree::Hole(hole));
    }
    let (l, r) = w.factors().ok_or(WordError::NoSpecialBracketing)?;
    let m = l.degree();
    if span.end <= m {
        Ok(BracketTree::node(special(l, span, hole)?, BracketTree::Basis(r.clone())))
    } else if span.start >= m {
        Ok(BracketTree::node(BracketTree::Basis(l.clone()), special(r, shift(&span, m), hole)?))
    } else if span.start == 0 {
        // [u c] with c = c_1 ... c_k becomes [[[* c_1] c_2] ... c_k]
        let tail = &w.letters()[span.end..];
        let mut tree = BracketTree::Hole(hole);
        for part in ls_factorization(tail) {
            let f = RlsWord::from_letters(&tail[part])?;
            tree = BracketTree::node(tree, BracketTree::Basis(f));
        }
        Ok(tree)
    } else {
        Err(WordError::NoSpecialBracketing)
    }
}

/// A bracketing `{a * b ⋆ c}` for two disjoint LS-subword occurrences such
/// that substituting `[u]` (hole 0, at `occ1`) and `[v]` (hole 1, at `occ2`)
/// yields `[w]` plus deglex-smaller basis words.
pub fn double_bracketing(
    w: &RlsWord,
    occ1: Range<usize>,
    occ2: Range<usize>,
) -> Result<BracketTree, WordError> {
    check_occurrence(w, &occ1)?;
    check_occurrence(w, &occ2)?;
    if occ1.start < occ2.end && occ2.start < occ1.end {
        return Err(WordError::OverlappingOccurrences(occ1, occ2));
    }
    if occ1.start < occ2.start {
        double(w, (occ1, 0), (occ2, 1))
    } else {
        double(w, (occ2, 1), (occ1, 0))
    }
}

fn double(
    w: &RlsWord,
    first: (Range<usize>, usize),
    second: (Range<usize>, usize),
) -> Result<BracketTree, WordError> {
    let (a, ha) = first;
    let (b, hb) = second;
    let (l, r) = w.factors().ok_or(WordError::NoSpecialBracketing)?;
    let m = l.degree();
    if b.end <= m {
        Ok(BracketTree::node(double(l, (a, ha), (b, hb))?, BracketTree::Basis(r.clone())))
    } else if a.start >= m {
        Ok(BracketTree::node(
            BracketTree::Basis(l.clone()),
            double(r, (shift(&a, m), ha), (shift(&b, m), hb))?,
        ))
    } else if a.end <= m && b.start >= m {
        Ok(BracketTree::node(special(l, a, ha)?, special(r, shift(&b, m), hb)?))
    } else if a.start == 0 && a.end > m {
        let tail = &w.letters()[a.end..];
        let b = shift(&b, a.end);
        let mut tree = BracketTree::Hole(ha);
        for part in ls_factorization(tail) {
            let f = RlsWord::from_letters(&tail[part.clone()])?;
            let leaf = if part.start <= b.start && b.end <= part.end {
                special(&f, shift(&b, part.start), hb)?
            } else if part.end <= b.start || b.end <= part.start {
                BracketTree::Basis(f)
            } else {
                return Err(WordError::NoSpecialBracketing);
            };
            tree = BracketTree::node(tree, leaf);
        }
        Ok(tree)
    } else {
        Err(WordError::NoSpecialBracketing)
    }
}

/// Image of a Lie polynomial in the free associative algebra, via
/// `[a,b] ↦ ab - ba`. Words are flat sequences of letters of `U`.
pub fn associative_expansion(p: &LiePoly) -> BTreeMap<Vec<Letter>, Scalar> {
    let mut out = BTreeMap::new();
    for (w, c) in p.terms() {
        for (word, d) in expand_word(w) {
            let e = out.entry(word).or_insert_with(Scalar::zero);
            *e += c * d;
        }
    }
    out.retain(|_, c: &mut Scalar| !c.is_zero());
    out
}

fn expand_word(w: &RlsWord) -> BTreeMap<Vec<Letter>, Scalar> {
    match w.factors() {
        None => BTreeMap::from([(w.letters().to_vec(), Scalar::one())]),
        Some((l, r)) => {
            let (el, er) = (expand_word(l), expand_word(r));
            let mut out: BTreeMap<Vec<Letter>, Scalar> = BTreeMap::new();
            for (a, ca) in &el {
                for (b, cb) in &er {
                    let c = ca * cb;
                    let ab: Vec<Letter> = a.iter().chain(b).cloned().collect();
                    let ba: Vec<Letter> = b.iter().chain(a).cloned().collect();
                    *out.entry(ab).or_insert_with(Scalar::zero) += &c;
                    *out.entry(ba).or_insert_with(Scalar::zero) -= &c;
                }
            }
            out.retain(|_, c| !c.is_zero());
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::enumerate_ls_words;

    fn g(r: u32) -> LiePoly {
        LiePoly::generator(r)
    }
    fn word(ranks: &[u32]) -> RlsWord {
        let ls: Vec<Letter> = ranks.iter().map(|&r| Letter::Gen(r)).collect();
        RlsWord::from_letters(&ls).unwrap()
    }
    fn expansion_product(p: &LiePoly, q: &LiePoly) -> BTreeMap<Vec<Letter>, Scalar> {
        let (ep, eq) = (associative_expansion(p), associative_expansion(q));
        let mut out: BTreeMap<Vec<Letter>, Scalar> = BTreeMap::new();
        for (a, ca) in &ep {
            for (b, cb) in &eq {
                let c = ca * cb;
                *out.entry(a.iter().chain(b).cloned().collect()).or_insert_with(Scalar::zero) += &c;
                *out.entry(b.iter().chain(a).cloned().collect()).or_insert_with(Scalar::zero) -= &c;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    #[test]
    fn linear_arithmetic() {
        let p = LiePoly::monomial(word(&[0, 1])) + g(0);
        assert!((&p + &(-&p)).is_zero());
        assert_eq!(&LiePoly::zero() + &p, p);
        let q = &p + &LiePoly::monomial(word(&[0, 1]));
        assert_eq!(q.coeff(&word(&[0, 1])), scalar(2));
        assert_eq!(q.coeff(&word(&[0])), scalar(1));
        assert_eq!(q.len(), 2);
    }

    #[test]
    fn small_brackets() {
        assert!(g(0).bracket(&g(0)).is_zero());
        assert_eq!(g(1).bracket(&g(0)), -LiePoly::monomial(word(&[0, 1])));
        let xy = LiePoly::monomial(word(&[0, 1]));
        assert_eq!(g(0).bracket(&xy), LiePoly::monomial(word(&[0, 0, 1])));
        assert_eq!(xy.bracket(&g(0)), -LiePoly::monomial(word(&[0, 0, 1])));
    }

    #[test]
    fn operator_is_linear() {
        assert!(LiePoly::zero().apply_operator().is_zero());
        let p = LiePoly::monomial(word(&[0, 1])).scale(&scalar(2)) - g(0);
        let rp = p.apply_operator();
        assert_eq!(rp.coeff(&RlsWord::operator(&word(&[0, 1]))), scalar(2));
        assert_eq!(rp.coeff(&RlsWord::operator(&word(&[0]))), scalar(-1));
        assert_eq!(rp.rdegree(), 1);
        assert_eq!(rp.degree(), 1);
    }

    #[test]
    fn expansion_examples() {
        let e = associative_expansion(&LiePoly::monomial(word(&[0, 1])));
        let (x, y) = (Letter::Gen(0), Letter::Gen(1));
        assert_eq!(e.len(), 2);
        assert_eq!(e[&vec![x.clone(), y.clone()]], scalar(1));
        assert_eq!(e[&vec![y.clone(), x.clone()]], scalar(-1));
        let e = associative_expansion(&LiePoly::monomial(word(&[0, 0, 1])));
        assert_eq!(e[&vec![x.clone(), x.clone(), y.clone()]], scalar(1));
        assert_eq!(e[&vec![x.clone(), y.clone(), x.clone()]], scalar(-2));
        assert_eq!(e[&vec![y.clone(), x.clone(), x.clone()]], scalar(1));
        assert_eq!(e.len(), 3);
        assert_eq!(associative_expansion(&g(0)).len(), 1);
    }

    #[test]
    fn bracket_matches_expansion_oracle_up_to_degree_6() {
        let basis = enumerate_ls_words(&[Letter::Gen(0), Letter::Gen(1)], 5);
        for u in &basis {
            for v in &basis {
                if u.degree() + v.degree() > 6 {
                    continue;
                }
                let (p, q) = (LiePoly::monomial(u.clone()), LiePoly::monomial(v.clone()));
                assert_eq!(associative_expansion(&p.bracket(&q)), expansion_product(&p, &q), "{u:?} {v:?}");
            }
        }
    }

    #[test]
    fn special_bracketing_examples() {
        let w = word(&[0, 0, 1]);
        let t = special_bracketing(&w, 1..3).unwrap();
        assert_eq!(t, BracketTree::node(BracketTree::Basis(word(&[0])), BracketTree::Hole(0)));
        assert_eq!(t.eval(&[&LiePoly::monomial(word(&[0, 1]))]), LiePoly::monomial(w.clone()));

        let w = word(&[0, 0, 1, 1]);
        let t = special_bracketing(&w, 1..4).unwrap();
        assert_eq!(t, BracketTree::node(BracketTree::Basis(word(&[0])), BracketTree::Hole(0)));
        assert_eq!(special_bracketing(&w, 0..4).unwrap(), BracketTree::Hole(0));
        assert!(matches!(
            special_bracketing(&w, 2..6),
            Err(WordError::NotASubwordOccurrence { .. })
        ));
        assert!(special_bracketing(&w, 1..3).is_ok());
        assert_eq!(special_bracketing(&w, 2..4), Err(WordError::NotLyndonShirshov));
    }

    #[test]
    fn special_bracketing_leading_term_contract() {
        let basis = enumerate_ls_words(&[Letter::Gen(0), Letter::Gen(1)], 6);
        for w in &basis {
            for i in 0..w.degree() {
                for j in i + 1..=w.degree() {
                    let sub = &w.letters()[i..j];
                    if !is_ls_word(sub) {
                        continue;
                    }
                    let u = RlsWord::from_letters(sub).unwrap();
                    let t = special_bracketing(w, i..j).unwrap();
                    let p = t.eval(&[&LiePoly::monomial(u)]);
                    assert_eq!(p.leading(), Some((w, &scalar(1))), "{w:?} at {i}..{j}");
                }
            }
        }
    }

    #[test]
    fn double_bracketing_examples() {
        let w = word(&[0, 1, 1]);
        let t = double_bracketing(&w, 0..1, 1..2).unwrap();
        assert_eq!(t.holes(), 2);
        let p = t.eval(&[&g(0), &g(1)]);
        assert_eq!(p.leading(), Some((&w, &scalar(1))));

        let w = word(&[0, 0, 1, 1]);
        let t = double_bracketing(&w, 0..1, 1..4).unwrap();
        let p = t.eval(&[&g(0), &LiePoly::monomial(word(&[0, 1, 1]))]);
        assert_eq!(p.leading(), Some((&w, &scalar(1))));

        assert!(matches!(
            double_bracketing(&w, 0..3, 1..3),
            Err(WordError::OverlappingOccurrences(..))
        ));
        assert!(matches!(
            double_bracketing(&w, 0..1, 2..2),
            Err(WordError::NotASubwordOccurrence { .. })
        ));
    }

    #[test]
    fn double_bracketing_contract_exhaustive() {
        let basis = enumerate_ls_words(&[Letter::Gen(0), Letter::Gen(1)], 6);
        let mut checked = 0;
        for w in &basis {
            let n = w.degree();
            let occ: Vec<Range<usize>> = (0..n)
                .flat_map(|i| (i + 1..=n).map(move |j| i..j))
                .filter(|r| is_ls_word(&w.letters()[r.clone()]))
                .collect();
            for a in &occ {
                for b in &occ {
                    if a.start < b.end && b.start < a.end {
                        continue;
                    }
                    let t = double_bracketing(w, a.clone(), b.clone()).unwrap();
                    let ua = LiePoly::monomial(RlsWord::from_letters(&w.letters()[a.clone()]).unwrap());
                    let ub = LiePoly::monomial(RlsWord::from_letters(&w.letters()[b.clone()]).unwrap());
                    assert_eq!(t.eval(&[&ua, &ub]).leading(), Some((w, &scalar(1))));
                    checked += 1;
                }
            }
        }
        assert!(checked > 100);
    }
}
