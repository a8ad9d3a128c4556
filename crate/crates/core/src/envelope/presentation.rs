use std::collections::BTreeMap;

use super::EnvelopeError;
use crate::lie::LiePoly;
use crate::words::{Alphabet, Letter, RlsWord};

/// A Lie algebra with basis `X` given by the brackets `[a,b]` for `a > b`.
/// Missing pairs bracket to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiePresentation {
    alphabet: Alphabet,
    table: BTreeMap<(u32, u32), LiePoly>,
}

impl LiePresentation {
    /// Entries are `(a, b, [a,b])` with generator ranks `a < b`, i.e. `a`
    /// greater, and values linear in the generators.
    pub fn new(
        alphabet: Alphabet,
        entries: impl IntoIterator<Item = (u32, u32, LiePoly)>,
    ) -> Result<Self, EnvelopeError> {
        let k = alphabet.len() as u32;
        let mut table = BTreeMap::new();
        for (a, b, value) in entries {
            if a >= k || b >= k {
                return Err(EnvelopeError::InvalidPresentation(format!(
                    "generator index out of range in [{a},{b}]"
                )));
            }
            if a >= b {
                return Err(EnvelopeError::InvalidPresentation(format!(
                    "bracket [{},{}] must list the greater generator first",
                    alphabet.name(a),
                    alphabet.name(b)
                )));
            }
            let linear = value.words().all(|w| match w.as_letter() {
                Some(Letter::Gen(g)) => *g < k,
                _ => false,
            });
            if !linear {
                return Err(EnvelopeError::InvalidPresentation(format!(
                    "[{},{}] is not a linear combination of generators",
                    alphabet.name(a),
                    alphabet.name(b)
                )));
            }
            if table.insert((a, b), value).is_some() {
                return Err(EnvelopeError::InvalidPresentation(format!(
                    "bracket [{},{}] given twice",
                    alphabet.name(a),
                    alphabet.name(b)
                )));
            }
        }
        table.retain(|_, v: &mut LiePoly| !v.is_zero());
        Ok(LiePresentation { alphabet, table })
    }

    pub fn abelian(alphabet: Alphabet) -> Self {
        LiePresentation {
            alphabet,
            table: BTreeMap::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Nonzero brackets `(a, b, [a,b])` with `a` greater.
    pub fn entries(&self) -> impl Iterator<Item = (u32, u32, &LiePoly)> {
        self.table.iter().map(|(&(a, b), v)| (a, b, v))
    }

    /// `[a,b]` in `L`.
    pub fn bracket(&self, a: u32, b: u32) -> LiePoly {
        use std::cmp::Ordering::*;
        match a.cmp(&b) {
            Equal => LiePoly::zero(),
            Less => self.table.get(&(a, b)).cloned().unwrap_or_default(),
            Greater => -self.bracket(b, a),
        }
    }

    /// Bilinear extension of the table to linear forms.
    pub fn lie_bracket(&self, p: &LiePoly, q: &LiePoly) -> LiePoly {
        let mut out = LiePoly::zero();
        for (u, c) in p.terms() {
            for (v, d) in q.terms() {
                if let (Some(Letter::Gen(a)), Some(Letter::Gen(b))) = (u.as_letter(), v.as_letter()) {
                    out.add_scaled(&(c * d), &self.bracket(*a, *b));
                }
            }
        }
        out
    }

    /// `[[a,b],c] + [[b,c],a] + [[c,a],b]` in `L`.
    pub fn jacobian(&self, a: u32, b: u32, c: u32) -> LiePoly {
        let g = LiePoly::generator;
        let ab = self.lie_bracket(&g(a), &g(b));
        let bc = self.lie_bracket(&g(b), &g(c));
        let ca = self.lie_bracket(&g(c), &g(a));
        self.lie_bracket(&ab, &g(c)) + self.lie_bracket(&bc, &g(a)) + self.lie_bracket(&ca, &g(b))
    }

    /// `xy - [x,y]` for every pair `x > y`, ascending by leading word.
    pub fn s0_polys(&self) -> Vec<LiePoly> {
        let k = self.alphabet.len() as u32;
        let mut out = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                let w = RlsWord::from_letters(&[Letter::Gen(a), Letter::Gen(b)])
                    .expect("xy is LS for x > y");
                out.push(LiePoly::monomial(w) - self.bracket(a, b));
            }
        }
        out.sort_by(|p, q| p.leading_word().cmp(&q.leading_word()));
        out
    }
}
