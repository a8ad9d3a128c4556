use std::collections::BTreeMap;
use std::sync::Arc;

use super::{RewriteError, RewriteSystem, Rule, ValidationFlags};
use crate::lie::{special_bracketing, LiePoly};
use crate::oplie::{enumerate_rls_words, RlsEnumerationBounds};
use crate::words::{is_ls_word, Letter, RlsWord};

/// An intersection composition of two relations.
#[derive(Debug, Clone)]
pub struct Composition {
    pub left: Arc<Rule>,
    pub right: Arc<Rule>,
    /// `u1 u2 v2`, where `u1 u2` and `u2 v2` are the leading words.
    pub word: RlsWord,
    /// Length of the shared part `u2`.
    pub overlap: usize,
    pub value: LiePoly,
}

/// All intersection compositions `{s1 v2} - {u1 s2}` over proper overlaps of
/// the leading words for which the combined word is LS.
pub fn compositions(s1: &Arc<Rule>, s2: &Arc<Rule>) -> Result<Vec<Composition>, RewriteError> {
    let u = s1.leading().letters();
    let v = s2.leading().letters();
    let mut out = Vec::new();
    for k in 1..u.len().min(v.len()) {
        if let Some(c) = composition_at(s1, s2, k)? {
            debug_assert_eq!(&u[u.len() - k..], &v[..k]);
            out.push(c);
        }
    }
    Ok(out)
}

fn composition_at(
    s1: &Arc<Rule>,
    s2: &Arc<Rule>,
    k: usize,
) -> Result<Option<Composition>, RewriteError> {
    let u = s1.leading().letters();
    let v = s2.leading().letters();
    if u[u.len() - k..] != v[..k] {
        return Ok(None);
    }
    let mut letters: Vec<Letter> = u.to_vec();
    letters.extend_from_slice(&v[k..]);
    if !is_ls_word(&letters) {
        return Ok(None);
    }
    let w = RlsWord::from_letters(&letters)?;
    let first = special_bracketing(&w, 0..u.len())?.eval(&[s1.poly()]);
    let second_start = u.len() - k;
    let second = special_bracketing(&w, second_start..second_start + v.len())?.eval(&[s2.poly()]);
    Ok(Some(Composition {
        left: s1.clone(),
        right: s2.clone(),
        word: w,
        overlap: k,
        value: first - second,
    }))
}

#[derive(Debug, Clone)]
pub struct GsbWitness {
    pub left: Arc<Rule>,
    pub right: Arc<Rule>,
    pub word: RlsWord,
    pub composition: LiePoly,
    /// Normal form of the composition; nonzero.
    pub residual: LiePoly,
}

#[derive(Debug, Clone)]
pub struct GsbReport {
    pub pass: bool,
    pub flags: ValidationFlags,
    pub rules_checked: usize,
    pub compositions_checked: usize,
    /// A relation failing validation, if any.
    pub invalid_rule: Option<Arc<Rule>>,
    pub witness: Option<GsbWitness>,
}

impl RewriteSystem {
    /// Explicit relations plus every provider relation whose leading word
    /// lies within `bounds`.
    pub fn instantiate_rules(
        &self,
        num_generators: usize,
        bounds: &RlsEnumerationBounds,
    ) -> Result<Vec<Arc<Rule>>, RewriteError> {
        let mut rules = self.rules.clone();
        if self.providers.is_empty() {
            return Ok(rules);
        }
        let max = self.providers.iter().map(|p| p.max_leading_degree()).max().unwrap_or(0);
        for w in enumerate_rls_words(num_generators, bounds) {
            if w.degree() > max {
                continue;
            }
            for p in &self.providers {
                if w.degree() <= p.max_leading_degree() && p.fires(&w, self) {
                    if let Some(r) = p.rule(&w, self)? {
                        rules.push(r);
                    }
                }
            }
        }
        Ok(rules)
    }
}

/// Checks that the relations of `sys` with leading words within `bounds` are
/// valid and that all their intersection compositions reduce to zero.
/// Compositions are formed from every pair of instantiated relations and are
/// not themselves restricted to `bounds`. Stops at the first nonzero residual.
pub fn check_gsb(
    sys: &RewriteSystem,
    num_generators: usize,
    bounds: &RlsEnumerationBounds,
) -> Result<GsbReport, RewriteError> {
    let rules = sys.instantiate_rules(num_generators, bounds)?;
    let mut flags = ValidationFlags {
        monic: true,
        rdeg_condition: true,
        reduced: true,
    };
    let mut report = GsbReport {
        pass: false,
        flags,
        rules_checked: rules.len(),
        compositions_checked: 0,
        invalid_rule: None,
        witness: None,
    };
    for r in &rules {
        flags.monic &= r.poly().is_monic();
        flags.rdeg_condition &= r.satisfies_rdegree_condition();
        flags.reduced &= sys.is_reduced_rule(r)?;
        if !(flags.monic && flags.rdeg_condition && flags.reduced) {
            report.flags = flags;
            report.invalid_rule = Some(r.clone());
            return Ok(report);
        }
    }
    report.flags = flags;

    let mut by_first: BTreeMap<&Letter, Vec<&Arc<Rule>>> = BTreeMap::new();
    for r in &rules {
        by_first.entry(&r.leading().letters()[0]).or_default().push(r);
    }
    for s1 in &rules {
        let u = s1.leading().letters();
        for k in 1..u.len() {
            let Some(candidates) = by_first.get(&u[u.len() - k]) else {
                continue;
            };
            for s2 in candidates {
                if s2.leading().degree() <= k {
                    continue;
                }
                let Some(c) = composition_at(s1, s2, k)? else {
                    continue;
                };
                report.compositions_checked += 1;
                let residual = sys.normal_form(&c.value)?;
                if !residual.is_zero() {
                    report.witness = Some(GsbWitness {
                        left: c.left,
                        right: c.right,
                        word: c.word,
                        composition: c.value,
                        residual,
                    });
                    return Ok(report);
                }
            }
        }
    }
    report.pass = true;
    Ok(report)
}
