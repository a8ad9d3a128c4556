use std::ops::Range;
use std::sync::Arc;

use super::{RewriteError, RewriteSystem, Rule};
use crate::lie::{special_bracketing, LiePoly};
use crate::words::{is_ls_word, Letter, RlsWord};

/// An occurrence of a leading word inside a basis word.
///
/// `path` lists the positions of the operator letters entered from the outer
/// word inwards; `span` is the occurrence inside the innermost argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionSite {
    pub path: Vec<usize>,
    pub span: Range<usize>,
    pub rule: Arc<Rule>,
}

impl ReductionSite {
    pub fn depth(&self) -> usize {
        self.path.len()
    }
}

impl RewriteSystem {
    /// Whether no relation applies to `w` at any depth.
    pub fn is_terminal(&self, w: &RlsWord) -> bool {
        if let Some(&t) = self.terminal.lock().unwrap().get(w) {
            return t;
        }
        let t = !self.fires_at_top(w)
            && w.letters()
                .iter()
                .filter_map(Letter::op_arg)
                .all(|arg| self.is_terminal(arg));
        self.terminal.lock().unwrap().insert(w.clone(), t);
        t
    }

    fn fires_at_top(&self, w: &RlsWord) -> bool {
        let letters = w.letters();
        let n = letters.len();
        for start in 0..n {
            for &len in self.lengths.iter().take_while(|&&len| start + len <= n) {
                if let Some(u) = RlsWord::lookup(&letters[start..start + len]) {
                    if self.by_leading.contains_key(&u) {
                        return true;
                    }
                }
            }
            for p in &self.providers {
                for len in 1..=p.max_leading_degree().min(n - start) {
                    let sub = &letters[start..start + len];
                    if is_ls_word(sub) {
                        let u = RlsWord::from_letters(sub).expect("checked LS");
                        if p.fires(&u, self) {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    /// Top-level sites starting at `start`, ordered by leading word and then
    /// by rule order (explicit relations first, then providers).
    fn sites_starting_at(
        &self,
        w: &RlsWord,
        start: usize,
        path: &[usize],
        first_only: bool,
        out: &mut Vec<ReductionSite>,
    ) -> Result<(), RewriteError> {
        let letters = w.letters();
        let n = letters.len();
        let max_len = self
            .lengths
            .iter()
            .copied()
            .chain(self.providers.iter().map(|p| p.max_leading_degree()))
            .max()
            .unwrap_or(0)
            .min(n - start);
        for len in 1..=max_len {
            let sub = &letters[start..start + len];
            if !is_ls_word(sub) {
                continue;
            }
            let u = RlsWord::from_letters(sub)?;
            let site = |rule: Arc<Rule>| ReductionSite {
                path: path.to_vec(),
                span: start..start + len,
                rule,
            };
            if let Some(idx) = self.by_leading.get(&u) {
                for &i in idx {
                    out.push(site(self.rules[i].clone()));
                    if first_only {
                        return Ok(());
                    }
                }
            }
            for p in self.providers.iter().filter(|p| len <= p.max_leading_degree()) {
                if !p.fires(&u, self) {
                    continue;
                }
                let rule = p.rule(&u, self)?.ok_or_else(|| RewriteError::InvalidProviderRule {
                    provider: p.name().to_string(),
                    source: Box::new(RewriteError::ZeroRule),
                })?;
                if rule.leading() != &u {
                    return Err(RewriteError::InvalidProviderRule {
                        provider: p.name().to_string(),
                        source: Box::new(RewriteError::NotMonic),
                    });
                }
                out.push(site(rule));
                if first_only {
                    return Ok(());
                }
            }
        }
        Ok(())
    }

    /// Every site of every relation in `w`, at all depths, in canonical
    /// order: outer before inner, then by operator path, then leftmost, then
    /// smaller leading word, then rule order.
    pub fn find_reduction_sites(&self, w: &RlsWord) -> Result<Vec<ReductionSite>, RewriteError> {
        let mut out = Vec::new();
        let mut frontier = vec![(Vec::new(), w.clone())];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (path, word) in &frontier {
                for start in 0..word.degree() {
                    self.sites_starting_at(word, start, path, false, &mut out)?;
                }
                for (k, l) in word.letters().iter().enumerate() {
                    if let Letter::Op(arg) = l {
                        let mut p = path.clone();
                        p.push(k);
                        next.push((p, arg.clone()));
                    }
                }
            }
            frontier = next;
        }
        Ok(out)
    }

    /// The first site of [`find_reduction_sites`](Self::find_reduction_sites),
    /// found without building the others.
    pub fn canonical_site(&self, w: &RlsWord) -> Result<Option<ReductionSite>, RewriteError> {
        if self.is_terminal(w) {
            return Ok(None);
        }
        let mut frontier = vec![(Vec::new(), w.clone())];
        while !frontier.is_empty() {
            let mut found = Vec::with_capacity(1);
            for (path, word) in &frontier {
                if self.is_terminal(word) {
                    continue;
                }
                for start in 0..word.degree() {
                    self.sites_starting_at(word, start, path, true, &mut found)?;
                    if let Some(site) = found.pop() {
                        return Ok(Some(site));
                    }
                }
            }
            let mut next = Vec::new();
            for (path, word) in &frontier {
                for (k, l) in word.letters().iter().enumerate() {
                    if let Letter::Op(arg) = l {
                        if !self.is_terminal(arg) {
                            let mut p = path.clone();
                            p.push(k);
                            next.push((p, arg.clone()));
                        }
                    }
                }
            }
            frontier = next;
        }
        Ok(None)
    }

    /// The polynomial `h` replacing `w` at `site`: the special bracketing of
    /// the relation, wrapped by `R` and re-bracketed at each enclosing level.
    /// Monic with leading word `w`.
    pub fn embed(&self, w: &RlsWord, site: &ReductionSite) -> Result<LiePoly, RewriteError> {
        embed_at(w, &site.path, &site.span, site.rule.poly())
    }
}

fn embed_at(
    w: &RlsWord,
    path: &[usize],
    span: &Range<usize>,
    s: &LiePoly,
) -> Result<LiePoly, RewriteError> {
    match path.split_first() {
        None => Ok(special_bracketing(w, span.clone())?.eval(&[s])),
        Some((&k, rest)) => {
            let arg = w.letters()[k]
                .op_arg()
                .expect("site paths pass through operator letters");
            let inner = embed_at(arg, rest, span, s)?.apply_operator();
            Ok(special_bracketing(w, k..k + 1)?.eval(&[&inner]))
        }
    }
}
