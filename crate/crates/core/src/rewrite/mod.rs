//! Rewriting of operated Lie polynomials modulo a set of monic relations.
//!
//! A relation `s` with leading word `[u]` rewrites any basis word `[w]` that
//! contains `u` as a subword, at any nesting depth under `R`: the word is
//! replaced by `[w] - h`, where `h` is the Shirshov embedding of `s` into `w`
//! re-wrapped through the enclosing operator letters. Vertices without such
//! sites are terminal; confluent systems give unique normal forms.

mod composition;
mod confluence;
mod sites;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::One;
use thiserror::Error;

use crate::lie::{LiePoly, Scalar};
use crate::words::{RlsWord, WordError};

pub use composition::{check_gsb, compositions, Composition, GsbReport, GsbWitness};
pub use confluence::{brute_force_confluence, ConfluenceReport, ConfluenceWitness};
pub use sites::ReductionSite;

pub const DEFAULT_FUSE: u64 = 1_000_000;
pub const DEFAULT_RDEGREE_BOUND: usize = 64;
/// Environment variable overriding the step fuse of newly built systems.
pub const FUSE_ENV: &str = "RBLIE_STEP_FUSE";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("relation is zero")]
    ZeroRule,
    #[error("relation is not monic")]
    NotMonic,
    #[error("relation violates the R-degree condition: leading word has R-degree {leading}, relation has {total}")]
    RdegreeCondition { leading: usize, total: usize },
    #[error("R-degree {rdegree} exceeds the system bound {bound}")]
    BoundExceeded { rdegree: usize, bound: usize },
    #[error("rewriting did not terminate within {0} steps")]
    FuseBlown(u64),
    #[error("provider {provider} produced an invalid relation: {source}")]
    InvalidProviderRule {
        provider: String,
        #[source]
        source: Box<RewriteError>,
    },
    #[error("search space exceeded {0} vertices")]
    SearchSpaceExceeded(usize),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A monic relation together with its leading word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    poly: LiePoly,
    leading: RlsWord,
}

impl Rule {
    pub fn new(poly: LiePoly) -> Result<Rule, RewriteError> {
        let leading = poly.leading_word().cloned().ok_or(RewriteError::ZeroRule)?;
        if !poly.is_monic() {
            return Err(RewriteError::NotMonic);
        }
        Ok(Rule { poly, leading })
    }

    /// Divides by the leading coefficient.
    pub fn normalized(poly: &LiePoly) -> Result<Rule, RewriteError> {
        let (_, c) = poly.leading().ok_or(RewriteError::ZeroRule)?;
        Rule::new(poly.scale(&(Scalar::one() / c)))
    }

    pub fn poly(&self) -> &LiePoly {
        &self.poly
    }

    pub fn leading(&self) -> &RlsWord {
        &self.leading
    }

    /// The relation without its leading monomial.
    pub fn tail(&self) -> LiePoly {
        let mut t = self.poly.clone();
        t.pop_leading();
        t
    }

    /// The leading word carries at least as many operators as any other
    /// monomial.
    pub fn satisfies_rdegree_condition(&self) -> bool {
        self.leading.rdegree() >= self.poly.rdegree()
    }

    pub(crate) fn checked(self) -> Result<Rule, RewriteError> {
        if self.satisfies_rdegree_condition() {
            Ok(self)
        } else {
            Err(RewriteError::RdegreeCondition {
                leading: self.leading.rdegree(),
                total: self.poly.rdegree(),
            })
        }
    }
}

impl std::fmt::Debug for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Rule({:?})", self.poly)
    }
}

/// A schema producing relations on demand, for systems that are infinite.
///
/// `fires` must agree with `rule(..).is_some()`; it exists so that terminality
/// can be decided without building right-hand sides.
pub trait RuleProvider: Send + Sync {
    fn name(&self) -> &str;

    /// Degree of the longest leading word this provider can produce.
    fn max_leading_degree(&self) -> usize;

    fn fires(&self, candidate: &RlsWord, sys: &RewriteSystem) -> bool;

    fn rule(&self, candidate: &RlsWord, sys: &RewriteSystem)
        -> Result<Option<Arc<Rule>>, RewriteError>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct ValidationFlags {
    pub monic: bool,
    pub rdeg_condition: bool,
    pub reduced: bool,
}

/// A finite set of explicit relations plus rule providers.
pub struct RewriteSystem {
    rules: Vec<Arc<Rule>>,
    by_leading: HashMap<RlsWord, Vec<usize>>,
    lengths: Vec<usize>,
    providers: Vec<Arc<dyn RuleProvider>>,
    rdegree_bound: usize,
    fuse: u64,
    flags: OnceLock<ValidationFlags>,
    terminal: Mutex<HashMap<RlsWord, bool>>,
    rewrites: Mutex<HashMap<RlsWord, Option<LiePoly>>>,
    normal: Mutex<HashMap<RlsWord, LiePoly>>,
}

impl RewriteSystem {
    /// Relations must be monic.
    pub fn new(polys: impl IntoIterator<Item = LiePoly>) -> Result<Self, RewriteError> {
        let rules = polys
            .into_iter()
            .map(|p| Rule::new(p).map(Arc::new))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_rules(rules))
    }

    pub fn from_rules(rules: Vec<Arc<Rule>>) -> Self {
        let mut by_leading: HashMap<RlsWord, Vec<usize>> = HashMap::new();
        for (i, r) in rules.iter().enumerate() {
            by_leading.entry(r.leading.clone()).or_default().push(i);
        }
        let mut lengths: Vec<usize> = rules.iter().map(|r| r.leading.degree()).collect();
        lengths.sort_unstable();
        lengths.dedup();
        let fuse = std::env::var(FUSE_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_FUSE);
        RewriteSystem {
            rules,
            by_leading,
            lengths,
            providers: Vec::new(),
            rdegree_bound: DEFAULT_RDEGREE_BOUND,
            fuse,
            flags: OnceLock::new(),
            terminal: Mutex::default(),
            rewrites: Mutex::default(),
            normal: Mutex::default(),
        }
    }

    pub fn empty() -> Self {
        Self::from_rules(Vec::new())
    }

    pub fn with_provider(mut self, provider: Arc<dyn RuleProvider>) -> Self {
        self.providers.push(provider);
        self
    }

    pub fn with_rdegree_bound(mut self, bound: usize) -> Self {
        self.rdegree_bound = bound;
        self
    }

    pub fn with_fuse(mut self, steps: u64) -> Self {
        self.fuse = steps;
        self
    }

    pub fn rules(&self) -> &[Arc<Rule>] {
        &self.rules
    }

    pub fn providers(&self) -> &[Arc<dyn RuleProvider>] {
        &self.providers
    }

    pub fn rdegree_bound(&self) -> usize {
        self.rdegree_bound
    }

    pub fn fuse(&self) -> u64 {
        self.fuse
    }

    /// Validation of the explicit relations. Provider relations are checked
    /// as they are generated.
    pub fn flags(&self) -> ValidationFlags {
        *self.flags.get_or_init(|| ValidationFlags {
            monic: self.rules.iter().all(|r| r.poly.is_monic()),
            rdeg_condition: self.rules.iter().all(|r| r.satisfies_rdegree_condition()),
            reduced: self.rules.iter().all(|r| self.is_reduced_rule(r).unwrap_or(false)),
        })
    }

    /// A relation is reduced in the system when its tail is terminal and its
    /// leading word is rewritten by nothing but the relation itself.
    pub fn is_reduced_rule(&self, rule: &Rule) -> Result<bool, RewriteError> {
        if !rule.tail().words().all(|w| self.is_terminal(w)) {
            return Ok(false);
        }
        let sites = self.find_reduction_sites(&rule.leading)?;
        Ok(matches!(sites.as_slice(),
            [s] if s.path.is_empty() && s.span == (0..rule.leading.degree()) && *s.rule == *rule))
    }

    fn check_bound(&self, p: &LiePoly) -> Result<(), RewriteError> {
        let rdegree = p.rdegree();
        if rdegree > self.rdegree_bound {
            return Err(RewriteError::BoundExceeded {
                rdegree,
                bound: self.rdegree_bound,
            });
        }
        Ok(())
    }

    /// The canonical rewrite of a word: `Some(h)` with `h` monic and leading
    /// word `w`, or `None` for terminal words.
    pub(crate) fn canonical_rewrite(&self, w: &RlsWord) -> Result<Option<LiePoly>, RewriteError> {
        if let Some(h) = self.rewrites.lock().unwrap().get(w) {
            return Ok(h.clone());
        }
        let h = match self.canonical_site(w)? {
            None => None,
            Some(site) => {
                let h = self.embed(w, &site)?;
                self.check_bound(&h)?;
                Some(h)
            }
        };
        self.rewrites
            .lock()
            .unwrap()
            .entry(w.clone())
            .or_insert(h.clone());
        Ok(h)
    }

    /// One edge of the canonical strategy: rewrite the deglex-greatest
    /// reducible monomial at its canonical site. `None` if `f` is terminal.
    pub fn reduce_once(&self, f: &LiePoly) -> Result<Option<LiePoly>, RewriteError> {
        self.check_bound(f)?;
        for (w, c) in f.terms().rev() {
            if let Some(h) = self.canonical_rewrite(w)? {
                let mut g = f.clone();
                g.add_scaled(&-c, &h);
                return Ok(Some(g));
            }
        }
        Ok(None)
    }

    /// The terminal vertex reached by the canonical strategy.
    ///
    /// The canonical edge out of a monomial depends only on its word, so the
    /// walk is linear in `f` and is computed word by word.
    pub fn normal_form(&self, f: &LiePoly) -> Result<LiePoly, RewriteError> {
        self.check_bound(f)?;
        let mut out = LiePoly::zero();
        for (w, c) in f.terms() {
            out.add_scaled(c, &self.word_normal_form(w)?);
        }
        Ok(out)
    }

    pub fn is_normal(&self, f: &LiePoly) -> bool {
        f.words().all(|w| self.is_terminal(w))
    }

    fn cached_normal(&self, w: &RlsWord) -> Option<LiePoly> {
        self.normal.lock().unwrap().get(w).cloned()
    }

    fn word_normal_form(&self, w: &RlsWord) -> Result<LiePoly, RewriteError> {
        if let Some(p) = self.cached_normal(w) {
            return Ok(p);
        }
        let mut stack = vec![w.clone()];
        let mut steps = 0u64;
        while let Some(top) = stack.last().cloned() {
            steps += 1;
            if steps > self.fuse {
                return Err(RewriteError::FuseBlown(self.fuse));
            }
            if self.cached_normal(&top).is_some() {
                stack.pop();
                continue;
            }
            let nf = match self.canonical_rewrite(&top)? {
                None => Some(LiePoly::monomial(top.clone())),
                Some(h) => {
                    let missing: Vec<RlsWord> = h
                        .words()
                        .filter(|v| **v != top && self.cached_normal(v).is_none())
                        .cloned()
                        .collect();
                    if missing.is_empty() {
                        let normal = self.normal.lock().unwrap();
                        let mut nf = LiePoly::zero();
                        for (v, c) in h.terms().filter(|(v, _)| **v != top) {
                            nf.add_scaled(&-c, &normal[v]);
                        }
                        Some(nf)
                    } else {
                        stack.extend(missing);
                        None
                    }
                }
            };
            if let Some(nf) = nf {
                self.normal.lock().unwrap().insert(top, nf);
                stack.pop();
            }
        }
        Ok(self.cached_normal(w).expect("computed above"))
    }

    /// Iterates [`reduce_once`](Self::reduce_once) to a terminal vertex.
    /// Agrees with [`normal_form`](Self::normal_form); kept as the literal
    /// definition for cross-checking.
    pub fn normal_form_stepwise(&self, f: &LiePoly) -> Result<LiePoly, RewriteError> {
        let mut cur = f.clone();
        for _ in 0..self.fuse {
            match self.reduce_once(&cur)? {
                Some(next) => cur = next,
                None => return Ok(cur),
            }
        }
        Err(RewriteError::FuseBlown(self.fuse))
    }
}
