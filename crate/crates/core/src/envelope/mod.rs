//! Rota–Baxter and abelian-image envelopes of a finite-dimensional Lie
//! algebra given by structure constants.
//!
//! Both envelopes share the relations `xy - [x,y]` for `x > y`. The
//! Rota–Baxter one adds, for terminal `a > b`,
//!
//! ```text
//! rho(a,b) = R(a)R(b) - R(t([R(a),b])) + R(t([R(b),a])) - λ R(t([a,b]))
//! ```
//!
//! where `t` is the normal form; the abelian-image one adds `R(a)R(b)`.
//! Both families are infinite and are generated on demand by rule providers.

mod presentation;
mod providers;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::lie::{LiePoly, Scalar};
use crate::oplie::{enumerate_rls_words, RlsEnumerationBounds};
use crate::rewrite::{check_gsb, GsbWitness, RewriteError, RewriteSystem, Rule};
use crate::words::{Letter, RlsWord};

pub use presentation::LiePresentation;
pub use providers::{AbelianImageProvider, RbProvider};

#[derive(Debug, Error)]
pub enum EnvelopeError {
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("structure constants violate the Jacobi identity")]
    JacobiViolation(Box<GsbWitness>),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

/// Weight `λ` of a Rota–Baxter operator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Weight(pub Scalar);

impl From<Scalar> for Weight {
    fn from(s: Scalar) -> Self {
        Weight(s)
    }
}

/// The relations `xy - [x,y]`, one per pair `x > y`, after checking that
/// they are closed under composition.
pub fn build_s0(p: &LiePresentation) -> Result<Vec<LiePoly>, EnvelopeError> {
    let polys = p.s0_polys();
    let sys = RewriteSystem::new(polys.clone())?;
    let report = check_gsb(&sys, p.alphabet().len(), &RlsEnumerationBounds::new(3, 0))?;
    match report.witness {
        Some(w) => Err(EnvelopeError::JacobiViolation(Box::new(w))),
        None if !report.pass => Err(EnvelopeError::InvalidPresentation(
            "relations xy - [x,y] are not reduced".into(),
        )),
        None => Ok(polys),
    }
}

pub struct RbEnvelope {
    presentation: LiePresentation,
    weight: Weight,
    provider: Arc<RbProvider>,
    system: RewriteSystem,
}

impl RbEnvelope {
    pub fn new(presentation: LiePresentation, weight: Weight) -> Result<Self, EnvelopeError> {
        let s0 = build_s0(&presentation)?;
        let provider = Arc::new(RbProvider::new(weight.0.clone()));
        let system = RewriteSystem::new(s0)?.with_provider(provider.clone());
        Ok(RbEnvelope {
            presentation,
            weight,
            provider,
            system,
        })
    }

    /// Caps the R-degree of polynomials handled by the system.
    pub fn with_rdegree_bound(mut self, bound: usize) -> Self {
        self.system = self.system.with_rdegree_bound(bound);
        self
    }

    pub fn presentation(&self) -> &LiePresentation {
        &self.presentation
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn system(&self) -> &RewriteSystem {
        &self.system
    }

    pub fn normal_form(&self, f: &LiePoly) -> Result<LiePoly, RewriteError> {
        self.system.normal_form(f)
    }

    /// `rho(a,b)`, or `None` unless `a > b` are both terminal.
    pub fn rho(&self, a: &RlsWord, b: &RlsWord) -> Result<Option<Arc<Rule>>, RewriteError> {
        if a <= b {
            return Ok(None);
        }
        let w = RlsWord::from_letters(&[Letter::Op(a.clone()), Letter::Op(b.clone())])?;
        rb_provider(&w, self)
    }

    /// Replaces the relation used for `R(a)R(b)`. Intended for fault
    /// injection; must be called before the word is first rewritten.
    pub fn override_rho(&self, a: &RlsWord, b: &RlsWord, poly: LiePoly) -> Result<(), RewriteError> {
        let w = RlsWord::from_letters(&[Letter::Op(a.clone()), Letter::Op(b.clone())])?;
        self.provider.set(w, Rule::new(poly)?);
        Ok(())
    }
}

/// The Rota–Baxter relation with leading word `w`, if `w = R(a)R(b)` with
/// `a > b` both terminal.
pub fn rb_provider(w: &RlsWord, env: &RbEnvelope) -> Result<Option<Arc<Rule>>, RewriteError> {
    use crate::rewrite::RuleProvider;
    env.provider.rule(w, &env.system)
}

/// `xy - [x,y]` together with `R(a)R(b)` for terminal `a > b`.
pub fn build_ra_system(p: &LiePresentation) -> Result<RewriteSystem, EnvelopeError> {
    let s0 = build_s0(p)?;
    Ok(RewriteSystem::new(s0)?.with_provider(Arc::new(AbelianImageProvider)))
}

/// `R(a)R(b)` for terminal `a > b`, with no relations among generators. Its
/// terminal words are the RALS words.
pub fn ralie_system() -> RewriteSystem {
    RewriteSystem::empty().with_provider(Arc::new(AbelianImageProvider))
}

/// Terminal RLS words within `bounds`, ascending.
pub fn terminal_words(
    sys: &RewriteSystem,
    num_generators: usize,
    bounds: &RlsEnumerationBounds,
) -> Vec<RlsWord> {
    enumerate_rls_words(num_generators, bounds)
        .into_iter()
        .filter(|w| sys.is_terminal(w))
        .collect()
}

#[derive(Debug, Clone)]
pub struct RbIdentityFailure {
    pub a: RlsWord,
    pub b: RlsWord,
    pub residual: LiePoly,
}

#[derive(Debug, Clone)]
pub struct RbIdentityReport {
    pub pairs_checked: usize,
    pub failure: Option<RbIdentityFailure>,
}

impl RbIdentityReport {
    pub fn pass(&self) -> bool {
        self.failure.is_none()
    }
}

/// `[R(a),R(b)] - R([R(a),b]) - R([a,R(b)]) - λR([a,b])`.
pub fn rb_defect(a: &LiePoly, b: &LiePoly, weight: &Scalar) -> LiePoly {
    let ra = a.apply_operator();
    let rb = b.apply_operator();
    ra.bracket(&rb)
        - ra.bracket(b).apply_operator()
        - a.bracket(&rb).apply_operator()
        - a.bracket(b).apply_operator().scale(weight)
}

/// Checks the Rota–Baxter identity on every unordered pair of terminal words
/// within `bounds`. The defect is antisymmetric, so `(b,a)` is implied by
/// `(a,b)`.
pub fn verify_rb_identity(
    env: &RbEnvelope,
    bounds: &RlsEnumerationBounds,
) -> Result<RbIdentityReport, RewriteError> {
    let words = terminal_words(env.system(), env.presentation.alphabet().len(), bounds);
    let mut report = RbIdentityReport {
        pairs_checked: 0,
        failure: None,
    };
    for (i, a) in words.iter().enumerate() {
        for b in &words[..=i] {
            let defect = rb_defect(
                &LiePoly::monomial(a.clone()),
                &LiePoly::monomial(b.clone()),
                &env.weight.0,
            );
            let residual = env.normal_form(&defect)?;
            report.pairs_checked += 1;
            if !residual.is_zero() {
                report.failure = Some(RbIdentityFailure {
                    a: a.clone(),
                    b: b.clone(),
                    residual,
                });
                return Ok(report);
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PbwRow {
    pub degree: usize,
    pub rdegree: usize,
    pub rb: usize,
    pub ra: usize,
}

#[derive(Debug, Clone)]
pub struct PbwReport {
    pub equal: bool,
    pub rows: Vec<PbwRow>,
    pub rb_only: Vec<RlsWord>,
    pub ra_only: Vec<RlsWord>,
}

impl PbwReport {
    /// The smallest word in the symmetric difference.
    pub fn first_difference(&self) -> Option<&RlsWord> {
        match (self.rb_only.first(), self.ra_only.first()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }
}

/// Compares the terminal words of the Rota–Baxter and abelian-image systems
/// within `bounds`, tabulated by (degree, R-degree).
pub fn pbw_compare(
    p: &LiePresentation,
    weight: &Weight,
    bounds: &RlsEnumerationBounds,
) -> Result<PbwReport, EnvelopeError> {
    let k = p.alphabet().len();
    let rb = RbEnvelope::new(p.clone(), weight.clone())?;
    let ra = build_ra_system(p)?;
    let rb_words: BTreeSet<RlsWord> = terminal_words(rb.system(), k, bounds).into_iter().collect();
    let ra_words: BTreeSet<RlsWord> = terminal_words(&ra, k, bounds).into_iter().collect();
    let mut counts: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    for w in &rb_words {
        counts.entry((w.degree(), w.rdegree())).or_default().0 += 1;
    }
    for w in &ra_words {
        counts.entry((w.degree(), w.rdegree())).or_default().1 += 1;
    }
    let rb_only: Vec<RlsWord> = rb_words.difference(&ra_words).cloned().collect();
    let ra_only: Vec<RlsWord> = ra_words.difference(&rb_words).cloned().collect();
    Ok(PbwReport {
        equal: rb_only.is_empty() && ra_only.is_empty(),
        rows: counts
            .into_iter()
            .map(|((degree, rdegree), (rb, ra))| PbwRow { degree, rdegree, rb, ra })
            .collect(),
        rb_only,
        ra_only,
    })
}
