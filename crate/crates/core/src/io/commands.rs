//! The operations behind the command-line tool, returning serializable
//! reports with a plain-text rendering of the same data.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use super::presentation::PresentationError;
use super::term::{format_rational, parse_term, print_term, print_word, ParseError};
use crate::envelope::{
    build_ra_system, build_s0, pbw_compare, verify_rb_identity, EnvelopeError, LiePresentation,
    PbwRow, RbEnvelope, Weight,
};
use crate::oplie::{enumerate_rals_words, enumerate_rls_words, RlsEnumerationBounds};
use crate::rewrite::{check_gsb, GsbWitness, RewriteError, RewriteSystem, ValidationFlags};
use crate::words::{enumerate_ls_words, Alphabet, RlsWord};

#[derive(Debug, Error)]
pub enum CommandError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Envelope(#[from] EnvelopeError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SystemKind {
    Rb,
    Ra,
    S0,
}

impl FromStr for SystemKind {
    type Err = CommandError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rb" => Ok(SystemKind::Rb),
            "ra" => Ok(SystemKind::Ra),
            "s0" => Ok(SystemKind::S0),
            _ => Err(CommandError::Usage(format!("unknown system `{s}`; expected rb, ra or s0"))),
        }
    }
}

enum Built {
    Rb(Box<RbEnvelope>),
    Plain(Box<RewriteSystem>),
}

impl Built {
    fn new(
        kind: SystemKind,
        p: &LiePresentation,
        weight: &Weight,
        rdegree_bound: Option<usize>,
    ) -> Result<Self, CommandError> {
        let built = match kind {
            SystemKind::Rb => {
                let mut env = RbEnvelope::new(p.clone(), weight.clone())?;
                if let Some(b) = rdegree_bound {
                    env = env.with_rdegree_bound(b);
                }
                return Ok(Built::Rb(Box::new(env)));
            }
            SystemKind::Ra => build_ra_system(p)?,
            SystemKind::S0 => RewriteSystem::new(build_s0(p)?)?,
        };
        Ok(Built::Plain(Box::new(match rdegree_bound {
            Some(b) => built.with_rdegree_bound(b),
            None => built,
        })))
    }

    fn system(&self) -> &RewriteSystem {
        match self {
            Built::Rb(env) => env.system(),
            Built::Plain(sys) => sys,
        }
    }
}

fn names(alphabet: &Alphabet) -> Vec<String> {
    alphabet.generators().iter().map(|g| g.name.clone()).collect()
}

fn joined<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Debug, Clone, Serialize)]
pub struct LsWordsOutput {
    pub command: &'static str,
    pub alphabet: Vec<String>,
    pub max_degree: usize,
    /// Number of words of each degree `1..=max_degree`.
    pub counts: Vec<usize>,
    pub words: Vec<String>,
}

pub fn lswords(alphabet: &Alphabet, max_degree: usize) -> LsWordsOutput {
    let words = enumerate_ls_words(&alphabet.letters(), max_degree);
    let mut counts = vec![0; max_degree];
    for w in &words {
        counts[w.degree() - 1] += 1;
    }
    LsWordsOutput {
        command: "lswords",
        alphabet: names(alphabet),
        max_degree,
        counts,
        words: words.iter().map(|w| print_word(alphabet, w)).collect(),
    }
}

impl LsWordsOutput {
    pub fn text(&self) -> String {
        let mut s = format!("counts: {}\n", joined(&self.counts));
        for w in &self.words {
            writeln!(s, "{w}").unwrap();
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GradedCount {
    pub degree: usize,
    pub rdegree: usize,
    pub count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RlsWordsOutput {
    pub command: &'static str,
    pub alphabet: Vec<String>,
    pub max_degree: usize,
    pub max_rdegree: usize,
    pub rals: bool,
    pub total: usize,
    pub counts: Vec<GradedCount>,
    pub words: Vec<String>,
}

fn graded_counts(words: &[RlsWord]) -> Vec<GradedCount> {
    let mut m: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for w in words {
        *m.entry((w.degree(), w.rdegree())).or_default() += 1;
    }
    m.into_iter()
        .map(|((degree, rdegree), count)| GradedCount { degree, rdegree, count })
        .collect()
}

pub fn rlswords(alphabet: &Alphabet, bounds: &RlsEnumerationBounds, rals: bool) -> RlsWordsOutput {
    let words = if rals {
        enumerate_rals_words(alphabet.len(), bounds)
    } else {
        enumerate_rls_words(alphabet.len(), bounds)
    };
    RlsWordsOutput {
        command: "rlswords",
        alphabet: names(alphabet),
        max_degree: bounds.max_degree,
        max_rdegree: bounds.max_rdegree,
        rals,
        total: words.len(),
        counts: graded_counts(&words),
        words: words.iter().map(|w| print_word(alphabet, w)).collect(),
    }
}

impl RlsWordsOutput {
    pub fn text(&self) -> String {
        let mut s = format!("total: {}\n", self.total);
        for c in &self.counts {
            writeln!(s, "degree {} rdegree {}: {}", c.degree, c.rdegree, c.count).unwrap();
        }
        for w in &self.words {
            writeln!(s, "{w}").unwrap();
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NfOutput {
    pub command: &'static str,
    pub system: SystemKind,
    pub input: String,
    pub normal_form: String,
}

pub fn nf(
    p: &LiePresentation,
    weight: &Weight,
    system: SystemKind,
    term: &str,
    max_rdegree: Option<usize>,
) -> Result<NfOutput, CommandError> {
    let f = parse_term(p.alphabet(), term)?;
    let built = Built::new(system, p, weight, max_rdegree)?;
    let nf = built.system().normal_form(&f)?;
    Ok(NfOutput {
        command: "nf",
        system,
        input: print_term(p.alphabet(), &f),
        normal_form: print_term(p.alphabet(), &nf),
    })
}

impl NfOutput {
    pub fn text(&self) -> String {
        format!("{}\n", self.normal_form)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GsbWitnessOutput {
    pub left: String,
    pub right: String,
    pub word: String,
    pub composition: String,
    pub residual: String,
}

fn witness_output(a: &Alphabet, w: &GsbWitness) -> GsbWitnessOutput {
    GsbWitnessOutput {
        left: print_term(a, w.left.poly()),
        right: print_term(a, w.right.poly()),
        word: print_word(a, &w.word),
        composition: print_term(a, &w.composition),
        residual: print_term(a, &w.residual),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GsbOutput {
    pub command: &'static str,
    pub system: SystemKind,
    pub max_degree: usize,
    pub max_rdegree: usize,
    pub pass: bool,
    pub flags: ValidationFlags,
    pub relations: usize,
    pub compositions: usize,
    pub invalid_relation: Option<String>,
    pub witness: Option<GsbWitnessOutput>,
}

pub fn gsb_check(
    p: &LiePresentation,
    weight: &Weight,
    system: SystemKind,
    bounds: &RlsEnumerationBounds,
) -> Result<GsbOutput, CommandError> {
    let a = p.alphabet();
    let built = match Built::new(system, p, weight, None) {
        Err(CommandError::Envelope(EnvelopeError::JacobiViolation(w))) => {
            return Ok(GsbOutput {
                command: "gsb-check",
                system,
                max_degree: bounds.max_degree,
                max_rdegree: bounds.max_rdegree,
                pass: false,
                flags: ValidationFlags { monic: true, rdeg_condition: true, reduced: true },
                relations: p.s0_polys().len(),
                compositions: 0,
                invalid_relation: None,
                witness: Some(witness_output(a, &w)),
            })
        }
        other => other?,
    };
    let report = check_gsb(built.system(), a.len(), bounds)?;
    Ok(GsbOutput {
        command: "gsb-check",
        system,
        max_degree: bounds.max_degree,
        max_rdegree: bounds.max_rdegree,
        pass: report.pass,
        flags: report.flags,
        relations: report.rules_checked,
        compositions: report.compositions_checked,
        invalid_relation: report.invalid_rule.map(|r| print_term(a, r.poly())),
        witness: report.witness.map(|w| witness_output(a, &w)),
    })
}

impl GsbOutput {
    pub fn text(&self) -> String {
        let mut s = String::new();
        if self.pass {
            writeln!(
                s,
                "PASS relations={} compositions={}",
                self.relations, self.compositions
            )
            .unwrap();
        } else if let Some(w) = &self.witness {
            writeln!(s, "FAIL composition at {}", w.word).unwrap();
            writeln!(s, "  left: {}", w.left).unwrap();
            writeln!(s, "  right: {}", w.right).unwrap();
            writeln!(s, "  composition: {}", w.composition).unwrap();
            writeln!(s, "  residual: {}", w.residual).unwrap();
        } else {
            writeln!(
                s,
                "FAIL invalid relation {} (monic={} rdeg_condition={} reduced={})",
                self.invalid_relation.as_deref().unwrap_or("?"),
                self.flags.monic,
                self.flags.rdeg_condition,
                self.flags.reduced
            )
            .unwrap();
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PbwOutput {
    pub command: &'static str,
    pub weight: String,
    pub max_degree: usize,
    pub max_rdegree: usize,
    pub equal: bool,
    pub rows: Vec<PbwRow>,
    pub first_difference: Option<String>,
    pub rb_only: Vec<String>,
    pub ra_only: Vec<String>,
}

pub fn pbw(
    p: &LiePresentation,
    weight: &Weight,
    bounds: &RlsEnumerationBounds,
) -> Result<PbwOutput, CommandError> {
    let a = p.alphabet();
    let report = pbw_compare(p, weight, bounds)?;
    Ok(PbwOutput {
        command: "pbw",
        weight: format_rational(&weight.0),
        max_degree: bounds.max_degree,
        max_rdegree: bounds.max_rdegree,
        equal: report.equal,
        first_difference: report.first_difference().map(|w| print_word(a, w)),
        rows: report.rows,
        rb_only: report.rb_only.iter().map(|w| print_word(a, w)).collect(),
        ra_only: report.ra_only.iter().map(|w| print_word(a, w)).collect(),
    })
}

impl PbwOutput {
    pub fn text(&self) -> String {
        let mut s = String::from("degree rdegree     RB     RA\n");
        for r in &self.rows {
            writeln!(s, "{:>6} {:>7} {:>6} {:>6}", r.degree, r.rdegree, r.rb, r.ra).unwrap();
        }
        match &self.first_difference {
            None => s.push_str("EQUAL\n"),
            Some(w) => writeln!(s, "DIFFERENT first difference {w}").unwrap(),
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RbFailureOutput {
    pub a: String,
    pub b: String,
    pub residual: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RbVerifyOutput {
    pub command: &'static str,
    pub weight: String,
    pub max_degree: usize,
    pub max_rdegree: usize,
    pub pass: bool,
    pub pairs: usize,
    pub failure: Option<RbFailureOutput>,
}

pub fn rb_verify(
    p: &LiePresentation,
    weight: &Weight,
    bounds: &RlsEnumerationBounds,
) -> Result<RbVerifyOutput, CommandError> {
    let a = p.alphabet();
    let env = RbEnvelope::new(p.clone(), weight.clone())?;
    let report = verify_rb_identity(&env, bounds)?;
    Ok(RbVerifyOutput {
        command: "rb-verify",
        weight: format_rational(&weight.0),
        max_degree: bounds.max_degree,
        max_rdegree: bounds.max_rdegree,
        pass: report.pass(),
        pairs: report.pairs_checked,
        failure: report.failure.map(|f| RbFailureOutput {
            a: print_word(a, &f.a),
            b: print_word(a, &f.b),
            residual: print_term(a, &f.residual),
        }),
    })
}

impl RbVerifyOutput {
    pub fn text(&self) -> String {
        match &self.failure {
            None => format!("PASS pairs={}\n", self.pairs),
            Some(f) => format!("FAIL a={} b={} residual={}\n", f.a, f.b, f.residual),
        }
    }
}
