use std::collections::{BTreeSet, HashMap};

use super::{RewriteError, RewriteSystem};
use crate::lie::LiePoly;
use crate::words::RlsWord;

#[derive(Debug, Clone)]
pub struct ConfluenceWitness {
    pub input: LiePoly,
    /// Every terminal vertex reachable from `input`; more than one.
    pub terminals: Vec<LiePoly>,
}

#[derive(Debug, Clone)]
pub struct ConfluenceReport {
    pub confluent: bool,
    pub inputs_checked: usize,
    pub vertices: usize,
    /// For confluent runs, whether every unique terminal agreed with
    /// [`RewriteSystem::normal_form`].
    pub agrees_with_normal_form: bool,
    pub witness: Option<ConfluenceWitness>,
}

/// Explores the full rewriting graph from each input, following every site of
/// every monomial, and reports whether each input reaches a unique terminal
/// vertex. Fails once more than `max_vertices` vertices have been visited.
pub fn brute_force_confluence(
    sys: &RewriteSystem,
    inputs: &[LiePoly],
    max_vertices: usize,
) -> Result<ConfluenceReport, RewriteError> {
    let mut explorer = Explorer {
        sys,
        word_edges: HashMap::new(),
        reach: HashMap::new(),
        max_vertices,
    };
    let mut report = ConfluenceReport {
        confluent: true,
        inputs_checked: 0,
        vertices: 0,
        agrees_with_normal_form: true,
        witness: None,
    };
    for f in inputs {
        let terminals = explorer.terminals(f)?;
        report.inputs_checked += 1;
        report.vertices = explorer.reach.len();
        if terminals.len() != 1 {
            report.confluent = false;
            report.witness = Some(ConfluenceWitness {
                input: f.clone(),
                terminals: terminals.into_iter().collect(),
            });
            return Ok(report);
        }
        let nf = sys.normal_form(f)?;
        report.agrees_with_normal_form &= terminals.contains(&nf);
    }
    Ok(report)
}

struct Explorer<'a> {
    sys: &'a RewriteSystem,
    /// For each word, the `h` of every site.
    word_edges: HashMap<RlsWord, Vec<LiePoly>>,
    reach: HashMap<LiePoly, BTreeSet<LiePoly>>,
    max_vertices: usize,
}

impl Explorer<'_> {
    fn edges_of_word(&mut self, w: &RlsWord) -> Result<&[LiePoly], RewriteError> {
        if !self.word_edges.contains_key(w) {
            let hs = self
                .sys
                .find_reduction_sites(w)?
                .iter()
                .map(|s| self.sys.embed(w, s))
                .collect::<Result<Vec<_>, _>>()?;
            self.word_edges.insert(w.clone(), hs);
        }
        Ok(&self.word_edges[w])
    }

    fn successors(&mut self, f: &LiePoly) -> Result<Vec<LiePoly>, RewriteError> {
        let mut out = Vec::new();
        for (w, c) in f.terms() {
            for h in self.edges_of_word(w)? {
                let mut g = f.clone();
                g.add_scaled(&-c, h);
                out.push(g);
            }
        }
        Ok(out)
    }

    fn terminals(&mut self, f: &LiePoly) -> Result<BTreeSet<LiePoly>, RewriteError> {
        let mut stack = vec![f.clone()];
        let mut pending: HashMap<LiePoly, Vec<LiePoly>> = HashMap::new();
        while let Some(top) = stack.last().cloned() {
            if self.reach.contains_key(&top) {
                stack.pop();
                continue;
            }
            let succ = match pending.remove(&top) {
                Some(s) => s,
                None => self.successors(&top)?,
            };
            let missing: Vec<LiePoly> = succ
                .iter()
                .filter(|g| !self.reach.contains_key(*g))
                .cloned()
                .collect();
            if missing.is_empty() {
                let set = if succ.is_empty() {
                    BTreeSet::from([top.clone()])
                } else {
                    succ.iter().flat_map(|g| self.reach[g].iter().cloned()).collect()
                };
                self.reach.insert(top, set);
                if self.reach.len() > self.max_vertices {
                    return Err(RewriteError::SearchSpaceExceeded(self.max_vertices));
                }
                stack.pop();
            } else {
                if stack.len() > self.max_vertices {
                    return Err(RewriteError::SearchSpaceExceeded(self.max_vertices));
                }
                pending.insert(top, succ);
                stack.extend(missing);
            }
        }
        Ok(self.reach[f].clone())
    }
}
