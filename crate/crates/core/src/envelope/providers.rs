use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::lie::{LiePoly, Scalar};
use crate::rewrite::{RewriteError, RewriteSystem, Rule, RuleProvider};
use crate::words::{Letter, RlsWord};

/// `Some((a, b))` if `w = R(a)R(b)` with `a > b` both terminal.
fn descending_pair<'w>(w: &'w RlsWord, sys: &RewriteSystem) -> Option<(&'w RlsWord, &'w RlsWord)> {
    match w.letters() {
        [Letter::Op(a), Letter::Op(b)] if a > b && sys.is_terminal(a) && sys.is_terminal(b) => {
            Some((a, b))
        }
        _ => None,
    }
}

/// Generates the Rota–Baxter relations `rho(a,b)` of a given weight.
pub struct RbProvider {
    weight: Scalar,
    memo: Mutex<HashMap<RlsWord, Arc<Rule>>>,
}

impl RbProvider {
    pub fn new(weight: Scalar) -> Self {
        RbProvider {
            weight,
            memo: Mutex::default(),
        }
    }

    pub fn weight(&self) -> &Scalar {
        &self.weight
    }

    pub(crate) fn set(&self, w: RlsWord, rule: Rule) {
        self.memo.lock().unwrap().insert(w, Arc::new(rule));
    }

    fn build(&self, a: &RlsWord, b: &RlsWord, sys: &RewriteSystem) -> Result<Rule, RewriteError> {
        let a = LiePoly::monomial(a.clone());
        let b = LiePoly::monomial(b.clone());
        let ra = a.apply_operator();
        let rb = b.apply_operator();
        let mut tail = sys.normal_form(&ra.bracket(&b))?.apply_operator();
        tail -= &sys.normal_form(&rb.bracket(&a))?.apply_operator();
        tail += &sys.normal_form(&a.bracket(&b))?.apply_operator().scale(&self.weight);
        if !sys.is_normal(&tail) {
            tail = sys.normal_form(&tail)?;
        }
        Rule::new(ra.bracket(&rb) - tail)?.checked()
    }
}

impl RuleProvider for RbProvider {
    fn name(&self) -> &str {
        "rota-baxter"
    }

    fn max_leading_degree(&self) -> usize {
        2
    }

    fn fires(&self, w: &RlsWord, sys: &RewriteSystem) -> bool {
        descending_pair(w, sys).is_some()
    }

    fn rule(&self, w: &RlsWord, sys: &RewriteSystem) -> Result<Option<Arc<Rule>>, RewriteError> {
        let Some((a, b)) = descending_pair(w, sys) else {
            return Ok(None);
        };
        if let Some(r) = self.memo.lock().unwrap().get(w) {
            return Ok(Some(r.clone()));
        }
        let rule = self.build(a, b, sys).map_err(|e| RewriteError::InvalidProviderRule {
            provider: self.name().to_string(),
            source: Box::new(e),
        })?;
        let mut memo = self.memo.lock().unwrap();
        Ok(Some(memo.entry(w.clone()).or_insert_with(|| Arc::new(rule)).clone()))
    }
}

/// `R(a)R(b)` for terminal `a > b`: the operator has abelian image.
pub struct AbelianImageProvider;

impl RuleProvider for AbelianImageProvider {
    fn name(&self) -> &str {
        "abelian-image"
    }

    fn max_leading_degree(&self) -> usize {
        2
    }

    fn fires(&self, w: &RlsWord, sys: &RewriteSystem) -> bool {
        descending_pair(w, sys).is_some()
    }

    fn rule(&self, w: &RlsWord, sys: &RewriteSystem) -> Result<Option<Arc<Rule>>, RewriteError> {
        if !self.fires(w, sys) {
            return Ok(None);
        }
        Ok(Some(Arc::new(Rule::new(LiePoly::monomial(w.clone()))?)))
    }
}
