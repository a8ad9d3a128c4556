//! Acceptance criteria, one line of output each. Runs without the libtest
//! harness so the summary is always printed.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{bundled, expand, expand_word, perturbed_sl2, q, witt, Key};
use rblie::envelope::{
    build_s0, pbw_compare, ralie_system, terminal_words, verify_rb_identity, EnvelopeError,
    LiePresentation, RbEnvelope, Weight,
};
use rblie::lie::{special_bracketing, LiePoly};
use rblie::oplie::{enumerate_rals_words, enumerate_rls_words, RlsEnumerationBounds};
use rblie::rewrite::{brute_force_confluence, check_gsb, compositions, RewriteSystem};
use rblie::words::{enumerate_ls_words, is_ls_word, Letter, RlsWord};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn two_letters() -> Vec<Letter> {
    vec![Letter::Gen(0), Letter::Gen(1)]
}

fn witt_counts() -> Check {
    let words = enumerate_ls_words(&two_letters(), 8);
    let mut counts = [0u64; 8];
    for w in &words {
        counts[w.degree() - 1] += 1;
    }
    let oracle: Vec<u64> = (1..=8).map(|n| witt(2, n)).collect();
    ensure(oracle == [2, 1, 2, 3, 6, 9, 18, 30], || format!("oracle gave {oracle:?}"))?;
    ensure(counts.as_slice() == oracle.as_slice(), || format!("counts {counts:?}"))?;
    Ok(format!("counts {counts:?}"))
}

fn bracket_oracle() -> Check {
    let basis = enumerate_ls_words(&two_letters(), 6);
    let mut pairs = 0;
    for u in &basis {
        for v in basis.iter().filter(|v| u.degree() + v.degree() <= 7) {
            let got = expand(&LiePoly::monomial(u.clone()).bracket(&LiePoly::monomial(v.clone())));
            let (eu, ev) = (expand_word(u), expand_word(v));
            let want = common::assoc_sub(&common::assoc_mul(&eu, &ev), &common::assoc_mul(&ev, &eu));
            ensure(got == want, || format!("[{u:?},{v:?}] disagrees with the expansion"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} ordered pairs"))
}

fn special_bracketing_contract() -> Check {
    let mut occurrences = 0;
    for w in enumerate_ls_words(&two_letters(), 6) {
        let n = w.degree();
        for i in 0..n {
            for j in i + 1..=n {
                let sub = &w.letters()[i..j];
                if !is_ls_word(sub) {
                    continue;
                }
                let u = RlsWord::from_letters(sub).unwrap();
                let tree = special_bracketing(&w, i..j).map_err(|e| format!("{w:?} {i}..{j}: {e}"))?;
                let p = tree.eval(&[&LiePoly::monomial(u)]);
                ensure(p.leading() == Some((&w, &q(1))), || format!("{w:?} at {i}..{j}: {p:?}"))?;
                let e = expand(&p);
                let (top, c) = e.iter().next_back().unwrap();
                ensure(*top == Key(w.letters().to_vec()) && *c == q(1), || {
                    format!("{w:?} at {i}..{j}: associative leading term is off")
                })?;
                occurrences += 1;
            }
        }
    }
    Ok(format!("{occurrences} occurrences"))
}

fn gsb_positive_negative() -> Check {
    let mut notes = Vec::new();
    for name in ["sl2.json", "heisenberg.json"] {
        let (p, _) = bundled(name);
        let sys = RewriteSystem::new(p.s0_polys()).unwrap();
        let report = check_gsb(&sys, p.alphabet().len(), &RlsEnumerationBounds::new(3, 0))
            .map_err(|e| e.to_string())?;
        ensure(report.pass, || format!("{name}: {:?}", report.witness))?;
        notes.push(format!("{name} pass ({} compositions)", report.compositions_checked));
    }
    let bad = perturbed_sl2();
    let sys = RewriteSystem::new(bad.s0_polys()).unwrap();
    let report = check_gsb(&sys, 3, &RlsEnumerationBounds::new(3, 0)).map_err(|e| e.to_string())?;
    let witness = report.witness.ok_or("perturbed sl2 passed")?;
    ensure(!report.pass && !witness.residual.is_zero(), || "zero residual".into())?;
    let jac = bad.jacobian(0, 1, 2);
    ensure(witness.residual == jac || witness.residual == -jac, || {
        format!("residual {:?} is not the Jacobian", witness.residual)
    })?;
    ensure(matches!(build_s0(&bad), Err(EnvelopeError::JacobiViolation(_))), || {
        "build_s0 accepted the perturbed table".into()
    })?;
    notes.push(format!("perturbed sl2 fails with residual {:?}", witness.residual));
    Ok(notes.join("; "))
}

fn ralie_basis() -> Check {
    let bounds = RlsEnumerationBounds::new(3, 2);
    let mut sizes = Vec::new();
    for k in 1..=3 {
        let sys = ralie_system();
        let got: BTreeSet<RlsWord> = terminal_words(&sys, k, &bounds).into_iter().collect();
        let want: BTreeSet<RlsWord> = enumerate_rals_words(k, &bounds).into_iter().collect();
        ensure(got == want, || format!("{k} generators: sets differ"))?;
        sizes.push(got.len());
    }
    Ok(format!("sizes for 1..3 generators: {sizes:?}"))
}

fn weights() -> Vec<Weight> {
    vec![Weight(q(0)), Weight(q(1)), Weight(q(-1)), Weight(q(1) / q(2))]
}

fn rb_identity() -> Check {
    let bounds = RlsEnumerationBounds::new(2, 2);
    let mut pairs = 0;
    for name in ["sl2.json", "abelian1.json"] {
        let (p, _) = bundled(name);
        for w in weights() {
            let env = RbEnvelope::new(p.clone(), w.clone()).map_err(|e| e.to_string())?;
            let report = verify_rb_identity(&env, &bounds).map_err(|e| e.to_string())?;
            ensure(report.pass(), || format!("{name} λ={}: {:?}", w.0, report.failure))?;
            pairs += report.pairs_checked;
        }
    }
    Ok(format!("{pairs} pairs over 2 algebras and 4 weights"))
}

fn triples_for(p: &LiePresentation, w: Weight) -> Result<usize, String> {
    let env = RbEnvelope::new(p.clone(), w).map_err(|e| e.to_string())?;
    let terms = terminal_words(env.system(), p.alphabet().len(), &RlsEnumerationBounds::new(2, 1));
    let mut count = 0;
    for (i, c) in terms.iter().enumerate() {
        for (j, b) in terms.iter().enumerate().skip(i + 1) {
            for a in &terms[j + 1..] {
                let word = RlsWord::from_letters(&[
                    Letter::Op(a.clone()),
                    Letter::Op(b.clone()),
                    Letter::Op(c.clone()),
                ])
                .map_err(|e| e.to_string())?;
                let s1 = env.rho(a, b).map_err(|e| e.to_string())?.ok_or("missing rho(a,b)")?;
                let s2 = env.rho(b, c).map_err(|e| e.to_string())?.ok_or("missing rho(b,c)")?;
                let comp = compositions(&s1, &s2)
                    .map_err(|e| e.to_string())?
                    .into_iter()
                    .find(|comp| comp.word == word)
                    .ok_or_else(|| format!("no composition at {word:?}"))?;
                let nf = env.normal_form(&comp.value).map_err(|e| e.to_string())?;
                ensure(nf.is_zero(), || format!("{word:?}: residual {nf:?}"))?;
                count += 1;
            }
        }
    }
    Ok(count)
}

fn rb_compositions() -> Check {
    let mut notes = Vec::new();
    for name in ["sl2.json", "heisenberg.json", "abelian1.json"] {
        let (p, _) = bundled(name);
        for w in [Weight(q(0)), Weight(q(1))] {
            let lambda = w.0.clone();
            let n = triples_for(&p, w)?;
            ensure(n > 0, || format!("{name}: no triples"))?;
            notes.push(format!("{name} λ={lambda}: {n}"));
        }
    }
    Ok(format!("triples {}", notes.join(", ")))
}

fn pbw() -> Check {
    let bounds = RlsEnumerationBounds::new(3, 2);
    let mut notes = Vec::new();
    for (name, weights) in [("sl2.json", vec![q(0), q(1)]), ("abelian1.json", vec![q(0), q(1)])] {
        let (p, _) = bundled(name);
        for lambda in weights {
            let report = pbw_compare(&p, &Weight(lambda.clone()), &bounds).map_err(|e| e.to_string())?;
            ensure(report.equal, || format!("{name} λ={lambda}: first difference {:?}", report.first_difference()))?;
            ensure(report.rows.iter().all(|r| r.rb == r.ra), || format!("{name}: graded counts differ"))?;
            let total: usize = report.rows.iter().map(|r| r.rb).sum();
            notes.push(format!("{name} λ={lambda}: {total} words"));
        }
    }
    Ok(notes.join(", "))
}

fn random_poly(rng: &mut ChaCha8Rng, words: &[RlsWord], max_terms: usize) -> LiePoly {
    let mut f = LiePoly::zero();
    let terms = rng.gen_range(1..=max_terms);
    for _ in 0..terms {
        let w = words[rng.gen_range(0..words.len())].clone();
        let c = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
        f.add_term(w, q(c));
    }
    f
}

fn confluence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let bounds = RlsEnumerationBounds::new(3, 1);
    let mut notes = Vec::new();
    for (name, count) in [("sl2.json", 120), ("heisenberg.json", 80)] {
        let (p, w) = bundled(name);
        let env = RbEnvelope::new(p.clone(), w).map_err(|e| e.to_string())?;
        let words = enumerate_rls_words(p.alphabet().len(), &bounds);
        let inputs: Vec<LiePoly> = (0..count).map(|_| random_poly(&mut rng, &words, 2)).collect();
        let report = brute_force_confluence(env.system(), &inputs, 100_000).map_err(|e| e.to_string())?;
        ensure(report.confluent, || format!("{name}: {:?}", report.witness))?;
        ensure(report.agrees_with_normal_form, || format!("{name}: terminal differs from normal form"))?;
        notes.push(format!("{name}: {} inputs, {} vertices", report.inputs_checked, report.vertices));
    }
    let xy = LiePoly::generator(0).bracket(&LiePoly::generator(1));
    let bad = RewriteSystem::new([
        xy.clone() - LiePoly::generator(0),
        xy.clone() - LiePoly::generator(1),
    ])
    .unwrap();
    let report = brute_force_confluence(&bad, &[xy], 1000).map_err(|e| e.to_string())?;
    ensure(!report.confluent, || "two-rule system reported confluent".into())?;
    notes.push("two-rule system detected".into());
    Ok(notes.join("; "))
}

fn cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_rblie"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok(out.stdout)
}

fn determinism() -> Check {
    let (p, w) = bundled("sl2.json");
    let env = RbEnvelope::new(p.clone(), w).map_err(|e| e.to_string())?;
    let words = enumerate_rls_words(3, &RlsEnumerationBounds::new(3, 2));
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..500 {
        let f = random_poly(&mut rng, &words, 4);
        let nf = env.normal_form(&f).map_err(|e| e.to_string())?;
        let again = env.normal_form(&nf).map_err(|e| e.to_string())?;
        ensure(nf == again, || format!("not idempotent on {f:?}"))?;
    }
    let sl2 = common::data_path("sl2.json");
    let sl2 = sl2.to_str().unwrap();
    let invocations: Vec<Vec<&str>> = vec![
        vec!["lswords", "--alphabet", "x,y", "--max-deg", "6"],
        vec!["--format", "json", "rlswords", "--alphabet", "x,y", "--max-deg", "3", "--max-rdeg", "2", "--rals"],
        vec!["nf", "--algebra", sl2, "--term", "[R([R(e),f]),R(h)] - 1/2*R(R(f))"],
        vec!["--format", "json", "pbw", "--algebra", sl2, "--max-deg", "3", "--max-rdeg", "2"],
        vec!["gsb-check", "--algebra", sl2, "--max-deg", "2", "--max-rdeg", "3"],
        vec!["--format", "json", "rb-verify", "--algebra", sl2, "--max-deg", "1", "--max-rdeg", "2"],
    ];
    for args in &invocations {
        let first = cli(args)?;
        ensure(!first.is_empty(), || format!("no output for {args:?}"))?;
        for _ in 0..2 {
            ensure(cli(args)? == first, || format!("output of {args:?} changed between runs"))?;
        }
    }
    Ok(format!("500 inputs idempotent; {} commands byte-identical over 3 runs", invocations.len()))
}

fn main() {
    type Criterion = (u32, &'static str, u64, fn() -> Check);
    let criteria: [Criterion; 10] = [
        (1, "Witt counts", 1, witt_counts),
        (2, "bracket vs associative expansion", 30, bracket_oracle),
        (3, "special bracketing contract", 60, special_bracketing_contract),
        (4, "GSB positive/negative", 10, gsb_positive_negative),
        (5, "RALie basis", 10, ralie_basis),
        (6, "Rota-Baxter identity", 300, rb_identity),
        (7, "RB composition triviality", 300, rb_compositions),
        (8, "PBW at desk scale", 300, pbw),
        (9, "confluence brute force", 120, confluence),
        (10, "determinism and idempotence", 60, determinism),
    ];
    let mut failures = 0;
    for (n, name, limit, run) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run));
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(limit);
        let (ok, detail) = match result {
            Ok(Ok(d)) if elapsed <= limit => (true, d),
            Ok(Ok(d)) => (false, format!("too slow, {d}")),
            Ok(Err(e)) => (false, e),
            Err(_) => (false, "panicked".to_string()),
        };
        if !ok {
            failures += 1;
        }
        println!(
            "criterion {n:>2} {} [{:.2}s of {}s] {name}: {detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
