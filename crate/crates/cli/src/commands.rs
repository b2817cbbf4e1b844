use std::sync::Arc;

use formal_pbw::envelope::normal_form;
use formal_pbw::freelie::{extend_to_morphism, lyndon_words, FreeLieAlgebra};
use formal_pbw::graded::sorted_sequences;
use formal_pbw::lie::{LiePresentation, LinearMap, Violation};
use formal_pbw::pbw::{tower_consistency_check, Failure, PbwContext};
use formal_pbw::scalar::to_fraction_string;
use formal_pbw::{BasisElement, GradedSpace, LinComb, TensorElement, Vector, Word};
use serde_json::{json, Value};

use crate::config::Algebra;
use crate::expr::{self, as_vector, BracketMode};

/// Why a command did not succeed; maps onto the exit status.
#[derive(Debug)]
pub enum CliError {
    /// A check or axiom failed (exit 1). The report has already been printed.
    Failed,
    /// Bad input (exit 2).
    Input(String),
}

impl From<formal_pbw::Error> for CliError {
    fn from(e: formal_pbw::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<String> for CliError {
    fn from(e: String) -> Self {
        CliError::Input(e)
    }
}

pub type CmdResult = Result<(), CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CheckKind {
    Splitting,
    Continuity,
    Tower,
    Bijection,
}

pub struct Output {
    pub json: bool,
}

impl Output {
    fn emit(&self, text: impl FnOnce() -> String, value: impl FnOnce() -> Value) {
        if self.json {
            println!(
                "{}",
                serde_json::to_string_pretty(&value()).expect("json values serialize")
            );
        } else {
            println!("{}", text());
        }
    }
}

fn terms_json<K: Ord + Clone>(terms: &LinComb<K>, letters: impl Fn(&K) -> Vec<usize>) -> Value {
    Value::Array(
        terms
            .iter()
            .map(|(k, c)| {
                let monomial: Vec<usize> = letters(k).into_iter().map(|i| i + 1).collect();
                json!({ "monomial": monomial, "coeff": to_fraction_string(c) })
            })
            .collect(),
    )
}

fn word_letters(w: &Word) -> Vec<usize> {
    w.letters().to_vec()
}

fn describe(v: &Violation, space: &GradedSpace) -> String {
    let n = |i: &usize| space.name(*i);
    match v {
        Violation::Antisymmetry { i } => {
            format!("antisymmetry: [{0}, {0}] must vanish for even {0}", n(i))
        }
        Violation::Degree { i, j, found } => {
            format!(
                "degree additivity: [{}, {}] has a component along {}",
                n(i),
                n(j),
                n(found)
            )
        }
        Violation::Jacobi { i, j, l } => format!(
            "Jacobi identity fails on triple ({}, {}, {})",
            n(i),
            n(j),
            n(l)
        ),
        other => other.to_string(),
    }
}

/// Ensures the presentation satisfies the axioms, printing the violations
/// otherwise.
pub fn require_valid(a: &Algebra) -> CmdResult {
    let report = a.presentation.validate();
    if report.is_valid() {
        return Ok(());
    }
    for v in &report.violations {
        eprintln!("{}: {}", a.name, describe(v, a.presentation.space()));
    }
    Err(CliError::Failed)
}

pub fn validate(a: &Algebra, out: &Output) -> CmdResult {
    let p = &a.presentation;
    let report = p.validate();
    let violations: Vec<String> = report
        .violations
        .iter()
        .map(|v| describe(v, p.space()))
        .collect();
    let lcs = report.filtration.as_ref().map(|f| f.dims());
    let k = report.filtration.as_ref().map(|f| f.nilpotency_index);
    out.emit(
        || {
            let mut lines = Vec::new();
            match (&lcs, k) {
                (Some(d), Some(k)) => {
                    let d: Vec<String> = d.iter().map(ToString::to_string).collect();
                    lines.push(format!(
                        "dim {}, LCS dims [{}], k={k}",
                        p.dim(),
                        d.join(",")
                    ));
                }
                _ => lines.push(format!("dim {}", p.dim())),
            }
            lines.extend(violations.iter().map(|v| format!("violation: {v}")));
            lines.join("\n")
        },
        || {
            json!({
                "algebra": a.name,
                "dim": p.dim(),
                "lcs_dims": lcs,
                "nilpotency_index": k,
                "valid": report.is_valid(),
                "violations": violations,
            })
        },
    );
    if report.is_valid() {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

fn parse_tensor(a: &Algebra, src: &str, truncation: usize) -> Result<TensorElement, CliError> {
    let e = expr::parse(src).map_err(|e| format!("expression \"{src}\": {e}"))?;
    let p = &a.presentation;
    Ok(expr::evaluate(
        &e,
        p.space(),
        truncation,
        BracketMode::Algebra(p),
    )?)
}

fn tensor_json(t: &TensorElement) -> Value {
    terms_json(t.terms(), word_letters)
}

pub fn normal_form_cmd(a: &Algebra, src: &str, truncation: usize, out: &Output) -> CmdResult {
    require_valid(a)?;
    let t = parse_tensor(a, src, truncation)?;
    let u = normal_form(&t, &a.presentation)?;
    out.emit(
        || u.render(),
        || {
            json!({
                "algebra": a.name,
                "truncation": truncation,
                "certified_order": u.certified(),
                "terms": terms_json(u.terms(), |m| word_letters(m.word())),
            })
        },
    );
    Ok(())
}

pub fn symmetrize(a: &Algebra, src: &str, truncation: usize, out: &Output) -> CmdResult {
    let t = parse_tensor(a, src, truncation)?;
    let mut total = TensorElement::zero(a.presentation.space().clone(), truncation);
    for n in 0..=truncation {
        let part = TensorElement::from_terms(
            a.presentation.space().clone(),
            truncation,
            t.homogeneous_part(n),
        )?;
        total = total.checked_add(&part.symmetrize(n)?)?;
    }
    let total = total.with_certified(t.certified());
    out.emit(
        || total.render(),
        || {
            json!({
                "algebra": a.name,
                "truncation": truncation,
                "certified_order": total.certified(),
                "terms": tensor_json(&total),
            })
        },
    );
    Ok(())
}

pub fn decompose(a: &Algebra, src: &str, truncation: usize, out: &Output) -> CmdResult {
    require_valid(a)?;
    let t = parse_tensor(a, src, truncation)?;
    let ctx = PbwContext::new(a.presentation.clone(), truncation)?;
    let split = ctx.project_sigma(&t)?;
    out.emit(
        || {
            format!(
                "sigma: {}\nj: {}\ncertified order: {}",
                split.sigma_part, split.j_part, split.certified
            )
        },
        || {
            json!({
                "algebra": a.name,
                "truncation": truncation,
                "certified_order": split.certified,
                "sigma": tensor_json(&split.sigma_part),
                "j": tensor_json(&split.j_part),
            })
        },
    );
    Ok(())
}

fn failures_json(failures: &[Failure]) -> Value {
    Value::Array(
        failures
            .iter()
            .map(|f| json!({ "subject": f.subject, "reason": f.reason }))
            .collect(),
    )
}

fn failure_lines(failures: &[Failure]) -> String {
    failures.iter().map(|f| format!("\n  FAIL {f}")).collect()
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn default_levels(k: usize) -> Vec<usize> {
    if k <= 1 {
        vec![1, 2]
    } else {
        (2..=k + 1).collect()
    }
}

pub fn check(
    a: &Algebra,
    which: CheckKind,
    truncation: usize,
    levels: &[usize],
    out: &Output,
) -> CmdResult {
    require_valid(a)?;
    let passed = match which {
        CheckKind::Splitting => {
            let r = PbwContext::new(a.presentation.clone(), truncation)?.splitting_check();
            out.emit(
                || {
                    format!(
                        "splitting on {}, N={}: {} ({} words, invariant rank {}/{} at order <= {}){}",
                        a.name,
                        r.truncation,
                        verdict(r.passed()),
                        r.words_checked,
                        r.rank,
                        r.expected_rank,
                        r.certified_order,
                        failure_lines(&r.failures)
                    )
                },
                || {
                    json!({
                        "algebra": a.name, "check": "splitting", "truncation": r.truncation,
                        "certified_order": r.certified_order, "passed": r.passed(),
                        "words_checked": r.words_checked, "rank": r.rank, "expected_rank": r.expected_rank,
                        "failures": failures_json(&r.failures),
                    })
                },
            );
            r.passed()
        }
        CheckKind::Continuity => {
            let ctx = PbwContext::new(a.presentation.clone(), truncation)?;
            let table = ctx.continuity_table();
            let passed = table.iter().all(|r| r.passed());
            out.emit(
                || {
                    let mut s = format!(
                        "continuity on {}, N={}, k={}: {} ({} cases)",
                        a.name,
                        truncation,
                        ctx.nilpotency_index(),
                        verdict(passed),
                        table.len()
                    );
                    for r in &table {
                        s.push_str(&format!(
                            "\n  n={} r={} order {}: {} ({} words){}",
                            r.n,
                            r.r,
                            r.order,
                            verdict(r.passed()),
                            r.words_checked,
                            failure_lines(&r.failures)
                        ));
                    }
                    s
                },
                || {
                    let cases: Vec<Value> = table
                        .iter()
                        .map(|r| {
                            json!({
                                "n": r.n, "r": r.r, "order": r.order, "passed": r.passed(),
                                "words_checked": r.words_checked, "failures": failures_json(&r.failures),
                            })
                        })
                        .collect();
                    json!({
                        "algebra": a.name, "check": "continuity", "truncation": truncation,
                        "nilpotency_index": ctx.nilpotency_index(), "passed": passed, "cases": cases,
                    })
                },
            );
            passed
        }
        CheckKind::Tower => {
            let levels = if levels.is_empty() {
                default_levels(a.presentation.nilpotency_index().unwrap_or(1))
            } else {
                levels.to_vec()
            };
            if levels.contains(&0) {
                return Err(CliError::Input("tower levels must be at least 1".into()));
            }
            let r = tower_consistency_check(&a.presentation, &levels, truncation)?;
            let stages: Vec<(usize, usize)> = r
                .stages
                .iter()
                .map(|s| (s.level, s.presentation.dim()))
                .collect();
            out.emit(
                || {
                    let dims: Vec<String> = stages.iter().map(|(l, d)| format!("g/F_{l}: dim {d}")).collect();
                    format!(
                        "tower on {}, N={}: {} ({}; {} words, {} monomials){}",
                        a.name,
                        r.truncation,
                        verdict(r.passed()),
                        dims.join(", "),
                        r.words_checked,
                        r.monomials_checked,
                        failure_lines(&r.failures)
                    )
                },
                || {
                    let stages: Vec<Value> = stages.iter().map(|(l, d)| json!({ "level": l, "dim": d })).collect();
                    json!({
                        "algebra": a.name, "check": "tower", "truncation": r.truncation, "passed": r.passed(),
                        "stages": stages, "words_checked": r.words_checked,
                        "monomials_checked": r.monomials_checked, "failures": failures_json(&r.failures),
                    })
                },
            );
            r.passed()
        }
        CheckKind::Bijection => {
            let r = PbwContext::new(a.presentation.clone(), truncation)?.bijection_check();
            out.emit(
                || {
                    format!(
                        "bijection on {}, N={}: {} (block sizes {:?}, {} monomials){}",
                        a.name,
                        r.truncation,
                        verdict(r.passed()),
                        r.block_sizes,
                        r.monomials_checked,
                        failure_lines(&r.failures)
                    )
                },
                || {
                    json!({
                        "algebra": a.name, "check": "bijection", "truncation": r.truncation, "passed": r.passed(),
                        "block_sizes": r.block_sizes, "monomials_checked": r.monomials_checked,
                        "failures": failures_json(&r.failures),
                    })
                },
            );
            r.passed()
        }
    };
    if passed {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

fn list(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn power(m: usize, n: usize) -> usize {
    (0..n).fold(1usize, |acc, _| acc.saturating_mul(m))
}

pub fn dims_free(m: usize, truncation: usize, out: &Output) -> CmdResult {
    let tensor: Vec<usize> = (0..=truncation).map(|n| power(m, n)).collect();
    let symmetric: Vec<usize> = (0..=truncation)
        .map(|n| sorted_sequences(m, n, &|_| false).len())
        .collect();
    let lyndon: Vec<usize> = lyndon_words(m, truncation).iter().map(Vec::len).collect();
    // multisets of Lyndon words by total length: coefficients of ∏_l (1 - t^l)^{-L_l}
    let mut series = vec![0usize; truncation + 1];
    series[0] = 1;
    for (l, &count) in lyndon.iter().enumerate().map(|(i, c)| (i + 1, c)) {
        for _ in 0..count {
            for n in l..=truncation {
                series[n] += series[n - l];
            }
        }
    }
    let pbw: Vec<usize> = series
        .iter()
        .scan(0usize, |acc, &c| {
            *acc += c;
            Some(*acc)
        })
        .collect();
    let expected: Vec<usize> = tensor
        .iter()
        .scan(0usize, |acc, &c| {
            *acc = acc.saturating_add(c);
            Some(*acc)
        })
        .collect();
    let holds = pbw == expected;
    out.emit(
        || {
            format!(
                "free:{m}, N={truncation}\nT dims {}\nS monomial counts {}\nLyndon counts {}\nPBW-over-Lyndon cumulative counts {}\nsum of T dims {}\nidentity {}",
                list(&tensor),
                list(&symmetric),
                list(&lyndon),
                list(&pbw),
                list(&expected),
                if holds { "holds" } else { "FAILS" }
            )
        },
        || {
            json!({
                "algebra": format!("free:{m}"), "truncation": truncation, "tensor": tensor,
                "symmetric": symmetric, "lyndon": lyndon, "pbw_cumulative": pbw,
                "tensor_cumulative": expected, "identity_holds": holds,
            })
        },
    );
    if holds {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

pub fn dims(a: &Algebra, truncation: usize, out: &Output) -> CmdResult {
    let p = &a.presentation;
    let space = p.space();
    let m = p.dim();
    let odd = |i: usize| space.is_odd(i);
    let tensor: Vec<usize> = (0..=truncation).map(|n| power(m, n)).collect();
    let symmetric: Vec<usize> = (0..=truncation)
        .map(|n| sorted_sequences(m, n, &odd).len())
        .collect();
    let lyndon: Vec<usize> = lyndon_words(m, truncation).iter().map(Vec::len).collect();
    let by_weight = match p.lower_central_series() {
        Ok(f) => {
            let mut counts = vec![0usize; truncation + 1];
            for n in 0..=truncation {
                for w in sorted_sequences(m, n, &odd) {
                    let weight = f.word_weight(&w);
                    if weight <= truncation {
                        counts[weight] += 1;
                    }
                }
            }
            Some(counts)
        }
        Err(_) => None,
    };
    out.emit(
        || {
            let mut s = format!(
                "{}, N={truncation}\nT dims {}\nS monomial counts {}\nLyndon counts {}",
                a.name,
                list(&tensor),
                list(&symmetric),
                list(&lyndon)
            );
            if let Some(c) = &by_weight {
                s.push_str(&format!("\nPBW monomial counts by weight {}", list(c)));
            }
            s
        },
        || {
            json!({
                "algebra": a.name, "truncation": truncation, "tensor": tensor, "symmetric": symmetric,
                "lyndon": lyndon, "pbw_by_weight": by_weight,
            })
        },
    );
    Ok(())
}

/// Splits `a=x, b=[x,y]` at top-level commas.
fn split_assignments(src: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in src.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&src[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&src[start..]);
    parts
}

fn homogeneous_degree(v: &Vector, space: &GradedSpace) -> Result<i64, String> {
    let mut degrees = v.keys().map(|&i| space.degree(i));
    let first = degrees.next().unwrap_or(0);
    if degrees.all(|d| d == first) {
        Ok(first)
    } else {
        Err("generator images must be homogeneous".into())
    }
}

pub fn extend(a: &Algebra, map: &str, src: &str, truncation: usize, out: &Output) -> CmdResult {
    require_valid(a)?;
    let target = &a.presentation;
    let mut generators = Vec::new();
    let mut images = Vec::new();
    for part in split_assignments(map) {
        let (name, value) = part.split_once('=').ok_or_else(|| {
            format!(
                "map entry \"{}\" is not of the form name=expression",
                part.trim()
            )
        })?;
        let image =
            expr::parse(value).map_err(|e| format!("map entry \"{}\": {e}", part.trim()))?;
        let image = expr::evaluate(
            &image,
            target.space(),
            image.order_bound().max(1),
            BracketMode::Algebra(target),
        )
        .and_then(|t| as_vector(&t))
        .map_err(|e| format!("map entry \"{}\": {e}", part.trim()))?;
        let degree = homogeneous_degree(&image, target.space())?;
        generators.push(BasisElement::new(name.trim(), degree));
        images.push(image);
    }
    let source = Arc::new(GradedSpace::new(generators)?);
    let psi = LinearMap {
        target: target.space().clone(),
        images,
    };
    let f = extend_to_morphism(&source, &psi, target)?;
    let free = FreeLieAlgebra::new(source.clone(), truncation)?;
    let e = expr::parse(src).map_err(|e| format!("expression \"{src}\": {e}"))?;
    let t = expr::evaluate(&e, &source, truncation, BracketMode::Commutator)?;
    let element = free.from_tensor(&t)?;
    let image = f.evaluate(&element)?;
    let dynkin = f.evaluate_dynkin(&t)?;
    let rendered = render_vector(&image, target)?;
    out.emit(
        || {
            let mut s = rendered.clone();
            if image != dynkin {
                s.push_str(&format!(
                    "\nFAIL: Dynkin evaluation gives {}",
                    render_vector(&dynkin, target).unwrap_or_default()
                ));
            }
            s
        },
        || {
            json!({
                "algebra": a.name,
                "truncation": truncation,
                "lie_element": free.render(&element),
                "terms": terms_json(&image, |&i| vec![i]),
                "dynkin_agrees": image == dynkin,
            })
        },
    );
    if image == dynkin {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

fn render_vector(v: &Vector, p: &LiePresentation) -> Result<String, CliError> {
    Ok(TensorElement::from_terms(p.space().clone(), 1, expr::from_vector(v))?.render())
}
