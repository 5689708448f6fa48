use std::time::Instant;

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::config::{coset_json, SuiteConfig};
use super::sample::{random_root, random_sample, seed_for, shrink, Sample};
use crate::error::{Error, Result};
use crate::fock::{integrality_check, reduce_mod_p, FockElement, Verdict};
use crate::lattice::{Lattice, LatticeVector};
use crate::oracle::{self, lemma_divisibility, random_symmetric, Window};
use crate::rational::{fmt_q, q};
use crate::symfunc::{jacobi_trudi, schur_by_vertex, transition_matrix, Basis, Partition};
use crate::vertexops::{divided_power, divided_power_sum, exp_mode, garland_apply, garland_poly, mode_window, support_top, VertexWord};

/// Suite names with a one-line statement of what each certifies.
pub const SUITES: &[(&str, &str)] = &[
    ("schur_equivalence", "Schur functions built by Bernstein vertex operators equal their Jacobi-Trudi determinants"),
    ("unimodularity", "the h-to-s transition matrix in each degree has determinant ±1"),
    ("vandermonde_divisibility", "diagonal coefficients of ∏(z_i - z_j)^k G are divisible by r! for symmetric G"),
    ("divided_power_integrality", "divided powers of lattice vertex operator modes preserve the integral form"),
    ("general_divided_power_integrality", "divided powers of general vertex operator modes with nontrivial lattice part preserve the integral form"),
    ("divided_power_sum_integrality", "divided powers of sums of commuting lattice modes preserve the integral form"),
    ("garland_integrality", "Garland operators have integral h-expansions and preserve the integral form"),
    ("module_divided_power_integrality", "lattice divided powers preserve the integral form of a module V_{L+γ}"),
    ("module_garland_integrality", "Garland operators preserve the integral form of a module V_{L+γ}"),
    ("product_formula", "iterated lattice vertex operators match their closed product formula on windows"),
    ("field_identities", "contraction, Wick commutator and annihilator identities hold on windows"),
    ("automorphism", "exponentials of nilpotent modes are mutually inverse and match the closed value on e^{-α}"),
    ("mod_p_reduction", "every integrality-suite output reduces modulo each configured prime"),
];

#[derive(Debug, Clone, PartialEq)]
pub struct CaseReport {
    pub suite: String,
    pub case_id: String,
    pub params: Value,
    pub verdict: bool,
    pub witness: Option<Value>,
    pub millis: Option<u64>,
}

impl CaseReport {
    fn new(suite: &str, case_id: String, params: Value, witness: Option<Value>) -> Self {
        CaseReport { suite: suite.into(), case_id, params, verdict: witness.is_none(), witness, millis: None }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "case_id": self.case_id,
            "params": self.params,
            "verdict": self.verdict,
            "witness": self.witness,
            "millis": self.millis,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteSummary {
    pub suite: String,
    pub statement: String,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<CaseReport>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub summaries: Vec<SuiteSummary>,
    pub cases: Vec<CaseReport>,
    pub millis: Option<u64>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.summaries.iter().all(|s| s.failed == 0 && s.passed > 0)
    }

    pub fn summary(&self, suite: &str) -> Option<&SuiteSummary> {
        self.summaries.iter().find(|s| s.suite == suite)
    }

    pub fn cases_of<'a>(&'a self, suite: &'a str) -> impl Iterator<Item = &'a CaseReport> + 'a {
        self.cases.iter().filter(move |c| c.suite == suite)
    }

    pub fn to_json(&self) -> Value {
        let summaries: Vec<Value> = self
            .summaries
            .iter()
            .map(|s| {
                json!({
                    "suite": s.suite,
                    "statement": s.statement,
                    "passed": s.passed,
                    "failed": s.failed,
                    "first_failure": s.first_failure.as_ref().map(CaseReport::to_json),
                })
            })
            .collect();
        json!({
            "schema_version": "1",
            "kind": "suite_report",
            "config": self.config.to_json(),
            "passed": self.passed(),
            "suites": summaries,
            "cases": self.cases.iter().map(CaseReport::to_json).collect::<Vec<_>>(),
            "millis": self.millis,
        })
    }
}

#[derive(Debug, Clone)]
enum Job {
    Schur(Partition),
    Unimodular(u32),
    Divisibility { r: usize, k: u32, index: usize },
    DivisibilityValue { r: usize, k: u32, n: i64, expected: i64 },
    Divided { suite: &'static str, lattice: usize, index: usize },
    General { lattice: usize, index: usize },
    Sum { lattice: usize, index: usize },
    GarlandPoly { k: u32, n: u32 },
    Garland { suite: &'static str, lattice: usize, index: usize },
    Product(usize),
    Identity(usize),
    Automorphism(usize),
    ExpValue(i64),
}

struct Ctx<'a> {
    config: &'a SuiteConfig,
    /// Plain lattices first, then the lattices of the configured modules.
    spaces: Vec<(Lattice, LatticeVector)>,
    plain: usize,
}

fn gram_json(l: &Lattice) -> Value {
    json!(l.gram())
}

fn error_witness(e: &Error) -> Option<Value> {
    Some(json!({ "error": e.to_string() }))
}

fn verdict_witness(v: &Verdict) -> Option<Value> {
    match v {
        Verdict::Integral => None,
        Verdict::NotIntegral { key, coeff } => Some(json!({ "key": key.to_string(), "coeff": fmt_q(coeff) })),
    }
}

fn pad(i: usize) -> String {
    format!("{i:03}")
}

/// The outcome of one integrality case: its report and the outputs it produced.
struct Outcome {
    report: CaseReport,
    outputs: Vec<FockElement>,
}

/// Applies `op` at every `(r, n)` and checks integrality; on failure the
/// sample is shrunk against the failing `(r, n)`.
fn integrality_case(
    suite: &str,
    case_id: String,
    params: Value,
    sample: Sample,
    points: &dyn Fn(&FockElement) -> Vec<(usize, i64)>,
    op: &(dyn Fn(usize, i64, &FockElement) -> Result<FockElement> + Sync),
) -> Outcome {
    let elem = sample.element();
    let mut outputs = Vec::new();
    for (r, n) in points(&elem) {
        let out = match op(r, n, &elem) {
            Ok(o) => o,
            Err(e) => {
                let mut w = error_witness(&e).unwrap();
                w["r"] = json!(r);
                w["n"] = json!(n);
                return Outcome { report: CaseReport::new(suite, case_id, params, Some(w)), outputs };
            }
        };
        if let Some(bad) = verdict_witness(&integrality_check(&out)) {
            let fails = |s: &Sample| match op(r, n, &s.element()) {
                Ok(o) => verdict_witness(&integrality_check(&o)),
                Err(e) => error_witness(&e),
            };
            outputs.push(out);
            let (small, w) = shrink(sample.clone(), bad, fails);
            let witness = json!({ "r": r, "n": n, "element": small.to_json(), "failure": w });
            return Outcome { report: CaseReport::new(suite, case_id, params, Some(witness)), outputs };
        }
        outputs.push(out);
    }
    let mut report = CaseReport::new(suite, case_id, params, None);
    report.params["outputs"] = json!(outputs.len());
    Outcome { report, outputs }
}

fn mod_p_case(config: &SuiteConfig, source: &CaseReport, outputs: &[FockElement]) -> CaseReport {
    let id = format!("{}/{}", source.suite, source.case_id);
    let params = json!({ "primes": config.primes, "outputs": outputs.len(), "source_verdict": source.verdict });
    for out in outputs {
        for &p in &config.primes {
            if let Err(e) = reduce_mod_p(out, p) {
                return CaseReport::new("mod_p_reduction", id, params, Some(json!({ "p": p, "error": e.to_string() })));
            }
        }
    }
    CaseReport::new("mod_p_reduction", id, params, None)
}

fn windowed(lattice: &Lattice, word: &VertexWord, rs: std::ops::RangeInclusive<usize>, width: usize, elem: &FockElement) -> Vec<(usize, i64)> {
    rs.flat_map(|r| mode_window(lattice, word, r, elem, width).into_iter().map(move |n| (r, n))).collect()
}

fn case_rng(config: &SuiteConfig, tag: u64, lattice: usize, index: usize) -> (u64, ChaCha8Rng) {
    let seed = seed_for(config.seed, &[tag, lattice as u64, index as u64]);
    (seed, ChaCha8Rng::seed_from_u64(seed ^ 0x5eed))
}

fn divided_job(ctx: &Ctx, suite: &str, li: usize, index: usize) -> Vec<CaseReport> {
    let (lattice, coset) = &ctx.spaces[li];
    let (seed, mut rng) = case_rng(ctx.config, 1, li, index);
    let sample = match random_sample(lattice, coset, ctx.config.max_degree, seed) {
        Ok(s) => s,
        Err(e) => return vec![CaseReport::new(suite, format!("{li}/{}", pad(index)), json!({}), error_witness(&e))],
    };
    let alpha = random_root(&mut rng, lattice.rank());
    let word = VertexWord::charge(&alpha);
    let params = json!({
        "gram": gram_json(lattice), "coset": coset_json(coset), "seed": seed,
        "word": word.to_json(), "max_r": ctx.config.max_r, "element": sample.to_json(),
    });
    let width = ctx.config.mode_window;
    let max_r = ctx.config.max_r;
    let points = |e: &FockElement| windowed(lattice, &word, 1..=max_r, width, e);
    let op = |r: usize, n: i64, e: &FockElement| divided_power(lattice, &word, n, r, e);
    let o = integrality_case(suite, format!("{li}/{}", pad(index)), params, sample, &points, &op);
    vec![mod_p_case(ctx.config, &o.report, &o.outputs), o.report]
}

fn general_words(lattice: &Lattice, alpha: &[i64]) -> Vec<VertexWord> {
    let mut words = vec![
        VertexWord::new(vec![(alpha.to_vec(), 1)], alpha.to_vec()).expect("valid word"),
        VertexWord::new(vec![(alpha.to_vec(), 2)], alpha.to_vec()).expect("valid word"),
    ];
    if lattice.rank() >= 2 {
        let e = |i: usize| (0..lattice.rank()).map(|j| i64::from(j == i)).collect::<Vec<i64>>();
        words.push(VertexWord::new(vec![(e(0), 1), (e(1), 1)], e(0)).expect("valid word"));
    }
    words
}

fn general_job(ctx: &Ctx, li: usize, index: usize) -> Vec<CaseReport> {
    let suite = "general_divided_power_integrality";
    let (lattice, coset) = &ctx.spaces[li];
    let (seed, mut rng) = case_rng(ctx.config, 2, li, index);
    let sample = match random_sample(lattice, coset, ctx.config.max_degree, seed) {
        Ok(s) => s,
        Err(e) => return vec![CaseReport::new(suite, format!("{li}/{}", pad(index)), json!({}), error_witness(&e))],
    };
    let alpha = random_root(&mut rng, lattice.rank());
    let words = general_words(lattice, &alpha);
    let wi = rng.gen_range(0..words.len());
    let word = &words[wi];
    let params = json!({
        "gram": gram_json(lattice), "coset": coset_json(coset), "seed": seed,
        "word": word.to_json(), "max_r": ctx.config.general_max_r, "element": sample.to_json(),
    });
    let width = ctx.config.mode_window;
    let max_r = ctx.config.general_max_r;
    let points = |e: &FockElement| windowed(lattice, word, 1..=max_r, width, e);
    let op = |r: usize, n: i64, e: &FockElement| divided_power(lattice, word, n, r, e);
    let o = integrality_case(suite, format!("{li}/{}", pad(index)), params, sample, &points, &op);
    vec![mod_p_case(ctx.config, &o.report, &o.outputs), o.report]
}

/// Two charges with nonnegative pairing.
fn commuting_pair(lattice: &Lattice) -> (Vec<i64>, Vec<i64>) {
    if lattice.rank() == 1 {
        return (vec![1], vec![2]);
    }
    let d = lattice.rank();
    let e = |i: usize| (0..d).map(|j| i64::from(j == i)).collect::<Vec<i64>>();
    let (a, b) = (e(0), e(1));
    if lattice.pairing_int(&a, &b) >= 0 {
        (a, b)
    } else {
        let s: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        (a, s)
    }
}

fn sum_job(ctx: &Ctx, li: usize, index: usize) -> Vec<CaseReport> {
    let suite = "divided_power_sum_integrality";
    let (lattice, coset) = &ctx.spaces[li];
    let (seed, _) = case_rng(ctx.config, 3, li, index);
    let sample = match random_sample(lattice, coset, ctx.config.max_degree, seed) {
        Ok(s) => s,
        Err(e) => return vec![CaseReport::new(suite, format!("{li}/{}", pad(index)), json!({}), error_witness(&e))],
    };
    let (a, b) = commuting_pair(lattice);
    let words = vec![VertexWord::charge(&a), VertexWord::charge(&b)];
    let params = json!({
        "gram": gram_json(lattice), "coset": coset_json(coset), "seed": seed,
        "words": [words[0].to_json(), words[1].to_json()], "max_r": ctx.config.max_r, "element": sample.to_json(),
    });
    let width = ctx.config.mode_window as i64;
    let max_r = ctx.config.max_r;
    let points = |e: &FockElement| {
        let mut out = Vec::new();
        for r in 1..=max_r {
            let top = words.iter().filter_map(|w| support_top(lattice, w, r, e)).max();
            if let Some(top) = top {
                out.extend((0..width).map(|i| (r, top - i)));
            }
        }
        out
    };
    let op = |r: usize, n: i64, e: &FockElement| divided_power_sum(lattice, &words, n, r, e);
    let o = integrality_case(suite, format!("{li}/{}", pad(index)), params, sample, &points, &op);
    vec![mod_p_case(ctx.config, &o.report, &o.outputs), o.report]
}

fn garland_poly_job(k: u32, n: u32) -> CaseReport {
    let id = format!("poly/k={k}/n={n}");
    let params = json!({ "k": k, "n": n });
    match garland_poly(k, n) {
        Ok(f) => {
            let bad = f.terms().iter().find(|(_, c)| !c.is_integer());
            let w = bad.map(|(p, c)| json!({ "key": p.to_string(), "coeff": fmt_q(c) }));
            CaseReport::new("garland_integrality", id, params, w)
        }
        Err(e) => CaseReport::new("garland_integrality", id, params, error_witness(&e)),
    }
}

fn garland_job(ctx: &Ctx, suite: &str, li: usize, index: usize) -> Vec<CaseReport> {
    let (lattice, coset) = &ctx.spaces[li];
    let (seed, mut rng) = case_rng(ctx.config, 4, li, index);
    let sample = match random_sample(lattice, coset, ctx.config.max_degree, seed) {
        Ok(s) => s,
        Err(e) => return vec![CaseReport::new(suite, format!("{li}/{}", pad(index)), json!({}), error_witness(&e))],
    };
    let alpha = LatticeVector::from_ints(&random_root(&mut rng, lattice.rank()));
    let k = rng.gen_range(1..=4u32);
    let n = rng.gen_range(1..=(6 / k).max(1));
    let params = json!({
        "gram": gram_json(lattice), "coset": coset_json(coset), "seed": seed,
        "alpha": alpha.to_json(), "k": k, "n": n, "element": sample.to_json(),
    });
    let points = |_: &FockElement| vec![(k as usize, n as i64)];
    let op = |k: usize, n: i64, e: &FockElement| garland_apply(lattice, &alpha, k as u32, n as u32, e);
    let o = integrality_case(suite, format!("{li}/{}", pad(index)), params, sample, &points, &op);
    vec![mod_p_case(ctx.config, &o.report, &o.outputs), o.report]
}

fn schur_job(lambda: &Partition) -> CaseReport {
    let a = schur_by_vertex(lambda);
    let b = jacobi_trudi(lambda);
    let w = (!a.same_function(&b)).then(|| json!({ "vertex": a.to_json(), "jacobi_trudi": b.to_json() }));
    CaseReport::new("schur_equivalence", lambda.to_string(), json!({ "partition": lambda.parts() }), w)
}

fn unimodular_job(d: u32) -> CaseReport {
    let det = transition_matrix(d, Basis::H, Basis::S).determinant();
    let w = (det.abs() != q(1)).then(|| json!({ "determinant": fmt_q(&det) }));
    CaseReport::new("unimodularity", pad(d as usize), json!({ "degree": d, "from": "H", "to": "S" }), w)
}

fn divisibility_job(config: &SuiteConfig, r: usize, k: u32, index: usize) -> CaseReport {
    let seed = seed_for(config.seed, &[5, r as u64, k as u64, index as u64]);
    let spread = 2;
    let span = spread + k as i64 * (r as i64 - 1) + 1;
    let g = random_symmetric(r, 3, spread, seed, &Window::cube(r, -span, span));
    let id = format!("r={r}/k={k}/{}", pad(index));
    let params = json!({ "r": r, "k": k, "seed": seed, "terms": g.len() });
    for n in -1..=1 {
        match lemma_divisibility(&g, r, k, n) {
            Ok((_, true)) => {}
            Ok((c, false)) => {
                let w = json!({ "n": n, "coefficient": fmt_q(&c), "g": g.to_json() });
                return CaseReport::new("vandermonde_divisibility", id, params, Some(w));
            }
            Err(e) => return CaseReport::new("vandermonde_divisibility", id, params, error_witness(&e)),
        }
    }
    CaseReport::new("vandermonde_divisibility", id, params, None)
}

fn divisibility_value_job(r: usize, k: u32, n: i64, expected: i64) -> CaseReport {
    let span = k as i64 * (r as i64 - 1) + n.abs() + 1;
    let g = oracle::MultiLaurent::monomial(Window::cube(r, -span, span), vec![0; r], q(1));
    let id = format!("value/r={r}/k={k}/n={n}");
    let params = json!({ "g": "1", "r": r, "k": k, "n": n, "expected": expected });
    let w = match lemma_divisibility(&g, r, k, n) {
        Ok((c, ok)) if c == q(expected) && ok => None,
        Ok((c, ok)) => Some(json!({ "coefficient": fmt_q(&c), "divisible": ok })),
        Err(e) => error_witness(&e),
    };
    CaseReport::new("vandermonde_divisibility", id, params, w)
}

type ProductSpec = (Vec<Vec<i64>>, Vec<i64>, usize, Vec<Vec<i64>>, Vec<(i64, i64)>);

fn product_specs() -> Vec<ProductSpec> {
    let a1 = vec![vec![2]];
    let a2 = vec![vec![2, -1], vec![-1, 2]];
    let mut out = Vec::new();
    for r in 1..=2 {
        for betas in [vec![], vec![vec![1]], vec![vec![-1]], vec![vec![1], vec![-1]]] {
            out.push((a1.clone(), vec![1], r, betas, vec![(0, 1)]));
        }
        out.push((a1.clone(), vec![1], r, vec![], vec![(1, 2)]));
        for betas in [vec![], vec![vec![0, 1]], vec![vec![1, 1], vec![-1, 0]]] {
            out.push((a2.clone(), vec![1, 0], r, betas, vec![(0, 1), (0, 1)]));
        }
    }
    out
}

fn product_job(config: &SuiteConfig, i: usize) -> CaseReport {
    let (gram, alpha, r, betas, eta) = product_specs().swap_remove(i);
    let id = pad(i);
    let run = || -> Result<oracle::IdentityReport> {
        let lattice = Lattice::new(gram.clone())?;
        let alpha = LatticeVector::from_ints(&alpha);
        let betas: Vec<LatticeVector> = betas.iter().map(|b| LatticeVector::from_ints(b)).collect();
        let eta = LatticeVector(eta.iter().map(|&(a, b)| q(a) / q(b)).collect());
        let w = oracle::product_window(&lattice, &alpha, r, &betas, &eta, config.max_degree)?;
        oracle::product_formula_check(&lattice, &alpha, r, &betas, &eta, &w, config.max_degree)
    };
    identity_case("product_formula", id, run())
}

fn identity_case(suite: &str, id: String, rep: Result<oracle::IdentityReport>) -> CaseReport {
    match rep {
        Ok(rep) => {
            let params = json!({ "identity": rep.identity, "params": rep.params, "window": rep.window });
            CaseReport::new(suite, id, params, rep.witness)
        }
        Err(e) => CaseReport::new(suite, id, json!({}), error_witness(&e)),
    }
}

const IDENTITY_COUNT: usize = 16;

fn identity_job(config: &SuiteConfig, i: usize) -> CaseReport {
    let d = config.identity_degree;
    let v = LatticeVector::from_ints;
    let a1 = Lattice::a1();
    let a2 = Lattice::a2();
    let z4 = Lattice::new(vec![vec![2, 0], vec![0, 4]]).expect("even lattice");
    let wick = |m: u32, n: u32| oracle::wick_commutator_check(&a2, &v(&[1, 0]), &v(&[0, 1]), m, n, d);
    let samples = || -> Result<Vec<FockElement>> {
        let mut out = Vec::new();
        for ch in [v(&[0, 0]), v(&[0, 1]), v(&[-1, 0])] {
            for m in oracle::basis_monomials(2, 2) {
                out.push(FockElement::exp(&a2, &ch)?.mul_poly(&crate::fock::Poly::monomial(m, q(1))));
            }
        }
        Ok(out)
    };
    let alphas = vec![(v(&[1, 0]), 1), (v(&[0, 1]), 2)];
    let dd = d as i64;
    let rep = match i {
        0 => oracle::contraction_check(&a1, &v(&[1]), &v(&[1]), d),
        1 => oracle::contraction_check(&a1, &v(&[1]), &v(&[-1]), d),
        2 => oracle::contraction_check(&a2, &v(&[1, 0]), &v(&[0, 1]), d),
        3 => oracle::contraction_check(&z4, &v(&[1, 0]), &v(&[0, 1]), d),
        4 => wick(1, 1),
        5 => wick(1, 2),
        6 => wick(2, 1),
        7 => wick(2, 2),
        8 => oracle::wick_commutator_check(&z4, &v(&[1, 0]), &v(&[0, 1]), 2, 1, d),
        9 => oracle::wick_two_factor_check(&a2, &(v(&[1, 0]), 1), &(v(&[0, 1]), 2), &(v(&[1, 1]), 1), d),
        10 => oracle::annihilator_exponential_check(&a1, &[(v(&[1]), 1)], &[v(&[1])], d),
        11 => oracle::annihilator_exponential_check(&a1, &[(v(&[1]), 1), (v(&[1]), 2)], &[v(&[1]), v(&[-1])], d),
        12 => oracle::annihilator_exponential_check(&a2, &alphas, &[v(&[1, 1]), v(&[0, -1])], d),
        13 => samples().and_then(|s| oracle::annihilator_vertex_check(&a2, &alphas, &v(&[1, 0]), &s, -dd, -dd, 0)),
        14 => samples().and_then(|s| oracle::vertex_creator_check(&a2, &alphas, &v(&[1, 0]), &s, dd, -dd, 0)),
        _ => samples().and_then(|s| oracle::annihilator_vertex_check(&a2, &alphas[..1], &v(&[1, 1]), &s, -dd, -dd, 0)),
    };
    identity_case("field_identities", pad(i), rep)
}

fn automorphism_job(config: &SuiteConfig, index: usize) -> CaseReport {
    let lattice = Lattice::a1();
    let word = VertexWord::charge(&[1]);
    let cap = config.exp_cap;
    let id = pad(index);
    for attempt in 0..64u64 {
        let seed = seed_for(config.seed, &[6, index as u64, attempt]);
        let sample = match random_sample(&lattice, &LatticeVector::zero(1), config.max_degree, seed) {
            Ok(s) => s,
            Err(e) => return CaseReport::new("automorphism", id, json!({}), error_witness(&e)),
        };
        let elem = sample.element();
        let back = match exp_mode(&lattice, &word, 1, -1, &elem, cap) {
            Ok(b) => b,
            Err(Error::CapExceeded { .. }) => continue,
            Err(e) => return CaseReport::new("automorphism", id, json!({}), error_witness(&e)),
        };
        let params = json!({ "seed": seed, "attempt": attempt, "cap": cap, "element": sample.to_json() });
        let w = match exp_mode(&lattice, &word, 1, 1, &back, cap) {
            Ok(round) if round == elem => None,
            Ok(round) => Some(json!({ "round_trip": round.to_json() })),
            Err(Error::CapExceeded { .. }) => continue,
            Err(e) => error_witness(&e),
        };
        return CaseReport::new("automorphism", id, params, w);
    }
    CaseReport::new("automorphism", id, json!({}), Some(json!({ "error": "no nilpotent sample within 64 attempts" })))
}

fn exp_value_job(config: &SuiteConfig, t: i64) -> CaseReport {
    let lattice = Lattice::a1();
    let word = VertexWord::charge(&[1]);
    let id = format!("value/t={t}");
    let params = json!({ "t": t, "on": "e^{-α}" });
    let run = || -> Result<Option<Value>> {
        let start = FockElement::exp(&lattice, &LatticeVector::from_ints(&[-1]))?;
        let got = exp_mode(&lattice, &word, 1, t, &start, config.exp_cap)?;
        let mut want = start.clone();
        want.add_scaled(&FockElement::vacuum(1), &q(t));
        Ok((got != want).then(|| json!({ "got": got.to_json(), "want": want.to_json() })))
    };
    match run() {
        Ok(w) => CaseReport::new("automorphism", id, params, w),
        Err(e) => CaseReport::new("automorphism", id, params, error_witness(&e)),
    }
}

fn jobs(ctx: &Ctx) -> Vec<Job> {
    let c = ctx.config;
    let mut out = Vec::new();
    out.extend(Partition::up_to(c.schur_degree).into_iter().map(Job::Schur));
    out.extend((0..=c.unimodular_degree).map(Job::Unimodular));
    for r in 1..=4 {
        for k in 1..=3 {
            out.extend((0..c.cases.divisibility).map(|index| Job::Divisibility { r, k, index }));
        }
    }
    out.push(Job::DivisibilityValue { r: 2, k: 2, n: 1, expected: -2 });
    out.push(Job::DivisibilityValue { r: 3, k: 2, n: 2, expected: -6 });
    out.push(Job::DivisibilityValue { r: 2, k: 1, n: 0, expected: 0 });
    for lattice in 0..ctx.plain {
        let suite = "divided_power_integrality";
        out.extend((0..c.cases.divided).map(|index| Job::Divided { suite, lattice, index }));
        out.extend((0..c.cases.general).map(|index| Job::General { lattice, index }));
        out.extend((0..c.cases.sum).map(|index| Job::Sum { lattice, index }));
        let suite = "garland_integrality";
        out.extend((0..c.cases.garland).map(|index| Job::Garland { suite, lattice, index }));
    }
    for lattice in ctx.plain..ctx.spaces.len() {
        let suite = "module_divided_power_integrality";
        out.extend((0..c.cases.divided).map(|index| Job::Divided { suite, lattice, index }));
        let suite = "module_garland_integrality";
        out.extend((0..c.cases.garland).map(|index| Job::Garland { suite, lattice, index }));
    }
    for k in 1..=4 {
        out.extend((0..=6).map(|n| Job::GarlandPoly { k, n }));
    }
    out.extend((0..product_specs().len()).map(Job::Product));
    out.extend((0..IDENTITY_COUNT).map(Job::Identity));
    out.extend((0..c.cases.automorphism).map(Job::Automorphism));
    out.extend([-2, -1, 1, 2].map(Job::ExpValue));
    out
}

fn job_suite(job: &Job) -> &'static str {
    match job {
        Job::Schur(_) => "schur_equivalence",
        Job::Unimodular(_) => "unimodularity",
        Job::Divisibility { .. } | Job::DivisibilityValue { .. } => "vandermonde_divisibility",
        Job::Divided { suite, .. } | Job::Garland { suite, .. } => suite,
        Job::General { .. } => "general_divided_power_integrality",
        Job::Sum { .. } => "divided_power_sum_integrality",
        Job::GarlandPoly { .. } => "garland_integrality",
        Job::Product(_) => "product_formula",
        Job::Identity(_) => "field_identities",
        Job::Automorphism(_) | Job::ExpValue(_) => "automorphism",
    }
}

/// Integrality jobs also feed the reduction suite.
fn feeds_mod_p(job: &Job) -> bool {
    matches!(job, Job::Divided { .. } | Job::General { .. } | Job::Sum { .. } | Job::Garland { .. })
}

fn run_job(ctx: &Ctx, job: &Job) -> Vec<CaseReport> {
    let c = ctx.config;
    match job {
        Job::Schur(p) => vec![schur_job(p)],
        Job::Unimodular(d) => vec![unimodular_job(*d)],
        Job::Divisibility { r, k, index } => vec![divisibility_job(c, *r, *k, *index)],
        Job::DivisibilityValue { r, k, n, expected } => vec![divisibility_value_job(*r, *k, *n, *expected)],
        Job::Divided { suite, lattice, index } => divided_job(ctx, suite, *lattice, *index),
        Job::General { lattice, index } => general_job(ctx, *lattice, *index),
        Job::Sum { lattice, index } => sum_job(ctx, *lattice, *index),
        Job::GarlandPoly { k, n } => vec![garland_poly_job(*k, *n)],
        Job::Garland { suite, lattice, index } => garland_job(ctx, suite, *lattice, *index),
        Job::Product(i) => vec![product_job(c, *i)],
        Job::Identity(i) => vec![identity_job(c, *i)],
        Job::Automorphism(i) => vec![automorphism_job(c, *i)],
        Job::ExpValue(t) => vec![exp_value_job(c, *t)],
    }
}

fn thread_pool() -> rayon::ThreadPool {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = std::env::var("LVA_THREADS").ok().and_then(|s| s.parse::<usize>().ok()).filter(|&n| n > 0) {
        b = b.num_threads(n);
    }
    b.build().expect("thread pool")
}

/// Runs every suite of `config`. Cases run concurrently (bounded by the
/// `LVA_THREADS` environment variable) and are reported sorted by suite and
/// case id, so equal configurations give identical reports.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    run_suites(config, |_| true)
}

/// [`run_suite`] restricted to the suites accepted by `select`.
pub fn run_suites(config: &SuiteConfig, select: impl Fn(&str) -> bool + Sync) -> Result<SuiteReport> {
    let (lattices, cosets) = config.validate()?;
    let mut spaces: Vec<(Lattice, LatticeVector)> = lattices.into_iter().map(|l| {
        let z = LatticeVector::zero(l.rank());
        (l, z)
    }).collect();
    let plain = spaces.len();
    spaces.extend(cosets);
    let ctx = Ctx { config, spaces, plain };
    let start = Instant::now();
    let all: Vec<Job> = jobs(&ctx)
        .into_iter()
        .filter(|j| select(job_suite(j)) || (feeds_mod_p(j) && select("mod_p_reduction")))
        .collect();
    let pool = thread_pool();
    let mut cases: Vec<CaseReport> = pool.install(|| {
        all.par_iter()
            .flat_map_iter(|job| {
                let t = Instant::now();
                let mut reps = run_job(&ctx, job);
                let ms = t.elapsed().as_millis() as u64;
                for r in &mut reps {
                    if config.timings {
                        r.millis = Some(ms);
                    }
                }
                reps
            })
            .collect()
    });
    cases.retain(|c| select(&c.suite));
    cases.sort_by(|a, b| (a.suite.as_str(), a.case_id.as_str()).cmp(&(b.suite.as_str(), b.case_id.as_str())));
    let summaries = SUITES
        .iter()
        .filter(|(name, _)| select(name))
        .map(|(name, statement)| {
            let mine: Vec<&CaseReport> = cases.iter().filter(|c| c.suite == *name).collect();
            SuiteSummary {
                suite: name.to_string(),
                statement: statement.to_string(),
                passed: mine.iter().filter(|c| c.verdict).count(),
                failed: mine.iter().filter(|c| !c.verdict).count(),
                first_failure: mine.iter().find(|c| !c.verdict).map(|c| (*c).clone()),
            }
        })
        .collect();
    let millis = config.timings.then(|| start.elapsed().as_millis() as u64);
    Ok(SuiteReport { config: config.clone(), summaries, cases, millis })
}
