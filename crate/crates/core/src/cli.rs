//! Command implementations behind the `qadeg` binary. Each command returns a
//! [`Report`]; the binary only parses flags and writes the JSON.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::addressing::{surjectivity_check, AddressingScheme, ComposedFunction, Scheme1, Scheme2, SchemeDescriptor};
use crate::approxdeg::{self, MAX_LP_VARS};
use crate::boolfn::bounds::{check_bounds, exhaustive_bounds, Inequality, MAX_EXHAUSTIVE_BOUND_VARS};
use crate::boolfn::{subset_vars, TruthTable};
use crate::discrimination::{check_povm, random_gram, PSD_TOLERANCE};
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::qsim::{PhaseOracle, QueryOracle, GROVER_BUDGET_CONSTANT};
use crate::report::Report;
use crate::tails;

/// Tolerance on "at least 2/3" comparisons of exact probabilities.
pub const PROBABILITY_TOLERANCE: f64 = 1e-12;
/// Norm orders checked for monotonicity by the tails command.
pub const NORM_ORDERS: [f64; 6] = [1.0, 2.0, 3.0, 4.0, 6.0, 8.0];

const TWO_THIRDS: f64 = 2.0 / 3.0;

#[derive(Debug, Parser)]
#[command(name = "qadeg", version, about = "Approximate degree and quantum query workbench")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Add wall-clock time to the report (makes it non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree, Fourier spectrum, influences and sensitivity of a truth table.
    Analyze { path: PathBuf },
    /// Minimax errors and approximate degree of a truth table.
    Approxdeg {
        path: PathBuf,
        #[arg(long, default_value_t = 1.0 / 3.0)]
        eps: f64,
    },
    /// Influence inequalities on every function of n variables.
    VerifyBounds {
        #[arg(long)]
        n: usize,
    },
    /// Tail and hypercontractivity checks on random low-degree polynomials.
    Tails {
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random-codebook addressing scheme, exact and sampled.
    Scheme1 {
        #[arg(long, default_value_t = 8)]
        k: usize,
        #[arg(long, default_value_t = 16)]
        m: usize,
        #[arg(long, default_value_t = crate::addressing::DEFAULT_C)]
        c: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Random non-codeword inputs checked exactly.
        #[arg(long, default_value_t = 100)]
        inputs: usize,
    },
    /// Hadamard-block addressing scheme, exact and sampled.
    Scheme2 {
        #[arg(long, default_value_t = 2)]
        s: usize,
        #[arg(long, default_value_t = 3)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Random inputs checked exactly.
        #[arg(long, default_value_t = 1000)]
        inputs: usize,
    },
    /// POVM checks on random Gram matrices.
    Discriminate {
        #[arg(long, default_value_t = 8)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

pub fn run(cli: &Cli) -> Result<Report> {
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Analyze { path } => cmd_analyze(path)?,
        Command::Approxdeg { path, eps } => cmd_approxdeg(path, *eps)?,
        Command::VerifyBounds { n } => cmd_verify_bounds(*n)?,
        Command::Tails { n, d, samples, seed } => cmd_tails(*n, *d, *samples, *seed)?,
        Command::Scheme1 {
            k,
            m,
            c,
            seed,
            trials,
            inputs,
        } => cmd_scheme1(*k, *m, *c, *seed, *trials, *inputs)?,
        Command::Scheme2 {
            s,
            t,
            seed,
            trials,
            inputs,
        } => cmd_scheme2(*s, *t, *seed, *trials, *inputs)?,
        Command::Discriminate { k, seed, count } => cmd_discriminate(*k, *seed, *count)?,
    };
    if cli.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

pub fn read_truth_table(path: &Path) -> Result<TruthTable> {
    std::fs::read_to_string(path)?.parse()
}

fn bit_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

#[derive(Serialize)]
struct FourierTerm {
    set: Vec<usize>,
    coefficient: Fraction,
}

fn rational_json(r: &num_rational::BigRational) -> serde_json::Value {
    match Fraction::try_from(r) {
        Ok(f) => json!(f),
        Err(_) => json!({ "num": r.numer().to_string(), "den": r.denom().to_string() }),
    }
}

pub fn cmd_analyze(path: &Path) -> Result<Report> {
    let tt = read_truth_table(path)?;
    let n = tt.n();
    let mut report = Report::new("analyze", json!({ "path": path.display().to_string(), "n": n }), None);
    let den = 1u64 << n;
    let spectrum: Vec<FourierTerm> = tt
        .scaled_fourier()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(mask, &c)| FourierTerm {
            set: subset_vars(n, mask as u32),
            coefficient: Fraction::reduced(c, den),
        })
        .collect();
    let influences: Vec<Fraction> = tt.influences().into_iter().map(Fraction::from).collect();
    report.claim("degree", "boolfn.degree", None, tt.degree());
    report.claim("fourier", "boolfn.fourier", None, spectrum);
    report.claim("influences", "boolfn.influence", None, influences);
    report.claim(
        "total_influence",
        "boolfn.total_influence",
        None,
        Fraction::from(tt.total_influence()),
    );
    report.claim("sensitivity", "boolfn.sensitivity", None, tt.sensitivity());
    let stats = tt.stats();
    report.claim("expectation", "boolfn.stats", None, stats.expectation);
    report.claim("variance", "boolfn.stats", None, stats.variance);
    bound_verdicts(&mut report, &check_bounds(&tt));
    Ok(report)
}

fn bound_verdicts(report: &mut Report, violations: &[crate::boolfn::bounds::BoundViolation]) {
    for (name, kind) in [
        ("influence_degree_floor", Inequality::DegreeFloor),
        ("influence_sum_at_most_degree", Inequality::InfluenceSum),
        ("influence_sensitivity_floor", Inequality::SensitivityFloor),
    ] {
        let found: Vec<_> = violations.iter().filter(|v| v.inequality == kind).collect();
        report.verdict(name, "boolfn.bounds.check_bounds", None, found.is_empty(), found);
    }
}

pub fn cmd_approxdeg(path: &Path, eps: f64) -> Result<Report> {
    let tt = read_truth_table(path)?;
    let n = tt.n();
    if n > MAX_LP_VARS {
        return Err(Error::Capacity {
            what: "approximate degree",
            n,
            max: MAX_LP_VARS,
        });
    }
    let mut report = Report::new(
        "approxdeg",
        json!({ "path": path.display().to_string(), "n": n, "eps": eps }),
        None,
    );
    let fits = (0..=n)
        .map(|d| approxdeg::minimax_error(&tt, d))
        .collect::<Result<Vec<_>>>()?;
    let errors: Vec<_> = fits
        .iter()
        .map(|f| json!({ "d": f.degree_bound, "epsilon": rational_json(&f.epsilon_exact), "epsilon_f64": f.epsilon }))
        .collect();
    report.claim("minimax_errors", "approxdeg.minimax_error", None, errors);
    let adeg = approxdeg::approx_degree(&tt, eps)?;
    let degree = tt.degree();
    report.claim(
        "approx_degree",
        "approxdeg.approx_degree",
        Some(approxdeg::EPS_SLACK),
        adeg,
    );
    report.claim("degree", "boolfn.degree", None, degree);
    report.verdict(
        "approx_degree_at_most_degree",
        "approxdeg.approx_degree",
        None,
        adeg <= degree,
        json!({ "approx_degree": adeg, "degree": degree }),
    );
    let monotone = fits.windows(2).all(|w| w[1].epsilon_exact <= w[0].epsilon_exact);
    report.verdict(
        "minimax_error_nonincreasing",
        "approxdeg.minimax_error",
        None,
        monotone,
        errors_f64(&fits),
    );
    let pipeline = tails::lower_bound_pipeline(&tt, eps)?;
    report.verdict(
        "derivative_mass_at_most_degree_weight",
        "tails.lower_bound_pipeline",
        Some(tails::RELATIVE_SLACK),
        pipeline.mass_inequality_holds,
        &pipeline,
    );
    report.verdict(
        "min_derivative_within_average",
        "tails.lower_bound_pipeline",
        Some(tails::RELATIVE_SLACK),
        pipeline.min_within_average,
        &pipeline,
    );
    if let Some(holds) = pipeline.influence_floor_holds {
        report.verdict(
            "influence_sensitivity_floor_at_min",
            "tails.lower_bound_pipeline",
            None,
            holds,
            &pipeline,
        );
    }
    report.claim(
        "lower_bound_pipeline",
        "tails.lower_bound_pipeline",
        Some(tails::RELATIVE_SLACK),
        pipeline,
    );
    Ok(report)
}

fn errors_f64(fits: &[approxdeg::MinimaxResult]) -> Vec<f64> {
    fits.iter().map(|f| f.epsilon).collect()
}

pub fn cmd_verify_bounds(n: usize) -> Result<Report> {
    if n == 0 || n > MAX_EXHAUSTIVE_BOUND_VARS {
        return Err(Error::InvalidArgument(format!(
            "--n must be in 1..={MAX_EXHAUSTIVE_BOUND_VARS}, got {n}"
        )));
    }
    let mut report = Report::new("verify-bounds", json!({ "n": n }), None);
    let suite = exhaustive_bounds(n)?;
    report.claim("functions", "boolfn.bounds.exhaustive_bounds", None, suite.functions);
    report.claim(
        "violations",
        "boolfn.bounds.exhaustive_bounds",
        None,
        suite.violations.len(),
    );
    bound_verdicts(&mut report, &suite.violations);
    Ok(report)
}

pub fn cmd_tails(n: usize, d: usize, samples: usize, seed: u64) -> Result<Report> {
    let mut report = Report::new("tails", json!({ "n": n, "d": d, "samples": samples }), Some(seed));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tail_violations = Vec::new();
    let mut hyper_failures = Vec::new();
    let mut monotone_failures = Vec::new();
    let mut worst_ratio: f64 = 0.0;
    for sample in 0..samples {
        let p = tails::random_polynomial(n, d, &mut rng)?;
        let tr = tails::tail_report(&p)?;
        for point in &tr.grid {
            worst_ratio = worst_ratio.max(point.empirical_tail / point.bound);
        }
        tail_violations.extend(tr.violations().map(|pt| json!({ "sample": sample, "point": pt })));
        for q in [4.0, 6.0] {
            if !tails::hypercontractive_check(&p, q)? {
                hyper_failures.push(json!({ "sample": sample, "q": q }));
            }
        }
        if !tails::norms_monotone(&p, &NORM_ORDERS)? {
            monotone_failures.push(json!({ "sample": sample }));
        }
    }
    report.claim("grid_points", "tails.t_grid", None, tails::t_grid(d));
    report.claim(
        "worst_tail_ratio",
        "tails.tail_report",
        Some(tails::TAIL_TOLERANCE),
        worst_ratio,
    );
    report.verdict(
        "tail_bound",
        "tails.tail_report",
        Some(tails::TAIL_TOLERANCE),
        tail_violations.is_empty(),
        tail_violations,
    );
    report.verdict(
        "hypercontractive_q4_q6",
        "tails.hypercontractive_check",
        Some(tails::RELATIVE_SLACK),
        hyper_failures.is_empty(),
        hyper_failures,
    );
    report.verdict(
        "norms_monotone",
        "tails.norms_monotone",
        Some(tails::RELATIVE_SLACK),
        monotone_failures.is_empty(),
        monotone_failures,
    );
    Ok(report)
}

/// Shared exact and sampled checks for a composed function on the given tails.
fn scheme_runs<S: AddressingScheme>(
    report: &mut Report,
    composed: &ComposedFunction<S>,
    tails_to_check: &[(String, Vec<Vec<bool>>)],
    trials: usize,
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    let scheme = composed.scheme();
    let mut agreement_failures = Vec::new();
    let mut pool = Vec::new();
    for (label, inputs) in tails_to_check {
        let mut min_success = f64::INFINITY;
        let mut worst = None;
        for x in inputs {
            let dist = scheme.address_distribution(x)?;
            let a = scheme.address(x)?;
            let p = dist[a - 1];
            if p < min_success {
                min_success = p;
                worst = Some(bit_string(x));
            }
            let argmax = dist
                .iter()
                .enumerate()
                .fold(0, |best, (i, &q)| if q > dist[best] { i } else { best })
                + 1;
            if argmax != a {
                agreement_failures.push(json!({ "input": bit_string(x), "address": a, "argmax": argmax }));
            }
            pool.push(x.clone());
        }
        let name = format!("min_exact_success.{label}");
        report.claim(
            &name,
            "addressing.exact_success",
            Some(PROBABILITY_TOLERANCE),
            min_success,
        );
        report.verdict(
            &format!("exact_success_at_least_two_thirds.{label}"),
            "addressing.exact_success",
            Some(PROBABILITY_TOLERANCE),
            min_success >= TWO_THIRDS - PROBABILITY_TOLERANCE,
            json!({ "min": min_success, "input": worst }),
        );
    }
    report.verdict(
        "argmax_matches_classical",
        "addressing.address_distribution",
        None,
        agreement_failures.is_empty(),
        agreement_failures,
    );

    let k = scheme.k();
    let budget = composed.query_budget();
    let mut queries = Vec::with_capacity(trials);
    let mut correct = 0usize;
    let mut over_budget = Vec::new();
    for trial in 0..trials {
        let tail = &pool[trial % pool.len()];
        let mut x: Vec<bool> = (0..k).map(|_| rng.random()).collect();
        x.extend_from_slice(tail);
        let mut oracle = PhaseOracle::new(x.clone());
        let out = composed.evaluate_quantum(&mut oracle, rng)?;
        if out == composed.evaluate(&x)? {
            correct += 1;
        }
        let used = oracle.query_count();
        if used > budget {
            over_budget.push(json!({ "trial": trial, "queries": used }));
        }
        queries.push(used);
    }
    let rate = if trials == 0 {
        1.0
    } else {
        correct as f64 / trials as f64
    };
    report.claim("query_budget", "addressing.ComposedFunction.query_budget", None, budget);
    report.claim(
        "sampled_success_rate",
        "addressing.ComposedFunction.evaluate_quantum",
        None,
        rate,
    );
    report.claim(
        "max_queries",
        "qsim.QueryOracle.query_count",
        None,
        queries.iter().copied().max().unwrap_or(0),
    );
    report.claim("queries_per_trial", "qsim.QueryOracle.query_count", None, &queries);
    report.verdict(
        "sampled_success_at_least_two_thirds",
        "addressing.ComposedFunction.evaluate_quantum",
        None,
        rate >= TWO_THIRDS,
        json!({ "rate": rate, "trials": trials }),
    );
    report.verdict(
        "queries_within_budget",
        "qsim.QueryOracle.query_count",
        None,
        over_budget.is_empty(),
        over_budget,
    );
    report.verdict(
        "surjective",
        "addressing.surjectivity_check",
        None,
        surjectivity_check(scheme)?,
        (),
    );
    Ok(())
}

fn random_bits(len: usize, rng: &mut ChaCha8Rng) -> Vec<bool> {
    (0..len).map(|_| rng.random()).collect()
}

pub fn cmd_scheme1(k: usize, m: usize, c: f64, seed: u64, trials: usize, inputs: usize) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scheme = Scheme1::generate(k, m, c, &mut rng)?.with_seed(Some(seed));
    let descriptor = SchemeDescriptor::from(&scheme);
    let mut report = Report::new(
        "scheme1",
        json!({ "scheme": descriptor, "trials": trials, "inputs": inputs }),
        Some(seed),
    );

    let mu = scheme.max_overlap();
    let t_prime = scheme.t_prime();
    let power = mu.powi(t_prime as i32);
    report.claim("t_prime", "addressing.Scheme1.generate", None, t_prime);
    report.claim("max_overlap", "qsim.psi_overlap", None, mu);
    report.claim("max_overlap_power", "qsim.psi_overlap", None, power);
    let target = 1.0 / (k * k) as f64;
    report.verdict(
        "overlap_power_at_most_inverse_k_squared",
        "addressing.Scheme1.generate",
        None,
        power <= target,
        json!({ "power": power, "target": target }),
    );

    let mut others = Vec::with_capacity(inputs);
    while others.len() < inputs {
        let x = random_bits(m, &mut rng);
        if !scheme.codewords().contains(&x) {
            others.push(x);
        }
    }
    let sets = vec![
        ("codewords".to_string(), scheme.codewords().to_vec()),
        ("non_codewords".to_string(), others),
    ];
    let composed = ComposedFunction::new(scheme);
    scheme_runs(&mut report, &composed, &sets, trials, &mut rng)?;
    Ok(report)
}

pub fn cmd_scheme2(s: usize, t: usize, seed: u64, trials: usize, inputs: usize) -> Result<Report> {
    let scheme = Scheme2::new(s, t)?;
    let descriptor = SchemeDescriptor::from(&scheme);
    let mut report = Report::new(
        "scheme2",
        json!({ "scheme": descriptor, "trials": trials, "inputs": inputs }),
        Some(seed),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = scheme.m();
    let promise = scheme.witnesses();

    let mut promise_failures = Vec::new();
    for (a, w) in promise.iter().enumerate() {
        let p = scheme.exact_success(w)?;
        if p < 1.0 - PROBABILITY_TOLERANCE {
            promise_failures.push(json!({ "address": a + 1, "input": bit_string(w), "success": p }));
        }
    }
    report.verdict(
        "promise_success_is_one",
        "addressing.exact_success",
        Some(PROBABILITY_TOLERANCE),
        promise_failures.is_empty(),
        promise_failures,
    );

    let random: Vec<Vec<bool>> = (0..inputs).map(|_| random_bits(m, &mut rng)).collect();
    let sets = vec![("promise".to_string(), promise), ("random".to_string(), random)];
    let composed = ComposedFunction::new(scheme);
    let analytic = t as f64 + GROVER_BUDGET_CONSTANT * (m as f64).sqrt() + 1.0;
    report.claim(
        "budget_formula",
        "t + C sqrt(m) + 1",
        None,
        json!({ "c": GROVER_BUDGET_CONSTANT, "value": analytic }),
    );
    report.verdict(
        "budget_within_formula",
        "addressing.ComposedFunction.query_budget",
        None,
        composed.query_budget() as f64 <= analytic,
        json!({ "budget": composed.query_budget(), "formula": analytic }),
    );
    scheme_runs(&mut report, &composed, &sets, trials, &mut rng)?;
    Ok(report)
}

pub fn cmd_discriminate(k: usize, seed: u64, count: usize) -> Result<Report> {
    if k == 0 {
        return Err(Error::InvalidArgument("--k must be at least 1".into()));
    }
    let mut report = Report::new("discriminate", json!({ "k": k, "count": count }), Some(seed));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let (mut min_e0, mut max_lambda, mut max_dev, mut max_delta_ratio) =
        (f64::INFINITY, f64::NEG_INFINITY, 0.0f64, 0.0f64);
    for sample in 0..count {
        let gram = random_gram(k, &mut rng)?;
        let check = check_povm(&gram)?;
        min_e0 = min_e0.min(check.inconclusive_min_eigenvalue);
        max_lambda = max_lambda.max(check.gram_lambda_max);
        max_dev = max_dev.max(check.max_success_deviation());
        if check.delta.bound > 0.0 {
            for d in &check.delta.delta_norms {
                max_delta_ratio = max_delta_ratio.max(d / check.delta.bound);
            }
        }
        if !check.holds(PSD_TOLERANCE) {
            failures.push(json!({ "sample": sample, "check": check }));
        }
    }
    report.claim(
        "min_inconclusive_eigenvalue",
        "discrimination.check_povm",
        Some(PSD_TOLERANCE),
        min_e0,
    );
    report.claim(
        "max_gram_eigenvalue",
        "discrimination.check_povm",
        Some(PSD_TOLERANCE),
        max_lambda,
    );
    report.claim(
        "max_success_deviation",
        "discrimination.check_povm",
        Some(PSD_TOLERANCE),
        max_dev,
    );
    report.claim(
        "max_delta_over_bound",
        "discrimination.delta_norm_check",
        Some(PSD_TOLERANCE),
        max_delta_ratio,
    );
    report.verdict(
        "povm_bounds",
        "discrimination.check_povm",
        Some(PSD_TOLERANCE),
        failures.is_empty(),
        failures,
    );
    Ok(report)
}
