//! Seeded random instances for the identity checks.
//!
//! Instances are drawn from a ChaCha8 stream seeded with the configured seed,
//! in a fixed order: the two rings, `I`, `K`, `J`, `L`, `I2`, `C`, then `s`.
//! A ring has a uniform number of variables in `[1, max_vars]`. An ideal has a
//! uniform number of generators in `[1, max_generators]`, each with exponents
//! uniform in `[0, max_exponent]`; `I`, `I2` and `J` are redrawn until proper.
//! `s` is uniform in `[1, max_s]`. Changing any of this changes every seeded
//! report.

use std::fmt::Write as _;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::verify::SCHEMA_VERSION;
use crate::binomial::{
    check_ass_structure, check_binomial_saturated, check_binomial_symbolic, check_equality_criteria,
    check_filtration_identities, check_saturated_inclusion, check_symbolic_equality_criteria, join_rings, Filtration,
    JoinedRing, Outcome,
};
use crate::error::{Error, Result};
use crate::homology::{check_depth_reg_binomial, check_depth_reg_symbolic, check_deriv_star, Characteristic};
use crate::monomial::{MonomialIdeal, Ring};
use crate::powers::{check_symbolic_routes, Notion};

const LEFT_NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];
const RIGHT_NAMES: [&str; 6] = ["x", "y", "z", "t", "u", "v"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Thm38,
    Thm41Min,
    Thm41Ass,
    Lem22_24,
    Lem32_36,
    Lem25_29,
    Thm44,
    Cor46,
    Lem45,
    Cor39_310,
    Cor43,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Thm38,
        Suite::Thm41Min,
        Suite::Thm41Ass,
        Suite::Lem22_24,
        Suite::Lem32_36,
        Suite::Lem25_29,
        Suite::Thm44,
        Suite::Cor46,
        Suite::Lem45,
        Suite::Cor39_310,
        Suite::Cor43,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Thm38 => "thm38",
            Suite::Thm41Min => "thm41_min",
            Suite::Thm41Ass => "thm41_ass",
            Suite::Lem22_24 => "lem22_24",
            Suite::Lem32_36 => "lem32_36",
            Suite::Lem25_29 => "lem25_29",
            Suite::Thm44 => "thm44",
            Suite::Cor46 => "cor46",
            Suite::Lem45 => "lem45",
            Suite::Cor39_310 => "cor39_310",
            Suite::Cor43 => "cor43",
        }
    }

    /// Script lines that re-run this suite's check on the bound instance.
    fn assertions(self, s: u32, ch: Characteristic) -> Vec<String> {
        let p = match ch {
            Characteristic::Zero => 0,
            Characteristic::Prime(p) => p,
        };
        let lines: Vec<String> = match self {
            Suite::Thm38 => vec![format!("check_binom_sat(I, K, J, L, {s})")],
            Suite::Thm41Min => vec![format!("check_binom_symb(I, J, {s}, min)")],
            Suite::Thm41Ass => vec![format!("check_binom_symb(I, J, {s}, ass)")],
            Suite::Lem22_24 => vec![format!("check_routes(I, {s}, min)"), format!("check_routes(I, {s}, ass)")],
            Suite::Lem32_36 => vec![
                format!("check_filt(powers(I), powers(I2), powers(J), C, {s})"),
                format!("check_filt(satpowers(I, K), satpowers(I2, K), satpowers(J, L), C, {s})"),
                format!("check_incl(I, K, J, L, {s})"),
            ],
            Suite::Lem25_29 => vec![format!("check_ass(I, J, {s})")],
            Suite::Thm44 => vec![format!("check_depth_reg(I, K, J, L, {s}, {p})")],
            Suite::Cor46 => vec![format!("check_depth_reg_symb(I, J, {s}, {p})")],
            Suite::Lem45 => vec![format!("check_dstar(I, K, {s})")],
            Suite::Cor39_310 => vec![format!("check_eq(I, K, J, L, {s})")],
            Suite::Cor43 => vec![format!("check_symb_eq(I, J, {s}, min)"), format!("check_symb_eq(I, J, {s}, ass)")],
        };
        lines.into_iter().map(|l| format!("assert {l};")).collect()
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                Error::InvalidArgument(format!("unknown suite `{s}` (expected one of {})", names.join(", ")))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    pub seed: u64,
    pub max_vars_per_side: usize,
    pub max_generators: usize,
    pub max_exponent: u32,
    pub max_s: u32,
    pub cases: usize,
    pub suites: Vec<Suite>,
    pub characteristic: Characteristic,
}

impl Default for FuzzConfig {
    fn default() -> FuzzConfig {
        FuzzConfig {
            seed: 1,
            max_vars_per_side: 3,
            max_generators: 4,
            max_exponent: 3,
            max_s: 3,
            cases: 500,
            suites: vec![Suite::Thm38],
            characteristic: Characteristic::Zero,
        }
    }
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_vars_per_side == 0 || self.max_generators == 0 || self.max_exponent == 0 || self.max_s == 0 {
            return Err(Error::InvalidArgument("all bounds must be at least 1".into()));
        }
        if self.cases == 0 {
            return Err(Error::InvalidArgument("cases must be at least 1".into()));
        }
        if self.max_vars_per_side > LEFT_NAMES.len() {
            return Err(Error::InvalidArgument(format!("at most {} variables per side", LEFT_NAMES.len())));
        }
        Ok(())
    }
}

/// One random instance. `I`, `I2`, `K`, `C` live in `A`; `J`, `L` in `B`.
#[derive(Clone, Debug)]
pub struct Instance {
    pub joined: JoinedRing,
    pub i: MonomialIdeal,
    pub k: MonomialIdeal,
    pub j: MonomialIdeal,
    pub l: MonomialIdeal,
    pub i2: MonomialIdeal,
    pub c: MonomialIdeal,
    pub s: u32,
}

fn sample_ring(rng: &mut ChaCha8Rng, names: &[&str], max_vars: usize) -> Ring {
    let n = rng.gen_range(1..=max_vars);
    Ring::new(names[..n].iter().copied()).expect("distinct names")
}

fn sample_ideal(rng: &mut ChaCha8Rng, ring: &Ring, cfg: &FuzzConfig, proper: bool) -> MonomialIdeal {
    loop {
        let count = rng.gen_range(1..=cfg.max_generators);
        let gens: Vec<Vec<u32>> = (0..count)
            .map(|_| (0..ring.nvars()).map(|_| rng.gen_range(0..=cfg.max_exponent)).collect())
            .collect();
        let ideal = MonomialIdeal::from_exponents(ring, gens).expect("arity matches");
        if !proper || !ideal.is_unit() {
            return ideal;
        }
    }
}

/// The first `cfg.cases` instances of the seeded stream.
pub fn generate(cfg: &FuzzConfig) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    (0..cfg.cases)
        .map(|_| {
            let a = sample_ring(&mut rng, &LEFT_NAMES, cfg.max_vars_per_side);
            let b = sample_ring(&mut rng, &RIGHT_NAMES, cfg.max_vars_per_side);
            let i = sample_ideal(&mut rng, &a, cfg, true);
            let k = sample_ideal(&mut rng, &a, cfg, false);
            let j = sample_ideal(&mut rng, &b, cfg, true);
            let l = sample_ideal(&mut rng, &b, cfg, false);
            let i2 = sample_ideal(&mut rng, &a, cfg, true);
            let c = sample_ideal(&mut rng, &a, cfg, false);
            let s = rng.gen_range(1..=cfg.max_s);
            Instance { joined: join_rings(&a, &b), i, k, j, l, i2, c, s }
        })
        .collect()
}

impl Instance {
    /// A script binding the instance and asserting the suite's check.
    pub fn script(&self, suite: Suite, ch: Characteristic) -> String {
        let mut out = String::new();
        let (a, b) = (self.joined.left.source(), self.joined.right.source());
        writeln!(out, "ring A = {a};\nring B = {b};\nring R = join(A, B);").unwrap();
        for (name, ideal, ring) in [
            ("I", &self.i, "A"),
            ("K", &self.k, "A"),
            ("I2", &self.i2, "A"),
            ("C", &self.c, "A"),
            ("J", &self.j, "B"),
            ("L", &self.l, "B"),
        ] {
            writeln!(out, "ideal {name} = {ideal} in {ring};").unwrap();
        }
        for line in suite.assertions(self.s, ch) {
            writeln!(out, "{line}").unwrap();
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseOutcome {
    Pass,
    Fail,
    Inconclusive,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseResult {
    pub outcome: CaseOutcome,
    /// Some route of the check had nothing to compare (no regular witness).
    pub partial: bool,
    pub expected: String,
    pub actual: String,
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("reports serialize")
}

fn case(passed: bool, expected: impl Into<String>, actual: impl Into<String>) -> CaseResult {
    CaseResult {
        outcome: if passed { CaseOutcome::Pass } else { CaseOutcome::Fail },
        partial: false,
        expected: expected.into(),
        actual: actual.into(),
    }
}

fn evaluate(suite: Suite, x: &Instance, ch: Characteristic) -> Result<CaseResult> {
    let (jr, s) = (&x.joined, x.s);
    Ok(match suite {
        Suite::Thm38 => {
            let r = check_binomial_saturated(jr, &x.i, &x.k, &x.j, &x.l, s)?;
            case(r.equal, r.direct, r.expansion)
        }
        Suite::Thm41Min | Suite::Thm41Ass => {
            let n = if suite == Suite::Thm41Min { Notion::Min } else { Notion::Ass };
            let r = check_binomial_symbolic(jr, &x.i, &x.j, s, n)?;
            case(r.equal, r.direct, r.expansion)
        }
        Suite::Lem22_24 => {
            let reports = [check_symbolic_routes(&x.i, s, Notion::Min)?, check_symbolic_routes(&x.i, s, Notion::Ass)?];
            let mut c = case(reports.iter().all(|r| r.agree), "all routes agree", json(&reports));
            c.partial = reports.iter().any(|r| r.witness.is_none());
            c
        }
        Suite::Lem32_36 => {
            let top = s;
            let ordinary = check_filtration_identities(
                jr,
                &Filtration::ordinary_powers(&x.i, top)?,
                &Filtration::ordinary_powers(&x.i2, top)?,
                &Filtration::ordinary_powers(&x.j, top)?,
                &x.c,
                s as usize,
            )?;
            let saturated = check_filtration_identities(
                jr,
                &Filtration::saturated_powers(&x.i, &x.k, top)?,
                &Filtration::saturated_powers(&x.i2, &x.k, top)?,
                &Filtration::saturated_powers(&x.j, &x.l, top)?,
                &x.c,
                s as usize,
            )?;
            let inclusion = check_saturated_inclusion(jr, &x.i, &x.k, &x.j, &x.l, s)?;
            let passed = ordinary.passed() && saturated.passed() && inclusion.passed;
            case(passed, "all identities hold", json(&(ordinary, saturated, inclusion)))
        }
        Suite::Lem25_29 => {
            let r = check_ass_structure(jr, &x.i, &x.j, s)?;
            let outcome = match r.outcome() {
                Outcome::Pass => CaseOutcome::Pass,
                Outcome::Fail => CaseOutcome::Fail,
                Outcome::Inconclusive => CaseOutcome::Inconclusive,
            };
            CaseResult { outcome, partial: false, expected: "all structure checks hold".into(), actual: json(&r) }
        }
        Suite::Thm44 => {
            let r = check_depth_reg_binomial(jr, &x.i, &x.k, &x.j, &x.l, s, ch)?;
            case(r.passed(), "lhs = rhs for depth and reg", json(&r))
        }
        Suite::Cor46 => {
            let r = check_depth_reg_symbolic(jr, &x.i, &x.j, s, Notion::Ass, ch)?;
            case(r.passed(), "lhs = rhs for depth and reg", json(&r))
        }
        Suite::Lem45 => {
            let r = check_deriv_star(&x.i, &x.k, s)?;
            case(r.passed, "inclusion holds", json(&r))
        }
        Suite::Cor39_310 => {
            let r = check_equality_criteria(jr, &x.i, &x.k, &x.j, &x.l, s)?;
            case(r.verdict == Outcome::Pass, "joint equality iff componentwise equalities", json(&r))
        }
        Suite::Cor43 => {
            let rs = [
                check_symbolic_equality_criteria(jr, &x.i, &x.j, s, Notion::Min)?,
                check_symbolic_equality_criteria(jr, &x.i, &x.j, s, Notion::Ass)?,
            ];
            let passed = rs.iter().all(|r| r.verdict == Outcome::Pass);
            case(passed, "joint equality iff componentwise equalities", json(&rs))
        }
    })
}

/// Runs one suite on one instance; errors become failures.
pub fn run_case(suite: Suite, x: &Instance, ch: Characteristic) -> CaseResult {
    evaluate(suite, x, ch).unwrap_or_else(|e| case(false, "no error", format!("error: {e}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzFailure {
    pub instance_script: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzReport {
    pub schema_version: u32,
    pub suite: String,
    pub seed: u64,
    pub characteristic: Characteristic,
    pub cases: usize,
    pub passes: usize,
    pub not_applicable: usize,
    pub inconclusive: usize,
    /// Passing cases in which some route had nothing to compare.
    pub partially_applicable: usize,
    pub failures: Vec<FuzzFailure>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        let mut out = format!(
            "{}: {}/{} passed ({} not applicable, {} inconclusive, {} partially applicable), seed {}, char {}",
            self.suite,
            self.passes,
            self.cases,
            self.not_applicable,
            self.inconclusive,
            self.partially_applicable,
            self.seed,
            self.characteristic
        );
        if let Some(f) = self.failures.first() {
            write!(
                out,
                "\nfirst counterexample:\n{}expected: {}\nactual:   {}",
                f.instance_script, f.expected, f.actual
            )
            .unwrap();
        }
        out
    }
}

pub fn run_suite(cfg: &FuzzConfig, suite: Suite, instances: &[Instance]) -> FuzzReport {
    let ch = cfg.characteristic;
    let results: Vec<CaseResult> = instances.par_iter().map(|x| run_case(suite, x, ch)).collect();
    let count = |o: CaseOutcome| results.iter().filter(|r| r.outcome == o).count();
    let failures = results
        .iter()
        .zip(instances)
        .filter(|(r, _)| r.outcome == CaseOutcome::Fail)
        .map(|(r, x)| FuzzFailure {
            instance_script: x.script(suite, ch),
            expected: r.expected.clone(),
            actual: r.actual.clone(),
        })
        .collect();
    FuzzReport {
        schema_version: SCHEMA_VERSION,
        suite: suite.name().into(),
        seed: cfg.seed,
        characteristic: ch,
        cases: instances.len(),
        passes: count(CaseOutcome::Pass),
        not_applicable: count(CaseOutcome::NotApplicable),
        inconclusive: count(CaseOutcome::Inconclusive),
        partially_applicable: results.iter().filter(|r| r.partial && r.outcome == CaseOutcome::Pass).count(),
        failures,
    }
}

/// One report per configured suite, all over the same instance stream.
pub fn run_fuzz(cfg: &FuzzConfig) -> Result<Vec<FuzzReport>> {
    cfg.validate()?;
    let instances = generate(cfg);
    Ok(cfg.suites.iter().map(|&suite| run_suite(cfg, suite, &instances)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::eval::{run_script, Kernel};

    fn config(suite: Suite, cases: usize) -> FuzzConfig {
        FuzzConfig { cases, suites: vec![suite], ..FuzzConfig::default() }
    }

    #[test]
    fn stream_is_deterministic() {
        let cfg = config(Suite::Thm38, 20);
        let a: Vec<String> = generate(&cfg).iter().map(|x| x.script(Suite::Thm38, Characteristic::Zero)).collect();
        let b: Vec<String> = generate(&cfg).iter().map(|x| x.script(Suite::Thm38, Characteristic::Zero)).collect();
        assert_eq!(a, b);
        let other = generate(&FuzzConfig { seed: 2, ..cfg });
        assert_ne!(a[0], other[0].script(Suite::Thm38, Characteristic::Zero));
    }

    #[test]
    fn instances_respect_bounds() {
        let cfg = FuzzConfig { max_vars_per_side: 2, max_generators: 3, max_exponent: 2, max_s: 2, ..config(Suite::Thm38, 50) };
        for x in generate(&cfg) {
            assert!(x.joined.left.source().nvars() <= 2 && x.joined.right.source().nvars() <= 2);
            for g in [&x.i, &x.j, &x.i2] {
                assert!(g.is_proper_nonzero());
            }
            for g in [&x.i, &x.k, &x.j, &x.l, &x.i2, &x.c] {
                assert!(g.len() <= 3 && g.max_exponent() <= 2 && !g.is_zero());
            }
            assert!((1..=2).contains(&x.s));
        }
    }

    #[test]
    fn scripts_rerun_and_pass() {
        let cfg = FuzzConfig { cases: 6, ..FuzzConfig::default() };
        for x in generate(&cfg) {
            for suite in Suite::ALL {
                if matches!(suite, Suite::Thm44 | Suite::Cor46) && x.s > 1 {
                    continue;
                }
                let src = x.script(suite, Characteristic::Zero);
                let out = run_script(&src, Kernel::default());
                let direct = run_case(suite, &x, Characteristic::Zero);
                let expect_ok = direct.outcome == CaseOutcome::Pass;
                assert_eq!(out.succeeded(), expect_ok, "{src}\n{out:?}");
            }
        }
    }

    #[test]
    fn small_runs_pass() {
        for suite in [Suite::Thm38, Suite::Thm41Min, Suite::Lem45, Suite::Cor39_310] {
            let reports = run_fuzz(&config(suite, 15)).unwrap();
            assert!(reports[0].passed(), "{}", reports[0].summary());
            assert_eq!(reports[0].passes, 15);
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("thm99".parse::<Suite>().is_err());
    }

    #[test]
    fn bad_config_is_rejected() {
        assert!(run_fuzz(&FuzzConfig { max_s: 0, ..FuzzConfig::default() }).is_err());
        assert!(run_fuzz(&FuzzConfig { max_vars_per_side: 7, ..FuzzConfig::default() }).is_err());
    }
}
