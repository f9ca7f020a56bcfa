//! Golden checks: worked examples with known answers, run through the script evaluator.

use serde::Serialize;

use super::eval::{run_script, Kernel, RunOutcome};

/// Version of the JSON layout produced by `verify` and `fuzz`.
pub const SCHEMA_VERSION: u32 = 1;

pub struct GoldenCheck {
    pub name: &'static str,
    pub script: &'static str,
    /// Printed lines, newline-separated.
    pub expected: &'static str,
}

macro_rules! example {
    ($body:literal) => {
        concat!("ring A = [a, b]; ideal I = (a^2, a*b) in A; ", $body)
    };
}

pub const GOLDEN: &[GoldenCheck] = &[
    GoldenCheck { name: "power_of_example_ideal", script: example!("print I^2;"), expected: "(a^4, a^3*b, a^2*b^2)" },
    GoldenCheck {
        name: "disjoint_intersection_is_product",
        script: "ring A = [x, y]; print intersect(x, y); print intersect(x, y) == x*y;",
        expected: "(x*y)\ntrue",
    },
    GoldenCheck {
        name: "example_ideal_from_components",
        script: "ring A = [a, b]; print intersect(a, (a^2, b));",
        expected: "(a^2, a*b)",
    },
    GoldenCheck {
        name: "four_variable_saturation",
        script: "ring R = [x, y, z, t]; print saturate((x^2, x*y, z^2, z*t), (x, y, z, t));",
        expected: "(x^2, x*y, x*z, z^2, z*t)",
    },
    GoldenCheck {
        name: "four_variable_saturation_from_script",
        script: "ring R = [x, y, z, t];\nprint saturate((x^2,x*y,z^2,z*t),(x,y,z,t)) == (x*z, x^2, x*y, z^2, z*t);",
        expected: "true",
    },
    GoldenCheck {
        name: "example_saturation_by_maximal_ideal",
        script: example!("print saturate(I, (a, b));"),
        expected: "(a)",
    },
    GoldenCheck {
        name: "four_variable_irreducible_decomposition",
        script: "ring R = [x, y, z, t]; print decompose((x^2, x*y, z^2, z*t));",
        expected: "[(x, z), (y, z, x^2), (x, t, z^2), (y, t, x^2, z^2)]",
    },
    GoldenCheck {
        name: "four_variable_primary_decomposition",
        script: "ring R = [x, y, z, t]; print primdec((x^2, x*y, z^2, z*t));",
        expected: "[(x, z) -> (x, z), (x, y, z) -> (y, z, x^2), (x, z, t) -> (x, t, z^2), (x, y, z, t) -> (y, t, x^2, z^2)]",
    },
    GoldenCheck { name: "example_ass_and_min", script: example!("print ass(I); print min(I);"), expected: "{(a), (a, b)}\n{(a)}" },
    GoldenCheck {
        name: "example_ass_star",
        script: example!("print ass_star(I, 3);"),
        expected: "({(a), (a, b)}, true)",
    },
    GoldenCheck { name: "example_grade_zero", script: example!("print grade_zero((a, b), I);"), expected: "true" },
    GoldenCheck {
        name: "example_ass_of_quotient",
        script: example!("print ass_quot(I, 1);"),
        expected: "{(a), (a, b)}",
    },
    GoldenCheck {
        name: "example_saturated_powers",
        script: example!("print satpow(I, (a, b), 2); print satpow(I, b, 3);"),
        expected: "(a^2)\n(a^3)",
    },
    GoldenCheck { name: "example_saturator_min", script: example!("print saturator_min(I, 2);"), expected: "(a, b)" },
    GoldenCheck {
        name: "example_saturator_ass_trivial",
        script: example!(
            "print saturator_ass(I, 1); print saturator_ass(I, 2); print saturator_ass(I, 3); print saturator_ass(I, 4);"
        ),
        expected: "(1)\n(1)\n(1)\n(1)",
    },
    GoldenCheck { name: "example_symbolic_min", script: example!("print symb_min(I, 3);"), expected: "(a^3)" },
    GoldenCheck {
        name: "example_symbolic_ass",
        script: example!("print symb_ass(I, 2); print symb_ass(I, 2) == I^2;"),
        expected: "(a^4, a^3*b, a^2*b^2)\ntrue",
    },
    GoldenCheck { name: "example_regular_witness", script: example!("print witness(I, min);"), expected: "b" },
    GoldenCheck {
        name: "join_of_two_planes",
        script: "ring A = [x, y]; ring B = [z, t]; ring R = join(A, B); print R;",
        expected: "[x, y, z, t]",
    },
    GoldenCheck {
        name: "binomial_symbolic_ass_is_ordinary_power",
        script: "ring A = [a, b]; ring B = [c, d]; ring R = join(A, B);
            ideal I = (a^2, a*b) in A; ideal J = (c^2, c*d) in B;
            print binom_symb(I, J, 2, ass);
            print binom_symb(I, J, 2, ass) == (ext(I, R) + ext(J, R))^2;",
        expected: "(a^4, a^3*b, a^2*b^2, a^2*c^2, a^2*c*d, a*b*c^2, a*b*c*d, c^4, c^3*d, c^2*d^2)\ntrue",
    },
    GoldenCheck {
        name: "four_variable_associated_primes",
        script: "ring A = [x, y]; ring B = [z, t]; ring R = join(A, B);
            ideal I = (x^2, x*y) in A; ideal J = (z^2, z*t) in B;
            print ass(ext(I, R) + ext(J, R));
            assert check_ass(I, J, 1);",
        expected: "{(x, z), (x, y, z), (x, z, t), (x, y, z, t)}",
    },
    GoldenCheck {
        name: "zero_module_conventions",
        script: "ring A = [a, b]; print depth(1); print reg(1);",
        expected: "+inf\n-inf",
    },
    GoldenCheck {
        name: "script_symbolic_min",
        script: "ring A = [a, b];\nideal I = (a^2, a*b) in A; print symb_min(I,2);",
        expected: "(a^2)",
    },
    // No choice of saturators on the two sides reproduces the saturation by
    // the maximal ideal: each side's saturated ideal is one of three values,
    // all of which are reached by the saturators below.
    GoldenCheck {
        name: "saturation_by_maximal_ideal_does_not_factor",
        script: "ring A = [x, y]; ring B = [z, t]; ring R = join(A, B);
            ideal I = (x^2, x*y) in A; ideal J = (z^2, z*t) in B;
            ideal E = saturate(ext(I, R) + ext(J, R), (x, y, z, t)) in R;
            print E;
            print binom_sat(I, 1, J, 1, 1) != E;
            print binom_sat(I, 1, J, t, 1) != E;
            print binom_sat(I, 1, J, z, 1) != E;
            print binom_sat(I, y, J, 1, 1) != E;
            print binom_sat(I, y, J, t, 1) != E;
            print binom_sat(I, y, J, z, 1) != E;
            print binom_sat(I, x, J, 1, 1) != E;
            print binom_sat(I, x, J, t, 1) != E;
            print binom_sat(I, x, J, z, 1) != E;",
        expected: "(x^2, x*y, x*z, z^2, z*t)\ntrue\ntrue\ntrue\ntrue\ntrue\ntrue\ntrue\ntrue\ntrue",
    },
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub name: String,
    pub instance_script: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub suite: String,
    pub cases: usize,
    pub passes: usize,
    pub checks: Vec<CheckResult>,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("{} {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name));
        }
        for f in &self.failures {
            out.push_str(&format!("\n{}:\n  expected: {}\n  actual:   {}\n", f.name, f.expected, f.actual));
        }
        out.push_str(&format!("{}/{} golden checks passed\n", self.passes, self.cases));
        out
    }
}

/// Printed lines, then assertion failures and any error, as one string.
pub fn render_outcome(out: &RunOutcome) -> String {
    let mut parts = out.lines.clone();
    parts.extend(out.failures.iter().map(|f| f.to_string()));
    if let Some(e) = &out.error {
        parts.push(e.to_string());
    }
    parts.join("\n")
}

pub fn run_verify_with(kernel: Kernel) -> VerifyReport {
    let mut checks = Vec::new();
    let mut failures = Vec::new();
    for g in GOLDEN {
        let out = run_script(g.script, kernel);
        let actual = render_outcome(&out);
        let passed = out.succeeded() && actual == g.expected;
        if !passed {
            failures.push(Failure {
                name: g.name.into(),
                instance_script: g.script.into(),
                expected: g.expected.into(),
                actual,
            });
        }
        checks.push(CheckResult { name: g.name.into(), passed });
    }
    VerifyReport {
        schema_version: SCHEMA_VERSION,
        suite: "verify".into(),
        cases: checks.len(),
        passes: checks.iter().filter(|c| c.passed).count(),
        checks,
        failures,
    }
}

pub fn run_verify() -> VerifyReport {
    run_verify_with(Kernel::default())
}
