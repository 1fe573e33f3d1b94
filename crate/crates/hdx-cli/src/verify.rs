//! Named verification suites: batches of exact cross-checks reported one
//! line per check.
//!
//! Each suite recomputes an identity along two independent routes and
//! compares the results exactly; a suite passes only if every check passes.

use hdx::complexes::{hypercube, random_subcomplex_of_simplex, RelativePair};
use hdx::expansion::{cheeger_co, cheeger_ho, dual_pair, ExpansionError, PairOperators};
use serde_json::json;

/// Outcome of one named check inside a suite.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Human-readable statement of what was compared.
    pub detail: String,
}

/// All checks of one suite run.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    #[must_use]
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// One `PASS`/`FAIL` line per check plus a summary line.
    #[must_use]
    pub fn text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag} {}: {}\n", c.name, c.detail));
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        out.push_str(&format!(
            "suite {}: {passed}/{} checks passed\n",
            self.suite,
            self.checks.len()
        ));
        out
    }

    /// Canonical single-line JSON encoding of the report.
    #[must_use]
    pub fn json(&self) -> String {
        let checks: Vec<_> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail}))
            .collect();
        let doc = json!({
            "suite": self.suite,
            "checks": checks,
            "all_pass": self.all_pass(),
        });
        format!("{doc}\n")
    }
}

/// A suite could not run to completion.
#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    /// The suite name is not recognized.
    #[error("unknown suite `{0}`; available suites: hypercube, duality")]
    UnknownSuite(String),
    /// A check inside the suite could not finish (budget, range, ...).
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
}

/// Runs the named suite. Unknown names are a usage error; budget exhaustion
/// inside a check propagates unchanged.
pub fn run_suite(
    name: &str,
    trials: u64,
    seed: u64,
    budget: u64,
) -> Result<SuiteReport, SuiteError> {
    match name {
        "hypercube" => suite_hypercube(budget),
        "duality" => suite_duality(trials, seed, budget),
        other => Err(SuiteError::UnknownSuite(other.to_string())),
    }
}

/// Names accepted by [`run_suite`].
pub const SUITES: &[&str] = &["hypercube", "duality"];

/// The cohomological Cheeger constant of the solid cube equals 1 in every
/// dimension below the top. (The homological constant genuinely differs:
/// an antipodal 3-edge path in the 3-cube has boundary weight 2 and
/// systolic norm 3, so it is not part of this identity.)
fn suite_hypercube(budget: u64) -> Result<SuiteReport, SuiteError> {
    let mut checks = Vec::new();
    for (d, k) in [(2usize, 0usize), (2, 1), (3, 0), (3, 1), (3, 2)] {
        let x = hypercube(d).expect("cube dimension in range");
        let ops = PairOperators::absolute(&x);
        let co = cheeger_co(&ops, k, budget).map_err(SuiteError::Expansion)?;
        let pass = *co.value.numer() == 1 && *co.value.denom() == 1;
        checks.push(Check {
            name: format!("cube-d{d}-k{k}"),
            pass,
            detail: format!("cohomological expansion {}, expected 1", co.value),
        });
    }
    Ok(SuiteReport { suite: "hypercube".into(), checks })
}

/// The homological Cheeger constant of a random subcomplex of the solid
/// 5-simplex equals the cohomological Cheeger constant of its complement
/// dual pair in the complementary dimension, for every dimension.
fn suite_duality(trials: u64, seed: u64, budget: u64) -> Result<SuiteReport, SuiteError> {
    const N: u32 = 6;
    let mut checks = Vec::new();
    for t in 0..trials {
        let trial_seed = seed.wrapping_add(t);
        let x = random_subcomplex_of_simplex(N, trial_seed).expect("parameters in range");
        let (ambient, dual) = dual_pair(&x, N).expect("subcomplex of the solid simplex");
        let pair = RelativePair::new(&ambient, &dual).expect("dual is a subcomplex");
        let pair_ops = PairOperators::new(&pair);
        let x_ops = PairOperators::absolute(&x);
        let mut pass = true;
        let mut mismatch = String::new();
        let mut compared = 0usize;
        for k in 0..x.n_levels() {
            let ho = cheeger_ho(&x_ops, k, budget);
            let co = cheeger_co(&pair_ops, N as usize - k - 2, budget);
            match (ho, co) {
                (Ok(a), Ok(b)) => {
                    compared += 1;
                    if a.value != b.value {
                        pass = false;
                        mismatch = format!(" mismatch at k={k}: {} vs {}", a.value, b.value);
                    }
                }
                (
                    Err(ExpansionError::DegenerateSpace { .. }),
                    Err(ExpansionError::DegenerateSpace { .. }),
                ) => {}
                (Err(e @ ExpansionError::BudgetExceeded { .. }), _)
                | (_, Err(e @ ExpansionError::BudgetExceeded { .. })) => return Err(e.into()),
                (a, b) => {
                    pass = false;
                    mismatch = format!(" outcomes differ at k={k}: {a:?} vs {b:?}");
                }
            }
        }
        checks.push(Check {
            name: format!("dual-seed{trial_seed}"),
            pass,
            detail: format!(
                "complex `{}`: {compared} dimension(s) compared against the complement dual{mismatch}",
                x.name()
            ),
        });
    }
    Ok(SuiteReport { suite: "duality".into(), checks })
}
