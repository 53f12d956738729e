//! Named verification suites: bounded sweeps that exercise the homology
//! pipelines and the connectivity calculus against closed-form answers and
//! internal consistency relations, reporting failures as counterexample
//! strings rather than panicking.

use serde::{Deserialize, Serialize};

use crate::arrangement::{betti_vector, conf_poincare_check, rconf_homology, HomologyRoute};
use crate::calculus::{
    approx_conn, compose_conn, derivative_conn, hofiber_shift, layer_conn, rimm_to_imm_conn,
    stage_map_conn, tower_report, CompositionMode, ConnValue, Status, TowerParams,
};
use crate::homology::homological_connectivity;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteName {
    Spheres,
    Crosscheck,
    ConfPoincare,
    CalculusCoherence,
}

impl SuiteName {
    pub const ALL: [SuiteName; 4] = [
        SuiteName::Spheres,
        SuiteName::Crosscheck,
        SuiteName::ConfPoincare,
        SuiteName::CalculusCoherence,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Spheres => "spheres",
            SuiteName::Crosscheck => "crosscheck",
            SuiteName::ConfPoincare => "conf_poincare",
            SuiteName::CalculusCoherence => "calculus_coherence",
        }
    }

    pub fn parse(name: &str) -> Option<SuiteName> {
        SuiteName::ALL.iter().copied().find(|s| s.as_str() == name)
    }
}

impl std::fmt::Display for SuiteName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one suite: how many cases ran and the description of every
/// case that failed.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: SuiteName,
    pub cases: u64,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn run_suite(name: SuiteName) -> SuiteReport {
    match name {
        SuiteName::Spheres => spheres_suite(),
        SuiteName::Crosscheck => crosscheck_suite(),
        SuiteName::ConfPoincare => conf_poincare_suite(),
        SuiteName::CalculusCoherence => calculus_coherence_suite(),
    }
}

pub fn run_all() -> Vec<SuiteReport> {
    SuiteName::ALL.iter().map(|&s| run_suite(s)).collect()
}

/// Fast-path checks: at the multiplicity bound the complement is a sphere
/// of dimension `(r-1)n - 1`, and below it the complement is contractible.
fn spheres_suite() -> SuiteReport {
    let mut cases = 0;
    let mut failures = Vec::new();
    for r in 2..=4u32 {
        for n in 1..=3u32 {
            cases += 1;
            let degree = ((r - 1) * n) as i64 - 1;
            match rconf_homology(r, n, r) {
                Ok(answer) => {
                    let ok = answer.route == HomologyRoute::SphereAtMultiplicity
                        && answer.reduced.betti(degree) == 1
                        && answer.reduced.degrees().collect::<Vec<_>>() == vec![degree]
                        && !answer.torsion_present
                        && answer.connectivity == ConnValue::Finite(degree - 1);
                    if !ok {
                        failures.push(format!(
                            "k = r = {r}, n = {n}: expected a single class in degree {degree}, \
                             got {}",
                            serde_json::to_string(&answer.reduced).unwrap_or_default()
                        ));
                    }
                }
                Err(e) => failures.push(format!("k = r = {r}, n = {n}: {e}")),
            }
        }
    }
    for r in 2..=5u32 {
        for k in 1..r {
            for n in 1..=3u32 {
                cases += 1;
                match rconf_homology(k, n, r) {
                    Ok(answer) => {
                        let ok = answer.route == HomologyRoute::Contractible
                            && answer.reduced.is_trivial()
                            && betti_vector(&answer.unreduced) == vec![1]
                            && answer.connectivity == ConnValue::Infinite;
                        if !ok {
                            failures.push(format!(
                                "k = {k} < r = {r}, n = {n}: expected a contractible \
                                 complement"
                            ));
                        }
                    }
                    Err(e) => failures.push(format!("k = {k}, n = {n}, r = {r}: {e}")),
                }
            }
        }
    }
    SuiteReport {
        suite: SuiteName::Spheres,
        cases,
        failures,
    }
}

/// Full lattice-sum versus wedge-model sweep over `2 <= r <= k <= 6`,
/// `n <= 3`. The pipelines are compared inside [`rconf_homology`]; the suite
/// additionally pins the connectivity to `(r-1)n - 2` exactly.
fn crosscheck_suite() -> SuiteReport {
    let mut cases = 0;
    let mut failures = Vec::new();
    for r in 2..=6u32 {
        for k in r..=6 {
            for n in 1..=3u32 {
                cases += 1;
                match rconf_homology(k, n, r) {
                    Ok(answer) => {
                        let observed = homological_connectivity(&answer.reduced);
                        if observed != answer.connectivity {
                            failures.push(format!(
                                "k = {k}, n = {n}, r = {r}: homology starts at connectivity \
                                 {observed}, claimed {}",
                                answer.connectivity
                            ));
                        }
                    }
                    Err(e) => failures.push(format!("k = {k}, n = {n}, r = {r}: {e}")),
                }
            }
        }
    }
    SuiteReport {
        suite: SuiteName::Crosscheck,
        cases,
        failures,
    }
}

/// Pairwise configuration spaces against the closed-form Poincare
/// polynomial, `k <= 5`, `n` in `{2, 3}`.
fn conf_poincare_suite() -> SuiteReport {
    let mut cases = 0;
    let mut failures = Vec::new();
    for k in 1..=5u32 {
        for n in 2..=3u32 {
            cases += 1;
            match conf_poincare_check(k, n) {
                Ok(check) if check.matches => {}
                Ok(check) => failures.push(format!(
                    "k = {k}, n = {n}: expected {:?}, computed {:?} (torsion free: {})",
                    check.expected, check.computed, check.torsion_free
                )),
                Err(e) => failures.push(format!("k = {k}, n = {n}: {e}")),
            }
        }
    }
    SuiteReport {
        suite: SuiteName::ConfPoincare,
        cases,
        failures,
    }
}

/// Internal consistency of the connectivity calculus over a parameter grid:
/// traced approximations replayed through the composition rule, fiber
/// relations between stage maps and layers, embedding-tower closed forms,
/// and full report validation.
fn calculus_coherence_suite() -> SuiteReport {
    let mut cases = 0;
    let mut failures = Vec::new();
    let mut fail = |msg: String| failures.push(msg);
    for m in 1..=6u32 {
        for n in m..=6u32 {
            for r in 2..=5u32 {
                let p = match TowerParams::new(m, n, r, r) {
                    Ok(p) => p,
                    Err(e) => {
                        fail(format!("m = {m}, n = {n}, r = {r}: {e}"));
                        continue;
                    }
                };
                let base = rimm_to_imm_conn(&p);
                if base.validate().is_err() {
                    fail(format!(
                        "m = {m}, n = {n}, r = {r}: inclusion trace invalid"
                    ));
                }
                // Replay the proved approximations through the composition
                // rule and compare with the closed form.
                for k in 1..p.r {
                    cases += 1;
                    let mut derived = base.value;
                    let mut replay_ok = true;
                    if k >= 2 {
                        let mut equivalence = ConnValue::Infinite;
                        for stage in 2..=k {
                            match stage_map_conn(stage, &p) {
                                Ok(label) => {
                                    equivalence = match compose_conn(
                                        equivalence,
                                        label.value,
                                        CompositionMode::Both,
                                    ) {
                                        Ok(v) => v,
                                        Err(e) => {
                                            fail(format!(
                                                "m = {m}, n = {n}, r = {r}, k = {k}: {e}"
                                            ));
                                            replay_ok = false;
                                            break;
                                        }
                                    };
                                }
                                Err(e) => {
                                    fail(format!("m = {m}, n = {n}, r = {r}, k = {k}: {e}"));
                                    replay_ok = false;
                                    break;
                                }
                            }
                        }
                        if replay_ok {
                            match compose_conn(derived, equivalence, CompositionMode::RightHigher) {
                                Ok(v) => derived = v,
                                Err(e) => {
                                    fail(format!("m = {m}, n = {n}, r = {r}, k = {k}: {e}"));
                                    replay_ok = false;
                                }
                            }
                        }
                    }
                    if replay_ok {
                        match approx_conn(k, &p) {
                            Ok(label) => {
                                if label.value != derived || label.status != Status::Proved {
                                    fail(format!(
                                        "m = {m}, n = {n}, r = {r}, k = {k}: traced value \
                                         {derived} vs closed form {}",
                                        label.value
                                    ));
                                }
                                if label.validate().is_err() {
                                    fail(format!(
                                        "m = {m}, n = {n}, r = {r}, k = {k}: approx trace \
                                         invalid"
                                    ));
                                }
                            }
                            Err(e) => fail(format!("m = {m}, n = {n}, r = {r}, k = {k}: {e}")),
                        }
                    }
                }
                // Fiber relation between stage maps and layers up to the
                // multiplicity bound.
                for k in 2..=p.r {
                    cases += 1;
                    match (layer_conn(k, &p), stage_map_conn(k, &p)) {
                        (Ok(layer), Ok(stage)) => {
                            if hofiber_shift(stage.value) != layer.value {
                                fail(format!(
                                    "m = {m}, n = {n}, r = {r}, k = {k}: stage map {} does \
                                     not fiber onto layer {}",
                                    stage.value, layer.value
                                ));
                            }
                        }
                        (Err(e), _) | (_, Err(e)) => {
                            fail(format!("m = {m}, n = {n}, r = {r}, k = {k}: {e}"));
                        }
                    }
                }
                // The assembled report must validate.
                cases += 1;
                match tower_report(&p) {
                    Ok(report) => {
                        if let Err(e) = report.validate() {
                            fail(format!("m = {m}, n = {n}, r = {r}: report invalid: {e}"));
                        }
                    }
                    Err(e) => fail(format!("m = {m}, n = {n}, r = {r}: {e}")),
                }
            }
            // Embedding tower closed forms.
            let p = match TowerParams::new(m, n, 2, 5) {
                Ok(p) => p,
                Err(_) => continue,
            };
            for k in 2..=5u32 {
                cases += 1;
                let expected_approx =
                    ConnValue::Finite(k as i64 * (n as i64 - m as i64 - 2) - m as i64 + 1);
                let expected_derivative = ConnValue::Finite((k as i64 - 1) * (n as i64 - 2));
                match (approx_conn(k, &p), derivative_conn(k, &p)) {
                    (Ok(approx), Ok(derivative)) => {
                        if approx.value != expected_approx
                            || approx.status != Status::Proved
                            || derivative.value != expected_derivative
                            || derivative.status != Status::Proved
                        {
                            fail(format!(
                                "embedding m = {m}, n = {n}, k = {k}: approx {} (expected \
                                 {expected_approx}), derivative {} (expected \
                                 {expected_derivative})",
                                approx.value, derivative.value
                            ));
                        }
                    }
                    (Err(e), _) | (_, Err(e)) => {
                        fail(format!("embedding m = {m}, n = {n}, k = {k}: {e}"));
                    }
                }
            }
        }
    }
    // Conjectural mode assembles and validates.
    cases += 1;
    match TowerParams::new(1, 3, 3, 4).map(|p| p.with_conjectural(true)) {
        Ok(p) => match tower_report(&p) {
            Ok(report) => {
                if report.status != Status::Conjectural || report.validate().is_err() {
                    fail("conjectural tower (1, 3, 3, 4) failed validation".to_string());
                }
            }
            Err(e) => fail(format!("conjectural tower (1, 3, 3, 4): {e}")),
        },
        Err(e) => fail(format!("conjectural tower (1, 3, 3, 4): {e}")),
    }
    SuiteReport {
        suite: SuiteName::CalculusCoherence,
        cases,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for name in SuiteName::ALL {
            assert_eq!(SuiteName::parse(name.as_str()), Some(name));
            assert_eq!(
                serde_json::to_string(&name).unwrap(),
                format!("\"{}\"", name.as_str())
            );
        }
        assert_eq!(SuiteName::parse("nonsense"), None);
    }

    #[test]
    fn fast_suites_pass() {
        for name in [
            SuiteName::Spheres,
            SuiteName::ConfPoincare,
            SuiteName::CalculusCoherence,
        ] {
            let report = run_suite(name);
            assert!(
                report.passed(),
                "{} failed: {:?}",
                report.suite,
                report.failures
            );
            assert!(report.cases > 0);
        }
    }

    #[test]
    fn crosscheck_suite_passes() {
        let report = run_suite(SuiteName::Crosscheck);
        assert!(report.passed(), "crosscheck failed: {:?}", report.failures);
        assert_eq!(report.cases, 45);
    }
}
