//! The core verification cases plus a check of the bundled fixture files.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use chs_core::graph::{doubled_triangle_pair, Graph};
use chs_core::matrix::Matrix;
use chs_core::matrix_file::{parse_matrix, MatrixData};
use chs_core::suite::{self, CaseOutcome, Checker};
use chs_core::Exact;

use crate::commands::Record;

#[derive(Clone, Copy, Debug)]
enum Case {
    Core(suite::Case),
    Fixtures,
}

const FIXTURES_NUMBER: usize = 12;

impl Case {
    fn all() -> Vec<Case> {
        let mut v: Vec<_> = suite::cases().into_iter().map(Case::Core).collect();
        v.push(Case::Fixtures);
        v
    }

    fn number(&self) -> usize {
        match self {
            Case::Core(c) => c.number,
            Case::Fixtures => FIXTURES_NUMBER,
        }
    }

    fn group(&self) -> &'static str {
        match self {
            Case::Core(c) => c.group,
            Case::Fixtures => "fixtures",
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Case::Core(c) => c.name,
            Case::Fixtures => "fixtures",
        }
    }

    fn summary(&self) -> &'static str {
        match self {
            Case::Core(c) => c.summary,
            Case::Fixtures => "bundled example files encode the built-in matrices",
        }
    }

    fn matches(&self, filter: &str) -> bool {
        match self {
            Case::Core(c) => c.matches(filter),
            Case::Fixtures => filter == "fixtures" || filter.parse() == Ok(FIXTURES_NUMBER),
        }
    }

    fn run(&self, seed: u64) -> CaseOutcome {
        match self {
            Case::Core(c) => c.run(seed),
            Case::Fixtures => {
                let mut c = Checker::default();
                check_fixtures(&mut c);
                c.finish()
            }
        }
    }
}

fn select(filters: &[String]) -> Result<Vec<Case>, String> {
    let all = Case::all();
    if filters.is_empty() {
        return Ok(all);
    }
    if let Some(bad) = filters.iter().find(|f| !all.iter().any(|c| c.matches(f))) {
        return Err(format!("no selftest case matches {bad:?}"));
    }
    Ok(all.into_iter().filter(|c| filters.iter().any(|f| c.matches(f))).collect())
}

const MATRIX_FIXTURES: [(&str, &str); 8] = [
    ("fib.mat", include_str!("../fixtures/fib.mat")),
    ("cyclic3.mat", include_str!("../fixtures/cyclic3.mat")),
    ("jordan.mat", include_str!("../fixtures/jordan.mat")),
    ("zero.mat", include_str!("../fixtures/zero.mat")),
    ("nilpotent_a.mat", include_str!("../fixtures/nilpotent_a.mat")),
    ("nilpotent_b.mat", include_str!("../fixtures/nilpotent_b.mat")),
    ("graph_a.mat", include_str!("../fixtures/graph_a.mat")),
    ("graph_b.mat", include_str!("../fixtures/graph_b.mat")),
];

const EDGE_FIXTURES: [(&str, &str); 3] = [
    ("k3.edges", include_str!("../fixtures/k3.edges")),
    ("two_triangles.edges", include_str!("../fixtures/two_triangles.edges")),
    ("hexagon.edges", include_str!("../fixtures/hexagon.edges")),
];

fn expected_matrix(name: &str) -> Matrix<Exact> {
    let (na, nb) = suite::nilpotent_pair();
    let (ga, gb) = doubled_triangle_pair();
    match name {
        "fib.mat" => suite::fibonacci_matrix(),
        "cyclic3.mat" => suite::cyclic_shift(),
        "jordan.mat" => suite::jordan_cell(),
        "zero.mat" => Matrix::zeros(2),
        "nilpotent_a.mat" => na,
        "nilpotent_b.mat" => nb,
        "graph_a.mat" | "two_triangles.edges" => ga,
        "graph_b.mat" | "hexagon.edges" => gb,
        "k3.edges" => Graph::complete(3).adjacency().into_inner(),
        other => unreachable!("unknown fixture {other}"),
    }
}

fn check_fixtures(c: &mut Checker) {
    for (name, text) in MATRIX_FIXTURES {
        match parse_matrix(text) {
            Ok(MatrixData::Exact(m)) => c.check(m == expected_matrix(name), || format!("{name} differs from the built-in matrix")),
            Ok(MatrixData::Approx(_)) => c.check(false, || format!("{name} should hold rational entries")),
            Err(e) => c.check(false, || format!("{name}: {e}")),
        }
    }
    for (name, text) in EDGE_FIXTURES {
        match Graph::parse(text) {
            Ok(g) => c.check(g.adjacency().into_inner() == expected_matrix(name), || format!("{name} differs from the built-in graph")),
            Err(e) => c.check(false, || format!("{name}: {e}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseInfo {
    pub number: usize,
    pub group: String,
    pub name: String,
    pub summary: String,
}

impl CaseInfo {
    fn of(c: &Case) -> Self {
        Self { number: c.number(), group: c.group().into(), name: c.name().into(), summary: c.summary().into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ListRecord {
    pub cases: Vec<CaseInfo>,
}

impl Record for ListRecord {
    fn human(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            let _ = writeln!(out, "{:>2} {:<14} {:<18} {}", c.number, c.group, c.name, c.summary);
        }
        out
    }
}

/// Lists the cases `--only` would select; unknown filters list nothing.
pub fn list(filters: &[String]) -> ListRecord {
    ListRecord { cases: select(filters).unwrap_or_default().iter().map(CaseInfo::of).collect() }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    #[serde(flatten)]
    pub info: CaseInfo,
    pub passed: bool,
    pub checks: usize,
    pub failures: usize,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelftestRecord {
    pub seed: u64,
    pub cases: Vec<CaseResult>,
    pub passed: usize,
    pub total: usize,
}

impl Record for SelftestRecord {
    fn human(&self) -> String {
        let mut out = String::new();
        for r in &self.cases {
            let _ = writeln!(
                out,
                "{} {:>2} {:<18} {:>6.2}s  {}: {}",
                if r.passed { "PASS" } else { "FAIL" },
                r.info.number,
                r.info.name,
                r.seconds,
                r.info.summary,
                r.detail
            );
        }
        let _ = writeln!(out, "{} of {} cases passed (seed {})", self.passed, self.total, self.seed);
        out
    }

    fn passed(&self) -> bool {
        self.passed == self.total
    }
}

pub fn run(seed: u64, filters: &[String]) -> Result<SelftestRecord, String> {
    let cases: Vec<_> = select(filters)?
        .iter()
        .map(|c| {
            let start = Instant::now();
            let o = c.run(seed);
            CaseResult {
                info: CaseInfo::of(c),
                passed: o.passed,
                checks: o.checks,
                failures: o.failures,
                detail: o.detail,
                seconds: start.elapsed().as_secs_f64(),
            }
        })
        .collect();
    let passed = cases.iter().filter(|c| c.passed).count();
    Ok(SelftestRecord { seed, total: cases.len(), passed, cases })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_consistent() {
        let r = run(suite::DEFAULT_SEED, &["fixtures".into()]).unwrap();
        assert_eq!(r.total, 1);
        assert!(r.cases[0].passed, "{}", r.cases[0].detail);
        assert_eq!(r.cases[0].checks, MATRIX_FIXTURES.len() + EDGE_FIXTURES.len());
    }

    #[test]
    fn selection() {
        assert_eq!(select(&[]).unwrap().len(), suite::cases().len() + 1);
        let g = select(&["graphs".into(), "12".into()]).unwrap();
        assert_eq!(g.iter().map(Case::name).collect::<Vec<_>>(), ["doubled-triangles", "fixtures"]);
        assert!(select(&["nope".into()]).is_err());
        assert!(list(&["nope".into()]).cases.is_empty());
    }

    #[test]
    fn numbers_are_unique() {
        let mut n: Vec<_> = Case::all().iter().map(Case::number).collect();
        n.dedup();
        assert_eq!(n, (1..=FIXTURES_NUMBER).collect::<Vec<_>>());
    }
}
