//! Executable verdicts for the stability statements, each producing a
//! [`StabilityReport`].
//!
//! Checks never return an error for a failing statement: the failure is the
//! report's counterexample. When several cases fail, the reported one is the
//! smallest `n`, then the lexicographically smallest partition.

use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::betti::MemoTable;
use crate::error::{Error, Result};
use crate::kostka::{flag_poincare, KostkaOracle};
use crate::partition::{lambda_max, partitions, threshold, Partition};
use crate::poly::{big_json, RationalPoly};

const GOLDEN_TABLE: &str = include_str!("../data/f_table.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityReport {
    pub check: String,
    pub params: Value,
    pub verdict: Verdict,
    pub vacuous: bool,
    pub counterexample: Option<Value>,
    pub elapsed_ms: f64,
    /// Number of individual assertions evaluated.
    #[serde(skip)]
    pub cases: usize,
    /// Common dimension of the compared modules, where the check has one.
    #[serde(skip)]
    pub dimension: Option<BigUint>,
}

impl StabilityReport {
    fn finish(
        check: &str,
        params: Value,
        started: Instant,
        cases: usize,
        counterexample: Option<Value>,
    ) -> Self {
        StabilityReport {
            check: check.to_string(),
            params,
            verdict: if counterexample.is_none() {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
            vacuous: cases == 0,
            counterexample,
            elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
            cases,
            dimension: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// JSON with `elapsed_ms` zeroed, for byte-level comparisons.
    pub fn to_json_untimed(&self) -> Value {
        let mut v = self.to_json();
        v["elapsed_ms"] = json!(0.0);
        v
    }
}

/// Folds sub-reports into one: fails with the first failing sub-report's
/// counterexample (tagged with that sub-report's params), vacuous only if
/// every sub-report was.
pub fn aggregate(check: &str, params: Value, reports: &[StabilityReport]) -> StabilityReport {
    let counterexample = reports.iter().find(|r| !r.passed()).map(|r| {
        json!({
            "params": r.params,
            "case": r.counterexample,
        })
    });
    StabilityReport {
        check: check.to_string(),
        params,
        verdict: if counterexample.is_none() {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        vacuous: reports.iter().all(|r| r.vacuous),
        counterexample,
        elapsed_ms: reports.iter().map(|r| r.elapsed_ms).sum(),
        cases: reports.iter().map(|r| r.cases).sum(),
        dimension: None,
    }
}

/// One published `f_{k,r}` value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub r: usize,
    pub k: usize,
    pub poly: RationalPoly,
    /// The comment line preceding the record.
    pub source: String,
}

/// Parses the embedded corpus of published `f_{k,r}` values.
pub fn golden_table() -> Vec<TableEntry> {
    parse_table(GOLDEN_TABLE).expect("embedded table is well formed")
}

fn parse_table(text: &str) -> Result<Vec<TableEntry>> {
    let mut out = Vec::new();
    let mut source = String::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if let Some(comment) = line.strip_prefix('#') {
            source = comment.trim().to_string();
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let bad = || Error::InvalidInput(format!("table line {}: {line:?}", idx + 1));
        let (head, nums) = line.split_once('|').ok_or_else(bad)?;
        let head: Vec<i64> = head
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        let nums: Vec<i64> = nums
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        let [r, k, den] = head[..] else {
            return Err(bad());
        };
        out.push(TableEntry {
            r: r as usize,
            k: k as usize,
            poly: RationalPoly::from_scaled_ints(&nums, den),
            source: source.clone(),
        });
    }
    Ok(out)
}

fn integral(value: &BigRational) -> Option<BigInt> {
    value.is_integer().then(|| value.to_integer())
}

/// Runs the checks against a Betti memo table and a Kostka oracle.
#[derive(Clone, Copy, Debug)]
pub struct Checker<'a> {
    pub memo: &'a MemoTable,
    pub kostka: &'a KostkaOracle,
}

impl Checker<'static> {
    pub fn global() -> Self {
        Checker {
            memo: MemoTable::global(),
            kostka: KostkaOracle::global(),
        }
    }
}

impl<'a> Checker<'a> {
    pub fn new(memo: &'a MemoTable, kostka: &'a KostkaOracle) -> Self {
        Checker { memo, kostka }
    }

    /// `h^{2k}(λ) = f_{k,r}(|λ|)` for every `λ` with at most `r` parts,
    /// `λ ⊃ A_{k,r}` and `|A_{k,r}| ≤ |λ| ≤ n_max`.
    pub fn dim_stability(&self, k: usize, r: usize, n_max: usize) -> Result<StabilityReport> {
        let f = self.memo.f_poly(k, r)?;
        self.dim_stability_against(k, r, n_max, &f)
    }

    /// As [`Checker::dim_stability`], with a caller-supplied polynomial in
    /// place of `f_{k,r}`.
    pub fn dim_stability_against(
        &self,
        k: usize,
        r: usize,
        n_max: usize,
        f: &RationalPoly,
    ) -> Result<StabilityReport> {
        let started = Instant::now();
        let base = threshold(k, r)?;
        let params = json!({"k": k, "r": r, "n_max": n_max});
        let mut cases = 0;
        for n in base.size()..=n_max {
            let expected = f.eval_int(n as i64);
            let expected_int = integral(&expected);
            for lambda in qualifying(n, r, &base) {
                cases += 1;
                let actual = BigInt::from(self.memo.betti(&lambda, k));
                if expected_int.as_ref() != Some(&actual) {
                    let cx = json!({
                        "n": n,
                        "lambda": lambda,
                        "degree": k,
                        "expected": expected.to_string(),
                        "actual": big_json(&actual),
                    });
                    return Ok(StabilityReport::finish("dim", params, started, cases, Some(cx)));
                }
            }
        }
        Ok(StabilityReport::finish("dim", params, started, cases, None))
    }

    /// All `λ ⊢ n` with at most `r` parts containing `A_{k,r}` carry the same
    /// graded piece `H^{2k}`, equal to that of `λ_max`, of dimension
    /// `f_{k,r}(n)`.
    pub fn rep_stability(&self, k: usize, r: usize, n: usize) -> Result<StabilityReport> {
        let started = Instant::now();
        let base = threshold(k, r)?;
        let params = json!({"k": k, "r": r, "n": n});
        if n < base.size() {
            return Ok(StabilityReport::finish("rep", params, started, 0, None));
        }
        let top = lambda_max(n, k, r)?;
        let reference = self.kostka.decompose(&top, k);
        let dimension = reference.dimension();
        let expected_dim = self.memo.f_poly(k, r)?.eval_int(n as i64);
        let mut cases = 1;
        if integral(&expected_dim) != Some(BigInt::from(dimension.clone())) {
            let cx = json!({
                "lambda": top,
                "degree": k,
                "expected_dimension": expected_dim.to_string(),
                "actual_dimension": big_json(&dimension),
            });
            return Ok(StabilityReport::finish("rep", params, started, cases, Some(cx)));
        }
        for lambda in qualifying(n, r, &base) {
            cases += 1;
            if !top.dominates(&lambda)? {
                let cx = json!({"lambda": lambda, "lambda_max": top, "reason": "not dominated by lambda_max"});
                return Ok(StabilityReport::finish("rep", params, started, cases, Some(cx)));
            }
            let decomposition = self.kostka.decompose(&lambda, k);
            if decomposition.terms != reference.terms {
                let cx = json!({
                    "lambda": lambda,
                    "lambda_max": top,
                    "degree": k,
                    "expected": reference.terms_json(),
                    "actual": decomposition.terms_json(),
                });
                return Ok(StabilityReport::finish("rep", params, started, cases, Some(cx)));
            }
        }
        let mut report = StabilityReport::finish("rep", params, started, cases, None);
        report.dimension = Some(dimension);
        Ok(report)
    }

    /// Coefficientwise monotonicity of graded multiplicities along
    /// dominance: `λ ≥ λ'` implies `m_μ(H^{2k}(λ)) ≤ m_μ(H^{2k}(λ'))`.
    pub fn monotonicity(&self, n: usize) -> StabilityReport {
        let started = Instant::now();
        let params = json!({"n": n});
        let mut all: Vec<Partition> = partitions(n, None).collect();
        all.sort();
        let mut cases = 0;
        for big in &all {
            for small in &all {
                if !big.dominates(small).expect("same size") {
                    continue;
                }
                for mu in &all {
                    for k in 0..=small.n_stat().max(big.n_stat()) {
                        cases += 1;
                        let upper = self.kostka.graded_mult(mu, small, k).expect("same size");
                        let lower = self.kostka.graded_mult(mu, big, k).expect("same size");
                        if lower > upper {
                            let cx = json!({
                                "lambda": big,
                                "lambda_prime": small,
                                "mu": mu,
                                "degree": k,
                                "mult_lambda": big_json(&lower),
                                "mult_lambda_prime": big_json(&upper),
                            });
                            return StabilityReport::finish("mono", params, started, cases, Some(cx));
                        }
                    }
                }
            }
        }
        StabilityReport::finish("mono", params, started, cases, None)
    }

    /// For every `λ ⊢ n` with at least `k+1` parts and `k ≤ k_max`:
    /// `h^{2k}(λ) = h^{2k}(B_n) = f_k(n)` and `H^{2k}(λ) ≅ H^{2k}(1^n)`.
    pub fn flag_corollary(&self, n: usize, k_max: usize) -> StabilityReport {
        let started = Instant::now();
        let params = json!({"n": n, "k_max": k_max});
        let flag = flag_poincare(n);
        let column = Partition::column(n);
        let mut all: Vec<Partition> = partitions(n, None).collect();
        all.sort();
        let mut cases = 0;
        for lambda in &all {
            for k in 0..=k_max {
                if lambda.len() < k + 1 {
                    continue;
                }
                cases += 1;
                let actual = self.memo.betti(lambda, k);
                let limit = self.memo.f_limit(k).eval_int(n as i64);
                let flag_k = flag.coeff(k);
                if actual != flag_k || integral(&limit) != Some(BigInt::from(actual.clone())) {
                    let cx = json!({
                        "lambda": lambda,
                        "degree": k,
                        "betti": big_json(&actual),
                        "flag_coefficient": big_json(&flag_k),
                        "f_limit_value": limit.to_string(),
                    });
                    return StabilityReport::finish("flag", params, started, cases, Some(cx));
                }
                let ours = self.kostka.decompose(lambda, k);
                let flag_piece = self.kostka.decompose(&column, k);
                if ours.terms != flag_piece.terms {
                    let cx = json!({
                        "lambda": lambda,
                        "degree": k,
                        "expected": flag_piece.terms_json(),
                        "actual": ours.terms_json(),
                    });
                    return StabilityReport::finish("flag", params, started, cases, Some(cx));
                }
            }
        }
        StabilityReport::finish("flag", params, started, cases, None)
    }

    /// Compares `f_poly` with every published table entry.
    pub fn published_table(&self) -> StabilityReport {
        self.table_against(&golden_table())
    }

    pub fn table_against(&self, entries: &[TableEntry]) -> StabilityReport {
        let started = Instant::now();
        let mut cases = 0;
        for entry in entries {
            cases += 1;
            let ours = self.memo.f_poly(entry.k, entry.r);
            if ours.as_ref() != Ok(&entry.poly) {
                let actual = match ours {
                    Ok(p) => p.to_string(),
                    Err(e) => e.to_string(),
                };
                let cx = json!({
                    "r": entry.r,
                    "k": entry.k,
                    "source": entry.source,
                    "expected": entry.poly.to_string(),
                    "actual": actual,
                });
                return StabilityReport::finish("table", json!({}), started, cases, Some(cx));
            }
        }
        StabilityReport::finish("table", json!({}), started, cases, None)
    }
}

/// Partitions of `n` with at most `r` parts containing `base`, ascending.
fn qualifying(n: usize, r: usize, base: &Partition) -> Vec<Partition> {
    let mut out: Vec<_> = partitions(n, Some(r)).filter(|l| l.contains(base)).collect();
    out.sort();
    out
}

pub fn check_dim_stability(k: usize, r: usize, n_max: usize) -> Result<StabilityReport> {
    Checker::global().dim_stability(k, r, n_max)
}

pub fn check_rep_stability(k: usize, r: usize, n: usize) -> Result<StabilityReport> {
    Checker::global().rep_stability(k, r, n)
}

pub fn check_monotonicity(n: usize) -> StabilityReport {
    Checker::global().monotonicity(n)
}

pub fn check_flag_corollary(n: usize, k_max: usize) -> StabilityReport {
    Checker::global().flag_corollary(n, k_max)
}

pub fn verify_published_table() -> StabilityReport {
    Checker::global().published_table()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn checker() -> Checker<'static> {
        Checker::global()
    }

    #[test]
    fn golden_table_shape() {
        let entries = golden_table();
        assert_eq!(entries.len(), 47);
        for e in &entries {
            assert_eq!(e.poly.degree(), Some(e.k), "{}", e.source);
            assert!(e.source.contains(&format!("r={}", e.r)));
            assert!(e.source.contains(&format!("k={}", e.k)));
        }
        let f32 = entries.iter().find(|e| e.r == 2 && e.k == 3).unwrap();
        assert_eq!(f32.poly.to_string(), "(x^3-6x^2+5x)/6");
        let f66 = entries.iter().find(|e| e.r == 6 && e.k == 6).unwrap();
        assert_eq!(f66.poly.to_string(), "(x^6+9x^5-5x^4-165x^3-356x^2-204x+720)/720");
    }

    #[test]
    fn table_parser_rejects_garbage() {
        assert!(parse_table("2 3 | 1 2").is_err());
        assert!(parse_table("2 3 6 1 2").is_err());
        assert!(parse_table("2 3 6 | 1 x").is_err());
    }

    #[test]
    fn table_reproduced() {
        let report = checker().published_table();
        assert!(report.passed(), "{}", report.to_json());
        assert_eq!(report.cases, 47);
        assert_eq!(
            checker().memo.f_poly(7, 9).unwrap(),
            checker().memo.f_poly(7, 8).unwrap()
        );
    }

    #[test]
    fn table_mismatch_is_reported() {
        let mut entries = golden_table();
        entries[3].poly = &entries[3].poly + &RationalPoly::one();
        let report = checker().table_against(&entries);
        assert!(!report.passed());
        assert_eq!(report.counterexample.as_ref().unwrap()["k"], json!(3));
    }

    #[test]
    fn dim_stability_examples() {
        let report = checker().dim_stability(2, 3, 12).unwrap();
        assert!(report.passed() && !report.vacuous);
        for r in 1..=5 {
            let report = checker().dim_stability(0, r, 12).unwrap();
            assert!(report.passed() && !report.vacuous);
        }
        assert!(checker().dim_stability(1, 0, 5).is_err());
    }

    #[test]
    fn dim_stability_detects_perturbation() {
        for (k, r) in [(2, 3), (3, 2), (4, 4)] {
            let f = &checker().memo.f_poly(k, r).unwrap() + &RationalPoly::one();
            let report = checker().dim_stability_against(k, r, 12, &f).unwrap();
            assert_eq!(report.verdict, Verdict::Fail);
            let cx = report.counterexample.unwrap();
            assert_eq!(cx["n"], json!(threshold(k, r).unwrap().size()));
        }
    }

    #[test]
    fn dim_stability_vacuous_range() {
        let report = checker().dim_stability(5, 3, 4).unwrap();
        assert!(report.passed());
        assert!(report.vacuous);
    }

    #[test]
    fn rep_stability_examples() {
        let report = checker().rep_stability(1, 3, 7).unwrap();
        assert!(report.passed() && !report.vacuous);
        for (k, r) in [(2, 3), (3, 3), (4, 2)] {
            let n = threshold(k, r).unwrap().size();
            let report = checker().rep_stability(k, r, n).unwrap();
            assert!(report.passed());
            assert_eq!(report.cases, 2);
        }
        let report = checker().rep_stability(2, 2, 8).unwrap();
        assert!(report.passed());
        assert_eq!(report.dimension, Some(BigUint::from(20u32)));
        assert_eq!(checker().memo.f_poly(2, 2).unwrap().eval_int(8), BigRational::from_integer(20.into()));
        assert!(checker().rep_stability(3, 3, 4).unwrap().vacuous);
    }

    #[test]
    fn monotonicity_examples() {
        for n in 1..=5 {
            let report = checker().monotonicity(n);
            assert!(report.passed(), "{}", report.to_json());
        }
    }

    #[test]
    fn betti_monotone_along_dominance() {
        for n in 1..=7 {
            let all: Vec<_> = partitions(n, None).collect();
            for a in &all {
                for b in &all {
                    if a.dominates(b).unwrap() {
                        for k in 0..=b.n_stat() {
                            assert!(checker().memo.betti(a, k) <= checker().memo.betti(b, k));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn flag_corollary_examples() {
        let report = checker().flag_corollary(7, 3);
        assert!(report.passed(), "{}", report.to_json());
        // every λ qualifies at k = 0
        let report = checker().flag_corollary(6, 0);
        assert_eq!(report.cases, 11);
        assert!(checker().flag_corollary(0, 2).vacuous);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = checker().rep_stability(2, 3, 8).unwrap().to_json_untimed().to_string();
        let b = checker().rep_stability(2, 3, 8).unwrap().to_json_untimed().to_string();
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a).unwrap();
        for key in ["check", "params", "verdict", "vacuous", "counterexample", "elapsed_ms"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v.as_object().unwrap().len(), 6);
        assert_eq!(v["verdict"], json!("pass"));
        assert_eq!(v["counterexample"], Value::Null);
    }

    #[test]
    fn aggregate_picks_first_failure() {
        let ok = checker().dim_stability(1, 2, 6).unwrap();
        let f = RationalPoly::zero();
        let bad = checker().dim_stability_against(1, 2, 6, &f).unwrap();
        let agg = aggregate("dim", json!({}), &[ok.clone(), bad]);
        assert!(!agg.passed());
        assert_eq!(agg.counterexample.unwrap()["params"]["k"], json!(1));
        assert!(aggregate("dim", json!({}), &[ok]).passed());
    }
}
