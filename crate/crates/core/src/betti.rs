//! Betti numbers of type A Springer fibers by box-removal recursion, and the
//! stability polynomials `f_{k,r}`.
//!
//! The Poincaré polynomial `P_λ(t) = Σ_k h^{2k}(λ) t^k` satisfies
//!
//! ```text
//! P_∅ = 1,    P_λ = Σ_{i=1}^{ℓ(λ)} t^{i-1} P_{λ^{(i)}}
//! ```
//!
//! where `λ^{(i)}` removes a box from row `i` and re-sorts. Results are
//! memoized per partition in a [`MemoTable`].

use std::collections::HashMap;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::int_poly::{IntPoly, PoincarePoly};
use crate::partition::{threshold, Partition};
use crate::poly::RationalPoly;

pub const CACHE_HEADER: &str = "springerstab-cache v1";

/// Partition → Poincaré polynomial cache.
///
/// Readers run concurrently; each insert takes the write lock for one entry.
/// Two threads may race to compute the same key, in which case the first
/// insert wins and the second value (identical by construction) is dropped.
#[derive(Debug, Default)]
pub struct MemoTable {
    entries: RwLock<HashMap<Partition, PoincarePoly>>,
}

static GLOBAL: OnceLock<MemoTable> = OnceLock::new();

impl MemoTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide table backing the free functions of this module.
    pub fn global() -> &'static MemoTable {
        GLOBAL.get_or_init(MemoTable::new)
    }

    pub fn len(&self) -> usize {
        self.entries.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn lookup(&self, lambda: &Partition) -> Option<PoincarePoly> {
        self.entries.read().unwrap().get(lambda).cloned()
    }

    fn insert(&self, lambda: Partition, poly: PoincarePoly) -> PoincarePoly {
        self.entries
            .write()
            .unwrap()
            .entry(lambda)
            .or_insert(poly)
            .clone()
    }

    pub fn poincare(&self, lambda: &Partition) -> PoincarePoly {
        if let Some(hit) = self.lookup(lambda) {
            return hit;
        }
        let mut total = IntPoly::zero();
        if lambda.is_empty() {
            total = IntPoly::one();
        }
        for row in 1..=lambda.len() {
            let smaller = lambda.remove_box(row).expect("row is within the partition");
            total += &self.poincare(&smaller).shifted(row - 1);
        }
        self.insert(lambda.clone(), total)
    }

    /// `h^{2k}(λ)`.
    pub fn betti(&self, lambda: &Partition, k: usize) -> BigUint {
        self.poincare(lambda).coeff(k)
    }

    /// The stability polynomial `f_{k,r}`.
    ///
    /// For `r ≥ 2`, `f_{0,r} = 1` and for `k ≥ 1`
    /// `f_{k,r}(x) = h^{2k}(A_{k,r}) + Σ_{i=|A_{k,r}|}^{x-1} Σ_{j=k-r+1}^{k-1} f_{j,r}(i)`,
    /// with `f_{j,r} = 0` for `j < 0`. For `r = 1` it is `δ_{k,0}`.
    pub fn f_poly(&self, k: usize, r: usize) -> Result<RationalPoly> {
        match r {
            0 => Err(Error::InvalidInput("f_{k,r} needs r >= 1".into())),
            1 if k == 0 => Ok(RationalPoly::one()),
            1 => Ok(RationalPoly::zero()),
            _ => {
                let mut fs: Vec<RationalPoly> = vec![RationalPoly::one()];
                for j in 1..=k {
                    let base = threshold(j, r)?;
                    let start = base.size() as i64;
                    let h = BigInt::from(self.betti(&base, j));
                    let window = &fs[j.saturating_sub(r - 1)..j];
                    let summand = window.iter().fold(RationalPoly::zero(), |acc, f| &acc + f);
                    let f = &RationalPoly::constant(BigRational::from_integer(h))
                        + &summand.discrete_sum(start);
                    fs.push(f);
                }
                Ok(fs.pop().expect("fs holds f_0..f_k"))
            }
        }
    }

    /// `f_k = lim_{r→∞} f_{k,r}`, which is already reached at `r = k + 1`.
    pub fn f_limit(&self, k: usize) -> RationalPoly {
        self.f_poly(k, k + 1).expect("k + 1 >= 1")
    }

    /// Writes every cached entry, sorted by partition, in the
    /// `springerstab-cache v1` line format.
    pub fn save_to<W: Write>(&self, mut out: W) -> Result<()> {
        let entries = self.entries.read().unwrap();
        let mut keys: Vec<_> = entries.keys().collect();
        keys.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| b.cmp(a)));
        writeln!(out, "{CACHE_HEADER}")?;
        for key in keys {
            writeln!(out, "{key}\t{}", entries[key].join(","))?;
        }
        Ok(())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut buf = Vec::new();
        self.save_to(&mut buf)?;
        fs::write(path, buf)?;
        Ok(())
    }

    /// Reads cache records, validating each against the Poincaré polynomial
    /// invariants, and merges them into this table. Returns the number of
    /// records read.
    pub fn load_from<R: BufRead>(&self, input: R, origin: &str) -> Result<usize> {
        let bad = |line: usize, reason: String| Error::Cache {
            path: origin.to_string(),
            line,
            reason,
        };
        let mut lines = input.lines();
        match lines.next() {
            Some(Ok(h)) if h.trim_end() == CACHE_HEADER => {}
            Some(Err(e)) => return Err(e.into()),
            _ => return Err(bad(1, format!("missing header {CACHE_HEADER:?}"))),
        }
        let mut count = 0;
        for (idx, line) in lines.enumerate() {
            let line = line?;
            let lineno = idx + 2;
            if line.trim().is_empty() {
                continue;
            }
            let (lam, coeffs) = line
                .split_once('\t')
                .ok_or_else(|| bad(lineno, "expected partition TAB coefficients".into()))?;
            let lambda: Partition = lam.parse().map_err(|e: Error| bad(lineno, e.to_string()))?;
            let coeffs = coeffs
                .split(',')
                .map(|c| c.trim().parse::<BigUint>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| bad(lineno, format!("bad coefficient list {coeffs:?}")))?;
            let poly = IntPoly::from_coeffs(coeffs);
            if !poly.coeff(0).is_one() {
                return Err(bad(lineno, "constant coefficient must be 1".into()));
            }
            if poly.degree() != Some(lambda.n_stat()) {
                return Err(bad(
                    lineno,
                    format!("degree must equal n({lambda}) = {}", lambda.n_stat()),
                ));
            }
            if poly.sum() != lambda.multinomial() {
                return Err(bad(lineno, format!("coefficients must sum to the multinomial of ({lambda})")));
            }
            if poly.coeff(lambda.n_stat()) != lambda.syt_count() {
                return Err(bad(lineno, format!("top coefficient must equal f^({lambda})")));
            }
            let stored = self.insert(lambda.clone(), poly.clone());
            if stored != poly {
                return Err(bad(lineno, format!("conflicts with computed value for ({lambda})")));
            }
            count += 1;
        }
        Ok(count)
    }

    pub fn load(&self, path: &Path) -> Result<usize> {
        let file = fs::File::open(path)?;
        self.load_from(BufReader::new(file), &path.display().to_string())
    }
}

pub fn poincare(lambda: &Partition) -> PoincarePoly {
    MemoTable::global().poincare(lambda)
}

pub fn betti(lambda: &Partition, k: usize) -> BigUint {
    MemoTable::global().betti(lambda, k)
}

pub fn f_poly(k: usize, r: usize) -> Result<RationalPoly> {
    MemoTable::global().f_poly(k, r)
}

pub fn f_limit(k: usize) -> RationalPoly {
    MemoTable::global().f_limit(k)
}
