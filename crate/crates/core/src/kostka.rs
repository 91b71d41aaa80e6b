//! Kostka–Foulkes polynomials from semistandard tableaux and the charge
//! statistic, used as a second, independent route to Springer fiber
//! cohomology.
//!
//! Conventions (English notation):
//! - reading word: rows left to right, bottom row first;
//! - charge index increments when `s+1` sits to the right of `s`;
//! - `H^{2k}(λ)` contains `χ^μ` with multiplicity equal to the `t^k`
//!   coefficient of `t^{n(λ)} K_{μλ}(1/t)`.
//!
//! With these, `K_{(n),λ} = t^{n(λ)}`, `K_{λλ} = 1`, degree 0 carries the
//! trivial representation and the top degree `n(λ)` carries `χ^λ`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::int_poly::{IntPoly, PoincarePoly};
use crate::partition::{partitions, Partition};
use crate::poly::big_json;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    /// Checks shape, row weak increase and column strict increase.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = Partition::from_parts(rows.iter().map(Vec::len).collect());
        let lengths: Vec<usize> = rows.iter().map(Vec::len).collect();
        if lengths != shape.parts() {
            return Err(Error::InvalidInput(format!("rows {rows:?} do not form a partition shape")));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.contains(&0) || row.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::InvalidInput(format!("row {} is not weakly increasing", i + 1)));
            }
            if i > 0 && row.iter().zip(&rows[i - 1]).any(|(below, above)| below <= above) {
                return Err(Error::InvalidInput(format!("column strictness fails in row {}", i + 1)));
            }
        }
        Ok(Tableau { shape, rows })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Entry multiplicities `[#1, #2, …]`.
    pub fn content(&self) -> Vec<usize> {
        let max = self.rows.iter().flatten().copied().max().unwrap_or(0);
        let mut counts = vec![0; max];
        for &v in self.rows.iter().flatten() {
            counts[v - 1] += 1;
        }
        counts
    }

    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().rev().flatten().copied().collect()
    }
}

/// All semistandard tableaux of `shape` with content `content`, in
/// lexicographic order of their row-major entry sequences.
pub fn ssyt_enumerate(shape: &Partition, content: &Partition) -> Result<Vec<Tableau>> {
    if shape.size() != content.size() {
        return Err(size_mismatch(shape, content));
    }
    let cells: Vec<(usize, usize)> = shape
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(i, &len)| (0..len).map(move |j| (i, j)))
        .collect();
    let mut grid: Vec<Vec<usize>> = shape.parts().iter().map(|&len| vec![0; len]).collect();
    let mut remaining = content.parts().to_vec();
    let mut out = Vec::new();
    fill(&cells, 0, &mut grid, &mut remaining, &mut out, shape);
    Ok(out)
}

fn fill(
    cells: &[(usize, usize)],
    at: usize,
    grid: &mut Vec<Vec<usize>>,
    remaining: &mut [usize],
    out: &mut Vec<Tableau>,
    shape: &Partition,
) {
    let Some(&(i, j)) = cells.get(at) else {
        out.push(Tableau {
            shape: shape.clone(),
            rows: grid.clone(),
        });
        return;
    };
    let left = if j > 0 { grid[i][j - 1] } else { 1 };
    let above = if i > 0 { grid[i - 1][j] + 1 } else { 1 };
    // Entries in row i (0-based) are at least i + 1, which `above` enforces.
    for v in left.max(above)..=remaining.len() {
        if remaining[v - 1] == 0 {
            continue;
        }
        remaining[v - 1] -= 1;
        grid[i][j] = v;
        fill(cells, at + 1, grid, remaining, out, shape);
        remaining[v - 1] += 1;
    }
    grid[i][j] = 0;
}

/// Lascoux–Schützenberger charge of a word whose content is a partition.
///
/// Standard subwords are peeled off by scanning leftward cyclically: the
/// rightmost unused 1, then the first unused 2 to its left (wrapping at the
/// start of the word), and so on. Inside each subword the index starts at 0
/// for the letter 1 and increments from `s` to `s+1` whenever `s+1` lies to
/// the right of `s`; charge is the sum of indices over all subwords.
pub fn charge(word: &[usize]) -> Result<usize> {
    let max = word.iter().copied().max().unwrap_or(0);
    if word.contains(&0) {
        return Err(Error::InvalidInput("word letters must be positive".into()));
    }
    let mut counts = vec![0usize; max];
    for &v in word {
        counts[v - 1] += 1;
    }
    if counts.windows(2).any(|w| w[0] < w[1]) || counts.contains(&0) {
        return Err(Error::InvalidInput(format!(
            "word content {counts:?} is not a partition"
        )));
    }

    let len = word.len();
    let mut used = vec![false; len];
    let mut left = len;
    let mut total = 0;
    while left > 0 {
        let top = (0..len)
            .filter(|&p| !used[p])
            .map(|p| word[p])
            .max()
            .expect("unused letters remain");
        let mut pos = (0..len)
            .rev()
            .find(|&p| !used[p] && word[p] == 1)
            .expect("content is a partition, so a 1 remains");
        used[pos] = true;
        let mut index = 0;
        for letter in 2..=top {
            let next = (1..=len)
                .map(|step| (pos + len - step) % len)
                .find(|&p| !used[p] && word[p] == letter)
                .expect("content is a partition, so every smaller letter remains");
            if next > pos {
                index += 1;
            }
            total += index;
            used[next] = true;
            pos = next;
        }
        left -= top;
    }
    Ok(total)
}

/// One graded piece `H^{2k}(λ)` as a sum of irreducibles `χ^μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDecomposition {
    pub partition: Partition,
    pub degree: usize,
    /// Nonzero multiplicities, `μ` in descending lexicographic order.
    pub terms: Vec<(Partition, BigUint)>,
}

impl GradedDecomposition {
    pub fn multiplicity(&self, mu: &Partition) -> BigUint {
        self.terms
            .iter()
            .find(|(m, _)| m == mu)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    /// `Σ m_μ f^μ`, the Betti number this decomposition accounts for.
    pub fn dimension(&self) -> BigUint {
        self.terms.iter().map(|(mu, m)| m * mu.syt_count()).sum()
    }

    pub fn terms_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(mu, m)| json!({"mu": mu.to_string(), "mult": big_json(m)}))
                .collect(),
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "partition": self.partition.to_string(),
            "degree": self.degree,
            "decomposition": self.terms_json(),
        })
    }
}

/// Memoizing front end for the Kostka–Foulkes computations. Follows the
/// same idempotent-fill rule as the Betti memo table.
#[derive(Debug, Default)]
pub struct KostkaOracle {
    cache: RwLock<HashMap<(Partition, Partition), IntPoly>>,
}

static GLOBAL: OnceLock<KostkaOracle> = OnceLock::new();

impl KostkaOracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn global() -> &'static KostkaOracle {
        GLOBAL.get_or_init(KostkaOracle::new)
    }

    /// `K_{μλ}(t) = Σ_T t^{charge(T)}` over SSYT of shape `μ`, content `λ`.
    pub fn kostka_poly(&self, mu: &Partition, lambda: &Partition) -> Result<IntPoly> {
        if mu.size() != lambda.size() {
            return Err(size_mismatch(mu, lambda));
        }
        let key = (mu.clone(), lambda.clone());
        if let Some(hit) = self.cache.read().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let mut poly = IntPoly::zero();
        for tableau in ssyt_enumerate(mu, lambda)? {
            poly += &IntPoly::monomial(charge(&tableau.reading_word())?);
        }
        Ok(self.cache.write().unwrap().entry(key).or_insert(poly).clone())
    }

    /// Multiplicity of `χ^μ` in `H^{2k}(λ)`.
    pub fn graded_mult(&self, mu: &Partition, lambda: &Partition, k: usize) -> Result<BigUint> {
        let kf = self.kostka_poly(mu, lambda)?;
        Ok(match lambda.n_stat().checked_sub(k) {
            Some(power) => kf.coeff(power),
            None => BigUint::zero(),
        })
    }

    pub fn decompose(&self, lambda: &Partition, k: usize) -> GradedDecomposition {
        let terms = partitions(lambda.size(), None)
            .filter_map(|mu| {
                let m = self.graded_mult(&mu, lambda, k).expect("sizes agree");
                (!m.is_zero()).then_some((mu, m))
            })
            .collect();
        GradedDecomposition {
            partition: lambda.clone(),
            degree: k,
            terms,
        }
    }

    /// `h^{2k}(λ) = Σ_μ f^μ · [t^k] t^{n(λ)} K_{μλ}(1/t)`.
    pub fn poincare_kf(&self, lambda: &Partition) -> PoincarePoly {
        let top = lambda.n_stat();
        let mut coeffs = vec![BigUint::zero(); top + 1];
        for mu in partitions(lambda.size(), None) {
            let kf = self.kostka_poly(&mu, lambda).expect("sizes agree");
            let dim = mu.syt_count();
            for (power, c) in kf.coeffs().iter().enumerate() {
                coeffs[top - power] += c * &dim;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

pub fn kostka_poly(mu: &Partition, lambda: &Partition) -> Result<IntPoly> {
    KostkaOracle::global().kostka_poly(mu, lambda)
}

pub fn graded_mult(mu: &Partition, lambda: &Partition, k: usize) -> Result<BigUint> {
    KostkaOracle::global().graded_mult(mu, lambda, k)
}

pub fn decompose(lambda: &Partition, k: usize) -> GradedDecomposition {
    KostkaOracle::global().decompose(lambda, k)
}

pub fn poincare_kf(lambda: &Partition) -> PoincarePoly {
    KostkaOracle::global().poincare_kf(lambda)
}

/// Poincaré polynomial of the full flag variety, `Π_{i=1}^{n} [i]_t`.
pub fn flag_poincare(n: usize) -> PoincarePoly {
    (1..=n).fold(IntPoly::one(), |acc, i| {
        &acc * &IntPoly::from_coeffs(vec![BigUint::from(1u32); i])
    })
}

fn size_mismatch(a: &Partition, b: &Partition) -> Error {
    Error::SizeMismatch {
        left: a.to_string(),
        left_size: a.size(),
        right: b.to_string(),
        right_size: b.size(),
    }
}
