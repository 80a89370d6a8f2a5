//! Model parameters, the geometric catastrophe law, the post-catastrophe
//! survivor distribution, surjection counts, and the colony offspring laws
//! induced by optimal and independent dispersion.
//!
//! Everything here is a pure function of its inputs; the catastrophe rate is
//! normalized to 1, so times are measured in units of the mean
//! inter-catastrophe interval.

use crate::error::{Error, Result};

/// Shared parameter pair of every model: colony birth rate `lambda` and
/// per-individual catastrophe-survival probability `p`.
///
/// The catastrophe rate is fixed at 1; rescale time for other rates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    lambda: f64,
    p: f64,
}

impl ModelParams {
    /// Requires `lambda > 0` and `0 < p < 1`.
    pub fn new(lambda: f64, p: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "lambda must be positive and finite, got {lambda}"
            )));
        }
        if !p.is_finite() || p <= 0.0 || p >= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "p must lie strictly inside (0, 1), got {p}"
            )));
        }
        Ok(Self { lambda, p })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// Which growth model: a single sedentary colony, or dispersion of
/// catastrophe survivors onto the `d` child vertices of a rooted tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// One colony, no relocation after catastrophes.
    NoDispersion,
    /// Survivors fill distinct children left to right: `min(r, d)` new
    /// colonies from `r` survivors.
    Optimal { d: u32 },
    /// Each survivor picks a child uniformly at random; every occupied
    /// child hosts exactly one founder.
    Independent { d: u32 },
}

impl Scheme {
    /// Branching degree for dispersion schemes, `None` for no dispersion.
    pub fn degree(&self) -> Option<u32> {
        match self {
            Scheme::NoDispersion => None,
            Scheme::Optimal { d } | Scheme::Independent { d } => Some(*d),
        }
    }

    /// Degree of a dispersion scheme, checked against `d >= 2`.
    pub(crate) fn dispersion_degree(&self) -> Result<u32> {
        match self.degree() {
            None => Err(Error::UnsupportedScheme(format!(
                "{self:?} is not a dispersion scheme"
            ))),
            Some(d) if d < 2 => Err(Error::InvalidParameter(format!(
                "dispersion degree must be at least 2, got {d}"
            ))),
            Some(d) => Ok(d),
        }
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scheme::NoDispersion => write!(f, "no-dispersion"),
            Scheme::Optimal { d } => write!(f, "optimal(d={d})"),
            Scheme::Independent { d } => write!(f, "independent(d={d})"),
        }
    }
}

/// Probability that a colony of size `i` is reduced to size `j` by a
/// geometric catastrophe: individuals are struck sequentially, each dying
/// with probability `1 - p`, and the catastrophe halts at the first
/// survivor.
///
/// `(1-p)^i` for `j = 0`, `p (1-p)^(i-j)` for `1 <= j <= i`.
pub fn catastrophe_pmf(i: u64, j: u64, p: f64) -> Result<f64> {
    if i < 1 {
        return Err(Error::Domain(format!(
            "pre-catastrophe size must be at least 1, got {i}"
        )));
    }
    if j > i {
        return Err(Error::Domain(format!(
            "post-catastrophe size {j} exceeds pre-catastrophe size {i}"
        )));
    }
    if !p.is_finite() || p <= 0.0 || p >= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "p must lie strictly inside (0, 1), got {p}"
        )));
    }
    let q = 1.0 - p;
    Ok(if j == 0 {
        q.powi(i as i32)
    } else {
        p * q.powi((i - j) as i32)
    })
}

/// Distribution of the number of survivors `N` of a catastrophe striking a
/// colony founded by one individual and grown at rate `lambda` over an
/// exp(1) lifetime: `P(N=0) = beta`, `P(N=n) = alpha c^n` for `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurvivorLaw {
    beta: f64,
    alpha: f64,
    c: f64,
}

impl SurvivorLaw {
    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `P(N = n)`.
    pub fn pmf(&self, n: u64) -> f64 {
        if n == 0 {
            self.beta
        } else {
            self.alpha * self.c.powi(n as i32)
        }
    }
}

/// Survivor distribution for the given parameters:
/// `beta = (1-p)/(lambda p + 1)`, `alpha = (lambda+1) p / (lambda (lambda p + 1))`,
/// `c = lambda / (lambda + 1)`.
pub fn survivor_law(params: &ModelParams) -> SurvivorLaw {
    let (lambda, p) = (params.lambda(), params.p());
    SurvivorLaw {
        beta: (1.0 - p) / (lambda * p + 1.0),
        alpha: (lambda + 1.0) * p / (lambda * (lambda * p + 1.0)),
        c: lambda / (lambda + 1.0),
    }
}

/// Number of surjective functions from an `n`-set onto a `k`-set,
/// `T(n, k) = sum_{j=0}^{k} (-1)^j C(k, j) (k-j)^n`, in exact checked
/// integer arithmetic.
pub fn surjection_count(n: u32, k: u32) -> Result<u128> {
    let mut sum: i128 = 0;
    for j in 0..=k {
        let binom = checked_binomial(k, j).ok_or(Error::Overflow("surjection_count"))?;
        let power = checked_pow((k - j) as i128, n).ok_or(Error::Overflow("surjection_count"))?;
        let term = binom
            .checked_mul(power)
            .ok_or(Error::Overflow("surjection_count"))?;
        sum = if j % 2 == 0 {
            sum.checked_add(term)
        } else {
            sum.checked_sub(term)
        }
        .ok_or(Error::Overflow("surjection_count"))?;
    }
    debug_assert!(sum >= 0, "surjection count cannot be negative");
    Ok(sum as u128)
}

fn checked_binomial(n: u32, k: u32) -> Option<i128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as i128)?;
        acc /= (i + 1) as i128; // exact: product of i+1 consecutive integers
    }
    Some(acc)
}

fn checked_pow(base: i128, exp: u32) -> Option<i128> {
    if exp == 0 {
        return Some(1); // 0^0 = 1 by the inclusion-exclusion convention
    }
    let mut acc: i128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Finite pmf `p_0 .. p_d` of the number of colonies created per
/// catastrophe; the offspring law of the colony-count branching process.
#[derive(Debug, Clone, PartialEq)]
pub struct OffspringLaw {
    probs: Vec<f64>,
    mean: f64,
}

impl OffspringLaw {
    /// Builds a law from raw probabilities.
    ///
    /// Negative entries of magnitude below `1e-15` are treated as rounding
    /// debris: clamped to zero and the vector renormalized. Anything more
    /// negative, or a total mass off 1 by more than `1e-12`, is rejected.
    pub fn from_probs(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidParameter(
                "offspring law needs at least one entry".into(),
            ));
        }
        let mut probs = probs;
        let mut clamped = false;
        for pk in &mut probs {
            if !pk.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "offspring probability {pk} is not finite"
                )));
            }
            if *pk < 0.0 {
                if *pk > -1e-15 {
                    *pk = 0.0;
                    clamped = true;
                } else {
                    return Err(Error::Numerical(format!(
                        "offspring probability {pk} is negative beyond rounding tolerance"
                    )));
                }
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "offspring probabilities sum to {sum}, not 1"
            )));
        }
        if clamped {
            for pk in &mut probs {
                *pk /= sum;
            }
        }
        let mean = probs
            .iter()
            .enumerate()
            .map(|(k, pk)| k as f64 * pk)
            .sum();
        Ok(Self { probs, mean })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Largest offspring count with an entry in the pmf (its `d`).
    pub fn max_offspring(&self) -> usize {
        self.probs.len() - 1
    }

    /// Offspring mean `m = f'(1)`.
    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Probability generating function `f(s) = sum p_k s^k`, intended for
    /// `s` in `[0, 1]`.
    pub fn pgf(&self, s: f64) -> f64 {
        // Horner form.
        self.probs.iter().rev().fold(0.0, |acc, pk| acc * s + pk)
    }
}

/// Offspring law of the colony-count process for a dispersion scheme at
/// arbitrary degree `d >= 2`.
///
/// Optimal dispersion: `p_0 = beta`, `p_k = alpha c^k` for `1 <= k < d`,
/// remainder at `k = d`. Independent dispersion: the infinite series over
/// survivor counts is evaluated in closed form by swapping the
/// inclusion-exclusion sum with the geometric tail.
pub fn offspring_law(params: &ModelParams, scheme: &Scheme) -> Result<OffspringLaw> {
    let d = scheme.dispersion_degree()? as usize;
    let law = survivor_law(params);
    let (beta, alpha, c) = (law.beta(), law.alpha(), law.c());

    let mut probs = Vec::with_capacity(d + 1);
    probs.push(beta);
    match scheme {
        Scheme::Optimal { .. } => {
            let mut ck = 1.0;
            for _ in 1..d {
                ck *= c;
                probs.push(alpha * ck);
            }
        }
        Scheme::Independent { .. } => {
            let x = c / d as f64;
            for k in 1..d {
                // sum_{n>=k} T(n,k) x^n = sum_{j<k} (-1)^j C(k,j)
                //   ((k-j)x)^k / (1 - (k-j)x); the j=k term vanishes.
                let mut series = 0.0;
                for j in 0..k {
                    let y = (k - j) as f64 * x;
                    let term = binomial_f64(k, j) * y.powi(k as i32) / (1.0 - y);
                    series += if j % 2 == 0 { term } else { -term };
                }
                probs.push(alpha * binomial_f64(d, k) * series);
            }
        }
        Scheme::NoDispersion => unreachable!("rejected by dispersion_degree"),
    }
    let partial: f64 = probs.iter().sum();
    probs.push(1.0 - partial);
    OffspringLaw::from_probs(probs)
}

fn binomial_f64(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}
