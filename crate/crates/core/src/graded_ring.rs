//! Invariants of `k[x,y,z]/(f)` read off from the weight type alone.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, prime_factors, Rational};
use crate::error::{Error, Result};

/// Weights `(a,b,c)` of the variables and degree `h` of `f`, with `a <= b <= c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawType")]
pub struct WeightedType {
    a: u64,
    b: u64,
    c: u64,
    h: u64,
}

#[derive(Deserialize)]
struct RawType {
    a: u64,
    b: u64,
    c: u64,
    h: u64,
}

impl TryFrom<RawType> for WeightedType {
    type Error = Error;
    fn try_from(r: RawType) -> Result<Self> {
        WeightedType::new(r.a, r.b, r.c, r.h)
    }
}

impl WeightedType {
    /// Sorts the weights; rejects zeros and `gcd(a,b,c) != 1`.
    pub fn new(a: u64, b: u64, c: u64, h: u64) -> Result<Self> {
        let mut w = [a, b, c];
        w.sort_unstable();
        if w[0] == 0 || h == 0 {
            return Err(Error::InvalidType(format!(
                "weights and degree must be positive: ({a},{b},{c};{h})"
            )));
        }
        if gcd(gcd(w[0], w[1]), w[2]) != 1 {
            return Err(Error::InvalidType(format!(
                "gcd of weights is not 1: ({a},{b},{c};{h})"
            )));
        }
        Ok(Self { a: w[0], b: w[1], c: w[2], h })
    }

    pub fn a(&self) -> u64 {
        self.a
    }
    pub fn b(&self) -> u64 {
        self.b
    }
    pub fn c(&self) -> u64 {
        self.c
    }
    pub fn h(&self) -> u64 {
        self.h
    }

    pub fn weights(&self) -> [u64; 3] {
        [self.a, self.b, self.c]
    }

    pub fn a_invariant(&self) -> i64 {
        a_invariant(self)
    }
}

impl fmt::Display for WeightedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{};{})", self.a, self.b, self.c, self.h)
    }
}

pub fn a_invariant(wt: &WeightedType) -> i64 {
    wt.h as i64 - (wt.a + wt.b + wt.c) as i64
}

/// Coefficients `dim R_n` for `0 <= n <= max_n` of `(1-t^h)/((1-t^a)(1-t^b)(1-t^c))`.
pub fn hilbert_coeffs(wt: &WeightedType, max_n: u64) -> Result<Vec<u64>> {
    let len = usize::try_from(max_n)
        .ok()
        .and_then(|n| n.checked_add(1))
        .ok_or(Error::Overflow("series length"))?;
    let mut s = vec![0u64; len];
    s[0] = 1;
    for d in wt.weights() {
        let d = d as usize;
        for n in d..len {
            s[n] = s[n]
                .checked_add(s[n - d])
                .ok_or(Error::Overflow("Hilbert series"))?;
        }
    }
    let h = wt.h as usize;
    let mut out = s.clone();
    for n in h..len {
        match s[n].checked_sub(s[n - h]) {
            Some(v) => out[n] = v,
            None => {
                return Err(Error::NegativeHilbertCoefficient {
                    degree: n as u64,
                    value: s[n] as i128 - s[n - h] as i128,
                })
            }
        }
    }
    Ok(out)
}

fn nonnegative_alpha(wt: &WeightedType) -> Result<u64> {
    let alpha = a_invariant(wt);
    u64::try_from(alpha).map_err(|_| Error::NegativeAInvariant(alpha))
}

/// Genus of the curve `Proj R`, which is `dim R_alpha`.
pub fn genus(wt: &WeightedType) -> Result<u64> {
    let alpha = nonnegative_alpha(wt)?;
    Ok(hilbert_coeffs(wt, alpha)?[alpha as usize])
}

pub fn geometric_genus(wt: &WeightedType) -> Result<u64> {
    let alpha = nonnegative_alpha(wt)?;
    Ok(hilbert_coeffs(wt, alpha)?.iter().sum())
}

pub fn deg_d(wt: &WeightedType) -> Rational {
    Rational::new(wt.h as i64, (wt.a * wt.b * wt.c) as i64)
        .expect("weights are positive")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum NormalityViolation {
    /// No monomial `x^n`, `x^n y` or `x^n z` in the variable of this weight.
    MissingMonomial { weight: u64 },
    /// A prime shared by two weights does not divide `h`.
    SharedPrime { prime: u64 },
    /// `c > a + b + alpha`.
    LargestWeightTooBig,
}

impl fmt::Display for NormalityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MissingMonomial { weight } => {
                write!(f, "(i) no pure or near-pure monomial in the weight-{weight} variable")
            }
            Self::SharedPrime { prime } => write!(f, "(ii) prime {prime} divides two weights but not h"),
            Self::LargestWeightTooBig => write!(f, "(iii) c > a + b + alpha"),
        }
    }
}

/// Necessary conditions for a normal hypersurface of this type. An empty list is a pass.
pub fn normality_filter(wt: &WeightedType, alpha: i64) -> Vec<NormalityViolation> {
    let w = wt.weights();
    let h = wt.h as i64;
    let mut out = Vec::new();
    for i in 0..3 {
        let d = w[i] as i64;
        let others = [w[(i + 1) % 3] as i64, w[(i + 2) % 3] as i64];
        let ok = h % d == 0 || others.iter().any(|&e| h - e > 0 && (h - e) % d == 0);
        if !ok {
            out.push(NormalityViolation::MissingMonomial { weight: w[i] });
        }
    }
    let mut shared: Vec<u64> = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .flat_map(|&(i, j)| prime_factors(gcd(w[i], w[j])))
        .filter(|p| !wt.h.is_multiple_of(*p))
        .collect();
    shared.sort_unstable();
    shared.dedup();
    out.extend(shared.into_iter().map(|prime| NormalityViolation::SharedPrime { prime }));
    if (wt.c as i64) > (wt.a + wt.b) as i64 + alpha {
        out.push(NormalityViolation::LargestWeightTooBig);
    }
    out
}
