//! Fractional divisors `D = E + Σ p_i/q_i P_i` on a curve of genus `g`, and
//! the degree-level bookkeeping that compares them with a graded ring.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, Rational};
use crate::error::{Error, Result};
use crate::graded_ring::{a_invariant, hilbert_coeffs, WeightedType};

/// A branch point with coefficient `p/q`, `0 < p < q`, `gcd(p, q) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "(u64, u64)", into = "(u64, u64)")]
pub struct Branch {
    p: u64,
    q: u64,
}

impl Branch {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if p == 0 || p >= q || gcd(p, q) != 1 {
            return Err(Error::InvalidBranch { p, q });
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn coefficient(&self) -> Rational {
        Rational::new(self.p as i64, self.q as i64).expect("q >= 2")
    }
}

impl Ord for Branch {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.q, self.p).cmp(&(other.q, other.p))
    }
}

impl PartialOrd for Branch {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<(u64, u64)> for Branch {
    type Error = Error;
    fn try_from((p, q): (u64, u64)) -> Result<Self> {
        Branch::new(p, q)
    }
}

impl From<Branch> for (u64, u64) {
    fn from(b: Branch) -> Self {
        (b.p, b.q)
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Divisor data in canonical form: branches sorted by `(q, p)`.
///
/// Equality and hashing ignore `class_notes`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawDivisor", into = "RawDivisor")]
pub struct FractionalDivisor {
    genus: u64,
    deg_e: i64,
    branches: Vec<Branch>,
    class_notes: Vec<String>,
}

#[derive(Clone, Serialize, Deserialize)]
struct RawDivisor {
    genus: u64,
    #[serde(rename = "degE")]
    deg_e: i64,
    branches: Vec<Branch>,
    #[serde(default)]
    notes: Vec<String>,
}

impl TryFrom<RawDivisor> for FractionalDivisor {
    type Error = Error;
    fn try_from(r: RawDivisor) -> Result<Self> {
        FractionalDivisor::new(r.genus, r.deg_e, r.branches)
            .map(|d| d.with_notes(r.notes))
    }
}

impl From<FractionalDivisor> for RawDivisor {
    fn from(d: FractionalDivisor) -> Self {
        RawDivisor {
            genus: d.genus,
            deg_e: d.deg_e,
            branches: d.branches,
            notes: d.class_notes,
        }
    }
}

impl FractionalDivisor {
    /// Rejects divisors of nonpositive degree.
    pub fn new(genus: u64, deg_e: i64, mut branches: Vec<Branch>) -> Result<Self> {
        branches.sort();
        let d = Self {
            genus,
            deg_e,
            branches,
            class_notes: Vec::new(),
        };
        let deg = d.deg_total();
        if !deg.is_positive() {
            return Err(Error::NotAmple(deg.to_string()));
        }
        Ok(d)
    }

    /// Convenience constructor from raw `(p, q)` pairs.
    pub fn from_pairs(genus: u64, deg_e: i64, pairs: &[(u64, u64)]) -> Result<Self> {
        let branches = pairs
            .iter()
            .map(|&(p, q)| Branch::new(p, q))
            .collect::<Result<Vec<_>>>()?;
        Self::new(genus, deg_e, branches)
    }

    pub fn with_notes(mut self, notes: Vec<String>) -> Self {
        self.class_notes = notes;
        self
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn deg_e(&self) -> i64 {
        self.deg_e
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn class_notes(&self) -> &[String] {
        &self.class_notes
    }

    /// Number of branch points `r`, which is also `deg ⌈D⌉ - deg E`.
    pub fn branch_count(&self) -> usize {
        self.branches.len()
    }

    pub fn deg_total(&self) -> Rational {
        deg_total(self)
    }

    fn key(&self) -> (u64, i64, &[Branch]) {
        (self.genus, self.deg_e, &self.branches)
    }
}

impl PartialEq for FractionalDivisor {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for FractionalDivisor {}

impl Hash for FractionalDivisor {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl Ord for FractionalDivisor {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for FractionalDivisor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FractionalDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g={}, E={}", self.genus, self.deg_e)?;
        for b in &self.branches {
            write!(f, " + {b}")?;
        }
        Ok(())
    }
}

pub fn deg_total(d: &FractionalDivisor) -> Rational {
    Rational::from_integer(d.deg_e) + d.branches.iter().map(Branch::coefficient).sum()
}

/// The coefficients `(q_i - 1)/q_i` of `frac(D)`.
pub fn frac_part(d: &FractionalDivisor) -> Vec<Rational> {
    d.branches
        .iter()
        .map(|b| Rational::new(b.q as i64 - 1, b.q as i64).expect("q >= 2"))
        .collect()
}

/// Degree of the integral part `[nD]`.
pub fn floor_deg(d: &FractionalDivisor, n: u64) -> i64 {
    let n128 = n as i128;
    let frac: i128 = d
        .branches
        .iter()
        .map(|b| n128 * b.p as i128 / b.q as i128)
        .sum();
    (n128 * d.deg_e as i128 + frac) as i64
}

fn canonical_degree(genus: u64) -> i64 {
    2 * genus as i64 - 2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum GorensteinFailure {
    /// `alpha * p ≢ -1 (mod q)` at this branch.
    Congruence { p: u64, q: u64 },
    /// `alpha * deg D != 2g - 2 + Σ (q_i - 1)/q_i`.
    DegreeMismatch { lhs: Rational, rhs: Rational },
}

impl fmt::Display for GorensteinFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Congruence { p, q } => write!(f, "congruence fails at branch {p}/{q}"),
            Self::DegreeMismatch { lhs, rhs } => {
                write!(f, "degree mismatch: alpha*deg D = {lhs}, 2g-2 + deg frac(D) = {rhs}")
            }
        }
    }
}

/// Checks `alpha D ~ K_X + frac(D)` at the level of branch congruences and degrees.
#[allow(clippy::result_large_err)]
pub fn gorenstein_check(
    d: &FractionalDivisor,
    alpha: i64,
) -> std::result::Result<(), GorensteinFailure> {
    for b in &d.branches {
        let q = b.q as i128;
        if (alpha as i128 * b.p as i128 + 1).rem_euclid(q) != 0 {
            return Err(GorensteinFailure::Congruence { p: b.p, q: b.q });
        }
    }
    let lhs = Rational::from_integer(alpha) * deg_total(d);
    let rhs = Rational::from_integer(canonical_degree(d.genus)) + frac_part(d).into_iter().sum();
    if lhs != rhs {
        return Err(GorensteinFailure::DegreeMismatch { lhs, rhs });
    }
    Ok(())
}

/// `deg [nD] + deg [(alpha - n)D] = 2g - 2` for all `0 <= n <= alpha`.
pub fn duality_check(d: &FractionalDivisor, alpha: u64) -> bool {
    let k = canonical_degree(d.genus);
    (0..=alpha).all(|n| floor_deg(d, n) + floor_deg(d, alpha - n) == k)
}

/// The floor degrees at `alpha + 1` and `2 alpha + 1` predicted by the Gorenstein relation.
pub fn shifted_floor_identities(d: &FractionalDivisor, alpha: u64) -> bool {
    let k = canonical_degree(d.genus);
    let r = d.branches.len() as i64;
    let big = d.branches.iter().filter(|b| b.p >= 2).count() as i64;
    let one = r - big;
    floor_deg(d, alpha + 1) == k + d.deg_e + r
        && floor_deg(d, 2 * alpha + 1) == 2 * k + d.deg_e + 2 * big + one
}

/// Closed interval of possible values of `h^0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct H0Interval {
    pub lo: u64,
    pub hi: u64,
}

impl H0Interval {
    pub fn point(v: u64) -> Self {
        Self { lo: v, hi: v }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: u64) -> bool {
        self.lo <= v && v <= self.hi
    }
}

fn degree_interval(genus: u64, d: i64) -> H0Interval {
    let g = genus as i64;
    if g == 0 {
        return H0Interval::point((d + 1).max(0) as u64);
    }
    if d < 0 {
        H0Interval::point(0)
    } else if d >= 2 * g - 1 {
        H0Interval::point((d - g + 1) as u64)
    } else {
        let lo = (d - g + 1).max(0) as u64;
        let hi = if d == 2 * g - 2 { g } else { d + 1 };
        H0Interval { lo, hi: hi as u64 }
    }
}

/// Bounds on `h^0([nD])` from its degree alone.
pub fn h0_bounds(d: &FractionalDivisor, n: u64) -> H0Interval {
    degree_interval(d.genus, floor_deg(d, n))
}

/// Like [`h0_bounds`], but for a Gorenstein divisor pins down `n = m·alpha` using
/// `[m alpha D] ~ m K_X + Σ ⌊m (q_i - 1)/q_i⌋ P_i`.
pub fn h0_bounds_gorenstein(d: &FractionalDivisor, alpha: u64, n: u64) -> H0Interval {
    let g = d.genus;
    if n == 0 {
        return H0Interval::point(1);
    }
    if g == 0 || alpha == 0 || !n.is_multiple_of(alpha) {
        return h0_bounds(d, n);
    }
    let m = n / alpha;
    let f: u64 = d.branches.iter().map(|b| m * (b.q - 1) / b.q).sum();
    match m {
        1 => H0Interval::point(g + f - 1 + u64::from(f == 0)),
        _ if g == 1 => H0Interval::point(f.max(1)),
        _ => h0_bounds(d, n),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DimsVerdict {
    Consistent,
    Conditional,
    Inconsistent,
}

impl fmt::Display for DimsVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Consistent => "consistent",
            Self::Conditional => "conditional",
            Self::Inconsistent => "inconsistent",
        })
    }
}

/// Compares `dim R_n` with the possible `h^0([nD])` for `n <= max_n`.
///
/// The sharper bounds of [`h0_bounds_gorenstein`] are used only when `D` passes
/// [`gorenstein_check`] for the type's a-invariant.
pub fn dims_match(d: &FractionalDivisor, wt: &WeightedType, max_n: u64) -> Result<DimsVerdict> {
    let alpha = a_invariant(wt);
    let coeffs = hilbert_coeffs(wt, max_n)?;
    let refined = alpha >= 0 && gorenstein_check(d, alpha).is_ok();
    let mut all_points = true;
    for (n, &dim) in coeffs.iter().enumerate() {
        let n = n as u64;
        let iv = if refined {
            h0_bounds_gorenstein(d, alpha as u64, n)
        } else {
            h0_bounds(d, n)
        };
        if !iv.contains(dim) {
            return Ok(DimsVerdict::Inconsistent);
        }
        all_points &= iv.is_point();
    }
    Ok(if all_points {
        DimsVerdict::Consistent
    } else {
        DimsVerdict::Conditional
    })
}
