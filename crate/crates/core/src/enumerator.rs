//! Classification of types with a fixed a-invariant.
//!
//! For `alpha >= 1` the candidate types are bounded by `ab < 168 alpha` and
//! `c <= a + b + alpha`; each surviving type is matched against every divisor
//! satisfying the Gorenstein relation at the degree level.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{divisors, gcd, lcm, solve_branch_congruence, Rational};
use crate::dpd::{dims_match, Branch, DimsVerdict, FractionalDivisor};
use crate::error::{Error, Result};
use crate::graded_ring::{
    a_invariant, deg_d, genus, geometric_genus, hilbert_coeffs, normality_filter, WeightedType,
};

/// Multiplier in the `ab < 168 alpha` search bound.
pub const AB_BOUND_FACTOR: u64 = 168;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationEntry {
    #[serde(rename = "type")]
    pub wt: WeightedType,
    pub alpha: i64,
    pub genus: u64,
    pub p_g: u64,
    pub divisors: Vec<FractionalDivisor>,
    /// Branch count `r` of the first divisor.
    #[serde(rename = "br")]
    pub branch_count: usize,
    pub verdicts: Vec<DimsVerdict>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ClassifyOptions {
    /// Worker threads for the divisor search; `None` uses the global pool.
    pub workers: Option<usize>,
    /// Horizon for `dims_match`; `None` means `3h` per type.
    pub max_n: Option<u64>,
}

pub fn candidate_types(alpha: u64) -> Vec<WeightedType> {
    let bound = AB_BOUND_FACTOR * alpha;
    let mut out = Vec::new();
    let mut a = 1;
    while a * a < bound {
        let mut b = a;
        while a * b < bound {
            for c in b..=a + b + alpha {
                if gcd(gcd(a, b), c) != 1 {
                    continue;
                }
                let wt = WeightedType::new(a, b, c, a + b + c + alpha).expect("valid by construction");
                if normality_filter(&wt, alpha as i64).is_empty() {
                    out.push(wt);
                }
            }
            b += 1;
        }
        a += 1;
    }
    out
}

/// Multisets `q_1 <= ... <= q_k` from `qs` (ascending) with `Σ units[i] = target`,
/// where `units[i] = M / qs[i]`.
fn unit_fraction_multisets(qs: &[u64], units: &[u128], k: usize, target: u128) -> Vec<Vec<u64>> {
    fn go(
        qs: &[u64],
        units: &[u128],
        start: usize,
        k: usize,
        target: u128,
        cur: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if k == 0 {
            if target == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for i in start..qs.len() {
            let u = units[i];
            if u > target {
                continue;
            }
            // later units are no larger, so k copies of this one must still reach the target
            if u * (k as u128) < target {
                break;
            }
            cur.push(qs[i]);
            go(qs, units, i, k - 1, target - u, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(qs, units, 0, k, target, &mut Vec::new(), &mut out);
    out
}

fn search(wt: &WeightedType, alpha: i64, max_n: u64) -> Result<Vec<(FractionalDivisor, DimsVerdict)>> {
    let g = genus(wt)?;
    let deg = deg_d(wt);
    let t = Rational::from_integer(alpha) * deg.clone() - Rational::from_integer(2 * g as i64 - 2);
    if t.is_negative() {
        return Err(Error::NoRealization(wt.to_string()));
    }
    // Every q_i divides lcm(a,b,c): the periodic part of h^0(nD) has to match
    // that of the Hilbert function, whose period divides lcm(a,b,c).
    let period = wt.weights().into_iter().fold(1, lcm);
    let qs: Vec<u64> = divisors(period)
        .into_iter()
        .filter(|&q| q >= 2 && gcd(q, alpha.unsigned_abs()) == 1)
        .collect();
    let t_den: u64 = t.denom().try_into().map_err(|_| Error::Overflow("search denominator"))?;
    let m = lcm(period, t_den) as u128;
    let units: Vec<u128> = qs.iter().map(|&q| m / q as u128).collect();
    let t_num: i128 = t.numer().try_into().map_err(|_| Error::Overflow("search numerator"))?;
    // T in units of 1/m
    let t_units = t_num * (m / t_den as u128) as i128;

    let mut out = Vec::new();
    let mut r: u64 = 0;
    while (r as i128) * (m as i128) <= 2 * t_units {
        let target = r as i128 * m as i128 - t_units;
        let shapes = match (r, target) {
            (0, 0) => vec![vec![]],
            (0, _) => vec![],
            (_, s) if s <= 0 => vec![],
            (_, s) => unit_fraction_multisets(&qs, &units, r as usize, s as u128),
        };
        for shape in shapes {
            if let Some(d) = realize(g, &deg, alpha, &shape)? {
                let verdict = dims_match(&d, wt, max_n)?;
                if verdict != DimsVerdict::Inconsistent {
                    out.push((d, verdict));
                }
            }
        }
        r += 1;
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out)
}

/// Builds the divisor for a `q`-multiset, if the integral part has integer degree.
fn realize(g: u64, deg: &Rational, alpha: i64, qs: &[u64]) -> Result<Option<FractionalDivisor>> {
    let mut branches = Vec::with_capacity(qs.len());
    for &q in qs {
        let p = solve_branch_congruence(alpha, q)?.expect("q is coprime to alpha");
        branches.push(Branch::new(p, q)?);
    }
    let frac: Rational = branches.iter().map(Branch::coefficient).sum();
    let deg_e = deg - &frac;
    match deg_e.to_i64() {
        Some(e) => FractionalDivisor::new(g, e, branches).map(Some),
        None => Ok(None),
    }
}

/// All canonical divisors realizing `wt`, with their `dims_match` verdicts, using horizon `max_n`.
pub fn divisor_search_with(wt: &WeightedType, max_n: u64) -> Result<Vec<(FractionalDivisor, DimsVerdict)>> {
    let alpha = a_invariant(wt);
    if alpha < 1 {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    if !normality_filter(wt, alpha).is_empty() {
        return Err(Error::NotNormal(wt.to_string()));
    }
    search(wt, alpha, max_n)
}

/// All canonical divisors realizing `wt`, checked up to degree `3h`.
pub fn divisor_search(wt: &WeightedType) -> Result<Vec<FractionalDivisor>> {
    Ok(divisor_search_with(wt, 3 * wt.h())?
        .into_iter()
        .map(|(d, _)| d)
        .collect())
}

fn entry_for(wt: &WeightedType, max_n: Option<u64>) -> Result<Option<ClassificationEntry>> {
    let found = match divisor_search_with(wt, max_n.unwrap_or(3 * wt.h())) {
        Ok(found) => found,
        Err(Error::NoRealization(_) | Error::NegativeHilbertCoefficient { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    if found.is_empty() {
        return Ok(None);
    }
    let (divisors, verdicts): (Vec<_>, Vec<_>) = found.into_iter().unzip();
    Ok(Some(ClassificationEntry {
        wt: *wt,
        alpha: a_invariant(wt),
        genus: genus(wt)?,
        p_g: geometric_genus(wt)?,
        branch_count: divisors[0].branch_count(),
        divisors,
        verdicts,
    }))
}

fn run_pool<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match workers {
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

/// Like [`classify`], restricted to candidate types accepted by `keep`.
pub fn classify_filtered<F>(alpha: u64, opts: ClassifyOptions, keep: F) -> Result<Vec<ClassificationEntry>>
where
    F: Fn(&WeightedType) -> bool + Sync,
{
    if alpha == 0 {
        return Err(Error::AlphaOutOfRange(0));
    }
    let cands: Vec<WeightedType> = candidate_types(alpha).into_iter().filter(|w| keep(w)).collect();
    let results: Vec<Result<Option<ClassificationEntry>>> =
        run_pool(opts.workers, || cands.par_iter().map(|w| entry_for(w, opts.max_n)).collect());
    let mut out = Vec::new();
    for r in results {
        if let Some(e) = r? {
            out.push(e);
        }
    }
    Ok(out)
}

pub fn classify(alpha: u64, opts: ClassifyOptions) -> Result<Vec<ClassificationEntry>> {
    classify_filtered(alpha, opts, |_| true)
}

/// A fixed type together with its divisor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyMember {
    pub name: String,
    #[serde(rename = "type")]
    pub wt: WeightedType,
    pub divisor: FractionalDivisor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyItem {
    Fixed(FamilyMember),
    /// `(2,n,n+1;2n+2)` with `D = -Q + P_1/2 + P_2/2 + P_3/n`, `n >= 2`.
    DSeries {
        name: String,
        type_template: String,
        divisor_template: String,
        n_min: u64,
    },
    CyclicQuotient {
        alpha: i64,
        ring: String,
        caveat: String,
    },
}

/// The `D_{n+2}` member of the `alpha = -1` series.
pub fn d_series_member(n: u64) -> Result<FamilyMember> {
    if n < 2 {
        return Err(Error::InvalidType(format!("D series needs n >= 2, got {n}")));
    }
    let mut pairs = vec![(1, 2), (1, 2)];
    pairs.push((1, n));
    Ok(FamilyMember {
        name: format!("D{}", n + 2),
        wt: WeightedType::new(2, n, n + 1, 2 * n + 2)?,
        divisor: FractionalDivisor::from_pairs(0, -1, &pairs)?,
    })
}

fn fixed(name: &str, t: (u64, u64, u64, u64), g: u64, e: i64, br: &[(u64, u64)]) -> FamilyItem {
    FamilyItem::Fixed(FamilyMember {
        name: name.to_string(),
        wt: WeightedType::new(t.0, t.1, t.2, t.3).expect("valid fixed type"),
        divisor: FractionalDivisor::from_pairs(g, e, br).expect("valid fixed divisor"),
    })
}

/// Closed-form answer for `alpha <= 0`.
pub fn special_alpha_nonpositive(alpha: i64) -> Result<Vec<FamilyItem>> {
    match alpha {
        a if a > 0 => Err(Error::AlphaOutOfRange(a)),
        0 => Ok(vec![
            fixed("deg D = 1", (1, 2, 3, 6), 1, 1, &[]),
            fixed("deg D = 2", (1, 1, 2, 4), 1, 2, &[]),
            fixed("deg D = 3", (1, 1, 1, 3), 1, 3, &[]),
        ]),
        -1 => Ok(vec![
            fixed("E6", (3, 4, 6, 12), 0, -1, &[(1, 2), (1, 3), (1, 3)]),
            fixed("E7", (4, 6, 9, 18), 0, -1, &[(1, 2), (1, 3), (1, 4)]),
            fixed("E8", (6, 10, 15, 30), 0, -1, &[(1, 2), (1, 3), (1, 5)]),
            FamilyItem::DSeries {
                name: "D_{n+2}".into(),
                type_template: "(2,n,n+1;2n+2)".into(),
                divisor_template: "g=0, E=-1 + 1/2 + 1/2 + 1/n".into(),
                n_min: 2,
            },
        ]),
        a => Ok(vec![FamilyItem::CyclicQuotient {
            alpha: a,
            ring: "k[u,v,w]/(uv - w^n)".into(),
            caveat: "at most two branch points; the type (a,b,c;h) is not determined by the ring".into(),
        }]),
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PgReport {
    /// Entries with `p_g = 1` at `alpha = 7`.
    pub alpha7: Vec<ClassificationEntry>,
    /// `(alpha, number of p_g = 1 entries)` for each alpha scanned.
    pub counts: Vec<(u64, usize)>,
    pub violations: Vec<String>,
}

impl PgReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn pg_one(alpha: u64, opts: ClassifyOptions) -> Result<Vec<ClassificationEntry>> {
    classify_filtered(alpha, opts, |w| geometric_genus(w) == Ok(1))
}

type ExpectedPgOne = ((u64, u64, u64, u64), &'static [(u64, u64)]);

/// `p_g = 1` forces `alpha <= 7`, with exactly three types at `alpha = 7`.
/// Scans `alpha` in 6..=12.
pub fn pg_theorem_check(opts: ClassifyOptions) -> Result<PgReport> {
    let expected: [ExpectedPgOne; 3] = [
        ((8, 9, 12, 36), &[(2, 3), (1, 4), (1, 8)]),
        ((8, 10, 15, 40), &[(1, 2), (2, 5), (2, 15)]),
        ((8, 10, 25, 50), &[(1, 2), (2, 5), (1, 8)]),
    ];
    let mut report = PgReport::default();
    for alpha in 6..=12 {
        let entries = pg_one(alpha, opts)?;
        report.counts.push((alpha, entries.len()));
        if alpha == 7 {
            let mut types: Vec<_> = entries.iter().map(|e| e.wt).collect();
            types.sort();
            for (t, br) in expected {
                let wt = WeightedType::new(t.0, t.1, t.2, t.3)?;
                let want = FractionalDivisor::from_pairs(0, -1, br)?;
                match entries.iter().find(|e| e.wt == wt) {
                    None => report.violations.push(format!("alpha=7: {wt} missing")),
                    Some(e) if !e.divisors.contains(&want) => report
                        .violations
                        .push(format!("alpha=7: {wt} lacks divisor {want}")),
                    Some(_) => {}
                }
            }
            if entries.len() != expected.len() {
                let list: Vec<String> = types.iter().map(|t| t.to_string()).collect();
                report
                    .violations
                    .push(format!("alpha=7: expected 3 types, found {}", list.join(" ")));
            }
            report.alpha7 = entries;
        } else if !entries.is_empty() {
            let list: Vec<String> = entries.iter().map(|e| e.wt.to_string()).collect();
            report
                .violations
                .push(format!("alpha={alpha}: unexpected p_g=1 types {}", list.join(" ")));
        }
    }
    Ok(report)
}

/// Entries with `dim R_{alpha-1} = dim R_{alpha+1} = 0`; expected empty.
pub fn neighbor_nonvanishing_check(entries: &[ClassificationEntry]) -> Result<Vec<WeightedType>> {
    let mut bad = Vec::new();
    for e in entries {
        let alpha = u64::try_from(e.alpha).map_err(|_| Error::AlphaOutOfRange(e.alpha))?;
        let hs = hilbert_coeffs(&e.wt, alpha + 1)?;
        let below = alpha.checked_sub(1).map_or(0, |n| hs[n as usize]);
        if below == 0 && hs[alpha as usize + 1] == 0 {
            bad.push(e.wt);
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dpd::{duality_check, gorenstein_check, shifted_floor_identities};

    fn wt(a: u64, b: u64, c: u64, h: u64) -> WeightedType {
        WeightedType::new(a, b, c, h).unwrap()
    }

    fn div(g: u64, e: i64, br: &[(u64, u64)]) -> FractionalDivisor {
        FractionalDivisor::from_pairs(g, e, br).unwrap()
    }

    #[test]
    fn candidate_examples() {
        let c1 = candidate_types(1);
        assert!(c1.contains(&wt(1, 2, 3, 7)));
        assert!(!c1.iter().any(|t| t.weights() == [1, 1, 9]));
        assert!(c1.windows(2).all(|w| w[0] < w[1]));
        assert!(candidate_types(7).contains(&wt(8, 9, 12, 36)));
    }

    #[test]
    fn divisor_search_examples() {
        assert_eq!(divisor_search(&wt(1, 2, 3, 7)).unwrap(), vec![div(1, 0, &[(1, 2), (2, 3)])]);
        assert_eq!(divisor_search(&wt(1, 1, 1, 4)).unwrap(), vec![div(3, 4, &[])]);
        assert!(divisor_search(&wt(8, 9, 12, 36))
            .unwrap()
            .contains(&div(0, -1, &[(2, 3), (1, 4), (1, 8)])));
        assert_eq!(divisor_search(&wt(1, 2, 3, 6)), Err(Error::AlphaOutOfRange(0)));
    }

    #[test]
    fn unit_fraction_search_small() {
        // 1/q1 + 1/q2 + 1/q3 = 1 over q | 12
        let qs = vec![2, 3, 4, 6, 12];
        let units: Vec<u128> = qs.iter().map(|&q| 12 / q as u128).collect();
        let got = unit_fraction_multisets(&qs, &units, 3, 12);
        assert_eq!(got, vec![vec![2, 3, 6], vec![2, 4, 4], vec![3, 3, 3]]);
    }

    #[test]
    fn alpha_one_count_and_invariants() {
        let entries = classify(1, ClassifyOptions::default()).unwrap();
        assert_eq!(entries.len(), 31);
        for e in &entries {
            for d in &e.divisors {
                assert_eq!(d.deg_total(), deg_d(&e.wt));
                assert_eq!(gorenstein_check(d, 1), Ok(()));
                assert!(duality_check(d, 1));
                assert!(shifted_floor_identities(d, 1));
            }
        }
        assert!(neighbor_nonvanishing_check(&entries).unwrap().is_empty());
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let one = classify(2, ClassifyOptions { workers: Some(1), max_n: None }).unwrap();
        let many = classify(2, ClassifyOptions { workers: Some(4), max_n: None }).unwrap();
        assert_eq!(one, many);
    }

    #[test]
    fn alpha_two_genus_zero_three_branches() {
        let entries = classify(2, ClassifyOptions::default()).unwrap();
        let picked: Vec<_> = entries
            .iter()
            .filter(|e| e.genus == 0 && e.branch_count == 3)
            .map(|e| e.wt)
            .collect();
        assert_eq!(picked.len(), 6);
    }

    #[test]
    fn alpha_zero_rederived_by_search() {
        // every alpha = 0 type with small weights that admits a divisor
        let mut found = Vec::new();
        for a in 1..=30u64 {
            for b in a..=30 {
                for c in b..=30 {
                    if gcd(gcd(a, b), c) != 1 || !normality_filter(&wt(a, b, c, a + b + c), 0).is_empty() {
                        continue;
                    }
                    let t = wt(a, b, c, a + b + c);
                    if let Ok(ds) = search(&t, 0, 3 * t.h()) {
                        for (d, v) in ds {
                            assert_eq!(v, DimsVerdict::Consistent);
                            found.push((t, d));
                        }
                    }
                }
            }
        }
        let fixed: Vec<_> = special_alpha_nonpositive(0)
            .unwrap()
            .into_iter()
            .map(|item| match item {
                FamilyItem::Fixed(m) => (m.wt, m.divisor),
                other => panic!("unexpected {other:?}"),
            })
            .collect();
        found.sort();
        let mut want = fixed.clone();
        want.sort();
        assert_eq!(found, want);
    }

    #[test]
    fn alpha_minus_one_families() {
        let items = special_alpha_nonpositive(-1).unwrap();
        assert_eq!(items.len(), 4);
        for item in &items {
            if let FamilyItem::Fixed(m) = item {
                assert_eq!(a_invariant(&m.wt), -1);
                assert_eq!(m.divisor.deg_total(), deg_d(&m.wt));
                assert_eq!(gorenstein_check(&m.divisor, -1), Ok(()));
            }
        }
        for n in 2..=20 {
            let m = d_series_member(n).unwrap();
            assert_eq!(a_invariant(&m.wt), -1);
            assert_eq!(m.divisor.deg_total(), deg_d(&m.wt));
            assert_eq!(gorenstein_check(&m.divisor, -1), Ok(()));
        }
        assert!(matches!(
            special_alpha_nonpositive(-3).unwrap()[..],
            [FamilyItem::CyclicQuotient { .. }]
        ));
        assert!(special_alpha_nonpositive(1).is_err());
    }
}
