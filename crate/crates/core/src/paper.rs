//! Published case listings for `alpha = 1..=6`, embedded at build time, and the
//! comparison of those listings with the enumerator's output.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dpd::{Branch, FractionalDivisor};
use crate::enumerator::{classify, ClassificationEntry, ClassifyOptions};
use crate::error::{Error, Result};
use crate::graded_ring::{normality_filter, WeightedType};

const FIXTURE: &str = include_str!("../fixtures/paper_cases.jsonl");

/// One printed case, with typos corrected (see notes starting with `erratum:`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PaperCase {
    pub case_id: String,
    pub alpha: u64,
    #[serde(rename = "type")]
    pub wt: WeightedType,
    pub divisor: FractionalDivisor,
}

#[derive(Deserialize)]
struct RawCase {
    case_id: String,
    alpha: u64,
    a: u64,
    b: u64,
    c: u64,
    h: u64,
    genus: u64,
    #[serde(rename = "degE")]
    deg_e: i64,
    branches: Vec<Branch>,
    notes: Vec<String>,
}

impl PaperCase {
    pub fn errata(&self) -> impl Iterator<Item = &str> {
        self.divisor
            .class_notes()
            .iter()
            .filter_map(|n| n.strip_prefix("erratum: "))
    }
}

pub fn paper_cases() -> Result<Vec<PaperCase>> {
    FIXTURE
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            let err = |message: String| Error::Fixture { line: i + 1, message };
            let raw: RawCase = serde_json::from_str(line).map_err(|e| err(e.to_string()))?;
            let wt = WeightedType::new(raw.a, raw.b, raw.c, raw.h).map_err(|e| err(e.to_string()))?;
            let divisor = FractionalDivisor::new(raw.genus, raw.deg_e, raw.branches)
                .map_err(|e| err(e.to_string()))?
                .with_notes(raw.notes);
            Ok(PaperCase {
                case_id: raw.case_id,
                alpha: raw.alpha,
                wt,
                divisor,
            })
        })
        .collect()
}

pub fn paper_cases_for(alpha: u64) -> Result<Vec<PaperCase>> {
    Ok(paper_cases()?.into_iter().filter(|c| c.alpha == alpha).collect())
}

pub const TABLE_ROWS: [&str; 6] = ["g=0, br=3", "g=0, br>=4", "g=1", "g=2", "g=3", "g>=4"];

/// Printed count table: rows as in [`TABLE_ROWS`], then the printed total.
const PRINTED_TABLE: [[u64; 7]; 6] = [
    [14, 8, 6, 2, 1, 0, 31],
    [6, 1, 8, 2, 2, 2, 21],
    [7, 10, 8, 3, 2, 4, 34],
    [7, 2, 7, 3, 3, 6, 28],
    [11, 22, 8, 6, 5, 8, 58],
    [0, 1, 8, 0, 1, 9, 19],
];

/// Printed case lines that repeat an earlier line verbatim: `(alpha, repeat, original)`.
pub const PRINTED_DUPLICATES: [(u64, &str, &str); 2] = [(5, "5-C-16", "5-C-15"), (6, "6-B-7", "6-B-6")];

pub fn printed_rows(alpha: u64) -> Option<[u64; 6]> {
    let row = PRINTED_TABLE.get(usize::try_from(alpha).ok()?.checked_sub(1)?)?;
    let mut out = [0; 6];
    out.copy_from_slice(&row[..6]);
    Some(out)
}

pub fn printed_total(alpha: u64) -> Option<u64> {
    PRINTED_TABLE
        .get(usize::try_from(alpha).ok()?.checked_sub(1)?)
        .map(|r| r[6])
}

/// Row index in [`TABLE_ROWS`]; `None` for genus 0 with fewer than three branches.
pub fn table_row(genus: u64, branch_count: usize) -> Option<usize> {
    match (genus, branch_count) {
        (0, 3) => Some(0),
        (0, r) if r >= 4 => Some(1),
        (0, _) => None,
        (g, _) => Some((g as usize + 1).min(5)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MissingCase {
    pub case_id: String,
    #[serde(rename = "type")]
    pub wt: WeightedType,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtraEntry {
    #[serde(rename = "type")]
    pub wt: WeightedType,
    pub genus: u64,
    pub br: usize,
    pub divisors: Vec<FractionalDivisor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowCount {
    pub row: String,
    pub printed: u64,
    pub listed: u64,
    pub enumerated: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Erratum {
    pub case_id: String,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Duplicate {
    pub line: String,
    pub repeats: String,
}

/// Three-way comparison of printed listing, printed table and enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reconciliation {
    pub alpha: u64,
    /// Printed cases not reproduced by the enumeration.
    pub missing: Vec<MissingCase>,
    /// Enumerated types that no printed case mentions.
    pub extra: Vec<ExtraEntry>,
    pub rows: Vec<RowCount>,
    pub printed_total: u64,
    pub printed_row_sum: u64,
    pub printed_lines: u64,
    pub listed_distinct: u64,
    pub enumerated_total: u64,
    pub duplicates: Vec<Duplicate>,
    pub errata: Vec<Erratum>,
}

impl Reconciliation {
    /// No printed case is missing.
    pub fn passed(&self) -> bool {
        self.missing.is_empty()
    }

    /// `listed - missing types + extra = enumerated`.
    pub fn balances(&self) -> bool {
        let missing_types: BTreeSet<_> = self.missing.iter().map(|m| m.wt).collect();
        self.listed_distinct + self.extra.len() as u64
            == self.enumerated_total + missing_types.len() as u64
    }
}

pub fn reconcile(alpha: u64, entries: &[ClassificationEntry]) -> Result<Reconciliation> {
    let rows_printed = printed_rows(alpha).ok_or(Error::AlphaOutOfRange(alpha as i64))?;
    let cases = paper_cases_for(alpha)?;

    let mut missing = Vec::new();
    for case in &cases {
        let violations = normality_filter(&case.wt, alpha as i64);
        let reason = if !violations.is_empty() {
            let v: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            Some(format!("rejected by normality filter: {}", v.join("; ")))
        } else {
            match entries.iter().find(|e| e.wt == case.wt) {
                None => Some("type not enumerated".to_string()),
                Some(e) if !e.divisors.contains(&case.divisor) => Some(format!(
                    "printed divisor {} not among enumerated divisors",
                    case.divisor
                )),
                Some(_) => None,
            }
        };
        if let Some(reason) = reason {
            missing.push(MissingCase {
                case_id: case.case_id.clone(),
                wt: case.wt,
                reason,
            });
        }
    }

    let listed_types: BTreeSet<WeightedType> = cases.iter().map(|c| c.wt).collect();
    let extra = entries
        .iter()
        .filter(|e| !listed_types.contains(&e.wt))
        .map(|e| ExtraEntry {
            wt: e.wt,
            genus: e.genus,
            br: e.branch_count,
            divisors: e.divisors.clone(),
        })
        .collect();

    let mut listed = [0u64; 6];
    for c in &cases {
        if let Some(i) = table_row(c.divisor.genus(), c.divisor.branch_count()) {
            listed[i] += 1;
        }
    }
    let mut enumerated = [0u64; 6];
    for e in entries {
        if let Some(i) = table_row(e.genus, e.branch_count) {
            enumerated[i] += 1;
        }
    }
    let rows = (0..6)
        .map(|i| RowCount {
            row: TABLE_ROWS[i].to_string(),
            printed: rows_printed[i],
            listed: listed[i],
            enumerated: enumerated[i],
        })
        .collect();

    let duplicates: Vec<Duplicate> = PRINTED_DUPLICATES
        .iter()
        .filter(|d| d.0 == alpha)
        .map(|d| Duplicate {
            line: d.1.to_string(),
            repeats: d.2.to_string(),
        })
        .collect();
    let errata = cases
        .iter()
        .flat_map(|c| {
            c.errata().map(|n| Erratum {
                case_id: c.case_id.clone(),
                note: n.to_string(),
            })
        })
        .collect();

    Ok(Reconciliation {
        alpha,
        missing,
        extra,
        rows,
        printed_total: printed_total(alpha).unwrap_or(0),
        printed_row_sum: rows_printed.iter().sum(),
        printed_lines: cases.len() as u64 + duplicates.len() as u64,
        listed_distinct: listed_types.len() as u64,
        enumerated_total: entries.len() as u64,
        duplicates,
        errata,
    })
}

pub fn verify_paper(alpha: u64, opts: ClassifyOptions) -> Result<Reconciliation> {
    if !(1..=6).contains(&alpha) {
        return Err(Error::AlphaOutOfRange(alpha as i64));
    }
    let entries = classify(alpha, opts)?;
    reconcile(alpha, &entries)
}

impl fmt::Display for Reconciliation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alpha = {}", self.alpha)?;
        writeln!(f, "(i) printed cases missing from enumeration: {}", self.missing.len())?;
        for m in &self.missing {
            writeln!(f, "    {} {}: {}", m.case_id, m.wt, m.reason)?;
        }
        writeln!(f, "(ii) enumerated types absent from the listing: {}", self.extra.len())?;
        for e in &self.extra {
            let ds: Vec<String> = e.divisors.iter().map(|d| d.to_string()).collect();
            writeln!(f, "    {} g={} br={}  D: {}", e.wt, e.genus, e.br, ds.join(" | "))?;
        }
        writeln!(f, "(iii) counts by row (printed table / printed listing / enumerated):")?;
        for r in &self.rows {
            let mark = if r.printed == r.listed && r.listed == r.enumerated { "" } else { "  *" };
            writeln!(f, "    {:<11} {:>4} {:>4} {:>4}{mark}", r.row, r.printed, r.listed, r.enumerated)?;
        }
        writeln!(
            f,
            "    {:<11} {:>4} {:>4} {:>4}",
            "total", self.printed_total, self.listed_distinct, self.enumerated_total
        )?;
        if self.printed_row_sum != self.printed_total {
            writeln!(
                f,
                "    printed rows sum to {}, printed total is {}",
                self.printed_row_sum, self.printed_total
            )?;
        }
        writeln!(
            f,
            "    printed case lines: {}, distinct types listed: {}",
            self.printed_lines, self.listed_distinct
        )?;
        for d in &self.duplicates {
            writeln!(f, "    duplicate line {} repeats {}", d.line, d.repeats)?;
        }
        if !self.errata.is_empty() {
            writeln!(f, "corrected printed data:")?;
            for e in &self.errata {
                writeln!(f, "    {}: {}", e.case_id, e.note)?;
            }
        }
        Ok(())
    }
}
