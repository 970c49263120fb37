//! Plain-text tables.

use std::fmt::Write as _;

use whsl_core::enumerator::{ClassificationEntry, FamilyItem};
use whsl_core::graded_ring::{deg_d, NormalityViolation, WeightedType};

pub fn invariants(
    wt: &WeightedType,
    alpha: i64,
    genus: Option<u64>,
    p_g: Option<u64>,
    coeffs: &[u64],
    violations: &[NormalityViolation],
) -> String {
    let na = || "n/a (negative a-invariant)".to_string();
    let mut s = String::new();
    let _ = writeln!(s, "type       {wt}");
    let _ = writeln!(s, "alpha      {alpha}");
    let _ = writeln!(s, "deg D      {}", deg_d(wt));
    let _ = writeln!(s, "genus      {}", genus.map_or_else(na, |g| g.to_string()));
    let _ = writeln!(s, "p_g        {}", p_g.map_or_else(na, |g| g.to_string()));
    if violations.is_empty() {
        let _ = writeln!(s, "normality  pass (necessary conditions)");
    } else {
        let _ = writeln!(s, "normality  fail");
        for v in violations {
            let _ = writeln!(s, "           {v}");
        }
    }
    let list: Vec<String> = coeffs.iter().map(u64::to_string).collect();
    let _ = writeln!(s, "dim R_n    n=0..{}: {}", coeffs.len() - 1, list.join(" "));
    s
}

pub fn entries(alpha: u64, entries: &[ClassificationEntry]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "alpha = {alpha}: {} types", entries.len());
    let _ = writeln!(s, "{:<16} {:>3} {:>4} {:>3}  {:<40} verdict", "type", "g", "p_g", "br", "divisor");
    for e in entries {
        for (i, (d, v)) in e.divisors.iter().zip(&e.verdicts).enumerate() {
            let notes = if d.class_notes().is_empty() {
                String::new()
            } else {
                format!(" [{}]", d.class_notes().join("; "))
            };
            if i == 0 {
                let _ = writeln!(
                    s,
                    "{:<16} {:>3} {:>4} {:>3}  {:<40} {v}{notes}",
                    e.wt.to_string(),
                    e.genus,
                    e.p_g,
                    e.branch_count,
                    d.to_string()
                );
            } else {
                let _ = writeln!(s, "{:<16} {:>3} {:>4} {:>3}  {:<40} {v}{notes}", "", "", "", "", d.to_string());
            }
        }
    }
    s
}

pub fn families(alpha: i64, items: &[FamilyItem]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "alpha = {alpha}");
    for item in items {
        match item {
            FamilyItem::Fixed(m) => {
                let _ = writeln!(s, "  {:<10} {:<14} D: {}", m.name, m.wt.to_string(), m.divisor);
            }
            FamilyItem::DSeries {
                name,
                type_template,
                divisor_template,
                n_min,
            } => {
                let _ = writeln!(s, "  {name:<10} {type_template:<14} D: {divisor_template}  (n >= {n_min})");
            }
            FamilyItem::CyclicQuotient { ring, caveat, .. } => {
                let _ = writeln!(s, "  {ring}");
                let _ = writeln!(s, "  note: {caveat}");
            }
        }
    }
    s
}
