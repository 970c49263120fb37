//! Star-shaped resolution graphs and their intersection matrices.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::hj_expansion;
use crate::dpd::FractionalDivisor;
use crate::error::Result;

/// Central curve of genus `g` with one Hirzebruch–Jung chain per branch point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ResolutionGraph {
    #[serde(rename = "genus")]
    pub central_genus: u64,
    #[serde(rename = "centralSelfInt")]
    pub central_self_intersection: i64,
    /// Self-intersections along each arm, from the central curve outward.
    pub arms: Vec<Vec<i64>>,
    #[serde(skip)]
    pub provenance: FractionalDivisor,
}

impl ResolutionGraph {
    pub fn vertex_count(&self) -> usize {
        1 + self.arms.iter().map(Vec::len).sum::<usize>()
    }

    /// No `(-1)`-curve of genus 0 meeting at most two others.
    pub fn is_minimal_good(&self) -> bool {
        self.central_self_intersection != -1 || self.central_genus > 0 || self.arms.len() >= 3
    }
}

pub fn build_graph(d: &FractionalDivisor) -> Result<ResolutionGraph> {
    let arms = d
        .branches()
        .iter()
        .map(|b| Ok(hj_expansion(b.q(), b.p())?.terms().iter().map(|t| -t).collect()))
        .collect::<Result<Vec<Vec<i64>>>>()?;
    Ok(ResolutionGraph {
        central_genus: d.genus(),
        central_self_intersection: -(d.deg_e() + d.branch_count() as i64),
        arms,
        provenance: d.clone(),
    })
}

/// Symmetric integer matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntMatrix(Vec<Vec<i64>>);

impl IntMatrix {
    /// Rejects non-square or non-symmetric input.
    pub fn new(rows: Vec<Vec<i64>>) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        let symmetric = (0..n).all(|i| (0..i).all(|j| rows[i][j] == rows[j][i]));
        symmetric.then_some(Self(rows))
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.0
    }

    /// Leading principal minors `det(M[..k, ..k])` for `k = 1..=n`, by Bareiss
    /// elimination without pivoting. Stops early at the first zero minor.
    pub fn leading_minors(&self) -> Vec<BigInt> {
        let n = self.size();
        let mut a: Vec<Vec<BigInt>> = self
            .0
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let mut minors = Vec::with_capacity(n);
        let mut prev = BigInt::from(1);
        for k in 0..n {
            let pivot = a[k][k].clone();
            minors.push(pivot.clone());
            if pivot.is_zero() {
                break;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&pivot * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = pivot;
        }
        minors
    }

    pub fn determinant(&self) -> BigInt {
        let m = self.leading_minors();
        if m.len() < self.size() {
            BigInt::zero()
        } else {
            m.last().cloned().unwrap_or_else(|| BigInt::from(1))
        }
    }
}

/// Central vertex first, then each arm from the centre outward.
pub fn intersection_matrix(g: &ResolutionGraph) -> IntMatrix {
    let n = g.vertex_count();
    let mut m = vec![vec![0i64; n]; n];
    m[0][0] = g.central_self_intersection;
    let mut idx = 1;
    for arm in &g.arms {
        let mut prev = 0;
        for &w in arm {
            m[idx][idx] = w;
            m[idx][prev] = 1;
            m[prev][idx] = 1;
            prev = idx;
            idx += 1;
        }
    }
    IntMatrix(m)
}

/// `(-1)^k` times every leading `k x k` minor is positive.
pub fn is_negative_definite(m: &IntMatrix) -> bool {
    let minors = m.leading_minors();
    minors.len() == m.size()
        && minors.iter().enumerate().all(|(k, d)| {
            if k % 2 == 0 {
                d.is_negative()
            } else {
                d.is_positive()
            }
        })
}

pub fn to_dot(g: &ResolutionGraph) -> String {
    let mut s = String::from("graph resolution {\n");
    let _ = writeln!(
        s,
        "  c [label=\"g={}, {}\"];",
        g.central_genus, g.central_self_intersection
    );
    for (i, arm) in g.arms.iter().enumerate() {
        for (j, w) in arm.iter().enumerate() {
            let _ = writeln!(s, "  a{i}_{j} [label=\"{w}\"];");
        }
    }
    for (i, arm) in g.arms.iter().enumerate() {
        let mut prev = "c".to_string();
        for j in 0..arm.len() {
            let cur = format!("a{i}_{j}");
            let _ = writeln!(s, "  {prev} -- {cur};");
            prev = cur;
        }
    }
    s.push_str("}\n");
    s
}
