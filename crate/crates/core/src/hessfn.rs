//! Hessenberg functions, their lower ideals, and enumeration.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{HbError, Result};
use crate::rootsystem::{build_root_table, Family, LieType, RootTable};

/// Which defining condition a Hessenberg function breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Condition {
    /// Value outside the codomain (type A only; the other types fold this into (1)).
    Codomain,
    /// Numbered condition from the type's definition.
    Numbered(u8),
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::Codomain => write!(f, "codomain"),
            Condition::Numbered(k) => write!(f, "({k})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: Condition,
    /// 1-based row where the condition fails.
    pub row: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ValidityReport {
    pub violations: Vec<Violation>,
}

impl ValidityReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, k: u8) -> bool {
        self.violations
            .iter()
            .any(|v| v.condition == Condition::Numbered(k))
    }
}

/// Check the type-specific defining conditions on a value vector.
pub fn validate(ty: LieType, values: &[usize]) -> Result<ValidityReport> {
    let n = ty.nvars();
    if values.len() != n {
        return Err(HbError::Arity {
            expected: n,
            got: values.len(),
        });
    }
    let h = |i: usize| values[i - 1];
    let mut out = Vec::new();
    let mut fail = |cond: Condition, row: usize| out.push(Violation { condition: cond, row });
    use Condition::{Codomain, Numbered};
    match ty.family {
        Family::A => {
            for i in 1..=n {
                if h(i) < 1 || h(i) > n {
                    fail(Codomain, i);
                }
                if i < n && h(i) > h(i + 1) {
                    fail(Numbered(1), i);
                }
                if h(i) < i {
                    fail(Numbered(2), i);
                }
            }
        }
        Family::B | Family::C => {
            for i in 1..=n {
                let top = 2 * n + 1 - i;
                if h(i) < i || h(i) > top {
                    fail(Numbered(1), i);
                }
                if i < n {
                    if h(i) != top && h(i) > h(i + 1) {
                        fail(Numbered(2), i);
                    }
                    if h(i) == top && h(i + 1) != top - 1 {
                        fail(Numbered(3), i);
                    }
                }
            }
        }
        Family::D => {
            for i in 1..n {
                if h(i) < i || h(i) > 2 * n - 1 - i {
                    fail(Numbered(1), i);
                }
            }
            if h(n) < n || h(n) > 2 * n - 1 {
                fail(Numbered(2), n);
            }
            // (5) at i = n-1 is automatic, so (3)-(6) run over i <= n-2
            for i in 1..n.saturating_sub(1) {
                let top = 2 * n - 1 - i;
                if h(i) != top && h(i) > h(i + 1) {
                    fail(Numbered(3), i);
                }
                if h(i) == top && h(i + 1) != top - 1 {
                    fail(Numbered(4), i);
                }
                if h(i) > n && h(n) < 2 * n - i {
                    fail(Numbered(5), i);
                }
                if h(n) >= 2 * n - i && h(i) < n - 1 {
                    fail(Numbered(6), i);
                }
            }
        }
        Family::G => {
            if !(1..=6).contains(&h(1)) {
                fail(Numbered(1), 1);
            }
            if !(2..=3).contains(&h(2)) {
                fail(Numbered(1), 2);
            }
            if h(3) != 3 {
                fail(Numbered(1), 3);
            }
            if h(1) >= 3 && h(2) != 3 {
                fail(Numbered(2), 1);
            }
        }
    }
    Ok(ValidityReport { violations: out })
}

/// A validated Hessenberg function.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HessFn {
    ty: LieType,
    values: Vec<usize>,
}

impl HessFn {
    pub fn new(ty: LieType, values: Vec<usize>) -> Result<Self> {
        let report = validate(ty, &values)?;
        if !report.is_ok() {
            let reason = report
                .violations
                .iter()
                .map(|v| format!("condition {} at row {}", v.condition, v.row))
                .collect::<Vec<_>>()
                .join(", ");
            return Err(HbError::InvalidHessFn {
                h: format_text(ty, &values),
                reason,
            });
        }
        Ok(HessFn { ty, values })
    }

    /// `h(i) = i` for every row.
    pub fn minimal(ty: LieType) -> Self {
        HessFn {
            ty,
            values: (1..=ty.nvars()).collect(),
        }
    }

    /// The flag case `h(i) = i + e_i`, whose ideal is all of `Φ⁺`.
    pub fn maximal(ty: LieType) -> Self {
        HessFn {
            ty,
            values: ty
                .exponents()
                .iter()
                .enumerate()
                .map(|(k, e)| k + 1 + e)
                .collect(),
        }
    }

    pub fn lie_type(&self) -> LieType {
        self.ty
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `h(i)`, 1-based.
    pub fn at(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn is_flag(&self) -> bool {
        *self == HessFn::maximal(self.ty)
    }

    /// Window sizes `h(i) - i`; the basis exponents satisfy `0 <= m_i <= h(i) - i`.
    pub fn widths(&self) -> Vec<usize> {
        self.values
            .iter()
            .enumerate()
            .map(|(k, &v)| v - (k + 1))
            .collect()
    }

    pub fn complex_dimension(&self) -> usize {
        self.widths().iter().sum()
    }

    pub fn to_ideal(&self) -> LowerIdeal {
        LowerIdeal {
            members: self
                .values
                .iter()
                .enumerate()
                .flat_map(|(k, &v)| {
                    let i = k + 1;
                    (i + 1..=v).map(move |j| (i, j))
                })
                .collect(),
        }
    }

    /// Ideal inclusion `self ⊆ other`.
    pub fn is_sub_of(&self, other: &HessFn) -> bool {
        self.ty == other.ty && self.to_ideal().is_subset(&other.to_ideal())
    }

    /// Functions obtained by removing one root from the ideal.
    pub fn covered(&self) -> Vec<HessFn> {
        (0..self.n())
            .filter_map(|k| {
                let mut v = self.values.clone();
                v[k] = v[k].checked_sub(1)?;
                HessFn::new(self.ty, v).ok()
            })
            .collect()
    }

    pub fn text(&self) -> String {
        format_text(self.ty, &self.values)
    }
}

fn format_text(ty: LieType, values: &[usize]) -> String {
    let vals = values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",");
    format!("{ty}:{vals}")
}

impl fmt::Display for HessFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

impl FromStr for HessFn {
    type Err = HbError;

    /// Text form `D4:3,5,4,7`.
    fn from_str(s: &str) -> Result<Self> {
        let (ty, vals) = s
            .split_once(':')
            .ok_or_else(|| HbError::Parse(format!("expected TYPE:v1,v2,... in {s:?}")))?;
        let ty: LieType = ty.parse()?;
        let values = vals
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<usize>()
                    .map_err(|_| HbError::Parse(format!("bad value {v:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        HessFn::new(ty, values)
    }
}

#[derive(Serialize, Deserialize)]
struct HessFnJson {
    #[serde(rename = "type")]
    family: Family,
    rank: usize,
    h: Vec<usize>,
}

impl Serialize for HessFn {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HessFnJson {
            family: self.ty.family,
            rank: self.ty.rank,
            h: self.values.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HessFn {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = HessFnJson::deserialize(d)?;
        let ty = LieType::new(raw.family, raw.rank).map_err(serde::de::Error::custom)?;
        HessFn::new(ty, raw.h).map_err(serde::de::Error::custom)
    }
}

/// A set of roots named by chain index `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct LowerIdeal {
    members: BTreeSet<(usize, usize)>,
}

impl LowerIdeal {
    /// Unchecked; [`from_ideal`] does the lower-ideal checks.
    pub fn from_members(members: impl IntoIterator<Item = (usize, usize)>) -> Self {
        LowerIdeal {
            members: members.into_iter().collect(),
        }
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.members.contains(&(i, j))
    }

    pub fn members(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &LowerIdeal) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Roots of `self` not in `sub`, row by row with columns descending.
    pub fn difference(&self, sub: &LowerIdeal) -> Vec<(usize, usize)> {
        let mut d: Vec<_> = self.members.difference(&sub.members).copied().collect();
        d.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        d
    }

    /// Downward closure in the root poset.
    pub fn is_downward_closed(&self, table: &RootTable) -> Result<bool> {
        for (i, j) in self.members() {
            let alpha = table.root(i, j)?;
            for beta in table.roots() {
                if !self.contains(beta.row, beta.col) && table.root_le(beta, alpha)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `h_I(i) = i + #(I ∩ Φ⁺_i)`.
pub fn from_ideal(ideal: &LowerIdeal, table: &RootTable) -> Result<HessFn> {
    let ty = table.lie_type();
    for (i, j) in ideal.members() {
        table
            .root(i, j)
            .map_err(|_| HbError::NotLowerIdeal(format!("({i},{j}) is not a root of {ty}")))?;
        if j > i + 1 && !ideal.contains(i, j - 1) {
            return Err(HbError::NotLowerIdeal(format!(
                "({i},{j}) present but ({i},{}) missing",
                j - 1
            )));
        }
    }
    if !ideal.is_downward_closed(table)? {
        return Err(HbError::NotLowerIdeal("not downward closed".into()));
    }
    let values = (1..=ty.nvars())
        .map(|i| i + ideal.members().filter(|&(r, _)| r == i).count())
        .collect();
    HessFn::new(ty, values)
        .map_err(|e| HbError::Internal(format!("lower ideal maps to invalid function: {e}")))
}

pub fn to_ideal(h: &HessFn) -> LowerIdeal {
    h.to_ideal()
}

fn pair_ok(ty: LieType, i: usize, hi: usize, hnext: usize) -> bool {
    let n = ty.nvars();
    match ty.family {
        Family::A => hi <= hnext,
        Family::B | Family::C => {
            let top = 2 * n + 1 - i;
            if hi == top {
                hnext == top - 1
            } else {
                hi <= hnext
            }
        }
        Family::D if i + 1 < n => {
            let top = 2 * n - 1 - i;
            if hi == top {
                hnext == top - 1
            } else {
                hi <= hnext
            }
        }
        _ => true,
    }
}

fn value_range(ty: LieType, i: usize) -> (usize, usize) {
    let n = ty.nvars();
    match ty.family {
        Family::A => (i, n),
        Family::B | Family::C => (i, 2 * n + 1 - i),
        Family::D if i < n => (i, 2 * n - 1 - i),
        Family::D => (n, 2 * n - 1),
        Family::G => [(1, 6), (2, 3), (3, 3)][i - 1],
    }
}

/// Every Hessenberg function of the type, sorted lexicographically.
pub fn enumerate_all(ty: LieType) -> Vec<HessFn> {
    fn dfs(ty: LieType, prefix: &mut Vec<usize>, out: &mut Vec<HessFn>) {
        let n = ty.nvars();
        let i = prefix.len() + 1;
        if i > n {
            if let Ok(h) = HessFn::new(ty, prefix.clone()) {
                out.push(h);
            }
            return;
        }
        let (lo, hi) = value_range(ty, i);
        for v in lo..=hi {
            if let Some(&prev) = prefix.last() {
                if !pair_ok(ty, i - 1, prev, v) {
                    continue;
                }
            }
            prefix.push(v);
            dfs(ty, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    dfs(ty, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.values.cmp(&b.values));
    out.dedup();
    out
}

/// Every `h'` with `to_ideal(h') ⊆ to_ideal(h)`, including `h` and the minimal function.
pub fn enumerate_sub(h: &HessFn) -> Vec<HessFn> {
    let ideal = h.to_ideal();
    enumerate_all(h.ty)
        .into_iter()
        .filter(|g| g.to_ideal().is_subset(&ideal))
        .collect()
}

pub fn complex_dimension(h: &HessFn) -> usize {
    h.complex_dimension()
}

/// The root table matching `h`'s type.
pub fn table_for(h: &HessFn) -> RootTable {
    build_root_table(h.ty).expect("validated type")
}
