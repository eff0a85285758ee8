//! Positive roots of types A, B, C, D and G2 in ambient coordinates,
//! decomposed into one maximal chain per Weyl exponent.
//!
//! Row `i` of a [`RootTable`] holds the chain `α_{i,i+1} ⋖ α_{i,i+2} ⋖ … ⋖ α_{i,i+e_i}`;
//! its first entry is the `i`-th simple root (rows with `e_i = 0` are empty).
//! Rows and columns are 1-based, matching the usual `(i, j)` labels.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{HbError, Result};
use crate::hessfn::LowerIdeal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::G => 'G',
        }
    }
}

impl FromStr for Family {
    type Err = HbError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            "G" | "g" => Ok(Family::G),
            other => Err(HbError::UnsupportedType(other.to_string())),
        }
    }
}

/// A Lie type together with its rank, e.g. `A4`, `D4`, `G2`.
///
/// `rank` is always the Lie rank: `A4` acts on five ambient variables
/// `x1..x5`. G2 is carried in three ambient variables with `x1+x2+x3`
/// killed by the last generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LieType {
    #[serde(rename = "type")]
    pub family: Family,
    pub rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A | Family::B | Family::C => rank >= 1,
            Family::D => rank >= 2,
            Family::G => rank == 2,
        };
        if ok {
            Ok(LieType { family, rank })
        } else {
            Err(HbError::UnsupportedType(format!("{}{}", family.letter(), rank)))
        }
    }

    /// Type A with `n` ambient variables, i.e. `A_{n-1}`.
    pub fn a_with_vars(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(HbError::UnsupportedType(format!("A{}", n as i64 - 1)));
        }
        LieType::new(Family::A, n - 1)
    }

    pub fn g2() -> Self {
        LieType { family: Family::G, rank: 2 }
    }

    /// Number of ambient variables, which is also the number of chains
    /// and the length of a Hessenberg function.
    pub fn nvars(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::B | Family::C | Family::D => self.rank,
            Family::G => 3,
        }
    }

    /// Chain lengths `e_1, …, e_n` (zero-padded for A and G2).
    pub fn exponents(&self) -> Vec<usize> {
        let n = self.nvars();
        (1..=n)
            .map(|i| match self.family {
                Family::A => n - i,
                Family::B | Family::C => 2 * (n - i) + 1,
                Family::D if i < n => 2 * (n - i) - 1,
                Family::D => n - 1,
                Family::G => [5, 1, 0][i - 1],
            })
            .collect()
    }

    pub fn num_positive_roots(&self) -> usize {
        let r = self.rank;
        match self.family {
            Family::A => r * (r + 1) / 2,
            Family::B | Family::C => r * r,
            Family::D => r * (r - 1),
            Family::G => 6,
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for LieType {
    type Err = HbError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars
            .next()
            .ok_or_else(|| HbError::Parse("empty type".into()))?;
        let family: Family = letter.to_string().parse()?;
        let rank: usize = chars
            .as_str()
            .trim()
            .parse()
            .map_err(|_| HbError::Parse(format!("bad rank in type {s:?}")))?;
        LieType::new(family, rank)
    }
}

/// A positive root `α_{i,j}` as an integer linear form in `x_1..x_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PositiveRoot {
    #[serde(rename = "i")]
    pub row: usize,
    #[serde(rename = "j")]
    pub col: usize,
    pub coeffs: Vec<i64>,
}

/// The fixed chain decomposition `Φ⁺ = ⊔ Φ⁺_i` for one Lie type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootTable {
    ty: LieType,
    chains: Vec<Vec<PositiveRoot>>,
    simple: Vec<(usize, Vec<i64>)>,
}

#[derive(Serialize, Deserialize)]
struct RootTableJson {
    #[serde(rename = "type")]
    family: Family,
    rank: usize,
    chains: Vec<Vec<PositiveRoot>>,
}

impl Serialize for RootTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RootTableJson {
            family: self.ty.family,
            rank: self.ty.rank,
            chains: self.chains.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RootTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RootTableJson::deserialize(d)?;
        let ty = LieType::new(raw.family, raw.rank).map_err(serde::de::Error::custom)?;
        let table = build_root_table(ty).map_err(serde::de::Error::custom)?;
        if table.chains != raw.chains {
            return Err(serde::de::Error::custom(
                "chains do not match the root table of this type",
            ));
        }
        Ok(table)
    }
}

fn unit(n: usize, k: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[k - 1] = c;
    v
}

fn combo(n: usize, terms: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; n];
    for &(k, c) in terms {
        v[k - 1] += c;
    }
    v
}

/// Linear form of `α_{i,j}` (1-based). Panics outside the chain window;
/// callers index through [`RootTable::root`] when the indices are untrusted.
pub(crate) fn root_coeffs(ty: LieType, i: usize, j: usize) -> Vec<i64> {
    let n = ty.nvars();
    match ty.family {
        Family::A => combo(n, &[(i, 1), (j, -1)]),
        Family::B => {
            if j <= n {
                combo(n, &[(i, 1), (j, -1)])
            } else if j == n + 1 {
                unit(n, i, 1)
            } else {
                combo(n, &[(i, 1), (2 * n + 2 - j, 1)])
            }
        }
        Family::C => {
            if j <= n {
                combo(n, &[(i, 1), (j, -1)])
            } else if j == 2 * n + 1 - i {
                unit(n, i, 2)
            } else {
                combo(n, &[(i, 1), (2 * n + 1 - j, 1)])
            }
        }
        Family::D => {
            if i == n {
                combo(n, &[(2 * n - j, 1), (n, 1)])
            } else if j <= n {
                combo(n, &[(i, 1), (j, -1)])
            } else {
                combo(n, &[(i, 1), (2 * n - j, 1)])
            }
        }
        Family::G => match (i, j) {
            (1, 2) => vec![1, -1, 0],
            (1, 3) => vec![-1, 0, 1],
            (1, 4) => vec![0, -1, 1],
            (1, 5) => vec![1, -2, 1],
            (1, 6) => vec![-1, -1, 2],
            (2, 3) => vec![-2, 1, 1],
            _ => panic!("no G2 root at ({i},{j})"),
        },
    }
}

pub fn build_root_table(ty: LieType) -> Result<RootTable> {
    let ty = LieType::new(ty.family, ty.rank)?;
    let exps = ty.exponents();
    let chains: Vec<Vec<PositiveRoot>> = exps
        .iter()
        .enumerate()
        .map(|(r, &e)| {
            let i = r + 1;
            (i + 1..=i + e)
                .map(|j| PositiveRoot {
                    row: i,
                    col: j,
                    coeffs: root_coeffs(ty, i, j),
                })
                .collect()
        })
        .collect();
    let simple = chains
        .iter()
        .filter_map(|c| c.first().map(|r| (r.row, r.coeffs.clone())))
        .collect::<Vec<_>>();
    if simple.len() != ty.rank {
        return Err(HbError::Internal(format!(
            "{ty}: {} simple roots, expected {}",
            simple.len(),
            ty.rank
        )));
    }
    Ok(RootTable { ty, chains, simple })
}

impl RootTable {
    pub fn lie_type(&self) -> LieType {
        self.ty
    }

    pub fn nvars(&self) -> usize {
        self.ty.nvars()
    }

    pub fn chains(&self) -> &[Vec<PositiveRoot>] {
        &self.chains
    }

    pub fn chain(&self, row: usize) -> &[PositiveRoot] {
        &self.chains[row - 1]
    }

    pub fn roots(&self) -> impl Iterator<Item = &PositiveRoot> {
        self.chains.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.chains.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn root(&self, row: usize, col: usize) -> Result<&PositiveRoot> {
        row.checked_sub(1)
            .and_then(|r| self.chains.get(r))
            .and_then(|c| col.checked_sub(row + 1).and_then(|k| c.get(k)))
            .ok_or_else(|| {
                HbError::IndexOutOfRange(format!("no root α_{{{row},{col}}} in {}", self.ty))
            })
    }

    /// Simple roots in row order, each tagged with the row whose chain it starts.
    pub fn simple_roots(&self) -> &[(usize, Vec<i64>)] {
        &self.simple
    }

    /// Coordinates of an integer linear form in the simple-root basis.
    ///
    /// Fails if the form is not a nonnegative integer combination of simple roots.
    pub fn simple_coordinates(&self, coeffs: &[i64]) -> Result<Vec<i64>> {
        let sol = solve_exact(&self.simple, coeffs).ok_or_else(|| {
            HbError::Internal(format!("{coeffs:?} is not in the span of the simple roots"))
        })?;
        sol.into_iter()
            .map(|c| {
                if c.is_integer() && !c.is_negative() {
                    Ok(c.to_integer())
                } else {
                    Err(HbError::Internal(format!(
                        "{coeffs:?} has simple-root coordinate {c}"
                    )))
                }
            })
            .collect()
    }

    pub fn height(&self, root: &PositiveRoot) -> Result<u32> {
        if self.root(root.row, root.col)? != root {
            return Err(HbError::Internal(format!(
                "root ({},{}) does not belong to {}",
                root.row, root.col, self.ty
            )));
        }
        let c = self.simple_coordinates(&root.coeffs)?;
        Ok(c.iter().sum::<i64>() as u32)
    }

    /// `β ≤ α` in the root poset.
    pub fn root_le(&self, beta: &PositiveRoot, alpha: &PositiveRoot) -> Result<bool> {
        let b = self.simple_coordinates(&beta.coeffs)?;
        let a = self.simple_coordinates(&alpha.coeffs)?;
        Ok(a.iter().zip(&b).all(|(x, y)| x >= y))
    }
}

/// Exact solve of `Σ c_k s_k = target` over ℚ; `None` when inconsistent.
fn solve_exact(simple: &[(usize, Vec<i64>)], target: &[i64]) -> Option<Vec<Rational64>> {
    let rows = target.len();
    let cols = simple.len();
    let mut m: Vec<Vec<Rational64>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rational64> =
                simple.iter().map(|(_, s)| Rational64::from_integer(s[r])).collect();
            row.push(Rational64::from_integer(target[r]));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        let Some(p) = (pr..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(pr, p);
        let inv = Rational64::one() / m[pr][c];
        for v in m[pr].iter_mut() {
            *v *= inv;
        }
        let pivot_row = m[pr].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != pr && !row[c].is_zero() {
                let f = row[c];
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= *p * f;
                }
            }
        }
        pivots.push(c);
        pr += 1;
    }
    if m[pr..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut sol = vec![Rational64::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        sol[c] = m[r][cols];
    }
    Some(sol)
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Connected component of a Dynkin sub-diagram, by Cartan–Killing type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DynkinComponent {
    A(usize),
    /// B_k or C_k; the two have the same Weyl group.
    BC(usize),
    D(usize),
    G2,
}

impl DynkinComponent {
    pub fn weyl_order(self) -> u64 {
        let fact = |k: usize| (1..=k as u64).product::<u64>();
        match self {
            DynkinComponent::A(k) => fact(k + 1),
            DynkinComponent::BC(k) => (1u64 << k) * fact(k),
            DynkinComponent::D(k) => (1u64 << (k - 1)) * fact(k),
            DynkinComponent::G2 => 12,
        }
    }
}

/// Components of the Dynkin diagram spanned by the given simple roots.
pub fn dynkin_components(simple: &[&[i64]]) -> Vec<DynkinComponent> {
    let k = simple.len();
    // bond multiplicity 4(a,b)^2 / (|a|^2 |b|^2)
    let mult = |a: usize, b: usize| -> i64 {
        let ab = dot(simple[a], simple[b]);
        let aa = dot(simple[a], simple[a]);
        let bb = dot(simple[b], simple[b]);
        4 * ab * ab / (aa * bb)
    };
    let adj: Vec<Vec<(usize, i64)>> = (0..k)
        .map(|a| {
            (0..k)
                .filter(|&b| b != a)
                .filter_map(|b| {
                    let m = mult(a, b);
                    (m > 0).then_some((b, m))
                })
                .collect()
        })
        .collect();
    let mut seen = vec![false; k];
    let mut out = Vec::new();
    for start in 0..k {
        if seen[start] {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            comp.insert(v);
            stack.extend(adj[v].iter().map(|&(w, _)| w));
        }
        let size = comp.len();
        let max_bond = comp
            .iter()
            .flat_map(|&v| adj[v].iter().map(|&(_, m)| m))
            .max()
            .unwrap_or(0);
        let fork = comp.iter().any(|&v| adj[v].len() >= 3);
        out.push(match (max_bond, fork) {
            (3, _) => DynkinComponent::G2,
            (2, _) => DynkinComponent::BC(size),
            (_, true) => DynkinComponent::D(size),
            _ => DynkinComponent::A(size),
        });
    }
    out
}

/// `|W_I|` for the parabolic subgroup generated by the simple roots in `ideal`.
pub fn parabolic_weyl_order(table: &RootTable, ideal: &LowerIdeal) -> u64 {
    let chosen: Vec<&[i64]> = table
        .simple_roots()
        .iter()
        .filter(|(row, _)| ideal.contains(*row, row + 1))
        .map(|(_, c)| c.as_slice())
        .collect();
    dynkin_components(&chosen)
        .into_iter()
        .map(DynkinComponent::weyl_order)
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_types(max: usize) -> Vec<LieType> {
        let mut v = vec![LieType::g2()];
        for r in 1..=max {
            v.push(LieType::new(Family::A, r).unwrap());
            v.push(LieType::new(Family::B, r).unwrap());
            v.push(LieType::new(Family::C, r).unwrap());
            if r >= 2 {
                v.push(LieType::new(Family::D, r).unwrap());
            }
        }
        v
    }

    #[test]
    fn displayed_roots() {
        let d4 = build_root_table("D4".parse().unwrap()).unwrap();
        assert_eq!(d4.root(4, 7).unwrap().coeffs, vec![1, 0, 0, 1]);
        let g2 = build_root_table(LieType::g2()).unwrap();
        assert_eq!(g2.root(2, 3).unwrap().coeffs, vec![-2, 1, 1]);
        let a1 = build_root_table(LieType::a_with_vars(2).unwrap()).unwrap();
        assert_eq!(a1.len(), 1);
        assert_eq!(a1.chain(1)[0].coeffs, vec![1, -1]);
        assert!(a1.chain(2).is_empty());
    }

    #[test]
    fn unsupported_types() {
        assert!(matches!("E6".parse::<LieType>(), Err(HbError::UnsupportedType(_))));
        assert!(matches!("F4".parse::<LieType>(), Err(HbError::UnsupportedType(_))));
        assert!(LieType::new(Family::D, 1).is_err());
        assert!(LieType::new(Family::G, 3).is_err());
    }

    #[test]
    fn chains_partition_positive_roots() {
        for ty in all_types(6) {
            let t = build_root_table(ty).unwrap();
            assert_eq!(t.len(), ty.num_positive_roots(), "{ty}");
            let distinct: BTreeSet<_> = t.roots().map(|r| r.coeffs.clone()).collect();
            assert_eq!(distinct.len(), t.len(), "{ty}: a root repeats");
            for (k, c) in t.chains().iter().enumerate() {
                assert_eq!(c.len(), ty.exponents()[k], "{ty} row {}", k + 1);
            }
        }
    }

    #[test]
    fn heights_follow_chain_position() {
        for ty in all_types(6) {
            let t = build_root_table(ty).unwrap();
            for r in t.roots() {
                assert_eq!(t.height(r).unwrap() as usize, r.col - r.row, "{ty} {r:?}");
            }
        }
    }

    #[test]
    fn g2_heights() {
        let t = build_root_table(LieType::g2()).unwrap();
        // α_{2,3} is the long simple root; α_{1,6} is the highest root
        assert_eq!(t.height(t.root(2, 3).unwrap()).unwrap(), 1);
        assert_eq!(t.height(t.root(1, 6).unwrap()).unwrap(), 5);
    }

    #[test]
    fn chain_steps_are_coverings() {
        for ty in all_types(6) {
            let t = build_root_table(ty).unwrap();
            let simple: Vec<&Vec<i64>> = t.simple_roots().iter().map(|(_, s)| s).collect();
            for c in t.chains() {
                for w in c.windows(2) {
                    let diff: Vec<i64> =
                        w[1].coeffs.iter().zip(&w[0].coeffs).map(|(a, b)| a - b).collect();
                    assert!(simple.contains(&&diff), "{ty}: {:?} -> {:?}", w[0], w[1]);
                }
            }
        }
    }

    #[test]
    fn coefficient_ranges() {
        for ty in all_types(6) {
            let t = build_root_table(ty).unwrap();
            for r in t.roots() {
                assert!(r.coeffs.iter().any(|&c| c != 0));
                assert!(r.coeffs.iter().all(|&c| (-2..=2).contains(&c)));
            }
        }
    }

    #[test]
    fn dynkin_orders_of_full_types() {
        let expect = [
            ("A4", 120u64),
            ("B2", 8),
            ("B3", 48),
            ("C3", 48),
            ("D3", 24),
            ("D4", 192),
            ("D5", 1920),
            ("D2", 4),
            ("G2", 12),
        ];
        for (name, order) in expect {
            let t = build_root_table(name.parse().unwrap()).unwrap();
            let s: Vec<&[i64]> = t.simple_roots().iter().map(|(_, c)| c.as_slice()).collect();
            let got: u64 = dynkin_components(&s).iter().map(|c| c.weyl_order()).product();
            assert_eq!(got, order, "{name}");
        }
    }

    #[test]
    fn json_shape() {
        let t = build_root_table("D4".parse().unwrap()).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.starts_with(r#"{"type":"D","rank":4,"chains":[[{"i":1,"j":2,"coeffs":[1,-1,0,0]}"#));
        let back: RootTable = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
    }
}
