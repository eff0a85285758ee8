//! Candidate bases: permutation-twisted root products (types A, B, C, G2) and
//! the procedure-defined classes `v_m^{(h)}` in type D.

use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{HbError, Result};
use crate::hessfn::HessFn;
use crate::linalg;
use crate::poly::{Poly, Q};
use crate::quotient::{QuotientRing, SparseVec};
use crate::rootsystem::{root_coeffs, Family, LieType};

/// A Hessenberg function together with one permutation per row.
/// `perms[i-1][k]` is `w^{(i)}(i+1+k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisSpec {
    h: HessFn,
    perms: Vec<Vec<usize>>,
}

impl BasisSpec {
    pub fn identity(h: &HessFn) -> Self {
        let perms = (1..=h.n()).map(|i| (i + 1..=h.at(i)).collect()).collect();
        BasisSpec { h: h.clone(), perms }
    }

    pub fn new(h: &HessFn, perms: Vec<Vec<usize>>) -> Result<Self> {
        if perms.len() != h.n() {
            return Err(HbError::InvalidPermutation(format!(
                "{} permutations for {} rows",
                perms.len(),
                h.n()
            )));
        }
        for (r, w) in perms.iter().enumerate() {
            let i = r + 1;
            let mut sorted = w.clone();
            sorted.sort_unstable();
            let window: Vec<usize> = (i + 1..=h.at(i)).collect();
            if sorted != window {
                return Err(HbError::InvalidPermutation(format!(
                    "row {i}: {w:?} is not a permutation of {{{}..{}}}",
                    i + 1,
                    h.at(i)
                )));
            }
        }
        Ok(BasisSpec {
            h: h.clone(),
            perms,
        })
    }

    /// Uniformly random permutations of every window.
    pub fn random<R: Rng>(h: &HessFn, rng: &mut R) -> Self {
        let mut spec = BasisSpec::identity(h);
        for w in &mut spec.perms {
            w.shuffle(rng);
        }
        spec
    }

    pub fn h(&self) -> &HessFn {
        &self.h
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    /// `w^{(i)}(v)` for `i+1 ≤ v ≤ h(i)`.
    pub fn apply(&self, i: usize, v: usize) -> usize {
        self.perms[i - 1][v - i - 1]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Step {
    Proc1r,
    Proc2r,
    Proc3r,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Terminal {
    Proc2n,
    Proc3n,
}

/// Run of the type D reduction `ℓ^{(1)} → ℓ^{(2)} → …`.
/// `steps[k-1]` is the rule taking `ℓ^{(k)}` to `ℓ^{(k+1)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DTrace {
    pub sequence: Vec<Vec<usize>>,
    pub steps: Vec<Step>,
    /// `None` when the sequence ran down to length 1.
    pub terminal: Option<Terminal>,
}

impl DTrace {
    pub fn step(&self, k: usize) -> Option<Step> {
        k.checked_sub(1).and_then(|k| self.steps.get(k).copied())
    }
}

fn check_ell(l: &[usize]) -> Result<()> {
    let n = l.len();
    if n == 0 {
        return Err(HbError::IndexOutOfRange("empty ℓ".into()));
    }
    for (r, &v) in l.iter().enumerate() {
        let i = r + 1;
        let (lo, hi) = if i < n { (i, 2 * n - 1 - i) } else { (n, 2 * n - 1) };
        if v < lo || v > hi {
            return Err(HbError::IndexOutOfRange(format!(
                "ℓ_{i} = {v} outside [{lo}, {hi}] in {l:?}"
            )));
        }
    }
    Ok(())
}

pub fn d_procedure(l: &[usize]) -> Result<DTrace> {
    check_ell(l)?;
    let mut cur = l.to_vec();
    let mut sequence = vec![cur.clone()];
    let mut steps = Vec::new();
    let mut terminal = None;
    while cur.len() >= 2 {
        let n = cur.len();
        let (first, last) = (cur[0], cur[n - 1]);
        let middle = cur[1..n - 1].iter().map(|v| v - 1);
        let next: Vec<usize> = if last < 2 * n - 1 {
            steps.push(if first <= n { Step::Proc1r } else { Step::Proc3r });
            middle.chain([last - 1]).collect()
        } else if first < n {
            steps.push(Step::Proc2r);
            middle.chain([first + n - 2]).collect()
        } else {
            terminal = Some(if first == n {
                Terminal::Proc2n
            } else {
                Terminal::Proc3n
            });
            break;
        };
        sequence.push(next.clone());
        cur = next;
    }
    Ok(DTrace {
        sequence,
        steps,
        terminal,
    })
}

fn unit(n: usize, k: usize) -> Vec<i64> {
    let mut c = vec![0; n];
    c[k - 1] = 1;
    c
}

fn d_root(n: usize, i: usize, j: usize) -> Vec<i64> {
    let mut c = vec![0i64; n];
    if i == n {
        c[2 * n - j - 1] += 1;
        c[n - 1] += 1;
    } else if j <= n {
        c[i - 1] += 1;
        c[j - 1] -= 1;
    } else {
        c[i - 1] += 1;
        c[2 * n - j - 1] += 1;
    }
    c
}

fn d_alpha_traced(tr: &DTrace, n: usize, i: usize, j: usize) -> Vec<i64> {
    if i == n {
        let r = 2 * n - j;
        return match tr.step(r) {
            Some(Step::Proc3r) => unit(n, r),
            _ => d_root(n, i, j),
        };
    }
    if tr.step(i) == Some(Step::Proc2r) && n + i > j {
        let k = n + i - j;
        if k > i {
            match tr.step(k) {
                Some(Step::Proc3r) => return unit(n, k),
                Some(Step::Proc1r) => {
                    let mut c = unit(n, i);
                    c[k - 1] = -1;
                    return c;
                }
                _ => {}
            }
        }
    }
    d_root(n, i, j)
}

fn check_d_index(n: usize, i: usize, j: usize) -> Result<()> {
    let ok = if i >= 1 && i < n {
        j > i && j <= 2 * n - 1 - i
    } else if i == n {
        j > n && j < 2 * n
    } else {
        false
    };
    if ok {
        Ok(())
    } else {
        Err(HbError::IndexOutOfRange(format!("({i},{j}) in type D{n}")))
    }
}

/// Coefficients of the linear form `α^{(ℓ)}_{i,j}` in `n = ℓ.len()` variables.
pub fn d_alpha_coeffs(l: &[usize], i: usize, j: usize) -> Result<Vec<i64>> {
    let tr = d_procedure(l)?;
    check_d_index(l.len(), i, j)?;
    Ok(d_alpha_traced(&tr, l.len(), i, j))
}

pub fn d_alpha(l: &[usize], i: usize, j: usize) -> Result<Poly> {
    d_alpha_coeffs(l, i, j).map(|c| Poly::linear(&c))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub m: Vec<usize>,
    /// Linear factors in multiplication order, as coefficient vectors.
    pub factors: Vec<Vec<i64>>,
    pub poly: Poly,
    pub trace: Option<DTrace>,
    pub coords: Option<Vec<Q>>,
}

fn element(n: usize, m: Vec<usize>, factors: Vec<Vec<i64>>, trace: Option<DTrace>) -> BasisElement {
    let poly = factors
        .iter()
        .fold(Poly::one(n), |acc, f| &acc * &Poly::linear(f));
    BasisElement {
        m,
        factors,
        poly,
        trace,
        coords: None,
    }
}

/// All `m` with `0 ≤ m_i ≤ h(i) - i`, lexicographic with the last entry fastest.
pub fn m_vectors(h: &HessFn) -> Vec<Vec<usize>> {
    h.widths().iter().fold(vec![Vec::new()], |acc, &w| {
        acc.into_iter()
            .flat_map(|prefix| {
                (0..=w).map(move |v| {
                    let mut next = prefix.clone();
                    next.push(v);
                    next
                })
            })
            .collect()
    })
}

/// Twisted root products for types A, B, C and G2.
pub fn basis_elements(spec: &BasisSpec) -> Result<Vec<BasisElement>> {
    let h = &spec.h;
    let ty = h.lie_type();
    if ty.family == Family::D {
        return Err(HbError::UnsupportedType(
            "type D uses basis_elements_d".into(),
        ));
    }
    let n = ty.nvars();
    Ok(m_vectors(h)
        .into_iter()
        .map(|m| {
            let factors = m
                .iter()
                .enumerate()
                .flat_map(|(r, &mi)| {
                    let i = r + 1;
                    let top = h.at(i);
                    (0..mi).map(move |t| root_coeffs(ty, i, spec.apply(i, top - t)))
                })
                .collect();
            element(n, m, factors, None)
        })
        .collect())
}

/// The classes `v_m^{(h)}` with `ℓ = h - m`.
pub fn basis_elements_d(h: &HessFn) -> Result<Vec<BasisElement>> {
    let ty = h.lie_type();
    if ty.family != Family::D {
        return Err(HbError::UnsupportedType(format!(
            "{ty} with the type D construction"
        )));
    }
    let n = ty.nvars();
    m_vectors(h)
        .into_iter()
        .map(|m| {
            let l: Vec<usize> = (1..=n).map(|i| h.at(i) - m[i - 1]).collect();
            let tr = d_procedure(&l)?;
            let factors = (1..=n)
                .flat_map(|i| {
                    let top = h.at(i);
                    let tr = &tr;
                    (0..m[i - 1]).map(move |t| d_alpha_traced(tr, n, i, top - t))
                })
                .collect();
            Ok(element(n, m, factors, Some(tr)))
        })
        .collect()
}

/// Identity-permutation basis for any supported type.
pub fn default_basis(h: &HessFn) -> Result<Vec<BasisElement>> {
    match h.lie_type().family {
        Family::D => basis_elements_d(h),
        _ => basis_elements(&BasisSpec::identity(h)),
    }
}

/// Coordinates of each product of linear factors, reusing shared prefixes
/// between consecutive elements.
pub fn factor_coordinates(qr: &QuotientRing, lists: &[&[Vec<i64>]]) -> Vec<SparseVec> {
    let mut stack: Vec<(Vec<i64>, SparseVec)> = Vec::new();
    let base: SparseVec = vec![(0, Q::one())];
    lists
        .iter()
        .map(|fs| {
            let common = stack
                .iter()
                .zip(fs.iter())
                .take_while(|((a, _), b)| a == *b)
                .count();
            stack.truncate(common);
            for f in &fs[common..] {
                let prev = stack.last().map_or(&base, |(_, v)| v);
                let next = qr.mul_linear(prev, f);
                stack.push((f.clone(), next));
            }
            stack.last().map_or_else(|| base.clone(), |(_, v)| v.clone())
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisReport {
    pub count: usize,
    pub dim: usize,
    pub rank: usize,
    pub is_basis: bool,
}

/// Fill in coordinates and decide whether the elements form a basis of `qr`.
pub fn verify_basis(qr: &QuotientRing, elements: &mut [BasisElement]) -> Result<BasisReport> {
    if let Some(e) = elements.iter().find(|e| e.poly.nvars() != qr.nvars()) {
        return Err(HbError::RingMismatch(format!(
            "element in {} variables, ring has {}",
            e.poly.nvars(),
            qr.nvars()
        )));
    }
    let lists: Vec<&[Vec<i64>]> = elements.iter().map(|e| e.factors.as_slice()).collect();
    let coords = factor_coordinates(qr, &lists);
    for (e, c) in elements.iter_mut().zip(coords) {
        e.coords = Some(qr.densify(&c));
    }
    let rows: Vec<Vec<Q>> = elements
        .iter()
        .map(|e| e.coords.clone().expect("filled above"))
        .collect();
    let rank = linalg::rank(&rows);
    let (count, dim) = (elements.len(), qr.dim());
    Ok(BasisReport {
        count,
        dim,
        rank,
        is_basis: count == dim && rank == dim,
    })
}

/// D_{n} root `α_{i,j}` in `n` variables, exposed for cross-checks.
pub fn d_plain_root(n: usize, i: usize, j: usize) -> Result<Vec<i64>> {
    check_d_index(n, i, j)?;
    Ok(d_root(n, i, j))
}

/// Lie type helper for the ring of a `D` trace of length `n`.
pub fn d_type(n: usize) -> Result<LieType> {
    LieType::new(Family::D, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hessfn::enumerate_all;
    use crate::idealgen::generators;
    use crate::quotient::build_quotient;
    use rand::SeedableRng;

    fn p(s: &str, n: usize) -> Poly {
        Poly::parse(s, n).unwrap()
    }

    fn hf(s: &str) -> HessFn {
        s.parse().unwrap()
    }

    fn prod(fs: &[&str], n: usize) -> Poly {
        fs.iter().fold(Poly::one(n), |acc, f| &acc * &p(f, n))
    }

    fn find(els: &[BasisElement], m: &[usize]) -> BasisElement {
        els.iter().find(|e| e.m == m).unwrap().clone()
    }

    #[test]
    fn type_a_worked_product() {
        let els = basis_elements(&BasisSpec::identity(&hf("A4:3,5,5,5,5"))).unwrap();
        assert_eq!(els.len(), 3 * 4 * 3 * 2);
        let e = find(&els, &[1, 2, 1, 0, 0]);
        assert_eq!(e.poly, prod(&["x1 - x3", "x2 - x5", "x2 - x4", "x3 - x5"], 5));
    }

    #[test]
    fn zero_m_is_one() {
        for s in ["A2:3,3,3", "G2:6,3,3", "B2:4,3", "D4:3,5,4,7"] {
            let els = default_basis(&hf(s)).unwrap();
            let e0 = &els[0];
            assert!(e0.m.iter().all(|&v| v == 0));
            assert_eq!(e0.poly, Poly::one(e0.poly.nvars()));
        }
    }

    #[test]
    fn g2_top_element() {
        let els = basis_elements(&BasisSpec::identity(&hf("G2:6,3,3"))).unwrap();
        let top = find(&els, &[5, 1, 0]);
        let ty = LieType::g2();
        let expect = [(1, 6), (1, 5), (1, 4), (1, 3), (1, 2), (2, 3)]
            .iter()
            .fold(Poly::one(3), |acc, &(i, j)| &acc * &Poly::linear(&root_coeffs(ty, i, j)));
        assert_eq!(top.poly, expect);
        assert_eq!(top.poly.degree().unwrap(), 6);
    }

    #[test]
    fn permutation_validation() {
        let h = hf("A2:2,3,3");
        assert!(BasisSpec::new(&h, vec![vec![2], vec![3], vec![]]).is_ok());
        assert!(matches!(
            BasisSpec::new(&h, vec![vec![3], vec![3], vec![]]),
            Err(HbError::InvalidPermutation(_))
        ));
        let f = hf("A2:3,3,3");
        let spec = BasisSpec::new(&f, vec![vec![3, 2], vec![3], vec![]]).unwrap();
        let els = basis_elements(&spec).unwrap();
        // w(h(1)) = w(3) = 2, so the degree-1 element of row 1 is α_{1,2}
        assert_eq!(find(&els, &[1, 0, 0]).poly, p("x1 - x2", 3));
    }

    #[test]
    fn procedure_examples() {
        let t = d_procedure(&[2, 5, 4, 5]).unwrap();
        assert_eq!(t.steps, vec![Step::Proc1r, Step::Proc3r]);
        assert_eq!(t.sequence, vec![vec![2, 5, 4, 5], vec![4, 3, 4], vec![2, 3]]);
        assert_eq!(t.terminal, Some(Terminal::Proc2n));

        let t = d_procedure(&[2, 3, 4, 5]).unwrap();
        assert_eq!(t.steps, vec![Step::Proc1r, Step::Proc1r]);
        assert_eq!(t.sequence[1], vec![2, 3, 4]);
        assert_eq!(t.sequence[2], vec![2, 3]);

        let t = d_procedure(&[1, 2]).unwrap();
        assert_eq!(t.steps, vec![Step::Proc1r]);
        assert_eq!(t.sequence, vec![vec![1, 2], vec![1]]);
        assert_eq!(t.terminal, None);

        assert!(d_procedure(&[1, 5, 4, 5]).is_ok());
        assert!(matches!(d_procedure(&[2, 6, 4, 5]), Err(HbError::IndexOutOfRange(_))));
        assert!(matches!(d_procedure(&[2, 5, 4, 8]), Err(HbError::IndexOutOfRange(_))));
    }

    #[test]
    fn sequence_lengths_shrink_by_one() {
        for h in enumerate_all(d_type(4).unwrap()) {
            let t = d_procedure(h.values()).unwrap();
            for (k, l) in t.sequence.iter().enumerate() {
                assert_eq!(l.len(), 4 - k);
            }
            assert_eq!(t.sequence.len(), t.steps.len() + 1);
        }
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(d_alpha(&[2, 5, 4, 5], 4, 6).unwrap(), p("x2", 4));
        assert_eq!(d_alpha(&[2, 5, 4, 5], 4, 7).unwrap(), p("x1 + x4", 4));
        assert_eq!(d_alpha(&[2, 5, 4, 5], 1, 3).unwrap(), p("x1 - x3", 4));
        assert!(matches!(d_alpha(&[2, 5, 4, 5], 4, 4), Err(HbError::IndexOutOfRange(_))));
        assert!(matches!(d_alpha(&[2, 5, 4, 5], 1, 7), Err(HbError::IndexOutOfRange(_))));
        // proc2r at row 1: ℓ = (1,3,4,7) → (2,3,3), then proc1r
        let t = d_procedure(&[1, 3, 4, 7]).unwrap();
        assert_eq!(t.steps[0], Step::Proc2r);
        assert_eq!(t.sequence[1], vec![2, 3, 3]);
    }

    #[test]
    fn d_worked_products() {
        let els = basis_elements_d(&hf("D4:3,5,4,7")).unwrap();
        assert_eq!(els.len(), 96);
        assert_eq!(
            find(&els, &[1, 0, 0, 2]).poly,
            prod(&["x1 - x3", "x1 + x4", "x2"], 4)
        );
        assert_eq!(
            find(&els, &[1, 2, 0, 2]).poly,
            prod(&["x1 - x3", "x2 + x3", "x2 - x4", "x1 + x4", "x2 + x4"], 4)
        );
    }

    #[test]
    fn hessenberg_inputs_untwist_above_h() {
        for n in 2..=4 {
            for h in enumerate_all(d_type(n).unwrap()) {
                for hp in crate::hessfn::enumerate_sub(&h) {
                    for i in 1..=n {
                        for j in hp.at(i) + 1..=h.at(i) {
                            assert_eq!(
                                d_alpha_coeffs(hp.values(), i, j).unwrap(),
                                d_plain_root(n, i, j).unwrap(),
                                "h'={hp} ({i},{j})"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn plain_d_roots_match_table() {
        let ty = d_type(4).unwrap();
        for i in 1..=4 {
            let top = if i < 4 { 7 - i } else { 7 };
            for j in i + 1..=top {
                assert_eq!(d_plain_root(4, i, j).unwrap(), root_coeffs(ty, i, j));
            }
        }
    }

    #[test]
    fn small_bases_verify() {
        for s in ["A2:3,3,3", "B2:4,3", "C2:4,3", "G2:6,3,3", "D3:4,3,5", "D4:3,5,4,7"] {
            let h = hf(s);
            let qr = build_quotient(&generators(&h)).unwrap();
            let mut els = default_basis(&h).unwrap();
            let rep = verify_basis(&qr, &mut els).unwrap();
            assert!(rep.is_basis, "{s}: {rep:?}");
            assert_eq!(rep.count, qr.dim());
        }
    }

    #[test]
    fn matrix_route_matches_normal_form() {
        let h = hf("B3:5,5,4");
        let qr = build_quotient(&generators(&h)).unwrap();
        let mut els = default_basis(&h).unwrap();
        verify_basis(&qr, &mut els).unwrap();
        for e in els.iter().step_by(7) {
            assert_eq!(e.coords.as_ref().unwrap(), &qr.coordinates(&e.poly).unwrap());
        }
    }

    #[test]
    fn duplicated_element_is_not_a_basis() {
        let h = hf("A2:3,3,3");
        let qr = build_quotient(&generators(&h)).unwrap();
        let mut els = default_basis(&h).unwrap();
        els[5] = els[4].clone();
        let rep = verify_basis(&qr, &mut els).unwrap();
        assert_eq!((rep.count, rep.dim), (6, 6));
        assert!(rep.rank < 6);
        assert!(!rep.is_basis);
    }

    #[test]
    fn wrong_ring_rejected() {
        let qr = build_quotient(&generators(&hf("A1:2,2"))).unwrap();
        let mut els = default_basis(&hf("A2:3,3,3")).unwrap();
        assert!(matches!(verify_basis(&qr, &mut els), Err(HbError::RingMismatch(_))));
    }

    #[test]
    fn random_permutations_are_valid() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let h = hf("G2:6,3,3");
        for _ in 0..10 {
            let s = BasisSpec::random(&h, &mut rng);
            assert!(BasisSpec::new(&h, s.perms().to_vec()).is_ok());
        }
    }
}
