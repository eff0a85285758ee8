//! Poincaré-dual classes of sub-Hessenberg varieties, the Gysin
//! multiplication maps between presentations, and their rank checks.

use num_traits::{One, Zero};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::basisgen::{basis_elements, factor_coordinates, BasisSpec, BasisElement};
use crate::error::{HbError, Result};
use crate::hessfn::{enumerate_sub, table_for, HessFn};
use crate::idealgen::generators;
use crate::linalg;
use crate::poly::{Poly, Q};
use crate::quotient::{build_quotient, QuotientRing, SparseVec};
use crate::rootsystem::{parabolic_weyl_order, root_coeffs, Family};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualClass {
    pub h: HessFn,
    pub h_sub: HessFn,
    /// `|W_{I'}| / |W_I|`.
    pub scalar: Q,
    /// Roots of `I \ I'`, by row then descending column.
    pub roots: Vec<(usize, usize)>,
    pub factors: Vec<Vec<i64>>,
    pub product: Poly,
    pub coords: Option<Vec<Q>>,
}

impl DualClass {
    pub fn degree(&self) -> usize {
        self.roots.len()
    }
}

fn check_inclusion(h_sub: &HessFn, h: &HessFn) -> Result<()> {
    if h_sub.is_sub_of(h) {
        Ok(())
    } else {
        Err(HbError::Inclusion {
            sub: h_sub.text(),
            sup: h.text(),
        })
    }
}

pub fn pdual_class(h: &HessFn, h_sub: &HessFn) -> Result<DualClass> {
    check_inclusion(h_sub, h)?;
    let table = table_for(h);
    let ty = h.lie_type();
    let (big, small) = (h.to_ideal(), h_sub.to_ideal());
    let roots = big.difference(&small);
    let factors: Vec<Vec<i64>> = roots.iter().map(|&(i, j)| root_coeffs(ty, i, j)).collect();
    let n = ty.nvars();
    let product = factors
        .iter()
        .fold(Poly::one(n), |acc, f| &acc * &Poly::linear(f));
    let scalar = Q::new(
        parabolic_weyl_order(&table, &small).into(),
        parabolic_weyl_order(&table, &big).into(),
    );
    Ok(DualClass {
        h: h.clone(),
        h_sub: h_sub.clone(),
        scalar,
        roots,
        factors,
        product,
        coords: None,
    })
}

/// Hex SHA-256 of the coordinates written as `num/den` separated by commas.
pub fn coords_digest(v: &[Q]) -> String {
    let text = v
        .iter()
        .map(|c| format!("{}/{}", c.numer(), c.denom()))
        .collect::<Vec<_>>()
        .join(",");
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Every dual class `[Hess(N,h')]`, `h' ⊆ h`, with coordinates filled in.
pub fn dual_classes(h: &HessFn, qr: &QuotientRing) -> Result<Vec<DualClass>> {
    let mut classes = enumerate_sub(h)
        .iter()
        .map(|s| pdual_class(h, s))
        .collect::<Result<Vec<_>>>()?;
    let lists: Vec<&[Vec<i64>]> = classes.iter().map(|c| c.factors.as_slice()).collect();
    let coords = factor_coordinates(qr, &lists);
    for (c, v) in classes.iter_mut().zip(coords) {
        c.coords = Some(qr.densify(&v));
    }
    Ok(classes)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualEntry {
    pub h_sub: String,
    pub degree: usize,
    pub scalar: String,
    pub coords_sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualsReport {
    pub count: usize,
    pub rank: usize,
    pub independent: bool,
    pub classes: Vec<DualEntry>,
}

/// Rank of the dual classes of all sub-functions (scalars left out).
pub fn verify_duals_independent(h: &HessFn, qr: &QuotientRing) -> Result<DualsReport> {
    let classes = dual_classes(h, qr)?;
    let rows: Vec<Vec<Q>> = classes
        .iter()
        .map(|c| c.coords.clone().expect("filled"))
        .collect();
    let rank = linalg::rank(&rows);
    let entries = classes
        .iter()
        .zip(&rows)
        .map(|(c, v)| DualEntry {
            h_sub: c.h_sub.text(),
            degree: c.degree(),
            scalar: c.scalar.to_string(),
            coords_sha256: coords_digest(v),
        })
        .collect();
    Ok(DualsReport {
        count: classes.len(),
        rank,
        independent: rank == classes.len(),
        classes: entries,
    })
}

/// The basis element with a given `m` (identity permutations outside type D).
pub fn basis_element_for(h: &HessFn, m: &[usize]) -> Result<BasisElement> {
    let els = match h.lie_type().family {
        Family::D => crate::basisgen::basis_elements_d(h)?,
        _ => basis_elements(&BasisSpec::identity(h))?,
    };
    els.into_iter()
        .find(|e| e.m == m)
        .ok_or_else(|| HbError::IndexOutOfRange(format!("m = {m:?} for {h}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtendsReport {
    pub pairs: usize,
    pub syntactic: usize,
    pub proportional: usize,
    pub holds: bool,
    pub failures: Vec<String>,
}

/// For each `h' ⊆ h`, compare the basis element at `m = h - h'` with the dual product.
pub fn verify_basis_extends_duals(h: &HessFn, qr: &QuotientRing) -> Result<ExtendsReport> {
    let basis = crate::basisgen::default_basis(h)?;
    let classes = dual_classes(h, qr)?;
    let mut syntactic = 0;
    let mut proportional = 0;
    let mut failures = Vec::new();
    for c in &classes {
        let m: Vec<usize> = (1..=h.n()).map(|i| h.at(i) - c.h_sub.at(i)).collect();
        let e = basis
            .iter()
            .find(|e| e.m == m)
            .ok_or_else(|| HbError::Internal(format!("no basis element for m = {m:?}")))?;
        if e.poly == c.product {
            syntactic += 1;
        }
        let ev = qr.densify(&factor_coordinates(qr, &[e.factors.as_slice()])[0]);
        let dv = c.coords.as_ref().expect("filled");
        if linalg::proportionality(dv, &ev).is_some() {
            proportional += 1;
        } else {
            failures.push(c.h_sub.text());
        }
    }
    Ok(ExtendsReport {
        pairs: classes.len(),
        syntactic,
        proportional,
        holds: failures.is_empty(),
        failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GysinReport {
    pub h_sub: String,
    pub h: String,
    pub dim_sub: usize,
    pub dim: usize,
    pub degree_shift: usize,
    pub rank: usize,
    pub injective: bool,
    pub well_defined: bool,
    pub degrees_ok: bool,
}

/// Images of the standard monomials of `q_sub` under multiplication by `beta`.
pub fn multiplication_map(
    q_sub: &QuotientRing,
    q: &QuotientRing,
    beta: &Poly,
) -> Result<Vec<SparseVec>> {
    let one: SparseVec = vec![(0, Q::one())];
    let bv = q.mul_poly(&one, beta)?;
    q_sub
        .standard_monomials()
        .iter()
        .map(|m| q.mul_poly(&bv, &Poly::from_terms(q.nvars(), [(m.clone(), Q::one())])))
        .collect()
}

/// `NF(beta · g) = 0` in `q` for every generator `g` of `q_sub`.
pub fn map_well_defined(q_sub: &QuotientRing, q: &QuotientRing, beta: &Poly) -> Result<bool> {
    let one: SparseVec = vec![(0, Q::one())];
    let bv = q.mul_poly(&one, beta)?;
    for g in q_sub.generators() {
        if !q.mul_poly(&bv, g)?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Gysin check with prebuilt quotients for `h_sub ⊆ h`.
pub fn gysin_check(
    h_sub: &HessFn,
    q_sub: &QuotientRing,
    h: &HessFn,
    q: &QuotientRing,
) -> Result<GysinReport> {
    let dc = pdual_class(h, h_sub)?;
    if !map_well_defined(q_sub, q, &dc.product)? {
        return Err(HbError::IllDefinedMap(format!(
            "multiplication by the dual product does not send the ideal of {h_sub} into that of {h}"
        )));
    }
    let cols = multiplication_map(q_sub, q, &dc.product)?;
    let shift = dc.degree();
    let degrees_ok = q_sub
        .standard_monomials()
        .iter()
        .zip(&cols)
        .all(|(m, v)| {
            v.iter().all(|(k, _)| {
                q.standard_monomials()[*k].degree() as usize == m.degree() as usize + shift
            })
        });
    let rows: Vec<Vec<Q>> = cols.iter().map(|v| q.densify(v)).collect();
    let rank = linalg::rank(&rows);
    Ok(GysinReport {
        h_sub: h_sub.text(),
        h: h.text(),
        dim_sub: q_sub.dim(),
        dim: q.dim(),
        degree_shift: shift,
        rank,
        injective: rank == q_sub.dim(),
        well_defined: true,
        degrees_ok,
    })
}

pub fn gysin_injective(h_sub: &HessFn, h: &HessFn) -> Result<GysinReport> {
    check_inclusion(h_sub, h)?;
    let q_sub = build_quotient(&generators(h_sub))?;
    let q = build_quotient(&generators(h))?;
    gysin_check(h_sub, &q_sub, h, &q)
}

/// Apply a map given by column images to a coordinate vector.
fn apply(cols: &[SparseVec], v: &SparseVec, dim: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); dim];
    for (c, a) in v {
        for (r, b) in &cols[*c] {
            out[*r] += a * b;
        }
    }
    out
}

/// For `h2 ⊆ h1 ⊆ h`, the direct map `h2 → h` against the composite through `h1`.
/// Returns the ratio when the two matrices are proportional.
pub fn gysin_composition_ratio(h2: &HessFn, h1: &HessFn, h: &HessFn) -> Result<Option<Q>> {
    check_inclusion(h2, h1)?;
    check_inclusion(h1, h)?;
    let q2 = build_quotient(&generators(h2))?;
    let q1 = build_quotient(&generators(h1))?;
    let q = build_quotient(&generators(h))?;
    let step1 = multiplication_map(&q2, &q1, &pdual_class(h1, h2)?.product)?;
    let step2 = multiplication_map(&q1, &q, &pdual_class(h, h1)?.product)?;
    let direct = multiplication_map(&q2, &q, &pdual_class(h, h2)?.product)?;
    let flat = |vs: Vec<Vec<Q>>| vs.into_iter().flatten().collect::<Vec<Q>>();
    let composite = flat(step1.iter().map(|v| apply(&step2, v, q.dim())).collect());
    let direct = flat(direct.iter().map(|v| q.densify(v)).collect());
    if direct.iter().all(|c| c.is_zero()) && composite.iter().all(|c| c.is_zero()) {
        return Ok(Some(Q::one()));
    }
    Ok(linalg::proportionality(&direct, &composite))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CofactorReport {
    pub dim_domain: usize,
    pub dim_codomain: usize,
    pub rank: usize,
    pub injective: bool,
}

/// For a regular sequence `others ∪ {Π factors}`, the map
/// `× Π_{t≠k} factors[t] : R/(others, factors[k]) → R/(others, Π factors)`.
pub fn cofactor_map(nvars: usize, others: &[Poly], factors: &[Poly], k: usize) -> Result<CofactorReport> {
    if k >= factors.len() {
        return Err(HbError::IndexOutOfRange(format!(
            "factor {k} of {}",
            factors.len()
        )));
    }
    let prod = |skip: Option<usize>| {
        factors
            .iter()
            .enumerate()
            .filter(|(t, _)| Some(*t) != skip)
            .fold(Poly::one(nvars), |acc, (_, f)| &acc * f)
    };
    let mut dom_gens = others.to_vec();
    dom_gens.push(factors[k].clone());
    let mut cod_gens = others.to_vec();
    cod_gens.push(prod(None));
    let dom = QuotientRing::from_polys(nvars, &dom_gens)?;
    let cod = QuotientRing::from_polys(nvars, &cod_gens)?;
    let cofactor = prod(Some(k));
    if !map_well_defined(&dom, &cod, &cofactor)? {
        return Err(HbError::IllDefinedMap("cofactor map".into()));
    }
    let cols = multiplication_map(&dom, &cod, &cofactor)?;
    let rows: Vec<Vec<Q>> = cols.iter().map(|v| cod.densify(v)).collect();
    let rank = linalg::rank(&rows);
    Ok(CofactorReport {
        dim_domain: dom.dim(),
        dim_codomain: cod.dim(),
        rank,
        injective: rank == dom.dim(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hf(s: &str) -> HessFn {
        s.parse().unwrap()
    }

    fn p(s: &str, n: usize) -> Poly {
        Poly::parse(s, n).unwrap()
    }

    #[test]
    fn trivial_class() {
        let h = hf("B3:5,5,4");
        let c = pdual_class(&h, &h).unwrap();
        assert_eq!(c.scalar, Q::one());
        assert_eq!(c.product, Poly::one(3));
        assert_eq!(c.degree(), 0);
    }

    #[test]
    fn type_a_worked_dual() {
        let c = pdual_class(&hf("A4:3,5,5,5,5"), &hf("A4:2,3,4,5,5")).unwrap();
        let expect = ["x1 - x3", "x2 - x5", "x2 - x4", "x3 - x5"]
            .iter()
            .fold(Poly::one(5), |acc, f| &acc * &p(f, 5));
        assert_eq!(c.product, expect);
        assert_eq!(c.roots, vec![(1, 3), (2, 5), (2, 4), (3, 5)]);
    }

    #[test]
    fn full_flag_to_point() {
        let c = pdual_class(&hf("A2:3,3,3"), &hf("A2:1,2,3")).unwrap();
        assert_eq!(c.scalar, Q::new(1.into(), 6.into()));
        let expect = &(&p("x1 - x2", 3) * &p("x1 - x3", 3)) * &p("x2 - x3", 3);
        assert_eq!(c.product, expect);
    }

    #[test]
    fn scalar_uses_simple_roots_in_ideal() {
        // I' = {α12, α23} already holds both simple roots: 6/6
        let c = pdual_class(&hf("A2:3,3,3"), &hf("A2:2,3,3")).unwrap();
        assert_eq!(c.scalar, Q::one());
        // I = {α12, α23}, I' = {α23}: 2/6
        let c = pdual_class(&hf("A2:2,3,3"), &hf("A2:1,3,3")).unwrap();
        assert_eq!(c.scalar, Q::new(1.into(), 3.into()));
        // B3 flag against I' = {α12, α34}: (2·2)/48
        let c = pdual_class(&hf("B3:6,5,4"), &hf("B3:2,2,4")).unwrap();
        assert_eq!(c.scalar, Q::new(1.into(), 12.into()));
    }

    #[test]
    fn inclusion_error() {
        assert!(matches!(
            pdual_class(&hf("A2:2,3,3"), &hf("A2:3,3,3")),
            Err(HbError::Inclusion { .. })
        ));
        assert!(matches!(
            gysin_injective(&hf("A2:3,3,3"), &hf("A2:1,3,3")),
            Err(HbError::Inclusion { .. })
        ));
    }

    #[test]
    fn duals_independent_small() {
        for (s, n) in [("A2:3,3,3", 5), ("G2:6,3,3", 8), ("A1:1,2", 1)] {
            let h = hf(s);
            let qr = build_quotient(&generators(&h)).unwrap();
            let r = verify_duals_independent(&h, &qr).unwrap();
            assert_eq!((r.count, r.rank), (n, n), "{s}");
            assert!(r.independent);
        }
    }

    #[test]
    fn extends_duals_examples() {
        for s in ["A4:3,5,5,5,5", "D4:3,5,4,7", "C3:5,5,4", "G2:6,3,3"] {
            let h = hf(s);
            let qr = build_quotient(&generators(&h)).unwrap();
            let r = verify_basis_extends_duals(&h, &qr).unwrap();
            assert!(r.holds, "{s}: {r:?}");
            assert_eq!(r.syntactic, r.pairs, "{s}");
        }
        let d = basis_element_for(&hf("D4:3,5,4,7"), &[1, 2, 0, 2]).unwrap();
        let c = pdual_class(&hf("D4:3,5,4,7"), &hf("D4:2,3,4,5")).unwrap();
        assert_eq!(d.poly, c.product);
    }

    #[test]
    fn gysin_examples() {
        let r = gysin_injective(&hf("A2:2,3,3"), &hf("A2:3,3,3")).unwrap();
        assert_eq!((r.dim_sub, r.rank, r.degree_shift), (4, 4, 1));
        assert!(r.injective && r.degrees_ok);
        let h = hf("G2:2,2,3");
        let r = gysin_injective(&hf("G2:1,2,3"), &h).unwrap();
        assert_eq!((r.dim_sub, r.dim, r.rank), (1, 2, 1));
        let same = gysin_injective(&h, &h).unwrap();
        assert_eq!(same.rank, same.dim);
    }

    #[test]
    fn composition_is_exact() {
        let ratio = gysin_composition_ratio(
            &hf("A3:1,3,3,4"),
            &hf("A3:2,3,4,4"),
            &hf("A3:4,4,4,4"),
        )
        .unwrap();
        assert_eq!(ratio, Some(Q::one()));
    }

    #[test]
    fn digest_is_stable() {
        let d = coords_digest(&[Q::one(), Q::new(1.into(), 2.into())]);
        assert_eq!(d, hex::encode(Sha256::digest(b"1/1,1/2")));
    }

    #[test]
    fn cofactor_lemma_a3() {
        // g = f_{1,4} = (x1-x2)(x1-x3)(x1-x4) x1 for the A3 flag
        let ty = "A3".parse().unwrap();
        let h = HessFn::maximal(ty);
        let gs = generators(&h);
        let factors: Vec<Poly> = (2..=4)
            .map(|l| p(&format!("x1 - x{l}"), 4))
            .chain([p("x1", 4)])
            .collect();
        for k in 0..3 {
            let r = cofactor_map(4, &gs.gens[1..], &factors, k).unwrap();
            assert!(r.injective, "{k}: {r:?}");
            assert_eq!(r.dim_domain, 6);
        }
    }
}
