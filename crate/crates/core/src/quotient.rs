//! Artinian quotients `ℚ[x_1..x_n]/I`: Gröbner basis, standard monomial basis,
//! normal forms and multiplication matrices.

use std::collections::{HashMap, HashSet, VecDeque};

use num_traits::{One, Zero};

use crate::error::{HbError, Result};
use crate::groebner::{groebner_basis, reduce};
use crate::hessfn::HessFn;
use crate::idealgen::GeneratorSet;
use crate::poly::{Monomial, Poly, Q};

/// Sparse coordinate vector: `(index, value)` pairs sorted by index, no zeros.
pub type SparseVec = Vec<(usize, Q)>;

#[derive(Debug, Clone)]
pub struct QuotientRing {
    nvars: usize,
    gens: Vec<Poly>,
    gb: Vec<Poly>,
    std: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    hilbert: Vec<usize>,
    /// `mult[k][c]`: coordinates of `x_{k+1} · std[c]`.
    mult: Vec<Vec<SparseVec>>,
}

pub fn build_quotient(gs: &GeneratorSet) -> Result<QuotientRing> {
    QuotientRing::from_polys(gs.nvars(), &gs.gens)
}

impl QuotientRing {
    /// Quotient by an arbitrary finite list of polynomials. Fails unless the
    /// quotient is nonzero and finite-dimensional.
    pub fn from_polys(nvars: usize, gens: &[Poly]) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.nvars() != nvars) {
            return Err(HbError::VarCountMismatch {
                left: nvars,
                right: g.nvars(),
            });
        }
        let gb = groebner_basis(gens);
        let lms: Vec<&Monomial> = gb.iter().filter_map(|g| g.leading_monomial()).collect();
        let unit = lms.iter().any(|m| m.degree() == 0);
        let pure: HashSet<usize> = lms.iter().filter_map(|m| m.pure_power_var()).collect();
        if unit || (1..=nvars).any(|k| !pure.contains(&k)) {
            return Err(HbError::NotArtinian);
        }

        let is_std = |m: &Monomial| !lms.iter().any(|l| l.divides(m));
        let one = Monomial::one(nvars);
        let mut seen: HashSet<Monomial> = HashSet::from([one.clone()]);
        let mut queue = VecDeque::from([one]);
        let mut std = Vec::new();
        while let Some(m) = queue.pop_front() {
            for k in 1..=nvars {
                let next = m.times_var(k);
                if !seen.contains(&next) && is_std(&next) {
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
            std.push(m);
        }
        std.sort();
        let index: HashMap<Monomial, usize> =
            std.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
        let top = std.last().map_or(0, |m| m.degree() as usize);
        let mut hilbert = vec![0usize; top + 1];
        for m in &std {
            hilbert[m.degree() as usize] += 1;
        }

        let mut ring = QuotientRing {
            nvars,
            gens: gens.to_vec(),
            gb,
            std,
            index,
            hilbert,
            mult: Vec::new(),
        };
        ring.mult = (1..=nvars)
            .map(|k| {
                ring.std
                    .iter()
                    .map(|m| {
                        let xm = m.times_var(k);
                        match ring.index.get(&xm) {
                            Some(&c) => vec![(c, Q::one())],
                            None => ring.sparse_of_reduced(&reduce(
                                &Poly::from_terms(nvars, [(xm, Q::one())]),
                                ring.gb.iter(),
                            )),
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(ring)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    pub fn groebner_basis(&self) -> &[Poly] {
        &self.gb
    }

    /// Standard monomials, ascending (degree first).
    pub fn standard_monomials(&self) -> &[Monomial] {
        &self.std
    }

    pub fn dim(&self) -> usize {
        self.std.len()
    }

    /// Number of standard monomials in each degree.
    pub fn hilbert_series(&self) -> &[usize] {
        &self.hilbert
    }

    /// Degree of the socle.
    pub fn top_degree(&self) -> usize {
        self.hilbert.len() - 1
    }

    fn check_ring(&self, p: &Poly) -> Result<()> {
        if p.nvars() == self.nvars {
            Ok(())
        } else {
            Err(HbError::RingMismatch(format!(
                "polynomial in {} variables, ring has {}",
                p.nvars(),
                self.nvars
            )))
        }
    }

    pub fn normal_form(&self, p: &Poly) -> Result<Poly> {
        self.check_ring(p)?;
        Ok(reduce(p, self.gb.iter()))
    }

    fn sparse_of_reduced(&self, r: &Poly) -> SparseVec {
        let mut v: SparseVec = r
            .terms()
            .iter()
            .map(|(m, c)| (self.index[m], c.clone()))
            .collect();
        v.sort_by_key(|(k, _)| *k);
        v
    }

    /// Coordinates of `NF(p)` on the standard monomials.
    pub fn coordinates(&self, p: &Poly) -> Result<Vec<Q>> {
        let r = self.normal_form(p)?;
        Ok(self.densify(&self.sparse_of_reduced(&r)))
    }

    pub fn densify(&self, v: &SparseVec) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim()];
        for (k, c) in v {
            out[*k] = c.clone();
        }
        out
    }

    /// The polynomial with the given coordinates.
    pub fn from_coordinates(&self, v: &[Q]) -> Poly {
        Poly::from_terms(
            self.nvars,
            self.std
                .iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// `x_k · v`, 1-based `k`.
    pub fn mul_var(&self, v: &SparseVec, k: usize) -> SparseVec {
        let mut acc: std::collections::BTreeMap<usize, Q> = std::collections::BTreeMap::new();
        for (c, a) in v {
            for (r, b) in &self.mult[k - 1][*c] {
                *acc.entry(*r).or_insert_with(Q::zero) += a * b;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// `(Σ c_k x_k) · v`.
    pub fn mul_linear(&self, v: &SparseVec, coeffs: &[i64]) -> SparseVec {
        let mut acc: std::collections::BTreeMap<usize, Q> = std::collections::BTreeMap::new();
        for (k, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let cq = Q::from_integer(c.into());
            for (r, b) in self.mul_var(v, k + 1) {
                *acc.entry(r).or_insert_with(Q::zero) += b * &cq;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Coordinates of a product of linear forms, via multiplication matrices.
    pub fn product_of_linear(&self, factors: &[Vec<i64>]) -> SparseVec {
        factors
            .iter()
            .fold(vec![(0, Q::one())], |v, f| self.mul_linear(&v, f))
    }

    /// Coordinates of `p · v` via multiplication matrices (no Gröbner reduction).
    pub fn mul_poly(&self, v: &SparseVec, p: &Poly) -> Result<SparseVec> {
        self.check_ring(p)?;
        let mut acc: std::collections::BTreeMap<usize, Q> = std::collections::BTreeMap::new();
        for (m, c) in p.terms() {
            let mut w = v.clone();
            for (k, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    w = self.mul_var(&w, k + 1);
                }
            }
            for (r, b) in w {
                *acc.entry(r).or_insert_with(Q::zero) += b * c;
            }
        }
        Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    /// Coordinates computed through the multiplication matrices.
    pub fn coordinates_via_matrices(&self, p: &Poly) -> Result<Vec<Q>> {
        let v = self.mul_poly(&vec![(0, Q::one())], p)?;
        Ok(self.densify(&v))
    }
}

/// `Π_i (1 + t + … + t^{h(i)-i})` as a coefficient list.
pub fn product_formula_series(h: &HessFn) -> Vec<usize> {
    h.widths().iter().fold(vec![1usize], |acc, &w| {
        let mut out = vec![0usize; acc.len() + w];
        for (d, a) in acc.iter().enumerate() {
            for s in 0..=w {
                out[d + s] += a;
            }
        }
        out
    })
}
