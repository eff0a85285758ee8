//! Defining generators `f_{i,h(i)}` of the cohomology presentation
//! `ℚ[x_1..x_n] / (f_{1,h(1)}, …, f_{n,h(n)})`.

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{HbError, Result};
use crate::hessfn::HessFn;
use crate::poly::{q, Poly, Q};
use crate::rootsystem::{root_coeffs, Family, LieType};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    pub h: HessFn,
    pub gens: Vec<Poly>,
}

impl GeneratorSet {
    pub fn lie_type(&self) -> LieType {
        self.h.lie_type()
    }

    pub fn nvars(&self) -> usize {
        self.h.lie_type().nvars()
    }

    /// Degrees `h(i) - i + 1` of the generators.
    pub fn degrees(&self) -> Vec<usize> {
        self.h.widths().iter().map(|w| w + 1).collect()
    }
}

fn x(n: usize, k: usize) -> Poly {
    Poly::var(n, k)
}

fn x_minus(n: usize, a: usize, b: usize) -> Poly {
    &x(n, a) - &x(n, b)
}

fn x_plus(n: usize, a: usize, b: usize) -> Poly {
    &x(n, a) + &x(n, b)
}

fn product(n: usize, factors: impl IntoIterator<Item = Poly>) -> Poly {
    factors.into_iter().fold(Poly::one(n), |acc, f| &acc * &f)
}

fn root(ty: LieType, i: usize, j: usize) -> Poly {
    Poly::linear(&root_coeffs(ty, i, j))
}

/// `Σ_{k≤i} c_k (Π_{ℓ=i+1}^{j} α_{k,ℓ}) x_k`, the A/B/C shape.
fn weighted_chain_sum(ty: LieType, i: usize, j: usize, coeffs: &[Q]) -> Poly {
    let n = ty.nvars();
    (1..=i).fold(Poly::zero(n), |acc, k| {
        let term = &product(n, (i + 1..=j).map(|l| root(ty, k, l))) * &x(n, k);
        &acc + &term.scale(&coeffs[k - 1])
    })
}

fn sign(e: usize) -> Q {
    if e.is_multiple_of(2) {
        Q::one()
    } else {
        -Q::one()
    }
}

/// Type D generator for a row `i < n` and value `j = h(i)`.
fn f_d_row(n: usize, i: usize, j: usize) -> Poly {
    let nq = q(n as i64);
    if j <= n - 2 {
        (1..=i).fold(Poly::zero(n), |acc, k| {
            let t = &product(n, (i + 1..=j).map(|l| x_minus(n, k, l))) * &x(n, k);
            &acc + &t
        })
    } else if j == n - 1 {
        let sum = (1..=i).fold(Poly::zero(n), |acc, k| {
            let t = &product(n, (i + 1..n).map(|l| x_minus(n, k, l))) * &x_plus(n, k, n);
            &acc + &t
        });
        let tail = product(n, (i + 1..=n).map(|l| x(n, l))).scale(&(sign(n - i) * &nq));
        &sum + &tail
    } else {
        let t = j - n;
        let sum = (1..=i).fold(Poly::zero(n), |acc, k| {
            let minus = product(n, (i + 1..=n).map(|l| x_minus(n, k, l)));
            let plus = product(n, (0..=t).map(|s| x_plus(n, k, n - s)));
            &acc + &(&minus * &plus)
        });
        let singles = product(n, (i + 1..n - t).map(|l| x(n, l)));
        let squares = product(n, (n - t..=n).map(|l| x(n, l).pow(2)));
        let tail = (&singles * &squares).scale(&(sign(n - i + 1) * &nq));
        &sum + &tail
    }
}

/// Type D generator for row `n` with `h(n) = 2n - 1 - r`.
fn f_d_last(n: usize, r: usize) -> Poly {
    let s = sign(n - r + 1);
    let sum = (1..=r).fold(Poly::zero(n), |acc, k| {
        let t = product(n, (r + 1..=n).map(|l| x_minus(n, k, l)));
        &acc + &t.scale(&s)
    });
    let tail = product(n, (r + 1..=n).map(|l| x(n, l))).scale(&q(n as i64));
    &sum + &tail
}

fn f_g2(i: usize, j: usize) -> Poly {
    let ty = LieType::g2();
    let base = Poly::linear(&[0, -1, 1]);
    match (i, j) {
        (1, 1) => base,
        (1, _) => &product(3, (2..=j).map(|l| root(ty, 1, l))) * &base,
        (2, 2) => x(3, 3),
        (2, 3) => Poly::linear(&[1, 0, 0]).pow(2)
            .checked_add(&Poly::linear(&[0, 1, 0]).pow(2))
            .and_then(|p| p.checked_add(&Poly::linear(&[0, 0, 1]).pow(2)))
            .expect("same ring"),
        (3, 3) => Poly::linear(&[1, 1, 1]),
        _ => unreachable!("validated G2 function"),
    }
}

/// The single generator `f_{i,j}` of the type (1-based, `j` in the row's valid range).
pub fn generator(ty: LieType, i: usize, j: usize) -> Poly {
    let n = ty.nvars();
    match ty.family {
        Family::A | Family::B | Family::C => {
            weighted_chain_sum(ty, i, j, &vec![Q::one(); i])
        }
        Family::D if i < n => f_d_row(n, i, j),
        Family::D => f_d_last(n, 2 * n - 1 - j),
        Family::G => f_g2(i, j),
    }
}

pub fn generators(h: &HessFn) -> GeneratorSet {
    let ty = h.lie_type();
    let gens = (1..=h.n()).map(|i| generator(ty, i, h.at(i))).collect();
    GeneratorSet { h: h.clone(), gens }
}

/// Flag-case generators with arbitrary weights `a_{ik}` (row `i` has `i` entries)
/// for types A and B. Unit weights reproduce [`generators`].
pub fn generators_generic(h: &HessFn, coeffs: &[Vec<Q>]) -> Result<GeneratorSet> {
    let ty = h.lie_type();
    if !matches!(ty.family, Family::A | Family::B) {
        return Err(HbError::UnsupportedType(format!(
            "generic coefficients for {ty}"
        )));
    }
    if !h.is_flag() {
        return Err(HbError::NotFlag);
    }
    let n = ty.nvars();
    if coeffs.len() != n {
        return Err(HbError::Arity {
            expected: n,
            got: coeffs.len(),
        });
    }
    for (r, row) in coeffs.iter().enumerate() {
        if row.len() != r + 1 {
            return Err(HbError::Arity {
                expected: r + 1,
                got: row.len(),
            });
        }
    }
    let gens = (1..=n)
        .map(|i| weighted_chain_sum(ty, i, h.at(i), &coeffs[i - 1]))
        .collect();
    Ok(GeneratorSet { h: h.clone(), gens })
}

/// Random nonzero rationals `p/q` with `|p| <= 9`, `1 <= q <= 5`, shaped for
/// [`generators_generic`].
pub fn random_generic_coeffs<R: Rng>(n: usize, rng: &mut R) -> Vec<Vec<Q>> {
    (1..=n)
        .map(|i| {
            (0..i)
                .map(|_| loop {
                    let num: i64 = rng.gen_range(-9..=9);
                    let den: i64 = rng.gen_range(1..=5);
                    let c = Q::new(num.into(), den.into());
                    if !c.is_zero() {
                        break c;
                    }
                })
                .collect()
        })
        .collect()
}
