//! Sparse multivariate polynomials over ℚ with a graded reverse
//! lexicographic term order (`x1 > x2 > … > xn`).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{HbError, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    deg: u32,
    exps: SmallVec<[u16; 8]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            deg: 0,
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    /// `x_k`, 1-based.
    pub fn var(nvars: usize, k: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[k - 1] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial {
            deg: exps.iter().map(|&e| e as u32).sum(),
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            deg: self.deg + other.deg,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// `x_k · self`, 1-based.
    pub fn times_var(&self, k: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[k - 1] += 1;
        m.deg += 1;
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self | other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other).then(|| Monomial {
            deg: other.deg - self.deg,
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u16; 8]> =
            self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        Monomial {
            deg: exps.iter().map(|&e| e as u32).sum(),
            exps,
        }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// The variable (1-based) if this is `x_k^e` with `e >= 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut nz = self.exps.iter().enumerate().filter(|(_, &e)| e > 0);
        let (k, _) = nz.next()?;
        nz.next().is_none().then_some(k + 1)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| {
            // reverse lex: the smaller exponent in the last differing variable wins
            for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.deg == 0 {
            return f.write_str("1");
        }
        let mut first = true;
        for (k, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", k + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Terms are kept sorted ascending, so the leading term is last.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    terms: Vec<(Monomial, Q)>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        Poly::from_terms(nvars, [(Monomial::one(nvars), c)])
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Q::one())
    }

    /// `x_k`, 1-based.
    pub fn var(nvars: usize, k: usize) -> Self {
        Poly::from_terms(nvars, [(Monomial::var(nvars, k), Q::one())])
    }

    /// The linear form `Σ c_k x_k`.
    pub fn linear(coeffs: &[i64]) -> Self {
        let n = coeffs.len();
        Poly::from_terms(
            n,
            coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| (Monomial::var(n, k + 1), q(c))),
        )
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut acc: BTreeMap<Monomial, Q> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            *acc.entry(m).or_insert_with(Q::zero) += c;
        }
        Poly::from_map(nvars, acc)
    }

    pub(crate) fn from_map(nvars: usize, acc: BTreeMap<Monomial, Q>) -> Self {
        Poly {
            nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Terms already strictly ascending with nonzero coefficients.
    pub(crate) fn from_sorted(nvars: usize, terms: Vec<(Monomial, Q)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending order.
    pub fn terms(&self) -> &[(Monomial, Q)] {
        &self.terms
    }

    pub fn leading(&self) -> Option<&(Monomial, Q)> {
        self.terms.last()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.last().map(|(m, _)| m)
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms
            .binary_search_by(|(t, _)| t.cmp(m))
            .map(|k| self.terms[k].1.clone())
            .unwrap_or_else(|_| Q::zero())
    }

    pub fn degree(&self) -> Result<u32> {
        self.terms
            .iter()
            .map(|(m, _)| m.degree())
            .max()
            .ok_or(HbError::DegreeOfZero)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms
            .windows(2)
            .all(|w| w[0].0.degree() == w[1].0.degree())
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(HbError::VarCountMismatch {
                left: self.nvars,
                right: other.nvars,
            })
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.merge(other, Q::one()))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.merge(other, -Q::one()))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut acc: BTreeMap<Monomial, Q> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Q::zero) += ca * cb;
            }
        }
        Ok(Poly::from_map(self.nvars, acc))
    }

    /// `self + c·other`, merging the sorted term lists.
    fn merge(&self, other: &Poly, c: Q) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((ma, ca)), Some((mb, cb))) => match ma.cmp(mb) {
                    Ordering::Less => {
                        out.push((ma.clone(), ca.clone()));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((mb.clone(), cb * &c));
                        b.next();
                    }
                    Ordering::Equal => {
                        let s = ca + cb * &c;
                        if !s.is_zero() {
                            out.push((ma.clone(), s));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some((ma, ca)), None) => {
                    out.push((ma.clone(), ca.clone()));
                    a.next();
                }
                (None, Some((mb, cb))) => {
                    out.push((mb.clone(), cb * &c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Poly::from_sorted(self.nvars, out)
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly::from_sorted(
            self.nvars,
            self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        )
    }

    /// `c · m · self`.
    pub fn mul_term(&self, m: &Monomial, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly::from_sorted(
            self.nvars,
            self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(self.nvars), |acc, _| &acc * self)
    }

    /// Divide through by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Replace `x_var` (1-based) by `replacement`.
    pub fn substitute(&self, var: usize, replacement: &Poly) -> Result<Poly> {
        self.check(replacement)?;
        if var == 0 || var > self.nvars {
            return Err(HbError::IndexOutOfRange(format!(
                "variable x{var} in a ring with {} variables",
                self.nvars
            )));
        }
        let mut powers = vec![Poly::one(self.nvars)];
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[var - 1] as usize;
            while powers.len() <= e {
                let next = &powers[powers.len() - 1] * replacement;
                powers.push(next);
            }
            let mut rest = m.clone();
            rest.exps[var - 1] = 0;
            rest.deg -= e as u32;
            out = &out + &powers[e].mul_term(&rest, c);
        }
        Ok(out)
    }

    /// Rename variables `x_k ↦ x_{map[k-1]}` into a ring with `nvars` variables.
    pub fn rename_vars(&self, nvars: usize, map: &[usize]) -> Result<Poly> {
        if map.len() != self.nvars || map.iter().any(|&t| t == 0 || t > nvars) {
            return Err(HbError::IndexOutOfRange("variable map".into()));
        }
        Ok(Poly::from_terms(
            nvars,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0u16; nvars];
                for (k, &x) in m.exponents().iter().enumerate() {
                    e[map[k] - 1] += x;
                }
                (Monomial::from_exponents(&e), c.clone())
            }),
        ))
    }

    pub fn parse(s: &str, nvars: usize) -> Result<Poly> {
        Parser::new(s, nvars).parse()
    }
}

impl<'a> Add for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        self.checked_add(rhs).expect("polynomials over different rings")
    }
}

impl<'a> Sub for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomials over different rings")
    }
}

impl<'a> Mul for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomials over different rings")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Q::one())
    }
}

impl fmt::Display for Poly {
    /// Terms in descending order, e.g. `x1^2*x2 - 3/2*x3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.degree() == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
    nvars: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, nvars: usize) -> Self {
        Parser {
            src,
            chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            nvars,
        }
    }

    fn err(&self, what: &str) -> HbError {
        HbError::Parse(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn parse(mut self) -> Result<Poly> {
        let mut terms = Vec::new();
        if self.chars.is_empty() {
            return Err(self.err("empty polynomial"));
        }
        let mut first = true;
        while self.pos < self.chars.len() {
            let mut sign = Q::one();
            match self.peek() {
                Some('+') => self.pos += 1,
                Some('-') => {
                    sign = -sign;
                    self.pos += 1;
                }
                _ if first => {}
                _ => return Err(self.err("expected '+' or '-'")),
            }
            first = false;
            let (m, c) = self.term()?;
            terms.push((m, c * sign));
        }
        Ok(Poly::from_terms(self.nvars, terms))
    }

    fn term(&mut self) -> Result<(Monomial, Q)> {
        let mut coeff = Q::one();
        let mut mono = Monomial::one(self.nvars);
        let mut factors = 0;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num: BigInt = self.digits().unwrap().parse().unwrap();
                    let mut val = Q::from_integer(num);
                    if self.peek() == Some('/') {
                        self.pos += 1;
                        let den: BigInt = self
                            .digits()
                            .ok_or_else(|| self.err("expected denominator"))?
                            .parse()
                            .unwrap();
                        if den.is_zero() {
                            return Err(self.err("zero denominator"));
                        }
                        val /= Q::from_integer(den);
                    }
                    coeff *= val;
                }
                Some('x') => {
                    self.pos += 1;
                    let k: usize = self
                        .digits()
                        .ok_or_else(|| self.err("expected variable index"))?
                        .parse()
                        .map_err(|_| self.err("bad variable index"))?;
                    if k == 0 || k > self.nvars {
                        return Err(HbError::IndexOutOfRange(format!(
                            "x{k} in a ring with {} variables",
                            self.nvars
                        )));
                    }
                    let mut e = 1u16;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        e = self
                            .digits()
                            .ok_or_else(|| self.err("expected exponent"))?
                            .parse()
                            .map_err(|_| self.err("bad exponent"))?;
                    }
                    mono.exps[k - 1] += e;
                    mono.deg += e as u32;
                }
                _ => return Err(self.err("expected coefficient or variable")),
            }
            factors += 1;
            match self.peek() {
                Some('*') => self.pos += 1,
                Some('x') => {}
                _ => break,
            }
        }
        debug_assert!(factors > 0);
        Ok((mono, coeff))
    }
}
