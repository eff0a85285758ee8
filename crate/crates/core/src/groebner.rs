//! Buchberger's algorithm with the Gebauer–Möller pair criteria.
//! Output is the reduced, monic Gröbner basis in degrevlex.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::poly::{Monomial, Poly, Q};

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn lm(p: &Poly) -> &Monomial {
    p.leading_monomial().expect("nonzero basis element")
}

/// Full reduction of `p` modulo the monic polynomials `basis` (leading and tail terms).
pub fn reduce<'a>(p: &Poly, basis: impl Iterator<Item = &'a Poly> + Clone) -> Poly {
    let n = p.nvars();
    let mut work: BTreeMap<Monomial, Q> = p.terms().iter().cloned().collect();
    let mut rem: Vec<(Monomial, Q)> = Vec::new();
    while let Some((m, c)) = work.pop_last() {
        let divisor = basis
            .clone()
            .find_map(|g| lm(g).quotient_of(&m).map(|t| (g, t)));
        match divisor {
            Some((g, t)) => {
                let terms = g.terms();
                for (gm, gc) in &terms[..terms.len() - 1] {
                    let key = gm.mul(&t);
                    let delta = gc * &c;
                    match work.get_mut(&key) {
                        Some(v) => {
                            *v -= delta;
                            if v.is_zero() {
                                work.remove(&key);
                            }
                        }
                        None => {
                            work.insert(key, -delta);
                        }
                    }
                }
            }
            None => rem.push((m, c)),
        }
    }
    rem.reverse();
    Poly::from_sorted(n, rem)
}

fn s_poly(f: &Poly, g: &Poly, lcm: &Monomial) -> Poly {
    let tf = lm(f).quotient_of(lcm).expect("lcm multiple");
    let tg = lm(g).quotient_of(lcm).expect("lcm multiple");
    let one = Q::from_integer(1.into());
    &f.mul_term(&tf, &one) - &g.mul_term(&tg, &one)
}

struct State {
    polys: Vec<Poly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl State {
    fn active_polys(&self) -> impl Iterator<Item = &Poly> + Clone {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(p, _)| p)
    }

    fn update(&mut self, h: Poly) {
        let hidx = self.polys.len();
        let lh = lm(&h).clone();

        let mut cand: Vec<(usize, Monomial)> = (0..hidx)
            .filter(|&g| self.active[g])
            .map(|g| (g, lh.lcm(lm(&self.polys[g]))))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while let Some((g, l)) = cand.pop() {
            let disjoint = lh.coprime(lm(&self.polys[g]));
            if disjoint
                || (!cand.iter().any(|(_, l2)| l2.divides(&l))
                    && !kept.iter().any(|(_, l2)| l2.divides(&l)))
            {
                kept.push((g, l));
            }
        }
        let fresh: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !lh.coprime(lm(&self.polys[*g])))
            .map(|(g, lcm)| Pair { i: g, j: hidx, lcm })
            .collect();

        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm)
                && lm(&polys[p.i]).lcm(&lh) != p.lcm
                && lm(&polys[p.j]).lcm(&lh) != p.lcm)
        });
        self.pairs.extend(fresh);

        for g in 0..hidx {
            if self.active[g] && lh.divides(lm(&self.polys[g])) {
                self.active[g] = false;
            }
        }
        self.polys.push(h);
        self.active.push(true);
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.lcm.cmp(&b.lcm))
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`, sorted by leading monomial.
/// The zero ideal yields an empty basis.
pub fn groebner_basis(gens: &[Poly]) -> Vec<Poly> {
    let mut st = State {
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in gens {
        let r = reduce(g, st.active_polys());
        if !r.is_zero() {
            st.update(r.monic());
        }
    }
    while let Some(pair) = st.pop_pair() {
        let s = s_poly(&st.polys[pair.i], &st.polys[pair.j], &pair.lcm);
        let r = reduce(&s, st.active_polys());
        if !r.is_zero() {
            st.update(r.monic());
        }
    }

    let mut minimal: Vec<Poly> = st.active_polys().cloned().collect();
    minimal.sort_by(|a, b| lm(a).cmp(lm(b)));
    minimal.dedup_by(|a, b| lm(a) == lm(b));
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others = minimal
            .iter()
            .enumerate()
            .filter(move |(t, _)| *t != k)
            .map(|(_, p)| p);
        reduced.push(reduce(&minimal[k], others).monic());
    }
    reduced
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Poly {
        Poly::parse(s, n).unwrap()
    }

    #[test]
    fn elementary_symmetric_basis() {
        let g = groebner_basis(&[
            p("x1 + x2 + x3", 3),
            p("x1*x2 + x1*x3 + x2*x3", 3),
            p("x1*x2*x3", 3),
        ]);
        let expect = vec![p("x1 + x2 + x3", 3), p("x2^2 + x2*x3 + x3^2", 3), p("x3^3", 3)];
        assert_eq!(g, expect);
    }

    #[test]
    fn unit_ideal_and_zero() {
        assert_eq!(groebner_basis(&[p("x1", 2), p("x1 + 1", 2)]), vec![Poly::one(2)]);
        assert!(groebner_basis(&[Poly::zero(2)]).is_empty());
    }

    #[test]
    fn reduce_is_zero_on_ideal_members() {
        let gens = [p("x1^2 - x2", 2), p("x2^2", 2)];
        let g = groebner_basis(&gens);
        let member = &(&p("x1 + 3*x2", 2) * &gens[0]) + &(&p("x1^3", 2) * &gens[1]);
        assert!(reduce(&member, g.iter()).is_zero());
        assert!(!reduce(&p("x1^3", 2), g.iter()).is_zero());
    }
}
