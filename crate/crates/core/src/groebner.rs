//! Buchberger's algorithm for submodules of `R^α` under position-over-term.
//!
//! Pairs are pruned with the Gebauer–Möller installation of Buchberger's
//! criteria and selected by the sugar strategy. The product criterion only
//! holds for ideals, so it is applied at rank one.

use std::cell::Cell;
use std::cmp::Ordering;

use crate::ring::{Monomial, RingRef};
use crate::vector::{cmp_pot, FreeVector};

/// Reduction of vectors against a fixed list of (monic) divisors.
pub(crate) struct Reducer<'a> {
    basis: Vec<&'a FreeVector>,
}

impl<'a> Reducer<'a> {
    pub(crate) fn new(basis: impl IntoIterator<Item = &'a FreeVector>) -> Self {
        Reducer {
            basis: basis.into_iter().filter(|g| !g.is_zero()).collect(),
        }
    }

    fn divisor(&self, pos: u32, m: &Monomial) -> Option<&'a FreeVector> {
        self.basis.iter().copied().find(|g| {
            let (gp, gm, _) = g.lead().unwrap();
            *gp == pos && gm.divides(m)
        })
    }

    /// Full normal form: no term of the result is divisible by a leading term.
    pub(crate) fn normal_form(&self, v: &FreeVector) -> FreeVector {
        let ring = v.ring().clone();
        let f = ring.field();
        let rank = v.rank();
        let mut rem = Vec::new();
        let mut cur = v.clone();
        let mut start = 0;
        while start < cur.terms().len() {
            let (p, m, c) = &cur.terms()[start];
            match self.divisor(*p, m) {
                Some(g) => {
                    let (_, gm, gc) = g.lead().unwrap();
                    let q = gm.quotient_of(m);
                    let k = f.neg(f.div(*c, *gc).expect("nonzero lead"));
                    let tail =
                        FreeVector::from_sorted_terms(&ring, rank, cur.terms()[start..].to_vec());
                    cur = tail.add_scaled_shifted(k, &q, g);
                    start = 0;
                }
                None => {
                    rem.push(cur.terms()[start].clone());
                    start += 1;
                }
            }
        }
        FreeVector::from_sorted_terms(&ring, rank, rem)
    }

    /// Reduces only while the leading term is reducible.
    pub(crate) fn top_reduce(&self, v: &FreeVector) -> FreeVector {
        let f = v.ring().field();
        let mut cur = v.clone();
        while let Some((p, m, c)) = cur.lead().cloned() {
            match self.divisor(p, &m) {
                Some(g) => {
                    let (_, gm, gc) = g.lead().unwrap();
                    let k = f.neg(f.div(c, *gc).expect("nonzero lead"));
                    cur = cur.add_scaled_shifted(k, &gm.quotient_of(&m), g);
                }
                None => break,
            }
        }
        cur
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u64,
}

struct Engine {
    ring: RingRef,
    rank1: bool,
    polys: Vec<FreeVector>,
    sugar: Vec<u64>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl Engine {
    fn lead(&self, i: usize) -> (u32, &Monomial) {
        let t = self.polys[i].lead().unwrap();
        (t.0, &t.1)
    }

    fn make_pair(&self, i: usize, j: usize) -> Pair {
        let (_, mi) = self.lead(i);
        let (_, mj) = self.lead(j);
        let lcm = mi.lcm(mj);
        let d = lcm.degree();
        let sugar = (self.sugar[i] + d - mi.degree()).max(self.sugar[j] + d - mj.degree());
        Pair { i, j, lcm, sugar }
    }

    fn coprime(&self, i: usize, j: usize) -> bool {
        self.rank1 && self.lead(i).1.is_coprime(self.lead(j).1)
    }

    /// Gebauer–Möller update after adding polynomial `h`.
    fn update(&mut self, h: usize) {
        let (hp, hm) = {
            let (p, m) = self.lead(h);
            (p, m.clone())
        };
        let mut c: Vec<Pair> = self
            .active
            .iter()
            .filter(|&&g| self.lead(g).0 == hp)
            .map(|&g| self.make_pair(g, h))
            .collect();
        let mut d: Vec<Pair> = Vec::new();
        while let Some(pr) = c.pop() {
            let keep = self.coprime(pr.i, pr.j)
                || (!c.iter().any(|o| o.lcm.divides(&pr.lcm))
                    && !d.iter().any(|o| o.lcm.divides(&pr.lcm)));
            if keep {
                d.push(pr);
            }
        }
        let e: Vec<Pair> = d
            .into_iter()
            .filter(|pr| !self.coprime(pr.i, pr.j))
            .collect();
        let old = std::mem::take(&mut self.pairs);
        let mut kept = Vec::with_capacity(old.len() + e.len());
        for pr in old {
            let same_pos = self.lead(pr.i).0 == hp;
            let drop = same_pos && hm.divides(&pr.lcm) && {
                let l1 = self.lead(pr.i).1.lcm(&hm);
                let l2 = self.lead(pr.j).1.lcm(&hm);
                l1 != pr.lcm && l2 != pr.lcm
            };
            if !drop {
                kept.push(pr);
            }
        }
        kept.extend(e);
        self.pairs = kept;
        let active = std::mem::take(&mut self.active);
        self.active = active
            .into_iter()
            .filter(|&g| {
                let (gp, gm) = self.lead(g);
                !(gp == hp && hm.divides(gm))
            })
            .collect();
        self.active.push(h);
    }

    fn add(&mut self, v: FreeVector, sugar: u64) {
        let v = {
            let red = Reducer::new(self.active.iter().map(|&i| &self.polys[i]));
            red.normal_form(&v)
        };
        if v.is_zero() {
            return;
        }
        self.polys.push(v.monic());
        self.sugar
            .push(sugar.max(self.polys.last().unwrap().total_degree()));
        self.update(self.polys.len() - 1);
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ring = &self.ring;
        let polys = &self.polys;
        let best = (0..self.pairs.len())
            .min_by(|&a, &b| {
                let pa = &self.pairs[a];
                let pb = &self.pairs[b];
                pa.sugar
                    .cmp(&pb.sugar)
                    .then_with(|| {
                        let posa = polys[pa.i].lead().unwrap().0;
                        let posb = polys[pb.i].lead().unwrap().0;
                        cmp_pot(ring, (posa, &pa.lcm), (posb, &pb.lcm))
                    })
                    .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
            })
            .unwrap();
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, pr: &Pair) -> FreeVector {
        let gi = &self.polys[pr.i];
        let gj = &self.polys[pr.j];
        let qi = self.lead(pr.i).1.quotient_of(&pr.lcm);
        let qj = self.lead(pr.j).1.quotient_of(&pr.lcm);
        let f = self.ring.field();
        let a = gi.mul_monomial(&qi, 1);
        a.add_scaled_shifted(f.neg(1), &qj, gj)
    }
}

thread_local! {
    static COMPUTATIONS: Cell<usize> = const { Cell::new(0) };
}

/// Gröbner basis computations started on the current thread.
pub(crate) fn computations() -> usize {
    COMPUTATIONS.with(|c| c.get())
}

/// Reduced Gröbner basis of the submodule generated by `gens`, sorted
/// descending by leading term; every element is monic.
pub(crate) fn reduced_basis(ring: &RingRef, rank: usize, gens: &[FreeVector]) -> Vec<FreeVector> {
    let mut input: Vec<&FreeVector> = gens.iter().filter(|g| !g.is_zero()).collect();
    if input.is_empty() {
        return Vec::new();
    }
    COMPUTATIONS.with(|c| c.set(c.get() + 1));
    input.sort_by(|a, b| {
        let (pa, ma, _) = a.lead().unwrap();
        let (pb, mb, _) = b.lead().unwrap();
        cmp_pot(ring, (*pa, ma), (*pb, mb))
    });
    let mut eng = Engine {
        ring: ring.clone(),
        rank1: rank == 1,
        polys: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in input {
        eng.add(g.clone(), g.total_degree());
    }
    while let Some(pr) = eng.select() {
        let s = eng.spoly(&pr);
        eng.add(s, pr.sugar);
    }
    let mut basis: Vec<FreeVector> = eng.active.iter().map(|&i| eng.polys[i].clone()).collect();
    interreduce(ring, &mut basis);
    basis
}

/// Turns a minimal Gröbner basis into the reduced one, in place.
pub(crate) fn interreduce(ring: &RingRef, basis: &mut Vec<FreeVector>) {
    basis.sort_by(|a, b| {
        let (pa, ma, _) = a.lead().unwrap();
        let (pb, mb, _) = b.lead().unwrap();
        cmp_pot(ring, (*pb, mb), (*pa, ma))
    });
    let snapshot = basis.clone();
    for (k, g) in basis.iter_mut().enumerate() {
        let others = Reducer::new(
            snapshot
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, h)| h),
        );
        let lead = g.lead().unwrap().clone();
        let tail = FreeVector::from_sorted_terms(ring, g.rank(), g.terms()[1..].to_vec());
        let tail = others.normal_form(&tail);
        let mut terms = vec![lead];
        terms.extend_from_slice(tail.terms());
        *g = FreeVector::from_sorted_terms(ring, g.rank(), terms).monic();
    }
    debug_assert!(basis.windows(2).all(|w| {
        let (pa, ma, _) = w[0].lead().unwrap();
        let (pb, mb, _) = w[1].lead().unwrap();
        cmp_pot(ring, (*pa, ma), (*pb, mb)) == Ordering::Greater
    }));
}
