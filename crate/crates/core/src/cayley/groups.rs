//! Concrete groups: free abelian `Z^d`, free groups `F_k` and lamplighters
//! `Z_m ≀ Z`.

use std::fmt::Debug;
use std::hash::Hash;

use crate::lattice::GeneratorSet;

/// A finitely generated group with hashable canonical elements.
pub trait Group: Sync + Send {
    type Elem: Clone + Eq + Hash + Ord + Debug + Send + Sync;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn label(&self) -> String;

    /// Whether [`Group::formula_length`] is valid for the generating set `gens`.
    fn has_length_formula(&self, _gens: &[Self::Elem]) -> bool {
        false
    }

    /// Closed-form word length; only meaningful when
    /// [`Group::has_length_formula`] holds.
    fn formula_length(&self, _x: &Self::Elem) -> u32 {
        unimplemented!("no word-length formula for {}", self.label())
    }

    /// `|x^{-1} y|` from the closed form.
    fn formula_distance(&self, x: &Self::Elem, y: &Self::Elem) -> u32 {
        self.formula_length(&self.mul(&self.inv(x), y))
    }
}

/// `Z^d` under addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeAbelian {
    pub dimension: usize,
}

impl FreeAbelian {
    pub fn generators(set: &GeneratorSet) -> Vec<Vec<i64>> {
        set.vectors().iter().map(|v| v.0.clone()).collect()
    }
}

impl Group for FreeAbelian {
    type Elem = Vec<i64>;

    fn identity(&self) -> Vec<i64> {
        vec![0; self.dimension]
    }

    fn mul(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn inv(&self, a: &Vec<i64>) -> Vec<i64> {
        a.iter().map(|x| -x).collect()
    }

    fn label(&self) -> String {
        format!("zd:{}", self.dimension)
    }
}

/// Free group on `rank` letters. Elements are reduced words; letter `±i`
/// stands for generator `i` (1-based) or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeGroup {
    pub rank: u8,
}

impl FreeGroup {
    pub fn standard_generators(&self) -> Vec<Vec<i8>> {
        (1..=self.rank as i8).flat_map(|i| [vec![i], vec![-i]]).collect()
    }

    fn is_standard(&self, gens: &[Vec<i8>]) -> bool {
        let mut g = gens.to_vec();
        g.sort();
        let mut s = self.standard_generators();
        s.sort();
        g == s
    }
}

impl Group for FreeGroup {
    type Elem = Vec<i8>;

    fn identity(&self) -> Vec<i8> {
        Vec::new()
    }

    fn mul(&self, a: &Vec<i8>, b: &Vec<i8>) -> Vec<i8> {
        let mut out = a.clone();
        for &x in b {
            if out.last() == Some(&-x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        out
    }

    fn inv(&self, a: &Vec<i8>) -> Vec<i8> {
        a.iter().rev().map(|x| -x).collect()
    }

    fn label(&self) -> String {
        format!("free:{}", self.rank)
    }

    fn has_length_formula(&self, gens: &[Vec<i8>]) -> bool {
        self.is_standard(gens)
    }

    fn formula_length(&self, x: &Vec<i8>) -> u32 {
        x.len() as u32
    }

    fn formula_distance(&self, x: &Vec<i8>, y: &Vec<i8>) -> u32 {
        let common = x.iter().zip(y).take_while(|(a, b)| a == b).count();
        (x.len() + y.len() - 2 * common) as u32
    }
}

/// An element of `Z_m ≀ Z`: the lit lamps as sorted `(position, value)`
/// pairs with nonzero values, and the lamplighter's position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LampState {
    pub lamps: Vec<(i64, u32)>,
    pub position: i64,
}

/// The lamplighter group `Z_m ≀ Z` with `(f, p)(g, q) = (f + g(· - p), p + q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lamplighter {
    pub m: u32,
}

impl Lamplighter {
    /// `a^k t` for every `k` in `Z_m`, with inverses. Every step moves the
    /// lamplighter and may change the lamp on the edge it crosses, which makes
    /// the Cayley graph the Diestel-Leader graph `DL(m, m)`.
    pub fn default_generators(&self) -> Vec<LampState> {
        let mut out = Vec::new();
        for k in 0..self.m {
            let g = LampState {
                lamps: if k == 0 { vec![] } else { vec![(0, k)] },
                position: 1,
            };
            out.push(self.inv(&g));
            out.push(g);
        }
        out.sort();
        out
    }

    fn is_default(&self, gens: &[LampState]) -> bool {
        let mut g = gens.to_vec();
        g.sort();
        g == self.default_generators()
    }
}

impl Group for Lamplighter {
    type Elem = LampState;

    fn identity(&self) -> LampState {
        LampState {
            lamps: Vec::new(),
            position: 0,
        }
    }

    fn mul(&self, a: &LampState, b: &LampState) -> LampState {
        let mut lamps = a.lamps.clone();
        for &(pos, v) in &b.lamps {
            let at = pos + a.position;
            match lamps.binary_search_by_key(&at, |&(p, _)| p) {
                Ok(i) => {
                    let nv = (lamps[i].1 + v) % self.m;
                    if nv == 0 {
                        lamps.remove(i);
                    } else {
                        lamps[i].1 = nv;
                    }
                }
                Err(i) => lamps.insert(i, (at, v)),
            }
        }
        LampState {
            lamps,
            position: a.position + b.position,
        }
    }

    fn inv(&self, a: &LampState) -> LampState {
        LampState {
            lamps: a
                .lamps
                .iter()
                .map(|&(p, v)| (p - a.position, self.m - v))
                .collect(),
            position: -a.position,
        }
    }

    fn label(&self) -> String {
        format!("lamplighter:{}", self.m)
    }

    fn has_length_formula(&self, gens: &[LampState]) -> bool {
        self.is_default(gens)
    }

    /// For the default generators each step crosses one edge `[j, j+1]` of
    /// `Z` and may change lamp `j` arbitrarily, so the length is the shortest
    /// walk from 0 to the final position crossing every edge whose lamp is lit.
    fn formula_length(&self, x: &LampState) -> u32 {
        let p = x.position;
        let lo = x.lamps.first().map_or(0, |l| l.0).min(0).min(p);
        let hi = x.lamps.last().map_or(0, |l| l.0 + 1).max(0).max(p);
        let left_first = -lo + (hi - lo) + (hi - p);
        let right_first = hi + (hi - lo) + (p - lo);
        left_first.min(right_first) as u32
    }

    /// `x^{-1} y` has position `p_y - p_x` and lamps `f_y - f_x` shifted by
    /// `-p_x`, so only the extreme positions where the lamps differ matter.
    fn formula_distance(&self, x: &LampState, y: &LampState) -> u32 {
        let first = first_difference(x.lamps.iter(), y.lamps.iter(), |a, b| a < b);
        let last = first_difference(x.lamps.iter().rev(), y.lamps.iter().rev(), |a, b| a > b);
        let p = y.position - x.position;
        let lo = first.map_or(0, |q| q - x.position).min(0).min(p);
        let hi = last.map_or(0, |q| q - x.position + 1).max(0).max(p);
        let left_first = -lo + (hi - lo) + (hi - p);
        let right_first = hi + (hi - lo) + (p - lo);
        left_first.min(right_first) as u32
    }
}

/// First position, in the order given by `before`, where two sorted lamp
/// lists disagree.
fn first_difference<'a>(
    mut a: impl Iterator<Item = &'a (i64, u32)>,
    mut b: impl Iterator<Item = &'a (i64, u32)>,
    before: impl Fn(i64, i64) -> bool,
) -> Option<i64> {
    let (mut x, mut y) = (a.next(), b.next());
    loop {
        match (x, y) {
            (None, None) => return None,
            (Some(p), None) => return Some(p.0),
            (None, Some(q)) => return Some(q.0),
            (Some(p), Some(q)) => {
                if p == q {
                    x = a.next();
                    y = b.next();
                } else if p.0 == q.0 {
                    return Some(p.0);
                } else if before(p.0, q.0) {
                    return Some(p.0);
                } else {
                    return Some(q.0);
                }
            }
        }
    }
}
