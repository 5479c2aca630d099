use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::chain::HomologyGroup;
use crate::error::{Error, Result};
use crate::linalg::smith::smith_diagonal;
use crate::linalg::DenseMatrix;
use num_traits::One;

/// A word in the generators: letter `g` (1-based) stands for generator `g`,
/// `-g` for its inverse.
pub type Word = Vec<i64>;

/// `⟨x_1, …, x_g | r_1, …, r_k⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPresentation")]
pub struct GroupPresentation {
    pub generators: usize,
    pub relators: Vec<Word>,
}

#[derive(Deserialize)]
struct RawPresentation {
    generators: usize,
    relators: Vec<Word>,
}

impl TryFrom<RawPresentation> for GroupPresentation {
    type Error = Error;

    fn try_from(r: RawPresentation) -> Result<Self> {
        GroupPresentation::new(r.generators, r.relators)
    }
}

pub fn inverse(w: &[i64]) -> Word {
    w.iter().rev().map(|x| -x).collect()
}

pub fn free_reduce(w: &[i64]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

/// Free and cyclic reduction.
pub fn cyclic_reduce(w: &[i64]) -> Word {
    let mut w = free_reduce(w);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

/// Canonical representative of a cyclically reduced relator up to rotation
/// and inversion: the lexicographically least of all of them.
fn canonical(w: &[i64]) -> Word {
    let mut best: Option<Word> = None;
    for cand in [w.to_vec(), inverse(w)] {
        for r in 0..cand.len().max(1) {
            let mut rot = cand[r..].to_vec();
            rot.extend_from_slice(&cand[..r]);
            if best.as_ref().map_or(true, |b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

impl GroupPresentation {
    pub fn new(generators: usize, relators: Vec<Word>) -> Result<Self> {
        for r in &relators {
            if let Some(&x) = r.iter().find(|&&x| x == 0 || x.unsigned_abs() as usize > generators) {
                return Err(Error::malformed(format!("letter {x} is outside 1..={generators}")));
            }
        }
        Ok(GroupPresentation {
            generators,
            relators: relators.iter().map(|r| free_reduce(r)).filter(|r| !r.is_empty()).collect(),
        })
    }

    pub fn trivial() -> Self {
        GroupPresentation { generators: 0, relators: Vec::new() }
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Vec::len).sum()
    }

    /// `G^{ab}` from the Smith form of the relator exponent matrix.
    pub fn abelianization(&self) -> HomologyGroup {
        let mut m = DenseMatrix::zeros(self.relators.len(), self.generators);
        for (i, r) in self.relators.iter().enumerate() {
            for &x in r {
                let g = x.unsigned_abs() as usize - 1;
                *m.get_mut(i, g) += x.signum();
            }
        }
        let d = smith_diagonal(&m);
        HomologyGroup::new(self.generators - d.len(), d.into_iter().filter(|x| !x.is_one()).collect())
    }

    /// Cyclically reduces relators, drops trivial and duplicate ones (up to
    /// rotation and inversion), and sorts them.
    pub fn tidy(&self) -> GroupPresentation {
        let set: BTreeSet<(usize, Word)> = self
            .relators
            .iter()
            .map(|r| cyclic_reduce(r))
            .filter(|r| !r.is_empty())
            .map(|r| {
                let c = canonical(&r);
                (c.len(), c)
            })
            .collect();
        GroupPresentation { generators: self.generators, relators: set.into_iter().map(|(_, r)| r).collect() }
    }

    /// Tietze simplification.
    ///
    /// Repeatedly removes a generator occurring exactly once in some relator
    /// (choosing the shortest such relator, then the least generator),
    /// substituting its solution into the other relators. Substitutions that
    /// would push the total relator length above `budget` are skipped. Between
    /// eliminations, a relator whose rotation has more than half of its
    /// length in common with a subword of another relator shortens the latter.
    pub fn simplify(&self, budget: usize) -> GroupPresentation {
        let mut g = self.collapse_short().tidy();
        loop {
            let before = (g.generators, g.total_length());
            if let Some(next) = g.eliminate_one(budget) {
                g = next.tidy();
                continue;
            }
            g = g.shorten().tidy();
            if (g.generators, g.total_length()) == before {
                return g;
            }
        }
    }

    /// Eliminates generators through relators of length one (`x = 1`) and
    /// two (`x = y^±1`) in bulk, sweeping until nothing changes. Edge-path
    /// presentations consist mostly of such relators.
    fn collapse_short(&self) -> GroupPresentation {
        // value[g] = None: g = 1; Some(x): g = x (a signed letter)
        let mut value: Vec<Option<i64>> = (1..=self.generators as i64).map(Some).collect();
        fn resolve(value: &mut [Option<i64>], x: i64) -> Option<i64> {
            let g = x.unsigned_abs() as usize - 1;
            let v = value[g]?;
            let r = if v.unsigned_abs() as usize == g + 1 { v } else { resolve(value, v)? };
            value[g] = Some(r);
            Some(if x < 0 { -r } else { r })
        }
        let mut changed = true;
        while changed {
            changed = false;
            for r in &self.relators {
                let w: Word = r.iter().filter_map(|&x| resolve(&mut value, x)).collect();
                let w = cyclic_reduce(&w);
                match w.as_slice() {
                    [x] => {
                        value[x.unsigned_abs() as usize - 1] = None;
                        changed = true;
                    }
                    [x, y] if x.abs() != y.abs() => {
                        // x y = 1, so x = y⁻¹
                        let (a, b) = if x.abs() > y.abs() { (*x, *y) } else { (*y, *x) };
                        value[a.unsigned_abs() as usize - 1] = Some(if a > 0 { -b } else { b });
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
        let mut number = vec![0i64; self.generators];
        let mut next = 0;
        for g in 0..self.generators {
            if value[g] == Some(g as i64 + 1) {
                next += 1;
                number[g] = next;
            }
        }
        let relators = self
            .relators
            .iter()
            .map(|r| {
                let w: Word = r
                    .iter()
                    .filter_map(|&x| resolve(&mut value, x))
                    .map(|x| x.signum() * number[x.unsigned_abs() as usize - 1])
                    .collect();
                cyclic_reduce(&w)
            })
            .filter(|w| !w.is_empty())
            .collect();
        GroupPresentation { generators: next as usize, relators }
    }

    fn eliminate_one(&self, budget: usize) -> Option<GroupPresentation> {
        let mut order: Vec<usize> = (0..self.relators.len()).collect();
        order.sort_by_key(|&i| (self.relators[i].len(), i));
        for i in order {
            let r = &self.relators[i];
            for gen in 1..=self.generators as i64 {
                let occ: Vec<usize> = (0..r.len()).filter(|&k| r[k].abs() == gen).collect();
                if occ.len() != 1 {
                    continue;
                }
                // r = u x^e v  ⇒  x^e = u⁻¹ v⁻¹ , i.e. x = (v u)^{-e}
                let k = occ[0];
                let e = r[k].signum();
                let mut vu: Word = r[k + 1..].to_vec();
                vu.extend_from_slice(&r[..k]);
                let image: Word = if e > 0 { inverse(&vu) } else { vu };
                let inv_image = inverse(&image);
                let mut relators = Vec::new();
                let mut total = 0;
                for (j, s) in self.relators.iter().enumerate() {
                    if j == i {
                        continue;
                    }
                    let mut out = Vec::new();
                    for &x in s {
                        if x == gen {
                            out.extend_from_slice(&image);
                        } else if x == -gen {
                            out.extend_from_slice(&inv_image);
                        } else {
                            out.push(x);
                        }
                    }
                    let out = cyclic_reduce(&out);
                    total += out.len();
                    relators.push(out);
                }
                if total > budget {
                    continue;
                }
                // renumber generators above `gen`
                let relabel = |x: i64| if x.abs() > gen { x - x.signum() } else { x };
                let relators = relators
                    .into_iter()
                    .map(|w| w.into_iter().map(relabel).collect())
                    .collect();
                return Some(GroupPresentation { generators: self.generators - 1, relators });
            }
        }
        None
    }

    fn shorten(&self) -> GroupPresentation {
        let mut rels = self.relators.clone();
        let mut changed = true;
        while changed {
            changed = false;
            'outer: for a in 0..rels.len() {
                let s = rels[a].clone();
                let l = s.len();
                if l == 0 {
                    continue;
                }
                for cand in [s.clone(), inverse(&s)] {
                    for rot in 0..l {
                        let mut c = cand[rot..].to_vec();
                        c.extend_from_slice(&cand[..rot]);
                        // c = p q with |p| > l/2 ; then p = q⁻¹
                        let plen = l / 2 + 1;
                        let (p, q) = c.split_at(plen);
                        let q_inv = inverse(q);
                        for b in 0..rels.len() {
                            if b == a {
                                continue;
                            }
                            if let Some(at) = find(&rels[b], p) {
                                let mut w = rels[b][..at].to_vec();
                                w.extend_from_slice(&q_inv);
                                w.extend_from_slice(&rels[b][at + p.len()..]);
                                let w = cyclic_reduce(&w);
                                if w.len() < rels[b].len() {
                                    rels[b] = w;
                                    changed = true;
                                    break 'outer;
                                }
                            }
                        }
                    }
                }
            }
        }
        GroupPresentation { generators: self.generators, relators: rels.into_iter().filter(|r| !r.is_empty()).collect() }
    }
}

fn find(hay: &[i64], needle: &[i64]) -> Option<usize> {
    if needle.is_empty() || needle.len() > hay.len() {
        return None;
    }
    (0..=hay.len() - needle.len()).find(|&i| &hay[i..i + needle.len()] == needle)
}

impl std::fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let letter = |x: i64| {
            let g = x.unsigned_abs();
            if x > 0 {
                format!("x{g}")
            } else {
                format!("x{g}^-1")
            }
        };
        let gens: Vec<String> = (1..=self.generators).map(|g| format!("x{g}")).collect();
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| r.iter().map(|&x| letter(x)).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "< {} | {} >", gens.join(", "), rels.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    #[test]
    fn free_and_cyclic_reduction() {
        assert_eq!(free_reduce(&[1, 2, -2, -1, 3]), vec![3]);
        assert_eq!(cyclic_reduce(&[-1, 2, 3, 1]), vec![2, 3]);
    }

    #[test]
    fn trivial_by_elimination() {
        // ⟨a, b | a, ab⟩
        let g = GroupPresentation::new(2, vec![vec![1], vec![1, 2]]).unwrap().simplify(1000);
        assert_eq!(g, GroupPresentation::trivial());
    }

    #[test]
    fn commutator_is_left_alone() {
        let g = GroupPresentation::new(2, vec![vec![1, 2, -1, -2]]).unwrap();
        let s = g.simplify(1000);
        assert_eq!(s.generators, 2);
        assert_eq!(s.relators.len(), 1);
        assert_eq!(s.abelianization(), HomologyGroup::free(2));
    }

    #[test]
    fn abelianizations() {
        assert!(GroupPresentation::trivial().abelianization().is_zero());
        let c5 = GroupPresentation::new(1, vec![vec![1; 5]]).unwrap();
        assert_eq!(c5.abelianization(), HomologyGroup::new(0, vec![int(5)]));
        // binary icosahedral: ⟨s, t | (st)^2 = s^3 = t^5⟩ is perfect
        let bi = GroupPresentation::new(2, vec![vec![1, 2, 1, 2, -1, -1, -1], vec![1, 1, 1, -2, -2, -2, -2, -2]]).unwrap();
        assert!(bi.abelianization().is_zero());
    }

    #[test]
    fn letters_are_checked() {
        assert!(GroupPresentation::new(1, vec![vec![2]]).is_err());
        assert!(GroupPresentation::new(1, vec![vec![0]]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = GroupPresentation::new(2, vec![vec![1, -2, 1]]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"generators":2,"relators":[[1,-2,1]]}"#);
        assert_eq!(serde_json::from_str::<GroupPresentation>(&s).unwrap(), g);
    }
}
