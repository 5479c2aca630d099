//! Independent oracles and random filtered complexes shared by the
//! integration tests.
//!
//! Nothing here calls into the library's allowability, strata or linear
//! algebra code: depths come from the generator, strata from a separate
//! union-find, and homology from rational elimination with explicit
//! p-saturation.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use perverse::ext::{ExtendedInt, Finite, NegInf, PosInf};
use perverse::{FilteredComplex, Perversity, Simplex};
use rand::Rng;

pub type Q = BigRational;

/// A random filtered complex with its generating depth function.
pub struct RandomComplex {
    pub complex: FilteredComplex,
    pub formal_dim: usize,
    /// Every simplex with its depth, sorted by dimension then lexicographically.
    pub depth: BTreeMap<Vec<usize>, usize>,
}

fn subsets(v: &[usize]) -> Vec<Vec<usize>> {
    (1u32..(1 << v.len()))
        .map(|m| (0..v.len()).filter(|i| m >> i & 1 == 1).map(|i| v[i]).collect())
        .collect()
}

pub fn random_complex(rng: &mut impl Rng, max_vertices: usize, max_dim: usize) -> RandomComplex {
    let nv = rng.gen_range(3..=max_vertices);
    let nf = rng.gen_range(1..=6);
    let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
    for _ in 0..nf {
        let size = rng.gen_range(1..=max_dim + 1);
        let mut f: BTreeSet<usize> = BTreeSet::new();
        while f.len() < size.min(nv) {
            f.insert(rng.gen_range(0..nv));
        }
        let f: Vec<usize> = f.into_iter().collect();
        all.extend(subsets(&f));
    }
    let dim = all.iter().map(|s| s.len() - 1).max().unwrap();
    let n = dim + rng.gen_range(0..=1);
    let mut simplices: Vec<Vec<usize>> = all.into_iter().collect();
    simplices.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    let mut depth: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for s in &simplices {
        let faces_max = subsets(s)
            .into_iter()
            .filter(|f| f.len() < s.len())
            .map(|f| depth[&f])
            .max()
            .unwrap_or(0);
        let lo = faces_max.max(s.len() - 1);
        let d = if rng.gen_bool(0.6) { n } else { rng.gen_range(lo..=n) };
        depth.insert(s.clone(), d);
    }
    if !depth.values().any(|&d| d == n) {
        // some maximal simplex becomes regular
        let top = simplices.last().unwrap().clone();
        depth.insert(top, n);
    }
    let facets = maximal(&simplices);
    let skeleta: Vec<Vec<Simplex>> = (0..n)
        .map(|i| {
            let members: Vec<Vec<usize>> = simplices.iter().filter(|s| depth[*s] <= i).cloned().collect();
            maximal(&members).into_iter().map(|s| Simplex::new(s).unwrap()).collect()
        })
        .collect();
    let complex = FilteredComplex::new(n, facets.into_iter().map(|s| Simplex::new(s).unwrap()).collect(), skeleta)
        .expect("generated filtration is valid");
    RandomComplex { complex, formal_dim: n, depth }
}

fn maximal(s: &[Vec<usize>]) -> Vec<Vec<usize>> {
    s.iter()
        .filter(|a| !s.iter().any(|b| b.len() > a.len() && a.iter().all(|x| b.contains(x))))
        .cloned()
        .collect()
}

/// Strata as sets of simplices: classes of equal-depth simplices under the
/// face relation.
pub fn oracle_strata(depth: &BTreeMap<Vec<usize>, usize>) -> Vec<BTreeSet<Vec<usize>>> {
    let keys: Vec<&Vec<usize>> = depth.keys().collect();
    let idx: BTreeMap<&Vec<usize>, usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut parent: Vec<usize> = (0..keys.len()).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for (i, s) in keys.iter().enumerate() {
        for f in subsets(s) {
            if f.len() < s.len() && depth[&f] == depth[*s] {
                let (a, b) = (find(&mut parent, i), find(&mut parent, idx[&f]));
                parent[a] = b;
            }
        }
    }
    let mut groups: BTreeMap<usize, BTreeSet<Vec<usize>>> = BTreeMap::new();
    for (i, s) in keys.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().insert((*s).clone());
    }
    groups.into_values().collect()
}

/// Random perversity values in {−∞, −1, 0, 1, 2, +∞} on the singular
/// strata, keyed by the library's stratum ids.
pub fn random_perversity(
    rng: &mut impl Rng,
    rc: &RandomComplex,
    strata: &[BTreeSet<Vec<usize>>],
) -> (Perversity, Vec<ExtendedInt>) {
    let choices = [NegInf, Finite(-1), Finite(0), Finite(1), Finite(2), PosInf];
    let mut values = Vec::new();
    let mut by_id = Vec::new();
    for s in strata {
        let least = s.iter().min_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b))).unwrap();
        let d = rc.depth[least];
        let v = if d == rc.formal_dim { Finite(0) } else { choices[rng.gen_range(0..choices.len())] };
        values.push(v);
        if d < rc.formal_dim {
            let id = rc.complex.stratum_of(&Simplex::new(least.clone()).unwrap()).unwrap().id;
            by_id.push((id, v));
        }
    }
    (Perversity::strata(by_id), values)
}

/// Allowability straight from the defining inequality.
pub fn oracle_allowable(
    sigma: &[usize],
    rc: &RandomComplex,
    strata: &[BTreeSet<Vec<usize>>],
    values: &[ExtendedInt],
) -> bool {
    let dim = sigma.len() as i64 - 1;
    for (s, v) in strata.iter().zip(values) {
        let depth = rc.depth[s.iter().next().unwrap()];
        if depth == rc.formal_dim {
            continue;
        }
        let codim = (rc.formal_dim - depth) as i64;
        let contact = subsets(sigma).into_iter().filter(|f| s.contains(f)).map(|f| f.len() as i64 - 1).max();
        let ok = match (contact, v) {
            (None, _) => true,
            (Some(_), PosInf) => true,
            (Some(_), NegInf) => false,
            (Some(c), Finite(p)) => c <= dim - codim + p,
        };
        if !ok {
            return false;
        }
    }
    true
}

pub fn oracle_full(sigma: &[usize], rc: &RandomComplex, strata: &[BTreeSet<Vec<usize>>], values: &[ExtendedInt]) -> bool {
    subsets(sigma).iter().all(|f| oracle_allowable(f, rc, strata, values))
}

// ---- rational and modular linear algebra ----

fn q(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

/// Reduced row echelon form; returns pivot columns.
pub fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] = &m[i][j] - t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank_q(m: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect()).collect();
    rref(&mut a).len()
}

pub fn rank_mod(m: &[Vec<BigInt>], p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|r| r.iter().map(|x| x.mod_floor(&pb).to_u64().unwrap()).collect())
        .collect();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, piv);
        let inv = pow_mod(a[r][c], p - 2, p);
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c] * inv % p;
                for j in 0..cols {
                    a[i][j] = (a[i][j] + p * p - f * a[r][j] % p) % p;
                }
            }
        }
        r += 1;
    }
    r
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// A nonzero `c` with `Σ c_i w_i ≡ 0 (mod p)`, if the vectors are dependent mod p.
fn dependency_mod(w: &[Vec<BigInt>], p: u64) -> Option<Vec<u64>> {
    let k = w.len();
    let n = w.first().map_or(0, Vec::len);
    let pb = BigInt::from(p);
    // rows = coordinates, columns = vectors, augmented with identity to track combinations
    let mut a: Vec<Vec<u64>> = (0..k)
        .map(|i| {
            let mut row: Vec<u64> = w[i].iter().map(|x| x.mod_floor(&pb).to_u64().unwrap()).collect();
            row.extend((0..k).map(|j| u64::from(i == j)));
            row
        })
        .collect();
    let mut r = 0;
    for c in 0..n {
        let Some(piv) = (r..k).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, piv);
        let inv = pow_mod(a[r][c], p - 2, p);
        for i in 0..k {
            if i != r && a[i][c] != 0 {
                let f = a[i][c] * inv % p;
                for j in 0..n + k {
                    a[i][j] = (a[i][j] + p * p - f * a[r][j] % p) % p;
                }
            }
        }
        r += 1;
    }
    (r..k).map(|i| a[i][n..].to_vec()).next()
}

fn prime_factors(mut d: BigInt) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2u64;
    while d > BigInt::one() {
        let fb = BigInt::from(f);
        if (&d % &fb).is_zero() {
            out.push(f);
            while (&d % &fb).is_zero() {
                d /= &fb;
            }
        }
        f += 1;
        assert!(f < 1_000_000, "denominator with a large prime factor");
    }
    out
}

/// A basis of `ker_Z(m)` (`m` has `cols` columns), via a rational kernel
/// basis followed by p-saturation at every prime dividing a denominator.
pub fn integer_kernel(m: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect()).collect();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    let mut primes: BTreeSet<u64> = BTreeSet::new();
    for &f in &free {
        let mut v = vec![q(0); cols];
        v[f] = q(1);
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[r][f].clone();
        }
        let den = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        primes.extend(prime_factors(den.clone()));
        basis.push(v.iter().map(|x| (x * Q::from_integer(den.clone())).to_integer()).collect());
    }
    for p in primes {
        while let Some(c) = dependency_mod(&basis, p) {
            let j = c.iter().position(|&x| x != 0).unwrap();
            let inv = pow_mod(c[j], p - 2, p);
            let c: Vec<u64> = c.iter().map(|&x| x * inv % p).collect();
            let mut v = vec![BigInt::zero(); cols];
            for (i, w) in basis.iter().enumerate() {
                for (t, x) in v.iter_mut().enumerate() {
                    *x += &w[t] * BigInt::from(c[i]);
                }
            }
            basis[j] = v.into_iter().map(|x| x / BigInt::from(p)).collect();
        }
    }
    basis
}

/// Coordinates of `b` in the basis `w` (full column rank), if rational.
fn coordinates(w: &[Vec<BigInt>], b: &[BigInt]) -> Vec<Q> {
    let n = b.len();
    let k = w.len();
    let mut a: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut row: Vec<Q> = (0..k).map(|j| Q::from_integer(w[j][i].clone())).collect();
            row.push(Q::from_integer(b[i].clone()));
            row
        })
        .collect();
    let pivots = rref(&mut a);
    assert!(!pivots.contains(&k), "vector is outside the span");
    let mut x = vec![q(0); k];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = a[r][k].clone();
    }
    x
}

/// `IH_j` as (rank, number of torsion summands divisible by p for each
/// p in `primes`).
pub struct OracleGroup {
    pub rank: usize,
    pub p_torsion: Vec<(u64, usize)>,
}

/// Intersection homology from allowability flags alone.
pub fn oracle_ih(simplices: &[Vec<usize>], allowable: &dyn Fn(&[usize]) -> bool, j: usize, primes: &[u64]) -> OracleGroup {
    let of_dim = |d: usize| -> Vec<&Vec<usize>> { simplices.iter().filter(|s| s.len() == d + 1).collect() };
    let boundary = |d: usize, s: &[usize]| -> Vec<(Vec<usize>, i64)> {
        (0..s.len())
            .map(|i| {
                let mut f = s.to_vec();
                f.remove(i);
                (f, if i % 2 == 0 { 1 } else { -1 })
            })
            .filter(|(f, _)| d > 0 && !f.is_empty())
            .collect()
    };
    let a_j: Vec<&Vec<usize>> = of_dim(j).into_iter().filter(|s| allowable(s)).collect();
    let a_j1: Vec<&Vec<usize>> = of_dim(j + 1).into_iter().filter(|s| allowable(s)).collect();
    // cycles: ker ∂_j on allowable j-simplices
    let lower: Vec<&Vec<usize>> = if j == 0 { Vec::new() } else { of_dim(j - 1) };
    let row_of = |list: &[&Vec<usize>]| -> BTreeMap<Vec<usize>, usize> { list.iter().enumerate().map(|(i, s)| ((*s).clone(), i)).collect() };
    let lr = row_of(&lower);
    let mut dj = vec![vec![BigInt::zero(); a_j.len()]; lower.len()];
    for (c, s) in a_j.iter().enumerate() {
        for (f, sg) in boundary(j, s) {
            dj[lr[&f]][c] += sg;
        }
    }
    let z = integer_kernel(&dj, a_j.len());
    // IC_{j+1}: allowable (j+1)-chains whose boundary avoids non-allowable j-simplices
    let bad: Vec<&Vec<usize>> = of_dim(j).into_iter().filter(|s| !allowable(s)).collect();
    let br = row_of(&bad);
    let mut n = vec![vec![BigInt::zero(); a_j1.len()]; bad.len()];
    for (c, s) in a_j1.iter().enumerate() {
        for (f, sg) in boundary(j + 1, s) {
            if let Some(&r) = br.get(&f) {
                n[r][c] += sg;
            }
        }
    }
    let ic = integer_kernel(&n, a_j1.len());
    let ar = row_of(&a_j);
    let mut coords: Vec<Vec<BigInt>> = Vec::new();
    for v in &ic {
        let mut b = vec![BigInt::zero(); a_j.len()];
        for (c, s) in a_j1.iter().enumerate() {
            if v[c].is_zero() {
                continue;
            }
            for (f, sg) in boundary(j + 1, s) {
                if let Some(&r) = ar.get(&f) {
                    b[r] += &v[c] * sg;
                }
            }
        }
        let x = coordinates(&z, &b);
        assert!(x.iter().all(|t| t.is_integer()), "boundary not integral in the cycle basis");
        coords.push(x.into_iter().map(|t| t.to_integer()).collect());
    }
    // coords: one row per boundary generator, one column per cycle basis vector
    let rq = rank_q(&coords);
    OracleGroup {
        rank: z.len() - rq,
        p_torsion: primes.iter().map(|&p| (p, rq - rank_mod(&coords, p))).collect(),
    }
}

pub fn matches(oracle: &OracleGroup, h: &perverse::chain::HomologyGroup) -> bool {
    oracle.rank == h.rank
        && oracle
            .p_torsion
            .iter()
            .all(|&(p, c)| h.torsion.iter().filter(|t| (*t % BigInt::from(p)).is_zero()).count() == c)
        && h.torsion.iter().all(|t| t.abs() > BigInt::one())
}

/// Determinant of a square integer matrix by rational elimination.
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect()).collect();
    let mut d = q(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return BigInt::zero() };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d = &d * &a[c][c];
        for i in c + 1..n {
            let f = &a[i][c] / &a[c][c];
            for j in c..n {
                let t = &a[c][j] * &f;
                a[i][j] = &a[i][j] - t;
            }
        }
    }
    d.to_integer()
}
