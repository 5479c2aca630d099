//! Perverse `π₀` and presentations of perverse fundamental groups.
//!
//! For `p̄ ≤ t̄`, full vertices and edges are regular, so loops live in the
//! regular full subcomplex `R`. The presentation is the edge-path group of
//! `R` (spanning tree from the basepoint, one generator per non-tree edge,
//! one relator per full triangle) together with, at every singular vertex
//! `w` whose stratum has `Dp̄ = 0`, every loop of the regular part of the
//! link of `w`: such loops bound a cone on `w` made of full 2-simplices.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::allowability::{augmented_two_complex, fan_centers, require_below_top, Fullness};
use crate::chain::{homology, HomologyGroup};
use crate::complex::{FilteredComplex, UnionFind};
use crate::construct::subdivide_times;
use crate::error::{Error, Result};
use crate::group::{find_homomorphisms, FiniteGroupTarget, GroupPresentation, SearchStatus, Word};
use crate::perversity::Perversity;
use crate::simplex::Simplex;

/// Classes of full vertices under the equivalence generated by full edges.
#[derive(Clone, Debug, Serialize)]
pub struct Pi0Report {
    pub classes: Vec<Vec<usize>>,
    pub warnings: Vec<String>,
}

pub fn pi0_perverse(k: &FilteredComplex, p: &Perversity) -> Result<Pi0Report> {
    let f = Fullness::new(k, p)?;
    let verts: Vec<usize> = k
        .simplices_of_dim(0)
        .filter(|(i, _)| f.is_full_at(*i))
        .map(|(_, s)| s.vertices()[0])
        .collect();
    let pos: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut uf = UnionFind::new(verts.len());
    for (i, e) in k.simplices_of_dim(1) {
        if f.is_full_at(i) {
            uf.union(pos[&e.vertices()[0]], pos[&e.vertices()[1]]);
        }
    }
    let classes: Vec<Vec<usize>> = uf
        .groups()
        .into_iter()
        .map(|g| g.into_iter().map(|i| verts[i]).collect())
        .collect();
    let warnings = if classes.is_empty() { vec!["no full vertices".to_string()] } else { Vec::new() };
    Ok(Pi0Report { classes, warnings })
}

/// Options for [`perverse_pi1`].
#[derive(Clone, Copy, Debug)]
pub struct Pi1Options {
    /// Budget on total relator length during Tietze simplification.
    pub tietze_budget: usize,
    /// `0` uses breadth-first order; other values shuffle neighbour order
    /// when building spanning trees, giving a different but equivalent
    /// presentation.
    pub seed: u64,
}

impl Default for Pi1Options {
    fn default() -> Self {
        Pi1Options { tietze_budget: 200_000, seed: 0 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Pi1Report {
    pub basepoint: usize,
    /// Vertices of the basepoint's component of the regular full subcomplex.
    pub component_size: usize,
    pub fan_centers: Vec<usize>,
    pub raw: GroupPresentation,
    pub simplified: GroupPresentation,
    pub abelianization: HomologyGroup,
}

struct Graph {
    adj: BTreeMap<usize, Vec<usize>>,
}

impl Graph {
    fn new(edges: impl IntoIterator<Item = (usize, usize)>, rng: &mut Option<ChaCha8Rng>) -> Self {
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (a, b) in edges {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        for v in adj.values_mut() {
            v.sort_unstable();
            if let Some(r) = rng.as_mut() {
                v.shuffle(r);
            }
        }
        Graph { adj }
    }

    /// BFS tree from `root`: parent pointers of the reached vertices.
    fn tree(&self, root: usize) -> BTreeMap<usize, Option<usize>> {
        let mut parent = BTreeMap::from([(root, None)]);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &u in self.adj.get(&v).map_or(&[][..], Vec::as_slice) {
                if let std::collections::btree_map::Entry::Vacant(e) = parent.entry(u) {
                    e.insert(Some(v));
                    queue.push_back(u);
                }
            }
        }
        parent
    }
}

fn is_tree_edge(parent: &BTreeMap<usize, Option<usize>>, a: usize, b: usize) -> bool {
    parent.get(&a) == Some(&Some(b)) || parent.get(&b) == Some(&Some(a))
}

/// Presentation of `π₁^p̄(K, basepoint)`. Requires `p̄ ≤ t̄` on every
/// singular stratum and a regular basepoint.
pub fn perverse_pi1(k: &FilteredComplex, p: &Perversity, basepoint: usize, opts: Pi1Options) -> Result<Pi1Report> {
    require_below_top(k, p)?;
    if !k.contains(&Simplex::vertex(basepoint)) || !k.is_regular_vertex(basepoint) {
        return Err(Error::precondition(format!("basepoint {basepoint} is not a regular vertex")));
    }
    let f = Fullness::new(k, p)?;
    let mut rng = (opts.seed != 0).then(|| ChaCha8Rng::seed_from_u64(opts.seed));
    let full_edges: Vec<(usize, usize)> = k
        .simplices_of_dim(1)
        .filter(|(i, _)| f.is_full_at(*i))
        .map(|(_, e)| (e.vertices()[0], e.vertices()[1]))
        .collect();
    let graph = Graph::new(full_edges.iter().copied(), &mut rng);
    let parent = graph.tree(basepoint);

    // generators: non-tree edges of the basepoint's component, low → high
    let mut gen_of: HashMap<(usize, usize), i64> = HashMap::new();
    for &(a, b) in &full_edges {
        if parent.contains_key(&a) && !is_tree_edge(&parent, a, b) {
            let next = gen_of.len() as i64 + 1;
            gen_of.insert((a, b), next);
        }
    }
    let letter = |a: usize, b: usize| -> Option<i64> {
        if a < b {
            gen_of.get(&(a, b)).copied()
        } else {
            gen_of.get(&(b, a)).map(|g| -g)
        }
    };
    let mut relators: Vec<Word> = Vec::new();
    for (i, t) in k.simplices_of_dim(2) {
        if !f.is_full_at(i) || !parent.contains_key(&t.vertices()[0]) {
            continue;
        }
        let [a, b, c] = [t.vertices()[0], t.vertices()[1], t.vertices()[2]];
        relators.push([letter(a, b), letter(b, c), letter(c, a)].into_iter().flatten().collect());
    }

    let centers = fan_centers(k, p)?;
    let mut used_centers = Vec::new();
    for &w in &centers {
        let before = relators.len();
        // regular link edges {a, b} with {w, a, b} a triangle and a, b in R
        let mut link_edges = Vec::new();
        for (_, t) in k.simplices_of_dim(2) {
            if !t.contains(w) {
                continue;
            }
            let e = t.without(w).unwrap();
            let (a, b) = (e.vertices()[0], e.vertices()[1]);
            if k.is_regular_vertex(a) && k.is_regular_vertex(b) && k.is_regular_vertex(a.min(b)) {
                let ei = k.index_of(&e).unwrap();
                if f.is_full_at(ei) && parent.contains_key(&a) {
                    link_edges.push((a, b));
                }
            }
        }
        let lg = Graph::new(link_edges.iter().copied(), &mut rng);
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        let roots: Vec<usize> = lg.adj.keys().copied().collect();
        for root in roots {
            if seen.contains(&root) {
                continue;
            }
            let lp = lg.tree(root);
            seen.extend(lp.keys().copied());
            // word of the link-tree path from root to v
            let path_word = |mut v: usize| -> Word {
                let mut rev: Word = Vec::new();
                while let Some(&Some(u)) = lp.get(&v) {
                    if let Some(l) = letter(u, v) {
                        rev.push(l);
                    }
                    v = u;
                }
                rev.reverse();
                rev
            };
            for &(a, b) in &link_edges {
                if !lp.contains_key(&a) || is_tree_edge(&lp, a, b) {
                    continue;
                }
                let mut w = path_word(a);
                w.extend(letter(a, b));
                let back = path_word(b);
                w.extend(back.iter().rev().map(|x| -x));
                relators.push(w);
            }
        }
        if relators.len() > before || !link_edges.is_empty() {
            used_centers.push(w);
        }
    }

    let raw = GroupPresentation::new(gen_of.len(), relators)?;
    let simplified = raw.simplify(opts.tietze_budget);
    let abelianization = simplified.abelianization();
    Ok(Pi1Report {
        basepoint,
        component_size: parent.len(),
        fan_centers: used_centers,
        raw,
        simplified,
        abelianization,
    })
}

/// Image of a vertex of `K` in `sd K`.
pub fn subdivision_vertex(k: &FilteredComplex, v: usize) -> Result<usize> {
    k.index_of(&Simplex::vertex(v))
        .ok_or_else(|| Error::UnknownSimplex(Simplex::vertex(v).to_string()))
}

/// Least regular vertex, the default basepoint.
pub fn default_basepoint(k: &FilteredComplex) -> Result<usize> {
    k.vertices()
        .into_iter()
        .find(|&v| k.is_regular_vertex(v))
        .ok_or_else(|| Error::precondition("the complex has no regular vertex"))
}

/// Subdivides `times` times (carrying the basepoint and perversity along)
/// and computes [`perverse_pi1`].
pub fn perverse_pi1_subdivided(
    k: &FilteredComplex,
    p: &Perversity,
    basepoint: Option<usize>,
    times: usize,
    opts: Pi1Options,
) -> Result<Pi1Report> {
    let mut base = match basepoint {
        Some(b) => b,
        None => default_basepoint(k)?,
    };
    let mut cur = k.clone();
    let mut pv = p.clone();
    for _ in 0..times {
        let next = subdivide_times(&cur, 1);
        pv = pv.pull_back_subdivision(&cur, &next)?;
        base = subdivision_vertex(&cur, base)?;
        cur = next;
    }
    perverse_pi1(&cur, &pv, base, opts)
}

/// Augmented-model invariants after `times` subdivisions.
#[derive(Clone, Debug, Serialize)]
pub struct SubdivisionLevel {
    pub times: usize,
    pub h0: HomologyGroup,
    pub h1: HomologyGroup,
    pub pi1: GroupPresentation,
    pub abelianization: HomologyGroup,
    pub quotients: Vec<QuotientCount>,
}

impl SubdivisionLevel {
    fn differences(&self, other: &SubdivisionLevel) -> Vec<String> {
        let mut out = Vec::new();
        let mut cmp = |what: &str, a: String, b: String| {
            if a != b {
                out.push(format!("{what}: {a} at sd^{} vs {b} at sd^{}", self.times, other.times));
            }
        };
        cmp("H_0", self.h0.to_string(), other.h0.to_string());
        cmp("H_1", self.h1.to_string(), other.h1.to_string());
        cmp("abelianized pi_1", self.abelianization.to_string(), other.abelianization.to_string());
        for (a, b) in self.quotients.iter().zip(&other.quotients) {
            if a.status == SearchStatus::Complete && b.status == SearchStatus::Complete {
                cmp(&format!("Hom(pi_1, {})", a.target), a.homomorphisms.to_string(), b.homomorphisms.to_string());
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityReport {
    pub levels: Vec<SubdivisionLevel>,
    /// The last two levels agree on every invariant.
    pub stable: bool,
    pub disagreements: Vec<String>,
}

/// Computes `H_0`, `H_1` and `π₁` of the augmented model at each number of
/// subdivisions in `0..=max_times` and reports where consecutive levels
/// differ. Nothing is asserted about convergence.
pub fn subdivision_stability(
    k: &FilteredComplex,
    p: &Perversity,
    max_times: usize,
    opts: Pi1Options,
    search_budget: u64,
) -> Result<StabilityReport> {
    let base = default_basepoint(k)?;
    let targets = standard_targets();
    let mut levels: Vec<SubdivisionLevel> = Vec::new();
    let (mut cur, mut pv, mut b) = (k.clone(), p.clone(), base);
    for times in 0..=max_times {
        if times > 0 {
            let next = subdivide_times(&cur, 1);
            pv = pv.pull_back_subdivision(&cur, &next)?;
            b = subdivision_vertex(&cur, b)?;
            cur = next;
        }
        let c = augmented_two_complex(&cur, &pv)?.chain_complex()?;
        let (h0, h1) = (homology(&c, 0), homology(&c, 1));
        let r = perverse_pi1(&cur, &pv, b, opts)?;
        levels.push(SubdivisionLevel {
            times,
            h0,
            h1,
            quotients: quotient_counts(&r.simplified, &targets, search_budget),
            pi1: r.simplified,
            abelianization: r.abelianization,
        });
    }
    let disagreements: Vec<String> = levels.windows(2).flat_map(|w| w[0].differences(&w[1])).collect();
    let stable = match levels.len() {
        0 | 1 => true,
        n => levels[n - 2].differences(&levels[n - 1]).is_empty(),
    };
    Ok(StabilityReport { levels, stable, disagreements })
}

/// Homomorphism counts into a fixed finite group.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientCount {
    pub target: String,
    pub homomorphisms: usize,
    pub surjections: usize,
    pub status: SearchStatus,
}

/// Counts homomorphisms and surjections onto each target.
pub fn quotient_counts(g: &GroupPresentation, targets: &[FiniteGroupTarget], budget: u64) -> Vec<QuotientCount> {
    targets
        .iter()
        .map(|t| {
            let all = find_homomorphisms(g, t, false, budget);
            let surjections = all
                .homomorphisms
                .iter()
                .filter(|h| {
                    let idx: Vec<usize> = h
                        .iter()
                        .map(|perm| (0..t.order()).find(|&e| t.element(e) == perm.as_slice()).unwrap())
                        .collect();
                    t.generated_order(&idx) == t.order()
                })
                .count();
            QuotientCount { target: t.name.clone(), homomorphisms: all.count, surjections, status: all.status }
        })
        .collect()
}

/// The default list of targets for quotient comparisons.
pub fn standard_targets() -> Vec<FiniteGroupTarget> {
    vec![
        FiniteGroupTarget::alternating5(),
        FiniteGroupTarget::symmetric3(),
        FiniteGroupTarget::cyclic(2),
        FiniteGroupTarget::cyclic(3),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct CoarseningSide {
    pub pi1: Pi1Report,
    pub quotients: Vec<QuotientCount>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoarseningReport {
    /// Singular strata of the fine filtration whose simplices are regular in
    /// the coarse one (by fine stratum id).
    pub exceptional_strata: Vec<usize>,
    pub fine: CoarseningSide,
    pub coarse: CoarseningSide,
    pub abelianizations_agree: bool,
    pub quotient_counts_agree: bool,
}

/// Compares perverse fundamental groups of two filtrations of the same
/// complex, the second coarser than the first.
pub fn compare_coarsening_pi1(
    fine: &FilteredComplex,
    coarse: &FilteredComplex,
    p: &Perversity,
    subdivide: usize,
    opts: Pi1Options,
    search_budget: u64,
) -> Result<CoarseningReport> {
    if fine.simplices() != coarse.simplices() {
        return Err(Error::precondition("the two filtrations are on different complexes"));
    }
    for i in 0..=fine.formal_dim() {
        let members: BTreeSet<usize> = coarse.skeleton_members(i).into_iter().collect();
        for s in fine.strata() {
            let inside = s.simplices.iter().filter(|x| members.contains(x)).count();
            if inside != 0 && inside != s.simplices.len() {
                return Err(Error::precondition(format!(
                    "coarse skeleton X_{i} is not a union of fine strata"
                )));
            }
        }
    }
    if fine.formal_dim() != coarse.formal_dim()
        || (0..fine.simplices().len()).any(|i| coarse.depth_at(i) < fine.depth_at(i))
    {
        return Err(Error::precondition("the second filtration is not coarser than the first"));
    }
    let n = coarse.formal_dim();
    let exceptional_strata: Vec<usize> = fine
        .singular_strata()
        .filter(|s| s.simplices.iter().all(|&i| coarse.depth_at(i) == n))
        .map(|s| s.id)
        .collect();
    let base = default_basepoint(fine)?;
    let targets = standard_targets();
    let side = |k: &FilteredComplex| -> Result<CoarseningSide> {
        let pi1 = perverse_pi1_subdivided(k, p, Some(base), subdivide, opts)?;
        let quotients = quotient_counts(&pi1.simplified, &targets, search_budget);
        Ok(CoarseningSide { pi1, quotients })
    };
    let f = side(fine)?;
    let c = side(coarse)?;
    let abelianizations_agree = f.pi1.abelianization.isomorphic(&c.pi1.abelianization);
    let quotient_counts_agree = f
        .quotients
        .iter()
        .zip(&c.quotients)
        .all(|(a, b)| a.homomorphisms == b.homomorphisms && a.surjections == b.surjections);
    Ok(CoarseningReport { exceptional_strata, fine: f, coarse: c, abelianizations_agree, quotient_counts_agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn pi0_of_wedge() {
        let k = fixtures::wedge_s2_s2();
        assert_eq!(pi0_perverse(&k, &Perversity::zero()).unwrap().classes.len(), 2);
        assert_eq!(pi0_perverse(&k, &Perversity::top_offset(2)).unwrap().classes.len(), 1);
    }

    #[test]
    fn pinched_torus_groups() {
        let k = fixtures::pinched_torus();
        let r = perverse_pi1(&k, &Perversity::zero(), 1, Pi1Options::default()).unwrap();
        assert_eq!(r.simplified, GroupPresentation::trivial());
        let r = perverse_pi1(&k, &Perversity::gm(vec![-1]), 1, Pi1Options::default()).unwrap();
        assert_eq!(r.abelianization, HomologyGroup::free(1));
        assert_eq!(r.simplified.generators, 1);
        assert!(perverse_pi1(&k, &Perversity::zero(), 0, Pi1Options::default()).is_err());
    }

    #[test]
    fn pinched_torus_stabilizes() {
        let k = fixtures::pinched_torus();
        let r = subdivision_stability(&k, &Perversity::zero(), 2, Pi1Options::default(), 1_000_000).unwrap();
        assert!(r.stable, "{:?}", r.disagreements);
        assert!(r.levels[2].h1.is_zero());
    }

    #[test]
    fn seeds_agree_on_invariants() {
        let k = fixtures::torus7();
        let a = perverse_pi1(&k, &Perversity::zero(), 0, Pi1Options::default()).unwrap();
        let b = perverse_pi1(&k, &Perversity::zero(), 0, Pi1Options { seed: 7, ..Default::default() }).unwrap();
        assert_eq!(a.abelianization, HomologyGroup::free(2));
        assert_eq!(a.abelianization, b.abelianization);
    }

    #[test]
    fn subdivided_pipeline() {
        let k = fixtures::pinched_torus();
        let r = perverse_pi1_subdivided(&k, &Perversity::zero(), None, 1, Pi1Options::default()).unwrap();
        assert_eq!(r.simplified, GroupPresentation::trivial());
    }
}
