use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::presentation::GroupPresentation;
use crate::error::{Error, Result};

/// A finite group given by permutation generators, expanded into a
/// multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteGroupTarget {
    pub name: String,
    degree: usize,
    /// Elements as permutations (image lists); element 0 is the identity.
    elements: Vec<Vec<usize>>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    // (a·b)(i) = a(b(i)): apply b first
    b.iter().map(|&i| a[i]).collect()
}

impl FiniteGroupTarget {
    /// The group generated by the given permutations of `0..degree`.
    pub fn from_permutations(name: impl Into<String>, degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        for g in generators {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&i| i >= degree || std::mem::replace(&mut seen[i], true)) {
                return Err(Error::malformed(format!("{g:?} is not a permutation of {degree} points")));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elements = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0]);
        while let Some(e) = queue.pop_front() {
            for g in generators {
                let h = compose(&elements[e], g);
                if !index.contains_key(&h) {
                    index.insert(h.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(h);
                }
            }
        }
        let n = elements.len();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| index[&compose(&elements[a], &elements[b])]).collect())
            .collect();
        let inverse = (0..n).map(|a| (0..n).find(|&b| table[a][b] == 0).unwrap()).collect();
        Ok(FiniteGroupTarget { name: name.into(), degree, elements, table, inverse })
    }

    pub fn alternating5() -> Self {
        Self::from_permutations("A5", 5, &[vec![1, 2, 3, 4, 0], vec![1, 2, 0, 3, 4]]).unwrap()
    }

    pub fn symmetric3() -> Self {
        Self::from_permutations("S3", 3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        let gen: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        Self::from_permutations(format!("Z{n}"), n, &[gen]).unwrap()
    }

    /// Targets accepted on the command line: `A5`, `S3`, `Z<n>`.
    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "A5" | "a5" => Ok(Self::alternating5()),
            "S3" | "s3" => Ok(Self::symmetric3()),
            _ => match name.strip_prefix(['Z', 'z']).and_then(|n| n.parse::<usize>().ok()) {
                Some(n) if n >= 1 => Ok(Self::cyclic(n)),
                _ => Err(Error::malformed(format!("unknown target group {name:?}"))),
            },
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn element(&self, i: usize) -> &[usize] {
        &self.elements[i]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Order of the subgroup generated by the given elements.
    pub fn generated_order(&self, gens: &[usize]) -> usize {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        let mut count = 1;
        while let Some(e) = queue.pop_front() {
            for &g in gens {
                let h = self.mul(e, g);
                if !seen[h] {
                    seen[h] = true;
                    count += 1;
                    queue.push_back(h);
                }
            }
        }
        count
    }

    fn eval(&self, word: &[i64], images: &[usize]) -> usize {
        word.iter().fold(0, |acc, &x| {
            let g = images[x.unsigned_abs() as usize - 1];
            self.mul(acc, if x > 0 { g } else { self.inv(g) })
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Complete,
    /// The node budget ran out; the list may be incomplete.
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomomorphismSearch {
    pub target: String,
    pub status: SearchStatus,
    pub surjective_only: bool,
    /// Each homomorphism as the permutation image of every generator.
    pub homomorphisms: Vec<Vec<Vec<usize>>>,
    pub count: usize,
    pub nodes: u64,
}

/// Enumerates homomorphisms `G → target` by backtracking over generator
/// images. A relator is checked as soon as all of its generators have
/// images; every result is re-verified against every relator.
///
/// At most `budget` partial assignments are explored.
pub fn find_homomorphisms(
    g: &GroupPresentation,
    target: &FiniteGroupTarget,
    surjective_only: bool,
    budget: u64,
) -> HomomorphismSearch {
    let n = g.generators;
    // relators grouped by the largest generator they mention
    let mut due: Vec<Vec<&Vec<i64>>> = vec![Vec::new(); n + 1];
    for r in &g.relators {
        let m = r.iter().map(|x| x.unsigned_abs() as usize).max().unwrap_or(0);
        due[m].push(r);
    }
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut nodes = 0u64;
    let mut images = vec![0usize; n];
    let complete = if due[0].iter().any(|r| target.eval(r, &images) != 0) {
        true
    } else {
        search(target, &due, &mut images, 0, surjective_only, budget, &mut nodes, &mut found)
    };
    for h in &found {
        assert!(g.relators.iter().all(|r| target.eval(r, h) == 0), "homomorphism violates a relator");
    }
    HomomorphismSearch {
        target: target.name.clone(),
        status: if complete { SearchStatus::Complete } else { SearchStatus::Inconclusive },
        surjective_only,
        count: found.len(),
        homomorphisms: found
            .iter()
            .map(|h| h.iter().map(|&e| target.element(e).to_vec()).collect())
            .collect(),
        nodes,
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    t: &FiniteGroupTarget,
    due: &[Vec<&Vec<i64>>],
    images: &mut Vec<usize>,
    depth: usize,
    surjective_only: bool,
    budget: u64,
    nodes: &mut u64,
    found: &mut Vec<Vec<usize>>,
) -> bool {
    if depth == images.len() {
        if !surjective_only || t.generated_order(images) == t.order() {
            found.push(images.clone());
        }
        return true;
    }
    for e in 0..t.order() {
        *nodes += 1;
        if *nodes > budget {
            return false;
        }
        images[depth] = e;
        if due[depth + 1].iter().all(|r| t.eval(r, images) == 0)
            && !search(t, due, images, depth + 1, surjective_only, budget, nodes, found)
        {
            return false;
        }
    }
    true
}
