//! Associated digraphs, maximum cycle means and critical structure.
//!
//! Nodes are 0-based throughout the library; reports render them 1-based.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};

use num_integer::Integer;
use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::attraction::kleene_star;
use crate::error::{Error, Result};
use crate::matrix::MaxMatrix;
use crate::scalar::{gcd_all, lcm_all, Scalar};

/// Largest dimension for which critical edges may be found by enumerating
/// simple cycles (needed only when the maximum cycle mean is irrational).
pub const CYCLE_ENUMERATION_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    node_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

/// Components of a completely reducible digraph with their cyclic classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicStructure {
    /// Node sets of the nontrivial strongly connected components, each
    /// sorted, ordered by smallest node.
    pub components: Vec<Vec<usize>>,
    /// Per component, the cyclic classes ordered so that every edge leads
    /// from class `r` to class `r + 1 (mod σ)`, starting with the class of
    /// the component's smallest node.
    pub cyclic_classes: Vec<Vec<Vec<usize>>>,
    pub cyclicities: Vec<usize>,
}

impl CyclicStructure {
    pub fn global_cyclicity(&self) -> usize {
        lcm_all(self.cyclicities.iter().copied())
    }
}

impl Digraph {
    pub fn new<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let edges: BTreeSet<(usize, usize)> = edges.into_iter().collect();
        for &(i, j) in &edges {
            let bad = i.max(j);
            if bad >= node_count {
                return Err(Error::IndexOutOfRange {
                    index: bad,
                    n: node_count,
                });
            }
        }
        Ok(Digraph { node_count, edges })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i, j))
    }

    /// Beginning and end nodes of edges.
    pub fn active_nodes(&self) -> BTreeSet<usize> {
        self.edges.iter().flat_map(|&(i, j)| [i, j]).collect()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.node_count];
        for &(i, j) in &self.edges {
            adj[i].push(j);
        }
        adj
    }

    /// Strongly connected components over all nodes, each sorted and the
    /// list ordered by smallest node.
    pub fn strongly_connected_components(&self) -> Vec<Vec<usize>> {
        let mut g = DiGraph::<(), ()>::with_capacity(self.node_count, self.edges.len());
        for _ in 0..self.node_count {
            g.add_node(());
        }
        for &(i, j) in &self.edges {
            g.add_edge(NodeIndex::new(i), NodeIndex::new(j), ());
        }
        let mut out: Vec<Vec<usize>> = tarjan_scc(&g)
            .into_iter()
            .map(|c| {
                let mut c: Vec<usize> = c.into_iter().map(NodeIndex::index).collect();
                c.sort_unstable();
                c
            })
            .collect();
        out.sort_by_key(|c| c[0]);
        out
    }

    fn component_ids(&self) -> Vec<usize> {
        let mut id = vec![0; self.node_count];
        for (c, comp) in self.strongly_connected_components().iter().enumerate() {
            for &v in comp {
                id[v] = c;
            }
        }
        id
    }

    /// Every edge lies on a cycle, i.e. both endpoints share a strongly
    /// connected component.
    pub fn is_completely_reducible(&self) -> bool {
        let id = self.component_ids();
        self.edges.iter().all(|&(i, j)| id[i] == id[j])
    }

    /// Components, cyclicities and cyclic classes. Only defined for
    /// completely reducible digraphs with at least one edge.
    pub fn cyclic_structure(&self) -> Result<CyclicStructure> {
        if self.edges.is_empty() {
            return Err(Error::CyclicityUndefined("digraph has no cycles".into()));
        }
        if !self.is_completely_reducible() {
            return Err(Error::CyclicityUndefined(
                "digraph is not completely reducible".into(),
            ));
        }
        let active = self.active_nodes();
        let adj = self.adjacency();
        let mut components = Vec::new();
        let mut classes = Vec::new();
        let mut cyclicities = Vec::new();
        for comp in self.strongly_connected_components() {
            if !active.contains(&comp[0]) {
                continue;
            }
            let (sigma, level) = component_cyclicity(&comp, &adj);
            let mut cls = vec![Vec::new(); sigma];
            for &v in &comp {
                cls[level[&v] % sigma].push(v);
            }
            components.push(comp);
            classes.push(cls);
            cyclicities.push(sigma);
        }
        Ok(CyclicStructure {
            components,
            cyclic_classes: classes,
            cyclicities,
        })
    }

    /// Cyclicity: lcm over components of the gcd of their cycle lengths.
    pub fn cyclicity(&self) -> Result<usize> {
        Ok(self.cyclic_structure()?.global_cyclicity())
    }

    /// All simple cycles, each listed from its smallest node. Returns `None`
    /// when more than `limit` cycles exist.
    pub fn simple_cycles(&self, limit: usize) -> Option<Vec<Vec<usize>>> {
        let adj = self.adjacency();
        let mut out = Vec::new();
        let mut path = Vec::new();
        let mut on_path = vec![false; self.node_count];
        for start in 0..self.node_count {
            path.push(start);
            on_path[start] = true;
            if !extend_cycles(start, start, &adj, &mut path, &mut on_path, &mut out, limit) {
                return None;
            }
            path.pop();
            on_path[start] = false;
        }
        Some(out)
    }
}

fn extend_cycles(
    start: usize,
    v: usize,
    adj: &[Vec<usize>],
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) -> bool {
    for &w in &adj[v] {
        if w == start {
            if out.len() >= limit {
                return false;
            }
            out.push(path.clone());
        } else if w > start && !on_path[w] {
            path.push(w);
            on_path[w] = true;
            let ok = extend_cycles(start, w, adj, path, on_path, out, limit);
            path.pop();
            on_path[w] = false;
            if !ok {
                return false;
            }
        }
    }
    true
}

/// BFS levels from the smallest node; the cyclicity is the gcd of
/// `level(u) + 1 - level(v)` over the component's edges.
fn component_cyclicity(
    comp: &[usize],
    adj: &[Vec<usize>],
) -> (usize, std::collections::BTreeMap<usize, usize>) {
    let members: BTreeSet<usize> = comp.iter().copied().collect();
    let mut level = std::collections::BTreeMap::new();
    let root = comp[0];
    level.insert(root, 0usize);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let lu = level[&u];
        for &w in &adj[u] {
            if members.contains(&w) && !level.contains_key(&w) {
                level.insert(w, lu + 1);
                queue.push_back(w);
            }
        }
    }
    let mut g = 0usize;
    for &u in comp {
        for &w in &adj[u] {
            if members.contains(&w) {
                let diff = (level[&u] as i64 + 1 - level[&w] as i64).unsigned_abs() as usize;
                g = g.gcd(&diff);
            }
        }
    }
    (g.max(1), level)
}

/// `D(A)`: edge `(i, j)` iff `A[i, j] > 0`.
pub fn associated_digraph(a: &MaxMatrix) -> Digraph {
    let n = a.dim();
    let edges = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !a.get(i, j).is_zero());
    Digraph::new(n, edges).expect("indices in range")
}

/// `D(A, h)`: edges with `A[i, j] ≥ h`. Requires `h > 0`.
pub fn threshold_digraph(a: &MaxMatrix, h: &Scalar) -> Digraph {
    assert!(!h.is_zero(), "threshold must be positive");
    let n = a.dim();
    let edges = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| a.get(i, j) >= h);
    Digraph::new(n, edges).expect("indices in range")
}

pub fn is_completely_reducible(g: &Digraph) -> bool {
    g.is_completely_reducible()
}

/// Compare geometric means `w1^(1/l1)` and `w2^(1/l2)` without roots.
pub fn cmp_geometric_means(w1: &Scalar, l1: usize, w2: &Scalar, l2: usize) -> Ordering {
    w1.pow(l2 as u32).cmp(&w2.pow(l1 as u32))
}

/// A cycle geometric mean kept as `weight^(1/length)` together with a cycle
/// attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleMean {
    weight: Scalar,
    length: usize,
    witness: Vec<usize>,
}

impl CycleMean {
    pub fn weight(&self) -> &Scalar {
        &self.weight
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Witness cycle as a node sequence `(i_1, …, i_k)`; the closing edge is
    /// `(i_k, i_1)`.
    pub fn witness_cycle(&self) -> &[usize] {
        &self.witness
    }

    /// The mean as a rational, when the root is exact.
    pub fn value(&self) -> Option<Scalar> {
        self.weight.exact_root(self.length as u32)
    }

    pub fn cmp_mean(&self, other: &CycleMean) -> Ordering {
        cmp_geometric_means(&self.weight, self.length, &other.weight, other.length)
    }

    pub fn cmp_scalar(&self, s: &Scalar) -> Ordering {
        self.weight.cmp(&s.pow(self.length as u32))
    }
}

fn cycle_weight(a: &MaxMatrix, cycle: &[usize]) -> Scalar {
    let k = cycle.len();
    let mut w = Scalar::one();
    for t in 0..k {
        w = &w * a.get(cycle[t], cycle[(t + 1) % k]);
    }
    w
}

/// Maximum cycle geometric mean by Karp's recurrence in multiplicative form.
/// `None` when `D(A)` is acyclic.
pub fn max_cycle_mean(a: &MaxMatrix) -> Option<CycleMean> {
    let n = a.dim();
    // best[k][v]: greatest weight of a walk with k edges ending at v.
    let mut best = vec![vec![Scalar::one(); n]];
    let mut pred: Vec<Vec<Option<usize>>> = vec![vec![None; n]];
    for k in 1..=n {
        let mut row = vec![Scalar::zero(); n];
        let mut prow = vec![None; n];
        for (u, du) in best[k - 1].iter().enumerate() {
            if du.is_zero() {
                continue;
            }
            for v in 0..n {
                let w = a.get(u, v);
                if w.is_zero() {
                    continue;
                }
                let cand = du * w;
                if cand > row[v] {
                    row[v] = cand;
                    prow[v] = Some(u);
                }
            }
        }
        best.push(row);
        pred.push(prow);
    }

    // Outer maximum over v of the inner minimum over k, as (ratio, length).
    let mut top: Option<(Scalar, usize, usize)> = None;
    for (v, last) in best[n].iter().enumerate() {
        if last.is_zero() {
            continue;
        }
        let mut inner: Option<(Scalar, usize)> = None;
        for (k, walks) in best[..n].iter().enumerate() {
            if walks[v].is_zero() {
                continue;
            }
            let r = last / &walks[v];
            let len = n - k;
            let better = match &inner {
                None => true,
                Some((w, l)) => cmp_geometric_means(&r, len, w, *l) == Ordering::Less,
            };
            if better {
                inner = Some((r, len));
            }
        }
        let (r, len) = inner.expect("k = 0 always qualifies");
        let better = match &top {
            None => true,
            Some((w, l, _)) => cmp_geometric_means(&r, len, w, *l) == Ordering::Greater,
        };
        if better {
            top = Some((r, len, v));
        }
    }
    let (ratio, len, vstar) = top?;

    // Every simple cycle on the optimal n-edge walk into v* is critical.
    let mut walk = vec![vstar];
    let mut cur = vstar;
    for k in (1..=n).rev() {
        cur = pred[k][cur].expect("walk predecessor");
        walk.push(cur);
    }
    walk.reverse();
    let mut candidate: Option<CycleMean> = None;
    let mut last_seen = vec![usize::MAX; n];
    for (pos, &v) in walk.iter().enumerate() {
        if last_seen[v] != usize::MAX {
            let cycle = walk[last_seen[v]..pos].to_vec();
            let cm = CycleMean {
                weight: cycle_weight(a, &cycle),
                length: cycle.len(),
                witness: cycle,
            };
            if candidate.as_ref().is_none_or(|c| cm.cmp_mean(c) == Ordering::Greater) {
                candidate = Some(cm);
            }
        }
        last_seen[v] = pos;
    }
    let cm = candidate.expect("an n-edge walk repeats a node");
    assert_eq!(
        cmp_geometric_means(&cm.weight, cm.length, &ratio, len),
        Ordering::Equal,
        "witness cycle must attain the maximum cycle mean"
    );
    Some(normalize_witness(cm))
}

/// Rotate the witness to start at its smallest node.
fn normalize_witness(mut cm: CycleMean) -> CycleMean {
    if let Some(pos) = cm.witness.iter().enumerate().min_by_key(|(_, v)| **v).map(|(p, _)| p) {
        cm.witness.rotate_left(pos);
    }
    cm
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalStructure {
    pub lambda: CycleMean,
    pub critical_nodes: BTreeSet<usize>,
    pub critical_edges: BTreeSet<(usize, usize)>,
    pub components: Vec<Vec<usize>>,
    pub cyclic_classes: Vec<Vec<Vec<usize>>>,
    pub cyclicity_per_component: Vec<usize>,
    pub global_cyclicity: usize,
}

impl CriticalStructure {
    pub fn critical_digraph(&self, n: usize) -> Digraph {
        Digraph::new(n, self.critical_edges.iter().copied()).expect("indices in range")
    }
}

/// Critical digraph `crit(A)` with its components and cyclic classes.
///
/// With rational `λ`, edge `(i, j)` is critical iff
/// `(A/λ)[i, j] · ((A/λ)^*)[j, i] = 1`. With irrational `λ` the simple cycles
/// attaining `λ` are enumerated instead, which is limited to
/// [`CYCLE_ENUMERATION_LIMIT`] nodes.
pub fn critical_structure(a: &MaxMatrix) -> Result<CriticalStructure> {
    let lambda = max_cycle_mean(a).ok_or(Error::NoCriticalStructure)?;
    let n = a.dim();
    let mut edges = BTreeSet::new();
    match lambda.value() {
        Some(l) => {
            let normalized = a.div_scalar(&l)?;
            let star = kleene_star(&normalized)?;
            for i in 0..n {
                for j in 0..n {
                    let w = normalized.get(i, j);
                    if !w.is_zero() && (w * star.get(j, i)).is_one() {
                        edges.insert((i, j));
                    }
                }
            }
        }
        None => {
            if n > CYCLE_ENUMERATION_LIMIT {
                return Err(Error::IrrationalCycleMean(n));
            }
            let cycles = associated_digraph(a)
                .simple_cycles(usize::MAX)
                .expect("unbounded enumeration");
            for c in cycles {
                let w = cycle_weight(a, &c);
                if cmp_geometric_means(&w, c.len(), lambda.weight(), lambda.length())
                    == Ordering::Equal
                {
                    for t in 0..c.len() {
                        edges.insert((c[t], c[(t + 1) % c.len()]));
                    }
                }
            }
        }
    }
    let crit = Digraph::new(n, edges.iter().copied())?;
    let cs = crit.cyclic_structure().map_err(|e| {
        Error::InternalAssertion(format!("critical digraph must be completely reducible: {e}"))
    })?;
    Ok(CriticalStructure {
        lambda,
        critical_nodes: crit.active_nodes(),
        critical_edges: edges,
        global_cyclicity: cs.global_cyclicity(),
        components: cs.components,
        cyclic_classes: cs.cyclic_classes,
        cyclicity_per_component: cs.cyclicities,
    })
}

/// Whether `p_1 x_1 + … + p_s x_s ≡ m (mod n)` has a solution in natural
/// numbers, i.e. whether `gcd(p_1, …, p_s, n)` divides `m`. An empty `ps`
/// leaves `gcd(n)`.
pub fn solvable_congruence(ps: &[usize], n: usize, m: i64) -> bool {
    assert!(n >= 1, "modulus must be positive");
    assert!(ps.iter().all(|&p| p >= 1), "coefficients must be positive");
    let g = gcd_all(ps.iter().copied().chain([n])) as i64;
    m.rem_euclid(g) == 0
}
