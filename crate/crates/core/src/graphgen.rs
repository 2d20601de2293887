//! Iteration graphs `Γ(f)` and the search for functions whose graph is
//! strongly connected.
//!
//! An arc labelled `i` leaves `x` exactly when `f_i(x) != x_i`, i.e. when
//! `F_f(i, x) = N(i, x)`. Positions where `f` keeps component `i` are not
//! arcs; they only show up as stay probability in [`crate::markov`]. With
//! this reading `Γ(¬)` is the complete labelled hypercube with `n 2^n`
//! arcs and a graph determines its function uniquely.

use std::collections::HashMap;

use serde::Serialize;

use crate::bitcore::{check_components, check_index, component_mask};
use crate::{BooleanFunction, Error, Result, WordSource, Xorshift32};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IterationGraph {
    n: usize,
    /// `switches[x]` has the mask bit of component `i` set iff arc `(x, i)`
    /// is present.
    switches: Vec<u32>,
}

impl IterationGraph {
    pub fn from_function(f: &BooleanFunction) -> Self {
        Self {
            n: f.n(),
            switches: (0..f.size() as u32).map(|x| f.switching_mask(x)).collect(),
        }
    }

    /// `Γ(¬)`: every arc present.
    pub fn complete(n: usize) -> Result<Self> {
        check_components(n)?;
        let full = (1u32 << n) - 1;
        Ok(Self {
            n,
            switches: vec![full; 1 << n],
        })
    }

    pub fn empty(n: usize) -> Result<Self> {
        check_components(n)?;
        Ok(Self {
            n,
            switches: vec![0; 1 << n],
        })
    }

    /// Builds a graph from `(source, label)` pairs.
    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (u32, usize)>) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for (x, i) in arcs {
            g.insert_arc(x, i)?;
        }
        Ok(g)
    }

    /// The function whose iteration graph this is: `f_i(x) = ¬x_i` on arcs,
    /// `x_i` elsewhere.
    pub fn to_function(&self) -> BooleanFunction {
        let images = self
            .switches
            .iter()
            .enumerate()
            .map(|(x, &m)| x as u32 ^ m)
            .collect();
        BooleanFunction::new(self.n, images).expect("graph images are in range")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.switches.len()
    }

    pub fn arc_count(&self) -> usize {
        self.switches.iter().map(|m| m.count_ones() as usize).sum()
    }

    /// Arc count of `Γ(¬)`.
    pub fn max_arc_count(&self) -> usize {
        self.n << self.n
    }

    pub fn has_arc(&self, x: u32, label: usize) -> bool {
        label >= 1
            && label <= self.n
            && (x as usize) < self.switches.len()
            && self.switches[x as usize] & component_mask(self.n, label) != 0
    }

    pub fn insert_arc(&mut self, x: u32, label: usize) -> Result<()> {
        self.check_arc(x, label)?;
        self.switches[x as usize] |= component_mask(self.n, label);
        Ok(())
    }

    pub fn remove_arc(&mut self, x: u32, label: usize) -> Result<()> {
        self.check_arc(x, label)?;
        self.switches[x as usize] &= !component_mask(self.n, label);
        Ok(())
    }

    fn check_arc(&self, x: u32, label: usize) -> Result<()> {
        check_index(label, self.n)?;
        if (x as usize) < self.switches.len() {
            Ok(())
        } else {
            Err(Error::ConfigurationRange {
                value: x,
                n: self.n,
            })
        }
    }

    /// All arcs as `(source, label)`, by source then label.
    pub fn arcs(&self) -> impl Iterator<Item = (u32, usize)> + '_ {
        let n = self.n;
        self.switches.iter().enumerate().flat_map(move |(x, &m)| {
            (1..=n)
                .filter(move |&i| m & component_mask(n, i) != 0)
                .map(move |i| (x as u32, i))
        })
    }

    /// Targets `N(i, x)` of the arcs leaving `x`.
    pub fn successors(&self, x: u32) -> impl Iterator<Item = u32> {
        let m = self.switches[x as usize];
        (0..self.n as u32)
            .filter(move |b| m & (1 << b) != 0)
            .map(move |b| x ^ (1 << b))
    }

    pub fn out_degree(&self, x: u32) -> usize {
        self.switches[x as usize].count_ones() as usize
    }

    pub fn is_strongly_connected(&self) -> bool {
        is_strongly_connected(self)
    }

    /// The unlabelled digraph on `0..2^n`.
    pub fn to_digraph(&self) -> Digraph {
        Digraph::new(
            self.vertex_count(),
            (0..self.vertex_count() as u32)
                .flat_map(|x| self.successors(x).map(move |y| (x as usize, y as usize))),
        )
    }
}

/// Tarjan's algorithm, iterative. Components are emitted in reverse
/// topological order of the condensation.
pub fn strongly_connected_components<F, I>(vertex_count: usize, successors: F) -> Vec<Vec<usize>>
where
    F: Fn(usize) -> I,
    I: Iterator<Item = usize>,
{
    const UNVISITED: usize = usize::MAX;
    let mut index = vec![UNVISITED; vertex_count];
    let mut low = vec![0; vertex_count];
    let mut on_stack = vec![false; vertex_count];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut next_index = 0;
    let mut calls: Vec<(usize, I)> = Vec::new();

    for root in 0..vertex_count {
        if index[root] != UNVISITED {
            continue;
        }
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        calls.push((root, successors(root)));

        while let Some((v, iter)) = calls.last_mut() {
            let v = *v;
            match iter.next() {
                Some(w) if index[w] == UNVISITED => {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    calls.push((w, successors(w)));
                }
                Some(w) => {
                    if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                }
                None => {
                    calls.pop();
                    if let Some((parent, _)) = calls.last() {
                        low[*parent] = low[*parent].min(low[v]);
                    }
                    if low[v] == index[v] {
                        let mut component = Vec::new();
                        loop {
                            let w = stack.pop().expect("tarjan stack underflow");
                            on_stack[w] = false;
                            component.push(w);
                            if w == v {
                                break;
                            }
                        }
                        components.push(component);
                    }
                }
            }
        }
    }
    components
}

/// Whether every configuration reaches every other along arcs of `g`.
pub fn is_strongly_connected(g: &IterationGraph) -> bool {
    let components = strongly_connected_components(g.vertex_count(), |x| {
        g.successors(x as u32).map(|y| y as usize)
    });
    components.len() == 1
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GenerationParams {
    pub n: usize,
    /// Fraction of the `n 2^n` arcs of `Γ(¬)` to remove, in `[0, 1)`.
    pub target_rate: f64,
    /// Consecutive failed removals after which the search stops.
    pub max_attempts: usize,
    pub seed: u32,
}

impl GenerationParams {
    pub fn new(n: usize, target_rate: f64, max_attempts: usize, seed: u32) -> Result<Self> {
        let params = Self {
            n,
            target_rate,
            max_attempts,
            seed,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        check_components(self.n)?;
        if !(0.0..1.0).contains(&self.target_rate) {
            return Err(Error::parameter(format!(
                "target rate {} is outside [0, 1)",
                self.target_rate
            )));
        }
        if self.max_attempts == 0 {
            return Err(Error::parameter("max_attempts must be at least 1"));
        }
        if self.seed == 0 {
            return Err(Error::ZeroSeed);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratedFunction {
    pub function: BooleanFunction,
    pub removed: usize,
    /// `removed / (n 2^n)`.
    pub achieved_rate: f64,
    /// Set when the search stopped below the target rate.
    pub saturated: bool,
}

/// Removes random arcs from `Γ(¬)` while the graph stays strongly connected.
///
/// Each trial picks a present arc uniformly. A removal that would break
/// strong connectivity is undone and counts as a failure; such an arc can
/// never become removable later (removing arcs only loses paths), so it is
/// remembered and later picks of it fail without a recomputation. The search
/// ends when the target rate is reached, after `max_attempts` consecutive
/// failures, or when every remaining arc is needed.
pub fn generate_scc_function(params: &GenerationParams) -> Result<GeneratedFunction> {
    params.validate()?;
    let mut rng = Xorshift32::new(params.seed)?;
    let mut graph = IterationGraph::complete(params.n)?;
    let total = graph.max_arc_count();
    let goal = params.target_rate * total as f64;

    let mut present: Vec<(u32, usize)> = graph.arcs().collect();
    let mut required = vec![0u32; graph.vertex_count()];
    let mut required_count = 0;
    let mut removed = 0;
    let mut failures = 0;

    while (removed as f64) < goal
        && failures < params.max_attempts
        && required_count < present.len()
    {
        let pick = rng.below(present.len() as u32) as usize;
        let (x, label) = present[pick];
        let mask = component_mask(params.n, label);
        if required[x as usize] & mask != 0 {
            failures += 1;
            continue;
        }
        graph.remove_arc(x, label)?;
        if graph.is_strongly_connected() {
            present.swap_remove(pick);
            removed += 1;
            failures = 0;
        } else {
            graph.insert_arc(x, label)?;
            required[x as usize] |= mask;
            required_count += 1;
            failures += 1;
        }
    }

    debug_assert!(graph.is_strongly_connected());
    Ok(GeneratedFunction {
        function: graph.to_function(),
        removed,
        achieved_rate: removed as f64 / total as f64,
        saturated: (removed as f64) < goal,
    })
}

/// A plain directed graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(vertex_count: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut out = vec![Vec::new(); vertex_count];
        let mut inn = vec![Vec::new(); vertex_count];
        for (u, v) in arcs {
            out[u].push(v);
            inn[v].push(u);
        }
        for list in out.iter_mut().chain(inn.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        Self { out, inn }
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    pub fn successors(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    pub fn predecessors(&self, u: usize) -> &[usize] {
        &self.inn[u]
    }

    /// The image of the graph under the vertex map `u -> perm[u]`.
    pub fn permuted(&self, perm: &[usize]) -> Digraph {
        assert_eq!(perm.len(), self.vertex_count());
        Digraph::new(
            self.vertex_count(),
            self.out
                .iter()
                .enumerate()
                .flat_map(|(u, vs)| vs.iter().map(move |&v| (perm[u], perm[v]))),
        )
    }

    /// Sorted out-degree and in-degree sequences.
    pub fn degree_sequences(&self) -> (Vec<usize>, Vec<usize>) {
        let mut outs: Vec<usize> = self.out.iter().map(Vec::len).collect();
        let mut ins: Vec<usize> = self.inn.iter().map(Vec::len).collect();
        outs.sort_unstable();
        ins.sort_unstable();
        (outs, ins)
    }
}

/// Stable colour refinement run on both graphs with a shared palette, so
/// equal colours are comparable across graphs.
fn refine_colours(a: &Digraph, b: &Digraph) -> (Vec<usize>, Vec<usize>) {
    let initial = |g: &Digraph| -> Vec<(usize, usize, bool)> {
        (0..g.vertex_count())
            .map(|u| (g.out[u].len(), g.inn[u].len(), g.has_arc(u, u)))
            .collect()
    };
    let mut palette = HashMap::new();
    let intern = |key: Vec<usize>, palette: &mut HashMap<Vec<usize>, usize>| {
        let next = palette.len();
        *palette.entry(key).or_insert(next)
    };
    let mut ca: Vec<usize> = initial(a)
        .into_iter()
        .map(|(o, i, s)| intern(vec![o, i, s as usize], &mut palette))
        .collect();
    let mut cb: Vec<usize> = initial(b)
        .into_iter()
        .map(|(o, i, s)| intern(vec![o, i, s as usize], &mut palette))
        .collect();

    let mut classes = distinct(&ca, &cb);
    loop {
        palette.clear();
        let refine = |g: &Digraph, colours: &[usize], palette: &mut HashMap<Vec<usize>, usize>| {
            (0..g.vertex_count())
                .map(|u| {
                    let mut outs: Vec<usize> = g.out[u].iter().map(|&v| colours[v]).collect();
                    let mut ins: Vec<usize> = g.inn[u].iter().map(|&v| colours[v]).collect();
                    outs.sort_unstable();
                    ins.sort_unstable();
                    let mut key = Vec::with_capacity(outs.len() + ins.len() + 2);
                    key.push(colours[u]);
                    key.extend(outs);
                    key.push(usize::MAX);
                    key.extend(ins);
                    intern(key, palette)
                })
                .collect::<Vec<_>>()
        };
        let na = refine(a, &ca, &mut palette);
        let nb = refine(b, &cb, &mut palette);
        let refined = distinct(&na, &nb);
        ca = na;
        cb = nb;
        if refined == classes {
            break;
        }
        classes = refined;
    }
    (ca, cb)
}

fn distinct(a: &[usize], b: &[usize]) -> usize {
    let mut all: Vec<usize> = a.iter().chain(b).copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

/// A vertex bijection `p` with `u -> v` in `a` iff `p(u) -> p(v)` in `b`,
/// found by backtracking over colour-compatible candidates.
pub fn find_isomorphism(a: &Digraph, b: &Digraph) -> Option<Vec<usize>> {
    let size = a.vertex_count();
    if size != b.vertex_count() || a.arc_count() != b.arc_count() {
        return None;
    }
    if a.degree_sequences() != b.degree_sequences() {
        return None;
    }
    let (colour_a, colour_b) = refine_colours(a, b);
    let mut hist_a = colour_a.clone();
    let mut hist_b = colour_b.clone();
    hist_a.sort_unstable();
    hist_b.sort_unstable();
    if hist_a != hist_b {
        return None;
    }
    if size == 0 {
        return Some(Vec::new());
    }

    let mut members: HashMap<usize, Vec<usize>> = HashMap::new();
    for (v, &c) in colour_b.iter().enumerate() {
        members.entry(c).or_default().push(v);
    }
    let order = search_order(a, &colour_a, &members);

    const NONE: usize = usize::MAX;
    let mut map = vec![NONE; size];
    let mut used = vec![false; size];
    let mut cursor = vec![0usize; size];
    let mut depth = 0;

    let feasible = |u: usize, v: usize, map: &[usize], used: &[bool]| -> bool {
        if a.has_arc(u, u) != b.has_arc(v, v) {
            return false;
        }
        let mut mapped_out = 0;
        for &w in a.successors(u) {
            if w != u && map[w] != NONE {
                if !b.has_arc(v, map[w]) {
                    return false;
                }
                mapped_out += 1;
            }
        }
        let used_out = b
            .successors(v)
            .iter()
            .filter(|&&x| x != v && used[x])
            .count();
        if mapped_out != used_out {
            return false;
        }
        let mut mapped_in = 0;
        for &w in a.predecessors(u) {
            if w != u && map[w] != NONE {
                if !b.has_arc(map[w], v) {
                    return false;
                }
                mapped_in += 1;
            }
        }
        let used_in = b
            .predecessors(v)
            .iter()
            .filter(|&&x| x != v && used[x])
            .count();
        mapped_in == used_in
    };

    loop {
        if depth == size {
            return Some(map);
        }
        let u = order[depth];
        if map[u] != NONE {
            used[map[u]] = false;
            map[u] = NONE;
        }
        let candidates = &members[&colour_a[u]];
        let mut placed = false;
        while cursor[depth] < candidates.len() {
            let v = candidates[cursor[depth]];
            cursor[depth] += 1;
            if !used[v] && feasible(u, v, &map, &used) {
                map[u] = v;
                used[v] = true;
                placed = true;
                break;
            }
        }
        if placed {
            depth += 1;
            if depth < size {
                cursor[depth] = 0;
            }
        } else {
            cursor[depth] = 0;
            if depth == 0 {
                return None;
            }
            depth -= 1;
        }
    }
}

/// Rarest colour first, then vertices most connected to those already placed.
fn search_order(a: &Digraph, colour: &[usize], members: &HashMap<usize, Vec<usize>>) -> Vec<usize> {
    let size = a.vertex_count();
    let mut placed = vec![false; size];
    let mut links = vec![0usize; size];
    let mut order = Vec::with_capacity(size);
    for _ in 0..size {
        let next = (0..size)
            .filter(|&u| !placed[u])
            .min_by_key(|&u| (std::cmp::Reverse(links[u]), members[&colour[u]].len(), u))
            .expect("unplaced vertex remains");
        placed[next] = true;
        order.push(next);
        for &w in a.successors(next).iter().chain(a.predecessors(next)) {
            links[w] += 1;
        }
    }
    order
}

/// Isomorphism of the unlabelled iteration graphs.
pub fn are_isomorphic(g1: &IterationGraph, g2: &IterationGraph) -> bool {
    g1.vertex_count() == g2.vertex_count()
        && find_isomorphism(&g1.to_digraph(), &g2.to_digraph()).is_some()
}

/// One representative per isomorphism class of iteration graphs, in
/// first-seen order.
pub fn dedup_functions(functions: &[BooleanFunction]) -> Result<Vec<BooleanFunction>> {
    if let Some(first) = functions.first() {
        if let Some(other) = functions.iter().find(|f| f.n() != first.n()) {
            return Err(Error::ComponentMismatch {
                left: first.n(),
                right: other.n(),
            });
        }
    }
    let mut kept: Vec<(BooleanFunction, Digraph)> = Vec::new();
    for f in functions {
        let g = IterationGraph::from_function(f).to_digraph();
        if !kept.iter().any(|(_, h)| find_isomorphism(h, &g).is_some()) {
            kept.push((f.clone(), g));
        }
    }
    Ok(kept.into_iter().map(|(f, _)| f).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn fig1() -> BooleanFunction {
        catalog::fig1()
    }

    #[test]
    fn negation_graph_is_complete() {
        let g = IterationGraph::from_function(&BooleanFunction::negation(4).unwrap());
        assert_eq!(g.arc_count(), 64);
        assert_eq!(g, IterationGraph::complete(4).unwrap());
        for n in 2..=5 {
            let g = IterationGraph::from_function(&BooleanFunction::negation(n).unwrap());
            assert!(g.is_strongly_connected());
        }
    }

    #[test]
    fn identity_graph_is_empty_and_not_connected() {
        let g = IterationGraph::from_function(&BooleanFunction::identity(4).unwrap());
        assert_eq!(g.arc_count(), 0);
        assert!(!g.is_strongly_connected());
        assert_eq!(
            g.to_function().images(),
            BooleanFunction::identity(4).unwrap().images()
        );
    }

    #[test]
    fn fig1_graph() {
        let g = IterationGraph::from_function(&fig1());
        // f = [1,3,0,2]: 00 -> 01 (label 2), 01 -> 11 (label 1),
        // 10 -> 00 (label 1), 11 -> 10 (label 2)
        let arcs: Vec<_> = g.arcs().collect();
        assert_eq!(arcs, vec![(0, 2), (1, 1), (2, 1), (3, 2)]);
        assert!(g.is_strongly_connected());
    }

    #[test]
    fn arc_count_is_total_hamming_distance() {
        for f in catalog::reference_functions() {
            let g = IterationGraph::from_function(&f);
            let hamming: u32 = (0..16).map(|x| (f.image(x) ^ x).count_ones()).sum();
            assert_eq!(g.arc_count(), hamming as usize);
            assert_eq!(g.to_function().images(), f.images());
            assert!(g.is_strongly_connected(), "{:?}", f.name());
        }
    }

    #[test]
    fn arc_editing() {
        let mut g = IterationGraph::empty(3).unwrap();
        g.insert_arc(5, 2).unwrap();
        assert!(g.has_arc(5, 2));
        assert_eq!(g.successors(5).collect::<Vec<_>>(), vec![7]);
        assert_eq!(g.to_function().image(5), 7);
        g.remove_arc(5, 2).unwrap();
        assert_eq!(g.arc_count(), 0);
        assert!(g.insert_arc(8, 1).is_err());
        assert!(g.insert_arc(0, 4).is_err());
    }

    #[test]
    fn tarjan_components_on_small_digraph() {
        // 0 <-> 1 -> 2 <-> 3, 4 isolated
        let adj = [vec![1], vec![0, 2], vec![3], vec![2], vec![]];
        let mut comps = strongly_connected_components(5, |u| adj[u].iter().copied());
        for c in &mut comps {
            c.sort_unstable();
        }
        comps.sort();
        assert_eq!(comps, vec![vec![0, 1], vec![2, 3], vec![4]]);
    }

    #[test]
    fn generation_with_zero_rate_returns_negation() {
        let params = GenerationParams::new(4, 0.0, 100, 1).unwrap();
        let out = generate_scc_function(&params).unwrap();
        assert_eq!(
            out.function.images(),
            BooleanFunction::negation(4).unwrap().images()
        );
        assert_eq!(out.achieved_rate, 0.0);
        assert!(!out.saturated);
    }

    #[test]
    fn generation_reaches_half_rate() {
        for seed in 1..=5 {
            let params = GenerationParams::new(4, 0.5, 1000, seed).unwrap();
            let out = generate_scc_function(&params).unwrap();
            assert!(out.achieved_rate >= 0.5);
            assert!(!out.saturated);
            assert!(IterationGraph::from_function(&out.function).is_strongly_connected());
        }
    }

    #[test]
    fn generation_saturates_below_out_degree_bound() {
        let params = GenerationParams::new(4, 0.95, 10_000, 3).unwrap();
        let out = generate_scc_function(&params).unwrap();
        assert!(out.saturated);
        assert!(out.achieved_rate <= 0.75);
        assert!(out.removed <= 48);
        assert!(IterationGraph::from_function(&out.function).is_strongly_connected());
    }

    #[test]
    fn generation_params_are_validated() {
        assert!(GenerationParams::new(4, 1.0, 10, 1).is_err());
        assert!(GenerationParams::new(4, -0.1, 10, 1).is_err());
        assert!(GenerationParams::new(4, 0.1, 0, 1).is_err());
        assert!(GenerationParams::new(4, 0.1, 10, 0).is_err());
        assert!(GenerationParams::new(1, 0.1, 10, 1).is_err());
    }

    #[test]
    fn generation_is_deterministic() {
        let params = GenerationParams::new(4, 0.3, 100, 99).unwrap();
        assert_eq!(
            generate_scc_function(&params).unwrap(),
            generate_scc_function(&params).unwrap()
        );
    }

    #[test]
    fn isomorphism_basics() {
        let b = IterationGraph::from_function(&catalog::by_name("b").unwrap());
        let c = IterationGraph::from_function(&catalog::by_name("c").unwrap());
        assert!(are_isomorphic(&b, &b));
        assert_eq!(b.arc_count(), 62);
        assert_eq!(c.arc_count(), 61);
        assert!(!are_isomorphic(&b, &c));
        let small = IterationGraph::from_function(&fig1());
        assert!(!are_isomorphic(&b, &small));
    }

    #[test]
    fn permuted_digraph_is_isomorphic() {
        let g = IterationGraph::from_function(&catalog::by_name("h").unwrap()).to_digraph();
        let perm = vec![3, 14, 7, 0, 9, 12, 1, 5, 15, 2, 11, 8, 4, 13, 6, 10];
        let p = g.permuted(&perm);
        let found = find_isomorphism(&g, &p).expect("isomorphic by construction");
        for u in 0..16 {
            for v in 0..16 {
                assert_eq!(g.has_arc(u, v), p.has_arc(found[u], found[v]));
            }
        }
    }

    #[test]
    fn non_isomorphic_with_equal_degrees() {
        // directed 6-cycle vs two directed 3-cycles
        let cycle = Digraph::new(6, (0..6).map(|u| (u, (u + 1) % 6)));
        let two = Digraph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert_eq!(cycle.degree_sequences(), two.degree_sequences());
        assert!(find_isomorphism(&cycle, &two).is_none());
        // a cycle and its reversal are isomorphic
        let reversed = Digraph::new(6, (0..6).map(|u| ((u + 1) % 6, u)));
        assert!(find_isomorphism(&cycle, &reversed).is_some());
    }

    #[test]
    fn dedup_examples() {
        let neg = BooleanFunction::negation(4).unwrap();
        assert_eq!(
            dedup_functions(&[neg.clone(), neg.clone()]).unwrap().len(),
            1
        );
        let table = catalog::reference_functions();
        let reps = dedup_functions(&table).unwrap();
        assert_eq!(reps.len(), 9);
        assert_eq!(reps, table);
        assert!(matches!(
            dedup_functions(&[neg, fig1()]),
            Err(Error::ComponentMismatch { left: 4, right: 2 })
        ));
        assert!(dedup_functions(&[]).unwrap().is_empty());
    }
}
