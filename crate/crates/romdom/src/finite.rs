//! Exact Roman domination on finite simple graphs.
//!
//! Two solvers: a pruned exhaustive search for arbitrary graphs up to
//! [`BRUTE_FORCE_CAP`] vertices, and a transfer DP for paths and cycles of
//! any size. `rdn` routes automatically so normalized values for huge
//! cycles stay cheap.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

pub const BRUTE_FORCE_CAP: usize = 16;

#[derive(Clone, Debug)]
pub struct FiniteGraph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl FiniteGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "graph needs at least one vertex".into(),
            ));
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut adj = vec![Vec::new(); n];
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v {
                return Err(Error::InvalidParameter(format!("loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate edge ({}, {})",
                    e.0, e.1
                )));
            }
            adj[u].push(v);
            adj[v].push(u);
            normalized.push(e);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        normalized.sort_unstable();
        Ok(FiniteGraph {
            n,
            adj,
            edges: normalized,
        })
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "a cycle needs at least 3 vertices, got {n}"
            )));
        }
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((0, n - 1));
        Self::new(n, &edges)
    }

    /// Parses the plain text format: a header line `n m`, then m lines
    /// `u v` with 0 ≤ u < v < n. Blank lines and lines starting with `#`
    /// are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let fail = |line: usize, msg: String| Error::GraphParse { line, msg };
        let mut data = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = data
            .next()
            .ok_or_else(|| fail(1, "missing `n m` header".into()))?;
        let mut it = header.split_whitespace();
        let parse_num = |tok: Option<&str>, line: usize, what: &str| -> Result<usize> {
            let tok = tok.ok_or_else(|| fail(line, format!("missing {what}")))?;
            tok.parse()
                .map_err(|_| fail(line, format!("bad {what} {tok:?}")))
        };
        let n = parse_num(it.next(), hline, "vertex count")?;
        let m = parse_num(it.next(), hline, "edge count")?;
        if let Some(extra) = it.next() {
            return Err(fail(hline, format!("unexpected token {extra:?} after `n m`")));
        }
        if n == 0 {
            return Err(fail(hline, "graph needs at least one vertex".into()));
        }
        let mut edges = Vec::with_capacity(m);
        let mut seen = std::collections::BTreeSet::new();
        let mut last_line = hline;
        for (line, text) in data {
            if edges.len() == m {
                return Err(fail(
                    line,
                    format!("unexpected extra line after {m} edges"),
                ));
            }
            let mut it = text.split_whitespace();
            let u = parse_num(it.next(), line, "edge endpoint")?;
            let v = parse_num(it.next(), line, "edge endpoint")?;
            if let Some(extra) = it.next() {
                return Err(fail(line, format!("unexpected token {extra:?} after edge")));
            }
            if u >= v {
                return Err(fail(line, format!("edge must satisfy u < v, got {u} {v}")));
            }
            if v >= n {
                return Err(fail(line, format!("vertex {v} out of range for n = {n}")));
            }
            if !seen.insert((u, v)) {
                return Err(fail(line, format!("duplicate edge ({u}, {v})")));
            }
            edges.push((u, v));
            last_line = line;
        }
        if edges.len() < m {
            return Err(fail(
                last_line,
                format!("expected {m} edges, found {}", edges.len()),
            ));
        }
        Self::new(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_valid_rdf(&self, f: &FiniteRdf) -> Result<bool> {
        let labels = f.labels();
        if labels.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "labeling has {} entries for a graph on {} vertices",
                labels.len(),
                self.n
            )));
        }
        Ok((0..self.n).all(|v| {
            labels[v] != 0 || self.adj[v].iter().any(|&w| labels[w] == 2)
        }))
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Some(kind) when the graph is exactly a path or cycle.
    pub fn classify_path_or_cycle(&self) -> Option<PathOrCycle> {
        if !self.is_connected() {
            return None;
        }
        let mut deg1 = 0;
        let mut deg2 = 0;
        for v in 0..self.n {
            match self.degree(v) {
                1 => deg1 += 1,
                2 => deg2 += 1,
                0 if self.n == 1 => return Some(PathOrCycle::Path),
                _ => return None,
            }
        }
        if deg1 == 0 && deg2 == self.n && self.n >= 3 {
            Some(PathOrCycle::Cycle)
        } else if deg1 == 2 && deg2 == self.n - 2 {
            Some(PathOrCycle::Path)
        } else {
            None
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathOrCycle {
    Path,
    Cycle,
}

/// A {0,1,2}-labeling of a finite graph's vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRdf {
    labels: Vec<u8>,
}

impl FiniteRdf {
    pub fn new(labels: Vec<u8>) -> Result<Self> {
        if let Some(bad) = labels.iter().find(|&&l| l > 2) {
            return Err(Error::InvalidParameter(format!(
                "labels must be 0, 1 or 2, got {bad}"
            )));
        }
        Ok(FiniteRdf { labels })
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn value(&self) -> u64 {
        self.labels.iter().map(|&l| l as u64).sum()
    }
}

struct Search<'a> {
    g: &'a FiniteGraph,
    by_last: Vec<Vec<usize>>,
    labels: Vec<u8>,
    best_value: u64,
    best_labels: Vec<u8>,
}

impl<'a> Search<'a> {
    fn new(g: &'a FiniteGraph) -> Self {
        // a 0-vertex can only be saved while some neighbor is still
        // unassigned; record where each vertex's fate is sealed
        let mut by_last = vec![Vec::new(); g.n];
        for v in 0..g.n {
            let last = g.adj[v].last().copied().unwrap_or(v).max(v);
            by_last[last].push(v);
        }
        Search {
            g,
            by_last,
            labels: vec![0; g.n],
            best_value: 2 * g.n as u64,
            best_labels: vec![2; g.n],
        }
    }

    fn feasible_at(&self, i: usize) -> bool {
        self.by_last[i].iter().all(|&u| {
            self.labels[u] != 0 || self.g.adj[u].iter().any(|&w| self.labels[w] == 2)
        })
    }

    fn run(&mut self, i: usize, acc: u64) {
        if acc >= self.best_value {
            return;
        }
        if i == self.g.n {
            self.best_value = acc;
            self.best_labels = self.labels.clone();
            return;
        }
        for lab in [0u8, 1, 2] {
            self.labels[i] = lab;
            if self.feasible_at(i) {
                self.run(i + 1, acc + lab as u64);
            }
        }
        self.labels[i] = 0;
    }

    /// True iff some labeling of value exactly `target` is a valid RDF
    /// without any 1-labels. Walks the same pruned tree as `run`.
    fn exists_without_ones(&mut self, i: usize, acc: u64, target: u64) -> bool {
        if acc > target {
            return false;
        }
        if i == self.g.n {
            return acc == target && !self.labels.contains(&1);
        }
        for lab in [0u8, 1, 2] {
            self.labels[i] = lab;
            if self.feasible_at(i) && self.exists_without_ones(i + 1, acc + lab as u64, target) {
                self.labels[i] = 0;
                return true;
            }
        }
        self.labels[i] = 0;
        false
    }
}

fn check_cap(g: &FiniteGraph) -> Result<()> {
    if g.n > BRUTE_FORCE_CAP {
        return Err(Error::InstanceTooLarge {
            n: g.n,
            cap: BRUTE_FORCE_CAP,
        });
    }
    Ok(())
}

/// Minimum RDF value and a witness, by pruned exhaustive search.
pub fn brute_force_rdn(g: &FiniteGraph) -> Result<(u64, FiniteRdf)> {
    check_cap(g)?;
    let mut search = Search::new(g);
    search.run(0, 0);
    let witness = FiniteRdf::new(search.best_labels.clone()).expect("labels in range");
    debug_assert!(g.is_valid_rdf(&witness).expect("lengths match"));
    Ok((search.best_value, witness))
}

/// RDF number of P_n or C_n by a transfer DP over
/// (label of the frontier vertex, is it already dominated).
pub fn cycle_path_rdn(kind: PathOrCycle, n: usize) -> Result<u64> {
    const INF: u64 = u64::MAX;
    if n == 0 {
        return Err(Error::InvalidParameter("empty graph".into()));
    }
    if kind == PathOrCycle::Cycle && n < 3 {
        return Err(Error::InvalidParameter(format!(
            "a cycle needs at least 3 vertices, got {n}"
        )));
    }
    let step = |cur: &[[u64; 2]; 3]| {
        let mut next = [[INF; 2]; 3];
        for l in 0..3usize {
            for s in 0..2usize {
                let c = cur[l][s];
                if c == INF {
                    continue;
                }
                for l2 in 0..3usize {
                    if s == 0 && l2 != 2 {
                        // the frontier vertex would stay undominated forever
                        continue;
                    }
                    let s2 = usize::from(l2 != 0 || l == 2);
                    let v = c + l2 as u64;
                    if v < next[l2][s2] {
                        next[l2][s2] = v;
                    }
                }
            }
        }
        next
    };
    match kind {
        PathOrCycle::Path => {
            let mut cur = [[INF; 2]; 3];
            for l in 0..3usize {
                cur[l][usize::from(l != 0)] = l as u64;
            }
            for _ in 1..n {
                cur = step(&cur);
            }
            let best = (0..3).map(|l| cur[l][1]).min().unwrap();
            Ok(best)
        }
        PathOrCycle::Cycle => {
            let mut best = INF;
            for l0 in 0..3usize {
                for defer in [false, true] {
                    // defer: vertex 0 counts on the last vertex taking label 2
                    let mut cur = [[INF; 2]; 3];
                    for l1 in 0..3usize {
                        if !(defer || l0 != 0 || l1 == 2) {
                            continue;
                        }
                        let s1 = usize::from(l1 != 0 || l0 == 2);
                        let cost = (l0 + l1) as u64;
                        if cost < cur[l1][s1] {
                            cur[l1][s1] = cost;
                        }
                    }
                    for _ in 2..n {
                        cur = step(&cur);
                    }
                    for l in 0..3usize {
                        for s in 0..2usize {
                            let c = cur[l][s];
                            if c == INF {
                                continue;
                            }
                            if s == 0 && l0 != 2 {
                                continue;
                            }
                            if defer && l != 2 {
                                continue;
                            }
                            best = best.min(c);
                        }
                    }
                }
            }
            Ok(best)
        }
    }
}

/// Minimum RDF value, routed to the DP for paths and cycles and the
/// exhaustive search otherwise.
pub fn rdn(g: &FiniteGraph) -> Result<u64> {
    match g.classify_path_or_cycle() {
        Some(kind) => cycle_path_rdn(kind, g.n()),
        None => Ok(brute_force_rdn(g)?.0),
    }
}

/// RDF number divided by the vertex count.
pub fn nrdn(g: &FiniteGraph) -> Result<BigRational> {
    let value = rdn(g)?;
    Ok(BigRational::new(BigInt::from(value), BigInt::from(g.n())))
}

/// Whether some minimum RDF uses no 1-labels, decided by enumerating the
/// optimal labelings themselves.
pub fn is_roman_graph(g: &FiniteGraph) -> Result<bool> {
    check_cap(g)?;
    let (opt, _) = brute_force_rdn(g)?;
    let mut search = Search::new(g);
    Ok(search.exists_without_ones(0, 0, opt))
}

/// An optimal witness for paths and cycles of any order: the middle vertex
/// of each consecutive triple gets a 2, a lone leftover vertex a 1, a
/// leftover pair one 2.
pub fn block_witness(kind: PathOrCycle, n: usize) -> Result<FiniteRdf> {
    if n == 0 || (kind == PathOrCycle::Cycle && n < 3) {
        return Err(Error::InvalidParameter(format!(
            "no {} on {n} vertices",
            match kind {
                PathOrCycle::Path => "path",
                PathOrCycle::Cycle => "cycle",
            }
        )));
    }
    let mut labels = vec![0u8; n];
    let mut i = 0;
    while i + 3 <= n {
        labels[i + 1] = 2;
        i += 3;
    }
    match n - i {
        1 => labels[n - 1] = 1,
        2 => labels[n - 2] = 2,
        _ => {}
    }
    FiniteRdf::new(labels)
}

/// Ordinary domination number, by exhaustive subset search.
pub fn domination_number(g: &FiniteGraph) -> Result<u64> {
    check_cap(g)?;
    let n = g.n();
    let all: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut closed = vec![0u32; n];
    for v in 0..n {
        closed[v] = 1 << v;
        for &w in g.neighbors(v) {
            closed[v] |= 1 << w;
        }
    }
    let mut best = n as u32;
    for mask in 0u32..=all {
        if mask.count_ones() >= best {
            continue;
        }
        let mut dominated = 0u32;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            dominated |= closed[v];
            m &= m - 1;
        }
        if dominated == all {
            best = mask.count_ones();
        }
    }
    Ok(best as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn frozen_small_values() {
        let k1 = FiniteGraph::new(1, &[]).unwrap();
        assert_eq!(brute_force_rdn(&k1).unwrap().0, 1);
        assert_eq!(brute_force_rdn(&FiniteGraph::cycle(3).unwrap()).unwrap().0, 2);
        assert_eq!(brute_force_rdn(&FiniteGraph::cycle(4).unwrap()).unwrap().0, 3);
        assert_eq!(brute_force_rdn(&FiniteGraph::cycle(6).unwrap()).unwrap().0, 4);
        assert_eq!(brute_force_rdn(&FiniteGraph::cycle(9).unwrap()).unwrap().0, 6);
        assert_eq!(brute_force_rdn(&FiniteGraph::path(2).unwrap()).unwrap().0, 2);
        assert_eq!(brute_force_rdn(&FiniteGraph::path(3).unwrap()).unwrap().0, 2);
        assert_eq!(brute_force_rdn(&FiniteGraph::path(4).unwrap()).unwrap().0, 3);
    }

    #[test]
    fn witness_is_valid_and_optimal() {
        for n in [3usize, 5, 7, 10] {
            let g = FiniteGraph::cycle(n).unwrap();
            let (value, witness) = brute_force_rdn(&g).unwrap();
            assert!(g.is_valid_rdf(&witness).unwrap());
            assert_eq!(witness.value(), value);
        }
    }

    #[test]
    fn block_witness_is_optimal_for_every_order() {
        for n in 1..=60usize {
            let g = FiniteGraph::path(n).unwrap();
            let w = block_witness(PathOrCycle::Path, n).unwrap();
            assert!(g.is_valid_rdf(&w).unwrap(), "path {n}");
            assert_eq!(w.value(), cycle_path_rdn(PathOrCycle::Path, n).unwrap(), "path {n}");
        }
        for n in 3..=60usize {
            let g = FiniteGraph::cycle(n).unwrap();
            let w = block_witness(PathOrCycle::Cycle, n).unwrap();
            assert!(g.is_valid_rdf(&w).unwrap(), "cycle {n}");
            assert_eq!(w.value(), cycle_path_rdn(PathOrCycle::Cycle, n).unwrap(), "cycle {n}");
        }
        assert!(block_witness(PathOrCycle::Cycle, 2).is_err());
        assert!(block_witness(PathOrCycle::Path, 0).is_err());
    }

    #[test]
    fn dp_matches_brute_force() {
        for n in 1..=12usize {
            let g = FiniteGraph::path(n).unwrap();
            assert_eq!(
                cycle_path_rdn(PathOrCycle::Path, n).unwrap(),
                brute_force_rdn(&g).unwrap().0,
                "path {n}"
            );
        }
        for n in 3..=12usize {
            let g = FiniteGraph::cycle(n).unwrap();
            assert_eq!(
                cycle_path_rdn(PathOrCycle::Cycle, n).unwrap(),
                brute_force_rdn(&g).unwrap().0,
                "cycle {n}"
            );
        }
    }

    #[test]
    fn cycle_formula() {
        for n in 3..=40usize {
            let expect = (2 * n).div_ceil(3) as u64;
            assert_eq!(cycle_path_rdn(PathOrCycle::Cycle, n).unwrap(), expect, "C_{n}");
        }
        assert_eq!(cycle_path_rdn(PathOrCycle::Cycle, 3000).unwrap(), 2000);
    }

    #[test]
    fn nrdn_routes_to_dp_for_big_cycles() {
        let g = FiniteGraph::cycle(3000).unwrap();
        assert_eq!(nrdn(&g).unwrap(), rat(2, 3));
        let g4 = FiniteGraph::cycle(4).unwrap();
        assert_eq!(nrdn(&g4).unwrap(), rat(3, 4));
    }

    #[test]
    fn classification() {
        assert_eq!(
            FiniteGraph::path(1).unwrap().classify_path_or_cycle(),
            Some(PathOrCycle::Path)
        );
        assert_eq!(
            FiniteGraph::path(5).unwrap().classify_path_or_cycle(),
            Some(PathOrCycle::Path)
        );
        assert_eq!(
            FiniteGraph::cycle(5).unwrap().classify_path_or_cycle(),
            Some(PathOrCycle::Cycle)
        );
        // K_1 plus an isolated vertex is disconnected
        assert_eq!(
            FiniteGraph::new(2, &[]).unwrap().classify_path_or_cycle(),
            None
        );
        // a star is neither
        let star = FiniteGraph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.classify_path_or_cycle(), None);
    }

    #[test]
    fn roman_graph_detection() {
        assert!(is_roman_graph(&FiniteGraph::cycle(3).unwrap()).unwrap());
        assert!(!is_roman_graph(&FiniteGraph::cycle(4).unwrap()).unwrap());
        assert!(is_roman_graph(&FiniteGraph::cycle(5).unwrap()).unwrap());
        assert!(!is_roman_graph(&FiniteGraph::new(1, &[]).unwrap()).unwrap());
        assert!(!is_roman_graph(&FiniteGraph::path(4).unwrap()).unwrap());
    }

    #[test]
    fn domination_numbers() {
        assert_eq!(domination_number(&FiniteGraph::new(1, &[]).unwrap()).unwrap(), 1);
        assert_eq!(domination_number(&FiniteGraph::cycle(4).unwrap()).unwrap(), 2);
        assert_eq!(domination_number(&FiniteGraph::cycle(9).unwrap()).unwrap(), 3);
        assert_eq!(domination_number(&FiniteGraph::path(2).unwrap()).unwrap(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let g = FiniteGraph::new(17, &[(0, 1)]).unwrap();
        assert!(matches!(
            brute_force_rdn(&g),
            Err(Error::InstanceTooLarge { n: 17, cap: 16 })
        ));
        assert!(matches!(
            domination_number(&g),
            Err(Error::InstanceTooLarge { .. })
        ));
        // the DP route has no cap
        assert!(rdn(&FiniteGraph::cycle(50).unwrap()).is_ok());
    }

    #[test]
    fn parse_valid_file() {
        let text = "\
# a four-cycle
4 4

0 1
1 2
2 3
0 3
";
        let g = FiniteGraph::parse(text).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edges(), &[(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert_eq!(g.classify_path_or_cycle(), Some(PathOrCycle::Cycle));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = FiniteGraph::parse("").unwrap_err();
        assert!(matches!(e, Error::GraphParse { line: 1, .. }));

        let e = FiniteGraph::parse("3 x\n").unwrap_err();
        assert!(matches!(e, Error::GraphParse { line: 1, .. }));

        let e = FiniteGraph::parse("3 2\n1 0\n1 2\n").unwrap_err();
        assert!(matches!(e, Error::GraphParse { line: 2, .. }), "{e}");

        let e = FiniteGraph::parse("3 2\n0 1\n1 5\n").unwrap_err();
        assert!(matches!(e, Error::GraphParse { line: 3, .. }), "{e}");

        let e = FiniteGraph::parse("3 3\n0 1\n# hm\n0 1\n1 2\n").unwrap_err();
        match e {
            Error::GraphParse { line, msg } => {
                assert_eq!(line, 4);
                assert!(msg.contains("duplicate"));
            }
            other => panic!("unexpected {other:?}"),
        }

        let e = FiniteGraph::parse("3 2\n0 1\n").unwrap_err();
        match e {
            Error::GraphParse { line: 2, msg } => assert!(msg.contains("expected 2 edges")),
            other => panic!("unexpected {other:?}"),
        }

        let e = FiniteGraph::parse("2 1\n0 1\n0 1 2\n").unwrap_err();
        assert!(matches!(e, Error::GraphParse { line: 3, .. }));

        let e = FiniteGraph::parse("2 1\n0 1 9\n").unwrap_err();
        assert!(matches!(e, Error::GraphParse { line: 2, .. }));
    }

    #[test]
    fn rdf_validity_spot_checks() {
        let g = FiniteGraph::cycle(4).unwrap();
        let good = FiniteRdf::new(vec![2, 0, 1, 0]).unwrap();
        assert!(g.is_valid_rdf(&good).unwrap());
        let bad = FiniteRdf::new(vec![2, 0, 0, 0]).unwrap();
        assert!(!g.is_valid_rdf(&bad).unwrap());
        assert!(FiniteRdf::new(vec![3]).is_err());
        let short = FiniteRdf::new(vec![2, 0]).unwrap();
        assert!(g.is_valid_rdf(&short).is_err());
    }
}
