//! Left-right planarity test with embedding construction. Recursion is
//! replaced by explicit stacks so deep DFS trees (long yarn chains) are safe.

use std::collections::HashMap;

use super::rotation::Rotation;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn new(e: usize) -> Self {
        Interval {
            low: Some(e),
            high: Some(e),
        }
    }

    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct State<'a> {
    adj: &'a [Vec<usize>],
    height: Vec<Option<usize>>,
    parent_edge: Vec<Option<usize>>,
    roots: Vec<usize>,

    // oriented edges, indexed by edge id
    src: Vec<usize>,
    dst: Vec<usize>,
    ids: HashMap<(usize, usize), usize>,
    out: Vec<Vec<usize>>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<i64>,
    reference: Vec<Option<usize>>,
    side: Vec<i64>,
    stack_bottom: Vec<usize>,
    lowpt_edge: Vec<Option<usize>>,
    skip_init: Vec<bool>,

    stack: Vec<ConflictPair>,
    ordered: Vec<Vec<usize>>,
    left_ref: Vec<usize>,
    right_ref: Vec<usize>,
}

impl State<'_> {
    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        match i.high {
            Some(h) => self.lowpt[h] > self.lowpt[b],
            None => false,
        }
    }

    fn lowest(&self, p: &ConflictPair) -> Option<usize> {
        let l = p.left.low.map(|e| self.lowpt[e]);
        let r = p.right.low.map(|e| self.lowpt[e]);
        match (l, r) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    fn orient_edge(&mut self, v: usize, w: usize) -> usize {
        let id = self.src.len();
        self.src.push(v);
        self.dst.push(w);
        self.ids.insert((v, w), id);
        self.out[v].push(id);
        let h = self.height[v].unwrap();
        self.lowpt.push(h);
        self.lowpt2.push(h);
        self.nesting.push(0);
        self.reference.push(None);
        self.side.push(1);
        self.stack_bottom.push(0);
        self.lowpt_edge.push(None);
        self.skip_init.push(false);
        id
    }

    fn orientation(&mut self, root: usize, ind: &mut [usize]) {
        let mut dfs = vec![root];
        while let Some(v) = dfs.pop() {
            let e = self.parent_edge[v];
            let hv = self.height[v].unwrap();
            while ind[v] < self.adj[v].len() {
                let w = self.adj[v][ind[v]];
                let vw = match self.ids.get(&(v, w)) {
                    Some(&id) if self.skip_init[id] => id,
                    _ => {
                        if self.ids.contains_key(&(v, w)) || self.ids.contains_key(&(w, v)) {
                            ind[v] += 1;
                            continue;
                        }
                        let id = self.orient_edge(v, w);
                        match self.height[w] {
                            None => {
                                self.parent_edge[w] = Some(id);
                                self.height[w] = Some(hv + 1);
                                dfs.push(v);
                                dfs.push(w);
                                self.skip_init[id] = true;
                                break;
                            }
                            Some(hw) => self.lowpt[id] = hw,
                        }
                        id
                    }
                };

                self.nesting[vw] = 2 * self.lowpt[vw] as i64;
                if self.lowpt2[vw] < hv {
                    self.nesting[vw] += 1;
                }

                if let Some(e) = e {
                    if self.lowpt[vw] < self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                        self.lowpt[e] = self.lowpt[vw];
                    } else if self.lowpt[vw] > self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                    } else {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                    }
                }
                ind[v] += 1;
            }
        }
    }

    fn testing(&mut self, root: usize, ind: &mut [usize]) -> bool {
        let mut dfs = vec![root];
        while let Some(v) = dfs.pop() {
            let e = self.parent_edge[v];
            let mut descended = false;
            while ind[v] < self.ordered[v].len() {
                let ei = self.ordered[v][ind[v]];
                let w = self.dst[ei];
                if !self.skip_init[ei] {
                    self.stack_bottom[ei] = self.stack.len();
                    if self.parent_edge[w] == Some(ei) {
                        dfs.push(v);
                        dfs.push(w);
                        self.skip_init[ei] = true;
                        descended = true;
                        break;
                    }
                    self.lowpt_edge[ei] = Some(ei);
                    self.stack.push(ConflictPair {
                        left: Interval::default(),
                        right: Interval::new(ei),
                    });
                }

                if self.lowpt[ei] < self.height[v].unwrap() {
                    let e = e.expect("only non-root nodes have return edges");
                    if ei == self.ordered[v][0] {
                        self.lowpt_edge[e] = self.lowpt_edge[ei];
                    } else if !self.add_constraints(ei, e) {
                        return false;
                    }
                }
                ind[v] += 1;
            }
            if !descended {
                if let Some(e) = e {
                    self.remove_back_edges(e);
                }
            }
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::default();
        loop {
            let mut q = self.stack.pop().expect("return edges are on the stack");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let q_low = q.right.low.unwrap();
            if self.lowpt[q_low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.reference[p.right.low.unwrap()] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[q_low] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }

        while let Some(&top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(low) = p.right.low {
                self.reference[low] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else if let Some(low) = p.left.low {
                self.reference[low] = q.left.high;
            }
            p.left.low = q.left.low;
        }

        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        let hu = self.height[u].unwrap();
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != Some(hu) {
                break;
            }
            let p = self.stack.pop().unwrap();
            if let Some(low) = p.left.low {
                self.side[low] = -1;
            }
        }

        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.dst[h] != u {
                    break;
                }
                p.left.high = self.reference[h];
            }
            if p.left.high.is_none() {
                if let Some(low) = p.left.low {
                    self.reference[low] = p.right.low;
                    self.side[low] = -1;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.dst[h] != u {
                    break;
                }
                p.right.high = self.reference[h];
            }
            if p.right.high.is_none() {
                if let Some(low) = p.right.low {
                    self.reference[low] = p.left.low;
                    self.side[low] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }

        if self.lowpt[e] < hu {
            let top = self.stack.last().copied().unwrap_or_default();
            let (hl, hr) = (top.left.high, top.right.high);
            let left_higher = match (hl, hr) {
                (Some(_), None) => true,
                (Some(l), Some(r)) => self.lowpt[l] > self.lowpt[r],
                _ => false,
            };
            self.reference[e] = if left_higher { hl } else { hr };
        }
    }

    fn sign(&mut self, e: usize) -> i64 {
        let mut chain = vec![e];
        let mut cur = e;
        while let Some(r) = self.reference[cur] {
            chain.push(r);
            cur = r;
        }
        // resolve from the far end of the reference chain back to `e`
        for k in (0..chain.len() - 1).rev() {
            let (x, r) = (chain[k], chain[k + 1]);
            self.side[x] *= self.side[r];
            self.reference[x] = None;
        }
        self.side[e]
    }

    fn embedding(&mut self, root: usize, ind: &mut [usize], rot: &mut Rotation) {
        let mut dfs = vec![root];
        while let Some(v) = dfs.pop() {
            while ind[v] < self.ordered[v].len() {
                let ei = self.ordered[v][ind[v]];
                ind[v] += 1;
                let w = self.dst[ei];
                if self.parent_edge[w] == Some(ei) {
                    rot.insert_first(w, v);
                    self.left_ref[v] = w;
                    self.right_ref[v] = w;
                    dfs.push(v);
                    dfs.push(w);
                    break;
                }
                if self.side[ei] == 1 {
                    rot.insert_after(w, v, Some(self.right_ref[w]));
                } else {
                    rot.insert_before(w, v, Some(self.left_ref[w]));
                    self.left_ref[w] = v;
                }
            }
        }
    }
}

/// Tests the simple graph given by `adj` (0-based, no duplicates, no
/// self-loops) and returns a planar rotation system when one exists.
pub(crate) fn planar_rotation(adj: &[Vec<usize>]) -> Option<Rotation> {
    let n = adj.len();
    let m: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    if n > 2 && m > 3 * n - 6 {
        return None;
    }
    let mut s = State {
        adj,
        height: vec![None; n],
        parent_edge: vec![None; n],
        roots: Vec::new(),
        src: Vec::with_capacity(m),
        dst: Vec::with_capacity(m),
        ids: HashMap::with_capacity(m),
        out: vec![Vec::new(); n],
        lowpt: Vec::with_capacity(m),
        lowpt2: Vec::with_capacity(m),
        nesting: Vec::with_capacity(m),
        reference: Vec::with_capacity(m),
        side: Vec::with_capacity(m),
        stack_bottom: Vec::with_capacity(m),
        lowpt_edge: Vec::with_capacity(m),
        skip_init: Vec::with_capacity(m),
        stack: Vec::new(),
        ordered: Vec::new(),
        left_ref: vec![usize::MAX; n],
        right_ref: vec![usize::MAX; n],
    };

    let mut ind = vec![0usize; n];
    for v in 0..n {
        if s.height[v].is_none() {
            s.height[v] = Some(0);
            s.roots.push(v);
            s.orientation(v, &mut ind);
        }
    }

    let mut ordered = s.out.clone();
    for list in &mut ordered {
        list.sort_by_key(|&e| s.nesting[e]);
    }
    s.ordered = ordered;
    s.skip_init.iter_mut().for_each(|b| *b = false);
    ind.iter_mut().for_each(|i| *i = 0);
    for r in s.roots.clone() {
        if !s.testing(r, &mut ind) {
            return None;
        }
    }

    for e in 0..s.src.len() {
        let sign = s.sign(e);
        s.nesting[e] *= sign;
    }

    let mut rot = Rotation::new(n);
    let mut ordered = s.out.clone();
    for (v, list) in ordered.iter_mut().enumerate() {
        list.sort_by_key(|&e| s.nesting[e]);
        let mut previous = None;
        for &e in list.iter() {
            let w = s.dst[e];
            rot.insert_after(v, w, previous);
            previous = Some(w);
        }
    }
    s.ordered = ordered;

    ind.iter_mut().for_each(|i| *i = 0);
    for r in s.roots.clone() {
        s.embedding(r, &mut ind, &mut rot);
    }
    Some(rot)
}
