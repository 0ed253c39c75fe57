use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Link {
    cw: usize,
    ccw: usize,
}

/// Cyclic neighbour order around every node (a combinatorial embedding),
/// stored as doubly linked half-edges. Each node also remembers a leftmost
/// neighbour where clockwise enumeration starts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Rotation {
    links: Vec<HashMap<usize, Link>>,
    leftmost: Vec<Option<usize>>,
}

impl Rotation {
    pub fn new(n: usize) -> Self {
        Rotation {
            links: vec![HashMap::new(); n],
            leftmost: vec![None; n],
        }
    }

    pub fn node_count(&self) -> usize {
        self.links.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.links[v].len()
    }

    pub fn has_edge(&self, v: usize, w: usize) -> bool {
        self.links[v].contains_key(&w)
    }

    pub fn cw(&self, v: usize, w: usize) -> usize {
        self.links[v][&w].cw
    }

    pub fn ccw(&self, v: usize, w: usize) -> usize {
        self.links[v][&w].ccw
    }

    fn add_only(&mut self, start: usize, end: usize) {
        debug_assert!(self.links[start].is_empty());
        self.links[start].insert(end, Link { cw: end, ccw: end });
        self.leftmost[start] = Some(end);
    }

    /// Places `end` immediately counterclockwise of `reference`.
    pub fn insert_before(&mut self, start: usize, end: usize, reference: Option<usize>) {
        let Some(r) = reference else {
            return self.add_only(start, end);
        };
        let links = &mut self.links[start];
        let r_ccw = links[&r].ccw;
        links.insert(end, Link { cw: r, ccw: r_ccw });
        links.get_mut(&r_ccw).unwrap().cw = end;
        links.get_mut(&r).unwrap().ccw = end;
        if self.leftmost[start] == Some(r) {
            self.leftmost[start] = Some(end);
        }
    }

    /// Places `end` immediately clockwise of `reference`.
    pub fn insert_after(&mut self, start: usize, end: usize, reference: Option<usize>) {
        let Some(r) = reference else {
            return self.add_only(start, end);
        };
        let links = &mut self.links[start];
        let r_cw = links[&r].cw;
        links.insert(end, Link { cw: r_cw, ccw: r });
        links.get_mut(&r_cw).unwrap().ccw = end;
        links.get_mut(&r).unwrap().cw = end;
    }

    /// Adds `end` as the new leftmost neighbour of `start`.
    pub fn insert_first(&mut self, start: usize, end: usize) {
        let r = self.leftmost[start];
        self.insert_before(start, end, r);
    }

    pub fn neighbors_cw(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree(v));
        if let Some(first) = self.leftmost[v] {
            let mut cur = first;
            loop {
                out.push(cur);
                cur = self.cw(v, cur);
                if cur == first {
                    break;
                }
            }
        }
        out
    }

    /// The half-edge following `(v, w)` along the face to its left.
    pub fn next_face_half_edge(&self, v: usize, w: usize) -> (usize, usize) {
        (w, self.ccw(w, v))
    }

    /// Faces as node cycles, one per orbit of half-edges, in order of the
    /// first half-edge met when scanning nodes and their clockwise
    /// neighbours.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen: Vec<HashMap<usize, ()>> = vec![HashMap::new(); self.node_count()];
        let mut faces = Vec::new();
        for v in 0..self.node_count() {
            for w in self.neighbors_cw(v) {
                if seen[v].contains_key(&w) {
                    continue;
                }
                let mut face = Vec::new();
                let (mut a, mut b) = (v, w);
                while seen[a].insert(b, ()).is_none() {
                    face.push(a);
                    (a, b) = self.next_face_half_edge(a, b);
                }
                faces.push(face);
            }
        }
        faces
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insertion_keeps_cyclic_order() {
        let mut r = Rotation::new(5);
        r.insert_after(0, 1, None);
        r.insert_after(0, 2, Some(1));
        r.insert_after(0, 3, Some(2));
        assert_eq!(r.neighbors_cw(0), vec![1, 2, 3]);
        r.insert_before(0, 4, Some(2));
        assert_eq!(r.neighbors_cw(0), vec![1, 4, 2, 3]);
        r.insert_first(0, 0);
        assert_eq!(r.neighbors_cw(0), vec![0, 1, 4, 2, 3]);
        assert_eq!(r.ccw(0, 0), 3);
    }

    #[test]
    fn triangle_has_two_faces() {
        let mut r = Rotation::new(3);
        for (v, a, b) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            r.insert_after(v, a, None);
            r.insert_after(v, b, Some(a));
        }
        let faces = r.faces();
        assert_eq!(faces.len(), 2);
        assert!(faces.iter().all(|f| f.len() == 3));
    }
}
