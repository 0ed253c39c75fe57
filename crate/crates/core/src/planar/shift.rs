//! Straight-line grid drawing of an embedded planar graph: augment to a
//! biconnected, internally triangulated embedding, compute a canonical
//! ordering, then place nodes with the shift method on an integer grid of
//! size about `2n x n`.

use std::collections::{BTreeSet, HashSet};

use super::rotation::Rotation;

fn components(rot: &Rotation) -> Vec<usize> {
    let n = rot.node_count();
    let mut seen = vec![false; n];
    let mut reps = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        reps.push(s);
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for w in rot.neighbors_cw(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    reps
}

fn make_bi_connected(
    emb: &mut Rotation,
    start: usize,
    out: usize,
    counted: &mut HashSet<(usize, usize)>,
) -> Vec<usize> {
    if !counted.insert((start, out)) {
        return Vec::new();
    }
    let mut face = vec![start];
    let mut on_face = HashSet::from([start]);
    let (mut v1, mut v2) = (start, out);
    let (_, mut v3) = emb.next_face_half_edge(v1, v2);
    while v2 != start || v3 != out {
        if on_face.contains(&v2) {
            // second visit of v2: it is a cut vertex of this face
            emb.insert_after(v1, v3, Some(v2));
            emb.insert_before(v3, v1, Some(v2));
            counted.insert((v2, v3));
            counted.insert((v3, v1));
            v2 = v1;
        } else {
            on_face.insert(v2);
            face.push(v2);
        }
        v1 = v2;
        (v2, v3) = emb.next_face_half_edge(v2, v3);
        counted.insert((v1, v2));
    }
    face
}

fn triangulate_face(emb: &mut Rotation, mut v1: usize, mut v2: usize) {
    let (_, mut v3) = emb.next_face_half_edge(v1, v2);
    let (_, mut v4) = emb.next_face_half_edge(v2, v3);
    if v1 == v2 || v1 == v3 {
        return;
    }
    while v1 != v4 {
        if emb.has_edge(v1, v3) {
            (v1, v2, v3) = (v2, v3, v4);
        } else {
            emb.insert_after(v1, v3, Some(v2));
            emb.insert_before(v3, v1, Some(v2));
            (v2, v3) = (v3, v4);
        }
        v4 = emb.next_face_half_edge(v2, v3).1;
    }
}

/// Connects components, makes every face a simple cycle and triangulates
/// every face but the outer one. Returns the outer face.
fn triangulate(emb: &mut Rotation, outer_dart: Option<(usize, usize)>) -> Vec<usize> {
    let reps = components(emb);
    for pair in reps.windows(2) {
        emb.insert_first(pair[0], pair[1]);
        emb.insert_first(pair[1], pair[0]);
    }

    let mut counted = HashSet::new();
    let mut faces: Vec<Vec<usize>> = Vec::new();
    let mut outer = None;
    if let Some((v, w)) = outer_dart {
        faces.push(make_bi_connected(emb, v, w, &mut counted));
        outer = Some(0);
    }
    for v in 0..emb.node_count() {
        for w in emb.neighbors_cw(v) {
            let face = make_bi_connected(emb, v, w, &mut counted);
            if !face.is_empty() {
                faces.push(face);
            }
        }
    }
    let outer = outer.unwrap_or_else(|| {
        let mut best = 0;
        for (i, f) in faces.iter().enumerate() {
            if f.len() > faces[best].len() {
                best = i;
            }
        }
        best
    });
    for (i, face) in faces.iter().enumerate() {
        if i != outer {
            triangulate_face(emb, face[0], face[1]);
        }
    }
    faces.swap_remove(outer)
}

/// Canonical ordering: `(node, contour neighbours)` in insertion order, the
/// first two being the outer-face base edge.
fn canonical_ordering(emb: &Rotation, outer: &[usize]) -> Vec<(usize, Vec<usize>)> {
    let n = emb.node_count();
    let (v1, v2) = (outer[0], outer[1]);
    let mut chords = vec![0i64; n];
    let mut marked = vec![false; n];
    let mut ready: BTreeSet<usize> = outer.iter().copied().collect();

    let mut ccw_nbr: Vec<Option<usize>> = vec![None; n];
    let mut prev = v2;
    for &x in &outer[2..] {
        ccw_nbr[prev] = Some(x);
        prev = x;
    }
    ccw_nbr[prev] = Some(v1);

    let mut cw_nbr: Vec<Option<usize>> = vec![None; n];
    let mut prev = v1;
    for idx in (1..outer.len()).rev() {
        cw_nbr[prev] = Some(outer[idx]);
        prev = outer[idx];
    }

    let is_outer_face_nbr = |cw: &[Option<usize>], ccw: &[Option<usize>], x: usize, y: usize| {
        ccw[x] == Some(y) || cw[x] == Some(y)
    };
    let is_on_outer_face = |marked: &[bool], ccw: &[Option<usize>], x: usize| {
        !marked[x] && (ccw[x].is_some() || x == v1)
    };

    for &v in outer {
        for nbr in emb.neighbors_cw(v) {
            if is_on_outer_face(&marked, &ccw_nbr, nbr)
                && !is_outer_face_nbr(&cw_nbr, &ccw_nbr, v, nbr)
            {
                chords[v] += 1;
                ready.remove(&v);
            }
        }
    }

    let mut order: Vec<(usize, Vec<usize>)> = vec![(usize::MAX, Vec::new()); n];
    order[0] = (v1, Vec::new());
    order[1] = (v2, Vec::new());
    ready.remove(&v1);
    ready.remove(&v2);

    for k in (2..n).rev() {
        let v = ready.pop_first().expect("a canonical ordering exists");
        marked[v] = true;

        let (mut wp, mut wq) = (None, None);
        for nbr in emb.neighbors_cw(v) {
            if marked[nbr] {
                continue;
            }
            if is_on_outer_face(&marked, &ccw_nbr, nbr) {
                if nbr == v1 {
                    wp = Some(v1);
                } else if nbr == v2 {
                    wq = Some(v2);
                } else if cw_nbr[nbr] == Some(v) {
                    wp = Some(nbr);
                } else {
                    wq = Some(nbr);
                }
            }
            if wp.is_some() && wq.is_some() {
                break;
            }
        }
        let (wp, wq) = (wp.unwrap(), wq.unwrap());

        let mut contour = vec![wp];
        let mut nbr = wp;
        while nbr != wq {
            let next = emb.ccw(v, nbr);
            contour.push(next);
            cw_nbr[nbr] = Some(next);
            ccw_nbr[next] = Some(nbr);
            nbr = next;
        }

        if contour.len() == 2 {
            for w in [wp, wq] {
                chords[w] -= 1;
                if chords[w] == 0 {
                    ready.insert(w);
                }
            }
        } else {
            let inner: BTreeSet<usize> = contour[1..contour.len() - 1].iter().copied().collect();
            for &w in &inner {
                ready.insert(w);
                for nbr in emb.neighbors_cw(w) {
                    if is_on_outer_face(&marked, &ccw_nbr, nbr)
                        && !is_outer_face_nbr(&cw_nbr, &ccw_nbr, w, nbr)
                    {
                        chords[w] += 1;
                        ready.remove(&w);
                        if !inner.contains(&nbr) {
                            chords[nbr] += 1;
                            ready.remove(&nbr);
                        }
                    }
                }
            }
        }
        order[k] = (v, contour);
    }
    order
}

/// Integer grid positions for every node of a planar rotation system.
/// `outer_dart` selects the outer face by one of its half-edges.
pub(crate) fn grid_positions(
    rot: &Rotation,
    outer_dart: Option<(usize, usize)>,
) -> Vec<(i64, i64)> {
    let n = rot.node_count();
    if n < 4 {
        return [(0, 0), (2, 0), (1, 1)][..n].to_vec();
    }
    let mut emb = rot.clone();
    let outer = triangulate(&mut emb, outer_dart);
    let order = canonical_ordering(&emb, &outer);

    let mut left: Vec<Option<usize>> = vec![None; n];
    let mut right: Vec<Option<usize>> = vec![None; n];
    let mut dx = vec![0i64; n];
    let mut y = vec![0i64; n];

    let (v1, v2, v3) = (order[0].0, order[1].0, order[2].0);
    dx[v1] = 0;
    y[v1] = 0;
    right[v1] = Some(v3);
    dx[v2] = 1;
    y[v2] = 0;
    dx[v3] = 1;
    y[v3] = 1;
    right[v3] = Some(v2);

    for (vk, contour) in &order[3..] {
        let vk = *vk;
        let wp = contour[0];
        let wp1 = contour[1];
        let wq = contour[contour.len() - 1];
        let wq1 = contour[contour.len() - 2];
        let multi = contour.len() > 2;

        dx[wp1] += 1;
        dx[wq] += 1;
        let span: i64 = contour[1..].iter().map(|&x| dx[x]).sum();

        dx[vk] = (-y[wp] + span + y[wq]).div_euclid(2);
        y[vk] = (y[wp] + span + y[wq]).div_euclid(2);
        dx[wq] = span - dx[vk];
        if multi {
            dx[wp1] -= dx[vk];
        }

        right[wp] = Some(vk);
        right[vk] = Some(wq);
        if multi {
            left[vk] = Some(wp1);
            right[wq1] = None;
        } else {
            left[vk] = None;
        }
    }

    let mut pos = vec![(0i64, 0i64); n];
    pos[v1] = (0, y[v1]);
    let mut pending = vec![v1];
    while let Some(parent) = pending.pop() {
        for child in [left[parent], right[parent]].into_iter().flatten() {
            pos[child] = (pos[parent].0 + dx[child], y[child]);
            pending.push(child);
        }
    }
    pos
}
