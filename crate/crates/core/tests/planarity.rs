use std::collections::{BTreeSet, HashMap, HashSet};

use knitgraph::geometry::count_crossings;
use knitgraph::graph::{convert, from_pairs};
use knitgraph::pattern::{gen_triangle, parse, TriangleParams};
use knitgraph::planar::{embed, grid_coordinates, grid_layout, kuratowski_witness, GridOptions};
use knitgraph::{EdgeLengthConfig, Error, KnitGraph, Layout, Point, StitchDictionary};
use proptest::prelude::*;

/// Smooths away degree-2 nodes and checks that what is left is K5 or K3,3.
fn is_kuratowski(edges: &[(u32, u32)]) -> bool {
    let mut adj: HashMap<u32, Vec<u32>> = HashMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    while let Some((&v, nbrs)) = adj.iter().find(|(_, n)| n.len() == 2) {
        let (a, b) = (nbrs[0], nbrs[1]);
        if a == b || adj[&a].contains(&b) {
            return false;
        }
        adj.remove(&v);
        for (x, y) in [(a, b), (b, a)] {
            let list = adj.get_mut(&x).unwrap();
            let k = list.iter().position(|&z| z == v).unwrap();
            list[k] = y;
        }
    }
    let degrees: BTreeSet<usize> = adj.values().map(Vec::len).collect();
    match (
        adj.len(),
        degrees.into_iter().collect::<Vec<_>>().as_slice(),
    ) {
        (5, [4]) => true,
        (6, [3]) => {
            // bipartite with two sides of three
            let start = *adj.keys().min().unwrap();
            let mut color: HashMap<u32, bool> = HashMap::from([(start, false)]);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &adj[&v] {
                    match color.get(&w) {
                        Some(&c) if c == color[&v] => return false,
                        Some(_) => {}
                        None => {
                            color.insert(w, !color[&v]);
                            stack.push(w);
                        }
                    }
                }
            }
            color.values().filter(|&&c| c).count() == 3
        }
        _ => false,
    }
}

fn components(g: &KnitGraph) -> usize {
    let adj = g.simple_adjacency();
    let mut seen = vec![false; adj.len()];
    let mut count = 0;
    for s in 0..adj.len() {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// Checks a planarity answer with independent evidence either way.
fn check_answer(g: &KnitGraph) {
    match embed(g) {
        Ok(emb) => {
            let n = g.node_count() as i64;
            let m = g.segments().len() as i64;
            let c = components(g) as i64;
            let isolated = g.simple_adjacency().iter().filter(|a| a.is_empty()).count() as i64;
            // Euler per component: each has its own outer face, and an
            // isolated node has no face at all
            let faces = emb.faces().len() as i64;
            assert_eq!(n - m + faces + isolated, 2 * c, "Euler formula");
            let layout = grid_layout(g, &GridOptions::default()).unwrap();
            assert_eq!(
                count_crossings(&layout, g).unwrap(),
                0,
                "grid drawing crosses"
            );
            let pts: HashSet<(u64, u64)> = layout
                .iter()
                .map(|(_, p)| (p.x.to_bits(), p.y.to_bits()))
                .collect();
            assert_eq!(pts.len(), g.node_count(), "nodes share a position");
        }
        Err(Error::NotPlanar { witness: Some(w) }) => {
            let have: HashSet<(u32, u32)> = g
                .segments()
                .iter()
                .map(|s| (s.a as u32 + 1, s.b as u32 + 1))
                .collect();
            assert!(w.iter().all(|e| have.contains(e)));
            assert!(is_kuratowski(&w), "witness {w:?}");
        }
        Err(e) => panic!("{e}"),
    }
}

fn graph_from(n: usize, raw: &[(usize, usize)]) -> KnitGraph {
    let mut seen = HashSet::new();
    let pairs: Vec<(u32, u32)> = raw
        .iter()
        .map(|&(a, b)| (a % n, b % n))
        .filter(|&(a, b)| a != b)
        .map(|(a, b)| (a.min(b) as u32 + 1, a.max(b) as u32 + 1))
        .filter(|p| seen.insert(*p))
        .collect();
    from_pairs(n, &pairs).unwrap()
}

/// Grid graph with one random diagonal per cell and some edges removed:
/// always planar.
fn grid_graph(w: usize, h: usize, bits: &[bool]) -> KnitGraph {
    let id = |x: usize, y: usize| (y * w + x) as u32 + 1;
    let mut pairs = Vec::new();
    let mut bit = bits.iter().cycle();
    for y in 0..h {
        for x in 0..w {
            if x + 1 < w {
                pairs.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < h {
                pairs.push((id(x, y), id(x, y + 1)));
            }
            if x + 1 < w && y + 1 < h {
                if *bit.next().unwrap() {
                    pairs.push((id(x, y), id(x + 1, y + 1)));
                } else {
                    pairs.push((id(x + 1, y), id(x, y + 1)));
                }
            }
        }
    }
    let keep: Vec<_> = pairs
        .into_iter()
        .filter(|_| !*bit.next().unwrap() || *bit.next().unwrap())
        .collect();
    from_pairs(w * h, &keep).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn random_graph_answers_are_certified(
        n in 5usize..30,
        raw in prop::collection::vec((0usize..64, 0usize..64), 4..80),
    ) {
        check_answer(&graph_from(n, &raw));
    }

    #[test]
    fn planar_grids_are_planar(
        w in 2usize..9,
        h in 2usize..9,
        bits in prop::collection::vec(any::<bool>(), 1..64),
    ) {
        let g = grid_graph(w, h, &bits);
        prop_assert!(embed(&g).is_ok());
        check_answer(&g);
    }
}

#[test]
fn knit_graphs_are_planar_and_drawn_without_crossings() {
    let dict = StitchDictionary::default();
    let cfg = EdgeLengthConfig::default();
    for text in [
        "co 5\nrow: k5\nrow: p5\nrow: k5",
        "co 6\nrow: k1, *yo, k2tog* x2, k1\nrow: p6",
        "co 6\nrow: k3, turn\nrow: p3\nrow: k6",
        "co 4\nrow: k1, kfb, kfb, k1\nrow: k2tog x3",
        "co 5\nrow: k1, sl1-k2-psso, k1\nrow: k3",
    ] {
        check_answer(&convert(&parse(text).unwrap(), &dict, &cfg).unwrap());
    }
    for rows in [5, 17, 35] {
        let p = gen_triangle(TriangleParams::new(rows)).unwrap();
        check_answer(&convert(&p, &dict, &cfg).unwrap());
    }
}

#[test]
fn every_outer_face_choice_is_crossing_free() {
    let p = gen_triangle(TriangleParams::new(4)).unwrap();
    let g = convert(
        &p,
        &StitchDictionary::default(),
        &EdgeLengthConfig::default(),
    )
    .unwrap();
    let emb = embed(&g).unwrap();
    for f in 0..emb.faces().len() {
        let grid = grid_coordinates(&emb, Some(f)).unwrap();
        let layout = Layout::from_points(
            &grid
                .iter()
                .map(|&(x, y)| Point::new(x as f64, y as f64))
                .collect::<Vec<_>>(),
        );
        assert_eq!(count_crossings(&layout, &g).unwrap(), 0, "outer face {f}");
    }
}

#[test]
fn k33_witness_smooths_to_k33() {
    // K3,3 with every edge subdivided once
    let mut pairs = Vec::new();
    let mut next = 7;
    for a in 1..=3 {
        for b in 4..=6 {
            pairs.push((a, next));
            pairs.push((b, next));
            next += 1;
        }
    }
    let g = from_pairs(next as usize - 1, &pairs).unwrap();
    let w = kuratowski_witness(&g).unwrap();
    assert_eq!(w.len(), 18);
    assert!(is_kuratowski(&w));
}
