use std::collections::HashSet;

use crate::error::{Error, Result};

use super::{EdgeKind, KnitGraph, NodeId};

/// The creation order `1..=n`, after checking that every consecutive pair is
/// joined by a yarn edge.
pub fn hamiltonian_path(g: &KnitGraph) -> Result<Vec<NodeId>> {
    let yarn: HashSet<(NodeId, NodeId)> = g
        .edges()
        .iter()
        .filter(|e| e.kind == EdgeKind::Yarn)
        .map(|e| (e.u.min(e.v), e.u.max(e.v)))
        .collect();
    let n = g.node_count() as NodeId;
    for i in 1..n {
        if !yarn.contains(&(i, i + 1)) {
            return Err(Error::NotKnittable(i, i + 1));
        }
    }
    Ok((1..=n).collect())
}

/// The path of the yarn: follow the creation order and, at each node, first
/// run out and back along every loop edge not yet walked (lowest neighbour
/// first). Each yarn edge is walked once and each loop edge twice.
pub fn yarn_path(g: &KnitGraph) -> Result<Vec<NodeId>> {
    let order = hamiltonian_path(g)?;
    let mut loops: Vec<Vec<(NodeId, usize)>> = vec![Vec::new(); g.node_count() + 1];
    for (i, e) in g.edges().iter().enumerate() {
        if e.kind == EdgeKind::Loop {
            loops[e.u as usize].push((e.v, i));
            loops[e.v as usize].push((e.u, i));
        }
    }
    let mut walked = vec![false; g.edge_count()];
    let mut walk = Vec::with_capacity(order.len());
    for node in order {
        walk.push(node);
        let incident = &mut loops[node as usize];
        incident.sort_unstable();
        for &(nbr, edge) in incident.iter() {
            if !walked[edge] {
                walked[edge] = true;
                walk.push(nbr);
                walk.push(node);
            }
        }
    }
    Ok(walk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{convert, from_pairs};
    use crate::pattern::parse;
    use crate::stitches::{EdgeLengthConfig, StitchDictionary};
    use std::collections::HashMap;

    fn build(text: &str) -> KnitGraph {
        convert(
            &parse(text).unwrap(),
            &StitchDictionary::default(),
            &EdgeLengthConfig::default(),
        )
        .unwrap()
    }

    #[test]
    fn creation_order() {
        assert_eq!(
            hamiltonian_path(&build("co 3\nrow: k3")).unwrap(),
            vec![1, 2, 3, 4, 5, 6]
        );
        assert_eq!(hamiltonian_path(&build("co 1")).unwrap(), vec![1]);
        let broken = from_pairs(3, &[(1, 2), (1, 3)]).unwrap();
        assert_eq!(hamiltonian_path(&broken), Err(Error::NotKnittable(2, 3)));
    }

    #[test]
    fn cast_on_only_yarn_path() {
        assert_eq!(yarn_path(&build("co 2")).unwrap(), vec![1, 2]);
    }

    #[test]
    fn yarn_path_doubles_loops() {
        let g = build("co 2\nrow: k2");
        let walk = yarn_path(&g).unwrap();
        // independent multiset check: count walk steps per unordered pair
        let mut steps: HashMap<(NodeId, NodeId), usize> = HashMap::new();
        for w in walk.windows(2) {
            *steps.entry((w[0].min(w[1]), w[0].max(w[1]))).or_default() += 1;
        }
        let mut expected: HashMap<(NodeId, NodeId), usize> = HashMap::new();
        for e in g.edges() {
            let k = if e.kind == EdgeKind::Loop { 2 } else { 1 };
            *expected.entry((e.u.min(e.v), e.u.max(e.v))).or_default() += k;
        }
        assert_eq!(steps, expected);
        assert_eq!(steps[&(1, 4)], 2);
        assert_eq!(steps[&(2, 3)], 3); // yarn once + loop twice
        assert_eq!(walk.first(), Some(&1));
        assert_eq!(walk.last(), Some(&4));
    }
}
