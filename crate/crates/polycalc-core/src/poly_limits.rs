//! Connected limits of diagrams of cartesian morphisms.
//!
//! Positions are computed as the limit of the position sets; directions at
//! a limit tuple are pulled back from a reference node. The cartesian
//! edges transport direction sets bijectively, so the choice of node does
//! not matter, but around a cycle the transports must agree; this is
//! asserted, and a diagnostic error is raised when it fails.

use crate::budget::{mul128, Budget};
use crate::error::{Error, Result};
use crate::finset::FinFn;
use crate::label::Label;
use crate::poly::{Poly, PolyMor};
use std::collections::BTreeMap;

/// Equalizer of a parallel pair of cartesian morphisms, presented as the
/// sub-polynomial of the domain on the positions where the pair agrees.
#[derive(Debug, Clone)]
pub struct PolyEqualizer {
    pub obj: Poly,
    pub include: PolyMor,
}

pub fn equalizer_poly(phi: &PolyMor, psi: &PolyMor) -> Result<PolyEqualizer> {
    if phi.dom() != psi.dom() || phi.cod() != psi.cod() {
        return Err(Error::DomainMismatch(
            "equalizer requires a parallel pair".into(),
        ));
    }
    for (name, m) in [("first", phi), ("second", psi)] {
        if !m.classify().cartesian {
            return Err(Error::NonCartesianEdge(format!("{name} leg of the pair")));
        }
    }
    let p = phi.dom();
    let mut entries = Vec::new();
    for i in p.positions().iter() {
        if phi.on_pos().apply(i) != psi.on_pos().apply(i) {
            continue;
        }
        if phi.on_dir(i) != psi.on_dir(i) {
            return Err(Error::InconsistentTransport(format!(
                "the parallel pair agrees on position {i} but transports directions differently"
            )));
        }
        entries.push((i.clone(), p.dirs(i).iter().cloned().collect()));
    }
    let obj = Poly::from_table(entries)?;
    let include = PolyMor::from_fns(&obj, p, |i| i.clone(), |_, d| d.clone())?;
    Ok(PolyEqualizer { obj, include })
}

/// Pullback of a cospan of cartesian morphisms, with pair-labeled
/// positions and directions taken from the first leg's domain.
#[derive(Debug, Clone)]
pub struct PolyPullback {
    pub obj: Poly,
    pub proj1: PolyMor,
    pub proj2: PolyMor,
}

pub fn pullback_poly(phi: &PolyMor, psi: &PolyMor) -> Result<PolyPullback> {
    if phi.cod() != psi.cod() {
        return Err(Error::CodomainMismatch("pullback of polynomials".into()));
    }
    for (name, m) in [("first", phi), ("second", psi)] {
        if !m.classify().cartesian {
            return Err(Error::NonCartesianEdge(format!("{name} leg of the cospan")));
        }
    }
    let p = phi.dom();
    let q = psi.dom();
    let mut entries = Vec::new();
    for i in p.positions().iter() {
        for j in q.positions().iter() {
            if phi.on_pos().apply(i) == psi.on_pos().apply(j) {
                entries.push((
                    Label::pair(i.clone(), j.clone()),
                    p.dirs(i).iter().cloned().collect(),
                ));
            }
        }
    }
    let obj = Poly::from_table(entries)?;
    let proj1 = PolyMor::from_fns(
        &obj,
        p,
        |pos| pos.expect_pair().0.clone(),
        |_, d| d.clone(),
    )?;
    let proj2 = PolyMor::from_fns(
        &obj,
        q,
        |pos| pos.expect_pair().1.clone(),
        |pos, e| {
            let (i, j) = pos.expect_pair();
            // Transport q[J] → r[..] → p[I] through the cospan.
            let via = psi
                .on_dir(j)
                .inverse()
                .expect("cartesian leg")
                .then(phi.on_dir(i))
                .expect("composable");
            via.apply(e).clone()
        },
    )?;
    Ok(PolyPullback { obj, proj1, proj2 })
}

/// A finite diagram of polynomials and cartesian morphisms between them.
#[derive(Debug, Clone)]
pub struct Diagram {
    pub nodes: Vec<Poly>,
    /// `(from, to, morphism)` with `morphism : nodes[from] → nodes[to]`.
    pub edges: Vec<(usize, usize, PolyMor)>,
}

/// A limit cone over a diagram of cartesian morphisms.
#[derive(Debug, Clone)]
pub struct PolyLimit {
    pub obj: Poly,
    /// One cartesian projection per node.
    pub legs: Vec<PolyMor>,
}

/// Limit of a finite connected diagram in which every edge is cartesian.
///
/// Positions are tuples over all nodes, compatible with every edge;
/// directions are taken from node 0 and transported along a spanning tree.
/// Every edge is then checked against the transported cone; disagreement
/// around a cycle is reported as an error.
pub fn cartesian_limit(diagram: &Diagram, budget: Budget) -> Result<PolyLimit> {
    let n = diagram.nodes.len();
    if n == 0 {
        return Err(Error::invalid("diagram", "no nodes"));
    }
    for (from, to, m) in &diagram.edges {
        if *from >= n || *to >= n {
            return Err(Error::invalid("diagram", "edge endpoint out of range"));
        }
        if m.dom() != &diagram.nodes[*from] || m.cod() != &diagram.nodes[*to] {
            return Err(Error::invalid(
                "diagram",
                format!("edge {from}→{to} does not match its endpoints"),
            ));
        }
        if !m.classify().cartesian {
            return Err(Error::NonCartesianEdge(format!("edge {from}→{to}")));
        }
    }
    // Connectivity (as an undirected graph).
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for (a, b, _) in &diagram.edges {
            for (x, y) in [(*a, *b), (*b, *a)] {
                if x == u && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::DisconnectedDiagram);
    }

    // Position tuples.
    budget.charge(
        mul128(
            diagram
                .nodes
                .iter()
                .map(|p| p.positions().len() as u128),
        ),
        "limit position tuples",
    )?;
    let mut tuples: Vec<Vec<Label>> = vec![Vec::new()];
    for node in &diagram.nodes {
        let mut next = Vec::new();
        for t in &tuples {
            for pos in node.positions().iter() {
                let mut t2 = t.clone();
                t2.push(pos.clone());
                next.push(t2);
            }
        }
        tuples = next;
    }
    tuples.retain(|t| {
        diagram
            .edges
            .iter()
            .all(|(from, to, m)| m.on_pos().apply(&t[*from]) == &t[*to])
    });

    // Spanning tree from node 0: parent[j] = (parent node, edge index,
    // true when the edge points from parent to child).
    let mut parent: Vec<Option<(usize, usize, bool)>> = vec![None; n];
    let mut order = vec![0usize];
    let mut visited = vec![false; n];
    visited[0] = true;
    let mut qi = 0;
    while qi < order.len() {
        let u = order[qi];
        qi += 1;
        for (ei, (a, b, _)) in diagram.edges.iter().enumerate() {
            if *a == u && !visited[*b] {
                visited[*b] = true;
                parent[*b] = Some((u, ei, true));
                order.push(*b);
            }
            if *b == u && !visited[*a] {
                visited[*a] = true;
                parent[*a] = Some((u, ei, false));
                order.push(*a);
            }
        }
    }

    // Transport dirs(node j at t_j) → dirs(node 0 at t_0) along the tree.
    let transport = |j: usize, t: &[Label]| -> Result<FinFn> {
        let mut cur = j;
        let mut acc = FinFn::identity(diagram.nodes[j].dirs(&t[j]));
        while let Some((par, ei, forward)) = parent[cur] {
            let (_, _, m) = &diagram.edges[ei];
            let step = if forward {
                // Edge parent → cur: on_dir at t[parent] maps
                // dirs(cur at t[cur]) → dirs(parent at t[parent]).
                m.on_dir(&t[par]).clone()
            } else {
                // Edge cur → parent: invert.
                m.on_dir(&t[cur]).inverse()?
            };
            acc = acc.then(&step).map_err(|_| {
                Error::InconsistentTransport("transport steps do not compose".into())
            })?;
            cur = par;
        }
        Ok(acc)
    };

    let mut entries = Vec::new();
    let mut tuple_labels = Vec::new();
    for t in &tuples {
        let label = Label::seq(t.clone());
        entries.push((
            label.clone(),
            diagram.nodes[0].dirs(&t[0]).iter().cloned().collect(),
        ));
        tuple_labels.push((label, t.clone()));
    }
    let obj = Poly::from_table(entries)?;

    let mut legs = Vec::new();
    for j in 0..n {
        let mut on_pos = BTreeMap::new();
        let mut on_dir = BTreeMap::new();
        for (label, t) in &tuple_labels {
            on_pos.insert(label.clone(), t[j].clone());
            // leg_j on directions: dirs(node j at t_j) → limit dirs = node 0 dirs.
            on_dir.insert(label.clone(), transport(j, t)?);
        }
        let leg = PolyMor::new(
            obj.clone(),
            diagram.nodes[j].clone(),
            FinFn::new(
                obj.positions().clone(),
                diagram.nodes[j].positions().clone(),
                on_pos,
            )?,
            on_dir,
        )?;
        legs.push(leg);
    }

    // Cone property: every edge must commute with the transported legs.
    for (from, to, m) in &diagram.edges {
        let via = legs[*from].then(m)?;
        if via != legs[*to] {
            return Err(Error::InconsistentTransport(format!(
                "edge {from}→{to} disagrees with the spanning-tree transport; \
                 the diagram's direction bijections do not commute around a cycle"
            )));
        }
    }
    Ok(PolyLimit { obj, legs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::hom_enumerate;

    #[test]
    fn equalizer_of_equal_pair_is_domain() {
        let p = Poly::numeric(&[2, 1]);
        let q = Poly::numeric(&[2, 1, 1]);
        let phi = hom_enumerate(&p, &q, Budget::default())
            .unwrap()
            .into_iter()
            .find(|m| m.classify().cartesian)
            .unwrap();
        let eq = equalizer_poly(&phi, &phi).unwrap();
        assert_eq!(&eq.obj, &p);
        assert_eq!(eq.include, PolyMor::identity(&p));
    }

    #[test]
    fn equalizer_of_identity_and_swap_is_zero() {
        let p = Poly::numeric(&[1, 1]);
        let id = PolyMor::identity(&p);
        let swap = PolyMor::from_fns(
            &p,
            &p,
            |pos| match pos {
                Label::Int(0) => Label::int(1),
                _ => Label::int(0),
            },
            |_, d| d.clone(),
        )
        .unwrap();
        let eq = equalizer_poly(&id, &swap).unwrap();
        assert_eq!(eq.obj.positions().len(), 0);
    }

    #[test]
    fn direction_disagreement_is_diagnosed() {
        // Identity versus the direction swap on y²: positions agree
        // everywhere but transports differ, which the formula-based
        // equalizer reports rather than silently quotienting.
        let p = Poly::numeric(&[2]);
        let id = PolyMor::identity(&p);
        let twist = PolyMor::from_fns(
            &p,
            &p,
            |pos| pos.clone(),
            |_, d| match d {
                Label::Int(0) => Label::int(1),
                _ => Label::int(0),
            },
        )
        .unwrap();
        assert!(matches!(
            equalizer_poly(&id, &twist),
            Err(Error::InconsistentTransport(_))
        ));
    }

    #[test]
    fn pullback_of_cartesian_maps_into_2y2() {
        // Both legs cartesian into 2y²: the position set is the pullback of
        // the position maps and every fiber has size 2.
        let r = Poly::numeric(&[2, 2]);
        let p = Poly::numeric(&[2, 2]);
        let phi = PolyMor::from_fns(&p, &r, |pos| pos.clone(), |_, d| d.clone()).unwrap();
        let psi = PolyMor::from_fns(
            &p,
            &r,
            |pos| match pos {
                Label::Int(n) => Label::int(1 - n),
                _ => unreachable!(),
            },
            |_, d| d.clone(),
        )
        .unwrap();
        let pb = pullback_poly(&phi, &psi).unwrap();
        // Position pullback: pairs (i, j) with i = 1 - j: 2 of them.
        assert_eq!(pb.obj.positions().len(), 2);
        assert!(pb.obj.positions().iter().all(|t| pb.obj.dirs(t).len() == 2));
        // Cone commutes.
        assert_eq!(
            pb.proj1.then(&phi).unwrap(),
            pb.proj2.then(&psi).unwrap()
        );
        // Universal property over probe polynomials: every competing cone
        // factors uniquely.
        let probe = Poly::numeric(&[2]);
        let budget = Budget::default();
        let into_pb = hom_enumerate(&probe, &pb.obj, budget).unwrap();
        for u in hom_enumerate(&probe, &p, budget).unwrap() {
            for v in hom_enumerate(&probe, &p, budget).unwrap() {
                if u.then(&phi).unwrap() != v.then(&psi).unwrap() {
                    continue;
                }
                let mediating: Vec<&PolyMor> = into_pb
                    .iter()
                    .filter(|m| {
                        m.then(&pb.proj1).unwrap() == u && m.then(&pb.proj2).unwrap() == v
                    })
                    .collect();
                assert_eq!(mediating.len(), 1);
            }
        }
    }

    #[test]
    fn limit_over_parallel_pair_matches_equalizer() {
        let p = Poly::numeric(&[1, 1]);
        let id = PolyMor::identity(&p);
        let swap = PolyMor::from_fns(
            &p,
            &p,
            |pos| match pos {
                Label::Int(0) => Label::int(1),
                _ => Label::int(0),
            },
            |_, d| d.clone(),
        )
        .unwrap();
        let diagram = Diagram {
            nodes: vec![p.clone(), p.clone()],
            edges: vec![(0, 1, id), (0, 1, swap)],
        };
        let lim = cartesian_limit(&diagram, Budget::default()).unwrap();
        assert_eq!(lim.obj.positions().len(), 0);
    }

    #[test]
    fn non_cartesian_edge_is_rejected() {
        let p = Poly::numeric(&[2]);
        let q = Poly::numeric(&[1]);
        let vertical = hom_enumerate(&p, &q, Budget::default())
            .unwrap()
            .into_iter()
            .next()
            .unwrap();
        let diagram = Diagram {
            nodes: vec![p, q],
            edges: vec![(0, 1, vertical)],
        };
        assert!(matches!(
            cartesian_limit(&diagram, Budget::default()),
            Err(Error::NonCartesianEdge(_))
        ));
    }
}
