//! Duoidal interchange, the closure for `⊗`, the right coclosure and
//! indexed left coclosure for `◁`, and the derived comparison maps, each
//! with explicit transposition bijections.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet};
use crate::label::Label;
use crate::poly::{hom_count, hom_enumerate, Poly, PolyMor};
use crate::poly_ops::{
    compose, compose_pos_parts, mor_compose_product, mor_tensor, tensor, tensor_braiding,
};

/// Interchange `(p1 ◁ p2) ⊗ (q1 ◁ q2) → (p1 ⊗ q1) ◁ (p2 ⊗ q2)`:
/// on positions `(I, J, K, L) ↦ (I, K, J × L)`, bijective on directions.
pub fn interchange(
    p1: &Poly,
    p2: &Poly,
    q1: &Poly,
    q2: &Poly,
    budget: Budget,
) -> Result<PolyMor> {
    let dom = tensor(&compose(p1, p2, budget)?, &compose(q1, q2, budget)?);
    let cod = compose(&tensor(p1, q1), &tensor(p2, q2), budget)?;
    let p1q1 = tensor(p1, q1);
    let p2q2 = tensor(p2, q2);
    PolyMor::from_fns(
        &dom,
        &cod,
        |pos| {
            let (left, right) = pos.expect_pair();
            let (i, jf) = left.expect_pair();
            let (k, lf) = right.expect_pair();
            let j = FinFn::from_table_label(p1.dirs(i), p2.positions(), jf)
                .expect("composition table");
            let l = FinFn::from_table_label(q1.dirs(k), q2.positions(), lf)
                .expect("composition table");
            let pos2 = Label::pair(i.clone(), k.clone());
            let m = FinFn::from_fn(
                p1q1.dirs(&pos2).clone(),
                p2q2.positions().clone(),
                |de| {
                    let (d, e) = de.expect_pair();
                    Label::pair(j.apply(d).clone(), l.apply(e).clone())
                },
            )
            .expect("total");
            Label::pair(pos2, m.table_label())
        },
        |_, dir| {
            // Codomain direction ((d, e), (d2, e2)) with d ∈ p1[I],
            // e ∈ q1[K], d2 ∈ p2[J d], e2 ∈ q2[L e]; the domain direction
            // is ((d, d2), (e, e2)).
            let (de, d2e2) = dir.expect_pair();
            let (d, e) = de.expect_pair();
            let (d2, e2) = d2e2.expect_pair();
            Label::pair(
                Label::pair(d.clone(), d2.clone()),
                Label::pair(e.clone(), e2.clone()),
            )
        },
    )
}

/// Closure `[p, q]` for the tensor: positions are the morphisms `p → q`
/// (canonically serialized), the direction set at `φ` is
/// `⨿_{I ∈ P} q[φ₁ I]`, labeled `(I, j)`.
pub fn closure(p: &Poly, q: &Poly, budget: Budget) -> Result<Poly> {
    let max_q_dirs = q
        .positions()
        .iter()
        .map(|j| q.dirs(j).len())
        .max()
        .unwrap_or(0) as u128;
    let cells = 1 + p.positions().len() as u128 * (1 + max_q_dirs);
    budget.charge(hom_count(p, q).saturating_mul(cells), "tensor closure")?;
    let homs = hom_enumerate(p, q, budget)?;
    let mut entries = Vec::new();
    for phi in &homs {
        let mut ds = Vec::new();
        for i in p.positions().iter() {
            let j_pos = phi.on_pos().apply(i);
            for j in q.dirs(j_pos).iter() {
                ds.push(Label::pair(i.clone(), j.clone()));
            }
        }
        entries.push((phi.as_label(), ds));
    }
    Poly::from_table(entries)
}

/// Evaluation `p ⊗ [p, q] → q`.
pub fn closure_eval(p: &Poly, q: &Poly, budget: Budget) -> Result<PolyMor> {
    let cl = closure(p, q, budget)?;
    let dom = tensor(p, &cl);
    PolyMor::from_fns(
        &dom,
        q,
        |pos| {
            let (i, phi_label) = pos.expect_pair();
            let phi = PolyMor::from_label(p, q, phi_label).expect("closure position");
            phi.on_pos().apply(i).clone()
        },
        |pos, j| {
            let (i, phi_label) = pos.expect_pair();
            let phi = PolyMor::from_label(p, q, phi_label).expect("closure position");
            Label::pair(
                phi.on_dir(i).apply(j).clone(),
                Label::pair(i.clone(), j.clone()),
            )
        },
    )
}

/// Pairing `q → [p, p ⊗ q]`.
pub fn closure_pair(p: &Poly, q: &Poly, budget: Budget) -> Result<PolyMor> {
    let pq = tensor(p, q);
    let cl = closure(p, &pq, budget)?;
    PolyMor::from_fns(
        q,
        &cl,
        |j| {
            // The morphism p → p ⊗ q pairing each position with J.
            let pair_j = PolyMor::from_fns(
                p,
                &pq,
                |i| Label::pair(i.clone(), j.clone()),
                |_, de| de.expect_pair().0.clone(),
            )
            .expect("pairing morphism");
            pair_j.as_label()
        },
        |_, dir| {
            // Directions of [p, p⊗q] at pair_J: (I, (d, e)) ↦ e ∈ q[J].
            let (_, de) = dir.expect_pair();
            de.expect_pair().1.clone()
        },
    )
}

/// Currying `Hom(p ⊗ q, r) → Hom(p, [q, r])`.
pub fn closure_curry(phi: &PolyMor, p: &Poly, q: &Poly, r: &Poly, budget: Budget) -> Result<PolyMor> {
    let expected_dom = tensor(p, q);
    if phi.dom() != &expected_dom || phi.cod() != r {
        return Err(Error::DomainMismatch("curry expects φ : p ⊗ q → r".into()));
    }
    let cl = closure(q, r, budget)?;
    PolyMor::from_fns(
        p,
        &cl,
        |i| {
            let psi = PolyMor::from_fns(
                q,
                r,
                |j| phi.on_pos().apply(&Label::pair(i.clone(), j.clone())).clone(),
                |j, k| {
                    let back = phi.on_dir(&Label::pair(i.clone(), j.clone())).apply(k);
                    back.expect_pair().1.clone()
                },
            )
            .expect("curried morphism");
            psi.as_label()
        },
        |i, dir| {
            let (j, k) = dir.expect_pair();
            let back = phi.on_dir(&Label::pair(i.clone(), j.clone())).apply(k);
            back.expect_pair().0.clone()
        },
    )
}

/// Uncurrying `Hom(p, [q, r]) → Hom(p ⊗ q, r)`.
pub fn closure_uncurry(
    psi: &PolyMor,
    p: &Poly,
    q: &Poly,
    r: &Poly,
    budget: Budget,
) -> Result<PolyMor> {
    let cl = closure(q, r, budget)?;
    if psi.dom() != p || psi.cod() != &cl {
        return Err(Error::DomainMismatch(
            "uncurry expects ψ : p → [q, r]".into(),
        ));
    }
    let dom = tensor(p, q);
    PolyMor::from_fns(
        &dom,
        r,
        |pos| {
            let (i, j) = pos.expect_pair();
            let phi_i = PolyMor::from_label(q, r, psi.on_pos().apply(i)).expect("closure position");
            phi_i.on_pos().apply(j).clone()
        },
        |pos, k| {
            let (i, j) = pos.expect_pair();
            let phi_i = PolyMor::from_label(q, r, psi.on_pos().apply(i)).expect("closure position");
            let d = psi.on_dir(i).apply(&Label::pair(j.clone(), k.clone()));
            let e = phi_i.on_dir(j).apply(k);
            Label::pair(d.clone(), e.clone())
        },
    )
}

/// Covariant action of `[p, −]` on a morphism `φ : q → q'`.
pub fn closure_map_right(p: &Poly, phi: &PolyMor, budget: Budget) -> Result<PolyMor> {
    let q = phi.dom();
    let q2 = phi.cod();
    let dom = closure(p, q, budget)?;
    let cod = closure(p, q2, budget)?;
    PolyMor::from_fns(
        &dom,
        &cod,
        |psi_label| {
            let psi = PolyMor::from_label(p, q, psi_label).expect("closure position");
            psi.then(phi).expect("composable").as_label()
        },
        |psi_label, dir| {
            let psi = PolyMor::from_label(p, q, psi_label).expect("closure position");
            let (i, j2) = dir.expect_pair();
            let j = phi.on_dir(psi.on_pos().apply(i)).apply(j2);
            Label::pair(i.clone(), j.clone())
        },
    )
}

/// Contravariant action of `[−, r]` on a morphism `φ : p' → p`.
pub fn closure_map_left(phi: &PolyMor, r: &Poly, budget: Budget) -> Result<PolyMor> {
    let p = phi.cod();
    let p2 = phi.dom();
    let dom = closure(p, r, budget)?;
    let cod = closure(p2, r, budget)?;
    PolyMor::from_fns(
        &dom,
        &cod,
        |psi_label| {
            let psi = PolyMor::from_label(p, r, psi_label).expect("closure position");
            phi.then(&psi).expect("composable").as_label()
        },
        |_, dir| {
            let (i2, j) = dir.expect_pair();
            Label::pair(phi.on_pos().apply(i2).clone(), j.clone())
        },
    )
}

/// Right coclosure `⟨p | q⟩`: positions `P`, direction set at `I` is
/// `⨿_{J ∈ Q} p[I]^{q[J]}`, labeled `(J, table)`.
pub fn right_coclosure(p: &Poly, q: &Poly, budget: Budget) -> Result<Poly> {
    let mut entries = Vec::new();
    for i in p.positions().iter() {
        let mut ds = Vec::new();
        for j in q.positions().iter() {
            for table in crate::finset::all_fns(q.dirs(j), p.dirs(i), budget)? {
                ds.push(Label::pair(j.clone(), table.table_label()));
            }
        }
        entries.push((i.clone(), ds));
    }
    Poly::from_table(entries)
}

/// Transpose `Hom(p, r ◁ q) → Hom(⟨p|q⟩, r)`.
pub fn rc_transpose(
    psi: &PolyMor,
    p: &Poly,
    q: &Poly,
    r: &Poly,
    budget: Budget,
) -> Result<PolyMor> {
    let rq = compose(r, q, budget)?;
    if psi.dom() != p || psi.cod() != &rq {
        return Err(Error::DomainMismatch(
            "transpose expects ψ : p → r ◁ q".into(),
        ));
    }
    let co = right_coclosure(p, q, budget)?;
    PolyMor::from_fns(
        &co,
        r,
        |i| {
            let (k, _) = compose_pos_parts(r, q, psi.on_pos().apply(i));
            k
        },
        |i, k_dir| {
            let (_, g) = compose_pos_parts(r, q, psi.on_pos().apply(i));
            let j = g.apply(k_dir).clone();
            let table = FinFn::from_fn(q.dirs(&j).clone(), p.dirs(i).clone(), |jd| {
                psi.on_dir(i)
                    .apply(&Label::pair(k_dir.clone(), jd.clone()))
                    .clone()
            })
            .expect("total");
            Label::pair(j, table.table_label())
        },
    )
}

/// Inverse transpose `Hom(⟨p|q⟩, r) → Hom(p, r ◁ q)`.
pub fn rc_untranspose(
    phi: &PolyMor,
    p: &Poly,
    q: &Poly,
    r: &Poly,
    budget: Budget,
) -> Result<PolyMor> {
    let co = right_coclosure(p, q, budget)?;
    if phi.dom() != &co || phi.cod() != r {
        return Err(Error::DomainMismatch(
            "transpose expects φ : ⟨p|q⟩ → r".into(),
        ));
    }
    let rq = compose(r, q, budget)?;
    PolyMor::from_fns(
        p,
        &rq,
        |i| {
            let k = phi.on_pos().apply(i).clone();
            let g = FinFn::from_fn(r.dirs(&k).clone(), q.positions().clone(), |kd| {
                phi.on_dir(i).apply(kd).expect_pair().0.clone()
            })
            .expect("total");
            Label::pair(k, g.table_label())
        },
        |i, dir| {
            let (kd, jd) = dir.expect_pair();
            let (j, table) = phi.on_dir(i).apply(kd).expect_pair();
            let t = FinFn::from_table_label(q.dirs(j), p.dirs(i), table).expect("table");
            t.apply(jd).clone()
        },
    )
}

/// Covariant action of `⟨− | q⟩` on a morphism `γ : p' → p`.
pub fn rc_map_left(gamma: &PolyMor, q: &Poly, budget: Budget) -> Result<PolyMor> {
    let p2 = gamma.dom();
    let p = gamma.cod();
    let dom = right_coclosure(p2, q, budget)?;
    let cod = right_coclosure(p, q, budget)?;
    PolyMor::from_fns(
        &dom,
        &cod,
        |i| gamma.on_pos().apply(i).clone(),
        |i, dir| {
            // A codomain direction (J, t : q[J] → p[γ₁ I]) pulls back to
            // (J, t then γ♯).
            let (j, table) = dir.expect_pair();
            let t = FinFn::from_table_label(q.dirs(j), p.dirs(gamma.on_pos().apply(i)), table)
                .expect("table");
            let pulled = t.then(gamma.on_dir(i)).expect("composable");
            Label::pair(j.clone(), pulled.table_label())
        },
    )
}

/// Indexed left coclosure `p ⌢_f q` for a position map `f : P → Q`:
/// positions `⨿_{I ∈ P} q[f I]` labeled `(I, e)`, with directions `p[I]`.
pub fn indexed_coclosure(p: &Poly, f: &FinFn, q: &Poly) -> Result<Poly> {
    if f.dom() != p.positions() || f.cod() != q.positions() {
        return Err(Error::Typing(
            "index must map the positions of p to the positions of q".into(),
        ));
    }
    let mut entries = Vec::new();
    for i in p.positions().iter() {
        for e in q.dirs(f.apply(i)).iter() {
            entries.push((
                Label::pair(i.clone(), e.clone()),
                p.dirs(i).iter().cloned().collect(),
            ));
        }
    }
    Poly::from_table(entries)
}

/// Transpose `Hom(p, q ◁ r) → ⨿_{f : P → Q} Hom(p ⌢_f q, r)`; the index
/// is recovered as the position-level composite.
pub fn ic_transpose(
    psi: &PolyMor,
    p: &Poly,
    q: &Poly,
    r: &Poly,
    budget: Budget,
) -> Result<(FinFn, PolyMor)> {
    let qr = compose(q, r, budget)?;
    if psi.dom() != p || psi.cod() != &qr {
        return Err(Error::DomainMismatch(
            "transpose expects ψ : p → q ◁ r".into(),
        ));
    }
    let f = FinFn::from_fn(p.positions().clone(), q.positions().clone(), |i| {
        compose_pos_parts(q, r, psi.on_pos().apply(i)).0
    })?;
    let frown = indexed_coclosure(p, &f, q)?;
    let phi = PolyMor::from_fns(
        &frown,
        r,
        |pos| {
            let (i, e) = pos.expect_pair();
            let (_, g) = compose_pos_parts(q, r, psi.on_pos().apply(i));
            g.apply(e).clone()
        },
        |pos, rd| {
            let (i, e) = pos.expect_pair();
            psi.on_dir(i).apply(&Label::pair(e.clone(), rd.clone())).clone()
        },
    )?;
    Ok((f, phi))
}

/// Inverse transpose: assemble `ψ : p → q ◁ r` from an index `f` and a
/// morphism `φ : p ⌢_f q → r`.
pub fn ic_untranspose(
    f: &FinFn,
    phi: &PolyMor,
    p: &Poly,
    q: &Poly,
    r: &Poly,
    budget: Budget,
) -> Result<PolyMor> {
    let frown = indexed_coclosure(p, f, q)?;
    if phi.dom() != &frown || phi.cod() != r {
        return Err(Error::DomainMismatch(
            "transpose expects φ : p ⌢_f q → r".into(),
        ));
    }
    let qr = compose(q, r, budget)?;
    PolyMor::from_fns(
        p,
        &qr,
        |i| {
            let j = f.apply(i).clone();
            let g = FinFn::from_fn(q.dirs(&j).clone(), r.positions().clone(), |e| {
                phi.on_pos().apply(&Label::pair(i.clone(), e.clone())).clone()
            })
            .expect("total");
            Label::pair(j, g.table_label())
        },
        |i, dir| {
            let (e, rd) = dir.expect_pair();
            phi.on_dir(&Label::pair(i.clone(), e.clone())).apply(rd).clone()
        },
    )
}

/// Lax compatibility of the closure with composition:
/// `[p1, q1] ◁ [p2, q2] → [p1 ◁ p2, q1 ◁ q2]`, built by transposing
/// `(evaluation ◁ evaluation)` through the interchange.
pub fn closure_compose_lax(
    p1: &Poly,
    q1: &Poly,
    p2: &Poly,
    q2: &Poly,
    budget: Budget,
) -> Result<PolyMor> {
    let cl1 = closure(p1, q1, budget)?;
    let cl2 = closure(p2, q2, budget)?;
    let ev = mor_compose_product(
        &closure_eval(p1, q1, budget)?,
        &closure_eval(p2, q2, budget)?,
        budget,
    )?;
    let zeta = interchange(p1, p2, &cl1, &cl2, budget)?;
    let total = zeta.then(&ev)?;
    let p12 = compose(p1, p2, budget)?;
    let q12 = compose(q1, q2, budget)?;
    let cl12 = compose(&cl1, &cl2, budget)?;
    // `total` has domain (p1 ◁ p2) ⊗ (cl1 ◁ cl2); swap the factors so the
    // closure argument comes first, then curry it away.
    let swapped = tensor_braiding(&cl12, &p12).then(&total)?;
    closure_curry(&swapped, &cl12, &p12, &q12, budget)
}

/// Duoidal comparison of the right coclosure with the tensor:
/// `⟨p1 ⊗ p2 | q1 ⊗ q2⟩ → ⟨p1|q1⟩ ⊗ ⟨p2|q2⟩`, built by tensoring the
/// coclosure units and transposing through the interchange.
pub fn coclosure_tensor_map(
    p1: &Poly,
    q1: &Poly,
    p2: &Poly,
    q2: &Poly,
    budget: Budget,
) -> Result<PolyMor> {
    let co1 = right_coclosure(p1, q1, budget)?;
    let co2 = right_coclosure(p2, q2, budget)?;
    // Units p_i → ⟨p_i|q_i⟩ ◁ q_i as the transposes of the identities.
    let unit1 = rc_untranspose(&PolyMor::identity(&co1), p1, q1, &co1, budget)?;
    let unit2 = rc_untranspose(&PolyMor::identity(&co2), p2, q2, &co2, budget)?;
    let tensored = mor_tensor(&unit1, &unit2);
    let zeta = interchange(&co1, q1, &co2, q2, budget)?;
    let total = tensored.then(&zeta)?;
    let p12 = tensor(p1, p2);
    let q12 = tensor(q1, q2);
    let co12 = tensor(&co1, &co2);
    rc_transpose(&total, &p12, &q12, &co12, budget)
}

/// Natural isomorphism
/// `(p1 ⊗ p2) ⌢_{f1 × f2} (q1 ⊗ q2) ≅ (p1 ⌢_{f1} q1) ⊗ (p2 ⌢_{f2} q2)`.
pub fn frown_tensor_iso(
    p1: &Poly,
    f1: &FinFn,
    q1: &Poly,
    p2: &Poly,
    f2: &FinFn,
    q2: &Poly,
) -> Result<PolyMor> {
    let lhs = indexed_coclosure(&tensor(p1, p2), &f1.product_map(f2), &tensor(q1, q2))?;
    let rhs = tensor(
        &indexed_coclosure(p1, f1, q1)?,
        &indexed_coclosure(p2, f2, q2)?,
    );
    PolyMor::from_fns(
        &lhs,
        &rhs,
        |pos| {
            let (i12, e12) = pos.expect_pair();
            let (i1, i2) = i12.expect_pair();
            let (e1, e2) = e12.expect_pair();
            Label::pair(
                Label::pair(i1.clone(), e1.clone()),
                Label::pair(i2.clone(), e2.clone()),
            )
        },
        |_, d| d.clone(),
    )
}

/// Witness isomorphism `[y, q] ≅ q`.
pub fn closure_unit_iso(q: &Poly, budget: Budget) -> Result<PolyMor> {
    let y = Poly::y();
    let cl = closure(&y, q, budget)?;
    PolyMor::from_fns(
        &cl,
        q,
        |phi_label| {
            let phi = PolyMor::from_label(&y, q, phi_label).expect("closure position");
            phi.on_pos().apply(&Label::unit()).clone()
        },
        |_, j| Label::pair(Label::unit(), j.clone()),
    )
}

/// Witness isomorphism `⟨p | y⟩ ≅ p`.
pub fn coclosure_unit_iso(p: &Poly, budget: Budget) -> Result<PolyMor> {
    let co = right_coclosure(p, &Poly::y(), budget)?;
    PolyMor::from_fns(
        &co,
        p,
        |i| i.clone(),
        |i, d| {
            // p's direction d at I corresponds to the table sending the
            // single y-direction to d.
            let table = FinFn::from_fn(
                FinSet::unit(),
                p.dirs(i).clone(),
                |_| d.clone(),
            )
            .expect("total");
            Label::pair(Label::unit(), table.table_label())
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::iso_check;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn interchange_on_units_is_identity_like() {
        let y = Poly::y();
        let z = interchange(&y, &y, &y, &y, b()).unwrap();
        assert!(z.is_iso());
    }

    #[test]
    fn interchange_is_cartesian() {
        let p1 = Poly::numeric(&[2]);
        let y = Poly::y();
        let z = interchange(&p1, &y, &y, &y, b()).unwrap();
        let c = z.classify();
        assert!(c.cartesian);
        let z2 = interchange(
            &Poly::numeric(&[2, 1]),
            &Poly::numeric(&[1, 0]),
            &Poly::numeric(&[2]),
            &Poly::numeric(&[1, 1]),
            b(),
        )
        .unwrap();
        assert!(z2.classify().cartesian);
    }

    #[test]
    fn interchange_naturality() {
        let p1 = Poly::numeric(&[1, 1]);
        let p2 = Poly::numeric(&[1]);
        let q1 = Poly::numeric(&[2]);
        let q2 = Poly::numeric(&[1, 0]);
        let p1b = Poly::numeric(&[2]);
        let phi = hom_enumerate(&p1b, &p1, b()).unwrap().into_iter().next().unwrap();
        let id2 = PolyMor::identity(&p2);
        let idq1 = PolyMor::identity(&q1);
        let idq2 = PolyMor::identity(&q2);
        let top = mor_tensor(
            &mor_compose_product(&phi, &id2, b()).unwrap(),
            &mor_compose_product(&idq1, &idq2, b()).unwrap(),
        );
        let lhs = top.then(&interchange(&p1, &p2, &q1, &q2, b()).unwrap()).unwrap();
        let bottom = mor_compose_product(
            &mor_tensor(&phi, &idq1),
            &mor_tensor(&id2, &idq2),
            b(),
        )
        .unwrap();
        let rhs = interchange(&p1b, &p2, &q1, &q2, b()).unwrap().then(&bottom).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn closure_counts() {
        let y2 = Poly::numeric(&[2]);
        let two_y = Poly::numeric(&[1, 1]);
        // [y², 2y] = 4y.
        let cl = closure(&y2, &two_y, b()).unwrap();
        assert!(iso_check(&cl, &Poly::numeric(&[1, 1, 1, 1])).is_some());
        // [y², y] = 2y.
        let cl2 = closure(&y2, &Poly::y(), b()).unwrap();
        assert!(iso_check(&cl2, &Poly::numeric(&[1, 1])).is_some());
        // [y, q] ≅ q by the constructed witness.
        let q = Poly::numeric(&[2, 0]);
        let unit = closure_unit_iso(&q, b()).unwrap();
        assert!(unit.is_iso());
        assert!(unit.classify().cartesian);
    }

    #[test]
    fn closure_adjunction_counts_and_roundtrip() {
        let y = Poly::y();
        let y2 = Poly::numeric(&[2]);
        let two_y = Poly::numeric(&[1, 1]);
        // |Hom(y ⊗ y², 2y)| = |Hom(y, [y², 2y])| = 4.
        let lhs = hom_enumerate(&tensor(&y, &y2), &two_y, b()).unwrap();
        let cl = closure(&y2, &two_y, b()).unwrap();
        let rhs = hom_enumerate(&y, &cl, b()).unwrap();
        assert_eq!(lhs.len(), 4);
        assert_eq!(rhs.len(), 4);
        // Round-trip on every element of Hom(y² ⊗ y², 2y).
        let dom = tensor(&y2, &y2);
        for phi in hom_enumerate(&dom, &two_y, b()).unwrap() {
            let curried = closure_curry(&phi, &y2, &y2, &two_y, b()).unwrap();
            let back = closure_uncurry(&curried, &y2, &y2, &two_y, b()).unwrap();
            assert_eq!(back, phi);
        }
        for psi in rhs {
            let unc = closure_uncurry(&psi, &y, &y2, &two_y, b()).unwrap();
            let re = closure_curry(&unc, &y, &y2, &two_y, b()).unwrap();
            assert_eq!(re, psi);
        }
    }

    #[test]
    fn closure_triangle_identities() {
        // For (p, q) = (y², 2y): ε_{p⊗q} ∘ (id_p ⊗ η_q) = id and
        // [p, ε_q] ∘ η_{[p,q]} = id.
        let p = Poly::numeric(&[2]);
        let q = Poly::numeric(&[1, 1]);
        let pq = tensor(&p, &q);
        let eta = closure_pair(&p, &q, b()).unwrap();
        let eps = closure_eval(&p, &pq, b()).unwrap();
        let first = mor_tensor(&PolyMor::identity(&p), &eta).then(&eps).unwrap();
        assert_eq!(first, PolyMor::identity(&pq));
        let cl = closure(&p, &q, b()).unwrap();
        let eta_cl = closure_pair(&p, &cl, b()).unwrap();
        let eps_q = closure_eval(&p, &q, b()).unwrap();
        let map = closure_map_right(&p, &eps_q, b()).unwrap();
        let second = eta_cl.then(&map).unwrap();
        assert_eq!(second, PolyMor::identity(&cl));
    }

    #[test]
    fn eval_reproduces_every_morphism() {
        // The adjunction round-trip through evaluation recovers every
        // morphism in Hom(q ⊗ p, r).
        let p = Poly::numeric(&[2]);
        let q = Poly::numeric(&[1]);
        let r = Poly::numeric(&[1, 1]);
        let qp = tensor(&q, &p);
        for phi in hom_enumerate(&qp, &r, b()).unwrap() {
            // curry in the second variable: φ : q ⊗ p → r, swap to p-first.
            let swap = tensor_braiding(&p, &q);
            let phi_sw = swap.then(&phi).unwrap();
            let curried = closure_curry(&phi_sw, &p, &q, &r, b()).unwrap();
            let back = closure_uncurry(&curried, &p, &q, &r, b()).unwrap();
            assert_eq!(back, phi_sw);
        }
    }

    #[test]
    fn coclosure_formulas() {
        let y2 = Poly::numeric(&[2]);
        let two_y = Poly::numeric(&[1, 1]);
        // ⟨y²|2y⟩ = y⁴.
        let co = right_coclosure(&y2, &two_y, b()).unwrap();
        assert!(iso_check(&co, &Poly::numeric(&[4])).is_some());
        // ⟨2y|y²⟩ = 2y.
        let co2 = right_coclosure(&two_y, &y2, b()).unwrap();
        assert!(iso_check(&co2, &Poly::numeric(&[1, 1])).is_some());
        // ⟨p|y⟩ ≅ p by the constructed witness.
        let p = Poly::numeric(&[2, 0]);
        let unit = coclosure_unit_iso(&p, b()).unwrap();
        assert!(unit.is_iso());
    }

    #[test]
    fn rc_adjunction_counts_and_roundtrip() {
        let y2 = Poly::numeric(&[2]);
        let two_y = Poly::numeric(&[1, 1]);
        let y = Poly::y();
        // |Hom(y², y ◁ 2y)| = |Hom(y⁴, y)| = 4.
        let rq = compose(&y, &two_y, b()).unwrap();
        let lhs = hom_enumerate(&y2, &rq, b()).unwrap();
        let co = right_coclosure(&y2, &two_y, b()).unwrap();
        let rhs = hom_enumerate(&co, &y, b()).unwrap();
        assert_eq!(lhs.len(), 4);
        assert_eq!(rhs.len(), 4);
        for psi in &lhs {
            let t = rc_transpose(psi, &y2, &two_y, &y, b()).unwrap();
            let back = rc_untranspose(&t, &y2, &two_y, &y, b()).unwrap();
            assert_eq!(&back, psi);
        }
        // Round-trip on all of Hom(2y, y² ◁ y).
        let p = Poly::numeric(&[1, 1]);
        let r = Poly::numeric(&[2]);
        let rq2 = compose(&r, &y, b()).unwrap();
        for psi in hom_enumerate(&p, &rq2, b()).unwrap() {
            let t = rc_transpose(&psi, &p, &y, &r, b()).unwrap();
            let back = rc_untranspose(&t, &p, &y, &r, b()).unwrap();
            assert_eq!(back, psi);
        }
        // Unit of the adjunction: transposing the unit returns the identity.
        let unit = rc_untranspose(&PolyMor::identity(&co), &y2, &two_y, &co, b()).unwrap();
        let back = rc_transpose(&unit, &y2, &two_y, &co, b()).unwrap();
        assert_eq!(back, PolyMor::identity(&co));
    }

    #[test]
    fn frown_formulas() {
        // p ⌢_id p = p_* on the nose.
        let p = Poly::numeric(&[2, 1]);
        let idp = FinFn::identity(p.positions());
        let frown = indexed_coclosure(&p, &idp, &p).unwrap();
        let (ps, _) = crate::poly_ops::star(&p);
        assert_eq!(frown, ps);
        // (2y) ⌢_f (y² + y) with f = (0 ↦ position of y², 1 ↦ position of y): 2y + y.
        let two_y = Poly::numeric(&[1, 1]);
        let q = Poly::numeric(&[2, 1]);
        let f = FinFn::from_fn(two_y.positions().clone(), q.positions().clone(), |i| i.clone())
            .unwrap();
        let fr = indexed_coclosure(&two_y, &f, &q).unwrap();
        assert!(iso_check(&fr, &Poly::numeric(&[1, 1, 1])).is_some());
        // p ⌢ y: terminal fibers give back p.
        let y = Poly::y();
        let to_y = FinFn::to_unit(p.positions());
        let fr_y = indexed_coclosure(&p, &to_y, &y).unwrap();
        assert!(iso_check(&fr_y, &p).is_some());
    }

    #[test]
    fn ic_adjunction_partitioned_by_index() {
        // Hom(p, q ◁ r) ≅ ⨿_f Hom(p ⌢_f q, r) for (p,q,r) = (y², 2y, y).
        let p = Poly::numeric(&[2]);
        let q = Poly::numeric(&[1, 1]);
        let r = Poly::y();
        let qr = compose(&q, &r, b()).unwrap();
        let lhs = hom_enumerate(&p, &qr, b()).unwrap();
        let mut rhs = 0usize;
        for f in crate::finset::all_fns(p.positions(), q.positions(), b()).unwrap() {
            let fr = indexed_coclosure(&p, &f, &q).unwrap();
            rhs += hom_enumerate(&fr, &r, b()).unwrap().len();
        }
        assert_eq!(lhs.len(), rhs);
        // The partition is by the recovered index, and round-trips hold.
        for psi in &lhs {
            let (f, phi) = ic_transpose(psi, &p, &q, &r, b()).unwrap();
            let back = ic_untranspose(&f, &phi, &p, &q, &r, b()).unwrap();
            assert_eq!(&back, psi);
        }
        // Round-trip on all of Hom(2y, (y+1) ◁ y).
        let p2 = Poly::numeric(&[1, 1]);
        let q2 = Poly::numeric(&[1, 0]);
        let qr2 = compose(&q2, &r, b()).unwrap();
        for psi in hom_enumerate(&p2, &qr2, b()).unwrap() {
            let (f, phi) = ic_transpose(&psi, &p2, &q2, &r, b()).unwrap();
            let back = ic_untranspose(&f, &phi, &p2, &q2, &r, b()).unwrap();
            assert_eq!(back, psi);
        }
        // q = y: unique index, bijection Hom(p, y ◁ r) ≅ Hom(p ⌢ y, r).
        let y = Poly::y();
        let yr = compose(&y, &r, b()).unwrap();
        let lhs2 = hom_enumerate(&p, &yr, b()).unwrap().len();
        let fy = FinFn::to_unit(p.positions());
        let fr = indexed_coclosure(&p, &fy, &y).unwrap();
        assert_eq!(lhs2, hom_enumerate(&fr, &r, b()).unwrap().len());
    }

    #[test]
    fn frown_naturality_for_cartesian_maps() {
        // For cartesian φ : q → q', p ⌢_f q = p ⌢_{φ₁∘f} q' on the nose.
        let p = Poly::numeric(&[2]);
        let q = Poly::numeric(&[2, 2]);
        let q2 = Poly::numeric(&[2, 2, 2]);
        let phi = hom_enumerate(&q, &q2, b())
            .unwrap()
            .into_iter()
            .find(|m| m.classify().cartesian && {
                // need φ♯ identity-shaped so direction labels agree
                q.positions().iter().all(|i| {
                    m.on_dir(i) == &FinFn::identity(q.dirs(i))
                })
            })
            .unwrap();
        for f in crate::finset::all_fns(p.positions(), q.positions(), b()).unwrap() {
            let lhs = indexed_coclosure(&p, &f, &q).unwrap();
            let f2 = f.then(phi.on_pos()).unwrap();
            let rhs = indexed_coclosure(&p, &f2, &q2).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn closure_lax_map_exists_and_typechecks() {
        let y = Poly::y();
        let lax = closure_compose_lax(&y, &y, &y, &y, b()).unwrap();
        assert!(lax.is_iso());
        let p1 = Poly::numeric(&[2]);
        let q1 = Poly::numeric(&[1, 1]);
        let lax2 = closure_compose_lax(&p1, &q1, &y, &y, b()).unwrap();
        let expect_dom = compose(
            &closure(&p1, &q1, b()).unwrap(),
            &closure(&y, &y, b()).unwrap(),
            b(),
        )
        .unwrap();
        let expect_cod = closure(
            &compose(&p1, &y, b()).unwrap(),
            &compose(&q1, &y, b()).unwrap(),
            b(),
        )
        .unwrap();
        assert_eq!(lax2.dom(), &expect_dom);
        assert_eq!(lax2.cod(), &expect_cod);
    }

    #[test]
    fn coclosure_tensor_map_and_frown_iso() {
        let y = Poly::y();
        let p1 = Poly::numeric(&[1, 1]);
        let p2 = Poly::numeric(&[2]);
        // q1 = q2 = y: both sides ≅ p1 ⊗ p2 and the map is an iso.
        let m = coclosure_tensor_map(&p1, &y, &p2, &y, b()).unwrap();
        assert!(m.is_iso());
        // Non-trivial case exists and typechecks.
        let q1 = Poly::numeric(&[1, 1]);
        let m2 = coclosure_tensor_map(&p1, &q1, &p2, &y, b()).unwrap();
        let lhs = right_coclosure(&tensor(&p1, &p2), &tensor(&q1, &y), b()).unwrap();
        assert_eq!(m2.dom(), &lhs);
        // frown tensor iso.
        let f1 = FinFn::identity(p1.positions());
        let fy = FinFn::to_unit(p2.positions());
        let iso = frown_tensor_iso(&p1, &f1, &p1, &p2, &fy, &y).unwrap();
        assert!(iso.is_iso());
        assert!(iso.classify().cartesian);
    }
}
