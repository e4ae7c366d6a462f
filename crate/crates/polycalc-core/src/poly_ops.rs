//! The two monoidal products on polynomials, their action on morphisms,
//! the associated endofunctor on finite sets, and the coherence
//! isomorphisms as explicit morphisms.
//!
//! Composite constructions produce structured labels: `compose` yields
//! positions `(I, table of f: p[I] → Q)` and directions `(d, e)`;
//! `tensor` yields positions `(I, J)` and directions `(d, e)`. Because
//! labels are nested pairs, associativity and unitality hold only up to
//! explicit relabeling isomorphisms, which are constructed below.

use crate::budget::{mul128, pow128, Budget};
use crate::error::Result;
use crate::finset::{all_fns, FinFn, FinSet};
use crate::label::Label;
use crate::poly::{Poly, PolyMor};

/// Composition product `p ◁ q`: positions are pairs `(I, f : p[I] → Q)`,
/// the direction set at `(I, f)` is `⨿_{d ∈ p[I]} q[f(d)]`.
pub fn compose(p: &Poly, q: &Poly, budget: Budget) -> Result<Poly> {
    // Charge for all cells the result will hold: each position stores an
    // assignment table over p[I], and its direction set has up to
    // |p[I]| · max|q[J]| entries.
    let max_q_dirs = q
        .positions()
        .iter()
        .map(|j| q.dirs(j).len())
        .max()
        .unwrap_or(0) as u128;
    let mut required: u128 = 0;
    for i in p.positions().iter() {
        let count = pow128(q.positions().len() as u128, p.dirs(i).len() as u128);
        let cells = 2 + 2 * p.dirs(i).len() as u128
            + p.dirs(i).len() as u128 * max_q_dirs;
        required = required.saturating_add(count.saturating_mul(cells));
    }
    budget.charge(required, "composition product")?;
    let mut entries = Vec::new();
    for i in p.positions().iter() {
        for f in all_fns(p.dirs(i), q.positions(), budget)? {
            let pos = Label::pair(i.clone(), f.table_label());
            let mut ds = Vec::new();
            for d in p.dirs(i).iter() {
                for e in q.dirs(f.apply(d)).iter() {
                    ds.push(Label::pair(d.clone(), e.clone()));
                }
            }
            entries.push((pos, ds));
        }
    }
    Poly::from_table(entries)
}

/// Recover the table `f : p[I] → Q` stored in a `compose` position label.
pub fn compose_pos_parts(p: &Poly, q: &Poly, pos: &Label) -> (Label, FinFn) {
    let (i, table) = pos.expect_pair();
    let f = FinFn::from_table_label(p.dirs(i), q.positions(), table)
        .expect("composition position stores a valid table");
    (i.clone(), f)
}

/// Dirichlet tensor `p ⊗ q`: positions `P × Q`, directions
/// `p[I] × q[J]`.
pub fn tensor(p: &Poly, q: &Poly) -> Poly {
    let mut entries = Vec::new();
    for i in p.positions().iter() {
        for j in q.positions().iter() {
            let mut ds = Vec::new();
            for d in p.dirs(i).iter() {
                for e in q.dirs(j).iter() {
                    ds.push(Label::pair(d.clone(), e.clone()));
                }
            }
            entries.push((Label::pair(i.clone(), j.clone()), ds));
        }
    }
    Poly::from_table(entries).expect("tensor labels are distinct")
}

/// `◁` on morphisms: `φ ◁ ψ : p ◁ q → p' ◁ q'`.
pub fn mor_compose_product(phi: &PolyMor, psi: &PolyMor, budget: Budget) -> Result<PolyMor> {
    let dom = compose(phi.dom(), psi.dom(), budget)?;
    let cod = compose(phi.cod(), psi.cod(), budget)?;
    let p = phi.dom();
    let q = psi.dom();
    let p2 = phi.cod();
    let q2 = psi.cod();
    PolyMor::from_fns(
        &dom,
        &cod,
        |pos| {
            let (i, f) = compose_pos_parts(p, q, pos);
            let i2 = phi.on_pos().apply(&i).clone();
            let f2 = FinFn::from_fn(p2.dirs(&i2).clone(), q2.positions().clone(), |d2| {
                let d = phi.on_dir(&i).apply(d2);
                psi.on_pos().apply(f.apply(d)).clone()
            })
            .expect("total");
            Label::pair(i2, f2.table_label())
        },
        |pos, dir2| {
            let (i, f) = compose_pos_parts(p, q, pos);
            let (d2, e2) = dir2.expect_pair();
            let d = phi.on_dir(&i).apply(d2).clone();
            let j = f.apply(&d);
            let e = psi.on_dir(j).apply(e2).clone();
            Label::pair(d, e)
        },
    )
}

/// `⊗` on morphisms: `φ ⊗ ψ : p ⊗ q → p' ⊗ q'`.
pub fn mor_tensor(phi: &PolyMor, psi: &PolyMor) -> PolyMor {
    let dom = tensor(phi.dom(), psi.dom());
    let cod = tensor(phi.cod(), psi.cod());
    PolyMor::from_fns(
        &dom,
        &cod,
        |pos| {
            let (i, j) = pos.expect_pair();
            Label::pair(
                phi.on_pos().apply(i).clone(),
                psi.on_pos().apply(j).clone(),
            )
        },
        |pos, dir2| {
            let (i, j) = pos.expect_pair();
            let (d2, e2) = dir2.expect_pair();
            Label::pair(
                phi.on_dir(i).apply(d2).clone(),
                psi.on_dir(j).apply(e2).clone(),
            )
        },
    )
    .expect("tensor of morphisms is well formed")
}

/// Left unitor `y ◁ p → p`.
pub fn compose_lunitor(p: &Poly, budget: Budget) -> Result<PolyMor> {
    let dom = compose(&Poly::y(), p, budget)?;
    let y = Poly::y();
    PolyMor::from_fns(
        &dom,
        p,
        |pos| {
            let (_, f) = compose_pos_parts(&y, p, pos);
            f.apply(&Label::unit()).clone()
        },
        |_, d| Label::pair(Label::unit(), d.clone()),
    )
}

/// Right unitor `p ◁ y → p`.
pub fn compose_runitor(p: &Poly, budget: Budget) -> Result<PolyMor> {
    let dom = compose(p, &Poly::y(), budget)?;
    PolyMor::from_fns(
        &dom,
        p,
        |pos| pos.expect_pair().0.clone(),
        |_, d| Label::pair(d.clone(), Label::unit()),
    )
}

/// Associator `(p ◁ q) ◁ r → p ◁ (q ◁ r)`.
pub fn compose_associator(p: &Poly, q: &Poly, r: &Poly, budget: Budget) -> Result<PolyMor> {
    let pq = compose(p, q, budget)?;
    let qr = compose(q, r, budget)?;
    let dom = compose(&pq, r, budget)?;
    let cod = compose(p, &qr, budget)?;
    PolyMor::from_fns(
        &dom,
        &cod,
        |pos| {
            let (pq_pos, g) = compose_pos_parts(&pq, r, pos);
            let (i, f) = compose_pos_parts(p, q, &pq_pos);
            // h : p[I] → positions(q ◁ r), d ↦ (f d, e ↦ g(d, e)).
            let h = FinFn::from_fn(p.dirs(&i).clone(), qr.positions().clone(), |d| {
                let j = f.apply(d).clone();
                let gd = FinFn::from_fn(q.dirs(&j).clone(), r.positions().clone(), |e| {
                    g.apply(&Label::pair(d.clone(), e.clone())).clone()
                })
                .expect("total");
                Label::pair(j, gd.table_label())
            })
            .expect("total");
            Label::pair(i, h.table_label())
        },
        |_, dir| {
            let (d, ek) = dir.expect_pair();
            let (e, k) = ek.expect_pair();
            Label::pair(Label::pair(d.clone(), e.clone()), k.clone())
        },
    )
}

/// Braiding `p ⊗ q → q ⊗ p`.
pub fn tensor_braiding(p: &Poly, q: &Poly) -> PolyMor {
    let dom = tensor(p, q);
    let cod = tensor(q, p);
    PolyMor::from_fns(
        &dom,
        &cod,
        |pos| {
            let (i, j) = pos.expect_pair();
            Label::pair(j.clone(), i.clone())
        },
        |_, dir| {
            let (e, d) = dir.expect_pair();
            Label::pair(d.clone(), e.clone())
        },
    )
    .expect("braiding is well formed")
}

/// Left unitor `y ⊗ p → p`.
pub fn tensor_lunitor(p: &Poly) -> PolyMor {
    let dom = tensor(&Poly::y(), p);
    PolyMor::from_fns(
        &dom,
        p,
        |pos| pos.expect_pair().1.clone(),
        |_, d| Label::pair(Label::unit(), d.clone()),
    )
    .expect("unitor is well formed")
}

/// Right unitor `p ⊗ y → p`.
pub fn tensor_runitor(p: &Poly) -> PolyMor {
    let dom = tensor(p, &Poly::y());
    PolyMor::from_fns(
        &dom,
        p,
        |pos| pos.expect_pair().0.clone(),
        |_, d| Label::pair(d.clone(), Label::unit()),
    )
    .expect("unitor is well formed")
}

/// Associator `(p ⊗ q) ⊗ r → p ⊗ (q ⊗ r)`.
pub fn tensor_associator(p: &Poly, q: &Poly, r: &Poly) -> PolyMor {
    let dom = tensor(&tensor(p, q), r);
    let cod = tensor(p, &tensor(q, r));
    let reassoc = |l: &Label| {
        let (ij, k) = l.expect_pair();
        let (i, j) = ij.expect_pair();
        Label::pair(i.clone(), Label::pair(j.clone(), k.clone()))
    };
    let unassoc = |l: &Label| {
        let (i, jk) = l.expect_pair();
        let (j, k) = jk.expect_pair();
        Label::pair(Label::pair(i.clone(), j.clone()), k.clone())
    };
    PolyMor::from_fns(&dom, &cod, reassoc, |_, d| unassoc(d))
        .expect("associator is well formed")
}

/// Apply the polynomial endofunctor to a finite set:
/// `P(p)(X) = ⨿_I X^{p[I]}`, with elements labeled `(I, table g)`.
pub fn evaluate(p: &Poly, x: &FinSet, budget: Budget) -> Result<FinSet> {
    let mut required: u128 = 0;
    for i in p.positions().iter() {
        let count = pow128(x.len() as u128, p.dirs(i).len() as u128);
        required = required
            .saturating_add(count.saturating_mul(2 + p.dirs(i).len() as u128));
    }
    budget.charge(required, "polynomial functor evaluation")?;
    let mut elems = Vec::new();
    for i in p.positions().iter() {
        for g in all_fns(p.dirs(i), x, budget)? {
            elems.push(Label::pair(i.clone(), g.table_label()));
        }
    }
    FinSet::new(elems)
}

/// Functorial action on a function `h : X → X'`:
/// `(I, g) ↦ (I, h ∘ g)`.
pub fn evaluate_fn(p: &Poly, h: &FinFn, budget: Budget) -> Result<FinFn> {
    let dom = evaluate(p, h.dom(), budget)?;
    let cod = evaluate(p, h.cod(), budget)?;
    FinFn::from_fn(dom, cod, |el| {
        let (i, table) = el.expect_pair();
        let g = FinFn::from_table_label(p.dirs(i), h.dom(), table).expect("valid table");
        let hg = g.then(h).expect("composable");
        Label::pair(i.clone(), hg.table_label())
    })
}

/// Natural transformation component at `X` induced by a morphism:
/// `(I, g) ↦ (φ₁ I, g ∘ φ♯_I)`.
pub fn evaluate_nat(phi: &PolyMor, x: &FinSet, budget: Budget) -> Result<FinFn> {
    let dom = evaluate(phi.dom(), x, budget)?;
    let cod = evaluate(phi.cod(), x, budget)?;
    let p = phi.dom().clone();
    FinFn::from_fn(dom, cod, |el| {
        let (i, table) = el.expect_pair();
        let g = FinFn::from_table_label(p.dirs(i), x, table).expect("valid table");
        let composed = phi.on_dir(i).then(&g).expect("composable");
        Label::pair(phi.on_pos().apply(i).clone(), composed.table_label())
    })
}

/// Strength `τ : A × P(p)(B) → P(p)(A × B)`,
/// `(a, (I, g)) ↦ (I, d ↦ (a, g d))`.
pub fn strength(p: &Poly, a: &FinSet, b: &FinSet, budget: Budget) -> Result<FinFn> {
    let pb = evaluate(p, b, budget)?;
    let dom = a.product(&pb);
    let cod = evaluate(p, &a.product(b), budget)?;
    FinFn::from_fn(dom, cod, |el| {
        let (av, ig) = el.expect_pair();
        let (i, table) = ig.expect_pair();
        let g = FinFn::from_table_label(p.dirs(i), b, table).expect("valid table");
        let paired = FinFn::from_fn(p.dirs(i).clone(), a.product(b), |d| {
            Label::pair(av.clone(), g.apply(d).clone())
        })
        .expect("total");
        Label::pair(i.clone(), paired.table_label())
    })
}

/// Scalar multiple `A·q`: positions `A × Q`, directions reused from `q`.
pub fn scalar(a: &FinSet, q: &Poly) -> Poly {
    let mut entries = Vec::new();
    for av in a.iter() {
        for j in q.positions().iter() {
            entries.push((
                Label::pair(av.clone(), j.clone()),
                q.dirs(j).iter().cloned().collect(),
            ));
        }
    }
    Poly::from_table(entries).expect("scalar labels are distinct")
}

/// The polynomial on the total space: positions are the pairs
/// `(I, d)` of `p`'s directions, and the direction set at `(I, d)` is
/// `p[I]` again. Returns the canonical cartesian morphism to `p`.
pub fn star(p: &Poly) -> (Poly, PolyMor) {
    let mut entries = Vec::new();
    for i in p.positions().iter() {
        for d in p.dirs(i).iter() {
            entries.push((
                Label::pair(i.clone(), d.clone()),
                p.dirs(i).iter().cloned().collect(),
            ));
        }
    }
    let ps = Poly::from_table(entries).expect("total-space labels are distinct");
    let mor = PolyMor::from_fns(
        &ps,
        p,
        |pos| pos.expect_pair().0.clone(),
        |_, d| d.clone(),
    )
    .expect("projection is cartesian");
    (ps, mor)
}

/// Build a morphism `A·q ≅ Ay ◁ q` witnessing the scalar product as a
/// composition with a linear polynomial.
pub fn scalar_vs_compose(a: &FinSet, q: &Poly, budget: Budget) -> Result<PolyMor> {
    let ay = scalar(a, &Poly::y());
    let lhs = scalar(a, q);
    let rhs = compose(&ay, q, budget)?;
    PolyMor::from_fns(
        &lhs,
        &rhs,
        |pos| {
            let (av, j) = pos.expect_pair();
            let ay_pos = Label::pair(av.clone(), Label::unit());
            let table = FinFn::from_fn(
                ay.dirs(&ay_pos).clone(),
                q.positions().clone(),
                |_| j.clone(),
            )
            .expect("total");
            Label::pair(ay_pos, table.table_label())
        },
        |_, dir| dir.expect_pair().1.clone(),
    )
}

/// Interchange of products on labels: `((a,b),(c,d)) ↦ ((a,c),(b,d))`.
pub fn shuffle_label(l: &Label) -> Label {
    let (ab, cd) = l.expect_pair();
    let (a, b) = ab.expect_pair();
    let (c, d) = cd.expect_pair();
    Label::pair(
        Label::pair(a.clone(), c.clone()),
        Label::pair(b.clone(), d.clone()),
    )
}

/// Candidate count for `compose(p, q)` positions, for budgeting callers.
pub fn compose_position_count(p: &Poly, q: &Poly) -> u128 {
    let mut total: u128 = 0;
    for i in p.positions().iter() {
        total = total.saturating_add(pow128(
            q.positions().len() as u128,
            p.dirs(i).len() as u128,
        ));
    }
    total
}

/// Candidate count for `evaluate(p, x)`, for budgeting callers.
pub fn evaluate_count(p: &Poly, x_len: usize) -> u128 {
    let mut total: u128 = 0;
    for i in p.positions().iter() {
        total = total.saturating_add(pow128(x_len as u128, p.dirs(i).len() as u128));
    }
    total
}

/// Size of `⊗` output for budgeting: positions × largest direction block.
pub fn tensor_size(p: &Poly, q: &Poly) -> u128 {
    mul128([
        (p.positions().len() as u128).max(1),
        (q.positions().len() as u128).max(1),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{hom_enumerate, iso_check};

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn compose_y2_with_2y_is_4y2() {
        // Oracle: |P(p ◁ q)(n)| = |P(p)(P(q)(n))| = (2n)² for n = 0..3.
        let p = Poly::numeric(&[2]);
        let q = Poly::numeric(&[1, 1]);
        let pq = compose(&p, &q, b()).unwrap();
        assert_eq!(pq.positions().len(), 4);
        assert!(pq.positions().iter().all(|pos| pq.dirs(pos).len() == 2));
        for n in 0..=3usize {
            let x = FinSet::ints(n);
            let direct = evaluate(&pq, &x, b()).unwrap().len();
            let nested = evaluate(&p, &evaluate(&q, &x, b()).unwrap(), b()).unwrap().len();
            assert_eq!(direct, nested);
            assert_eq!(direct, (2 * n) * (2 * n));
        }
        assert!(iso_check(&pq, &Poly::numeric(&[2, 2, 2, 2])).is_some());
    }

    #[test]
    fn compose_units() {
        let p = Poly::numeric(&[2, 0, 1]);
        let lu = compose_lunitor(&p, b()).unwrap();
        let ru = compose_runitor(&p, b()).unwrap();
        assert!(lu.is_iso());
        assert!(ru.is_iso());
    }

    #[test]
    fn compose_with_zero_keeps_constant_positions() {
        // (y² + 1) ◁ 0: only the direction-free position survives.
        // Oracle: |P(p)(∅)| counts positions with empty direction sets.
        let p = Poly::numeric(&[2, 0]);
        let z = Poly::zero();
        let pz = compose(&p, &z, b()).unwrap();
        assert_eq!(pz.positions().len(), 1);
        assert_eq!(evaluate(&p, &FinSet::empty(), b()).unwrap().len(), 1);
        let zero_first = compose(&z, &p, b()).unwrap();
        assert_eq!(zero_first.positions().len(), 0);
    }

    #[test]
    fn tensor_formula() {
        // y² ⊗ (y + 1) ≅ y² + 1·y⁰·… : positions multiply, directions
        // multiply fiberwise.
        let p = Poly::numeric(&[2]);
        let q = Poly::numeric(&[1, 0]);
        let t = tensor(&p, &q);
        assert!(iso_check(&t, &Poly::numeric(&[2, 0])).is_some());
        let six = tensor(&Poly::numeric(&[1, 1]), &Poly::numeric(&[1, 1, 1]));
        assert!(iso_check(&six, &Poly::numeric(&[1; 6])).is_some());
        let unit = tensor_runitor(&p);
        assert!(unit.is_iso());
    }

    #[test]
    fn braiding_and_hexagon() {
        let p = Poly::numeric(&[2]);
        let q = Poly::numeric(&[1, 1]);
        let r = Poly::numeric(&[0, 1]);
        let s = tensor_braiding(&p, &q);
        let back = tensor_braiding(&q, &p);
        assert_eq!(
            s.then(&back).unwrap(),
            PolyMor::identity(&tensor(&p, &q))
        );
        // Hexagon: α ; σ ; α = (σ ⊗ id) ; α ; (id ⊗ σ).
        let lhs = tensor_associator(&p, &q, &r)
            .then(&tensor_braiding(&p, &tensor(&q, &r)))
            .unwrap()
            .then(&tensor_associator(&q, &r, &p))
            .unwrap();
        let rhs = mor_tensor(&tensor_braiding(&p, &q), &PolyMor::identity(&r))
            .then(&tensor_associator(&q, &p, &r))
            .unwrap()
            .then(&mor_tensor(&PolyMor::identity(&q), &tensor_braiding(&p, &r)))
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluate_counts() {
        // P(y² + 1)({1,2,3}) has 3² + 3⁰ = 10 elements.
        let p = Poly::numeric(&[2, 0]);
        assert_eq!(evaluate(&p, &FinSet::ints(3), b()).unwrap().len(), 10);
        // P(2y)(∅) = ∅.
        let q = Poly::numeric(&[1, 1]);
        assert!(evaluate(&q, &FinSet::empty(), b()).unwrap().is_empty());
        // P(y)(X) = X.
        assert_eq!(evaluate(&Poly::y(), &FinSet::ints(3), b()).unwrap().len(), 3);
    }

    #[test]
    fn naturality_square_exhaustive() {
        // For every φ : y² → 2y and h : 2 → 3 the square commutes.
        let p = Poly::numeric(&[2]);
        let q = Poly::numeric(&[1, 1]);
        let homs = hom_enumerate(&p, &q, b()).unwrap();
        assert_eq!(homs.len(), 4);
        let two = FinSet::ints(2);
        let three = FinSet::ints(3);
        for h in all_fns(&two, &three, b()).unwrap() {
            for phi in &homs {
                let left = evaluate_nat(phi, &two, b())
                    .unwrap()
                    .then(&evaluate_fn(phi.cod(), &h, b()).unwrap())
                    .unwrap();
                let right = evaluate_fn(phi.dom(), &h, b())
                    .unwrap()
                    .then(&evaluate_nat(phi, &three, b()).unwrap())
                    .unwrap();
                assert_eq!(left, right);
            }
        }
    }

    #[test]
    fn nat_is_functorial() {
        let p = Poly::numeric(&[2]);
        let q = Poly::numeric(&[1, 1]);
        let r = Poly::numeric(&[1]);
        let x = FinSet::ints(2);
        assert_eq!(
            evaluate_nat(&PolyMor::identity(&p), &x, b()).unwrap(),
            FinFn::identity(&evaluate(&p, &x, b()).unwrap())
        );
        for phi in hom_enumerate(&p, &q, b()).unwrap() {
            for psi in hom_enumerate(&q, &r, b()).unwrap() {
                let composed = evaluate_nat(&phi.then(&psi).unwrap(), &x, b()).unwrap();
                let stepwise = evaluate_nat(&phi, &x, b())
                    .unwrap()
                    .then(&evaluate_nat(&psi, &x, b()).unwrap())
                    .unwrap();
                assert_eq!(composed, stepwise);
            }
        }
    }

    #[test]
    fn strength_unit_and_injectivity() {
        let p = Poly::numeric(&[2]);
        // τ_{1,B} is the identity up to unitor relabeling.
        let one = FinSet::unit();
        let bset = FinSet::ints(2);
        let tau = strength(&p, &one, &bset, b()).unwrap();
        // Strip the 1-component on both sides and compare.
        for el in tau.dom().iter() {
            let (_, ig) = el.expect_pair();
            let out = tau.apply(el);
            let (i2, table) = out.expect_pair();
            let (i, gt) = ig.expect_pair();
            assert_eq!(i, i2);
            let g = FinFn::from_table_label(p.dirs(i), &bset, gt).unwrap();
            let g2 = FinFn::from_table_label(p.dirs(i), &one.product(&bset), table).unwrap();
            for d in p.dirs(i).iter() {
                assert_eq!(
                    g2.apply(d),
                    &Label::pair(Label::unit(), g.apply(d).clone())
                );
            }
        }
        // p = y², A = 2, B = 1: τ injective, image 2 of 4.
        let a = FinSet::ints(2);
        let bone = FinSet::ints(1);
        let tau2 = strength(&p, &a, &bone, b()).unwrap();
        assert!(tau2.is_injective());
        assert_eq!(tau2.dom().len(), 2);
        assert_eq!(tau2.cod().len(), 4);
    }

    #[test]
    fn strength_composition_axiom() {
        // τ_{A×A',B} = τ_{A,A'×B} ∘ (id_A × τ_{A',B}) up to product
        // relabeling, exhaustively for sizes ≤ 2.
        for (na, nb, nc) in [(1usize, 1usize, 1usize), (2, 1, 2), (2, 2, 1), (2, 2, 2)] {
            let p = Poly::numeric(&[2, 0]);
            let a = FinSet::ints(na);
            let a2 = FinSet::ints(nb);
            let bset = FinSet::ints(nc);
            let lhs = strength(&p, &a.product(&a2), &bset, b()).unwrap();
            let tau_inner = strength(&p, &a2, &bset, b()).unwrap();
            let id_a = FinFn::identity(&a);
            let step = id_a.product_map(&tau_inner);
            let tau_outer = strength(&p, &a, &a2.product(&bset), b()).unwrap();
            let rhs = step.then(&tau_outer).unwrap();
            // Compare after reassociating the domain and codomain labels.
            for el in rhs.dom().iter() {
                let (av, rest) = el.expect_pair();
                let (a2v, ig) = rest.expect_pair();
                let lhs_el = Label::pair(Label::pair(av.clone(), a2v.clone()), ig.clone());
                let lhs_out = lhs.apply(&lhs_el);
                let rhs_out = rhs.apply(el);
                // lhs_out tables pair ((a,a'),x); rhs_out tables pair (a,(a',x)).
                let (i1, t1) = lhs_out.expect_pair();
                let (i2, t2) = rhs_out.expect_pair();
                assert_eq!(i1, i2);
                let t1 = t1.as_seq().unwrap();
                let t2 = t2.as_seq().unwrap();
                assert_eq!(t1.len(), t2.len());
                for (e1, e2) in t1.iter().zip(t2.iter()) {
                    let (d1, v1) = e1.expect_pair();
                    let (d2, v2) = e2.expect_pair();
                    assert_eq!(d1, d2);
                    let (aa, x1) = v1.expect_pair();
                    let (av1, a2v1) = aa.expect_pair();
                    let (av2, rest2) = v2.expect_pair();
                    let (a2v2, x2) = rest2.expect_pair();
                    assert_eq!((av1, a2v1, x1), (av2, a2v2, x2));
                }
            }
        }
    }

    #[test]
    fn scalar_cases() {
        let q = Poly::numeric(&[2, 0]);
        let one = FinSet::ints(1);
        assert!(iso_check(&scalar(&one, &q), &q).is_some());
        let two = FinSet::ints(2);
        assert!(iso_check(&scalar(&two, &q), &Poly::numeric(&[2, 2, 0, 0])).is_some());
        let ay = scalar(&two, &Poly::y());
        assert_eq!(ay.positions().len(), 2);
        assert!(ay.positions().iter().all(|p| ay.dirs(p).len() == 1));
        let witness = scalar_vs_compose(&two, &q, b()).unwrap();
        assert!(witness.is_iso());
    }

    #[test]
    fn star_cases() {
        let (ys, mor) = star(&Poly::y());
        assert!(iso_check(&ys, &Poly::y()).is_some());
        assert!(mor.classify().cartesian);
        let p = Poly::numeric(&[2, 1]);
        let (ps, mor) = star(&p);
        assert!(iso_check(&ps, &Poly::numeric(&[2, 2, 1])).is_some());
        assert!(mor.classify().cartesian);
        let (zs, _) = star(&Poly::numeric(&[0, 0]));
        assert_eq!(zs.positions().len(), 0);
    }

    #[test]
    fn compose_triangle_and_pentagon() {
        let p = Poly::numeric(&[1, 2]);
        let q = Poly::numeric(&[1]);
        let r = Poly::numeric(&[2]);
        let s = Poly::numeric(&[0, 1]);
        // Triangle: (id_p ◁ λ_q) ∘ α_{p,y,q} = ρ_p ◁ id_q.
        let alpha = compose_associator(&p, &Poly::y(), &q, b()).unwrap();
        let lhs = alpha
            .then(&mor_compose_product(&PolyMor::identity(&p), &compose_lunitor(&q, b()).unwrap(), b()).unwrap())
            .unwrap();
        let rhs = mor_compose_product(&compose_runitor(&p, b()).unwrap(), &PolyMor::identity(&q), b()).unwrap();
        assert_eq!(lhs, rhs);
        // Pentagon.
        let a1 = mor_compose_product(&compose_associator(&p, &q, &r, b()).unwrap(), &PolyMor::identity(&s), b()).unwrap();
        let a2 = compose_associator(&p, &compose(&q, &r, b()).unwrap(), &s, b()).unwrap();
        let a3 = mor_compose_product(&PolyMor::identity(&p), &compose_associator(&q, &r, &s, b()).unwrap(), b()).unwrap();
        let left = a1.then(&a2).unwrap().then(&a3).unwrap();
        let b1 = compose_associator(&compose(&p, &q, b()).unwrap(), &r, &s, b()).unwrap();
        let b2 = compose_associator(&p, &q, &compose(&r, &s, b()).unwrap(), b()).unwrap();
        let right = b1.then(&b2).unwrap();
        assert_eq!(left, right);
    }
}
