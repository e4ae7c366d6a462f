//! Comonoids for the composition product and their equivalence with
//! finite categories, plus cofunctors as comonoid homomorphisms.
//!
//! The dictionary: a comonoid carrier stores each object's outgoing
//! morphisms as its directions; the counit picks out identities, the
//! comultiplication's position part records targets and its direction
//! part records composition. Counit laws force the comultiplication to
//! fix positions, so the translation is canonical in both directions.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fincat::FinCat;
use crate::finset::{FinFn, FinSet};
use crate::label::Label;
use crate::poly::{Poly, PolyMor};
use crate::poly_ops::{
    compose, compose_associator, compose_lunitor, compose_pos_parts, compose_runitor,
    mor_compose_product,
};
use crate::report::Report;
use std::collections::BTreeMap;

/// A comonoid for the composition product: a polynomial with a counit to
/// `y` and a coassociative comultiplication into its self-composite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comonoid {
    pub carrier: Poly,
    pub counit: PolyMor,
    pub comult: PolyMor,
}

impl Comonoid {
    /// Structural typing only; `comonoid_check` verifies the laws.
    pub fn new(carrier: Poly, counit: PolyMor, comult: PolyMor, budget: Budget) -> Result<Self> {
        if counit.dom() != &carrier || counit.cod() != &Poly::y() {
            return Err(Error::Typing("counit must map the carrier to y".into()));
        }
        let cc = compose(&carrier, &carrier, budget)?;
        if comult.dom() != &carrier || comult.cod() != &cc {
            return Err(Error::Typing(
                "comultiplication must map the carrier to its self-composite".into(),
            ));
        }
        Ok(Comonoid {
            carrier,
            counit,
            comult,
        })
    }

    /// The target of a direction according to the comultiplication's
    /// position part.
    pub fn target_of(&self, pos: &Label, dir: &Label) -> Label {
        let (_, table) = compose_pos_parts(
            &self.carrier,
            &self.carrier,
            self.comult.on_pos().apply(pos),
        );
        table.apply(dir).clone()
    }

    /// The identity direction at a position according to the counit.
    pub fn identity_dir(&self, pos: &Label) -> Label {
        self.counit.on_dir(pos).apply(&Label::unit()).clone()
    }

    /// Composite of two directions `f` at `pos` and `g` at `target_of(pos, f)`.
    pub fn compose_dirs(&self, pos: &Label, f: &Label, g: &Label) -> Label {
        self.comult
            .on_dir(pos)
            .apply(&Label::pair(f.clone(), g.clone()))
            .clone()
    }
}

/// Check the counit and coassociativity diagrams.
///
/// When the triple self-composite fits in the budget the diagrams are
/// compared as equalities of canonical morphisms; for larger carriers the
/// same equalities are checked pointwise on the image of the
/// comultiplication, which avoids materializing positions the composites
/// never reach.
pub fn comonoid_check(c: &Comonoid, budget: Budget) -> Result<Report> {
    match comonoid_check_diagrams(c, budget) {
        Ok(r) => Ok(r),
        Err(Error::BudgetExceeded { .. }) => Ok(comonoid_check_pointwise(c)),
        Err(e) => Err(e),
    }
}

/// Canonical-morphism form of the comonoid laws.
pub fn comonoid_check_diagrams(c: &Comonoid, budget: Budget) -> Result<Report> {
    let mut r = Report::new();
    let carrier = &c.carrier;
    let id = PolyMor::identity(carrier);

    // Left counit: lunitor ∘ (ε ◁ id) ∘ δ = id.
    let eps_id = mor_compose_product(&c.counit, &id, budget)?;
    let left = c
        .comult
        .then(&eps_id)?
        .then(&compose_lunitor(carrier, budget)?)?;
    r.record(
        "counit-left",
        left == id,
        diff_witness(&left, &id).unwrap_or_default(),
    );

    // Right counit: runitor ∘ (id ◁ ε) ∘ δ = id.
    let id_eps = mor_compose_product(&id, &c.counit, budget)?;
    let right = c
        .comult
        .then(&id_eps)?
        .then(&compose_runitor(carrier, budget)?)?;
    r.record(
        "counit-right",
        right == id,
        diff_witness(&right, &id).unwrap_or_default(),
    );

    // Coassociativity: associator ∘ (δ ◁ id) ∘ δ = (id ◁ δ) ∘ δ.
    let delta_id = mor_compose_product(&c.comult, &id, budget)?;
    let lhs = c
        .comult
        .then(&delta_id)?
        .then(&compose_associator(carrier, carrier, carrier, budget)?)?;
    let id_delta = mor_compose_product(&id, &c.comult, budget)?;
    let rhs = c.comult.then(&id_delta)?;
    r.record(
        "coassociativity",
        lhs == rhs,
        diff_witness(&lhs, &rhs).unwrap_or_default(),
    );
    Ok(r)
}

/// Pointwise unfolding of the comonoid laws, equivalent to the diagram
/// form but evaluated only where the composites actually land.
pub fn comonoid_check_pointwise(c: &Comonoid) -> Report {
    let mut r = Report::new();
    let carrier = &c.carrier;
    for x in carrier.positions().iter() {
        // The right counit law on positions forces δ to fix positions.
        let (fixed, targets) =
            compose_pos_parts(carrier, carrier, c.comult.on_pos().apply(x));
        if &fixed != x {
            r.fail(
                "counit-right",
                format!("comultiplication moves position {x} to {fixed}"),
            );
            continue;
        }
        let i_x = c.identity_dir(x);
        // Left counit on positions: t(i(x)) = x.
        let t_ix = targets.apply(&i_x).clone();
        if t_ix != *x {
            r.fail("counit-left", format!("target of the identity at {x} is {t_ix}"));
            continue;
        }
        // Left counit on directions: k(i(x), d) = d.
        for d in carrier.dirs(x).iter() {
            let law = c.compose_dirs(x, &i_x, d) == *d;
            r.record("counit-left", law, format!("position {x}, direction {d}"));
        }
        // Right counit on directions: k(d, i(t d)) = d.
        for d in carrier.dirs(x).iter() {
            let td = targets.apply(d).clone();
            let law = c.compose_dirs(x, d, &c.identity_dir(&td)) == *d;
            r.record("counit-right", law, format!("position {x}, direction {d}"));
        }
        // Coassociativity on positions (targets of composites) and
        // directions (associativity of the composition table).
        for d in carrier.dirs(x).iter() {
            let td = targets.apply(d).clone();
            for e in carrier.dirs(&td).iter() {
                let k_de = c.compose_dirs(x, d, e);
                let t_e = c.target_of(&td, e);
                let t_kde = targets.apply(&k_de).clone();
                if t_kde != t_e {
                    r.fail(
                        "coassociativity",
                        format!("targets of composites differ at ({x},{d},{e}): {t_kde} vs {t_e}"),
                    );
                    continue;
                }
                for u in carrier.dirs(&t_e).iter() {
                    let lhs = c.compose_dirs(x, &k_de, u);
                    let rhs = c.compose_dirs(x, d, &c.compose_dirs(&td, e, u));
                    r.record(
                        "coassociativity",
                        lhs == rhs,
                        format!("({x},{d},{e},{u}): {lhs} vs {rhs}"),
                    );
                }
            }
        }
    }
    r
}

/// First position (and direction, when they differ there) where two
/// parallel morphisms disagree.
fn diff_witness(a: &PolyMor, b: &PolyMor) -> Option<String> {
    if a == b {
        return None;
    }
    for i in a.dom().positions().iter() {
        if a.on_pos().apply(i) != b.on_pos().apply(i) {
            return Some(format!(
                "position {i}: {} vs {}",
                a.on_pos().apply(i),
                b.on_pos().apply(i)
            ));
        }
        if a.on_dir(i) != b.on_dir(i) {
            for d in a.on_dir(i).dom().iter() {
                if a.on_dir(i).apply(d) != b.on_dir(i).apply(d) {
                    return Some(format!(
                        "position {i}, direction {d}: {} vs {}",
                        a.on_dir(i).apply(d),
                        b.on_dir(i).apply(d)
                    ));
                }
            }
        }
    }
    Some("codomains differ".into())
}

/// An internal category over finite sets: object and morphism carriers
/// with source, target, identity, and a composition map on the canonical
/// pullback of composable pairs (`(f, g)` with `tgt f = src g`, in
/// diagram order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InternalCategory {
    pub objects: FinSet,
    pub morphisms: FinSet,
    pub src: FinFn,
    pub tgt: FinFn,
    pub ident: FinFn,
    /// `k(f, g) = f then g`, keyed by pair labels of the canonical pullback.
    pub comp: BTreeMap<Label, Label>,
}

impl InternalCategory {
    pub fn compose_pair(&self, f: &Label, g: &Label) -> Result<&Label> {
        self.comp
            .get(&Label::pair(f.clone(), g.clone()))
            .ok_or_else(|| Error::invalid("internal category", format!("({f},{g}) not composable")))
    }

    /// Check the internal-category equations, reporting witnesses.
    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        for (fun, name, dom, cod) in [
            (&self.src, "src", &self.morphisms, &self.objects),
            (&self.tgt, "tgt", &self.morphisms, &self.objects),
            (&self.ident, "ident", &self.objects, &self.morphisms),
        ] {
            if fun.dom() != dom || fun.cod() != cod {
                r.fail("typing", format!("{name} has the wrong endpoints"));
            }
        }
        if !r.passed() {
            return r;
        }
        for x in self.objects.iter() {
            let i = self.ident.apply(x);
            r.record(
                "identity-endpoints",
                self.src.apply(i) == x && self.tgt.apply(i) == x,
                format!("object {x}"),
            );
        }
        // Composition closure and endpoint equations: s(k) = s∘π1, t(k) = t∘π2.
        for f in self.morphisms.iter() {
            for g in self.morphisms.iter() {
                let composable = self.tgt.apply(f) == self.src.apply(g);
                match self.comp.get(&Label::pair(f.clone(), g.clone())) {
                    Some(k) if composable => {
                        let ok = self.morphisms.contains(k)
                            && self.src.apply(k) == self.src.apply(f)
                            && self.tgt.apply(k) == self.tgt.apply(g);
                        r.record("composite-endpoints", ok, format!("({f},{g})"));
                    }
                    Some(_) => r.fail("compose-closed", format!("spurious entry ({f},{g})")),
                    None if composable => r.fail("compose-closed", format!("missing ({f},{g})")),
                    None => {}
                }
            }
        }
        if !r.passed() {
            return r;
        }
        for f in self.morphisms.iter() {
            let i_s = self.ident.apply(self.src.apply(f)).clone();
            let i_t = self.ident.apply(self.tgt.apply(f)).clone();
            let left = self.comp[&Label::pair(i_s, f.clone())].clone();
            let right = self.comp[&Label::pair(f.clone(), i_t)].clone();
            r.record("unit", left == *f && right == *f, format!("morphism {f}"));
        }
        for f in self.morphisms.iter() {
            for g in self.morphisms.iter() {
                if self.tgt.apply(f) != self.src.apply(g) {
                    continue;
                }
                for h in self.morphisms.iter() {
                    if self.tgt.apply(g) != self.src.apply(h) {
                        continue;
                    }
                    let fg = self.comp[&Label::pair(f.clone(), g.clone())].clone();
                    let gh = self.comp[&Label::pair(g.clone(), h.clone())].clone();
                    let left = self.comp[&Label::pair(fg, h.clone())].clone();
                    let right = self.comp[&Label::pair(f.clone(), gh)].clone();
                    r.record("associativity", left == right, format!("({f},{g},{h})"));
                }
            }
        }
        r
    }

    pub fn from_fincat(c: &FinCat) -> Self {
        let mut comp = BTreeMap::new();
        for f in c.morphisms.iter() {
            for g in c.morphisms.iter() {
                if c.tgt.apply(f) == c.src.apply(g) {
                    comp.insert(
                        Label::pair(f.clone(), g.clone()),
                        c.compose[&(g.clone(), f.clone())].clone(),
                    );
                }
            }
        }
        InternalCategory {
            objects: c.objects.clone(),
            morphisms: c.morphisms.clone(),
            src: c.src.clone(),
            tgt: c.tgt.clone(),
            ident: c.ident.clone(),
            comp,
        }
    }

    pub fn to_fincat(&self) -> Result<FinCat> {
        let mut compose = BTreeMap::new();
        for (pair, k) in &self.comp {
            let (f, g) = pair.expect_pair();
            compose.insert((g.clone(), f.clone()), k.clone());
        }
        FinCat::new(
            self.objects.clone(),
            self.morphisms.clone(),
            self.src.clone(),
            self.tgt.clone(),
            self.ident.clone(),
            compose,
        )
    }

    pub fn outgoing(&self, x: &Label) -> Vec<Label> {
        self.morphisms
            .iter()
            .filter(|m| self.src.apply(m) == x)
            .cloned()
            .collect()
    }
}

/// Translate an internal category into a comonoid: the carrier's
/// directions at `x` are the outgoing morphisms of `x`; the counit picks
/// identities, the comultiplication records targets and composition.
pub fn cat_to_comonoid(cat: &InternalCategory, budget: Budget) -> Result<Comonoid> {
    let report = cat.validate();
    if let Some(first) = report.first_failure() {
        return Err(Error::invalid("internal category", first));
    }
    let entries = cat
        .objects
        .iter()
        .map(|x| (x.clone(), cat.outgoing(x)))
        .collect();
    let carrier = Poly::from_table(entries)?;
    let counit = PolyMor::from_fns(
        &carrier,
        &Poly::y(),
        |_| Label::unit(),
        |x, _| cat.ident.apply(x).clone(),
    )?;
    let cc = compose(&carrier, &carrier, budget)?;
    let comult = PolyMor::from_fns(
        &carrier,
        &cc,
        |x| {
            let table = FinFn::from_fn(
                carrier.dirs(x).clone(),
                carrier.positions().clone(),
                |f| cat.tgt.apply(f).clone(),
            )
            .expect("total");
            Label::pair(x.clone(), table.table_label())
        },
        |_, fg| {
            let (f, g) = fg.expect_pair();
            cat.compose_pair(f, g).expect("composable by typing").clone()
        },
    )?;
    Comonoid::new(carrier, counit, comult, budget)
}

/// Translate comonoid data into internal-category data. The counit laws
/// force the comultiplication to fix positions; inputs violating that are
/// rejected (they cannot satisfy the comonoid laws either).
///
/// Morphism labels: when the carrier's direction sets are pairwise
/// disjoint the directions themselves serve as the morphism set, so a
/// category round-trips to itself exactly; otherwise morphisms are
/// `(position, direction)` pairs.
pub fn comonoid_to_cat(c: &Comonoid) -> Result<InternalCategory> {
    let carrier = &c.carrier;
    // Position-fixing check.
    for x in carrier.positions().iter() {
        let (i, _) = compose_pos_parts(carrier, carrier, c.comult.on_pos().apply(x));
        if &i != x {
            return Err(Error::invalid(
                "comonoid",
                format!("comultiplication moves position {x} to {i}; counit laws cannot hold"),
            ));
        }
    }
    // Disjointness of direction labels decides the morphism labeling.
    let mut seen: BTreeMap<Label, Label> = BTreeMap::new();
    let mut disjoint = true;
    'outer: for x in carrier.positions().iter() {
        for d in carrier.dirs(x).iter() {
            if seen.insert(d.clone(), x.clone()).is_some() {
                disjoint = false;
                break 'outer;
            }
        }
    }
    let name = |x: &Label, d: &Label| -> Label {
        if disjoint {
            d.clone()
        } else {
            Label::pair(x.clone(), d.clone())
        }
    };
    let mut morphisms = Vec::new();
    let mut src_map = BTreeMap::new();
    let mut tgt_map = BTreeMap::new();
    for x in carrier.positions().iter() {
        for d in carrier.dirs(x).iter() {
            let m = name(x, d);
            morphisms.push(m.clone());
            src_map.insert(m.clone(), x.clone());
            tgt_map.insert(m, c.target_of(x, d));
        }
    }
    let morphisms = FinSet::new(morphisms)?;
    let objects = carrier.positions().clone();
    let src = FinFn::new(morphisms.clone(), objects.clone(), src_map)?;
    let tgt = FinFn::new(morphisms.clone(), objects.clone(), tgt_map)?;
    let ident = FinFn::from_fn(objects.clone(), morphisms.clone(), |x| {
        name(x, &c.identity_dir(x))
    })?;
    let mut comp = BTreeMap::new();
    for x in carrier.positions().iter() {
        for d in carrier.dirs(x).iter() {
            let t = c.target_of(x, d);
            for e in carrier.dirs(&t).iter() {
                let composite = c.compose_dirs(x, d, e);
                comp.insert(Label::pair(name(x, d), name(&t, e)), name(x, &composite));
            }
        }
    }
    Ok(InternalCategory {
        objects,
        morphisms,
        src,
        tgt,
        ident,
        comp,
    })
}

/// Combined report for a candidate cofunctor: the comonoid-homomorphism
/// equations and the direct cofunctor equations; the two verdicts must
/// agree.
#[derive(Debug, Clone)]
pub struct CofunctorReport {
    pub homomorphism: Report,
    pub cofunctor: Report,
}

impl CofunctorReport {
    pub fn passed(&self) -> bool {
        self.homomorphism.passed() && self.cofunctor.passed()
    }

    pub fn verdicts_agree(&self) -> bool {
        self.homomorphism.passed() == self.cofunctor.passed()
    }
}

/// Check a polynomial morphism between comonoid carriers both as a
/// comonoid homomorphism and against the cofunctor equations.
pub fn cofunctor_check(
    phi: &PolyMor,
    c: &Comonoid,
    d: &Comonoid,
    budget: Budget,
) -> Result<CofunctorReport> {
    if phi.dom() != &c.carrier || phi.cod() != &d.carrier {
        return Err(Error::Typing(
            "morphism endpoints must be the comonoid carriers".into(),
        ));
    }
    // (a) Comonoid homomorphism equations.
    let mut hom = Report::new();
    let eps_eq = phi.then(&d.counit)? == c.counit;
    hom.record("counit-preserved", eps_eq, "counit not preserved");
    let lhs = phi.then(&d.comult)?;
    let rhs = c.comult.then(&mor_compose_product(phi, phi, budget)?)?;
    hom.record(
        "comultiplication-preserved",
        lhs == rhs,
        diff_witness(&lhs, &rhs).unwrap_or_default(),
    );

    // (b) Cofunctor equations, stated directly on the translated data.
    let mut cof = Report::new();
    for x in c.carrier.positions().iter() {
        let fx = phi.on_pos().apply(x);
        // Identities: φ♯ₓ(i'(φ₁ x)) = i(x).
        let ok = phi.on_dir(x).apply(&d.identity_dir(fx)) == &c.identity_dir(x);
        cof.record("cofunctor-identity", ok, format!("object {x}"));
        for g in d.carrier.dirs(fx).iter() {
            // Targets: φ₁(t(φ♯ₓ g)) = t'(g).
            let back = phi.on_dir(x).apply(g);
            let ok = phi.on_pos().apply(&c.target_of(x, back)) == &d.target_of(fx, g);
            cof.record("cofunctor-target", ok, format!("({x},{g})"));
        }
        for g in d.carrier.dirs(fx).iter() {
            let back = phi.on_dir(x).apply(g).clone();
            let tx = c.target_of(x, &back);
            let ftx = phi.on_pos().apply(&tx);
            if ftx != &d.target_of(fx, g) {
                // Target equation already failed; the composition equation
                // is not well-posed at this pair.
                continue;
            }
            for g2 in d.carrier.dirs(&d.target_of(fx, g)).iter() {
                // Composition: φ♯ₓ(k'(g, g')) = k(φ♯ₓ g, φ♯_{t(φ♯ₓ g)} g').
                let lhs = phi.on_dir(x).apply(&d.compose_dirs(fx, g, g2)).clone();
                let rhs = c.compose_dirs(x, &back, phi.on_dir(&tx).apply(g2));
                cof.record(
                    "cofunctor-composition",
                    lhs == rhs,
                    format!("({x},{g},{g2})"),
                );
            }
        }
    }
    Ok(CofunctorReport {
        homomorphism: hom,
        cofunctor: cof,
    })
}

/// The discrete comonoid on a set: carrier `A·y` with projection counit
/// and diagonal comultiplication.
pub fn discrete_comonoid(a: &FinSet, budget: Budget) -> Result<Comonoid> {
    let entries = a
        .iter()
        .map(|x| (x.clone(), vec![Label::unit()]))
        .collect();
    let carrier = Poly::from_table(entries)?;
    let counit = PolyMor::from_fns(&carrier, &Poly::y(), |_| Label::unit(), |_, _| Label::unit())?;
    let cc = compose(&carrier, &carrier, budget)?;
    let comult = PolyMor::from_fns(
        &carrier,
        &cc,
        |x| {
            let table =
                FinFn::constant(carrier.dirs(x), carrier.positions(), x).expect("constant table");
            Label::pair(x.clone(), table.table_label())
        },
        |_, _| Label::unit(),
    )?;
    Comonoid::new(carrier, counit, comult, budget)
}

/// Canonical comonoid on the total-space polynomial of `p`: the disjoint
/// union of indiscrete categories on the fibers.
pub fn star_comonoid(p: &Poly, budget: Budget) -> Result<Comonoid> {
    let (carrier, _) = crate::poly_ops::star(p);
    let counit = PolyMor::from_fns(
        &carrier,
        &Poly::y(),
        |_| Label::unit(),
        // The identity at (I, d) is the direction d itself.
        |pos, _| pos.expect_pair().1.clone(),
    )?;
    let cc = compose(&carrier, &carrier, budget)?;
    let comult = PolyMor::from_fns(
        &carrier,
        &cc,
        |pos| {
            let (i, _) = pos.expect_pair();
            let table = FinFn::from_fn(
                carrier.dirs(pos).clone(),
                carrier.positions().clone(),
                |e| Label::pair(i.clone(), e.clone()),
            )
            .expect("total");
            Label::pair(pos.clone(), table.table_label())
        },
        // Composite of d → e followed by e → e' is d → e'.
        |_, de| de.expect_pair().1.clone(),
    )?;
    Comonoid::new(carrier, counit, comult, budget)
}

/// Canonical comonoid on `⟨p|p⟩`: the category whose objects are the
/// positions of `p` and whose morphisms `I → J` are the functions
/// `p[J] → p[I]`.
pub fn selfclosure_comonoid(p: &Poly, budget: Budget) -> Result<Comonoid> {
    let carrier = crate::structures::right_coclosure(p, p, budget)?;
    let counit = PolyMor::from_fns(
        &carrier,
        &Poly::y(),
        |_| Label::unit(),
        |i, _| Label::pair(i.clone(), FinFn::identity(p.dirs(i)).table_label()),
    )?;
    let cc = compose(&carrier, &carrier, budget)?;
    let comult = PolyMor::from_fns(
        &carrier,
        &cc,
        |i| {
            let table = FinFn::from_fn(
                carrier.dirs(i).clone(),
                carrier.positions().clone(),
                |jh| jh.expect_pair().0.clone(),
            )
            .expect("total");
            Label::pair(i.clone(), table.table_label())
        },
        |i, dd| {
            // First morphism (J, h : p[J] → p[I]), second (K, h' : p[K] → p[J]);
            // the composite is (K, h ∘ h').
            let (jh, kh2) = dd.expect_pair();
            let (j, h_table) = jh.expect_pair();
            let (k, h2_table) = kh2.expect_pair();
            let h = FinFn::from_table_label(p.dirs(j), p.dirs(i), h_table).expect("table");
            let h2 = FinFn::from_table_label(p.dirs(k), p.dirs(j), h2_table).expect("table");
            let composed = h2.then(&h).expect("composable");
            Label::pair(k.clone(), composed.table_label())
        },
    )?;
    Comonoid::new(carrier, counit, comult, budget)
}

/// The comonoid of a finite category, via its internal-category data.
pub fn fincat_comonoid(c: &FinCat, budget: Budget) -> Result<Comonoid> {
    cat_to_comonoid(&InternalCategory::from_fincat(c), budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn discrete_comonoid_passes() {
        let c = discrete_comonoid(&FinSet::ints(3), b()).unwrap();
        assert!(comonoid_check(&c, b()).unwrap().passed());
        // Its category is discrete.
        let cat = comonoid_to_cat(&c).unwrap();
        assert!(cat.validate().passed());
        assert_eq!(cat.morphisms.len(), 3);
        for m in cat.morphisms.iter() {
            assert_eq!(cat.src.apply(m), cat.tgt.apply(m));
        }
        // discrete_comonoid(1) has carrier y.
        let one = discrete_comonoid(&FinSet::ints(1), b()).unwrap();
        assert!(crate::poly::iso_check(&one.carrier, &Poly::y()).is_some());
    }

    #[test]
    fn walking_arrow_comonoid_laws_and_roundtrip() {
        let cat = InternalCategory::from_fincat(&FinCat::walking_arrow());
        let c = cat_to_comonoid(&cat, b()).unwrap();
        // Carrier y² + y: outgoing sets of sizes 2 and 1.
        assert_eq!(c.carrier.arity_multiset(), vec![1, 2]);
        assert!(comonoid_check(&c, b()).unwrap().passed());
        // The comultiplication sends id_a ↦ a and f ↦ b on positions.
        assert_eq!(
            c.target_of(&Label::str("a"), &Label::str("id_a")),
            Label::str("a")
        );
        assert_eq!(
            c.target_of(&Label::str("a"), &Label::str("f")),
            Label::str("b")
        );
        // Round-trips are identities on canonical data.
        let back = comonoid_to_cat(&c).unwrap();
        assert_eq!(back, cat);
        let again = cat_to_comonoid(&back, b()).unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn mutated_comultiplication_is_witnessed() {
        // Redirect every target to `a` on the walking arrow: a law must
        // fail with a witness.
        let cat = InternalCategory::from_fincat(&FinCat::walking_arrow());
        let c = cat_to_comonoid(&cat, b()).unwrap();
        let cc = compose(&c.carrier, &c.carrier, b()).unwrap();
        let carrier = c.carrier.clone();
        let bad_comult = PolyMor::from_fns(
            &carrier,
            &cc,
            |x| {
                let table =
                    FinFn::constant(carrier.dirs(x), carrier.positions(), &Label::str("a"))
                        .expect("constant");
                Label::pair(x.clone(), table.table_label())
            },
            |_, fg| fg.expect_pair().0.clone(),
        )
        .unwrap();
        let bad = Comonoid {
            carrier: carrier.clone(),
            counit: c.counit.clone(),
            comult: bad_comult,
        };
        let report = comonoid_check(&bad, b()).unwrap();
        assert!(!report.passed());
        assert!(report.failures().next().unwrap().witness.is_some());
    }

    #[test]
    fn star_comonoid_is_indiscrete_on_fibers() {
        // p = 2y: two positions with one direction each; the category is
        // two disjoint one-object one-morphism components.
        let p = Poly::numeric(&[1, 1]);
        let c = star_comonoid(&p, b()).unwrap();
        assert!(comonoid_check(&c, b()).unwrap().passed());
        let cat = comonoid_to_cat(&c).unwrap();
        assert!(cat.validate().passed());
        assert_eq!(cat.objects.len(), 2);
        assert_eq!(cat.morphisms.len(), 2);
        // Indiscrete on a 2-element fiber: every hom set is a singleton.
        let p2 = Poly::numeric(&[2]);
        let c2 = star_comonoid(&p2, b()).unwrap();
        assert!(comonoid_check(&c2, b()).unwrap().passed());
        let cat2 = comonoid_to_cat(&c2).unwrap();
        assert!(cat2.validate().passed());
        assert_eq!(cat2.objects.len(), 2);
        assert_eq!(cat2.morphisms.len(), 4);
    }

    #[test]
    fn selfclosure_comonoid_homs_are_function_sets() {
        // p = y² + y: morphisms I → J are the functions p[J] → p[I]; with
        // |p[0]| = 2 and |p[1]| = 1 there are 2 morphisms 0 → 1.
        let p = Poly::numeric(&[2, 1]);
        let c = selfclosure_comonoid(&p, b()).unwrap();
        assert!(comonoid_check(&c, b()).unwrap().passed());
        let cat = comonoid_to_cat(&c).unwrap();
        assert!(cat.validate().passed());
        let i1 = Label::int(0);
        let i2 = Label::int(1);
        let homs_12: Vec<_> = cat
            .morphisms
            .iter()
            .filter(|m| cat.src.apply(m) == &i1 && cat.tgt.apply(m) == &i2)
            .collect();
        assert_eq!(homs_12.len(), 2);
    }

    #[test]
    fn identity_cofunctor_passes_and_verdicts_agree() {
        let c = fincat_comonoid(&FinCat::walking_arrow(), b()).unwrap();
        let id = PolyMor::identity(&c.carrier);
        let report = cofunctor_check(&id, &c, &c, b()).unwrap();
        assert!(report.passed());
        assert!(report.verdicts_agree());
    }

    #[test]
    fn discrete_cofunctors_are_functions() {
        // Cofunctors between discrete comonoids correspond exactly to
        // functions between the underlying sets.
        let c = discrete_comonoid(&FinSet::ints(2), b()).unwrap();
        let d = discrete_comonoid(&FinSet::ints(3), b()).unwrap();
        let mut count = 0;
        for phi in crate::poly::hom_enumerate(&c.carrier, &d.carrier, b()).unwrap() {
            let r = cofunctor_check(&phi, &c, &d, b()).unwrap();
            assert!(r.verdicts_agree());
            if r.passed() {
                count += 1;
            }
        }
        assert_eq!(count, 9);
    }

    #[test]
    fn exactly_one_cofunctor_to_terminal() {
        let c = fincat_comonoid(&FinCat::walking_arrow(), b()).unwrap();
        let y_com = fincat_comonoid(&FinCat::terminal(), b()).unwrap();
        let mut count = 0;
        for phi in crate::poly::hom_enumerate(&c.carrier, &y_com.carrier, b()).unwrap() {
            let r = cofunctor_check(&phi, &c, &y_com, b()).unwrap();
            assert!(r.verdicts_agree());
            if r.passed() {
                count += 1;
            }
        }
        assert_eq!(count, 1);
    }
}
