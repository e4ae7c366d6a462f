//! Polynomials over a finite presheaf base: representation, the identity
//! polynomial, the tensor product, the composition product computed via
//! the presheaf dependent product, and internal categories in presheaves
//! with their comonoid translation.
//!
//! Coverage over presheaf bases is intentionally narrower than over
//! finite sets: objects, morphisms, the two products, and the
//! category/comonoid dictionary, with isomorphism verification by
//! bounded search for commuting natural isomorphism pairs.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fincat::FinCat;
use crate::label::Label;
use crate::presheaf::{
    presheaf_pi, presheaf_pi_counit, psh_homs, psh_pullback, Presheaf, PshMor,
};
use crate::report::Report;

/// A polynomial in presheaves: a projection from a total presheaf to a
/// position presheaf over a shared finite base category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PshPoly {
    pub positions: Presheaf,
    pub total: Presheaf,
    pub proj: PshMor,
}

impl PshPoly {
    pub fn new(proj: PshMor) -> Result<Self> {
        let r = proj.validate();
        if let Some(first) = r.first_failure() {
            return Err(Error::invalid("presheaf polynomial", first));
        }
        Ok(PshPoly {
            positions: proj.cod.clone(),
            total: proj.dom.clone(),
            proj,
        })
    }

    pub fn base(&self) -> &FinCat {
        &self.positions.base
    }

    pub fn validate(&self) -> Report {
        let mut r = self.positions.validate();
        r.merge(self.total.validate());
        r.merge(self.proj.validate());
        r
    }

    /// Identity polynomial: the identity on the terminal presheaf.
    pub fn y(base: &FinCat) -> PshPoly {
        let t = Presheaf::terminal(base);
        PshPoly {
            positions: t.clone(),
            total: t.clone(),
            proj: PshMor::identity(&t),
        }
    }

    /// Tensor product: the product of the projections.
    pub fn tensor(&self, other: &PshPoly) -> Result<PshPoly> {
        PshPoly::new(self.proj.product_mor(&other.proj)?)
    }

    /// Composition product via the dependent product along this
    /// polynomial's projection.
    pub fn compose(&self, other: &PshPoly, budget: Budget) -> Result<PshPoly> {
        if self.base() != other.base() {
            return Err(Error::BaseMismatch("presheaf polynomial composition".into()));
        }
        // Z = Q × P_* over P_* by the second projection, pushed along p.
        let q_pos = &other.positions;
        let prod = q_pos.product(&self.total)?;
        let g = PshMor::from_fn(&prod, &self.total, |_, v| v.expect_pair().1.clone())?;
        let pi = presheaf_pi(&self.proj, &g, budget)?;
        // New positions: Π_p(Q × P_*).
        let (pb, counit) = presheaf_pi_counit(&self.proj, &g, &pi)?;
        // pb is the pullback of p and Π_f g with elements (w, u); its map
        // to Q is the counit followed by the first projection.
        let to_q = counit.then(&PshMor::from_fn(&prod, q_pos, |_, v| {
            v.expect_pair().0.clone()
        })?)?;
        // Total space: pull back the other polynomial along to_q.
        let total_pb = psh_pullback(&to_q, &other.proj)?;
        // Projection: total → pb → positions (second component of pb pairs).
        let apex_to_pos = PshMor::from_fn(&pb.obj, &pi.obj, |_, v| v.expect_pair().1.clone())?;
        let proj = total_pb.proj1.then(&apex_to_pos)?;
        PshPoly::new(proj)
    }
}

/// Search for an isomorphism of presheaf polynomials: a pair of natural
/// isomorphisms on positions and totals commuting with the projections.
pub fn psh_poly_iso(a: &PshPoly, b: &PshPoly, budget: Budget) -> Result<Option<(PshMor, PshMor)>> {
    for x in a.base().objects.iter() {
        if a.positions.at(x).len() != b.positions.at(x).len()
            || a.total.at(x).len() != b.total.at(x).len()
        {
            return Ok(None);
        }
    }
    let pos_isos: Vec<PshMor> = psh_homs(&a.positions, &b.positions, budget)?
        .into_iter()
        .filter(PshMor::is_iso)
        .collect();
    let tot_isos: Vec<PshMor> = psh_homs(&a.total, &b.total, budget)?
        .into_iter()
        .filter(PshMor::is_iso)
        .collect();
    for alpha in &pos_isos {
        for beta in &tot_isos {
            if beta.then(&b.proj)? == a.proj.then(alpha)? {
                return Ok(Some((alpha.clone(), beta.clone())));
            }
        }
    }
    Ok(None)
}

/// An internal category in presheaves over a finite base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PshInternalCategory {
    pub objects: Presheaf,
    pub morphisms: Presheaf,
    pub src: PshMor,
    pub tgt: PshMor,
    pub ident: PshMor,
    /// Composition on the canonical pullback of (tgt, src) pairs `(f, g)`
    /// with `t f = s g`.
    pub comp: PshMor,
}

impl PshInternalCategory {
    /// Internal category with constant carriers, from a finite category.
    pub fn constant(base: &FinCat, cat: &crate::comonoid::InternalCategory) -> Result<Self> {
        let objects = Presheaf::constant(base, &cat.objects);
        let morphisms = Presheaf::constant(base, &cat.morphisms);
        let src = PshMor::from_fn(&morphisms, &objects, |_, m| cat.src.apply(m).clone())?;
        let tgt = PshMor::from_fn(&morphisms, &objects, |_, m| cat.tgt.apply(m).clone())?;
        let ident = PshMor::from_fn(&objects, &morphisms, |_, x| cat.ident.apply(x).clone())?;
        let pb = psh_pullback(&tgt, &src)?;
        let comp = PshMor::from_fn(&pb.obj, &morphisms, |_, fg| {
            let (f, g) = fg.expect_pair();
            cat.compose_pair(f, g).expect("composable").clone()
        })?;
        Ok(PshInternalCategory {
            objects,
            morphisms,
            src,
            tgt,
            ident,
            comp,
        })
    }

    pub fn validate(&self) -> Result<Report> {
        let mut r = Report::new();
        let pb = psh_pullback(&self.tgt, &self.src)?;
        if self.comp.dom != pb.obj {
            r.fail("typing", "composition must be defined on composable pairs");
            return Ok(r);
        }
        // s ∘ i = id = t ∘ i.
        let id_obj = PshMor::identity(&self.objects);
        r.record("identity-src", self.ident.then(&self.src)? == id_obj, "s ∘ i");
        r.record("identity-tgt", self.ident.then(&self.tgt)? == id_obj, "t ∘ i");
        // s ∘ k = s ∘ π1, t ∘ k = t ∘ π2.
        r.record(
            "composite-src",
            self.comp.then(&self.src)? == pb.proj1.then(&self.src)?,
            "s ∘ k",
        );
        r.record(
            "composite-tgt",
            self.comp.then(&self.tgt)? == pb.proj2.then(&self.tgt)?,
            "t ∘ k",
        );
        if !r.passed() {
            // Unit and associativity are only well-posed once the endpoint
            // equations hold.
            return Ok(r);
        }
        // Unit and associativity, elementwise over each base object.
        let base = self.objects.base.clone();
        for a in base.objects.iter() {
            let mors = self.morphisms.at(a);
            let s = &self.src.components[a];
            let t = &self.tgt.components[a];
            let i = &self.ident.components[a];
            let k = |f: &Label, g: &Label| -> Label {
                self.comp.components[a]
                    .apply(&Label::pair(f.clone(), g.clone()))
                    .clone()
            };
            for f in mors.iter() {
                let left = k(i.apply(s.apply(f)), f);
                let right = k(f, i.apply(t.apply(f)));
                r.record("unit", left == *f && right == *f, format!("at {a}: {f}"));
            }
            for f in mors.iter() {
                for g in mors.iter() {
                    if t.apply(f) != s.apply(g) {
                        continue;
                    }
                    for h in mors.iter() {
                        if t.apply(g) != s.apply(h) {
                            continue;
                        }
                        let lhs = k(&k(f, g), h);
                        let rhs = k(f, &k(g, h));
                        r.record("associativity", lhs == rhs, format!("at {a}: ({f},{g},{h})"));
                    }
                }
            }
        }
        Ok(r)
    }
}

/// A comonoid over a presheaf base, in category-first presentation:
/// the full internal-category data plus its carrier polynomial. The
/// comonoid structure maps are determined by the dictionary (identities
/// ↔ counit, targets and composition ↔ comultiplication), so this
/// presentation is interchangeable with the morphism-level one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PshComonoid {
    pub carrier: PshPoly,
    pub cat: PshInternalCategory,
}

/// Translate an internal category in presheaves into a presheaf-base
/// comonoid: the carrier is the source projection.
pub fn psh_cat_to_comonoid(cat: &PshInternalCategory) -> Result<PshComonoid> {
    let report = cat.validate()?;
    if let Some(first) = report.first_failure() {
        return Err(Error::invalid("internal category", first));
    }
    let carrier = PshPoly::new(cat.src.clone())?;
    Ok(PshComonoid {
        carrier,
        cat: cat.clone(),
    })
}

/// Recover the internal category from a presheaf-base comonoid.
pub fn psh_comonoid_to_cat(c: &PshComonoid) -> Result<PshInternalCategory> {
    let cat = c.cat.clone();
    // Consistency: the carrier must be the source projection.
    if c.carrier.proj != cat.src {
        return Err(Error::invalid(
            "presheaf comonoid",
            "carrier projection differs from the category's source map",
        ));
    }
    Ok(cat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comonoid::InternalCategory;
    use crate::finset::{FinFn, FinSet};

    fn b() -> Budget {
        Budget::default()
    }

    /// A small non-constant polynomial over the walking arrow.
    fn sample_poly(base: &FinCat) -> PshPoly {
        // positions: at a: {0}, at b: {0}; total: at a: {0,1}, at b: {0}.
        let pos = Presheaf::constant(base, &FinSet::ints(1));
        let tot_a = FinSet::ints(2);
        let tot_b = FinSet::ints(1);
        let total = Presheaf::new(
            base.clone(),
            [(Label::str("a"), tot_a.clone()), (Label::str("b"), tot_b.clone())].into(),
            [
                (Label::str("id_a"), FinFn::identity(&tot_a)),
                (Label::str("id_b"), FinFn::identity(&tot_b)),
                (
                    Label::str("f"),
                    FinFn::from_fn(tot_b, tot_a, |v| v.clone()).unwrap(),
                ),
            ]
            .into(),
        )
        .unwrap();
        let proj = PshMor::from_fn(&total, &pos, |_, _| Label::int(0)).unwrap();
        PshPoly::new(proj).unwrap()
    }

    #[test]
    fn psh_y_is_valid() {
        for base in [FinCat::walking_arrow(), FinCat::parallel_pair()] {
            let y = PshPoly::y(&base);
            assert!(y.validate().passed());
        }
    }

    #[test]
    fn psh_compose_units() {
        let base = FinCat::walking_arrow();
        let p = sample_poly(&base);
        let y = PshPoly::y(&base);
        let yp = y.compose(&p, b()).unwrap();
        assert!(yp.validate().passed());
        assert!(psh_poly_iso(&yp, &p, b()).unwrap().is_some());
        let py = p.compose(&y, b()).unwrap();
        assert!(psh_poly_iso(&py, &p, b()).unwrap().is_some());
    }

    #[test]
    fn psh_compose_associativity_up_to_iso() {
        let base = FinCat::walking_arrow();
        let p = sample_poly(&base);
        let y = PshPoly::y(&base);
        let q = y.tensor(&y).unwrap();
        let pq_r = p.compose(&q, b()).unwrap().compose(&p, b()).unwrap();
        let p_qr = p.compose(&q.compose(&p, b()).unwrap(), b()).unwrap();
        assert!(psh_poly_iso(&pq_r, &p_qr, b()).unwrap().is_some());
    }

    #[test]
    fn psh_tensor_is_pointwise() {
        let base = FinCat::parallel_pair();
        let y = PshPoly::y(&base);
        let t = y.tensor(&y).unwrap();
        assert!(t.validate().passed());
        assert!(psh_poly_iso(&t, &y, b()).unwrap().is_some());
    }

    #[test]
    fn constant_internal_category_roundtrip() {
        // One nontrivial corpus instance over the walking arrow: the
        // constant internal category on the walking-arrow category itself.
        let base = FinCat::walking_arrow();
        let inner = InternalCategory::from_fincat(&FinCat::walking_arrow());
        let cat = PshInternalCategory::constant(&base, &inner).unwrap();
        assert!(cat.validate().unwrap().passed());
        let com = psh_cat_to_comonoid(&cat).unwrap();
        assert!(com.carrier.validate().passed());
        let back = psh_comonoid_to_cat(&com).unwrap();
        assert_eq!(back, cat);
        let again = psh_cat_to_comonoid(&back).unwrap();
        assert_eq!(again, com);
    }

    #[test]
    fn broken_internal_category_is_witnessed() {
        let base = FinCat::walking_arrow();
        let inner = InternalCategory::from_fincat(&FinCat::walking_arrow());
        let mut cat = PshInternalCategory::constant(&base, &inner).unwrap();
        // Corrupt the identity assignment at one base object.
        let morphisms = cat.morphisms.clone();
        let objects = cat.objects.clone();
        cat.ident = PshMor::from_fn(&objects, &morphisms, |_, _| Label::str("f")).unwrap();
        let r = cat.validate().unwrap();
        assert!(!r.passed());
    }
}
