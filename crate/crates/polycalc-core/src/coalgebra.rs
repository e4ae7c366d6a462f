//! Coalgebras for polynomial comonads, their equivalence with
//! copresheaves (equivalently, discrete opfibrations) on the underlying
//! category, and coalgebra homomorphisms.

use crate::budget::{pow128, Budget};
use crate::comonoid::{Comonoid, InternalCategory};
use crate::error::{Error, Result};
use crate::fincat::FinCat;
use crate::finset::{all_fns, FinFn, FinSet};
use crate::label::Label;
use crate::poly::PolyMor;
use crate::report::Report;
use std::collections::BTreeMap;

/// A coalgebra for the comonad of a comonoid `c`: a carrier set with a
/// position labeling `S → C` and an action `(s, f) ↦ s·f` defined for
/// directions `f` outgoing from the label of `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coalgebra {
    pub comonoid: Comonoid,
    pub carrier: FinSet,
    /// `κ₁ : S → C`.
    pub pos: FinFn,
    /// `κ♯ : (s, f) ↦ s·f`, keyed by pair labels `(s, f)` with
    /// `f ∈ c[κ₁ s]`.
    pub act: BTreeMap<Label, Label>,
}

impl Coalgebra {
    pub fn new(
        comonoid: Comonoid,
        carrier: FinSet,
        pos: FinFn,
        act: BTreeMap<Label, Label>,
    ) -> Result<Self> {
        if pos.dom() != &carrier || pos.cod() != comonoid.carrier.positions() {
            return Err(Error::Typing(
                "labeling must map the carrier to the comonoid positions".into(),
            ));
        }
        let x = Coalgebra {
            comonoid,
            carrier,
            pos,
            act,
        };
        // Totality of the action on the canonical pullback.
        for s in x.carrier.iter() {
            for f in x.comonoid.carrier.dirs(x.pos.apply(s)).iter() {
                let key = Label::pair(s.clone(), f.clone());
                match x.act.get(&key) {
                    None => {
                        return Err(Error::Typing(format!("action missing at {key}")));
                    }
                    Some(v) if !x.carrier.contains(v) => {
                        return Err(Error::Typing(format!(
                            "action at {key} leaves the carrier"
                        )));
                    }
                    _ => {}
                }
            }
        }
        Ok(x)
    }

    pub fn from_fn(
        comonoid: &Comonoid,
        carrier: &FinSet,
        pos: FinFn,
        act: impl Fn(&Label, &Label) -> Label,
    ) -> Result<Self> {
        let mut table = BTreeMap::new();
        for s in carrier.iter() {
            for f in comonoid.carrier.dirs(pos.apply(s)).iter() {
                table.insert(Label::pair(s.clone(), f.clone()), act(s, f));
            }
        }
        Coalgebra::new(comonoid.clone(), carrier.clone(), pos, table)
    }

    pub fn step(&self, s: &Label, f: &Label) -> &Label {
        &self.act[&Label::pair(s.clone(), f.clone())]
    }
}

/// Check the counit and comultiplication laws of a coalgebra, with
/// witnesses.
pub fn coalg_check(x: &Coalgebra) -> Report {
    let mut r = Report::new();
    let c = &x.comonoid;
    for s in x.carrier.iter() {
        let xs = x.pos.apply(s).clone();
        // Counit: acting by the identity direction is the identity.
        let i = c.identity_dir(&xs);
        r.record(
            "counit",
            x.step(s, &i) == s,
            format!("state {s}: identity action moves it to {}", x.step(s, &i)),
        );
        for f in c.carrier.dirs(&xs).iter() {
            // Comultiplication, position part: the new label is the target.
            let s2 = x.step(s, f).clone();
            let expected = c.target_of(&xs, f);
            let ok = x.pos.apply(&s2) == &expected;
            r.record(
                "comultiplication-label",
                ok,
                format!(
                    "state {s}, direction {f}: label {} differs from target {expected}",
                    x.pos.apply(&s2)
                ),
            );
            if !ok {
                continue;
            }
            // Comultiplication, direction part: acting by a composite is
            // acting twice.
            for g in c.carrier.dirs(&expected).iter() {
                let two_steps = x.step(&s2, g).clone();
                let composite = c.compose_dirs(&xs, f, g);
                let one_step = x.step(s, &composite).clone();
                r.record(
                    "comultiplication-action",
                    two_steps == one_step,
                    format!("state {s}, directions ({f},{g}): {two_steps} vs {one_step}"),
                );
            }
        }
    }
    r
}

/// A homomorphism of coalgebras over the same comonoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalgebraHom {
    pub map: FinFn,
}

/// Check the coalgebra-homomorphism square for `h : X → X'`.
pub fn coalg_hom_check(x: &Coalgebra, x2: &Coalgebra, h: &FinFn) -> Report {
    let mut r = Report::new();
    if h.dom() != &x.carrier || h.cod() != &x2.carrier {
        r.fail("typing", "endpoints must be the coalgebra carriers");
        return r;
    }
    if x.comonoid != x2.comonoid {
        r.fail("typing", "coalgebras live over different comonoids");
        return r;
    }
    for s in x.carrier.iter() {
        let ok = x2.pos.apply(h.apply(s)) == x.pos.apply(s);
        r.record("label-preserved", ok, format!("state {s}"));
        if !ok {
            continue;
        }
        for f in x.comonoid.carrier.dirs(x.pos.apply(s)).iter() {
            let lhs = h.apply(x.step(s, f));
            let rhs = x2.step(h.apply(s), f);
            r.record(
                "action-preserved",
                lhs == rhs,
                format!("state {s}, direction {f}: {lhs} vs {rhs}"),
            );
        }
    }
    r
}

/// Enumerate all coalgebra homomorphisms `X → X'`.
pub fn coalg_homs(x: &Coalgebra, x2: &Coalgebra, budget: Budget) -> Result<Vec<FinFn>> {
    budget.charge(
        pow128(x2.carrier.len() as u128, x.carrier.len() as u128),
        "coalgebra hom enumeration",
    )?;
    Ok(all_fns(&x.carrier, &x2.carrier, budget)?
        .into_iter()
        .filter(|h| coalg_hom_check(x, x2, h).passed())
        .collect())
}

/// Present a coalgebra as a discrete opfibration: the total category of
/// its states with a cartesian cofunctor down to the comonoid's category.
///
/// States are objects; a morphism out of `s` is a pair `(s, f)` for each
/// direction `f` outgoing from its label, with target `s·f`.
pub fn coalg_to_opfib(x: &Coalgebra, budget: Budget) -> Result<(InternalCategory, PolyMor)> {
    let report = coalg_check(x);
    if let Some(first) = report.first_failure() {
        return Err(Error::invalid("coalgebra", first));
    }
    let c = &x.comonoid;
    let mut morphisms = Vec::new();
    let mut src_map = BTreeMap::new();
    let mut tgt_map = BTreeMap::new();
    for s in x.carrier.iter() {
        for f in c.carrier.dirs(x.pos.apply(s)).iter() {
            let m = Label::pair(s.clone(), f.clone());
            morphisms.push(m.clone());
            src_map.insert(m.clone(), s.clone());
            tgt_map.insert(m, x.step(s, f).clone());
        }
    }
    let morphisms = FinSet::new(morphisms)?;
    let objects = x.carrier.clone();
    let src = FinFn::new(morphisms.clone(), objects.clone(), src_map)?;
    let tgt = FinFn::new(morphisms.clone(), objects.clone(), tgt_map)?;
    let ident = FinFn::from_fn(objects.clone(), morphisms.clone(), |s| {
        Label::pair(s.clone(), c.identity_dir(x.pos.apply(s)))
    })?;
    let mut comp = BTreeMap::new();
    for s in x.carrier.iter() {
        let xs = x.pos.apply(s).clone();
        for f in c.carrier.dirs(&xs).iter() {
            let s2 = x.step(s, f).clone();
            for g in c.carrier.dirs(x.pos.apply(&s2)).iter() {
                comp.insert(
                    Label::pair(
                        Label::pair(s.clone(), f.clone()),
                        Label::pair(s2.clone(), g.clone()),
                    ),
                    Label::pair(s.clone(), c.compose_dirs(&xs, f, g)),
                );
            }
        }
    }
    let total = InternalCategory {
        objects,
        morphisms,
        src,
        tgt,
        ident,
        comp,
    };
    let vr = total.validate();
    if let Some(first) = vr.first_failure() {
        return Err(Error::invalid("opfibration total category", first));
    }
    let total_com = crate::comonoid::cat_to_comonoid(&total, budget)?;
    // The projection cofunctor: forward on objects via the labeling,
    // backward on directions by tagging with the state.
    let proj = PolyMor::from_fns(
        &total_com.carrier,
        &c.carrier,
        |s| x.pos.apply(s).clone(),
        |s, f| Label::pair(s.clone(), f.clone()),
    )?;
    Ok((total, proj))
}

/// Rebuild a coalgebra from a discrete opfibration: an internal category
/// with a cofunctor to the comonoid's category whose backward direction
/// maps are bijections.
pub fn opfib_to_coalg(
    total: &InternalCategory,
    proj: &PolyMor,
    c: &Comonoid,
    budget: Budget,
) -> Result<Coalgebra> {
    let report = total.validate();
    if let Some(first) = report.first_failure() {
        return Err(Error::invalid("internal category", first));
    }
    let total_com = crate::comonoid::cat_to_comonoid(total, budget)?;
    if proj.dom() != &total_com.carrier || proj.cod() != &c.carrier {
        return Err(Error::Typing(
            "projection must map the total category's comonoid carrier to the base carrier"
                .into(),
        ));
    }
    let cof = crate::comonoid::cofunctor_check(proj, &total_com, c, budget)?;
    if !cof.passed() {
        return Err(Error::invalid(
            "opfibration",
            cof.homomorphism
                .first_failure()
                .or_else(|| cof.cofunctor.first_failure())
                .unwrap_or_default(),
        ));
    }
    if !proj.classify().cartesian {
        return Err(Error::invalid(
            "opfibration",
            "projection is not cartesian: some direction map is not a bijection",
        ));
    }
    Coalgebra::from_fn(c, &total.objects, proj.on_pos().clone(), |s, f| {
        let lifted = proj.on_dir(s).apply(f);
        total.tgt.apply(lifted).clone()
    })
}

/// A copresheaf on a finite category: a covariant set-valued assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Copresheaf {
    pub base: FinCat,
    pub at: BTreeMap<Label, FinSet>,
    /// For `m : x → y`, a map `at[x] → at[y]`.
    pub action: BTreeMap<Label, FinFn>,
}

impl Copresheaf {
    pub fn new(
        base: FinCat,
        at: BTreeMap<Label, FinSet>,
        action: BTreeMap<Label, FinFn>,
    ) -> Result<Self> {
        let x = Copresheaf { base, at, action };
        let r = x.validate();
        if let Some(first) = r.first_failure() {
            return Err(Error::invalid("copresheaf", first));
        }
        Ok(x)
    }

    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        for x in self.base.objects.iter() {
            if !self.at.contains_key(x) {
                r.fail("carrier", format!("no set at object {x}"));
            }
        }
        if !r.passed() {
            return r;
        }
        for m in self.base.morphisms.iter() {
            let x = self.base.src.apply(m);
            let y = self.base.tgt.apply(m);
            match self.action.get(m) {
                None => r.fail("action", format!("no action at {m}")),
                Some(f) => r.record(
                    "action-typing",
                    f.dom() == &self.at[x] && f.cod() == &self.at[y],
                    format!("morphism {m}"),
                ),
            }
        }
        if !r.passed() {
            return r;
        }
        for x in self.base.objects.iter() {
            let id = self.base.ident.apply(x);
            r.record(
                "functoriality-id",
                self.action[id] == FinFn::identity(&self.at[x]),
                format!("object {x}"),
            );
        }
        for f in self.base.morphisms.iter() {
            for g in self.base.morphisms.iter() {
                if self.base.tgt.apply(f) != self.base.src.apply(g) {
                    continue;
                }
                let gf = self.base.comp(g, f).unwrap();
                let lhs = self.action[gf].clone();
                let rhs = self.action[f].then(&self.action[g]).unwrap();
                r.record("functoriality-comp", lhs == rhs, format!("({g},{f})"));
            }
        }
        r
    }

    pub fn total_size(&self) -> usize {
        self.at.values().map(FinSet::len).sum()
    }

    /// The covariant representable at `a`: `x ↦ Hom(a, x)`.
    pub fn corepresentable(base: &FinCat, a: &Label) -> Result<Copresheaf> {
        let mut at = BTreeMap::new();
        for x in base.objects.iter() {
            at.insert(x.clone(), FinSet::new(base.hom(a, x))?);
        }
        let mut action = BTreeMap::new();
        for m in base.morphisms.iter() {
            let x = base.src.apply(m).clone();
            let y = base.tgt.apply(m).clone();
            action.insert(
                m.clone(),
                FinFn::from_fn(at[&x].clone(), at[&y].clone(), |h| {
                    base.comp(m, h).unwrap().clone()
                })?,
            );
        }
        Copresheaf::new(base.clone(), at, action)
    }

    /// Total set of states, labeled `(object, element)`.
    pub fn total_set(&self) -> FinSet {
        let mut elems = Vec::new();
        for x in self.base.objects.iter() {
            for v in self.at[x].iter() {
                elems.push(Label::pair(x.clone(), v.clone()));
            }
        }
        FinSet::new(elems).expect("pairs distinct")
    }
}

/// Natural transformations between copresheaves, enumerated.
pub fn copresheaf_homs(
    w: &Copresheaf,
    v: &Copresheaf,
    budget: Budget,
) -> Result<Vec<BTreeMap<Label, FinFn>>> {
    let mut count: u128 = 1;
    for x in w.base.objects.iter() {
        count = count.saturating_mul(pow128(v.at[x].len() as u128, w.at[x].len() as u128));
    }
    budget.charge(count, "copresheaf hom enumeration")?;
    let objects: Vec<Label> = w.base.objects.iter().cloned().collect();
    let per_object: Vec<Vec<FinFn>> = objects
        .iter()
        .map(|x| all_fns(&w.at[x], &v.at[x], budget))
        .collect::<Result<_>>()?;
    if per_object.iter().any(Vec::is_empty) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut pick = vec![0usize; objects.len()];
    'outer: loop {
        let components: BTreeMap<Label, FinFn> = objects
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), per_object[i][pick[i]].clone()))
            .collect();
        let natural = w.base.morphisms.iter().all(|m| {
            let x = w.base.src.apply(m);
            let y = w.base.tgt.apply(m);
            components[x].then(&v.action[m]).unwrap()
                == w.action[m].then(&components[y]).unwrap()
        });
        if natural {
            out.push(components);
        }
        let mut i = objects.len();
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < per_object[i].len() {
                break;
            }
            pick[i] = 0;
        }
    }
    Ok(out)
}

/// Grothendieck construction: the coalgebra of a copresheaf on the
/// comonoid's category. The comonoid must present that category with
/// matching labels (as produced by `fincat_comonoid`).
pub fn copresheaf_to_coalg(x: &Copresheaf, c: &Comonoid) -> Result<Coalgebra> {
    let carrier = x.total_set();
    let pos = FinFn::from_fn(carrier.clone(), c.carrier.positions().clone(), |sv| {
        sv.expect_pair().0.clone()
    })?;
    Coalgebra::from_fn(c, &carrier, pos, |sv, f| {
        let (_, v) = sv.expect_pair();
        let target = c.target_of(sv.expect_pair().0, f);
        Label::pair(target, x.action[f].apply(v).clone())
    })
}

/// Inverse Grothendieck construction: split a coalgebra into a copresheaf
/// on the comonoid's category. The base must present the comonoid's
/// category with morphism labels matching the directions.
pub fn coalg_to_copresheaf(x: &Coalgebra, base: &FinCat) -> Result<Copresheaf> {
    let mut at = BTreeMap::new();
    for obj in base.objects.iter() {
        at.insert(obj.clone(), FinSet::new(x.pos.preimage(obj))?);
    }
    let mut action = BTreeMap::new();
    for m in base.morphisms.iter() {
        let src = base.src.apply(m).clone();
        let tgt = base.tgt.apply(m).clone();
        action.insert(
            m.clone(),
            FinFn::from_fn(at[&src].clone(), at[&tgt].clone(), |s| x.step(s, m).clone())?,
        );
    }
    Copresheaf::new(base.clone(), at, action)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comonoid::fincat_comonoid;

    fn b() -> Budget {
        Budget::default()
    }

    fn walking_arrow_comonoid() -> Comonoid {
        fincat_comonoid(&FinCat::walking_arrow(), b()).unwrap()
    }

    /// The copresheaf X(a) = {x, y}, X(b) = {z} on the walking arrow.
    fn sample_copresheaf() -> Copresheaf {
        let base = FinCat::walking_arrow();
        let xa = FinSet::new(vec![Label::str("x"), Label::str("y")]).unwrap();
        let xb = FinSet::singleton(Label::str("z"));
        Copresheaf::new(
            base,
            [(Label::str("a"), xa.clone()), (Label::str("b"), xb.clone())].into(),
            [
                (Label::str("id_a"), FinFn::identity(&xa)),
                (Label::str("id_b"), FinFn::identity(&xb)),
                (
                    Label::str("f"),
                    FinFn::from_fn(xa, xb, |_| Label::str("z")).unwrap(),
                ),
            ]
            .into(),
        )
        .unwrap()
    }

    #[test]
    fn terminal_comonoid_coalgebras_are_sets() {
        let y_com = fincat_comonoid(&FinCat::terminal(), b()).unwrap();
        let s = FinSet::ints(3);
        let pos = FinFn::constant(&s, y_com.carrier.positions(), &Label::str("o")).unwrap();
        let x = Coalgebra::from_fn(&y_com, &s, pos, |s, _| s.clone()).unwrap();
        assert!(coalg_check(&x).passed());
    }

    #[test]
    fn copresheaf_coalgebra_passes_and_roundtrips() {
        let c = walking_arrow_comonoid();
        let xp = sample_copresheaf();
        let x = copresheaf_to_coalg(&xp, &c).unwrap();
        assert_eq!(x.carrier.len(), 3);
        assert!(coalg_check(&x).passed());
        let back = coalg_to_copresheaf(&x, &FinCat::walking_arrow()).unwrap();
        // The round trip relabels elements to (object, element) pairs;
        // sizes and action structure must match.
        assert_eq!(back.total_size(), xp.total_size());
        for obj in back.base.objects.iter() {
            assert_eq!(back.at[obj].len(), xp.at[obj].len());
        }
        // Converting the relabeled copresheaf again is stable.
        let x2 = copresheaf_to_coalg(&back, &c).unwrap();
        let back2 = coalg_to_copresheaf(&x2, &FinCat::walking_arrow()).unwrap();
        assert_eq!(back.total_size(), back2.total_size());
    }

    #[test]
    fn mutated_action_is_witnessed() {
        let c = walking_arrow_comonoid();
        let xp = sample_copresheaf();
        let good = copresheaf_to_coalg(&xp, &c).unwrap();
        let mut act = good.act.clone();
        // Redirect the f-action of state (a,x) onto a state labeled a:
        // breaks the comultiplication label law.
        act.insert(
            Label::pair(
                Label::pair(Label::str("a"), Label::str("x")),
                Label::str("f"),
            ),
            Label::pair(Label::str("a"), Label::str("y")),
        );
        let bad = Coalgebra::new(c, good.carrier.clone(), good.pos.clone(), act).unwrap();
        let report = coalg_check(&bad);
        assert!(!report.passed());
        assert!(report.failures().any(|ck| ck.law == "comultiplication-label"));
    }

    #[test]
    fn opfib_roundtrip() {
        let c = walking_arrow_comonoid();
        let x = copresheaf_to_coalg(&sample_copresheaf(), &c).unwrap();
        let (total, proj) = coalg_to_opfib(&x, b()).unwrap();
        assert!(total.validate().passed());
        assert!(proj.classify().cartesian);
        let back = opfib_to_coalg(&total, &proj, &c, b()).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn terminal_copresheaf_gives_objects() {
        // X ≡ 1 on the walking arrow: the total category has one state per
        // object and the labeling is a bijection.
        let c = walking_arrow_comonoid();
        let base = FinCat::walking_arrow();
        let one = FinSet::singleton(Label::unit());
        let xp = Copresheaf::new(
            base,
            [(Label::str("a"), one.clone()), (Label::str("b"), one.clone())].into(),
            [
                (Label::str("id_a"), FinFn::identity(&one)),
                (Label::str("id_b"), FinFn::identity(&one)),
                (Label::str("f"), FinFn::identity(&one)),
            ]
            .into(),
        )
        .unwrap();
        let x = copresheaf_to_coalg(&xp, &c).unwrap();
        let (total, proj) = coalg_to_opfib(&x, b()).unwrap();
        assert_eq!(total.objects.len(), 2);
        assert!(proj.on_pos().is_bijective());
    }

    #[test]
    fn representable_copresheaf_coalgebra() {
        // The corepresentable at a on the walking arrow has total size 2
        // with fibers of size 1 over each object.
        let c = walking_arrow_comonoid();
        let xp =
            Copresheaf::corepresentable(&FinCat::walking_arrow(), &Label::str("a")).unwrap();
        assert_eq!(xp.total_size(), 2);
        let x = copresheaf_to_coalg(&xp, &c).unwrap();
        assert!(coalg_check(&x).passed());
        let (_, proj) = coalg_to_opfib(&x, b()).unwrap();
        for s in x.carrier.iter() {
            assert_eq!(proj.on_dir(s).dom().len(), proj.on_dir(s).cod().len());
        }
    }

    #[test]
    fn one_element_coalgebra_count_over_walking_arrow() {
        // Exhaustive enumeration of (κ₁, κ♯) on a 1-element carrier: only
        // the labeling by b works (X(a) = ∅, X(b) = 1), so exactly one
        // structure passes.
        let c = walking_arrow_comonoid();
        let s = FinSet::singleton(Label::str("s"));
        let mut count = 0;
        for pos in all_fns(&s, c.carrier.positions(), b()).unwrap() {
            let dirs: Vec<Label> = c
                .carrier
                .dirs(pos.apply(&Label::str("s")))
                .iter()
                .cloned()
                .collect();
            let choices: Vec<Vec<Label>> = dirs.iter().map(|_| vec![Label::str("s")]).collect();
            for pick in crate::finset::cartesian(&choices) {
                let mut act = BTreeMap::new();
                for (f, v) in dirs.iter().zip(pick.iter()) {
                    act.insert(Label::pair(Label::str("s"), f.clone()), v.clone());
                }
                let cand = Coalgebra::new(c.clone(), s.clone(), pos.clone(), act).unwrap();
                if coalg_check(&cand).passed() {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 1);
    }

    #[test]
    fn hom_enumeration_matches_natural_transformations() {
        let c = walking_arrow_comonoid();
        let xp = sample_copresheaf();
        let yp =
            Copresheaf::corepresentable(&FinCat::walking_arrow(), &Label::str("a")).unwrap();
        let x = copresheaf_to_coalg(&xp, &c).unwrap();
        let y = copresheaf_to_coalg(&yp, &c).unwrap();
        let coalg_side = coalg_homs(&y, &x, b()).unwrap();
        let copresheaf_side = copresheaf_homs(&yp, &xp, b()).unwrap();
        assert_eq!(coalg_side.len(), copresheaf_side.len());
    }
}
