use crate::budget::{mul128, pow128, Budget};
use crate::error::{Error, Result};
use crate::fincat::FinCat;
use crate::finset::{cartesian, FinFn, FinSet};
use crate::label::Label;
use crate::report::Report;
use std::collections::BTreeMap;

/// A presheaf on a finite category: a set for each object and a
/// contravariant action: for `m : x → y` in the base, `action[m]`
/// maps `at[y] → at[x]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presheaf {
    pub base: FinCat,
    pub at: BTreeMap<Label, FinSet>,
    pub action: BTreeMap<Label, FinFn>,
}

impl Presheaf {
    pub fn new(
        base: FinCat,
        at: BTreeMap<Label, FinSet>,
        action: BTreeMap<Label, FinFn>,
    ) -> Result<Self> {
        let p = Presheaf { base, at, action };
        let report = p.validate();
        if let Some(first) = report.first_failure() {
            return Err(Error::invalid("presheaf", first));
        }
        Ok(p)
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
                None => r.fail("action", format!("no action at morphism {m}")),
                Some(f) => {
                    let ok = f.dom() == &self.at[y] && f.cod() == &self.at[x];
                    r.record(
                        "action-typing",
                        ok,
                        format!("morphism {m} must act at({y}) → at({x})"),
                    );
                }
            }
        }
        if !r.passed() {
            return r;
        }
        for x in self.base.objects.iter() {
            let id = self.base.ident.apply(x);
            let ok = self.action[id] == FinFn::identity(&self.at[x]);
            r.record("functoriality-id", ok, format!("object {x}"));
        }
        for f in self.base.morphisms.iter() {
            for g in self.base.morphisms.iter() {
                if self.base.tgt.apply(f) != self.base.src.apply(g) {
                    continue;
                }
                let gf = self.base.comp(g, f).unwrap();
                // X(g∘f) = X(f) ∘ X(g) acting at(tgt g) → at(src f).
                let lhs = self.action[gf].clone();
                let rhs = self.action[g].then(&self.action[f]).unwrap();
                r.record("functoriality-comp", lhs == rhs, format!("({g},{f})"));
            }
        }
        r
    }

    pub fn at(&self, x: &Label) -> &FinSet {
        &self.at[x]
    }

    pub fn act(&self, m: &Label, v: &Label) -> Label {
        self.action[m].apply(v).clone()
    }

    pub fn total_size(&self) -> usize {
        self.at.values().map(FinSet::len).sum()
    }

    /// The representable presheaf at `a`: hom sets into `a` with
    /// precomposition action.
    pub fn representable(base: &FinCat, a: &Label) -> Result<Presheaf> {
        let mut at = BTreeMap::new();
        for x in base.objects.iter() {
            at.insert(x.clone(), FinSet::new(base.hom(x, a))?);
        }
        let mut action = BTreeMap::new();
        for m in base.morphisms.iter() {
            let x = base.src.apply(m).clone();
            let y = base.tgt.apply(m).clone();
            let f = FinFn::from_fn(at[&y].clone(), at[&x].clone(), |h| {
                base.comp(h, m).unwrap().clone()
            })?;
            action.insert(m.clone(), f);
        }
        Presheaf::new(base.clone(), at, action)
    }

    pub fn terminal(base: &FinCat) -> Presheaf {
        let at: BTreeMap<Label, FinSet> = base
            .objects
            .iter()
            .map(|x| (x.clone(), FinSet::unit()))
            .collect();
        let action = base
            .morphisms
            .iter()
            .map(|m| (m.clone(), FinFn::identity(&FinSet::unit())))
            .collect();
        Presheaf {
            base: base.clone(),
            at,
            action,
        }
    }

    /// Constant presheaf on a set: every object carries the set, every
    /// morphism acts as the identity.
    pub fn constant(base: &FinCat, s: &FinSet) -> Presheaf {
        let at = base
            .objects
            .iter()
            .map(|x| (x.clone(), s.clone()))
            .collect();
        let action = base
            .morphisms
            .iter()
            .map(|m| (m.clone(), FinFn::identity(s)))
            .collect();
        Presheaf {
            base: base.clone(),
            at,
            action,
        }
    }

    /// Objectwise product with pair labels.
    pub fn product(&self, other: &Presheaf) -> Result<Presheaf> {
        if self.base != other.base {
            return Err(Error::BaseMismatch("product of presheaves".into()));
        }
        let at: BTreeMap<Label, FinSet> = self
            .at
            .iter()
            .map(|(x, s)| (x.clone(), s.product(&other.at[x])))
            .collect();
        let action = self
            .action
            .iter()
            .map(|(m, f)| (m.clone(), f.product_map(&other.action[m])))
            .collect();
        Ok(Presheaf {
            base: self.base.clone(),
            at,
            action,
        })
    }
}

/// A morphism of presheaves: one component per base object, natural in the
/// base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PshMor {
    pub dom: Presheaf,
    pub cod: Presheaf,
    pub components: BTreeMap<Label, FinFn>,
}

impl PshMor {
    pub fn new(dom: Presheaf, cod: Presheaf, components: BTreeMap<Label, FinFn>) -> Result<Self> {
        let m = PshMor {
            dom,
            cod,
            components,
        };
        let report = m.validate();
        if let Some(first) = report.first_failure() {
            return Err(Error::invalid("pshmor", first));
        }
        Ok(m)
    }

    pub fn from_fn(
        dom: &Presheaf,
        cod: &Presheaf,
        f: impl Fn(&Label, &Label) -> Label,
    ) -> Result<Self> {
        let mut components = BTreeMap::new();
        for x in dom.base.objects.iter() {
            components.insert(
                x.clone(),
                FinFn::from_fn(dom.at[x].clone(), cod.at[x].clone(), |v| f(x, v))?,
            );
        }
        PshMor::new(dom.clone(), cod.clone(), components)
    }

    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        if self.dom.base != self.cod.base {
            r.fail("base", "domain and codomain live over different bases");
            return r;
        }
        for x in self.dom.base.objects.iter() {
            match self.components.get(x) {
                None => r.fail("component", format!("missing component at {x}")),
                Some(f) => {
                    let ok = f.dom() == &self.dom.at[x] && f.cod() == &self.cod.at[x];
                    r.record("component-typing", ok, format!("object {x}"));
                }
            }
        }
        if !r.passed() {
            return r;
        }
        for m in self.dom.base.morphisms.iter() {
            let x = self.dom.base.src.apply(m);
            let y = self.dom.base.tgt.apply(m);
            let lhs = self.dom.action[m].then(&self.components[x]).unwrap();
            let rhs = self.components[y].then(&self.cod.action[m]).unwrap();
            r.record(
                "naturality",
                lhs == rhs,
                format!("square at morphism {m}: {y} → {x}"),
            );
        }
        r
    }

    pub fn identity(p: &Presheaf) -> PshMor {
        PshMor {
            dom: p.clone(),
            cod: p.clone(),
            components: p
                .base
                .objects
                .iter()
                .map(|x| (x.clone(), FinFn::identity(&p.at[x])))
                .collect(),
        }
    }

    pub fn to_terminal(p: &Presheaf) -> PshMor {
        let t = Presheaf::terminal(&p.base);
        PshMor::from_fn(p, &t, |_, _| Label::unit()).unwrap()
    }

    pub fn then(&self, g: &PshMor) -> Result<PshMor> {
        if self.cod != g.dom {
            return Err(Error::CodomainMismatch("presheaf morphisms".into()));
        }
        let components = self
            .components
            .iter()
            .map(|(x, f)| Ok((x.clone(), f.then(&g.components[x])?)))
            .collect::<Result<_>>()?;
        Ok(PshMor {
            dom: self.dom.clone(),
            cod: g.cod.clone(),
            components,
        })
    }

    pub fn apply(&self, x: &Label, v: &Label) -> Label {
        self.components[x].apply(v).clone()
    }

    pub fn is_iso(&self) -> bool {
        self.components.values().all(FinFn::is_bijective)
    }

    pub fn product_mor(&self, other: &PshMor) -> Result<PshMor> {
        let dom = self.dom.product(&other.dom)?;
        let cod = self.cod.product(&other.cod)?;
        let components = self
            .components
            .iter()
            .map(|(x, f)| (x.clone(), f.product_map(&other.components[x])))
            .collect();
        PshMor::new(dom, cod, components)
    }
}

pub fn presheaf_validate(p: &Presheaf) -> Report {
    p.validate()
}

/// Objectwise pullback of presheaf morphisms with pair labels.
#[derive(Debug, Clone)]
pub struct PshPullback {
    pub obj: Presheaf,
    pub proj1: PshMor,
    pub proj2: PshMor,
}

pub fn psh_pullback(f: &PshMor, g: &PshMor) -> Result<PshPullback> {
    if f.cod != g.cod {
        return Err(Error::CodomainMismatch("presheaf pullback".into()));
    }
    let base = f.dom.base.clone();
    let mut at = BTreeMap::new();
    for x in base.objects.iter() {
        let pb = crate::finset::pullback(&f.components[x], &g.components[x])?;
        at.insert(x.clone(), pb.obj);
    }
    let mut action = BTreeMap::new();
    for m in base.morphisms.iter() {
        let x = base.src.apply(m).clone();
        let y = base.tgt.apply(m).clone();
        let fa = f.dom.action[m].clone();
        let ga = g.dom.action[m].clone();
        let act = FinFn::from_fn(at[&y].clone(), at[&x].clone(), |p| {
            let (a, b) = p.expect_pair();
            Label::pair(fa.apply(a).clone(), ga.apply(b).clone())
        })?;
        action.insert(m.clone(), act);
    }
    let obj = Presheaf::new(base, at, action)?;
    let proj1 = PshMor::from_fn(&obj, &f.dom, |_, p| p.expect_pair().0.clone())?;
    let proj2 = PshMor::from_fn(&obj, &g.dom, |_, p| p.expect_pair().1.clone())?;
    Ok(PshPullback { obj, proj1, proj2 })
}

/// All natural transformations `W → V`, in lexicographic order of their
/// component tables.
pub fn psh_homs(w: &Presheaf, v: &Presheaf, budget: Budget) -> Result<Vec<PshMor>> {
    if w.base != v.base {
        return Err(Error::BaseMismatch("presheaf hom enumeration".into()));
    }
    let count = mul128(
        w.base
            .objects
            .iter()
            .map(|x| pow128(v.at[x].len() as u128, w.at[x].len() as u128)),
    );
    budget.charge(count, "presheaf hom enumeration")?;
    let objects: Vec<Label> = w.base.objects.iter().cloned().collect();
    let per_object: Vec<Vec<FinFn>> = objects
        .iter()
        .map(|x| crate::finset::all_fns(&w.at[x], &v.at[x], budget))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut pick = vec![0usize; objects.len()];
    'outer: loop {
        let components: BTreeMap<Label, FinFn> = objects
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), per_object[i][pick[i]].clone()))
            .collect();
        let cand = PshMor {
            dom: w.clone(),
            cod: v.clone(),
            components,
        };
        if cand.validate().passed() {
            out.push(cand);
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
        if per_object.iter().any(|v| v.is_empty()) {
            break;
        }
    }
    if per_object.iter().any(|v| v.is_empty()) {
        // Some component has no functions at all: no transformations unless
        // the domain is empty there, which all_fns already handles.
        out.retain(|_| true);
    }
    Ok(out)
}

/// Dependent product in a presheaf category along `f : Y → X` applied to
/// `g : Z → Y`.
///
/// The component at `a` is the set of pairs `(σ, h)` where `σ ∈ X(a)` and
/// `h` is a natural map `Δ_σ Y → Z` over `Y`; `Δ_σ Y` at `b` is the set of
/// pairs `(m : b → a, y ∈ Y(b))` with `X(m)(σ) = f(y)`. Elements are
/// labeled `(σ, [[m, y, h(m,y)], …])`.
#[derive(Debug, Clone)]
pub struct PshPi {
    pub obj: Presheaf,
    /// `Π_f Z → X`.
    pub mor: PshMor,
}

pub fn presheaf_pi(f: &PshMor, g: &PshMor, budget: Budget) -> Result<PshPi> {
    if g.cod != f.dom {
        return Err(Error::CodomainMismatch(
            "dependent product requires cod(g) = dom(f)".into(),
        ));
    }
    let base = f.dom.base.clone();
    let x_psh = &f.cod;
    let y_psh = &f.dom;
    let z_psh = &g.dom;

    // Pre-compute, for every object a and σ ∈ X(a), the elements of Δ_σ Y at
    // each object b.
    let sigma_fiber = |a: &Label, sigma: &Label, b: &Label| -> Vec<(Label, Label)> {
        let mut out = Vec::new();
        for m in base.hom(b, a) {
            let restricted = x_psh.act(&m, sigma);
            for y in y_psh.at(b).iter() {
                if f.apply(b, y) == restricted {
                    out.push((m.clone(), y.clone()));
                }
            }
        }
        out.sort();
        out
    };

    // Sections over a fixed (a, σ): assignments (m, y) ↦ z with g(z) = y,
    // natural in b.
    let mut at: BTreeMap<Label, FinSet> = BTreeMap::new();
    let mut assignment: BTreeMap<Label, Vec<(Label, Label)>> = BTreeMap::new();
    for a in base.objects.iter() {
        let mut elems = Vec::new();
        for sigma in x_psh.at(a).iter() {
            // Collect the domain of the section: all (b, m, y) triples.
            let mut keys: Vec<(Label, Label, Label)> = Vec::new();
            for b in base.objects.iter() {
                for (m, y) in sigma_fiber(a, sigma, b) {
                    keys.push((b.clone(), m, y));
                }
            }
            let choices: Vec<Vec<Label>> = keys
                .iter()
                .map(|(b, _, y)| {
                    z_psh
                        .at(b)
                        .iter()
                        .filter(|z| &g.apply(b, z) == y)
                        .cloned()
                        .collect()
                })
                .collect();
            budget.charge(
                mul128(choices.iter().map(|c| c.len() as u128)),
                "presheaf dependent product",
            )?;
            'section: for pick in cartesian(&choices) {
                // Naturality: for μ : b' → b and (m, y) at b, the section at
                // (m∘μ, Y(μ)(y)) must be Z(μ) of the section at (m, y).
                let lookup = |m: &Label, y: &Label| -> Option<&Label> {
                    keys.iter()
                        .position(|(_, km, ky)| km == m && ky == y)
                        .map(|i| &pick[i])
                };
                for (i, (b, m, y)) in keys.iter().enumerate() {
                    for mu in base.morphisms.iter() {
                        if base.tgt.apply(mu) != b {
                            continue;
                        }
                        let m_mu = base.comp(m, mu).unwrap().clone();
                        let y_mu = y_psh.act(mu, y);
                        let expect = z_psh.act(mu, &pick[i]);
                        match lookup(&m_mu, &y_mu) {
                            Some(z) if *z == expect => {}
                            _ => continue 'section,
                        }
                    }
                }
                let table = Label::seq(
                    keys.iter()
                        .enumerate()
                        .map(|(i, (_, m, y))| {
                            Label::seq(vec![m.clone(), y.clone(), pick[i].clone()])
                        })
                        .collect(),
                );
                elems.push(Label::pair(sigma.clone(), table));
            }
        }
        at.insert(a.clone(), FinSet::new(elems)?);
        assignment.insert(a.clone(), Vec::new());
    }

    // Action of the base on Π_f Z: restrict σ and reindex the section table.
    let mut action = BTreeMap::new();
    for mu in base.morphisms.iter() {
        let b = base.src.apply(mu).clone();
        let a = base.tgt.apply(mu).clone();
        let act = FinFn::from_fn(at[&a].clone(), at[&b].clone(), |el| {
            let (sigma, table) = el.expect_pair();
            let sigma2 = x_psh.act(mu, sigma);
            let entries = table.as_seq().unwrap();
            let lookup = |m: &Label, y: &Label| -> Label {
                for e in entries {
                    let parts = e.as_seq().unwrap();
                    if &parts[0] == m && &parts[1] == y {
                        return parts[2].clone();
                    }
                }
                panic!("section table is incomplete")
            };
            let mut new_entries = Vec::new();
            for b2 in base.objects.iter() {
                for m2 in base.hom(b2, &b) {
                    let restricted = x_psh.act(&m2, &sigma2);
                    for y in y_psh.at(b2).iter() {
                        if f.apply(b2, y) == restricted {
                            let m_comp = base.comp(mu, &m2).unwrap().clone();
                            let z = lookup(&m_comp, y);
                            new_entries.push(Label::seq(vec![m2.clone(), y.clone(), z]));
                        }
                    }
                }
            }
            new_entries.sort();
            Label::pair(sigma2, Label::seq(new_entries))
        })?;
        action.insert(mu.clone(), act);
    }
    let obj = Presheaf::new(base, at, action)?;
    let mor = PshMor::from_fn(&obj, x_psh, |_, el| el.expect_pair().0.clone())?;
    let _ = assignment;
    Ok(PshPi { obj, mor })
}

/// Counit of the adjunction: `Δ_f Π_f Z → Z` over `Y`, defined on the
/// canonical pullback of `f` and `Π_f g` (pairs `(y, (σ, h))`).
pub fn presheaf_pi_counit(f: &PshMor, g: &PshMor, pi: &PshPi) -> Result<(PshPullback, PshMor)> {
    let pb = psh_pullback(f, &pi.mor)?;
    let z = g.dom.clone();
    let base = f.dom.base.clone();
    let mut components = BTreeMap::new();
    for b in base.objects.iter() {
        let idb = base.ident.apply(b).clone();
        let comp = FinFn::from_fn(pb.obj.at[b].clone(), z.at[b].clone(), |p| {
            let (y, el) = p.expect_pair();
            let (_, table) = el.expect_pair();
            for e in table.as_seq().unwrap() {
                let parts = e.as_seq().unwrap();
                if parts[0] == idb && &parts[1] == y {
                    return parts[2].clone();
                }
            }
            panic!("counit lookup failed: section missing (id, y) entry")
        })?;
        components.insert(b.clone(), comp);
    }
    let counit = PshMor::new(pb.obj.clone(), z, components)?;
    Ok((pb, counit))
}

/// Transpose a map `u : W → Π_f Z` into `(σ : W → X, h : W ×_X Y → Z)` with
/// `h` over `Y`.
pub fn presheaf_pi_transpose(
    f: &PshMor,
    g: &PshMor,
    pi: &PshPi,
    u: &PshMor,
) -> Result<(PshMor, PshPullback, PshMor)> {
    if u.cod != pi.obj {
        return Err(Error::CodomainMismatch("map must land in Π_f Z".into()));
    }
    let sigma = u.then(&pi.mor)?;
    let pb = psh_pullback(&sigma, f)?;
    let base = f.dom.base.clone();
    let mut components = BTreeMap::new();
    for b in base.objects.iter() {
        let idb = base.ident.apply(b).clone();
        let comp = FinFn::from_fn(pb.obj.at[b].clone(), g.dom.at[b].clone(), |p| {
            let (w, y) = p.expect_pair();
            let el = u.apply(b, w);
            let (_, table) = el.expect_pair();
            for e in table.as_seq().unwrap() {
                let parts = e.as_seq().unwrap();
                if parts[0] == idb && &parts[1] == y {
                    return parts[2].clone();
                }
            }
            panic!("transpose lookup failed")
        })?;
        components.insert(b.clone(), comp);
    }
    let h = PshMor::new(pb.obj.clone(), g.dom.clone(), components)?;
    Ok((sigma, pb, h))
}

/// Inverse transpose: assemble `W → Π_f Z` from `σ : W → X` and a fiber map
/// `h : W ×_X Y → Z` over `Y`.
pub fn presheaf_pi_untranspose(
    f: &PshMor,
    pi: &PshPi,
    sigma: &PshMor,
    h: &PshMor,
) -> Result<PshMor> {
    let base = f.dom.base.clone();
    let x_psh = &f.cod;
    let y_psh = &f.dom;
    let w = sigma.dom.clone();
    PshMor::from_fn(&w, &pi.obj, |a, wv| {
        let s = sigma.apply(a, wv);
        let mut entries = Vec::new();
        for b in base.objects.iter() {
            for m in base.hom(b, a) {
                let restricted = x_psh.act(&m, &s);
                for y in y_psh.at(b).iter() {
                    if f.apply(b, y) == restricted {
                        // h at the pullback element (W(m)(w), y).
                        let wm = w.act(&m, wv);
                        let z = h.apply(b, &Label::pair(wm, y.clone()));
                        entries.push(Label::seq(vec![m.clone(), y.clone(), z]));
                    }
                }
            }
        }
        entries.sort();
        Label::pair(s, Label::seq(entries))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representable_on_walking_arrow_is_valid() {
        let c = FinCat::walking_arrow();
        let ya = Presheaf::representable(&c, &Label::str("a")).unwrap();
        assert!(ya.validate().passed());
        assert_eq!(ya.at(&Label::str("a")).len(), 1);
        assert_eq!(ya.at(&Label::str("b")).len(), 0);
        let yb = Presheaf::representable(&c, &Label::str("b")).unwrap();
        assert_eq!(yb.at(&Label::str("a")).len(), 1);
        assert_eq!(yb.at(&Label::str("b")).len(), 1);
    }

    #[test]
    fn presheaf_pi_agrees_with_pi_finset_over_terminal_base() {
        // Over the terminal category a presheaf is a set; Π agrees with the
        // plain finite-set construction element-for-element after stripping
        // the (identity morphism) component from section tables.
        let base = FinCat::terminal();
        let o = Label::str("o");
        let mk = |n: usize| {
            Presheaf::new(
                base.clone(),
                [(o.clone(), FinSet::ints(n))].into(),
                [(
                    Label::str("id_o"),
                    FinFn::identity(&FinSet::ints(n)),
                )]
                .into(),
            )
            .unwrap()
        };
        let ypsh = mk(2);
        let xpsh = mk(1);
        let zpsh = mk(5);
        let f = PshMor::from_fn(&ypsh, &xpsh, |_, _| Label::int(0)).unwrap();
        let g = PshMor::from_fn(&zpsh, &ypsh, |_, v| match v {
            Label::Int(n) => Label::int(n % 2),
            _ => unreachable!(),
        })
        .unwrap();
        let pi = presheaf_pi(&f, &g, Budget::default()).unwrap();

        let ff = FinFn::from_fn(FinSet::ints(2), FinSet::ints(1), |_| Label::int(0)).unwrap();
        let gf = FinFn::from_fn(FinSet::ints(5), FinSet::ints(2), |v| match v {
            Label::Int(n) => Label::int(n % 2),
            _ => unreachable!(),
        })
        .unwrap();
        let pi_set = crate::finset::pi_finset(&ff, &gf, Budget::default()).unwrap();

        // Normalize: (σ, [[m,y,z]…]) ↦ (σ, [[y,z]…]).
        let normalized: Vec<Label> = pi.obj.at(&o).iter().map(|el| {
            let (s, table) = el.expect_pair();
            Label::pair(
                s.clone(),
                Label::seq(
                    table
                        .as_seq()
                        .unwrap()
                        .iter()
                        .map(|e| {
                            let parts = e.as_seq().unwrap();
                            Label::pair(parts[1].clone(), parts[2].clone())
                        })
                        .collect(),
                ),
            )
        }).collect();
        let expected: Vec<Label> = pi_set.obj.iter().cloned().collect();
        assert_eq!(normalized, expected);
    }

    #[test]
    fn presheaf_pi_iso_f_gives_z() {
        // Over the walking arrow with f an isomorphism, Π_f Z ≅ Z.
        let base = FinCat::walking_arrow();
        let z = Presheaf::constant(&base, &FinSet::ints(2));
        let y = Presheaf::constant(&base, &FinSet::ints(3));
        let g = PshMor::from_fn(&z, &y, |_, v| v.clone()).unwrap();
        let f = PshMor::identity(&y);
        let pi = presheaf_pi(&f, &g, Budget::default()).unwrap();
        for x in base.objects.iter() {
            assert_eq!(pi.obj.at(x).len(), z.at(x).len());
        }
        assert!(pi.obj.validate().passed());
    }

    #[test]
    fn presheaf_pi_adjunction_on_graphs() {
        // Base •⇉• (graphs). Brute-force both sides of the defining
        // bijection Hom(W, Π_f Z) ≅ ⨿_{σ: W→X} Hom_{/Y}(Δ_σ Y, Z) for three
        // probe presheaves W, and round-trip the transposes.
        let base = FinCat::parallel_pair();
        let budget = Budget::default();
        // Y: the graph with 2 vertices and 2 parallel edges; X terminal;
        // Z over Y: doubles one edge fiber.
        let v = Label::str("v");
        let e = Label::str("e");
        let y = Presheaf::new(
            base.clone(),
            [(v.clone(), FinSet::ints(2)), (e.clone(), FinSet::ints(2))].into(),
            [
                (Label::str("id_v"), FinFn::identity(&FinSet::ints(2))),
                (Label::str("id_e"), FinFn::identity(&FinSet::ints(2))),
                (
                    Label::str("s"),
                    FinFn::from_fn(FinSet::ints(2), FinSet::ints(2), |_| Label::int(0)).unwrap(),
                ),
                (
                    Label::str("t"),
                    FinFn::from_fn(FinSet::ints(2), FinSet::ints(2), |_| Label::int(1)).unwrap(),
                ),
            ]
            .into(),
        )
        .unwrap();
        let x = Presheaf::terminal(&base);
        let f = PshMor::to_terminal(&y);
        // Z: same vertices, edge fiber of edge 0 doubled.
        let z = Presheaf::new(
            base.clone(),
            [(v.clone(), FinSet::ints(2)), (e.clone(), FinSet::ints(3))].into(),
            [
                (Label::str("id_v"), FinFn::identity(&FinSet::ints(2))),
                (Label::str("id_e"), FinFn::identity(&FinSet::ints(3))),
                (
                    Label::str("s"),
                    FinFn::from_fn(FinSet::ints(3), FinSet::ints(2), |_| Label::int(0)).unwrap(),
                ),
                (
                    Label::str("t"),
                    FinFn::from_fn(FinSet::ints(3), FinSet::ints(2), |_| Label::int(1)).unwrap(),
                ),
            ]
            .into(),
        )
        .unwrap();
        let g = PshMor::from_fn(&z, &y, |obj, val| {
            if obj == &Label::str("e") {
                match val {
                    Label::Int(n) if *n <= 1 => Label::int(0),
                    _ => Label::int(1),
                }
            } else {
                val.clone()
            }
        })
        .unwrap();
        let pi = presheaf_pi(&f, &g, budget).unwrap();
        assert!(pi.obj.validate().passed());

        let probes = vec![
            Presheaf::terminal(&base),
            Presheaf::representable(&base, &v).unwrap(),
            Presheaf::representable(&base, &e).unwrap(),
        ];
        for w in probes {
            let lhs = psh_homs(&w, &pi.obj, budget).unwrap();
            let mut rhs = 0usize;
            for sigma in psh_homs(&w, &x, budget).unwrap() {
                let pb = psh_pullback(&sigma, &f).unwrap();
                for h in psh_homs(&pb.obj, &z, budget).unwrap() {
                    if h.then(&g).unwrap() == pb.proj2 {
                        rhs += 1;
                    }
                }
            }
            assert_eq!(lhs.len(), rhs);
            for u in &lhs {
                let (sigma, _, h) = presheaf_pi_transpose(&f, &g, &pi, u).unwrap();
                let back = presheaf_pi_untranspose(&f, &pi, &sigma, &h).unwrap();
                assert_eq!(&back, u);
            }
        }
    }
}
