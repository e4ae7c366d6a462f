use crate::budget::{mul128, pow128, Budget};
use crate::error::{Error, Result};
use crate::label::Label;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A finite set of structured labels, stored in canonical order.
/// Cloning is cheap: the element list is shared.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinSet {
    elems: Arc<Vec<Label>>,
}

impl FinSet {
    /// Build a set; elements are sorted into canonical order and must be
    /// pairwise distinct.
    pub fn new(mut elems: Vec<Label>) -> Result<Self> {
        elems.sort();
        for w in elems.windows(2) {
            if w[0] == w[1] {
                return Err(Error::invalid("finset", format!("duplicate label {}", w[0])));
            }
        }
        Ok(FinSet {
            elems: Arc::new(elems),
        })
    }

    pub fn empty() -> Self {
        FinSet {
            elems: Arc::new(Vec::new()),
        }
    }

    /// The one-element set on the empty tree label.
    pub fn unit() -> Self {
        FinSet {
            elems: Arc::new(vec![Label::unit()]),
        }
    }

    pub fn singleton(l: Label) -> Self {
        FinSet {
            elems: Arc::new(vec![l]),
        }
    }

    /// `{0, 1, …, n-1}` with integer labels.
    pub fn ints(n: usize) -> Self {
        FinSet {
            elems: Arc::new((0..n as i64).map(Label::Int).collect()),
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, l: &Label) -> bool {
        self.elems.binary_search(l).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Label> {
        self.elems.iter()
    }

    pub fn elems(&self) -> &[Label] {
        &self.elems
    }

    /// Cartesian product with pair labels.
    pub fn product(&self, other: &FinSet) -> FinSet {
        let mut elems = Vec::with_capacity(self.len() * other.len());
        for a in self.iter() {
            for b in other.iter() {
                elems.push(Label::pair(a.clone(), b.clone()));
            }
        }
        FinSet::new(elems).expect("pairs of distinct labels are distinct")
    }
}

/// A total function between finite sets, given by an explicit assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinFn {
    dom: FinSet,
    cod: FinSet,
    map: BTreeMap<Label, Label>,
}

impl FinFn {
    pub fn new(dom: FinSet, cod: FinSet, map: BTreeMap<Label, Label>) -> Result<Self> {
        for x in dom.iter() {
            match map.get(x) {
                None => {
                    return Err(Error::invalid("finfn", format!("no value assigned to {x}")))
                }
                Some(y) if !cod.contains(y) => {
                    return Err(Error::invalid(
                        "finfn",
                        format!("image {y} of {x} is not in the codomain"),
                    ))
                }
                _ => {}
            }
        }
        if map.len() != dom.len() {
            return Err(Error::invalid(
                "finfn",
                "assignment mentions labels outside the domain",
            ));
        }
        Ok(FinFn { dom, cod, map })
    }

    /// Build from a closure over the domain.
    pub fn from_fn(dom: FinSet, cod: FinSet, f: impl Fn(&Label) -> Label) -> Result<Self> {
        let map = dom.iter().map(|x| (x.clone(), f(x))).collect();
        FinFn::new(dom, cod, map)
    }

    pub fn identity(s: &FinSet) -> Self {
        FinFn {
            dom: s.clone(),
            cod: s.clone(),
            map: s.iter().map(|x| (x.clone(), x.clone())).collect(),
        }
    }

    /// The unique map to the one-element set.
    pub fn to_unit(dom: &FinSet) -> Self {
        FinFn {
            dom: dom.clone(),
            cod: FinSet::unit(),
            map: dom.iter().map(|x| (x.clone(), Label::unit())).collect(),
        }
    }

    pub fn constant(dom: &FinSet, cod: &FinSet, value: &Label) -> Result<Self> {
        FinFn::from_fn(dom.clone(), cod.clone(), |_| value.clone())
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn map(&self) -> &BTreeMap<Label, Label> {
        &self.map
    }

    pub fn apply(&self, x: &Label) -> &Label {
        self.map
            .get(x)
            .unwrap_or_else(|| panic!("label {x} is not in the domain"))
    }

    /// Diagram-order composition: `self` then `g`.
    pub fn then(&self, g: &FinFn) -> Result<FinFn> {
        if self.cod != g.dom {
            return Err(Error::CodomainMismatch(
                "composition requires cod(first) = dom(second)".into(),
            ));
        }
        FinFn::from_fn(self.dom.clone(), g.cod.clone(), |x| {
            g.apply(self.apply(x)).clone()
        })
    }

    pub fn preimage(&self, y: &Label) -> Vec<Label> {
        self.dom
            .iter()
            .filter(|x| self.apply(x) == y)
            .cloned()
            .collect()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        self.map.values().all(|y| seen.insert(y))
    }

    pub fn is_surjective(&self) -> bool {
        let image: std::collections::BTreeSet<_> = self.map.values().collect();
        image.len() == self.cod.len()
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.len() == self.cod.len() && self.is_injective()
    }

    pub fn inverse(&self) -> Result<FinFn> {
        if !self.is_bijective() {
            return Err(Error::invalid("finfn", "not a bijection"));
        }
        let map = self.map.iter().map(|(x, y)| (y.clone(), x.clone())).collect();
        FinFn::new(self.cod.clone(), self.dom.clone(), map)
    }

    /// Componentwise product map `f × g`.
    pub fn product_map(&self, g: &FinFn) -> FinFn {
        let dom = self.dom.product(&g.dom);
        let cod = self.cod.product(&g.cod);
        FinFn::from_fn(dom, cod, |p| {
            let (a, b) = p.expect_pair();
            Label::pair(self.apply(a).clone(), g.apply(b).clone())
        })
        .expect("product map is total")
    }

    /// The function as a canonical label: the ordered table of assignments.
    pub fn table_label(&self) -> Label {
        Label::seq(
            self.map
                .iter()
                .map(|(k, v)| Label::pair(k.clone(), v.clone()))
                .collect(),
        )
    }

    /// Rebuild a function from a table label produced by `table_label`.
    pub fn from_table_label(dom: &FinSet, cod: &FinSet, table: &Label) -> Result<FinFn> {
        let entries = table
            .as_seq()
            .ok_or_else(|| Error::invalid("finfn table", "not a sequence"))?;
        let mut map = BTreeMap::new();
        for e in entries {
            let (k, v) = e
                .as_pair()
                .ok_or_else(|| Error::invalid("finfn table", "entry is not a pair"))?;
            map.insert(k.clone(), v.clone());
        }
        FinFn::new(dom.clone(), cod.clone(), map)
    }
}

/// All functions `dom → cod` in lexicographic order over the ordered domain.
pub fn all_fns(dom: &FinSet, cod: &FinSet, budget: Budget) -> Result<Vec<FinFn>> {
    let count = pow128(cod.len() as u128, dom.len() as u128);
    // Charge for the cells materialized, not just the number of functions.
    budget.charge(
        count.saturating_mul(1 + dom.len() as u128),
        "function enumeration",
    )?;
    if dom.is_empty() {
        return Ok(vec![FinFn::new(dom.clone(), cod.clone(), BTreeMap::new())?]);
    }
    if cod.is_empty() {
        return Ok(Vec::new());
    }
    let n = dom.len();
    let base = cod.len();
    let mut out = Vec::with_capacity(count as usize);
    let mut idx = vec![0usize; n];
    loop {
        let map = dom
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), cod.elems()[idx[i]].clone()))
            .collect();
        out.push(FinFn {
            dom: dom.clone(),
            cod: cod.clone(),
            map,
        });
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < base {
                break;
            }
            idx[i] = 0;
        }
    }
}

/// Canonical pullback of `f : A → C` and `g : B → C`: the set of pairs
/// `(a, b)` with `f(a) = g(b)`, with its two projections.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub obj: FinSet,
    pub proj1: FinFn,
    pub proj2: FinFn,
}

pub fn pullback(f: &FinFn, g: &FinFn) -> Result<Pullback> {
    if f.cod() != g.cod() {
        return Err(Error::CodomainMismatch(
            "pullback requires a shared codomain".into(),
        ));
    }
    let mut elems = Vec::new();
    for a in f.dom().iter() {
        for b in g.dom().iter() {
            if f.apply(a) == g.apply(b) {
                elems.push(Label::pair(a.clone(), b.clone()));
            }
        }
    }
    let obj = FinSet::new(elems)?;
    let proj1 = FinFn::from_fn(obj.clone(), f.dom().clone(), |p| p.expect_pair().0.clone())?;
    let proj2 = FinFn::from_fn(obj.clone(), g.dom().clone(), |p| p.expect_pair().1.clone())?;
    Ok(Pullback { obj, proj1, proj2 })
}

/// Canonical equalizer of a parallel pair `f, g : A → B`: the subset of `A`
/// where they agree, with its inclusion.
#[derive(Debug, Clone)]
pub struct Equalizer {
    pub obj: FinSet,
    pub include: FinFn,
}

pub fn equalizer(f: &FinFn, g: &FinFn) -> Result<Equalizer> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(Error::DomainMismatch(
            "equalizer requires a parallel pair".into(),
        ));
    }
    let elems: Vec<Label> = f
        .dom()
        .iter()
        .filter(|x| f.apply(x) == g.apply(x))
        .cloned()
        .collect();
    let obj = FinSet::new(elems)?;
    let include = FinFn::from_fn(obj.clone(), f.dom().clone(), |x| x.clone())?;
    Ok(Equalizer { obj, include })
}

/// Dependent product along `f : B → A` applied to `g : Z → B`.
///
/// The fiber of `Π_f Z` over `a` is the set of sections `s : f⁻¹(a) → Z`
/// with `g ∘ s` the fiber inclusion; an element is labeled
/// `(a, [(b, s(b)), …])`. An empty fiber contributes exactly one section,
/// the empty one.
#[derive(Debug, Clone)]
pub struct Pi {
    pub obj: FinSet,
    /// `Π_f Z → A`.
    pub mor: FinFn,
}

pub fn pi_finset(f: &FinFn, g: &FinFn, budget: Budget) -> Result<Pi> {
    if g.cod() != f.dom() {
        return Err(Error::CodomainMismatch(
            "dependent product requires cod(g) = dom(f)".into(),
        ));
    }
    // Candidate count: per a, the product over the fiber of the g-fiber sizes.
    let mut total: u128 = 0;
    for a in f.cod().iter() {
        let fiber = f.preimage(a);
        let sections = mul128(fiber.iter().map(|b| g.preimage(b).len() as u128));
        total = total.saturating_add(sections.saturating_mul(1 + fiber.len() as u128));
    }
    budget.charge(total, "dependent product")?;

    let mut elems = Vec::new();
    let mut assignment = Vec::new();
    for a in f.cod().iter() {
        let fiber = f.preimage(a);
        let choices: Vec<Vec<Label>> = fiber.iter().map(|b| g.preimage(b)).collect();
        for pick in cartesian(&choices) {
            let table = Label::seq(
                fiber
                    .iter()
                    .zip(pick.iter())
                    .map(|(b, z)| Label::pair(b.clone(), z.clone()))
                    .collect(),
            );
            let label = Label::pair(a.clone(), table);
            elems.push(label.clone());
            assignment.push((label, a.clone()));
        }
    }
    let obj = FinSet::new(elems)?;
    let mor = FinFn::new(obj.clone(), f.cod().clone(), assignment.into_iter().collect())?;
    Ok(Pi { obj, mor })
}

/// Evaluate the section stored in a `pi_finset` element at `b`.
pub fn pi_section_at(elem: &Label, b: &Label) -> Result<Label> {
    let (_, table) = elem
        .as_pair()
        .ok_or_else(|| Error::invalid("pi element", "not a pair"))?;
    for entry in table.as_seq().unwrap_or(&[]) {
        let (k, v) = entry
            .as_pair()
            .ok_or_else(|| Error::invalid("pi element", "table entry is not a pair"))?;
        if k == b {
            return Ok(v.clone());
        }
    }
    Err(Error::invalid(
        "pi element",
        format!("section has no entry at {b}"),
    ))
}

/// Distributivity pullback around `(f : B → A, g : C → B)`: the terminal
/// pullback of `f` factoring through `g`.
#[derive(Debug, Clone)]
pub struct DistPullback {
    /// `Π_f C`.
    pub pi: Pi,
    /// Apex `Δ_f Π_f C`, the set of pairs `(b, section)` with `f(b)` the
    /// section's base point.
    pub apex: FinSet,
    /// `Δ_f Π_f C → Π_f C`.
    pub to_pi: FinFn,
    /// `Δ_f Π_f C → B`.
    pub to_base: FinFn,
    /// Counit `ε : Δ_f Π_f C → C` over `B`.
    pub counit: FinFn,
}

pub fn distributivity_pullback(f: &FinFn, g: &FinFn, budget: Budget) -> Result<DistPullback> {
    let pi = pi_finset(f, g, budget)?;
    let pb = pullback(f, &pi.mor)?;
    let apex = pb.obj;
    let to_base = pb.proj1;
    let to_pi = pb.proj2;
    let counit = FinFn::from_fn(apex.clone(), g.dom().clone(), |p| {
        let (b, sect) = p.expect_pair();
        pi_section_at(sect, b).expect("pullback pairs are section-compatible")
    })?;
    Ok(DistPullback {
        pi,
        apex,
        to_pi,
        to_base,
        counit,
    })
}

/// One direction of the adjunction `Hom(D, Π_f C) ≅ ⨿_{σ: D→A} Hom_{/B}(Δ_f D, C)`:
/// split a map into `Π_f C` into its base map and fiberwise map.
pub fn pi_transpose(f: &FinFn, pi: &Pi, u: &FinFn) -> Result<(FinFn, FinFn)> {
    if u.cod() != &pi.obj {
        return Err(Error::CodomainMismatch("map must land in Π_f C".into()));
    }
    let sigma = u.then(&pi.mor)?;
    let pb = pullback(&sigma, f)?;
    // Δ_σ D = {(d,b) : σ(d) = f(b)}; the fiber map sends (d,b) to u(d)'s
    // section evaluated at b.
    let cod = {
        // Reconstruct C from the sections' values.
        let mut values = Vec::new();
        for e in pi.obj.iter() {
            let (_, table) = e.expect_pair();
            for entry in table.as_seq().unwrap_or(&[]) {
                values.push(entry.expect_pair().1.clone());
            }
        }
        values.sort();
        values.dedup();
        FinSet::new(values)?
    };
    let h = FinFn::from_fn(pb.obj.clone(), cod, |p| {
        let (d, b) = p.expect_pair();
        pi_section_at(u.apply(d), b).expect("sections cover the fiber")
    })?;
    Ok((sigma, h))
}

/// The other direction: assemble a map `D → Π_f C` from a base map
/// `σ : D → A` and a fiberwise map `h : D ×_A B → C` over `B`.
pub fn pi_untranspose(f: &FinFn, pi: &Pi, sigma: &FinFn, h: &FinFn) -> Result<FinFn> {
    let pb = pullback(sigma, f)?;
    if h.dom() != &pb.obj {
        return Err(Error::DomainMismatch(
            "fiber map must be defined on D ×_A B".into(),
        ));
    }
    FinFn::from_fn(sigma.dom().clone(), pi.obj.clone(), |d| {
        let a = sigma.apply(d);
        let fiber = f.preimage(a);
        let table = Label::seq(
            fiber
                .iter()
                .map(|b| {
                    let z = h.apply(&Label::pair(d.clone(), b.clone()));
                    Label::pair(b.clone(), z.clone())
                })
                .collect(),
        );
        Label::pair(a.clone(), table)
    })
}

/// All tuples picking one element from each slot.
pub fn cartesian(choices: &[Vec<Label>]) -> Vec<Vec<Label>> {
    let mut out = vec![Vec::new()];
    for slot in choices {
        let mut next = Vec::with_capacity(out.len() * slot.len());
        for tuple in &out {
            for x in slot {
                let mut t = tuple.clone();
                t.push(x.clone());
                next.push(t);
            }
        }
        out = next;
    }
    out
}
