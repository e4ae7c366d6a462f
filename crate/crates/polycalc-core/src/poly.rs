use crate::budget::{mul128, pow128, Budget};
use crate::error::{Error, Result};
use crate::finset::{all_fns, FinFn, FinSet};
use crate::label::Label;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A polynomial over finite sets: a finite position set with a finite
/// (possibly empty) direction set for each position. Cloning is cheap:
/// the direction table is shared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    positions: FinSet,
    dirs: Arc<BTreeMap<Label, FinSet>>,
}

impl Poly {
    pub fn new(positions: FinSet, dirs: BTreeMap<Label, FinSet>) -> Result<Self> {
        for p in positions.iter() {
            if !dirs.contains_key(p) {
                return Err(Error::invalid(
                    "poly",
                    format!("no direction set at position {p}"),
                ));
            }
        }
        if dirs.len() != positions.len() {
            return Err(Error::invalid(
                "poly",
                "direction sets mention labels outside the position set",
            ));
        }
        Ok(Poly {
            positions,
            dirs: Arc::new(dirs),
        })
    }

    /// Build from `(position, directions)` pairs.
    pub fn from_table(entries: Vec<(Label, Vec<Label>)>) -> Result<Self> {
        let positions = FinSet::new(entries.iter().map(|(p, _)| p.clone()).collect())?;
        let dirs = entries
            .into_iter()
            .map(|(p, ds)| Ok((p, FinSet::new(ds)?)))
            .collect::<Result<_>>()?;
        Poly::new(positions, dirs)
    }

    /// Sum of representables with integer labels: `arities[i]` is the
    /// number of directions at position `i`.
    pub fn numeric(arities: &[usize]) -> Self {
        let entries = arities
            .iter()
            .enumerate()
            .map(|(i, &n)| {
                (
                    Label::int(i as i64),
                    (0..n as i64).map(Label::Int).collect(),
                )
            })
            .collect();
        Poly::from_table(entries).expect("integer labels are distinct")
    }

    /// The identity polynomial: one position, one direction.
    pub fn y() -> Self {
        Poly::from_table(vec![(Label::unit(), vec![Label::unit()])]).unwrap()
    }

    /// The polynomial with no positions.
    pub fn zero() -> Self {
        Poly {
            positions: FinSet::empty(),
            dirs: Arc::new(BTreeMap::new()),
        }
    }

    pub fn positions(&self) -> &FinSet {
        &self.positions
    }

    pub fn dirs(&self, pos: &Label) -> &FinSet {
        self.dirs
            .get(pos)
            .unwrap_or_else(|| panic!("{pos} is not a position"))
    }

    pub fn dir_map(&self) -> &BTreeMap<Label, FinSet> {
        &self.dirs
    }

    /// Total space: the disjoint union of the direction sets, with pair
    /// labels `(position, direction)`.
    pub fn total(&self) -> FinSet {
        let mut elems = Vec::new();
        for p in self.positions.iter() {
            for d in self.dirs(p).iter() {
                elems.push(Label::pair(p.clone(), d.clone()));
            }
        }
        FinSet::new(elems).expect("pairs are distinct")
    }

    /// Projection from the total space to the positions.
    pub fn projection(&self) -> FinFn {
        FinFn::from_fn(self.total(), self.positions.clone(), |t| {
            t.expect_pair().0.clone()
        })
        .expect("projection is total")
    }

    /// Multiset of direction-set sizes, sorted.
    pub fn arity_multiset(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.positions.iter().map(|p| self.dirs(p).len()).collect();
        v.sort();
        v
    }
}

/// A morphism of polynomials: a forward map on positions and, for each
/// position, a backward map on directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMor {
    dom: Poly,
    cod: Poly,
    on_pos: FinFn,
    /// For each domain position `I`, a map `cod.dirs(on_pos(I)) → dom.dirs(I)`.
    on_dir: BTreeMap<Label, FinFn>,
}

impl PolyMor {
    pub fn new(dom: Poly, cod: Poly, on_pos: FinFn, on_dir: BTreeMap<Label, FinFn>) -> Result<Self> {
        if on_pos.dom() != dom.positions() || on_pos.cod() != cod.positions() {
            return Err(Error::invalid(
                "polymor",
                "position map must go from dom positions to cod positions",
            ));
        }
        for i in dom.positions().iter() {
            let f = on_dir.get(i).ok_or_else(|| {
                Error::invalid("polymor", format!("no direction map at position {i}"))
            })?;
            let j = on_pos.apply(i);
            if f.dom() != cod.dirs(j) || f.cod() != dom.dirs(i) {
                return Err(Error::invalid(
                    "polymor",
                    format!("direction map at {i} must go cod.dirs({j}) → dom.dirs({i})"),
                ));
            }
        }
        if on_dir.len() != dom.positions().len() {
            return Err(Error::invalid(
                "polymor",
                "direction maps mention labels outside the position set",
            ));
        }
        Ok(PolyMor {
            dom,
            cod,
            on_pos,
            on_dir,
        })
    }

    /// Build from closures: `pos` picks the image position, `dir` maps each
    /// codomain direction backward.
    pub fn from_fns(
        dom: &Poly,
        cod: &Poly,
        pos: impl Fn(&Label) -> Label,
        dir: impl Fn(&Label, &Label) -> Label,
    ) -> Result<Self> {
        let on_pos = FinFn::from_fn(dom.positions().clone(), cod.positions().clone(), &pos)?;
        let mut on_dir = BTreeMap::new();
        for i in dom.positions().iter() {
            let j = on_pos.apply(i).clone();
            let f = FinFn::from_fn(cod.dirs(&j).clone(), dom.dirs(i).clone(), |d| dir(i, d))?;
            on_dir.insert(i.clone(), f);
        }
        PolyMor::new(dom.clone(), cod.clone(), on_pos, on_dir)
    }

    pub fn identity(p: &Poly) -> Self {
        let on_pos = FinFn::identity(p.positions());
        let on_dir = p
            .positions()
            .iter()
            .map(|i| (i.clone(), FinFn::identity(p.dirs(i))))
            .collect();
        PolyMor {
            dom: p.clone(),
            cod: p.clone(),
            on_pos,
            on_dir,
        }
    }

    pub fn dom(&self) -> &Poly {
        &self.dom
    }

    pub fn cod(&self) -> &Poly {
        &self.cod
    }

    pub fn on_pos(&self) -> &FinFn {
        &self.on_pos
    }

    pub fn on_dir(&self, pos: &Label) -> &FinFn {
        &self.on_dir[pos]
    }

    pub fn on_dir_map(&self) -> &BTreeMap<Label, FinFn> {
        &self.on_dir
    }

    /// Diagram-order composition: positions compose forward, directions
    /// compose backward.
    pub fn then(&self, other: &PolyMor) -> Result<PolyMor> {
        if self.cod != other.dom {
            return Err(Error::CodomainMismatch(
                "polynomial morphism composition".into(),
            ));
        }
        let on_pos = self.on_pos.then(&other.on_pos)?;
        let mut on_dir = BTreeMap::new();
        for i in self.dom.positions().iter() {
            let mid = self.on_pos.apply(i);
            let f = other.on_dir(mid).then(self.on_dir(i))?;
            on_dir.insert(i.clone(), f);
        }
        PolyMor::new(self.dom.clone(), other.cod.clone(), on_pos, on_dir)
    }

    pub fn classify(&self) -> MorClass {
        MorClass {
            cartesian: self.on_dir.values().all(FinFn::is_bijective),
            vertical: self.dom.positions() == self.cod.positions()
                && self.on_pos == FinFn::identity(self.dom.positions()),
        }
    }

    pub fn is_iso(&self) -> bool {
        self.on_pos.is_bijective() && self.classify().cartesian
    }

    pub fn inverse(&self) -> Result<PolyMor> {
        if !self.is_iso() {
            return Err(Error::invalid("polymor", "not an isomorphism"));
        }
        let on_pos = self.on_pos.inverse()?;
        let mut on_dir = BTreeMap::new();
        for j in self.cod.positions().iter() {
            let i = on_pos.apply(j);
            on_dir.insert(j.clone(), self.on_dir(i).inverse()?);
        }
        PolyMor::new(self.cod.clone(), self.dom.clone(), on_pos, on_dir)
    }

    /// Canonical label encoding of the whole morphism; used when morphisms
    /// become positions (e.g. in the tensor closure).
    pub fn as_label(&self) -> Label {
        let sharp = Label::seq(
            self.dom
                .positions()
                .iter()
                .map(|i| Label::pair(i.clone(), self.on_dir(i).table_label()))
                .collect(),
        );
        Label::pair(self.on_pos.table_label(), sharp)
    }

    /// Rebuild a morphism from a label produced by `as_label`.
    pub fn from_label(dom: &Poly, cod: &Poly, label: &Label) -> Result<PolyMor> {
        let (pos_table, sharp) = label
            .as_pair()
            .ok_or_else(|| Error::invalid("polymor label", "not a pair"))?;
        let on_pos =
            FinFn::from_table_label(dom.positions(), cod.positions(), pos_table)?;
        let mut on_dir = BTreeMap::new();
        for entry in sharp.as_seq().unwrap_or(&[]) {
            let (i, table) = entry
                .as_pair()
                .ok_or_else(|| Error::invalid("polymor label", "bad direction entry"))?;
            let j = on_pos.apply(i).clone();
            on_dir.insert(
                i.clone(),
                FinFn::from_table_label(cod.dirs(&j), dom.dirs(i), table)?,
            );
        }
        PolyMor::new(dom.clone(), cod.clone(), on_pos, on_dir)
    }
}

/// Classification of a polynomial morphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MorClass {
    /// Every backward direction map is a bijection.
    pub cartesian: bool,
    /// The position map is the identity.
    pub vertical: bool,
}

/// Factor a morphism as a vertical morphism followed by a cartesian one.
/// The middle polynomial keeps the domain's positions but borrows the
/// codomain's direction sets along the position map.
pub fn vert_cart_factorize(phi: &PolyMor) -> (PolyMor, PolyMor) {
    let dom = phi.dom();
    let cod = phi.cod();
    let middle = Poly::new(
        dom.positions().clone(),
        dom.positions()
            .iter()
            .map(|i| (i.clone(), cod.dirs(phi.on_pos().apply(i)).clone()))
            .collect(),
    )
    .expect("middle polynomial is well formed");
    let vertical = PolyMor::new(
        dom.clone(),
        middle.clone(),
        FinFn::identity(dom.positions()),
        dom.positions()
            .iter()
            .map(|i| (i.clone(), phi.on_dir(i).clone()))
            .collect(),
    )
    .expect("vertical part is well formed");
    let cartesian = PolyMor::new(
        middle,
        cod.clone(),
        phi.on_pos().clone(),
        dom.positions()
            .iter()
            .map(|i| {
                let j = phi.on_pos().apply(i);
                (i.clone(), FinFn::identity(cod.dirs(j)))
            })
            .collect(),
    )
    .expect("cartesian part is well formed");
    (vertical, cartesian)
}

/// Number of morphisms `p → q`: `Π_I Σ_J |p[I]|^|q[J]|`.
pub fn hom_count(p: &Poly, q: &Poly) -> u128 {
    mul128(p.positions().iter().map(|i| {
        let pi = p.dirs(i).len() as u128;
        q.positions()
            .iter()
            .map(|j| pow128(pi, q.dirs(j).len() as u128))
            .fold(0u128, |a, b| a.saturating_add(b))
    }))
}

/// Complete, duplicate-free, canonically ordered enumeration of the
/// morphisms `p → q`.
pub fn hom_enumerate(p: &Poly, q: &Poly, budget: Budget) -> Result<Vec<PolyMor>> {
    let max_q_dirs = q
        .positions()
        .iter()
        .map(|j| q.dirs(j).len())
        .max()
        .unwrap_or(0) as u128;
    let cells = 1 + p.positions().len() as u128 * (1 + max_q_dirs);
    budget.charge(
        hom_count(p, q).saturating_mul(cells),
        "polynomial hom enumeration",
    )?;
    // Per position: all (target position, backward map) choices, in order.
    let mut per_pos: Vec<(Label, Vec<(Label, FinFn)>)> = Vec::new();
    for i in p.positions().iter() {
        let mut choices = Vec::new();
        for j in q.positions().iter() {
            for f in all_fns(q.dirs(j), p.dirs(i), budget)? {
                choices.push((j.clone(), f));
            }
        }
        per_pos.push((i.clone(), choices));
    }
    if per_pos.iter().any(|(_, c)| c.is_empty()) && !p.positions().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let n = per_pos.len();
    let mut idx = vec![0usize; n];
    loop {
        let mut pos_map = BTreeMap::new();
        let mut on_dir = BTreeMap::new();
        for (k, (i, choices)) in per_pos.iter().enumerate() {
            let (j, f) = &choices[idx[k]];
            pos_map.insert(i.clone(), j.clone());
            on_dir.insert(i.clone(), f.clone());
        }
        let on_pos = FinFn::new(p.positions().clone(), q.positions().clone(), pos_map)?;
        out.push(PolyMor::new(p.clone(), q.clone(), on_pos, on_dir)?);
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < per_pos[k].1.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Search for an isomorphism `p ≅ q`. One exists exactly when the
/// direction-set size multisets agree; the canonical witness matches
/// positions sorted by (arity, label) and directions in canonical order.
pub fn iso_check(p: &Poly, q: &Poly) -> Option<PolyMor> {
    if p.arity_multiset() != q.arity_multiset() {
        return None;
    }
    let sort_key = |poly: &Poly| {
        let mut v: Vec<(usize, Label)> = poly
            .positions()
            .iter()
            .map(|i| (poly.dirs(i).len(), i.clone()))
            .collect();
        v.sort();
        v
    };
    let ps = sort_key(p);
    let qs = sort_key(q);
    let mut pos_map = BTreeMap::new();
    let mut on_dir = BTreeMap::new();
    for ((_, i), (_, j)) in ps.iter().zip(qs.iter()) {
        pos_map.insert(i.clone(), j.clone());
        // Order-preserving bijection q.dirs(j) → p.dirs(i).
        let table: BTreeMap<Label, Label> = q
            .dirs(j)
            .iter()
            .zip(p.dirs(i).iter())
            .map(|(d, e)| (d.clone(), e.clone()))
            .collect();
        on_dir.insert(
            i.clone(),
            FinFn::new(q.dirs(j).clone(), p.dirs(i).clone(), table).ok()?,
        );
    }
    let on_pos = FinFn::new(p.positions().clone(), q.positions().clone(), pos_map).ok()?;
    PolyMor::new(p.clone(), q.clone(), on_pos, on_dir).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_cartesian_and_vertical() {
        let p = Poly::numeric(&[2, 1]);
        let id = PolyMor::identity(&p);
        let c = id.classify();
        assert!(c.cartesian && c.vertical);
        assert!(id.is_iso());
    }

    #[test]
    fn unique_map_y2_to_y_is_vertical_not_cartesian() {
        // y² and y share the single-position shape, so the position map is
        // forced; the backward direction map cannot be bijective.
        let p = Poly::numeric(&[2]);
        let q = Poly::numeric(&[1]);
        let homs = hom_enumerate(&p, &q, Budget::default()).unwrap();
        assert_eq!(homs.len(), 2);
        for phi in homs {
            let c = phi.classify();
            assert!(c.vertical && !c.cartesian);
        }
    }

    #[test]
    fn composition_units_and_associativity() {
        let p = Poly::numeric(&[2]);
        let q = Poly::numeric(&[1, 1]);
        let r = Poly::numeric(&[1]);
        let homs_pq = hom_enumerate(&p, &q, Budget::default()).unwrap();
        let homs_qr = hom_enumerate(&q, &r, Budget::default()).unwrap();
        let homs_rp = hom_enumerate(&r, &p, Budget::default()).unwrap();
        for phi in &homs_pq {
            assert_eq!(&PolyMor::identity(&p).then(phi).unwrap(), phi);
            assert_eq!(&phi.then(&PolyMor::identity(&q)).unwrap(), phi);
            for psi in &homs_qr {
                for chi in &homs_rp {
                    let left = phi.then(psi).unwrap().then(chi).unwrap();
                    let right = phi.then(&psi.then(chi).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn cartesian_morphisms_compose() {
        let p = Poly::numeric(&[2, 1]);
        let q = Poly::numeric(&[2, 1, 3]);
        let r = Poly::numeric(&[1, 2, 3]);
        let budget = Budget::default();
        let pq: Vec<PolyMor> = hom_enumerate(&p, &q, budget)
            .unwrap()
            .into_iter()
            .filter(|m| m.classify().cartesian)
            .collect();
        let qr: Vec<PolyMor> = hom_enumerate(&q, &r, budget)
            .unwrap()
            .into_iter()
            .filter(|m| m.classify().cartesian)
            .collect();
        assert!(!pq.is_empty() && !qr.is_empty());
        for phi in &pq {
            for psi in &qr {
                assert!(phi.then(psi).unwrap().classify().cartesian);
            }
        }
    }

    #[test]
    fn hom_counts_match_formula() {
        let y2 = Poly::numeric(&[2]);
        let two_y = Poly::numeric(&[1, 1]);
        assert_eq!(hom_count(&y2, &two_y), 4);
        assert_eq!(
            hom_enumerate(&y2, &two_y, Budget::default()).unwrap().len(),
            4
        );
        assert_eq!(hom_count(&y2, &Poly::numeric(&[1])), 2);
        // Vacuous morphism from the zero polynomial.
        assert_eq!(
            hom_enumerate(&Poly::zero(), &two_y, Budget::default())
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn hom_enumeration_is_duplicate_free_and_ordered() {
        let p = Poly::numeric(&[2, 0]);
        let q = Poly::numeric(&[1, 2]);
        let homs = hom_enumerate(&p, &q, Budget::default()).unwrap();
        assert_eq!(homs.len() as u128, hom_count(&p, &q));
        let labels: Vec<Label> = homs.iter().map(PolyMor::as_label).collect();
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), labels.len());
    }

    #[test]
    fn factorization_recomposes() {
        let p = Poly::numeric(&[2]);
        let q = Poly::numeric(&[1, 1]);
        for phi in hom_enumerate(&p, &q, Budget::default()).unwrap() {
            let (v, c) = vert_cart_factorize(&phi);
            assert!(v.classify().vertical);
            assert!(c.classify().cartesian);
            assert_eq!(v.then(&c).unwrap(), phi);
        }
        // A cartesian morphism factors as (identity-ish vertical, itself).
        let id = PolyMor::identity(&p);
        let (v, c) = vert_cart_factorize(&id);
        assert_eq!(v.then(&c).unwrap(), id);
        assert!(v.classify().vertical && v.classify().cartesian);
    }

    #[test]
    fn iso_check_cases() {
        let p = Poly::numeric(&[2, 1]);
        let iso = iso_check(&p, &p).unwrap();
        assert!(iso.is_iso());
        assert_eq!(iso, PolyMor::identity(&p));
        assert!(iso_check(&Poly::numeric(&[2, 0]), &Poly::numeric(&[1, 1])).is_none());
    }

    #[test]
    fn morphism_label_roundtrip() {
        let p = Poly::numeric(&[2, 1]);
        let q = Poly::numeric(&[2, 2]);
        for phi in hom_enumerate(&p, &q, Budget::default()).unwrap() {
            let l = phi.as_label();
            assert_eq!(PolyMor::from_label(&p, &q, &l).unwrap(), phi);
        }
    }
}
