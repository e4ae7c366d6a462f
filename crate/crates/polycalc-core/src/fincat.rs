use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet};
use crate::label::Label;
use crate::report::Report;
use std::collections::BTreeMap;

/// A finite category given by explicit object and morphism sets, source,
/// target and identity assignments, and a composition table keyed in
/// classical order: `compose[(g, f)] = g ∘ f` whenever `tgt(f) = src(g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCat {
    pub objects: FinSet,
    pub morphisms: FinSet,
    pub src: FinFn,
    pub tgt: FinFn,
    pub ident: FinFn,
    pub compose: BTreeMap<(Label, Label), Label>,
}

impl FinCat {
    pub fn new(
        objects: FinSet,
        morphisms: FinSet,
        src: FinFn,
        tgt: FinFn,
        ident: FinFn,
        compose: BTreeMap<(Label, Label), Label>,
    ) -> Result<Self> {
        let cat = FinCat {
            objects,
            morphisms,
            src,
            tgt,
            ident,
            compose,
        };
        let report = cat.validate();
        if let Some(first) = report.first_failure() {
            return Err(Error::invalid("fincat", first));
        }
        Ok(cat)
    }

    /// Check every category axiom, reporting violations with witnesses.
    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        if self.src.dom() != &self.morphisms || self.src.cod() != &self.objects {
            r.fail("src-typing", "src must map morphisms to objects");
            return r;
        }
        if self.tgt.dom() != &self.morphisms || self.tgt.cod() != &self.objects {
            r.fail("tgt-typing", "tgt must map morphisms to objects");
            return r;
        }
        if self.ident.dom() != &self.objects || self.ident.cod() != &self.morphisms {
            r.fail("id-typing", "identity must map objects to morphisms");
            return r;
        }
        for x in self.objects.iter() {
            let i = self.ident.apply(x);
            let ok = self.src.apply(i) == x && self.tgt.apply(i) == x;
            r.record("identity-endpoints", ok, format!("object {x}"));
        }
        // Closure: every composable pair has an entry, no spurious entries.
        for f in self.morphisms.iter() {
            for g in self.morphisms.iter() {
                let composable = self.tgt.apply(f) == self.src.apply(g);
                match self.compose.get(&(g.clone(), f.clone())) {
                    Some(gf) if composable => {
                        let ok = self.morphisms.contains(gf)
                            && self.src.apply(gf) == self.src.apply(f)
                            && self.tgt.apply(gf) == self.tgt.apply(g);
                        r.record("composite-endpoints", ok, format!("({g},{f})"));
                    }
                    Some(_) => r.fail("compose-closed", format!("spurious entry ({g},{f})")),
                    None if composable => {
                        r.fail("compose-closed", format!("missing entry ({g},{f})"))
                    }
                    None => {}
                }
            }
        }
        if !r.passed() {
            return r;
        }
        // Unit laws.
        for f in self.morphisms.iter() {
            let ls = self.ident.apply(self.src.apply(f)).clone();
            let lt = self.ident.apply(self.tgt.apply(f)).clone();
            let right = self.compose.get(&(f.clone(), ls)).unwrap();
            let left = self.compose.get(&(lt, f.clone())).unwrap();
            r.record("unit", right == f && left == f, format!("morphism {f}"));
        }
        // Associativity on all composable triples.
        for f in self.morphisms.iter() {
            for g in self.morphisms.iter() {
                if self.tgt.apply(f) != self.src.apply(g) {
                    continue;
                }
                for h in self.morphisms.iter() {
                    if self.tgt.apply(g) != self.src.apply(h) {
                        continue;
                    }
                    let gf = self.compose[&(g.clone(), f.clone())].clone();
                    let hg = self.compose[&(h.clone(), g.clone())].clone();
                    let left = self.compose[&(h.clone(), gf)].clone();
                    let right = self.compose[&(hg, f.clone())].clone();
                    r.record("associativity", left == right, format!("({f},{g},{h})"));
                }
            }
        }
        r
    }

    /// `g ∘ f`, defined when `tgt(f) = src(g)`.
    pub fn comp(&self, g: &Label, f: &Label) -> Result<&Label> {
        self.compose
            .get(&(g.clone(), f.clone()))
            .ok_or_else(|| Error::invalid("fincat", format!("({g},{f}) is not composable")))
    }

    pub fn hom(&self, x: &Label, y: &Label) -> Vec<Label> {
        self.morphisms
            .iter()
            .filter(|m| self.src.apply(m) == x && self.tgt.apply(m) == y)
            .cloned()
            .collect()
    }

    pub fn outgoing(&self, x: &Label) -> Vec<Label> {
        self.morphisms
            .iter()
            .filter(|m| self.src.apply(m) == x)
            .cloned()
            .collect()
    }

    /// The one-object one-morphism category.
    pub fn terminal() -> Self {
        let objects = FinSet::singleton(Label::str("o"));
        let morphisms = FinSet::singleton(Label::str("id_o"));
        let src = FinFn::constant(&morphisms, &objects, &Label::str("o")).unwrap();
        let tgt = src.clone();
        let ident = FinFn::constant(&objects, &morphisms, &Label::str("id_o")).unwrap();
        let mut compose = BTreeMap::new();
        compose.insert(
            (Label::str("id_o"), Label::str("id_o")),
            Label::str("id_o"),
        );
        FinCat::new(objects, morphisms, src, tgt, ident, compose).unwrap()
    }

    /// Two objects `a`, `b` with a single non-identity morphism `f : a → b`.
    pub fn walking_arrow() -> Self {
        let a = Label::str("a");
        let b = Label::str("b");
        let objects = FinSet::new(vec![a.clone(), b.clone()]).unwrap();
        let morphisms =
            FinSet::new(vec![Label::str("id_a"), Label::str("id_b"), Label::str("f")]).unwrap();
        let src = FinFn::from_fn(morphisms.clone(), objects.clone(), |m| match m {
            Label::Str(s) if s == "id_b" => b.clone(),
            _ => a.clone(),
        })
        .unwrap();
        let tgt = FinFn::from_fn(morphisms.clone(), objects.clone(), |m| match m {
            Label::Str(s) if s == "id_a" => a.clone(),
            _ => b.clone(),
        })
        .unwrap();
        let ident = FinFn::from_fn(objects.clone(), morphisms.clone(), |x| match x {
            Label::Str(s) if s == "a" => Label::str("id_a"),
            _ => Label::str("id_b"),
        })
        .unwrap();
        let mut compose = BTreeMap::new();
        for m in morphisms.iter() {
            compose.insert(
                (m.clone(), ident.apply(src.apply(m)).clone()),
                m.clone(),
            );
            let key = (ident.apply(tgt.apply(m)).clone(), m.clone());
            compose.entry(key).or_insert_with(|| m.clone());
        }
        FinCat::new(objects, morphisms, src, tgt, ident, compose).unwrap()
    }

    /// The base for graphs: objects `v`, `e` with two non-identity
    /// morphisms `s, t : v → e`. Presheaves on this category are graphs.
    pub fn parallel_pair() -> Self {
        let v = Label::str("v");
        let e = Label::str("e");
        let objects = FinSet::new(vec![v.clone(), e.clone()]).unwrap();
        let morphisms = FinSet::new(vec![
            Label::str("id_v"),
            Label::str("id_e"),
            Label::str("s"),
            Label::str("t"),
        ])
        .unwrap();
        let src = FinFn::from_fn(morphisms.clone(), objects.clone(), |m| match m {
            Label::Str(x) if x == "id_e" => e.clone(),
            _ => v.clone(),
        })
        .unwrap();
        let tgt = FinFn::from_fn(morphisms.clone(), objects.clone(), |m| match m {
            Label::Str(x) if x == "id_v" => v.clone(),
            _ => e.clone(),
        })
        .unwrap();
        let ident = FinFn::from_fn(objects.clone(), morphisms.clone(), |x| match x {
            Label::Str(s) if s == "v" => Label::str("id_v"),
            _ => Label::str("id_e"),
        })
        .unwrap();
        let mut compose = BTreeMap::new();
        for m in morphisms.iter() {
            compose.insert(
                (m.clone(), ident.apply(src.apply(m)).clone()),
                m.clone(),
            );
            let key = (ident.apply(tgt.apply(m)).clone(), m.clone());
            compose.entry(key).or_insert_with(|| m.clone());
        }
        FinCat::new(objects, morphisms, src, tgt, ident, compose).unwrap()
    }

    /// Discrete category: only identities.
    pub fn discrete(objects: FinSet) -> Self {
        let morphisms = FinSet::new(
            objects
                .iter()
                .map(|x| Label::pair(Label::str("id"), x.clone()))
                .collect(),
        )
        .unwrap();
        let strip = |m: &Label| m.expect_pair().1.clone();
        let src = FinFn::from_fn(morphisms.clone(), objects.clone(), strip).unwrap();
        let tgt = src.clone();
        let ident = FinFn::from_fn(objects.clone(), morphisms.clone(), |x| {
            Label::pair(Label::str("id"), x.clone())
        })
        .unwrap();
        let compose = morphisms
            .iter()
            .map(|m| ((m.clone(), m.clone()), m.clone()))
            .collect();
        FinCat::new(objects, morphisms, src, tgt, ident, compose).unwrap()
    }

    /// Preorder category from a reflexive-transitive relation: a morphism
    /// `x → y` for each related pair.
    pub fn from_preorder(objects: FinSet, related: &dyn Fn(&Label, &Label) -> bool) -> Result<Self> {
        // Transitive-reflexive closure of the given relation.
        let n = objects.len();
        let elems: Vec<Label> = objects.iter().cloned().collect();
        let mut rel = vec![vec![false; n]; n];
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                rel[i][j] = i == j || related(x, y);
            }
        }
        loop {
            let mut changed = false;
            for i in 0..n {
                for j in 0..n {
                    if rel[i][j] {
                        continue;
                    }
                    if (0..n).any(|k| rel[i][k] && rel[k][j]) {
                        rel[i][j] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut mor = Vec::new();
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                if rel[i][j] {
                    mor.push(Label::pair(x.clone(), y.clone()));
                }
            }
        }
        let morphisms = FinSet::new(mor)?;
        let src = FinFn::from_fn(morphisms.clone(), objects.clone(), |m| {
            m.expect_pair().0.clone()
        })?;
        let tgt = FinFn::from_fn(morphisms.clone(), objects.clone(), |m| {
            m.expect_pair().1.clone()
        })?;
        let ident = FinFn::from_fn(objects.clone(), morphisms.clone(), |x| {
            Label::pair(x.clone(), x.clone())
        })?;
        let mut compose = BTreeMap::new();
        for f in morphisms.iter() {
            for g in morphisms.iter() {
                if tgt.apply(f) == src.apply(g) {
                    compose.insert(
                        (g.clone(), f.clone()),
                        Label::pair(src.apply(f).clone(), tgt.apply(g).clone()),
                    );
                }
            }
        }
        FinCat::new(objects, morphisms, src, tgt, ident, compose)
    }

    /// One-object category from a unital associative multiplication table.
    /// `table[i][j]` is the product of elements `i` then `j` (diagram
    /// order), and `unit` is the identity element.
    pub fn from_monoid(table: &[Vec<usize>], unit: usize) -> Result<Self> {
        let n = table.len();
        let objects = FinSet::singleton(Label::str("o"));
        let morphisms = FinSet::ints(n);
        let src = FinFn::constant(&morphisms, &objects, &Label::str("o"))?;
        let tgt = src.clone();
        let ident = FinFn::constant(&objects, &morphisms, &Label::int(unit as i64))?;
        let mut compose = BTreeMap::new();
        for (i, row) in table.iter().enumerate() {
            for (j, &k) in row.iter().enumerate() {
                // table is diagram order: i then j; the table key is (g, f)
                // with f first, so (j, i) ↦ table[i][j].
                compose.insert(
                    (Label::int(j as i64), Label::int(i as i64)),
                    Label::int(k as i64),
                );
            }
        }
        FinCat::new(objects, morphisms, src, tgt, ident, compose)
    }
}

/// Validation entry point matching the rest of the validator family.
pub fn fincat_validate(c: &FinCat) -> Report {
    c.validate()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terminal_category_is_valid() {
        assert!(FinCat::terminal().validate().passed());
    }

    #[test]
    fn walking_arrow_is_valid() {
        let c = FinCat::walking_arrow();
        assert!(c.validate().passed());
        assert_eq!(c.hom(&Label::str("a"), &Label::str("b")), vec![Label::str("f")]);
    }

    #[test]
    fn broken_associativity_is_witnessed() {
        // A three-element monoid with one entry corrupted.
        let table = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        let good = FinCat::from_monoid(&table, 0).unwrap();
        assert!(good.validate().passed());
        let mut bad = good;
        bad.compose
            .insert((Label::int(1), Label::int(1)), Label::int(0));
        let report = bad.validate();
        assert!(!report.passed());
        assert!(report
            .failures()
            .any(|c| c.law == "associativity" || c.law == "unit"));
    }

    #[test]
    fn preorder_categories_are_valid() {
        let objs = FinSet::ints(3);
        let c = FinCat::from_preorder(objs, &|x, y| match (x, y) {
            (Label::Int(a), Label::Int(b)) => a < b,
            _ => false,
        })
        .unwrap();
        assert!(c.validate().passed());
        assert_eq!(c.morphisms.len(), 6);
    }
}
