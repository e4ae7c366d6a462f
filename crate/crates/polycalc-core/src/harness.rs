//! Seeded law-verification harness.
//!
//! Every suite draws a deterministic corpus from its own stream of a
//! seeded RNG (so a suite's results do not depend on which other suites
//! run), executes its law checks, and emits one record per case. Records
//! are line-delimited JSON with a summary footer; identical configuration
//! produces identical bytes.
//!
//! The corpus generator samples a polynomial by drawing a position count
//! uniformly in `0..=max_positions`, then independently drawing each
//! direction count uniformly in `0..=max_directions`. Cases whose
//! constructions would exceed the budget are reported as skipped and the
//! suite samples a replacement, so the configured number of verified
//! cases is still reached.

use crate::bicomodule::{
    bicomod_compose, bicomod_from_typed, bicomod_iso_check, bicomodule_check, migrate, Bicomodule,
    TypedPoly,
};
use crate::budget::Budget;
use crate::coalgebra::{
    coalg_check, coalg_homs, copresheaf_homs, copresheaf_to_coalg, Coalgebra, Copresheaf,
};
use crate::comonoid::{
    cat_to_comonoid, cofunctor_check, comonoid_check, comonoid_to_cat, fincat_comonoid,
    Comonoid, InternalCategory,
};
use crate::error::{Error, Result};
use crate::fincat::FinCat;
use crate::finset::{all_fns, FinFn, FinSet};
use crate::label::Label;
use crate::poly::{hom_enumerate, iso_check, Poly, PolyMor};
use crate::poly_limits::equalizer_poly;
use crate::poly_ops::{
    compose, compose_associator, compose_lunitor, compose_runitor, evaluate, evaluate_nat,
    mor_compose_product, mor_tensor, tensor, tensor_associator, tensor_braiding, tensor_lunitor,
    tensor_runitor,
};
use crate::presheaf::{
    presheaf_pi, presheaf_pi_transpose, presheaf_pi_untranspose, psh_homs, psh_pullback,
    Presheaf, PshMor,
};
use crate::pshpoly::{psh_poly_iso, PshPoly};
use crate::structures::{
    closure, closure_compose_lax, closure_curry, closure_eval, closure_map_right, closure_pair,
    closure_uncurry, closure_unit_iso, coclosure_tensor_map, coclosure_unit_iso, frown_tensor_iso,
    ic_transpose, ic_untranspose, indexed_coclosure, interchange, rc_transpose, rc_untranspose,
    right_coclosure,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Which suites to run.
pub const ALL_SUITES: &[&str] = &[
    "monoidal",
    "duoidal",
    "closure",
    "coclosure",
    "comonoid",
    "coalgebra",
    "bicomodule",
    "typed",
    "migrate",
    "presheaf",
];

#[derive(Debug, Clone)]
pub struct HarnessConfig {
    pub seed: u64,
    pub max_positions: usize,
    pub max_directions: usize,
    pub budget: Budget,
    pub suites: Vec<String>,
    /// Scale factor for sampled case counts (1 = the acceptance counts).
    pub cases: CaseCounts,
}

#[derive(Debug, Clone)]
pub struct CaseCounts {
    pub functor_oracle: usize,
    pub monoidal_triples: usize,
    pub pentagon: usize,
    pub duoidal_quads: usize,
    pub comonoid_categories: usize,
    pub typed_pairs: usize,
    pub yoneda_instances: usize,
}

impl Default for CaseCounts {
    fn default() -> Self {
        CaseCounts {
            functor_oracle: 200,
            monoidal_triples: 100,
            pentagon: 25,
            duoidal_quads: 50,
            comonoid_categories: 50,
            typed_pairs: 30,
            yoneda_instances: 10,
        }
    }
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            seed: 0,
            max_positions: 3,
            max_directions: 3,
            budget: Budget(100_000),
            suites: ALL_SUITES.iter().map(|s| s.to_string()).collect(),
            cases: CaseCounts::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "skipped-budget")]
    SkippedBudget,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LawRecord {
    pub suite: String,
    pub case: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub corpus_digest: String,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub total: usize,
}

#[derive(Debug, Clone)]
pub struct LawRun {
    pub records: Vec<LawRecord>,
    pub summary: Summary,
}

impl LawRun {
    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    /// Line-delimited JSON records followed by a summary footer.
    pub fn to_report(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let _ = writeln!(out, "{}", serde_json::to_string(r).expect("serializable"));
        }
        let _ = writeln!(
            out,
            "{}",
            serde_json::to_string(&serde_json::json!({ "summary": self.summary }))
                .expect("serializable")
        );
        out
    }

    pub fn pass_count(&self, suite: &str, case_prefix: &str) -> usize {
        self.records
            .iter()
            .filter(|r| {
                r.suite == suite && r.case.starts_with(case_prefix) && r.status == Status::Pass
            })
            .count()
    }
}

struct SuiteCtx {
    suite: &'static str,
    digest: String,
    records: Vec<LawRecord>,
}

impl SuiteCtx {
    fn new(suite: &'static str, seed: u64) -> Self {
        SuiteCtx {
            suite,
            digest: format!("seed-{seed}"),
            records: Vec::new(),
        }
    }

    fn set_digest(&mut self, description: &str) {
        let mut hasher = Sha256::new();
        hasher.update(description.as_bytes());
        self.digest = hex_digest(&hasher.finalize());
    }

    fn record(&mut self, case: String, status: Status, witness: Option<String>) {
        self.records.push(LawRecord {
            suite: self.suite.to_string(),
            case,
            status,
            witness,
            corpus_digest: self.digest.clone(),
        });
    }

    fn check(&mut self, case: String, ok: bool, witness: impl Into<String>) {
        if ok {
            self.record(case, Status::Pass, None);
        } else {
            self.record(case, Status::Fail, Some(witness.into()));
        }
    }

    fn skip(&mut self, case: String, why: String) {
        self.record(case, Status::SkippedBudget, Some(why));
    }

    /// Run a fallible case: budget overruns are skips, other errors fails.
    fn run(&mut self, case: String, f: impl FnOnce() -> Result<(bool, String)>) -> bool {
        if std::env::var_os("POLYCALC_TRACE").is_some() {
            eprintln!("[{}] {case}", self.suite);
        }
        match f() {
            Ok((ok, witness)) => {
                self.check(case, ok, witness);
                ok
            }
            Err(Error::BudgetExceeded { op, required, budget }) => {
                self.skip(case, format!("{op}: {required} > {budget}"));
                false
            }
            Err(e) => {
                self.check(case, false, e.to_string());
                false
            }
        }
    }
}

fn hex_digest(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        let _ = write!(s, "{b:02x}");
    }
    s
}

fn suite_rng(seed: u64, suite: &str) -> ChaCha8Rng {
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    hasher.update(suite.as_bytes());
    let digest = hasher.finalize();
    let mut key = [0u8; 8];
    key.copy_from_slice(&digest[..8]);
    ChaCha8Rng::seed_from_u64(u64::from_le_bytes(key))
}

fn sample_poly(rng: &mut ChaCha8Rng, max_pos: usize, max_dir: usize) -> Poly {
    let n = rng.gen_range(0..=max_pos);
    let arities: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=max_dir)).collect();
    Poly::numeric(&arities)
}

fn describe_poly(p: &Poly) -> String {
    format!("{:?}", p.arity_multiset())
}

/// Run the harness for a configuration.
pub fn laws_run(cfg: &HarnessConfig) -> LawRun {
    let mut records = Vec::new();
    for suite in ALL_SUITES {
        if !cfg.suites.iter().any(|s| s == suite) {
            continue;
        }
        let recs = match *suite {
            "monoidal" => run_monoidal(cfg),
            "duoidal" => run_duoidal(cfg),
            "closure" => run_closure(cfg),
            "coclosure" => run_coclosure(cfg),
            "comonoid" => run_comonoid(cfg),
            "coalgebra" => run_coalgebra(cfg),
            "bicomodule" => run_bicomodule(cfg),
            "typed" => run_typed(cfg),
            "migrate" => run_migrate(cfg),
            "presheaf" => run_presheaf(cfg),
            _ => unreachable!(),
        };
        records.extend(recs);
    }
    let mut summary = Summary::default();
    for r in &records {
        summary.total += 1;
        match r.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::SkippedBudget => summary.skipped += 1,
        }
    }
    LawRun { records, summary }
}

// ------------------------------------------------------------- monoidal

fn functor_oracle_case(p: &Poly, q: &Poly, budget: Budget) -> Result<(bool, String)> {
    let pq = compose(p, q, budget)?;
    for n in 0..=3usize {
        let x = FinSet::ints(n);
        let direct = evaluate(&pq, &x, budget)?;
        let qx = evaluate(q, &x, budget)?;
        let nested = evaluate(p, &qx, budget)?;
        if direct.len() != nested.len() {
            return Ok((
                false,
                format!("cardinalities differ at |X| = {n}: {} vs {}", direct.len(), nested.len()),
            ));
        }
        // Canonical bijection built from the composition labels.
        let map = FinFn::from_fn(direct, nested.clone(), |el| {
            let (pos, gt) = el.expect_pair();
            let (i, f) = crate::poly_ops::compose_pos_parts(p, q, pos);
            let g = FinFn::from_table_label(pq.dirs(pos), &x, gt).expect("table");
            let outer = FinFn::from_fn(p.dirs(&i).clone(), qx.clone(), |d| {
                let j = f.apply(d).clone();
                let inner = FinFn::from_fn(q.dirs(&j).clone(), x.clone(), |e| {
                    g.apply(&Label::pair(d.clone(), e.clone())).clone()
                })
                .expect("total");
                Label::pair(j, inner.table_label())
            })
            .expect("total");
            Label::pair(i, outer.table_label())
        })?;
        if !map.is_bijective() {
            return Ok((false, format!("canonical map is not a bijection at |X| = {n}")));
        }
    }
    Ok((true, String::new()))
}

fn monoidal_triple_case(p: &Poly, q: &Poly, r: &Poly, budget: Budget) -> Result<(bool, String)> {
    for (name, m) in [
        ("left unitor", compose_lunitor(p, budget)?),
        ("right unitor", compose_runitor(p, budget)?),
        ("associator", compose_associator(p, q, r, budget)?),
    ] {
        if !m.is_iso() {
            return Ok((false, format!("{name} is not an isomorphism")));
        }
        let inv = m.inverse()?;
        if m.then(&inv)? != PolyMor::identity(m.dom()) {
            return Ok((false, format!("{name} inverse fails on the left")));
        }
    }
    // Triangle: (id_p ◁ λ_q) ∘ α_{p,y,q} = ρ_p ◁ id_q.
    let alpha = compose_associator(p, &Poly::y(), q, budget)?;
    let lhs = alpha.then(&mor_compose_product(
        &PolyMor::identity(p),
        &compose_lunitor(q, budget)?,
        budget,
    )?)?;
    let rhs = mor_compose_product(&compose_runitor(p, budget)?, &PolyMor::identity(q), budget)?;
    if lhs != rhs {
        return Ok((false, "triangle identity fails".into()));
    }
    // Tensor side: braiding involutive, hexagon, unitors.
    let braid = tensor_braiding(p, q);
    if braid.then(&tensor_braiding(q, p))? != PolyMor::identity(&tensor(p, q)) {
        return Ok((false, "braiding is not involutive".into()));
    }
    if !tensor_lunitor(p).is_iso() || !tensor_runitor(p).is_iso() {
        return Ok((false, "tensor unitor is not an isomorphism".into()));
    }
    let hex_lhs = tensor_associator(p, q, r)
        .then(&tensor_braiding(p, &tensor(q, r)))?
        .then(&tensor_associator(q, r, p))?;
    let hex_rhs = mor_tensor(&tensor_braiding(p, q), &PolyMor::identity(r))
        .then(&tensor_associator(q, p, r))?
        .then(&mor_tensor(&PolyMor::identity(q), &tensor_braiding(p, r)))?;
    if hex_lhs != hex_rhs {
        return Ok((false, "hexagon fails".into()));
    }
    Ok((true, String::new()))
}

fn pentagon_case(p: &Poly, q: &Poly, r: &Poly, s: &Poly, budget: Budget) -> Result<(bool, String)> {
    let a1 = mor_compose_product(&compose_associator(p, q, r, budget)?, &PolyMor::identity(s), budget)?;
    let a2 = compose_associator(p, &compose(q, r, budget)?, s, budget)?;
    let a3 = mor_compose_product(&PolyMor::identity(p), &compose_associator(q, r, s, budget)?, budget)?;
    let left = a1.then(&a2)?.then(&a3)?;
    let b1 = compose_associator(&compose(p, q, budget)?, r, s, budget)?;
    let b2 = compose_associator(p, q, &compose(r, s, budget)?, budget)?;
    let right = b1.then(&b2)?;
    Ok((left == right, "pentagon composites differ".into()))
}

fn eval_functoriality_case(p: &Poly, q: &Poly, r: &Poly, budget: Budget) -> Result<(bool, String)> {
    let x = FinSet::ints(2);
    let homs_pq = hom_enumerate(p, q, budget)?;
    let homs_qr = hom_enumerate(q, r, budget)?;
    let idn = evaluate_nat(&PolyMor::identity(p), &x, budget)?;
    if idn != FinFn::identity(&evaluate(p, &x, budget)?) {
        return Ok((false, "evaluation of the identity is not the identity".into()));
    }
    for phi in homs_pq.iter().take(4) {
        for psi in homs_qr.iter().take(4) {
            let lhs = evaluate_nat(&phi.then(psi)?, &x, budget)?;
            let rhs = evaluate_nat(phi, &x, budget)?.then(&evaluate_nat(psi, &x, budget)?)?;
            if lhs != rhs {
                return Ok((false, "evaluation is not functorial".into()));
            }
        }
    }
    Ok((true, String::new()))
}

fn trilimit_case(q: &Poly, p: &Poly, budget: Budget) -> Result<(bool, String)> {
    // Build a cartesian parallel pair p ⇉ p by permuting positions with
    // equal arities, then check q ◁ − and − ◁ q preserve its equalizer.
    let id = PolyMor::identity(p);
    let swap = {
        // Find two positions with the same arity to swap; otherwise use id.
        let mut found: Option<(Label, Label)> = None;
        for i in p.positions().iter() {
            for j in p.positions().iter() {
                if i < j && p.dirs(i).len() == p.dirs(j).len() {
                    found = Some((i.clone(), j.clone()));
                }
            }
        }
        match found {
            Some((a, bl)) => {
                let aa = a.clone();
                let bb = bl.clone();
                PolyMor::from_fns(
                    p,
                    p,
                    move |pos| {
                        if pos == &a {
                            bl.clone()
                        } else if pos == &bl {
                            a.clone()
                        } else {
                            pos.clone()
                        }
                    },
                    move |pos, d| {
                        // Order-preserving bijection between equal-size fibers.
                        if pos == &aa || pos == &bb {
                            let src = if pos == &aa { &bb } else { &aa };
                            let idx = p.dirs(src).iter().position(|x| x == d).unwrap();
                            p.dirs(pos).elems()[idx].clone()
                        } else {
                            d.clone()
                        }
                    },
                )?
            }
            None => id.clone(),
        }
    };
    let eq = equalizer_poly(&id, &swap)?;
    // q ◁ − preserves the equalizer.
    let id_q = PolyMor::identity(q);
    let left1 = mor_compose_product(&id_q, &id, budget)?;
    let left2 = mor_compose_product(&id_q, &swap, budget)?;
    let eq_left = equalizer_poly(&left1, &left2)?;
    let q_eq = compose(q, &eq.obj, budget)?;
    if iso_check(&eq_left.obj, &q_eq).is_none() {
        return Ok((false, "left composition does not preserve the equalizer".into()));
    }
    // − ◁ q preserves the equalizer.
    let right1 = mor_compose_product(&id, &id_q, budget)?;
    let right2 = mor_compose_product(&swap, &id_q, budget)?;
    let eq_right = equalizer_poly(&right1, &right2)?;
    let eq_q = compose(&eq.obj, q, budget)?;
    if iso_check(&eq_right.obj, &eq_q).is_none() {
        return Ok((false, "right composition does not preserve the equalizer".into()));
    }
    // q ◁ − preserves the pullback of the cartesian cospan (id, swap).
    let pb = crate::poly_limits::pullback_poly(&id, &swap)?;
    let id_q_mor = PolyMor::identity(q);
    let lifted = crate::poly_limits::pullback_poly(
        &mor_compose_product(&id_q_mor, &id, budget)?,
        &mor_compose_product(&id_q_mor, &swap, budget)?,
    )?;
    let q_pb = compose(q, &pb.obj, budget)?;
    if iso_check(&lifted.obj, &q_pb).is_none() {
        return Ok((false, "left composition does not preserve the pullback".into()));
    }
    Ok((true, String::new()))
}

fn run_monoidal(cfg: &HarnessConfig) -> Vec<LawRecord> {
    let mut ctx = SuiteCtx::new("monoidal", cfg.seed);
    let mut rng = suite_rng(cfg.seed, "monoidal");
    let budget = cfg.budget;
    // Structural cases build composites of composites; cap their size so
    // a worst-case sample stays cheap and gets skipped-and-resampled
    // instead of ballooning.
    let structural = Budget(cfg.budget.0.min(20_000));
    let mut corpus_desc = String::new();

    // Functor oracle on sampled pairs.
    let mut verified = 0usize;
    let mut attempt = 0usize;
    let max_attempts = cfg.cases.functor_oracle * 4 + 16;
    while verified < cfg.cases.functor_oracle && attempt < max_attempts {
        let p = sample_poly(&mut rng, cfg.max_positions, cfg.max_directions);
        let q = sample_poly(&mut rng, cfg.max_positions, cfg.max_directions);
        let _ = writeln!(corpus_desc, "oracle {attempt} {} {}", describe_poly(&p), describe_poly(&q));
        let case = format!("functor-oracle/{attempt:04}");
        if ctx.run(case, || functor_oracle_case(&p, &q, budget)) {
            verified += 1;
        }
        attempt += 1;
    }
    ctx.check(
        "functor-oracle/coverage".into(),
        verified >= cfg.cases.functor_oracle,
        format!("verified only {verified} pairs"),
    );

    // Monoidal laws on triples; direction sizes capped so the double
    // composites stay in budget.
    let mut verified = 0usize;
    let mut attempt = 0usize;
    let max_attempts = cfg.cases.monoidal_triples * 4 + 16;
    while verified < cfg.cases.monoidal_triples && attempt < max_attempts {
        let p = sample_poly(&mut rng, cfg.max_positions, cfg.max_directions);
        let q = sample_poly(&mut rng, cfg.max_positions, cfg.max_directions);
        let r = sample_poly(&mut rng, cfg.max_positions, cfg.max_directions);
        let _ = writeln!(
            corpus_desc,
            "triple {attempt} {} {} {}",
            describe_poly(&p),
            describe_poly(&q),
            describe_poly(&r)
        );
        let case = format!("monoidal-laws/{attempt:04}");
        if ctx.run(case, || monoidal_triple_case(&p, &q, &r, structural)) {
            verified += 1;
        }
        attempt += 1;
    }
    ctx.check(
        "monoidal-laws/coverage".into(),
        verified >= cfg.cases.monoidal_triples,
        format!("verified only {verified} triples"),
    );

    // Pentagon on small quadruples.
    let mut verified = 0usize;
    let mut attempt = 0usize;
    let max_attempts = cfg.cases.pentagon * 6 + 16;
    while verified < cfg.cases.pentagon && attempt < max_attempts {
        let p = sample_poly(&mut rng, 2, 2);
        let q = sample_poly(&mut rng, 2, 2);
        let r = sample_poly(&mut rng, 2, 2);
        let s = sample_poly(&mut rng, 2, 2);
        let case = format!("pentagon/{attempt:04}");
        if ctx.run(case, || pentagon_case(&p, &q, &r, &s, structural)) {
            verified += 1;
        }
        attempt += 1;
    }
    ctx.check(
        "pentagon/coverage".into(),
        verified >= cfg.cases.pentagon,
        format!("verified only {verified} quadruples"),
    );

    // Evaluation functoriality and connected-limit preservation.
    for i in 0..10 {
        let p = sample_poly(&mut rng, 2, 2);
        let q = sample_poly(&mut rng, 2, 2);
        let r = sample_poly(&mut rng, 2, 2);
        ctx.run(format!("eval-functorial/{i:02}"), || {
            eval_functoriality_case(&p, &q, &r, budget)
        });
    }
    for i in 0..10 {
        let q = sample_poly(&mut rng, 2, 2);
        let p = sample_poly(&mut rng, 3, 2);
        ctx.run(format!("compose-preserves-limits/{i:02}"), || {
            trilimit_case(&q, &p, structural)
        });
    }

    // Classification is definitional; mutation-check it.
    ctx.run("classify/mutation".into(), || {
        let p = Poly::numeric(&[2]);
        let id = PolyMor::identity(&p);
        let cls = id.classify();
        if !(cls.cartesian && cls.vertical) {
            return Ok((false, "identity misclassified".into()));
        }
        let twist = PolyMor::from_fns(
            &p,
            &p,
            |pos| pos.clone(),
            |_, d| match d {
                Label::Int(0) => Label::int(1),
                _ => Label::int(0),
            },
        )?;
        let cls = twist.classify();
        if !(cls.cartesian && cls.vertical) {
            return Ok((false, "bijective twist misclassified".into()));
        }
        let collapse = PolyMor::from_fns(&p, &p, |pos| pos.clone(), |_, _| Label::int(0))?;
        let cls = collapse.classify();
        Ok((
            cls.vertical && !cls.cartesian,
            "non-bijective collapse misclassified".into(),
        ))
    });

    ctx.set_digest(&corpus_desc);
    for r in &mut ctx.records {
        r.corpus_digest = ctx.digest.clone();
    }
    ctx.records
}

// -------------------------------------------------------------- duoidal

fn duoidal_quad_case(
    p1: &Poly,
    p2: &Poly,
    q1: &Poly,
    q2: &Poly,
    budget: Budget,
) -> Result<(bool, String)> {
    let zeta = interchange(p1, p2, q1, q2, budget)?;
    if !zeta.classify().cartesian {
        return Ok((false, "interchange is not cartesian".into()));
    }
    // Naturality against the first available morphism into each argument.
    let p1b = Poly::numeric(&[1]);
    if let Some(phi) = hom_enumerate(&p1b, p1, budget)?.into_iter().next() {
        let id2 = PolyMor::identity(p2);
        let idq1 = PolyMor::identity(q1);
        let idq2 = PolyMor::identity(q2);
        let top = mor_tensor(
            &mor_compose_product(&phi, &id2, budget)?,
            &mor_compose_product(&idq1, &idq2, budget)?,
        );
        let lhs = top.then(&zeta)?;
        let bottom = mor_compose_product(&mor_tensor(&phi, &idq1), &mor_tensor(&id2, &idq2), budget)?;
        let rhs = interchange(&p1b, p2, q1, q2, budget)?.then(&bottom)?;
        if lhs != rhs {
            return Ok((false, "naturality square fails".into()));
        }
    }
    Ok((true, String::new()))
}

fn duoidal_unit_case(q1: &Poly, q2: &Poly, budget: Budget) -> Result<(bool, String)> {
    // ζ with the left block trivial collapses to unitors:
    // (y◁y) ⊗ (q1◁q2) → (y⊗q1) ◁ (y⊗q2) followed by unitors equals the
    // tensor unitor after the composition unitor.
    let y = Poly::y();
    let zeta = interchange(&y, &y, q1, q2, budget)?;
    let unitors = mor_compose_product(&tensor_lunitor(q1), &tensor_lunitor(q2), budget)?;
    let lhs = zeta.then(&unitors)?;
    // Other route: strip y◁y ≅ y by the composition unitor inside the
    // tensor, then the tensor unitor.
    let yy_to_y = compose_lunitor(&y, budget)?;
    let q1q2 = compose(q1, q2, budget)?;
    let strip = mor_tensor(&yy_to_y, &PolyMor::identity(&q1q2));
    let rhs = strip.then(&tensor_lunitor(&q1q2))?;
    Ok((lhs == rhs, "unit coherence fails".into()))
}

fn duoidal_assoc_case(
    p: [&Poly; 2],
    q: [&Poly; 2],
    r: [&Poly; 2],
    budget: Budget,
) -> Result<(bool, String)> {
    // Two routes ((p1◁p2) ⊗ (q1◁q2)) ⊗ (r1◁r2) → ((p1⊗q1)⊗r1) ◁ ((p2⊗q2)⊗r2).
    let r_comp = compose(r[0], r[1], budget)?;
    let route_a = {
        let step1 = mor_tensor(
            &interchange(p[0], p[1], q[0], q[1], budget)?,
            &PolyMor::identity(&r_comp),
        );
        let step2 = interchange(&tensor(p[0], q[0]), &tensor(p[1], q[1]), r[0], r[1], budget)?;
        step1.then(&step2)?
    };
    let route_b = {
        let p_comp = compose(p[0], p[1], budget)?;
        let q_comp = compose(q[0], q[1], budget)?;
        let assoc = tensor_associator(&p_comp, &q_comp, &r_comp);
        let step1 = mor_tensor(
            &PolyMor::identity(&p_comp),
            &interchange(q[0], q[1], r[0], r[1], budget)?,
        );
        let step2 = interchange(p[0], p[1], &tensor(q[0], r[0]), &tensor(q[1], r[1]), budget)?;
        let fix = mor_compose_product(
            &tensor_associator(p[0], q[0], r[0]).inverse()?,
            &tensor_associator(p[1], q[1], r[1]).inverse()?,
            budget,
        )?;
        assoc.then(&step1)?.then(&step2)?.then(&fix)?
    };
    Ok((route_a == route_b, "associativity coherence fails".into()))
}

fn run_duoidal(cfg: &HarnessConfig) -> Vec<LawRecord> {
    let mut ctx = SuiteCtx::new("duoidal", cfg.seed);
    let mut rng = suite_rng(cfg.seed, "duoidal");
    let budget = Budget(cfg.budget.0.min(20_000));
    let mut corpus_desc = String::new();

    let mut verified = 0usize;
    let mut attempt = 0usize;
    let max_attempts = cfg.cases.duoidal_quads * 4 + 16;
    while verified < cfg.cases.duoidal_quads && attempt < max_attempts {
        let p1 = sample_poly(&mut rng, cfg.max_positions, 2);
        let p2 = sample_poly(&mut rng, cfg.max_positions, 2);
        let q1 = sample_poly(&mut rng, cfg.max_positions, 2);
        let q2 = sample_poly(&mut rng, cfg.max_positions, 2);
        let _ = writeln!(
            corpus_desc,
            "quad {attempt} {} {} {} {}",
            describe_poly(&p1),
            describe_poly(&p2),
            describe_poly(&q1),
            describe_poly(&q2)
        );
        let case = format!("interchange/{attempt:04}");
        if ctx.run(case, || duoidal_quad_case(&p1, &p2, &q1, &q2, budget)) {
            verified += 1;
        }
        attempt += 1;
    }
    ctx.check(
        "interchange/coverage".into(),
        verified >= cfg.cases.duoidal_quads,
        format!("verified only {verified} quadruples"),
    );

    for i in 0..10 {
        let q1 = sample_poly(&mut rng, 2, 2);
        let q2 = sample_poly(&mut rng, 2, 2);
        ctx.run(format!("unit-coherence/{i:02}"), || {
            duoidal_unit_case(&q1, &q2, budget)
        });
    }
    for i in 0..5 {
        let polys: Vec<Poly> = (0..6).map(|_| sample_poly(&mut rng, 2, 1)).collect();
        ctx.run(format!("assoc-coherence/{i:02}"), || {
            duoidal_assoc_case(
                [&polys[0], &polys[1]],
                [&polys[2], &polys[3]],
                [&polys[4], &polys[5]],
                budget,
            )
        });
    }

    ctx.set_digest(&corpus_desc);
    for r in &mut ctx.records {
        r.corpus_digest = ctx.digest.clone();
    }
    ctx.records
}

// -------------------------------------------------------------- closure

/// The fixed six-polynomial pool used by the closure and coclosure
/// adjunction suites.
pub fn closure_pool() -> Vec<Poly> {
    vec![
        Poly::y(),
        Poly::zero(),
        Poly::numeric(&[0]),
        Poly::numeric(&[2]),
        Poly::numeric(&[1, 1]),
        Poly::numeric(&[2, 0]),
    ]
}

fn closure_triple_case(p: &Poly, q: &Poly, r: &Poly, budget: Budget) -> Result<(bool, String)> {
    let pq = tensor(p, q);
    let homs = hom_enumerate(&pq, r, budget)?;
    let cl = closure(q, r, budget)?;
    let homs_curried = hom_enumerate(p, &cl, budget)?;
    if homs.len() != homs_curried.len() {
        return Ok((
            false,
            format!("hom sets differ: {} vs {}", homs.len(), homs_curried.len()),
        ));
    }
    for phi in &homs {
        let c = closure_curry(phi, p, q, r, budget)?;
        let back = closure_uncurry(&c, p, q, r, budget)?;
        if &back != phi {
            return Ok((false, "uncurry ∘ curry is not the identity".into()));
        }
    }
    for psi in &homs_curried {
        let u = closure_uncurry(psi, p, q, r, budget)?;
        let back = closure_curry(&u, p, q, r, budget)?;
        if &back != psi {
            return Ok((false, "curry ∘ uncurry is not the identity".into()));
        }
    }
    Ok((true, String::new()))
}

fn closure_triangle_case(p: &Poly, q: &Poly, budget: Budget) -> Result<(bool, String)> {
    let pq = tensor(p, q);
    let eta = closure_pair(p, q, budget)?;
    let eps = closure_eval(p, &pq, budget)?;
    let first = mor_tensor(&PolyMor::identity(p), &eta).then(&eps)?;
    if first != PolyMor::identity(&pq) {
        return Ok((false, "first triangle identity fails".into()));
    }
    let cl = closure(p, q, budget)?;
    let eta_cl = closure_pair(p, &cl, budget)?;
    let eps_q = closure_eval(p, q, budget)?;
    let map = closure_map_right(p, &eps_q, budget)?;
    let second = eta_cl.then(&map)?;
    Ok((second == PolyMor::identity(&cl), "second triangle identity fails".into()))
}

fn run_closure(cfg: &HarnessConfig) -> Vec<LawRecord> {
    let mut ctx = SuiteCtx::new("closure", cfg.seed);
    let budget = cfg.budget;
    let pool = closure_pool();
    let desc: String = pool.iter().map(|p| describe_poly(p) + ";").collect();
    ctx.set_digest(&desc);

    for (i, p) in pool.iter().enumerate() {
        for (j, q) in pool.iter().enumerate() {
            for (k, r) in pool.iter().enumerate() {
                ctx.run(format!("adjunction/{i}{j}{k}"), || {
                    closure_triple_case(p, q, r, budget)
                });
            }
            ctx.run(format!("triangle/{i}{j}"), || closure_triangle_case(p, q, budget));
        }
        ctx.run(format!("unit-iso/{i}"), || {
            let iso = closure_unit_iso(p, budget)?;
            Ok((
                iso.is_iso() && iso.classify().cartesian,
                "[y, q] ≅ q witness is not a cartesian isomorphism".into(),
            ))
        });
    }
    // Functoriality of the closure in both arguments, checked as
    // composition laws on enumerated morphisms.
    ctx.run("functoriality/right".into(), || {
        let p = Poly::numeric(&[2]);
        let q = Poly::numeric(&[1, 1]);
        let r = Poly::numeric(&[1]);
        for phi in hom_enumerate(&q, &r, budget)? {
            for psi in hom_enumerate(&r, &q, budget)? {
                let step = closure_map_right(&p, &phi, budget)?
                    .then(&closure_map_right(&p, &psi, budget)?)?;
                let direct = closure_map_right(&p, &phi.then(&psi)?, budget)?;
                if step != direct {
                    return Ok((false, "covariant functoriality fails".into()));
                }
            }
        }
        Ok((true, String::new()))
    });
    ctx.run("functoriality/left".into(), || {
        let p = Poly::numeric(&[2]);
        let q = Poly::numeric(&[1, 1]);
        let r = Poly::numeric(&[2, 0]);
        for phi in hom_enumerate(&p, &q, budget)? {
            for psi in hom_enumerate(&q, &p, budget)? {
                let step = crate::structures::closure_map_left(&psi, &r, budget)?
                    .then(&crate::structures::closure_map_left(&phi, &r, budget)?)?;
                let direct = crate::structures::closure_map_left(&phi.then(&psi)?, &r, budget)?;
                if step != direct {
                    return Ok((false, "contravariant functoriality fails".into()));
                }
            }
        }
        Ok((true, String::new()))
    });
    // The lax compatibility map with composition exists and is natural.
    ctx.run("lax-composition".into(), || {
        let y = Poly::y();
        let p1 = Poly::numeric(&[2]);
        let q1 = Poly::numeric(&[1, 1]);
        let m = closure_compose_lax(&p1, &q1, &y, &y, budget)?;
        let expect_dom = compose(&closure(&p1, &q1, budget)?, &closure(&y, &y, budget)?, budget)?;
        Ok((m.dom() == &expect_dom, "lax map has the wrong domain".into()))
    });
    ctx.records
}

// ------------------------------------------------------------ coclosure

fn coclosure_triple_case(p: &Poly, q: &Poly, r: &Poly, budget: Budget) -> Result<(bool, String)> {
    // Right coclosure adjunction.
    let rq = compose(r, q, budget)?;
    let lhs = hom_enumerate(p, &rq, budget)?;
    let co = right_coclosure(p, q, budget)?;
    let rhs = hom_enumerate(&co, r, budget)?;
    if lhs.len() != rhs.len() {
        return Ok((
            false,
            format!("coclosure hom sets differ: {} vs {}", lhs.len(), rhs.len()),
        ));
    }
    for psi in &lhs {
        let t = rc_transpose(psi, p, q, r, budget)?;
        if &rc_untranspose(&t, p, q, r, budget)? != psi {
            return Ok((false, "right-coclosure round trip fails".into()));
        }
    }
    for phi in &rhs {
        let u = rc_untranspose(phi, p, q, r, budget)?;
        if &rc_transpose(&u, p, q, r, budget)? != phi {
            return Ok((false, "right-coclosure reverse round trip fails".into()));
        }
    }
    // Indexed left coclosure adjunction, partitioned over indices.
    let qr = compose(q, r, budget)?;
    let lhs2 = hom_enumerate(p, &qr, budget)?;
    let mut by_index: BTreeMap<Label, usize> = BTreeMap::new();
    for psi in &lhs2 {
        let (f, phi) = ic_transpose(psi, p, q, r, budget)?;
        *by_index.entry(f.table_label()).or_default() += 1;
        if &ic_untranspose(&f, &phi, p, q, r, budget)? != psi {
            return Ok((false, "indexed-coclosure round trip fails".into()));
        }
    }
    let mut total = 0usize;
    for f in all_fns(p.positions(), q.positions(), budget)? {
        let frown = indexed_coclosure(p, &f, q)?;
        let count = hom_enumerate(&frown, r, budget)?.len();
        total += count;
        let seen = by_index.get(&f.table_label()).copied().unwrap_or(0);
        if seen != count {
            return Ok((
                false,
                format!("partition at index {} has {seen} ≠ {count}", f.table_label()),
            ));
        }
    }
    if total != lhs2.len() {
        return Ok((false, "index partition does not cover the hom set".into()));
    }
    Ok((true, String::new()))
}

fn run_coclosure(cfg: &HarnessConfig) -> Vec<LawRecord> {
    let mut ctx = SuiteCtx::new("coclosure", cfg.seed);
    let budget = cfg.budget;
    let pool = closure_pool();
    let desc: String = pool.iter().map(|p| describe_poly(p) + ";").collect();
    ctx.set_digest(&desc);

    for (i, p) in pool.iter().enumerate() {
        for (j, q) in pool.iter().enumerate() {
            for (k, r) in pool.iter().enumerate() {
                ctx.run(format!("adjunction/{i}{j}{k}"), || {
                    coclosure_triple_case(p, q, r, budget)
                });
            }
        }
        ctx.run(format!("unit-iso/{i}"), || {
            let iso = coclosure_unit_iso(p, budget)?;
            Ok((iso.is_iso(), "⟨p|y⟩ ≅ p witness is not an isomorphism".into()))
        });
        ctx.run(format!("star-frown/{i}"), || {
            let idp = FinFn::identity(p.positions());
            let frown = indexed_coclosure(p, &idp, p)?;
            let (star, _) = crate::poly_ops::star(p);
            Ok((frown == star, "p ⌢_id p differs from the total-space polynomial".into()))
        });
    }
    ctx.run("frown-naturality".into(), || {
        // For a cartesian φ : q → q' with identity direction tables,
        // p ⌢_f q equals p ⌢_{φ₁∘f} q' on the nose.
        let p = Poly::numeric(&[2]);
        let q = Poly::numeric(&[2, 2]);
        let q2 = Poly::numeric(&[2, 2, 2]);
        let phi = hom_enumerate(&q, &q2, budget)?
            .into_iter()
            .find(|m| {
                m.classify().cartesian
                    && q
                        .positions()
                        .iter()
                        .all(|i| m.on_dir(i) == &FinFn::identity(q.dirs(i)))
            })
            .ok_or_else(|| Error::invalid("harness", "no strict cartesian morphism found"))?;
        for f in all_fns(p.positions(), q.positions(), budget)? {
            let lhs = indexed_coclosure(&p, &f, &q)?;
            let rhs = indexed_coclosure(&p, &f.then(phi.on_pos())?, &q2)?;
            if lhs != rhs {
                return Ok((false, "frown naturality fails".into()));
            }
        }
        Ok((true, String::new()))
    });
    ctx.run("coclosure-tensor".into(), || {
        let y = Poly::y();
        let p1 = Poly::numeric(&[1, 1]);
        let p2 = Poly::numeric(&[2]);
        let q1 = Poly::numeric(&[1, 1]);
        let m = coclosure_tensor_map(&p1, &q1, &p2, &y, budget)?;
        let lhs = right_coclosure(&tensor(&p1, &p2), &tensor(&q1, &y), budget)?;
        if m.dom() != &lhs {
            return Ok((false, "comparison map has the wrong domain".into()));
        }
        let trivial = coclosure_tensor_map(&p1, &y, &p2, &y, budget)?;
        Ok((trivial.is_iso(), "trivial-fiber comparison is not an isomorphism".into()))
    });
    ctx.run("frown-tensor-iso".into(), || {
        let p1 = Poly::numeric(&[1, 1]);
        let p2 = Poly::numeric(&[2]);
        let q1 = Poly::numeric(&[2, 1]);
        let f1 = FinFn::from_fn(p1.positions().clone(), q1.positions().clone(), |i| i.clone())?;
        let f2 = FinFn::to_unit(p2.positions());
        let iso = frown_tensor_iso(&p1, &f1, &q1, &p2, &f2, &Poly::y())?;
        Ok((iso.is_iso(), "tensor-frown comparison is not an isomorphism".into()))
    });
    ctx.records
}

// ------------------------------------------------------------- comonoid

/// Deterministic corpus of finite categories with ≤ 3 objects and ≤ 8
/// morphisms: fixed seeds plus sampled preorders and monoids.
fn category_corpus(rng: &mut ChaCha8Rng, count: usize) -> Vec<FinCat> {
    let mut out = vec![
        FinCat::terminal(),
        FinCat::walking_arrow(),
        FinCat::parallel_pair(),
        FinCat::discrete(FinSet::ints(3)),
    ];
    while out.len() < count {
        match rng.gen_range(0..3u8) {
            0 => {
                // Random preorder on ≤ 3 objects.
                let n = rng.gen_range(1..=3usize);
                let mut rel = vec![vec![false; n]; n];
                for (i, row) in rel.iter_mut().enumerate() {
                    for (j, cell) in row.iter_mut().enumerate() {
                        *cell = i != j && rng.gen_bool(0.4);
                    }
                }
                if let Ok(c) = FinCat::from_preorder(FinSet::ints(n), &|x, y| {
                    match (x, y) {
                        (Label::Int(a), Label::Int(b)) => rel[*a as usize][*b as usize],
                        _ => false,
                    }
                }) {
                    if c.morphisms.len() <= 8 {
                        out.push(c);
                    }
                }
            }
            1 => {
                // Random small monoid by rejection.
                let n = rng.gen_range(1..=3usize);
                let mut table = vec![vec![0usize; n]; n];
                for row in table.iter_mut() {
                    for cell in row.iter_mut() {
                        *cell = rng.gen_range(0..n);
                    }
                }
                for (i, cell) in table[0].iter_mut().enumerate() {
                    *cell = i;
                }
                for (i, row) in table.iter_mut().enumerate() {
                    row[0] = i;
                }
                let assoc = (0..n).all(|i| {
                    (0..n).all(|j| (0..n).all(|k| table[table[i][j]][k] == table[i][table[j][k]]))
                });
                if assoc {
                    if let Ok(c) = FinCat::from_monoid(&table, 0) {
                        out.push(c);
                    }
                }
            }
            _ => {
                // Discrete category on 1 or 2 objects.
                let n = rng.gen_range(1..=2usize);
                out.push(FinCat::discrete(FinSet::ints(n)));
            }
        }
    }
    out.truncate(count);
    out
}

/// Exhaustive candidate pairs (ε, δ) on the walking-arrow carrier.
fn walking_arrow_candidates(budget: Budget) -> Result<Vec<(PolyMor, PolyMor)>> {
    let carrier = fincat_comonoid(&FinCat::walking_arrow(), budget)?.carrier;
    let eps_all = hom_enumerate(&carrier, &Poly::y(), budget)?;
    let cc = compose(&carrier, &carrier, budget)?;
    let delta_all = hom_enumerate(&carrier, &cc, budget)?;
    let mut out = Vec::new();
    for eps in &eps_all {
        for delta in &delta_all {
            out.push((eps.clone(), delta.clone()));
        }
    }
    Ok(out)
}

fn run_comonoid(cfg: &HarnessConfig) -> Vec<LawRecord> {
    let mut ctx = SuiteCtx::new("comonoid", cfg.seed);
    let mut rng = suite_rng(cfg.seed, "comonoid");
    let budget = cfg.budget;
    let cats = category_corpus(&mut rng, cfg.cases.comonoid_categories);
    let desc: String = cats
        .iter()
        .map(|c| format!("{}/{};", c.objects.len(), c.morphisms.len()))
        .collect();
    ctx.set_digest(&desc);

    for (i, cat) in cats.iter().enumerate() {
        ctx.run(format!("roundtrip/{i:03}"), || {
            let internal = InternalCategory::from_fincat(cat);
            let com = cat_to_comonoid(&internal, budget)?;
            let report = comonoid_check(&com, budget)?;
            if let Some(first) = report.first_failure() {
                return Ok((false, first));
            }
            let back = comonoid_to_cat(&com)?;
            if back != internal {
                return Ok((false, "category → comonoid → category is not the identity".into()));
            }
            let again = cat_to_comonoid(&back, budget)?;
            Ok((again == com, "comonoid → category → comonoid is not the identity".into()))
        });
    }

    ctx.run("law-equivalence/walking-arrow".into(), || {
        let carrier = fincat_comonoid(&FinCat::walking_arrow(), budget)?.carrier;
        let mut checked = 0usize;
        for (eps, delta) in walking_arrow_candidates(budget)? {
            let cand = Comonoid {
                carrier: carrier.clone(),
                counit: eps,
                comult: delta,
            };
            let comonoid_ok = comonoid_check(&cand, budget)?.passed();
            let cat_ok = match comonoid_to_cat(&cand) {
                Ok(cat) => cat.validate().passed(),
                Err(_) => false,
            };
            if comonoid_ok != cat_ok {
                return Ok((
                    false,
                    format!(
                        "verdicts disagree on candidate {checked}: comonoid {comonoid_ok}, category {cat_ok}"
                    ),
                ));
            }
            checked += 1;
        }
        // |Hom(c, y)| · |Hom(c, c ◁ c)| = 2 · 252 candidate structures.
        Ok((checked == 504, format!("{checked} candidates enumerated, expected 504")))
    });

    ctx.run("cofunctor-equivalence/walking-arrow-self".into(), || {
        let c = fincat_comonoid(&FinCat::walking_arrow(), budget)?;
        let mut agreed = 0usize;
        for phi in hom_enumerate(&c.carrier, &c.carrier, budget)? {
            let r = cofunctor_check(&phi, &c, &c, budget)?;
            if !r.verdicts_agree() {
                return Ok((false, "verdicts disagree".into()));
            }
            agreed += 1;
        }
        Ok((agreed > 0, "no morphisms enumerated".into()))
    });
    ctx.run("cofunctor-equivalence/to-terminal".into(), || {
        let c = fincat_comonoid(&FinCat::walking_arrow(), budget)?;
        let y_com = fincat_comonoid(&FinCat::terminal(), budget)?;
        let mut passing = 0usize;
        for phi in hom_enumerate(&c.carrier, &y_com.carrier, budget)? {
            let r = cofunctor_check(&phi, &c, &y_com, budget)?;
            if !r.verdicts_agree() {
                return Ok((false, "verdicts disagree".into()));
            }
            if r.passed() {
                passing += 1;
            }
        }
        Ok((passing == 1, format!("{passing} cofunctors to the terminal comonoid")))
    });

    ctx.run("mutation".into(), || {
        let cat = InternalCategory::from_fincat(&FinCat::walking_arrow());
        let com = cat_to_comonoid(&cat, budget)?;
        let cc = compose(&com.carrier, &com.carrier, budget)?;
        let carrier = com.carrier.clone();
        let bad = Comonoid {
            carrier: carrier.clone(),
            counit: com.counit.clone(),
            comult: PolyMor::from_fns(
                &carrier,
                &cc,
                |x| {
                    let table =
                        FinFn::constant(carrier.dirs(x), carrier.positions(), &Label::str("a"))
                            .expect("constant");
                    Label::pair(x.clone(), table.table_label())
                },
                |_, fg| fg.expect_pair().0.clone(),
            )?,
        };
        let report = comonoid_check(&bad, budget)?;
        Ok((!report.passed(), "mutant passed the law check".into()))
    });

    // Canonical comonoids built from polynomials.
    for (i, arities) in [vec![1usize, 1], vec![2], vec![2, 1]].iter().enumerate() {
        let p = Poly::numeric(arities);
        ctx.run(format!("star-comonoid/{i}"), || {
            let c = crate::comonoid::star_comonoid(&p, budget)?;
            Ok((comonoid_check(&c, budget)?.passed(), "total-space comonoid fails laws".into()))
        });
        ctx.run(format!("selfclosure-comonoid/{i}"), || {
            let c = crate::comonoid::selfclosure_comonoid(&p, budget)?;
            let report = comonoid_check(&c, budget)?;
            Ok((report.passed(), report.first_failure().unwrap_or_default()))
        });
    }
    ctx.records
}

// ------------------------------------------------------------ coalgebra

/// All copresheaves on the walking arrow with total size ≤ bound, up to
/// the canonical integer labeling.
fn walking_arrow_copresheaves(bound: usize) -> Vec<Copresheaf> {
    let base = FinCat::walking_arrow();
    let mut out = Vec::new();
    for na in 0..=bound {
        for nb in 0..=(bound - na) {
            let xa = FinSet::ints(na);
            let xb = FinSet::ints(nb);
            let budget = Budget::default();
            for f in all_fns(&xa, &xb, budget).unwrap() {
                let cop = Copresheaf::new(
                    base.clone(),
                    [(Label::str("a"), xa.clone()), (Label::str("b"), xb.clone())].into(),
                    [
                        (Label::str("id_a"), FinFn::identity(&xa)),
                        (Label::str("id_b"), FinFn::identity(&xb)),
                        (Label::str("f"), f),
                    ]
                    .into(),
                );
                if let Ok(c) = cop {
                    out.push(c);
                }
            }
        }
    }
    out
}

/// All coalgebra structures over a comonoid on carriers `{0..n}`.
fn enumerate_coalgebras(c: &Comonoid, n: usize, budget: Budget) -> Result<Vec<Coalgebra>> {
    let s = FinSet::ints(n);
    let mut out = Vec::new();
    for pos in all_fns(&s, c.carrier.positions(), budget)? {
        // Enumerate all action tables for this labeling.
        let mut keys = Vec::new();
        for el in s.iter() {
            for f in c.carrier.dirs(pos.apply(el)).iter() {
                keys.push(Label::pair(el.clone(), f.clone()));
            }
        }
        let choices: Vec<Vec<Label>> = keys.iter().map(|_| s.iter().cloned().collect()).collect();
        budget.charge(
            crate::budget::mul128(choices.iter().map(|c| c.len() as u128)),
            "coalgebra enumeration",
        )?;
        for pick in crate::finset::cartesian(&choices) {
            let act: BTreeMap<Label, Label> =
                keys.iter().cloned().zip(pick).collect();
            if let Ok(cand) = Coalgebra::new(c.clone(), s.clone(), pos.clone(), act) {
                if coalg_check(&cand).passed() {
                    out.push(cand);
                }
            }
        }
    }
    Ok(out)
}

fn run_coalgebra(cfg: &HarnessConfig) -> Vec<LawRecord> {
    let mut ctx = SuiteCtx::new("coalgebra", cfg.seed);
    let budget = cfg.budget;
    ctx.set_digest("walking-arrow total-size ≤ 3");

    ctx.run("equivalence/count".into(), || {
        // The number of coalgebra structures on carriers of size n matches
        // the number of copresheaves with total size n and a chosen
        // bijection carrier ≅ total set, i.e. structures correspond under
        // the Grothendieck construction. Count both sides exhaustively:
        // every valid coalgebra arises from a copresheaf by relabeling.
        let c = fincat_comonoid(&FinCat::walking_arrow(), budget)?;
        for n in 0..=3usize {
            let coalgs = enumerate_coalgebras(&c, n, budget)?;
            // Oracle: labeled copresheaf structures on a fixed n-element
            // carrier = ways to split the carrier into fibers A ⊔ B with a
            // function A → B.
            let mut oracle = 0usize;
            let s = FinSet::ints(n);
            for pos in all_fns(&s, c.carrier.positions(), budget)? {
                let a_fiber = pos.preimage(&Label::str("a"));
                let b_fiber = pos.preimage(&Label::str("b"));
                oracle += b_fiber.len().pow(a_fiber.len() as u32);
            }
            if coalgs.len() != oracle {
                return Ok((
                    false,
                    format!("size {n}: {} coalgebras, oracle {}", coalgs.len(), oracle),
                ));
            }
        }
        Ok((true, String::new()))
    });

    ctx.run("equivalence/roundtrips".into(), || {
        let c = fincat_comonoid(&FinCat::walking_arrow(), budget)?;
        for xp in walking_arrow_copresheaves(3) {
            let x = copresheaf_to_coalg(&xp, &c)?;
            if !coalg_check(&x).passed() {
                return Ok((false, "converted coalgebra fails laws".into()));
            }
            let back = crate::coalgebra::coalg_to_copresheaf(&x, &FinCat::walking_arrow())?;
            if back.total_size() != xp.total_size() {
                return Ok((false, "round trip changes total size".into()));
            }
            for obj in back.base.objects.iter() {
                if back.at[obj].len() != xp.at[obj].len() {
                    return Ok((false, format!("round trip changes the fiber at {obj}")));
                }
            }
            // Opfibration view round-trips exactly.
            let (total, proj) = crate::coalgebra::coalg_to_opfib(&x, budget)?;
            let again = crate::coalgebra::opfib_to_coalg(&total, &proj, &c, budget)?;
            if again != x {
                return Ok((false, "opfibration round trip is not the identity".into()));
            }
        }
        Ok((true, String::new()))
    });

    ctx.run("equivalence/homs".into(), || {
        let c = fincat_comonoid(&FinCat::walking_arrow(), budget)?;
        let cops = walking_arrow_copresheaves(3);
        for (i, xp) in cops.iter().enumerate() {
            for (j, yp) in cops.iter().enumerate() {
                let x = copresheaf_to_coalg(xp, &c)?;
                let y = copresheaf_to_coalg(yp, &c)?;
                let lhs = coalg_homs(&x, &y, budget)?.len();
                let rhs = copresheaf_homs(xp, yp, budget)?.len();
                if lhs != rhs {
                    return Ok((
                        false,
                        format!("hom sets differ at pair ({i},{j}): {lhs} vs {rhs}"),
                    ));
                }
            }
        }
        Ok((true, String::new()))
    });

    ctx.run("mutation".into(), || {
        let c = fincat_comonoid(&FinCat::walking_arrow(), budget)?;
        let xp = walking_arrow_copresheaves(3)
            .into_iter()
            .find(|x| x.at[&Label::str("a")].len() == 2 && x.at[&Label::str("b")].len() == 1)
            .expect("corpus contains the (2,1) shape");
        let good = copresheaf_to_coalg(&xp, &c)?;
        let mut act = good.act.clone();
        let key = Label::pair(
            Label::pair(Label::str("a"), Label::int(0)),
            Label::str("f"),
        );
        act.insert(key, Label::pair(Label::str("a"), Label::int(1)));
        let bad = Coalgebra::new(c, good.carrier.clone(), good.pos.clone(), act)?;
        Ok((!coalg_check(&bad).passed(), "mutant passed the law check".into()))
    });
    ctx.records
}

// ----------------------------------------------------------- bicomodule

/// Sample a typed polynomial over small object sets.
fn sample_typed(rng: &mut ChaCha8Rng, cfg: &HarnessConfig, nc: usize, nd: usize) -> TypedPoly {
    let m = sample_poly(rng, cfg.max_positions, cfg.max_directions);
    let c_set = FinSet::ints(nc.max(1));
    let d_set = FinSet::ints(nd.max(1));
    let cs: Vec<Label> = c_set.iter().cloned().collect();
    let ds: Vec<Label> = d_set.iter().cloned().collect();
    let tgt_assign: BTreeMap<Label, Label> = m
        .positions()
        .iter()
        .map(|i| (i.clone(), cs[rng.gen_range(0..cs.len())].clone()))
        .collect();
    let src_assign: BTreeMap<Label, Label> = m
        .total()
        .iter()
        .map(|t| (t.clone(), ds[rng.gen_range(0..ds.len())].clone()))
        .collect();
    let tgt = FinFn::new(m.positions().clone(), c_set, tgt_assign).expect("total");
    let src = FinFn::new(m.total(), d_set, src_assign).expect("total");
    TypedPoly::new(m, src, tgt).expect("well typed")
}

fn run_bicomodule(cfg: &HarnessConfig) -> Vec<LawRecord> {
    let mut ctx = SuiteCtx::new("bicomodule", cfg.seed);
    let mut rng = suite_rng(cfg.seed, "bicomodule");
    let budget = cfg.budget;
    let mut desc = String::new();

    for i in 0..20 {
        let t = sample_typed(&mut rng, cfg, 2, 2);
        let _ = writeln!(desc, "typed {i} {}", describe_poly(&t.m));
        ctx.run(format!("typed-laws/{i:02}"), || {
            let bi = bicomod_from_typed(&t, budget)?;
            let report = bicomodule_check(&bi, budget)?;
            if let Some(first) = report.first_failure() {
                return Ok((false, first));
            }
            if !bi.left.classify().cartesian || !bi.right.classify().cartesian {
                return Ok((false, "typed coactions must be cartesian".into()));
            }
            let back = crate::bicomodule::typed_from_bicomod(&bi)?;
            Ok((back == t, "typed round trip is not the identity".into()))
        });
    }

    ctx.run("identity-bicomodule".into(), || {
        let c = fincat_comonoid(&FinCat::walking_arrow(), budget)?;
        let idb = Bicomodule::identity(&c, budget)?;
        let report = bicomodule_check(&idb, budget)?;
        Ok((report.passed(), report.first_failure().unwrap_or_default()))
    });

    ctx.run("mutation".into(), || {
        // Find a typed polynomial with a ≥ 2-direction fiber and swap that
        // fiber's directions in the right coaction: this breaks the counit
        // law and must be witnessed.
        let mut t = sample_typed(&mut rng, cfg, 2, 2);
        for _ in 0..32 {
            if t.m.positions().iter().any(|i| t.m.dirs(i).len() >= 2) {
                break;
            }
            t = sample_typed(&mut rng, cfg, 2, 2);
        }
        let victim = t
            .m
            .positions()
            .iter()
            .find(|i| t.m.dirs(i).len() >= 2)
            .cloned()
            .ok_or_else(|| Error::invalid("harness", "no fiber with two directions sampled"))?;
        let bi = bicomod_from_typed(&t, budget)?;
        let md = compose(&bi.m, &bi.d.carrier, budget)?;
        let bad_right = PolyMor::from_fns(
            &bi.m,
            &md,
            |i| bi.right.on_pos().apply(i).clone(),
            |i, dir| {
                let honest = bi.right.on_dir(i).apply(dir).clone();
                if i == &victim {
                    let fiber = bi.m.dirs(i);
                    let idx = fiber.iter().position(|x| x == &honest).unwrap();
                    fiber.elems()[(idx + 1) % fiber.len()].clone()
                } else {
                    honest
                }
            },
        )?;
        let bad = Bicomodule {
            right: bad_right,
            ..bi
        };
        let report = bicomodule_check(&bad, budget)?;
        Ok((
            !report.passed(),
            "mutated coaction passed the law check".into(),
        ))
    });

    ctx.set_digest(&desc);
    for r in &mut ctx.records {
        r.corpus_digest = ctx.digest.clone();
    }
    ctx.records
}

// ---------------------------------------------------------------- typed

fn run_typed(cfg: &HarnessConfig) -> Vec<LawRecord> {
    let mut ctx = SuiteCtx::new("typed", cfg.seed);
    let mut rng = suite_rng(cfg.seed, "typed");
    let budget = cfg.budget;
    let mut desc = String::new();

    let mut verified = 0usize;
    let mut attempt = 0usize;
    let max_attempts = cfg.cases.typed_pairs * 4 + 16;
    while verified < cfg.cases.typed_pairs && attempt < max_attempts {
        let p = sample_typed(&mut rng, cfg, 2, 2);
        let mut q = sample_typed(&mut rng, cfg, 2, 2);
        // Align q's target objects with p's source objects.
        q = TypedPoly::new(
            q.m.clone(),
            q.src_type.clone(),
            FinFn::new(
                q.m.positions().clone(),
                p.src_objects().clone(),
                q.tgt_type.map().clone(),
            )
            .expect("same object sets"),
        )
        .expect("well typed");
        let _ = writeln!(desc, "pair {attempt} {} {}", describe_poly(&p.m), describe_poly(&q.m));
        let case = format!("compose-agreement/{attempt:04}");
        if ctx.run(case, || {
            let b1 = bicomod_from_typed(&p, budget)?;
            let b2 = bicomod_from_typed(&q, budget)?;
            let composed = bicomod_compose(&b1, &b2, budget)?;
            let typed = crate::bicomodule::typed_compose(&p, &q, budget)?;
            let typed_bi = bicomod_from_typed(&typed, budget)?;
            match bicomod_iso_check(&composed, &typed_bi, budget)? {
                Some(_) => Ok((true, String::new())),
                None => Ok((false, "no coaction-compatible isomorphism found".into())),
            }
        }) {
            verified += 1;
        }
        attempt += 1;
    }
    ctx.check(
        "compose-agreement/coverage".into(),
        verified >= cfg.cases.typed_pairs,
        format!("verified only {verified} pairs"),
    );

    ctx.run("unit-laws".into(), || {
        let p = sample_typed(&mut rng, cfg, 2, 2);
        let b1 = bicomod_from_typed(&p, budget)?;
        let id_d = bicomod_from_typed(&TypedPoly::identity(p.src_objects()), budget)?;
        let right_unit = bicomod_compose(&b1, &id_d, budget)?;
        if iso_check(&right_unit.m, &p.m).is_none() {
            return Ok((false, "right unit law fails".into()));
        }
        let id_c = bicomod_from_typed(&TypedPoly::identity(p.tgt_objects()), budget)?;
        let left_unit = bicomod_compose(&id_c, &b1, budget)?;
        Ok((iso_check(&left_unit.m, &p.m).is_some(), "left unit law fails".into()))
    });

    ctx.run("associativity".into(), || {
        for _ in 0..5 {
            let p = sample_typed(&mut rng, cfg, 2, 2);
            let q = sample_typed(&mut rng, cfg, 2, 2);
            let r = sample_typed(&mut rng, cfg, 2, 2);
            let fix =
                |t: &TypedPoly, objs: &FinSet| {
                    TypedPoly::new(
                        t.m.clone(),
                        t.src_type.clone(),
                        FinFn::new(t.m.positions().clone(), objs.clone(), t.tgt_type.map().clone())
                            .expect("same labels"),
                    )
                    .expect("well typed")
                };
            let q = fix(&q, p.src_objects());
            let r = fix(&r, q.src_objects());
            let left = crate::bicomodule::typed_compose(
                &crate::bicomodule::typed_compose(&p, &q, budget)?,
                &r,
                budget,
            )?;
            let right = crate::bicomodule::typed_compose(
                &p,
                &crate::bicomodule::typed_compose(&q, &r, budget)?,
                budget,
            )?;
            if iso_check(&left.m, &right.m).is_none() {
                return Ok((false, "association orders disagree".into()));
            }
        }
        Ok((true, String::new()))
    });

    ctx.set_digest(&desc);
    for r in &mut ctx.records {
        r.corpus_digest = ctx.digest.clone();
    }
    ctx.records
}

// -------------------------------------------------------------- migrate

/// The (terminal, walking-arrow) bicomodule whose single fiber is the
/// corepresentable copresheaf at `a`.
fn yoneda_bicomodule(budget: Budget) -> Result<Bicomodule> {
    let d = fincat_comonoid(&FinCat::walking_arrow(), budget)?;
    let c = fincat_comonoid(&FinCat::terminal(), budget)?;
    let xp = Copresheaf::corepresentable(&FinCat::walking_arrow(), &Label::str("a"))?;
    let fiber = copresheaf_to_coalg(&xp, &d)?;
    let m = Poly::from_table(vec![(
        Label::str("pos"),
        fiber.carrier.iter().cloned().collect(),
    )])?;
    let cm = compose(&c.carrier, &m, budget)?;
    let left = PolyMor::from_fns(
        &m,
        &cm,
        |i| {
            let table =
                FinFn::constant(c.carrier.dirs(&Label::str("o")), m.positions(), i)
                    .expect("constant");
            Label::pair(Label::str("o"), table.table_label())
        },
        |_, dir| dir.expect_pair().1.clone(),
    )?;
    let md = compose(&m, &d.carrier, budget)?;
    let right = PolyMor::from_fns(
        &m,
        &md,
        |i| {
            let table = FinFn::from_fn(m.dirs(i).clone(), d.carrier.positions().clone(), |dm| {
                fiber.pos.apply(dm).clone()
            })
            .expect("total");
            Label::pair(i.clone(), table.table_label())
        },
        |_, dir| {
            let (dm, g) = dir.expect_pair();
            fiber.step(dm, g).clone()
        },
    )?;
    Bicomodule::new(c, d, m, left, right, budget)
}

fn sample_walking_arrow_copresheaf(rng: &mut ChaCha8Rng, max: usize) -> Copresheaf {
    let base = FinCat::walking_arrow();
    let na = rng.gen_range(0..=max);
    let nb = rng.gen_range(1..=max);
    let xa = FinSet::ints(na);
    let xb = FinSet::ints(nb);
    let f = FinFn::from_fn(xa.clone(), xb.clone(), |v| match v {
        Label::Int(n) => Label::int(n % nb as i64),
        _ => unreachable!(),
    })
    .unwrap();
    Copresheaf::new(
        base,
        [(Label::str("a"), xa.clone()), (Label::str("b"), xb.clone())].into(),
        [
            (Label::str("id_a"), FinFn::identity(&xa)),
            (Label::str("id_b"), FinFn::identity(&xb)),
            (Label::str("f"), f),
        ]
        .into(),
    )
    .unwrap()
}

/// A random bicomodule from a discrete comonoid to the walking arrow:
/// each fiber carries a sampled copresheaf structure.
fn sample_bicomodule(rng: &mut ChaCha8Rng, budget: Budget) -> Result<Bicomodule> {
    let d = fincat_comonoid(&FinCat::walking_arrow(), budget)?;
    let c_set = FinSet::ints(2);
    let c = crate::comonoid::discrete_comonoid(&c_set, budget)?;
    let n_pos = rng.gen_range(1..=2usize);
    let mut entries = Vec::new();
    let mut fibers = Vec::new();
    for i in 0..n_pos {
        let xp = sample_walking_arrow_copresheaf(rng, 2);
        let fiber = copresheaf_to_coalg(&xp, &d)?;
        entries.push((
            Label::int(i as i64),
            fiber.carrier.iter().cloned().collect::<Vec<_>>(),
        ));
        fibers.push(fiber);
    }
    let m = Poly::from_table(entries)?;
    let cs: Vec<Label> = c_set.iter().cloned().collect();
    let tgt_assign: BTreeMap<Label, Label> = m
        .positions()
        .iter()
        .map(|i| (i.clone(), cs[rng.gen_range(0..cs.len())].clone()))
        .collect();
    let cm = compose(&c.carrier, &m, budget)?;
    let left = PolyMor::from_fns(
        &m,
        &cm,
        |i| {
            let x = tgt_assign[i].clone();
            let table = FinFn::constant(c.carrier.dirs(&x), m.positions(), i).expect("constant");
            Label::pair(x, table.table_label())
        },
        |_, dir| dir.expect_pair().1.clone(),
    )?;
    let md = compose(&m, &d.carrier, budget)?;
    let right = PolyMor::from_fns(
        &m,
        &md,
        |i| {
            let idx = match i {
                Label::Int(n) => *n as usize,
                _ => unreachable!(),
            };
            let table = FinFn::from_fn(m.dirs(i).clone(), d.carrier.positions().clone(), |dm| {
                fibers[idx].pos.apply(dm).clone()
            })
            .expect("total");
            Label::pair(i.clone(), table.table_label())
        },
        |i, dir| {
            let idx = match i {
                Label::Int(n) => *n as usize,
                _ => unreachable!(),
            };
            let (dm, g) = dir.expect_pair();
            fibers[idx].step(dm, g).clone()
        },
    )?;
    Bicomodule::new(c, d, m, left, right, budget)
}

fn run_migrate(cfg: &HarnessConfig) -> Vec<LawRecord> {
    let mut ctx = SuiteCtx::new("migrate", cfg.seed);
    let mut rng = suite_rng(cfg.seed, "migrate");
    let budget = cfg.budget;
    ctx.set_digest("walking-arrow migration corpus");

    // Yoneda: migrating along the corepresentable fiber extracts X(a).
    for i in 0..cfg.cases.yoneda_instances {
        let xp = sample_walking_arrow_copresheaf(&mut rng, 3);
        ctx.run(format!("yoneda/{i:02}"), || {
            let bi = yoneda_bicomodule(budget)?;
            let x = copresheaf_to_coalg(&xp, &bi.d)?;
            let migrated = migrate(&bi, &x, budget)?;
            let expected = xp.at[&Label::str("a")].len();
            if migrated.carrier.len() != expected {
                return Ok((
                    false,
                    format!("|migrate(m, X)| = {} ≠ |X(a)| = {expected}", migrated.carrier.len()),
                ));
            }
            Ok((coalg_check(&migrated).passed(), "migrated coalgebra fails laws".into()))
        });
    }

    // Set formula: fibers' coalgebra hom-sets enumerate the positions of
    // the migrated coalgebra, elementwise.
    for i in 0..8 {
        ctx.run(format!("set-formula/{i:02}"), || {
            let bi = sample_bicomodule(&mut rng, budget)?;
            let check = bicomodule_check(&bi, budget)?;
            if let Some(first) = check.first_failure() {
                return Ok((false, format!("sampled bicomodule invalid: {first}")));
            }
            let xp = sample_walking_arrow_copresheaf(&mut rng, 2);
            let x = copresheaf_to_coalg(&xp, &bi.d)?;
            let migrated = migrate(&bi, &x, budget)?;
            for cx in bi.c.carrier.positions().iter() {
                let got = migrated.pos.preimage(cx).len();
                let mut want = 0usize;
                for i_pos in bi.m.positions().iter() {
                    let (tgt, _) = crate::poly_ops::compose_pos_parts(
                        &bi.c.carrier,
                        &bi.m,
                        bi.left.on_pos().apply(i_pos),
                    );
                    if &tgt != cx {
                        continue;
                    }
                    let fiber = bi.fiber_coalgebra(i_pos)?;
                    want += coalg_homs(&fiber, &x, budget)?.len();
                }
                if got != want {
                    return Ok((
                        false,
                        format!("at {cx}: equalizer gives {got}, hom formula gives {want}"),
                    ));
                }
            }
            Ok((true, String::new()))
        });
    }

    // Identity bicomodule migrates every coalgebra to itself (up to the
    // canonical relabeling).
    ctx.run("identity".into(), || {
        let d = fincat_comonoid(&FinCat::walking_arrow(), budget)?;
        let idb = Bicomodule::identity(&d, budget)?;
        let xp = sample_walking_arrow_copresheaf(&mut rng, 2);
        let x = copresheaf_to_coalg(&xp, &d)?;
        let migrated = migrate(&idb, &x, budget)?;
        if migrated.carrier.len() != x.carrier.len() {
            return Ok((false, "identity migration changes cardinality".into()));
        }
        Ok((coalg_check(&migrated).passed(), "identity migration fails laws".into()))
    });

    // Migration preserves equalizers of coalgebras.
    ctx.run("equalizer-preservation".into(), || {
        let bi = yoneda_bicomodule(budget)?;
        let d = &bi.d;
        let x = copresheaf_to_coalg(&sample_walking_arrow_copresheaf(&mut rng, 2), d)?;
        let z = copresheaf_to_coalg(&sample_walking_arrow_copresheaf(&mut rng, 2), d)?;
        let homs = coalg_homs(&x, &z, budget)?;
        if homs.len() < 2 {
            // Degenerate sample; the preservation claim is vacuous here.
            return Ok((true, String::new()));
        }
        let f1 = homs[0].clone();
        let f2 = homs[1].clone();
        let eq = crate::finset::equalizer(&f1, &f2)?;
        let pos = FinFn::from_fn(eq.obj.clone(), d.carrier.positions().clone(), |s| {
            x.pos.apply(s).clone()
        })?;
        let eq_coalg = Coalgebra::from_fn(d, &eq.obj, pos, |s, g| x.step(s, g).clone())?;
        if !coalg_check(&eq_coalg).passed() {
            return Ok((false, "equalizer coalgebra fails laws".into()));
        }
        let m_eq = migrate(&bi, &eq_coalg, budget)?;
        let mf1 = crate::bicomodule::migrate_hom(&bi, &x, &z, &f1, budget)?;
        let mf2 = crate::bicomodule::migrate_hom(&bi, &x, &z, &f2, budget)?;
        let target = crate::finset::equalizer(&mf1, &mf2)?;
        Ok((
            m_eq.carrier.len() == target.obj.len(),
            format!(
                "equalizer sizes differ: {} vs {}",
                m_eq.carrier.len(),
                target.obj.len()
            ),
        ))
    });

    // Migration preserves pullbacks of coalgebras.
    ctx.run("pullback-preservation".into(), || {
        let bi = yoneda_bicomodule(budget)?;
        let d = &bi.d;
        let base = FinCat::walking_arrow();
        let mk = |na: usize, nb: usize| -> Result<Coalgebra> {
            let xa = FinSet::ints(na);
            let xb = FinSet::ints(nb);
            let xp = Copresheaf::new(
                base.clone(),
                [(Label::str("a"), xa.clone()), (Label::str("b"), xb.clone())].into(),
                [
                    (Label::str("id_a"), FinFn::identity(&xa)),
                    (Label::str("id_b"), FinFn::identity(&xb)),
                    (
                        Label::str("f"),
                        FinFn::from_fn(xa.clone(), xb.clone(), |_| Label::int(0)).expect("total"),
                    ),
                ]
                .into(),
            )?;
            copresheaf_to_coalg(&xp, d)
        };
        let x = mk(2, 1)?;
        let z = mk(1, 1)?;
        let f1 = coalg_homs(&x, &z, budget)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::invalid("harness", "no homomorphism found"))?;
        let y = mk(2, 1)?;
        let f2 = coalg_homs(&y, &z, budget)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::invalid("harness", "no homomorphism found"))?;
        // Pullback coalgebra on the carrier pullback.
        let pb = crate::finset::pullback(&f1, &f2)?;
        let pos = FinFn::from_fn(pb.obj.clone(), d.carrier.positions().clone(), |sv| {
            x.pos.apply(sv.expect_pair().0).clone()
        })?;
        let pullback_coalg = Coalgebra::from_fn(d, &pb.obj, pos, |sv, g| {
            let (s1, s2) = sv.expect_pair();
            Label::pair(x.step(s1, g).clone(), y.step(s2, g).clone())
        })?;
        if !coalg_check(&pullback_coalg).passed() {
            return Ok((false, "pullback coalgebra fails laws".into()));
        }
        // Migrate everything and compare cardinalities + cone property.
        let mx = migrate(&bi, &x, budget)?;
        let my = migrate(&bi, &y, budget)?;
        let mz = migrate(&bi, &z, budget)?;
        let mpb = migrate(&bi, &pullback_coalg, budget)?;
        let mf1 = crate::bicomodule::migrate_hom(&bi, &x, &z, &f1, budget)?;
        let mf2 = crate::bicomodule::migrate_hom(&bi, &y, &z, &f2, budget)?;
        let target_pb = crate::finset::pullback(&mf1, &mf2)?;
        if mpb.carrier.len() != target_pb.obj.len() {
            return Ok((
                false,
                format!(
                    "pullback sizes differ: {} vs {}",
                    mpb.carrier.len(),
                    target_pb.obj.len()
                ),
            ));
        }
        let _ = (mx, my, mz);
        Ok((true, String::new()))
    });
    ctx.records
}

// ------------------------------------------------------------- presheaf

fn run_presheaf(cfg: &HarnessConfig) -> Vec<LawRecord> {
    let mut ctx = SuiteCtx::new("presheaf", cfg.seed);
    let budget = cfg.budget;
    ctx.set_digest("walking-arrow and parallel-pair bases");

    for (bi, base) in [FinCat::walking_arrow(), FinCat::parallel_pair()]
        .into_iter()
        .enumerate()
    {
        // Adjunction for the dependent product over small data.
        ctx.run(format!("pi-adjunction/{bi}"), || {
            let y_psh = Presheaf::constant(&base, &FinSet::ints(2));
            let x_psh = Presheaf::terminal(&base);
            let f = PshMor::to_terminal(&y_psh);
            let z_psh = Presheaf::constant(&base, &FinSet::ints(2));
            let g = PshMor::from_fn(&z_psh, &y_psh, |_, v| v.clone())?;
            let pi = presheaf_pi(&f, &g, budget)?;
            let probes = vec![
                Presheaf::terminal(&base),
                Presheaf::representable(&base, base.objects.elems().first().unwrap())?,
                Presheaf::representable(&base, base.objects.elems().last().unwrap())?,
            ];
            for w in probes {
                let lhs = psh_homs(&w, &pi.obj, budget)?;
                let mut rhs = 0usize;
                for sigma in psh_homs(&w, &x_psh, budget)? {
                    let pb = psh_pullback(&sigma, &f)?;
                    for h in psh_homs(&pb.obj, &z_psh, budget)? {
                        if h.then(&g)? == pb.proj2 {
                            rhs += 1;
                        }
                    }
                }
                if lhs.len() != rhs {
                    return Ok((false, format!("adjunction counts differ: {} vs {rhs}", lhs.len())));
                }
                for u in &lhs {
                    let (sigma, _, h) = presheaf_pi_transpose(&f, &g, &pi, u)?;
                    if &presheaf_pi_untranspose(&f, &pi, &sigma, &h)? != u {
                        return Ok((false, "transpose round trip fails".into()));
                    }
                }
            }
            Ok((true, String::new()))
        });

        // Composition unit and associativity up to constructed isomorphism.
        ctx.run(format!("compose-units/{bi}"), || {
            let p = psh_sample_poly(&base)?;
            let y = PshPoly::y(&base);
            let yp = y.compose(&p, budget)?;
            if psh_poly_iso(&yp, &p, budget)?.is_none() {
                return Ok((false, "left unit fails".into()));
            }
            let py = p.compose(&y, budget)?;
            Ok((psh_poly_iso(&py, &p, budget)?.is_some(), "right unit fails".into()))
        });
        ctx.run(format!("compose-assoc/{bi}"), || {
            let p = psh_sample_poly(&base)?;
            let y = PshPoly::y(&base);
            let q = y.tensor(&y)?;
            let left = p.compose(&q, budget)?.compose(&y, budget)?;
            let right = p.compose(&q.compose(&y, budget)?, budget)?;
            Ok((
                psh_poly_iso(&left, &right, budget)?.is_some(),
                "associativity fails".into(),
            ))
        });
    }

    // Π over the terminal base agrees with the finite-set construction.
    ctx.run("pi-vs-finset".into(), || {
        let base = FinCat::terminal();
        let o = Label::str("o");
        let mk = |n: usize| Presheaf::constant(&base, &FinSet::ints(n));
        let y_psh = mk(2);
        let x_psh = mk(1);
        let z_psh = mk(4);
        let f = PshMor::from_fn(&y_psh, &x_psh, |_, _| Label::int(0))?;
        let g = PshMor::from_fn(&z_psh, &y_psh, |_, v| match v {
            Label::Int(n) => Label::int(n % 2),
            _ => unreachable!(),
        })?;
        let pi = presheaf_pi(&f, &g, budget)?;
        let ff = FinFn::from_fn(FinSet::ints(2), FinSet::ints(1), |_| Label::int(0))?;
        let gf = FinFn::from_fn(FinSet::ints(4), FinSet::ints(2), |v| match v {
            Label::Int(n) => Label::int(n % 2),
            _ => unreachable!(),
        })?;
        let pi_set = crate::finset::pi_finset(&ff, &gf, budget)?;
        let normalized: Vec<Label> = pi
            .obj
            .at(&o)
            .iter()
            .map(|el| {
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
            })
            .collect();
        let expected: Vec<Label> = pi_set.obj.iter().cloned().collect();
        Ok((normalized == expected, "element-for-element agreement fails".into()))
    });

    // Internal category round trip over the walking arrow.
    ctx.run("internal-cat-roundtrip".into(), || {
        let base = FinCat::walking_arrow();
        let inner = InternalCategory::from_fincat(&FinCat::walking_arrow());
        let cat = crate::pshpoly::PshInternalCategory::constant(&base, &inner)?;
        if !cat.validate()?.passed() {
            return Ok((false, "constant internal category fails laws".into()));
        }
        let com = crate::pshpoly::psh_cat_to_comonoid(&cat)?;
        let back = crate::pshpoly::psh_comonoid_to_cat(&com)?;
        if back != cat {
            return Ok((false, "category round trip is not the identity".into()));
        }
        let again = crate::pshpoly::psh_cat_to_comonoid(&back)?;
        Ok((again == com, "comonoid round trip is not the identity".into()))
    });
    ctx.records
}

/// A fixed small nontrivial polynomial over the given two-object base.
fn psh_sample_poly(base: &FinCat) -> Result<PshPoly> {
    let objs: Vec<Label> = base.objects.iter().cloned().collect();
    let pos = Presheaf::constant(base, &FinSet::ints(1));
    // Total: two elements at the first object, one at the second, with all
    // non-identity actions collapsing to element 0.
    let sizes: BTreeMap<Label, FinSet> = objs
        .iter()
        .enumerate()
        .map(|(i, o)| (o.clone(), FinSet::ints(if i == 0 { 2 } else { 1 })))
        .collect();
    let mut action = BTreeMap::new();
    for mname in base.morphisms.iter() {
        let x = base.src.apply(mname);
        let y = base.tgt.apply(mname);
        let dom = sizes[y].clone();
        let cod = sizes[x].clone();
        let is_id = base.ident.apply(x) == mname;
        action.insert(
            mname.clone(),
            if is_id {
                FinFn::identity(&dom)
            } else {
                FinFn::from_fn(dom, cod, |_| Label::int(0))?
            },
        );
    }
    let total = Presheaf::new(base.clone(), sizes, action)?;
    let proj = PshMor::from_fn(&total, &pos, |_, _| Label::int(0))?;
    PshPoly::new(proj)
}
