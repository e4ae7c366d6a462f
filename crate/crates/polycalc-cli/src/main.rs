//! Batch front end: file I/O for every domain type, one subcommand per
//! library operation, and the seeded law-verification harness.
//!
//! Exit codes: 0 success, 1 domain error (message names the violated
//! precondition), 2 usage error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use polycalc_core::bicomodule as bc;
use polycalc_core::budget::Budget;
use polycalc_core::coalgebra as ca;
use polycalc_core::comonoid as cm;
use polycalc_core::error::Error;
use polycalc_core::harness::{laws_run, CaseCounts, HarnessConfig, ALL_SUITES};
use polycalc_core::io;
use polycalc_core::poly;
use polycalc_core::poly_limits::{cartesian_limit, Diagram};
use polycalc_core::poly_ops as ops;
use polycalc_core::presheaf;
use polycalc_core::pshpoly::PshPoly;
use polycalc_core::structures as st;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};

/// Operation name → owning subcommand. The dispatch self-test asserts
/// every library operation is reachable from exactly one subcommand.
pub const DISPATCH: &[(&str, &str)] = &[
    ("pullback", "pullback"),
    ("pi_finset", "pi"),
    ("distributivity_pullback", "distpb"),
    ("presheaf_pi", "psh-pi"),
    ("fincat_validate", "validate"),
    ("presheaf_validate", "validate"),
    ("y", "y"),
    ("mor_then", "mor-compose"),
    ("classify", "classify"),
    ("vert_cart_factorize", "factorize"),
    ("compose", "compose"),
    ("tensor", "tensor"),
    ("evaluate", "eval"),
    ("evaluate_fn", "eval"),
    ("evaluate_nat", "eval"),
    ("strength", "strength"),
    ("scalar", "scalar"),
    ("star", "pstar"),
    ("cartesian_limit", "limit"),
    ("iso_check", "iso"),
    ("hom_enumerate", "homs"),
    ("interchange", "interchange"),
    ("closure", "closure"),
    ("closure_eval", "closure-eval"),
    ("closure_pair", "closure-pair"),
    ("closure_curry", "closure-transpose"),
    ("right_coclosure", "coclosure"),
    ("rc_transpose", "coclosure-transpose"),
    ("indexed_coclosure", "frown"),
    ("ic_transpose", "frown-transpose"),
    ("closure_compose_lax", "closure-tri-lax"),
    ("coclosure_tensor_map", "coclosure-tensor"),
    ("frown_tensor_iso", "frown-tensor"),
    ("comonoid_check", "comonoid-check"),
    ("cat_to_comonoid", "cat2com"),
    ("comonoid_to_cat", "com2cat"),
    ("cofunctor_check", "cofunctor-check"),
    ("discrete_comonoid", "mkcom"),
    ("star_comonoid", "mkcom"),
    ("selfclosure_comonoid", "mkcom"),
    ("coalg_check", "coalg-check"),
    ("coalg_to_opfib", "opfib"),
    ("opfib_to_coalg", "opfib"),
    ("comodule_check", "comodule-check"),
    ("bicomodule_check", "bicomod-check"),
    ("bicomod_from_typed", "typed2bicomod"),
    ("typed_from_bicomod", "typed2bicomod"),
    ("typed_compose", "typed-compose"),
    ("bicomod_compose", "bicomod-compose"),
    ("migrate", "migrate"),
    ("migrate_hom", "migrate"),
    ("laws_run", "laws"),
    ("io_roundtrip", "roundtrip"),
];

#[derive(Parser)]
#[command(name = "polycalc", version, about = "Workbench for the calculus of polynomials over finite bases")]
struct Cli {
    /// Candidate-count cap for enumerating operations
    /// (default: POLYCALC_BUDGET or 1000000).
    #[arg(long, global = true)]
    budget: Option<u64>,

    /// Write the primary output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Finset,
    Finfn,
    Fincat,
    Presheaf,
    Pshmor,
    Poly,
    Polymor,
    Comonoid,
    InternalCat,
    Typedpoly,
    Bicomodule,
    Coalgebra,
}

#[derive(Clone, Copy, ValueEnum)]
enum ComKind {
    Discrete,
    Star,
    Selfclosure,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Left,
    Right,
}

#[derive(Args)]
struct TwoFiles {
    first: PathBuf,
    second: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Pullback of two functions with a shared codomain.
    Pullback(TwoFiles),
    /// Dependent product of g : Z → B along f : B → A.
    Pi {
        f: PathBuf,
        g: PathBuf,
    },
    /// Distributivity pullback around (f, g).
    Distpb {
        f: PathBuf,
        g: PathBuf,
    },
    /// Dependent product in presheaves along f applied to g.
    PshPi {
        f: PathBuf,
        g: PathBuf,
    },
    /// Validate a file against its kind's laws; prints the report.
    Validate {
        #[arg(long, value_enum)]
        kind: Kind,
        file: PathBuf,
    },
    /// The identity polynomial (over a presheaf base when given).
    Y {
        /// Finite category file for a presheaf base.
        #[arg(long)]
        base: Option<PathBuf>,
    },
    /// Compose two polynomial morphisms.
    MorCompose(TwoFiles),
    /// Classify a polynomial morphism (cartesian/vertical).
    Classify {
        file: PathBuf,
    },
    /// Vertical-then-cartesian factorization of a morphism.
    Factorize {
        file: PathBuf,
    },
    /// Composition product of two polynomials.
    Compose(TwoFiles),
    /// Tensor product of two polynomials.
    Tensor(TwoFiles),
    /// Apply the polynomial functor: to a set, a function, or naturally.
    Eval {
        first: PathBuf,
        second: PathBuf,
        /// Treat the second file as a function and act on it.
        #[arg(long, conflicts_with = "nat")]
        on_fn: bool,
        /// Treat the first file as a morphism; component at the set.
        #[arg(long)]
        nat: bool,
    },
    /// Strength map for a polynomial at a pair of sets.
    Strength {
        p: PathBuf,
        a: PathBuf,
        b: PathBuf,
    },
    /// Scalar multiple of a polynomial by a set.
    Scalar {
        a: PathBuf,
        q: PathBuf,
    },
    /// Total-space polynomial with its cartesian projection.
    Pstar {
        file: PathBuf,
    },
    /// Limit of a connected diagram of cartesian morphisms.
    Limit {
        /// Diagram file: {"nodes":[poly…],"edges":[[from,to,polymor]…]}.
        file: PathBuf,
    },
    /// Canonical isomorphism between two polynomials, when one exists.
    Iso(TwoFiles),
    /// Enumerate the morphisms between two polynomials.
    Homs {
        p: PathBuf,
        q: PathBuf,
        #[arg(long)]
        count_only: bool,
    },
    /// Duoidal interchange morphism for a quadruple.
    Interchange {
        p1: PathBuf,
        p2: PathBuf,
        q1: PathBuf,
        q2: PathBuf,
    },
    /// Tensor closure [p, q].
    Closure(TwoFiles),
    /// Evaluation map p ⊗ [p, q] → q.
    ClosureEval(TwoFiles),
    /// Pairing map q → [p, p ⊗ q].
    ClosurePair(TwoFiles),
    /// Currying across the tensor closure (|--inverse| uncurries).
    ClosureTranspose {
        mor: PathBuf,
        p: PathBuf,
        q: PathBuf,
        r: PathBuf,
        #[arg(long)]
        inverse: bool,
    },
    /// Right coclosure ⟨p | q⟩ of the composition product.
    Coclosure(TwoFiles),
    /// Transpose across the right coclosure (|--inverse| reverses).
    CoclosureTranspose {
        mor: PathBuf,
        p: PathBuf,
        q: PathBuf,
        r: PathBuf,
        #[arg(long)]
        inverse: bool,
    },
    /// Indexed coclosure p ⌢_f q.
    Frown {
        p: PathBuf,
        f: PathBuf,
        q: PathBuf,
    },
    /// Transpose across the indexed coclosure; forward splits a morphism
    /// into an index and a morphism, --inverse reassembles.
    FrownTranspose {
        mor: PathBuf,
        p: PathBuf,
        q: PathBuf,
        r: PathBuf,
        /// Index function file, required with --inverse.
        #[arg(long)]
        index: Option<PathBuf>,
        #[arg(long)]
        inverse: bool,
    },
    /// Lax compatibility map of the closure with composition.
    ClosureTriLax {
        p1: PathBuf,
        q1: PathBuf,
        p2: PathBuf,
        q2: PathBuf,
    },
    /// Comparison map of the right coclosure with the tensor.
    CoclosureTensor {
        p1: PathBuf,
        q1: PathBuf,
        p2: PathBuf,
        q2: PathBuf,
    },
    /// The tensor-frown isomorphism.
    FrownTensor {
        p1: PathBuf,
        f1: PathBuf,
        q1: PathBuf,
        p2: PathBuf,
        f2: PathBuf,
        q2: PathBuf,
    },
    /// Check the comonoid laws; prints the report.
    ComonoidCheck {
        file: PathBuf,
    },
    /// Internal category → comonoid.
    Cat2com {
        file: PathBuf,
    },
    /// Comonoid → internal category.
    Com2cat {
        file: PathBuf,
    },
    /// Check a morphism as a cofunctor between comonoids.
    CofunctorCheck {
        mor: PathBuf,
        c: PathBuf,
        d: PathBuf,
    },
    /// Build a canonical comonoid (discrete on a set; total-space or
    /// self-coclosure of a polynomial).
    Mkcom {
        #[arg(long, value_enum)]
        kind: ComKind,
        file: PathBuf,
    },
    /// Check the coalgebra laws; prints the report.
    CoalgCheck {
        file: PathBuf,
    },
    /// Coalgebra ↔ discrete opfibration (--inverse rebuilds the coalgebra).
    Opfib {
        #[arg(long)]
        inverse: bool,
        /// Coalgebra file, or with --inverse: category, projection, comonoid.
        files: Vec<PathBuf>,
    },
    /// Check one comodule side of a bicomodule.
    ComoduleCheck {
        file: PathBuf,
        #[arg(long, value_enum)]
        side: Side,
    },
    /// Check the full bicomodule laws.
    BicomodCheck {
        file: PathBuf,
    },
    /// Typed polynomial ↔ bicomodule between discrete comonoids.
    Typed2bicomod {
        file: PathBuf,
        #[arg(long)]
        inverse: bool,
    },
    /// Compose typed polynomials along a shared middle object set.
    TypedCompose(TwoFiles),
    /// Compose bicomodules along a shared middle comonoid.
    BicomodCompose(TwoFiles),
    /// Migrate a coalgebra along a bicomodule; with --hom, migrate a
    /// homomorphism between the two given coalgebras.
    Migrate {
        m: PathBuf,
        x: PathBuf,
        #[arg(long, requires = "hom")]
        x2: Option<PathBuf>,
        #[arg(long, requires = "x2")]
        hom: Option<PathBuf>,
    },
    /// Run the seeded law-verification harness.
    Laws {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_pos: usize,
        #[arg(long, default_value_t = 3)]
        max_dir: usize,
        /// Comma-separated subset of suites (default: all).
        #[arg(long)]
        suites: Option<String>,
        /// Divide sampled case counts by this factor.
        #[arg(long, default_value_t = 1)]
        scale_down: usize,
    },
    /// Parse a file and re-emit its canonical byte form.
    Roundtrip {
        #[arg(long, value_enum)]
        kind: Kind,
        file: PathBuf,
    },
}

fn main() {
    let cli = Cli::parse();
    let budget = match cli.budget {
        Some(n) => Budget(n),
        None => Budget::from_env(),
    };
    match run(cli.command, budget, cli.out.as_deref()) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}

fn emit(out: Option<&Path>, value: &Value) -> Result<(), Error> {
    let bytes = io::to_canonical_bytes(value);
    match out {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{bytes}");
            Ok(())
        }
    }
}

fn report_value(r: &polycalc_core::Report) -> Value {
    serde_json::to_value(r).expect("serializable")
}

fn load(path: &Path) -> Result<Value, Error> {
    io::parse_file(path)
}

fn dir_of(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

fn run(cmd: Command, budget: Budget, out: Option<&Path>) -> Result<i32, Error> {
    match cmd {
        Command::Pullback(f) => {
            let a = io::finfn_from_value(&load(&f.first)?, "f")?;
            let b = io::finfn_from_value(&load(&f.second)?, "g")?;
            let pb = polycalc_core::finset::pullback(&a, &b)?;
            emit(
                out,
                &json!({
                    "obj": io::finset_to_value(&pb.obj),
                    "proj1": io::finfn_to_value(&pb.proj1),
                    "proj2": io::finfn_to_value(&pb.proj2),
                }),
            )?;
        }
        Command::Pi { f, g } => {
            let ff = io::finfn_from_value(&load(&f)?, "f")?;
            let gf = io::finfn_from_value(&load(&g)?, "g")?;
            let pi = polycalc_core::finset::pi_finset(&ff, &gf, budget)?;
            emit(
                out,
                &json!({
                    "obj": io::finset_to_value(&pi.obj),
                    "mor": io::finfn_to_value(&pi.mor),
                }),
            )?;
        }
        Command::Distpb { f, g } => {
            let ff = io::finfn_from_value(&load(&f)?, "f")?;
            let gf = io::finfn_from_value(&load(&g)?, "g")?;
            let d = polycalc_core::finset::distributivity_pullback(&ff, &gf, budget)?;
            emit(
                out,
                &json!({
                    "pi": { "obj": io::finset_to_value(&d.pi.obj), "mor": io::finfn_to_value(&d.pi.mor) },
                    "apex": io::finset_to_value(&d.apex),
                    "toPi": io::finfn_to_value(&d.to_pi),
                    "toBase": io::finfn_to_value(&d.to_base),
                    "counit": io::finfn_to_value(&d.counit),
                }),
            )?;
        }
        Command::PshPi { f, g } => {
            let ff = io::pshmor_from_value(&load(&f)?, "f")?;
            let gf = io::pshmor_from_value(&load(&g)?, "g")?;
            let pi = presheaf::presheaf_pi(&ff, &gf, budget)?;
            emit(
                out,
                &json!({
                    "obj": io::presheaf_to_value(&pi.obj),
                    "mor": io::pshmor_to_value(&pi.mor),
                }),
            )?;
        }
        Command::Validate { kind, file } => {
            let v = load(&file)?;
            let path = file.display().to_string();
            let report = match kind {
                Kind::Finset => {
                    io::finset_from_value(&v, &path)?;
                    polycalc_core::Report::new()
                }
                Kind::Finfn => {
                    io::finfn_from_value(&v, &path)?;
                    polycalc_core::Report::new()
                }
                Kind::Fincat => {
                    polycalc_core::fincat::fincat_validate(&io::fincat_from_value(&v, &path)?)
                }
                Kind::Presheaf => {
                    presheaf::presheaf_validate(&io::presheaf_from_value(&v, &path)?)
                }
                Kind::Pshmor => io::pshmor_from_value(&v, &path)?.validate(),
                Kind::Poly => match io::any_poly_from_value(&v, &path)? {
                    io::AnyPoly::FinSet(_) => polycalc_core::Report::new(),
                    io::AnyPoly::Presheaf(p) => p.validate(),
                },
                Kind::Polymor => {
                    io::polymor_from_value(&v, &path)?;
                    polycalc_core::Report::new()
                }
                Kind::Comonoid => {
                    let c = io::comonoid_from_value(&v, &path, budget)?;
                    cm::comonoid_check(&c, budget)?
                }
                Kind::InternalCat => io::internal_cat_from_value(&v, &path)?.validate(),
                Kind::Typedpoly => {
                    io::typedpoly_from_value(&v, &path)?;
                    polycalc_core::Report::new()
                }
                Kind::Bicomodule => {
                    let b = io::bicomodule_from_value(&v, &path, &dir_of(&file), budget)?;
                    bc::bicomodule_check(&b, budget)?
                }
                Kind::Coalgebra => {
                    let x = io::coalgebra_from_value(&v, &path, &dir_of(&file), budget)?;
                    ca::coalg_check(&x)
                }
            };
            emit(out, &report_value(&report))?;
        }
        Command::Y { base } => match base {
            None => emit(out, &io::poly_to_value(&poly::Poly::y()))?,
            Some(b) => {
                let cat = io::fincat_from_value(&load(&b)?, "base")?;
                emit(out, &io::psh_poly_to_value(&PshPoly::y(&cat)))?;
            }
        },
        Command::MorCompose(f) => {
            let a = io::polymor_from_value(&load(&f.first)?, "first")?;
            let b = io::polymor_from_value(&load(&f.second)?, "second")?;
            emit(out, &io::polymor_to_value(&a.then(&b)?))?;
        }
        Command::Classify { file } => {
            let m = io::polymor_from_value(&load(&file)?, "mor")?;
            let c = m.classify();
            emit(out, &json!({ "cartesian": c.cartesian, "vertical": c.vertical }))?;
        }
        Command::Factorize { file } => {
            let m = io::polymor_from_value(&load(&file)?, "mor")?;
            let (v, c) = poly::vert_cart_factorize(&m);
            emit(
                out,
                &json!({
                    "vertical": io::polymor_to_value(&v),
                    "cartesian": io::polymor_to_value(&c),
                }),
            )?;
        }
        Command::Compose(f) => {
            let a = load(&f.first)?;
            match io::any_poly_from_value(&a, "p")? {
                io::AnyPoly::FinSet(p) => {
                    let q = io::poly_from_value(&load(&f.second)?, "q")?;
                    emit(out, &io::poly_to_value(&ops::compose(&p, &q, budget)?))?;
                }
                io::AnyPoly::Presheaf(p) => {
                    let qv = load(&f.second)?;
                    match io::any_poly_from_value(&qv, "q")? {
                        io::AnyPoly::Presheaf(q) => {
                            emit(out, &io::psh_poly_to_value(&p.compose(&q, budget)?))?
                        }
                        _ => return Err(Error::BaseMismatch("mixed polynomial bases".into())),
                    }
                }
            }
        }
        Command::Tensor(f) => {
            let a = load(&f.first)?;
            match io::any_poly_from_value(&a, "p")? {
                io::AnyPoly::FinSet(p) => {
                    let q = io::poly_from_value(&load(&f.second)?, "q")?;
                    emit(out, &io::poly_to_value(&ops::tensor(&p, &q)))?;
                }
                io::AnyPoly::Presheaf(p) => {
                    let qv = load(&f.second)?;
                    match io::any_poly_from_value(&qv, "q")? {
                        io::AnyPoly::Presheaf(q) => {
                            emit(out, &io::psh_poly_to_value(&p.tensor(&q)?))?
                        }
                        _ => return Err(Error::BaseMismatch("mixed polynomial bases".into())),
                    }
                }
            }
        }
        Command::Eval {
            first,
            second,
            on_fn,
            nat,
        } => {
            if nat {
                let phi = io::polymor_from_value(&load(&first)?, "mor")?;
                let x = io::finset_from_value(&load(&second)?, "set")?;
                emit(out, &io::finfn_to_value(&ops::evaluate_nat(&phi, &x, budget)?))?;
            } else if on_fn {
                let p = io::poly_from_value(&load(&first)?, "poly")?;
                let h = io::finfn_from_value(&load(&second)?, "fn")?;
                emit(out, &io::finfn_to_value(&ops::evaluate_fn(&p, &h, budget)?))?;
            } else {
                let p = io::poly_from_value(&load(&first)?, "poly")?;
                let x = io::finset_from_value(&load(&second)?, "set")?;
                emit(out, &io::finset_to_value(&ops::evaluate(&p, &x, budget)?))?;
            }
        }
        Command::Strength { p, a, b } => {
            let pp = io::poly_from_value(&load(&p)?, "poly")?;
            let aa = io::finset_from_value(&load(&a)?, "A")?;
            let bb = io::finset_from_value(&load(&b)?, "B")?;
            emit(out, &io::finfn_to_value(&ops::strength(&pp, &aa, &bb, budget)?))?;
        }
        Command::Scalar { a, q } => {
            let aa = io::finset_from_value(&load(&a)?, "A")?;
            let qq = io::poly_from_value(&load(&q)?, "poly")?;
            emit(out, &io::poly_to_value(&ops::scalar(&aa, &qq)))?;
        }
        Command::Pstar { file } => {
            let p = io::poly_from_value(&load(&file)?, "poly")?;
            let (star, proj) = ops::star(&p);
            emit(
                out,
                &json!({
                    "poly": io::poly_to_value(&star),
                    "projection": io::polymor_to_value(&proj),
                }),
            )?;
        }
        Command::Limit { file } => {
            let v = load(&file)?;
            let nodes_v = v
                .get("nodes")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::schema("diagram.nodes", "missing array"))?;
            let nodes = nodes_v
                .iter()
                .enumerate()
                .map(|(i, nv)| io::poly_from_value(nv, &format!("nodes[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let edges_v = v
                .get("edges")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::schema("diagram.edges", "missing array"))?;
            let mut edges = Vec::new();
            for (i, ev) in edges_v.iter().enumerate() {
                let arr = ev
                    .as_array()
                    .filter(|a| a.len() == 3)
                    .ok_or_else(|| Error::schema(format!("diagram.edges[{i}]"), "expected [from,to,mor]"))?;
                let from = arr[0]
                    .as_u64()
                    .ok_or_else(|| Error::schema(format!("diagram.edges[{i}][0]"), "expected index"))?;
                let to = arr[1]
                    .as_u64()
                    .ok_or_else(|| Error::schema(format!("diagram.edges[{i}][1]"), "expected index"))?;
                let m = io::polymor_from_value(&arr[2], &format!("diagram.edges[{i}][2]"))?;
                edges.push((from as usize, to as usize, m));
            }
            let lim = cartesian_limit(&Diagram { nodes, edges }, budget)?;
            emit(
                out,
                &json!({
                    "obj": io::poly_to_value(&lim.obj),
                    "legs": lim.legs.iter().map(io::polymor_to_value).collect::<Vec<_>>(),
                }),
            )?;
        }
        Command::Iso(f) => {
            let p = io::poly_from_value(&load(&f.first)?, "p")?;
            let q = io::poly_from_value(&load(&f.second)?, "q")?;
            match poly::iso_check(&p, &q) {
                Some(m) => emit(out, &io::polymor_to_value(&m))?,
                None => emit(out, &Value::Null)?,
            }
        }
        Command::Homs { p, q, count_only } => {
            let pp = io::poly_from_value(&load(&p)?, "p")?;
            let qq = io::poly_from_value(&load(&q)?, "q")?;
            if count_only {
                emit(out, &json!(poly::hom_count(&pp, &qq).to_string()))?;
            } else {
                let homs = poly::hom_enumerate(&pp, &qq, budget)?;
                emit(
                    out,
                    &Value::Array(homs.iter().map(io::polymor_to_value).collect()),
                )?;
            }
        }
        Command::Interchange { p1, p2, q1, q2 } => {
            let a = io::poly_from_value(&load(&p1)?, "p1")?;
            let b = io::poly_from_value(&load(&p2)?, "p2")?;
            let c = io::poly_from_value(&load(&q1)?, "q1")?;
            let d = io::poly_from_value(&load(&q2)?, "q2")?;
            emit(out, &io::polymor_to_value(&st::interchange(&a, &b, &c, &d, budget)?))?;
        }
        Command::Closure(f) => {
            let p = io::poly_from_value(&load(&f.first)?, "p")?;
            let q = io::poly_from_value(&load(&f.second)?, "q")?;
            emit(out, &io::poly_to_value(&st::closure(&p, &q, budget)?))?;
        }
        Command::ClosureEval(f) => {
            let p = io::poly_from_value(&load(&f.first)?, "p")?;
            let q = io::poly_from_value(&load(&f.second)?, "q")?;
            emit(out, &io::polymor_to_value(&st::closure_eval(&p, &q, budget)?))?;
        }
        Command::ClosurePair(f) => {
            let p = io::poly_from_value(&load(&f.first)?, "p")?;
            let q = io::poly_from_value(&load(&f.second)?, "q")?;
            emit(out, &io::polymor_to_value(&st::closure_pair(&p, &q, budget)?))?;
        }
        Command::ClosureTranspose {
            mor,
            p,
            q,
            r,
            inverse,
        } => {
            let m = io::polymor_from_value(&load(&mor)?, "mor")?;
            let pp = io::poly_from_value(&load(&p)?, "p")?;
            let qq = io::poly_from_value(&load(&q)?, "q")?;
            let rr = io::poly_from_value(&load(&r)?, "r")?;
            let result = if inverse {
                st::closure_uncurry(&m, &pp, &qq, &rr, budget)?
            } else {
                st::closure_curry(&m, &pp, &qq, &rr, budget)?
            };
            emit(out, &io::polymor_to_value(&result))?;
        }
        Command::Coclosure(f) => {
            let p = io::poly_from_value(&load(&f.first)?, "p")?;
            let q = io::poly_from_value(&load(&f.second)?, "q")?;
            emit(out, &io::poly_to_value(&st::right_coclosure(&p, &q, budget)?))?;
        }
        Command::CoclosureTranspose {
            mor,
            p,
            q,
            r,
            inverse,
        } => {
            let m = io::polymor_from_value(&load(&mor)?, "mor")?;
            let pp = io::poly_from_value(&load(&p)?, "p")?;
            let qq = io::poly_from_value(&load(&q)?, "q")?;
            let rr = io::poly_from_value(&load(&r)?, "r")?;
            let result = if inverse {
                st::rc_untranspose(&m, &pp, &qq, &rr, budget)?
            } else {
                st::rc_transpose(&m, &pp, &qq, &rr, budget)?
            };
            emit(out, &io::polymor_to_value(&result))?;
        }
        Command::Frown { p, f, q } => {
            let pp = io::poly_from_value(&load(&p)?, "p")?;
            let ff = io::finfn_from_value(&load(&f)?, "f")?;
            let qq = io::poly_from_value(&load(&q)?, "q")?;
            emit(out, &io::poly_to_value(&st::indexed_coclosure(&pp, &ff, &qq)?))?;
        }
        Command::FrownTranspose {
            mor,
            p,
            q,
            r,
            index,
            inverse,
        } => {
            let m = io::polymor_from_value(&load(&mor)?, "mor")?;
            let pp = io::poly_from_value(&load(&p)?, "p")?;
            let qq = io::poly_from_value(&load(&q)?, "q")?;
            let rr = io::poly_from_value(&load(&r)?, "r")?;
            if inverse {
                let idx_path = index.ok_or_else(|| {
                    Error::Typing("--inverse requires --index with the position map".into())
                })?;
                let f = io::finfn_from_value(&load(&idx_path)?, "index")?;
                let psi = st::ic_untranspose(&f, &m, &pp, &qq, &rr, budget)?;
                emit(out, &io::polymor_to_value(&psi))?;
            } else {
                let (f, phi) = st::ic_transpose(&m, &pp, &qq, &rr, budget)?;
                emit(
                    out,
                    &json!({
                        "index": io::finfn_to_value(&f),
                        "mor": io::polymor_to_value(&phi),
                    }),
                )?;
            }
        }
        Command::ClosureTriLax { p1, q1, p2, q2 } => {
            let a = io::poly_from_value(&load(&p1)?, "p1")?;
            let b = io::poly_from_value(&load(&q1)?, "q1")?;
            let c = io::poly_from_value(&load(&p2)?, "p2")?;
            let d = io::poly_from_value(&load(&q2)?, "q2")?;
            emit(
                out,
                &io::polymor_to_value(&st::closure_compose_lax(&a, &b, &c, &d, budget)?),
            )?;
        }
        Command::CoclosureTensor { p1, q1, p2, q2 } => {
            let a = io::poly_from_value(&load(&p1)?, "p1")?;
            let b = io::poly_from_value(&load(&q1)?, "q1")?;
            let c = io::poly_from_value(&load(&p2)?, "p2")?;
            let d = io::poly_from_value(&load(&q2)?, "q2")?;
            emit(
                out,
                &io::polymor_to_value(&st::coclosure_tensor_map(&a, &b, &c, &d, budget)?),
            )?;
        }
        Command::FrownTensor {
            p1,
            f1,
            q1,
            p2,
            f2,
            q2,
        } => {
            let a = io::poly_from_value(&load(&p1)?, "p1")?;
            let af = io::finfn_from_value(&load(&f1)?, "f1")?;
            let b = io::poly_from_value(&load(&q1)?, "q1")?;
            let c = io::poly_from_value(&load(&p2)?, "p2")?;
            let cf = io::finfn_from_value(&load(&f2)?, "f2")?;
            let d = io::poly_from_value(&load(&q2)?, "q2")?;
            emit(
                out,
                &io::polymor_to_value(&st::frown_tensor_iso(&a, &af, &b, &c, &cf, &d)?),
            )?;
        }
        Command::ComonoidCheck { file } => {
            let c = io::comonoid_from_value(&load(&file)?, "comonoid", budget)?;
            emit(out, &report_value(&cm::comonoid_check(&c, budget)?))?;
        }
        Command::Cat2com { file } => {
            let cat = io::internal_cat_from_value(&load(&file)?, "category")?;
            let c = cm::cat_to_comonoid(&cat, budget)?;
            emit(out, &io::comonoid_to_value(&c))?;
        }
        Command::Com2cat { file } => {
            let c = io::comonoid_from_value(&load(&file)?, "comonoid", budget)?;
            let cat = cm::comonoid_to_cat(&c)?;
            emit(out, &io::internal_cat_to_value(&cat))?;
        }
        Command::CofunctorCheck { mor, c, d } => {
            let m = io::polymor_from_value(&load(&mor)?, "mor")?;
            let cc = io::comonoid_from_value(&load(&c)?, "c", budget)?;
            let dd = io::comonoid_from_value(&load(&d)?, "d", budget)?;
            let r = cm::cofunctor_check(&m, &cc, &dd, budget)?;
            emit(
                out,
                &json!({
                    "homomorphism": report_value(&r.homomorphism),
                    "cofunctor": report_value(&r.cofunctor),
                    "agree": r.verdicts_agree(),
                }),
            )?;
        }
        Command::Mkcom { kind, file } => {
            let v = load(&file)?;
            let c = match kind {
                ComKind::Discrete => {
                    let a = io::finset_from_value(&v, "set")?;
                    cm::discrete_comonoid(&a, budget)?
                }
                ComKind::Star => {
                    let p = io::poly_from_value(&v, "poly")?;
                    cm::star_comonoid(&p, budget)?
                }
                ComKind::Selfclosure => {
                    let p = io::poly_from_value(&v, "poly")?;
                    cm::selfclosure_comonoid(&p, budget)?
                }
            };
            emit(out, &io::comonoid_to_value(&c))?;
        }
        Command::CoalgCheck { file } => {
            let x = io::coalgebra_from_value(&load(&file)?, "coalgebra", &dir_of(&file), budget)?;
            emit(out, &report_value(&ca::coalg_check(&x)))?;
        }
        Command::Opfib { inverse, files } => {
            if inverse {
                if files.len() != 3 {
                    return Err(Error::Typing(
                        "--inverse needs category, projection, and comonoid files".into(),
                    ));
                }
                let cat = io::internal_cat_from_value(&load(&files[0])?, "category")?;
                let proj = io::polymor_from_value(&load(&files[1])?, "projection")?;
                let c = io::comonoid_from_value(&load(&files[2])?, "comonoid", budget)?;
                let x = ca::opfib_to_coalg(&cat, &proj, &c, budget)?;
                emit(out, &io::coalgebra_to_value(&x))?;
            } else {
                if files.len() != 1 {
                    return Err(Error::Typing("expected one coalgebra file".into()));
                }
                let x =
                    io::coalgebra_from_value(&load(&files[0])?, "coalgebra", &dir_of(&files[0]), budget)?;
                let (cat, proj) = ca::coalg_to_opfib(&x, budget)?;
                emit(
                    out,
                    &json!({
                        "category": io::internal_cat_to_value(&cat),
                        "projection": io::polymor_to_value(&proj),
                    }),
                )?;
            }
        }
        Command::ComoduleCheck { file, side } => {
            let b = io::bicomodule_from_value(&load(&file)?, "bicomodule", &dir_of(&file), budget)?;
            let s = match side {
                Side::Left => bc::Side::Left,
                Side::Right => bc::Side::Right,
            };
            emit(out, &report_value(&bc::comodule_check(&b, s, budget)?))?;
        }
        Command::BicomodCheck { file } => {
            let b = io::bicomodule_from_value(&load(&file)?, "bicomodule", &dir_of(&file), budget)?;
            emit(out, &report_value(&bc::bicomodule_check(&b, budget)?))?;
        }
        Command::Typed2bicomod { file, inverse } => {
            if inverse {
                let b =
                    io::bicomodule_from_value(&load(&file)?, "bicomodule", &dir_of(&file), budget)?;
                emit(out, &io::typedpoly_to_value(&bc::typed_from_bicomod(&b)?))?;
            } else {
                let t = io::typedpoly_from_value(&load(&file)?, "typedpoly")?;
                emit(out, &io::bicomodule_to_value(&bc::bicomod_from_typed(&t, budget)?))?;
            }
        }
        Command::TypedCompose(f) => {
            let p = io::typedpoly_from_value(&load(&f.first)?, "p")?;
            let q = io::typedpoly_from_value(&load(&f.second)?, "q")?;
            emit(out, &io::typedpoly_to_value(&bc::typed_compose(&p, &q, budget)?))?;
        }
        Command::BicomodCompose(f) => {
            let b1 = io::bicomodule_from_value(&load(&f.first)?, "first", &dir_of(&f.first), budget)?;
            let b2 =
                io::bicomodule_from_value(&load(&f.second)?, "second", &dir_of(&f.second), budget)?;
            emit(out, &io::bicomodule_to_value(&bc::bicomod_compose(&b1, &b2, budget)?))?;
        }
        Command::Migrate { m, x, x2, hom } => {
            let b = io::bicomodule_from_value(&load(&m)?, "bicomodule", &dir_of(&m), budget)?;
            let xx = io::coalgebra_from_value(&load(&x)?, "coalgebra", &dir_of(&x), budget)?;
            match (x2, hom) {
                (Some(x2), Some(hom)) => {
                    let yy = io::coalgebra_from_value(&load(&x2)?, "coalgebra", &dir_of(&x2), budget)?;
                    let h = io::finfn_from_value(&load(&hom)?, "hom")?;
                    let mh = bc::migrate_hom(&b, &xx, &yy, &h, budget)?;
                    emit(out, &io::finfn_to_value(&mh))?;
                }
                _ => {
                    let migrated = bc::migrate(&b, &xx, budget)?;
                    emit(out, &io::coalgebra_to_value(&migrated))?;
                }
            }
        }
        Command::Laws {
            seed,
            max_pos,
            max_dir,
            suites,
            scale_down,
        } => {
            let suites = match suites {
                None => ALL_SUITES.iter().map(|s| s.to_string()).collect(),
                Some(list) => {
                    let chosen: Vec<String> =
                        list.split(',').map(|s| s.trim().to_string()).collect();
                    for s in &chosen {
                        if !ALL_SUITES.contains(&s.as_str()) {
                            return Err(Error::Typing(format!("unknown suite {s}")));
                        }
                    }
                    chosen
                }
            };
            let scale = scale_down.max(1);
            let base = CaseCounts::default();
            let cfg = HarnessConfig {
                seed,
                max_positions: max_pos,
                max_directions: max_dir,
                budget,
                suites,
                cases: CaseCounts {
                    functor_oracle: (base.functor_oracle / scale).max(1),
                    monoidal_triples: (base.monoidal_triples / scale).max(1),
                    pentagon: (base.pentagon / scale).max(1),
                    duoidal_quads: (base.duoidal_quads / scale).max(1),
                    comonoid_categories: (base.comonoid_categories / scale).max(4),
                    typed_pairs: (base.typed_pairs / scale).max(1),
                    yoneda_instances: (base.yoneda_instances / scale).max(1),
                },
            };
            let run = laws_run(&cfg);
            let report = run.to_report();
            match out {
                Some(path) => std::fs::write(path, &report)
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?,
                None => print!("{report}"),
            }
            return Ok(if run.passed() { 0 } else { 1 });
        }
        Command::Roundtrip { kind, file } => {
            let v = load(&file)?;
            let path = file.display().to_string();
            let canonical = match kind {
                Kind::Finset => io::finset_to_value(&io::finset_from_value(&v, &path)?),
                Kind::Finfn => io::finfn_to_value(&io::finfn_from_value(&v, &path)?),
                Kind::Fincat => io::fincat_to_value(&io::fincat_from_value(&v, &path)?),
                Kind::Presheaf => io::presheaf_to_value(&io::presheaf_from_value(&v, &path)?),
                Kind::Pshmor => io::pshmor_to_value(&io::pshmor_from_value(&v, &path)?),
                Kind::Poly => io::any_poly_to_value(&io::any_poly_from_value(&v, &path)?),
                Kind::Polymor => io::polymor_to_value(&io::polymor_from_value(&v, &path)?),
                Kind::Comonoid => {
                    io::comonoid_to_value(&io::comonoid_from_value(&v, &path, budget)?)
                }
                Kind::InternalCat => {
                    io::internal_cat_to_value(&io::internal_cat_from_value(&v, &path)?)
                }
                Kind::Typedpoly => {
                    io::typedpoly_to_value(&io::typedpoly_from_value(&v, &path)?)
                }
                Kind::Bicomodule => io::bicomodule_to_value(&io::bicomodule_from_value(
                    &v,
                    &path,
                    &dir_of(&file),
                    budget,
                )?),
                Kind::Coalgebra => io::coalgebra_to_value(&io::coalgebra_from_value(
                    &v,
                    &path,
                    &dir_of(&file),
                    budget,
                )?),
            };
            emit(out, &canonical)?;
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    /// Every operation of the library modules is reachable from exactly
    /// one subcommand, and every named subcommand exists.
    #[test]
    fn dispatch_table_covers_operations() {
        let expected_ops = [
            "pullback",
            "pi_finset",
            "distributivity_pullback",
            "presheaf_pi",
            "fincat_validate",
            "presheaf_validate",
            "y",
            "mor_then",
            "classify",
            "vert_cart_factorize",
            "compose",
            "tensor",
            "evaluate",
            "evaluate_fn",
            "evaluate_nat",
            "strength",
            "scalar",
            "star",
            "cartesian_limit",
            "iso_check",
            "hom_enumerate",
            "interchange",
            "closure",
            "closure_eval",
            "closure_pair",
            "closure_curry",
            "right_coclosure",
            "rc_transpose",
            "indexed_coclosure",
            "ic_transpose",
            "closure_compose_lax",
            "coclosure_tensor_map",
            "frown_tensor_iso",
            "comonoid_check",
            "cat_to_comonoid",
            "comonoid_to_cat",
            "cofunctor_check",
            "discrete_comonoid",
            "star_comonoid",
            "selfclosure_comonoid",
            "coalg_check",
            "coalg_to_opfib",
            "opfib_to_coalg",
            "comodule_check",
            "bicomodule_check",
            "bicomod_from_typed",
            "typed_from_bicomod",
            "typed_compose",
            "bicomod_compose",
            "migrate",
            "migrate_hom",
            "laws_run",
            "io_roundtrip",
        ];
        for op in expected_ops {
            let count = DISPATCH.iter().filter(|(o, _)| *o == op).count();
            assert_eq!(count, 1, "operation {op} must map to exactly one subcommand");
        }
        assert_eq!(DISPATCH.len(), expected_ops.len());
        let cmd = Cli::command();
        let names: Vec<String> = cmd
            .get_subcommands()
            .map(|c| c.get_name().to_string())
            .collect();
        for (_, sub) in DISPATCH {
            assert!(names.iter().any(|n| n == sub), "subcommand {sub} must exist");
        }
    }
}
