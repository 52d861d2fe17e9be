//! The `modrep` command line: argument parsing, dispatch and JSON output.
//!
//! Exit code 0 on success with one JSON document, 1 for input or validation
//! errors, 2 for size limits and failed computations.

mod io;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use io::{any_module_json, module_json, parse_module, read_module, write_module, AnyModule, FileField};

use crate::bgg::{bgg_transform, eta_check, zeta_check};
use crate::error::{Error, Result};
use crate::exactla::{Field, PrimeField};
use crate::homalg::{carlson_l, ext_dims, omega_power, tate_dim};
use crate::kmodule::{ElemAbGroupAlg, Form, KModule};
use crate::polyalgebra::{FreeSubmodule, Ideal, MultiPoly, PolyRing, PresentedModule, RingRef};
use crate::rankvariety::{rank_variety_ideal, RequiredRank};
use crate::suppcomm::{koszul_on_module, supp_complex, supp_contains_point, supp_module, SupportSet};

#[derive(Parser, Debug)]
#[command(name = "modrep", version, about = "Modular representations of elementary abelian p-groups")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Module file, or a built-in: trivial, regular, omega:k:N, L:c1,..,cr:N
    #[arg(long = "in", global = true, value_name = "FILE")]
    input: Option<String>,
    /// Write the result here instead of standard output
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Group as p^r, required by built-in modules
    #[arg(long, global = true, value_name = "p^r")]
    group: Option<String>,
    /// Form of module matrices in output
    #[arg(long, global = true, value_enum, default_value_t = FormArg::Z)]
    form: FormArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormArg {
    G,
    Z,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Check a module and report its shape
    Validate,
    /// Diagonal tensor product with --other
    Tensor {
        #[arg(long)]
        other: String,
    },
    /// Contragredient dual
    Dual,
    /// Hom(M, other) with the conjugation action
    Hom {
        #[arg(long)]
        other: String,
    },
    /// Restrict to a subgroup (1-based generator indices) or a shifted cyclic subgroup
    Restrict {
        #[arg(long, value_delimiter = ',', conflicts_with = "alpha")]
        subset: Option<Vec<usize>>,
        #[arg(long, required_unless_present = "subset")]
        alpha: Option<String>,
    },
    /// Induce from the subgroup on --subset to the group given by --group
    Induce {
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<usize>,
    },
    /// Omega^n of the module, negative n for cosyzygies
    Omega {
        #[arg(short = 'n', allow_hyphen_values = true)]
        n: i64,
    },
    /// dim Ext^i(M, other) for 0 <= i <= max
    ExtDims {
        #[arg(long)]
        max: usize,
        #[arg(long)]
        other: Option<String>,
    },
    /// dim of Tate cohomology Hom_stable(Omega^n M, other)
    TateDim {
        #[arg(short = 'n', allow_hyphen_values = true)]
        n: i64,
        #[arg(long)]
        other: Option<String>,
    },
    /// Whether the module is free over the group algebra
    IsProjective,
    /// Number of free summands in the module
    FreeRank,
    /// Rank variety as an ideal in a1..ar
    RankVariety,
    /// Carlson module L of the class c1 x1 + ... + cr xr raised to the n-th power
    Carlson {
        #[arg(long)]
        class: String,
        #[arg(short = 'n')]
        n: usize,
    },
    /// Koszul complex on --elems over --ring, optionally with coefficients in --module
    Koszul {
        /// Polynomial ring, e.g. GF(2)[y1,y2]
        #[arg(long)]
        ring: String,
        /// Comma-separated ring elements
        #[arg(long)]
        elems: String,
        /// Presentation: free:t, a JSON list of relation vectors, or ideal generators for A/I
        #[arg(long)]
        module: Option<String>,
    },
    /// Support of a presented module
    Supp {
        /// Polynomial ring, e.g. GF(2)[y1,y2]
        #[arg(long)]
        ring: String,
        /// Presentation: free:t, a JSON list of relation vectors, or ideal generators for A/I
        #[arg(long)]
        module: String,
        /// Comma-separated coordinates of a point to test for membership
        #[arg(long)]
        point: Option<String>,
    },
    /// Check that J resolves k and that End(J) recovers the polynomial ring
    BggCheck {
        /// Window size N
        #[arg(long)]
        max: usize,
    },
    /// Cohomology of Hom(J, injective resolution of the module)
    Bgg {
        /// Window size N; degrees below N are certified
        #[arg(long)]
        max: usize,
    },
}

/// Runs the tool on `argv` (including the program name), returning the exit
/// code and the text for standard output and standard error.
pub fn run<I, S>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (0, e.to_string(), String::new()),
                _ => (1, String::new(), e.to_string()),
            };
        }
    };
    match dispatch(&cli) {
        Ok(doc) => {
            let text = doc.to_string();
            match &cli.out {
                Some(path) => match std::fs::write(path, &text) {
                    Ok(()) => (0, String::new(), String::new()),
                    Err(e) => (1, String::new(), format!("error: {}: {e}\n", path.display())),
                },
                None => (0, format!("{text}\n"), String::new()),
            }
        }
        Err(e) => (exit_code(&e), String::new(), format!("error: {e}\n")),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SizeLimit(_) | Error::Internal(_) => 2,
        _ => 1,
    }
}

fn parse_group(s: &str) -> Result<(u64, usize)> {
    let bad = || Error::Parse(format!("group must look like p^r, got {s:?}"));
    let (p, r) = s.split_once('^').ok_or_else(bad)?;
    Ok((p.trim().parse().map_err(|_| bad())?, r.trim().parse().map_err(|_| bad())?))
}

fn group_algebra(cli: &Cli) -> Result<ElemAbGroupAlg<PrimeField>> {
    let g = cli.group.as_deref().ok_or_else(|| Error::Parse("--group p^r is required here".into()))?;
    let (p, r) = parse_group(g)?;
    ElemAbGroupAlg::prime(p, r)
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',').map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad {what}: {x:?}")))).collect()
}

fn form(cli: &Cli) -> Form {
    match cli.form {
        FormArg::G => Form::G,
        FormArg::Z => Form::Z,
    }
}

/// A module file path or a built-in name.
fn load(cli: &Cli, spec: &str) -> Result<AnyModule> {
    let builtin = |alg: ElemAbGroupAlg<PrimeField>| -> Result<KModule<PrimeField>> {
        let k = KModule::trivial(&alg);
        match spec.split(':').collect::<Vec<_>>().as_slice() {
            ["trivial"] => Ok(k),
            ["regular"] => Ok(KModule::regular(&alg)),
            ["omega", "k", n] => Ok(omega_power(&k, parse_list::<i64>(n, "power")?[0])),
            ["L", class, n] => {
                let c: Vec<u32> = parse_list::<i64>(class, "class")?.into_iter().map(|x| alg.field().reduce(x)).collect();
                carlson_l(&alg, &c, parse_list::<usize>(n, "power")?[0])
            }
            _ => Err(Error::Parse(format!("unknown built-in module {spec:?}"))),
        }
    };
    let is_builtin = spec == "trivial" || spec == "regular" || spec.starts_with("omega:") || spec.starts_with("L:");
    if is_builtin {
        builtin(group_algebra(cli)?).map(AnyModule::Prime)
    } else {
        read_module(Path::new(spec))
    }
}

fn input(cli: &Cli) -> Result<AnyModule> {
    let spec = cli.input.as_deref().ok_or_else(|| Error::Parse("--in is required here".into()))?;
    load(cli, spec)
}

/// `--in`, defaulting to the trivial module of `--group`.
fn input_or_trivial(cli: &Cli) -> Result<AnyModule> {
    load(cli, cli.input.as_deref().unwrap_or("trivial"))
}

fn second(cli: &Cli, first: &AnyModule, other: Option<&str>) -> Result<AnyModule> {
    match other {
        Some(spec) => load(cli, spec),
        None => Ok(match first {
            AnyModule::Prime(m) => AnyModule::Prime(KModule::trivial(m.algebra())),
            AnyModule::Function(m) => AnyModule::Function(KModule::trivial(m.algebra())),
        }),
    }
}

/// Applies a field-generic operation to one module.
macro_rules! unary {
    ($m:expr, $x:ident => $body:expr) => {
        match $m {
            AnyModule::Prime($x) => $body,
            AnyModule::Function($x) => $body,
        }
    };
}

/// Applies a field-generic operation to two modules over the same field kind.
macro_rules! binary {
    ($a:expr, $b:expr, $x:ident, $y:ident => $body:expr) => {
        match ($a, $b) {
            (AnyModule::Prime($x), AnyModule::Prime($y)) => $body,
            (AnyModule::Function($x), AnyModule::Function($y)) => $body,
            _ => Err(Error::AlgebraMismatch),
        }
    };
}

fn prime_only(m: AnyModule, what: &str) -> Result<KModule<PrimeField>> {
    match m {
        AnyModule::Prime(x) => Ok(x),
        AnyModule::Function(_) => Err(Error::Unsupported(format!("{what} needs a module over a prime field"))),
    }
}

fn dispatch(cli: &Cli) -> Result<Value> {
    let form = form(cli);
    match &cli.verb {
        Verb::Validate => {
            let m = input(cli)?;
            Ok(unary!(&m, x => json!({
                "valid": true,
                "p": x.algebra().p(),
                "r": x.algebra().r(),
                "dim": x.dim(),
                "field": x.field().descriptor(),
            })))
        }
        Verb::Tensor { other } => {
            let (a, b) = (input(cli)?, load(cli, other)?);
            binary!(&a, &b, x, y => Ok(module_json(&x.tensor_diag(y)?, form)))
        }
        Verb::Dual => Ok(unary!(&input(cli)?, x => module_json(&x.dual(), form))),
        Verb::Hom { other } => {
            let (a, b) = (input(cli)?, load(cli, other)?);
            binary!(&a, &b, x, y => Ok(module_json(&x.hom_module(y)?, form)))
        }
        Verb::Restrict { subset, alpha } => {
            let m = input(cli)?;
            match (subset, alpha) {
                (Some(s), _) => {
                    let idx = zero_based(s)?;
                    unary!(&m, x => Ok(module_json(&x.restrict_subset(&idx)?, form)))
                }
                (None, Some(a)) => unary!(&m, x => {
                    let f = x.field();
                    let alpha = a.split(',').map(|s| f.parse_scalar(s)).collect::<Result<Vec<_>>>()?;
                    let action = x.restrict_shifted(&alpha)?;
                    let cyclic = x.algebra().with_rank(1)?;
                    Ok(module_json(&KModule::from_matrices(&cyclic, vec![action], Form::Z)?, form))
                }),
                (None, None) => Err(Error::Parse("restrict needs --subset or --alpha".into())),
            }
        }
        Verb::Induce { subset } => {
            let m = input(cli)?;
            let (p, r) = parse_group(cli.group.as_deref().ok_or_else(|| Error::Parse("induce needs --group p^r".into()))?)?;
            let idx = zero_based(subset)?;
            unary!(&m, x => {
                if u64::from(x.algebra().p()) != p {
                    return Err(Error::AlgebraMismatch);
                }
                let full = x.algebra().with_rank(r)?;
                Ok(module_json(&x.induce_subset(&idx, &full)?, form))
            })
        }
        Verb::Omega { n } => Ok(unary!(&input_or_trivial(cli)?, x => module_json(&omega_power(x, *n), form))),
        Verb::ExtDims { max, other } => {
            let m = input_or_trivial(cli)?;
            let n = second(cli, &m, other.as_deref())?;
            binary!(&m, &n, x, y => Ok(json!({ "dims": ext_dims(x, y, *max)? })))
        }
        Verb::TateDim { n, other } => {
            let m = input_or_trivial(cli)?;
            let o = second(cli, &m, other.as_deref())?;
            binary!(&m, &o, x, y => Ok(json!({ "dim": tate_dim(x, y, *n)? })))
        }
        Verb::IsProjective => Ok(unary!(&input(cli)?, x => json!({ "projective": x.is_projective() }))),
        Verb::FreeRank => Ok(unary!(&input(cli)?, x => json!({ "free_rank": x.free_rank() }))),
        Verb::RankVariety => {
            let m = prime_only(input(cli)?, "rank-variety")?;
            let v = rank_variety_ideal(&m)?;
            let required = match v.required_rank {
                RequiredRank::Rank(n) => json!(n),
                _ => Value::Null,
            };
            let gens: Vec<String> = v.generators().iter().map(ToString::to_string).collect();
            Ok(json!({ "required_rank": required, "generators": gens, "origin_only": v.is_origin_only()? }))
        }
        Verb::Carlson { class, n } => {
            let alg = group_algebra(cli)?;
            let c = parse_list::<i64>(class, "class")?;
            let c: Vec<u32> = c.iter().map(|&x| alg.field().reduce(x)).collect();
            Ok(module_json(&carlson_l(&alg, &c, *n)?, form))
        }
        Verb::Koszul { ring, elems, module } => {
            let ring = PolyRing::parse(ring)?;
            let elems = parse_polys(&ring, elems)?;
            let m = match module {
                Some(spec) => parse_presentation(&ring, spec)?,
                None => PresentedModule::free(&ring, 1),
            };
            let x = koszul_on_module(&m, &elems)?;
            let cohomology: Vec<Value> = x
                .cohomology()
                .iter()
                .zip(x.lo()..)
                .map(|(h, n)| json!({ "degree": n, "zero": h.is_zero(), "support": support_json(&supp_module(h)) }))
                .collect();
            Ok(json!({
                "lo": x.lo(),
                "ranks": x.ranks(),
                "cohomology": cohomology,
                "support": support_json(&supp_complex(&x)),
            }))
        }
        Verb::Supp { ring, module, point } => {
            let ring = PolyRing::parse(ring)?;
            let m = parse_presentation(&ring, module)?;
            let mut doc = json!({ "support": support_json(&supp_module(&m)) });
            if let Some(pt) = point {
                let f = ring.field();
                let c: Vec<u32> = parse_list::<i64>(pt, "point")?.into_iter().map(|x| f.reduce(x)).collect();
                doc["contains_point"] = json!(supp_contains_point(&m, &c)?);
            }
            Ok(doc)
        }
        Verb::BggCheck { max } => {
            let alg = group_algebra(cli)?;
            if alg.p() != 2 {
                return Err(Error::Unsupported("the DG correspondence is only implemented for p = 2".into()));
            }
            Ok(json!({ "window": max, "eta_ok": eta_check(alg.r(), *max)?, "zeta_ok": zeta_check(alg.r(), *max)? }))
        }
        Verb::Bgg { max } => {
            let m = prime_only(input(cli)?, "bgg")?;
            let w = bgg_transform(&m, *max)?;
            let r = m.algebra().r();
            // the checks need one more guard degree than the transform
            let (eta, zeta) = if *max >= 2 { (eta_check(r, *max)?, zeta_check(r, *max)?) } else { (false, false) };
            Ok(json!({
                "window": w.window,
                "dims": w.dims[..=w.certified],
                "certified": w.certified,
                "eta_ok": eta,
                "zeta_ok": zeta,
            }))
        }
    }
}

fn zero_based(s: &[usize]) -> Result<Vec<usize>> {
    s.iter().map(|&i| i.checked_sub(1).ok_or(Error::BadSubset)).collect()
}

fn parse_polys(ring: &RingRef, s: &str) -> Result<Vec<MultiPoly>> {
    s.split(',').map(|e| MultiPoly::parse(ring, e.trim())).collect()
}

/// `free:t`, a JSON list of relation vectors, or ideal generators for `A/I`.
fn parse_presentation(ring: &RingRef, s: &str) -> Result<PresentedModule> {
    let s = s.trim();
    if let Some(t) = s.strip_prefix("free:") {
        let t = t.trim().parse().map_err(|_| Error::Parse(format!("bad rank {t:?}")))?;
        return Ok(PresentedModule::free(ring, t));
    }
    if s.starts_with('[') {
        let rels: Vec<Vec<String>> = serde_json::from_str(s).map_err(|e| Error::Parse(format!("presentation: {e}")))?;
        let rank = rels.first().map_or(0, Vec::len);
        let gens = rels
            .iter()
            .map(|v| v.iter().map(|e| MultiPoly::parse(ring, e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        return Ok(PresentedModule::new(FreeSubmodule::new(ring, rank, gens)?));
    }
    Ok(PresentedModule::cyclic(&Ideal::new(ring, parse_polys(ring, s)?)?))
}

fn support_json(s: &SupportSet) -> Value {
    let mut comps = s.to_strings();
    for c in &mut comps {
        c.sort();
    }
    comps.sort();
    comps.dedup();
    json!(comps)
}
