use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use chevtwist::chevgroup::{sl2, ElementJson};
use chevtwist::liealg::ChevalleyBasis;
use chevtwist::scalars::AutOrder;
use chevtwist::twconj::{isogredience_classes, trace_in_function_field, twisted_classes, witness_family, NormInvariant};
use chevtwist::twist::{RootOrbit, TwistedGroupHandle};
use chevtwist::{
    ChevalleyGroup, FieldAutomorphism, FieldDescriptor, FiniteGroupOps, GroupAutomorphism, Matrix, RootKind,
    RootSystem, Scalar, Twist,
};

use crate::error::CliError;
use crate::{Command, Config, Picture};

pub const SCHEMA_VERSION: u32 = 1;

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Rootsys => "rootsys",
            Command::Basis { .. } => "basis",
            Command::Element { .. } => "element",
            Command::Relations { .. } => "relations",
            Command::Twist { .. } => "twist",
            Command::Reidemeister { .. } => "reidemeister",
            Command::Isogredience { .. } => "isogredience",
            Command::Witness { .. } => "witness",
            Command::Invariant { .. } => "invariant",
            Command::TraceKt { .. } => "trace-kt",
        }
    }
}

/// Write the versioned envelope for a result or an error.
pub fn emit(cfg: &Config, cmd: &Command, outcome: Result<Value, &CliError>) -> Result<(), CliError> {
    let mut doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": cmd.name(),
        "config": {
            "type": cfg.kind,
            "rank": cfg.rank,
            "field": cfg.field,
            "aut": cfg.aut,
            "seed": cfg.seed,
        },
    });
    match outcome {
        Ok(result) => doc["result"] = result,
        Err(e) => doc["error"] = serde_json::to_value(e.to_json()).expect("error JSON"),
    }
    let mut text = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
    text.push('\n');
    match &cfg.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

pub fn run(cmd: &Command, cfg: &Config) -> Result<(), CliError> {
    let result = match cmd {
        Command::Rootsys => to_value(system(cfg)?.dump()),
        Command::Basis { table } => {
            let (kind, rank) = kind_rank(cfg)?;
            let basis = ChevalleyBasis::build(kind, rank)?;
            if let Some(path) = table {
                basis.write_table(path)?;
                eprintln!("wrote {}", path.display());
            }
            to_value(basis.table_file())
        }
        Command::Element { word } => element(cfg, word)?,
        Command::Relations { trials } => relations(cfg, *trials)?,
        Command::Twist { sigma, params, enumerate } => twist(cfg, sigma, params, *enumerate)?,
        Command::Reidemeister { sigma } => reidemeister(cfg, sigma.as_deref())?,
        Command::Isogredience { sigma } => isogredience(cfg, sigma.as_deref())?,
        Command::Witness { count, sigma } => witness(cfg, *count, sigma.as_deref())?,
        Command::Invariant { word } => invariant(cfg, word)?,
        Command::TraceKt { m, chi } => trace_kt(cfg, *m, chi.as_deref())?,
    };
    emit(cfg, cmd, Ok(result))
}

fn to_value<T: Serialize>(v: T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn kind_rank(cfg: &Config) -> Result<(RootKind, usize), CliError> {
    let kind: RootKind = cfg.kind.parse()?;
    let rank = match (kind, cfg.rank) {
        (RootKind::E6, None) => 6,
        (_, Some(r)) => r,
        (_, None) => return Err(CliError::Usage(format!("--rank is required for type {kind}"))),
    };
    Ok((kind, rank))
}

fn system(cfg: &Config) -> Result<RootSystem, CliError> {
    let (kind, rank) = kind_rank(cfg)?;
    Ok(RootSystem::build(kind, rank)?)
}

fn field(cfg: &Config) -> Result<FieldDescriptor, CliError> {
    Ok(FieldDescriptor::parse(&cfg.field)?)
}

fn group(cfg: &Config) -> Result<ChevalleyGroup, CliError> {
    let (kind, rank) = kind_rank(cfg)?;
    Ok(ChevalleyGroup::build(kind, rank, field(cfg)?)?)
}

fn element(cfg: &Config, word: &str) -> Result<Value, CliError> {
    match cfg.picture {
        Picture::Adjoint => {
            let g = group(cfg)?;
            let x = g.evaluate_word(word)?;
            Ok(to_value(g.element_json(&x)))
        }
        Picture::Fundamental => {
            let (kind, rank) = kind_rank(cfg)?;
            if (kind, rank) != (RootKind::A, 1) {
                return Err(CliError::Usage("the fundamental picture is only available for A1".into()));
            }
            let k = field(cfg)?;
            let m = fundamental_word(&k, word)?;
            Ok(to_value(ElementJson {
                basis: "A1/fundamental".into(),
                field: k.to_string(),
                matrix: m.to_strings(),
                word: Some(word.trim().to_string()),
            }))
        }
    }
}

/// Words in `x a1 t`, `x -a1 t`, `n a1 t`, `h a1 t` evaluated as 2x2 matrices.
fn fundamental_word(k: &FieldDescriptor, word: &str) -> Result<Matrix, CliError> {
    let mut acc = Matrix::identity(2, k);
    for part in word.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let tokens: Vec<&str> = part.split_whitespace().collect();
        let [head, root, t] = tokens[..] else {
            return Err(CliError::Usage(format!("`{part}` needs a generator, a root and a parameter")));
        };
        let t = Scalar::parse(k, t)?;
        let m = match (head, root) {
            ("x", "a1") => sl2::x(&t),
            ("x", "-a1") => sl2::x_neg(&t),
            ("n", "a1") => sl2::n(&t)?,
            ("h", "a1") => sl2::h(&t)?,
            _ => return Err(CliError::Usage(format!("unsupported generator `{part}` in the fundamental picture"))),
        };
        acc = &acc * &m;
    }
    Ok(acc)
}

fn relations(cfg: &Config, trials: usize) -> Result<Value, CliError> {
    let g = group(cfg)?;
    if g.field().characteristic() != 0 {
        return Err(CliError::Usage("relations samples rational parameters and needs characteristic zero".into()));
    }
    let rank = g.system().rank();
    let pairs: Vec<(usize, usize)> = (0..rank).flat_map(|a| (0..rank).map(move |b| (a, b))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    eprintln!("checking {trials} trials on {}", g.tag());
    Ok(to_value(g.check_steinberg_relations(trials, &pairs, &mut rng)?))
}

fn standard_twist(g: ChevalleyGroup, sigma: Option<&str>) -> Result<Twist, CliError> {
    Ok(match sigma {
        Some(s) => {
            let f = FieldAutomorphism::parse(s, g.field())?;
            Twist::standard(g, f)?
        }
        None => Twist::untwisted(g),
    })
}

fn orbit_json(s: &RootSystem, orbit: &RootOrbit) -> Value {
    let label = |i: usize| s.root(i).to_string();
    match *orbit {
        RootOrbit::Fixed(a) => json!({ "kind": "fixed", "roots": [label(a)] }),
        RootOrbit::Pair(a, b) => json!({ "kind": "pair", "roots": [label(a), label(b)] }),
        RootOrbit::Adjacent(a, b, c) => json!({ "kind": "adjacent", "roots": [label(a), label(b)], "sum": label(c) }),
    }
}

/// Smallest `n <= 12` with `sigma^n` trivial on the simple root elements and their opposites.
fn sigma_order(tw: &Twist) -> Result<Option<u32>, CliError> {
    let g = tw.group();
    let s = g.system();
    let t = &Scalar::one(g.field()) + &Scalar::generator(g.field());
    let mut probes = Vec::new();
    for a in 0..s.rank() {
        probes.push(g.x_alpha(a, &t)?.into_matrix());
        probes.push(g.x_alpha(s.neg_index(a), &t)?.into_matrix());
    }
    let mut images = probes.clone();
    for n in 1..=12 {
        images = images.iter().map(|m| tw.sigma_apply(m)).collect::<Result<_, _>>()?;
        if images == probes {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

fn handle_json(tw: &Twist, h: &TwistedGroupHandle) -> Value {
    json!({
        "system": tw.group().tag(),
        "field": tw.group().field().to_string(),
        "twist": tw.symmetry().map(|_| tw.field_automorphism().to_string()),
        "order": h.group.order(),
        "center_order": h.center.len(),
        "generator_count": h.generator_count,
    })
}

fn twist(cfg: &Config, sigma: &str, params: &str, enumerate: bool) -> Result<Value, CliError> {
    let tw = standard_twist(group(cfg)?, Some(sigma))?;
    let g = tw.group();
    let s = g.system();
    let params = params.split(',').map(|p| Scalar::parse(g.field(), p.trim())).collect::<Result<Vec<_>, _>>()?;
    let orbits: Vec<RootOrbit> = tw.orbits(true).into_iter().chain(tw.orbits(false)).collect();
    let generators: Vec<ElementJson> = tw
        .fixed_generators(true, &params)?
        .into_iter()
        .chain(tw.fixed_generators(false, &params)?)
        .map(|x| g.element_json(&x))
        .collect();
    let signs: Vec<Value> =
        (0..s.len()).map(|r| json!({ "root": s.root(r).to_string(), "sign": tw.sign(r) })).collect();
    let mut out = json!({
        "system": g.tag(),
        "field": g.field().to_string(),
        "symmetry": tw.symmetry().map(|r| r.perm().iter().map(|i| i + 1).collect::<Vec<_>>()),
        "field_automorphism": tw.field_automorphism().to_string(),
        "sigma_order": sigma_order(&tw)?,
        "signs": signs,
        "orbits": orbits.iter().map(|o| orbit_json(s, o)).collect::<Vec<_>>(),
        "fixed_generators": generators,
    });
    if enumerate {
        eprintln!("enumerating the twisted group over {}", g.field());
        let h = tw.enumerate_finite(cfg.budget)?;
        out["enumeration"] = handle_json(&tw, &h);
    }
    Ok(out)
}

struct FiniteSetup {
    tw: Twist,
    handle: TwistedGroupHandle,
    phi: GroupAutomorphism,
    index_phi: chevtwist::IndexAutomorphism,
}

fn finite_setup(cfg: &Config, sigma: Option<&str>) -> Result<FiniteSetup, CliError> {
    let tw = standard_twist(group(cfg)?, sigma)?;
    let phi = GroupAutomorphism::parse(&cfg.aut, tw.group())?;
    eprintln!("enumerating {} over {}", tw.group().tag(), tw.group().field());
    let handle = tw.enumerate_finite(cfg.budget)?;
    eprintln!("order {}", handle.group.order());
    let index_phi = handle.group.automorphism(phi.label(), |m| phi.apply(m))?;
    Ok(FiniteSetup { tw, handle, phi, index_phi })
}

fn reidemeister(cfg: &Config, sigma: Option<&str>) -> Result<Value, CliError> {
    let st = finite_setup(cfg, sigma)?;
    let g = &st.handle.group;
    let rep = twisted_classes(g, &st.index_phi);
    let mut sizes = vec![0usize; rep.count];
    for &c in &rep.class_of {
        sizes[c] += 1;
    }
    let classes: Vec<Value> = rep
        .representatives
        .iter()
        .zip(&sizes)
        .map(|(&r, &size)| json!({ "representative": r, "size": size, "matrix": g.element(r).to_strings() }))
        .collect();
    Ok(json!({
        "group": handle_json(&st.tw, &st.handle),
        "automorphism": st.phi.to_json(),
        "reidemeister_number": rep.count,
        "classes": classes,
    }))
}

fn isogredience(cfg: &Config, sigma: Option<&str>) -> Result<Value, CliError> {
    let st = finite_setup(cfg, sigma)?;
    let g = &st.handle.group;
    let rep = isogredience_classes(g, &st.index_phi, &st.handle.center);
    let r = twisted_classes(g, &st.index_phi).count;
    let reps: Vec<Value> = rep
        .representatives
        .iter()
        .map(|&a| json!({ "representative": a, "matrix": g.element(a).to_strings() }))
        .collect();
    Ok(json!({
        "group": handle_json(&st.tw, &st.handle),
        "automorphism": st.phi.to_json(),
        "isogredience_number": rep.count,
        "reidemeister_number": r,
        "representatives": reps,
    }))
}

fn witness(cfg: &Config, count: usize, sigma: Option<&str>) -> Result<Value, CliError> {
    let g = group(cfg)?;
    let phi = GroupAutomorphism::parse(&cfg.aut, &g)?;
    let tw = match sigma {
        Some(_) => Some(standard_twist(g.clone(), sigma)?),
        None => None,
    };
    let family = witness_family(&g, &phi, count, tw.as_ref())?;
    let mut out = to_value(&family);
    out["certified_lower_bound"] = json!(family.witnesses.len());
    Ok(out)
}

fn invariant(cfg: &Config, word: &str) -> Result<Value, CliError> {
    let g = group(cfg)?;
    let phi = GroupAutomorphism::parse(&cfg.aut, &g)?;
    let x = g.evaluate_word(word)?;
    let inv = NormInvariant::new(&phi)?;
    let poly = inv.eval(x.matrix())?;
    let order = match phi.field_part().order() {
        AutOrder::Finite(n) => n,
        AutOrder::Infinite => unreachable!("NormInvariant::new rejects infinite order"),
    };
    Ok(json!({
        "element": g.element_json(&x),
        "automorphism": phi.to_json(),
        "field_order": order,
        "invariant": poly.coefficients().iter().map(Scalar::to_string).collect::<Vec<_>>(),
    }))
}

fn trace_kt(cfg: &Config, m: u32, chi: Option<&str>) -> Result<Value, CliError> {
    let (kind, rank) = kind_rank(cfg)?;
    let base = field(cfg)?;
    let chi: Vec<Scalar> = match chi {
        Some(text) => text.split(',').map(|v| Scalar::parse(&base, v.trim())).collect::<Result<_, _>>()?,
        None => vec![Scalar::one(&base); rank],
    };
    if chi.len() != rank {
        return Err(CliError::Usage(format!("--chi needs {rank} values, got {}", chi.len())));
    }
    Ok(to_value(trace_in_function_field(kind, rank, &base, m, &chi)?))
}
