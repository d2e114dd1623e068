use std::path::Path;

use gxi::catalog;
use gxi::fusion::{Obj, SkeletalCategory};
use gxi::induction::{find_twisted_reps, free_generator, run_suite, InducedSector, InductionError, InductionSetting, Suite};
use gxi::io::{self, obj_to, Instance, LoadError};
use gxi::kernel::{Approx, FromScalar, Scalar};
use serde_json::{json, Map, Value};

use crate::render::{matrix_json, matrix_text, table, Num, Output};
use crate::GlobalOpts;

pub struct CliError {
    pub code: u8,
    pub message: String,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError {
        code: 2,
        message: msg.into(),
    }
}

type Res = Result<Output, CliError>;

/// Either a loaded instance or a finished output for a load-time axiom failure.
enum Loaded {
    Ready(Box<Instance>),
    Rejected(Output),
}

fn load(o: &GlobalOpts, command: &str, file: &str, validate: bool) -> Result<Loaded, CliError> {
    let res = if Path::new(file).exists() {
        io::load(file, validate)
    } else if let Ok(text) = catalog::source(file) {
        io::load_str(text, validate)
    } else {
        return Err(usage(format!("{file}: no such file or catalog entry")));
    };
    match res {
        Ok(inst) => Ok(Loaded::Ready(Box::new(inst))),
        Err(LoadError::Axiom {
            suite,
            check,
            witness,
            reports,
        }) => {
            let mut out = Output::new(command);
            out.set("instance", json!(file));
            mode(o, &mut out);
            let msg = format!("rejected on load: {suite}.{check} ({witness})");
            out.set("error", json!(msg));
            out.reports(reports);
            out.line(msg);
            out.passed = false;
            Ok(Loaded::Rejected(out))
        }
        Err(e) => Err(usage(e.to_string())),
    }
}

fn mode(o: &GlobalOpts, out: &mut Output) {
    if o.approx {
        out.set("mode", json!("approx"));
        out.set("tol", json!(o.tol));
    } else {
        out.set("mode", json!("exact"));
    }
}

fn header(o: &GlobalOpts, command: &str, inst: &Instance, setting: Option<&str>) -> Output {
    let mut out = Output::new(command);
    out.set("instance", json!(inst.name));
    if let Some(s) = setting {
        out.set("setting", json!(s));
    }
    mode(o, &mut out);
    out
}

/// Runs `body` over the chosen setting in exact or approximate arithmetic.
fn with_setting(
    o: &GlobalOpts,
    command: &str,
    file: &str,
    body: &dyn Fn(&mut Output, &Dispatch) -> Result<(), CliError>,
) -> Res {
    let inst = match load(o, command, file, !o.no_validate)? {
        Loaded::Ready(i) => *i,
        Loaded::Rejected(out) => return Ok(out),
    };
    let st = inst.setting(o.setting.as_deref()).map_err(|e| usage(e.to_string()))?;
    let mut out = header(o, command, &inst, Some(&st.name));
    let d = if o.approx {
        Dispatch::Approx(st.convert::<Approx>(o.tol))
    } else {
        Dispatch::Exact(st.clone())
    };
    body(&mut out, &d)?;
    Ok(out)
}

pub enum Dispatch {
    Exact(InductionSetting<Scalar>),
    Approx(InductionSetting<Approx>),
}

fn element<F: Num>(s: &InductionSetting<F>, g: &str) -> Result<usize, CliError> {
    s.group()
        .index(g)
        .map_err(|_| usage(format!("unknown group element {g:?}; have {:?}", s.group().names())))
}

fn label<F: Num>(s: &InductionSetting<F>, a: &str) -> Result<usize, CliError> {
    s.gx.cat()
        .ring()
        .index(a)
        .map_err(|_| usage(format!("unknown label {a:?}; have {:?}", s.gx.cat().ring().labels())))
}

/// `m + f`, in label order.
fn obj_text<F: Num>(cat: &SkeletalCategory<F>, x: &Obj) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.support()
        .map(|a| match x.mult(a) {
            1 => cat.ring().name(a).to_string(),
            n => format!("{n}{}", cat.ring().name(a)),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Builds a sector, sorting errors into usage (2) and check (1) failures.
fn sector<F: Num>(s: &InductionSetting<F>, g: Option<&str>, lam: &str, chir: &str) -> Result<InducedSector<F>, CliError> {
    let a = label(s, lam)?;
    let res = if chir == "-" {
        s.alpha_minus_simple(a)
    } else {
        let g = g.ok_or_else(|| usage("--g is required for chirality +"))?;
        s.alpha_plus_simple(element(s, g)?, a)
    };
    res.map_err(|e| match e {
        InductionError::GradingMismatch { .. } | InductionError::NotHomogeneous(_) => usage(e.to_string()),
        other => CliError {
            code: 1,
            message: other.to_string(),
        },
    })
}

pub fn validate(o: &GlobalOpts, file: &str) -> Res {
    let inst = match load(o, "validate", file, false)? {
        Loaded::Ready(i) => *i,
        Loaded::Rejected(out) => return Ok(out),
    };
    let mut out = header(o, "validate", &inst, None);
    let mut reports = if o.approx {
        let gx = inst.gx.convert::<Approx>(o.tol);
        let st: Vec<_> = inst.settings.iter().map(|s| s.convert::<Approx>(o.tol)).collect();
        io::structural_reports(&gx, &st)
    } else {
        inst.validate()
    };
    if !inst.expected.is_empty() && !o.approx {
        reports.push(catalog::check_expected(&inst));
    }
    out.line(format!(
        "{}: rank {}, group order {}, {} setting(s)",
        inst.name,
        inst.gx.rank(),
        inst.gx.group().order(),
        inst.settings.len()
    ));
    out.reports(reports);
    Ok(out)
}

fn induce_in<F: Num + FromScalar>(
    out: &mut Output,
    s: &InductionSetting<F>,
    g: Option<&str>,
    lam: &str,
    chir: &str,
) -> Result<(), CliError> {
    let sec = sector(s, g, lam, chir)?;
    let cat = s.gx.cat();
    let module = cat.ring().fuse_obj(&s.q.theta, &cat.simple(label(s, lam)?));
    let end = s.hom_dim(&sec, &sec);
    let formula = s
        .hom_dim_formula(&sec.lam[0], &sec.lam[0])
        .map_err(|e| usage(e.to_string()))?;
    let mut hb = Map::new();
    let mut rows = Vec::new();
    for (c, b) in sec.half_braiding.blocks.iter().enumerate() {
        if b.rows() > 0 && b.cols() > 0 {
            hb.insert(cat.ring().name(c).into(), matrix_json(b));
            rows.push(vec![cat.ring().name(c).to_string(), matrix_text(b)]);
        }
    }
    let gname = sec.g.map(|g| s.group().name(g).to_string());
    out.set(
        "sector",
        json!({
            "chirality": chir,
            "g": gname,
            "lambda": lam,
            "module": obj_to(cat, &module),
            "half_braiding": hb,
            "end_dim": end,
            "end_dim_formula": formula,
        }),
    );
    out.passed &= end == formula;
    out.line(format!(
        "alpha{}{}({lam}) on theta.{lam} = {}",
        chir,
        gname.map(|g| format!("[{g}]")).unwrap_or_default(),
        obj_text(cat, &module)
    ));
    out.line(format!("dim End = {end} (fusion rule: {formula})"));
    out.line("half-braiding blocks:");
    out.line(table(&["channel", "matrix"], &rows));
    Ok(())
}

pub fn induce(o: &GlobalOpts, file: &str, g: Option<&str>, lam: &str, chir: &str) -> Res {
    with_setting(o, "induce", file, &|out, d| match d {
        Dispatch::Exact(s) => induce_in(out, s, g, lam, chir),
        Dispatch::Approx(s) => induce_in(out, s, g, lam, chir),
    })
}

fn homdim_in<F: Num + FromScalar>(
    out: &mut Output,
    s: &InductionSetting<F>,
    g: Option<&str>,
    lam: &str,
    mu: &str,
    chir: &str,
) -> Result<(), CliError> {
    let a = sector(s, g, lam, chir)?;
    let b = sector(s, g, mu, chir)?;
    let solver = s.hom_dim(&a, &b);
    let formula = s.hom_dim_formula(&a.lam[0], &b.lam[0]).map_err(|e| usage(e.to_string()))?;
    out.set(
        "homdim",
        json!({"chirality": chir, "g": g, "lambda": lam, "mu": mu, "solver": solver, "formula": formula}),
    );
    out.passed &= solver == formula;
    out.line(solver.to_string());
    if solver != formula {
        out.line(format!("mismatch: fusion rule gives {formula}"));
    }
    Ok(())
}

pub fn homdim(o: &GlobalOpts, file: &str, g: Option<&str>, lam: &str, mu: &str, chir: &str) -> Res {
    with_setting(o, "homdim", file, &|out, d| match d {
        Dispatch::Exact(s) => homdim_in(out, s, g, lam, mu, chir),
        Dispatch::Approx(s) => homdim_in(out, s, g, lam, mu, chir),
    })
}

fn sectors_in<F: Num + FromScalar>(out: &mut Output, s: &InductionSetting<F>, g: &str) -> Result<(), CliError> {
    let gi = element(s, g)?;
    let mods = find_twisted_reps(s, gi).map_err(|e| CliError {
        code: 1,
        message: e.to_string(),
    })?;
    let cat = s.gx.cat();
    let mut list = Vec::new();
    let mut rows = Vec::new();
    for (i, m) in mods.iter().enumerate() {
        let under = obj_to(cat, &m.underlying);
        let gen = free_generator(s, &m.underlying).map(|a| cat.ring().name(a).to_string());
        rows.push(vec![
            i.to_string(),
            obj_text(cat, &m.underlying),
            gen.clone().unwrap_or_else(|| "-".into()),
            m.plus.len().to_string(),
            m.minus.len().to_string(),
        ]);
        list.push(json!({
            "sigma_restriction": under,
            "generator": gen,
            "plus_presentations": m.plus.len(),
            "minus_presentations": m.minus.len(),
        }));
    }
    out.set("g", json!(g));
    out.set("count", json!(mods.len()));
    out.set("sectors", Value::Array(list));
    out.line(format!("{g}-twisted sectors: {}", mods.len()));
    if !rows.is_empty() {
        out.line(table(&["#", "sigma-restriction", "generator", "plus", "minus"], &rows));
    }
    Ok(())
}

pub fn sectors(o: &GlobalOpts, file: &str, g: &str) -> Res {
    with_setting(o, "sectors", file, &|out, d| match d {
        Dispatch::Exact(s) => sectors_in(out, s, g),
        Dispatch::Approx(s) => sectors_in(out, s, g),
    })
}

pub fn theorems(o: &GlobalOpts, file: &str, suite: &str) -> Res {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![Suite::parse(suite).ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
            usage(format!("unknown suite {suite:?}; choose one of {names:?} or all"))
        })?]
    };
    with_setting(o, "theorems", file, &|out, d| {
        let reports = match d {
            Dispatch::Exact(s) => suites.iter().map(|&x| run_suite(s, x)).collect(),
            Dispatch::Approx(s) => suites.iter().map(|&x| run_suite(s, x)).collect(),
        };
        out.reports(reports);
        Ok(())
    })
}

pub fn catalog_list(_o: &GlobalOpts) -> Res {
    let mut out = Output::new("catalog");
    let describe = |names: Vec<&'static str>| -> Vec<(String, String)> {
        names
            .into_iter()
            .map(|n| {
                let d = catalog::source(n)
                    .ok()
                    .and_then(|t| io::parse(t).ok())
                    .map(|f| f.description)
                    .unwrap_or_default();
                (n.to_string(), d)
            })
            .collect()
    };
    let groups = [
        ("entries", describe(catalog::list_entries())),
        ("large", describe(catalog::list_large())),
        ("probes", describe(catalog::list_probes())),
    ];
    for (key, items) in &groups {
        out.set(key, json!(items.iter().map(|(n, _)| n).collect::<Vec<_>>()));
        out.line(format!("{key}:"));
        let rows: Vec<Vec<String>> = items.iter().map(|(n, d)| vec![n.clone(), d.clone()]).collect();
        out.line(table(&["name", "description"], &rows));
    }
    Ok(out)
}

pub fn catalog_export(_o: &GlobalOpts, name: &str, path: &Path) -> Res {
    let entry = catalog::get_entry(name).map_err(|e| usage(e.to_string()))?;
    let text = entry.instance.export();
    let mut out = Output::new("catalog");
    out.set("exported", json!(name));
    if path == Path::new("-") {
        print!("{text}");
        out.silent = true;
        return Ok(out);
    }
    std::fs::write(path, &text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    out.set("path", json!(path.display().to_string()));
    out.line(format!("wrote {name} to {}", path.display()));
    Ok(out)
}
