use crate::{Cli, Cmd, Example, Format, Side, WORKSPACE_ENV};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use tiltrep::geometry::{
    certified_closure, clorbit_member_genfinite, desing_dimvec,
    grassmannian_desing_report_generator, grassmannian_desing_report_with, grassmannian_report_by,
    hom_vector, orbit_desing_report, DesingReport, GrassmannianReport, StrataBy,
    FINITE_FIELD_CAVEAT,
};
use tiltrep::io::{
    load_module, module_actions_json, struct_algebra_json, to_text, AlgebraFile, ModuleFile,
    Workspace, SCHEMA_VERSION,
};
use tiltrep::linalg::Field;
use tiltrep::module::{
    decompose, ext_dim, hom_dim, injective, is_isomorphic, simple, tau, tau_inv, Module,
};
use tiltrep::subrep::{cogen_closure, gen_closure, Caps, ClosureStatus, GenClosureReport};
use tiltrep::subspace::{subspace_algebra, subspace_module};
use tiltrep::tilt::intext::{predicted_dims, restrict_to_corner, IdentityCheck};
use tiltrep::tilt::{
    build_b, build_b_generator, check_int_ext_theorem, cogenerator_completion,
    dual::check_int_ext_theorem_generator, generator_completion, intermediate_extension,
    intermediate_extension_generator, stability_flags, summand_label, CoGammaRoute, CogenTilted,
    GammaRoute, GenCotilted, TiltingCertificate,
};
use tiltrep::{Error, Result};

struct Ctx<'a> {
    cli: &'a Cli,
    ws: Workspace,
}

impl Ctx<'_> {
    fn path(&self, p: &Path) -> PathBuf {
        self.ws.root.join(p)
    }

    fn module(&self, p: &Path) -> Result<Module> {
        Ok(load_module(&self.path(p))?.1)
    }

    fn pair(&self, x: &Path, y: &Path) -> Result<(Module, Module)> {
        let (a, b) = (self.module(x)?, self.module(y)?);
        a.same_algebra(&b)?;
        Ok((a, b))
    }

    /// Prints `body` or writes it into the workspace, with the inputs hashed.
    fn emit(&self, body: &str, inputs: &[&Path]) -> Result<()> {
        match &self.cli.out {
            Some(name) => {
                self.ws.write(name, body, inputs)?;
            }
            None => print!("{body}"),
        }
        Ok(())
    }

    fn report(&self, command: &str, mut v: Value, inputs: &[&Path]) -> Result<()> {
        let obj = v.as_object_mut().expect("report is an object");
        obj.insert("schema".into(), json!(SCHEMA_VERSION));
        obj.insert("command".into(), json!(command));
        obj.insert("seed".into(), json!(self.cli.seed));
        self.emit(&to_text(&v), inputs)
    }
}

pub fn run(cli: &Cli) -> Result<i32> {
    let root = std::env::var_os(WORKSPACE_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("."));
    let ctx = Ctx {
        cli,
        ws: Workspace::new(root)?,
    };
    let seed = cli.seed;
    let workers = cli.workers.max(1);
    match &cli.cmd {
        Cmd::Hom(p) => {
            let (x, y) = ctx.pair(&p.x, &p.y)?;
            ctx.report("hom", json!({"dim": hom_dim(&x, &y)?}), &[&p.x, &p.y])?;
        }
        Cmd::Ext { pair, degree } => {
            let (x, y) = ctx.pair(&pair.x, &pair.y)?;
            if *degree == 0 {
                return Err(Error::Precondition("degree must be at least 1".into()));
            }
            ctx.report(
                "ext",
                json!({"degree": degree, "dim": ext_dim(&x, &y, *degree)?}),
                &[&pair.x, &pair.y],
            )?;
        }
        Cmd::Decompose { x } => {
            let m = ctx.module(x)?;
            let d = decompose(&m, seed)?;
            let mut parts = vec![];
            for (y, k) in &d.classes {
                parts
                    .push(json!({"label": summand_label(y)?, "dims": y.dims(), "multiplicity": k}));
            }
            ctx.report(
                "decompose",
                json!({"dims": m.dims(), "summands": parts}),
                &[x],
            )?;
        }
        Cmd::Tau { x, inverse } => {
            let path = ctx.path(x);
            let file: ModuleFile = tiltrep::io::read_json(&path)?;
            let m = load_module(&path)?.1;
            let t = if *inverse { tau_inv(&m)? } else { tau(&m)? };
            let out =
                serde_json::to_value(ModuleFile::of(&t, &file.algebra)).expect("serialisable");
            ctx.emit(&to_text(&out), &[x])?;
        }
        Cmd::GenClosure { x, cogen } => {
            let m = ctx.module(x)?;
            let r = if *cogen {
                cogen_closure(&m, Caps::for_module(&m))?
            } else {
                gen_closure(&m, Caps::for_module(&m))?
            };
            ctx.report("gen-closure", closure_json(&r)?, &[x])?;
        }
        Cmd::BuildB { m, side } => {
            let a = ctx.module(m)?;
            let v = match tower(&a, *side)? {
                Tower::Cogen(b) => json!({
                    "side": "cogenerator",
                    "summands": b.labels,
                    "dim": b.alg().dim(),
                    "corner_is_base": b.corner_is_base()?,
                    "structure": struct_algebra_json(b.alg())?,
                }),
                Tower::Gen(g) => json!({
                    "side": "generator",
                    "summands": g.labels,
                    "dim": g.alg().dim(),
                    "corner_is_base": g.corner_is_base()?,
                    "structure": struct_algebra_json(g.alg())?,
                }),
            };
            ctx.report("build-B", v, &[m])?;
        }
        Cmd::Intext { m, of, side } => {
            let a = ctx.module(m)?;
            let n = match of {
                Some(p) => {
                    let n = ctx.module(p)?;
                    n.same_algebra(&a)?;
                    n
                }
                None => a.clone(),
            };
            let mut inputs: Vec<&Path> = vec![m];
            if let Some(p) = of {
                inputs.push(p);
            }
            let v = match tower(&a, *side)? {
                Tower::Cogen(b) => {
                    let c = intermediate_extension(&n, &b)?;
                    let back = restrict_to_corner(&c, b.alg(), &b.base, &b.corner)?;
                    let st = stability_flags(&c, &b);
                    json!({
                        "side": "cogenerator",
                        "dims": c.dims(),
                        "predicted_dims": predicted_dims(&n, &b)?,
                        "restriction_is_input": is_isomorphic(&back, &n, seed)?.is_some(),
                        "stable": st.stable,
                        "costable": st.costable,
                        "module": module_actions_json(&c),
                    })
                }
                Tower::Gen(g) => {
                    let c = intermediate_extension_generator(&n, &g)?;
                    let back = restrict_to_corner(&c, g.alg(), &g.base, &g.corner)?;
                    json!({
                        "side": "generator",
                        "dims": c.dims(),
                        "restriction_is_input": is_isomorphic(&back, &n, seed)?.is_some(),
                        "module": module_actions_json(&c),
                    })
                }
            };
            ctx.report("intext", v, &inputs)?;
        }
        Cmd::VerifyTilting { m, side } => {
            let a = ctx.module(m)?;
            let (v, pass) = match tower(&a, *side)? {
                Tower::Cogen(b) => {
                    let r = GammaRoute::new(&b)?;
                    let agrees = r.agrees_with(&b);
                    let v = json!({
                        "side": "cogenerator",
                        "gamma_dim": r.gamma().dim(),
                        "module_dims": r.t.dims(),
                        "summand_dims": r.t_parts.iter().map(|x| x.dims().to_vec()).collect::<Vec<_>>(),
                        "checks": certificate_json(&r.certificate),
                        "end_op_is_B": agrees,
                    });
                    (v, r.certificate.pass() && agrees)
                }
                Tower::Gen(g) => {
                    let r = CoGammaRoute::new(&g)?;
                    let agrees = r.agrees_with(&g);
                    let v = json!({
                        "side": "generator",
                        "gamma_dim": r.gamma().dim(),
                        "module_dims": r.c.dims(),
                        "summand_dims": r.c_parts.iter().map(|x| x.dims().to_vec()).collect::<Vec<_>>(),
                        "checks": certificate_json(&r.certificate),
                        "end_op_is_B": agrees,
                    });
                    (v, r.certificate.pass() && agrees)
                }
            };
            ctx.report("verify-tilting", v, &[m])?;
            if !pass {
                return Ok(4);
            }
        }
        Cmd::CheckTheorems { m, side } => {
            let a = ctx.module(m)?;
            let checks = match tower(&a, *side)? {
                Tower::Cogen(b) => {
                    let r = GammaRoute::new(&b)?;
                    let samples = certified_closure(&a)?.members;
                    check_int_ext_theorem(&b, &r, &samples)?
                }
                Tower::Gen(g) => {
                    let r = CoGammaRoute::new(&g)?;
                    let samples = certified_cogen_closure(&a)?.members;
                    check_int_ext_theorem_generator(&g, &r, &samples)?
                }
            };
            let pass = checks.iter().all(|c| c.pass);
            ctx.report(
                "check-theorems",
                json!({"checks": checks_json(&checks), "pass": pass}),
                &[m],
            )?;
            if !pass {
                return Ok(4);
            }
        }
        Cmd::Rankvar { m, n } => {
            let (a, x) = ctx.pair(m, n)?;
            let rep = certified_closure(&a)?;
            let b = build_b(&cogenerator_completion(&a, &rep)?)?;
            let thresholds = hom_vector(&a, &b.summands)?;
            let v = json!({
                "in_orbit_closure": clorbit_member_genfinite(&x, &a, &rep)?,
                "closure_labels": rep.members.iter().map(summand_label).collect::<Result<Vec<_>>>()?,
                "hom_vector_m": hom_vector(&a, &rep.members)?,
                "hom_vector_n": hom_vector(&x, &rep.members)?,
                "desing_dimvec": desing_dimvec(a.dims(), &thresholds, &b)?,
            });
            ctx.report("rankvar", v, &[m, n])?;
        }
        Cmd::Grassmannian {
            x,
            d,
            by_submodule,
            format,
        } => {
            let m = ctx.module(x)?;
            let by = if *by_submodule {
                StrataBy::Submodule
            } else {
                StrataBy::Quotient
            };
            let r = grassmannian_report_by(&m, d, by, workers)?;
            match format {
                Format::Json => ctx.report("grassmannian", grassmannian_json(&r), &[x])?,
                Format::Tsv => ctx.emit(&grassmannian_tsv(&r), &[x])?,
            }
        }
        Cmd::DesingGr { m, d, side } => {
            let a = ctx.module(m)?;
            let r = match tower(&a, *side)? {
                Tower::Cogen(b) => grassmannian_desing_report_with(&a, d, &b, workers)?,
                Tower::Gen(g) => grassmannian_desing_report_generator(&a, d, &g, workers)?,
            };
            let pass = r.pass();
            ctx.report("desing-gr", desing_json(&r), &[m])?;
            if !pass {
                return Ok(4);
            }
        }
        Cmd::DesingOrbit { m, budget } => {
            let a = ctx.module(m)?;
            let rep = certified_closure(&a)?;
            let b = build_b(&cogenerator_completion(&a, &rep)?)?;
            let r = orbit_desing_report(&a, &b, &rep, *budget, workers)?;
            let pass = r.pass();
            let v = json!({
                "caveat": FINITE_FIELD_CAVEAT,
                "q": r.q,
                "dims": r.dims,
                "upstairs_dimvec": r.dimvec,
                "rep_points": r.rep_points,
                "orbit_closure_points": r.members.len(),
                "open_orbit_points": r.open_orbit.len(),
                "stable_points": r.stable_points,
                "upstairs_orbits": r.upstairs,
                "fiber_histogram": pairs(&r.fiber_histogram()),
                "checks": checks_json(&r.checks),
                "pass": pass,
            });
            ctx.report("desing-orbit", v, &[m])?;
            if !pass {
                return Ok(4);
            }
        }
        Cmd::Example {
            which: Example::NSubspace { n, q },
        } => {
            let f = Field::prime(*q)?;
            if *n == 0 {
                return Err(Error::Precondition("n must be positive".into()));
            }
            let a = subspace_algebra(*n, f)?;
            let alg = a.structure();
            let ws = &ctx.ws;
            let algebra_text =
                to_text(&serde_json::to_value(AlgebraFile::of(&a)?).expect("serialisable"));
            ws.write("algebra.json", &algebra_text, &[])?;
            let algebra = Path::new("algebra.json");
            let mut files = vec![("M.json".to_string(), subspace_module(&a)?)];
            for v in 0..alg.n_vertices() {
                files.push((format!("S{v}.json"), simple(alg, v)));
            }
            files.push(("Q0.json".to_string(), injective(alg, 0)));
            let mut listing = vec![];
            for (name, m) in &files {
                let text = to_text(
                    &serde_json::to_value(ModuleFile::of(m, "algebra.json")).expect("serialisable"),
                );
                ws.write(name, &text, &[algebra])?;
                listing.push(json!({"file": name, "dims": m.dims()}));
            }
            let v = json!({
                "n": n,
                "q": q,
                "algebra": "algebra.json",
                "algebra_dim": a.dim(),
                "modules": listing,
            });
            let mut v = v;
            let obj = v.as_object_mut().expect("object");
            obj.insert("schema".into(), json!(SCHEMA_VERSION));
            obj.insert("command".into(), json!("example n-subspace"));
            print!("{}", to_text(&v));
        }
    }
    Ok(0)
}

enum Tower {
    Cogen(CogenTilted),
    Gen(GenCotilted),
}

fn certified_cogen_closure(m: &Module) -> Result<GenClosureReport> {
    let r = cogen_closure(m, Caps::for_module(m))?;
    if r.status != ClosureStatus::CertifiedComplete {
        return Err(Error::CapReached(
            r.note
                .clone()
                .unwrap_or_else(|| "closure not certified".into()),
        ));
    }
    Ok(r)
}

fn tower(m: &Module, side: Side) -> Result<Tower> {
    Ok(match side {
        Side::Cogenerator => {
            let rep = certified_closure(m)?;
            Tower::Cogen(build_b(&cogenerator_completion(m, &rep)?)?)
        }
        Side::Generator => {
            let rep = certified_cogen_closure(m)?;
            Tower::Gen(build_b_generator(&generator_completion(m, &rep)?)?)
        }
    })
}

fn pairs(h: &BTreeMap<usize, usize>) -> Value {
    json!(h.iter().map(|(k, v)| [*k, *v]).collect::<Vec<_>>())
}

fn checks_json(c: &[IdentityCheck]) -> Value {
    json!(c
        .iter()
        .map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail}))
        .collect::<Vec<_>>())
}

fn certificate_json(c: &TiltingCertificate) -> Value {
    json!(c
        .checks
        .iter()
        .map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail}))
        .collect::<Vec<_>>())
}

fn closure_json(r: &GenClosureReport) -> Result<Value> {
    let mut members = vec![];
    for (x, k) in r.members.iter().zip(&r.trace_copies) {
        members.push(json!({"label": summand_label(x)?, "dims": x.dims(), "trace_copies": k}));
    }
    Ok(json!({
        "status": r.status.as_str(),
        "members": members,
        "caps": {"dim_cap": r.caps.dim_cap, "copy_cap": r.caps.copy_cap, "budget": r.caps.budget},
        "note": r.note,
    }))
}

fn grassmannian_json(r: &GrassmannianReport) -> Value {
    let strata: Vec<Value> = r
        .strata
        .iter()
        .enumerate()
        .map(|(i, s)| json!({"id": i, "label": s.label, "dims": s.class.dims(), "count": s.count, "tangents": pairs(&s.tangents)}))
        .collect();
    let points: Vec<Value> = r
        .points
        .iter()
        .map(|p| json!({"sub_dims": p.sub.dims, "stratum": p.stratum, "tangent": p.tangent, "singular_candidate": p.singular_candidate}))
        .collect();
    json!({
        "caveat": FINITE_FIELD_CAVEAT,
        "q": r.q,
        "d": r.d,
        "strata_by": r.by.as_str(),
        "total": r.total(),
        "strata": strata,
        "tangent_histogram": pairs(&r.tangent_histogram()),
        "singular_candidates": r.singular_candidates(),
        "points": points,
    })
}

fn grassmannian_tsv(r: &GrassmannianReport) -> String {
    let mut s = format!(
        "# {FINITE_FIELD_CAVEAT}\n# q={} d={:?} strata by {}\n",
        r.q,
        r.d,
        r.by.as_str()
    );
    s.push_str("class\tlabel\tdims\tpoints\ttangents\n");
    for (i, st) in r.strata.iter().enumerate() {
        let dims = st
            .class
            .dims()
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let tang = st
            .tangents
            .iter()
            .map(|(k, v)| format!("{k}:{v}"))
            .collect::<Vec<_>>()
            .join(",");
        s.push_str(&format!(
            "{i}\t{}\t{dims}\t{}\t{tang}\n",
            st.label, st.count
        ));
    }
    s
}

fn desing_json(r: &DesingReport) -> Value {
    let components: Vec<Value> = r
        .components
        .iter()
        .map(|c| {
            json!({
                "label": c.label,
                "dimvec": c.dimvec,
                "points": c.upstairs.total(),
                "tangent_histogram": pairs(&c.upstairs.tangent_histogram()),
                "tangent_constant": c.tangent_constant,
            })
        })
        .collect();
    json!({
        "caveat": FINITE_FIELD_CAVEAT,
        "q": r.downstairs.q,
        "d": r.downstairs.d,
        "strata_by": r.downstairs.by.as_str(),
        "downstairs": {
            "total": r.downstairs.total(),
            "strata": r.downstairs.strata.iter().map(|s| json!({"label": s.label, "count": s.count})).collect::<Vec<_>>(),
            "tangent_histogram": pairs(&r.downstairs.tangent_histogram()),
        },
        "components": components,
        "upstairs_total": r.components.iter().map(|c| c.upstairs.total()).sum::<usize>(),
        "fiber_histogram": pairs(&r.fiber_histogram()),
        "multiple_preimages": r
            .multiple_preimages()
            .iter()
            .map(|&i| json!({"point": i, "preimages": r.fibers[i], "tangent": r.downstairs.points[i].tangent}))
            .collect::<Vec<_>>(),
        "checks": checks_json(&r.checks),
        "pass": r.pass(),
    })
}
