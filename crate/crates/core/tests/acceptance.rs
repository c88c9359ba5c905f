//! Acceptance run on the n-subspace example. Prints one PASS/FAIL line per
//! criterion and fails if any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use tiltrep::geometry::{
    certified_closure, clorbit_member_genfinite, grassmannian_desing_report_generator,
    grassmannian_desing_report_with, grassmannian_report_by, orbit_desing_report, DesingReport,
    GrassmannianReport, RepSpace, StrataBy,
};
use tiltrep::linalg::{Elem, Field, Matrix};
use tiltrep::module::{
    decompose, ext1_dim, hom_dim, idim, is_isomorphic, quotient, simple, submodule, Module,
    DEFAULT_SEED,
};
use tiltrep::subrep::{cogen_closure, gen_closure, Caps, ClosureStatus};
use tiltrep::subspace::{subspace_algebra, subspace_module};
use tiltrep::tilt::dual::{
    check_int_ext_theorem_generator, intermediate_extension_generator, restrict_e_generator,
};
use tiltrep::tilt::tilting::in_add;
use tiltrep::tilt::{
    build_b, build_b_generator, check_int_ext_theorem, cogenerator_completion,
    compare_with_opposite, generator_completion, intermediate_extension, restrict_e, summand_label,
    CoGammaRoute, CogenTilted, GammaRoute, GenCotilted,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn e(x: tiltrep::Error) -> String {
    x.to_string()
}

fn example(n: usize, q: u64) -> Result<Module, String> {
    let a = subspace_algebra(n, Field::prime(q).map_err(e)?).map_err(e)?;
    subspace_module(&a).map_err(e)
}

fn tower(m: &Module) -> Result<CogenTilted, String> {
    let rep = certified_closure(m).map_err(e)?;
    build_b(&cogenerator_completion(m, &rep).map_err(e)?).map_err(e)
}

fn generator_tower(dm: &Module) -> Result<GenCotilted, String> {
    let rep = cogen_closure(dm, Caps::for_module(dm)).map_err(e)?;
    ensure!(
        rep.status == ClosureStatus::CertifiedComplete,
        "cogenerated closure of DM is {}",
        rep.status.as_str()
    );
    build_b_generator(&generator_completion(dm, &rep).map_err(e)?).map_err(e)
}

fn labels(members: &[Module]) -> Result<BTreeSet<String>, String> {
    members
        .iter()
        .map(|x| summand_label(x).map_err(e))
        .collect()
}

fn expected_labels(n: usize, extra: &str) -> BTreeSet<String> {
    (0..=n)
        .map(|v| format!("S{v}"))
        .chain([extra.to_string()])
        .collect()
}

fn iso(x: &Module, y: &Module) -> Result<bool, String> {
    Ok(is_isomorphic(x, y, DEFAULT_SEED).map_err(e)?.is_some())
}

fn ac1() -> Outcome {
    for n in [2, 3] {
        let m = example(n, 2)?;
        let rep = gen_closure(&m, Caps::for_module(&m)).map_err(e)?;
        ensure!(
            rep.status == ClosureStatus::CertifiedComplete,
            "n={n}: closure is {}",
            rep.status.as_str()
        );
        let got = labels(&rep.members)?;
        ensure!(got == expected_labels(n, "Q0"), "n={n}: closure {got:?}");
    }
    Ok(())
}

fn ac2() -> Outcome {
    let m = example(2, 3)?;
    let b = tower(&m)?;
    ensure!(b.alg().dim() == 9, "dim B = {}", b.alg().dim());
    ensure!(
        b.corner_is_base().map_err(e)?,
        "eBe is not identified with A"
    );
    let (corner, _) = b.corner_algebra().map_err(e)?;
    ensure!(corner.dim() == 5, "dim eBe = {}", corner.dim());

    let route = GammaRoute::new(&b).map_err(e)?;
    let gamma = route.gamma();
    ensure!(gamma.dim() == 7, "dim Gamma = {}", gamma.dim());
    let counts = gamma.quiver_arrow_counts().map_err(e)?;
    let nv = gamma.n_vertices();
    let arrows: usize = counts.iter().flatten().sum();
    ensure!(
        nv == 4 && arrows == 3,
        "Gamma quiver has {nv} vertices, {arrows} arrows"
    );
    ensure!(gamma.dim() == nv + arrows, "Gamma has paths of length two");
    let indeg = |v: usize| (0..nv).map(|s| counts[s][v]).sum::<usize>();
    let outdeg = |v: usize| counts[v].iter().sum::<usize>();
    let hub = (0..nv)
        .filter(|&v| indeg(v) == 2 && outdeg(v) == 1)
        .collect::<Vec<_>>();
    ensure!(
        hub.len() == 1,
        "no unique vertex with two incoming arrows and one outgoing"
    );
    let sink = (0..nv).find(|&t| counts[hub[0]][t] == 1).unwrap();
    ensure!(outdeg(sink) == 0, "the hub does not map to a sink");

    ensure!(
        route.certificate.pass(),
        "tilting certificate: {:?}",
        route.certificate.checks
    );
    ensure!(
        route.certificate.check("special").is_some_and(|c| c.pass),
        "T is not special"
    );
    ensure!(route.agrees_with(&b), "End(T)^op differs from B");
    let p_parts = decompose(&route.p, DEFAULT_SEED)
        .map_err(e)?
        .indecomposables();
    let mut from_p = 0;
    let mut simples = 0;
    for part in &route.t_parts {
        if in_add(part, &p_parts).map_err(e)? {
            from_p += 1;
        } else if part.dim() == 1 {
            simples += 1;
        }
    }
    ensure!(
        from_p == 3 && simples == 1,
        "T splits as {from_p} summands of P and {simples} simples"
    );
    let q0 = b.injective_at[0];
    ensure!(
        iso(&route.t_parts[q0], &simple(gamma, q0))?,
        "the summand at Q(0) is not simple"
    );
    Ok(())
}

fn ac3() -> Outcome {
    let m = example(2, 3)?;
    let rep = certified_closure(&m).map_err(e)?;
    let b = build_b(&cogenerator_completion(&m, &rep).map_err(e)?).map_err(e)?;
    let cm = intermediate_extension(&m, &b).map_err(e)?;
    ensure!(cm.dims() == [2, 2, 2, 1], "dims c(M) = {:?}", cm.dims());
    ensure!(
        iso(&restrict_e(&cm, &b).map_err(e)?, &m)?,
        "restriction of c(M) is not M"
    );
    let id = idim(&cm, 4).map_err(e)?;
    ensure!(id.is_some_and(|d| d <= 1), "idim c(M) = {id:?}");
    for n in &rep.members {
        let cn = intermediate_extension(n, &b).map_err(e)?;
        let x = ext1_dim(&cn, &cm).map_err(e)?;
        ensure!(
            x == 0,
            "Ext^1(c({}), c(M)) = {x}",
            summand_label(n).map_err(e)?
        );
    }
    let route = GammaRoute::new(&b).map_err(e)?;
    let mut samples = rep.members.clone();
    samples.push(m.clone());
    for chk in check_int_ext_theorem(&b, &route, &samples).map_err(e)? {
        ensure!(chk.pass, "{}: {}", chk.name, chk.detail);
    }
    Ok(())
}

/// Normalised spanning vectors of the lines in `K^k`.
fn lines(f: &Field, k: usize) -> Vec<Vec<Elem>> {
    let els = f.elements().expect("finite field");
    let mut out = vec![];
    for lead in 0..k {
        let free = k - lead - 1;
        let mut idx = vec![0usize; free];
        loop {
            let mut v = vec![f.zero(); k];
            v[lead] = f.one();
            for (j, &i) in idx.iter().enumerate() {
                v[lead + 1 + j] = els[i].clone();
            }
            out.push(v);
            let Some(pos) = idx.iter().rposition(|&i| i + 1 < els.len()) else {
                break;
            };
            idx[pos] += 1;
            for i in &mut idx[pos + 1..] {
                *i = 0;
            }
        }
    }
    out
}

/// Every choice of one line per vertex that the arrows preserve, checked
/// directly on the arrow matrices.
fn line_subreps(x: &Module) -> Vec<Vec<Vec<Elem>>> {
    let f = x.field();
    let alg = x.alg();
    let per_vertex: Vec<Vec<Vec<Elem>>> = x.dims().iter().map(|&k| lines(f, k)).collect();
    let mut out = vec![];
    let mut choice = vec![0usize; per_vertex.len()];
    loop {
        let pick: Vec<Vec<Elem>> = choice
            .iter()
            .enumerate()
            .map(|(v, &i)| per_vertex[v][i].clone())
            .collect();
        let closed = (0..alg.gens().len()).all(|g| {
            let be = alg.gen_elt(g);
            let image = x.map(g).mul_vec(&pick[be.src]);
            Matrix::from_cols(f, pick[be.tgt].len(), &[pick[be.tgt].clone(), image]).rank() <= 1
        });
        if closed {
            out.push(pick);
        }
        let Some(pos) = (0..choice.len())
            .rev()
            .find(|&v| choice[v] + 1 < per_vertex[v].len())
        else {
            break;
        };
        choice[pos] += 1;
        for c in &mut choice[pos + 1..] {
            *c = 0;
        }
    }
    out
}

/// Count and tangent histogram of `Gr(x, (1,..,1))` from the line oracle.
fn line_oracle(x: &Module) -> Result<(usize, BTreeMap<usize, usize>), String> {
    let f = x.field();
    let pts = line_subreps(x);
    let mut hist = BTreeMap::new();
    for p in &pts {
        let bases: Vec<Matrix> = p.iter().map(|v| Matrix::column_vector(f, v)).collect();
        let u = submodule(x, &bases).map_err(e)?.src;
        let rest = quotient(x, &bases).map_err(e)?.tgt;
        *hist.entry(hom_dim(&u, &rest).map_err(e)?).or_insert(0) += 1;
    }
    Ok((pts.len(), hist))
}

fn strata_counts(r: &GrassmannianReport) -> Vec<usize> {
    let mut c: Vec<usize> = r.strata.iter().map(|s| s.count).collect();
    c.sort_unstable_by(|a, b| b.cmp(a));
    c
}

fn upstairs_counts(r: &DesingReport) -> Vec<usize> {
    let mut c: Vec<usize> = r.components.iter().map(|c| c.upstairs.total()).collect();
    c.sort_unstable_by(|a, b| b.cmp(a));
    c
}

/// The desingularisation is bijective away from one point `U0` of the large
/// stratum, which has `fiber` preimages and lies in the closure of the small
/// stratum.
fn check_single_double_point(r: &DesingReport, fiber: usize) -> Outcome {
    let multi = r.multiple_preimages();
    ensure!(
        multi.len() == 1,
        "{} points with several preimages",
        multi.len()
    );
    let u0 = multi[0];
    ensure!(r.fibers[u0] == fiber, "U0 has {} preimages", r.fibers[u0]);
    ensure!(
        r.fibers.iter().enumerate().all(|(i, &k)| i == u0 || k == 1),
        "fiber other than 1 away from U0"
    );
    let big = (0..r.downstairs.strata.len())
        .max_by_key(|&s| r.downstairs.strata[s].count)
        .unwrap();
    ensure!(
        r.downstairs.points[u0].stratum == big,
        "U0 is not in the open stratum"
    );
    ensure!(
        r.downstairs.points[u0].tangent == 3,
        "U0 has tangent dimension {}",
        r.downstairs.points[u0].tangent
    );
    let small = r
        .components
        .iter()
        .min_by_key(|c| c.upstairs.total())
        .unwrap();
    let image: BTreeSet<usize> = small.images.iter().copied().collect();
    let mut closure: BTreeSet<usize> = (0..r.downstairs.points.len())
        .filter(|&i| r.downstairs.points[i].stratum != big)
        .collect();
    closure.insert(u0);
    ensure!(
        image == closure,
        "small component covers {} points, closure of the small stratum has {}",
        image.len(),
        closure.len()
    );
    Ok(())
}

fn ac4() -> Outcome {
    let d = [1, 1, 1];
    for q in [2u64, 3] {
        let m = example(2, q)?;
        let b = tower(&m)?;
        let r = grassmannian_desing_report_with(&m, &d, &b, 2).map_err(e)?;
        ensure!(r.pass(), "q={q}: {:?}", r.checks);
        let total = r.downstairs.total();
        let closed_form = ((q + 1) * (q + 1) + q) as usize;
        let (oracle, oracle_hist) = line_oracle(&m)?;
        ensure!(
            total == closed_form && total == oracle,
            "q={q}: {total} points, oracle {oracle}, closed form {closed_form}"
        );
        ensure!(
            r.downstairs.tangent_histogram() == oracle_hist,
            "q={q}: tangent histogram differs from the oracle"
        );
        let small = q as usize + 1;
        let big = ((q + 1) * (q + 1)) as usize;
        ensure!(
            strata_counts(&r.downstairs) == [big, q as usize],
            "q={q}: strata {:?}",
            strata_counts(&r.downstairs)
        );
        let mut labelled: Vec<(usize, &str)> = r
            .downstairs
            .strata
            .iter()
            .map(|s| (s.count, s.label.as_str()))
            .collect();
        labelled.sort_unstable();
        ensure!(
            labelled == [(q as usize, "Q0"), (big, "S0+S1+S2")],
            "q={q}: strata by quotient {labelled:?}"
        );
        ensure!(
            upstairs_counts(&r) == [big, small],
            "q={q}: upstairs {:?}",
            upstairs_counts(&r)
        );
        check_single_double_point(&r, 2)?;
        if q == 2 {
            let want: BTreeMap<usize, usize> = [(1, 2), (2, 8), (3, 1)].into();
            ensure!(
                r.downstairs.tangent_histogram() == want,
                "tangents {:?}",
                r.downstairs.tangent_histogram()
            );
            for c in &r.components {
                let t: Vec<usize> = c.upstairs.tangent_histogram().into_keys().collect();
                let want = if c.upstairs.total() == 9 { 2 } else { 1 };
                ensure!(
                    t == [want],
                    "upstairs of size {} has tangents {t:?}",
                    c.upstairs.total()
                );
            }
        }
    }
    Ok(())
}

fn ac5() -> Outcome {
    let m = example(2, 2)?;
    let rep = certified_closure(&m).map_err(e)?;
    let b = build_b(&cogenerator_completion(&m, &rep).map_err(e)?).map_err(e)?;
    let r = orbit_desing_report(&m, &b, &rep, 1 << 20, 2).map_err(e)?;
    ensure!(r.pass(), "{:?}", r.checks);
    ensure!(
        r.rep_points == 256,
        "{} representation points",
        r.rep_points
    );
    ensure!(
        r.members.len() == 46,
        "{} points in the orbit closure",
        r.members.len()
    );

    // rank [N1 N2] <= 1, and the lines of K^2 containing both images
    let space = RepSpace::new(m.alg(), m.dims(), 1 << 20).map_err(e)?;
    let f = m.field();
    let members: BTreeSet<u64> = r.members.iter().copied().collect();
    let ls = lines(f, 2);
    let mut incidences = 0;
    let mut determinantal = 0;
    let mut fibers = BTreeMap::new();
    for idx in 0..space.size {
        let n = space
            .point(idx)
            .ok_or("hereditary representation rejected")?;
        let joint = n.map(0).hstack(n.map(1));
        let low_rank = joint.rank() <= 1;
        ensure!(
            low_rank == members.contains(&idx)
                && low_rank == clorbit_member_genfinite(&n, &m, &rep).map_err(e)?,
            "membership disagrees at point {idx}"
        );
        determinantal += usize::from(low_rank);
        let through = ls
            .iter()
            .filter(|l| Matrix::from_cols(f, 2, &[l.to_vec()]).hstack(&joint).rank() <= 1)
            .count();
        incidences += through;
        if through > 0 {
            *fibers.entry(through).or_insert(0) += 1;
        }
    }
    // the zero representation, and 3 lines times 15 nonzero pairs on each
    ensure!(
        determinantal == 1 + 3 * 15,
        "{determinantal} points of rank at most one"
    );
    ensure!(
        incidences == 48 && r.upstairs == 48,
        "upstairs {} , incidence oracle {incidences}",
        r.upstairs
    );
    ensure!(
        r.fiber_histogram() == fibers,
        "fibers {:?}, oracle {fibers:?}",
        r.fiber_histogram()
    );
    let want: BTreeMap<usize, usize> = [(1, 45), (3, 1)].into();
    ensure!(fibers == want, "fibers {fibers:?}");
    Ok(())
}

fn ac6() -> Outcome {
    for (name, salt, check) in common::PROPERTIES {
        common::run(*salt, check).map_err(|m| format!("{name}: {m}"))?;
    }
    Ok(())
}

fn ac7() -> Outcome {
    for n in [2, 3] {
        let m = example(n, 2)?;
        let dm = m.dual();
        let rep = cogen_closure(&dm, Caps::for_module(&dm)).map_err(e)?;
        ensure!(
            rep.status == ClosureStatus::CertifiedComplete,
            "n={n}: closure is {}",
            rep.status.as_str()
        );
        let gen = gen_closure(&m, Caps::for_module(&m)).map_err(e)?;
        ensure!(
            rep.members.len() == gen.members.len(),
            "n={n}: closure sizes differ"
        );
        for x in &gen.members {
            let dx = x.dual();
            let mut hit = false;
            for y in &rep.members {
                hit |= iso(y, &dx)?;
            }
            ensure!(
                hit,
                "n={n}: dual of {} missing",
                summand_label(x).map_err(e)?
            );
        }
        ensure!(
            labels(&rep.members)? == expected_labels(n, "P0"),
            "n={n}: closure {:?}",
            labels(&rep.members)?
        );
    }

    let m = example(2, 3)?;
    let dm = m.dual();
    let b = tower(&m)?;
    let g = generator_tower(&dm)?;
    ensure!(g.alg().dim() == 9, "dim B' = {}", g.alg().dim());
    ensure!(
        g.corner_is_base().map_err(e)?,
        "eB'e is not identified with the base"
    );
    let route = CoGammaRoute::new(&g).map_err(e)?;
    ensure!(
        route.gamma().dim() == 7,
        "dim Gamma' = {}",
        route.gamma().dim()
    );
    ensure!(
        route.certificate.pass(),
        "cotilting certificate: {:?}",
        route.certificate.checks
    );
    ensure!(route.agrees_with(&g), "End(C)^op differs from B'");
    let cmp = compare_with_opposite(&b, &g).map_err(e)?;
    ensure!(cmp.is_anti_iso(&b, &g), "B' is not opposite to B");
    let cm = intermediate_extension(&m, &b).map_err(e)?;
    let cdm = intermediate_extension_generator(&dm, &g).map_err(e)?;
    ensure!(
        iso(&cmp.dual_module(&cm, &b, &g).map_err(e)?, &cdm)?,
        "D c(M) differs from the dual extension of DM"
    );
    ensure!(
        iso(&restrict_e_generator(&cdm, &g).map_err(e)?, &dm)?,
        "restriction is not DM"
    );
    let mut samples: Vec<Module> = (0..3).map(|v| simple(&g.base, v)).collect();
    samples.push(dm.clone());
    for chk in check_int_ext_theorem_generator(&g, &route, &samples).map_err(e)? {
        ensure!(chk.pass, "{}: {}", chk.name, chk.detail);
    }

    let d = [1, 1, 1];
    for q in [2u64, 3] {
        let m = example(2, q)?;
        let dm = m.dual();
        let g = generator_tower(&dm)?;
        let gr = grassmannian_report_by(&dm, &d, StrataBy::Submodule, 2).map_err(e)?;
        let total = ((q + 1) * (q + 1) + q) as usize;
        let big = total - q as usize;
        ensure!(gr.total() == total, "q={q}: {} points", gr.total());
        ensure!(
            strata_counts(&gr) == [big, q as usize],
            "q={q}: strata {:?}",
            strata_counts(&gr)
        );
        let r = grassmannian_desing_report_generator(&dm, &d, &g, 2).map_err(e)?;
        ensure!(r.pass(), "q={q}: {:?}", r.checks);
        ensure!(
            upstairs_counts(&r) == [big, q as usize + 1],
            "q={q}: upstairs {:?}",
            upstairs_counts(&r)
        );
        check_single_double_point(&r, 2)?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 7] = [
        (
            "AC1",
            "generated closure of M is certified: simples and Q(0)",
            ac1,
        ),
        (
            "AC2",
            "B, Gamma and the special tilting module of the example",
            ac2,
        ),
        ("AC3", "intermediate extension c(M) and its identities", ac3),
        ("AC4", "Grassmannian desingularisation, q = 2 and 3", ac4),
        ("AC5", "orbit closure desingularisation over F2", ac5),
        ("AC6", "property suite on the random corpus", ac6),
        ("AC7", "generator side over the opposite algebra", ac7),
    ];
    let mut failed = vec![];
    for (id, what, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        match outcome {
            Ok(()) => println!("PASS {id} {what}"),
            Err(msg) => {
                println!("FAIL {id} {what}: {msg}");
                failed.push(id);
            }
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
