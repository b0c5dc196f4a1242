//! Command dispatch.

use std::path::PathBuf;
use std::sync::Arc;

use dhom_core::derived::{indec_derived, DerivedIndec, Origin, DERIVED_DIM_CAP};
use dhom_core::higher::{enumerate_wide, find_d_cluster_tilting, is_d_cluster_tilting, HomologicalPair};
use dhom_core::homoepi::{certify, construct_homoepi, EpiOfPairs};
use dhom_core::modcat::{
    almost_split_sequence, ar_translate, decompose, find_iso, global_dimension, indecomposables, is_injective_indec,
    is_projective_indec, Representation,
};
use dhom_core::quivalg::{build_algebra, AlgRef};
use dhom_core::univloc::{theorem_b_report, BijectionReport, InitialityOutcome};
use serde_json::{json, Value};

use crate::fixtures::{resolve, Input};
use crate::names::complex_terms;
use crate::report::{add, direct_sum, pick, shift_closure, table, yes, AlgebraSummary, Output, Report};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    CheckDct,
    Wide,
    Homoepi,
    Univloc,
    TheoremB,
    ArQuiver,
    DerivedIndec,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CheckDct => "check-dct",
            Command::Wide => "wide",
            Command::Homoepi => "homoepi",
            Command::Univloc => "univloc",
            Command::TheoremB => "theorem-b",
            Command::ArQuiver => "ar-quiver",
            Command::DerivedIndec => "derived-indec",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub include_zero: bool,
    /// Cap on the dimension of enumerated modules.
    pub dim_cap: usize,
    /// Maximal number of terms in the derived search; `gldim + 1` when unset.
    pub window: Option<usize>,
    pub names: Option<PathBuf>,
}

impl Default for Options {
    fn default() -> Options {
        Options { include_zero: false, dim_cap: dhom_core::modcat::dim_cap_from_env(), window: None, names: None }
    }
}

struct Ctx {
    input: Input,
    alg: AlgRef,
    opts: Options,
    gldim: usize,
    modules: Vec<Representation>,
    module_names: Vec<String>,
}

impl Ctx {
    fn new(input: Input, opts: &Options) -> Result<Ctx, CliError> {
        let spec = input.doc.to_spec()?;
        let alg: AlgRef = Arc::new(build_algebra(&spec)?);
        let gldim = global_dimension(&alg)?;
        let modules = indecomposables(&alg, opts.dim_cap)?;
        let module_names = modules.iter().enumerate().map(|(i, m)| input.names.module_name(i, m)).collect();
        Ok(Ctx { input, alg, opts: opts.clone(), gldim, modules, module_names })
    }

    fn title(&self) -> String {
        self.input.doc.name.clone().unwrap_or_else(|| "unnamed algebra".into())
    }

    fn summary(&self) -> AlgebraSummary {
        let doc = &self.input.doc;
        AlgebraSummary {
            name: self.title(),
            field: doc.field.clone(),
            vertices: doc.vertices.len(),
            arrows: doc.arrows.len(),
            relations: doc.relations.len(),
            dim: self.alg.dim(),
            d: doc.d,
            gldim: self.gldim,
        }
    }

    fn module_name(&self, m: &Representation) -> String {
        match find_iso(&self.modules, m) {
            Some(i) => self.module_names[i].clone(),
            None => format!("{:?}", m.dim_vector()),
        }
    }

    fn pair(&self) -> Result<HomologicalPair, CliError> {
        Ok(HomologicalPair::from_search(&self.alg, self.input.doc.d, self.opts.dim_cap)?)
    }

    fn f_names(&self, pair: &HomologicalPair) -> Vec<String> {
        pair.f.generators.iter().map(|g| self.module_name(g)).collect()
    }

    fn candidates(&self) -> Result<Vec<DerivedIndec>, CliError> {
        let window = self.opts.window.unwrap_or(self.gldim + 1);
        Ok(indec_derived(&self.alg, window, self.opts.dim_cap.min(DERIVED_DIM_CAP))?)
    }

    fn orbit_names(&self, cands: &[DerivedIndec]) -> Vec<String> {
        self.input.names.orbit_names(&self.alg, &self.module_names, cands)
    }

    fn output(&self, command: Command, result: Value, anomalies: Vec<String>, pass: bool, body: String) -> Output {
        let report = Report {
            command: command.name().into(),
            algebra: self.summary(),
            result,
            anomalies,
            pass,
            seed: None,
        };
        let markdown = format!("# {}: {}\n\n{}\npass: {}\n", command.name(), self.title(), body, pass);
        Output { report, markdown }
    }
}

/// Resolves `spec` and runs `command` on it.
pub fn run(command: Command, spec: &str, opts: &Options) -> Result<Output, CliError> {
    let input = resolve(spec, opts.names.as_deref())?;
    let ctx = Ctx::new(input, opts)?;
    match command {
        Command::CheckDct => check_dct(&ctx),
        Command::Wide => wide(&ctx),
        Command::Homoepi => homoepi(&ctx),
        Command::Univloc => univloc(&ctx),
        Command::TheoremB => theorem_b(&ctx),
        Command::ArQuiver => ar_quiver(&ctx),
        Command::DerivedIndec => derived_indec(&ctx),
    }
}

fn check_dct(ctx: &Ctx) -> Result<Output, CliError> {
    let d = ctx.input.doc.d;
    let found = find_d_cluster_tilting(&ctx.modules, d)?;
    let sets: Vec<Vec<String>> = found.iter().map(|c| c.generators.iter().map(|g| ctx.module_name(g)).collect()).collect();
    let within = ctx.gldim <= d;
    let mut anomalies = Vec::new();
    let mut body = format!("indecomposables: {}\n\n", ctx.module_names.join(", "));
    body.push_str(&format!("global dimension: {}\n\n", ctx.gldim));
    let certificate = match found.as_slice() {
        [f] => {
            let cert = is_d_cluster_tilting(&ctx.modules, f, d)?;
            body.push_str(&format!("F = {}\n\n", add(&sets[0])));
            body.push_str(&format!("F is {d}-cluster-tilting: {}\n", cert.pass));
            if !within {
                anomalies.push(format!("global dimension {} exceeds d = {d}", ctx.gldim));
            }
            if !cert.pass {
                anomalies.push(cert.witness.clone().unwrap_or_else(|| "certificate failed".into()));
            }
            serde_json::to_value(cert).expect("certificates serialize")
        }
        _ => {
            body.push_str(&format!("{}-cluster-tilting subcategories found: {}\n", d, found.len()));
            for s in &sets {
                body.push_str(&format!("- {}\n", add(s)));
            }
            anomalies.push(format!("expected one {d}-cluster-tilting subcategory, found {}", found.len()));
            Value::Null
        }
    };
    let result = json!({
        "d": d,
        "gldim_at_most_d": within,
        "indecomposables": ctx.module_names,
        "cluster_tilting": sets,
        "certificate": certificate,
    });
    let pass = anomalies.is_empty();
    Ok(ctx.output(Command::CheckDct, result, anomalies, pass, body))
}

fn wide(ctx: &Ctx) -> Result<Output, CliError> {
    let pair = ctx.pair()?;
    let f = ctx.f_names(&pair);
    let e = enumerate_wide(&pair, ctx.opts.include_zero)?;
    let rows: Vec<Vec<String>> =
        e.wide.iter().enumerate().map(|(j, w)| vec![(j + 1).to_string(), add(&pick(&f, w))]).collect();
    let cand_rows: Vec<Vec<String>> = e
        .candidates
        .iter()
        .map(|c| {
            let rt = c.round_trip.map_or("-", yes);
            vec![add(&pick(&f, &c.indices)), yes(c.definitional).into(), rt.into()]
        })
        .collect();
    let mut body = format!("F = {}\n\n## Wide subcategories\n\n", add(&f));
    body.push_str(&table(&["j", "W_j"], &rows));
    body.push_str("\n## Candidates\n\n");
    body.push_str(&table(&["subset", "wide", "round trip"], &cand_rows));
    let anomalies: Vec<String> =
        e.anomalies.iter().map(|a| format!("wide checks disagree on {}", add(&pick(&f, a)))).collect();
    let result = json!({
        "F": f,
        "wide": e.wide.iter().enumerate().map(|(j, w)| json!({"j": j + 1, "generators": pick(&f, w)})).collect::<Vec<_>>(),
        "candidates": e.candidates.iter().map(|c| json!({
            "generators": pick(&f, &c.indices),
            "definitional": c.definitional,
            "round_trip": c.round_trip,
        })).collect::<Vec<_>>(),
    });
    let pass = anomalies.is_empty();
    Ok(ctx.output(Command::Wide, result, anomalies, pass, body))
}

/// Names of the summands of the reflection `s`, in canonical module order.
fn reflection_summands(ctx: &Ctx, e: &EpiOfPairs) -> Result<Vec<String>, CliError> {
    let dec = decompose(&e.reflection.s)?;
    let mut idx: Vec<(Option<usize>, String)> =
        dec.pieces.iter().map(|p| (find_iso(&ctx.modules, p), ctx.module_name(p))).collect();
    idx.sort();
    Ok(idx.into_iter().map(|(_, n)| n).collect())
}

fn is_iso(e: &EpiOfPairs) -> bool {
    let m = &e.phi.matrix;
    m.rows() == m.cols() && m.rank() == m.rows()
}

struct EpiRow {
    w: Vec<usize>,
    gamma: String,
    gamma_dim: usize,
    pushdown: Vec<usize>,
    phi: String,
    s: Vec<String>,
    iso: bool,
    tor: Vec<usize>,
    ring_epi: bool,
    homological: bool,
    fully_faithful: bool,
    pass: bool,
}

fn epi_rows(ctx: &Ctx, pair: &HomologicalPair) -> Result<(Vec<EpiRow>, Vec<String>), CliError> {
    let f = ctx.f_names(pair);
    let mut anomalies = Vec::new();
    let mut rows = Vec::new();
    for w in enumerate_wide(pair, false)?.wide {
        let e = construct_homoepi(pair, &pair.sub(&w))?;
        let c = certify(pair, &e)?;
        let s = reflection_summands(ctx, &e)?;
        let iso = is_iso(&e);
        let mut gamma = format!("End({})", direct_sum(&s));
        if iso {
            gamma.push_str(" ≅ Φ");
        }
        if !c.pass {
            anomalies.push(format!(
                "epimorphism for {} fails: {}",
                add(&pick(&f, &w)),
                c.epi.witness.clone().unwrap_or_else(|| "construction checks".into())
            ));
        }
        rows.push(EpiRow {
            gamma,
            gamma_dim: e.gamma.dim(),
            pushdown: e.pushdown.clone(),
            phi: format!("1_Φ ↦ id_{{{}}}", direct_sum(&s)),
            s,
            iso,
            tor: c.epi.tor.clone(),
            ring_epi: c.epi.ring_epi,
            homological: c.epi.homological,
            fully_faithful: c.fully_faithful,
            pass: c.pass,
            w,
        });
    }
    Ok((rows, anomalies))
}

fn epi_table(f: &[String], rows: &[EpiRow]) -> String {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .enumerate()
        .map(|(j, r)| vec![(j + 1).to_string(), r.gamma.clone(), r.gamma_dim.to_string(), add(&pick(f, &r.pushdown)), r.phi.clone()])
        .collect();
    table(&["j", "Γ_j", "dim Γ_j", "φ_j*(G_j)", "φ_j"], &cells)
}

fn epi_json(f: &[String], rows: &[EpiRow]) -> Vec<Value> {
    rows.iter()
        .enumerate()
        .map(|(j, r)| {
            json!({
                "j": j + 1,
                "W": pick(f, &r.w),
                "reflection": r.s,
                "gamma": r.gamma,
                "gamma_dim": r.gamma_dim,
                "gamma_iso_phi": r.iso,
                "pushdown": pick(f, &r.pushdown),
                "phi": r.phi,
                "ring_epi": r.ring_epi,
                "tor": r.tor,
                "homological": r.homological,
                "fully_faithful": r.fully_faithful,
                "certified": r.pass,
            })
        })
        .collect()
}

fn homoepi(ctx: &Ctx) -> Result<Output, CliError> {
    let pair = ctx.pair()?;
    let f = ctx.f_names(&pair);
    let (rows, anomalies) = epi_rows(ctx, &pair)?;
    let mut body = format!("F = {}\n\n## Homological epimorphisms of {}-homological pairs\n\n", add(&f), pair.d);
    body.push_str(&epi_table(&f, &rows));
    body.push_str("\n## Certificates\n\n");
    let cells: Vec<Vec<String>> = rows
        .iter()
        .enumerate()
        .map(|(j, r)| {
            let tor: Vec<String> = r.tor.iter().map(|t| t.to_string()).collect();
            vec![
                (j + 1).to_string(),
                yes(r.ring_epi).into(),
                format!("({})", tor.join(", ")),
                yes(r.fully_faithful).into(),
                yes(r.pass).into(),
            ]
        })
        .collect();
    body.push_str(&table(&["j", "ring epi", "Tor_1..d", "fully faithful", "certified"], &cells));
    let result = json!({ "F": f, "rows": epi_json(&f, &rows) });
    let pass = anomalies.is_empty();
    Ok(ctx.output(Command::Homoepi, result, anomalies, pass, body))
}

fn loc_table(orbits: &[String], b: &BijectionReport) -> String {
    let n = orbits.len();
    let cells: Vec<Vec<String>> = b
        .rows
        .iter()
        .enumerate()
        .map(|(j, r)| {
            vec![
                (j + 1).to_string(),
                shift_closure(&pick(orbits, &r.uperp), r.uperp.len() == n),
                shift_closure(&pick(orbits, &r.u), r.u.len() == n),
            ]
        })
        .collect();
    table(&["j", "U_j^⊥", "U_j"], &cells)
}

fn initiality_summary(r: &dhom_core::univloc::BijectionRow) -> (usize, usize, bool) {
    let mut factored = 0;
    let mut skipped = 0;
    let mut unique = true;
    for i in &r.initiality {
        match i.outcome {
            InitialityOutcome::Factored { unique: u } => {
                factored += 1;
                unique &= u;
            }
            InitialityOutcome::Skipped { .. } => skipped += 1,
        }
    }
    (factored, skipped, unique)
}

fn checks_table(f: &[String], b: &BijectionReport) -> String {
    let cells: Vec<Vec<String>> = b
        .rows
        .iter()
        .enumerate()
        .map(|(j, r)| {
            let (fac, skip, unique) = initiality_summary(r);
            vec![
                (j + 1).to_string(),
                add(&pick(f, &r.w)),
                yes(r.property_1).into(),
                yes(r.property_2).into(),
                yes(r.intersection).into(),
                yes(r.t_structure).into(),
                format!("{fac} factored{}, {skip} skipped", if unique { " uniquely" } else { "" }),
                yes(r.round_trip).into(),
            ]
        })
        .collect();
    table(
        &["j", "W_j", "functorially finite", "property 2", "U^⊥ ∩ F̄ = φ_*(Ḡ)", "stable t-structure", "initiality", "round trip"],
        &cells,
    )
}

fn univloc_json(orbits: &[String], f: &[String], b: &BijectionReport) -> Vec<Value> {
    b.rows
        .iter()
        .enumerate()
        .map(|(j, r)| {
            json!({
                "j": j + 1,
                "W": pick(f, &r.w),
                "uperp": pick(orbits, &r.uperp),
                "u": pick(orbits, &r.u),
                "u_thick": r.u_thick,
                "u_all_stalks": r.u_all_stalks,
                "property_1": r.property_1,
                "property_2": r.property_2,
                "intersection": r.intersection,
                "t_structure": r.t_structure,
                "initiality": r.initiality.iter().map(|i| json!({
                    "target": i.target,
                    "outcome": match i.outcome {
                        InitialityOutcome::Factored { unique } => json!({"factored": {"unique": unique}}),
                        InitialityOutcome::Skipped { generator } => json!({"skipped": {"generator": orbits[generator]}}),
                    },
                })).collect::<Vec<_>>(),
                "round_trip": r.round_trip,
            })
        })
        .collect()
}

fn report_anomalies(orbits: &[String], b: &BijectionReport) -> Vec<String> {
    let mut out = b.anomalies.clone();
    for u in &b.unmatched_localizations {
        out.push(format!("unmatched localizing set {}", shift_closure(&pick(orbits, u), false)));
    }
    out
}

fn univloc(ctx: &Ctx) -> Result<Output, CliError> {
    let pair = ctx.pair()?;
    let f = ctx.f_names(&pair);
    let cands = ctx.candidates()?;
    let orbits = ctx.orbit_names(&cands);
    let b = theorem_b_report(&pair, &cands)?;
    let mut body = format!("derived shift orbits: {}\n\n## Wide subcategories U_j\n\n", orbits.join(", "));
    body.push_str(&loc_table(&orbits, &b));
    body.push_str("\n## Checks\n\n");
    body.push_str(&checks_table(&f, &b));
    let anomalies = report_anomalies(&orbits, &b);
    let result = json!({ "orbits": orbits, "rows": univloc_json(&orbits, &f, &b) });
    let pass = anomalies.is_empty();
    Ok(ctx.output(Command::Univloc, result, anomalies, pass, body))
}

fn theorem_b(ctx: &Ctx) -> Result<Output, CliError> {
    let pair = ctx.pair()?;
    let f = ctx.f_names(&pair);
    let cands = ctx.candidates()?;
    let orbits = ctx.orbit_names(&cands);
    let (epis, mut anomalies) = epi_rows(ctx, &pair)?;
    let b = theorem_b_report(&pair, &cands)?;
    anomalies.extend(report_anomalies(&orbits, &b));
    let d = pair.d;
    let mut body = format!("F = {} is {d}-cluster-tilting, global dimension {}.\n\n", add(&f), pair.gldim);
    body.push_str(&format!("derived shift orbits: {}\n\n", orbits.join(", ")));
    body.push_str(&format!("## Homological epimorphisms of {d}-homological pairs\n\n"));
    body.push_str(&epi_table(&f, &epis));
    body.push_str("\n## Wide subcategories U_j\n\n");
    body.push_str(&loc_table(&orbits, &b));
    body.push_str("\n## Checks\n\n");
    body.push_str(&checks_table(&f, &b));
    let sizes: Vec<String> = b.sizes.iter().map(|s| s.to_string()).collect();
    body.push_str(&format!("\nset sizes (a), (b), (c), (d): {}\n\n", sizes.join(", ")));
    body.push_str(&format!("bijective: {}\n", b.injective && b.unmatched_localizations.is_empty()));
    let result = json!({
        "F": f,
        "orbits": orbits,
        "epimorphisms": epi_json(&f, &epis),
        "localizations": univloc_json(&orbits, &f, &b),
        "sizes": b.sizes,
        "injective": b.injective,
        "unmatched_localizations": b.unmatched_localizations.iter().map(|u| pick(&orbits, u)).collect::<Vec<_>>(),
    });
    let pass = anomalies.is_empty();
    Ok(ctx.output(Command::TheoremB, result, anomalies, pass, body))
}

fn ar_quiver(ctx: &Ctx) -> Result<Output, CliError> {
    let mut vertices = Vec::new();
    let mut arrows: Vec<(usize, usize, usize)> = Vec::new();
    let mut rows = Vec::new();
    for (i, m) in ctx.modules.iter().enumerate() {
        let projective = is_projective_indec(m);
        let injective = is_injective_indec(m);
        let tau = if projective { None } else { find_iso(&ctx.modules, &ar_translate(m)?) };
        let middle = if projective {
            m.radical().0
        } else {
            match almost_split_sequence(m)? {
                Some(seq) => seq.middle,
                None => Representation::zero(&ctx.alg),
            }
        };
        if !middle.is_zero() {
            for (piece, mult) in decompose(&middle)?.summands {
                let from = find_iso(&ctx.modules, &piece)
                    .ok_or_else(|| CliError::Core(dhom_core::Error::AnomalyDetected("summand outside the list".into())))?;
                arrows.push((from, i, mult));
            }
        }
        let name = ctx.module_names[i].clone();
        let tau_name = tau.map(|t| ctx.module_names[t].clone());
        rows.push(vec![
            name.clone(),
            format!("{:?}", m.dim_vector()),
            yes(projective).into(),
            yes(injective).into(),
            tau_name.clone().unwrap_or_else(|| "-".into()),
        ]);
        vertices.push(json!({
            "name": name,
            "dims": m.dim_vector(),
            "projective": projective,
            "injective": injective,
            "tau": tau_name,
        }));
    }
    arrows.sort();
    let n = &ctx.module_names;
    let mut body = table(&["module", "dims", "projective", "injective", "τ"], &rows);
    body.push_str("\nirreducible maps:\n\n");
    for (a, b, m) in &arrows {
        let mult = if *m > 1 { format!(" (×{m})") } else { String::new() };
        body.push_str(&format!("- {} → {}{mult}\n", n[*a], n[*b]));
    }
    let result = json!({
        "vertices": vertices,
        "arrows": arrows.iter().map(|(a, b, m)| json!({"from": n[*a], "to": n[*b], "multiplicity": m})).collect::<Vec<_>>(),
    });
    Ok(ctx.output(Command::ArQuiver, result, Vec::new(), true, body))
}

fn derived_indec(ctx: &Ctx) -> Result<Output, CliError> {
    let cands = ctx.candidates()?;
    let names = ctx.orbit_names(&cands);
    let mut rows = Vec::new();
    let mut list = Vec::new();
    for (o, name) in cands.iter().zip(&names) {
        let c = &o.complex;
        let terms: Vec<String> = complex_terms(&ctx.alg, c)
            .iter()
            .map(|t| if t.is_empty() { "0".into() } else { t.iter().map(|v| format!("P{v}")).collect::<Vec<_>>().join("⊕") })
            .collect();
        let homology = c.homology_dims();
        let degrees: Vec<String> = homology.iter().map(|(p, _)| p.to_string()).collect();
        let origin = match o.origin {
            Origin::Module(_) => "module",
            Origin::Search => "search",
        };
        rows.push(vec![name.clone(), origin.into(), c.lo.to_string(), terms.join(" → "), degrees.join(", ")]);
        list.push(json!({
            "name": name,
            "origin": origin,
            "lo": c.lo,
            "terms": complex_terms(&ctx.alg, c),
            "homology": homology.iter().map(|(p, dims)| json!({"degree": p, "dims": dims})).collect::<Vec<_>>(),
        }));
    }
    let window = ctx.opts.window.unwrap_or(ctx.gldim + 1);
    let mut body = format!("search window: {window} terms\n\n");
    body.push_str(&table(&["orbit", "origin", "lowest degree", "terms", "homology degrees"], &rows));
    let result = json!({ "window": window, "orbits": list });
    Ok(ctx.output(Command::DerivedIndec, result, Vec::new(), true, body))
}
