//! The `finlat` command line.
//!
//! Exit codes: 0 success or affirmative verdict, 1 input is not a lattice,
//! 2 unreadable or invalid input, 3 negative decision or unmet
//! precondition, 4 a configured cap was exceeded, 5 two independent checks
//! disagreed (a refuted theorem; never expected).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::birkhoff::{represents, upset_lattice, NonRepresentable, RepresentationVerdict};
use crate::classes::class_lattice;
use crate::config::Caps;
use crate::corpus::{random_poset, rng};
use crate::dot::hasse_dot;
use crate::error::{Error, Result};
use crate::fuzzy::{cuts_are_all_upsets, image_in_m};
use crate::generate::enumerate_posets;
use crate::lattice::{Lattice, Verdict};
use crate::quotient::{find_lattice_embedding, EmbeddingSearch, EmbeddingVerdict};
use crate::text::{self, canonical};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Dot,
    Tabular,
}

#[derive(Debug, Parser)]
#[command(name = "finlat", version, about = "Finite posets, lattices and up-set representations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Largest carrier for up-set, antichain and chain enumeration.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..=64))]
    pub cap_size: Option<u64>,
    /// Largest up-set family searched for sublattices.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..=64))]
    pub cap_family: Option<u64>,
    /// Largest number of sublattices a search may produce.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap_sublattices: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Shorthand for `--format dot`.
    #[arg(long, global = true)]
    pub dot: bool,
    /// Seed for random output.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lattice predicates and the representation verdict.
    Check { lattice: PathBuf },
    /// All up-sets of a poset.
    Upsets { poset: PathBuf },
    /// The map p -> {x in M(L) | x >= p} and whether it is an isomorphism onto F_M(L).
    Birkhoff { lattice: PathBuf },
    /// Cuts of a fuzzy up-set and the cuts-are-all-up-sets criterion.
    Cuts { fuzzy: PathBuf },
    /// Whether L0 embeds into L keeping meets, joins, bottom and top.
    Embed {
        l0: PathBuf,
        l: PathBuf,
        /// Write the witness operator here (its carrier goes next to it with extension `.poset`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The lattice of monotonic-operator classes.
    Hql {
        lattice: PathBuf,
        /// Run on non-distributive lattices too, as an experiment.
        #[arg(long)]
        force: bool,
    },
    /// Every poset on n elements up to isomorphism, or one random poset.
    Gen {
        n: usize,
        #[arg(long)]
        random: bool,
        /// Relation density for `--random`.
        #[arg(long, default_value_t = 0.4)]
        density: f64,
        /// Write one `.poset` file per poset instead of printing.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotALattice { .. } | Error::EmptyPoset => 1,
        Error::PreconditionFailed(_) => 3,
        Error::CapExceeded { .. } => 4,
        e if e.is_certificate() => 5,
        _ => 2,
    }
}

struct Ctx {
    caps: Caps,
    format: Format,
    seed: u64,
}

/// A finished report and its exit code.
struct Report {
    body: String,
    code: i32,
}

impl Report {
    fn ok(body: String) -> Self {
        Report { body, code: 0 }
    }
}

/// Runs the CLI on `args` (including the program name). Output is written
/// only after the command completes.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut caps = Caps::default();
    if let Some(v) = cli.cap_size {
        caps.poset_size = v as usize;
    }
    if let Some(v) = cli.cap_family {
        caps.family_size = v as usize;
    }
    if let Some(v) = cli.cap_sublattices {
        caps.sublattices = v as usize;
    }
    let ctx = Ctx {
        caps,
        format: if cli.dot { Format::Dot } else { cli.format },
        seed: cli.seed,
    };
    let result = match &cli.command {
        Command::Check { lattice } => cmd_check(&ctx, lattice),
        Command::Upsets { poset } => cmd_upsets(&ctx, poset),
        Command::Birkhoff { lattice } => cmd_birkhoff(&ctx, lattice),
        Command::Cuts { fuzzy } => cmd_cuts(&ctx, fuzzy),
        Command::Embed { l0, l, out } => cmd_embed(&ctx, l0, l, out.as_deref()),
        Command::Hql { lattice, force } => cmd_hql(&ctx, lattice, *force),
        Command::Gen {
            n,
            random,
            density,
            out_dir,
        } => cmd_gen(&ctx, *n, *random, *density, out_dir.as_deref()),
    };
    match result {
        Ok(report) => {
            let _ = out.write_all(report.body.as_bytes());
            report.code
        }
        Err(e) => {
            let code = exit_code(&e);
            let _ = writeln!(err, "error: {e}");
            code
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn set_of_names(names: &[String]) -> String {
    format!("{{{}}}", names.join(","))
}

fn family_text(labels: &[String]) -> String {
    format!("{{{}}}", labels.join(", "))
}

fn cmd_check(ctx: &Ctx, path: &Path) -> Result<Report> {
    let l = text::load_lattice(path)?;
    if ctx.format == Format::Dot {
        return Ok(Report::ok(hasse_dot(l.order())));
    }
    let caps = &ctx.caps;
    let m = l.meet_irreducibles();
    let mut rows: Vec<(&str, String)> = vec![
        ("lattice", l.name().to_string()),
        ("elements", l.len().to_string()),
        ("bottom", l.element_name(l.bottom()).to_string()),
        ("top", l.element_name(l.top()).to_string()),
        ("meet-irreducibles", set_of_names(&l.names_of(&m.members))),
    ];
    let distributive = l.is_distributive();
    rows.push((
        "distributive",
        match &distributive {
            Verdict::Holds => "yes".into(),
            Verdict::Fails((x, y, z)) => {
                let n = |i: usize| l.element_name(i);
                format!(
                    "no: {x}∧({y}∨{z}) = {} but ({x}∧{y})∨({x}∧{z}) = {}",
                    n(l.meet(*x, l.join(*y, *z))),
                    n(l.join(l.meet(*x, *y), l.meet(*x, *z))),
                    x = n(*x),
                    y = n(*y),
                    z = n(*z)
                )
            }
        },
    ));
    let dp = l.has_dp();
    rows.push((
        "decomposition property",
        match &dp {
            Verdict::Holds => "yes".into(),
            Verdict::Fails(r) => format!("no: {} is not the meet of the meet-irreducibles above it", l.element_name(*r)),
        },
    ));
    let cond = l.satisfies_m(caps)?;
    rows.push((
        "condition (M)",
        match &cond {
            Verdict::Holds => "yes".into(),
            Verdict::Fails((q, c)) => format!(
                "no: {} >= meet of {} but is above none of them",
                l.element_name(*q),
                set_of_names(&l.names_of(c))
            ),
        },
    ));
    rows.push(("atomic boolean", yes_no(l.is_atomic_boolean()).into()));
    let graded = match l.graded_chain_check(caps) {
        Ok(Verdict::Holds) => {
            let k = m.len() + 1;
            format!("yes: every maximal chain has {k} element{}", if k == 1 { "" } else { "s" })
        }
        Ok(Verdict::Fails(chain)) => format!("no: chain {}", l.names_of(&chain).join(" < ")),
        Err(Error::PreconditionFailed(_)) => "not applicable".into(),
        Err(e) => return Err(e),
    };
    rows.push(("graded chains", graded));
    let rep = represents(&l, caps)?;
    rows.push((
        "representable",
        match &rep.verdict {
            RepresentationVerdict::RepresentableBy { .. } => "yes: L ≅ F_X with X = (M(L), <=)".into(),
            RepresentationVerdict::NotRepresentable(reason) => format!("no: {}", reason_text(&l, reason)),
        },
    ));

    let mut body = String::new();
    match ctx.format {
        Format::Tabular => {
            for (k, v) in &rows {
                writeln!(body, "{k}\t{v}").unwrap();
            }
        }
        _ => {
            for (k, v) in &rows {
                writeln!(body, "{k}: {v}").unwrap();
            }
        }
    }
    if let RepresentationVerdict::RepresentableBy { carrier, f } = &rep.verdict {
        for (p, set) in f.iter().enumerate() {
            match ctx.format {
                Format::Tabular => writeln!(body, "f\t{}\t{}", l.element_name(p), set.label(carrier.names())),
                _ => writeln!(body, "  f({}) = {}", l.element_name(p), set.label(carrier.names())),
            }
            .unwrap();
        }
    }
    Ok(Report::ok(body))
}

fn reason_text(l: &Lattice, reason: &NonRepresentable) -> String {
    match reason {
        NonRepresentable::NotDistributive { x, y, z } => format!(
            "not distributive at ({}, {}, {})",
            l.element_name(*x),
            l.element_name(*y),
            l.element_name(*z)
        ),
        NonRepresentable::NoDecomposition { element } => {
            format!("{} has no decomposition", l.element_name(*element))
        }
        NonRepresentable::ConditionM { q, family } => format!(
            "condition (M) fails at {} and {}",
            l.element_name(*q),
            set_of_names(&l.names_of(family))
        ),
    }
}

fn cmd_upsets(ctx: &Ctx, path: &Path) -> Result<Report> {
    let x = text::load_poset(path)?;
    let fx = upset_lattice(&x, &ctx.caps)?;
    let body = match ctx.format {
        Format::Dot => hasse_dot(fx.lattice.order()),
        Format::Tabular => {
            let mut s = String::new();
            for (i, set) in fx.family.sets().iter().enumerate() {
                writeln!(s, "{i}\t{}\t{}", set.len(), fx.family.label(*set)).unwrap();
            }
            s
        }
        Format::Text => fx.family.labels().iter().map(|l| format!("{l}\n")).collect(),
    };
    Ok(Report::ok(body))
}

fn cmd_birkhoff(ctx: &Ctx, path: &Path) -> Result<Report> {
    let l = text::load_lattice(path)?;
    let rep = represents(&l, &ctx.caps)?;
    let map = &rep.map;
    let code = if rep.is_representable() { 0 } else { 3 };
    if ctx.format == Format::Dot {
        let fm = upset_lattice(&map.m_poset, &ctx.caps)?;
        return Ok(Report {
            body: hasse_dot(fm.lattice.order()),
            code,
        });
    }
    let names = map.m_poset.names();
    let mut body = String::new();
    let tab = ctx.format == Format::Tabular;
    if tab {
        writeln!(body, "meet-irreducibles\t{}", set_of_names(names)).unwrap();
    } else {
        writeln!(body, "M(L) = {}", set_of_names(names)).unwrap();
    }
    for (p, set) in map.image.iter().enumerate() {
        if tab {
            writeln!(body, "f\t{}\t{}", l.element_name(p), set.label(names)).unwrap();
        } else {
            writeln!(body, "f({}) = {}", l.element_name(p), set.label(names)).unwrap();
        }
    }
    let verdict = match &rep.verdict {
        RepresentationVerdict::RepresentableBy { .. } => {
            "representable: f is an isomorphism onto F_M(L)".to_string()
        }
        RepresentationVerdict::NotRepresentable(reason) => {
            format!("not representable: {}", reason_text(&l, reason))
        }
    };
    if tab {
        writeln!(body, "verdict\t{}", yes_no(rep.is_representable())).unwrap();
    } else {
        writeln!(body, "injective: {}", yes_no(map.is_injective())).unwrap();
        writeln!(body, "{verdict}").unwrap();
    }
    Ok(Report { body, code })
}

fn cmd_cuts(ctx: &Ctx, path: &Path) -> Result<Report> {
    let file = text::load_fuzzy(path)?;
    let mu = &file.mu;
    let l = mu.codomain();
    let x = mu.domain();
    let closure = mu.l_mu();
    if ctx.format == Format::Dot {
        return Ok(Report::ok(hasse_dot(closure.lattice.order())));
    }
    let tab = ctx.format == Format::Tabular;
    let cuts = mu.cut_family();
    let mut body = String::new();
    for (p, set) in cuts.cuts.iter().enumerate() {
        if tab {
            writeln!(body, "cut\t{}\t{}", l.element_name(p), set.label(x.names())).unwrap();
        } else {
            writeln!(body, "cut {}: {}", l.element_name(p), set.label(x.names())).unwrap();
        }
    }
    let distinct = family_text(&cuts.distinct.labels());
    let l_mu = set_of_names(&l.names_of(&closure.members));
    let verdict = cuts_are_all_upsets(mu, &ctx.caps)?;
    let all = match &verdict {
        Verdict::Holds => "yes".to_string(),
        Verdict::Fails(w) => format!(
            "no: {} is not a cut; {} >= meet over {} but is above none of them",
            w.missing_upset.label(x.names()),
            x.element_name(w.element),
            w.family.label(x.names())
        ),
    };
    let image = if verdict.holds() {
        match image_in_m(mu, &ctx.caps)? {
            Verdict::Holds => "yes".to_string(),
            Verdict::Fails(e) => format!("no: value of {} is not meet-irreducible", x.element_name(e)),
        }
    } else {
        "not applicable".to_string()
    };
    let rows = [
        ("distinct cuts", distinct),
        ("L^mu", l_mu),
        ("cuts are all up-sets", all),
        ("values meet-irreducible in L^mu", image),
    ];
    for (k, v) in rows {
        if tab {
            writeln!(body, "{k}\t{v}").unwrap();
        } else {
            writeln!(body, "{k}: {v}").unwrap();
        }
    }
    Ok(Report::ok(body))
}

fn cmd_embed(ctx: &Ctx, l0_path: &Path, l_path: &Path, out: Option<&Path>) -> Result<Report> {
    let l0 = text::load_lattice(l0_path)?;
    let l = text::load_lattice(l_path)?;
    let search = EmbeddingSearch::new(&l, &ctx.caps)?;
    let verdict = search.decide(&l0, &ctx.caps)?;
    let plain = find_lattice_embedding(&l0, &l, false);
    let mapping = |map: &[usize]| {
        map.iter()
            .enumerate()
            .map(|(a, &b)| format!("{}->{}", l0.element_name(a), l.element_name(b)))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let tab = ctx.format == Format::Tabular;
    let mut body = String::new();
    let EmbeddingVerdict::Embeds(e) = verdict else {
        if ctx.format == Format::Dot {
            return Ok(Report { body, code: 3 });
        }
        if tab {
            writeln!(body, "verdict\tDoesNotEmbed").unwrap();
            writeln!(body, "sublattice\t{}", yes_no(plain.is_some())).unwrap();
        } else {
            writeln!(body, "DoesNotEmbed").unwrap();
            match &plain {
                Some(m) => writeln!(body, "sublattice without bounds: yes ({})", mapping(m)),
                None => writeln!(body, "sublattice without bounds: no"),
            }
            .unwrap();
        }
        return Ok(Report { body, code: 3 });
    };

    if let Some(out) = out {
        let poset_path = out.with_extension("poset");
        let carrier = canonical(e.operator.carrier());
        let operator = crate::quotient::MonotonicOperator::new(
            "G",
            carrier.clone(),
            (0..carrier.len())
                .map(|i| {
                    let old = e.operator.carrier().index_of(carrier.element_name(i)).expect("same names");
                    e.operator
                        .value(old)
                        .iter()
                        .map(|k| carrier.index_of(e.operator.carrier().element_name(k)).expect("same names"))
                        .collect()
                })
                .collect(),
        )?;
        write_file(&poset_path, &text::write_poset(&carrier))?;
        let rel = poset_path
            .file_name()
            .map(|f| f.to_string_lossy().into_owned())
            .unwrap_or_default();
        write_file(out, &text::write_monop(&operator, &rel))?;
    }

    let candidate = &search.candidates[e.candidate];
    if ctx.format == Format::Dot {
        return Ok(Report::ok(hasse_dot(candidate.upsets.lattice.order())));
    }
    let g = &e.operator;
    if tab {
        writeln!(body, "verdict\tEmbeds").unwrap();
        writeln!(body, "family\t{}", family_text(&e.family.labels())).unwrap();
        for x in 0..g.carrier().len() {
            writeln!(body, "G\t{}\t{}", g.carrier().element_name(x), g.value_label(x)).unwrap();
        }
        writeln!(body, "embedding\t{}", mapping(&e.into_host)).unwrap();
    } else {
        writeln!(body, "Embeds").unwrap();
        writeln!(body, "family in F_M(L): {}", family_text(&e.family.labels())).unwrap();
        writeln!(body, "operator on M(L):").unwrap();
        for x in 0..g.carrier().len() {
            writeln!(body, "  G({}) = {}", g.carrier().element_name(x), g.value_label(x)).unwrap();
        }
        writeln!(body, "quotient M(L)/G: {} classes", candidate.quotient.len()).unwrap();
        writeln!(body, "embedding: {}", mapping(&e.into_host)).unwrap();
    }
    Ok(Report::ok(body))
}

fn cmd_hql(ctx: &Ctx, path: &Path, force: bool) -> Result<Report> {
    let l = text::load_lattice(path)?;
    let experimental = force && !l.is_distributive().holds();
    let h = class_lattice(&l, &ctx.caps, force)?;
    let dot = hasse_dot(h.lattice.order());
    if ctx.format == Format::Dot {
        return Ok(Report::ok(dot));
    }
    let mut body = String::new();
    if ctx.format == Format::Tabular {
        writeln!(body, "classes\t{}", h.len()).unwrap();
        for k in 0..h.len() {
            writeln!(body, "C{k}\t{}", family_text(&h.family_labels(k))).unwrap();
        }
        return Ok(Report::ok(body));
    }
    if experimental {
        writeln!(body, "note: `{}` is not distributive; results are experimental", l.name()).unwrap();
    }
    writeln!(body, "{} classes", h.len()).unwrap();
    for k in 0..h.len() {
        writeln!(body, "C{k}: {}", family_text(&h.family_labels(k))).unwrap();
    }
    body.push_str(&dot);
    Ok(Report::ok(body))
}

fn cmd_gen(ctx: &Ctx, n: usize, random: bool, density: f64, out_dir: Option<&Path>) -> Result<Report> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::PreconditionFailed(format!("density {density} is outside [0, 1]")));
    }
    let posets = if random {
        ctx.caps.check_poset(n)?;
        let p = random_poset(n, density, &mut rng(ctx.seed));
        vec![p.with_name(&format!("R{n}_s{}", ctx.seed))]
    } else {
        enumerate_posets(n, &ctx.caps)?
    };
    let mut body = String::new();
    match out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|e| Error::Io {
                path: dir.display().to_string(),
                message: e.to_string(),
            })?;
            for p in &posets {
                write_file(&dir.join(format!("{}.poset", p.name())), &text::write_poset(p))?;
            }
            writeln!(body, "wrote {} posets to {}", posets.len(), dir.display()).unwrap();
        }
        None => {
            for (i, p) in posets.iter().enumerate() {
                if i > 0 {
                    body.push('\n');
                }
                body.push_str(&match ctx.format {
                    Format::Dot => hasse_dot(p),
                    _ => text::write_poset(p),
                });
            }
        }
    }
    Ok(Report::ok(body))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}
