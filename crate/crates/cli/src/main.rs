//! Command-line front end: surfaces, tape graphs, sutures, modules, and
//! Heegaard diagrams over JSON pipelines.

use clap::{Args, Parser, Subcommand};
use std::collections::BTreeMap;
use std::io::Read;
use std::process::ExitCode;

use tsqft_core::algebra::{annihilate, SqftModule, SqftVector};
use tsqft_core::basis::BitString;
use tsqft_core::group_ring::{GroupRingElement, HomologyLattice};
use tsqft_core::heegaard::{decompose_step, sfh, Admissibility, HeegaardDiagram};
use tsqft_core::surface::{QuadSurface, Slot};
use tsqft_core::suture::{self, AttachingArc, BypassDirection, ReductionStrategy, SutureSystem};
use tsqft_core::tape_graph::{SpineVerdict, TapeGraph};

#[derive(Parser)]
#[command(
    name = "tsqft",
    version,
    about = "quadrangulated surfaces, sutures, and Heegaard diagrams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quadrangulated occupied surfaces.
    Surface {
        #[command(subcommand)]
        command: SurfaceCmd,
    },
    /// Tape graphs.
    Tape {
        #[command(subcommand)]
        command: TapeCmd,
    },
    /// Suture systems.
    Suture {
        #[command(subcommand)]
        command: SutureCmd,
    },
    /// Twisted modules and digital operators.
    Sqft {
        #[command(subcommand)]
        command: SqftCmd,
    },
    /// Heegaard diagrams, periodic domains, admissibility, decomposition.
    Heegaard {
        #[command(subcommand)]
        command: HeegaardCmd,
    },
    /// Built-in example surfaces and sutures.
    Fixture {
        #[command(subcommand)]
        command: FixtureCmd,
    },
}

#[derive(Args)]
struct Input {
    /// Input file (defaults to stdin).
    #[arg(short, long)]
    input: Option<String>,
}

impl Input {
    fn read(&self) -> Result<String, CliError> {
        match &self.input {
            Some(path) => std::fs::read_to_string(path)
                .map_err(|e| CliError::validation(format!("cannot read {path}: {e}"))),
            None => {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| CliError::validation(format!("cannot read stdin: {e}")))?;
                Ok(buf)
            }
        }
    }

    /// A surface, given either bare or wrapped in a fixture document.
    fn surface(&self) -> Result<QuadSurface, CliError> {
        let text = self.read()?;
        if let Ok(qs) = serde_json::from_str::<QuadSurface>(&text) {
            return Ok(qs);
        }
        parse_json::<FixtureDoc>(&text).map(|doc| doc.surface)
    }

    fn tape(&self) -> Result<TapeGraph, CliError> {
        parse_json(&self.read()?)
    }

    fn fixture_doc(&self) -> Result<FixtureDoc, CliError> {
        parse_json(&self.read()?)
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| {
        CliError::validation(format!(
            "malformed input at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })
}

fn parse_slot(s: &str) -> Result<Slot, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("expected SQUARE,SIDE".into());
    }
    let square = parts[0].trim().parse().map_err(|_| "bad square index")?;
    let side = parts[1].trim().parse().map_err(|_| "bad side index")?;
    Ok(Slot::new(square, side))
}

#[derive(Subcommand)]
enum SurfaceCmd {
    /// Check the structural invariants.
    Validate(Input),
    /// Euler characteristic, vertex pairs, index, boundary, homology rank.
    Stats(Input),
    /// Extract the positive (or negative) spine tape graph.
    Spine {
        #[command(flatten)]
        input: Input,
        /// Extract the negative spine instead.
        #[arg(long)]
        negative: bool,
        /// Emit Graphviz DOT instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Rebuild a quadrangulated surface from a spine tape graph.
    Reconstruct(Input),
    /// Slide the diagonal of the hexagon at a glued side pair.
    Slide {
        #[command(flatten)]
        input: Input,
        /// One slot of the glued pair, as SQUARE,SIDE.
        #[arg(long, value_parser = parse_slot)]
        slot: Slot,
        /// Slide clockwise (default is counterclockwise).
        #[arg(long)]
        cw: bool,
    },
    /// Glue two non-consecutive boundary edges.
    Glue {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = parse_slot)]
        a: Slot,
        #[arg(long, value_parser = parse_slot)]
        b: Slot,
    },
    /// Cut along an internal edge.
    Cut {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = parse_slot)]
        slot: Slot,
    },
}

#[derive(Subcommand)]
enum TapeCmd {
    /// Boundary walks of the thickening, with breakpoints.
    Boundary(Input),
    /// Decide the spine criterion; print a witness on failure.
    SpineCheck(Input),
    /// Canonical signature (hex); equal exactly for isomorphic graphs.
    Canon(Input),
}

#[derive(Args)]
struct SutureInput {
    #[command(flatten)]
    input: Input,
    /// Which named suture system to use (required when several exist).
    #[arg(long)]
    sutures: Option<String>,
}

impl SutureInput {
    fn load(&self) -> Result<(QuadSurface, SutureSystem, String), CliError> {
        let doc = self.input.fixture_doc()?;
        let name = match &self.sutures {
            Some(n) => n.clone(),
            None => {
                if doc.sutures.len() == 1 {
                    doc.sutures.keys().next().unwrap().clone()
                } else {
                    return Err(CliError::usage(format!(
                        "--sutures required; available: {}",
                        doc.sutures.keys().cloned().collect::<Vec<_>>().join(", ")
                    )));
                }
            }
        };
        let system = doc.sutures.get(&name).cloned().ok_or_else(|| {
            CliError::usage(format!(
                "no suture system named `{name}`; available: {}",
                doc.sutures.keys().cloned().collect::<Vec<_>>().join(", ")
            ))
        })?;
        Ok((doc.surface, system, name))
    }
}

#[derive(Subcommand)]
enum SutureCmd {
    /// Validate a suture system against its surface.
    Validate(SutureInput),
    /// Euler class of the complementary regions.
    Euler(SutureInput),
    /// The mod-2 suture element on the bitstring basis.
    Element {
        #[command(flatten)]
        input: SutureInput,
        /// Use the seeded randomized reduction strategy.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Bypass surgery along an attaching arc on an internal edge.
    Bypass {
        #[command(flatten)]
        input: SutureInput,
        /// Internal-edge slot carrying the arc, as SQUARE,SIDE.
        #[arg(long, value_parser = parse_slot)]
        slot: Slot,
        /// Middle crossing index of the arc.
        #[arg(long)]
        middle: usize,
        /// Surgery direction.
        #[arg(long, value_parser = ["up", "down"])]
        dir: String,
    },
}

#[derive(Subcommand)]
enum SqftCmd {
    /// The module of a surface: rank, coefficient ring, graded ranks.
    Module(Input),
    /// Apply a digital operator to a vector.
    Op {
        #[command(flatten)]
        input: Input,
        /// One of create-plus, create-minus, annihilate-one,
        /// annihilate-zero.
        #[arg(long)]
        op: String,
        /// Tensor slot for annihilation operators.
        #[arg(long, default_value_t = 0)]
        slot: usize,
    },
    /// Reduce a vector mod 2.
    Reduce(Input),
}

#[derive(Subcommand)]
enum HeegaardCmd {
    /// Assemble the block diagram and report its statistics.
    Synth {
        #[command(flatten)]
        input: Input,
        /// Emit the spine as DOT with periodic-domain coefficients.
        #[arg(long)]
        dot: bool,
    },
    /// The periodic-domain basis.
    Domains(Input),
    /// Decide admissibility of the raw block diagram.
    Admissible(Input),
    /// Finger-move isotopy arcs and the reserved-wedge check.
    Zeta(Input),
    /// One decomposition step at the lowest vertex of degree two or more.
    Decompose(Input),
    /// The full decomposition and module computation.
    Sfh(Input),
}

#[derive(Subcommand)]
enum FixtureCmd {
    /// Names of the built-in fixtures.
    List,
    /// Print a fixture as JSON.
    Show { name: String },
}

#[derive(serde::Serialize, serde::Deserialize)]
struct FixtureDoc {
    #[serde(default)]
    name: String,
    surface: QuadSurface,
    #[serde(default)]
    sutures: BTreeMap<String, SutureSystem>,
}

#[derive(serde::Serialize, serde::Deserialize)]
struct VectorDoc {
    terms: Vec<VectorTerm>,
}

#[derive(serde::Serialize, serde::Deserialize)]
struct VectorTerm {
    basis: String,
    coef: GroupRingElement,
}

struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn validation(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: 1,
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: 2,
        }
    }
}

macro_rules! impl_from_error {
    ($ty:ty) => {
        impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::validation(e.to_string())
            }
        }
    };
}
impl_from_error!(tsqft_core::surface::SurfaceError);
impl_from_error!(tsqft_core::suture::SutureError);
impl_from_error!(tsqft_core::tape_graph::TapeGraphError);
impl_from_error!(tsqft_core::heegaard::HeegaardError);
impl_from_error!(tsqft_core::algebra::AlgebraError);
impl_from_error!(tsqft_core::group_ring::RingError);

/// Cache bound for the suture-element memo table.
fn memo_cap() -> usize {
    std::env::var("TSQFT_MEMO_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1 << 20)
}

/// Write a line to stdout; a closed pipe downstream ends the program
/// quietly instead of panicking.
fn emit(text: std::fmt::Arguments) {
    use std::io::Write;
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    if writeln!(lock, "{text}").is_err() {
        std::process::exit(0);
    }
}

macro_rules! say {
    ($($arg:tt)*) => { emit(format_args!($($arg)*)) };
}

fn json_out<T: serde::Serialize>(value: &T) -> Result<(), CliError> {
    let text =
        serde_json::to_string_pretty(value).map_err(|e| CliError::validation(e.to_string()))?;
    say!("{text}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Surface { command } => run_surface(command),
        Command::Tape { command } => run_tape(command),
        Command::Suture { command } => run_suture(command),
        Command::Sqft { command } => run_sqft(command),
        Command::Heegaard { command } => run_heegaard(command),
        Command::Fixture { command } => run_fixture(command),
    }
}

fn run_surface(cmd: SurfaceCmd) -> Result<(), CliError> {
    match cmd {
        SurfaceCmd::Validate(input) => {
            let qs = input.surface()?;
            qs.validate()?;
            say!("ok");
            Ok(())
        }
        SurfaceCmd::Stats(input) => {
            let qs = input.surface()?;
            json_out(&qs.stats()?)
        }
        SurfaceCmd::Spine {
            input,
            negative,
            dot,
        } => {
            let qs = input.surface()?;
            let (spine, _) = qs.spine(!negative)?;
            if dot {
                say!("{}", spine.to_dot()?.trim_end());
                Ok(())
            } else {
                json_out(&spine)
            }
        }
        SurfaceCmd::Reconstruct(input) => {
            let graph = input.tape()?;
            json_out(&QuadSurface::reconstruct(&graph)?)
        }
        SurfaceCmd::Slide { input, slot, cw } => {
            let qs = input.surface()?;
            json_out(&qs.diagonal_slide(slot, cw)?)
        }
        SurfaceCmd::Glue { input, a, b } => {
            let qs = input.surface()?;
            json_out(&qs.standard_glue(a, b)?)
        }
        SurfaceCmd::Cut { input, slot } => {
            let qs = input.surface()?;
            json_out(&qs.cut_internal_edge(slot)?)
        }
    }
}

fn run_tape(cmd: TapeCmd) -> Result<(), CliError> {
    match cmd {
        TapeCmd::Boundary(input) => {
            let graph = input.tape()?;
            let walks = graph.boundary_components()?;
            #[derive(serde::Serialize)]
            struct WalkDoc {
                length: usize,
                breakpoints: usize,
                sides: Vec<u64>,
                isolated_vertex: Option<u64>,
            }
            let docs: Vec<WalkDoc> = walks
                .iter()
                .map(|w| WalkDoc {
                    length: w.len(),
                    breakpoints: w.breakpoint_count(),
                    sides: w.steps.iter().map(|s| s.departed_half_edge).collect(),
                    isolated_vertex: w.isolated_vertex,
                })
                .collect();
            json_out(&docs)
        }
        TapeCmd::SpineCheck(input) => {
            let graph = input.tape()?;
            match graph.spine_check()? {
                SpineVerdict::Spine => {
                    say!("spine");
                    Ok(())
                }
                SpineVerdict::NotOriented => {
                    say!("not a spine: graph has flipped edges");
                    Err(CliError::validation("not a spine"))
                }
                SpineVerdict::BreakpointFree(walk) => {
                    let sides: Vec<String> = walk
                        .steps
                        .iter()
                        .map(|s| format!("side({})", s.departed_half_edge))
                        .collect();
                    say!(
                        "not a spine: breakpoint-free boundary component: {}",
                        sides.join(" -> ")
                    );
                    Err(CliError::validation("not a spine"))
                }
            }
        }
        TapeCmd::Canon(input) => {
            let graph = input.tape()?;
            let sig = graph.canonical_signature()?;
            let hex: String = sig.iter().map(|b| format!("{b:02x}")).collect();
            say!("{hex}");
            Ok(())
        }
    }
}

fn run_suture(cmd: SutureCmd) -> Result<(), CliError> {
    match cmd {
        SutureCmd::Validate(si) => {
            let (qs, sys, name) = si.load()?;
            suture::validate(&qs, &sys)?;
            say!("ok: {name}");
            Ok(())
        }
        SutureCmd::Euler(si) => {
            let (qs, sys, _) = si.load()?;
            say!("{}", suture::euler_class(&qs, &sys)?);
            Ok(())
        }
        SutureCmd::Element { input, seed } => {
            let (qs, sys, _) = input.load()?;
            let strategy = match seed {
                None => ReductionStrategy::Deterministic,
                Some(s) => ReductionStrategy::Seeded(s),
            };
            let v = suture::suture_element_mod2(&qs, &sys, strategy, memo_cap())?;
            say!("{v}");
            Ok(())
        }
        SutureCmd::Bypass {
            input,
            slot,
            middle,
            dir,
        } => {
            let (qs, sys, _) = input.load()?;
            let direction = if dir == "up" {
                BypassDirection::Up
            } else {
                BypassDirection::Down
            };
            let arc = AttachingArc { slot, middle };
            let out = suture::bypass(&qs, &sys, &arc, direction)?;
            json_out(&out)
        }
    }
}

fn run_sqft(cmd: SqftCmd) -> Result<(), CliError> {
    match cmd {
        SqftCmd::Module(input) => {
            let qs = input.surface()?;
            let module = SqftModule::of_surface(&qs)?;
            #[derive(serde::Serialize)]
            struct ModuleDoc {
                index: usize,
                rank: u64,
                lattice: Vec<String>,
                graded_ranks: BTreeMap<i64, u64>,
            }
            let index = module.index() as i64;
            let graded_ranks = (-index..=index)
                .filter(|e| module.graded_rank(*e) > 0)
                .map(|e| (e, module.graded_rank(e)))
                .collect();
            json_out(&ModuleDoc {
                index: module.index(),
                rank: module.rank(),
                lattice: module.lattice().labels().to_vec(),
                graded_ranks,
            })
        }
        SqftCmd::Op { input, op, slot } => {
            let doc: VectorDoc = parse_json(&input.read()?)?;
            let (_, vector) = vector_from_doc(&doc)?;
            match op.as_str() {
                "create-plus" | "create-minus" => {
                    let out = vector.create(op == "create-plus");
                    json_out(&vector_to_doc(&out))
                }
                "annihilate-one" | "annihilate-zero" => {
                    let reduced = vector.reduce_module();
                    let out = annihilate(&reduced, op == "annihilate-one", slot);
                    say!("{out}");
                    Ok(())
                }
                other => Err(CliError::usage(format!("unknown operator `{other}`"))),
            }
        }
        SqftCmd::Reduce(input) => {
            let doc: VectorDoc = parse_json(&input.read()?)?;
            let (_, vector) = vector_from_doc(&doc)?;
            say!("{}", vector.reduce_module());
            Ok(())
        }
    }
}

fn vector_from_doc(doc: &VectorDoc) -> Result<(SqftModule, SqftVector), CliError> {
    let lattice = doc
        .terms
        .first()
        .map(|t| t.coef.lattice().clone())
        .unwrap_or_else(HomologyLattice::trivial);
    let index = doc.terms.first().map_or(0, |t| t.basis.len());
    let module = SqftModule::new(lattice, index);
    let mut v = SqftVector::zero(&module);
    for term in &doc.terms {
        let b = BitString::parse(&term.basis)
            .ok_or_else(|| CliError::validation(format!("bad basis string `{}`", term.basis)))?;
        if b.len() != index {
            return Err(CliError::validation("basis strings have mixed lengths"));
        }
        v = v
            .add(&SqftVector::single(&module, b, term.coef.clone()))
            .map_err(|e| CliError::validation(e.to_string()))?;
    }
    Ok((module, v))
}

fn vector_to_doc(v: &SqftVector) -> VectorDoc {
    VectorDoc {
        terms: v
            .terms()
            .map(|(b, c)| VectorTerm {
                basis: b.digits(),
                coef: c.clone(),
            })
            .collect(),
    }
}

fn run_heegaard(cmd: HeegaardCmd) -> Result<(), CliError> {
    match cmd {
        HeegaardCmd::Synth { input, dot } => {
            let qs = input.surface()?;
            let diagram = HeegaardDiagram::synth(&qs)?;
            if dot {
                say!("{}", heegaard_dot(&diagram)?.trim_end());
                return Ok(());
            }
            let stats = diagram.stats()?;
            #[derive(serde::Serialize)]
            struct SynthDoc {
                curves: usize,
                euler_char: i64,
                boundary_components: i64,
                genus: i64,
                regions: usize,
                internal_regions: usize,
            }
            json_out(&SynthDoc {
                curves: stats.curve_count,
                euler_char: stats.euler_char,
                boundary_components: stats.boundary_components,
                genus: stats.genus,
                regions: diagram.regions().len(),
                internal_regions: diagram.regions().iter().filter(|r| !r.barrier).count(),
            })
        }
        HeegaardCmd::Domains(input) => {
            let qs = input.surface()?;
            let diagram = HeegaardDiagram::synth(&qs)?;
            let docs: Vec<DomainDoc> = diagram.periodic_basis()?.iter().map(domain_doc).collect();
            json_out(&docs)
        }
        HeegaardCmd::Admissible(input) => {
            let qs = input.surface()?;
            let diagram = HeegaardDiagram::synth(&qs)?;
            match diagram.is_admissible_raw()? {
                Admissibility::Admissible => {
                    say!("admissible");
                    Ok(())
                }
                Admissibility::Inadmissible(witness) => {
                    say!("inadmissible");
                    json_out(&domain_doc(&witness))
                }
            }
        }
        HeegaardCmd::Zeta(input) => {
            let qs = input.surface()?;
            let diagram = HeegaardDiagram::synth(&qs)?;
            diagram.check_disjoint_wedge()?;
            let arcs = diagram.zeta_arcs()?;
            #[derive(serde::Serialize)]
            struct ZetaDoc {
                halfedge: u64,
                vertex: u64,
                index: usize,
                swept: Vec<(u64, usize)>,
                terminal: (u64, usize),
                crossed_alpha: Vec<u64>,
            }
            let docs: Vec<ZetaDoc> = arcs
                .iter()
                .map(|a| ZetaDoc {
                    halfedge: a.halfedge,
                    vertex: a.vertex,
                    index: a.index,
                    swept: a.swept.clone(),
                    terminal: a.terminal,
                    crossed_alpha: a.crossed_alpha.clone(),
                })
                .collect();
            say!(
                "perturbed intersections: {}",
                diagram.perturbed_intersections()?
            );
            json_out(&docs)
        }
        HeegaardCmd::Decompose(input) => {
            let qs = input.surface()?;
            let (cut, step) = decompose_step(&qs)?;
            #[derive(serde::Serialize)]
            struct StepDoc {
                vertex: u64,
                degree: usize,
                wedge: (u64, usize),
                cut_edge: [[usize; 2]; 2],
                iota_matrix: Vec<Vec<i64>>,
                surface: QuadSurface,
            }
            json_out(&StepDoc {
                vertex: step.vertex,
                degree: step.degree,
                wedge: step.wedge,
                cut_edge: [
                    [step.cut_edge.0.square, step.cut_edge.0.side],
                    [step.cut_edge.1.square, step.cut_edge.1.side],
                ],
                iota_matrix: step.iota.matrix().to_vec(),
                surface: cut,
            })
        }
        HeegaardCmd::Sfh(input) => {
            let qs = input.surface()?;
            let result = sfh(&qs)?;
            #[derive(serde::Serialize)]
            struct SfhDoc {
                rank: u64,
                index: usize,
                lattice: Vec<String>,
                graded_ranks: BTreeMap<i64, u64>,
                steps: usize,
                terminal_squares: usize,
            }
            let index = result.module.index() as i64;
            let graded_ranks: BTreeMap<i64, u64> = (-index..=index)
                .filter(|e| result.module.graded_rank(*e) > 0)
                .map(|e| (e, result.module.graded_rank(e)))
                .collect();
            let doc = SfhDoc {
                rank: result.module.rank(),
                index: result.module.index(),
                lattice: result.module.lattice().labels().to_vec(),
                graded_ranks,
                steps: result.trace.len(),
                terminal_squares: result.terminal_surface.square_count(),
            };
            say!("rank {} over Z[{}]", doc.rank, doc.lattice.join(","));
            json_out(&doc)
        }
    }
}

#[derive(serde::Serialize)]
struct DomainDoc {
    generator_edge: Option<usize>,
    coefficients: Vec<((u64, usize), i64)>,
    one_signed: bool,
}

fn domain_doc(d: &tsqft_core::heegaard::PeriodicDomain) -> DomainDoc {
    DomainDoc {
        generator_edge: d.generator_edge,
        coefficients: d.coefficients.iter().map(|(w, c)| (*w, *c)).collect(),
        one_signed: d.is_one_signed(),
    }
}

/// DOT of the spine with periodic-domain coefficients annotated per wedge.
fn heegaard_dot(diagram: &HeegaardDiagram) -> Result<String, CliError> {
    let mut out = diagram.spine().to_dot()?;
    let basis = diagram.periodic_basis()?;
    if !basis.is_empty() {
        let mut block = String::from("/* periodic-domain coefficients per wedge:\n");
        for d in &basis {
            let label = match d.generator_edge {
                Some(e) => format!("D_e{e}"),
                None => "D".into(),
            };
            let coeffs: Vec<String> = d
                .coefficients
                .iter()
                .map(|((v, w), c)| format!("w{w}@v{v}:{c:+}"))
                .collect();
            block.push_str(&format!(" * {label}: {}\n", coeffs.join(" ")));
        }
        block.push_str(" */\n");
        let closing = out.rfind('}').expect("dot output closes");
        out.insert_str(closing, &block);
    }
    Ok(out)
}

fn run_fixture(cmd: FixtureCmd) -> Result<(), CliError> {
    match cmd {
        FixtureCmd::List => {
            for name in tsqft_core::fixtures::fixture_names() {
                say!("{name}");
            }
            Ok(())
        }
        FixtureCmd::Show { name } => {
            let f = tsqft_core::fixtures::fixture(&name).ok_or_else(|| {
                CliError::usage(format!(
                    "unknown fixture `{name}`; available: {}",
                    tsqft_core::fixtures::fixture_names().join(", ")
                ))
            })?;
            let doc = FixtureDoc {
                name: f.name.to_string(),
                surface: f.surface.clone(),
                sutures: f
                    .sutures
                    .iter()
                    .map(|(k, v)| (k.to_string(), v.clone()))
                    .collect(),
            };
            json_out(&doc)
        }
    }
}
