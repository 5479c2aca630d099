//! Command-line front end. Every subcommand prints one JSON document on
//! standard output (or to `--output`) and a one-line summary on standard
//! error.
//!
//! Exit codes: 0 success, 1 usage, 2 invalid input, 3 failed mathematical
//! precondition, 4 search budget exhausted.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use perverse::allowability::{gajer_subcomplex, is_allowable, is_full};
use perverse::chain::{homology_all, homology_with, Coefficients, HomologyGroup, IntegerChainComplex};
use perverse::construct::{self, subdivide_times};
use perverse::group::{find_homomorphisms, FiniteGroupTarget, GroupPresentation, SearchStatus};
use perverse::intersection::{comparison_map, intersection_homology, intersection_homology_all, mayer_vietoris_check, star_cover, Model};
use perverse::pi::{compare_coarsening_pi1, perverse_pi1_subdivided, pi0_perverse, subdivision_stability, subdivision_vertex, Pi1Options};
use perverse::{fixtures, io, Error, FilteredComplex, Perversity, Simplex};

#[derive(Parser)]
#[command(name = "perverse", version, about = "Perverse invariants of filtered simplicial complexes")]
struct Cli {
    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Input {
    /// Fixture expression, e.g. `cone(torus7)`.
    #[arg(long, conflicts_with = "complex")]
    fixture: Option<String>,
    /// Path to a complex in JSON.
    #[arg(long)]
    complex: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct PerversityArg {
    /// Perversity as inline JSON or a path to a JSON file.
    #[arg(long)]
    perversity: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Straight,
    Augmented,
}

#[derive(Subcommand)]
enum Command {
    /// Structural and mathematical checks of a filtered complex.
    Validate(Input),
    /// The strata with their dimensions and simplices.
    Strata(Input),
    /// Simplicial homology.
    Homology {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        degree: Option<usize>,
        /// Coefficient modulus; integers when absent.
        #[arg(long)]
        modulus: Option<u64>,
    },
    /// Intersection homology.
    Ih {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        p: PerversityArg,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// The subcomplex of full simplices and its homology.
    Gajer {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        p: PerversityArg,
    },
    /// Allowability and fullness of one simplex, given as `0,1,2`.
    FullCheck {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        p: PerversityArg,
        #[arg(long)]
        simplex: String,
    },
    /// The comparison map from Gajer homology to intersection homology.
    CompareJ {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        p: PerversityArg,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value = "straight")]
        model: ModelArg,
        /// Barycentric subdivisions applied first (default 1 for the
        /// augmented model, 0 for the straight one).
        #[arg(long)]
        subdivide: Option<usize>,
    },
    /// Perverse path components.
    Pi0 {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        p: PerversityArg,
    },
    /// A simplified presentation of the perverse fundamental group.
    Pi1 {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        p: PerversityArg,
        /// Regular vertex of the input complex; the least one by default.
        #[arg(long)]
        basepoint: Option<usize>,
        #[arg(long, default_value_t = 1)]
        subdivide: usize,
        /// Bound on total relator length during simplification.
        #[arg(long, default_value_t = 200_000)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the full report instead of the simplified presentation.
        #[arg(long)]
        report: bool,
    },
    /// Homomorphisms from a presented group into finite permutation groups.
    Quotients {
        /// Presentation as inline JSON or a path to a JSON file.
        #[arg(long)]
        presentation: String,
        /// Targets: `A5`, `S3` or `Z<n>`; repeatable.
        #[arg(long = "target", default_values_t = ["A5".to_string()])]
        targets: Vec<String>,
        #[arg(long)]
        surjective: bool,
        /// Node budget of the backtracking search.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Cone, suspension, join, product or unfiltered copy of complexes
    /// (fixture expressions or JSON paths).
    Construct {
        #[arg(value_parser = ["cone", "suspension", "join", "product", "trivial"])]
        operation: String,
        first: String,
        second: Option<String>,
    },
    /// Iterated barycentric subdivision.
    Subdivide {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1)]
        times: usize,
    },
    /// Builds a fixture; with `--verify`, runs its expected-invariants table.
    Fixture {
        #[arg(required_unless_present = "all")]
        expression: Option<String>,
        #[arg(long)]
        verify: bool,
        /// Verify every fixture of the corpus.
        #[arg(long, conflicts_with = "verify")]
        all: bool,
    },
    /// Perverse fundamental groups of a filtration and a coarsening of it.
    CompareCoarsening {
        /// Finer filtration (fixture expression or JSON path).
        #[arg(long)]
        fine: String,
        /// Coarser filtration of the same complex.
        #[arg(long)]
        coarse: String,
        #[command(flatten)]
        p: PerversityArg,
        #[arg(long, default_value_t = 1)]
        subdivide: usize,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Augmented-model H_0, H_1 and π₁ after 0, 1, … subdivisions, with the
    /// places where consecutive levels disagree.
    Stability {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        p: PerversityArg,
        #[arg(long, default_value_t = 2)]
        max_subdivide: usize,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Mayer–Vietoris exactness for the cover by a closed vertex star and
    /// the full subcomplex on the other vertices.
    MvCheck {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        p: PerversityArg,
        #[arg(long)]
        vertex: usize,
        #[arg(long, default_value_t = 1)]
        subdivide: usize,
    },
}

enum Failure {
    Error(Error),
    Inconclusive(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type Outcome = Result<(serde_json::Value, String), Failure>;

fn load(input: &Input) -> Result<FilteredComplex, Error> {
    match (&input.fixture, &input.complex) {
        (Some(f), _) => fixtures::parse(f),
        (None, Some(p)) => io::read_complex(p),
        (None, None) => Err(Error::malformed("give --fixture or --complex")),
    }
}

fn load_operand(s: &str) -> Result<FilteredComplex, Error> {
    if s.ends_with(".json") || Path::new(s).is_file() {
        io::read_complex(s)
    } else {
        fixtures::parse(s)
    }
}

fn value<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable")
}

/// `k` subdivided `times` times, with the perversity carried along.
fn subdivided(k: &FilteredComplex, p: &Perversity, times: usize) -> Result<(FilteredComplex, Perversity), Error> {
    let (mut k, mut p) = (k.clone(), p.clone());
    for _ in 0..times {
        let next = subdivide_times(&k, 1);
        p = p.pull_back_subdivision(&k, &next)?;
        k = next;
    }
    Ok((k, p))
}

fn show(h: &[HomologyGroup]) -> String {
    h.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn run(cmd: Command) -> Outcome {
    Ok(match cmd {
        Command::Validate(input) => {
            let r = load(&input)?.validate();
            let s = format!("valid: {}, {} strata, {} warning(s)", r.valid, r.strata_count, r.warnings.len());
            (value(&r), s)
        }
        Command::Strata(input) => {
            let k = load(&input)?;
            let strata: Vec<_> = k
                .strata()
                .iter()
                .map(|s| {
                    let simplices: Vec<&Simplex> = s.simplices.iter().map(|&i| &k.simplices()[i]).collect();
                    json!({"id": s.id, "dim": s.dim, "codim": s.codim, "simplices": simplices})
                })
                .collect();
            let s = format!("{} strata", strata.len());
            (json!(strata), s)
        }
        Command::Homology { input, degree, modulus } => {
            let c = IntegerChainComplex::from_simplices(load(&input)?.simplices());
            let coeffs = modulus.map_or(Coefficients::Integers, Coefficients::Modulo);
            match degree {
                Some(j) => {
                    let h = homology_with(&c, j, coeffs)?;
                    let s = format!("H_{j} = {h}");
                    (value(&h), s)
                }
                None => {
                    let h: Vec<HomologyGroup> = match coeffs {
                        Coefficients::Integers => homology_all(&c),
                        _ => (0..=c.top_degree().unwrap_or(0))
                            .map(|j| homology_with(&c, j, coeffs))
                            .collect::<Result<_, _>>()?,
                    };
                    let s = format!("H = [{}]", show(&h));
                    (value(&h), s)
                }
            }
        }
        Command::Ih { input, p, degree } => {
            let k = load(&input)?;
            let p = io::parse_perversity(&p.perversity)?;
            match degree {
                Some(j) => {
                    let h = intersection_homology(&k, &p, j)?;
                    let s = format!("IH_{j} = {h}");
                    (value(&h), s)
                }
                None => {
                    let h = intersection_homology_all(&k, &p)?;
                    let s = format!("IH = [{}]", show(&h));
                    (value(&h), s)
                }
            }
        }
        Command::Gajer { input, p } => {
            let k = load(&input)?;
            let p = io::parse_perversity(&p.perversity)?;
            let g = gajer_subcomplex(&k, &p)?;
            let h = homology_all(&IntegerChainComplex::from_simplices(g.simplices()));
            let s = format!("{} full simplices, H = [{}]", g.simplices().len(), show(&h));
            (json!({"complex": io::ComplexJson::from_complex(&g), "homology": h}), s)
        }
        Command::FullCheck { input, p, simplex } => {
            let k = load(&input)?;
            let p = io::parse_perversity(&p.perversity)?;
            let verts = simplex
                .split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| Error::malformed(format!("bad vertex {x:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let sigma = Simplex::new(verts)?;
            let (a, f) = (is_allowable(&k, &p, &sigma)?, is_full(&k, &p, &sigma)?);
            (json!({"simplex": sigma, "allowable": a, "full": f}), format!("{sigma}: allowable {a}, full {f}"))
        }
        Command::CompareJ { input, p, degree, model, subdivide } => {
            let model = match model {
                ModelArg::Straight => Model::Straight,
                ModelArg::Augmented => Model::Augmented,
            };
            let times = subdivide.unwrap_or(if model == Model::Augmented { 1 } else { 0 });
            let (k, p) = subdivided(&load(&input)?, &io::parse_perversity(&p.perversity)?, times)?;
            let r = comparison_map(&k, &p, degree, model)?;
            let s = format!(
                "J_{degree}: {} -> {}, injective {}, surjective {}",
                r.map.source, r.map.target, r.map.injective, r.map.surjective
            );
            (value(&r), s)
        }
        Command::Pi0 { input, p } => {
            let r = pi0_perverse(&load(&input)?, &io::parse_perversity(&p.perversity)?)?;
            let s = format!("{} class(es)", r.classes.len());
            (value(&r), s)
        }
        Command::Stability { input, p, max_subdivide, budget } => {
            let r = subdivision_stability(&load(&input)?, &io::parse_perversity(&p.perversity)?, max_subdivide, Pi1Options::default(), budget)?;
            let s = if r.stable { "last two levels agree".to_string() } else { format!("unstable: {}", r.disagreements.join("; ")) };
            (value(&r), s)
        }
        Command::Pi1 { input, p, basepoint, subdivide, budget, seed, report } => {
            let k = load(&input)?;
            let p = io::parse_perversity(&p.perversity)?;
            let r = perverse_pi1_subdivided(&k, &p, basepoint, subdivide, Pi1Options { tietze_budget: budget, seed })?;
            let s = format!(
                "raw {} generators / {} relators, simplified {}, abelianization {}",
                r.raw.generators,
                r.raw.relators.len(),
                r.simplified,
                r.abelianization
            );
            (if report { value(&r) } else { value(&r.simplified) }, s)
        }
        Command::Quotients { presentation, targets, surjective, budget } => {
            let text = if presentation.trim_start().starts_with('{') {
                presentation
            } else {
                std::fs::read_to_string(&presentation).map_err(Error::from)?
            };
            let g: GroupPresentation = serde_json::from_str(&text).map_err(Error::from)?;
            let mut out = Vec::new();
            for t in &targets {
                out.push(find_homomorphisms(&g, &FiniteGroupTarget::by_name(t)?, surjective, budget));
            }
            let s = out.iter().map(|r| format!("{}: {} ({:?})", r.target, r.count, r.status)).collect::<Vec<_>>().join(", ");
            if let Some(r) = out.iter().find(|r| r.status == SearchStatus::Inconclusive) {
                return Err(Failure::Inconclusive(format!("search into {} ran out of budget", r.target)));
            }
            (value(&out), s)
        }
        Command::Construct { operation, first, second } => {
            let a = load_operand(&first)?;
            let k = match (operation.as_str(), &second) {
                ("cone", None) => construct::cone(&a),
                ("suspension", None) => construct::suspension(&a),
                ("trivial", None) => fixtures::unfiltered(&a),
                ("join", Some(b)) => {
                    let b = load_operand(b)?;
                    construct::join(&a, &b.shifted(a.vertices().last().map_or(0, |v| v + 1)))?
                }
                ("product", Some(b)) => construct::product(&a, &load_operand(b)?)?,
                (op, _) => return Err(Error::malformed(format!("wrong number of operands for {op}")).into()),
            };
            let s = format!("f-vector {:?}", k.f_vector());
            (value(&io::ComplexJson::from_complex(&k)), s)
        }
        Command::Subdivide { input, times } => {
            let k = subdivide_times(&load(&input)?, times);
            let s = format!("f-vector {:?}", k.f_vector());
            (value(&io::ComplexJson::from_complex(&k)), s)
        }
        Command::Fixture { expression, verify, all } => {
            if all {
                let mut reports = Vec::new();
                for e in fixtures::CORPUS {
                    reports.push(fixtures::verify(e)?.1);
                }
                let failed: Vec<&str> = reports.iter().filter(|r| !r.pass).map(|r| r.fixture.as_str()).collect();
                if !failed.is_empty() {
                    return Err(Error::malformed(format!("fixtures failed verification: {failed:?}")).into());
                }
                (value(&reports), format!("{} fixtures verified", reports.len()))
            } else if verify {
                let expression = expression.unwrap_or_default();
                let (_, r) = fixtures::verify(&expression)?;
                if !r.pass {
                    let bad: Vec<String> = r
                        .checks
                        .iter()
                        .filter(|c| !c.pass)
                        .map(|c| format!("{}: expected {}, got {}", c.property, c.expected, c.actual))
                        .collect();
                    eprintln!("{}", io::to_pretty(&r).trim_end());
                    return Err(Error::malformed(format!("{expression} failed verification: {}", bad.join("; "))).into());
                }
                let s = format!("{expression}: {} checks passed", r.checks.len());
                (value(&r), s)
            } else {
                let k = fixtures::parse(&expression.unwrap_or_default())?;
                let s = format!("f-vector {:?}", k.f_vector());
                (value(&io::ComplexJson::from_complex(&k)), s)
            }
        }
        Command::CompareCoarsening { fine, coarse, p, subdivide, budget, seed } => {
            let (fine, coarse) = (load_operand(&fine)?, load_operand(&coarse)?);
            let p = io::parse_perversity(&p.perversity)?;
            let opts = Pi1Options { seed, ..Pi1Options::default() };
            let r = compare_coarsening_pi1(&fine, &coarse, &p, subdivide, opts, budget)?;
            let s = format!(
                "exceptional strata {:?}; fine {}, coarse {}",
                r.exceptional_strata, r.fine.pi1.simplified, r.coarse.pi1.simplified
            );
            if r.fine.quotients.iter().chain(&r.coarse.quotients).any(|q| q.status == SearchStatus::Inconclusive) {
                eprintln!("{}", io::to_pretty(&r).trim_end());
                return Err(Failure::Inconclusive("a quotient search ran out of budget".into()));
            }
            (value(&r), s)
        }
        Command::MvCheck { input, p, vertex, subdivide } => {
            let k0 = load(&input)?;
            let (k, p) = subdivided(&k0, &io::parse_perversity(&p.perversity)?, subdivide)?;
            let mut v = vertex;
            let mut cur = k0;
            for _ in 0..subdivide {
                v = subdivision_vertex(&cur, v)?;
                cur = subdivide_times(&cur, 1);
            }
            let (a, b) = star_cover(&k, v)?;
            let r = mayer_vietoris_check(&k, &p, &a, &b)?;
            let s = format!("exact: {}", r.exact);
            (value(&r), s)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok((v, summary)) => {
            let text = io::to_pretty(&v);
            match &cli.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            eprintln!("{summary}");
            ExitCode::SUCCESS
        }
        Err(Failure::Inconclusive(m)) => {
            eprintln!("inconclusive: {m}");
            ExitCode::from(4)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Precondition(_) | Error::Undefined(_) => 3,
                _ => 2,
            })
        }
    }
}
