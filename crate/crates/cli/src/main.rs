mod dot;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use torusbord::corpus;
use torusbord::io as tio;
use torusbord::localization::{
    genus_at_one, laurent_check, vertex_data, vertex_data_from_polynomial, DEFAULT_ORDER,
};
use torusbord::quasitoric::{add_pairs, realize_dim1, realize_dim2, tetrahedron_fixture};
use torusbord::{
    min_support_search, Connectivity, Error, ErrorKind, ExteriorPolynomial, LatticeVector,
    QuasitoricPair, TorusGraph,
};

#[derive(Parser, Debug)]
#[command(
    name = "torusbord",
    version,
    about = "Torus graphs, exterior polynomials and quasitoric pairs"
)]
struct Cli {
    /// Input file; repeat for commands taking two inputs. Reads stdin when omitted.
    #[arg(long = "in", global = true)]
    inputs: Vec<PathBuf>,
    /// Output file; writes stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the torus axial-function axioms of a graph.
    ValidateGraph {
        #[arg(long)]
        allow_disconnected: bool,
    },
    /// Attach an orientation to a graph.
    Orient,
    /// Torus polynomial of an oriented graph.
    Polynomial,
    /// Dual of a faithful polynomial.
    Dual,
    /// Boundary of a cocharacter polynomial.
    Boundary,
    /// Membership of a character polynomial in K_n.
    CheckKn,
    /// Membership of a cocharacter polynomial in 𝔎_n.
    CheckFkn,
    /// Graph realizing an element of K_n.
    FromPolynomial,
    /// Cancel vertex pairs until the graph is prime.
    PrimeReduce,
    /// Connected sum of two graphs at the given vertices.
    ConnectGraphs {
        #[arg(long)]
        v1: u64,
        #[arg(long)]
        v2: u64,
    },
    /// Emit a fixture: sphere, k4, projective (graphs); simplex, hexagon, tetrahedron (pairs).
    Fixture { name: String, n: usize },
    /// Vertices of an H-polytope.
    Vertices,
    /// Check condition (★) of a pair.
    CheckStar,
    /// Quasitoric polynomial of a pair.
    QtPolynomial,
    /// Torus graph of a pair.
    GraphOfPair,
    /// Product of two pairs.
    ProductPairs,
    /// Connected sum of two pairs; defaults to the first canceling vertices.
    ConnectPairs {
        #[arg(long)]
        v1: Option<usize>,
        #[arg(long)]
        v2: Option<usize>,
    },
    /// Single pair whose polynomial is the sum of two pairs' polynomials.
    AddPairs,
    /// Pairs realizing an element of 𝔎_1 or 𝔎_2.
    Realize {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        dim: u8,
    },
    /// Laurent certificate of the localized genus series.
    Localize {
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
    /// Value at z = 1 of the order-0 genus series.
    Genus {
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
    /// Exhaustive search for K_n elements with at most n monomials.
    MinSupportSearch {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        bound: i64,
    },
    /// DOT rendering of a graph.
    EmitDot,
    /// Random valid pair of dimension n from the seeded corpus.
    RandomPair {
        #[arg(long)]
        n: usize,
    },
}

enum Output {
    Json(Value),
    Text(String),
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e.kind() {
            ErrorKind::Schema => 2,
            ErrorKind::Precondition => 3,
            ErrorKind::Internal => 4,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn schema(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: msg.into(),
    }
}

fn precondition(msg: impl Into<String>) -> Failure {
    Failure {
        code: 3,
        message: msg.into(),
    }
}

/// Input documents: one per `--in` path, or every JSON value on stdin.
fn read_inputs(paths: &[PathBuf]) -> Result<Vec<String>, Failure> {
    if !paths.is_empty() {
        return paths
            .iter()
            .map(|p| fs::read_to_string(p).map_err(|e| schema(format!("{}: {e}", p.display()))))
            .collect();
    }
    let mut s = String::new();
    io::stdin()
        .read_to_string(&mut s)
        .map_err(|e| schema(format!("stdin: {e}")))?;
    serde_json::Deserializer::from_str(&s)
        .into_iter::<Value>()
        .map(|v| {
            v.map(|v| v.to_string())
                .map_err(|e| schema(format!("stdin: {e}")))
        })
        .collect()
}

fn inputs(cli: &Cli, count: usize) -> Result<Vec<String>, Failure> {
    let docs = read_inputs(&cli.inputs)?;
    if docs.len() != count {
        return Err(schema(format!(
            "expected {count} input document(s), found {}",
            docs.len()
        )));
    }
    Ok(docs)
}

fn one(cli: &Cli) -> Result<String, Failure> {
    Ok(inputs(cli, 1)?.remove(0))
}

fn two(cli: &Cli) -> Result<(String, String), Failure> {
    let mut d = inputs(cli, 2)?;
    let b = d.pop().unwrap();
    Ok((d.pop().unwrap(), b))
}

fn parse(s: &str) -> Result<Value, Failure> {
    serde_json::from_str(s).map_err(|e| schema(e.to_string()))
}

fn poly_value(h: &ExteriorPolynomial) -> Result<Value, Failure> {
    parse(&tio::polynomial_to_json(h))
}

fn graph_value(g: &TorusGraph) -> Result<Value, Failure> {
    parse(&tio::graph_to_json(g))
}

fn pair_value(q: &QuasitoricPair) -> Result<Value, Failure> {
    parse(&tio::pair_to_json(q))
}

fn graph_in(cli: &Cli) -> Result<TorusGraph, Failure> {
    Ok(tio::parse_graph(&one(cli)?)?)
}

fn poly_in(cli: &Cli) -> Result<ExteriorPolynomial, Failure> {
    Ok(tio::parse_polynomial(&one(cli)?)?)
}

fn pair_in(cli: &Cli) -> Result<QuasitoricPair, Failure> {
    Ok(tio::parse_pair(&one(cli)?)?)
}

fn pairs_in(cli: &Cli) -> Result<(QuasitoricPair, QuasitoricPair), Failure> {
    let (a, b) = two(cli)?;
    Ok((tio::parse_pair(&a)?, tio::parse_pair(&b)?))
}

fn oriented(g: TorusGraph) -> Result<TorusGraph, Failure> {
    if g.is_oriented() {
        Ok(g)
    } else {
        Ok(g.orient()?)
    }
}

fn standard_simplex(n: usize) -> Result<QuasitoricPair, Failure> {
    if n == 0 {
        return Err(precondition("simplex needs n >= 1"));
    }
    let mut labels: Vec<LatticeVector> = (0..n).map(|i| LatticeVector::basis(n, i)).collect();
    labels.push(LatticeVector::new(vec![-1; n]));
    Ok(QuasitoricPair::simplex(labels)?)
}

fn fixture(name: &str, n: usize) -> Result<Value, Failure> {
    match name {
        "projective" => graph_value(&standard_simplex(n)?.torus_graph()?),
        "simplex" => pair_value(&standard_simplex(n)?),
        "hexagon" if n == 2 => pair_value(&corpus::hexagon_pair()),
        "tetrahedron" if n == 3 => pair_value(&tetrahedron_fixture()?.1),
        "hexagon" | "tetrahedron" => {
            Err(Error::UnknownFixture(format!("{name} in rank {n}")).into())
        }
        _ => graph_value(&TorusGraph::fixture(name, n)?),
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    use Command::*;
    let out = match &cli.command {
        ValidateGraph { allow_disconnected } => {
            let c = if *allow_disconnected {
                Connectivity::Allowed
            } else {
                Connectivity::Required
            };
            let r = graph_in(cli)?.validate_axial(c)?;
            let v = tio::axial_report_to_value(&r);
            if !r.passed() {
                emit(cli, &Output::Json(v))?;
                return Err(precondition("graph is not a valid torus graph"));
            }
            Output::Json(v)
        }
        Orient => Output::Json(graph_value(&graph_in(cli)?.orient()?)?),
        Polynomial => Output::Json(poly_value(&oriented(graph_in(cli)?)?.torus_polynomial()?)?),
        Dual => Output::Json(poly_value(&poly_in(cli)?.dual()?)?),
        Boundary => Output::Json(poly_value(&poly_in(cli)?.boundary()?)?),
        CheckKn => Output::Json(json!({ "member": poly_in(cli)?.in_kn()? })),
        CheckFkn => Output::Json(json!({ "member": poly_in(cli)?.in_fkn()? })),
        FromPolynomial => Output::Json(graph_value(&TorusGraph::from_polynomial(&poly_in(cli)?)?)?),
        PrimeReduce => Output::Json(graph_value(&oriented(graph_in(cli)?)?.prime_reduce()?)?),
        ConnectGraphs { v1, v2 } => {
            let (a, b) = two(cli)?;
            let g1 = oriented(tio::parse_graph(&a)?)?;
            let g2 = oriented(tio::parse_graph(&b)?)?;
            let (g, _) = TorusGraph::connected_sum(&g1, *v1, &g2, *v2)?;
            Output::Json(graph_value(&g)?)
        }
        Fixture { name, n } => Output::Json(fixture(name, *n)?),
        Vertices => {
            let p = tio::parse_hpolytope(&one(cli)?)?;
            let e = p.enumerate_vertices()?;
            let vertices: Vec<Value> = e
                .data
                .vertices()
                .iter()
                .zip(&e.points)
                .map(|(v, x)| {
                    json!({
                        "facets": v.facets,
                        "point": x.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Output::Json(
                json!({ "n": p.dimension(), "vertices": vertices, "edges": e.data.edges() }),
            )
        }
        CheckStar => {
            let q = pair_in(cli)?;
            Output::Json(match q.star_failure()? {
                None => json!({ "holds": true }),
                Some((v, d)) => json!({ "holds": false, "vertex": v, "det": d }),
            })
        }
        QtPolynomial => Output::Json(poly_value(&pair_in(cli)?.quasitoric_polynomial()?)?),
        GraphOfPair => Output::Json(graph_value(&pair_in(cli)?.torus_graph()?)?),
        ProductPairs => {
            let (a, b) = pairs_in(cli)?;
            Output::Json(pair_value(&a.product(&b)?)?)
        }
        ConnectPairs { v1, v2 } => {
            let (a, b) = pairs_in(cli)?;
            let (v, w) = match (v1, v2) {
                (Some(v), Some(w)) => (*v, *w),
                (None, None) => {
                    QuasitoricPair::find_cancelling(&a, &b).ok_or(Error::NoCancellation)?
                }
                _ => return Err(schema("give both --v1 and --v2 or neither")),
            };
            if v >= a.num_vertices() || w >= b.num_vertices() {
                return Err(schema("vertex index out of range"));
            }
            Output::Json(pair_value(&QuasitoricPair::connected_sum(&a, v, &b, w)?)?)
        }
        AddPairs => {
            let (a, b) = pairs_in(cli)?;
            Output::Json(pair_value(&add_pairs(&a, &b)?)?)
        }
        Realize { dim } => {
            let h = poly_in(cli)?;
            if *dim == 1 {
                let pairs = realize_dim1(&h)?;
                Output::Json(Value::Array(
                    pairs.iter().map(pair_value).collect::<Result<_, _>>()?,
                ))
            } else {
                Output::Json(pair_value(&realize_dim2(&h)?)?)
            }
        }
        Localize { order, trials } => {
            let (n, data) = vertex_input(cli)?;
            let c = laurent_check(n, &data, *trials, *order, cli.seed)?;
            Output::Json(tio::certificate_to_value(&c))
        }
        Genus { trials } => {
            let (n, data) = vertex_input(cli)?;
            Output::Json(json!({ "genus": genus_at_one(n, &data, *trials, cli.seed)? }))
        }
        MinSupportSearch { n, bound } => {
            let r = min_support_search(*n, *bound)?;
            let message = match &r.counterexample {
                None => format!("no nonzero K_{n} element with ≤ {n} monomials"),
                Some(_) => format!("found a nonzero K_{n} element with ≤ {n} monomials"),
            };
            Output::Json(json!({
                "n": r.n,
                "bound": r.bound,
                "monomials": r.monomials,
                "subsets_checked": r.subsets_checked,
                "confirmed": r.confirmed(),
                "message": message,
                "counterexample": r.counterexample.as_ref().map(poly_value).transpose()?,
                "witness": r.witness.as_ref().map(poly_value).transpose()?,
            }))
        }
        EmitDot => Output::Text(dot::emit_dot(&graph_in(cli)?)),
        RandomPair { n } => {
            use rand_seed::seeded;
            Output::Json(pair_value(&corpus::random_pair(*n, &mut seeded(cli.seed)))?)
        }
    };
    Ok(out)
}

mod rand_seed {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub fn seeded(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }
}

/// Vertex data from either an oriented (or orientable) graph or a character
/// polynomial.
fn vertex_input(cli: &Cli) -> Result<(usize, Vec<torusbord::VertexData>), Failure> {
    let s = one(cli)?;
    let v = parse(&s)?;
    if v.get("terms").is_some() {
        let h = tio::parse_polynomial(&s)?;
        Ok((h.rank(), vertex_data_from_polynomial(&h)?))
    } else {
        let g = oriented(tio::parse_graph(&s)?)?;
        Ok((g.rank(), vertex_data(&g)?))
    }
}

fn emit(cli: &Cli, out: &Output) -> Result<(), Failure> {
    let text = match out {
        Output::Json(v) => format!("{}\n", tio::canonicalize(v.clone())),
        Output::Text(t) => t.clone(),
    };
    let io_err = |e: io::Error| Failure {
        code: 4,
        message: e.to_string(),
    };
    match &cli.out {
        Some(p) => fs::write(p, text).map_err(io_err),
        None => io::stdout().write_all(text.as_bytes()).map_err(io_err),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|o| emit(&cli, &o)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
