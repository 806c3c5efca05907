//! cgsolve: solve token games on digraphs, heap games, Nimania and small
//! partizan games from the command line.
//!
//! Output is TSV on stdout (opt-in aligned tables via --pretty where
//! supported); diagnostics go to stderr. Exit codes: 0 success, 1 invalid
//! input, 2 resource bound exceeded.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cgsolve::annihilation::{self, AnnPosition};
use cgsolve::digraph::{GameInput, TokenPosition};
use cgsolve::heaps::{
    cyclic_nimhoff_g, find_period, nimdi_verdict, octal_g_sequence, pow2k_nimhoff_g, wythoff3_p,
    MoveFamily, MoveSet, OctalCode, TakeSolver,
};
use cgsolve::loopy;
use cgsolve::nimania::{self, Policy, Replication, SimOutcome};
use cgsolve::partizan::{self, Games};
use cgsolve::Error;

#[derive(Parser)]
#[command(
    name = "cgsolve",
    version,
    about = "Combinatorial game solver: digraph token games, heap games, Nimania, partizan values",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Label a digraph with gamma values and classify the token position
    GraphSolve(GraphArgs),
    /// Optimal next move in a token-sum game on a digraph
    SumMove(GraphArgs),
    /// Classify an annihilation position and report an optimal move
    Annihilate(AnnArgs),
    /// Grundy table of Wythoff's game
    Wythoff(GridArgs),
    /// Nimhoff family games: closed forms and generic Take games
    #[command(subcommand)]
    Nimhoff(NimhoffCommand),
    /// P-position triples of 3-pile XOR-Wythoff
    Wythoff3(Wythoff3Args),
    /// Grundy sequence of an octal game with period detection
    Octal(OctalArgs),
    /// Nimania: exact solving and seeded simulation
    #[command(subcommand)]
    Nimania(NimaniaCommand),
    /// Partizan games: evaluate, classify, Domineering boards
    #[command(subcommand)]
    Partizan(PartizanCommand),
}

#[derive(Args)]
struct GraphArgs {
    /// Inline JSON ('{"n":2,...}') or a path to a JSON file
    input: String,
}

#[derive(Args)]
struct AnnArgs {
    /// Inline JSON with "occupancy" or distinct "tokens", or a file path
    input: String,
    /// Cap on expanded annihilation-graph states
    #[arg(long, default_value_t = annihilation::DEFAULT_ANN_BOUND)]
    max_states: usize,
}

#[derive(Args)]
struct GridArgs {
    /// Number of rows (first pile 0..rows-1)
    #[arg(long)]
    rows: u64,
    /// Number of columns (second pile 0..cols-1)
    #[arg(long)]
    cols: u64,
    /// Aligned columns instead of tab separation
    #[arg(long)]
    pretty: bool,
}

#[derive(Subcommand)]
enum NimhoffCommand {
    /// Closed-form table for cyclic Nimhoff (moves with 0 < sum < h)
    Cyclic(CyclicArgs),
    /// Closed-form table via the k-Nim-sum for 2^k-Nimhoff
    Pow2k(Pow2kArgs),
    /// Generic Take game: Grundy table or Nimdi verdict
    Take(TakeArgs),
}

#[derive(Args)]
struct CyclicArgs {
    /// Move budget h (h = 1 or 2 is Nim)
    #[arg(long)]
    h: u64,
    #[arg(long)]
    rows: u64,
    #[arg(long)]
    cols: u64,
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct Pow2kArgs {
    /// Exponent k >= 1 (moves remove 2^k from two distinct piles)
    #[arg(long)]
    k: u32,
    #[arg(long)]
    rows: u64,
    #[arg(long)]
    cols: u64,
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct TakeArgs {
    /// Simultaneous-removal vectors, e.g. "1,3" or "1,3;3,1"
    #[arg(long)]
    vectors: Option<String>,
    /// Generator family: diag, shift or xor0 (repeatable)
    #[arg(long)]
    family: Vec<String>,
    /// Emit a Grundy table with this many rows
    #[arg(long)]
    rows: Option<u64>,
    /// Columns of the Grundy table
    #[arg(long)]
    cols: Option<u64>,
    /// Compare against Nim up to this pile bound and report the verdict
    #[arg(long)]
    verdict: bool,
    /// Pile bound for the verdict scan
    #[arg(long, default_value_t = 12)]
    bound: u64,
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct Wythoff3Args {
    /// Largest pile size in the exhaustive labeling
    #[arg(long)]
    limit: u64,
}

#[derive(Args)]
struct OctalArgs {
    /// Octal digit string, e.g. 3 or 137
    #[arg(long)]
    code: String,
    /// Largest heap size to evaluate
    #[arg(long)]
    max: usize,
}

#[derive(Subcommand)]
enum NimaniaCommand {
    /// Exact minimax solution from a single starting counter
    Solve(NimaniaSolveArgs),
    /// Play one seeded game and print the transcript
    Simulate(NimaniaSimArgs),
}

#[derive(Args)]
struct NimaniaSolveArgs {
    /// Starting counter
    #[arg(long)]
    n: u64,
    /// Replication preset: nimania, zero, or constant:N
    #[arg(long, default_value = "nimania")]
    f: String,
    /// Cap on the move number
    #[arg(long, default_value_t = nimania::DEFAULT_MOVE_CAP)]
    cap: u64,
}

#[derive(Args)]
struct NimaniaSimArgs {
    /// Starting counter
    #[arg(long)]
    n: u64,
    /// RNG seed for random policies
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Policy for both players: random or optimal
    #[arg(long, default_value = "random")]
    policy: String,
    /// Replication preset: nimania, zero, or constant:N
    #[arg(long, default_value = "nimania")]
    f: String,
    /// Cap on the move number (cap hits are reported, not fatal)
    #[arg(long, default_value_t = nimania::DEFAULT_MOVE_CAP)]
    cap: u64,
}

#[derive(Subcommand)]
enum PartizanCommand {
    /// Evaluate a bracket-notation game as a number if it is one
    Eval(PartizanExprArgs),
    /// Outcome class of a bracket-notation game
    Outcome(PartizanExprArgs),
    /// Value and outcome of a Domineering board given as "r,c" cells
    Domineering(DomineeringArgs),
}

#[derive(Args)]
struct PartizanExprArgs {
    /// Game in bracket notation, e.g. "{-1|99}" or "{0|0}"
    expr: String,
}

#[derive(Args)]
struct DomineeringArgs {
    /// Free cells as whitespace- or semicolon-separated "row,col" pairs
    cells: String,
    /// Cap on the number of cells
    #[arg(long, default_value_t = partizan::DEFAULT_CELL_BOUND)]
    cell_bound: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help/--version land here too and must exit 0.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_resource_bound() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(cli: Cli) -> Result<String, Error> {
    match cli.command {
        Command::GraphSolve(args) => graph_solve(&args),
        Command::SumMove(args) => sum_move(&args),
        Command::Annihilate(args) => annihilate(&args),
        Command::Wythoff(args) => wythoff_grid(&args),
        Command::Nimhoff(cmd) => nimhoff(cmd),
        Command::Wythoff3(args) => wythoff3(&args),
        Command::Octal(args) => octal(&args),
        Command::Nimania(cmd) => nimania_cmd(cmd),
        Command::Partizan(cmd) => partizan_cmd(cmd),
    }
}

fn read_input(source: &str) -> Result<GameInput, Error> {
    let text = if source.trim_start().starts_with('{') {
        source.to_string()
    } else {
        std::fs::read_to_string(source)
            .map_err(|e| Error::Invalid(format!("cannot read {source}: {e}")))?
    };
    GameInput::from_json(&text)
}

fn graph_solve(args: &GraphArgs) -> Result<String, Error> {
    let input = read_input(&args.input)?;
    let labeling = loopy::gamma(&input.graph);
    let mut out = String::new();
    match &input.tokens {
        Some(tokens) => {
            let pos = TokenPosition::new(&input.graph, tokens.iter().copied())?;
            let outcome = loopy::classify_position_with(&labeling, &pos);
            writeln!(out, "{outcome}").unwrap();
        }
        None => {
            for u in 0..input.graph.vertex_count() {
                let value = labeling.value(u);
                let class = loopy::classify_value(value);
                writeln!(out, "{u}\t{value}\t{class}").unwrap();
            }
        }
    }
    Ok(out)
}

fn sum_move(args: &GraphArgs) -> Result<String, Error> {
    let input = read_input(&args.input)?;
    let tokens = input
        .tokens
        .as_ref()
        .ok_or_else(|| Error::Invalid("sum-move needs a \"tokens\" field".into()))?;
    let pos = TokenPosition::new(&input.graph, tokens.iter().copied())?;
    let labeling = loopy::gamma(&input.graph);
    let mut out = String::new();
    match loopy::next_move_with(&input.graph, &labeling, &pos) {
        Some(mv) => writeln!(out, "{}\t{}\t{}", mv.token, mv.from, mv.to).unwrap(),
        None => writeln!(out, "none").unwrap(),
    }
    Ok(out)
}

fn annihilate(args: &AnnArgs) -> Result<String, Error> {
    let input = read_input(&args.input)?;
    let pos = match (&input.occupancy, &input.tokens) {
        (Some(bits), _) => AnnPosition::from_occupancy(&input.graph, bits)?,
        (None, Some(tokens)) => AnnPosition::from_tokens(&input.graph, tokens)?,
        (None, None) => {
            return Err(Error::Invalid(
                "annihilate needs an \"occupancy\" or \"tokens\" field".into(),
            ))
        }
    };
    let analysis = annihilation::ann_analyze(&input.graph, pos, args.max_states)?;
    let mut out = String::new();
    match analysis.best_move {
        Some(mv) => writeln!(out, "{}\t{}\t{}", analysis.outcome, mv.from, mv.to).unwrap(),
        None => writeln!(out, "{}\tnone", analysis.outcome).unwrap(),
    }
    Ok(out)
}

fn render_grid(
    rows: u64,
    cols: u64,
    pretty: bool,
    mut cell: impl FnMut(u64, u64) -> Result<u64, Error>,
) -> Result<String, Error> {
    let mut grid = Vec::new();
    for a in 0..rows {
        let mut row = Vec::new();
        for b in 0..cols {
            row.push(cell(a, b)?);
        }
        grid.push(row);
    }
    let mut out = String::new();
    if pretty {
        let width = grid
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        for row in &grid {
            let line: Vec<String> = row.iter().map(|v| format!("{v: >width$}")).collect();
            writeln!(out, "{}", line.join(" ")).unwrap();
        }
    } else {
        for row in &grid {
            let line: Vec<String> = row.iter().map(u64::to_string).collect();
            writeln!(out, "{}", line.join("\t")).unwrap();
        }
    }
    Ok(out)
}

fn wythoff_grid(args: &GridArgs) -> Result<String, Error> {
    let mut solver = TakeSolver::new(MoveSet::wythoff());
    render_grid(args.rows, args.cols, args.pretty, |a, b| {
        solver.grundy(&[a, b])
    })
}

fn nimhoff(cmd: NimhoffCommand) -> Result<String, Error> {
    match cmd {
        NimhoffCommand::Cyclic(args) => {
            if args.h == 0 {
                return Err(Error::Invalid("h must be at least 1".into()));
            }
            render_grid(args.rows, args.cols, args.pretty, |a, b| {
                cyclic_nimhoff_g(&[a, b], args.h)
            })
        }
        NimhoffCommand::Pow2k(args) => {
            if args.k == 0 {
                return Err(Error::Invalid("k must be at least 1".into()));
            }
            render_grid(args.rows, args.cols, args.pretty, |a, b| {
                pow2k_nimhoff_g(&[a, b], args.k)
            })
        }
        NimhoffCommand::Take(args) => take_cmd(&args),
    }
}

fn parse_vectors(text: &str) -> Result<Vec<Vec<u64>>, Error> {
    let mut out = Vec::new();
    for part in text.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let mut v = Vec::new();
        for comp in part.split(',') {
            let comp = comp.trim();
            v.push(
                comp.parse::<u64>()
                    .map_err(|_| Error::Invalid(format!("invalid vector component {comp:?}")))?,
            );
        }
        out.push(v);
    }
    Ok(out)
}

fn parse_family(name: &str) -> Result<MoveFamily, Error> {
    match name {
        "diag" => Ok(MoveFamily::Diag),
        "shift" => Ok(MoveFamily::Shift),
        "xor0" => Ok(MoveFamily::XorZero),
        other => Err(Error::Invalid(format!(
            "unknown family {other:?} (expected diag, shift or xor0)"
        ))),
    }
}

fn take_cmd(args: &TakeArgs) -> Result<String, Error> {
    let vectors = match &args.vectors {
        Some(text) => parse_vectors(text)?,
        None => Vec::new(),
    };
    let families: Vec<MoveFamily> = args
        .family
        .iter()
        .map(|f| parse_family(f))
        .collect::<Result<_, _>>()?;
    let dims = vectors
        .first()
        .map(Vec::len)
        .or_else(|| {
            families.first().map(|f| match f {
                MoveFamily::Diag | MoveFamily::Shift => 2,
                MoveFamily::XorZero => 3,
            })
        })
        .ok_or_else(|| Error::Invalid("take needs --vectors or --family".into()))?;
    let mut moves = MoveSet::with_vectors(dims, vectors)?;
    for f in families {
        moves.add_family(f)?;
    }
    let mut out = String::new();
    if args.verdict {
        let verdict = nimdi_verdict(&moves, args.bound)?;
        writeln!(out, "criterion\t{}", verdict.criterion).unwrap();
        writeln!(out, "agrees\t{}", verdict.brute_force_agrees).unwrap();
        match &verdict.witness {
            Some(w) => {
                let w: Vec<String> = w.iter().map(u64::to_string).collect();
                writeln!(out, "witness\t{}", w.join(",")).unwrap();
            }
            None => writeln!(out, "witness\tnone").unwrap(),
        }
    }
    if let (Some(rows), Some(cols)) = (args.rows, args.cols) {
        if moves.dims() != 2 {
            return Err(Error::Invalid(
                "grids are only emitted for 2-pile games".into(),
            ));
        }
        let mut solver = TakeSolver::new(moves.clone());
        out.push_str(&render_grid(rows, cols, args.pretty, |a, b| {
            solver.grundy(&[a, b])
        })?);
    } else if !args.verdict {
        return Err(Error::Invalid(
            "take needs --rows/--cols for a table or --verdict".into(),
        ));
    }
    Ok(out)
}

fn wythoff3(args: &Wythoff3Args) -> Result<String, Error> {
    let triples = wythoff3_p(args.limit)?;
    let mut out = String::new();
    for (a, b, c) in triples {
        writeln!(out, "{a}\t{b}\t{c}").unwrap();
    }
    Ok(out)
}

fn octal(args: &OctalArgs) -> Result<String, Error> {
    let code: OctalCode = args.code.parse()?;
    let seq = octal_g_sequence(&code, args.max);
    let mut out = String::new();
    for (n, g) in seq.iter().enumerate() {
        writeln!(out, "{n}\t{g}").unwrap();
    }
    match find_period(&seq) {
        Some((p, len)) => writeln!(out, "period\t{p}\t{len}").unwrap(),
        None => writeln!(out, "period\tnone").unwrap(),
    }
    Ok(out)
}

fn parse_replication(text: &str) -> Result<Replication, Error> {
    match text {
        "nimania" => Ok(Replication::Nimania),
        "zero" => Ok(Replication::Zero),
        other => match other.strip_prefix("constant:") {
            Some(c) => c
                .parse()
                .map(Replication::Constant)
                .map_err(|_| Error::Invalid(format!("invalid constant in {other:?}"))),
            None => Err(Error::Invalid(format!(
                "unknown replication {other:?} (expected nimania, zero, constant:N)"
            ))),
        },
    }
}

fn parse_policy(text: &str) -> Result<Policy, Error> {
    match text {
        "random" => Ok(Policy::Random),
        "optimal" => Ok(Policy::Optimal),
        other => Err(Error::Invalid(format!(
            "unknown policy {other:?} (expected random or optimal)"
        ))),
    }
}

fn nimania_cmd(cmd: NimaniaCommand) -> Result<String, Error> {
    let mut out = String::new();
    match cmd {
        NimaniaCommand::Solve(args) => {
            let f = parse_replication(&args.f)?;
            let solution = nimania::solve(args.n, f, args.cap)?;
            writeln!(out, "winner\t{}", solution.winner).unwrap();
            writeln!(out, "length\t{}", solution.length).unwrap();
            let line: Vec<String> = solution.optimal_line.iter().map(u64::to_string).collect();
            writeln!(out, "line\t{}", line.join(",")).unwrap();
        }
        NimaniaCommand::Simulate(args) => {
            let f = parse_replication(&args.f)?;
            let policy = parse_policy(&args.policy)?;
            let t = nimania::simulate(args.n, f, policy, policy, args.seed, args.cap)?;
            for step in &t.steps {
                let counts: Vec<String> = step.counts_before.iter().map(u64::to_string).collect();
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}",
                    step.stage,
                    step.player,
                    step.choice,
                    counts.join(",")
                )
                .unwrap();
            }
            match t.outcome {
                SimOutcome::Winner(p) => writeln!(out, "winner\t{p}").unwrap(),
                SimOutcome::CapExceeded => writeln!(out, "cap-exceeded").unwrap(),
            }
        }
    }
    Ok(out)
}

fn parse_cells(text: &str) -> Result<Vec<(i32, i32)>, Error> {
    let mut cells = Vec::new();
    for token in text.split(|c: char| c.is_whitespace() || c == ';') {
        if token.is_empty() {
            continue;
        }
        let (r, c) = token
            .split_once(',')
            .ok_or_else(|| Error::Invalid(format!("cell {token:?} is not \"row,col\"")))?;
        let r = r
            .trim()
            .parse()
            .map_err(|_| Error::Invalid(format!("invalid row in {token:?}")))?;
        let c = c
            .trim()
            .parse()
            .map_err(|_| Error::Invalid(format!("invalid column in {token:?}")))?;
        cells.push((r, c));
    }
    if cells.is_empty() {
        return Err(Error::Invalid("no cells given".into()));
    }
    Ok(cells)
}

fn partizan_cmd(cmd: PartizanCommand) -> Result<String, Error> {
    let mut games = Games::new();
    let mut out = String::new();
    match cmd {
        PartizanCommand::Eval(args) => {
            let g = partizan::parse_game(&mut games, &args.expr)?;
            match games.number_value(g) {
                Some(v) => writeln!(out, "{v}").unwrap(),
                None => writeln!(out, "not-a-number").unwrap(),
            }
        }
        PartizanCommand::Outcome(args) => {
            let g = partizan::parse_game(&mut games, &args.expr)?;
            writeln!(out, "{}", games.outcome(g)).unwrap();
        }
        PartizanCommand::Domineering(args) => {
            let cells = parse_cells(&args.cells)?;
            let g = partizan::domineering_value(&mut games, &cells, args.cell_bound)?;
            let value = match games.number_value(g) {
                Some(v) => v.to_string(),
                None => "not-a-number".to_string(),
            };
            writeln!(out, "{value}\t{}", games.outcome(g)).unwrap();
        }
    }
    Ok(out)
}
