//! Command grammar and execution.

use blowup_core::blowup::{chart_transition, coordinate_charts_of, general_charts, rees_ideal, BlowupChart};
use blowup_core::descent::{coefficient_ideal, residual_order, ExceptionalRecord, HypersurfaceFrame};
use blowup_core::field::Field;
use blowup_core::game::{play_game, strategy_a, worst_case_rounds, GameState, Move, ROUND_CAP};
use blowup_core::geometry::{
    hilbert_samuel_prefix, order_along_prime, order_at_point, origin, singular_locus, top_locus_ideal, Point,
};
use blowup_core::resolve::{
    resolve_curve, resolve_curve_embedded, resolve_hypersurface_char0, resolve_monomial, ChartNode, ResolutionTrace,
    TraceStatus, DEFAULT_MAX_STEPS,
};
use blowup_core::ring::parse_poly;
use blowup_core::transform::{transform, TransformKind};
use blowup_core::{Ideal, Polynomial};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::script::{compile, Compiled, SessionScript};
use crate::{CliError, CommandOutput, ErrorInfo};

#[derive(Debug, Parser)]
#[command(no_binary_name = true, disable_help_flag = true, disable_help_subcommand = true)]
struct CommandLine {
    #[command(subcommand)]
    command: ScriptCommand,
}

#[derive(Debug, Args)]
struct CenterArgs {
    /// Center generated by these variables.
    #[arg(long, value_delimiter = ',')]
    center: Vec<String>,
    /// Center given by a declared ideal; uses the Rees charts.
    #[arg(long = "center-ideal")]
    center_ideal: Option<String>,
}

#[derive(Debug, Args)]
struct PointArg {
    /// Point coordinates; the origin by default.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    at: Vec<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Total,
    Strict,
    Weak,
    Controlled,
}

#[derive(Debug, Subcommand)]
enum ScriptCommand {
    Order {
        target: Option<String>,
        #[command(flatten)]
        at: PointArg,
    },
    OrderAlong {
        target: Option<String>,
        #[arg(long)]
        prime: Option<String>,
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
    },
    Sing {
        target: Option<String>,
    },
    Toplocus {
        target: Option<String>,
        #[command(flatten)]
        at: PointArg,
    },
    Hs {
        target: Option<String>,
        #[command(flatten)]
        at: PointArg,
        #[arg(long, default_value_t = 4)]
        max: u32,
    },
    Rees {
        #[command(flatten)]
        center: CenterArgs,
    },
    Charts {
        #[command(flatten)]
        center: CenterArgs,
    },
    Transition {
        #[command(flatten)]
        center: CenterArgs,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    Transform {
        target: Option<String>,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        control: Option<u32>,
        #[command(flatten)]
        center: CenterArgs,
        #[arg(long)]
        chart: Option<String>,
    },
    Coeff {
        target: Option<String>,
        #[arg(long = "var")]
        frame_var: String,
        #[arg(long)]
        order: Option<u32>,
        #[command(flatten)]
        at: PointArg,
    },
    ResidualOrder {
        target: Option<String>,
        #[arg(long, value_delimiter = ',')]
        exc: Vec<String>,
        #[command(flatten)]
        at: PointArg,
    },
    ResolveCurve {
        target: Option<String>,
        /// Stop once the strict transform is smooth.
        #[arg(long)]
        smooth: bool,
        #[arg(long = "max-steps", default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
    },
    ResolveMonomial {
        target: Option<String>,
        #[arg(long, value_delimiter = ',')]
        exc: Vec<String>,
        #[arg(long, default_value_t = 1)]
        control: u32,
        #[arg(long = "max-steps", default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
    },
    ResolveH0 {
        target: Option<String>,
        #[arg(long)]
        control: Option<u32>,
        #[arg(long = "max-steps", default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
    },
    Game {
        #[arg(long, default_value_t = ROUND_CAP)]
        cap: usize,
    },
}

fn parse_command(script: &SessionScript) -> Result<ScriptCommand, CliError> {
    let tokens: Vec<&str> = script.command.split_whitespace().collect();
    CommandLine::try_parse_from(tokens).map(|c| c.command).map_err(|e| CliError::Script {
        line: script.command_line,
        column: 1,
        message: e
            .render()
            .to_string()
            .lines()
            .next()
            .unwrap_or("invalid command")
            .trim_start_matches("error: ")
            .to_string(),
    })
}

pub fn run<F: Field>(script: &SessionScript, field: Option<F>) -> Result<CommandOutput, CliError> {
    let command = parse_command(script)?;
    if let ScriptCommand::Game { cap } = command {
        return game(script, cap);
    }
    let field = field.ok_or_else(|| CliError::Usage("the command needs a ring declaration".into()))?;
    let session = compile(script, field)?;
    execute(&session, command)
}

fn ok(result: Value, text: Vec<String>) -> Result<CommandOutput, CliError> {
    Ok(CommandOutput { result, text, limited: false, failed: None })
}

fn point<F: Field>(s: &Compiled<F>, coords: &[String]) -> Result<Point<F>, CliError> {
    let field = s.ring.field();
    if coords.is_empty() {
        return Ok(origin(field, s.ring.arity()));
    }
    if coords.len() != s.ring.arity() {
        return Err(CliError::Usage(format!("point needs {} coordinates", s.ring.arity())));
    }
    coords
        .iter()
        .map(|c| {
            let p = parse_poly(&s.ring, c)?;
            if !p.is_constant() {
                return Err(CliError::Usage(format!("'{c}' is not a field element")));
            }
            Ok(p.constant_term())
        })
        .collect()
}

fn var_indices<F: Field>(s: &Compiled<F>, names: &[String]) -> Result<Vec<usize>, CliError> {
    names.iter().map(|n| Ok(s.ring.require_index(n)?)).collect()
}

fn center_ideal<F: Field>(s: &Compiled<F>, c: &CenterArgs) -> Result<(Ideal<F>, bool), CliError> {
    match (&c.center_ideal, c.center.is_empty()) {
        (Some(name), true) => Ok((s.get(name)?.ideal.clone(), true)),
        (None, false) => Ok((Ideal::of_vars(&s.ring, &var_indices(s, &c.center)?), false)),
        _ => Err(CliError::Usage("give exactly one of --center and --center-ideal".into())),
    }
}

fn charts_for<F: Field>(s: &Compiled<F>, c: &CenterArgs) -> Result<Vec<BlowupChart<F>>, CliError> {
    let (center, general) = center_ideal(s, c)?;
    Ok(if general { general_charts(&center)? } else { coordinate_charts_of(&center)? })
}

fn select_chart<F: Field>(charts: &[BlowupChart<F>], name: &str) -> Result<usize, CliError> {
    charts
        .iter()
        .position(|c| c.name == name || c.name.strip_prefix("chart:") == Some(name))
        .ok_or_else(|| CliError::Usage(format!("no chart named '{name}'")))
}

fn principal<F: Field>(ideal: &Ideal<F>) -> Result<Polynomial<F>, CliError> {
    match ideal.generators() {
        [g] => Ok(g.clone()),
        _ => Err(CliError::Usage("the command needs a single polynomial".into())),
    }
}

fn order_text(v: Option<u32>) -> String {
    v.map_or_else(|| "inf".to_string(), |k| k.to_string())
}

fn chart_json<F: Field>(c: &BlowupChart<F>) -> Value {
    json!({
        "name": c.name,
        "map": c.map.images().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "exceptional": c.exceptional.to_string(),
        "relations": c.chart_ideal.to_string(),
    })
}

fn execute<F: Field>(s: &Compiled<F>, command: ScriptCommand) -> Result<CommandOutput, CliError> {
    match command {
        ScriptCommand::Order { target, at } => {
            let t = s.target(target.as_deref())?;
            let a = point(s, &at.at)?;
            let report = order_at_point(&t.ideal, &a)?;
            let witness = report.witness.as_ref().map(|w| w.to_string());
            ok(json!({ "order": report.value, "witness": witness }), vec![order_text(report.value)])
        }
        ScriptCommand::OrderAlong { target, prime, vars } => {
            let t = s.target(target.as_deref())?;
            let p = match (prime, vars.is_empty()) {
                (Some(name), true) => s.get(&name)?.ideal.clone(),
                (None, false) => Ideal::of_vars(&s.ring, &var_indices(s, &vars)?),
                _ => return Err(CliError::Usage("give exactly one of --prime and --vars".into())),
            };
            let report = order_along_prime(&t.ideal, &p)?;
            ok(json!({ "order": report.value, "prime": p.to_string() }), vec![order_text(report.value)])
        }
        ScriptCommand::Sing { target } => {
            let sing = singular_locus(&s.target(target.as_deref())?.ideal)?;
            ok(json!({ "ideal": sing.to_string() }), vec![sing.to_string()])
        }
        ScriptCommand::Toplocus { target, at } => {
            let top = top_locus_ideal(&s.target(target.as_deref())?.ideal, &point(s, &at.at)?)?;
            ok(json!({ "ideal": top.to_string() }), vec![top.to_string()])
        }
        ScriptCommand::Hs { target, at, max } => {
            let hs = hilbert_samuel_prefix(&s.target(target.as_deref())?.ideal, &point(s, &at.at)?, max)?;
            let text = hs.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
            ok(json!({ "hilbert_samuel": hs }), vec![text])
        }
        ScriptCommand::Rees { center } => {
            let (c, _) = center_ideal(s, &center)?;
            let rees = rees_ideal(&c)?;
            ok(
                json!({ "center": c.to_string(), "vars": rees.ring.vars(), "ideal": rees.ideal.to_string() }),
                vec![rees.ideal.to_string()],
            )
        }
        ScriptCommand::Charts { center } => {
            let charts = charts_for(s, &center)?;
            let text = charts
                .iter()
                .map(|c| format!("{}: {}; exceptional {}; relations {}", c.name, c.map, c.exceptional, c.chart_ideal))
                .collect();
            ok(json!({ "charts": charts.iter().map(chart_json).collect::<Vec<_>>() }), text)
        }
        ScriptCommand::Transition { center, from, to } => {
            let charts = charts_for(s, &center)?;
            let (i, j) = (select_chart(&charts, &from)?, select_chart(&charts, &to)?);
            let t = chart_transition(&charts, i, j)?;
            ok(
                json!({ "from": charts[i].name, "to": charts[j].name, "map": t.to_string(), "relation": t.relation()?.to_string() }),
                vec![t.to_string()],
            )
        }
        ScriptCommand::Transform { target, kind, control, center, chart } => {
            let t = s.target(target.as_deref())?;
            let kind = match (kind, control) {
                (Kind::Total, None) => TransformKind::Total,
                (Kind::Strict, None) => TransformKind::Strict,
                (Kind::Weak, None) => TransformKind::Weak,
                (Kind::Controlled, Some(c)) => TransformKind::Controlled(c),
                (Kind::Controlled, None) => return Err(CliError::Usage("controlled transforms need --control".into())),
                (_, Some(_)) => return Err(CliError::Usage("--control applies to controlled transforms".into())),
            };
            let charts = charts_for(s, &center)?;
            let chosen: Vec<usize> = match &chart {
                Some(name) => vec![select_chart(&charts, name)?],
                None => (0..charts.len()).collect(),
            };
            let mut rows = Vec::new();
            let mut text = Vec::new();
            for i in chosen {
                let r = transform(&t.ideal, &charts[i], kind)?;
                rows.push(json!({
                    "chart": chart_json(&charts[i]),
                    "kind": r.kind,
                    "ideal": r.ideal.to_string(),
                    "exceptional_order": r.exceptional_order,
                    "h_power": r.h_power,
                }));
                if chart.is_some() {
                    text.push(r.ideal.to_string());
                } else {
                    text.push(format!("{}: {}", charts[i].name, r.ideal));
                }
            }
            ok(json!({ "transforms": rows }), text)
        }
        ScriptCommand::Coeff { target, frame_var, order, at } => {
            let t = s.target(target.as_deref())?;
            let a = point(s, &at.at)?;
            let o = match order {
                Some(o) => o,
                None => order_at_point(&t.ideal, &a)?
                    .value
                    .ok_or_else(|| CliError::Usage("the zero ideal has no frame order".into()))?,
            };
            let frame = HypersurfaceFrame { var: s.ring.require_index(&frame_var)?, base_point: a, order: o };
            let j = coefficient_ideal(&t.ideal, &frame)?;
            ok(json!({ "order": o, "ideal": j.to_string() }), vec![j.to_string()])
        }
        ScriptCommand::ResidualOrder { target, exc, at } => {
            let f = principal(&s.target(target.as_deref())?.ideal)?;
            let record = ExceptionalRecord::from_vars(&var_indices(s, &exc)?);
            let r = residual_order(&f, &record, &point(s, &at.at)?)?;
            ok(json!({ "residual_order": r }), vec![order_text(r)])
        }
        ScriptCommand::ResolveCurve { target, smooth, max_steps } => {
            let f = principal(&s.target(target.as_deref())?.ideal)?;
            let trace = if smooth { resolve_curve(&f, max_steps)? } else { resolve_curve_embedded(&f, max_steps)? };
            trace_output(trace)
        }
        ScriptCommand::ResolveMonomial { target, exc, control, max_steps } => {
            let f = principal(&s.target(target.as_deref())?.ideal)?;
            let record = ExceptionalRecord::from_vars(&var_indices(s, &exc)?);
            trace_output(resolve_monomial(&f, &record, control, max_steps)?)
        }
        ScriptCommand::ResolveH0 { target, control, max_steps } => {
            let f = principal(&s.target(target.as_deref())?.ideal)?;
            trace_output(resolve_hypersurface_char0(&f, control, max_steps)?)
        }
        ScriptCommand::Game { .. } => unreachable!("handled before compiling"),
    }
}

fn invariant_text(inv: &[Option<u32>]) -> String {
    let parts: Vec<String> = inv.iter().map(|v| v.map_or("-".into(), |k| k.to_string())).collect();
    format!("({})", parts.join(", "))
}

fn node_lines(node: &ChartNode, depth: usize, out: &mut Vec<String>) {
    let name = node.path.last().cloned().unwrap_or_default();
    let ideals: Vec<String> = node.ideals.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let status = serde_json::to_value(node.status).expect("status serializes");
    let mut line = format!("{}{} [{}] {}", "  ".repeat(depth), name, status.as_str().unwrap_or("?"), ideals.join(" "));
    if !node.invariant.is_empty() {
        line.push_str(&format!(" inv={}", invariant_text(&node.invariant)));
    }
    if !node.exceptional.is_empty() {
        let e: Vec<String> =
            node.exceptional.entries.iter().map(|e| format!("{}^{}", e.var + 1, e.multiplicity)).collect();
        line.push_str(&format!(" exc=[{}]", e.join(",")));
    }
    if let Some(c) = &node.center {
        line.push_str(&format!(" center={c}"));
    }
    if let Some(m) = &node.message {
        line.push_str(&format!(" ({m})"));
    }
    out.push(line);
    for c in &node.children {
        node_lines(c, depth + 1, out);
    }
}

fn trace_output(trace: ResolutionTrace) -> Result<CommandOutput, CliError> {
    let status = match trace.status {
        TraceStatus::Resolved => "resolved",
        TraceStatus::StepLimit => "step-limit",
        TraceStatus::Error => "error",
    };
    let mut text = vec![
        format!("driver: {}", trace.driver),
        format!("status: {status}"),
        format!("steps: {}", trace.step_count),
        format!("blowups: {}", trace.blowups),
    ];
    node_lines(&trace.root, 0, &mut text);
    let failed = trace
        .error
        .clone()
        .map(|message| ErrorInfo { code: message.split(':').next().unwrap_or("domain").to_string(), message });
    let limited = trace.status == TraceStatus::StepLimit;
    let result = serde_json::to_value(&trace).expect("traces serialize");
    Ok(CommandOutput { result, text, limited, failed })
}

fn game(script: &SessionScript, cap: usize) -> Result<CommandOutput, CliError> {
    let text = script.state.as_deref().unwrap_or("");
    let start = GameState::parse(text)?;
    let worst = worst_case_rounds(&start, cap);
    // B replies with the coordinate that keeps the game going longest
    let adversary = |s: &GameState, subset: &[usize]| {
        let mut best = (0usize, subset[0]);
        for &j in subset {
            let next = s.apply_move(&Move { subset: subset.to_vec(), choice: j }).expect("valid move");
            let rounds = worst_case_rounds(&next, cap).unwrap_or(usize::MAX);
            if rounds > best.0 {
                best = (rounds, j);
            }
        }
        best.1
    };
    let transcript = play_game(&start, strategy_a, adversary, cap)?;
    let mut lines = vec![format!("start: {start}")];
    for (k, r) in transcript.rounds.iter().enumerate() {
        let subset: Vec<String> = r.mv.subset.iter().map(|i| (i + 1).to_string()).collect();
        lines.push(format!("round {}: {} J={{{}}} j={}", k + 1, r.state, subset.join(","), r.mv.choice + 1));
    }
    lines.push(format!("final: {}", transcript.final_state));
    let limited = !transcript.won;
    lines.push(if transcript.won {
        format!("won after {} rounds", transcript.rounds.len())
    } else {
        format!("round cap {cap} reached")
    });
    match &worst {
        Ok(k) => lines.push(format!("worst case over all replies: {k} rounds")),
        Err(s) => lines.push(format!("some replies exceed the cap from {s}")),
    }
    let result = json!({
        "start": start,
        "transcript": transcript,
        "worst_case_rounds": worst.as_ref().ok(),
    });
    Ok(CommandOutput { result, text: lines, limited, failed: None })
}
