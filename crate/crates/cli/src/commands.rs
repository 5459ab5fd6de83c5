use std::fs;
use std::path::Path;

use cbn_core::control::{
    is_orbit_controlling, is_state_controlling, singleton_reaches, synthesize_orbit_control,
    synthesize_state_control, SynthesisReport,
};
use cbn_core::generate::{random_digraph, random_strongly_connected};
use cbn_core::graph::{
    derived_graph, irreducible_components, loop_number, strongly_connected_components,
};
use cbn_core::oracle::{
    brute_enumerate_orbits, brute_orbit_controllable, brute_state_controllable,
    min_orbit_controlling_set, min_state_controlling_set, Budget,
};
use cbn_core::orbits::{enumerate_orbits, necklace_from_orbit};
use cbn_core::{
    find_orbit, run_schedule, simulate, CbnError, CbnState, ControlSchedule, ControlSpec, Digraph,
    Necklace,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::args::{CheckArgs, Cli, Command, Mode, OracleCommand};
use crate::document::{label_graph, parse_network, serialize_network, Network, ParseError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{origin}: {error}")]
    Parse { origin: String, error: ParseError },
    #[error(transparent)]
    Core(#[from] CbnError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } => 2,
            CliError::Core(CbnError::Budget(_)) => 3,
            CliError::Core(
                CbnError::NotControllable(_) | CbnError::Structure(_) | CbnError::Internal(_),
            ) => 1,
            CliError::Core(_) => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// What a command produced. `positive` is false for negative verdicts.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub positive: bool,
}

impl Outcome {
    fn new(json: Value, text: String) -> Self {
        Outcome {
            json,
            text,
            positive: true,
        }
    }
}

/// Schedule rows as stored in JSON output and read back by `verify`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleRow {
    pub node: String,
    pub inputs: String,
}

/// The claim a synthesize command makes; `verify` replays it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleClaim {
    pub command: String,
    pub controls: Vec<String>,
    pub horizon: usize,
    pub schedule: Vec<ScheduleRow>,
    pub entry_time: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub init: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub necklace: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub designated: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let budget = cli.budget.map_or_else(Budget::default, Budget::uniform);
    if let Command::Gen {
        nodes,
        density,
        controls,
    } = &cli.command
    {
        return gen(*nodes, *density, controls.as_deref(), cli.seed);
    }
    let path = cli
        .net
        .as_deref()
        .ok_or_else(|| CliError::Usage("this command needs --net FILE".into()))?;
    let net = load_network(path)?;
    let g = &net.graph;
    match &cli.command {
        Command::Simulate { init, steps } => simulate_cmd(&net, init, *steps),
        Command::Orbits => orbits(&net),
        Command::LoopNumber => {
            let p = loop_number(g)?;
            Ok(Outcome::new(json!({ "loop_number": p }), format!("{p}\n")))
        }
        Command::Components => components(&net),
        Command::Check(args) => check(&net, args),
        Command::SynthesizeOrbit {
            controls,
            necklace,
            init,
            designated,
        } => synth_orbit(
            &net,
            controls.as_deref(),
            necklace,
            init,
            designated.as_deref(),
        ),
        Command::SynthesizeState { controls, target } => {
            synth_state(&net, controls.as_deref(), target)
        }
        Command::MinSet { mode } => min_set(&net, *mode, &budget),
        Command::Verify { file } => verify(&net, file, &budget),
        Command::ExportDot { derived, controls } => export_dot(&net, *derived, controls.as_deref()),
        Command::Oracle(OracleCommand::Check(args)) => oracle_check(&net, args, &budget),
        Command::Oracle(OracleCommand::Orbits) => oracle_orbits(&net, &budget),
        Command::Gen { .. } => unreachable!("handled above"),
    }
}

pub fn load_network(path: &Path) -> Result<Network> {
    let origin = path.display().to_string();
    let text = if origin == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        fs::read_to_string(path)
    }
    .map_err(|e| CliError::Usage(format!("cannot read {origin}: {e}")))?;
    parse_network(&text).map_err(|error| CliError::Parse { origin, error })
}

fn control_set(net: &Network, list: Option<&str>) -> Result<ControlSpec> {
    match (list, &net.controls) {
        (Some(list), _) => net.resolve_controls(list).map_err(|error| CliError::Parse {
            origin: "--controls".into(),
            error,
        }),
        (None, Some(spec)) => Ok(spec.clone()),
        (None, None) => Err(CliError::Usage(
            "no control set: pass --controls or add `controls` to the network file".into(),
        )),
    }
}

fn parse_state(net: &Network, flag: &str, bits: &str) -> Result<CbnState> {
    let x: CbnState = bits
        .parse()
        .map_err(|e: CbnError| CliError::Usage(format!("{flag}: {e}")))?;
    let n = net.graph.node_count();
    if x.len() != n {
        return Err(CliError::Usage(format!(
            "{flag}: expected {n} bits, got {}",
            x.len()
        )));
    }
    Ok(x)
}

fn node_labels(net: &Network, nodes: &[usize]) -> Vec<String> {
    nodes.iter().map(|&v| net.labels()[v].clone()).collect()
}

fn states_json(states: &[CbnState]) -> Vec<String> {
    states.iter().map(ToString::to_string).collect()
}

fn bit_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// One row per control node, one column per time step.
fn schedule_table(net: &Network, schedule: &ControlSchedule) -> String {
    let labels = node_labels(net, schedule.nodes());
    let name_width = labels.iter().map(String::len).max().unwrap_or(0).max(1);
    let col = schedule.horizon().to_string().len();
    let mut out = format!("{:<name_width$}", "t");
    for t in 0..=schedule.horizon() {
        out.push_str(&format!(" {t:>col$}"));
    }
    out.push('\n');
    for (label, row) in labels.iter().zip(schedule.rows()) {
        out.push_str(&format!("{label:<name_width$}"));
        for &b in row {
            out.push_str(&format!(" {:>col$}", u8::from(b)));
        }
        out.push('\n');
    }
    out
}

fn schedule_rows(net: &Network, schedule: &ControlSchedule) -> Vec<ScheduleRow> {
    schedule
        .nodes()
        .iter()
        .zip(schedule.rows())
        .map(|(&v, row)| ScheduleRow {
            node: net.labels()[v].clone(),
            inputs: bit_string(row),
        })
        .collect()
}

fn simulate_cmd(net: &Network, init: &str, steps: usize) -> Result<Outcome> {
    let x0 = parse_state(net, "--init", init)?;
    let run = simulate(&net.graph, &x0, steps)?;
    let info = find_orbit(&net.graph, &x0)?;
    let mut text = String::new();
    let width = steps.to_string().len();
    for (t, x) in run.states.iter().enumerate() {
        text.push_str(&format!("t={t:<width$} {x}\n"));
    }
    text.push_str(&format!(
        "orbit entered at t={} with period {}\n",
        info.transient_length, info.period
    ));
    let json = json!({
        "states": states_json(&run.states),
        "transient_length": info.transient_length,
        "period": info.period,
    });
    Ok(Outcome::new(json, text))
}

fn orbits(net: &Network) -> Result<Outcome> {
    let p = loop_number(&net.graph)?;
    let list = enumerate_orbits(&net.graph)?;
    let mut text = format!("loop number {p}, {} orbits\n", list.len());
    let mut entries = Vec::new();
    for (s, states) in &list {
        let shown: Vec<String> = states_json(states);
        text.push_str(&format!(
            "{s}  period {}  {}\n",
            states.len(),
            shown.join(" ")
        ));
        entries.push(json!({ "necklace": s.to_string(), "period": states.len(), "states": shown }));
    }
    Ok(Outcome::new(
        json!({ "loop_number": p, "count": list.len(), "orbits": entries }),
        text,
    ))
}

fn components(net: &Network) -> Result<Outcome> {
    let part = irreducible_components(&net.graph)?;
    let mut text = format!("loop number {}\n", part.loop_number);
    let mut classes = Vec::new();
    for (k, (class, comp)) in part.classes.iter().zip(&part.components).enumerate() {
        let nodes = node_labels(net, class);
        let edges: Vec<[String; 2]> = comp
            .edges()
            .map(|(a, b)| {
                [
                    net.labels()[class[a]].clone(),
                    net.labels()[class[b]].clone(),
                ]
            })
            .collect();
        text.push_str(&format!("U{k}: {}\n", nodes.join(" ")));
        let shown: Vec<String> = edges.iter().map(|[a, b]| format!("{a}->{b}")).collect();
        text.push_str(&format!("G{k}: {}\n", shown.join(" ")));
        classes.push(json!({ "index": k, "nodes": nodes, "edges": edges }));
    }
    Ok(Outcome::new(
        json!({ "loop_number": part.loop_number, "classes": classes }),
        text,
    ))
}

/// Node sets of the cycles left in the derived graph.
fn derived_cycles(net: &Network, spec: &ControlSpec) -> Vec<Vec<String>> {
    let d = derived_graph(&net.graph, spec).graph;
    strongly_connected_components(&d)
        .into_iter()
        .filter(|c| c.len() > 1 || d.has_edge(c[0], c[0]))
        .map(|mut c| {
            c.sort_unstable();
            node_labels(net, &c)
        })
        .collect()
}

fn verdict_word(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn check(net: &Network, args: &CheckArgs) -> Result<Outcome> {
    let spec = control_set(net, args.controls.as_deref())?;
    let controls = node_labels(net, spec.nodes());
    if args.mode.orbit {
        let ok = is_orbit_controlling(&net.graph, &spec)?;
        let cycles = derived_cycles(net, &spec);
        let mut text = format!("orbit-controlling: {}\n", verdict_word(ok));
        for c in &cycles {
            text.push_str(&format!("uncontrolled cycle through {}\n", c.join(" ")));
        }
        let json = json!({
            "mode": "orbit",
            "controls": controls,
            "controllable": ok,
            "derived_acyclic": ok,
            "uncontrolled_cycles": cycles,
        });
        return Ok(Outcome {
            json,
            text,
            positive: ok,
        });
    }
    let verdict = is_state_controlling(&net.graph, &spec)?;
    let mut text = format!(
        "state-controlling: {}\n",
        verdict_word(verdict.controllable)
    );
    let mut witnesses = Vec::new();
    if verdict.derived_acyclic {
        for (v, w) in singleton_reaches(&net.graph, &spec)? {
            let (node, control) = (&net.labels()[v], &net.labels()[w.control]);
            text.push_str(&format!("N_out^{}({control}) = {{{node}}}\n", w.k));
            witnesses.push(json!({ "node": node, "control": control, "k": w.k }));
        }
    } else {
        text.push_str("derived graph has a cycle\n");
    }
    let unwitnessed = node_labels(net, &verdict.unwitnessed());
    if !unwitnessed.is_empty() {
        text.push_str(&format!("unwitnessed: {}\n", unwitnessed.join(" ")));
    }
    let json = json!({
        "mode": "state",
        "controls": controls,
        "controllable": verdict.controllable,
        "derived_acyclic": verdict.derived_acyclic,
        "witnesses": witnesses,
        "unwitnessed": unwitnessed,
    });
    Ok(Outcome {
        json,
        text,
        positive: verdict.controllable,
    })
}

fn claim_outcome(net: &Network, claim: ScheduleClaim, report: &SynthesisReport) -> Outcome {
    let mut text = schedule_table(net, &report.schedule);
    if let Some(tau) = claim.tau {
        text.push_str(&format!("tau {tau}\n"));
    }
    if let Some(d) = &claim.designated {
        text.push_str(&format!("designated {d}\n"));
    }
    let what = if claim.necklace.is_some() {
        "orbit entered"
    } else {
        "target reached"
    };
    text.push_str(&format!("{what} at t={}\n", claim.entry_time));
    let json = serde_json::to_value(&claim).expect("claims serialize");
    Outcome::new(json, text)
}

fn synth_orbit(
    net: &Network,
    controls: Option<&str>,
    necklace: &str,
    init: &str,
    designated: Option<&str>,
) -> Result<Outcome> {
    let spec = control_set(net, controls)?;
    let target: Necklace = necklace
        .parse()
        .map_err(|e: CbnError| CliError::Usage(format!("--necklace: {e}")))?;
    let x0 = parse_state(net, "--init", init)?;
    let designated = designated
        .map(|label| {
            net.index_of(label)
                .ok_or_else(|| CliError::Usage(format!("--designated: unknown node '{label}'")))
        })
        .transpose()?;
    let report = synthesize_orbit_control(&net.graph, &spec, &target, &x0, designated)?;
    let claim = ScheduleClaim {
        command: "synthesize-orbit".into(),
        controls: node_labels(net, spec.nodes()),
        horizon: report.schedule.horizon(),
        schedule: schedule_rows(net, &report.schedule),
        entry_time: report.entry_time,
        init: Some(x0.to_string()),
        necklace: Some(target.to_string()),
        tau: report.tau,
        designated: report.designated.map(|v| net.labels()[v].clone()),
        target: None,
    };
    Ok(claim_outcome(net, claim, &report))
}

fn synth_state(net: &Network, controls: Option<&str>, target: &str) -> Result<Outcome> {
    let spec = control_set(net, controls)?;
    let target = parse_state(net, "--target", target)?;
    let report = synthesize_state_control(&net.graph, &spec, &target)?;
    let claim = ScheduleClaim {
        command: "synthesize-state".into(),
        controls: node_labels(net, spec.nodes()),
        horizon: report.schedule.horizon(),
        schedule: schedule_rows(net, &report.schedule),
        entry_time: report.entry_time,
        init: None,
        necklace: None,
        tau: None,
        designated: None,
        target: Some(target.to_string()),
    };
    Ok(claim_outcome(net, claim, &report))
}

fn min_set(net: &Network, mode: Mode, budget: &Budget) -> Result<Outcome> {
    let nodes = if mode.orbit {
        min_orbit_controlling_set(&net.graph, budget)?
    } else {
        min_state_controlling_set(&net.graph, budget)?
    };
    let labels = node_labels(net, &nodes);
    let text = format!(
        "minimum {}-controlling set ({}): {}\n",
        mode.name(),
        labels.len(),
        labels.join(" ")
    );
    Ok(Outcome::new(
        json!({ "mode": mode.name(), "size": labels.len(), "nodes": labels }),
        text,
    ))
}

fn read_claim(path: &Path) -> Result<ScheduleClaim> {
    let origin = path.display().to_string();
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {origin}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse {
        origin,
        error: ParseError {
            message: e.to_string(),
            line: Some(e.line()),
            column: Some(e.column()),
        },
    })
}

fn claim_schedule(net: &Network, claim: &ScheduleClaim) -> Result<(ControlSpec, ControlSchedule)> {
    let spec = net
        .resolve_controls(&claim.controls.join(","))
        .map_err(|error| CliError::Parse {
            origin: "schedule controls".into(),
            error,
        })?;
    let mut rows = vec![Vec::new(); spec.len()];
    for row in &claim.schedule {
        let v = net.index_of(&row.node).ok_or_else(|| {
            CliError::Usage(format!("schedule row for unknown node '{}'", row.node))
        })?;
        let slot = spec.position(v).ok_or_else(|| {
            CliError::Usage(format!("schedule row for non-control node '{}'", row.node))
        })?;
        rows[slot] = cbn_core::model::parse_bits(&row.inputs)
            .map_err(|e| CliError::Usage(format!("schedule row {}: {e}", row.node)))?;
    }
    let schedule = ControlSchedule::new(&spec, rows).map_err(|e| CliError::Usage(e.to_string()))?;
    if schedule.horizon() != claim.horizon {
        return Err(CliError::Usage(format!(
            "schedule rows span {} steps, claim says {}",
            schedule.horizon(),
            claim.horizon
        )));
    }
    Ok((spec, schedule))
}

fn verify(net: &Network, file: &Path, budget: &Budget) -> Result<Outcome> {
    let claim = read_claim(file)?;
    let (spec, schedule) = claim_schedule(net, &claim)?;
    let g = &net.graph;
    let failure = match claim.command.as_str() {
        "synthesize-orbit" => {
            let (Some(init), Some(necklace)) = (&claim.init, &claim.necklace) else {
                return Err(CliError::Usage(
                    "orbit claim needs `init` and `necklace`".into(),
                ));
            };
            let x0 = parse_state(net, "init", init)?;
            let target: Necklace = necklace
                .parse()
                .map_err(|e: CbnError| CliError::Usage(format!("necklace: {e}")))?;
            let part = irreducible_components(g)?;
            let run = run_schedule(g, &spec, &x0, &schedule)?;
            let info = find_orbit(g, run.last())?;
            let reached = necklace_from_orbit(g, &part, &info.orbit_states)?;
            let entry = schedule.horizon() + info.transient_length;
            if reached != target {
                Some(format!("settled on orbit {reached}, claim is {target}"))
            } else if entry != claim.entry_time {
                Some(format!(
                    "orbit entered at t={entry}, claim is t={}",
                    claim.entry_time
                ))
            } else {
                None
            }
        }
        "synthesize-state" => {
            let Some(target) = &claim.target else {
                return Err(CliError::Usage("state claim needs `target`".into()));
            };
            let target = parse_state(net, "target", target)?;
            let n = g.node_count();
            if n > budget.max_state_bits || n > 63 {
                return Err(CbnError::Budget(format!(
                    "replaying all 2^{n} initial states exceeds the budget of {} bits",
                    budget.max_state_bits
                ))
                .into());
            }
            if claim.entry_time > schedule.horizon() {
                return Err(CliError::Usage("entry time lies past the schedule".into()));
            }
            let mut failure = None;
            for idx in 0..1u64 << n {
                let x0 = CbnState::from_index(n, idx);
                let run = run_schedule(g, &spec, &x0, &schedule)?;
                if run.states[claim.entry_time] != target {
                    failure = Some(format!(
                        "from {x0} the state at t={} is {}, not {target}",
                        claim.entry_time, run.states[claim.entry_time]
                    ));
                    break;
                }
            }
            failure
        }
        other => return Err(CliError::Usage(format!("unknown claim kind '{other}'"))),
    };
    let ok = failure.is_none();
    let text = match &failure {
        None => format!("verified: {} claim holds\n", claim.command),
        Some(why) => format!("verification failed: {why}\n"),
    };
    let json = json!({ "command": claim.command, "verified": ok, "reason": failure });
    Ok(Outcome {
        json,
        text,
        positive: ok,
    })
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn export_dot(net: &Network, derived: bool, controls: Option<&str>) -> Result<Outcome> {
    let spec = match (controls, &net.controls, derived) {
        (None, None, false) => ControlSpec::empty(),
        _ => control_set(net, controls)?,
    };
    let graph: Digraph = if derived {
        derived_graph(&net.graph, &spec).graph
    } else {
        net.graph.clone()
    };
    let mut dot = String::from("digraph cbn {\n");
    for (v, label) in net.labels().iter().enumerate() {
        if spec.contains(v) {
            dot.push_str(&format!(
                "  {} [shape=doublecircle, style=filled, fillcolor=lightgrey];\n",
                dot_quote(label)
            ));
        } else {
            dot.push_str(&format!("  {};\n", dot_quote(label)));
        }
    }
    for (a, b) in graph.edges() {
        dot.push_str(&format!(
            "  {} -> {};\n",
            dot_quote(&net.labels()[a]),
            dot_quote(&net.labels()[b])
        ));
    }
    dot.push_str("}\n");
    Ok(Outcome::new(json!({ "dot": dot }), dot))
}

fn oracle_check(net: &Network, args: &CheckArgs, budget: &Budget) -> Result<Outcome> {
    let spec = control_set(net, args.controls.as_deref())?;
    let ok = if args.mode.orbit {
        brute_orbit_controllable(&net.graph, &spec, budget)?
    } else {
        brute_state_controllable(&net.graph, &spec, budget)?
    };
    let text = format!(
        "{}-controlling (exhaustive): {}\n",
        args.mode.name(),
        verdict_word(ok)
    );
    let json = json!({
        "mode": args.mode.name(),
        "controls": node_labels(net, spec.nodes()),
        "controllable": ok,
        "method": "exhaustive",
    });
    Ok(Outcome {
        json,
        text,
        positive: ok,
    })
}

fn oracle_orbits(net: &Network, budget: &Budget) -> Result<Outcome> {
    let list = brute_enumerate_orbits(&net.graph, budget)?;
    let mut text = format!("{} orbits (exhaustive)\n", list.len());
    let mut entries = Vec::new();
    for states in &list {
        let shown = states_json(states);
        text.push_str(&format!("period {}  {}\n", states.len(), shown.join(" ")));
        entries.push(json!({ "period": states.len(), "states": shown }));
    }
    Ok(Outcome::new(
        json!({ "count": list.len(), "orbits": entries, "method": "exhaustive" }),
        text,
    ))
}

fn gen(nodes: usize, density: Option<f64>, controls: Option<&str>, seed: u64) -> Result<Outcome> {
    if nodes == 0 {
        return Err(CliError::Usage("--nodes must be positive".into()));
    }
    let graph = match density {
        Some(p) if !(0.0..=1.0).contains(&p) => {
            return Err(CliError::Usage("--density must lie in [0, 1]".into()))
        }
        Some(p) => random_digraph(nodes, p, seed),
        None => random_strongly_connected(nodes, seed),
    };
    let mut net = label_graph(&graph, None);
    if let Some(list) = controls {
        net.controls = Some(control_set(&net, Some(list))?);
    }
    let json = serde_json::to_value(net.to_document()).expect("documents serialize");
    Ok(Outcome::new(json, serialize_network(&net)))
}
