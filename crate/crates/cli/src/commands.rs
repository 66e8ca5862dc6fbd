use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use nci_core::bridge::{family_to_downset, nci_to_ncu, ncpd_witness_to_nci};
use nci_core::constructive::{allreach, avoid_zero, nti_express, DownsetWitness};
use nci_core::expr::{evaluate, parse, serialize, tree_to_dot, BaseCatalog, LeafRef, WitnessTree};
use nci_core::json::{
    config_to_json, configs_base_to_json, family_to_json, parse_base, parse_config, parse_family, parse_lattice,
    sets_base_to_json, Base,
};
use nci_core::lattice::{AbstractLattice, IntersectionLattice, SetFamily, UnionLattice};
use nci_core::mobius::{generalized_mobius, mobius_from_bottom, mobius_to_top, nci, ncpd, ncu, nti};
use nci_core::search::{
    check_ncpd, emit_cnf, find_witness, nci_instance, ncpd_instance, ncu_instance, scan, Engine, ScanOptions,
    SearchOptions, Verdict,
};
use nci_core::subset::{AtomSet, Config, SubsetError, SubsetMask, Universe};

use crate::args::{
    Command, ConstructCmd, EngineArg, LatticeCmd, Problem, ScanArgs, SearchArgs, TranslateCmd, WitnessCmd,
};
use crate::{CliError, Output};

type Result<T> = std::result::Result<T, CliError>;

pub(crate) fn dispatch(cmd: Command) -> Result<Output> {
    match cmd {
        Command::Lattice(LatticeCmd::Build { input, mobius }) => lattice_build(&input, mobius),
        Command::Lattice(LatticeCmd::Info { input }) => lattice_info(&input),
        Command::Lattice(LatticeCmd::Dot { input, mobius }) => lattice_dot(&input, mobius),
        Command::Mobius { input, union } => mobius(&input, union),
        Command::Nci(a) => node_list(&a.input, false),
        Command::Ncu(a) => node_list(&a.input, true),
        Command::Ncpd { input } => ncpd_list(&input),
        Command::Witness(WitnessCmd::Verify { input, base }) => witness_verify(&input, &base),
        Command::Witness(WitnessCmd::Search(a)) => witness_search(&a),
        Command::Construct(ConstructCmd::Allreach { input }) => {
            let c = parse_config(&read(&input)?)?;
            let w = allreach(&c);
            downset_audit(&c, &w, None)
        }
        Command::Construct(ConstructCmd::AvoidZero { input, zero }) => {
            let c = parse_config(&read(&input)?)?;
            let z = c.universe().parse_subset(&zero)?;
            let w = avoid_zero(&c, z)?;
            downset_audit(&c, &w, Some(z))
        }
        Command::Construct(ConstructCmd::NtiExpress {
            input,
            target,
            left_linear,
        }) => construct_nti(&input, target.as_deref(), left_linear),
        Command::Translate(t) => translate(t),
        Command::Scan(a) => run_scan(&a),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::domain("IoError", format!("{}: {e}", path.display())))
}

fn load_tree(path: &Path) -> Result<WitnessTree> {
    Ok(parse(read(path)?.trim())?)
}

fn ensure_same(a: &Arc<Universe>, b: &Arc<Universe>) -> Result<()> {
    if a.same_as(b) {
        Ok(())
    } else {
        Err(SubsetError::UniverseMismatch.into())
    }
}

enum LatticeInput {
    Family(SetFamily),
    Abstract(AbstractLattice, Vec<String>),
}

fn load_lattice(path: &Path) -> Result<LatticeInput> {
    let text = read(path)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| CliError::domain("FormatError", e.to_string()))?;
    if v.get("nodes").is_some() {
        let (l, names) = parse_lattice(&text)?;
        Ok(LatticeInput::Abstract(l, names))
    } else {
        Ok(LatticeInput::Family(parse_family(&text)?))
    }
}

/// Node labels and the order of an input lattice.
fn labelled(input: &LatticeInput) -> Result<(Vec<String>, AbstractLattice)> {
    match input {
        LatticeInput::Family(f) => {
            let l = IntersectionLattice::from_family(f)?;
            let labels = l.nodes().iter().map(|&m| f.universe().render(m)).collect();
            Ok((labels, l.to_abstract()))
        }
        LatticeInput::Abstract(l, names) => Ok((names.clone(), l.clone())),
    }
}

fn valued_lines(labels: &[String], values: &[i64], order: impl Iterator<Item = usize>) -> (String, Value) {
    let mut text = String::new();
    let mut nodes = Vec::new();
    let mut map = Map::new();
    for i in order {
        let _ = writeln!(text, "{}\t{}", labels[i], values[i]);
        nodes.push(json!(labels[i]));
        map.insert(labels[i].clone(), json!(values[i]));
    }
    (text, json!({ "nodes": nodes, "mobius": map }))
}

fn lattice_build(path: &Path, with_mobius: bool) -> Result<Output> {
    let (labels, l) = labelled(&load_lattice(path)?)?;
    let top_first = (0..l.len()).rev();
    if with_mobius {
        let mu = mobius_to_top(l.order());
        let (text, json) = valued_lines(&labels, &mu, top_first);
        return Ok(Output::new(text, json));
    }
    let mut text = String::new();
    let mut nodes = Vec::new();
    for i in top_first {
        let _ = writeln!(text, "{}", labels[i]);
        nodes.push(json!(labels[i]));
    }
    Ok(Output::new(text, json!({ "nodes": nodes })))
}

fn lattice_info(path: &Path) -> Result<Output> {
    let input = load_lattice(path)?;
    let (labels, l) = labelled(&input)?;
    let mut json = json!({
        "nodes": l.len(),
        "covers": l.order().cover_pairs().len(),
        "top": labels[l.top()],
        "bottom": labels[l.bottom()],
    });
    if let LatticeInput::Family(f) = &input {
        let il = IntersectionLattice::from_family(f)?;
        let extra = json!({
            "generators": il.generators().len(),
            "full": il.is_full(),
            "tight": il.is_tight(),
            "weakly_tight": il.is_weakly_tight(),
            "nci": nci(&il).len(),
            "nti": nti(&il).len(),
        });
        for (k, v) in extra.as_object().expect("object") {
            json[k] = v.clone();
        }
    }
    let mut text = String::new();
    for key in [
        "nodes",
        "covers",
        "generators",
        "top",
        "bottom",
        "full",
        "tight",
        "weakly_tight",
        "nci",
        "nti",
    ] {
        match json.get(key) {
            Some(Value::String(s)) => {
                let _ = writeln!(text, "{key}: {s}");
            }
            Some(v) => {
                let _ = writeln!(text, "{key}: {v}");
            }
            None => {}
        }
    }
    Ok(Output::new(text, json))
}

fn lattice_dot(path: &Path, with_mobius: bool) -> Result<Output> {
    let (labels, l) = labelled(&load_lattice(path)?)?;
    let mu = mobius_to_top(l.order());
    let highlight: Vec<usize> = (0..l.len()).filter(|&i| mu[i] != 0).collect();
    let dot = l
        .order()
        .to_dot(&labels, with_mobius.then_some(mu.as_slice()), &highlight);
    Ok(Output::new(dot.clone(), json!({ "dot": dot })))
}

fn graded(mut ms: Vec<SubsetMask>) -> Vec<SubsetMask> {
    ms.sort_by_key(|m| (m.len(), m.0));
    ms
}

fn mobius(path: &Path, union: bool) -> Result<Output> {
    let text = read(path)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| CliError::domain("FormatError", e.to_string()))?;
    if v.get("members").is_some() {
        let c = parse_config(&text)?;
        let mu = generalized_mobius(&c)?;
        let u = c.universe();
        let support = graded(mu.support());
        let labels: Vec<String> = support.iter().map(|&m| u.render(m)).collect();
        let values: Vec<i64> = support.iter().map(|&m| i64::from(mu.get(m))).collect();
        let (text, json) = valued_lines(&labels, &values, 0..labels.len());
        return Ok(Output::new(text, json));
    }
    if union {
        let f = parse_family(&text)?;
        let l = UnionLattice::from_family(&f)?;
        let labels: Vec<String> = l.nodes().iter().map(|&m| f.universe().render(m)).collect();
        let mu = mobius_from_bottom(l.order());
        let (text, json) = valued_lines(&labels, &mu, 0..l.len());
        return Ok(Output::new(text, json));
    }
    lattice_build(path, true)
}

fn render_list(u: &Universe, ms: &[SubsetMask]) -> (String, Value) {
    let labels: Vec<String> = ms.iter().map(|&m| u.render(m)).collect();
    let mut text = labels.join("\n");
    if !text.is_empty() {
        text.push('\n');
    }
    (text, json!({ "nodes": labels }))
}

fn node_list(path: &Path, union: bool) -> Result<Output> {
    let f = parse_family(&read(path)?)?;
    let nodes: Vec<SubsetMask> = if union {
        let l = UnionLattice::from_family(&f)?;
        ncu(&l).into_iter().map(|i| *l.node(i)).collect()
    } else {
        let l = IntersectionLattice::from_family(&f)?;
        nci(&l).into_iter().map(|i| *l.node(i)).collect()
    };
    let (text, json) = render_list(f.universe(), &nodes);
    Ok(Output::new(text, json))
}

fn ncpd_list(path: &Path) -> Result<Output> {
    let c = parse_config(&read(path)?)?;
    let (text, json) = render_list(c.universe(), &graded(ncpd(&c)?));
    Ok(Output::new(text, json))
}

fn leaf_names<T: AtomSet>(t: &WitnessTree, base: &BaseCatalog<T>) -> Vec<String> {
    t.leaves().into_iter().map(|l| base.name(l)).collect()
}

fn multiplicity_json<T: AtomSet>(t: &WitnessTree, base: &BaseCatalog<T>) -> Vec<Value> {
    t.multiplicities()
        .into_iter()
        .map(|(l, m)| {
            let index = match l {
                LeafRef::Base(i) => json!(i),
                LeafRef::Empty => Value::Null,
            };
            json!({ "leaf": index, "set": base.name(l), "multiplicity": m })
        })
        .collect()
}

fn verify_over<T: AtomSet>(t: &WitnessTree, base: &BaseCatalog<T>, render: &dyn Fn(&T) -> String) -> Result<Output> {
    let value = render(&evaluate(t, base)?);
    let mults = multiplicity_json(t, base);
    let mut text = format!("value: {value}\nleft_linear: {}\n", t.is_left_linear());
    for m in &mults {
        let _ = writeln!(
            text,
            "multiplicity {}: {}",
            m["set"].as_str().unwrap_or(""),
            m["multiplicity"]
        );
    }
    let json = json!({
        "value": value,
        "left_linear": t.is_left_linear(),
        "leaves": leaf_names(t, base),
        "multiplicities": mults,
    });
    Ok(Output::new(text, json))
}

fn witness_verify(tree: &Path, base: &Path) -> Result<Output> {
    let t = load_tree(tree)?;
    let (u, b) = parse_base(&read(base)?)?;
    match b {
        Base::Sets(c) => verify_over(&t, &c, &|m| u.render(*m)),
        Base::Configs(c) => verify_over(&t, &c, &Config::render),
    }
}

fn search_options(a: &SearchArgs) -> SearchOptions {
    let mut o = SearchOptions {
        left_linear_only: !a.general,
        polarity_constrained: a.strong,
        max_steps: a.max_steps,
        engine: match a.engine {
            EngineArg::Exhaustive => Engine::Exhaustive,
            EngineArg::Sat => Engine::Sat,
        },
        ..SearchOptions::default()
    };
    if let Some(s) = a.max_states {
        o.max_states = s;
    }
    o
}

fn verdict_output<T: AtomSet>(
    base: &BaseCatalog<T>,
    target: &T,
    mult: Option<&[i64]>,
    opts: &SearchOptions,
    emit: Option<&Path>,
    render: &dyn Fn(&T) -> String,
) -> Result<Output> {
    if let Some(path) = emit {
        fs::write(path, emit_cnf(base, target, mult, opts)?.to_dimacs())?;
    }
    let v = find_witness(base, target, mult, opts)?;
    let mut text = format!("target: {}\n", render(target));
    let entries: Vec<Value> = base
        .entries()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let _ = writeln!(text, "base L{i}: {}", render(e));
            json!(render(e))
        })
        .collect();
    let _ = writeln!(text, "verdict: {}", v.label());
    let mut json = json!({
        "target": render(target),
        "base": entries,
        "verdict": v.label(),
    });
    match &v {
        Verdict::Witness { tree, steps } => {
            let _ = writeln!(text, "steps: {steps}\ntree: {}", serialize(tree));
            json["steps"] = json!(steps);
            json["tree"] = json!(serialize(tree));
            json["left_linear"] = json!(tree.is_left_linear());
        }
        Verdict::Refuted { max_steps } => {
            let _ = writeln!(text, "max_steps: {max_steps}");
            json["max_steps"] = json!(max_steps);
        }
        Verdict::Timeout => {}
    }
    if let Some(m) = mult {
        json["multiplicities"] = json!(m);
    }
    Ok(Output::new(text, json))
}

fn witness_search(a: &SearchArgs) -> Result<Output> {
    let opts = search_options(a);
    let emit = a.emit_cnf.as_deref();
    match (&a.input, a.problem, &a.base) {
        (Some(input), Some(p), None) => {
            let text = read(input)?;
            match p {
                Problem::Nci | Problem::Ncu => {
                    let f = parse_family(&text)?;
                    let (c, t, m) = if p == Problem::Nci {
                        nci_instance(&f)?
                    } else {
                        ncu_instance(&f)?
                    };
                    let u = f.universe();
                    verdict_output(&c, &t, Some(&m), &opts, emit, &|x| u.render(*x))
                }
                Problem::Ncpd => {
                    let i = parse_config(&text)?;
                    let (c, m) = ncpd_instance(&i, false)?;
                    verdict_output(&c, &i, Some(&m), &opts, emit, &Config::render)
                }
            }
        }
        (None, None, Some(base)) => {
            let (u, b) = parse_base(&read(base)?)?;
            match (b, &a.target, &a.target_file) {
                (Base::Sets(c), Some(t), None) => {
                    let t = u.parse_subset(t)?;
                    verdict_output(&c, &t, None, &opts, emit, &|x| u.render(*x))
                }
                (Base::Configs(c), None, Some(path)) => {
                    let t = parse_config(&read(path)?)?;
                    ensure_same(&u, t.universe())?;
                    verdict_output(&c, &t, None, &opts, emit, &Config::render)
                }
                (Base::Sets(_), ..) => Err(CliError::Usage("a base of sets needs --target".into())),
                (Base::Configs(_), ..) => Err(CliError::Usage("a base of configurations needs --target-file".into())),
            }
        }
        _ => Err(CliError::Usage(
            "give --input with --problem, or --base with a target".into(),
        )),
    }
}

fn downset_audit(input: &Config, w: &DownsetWitness, zero: Option<SubsetMask>) -> Result<Output> {
    let u = input.universe();
    let value = w.evaluate()?;
    let leaves: Vec<String> = w
        .tree
        .leaves()
        .into_iter()
        .map(|l| match l {
            LeafRef::Base(i) => format!("I({})", u.render(w.generators[i])),
            LeafRef::Empty => "∅".to_string(),
        })
        .collect();
    let sexp = serialize(&w.tree);
    let dot = tree_to_dot(&w.tree, &w.catalog)?;
    let mut text = format!(
        "tree: {sexp}\nleaves: {}\nvalue: {}\nmatches: {}\n",
        leaves.join(" "),
        value.render(),
        &value == input
    );
    let mut json = json!({
        "tree": sexp,
        "generators": w.generators.iter().map(|&g| u.render(g)).collect::<Vec<_>>(),
        "leaves": leaves,
        "value": value.render(),
        "matches": &value == input,
        "left_linear": w.tree.is_left_linear(),
        "dot": dot,
    });
    if let Some(z) = zero {
        let avoids = !w.used_generators().contains(&z);
        let _ = writeln!(text, "avoids {}: {avoids}", u.render(z));
        json["zero"] = json!(u.render(z));
        json["avoids_zero"] = json!(avoids);
    }
    text.push_str(&dot);
    Ok(Output::new(text, json))
}

fn construct_nti(path: &Path, target: Option<&str>, left_linear: bool) -> Result<Output> {
    let f = parse_family(&read(path)?)?;
    let u = f.universe();
    let l = IntersectionLattice::from_family(&f)?;
    let target = match target {
        Some(t) => u.parse_subset(t)?,
        None => *l.top_set(),
    };
    let (base, tree) = nti_express(&l, target, left_linear)?;
    let value = evaluate(&tree, &base)?;
    let sexp = serialize(&tree);
    let dot = tree_to_dot(&tree, &base)?;
    let leaves = leaf_names(&tree, &base);
    let mut text = format!(
        "tree: {sexp}\nleaves: {}\nvalue: {}\nmatches: {}\n",
        leaves.join(" "),
        u.render(value),
        value == target
    );
    text.push_str(&dot);
    let json = json!({
        "tree": sexp,
        "base": sets_base_to_json(u, &base),
        "leaves": leaves,
        "value": u.render(value),
        "matches": value == target,
        "left_linear": tree.is_left_linear(),
        "dot": dot,
    });
    Ok(Output::new(text, json))
}

fn sets_base(path: &Path, f: &SetFamily) -> Result<BaseCatalog<SubsetMask>> {
    let (u, b) = parse_base(&read(path)?)?;
    ensure_same(&u, f.universe())?;
    match b {
        Base::Sets(c) => Ok(c),
        Base::Configs(_) => Err(CliError::Usage("expected a base of sets".into())),
    }
}

/// Translation output is JSON either way.
fn json_output(v: Value) -> Output {
    let text = serde_json::to_string_pretty(&v).expect("serialisable") + "\n";
    Output::new(text, v)
}

fn translate(cmd: TranslateCmd) -> Result<Output> {
    match cmd {
        TranslateCmd::NciToNcpd { input } => {
            let f = parse_family(&read(&input)?)?;
            let emb = family_to_downset(&f)?;
            let opts = SearchOptions {
                left_linear_only: false,
                ..SearchOptions::default()
            };
            let checked = check_ncpd(&emb.downset, &opts)?;
            Ok(json_output(json!({
                "downset": config_to_json(&emb.downset),
                "base": configs_base_to_json(f.universe(), &checked.catalog),
                "multiplicities": checked.multiplicities,
                "verdict": checked.verdict.label(),
                "tree": checked.verdict.tree().map(serialize),
            })))
        }
        TranslateCmd::NcpdToNci { input, base, tree } => {
            let f = parse_family(&read(&input)?)?;
            let (u, b) = parse_base(&read(&base)?)?;
            ensure_same(&u, f.universe())?;
            let Base::Configs(c) = b else {
                return Err(CliError::Usage("expected a base of configurations".into()));
            };
            let (cat, t) = ncpd_witness_to_nci(&f, &c, &load_tree(&tree)?)?;
            Ok(json_output(json!({
                "base": sets_base_to_json(f.universe(), &cat),
                "tree": serialize(&t),
            })))
        }
        TranslateCmd::NciToNcu { input, base, tree } => {
            let f = parse_family(&read(&input)?)?;
            let c = sets_base(&base, &f)?;
            let tr = nci_to_ncu(&f, &c, &load_tree(&tree)?)?;
            Ok(json_output(json!({
                "family": family_to_json(&tr.family),
                "base": sets_base_to_json(tr.family.universe(), &tr.catalog),
                "tree": serialize(&tr.tree),
                "by_search": tr.by_search,
            })))
        }
    }
}

fn run_scan(a: &ScanArgs) -> Result<Output> {
    let mut opts = ScanOptions::new(usize::from(a.n));
    opts.strong = !a.no_strong;
    opts.search.engine = match a.engine {
        EngineArg::Exhaustive => Engine::Exhaustive,
        EngineArg::Sat => Engine::Sat,
    };
    let report = scan(&opts)?;
    if let Some(path) = &a.log {
        let file = fs::File::create(path)?;
        report.write_jsonl(std::io::BufWriter::new(file))?;
    }
    let json = json!({
        "n": a.n,
        "instances": report.instances,
        "witnesses": report.witnesses,
        "candidates": report.candidates,
        "timeouts": report.timeouts,
        "strong_differs": report.strong_differs,
    });
    let mut out = Output::new(format!("{}\n", report.summary()), json);
    if report.candidates > 0 {
        out.code = 2;
    }
    Ok(out)
}
