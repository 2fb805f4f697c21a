use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Duration;

use ebs_core::cache::Cache;
use ebs_core::constants::{davenport, eb, explore_conjecture, ConstResult, Method, Quantity, Ranges};
use ebs_core::sequences::{
    idempotent_subsequence, is_idempotent_sum, is_idempotent_sum_free, is_minimal_idempotent_sum, parse_seq_file,
};
use ebs_core::structure::{
    behaving_bound_classify, classify_free_sequence, explore_gap, has_structure, is_behaving, l_const, lhat,
    savchev_chen, GapKind, IntSeq, Mode,
};
use ebs_core::{parse_spec, Budget, CyclicSpec, Error, GroupSpec, ProductSpec, Seq};
use serde_json::{json, Value};

use crate::render::emit;
use crate::{ExploreKind, Global, MethodArg, ModeArg, Predicate, QuantityArg};

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_budget() {
            2
        } else if matches!(e, Error::Internal(_)) {
            3
        } else {
            1
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 1, message: msg.into() }
}

type Out = Result<(), Failure>;

pub struct Ctx {
    json: bool,
    budget: Budget,
    cache: Option<std::path::PathBuf>,
}

impl Ctx {
    pub fn new(g: &Global) -> Self {
        let threads = g
            .threads
            .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
        let budget = Budget::default()
            .with_threads(threads)
            .with_node_limit(g.node_budget)
            .with_time_limit(Duration::from_secs(g.time_budget));
        Ctx { json: g.json, budget, cache: g.cache.clone() }
    }
}

fn read_seq(spec: &ProductSpec, file: &Path) -> Result<Seq, Failure> {
    let text = fs::read_to_string(file).map_err(|e| usage(format!("{}: {e}", file.display())))?;
    Ok(parse_seq_file(spec, &text)?)
}

fn single(spec: &ProductSpec) -> Result<CyclicSpec, Failure> {
    match spec.coords() {
        [c] => Ok(*c),
        _ => Err(Error::Precondition(format!("{spec} must be a single cyclic semigroup")).into()),
    }
}

fn parse_ints(text: &str) -> Result<Vec<u64>, Failure> {
    text.split(',')
        .map(|p| p.trim().parse::<u64>().map_err(|_| usage(format!("expected an integer, found {:?}", p.trim()))))
        .collect()
}

pub fn spec_parse(ctx: &Ctx, text: &str) -> Out {
    let s = parse_spec(text)?;
    let factors: Vec<Value> = s.coords().iter().map(|c| json!({"k": c.index(), "n": c.period()})).collect();
    let v = json!({
        "spec": s.format_spec(),
        "arity": s.arity(),
        "factors": factors,
        "element_count": s.element_count()?.to_string(),
        "idempotent": s.idempotent().to_string(),
        "group": s.group().to_string(),
    });
    if ctx.json {
        emit(true, &v);
    } else {
        println!("spec: {}", s.format_spec());
        println!("arity: {}", s.arity());
        println!("factors: {}", s.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "));
        println!("element_count: {}", s.element_count()?);
        println!("idempotent: {}", s.idempotent());
        println!("group: {}", s.group());
    }
    Ok(())
}

pub fn spec_format(ctx: &Ctx, text: &str) -> Out {
    let s = parse_spec(text)?;
    if ctx.json {
        emit(true, &json!({"spec": s.format_spec()}));
    } else {
        println!("{}", s.format_spec());
    }
    Ok(())
}

pub fn constant(ctx: &Ctx, q: QuantityArg, spec: Option<&str>, group: Option<&str>, m: MethodArg) -> Out {
    let method = match m {
        MethodArg::Formula => Method::Formula,
        MethodArg::Brute => Method::Brute,
        MethodArg::Both => Method::Both,
    };
    let (key_spec, compute): (String, Box<dyn Fn() -> ebs_core::Result<ConstResult>>) = match q {
        QuantityArg::Davenport => {
            let g = match (group, spec) {
                (Some(g), _) => GroupSpec::parse(g)?,
                (None, Some(s)) => parse_spec(s)?.group(),
                (None, None) => return Err(usage("davenport needs --group or --spec")),
            };
            let budget = ctx.budget;
            (format!("G({g})"), Box::new(move || davenport(&g, method, &budget)))
        }
        _ => {
            if group.is_some() {
                return Err(usage("--group applies to davenport only"));
            }
            let s = parse_spec(spec.ok_or_else(|| usage("--spec is required"))?)?;
            let budget = ctx.budget;
            let key = s.format_spec();
            match q {
                QuantityArg::Eb => (key, Box::new(move || eb(&s, method, &budget))),
                QuantityArg::Lhat => {
                    let c = single(&s)?;
                    (key, Box::new(move || lhat(&c, method, &budget)))
                }
                _ => {
                    let c = single(&s)?;
                    (key, Box::new(move || l_const(&c, method, &budget)))
                }
            }
        }
    };
    let quantity = match q {
        QuantityArg::Eb => Quantity::ErdosBurgess,
        QuantityArg::Davenport => Quantity::Davenport,
        QuantityArg::Lhat => Quantity::Lhat,
        QuantityArg::L => Quantity::L,
    };
    let key = Cache::key(&key_spec, quantity.as_str(), method.as_str());
    let mut cache = match &ctx.cache {
        Some(p) => Some(Cache::open(p)?),
        None => None,
    };
    if let Some(v) = cache.as_ref().and_then(|c| c.get(&key)) {
        emit(ctx.json, v);
        return Ok(());
    }
    let result = compute()?;
    let v = serde_json::to_value(&result).map_err(|e| Failure { code: 3, message: e.to_string() })?;
    if let Some(c) = cache.as_mut() {
        c.put(key, v.clone());
        c.save()?;
    }
    emit(ctx.json, &v);
    Ok(())
}

pub fn seq_check(ctx: &Ctx, spec: &str, file: &Path, p: Predicate) -> Out {
    let s = parse_spec(spec)?;
    let t = read_seq(&s, file)?;
    let (name, verdict) = match p {
        Predicate::Free => ("free", is_idempotent_sum_free(&s, &t)?),
        Predicate::Idempotent => ("idempotent", is_idempotent_sum(&s, &t)?),
        Predicate::Minimal => ("minimal", is_minimal_idempotent_sum(&s, &t)?),
    };
    let witness = match p {
        Predicate::Free if !verdict => idempotent_subsequence(&s, &t)?,
        _ => None,
    };
    if ctx.json {
        let w = witness.as_ref().map(|w| w.terms().iter().map(|a| a.idx().to_vec()).collect::<Vec<_>>());
        emit(true, &json!({"spec": s.format_spec(), "predicate": name, "verdict": verdict, "witness": w}));
    } else {
        println!("{verdict}");
        if let Some(w) = witness {
            println!("# idempotent-sum subsequence");
            for a in w.terms() {
                println!("{a}");
            }
        }
    }
    Ok(())
}

pub fn behaving(ctx: &Ctx, ints: &str) -> Out {
    let h: IntSeq = ints.parse()?;
    let b = is_behaving(&h)?;
    let class = behaving_bound_classify(&h)?;
    let v = json!({"H": h, "behaving": b, "class": class});
    if ctx.json {
        emit(true, &v);
    } else {
        println!("{}", v["class"].as_str().unwrap_or_default());
        println!("behaving: {b}");
    }
    Ok(())
}

pub fn classify(ctx: &Ctx, spec: &str, file: &Path) -> Out {
    let s = parse_spec(spec)?;
    let c = single(&s)?;
    let t = read_seq(&s, file)?;
    let class = classify_free_sequence(&c, &t)?;
    let v = serde_json::to_value(&class).map_err(|e| Failure { code: 3, message: e.to_string() })?;
    emit(ctx.json, &v);
    Ok(())
}

pub fn sc_witness(ctx: &Ctx, n: u64, ints: &str) -> Out {
    let t = parse_ints(ints)?;
    let w = savchev_chen(n, &t)?;
    match (ctx.json, w) {
        (true, w) => emit(true, &json!({"modulus": n, "witness": w})),
        (false, Some(w)) => {
            println!("c: {}", w.c);
            println!("H: {}", w.h);
        }
        (false, None) => println!("none"),
    }
    Ok(())
}

pub fn structure(ctx: &Ctx, spec: &str, file: &Path, m: ModeArg) -> Out {
    let s = parse_spec(spec)?;
    let c = single(&s)?;
    let t = read_seq(&s, file)?;
    let mode = match m {
        ModeArg::Free => Mode::Free,
        ModeArg::Minimal => Mode::Minimal,
    };
    let holds = has_structure(&c, &t, mode)?;
    if ctx.json {
        emit(true, &json!({"spec": s.format_spec(), "mode": mode, "structure": holds}));
    } else {
        println!("{holds}");
    }
    Ok(())
}

pub fn explore(ctx: &Ctx, kind: ExploreKind, r: [u64; 4], out: Option<&Path>) -> Out {
    let ranges = Ranges::new(r[0], r[1], r[2], r[3]);
    let rows: Vec<(Value, bool, bool)> = match kind {
        ExploreKind::Conjecture41 => explore_conjecture(&ranges, &ctx.budget)
            .into_iter()
            .map(|row| (serde_json::to_value(&row).expect("serializable"), row.anomalous(), row.error.is_some()))
            .collect(),
        ExploreKind::LhatGap | ExploreKind::LGap => {
            let k = if matches!(kind, ExploreKind::LhatGap) { GapKind::LhatGap } else { GapKind::LGap };
            explore_gap(k, &ranges, &ctx.budget)
                .into_iter()
                .map(|row| (serde_json::to_value(&row).expect("serializable"), row.anomaly, row.error.is_some()))
                .collect()
        }
    };
    let mut body = String::new();
    for (v, _, _) in &rows {
        body.push_str(&serde_json::to_string(v).expect("serializable"));
        body.push('\n');
    }
    let anomalies = rows.iter().filter(|r| r.1).count();
    let errors = rows.iter().filter(|r| r.2).count();
    let summary = json!({"rows": rows.len(), "anomalies": anomalies, "errors": errors});
    let summary_line = if ctx.json {
        summary.to_string()
    } else {
        format!("rows: {} anomalies: {anomalies} errors: {errors}", rows.len())
    };
    match out {
        Some(path) => {
            fs::write(path, body).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            println!("{summary_line}");
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(body.as_bytes()).map_err(|e| usage(e.to_string()))?;
            eprintln!("{summary_line}");
        }
    }
    Ok(())
}
