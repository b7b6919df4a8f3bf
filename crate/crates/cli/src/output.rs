use ramsey_rates::rates::GrowthRate;
use ramsey_rates::Error;
use serde::Serialize;
use serde_json::Value;

pub const PLUMBING: &str = "plumbing";

#[derive(Debug, Serialize)]
pub struct CommandResult {
    pub subcommand: String,
    pub inputs: Value,
    pub outputs: Vec<Output>,
    pub status: Status,
}

#[derive(Debug, Serialize)]
pub struct Output {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log_base: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Value>,
    pub tag: String,
}

impl Output {
    pub fn rate(name: impl Into<String>, rate: GrowthRate, tag: &str) -> Self {
        Self { name: name.into(), base: Some(rate.base()), log_base: Some(rate.log_base), value: None, tag: tag.into() }
    }

    pub fn value(name: impl Into<String>, value: impl Serialize, tag: &str) -> Self {
        Self {
            name: name.into(),
            base: None,
            log_base: None,
            value: Some(serde_json::to_value(value).expect("outputs serialize")),
            tag: tag.into(),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(tag = "state", rename_all = "snake_case")]
pub enum Status {
    Ok,
    Error { kind: String, message: String },
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "domain",
        Error::Usage(_) => "usage",
        Error::Capacity(_) => "capacity",
        Error::Unsupported(_) => "unsupported",
        Error::Infeasible(_) => "infeasible",
        Error::SearchFailure(_) => "search_failure",
        Error::Certification(_) => "certification",
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Unsupported(_) | Error::Infeasible(_) => 1,
        Error::Usage(_) | Error::Capacity(_) => 2,
        Error::SearchFailure(_) | Error::Certification(_) => 3,
    }
}

/// `x` with 12 significant digits, switching to exponent form outside
/// `[1e-4, 1e12)`.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-4..12).contains(&mag) {
        return format!("{x:.11e}");
    }
    format!("{:.*}", (11 - mag).max(0) as usize, x)
}

fn render(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => sig12(n.as_f64().unwrap_or(f64::NAN)),
        Value::Array(items) => format!("[{}]", items.iter().map(render).collect::<Vec<_>>().join(", ")),
        Value::Object(map) => format!(
            "{{{}}}",
            map.iter().map(|(k, v)| format!("{k}: {}", render(v))).collect::<Vec<_>>().join(", ")
        ),
        other => other.to_string(),
    }
}

pub fn print_table(result: &CommandResult) {
    println!("{}", result.subcommand);
    println!("  inputs: {}", render(&result.inputs));
    let name_w = result.outputs.iter().map(|o| o.name.len()).max().unwrap_or(4).max(4);
    println!("  {:name_w$}  {:>16}  {:>16}  {:<16}  value", "name", "base", "log_base", "tag");
    for o in &result.outputs {
        let base = o.base.map(sig12).unwrap_or_default();
        let log = o.log_base.map(sig12).unwrap_or_default();
        let value = o.value.as_ref().map(render).unwrap_or_default();
        println!("  {:name_w$}  {base:>16}  {log:>16}  {:<16}  {value}", o.name, o.tag);
    }
    match &result.status {
        Status::Ok => println!("  status: ok"),
        Status::Error { kind, message } => println!("  status: {kind}: {message}"),
    }
}
