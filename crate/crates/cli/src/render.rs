use serde_json::Value;

/// Print a report: one JSON object, or one `key: value` line per field.
pub fn emit(json: bool, v: &Value) {
    if json {
        println!("{}", serde_json::to_string(v).expect("serializable"));
        return;
    }
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                println!("{k}: {}", scalar(val));
            }
            if map.get("method").and_then(Value::as_str) == Some("both") {
                println!("methods agree");
            }
        }
        other => println!("{}", scalar(other)),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "none".to_string(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}
