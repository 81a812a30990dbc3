//! Output envelope shared by every subcommand, rendered as JSON (default)
//! or as flat CSV rows with the fixed column set
//! `statistic,n,q,quantity,value_exact,value_float,provenance`.

use serde_json::{json, Map, Value};

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// One reported quantity: an optional exact rendering, a float rendering,
/// and the provenance of the route that produced it.
pub struct Quantity {
    /// Key under `results` in the JSON rendering.
    pub name: String,
    pub exact: Option<String>,
    pub float: f64,
    pub provenance: String,
    /// Overrides the envelope-level statistic column in CSV rows.
    pub csv_statistic: Option<String>,
    /// Overrides `name` in the CSV quantity column.
    pub csv_quantity: Option<String>,
}

impl Quantity {
    pub fn exact_value(name: &str, value: &geomword::Exact, provenance: &str) -> Self {
        use geomword::Scalar;
        Self {
            name: name.to_string(),
            exact: Some(value.to_string()),
            float: value.approx_f64(),
            provenance: provenance.to_string(),
            csv_statistic: None,
            csv_quantity: None,
        }
    }

    pub fn float_value(name: &str, value: f64, provenance: &str) -> Self {
        Self {
            name: name.to_string(),
            exact: None,
            float: value,
            provenance: provenance.to_string(),
            csv_statistic: None,
            csv_quantity: None,
        }
    }
}

/// A complete command response.
pub struct Envelope {
    pub command: &'static str,
    /// Echo of the parsed inputs.
    pub params: Value,
    pub mode: &'static str,
    /// Dominant provenance for the whole response.
    pub provenance: String,
    /// Optional annotation (for example the q → 1 routing note).
    pub label: Option<String>,
    pub quantities: Vec<Quantity>,
    /// Additional structured results that are not simple quantities,
    /// e.g. a distribution table. Rendered verbatim under `results`.
    pub extra: Vec<(String, Value)>,
    /// Context for CSV rows.
    pub statistic: Option<String>,
    pub n: Option<usize>,
    pub q: Option<String>,
}

impl Envelope {
    pub fn new(command: &'static str, params: Value, mode: &'static str, provenance: &str) -> Self {
        Self {
            command,
            params,
            mode,
            provenance: provenance.to_string(),
            label: None,
            quantities: Vec::new(),
            extra: Vec::new(),
            statistic: None,
            n: None,
            q: None,
        }
    }

    pub fn quantity_json(q: &Quantity) -> Value {
        let mut object = Map::new();
        if let Some(exact) = &q.exact {
            object.insert("exact".into(), Value::String(exact.clone()));
        }
        object.insert("float".into(), json!(q.float));
        object.insert("provenance".into(), Value::String(q.provenance.clone()));
        Value::Object(object)
    }

    fn to_json(&self) -> Value {
        let mut results = Map::new();
        if let Some(label) = &self.label {
            results.insert("label".into(), Value::String(label.clone()));
        }
        for q in &self.quantities {
            results.insert(q.name.clone(), Self::quantity_json(q));
        }
        for (key, value) in &self.extra {
            results.insert(key.clone(), value.clone());
        }
        json!({
            "command": self.command,
            "params": self.params,
            "mode": self.mode,
            "provenance": self.provenance,
            "results": Value::Object(results),
        })
    }

    fn to_csv(&self) -> String {
        let mut out = String::from("statistic,n,q,quantity,value_exact,value_float,provenance\n");
        let stat = self.statistic.clone().unwrap_or_default();
        let n = self.n.map(|n| n.to_string()).unwrap_or_default();
        let q = self.q.clone().unwrap_or_default();
        for quantity in &self.quantities {
            let float_text = quantity.float.to_string();
            let row = [
                quantity.csv_statistic.as_deref().unwrap_or(&stat),
                n.as_str(),
                q.as_str(),
                quantity.csv_quantity.as_deref().unwrap_or(&quantity.name),
                quantity.exact.as_deref().unwrap_or(""),
                float_text.as_str(),
                quantity.provenance.as_str(),
            ]
            .map(csv_field)
            .join(",");
            out.push_str(&row);
            out.push('\n');
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut text = serde_json::to_string_pretty(&self.to_json())
                    .expect("envelope serialization cannot fail");
                text.push('\n');
                text
            }
            Format::Csv => self.to_csv(),
        }
    }
}

/// Quote a CSV field only when it needs it.
pub fn csv_field(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}
