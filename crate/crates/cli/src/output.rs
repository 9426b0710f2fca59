//! Machine-readable output: JSON with 17 significant digits, or CSV.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::value::RawValue;

pub type Raw = Box<RawValue>;

/// A float as a JSON number with 17 significant digits; non-finite values
/// become null and −0 prints as 0.
pub fn num(x: f64) -> Raw {
    let x = if x == 0.0 { 0.0 } else { x };
    let text = if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    };
    RawValue::from_string(text).expect("formatted float is valid JSON")
}

pub fn int(n: i64) -> Raw {
    RawValue::from_string(n.to_string()).expect("integer is valid JSON")
}

pub fn text(s: &str) -> Raw {
    RawValue::from_string(serde_json::to_string(s).expect("string serializes")).expect("valid JSON")
}

pub fn complex(z: Complex64) -> Raw {
    raw_object(&[("re", num(z.re)), ("im", num(z.im))])
}

pub fn raw_array(items: Vec<Raw>) -> Raw {
    let body: Vec<&str> = items.iter().map(|r| r.get()).collect();
    RawValue::from_string(format!("[{}]", body.join(","))).expect("valid JSON")
}

pub fn raw_object(fields: &[(&str, Raw)]) -> Raw {
    let body: Vec<String> = fields
        .iter()
        .map(|(k, v)| format!("{}:{}", serde_json::to_string(k).expect("key"), v.get()))
        .collect();
    RawValue::from_string(format!("{{{}}}", body.join(","))).expect("valid JSON")
}

/// Plain-text rendering of an input cell for CSV.
#[derive(Debug, Clone)]
pub struct Input {
    pub json: Raw,
    pub csv: String,
}

impl Input {
    pub fn real(x: f64) -> Self {
        Self {
            json: num(x),
            csv: format!("{x:.16e}"),
        }
    }

    pub fn index(n: usize) -> Self {
        Self {
            json: int(n as i64),
            csv: n.to_string(),
        }
    }

    pub fn pair(a: usize, b: usize) -> Self {
        Self {
            json: raw_array(vec![int(a as i64), int(b as i64)]),
            csv: format!("{a} {b}"),
        }
    }

    pub fn complex(z: Complex64) -> Self {
        Self {
            json: complex(z),
            csv: format!("{:.16e}{:+.16e}i", z.re, z.im),
        }
    }

    pub fn complex_pair(z1: Complex64, z2: Complex64) -> Self {
        Self {
            json: raw_array(vec![complex(z1), complex(z2)]),
            csv: format!(
                "{:.16e}{:+.16e}i {:.16e}{:+.16e}i",
                z1.re, z1.im, z2.re, z2.im
            ),
        }
    }

    pub fn reals(xs: &[f64]) -> Self {
        Self {
            json: raw_array(xs.iter().map(|&x| num(x)).collect()),
            csv: xs
                .iter()
                .map(|x| format!("{x:.16e}"))
                .collect::<Vec<_>>()
                .join(" "),
        }
    }
}

#[derive(Serialize)]
pub struct Row {
    pub input: Raw,
    pub output_re: Raw,
    pub output_im: Raw,
}

#[derive(Serialize)]
pub struct Metadata {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<Raw>,
    pub version: &'static str,
}

impl Metadata {
    pub fn new() -> Self {
        Self {
            truncation: None,
            tolerance: None,
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

/// Evaluation table: one row per input point.
#[derive(Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub parameters: BTreeMap<String, Raw>,
    pub values: Vec<Row>,
    pub metadata: Metadata,
    #[serde(skip)]
    csv_inputs: Vec<String>,
    #[serde(skip)]
    csv_outputs: Vec<Complex64>,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            values: Vec::new(),
            metadata: Metadata::new(),
            csv_inputs: Vec::new(),
            csv_outputs: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: Raw) -> &mut Self {
        self.parameters.insert(key.to_string(), value);
        self
    }

    pub fn push(&mut self, input: Input, output: Complex64) {
        self.values.push(Row {
            input: input.json,
            output_re: num(output.re),
            output_im: num(output.im),
        });
        self.csv_inputs.push(input.csv);
        self.csv_outputs.push(output);
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["input", "output_re", "output_im"])
            .expect("in-memory write");
        for (i, z) in self.csv_inputs.iter().zip(&self.csv_outputs) {
            w.write_record([
                i.clone(),
                format!("{:.16e}", z.re),
                format!("{:.16e}", z.im),
            ])
            .expect("in-memory write");
        }
        into_string(w)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("output serializes");
    s.push('\n');
    s
}

pub fn into_string(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV is UTF-8")
}
