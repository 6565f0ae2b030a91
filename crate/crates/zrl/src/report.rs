//! Deterministic reports: ordered sections of ordered key/value pairs,
//! rendered either as `section.key = value` lines or as aligned text.

use zrl_core::Complex64;

/// Significant digits used for every floating-point value.
pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(i128),
    Complex(Complex64),
    Str(String),
    Bool(bool),
    List(Vec<Value>),
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<Complex64> for Value {
    fn from(z: Complex64) -> Self {
        Value::Complex(z)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Str(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Str(s)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

macro_rules! int_value {
    ($($t:ty),*) => {$(
        impl From<$t> for Value {
            fn from(x: $t) -> Self {
                Value::Int(x as i128)
            }
        }
    )*};
}
int_value!(i8, i32, i64, i128, u32, u64, usize);

impl<T: Into<Value>> From<Vec<T>> for Value {
    fn from(v: Vec<T>) -> Self {
        Value::List(v.into_iter().map(Into::into).collect())
    }
}

/// `pass` or `fail`.
pub fn verdict(ok: bool) -> Value {
    Value::Str(if ok { "pass" } else { "fail" }.to_string())
}

/// Formats `x` with [`SIGNIFICANT_DIGITS`] significant digits.
///
/// Moderate magnitudes are written in positional notation, others in
/// scientific notation; trailing zeros are dropped.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..12).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".to_string()
    } else {
        t.to_string()
    }
}

impl Value {
    pub fn render(&self) -> String {
        match self {
            Value::Num(x) => format_number(*x),
            Value::Int(i) => i.to_string(),
            Value::Complex(z) => {
                if z.im == 0.0 {
                    format_number(z.re)
                } else {
                    let im = format_number(z.im.abs());
                    let sign = if z.im < 0.0 { '-' } else { '+' };
                    format!("{}{sign}{im}i", format_number(z.re))
                }
            }
            Value::Str(s) => s.clone(),
            Value::Bool(b) => b.to_string(),
            Value::List(items) => {
                let inner: Vec<String> = items.iter().map(Value::render).collect();
                format!("[{}]", inner.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Section {
    pub name: String,
    pub entries: Vec<(String, Value)>,
    pub tables: Vec<(String, Table)>,
}

impl Section {
    pub fn put(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        debug_assert!(is_identifier(key), "report key {key:?} is not an identifier");
        self.entries.push((key.to_string(), value.into()));
        self
    }

    pub fn table(&mut self, key: &str, columns: &[&str], rows: Vec<Vec<Value>>) -> &mut Self {
        let columns = columns.iter().map(|c| c.to_string()).collect();
        self.tables.push((key.to_string(), Table { columns, rows }));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

fn is_identifier(key: &str) -> bool {
    let mut chars = key.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Kv,
    Text,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ReportDocument {
    pub sections: Vec<Section>,
}

impl ReportDocument {
    pub fn new() -> Self {
        Self::default()
    }

    /// The section called `name`, appended if absent.
    pub fn section(&mut self, name: &str) -> &mut Section {
        if let Some(i) = self.sections.iter().position(|s| s.name == name) {
            return &mut self.sections[i];
        }
        self.sections.push(Section { name: name.to_string(), ..Section::default() });
        self.sections.last_mut().expect("just pushed")
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&Value> {
        self.sections.iter().find(|s| s.name == section)?.get(key)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Kv => self.render_kv(),
            Format::Text => self.render_text(),
        }
    }

    fn render_kv(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            for (k, v) in &s.entries {
                out.push_str(&format!("{}.{k} = {}\n", s.name, v.render()));
            }
            for (k, t) in &s.tables {
                out.push_str(&format!("{}.{k}.columns = [{}]\n", s.name, t.columns.join(", ")));
                for (i, row) in t.rows.iter().enumerate() {
                    out.push_str(&format!("{}.{k}.{i} = {}\n", s.name, Value::List(row.clone()).render()));
                }
            }
        }
        out
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&format!("[{}]\n", s.name));
            let width = s.entries.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in &s.entries {
                out.push_str(&format!("  {k:<width$}  {}\n", v.render()));
            }
            for (k, t) in &s.tables {
                out.push_str(&format!("  {k}:\n"));
                let cells: Vec<Vec<String>> = t.rows.iter().map(|r| r.iter().map(Value::render).collect()).collect();
                let mut widths: Vec<usize> = t.columns.iter().map(|c| c.len()).collect();
                for row in &cells {
                    for (j, c) in row.iter().enumerate() {
                        if j < widths.len() {
                            widths[j] = widths[j].max(c.len());
                        }
                    }
                }
                let line = |items: &[String]| {
                    let padded: Vec<String> =
                        items.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}", w = *w)).collect();
                    format!("    {}\n", padded.join("  ").trim_end())
                };
                out.push_str(&line(&t.columns));
                for row in &cells {
                    out.push_str(&line(row));
                }
            }
        }
        out
    }
}
