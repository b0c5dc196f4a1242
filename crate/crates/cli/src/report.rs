//! The report envelope and notation helpers shared by the markdown emitters.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Md,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraSummary {
    pub name: String,
    pub field: String,
    pub vertices: usize,
    pub arrows: usize,
    pub relations: usize,
    pub dim: usize,
    pub d: usize,
    pub gldim: usize,
}

/// Field order is the serialization order.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub algebra: AlgebraSummary,
    pub result: Value,
    pub anomalies: Vec<String>,
    pub pass: bool,
    /// Every computation is deterministic; always `null`.
    pub seed: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct Output {
    pub report: Report,
    pub markdown: String,
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.report).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Md => self.markdown.clone(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.report.pass {
            0
        } else {
            1
        }
    }
}

/// `f1 ⊕ f3 ⊕ f3`, or `0`.
pub fn direct_sum(names: &[String]) -> String {
    if names.is_empty() {
        "0".into()
    } else {
        names.join(" ⊕ ")
    }
}

/// `add{f1, f3}`, or `0`.
pub fn add(names: &[String]) -> String {
    if names.is_empty() {
        "0".into()
    } else {
        format!("add{{{}}}", names.join(", "))
    }
}

/// `add{Σ^ℤ f1}` or `add{Σ^ℤ {f2, f3, x}}`; `0` when empty and `D^b(mod Φ)` when `all`.
pub fn shift_closure(names: &[String], all: bool) -> String {
    match names {
        [] => "0".into(),
        _ if all => "D^b(mod Φ)".into(),
        [one] => format!("add{{Σ^ℤ {one}}}"),
        _ => format!("add{{Σ^ℤ {{{}}}}}", names.join(", ")),
    }
}

pub fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// A markdown table; cells must not contain `|`.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut s = format!("| {} |\n", header.join(" | "));
    s.push_str(&format!("|{}\n", "---|".repeat(header.len())));
    for r in rows {
        s.push_str(&format!("| {} |\n", r.join(" | ")));
    }
    s
}

pub fn pick(names: &[String], idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| names[i].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn notation() {
        assert_eq!(shift_closure(&s(&["f1"]), false), "add{Σ^ℤ f1}");
        assert_eq!(shift_closure(&s(&["f2", "f3", "x"]), false), "add{Σ^ℤ {f2, f3, x}}");
        assert_eq!(shift_closure(&[], false), "0");
        assert_eq!(shift_closure(&s(&["a"]), true), "D^b(mod Φ)");
        assert_eq!(direct_sum(&s(&["f1", "f3", "f3"])), "f1 ⊕ f3 ⊕ f3");
        assert_eq!(add(&s(&["f1"])), "add{f1}");
    }

    #[test]
    fn table_layout() {
        let t = table(&["j", "U"], &[s(&["1", "0"])]);
        assert_eq!(t, "| j | U |\n|---|---|\n| 1 | 0 |\n");
    }
}
