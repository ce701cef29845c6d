//! Run reports and number formatting.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

/// One named check and its outcome.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub pass: bool,
}

/// The document a subcommand produces.
///
/// JSON output carries everything except the wall-clock time, which would
/// otherwise break byte-for-byte reproducibility.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub seed: u64,
    pub tolerances: BTreeMap<String, f64>,
    pub verdicts: Vec<Verdict>,
    pub errata: Vec<Value>,
    pub result: Value,
    #[serde(skip)]
    pub body: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl RunReport {
    pub fn new(command: Vec<String>, seed: u64) -> Self {
        Self {
            command,
            seed,
            tolerances: BTreeMap::new(),
            verdicts: Vec::new(),
            errata: Vec::new(),
            result: Value::Null,
            body: String::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn tol(&mut self, name: &str, value: f64) -> &mut Self {
        self.tolerances.insert(name.to_string(), value);
        self
    }

    pub fn verdict(&mut self, check: impl Into<String>, pass: bool) -> bool {
        self.verdicts.push(Verdict {
            check: check.into(),
            pass,
        });
        pass
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "lieflag {}", self.command.join(" "));
        let _ = writeln!(s, "seed: {}", self.seed);
        for (name, value) in &self.tolerances {
            let _ = writeln!(s, "tolerance {name}: {}", sig(*value));
        }
        s.push('\n');
        s.push_str(&self.body);
        if !self.body.ends_with('\n') && !self.body.is_empty() {
            s.push('\n');
        }
        if !self.verdicts.is_empty() {
            s.push('\n');
            for v in &self.verdicts {
                let _ = writeln!(s, "[{}] {}", if v.pass { "PASS" } else { "FAIL" }, v.check);
            }
        }
        if !self.errata.is_empty() {
            let _ = writeln!(s, "\nerrata ({}):", self.errata.len());
            for e in &self.errata {
                let _ = writeln!(s, "  {e}");
            }
        }
        let _ = writeln!(s, "\nelapsed: {:.3} ms", self.elapsed.as_secs_f64() * 1e3);
        s
    }
}

/// Renders `x` with 12 significant digits, dropping trailing zeros.
pub fn sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        let s = if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        };
        if s == "-0" {
            "0".into()
        } else {
            s
        }
    } else {
        let s = format!("{x:.11e}");
        let (mantissa, exponent) = s.split_once('e').expect("exponent form");
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{exponent}")
    }
}

/// A frame vector as a linear combination, e.g. `-x + 0.5 z`.
pub fn combination(v: &[f64; 3]) -> String {
    let mut s = String::new();
    for (c, name) in v.iter().zip(["x", "y", "z"]) {
        if *c == 0.0 {
            continue;
        }
        let mag = c.abs();
        let coef = if mag == 1.0 {
            String::new()
        } else {
            format!("{} ", sig(mag))
        };
        if s.is_empty() {
            if *c < 0.0 {
                s.push('-');
            }
        } else {
            s.push_str(if *c < 0.0 { " - " } else { " + " });
        }
        s.push_str(&coef);
        s.push_str(name);
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

pub fn triple(v: &[f64; 3]) -> String {
    format!("({}, {}, {})", sig(v[0]), sig(v[1]), sig(v[2]))
}
