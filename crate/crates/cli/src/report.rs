use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_IDENTITY: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;
pub const EXIT_VALIDATION: u8 = 4;

/// Both sides of one checked identity.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub lhs: Value,
    pub rhs: Value,
    pub holds: bool,
}

impl Check {
    pub fn new(name: &str, lhs: impl Serialize, rhs: impl Serialize) -> Self {
        let lhs = serde_json::to_value(lhs).expect("serializable");
        let rhs = serde_json::to_value(rhs).expect("serializable");
        let holds = lhs == rhs;
        Check {
            name: name.to_string(),
            lhs,
            rhs,
            holds,
        }
    }
}

/// What a command produced before it was wrapped into a report.
pub struct Outcome {
    pub result: Value,
    pub checks: Vec<Check>,
    pub lines: Vec<String>,
}

/// A command failure with its exit code; `detail` carries a counterexample
/// when there is one.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
    pub detail: Option<Value>,
}

impl Failure {
    pub fn input(message: impl ToString) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.to_string(),
            detail: None,
        }
    }

    pub fn precondition(message: impl ToString) -> Self {
        Failure {
            code: EXIT_PRECONDITION,
            message: message.to_string(),
            detail: None,
        }
    }

    pub fn validation(message: impl ToString, detail: Option<Value>) -> Self {
        Failure {
            code: EXIT_VALIDATION,
            message: message.to_string(),
            detail,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Timing {
    pub elapsed_us: u64,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub input: String,
    pub inputs_digest: String,
    pub verdict: &'static str,
    pub exit_code: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    pub witnesses: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    pub timing: Timing,
    #[serde(skip)]
    lines: Vec<String>,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Report {
    pub fn build(
        command: &str,
        input: &str,
        bytes: &[u8],
        outcome: Result<Outcome, Failure>,
        elapsed_us: u64,
    ) -> Self {
        let mut report = Report {
            command: command.to_string(),
            input: input.to_string(),
            inputs_digest: digest(bytes),
            verdict: "pass",
            exit_code: EXIT_PASS,
            result: None,
            witnesses: Vec::new(),
            error: None,
            counterexample: None,
            timing: Timing { elapsed_us },
            lines: Vec::new(),
        };
        match outcome {
            Ok(o) => {
                if let Some(bad) = o.checks.iter().find(|c| !c.holds) {
                    report.verdict = "fail";
                    report.exit_code = EXIT_IDENTITY;
                    report.error = Some(format!("identity failed: {}", bad.name));
                }
                report.result = Some(o.result);
                report.witnesses = o.checks;
                report.lines = o.lines;
            }
            Err(f) => {
                report.verdict = if f.code == EXIT_IDENTITY { "fail" } else { "error" };
                report.exit_code = f.code;
                report.error = Some(f.message);
                report.counterexample = f.detail;
            }
        }
        report
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("[{}] {} {}\n", self.verdict, self.command, self.input);
        for l in &self.lines {
            out.push_str(&format!("  {l}\n"));
        }
        for c in &self.witnesses {
            let mark = if c.holds { "holds" } else { "FAILS" };
            out.push_str(&format!("  check {}: {} vs {} ({mark})\n", c.name, c.lhs, c.rhs));
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("  error: {e}\n"));
        }
        if let Some(c) = &self.counterexample {
            out.push_str(&format!("  counterexample: {c}\n"));
        }
        out.push_str(&format!(
            "  exit {} | sha256 {} | {} us\n",
            self.exit_code, self.inputs_digest, self.timing.elapsed_us
        ));
        out
    }
}
