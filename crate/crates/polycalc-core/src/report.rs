use serde::{Deserialize, Serialize};

/// One law instance checked by a validator, with a witness when it fails.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub law: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Outcome of a validation operation: every law checked, violations carry
/// replayable witnesses.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report { checks: Vec::new() }
    }

    pub fn ok(&mut self, law: &str) {
        self.checks.push(Check {
            law: law.to_string(),
            ok: true,
            witness: None,
        });
    }

    pub fn fail(&mut self, law: &str, witness: impl Into<String>) {
        self.checks.push(Check {
            law: law.to_string(),
            ok: false,
            witness: Some(witness.into()),
        });
    }

    pub fn record(&mut self, law: &str, ok: bool, witness: impl Into<String>) {
        if ok {
            self.ok(law);
        } else {
            self.fail(law, witness);
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }

    /// First failure as a one-line diagnostic, if any.
    pub fn first_failure(&self) -> Option<String> {
        self.failures()
            .next()
            .map(|c| format!("{}: {}", c.law, c.witness.as_deref().unwrap_or("")))
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            if c.ok {
                writeln!(f, "pass {}", c.law)?;
            } else {
                writeln!(
                    f,
                    "FAIL {} witness={}",
                    c.law,
                    c.witness.as_deref().unwrap_or("")
                )?;
            }
        }
        Ok(())
    }
}
