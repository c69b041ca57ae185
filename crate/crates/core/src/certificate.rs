//! Machine-readable outcome of a verification.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub check: String,
    pub status: Status,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<i64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn new(check: &str) -> Self {
        Certificate {
            check: check.to_string(),
            status: Status::Pass,
            witnesses: Vec::new(),
            precision: None,
            degree_bound: None,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn witness(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.witnesses.push(Witness {
            key: key.to_string(),
            value: value.to_string(),
        });
        self
    }

    /// Records a sub-check; a false condition fails the certificate.
    pub fn require(&mut self, ok: bool, what: impl ToString) -> bool {
        if !ok {
            self.failures.push(what.to_string());
            self.status = Status::Fail;
        }
        ok
    }

    pub fn fail(&mut self, what: impl ToString) {
        self.require(false, what);
    }

    pub fn note(&mut self, text: impl ToString) -> &mut Self {
        self.notes.push(text.to_string());
        self
    }

    pub fn with_precision(&mut self, p: i64) -> &mut Self {
        self.precision = Some(p);
        self
    }

    pub fn with_degree_bound(&mut self, d: i64) -> &mut Self {
        self.degree_bound = Some(d);
        self
    }

    /// Folds another certificate in as a sub-check.
    pub fn absorb(&mut self, sub: &Certificate) {
        let tag = if sub.passed() { "pass" } else { "fail" };
        self.witness(&format!("sub:{}", sub.check), tag);
        for f in &sub.failures {
            self.fail(format!("{}: {}", sub.check, f));
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.witnesses
            .iter()
            .find(|w| w.key == key)
            .map(|w| w.value.as_str())
    }
}
