//! The automaton file format: a JSON document with an optional name, the
//! state count, the letter names, and the transition table in letter-major
//! order (`delta[r][q]` is the 0-based target of state `q` under letter `r`).

use std::fs;
use std::path::Path;

use creachable::Dfa;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AutomatonFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub states: usize,
    pub letters: Vec<String>,
    pub delta: Vec<Vec<usize>>,
}

impl AutomatonFile {
    pub fn from_dfa(dfa: &Dfa, name: Option<String>) -> AutomatonFile {
        AutomatonFile {
            name,
            states: dfa.state_count(),
            letters: dfa.letter_names().to_vec(),
            delta: (0..dfa.letter_count())
                .map(|l| dfa.letter_action(l).to_vec())
                .collect(),
        }
    }

    /// Validates the document into a [`Dfa`].
    pub fn to_dfa(&self) -> Result<Dfa, CliError> {
        Dfa::new(self.states, self.letters.clone(), self.delta.clone()).map_err(CliError::from)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("document serializes");
        text.push('\n');
        text
    }

    /// Parse errors keep serde_json's line/column context.
    pub fn from_json(text: &str) -> Result<AutomatonFile, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::InvalidInput(format!("automaton file: {e}")))
    }
}

/// Reads and validates an automaton file.
pub fn parse_automaton(path: &Path) -> Result<(Dfa, Option<String>), CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let file = AutomatonFile::from_json(&text)
        .map_err(|e| CliError::InvalidInput(format!("{}: {e}", path.display())))?;
    let dfa = file
        .to_dfa()
        .map_err(|e| CliError::InvalidInput(format!("{}: {e}", path.display())))?;
    Ok((dfa, file.name))
}
