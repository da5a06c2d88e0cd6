//! Ledger of published rows that do not survive exact replay.
//!
//! One entry per line: `<category> <id> <free text>`. Suites treat a
//! failure as expected only when its `(category, id)` pair is listed.

use std::collections::BTreeMap;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Errata {
    entries: BTreeMap<(String, String), String>,
}

impl Errata {
    pub fn parse(src: &str) -> Self {
        let mut entries = BTreeMap::new();
        for raw in src.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            let mut parts = line.splitn(3, char::is_whitespace);
            if let (Some(cat), Some(id)) = (parts.next(), parts.next()) {
                let note = parts.next().unwrap_or("").trim().to_string();
                entries.insert((cat.to_string(), id.to_string()), note);
            }
        }
        Errata { entries }
    }

    pub fn contains(&self, category: &str, id: &str) -> bool {
        self.entries
            .contains_key(&(category.to_string(), id.to_string()))
    }

    pub fn note(&self, category: &str, id: &str) -> Option<&str> {
        self.entries
            .get(&(category.to_string(), id.to_string()))
            .map(String::as_str)
    }

    pub fn ids(&self, category: &str) -> impl Iterator<Item = &str> {
        let category = category.to_string();
        self.entries
            .keys()
            .filter(move |(c, _)| *c == category)
            .map(|(_, id)| id.as_str())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_categories_and_notes() {
        let e = Errata::parse(
            "# header\nwitness geo2_x NonRational: sqrt(2)\n\norbit Jc16@0 jumps to 10\n",
        );
        assert_eq!(e.len(), 2);
        assert!(e.contains("witness", "geo2_x"));
        assert!(!e.contains("orbit", "geo2_x"));
        assert_eq!(e.note("orbit", "Jc16@0"), Some("jumps to 10"));
        assert_eq!(e.ids("witness").collect::<Vec<_>>(), vec!["geo2_x"]);
    }
}
