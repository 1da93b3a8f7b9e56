//! Sectioned `key: value` text shared by record and graph files.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Entry {
    pub key: String,
    pub value: String,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Section {
    pub name: String,
    pub line: usize,
    pub entries: Vec<Entry>,
}

impl Section {
    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    pub fn value(&self, key: &str) -> Option<&str> {
        self.get(key).map(|e| e.value.as_str())
    }

    pub fn require(&self, key: &str) -> Result<&Entry> {
        self.get(key)
            .ok_or_else(|| Error::parse(self.line, format!("[{}] is missing `{key}`", self.name)))
    }

    pub fn parse_value<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.get(key) {
            None => Ok(None),
            Some(e) => e
                .value
                .parse()
                .map(Some)
                .map_err(|_| Error::parse(e.line, format!("bad value for `{key}`: {:?}", e.value))),
        }
    }

    pub fn parse_required<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        self.parse_value(key)?
            .ok_or_else(|| Error::parse(self.line, format!("[{}] is missing `{key}`", self.name)))
    }

    /// Rejects keys outside `allowed`.
    pub fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        match self.entries.iter().find(|e| !allowed.contains(&e.key.as_str())) {
            Some(e) => Err(Error::parse(
                e.line,
                format!("unknown key `{}` in [{}]", e.key, self.name),
            )),
            None => Ok(()),
        }
    }
}

/// Splits text into `[name]` sections. Blank lines and `#` comments are
/// ignored; duplicate keys within a section are an error.
pub(crate) fn parse_sections(text: &str) -> Result<Vec<Section>> {
    let mut sections: Vec<Section> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            sections.push(Section {
                name: name.trim().to_string(),
                line,
                entries: Vec::new(),
            });
            continue;
        }
        let (key, value) = content
            .split_once(':')
            .ok_or_else(|| Error::parse(line, format!("expected `key: value`, found {content:?}")))?;
        let section = sections
            .last_mut()
            .ok_or_else(|| Error::parse(line, "entry before any [section]"))?;
        let key = key.trim().to_string();
        if section.get(&key).is_some() {
            return Err(Error::parse(
                line,
                format!("duplicate key `{key}` in [{}]", section.name),
            ));
        }
        section.entries.push(Entry {
            key,
            value: value.trim().to_string(),
            line,
        });
    }
    Ok(sections)
}

/// Comma-separated list helper.
pub(crate) fn split_list(value: &str) -> Vec<&str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

pub(crate) fn parse_bool(entry: &Entry) -> Result<bool> {
    match entry.value.as_str() {
        "true" | "yes" => Ok(true),
        "false" | "no" => Ok(false),
        other => Err(Error::parse(
            entry.line,
            format!("expected true or false for `{}`, found {other:?}", entry.key),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sections_and_errors() {
        let s = parse_sections("# head\n[a]\nx: 1 # note\ny: two words\n\n[b]\n").unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].value("y"), Some("two words"));
        assert_eq!(s[0].parse_required::<u32>("x").unwrap(), 1);
        assert!(s[1].entries.is_empty());
        assert!(parse_sections("x: 1\n").is_err());
        assert!(parse_sections("[a]\nx: 1\nx: 2\n").is_err());
        assert!(parse_sections("[a]\nnot a pair\n").is_err());
        assert!(s[0].check_keys(&["x"]).is_err());
    }
}
