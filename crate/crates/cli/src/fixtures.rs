//! The in-repo fixture corpus and resolution of the spec argument.

use std::path::Path;

use crate::doc::AlgebraSpecDoc;
use crate::names::NameMapDoc;
use crate::CliError;

/// `(name, spec, name map)` for the shipped fixtures.
pub const BUILTIN: &[(&str, &str, &str)] = &[
    ("vaso-3-2-2", include_str!("../fixtures/vaso-3-2-2.json"), include_str!("../fixtures/vaso-3-2-2.names.json")),
    ("ka2", include_str!("../fixtures/ka2.json"), include_str!("../fixtures/ka2.names.json")),
];

/// A parsed spec together with its name map.
#[derive(Clone, Debug)]
pub struct Input {
    pub doc: AlgebraSpecDoc,
    pub names: NameMapDoc,
}

/// Parses `nakayama-N-L-D`.
fn nakayama_args(arg: &str) -> Option<(usize, usize, usize)> {
    let rest = arg.strip_prefix("nakayama-")?;
    let parts: Vec<usize> = rest.split('-').map(|p| p.parse().ok()).collect::<Option<_>>()?;
    match parts[..] {
        [n, l, d] if (1..=8).contains(&n) => Some((n, l, d)),
        _ => None,
    }
}

/// A file path, a built-in fixture name, or `nakayama-N-L-D` for `k A_N / rad^L` with
/// the given `d`. For a path `foo.json`, a sibling `foo.names.json` is used when present.
pub fn resolve(arg: &str, names_path: Option<&Path>) -> Result<Input, CliError> {
    let path = Path::new(arg);
    let (doc, mut names) = if path.is_file() {
        let doc = AlgebraSpecDoc::from_json(&read(path)?)?;
        let sibling = path.with_extension("names.json");
        let names = if sibling.is_file() { NameMapDoc::from_json(&read(&sibling)?)? } else { NameMapDoc::default() };
        (doc, names)
    } else if let Some((_, spec, names)) = BUILTIN.iter().find(|(n, _, _)| *n == arg) {
        (AlgebraSpecDoc::from_json(spec)?, NameMapDoc::from_json(names)?)
    } else if let Some((n, l, d)) = nakayama_args(arg) {
        (AlgebraSpecDoc::nakayama(n, l, d), NameMapDoc::default())
    } else {
        return Err(CliError::Input(format!("'{arg}' is neither a file nor a known fixture")));
    };
    if let Some(p) = names_path {
        names = NameMapDoc::from_json(&read(p)?)?;
    }
    Ok(Input { doc, names })
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_fixtures_parse() {
        for (name, _, _) in BUILTIN {
            let input = resolve(name, None).unwrap();
            input.doc.to_spec().unwrap();
            assert!(!input.names.modules.is_empty());
        }
    }

    #[test]
    fn nakayama_names() {
        assert_eq!(nakayama_args("nakayama-3-2-2"), Some((3, 2, 2)));
        assert_eq!(nakayama_args("nakayama-3-2"), None);
        assert_eq!(nakayama_args("nakayama-0-1-1"), None);
        assert!(resolve("no-such-thing", None).is_err());
    }
}
