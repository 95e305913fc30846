//! Flat `key = value` config files, spliced into the argument list ahead of
//! the user's own flags so the command line wins.

use std::fs;

/// Reads `--config <path>` (or `--config=<path>`) out of `argv` and inserts
/// the file's entries as long flags right after the subcommand.
pub fn merge(argv: Vec<String>) -> Result<Vec<String>, String> {
    let mut path = None;
    for (i, a) in argv.iter().enumerate() {
        if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else if a == "--config" {
            path = Some(argv.get(i + 1).ok_or("--config needs a path")?.clone());
        }
    }
    let Some(path) = path else { return Ok(argv) };
    let text = fs::read_to_string(&path).map_err(|e| format!("{path}: {e}"))?;
    let flags = parse(&text)?;
    if argv.len() < 2 {
        return Ok(argv);
    }
    let mut out = argv[..2].to_vec();
    out.extend(flags);
    out.extend_from_slice(&argv[2..]);
    Ok(out)
}

/// `key = value` lines to `--key value`; `#` starts a comment. Boolean
/// values become a bare flag (`true`) or nothing (`false`).
pub fn parse(text: &str) -> Result<Vec<String>, String> {
    let mut flags = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| format!("line {}: expected key = value", ln + 1))?;
        let key = k.trim().replace('_', "-");
        if key.is_empty() || key == "config" {
            return Err(format!("line {}: bad key '{}'", ln + 1, k.trim()));
        }
        match v.trim() {
            "true" => flags.push(format!("--{key}")),
            "false" => {}
            v => {
                flags.push(format!("--{key}"));
                flags.push(v.to_string());
            }
        }
    }
    Ok(flags)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_files() {
        let f = parse("# comment\ngroup = su2\ncutoff=64 # trailing\nsup = true\nquiet = false\n").unwrap();
        assert_eq!(f, ["--group", "su2", "--cutoff", "64", "--sup"]);
        assert!(parse("nonsense").is_err());
    }

    #[test]
    fn command_line_comes_last() {
        let dir = std::env::temp_dir().join(format!("liebounds-cfg-{}", std::process::id()));
        fs::write(&dir, "m = 3\n").unwrap();
        let argv: Vec<String> = ["liebounds", "so-compare", "--config", dir.to_str().unwrap(), "--m", "2"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let merged = merge(argv).unwrap();
        assert_eq!(&merged[..4], ["liebounds", "so-compare", "--m", "3"]);
        assert_eq!(&merged[merged.len() - 2..], ["--m", "2"]);
        fs::remove_file(dir).unwrap();
    }
}
