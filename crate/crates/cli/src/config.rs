//! `key = value` files named by `--config`, spliced into the argument list
//! ahead of the command-line flags so that the latter win.

use std::ffi::OsString;
use std::path::Path;

use crate::error::CliError;

const CONFIG_FLAG: &str = "--config";

/// Argument list with the entries of the config file, if any, inserted
/// right after the subcommand.
pub fn expand(raw: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let Some(path) = config_path(&raw)? else {
        return Ok(raw);
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| CliError::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    let entries = parse_entries(&text, Path::new(&path))?;
    let mut out = Vec::with_capacity(raw.len() + entries.len());
    let mut rest = raw.into_iter();
    out.extend(rest.by_ref().take(2));
    out.extend(entries.into_iter().map(OsString::from));
    out.extend(rest);
    Ok(out)
}

fn config_path(raw: &[OsString]) -> Result<Option<OsString>, CliError> {
    let mut found = None;
    let mut args = raw.iter().skip(2);
    while let Some(arg) = args.next() {
        let Some(text) = arg.to_str() else { continue };
        if text == "--" {
            break;
        }
        if text == CONFIG_FLAG {
            let value = args
                .next()
                .ok_or_else(|| CliError::InvalidFlag(format!("{CONFIG_FLAG} needs a file name")))?;
            found = Some(value.clone());
        } else if let Some(value) = text.strip_prefix("--config=") {
            found = Some(value.into());
        }
    }
    Ok(found)
}

/// Flags and values from `key = value` lines; blank lines and lines
/// starting with `#` are skipped.
pub fn parse_entries(text: &str, origin: &Path) -> Result<Vec<String>, CliError> {
    let mut out = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |what: &str| CliError::InvalidFlag(format!("{}:{}: {what}", origin.display(), line_no + 1));
        let (key, value) = line.split_once('=').ok_or_else(|| bad("expected key = value"))?;
        let key = key.trim().trim_start_matches("--");
        let value = value.trim();
        if key.is_empty() || key.contains(char::is_whitespace) {
            return Err(bad("malformed key"));
        }
        if key == "config" {
            return Err(bad("config files cannot name another config file"));
        }
        out.push(format!("--{key}={value}"));
    }
    Ok(out)
}
