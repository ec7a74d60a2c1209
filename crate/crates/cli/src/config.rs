//! Splices a TOML config file into the argument list.
//!
//! Keys name flags without the leading dashes (`grid-n` or `grid_n`). The
//! pairs are inserted right after the subcommand so that flags given on the
//! command line come later and override them.

use std::ffi::OsString;

use anyhow::{bail, Context, Result};

fn config_path(args: &[OsString]) -> Result<Option<OsString>> {
    let mut it = args.iter().skip(1);
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            let path = it.next().context("--config needs a path")?;
            return Ok(Some(path.clone()));
        }
        if let Some(rest) = s.strip_prefix("--config=") {
            return Ok(Some(rest.into()));
        }
    }
    Ok(None)
}

fn to_tokens(table: &toml::Table) -> Result<Vec<OsString>> {
    let mut out = Vec::new();
    for (key, value) in table {
        let flag = format!("--{}", key.replace('_', "-"));
        if flag == "--config" {
            bail!("config files cannot nest");
        }
        match value {
            toml::Value::Boolean(true) => out.push(flag.into()),
            toml::Value::Boolean(false) => {}
            toml::Value::String(s) => {
                out.push(format!("{flag}={s}").into());
            }
            toml::Value::Integer(i) => out.push(format!("{flag}={i}").into()),
            toml::Value::Float(f) => out.push(format!("{flag}={f:e}").into()),
            other => bail!("config key `{key}` has unsupported value {other}"),
        }
    }
    Ok(out)
}

pub fn expand(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let Some(path) = config_path(&args)? else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path)
        .with_context(|| format!("reading config {}", path.to_string_lossy()))?;
    let table: toml::Table = text
        .parse()
        .with_context(|| format!("parsing config {}", path.to_string_lossy()))?;
    let tokens = to_tokens(&table)?;
    let at = args
        .iter()
        .skip(1)
        .position(|a| !a.to_string_lossy().starts_with('-'))
        .map(|i| i + 2)
        .unwrap_or(args.len());
    let mut out = args[..at].to_vec();
    out.extend(tokens);
    out.extend_from_slice(&args[at..]);
    Ok(out)
}
