pub mod nodal;
pub mod spectrum;
pub mod sweep;
pub mod table1;
pub mod table2;

use serde::Serialize;
use serde_json::{json, Value};

use crate::args::GlobalArgs;
use crate::output::Table;
use crate::CliError;

/// Version, command and the full configuration, defaults included.
pub fn base_meta(table: &mut Table, command: &str, global: &GlobalArgs, local: &impl Serialize) {
    table.meta("version", json!(env!("CARGO_PKG_VERSION")));
    table.meta("command", json!(command));
    table.meta(
        "global",
        serde_json::to_value(global).unwrap_or(Value::Null),
    );
    table.meta(
        "options",
        serde_json::to_value(local).unwrap_or(Value::Null),
    );
}

pub fn reject_axes(global: &GlobalArgs, command: &str) -> Result<(), CliError> {
    if global.axes.is_some() {
        return Err(CliError::Usage(format!("{command} does not take --axes")));
    }
    Ok(())
}

pub fn check_eps(eps: &[f64]) -> Result<(), CliError> {
    if eps.is_empty() {
        return Err(CliError::Usage("empty eps list".into()));
    }
    if let Some(bad) = eps.iter().find(|e| !(e.is_finite() && **e > 0.0)) {
        return Err(CliError::Usage(format!(
            "eps = {bad}: slopes divide by eps, so every eps must be > 0"
        )));
    }
    Ok(())
}

pub fn check_grid(global: &GlobalArgs) -> Result<(), CliError> {
    if global.grid < 16 {
        return Err(CliError::Usage(format!(
            "--grid {} is below the minimum 16",
            global.grid
        )));
    }
    Ok(())
}
