//! TOML description of a mode system: the eigenfrequencies and the two
//! Bogoliubov rows, with complex entries written as `[re, im]` pairs.
//!
//! ```toml
//! omegas = [1.0, 2.0]
//!
//! [[rows]]
//! S = [[0.7071067811865476, 0.0], [0.75, 0.0]]
//! T = [[0.0, 0.0], [-0.25, 0.0]]
//!
//! [[rows]]
//! S = [[0.7071067811865476, 0.0], [-0.75, 0.0]]
//! T = [[0.0, 0.0], [0.25, 0.0]]
//! ```

use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use bosent::{ModeSpectrum, TransformRows};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemFile {
    omegas: Vec<f64>,
    rows: Vec<RowEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RowEntry {
    #[serde(rename = "S")]
    s: Vec<[f64; 2]>,
    #[serde(rename = "T")]
    t: Vec<[f64; 2]>,
}

/// Any failure here (unreadable file, TOML syntax, wrong shape, invalid
/// frequencies) is an input error; the caller reports it and exits 1.
pub fn load(path: &Path) -> Result<(ModeSpectrum, TransformRows), String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let file: SystemFile =
        toml::from_str(&text).map_err(|e| format!("invalid system file: {e}"))?;

    if file.rows.len() != 2 {
        return Err(format!(
            "expected exactly 2 mode rows, found {}",
            file.rows.len()
        ));
    }
    let n = file.omegas.len();
    for (i, row) in file.rows.iter().enumerate() {
        if row.s.len() != n || row.t.len() != n {
            return Err(format!(
                "row {i} has {} S and {} T entries but there are {n} frequencies",
                row.s.len(),
                row.t.len()
            ));
        }
    }

    let complexify = |v: &[[f64; 2]]| {
        v.iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect::<Vec<_>>()
    };
    let spectrum =
        ModeSpectrum::new(file.omegas).map_err(|e| format!("invalid system file: {e}"))?;
    let rows = TransformRows::new(
        complexify(&file.rows[0].s),
        complexify(&file.rows[0].t),
        complexify(&file.rows[1].s),
        complexify(&file.rows[1].t),
    )
    .map_err(|e| format!("invalid system file: {e}"))?;
    Ok((spectrum, rows))
}
