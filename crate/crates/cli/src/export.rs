//! Frame packets, CSV rendering and the `evolve` command.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use dynosc_core::states::sample_frame_with;
use dynosc_core::{classical_moments, Grid, MomentSet, MomentumDenominator, Representation, StateSpec};
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::{OutputKind, RunConfig, SCHEMA_VERSION};
use crate::error::{CliError, CliResult};

/// One exported frame: named columns of equal length plus the closed-form
/// moments at the frame time.
#[derive(Debug, Clone, PartialEq)]
pub struct FramePacket {
    pub frame_index: usize,
    pub t: f64,
    pub representation: Representation,
    pub columns: Vec<(&'static str, Vec<f64>)>,
    pub moments: MomentSet,
}

impl FramePacket {
    pub fn sample(
        spec: &StateSpec,
        representation: Representation,
        grid: Grid,
        frame_index: usize,
        t: f64,
        denom: MomentumDenominator,
    ) -> CliResult<Self> {
        let frame = sample_frame_with(spec, representation, grid, t, denom)?;
        let names = match representation {
            Representation::Position => ["x", "density", "re_psi", "im_psi"],
            Representation::Momentum => ["p", "density", "re_a", "im_a"],
        };
        let amps = frame.amplitudes();
        let columns = vec![
            (names[0], grid.to_vec()),
            (names[1], frame.densities()),
            (names[2], amps.iter().map(|a| a.re).collect()),
            (names[3], amps.iter().map(|a| a.im).collect()),
        ];
        Ok(FramePacket { frame_index, t, representation, columns, moments: classical_moments(&spec.params, spec.n, t) })
    }

    pub fn to_csv(&self) -> String {
        let rows = self.columns.first().map_or(0, |c| c.1.len());
        let mut out = String::with_capacity(80 * (rows + 1));
        let header: Vec<&str> = self.columns.iter().map(|c| c.0).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for i in 0..rows {
            for (j, (_, col)) in self.columns.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                push_float(&mut out, col[i]);
            }
            out.push('\n');
        }
        out
    }
}

/// Shortest decimal string that parses back to the same `f64`.
pub fn push_float(out: &mut String, v: f64) {
    write!(out, "{v:?}").expect("writing to a String cannot fail");
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ManifestEntry {
    pub index: usize,
    pub t: f64,
    pub file: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FileEntry {
    pub file: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub config_echo: RunConfig,
    pub frames: Vec<ManifestEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moments: Option<FileEntry>,
}

pub const MANIFEST_FILE: &str = "manifest.json";
pub const MOMENTS_FILE: &str = "moments.csv";

pub fn frame_file_name(representation: Representation, index: usize, frames: usize) -> String {
    let width = frames.to_string().len().max(4);
    let stem = match representation {
        Representation::Position => "position",
        Representation::Momentum => "momentum",
    };
    format!("{stem}_{index:0width$}.csv")
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub const MOMENT_COLUMNS: [&str; 7] = ["t", "mean_x", "mean_p", "var_x", "var_p", "product", "energy"];

pub fn moment_row(out: &mut String, t: f64, m: &MomentSet, extra: &[f64]) {
    push_float(out, t);
    for v in [m.mean_x, m.mean_p, m.var_x, m.var_p, m.product, m.energy].iter().chain(extra) {
        out.push(',');
        push_float(out, *v);
    }
    out.push('\n');
}

fn write_file(dir: &Path, name: &str, contents: &str) -> CliResult<String> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| CliError::io(path, e))?;
    Ok(sha256_hex(contents.as_bytes()))
}

/// Summary of an `evolve` run.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolveSummary {
    pub dir: PathBuf,
    pub files_written: usize,
}

/// Renders every configured frame in parallel, then writes them in frame
/// order followed by the moments table and the manifest.
pub fn evolve(config: &RunConfig, dir: &Path, denom: MomentumDenominator) -> CliResult<EvolveSummary> {
    let grid = config.position_grid()?;
    let spec = config.spec();
    let times = config.times();
    let frames = times.len();
    let mut reps = Vec::new();
    if config.wants_position() {
        reps.push(Representation::Position);
    }
    if config.wants(OutputKind::MomentumDensity) {
        reps.push(Representation::Momentum);
    }

    let jobs: Vec<(usize, f64, Representation)> =
        times.iter().enumerate().flat_map(|(i, &t)| reps.iter().map(move |&r| (i + 1, t, r))).collect();
    let rendered: Vec<(usize, f64, String, String)> = jobs
        .par_iter()
        .map(|&(index, t, rep)| {
            let packet = FramePacket::sample(&spec, rep, grid, index, t, denom)?;
            Ok((index, t, frame_file_name(rep, index, frames), packet.to_csv()))
        })
        .collect::<CliResult<_>>()?;

    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut entries = Vec::with_capacity(rendered.len());
    for (index, t, file, csv) in rendered {
        let sha256 = write_file(dir, &file, &csv)?;
        entries.push(ManifestEntry { index, t, file, sha256 });
    }

    let moments = if config.wants(OutputKind::Moments) {
        let mut table = MOMENT_COLUMNS.join(",");
        table.push('\n');
        for &t in &times {
            moment_row(&mut table, t, &classical_moments(&spec.params, spec.n, t), &[]);
        }
        let sha256 = write_file(dir, MOMENTS_FILE, &table)?;
        Some(FileEntry { file: MOMENTS_FILE.into(), sha256 })
    } else {
        None
    };

    let files_written = entries.len() + usize::from(moments.is_some()) + 1;
    let manifest = Manifest { schema_version: SCHEMA_VERSION, config_echo: config.clone(), frames: entries, moments };
    let mut json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    json.push('\n');
    write_file(dir, MANIFEST_FILE, &json)?;
    Ok(EvolveSummary { dir: dir.to_path_buf(), files_written })
}
