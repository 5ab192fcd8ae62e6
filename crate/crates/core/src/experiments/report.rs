//! Config-driven suite runner writing CSV tables and JSON summaries.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::functionals::{analyze, FunctionalOptions};
use crate::io::{write_json, PolygonSpec, TensionSpec};

use super::suites::{example61, example62, fuglede, fuzz};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "suite", rename_all = "lowercase")]
pub enum ReportConfig {
    Compute {
        tension: TensionSpec,
        polygon: PolygonSpec,
    },
    Example61 {
        theta_min: f64,
        theta_max: f64,
        steps: usize,
        teeth: usize,
    },
    Example62 {
        p: f64,
        r_min: f64,
        r_max: f64,
        steps: usize,
    },
    Fuglede {
        a11: f64,
        a22: f64,
        modes: Vec<usize>,
        eps_list: Vec<f64>,
        nodes: usize,
    },
    Fuzz {
        seed: u64,
        count: usize,
    },
}

/// `dir/stem.summary.json` next to `out`.
pub fn summary_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("report");
    out.with_file_name(format!("{stem}.summary.json"))
}

/// Run one suite and write its outputs; returns the paths written.
pub fn run_report(config: &ReportConfig, out: &Path) -> Result<Vec<PathBuf>> {
    match config {
        ReportConfig::Compute { tension, polygon } => {
            let t = tension.build()?;
            let p = polygon.build()?;
            let report = analyze(&p, &t, &FunctionalOptions::default())?;
            write_json(out, &report)?;
            Ok(vec![out.to_path_buf()])
        }
        ReportConfig::Example61 {
            theta_min,
            theta_max,
            steps,
            teeth,
        } => {
            let r = example61(*theta_min, *theta_max, *steps, *teeth)?;
            r.table().write(out)?;
            let s = summary_path(out);
            write_json(&s, &r)?;
            Ok(vec![out.to_path_buf(), s])
        }
        ReportConfig::Example62 {
            p,
            r_min,
            r_max,
            steps,
        } => {
            let r = example62(*p, *r_min, *r_max, *steps)?;
            r.table().write(out)?;
            let s = summary_path(out);
            write_json(&s, &r)?;
            Ok(vec![out.to_path_buf(), s])
        }
        ReportConfig::Fuglede {
            a11,
            a22,
            modes,
            eps_list,
            nodes,
        } => {
            let r = fuglede(*a11, *a22, modes, eps_list, *nodes)?;
            r.table().write(out)?;
            let s = summary_path(out);
            write_json(&s, &r)?;
            Ok(vec![out.to_path_buf(), s])
        }
        ReportConfig::Fuzz { seed, count } => {
            let r = fuzz(*seed, *count)?;
            write_json(out, &r)?;
            let csv = out.with_extension("csv");
            r.table().write(&csv)?;
            Ok(vec![out.to_path_buf(), csv])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parses() {
        let c: ReportConfig =
            serde_json::from_str(r#"{"suite":"fuzz","seed":42,"count":3}"#).unwrap();
        assert_eq!(c, ReportConfig::Fuzz { seed: 42, count: 3 });
        let c: ReportConfig = serde_json::from_str(
            r#"{"suite":"compute","tension":{"kind":"euclidean"},"polygon":{"vertices":[[0,0],[1,0],[0,1]]}}"#,
        )
        .unwrap();
        assert!(matches!(c, ReportConfig::Compute { .. }));
    }

    #[test]
    fn summary_path_sits_next_to_output() {
        assert_eq!(
            summary_path(Path::new("/tmp/x/e61.csv")),
            PathBuf::from("/tmp/x/e61.summary.json")
        );
    }
}
