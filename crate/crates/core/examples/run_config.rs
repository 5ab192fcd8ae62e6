//! Drive any suite from a JSON config, e.g.
//! `{"suite": "example61", "theta_min": 1e-4, "theta_max": 1e-2, "steps": 8, "teeth": 32}`.
//!
//! `cargo run --example run_config -- config.json out.csv`

use std::path::Path;

use wulffkit::experiments::{run_report, ReportConfig};
use wulffkit::io::read_json;

fn main() -> wulffkit::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (config, out) = match args.as_slice() {
        [c, o] => (read_json::<ReportConfig>(Path::new(c))?, o.clone()),
        _ => {
            let c = serde_json::from_str(r#"{"suite": "fuzz", "seed": 7, "count": 16}"#)
                .expect("valid config");
            (
                c,
                std::env::temp_dir()
                    .join("wulffkit_fuzz.json")
                    .display()
                    .to_string(),
            )
        }
    };
    for path in run_report(&config, Path::new(&out))? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
