//! Builds the 30-day benchmark instance and a small custom one, prints a
//! summary of each and writes them as instance files.
//!
//! ```bash
//! cargo run --example generate_instance -- /tmp/instances
//! ```

use depot_roster::io;

fn main() -> depot_roster::Result<()> {
    let dir = std::env::args().nth(1).map(Into::into).unwrap_or_else(std::env::temp_dir);
    std::fs::create_dir_all(&dir).map_err(|e| depot_roster::Error::Io { path: dir.clone(), source: e })?;

    let bench = io::benchmark_instance();
    let small = io::generate_instance(7, 5, 4, 150.0, 0.2)?;

    for (name, inst) in [("benchmark", &bench), ("small", &small)] {
        let total: i64 = inst.demand.iter().flatten().sum();
        let peak = inst.demand.iter().flatten().max().copied().unwrap_or(0);
        println!(
            "{name}: {} days, {} regulars, cap {} days each, {total} parcels, busiest hour {peak}",
            inst.days,
            inst.regular_pool,
            inst.max_working_days()
        );
        let path = dir.join(format!("{name}.toml"));
        io::write_instance(inst, &path)?;
        println!("  wrote {}", path.display());
    }

    println!("\nhourly profile (fraction of peak):");
    for (h, f) in io::DEMAND_PROFILE.iter().enumerate() {
        println!("  {h:02}:00 {:<40} {f:.2}", "#".repeat((f * 40.0).round() as usize));
    }
    Ok(())
}
