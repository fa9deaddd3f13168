//! Development helper: searches witnesses for every existence claim that
//! has no bundled structure yet, and prints a JSON witnesses block per
//! entry. Run manually with `cargo test --test dev_freeze -- --ignored --nocapture`.

use std::time::Instant;

use nijrank::catalog::{load_catalog, RankStatus};
use nijrank::survey::{derive_seed, search_rank, SearchMode};

#[test]
#[ignore]
fn freeze_witnesses() {
    let t0 = Instant::now();
    for (entry_no, entry) in load_catalog().iter().enumerate() {
        let g = entry.algebra();
        let m = entry.half_dim();
        let mut lines = Vec::new();
        for rank in 0..=m {
            if entry.expected(rank) != RankStatus::Exists {
                continue;
            }
            if entry.structures().iter().any(|s| s.expected_rank == rank) {
                continue;
            }
            let seed = derive_seed(0xF0_0D, (entry_no * 8 + rank) as u64);
            let t = Instant::now();
            let out = search_rank(g, rank, 1000, seed, SearchMode::Mixed, 5).unwrap();
            match out.witness {
                Some(cf) => {
                    let rows: Vec<String> = cf
                        .rows()
                        .to_string_rows()
                        .iter()
                        .map(|r| {
                            let cells: Vec<String> =
                                r.iter().map(|c| format!("\"{c}\"")).collect();
                            format!("[{}]", cells.join(","))
                        })
                        .collect();
                    lines.push(format!(
                        "        \"{rank}\": {{ \"coframe\": [{}] }}",
                        rows.join(",")
                    ));
                    eprintln!(
                        "{} rank {rank}: found at attempt {} ({:?})",
                        entry.name(),
                        out.attempts_used,
                        t.elapsed()
                    );
                }
                None => {
                    eprintln!("{} rank {rank}: NOT FOUND in 1000 ({:?})", entry.name(), t.elapsed());
                }
            }
        }
        if !lines.is_empty() {
            println!("\"{}\": {{\n{}\n}}", entry.name(), lines.join(",\n"));
        }
    }
    eprintln!("total: {:?}", t0.elapsed());
}
