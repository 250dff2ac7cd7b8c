//! Acceptance suite for the command-line tool: file round trips,
//! deterministic outputs and the exit-code contract.

mod common;

use common::*;

struct Outcome {
    pass: bool,
    summary: String,
}

const TARGETS: [&str; 4] = [
    "halfplane",
    "disc",
    "classical-rational",
    "classical-blaschke",
];

fn round_trip(dir: &std::path::Path) -> Outcome {
    let mut failures = Vec::new();
    for seed in 0..100u64 {
        let target = TARGETS[(seed % 4) as usize];
        let n = 2 + (seed / 4) % 5;
        let t = 0.5 + 0.25 * ((seed / 20) % 11) as f64;
        let args = [
            "gen".to_string(),
            "--seed".into(),
            seed.to_string(),
            "--n".into(),
            n.to_string(),
            "--target".into(),
            target.into(),
            "--T".into(),
            t.to_string(),
        ];
        let gen = run(&args);
        let again = run(&args);
        if gen.status.code() != Some(0) || gen.stdout != again.stdout {
            failures.push(format!("gen seed {seed} ({target})"));
            continue;
        }
        let path = dir.join(format!("gen-{seed}.json"));
        std::fs::write(&path, &gen.stdout).unwrap();
        let check = run(["check".as_ref(), path.as_os_str()]);
        if check.status.code() != Some(0) {
            failures.push(format!("check seed {seed} ({target}): {}", stdout(&check)));
        }
    }
    Outcome {
        pass: failures.is_empty(),
        summary: if failures.is_empty() {
            "100 seeds over all targets: gen is reproducible and check exits 0".into()
        } else {
            failures.join("; ")
        },
    }
}

fn portrait_determinism(dir: &std::path::Path) -> Outcome {
    let mut failures = Vec::new();
    for (k, target) in TARGETS.iter().enumerate() {
        let gen = run([
            "gen", "--seed", "5", "--n", "3", "--target", target, "--T", "1.3",
        ]);
        let path = dir.join(format!("p-{k}.json"));
        std::fs::write(&path, &gen.stdout).unwrap();
        let mut images = Vec::new();
        for copy in 0..2 {
            let out = dir.join(format!("p-{k}-{copy}.ppm"));
            let o = run([
                "portrait".as_ref(),
                path.as_os_str(),
                "--width".as_ref(),
                "64".as_ref(),
                "--height".as_ref(),
                "64".as_ref(),
                "--out".as_ref(),
                out.as_os_str(),
            ]);
            if o.status.code() != Some(0) {
                failures.push(format!("{target}: exit {:?}", o.status.code()));
            }
            images.push(std::fs::read(&out).unwrap_or_default());
        }
        if images[0].is_empty() || images[0] != images[1] {
            failures.push(format!("{target}: renders differ"));
        }
    }
    Outcome {
        pass: failures.is_empty(),
        summary: if failures.is_empty() {
            "repeated 64x64 renders are byte-identical for every target".into()
        } else {
            failures.join("; ")
        },
    }
}

fn exit_codes(dir: &std::path::Path) -> Outcome {
    let fixtures: [(&str, &str, i32); 10] = [
        ("valid-disc", VALID_DISC, 0),
        ("valid-halfplane", VALID_HALFPLANE, 0),
        ("valid-rational", RATIONAL, 0),
        ("valid-blaschke", BLASCHKE, 0),
        ("off-lattice-disc", OFF_LATTICE_DISC, 1),
        ("off-lattice-halfplane", OFF_LATTICE_HALFPLANE, 1),
        ("empty-oval", EMPTY_OVAL, 1),
        ("truncated", TRUNCATED, 2),
        ("unknown-target", UNKNOWN_TARGET, 2),
        ("inconsistent-surface", INCONSISTENT_SURFACE, 2),
    ];
    let mut failures = Vec::new();
    for (name, text, want) in fixtures {
        let path = write(dir, &format!("{name}.json"), text);
        for cmd in ["check", "verify"] {
            let got = run([cmd.as_ref(), path.as_os_str()]).status.code();
            if got != Some(want) {
                failures.push(format!("{cmd} {name}: {got:?} (expected {want})"));
            }
        }
    }
    let missing = run(["check", "/nonexistent/divisor.json"]).status.code();
    if missing != Some(2) {
        failures.push(format!("missing file: {missing:?}"));
    }
    Outcome {
        pass: failures.is_empty(),
        summary: if failures.is_empty() {
            format!(
                "check and verify on {} fixtures plus a missing file follow 0/1/2",
                fixtures.len()
            )
        } else {
            failures.join("; ")
        },
    }
}

fn main() {
    let dir = tempfile::tempdir().expect("temporary directory");
    let outcomes = [
        ("gen/check round trip", round_trip(dir.path())),
        ("portrait determinism", portrait_determinism(dir.path())),
        ("exit-code contract", exit_codes(dir.path())),
    ];
    let pass = outcomes.iter().all(|(_, o)| o.pass);
    println!(
        "[{}] CLI determinism and contracts",
        if pass { "PASS" } else { "FAIL" }
    );
    for (name, o) in &outcomes {
        println!(
            "    {name}: {}{}",
            if o.pass { "" } else { "FAILED: " },
            o.summary
        );
    }
    if !pass {
        std::process::exit(1);
    }
}
