//! Acceptance suite: runs the bundled verification corpus criterion by
//! criterion and prints one pass/fail line per criterion. Exact arithmetic
//! throughout; every threshold is pinned in the fixtures themselves.

use isofib_core::verify::fixtures;

fn run_criterion(criterion: u32, title: &str) {
    let mut failures = Vec::new();
    let mut count = 0;
    for f in fixtures().into_iter().filter(|f| f.criterion == criterion) {
        count += 1;
        if let Err(e) = (f.run)() {
            failures.push(format!("{}: {}", f.name, e));
        }
    }
    assert!(count > 0, "criterion {} has no fixtures", criterion);
    if failures.is_empty() {
        println!("[acceptance] criterion {} ({}): PASS ({} fixtures)", criterion, title, count);
    } else {
        println!("[acceptance] criterion {} ({}): FAIL", criterion, title);
        for f in &failures {
            println!("  - {}", f);
        }
        panic!("criterion {} failed: {:?}", criterion, failures);
    }
}

#[test]
fn criterion_1_symbolic_isogeny_suite() {
    run_criterion(1, "symbolic isogeny suite");
}

#[test]
fn criterion_2_generic_family() {
    run_criterion(2, "generic family tables and loci swap");
}

#[test]
fn criterion_3_specialization_tables() {
    run_criterion(3, "specialization fiber tables");
}

#[test]
fn criterion_4_even_eight_reports() {
    run_criterion(4, "branch and even-eight reports");
}

#[test]
fn criterion_5_condition_14() {
    run_criterion(5, "rational-point certification");
}

#[test]
fn criterion_6_rosenhain_kummer_moduli() {
    run_criterion(6, "Rosenhain/Kummer moduli and duality");
}

#[test]
fn criterion_7_six_lines_geometry() {
    run_criterion(7, "six-lines geometry");
}

#[test]
fn criterion_8_nine_tuple_moduli() {
    run_criterion(8, "nine-tuple moduli and duality report");
}

#[test]
fn criterion_9_engine_properties() {
    run_criterion(9, "randomized engine properties");
}
