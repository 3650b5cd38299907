use resurgentia::borel::SumConfig;
use resurgentia::verify::run_all;

fn main() {
    let results = run_all(&SumConfig::default());
    let mut failed = 0;
    for r in &results {
        let tag = if r.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {} [{tag}] {} ({:.2}s): {}",
            r.id, r.name, r.seconds, r.detail
        );
        failed += usize::from(!r.passed);
    }
    println!(
        "{} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
