use oliverkit::corpus::{standard_corpus, sweep_group};
use std::time::Instant;

fn rss_mb() -> u64 {
    let s = std::fs::read_to_string("/proc/self/statm").unwrap_or_default();
    let pages: u64 = s
        .split_whitespace()
        .nth(1)
        .and_then(|x| x.parse().ok())
        .unwrap_or(0);
    pages * 4096 / (1024 * 1024)
}

#[test]
#[ignore]
fn full_sweep_probe() {
    let entries = standard_corpus(2000);
    eprintln!("corpus: {} entries", entries.len());
    let s = Instant::now();
    let mut bad: Vec<String> = Vec::new();
    let mut done = 0usize;
    let mut last_rss = rss_mb();
    for (i, e) in entries.iter().enumerate() {
        let g = match e.build(2000) {
            Ok(g) => g,
            Err(_) => continue,
        };
        let t = Instant::now();
        let rec = sweep_group(&g).unwrap();
        let ms = t.elapsed().as_millis();
        let rss = rss_mb();
        if ms > 300 || rss > last_rss + 150 || i % 500 == 0 {
            eprintln!(
                "[{i}] {} order={} ms={ms} rss={rss}MB total={:.0}s",
                e.name,
                e.order,
                s.elapsed().as_secs_f64()
            );
            last_rss = rss;
        }
        if !rec.lemma_consistent || !rec.indicator_sum_ok {
            bad.push(e.name.clone());
        }
        done += 1;
    }
    eprintln!(
        "sweep: {:.1}s, {done} records, bad={bad:?}",
        s.elapsed().as_secs_f64()
    );
}
