use oliverkit::corpus::sweep_group;
use oliverkit::parse::group_from_spec;
use std::time::Instant;

#[test]
#[ignore]
fn profile_groups() {
    for spec in [
        "C44xC45", "C40xC40", "C120xC16", "Dih30xC30", "C30xC60", "Dih30xDih30", "S4xS4",
        "C2xS6", "Dih60xC16", "C48xC40",
    ] {
        let g = group_from_spec(spec, 4000).unwrap();
        let s = Instant::now();
        let rec = sweep_group(&g).unwrap();
        eprintln!(
            "{spec}: {}ms consistent={} fs_ok={}",
            s.elapsed().as_millis(),
            rec.lemma_consistent,
            rec.indicator_sum_ok
        );
    }
}
