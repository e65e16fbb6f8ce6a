use kz_core::acceptance::{criterion, Tier, CRITERIA};
use kz_core::report::Status;

#[test]
fn acceptance_suite() {
    let mut failed = Vec::new();
    for (i, title) in CRITERIA.iter().enumerate() {
        let rep = criterion(i + 1, Tier::Full);
        for e in &rep.entries {
            let witness = e.witness.as_deref().map(|w| format!(" [{w}]")).unwrap_or_default();
            eprintln!(
                "    {} {} ({:.2?}){}",
                e.status,
                e.name,
                e.elapsed,
                if e.status == Status::Pass { String::new() } else { witness }
            );
        }
        let ok = rep.all_passed();
        println!("{} criterion {}: {title} ({} checks)", if ok { "PASS" } else { "FAIL" }, i + 1, rep.entries.len());
        if !ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
