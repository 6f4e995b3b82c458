use std::sync::Arc;
use wirecx::{enumerate, LinkArrangement, SearchConfig};

fn main() {
    let jobs: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let arr = Arc::new(LinkArrangement::builtin(&["mk16"]).unwrap());
    let cfg = SearchConfig { jobs, ..Default::default() };
    let e = enumerate(arr, &cfg).unwrap();
    print!("{}", e.stats.to_key_values());
    let mult: Vec<_> = e.classes.iter().map(|c| c.multiplicity).collect();
    println!("multiplicities={mult:?}");
}
