use lirdec::*;
use lirdec::oracle::{search_coloring, SearchConfig};
use std::time::Instant;

fn main() {
    let g = gen_split_graph(9, &[1,1,0,0,0,0,0,0,0], &[1,1], 7).unwrap();
    for seed in 1..=10u64 {
        let t = Instant::now();
        let cfg = SearchConfig { node_budget: Some(20_000_000), value_seed: Some(seed), ..Default::default() };
        let r = search_coloring(&g, 2, cfg);
        println!("seed {seed}: found={} nodes={} exhausted={} in {:?}", r.colors.is_some(), r.nodes, r.exhausted, t.elapsed());
    }
}
