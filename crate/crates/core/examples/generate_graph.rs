// Sample a power-law reply-graph and write it as an edge list.

use std::error::Error;

use censor_detect::graph::{degree_sequences, parse_edge_list, write_edge_list};
use censor_detect::netgen::{generate, GenerationConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let generated = generate(&GenerationConfig::new(200, 2.0, 7)?)?;
    let g = &generated.graph;
    let (in_deg, out_deg) = degree_sequences(g);
    println!(
        "{} nodes, {} edges, max in-degree {}, max out-degree {}, {} residual self-loops dropped",
        g.node_count(),
        g.edge_count(),
        in_deg.iter().max().unwrap_or(&0),
        out_deg.iter().max().unwrap_or(&0),
        generated.residual_self_loops_deleted
    );

    let text = write_edge_list(g);
    println!("{}", text.lines().take(4).collect::<Vec<_>>().join("\n"));
    assert_eq!(&parse_edge_list(&text, "example")?, g);
    print!("{}", generated.metadata());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
