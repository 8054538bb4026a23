//! Writes the bundled synthetic demo corpus.
//!
//! cargo run -p catbench --example generate_demo -- data/demo_corpus.csv

use std::fs::File;
use std::io::BufWriter;

use catbench::synthetic::{generate, SyntheticConfig};
use catbench::write_corpus;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "data/demo_corpus.csv".into());
    let demo = generate(&SyntheticConfig::default())?;
    write_corpus(&demo.corpus, BufWriter::new(File::create(&path)?))?;
    eprintln!(
        "wrote {} records in {} categories to {path} (reference {:?})",
        demo.corpus.len(),
        demo.corpus.category_count(),
        demo.reference
    );
    Ok(())
}
