//! The trie of canonical subwords of a word and its block factorization.

use subwords::trie::{block_factorization, build_trie, verify_structure};
use subwords::{Base, Word};

fn main() -> subwords::Result<()> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "2110022".into());
    let word = Word::parse(Base::new(3)?, &arg)?;
    let trie = build_trie(&word)?;
    let blocks = block_factorization(&word)?;
    println!("word {word}: {} nodes", trie.node_count());
    println!("nodes per level: {:?}", trie.level_counts());
    println!("blocks (digit, length): {:?}", blocks.blocks());
    for l in 0..blocks.block_count() {
        println!("  l = {l}: alphabet {:?}, subtree root label {:?}", blocks.alph(l), blocks.subtree_root_label(l));
    }
    println!("structure verified: {}", verify_structure(&trie, &blocks)?);
    if trie.len() < 40 {
        print!("{}", trie.to_dot());
    }
    Ok(())
}
