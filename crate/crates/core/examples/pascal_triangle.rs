//! The Pascal-like triangle of binomial coefficients of words, rendered as a
//! graymap, and its row profile.

use subwords::pascal::{compressed_profile, render_triangle, RenderMode, TriangleView};
use subwords::Base;

fn main() -> subwords::Result<()> {
    let base = Base::new(2)?;
    let view = TriangleView::new(base, 16);
    for m in 0..view.rows() {
        let row: Vec<String> = (0..=m).map(|n| view.get(m, n).to_string()).collect();
        println!("{}", row.join(" "));
    }
    println!("positive entries per row: {:?}", compressed_profile(base, 16)?);

    let image = render_triangle(Base::new(3)?, 243, RenderMode::ClippedGray { cap: 3 })?;
    let path = std::env::temp_dir().join("triangle_b3.pgm");
    std::fs::write(&path, image).map_err(|e| subwords::Error::Parse(e.to_string()))?;
    println!("wrote {}", path.display());
    Ok(())
}
