//! TikZ for a braid, a grid, its knot diagram and its Legendrian front.

use oddkh::braid::BraidWord;
use oddkh::grid::GridDiagram;
use oddkh::tikz::{render_diagram, DiagramSource, RenderKind};

fn main() -> oddkh::Result<()> {
    let braid: BraidWord = "3,3,-2,3,-2,1,3,-2,1".parse()?;
    print!("{}", render_diagram(DiagramSource::Braid(&braid), RenderKind::Braid)?);
    let grid: GridDiagram = "3,1,0,4,5,2;0,5,2,1,3,4".parse()?;
    for kind in [RenderKind::Grid, RenderKind::Knot, RenderKind::Front] {
        print!("{}", render_diagram(DiagramSource::Grid(&grid), kind)?);
    }
    Ok(())
}
