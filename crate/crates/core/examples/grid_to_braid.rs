//! Braids from a grid diagram in each of the four directions.

use oddkh::grid::{Direction, GridDiagram};

fn main() -> oddkh::Result<()> {
    let figure_eight: GridDiagram = "3,1,0,4,5,2;0,5,2,1,3,4".parse()?;
    for direction in [Direction::Right, Direction::Left, Direction::Up, Direction::Down] {
        let b = figure_eight.to_braid(direction);
        println!("{direction:?}: [{b}] sl = {}", b.self_linking());
    }
    Ok(())
}
