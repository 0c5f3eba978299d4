use crate::machine::BLANK_R;
use crate::run::Run;
use graph_core::{intern, vocab, Label};

/// Lays a completed run out as a `rows x cols` matrix of transcript cell
/// labels. Column `j` holds the configuration after `min(j, T)` transitions,
/// so excess columns repeat the halting configuration; rows below a
/// configuration's tape hold the right filler.
///
/// Returns `None` when the run is incomplete, some tape outgrows `rows`, or
/// `cols < T + 1`.
pub fn transcript_grid(run: &Run, rows: usize, cols: usize) -> Option<Vec<Vec<Label>>> {
    if !run.complete || cols < run.configs.len() || run.cells_used() > rows {
        return None;
    }
    let filler = intern(BLANK_R);
    let mut grid = vec![vec![vocab::plain_node(); cols]; rows];
    for j in 0..cols {
        let c = &run.configs[j.min(run.configs.len() - 1)];
        for (i, row) in grid.iter_mut().enumerate() {
            let sym = c.tape.get(i).copied().unwrap_or(filler);
            let head = c.head == i;
            row[j] = vocab::tm_node(sym, head, head.then_some(c.state));
        }
    }
    Some(grid)
}
