use super::{RelError, Relation};
use crate::finset::{coproduct, FiniteSet};

/// A 2×2 matrix of relations describing a relation `A+B -|> A+B`.
///
/// Entry `[i][j]` is the component from summand `j` to summand `i`, so
/// `[0][1]` is `B -|> A` and `[1][0]` is `A -|> B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockRelation {
    blocks: [[Relation; 2]; 2],
}

impl BlockRelation {
    pub fn new(blocks: [[Relation; 2]; 2]) -> Result<Self, RelError> {
        let a = blocks[0][0].source().clone();
        let b = blocks[1][1].source().clone();
        let objects = [&a, &b];
        for (i, row) in blocks.iter().enumerate() {
            for (j, block) in row.iter().enumerate() {
                if block.source() != objects[j] || block.target() != objects[i] {
                    return Err(RelError::ShapeMismatch(format!(
                        "block [{i}][{j}] is {} -|> {}, expected {} -|> {}",
                        block.source(),
                        block.target(),
                        objects[j],
                        objects[i]
                    )));
                }
            }
        }
        Ok(Self { blocks })
    }

    pub fn blocks(&self) -> &[[Relation; 2]; 2] {
        &self.blocks
    }

    pub fn left_object(&self) -> &FiniteSet {
        self.blocks[0][0].source()
    }

    pub fn right_object(&self) -> &FiniteSet {
        self.blocks[1][1].source()
    }
}

/// The relation on the tagged coproduct `A+B` whose restriction to each pair
/// of summands is the corresponding block.
pub fn assemble_block(e: &BlockRelation) -> Relation {
    let (a, b) = (e.left_object(), e.right_object());
    let sum = coproduct(a, b);
    // coproduct indices: 0..|A| are the left summand, then the right summand
    let locate = |x: usize| if x < a.len() { (0, x) } else { (1, x - a.len()) };
    Relation::from_fn(&sum.set, &sum.set, |x, y| {
        let (j, xi) = locate(x);
        let (i, yi) = locate(y);
        e.blocks[i][j].get(xi, yi)
    })
}
