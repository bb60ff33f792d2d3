//! Worked examples shipped with the crate as JSON, parsed into typed records.

use serde::Deserialize;

use crate::polyomino::{FillingFile, GenPoly, Pos, Rect, ShapeFile};
use crate::tableau::{Cell, IncreasingTableau, SetValuedTableau, SkewIncreasingTableau};

pub const HECKE_JSON: &str = include_str!("../fixtures/hecke.json");
pub const JDT_JSON: &str = include_str!("../fixtures/jdt.json");
pub const ROW_MOVE_JSON: &str = include_str!("../fixtures/row_move.json");
pub const ARBITRARY_ROW_MOVES_JSON: &str = include_str!("../fixtures/arbitrary_row_moves.json");
pub const MOON_FAMILY_JSON: &str = include_str!("../fixtures/moon_family.json");
pub const ALMOST_MOONS_JSON: &str = include_str!("../fixtures/almost_moons.json");
pub const SHAPES_JSON: &str = include_str!("../fixtures/shapes.json");
pub const LINKED_JSON: &str = include_str!("../fixtures/linked.json");

#[derive(Debug, Clone, Deserialize)]
pub struct InsertionCase {
    pub tableau: IncreasingTableau,
    pub letter: u32,
    pub result: IncreasingTableau,
    pub corner: Cell,
    pub alpha: u8,
}

#[derive(Debug, Clone, Deserialize)]
pub struct WordPairCase {
    pub word: String,
    pub p: IncreasingTableau,
    pub q: SetValuedTableau,
}

#[derive(Debug, Clone, Deserialize)]
pub struct HeckeFixtures {
    pub insertions: Vec<InsertionCase>,
    pub word_pairs: Vec<WordPairCase>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct SlideCase {
    pub tableau: SkewIncreasingTableau,
    pub corners: Vec<Cell>,
    pub result: SkewIncreasingTableau,
}

#[derive(Debug, Clone, Deserialize)]
pub struct PrimeCase {
    pub p: IncreasingTableau,
    pub p_prime: IncreasingTableau,
}

#[derive(Debug, Clone, Deserialize)]
pub struct JdtFixtures {
    pub forward: SlideCase,
    pub reverse: SlideCase,
    pub prime: PrimeCase,
}

#[derive(Debug, Clone, Deserialize)]
pub struct RowMoveFixture {
    pub source: FillingFile,
    pub target: FillingFile,
    pub rectangle: Rect,
    pub source_word: String,
    pub target_word: String,
    pub cell_counts: [usize; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub struct StatPair {
    pub ne: u32,
    pub se: u32,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ArbitraryRowCase {
    pub name: String,
    pub source: FillingFile,
    pub moved_row_from: u32,
    pub moved_row_to: u32,
    pub rectangle: Rect,
    pub target: FillingFile,
    pub source_stats: StatPair,
    pub target_stats: StatPair,
    pub cell_counts: [usize; 2],
}

#[derive(Debug, Clone, Deserialize)]
pub struct ArbitraryRowMoves {
    pub cases: Vec<ArbitraryRowCase>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct NamedShape {
    pub name: String,
    pub shape: ShapeFile,
    pub cell_count: usize,
}

#[derive(Debug, Clone, Deserialize)]
pub struct MoonFamily {
    pub shapes: Vec<NamedShape>,
    pub printed: GenPoly,
}

#[derive(Debug, Clone, Deserialize)]
pub struct AlmostMoonCase {
    pub name: String,
    pub shape: ShapeFile,
    pub cell_count: usize,
    pub printed: GenPoly,
}

#[derive(Debug, Clone, Deserialize)]
pub struct AlmostMoons {
    pub shapes: Vec<AlmostMoonCase>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ShapeCase {
    pub shape: ShapeFile,
    pub cell_count: usize,
}

#[derive(Debug, Clone, Deserialize)]
pub struct CountCase {
    pub ne: u32,
    pub se: u32,
    pub count: u64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct RowSumCase {
    pub shape: ShapeFile,
    pub row_sums: Vec<u32>,
    pub n: u32,
    pub counts: Vec<CountCase>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Shapes {
    pub moon: ShapeCase,
    pub stack: ShapeCase,
    pub move_chain: Vec<Vec<u32>>,
    pub row_sums: RowSumCase,
}

#[derive(Debug, Clone, Deserialize)]
pub struct LinkedExample {
    pub partition: String,
    pub x_cells: Vec<Pos>,
    pub transpose_image: String,
    pub transpose_x_cells: Vec<Pos>,
    /// Partition (parts separated by commas, empty string for the empty partition) and marked row.
    pub border: Vec<(String, Option<u32>)>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct LinkedWitness {
    pub partition: String,
    pub row_moves: String,
    pub transpose: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct StandardRepCase {
    pub partition: String,
    pub arcs: Vec<(u32, u32)>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct LinkedFixtures {
    pub example: LinkedExample,
    pub witness: LinkedWitness,
    pub standard_rep: StandardRepCase,
}

fn parse<T: for<'de> Deserialize<'de>>(name: &str, text: &str) -> T {
    serde_json::from_str(text).unwrap_or_else(|e| panic!("fixture {name} does not parse: {e}"))
}

pub fn hecke() -> HeckeFixtures {
    parse("hecke.json", HECKE_JSON)
}

pub fn jdt() -> JdtFixtures {
    parse("jdt.json", JDT_JSON)
}

pub fn row_move() -> RowMoveFixture {
    parse("row_move.json", ROW_MOVE_JSON)
}

pub fn arbitrary_row_moves() -> ArbitraryRowMoves {
    parse("arbitrary_row_moves.json", ARBITRARY_ROW_MOVES_JSON)
}

pub fn moon_family() -> MoonFamily {
    parse("moon_family.json", MOON_FAMILY_JSON)
}

pub fn almost_moons() -> AlmostMoons {
    parse("almost_moons.json", ALMOST_MOONS_JSON)
}

pub fn shapes() -> Shapes {
    parse("shapes.json", SHAPES_JSON)
}

pub fn linked() -> LinkedFixtures {
    parse("linked.json", LINKED_JSON)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_parses_with_recorded_cell_counts() {
        assert_eq!(hecke().insertions.len(), 2);
        assert_eq!(jdt().forward.corners.len(), 2);
        let rm = row_move();
        assert_eq!(rm.source.shape.to_polyomino().unwrap().len(), rm.cell_counts[0]);
        assert_eq!(rm.target.shape.to_polyomino().unwrap().len(), rm.cell_counts[1]);
        for c in arbitrary_row_moves().cases {
            assert_eq!(c.source.to_filling().unwrap().shape.len(), c.cell_counts[0], "{}", c.name);
            assert_eq!(c.target.to_filling().unwrap().shape.len(), c.cell_counts[1], "{}", c.name);
        }
        let fam = moon_family();
        assert_eq!(fam.printed.total(), 876);
        for s in &fam.shapes {
            assert_eq!(s.shape.to_polyomino().unwrap().len(), s.cell_count);
        }
        for a in almost_moons().shapes {
            assert_eq!(a.shape.to_polyomino().unwrap().len(), a.cell_count);
            assert_eq!(a.printed.total(), 13440);
        }
        let sh = shapes();
        assert_eq!(sh.moon.shape.to_polyomino().unwrap().len(), sh.moon.cell_count);
        assert_eq!(sh.stack.shape.to_polyomino().unwrap().len(), sh.stack.cell_count);
        assert_eq!(linked().example.border.len(), 15);
    }
}
