/// Resource caps shared by the exact algorithms. Exceeding one yields
/// [`crate::Error::ResourceLimit`] instead of an unbounded computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Terms in any expanded polynomial.
    pub expand_terms: usize,
    /// Unknowns (y-monomials) in one annihilator system.
    pub columns: usize,
    /// Field elements held by one elimination.
    pub cells: usize,
    /// Points visited by an exhaustive enumeration.
    pub enumeration: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            expand_terms: 200_000,
            columns: 20_000,
            cells: 60_000_000,
            enumeration: 1 << 24,
        }
    }
}
