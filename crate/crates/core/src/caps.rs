/// Limits guarding the exponential parts of the toolkit. Exceeding one is an
/// error, never a silent truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest fragment family handled when marking or enumerating fragments.
    pub max_fragment_universe: usize,
    /// Largest fragment-subset size accepted for marking.
    pub max_subset_gamma: usize,
    /// Largest graph handed to exhaustive optimisation.
    pub max_bruteforce_vertices: usize,
    /// Largest set produced by an algebra operation (also bounds subset sweeps).
    pub max_set_size: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_fragment_universe: 512,
            max_subset_gamma: 3,
            max_bruteforce_vertices: 16,
            max_set_size: 1 << 20,
        }
    }
}
