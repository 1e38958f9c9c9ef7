//! Runtime limits and reproducibility knobs shared by the library and the CLI.

/// Output rendering selected on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Json,
}

/// Caps and seeds controlling which strategy an operation may use.
///
/// Every cap is a soft limit: operations return a typed error when asked to
/// exceed it instead of silently falling back to something slower.
#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Largest extension degree m for exhaustive field scans (3^m evaluations).
    pub scan_cap: usize,
    /// Largest m for which Zech logarithm tables are built (memory bound).
    pub zech_cap: usize,
    /// Largest degree for which (x+1)^e is expanded explicitly.
    pub expansion_cap: u64,
    /// Largest code length n for the weight-3 codeword search.
    pub oracle_cap: u64,
    /// Largest m for which a full field context (with factored group order)
    /// is constructed. Larger m is served by witness-mode operations only.
    pub context_cap: usize,
    /// Mixed into the equal-degree-splitting PRNG; output is canonical either
    /// way, the seed only affects the internal splitting path.
    pub seed: u64,
    /// Worker threads for parallel scans; `None` leaves the pool size to rayon.
    pub threads: Option<usize>,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            scan_cap: 15,
            zech_cap: 13,
            expansion_cap: 1 << 20,
            oracle_cap: 1000,
            context_cap: 64,
            seed: 0,
            threads: None,
            format: OutputFormat::Table,
        }
    }
}
