#pragma once

namespace excess {

// Cost guards, the single source of truth for every cap the library and
// CLI enforce. Environment overrides:
//   EXCESS_ATLAS_MAX_N       -> max_recurrence_n
//   EXCESS_ATLAS_MAX_ORACLE  -> max_oracle_n
//   EXCESS_ATLAS_THREADS     -> worker cap (0 = hardware concurrency)
struct Caps {
    int max_recurrence_n = 400;   // integer recurrence
    int max_oracle_n = 8;         // exhaustive graph scan (n = 8 is opt-in at the CLI)
    int max_gf_excess = 16;       // excess range of the exact GF pipeline
    int max_patchwork_excess = 3; // patchwork enumeration
    int threads = 0;
};

const Caps& caps();

/// Worker count after applying the cap (at least 1).
int worker_count(int requested = 0);

}  // namespace excess
