#pragma once

// Property checks shared by the unit suite and the acceptance runner.

#include <cstddef>
#include <string>

namespace props {

struct Result {
    bool ok = true;
    std::size_t cases = 0;
    std::string detail; // first counterexample when !ok
};

/// validate_dag against a DFS cycle oracle on random graphs of up to 20 nodes.
Result dag_matches_dfs_oracle(int graphs, unsigned seed);

/// OR stories and their hand-expanded twins give the same notifications for every
/// event sequence up to `max_len`; both also agree with the reference machine.
Result or_desugaring_equivalence(int stories, int max_len, unsigned seed);

/// Monotone event sets, no revisits, bounded cascades, agreement with the reference
/// machine and with enabled_transitions, on random event sequences.
Result monotone_no_revisit(int sequences, unsigned seed);

/// Parse/print round trip plus whitespace and comment invariance on generated scripts.
Result parse_print_invariance(int scripts, unsigned seed);

} // namespace props
