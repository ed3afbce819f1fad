#pragma once

#include "qci/ansatz.hpp"
#include "qci/channels.hpp"
#include "qci/linalg.hpp"
#include "qci/optimize.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qci::cohinfo {

using channels::KrausChannel;
using linalg::Complex;
using linalg::StateVector;

/// Coherent information of a code state through k copies of a channel,
/// I(R>B) = S(sigma_B) - S(sigma_RB), in bits.
struct CodeEvaluation {
  int k = 1;
  double ci_total = 0.0;
  double ci_per_use = 0.0;
  double entropy_B = 0.0;
  double entropy_RB = 0.0;
};

CodeEvaluation coherent_information(const StateVector& code, const KrausChannel& channel, int k);

/// One nonzero amplitude of a code, keyed by its basis string. Strings are
/// written in A^k|R display order (channel-input digits first, reference
/// digits last); the '|' separator is optional.
struct TableEntry {
  std::string basis;
  Complex amplitude;
};

/// Assemble a sparse code state from table entries. Internal layout is the
/// reference subsystem first, then the k channel inputs, so the two string
/// halves are swapped during parsing. The state is normalized; duplicate
/// strings and wrong lengths are errors.
StateVector table_code_state(const std::vector<TableEntry>& entries, int dim_r, int dim_a, int k);

CodeEvaluation evaluate_table_code(const std::vector<TableEntry>& entries, int dim_r, int dim_a,
                                   int k, const KrausChannel& channel);

/// Minimization objective: negated per-use coherent information of the
/// assembled ansatz state through k channel copies. Degenerate assemblies
/// evaluate to +infinity instead of throwing out of a search.
optimize::Objective make_ci_objective(const ansatz::AnsatzSpec& spec, const KrausChannel& channel,
                                      int k);

}  // namespace qci::cohinfo
