#pragma once

#include "qci/ansatz.hpp"
#include "qci/linalg.hpp"
#include "qci/optimize.hpp"

namespace qci::ame {

using linalg::StateVector;

/// Search target: n qudits of local dimension d, judged by their m-body
/// marginals (m defaults to floor(n/2), the absolutely-maximally-entangled
/// criterion).
struct AmeProblem {
  int n = 4;
  int d = 3;
  int m = 2;
};

void validate(const AmeProblem& prob);

/// Average over all (n choose m) subsets S of the linear entropy
/// d^m/(d^m - 1) (1 - tr rho_S^2); equals 1 exactly for AME states.
double average_linear_entropy(const StateVector& psi, const AmeProblem& prob);

/// Average over subsets of || rho_S - I/d^m ||_1.
double average_trace_distance(const StateVector& psi, const AmeProblem& prob);

/// sqrt(2 log2(d^m - (d^m - 1) Qm)): Pinsker-type upper bound on the average
/// trace distance in terms of the average linear entropy.
double dm_upper_bound(double qm, int d, int m);

/// Known exact states: (3,2) is the GHZ state, (4,3) the nine-term qutrit
/// state sum_{ij} |i>|j>|i+j mod 3>|i+2j mod 3| / 3. Other pairs throw.
StateVector ame_reference_state(int n, int d);

/// Minimization objective 1 - Q_m over the flat parameters of an ansatz;
/// degenerate assemblies evaluate to +infinity.
optimize::Objective ame_objective(const ansatz::AnsatzSpec& spec, const AmeProblem& prob);

}  // namespace qci::ame
