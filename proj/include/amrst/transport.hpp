#ifndef AMRST_TRANSPORT_HPP
#define AMRST_TRANSPORT_HPP

#include <Eigen/Core>
#include <string>
#include <vector>

namespace amrst {

// Normalized bag of words: unique tokens with positive weights summing to 1.
struct NbowDistribution {
  std::vector<std::string> tokens;
  Eigen::VectorXd weights;

  std::size_t size() const { return tokens.size(); }
};

// Builds an nBOW from a token list by merging counts and normalizing.
// Throws EmptyExtractionError on an empty list.
NbowDistribution make_nbow(const std::vector<std::string>& tokens);

// Solution of a balanced transportation problem.
struct TransportPlan {
  Eigen::MatrixXd flows;  // rows = supply entries, cols = demand entries
  double cost = 0.0;
};

// Exact optimal solution of the balanced transportation problem
// min <flows, costs> s.t. row sums = supply weights, column sums = demand
// weights, flows >= 0. Transportation simplex with Bland's rule.
// Throws ValidationError on dimension mismatch or an empty distribution.
TransportPlan solve_transport(const NbowDistribution& supply, const NbowDistribution& demand,
                              const Eigen::MatrixXd& costs);

}  // namespace amrst

#endif  // AMRST_TRANSPORT_HPP
