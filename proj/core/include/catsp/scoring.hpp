#pragma once

#include <span>
#include <vector>

#include "catsp/instance.hpp"
#include "catsp/matrix.hpp"

namespace catsp {

// Similarity of a predicted route x to an executed route B; 0 means identical.
//
// Routes are node sequences starting at the depot. A trailing depot (closed
// tour form) is accepted and ignored. Both routes must visit the same nodes.
struct ScoreReport {
  double sd = 0.0;        // sequence deviation
  double erp_norm = 0.0;  // travel-time weighted edit distance
  int erp_e = 0;          // edit operation count
  double score = 0.0;     // sd * erp_norm / erp_e
};

// 2 / (n (n - 1)) * sum_{i=1..n} (|g_i - g_{i-1}| - 1) where g_i is the
// position in B of x's i-th node and n the number of non-depot stops.
double sequence_deviation(std::span<const int> x, std::span<const int> B);

// Unit-cost Levenshtein distance.
int edit_ops(std::span<const int> x, std::span<const int> B);

// Per-position operation cost: travel time of B's arc into each position
// over B's closed-tour time. Position 0 (the depot) takes the closing arc.
std::vector<double> position_costs(const SquareMatrix& t, std::span<const int> B);

struct WeightedEdit {
  int ops = 0;
  double weighted = 0.0;
};

// Levenshtein alignment of x onto B, preferring substitution over
// insert/delete at equal cost. Every operation is charged the cost of the B
// position it touches: substitutions and insertions use their B position,
// deletions the position of the deleted node in B (or the current B
// position when the node is absent from B).
WeightedEdit weighted_edit(std::span<const int> x, std::span<const int> B, std::span<const double> costs);

double erp_norm(std::span<const int> x, std::span<const int> B, const SquareMatrix& t);

ScoreReport score(std::span<const int> x, std::span<const int> B, const SquareMatrix& t);

}  // namespace catsp
