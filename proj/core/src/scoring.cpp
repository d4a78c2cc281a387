#include "catsp/scoring.hpp"

#include <algorithm>
#include <unordered_map>

#include "catsp/errors.hpp"

namespace catsp {

namespace {

std::span<const int> open_form(std::span<const int> seq) {
  if (seq.size() > 1 && seq.front() == seq.back()) return seq.first(seq.size() - 1);
  return seq;
}

void require_comparable(std::span<const int> x, std::span<const int> B) {
  std::vector<int> a(x.begin(), x.end());
  std::vector<int> b(B.begin(), B.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) throw IncomparableRoutesError("routes do not visit the same stops");
  if (std::adjacent_find(a.begin(), a.end()) != a.end()) {
    throw IncomparableRoutesError("route visits a stop more than once");
  }
}

}  // namespace

double sequence_deviation(std::span<const int> x_in, std::span<const int> B_in) {
  const auto x = open_form(x_in);
  const auto B = open_form(B_in);
  require_comparable(x, B);
  if (x.size() < 3) return 0.0;  // fewer than two stops besides the depot
  std::unordered_map<int, long> pos;
  for (std::size_t k = 0; k < B.size(); ++k) pos[B[k]] = static_cast<long>(k);
  const double n = static_cast<double>(x.size() - 1);
  long sum = 0;
  for (std::size_t i = 1; i < x.size(); ++i) sum += std::labs(pos[x[i]] - pos[x[i - 1]]) - 1;
  return 2.0 / (n * (n - 1.0)) * static_cast<double>(sum);
}

int edit_ops(std::span<const int> x, std::span<const int> B) {
  std::vector<int> prev(B.size() + 1);
  std::vector<int> cur(B.size() + 1);
  for (std::size_t j = 0; j <= B.size(); ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= x.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= B.size(); ++j) {
      cur[j] = std::min({prev[j - 1] + (x[i - 1] != B[j - 1] ? 1 : 0), prev[j] + 1, cur[j - 1] + 1});
    }
    prev.swap(cur);
  }
  return prev[B.size()];
}

std::vector<double> position_costs(const SquareMatrix& t, std::span<const int> B_in) {
  const auto B = open_form(B_in);
  std::vector<double> arc(B.size(), 0.0);
  if (B.size() < 2) return arc;
  double total = 0.0;
  for (std::size_t p = 0; p < B.size(); ++p) {
    arc[p] = t(B[p == 0 ? B.size() - 1 : p - 1], B[p]);
    total += arc[p];
  }
  for (double& a : arc) a = total > 0.0 ? a / total : 0.0;
  return arc;
}

WeightedEdit weighted_edit(std::span<const int> x, std::span<const int> B, std::span<const double> costs) {
  const std::size_t nx = x.size();
  const std::size_t nb = B.size();
  std::vector<int> d((nx + 1) * (nb + 1));
  auto at = [&](std::size_t i, std::size_t j) -> int& { return d[i * (nb + 1) + j]; };
  for (std::size_t i = 0; i <= nx; ++i) at(i, 0) = static_cast<int>(i);
  for (std::size_t j = 0; j <= nb; ++j) at(0, j) = static_cast<int>(j);
  for (std::size_t i = 1; i <= nx; ++i) {
    for (std::size_t j = 1; j <= nb; ++j) {
      at(i, j) = std::min({at(i - 1, j - 1) + (x[i - 1] != B[j - 1] ? 1 : 0), at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }
  std::unordered_map<int, std::size_t> pos_in_b;
  for (std::size_t k = 0; k < nb; ++k) pos_in_b.emplace(B[k], k);
  auto cost_at = [&](std::size_t p) { return p < costs.size() ? costs[p] : 0.0; };

  WeightedEdit out;
  out.ops = at(nx, nb);
  std::size_t i = nx;
  std::size_t j = nb;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && at(i, j) == at(i - 1, j - 1) + (x[i - 1] != B[j - 1] ? 1 : 0)) {
      if (x[i - 1] != B[j - 1]) out.weighted += cost_at(j - 1);
      --i;
      --j;
    } else if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      auto it = pos_in_b.find(x[i - 1]);
      out.weighted += cost_at(it != pos_in_b.end() ? it->second : (j > 0 ? j - 1 : 0));
      --i;
    } else {
      out.weighted += cost_at(j - 1);
      --j;
    }
  }
  return out;
}

double erp_norm(std::span<const int> x_in, std::span<const int> B_in, const SquareMatrix& t) {
  const auto x = open_form(x_in);
  const auto B = open_form(B_in);
  require_comparable(x, B);
  return weighted_edit(x, B, position_costs(t, B)).weighted;
}

ScoreReport score(std::span<const int> x_in, std::span<const int> B_in, const SquareMatrix& t) {
  const auto x = open_form(x_in);
  const auto B = open_form(B_in);
  require_comparable(x, B);
  ScoreReport r;
  if (std::equal(x.begin(), x.end(), B.begin(), B.end())) return r;
  r.sd = sequence_deviation(x, B);
  const WeightedEdit e = weighted_edit(x, B, position_costs(t, B));
  r.erp_norm = e.weighted;
  r.erp_e = e.ops;
  r.score = r.erp_e > 0 ? r.sd * r.erp_norm / r.erp_e : 0.0;
  return r;
}

}  // namespace catsp
