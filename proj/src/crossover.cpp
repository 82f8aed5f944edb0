#include "mc/crossover.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mc/errors.hpp"

namespace mc {

namespace {

void check_composition(const BitSeq& x, const BitSeq& y) {
  if (x.empty() || y.empty()) {
    throw CompositionError("sequences must be non-empty");
  }
  if (x.size() != y.size()) {
    throw CompositionError("sequences differ in length");
  }
  auto ones = [](const BitSeq& s) {
    return std::count(s.begin(), s.end(), std::uint8_t{1});
  };
  if (ones(x) != ones(y)) {
    throw CompositionError("sequences differ in bit composition");
  }
}

std::vector<int> value_positions(const BitSeq& s, std::uint8_t value) {
  std::vector<int> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == value) out.push_back(static_cast<int>(i) + 1);
  }
  return out;
}

}  // namespace

long CrossoverVector::sum() const {
  return std::accumulate(levels.begin(), levels.end(), 0L);
}

int CrossoverVector::max() const {
  return levels.empty() ? 0 : *std::max_element(levels.begin(), levels.end());
}

IndexVectors index_vectors(const BitSeq& x, const BitSeq& y) {
  check_composition(x, y);
  return IndexVectors{value_positions(x, 0), value_positions(x, 1),
                      value_positions(y, 0), value_positions(y, 1)};
}

int crossover_level(const BijectiveMatch& match, int k) {
  int latest = 0;
  for (int j = 1; j <= match.forward[static_cast<std::size_t>(k)]; ++j) {
    latest = std::max(latest, match.inverse[static_cast<std::size_t>(j)]);
  }
  return std::max(latest - k, 0);
}

CrossoverVector min_crossover_vector(const BitSeq& x, const BitSeq& y) {
  IndexVectors iv = index_vectors(x, y);
  const int n = static_cast<int>(x.size());

  // ones/zeros in y strictly before each position
  std::vector<int> ones_before(static_cast<std::size_t>(n) + 2, 0);
  for (int j = 1; j <= n; ++j) {
    ones_before[static_cast<std::size_t>(j) + 1] =
        ones_before[static_cast<std::size_t>(j)] + (y[static_cast<std::size_t>(j) - 1] == 1);
  }

  CrossoverVector v;
  v.levels.assign(static_cast<std::size_t>(n), 0);
  int rank0 = 0, rank1 = 0;
  for (int i = 1; i <= n; ++i) {
    int level = 0;
    if (x[static_cast<std::size_t>(i) - 1] == 0) {
      int j = iv.zeros_y[static_cast<std::size_t>(rank0++)];
      int k2 = ones_before[static_cast<std::size_t>(j)];  // count of y '1's left of j
      if (k2 > 0) level = std::max(iv.ones_x[static_cast<std::size_t>(k2) - 1] - i, 0);
    } else {
      int j = iv.ones_y[static_cast<std::size_t>(rank1++)];
      int k2 = (j - 1) - ones_before[static_cast<std::size_t>(j)];  // y '0's left of j
      if (k2 > 0) level = std::max(iv.zeros_x[static_cast<std::size_t>(k2) - 1] - i, 0);
    }
    v.levels[static_cast<std::size_t>(i) - 1] = level;
  }
  return v;
}

CrossoverVector brute_force_min_vector(const BitSeq& x, const BitSeq& y) {
  IndexVectors iv = index_vectors(x, y);
  const int n = static_cast<int>(x.size());
  if (n > 10) {
    throw ConfigError("brute_force_min_vector: sequence longer than 10");
  }

  const auto n0 = iv.zeros_x.size();
  const auto n1 = iv.ones_x.size();
  std::vector<std::size_t> perm0(n0), perm1(n1);
  std::iota(perm0.begin(), perm0.end(), std::size_t{0});
  std::iota(perm1.begin(), perm1.end(), std::size_t{0});

  BijectiveMatch match;
  match.forward.assign(static_cast<std::size_t>(n) + 1, 0);
  match.inverse.assign(static_cast<std::size_t>(n) + 1, 0);

  bool have_best = false;
  CrossoverVector best;
  long best_sum = 0;
  int best_max = 0;

  auto consider = [&]() {
    for (std::size_t k = 0; k < n0; ++k) {
      int i = iv.zeros_x[k], j = iv.zeros_y[perm0[k]];
      match.forward[static_cast<std::size_t>(i)] = j;
      match.inverse[static_cast<std::size_t>(j)] = i;
    }
    for (std::size_t k = 0; k < n1; ++k) {
      int i = iv.ones_x[k], j = iv.ones_y[perm1[k]];
      match.forward[static_cast<std::size_t>(i)] = j;
      match.inverse[static_cast<std::size_t>(j)] = i;
    }
    CrossoverVector v;
    v.levels.resize(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
      v.levels[static_cast<std::size_t>(k) - 1] = crossover_level(match, k);
    }
    long s = v.sum();
    int m = v.max();
    if (!have_best || s < best_sum || (s == best_sum && m < best_max) ||
        (s == best_sum && m == best_max && v.levels < best.levels)) {
      best = std::move(v);
      best_sum = s;
      best_max = m;
      have_best = true;
    }
  };

  do {
    do {
      consider();
    } while (std::next_permutation(perm1.begin(), perm1.end()));
  } while (std::next_permutation(perm0.begin(), perm0.end()));
  return best;
}

double vector_probability(const CrossoverVector& v, const CrossoverWeights& w) {
  double log_p = 0.0;
  for (int l : v.levels) log_p += w.log_pc(l);
  return std::exp(log_p);
}

double crossover_distance(const CrossoverVector& v, const CrossoverWeights& w) {
  double d = 0.0;
  for (int l : v.levels) d += w.weight(l);
  return d;
}

long level_sum_distance(const CrossoverVector& v) {
  return v.sum();
}

}  // namespace mc
