#ifndef MC_CROSSOVER_HPP
#define MC_CROSSOVER_HPP

#include <vector>

#include "mc/channel.hpp"

namespace mc {

// Positions of each bit value, ascending, 1-based to mirror the level
// formula the rest of this module implements.
struct IndexVectors {
  std::vector<int> zeros_x, ones_x, zeros_y, ones_y;
};

// Value-preserving bijection between sent and received positions (1-based;
// index 0 of both arrays is unused).
struct BijectiveMatch {
  std::vector<int> forward;  // L
  std::vector<int> inverse;  // L^-1
};

struct CrossoverVector {
  std::vector<int> levels;

  long sum() const;
  int max() const;
};

// Throws CompositionError unless x and y have equal length and equal
// 0/1 counts.
IndexVectors index_vectors(const BitSeq& x, const BitSeq& y);

// Crossover level of transmitted bit k under mapping L:
// (max_{j <= L(k)} L^-1(j) - k)^+.
int crossover_level(const BijectiveMatch& match, int k);

// Minimum crossover vector via the rank-matching bijection: the i-th
// 0-bit of x pairs with the i-th 0-bit of y, likewise for 1-bits. Minimal
// in both level sum and level max among all value-preserving bijections.
CrossoverVector min_crossover_vector(const BitSeq& x, const BitSeq& y);

// Oracle: enumerate every value-preserving bijection and return a vector
// minimizing (sum, then max, then lexicographic levels). N <= 10.
CrossoverVector brute_force_min_vector(const BitSeq& x, const BitSeq& y);

// prod_k P_c(l_k), computed in log space.
double vector_probability(const CrossoverVector& v, const CrossoverWeights& w);

// sum_k W_c(l_k) = -log P_v + N log P_c(0).
double crossover_distance(const CrossoverVector& v, const CrossoverWeights& w);

// sum_k l_k; the integer surrogate metric, no table needed.
long level_sum_distance(const CrossoverVector& v);

}  // namespace mc

#endif
