#pragma once

// Classical multiplicity formulas used to check the geometric pipeline:
// Kostant partition functions, compact weight multiplicities, Blattner's
// formula for discrete series and Frobenius reciprocity for principal series.

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ktypes/params.hpp"

namespace ktypes {

// Number of ways to write w as a nonnegative integer combination of the
// given vectors (with repetition). The vectors must lie in an open half-space.
class PartitionFunction {
 public:
  explicit PartitionFunction(std::vector<QVec> vectors);

  Integer operator()(const QVec& w) const;
  const std::vector<QVec>& vectors() const { return vectors_; }

 private:
  Integer count(std::size_t k, const QVec& w) const;

  std::vector<QVec> vectors_;
  QVec functional_;  // strictly positive on every vector
  mutable std::mutex mu_;
  mutable std::map<std::pair<std::size_t, QVec>, Integer> memo_;
};

// Brute-force count, for tests: enumerates coefficient vectors.
Integer partition_count_direct(const std::vector<QVec>& vectors, const QVec& w);

// Weight multiplicities of the irreducible K-representation with highest
// weight eta (T-weight coordinates, dominant for positive_k).
std::map<QVec, Integer> compact_weights(const GroupData& g, const std::vector<QVec>& positive_k, const QVec& eta);
Integer weyl_dimension(const GroupData& g, const std::vector<QVec>& positive_k, const QVec& eta);

// Restriction of a K-type to T_M (Z'_M given by its torus angles): multiset
// of (T_M weight, values of the Z'_M characters as turns) with multiplicities.
struct SubgroupType {
  QVec tm_weight;
  std::vector<Rational> zprime_turns;
  friend bool operator<(const SubgroupType& a, const SubgroupType& b) {
    return std::tie(a.tm_weight, a.zprime_turns) < std::tie(b.tm_weight, b.zprime_turns);
  }
};
std::map<SubgroupType, Integer> compact_branching(const GroupData& g, const CartanData& h,
                                                  const std::vector<QVec>& positive_k, const QVec& eta);

// Blattner's formula on the maximally compact Cartan, regular lambda.
Integer blattner_multiplicity(const StandardRepParams& p, const QVec& eta);
// [Ind(sigma) : delta] = [delta|_{K_M} : sigma] for abelian M.
Integer frobenius_induced_multiplicity(const StandardRepParams& p, const QVec& eta);

struct OracleValue {
  long value = 0;
  std::string source;  // "blattner", "frobenius" or "table"
};

// Dispatches to the formula that covers p; OracleUnsupported otherwise.
// SL(2,R) limits of discrete series have no classical formula in scope and
// use the closed-form table.
OracleValue oracle_multiplicity(const StandardRepParams& p, const QVec& eta);
bool oracle_covers(const StandardRepParams& p);

}  // namespace ktypes
