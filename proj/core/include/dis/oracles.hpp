#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "dis/rng.hpp"

namespace dis {

enum class OracleFamily {
  two_to_one_xor,    // f(x) = f(x') <=> x' = x XOR r
  two_to_one_arith,  // collision partners satisfy |x - x'| = r
  modexp,            // f(x) = a^x mod L
  deutsch_k,         // the four functions B -> B
  kronecker_k,       // f_k(x) = [x == k]
  table,             // arbitrary table, no structural guarantee
};

std::string_view family_name(OracleFamily family);
OracleFamily parse_family(std::string_view name);

struct OracleParams {
  std::optional<std::uint64_t> r = std::nullopt;
  std::optional<std::uint64_t> a = std::nullopt;
  std::optional<std::uint64_t> L = std::nullopt;
  std::optional<std::uint64_t> k = std::nullopt;
};

/// Finite function table f: [0, 2^domain_width) -> [0, 2^codomain_width).
///
/// Construction validates the family invariant exhaustively, so a
/// FunctionOracle that exists is always structurally what its family says.
class FunctionOracle {
 public:
  FunctionOracle(OracleFamily family, unsigned domain_width, unsigned codomain_width,
                 std::vector<std::uint64_t> table, OracleParams params = {});

  OracleFamily family() const { return family_; }
  unsigned domain_width() const { return domain_width_; }
  unsigned codomain_width() const { return codomain_width_; }
  std::uint64_t domain_size() const { return std::uint64_t{1} << domain_width_; }
  const OracleParams& params() const { return params_; }
  std::span<const std::uint64_t> table() const { return table_; }

  // Raw table lookup. Counted lookups go through QueryCounter.
  std::uint64_t operator()(std::uint64_t x) const;

  // Every value in the image has exactly two preimages.
  bool is_two_to_one() const;
  // f(x) == f(x XOR r) for every x, and is_two_to_one().
  bool has_xor_period(std::uint64_t r) const;
  // Half the inputs map to 0 and half to 1.
  bool is_balanced() const;

 private:
  void validate() const;

  OracleFamily family_;
  unsigned domain_width_;
  unsigned codomain_width_;
  std::vector<std::uint64_t> table_;
  OracleParams params_;
};

/// Counting wrapper. Forwards every lookup, never caches.
class QueryCounter {
 public:
  explicit QueryCounter(const FunctionOracle& oracle) : oracle_(&oracle) {}

  std::uint64_t operator()(std::uint64_t x) {
    ++count_;
    return (*oracle_)(x);
  }

  std::size_t count() const { return count_; }
  void reset() { count_ = 0; }
  const FunctionOracle& oracle() const { return *oracle_; }

 private:
  const FunctionOracle* oracle_;
  std::size_t count_ = 0;
};

QueryCounter query_counter(const FunctionOracle& oracle);

enum class TwoToOneFamily { xor_spaced, arith_spaced };

// Collision pairs of the spacing r, each listed as (smaller, larger) and
// ordered by the smaller element. Throws ConstructionError when the pairs do
// not tile [0, 2^n).
std::vector<std::pair<std::uint64_t, std::uint64_t>> collision_pairs(unsigned n, std::uint64_t r,
                                                                      TwoToOneFamily family);

// values[i] is assigned to the i-th collision pair; values must be distinct.
FunctionOracle build_two_to_one(unsigned n, std::uint64_t r, std::span<const std::uint64_t> values,
                                TwoToOneFamily family);
// Distinct pair values drawn uniformly from [0, 2^n).
FunctionOracle build_two_to_one(unsigned n, std::uint64_t r, Rng& rng, TwoToOneFamily family);

// f(x) = a^x mod L over a domain of domain_width qubits; codomain width is
// the bit length of L - 1 (at least 1).
FunctionOracle build_modexp(std::uint64_t a, std::uint64_t L, unsigned domain_width);

// f_00, f_01, f_10, f_11 indexed by k read as a 2-bit binary number.
std::vector<FunctionOracle> deutsch_family();
// f_k(x) = [x == k] for k in [0, 2^n).
std::vector<FunctionOracle> kronecker_family(unsigned n);

// Smallest r > 0 with a^r = 1 (mod L). Requires gcd(a, L) = 1.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t L);
std::uint64_t modpow(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus);

struct CollisionSolution {
  std::uint64_t x1 = 0;
  std::uint64_t x2 = 0;
  std::uint64_t f_value = 0;
  std::size_t queries_used = 0;
};

// The collision constraint network: c(x1, x2) = 1 and both f-gates output f_value.
bool satisfies_collision_system(const FunctionOracle& oracle, const CollisionSolution& solution);

enum class CollisionStrategy { exhaustive, birthday };

// Classical search for f(x1) = f(x2), x1 != x2. Exhaustive scans x = 0, 1, ...;
// birthday queries a uniformly random order. Throws NoSolutionError when the
// table is injective.
CollisionSolution classical_collision_solve(const FunctionOracle& oracle,
                                            CollisionStrategy strategy, Rng& rng);

nlohmann::json oracle_to_json(const FunctionOracle& oracle);
FunctionOracle oracle_from_json(const nlohmann::json& doc);

}  // namespace dis
