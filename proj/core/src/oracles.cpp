#include "dis/oracles.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_map>

#include "dis/errors.hpp"

namespace dis {

namespace {

constexpr unsigned kMaxOracleWidth = 30;

__extension__ using u128 = unsigned __int128;

std::string family_label(OracleFamily family) { return std::string(family_name(family)); }

std::uint64_t require_param(const std::optional<std::uint64_t>& value, const char* name,
                            OracleFamily family) {
  if (!value) {
    throw ConstructionError(family_label(family) + " oracle needs parameter " + name);
  }
  return *value;
}

}  // namespace

std::string_view family_name(OracleFamily family) {
  switch (family) {
    case OracleFamily::two_to_one_xor:
      return "two_to_one_xor";
    case OracleFamily::two_to_one_arith:
      return "two_to_one_arith";
    case OracleFamily::modexp:
      return "modexp";
    case OracleFamily::deutsch_k:
      return "deutsch_k";
    case OracleFamily::kronecker_k:
      return "kronecker_k";
    case OracleFamily::table:
      return "table";
  }
  return "table";
}

OracleFamily parse_family(std::string_view name) {
  for (auto family : {OracleFamily::two_to_one_xor, OracleFamily::two_to_one_arith,
                      OracleFamily::modexp, OracleFamily::deutsch_k, OracleFamily::kronecker_k,
                      OracleFamily::table}) {
    if (family_name(family) == name) {
      return family;
    }
  }
  throw StructuralError("unknown oracle family '" + std::string(name) + "'");
}

FunctionOracle::FunctionOracle(OracleFamily family, unsigned domain_width,
                               unsigned codomain_width, std::vector<std::uint64_t> table,
                               OracleParams params)
    : family_(family),
      domain_width_(domain_width),
      codomain_width_(codomain_width),
      table_(std::move(table)),
      params_(params) {
  validate();
}

std::uint64_t FunctionOracle::operator()(std::uint64_t x) const {
  if (x >= table_.size()) {
    throw RangeError("oracle input " + std::to_string(x) + " out of domain");
  }
  return table_[x];
}

bool FunctionOracle::is_two_to_one() const {
  std::unordered_map<std::uint64_t, std::size_t> preimages;
  for (auto value : table_) {
    ++preimages[value];
  }
  return std::all_of(preimages.begin(), preimages.end(),
                     [](const auto& entry) { return entry.second == 2; });
}

bool FunctionOracle::has_xor_period(std::uint64_t r) const {
  if (r == 0 || r >= table_.size()) {
    return false;
  }
  for (std::uint64_t x = 0; x < table_.size(); ++x) {
    if (table_[x] != table_[x ^ r]) {
      return false;
    }
  }
  return is_two_to_one();
}

bool FunctionOracle::is_balanced() const {
  const auto ones = std::count(table_.begin(), table_.end(), std::uint64_t{1});
  const auto zeros = std::count(table_.begin(), table_.end(), std::uint64_t{0});
  return zeros + ones == static_cast<std::ptrdiff_t>(table_.size()) && zeros == ones;
}

void FunctionOracle::validate() const {
  if (domain_width_ == 0 || codomain_width_ == 0 || domain_width_ > kMaxOracleWidth ||
      codomain_width_ > kMaxOracleWidth) {
    throw ConstructionError("oracle widths must lie in [1, 30]");
  }
  if (table_.size() != domain_size()) {
    throw ConstructionError("oracle table has " + std::to_string(table_.size()) +
                            " entries, domain needs " + std::to_string(domain_size()));
  }
  const std::uint64_t codomain = std::uint64_t{1} << codomain_width_;
  for (auto value : table_) {
    if (value >= codomain) {
      throw ConstructionError("oracle value " + std::to_string(value) + " exceeds codomain");
    }
  }

  switch (family_) {
    case OracleFamily::two_to_one_xor: {
      const auto r = require_param(params_.r, "r", family_);
      if (!has_xor_period(r)) {
        throw ConstructionError("table is not 2-to-1 with XOR spacing r=" + std::to_string(r));
      }
      break;
    }
    case OracleFamily::two_to_one_arith: {
      const auto r = require_param(params_.r, "r", family_);
      if (r == 0 || !is_two_to_one()) {
        throw ConstructionError("table is not 2-to-1");
      }
      std::unordered_map<std::uint64_t, std::uint64_t> first;
      for (std::uint64_t x = 0; x < table_.size(); ++x) {
        auto [it, fresh] = first.emplace(table_[x], x);
        if (!fresh && x - it->second != r) {
          throw ConstructionError("collision pair (" + std::to_string(it->second) + ", " +
                                  std::to_string(x) + ") is not spaced by r=" +
                                  std::to_string(r));
        }
      }
      break;
    }
    case OracleFamily::modexp: {
      const auto a = require_param(params_.a, "a", family_);
      const auto L = require_param(params_.L, "L", family_);
      if (L < 2 || a == 0 || a >= L || std::gcd(a, L) != 1) {
        throw ConstructionError("modexp needs 1 <= a < L with gcd(a, L) = 1");
      }
      for (std::uint64_t x = 0; x < table_.size(); ++x) {
        if (table_[x] != modpow(a, x, L)) {
          throw ConstructionError("table does not match a^x mod L");
        }
      }
      break;
    }
    case OracleFamily::deutsch_k: {
      const auto k = require_param(params_.k, "k", family_);
      if (k > 3 || domain_width_ != 1 || codomain_width_ != 1) {
        throw ConstructionError("deutsch oracle needs k in {0..3} and 1-bit widths");
      }
      if (table_[0] != (k >> 1) || table_[1] != (k & 1)) {
        throw ConstructionError("table does not match f_k for k=" + std::to_string(k));
      }
      break;
    }
    case OracleFamily::kronecker_k: {
      const auto k = require_param(params_.k, "k", family_);
      if (k >= table_.size() || codomain_width_ != 1) {
        throw ConstructionError("kronecker oracle needs k in domain and 1-bit codomain");
      }
      for (std::uint64_t x = 0; x < table_.size(); ++x) {
        if (table_[x] != (x == k ? 1u : 0u)) {
          throw ConstructionError("table is not the indicator of k=" + std::to_string(k));
        }
      }
      break;
    }
    case OracleFamily::table:
      break;
  }
}

QueryCounter query_counter(const FunctionOracle& oracle) { return QueryCounter(oracle); }

std::vector<std::pair<std::uint64_t, std::uint64_t>> collision_pairs(unsigned n, std::uint64_t r,
                                                                      TwoToOneFamily family) {
  if (n == 0 || n > kMaxOracleWidth) {
    throw ConstructionError("two-to-one width must lie in [1, 30]");
  }
  const std::uint64_t size = std::uint64_t{1} << n;
  if (r == 0 || r >= size) {
    throw ConstructionError("spacing r must satisfy 0 < r < 2^n");
  }
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  pairs.reserve(size / 2);
  if (family == TwoToOneFamily::xor_spaced) {
    for (std::uint64_t x = 0; x < size; ++x) {
      if (x < (x ^ r)) {
        pairs.emplace_back(x, x ^ r);
      }
    }
    return pairs;
  }
  // The smallest unpaired x can only pair upward with x + r, so the greedy
  // pairing is the unique tiling when one exists.
  std::vector<bool> used(size, false);
  for (std::uint64_t x = 0; x < size; ++x) {
    if (used[x]) {
      continue;
    }
    if (x + r >= size || used[x + r]) {
      throw ConstructionError("pairs {x, x+" + std::to_string(r) + "} cannot tile a domain of " +
                              std::to_string(size));
    }
    used[x] = used[x + r] = true;
    pairs.emplace_back(x, x + r);
  }
  return pairs;
}

FunctionOracle build_two_to_one(unsigned n, std::uint64_t r, std::span<const std::uint64_t> values,
                                TwoToOneFamily family) {
  const auto pairs = collision_pairs(n, r, family);
  if (values.size() != pairs.size()) {
    throw ConstructionError("need one value per collision pair (" + std::to_string(pairs.size()) +
                            ")");
  }
  std::vector<std::uint64_t> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ConstructionError("collision pairs need distinct values");
  }
  std::vector<std::uint64_t> table(std::uint64_t{1} << n);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    table[pairs[i].first] = values[i];
    table[pairs[i].second] = values[i];
  }
  const auto oracle_family = family == TwoToOneFamily::xor_spaced
                                 ? OracleFamily::two_to_one_xor
                                 : OracleFamily::two_to_one_arith;
  return FunctionOracle(oracle_family, n, n, std::move(table), OracleParams{.r = r});
}

FunctionOracle build_two_to_one(unsigned n, std::uint64_t r, Rng& rng, TwoToOneFamily family) {
  const auto pairs = collision_pairs(n, r, family);
  std::vector<std::uint64_t> pool(std::uint64_t{1} << n);
  std::iota(pool.begin(), pool.end(), std::uint64_t{0});
  // Partial Fisher-Yates: the first pairs.size() slots become a uniform sample.
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(pairs.size());
  return build_two_to_one(n, r, pool, family);
}

std::uint64_t modpow(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus) {
  if (modulus == 1) {
    return 0;
  }
  u128 result = 1;
  u128 b = base % modulus;
  while (exponent > 0) {
    if (exponent & 1) {
      result = result * b % modulus;
    }
    b = b * b % modulus;
    exponent >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t L) {
  if (L < 2 || std::gcd(a, L) != 1) {
    throw PreconditionError("multiplicative order needs gcd(a, L) = 1 and L >= 2");
  }
  std::uint64_t value = a % L;
  for (std::uint64_t r = 1; r <= L; ++r) {
    if (value == 1) {
      return r;
    }
    value = static_cast<std::uint64_t>(static_cast<u128>(value) * a % L);
  }
  throw PreconditionError("no multiplicative order found");
}

FunctionOracle build_modexp(std::uint64_t a, std::uint64_t L, unsigned domain_width) {
  if (L < 2) {
    throw ConstructionError("modexp needs L >= 2");
  }
  if (domain_width == 0 || domain_width > kMaxOracleWidth) {
    throw ConstructionError("modexp domain width must lie in [1, 30]");
  }
  const unsigned codomain_width = std::max(1u, static_cast<unsigned>(std::bit_width(L - 1)));
  std::vector<std::uint64_t> table(std::uint64_t{1} << domain_width);
  std::uint64_t value = 1 % L;
  for (auto& entry : table) {
    entry = value;
    value = static_cast<std::uint64_t>(static_cast<u128>(value) * a % L);
  }
  return FunctionOracle(OracleFamily::modexp, domain_width, codomain_width, std::move(table),
                        OracleParams{.a = a, .L = L});
}

std::vector<FunctionOracle> deutsch_family() {
  std::vector<FunctionOracle> family;
  for (std::uint64_t k = 0; k < 4; ++k) {
    family.emplace_back(OracleFamily::deutsch_k, 1, 1, std::vector<std::uint64_t>{k >> 1, k & 1},
                        OracleParams{.k = k});
  }
  return family;
}

std::vector<FunctionOracle> kronecker_family(unsigned n) {
  if (n == 0 || n > kMaxOracleWidth) {
    throw ConstructionError("kronecker family width must lie in [1, 30]");
  }
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<FunctionOracle> family;
  family.reserve(size);
  for (std::uint64_t k = 0; k < size; ++k) {
    std::vector<std::uint64_t> table(size, 0);
    table[k] = 1;
    family.emplace_back(OracleFamily::kronecker_k, n, 1, std::move(table), OracleParams{.k = k});
  }
  return family;
}

bool satisfies_collision_system(const FunctionOracle& oracle, const CollisionSolution& solution) {
  const auto size = oracle.domain_size();
  if (solution.x1 >= size || solution.x2 >= size) {
    return false;
  }
  const bool distinct = solution.x1 != solution.x2;
  return distinct && oracle(solution.x1) == solution.f_value &&
         oracle(solution.x2) == solution.f_value;
}

CollisionSolution classical_collision_solve(const FunctionOracle& oracle,
                                            CollisionStrategy strategy, Rng& rng) {
  const std::uint64_t size = oracle.domain_size();
  std::vector<std::uint64_t> order(size);
  std::iota(order.begin(), order.end(), std::uint64_t{0});
  if (strategy == CollisionStrategy::birthday) {
    for (std::uint64_t i = size; i > 1; --i) {
      std::swap(order[i - 1], order[rng.below(i)]);
    }
  }

  QueryCounter counter(oracle);
  std::unordered_map<std::uint64_t, std::uint64_t> seen;
  for (const auto x : order) {
    const auto value = counter(x);
    auto [it, fresh] = seen.emplace(value, x);
    if (!fresh) {
      CollisionSolution solution{std::min(it->second, x), std::max(it->second, x), value,
                                 counter.count()};
      return solution;
    }
  }
  throw NoSolutionError("table is injective: f(x1) = f(x2) with x1 != x2 has no solution");
}

nlohmann::json oracle_to_json(const FunctionOracle& oracle) {
  nlohmann::json params = nlohmann::json::object();
  const auto& p = oracle.params();
  if (p.r) params["r"] = *p.r;
  if (p.a) params["a"] = *p.a;
  if (p.L) params["L"] = *p.L;
  if (p.k) params["k"] = *p.k;
  params["codomain_width"] = oracle.codomain_width();
  return {{"family", family_name(oracle.family())},
          {"n", oracle.domain_width()},
          {"params", std::move(params)},
          {"table", std::vector<std::uint64_t>(oracle.table().begin(), oracle.table().end())}};
}

FunctionOracle oracle_from_json(const nlohmann::json& doc) {
  try {
    const auto family = parse_family(doc.at("family").get<std::string>());
    const auto n = doc.at("n").get<unsigned>();
    const auto& params = doc.at("params");
    OracleParams p;
    auto read = [&](const char* key, std::optional<std::uint64_t>& slot) {
      if (params.contains(key)) slot = params.at(key).get<std::uint64_t>();
    };
    read("r", p.r);
    read("a", p.a);
    read("L", p.L);
    read("k", p.k);
    const unsigned codomain = params.value("codomain_width", n);
    return FunctionOracle(family, n, codomain, doc.at("table").get<std::vector<std::uint64_t>>(),
                          p);
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError(std::string("malformed oracle document: ") + e.what());
  }
}

}  // namespace dis
