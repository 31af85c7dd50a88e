#pragma once

// Results from the tensor literature that the identifiability reports rely
// on but do not recompute. Each entry applies to a tensor format
// (side lengths), a system dimension k and a rank s.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace grasec {

enum class FactKind {
  kIdentifiable,     // the general system of this rank is identifiable
  kNotIdentifiable,  // computed by exactly `decompositions` sets
  kGenericRank,      // the general system has rank `value`
};

inline std::string to_string(FactKind k) {
  switch (k) {
    case FactKind::kIdentifiable: return "identifiable";
    case FactKind::kNotIdentifiable: return "not identifiable";
    case FactKind::kGenericRank: return "generic rank";
  }
  return "unknown";
}

struct FormatQuery {
  std::vector<std::size_t> sides;  // tensor side lengths n_i + 1
  std::size_t k = 0;               // projective dimension of the system
  std::size_t s = 0;               // rank; ignored by kGenericRank entries
};

struct LiteratureFact {
  std::string id;
  std::string source;      // citation key of the external result
  std::string hypothesis;  // human-readable form of `applies`
  std::string conclusion;
  std::string anchor;      // the statement the entry encodes
  FactKind kind = FactKind::kIdentifiable;
  std::function<bool(const FormatQuery&)> applies;
  std::function<std::int64_t(const FormatQuery&)> value = [](const FormatQuery&) { return 0; };
  std::optional<int> decompositions;
};

namespace detail {

inline bool all_sides_equal(const FormatQuery& q, std::size_t side) {
  if (q.sides.empty()) return false;
  for (auto v : q.sides)
    if (v != side) return false;
  return true;
}

inline std::int64_t no_value(const FormatQuery&) { return 0; }

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

}  // namespace detail

inline const std::vector<LiteratureFact>& literature_catalog() {
  static const std::vector<LiteratureFact> catalog = [] {
    std::vector<LiteratureFact> c;
    c.push_back({
        "pencil-2222-rank",
        "CGG Thm 4.1",
        "format 2x2x2x2, k = 1",
        "generic rank 6",
        "sigma_6((P^1)^5) fills P^31, sigma_5 does not",
        FactKind::kGenericRank,
        [](const FormatQuery& q) { return q.sides.size() == 4 && detail::all_sides_equal(q, 2) && q.k == 1; },
        [](const FormatQuery&) { return std::int64_t{6}; },
        std::nullopt,
    });
    c.push_back({
        "pencil-2222-identifiable",
        "CGG Thm 4.1; BC Thm 1.1",
        "format 2x2x2x2, k = 1, s < 5",
        "identifiable",
        "(P^1)^5 is s-identifiable for s < 5",
        FactKind::kIdentifiable,
        [](const FormatQuery& q) {
          return q.sides.size() == 4 && detail::all_sides_equal(q, 2) && q.k == 1 && q.s >= 1 && q.s < 5;
        },
        detail::no_value,
        std::nullopt,
    });
    c.push_back({
        "pencil-2222-rank5",
        "BC Prop 4.1",
        "format 2x2x2x2, k = 1, s = 5",
        "not identifiable: computed by exactly two sets of decomposable tensors",
        "through a general point of sigma_5((P^1)^5) pass exactly two 5-secant 4-spaces",
        FactKind::kNotIdentifiable,
        [](const FormatQuery& q) {
          return q.sides.size() == 4 && detail::all_sides_equal(q, 2) && q.k == 1 && q.s == 5;
        },
        detail::no_value,
        2,
    });
    c.push_back({
        "pencil-2m-rank",
        "CGG Thm 4.1",
        "format 2x...x2 (m factors), m > 4, k = 1",
        "generic rank ceil(2^m / (m+1)), m read as the number of listed factors",
        "rank of the general pencil of m-fold 2x...x2 tensors is ceil(2^m/(m+1))",
        FactKind::kGenericRank,
        [](const FormatQuery& q) { return q.sides.size() > 4 && detail::all_sides_equal(q, 2) && q.k == 1; },
        [](const FormatQuery& q) {
          const auto m = static_cast<std::int64_t>(q.sides.size());
          return detail::ceil_div(std::int64_t{1} << m, m + 1);
        },
        std::nullopt,
    });
    c.push_back({
        "pencil-2m-identifiable",
        "BC Thm 1.1",
        "format 2x...x2 (m factors), m > 4, k = 1, s <= 2^(m-1)/m",
        "identifiable",
        "the general pencil of rank s <= 2^(m-1)/m is identifiable",
        FactKind::kIdentifiable,
        [](const FormatQuery& q) {
          const std::size_t m = q.sides.size();
          return m > 4 && detail::all_sides_equal(q, 2) && q.k == 1 && q.s >= 1 &&
                 q.s * m <= (std::size_t{1} << (m - 1));
        },
        detail::no_value,
        std::nullopt,
    });
    c.push_back({
        "matrix-systems-ab16",
        "CO Thm 1.1",
        "format a x b with a <= b <= k+1, s <= ab/16",
        "identifiable",
        "general (k+1) x a x b tensors of rank s <= ab/16 have a unique decomposition",
        FactKind::kIdentifiable,
        [](const FormatQuery& q) {
          if (q.sides.size() != 2) return false;
          const std::size_t a = q.sides[0], b = q.sides[1];
          return a <= b && b <= q.k + 1 && q.s >= 1 && 16 * q.s <= a * b;
        },
        detail::no_value,
        std::nullopt,
    });
    c.push_back({
        "system-44-rank",
        "AOP Ex 3.18",
        "format 4x4, k = 3",
        "generic rank 7",
        "P^3 x P^3 x P^3 is never defective, so sigma_7 fills P^63",
        FactKind::kGenericRank,
        [](const FormatQuery& q) { return q.sides.size() == 2 && detail::all_sides_equal(q, 4) && q.k == 3; },
        [](const FormatQuery&) { return std::int64_t{7}; },
        std::nullopt,
    });
    c.push_back({
        "system-44-identifiable",
        "AOP Ex 3.18; CO Thm 1.3",
        "format 4x4, k = 3, s < 6",
        "identifiable",
        "general 4x4x4 tensors of rank s < 6 have a unique decomposition",
        FactKind::kIdentifiable,
        [](const FormatQuery& q) {
          return q.sides.size() == 2 && detail::all_sides_equal(q, 4) && q.k == 3 && q.s >= 1 && q.s < 6;
        },
        detail::no_value,
        std::nullopt,
    });
    c.push_back({
        "system-44-rank6",
        "CO Thm 1.3",
        "format 4x4, k = 3, s = 6",
        "not identifiable: computed by exactly two sets of decomposable tensors",
        "a general 4x4x4 tensor of rank 6 has exactly two decompositions",
        FactKind::kNotIdentifiable,
        [](const FormatQuery& q) {
          return q.sides.size() == 2 && detail::all_sides_equal(q, 4) && q.k == 3 && q.s == 6;
        },
        detail::no_value,
        2,
    });
    return c;
  }();
  return catalog;
}

/// Entries whose hypotheses match the query, in catalog order.
inline std::vector<const LiteratureFact*> matching_facts(const FormatQuery& q) {
  std::vector<const LiteratureFact*> out;
  for (const auto& f : literature_catalog())
    if (f.applies(q)) out.push_back(&f);
  return out;
}

}  // namespace grasec
