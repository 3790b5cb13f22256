#pragma once

// Negativities of multipartite states across bipartite splittings, optionally
// after tracing out some parties, and the ordering between them that follows
// from partial traces being local operations.

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <vector>

#include "neglab/linalg.hpp"
#include "neglab/measures.hpp"
#include "neglab/states.hpp"

namespace neglab {

inline constexpr std::size_t kMaxParties = 4;

/// group_a | group_b over the kept parties; all other parties are traced out.
/// Party indices refer to the input state.
struct Splitting {
  std::vector<int> group_a;
  std::vector<int> group_b;

  [[nodiscard]] std::vector<int> kept() const {
    std::vector<int> k(group_a);
    k.insert(k.end(), group_b.begin(), group_b.end());
    std::sort(k.begin(), k.end());
    return k;
  }

  bool operator==(const Splitting&) const = default;
};

inline char party_letter(int p) { return static_cast<char>('A' + p); }

/// "A-BC" for a full splitting, "A-B;~C~D" when C and D are traced out.
inline std::string label(const Splitting& s, int parties) {
  std::string out;
  for (int p : s.group_a) out += party_letter(p);
  out += '-';
  for (int p : s.group_b) out += party_letter(p);
  const auto kept = s.kept();
  std::string traced;
  for (int p = 0; p < parties; ++p)
    if (!std::binary_search(kept.begin(), kept.end(), p)) traced += std::string("~") + party_letter(p);
  if (!traced.empty()) out += ";" + traced;
  return out;
}

inline void validate(const Splitting& s, std::size_t parties) {
  detail::require<DomainError>(!s.group_a.empty() && !s.group_b.empty(), "Splitting: both groups must be nonempty");
  std::vector<int> all = s.kept();
  for (int p : all)
    detail::require<DomainError>(p >= 0 && static_cast<std::size_t>(p) < parties, "Splitting: party index out of range");
  detail::require<DomainError>(std::adjacent_find(all.begin(), all.end()) == all.end(),
                               "Splitting: groups must be disjoint");
}

/// The bipartite state of a splitting: trace out the discarded parties, then
/// permute the kept ones into (group_a, group_b) order.
inline DensityMatrix split_state(const DensityMatrix& rho, const Splitting& s) {
  const std::size_t n = rho.dims().parties();
  validate(s, n);
  const auto kept = s.kept();
  std::vector<int> traced;
  for (std::size_t p = 0; p < n; ++p)
    if (!std::binary_search(kept.begin(), kept.end(), static_cast<int>(p))) traced.push_back(static_cast<int>(p));

  const ComplexMatrix reduced = traced.empty() ? rho.matrix() : partial_trace(rho.matrix(), rho.dims(), traced);
  const DimsProfile reduced_dims = dims_without(rho.dims(), traced);

  // position of each original party inside the reduced state
  auto pos = [&](int p) {
    return static_cast<int>(std::lower_bound(kept.begin(), kept.end(), p) - kept.begin());
  };
  std::vector<int> order;
  int da = 1, db = 1;
  for (int p : s.group_a) {
    order.push_back(pos(p));
    da *= rho.dims()[p];
  }
  for (int p : s.group_b) {
    order.push_back(pos(p));
    db *= rho.dims()[p];
  }
  return DensityMatrix::from_computed(permute_subsystems(reduced, reduced_dims, order), DimsProfile{da, db});
}

inline double splitting_negativity(const DensityMatrix& rho, const Splitting& s) {
  detail::require<DomainError>(rho.dims().parties() <= kMaxParties, "splitting_negativity: at most 4 parties");
  return negativity(split_state(rho, s));
}

/// Every inequivalent splitting of an n-party state: each subset of at least two
/// kept parties, each unordered bipartition of it (group_a holds the lowest kept party).
inline std::vector<Splitting> enumerate_splittings(int parties) {
  detail::require<DomainError>(parties >= 2 && static_cast<std::size_t>(parties) <= kMaxParties,
                               "enumerate_splittings: 2..4 parties supported");
  std::vector<Splitting> out;
  // larger kept sets first, then by bipartition
  for (int size = parties; size >= 2; --size) {
    for (unsigned kept_mask = 0; kept_mask < (1u << parties); ++kept_mask) {
      if (std::popcount(kept_mask) != size) continue;
      std::vector<int> kept;
      for (int p = 0; p < parties; ++p)
        if (kept_mask & (1u << p)) kept.push_back(p);
      // kept[0] always sits in group_a; bit i-1 of `sub` places kept[i] there too
      for (unsigned sub = 0; sub < (1u << (size - 1)); ++sub) {
        Splitting s;
        for (int i = 0; i < size; ++i) ((i == 0 || (sub & (1u << (i - 1)))) ? s.group_a : s.group_b).push_back(kept[i]);
        if (s.group_b.empty()) continue;
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

struct SplittingValue {
  Splitting splitting;
  std::string label;
  double negativity = 0.0;
  double log_negativity = 0.0;
};

inline std::vector<SplittingValue> splitting_table(const DensityMatrix& rho) {
  const int n = static_cast<int>(rho.dims().parties());
  std::vector<SplittingValue> out;
  for (const auto& s : enumerate_splittings(n)) {
    const double neg = splitting_negativity(rho, s);
    out.push_back({s, label(s, n), neg, std::log2(1.0 + 2.0 * neg)});
  }
  return out;
}

inline constexpr double kHierarchyTol = 1e-9;

struct HierarchyChain {
  std::vector<Splitting> chain;  // each element traces one more party than the previous
  std::vector<std::string> labels;
  std::vector<double> values;
  bool satisfied = true;
};

namespace detail {

inline void extend_chains(const Splitting& s, std::vector<Splitting>& path, std::vector<std::vector<Splitting>>& out) {
  path.push_back(s);
  bool extended = false;
  for (int side = 0; side < 2; ++side) {
    const auto& group = side == 0 ? s.group_a : s.group_b;
    if (group.size() < 2) continue;
    for (std::size_t i = 0; i < group.size(); ++i) {
      Splitting next = s;
      auto& g = side == 0 ? next.group_a : next.group_b;
      g.erase(g.begin() + static_cast<long>(i));
      extended = true;
      extend_chains(next, path, out);
    }
  }
  if (!extended) out.push_back(path);
  path.pop_back();
}

}  // namespace detail

/// All maximal descending chains N_{X-Y} >= N_{X-Y';~z} >= ... obtained by tracing
/// out one party at a time, starting from every splitting of the full state.
inline std::vector<HierarchyChain> hierarchy_report(const DensityMatrix& rho) {
  const int n = static_cast<int>(rho.dims().parties());
  detail::require<DomainError>(n == 4, "hierarchy_report: four-party state required");
  std::vector<std::vector<Splitting>> chains;
  for (const auto& s : enumerate_splittings(n)) {
    if (static_cast<int>(s.kept().size()) != n) continue;
    std::vector<Splitting> path;
    detail::extend_chains(s, path, chains);
  }
  std::vector<HierarchyChain> out;
  for (auto& c : chains) {
    HierarchyChain h;
    for (const auto& s : c) {
      h.labels.push_back(label(s, n));
      h.values.push_back(splitting_negativity(rho, s));
    }
    for (std::size_t i = 1; i < h.values.size(); ++i)
      if (h.values[i] > h.values[i - 1] + kHierarchyTol) h.satisfied = false;
    h.chain = std::move(c);
    out.push_back(std::move(h));
  }
  return out;
}

}  // namespace neglab
