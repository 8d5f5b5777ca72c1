#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "louvain/types.hpp"

namespace louvain {

/// Pair-counting agreement between a reference partition and a candidate.
///
/// A vertex pair is a true positive when both partitions group it together,
/// a false positive when only the candidate does, a false negative when only
/// the reference does and a true negative when neither does.
struct PartitionComparison {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;
  double sp = 1.0;
  double se = 1.0;
  double oq = 1.0;
  double rand = 1.0;

  friend bool operator==(const PartitionComparison&, const PartitionComparison&) = default;
};

namespace detail {

inline double ratio_or_one(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 1.0 : static_cast<double>(num) / static_cast<double>(den);
}

inline std::uint64_t pairs_of(std::uint64_t k) { return k * (k - 1) / 2; }

inline PartitionComparison finish_comparison(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn,
                                             std::uint64_t tn) {
  PartitionComparison out;
  out.tp = tp;
  out.fp = fp;
  out.fn = fn;
  out.tn = tn;
  out.sp = ratio_or_one(tp, tp + fp);
  out.se = ratio_or_one(tp, tp + fn);
  out.oq = ratio_or_one(tp, tp + fp + fn);
  out.rand = ratio_or_one(tp + tn, tp + fp + fn + tn);
  return out;
}

template <typename Label>
void check_same_size(std::span<const Label> reference, std::span<const Label> candidate) {
  if (reference.size() != candidate.size()) {
    throw MismatchError("partitions cover " + std::to_string(reference.size()) + " and " +
                        std::to_string(candidate.size()) + " vertices");
  }
}

}  // namespace detail

/// Contingency-table pair counting, linear in the number of vertices.
/// Both spans are indexed by the same vertex ids.
template <typename Label>
PartitionComparison compare_partitions(std::span<const Label> reference, std::span<const Label> candidate) {
  detail::check_same_size(reference, candidate);
  const std::size_t n = reference.size();
  std::unordered_map<Label, std::uint64_t> ref_index;
  std::unordered_map<Label, std::uint64_t> cand_index;
  std::vector<std::uint64_t> ref_sizes;
  std::vector<std::uint64_t> cand_sizes;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> cell_of(n);
  for (std::size_t v = 0; v < n; ++v) {
    const auto r = ref_index.try_emplace(reference[v], ref_sizes.size()).first->second;
    if (r == ref_sizes.size()) ref_sizes.push_back(0);
    ++ref_sizes[r];
    const auto c = cand_index.try_emplace(candidate[v], cand_sizes.size()).first->second;
    if (c == cand_sizes.size()) cand_sizes.push_back(0);
    ++cand_sizes[c];
    cell_of[v] = {r, c};
  }
  std::unordered_map<std::uint64_t, std::uint64_t> cells;
  for (const auto& [r, c] : cell_of) ++cells[r * cand_sizes.size() + c];

  std::uint64_t same_both = 0;
  for (const auto& [key, count] : cells) same_both += detail::pairs_of(count);
  std::uint64_t same_ref = 0;
  for (auto count : ref_sizes) same_ref += detail::pairs_of(count);
  std::uint64_t same_cand = 0;
  for (auto count : cand_sizes) same_cand += detail::pairs_of(count);
  const std::uint64_t total = detail::pairs_of(reference.size());
  const std::uint64_t fp = same_cand - same_both;
  const std::uint64_t fn = same_ref - same_both;
  return detail::finish_comparison(same_both, fp, fn, total - same_both - fp - fn);
}

template <typename Label>
PartitionComparison compare_partitions(const std::vector<Label>& reference, const std::vector<Label>& candidate) {
  return compare_partitions(std::span<const Label>(reference), std::span<const Label>(candidate));
}

inline constexpr std::size_t kBruteForceLimit = 2000;

/// All-pairs classification straight from the pair definitions. Quadratic;
/// refuses inputs above kBruteForceLimit vertices.
template <typename Label>
PartitionComparison compare_partitions_bruteforce(std::span<const Label> reference,
                                                  std::span<const Label> candidate) {
  detail::check_same_size(reference, candidate);
  if (reference.size() > kBruteForceLimit) {
    throw PreconditionError("brute-force comparison limited to " + std::to_string(kBruteForceLimit) + " vertices");
  }
  std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
  for (std::size_t u = 0; u < reference.size(); ++u) {
    for (std::size_t v = u + 1; v < reference.size(); ++v) {
      const bool in_ref = reference[u] == reference[v];
      const bool in_cand = candidate[u] == candidate[v];
      if (in_ref && in_cand) {
        ++tp;
      } else if (in_cand) {
        ++fp;
      } else if (in_ref) {
        ++fn;
      } else {
        ++tn;
      }
    }
  }
  return detail::finish_comparison(tp, fp, fn, tn);
}

template <typename Label>
PartitionComparison compare_partitions_bruteforce(const std::vector<Label>& reference,
                                                  const std::vector<Label>& candidate) {
  return compare_partitions_bruteforce(std::span<const Label>(reference), std::span<const Label>(candidate));
}

/// `tp,fp,fn,tn,sp,se,oq,rand`; scores print as 1.0 / 0.0 when exact,
/// otherwise with six decimals.
inline std::string format_comparison(const PartitionComparison& c) {
  auto score = [](double x) {
    if (x == 1.0) return std::string("1.0");
    if (x == 0.0) return std::string("0.0");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return std::string(buf);
  };
  return std::to_string(c.tp) + "," + std::to_string(c.fp) + "," + std::to_string(c.fn) + "," +
         std::to_string(c.tn) + "," + score(c.sp) + "," + score(c.se) + "," + score(c.oq) + "," + score(c.rand);
}

}  // namespace louvain
