#include "bqh/poset.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace bqh {

Poset::Poset(std::vector<std::string> labels,
             const std::vector<std::pair<std::string, std::string>>& less_or_equal)
    : labels_(std::move(labels)) {
  const std::size_t n = labels_.size();
  if (n == 0) throw ParseError("poset needs at least one element");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) {
    if (labels_[i].empty()) throw ParseError("empty poset label");
    if (!index.emplace(labels_[i], i).second) {
      throw ParseError("duplicate poset label: " + labels_[i]);
    }
  }
  leq_.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) leq_[i][i] = true;
  for (const auto& [lo, hi] : less_or_equal) {
    const auto a = index.find(lo);
    const auto b = index.find(hi);
    if (a == index.end()) throw ParseError("poset relation uses unknown label: " + lo);
    if (b == index.end()) throw ParseError("poset relation uses unknown label: " + hi);
    leq_[a->second][b->second] = true;
  }
  // Warshall transitive closure.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!leq_[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (leq_[k][j]) leq_[i][j] = true;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (leq_[i][j] && leq_[j][i]) {
        throw ParseError("poset relations form a cycle through " + labels_[i] + " and " +
                         labels_[j]);
      }
    }
  }
}

std::optional<std::size_t> Poset::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> Poset::linear_extension() const {
  const std::size_t n = size();
  std::vector<std::size_t> height(n, 0);
  // Heights stabilize after at most n sweeps; relations are acyclic.
  for (std::size_t sweep = 0; sweep < n; ++sweep) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (less(j, i) && height[i] < height[j] + 1) {
          height[i] = height[j] + 1;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (height[a] != height[b]) return height[a] < height[b];
    return labels_[a] < labels_[b];
  });
  return order;
}

UpperSet Poset::upper_closure(const std::vector<std::size_t>& members) const {
  UpperSet u;
  u.mask.assign(size(), false);
  for (std::size_t m : members) {
    if (m >= size()) throw Error("poset index out of range");
    u.mask[m] = true;
  }
  const std::vector<bool> given = u.mask;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!given[i]) continue;
    for (std::size_t j = 0; j < size(); ++j) {
      if (leq(i, j)) u.mask[j] = true;
    }
  }
  u.closure_changed = (u.mask != given);
  return u;
}

bool Poset::is_upper_set(const std::vector<bool>& mask) const {
  if (mask.size() != size()) throw Error("upper-set mask has wrong length");
  for (std::size_t i = 0; i < size(); ++i) {
    if (!mask[i]) continue;
    for (std::size_t j = 0; j < size(); ++j) {
      if (leq(i, j) && !mask[j]) return false;
    }
  }
  return true;
}

std::vector<bool> Poset::at_or_above(std::size_t i) const {
  std::vector<bool> mask(size(), false);
  for (std::size_t j = 0; j < size(); ++j) mask[j] = leq(i, j);
  return mask;
}

std::vector<bool> Poset::strictly_above(std::size_t i) const {
  std::vector<bool> mask = at_or_above(i);
  mask[i] = false;
  return mask;
}

}  // namespace bqh
