#pragma once

// Finite posets of cell labels.  Relations are closed reflexively and
// transitively at construction; a closure that identifies two distinct
// labels (a cycle) is rejected.  Upper sets are stored as membership masks.

#include "bqh/field.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace bqh {

struct UpperSet {
  std::vector<bool> mask;
  bool closure_changed = false;  // the given member list was not upward closed
};

class Poset {
 public:
  Poset(std::vector<std::string> labels,
        const std::vector<std::pair<std::string, std::string>>& less_or_equal);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  std::optional<std::size_t> index_of(const std::string& label) const;

  bool leq(std::size_t i, std::size_t j) const { return leq_[i][j]; }
  bool less(std::size_t i, std::size_t j) const { return i != j && leq_[i][j]; }

  // Elements listed bottom-up: by longest-chain height, ties by label.
  std::vector<std::size_t> linear_extension() const;

  UpperSet upper_closure(const std::vector<std::size_t>& members) const;
  bool is_upper_set(const std::vector<bool>& mask) const;

  std::vector<bool> at_or_above(std::size_t i) const;
  std::vector<bool> strictly_above(std::size_t i) const;
  std::vector<bool> empty_mask() const { return std::vector<bool>(size(), false); }
  std::vector<bool> full_mask() const { return std::vector<bool>(size(), true); }

  friend bool operator==(const Poset& a, const Poset& b) {
    return a.labels_ == b.labels_ && a.leq_ == b.leq_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<bool>> leq_;
};

}  // namespace bqh
