#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace wlgnn {

// Node partition in canonical form: class ids are numbered by first
// occurrence when scanning nodes 0..n-1, so class_of[0] == 0.
struct Partition {
  std::vector<std::int32_t> class_of;
  std::int32_t num_classes = 0;

  std::size_t size() const noexcept { return class_of.size(); }

  // Canonicalizes an arbitrary class assignment.
  static Partition canonical(std::span<const std::int32_t> classes);

  // Every class of `finer` lies inside a single class of *this.
  bool is_coarsening_of(const Partition& finer) const;

  friend bool operator==(const Partition&, const Partition&) = default;
};

// Two nodes share a class iff their labels compare equal.
template <typename Label>
Partition partition_from_labels(std::span<const Label> labels) {
  std::map<Label, std::int32_t> ids;
  Partition p;
  p.class_of.reserve(labels.size());
  for (const auto& label : labels) {
    auto [it, inserted] = ids.try_emplace(label, p.num_classes);
    if (inserted) ++p.num_classes;
    p.class_of.push_back(it->second);
  }
  return p;
}

// Labels stored row-major as `width` entries per node.
Partition partition_from_rows(std::span<const std::uint8_t> flat, std::size_t width);

// Set-partition equality; throws ParameterError on length mismatch.
bool partitions_equal(const Partition& p, const Partition& q);

}  // namespace wlgnn
