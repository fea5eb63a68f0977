#include "wlgnn/partition.hpp"

#include <string_view>
#include <unordered_map>

#include "wlgnn/errors.hpp"

namespace wlgnn {

Partition Partition::canonical(std::span<const std::int32_t> classes) {
  return partition_from_labels(classes);
}

bool Partition::is_coarsening_of(const Partition& finer) const {
  if (finer.size() != size()) throw ParameterError("partition size mismatch");
  std::vector<std::int32_t> image(static_cast<std::size_t>(finer.num_classes), -1);
  for (std::size_t v = 0; v < size(); ++v) {
    auto& slot = image[static_cast<std::size_t>(finer.class_of[v])];
    if (slot == -1) slot = class_of[v];
    else if (slot != class_of[v]) return false;
  }
  return true;
}

Partition partition_from_rows(std::span<const std::uint8_t> flat, std::size_t width) {
  if (width == 0) throw ParameterError("row width must be positive");
  if (flat.size() % width != 0) throw ParameterError("flat label buffer is not a whole number of rows");
  std::unordered_map<std::string_view, std::int32_t> ids;
  Partition p;
  const std::size_t n = flat.size() / width;
  p.class_of.reserve(n);
  const auto* base = reinterpret_cast<const char*>(flat.data());
  for (std::size_t v = 0; v < n; ++v) {
    std::string_view key(base + v * width, width);
    auto [it, inserted] = ids.try_emplace(key, p.num_classes);
    if (inserted) ++p.num_classes;
    p.class_of.push_back(it->second);
  }
  return p;
}

bool partitions_equal(const Partition& p, const Partition& q) {
  if (p.size() != q.size()) throw ParameterError("partition size mismatch");
  return Partition::canonical(p.class_of) == Partition::canonical(q.class_of);
}

}  // namespace wlgnn
