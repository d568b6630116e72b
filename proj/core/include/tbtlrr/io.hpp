#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "tbtlrr/tensor.hpp"

namespace tbtlrr {

// T3B binary tensor format: magic "T3B1", three unsigned 32-bit
// little-endian dimensions n1, n2, n3, then n1*n2*n3 IEEE-754 64-bit
// little-endian values in slice-major order.

Tensor3 read_t3b(std::istream& in);
Tensor3 read_t3b(const std::filesystem::path& path);

void write_t3b(std::ostream& out, const Tensor3& t);
void write_t3b(const std::filesystem::path& path, const Tensor3& t);

/// Labels CSV: one integer per line, 1-based cluster ids.
std::vector<int> read_labels_csv(const std::filesystem::path& path);
void write_labels_csv(const std::filesystem::path& path, const std::vector<int>& labels);

}  // namespace tbtlrr
