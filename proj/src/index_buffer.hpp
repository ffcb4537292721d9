#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace maxbandit::detail {

// Scratch space for per-arm indices; stays on the stack for typical K.
class IndexBuffer {
 public:
  explicit IndexBuffer(std::size_t size) : size_(size) {
    if (size > kInline) heap_.resize(size);
  }
  std::span<double> span() { return {size_ > kInline ? heap_.data() : inline_, size_}; }
  double& operator[](std::size_t i) { return span()[i]; }

 private:
  static constexpr std::size_t kInline = 16;
  std::size_t size_;
  double inline_[kInline];
  std::vector<double> heap_;
};

}  // namespace maxbandit::detail
