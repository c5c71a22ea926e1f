#pragma once

#include <cstddef>
#include <vector>

namespace rdmkit {

/// Dense 4-index tensor T(i,k,j,l) with all indices of range `dim`.
/// Storage (and serialization) order is row-major over (i,k,j,l).
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int dim)
      : dim_(dim),
        data_(static_cast<std::size_t>(dim) * dim * dim * dim, 0.0) {}

  int dim() const { return dim_; }

  double& operator()(int i, int k, int j, int l) { return data_[index(i, k, j, l)]; }
  double operator()(int i, int k, int j, int l) const { return data_[index(i, k, j, l)]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

 private:
  std::size_t index(int i, int k, int j, int l) const {
    return ((static_cast<std::size_t>(i) * dim_ + k) * dim_ + j) * dim_ + l;
  }

  int dim_ = 0;
  std::vector<double> data_;
};

}  // namespace rdmkit
