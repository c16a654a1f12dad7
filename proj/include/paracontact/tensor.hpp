#pragma once

#include <array>
#include <cassert>
#include <vector>

#include "paracontact/jet.hpp"

namespace paracontact {

/// Dense rank-1..5 container of jets with frame-index slots.
class JetTensor {
 public:
  JetTensor() = default;

  explicit JetTensor(std::vector<int> dims) : dims_(std::move(dims)) {
    std::size_t n = 1;
    for (int d : dims_) n *= static_cast<std::size_t>(d);
    c_.resize(n);
  }

  static JetTensor zeros(std::vector<int> dims, int nvars, int order) {
    JetTensor t(std::move(dims));
    for (Jet& j : t.c_) j = Jet::constant(nvars, order, 0.0);
    return t;
  }

  int rank() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }

  template <typename... Ix>
  Jet& operator()(Ix... ix) {
    return c_[flat(ix...)];
  }
  template <typename... Ix>
  const Jet& operator()(Ix... ix) const {
    return c_[flat(ix...)];
  }

  std::vector<Jet>& flat_data() { return c_; }
  const std::vector<Jet>& flat_data() const { return c_; }

  double max_abs_value() const {
    double m = 0.0;
    for (const Jet& j : c_)
      if (!j.empty()) m = std::max(m, std::abs(j.value()));
    return m;
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const Jet& j : c_)
      if (!j.empty()) m = std::max(m, j.max_abs_coeff());
    return m;
  }

 private:
  template <typename... Ix>
  std::size_t flat(Ix... ix) const {
    static_assert(sizeof...(Ix) >= 1 && sizeof...(Ix) <= 5);
    assert(static_cast<int>(sizeof...(Ix)) == rank());
    const std::array<int, sizeof...(Ix)> idx{static_cast<int>(ix)...};
    std::size_t f = 0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      assert(idx[k] >= 0 && idx[k] < dims_[k]);
      f = f * static_cast<std::size_t>(dims_[k]) + static_cast<std::size_t>(idx[k]);
    }
    return f;
  }

  std::vector<int> dims_;
  std::vector<Jet> c_;
};

}  // namespace paracontact
