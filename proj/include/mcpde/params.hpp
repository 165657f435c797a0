#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcpde {

struct SegmentSpec {
  std::string name;
  int rows = 0;
  int cols = 1;
  std::size_t offset = 0;

  std::size_t size() const { return static_cast<std::size_t>(rows) * cols; }
};

// Ordered (name, shape) segments over one flat real64 buffer. Two layouts
// built from the same network spec enumerate identically, so parameter
// vectors, gradients and optimizer moments combine element-wise.
class ParamLayout {
 public:
  int add(std::string name, int rows, int cols = 1) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("ParamLayout: bad segment shape");
    SegmentSpec s{std::move(name), rows, cols, total_};
    total_ += s.size();
    segments_.push_back(std::move(s));
    return static_cast<int>(segments_.size()) - 1;
  }

  const SegmentSpec& segment(int i) const { return segments_.at(static_cast<std::size_t>(i)); }
  int count() const { return static_cast<int>(segments_.size()); }
  std::size_t total() const { return total_; }

  bool same_shape(const ParamLayout& other) const {
    if (segments_.size() != other.segments_.size()) return false;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
      if (segments_[i].rows != other.segments_[i].rows ||
          segments_[i].cols != other.segments_[i].cols)
        return false;
    }
    return true;
  }

 private:
  std::vector<SegmentSpec> segments_;
  std::size_t total_ = 0;
};

// Flat parameter store; segments are viewed column-major through Eigen maps.
class ParamVector {
 public:
  ParamVector() = default;
  explicit ParamVector(std::shared_ptr<const ParamLayout> layout)
      : layout_(std::move(layout)), values_(layout_->total(), 0.0) {}

  const ParamLayout& layout() const { return *layout_; }
  std::shared_ptr<const ParamLayout> layout_ptr() const { return layout_; }

  std::size_t size() const { return values_.size(); }
  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  Eigen::Map<Eigen::MatrixXd> matrix(int seg) {
    const auto& s = layout_->segment(seg);
    return {values_.data() + s.offset, s.rows, s.cols};
  }
  Eigen::Map<const Eigen::MatrixXd> matrix(int seg) const {
    const auto& s = layout_->segment(seg);
    return {values_.data() + s.offset, s.rows, s.cols};
  }
  Eigen::Map<Eigen::VectorXd> flat(int seg) {
    const auto& s = layout_->segment(seg);
    return {values_.data() + s.offset, static_cast<Eigen::Index>(s.size())};
  }
  Eigen::Map<const Eigen::VectorXd> flat(int seg) const {
    const auto& s = layout_->segment(seg);
    return {values_.data() + s.offset, static_cast<Eigen::Index>(s.size())};
  }

  void set_zero() { std::fill(values_.begin(), values_.end(), 0.0); }

 private:
  std::shared_ptr<const ParamLayout> layout_;
  std::vector<double> values_;
};

}  // namespace mcpde
