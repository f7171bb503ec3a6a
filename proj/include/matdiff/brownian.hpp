#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "matdiff/matrix.hpp"
#include "matdiff/random.hpp"

namespace matdiff {

/// Equidistant grid t_k = k * horizon / steps, k = 0..steps.
class TimeGrid {
 public:
  TimeGrid(double horizon, std::size_t steps) : horizon_(horizon), steps_(steps) {
    if (!(horizon > 0.0) || !std::isfinite(horizon))
      throw std::invalid_argument("TimeGrid: horizon must be positive and finite");
    if (steps == 0) throw std::invalid_argument("TimeGrid: steps must be positive");
  }

  [[nodiscard]] double horizon() const noexcept { return horizon_; }
  [[nodiscard]] std::size_t steps() const noexcept { return steps_; }
  [[nodiscard]] double dt() const noexcept { return horizon_ / static_cast<double>(steps_); }
  [[nodiscard]] double time(std::size_t k) const noexcept {
    return k == steps_ ? horizon_ : static_cast<double>(k) * dt();
  }

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double horizon_;
  std::size_t steps_;
};

/// Identifies an independent Brownian path: master seed plus path index.
struct StreamId {
  std::uint64_t seed = 0;
  std::uint64_t path = 0;
};

/// d x d matrix of independent Brownian motions sampled on a grid. The
/// matrix is a full (non-symmetric) array of d^2 motions.
class BrownianPath {
 public:
  BrownianPath(TimeGrid grid, std::size_t dim, std::vector<Matrix> increments, StreamId stream)
      : grid_(grid), dim_(dim), increments_(std::move(increments)), stream_(stream) {
    if (increments_.size() != grid_.steps())
      throw std::invalid_argument("BrownianPath: need one increment per grid step");
    for (const auto& m : increments_)
      if (m.dim() != dim_) throw DimensionError("BrownianPath: increment dimension mismatch");
  }

  [[nodiscard]] const TimeGrid& grid() const noexcept { return grid_; }
  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] StreamId stream() const noexcept { return stream_; }
  [[nodiscard]] const std::vector<Matrix>& increments() const noexcept { return increments_; }
  [[nodiscard]] const Matrix& increment(std::size_t m) const { return increments_.at(m); }

  /// B at t_k: the sum of the first k increments.
  [[nodiscard]] Matrix value_at(std::size_t k) const {
    if (k > grid_.steps())
      throw std::out_of_range("BrownianPath::value_at: index " + std::to_string(k) + " > " +
                              std::to_string(grid_.steps()));
    Matrix b(dim_);
    for (std::size_t m = 0; m < k; ++m) b += increments_[m];
    return b;
  }

  /// Merges every `factor` consecutive increments, giving the same path on a
  /// grid with steps / factor points.
  [[nodiscard]] BrownianPath coarsen(std::size_t factor) const {
    if (factor == 0 || grid_.steps() % factor != 0)
      throw std::invalid_argument("BrownianPath::coarsen: factor must divide the step count");
    std::vector<Matrix> merged;
    merged.reserve(grid_.steps() / factor);
    for (std::size_t m = 0; m < grid_.steps(); m += factor) {
      Matrix sum(dim_);
      for (std::size_t r = 0; r < factor; ++r) sum += increments_[m + r];
      merged.push_back(std::move(sum));
    }
    return {TimeGrid(grid_.horizon(), grid_.steps() / factor), dim_, std::move(merged), stream_};
  }

 private:
  TimeGrid grid_;
  std::size_t dim_;
  std::vector<Matrix> increments_;
  StreamId stream_;
};

/// Entry (i,j) at step k is sqrt(dt) * Z with Z drawn from the stream keyed by
/// (seed, path, i*d+j) at counter k.
inline BrownianPath sample_path(const TimeGrid& grid, std::size_t dim, StreamId stream) {
  if (dim == 0) throw std::invalid_argument("sample_path: dimension must be positive");
  const double scale = std::sqrt(grid.dt());
  const std::uint64_t path_key = rng::derive(stream.seed, stream.path);
  std::vector<std::uint64_t> entry_keys(dim * dim);
  for (std::size_t e = 0; e < entry_keys.size(); ++e) entry_keys[e] = rng::derive(path_key, e);

  std::vector<Matrix> increments(grid.steps(), Matrix(dim));
  for (std::size_t k = 0; k < grid.steps(); ++k) {
    auto data = increments[k].data();
    for (std::size_t e = 0; e < entry_keys.size(); ++e) data[e] = scale * rng::normal_at(entry_keys[e], k);
  }
  return {grid, dim, std::move(increments), stream};
}

namespace detail {

inline constexpr char kPathMagic[4] = {'M', 'D', 'B', 'P'};
inline constexpr std::uint32_t kPathFormatVersion = 1;

template <class T>
void write_le(std::ostream& out, T value) {
  static_assert(std::endian::native == std::endian::little, "little-endian host required");
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.write(buf, sizeof(T));
}

template <class T>
T read_le(std::istream& in) {
  char buf[sizeof(T)];
  if (!in.read(buf, sizeof(T))) throw std::runtime_error("read_brownian_path: truncated input");
  T value;
  std::memcpy(&value, buf, sizeof(T));
  return value;
}

}  // namespace detail

/// Binary record: "MDBP", u32 version, u64 d, u64 n, f64 horizon, u64 seed,
/// u64 path index, then n*d*d little-endian float64 increments, each
/// increment row-major. Records may be concatenated.
inline void write_brownian_path(std::ostream& out, const BrownianPath& path) {
  out.write(detail::kPathMagic, 4);
  detail::write_le<std::uint32_t>(out, detail::kPathFormatVersion);
  detail::write_le<std::uint64_t>(out, path.dim());
  detail::write_le<std::uint64_t>(out, path.grid().steps());
  detail::write_le<double>(out, path.grid().horizon());
  detail::write_le<std::uint64_t>(out, path.stream().seed);
  detail::write_le<std::uint64_t>(out, path.stream().path);
  for (const auto& inc : path.increments())
    for (double v : inc.data()) detail::write_le<double>(out, v);
}

inline BrownianPath read_brownian_path(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, detail::kPathMagic, 4) != 0)
    throw std::runtime_error("read_brownian_path: bad magic");
  if (detail::read_le<std::uint32_t>(in) != detail::kPathFormatVersion)
    throw std::runtime_error("read_brownian_path: unsupported version");
  const auto d = detail::read_le<std::uint64_t>(in);
  const auto n = detail::read_le<std::uint64_t>(in);
  const auto horizon = detail::read_le<double>(in);
  StreamId stream;
  stream.seed = detail::read_le<std::uint64_t>(in);
  stream.path = detail::read_le<std::uint64_t>(in);
  std::vector<Matrix> increments(n, Matrix(d));
  for (auto& inc : increments)
    for (double& v : inc.data()) v = detail::read_le<double>(in);
  return {TimeGrid(horizon, n), d, std::move(increments), stream};
}

}  // namespace matdiff
