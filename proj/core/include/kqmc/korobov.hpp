#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kqmc/primes.hpp"

namespace kqmc {

/// A point of [0,1)^d as integer numerators over one common denominator.
/// Coordinates are 0-based; coordinate j of a Korobov point uses exponent j+1.
struct RationalPoint {
  std::vector<std::int64_t> numerators;
  std::int64_t denominator = 1;

  [[nodiscard]] std::size_t dim() const { return numerators.size(); }
  [[nodiscard]] std::vector<double> to_double() const;

  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
};

/// S: x_h = ({h/p^2}, {h^2/p^2}, ..., {h^d/p^2}),        0 <= h < p^2.
/// T: x_{h,l} = ({h l/p}, {h l^2/p}, ..., {h l^d/p}),   0 <= h, l < p,
///    stored in row-major order index = h p + l.
enum class SetKind { S, T };

[[nodiscard]] std::string_view to_string(SetKind kind);
[[nodiscard]] SetKind set_kind_from_string(std::string_view text);

enum class Storage { automatic, materialized, streaming };

/// Sets with at most this many points are materialized under Storage::automatic.
inline constexpr std::int64_t kStreamingThreshold = 1'000'000;

class KorobovSet {
 public:
  /// Throws DomainError when p is not prime or d < 1.
  KorobovSet(SetKind kind, std::int64_t p, int d, Storage storage = Storage::automatic);

  [[nodiscard]] SetKind kind() const { return kind_; }
  [[nodiscard]] std::int64_t p() const { return p_; }
  [[nodiscard]] int dim() const { return d_; }
  [[nodiscard]] std::int64_t size() const { return p_ * p_; }
  [[nodiscard]] std::int64_t denominator() const { return kind_ == SetKind::S ? p_ * p_ : p_; }
  [[nodiscard]] bool materialized() const { return !numerators_.empty(); }

  /// Numerator of coordinate j (0-based) of the point at `index`.
  [[nodiscard]] std::int64_t numerator(std::int64_t index, int j) const;
  [[nodiscard]] RationalPoint point(std::int64_t index) const;
  [[nodiscard]] std::vector<RationalPoint> points() const;

  /// Calls fn(index, numerators) for every point in canonical order. The span
  /// is only valid during the call.
  template <class Fn>
  void for_each_point(Fn&& fn) const {
    if (materialized()) {
      const auto d = static_cast<std::size_t>(d_);
      for (std::int64_t i = 0; i < size(); ++i) {
        fn(i, std::span<const std::int64_t>(numerators_.data() + static_cast<std::size_t>(i) * d, d));
      }
      return;
    }
    std::vector<std::int64_t> row(static_cast<std::size_t>(d_));
    for (std::int64_t i = 0; i < size(); ++i) {
      fill_row(i, row);
      fn(i, std::span<const std::int64_t>(row));
    }
  }

 private:
  void fill_row(std::int64_t index, std::span<std::int64_t> row) const;

  SetKind kind_;
  std::int64_t p_;
  int d_;
  std::vector<std::int64_t> numerators_;  // row-major, empty when streaming
};

[[nodiscard]] KorobovSet s_set(std::int64_t p, int d, Storage storage = Storage::automatic);
[[nodiscard]] KorobovSet t_set(std::int64_t p, int d, Storage storage = Storage::automatic);

/// Multiset union of one Korobov set per window prime (ascending primes).
/// kind S gives P1, kind T gives P2.
struct UnionPointSet {
  SetKind kind = SetKind::S;
  std::int64_t m = 2;
  int d = 1;
  PrimeWindow window;
  std::vector<KorobovSet> sets;

  [[nodiscard]] std::int64_t size() const { return window.total_points(); }
  [[nodiscard]] std::string_view label() const { return kind == SetKind::S ? "P1" : "P2"; }

  /// Visits fn(set, index, numerators) over all points in canonical order.
  template <class Fn>
  void for_each_point(Fn&& fn) const {
    for (const auto& set : sets) {
      set.for_each_point([&](std::int64_t i, std::span<const std::int64_t> num) { fn(set, i, num); });
    }
  }
};

/// Throws DomainError for m < 2 or d < 1.
[[nodiscard]] UnionPointSet union_set(SetKind kind, std::int64_t m, int d,
                                      Storage storage = Storage::automatic);

// Text export: per set a header line
//   # kind=<S|T> p=<p> d=<d> denom=<p or p^2>
// followed by one line of d space-separated numerators per point.
void write_points(std::ostream& out, const KorobovSet& set);
void write_points(std::ostream& out, const UnionPointSet& uset);

struct PointBlock {
  SetKind kind = SetKind::S;
  std::int64_t p = 0;
  int d = 0;
  std::int64_t denominator = 1;
  std::vector<RationalPoint> points;
};

/// Parses the export format. Throws DataError on malformed input.
[[nodiscard]] std::vector<PointBlock> read_points(std::istream& in);

}  // namespace kqmc
