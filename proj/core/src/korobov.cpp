#include "kqmc/korobov.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "kqmc/errors.hpp"
#include "kqmc/modular.hpp"

namespace kqmc {

std::vector<double> RationalPoint::to_double() const {
  std::vector<double> x;
  x.reserve(numerators.size());
  for (const auto num : numerators) {
    x.push_back(static_cast<double>(num) / static_cast<double>(denominator));
  }
  return x;
}

std::string_view to_string(SetKind kind) { return kind == SetKind::S ? "S" : "T"; }

SetKind set_kind_from_string(std::string_view text) {
  if (text == "S" || text == "s" || text == "P1" || text == "p1") return SetKind::S;
  if (text == "T" || text == "t" || text == "P2" || text == "p2") return SetKind::T;
  throw DomainError("unknown point set kind '" + std::string(text) + "'");
}

KorobovSet::KorobovSet(SetKind kind, std::int64_t p, int d, Storage storage)
    : kind_(kind), p_(p), d_(d) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw DomainError("Korobov set needs a prime p, got " + std::to_string(p));
  }
  if (d < 1) throw DomainError("Korobov set needs d >= 1, got " + std::to_string(d));
  // p^2 must fit comfortably below 2^63 together with the 128-bit products.
  if (p > 3'037'000'499LL) throw DomainError("p too large for 64-bit numerators");

  const bool materialize = storage == Storage::materialized ||
                           (storage == Storage::automatic && size() <= kStreamingThreshold);
  if (!materialize) return;
  const auto dd = static_cast<std::size_t>(d_);
  numerators_.resize(static_cast<std::size_t>(size()) * dd);
  for (std::int64_t i = 0; i < size(); ++i) {
    fill_row(i, std::span<std::int64_t>(numerators_.data() + static_cast<std::size_t>(i) * dd, dd));
  }
}

void KorobovSet::fill_row(std::int64_t index, std::span<std::int64_t> row) const {
  const auto mod = static_cast<std::uint64_t>(denominator());
  if (kind_ == SetKind::S) {
    const auto h = static_cast<std::uint64_t>(index);
    std::uint64_t power = 1;
    for (auto& value : row) {
      power = mulmod(power, h, mod);
      value = static_cast<std::int64_t>(power);
    }
  } else {
    const auto h = static_cast<std::uint64_t>(index / p_);
    const auto l = static_cast<std::uint64_t>(index % p_);
    std::uint64_t power = h % mod;
    for (auto& value : row) {
      power = mulmod(power, l, mod);
      value = static_cast<std::int64_t>(power);
    }
  }
}

std::int64_t KorobovSet::numerator(std::int64_t index, int j) const {
  if (index < 0 || index >= size() || j < 0 || j >= d_) {
    throw DomainError("Korobov point index out of range");
  }
  if (materialized()) {
    return numerators_[static_cast<std::size_t>(index) * static_cast<std::size_t>(d_) +
                       static_cast<std::size_t>(j)];
  }
  const auto mod = static_cast<std::uint64_t>(denominator());
  const auto exponent = static_cast<std::uint64_t>(j) + 1;
  if (kind_ == SetKind::S) {
    return static_cast<std::int64_t>(powmod(static_cast<std::uint64_t>(index), exponent, mod));
  }
  const auto h = static_cast<std::uint64_t>(index / p_);
  const auto l = static_cast<std::uint64_t>(index % p_);
  return static_cast<std::int64_t>(mulmod(h, powmod(l, exponent, mod), mod));
}

RationalPoint KorobovSet::point(std::int64_t index) const {
  if (index < 0 || index >= size()) throw DomainError("Korobov point index out of range");
  RationalPoint x;
  x.denominator = denominator();
  x.numerators.resize(static_cast<std::size_t>(d_));
  fill_row(index, x.numerators);
  return x;
}

std::vector<RationalPoint> KorobovSet::points() const {
  std::vector<RationalPoint> out;
  out.reserve(static_cast<std::size_t>(size()));
  for_each_point([&](std::int64_t, std::span<const std::int64_t> num) {
    out.push_back(RationalPoint{{num.begin(), num.end()}, denominator()});
  });
  return out;
}

KorobovSet s_set(std::int64_t p, int d, Storage storage) { return {SetKind::S, p, d, storage}; }

KorobovSet t_set(std::int64_t p, int d, Storage storage) { return {SetKind::T, p, d, storage}; }

UnionPointSet union_set(SetKind kind, std::int64_t m, int d, Storage storage) {
  if (d < 1) throw DomainError("union set needs d >= 1, got " + std::to_string(d));
  UnionPointSet uset;
  uset.kind = kind;
  uset.m = m;
  uset.d = d;
  uset.window = enumerate_window(m);
  if (storage == Storage::automatic) {
    storage = uset.size() <= kStreamingThreshold ? Storage::materialized : Storage::streaming;
  }
  uset.sets.reserve(uset.window.size());
  for (const auto p : uset.window.primes) uset.sets.emplace_back(kind, p, d, storage);
  return uset;
}

void write_points(std::ostream& out, const KorobovSet& set) {
  out << "# kind=" << to_string(set.kind()) << " p=" << set.p() << " d=" << set.dim()
      << " denom=" << set.denominator() << '\n';
  set.for_each_point([&](std::int64_t, std::span<const std::int64_t> num) {
    for (std::size_t j = 0; j < num.size(); ++j) {
      if (j > 0) out << ' ';
      out << num[j];
    }
    out << '\n';
  });
}

void write_points(std::ostream& out, const UnionPointSet& uset) {
  for (const auto& set : uset.sets) write_points(out, set);
}

namespace {

std::int64_t header_field(const std::string& line, const std::string& key) {
  const auto pos = line.find(" " + key + "=");
  if (pos == std::string::npos) throw DataError("point header missing '" + key + "': " + line);
  std::istringstream in(line.substr(pos + key.size() + 2));
  std::int64_t value = 0;
  if (!(in >> value)) throw DataError("bad '" + key + "' in point header: " + line);
  return value;
}

}  // namespace

std::vector<PointBlock> read_points(std::istream& in) {
  std::vector<PointBlock> blocks;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      PointBlock block;
      const auto kpos = line.find("kind=");
      if (kpos == std::string::npos || kpos + 5 >= line.size()) {
        throw DataError("point header missing 'kind': " + line);
      }
      block.kind = set_kind_from_string(line.substr(kpos + 5, 1));
      block.p = header_field(line, "p");
      block.d = static_cast<int>(header_field(line, "d"));
      block.denominator = header_field(line, "denom");
      if (block.d < 1 || block.denominator < 1) throw DataError("bad point header: " + line);
      blocks.push_back(std::move(block));
      continue;
    }
    if (blocks.empty()) throw DataError("point data before header");
    auto& block = blocks.back();
    std::istringstream row(line);
    RationalPoint x;
    x.denominator = block.denominator;
    std::int64_t value = 0;
    while (row >> value) {
      if (value < 0 || value >= block.denominator) {
        throw DataError("numerator outside [0, denom): " + line);
      }
      x.numerators.push_back(value);
    }
    if (!row.eof() || x.dim() != static_cast<std::size_t>(block.d)) {
      throw DataError("malformed point line: " + line);
    }
    block.points.push_back(std::move(x));
  }
  return blocks;
}

}  // namespace kqmc
