#ifndef TORICDT_PARTITIONS_HPP
#define TORICDT_PARTITIONS_HPP

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace toricdt {

using Box = std::array<int, 3>;

/// The two coordinate axes complementary to `axis`, in increasing order.
constexpr std::array<int, 2> other_axes(int axis)
{
  switch (axis) {
  case 0: return {1, 2};
  case 1: return {0, 2};
  default: return {0, 1};
  }
}

/// Young diagram stored as weakly decreasing positive row lengths.
/// Cells are addressed 0-based as (row, column); the 1-based (i, j) of the
/// edge functional is (row + 1, column + 1).
class Partition2D {
public:
  Partition2D() = default;

  explicit Partition2D(std::vector<int> rows) : rows_(std::move(rows))
  {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (rows_[i] < 1)
        throw std::invalid_argument("partition rows must be positive");
      if (i > 0 && rows_[i] > rows_[i - 1])
        throw std::invalid_argument("partition rows must be weakly decreasing");
    }
  }

  Partition2D(std::initializer_list<int> rows) : Partition2D(std::vector<int>(rows)) {}

  const std::vector<int>& rows() const { return rows_; }
  bool empty() const { return rows_.empty(); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  int num_cols() const { return rows_.empty() ? 0 : rows_.front(); }

  int size() const
  {
    int n = 0;
    for (int r : rows_)
      n += r;
    return n;
  }

  bool contains(int row, int col) const
  {
    return row >= 0 && col >= 0 && row < num_rows() && col < rows_[static_cast<std::size_t>(row)];
  }

  Partition2D transpose() const
  {
    std::vector<int> cols(static_cast<std::size_t>(num_cols()), 0);
    for (int r : rows_)
      for (int j = 0; j < r; ++j)
        ++cols[static_cast<std::size_t>(j)];
    Partition2D t;
    t.rows_ = std::move(cols);
    return t;
  }

  /// Cells in row-major order.
  std::vector<std::pair<int, int>> cells() const
  {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < num_rows(); ++i)
      for (int j = 0; j < rows_[static_cast<std::size_t>(i)]; ++j)
        out.emplace_back(i, j);
    return out;
  }

  std::string str() const
  {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < rows_.size(); ++i)
      os << (i ? "," : "") << rows_[i];
    os << ')';
    return os.str();
  }

  auto operator<=>(const Partition2D&) const = default;

private:
  std::vector<int> rows_;
};

/// Normal degrees (m, m') of an invariant line, the bundle O(m) + O(m').
/// m pairs with the lower of the two transverse axes.
struct EdgeFrame {
  int m = 0;
  int mprime = 0;

  /// Degree condition for a rational curve in a Calabi-Yau 3-fold.
  bool is_cy() const { return m + mprime == -2; }

  bool operator==(const EdgeFrame&) const = default;
};

/// Sum over cells (i, j) of m(i-1) + m'(j-1) + 1, cells indexed from (1, 1).
inline long f_edge(int m, int mprime, const Partition2D& lambda)
{
  long total = 0;
  for (auto [row, col] : lambda.cells())
    total += static_cast<long>(m) * row + static_cast<long>(mprime) * col + 1;
  return total;
}

/// Order ideal in Z>=0^3 with prescribed asymptotics along the three axes.
///
/// legs[i] lives in the plane of the two remaining axes; its row index runs
/// along the lower of those axes and its column index along the higher one.
/// The box set is the union of the three leg cylinders plus the finite set
/// `extra`, kept sorted.
class Partition3D {
public:
  using Legs = std::array<Partition2D, 3>;

  Partition3D() = default;

  explicit Partition3D(Legs legs, std::vector<Box> extra = {})
      : legs_(std::move(legs)), extra_(std::move(extra))
  {
    std::sort(extra_.begin(), extra_.end());
    if (std::adjacent_find(extra_.begin(), extra_.end()) != extra_.end())
      throw std::invalid_argument("duplicate extra box");
    for (const Box& b : extra_) {
      if (b[0] < 0 || b[1] < 0 || b[2] < 0)
        throw std::invalid_argument("extra box with negative coordinate");
      if (in_legs(b))
        throw std::invalid_argument("extra box overlaps the leg cylinders");
    }
    for (const Box& b : extra_)
      for (int i = 0; i < 3; ++i) {
        if (b[static_cast<std::size_t>(i)] == 0)
          continue;
        Box below = b;
        --below[static_cast<std::size_t>(i)];
        if (!contains(below))
          throw std::invalid_argument("box set is not an order ideal");
      }
  }

  const Legs& legs() const { return legs_; }
  const Partition2D& leg(int axis) const { return legs_[static_cast<std::size_t>(axis)]; }
  const std::vector<Box>& extra() const { return extra_; }

  bool in_leg(int axis, const Box& b) const
  {
    const auto [lo, hi] = other_axes(axis);
    return leg(axis).contains(b[static_cast<std::size_t>(lo)], b[static_cast<std::size_t>(hi)]);
  }

  bool in_legs(const Box& b) const { return in_leg(0, b) || in_leg(1, b) || in_leg(2, b); }

  int leg_count(const Box& b) const
  {
    return static_cast<int>(in_leg(0, b)) + static_cast<int>(in_leg(1, b)) + static_cast<int>(in_leg(2, b));
  }

  bool contains(const Box& b) const
  {
    if (b[0] < 0 || b[1] < 0 || b[2] < 0)
      return false;
    return in_legs(b) || std::binary_search(extra_.begin(), extra_.end(), b);
  }

  /// Every coordinate that is not absorbed by a leg cylinder lies below this bound.
  int extent() const
  {
    int e = 0;
    for (const auto& l : legs_)
      e = std::max({e, l.num_rows(), l.num_cols()});
    for (const Box& b : extra_)
      e = std::max({e, b[0] + 1, b[1] + 1, b[2] + 1});
    return e;
  }

  /// Boxes outside the partition whose lower neighbours are all inside;
  /// these are also the minimal generators of the monomial ideal.
  std::vector<Box> addable_boxes() const
  {
    std::vector<Box> out;
    const int e = extent();
    for (int a = 0; a <= e; ++a)
      for (int b = 0; b <= e; ++b)
        for (int c = 0; c <= e; ++c) {
          const Box box{a, b, c};
          if (contains(box))
            continue;
          bool ok = true;
          for (int i = 0; i < 3 && ok; ++i) {
            if (box[static_cast<std::size_t>(i)] == 0)
              continue;
            Box below = box;
            --below[static_cast<std::size_t>(i)];
            ok = contains(below);
          }
          if (ok)
            out.push_back(box);
        }
    return out;
  }

  /// Extra boxes whose removal leaves an order ideal.
  std::vector<Box> removable_boxes() const
  {
    std::vector<Box> out;
    for (const Box& b : extra_) {
      bool ok = true;
      for (int i = 0; i < 3 && ok; ++i) {
        Box above = b;
        ++above[static_cast<std::size_t>(i)];
        ok = !contains(above);
      }
      if (ok)
        out.push_back(b);
    }
    return out;
  }

  Partition3D with_box(const Box& b) const
  {
    auto extra = extra_;
    extra.push_back(b);
    return Partition3D(legs_, std::move(extra));
  }

  Partition3D without_box(const Box& b) const
  {
    auto extra = extra_;
    extra.erase(std::remove(extra.begin(), extra.end(), b), extra.end());
    return Partition3D(legs_, std::move(extra));
  }

  bool operator==(const Partition3D&) const = default;

private:
  Legs legs_{};
  std::vector<Box> extra_;
};

inline Partition3D minimal3d(const Partition3D::Legs& legs) { return Partition3D(legs); }

/// #{pi in [0..N]^3} - (N+1) * sum |legs|, for an explicit cutoff N.
inline long renorm_volume_at(const Partition3D& pi, int cutoff)
{
  long count = 0;
  for (int a = 0; a <= cutoff; ++a)
    for (int b = 0; b <= cutoff; ++b)
      for (int c = 0; c <= cutoff; ++c)
        if (pi.contains({a, b, c}))
          ++count;
  long legs = 0;
  for (const auto& l : pi.legs())
    legs += l.size();
  return count - static_cast<long>(cutoff + 1) * legs;
}

/// Renormalized volume; may be negative.
inline long renorm_volume(const Partition3D& pi) { return renorm_volume_at(pi, pi.extent()); }

/// All partitions of n, largest parts first (reverse lexicographic).
inline std::vector<Partition2D> enumerate2d(int n)
{
  if (n < 0)
    throw std::invalid_argument("enumerate2d: negative size");
  std::vector<Partition2D> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int maxpart) -> void {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(remaining, maxpart); p >= 1; --p) {
      cur.push_back(p);
      self(self, remaining - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

/// Every 3D partition with the given legs and renormalized volume <= vmax,
/// ordered by volume and then by the sorted extra-box list.
inline std::vector<Partition3D> enumerate3d(const Partition3D::Legs& legs, long vmax)
{
  const Partition3D base = minimal3d(legs);
  const long vmin = renorm_volume(base);
  if (vmax < vmin) {
    std::ostringstream os;
    os << "enumerate3d: vmax " << vmax << " is below the minimal renormalized volume " << vmin;
    throw std::invalid_argument(os.str());
  }
  std::vector<Partition3D> out{base};
  std::vector<Partition3D> level{base};
  for (long v = vmin + 1; v <= vmax; ++v) {
    std::set<std::vector<Box>> seen;
    for (const auto& pi : level)
      for (const Box& b : pi.addable_boxes()) {
        auto extra = pi.extra();
        extra.insert(std::upper_bound(extra.begin(), extra.end(), b), b);
        seen.insert(std::move(extra));
      }
    level.clear();
    for (const auto& extra : seen)
      level.emplace_back(legs, extra);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

} // namespace toricdt

#endif // TORICDT_PARTITIONS_HPP
