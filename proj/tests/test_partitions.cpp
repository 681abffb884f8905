#include "toricdt/partitions.hpp"
#include "toricdt/gwref.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace toricdt;

namespace {

// Plane partitions of n counted as height arrays h[i][j], weakly decreasing
// along rows and columns. Independent of the box-adding enumeration.
long count_plane_partitions(int n)
{
  long count = 0;
  std::vector<std::vector<int>> h;
  auto rec = [&](auto&& self, int remaining, std::size_t row, std::size_t col) -> void {
    if (remaining == 0) {
      ++count;
      return;
    }
    // cap from the cell above and the cell to the left
    int cap = remaining;
    if (row > 0)
      cap = std::min(cap, col < h[row - 1].size() ? h[row - 1][col] : 0);
    if (col > 0)
      cap = std::min(cap, h[row][col - 1]);
    for (int v = cap; v >= 1; --v) {
      h[row].push_back(v);
      self(self, remaining - v, row, col + 1);
      h[row].pop_back();
    }
    // close this row and open the next one
    if (col > 0) {
      h.emplace_back();
      self(self, remaining, row + 1, 0);
      h.pop_back();
    }
  };
  h.emplace_back();
  rec(rec, n, 0, 0);
  return count;
}

std::map<long, long> volume_histogram(const Partition3D::Legs& legs, long vmax)
{
  std::map<long, long> hist;
  for (const auto& pi : enumerate3d(legs, vmax))
    ++hist[renorm_volume(pi)];
  return hist;
}

} // namespace

TEST(Partition2D, RejectsIncreasingRows)
{
  EXPECT_THROW(Partition2D({1, 2}), std::invalid_argument);
  EXPECT_THROW(Partition2D({2, 0}), std::invalid_argument);
}

TEST(Partition2D, Transpose)
{
  const Partition2D l{3, 1};
  EXPECT_EQ(l.transpose(), (Partition2D{2, 1, 1}));
  EXPECT_EQ(l.transpose().transpose(), l);
  EXPECT_EQ(l.size(), 4);
}

TEST(Partition2D, EdgeFunctional)
{
  // cells (1,1),(1,2),(2,1) of (2,1)
  EXPECT_EQ(f_edge(1, 1, Partition2D{2, 1}), 5);
  EXPECT_EQ(f_edge(-1, -1, Partition2D{1}), 1);
  EXPECT_EQ(f_edge(-1, -1, Partition2D{2}), 1);
  EXPECT_EQ(f_edge(0, 0, Partition2D{}), 0);
}

TEST(Partition2D, EnumerateCounts)
{
  const int p[] = {1, 1, 2, 3, 5, 7, 11, 15, 22};
  for (int n = 0; n <= 8; ++n)
    EXPECT_EQ(static_cast<int>(enumerate2d(n).size()), p[n]) << n;
  EXPECT_EQ(enumerate2d(3).front(), Partition2D{3});
  EXPECT_EQ(enumerate2d(3).back(), (Partition2D{1, 1, 1}));
}

TEST(Partition3D, RejectsNonIdeal)
{
  EXPECT_THROW(Partition3D({}, {{0, 0, 1}}), std::invalid_argument);
  EXPECT_THROW(Partition3D({}, {{0, 0, 0}, {0, 0, 0}}), std::invalid_argument);
  EXPECT_THROW(Partition3D({Partition2D{1}, {}, {}}, {{0, 0, 0}}), std::invalid_argument);
  EXPECT_NO_THROW(Partition3D({}, {{0, 0, 0}, {1, 0, 0}}));
}

TEST(Partition3D, MinimalVolumes)
{
  EXPECT_EQ(renorm_volume(minimal3d({})), 0);
  EXPECT_EQ(renorm_volume(minimal3d({Partition2D{1}, {}, {}})), 0);
  // two legs of size 1 meet in one box
  EXPECT_EQ(renorm_volume(minimal3d({Partition2D{1}, Partition2D{1}, {}})), -1);
  EXPECT_EQ(renorm_volume(minimal3d({Partition2D{1}, Partition2D{1}, Partition2D{1}})), -2);
}

TEST(Partition3D, VolumeIndependentOfCutoff)
{
  const Partition3D pi({Partition2D{2, 1}, Partition2D{1}, Partition2D{1, 1}}, {});
  const long v = renorm_volume(pi);
  for (int n = pi.extent(); n < pi.extent() + 4; ++n)
    EXPECT_EQ(renorm_volume_at(pi, n), v);
}

TEST(Partition3D, AddableAndRemovable)
{
  const Partition3D empty;
  EXPECT_EQ(empty.addable_boxes(), (std::vector<Box>{{0, 0, 0}}));
  const Partition3D one({}, {{0, 0, 0}});
  EXPECT_EQ(one.addable_boxes().size(), 3u);
  EXPECT_EQ(one.removable_boxes(), (std::vector<Box>{{0, 0, 0}}));
  EXPECT_EQ(one.with_box({1, 0, 0}).without_box({1, 0, 0}), one);
}

TEST(Enumerate3D, PlanePartitionCountsMatchHeightOracle)
{
  const auto hist = volume_histogram({}, 8);
  for (int n = 0; n <= 8; ++n)
    EXPECT_EQ(hist.at(n), count_plane_partitions(n)) << n;
}

TEST(Enumerate3D, MatchesMacMahonProduct)
{
  const auto hist = volume_histogram({}, 8);
  const auto m = macmahon_coeffs(8, false, 1);
  for (int n = 0; n <= 8; ++n)
    EXPECT_EQ(Rational(hist.at(n)), m[static_cast<std::size_t>(n)]) << n;
}

TEST(Enumerate3D, OneLegGeneratingFunction)
{
  // one leg (1): M(q) / (1-q), counted directly
  const auto hist = volume_histogram({Partition2D{1}, {}, {}}, 6);
  const auto m = macmahon_coeffs(6, false, 1);
  Rational acc = 0;
  for (int n = 0; n <= 6; ++n) {
    acc += m[static_cast<std::size_t>(n)];
    EXPECT_EQ(Rational(hist.at(n)), acc) << n;
  }
}

TEST(Enumerate3D, OrderedAndDistinct)
{
  const auto all = enumerate3d({Partition2D{1}, Partition2D{1}, {}}, 2);
  for (std::size_t i = 1; i < all.size(); ++i) {
    EXPECT_LE(renorm_volume(all[i - 1]), renorm_volume(all[i]));
    EXPECT_FALSE(all[i - 1] == all[i]);
  }
}

TEST(Enumerate3D, BelowMinimumThrows)
{
  EXPECT_THROW(enumerate3d({Partition2D{1}, Partition2D{1}, {}}, -2), std::invalid_argument);
}
