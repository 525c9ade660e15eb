// Copyright (C) 2026 The spre authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "../support/fixtures.hpp"
#include "../support/raster.hpp"
#include "../support/random.hpp"
#include "spre/region.hpp"

using namespace spre;
using spre::testing::box;
using spre::testing::kUniverse;
using spre::testing::Raster;

namespace {

Region closed(std::vector<Box> boxes) { return Region(kUniverse, 2, std::move(boxes)); }
Region open(std::vector<Box> boxes) { return Region(kUniverse, 2, std::move(boxes), Topology::Open); }

double apply(std::string_view name, std::vector<Region> args) { return metric_fn(name, args); }

}  // namespace

TEST(Box, MeasureAndDegeneracy) {
  EXPECT_DOUBLE_EQ(box(0, 0, 10, 5).measure(2), 50.0);
  EXPECT_TRUE(box(3, 0, 3, 5).degenerate(2));
  EXPECT_FALSE(box(3, 0, 4, 5).degenerate(2));
  EXPECT_DOUBLE_EQ(Box::make3d(0, 0, 0, 2, 3, 4).measure(3), 24.0);
}

TEST(Region, RejectsUnsupportedDimension) {
  EXPECT_THROW(Region(kUniverse, 1), GeometryError);
  EXPECT_THROW(Region(kUniverse, 4), GeometryError);
}

TEST(Region, ClipsToUniverseAndMergesAdjacentBoxes) {
  Region r = closed({box(-10, 0, 10, 10), box(10, 0, 20, 10)});
  ASSERT_EQ(r.boxes().size(), 1u);
  EXPECT_EQ(r.boxes()[0], box(0, 0, 20, 10));
  EXPECT_TRUE(closed({box(200, 200, 300, 300)}).boxes().empty());
}

TEST(Region, IntersectOverlappingSquares) {
  Region r = intersect(closed({box(0, 0, 10, 10)}), closed({box(5, 5, 15, 15)}));
  ASSERT_EQ(r.boxes().size(), 1u);
  EXPECT_EQ(r.boxes()[0], box(5, 5, 10, 10));
  EXPECT_DOUBLE_EQ(measure(r), 25.0);
}

TEST(Region, IntersectSplitsAcrossAGap) {
  Region r = intersect(closed({box(0, 0, 4, 4), box(6, 0, 10, 4)}), closed({box(3, 0, 7, 4)}));
  EXPECT_EQ(r.boxes(), (std::vector<Box>{box(3, 0, 4, 4), box(6, 0, 7, 4)}));
  EXPECT_DOUBLE_EQ(measure(r), 8.0);
}

TEST(Region, UnionMeasureCountsOverlapOnce) {
  EXPECT_DOUBLE_EQ(measure(unite(closed({box(0, 0, 10, 10)}), closed({box(5, 5, 15, 15)}))), 175.0);
}

TEST(Region, ComplementFlipsTopology) {
  Region a = closed({box(0, 0, 10, 10)});
  Region c = complement(a);
  EXPECT_TRUE(c.is_open());
  EXPECT_DOUBLE_EQ(measure(c), 9900.0);
  EXPECT_FALSE(complement(c).is_open());
  EXPECT_DOUBLE_EQ(measure(complement(c)), 100.0);
}

TEST(Region, TouchingClosedBoxesShareAnEdge) {
  Region a = closed({box(0, 0, 10, 10)});
  Region b = closed({box(10, 0, 20, 10)});
  EXPECT_TRUE(is_non_empty(intersect(a, b)));
  EXPECT_DOUBLE_EQ(measure(intersect(a, b)), 0.0);
  EXPECT_FALSE(is_non_empty(intersect(interior(a), interior(b))));
}

TEST(Region, InteriorDropsSlivers) {
  Region r = closed({box(0, 0, 10, 10), box(50, 0, 50, 10)});
  EXPECT_TRUE(is_non_empty(closed({box(50, 0, 50, 10)})));
  EXPECT_FALSE(is_non_empty(interior(closed({box(50, 0, 50, 10)}))));
  EXPECT_EQ(interior(r).boxes().size(), 1u);
  EXPECT_TRUE(interior(r).is_open());
  EXPECT_FALSE(closure(interior(r)).is_open());
}

TEST(Region, SubsetIgnoresBoundaryOfOpenRegions) {
  Region left = open({box(0, 0, 5, 10)});
  Region right = open({box(5, 0, 10, 10)});
  Region whole = open({box(0, 0, 10, 10)});
  EXPECT_TRUE(is_subset(unite(left, right), whole));
  EXPECT_TRUE(is_subset(left, whole));
  EXPECT_FALSE(is_subset(whole, left));
  EXPECT_TRUE(is_subset(Region::empty(kUniverse, 2), left));
}

TEST(Region, EmptyAndFull) {
  EXPECT_FALSE(is_non_empty(Region::empty(kUniverse, 2)));
  EXPECT_DOUBLE_EQ(measure(Region::full(kUniverse, 2)), 10000.0);
  EXPECT_DOUBLE_EQ(measure(complement(Region::full(kUniverse, 2))), 0.0);
}

TEST(Region, MixedDimensionsAreRejected) {
  Region a = closed({box(0, 0, 1, 1)});
  Region b(Box::make3d(0, 0, 0, 10, 10, 10), 3, {Box::make3d(0, 0, 0, 1, 1, 1)});
  EXPECT_THROW(intersect(a, b), GeometryError);
}

TEST(Metric, CentroidsAndArea) {
  Region r = closed({box(0, 0, 10, 4)});
  EXPECT_DOUBLE_EQ(apply("area", {r}), 40.0);
  EXPECT_DOUBLE_EQ(apply("x", {r}), 5.0);
  EXPECT_DOUBLE_EQ(apply("y", {r}), 2.0);
  EXPECT_THROW(apply("z", {r}), MetricDomainError);
}

TEST(Metric, CentroidUsesBoundingHull) {
  Region r = closed({box(0, 0, 2, 2), box(8, 0, 10, 2)});
  EXPECT_DOUBLE_EQ(apply("x", {r}), 5.0);
}

TEST(Metric, DistanceBetweenCentroids) {
  EXPECT_DOUBLE_EQ(apply("dist", {closed({box(0, 0, 2, 2)}), closed({box(3, 4, 5, 6)})}), 5.0);
}

TEST(Metric, IntersectionOverUnion) {
  Region a = closed({box(0, 0, 10, 10)});
  Region b = closed({box(5, 0, 15, 10)});
  EXPECT_DOUBLE_EQ(apply("iou", {a, b}), 50.0 / 150.0);
  EXPECT_DOUBLE_EQ(apply("iou", {Region::empty(kUniverse, 2), Region::empty(kUniverse, 2)}), 0.0);
}

TEST(Metric, EmptyRegionHasNoCentroid) {
  EXPECT_THROW(apply("x", {Region::empty(kUniverse, 2)}), MetricDomainError);
  EXPECT_DOUBLE_EQ(apply("area", {Region::empty(kUniverse, 2)}), 0.0);
}

TEST(Metric, ArityAndNames) {
  EXPECT_EQ(metric_arity("dist"), 2);
  EXPECT_EQ(metric_arity("area"), 1);
  EXPECT_FALSE(metric_arity("speed").has_value());
  EXPECT_EQ(metric_names().size(), 7u);
  EXPECT_THROW(apply("area", {}), EvaluationError);
  EXPECT_THROW(apply("speed", {}), EvaluationError);
}

TEST(Metric, VolumeOfThreeDimensionalBox) {
  Region r(Box::make3d(0, 0, 0, 10, 10, 10), 3, {Box::make3d(1, 1, 1, 3, 4, 5)});
  EXPECT_DOUBLE_EQ(apply("volume", {r}), 24.0);
  EXPECT_DOUBLE_EQ(apply("z", {r}), 3.0);
}

// Random regions against the unit-grid raster.
TEST(RegionProperty, AgreesWithRaster) {
  spre::testing::Rng rng(7);
  for (int iter = 0; iter < 500; ++iter) {
    Region a = spre::testing::random_region(rng);
    Region b = spre::testing::random_region(rng);
    Raster ra = Raster::of(a);
    Raster rb = Raster::of(b);
    ASSERT_EQ(Raster::of(intersect(a, b)), ra & rb);
    ASSERT_EQ(Raster::of(unite(a, b)), ra | rb);
    ASSERT_EQ(Raster::of(complement(a)), ~ra);
    ASSERT_EQ(measure(a), ra.count());
    ASSERT_EQ(is_subset(interior(a), interior(b)), ra.subset_of(rb));
    ASSERT_EQ(complement(complement(a)).is_open(), a.is_open());
  }
}

TEST(RegionProperty, SubtractBoxPartitionsThePiece) {
  spre::testing::Rng rng(11);
  for (int iter = 0; iter < 500; ++iter) {
    Box piece = spre::testing::random_box(rng);
    Box cut = spre::testing::random_box(rng);
    std::vector<Box> out;
    subtract_box(piece, cut, 2, out);
    double kept = 0.0;
    for (const Box& b : out) {
      kept += b.measure(2);
      ASSERT_FALSE(b.intersection(cut, 2).has_value() && b.intersection(cut, 2)->measure(2) > 0);
    }
    const auto overlap = piece.intersection(cut, 2);
    ASSERT_DOUBLE_EQ(kept + (overlap ? overlap->measure(2) : 0.0), piece.measure(2));
  }
}
