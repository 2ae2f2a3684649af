#include <gtest/gtest.h>

#include <algorithm>

#include "torictower/cone.hpp"
#include "torictower/random.hpp"
#include "torictower/reference.hpp"

using namespace torictower;

namespace {

Cone cone2(std::initializer_list<LatticeVector> gens) { return Cone::from_rays(2, gens); }

bool has_kind(const ValidationReport& r, const std::string& kind, const std::string& message) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const Violation& v) { return v.kind == kind && v.message == message; });
}

// Strongly convex by construction: every generator pairs positively with w.
Cone random_pointed_cone(Rng& rng, std::size_t n) {
  LatticeVector w(n);
  for (std::size_t k = 0; k < n; ++k) w[k] = static_cast<long>(rng.uniform(1, 3));
  const auto count = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(n) + 3));
  std::vector<LatticeVector> gens;
  while (gens.size() < count) {
    LatticeVector v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = static_cast<long>(rng.uniform(-3, 3));
    if (dot(w, v) > 0) gens.push_back(v);
  }
  return Cone::from_rays(n, gens);
}

}  // namespace

TEST(DualCone, OrthantIsSelfDual) {
  const Cone orthant = cone2({{1, 0}, {0, 1}});
  EXPECT_EQ(dual_cone(orthant), orthant);
}

TEST(DualCone, WorkedExample) {
  const Cone c = cone2({{1, 0}, {1, 2}});
  const Cone d = dual_cone(c);
  EXPECT_EQ(d, cone2({{0, 1}, {2, -1}}));
  // Facet-enumeration oracle agrees.
  EXPECT_EQ(reference::facet_normals_by_enumeration(c.generators(), 2),
            (std::vector<LatticeVector>{{0, 1}, {2, -1}}));
}

TEST(DualCone, WholePlaneDualsToZero) {
  const Cone plane(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
  const Cone d = dual_cone(plane);
  EXPECT_TRUE(d.generators().empty());
  EXPECT_EQ(d.dim(), 0u);
}

TEST(DualCone, ZeroConeDualsToWholeSpace) {
  const Cone d = dual_cone(Cone::zero(2));
  EXPECT_EQ(d.dim(), 2u);
  EXPECT_FALSE(d.is_strongly_convex());
  EXPECT_TRUE(d.contains(LatticeVector{-5, 7}));
}

TEST(DualCone, InvolutiveOnRandomPointedCones) {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
    const Cone raw = random_pointed_cone(rng, n);
    const Cone c = dual_cone(dual_cone(raw));
    ASSERT_EQ(dual_cone(dual_cone(c)), c) << raw.to_string();
    for (const auto& g : raw.generators()) EXPECT_TRUE(c.contains(g)) << raw.to_string();
    for (const auto& g : c.generators())
      EXPECT_TRUE(std::binary_search(raw.generators().begin(), raw.generators().end(), g)) << raw.to_string();
    if (c.dim() == n)
      EXPECT_EQ(dual_cone(c).generators(), reference::facet_normals_by_enumeration(raw.generators(), n))
          << raw.to_string();
  }
}

TEST(ConeContains, Examples) {
  EXPECT_TRUE(cone_contains(cone2({{1, 0}, {0, 1}}), LatticeVector{1, 1}));
  EXPECT_FALSE(cone_contains(cone2({{1, 0}, {1, 2}}), LatticeVector{0, 1}));
  EXPECT_TRUE(cone_contains(cone2({{1, 0}, {1, 2}}), LatticeVector{0, 0}));
  EXPECT_THROW(cone_contains(cone2({{1, 0}}), LatticeVector{1, 0, 0}), DimensionError);
}

TEST(ConeContains, AgreesWithCaratheodory) {
  Rng rng(77);
  for (int trial = 0; trial < 150; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
    const Cone c = random_pointed_cone(rng, n);
    for (int k = 0; k < 8; ++k) {
      LatticeVector v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<long>(rng.uniform(-4, 4));
      EXPECT_EQ(cone_contains(c, v), reference::caratheodory_contains(c.generators(), v))
          << c.to_string() << " " << v;
    }
  }
}

TEST(Cone, FacesOfTheOrthant) {
  const Cone orthant = Cone::from_rays(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  EXPECT_EQ(orthant.faces().size(), 8u);
  EXPECT_EQ(orthant.facets().size(), 3u);
}

TEST(FanValidate, AffinePlaneIsValid) { EXPECT_TRUE(fan_validate(affine_space_fan(2)).ok()); }

TEST(FanValidate, ProjectiveSpacesAreValid) {
  for (std::size_t n = 1; n <= 4; ++n) EXPECT_TRUE(fan_validate(projective_space_fan(n)).ok()) << n;
}

TEST(FanValidate, OverlappingInteriors) {
  const Fan f(2, {cone2({{1, 0}, {1, 2}}), cone2({{1, 1}, {0, 1}})});
  EXPECT_TRUE(has_kind(fan_validate(f), "intersection-not-a-face", "intersection not a face"));
}

TEST(FanValidate, NonPrimitiveRay) {
  const Fan f(2, {Cone(2, {{2, 4}})});
  EXPECT_TRUE(has_kind(fan_validate(f), "non-primitive-ray", "non-primitive ray"));
}

TEST(Fan, ProductOfProjectiveLines) {
  const Fan f = product_fan(projective_space_fan(1), projective_space_fan(1));
  EXPECT_EQ(f.all_rays().size(), 4u);
  EXPECT_EQ(f.maximal_cones().size(), 4u);
  EXPECT_TRUE(fan_validate(f).ok());
  EXPECT_TRUE(f.support_contains(LatticeVector{-3, 5}));
}

TEST(Fan, AllConesOfAffinePlane) {
  EXPECT_EQ(affine_space_fan(2).all_cones().size(), 4u);
}
