#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>
#include <vector>

#include "oracles.hpp"
#include "ordbubble/factor.hpp"

using namespace ordbubble;

namespace {

Carrier abc() { return Carrier({"a", "b", "c"}); }

std::vector<Relation> equivalences(std::size_t n) {
  std::vector<Relation> out;
  const Carrier c = Carrier::canonical(n);
  oracle::for_each_matrix(n, [&](const oracle::Matrix& m) {
    if (oracle::equivalence(m)) out.push_back(oracle::to_relation(m, c));
  });
  return out;
}

// Weak saturation written out with explicit quantifiers.
bool weakly_saturated(const oracle::Matrix& r, const oracle::Matrix& e) {
  const std::size_t n = r.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        if (!(e[x][y] && r[y][z])) continue;
        bool found = false;
        for (std::size_t t = 0; t < n; ++t) found = found || (e[z][t] && r[x][t]);
        if (!found) return false;
      }
  return true;
}

}  // namespace

TEST(Equivalence, RejectsNonEquivalence) {
  try {
    EquivalenceRelation(make_relation(abc(), {{"a", "b"}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAnEquivalence);
  }
}

TEST(Classes, Examples) {
  EXPECT_EQ(classes(EquivalenceRelation::diagonal(abc())).block_count(), 3u);
  EXPECT_EQ(classes(EquivalenceRelation::full(abc())).block_count(), 1u);
  const auto p = classes(EquivalenceRelation(Relation::diagonal(abc()) |
                                             make_relation(abc(), {{"a", "b"}, {"b", "a"}})));
  ASSERT_EQ(p.block_count(), 2u);
  EXPECT_EQ(p.block(0), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(p.block(1), (std::vector<std::size_t>{2}));
  EXPECT_EQ(p.block_carrier().labels(), (std::vector<std::string>{"B0", "B1"}));
}

TEST(Classes, RoundTripAndBellNumbers) {
  const std::size_t bell[] = {0, 1, 2, 5, 15};
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto eqs = equivalences(n);
    EXPECT_EQ(eqs.size(), bell[n]);
    for (const auto& e : eqs) EXPECT_EQ(classes(EquivalenceRelation(e)).associated().relation(), e);
  }
}

TEST(Partition, RefinementMap) {
  const Partition fine = classes(EquivalenceRelation::diagonal(abc()));
  const Partition coarse = Partition::from_labels(abc(), {{"a", "c"}, {"b"}});
  ASSERT_TRUE(fine.refines(coarse));
  EXPECT_EQ(*fine.containment_map(coarse), (std::vector<std::size_t>{0, 1, 0}));
  EXPECT_FALSE(coarse.refines(fine));
  EXPECT_THROW(Partition::from_labels(abc(), {{"a"}, {"b"}}), Error);
}

TEST(FactorRelation, Examples) {
  const auto e = EquivalenceRelation(Relation::diagonal(abc()) |
                                     make_relation(abc(), {{"a", "c"}, {"c", "a"}}));
  const auto q = factor_relation(Relation::full(abc()), e);
  EXPECT_EQ(q.relation, Relation::full(q.partition.block_carrier()));

  // Strict part of {x1, x2} < {y} over its bubbles.
  const Carrier xy({"x1", "x2", "y"});
  const Relation f = make_relation(xy, {{"x1", "y"}, {"x2", "y"}});
  const auto bubbles = EquivalenceRelation(incomparability(f));
  const auto chain = factor_relation(f, bubbles);
  EXPECT_EQ(chain.relation, make_relation(chain.partition.block_carrier(), {{"B0", "B1"}}));

  try {
    factor_relation(make_relation(abc(), {{"a", "b"}}), e);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::NotSaturated);
    EXPECT_EQ(err.witness(), (std::vector<std::string>{"c", "a", "b"}));
  }
}

TEST(FactorRelation, BijectionOnSaturatedRelations) {
  const Carrier c = Carrier::canonical(3);
  for (const auto& er : equivalences(3)) {
    const EquivalenceRelation e(er);
    const std::size_t k = classes(e).block_count();
    std::set<std::vector<bool>> images;
    std::size_t saturated = 0;
    oracle::for_each_matrix(3, [&](const oracle::Matrix& m) {
      if (!oracle::saturated(m, oracle::of(er))) return;
      ++saturated;
      const auto q = factor_relation(oracle::to_relation(m, c), e).relation;
      std::vector<bool> flat;
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) flat.push_back(q.test(a, b));
      images.insert(flat);
    });
    EXPECT_EQ(saturated, std::size_t{1} << (k * k));
    EXPECT_EQ(images.size(), saturated);
  }
}

TEST(WeakFactor, AgreesWithFactorOnSaturatedRelations) {
  const Carrier c = Carrier::canonical(3);
  for (const auto& er : equivalences(3)) {
    const EquivalenceRelation e(er);
    oracle::for_each_matrix(3, [&](const oracle::Matrix& m) {
      if (!oracle::saturated(m, oracle::of(er))) return;
      const Relation r = oracle::to_relation(m, c);
      ASSERT_EQ(weak_factor_relation(r, e).relation, factor_relation(r, e).relation);
    });
  }
}

TEST(WeakFactor, IdentityQuotient) {
  const Relation r = Relation::diagonal(abc()) | make_relation(abc(), {{"a", "b"}});
  const auto q = weak_factor_relation(r, EquivalenceRelation::diagonal(abc()));
  EXPECT_EQ(oracle::of(q.relation), oracle::of(r));
}

TEST(WeakFactor, InheritedPropertiesUnderWeakSaturation) {
  const Carrier c = Carrier::canonical(3);
  for (const auto& er : equivalences(3)) {
    const EquivalenceRelation e(er);
    const auto em = oracle::of(er);
    oracle::for_each_matrix(3, [&](const oracle::Matrix& m) {
      if (!weakly_saturated(m, em)) return;
      const Relation r = oracle::to_relation(m, c);
      ASSERT_TRUE(check_saturation(r, er, SaturationMode::weak).holds);
      const auto q = oracle::of(weak_factor_relation(r, e).relation);
      if (oracle::reflexive(m)) {
        ASSERT_TRUE(oracle::reflexive(q));
      }
      if (oracle::transitive(m)) {
        ASSERT_TRUE(oracle::transitive(q));
      }
      bool condition = true;
      for (std::size_t x = 0; x < 3; ++x)
        for (std::size_t y = 0; y < 3; ++y)
          for (std::size_t z = 0; z < 3; ++z)
            if (m[x][y] && m[y][z] && em[x][z] && !em[x][y]) condition = false;
      ASSERT_EQ(oracle::antisymmetric(q), condition);
    });
  }
}

TEST(IndifferenceCurves, Examples) {
  const Carrier c({"a", "b", "c", "d"});
  EXPECT_EQ(indifference_curves(Relation::diagonal(c)).block_count(), 4u);
  const auto p = indifference_curves(
      Relation::diagonal(c) |
      make_relation(c, {{"a", "b"}, {"b", "a"}, {"b", "c"}, {"c", "b"}}));
  ASSERT_EQ(p.block_count(), 2u);
  EXPECT_EQ(p.block(0), (std::vector<std::size_t>{0, 1, 2}));
  try {
    indifference_curves(make_relation(c, {{"a", "b"}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAnIndifference);
  }
}

TEST(IndifferenceCurves, CoarserIndifferenceGivesUnionsOfCurves) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const Carrier c = Carrier::canonical(n);
    oracle::Matrix s = oracle::random_matrix(rng, n, 0.2);
    s = oracle::join(oracle::join(s, oracle::inverse(s)), oracle::diagonal(n));
    oracle::Matrix t = oracle::join(s, oracle::random_matrix(rng, n, 0.2));
    t = oracle::join(t, oracle::inverse(t));
    EXPECT_TRUE(indifference_curves(oracle::to_relation(s, c))
                    .refines(indifference_curves(oracle::to_relation(t, c))));
  }
}

TEST(Product, Examples) {
  const auto d = EquivalenceRelation::diagonal(abc());
  const auto dd = product_equivalence(d, d);
  EXPECT_EQ(dd.relation(), Relation::diagonal(dd.carrier()));
  EXPECT_EQ(dd.carrier().label(1), "(a,b)");
  const Carrier xy({"x", "y"});
  const auto ff = product_equivalence(EquivalenceRelation::full(abc()), EquivalenceRelation::full(xy));
  EXPECT_EQ(ff.relation(), Relation::full(ff.carrier()));
}

TEST(Product, SaturationMatchesSaturatedSubset) {
  const Carrier c = Carrier::canonical(2);
  for (const auto& er : equivalences(2)) {
    const EquivalenceRelation e(er);
    const auto ee = product_equivalence(e, e);
    oracle::for_each_matrix(2, [&](const oracle::Matrix& m) {
      const Relation r = oracle::to_relation(m, c);
      ASSERT_EQ(check_saturation(r, er, SaturationMode::full).holds,
                is_saturated_subset(pairs_as_subset(r), ee));
    });
  }
}

TEST(FactorThrough, IdentityAndErrors) {
  const Relation r = Relation::diagonal(abc()) | make_relation(abc(), {{"a", "b"}});
  const std::vector<std::size_t> id{0, 1, 2};
  const auto out = factor_through(id, EquivalenceRelation::diagonal(abc()), r, r);
  EXPECT_EQ(out.block_image, id);
  EXPECT_TRUE(out.increasing_on_quotient && out.surjective && out.kernel_matches && out.bijective);

  const auto glue_ab = EquivalenceRelation(Relation::diagonal(abc()) |
                                           make_relation(abc(), {{"a", "b"}, {"b", "a"}}));
  try {
    factor_through(id, glue_ab, r, r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotConstantOnClasses);
  }
  const std::vector<std::size_t> flip{1, 0, 2};
  try {
    factor_through(flip, EquivalenceRelation::diagonal(abc()), r, Relation::diagonal(abc()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotIncreasing);
  }
}
