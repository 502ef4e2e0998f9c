#include <gtest/gtest.h>

#include <random>
#include <set>
#include <vector>

#include "oracles.hpp"
#include "ordbubble/structure.hpp"

using namespace ordbubble;

namespace {

Carrier abc() { return Carrier({"a", "b", "c"}); }

Relation two_bubbles() {
  const Carrier c({"x1", "x2", "y"});
  return Relation::diagonal(c) | make_relation(c, {{"x1", "y"}, {"x2", "y"}});
}

std::size_t count_by_filter(std::size_t n) {
  std::size_t count = 0;
  oracle::for_each_matrix(n, [&](const oracle::Matrix& m) { count += oracle::preorder(m); });
  return count;
}

// Pairs (E, F): E an equivalence, F asymmetric, transitive and E-saturated.
std::size_t count_pairs(std::size_t n) {
  std::vector<oracle::Matrix> eqs, strict;
  oracle::for_each_matrix(n, [&](const oracle::Matrix& m) {
    if (oracle::equivalence(m)) eqs.push_back(m);
    if (oracle::asymmetric(m) && oracle::transitive(m)) strict.push_back(m);
  });
  std::size_t count = 0;
  for (const auto& e : eqs)
    for (const auto& f : strict) count += oracle::saturated(f, e);
  return count;
}

}  // namespace

TEST(Split, Examples) {
  const auto d = split_preorder(Relation::diagonal(abc()));
  EXPECT_EQ(d.equivalence.relation(), Relation::diagonal(abc()));
  EXPECT_TRUE(d.strict.empty());
  const auto full = split_preorder(Relation::full(abc()));
  EXPECT_EQ(full.equivalence.relation(), Relation::full(abc()));
  EXPECT_TRUE(full.strict.empty());
  EXPECT_THROW(split_preorder(make_relation(abc(), {{"a", "b"}})), Error);
}

TEST(Join, Examples) {
  const Relation strict = make_relation(abc(), {{"a", "b"}, {"b", "c"}, {"a", "c"}});
  const Relation linear = join_pair(EquivalenceRelation::diagonal(abc()), strict);
  EXPECT_TRUE(is_linear_order(linear));

  const auto glue = EquivalenceRelation(Relation::diagonal(abc()) |
                                        make_relation(abc(), {{"a", "b"}, {"b", "a"}}));
  const Relation r = join_pair(glue, Relation(abc()));
  EXPECT_EQ(classes(EquivalenceRelation(symmetric_part(r))).block_count(), 2u);
  EXPECT_TRUE(asymmetric_part(r).empty());

  try {
    join_pair(EquivalenceRelation::diagonal(abc()), make_relation(abc(), {{"a", "b"}, {"b", "a"}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PairInvalid);
    EXPECT_EQ(e.witness(), (std::vector<std::string>{"a", "b"}));
  }
}

TEST(Enumeration, PreorderCounts) {
  EXPECT_EQ(enumerate_preorders(1).size(), 1u);
  EXPECT_EQ(enumerate_preorders(2).size(), 4u);
  EXPECT_EQ(enumerate_preorders(3).size(), 29u);
  EXPECT_EQ(enumerate_preorders(4).size(), 355u);
  for (std::size_t n = 1; n <= 3; ++n) {
    EXPECT_EQ(enumerate_preorders(n).size(), count_by_filter(n));
    EXPECT_EQ(count_pairs(n), count_by_filter(n));
  }
  EXPECT_THROW(enumerate_preorders(5), Error);
}

TEST(Enumeration, LexicographicOrderWithoutRepeats) {
  const auto all = enumerate_preorders(3);
  std::vector<oracle::Matrix> flat;
  for (const auto& r : all) flat.push_back(oracle::of(r));
  EXPECT_TRUE(std::is_sorted(flat.begin(), flat.end()));
  EXPECT_EQ(std::set<oracle::Matrix>(flat.begin(), flat.end()).size(), flat.size());
}

TEST(Split, RoundTripsOnAllSmallPreorders) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& r : enumerate_preorders(n)) {
      const auto s = split_preorder(r);
      ASSERT_EQ(join_pair(s.equivalence, s.strict), r);
    }
}

TEST(Decompose, TwoBubbleExample) {
  const BubbleSystem sys = bubble_decompose(two_bubbles());
  ASSERT_EQ(sys.index().size(), 2u);
  EXPECT_EQ(sys.bubbles()[0].elements, (std::vector<std::string>{"x1", "x2"}));
  EXPECT_EQ(sys.bubbles()[0].inner.relation(), Relation::diagonal(Carrier({"x1", "x2"})));
  EXPECT_EQ(sys.bubbles()[1].elements, (std::vector<std::string>{"y"}));
  EXPECT_TRUE(is_linear_order(sys.index_loset().relation()));
  EXPECT_EQ(bubble_compose(sys), two_bubbles());
}

TEST(Decompose, CompletePreorderBubblesAreIndifferenceClasses) {
  const Relation r = Relation::diagonal(abc()) |
                     make_relation(abc(), {{"a", "b"}, {"b", "a"}, {"a", "c"}, {"b", "c"}});
  const BubbleSystem sys = bubble_decompose(r);
  ASSERT_EQ(sys.bubbles().size(), 2u);
  EXPECT_EQ(sys.bubbles()[0].elements, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(sys.bubbles()[0].inner.relation(), Relation::full(Carrier({"a", "b"})));
}

TEST(Decompose, CompletePreordersHaveSingleClassBubbles) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& r : enumerate_preorders(n)) {
      if (!check_complete(r).holds) continue;
      const BubbleSystem sys = bubble_decompose(r);
      for (const auto& b : sys.bubbles())
        ASSERT_EQ(b.inner.relation(), Relation::full(b.inner.carrier()));
    }
}

TEST(Decompose, RejectsWithWitness) {
  const Relation r = Relation::diagonal(abc()) | make_relation(abc(), {{"a", "b"}});
  try {
    bubble_decompose(r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotNegativelyTransitive);
    EXPECT_EQ(e.witness(), (std::vector<std::string>{"a", "c", "b"}));
  }
  const Decomposition d = decompose(r);
  EXPECT_FALSE(d.bubbles.has_value());
  ASSERT_TRUE(d.fallback.has_value());
  EXPECT_EQ(d.fallback->partition.block_count(), 1u);
  EXPECT_EQ(d.fallback->order.size(), 1u);
}

TEST(Decompose, ConclusionsOnAllSmallPreorders) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& r : enumerate_preorders(n)) {
      const auto m = oracle::of(r);
      const auto f = oracle::asym_part(m);
      if (!oracle::negatively_transitive(f)) continue;
      for (const auto& check : necessary_conditions(r)) ASSERT_TRUE(check.pass) << check.name;
      const BubbleSystem sys = bubble_decompose(r);
      ASSERT_EQ(bubble_compose(sys, r.carrier()), r);
      // bubbles equal the incomparability classes of F, computed here directly
      const auto calE = oracle::incomparable(f);
      const auto pi = sys.projection(r.carrier());
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) ASSERT_EQ(pi[x] == pi[y], bool(calE[x][y]));
      // members of one bubble in different inner classes are incomparable
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          if (pi[x] == pi[y] && !(m[x][y] && m[y][x])) {
            ASSERT_TRUE(!m[x][y] && !m[y][x]);
          }
    }
}

TEST(Bourbaki, Examples) {
  const auto single = bourbaki_factor(Relation::diagonal(abc()));
  EXPECT_EQ(single.partition.block_count(), 1u);
  const auto glued = bourbaki_factor(Relation::diagonal(abc()) | make_relation(abc(), {{"a", "b"}}));
  EXPECT_EQ(glued.partition.block_count(), 1u);
}

TEST(Bourbaki, AgreesWithBubblesAndIsLinearEverywhere) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& r : enumerate_preorders(n)) {
      const BourbakiFactor b = bourbaki_factor(r);
      ASSERT_TRUE(is_linear_order(b.order.relation()));
      if (!check_negatively_transitive(asymmetric_part(r)).holds) continue;
      const BubbleSystem sys = bubble_decompose(r);
      const auto pi = sys.projection(r.carrier());
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          ASSERT_EQ(pi[x] == pi[y], b.partition.block_of(x) == b.partition.block_of(y));
    }
}

TEST(Compose, Examples) {
  const Carrier ab({"a", "b"});
  const BubbleSystem one({"I0"}, {Bubble{{"a", "b"}, EquivalenceRelation::full(ab)}});
  EXPECT_EQ(bubble_compose(one), Relation::full(ab));
  const BubbleSystem two({"I0", "I1"},
                         {make_bubble({"a"}, {{"a", "a"}}), make_bubble({"b"}, {{"b", "b"}})});
  EXPECT_EQ(bubble_compose(two), make_relation(ab, {{"a", "a"}, {"a", "b"}, {"b", "b"}}));
}

TEST(Compose, RejectsInvalidSystems) {
  EXPECT_THROW(BubbleSystem({}, {}), Error);
  EXPECT_THROW(BubbleSystem({"I0", "I1"}, {make_bubble({"a"}, {{"a", "a"}}),
                                           make_bubble({"a"}, {{"a", "a"}})}),
               Error);
}

TEST(Compose, RandomSystemsRoundTrip) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const BubbleSystem sys = random_bubble_system(rng, 5, 3);
    const Relation r = bubble_compose(sys);
    const auto m = oracle::of(r);
    ASSERT_TRUE(oracle::preorder(m));
    ASSERT_TRUE(oracle::negatively_transitive(oracle::asym_part(m)));
    const BubbleSystem back = bubble_decompose(r);
    ASSERT_TRUE(same_structure(back, sys));
    const auto pi = sys.projection(r.carrier());
    const auto fit = factor_through(pi, fibre_equivalence(r.carrier(), pi), r,
                                    sys.index_loset().relation());
    ASSERT_TRUE(fit.increasing_on_quotient && fit.bijective && fit.kernel_matches);
  }
}

TEST(Coproduct, GeneralSummandsOverPartialOrder) {
  std::mt19937_64 rng(9);
  const auto index_orders = [] {
    std::vector<Relation> out;
    for (const auto& r : enumerate_preorders(3))
      if (is_partial_order(r)) out.push_back(r);
    return out;
  }();
  for (int trial = 0; trial < 200; ++trial) {
    const Relation& index = index_orders[trial % index_orders.size()];
    std::vector<Relation> summands;
    std::vector<std::string> all;
    std::vector<std::size_t> owner;
    for (std::size_t k = 0; k < 3; ++k) {
      const std::size_t size = 1 + rng() % 3;
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < size; ++i) {
        labels.push_back("s" + std::to_string(k) + "_" + std::to_string(i));
        owner.push_back(k);
      }
      all.insert(all.end(), labels.begin(), labels.end());
      auto pre = oracle::closure_by_paths(
          oracle::join(oracle::random_matrix(rng, size, 0.3), oracle::diagonal(size)));
      summands.push_back(oracle::to_relation(pre, Carrier(labels)));
    }
    const Carrier c(all);
    const Coproduct cp = coproduct(index, summands, c);
    const auto m = oracle::of(cp.relation);
    ASSERT_TRUE(oracle::preorder(m));
    const auto im = oracle::sym_part(m);
    const auto pm = oracle::asym_part(m);
    const auto index_strict = oracle::asym_part(oracle::of(index));
    std::vector<std::size_t> local(all.size());
    for (std::size_t x = 0, seen = 0, k = 0; x < all.size(); ++x) {
      if (x > 0 && owner[x] != owner[x - 1]) seen = 0, ++k;
      local[x] = seen++;
    }
    for (std::size_t x = 0; x < all.size(); ++x)
      for (std::size_t y = 0; y < all.size(); ++y) {
        const bool same = owner[x] == owner[y];
        const auto& s = summands[owner[x]];
        const bool inner_sym = same && s.test(local[x], local[y]) && s.test(local[y], local[x]);
        const bool inner_strict = same && s.test(local[x], local[y]) && !s.test(local[y], local[x]);
        ASSERT_EQ(bool(im[x][y]), inner_sym);
        ASSERT_EQ(bool(pm[x][y]), bool(index_strict[owner[x]][owner[y]]) || inner_strict);
      }
  }
}
