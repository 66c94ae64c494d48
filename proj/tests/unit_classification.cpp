#include <doctest.h>

#include <random>

#include "mconn/classification.hpp"
#include "mconn/dual_view.hpp"
#include "mconn/errors.hpp"
#include "mconn/experiments.hpp"
#include "support/fixtures.hpp"
#include "support/naive.hpp"

using namespace mconn;

namespace {

Subset mask_of(const OraclePtr& m, std::initializer_list<const char*> labels) {
  Subset out;
  for (const char* label : labels) {
    out |= Subset::single(*m->ground().index_of(label));
  }
  return out;
}

}  // namespace

TEST_CASE("classify examples") {
  const auto c4 = fixtures::c4();
  const Subset q = mask_of(c4, {"e1"}), r = mask_of(c4, {"e3"});
  const auto e2 = classify(c4, q, r, *c4->ground().index_of("e2"));
  CHECK(!e2.deletable);
  CHECK(e2.contractible);
  CHECK(e2.kappa_after_delete == 0);
  CHECK(e2.kappa_after_contract == 1);
  CHECK(!e2.flexible());

  const auto with_loop = fixtures::c4_with_loops(1);
  const auto loop = classify(with_loop, mask_of(with_loop, {"e1"}),
                             mask_of(with_loop, {"e3"}),
                             *with_loop->ground().index_of("g1"));
  CHECK(loop.flexible());

  const auto p4 = fixtures::p4();
  const auto mid = classify(p4, mask_of(p4, {"e1"}), mask_of(p4, {"e3"}),
                            *p4->ground().index_of("e2"));
  CHECK(mid.flexible());
  CHECK(mid.kappa_after_delete == 0);
  CHECK(mid.kappa_after_contract == 0);

  CHECK_THROWS_AS(classify(c4, q, r, *c4->ground().index_of("e1")),
                  ElementInPair);
}

TEST_CASE("classify_all examples") {
  const auto c4 = fixtures::c4();
  const Subset q = mask_of(c4, {"e1"}), r = mask_of(c4, {"e3"});
  const auto rows = classify_all(c4, q, r, mask_of(c4, {"e2", "e4"}));
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    CHECK(!row.deletable);
    CHECK(row.contractible);
  }
  CHECK(rows[0].element < rows[1].element);  // index order

  CHECK(classify_all(c4, q, r, Subset()).empty());

  const auto u24 = fixtures::u24();
  const auto free_rows = classify_all(u24, Subset::single(0),
                                      Subset::single(1), Subset(0b1100u));
  REQUIRE(free_rows.size() == 2);
  for (const auto& row : free_rows) CHECK(row.flexible());
}

TEST_CASE("dichotomy holds over a large random corpus") {
  std::mt19937_64 rng(20240803);
  int checks = 0;
  for (const auto& m : fixtures::mixed_corpus(150, 4, 10, 232323)) {
    const auto [q, r] = fixtures::random_pair(rng, m->size(), 2);
    for (int e : (q | r).complement(m->size())) {
      const auto row = classify(m, q, r, e);
      CHECK((row.deletable || row.contractible));
      ++checks;
      if (checks >= 600) return;
    }
  }
  CHECK(checks >= 500);
}

TEST_CASE("deletable and contractible swap under duality") {
  std::mt19937_64 rng(15);
  for (const auto& m : fixtures::mixed_corpus(20, 4, 9, 343434)) {
    const auto star = dual(m);
    const auto [q, r] = fixtures::random_pair(rng, m->size(), 2);
    for (int e : (q | r).complement(m->size())) {
      const auto primal = classify(m, q, r, e);
      const auto dual_row = classify(star, q, r, e);
      CHECK(primal.deletable == dual_row.contractible);
      CHECK(primal.contractible == dual_row.deletable);
    }
  }
}

TEST_CASE("non-contractible elements stay non-contractible against larger "
          "separating sets") {
  std::mt19937_64 rng(16);
  for (const auto& m : fixtures::mixed_corpus(16, 4, 8, 454545)) {
    const auto [q, r] = fixtures::random_pair(rng, m->size(), 2);
    const int k = kappa(*m, q, r).value;
    for (const auto& sep : enumerate_separations(*m, q, r, k + 1)) {
      const Subset u = sep.side;
      for (int e : (u | r).complement(m->size())) {
        const auto against_q = classify(m, q, r, e);
        if (against_q.contractible) continue;
        const auto against_u = classify(m, u, r, e);
        CHECK(!against_u.contractible);
      }
    }
  }
}

TEST_CASE("reduce_to_linking_minor examples") {
  SUBCASE("C4 reduces to two parallel elements") {
    const auto c4 = fixtures::c4();
    const Subset q = mask_of(c4, {"e1"}), r = mask_of(c4, {"e3"});
    const auto log = reduce_to_linking_minor(c4, q, r);
    REQUIRE(log.steps.size() == 2);
    CHECK(log.steps[0] == ElementOp{1, MinorOp::Contract});
    CHECK(log.steps[1] == ElementOp{3, MinorOp::Contract});
    CHECK(log.result->size() == 2);
    CHECK(log.result->full_rank() == 1);  // two parallel elements
    CHECK(lambda(*log.result, log.q_in_result) == 1);
  }
  SUBCASE("P4 keeps kappa zero") {
    const auto p4 = fixtures::p4();
    const auto log = reduce_to_linking_minor(p4, mask_of(p4, {"e1"}),
                                             mask_of(p4, {"e3"}));
    CHECK(log.result->size() == 2);
    CHECK(lambda(*log.result, log.q_in_result) == 0);
  }
  SUBCASE("identity case") {
    const auto u = std::make_shared<UniformMatroid>(1, 2);
    const auto log =
        reduce_to_linking_minor(u, Subset::single(0), Subset::single(1));
    CHECK(log.steps.empty());
    CHECK(log.result->size() == 2);
  }
}

TEST_CASE("linking minor keeps kappa after every logged step") {
  std::mt19937_64 rng(17);
  for (const auto& m : fixtures::mixed_corpus(20, 4, 10, 565656)) {
    const auto [q, r] = fixtures::random_pair(rng, m->size(), 2);
    const int k = kappa(*m, q, r).value;
    const auto log = reduce_to_linking_minor(m, q, r);

    // replay the log step by step
    Subset deleted, contracted;
    for (const auto& step : log.steps) {
      if (step.op == MinorOp::Delete) {
        deleted |= Subset::single(step.element);
      } else {
        contracted |= Subset::single(step.element);
      }
      const auto view = minor(m, deleted, contracted);
      CHECK(kappa(*view, view->to_view(q), view->to_view(r)).value == k);
    }
    // replay reproduces the result
    const auto replayed = minor(m, deleted, contracted);
    CHECK(replayed->size() == log.result->size());
    for (std::uint32_t mask = 0; mask < (1u << replayed->size()); ++mask) {
      CHECK(replayed->rank(Subset(mask)) == log.result->rank(Subset(mask)));
    }
    CHECK(log.result->size() == (q | r).count());
    CHECK(lambda(*log.result, log.q_in_result) == k);
  }
}

TEST_CASE("shrink_to_linking_pair examples") {
  SUBCASE("already at target size") {
    const auto c4 = fixtures::c4();
    const Subset s = mask_of(c4, {"e1"}), t = mask_of(c4, {"e3"});
    const auto pair = shrink_to_linking_pair(c4, s, t);
    CHECK(pair.s1 == s);
    CHECK(pair.t1 == t);
  }
  SUBCASE("K4 star against triangle") {
    const auto k4 = fixtures::k4();
    const Subset s = mask_of(k4, {"12", "13", "14"});
    const Subset t = mask_of(k4, {"23", "24", "34"});
    CHECK(kappa(*k4, s, t).value == 2);
    const auto pair = shrink_to_linking_pair(k4, s, t);
    CHECK(pair.s1.count() == 2);
    CHECK(pair.t1.count() == 2);
    CHECK(pair.s1.subset_of(s));
    CHECK(pair.t1.subset_of(t));
    CHECK(kappa(*k4, pair.s1, pair.t1).value == 2);
    // deterministic greedy trace: drop "12", then "23"
    CHECK(pair.s1 == mask_of(k4, {"13", "14"}));
    CHECK(pair.t1 == mask_of(k4, {"24", "34"}));
  }
  SUBCASE("overlap is rejected") {
    CHECK_THROWS_AS(
        shrink_to_linking_pair(fixtures::c4(), Subset(0b11u), Subset(0b01u)),
        OverlappingSets);
  }
  SUBCASE("2x3 grid top/bottom rows are already a linking pair") {
    const auto grid = build_grid_instance(1, 2);
    const auto& inst = grid.instance;
    CHECK(kappa(*inst.oracle(), inst.s(), inst.t()).value == 2);
    const auto pair = shrink_to_linking_pair(inst.oracle(), inst.s(), inst.t());
    CHECK(pair.s1 == inst.s());
    CHECK(pair.t1 == inst.t());
  }
}

TEST_CASE("shrink reaches |S1| = |T1| = kappa on the corpus") {
  std::mt19937_64 rng(18);
  for (const auto& m : fixtures::mixed_corpus(24, 4, 10, 676767)) {
    const auto [s, t] = fixtures::random_pair(rng, m->size(), 3);
    const int k = kappa(*m, s, t).value;
    const auto pair = shrink_to_linking_pair(m, s, t);
    CHECK(pair.s1.subset_of(s));
    CHECK(pair.t1.subset_of(t));
    CHECK(pair.s1.count() == k);
    CHECK(pair.t1.count() == k);
    CHECK(kappa(*m, pair.s1, pair.t1).value == k);
  }
}
