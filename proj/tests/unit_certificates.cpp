#include <doctest.h>

#include <random>

#include "mconn/certificates.hpp"
#include "mconn/classification.hpp"
#include "mconn/errors.hpp"
#include "mconn/experiments.hpp"
#include "support/fixtures.hpp"

using namespace mconn;

namespace {

Subset mask_of(const OraclePtr& m, std::initializer_list<const char*> labels) {
  Subset out;
  for (const char* label : labels) {
    out |= Subset::single(*m->ground().index_of(label));
  }
  return out;
}

Subset non_flexible_free_set(const OraclePtr& m, Subset q, Subset r) {
  Subset out;
  const Subset free = (q | r).complement(m->size());
  for (const auto& row : classify_all(m, q, r, free)) {
    if (!row.flexible()) out |= Subset::single(row.element);
  }
  return out;
}

}  // namespace

TEST_CASE("empty F yields the empty certificate") {
  const auto c4 = fixtures::c4();
  const auto cert = build_nested_sequence(c4, mask_of(c4, {"e1"}),
                                          mask_of(c4, {"e3"}), Subset());
  CHECK(cert.length() == 0);
  CHECK(verify_nested_sequence(*c4, mask_of(c4, {"e1"}), mask_of(c4, {"e3"}),
                               Subset(), cert)
            .all_pass());
}

TEST_CASE("C4 single-element certificate") {
  const auto c4 = fixtures::c4();
  const Subset q = mask_of(c4, {"e1"}), r = mask_of(c4, {"e3"});
  const Subset f = mask_of(c4, {"e2"});
  const auto cert = build_nested_sequence(c4, q, r, f);
  REQUIRE(cert.length() == 1);
  CHECK(cert.ordering[0] == *c4->ground().index_of("e2"));
  CHECK(cert.chain[0] == mask_of(c4, {"e1", "e2"}));
  CHECK(cert.branch[0] == GutsBranch::Coguts);
  CHECK(verify_nested_sequence(*c4, q, r, f, cert).all_pass());
}

TEST_CASE("flexible elements are rejected up front") {
  const auto p4 = fixtures::p4();
  CHECK_THROWS_AS(build_nested_sequence(p4, mask_of(p4, {"e1"}),
                                        mask_of(p4, {"e3"}),
                                        mask_of(p4, {"e2"})),
                  FlexibleElement);
}

TEST_CASE("verifier checks each condition independently") {
  const auto c4 = fixtures::c4();
  const Subset q = mask_of(c4, {"e1"}), r = mask_of(c4, {"e3"});
  const Subset f = mask_of(c4, {"e2"});

  SUBCASE("chain set violating (iii) but nothing else") {
    NestedSequence cert;
    cert.ordering = {*c4->ground().index_of("e2")};
    cert.chain = {mask_of(c4, {"e1", "e2", "e4"})};
    cert.branch = {GutsBranch::Coguts};
    // With F = {e2} the extra e4 does not violate (iii)...
    const auto ok = verify_nested_sequence(*c4, q, r, f, cert);
    CHECK(ok.all_pass());
    // ...but with F = {e2, e4} it does: A_1 n F must be {e2} alone.
    const Subset wider = mask_of(c4, {"e2", "e4"});
    NestedSequence two;
    two.ordering = {*c4->ground().index_of("e2"),
                    *c4->ground().index_of("e4")};
    two.chain = {mask_of(c4, {"e1", "e2", "e4"}), mask_of(c4, {"e1", "e2", "e4"})};
    two.branch = {GutsBranch::Coguts, GutsBranch::Coguts};
    const auto bad = verify_nested_sequence(*c4, q, r, wider, two);
    CHECK(!bad.condition_pass[2]);
    CHECK(bad.first_violation[2] == 0);
  }

  SUBCASE("non-nested chain fails (ii) at the right index") {
    const auto with_loops = fixtures::c4_with_loops(2);
    const Subset q2 = mask_of(with_loops, {"e1"});
    const Subset r2 = mask_of(with_loops, {"e3"});
    const Subset f2 = mask_of(with_loops, {"e2", "e4"});
    NestedSequence cert;
    cert.ordering = {*with_loops->ground().index_of("e2"),
                     *with_loops->ground().index_of("e4")};
    cert.chain = {mask_of(with_loops, {"e1", "e2"}),
                  mask_of(with_loops, {"e1", "e4"})};  // not a superset
    cert.branch = {GutsBranch::Coguts, GutsBranch::Coguts};
    const auto report = verify_nested_sequence(*with_loops, q2, r2, f2, cert);
    CHECK(!report.condition_pass[1]);
    CHECK(report.first_violation[1] == 0);
  }

  SUBCASE("wrong branch flag fails (iv)") {
    NestedSequence cert;
    cert.ordering = {*c4->ground().index_of("e2")};
    cert.chain = {mask_of(c4, {"e1", "e2"})};
    cert.branch = {GutsBranch::Guts};  // guts does not hold in a circuit
    const auto report = verify_nested_sequence(*c4, q, r, f, cert);
    CHECK(!report.condition_pass[3]);
    CHECK(report.first_violation[3] == 0);
  }

  SUBCASE("shape mismatch is reported before conditions") {
    NestedSequence cert;
    cert.ordering = {*c4->ground().index_of("e2")};
    const auto report = verify_nested_sequence(*c4, q, r, f, cert);
    CHECK(!report.well_formed);
    CHECK(!report.all_pass());
  }
}

TEST_CASE("C4 both non-flexible elements thread a nested chain") {
  const auto c4 = fixtures::c4();
  const Subset q = mask_of(c4, {"e1"}), r = mask_of(c4, {"e3"});
  const Subset f = mask_of(c4, {"e2", "e4"});
  const auto cert = build_nested_sequence(c4, q, r, f);
  REQUIRE(cert.length() == 2);
  const auto report = verify_nested_sequence(*c4, q, r, f, cert);
  CHECK(report.all_pass());
  // every chain set has order exactly kappa here, so no tightness warnings
  CHECK(report.warnings.empty());
}

TEST_CASE("2x3 grid: certificate over the non-flexible free elements") {
  const auto grid = build_grid_instance(1, 2);
  const auto& m = grid.instance.oracle();
  const Subset q = grid.instance.q(), r = grid.instance.r();
  Subset f;
  for (const auto& row :
       classify_all(m, q, r, (q | r).complement(m->size()))) {
    if (!row.flexible()) f |= Subset::single(row.element);
  }
  const auto cert = build_nested_sequence(m, q, r, f);
  CHECK(cert.length() == static_cast<std::size_t>(f.count()));
  CHECK(verify_nested_sequence(*m, q, r, f, cert).all_pass());
}

TEST_CASE("build then verify round-trips on the random corpus") {
  std::mt19937_64 rng(20240804);
  int built = 0;
  for (const auto& m : fixtures::mixed_corpus(60, 4, 9, 787878)) {
    const auto [q, r] = fixtures::random_pair(rng, m->size(), 2);
    const Subset f = non_flexible_free_set(m, q, r);
    if (f.count() > 10) continue;
    const auto cert = build_nested_sequence(m, q, r, f);
    CHECK(verify_nested_sequence(*m, q, r, f, cert).all_pass());
    if (!f.empty()) ++built;
  }
  CHECK(built >= 20);  // the corpus must actually exercise the builder
}
