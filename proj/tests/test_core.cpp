#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "hyperflow/hypergraph.hpp"
#include "hyperflow/io.hpp"
#include "oracles.hpp"

using namespace hyperflow;

namespace {

Hypergraph parse(const std::string& text) {
  std::istringstream in(text);
  return parse_hmetis(in);
}

Weight connectivity_by_sets(const Hypergraph& hg, const Partition& p) {
  Weight total = 0;
  for (HyperedgeID e = 0; e < hg.num_hyperedges(); ++e) {
    std::set<NodeID> blocks;
    for (const NodeID v : hg.pins(e)) blocks.insert(p.block(v));
    if (!blocks.empty()) total += hg.hyperedge_weight(e) * (static_cast<Weight>(blocks.size()) - 1);
  }
  return total;
}

}  // namespace

TEST_CASE("hmetis parse, unweighted") {
  const Hypergraph hg = parse("2 3\n1 2\n2 3\n");
  CHECK(hg.num_hyperedges() == 2);
  CHECK(hg.num_vertices() == 3);
  CHECK(hg.hyperedge_weight(0) == 1);
  CHECK(hg.vertex_weight(2) == 1);
  REQUIRE(hg.hyperedge_size(0) == 2);
  CHECK(hg.pins(0)[0] == 0);
  CHECK(hg.pins(0)[1] == 1);
  CHECK(hg.pins(1)[0] == 1);
  CHECK(hg.pins(1)[1] == 2);
  hg.verify_consistency();
}

TEST_CASE("hmetis parse, hyperedge weights") {
  const Hypergraph hg = parse("1 2 1\n7 1 2\n");
  CHECK(hg.hyperedge_weight(0) == 7);
  CHECK(hg.num_vertices() == 2);
}

TEST_CASE("hmetis parse, vertex weights and comments") {
  const Hypergraph hg = parse("% header comment\n1 2 11\n7 1 2\n3\n4\n");
  CHECK(hg.hyperedge_weight(0) == 7);
  CHECK(hg.vertex_weight(0) == 3);
  CHECK(hg.vertex_weight(1) == 4);
}

TEST_CASE("hmetis parse errors") {
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("x y\n"), ParseError);
  CHECK_THROWS_AS(parse("1 2 7\n1 2\n"), ParseError);     // unknown fmt
  CHECK_THROWS_AS(parse("1 2\n1 3\n"), ParseError);       // pin out of range
  CHECK_THROWS_AS(parse("1 2\n\n"), ParseError);          // empty hyperedge
  CHECK_THROWS_AS(parse("1 2 1\n0 1 2\n"), ParseError);   // non-positive weight
  CHECK_THROWS_AS(parse("2 2\n1 2\n"), ParseError);       // missing hyperedge line
  CHECK_THROWS_AS(parse("1 2 10\n1 2\n5\n"), ParseError); // missing vertex weight line
}

TEST_CASE("hmetis round trip") {
  Rng rng(123);
  oracles::RandomInstanceOptions opt;
  for (int i = 0; i < 50; ++i) {
    const Hypergraph hg = oracles::random_hypergraph(rng, opt);
    std::ostringstream out;
    write_hmetis(out, hg);
    std::istringstream in(out.str());
    const Hypergraph back = parse_hmetis(in);
    CHECK(hg.structurally_equal(back));
    back.verify_consistency();
  }
}

TEST_CASE("connectivity metric") {
  const Hypergraph hg = parse("1 3\n1 2 3\n");
  CHECK(connectivity_metric(hg, Partition(2, {0, 0, 0}, hg)) == 0);
  const Hypergraph weighted = parse("1 3 1\n3 1 2 3\n");
  CHECK(connectivity_metric(weighted, Partition(2, {0, 1, 1}, weighted)) == 3);
  CHECK(connectivity_metric(weighted, Partition(3, {0, 1, 2}, weighted)) == 6);
}

TEST_CASE("connectivity matches set-based recomputation") {
  Rng rng(77);
  oracles::RandomInstanceOptions opt;
  for (int i = 0; i < 100; ++i) {
    const Hypergraph hg = oracles::random_hypergraph(rng, opt);
    const NodeID k = 2 + static_cast<NodeID>(rng.below(3));
    std::vector<NodeID> assignment(hg.num_vertices());
    for (NodeID v = 0; v < hg.num_vertices(); ++v) {
      assignment[v] = v < k ? v : static_cast<NodeID>(rng.below(k));
    }
    if (hg.num_vertices() < k) continue;
    const Partition p(k, assignment, hg);
    CHECK(connectivity_metric(hg, p) == connectivity_by_sets(hg, p));
  }
}

TEST_CASE("imbalance") {
  const Hypergraph hg = parse("1 4\n1 2 3 4\n");
  CHECK(imbalance(hg, Partition(2, {0, 0, 1, 1}, hg)) == doctest::Approx(0.0));

  std::vector<Weight> vw = {6, 4};
  const Hypergraph two(2, {{0, 1}}, vw, {});
  CHECK(imbalance(two, Partition(2, {0, 1}, two)) == doctest::Approx(0.2));

  std::vector<Weight> vw5 = {5, 5};
  const Hypergraph five(2, {{0, 1}}, vw5, {});
  CHECK(is_balanced(five, Partition(2, {0, 1}, five), 0.03));
}

TEST_CASE("imbalance is invariant under uniform vertex weight scaling") {
  Rng rng(5);
  oracles::RandomInstanceOptions opt;
  for (int i = 0; i < 20; ++i) {
    const Hypergraph hg = oracles::random_hypergraph(rng, opt);
    if (hg.num_vertices() < 2) continue;
    std::vector<NodeID> assignment(hg.num_vertices());
    for (NodeID v = 0; v < hg.num_vertices(); ++v) assignment[v] = v % 2;
    const Partition p(2, assignment, hg);

    const Weight factor = 1 + static_cast<Weight>(rng.below(9));
    std::vector<Weight> scaled(hg.num_vertices());
    std::vector<std::vector<NodeID>> pins(hg.num_hyperedges());
    std::vector<Weight> ew(hg.num_hyperedges());
    for (NodeID v = 0; v < hg.num_vertices(); ++v) scaled[v] = hg.vertex_weight(v) * factor;
    for (HyperedgeID e = 0; e < hg.num_hyperedges(); ++e) {
      pins[e].assign(hg.pins(e).begin(), hg.pins(e).end());
      ew[e] = hg.hyperedge_weight(e);
    }
    const Hypergraph scaled_hg(hg.num_vertices(), pins, scaled, ew);
    const Partition sp(2, assignment, scaled_hg);
    CHECK(imbalance(hg, p) == doctest::Approx(imbalance(scaled_hg, sp)));
  }
}

TEST_CASE("partition file round trip") {
  const Hypergraph hg = parse("1 3\n1 2 3\n");
  std::istringstream in("0\n1\n0\n");
  const Partition p = parse_partition(in, hg, 2);
  CHECK(p.block(0) == 0);
  CHECK(p.block(1) == 1);
  CHECK(p.block(2) == 0);

  std::ostringstream out;
  write_partition(out, p);
  std::istringstream back(out.str());
  const Partition q = parse_partition(back, hg, 2);
  CHECK(q.assignment() == p.assignment());
}

TEST_CASE("partition parse errors") {
  const Hypergraph hg = parse("1 3\n1 2 3\n");
  std::istringstream bad_block("0\n5\n0\n");
  CHECK_THROWS_AS(parse_partition(bad_block, hg, 2), ParseError);
  std::istringstream short_file("0\n1\n");
  CHECK_THROWS_AS(parse_partition(short_file, hg, 2), ParseError);
  std::istringstream single_line("5\n");
  CHECK_THROWS_AS(parse_partition(single_line, hg, 2), ParseError);
}

TEST_CASE("pair cut weight") {
  const Hypergraph hg = parse("3 4 1\n2 1 2\n5 2 3\n7 3 4\n");
  const Partition p(3, {0, 0, 1, 2}, hg);
  CHECK(pair_cut_weight(hg, p, 0, 1) == 5);
  CHECK(pair_cut_weight(hg, p, 1, 2) == 7);
  CHECK(pair_cut_weight(hg, p, 0, 2) == 0);
}
