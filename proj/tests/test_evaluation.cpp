#include "mmj/evaluation.hpp"
#include "mmj/mmj_mst.hpp"
#include "support/datasets.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

using namespace mmj;
using namespace mmj::testing;

namespace {

const std::vector<int> kTwoGroups{0, 0, 1, 1};

MmjMatrix line_mmj(std::initializer_list<double> xs) {
    return mmj_by_mst(pairwise_base_matrix(line_points(xs), MetricKind::euclidean()));
}

} // namespace

TEST_CASE("hand-derived anchors on {0,1,10,11}") {
    const auto m = line_mmj({0, 1, 10, 11});
    CHECK(std::abs(silhouette(m.values(), kTwoGroups, IndexKind::mmj_sc).value - 8.0 / 9.0) < 1e-12);
    CHECK(std::abs(davies_bouldin(m.values(), kTwoGroups).value - 1.0 / 9.0) < 1e-12);
    const auto ch = calinski_harabasz(m.values(), kTwoGroups);
    CHECK(ch.value == doctest::Approx(162.0));
    CHECK_FALSE(ch.saturated);
}

TEST_CASE("silhouette samples") {
    const auto m = line_mmj({0, 1, 10, 11});
    for (const double s : silhouette_samples(m.values(), kTwoGroups)) CHECK(s == doctest::Approx(8.0 / 9.0));
    // Singletons score 0.
    const auto single = silhouette_samples(m.values(), std::vector<int>{0, 0, 0, 1});
    CHECK(single[3] == 0.0);
}

TEST_CASE("coincident points within clusters") {
    const auto m = line_mmj({0, 0, 5, 5});
    CHECK(silhouette(m.values(), kTwoGroups).value == 1.0);
    const auto ch = calinski_harabasz(m.values(), kTwoGroups);
    CHECK(std::isinf(ch.value));
    CHECK(ch.saturated);
    CHECK(davies_bouldin(m.values(), kTwoGroups).value == 0.0);
}

TEST_CASE("coincident centers make DB undefined") {
    const auto m = line_mmj({0, 0, 5, 5});
    CHECK_THROWS_AS(davies_bouldin(m.values(), std::vector<int>{0, 1, 0, 1}), std::domain_error);
}

TEST_CASE("indices are invariant to label permutation") {
    const auto d = blobs();
    const auto m = mmj_by_mst(pairwise_base_matrix(d.points, MetricKind::euclidean()));
    std::vector<int> relabeled = d.labels;
    for (int& l : relabeled) l = (l + 1) % 3;
    CHECK(silhouette(m.values(), d.labels).value == doctest::Approx(silhouette(m.values(), relabeled).value));
    CHECK(calinski_harabasz(m.values(), d.labels).value ==
          doctest::Approx(calinski_harabasz(m.values(), relabeled).value));
    CHECK(davies_bouldin(m.values(), d.labels).value ==
          doctest::Approx(davies_bouldin(m.values(), relabeled).value));
    CHECK(adjusted_rand_index(d.labels, relabeled) == 1.0);
}

TEST_CASE("scale invariance of SC and DB") {
    const auto a = line_mmj({0, 1, 10, 11});
    const auto b = line_mmj({0, 3, 30, 33});
    CHECK(silhouette(a.values(), kTwoGroups).value == doctest::Approx(silhouette(b.values(), kTwoGroups).value));
    CHECK(davies_bouldin(a.values(), kTwoGroups).value ==
          doctest::Approx(davies_bouldin(b.values(), kTwoGroups).value));
}

TEST_CASE("centroid-based standard indices") {
    const auto pts = line_points({0, 1, 10, 11});
    // Centroids 0.5 and 10.5; S = 0.5 each, separation 10.
    CHECK(davies_bouldin_centroid(pts, kTwoGroups).value == doctest::Approx(0.1));
    // Between 4 * 25 = 100 over 1; within 4 * 0.25 = 1 over 2.
    CHECK(calinski_harabasz_centroid(pts, kTwoGroups).value == doctest::Approx(200.0));
}

TEST_CASE("input validation") {
    const auto m = line_mmj({0, 1, 10, 11});
    CHECK_THROWS_AS(silhouette(m.values(), std::vector<int>{0, 0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(silhouette(m.values(), std::vector<int>{0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(silhouette(m.values(), std::vector<int>{0, 2, 2, 0}), std::invalid_argument);
    CHECK_THROWS_AS(calinski_harabasz(m.values(), std::vector<int>{0, 1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(parse_index("dbcv"), std::invalid_argument);
    for (const auto k : {IndexKind::sc, IndexKind::ch, IndexKind::db, IndexKind::mmj_sc, IndexKind::mmj_ch,
                         IndexKind::mmj_db})
        CHECK(parse_index(to_string(k)) == k);
    CHECK(higher_is_better(IndexKind::mmj_ch));
    CHECK_FALSE(higher_is_better(IndexKind::db));
}

TEST_CASE("adjusted rand index") {
    CHECK(adjusted_rand_index(std::vector<int>{0, 0, 1, 1}, std::vector<int>{1, 1, 0, 0}) == 1.0);
    CHECK(adjusted_rand_index(std::vector<int>{0, 0, 1, 1}, std::vector<int>{0, 1, 0, 1}) ==
          doctest::Approx(-0.5));
    CHECK_THROWS_AS(adjusted_rand_index(std::vector<int>{0}, std::vector<int>{0, 1}), std::invalid_argument);
}

TEST_CASE("sweep selects the generating k with MMJ silhouette") {
    const std::vector<Index> ks{2, 3, 4, 5, 6, 7, 8};
    KmeansConfig cfg;
    cfg.seed = 11;
    int standard_misses = 0;
    for (const auto& [d, k] : {std::pair{moons(), Index{2}}, {rings(), Index{2}}, {blobs(), Index{3}}}) {
        const auto base = pairwise_base_matrix(d.points, MetricKind::euclidean());
        const auto m = mmj_by_mst(base);
        const auto mmj = sweep_k(m, base, &d.points, ks, IndexKind::mmj_sc, cfg);
        CHECK(mmj.best_k == k);
        CHECK(mmj.table.size() == ks.size());
        if (sweep_k(m, base, &d.points, ks, IndexKind::sc, cfg).best_k != k) ++standard_misses;
    }
    CHECK(standard_misses >= 1);
}

TEST_CASE("sweep flags degenerate scores instead of throwing") {
    const auto pts = line_points({0, 0, 0, 5, 5, 5});
    const std::vector<Index> ks{2, 3};
    KmeansConfig cfg;
    const auto r = sweep_k(pts, MetricKind::euclidean(), ks, Engine::mst, IndexKind::mmj_ch, cfg);
    REQUIRE(r.table.size() == 2);
    CHECK(r.table[0].score.saturated);
    CHECK(r.best_k == 2);
    CHECK_THROWS_AS(sweep_k(pts, MetricKind::euclidean(), std::vector<Index>{1}, Engine::mst, IndexKind::sc, cfg),
                    std::invalid_argument);
}
