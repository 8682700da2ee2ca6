#include "mmj/classifier.hpp"
#include "mmj/mmj_mst.hpp"
#include "support/datasets.hpp"
#include "support/fixtures.hpp"
#include "support/tempdir.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace mmj;
using namespace mmj::testing;

namespace {

const std::vector<int> kTwoGroups{0, 0, 1, 1};

// g(i) by recomputing the full matrix over `context` plus the query.
double oracle_score(const PointSet& points, const std::vector<Index>& context, const CenterSet& scom,
                    std::span<const double> query) {
    Matrix coords(context.size() + 1, points.dim());
    for (Index r = 0; r < context.size(); ++r)
        for (Index d = 0; d < points.dim(); ++d) coords(r, d) = points.point(context[r])[d];
    for (Index d = 0; d < points.dim(); ++d) coords(context.size(), d) = query[d];
    const auto m = mmj_by_mst(pairwise_base_matrix(PointSet(coords), MetricKind::euclidean()));
    double best = std::numeric_limits<double>::infinity();
    for (const Index s : scom) {
        const auto at = std::find(context.begin(), context.end(), s) - context.begin();
        best = std::min(best, m(context.size(), static_cast<Index>(at)));
    }
    return best;
}

std::vector<Index> all_indices(Index n) {
    std::vector<Index> v(n);
    for (Index i = 0; i < n; ++i) v[i] = i;
    return v;
}

} // namespace

TEST_CASE("per-cluster prediction on a line") {
    const auto model =
        train_classifier(line_points({0, 1, 10, 11}), MetricKind::euclidean(), kTwoGroups, ContextMode::per_cluster);
    const std::vector<double> p{2.0};
    const auto out = predict(model, p);
    CHECK(out.label == 0);
    REQUIRE(out.scores.size() == 2);
    CHECK(out.scores[0] == 1.0);
    CHECK(out.scores[1] == 8.0);
    CHECK_FALSE(out.is_border());
}

TEST_CASE("a query on a One-SCOM scores zero for its cluster") {
    const auto model =
        train_classifier(line_points({0, 1, 10, 11}), MetricKind::euclidean(), kTwoGroups, ContextMode::per_cluster);
    const std::vector<double> p{10.0};
    const auto out = predict(model, p);
    CHECK(out.label == 1);
    CHECK(out.scores[1] == 0.0);
}

TEST_CASE("an equidistant query is a border point") {
    for (const auto mode : {ContextMode::per_cluster, ContextMode::global}) {
        const auto model = train_classifier(line_points({0, 1, 10, 11}), MetricKind::euclidean(), kTwoGroups, mode);
        const std::vector<double> p{5.5};
        const auto out = mode == ContextMode::global ? predict_global(model, p) : predict(model, p);
        CHECK(out.label == kBorderLabel);
        CHECK(out.tied_clusters == std::vector<int>{0, 1});
        CHECK(out.is_border());
    }
}

TEST_CASE("tie epsilon widens the border") {
    const auto model =
        train_classifier(line_points({0, 1, 10, 11}), MetricKind::euclidean(), kTwoGroups, ContextMode::per_cluster);
    const std::vector<double> p{5.4};
    CHECK(predict(model, p).label == 0);
    CHECK(predict(model, p, 0.5).label == kBorderLabel);
}

TEST_CASE("global mode lets paths use other clusters") {
    // Query 12 reaches cluster 0 through 11 and 10.
    const auto model =
        train_classifier(line_points({0, 1, 10, 11}), MetricKind::euclidean(), kTwoGroups, ContextMode::global);
    const std::vector<double> p{12.0};
    const auto out = predict_global(model, p);
    CHECK(out.label == 1);
    CHECK(out.scores[0] == 9.0);
    CHECK(out.scores[1] == 1.0);
}

TEST_CASE("mode mismatch is rejected") {
    const auto per =
        train_classifier(line_points({0, 1, 10, 11}), MetricKind::euclidean(), kTwoGroups, ContextMode::per_cluster);
    const auto glob =
        train_classifier(line_points({0, 1, 10, 11}), MetricKind::euclidean(), kTwoGroups, ContextMode::global);
    const std::vector<double> p{2.0};
    CHECK_THROWS_AS(predict_global(per, p), std::invalid_argument);
    CHECK_THROWS_AS(predict(glob, p), std::invalid_argument);
    CHECK_THROWS_AS(predict(per, std::vector<double>{1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(train_classifier(line_points({0, 1, 2}), MetricKind::euclidean(), std::vector<int>{0, 2, 2},
                                     ContextMode::global),
                    std::invalid_argument);
}

TEST_CASE("scores equal full-matrix recomputation") {
    std::mt19937_64 rng(31);
    for (const auto& d : {moons(), blobs()}) {
        const auto per = train_classifier(d.points, MetricKind::euclidean(), d.labels, ContextMode::per_cluster);
        const auto glob = train_classifier(d.points, MetricKind::euclidean(), d.labels, ContextMode::global);
        std::uniform_real_distribution<double> u(-2.0, 8.0);
        for (int q = 0; q < 15; ++q) {
            const std::vector<double> p{u(rng), u(rng)};
            const auto a = predict(per, p);
            const auto b = predict_global(glob, p);
            for (Index c = 0; c < per.num_clusters(); ++c) {
                CHECK(a.scores[c] == oracle_score(d.points, per.clusters[c].members, per.clusters[c].scom, p));
                CHECK(b.scores[c] ==
                      oracle_score(d.points, all_indices(d.points.size()), glob.clusters[c].scom, p));
            }
        }
    }
}

TEST_CASE("decision grid") {
    const auto d = blobs();
    const auto glob = train_classifier(d.points, MetricKind::euclidean(), d.labels, ContextMode::global);
    const GridBox box{-3, 9, -3, 8};

    const auto center = decision_grid(glob, box, 1, 1);
    REQUIRE(center.size() == 1);
    CHECK(center[0].x == 3.0);
    CHECK(center[0].y == 2.5);

    const auto grid = decision_grid(glob, box, 40, 30);
    REQUIRE(grid.size() == 1200);
    CHECK(grid[1].x > grid[0].x);
    CHECK(grid[40].y > grid[0].y);
    const auto border =
        std::count_if(grid.begin(), grid.end(), [](const GridCell& c) { return c.prediction.label == kBorderLabel; });
    CHECK(border > 0);
    CHECK_THROWS_AS(decision_grid(glob, box, 0, 3), std::invalid_argument);
}

TEST_CASE("per-cluster regions on separated blobs contain their cluster") {
    const auto d = blobs();
    const auto per = train_classifier(d.points, MetricKind::euclidean(), d.labels, ContextMode::per_cluster);
    for (Index i = 0; i < d.points.size(); i += 7) {
        const auto out = predict(per, d.points.point(i));
        CHECK(out.label == d.labels[i]);
    }
}

TEST_CASE("save and load round trip") {
    TempDir dir;
    const auto d = moons();
    for (const auto mode : {ContextMode::per_cluster, ContextMode::global}) {
        const auto model = train_classifier(d.points, MetricKind::euclidean(), d.labels, mode);
        const auto path = dir / (std::string(to_string(mode)) + ".json");
        save_model(model, path);
        const auto loaded = load_model(path);
        CHECK(loaded.mode == mode);
        CHECK(loaded.points.coords() == model.points.coords());
        REQUIRE(loaded.num_clusters() == model.num_clusters());
        for (Index c = 0; c < model.num_clusters(); ++c) {
            CHECK(loaded.clusters[c].members == model.clusters[c].members);
            CHECK(loaded.clusters[c].scom == model.clusters[c].scom);
            CHECK(loaded.clusters[c].context == model.clusters[c].context);
        }
        CHECK(loaded.global == model.global);
        const std::vector<double> p{0.3, 0.7};
        const auto a = mode == ContextMode::global ? predict_global(model, p) : predict(model, p);
        const auto b = mode == ContextMode::global ? predict_global(loaded, p) : predict(loaded, p);
        CHECK(a.scores == b.scores);
    }
    CHECK_THROWS(load_model(dir / "missing.json"));
}
