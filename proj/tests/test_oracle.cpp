#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "dpc/oracle.hpp"
#include "fixtures.hpp"

using namespace dpc;

TEST_CASE("two crossing segments produce exactly one coincidence") {
    auto K = fixtures::two_disjoint_edges();
    auto f = fixtures::map_from_points(2, {{-1, 0}, {1, 0}, {0, -1}, {0, 1}});
    auto hits = enumerate_tverberg(K, 2, 2, f);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].faces == std::vector<Simplex>{{0, 1}, {2, 3}});
    CHECK(hits[0].point == fixtures::qvec({0, 0}));
    CHECK(hits[0].type == std::vector<int>{1, 1});
    CHECK(hits[0].sign == +1);  // west-to-east crossed by south-to-north

    auto census = type_census(hits);
    REQUIRE(census.size() == 1);
    CHECK(census[{1, 1}] == 1);

    // Pull the segments apart: no coincidences remain.
    auto g = fixtures::map_from_points(2, {{-1, 0}, {1, 0}, {5, 5}, {6, 7}});
    CHECK(enumerate_tverberg(K, 2, 2, g).empty());
}

TEST_CASE("triple coincidences of the 4-simplex on the line") {
    auto K = fixtures::full_simplex(4);
    auto f = fixtures::map_from_points(1, {{-101}, {-99}, {99}, {101}, {0}});
    auto hits = enumerate_tverberg(K, 3, 1, f);
    REQUIRE(hits.size() == 2);
    for (const auto& h : hits) {
        CHECK(h.type == std::vector<int>{0, 1, 1});
        CHECK(h.point == fixtures::qvec({0}));  // the image of vertex 4
        CHECK((h.sign == 1 || h.sign == -1));
    }
    CHECK(hits[0].faces == std::vector<Simplex>{{0, 2}, {1, 3}, {4}});
    CHECK(hits[1].faces == std::vector<Simplex>{{0, 3}, {1, 2}, {4}});
    // Tuples with a triangle factor are ruled out by the bounded factors'
    // inconsistent hull constraints, not reported as degeneracies.
    auto census = type_census(hits);
    CHECK(census.count({0, 0, 2}) == 0);
}

TEST_CASE("tetrahedron with one vertex over the opposite face") {
    auto K = fixtures::full_simplex(3);
    auto f = fixtures::map_from_points(2, {{0, 0}, {4, 0}, {0, 4}, {1, 1}});
    auto hits = enumerate_tverberg(K, 2, 2, f);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].faces == std::vector<Simplex>{{0, 1, 2}, {3}});
    CHECK(hits[0].type == std::vector<int>{0, 2});
    CHECK(hits[0].point == fixtures::qvec({1, 1}));
}

TEST_CASE("hit signs agree between the unraveled and determinant routes") {
    auto K = fixtures::complete_graph(5);
    auto f = sample_generic_map(K, 2, 424242, 1000000);
    auto hits = enumerate_tverberg(K, 2, 2, f);
    REQUIRE(!hits.empty());
    for (const auto& h : hits) {
        std::vector<AffineSimplex> images;
        for (const auto& s : h.faces) images.push_back(image_simplex(f, s));
        CHECK(h.sign == r_fold_sign(images, h.point));
    }
}

TEST_CASE("scan against cochain on the complete graph in the plane") {
    auto K = fixtures::complete_graph(5);
    for (std::uint64_t seed : {11ULL, 22ULL, 33ULL}) {
        auto f = sample_generic_map(K, 2, seed, 1000000);
        auto phi = intersection_cocycle(K, 2, 2, f);
        CHECK(cross_validate(K, 2, 2, f, phi));
    }
}

TEST_CASE("scan against cochain for triple products on the line") {
    auto K = fixtures::full_simplex(4);
    for (std::uint64_t seed : {5ULL, 6ULL}) {
        auto f = sample_generic_map(K, 1, seed, 1000000);
        auto phi = intersection_cocycle(K, 3, 1, f);
        CHECK(cross_validate(K, 3, 1, f, phi));
    }
}

TEST_CASE("corrupted cochains fail the scan comparison") {
    auto K = fixtures::complete_graph(5);
    auto f = sample_generic_map(K, 2, 77, 1000000);
    auto phi = intersection_cocycle(K, 2, 2, f);
    REQUIRE(!phi.values.empty());

    // Flip one stored value.
    auto corrupt1 = phi;
    corrupt1.values.begin()->second = -corrupt1.values.begin()->second;
    CHECK(!cross_validate(K, 2, 2, f, corrupt1));

    // Drop one stored value entirely.
    auto corrupt2 = phi;
    corrupt2.values.erase(corrupt2.values.begin());
    CHECK(!cross_validate(K, 2, 2, f, corrupt2));

    // Add support on an orbit the scan never hits.
    auto corrupt3 = phi;
    bool planted = false;
    for (const auto& rep : orbit_representatives(enumerate_cells(K, 2, 2)))
        if (!corrupt3.values.count(rep.factors)) {
            corrupt3.values[rep.factors] = 1;
            planted = true;
            break;
        }
    REQUIRE(planted);
    CHECK(!cross_validate(K, 2, 2, f, corrupt3));
}

TEST_CASE("an exact vertex-on-vertex overlap reports a degenerate map") {
    auto K = fixtures::full_simplex(4);
    // Vertices 0 and 1 collide, so a (vertex, vertex, triangle) tuple has
    // consistent bounded-factor constraints despite the excess codimension.
    ExactAffineMap f;
    f.d = 1;
    f.coords = {fixtures::qvec({7}), fixtures::qvec({7}), fixtures::qvec({1}),
                fixtures::qvec({2}), fixtures::qvec({3})};
    CHECK_THROWS_AS(enumerate_tverberg(K, 3, 1, f), DegeneracyError);
}

TEST_CASE("tuple budget aborts long scans") {
    auto K = fixtures::complete_graph(5);
    auto f = sample_generic_map(K, 2, 99, 1000000);
    CHECK_THROWS_AS(enumerate_tverberg(K, 2, 2, f, 3), ResourceLimitError);
}

TEST_CASE("scan rejects malformed requests") {
    auto K = fixtures::complete_graph(4);
    auto f = fixtures::map_from_points(2, {{0, 0}, {1, 0}, {0, 1}, {2, 3}});
    CHECK_THROWS_AS(enumerate_tverberg(K, 1, 2, f), PreconditionError);
    CHECK_THROWS_AS(enumerate_tverberg(K, 2, 3, f), PreconditionError);
}
