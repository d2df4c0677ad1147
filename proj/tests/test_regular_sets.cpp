#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "qstab/enumeration.hpp"
#include "qstab/families.hpp"
#include "qstab/regular_sets.hpp"

using namespace qstab;

TEST_CASE("kt_linear_system on petersen") {
    Graph p = petersen_graph();

    LinearSystemSolution s02 = kt_linear_system(p, 0, 2);
    CHECK(s02.consistent);
    CHECK(s02.lambda == -2);
    CHECK(s02.nullspace.size() == 4);
    CHECK(cardinality_test(s02).value() == 4);
    // residual is identically zero
    RatMatrix m = p.adjacency_exact(Rat(-2));
    RatVec res = rat_mat_vec(m, s02.particular);
    for (const Rat& r : res) CHECK(r == 2);

    LinearSystemSolution s13 = kt_linear_system(p, 1, 3);
    CHECK(s13.consistent);
    CHECK(rat_sum(s13.particular) == 6);
    CHECK(cardinality_test(s13).value() == 6);
}

TEST_CASE("kt_linear_system on K2 and C4") {
    LinearSystemSolution k2 = kt_linear_system(complete_graph(2), 0, 1);
    CHECK(k2.consistent);
    CHECK(k2.nullspace.size() == 1);
    CHECK(cardinality_test(k2).value() == 1);
    // both endpoints solve: particular + suitable eigenvector sweeps {(1,0),(0,1)}
    bool e1 = k2.particular == RatVec{1, 0} || k2.particular == RatVec{0, 1};
    CHECK(e1);

    LinearSystemSolution c4 = kt_linear_system(cycle_graph(4), 0, 2);
    CHECK(cardinality_test(c4).value() == 2);

    CHECK_THROWS_AS(kt_linear_system(complete_graph(2), 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(kt_linear_system(complete_graph(2), -1, 1), std::invalid_argument);
}

TEST_CASE("inconsistent and fractional systems prove absence") {
    // K_{1,4} with (0,2): lambda_min = -2 is a main eigenvalue, system
    // inconsistent, and indeed no (0,2)-regular set exists
    Graph star4 = star_graph(4);
    LinearSystemSolution s = kt_linear_system(star4, 0, 2);
    CHECK(!s.consistent);
    CHECK(!solve_01(star4, 0, 2).has_value());
    CHECK(!find_kt_regular(star4, 0, 2).has_value());

    // C4 + K2 at (0,2): consistent but e'x = 10/3, so no set
    Graph c4k2 = Graph::from_edge_list(6, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}});
    LinearSystemSolution t = kt_linear_system(c4k2, 0, 2);
    CHECK(t.consistent);
    CHECK(!cardinality_test(t).has_value());
    CHECK(rat_sum(t.particular) == Rat(10, 3));
    CHECK(!solve_01(c4k2, 0, 2).has_value());
}

TEST_CASE("solve_01 dispatch") {
    // unique-solution branch: K_{1,4} with (0,1); the center is the set
    Graph star4 = star_graph(4);
    CHECK(!integer_eigen_check(star4, -1).is_eigenvalue);
    auto cert = solve_01(star4, 0, 1);
    REQUIRE(cert.has_value());
    CHECK(cert->set == std::vector<int>{0});

    // eigenvalue branch with the star-simplex route
    auto pet = solve_01(petersen_graph(), 0, 2);
    REQUIRE(pet.has_value());
    CHECK(verify_kt_regular(petersen_graph(), pet->set, 0, 2));
    CHECK(pet->set.size() == 4);

    // non-0-1 unique solution: C5 with (0,2)
    CHECK(!solve_01(cycle_graph(5), 0, 2).has_value());

    // eigenvalue branch away from lambda_min: falls back to search
    auto s2 = solve_01(petersen_graph(), 1, 3);
    REQUIRE(s2.has_value());
    CHECK(verify_kt_regular(petersen_graph(), s2->set, 1, 3));
    CHECK(s2->set.size() == 6);
}

TEST_CASE("thompson verification on petersen") {
    Graph p = petersen_graph();
    CHECK(thompson_verify(p, vertices_by_labels(p, {"1", "2", "3", "4"}), 0, 2));
    CHECK(thompson_verify(p, vertices_by_labels(p, {"1", "2", "5", "7", "8"}), 2, 1));
    CHECK(thompson_verify(p, vertices_by_labels(p, {"5", "6", "7", "8", "9", "10"}), 1, 3));
    CHECK(!thompson_verify(p, vertices_by_labels(p, {"1", "2", "3"}), 0, 2));

    // the whole vertex set is (p,0)-regular with eigenvalue p
    std::vector<int> all(10);
    std::iota(all.begin(), all.end(), 0);
    CHECK(thompson_verify(p, all, 3, 0));

    CHECK_THROWS_AS(thompson_verify(path_graph(3), {0}, 0, 1), std::invalid_argument);
}

TEST_CASE("thompson accepts exactly the regular-set certificates") {
    for (const Graph& g : all_connected_graphs(6)) {
        if (!g.is_regular() || g.size() == 0) continue;
        for (int k = 0; k <= 2; ++k)
            for (int t = 1; t <= 2; ++t)
                for (const auto& s : all_kt_regular(g, k, t))
                    CHECK(thompson_verify(g, s, k, t));
    }
    // and rejects non-certificates
    Graph c6 = cycle_graph(6);
    CHECK(!thompson_verify(c6, {0, 1}, 0, 2));
}

TEST_CASE("solve_01 equivalence with the exhaustive oracle, order <= 6") {
    for (int n = 1; n <= 6; ++n)
        for (const Graph& g : all_graphs(n))
            for (int k = 0; k <= 3; ++k)
                for (int t = 1; t <= 3; ++t) {
                    auto a = solve_01(g, k, t);
                    auto b = find_kt_regular(g, k, t);
                    CHECK(a.has_value() == b.has_value());
                    if (a) {
                        CHECK(verify_kt_regular(g, a->set, k, t));
                        LinearSystemSolution sys = kt_linear_system(g, k, t);
                        auto card = cardinality_test(sys);
                        REQUIRE(card.has_value());
                        CHECK(BigInt(a->set.size()) == *card);
                        CHECK(BigInt(b->set.size()) == *card);
                    }
                }
}
