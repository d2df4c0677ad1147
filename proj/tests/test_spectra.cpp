#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qstab/enumeration.hpp"
#include "qstab/families.hpp"
#include "qstab/spectra.hpp"

using namespace qstab;

namespace {

// residual and trace checks straight from the definitions
void check_spectrum_invariants(const Graph& g, const Spectrum& s) {
    const int n = g.order();
    REQUIRE(static_cast<int>(s.values.size()) == n);
    for (int j = 0; j + 1 < n; ++j) CHECK(s.values[j] >= s.values[j + 1]);

    std::vector<double> a = g.adjacency_dense();
    for (int j = 0; j < n; ++j) {
        double tol = 1e-8 * std::max(1.0, std::abs(s.values[static_cast<std::size_t>(j)]));
        for (int i = 0; i < n; ++i) {
            double av = 0.0;
            for (int k = 0; k < n; ++k)
                av += a[static_cast<std::size_t>(i) * n + k] * s.vector_entry(k, j);
            CHECK(std::abs(av - s.values[static_cast<std::size_t>(j)] * s.vector_entry(i, j)) <=
                  tol);
        }
    }
    double sum = 0.0, sum2 = 0.0, sum3 = 0.0;
    for (double v : s.values) {
        sum += v;
        sum2 += v * v;
        sum3 += v * v * v;
    }
    CHECK(std::abs(sum) <= 1e-8);
    CHECK(std::abs(sum2 - 2.0 * g.size()) <= 1e-6);
    CHECK(std::abs(sum3 - 6.0 * g.triangle_count()) <= 1e-6);
}

}  // namespace

TEST_CASE("eigen_sym on fixtures") {
    Spectrum k2 = eigen_sym(complete_graph(2));
    CHECK(k2.values[0] == Catch::Approx(1.0).margin(1e-10));
    CHECK(k2.values[1] == Catch::Approx(-1.0).margin(1e-10));

    Graph p = petersen_graph();
    Spectrum sp = eigen_sym(p);
    CHECK(sp.values[0] == Catch::Approx(3.0).margin(1e-8));
    CHECK(float_multiplicity(sp, 1) == 5);
    CHECK(float_multiplicity(sp, -2) == 4);
    check_spectrum_invariants(p, sp);

    Graph e7 = example7_graph();
    Spectrum s7 = eigen_sym(e7);
    const double expected[] = {3, 1, 1, 0, -1, -2, -2};
    for (int i = 0; i < 7; ++i)
        CHECK(s7.values[static_cast<std::size_t>(i)] == Catch::Approx(expected[i]).margin(1e-8));
    check_spectrum_invariants(e7, s7);
}

TEST_CASE("spectrum invariants on random graphs") {
    std::mt19937 rng(21);
    for (int rep = 0; rep < 15; ++rep) {
        Graph g = random_graph(2 + rep, 0.4, rng);
        check_spectrum_invariants(g, eigen_sym(g));
    }
}

TEST_CASE("lambda_min special values") {
    CHECK(lambda_min(Graph::from_edge_list(5, {})) == 0.0);
    CHECK(lambda_min(complete_graph(4)) == Catch::Approx(-1.0).margin(1e-9));
    // disjoint complete components still give -1
    Graph two_cliques = Graph::from_edge_list(5, {{0, 1}, {0, 2}, {1, 2}, {3, 4}});
    CHECK(lambda_min(two_cliques) == Catch::Approx(-1.0).margin(1e-9));
    // otherwise at most -sqrt(2)
    CHECK(lambda_min(path_graph(3)) <= -std::sqrt(2.0) + 1e-9);
    CHECK(lambda_min(petersen_graph()) == Catch::Approx(-2.0).margin(1e-9));
    CHECK(integral_lambda_min(petersen_graph()).value() == -2);
    CHECK(integral_lambda_min(fig2_graph()).value() == -2);
    CHECK(!integral_lambda_min(cycle_graph(5)).has_value());
}

TEST_CASE("integer eigenvalue certificates") {
    Graph p = petersen_graph();
    auto c1 = integer_eigen_check(p, -2);
    CHECK(c1.is_eigenvalue);
    CHECK(c1.multiplicity == 4);

    auto c2 = integer_eigen_check(example7_graph(), -2);
    CHECK(c2.multiplicity == 2);

    auto c3 = integer_eigen_check(complete_graph(2), 0);
    CHECK(!c3.is_eigenvalue);
    CHECK(c3.multiplicity == 0);
}

TEST_CASE("eigenspace_basis is exact") {
    auto b1 = eigenspace_basis(complete_graph(2), -1);
    REQUIRE(b1.size() == 1);
    CHECK(b1[0][0] == -b1[0][1]);

    Graph p = petersen_graph();
    auto basis = eigenspace_basis(p, -2);
    REQUIRE(basis.size() == 4);
    RatMatrix shifted = p.adjacency_exact(Rat(-2));
    for (const RatVec& u : basis)
        for (const Rat& r : rat_mat_vec(shifted, u)) CHECK(r == 0);

    CHECK(eigenspace_basis(example7_graph(), -2).size() == 2);
    CHECK_THROWS_AS(eigenspace_basis(complete_graph(2), 0), std::invalid_argument);
}

TEST_CASE("deletion never lowers the least eigenvalue") {
    std::mt19937 rng(31);
    for (int rep = 0; rep < 12; ++rep) {
        Graph g = random_graph(8, 0.5, rng);
        double base = lambda_min(g);
        std::uniform_int_distribution<int> pick(0, 7);
        std::vector<int> del{pick(rng)};
        if (rep % 2) del.push_back((del[0] + 3) % 8);
        CHECK(lambda_min(g.delete_vertices(del)) >= base - 1e-8);
    }
}

TEST_CASE("floating multiplicities agree with exact ranks on small graphs") {
    for (int n = 1; n <= 6; ++n)
        for (const Graph& g : all_graphs(n)) {
            Spectrum s = eigen_sym(g);
            for (int k = -n; k <= n; ++k)
                CHECK(float_multiplicity(s, k) == integer_eigen_check(g, k).multiplicity);
        }
}
