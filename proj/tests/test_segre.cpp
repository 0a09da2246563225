#include <doctest.h>

#include "segrescope/segre.hpp"
#include "segrescope/serialize.hpp"

#include "oracles.hpp"

using namespace segrescope;

TEST_CASE("segre_embed produces the product amplitudes") {
    Eigen::VectorXcd e1(2), plus(2), minus(2);
    e1 << 1.0, 0.0;
    plus << std::sqrt(0.5), std::sqrt(0.5);
    minus << std::sqrt(0.5), -std::sqrt(0.5);

    const PureState p1 = segre_embed({e1, e1});
    CHECK(p1.amplitudes[0].real() == doctest::Approx(1.0));
    CHECK(p1.amplitudes.tail(3).cwiseAbs().maxCoeff() == 0.0);

    const PureState p2 = segre_embed({plus, minus});
    const std::vector<double> want{0.5, -0.5, 0.5, -0.5};
    for (int i = 0; i < 4; ++i) {
        CHECK(p2.amplitudes[i].real() == doctest::Approx(want[i]));
    }

    Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(2);
    CHECK_THROWS_AS(segre_embed({e1, zero}), DegenerateFactorError);
}

TEST_CASE("segre_embed outputs sit on the Segre variety") {
    segrescope::rng::Gaussian g(3);
    for (int rep = 0; rep < 5; ++rep) {
        std::vector<Eigen::VectorXcd> factors;
        for (int n : {2, 3, 2}) {
            Eigen::VectorXcd f = oracles::random_factor(n, g);
            factors.push_back(f / f.norm());
        }
        const PureState p = segre_embed(factors);
        CHECK(p.is_normalized());
        CHECK(separability_residual(p, QuadricKind::Segre) < 1e-12);
    }
}

TEST_CASE("quadric counts match the polynomial-level enumeration oracle") {
    const SystemShape s22 = make_shape({2, 2});
    const QuadricSet segre22 = generate_quadrics(s22, QuadricKind::Segre);
    CHECK(segre22.items.size() == 1); // the 2x2 determinant
    CHECK(oracles::distinct_quadric_count(s22, QuadricKind::Segre) == 1);

    const QuadricSet full22 = generate_quadrics(s22, QuadricKind::Full);
    REQUIRE(full22.items.size() == 1);
    CHECK(full22.items[0].left == segre22.items[0].left);
    CHECK(full22.items[0].right == segre22.items[0].right);
    CHECK(full22.items[0].swap_set == segre22.items[0].swap_set);

    for (const auto& dims :
         {std::vector<int>{2, 2, 2}, std::vector<int>{2, 3}, std::vector<int>{3, 3},
          std::vector<int>{2, 2, 2, 2}}) {
        const SystemShape shape = make_shape(dims);
        for (QuadricKind kind : {QuadricKind::Segre, QuadricKind::Full}) {
            CHECK(static_cast<int>(generate_quadrics(shape, kind).items.size()) ==
                  oracles::distinct_quadric_count(shape, kind));
        }
    }

    // On three factors every proper-subset swap coincides with a
    // single-position swap (a swap on S equals the swap on its complement),
    // so the families agree; four factors is where Full becomes strictly
    // larger.
    CHECK(generate_quadrics(make_shape({2, 2, 2}), QuadricKind::Full).items.size() ==
          generate_quadrics(make_shape({2, 2, 2}), QuadricKind::Segre).items.size());
    CHECK(generate_quadrics(make_shape({2, 2, 2, 2}), QuadricKind::Full).items.size() >
          generate_quadrics(make_shape({2, 2, 2, 2}), QuadricKind::Segre).items.size());

    CHECK_THROWS_AS(generate_quadrics(make_shape({4}), QuadricKind::Segre), ShapeError);
}

TEST_CASE("the (2,2) quadric is the determinant") {
    const QuadricSet set = generate_quadrics(make_shape({2, 2}), QuadricKind::Segre);
    REQUIRE(set.items.size() == 1);
    const Quadric& q = set.items[0];
    CHECK(q.left == std::vector<int>{1, 1});
    CHECK(q.right == std::vector<int>{2, 2});
    CHECK(q.swap_set == std::vector<int>{1});
    CHECK(std::abs(q.evaluate(oracles::bell())) == doctest::Approx(0.5));

    const nlohmann::json j = to_json(set);
    CHECK(j.dump() ==
          R"({"dims":[2,2],"items":[{"K":[1,1],"L":[2,2],"S":[1]}],"kind":"SEGRE"})");
}

TEST_CASE("exchanging the plain and swapped index pairs negates a quadric") {
    const PureState psi = oracles::random_state(make_shape({2, 3, 2}), 17);
    const QuadricSet set = generate_quadrics(psi.shape, QuadricKind::Full);
    for (const Quadric& q : set.items) {
        Quadric swapped = q;
        for (int pos : q.swap_set) {
            swapped.left[pos - 1] = q.right[pos - 1];
            swapped.right[pos - 1] = q.left[pos - 1];
        }
        CHECK(std::abs(swapped.evaluate(psi) + q.evaluate(psi)) < 1e-12);
        // Exchanging K and L wholesale leaves the value unchanged.
        Quadric flipped = q;
        std::swap(flipped.left, flipped.right);
        CHECK(std::abs(flipped.evaluate(psi) - q.evaluate(psi)) < 1e-12);
    }
}

TEST_CASE("separability residual reproduces the brute-force sums") {
    CHECK(separability_residual(oracles::bell(), QuadricKind::Segre) ==
          doctest::Approx(1.0).epsilon(1e-12));

    const PureState ghz = oracles::ghz3();
    const double want = std::sqrt(oracles::quadric_sum(ghz, QuadricKind::Segre));
    CHECK(separability_residual(ghz, QuadricKind::Segre) ==
          doctest::Approx(want).epsilon(1e-12));
    CHECK(want == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));

    for (std::uint64_t seed : {21, 22, 23}) {
        const PureState psi = oracles::random_state(make_shape({2, 2, 3}), seed);
        for (QuadricKind kind : {QuadricKind::Segre, QuadricKind::Full}) {
            CHECK(separability_residual(psi, kind) ==
                  doctest::Approx(std::sqrt(oracles::quadric_sum(psi, kind)))
                      .epsilon(1e-12));
        }
    }

    PureState unnormalized = oracles::bell();
    unnormalized.amplitudes *= 1.5;
    CHECK_THROWS_AS(separability_residual(unnormalized, QuadricKind::Segre),
                    NormalizationError);
}

TEST_CASE("bipartite residual identity: residual^2 = 2(1 - tr rho1^2)") {
    for (std::uint64_t seed : {31, 32, 33, 34}) {
        const PureState psi = oracles::random_state(make_shape({3, 4}), seed);
        const Eigen::MatrixXcd rho1 = oracles::partial_trace(psi, 1);
        const double purity = (rho1 * rho1).trace().real();
        const double res = separability_residual(psi, QuadricKind::Segre);
        CHECK(res * res == doctest::Approx(2.0 * (1.0 - purity)).epsilon(1e-10));
    }
}

TEST_CASE("is_separable") {
    segrescope::rng::Gaussian g(5);
    Eigen::VectorXcd v = oracles::random_factor(2, g);
    Eigen::VectorXcd w = oracles::random_factor(2, g);
    PureState product = segre_embed({v / v.norm(), w / w.norm()});
    CHECK(is_separable(product, 1e-8));
    CHECK_FALSE(is_separable(oracles::bell(), 1e-8));

    // Noise of norm 1e-6 moves the residual by O(1e-6), far below 1e-3.
    PureState noisy = product;
    Eigen::VectorXcd noise = oracles::random_factor(4, g);
    noisy.amplitudes += 1e-6 * noise / noise.norm();
    noisy.amplitudes /= noisy.amplitudes.norm();
    CHECK(is_separable(noisy, 1e-3));

    CHECK_THROWS_AS(is_separable(product, 0.0), DomainError);
}

TEST_CASE("partition_reshape") {
    const Eigen::MatrixXcd g1 = partition_reshape(oracles::ghz3(), 1);
    CHECK(g1.rows() == 2);
    CHECK(g1.cols() == 4);
    CHECK(g1(0, 0).real() == doctest::Approx(std::sqrt(0.5)));
    CHECK(g1(1, 3).real() == doctest::Approx(std::sqrt(0.5)));
    CHECK(g1.cwiseAbs().sum() == doctest::Approx(std::sqrt(2.0)));

    const Eigen::MatrixXcd b = partition_reshape(oracles::bell(), 1);
    CHECK((b - std::sqrt(0.5) * Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() <
          1e-15);

    CHECK_THROWS_AS(partition_reshape(oracles::bell(), 2), ShapeError);
    CHECK_THROWS_AS(partition_reshape(oracles::bell(), 0), ShapeError);
}

TEST_CASE("every split of a product state reshapes to numerical rank one") {
    segrescope::rng::Gaussian g(7);
    std::vector<Eigen::VectorXcd> factors;
    for (int n : {2, 3, 2, 2}) {
        Eigen::VectorXcd f = oracles::random_factor(n, g);
        factors.push_back(f / f.norm());
    }
    const PureState p = segre_embed(factors);
    for (int split = 1; split < 4; ++split) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(partition_reshape(p, split));
        CHECK(svd.singularValues()[1] <= 1e-9);
    }
}

TEST_CASE("residuals are invariant under local unitaries") {
    segrescope::rng::Gaussian g(9);
    const std::vector<std::vector<int>> shapes = {{2, 2}, {2, 3}, {2, 2, 2}, {3, 3, 2},
                                                  {2, 2, 2, 2}, {3, 3, 3}};
    std::uint64_t seed = 200;
    for (const auto& dims : shapes) {
        const SystemShape shape = make_shape(dims);
        PureState psi = oracles::random_state(shape, seed++);
        PureState rotated = psi;
        for (int j = 1; j <= shape.factor_count(); ++j) {
            rotated = oracles::apply_local_unitary(
                rotated, j, oracles::random_unitary(dims[j - 1], g));
        }
        rotated.amplitudes /= rotated.amplitudes.norm();
        for (QuadricKind kind : {QuadricKind::Segre, QuadricKind::Full}) {
            CHECK(separability_residual(psi, kind) ==
                  doctest::Approx(separability_residual(rotated, kind)).epsilon(1e-9));
        }
    }
}
